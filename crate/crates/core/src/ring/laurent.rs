use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exponent vector of a monomial, one entry per variable.
pub type Exponent = Vec<i64>;

/// Element of `Z[t1^±1, ..., tn^±1]`.
///
/// Terms are kept in a `BTreeMap`, so iteration follows the lexicographic
/// order with `t1` compared first; the leading term is the last entry.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Exponent, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn monomial(nvars: usize, exp: Exponent, c: impl Into<BigInt>) -> Self {
        assert_eq!(exp.len(), nvars, "exponent length does not match variable count");
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { nvars, terms }
    }

    /// The variable `t_i`, with `i` counted from zero.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, 1)
    }

    /// Builds a polynomial from terms, merging repeated exponents and dropping zeros.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, BigInt)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length does not match variable count");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Exponent, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().all(|(e, c)| c.is_one() && e.iter().all(|&x| x == 0))
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[i64]) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Leading term under the lexicographic order.
    pub fn leading(&self) -> Option<(&Exponent, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn trailing(&self) -> Option<(&Exponent, &BigInt)> {
        self.terms.iter().next()
    }

    /// True when the polynomial is a single term `c * t^e`.
    pub fn as_monomial(&self) -> Option<(&Exponent, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Integer value when the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        if self.is_zero() {
            return Some(BigInt::zero());
        }
        match self.as_monomial() {
            Some((e, c)) if e.iter().all(|&x| x == 0) => Some(c.clone()),
            _ => None,
        }
    }

    /// Units of `Z[G]` are exactly `±t^e`.
    pub fn is_unit(&self) -> bool {
        matches!(self.as_monomial(), Some((_, c)) if c.abs().is_one())
    }

    pub fn involute(&self) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().map(|x| -x).collect(), c.clone()))
                .collect(),
        }
    }

    /// Sum of coefficients.
    pub fn augment(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Multiplies by the monomial `t^e`.
    pub fn shift(&self, e: &[i64]) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.iter().zip(e).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Per-variable minimum exponent (zero vector for the zero polynomial).
    pub fn min_exponents(&self) -> Exponent {
        let mut m: Option<Exponent> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.clone(),
                Some(cur) => cur.iter().zip(e).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.nvars])
    }

    pub fn max_exponents(&self) -> Exponent {
        let mut m: Option<Exponent> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.clone(),
                Some(cur) => cur.iter().zip(e).map(|(a, b)| *a.max(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.nvars])
    }

    /// Integer content: gcd of all coefficients, non-negative.
    pub fn int_content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = num_integer::Integer::gcd(&g, c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides every coefficient by `c`; the division must be exact.
    pub fn div_int_exact(&self, c: &BigInt) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| {
                    debug_assert!((v % c).is_zero());
                    (k.clone(), v / c)
                })
                .collect(),
        }
    }

    /// Splits `a = unit * normal` with `unit = ±t^e`, where `normal` has every
    /// per-variable minimum exponent equal to zero and a positive leading
    /// coefficient.
    pub fn unit_normalize(&self) -> Result<(LaurentPoly, LaurentPoly)> {
        if self.is_zero() {
            return Err(Error::ZeroNormalize);
        }
        let m = self.min_exponents();
        let neg: Vec<i64> = m.iter().map(|x| -x).collect();
        let mut normal = self.shift(&neg);
        let sign = if normal.leading().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            normal = -normal;
            -1
        } else {
            1
        };
        Ok((LaurentPoly::monomial(self.nvars, m, sign), normal))
    }

    /// Canonical representative of the class modulo `±G`; zero maps to zero.
    pub fn normal_form(&self) -> LaurentPoly {
        match self.unit_normalize() {
            Ok((_, n)) => n,
            Err(_) => self.clone(),
        }
    }

    /// Inverse of a unit `±t^e`.
    pub fn unit_inverse(&self) -> Option<LaurentPoly> {
        match self.as_monomial() {
            Some((e, c)) if c.abs().is_one() => {
                Some(LaurentPoly::monomial(self.nvars, e.iter().map(|x| -x).collect(), c.clone()))
            }
            _ => None,
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one(self.nvars);
        for _ in 0..k {
            r = &r * self;
        }
        r
    }

    /// Substitutes `t_i -> t^{images[i]}` (a monomial map between Laurent rings).
    pub fn substitute_monomial(&self, target_nvars: usize, images: &[Exponent]) -> Self {
        assert_eq!(images.len(), self.nvars);
        let mut out = Self::zero(target_nvars);
        for (e, c) in &self.terms {
            let mut ne = vec![0i64; target_nvars];
            for (k, img) in e.iter().zip(images) {
                for (slot, v) in ne.iter_mut().zip(img) {
                    *slot += k * v;
                }
            }
            out.add_term(ne, c.clone());
        }
        out
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self + o)
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self - o)
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self * o)
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.nvars != o.nvars {
            return Err(Error::VarCount { left: self.nvars, right: o.nvars });
        }
        Ok(())
    }

    pub(crate) fn from_map(nvars: usize, terms: BTreeMap<Exponent, BigInt>) -> Self {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        LaurentPoly { nvars, terms }
    }
}

fn same_vars(a: &LaurentPoly, b: &LaurentPoly) {
    assert_eq!(
        a.nvars, b.nvars,
        "variable-count mismatch: {} vs {}",
        a.nvars, b.nvars
    );
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        same_vars(self, o);
        let (big, small) = if self.terms.len() >= o.terms.len() { (self, o) } else { (o, self) };
        let mut r = big.clone();
        for (e, c) in &small.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        same_vars(self, o);
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), -c);
        }
        r
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        same_vars(self, o);
        let mut r = LaurentPoly::zero(self.nvars);
        if self.is_zero() || o.is_zero() {
            return r;
        }
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1 * c2);
            }
        }
        r
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, o: LaurentPoly) -> LaurentPoly {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, o: &LaurentPoly) -> LaurentPoly {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl PartialOrd for LaurentPoly {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LaurentPoly {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.nvars
            .cmp(&other.nvars)
            .then_with(|| self.terms.iter().rev().cmp(other.terms.iter().rev()))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mut factors = Vec::new();
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(format!("t{}", i + 1)),
                    _ => factors.push(format!("t{}^{}", i + 1, k)),
                }
            }
            if factors.is_empty() {
                write!(f, "{}", a)?;
            } else if a.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", a, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly[{}]({})", self.nvars, self)
    }
}
