use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Signed;

use super::gcd::{exact_div, gcd};
use super::laurent::LaurentPoly;
use crate::error::{Error, Result};

/// Element of the fraction field of the Laurent ring, kept in lowest terms.
///
/// The denominator is unit-normalized: its per-variable minimum exponents are
/// zero and its leading coefficient is positive.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingFrac {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RingFrac {
    pub fn zero(nvars: usize) -> Self {
        RingFrac { num: LaurentPoly::zero(nvars), den: LaurentPoly::one(nvars) }
    }

    pub fn one(nvars: usize) -> Self {
        RingFrac { num: LaurentPoly::one(nvars), den: LaurentPoly::one(nvars) }
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        let n = p.nvars();
        RingFrac { num: p, den: LaurentPoly::one(n) }
    }

    pub fn from_int(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::from_poly(LaurentPoly::constant(nvars, c))
    }

    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if num.nvars() != den.nvars() {
            return Err(Error::VarCount { left: num.nvars(), right: den.nvars() });
        }
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: LaurentPoly, den: LaurentPoly) -> Self {
        let n = num.nvars();
        if num.is_zero() {
            return Self::zero(n);
        }
        if let Some(inv) = den.unit_inverse() {
            return RingFrac { num: &num * &inv, den: LaurentPoly::one(n) };
        }
        if let (Some(a), Some(b)) = (num.as_constant(), den.as_constant()) {
            let g = num_integer::Integer::gcd(&a, &b);
            let (mut a, mut b) = (a / &g, b / &g);
            if b.is_negative() {
                a = -a;
                b = -b;
            }
            return RingFrac { num: LaurentPoly::constant(n, a), den: LaurentPoly::constant(n, b) };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (exact_div(&num, &g).expect("gcd divides"), exact_div(&den, &g).expect("gcd divides"))
        };
        let (u, den) = den.unit_normalize().expect("nonzero denominator");
        let uinv = u.unit_inverse().expect("unit");
        RingFrac { num: &num * &uinv, den }
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The numerator when the denominator is one.
    pub fn as_poly(&self) -> Option<&LaurentPoly> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn involute(&self) -> Self {
        Self::reduced(self.num.involute(), self.den.involute())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn try_div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self / o)
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        Self::reduced(&self.num * p, self.den.clone())
    }
}

impl From<LaurentPoly> for RingFrac {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl<'a> Add<&'a RingFrac> for &'a RingFrac {
    type Output = RingFrac;
    fn add(self, o: &RingFrac) -> RingFrac {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            if self.den.is_one() {
                return RingFrac::from_poly(&self.num + &o.num);
            }
            return RingFrac::reduced(&self.num + &o.num, self.den.clone());
        }
        RingFrac::reduced(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl<'a> Sub<&'a RingFrac> for &'a RingFrac {
    type Output = RingFrac;
    fn sub(self, o: &RingFrac) -> RingFrac {
        self + &(-o)
    }
}

impl<'a> Mul<&'a RingFrac> for &'a RingFrac {
    type Output = RingFrac;
    fn mul(self, o: &RingFrac) -> RingFrac {
        if self.is_zero() || o.is_zero() {
            return RingFrac::zero(self.nvars());
        }
        if self.den.is_one() && o.den.is_one() {
            return RingFrac::from_poly(&self.num * &o.num);
        }
        // cross-cancel before multiplying to keep sizes down
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let a = exact_div(&self.num, &g1).expect("gcd divides");
        let d = exact_div(&o.den, &g1).expect("gcd divides");
        let c = exact_div(&o.num, &g2).expect("gcd divides");
        let b = exact_div(&self.den, &g2).expect("gcd divides");
        RingFrac::reduced(&a * &c, &b * &d)
    }
}

impl<'a> Div<&'a RingFrac> for &'a RingFrac {
    type Output = RingFrac;
    fn div(self, o: &RingFrac) -> RingFrac {
        assert!(!o.is_zero(), "division by zero in fraction field");
        let inv = RingFrac { num: o.den.clone(), den: o.num.clone() };
        if inv.den.is_unit() {
            return self * &RingFrac::reduced(inv.num, inv.den);
        }
        let g1 = gcd(&self.num, &inv.den);
        let g2 = gcd(&inv.num, &self.den);
        let a = exact_div(&self.num, &g1).expect("gcd divides");
        let d = exact_div(&inv.den, &g1).expect("gcd divides");
        let c = exact_div(&inv.num, &g2).expect("gcd divides");
        let b = exact_div(&self.den, &g2).expect("gcd divides");
        RingFrac::reduced(&a * &c, &b * &d)
    }
}

impl Neg for &RingFrac {
    type Output = RingFrac;
    fn neg(self) -> RingFrac {
        RingFrac { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RingFrac {
    type Output = RingFrac;
    fn neg(self) -> RingFrac {
        RingFrac { num: -self.num, den: self.den }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RingFrac> for RingFrac {
            type Output = RingFrac;
            fn $m(self, o: RingFrac) -> RingFrac {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a RingFrac> for RingFrac {
            type Output = RingFrac;
            fn $m(self, o: &RingFrac) -> RingFrac {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl fmt::Display for RingFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &LaurentPoly| {
            if p.nterms() > 1 {
                format!("({})", p)
            } else {
                p.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl fmt::Debug for RingFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingFrac[{}]({})", self.nvars(), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_frac;

    fn q(s: &str) -> RingFrac {
        parse_frac(s, 1).unwrap()
    }

    #[test]
    fn reduces_and_cancels() {
        assert_eq!(q("(t1^2 - 1)/(t1 - 1)"), q("t1 + 1"));
        assert_eq!(&q("1/(t1 - 1)") + &q("1/(1 - t1)"), RingFrac::zero(1));
        assert_eq!(&q("1/2") * &q("2"), RingFrac::one(1));
        assert_eq!(q("3/(-6*t1^2)"), q("-1/(2*t1^2)"));
        assert_eq!(q("3/(-6*t1^2)").den(), &parse_frac("2", 1).unwrap().num().clone());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(q("1").try_div(&RingFrac::zero(1)).is_err());
        assert!(RingFrac::zero(1).inv().is_err());
    }
}
