//! Reduced words, free-group endomorphisms and Fox calculus.
//!
//! Generators are indexed from zero. For a surface group of genus `g` the
//! generators `0..g` are `a1..ag` and `g..2g` are `b1..bg`.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::MatR;
use crate::ring::{Exponent, LaurentPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inv: bool,
}

impl Letter {
    pub fn new(gen: usize, inv: bool) -> Self {
        Letter { gen, inv }
    }

    pub fn inverse(self) -> Self {
        Letter { gen: self.gen, inv: !self.inv }
    }
}

/// A freely reduced word; the empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word { letters: Vec::new() }
    }

    pub fn gen(i: usize) -> Self {
        Word { letters: vec![Letter::new(i, false)] }
    }

    /// Reduces a raw letter sequence, rejecting generators outside `0..rank`.
    pub fn reduce(raw: impl IntoIterator<Item = Letter>, rank: usize) -> Result<Self> {
        let mut out: Vec<Letter> = Vec::new();
        for l in raw {
            if l.gen >= rank {
                return Err(Error::GeneratorRange { index: l.gen, rank });
            }
            push_reduced(&mut out, l);
        }
        Ok(Word { letters: out })
    }

    /// Signed-index form: `+(i+1)` for generator `i`, `-(i+1)` for its inverse.
    pub fn from_signed(idx: &[i64], rank: usize) -> Result<Self> {
        let mut raw = Vec::with_capacity(idx.len());
        for &s in idx {
            if s == 0 {
                return Err(Error::GeneratorRange { index: 0, rank });
            }
            raw.push(Letter::new(s.unsigned_abs() as usize - 1, s < 0));
        }
        Self::reduce(raw, rank)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn max_gen(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.gen).max()
    }

    pub fn inverse(&self) -> Self {
        Word { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    pub fn mul(&self, o: &Word) -> Self {
        let mut out = self.letters.clone();
        for &l in &o.letters {
            push_reduced(&mut out, l);
        }
        Word { letters: out }
    }

    /// Renames generator `i` to `i + k`.
    pub fn shifted(&self, k: usize) -> Self {
        Word { letters: self.letters.iter().map(|l| Letter::new(l.gen + k, l.inv)).collect() }
    }

    /// Renames generators through `map`.
    pub fn renamed(&self, map: &[usize]) -> Self {
        Word { letters: self.letters.iter().map(|l| Letter::new(map[l.gen], l.inv)).collect() }
    }

    /// Formats with surface names `a1..ag, b1..bg`.
    pub fn surface_string(&self, genus: usize) -> String {
        self.render(|i| surface_name(i, genus))
    }

    /// Formats with names `x1..xk`.
    pub fn plain_string(&self) -> String {
        self.render(|i| format!("x{}", i + 1))
    }

    fn render(&self, name: impl Fn(usize) -> String) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        self.letters
            .iter()
            .map(|l| if l.inv { format!("{}^-1", name(l.gen)) } else { name(l.gen) })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses `a1 b1 a1^-1 b1^-1` for a surface group of the given genus.
    /// `1` (or an empty string) is the identity; `x^k` repeats a letter.
    pub fn parse_surface(s: &str, genus: usize) -> Result<Self> {
        parse_letters(s, 2 * genus, |name| {
            let (kind, rest) = name.split_at(1);
            let i: usize = rest.parse().ok()?;
            if i == 0 || i > genus {
                return None;
            }
            match kind {
                "a" => Some(i - 1),
                "b" => Some(genus + i - 1),
                _ => None,
            }
        })
    }
}

pub fn surface_name(i: usize, genus: usize) -> String {
    if i < genus {
        format!("a{}", i + 1)
    } else {
        format!("b{}", i - genus + 1)
    }
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if out.last() == Some(&l.inverse()) {
        out.pop();
    } else {
        out.push(l);
    }
}

fn parse_letters(s: &str, rank: usize, lookup: impl Fn(&str) -> Option<usize>) -> Result<Word> {
    let mut raw = Vec::new();
    let mut col = 1;
    for tok in s.split_whitespace() {
        let offset = s[col - 1..].find(tok).map(|o| o + col).unwrap_or(col);
        col = offset + tok.len();
        if tok == "1" {
            continue;
        }
        let (name, pow) = match tok.split_once('^') {
            Some((n, p)) => match p.parse::<i64>() {
                Ok(k) => (n, k),
                Err(_) => {
                    return Err(Error::Parse { line: 1, col: offset, msg: format!("bad exponent in '{}'", tok) })
                }
            },
            None => (tok, 1),
        };
        let Some(g) = (if name.len() >= 2 { lookup(name) } else { None }) else {
            return Err(Error::Parse { line: 1, col: offset, msg: format!("unknown generator '{}'", name) });
        };
        for _ in 0..pow.unsigned_abs() {
            raw.push(Letter::new(g, pow < 0));
        }
    }
    Word::reduce(raw, rank)
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.plain_string())
    }
}

/// The boundary word `a1 b1 a1^-1 b1^-1 ... ag bg ag^-1 bg^-1`.
pub fn boundary_word(genus: usize) -> Word {
    let mut raw = Vec::with_capacity(4 * genus);
    for i in 0..genus {
        let a = i;
        let b = genus + i;
        raw.extend([Letter::new(a, false), Letter::new(b, false), Letter::new(a, true), Letter::new(b, true)]);
    }
    Word::reduce(raw, 2 * genus).expect("boundary word in range")
}

/// Endomorphism of a free group given by generator images.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeEndo {
    images: Vec<Word>,
}

impl FreeEndo {
    pub fn new(images: Vec<Word>) -> Result<Self> {
        let rank = images.len();
        for w in &images {
            if let Some(m) = w.max_gen() {
                if m >= rank {
                    return Err(Error::GeneratorRange { index: m, rank });
                }
            }
        }
        Ok(FreeEndo { images })
    }

    pub fn identity(rank: usize) -> Self {
        FreeEndo { images: (0..rank).map(Word::gen).collect() }
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, i: usize) -> &Word {
        &self.images[i]
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn apply(&self, w: &Word) -> Word {
        let mut out: Vec<Letter> = Vec::new();
        for l in w.letters() {
            let img = &self.images[l.gen];
            if l.inv {
                for &x in img.letters.iter().rev() {
                    push_reduced(&mut out, x.inverse());
                }
            } else {
                for &x in &img.letters {
                    push_reduced(&mut out, x);
                }
            }
        }
        Word { letters: out }
    }

    pub fn try_apply(&self, w: &Word) -> Result<Word> {
        if let Some(m) = w.max_gen() {
            if m >= self.rank() {
                return Err(Error::GeneratorRange { index: m, rank: self.rank() });
            }
        }
        Ok(self.apply(w))
    }

    /// `self ∘ g`: first `g`, then `self`.
    pub fn compose(&self, g: &FreeEndo) -> Result<FreeEndo> {
        if self.rank() != g.rank() {
            return Err(Error::RankMismatch { left: self.rank(), right: g.rank() });
        }
        Ok(FreeEndo { images: g.images.iter().map(|w| self.apply(w)).collect() })
    }

    /// True iff the boundary word is fixed exactly.
    pub fn check_boundary(&self) -> bool {
        if self.rank() % 2 != 0 {
            return false;
        }
        let nu = boundary_word(self.rank() / 2);
        self.apply(&nu) == nu
    }

    pub fn surface_string(&self) -> String {
        let g = self.rank() / 2;
        self.images
            .iter()
            .enumerate()
            .map(|(i, w)| format!("{} -> {}", surface_name(i, g), w.surface_string(g)))
            .collect::<Vec<_>>()
            .join(" ; ")
    }
}

/// Homomorphism from a free group to `G = Z^n`, given on generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PhiValuation {
    nvars: usize,
    values: Vec<Exponent>,
}

impl PhiValuation {
    pub fn new(nvars: usize, values: Vec<Exponent>) -> Result<Self> {
        for v in &values {
            if v.len() != nvars {
                return Err(Error::VarCount { left: v.len(), right: nvars });
            }
        }
        Ok(PhiValuation { nvars, values })
    }

    pub fn trivial(nvars: usize, rank: usize) -> Self {
        PhiValuation { nvars, values: vec![vec![0; nvars]; rank] }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rank(&self) -> usize {
        self.values.len()
    }

    /// Genus when the valuation lives on a surface group.
    pub fn genus(&self) -> usize {
        self.values.len() / 2
    }

    pub fn value(&self, i: usize) -> &Exponent {
        &self.values[i]
    }

    pub fn values(&self) -> &[Exponent] {
        &self.values
    }

    pub fn monomial(&self, i: usize) -> LaurentPoly {
        LaurentPoly::monomial(self.nvars, self.values[i].clone(), 1)
    }

    /// Exponent of `φ(w)`.
    pub fn exponent_of(&self, w: &Word) -> Exponent {
        let mut e = vec![0; self.nvars];
        for l in w.letters() {
            for (s, v) in e.iter_mut().zip(&self.values[l.gen]) {
                if l.inv {
                    *s -= v;
                } else {
                    *s += v;
                }
            }
        }
        e
    }

    /// `φ(w)` as a monomial.
    pub fn phi_of_word(&self, w: &Word) -> LaurentPoly {
        LaurentPoly::monomial(self.nvars, self.exponent_of(w), 1)
    }

    /// Pullback `φ ∘ f` along an endomorphism.
    pub fn pullback(&self, f: &FreeEndo) -> Result<PhiValuation> {
        if f.rank() != self.rank() {
            return Err(Error::RankMismatch { left: f.rank(), right: self.rank() });
        }
        Ok(PhiValuation { nvars: self.nvars, values: f.images().iter().map(|w| self.exponent_of(w)).collect() })
    }

    /// Direct sum on the surface group of genus `g + h` (a's then b's).
    pub fn surface_sum(&self, o: &PhiValuation) -> Result<PhiValuation> {
        if self.nvars != o.nvars {
            return Err(Error::VarCount { left: self.nvars, right: o.nvars });
        }
        let (g, h) = (self.genus(), o.genus());
        let mut values = Vec::with_capacity(2 * (g + h));
        values.extend_from_slice(&self.values[..g]);
        values.extend_from_slice(&o.values[..h]);
        values.extend_from_slice(&self.values[g..]);
        values.extend_from_slice(&o.values[h..]);
        Ok(PhiValuation { nvars: self.nvars, values })
    }

    /// Concatenation on a free group of rank `k + l`.
    pub fn concat(&self, o: &PhiValuation) -> Result<PhiValuation> {
        if self.nvars != o.nvars {
            return Err(Error::VarCount { left: self.nvars, right: o.nvars });
        }
        let mut values = self.values.clone();
        values.extend_from_slice(&o.values);
        Ok(PhiValuation { nvars: self.nvars, values })
    }

    pub fn surface_string(&self) -> String {
        let g = self.genus();
        (0..self.rank())
            .map(|i| format!("{} -> {}", surface_name(i, g), self.monomial(i)))
            .collect::<Vec<_>>()
            .join(" ; ")
    }
}

/// Vector of φ-evaluated Fox derivatives `(∂w/∂x_i)_i`.
pub fn fox_vector(w: &Word, phi: &PhiValuation) -> Vec<LaurentPoly> {
    let n = phi.nvars();
    let mut out = vec![LaurentPoly::zero(n); phi.rank()];
    let mut prefix = vec![0i64; n];
    for l in w.letters() {
        let v = phi.value(l.gen);
        if l.inv {
            for (p, x) in prefix.iter_mut().zip(v) {
                *p -= x;
            }
            out[l.gen] = &out[l.gen] - &LaurentPoly::monomial(n, prefix.clone(), 1);
        } else {
            out[l.gen] = &out[l.gen] + &LaurentPoly::monomial(n, prefix.clone(), 1);
            for (p, x) in prefix.iter_mut().zip(v) {
                *p += x;
            }
        }
    }
    out
}

/// φ-evaluated Fox derivative `∂w/∂x_i`.
pub fn fox_derivative(w: &Word, i: usize, phi: &PhiValuation) -> LaurentPoly {
    fox_vector(w, phi).swap_remove(i)
}

/// Entry `(i, j)` is `φ(∂f(x_j)/∂x_i)`: columns are images, rows derivation variables.
pub fn jacobian(f: &FreeEndo, phi: &PhiValuation) -> Result<MatR> {
    if f.rank() != phi.rank() {
        return Err(Error::RankMismatch { left: f.rank(), right: phi.rank() });
    }
    let k = f.rank();
    let mut m = MatR::zeros(phi.nvars(), k, k);
    for j in 0..k {
        for (i, d) in fox_vector(f.image(j), phi).into_iter().enumerate() {
            m[(i, j)] = d;
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_poly;

    fn w(s: &str, g: usize) -> Word {
        Word::parse_surface(s, g).unwrap()
    }

    fn twist() -> FreeEndo {
        FreeEndo::new(vec![w("a1", 1), w("b1 a1", 1)]).unwrap()
    }

    fn xy() -> PhiValuation {
        PhiValuation::new(2, vec![vec![1, 0], vec![0, 1]]).unwrap()
    }

    #[test]
    fn reduction() {
        assert!(w("a1 a1^-1", 1).is_empty());
        assert_eq!(w("a1 b1 b1^-1 a1", 1), w("a1^2", 1));
        let r = w("a1 b1 a1^-1", 1);
        assert_eq!(Word::reduce(r.letters().to_vec(), 2).unwrap(), r);
        assert!(Word::from_signed(&[3], 2).is_err());
    }

    #[test]
    fn endomorphisms() {
        let nu = boundary_word(1);
        assert_eq!(FreeEndo::identity(2).apply(&nu), nu);
        assert_eq!(twist().apply(&nu), nu);
        let inv = FreeEndo::new(vec![w("a1", 1), w("b1 a1^-1", 1)]).unwrap();
        assert_eq!(twist().compose(&inv).unwrap(), FreeEndo::identity(2));
        assert!(twist().check_boundary());
        let swap = FreeEndo::new(vec![w("b1", 1), w("a1", 1)]).unwrap();
        assert!(!swap.check_boundary());
        assert!(FreeEndo::identity(4).compose(&twist()).is_err());
    }

    #[test]
    fn fox_examples() {
        let t = PhiValuation::new(1, vec![vec![1], vec![0]]).unwrap();
        assert!(fox_derivative(&w("a1", 1), 0, &t).is_one());
        assert_eq!(fox_derivative(&w("a1^-1", 1), 0, &t), parse_poly("-t1^-1", 1).unwrap());
        let v = fox_vector(&boundary_word(1), &xy());
        assert_eq!(v[0], parse_poly("1 - t2", 2).unwrap());
        assert_eq!(v[1], parse_poly("t1 - 1", 2).unwrap());
    }

    #[test]
    fn jacobian_of_twist() {
        let j = jacobian(&twist(), &xy()).unwrap();
        assert!(j[(0, 0)].is_one());
        assert!(j[(1, 0)].is_zero());
        assert_eq!(j[(0, 1)], parse_poly("t2", 2).unwrap());
        assert!(j[(1, 1)].is_one());
        assert_eq!(jacobian(&FreeEndo::identity(2), &xy()).unwrap(), MatR::identity(2, 2));
    }

    #[test]
    fn jacobian_chain_rule() {
        let f = twist();
        let g = FreeEndo::new(vec![w("a1 b1", 1), w("b1", 1)]).unwrap();
        let phi = xy();
        let lhs = jacobian(&f.compose(&g).unwrap(), &phi).unwrap();
        let rhs = jacobian(&f, &phi).unwrap().mul(&jacobian(&g, &phi.pullback(&f).unwrap()).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn phi_values() {
        let phi = xy();
        assert!(phi.phi_of_word(&boundary_word(1)).is_one());
        assert_eq!(phi.phi_of_word(&w("a1 b1", 1)), parse_poly("t1*t2", 2).unwrap());
        assert_eq!(phi.phi_of_word(&w("a1^-1", 1)), parse_poly("t1^-1", 2).unwrap());
    }
}
