//! Exact arithmetic in `R = Z[t1^±1, ..., tn^±1]` and its fraction field.

mod frac;
mod gcd;
mod laurent;
mod parse;

pub use frac::RingFrac;
pub use gcd::{exact_div, gcd};
pub use laurent::{Exponent, LaurentPoly};
pub use parse::{parse_frac, parse_poly};

/// Common interface for the scalar types used by the matrix code.
pub trait Scalar: Clone + PartialEq + std::fmt::Debug + std::fmt::Display {
    fn zero(nvars: usize) -> Self;
    fn one(nvars: usize) -> Self;
    fn nvars(&self) -> usize;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn involute(&self) -> Self;
}

/// Scalars with exact division by nonzero elements.
pub trait Field: Scalar {
    fn div(&self, o: &Self) -> Self;
}

impl Scalar for LaurentPoly {
    fn zero(nvars: usize) -> Self {
        LaurentPoly::zero(nvars)
    }
    fn one(nvars: usize) -> Self {
        LaurentPoly::one(nvars)
    }
    fn nvars(&self) -> usize {
        LaurentPoly::nvars(self)
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn involute(&self) -> Self {
        LaurentPoly::involute(self)
    }
}

impl Scalar for RingFrac {
    fn zero(nvars: usize) -> Self {
        RingFrac::zero(nvars)
    }
    fn one(nvars: usize) -> Self {
        RingFrac::one(nvars)
    }
    fn nvars(&self) -> usize {
        RingFrac::nvars(self)
    }
    fn is_zero(&self) -> bool {
        RingFrac::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn involute(&self) -> Self {
        RingFrac::involute(self)
    }
}

impl Field for RingFrac {
    fn div(&self, o: &Self) -> Self {
        self / o
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        parse_poly(s, 2).unwrap()
    }

    #[test]
    fn spec_examples() {
        let t = parse_poly("t1", 1).unwrap();
        let one = LaurentPoly::one(1);
        let a = &(&t - &one) * &(&t.involute() - &one);
        assert_eq!(a, parse_poly("2 - t1 - t1^-1", 1).unwrap());
        assert_eq!(p("t1 + 2*t2^-1").involute(), p("t1^-1 + 2*t2"));
        assert_eq!(p("3*t1*t2^-1 + 2").augment(), 5.into());
        let (u, n) = parse_poly("-t1^3", 1).unwrap().unit_normalize().unwrap();
        assert_eq!((u, n), (parse_poly("-t1^3", 1).unwrap(), one.clone()));
        let (u, n) = parse_poly("t1^2 - t1", 1).unwrap().unit_normalize().unwrap();
        assert_eq!((u, n), (t.clone(), parse_poly("t1 - 1", 1).unwrap()));
        let (u, n) = parse_poly("7", 1).unwrap().unit_normalize().unwrap();
        assert_eq!((u, n), (one.clone(), parse_poly("7", 1).unwrap()));
        assert!(LaurentPoly::zero(1).unit_normalize().is_err());
    }

    #[test]
    fn mismatched_variable_counts_error() {
        let a = LaurentPoly::one(1);
        let b = LaurentPoly::one(2);
        assert!(a.try_add(&b).is_err());
        assert!(a.try_mul(&b).is_err());
    }
}
