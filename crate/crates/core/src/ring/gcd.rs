//! Multivariate gcd over the integers and exact division.
//!
//! Laurent inputs are shifted into ordinary polynomials first. The gcd
//! recurses on variables: content and primitive part with respect to the
//! current main variable, then a subresultant remainder sequence.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::laurent::{Exponent, LaurentPoly};

/// Exact quotient `a / b` in the Laurent ring, or `None` when `b` does not divide `a`.
pub fn exact_div(a: &LaurentPoly, b: &LaurentPoly) -> Option<LaurentPoly> {
    assert_eq!(a.nvars(), b.nvars(), "variable-count mismatch");
    if b.is_zero() {
        return None;
    }
    if a.is_zero() {
        return Some(LaurentPoly::zero(a.nvars()));
    }
    if let Some((e, c)) = b.as_monomial() {
        let mut out = BTreeMap::new();
        for (k, v) in a.terms() {
            let (q, r) = v.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            out.insert(k.iter().zip(e).map(|(x, y)| x - y).collect::<Exponent>(), q);
        }
        return Some(LaurentPoly::from_map(a.nvars(), out));
    }
    let sa = a.min_exponents();
    let sb = b.min_exponents();
    let pa = a.shift(&neg(&sa));
    let pb = b.shift(&neg(&sb));
    let q = poly_div(&pa, &pb)?;
    let s: Exponent = sa.iter().zip(&sb).map(|(x, y)| x - y).collect();
    Some(q.shift(&s))
}

fn neg(e: &[i64]) -> Exponent {
    e.iter().map(|x| -x).collect()
}

/// Division of polynomials with non-negative exponents by lexicographic
/// leading terms; `None` unless the remainder is zero.
fn poly_div(a: &LaurentPoly, b: &LaurentPoly) -> Option<LaurentPoly> {
    let n = a.nvars();
    let (lb_e, lb_c) = {
        let (e, c) = b.leading()?;
        (e.clone(), c.clone())
    };
    let mut rem = a.clone();
    let mut q = LaurentPoly::zero(n);
    while let Some((le, lc)) = rem.leading() {
        let d: Exponent = le.iter().zip(&lb_e).map(|(x, y)| x - y).collect();
        if d.iter().any(|&x| x < 0) {
            return None;
        }
        let (cq, r) = lc.div_rem(&lb_c);
        if !r.is_zero() {
            return None;
        }
        let t = LaurentPoly::monomial(n, d, cq);
        rem = &rem - &(&t * b);
        q = &q + &t;
    }
    Some(q)
}

/// Greatest common divisor, unit-normalized; `gcd(0, 0) = 0`.
pub fn gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    assert_eq!(a.nvars(), b.nvars(), "variable-count mismatch");
    let n = a.nvars();
    if a.is_zero() && b.is_zero() {
        return LaurentPoly::zero(n);
    }
    if a.is_zero() {
        return b.normal_form();
    }
    if b.is_zero() {
        return a.normal_form();
    }
    if a.is_unit() || b.is_unit() {
        return LaurentPoly::one(n);
    }
    let pa = a.normal_form();
    let pb = b.normal_form();
    if pa == pb {
        return pa;
    }
    if let (Some(x), Some(y)) = (pa.as_constant(), pb.as_constant()) {
        return LaurentPoly::constant(n, x.gcd(&y));
    }
    gcd_rec(&pa, &pb, 0).normal_form()
}

/// Degree in variable `v` (polynomials only).
fn degree(p: &LaurentPoly, v: usize) -> i64 {
    p.terms().map(|(e, _)| e[v]).max().unwrap_or(-1)
}

/// Coefficients of `p` viewed as a polynomial in `t_v`, indexed by degree.
fn coeffs(p: &LaurentPoly, v: usize) -> BTreeMap<i64, LaurentPoly> {
    let n = p.nvars();
    let mut out: BTreeMap<i64, BTreeMap<Exponent, BigInt>> = BTreeMap::new();
    for (e, c) in p.terms() {
        let mut e2 = e.clone();
        e2[v] = 0;
        out.entry(e[v]).or_default().insert(e2, c.clone());
    }
    out.into_iter().map(|(d, m)| (d, LaurentPoly::from_map(n, m))).collect()
}

fn lead_coeff(p: &LaurentPoly, v: usize) -> LaurentPoly {
    coeffs(p, v).into_iter().next_back().map(|(_, c)| c).unwrap_or_else(|| LaurentPoly::zero(p.nvars()))
}

fn var_pow(n: usize, v: usize, k: i64) -> LaurentPoly {
    let mut e = vec![0; n];
    e[v] = k;
    LaurentPoly::monomial(n, e, 1)
}

fn involves_from(p: &LaurentPoly, v: usize) -> bool {
    p.terms().any(|(e, _)| e[v..].iter().any(|&x| x != 0))
}

/// Content of `p` with respect to main variable `v`, as a polynomial in later variables.
fn content(p: &LaurentPoly, v: usize) -> LaurentPoly {
    let mut g = LaurentPoly::zero(p.nvars());
    for (_, c) in coeffs(p, v) {
        g = gcd_rec(&g, &c, v + 1);
        if g.as_constant().is_some_and(|x| x.abs().is_one()) {
            break;
        }
    }
    g
}

/// Gcd of polynomials that only involve variables `v..n`, up to sign.
fn gcd_rec(a: &LaurentPoly, b: &LaurentPoly, v: usize) -> LaurentPoly {
    let n = a.nvars();
    if a.is_zero() {
        return abs_sign(b, v);
    }
    if b.is_zero() {
        return abs_sign(a, v);
    }
    // skip variables that neither polynomial involves
    let mut v = v;
    while v < n && degree(a, v) <= 0 && degree(b, v) <= 0 {
        v += 1;
    }
    if v >= n || (!involves_from(a, v) && !involves_from(b, v)) {
        let x = a.as_constant().expect("constant");
        let y = b.as_constant().expect("constant");
        return LaurentPoly::constant(n, x.gcd(&y));
    }
    let ca = content(a, v);
    let cb = content(b, v);
    let c = gcd_rec(&ca, &cb, v + 1);
    let pa = exact_div(a, &ca).expect("content divides");
    let pb = exact_div(b, &cb).expect("content divides");
    let g = if degree(&pa, v) == 0 || degree(&pb, v) == 0 {
        LaurentPoly::one(n)
    } else {
        let s = subresultant_last(&pa, &pb, v);
        let cs = content(&s, v);
        exact_div(&s, &cs).expect("content divides")
    };
    abs_sign(&(&c * &g), v)
}

fn abs_sign(p: &LaurentPoly, _v: usize) -> LaurentPoly {
    match p.leading() {
        Some((_, c)) if c.is_negative() => -p,
        _ => p.clone(),
    }
}

/// Pseudo-remainder of `a` by `b` in the main variable `v`.
fn prem(a: &LaurentPoly, b: &LaurentPoly, v: usize) -> LaurentPoly {
    let n = a.nvars();
    let db = degree(b, v);
    let lb = lead_coeff(b, v);
    let mut r = a.clone();
    let mut e = degree(a, v) - db + 1;
    while !r.is_zero() && degree(&r, v) >= db {
        let dr = degree(&r, v);
        let lr = lead_coeff(&r, v);
        let t = &lr * &var_pow(n, v, dr - db);
        r = &(&lb * &r) - &(&t * b);
        e -= 1;
    }
    if e > 0 {
        r = &lb.pow(e as u32) * &r;
    }
    r
}

/// Last nonzero element of the subresultant remainder sequence.
fn subresultant_last(a: &LaurentPoly, b: &LaurentPoly, v: usize) -> LaurentPoly {
    let n = a.nvars();
    let (mut f, mut g) = if degree(a, v) >= degree(b, v) { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
    let mut psi = LaurentPoly::constant(n, -1);
    let mut delta = degree(&f, v) - degree(&g, v);
    let mut beta = if (delta + 1) % 2 == 0 { LaurentPoly::one(n) } else { LaurentPoly::constant(n, -1) };
    loop {
        let r = prem(&f, &g, v);
        if r.is_zero() {
            return g;
        }
        let h = exact_div(&r, &beta).expect("subresultant division is exact");
        if degree(&h, v) == 0 {
            return h;
        }
        let lg = lead_coeff(&g, v);
        // psi_{i+1} = (-lc(g))^delta / psi_i^(delta - 1)
        let neg_lg = -&lg;
        psi = if delta == 0 {
            psi
        } else {
            let num = neg_lg.pow(delta as u32);
            exact_div(&num, &psi.pow((delta - 1) as u32)).expect("psi division is exact")
        };
        f = g;
        g = h;
        delta = degree(&f, v) - degree(&g, v);
        let lf = lead_coeff(&f, v);
        beta = -(&lf * &psi.pow(delta as u32));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_poly;

    fn p(s: &str, n: usize) -> LaurentPoly {
        parse_poly(s, n).unwrap()
    }

    #[test]
    fn univariate_gcd() {
        assert_eq!(gcd(&p("t1^2 - 1", 1), &p("t1 - 1", 1)), p("t1 - 1", 1));
        assert_eq!(gcd(&p("2", 1), &p("3", 1)), p("1", 1));
        assert_eq!(gcd(&p("6*t1 + 6", 1), &p("4*t1^2 - 4", 1)), p("2*t1 + 2", 1));
        assert_eq!(gcd(&p("t1^-3 - t1^-2", 1), &p("t1^5 - t1^4", 1)), p("t1 - 1", 1));
    }

    #[test]
    fn bivariate_gcd() {
        let a = p("t1*t2 - 1", 2);
        let b = p("t1 + t2^2", 2);
        let c = p("t1^2 - 3*t2 + 1", 2);
        let g = gcd(&(&a * &b), &(&a * &c));
        assert_eq!(g, a);
        assert_eq!(gcd(&a, &b), p("1", 2));
        let c = p("t1^4 + t1^2*t2 + t2^2", 2);
        assert_eq!(gcd(&c, &p("t1^2 + t2", 2)), p("1", 2));
    }

    #[test]
    fn exact_division() {
        let a = p("t1^2 - 1", 1);
        assert_eq!(exact_div(&a, &p("t1 + 1", 1)), Some(p("t1 - 1", 1)));
        assert_eq!(exact_div(&a, &p("t1 + 2", 1)), None);
        assert_eq!(exact_div(&p("2*t1^-1", 1), &p("-t1^-3", 1)), Some(p("-2*t1^2", 1)));
    }
}
