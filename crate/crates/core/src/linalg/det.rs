use super::{Mat, MatR};
use crate::error::{Error, Result};
use crate::ring::{exact_div, gcd, Field, LaurentPoly};

/// Determinant over `R` by fraction-free (Bareiss) elimination.
pub fn det(a: &MatR) -> Result<LaurentPoly> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let n = a.rows();
    let nv = a.nvars();
    if n == 0 {
        return Ok(LaurentPoly::one(nv));
    }
    let mut m = a.clone();
    let mut sign = false;
    let mut prev = LaurentPoly::one(nv);
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[(i, k)].is_zero()) else {
            return Ok(LaurentPoly::zero(nv));
        };
        if p != k {
            m.swap_rows(p, k);
            sign = !sign;
        }
        let pivot = m[(k, k)].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&pivot * &m[(i, j)]) - &(&m[(i, k)] * &m[(k, j)]);
                m[(i, j)] = exact_div(&v, &prev).expect("Bareiss division is exact");
            }
            m[(i, k)] = LaurentPoly::zero(nv);
        }
        prev = pivot;
    }
    let d = m[(n - 1, n - 1)].clone();
    Ok(if sign { -d } else { d })
}

/// Determinant over a field by Gaussian elimination.
pub fn det_field<T: Field>(a: &Mat<T>) -> Result<T> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let n = a.rows();
    let nv = a.nvars();
    let mut m = a.clone();
    let mut acc = T::one(nv);
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[(i, k)].is_zero()) else {
            return Ok(T::zero(nv));
        };
        if p != k {
            m.swap_rows(p, k);
            acc = acc.neg();
        }
        let pivot = m[(k, k)].clone();
        acc = acc.mul(&pivot);
        for i in k + 1..n {
            if m[(i, k)].is_zero() {
                continue;
            }
            let f = m[(i, k)].div(&pivot);
            for j in k + 1..n {
                let v = m[(i, j)].sub(&f.mul(&m[(k, j)]));
                m[(i, j)] = v;
            }
            m[(i, k)] = T::zero(nv);
        }
    }
    Ok(acc)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Gcd of all `k x k` minors formed from `k` rows of a matrix with `k` columns.
pub fn minors_gcd(a: &MatR) -> LaurentPoly {
    let k = a.cols();
    let nv = a.nvars();
    if a.rows() < k {
        return LaurentPoly::zero(nv);
    }
    let mut g = LaurentPoly::zero(nv);
    for rows in combinations(a.rows(), k) {
        let d = det(&a.select_rows(&rows)).expect("square minor");
        if d.is_zero() {
            continue;
        }
        g = gcd(&g, &d);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Order of the module presented by `a` (rows = relations, columns = generators):
/// the gcd of maximal minors, unit-normalized, or zero when the module has
/// positive rank.
pub fn ord_of_presentation(a: &MatR) -> LaurentPoly {
    if a.cols() == 0 {
        return LaurentPoly::one(a.nvars());
    }
    minors_gcd(a).normal_form()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_poly;

    fn m(rows: &[&[&str]], n: usize) -> MatR {
        MatR::from_rows(n, rows.iter().map(|r| r.iter().map(|s| parse_poly(s, n).unwrap()).collect()).collect())
            .unwrap()
    }

    #[test]
    fn determinants() {
        assert!(det(&MatR::identity(1, 3)).unwrap().is_one());
        assert_eq!(det(&m(&[&["0", "2"], &["-2", "0"]], 0)).unwrap(), parse_poly("4", 0).unwrap());
        assert!(det(&m(&[&["t1", "1"], &["1", "t1^-1"]], 1)).unwrap().is_zero());
        let a = m(&[&["t1", "1", "0"], &["2", "t1^-1", "t1 - 1"], &["0", "1", "3"]], 1);
        let d = det(&a).unwrap();
        let q = det_field(&a.to_q()).unwrap();
        assert_eq!(q.num(), &d);
        assert!(det(&m(&[&["1", "2"]], 0)).is_err());
    }

    #[test]
    fn orders() {
        assert_eq!(ord_of_presentation(&m(&[&["t1 - 1"]], 1)), parse_poly("t1 - 1", 1).unwrap());
        assert!(ord_of_presentation(&MatR::zeros(1, 0, 2)).is_zero());
        let d = m(&[&["t1 - 1", "0"], &["0", "t1 + 1"]], 1);
        assert_eq!(ord_of_presentation(&d), parse_poly("t1^2 - 1", 1).unwrap());
        let extra = d.vstack(&m(&[&["t1^2 - t1", "t1^3 + t1^2"]], 1));
        assert_eq!(ord_of_presentation(&extra), parse_poly("t1^2 - 1", 1).unwrap());
    }
}
