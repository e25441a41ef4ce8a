//! Integer column reduction for lattice computations over `Z`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix as a list of rows.
pub type IntMat = Vec<Vec<BigInt>>;

/// Result of unimodular column reduction `a * v = h`.
pub struct ColumnEchelon {
    pub h: IntMat,
    pub v: IntMat,
    pub v_inv: IntMat,
    pub rank: usize,
}

fn identity(n: usize) -> IntMat {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

/// Column-reduces `a` (rows x n) by unimodular operations; the first `rank`
/// columns of `h` are in echelon form and the rest vanish.
pub fn column_echelon(a: &IntMat, n: usize) -> ColumnEchelon {
    let mut h: IntMat = a.clone();
    let mut v = identity(n);
    let mut v_inv = identity(n);
    let rows = h.len();
    let mut c = 0;
    for r in 0..rows {
        if c == n {
            break;
        }
        loop {
            // smallest nonzero entry of row r among columns c..n
            let Some(p) = (c..n).filter(|&j| !h[r][j].is_zero()).min_by(|&x, &y| h[r][x].abs().cmp(&h[r][y].abs()))
            else {
                break;
            };
            swap_cols(&mut h, &mut v, &mut v_inv, p, c);
            let mut done = true;
            for j in c + 1..n {
                if h[r][j].is_zero() {
                    continue;
                }
                let q = h[r][j].div_floor(&h[r][c]);
                add_col(&mut h, &mut v, &mut v_inv, c, j, &(-q));
                if !h[r][j].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !h[r][c].is_zero() {
            if h[r][c].is_negative() {
                neg_col(&mut h, &mut v, &mut v_inv, c);
            }
            c += 1;
        }
    }
    ColumnEchelon { h, v, v_inv, rank: c }
}

fn swap_cols(h: &mut IntMat, v: &mut IntMat, v_inv: &mut IntMat, i: usize, j: usize) {
    if i == j {
        return;
    }
    for row in h.iter_mut().chain(v.iter_mut()) {
        row.swap(i, j);
    }
    v_inv.swap(i, j);
}

/// `col_j += c * col_i`.
fn add_col(h: &mut IntMat, v: &mut IntMat, v_inv: &mut IntMat, i: usize, j: usize, c: &BigInt) {
    for row in h.iter_mut().chain(v.iter_mut()) {
        let t = &row[i] * c;
        row[j] += t;
    }
    let rj = v_inv[j].clone();
    for (x, y) in v_inv[i].iter_mut().zip(&rj) {
        *x -= c * y;
    }
}

fn neg_col(h: &mut IntMat, v: &mut IntMat, v_inv: &mut IntMat, i: usize) {
    for row in h.iter_mut().chain(v.iter_mut()) {
        row[i] = -std::mem::take(&mut row[i]);
    }
    for x in v_inv[i].iter_mut() {
        *x = -std::mem::take(x);
    }
}

/// Basis of `{x in Z^n : a x = 0}`; the result spans a saturated lattice.
pub fn integer_kernel(a: &IntMat, n: usize) -> Vec<Vec<BigInt>> {
    let ce = column_echelon(a, n);
    (ce.rank..n).map(|j| ce.v.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Saturation `span_Q(vecs) ∩ Z^n` of integer vectors.
pub fn saturate(vecs: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    if vecs.is_empty() {
        return Vec::new();
    }
    // orthogonal complement, then its integer kernel
    let perp = integer_kernel(&vecs.to_vec(), n);
    if perp.is_empty() {
        return identity(n);
    }
    integer_kernel(&perp, n)
}

/// Extends a basis of a saturated lattice to a basis of `Z^n`; returns the
/// added vectors.
pub fn complete_basis(vecs: &[Vec<BigInt>], n: usize) -> Option<Vec<Vec<BigInt>>> {
    let ce = column_echelon(&vecs.to_vec(), n);
    if ce.rank != vecs.len() {
        return None;
    }
    // unimodular leading block iff the lattice is saturated
    for i in 0..ce.rank {
        if !ce.h[i][i].abs().is_one() {
            return None;
        }
    }
    Some(ce.v_inv[ce.rank..].to_vec())
}

/// Determinant of a square integer matrix (Bareiss).
pub fn int_det(a: &IntMat) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            m.swap(p, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[k][k] * &m[i][j] - &m[i][k] * &m[k][j]) / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    if sign {
        -prev
    } else {
        prev
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn im(rows: &[&[i64]]) -> IntMat {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn kernel_and_saturation() {
        let a = im(&[&[2, 4, 6]]);
        let k = integer_kernel(&a, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            let s: BigInt = v.iter().zip(&a[0]).map(|(x, y)| x * y).sum();
            assert!(s.is_zero());
        }
        let s = saturate(&im(&[&[2, 4, 0]]), 3);
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].iter().map(|x| x.abs()).collect::<Vec<_>>(), im(&[&[1, 2, 0]])[0]);
    }

    #[test]
    fn completion_is_unimodular() {
        let e = im(&[&[1, 2, 3], &[0, 1, 4]]);
        let w = complete_basis(&e, 3).unwrap();
        let mut all = e.clone();
        all.extend(w);
        assert!(int_det(&all).abs().is_one());
        assert!(complete_basis(&im(&[&[2, 0, 0]]), 3).is_none());
    }
}
