use super::{Mat, MatQ};
use crate::error::{Error, Result};
use crate::ring::{Field, RingFrac, Scalar};

fn weight<T: Scalar>(x: &T) -> usize {
    x.to_string().len()
}

/// Reduced row echelon form and pivot columns.
///
/// The pivot in each column is the lightest nonzero candidate; the reduced
/// form does not depend on this choice.
pub fn rref<T: Field>(a: &Mat<T>) -> (Mat<T>, Vec<usize>) {
    let mut m = a.clone();
    let nv = a.nvars();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols() {
        if r == m.rows() {
            break;
        }
        let Some(p) = (r..m.rows()).filter(|&i| !m[(i, c)].is_zero()).min_by_key(|&i| weight(&m[(i, c)])) else {
            continue;
        };
        m.swap_rows(p, r);
        let pv = m[(r, c)].clone();
        if !pv_is_one(&pv) {
            for j in c..m.cols() {
                if !m[(r, j)].is_zero() {
                    m[(r, j)] = m[(r, j)].div(&pv);
                }
            }
        }
        for i in 0..m.rows() {
            if i == r || m[(i, c)].is_zero() {
                continue;
            }
            let f = m[(i, c)].clone();
            for j in c..m.cols() {
                if m[(r, j)].is_zero() {
                    continue;
                }
                let v = m[(i, j)].sub(&f.mul(&m[(r, j)]));
                m[(i, j)] = v;
            }
            m[(i, c)] = T::zero(nv);
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

fn pv_is_one<T: Scalar>(x: &T) -> bool {
    *x == T::one(x.nvars())
}

pub fn rank<T: Field>(a: &Mat<T>) -> usize {
    rref(a).1.len()
}

/// Kernel of `a` acting on column vectors, in canonical echelon form.
pub fn kernel(a: &MatQ) -> Subspace {
    let nv = a.nvars();
    let n = a.cols();
    let (m, pivots) = rref(a);
    let mut basis = Vec::new();
    for f in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![RingFrac::zero(nv); n];
        v[f] = RingFrac::one(nv);
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = m[(r, f)].neg();
        }
        basis.push(v);
    }
    Subspace::from_vectors(nv, n, &basis)
}

/// Some solution `x` of `a x = b`.
pub fn solve(a: &MatQ, b: &[RingFrac]) -> Result<Vec<RingFrac>> {
    if b.len() != a.rows() {
        return Err(Error::Dimension(format!("right-hand side has length {}, expected {}", b.len(), a.rows())));
    }
    let nv = a.nvars();
    let aug = a.hstack(&MatQ::from_cols(nv, a.rows(), &[b.to_vec()]));
    let (m, pivots) = rref(&aug);
    if pivots.last() == Some(&a.cols()) {
        return Err(Error::Inconsistent);
    }
    let mut x = vec![RingFrac::zero(nv); a.cols()];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = m[(r, a.cols())].clone();
    }
    Ok(x)
}

/// Solves `a X = B` column by column, sharing one elimination.
pub fn solve_many(a: &MatQ, b: &MatQ) -> Result<MatQ> {
    if b.rows() != a.rows() {
        return Err(Error::Dimension("right-hand side row count".into()));
    }
    let nv = a.nvars();
    let aug = a.hstack(b);
    let (m, pivots) = rref(&aug);
    if pivots.iter().any(|&p| p >= a.cols()) {
        return Err(Error::Inconsistent);
    }
    let mut x = MatQ::zeros(nv, a.cols(), b.cols());
    for (r, &p) in pivots.iter().enumerate() {
        for j in 0..b.cols() {
            x[(p, j)] = m[(r, a.cols() + j)].clone();
        }
    }
    Ok(x)
}

/// Rational subspace stored by its reduced column echelon basis.
///
/// Each basis column has a leading entry `1` in its pivot row, pivot rows
/// increase from column to column, and every other column vanishes in
/// those rows. Equal subspaces therefore have identical bases.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: MatQ,
}

impl Subspace {
    pub fn zero(nvars: usize, ambient: usize) -> Self {
        Subspace { ambient, basis: MatQ::zeros(nvars, ambient, 0) }
    }

    pub fn full(nvars: usize, ambient: usize) -> Self {
        Subspace { ambient, basis: MatQ::identity(nvars, ambient) }
    }

    /// Span of the given vectors.
    pub fn from_vectors(nvars: usize, ambient: usize, vecs: &[Vec<RingFrac>]) -> Self {
        if vecs.is_empty() {
            return Self::zero(nvars, ambient);
        }
        let m = MatQ::from_rows(nvars, vecs.to_vec()).expect("equal-length vectors");
        assert_eq!(m.cols(), ambient, "vector length");
        let (r, piv) = rref(&m);
        let rows: Vec<Vec<RingFrac>> = (0..piv.len()).map(|i| r.row(i)).collect();
        Subspace { ambient, basis: MatQ::from_cols(nvars, ambient, &rows) }
    }

    /// Span of the columns of `m`.
    pub fn from_cols(m: &MatQ) -> Self {
        Self::from_vectors(m.nvars(), m.rows(), &m.col_vecs())
    }

    pub fn nvars(&self) -> usize {
        self.basis.nvars()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &MatQ {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<Vec<RingFrac>> {
        self.basis.col_vecs()
    }

    pub fn contains(&self, v: &[RingFrac]) -> bool {
        if self.dim() == 0 {
            return v.iter().all(|x| x.is_zero());
        }
        solve(&self.basis, v).is_ok()
    }

    pub fn contains_subspace(&self, o: &Subspace) -> bool {
        o.vectors().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, o: &Subspace) -> Self {
        let mut v = self.vectors();
        v.extend(o.vectors());
        Self::from_vectors(self.nvars(), self.ambient, &v)
    }

    pub fn intersect(&self, o: &Subspace) -> Self {
        let nv = self.nvars();
        if self.dim() == 0 || o.dim() == 0 {
            return Self::zero(nv, self.ambient);
        }
        let sys = self.basis.hstack(&o.basis.neg());
        let k = kernel(&sys);
        let d = self.dim();
        let vecs: Vec<Vec<RingFrac>> =
            k.vectors().iter().map(|x| self.basis.mul_vec(&x[..d])).collect();
        Self::from_vectors(nv, self.ambient, &vecs)
    }

    /// Lowest common multiple of denominators turns the basis into lattice
    /// vectors spanning the same rational subspace.
    pub fn integral_basis(&self) -> Vec<Vec<crate::ring::LaurentPoly>> {
        self.vectors()
            .into_iter()
            .map(|v| {
                let mut l = crate::ring::LaurentPoly::one(self.nvars());
                for x in &v {
                    if !x.den().is_one() {
                        let g = crate::ring::gcd(&l, x.den());
                        l = crate::ring::exact_div(&(&l * x.den()), &g).expect("gcd divides");
                    }
                }
                v.iter().map(|x| x.mul_poly(&l).as_poly().expect("cleared").clone()).collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_frac;

    fn q(s: &str) -> RingFrac {
        parse_frac(s, 1).unwrap()
    }

    fn mq(rows: &[&[&str]]) -> MatQ {
        MatQ::from_rows(1, rows.iter().map(|r| r.iter().map(|s| q(s)).collect()).collect()).unwrap()
    }

    #[test]
    fn kernels() {
        assert_eq!(kernel(&MatQ::identity(1, 3)).dim(), 0);
        assert_eq!(kernel(&MatQ::zeros(1, 2, 2)), Subspace::full(1, 2));
        let k = kernel(&mq(&[&["1", "t1"]]));
        assert_eq!(k.vectors(), vec![vec![q("1"), q("-t1^-1")]]);
        assert_eq!(k, Subspace::from_vectors(1, 2, &[vec![q("-t1"), q("1")]]));
    }

    #[test]
    fn subspace_operations() {
        let e = |i: usize| -> Vec<RingFrac> { (0..4).map(|j| if i == j { q("1") } else { q("0") }).collect() };
        let a = Subspace::from_vectors(1, 4, &[e(0), e(1)]);
        let b = Subspace::from_vectors(1, 4, &[e(2), e(3)]);
        assert_eq!(a.sum(&b), Subspace::full(1, 4));
        let c = Subspace::from_vectors(1, 4, &[e(1), e(2)]);
        assert_eq!(a.intersect(&c), Subspace::from_vectors(1, 4, &[e(1)]));
        let two = vec![q("2"), q("2*t1"), q("0"), q("0")];
        let one = vec![q("1"), q("t1"), q("0"), q("0")];
        assert_eq!(Subspace::from_vectors(1, 4, &[two, one]).dim(), 1);
    }

    #[test]
    fn solving() {
        let x = solve(&mq(&[&["2"]]), &[q("t1 - 1")]).unwrap();
        assert_eq!(x, vec![q("(t1 - 1)/2")]);
        let a = mq(&[&["1", "2", "1"], &["2", "4", "t1"]]);
        let b = vec![q("3"), q("t1 + 4")];
        let x = solve(&a, &b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
        assert!(solve(&mq(&[&["1", "1"], &["1", "1"]]), &[q("1"), q("2")]).is_err());
    }
}
