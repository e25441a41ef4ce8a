//! Lagrangian relations between pointed Hermitian modules.
//!
//! A relation `H₋ ⇒ H₊` is stored as a rational subspace of `H₋ ⊕ H₊`, source
//! coordinates first.

use crate::error::{Error, Result};
use crate::linalg::{det_field, kernel, MatQ, Subspace};
use crate::ring::{LaurentPoly, RingFrac};
use crate::surface::{surface_permutation, tensor_pointed, PointedHermModule};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LagRelation {
    source: PointedHermModule,
    target: PointedHermModule,
    space: Subspace,
    pointed: bool,
}

impl LagRelation {
    /// Span of the generator columns, checked to be a pointed Lagrangian.
    pub fn make(source: PointedHermModule, target: PointedHermModule, generators: &MatQ) -> Result<Self> {
        Self::build(source, target, generators, true)
    }

    /// Same as [`make`](Self::make) without the point condition.
    pub fn make_unpointed(source: PointedHermModule, target: PointedHermModule, generators: &MatQ) -> Result<Self> {
        Self::build(source, target, generators, false)
    }

    fn build(source: PointedHermModule, target: PointedHermModule, generators: &MatQ, pointed: bool) -> Result<Self> {
        if source.nvars() != target.nvars() {
            return Err(Error::RankMismatch { left: source.nvars(), right: target.nvars() });
        }
        let amb = source.rank() + target.rank();
        if generators.rows() != amb {
            return Err(Error::Dimension(format!("generators have {} rows, ambient is {}", generators.rows(), amb)));
        }
        let space = Subspace::from_cols(generators);
        let rel = LagRelation { source, target, space, pointed };
        rel.check()?;
        Ok(rel)
    }

    fn from_vectors(source: PointedHermModule, target: PointedHermModule, vecs: &[Vec<RingFrac>]) -> Self {
        let n = source.nvars();
        let amb = source.rank() + target.rank();
        LagRelation { space: Subspace::from_vectors(n, amb, vecs), source, target, pointed: true }
    }

    /// Verifies half-dimension, isotropy and (when pointed) the point.
    pub fn check(&self) -> Result<()> {
        let amb = self.ambient();
        if 2 * self.space.dim() != amb {
            return Err(Error::invariant(
                "not-half-dimensional",
                format!("dimension {} in ambient of rank {}", self.space.dim(), amb),
            ));
        }
        let r = self.source.rank();
        let vecs = self.space.integral_basis();
        for (i, v) in vecs.iter().enumerate() {
            for w in &vecs[i..] {
                let val = &self.target.form_eval_r(&v[r..], &w[r..]) - &self.source.form_eval_r(&v[..r], &w[..r]);
                if !val.is_zero() {
                    return Err(Error::invariant("not-isotropic", format!("form value {} on a basis pair", val)));
                }
            }
        }
        if self.pointed && !self.space.contains(&self.point()) {
            return Err(Error::invariant("point-missing", "(nu-, nu+) is not in the relation"));
        }
        Ok(())
    }

    /// Same as [`check`](Self::check) with failures reported as internal.
    pub fn certify(&self) -> Result<()> {
        self.check().map_err(Error::into_certification)
    }

    fn point(&self) -> Vec<RingFrac> {
        let mut p = self.source.nu_q();
        p.extend(self.target.nu_q());
        p
    }

    /// The diagonal of `H ⊕ H`.
    pub fn identity(h: &PointedHermModule) -> Self {
        let n = h.nvars();
        let r = h.rank();
        let vecs: Vec<Vec<RingFrac>> = (0..r)
            .map(|i| (0..2 * r).map(|j| if j % r == i { RingFrac::one(n) } else { RingFrac::zero(n) }).collect())
            .collect();
        Self::from_vectors(h.clone(), h.clone(), &vecs)
    }

    /// Graph of `psi`, whose columns are the images of the source basis.
    pub fn graph(psi: &MatQ, source: &PointedHermModule, target: &PointedHermModule) -> Result<Self> {
        let n = source.nvars();
        if !psi.is_square() || psi.rows() != target.rank() || psi.cols() != source.rank() {
            return Err(Error::invariant(
                "non-invertible",
                format!("{}x{} matrix between ranks {} and {}", psi.rows(), psi.cols(), source.rank(), target.rank()),
            ));
        }
        if det_field(psi)?.is_zero() {
            return Err(Error::invariant("non-invertible", "determinant is zero"));
        }
        let lhs = psi.transpose().mul(&target.form_matrix().to_q()).mul(&psi.involute());
        if lhs != source.form_matrix().to_q() {
            return Err(Error::invariant("non-unitary", "psi^T S+ conj(psi) != S-"));
        }
        if psi.mul_vec(&source.nu_q()) != target.nu_q() {
            return Err(Error::invariant("point-not-preserved", "psi(nu-) != nu+"));
        }
        let r = source.rank();
        let vecs: Vec<Vec<RingFrac>> = (0..r)
            .map(|j| {
                let mut v = vec![RingFrac::zero(n); r];
                v[j] = RingFrac::one(n);
                v.extend(psi.col(j));
                v
            })
            .collect();
        Ok(Self::from_vectors(source.clone(), target.clone(), &vecs))
    }

    /// `self ∘ first`: first `first`, then `self`.
    pub fn compose(&self, first: &LagRelation) -> Result<Self> {
        if first.target != self.source {
            return Err(Error::ObjectMismatch(format!(
                "target of genus {} does not match source of genus {}",
                first.target.genus(),
                self.source.genus()
            )));
        }
        let (r1, r2, r3) = (first.source.rank(), self.source.rank(), self.target.rank());
        let b1 = first.space.basis();
        let b2 = self.space.basis();
        let (d1, d2) = (b1.cols(), b2.cols());
        let mid1 = b1.select_rows(&(r1..r1 + r2).collect::<Vec<_>>());
        let mid2 = b2.select_rows(&(0..r2).collect::<Vec<_>>());
        let sys = mid1.hstack(&mid2.neg());
        let outer1 = b1.select_rows(&(0..r1).collect::<Vec<_>>());
        let outer2 = b2.select_rows(&(r2..r2 + r3).collect::<Vec<_>>());
        let vecs: Vec<Vec<RingFrac>> = kernel(&sys)
            .vectors()
            .iter()
            .map(|k| {
                let mut v = outer1.mul_vec(&k[..d1]);
                v.extend(outer2.mul_vec(&k[d1..d1 + d2]));
                v
            })
            .collect();
        let rel = LagRelation {
            space: Subspace::from_vectors(self.nvars(), r1 + r3, &vecs),
            source: first.source.clone(),
            target: self.target.clone(),
            pointed: self.pointed && first.pointed,
        };
        rel.certify()?;
        Ok(rel)
    }

    /// Tensor product with both sides reindexed into surface order.
    pub fn tensor(&self, o: &LagRelation) -> Result<Self> {
        if self.nvars() != o.nvars() {
            return Err(Error::RankMismatch { left: self.nvars(), right: o.nvars() });
        }
        let n = self.nvars();
        let source = tensor_pointed(&self.source, &o.source)?;
        let target = tensor_pointed(&self.target, &o.target)?;
        let ps = surface_permutation(self.source.genus(), o.source.genus());
        let pt = surface_permutation(self.target.genus(), o.target.genus());
        let (rs, rt) = (source.rank(), target.rank());
        let (a_s, a_t) = (self.source.rank(), self.target.rank());
        let mut vecs = Vec::new();
        for (rel, off_s, off_t) in [(self, 0, 0), (o, a_s, a_t)] {
            let rsrc = rel.source.rank();
            for v in rel.space.vectors() {
                let mut w = vec![RingFrac::zero(n); rs + rt];
                for (i, x) in v.into_iter().enumerate() {
                    if i < rsrc {
                        w[ps[off_s + i]] = x;
                    } else {
                        w[rs + pt[off_t + i - rsrc]] = x;
                    }
                }
                vecs.push(w);
            }
        }
        let rel = LagRelation {
            space: Subspace::from_vectors(n, rs + rt, &vecs),
            source,
            target,
            pointed: self.pointed && o.pointed,
        };
        rel.certify()?;
        Ok(rel)
    }

    /// Canonical-form equality on identical objects.
    pub fn equal(&self, o: &LagRelation) -> Result<bool> {
        if self.source != o.source || self.target != o.target {
            return Err(Error::ObjectMismatch("relations between different objects".into()));
        }
        Ok(self.space == o.space)
    }

    pub fn source(&self) -> &PointedHermModule {
        &self.source
    }

    pub fn target(&self) -> &PointedHermModule {
        &self.target
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn is_pointed(&self) -> bool {
        self.pointed
    }

    pub fn nvars(&self) -> usize {
        self.source.nvars()
    }

    pub fn ambient(&self) -> usize {
        self.source.rank() + self.target.rank()
    }

    /// Lattice vectors spanning the relation over `Q`.
    pub fn integral_basis(&self) -> Vec<Vec<LaurentPoly>> {
        self.space.integral_basis()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_group::{jacobian, FreeEndo, PhiValuation, Word};

    fn xy() -> PhiValuation {
        PhiValuation::new(2, vec![vec![1, 0], vec![0, 1]]).unwrap()
    }

    fn e(n: usize, len: usize, i: usize) -> Vec<RingFrac> {
        (0..len).map(|j| if i == j { RingFrac::one(n) } else { RingFrac::zero(n) }).collect()
    }

    #[test]
    fn identity_and_cap() {
        let h = PointedHermModule::build(1, &xy()).unwrap();
        let id = LagRelation::identity(&h);
        id.check().unwrap();
        let z = PointedHermModule::trivial(2);
        let a1 = MatQ::from_cols(2, 2, &[e(2, 2, 0)]);
        assert!(LagRelation::make(z.clone(), h.clone(), &a1).is_err());
        let cap = PointedHermModule::build(1, &PhiValuation::new(2, vec![vec![0, 0], vec![0, 1]]).unwrap()).unwrap();
        LagRelation::make(z.clone(), cap, &a1).unwrap();
        let ab = MatQ::from_cols(2, 2, &[e(2, 2, 0), e(2, 2, 1)]);
        let err = LagRelation::make(z, h, &ab).unwrap_err();
        assert!(matches!(err, Error::Invariant { name: "not-half-dimensional", .. }));
    }

    #[test]
    fn non_isotropic_plane() {
        let z = PointedHermModule::trivial(0);
        let h2 = PointedHermModule::build(2, &PhiValuation::trivial(0, 4)).unwrap();
        let m = MatQ::from_cols(0, 4, &[e(0, 4, 0), e(0, 4, 2)]);
        let err = LagRelation::make(z, h2, &m).unwrap_err();
        assert!(matches!(err, Error::Invariant { name: "not-isotropic", .. }));
    }

    #[test]
    fn twist_graph() {
        let f = FreeEndo::new(vec![Word::parse_surface("a1", 1).unwrap(), Word::parse_surface("b1 a1", 1).unwrap()]).unwrap();
        let phi_plus = PhiValuation::new(1, vec![vec![0], vec![1]]).unwrap();
        let phi_minus = phi_plus.pullback(&f).unwrap();
        let j = jacobian(&f, &phi_plus).unwrap().to_q();
        let src = PointedHermModule::build(1, &phi_minus).unwrap();
        let tgt = PointedHermModule::build(1, &phi_plus).unwrap();
        let g = LagRelation::graph(&j, &src, &tgt).unwrap();
        g.check().unwrap();
        assert!(!g.equal(&LagRelation::identity(&src)).unwrap());
        let id = LagRelation::identity(&src);
        assert!(g.compose(&id).unwrap().equal(&g).unwrap());
        let bad = MatQ::identity(1, 2).scale(&RingFrac::from_int(1, 2));
        assert!(matches!(LagRelation::graph(&bad, &src, &tgt), Err(Error::Invariant { name: "non-unitary", .. })));
    }

    #[test]
    fn tensor_with_unit() {
        let h = PointedHermModule::build(1, &xy()).unwrap();
        let id = LagRelation::identity(&h);
        let e = LagRelation::identity(&PointedHermModule::trivial(2));
        assert_eq!(id.tensor(&e).unwrap(), id);
        assert_eq!(e.tensor(&id).unwrap(), id);
        let hh = tensor_pointed(&h, &h).unwrap();
        assert_eq!(id.tensor(&id).unwrap(), LagRelation::identity(&hh));
    }
}
