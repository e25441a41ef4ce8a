//! Alexander function and functor, the operators `Mag_W`, and the Plücker
//! form of trivial-coefficient relations.

mod exterior;

pub use exterior::{indices, merge_sign, subsets, GradedMap, MultiVector};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::cobordism::CobPresentation;
use crate::error::{Error, Result};
use crate::lagrangian::LagRelation;
use crate::linalg::integer::{complete_basis, saturate};
use crate::linalg::{det, det_field, ord_of_presentation, rank, solve_many, MatQ, MatR};
use crate::ring::{LaurentPoly, RingFrac};

/// `det` of the Fox rows stacked over the rows `u`.
pub fn alexander_function(c: &CobPresentation, u: &[Vec<LaurentPoly>]) -> Result<LaurentPoly> {
    if c.deficiency() != u.len() as isize {
        return Err(Error::Dimension(format!("deficiency {} but {} vectors given", c.deficiency(), u.len())));
    }
    if u.iter().any(|v| v.len() != c.ngens()) {
        return Err(Error::Dimension(format!("vectors must have length {}", c.ngens())));
    }
    det(&with_rows(c, u))
}

/// Fox rows stacked over the rows `u`.
fn with_rows(c: &CobPresentation, u: &[Vec<LaurentPoly>]) -> MatR {
    let mut rows = MatR::zeros(c.nvars(), u.len(), c.ngens());
    for (i, v) in u.iter().enumerate() {
        for (j, x) in v.iter().enumerate() {
            rows[(i, j)] = x.clone();
        }
    }
    c.h1_presentation().vstack(&rows)
}

fn columns(m: &MatR, mask: u64) -> Vec<Vec<LaurentPoly>> {
    indices(mask).into_iter().map(|i| m.col(i)).collect()
}

/// Alexander functor on a cobordism; one global unit is left undetermined.
pub fn alex_morphism(c: &CobPresentation) -> Result<GradedMap> {
    let (mm, mp) = c.boundary_matrices();
    let n = c.nvars();
    let shift = c.g_plus() as isize - c.g_minus() as isize;
    GradedMap::from_pairing(n, mm.cols(), mp.cols(), shift, |b, d| {
        let mut u = columns(&mm, b);
        u.extend(columns(&mp, d));
        Ok(RingFrac::from_poly(alexander_function(c, &u)?))
    })
}

/// `𝔐(w) = (-m₋ | m₊) w` for each column of `w`.
fn boundary_images(c: &CobPresentation, w: &MatR) -> Result<MatR> {
    let (mm, mp) = c.boundary_matrices();
    let both = mm.neg().hstack(&mp);
    if w.rows() != both.cols() {
        return Err(Error::Dimension(format!("transversal vectors must have length {}", both.cols())));
    }
    Ok(both.mul(w))
}

/// `det` of the Fox rows stacked over `𝔐(w_i)`, before normalization.
pub fn ord_quotient_raw(c: &CobPresentation, w: &MatR) -> Result<LaurentPoly> {
    let imgs = boundary_images(c, w)?.transpose();
    let fox = c.h1_presentation();
    let m = fox.vstack(&imgs);
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    det(&m)
}

/// `ord(H/𝔐(W))`, unit-normalized.
pub fn ord_quotient(c: &CobPresentation, w: &MatR) -> Result<LaurentPoly> {
    Ok(ord_quotient_raw(c, w)?.normal_form())
}

/// Coordinates of the projections of the columns of `z` in the basis given
/// by the projections of the transversal `w`.
fn quotient_coords(rel: &LagRelation, w: &MatQ, z: &MatQ) -> Result<MatQ> {
    let g = rel.space().dim();
    if w.rows() != rel.ambient() || w.cols() != g {
        return Err(Error::NotTransversal(format!(
            "expected {} vectors of length {}, got {}x{}",
            g,
            rel.ambient(),
            w.rows(),
            w.cols()
        )));
    }
    let sys = w.hstack(rel.space().basis());
    if rank(&sys) != rel.ambient() {
        return Err(Error::NotTransversal("projections are rationally dependent".into()));
    }
    Ok(solve_many(&sys, z)?.select_rows(&(0..g).collect::<Vec<_>>()))
}

/// Images of the standard basis: `σ(e_i) = (-e_i, 0)` on the source side,
/// `(0, e_j)` on the target side.
fn signed_basis(rel: &LagRelation) -> MatQ {
    let n = rel.nvars();
    let r = rel.source().rank();
    let mut m = MatQ::identity(n, rel.ambient());
    for i in 0..r {
        m[(i, i)] = -RingFrac::one(n);
    }
    m
}

/// The operator `Mag_W` of a relation and a transversal.
pub fn mag_w_operator(rel: &LagRelation, w: &MatQ) -> Result<GradedMap> {
    let coords = quotient_coords(rel, w, &signed_basis(rel))?;
    let n = rel.nvars();
    let r = rel.source().rank();
    let g = coords.rows();
    let shift = rel.target().genus() as isize - rel.source().genus() as isize;
    GradedMap::from_pairing(n, r, rel.target().rank(), shift, |b, d| {
        let mut cols: Vec<Vec<RingFrac>> = indices(b).into_iter().map(|i| coords.col(i)).collect();
        cols.extend(indices(d).into_iter().map(|j| coords.col(r + j)));
        det_field(&MatQ::from_cols(n, g, &cols))
    })
}

/// `d_{W',W}`: `Mag_{W'} = d · Mag_W`.
pub fn transversal_ratio(rel: &LagRelation, w: &MatQ, w2: &MatQ) -> Result<RingFrac> {
    let c = quotient_coords(rel, w, w2)?;
    det_field(&c)?.inv()
}

/// Greedy transversal from standard basis vectors, in index order.
pub fn find_transversal(rel: &LagRelation) -> MatR {
    let n = rel.nvars();
    let amb = rel.ambient();
    let mut chosen: Vec<usize> = Vec::new();
    let mut cur = rel.space().basis().clone();
    for i in 0..amb {
        if chosen.len() == rel.space().dim() {
            break;
        }
        let e = unit_col(n, amb, i);
        let next = cur.hstack(&e);
        if rank(&next) == next.cols() {
            cur = next;
            chosen.push(i);
        }
    }
    let mut w = MatR::zeros(n, amb, chosen.len());
    for (k, &i) in chosen.iter().enumerate() {
        w[(i, k)] = LaurentPoly::one(n);
    }
    w
}

fn unit_col(n: usize, len: usize, i: usize) -> MatQ {
    let mut m = MatQ::zeros(n, len, 1);
    m[(i, 0)] = RingFrac::one(n);
    m
}

/// Standard basis vectors of one boundary side as a transversal candidate.
pub fn side_transversal(rel: &LagRelation, target_side: bool) -> MatR {
    let n = rel.nvars();
    let (off, len) = if target_side { (rel.source().rank(), rel.target().rank()) } else { (0, rel.source().rank()) };
    let mut w = MatR::zeros(n, rel.ambient(), len);
    for k in 0..len {
        w[(off + k, k)] = LaurentPoly::one(n);
    }
    w
}

/// The unit `u` with `a = u · b` entrywise, when it is `±` a monomial.
pub fn unit_ratio(a: &[RingFrac], b: &[RingFrac]) -> std::result::Result<LaurentPoly, String> {
    if a.len() != b.len() {
        return Err(format!("lengths {} and {} differ", a.len(), b.len()));
    }
    let nvars = a.first().or(b.first()).map(|x| x.nvars()).unwrap_or(0);
    let mut unit: Option<RingFrac> = None;
    for (i, (x, y)) in a.iter().zip(b).enumerate() {
        match (&unit, x.is_zero(), y.is_zero()) {
            (_, true, true) => continue,
            (_, false, true) | (_, true, false) => {
                return Err(format!("entry {}: {} vs {}", i, x, y));
            }
            (None, false, false) => {
                let u = x / y;
                if !u.as_poly().is_some_and(|p| p.is_unit()) {
                    return Err(format!("entry {}: ratio {} is not a unit", i, u));
                }
                unit = Some(u);
            }
            (Some(u), false, false) => {
                if x != &(u * y) {
                    return Err(format!("entry {}: {} != ({}) * ({})", i, x, u, y));
                }
            }
        }
    }
    Ok(unit.and_then(|u| u.as_poly().cloned()).unwrap_or_else(|| LaurentPoly::one(nvars)))
}

/// Divides a graded map by the unit that normalizes its first nonzero
/// entry, returning the normalized map and that unit.
pub fn normalize_map(m: &GradedMap) -> (GradedMap, LaurentPoly) {
    let n = m.nvars();
    let Some(x) = m.entries().into_iter().find(|x| !x.is_zero()) else {
        return (m.clone(), LaurentPoly::one(n));
    };
    let (un, _) = x.num().unit_normalize().expect("nonzero");
    let (ud, _) = x.den().unit_normalize().expect("nonzero");
    let u = &un * &ud.unit_inverse().expect("unit");
    let inv = RingFrac::from_poly(u.unit_inverse().expect("unit"));
    (m.scale(&inv), u)
}

/// Both sides of the factorization `Alex = ord(H/𝔐(W)) · Mag_W`.
#[derive(Clone, Debug)]
pub struct FactorizationReport {
    pub alex: GradedMap,
    pub ord: LaurentPoly,
    pub mag_w: GradedMap,
    pub unit: Option<LaurentPoly>,
    pub discrepancy: Option<String>,
}

impl FactorizationReport {
    pub fn passed(&self) -> bool {
        self.unit.is_some()
    }
}

/// Computes both sides independently and matches them up to one unit.
pub fn factorization_check(c: &CobPresentation, w: &MatR) -> Result<FactorizationReport> {
    let rel = crate::magnus::mag_kernel(c)?;
    factorization_with(c, &rel, w)
}

pub fn factorization_with(c: &CobPresentation, rel: &LagRelation, w: &MatR) -> Result<FactorizationReport> {
    let alex = alex_morphism(c)?;
    let mag_w = mag_w_operator(rel, &w.to_q())?;
    let ord = ord_quotient_raw(c, w)?;
    let rhs = mag_w.scale(&RingFrac::from_poly(ord.clone()));
    let (unit, discrepancy) = match unit_ratio(&alex.entries(), &rhs.entries()) {
        Ok(u) => (Some(u), None),
        Err(e) => (None, Some(e)),
    };
    Ok(FactorizationReport { alex, ord, mag_w, unit, discrepancy })
}

/// Rational dimension of `H₁` of the presentation.
pub fn h1_rational_dim(c: &CobPresentation) -> usize {
    c.ngens() - rank(&c.h1_presentation().to_q())
}

/// True when the Alexander function vanishes on every standard basis
/// multivector.
pub fn alexander_vanishes(c: &CobPresentation) -> Result<bool> {
    let k = c.ngens();
    let g = c.deficiency();
    if g < 0 {
        return Ok(true);
    }
    let n = c.nvars();
    for s in subsets(k, g as usize) {
        let u: Vec<Vec<LaurentPoly>> = indices(s)
            .into_iter()
            .map(|i| (0..k).map(|j| if i == j { LaurentPoly::one(n) } else { LaurentPoly::zero(n) }).collect())
            .collect();
        if !alexander_function(c, &u)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `ord(H/⟨w⟩) · det(coordinates of y in the basis w of H_Q)`, which
/// agrees with the Alexander function on `y` up to a unit.
pub fn alexander_via_basis(c: &CobPresentation, w: &[Vec<LaurentPoly>], y: &[Vec<LaurentPoly>]) -> Result<RingFrac> {
    let n = c.nvars();
    let k = c.ngens();
    if w.len() as isize != c.deficiency() || w.iter().chain(y).any(|v| v.len() != k) {
        return Err(Error::Dimension(format!("expected {} vectors of length {}", c.deficiency(), k)));
    }
    let ord = ord_of_presentation(&with_rows(c, w));
    if ord.is_zero() {
        return Err(Error::Dimension("w does not project to a basis".into()));
    }
    let wq = MatQ::from_cols(n, k, &w.iter().map(|v| v.iter().map(|x| RingFrac::from_poly(x.clone())).collect()).collect::<Vec<_>>());
    let yq = MatQ::from_cols(n, k, &y.iter().map(|v| v.iter().map(|x| RingFrac::from_poly(x.clone())).collect()).collect::<Vec<_>>());
    let fox_t = c.h1_presentation().transpose().to_q();
    let sys = if fox_t.cols() == 0 { wq } else { wq.hstack(&fox_t) };
    let x = solve_many(&sys, &yq)?.select_rows(&(0..w.len()).collect::<Vec<_>>());
    Ok(&RingFrac::from_poly(ord) * &det_field(&x)?)
}

/// Plücker data of a relation over `Z`.
#[derive(Clone, Debug)]
pub struct Pluecker {
    /// Basis of the relation lattice.
    pub basis: Vec<Vec<BigInt>>,
    /// Wedge of the basis.
    pub wedge: MultiVector<RingFrac>,
    /// Complement of the lattice, a transversal.
    pub section: MatR,
    /// The graded operator read off the wedge.
    pub operator: GradedMap,
}

pub fn pluecker(rel: &LagRelation) -> Result<Pluecker> {
    if rel.nvars() != 0 {
        return Err(Error::Unsupported("the Plücker form needs trivial coefficients".into()));
    }
    let amb = rel.ambient();
    let ints: Vec<Vec<BigInt>> = rel
        .integral_basis()
        .iter()
        .map(|v| v.iter().map(|x| x.as_constant().expect("constant entries")).collect())
        .collect();
    let basis = saturate(&ints, amb);
    let to_q = |v: &Vec<BigInt>| -> Vec<RingFrac> { v.iter().map(|x| RingFrac::from_int(0, x.clone())).collect() };
    let wedge = MultiVector::wedge_all(0, amb, &basis.iter().map(to_q).collect::<Vec<_>>())?;
    let extra = complete_basis(&basis, amb).ok_or_else(|| Error::certification("saturation", "lattice is not saturated"))?;
    let mut section = MatR::zeros(0, amb, extra.len());
    for (k, v) in extra.iter().enumerate() {
        for (i, x) in v.iter().enumerate() {
            section[(i, k)] = LaurentPoly::constant(0, x.clone());
        }
    }
    let r = rel.source().rank();
    let shift = rel.target().genus() as isize - rel.source().genus() as isize;
    let operator = GradedMap::from_pairing(0, r, rel.target().rank(), shift, |b, d| {
        let mut acc = wedge.clone();
        for i in indices(b) {
            acc = acc.wedge(&neg_basis(amb, i))?;
        }
        for j in indices(d) {
            acc = acc.wedge(&MultiVector::basis(0, amb, 1 << (r + j)))?;
        }
        Ok(acc.top_coeff())
    })?;
    Ok(Pluecker { basis, wedge, section, operator })
}

fn neg_basis(amb: usize, i: usize) -> MultiVector<RingFrac> {
    let mut v = vec![RingFrac::zero(0); amb];
    v[i] = -RingFrac::one(0);
    MultiVector::from_vector(0, &v)
}

/// True when every entry of `v` is `±1` or `0`.
pub fn is_sign(u: &LaurentPoly) -> bool {
    u.as_constant().is_some_and(|c| c.abs().is_one() && !c.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_group::{FreeEndo, PhiValuation, Word};
    use crate::gen;
    use crate::magnus::{mag_kernel, magnus_rep};
    use crate::HeegaardData;

    fn s1_s2() -> CobPresentation {
        let w = |s: &str| Word::parse_surface(s, 1).unwrap();
        let ta = FreeEndo::new(vec![w("a1"), w("b1 a1")]).unwrap();
        let tbi = FreeEndo::new(vec![w("a1 b1^-1"), w("b1")]).unwrap();
        let f = ta.compose(&tbi).unwrap().compose(&ta).unwrap();
        let phi = PhiValuation::new(1, vec![vec![1], vec![0]]).unwrap();
        HeegaardData::new(0, 0, 1, 1, f, phi).unwrap().compile()
    }

    #[test]
    fn degenerate_closed_manifold() {
        let c = s1_s2();
        assert!(alexander_vanishes(&c).unwrap());
        assert_ne!(h1_rational_dim(&c), c.deficiency() as usize);
    }

    #[test]
    fn factorization_on_random_data() {
        let mut r = gen::rng(21);
        for _ in 0..15 {
            let c = gen::random_heegaard(&mut r, 2, 1, 10).compile();
            let rel = match mag_kernel(&c) {
                Ok(x) => x,
                Err(_) => continue,
            };
            let w = find_transversal(&rel);
            let rep = factorization_with(&c, &rel, &w).unwrap();
            assert!(rep.passed(), "{:?}", rep.discrepancy);
        }
    }

    #[test]
    fn cylinder_rep_matches_side_transversals() {
        let mut r = gen::rng(4);
        let h = gen::heegaard_with(&mut r, 2, 0, 0, 1, 10);
        let c = h.compile();
        let rel = mag_kernel(&c).unwrap();
        let rep = magnus_rep(&c).unwrap();
        let wp = side_transversal(&rel, true);
        let m = mag_w_operator(&rel, &wp.to_q()).unwrap();
        assert_eq!(m, GradedMap::exterior_power(&rep).unwrap());
    }

    #[test]
    fn pluecker_handle() {
        let phi = PhiValuation::trivial(0, 2);
        let c = HeegaardData::new(0, 1, 1, 0, FreeEndo::identity(2), phi).unwrap().compile();
        let rel = mag_kernel(&c).unwrap();
        let p = pluecker(&rel).unwrap();
        let alex = alex_morphism(&c).unwrap();
        let ord = ord_quotient_raw(&c, &p.section).unwrap();
        let u = unit_ratio(&alex.entries(), &p.operator.scale(&RingFrac::from_poly(ord)).entries()).unwrap();
        assert!(is_sign(&u));
    }
}
