//! The Magnus functor on objects and cobordisms, and the Magnus
//! representation of homology cobordisms.

use crate::cobordism::{CobPresentation, HeegaardData};
use crate::error::{Error, Result};
use crate::free_group::{jacobian, PhiValuation};
use crate::lagrangian::LagRelation;
use crate::linalg::{kernel, rank, solve_many, MatQ};
use crate::ring::RingFrac;
use crate::surface::PointedHermModule;

pub fn mag_object(genus: usize, phi: &PhiValuation) -> Result<PointedHermModule> {
    PointedHermModule::build(genus, phi)
}

/// Kernel of `(-m₋) ⊕ m₊` into the twisted homology of the presentation.
pub fn mag_kernel(c: &CobPresentation) -> Result<LagRelation> {
    let (mm, mp) = c.boundary_matrices();
    let fox = c.h1_presentation();
    let sys = mm.neg().hstack(&mp).hstack(&fox.transpose()).to_q();
    let nb = mm.cols() + mp.cols();
    let n = c.nvars();
    let vecs: Vec<Vec<RingFrac>> = kernel(&sys).vectors().into_iter().map(|v| v[..nb].to_vec()).collect();
    let gens = if vecs.is_empty() { MatQ::zeros(n, nb, 0) } else { MatQ::from_cols(n, nb, &vecs) };
    LagRelation::make(c.source(), c.target(), &gens).map_err(Error::into_certification)
}

fn restrict_handles(phi: &PhiValuation, handles: std::ops::Range<usize>) -> PhiValuation {
    let g = phi.genus();
    let mut vals: Vec<_> = handles.clone().map(|i| phi.value(i).clone()).collect();
    vals.extend(handles.map(|i| phi.value(g + i).clone()));
    PhiValuation::new(phi.nvars(), vals).expect("same variable count")
}

fn unit_vec(n: usize, len: usize, i: usize) -> Vec<RingFrac> {
    (0..len).map(|j| if i == j { RingFrac::one(n) } else { RingFrac::zero(n) }).collect()
}

/// Handlebody from the empty surface to genus `r`: the a-curves bound.
pub fn cup_relation(phi: &PhiValuation) -> Result<LagRelation> {
    let r = phi.genus();
    let n = phi.nvars();
    let gens: Vec<_> = (0..r).map(|i| unit_vec(n, 2 * r, i)).collect();
    LagRelation::make(PointedHermModule::trivial(n), PointedHermModule::build(r, phi)?, &MatQ::from_cols(n, 2 * r, &gens))
}

/// Handlebody from genus `r` to the empty surface: the b-curves bound.
pub fn cap_relation(phi: &PhiValuation) -> Result<LagRelation> {
    let r = phi.genus();
    let n = phi.nvars();
    let gens: Vec<_> = (0..r).map(|i| unit_vec(n, 2 * r, r + i)).collect();
    LagRelation::make(PointedHermModule::build(r, phi)?, PointedHermModule::trivial(n), &MatQ::from_cols(n, 2 * r, &gens))
}

/// Composite of the handlebody and mapping-cylinder relations.
pub fn mag_heegaard(h: &HeegaardData) -> Result<LagRelation> {
    let mid = h.middle_genus();
    let bottom_phi = h.phi_bottom();
    let lower = cup_relation(&restrict_handles(&bottom_phi, 0..h.r_minus()))?
        .tensor(&LagRelation::identity(&PointedHermModule::build(h.g_minus(), &h.phi_minus())?))?;
    let j = jacobian(h.f(), h.phi())?.to_q();
    let middle =
        LagRelation::graph(&j, &PointedHermModule::build(mid, &bottom_phi)?, &PointedHermModule::build(mid, h.phi())?)?;
    let upper = cap_relation(&restrict_handles(h.phi(), 0..h.r_plus()))?
        .tensor(&LagRelation::identity(&PointedHermModule::build(h.g_plus(), &h.phi_plus())?))?;
    upper.compose(&middle.compose(&lower)?)
}

/// `(m₊)⁻¹ ∘ m₋` over the fraction field for a homology cobordism.
pub fn magnus_rep(c: &CobPresentation) -> Result<MatQ> {
    let g = c.g_minus();
    if c.g_plus() != g {
        return Err(Error::NotHomologyCobordism(format!("boundary genera {} and {} differ", g, c.g_plus())));
    }
    let (mm, mp) = c.boundary_matrices();
    let fox_t = c.h1_presentation().transpose().to_q();
    let rf = rank(&fox_t);
    let dim_h = c.ngens() - rf;
    if dim_h != 2 * g {
        return Err(Error::NotHomologyCobordism(format!("rational homology has dimension {}, expected {}", dim_h, 2 * g)));
    }
    let plus = mp.to_q().hstack(&fox_t);
    let minus = mm.to_q().hstack(&fox_t);
    if rank(&plus) != rf + 2 * g || rank(&minus) != rf + 2 * g {
        return Err(Error::NotHomologyCobordism("a boundary inclusion is not a rational isomorphism".into()));
    }
    let x = solve_many(&plus, &mm.to_q())?;
    let r = x.select_rows(&(0..2 * g).collect::<Vec<_>>());
    let (s_minus, s_plus) = (c.source().form_matrix().to_q(), c.target().form_matrix().to_q());
    if r.transpose().mul(&s_plus).mul(&r.involute()) != s_minus {
        return Err(Error::certification("unitarity", "r^T S+ conj(r) != S-"));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_group::{FreeEndo, Word};

    fn w(s: &str, g: usize) -> Word {
        Word::parse_surface(s, g).unwrap()
    }

    fn twist() -> FreeEndo {
        FreeEndo::new(vec![w("a1", 1), w("b1 a1", 1)]).unwrap()
    }

    #[test]
    fn identity_cylinder() {
        let phi = PhiValuation::new(2, vec![vec![1, 0], vec![0, 1]]).unwrap();
        let h = HeegaardData::identity(phi.clone());
        let k = mag_kernel(&h.compile()).unwrap();
        let id = LagRelation::identity(&mag_object(1, &phi).unwrap());
        assert!(k.equal(&id).unwrap());
        assert!(mag_heegaard(&h).unwrap().equal(&id).unwrap());
        assert_eq!(magnus_rep(&h.compile()).unwrap(), MatQ::identity(2, 2));
    }

    #[test]
    fn cup_is_span_of_a() {
        let phi = PhiValuation::new(1, vec![vec![0], vec![1]]).unwrap();
        let h = HeegaardData::new(0, 1, 1, 0, FreeEndo::identity(2), phi.clone()).unwrap();
        let k = mag_kernel(&h.compile()).unwrap();
        assert!(k.equal(&cup_relation(&phi).unwrap()).unwrap());
        assert!(mag_heegaard(&h).unwrap().equal(&k).unwrap());
    }

    #[test]
    fn twist_cylinder_is_jacobian_graph() {
        let phi = PhiValuation::new(1, vec![vec![0], vec![1]]).unwrap();
        let h = HeegaardData::mapping_cylinder(twist(), phi.clone()).unwrap();
        let c = h.compile();
        let j = jacobian(&twist(), &phi).unwrap().to_q();
        let g = LagRelation::graph(&j, &c.source(), &c.target()).unwrap();
        assert!(mag_kernel(&c).unwrap().equal(&g).unwrap());
        assert!(mag_heegaard(&h).unwrap().equal(&g).unwrap());
        assert_eq!(magnus_rep(&c).unwrap(), j);
    }

    #[test]
    fn closed_off_handle() {
        let phi = PhiValuation::trivial(0, 2);
        let cup = HeegaardData::new(0, 1, 1, 0, FreeEndo::identity(2), phi.clone()).unwrap().compile();
        let cap = HeegaardData::new(1, 0, 0, 1, FreeEndo::identity(2), phi).unwrap().compile();
        let closed = CobPresentation::amalgamate(&cup, &cap).unwrap();
        let k = mag_kernel(&closed).unwrap();
        assert_eq!(k.space().dim(), 0);
        let comp = mag_kernel(&cap).unwrap().compose(&mag_kernel(&cup).unwrap()).unwrap();
        assert!(comp.equal(&k).unwrap());
    }
}
