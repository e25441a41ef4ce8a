//! Cobordisms given by Heegaard data and by finite presentations.

mod dsl;

pub use dsl::parse;

use crate::error::{Error, Result};
use crate::free_group::{boundary_word, fox_vector, surface_name, FreeEndo, PhiValuation, Word};
use crate::linalg::MatR;
use crate::surface::PointedHermModule;

/// Lower handlebody, mapping cylinder and upper handlebody glued along a
/// middle surface of genus `g_minus + r_minus = g_plus + r_plus`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HeegaardData {
    g_minus: usize,
    g_plus: usize,
    r_minus: usize,
    r_plus: usize,
    f: FreeEndo,
    phi: PhiValuation,
}

impl HeegaardData {
    pub fn new(g_minus: usize, g_plus: usize, r_minus: usize, r_plus: usize, f: FreeEndo, phi: PhiValuation) -> Result<Self> {
        if g_minus + r_minus != g_plus + r_plus {
            return Err(Error::invariant(
                "genus-balance",
                format!("g_minus + r_minus = {} but g_plus + r_plus = {}", g_minus + r_minus, g_plus + r_plus),
            ));
        }
        let mid = g_minus + r_minus;
        if f.rank() != 2 * mid {
            return Err(Error::RankMismatch { left: f.rank(), right: 2 * mid });
        }
        if phi.rank() != 2 * mid {
            return Err(Error::RankMismatch { left: phi.rank(), right: 2 * mid });
        }
        if !f.check_boundary() {
            return Err(Error::invariant("boundary-word", "f does not fix the boundary word"));
        }
        for i in 0..r_minus {
            if !phi.phi_of_word(f.image(i)).is_one() {
                return Err(Error::invariant(
                    "phi-kills-relators",
                    format!("phi(f({})) != 1", surface_name(i, mid)),
                ));
            }
        }
        for j in 0..r_plus {
            if !phi.monomial(mid + j).is_one() {
                return Err(Error::invariant("phi-kills-relators", format!("phi(b{}) != 1", j + 1)));
            }
        }
        Ok(HeegaardData { g_minus, g_plus, r_minus, r_plus, f, phi })
    }

    /// Mapping cylinder of `f` with the given valuation on its top.
    pub fn mapping_cylinder(f: FreeEndo, phi: PhiValuation) -> Result<Self> {
        let g = f.rank() / 2;
        Self::new(g, g, 0, 0, f, phi)
    }

    pub fn identity(phi: PhiValuation) -> Self {
        let g = phi.genus();
        Self::new(g, g, 0, 0, FreeEndo::identity(2 * g), phi).expect("identity cylinder is valid")
    }

    pub fn g_minus(&self) -> usize {
        self.g_minus
    }

    pub fn g_plus(&self) -> usize {
        self.g_plus
    }

    pub fn r_minus(&self) -> usize {
        self.r_minus
    }

    pub fn r_plus(&self) -> usize {
        self.r_plus
    }

    /// Genus of the middle surface.
    pub fn middle_genus(&self) -> usize {
        self.g_minus + self.r_minus
    }

    pub fn f(&self) -> &FreeEndo {
        &self.f
    }

    pub fn phi(&self) -> &PhiValuation {
        &self.phi
    }

    pub fn nvars(&self) -> usize {
        self.phi.nvars()
    }

    /// Middle-surface index of the `i`-th basis curve of a boundary surface
    /// of genus `g` whose handles start at handle `shift`.
    fn shifted(&self, i: usize, g: usize, shift: usize) -> usize {
        let mid = self.middle_genus();
        if i < g {
            shift + i
        } else {
            mid + shift + i - g
        }
    }

    /// Valuation on the bottom of the mapping cylinder.
    pub fn phi_bottom(&self) -> PhiValuation {
        self.phi.pullback(&self.f).expect("ranks agree")
    }

    pub fn phi_minus(&self) -> PhiValuation {
        let bottom = self.phi_bottom();
        let vals = (0..2 * self.g_minus).map(|i| bottom.value(self.shifted(i, self.g_minus, self.r_minus)).clone()).collect();
        PhiValuation::new(self.nvars(), vals).expect("same variable count")
    }

    pub fn phi_plus(&self) -> PhiValuation {
        let vals =
            (0..2 * self.g_plus).map(|i| self.phi.value(self.shifted(i, self.g_plus, self.r_plus)).clone()).collect();
        PhiValuation::new(self.nvars(), vals).expect("same variable count")
    }

    /// Presentation of the fundamental group with boundary word maps.
    pub fn compile(&self) -> CobPresentation {
        let mid = self.middle_genus();
        let mut relators: Vec<Word> = (0..self.r_minus).map(|i| self.f.image(i).clone()).collect();
        relators.extend((0..self.r_plus).map(|j| Word::gen(mid + j)));
        let m_minus = (0..2 * self.g_minus).map(|i| self.f.image(self.shifted(i, self.g_minus, self.r_minus)).clone()).collect();
        let m_plus = (0..2 * self.g_plus).map(|i| Word::gen(self.shifted(i, self.g_plus, self.r_plus))).collect();
        CobPresentation {
            ngens: 2 * mid,
            relators,
            phi: self.phi.clone(),
            phi_minus: self.phi_minus(),
            phi_plus: self.phi_plus(),
            m_minus,
            m_plus,
        }
    }

    /// DSL text that parses back to this value.
    pub fn to_dsl(&self) -> String {
        let mid = self.middle_genus();
        let mut s = format!(
            "cobordism {{ g_minus={} g_plus={} r_minus={} r_plus={} G_rank={}\n",
            self.g_minus,
            self.g_plus,
            self.r_minus,
            self.r_plus,
            self.nvars()
        );
        s.push_str(&format!("  phi {{ {} }}\n", self.phi.surface_string()));
        let f: Vec<String> =
            (0..2 * mid).map(|i| format!("{} -> {}", surface_name(i, mid), self.f.image(i).surface_string(mid))).collect();
        s.push_str(&format!("  f {{ {} }} }}\n", f.join(" ; ")));
        s
    }
}

/// Finite presentation of `π₁(M)` with the boundary word maps and a
/// valuation on the generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CobPresentation {
    ngens: usize,
    relators: Vec<Word>,
    phi: PhiValuation,
    phi_minus: PhiValuation,
    phi_plus: PhiValuation,
    m_minus: Vec<Word>,
    m_plus: Vec<Word>,
}

impl CobPresentation {
    pub fn new(
        ngens: usize,
        relators: Vec<Word>,
        phi: PhiValuation,
        phi_minus: PhiValuation,
        phi_plus: PhiValuation,
        m_minus: Vec<Word>,
        m_plus: Vec<Word>,
    ) -> Result<Self> {
        if phi.rank() != ngens {
            return Err(Error::RankMismatch { left: phi.rank(), right: ngens });
        }
        if phi_minus.nvars() != phi.nvars() || phi_plus.nvars() != phi.nvars() {
            return Err(Error::VarCount { left: phi_minus.nvars(), right: phi.nvars() });
        }
        if m_minus.len() != phi_minus.rank() || m_plus.len() != phi_plus.rank() {
            return Err(Error::Dimension("boundary maps must list one word per boundary generator".into()));
        }
        for w in relators.iter().chain(&m_minus).chain(&m_plus) {
            if let Some(m) = w.max_gen() {
                if m >= ngens {
                    return Err(Error::GeneratorRange { index: m, rank: ngens });
                }
            }
        }
        for (k, r) in relators.iter().enumerate() {
            if !phi.phi_of_word(r).is_one() {
                return Err(Error::invariant("phi-consistency", format!("phi(relator {}) != 1", k + 1)));
            }
        }
        for (side, m, bphi) in [("minus", &m_minus, &phi_minus), ("plus", &m_plus, &phi_plus)] {
            for (i, w) in m.iter().enumerate() {
                if phi.exponent_of(w) != *bphi.value(i) {
                    return Err(Error::invariant(
                        "phi-consistency",
                        format!("phi(m_{}({})) disagrees with the boundary valuation", side, surface_name(i, bphi.genus())),
                    ));
                }
            }
        }
        Ok(CobPresentation { ngens, relators, phi, phi_minus, phi_plus, m_minus, m_plus })
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn phi(&self) -> &PhiValuation {
        &self.phi
    }

    pub fn phi_minus(&self) -> &PhiValuation {
        &self.phi_minus
    }

    pub fn phi_plus(&self) -> &PhiValuation {
        &self.phi_plus
    }

    pub fn m_minus(&self) -> &[Word] {
        &self.m_minus
    }

    pub fn m_plus(&self) -> &[Word] {
        &self.m_plus
    }

    pub fn g_minus(&self) -> usize {
        self.phi_minus.genus()
    }

    pub fn g_plus(&self) -> usize {
        self.phi_plus.genus()
    }

    pub fn nvars(&self) -> usize {
        self.phi.nvars()
    }

    /// Generators minus relators.
    pub fn deficiency(&self) -> isize {
        self.ngens as isize - self.relators.len() as isize
    }

    pub fn source(&self) -> PointedHermModule {
        PointedHermModule::build(self.g_minus(), &self.phi_minus).expect("genus matches valuation")
    }

    pub fn target(&self) -> PointedHermModule {
        PointedHermModule::build(self.g_plus(), &self.phi_plus).expect("genus matches valuation")
    }

    /// Fox matrix: one row per relator, one column per generator.
    pub fn h1_presentation(&self) -> MatR {
        let mut m = MatR::zeros(self.nvars(), self.relators.len(), self.ngens);
        for (r, w) in self.relators.iter().enumerate() {
            for (i, d) in fox_vector(w, &self.phi).into_iter().enumerate() {
                m[(r, i)] = d;
            }
        }
        m
    }

    /// Columns are the Fox vectors of the boundary images.
    pub fn boundary_matrices(&self) -> (MatR, MatR) {
        let cols = |ws: &[Word]| -> MatR {
            let v: Vec<Vec<_>> = ws.iter().map(|w| fox_vector(w, &self.phi)).collect();
            MatR::from_cols(self.nvars(), self.ngens, &v)
        };
        (cols(&self.m_minus), cols(&self.m_plus))
    }

    /// Glues `top` onto the upper boundary of `bottom`.
    pub fn amalgamate(bottom: &CobPresentation, top: &CobPresentation) -> Result<Self> {
        if bottom.phi_plus != top.phi_minus {
            return Err(Error::ObjectMismatch(format!(
                "upper boundary ({}) does not match lower boundary ({})",
                bottom.phi_plus.surface_string(),
                top.phi_minus.surface_string()
            )));
        }
        let kb = bottom.ngens;
        let ngens = kb + top.ngens;
        let mut relators = bottom.relators.clone();
        relators.extend(top.relators.iter().map(|w| w.shifted(kb)));
        for (x, y) in bottom.m_plus.iter().zip(&top.m_minus) {
            let r = x.mul(&y.shifted(kb).inverse());
            if !r.is_empty() {
                relators.push(r);
            }
        }
        CobPresentation::new(
            ngens,
            relators,
            bottom.phi.concat(&top.phi)?,
            bottom.phi_minus.clone(),
            top.phi_plus.clone(),
            bottom.m_minus.clone(),
            top.m_plus.iter().map(|w| w.shifted(kb)).collect(),
        )
    }

    /// Boundary connected sum, boundary maps listed in surface order.
    pub fn tensor_cob(a: &CobPresentation, b: &CobPresentation) -> Result<Self> {
        if a.nvars() != b.nvars() {
            return Err(Error::RankMismatch { left: a.nvars(), right: b.nvars() });
        }
        let ka = a.ngens;
        let mut relators = a.relators.clone();
        relators.extend(b.relators.iter().map(|w| w.shifted(ka)));
        let merge = |x: &[Word], y: &[Word]| -> Vec<Word> {
            let (g, h) = (x.len() / 2, y.len() / 2);
            let mut out: Vec<Word> = x[..g].to_vec();
            out.extend(y[..h].iter().map(|w| w.shifted(ka)));
            out.extend_from_slice(&x[g..]);
            out.extend(y[h..].iter().map(|w| w.shifted(ka)));
            out
        };
        CobPresentation::new(
            ka + b.ngens,
            relators,
            a.phi.concat(&b.phi)?,
            a.phi_minus.surface_sum(&b.phi_minus)?,
            a.phi_plus.surface_sum(&b.phi_plus)?,
            merge(&a.m_minus, &b.m_minus),
            merge(&a.m_plus, &b.m_plus),
        )
    }

    /// True when the boundary words map to the images of the boundary word
    /// after free reduction, which holds for compiled Heegaard data.
    pub fn boundary_words_agree(&self) -> bool {
        let apply = |m: &[Word], g: usize| -> Word {
            let nu = boundary_word(g);
            nu.letters().iter().fold(Word::identity(), |acc, l| {
                let w = &m[l.gen];
                acc.mul(&if l.inv { w.inverse() } else { w.clone() })
            })
        };
        apply(&self.m_minus, self.g_minus()) == apply(&self.m_plus, self.g_plus())
    }
}
