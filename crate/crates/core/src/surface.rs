//! Twisted homology of a one-boundary surface with its skew-Hermitian form.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::free_group::{boundary_word, fox_vector, PhiValuation};
use crate::linalg::{det, MatR};
use crate::ring::{exact_div, LaurentPoly, RingFrac};

/// Free module of rank `2g` with basis `a1..ag, b1..bg`, the form matrix `S`,
/// the boundary functional and the boundary class `nu` (the distinguished
/// point is `nu / 2`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointedHermModule {
    genus: usize,
    phi: PhiValuation,
    s: MatR,
    del: Vec<LaurentPoly>,
    nu: Vec<LaurentPoly>,
}

impl PointedHermModule {
    /// The module of `(F_g, φ)` with the form matrix of the standard basis.
    pub fn build(genus: usize, phi: &PhiValuation) -> Result<Self> {
        if phi.rank() != 2 * genus {
            return Err(Error::RankMismatch { left: phi.rank(), right: 2 * genus });
        }
        let n = phi.nvars();
        let g = genus;
        let one = LaurentPoly::one(n);
        let val: Vec<LaurentPoly> = (0..2 * g).map(|i| phi.monomial(i)).collect();
        let del: Vec<LaurentPoly> = val.iter().map(|v| v - &one).collect();
        let handle = |i: usize| i % g;
        let mut s = MatR::zeros(n, 2 * g, 2 * g);
        for x in 0..2 * g {
            for y in 0..2 * g {
                let (hx, hy) = (handle(x), handle(y));
                s[(x, y)] = if hx < hy {
                    -(&del[x] * &del[y].involute())
                } else if hx > hy {
                    &del[x] * &del[y].involute()
                } else {
                    let (a, b) = (&val[hx], &val[g + hx]);
                    let q = &(&(a + &one) * &(&b.involute() + &one)) - &LaurentPoly::constant(n, 2);
                    match (x < g, y < g) {
                        (true, true) => &a.involute() - a,
                        (false, false) => b - &b.involute(),
                        (true, false) => q,
                        (false, true) => -q.involute(),
                    }
                };
            }
        }
        // nu is the Fox vector of the inverse boundary word
        let nu = fox_vector(&boundary_word(g).inverse(), phi);
        Ok(PointedHermModule { genus, phi: phi.clone(), s, del, nu })
    }

    /// The unit object: genus zero.
    pub fn trivial(nvars: usize) -> Self {
        PointedHermModule {
            genus: 0,
            phi: PhiValuation::trivial(nvars, 0),
            s: MatR::zeros(nvars, 0, 0),
            del: Vec::new(),
            nu: Vec::new(),
        }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn rank(&self) -> usize {
        self.s.rows()
    }

    pub fn nvars(&self) -> usize {
        self.phi.nvars()
    }

    pub fn phi(&self) -> &PhiValuation {
        &self.phi
    }

    pub fn form_matrix(&self) -> &MatR {
        &self.s
    }

    pub fn del(&self) -> &[LaurentPoly] {
        &self.del
    }

    pub fn nu(&self) -> &[LaurentPoly] {
        &self.nu
    }

    pub fn nu_q(&self) -> Vec<RingFrac> {
        self.nu.iter().map(|x| RingFrac::from_poly(x.clone())).collect()
    }

    /// `x^T S conj(y)` over the fraction field.
    pub fn form_eval(&self, x: &[RingFrac], y: &[RingFrac]) -> Result<RingFrac> {
        let r = self.rank();
        if x.len() != r || y.len() != r {
            return Err(Error::Dimension(format!("vectors must have length {}", r)));
        }
        let n = self.nvars();
        let mut acc = RingFrac::zero(n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                let sij = &self.s[(i, j)];
                if sij.is_zero() || yj.is_zero() {
                    continue;
                }
                acc = &acc + &(&xi.mul_poly(sij) * &yj.involute());
            }
        }
        Ok(acc)
    }

    /// Same pairing on lattice vectors.
    pub fn form_eval_r(&self, x: &[LaurentPoly], y: &[LaurentPoly]) -> LaurentPoly {
        let n = self.nvars();
        let mut acc = LaurentPoly::zero(n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || self.s[(i, j)].is_zero() {
                    continue;
                }
                acc = &acc + &(&(xi * &self.s[(i, j)]) * &yj.involute());
            }
        }
        acc
    }

    /// `ρ(e_i, ν/2)` for every basis vector; integral for these modules.
    pub fn pair_with_point(&self) -> Vec<LaurentPoly> {
        let nu_bar: Vec<LaurentPoly> = self.nu.iter().map(|x| x.involute()).collect();
        let two = LaurentPoly::constant(self.nvars(), 2);
        self.s
            .mul_vec(&nu_bar)
            .iter()
            .map(|v| exact_div(v, &two).expect("form against the boundary class is even"))
            .collect()
    }

    /// `ρ(ν/2, e_j)` for every basis vector.
    pub fn point_with(&self) -> Vec<LaurentPoly> {
        self.pair_with_point().iter().map(|x| -x.involute()).collect()
    }

    /// Checks every invariant of the type and names the first failure.
    pub fn certify(&self) -> Result<()> {
        let n = self.nvars();
        let r = self.rank();
        if self.s != self.s.conj_transpose().neg() {
            return Err(Error::certification("skew-hermitian", "S != -conj(S)^T"));
        }
        let d = det(&self.s)?;
        let four_g = LaurentPoly::constant(n, BigInt::from(4).pow(self.genus as u32));
        if d != four_g {
            return Err(Error::certification("det-4g", format!("det S = {}", d)));
        }
        let pw = self.pair_with_point();
        for i in 0..r {
            if pw[i] != self.del[i] {
                return Err(Error::certification(
                    "boundary-identity",
                    format!("<e{}, nu> = {} but 2 del = {}", i + 1, &pw[i] + &pw[i], &self.del[i] + &self.del[i]),
                ));
            }
        }
        let dnu = self.nu.iter().zip(&self.del).fold(LaurentPoly::zero(n), |acc, (a, b)| &acc + &(a * b));
        if !dnu.is_zero() {
            return Err(Error::certification("del-nu", format!("del(nu) = {}", dnu)));
        }
        if !self.form_eval_r(&self.nu, &self.nu).is_zero() {
            return Err(Error::certification("point-isotropic", "<nu, nu> != 0"));
        }
        Ok(())
    }
}

/// Position in surface order of each basis vector of `F_g ⊕ F_h` listed as
/// `a(F_g), b(F_g), a(F_h), b(F_h)`.
pub fn surface_permutation(g: usize, h: usize) -> Vec<usize> {
    let mut p = Vec::with_capacity(2 * (g + h));
    p.extend(0..g);
    p.extend(g + h..2 * g + h);
    p.extend(g..g + h);
    p.extend(2 * g + h..2 * (g + h));
    p
}

fn permute_square(m: &MatR, p: &[usize]) -> MatR {
    let mut out = MatR::zeros(m.nvars(), m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out[(p[i], p[j])] = m[(i, j)].clone();
        }
    }
    out
}

fn permute_vec<T: Clone>(v: &[T], p: &[usize]) -> Vec<T> {
    let mut out = v.to_vec();
    for (i, x) in v.iter().enumerate() {
        out[p[i]] = x.clone();
    }
    out
}

/// Form of `(H ⊕ H', ρ ₛ⊕ₛ' ρ')` in the concatenated basis, with the sums of
/// boundary data and points. The result is not in surface order.
pub fn pointed_sum(h: &PointedHermModule, k: &PointedHermModule) -> Result<PointedHermModule> {
    if h.nvars() != k.nvars() {
        return Err(Error::VarCount { left: h.nvars(), right: k.nvars() });
    }
    let (r, q) = (h.rank(), k.rank());
    let hs = h.pair_with_point();
    let sh = h.point_with();
    let ks = k.pair_with_point();
    let sk = k.point_with();
    let mut s = h.s.block_diag(&k.s);
    for i in 0..r {
        for j in 0..q {
            // ρ(h1, s) ρ'(s', h2')
            s[(i, r + j)] = &hs[i] * &sk[j];
            // -ρ(s, h2) ρ'(h1', s')
            s[(r + j, i)] = -(&sh[i] * &ks[j]);
        }
    }
    let mut del = h.del.clone();
    del.extend(k.del.iter().cloned());
    let mut nu = h.nu.clone();
    nu.extend(k.nu.iter().cloned());
    Ok(PointedHermModule { genus: h.genus + k.genus, phi: h.phi.concat(&k.phi)?, s, del, nu })
}

/// Pointed tensor product of two surface modules, reindexed into the surface
/// order of `F_{g+h}`.
pub fn tensor_pointed(h: &PointedHermModule, k: &PointedHermModule) -> Result<PointedHermModule> {
    let raw = pointed_sum(h, k)?;
    let p = surface_permutation(h.genus, k.genus);
    Ok(PointedHermModule {
        genus: raw.genus,
        phi: h.phi.surface_sum(&k.phi)?,
        s: permute_square(&raw.s, &p),
        del: permute_vec(&raw.del, &p),
        nu: permute_vec(&raw.nu, &p),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_poly;

    fn phi(vals: &[&[i64]], n: usize) -> PhiValuation {
        PhiValuation::new(n, vals.iter().map(|v| v.to_vec()).collect()).unwrap()
    }

    #[test]
    fn genus_one_trivial() {
        let h = PointedHermModule::build(1, &PhiValuation::trivial(0, 2)).unwrap();
        let expect = MatR::from_rows(
            0,
            vec![
                vec![LaurentPoly::zero(0), LaurentPoly::constant(0, 2)],
                vec![LaurentPoly::constant(0, -2), LaurentPoly::zero(0)],
            ],
        )
        .unwrap();
        assert_eq!(h.form_matrix(), &expect);
        h.certify().unwrap();
        let a = [RingFrac::one(0), RingFrac::zero(0)];
        let b = [RingFrac::zero(0), RingFrac::one(0)];
        assert_eq!(h.form_eval(&a, &b).unwrap(), RingFrac::from_int(0, 2));
    }

    #[test]
    fn genus_one_generic() {
        let h = PointedHermModule::build(1, &phi(&[&[1, 0], &[0, 1]], 2)).unwrap();
        let p = |s: &str| parse_poly(s, 2).unwrap();
        let s = h.form_matrix();
        assert_eq!(s[(0, 0)], p("t1^-1 - t1"));
        assert_eq!(s[(0, 1)], p("(t1 + 1)*(t2^-1 + 1) - 2"));
        assert_eq!(s[(1, 0)], p("2 - (t2 + 1)*(t1^-1 + 1)"));
        assert_eq!(s[(1, 1)], p("t2 - t2^-1"));
        h.certify().unwrap();
    }

    #[test]
    fn higher_genus_certifies() {
        let f = phi(&[&[1, 0], &[0, 1], &[2, -1], &[1, 1], &[0, 0], &[-1, 3]], 2);
        PointedHermModule::build(3, &f).unwrap().certify().unwrap();
    }

    #[test]
    fn tensor_matches_build() {
        let f = phi(&[&[1, 0], &[0, 1]], 2);
        let g = phi(&[&[2, 1], &[-1, 0]], 2);
        let h = PointedHermModule::build(1, &f).unwrap();
        let k = PointedHermModule::build(1, &g).unwrap();
        let t = tensor_pointed(&h, &k).unwrap();
        assert_eq!(t, PointedHermModule::build(2, &f.surface_sum(&g).unwrap()).unwrap());
        let e = PointedHermModule::trivial(2);
        assert_eq!(tensor_pointed(&h, &e).unwrap(), h);
        assert_eq!(tensor_pointed(&e, &h).unwrap(), h);
    }
}
