use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{det_field, MatQ};
use crate::ring::{RingFrac, Scalar};

/// Subsets of `0..m` of size `k` as bitmasks, in lexicographic order of
/// their sorted index lists.
pub fn subsets(m: usize, k: usize) -> Vec<u64> {
    fn rec(start: usize, m: usize, k: usize, acc: u64, out: &mut Vec<u64>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..=m - k {
            rec(i + 1, m, k - 1, acc | (1 << i), out);
        }
    }
    let mut out = Vec::new();
    if k <= m {
        rec(0, m, k, 0, &mut out);
    }
    out
}

pub fn indices(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

/// Sign of the shuffle taking `e_a ∧ e_b` to increasing order; zero when
/// the masks overlap.
pub fn merge_sign(a: u64, b: u64) -> i32 {
    if a & b != 0 {
        return 0;
    }
    let mut inv = 0u32;
    for j in indices(b) {
        inv += (a >> (j + 1)).count_ones();
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Homogeneous element of the exterior algebra on `m` basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiVector<T> {
    nvars: usize,
    ambient: usize,
    degree: usize,
    coeffs: BTreeMap<u64, T>,
}

impl<T: Scalar> MultiVector<T> {
    pub fn zero(nvars: usize, ambient: usize, degree: usize) -> Self {
        MultiVector { nvars, ambient, degree, coeffs: BTreeMap::new() }
    }

    /// The unit `1` in degree zero.
    pub fn one(nvars: usize, ambient: usize) -> Self {
        let mut c = BTreeMap::new();
        c.insert(0, T::one(nvars));
        MultiVector { nvars, ambient, degree: 0, coeffs: c }
    }

    pub fn basis(nvars: usize, ambient: usize, mask: u64) -> Self {
        let mut c = BTreeMap::new();
        c.insert(mask, T::one(nvars));
        MultiVector { nvars, ambient, degree: mask.count_ones() as usize, coeffs: c }
    }

    pub fn from_vector(nvars: usize, v: &[T]) -> Self {
        let coeffs = v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (1u64 << i, x.clone())).collect();
        MultiVector { nvars, ambient: v.len(), degree: 1, coeffs }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, mask: u64) -> T {
        self.coeffs.get(&mask).cloned().unwrap_or_else(|| T::zero(self.nvars))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u64, &T)> {
        self.coeffs.iter()
    }

    /// Coefficient of `e_1 ∧ ... ∧ e_m`.
    pub fn top_coeff(&self) -> T {
        let top = if self.ambient == 64 { u64::MAX } else { (1u64 << self.ambient) - 1 };
        self.coeff(top)
    }

    pub fn wedge(&self, o: &Self) -> Result<Self> {
        if self.ambient != o.ambient {
            return Err(Error::Dimension(format!("ambient ranks {} and {}", self.ambient, o.ambient)));
        }
        let mut out: BTreeMap<u64, T> = BTreeMap::new();
        for (a, x) in &self.coeffs {
            for (b, y) in &o.coeffs {
                let s = merge_sign(*a, *b);
                if s == 0 {
                    continue;
                }
                let p = x.mul(y);
                let p = if s < 0 { p.neg() } else { p };
                let e = out.entry(a | b).or_insert_with(|| T::zero(self.nvars));
                *e = e.add(&p);
            }
        }
        out.retain(|_, v| !v.is_zero());
        Ok(MultiVector { nvars: self.nvars, ambient: self.ambient, degree: self.degree + o.degree, coeffs: out })
    }

    /// Wedge of a list of vectors.
    pub fn wedge_all(nvars: usize, ambient: usize, vecs: &[Vec<T>]) -> Result<Self> {
        let mut acc = Self::one(nvars, ambient);
        for v in vecs {
            acc = acc.wedge(&Self::from_vector(nvars, v))?;
        }
        Ok(acc)
    }
}

/// Degree-shifting map `Λ H₋ → Λ H₊`, stored block by block.
///
/// Block `j` sends `Λ^j H₋` to `Λ^{j+shift} H₊`; its columns follow
/// `subsets(src_rank, j)` and its rows `subsets(tgt_rank, j + shift)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    nvars: usize,
    src_rank: usize,
    tgt_rank: usize,
    shift: isize,
    blocks: Vec<MatQ>,
}

impl GradedMap {
    /// Assembles the map whose `e_C` coefficient on `e_B` is
    /// `sign(C, C^c) · pairing(B, C^c)`.
    pub fn from_pairing(
        nvars: usize,
        src_rank: usize,
        tgt_rank: usize,
        shift: isize,
        mut pairing: impl FnMut(u64, u64) -> Result<RingFrac>,
    ) -> Result<Self> {
        let full: u64 = if tgt_rank == 64 { u64::MAX } else { (1u64 << tgt_rank) - 1 };
        let mut blocks = Vec::with_capacity(src_rank + 1);
        for j in 0..=src_rank {
            let cols = subsets(src_rank, j);
            let d = j as isize + shift;
            let rows = if d < 0 || d > tgt_rank as isize { Vec::new() } else { subsets(tgt_rank, d as usize) };
            let mut m = MatQ::zeros(nvars, rows.len(), cols.len());
            for (ci, &b) in cols.iter().enumerate() {
                for (ri, &c) in rows.iter().enumerate() {
                    let comp = full & !c;
                    let v = pairing(b, comp)?;
                    m[(ri, ci)] = if merge_sign(c, comp) < 0 { -v } else { v };
                }
            }
            blocks.push(m);
        }
        Ok(GradedMap { nvars, src_rank, tgt_rank, shift, blocks })
    }

    /// `Λ(r)`: block `j` is the `j`-th compound matrix of `r`.
    pub fn exterior_power(r: &MatQ) -> Result<Self> {
        let n = r.nvars();
        GradedMap::from_pairing(n, r.cols(), r.rows(), r.rows() as isize - r.cols() as isize, |b, d| {
            // vol(Λr(e_B) ∧ e_D) = det[r e_B | e_D]
            let mut cols: Vec<Vec<RingFrac>> = indices(b).into_iter().map(|i| r.col(i)).collect();
            for i in indices(d) {
                cols.push((0..r.rows()).map(|k| if k == i { RingFrac::one(n) } else { RingFrac::zero(n) }).collect());
            }
            det_field(&MatQ::from_cols(n, r.rows(), &cols))
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn src_rank(&self) -> usize {
        self.src_rank
    }

    pub fn tgt_rank(&self) -> usize {
        self.tgt_rank
    }

    pub fn shift(&self) -> isize {
        self.shift
    }

    pub fn blocks(&self) -> &[MatQ] {
        &self.blocks
    }

    /// All entries, block by block, row-major.
    pub fn entries(&self) -> Vec<RingFrac> {
        self.blocks.iter().flat_map(|m| m.entries().iter().cloned()).collect()
    }

    pub fn scale(&self, c: &RingFrac) -> Self {
        GradedMap { blocks: self.blocks.iter().map(|m| m.scale(c)).collect(), ..self.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|m| m.is_zero())
    }
}
