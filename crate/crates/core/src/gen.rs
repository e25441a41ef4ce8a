//! Seeded random valuations, mapping classes and Heegaard data.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cobordism::HeegaardData;
use crate::free_group::{FreeEndo, Letter, PhiValuation, Word};
use crate::linalg::integer::integer_kernel;
use crate::linalg::{solve_many, MatQ, MatR};
use crate::lagrangian::LagRelation;
use crate::linalg::rank;
use crate::ring::{LaurentPoly, RingFrac};

pub type GenRng = ChaCha8Rng;

pub fn rng(seed: u64) -> GenRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn word(letters: &[(usize, bool)], rank: usize) -> Word {
    Word::reduce(letters.iter().map(|&(g, inv)| Letter::new(g, inv)), rank).expect("generator in range")
}

fn with_images(genus: usize, changes: Vec<(usize, Word)>) -> FreeEndo {
    let mut images: Vec<Word> = (0..2 * genus).map(Word::gen).collect();
    for (i, w) in changes {
        images[i] = w;
    }
    FreeEndo::new(images).expect("images in range")
}

/// `b_i -> b_i a_i^{±1}`.
pub fn twist_a(genus: usize, i: usize, inverse: bool) -> FreeEndo {
    let (a, b) = (i, genus + i);
    with_images(genus, vec![(b, word(&[(b, false), (a, inverse)], 2 * genus))])
}

/// `a_i -> a_i b_i^{±1}`.
pub fn twist_b(genus: usize, i: usize, inverse: bool) -> FreeEndo {
    let (a, b) = (i, genus + i);
    with_images(genus, vec![(a, word(&[(a, false), (b, inverse)], 2 * genus))])
}

/// Exchanges handles `i` and `i + 1`, conjugating by the commutator of handle `i`.
pub fn handle_swap(genus: usize, i: usize) -> FreeEndo {
    let n = 2 * genus;
    let (a1, b1, a2, b2) = (i, genus + i, i + 1, genus + i + 1);
    let c = [(a1, false), (b1, false), (a1, true), (b1, true)];
    let ci = [(b1, false), (a1, false), (b1, true), (a1, true)];
    let conj = |x: usize| {
        let mut l = c.to_vec();
        l.push((x, false));
        l.extend_from_slice(&ci);
        word(&l, n)
    };
    with_images(genus, vec![(a1, conj(a2)), (b1, conj(b2)), (a2, Word::gen(a1)), (b2, Word::gen(b1))])
}

/// Transvection coupling handles `i` and `i + 1`.
pub fn handle_mix(genus: usize, i: usize) -> FreeEndo {
    let n = 2 * genus;
    let (a1, b1, a2, b2) = (i, genus + i, i + 1, genus + i + 1);
    with_images(
        genus,
        vec![
            (a1, word(&[(a1, false), (b2, false), (b1, false)], n)),
            (a2, word(&[(b1, true), (b2, true), (b1, false), (b2, false), (a2, false), (b2, false), (b1, false)], n)),
            (b1, word(&[(b1, true), (b2, true), (b1, false), (b2, false), (b1, false)], n)),
            (b2, word(&[(b1, true), (b2, false), (b1, false)], n)),
        ],
    )
}

/// All generators used for random mapping classes of the given genus.
pub fn mapping_class_generators(genus: usize) -> Vec<FreeEndo> {
    let mut out = Vec::new();
    for i in 0..genus {
        for inv in [false, true] {
            out.push(twist_a(genus, i, inv));
            out.push(twist_b(genus, i, inv));
        }
    }
    for i in 0..genus.saturating_sub(1) {
        out.push(handle_swap(genus, i));
        out.push(handle_mix(genus, i));
    }
    out
}

fn max_len(f: &FreeEndo) -> usize {
    f.images().iter().map(Word::len).max().unwrap_or(0)
}

/// Product of up to `steps` random generators whose images stay within
/// `max_word` letters.
pub fn random_mapping_class(rng: &mut GenRng, genus: usize, steps: usize, max_word: usize) -> FreeEndo {
    let gens = mapping_class_generators(genus);
    let mut f = FreeEndo::identity(2 * genus);
    if gens.is_empty() {
        return f;
    }
    for _ in 0..steps {
        let g = gens.choose(rng).expect("nonempty");
        let next = f.compose(g).expect("same rank");
        if max_len(&next) <= max_word {
            f = next;
        }
    }
    f
}

/// Valuation with exponents in `-range..=range`.
pub fn random_phi(rng: &mut GenRng, nvars: usize, rank: usize, range: i64) -> PhiValuation {
    let vals = (0..rank).map(|_| (0..nvars).map(|_| rng.gen_range(-range..=range)).collect()).collect();
    PhiValuation::new(nvars, vals).expect("consistent lengths")
}

/// Exponent-sum vector of a word.
pub fn abelianize(w: &Word, rank: usize) -> Vec<i64> {
    let mut v = vec![0; rank];
    for l in w.letters() {
        v[l.gen] += if l.inv { -1 } else { 1 };
    }
    v
}

/// Random valuation on `rank` generators vanishing on the given
/// exponent-sum vectors.
pub fn random_phi_killing(rng: &mut GenRng, nvars: usize, rank: usize, killed: &[Vec<i64>], range: i64) -> PhiValuation {
    let rows: Vec<Vec<BigInt>> = killed.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let free = integer_kernel(&rows, rank);
    let mut vals = vec![vec![0i64; nvars]; rank];
    for t in 0..nvars {
        for basis in &free {
            let c: i64 = rng.gen_range(-range..=range);
            if c == 0 {
                continue;
            }
            for (k, x) in basis.iter().enumerate() {
                vals[k][t] += c * x.to_i64().expect("small lattice entries");
            }
        }
    }
    PhiValuation::new(nvars, vals).expect("consistent lengths")
}

/// Random valid Heegaard data with middle genus at most `max_genus`.
pub fn random_heegaard(rng: &mut GenRng, max_genus: usize, nvars: usize, max_word: usize) -> HeegaardData {
    let mid = rng.gen_range(1..=max_genus);
    let r_minus = rng.gen_range(0..=mid);
    let r_plus = rng.gen_range(0..=mid);
    heegaard_with(rng, mid, r_minus, r_plus, nvars, max_word)
}

/// Random valid Heegaard data of a prescribed shape.
pub fn heegaard_with(rng: &mut GenRng, mid: usize, r_minus: usize, r_plus: usize, nvars: usize, max_word: usize) -> HeegaardData {
    let f = random_mapping_class(rng, mid, 6 * mid, max_word);
    let n = 2 * mid;
    let mut killed: Vec<Vec<i64>> = (0..r_minus).map(|i| abelianize(f.image(i), n)).collect();
    killed.extend((0..r_plus).map(|j| abelianize(&Word::gen(mid + j), n)));
    let phi = random_phi_killing(rng, nvars, n, &killed, 2);
    HeegaardData::new(mid - r_minus, mid - r_plus, r_minus, r_plus, f, phi).expect("constructed valid")
}

/// Abelianization matrix: column `j` is the exponent-sum vector of `f(x_j)`.
fn ab_matrix(f: &FreeEndo) -> MatQ {
    let k = f.rank();
    let cols: Vec<Vec<RingFrac>> =
        f.images().iter().map(|w| abelianize(w, k).into_iter().map(|x| RingFrac::from_int(0, x)).collect()).collect();
    MatQ::from_cols(0, k, &cols)
}

/// Random Heegaard data whose lower boundary valuation is `phi_minus`, or
/// `None` when no attempt succeeds.
pub fn heegaard_over(rng: &mut GenRng, phi_minus: &PhiValuation, extra: usize, max_word: usize) -> Option<HeegaardData> {
    over(rng, phi_minus, extra, max_word, false)
}

/// Random mapping cylinder whose lower boundary valuation is `phi_minus`.
pub fn cylinder_over(rng: &mut GenRng, phi_minus: &PhiValuation, max_word: usize) -> HeegaardData {
    over(rng, phi_minus, 0, max_word, true).expect("a cylinder always exists")
}

fn over(rng: &mut GenRng, phi_minus: &PhiValuation, extra: usize, max_word: usize, cylinder: bool) -> Option<HeegaardData> {
    let gm = phi_minus.genus();
    let nv = phi_minus.nvars();
    for attempt in 0..20 {
        let r_minus = extra;
        let mid = gm + r_minus;
        if mid == 0 {
            return None;
        }
        let r_plus = if attempt < 10 && !cylinder { rng.gen_range(0..=mid) } else { 0 };
        let f = random_mapping_class(rng, mid, 6 * mid, max_word);
        // valuation on the bottom of the cylinder
        let mut bottom = vec![vec![0i64; nv]; 2 * mid];
        for i in 0..r_minus {
            bottom[mid + i] = (0..nv).map(|_| rng.gen_range(-2..=2)).collect();
        }
        for i in 0..gm {
            bottom[r_minus + i] = phi_minus.value(i).clone();
            bottom[mid + r_minus + i] = phi_minus.value(gm + i).clone();
        }
        // top valuation = bottom ∘ (ab f)^{-1}
        let a = ab_matrix(&f);
        let inv = solve_many(&a, &MatQ::identity(0, 2 * mid)).ok()?;
        let mut top = vec![vec![0i64; nv]; 2 * mid];
        for (k, row) in top.iter_mut().enumerate() {
            for (t, slot) in row.iter_mut().enumerate() {
                let mut s = 0i64;
                for (j, b) in bottom.iter().enumerate() {
                    let c = inv[(j, k)].num().as_constant().expect("integer inverse").to_i64().expect("small");
                    s += b[t] * c;
                }
                *slot = s;
            }
        }
        let phi = PhiValuation::new(nv, top).expect("consistent lengths");
        if let Ok(h) = HeegaardData::new(gm, mid - r_plus, r_minus, r_plus, f, phi) {
            if &h.phi_minus() == phi_minus {
                return Some(h);
            }
        }
    }
    None
}

/// Laurent polynomial with up to `terms` terms, exponents in
/// `-exp..=exp` and coefficients in `-coeff..=coeff`.
pub fn random_poly(rng: &mut GenRng, nvars: usize, terms: usize, exp: i64, coeff: i64) -> LaurentPoly {
    let k = rng.gen_range(0..=terms);
    LaurentPoly::from_terms(
        nvars,
        (0..k).map(|_| ((0..nvars).map(|_| rng.gen_range(-exp..=exp)).collect::<Vec<_>>(), BigInt::from(rng.gen_range(-coeff..=coeff)))),
    )
}

/// Random sparse transversal of a relation: shuffled coordinate vectors,
/// each with at most one extra `±1` entry. `None` after 50 misses.
pub fn random_transversal(rng: &mut GenRng, rel: &LagRelation) -> Option<MatR> {
    let n = rel.nvars();
    let amb = rel.ambient();
    let g = rel.space().dim();
    let mut idx: Vec<usize> = (0..amb).collect();
    for _ in 0..50 {
        idx.shuffle(rng);
        let mut w = MatR::zeros(n, amb, g);
        for (j, &i) in idx[..g].iter().enumerate() {
            w[(i, j)] = LaurentPoly::one(n);
            if rng.gen_bool(0.5) {
                let k = rng.gen_range(0..amb);
                if k != i {
                    w[(k, j)] = LaurentPoly::constant(n, if rng.gen_bool(0.5) { 1 } else { -1 });
                }
            }
        }
        let sys = w.to_q().hstack(rel.space().basis());
        if rank(&sys) == amb {
            return Some(w);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_fix_boundary() {
        for g in 1..=3 {
            for f in mapping_class_generators(g) {
                assert!(f.check_boundary(), "{}", f.surface_string());
            }
        }
    }

    #[test]
    fn random_data_is_valid_and_reproducible() {
        let mut r = rng(3);
        let hs: Vec<_> = (0..10).map(|_| random_heegaard(&mut r, 3, 2, 12)).collect();
        let mut r2 = rng(3);
        let hs2: Vec<_> = (0..10).map(|_| random_heegaard(&mut r2, 3, 2, 12)).collect();
        assert_eq!(hs, hs2);
        for h in &hs {
            assert!(h.f().images().iter().all(|w| w.len() <= 12));
        }
    }

    #[test]
    fn composable_top() {
        let mut r = rng(5);
        let h = random_heegaard(&mut r, 2, 1, 12);
        let top = heegaard_over(&mut r, &h.phi_plus(), 1, 12).unwrap();
        assert_eq!(top.phi_minus(), h.phi_plus());
    }
}
