//! Minimum weight and weight distributions of linear codes given by a generator matrix.
//!
//! Small codes are enumerated exhaustively with a p-ary Gray code over the F_p-digits
//! of the message, so each step adds a single precomputed vector. Larger codes use the
//! Brouwer–Zimmermann scheme over disjoint information sets, and fall back to random
//! sampling (reported as inexact) when that also exceeds the budget.

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::{element_from_index, Field, FieldElement};
use crate::matrix::Matrix;
use crate::rng::{stream_rng, streams};

pub const DEFAULT_BUDGET: u128 = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MinWeightOptions {
    /// Maximum number of codewords to visit.
    pub budget: u128,
    /// Seed for the sampling fallback.
    pub seed: u64,
}

impl Default for MinWeightOptions {
    fn default() -> Self {
        MinWeightOptions {
            budget: DEFAULT_BUDGET,
            seed: 0,
        }
    }
}

/// Minimum weight and whether it is exact (the zero code reports length + 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MinWeight {
    pub weight: usize,
    pub exact: bool,
}

type Sparse = Vec<(usize, FieldElement)>;

fn sparse(row: &[FieldElement]) -> Sparse {
    row.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, &c)| (i, c))
        .collect()
}

fn weight(w: &[FieldElement]) -> usize {
    w.iter().filter(|c| !c.is_zero()).count()
}

/// All q^k codewords as the F_p-span of {β_d · row}: one vector per (row, digit).
fn digit_vectors(f: &Field, rows: &[Vec<FieldElement>]) -> Vec<Sparse> {
    let p = f.characteristic();
    let mut out = Vec::new();
    for r in rows {
        let mut beta = 1u32;
        for _ in 0..f.degree() {
            let b = element_from_index(beta);
            let v: Vec<FieldElement> = r.iter().map(|&x| f.mul(x, b)).collect();
            out.push(sparse(&v));
            beta *= p;
        }
    }
    out
}

fn add_sparse(f: &Field, word: &mut [FieldElement], v: &Sparse, wt: &mut usize) {
    for &(i, a) in v {
        let old = word[i];
        let new = f.add(old, a);
        *wt = *wt + usize::from(!new.is_zero()) - usize::from(!old.is_zero());
        word[i] = new;
    }
}

/// Visits the weight of start + Σ c_j v_j for every c ∈ F_p^m, in Gray-code order.
fn gray_visit(f: &Field, start: &[FieldElement], vecs: &[Sparse], visit: &mut impl FnMut(usize)) {
    let mut word = start.to_vec();
    let mut wt = weight(&word);
    visit(wt);
    let p = f.characteristic() as u64;
    let total = p.pow(vecs.len() as u32);
    for c in 1..total {
        let v = if p == 2 {
            c.trailing_zeros() as usize
        } else {
            let mut x = c;
            let mut v = 0;
            while x % p == 0 {
                x /= p;
                v += 1;
            }
            v
        };
        add_sparse(f, &mut word, &vecs[v], &mut wt);
        visit(wt);
    }
}

/// Runs `gray_visit` over start + span_{F_p}(vecs) in parallel, one accumulator per
/// chunk, returned in chunk order.
fn par_visit<T: Send>(
    f: &Field,
    start: &[FieldElement],
    vecs: &[Sparse],
    init: impl Fn() -> T + Sync,
    visit: impl Fn(&mut T, usize) + Sync,
) -> Vec<T> {
    let p = f.characteristic() as u64;
    let mut split = 0;
    while split < vecs.len() && p.pow(split as u32) < 256 && vecs.len() - split > 4 {
        split += 1;
    }
    let (head, tail) = vecs.split_at(split);
    let mut starts = Vec::new();
    let mut word = start.to_vec();
    let mut wt = weight(&word);
    starts.push(word.clone());
    let total = p.pow(split as u32);
    for c in 1..total {
        let mut x = c;
        let mut v = 0;
        while x % p == 0 {
            x /= p;
            v += 1;
        }
        add_sparse(f, &mut word, &head[v], &mut wt);
        starts.push(word.clone());
    }
    starts
        .par_iter()
        .map(|s| {
            let mut acc = init();
            gray_visit(f, s, tail, &mut |w| visit(&mut acc, w));
            acc
        })
        .collect()
}

fn codeword_count(f: &Field, k: usize) -> Option<u128> {
    (f.order() as u128).checked_pow(k as u32)
}

/// Number of codewords of each weight 0..=length, by exhaustive enumeration.
pub fn weight_distribution(g: &Matrix, budget: u128) -> Result<Vec<u128>> {
    let f = g.field();
    let n = g.cols();
    let rows = g.rref().0.row_vecs();
    let count = codeword_count(f, rows.len()).unwrap_or(u128::MAX);
    if count > budget {
        return Err(Error::TooLargeForExhaustive(count));
    }
    let vecs = digit_vectors(f, &rows);
    let parts = par_visit(
        f,
        &vec![FieldElement::ZERO; n],
        &vecs,
        || vec![0u128; n + 1],
        |acc, w| acc[w] += 1,
    );
    let mut dist = vec![0u128; n + 1];
    for part in parts {
        for (d, c) in dist.iter_mut().zip(part) {
            *d += c;
        }
    }
    Ok(dist)
}

/// Exact minimum weight by visiting one representative per projective point.
pub fn min_weight_exhaustive(g: &Matrix) -> usize {
    let f = g.field();
    let n = g.cols();
    let rows = g.rref().0.row_vecs();
    let mut best = n + 1;
    for i in 0..rows.len() {
        let vecs = digit_vectors(f, &rows[i + 1..]);
        let parts = par_visit(f, &rows[i], &vecs, || usize::MAX, |m, w| *m = (*m).min(w));
        best = best.min(parts.into_iter().min().unwrap_or(usize::MAX));
    }
    best
}

/// Minimum weight with the exhaustive / information-set / sampling cascade.
pub fn min_weight(g: &Matrix, opts: &MinWeightOptions) -> MinWeight {
    let (basis, _) = g.rref();
    let n = g.cols();
    let k = basis.rows();
    if k == 0 {
        return MinWeight {
            weight: n + 1,
            exact: true,
        };
    }
    let f = g.field();
    if codeword_count(f, k).is_some_and(|c| c <= opts.budget) {
        return MinWeight {
            weight: min_weight_exhaustive(&basis),
            exact: true,
        };
    }
    let (upper, exact) = information_set_min(&basis, opts.budget);
    if exact {
        return MinWeight {
            weight: upper,
            exact: true,
        };
    }
    MinWeight {
        weight: upper.min(sampled_min(&basis, opts.budget, opts.seed)),
        exact: false,
    }
}

/// Greedy disjoint information sets, each returned as a generator matrix that is
/// systematic on that set.
fn disjoint_information_sets(g: &Matrix) -> Vec<Matrix> {
    let n = g.cols();
    let k = g.rows();
    let mut used = vec![false; n];
    let mut out = Vec::new();
    loop {
        let order: Vec<usize> = (0..n)
            .filter(|&c| !used[c])
            .chain((0..n).filter(|&c| used[c]))
            .collect();
        let permuted = Matrix::from_rows(
            g.field(),
            n,
            (0..k)
                .map(|r| order.iter().map(|&c| g.get(r, c)).collect())
                .collect(),
        );
        let (red, piv) = permuted.rref();
        let cols: Vec<usize> = piv.iter().map(|&c| order[c]).collect();
        if piv.len() < k || cols.iter().any(|&c| used[c]) {
            break;
        }
        for &c in &cols {
            used[c] = true;
        }
        let mut back = Matrix::zeros(g.field(), k, n);
        for r in 0..k {
            for (j, &c) in order.iter().enumerate() {
                back.set(r, c, red.get(r, j));
            }
        }
        out.push(back);
        if used.iter().filter(|&&u| !u).count() < k {
            break;
        }
    }
    out
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Brouwer–Zimmermann: after all messages of weight ≤ w on each of m disjoint
/// information sets, every unseen codeword has weight ≥ m(w+1).
/// Returns (best weight found, exact).
fn information_set_min(g: &Matrix, budget: u128) -> (usize, bool) {
    let f = g.field();
    let k = g.rows();
    let n = g.cols();
    let q = f.order() as u128;
    let sets = disjoint_information_sets(g);
    let m = sets.len();
    let gens: Vec<Vec<Vec<FieldElement>>> = sets.iter().map(|s| s.row_vecs()).collect();
    let mut best = n + 1;
    let mut work = 0u128;
    for w in 1..=k {
        let cost = binomial(k, w)
            .saturating_mul((q - 1).saturating_pow(w as u32 - 1))
            .saturating_mul(m as u128);
        work = work.saturating_add(cost);
        if work > budget {
            return (best, false);
        }
        for rows in &gens {
            best = best.min(min_over_support_size(f, rows, w));
        }
        if best <= m * (w + 1) || w == k {
            return (best, true);
        }
    }
    (best, true)
}

/// Minimum weight over Σ_{i∈S} c_i row_i with |S| = w, c_i ≠ 0 and the first c_i = 1.
fn min_over_support_size(f: &Field, rows: &[Vec<FieldElement>], w: usize) -> usize {
    let nonzero: Vec<FieldElement> = f.elements().skip(1).collect();
    let k = rows.len();
    (0..k)
        .into_par_iter()
        .map(|i0| {
            let mut word = rows[i0].clone();
            let mut best = usize::MAX;
            dfs(f, rows, &nonzero, i0 + 1, w - 1, &mut word, &mut best);
            best
        })
        .min()
        .unwrap_or(usize::MAX)
}

fn dfs(
    f: &Field,
    rows: &[Vec<FieldElement>],
    nonzero: &[FieldElement],
    start: usize,
    remaining: usize,
    word: &mut Vec<FieldElement>,
    best: &mut usize,
) {
    if remaining == 0 {
        *best = (*best).min(weight(word));
        return;
    }
    for i in start..=rows.len() - remaining {
        let saved = word.clone();
        for &c in nonzero {
            for (j, x) in word.iter_mut().enumerate() {
                *x = f.add(saved[j], f.mul(c, rows[i][j]));
            }
            dfs(f, rows, nonzero, i + 1, remaining - 1, word, best);
        }
        word.copy_from_slice(&saved);
    }
}

/// Least weight among `budget` uniformly random nonzero codewords.
fn sampled_min(g: &Matrix, budget: u128, seed: u64) -> usize {
    let f = g.field();
    let n = g.cols();
    let rows = g.row_vecs();
    let q = f.order() as u32;
    const CHUNK: u64 = 4096;
    let total = budget.min(u64::MAX as u128) as u64;
    let chunks = total.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = stream_rng(seed, streams::MIN_WEIGHT, c);
            let mut best = n + 1;
            let count = CHUNK.min(total - c * CHUNK);
            let mut word = vec![FieldElement::ZERO; n];
            for _ in 0..count {
                word.fill(FieldElement::ZERO);
                for r in &rows {
                    let m = element_from_index(rng.random_range(0..q));
                    if m.is_zero() {
                        continue;
                    }
                    for (x, &v) in word.iter_mut().zip(r) {
                        *x = f.add(*x, f.mul(m, v));
                    }
                }
                let w = weight(&word);
                if w > 0 {
                    best = best.min(w);
                }
            }
            best
        })
        .min()
        .unwrap_or(n + 1)
}
