//! Random search over C_{1,g}, g ∈ D, in the cyclic ring.

use std::fmt::Write as _;

use num_rational::Ratio;
use rayon::prelude::*;

use super::dset::build_d_set;
use crate::codes::QuasiCode;
use crate::distance::{MinWeightOptions, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::ring::{RingContext, RingElement};
use crate::rng::{derive_seed, stream_rng, streams};
use crate::semisimple::IdempotentBasis;

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub field: Field,
    pub h: u32,
    pub n_list: Vec<usize>,
    pub trials: usize,
    pub delta: Ratio<u64>,
    pub seed: u64,
    pub budget: u128,
}

impl SearchConfig {
    pub fn new(field: &Field, h: u32, n_list: Vec<usize>) -> SearchConfig {
        SearchConfig {
            field: field.clone(),
            h,
            n_list,
            trials: 100,
            delta: Ratio::new(1, 10),
            seed: 0,
            budget: DEFAULT_BUDGET,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Trial {
    pub g: RingElement,
    pub min_weight: usize,
    pub exact: bool,
}

#[derive(Clone, Debug)]
pub struct SearchRow {
    pub n: usize,
    pub trials: usize,
    pub best_min_weight: usize,
    pub frac_below_delta: Ratio<u64>,
    /// Every trial's minimum weight was computed exactly.
    pub exact: bool,
    /// Generator g of the first trial reaching the best weight.
    pub best_g: RingElement,
    /// C_{1,best_g}, re-verified self-dual by computing its dual.
    pub best_code: QuasiCode,
    pub samples: Vec<Trial>,
}

impl SearchRow {
    /// Best Δ = w / 2n.
    pub fn best_rel_distance(&self) -> Ratio<u64> {
        Ratio::new(self.best_min_weight as u64, 2 * self.n as u64)
    }
}

#[derive(Clone, Debug, Default)]
pub struct SearchReport {
    pub rows: Vec<SearchRow>,
}

fn ratio_f64(r: Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

impl SearchReport {
    pub const CSV_HEADER: &'static str =
        "n,trials,best_min_weight,best_rel_distance,frac_below_delta,exact";

    pub fn to_csv(&self) -> String {
        let mut s = String::from(Self::CSV_HEADER);
        s.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{},{},{},{:.6},{:.6},{}",
                r.n,
                r.trials,
                r.best_min_weight,
                ratio_f64(r.best_rel_distance()),
                ratio_f64(r.frac_below_delta),
                r.exact
            );
        }
        s
    }
}

/// For each n, draws `trials` elements of D, measures C_{1,g}, and reports the best
/// code and the fraction with Δ ≤ δ. `trials = 0` gives an empty report.
pub fn search(cfg: &SearchConfig) -> Result<SearchReport> {
    let mut report = SearchReport::default();
    if cfg.trials == 0 {
        return Ok(report);
    }
    for &n in &cfg.n_list {
        let ctx = RingContext::cyclic(&cfg.field, n)?;
        let basis = IdempotentBasis::new(&ctx)?;
        let dset = build_d_set(&basis, cfg.h)?;
        let row_seed = derive_seed(cfg.seed, streams::SEARCH, n as u64);
        let samples: Vec<Trial> = (0..cfg.trials)
            .into_par_iter()
            .map(|t| {
                let mut rng = stream_rng(row_seed, 0, t as u64);
                let g = dset.sample_with(&mut rng)?;
                let code = QuasiCode::from_pair(&ctx.one(), &g)?;
                let m = code.metrics(&MinWeightOptions {
                    budget: cfg.budget,
                    seed: derive_seed(row_seed, 1, t as u64),
                });
                Ok(Trial {
                    g,
                    min_weight: m.min_weight,
                    exact: m.exact,
                })
            })
            .collect::<Result<_>>()?;
        let best = samples
            .iter()
            .enumerate()
            .max_by(|(i, a), (j, b)| a.min_weight.cmp(&b.min_weight).then(j.cmp(i)))
            .map(|(i, _)| i)
            .unwrap();
        let len = 2 * n as u64;
        let below = samples
            .iter()
            .filter(|t| t.min_weight as u64 * cfg.delta.denom() <= cfg.delta.numer() * len)
            .count();
        let best_g = samples[best].g.clone();
        let best_code = QuasiCode::from_pair(&ctx.one(), &best_g)?;
        if !best_code.is_galois_self_dual(cfg.h)? {
            return Err(Error::InvariantViolation(
                "search produced a code that is not self-dual".into(),
            ));
        }
        report.rows.push(SearchRow {
            n,
            trials: cfg.trials,
            best_min_weight: samples[best].min_weight,
            frac_below_delta: Ratio::new(below as u64, cfg.trials as u64),
            exact: samples.iter().all(|t| t.exact),
            best_g,
            best_code,
            samples,
        });
    }
    Ok(report)
}
