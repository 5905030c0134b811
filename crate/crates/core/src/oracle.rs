//! Brute-force idealizer chain computed straight from the definition.
//!
//! Starting from `S_{-1} = {∂_1, ..., ∂_n}`, each level keeps every
//! candidate basis element `b` of bounded weight such that `[b, h]` is zero
//! or a multiple of an element of the previous level, for every `h` in it.
//! In pure mode nothing from [`crate::grading`] is consulted.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grading::{enumerate_chain, wd};
use crate::ring::{
    basis_enumerate, bracket, bracket_basis, in_span, BasisElement, RingContext, RingElement,
};

/// Environment variable capping the oracle's worker threads.
pub const THREADS_ENV: &str = "IDEALIZER_LAB_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    /// Extra candidate weight beyond `n + i`.
    pub weight_cap_margin: u64,
    /// When false, candidates are pre-filtered with `WD <= n - 1` and
    /// `deg <= i + 1`.
    pub pure_mode: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            weight_cap_margin: 0,
            pure_mode: true,
        }
    }
}

/// Elements of the analytic set missing from the oracle set, and the reverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainDiff {
    pub level: i64,
    pub missing: Vec<BasisElement>,
    pub extra: Vec<BasisElement>,
}

impl ChainDiff {
    pub fn is_empty(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }
}

/// Runs `f` on a pool sized by [`THREADS_ENV`], or on the global pool.
fn with_pool<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    let threads = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok());
    match threads.filter(|&t| t > 0) {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
        None => f(),
    }
}

fn normalizes(ctx: &RingContext, b: &BasisElement, h_set: &BTreeSet<BasisElement>) -> Result<bool> {
    for h in h_set {
        if let Some((_, e)) = bracket_basis(ctx, b, h)? {
            if !h_set.contains(&e) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn filtered_step(
    ctx: &RingContext,
    h_set: &BTreeSet<BasisElement>,
    candidates: Vec<BasisElement>,
) -> Result<BTreeSet<BasisElement>> {
    let kept: Result<Vec<Option<BasisElement>>> = candidates
        .into_par_iter()
        .map(|b| Ok(normalizes(ctx, &b, h_set)?.then_some(b)))
        .collect();
    Ok(kept?.into_iter().flatten().collect())
}

/// `{ b : weight(b) <= weight_cap, [b, h] ∈ Z·H for all h ∈ H }`.
pub fn idealizer_step(
    ctx: &RingContext,
    h_set: &BTreeSet<BasisElement>,
    weight_cap: u64,
) -> Result<BTreeSet<BasisElement>> {
    for h in h_set {
        ctx.check(h)?;
    }
    with_pool(|| filtered_step(ctx, h_set, basis_enumerate(ctx, weight_cap)))
}

/// `S_{-1}, S_0, ..., S_{i_max}`; entry `p` holds `S_{p - 1}`.
pub fn oracle_chain(
    ctx: &RingContext,
    i_max: i64,
    cfg: OracleConfig,
) -> Result<Vec<BTreeSet<BasisElement>>> {
    if i_max < -1 {
        return Err(Error::Domain(format!("chain starts at -1, got {i_max}")));
    }
    let n = ctx.n() as i64;
    with_pool(|| {
        let mut levels = vec![(1..=ctx.n())
            .map(BasisElement::derivation)
            .collect::<BTreeSet<_>>()];
        for i in 0..=i_max {
            let prev = levels.last().expect("base level");
            let cap = (n + i) as u64 + cfg.weight_cap_margin;
            let mut candidates = basis_enumerate(ctx, cap);
            if !cfg.pure_mode {
                candidates.retain(|b| wd(ctx, b) < n && b.partition().degree() as i64 <= i + 1);
            }
            let next = filtered_step(ctx, prev, candidates)?;
            if !prev.is_subset(&next) {
                return Err(Error::Internal(format!(
                    "oracle chain not ascending at level {i}"
                )));
            }
            levels.push(next);
        }
        Ok(levels)
    })
}

/// Level-by-level comparison of the oracle chain with the analytic sets,
/// for levels `-1..=i_max`.
pub fn compare_chain(ctx: &RingContext, i_max: i64, cfg: OracleConfig) -> Result<Vec<ChainDiff>> {
    let oracle = oracle_chain(ctx, i_max, cfg)?;
    let analytic = enumerate_chain(ctx, i_max)?;
    Ok(diff_levels(&analytic, &oracle))
}

/// Diffs two chains indexed from level -1.
pub fn diff_levels(
    analytic: &[BTreeSet<BasisElement>],
    oracle: &[BTreeSet<BasisElement>],
) -> Vec<ChainDiff> {
    analytic
        .iter()
        .zip(oracle)
        .enumerate()
        .map(|(p, (a, o))| ChainDiff {
            level: p as i64 - 1,
            missing: a.difference(o).cloned().collect(),
            extra: o.difference(a).cloned().collect(),
        })
        .collect()
}

/// Outcome of randomized homogeneity spot checks.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomogeneityReport {
    pub accepted_trials: u64,
    pub accepted_failures: u64,
    pub rejected_trials: u64,
    pub rejected_unwitnessed: u64,
    pub first_failure: Option<String>,
}

impl HomogeneityReport {
    pub fn passed(&self) -> bool {
        self.accepted_failures == 0 && self.rejected_unwitnessed == 0
    }
}

fn random_combination(rng: &mut ChaCha8Rng, pool: &[BasisElement]) -> Result<RingElement> {
    let mut v = RingElement::zero();
    if pool.is_empty() {
        return Ok(v);
    }
    let terms = rng.gen_range(1..=4usize.min(pool.len()));
    for e in pool.choose_multiple(rng, terms) {
        let c = rng.gen_range(1..=5i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
        v.add_term(c, e.clone())?;
    }
    Ok(v)
}

fn spans_all(
    ctx: &RingContext,
    v: &RingElement,
    h_set: &BTreeSet<BasisElement>,
) -> Result<Option<BasisElement>> {
    for h in h_set {
        let w = bracket(ctx, v, &RingElement::from_basis(h.clone()))?;
        if !in_span(&w, h_set) {
            return Ok(Some(h.clone()));
        }
    }
    Ok(None)
}

/// Checks that the module idealizer of `Z·H` is spanned by its basis-level
/// idealizer: random combinations of accepted candidates stay in the
/// idealizer, and adding any nonzero multiple of a rejected candidate leaves
/// it. Candidates are the basis elements of weight at most `weight_cap`.
pub fn verify_homogeneity(
    ctx: &RingContext,
    h_set: &BTreeSet<BasisElement>,
    weight_cap: u64,
    trials: u64,
    seed: u64,
) -> Result<HomogeneityReport> {
    let candidates = basis_enumerate(ctx, weight_cap);
    let accepted_set = idealizer_step(ctx, h_set, weight_cap)?;
    let (accepted, rejected): (Vec<_>, Vec<_>) = candidates
        .into_iter()
        .partition(|b| accepted_set.contains(b));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = HomogeneityReport::default();

    for _ in 0..trials {
        let v = random_combination(&mut rng, &accepted)?;
        report.accepted_trials += 1;
        if let Some(h) = spans_all(ctx, &v, h_set)? {
            report.accepted_failures += 1;
            report.first_failure.get_or_insert_with(|| {
                format!("[{}, {h}] leaves the span", crate::expr::print_element(&v))
            });
        }
    }
    if !rejected.is_empty() {
        for _ in 0..trials {
            let v = random_combination(&mut rng, &accepted)?;
            let b = rejected.choose(&mut rng).expect("nonempty").clone();
            let c = rng.gen_range(1..=5i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
            let mut w = v;
            w.add_term(c, b)?;
            report.rejected_trials += 1;
            if spans_all(ctx, &w, h_set)?.is_none() {
                report.rejected_unwitnessed += 1;
                report.first_failure.get_or_insert_with(|| {
                    format!("{} normalizes the span", crate::expr::print_element(&w))
                });
            }
        }
    }
    Ok(report)
}

/// A bracket of an `N_i` element with an `N_j` element that is nonzero and
/// not a multiple of an `N_{j-1}` element, if one exists.
pub fn commutator_witness(
    ctx: &RingContext,
    i: i64,
    j: i64,
) -> Result<Option<(BasisElement, BasisElement, BasisElement)>> {
    if !(-1 <= i && i < j) {
        return Err(Error::Domain(format!(
            "need -1 <= i < j, got i = {i}, j = {j}"
        )));
    }
    let chain = enumerate_chain(ctx, j)?;
    let (ni, nj, below) = (
        &chain[(i + 1) as usize],
        &chain[(j + 1) as usize],
        &chain[j as usize],
    );
    for a in ni {
        for b in nj {
            if let Some((_, e)) = bracket_basis(ctx, a, b)? {
                if !below.contains(&e) {
                    return Ok(Some((a.clone(), b.clone(), e)));
                }
            }
        }
    }
    Ok(None)
}

/// Whether `[N_i, N_j] ⊆ Z·N_{j-1} ∪ {0}` on basis elements.
pub fn commutator_containment(ctx: &RingContext, i: i64, j: i64) -> Result<bool> {
    Ok(commutator_witness(ctx, i, j)?.is_none())
}
