//! Level indices, the weight-degree and level functions, and the closed-form
//! enumeration of the layers `L_i` of the chain.
//!
//! For rank `n` every `i >= -1` is written `i = (h_i - 1)(n - 1) + r_i` with
//! `1 <= r_i <= n - 1`. For a basis element `e = x^Λ ∂_k`:
//!
//! * `WD(e) = wt(Λ) - deg(Λ) + n - k`
//! * `lev_i(e) = h_i · WD(e) + deg(Λ) - 1`
//!
//! `e` enters the chain at the least `i >= -1` with `lev_i(e) <= i`, and the
//! sets `N_i` collect everything that has entered by level `i`.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::partition::{enumerate_partitions, partition_counts, Partition};
use crate::ring::{BasisElement, RingContext};

/// The decomposition `i = (h - 1)(n - 1) + r`, `1 <= r <= n - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LevelIndex {
    pub i: i64,
    pub h: i64,
    pub r: i64,
}

pub fn decompose(n: u32, i: i64) -> Result<LevelIndex> {
    if n < 3 {
        return Err(Error::InvalidRank(n as i64));
    }
    if i < -1 {
        return Err(Error::Domain(format!("level index {i} is below -1")));
    }
    let step = n as i64 - 1;
    let h = (i - 1).div_euclid(step) + 1;
    let r = i - (h - 1) * step;
    debug_assert!((1..=step).contains(&r));
    Ok(LevelIndex { i, h, r })
}

/// Periodicity threshold `(n - 4)(n - 1)`: layer sizes follow the closed
/// form strictly above it.
pub fn threshold(n: u32) -> i64 {
    (n as i64 - 4) * (n as i64 - 1)
}

/// Weight-degree `wt(Λ) - deg(Λ) + n - k`.
pub fn wd(ctx: &RingContext, e: &BasisElement) -> i64 {
    let p = e.partition();
    p.weight() as i64 - p.degree() as i64 + ctx.n() as i64 - e.direction() as i64
}

/// Level function `h_i · WD(e) + deg(Λ) - 1`.
pub fn lev(ctx: &RingContext, i: i64, e: &BasisElement) -> Result<i64> {
    let idx = decompose(ctx.n(), i)?;
    Ok(lev_at(ctx, &idx, e))
}

pub fn lev_at(ctx: &RingContext, idx: &LevelIndex, e: &BasisElement) -> i64 {
    idx.h * wd(ctx, e) + e.partition().degree() as i64 - 1
}

/// Outcome of scanning for the level at which an element enters the chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Entry {
    /// Enters at this level (`-1` for the pure derivatives).
    At(i64),
    /// Provably never enters.
    Never,
    /// The caller's cap was hit before a decision.
    CapReached,
}

impl Entry {
    pub fn level(self) -> Option<i64> {
        match self {
            Entry::At(i) => Some(i),
            _ => None,
        }
    }
}

/// Upper bound on the entry level of an element with `WD <= n - 2`.
///
/// At `i = h(n - 1)` we have `lev_i - i = deg - 1 - h(n - 1 - WD)`, which is
/// non-positive once `h >= (deg - 1) / (n - 1 - WD)`.
fn entry_scan_bound(n: i64, wd: i64, deg: i64) -> i64 {
    let slack = n - 1 - wd;
    debug_assert!(slack >= 1);
    let need = if deg <= 1 {
        0
    } else {
        (deg - 1 + slack - 1) / slack
    };
    (n - 1) * (need + 2)
}

/// The least `i >= -1` with `lev_i(e) <= i`, scanning no further than `cap`.
pub fn entry_index(ctx: &RingContext, e: &BasisElement, cap: i64) -> Result<Entry> {
    ctx.check(e)?;
    let n = ctx.n() as i64;
    let w = wd(ctx, e);
    let deg = e.partition().degree() as i64;
    if w >= n {
        return Ok(Entry::Never);
    }
    if w == n - 1 {
        return Ok(if e.is_derivation() && e.direction() == 1 {
            Entry::At(-1)
        } else {
            Entry::Never
        });
    }
    let bound = entry_scan_bound(n, w, deg);
    let last = bound.min(cap);
    for i in -1..=last {
        let idx = decompose(ctx.n(), i)?;
        if lev_at(ctx, &idx, e) <= i {
            return Ok(Entry::At(i));
        }
    }
    if cap < bound {
        Ok(Entry::CapReached)
    } else {
        Err(Error::Internal(format!(
            "no entry level for {e} within the analytic bound {bound}"
        )))
    }
}

/// The layer `L_i`, split by direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerSet {
    pub i: i64,
    pub by_direction: BTreeMap<u32, Vec<BasisElement>>,
}

impl LayerSet {
    pub fn len(&self) -> usize {
        self.by_direction.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn elements(&self) -> impl Iterator<Item = &BasisElement> {
        self.by_direction.values().flatten()
    }

    pub fn to_set(&self) -> BTreeSet<BasisElement> {
        self.elements().cloned().collect()
    }

    pub fn count(&self, k: u32) -> usize {
        self.by_direction.get(&k).map_or(0, Vec::len)
    }
}

/// Enumerates `L_i` for `i >= 0` in closed form.
///
/// An element `x^Λ ∂_k` lies in `L_i` iff `n - k <= WD < r_i` and
/// `lev_i = i`. Writing the tail `θ_u = λ_{u+1}`, the first condition is
/// `Σ u·θ_u <= r_i + k - n - 1` and the second fixes
/// `λ_1 = i + 1 - h_i·WD - Σ θ_u`, which must be non-negative.
pub fn enumerate_layer(ctx: &RingContext, i: i64) -> Result<LayerSet> {
    if i < 0 {
        return Err(Error::Domain(format!("layers start at 0, got {i}")));
    }
    let n = ctx.n() as i64;
    let idx = decompose(ctx.n(), i)?;
    let mut by_direction = BTreeMap::new();
    let first_k = (n - idx.r + 1).max(2);
    for k in first_k..=n {
        let tail_weight = idx.r + k - n - 1;
        debug_assert!(tail_weight >= 0);
        assert!(
            tail_weight <= k - 2,
            "tail weight {tail_weight} exceeds part bound for k = {k}"
        );
        let mut layer = Vec::new();
        for tail in enumerate_partitions((k - 2) as u32, tail_weight as u64) {
            assert!(tail.max_part() as i64 <= k - 2);
            let w = tail.weight() as i64 + n - k;
            let ones = i + 1 - idx.h * w - tail.degree() as i64;
            if ones < 0 {
                continue;
            }
            let ones = u32::try_from(ones).map_err(|_| Error::Overflow("multiplicity"))?;
            let mut lambda = Partition::from_pairs(tail.iter().map(|(u, m)| (u + 1, m)))?;
            lambda.add(1, ones)?;
            layer.push(BasisElement::new(ctx, lambda, k as u32)?);
        }
        if !layer.is_empty() {
            layer.sort();
            by_direction.insert(k as u32, layer);
        }
    }
    Ok(LayerSet { i, by_direction })
}

/// `N_i = {∂_1, ..., ∂_n} ∪ L_0 ∪ ... ∪ L_i`.
pub fn enumerate_chain_set(ctx: &RingContext, i: i64) -> Result<BTreeSet<BasisElement>> {
    if i < -1 {
        return Err(Error::Domain(format!("chain starts at -1, got {i}")));
    }
    let mut out: BTreeSet<_> = (1..=ctx.n()).map(BasisElement::derivation).collect();
    for j in 0..=i {
        out.extend(enumerate_layer(ctx, j)?.elements().cloned());
    }
    Ok(out)
}

/// All of `N_{-1}, N_0, ..., N_{i_max}`; entry `p` holds `N_{p - 1}`.
pub fn enumerate_chain(ctx: &RingContext, i_max: i64) -> Result<Vec<BTreeSet<BasisElement>>> {
    if i_max < -1 {
        return Err(Error::Domain(format!("chain starts at -1, got {i_max}")));
    }
    let mut current = enumerate_chain_set(ctx, -1)?;
    let mut out = vec![current.clone()];
    for j in 0..=i_max {
        current.extend(enumerate_layer(ctx, j)?.elements().cloned());
        out.push(current.clone());
    }
    Ok(out)
}

/// Multiplication by `x_1^{n - 1 - WD(e)}`.
pub fn period_map(ctx: &RingContext, e: &BasisElement) -> Result<BasisElement> {
    ctx.check(e)?;
    let w = wd(ctx, e);
    let pad = ctx.n() as i64 - 1 - w;
    if pad < 0 {
        return Err(Error::Domain(format!(
            "period map needs WD <= n - 1, {e} has WD {w}"
        )));
    }
    let mut partition = e.partition().clone();
    partition.add(1, pad as u32)?;
    BasisElement::new(ctx, partition, e.direction())
}

/// Closed-form sizes above the threshold: `|L_i ∩ B_k| = b_{r_i + k - n - 1}`
/// for every `k`, and `|L_i| = c_{r_i - 1}`.
pub fn predicted_sizes(n: u32, i: i64) -> Result<(BTreeMap<u32, u64>, u64)> {
    let idx = decompose(n, i)?;
    if i <= threshold(n) {
        return Err(Error::Domain(format!(
            "size formula holds for i > {}, got i = {i}",
            threshold(n)
        )));
    }
    let counts = partition_counts(n as usize)?;
    let n = n as i64;
    let by_k = (1..=n)
        .map(|k| (k as u32, counts.b_at(idx.r + k - n - 1)))
        .collect();
    Ok((by_k, counts.c_at(idx.r - 1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: i64) -> RingContext {
        RingContext::new(n).unwrap()
    }

    fn el(pairs: &[(u32, u32)], k: u32) -> BasisElement {
        BasisElement::from_parts(Partition::from_pairs(pairs.iter().copied()).unwrap(), k).unwrap()
    }

    #[test]
    fn decompositions() {
        assert_eq!(decompose(5, 7).unwrap(), LevelIndex { i: 7, h: 2, r: 3 });
        assert_eq!(decompose(5, -1).unwrap(), LevelIndex { i: -1, h: 0, r: 3 });
        assert_eq!(decompose(3, 0).unwrap(), LevelIndex { i: 0, h: 0, r: 2 });
        assert!(decompose(5, -2).is_err());
        for n in 3..9 {
            assert_eq!(decompose(n, -1).unwrap().h, 0);
            assert_eq!(decompose(n, 0).unwrap().h, 0);
        }
    }

    #[test]
    fn weight_degree_values() {
        assert_eq!(wd(&ctx(5), &el(&[], 1)), 4);
        assert_eq!(wd(&ctx(5), &el(&[(1, 7)], 5)), 0);
        assert_eq!(wd(&ctx(3), &el(&[(2, 3)], 3)), 3);
    }

    #[test]
    fn level_values() {
        for k in 1..=5 {
            assert_eq!(lev(&ctx(5), -1, &el(&[], k)).unwrap(), -1);
        }
        assert_eq!(lev(&ctx(5), 6, &el(&[(1, 7)], 5)).unwrap(), 6);
        assert_eq!(lev(&ctx(3), 0, &el(&[(1, 1)], 2)).unwrap(), 0);
    }

    #[test]
    fn entry_levels() {
        assert_eq!(
            entry_index(&ctx(3), &el(&[], 3), 100).unwrap(),
            Entry::At(-1)
        );
        assert_eq!(
            entry_index(&ctx(5), &el(&[(1, 7)], 5), 100).unwrap(),
            Entry::At(6)
        );
        assert_eq!(
            entry_index(&ctx(3), &el(&[(2, 3)], 3), 100).unwrap(),
            Entry::Never
        );
        assert_eq!(
            entry_index(&ctx(5), &el(&[(1, 7)], 5), 3).unwrap(),
            Entry::CapReached
        );
    }

    #[test]
    fn wd_n_minus_one_only_d1_enters() {
        let c = ctx(4);
        assert_eq!(entry_index(&c, &el(&[], 1), 0).unwrap(), Entry::At(-1));
        // x_2^2 ∂_3: WD = 2 + 1 = n - 1 but it is not ∂_1
        assert_eq!(
            entry_index(&c, &el(&[(2, 2)], 3), 1000).unwrap(),
            Entry::Never
        );
    }

    #[test]
    fn layers_from_closed_form() {
        let c5 = ctx(5);
        let l5 = enumerate_layer(&c5, 5).unwrap();
        assert_eq!(l5.to_set(), BTreeSet::from([el(&[(1, 6)], 5)]));

        let l6 = enumerate_layer(&c5, 6).unwrap();
        assert_eq!(
            l6.by_direction[&5],
            vec![el(&[(1, 4), (2, 1)], 5), el(&[(1, 7)], 5)]
        );
        assert_eq!(l6.by_direction[&4], vec![el(&[(1, 5)], 4)]);
        assert_eq!(l6.len(), 3);

        let l0 = enumerate_layer(&ctx(3), 0).unwrap();
        assert_eq!(
            l0.to_set(),
            BTreeSet::from([el(&[(1, 1)], 2), el(&[(1, 1)], 3), el(&[(2, 1)], 3)])
        );
        assert!(enumerate_layer(&c5, -1).is_err());
    }

    #[test]
    fn chain_sets() {
        let c3 = ctx(3);
        assert_eq!(
            enumerate_chain_set(&c3, -1).unwrap(),
            BTreeSet::from([el(&[], 1), el(&[], 2), el(&[], 3)])
        );
        assert_eq!(enumerate_chain_set(&c3, 0).unwrap().len(), 6);
        let c5 = ctx(5);
        assert_eq!(
            enumerate_chain_set(&c5, 5).unwrap().len(),
            enumerate_chain_set(&c5, 4).unwrap().len() + 1
        );
        let chain = enumerate_chain(&c5, 6).unwrap();
        assert_eq!(chain.len(), 8);
        assert_eq!(chain[7], enumerate_chain_set(&c5, 6).unwrap());
    }

    #[test]
    fn period_map_values() {
        let c5 = ctx(5);
        assert_eq!(period_map(&c5, &el(&[], 5)).unwrap(), el(&[(1, 4)], 5));
        assert_eq!(
            period_map(&c5, &el(&[(1, 6)], 5)).unwrap(),
            el(&[(1, 10)], 5)
        );
        assert!(matches!(
            period_map(&ctx(3), &el(&[(2, 3)], 3)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn predicted_values() {
        let (by_k, total) = predicted_sizes(5, 8).unwrap();
        assert_eq!(decompose(5, 8).unwrap().r, 4);
        assert_eq!(
            by_k,
            BTreeMap::from([(1, 0), (2, 1), (3, 2), (4, 4), (5, 7)])
        );
        assert_eq!(total, 14);
        assert_eq!(predicted_sizes(5, 5).unwrap().1, 1);
        let (by_k, total) = predicted_sizes(3, 0).unwrap();
        assert_eq!(by_k, BTreeMap::from([(1, 0), (2, 1), (3, 2)]));
        assert_eq!(total, 3);
        assert!(matches!(predicted_sizes(5, 4), Err(Error::Domain(_))));
    }
}
