//! The all-in-one check suite behind the `verify` command.
//!
//! Every check reports how many cases it examined and, on failure, the first
//! witness it found. Output is a deterministic function of the config.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grading::{
    decompose, entry_index, enumerate_chain, enumerate_layer, lev, lev_at, period_map,
    predicted_sizes, threshold, wd, Entry, LayerSet,
};
use crate::oracle::{
    commutator_witness, diff_levels, oracle_chain, verify_homogeneity, OracleConfig,
};
use crate::partition::{partition_counts, Partition};
use crate::report::Format;
use crate::ring::{
    basis_enumerate, bracket_basis, bracket_with, BasisBracket, BasisElement, RingContext,
    RingElement,
};

/// OEIS A026905 (Σ_{k=1}^{n} p(k)) and A085360, as they appear in the
/// commonly printed table of "first" and "second partial sums" of p(n). They
/// are offset against the cumulative sums that actually count the layers.
pub const SHIFTED_B_ROW: [u64; 15] = [1, 1, 3, 6, 11, 18, 29, 44, 66, 96, 138, 194, 271, 372, 507];
pub const SHIFTED_C_ROW: [u64; 15] = [
    1, 1, 4, 10, 21, 39, 68, 112, 178, 274, 412, 606, 877, 1249, 1756,
];

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_TRIALS: u64 = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub n: u32,
    pub i_max: i64,
    pub seed: u64,
    pub trials: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub cases: u64,
    pub witness: Option<String>,
}

impl CheckResult {
    fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            passed: true,
            cases: 0,
            witness: None,
        }
    }

    fn case(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            if self.passed {
                self.witness = Some(witness());
            }
            self.passed = false;
        }
    }

    fn error(name: &str, err: Error) -> Self {
        Self {
            name: name.to_string(),
            passed: false,
            cases: 0,
            witness: Some(err.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub config: VerifyConfig,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut out = String::from("check,passed,cases,witness\n");
                for c in &self.checks {
                    let witness = c.witness.as_deref().unwrap_or("").replace('"', "\"\"");
                    let _ = writeln!(out, "{},{},{},\"{witness}\"", c.name, c.passed, c.cases);
                }
                out
            }
            Format::Text => {
                let cfg = &self.config;
                let mut out = format!(
                    "verify n = {}, i_max = {}, seed = {}, trials = {}\n",
                    cfg.n, cfg.i_max, cfg.seed, cfg.trials
                );
                for c in &self.checks {
                    let status = if c.passed { "PASS" } else { "FAIL" };
                    let _ = writeln!(out, "[{status}] {:<28} {:>9} cases", c.name, c.cases);
                    if let Some(w) = &c.witness {
                        let _ = writeln!(out, "       witness: {w}");
                    }
                }
                let _ = writeln!(
                    out,
                    "{}",
                    if self.passed {
                        "all checks passed"
                    } else {
                        "FAILED"
                    }
                );
                out
            }
        }
    }
}

fn single(e: &BasisElement) -> RingElement {
    RingElement::from_basis(e.clone())
}

/// `[a, b] = -[b, a]` for every pair of basis elements of weight at most
/// `max_weight`.
pub fn check_antisymmetry(
    ctx: &RingContext,
    max_weight: u64,
    bracket: BasisBracket,
) -> CheckResult {
    let mut out = CheckResult::new("antisymmetry");
    let basis = basis_enumerate(ctx, max_weight);
    for a in &basis {
        for b in &basis {
            let ab = bracket(ctx, a, b);
            let ba = bracket(ctx, b, a);
            let ok = match (ab, ba) {
                (Ok(None), Ok(None)) => true,
                (Ok(Some((c1, e1))), Ok(Some((c2, e2)))) => e1 == e2 && c1 == -c2,
                _ => false,
            };
            out.case(ok, || format!("[{a}, {b}] vs [{b}, {a}]"));
        }
    }
    out
}

/// Jacobi identity on `triples` seeded random triples of basis elements with
/// weight at most `max_weight`.
pub fn check_jacobi(
    ctx: &RingContext,
    max_weight: u64,
    triples: u64,
    seed: u64,
    bracket: BasisBracket,
) -> CheckResult {
    let mut out = CheckResult::new("jacobi");
    // Uniform over (direction, weight) strata, then uniform within one. Plain
    // uniform sampling is dominated by heavy monomials that mostly commute.
    let mut strata: BTreeMap<(u32, u64), Vec<BasisElement>> = BTreeMap::new();
    for e in basis_enumerate(ctx, max_weight) {
        strata
            .entry((e.direction(), e.partition().weight()))
            .or_default()
            .push(e);
    }
    let strata: Vec<Vec<BasisElement>> = strata.into_values().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || {
        let stratum = strata.choose(&mut rng).expect("basis is nonempty");
        single(stratum.choose(&mut rng).expect("strata are nonempty"))
    };
    let br = |x: &RingElement, y: &RingElement| bracket_with(ctx, x, y, bracket);
    for _ in 0..triples {
        let (a, b, c) = (draw(), draw(), draw());
        let sum = (|| {
            let t1 = br(&a, &br(&b, &c)?)?;
            let t2 = br(&b, &br(&c, &a)?)?;
            let t3 = br(&c, &br(&a, &b)?)?;
            t1.checked_add(&t2)?.checked_add(&t3)
        })();
        let ok = matches!(&sum, Ok(s) if s.is_zero());
        out.case(ok, || {
            let show = |x: &RingElement| crate::expr::print_element(x);
            format!("({}, {}, {})", show(&a), show(&b), show(&c))
        });
    }
    out
}

fn grading_checks(ctx: &RingContext, max_weight: u64, i_max: i64) -> Result<Vec<CheckResult>> {
    let n = ctx.n() as i64;
    let basis = basis_enumerate(ctx, max_weight);

    let mut shift = CheckResult::new("level_shift");
    for e in &basis {
        let w = wd(ctx, e);
        for i in -1..=40 {
            let li = lev(ctx, i, e)?;
            let hi = decompose(ctx.n(), i)?.h;
            for j in -1..=40 {
                let hj = decompose(ctx.n(), j)?.h;
                shift.case(lev(ctx, j, e)? == li + (hj - hi) * w, || {
                    format!("{e} at i = {i}, j = {j}")
                });
            }
        }
    }

    let mut graded = CheckResult::new("bracket_grading");
    for a in &basis {
        for b in &basis {
            let Some((_, e)) = bracket_basis(ctx, a, b)? else {
                continue;
            };
            graded.case(wd(ctx, &e) == wd(ctx, a) + wd(ctx, b) - (n - 1), || {
                format!("WD of [{a}, {b}]")
            });
            for i in -1..=i_max.max(0) {
                let idx = decompose(ctx.n(), i)?;
                let expect = lev_at(ctx, &idx, a) + lev_at(ctx, &idx, b) - idx.h * (n - 1);
                graded.case(lev_at(ctx, &idx, &e) == expect, || {
                    format!("lev_{i} of [{a}, {b}]")
                });
            }
        }
    }

    let mut lower = CheckResult::new("wd_lower_bound");
    for e in &basis {
        let w = wd(ctx, e);
        let base = n - e.direction() as i64;
        let only_ones = e.partition().max_part() <= 1;
        lower.case(w >= base && ((w == base) == only_ones), || {
            format!("{e} has WD {w}")
        });
    }

    let mut reduction = CheckResult::new("level_reduction");
    let mut periodic = CheckResult::new("step_periodicity");
    for e in &basis {
        let levels: Vec<i64> = (-1..=30 + n)
            .map(|i| lev(ctx, i, e))
            .collect::<Result<_>>()?;
        let at = |i: i64| levels[(i + 1) as usize];
        for i in -1..=30 {
            if at(i) <= i {
                reduction.case((-1..=i).any(|j| at(j) == j), || format!("{e} at i = {i}"));
                periodic.case(
                    {
                        let j = i + n - 1;
                        at(j) <= j
                    },
                    || format!("{e} at i = {i}"),
                );
            }
        }
    }
    Ok(vec![shift, graded, lower, reduction, periodic])
}

fn layer_checks(ctx: &RingContext, i_max: i64) -> Result<Vec<CheckResult>> {
    let n = ctx.n();
    let nn = n as i64;
    let layers: Vec<LayerSet> = (0..=i_max + nn - 1)
        .map(|i| enumerate_layer(ctx, i))
        .collect::<Result<_>>()?;

    let mut consistency = CheckResult::new("layer_characterization");
    let mut bound = CheckResult::new("layer_wd_bound");
    let mut unique = CheckResult::new("pure_x1_uniqueness");
    let basis = basis_enumerate(ctx, (nn + i_max) as u64);
    let mut by_entry: BTreeMap<i64, BTreeSet<BasisElement>> = BTreeMap::new();
    for e in &basis {
        if let Entry::At(i) = entry_index(ctx, e, i64::MAX)? {
            by_entry.entry(i).or_default().insert(e.clone());
        }
    }
    for i in 0..=i_max {
        let idx = decompose(n, i)?;
        let layer = &layers[i as usize];
        let want = by_entry.remove(&i).unwrap_or_default();
        consistency.case(layer.to_set() == want, || {
            let got = layer.to_set();
            let missing: Vec<String> = want.difference(&got).map(ToString::to_string).collect();
            let extra: Vec<String> = got.difference(&want).map(ToString::to_string).collect();
            format!(
                "i = {i}: missing [{}], extra [{}]",
                missing.join(", "),
                extra.join(", ")
            )
        });
        for e in layer.elements() {
            bound.case(wd(ctx, e) < idx.r, || format!("{e} in L_{i}"));
            if e.partition().max_part() <= 1 {
                let t = e.partition().degree() as i64;
                let want_t = i - idx.h * (nn - e.direction() as i64) + 1;
                unique.case(t == want_t, || {
                    format!("{e} in L_{i}, expected exponent {want_t}")
                });
            }
        }
        for k in 1..(nn - idx.r + 1).max(1) {
            bound.case(layer.count(k as u32) == 0, || format!("L_{i} meets B_{k}"));
        }
        for k in 1..=n {
            let pure = layer.by_direction.get(&k).map_or(0, |l| {
                l.iter().filter(|e| e.partition().max_part() <= 1).count()
            });
            unique.case(pure <= 1, || {
                format!("L_{i} ∩ B_{k} has {pure} pure x_1 elements")
            });
        }
    }

    let mut remark = CheckResult::new("remark_elements");
    for u in 2..=n {
        for h in 1..=6u32 {
            let mut p = Partition::empty();
            p.add(1, h)?;
            p.add(u - 1, 1)?;
            let e = BasisElement::new(ctx, p, u)?;
            let target = h as i64 * (nn - 1);
            remark.case(entry_index(ctx, &e, i64::MAX)? == Entry::At(target), || {
                format!("{e} not in L_{target}")
            });
        }
    }

    let mut sizes = CheckResult::new("predicted_sizes");
    for i in (threshold(n) + 1).max(0)..=i_max {
        let (by_k, total) = predicted_sizes(n, i)?;
        let layer = &layers[i as usize];
        let ok = (1..=n).all(|k| layer.count(k) as u64 == by_k[&k]) && layer.len() as u64 == total;
        sizes.case(ok, || {
            format!("i = {i}: predicted {total}, found {}", layer.len())
        });
    }

    let mut period = CheckResult::new("period_map");
    for i in 0..=i_max {
        let source = &layers[i as usize];
        let target = layers[(i + nn - 1) as usize].to_set();
        let image: Vec<BasisElement> = source
            .elements()
            .map(|e| period_map(ctx, e))
            .collect::<Result<_>>()?;
        let image_set: BTreeSet<BasisElement> = image.iter().cloned().collect();
        let injective = image_set.len() == image.len();
        let into = image_set.is_subset(&target);
        let onto = image_set == target;
        let ok = injective && into && (i <= threshold(n) || onto);
        period.case(ok, || {
            format!(
                "i = {i}: injective {injective}, into {into}, onto {onto} ({} -> {})",
                source.len(),
                target.len()
            )
        });
    }
    Ok(vec![consistency, bound, unique, remark, sizes, period])
}

fn commutator_check(ctx: &RingContext, j_max: i64) -> Result<CheckResult> {
    let mut out = CheckResult::new("commutator_containment");
    for j in 0..=j_max {
        for i in -1..j {
            let w = commutator_witness(ctx, i, j)?;
            out.case(w.is_none(), || {
                let (a, b, e) = w.clone().expect("witness");
                format!("[{a}, {b}] gives {e} outside N_{}", j - 1)
            });
        }
    }
    Ok(out)
}

/// `x_2^3 ∂_3`, which has weight-degree `n` and so never enters the chain.
pub fn non_member(ctx: &RingContext) -> Result<BasisElement> {
    BasisElement::new(ctx, Partition::from_pairs([(2, 3)])?, 3)
}

fn oracle_checks(ctx: &RingContext, cfg: &VerifyConfig) -> Result<Vec<CheckResult>> {
    let n = ctx.n();
    let analytic = enumerate_chain(ctx, cfg.i_max)?;
    let pure = oracle_chain(ctx, cfg.i_max, OracleConfig::default())?;

    let mut equiv = CheckResult::new("oracle_equivalence");
    for d in diff_levels(&analytic, &pure) {
        equiv.case(d.is_empty(), || {
            format!(
                "level {}: missing {:?}, extra {:?}",
                d.level,
                names(&d.missing),
                names(&d.extra)
            )
        });
    }

    let wide = oracle_chain(
        ctx,
        cfg.i_max,
        OracleConfig {
            weight_cap_margin: n as u64,
            pure_mode: true,
        },
    )?;
    let mut robust = CheckResult::new("oracle_cap_robustness");
    for (p, (a, b)) in pure.iter().zip(&wide).enumerate() {
        robust.case(a == b, || {
            format!("level {} changes with margin {n}", p as i64 - 1)
        });
    }

    let mut homogeneity = CheckResult::new("homogeneity");
    for i in 0..=cfg.i_max.min(4) {
        let h_set = &pure[i as usize];
        let rep = verify_homogeneity(
            ctx,
            h_set,
            n as u64 + i as u64,
            cfg.trials,
            cfg.seed.wrapping_add(i as u64),
        )?;
        homogeneity.cases += rep.accepted_trials + rep.rejected_trials;
        if !rep.passed() && homogeneity.passed {
            homogeneity.passed = false;
            homogeneity.witness = rep.first_failure.map(|w| format!("H = N_{}: {w}", i - 1));
        }
    }

    let mut absent = CheckResult::new("non_membership");
    let x = non_member(ctx)?;
    for (p, level) in pure.iter().enumerate() {
        absent.case(!level.contains(&x), || {
            format!("{x} in oracle level {}", p as i64 - 1)
        });
    }
    let deep = enumerate_chain(ctx, 50)?;
    for (p, level) in deep.iter().enumerate() {
        absent.case(!level.contains(&x), || {
            format!("{x} in analytic level {}", p as i64 - 1)
        });
    }
    absent.case(wd(ctx, &x) >= n as i64, || {
        format!("WD({x}) = {}", wd(ctx, &x))
    });
    absent.case(entry_index(ctx, &x, 1000)? == Entry::Never, || {
        format!("{x} has an entry level")
    });
    Ok(vec![equiv, robust, homogeneity, absent])
}

fn names(xs: &[BasisElement]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

/// Layer counts for rank 5 at `r = 4` against the cumulative sums and the
/// offset OEIS rows: the former must fit, the latter must not.
pub fn check_shifted_rows() -> Result<CheckResult> {
    let mut out = CheckResult::new("shifted_oeis_rows");
    let ctx = RingContext::new(5)?;
    let counts = partition_counts(14)?;
    // i = 8 has h = 2, r = 4 and lies above the rank-5 threshold
    let layer = enumerate_layer(&ctx, 8)?;
    let by_k: Vec<u64> = (2..=5).map(|k| layer.count(k) as u64).collect();
    out.case(by_k == [1, 2, 4, 7], || {
        format!("counts by k = 2..5 are {by_k:?}")
    });
    out.case(
        by_k == [counts.b[0], counts.b[1], counts.b[2], counts.b[3]],
        || "b rows differ".into(),
    );
    out.case(layer.len() as u64 == counts.c[3], || {
        format!("|L_8| = {} vs c_3 = {}", layer.len(), counts.c[3])
    });
    out.case(layer.len() as u64 != SHIFTED_C_ROW[3], || {
        "shifted c row fits |L_8|".into()
    });
    out.case(by_k != SHIFTED_B_ROW[..4], || {
        "shifted b row fits the counts".into()
    });
    out.case(counts.b[..] != SHIFTED_B_ROW[..], || {
        "b equals the shifted row".into()
    });
    out.case(counts.c[..] != SHIFTED_C_ROW[..], || {
        "c equals the shifted row".into()
    });
    Ok(out)
}

type Section<'a> = (&'static str, Box<dyn Fn() -> Result<Vec<CheckResult>> + 'a>);

/// Runs every check for one rank.
pub fn run_verify(cfg: VerifyConfig) -> Result<VerifyReport> {
    let ctx = RingContext::new(cfg.n as i64)?;
    if cfg.i_max < 0 {
        return Err(Error::Domain(format!(
            "i_max must be non-negative, got {}",
            cfg.i_max
        )));
    }
    let mut checks = vec![
        check_antisymmetry(&ctx, 8, bracket_basis),
        check_jacobi(
            &ctx,
            12,
            cfg.trials.max(DEFAULT_TRIALS),
            cfg.seed,
            bracket_basis,
        ),
    ];
    let sections: [Section; 5] = [
        ("grading", Box::new(|| grading_checks(&ctx, 10, cfg.i_max))),
        ("layers", Box::new(|| layer_checks(&ctx, cfg.i_max))),
        (
            "commutators",
            Box::new(|| Ok(vec![commutator_check(&ctx, cfg.i_max.min(8))?])),
        ),
        ("oracle", Box::new(|| oracle_checks(&ctx, &cfg))),
        ("shifted_rows", Box::new(|| Ok(vec![check_shifted_rows()?]))),
    ];
    for (name, run) in sections {
        match run() {
            Ok(found) => checks.extend(found),
            Err(err) => checks.push(CheckResult::error(name, err)),
        }
    }
    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyReport {
        config: cfg,
        passed,
        checks,
    })
}
