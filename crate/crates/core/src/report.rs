//! Rank tables of the chain and their JSON, CSV and text renderings.
//!
//! The JSON layout is stable:
//!
//! ```text
//! {"n":int,"levels":[{"i":int,"h":int,"r":int,"by_k":{"<k>":int,...},"total":int,
//!   "predicted_by_k":object|null,"predicted_total":int|null,"oracle_total":int|null,
//!   "match_oracle":bool|null,"elements":{"<k>":[string,...]}|null}]}
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grading::{decompose, enumerate_layer, predicted_sizes, threshold, LayerSet};
use crate::oracle::{oracle_chain, OracleConfig};
use crate::partition::CountTriple;
use crate::ring::{BasisElement, RingContext};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Which route computes the layers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Analytic,
    Oracle,
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelRecord {
    pub i: i64,
    pub h: i64,
    pub r: i64,
    pub by_k: BTreeMap<u32, u64>,
    pub total: u64,
    pub predicted_by_k: Option<BTreeMap<u32, u64>>,
    pub predicted_total: Option<u64>,
    pub oracle_total: Option<u64>,
    pub match_oracle: Option<bool>,
    pub elements: Option<BTreeMap<u32, Vec<String>>>,
    /// Per-direction oracle counts, used by the CSV rendering only.
    #[serde(skip)]
    pub oracle_by_k: Option<BTreeMap<u32, u64>>,
}

impl LevelRecord {
    /// Whether a closed-form prediction is present and disagrees.
    pub fn prediction_mismatch(&self) -> bool {
        match (&self.predicted_by_k, self.predicted_total) {
            (Some(by_k), Some(total)) => by_k != &self.by_k || total != self.total,
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    pub n: u32,
    pub levels: Vec<LevelRecord>,
}

fn counts_by_k(n: u32, layer: &BTreeSet<BasisElement>) -> BTreeMap<u32, u64> {
    let mut out: BTreeMap<u32, u64> = (1..=n).map(|k| (k, 0)).collect();
    for e in layer {
        *out.entry(e.direction()).or_default() += 1;
    }
    out
}

fn listing(layer: &BTreeSet<BasisElement>) -> BTreeMap<u32, Vec<String>> {
    let mut out: BTreeMap<u32, Vec<String>> = BTreeMap::new();
    for e in layer {
        out.entry(e.direction()).or_default().push(e.to_string());
    }
    out
}

/// Builds the rank table for levels `0..=i_max`.
pub fn build_chain_report(
    ctx: &RingContext,
    i_max: i64,
    method: Method,
    margin: u64,
    with_elements: bool,
) -> Result<ChainReport> {
    if i_max < 0 {
        return Err(Error::Domain(format!(
            "i_max must be non-negative, got {i_max}"
        )));
    }
    let n = ctx.n();
    let oracle_layers = match method {
        Method::Analytic => None,
        Method::Oracle | Method::Both => {
            let cfg = OracleConfig {
                weight_cap_margin: margin,
                pure_mode: true,
            };
            let chain = oracle_chain(ctx, i_max, cfg)?;
            let layers: Vec<BTreeSet<BasisElement>> = chain
                .windows(2)
                .map(|w| w[1].difference(&w[0]).cloned().collect())
                .collect();
            Some(layers)
        }
    };

    let mut levels = Vec::new();
    for i in 0..=i_max {
        let idx = decompose(n, i)?;
        let oracle_layer = oracle_layers.as_ref().map(|l| &l[i as usize]);
        let layer: BTreeSet<BasisElement> = match (method, oracle_layer) {
            (Method::Oracle, Some(l)) => l.clone(),
            _ => enumerate_layer(ctx, i)?.to_set(),
        };
        let by_k = counts_by_k(n, &layer);
        let total = layer.len() as u64;
        let (predicted_by_k, predicted_total) = if i > threshold(n) {
            let (p, t) = predicted_sizes(n, i)?;
            (Some(p), Some(t))
        } else {
            (None, None)
        };
        let (oracle_total, match_oracle, oracle_by_k) = match oracle_layer {
            Some(o) => {
                let matched = (method == Method::Both).then(|| o == &layer);
                (Some(o.len() as u64), matched, Some(counts_by_k(n, o)))
            }
            None => (None, None, None),
        };
        levels.push(LevelRecord {
            i,
            h: idx.h,
            r: idx.r,
            by_k,
            total,
            predicted_by_k,
            predicted_total,
            oracle_total,
            match_oracle,
            elements: with_elements.then(|| listing(&layer)),
            oracle_by_k,
        });
    }
    Ok(ChainReport { n, levels })
}

impl ChainReport {
    pub fn oracle_mismatches(&self) -> Vec<i64> {
        self.levels
            .iter()
            .filter(|l| l.match_oracle == Some(false))
            .map(|l| l.i)
            .collect()
    }

    pub fn prediction_mismatches(&self) -> Vec<i64> {
        self.levels
            .iter()
            .filter(|l| l.prediction_mismatch())
            .map(|l| l.i)
            .collect()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Syntax {
            pos: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,i,h,r,k,count,predicted,oracle,match\n");
        let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
        for l in &self.levels {
            for (&k, &count) in &l.by_k {
                let predicted = l.predicted_by_k.as_ref().and_then(|p| p.get(&k).copied());
                let oracle = l.oracle_by_k.as_ref().and_then(|o| o.get(&k).copied());
                let matched = match (l.match_oracle, oracle) {
                    (Some(_), Some(o)) => (o == count).to_string(),
                    _ => String::new(),
                };
                let _ = writeln!(
                    out,
                    "{},{},{},{},{k},{count},{},{},{matched}",
                    self.n,
                    l.i,
                    l.h,
                    l.r,
                    opt(predicted),
                    opt(oracle)
                );
            }
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("n = {}\n", self.n);
        let _ = writeln!(
            out,
            "{:>4} {:>3} {:>3} {:>7} {:>9} {:>7} {:>5}  by_k",
            "i", "h", "r", "total", "predicted", "oracle", "match"
        );
        let dash = |v: Option<String>| v.unwrap_or_else(|| "-".to_string());
        for l in &self.levels {
            let by_k: Vec<String> = l
                .by_k
                .iter()
                .filter(|(_, &c)| c > 0)
                .map(|(k, c)| format!("{k}:{c}"))
                .collect();
            let flag = if l.prediction_mismatch() {
                "  (!) prediction mismatch"
            } else {
                ""
            };
            let _ = writeln!(
                out,
                "{:>4} {:>3} {:>3} {:>7} {:>9} {:>7} {:>5}  {}{flag}",
                l.i,
                l.h,
                l.r,
                l.total,
                dash(l.predicted_total.map(|v| v.to_string())),
                dash(l.oracle_total.map(|v| v.to_string())),
                dash(l.match_oracle.map(|v| v.to_string())),
                by_k.join(" "),
            );
            if let Some(elements) = &l.elements {
                for (k, list) in elements.iter().rev() {
                    let _ = writeln!(out, "       k={k}: {}", list.join(", "));
                }
            }
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }
}

/// The three counting sequences as printable rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeqReport {
    pub a: Vec<u64>,
    pub b: Vec<u64>,
    pub c: Vec<u64>,
}

impl From<CountTriple> for SeqReport {
    fn from(t: CountTriple) -> Self {
        Self {
            a: t.a,
            b: t.b,
            c: t.c,
        }
    }
}

impl SeqReport {
    pub fn render(&self, format: Format) -> String {
        let row =
            |xs: &[u64], sep: &str| xs.iter().map(u64::to_string).collect::<Vec<_>>().join(sep);
        match format {
            Format::Text => format!(
                "a {}\nb {}\nc {}\n",
                row(&self.a, " "),
                row(&self.b, " "),
                row(&self.c, " ")
            ),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut out = String::from("index,a,b,c\n");
                for idx in 0..self.a.len() {
                    let _ = writeln!(out, "{idx},{},{},{}", self.a[idx], self.b[idx], self.c[idx]);
                }
                out
            }
        }
    }
}

/// First index (up to `a.len() - 1`) present in `reference` whose value
/// differs from `a`, as `(index, computed, reference)`.
pub fn first_mismatch(a: &[u64], reference: &BTreeMap<u64, u64>) -> Option<(u64, u64, u64)> {
    reference
        .range(..a.len() as u64)
        .find(|(&idx, &val)| a[idx as usize] != val)
        .map(|(&idx, &val)| (idx, a[idx as usize], val))
}

/// Renders one layer, directions from `n` down.
pub fn render_layer(n: u32, layer: &LayerSet, format: Format) -> String {
    let idx = decompose(n, layer.i).expect("layer index is valid");
    match format {
        Format::Text => {
            let mut out = format!("n = {n}, i = {}, h = {}, r = {}\n", layer.i, idx.h, idx.r);
            for (k, list) in layer.by_direction.iter().rev() {
                let names: Vec<String> = list.iter().map(ToString::to_string).collect();
                let _ = writeln!(out, "k={k}: {}", names.join(", "));
            }
            out
        }
        Format::Json => {
            let layers: BTreeMap<String, Vec<String>> = layer
                .by_direction
                .iter()
                .map(|(k, list)| {
                    (
                        k.to_string(),
                        list.iter().map(ToString::to_string).collect(),
                    )
                })
                .collect();
            let value = serde_json::json!({
                "n": n, "i": layer.i, "h": idx.h, "r": idx.r, "layers": layers,
            });
            let mut s = serde_json::to_string_pretty(&value).expect("layer serializes");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut out = String::from("n,i,k,element\n");
            for (k, list) in layer.by_direction.iter().rev() {
                for e in list {
                    let _ = writeln!(out, "{n},{},{k},{e}", layer.i);
                }
            }
            out
        }
    }
}
