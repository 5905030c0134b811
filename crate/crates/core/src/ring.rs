//! The integral Lie ring of partitions of rank n.
//!
//! A basis element `x^Λ ∂_k` pairs a power monomial `x^Λ = Π x_j^{λ_j}`
//! with a formal derivative `∂_k`, and is valid when `1 <= k <= n` and every
//! part of `Λ` is at most `k - 1`. On basis elements the bracket is
//!
//! ```text
//! [x^Λ ∂_k, x^Θ ∂_j] =  λ_j · x^{Λ - e_j + Θ} ∂_k    if j < k
//!                    = -θ_k · x^{Λ + Θ - e_k} ∂_j    if j > k
//!                    =  0                            if j = k
//! ```
//!
//! and is extended bilinearly to [`RingElement`]s.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::partition::{enumerate_partitions, Partition};

/// Carries the rank `n` that every operation is evaluated against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RingContext {
    n: u32,
}

impl RingContext {
    pub fn new(n: i64) -> Result<Self> {
        if n < 3 || n > u32::MAX as i64 {
            return Err(Error::InvalidRank(n));
        }
        Ok(Self { n: n as u32 })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Checks that `e` is a valid basis element of this ring.
    pub fn check(&self, e: &BasisElement) -> Result<()> {
        if e.direction == 0 || e.direction > self.n {
            return Err(Error::ContextMismatch {
                element: e.to_string(),
                n: self.n,
            });
        }
        Ok(())
    }
}

/// The basis element `x^Λ ∂_k`.
///
/// Ordered by direction, then by the canonical partition order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisElement {
    direction: u32,
    partition: Partition,
}

impl BasisElement {
    pub fn new(ctx: &RingContext, partition: Partition, direction: u32) -> Result<Self> {
        let e = Self::from_parts(partition, direction)?;
        ctx.check(&e)?;
        Ok(e)
    }

    /// Builds `x^Λ ∂_k` without a rank, checking only `max_part(Λ) < k`.
    pub fn from_parts(partition: Partition, direction: u32) -> Result<Self> {
        if direction == 0 {
            return Err(Error::InvalidBasisElement(
                "direction must be at least 1".into(),
            ));
        }
        if partition.max_part() >= direction {
            return Err(Error::InvalidBasisElement(format!(
                "part {} is not below direction {direction}",
                partition.max_part()
            )));
        }
        Ok(Self {
            direction,
            partition,
        })
    }

    /// The pure derivative `∂_k`.
    pub fn derivation(direction: u32) -> Self {
        assert!(direction >= 1, "directions start at 1");
        Self {
            direction,
            partition: Partition::empty(),
        }
    }

    pub fn direction(&self) -> u32 {
        self.direction
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn into_partition(self) -> Partition {
        self.partition
    }

    pub fn is_derivation(&self) -> bool {
        self.partition.is_empty()
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (part, mult) in self.partition.iter() {
            if mult == 1 {
                write!(f, "x{part}*")?;
            } else {
                write!(f, "x{part}^{mult}*")?;
            }
        }
        write!(f, "d{}", self.direction)
    }
}

/// All basis elements with `weight(Λ) <= max_weight`, ordered by direction
/// and then by partition.
pub fn basis_enumerate(ctx: &RingContext, max_weight: u64) -> Vec<BasisElement> {
    (1..=ctx.n)
        .flat_map(|k| {
            enumerate_partitions(k - 1, max_weight)
                .into_iter()
                .map(move |partition| BasisElement {
                    direction: k,
                    partition,
                })
        })
        .collect()
}

/// A basis-level bracket: `None` is the zero bracket.
pub type BasisBracket =
    fn(&RingContext, &BasisElement, &BasisElement) -> Result<Option<(i64, BasisElement)>>;

/// Bracket of two basis elements.
pub fn bracket_basis(
    ctx: &RingContext,
    left: &BasisElement,
    right: &BasisElement,
) -> Result<Option<(i64, BasisElement)>> {
    ctx.check(left)?;
    ctx.check(right)?;
    let (k, j) = (left.direction, right.direction);
    if j < k {
        let coeff = left.partition.multiplicity(j);
        if coeff == 0 {
            return Ok(None);
        }
        let mut lambda = left.partition.clone();
        lambda.remove_one(j);
        let partition = lambda.merged(&right.partition)?;
        debug_assert!(partition.max_part() < k);
        Ok(Some((
            coeff as i64,
            BasisElement {
                direction: k,
                partition,
            },
        )))
    } else if j > k {
        let coeff = right.partition.multiplicity(k);
        if coeff == 0 {
            return Ok(None);
        }
        let mut theta = right.partition.clone();
        theta.remove_one(k);
        let partition = left.partition.merged(&theta)?;
        debug_assert!(partition.max_part() < j);
        Ok(Some((
            -(coeff as i64),
            BasisElement {
                direction: j,
                partition,
            },
        )))
    } else {
        Ok(None)
    }
}

/// A finite integer combination of basis elements; zero is the empty map.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RingElement {
    terms: BTreeMap<BasisElement, i64>,
}

impl RingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_basis(e: BasisElement) -> Self {
        Self::term(1, e)
    }

    pub fn term(coeff: i64, e: BasisElement) -> Self {
        let mut out = Self::zero();
        out.terms.insert(e, coeff);
        out.terms.retain(|_, c| *c != 0);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&BasisElement, i64)> {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    pub fn coefficient(&self, e: &BasisElement) -> i64 {
        self.terms.get(e).copied().unwrap_or(0)
    }

    pub fn support(&self) -> impl Iterator<Item = &BasisElement> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `coeff · e` in place.
    pub fn add_term(&mut self, coeff: i64, e: BasisElement) -> Result<()> {
        if coeff == 0 {
            return Ok(());
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                let sum = o
                    .get()
                    .checked_add(coeff)
                    .ok_or(Error::Overflow("coefficient"))?;
                if sum == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &RingElement) -> Result<RingElement> {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(c, e.clone())?;
        }
        Ok(out)
    }

    pub fn checked_scale(&self, factor: i64) -> Result<RingElement> {
        let mut out = RingElement::zero();
        for (e, c) in self.terms() {
            let c = c
                .checked_mul(factor)
                .ok_or(Error::Overflow("coefficient"))?;
            out.add_term(c, e.clone())?;
        }
        Ok(out)
    }

    pub fn negated(&self) -> Result<RingElement> {
        self.checked_scale(-1)
    }
}

impl FromIterator<(BasisElement, i64)> for RingElement {
    /// Collects terms, panicking on coefficient overflow.
    fn from_iter<T: IntoIterator<Item = (BasisElement, i64)>>(iter: T) -> Self {
        let mut out = RingElement::zero();
        for (e, c) in iter {
            out.add_term(c, e).expect("coefficient overflow");
        }
        out
    }
}

/// Bilinear extension of [`bracket_basis`].
pub fn bracket(ctx: &RingContext, x: &RingElement, y: &RingElement) -> Result<RingElement> {
    bracket_with(ctx, x, y, bracket_basis)
}

/// Bilinear extension of an arbitrary basis-level bracket.
pub fn bracket_with(
    ctx: &RingContext,
    x: &RingElement,
    y: &RingElement,
    basis: BasisBracket,
) -> Result<RingElement> {
    let mut out = RingElement::zero();
    for (a, ca) in x.terms() {
        for (b, cb) in y.terms() {
            if let Some((c, e)) = basis(ctx, a, b)? {
                let coeff = ca
                    .checked_mul(cb)
                    .and_then(|v| v.checked_mul(c))
                    .ok_or(Error::Overflow("bracket coefficient"))?;
                out.add_term(coeff, e)?;
            }
        }
    }
    Ok(out)
}

/// Whether `x` lies in the free module spanned by `basis`.
pub fn in_span(x: &RingElement, basis: &BTreeSet<BasisElement>) -> bool {
    x.support().all(|e| basis.contains(e))
}
