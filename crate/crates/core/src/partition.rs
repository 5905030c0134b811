//! Integer partitions stored as sparse part → multiplicity lists, their
//! enumeration in a fixed canonical order, and the counting sequences
//! a (partition numbers), b (first partial sums) and c (second partial sums).

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A finite multiset of positive parts.
///
/// Stored as `(part, multiplicity)` pairs sorted by part, with no zero
/// parts and no zero multiplicities. The empty list is the empty partition.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<(u32, u32)>,
}

impl Partition {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a partition from `(part, multiplicity)` pairs in any order.
    /// Repeated parts accumulate; zero multiplicities are dropped.
    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        let mut p = Self::empty();
        for (part, mult) in pairs {
            if part == 0 {
                return Err(Error::Domain("partition parts must be positive".into()));
            }
            p.add(part, mult)?;
        }
        Ok(p)
    }

    /// Builds a partition from a dense multiplicity vector, where entry `j`
    /// is the multiplicity of part `j + 1`.
    pub fn from_multiplicities(mults: &[u32]) -> Self {
        let parts = mults
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(j, &m)| (j as u32 + 1, m))
            .collect();
        Self { parts }
    }

    pub fn multiplicity(&self, part: u32) -> u32 {
        match self.parts.binary_search_by_key(&part, |&(p, _)| p) {
            Ok(idx) => self.parts[idx].1,
            Err(_) => 0,
        }
    }

    /// Adds `count` copies of `part`.
    pub fn add(&mut self, part: u32, count: u32) -> Result<()> {
        debug_assert!(part > 0);
        if count == 0 {
            return Ok(());
        }
        match self.parts.binary_search_by_key(&part, |&(p, _)| p) {
            Ok(idx) => {
                let m = &mut self.parts[idx].1;
                *m = m
                    .checked_add(count)
                    .ok_or(Error::Overflow("multiplicity"))?;
            }
            Err(idx) => self.parts.insert(idx, (part, count)),
        }
        Ok(())
    }

    /// Removes one copy of `part`; returns `false` if the part is absent.
    pub fn remove_one(&mut self, part: u32) -> bool {
        match self.parts.binary_search_by_key(&part, |&(p, _)| p) {
            Ok(idx) => {
                self.parts[idx].1 -= 1;
                if self.parts[idx].1 == 0 {
                    self.parts.remove(idx);
                }
                true
            }
            Err(_) => false,
        }
    }

    /// Multiset union.
    pub fn merged(&self, other: &Partition) -> Result<Partition> {
        let mut out = self.clone();
        for &(part, mult) in &other.parts {
            out.add(part, mult)?;
        }
        Ok(out)
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Sum of `part * multiplicity`.
    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|&(p, m)| p as u64 * m as u64).sum()
    }

    /// Number of parts counted with multiplicity.
    pub fn degree(&self) -> u64 {
        self.parts.iter().map(|&(_, m)| m as u64).sum()
    }

    /// Largest part, or 0 for the empty partition.
    pub fn max_part(&self) -> u32 {
        self.parts.last().map_or(0, |&(p, _)| p)
    }

    /// `(part, multiplicity)` pairs in ascending part order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.parts.iter().copied()
    }

    /// Dense multiplicity vector for parts `1..=len`.
    pub fn multiplicity_vector(&self, len: usize) -> Vec<u32> {
        let mut v = vec![0; len];
        for &(p, m) in &self.parts {
            if (p as usize) <= len {
                v[p as usize - 1] = m;
            }
        }
        v
    }
}

impl Ord for Partition {
    /// Canonical order: ascending weight; within a weight, multiplicity
    /// vectors compared from part 1 upward with the larger multiplicity
    /// first, so `(1,1)` precedes `(2)`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight().cmp(&other.weight()).then_with(|| {
            let (mut a, mut b) = (self.parts.iter().peekable(), other.parts.iter().peekable());
            loop {
                match (a.peek(), b.peek()) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Less,
                    (None, Some(_)) => return Ordering::Greater,
                    (Some(&&(pa, ma)), Some(&&(pb, mb))) => {
                        if pa != pb {
                            // the side with the smaller part has a positive
                            // multiplicity where the other has zero
                            return pa.cmp(&pb);
                        }
                        if ma != mb {
                            return mb.cmp(&ma);
                        }
                        a.next();
                        b.next();
                    }
                }
            }
        })
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("()");
        }
        f.write_str("(")?;
        for (idx, &(p, m)) in self.parts.iter().rev().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            if m == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{m}")?;
            }
        }
        f.write_str(")")
    }
}

/// All partitions with every part at most `max_part` and weight at most
/// `max_weight`, in canonical order. Includes the empty partition.
pub fn enumerate_partitions(max_part: u32, max_weight: u64) -> Vec<Partition> {
    fn fill(part: u32, budget: u64, current: &mut Vec<(u32, u32)>, out: &mut Vec<Partition>) {
        if part == 0 {
            let mut parts = current.clone();
            parts.reverse();
            out.push(Partition { parts });
            return;
        }
        let max_mult = budget / part as u64;
        for mult in 0..=max_mult {
            if mult > 0 {
                current.push((part, mult as u32));
            }
            fill(part - 1, budget - mult * part as u64, current, out);
            if mult > 0 {
                current.pop();
            }
        }
    }

    let mut out = Vec::new();
    let top = max_part.min(max_weight.min(u32::MAX as u64) as u32);
    fill(top, max_weight, &mut Vec::new(), &mut out);
    out.sort_unstable();
    out
}

/// Partition numbers and their first and second partial sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTriple {
    pub a: Vec<u64>,
    pub b: Vec<u64>,
    pub c: Vec<u64>,
}

impl CountTriple {
    /// `b[idx]`, or 0 for a negative index.
    pub fn b_at(&self, idx: i64) -> u64 {
        usize::try_from(idx)
            .ok()
            .and_then(|i| self.b.get(i))
            .copied()
            .unwrap_or(0)
    }

    /// `c[idx]`, or 0 for a negative index.
    pub fn c_at(&self, idx: i64) -> u64 {
        usize::try_from(idx)
            .ok()
            .and_then(|i| self.c.get(i))
            .copied()
            .unwrap_or(0)
    }
}

/// Exact a_0..=a_max by the coin-change recurrence, with
/// b_n = a_0 + ... + a_n and c_n = b_0 + ... + b_n.
pub fn partition_counts(max_n: usize) -> Result<CountTriple> {
    let mut a = vec![0u64; max_n + 1];
    a[0] = 1;
    for part in 1..=max_n {
        for total in part..=max_n {
            a[total] = a[total]
                .checked_add(a[total - part])
                .ok_or(Error::Overflow("partition count"))?;
        }
    }
    let b = prefix_sums(&a)?;
    let c = prefix_sums(&b)?;
    Ok(CountTriple { a, b, c })
}

fn prefix_sums(xs: &[u64]) -> Result<Vec<u64>> {
    let mut acc = 0u64;
    xs.iter()
        .map(|&x| {
            acc = acc.checked_add(x).ok_or(Error::Overflow("partial sum"))?;
            Ok(acc)
        })
        .collect()
}
