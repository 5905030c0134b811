//! Layers L_i ∩ B_k of rank 5 for i >= 5, as closed-form monomial lists.
//!
//! Each entry is `(k, tail, x1)` where the element is `x1^e * x^tail * d_k`
//! and `e = i + offset - h_mult * h` (or `h_1` when `uses_h1` is set).

use std::collections::BTreeSet;

use idealizer_core::{decompose, BasisElement, Partition};

#[derive(Clone, Copy, Debug)]
pub struct Exponent {
    pub offset: i64,
    pub h_mult: i64,
    pub uses_h1: bool,
}

const fn e(offset: i64, h_mult: i64) -> Exponent {
    Exponent {
        offset,
        h_mult,
        uses_h1: false,
    }
}

pub type Entry = (u32, &'static [(u32, u32)], Exponent);

/// Rows by `r = 1..=4`, exactly as they are usually printed.
pub const PRINTED: [&[Entry]; 4] = [
    &[(5, &[], e(1, 0))],
    &[
        (5, &[], e(1, 0)),
        (5, &[(2, 1)], e(0, 1)),
        (4, &[], e(1, 1)),
    ],
    &[
        (5, &[], e(1, 0)),
        (5, &[(2, 1)], e(0, 1)),
        (5, &[(2, 2)], e(1, 2)),
        (5, &[(3, 1)], e(0, 2)),
        (4, &[], e(1, 1)),
        (4, &[(2, 1)], e(0, 2)),
        (3, &[], e(1, 2)),
    ],
    &[
        (5, &[], e(1, 0)),
        (5, &[(2, 1)], e(0, 1)),
        (5, &[(2, 2)], e(1, 2)),
        (5, &[(3, 1)], e(0, 2)),
        (5, &[(2, 3)], e(-2, 3)),
        (5, &[(2, 1), (3, 1)], e(-1, 3)),
        (5, &[(4, 1)], e(0, 3)),
        (
            4,
            &[],
            Exponent {
                offset: 1,
                h_mult: 1,
                uses_h1: true,
            },
        ),
        (4, &[(2, 1)], e(0, 2)),
        (4, &[(2, 2)], e(1, 3)),
        (4, &[(3, 1)], e(0, 3)),
        (3, &[], e(1, 2)),
        (3, &[(2, 1)], e(1, 3)),
        (2, &[], e(1, 3)),
    ],
];

/// Same rows with every exponent solving `lev_i = i`.
pub const CORRECTED: [&[Entry]; 4] = [
    &[(5, &[], e(1, 0))],
    &[
        (5, &[], e(1, 0)),
        (5, &[(2, 1)], e(0, 1)),
        (4, &[], e(1, 1)),
    ],
    &[
        (5, &[], e(1, 0)),
        (5, &[(2, 1)], e(0, 1)),
        (5, &[(2, 2)], e(-1, 2)),
        (5, &[(3, 1)], e(0, 2)),
        (4, &[], e(1, 1)),
        (4, &[(2, 1)], e(0, 2)),
        (3, &[], e(1, 2)),
    ],
    &[
        (5, &[], e(1, 0)),
        (5, &[(2, 1)], e(0, 1)),
        (5, &[(2, 2)], e(-1, 2)),
        (5, &[(3, 1)], e(0, 2)),
        (5, &[(2, 3)], e(-2, 3)),
        (5, &[(2, 1), (3, 1)], e(-1, 3)),
        (5, &[(4, 1)], e(0, 3)),
        (4, &[], e(1, 1)),
        (4, &[(2, 1)], e(0, 2)),
        (4, &[(2, 2)], e(-1, 3)),
        (4, &[(3, 1)], e(0, 3)),
        (3, &[], e(1, 2)),
        (3, &[(2, 1)], e(0, 3)),
        (2, &[], e(1, 3)),
    ],
];

/// Instantiates one table at level `i >= 5`. Panics on a negative exponent.
pub fn instantiate(table: &[&[Entry]; 4], i: i64) -> BTreeSet<BasisElement> {
    let idx = decompose(5, i).unwrap();
    let h1 = decompose(5, 1).unwrap().h;
    table[(idx.r - 1) as usize]
        .iter()
        .map(|&(k, tail, x)| {
            let h = if x.uses_h1 { h1 } else { idx.h };
            let a = i + x.offset - x.h_mult * h;
            assert!(a >= 0, "negative x1 exponent at i = {i}");
            let mut pairs = tail.to_vec();
            if a > 0 {
                pairs.push((1, a as u32));
            }
            BasisElement::from_parts(Partition::from_pairs(pairs).unwrap(), k).unwrap()
        })
        .collect()
}
