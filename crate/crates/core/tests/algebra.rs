use std::collections::BTreeMap;

use idealizer_core::verify::{check_antisymmetry, check_jacobi};
use idealizer_core::{
    basis_enumerate, bracket, bracket_basis, parse_element, print_element, BasisElement, Partition,
    RingContext, RingElement,
};
use proptest::prelude::*;

/// A vector field `c * x^e * d_k` with dense exponents `e[0] = exp of x_1`.
type Dense = BTreeMap<(Vec<u32>, u32), i64>;

fn to_dense(n: u32, e: &BasisElement) -> (Vec<u32>, u32) {
    (e.partition().multiplicity_vector(n as usize), e.direction())
}

fn from_dense(d: &Dense) -> RingElement {
    d.iter()
        .filter(|(_, &c)| c != 0)
        .map(|((exps, k), &c)| {
            (
                BasisElement::from_parts(Partition::from_multiplicities(exps), *k).unwrap(),
                c,
            )
        })
        .fold(RingElement::zero(), |mut acc, (e, c)| {
            acc.add_term(c, e).unwrap();
            acc
        })
}

/// `d_var` of a monomial, as `(coefficient, exponents)`.
fn diff(exps: &[u32], var: u32) -> Option<(i64, Vec<u32>)> {
    let pos = var as usize - 1;
    let m = *exps.get(pos)?;
    (m > 0).then(|| {
        let mut out = exps.to_vec();
        out[pos] -= 1;
        (m as i64, out)
    })
}

fn mul(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `[f d_k, g d_j] = d_j(f) g d_k - f d_k(g) d_j` on dense monomials.
fn dense_bracket(n: u32, a: &BasisElement, b: &BasisElement) -> RingElement {
    let ((f, k), (g, j)) = (to_dense(n, a), to_dense(n, b));
    let mut out = Dense::new();
    if let Some((c, df)) = diff(&f, j) {
        *out.entry((mul(&df, &g), k)).or_default() += c;
    }
    if let Some((c, dg)) = diff(&g, k) {
        *out.entry((mul(&f, &dg), j)).or_default() -= c;
    }
    from_dense(&out)
}

#[test]
fn bracket_matches_dense_vector_fields() {
    for n in 3..=6 {
        let ctx = RingContext::new(n).unwrap();
        let basis = basis_enumerate(&ctx, 8);
        for a in &basis {
            for b in &basis {
                let ours = bracket(
                    &ctx,
                    &RingElement::from_basis(a.clone()),
                    &RingElement::from_basis(b.clone()),
                )
                .unwrap();
                assert_eq!(
                    ours,
                    dense_bracket(n as u32, a, b),
                    "[{a}, {b}] in rank {n}"
                );
            }
        }
    }
}

#[test]
fn antisymmetry_on_all_small_pairs() {
    for n in 3..=5 {
        let ctx = RingContext::new(n).unwrap();
        let r = check_antisymmetry(&ctx, 8, bracket_basis);
        assert!(r.passed && r.cases > 0, "{r:?}");
    }
}

#[test]
fn jacobi_on_seeded_triples() {
    for n in 3..=6 {
        let ctx = RingContext::new(n).unwrap();
        let r = check_jacobi(&ctx, 12, 1000, 42, bracket_basis);
        assert!(r.passed && r.cases == 1000, "{r:?}");
    }
}

fn flipped(
    ctx: &RingContext,
    a: &BasisElement,
    b: &BasisElement,
) -> idealizer_core::Result<Option<(i64, BasisElement)>> {
    Ok(bracket_basis(ctx, a, b)?.map(|(c, e)| {
        if a.direction() < b.direction() {
            (-c, e)
        } else {
            (c, e)
        }
    }))
}

#[test]
fn tampered_sign_is_caught() {
    let ctx = RingContext::new(4).unwrap();
    let anti = check_antisymmetry(&ctx, 8, flipped);
    let jac = check_jacobi(&ctx, 12, 1000, 42, flipped);
    assert!(!anti.passed || !jac.passed);
    assert!(anti.witness.is_some() || jac.witness.is_some());
}

fn arb_basis(n: u32) -> impl Strategy<Value = BasisElement> {
    (1..=n).prop_flat_map(|k| {
        proptest::collection::vec(0u32..4, (k - 1) as usize).prop_map(move |mults| {
            BasisElement::from_parts(Partition::from_multiplicities(&mults), k).unwrap()
        })
    })
}

fn arb_element(n: u32) -> impl Strategy<Value = RingElement> {
    proptest::collection::vec((-20i64..=20, arb_basis(n)), 0..6).prop_map(|terms| {
        let mut x = RingElement::zero();
        for (c, e) in terms {
            x.add_term(c, e).unwrap();
        }
        x
    })
}

fn rank_and(count: usize) -> impl Strategy<Value = (RingContext, Vec<RingElement>)> {
    (3u32..=6).prop_flat_map(move |n| {
        proptest::collection::vec(arb_element(n), count)
            .prop_map(move |xs| (RingContext::new(n as i64).unwrap(), xs))
    })
}

fn br(ctx: &RingContext, x: &RingElement, y: &RingElement) -> RingElement {
    bracket(ctx, x, y).unwrap()
}

proptest! {
    #[test]
    fn antisymmetric((ctx, xs) in rank_and(2)) {
        let (x, y) = (&xs[0], &xs[1]);
        prop_assert_eq!(br(&ctx, x, y), br(&ctx, y, x).negated().unwrap());
        prop_assert!(br(&ctx, x, x).is_zero());
    }

    #[test]
    fn jacobi((ctx, xs) in rank_and(3)) {
        let (x, y, z) = (&xs[0], &xs[1], &xs[2]);
        let sum = br(&ctx, x, &br(&ctx, y, z))
            .checked_add(&br(&ctx, y, &br(&ctx, z, x))).unwrap()
            .checked_add(&br(&ctx, z, &br(&ctx, x, y))).unwrap();
        prop_assert!(sum.is_zero());
    }

    #[test]
    fn bilinear((ctx, xs) in rank_and(3), s in -5i64..=5) {
        let (x, y, z) = (&xs[0], &xs[1], &xs[2]);
        let lhs = br(&ctx, &x.checked_scale(s).unwrap().checked_add(y).unwrap(), z);
        let rhs = br(&ctx, x, z).checked_scale(s).unwrap().checked_add(&br(&ctx, y, z)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn basis_bracket_coefficient_and_closure(n in 3u32..=6, seed in any::<u64>()) {
        let ctx = RingContext::new(n as i64).unwrap();
        let basis = basis_enumerate(&ctx, 7);
        let a = &basis[(seed % basis.len() as u64) as usize];
        let b = &basis[((seed / 7919) % basis.len() as u64) as usize];
        match bracket_basis(&ctx, a, b).unwrap() {
            None => {
                let (j, k) = (b.direction(), a.direction());
                let zero = j == k
                    || (j < k && a.partition().multiplicity(j) == 0)
                    || (j > k && b.partition().multiplicity(k) == 0);
                prop_assert!(zero);
            }
            Some((c, e)) => {
                prop_assert!(ctx.check(&e).is_ok());
                let (j, k) = (b.direction(), a.direction());
                let expected = if j < k { a.partition().multiplicity(j) as i64 } else { -(b.partition().multiplicity(k) as i64) };
                prop_assert_eq!(c, expected);
                prop_assert_eq!(e.partition().weight() + j.min(k) as u64, a.partition().weight() + b.partition().weight());
            }
        }
    }

    #[test]
    fn parse_print_round_trip((ctx, xs) in rank_and(1)) {
        let text = print_element(&xs[0]);
        prop_assert_eq!(parse_element(&ctx, &text).unwrap(), xs[0].clone());
        prop_assert_eq!(print_element(&parse_element(&ctx, &text).unwrap()), text);
    }

    #[test]
    fn matches_dense_oracle(n in 3u32..=6, a in arb_basis(6), b in arb_basis(6)) {
        prop_assume!(a.direction() <= n && b.direction() <= n);
        let ctx = RingContext::new(n as i64).unwrap();
        let ours = bracket(&ctx, &RingElement::from_basis(a.clone()), &RingElement::from_basis(b.clone())).unwrap();
        prop_assert_eq!(ours, dense_bracket(n, &a, &b));
    }
}
