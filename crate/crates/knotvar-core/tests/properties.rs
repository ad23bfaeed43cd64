//! Property tests for the algebraic invariants: field and group axioms,
//! ring axioms and the specialization homomorphism, power-map identities.

use knotvar_core::closedform;
use knotvar_core::exactpoly::{IntPoly, MotiveExpr};
use knotvar_core::ffield::{make_field, unity_root_count, unity_root_count_gcd, FieldCtx};
use knotvar_core::matgroups::GroupDescriptor;
use knotvar_core::repcount::{count_naive, count_power_fibers};
use num_bigint::BigInt;
use num_integer::gcd;
use num_traits::Zero;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn sample_fields() -> Vec<FieldCtx> {
    [
        (2u64, 2u32),
        (2, 3),
        (3, 1),
        (3, 2),
        (5, 1),
        (7, 1),
        (11, 1),
        (13, 1),
    ]
    .iter()
    .map(|&(p, k)| make_field(p, k).unwrap())
    .collect()
}

#[test]
fn frobenius_is_a_ring_endomorphism() {
    let mut rng = StdRng::seed_from_u64(7);
    for ctx in sample_fields() {
        for _ in 0..200 {
            let x = ctx.el(rng.gen_range(0..ctx.q));
            let y = ctx.el(rng.gen_range(0..ctx.q));
            assert_eq!(
                ctx.frobenius(ctx.add(x, y)),
                ctx.add(ctx.frobenius(x), ctx.frobenius(y))
            );
            assert_eq!(
                ctx.frobenius(ctx.mul(x, y)),
                ctx.mul(ctx.frobenius(x), ctx.frobenius(y))
            );
        }
    }
}

#[test]
fn unity_counts_match_gcd_up_to_4096() {
    // spot fields across the admissible range, including the largest
    for (p, k) in [(2u64, 6u32), (2, 12), (3, 7), (5, 4), (61, 1), (4093, 1)] {
        let ctx = make_field(p, k).unwrap();
        for l in 1..=30 {
            assert_eq!(
                unity_root_count(&ctx, l),
                unity_root_count_gcd(&ctx, l),
                "q = {}, l = {}",
                ctx.q,
                l
            );
        }
    }
}

#[test]
fn torsion_multiplicativity_for_coprime_orders() {
    for ctx in sample_fields() {
        for (m, n) in [(2u64, 3u64), (3, 5), (4, 5), (5, 7), (4, 9)] {
            assert_eq!(
                unity_root_count(&ctx, n * m),
                unity_root_count(&ctx, n) * unity_root_count(&ctx, m),
                "q = {} (m, n) = ({}, {})",
                ctx.q,
                m,
                n
            );
        }
    }
}

#[test]
fn group_axioms_sampled() {
    let mut rng = StdRng::seed_from_u64(11);
    for (p, k) in [(2u64, 2u32), (5, 1), (7, 1), (3, 2)] {
        let ctx = make_field(p, k).unwrap();
        let groups = [
            GroupDescriptor::gl1(&ctx),
            GroupDescriptor::agl1(&ctx),
            GroupDescriptor::gl2(&ctx),
            GroupDescriptor::agl2(&ctx),
        ];
        for d in groups {
            let elements: Vec<_> = d.elements().unwrap().collect();
            assert_eq!(elements.len() as u128, d.order());
            let id = d.identity();
            for _ in 0..1000 {
                let g = elements[rng.gen_range(0..elements.len())];
                let h = elements[rng.gen_range(0..elements.len())];
                let f = elements[rng.gen_range(0..elements.len())];
                assert_eq!(d.mul(&d.mul(&g, &h), &f), d.mul(&g, &d.mul(&h, &f)));
                assert_eq!(d.mul(&g, &id), g);
                assert_eq!(d.mul(&d.inverse(&g), &g), id);
            }
        }
    }
}

#[test]
fn enumeration_matches_order_formulas_up_to_16() {
    for (p, k) in [
        (2u64, 1u32),
        (3, 1),
        (2, 2),
        (5, 1),
        (7, 1),
        (2, 3),
        (3, 2),
        (11, 1),
        (13, 1),
        (2, 4),
    ] {
        let ctx = make_field(p, k).unwrap();
        let q = ctx.q as u128;
        let expected = [
            (GroupDescriptor::gl1(&ctx), q - 1),
            (GroupDescriptor::agl1(&ctx), q * (q - 1)),
            (GroupDescriptor::gl2(&ctx), (q * q - 1) * (q * q - q)),
            (
                GroupDescriptor::agl2(&ctx),
                q * q * (q * q - 1) * (q * q - q),
            ),
        ];
        for (d, want) in expected {
            assert_eq!(d.order(), want);
            if want <= 1 << 22 {
                assert_eq!(d.elements().unwrap().count() as u128, want);
            }
        }
    }
}

#[test]
fn pow_equals_iterated_multiplication() {
    let mut rng = StdRng::seed_from_u64(13);
    let ctx = make_field(5, 1).unwrap();
    for d in [
        GroupDescriptor::agl1(&ctx),
        GroupDescriptor::gl2(&ctx),
        GroupDescriptor::agl2(&ctx),
    ] {
        let elements: Vec<_> = d.elements().unwrap().collect();
        for _ in 0..200 {
            let g = elements[rng.gen_range(0..elements.len())];
            let mut acc = d.identity();
            for e in 0..=12u64 {
                assert_eq!(d.pow(&g, e), acc);
                acc = d.mul(&acc, &g);
            }
        }
    }
}

#[test]
fn count_is_symmetric_in_the_exponents() {
    for (p, k) in [(3u64, 1u32), (2, 2), (5, 1)] {
        let ctx = make_field(p, k).unwrap();
        for d in [GroupDescriptor::agl1(&ctx), GroupDescriptor::gl2(&ctx)] {
            for (n, m) in [(2u64, 3u64), (5, 3), (5, 7), (4, 9)] {
                assert_eq!(
                    count_power_fibers(&d, n, m).unwrap(),
                    count_power_fibers(&d, m, n).unwrap()
                );
            }
        }
    }
}

#[test]
fn naive_matches_fibers_on_sampled_groups() {
    for (p, k) in [(2u64, 2u32), (7, 1), (3, 2)] {
        let ctx = make_field(p, k).unwrap();
        let d = GroupDescriptor::agl1(&ctx);
        for (n, m) in [(1u64, 1u64), (2, 3), (5, 3)] {
            assert_eq!(
                count_naive(&d, n, m).unwrap(),
                count_power_fibers(&d, n, m).unwrap()
            );
        }
    }
}

#[test]
fn specialized_counts_are_nonnegative_on_realizable_divisors() {
    for (m, n) in [(1u64, 1u64), (2, 3), (3, 5), (4, 5), (3, 7), (4, 9)] {
        let motive = closedform::motive_agl1(m, n).unwrap();
        for q in 2u64..=64 {
            let (dm, dn) = (gcd(m, q - 1), gcd(n, q - 1));
            assert!(motive.eval(q, dm as i64, dn as i64) >= BigInt::zero());
        }
    }
    for (m, n) in [(3u64, 5u64), (3, 7), (5, 7)] {
        let motive = closedform::motive_agl2(m, n).unwrap();
        for q in [3u64, 5, 7, 9, 11, 13, 25, 27, 31, 49] {
            let (dm, dn) = (gcd(m, q - 1), gcd(n, q - 1));
            assert!(
                motive.eval(q, dm as i64, dn as i64) >= BigInt::zero(),
                "(m,n)=({},{}) q={}",
                m,
                n,
                q
            );
        }
    }
}

// ---- exact polynomial ring properties ----

fn arb_motive() -> impl Strategy<Value = MotiveExpr> {
    prop::collection::vec(((0u32..4, 0u32..3, 0u32..3), -20i64..=20), 0..5).prop_map(|terms| {
        terms
            .into_iter()
            .fold(MotiveExpr::zero(), |acc, ((eq, em, en), c)| {
                acc.add(&MotiveExpr::monomial([eq, em, en], c))
            })
    })
}

// independent dense polynomial oracle for the specialization homomorphism
fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn dense_add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    trim(out)
}

fn dense_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        for (j, cb) in b.iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    trim(out)
}

fn as_dense(p: &IntPoly) -> Vec<BigInt> {
    p.coeffs().to_vec()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn ring_axioms(a in arb_motive(), b in arb_motive(), c in arb_motive()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn specialization_is_a_ring_homomorphism(
        a in arb_motive(),
        b in arb_motive(),
        xm in 1i64..6,
        xn in 1i64..6,
    ) {
        let sa = a.specialize(xm, xn);
        let sb = b.specialize(xm, xn);
        prop_assert_eq!(
            as_dense(&a.add(&b).specialize(xm, xn)),
            dense_add(&as_dense(&sa), &as_dense(&sb))
        );
        let got = as_dense(&a.mul(&b).specialize(xm, xn));
        let want = dense_mul(&as_dense(&sa), &as_dense(&sb));
        prop_assert_eq!(got, want);
    }
}
