//! Exact counting engines for `|Rep_{m,n}(G)(F_q)| = #{(A,B) : A^n = B^m}`.
//!
//! Three independent tiers: a naive double loop, a meet-in-the-middle join on
//! power fibers, and (for `AGL2`) a reduction to `GL2` pairs weighted by
//! `q^dim(Ker Lambda)`, where `Lambda(alpha, beta) = Phi_n(A0) alpha -
//! Phi_m(B0) beta`. The engines agree wherever several of them run; they are
//! the ground truth the closed forms are measured against.

use crate::closedform;
use crate::error::{Error, Result};
use crate::ffield::{FieldCtx, Fq};
use crate::matgroups::{mat2_identity, mat2_mul, mat2_pow, GroupDescriptor, GroupElement};
use crate::max_group_order;
use num_bigint::BigInt;
use rayon::prelude::*;
use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicUsize, Ordering};

/// Default cap on `|G|^2` for the naive engine.
pub const DEFAULT_NAIVE_BOUND: u128 = 100_000_000;
/// Cap on `|G|` for the power-fiber engine.
pub const FIBER_BOUND: u128 = 1 << 27;
/// Cap on `q` for the reduced AGL2 engine.
pub const REDUCED_Q_BOUND: u64 = 64;

/// `Phi_l(X) = I + X + ... + X^(l-1)` by Horner on matrices.
pub fn phi_mat(ctx: &FieldCtx, x: &[Fq; 4], l: u64) -> [Fq; 4] {
    let id = mat2_identity(ctx);
    let mut acc = id;
    for _ in 1..l {
        let xa = mat2_mul(ctx, x, &acc);
        acc = [
            ctx.add(id[0], xa[0]),
            ctx.add(id[1], xa[1]),
            ctx.add(id[2], xa[2]),
            ctx.add(id[3], xa[3]),
        ];
    }
    acc
}

/// Scalar `Phi_l(x) = 1 + x + ... + x^(l-1)`.
pub fn phi_scalar(ctx: &FieldCtx, x: Fq, l: u64) -> Fq {
    let mut acc = ctx.one();
    for _ in 1..l {
        acc = ctx.add(ctx.one(), ctx.mul(x, acc));
    }
    acc
}

/// Rank over `F_q` of the `2 x 4` block matrix `[P | -Q]`.
pub(crate) fn rank_pair(ctx: &FieldCtx, p: &[Fq; 4], q: &[Fq; 4]) -> u32 {
    let r1 = [p[0], p[1], ctx.neg(q[0]), ctx.neg(q[1])];
    let r2 = [p[2], p[3], ctx.neg(q[2]), ctx.neg(q[3])];
    let piv = (0..4).find(|&i| !ctx.is_zero(r1[i]));
    match piv {
        None => {
            if r2.iter().all(|&c| ctx.is_zero(c)) {
                0
            } else {
                1
            }
        }
        Some(i) => {
            let lam = ctx.mul(r2[i], ctx.inv(r1[i]));
            for j in 0..4 {
                if !ctx.is_zero(ctx.sub(r2[j], ctx.mul(lam, r1[j]))) {
                    return 2;
                }
            }
            1
        }
    }
}

/// Kernel dimension of `Lambda` for a `GL2` pair with `A0^n = B0^m`;
/// always 2, 3 or 4.
pub fn kernel_dim(
    ctx: &FieldCtx,
    a0: &GroupElement,
    b0: &GroupElement,
    n: u64,
    m: u64,
) -> Result<u32> {
    let an = mat2_pow(ctx, &a0.lin, n);
    let bm = mat2_pow(ctx, &b0.lin, m);
    if an != bm {
        return Err(Error::Precondition(
            "kernel_dim requires A0^n = B0^m".into(),
        ));
    }
    Ok(4 - rank_pair(ctx, &phi_mat(ctx, &a0.lin, n), &phi_mat(ctx, &b0.lin, m)))
}

/// Exact count by double loop over `G^2`.
pub fn count_naive(d: &GroupDescriptor, n: u64, m: u64) -> Result<BigInt> {
    count_naive_bounded(d, n, m, DEFAULT_NAIVE_BOUND)
}

pub fn count_naive_bounded(d: &GroupDescriptor, n: u64, m: u64, bound: u128) -> Result<BigInt> {
    let ord = d.order();
    if ord * ord > bound {
        return Err(Error::BoundExceeded {
            what: "|G|^2",
            got: ord * ord,
            bound,
        });
    }
    let an: Vec<u64> = d.elements()?.map(|g| d.encode(&d.pow(&g, n))).collect();
    let bm: Vec<u64> = d.elements()?.map(|g| d.encode(&d.pow(&g, m))).collect();
    let mut count = 0u128;
    for &a in &an {
        for &b in &bm {
            if a == b {
                count += 1;
            }
        }
    }
    Ok(BigInt::from(count))
}

/// Meet-in-the-middle count: joins the fiber tables of the two power maps.
pub fn count_power_fibers(d: &GroupDescriptor, n: u64, m: u64) -> Result<BigInt> {
    let ord = d.order();
    let bound = FIBER_BOUND.min(max_group_order() as u128);
    if ord > bound {
        return Err(Error::BoundExceeded {
            what: "|G|",
            got: ord,
            bound,
        });
    }
    let mut an: HashMap<u64, u64> = HashMap::new();
    let mut bm: HashMap<u64, u64> = HashMap::new();
    for g in d.elements()? {
        *an.entry(d.encode(&d.pow(&g, n))).or_insert(0) += 1;
        *bm.entry(d.encode(&d.pow(&g, m))).or_insert(0) += 1;
    }
    let mut count = 0u128;
    for (key, ca) in &an {
        if let Some(cb) = bm.get(key) {
            count += *ca as u128 * *cb as u128;
        }
    }
    Ok(BigInt::from(count))
}

/// One common value `C` of the two power maps, with the `GL2` matrices
/// mapping onto it from each side.
pub struct RelationBucket {
    pub key: u64,
    pub a_mats: Vec<[Fq; 4]>,
    pub b_mats: Vec<[Fq; 4]>,
}

fn mat_code(ctx: &FieldCtx, m: &[Fq; 4]) -> u64 {
    let q = ctx.q;
    ((m[3].code() * q + m[2].code()) * q + m[1].code()) * q + m[0].code()
}

/// Bucket `GL2` by n-th and m-th powers, keeping only keys hit from both
/// sides, in ascending key order.
pub fn gl2_relation_buckets(ctx: &FieldCtx, n: u64, m: u64) -> Result<Vec<RelationBucket>> {
    if ctx.q > REDUCED_Q_BOUND {
        return Err(Error::BoundExceeded {
            what: "q",
            got: ctx.q as u128,
            bound: REDUCED_Q_BOUND as u128,
        });
    }
    let d = GroupDescriptor::gl2(ctx);
    let mut map: BTreeMap<u64, (Vec<[Fq; 4]>, Vec<[Fq; 4]>)> = BTreeMap::new();
    for g in d.elements()? {
        let mat = g.lin;
        map.entry(mat_code(ctx, &mat2_pow(ctx, &mat, n)))
            .or_default()
            .0
            .push(mat);
        map.entry(mat_code(ctx, &mat2_pow(ctx, &mat, m)))
            .or_default()
            .1
            .push(mat);
    }
    Ok(map
        .into_iter()
        .filter(|(_, (a, b))| !a.is_empty() && !b.is_empty())
        .map(|(key, (a_mats, b_mats))| RelationBucket {
            key,
            a_mats,
            b_mats,
        })
        .collect())
}

/// Reduced AGL2 engine: sums `q^dim(Ker Lambda)` over the `GL2` pairs with
/// `A0^n = B0^m`. Data-parallel over buckets with an associative merge, so
/// results are independent of the schedule.
pub fn count_agl2_reduced(ctx: &FieldCtx, n: u64, m: u64, progress: bool) -> Result<BigInt> {
    let buckets = gl2_relation_buckets(ctx, n, m)?;
    let total = buckets.len();
    let done = AtomicUsize::new(0);
    let q = ctx.q as u128;
    let partials: Vec<u128> = buckets
        .par_iter()
        .map(|bucket| {
            let phis_a: Vec<[Fq; 4]> = bucket.a_mats.iter().map(|a| phi_mat(ctx, a, n)).collect();
            let phis_b: Vec<[Fq; 4]> = bucket.b_mats.iter().map(|b| phi_mat(ctx, b, m)).collect();
            let mut sum = 0u128;
            for pa in &phis_a {
                for pb in &phis_b {
                    sum += q.pow(4 - rank_pair(ctx, pa, pb));
                }
            }
            if progress {
                let k = done.fetch_add(1, Ordering::Relaxed) + 1;
                if k.is_multiple_of(64) || k == total {
                    eprint!("\rreduced engine: {}/{} buckets", k, total);
                    if k == total {
                        eprintln!();
                    }
                }
            }
            sum
        })
        .collect();
    let mut out = BigInt::from(0u32);
    for s in partials {
        out += BigInt::from(s);
    }
    Ok(out)
}

/// Honest AGL1 fiber census over the cusp parameter `t`: returns the number
/// of `t` where both `Phi` factors vanish together with the exact point
/// count `z q^2 + (q - 1 - z) q`. Valid in every characteristic.
pub fn agl1_fiber_census(ctx: &FieldCtx, n: u64, m: u64) -> (u64, BigInt) {
    let mut z = 0u64;
    for t in ctx.units() {
        let a = ctx.pow(t, m as i64);
        let b = ctx.pow(t, n as i64);
        if ctx.is_zero(phi_scalar(ctx, a, n)) && ctx.is_zero(phi_scalar(ctx, b, m)) {
            z += 1;
        }
    }
    let q = BigInt::from(ctx.q);
    let count = BigInt::from(z) * &q * &q + (BigInt::from(ctx.q - 1 - z)) * &q;
    (z, count)
}

/// Discrepancy detector: reduced engine count minus the specialized closed
/// form of the AGL2 motive. May be any integer; deterministic.
pub fn formula_gap(ctx: &FieldCtx, n: u64, m: u64, force: bool) -> Result<BigInt> {
    let ok = closedform::hypotheses_ok(ctx.q, m, n, closedform::Group::Agl2);
    if !ok && !force {
        return Err(Error::HypothesisViolation(format!(
            "closed-form hypotheses fail for (n, m, q) = ({}, {}, {})",
            n, m, ctx.q
        )));
    }
    let motive = closedform::motive_agl2_unchecked(m, n)?;
    let xi_m = num_integer::gcd(m, ctx.q - 1) as i64;
    let xi_n = num_integer::gcd(n, ctx.q - 1) as i64;
    let predicted = motive.specialize(xi_m, xi_n).eval_u64(ctx.q);
    let engine = count_agl2_reduced(ctx, n, m, false)?;
    Ok(engine - predicted)
}
