//! Classification of `GL2` relation pairs into strata, stratified counting,
//! the cusp-curve parametrization, Schur-type audits, and Frobenius-orbit
//! censuses for the plus/minus class lemmas.
//!
//! Every pair `(A0, B0)` with `A0^n = B0^m` receives exactly one label:
//!
//! * `B1`/`B2`: both scalar, split by whether the cusp parameter lies in
//!   `Omega`.
//! * `A1`/`A2`/`A3`: a common eigenline over `F_{q^2}` with two distinct
//!   cusp parameters, split by how many of them lie in `Omega` (membership
//!   tested in the field where the parameter lives). This covers both
//!   simultaneously diagonalizable pairs and the non-commuting triangular
//!   pairs whose parameter ratio lies in `Omega`; the `sim_diag` flag
//!   records which. On the triangular pairs the kernel of `Lambda` sits
//!   one dimension below the nominal stratum exponent exactly when the
//!   common eigenline carries the `Omega` parameter and the quotient
//!   parameter is 1, where the two `Phi` images span distinct lines.
//! * `C1`/`C2`: a common eigenline with equal cusp parameters (at least one
//!   side is a nontrivial Jordan block).
//! * `IRR1..IRR5`: no common eigenline over `F_{q^2}`. The Schur scalar
//!   `omega = A0^n` is asserted to be a rational multiple of the identity;
//!   `omega != 1` gives `IRR5`, otherwise the label records whether 1 is an
//!   eigenvalue of `A0` and/or `B0`.
//!
//! The classifier derives the exact kernel dimension of every pair from its
//! eigen-structure ([`EigenData::kernel_dim`]); stratified counting asserts
//! it against the directly computed `2 x 4` rank on every pair it visits
//! and tallies points with it, so partition totals stay exact even on the
//! strata where the nominal exponent is not the whole story.
//!
//! The `twist` flag records whether the eigendata lives in `F_q` or only in
//! `F_{q^2}`; it is the instrument for probing the rationality corollaries.

use crate::error::{Error, Result};
use crate::ffield::{omega_set, FieldCtx, Fq, QuadExt};
use crate::matgroups::{mat2_det, mat2_is_scalar, mat2_pow, GroupElement};
use crate::repcount::{agl1_fiber_census, gl2_relation_buckets, phi_mat, rank_pair};
use num_bigint::BigInt;
use num_integer::gcd;
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Stratum families, each carrying its `Ker Lambda` fiber exponent.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum StratumFamily {
    Irr1,
    Irr2,
    Irr3,
    Irr4,
    Irr5,
    A1,
    A2,
    A3,
    B1,
    B2,
    C1,
    C2,
}

impl StratumFamily {
    pub const ALL: [StratumFamily; 12] = [
        StratumFamily::Irr1,
        StratumFamily::Irr2,
        StratumFamily::Irr3,
        StratumFamily::Irr4,
        StratumFamily::Irr5,
        StratumFamily::A1,
        StratumFamily::A2,
        StratumFamily::A3,
        StratumFamily::B1,
        StratumFamily::B2,
        StratumFamily::C1,
        StratumFamily::C2,
    ];

    /// Power of `q` contributed by the kernel of `Lambda` on this stratum.
    pub fn fiber_exponent(self) -> u32 {
        use StratumFamily::*;
        match self {
            Irr1 | A1 | B1 => 4,
            Irr2 | Irr3 | A2 | C1 => 3,
            Irr4 | Irr5 | A3 | B2 | C2 => 2,
        }
    }

    pub fn name(self) -> &'static str {
        use StratumFamily::*;
        match self {
            Irr1 => "IRR1",
            Irr2 => "IRR2",
            Irr3 => "IRR3",
            Irr4 => "IRR4",
            Irr5 => "IRR5",
            A1 => "A1",
            A2 => "A2",
            A3 => "A3",
            B1 => "B1",
            B2 => "B2",
            C1 => "C1",
            C2 => "C2",
        }
    }

    pub fn is_irr(self) -> bool {
        matches!(
            self,
            StratumFamily::Irr1
                | StratumFamily::Irr2
                | StratumFamily::Irr3
                | StratumFamily::Irr4
                | StratumFamily::Irr5
        )
    }
}

impl std::fmt::Display for StratumFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Field of definition of the eigendata.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Twist {
    Split,
    Quadratic,
}

impl Twist {
    pub fn name(self) -> &'static str {
        match self {
            Twist::Split => "split",
            Twist::Quadratic => "quadratic",
        }
    }
}

impl std::fmt::Display for Twist {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct StratumLabel {
    pub family: StratumFamily,
    pub twist: Twist,
}

/// Eigen-structure of a classified pair. Eigenvalue and parameter codes live
/// in the quadratic extension of the classifying context.
#[derive(Clone, Debug)]
pub struct EigenData {
    pub a_eigenvalues: [u64; 2],
    pub b_eigenvalues: [u64; 2],
    pub a_diagonalizable: bool,
    pub b_diagonalizable: bool,
    /// The Schur scalar (base-field code) when `A0^n` is scalar.
    pub omega: Option<u64>,
    /// Simultaneously diagonalizable over `F_{q^2}`.
    pub sim_diag: bool,
    /// Cusp parameters of the two eigen-characters (reducible pairs only).
    pub t_params: Option<[u64; 2]>,
    /// Exact dimension of `Ker Lambda` derived from the eigen-structure;
    /// equals the stratum's nominal fiber exponent except on triangular
    /// A-family pairs with parameters `{t, 1}`, `t` in `Omega`.
    pub kernel_dim: u32,
}

/// Bezout pair `(a, b)` with `a m + b n = 1`, canonical: minimal nonzero
/// `|a|`, ties resolved to the positive sign.
pub fn bezout(m: u64, n: u64) -> Result<(i64, i64)> {
    if gcd(m, n) != 1 {
        return Err(Error::NotCoprime(m, n));
    }
    if n == 1 {
        return Ok((1, 1 - m as i64));
    }
    // a = m^{-1} mod n, then the representative of least magnitude
    let (mut old_r, mut r) = (m as i64 % n as i64, n as i64);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let quo = old_r / r;
        (old_r, r) = (r, old_r - quo * r);
        (old_s, s) = (s, old_s - quo * s);
    }
    let a0 = old_s.rem_euclid(n as i64);
    debug_assert!(a0 != 0);
    let candidates = [a0, a0 - n as i64];
    let a = *candidates
        .iter()
        .min_by_key(|&&a| (a.abs(), -a.signum()))
        .unwrap();
    let b = (1 - a * m as i64) / n as i64;
    Ok((a, b))
}

/// The cusp parametrization `t -> (t^m, t^n)` of the curve `x^n = y^m`.
pub fn cusp_param(ctx: &FieldCtx, m: u64, n: u64, t: Fq) -> Result<(Fq, Fq)> {
    if ctx.is_zero(t) {
        return Err(Error::Precondition("cusp parameter must be nonzero".into()));
    }
    Ok((ctx.pow(t, m as i64), ctx.pow(t, n as i64)))
}

/// Inverse of the cusp parametrization: `(x, y) -> x^a y^b`.
pub fn cusp_inv(ctx: &FieldCtx, m: u64, n: u64, x: Fq, y: Fq) -> Result<Fq> {
    if ctx.is_zero(x) || ctx.is_zero(y) {
        return Err(Error::Precondition(
            "cusp point must avoid the origin".into(),
        ));
    }
    if ctx.pow(x, n as i64) != ctx.pow(y, m as i64) {
        return Err(Error::Precondition(
            "point is not on the curve x^n = y^m".into(),
        ));
    }
    let (a, b) = bezout(m, n)?;
    Ok(ctx.mul(ctx.pow(x, a), ctx.pow(y, b)))
}

/// Normalized projective line over a field: `(1, z)` or `(0, 1)`.
type Line = [u64; 2];

struct MatEigen {
    scalar: bool,
    diag: bool,
    twisted: bool,
    /// Eigenvalues in the quadratic extension; equal when repeated.
    evs: [Fq; 2],
    lines: [Line; 2],
    nlines: u8,
    has_one: bool,
    tr_ext: Fq,
}

/// The common power `A0^n = B0^m` of one relation bucket.
struct PowerInfo {
    scalar: bool,
    omega: Fq,
}

/// Decision procedure for stratum labels over one field.
pub struct Classifier<'a> {
    pub base: &'a FieldCtx,
    pub qe: QuadExt,
    n: u64,
    m: u64,
    bez: (i64, i64),
    /// Membership of Omega_{m,n} over the quadratic extension, by code.
    omega_ext: Vec<bool>,
}

impl<'a> Classifier<'a> {
    pub fn new(base: &'a FieldCtx, n: u64, m: u64) -> Result<Classifier<'a>> {
        if gcd(m, n) != 1 {
            return Err(Error::NotCoprime(m, n));
        }
        let p = base.p;
        if p == 2 || n.is_multiple_of(p) || m.is_multiple_of(p) {
            return Err(Error::HypothesisViolation(format!(
                "classification requires char not dividing 2nm; char = {}",
                p
            )));
        }
        let qe = QuadExt::build(base)?;
        let bez = bezout(m, n)?;
        let ext = &qe.ext;
        let one = ext.one();
        let mut omega_ext = vec![false; ext.q as usize];
        for t in ext.units() {
            omega_ext[t.code() as usize] = ext.pow(t, (n * m) as i64) == one
                && ext.pow(t, n as i64) != one
                && ext.pow(t, m as i64) != one;
        }
        Ok(Classifier {
            base,
            qe,
            n,
            m,
            bez,
            omega_ext,
        })
    }

    fn power_info(&self, a_mat: &[Fq; 4]) -> PowerInfo {
        let w = mat2_pow(self.base, a_mat, self.n);
        PowerInfo {
            scalar: mat2_is_scalar(self.base, &w),
            omega: w[0],
        }
    }

    fn ext(&self) -> &FieldCtx {
        &self.qe.ext
    }

    fn emb(&self, x: Fq) -> Fq {
        self.qe.embed(self.base, x)
    }

    /// Square root in `F_{q^2}`; every base-field discriminant has one there
    /// since the base units sit at even discrete logs.
    fn sqrt_ext(&self, x: Fq) -> Fq {
        let ext = self.ext();
        if ext.is_zero(x) {
            return x;
        }
        let lo = ext.dlog(x);
        assert!(lo.is_multiple_of(2), "element is not a square in F_(q^2)");
        ext.pow(ext.generator(), (lo / 2) as i64)
    }

    fn norm_line(&self, v0: Fq, v1: Fq) -> Line {
        let ext = self.ext();
        if !ext.is_zero(v0) {
            [1, ext.mul(v1, ext.inv(v0)).code()]
        } else {
            debug_assert!(!ext.is_zero(v1));
            [0, 1]
        }
    }

    fn eigenline(&self, me: &[Fq; 4], lam: Fq) -> Line {
        let ext = self.ext();
        let a = ext.sub(me[0], lam);
        let b = me[1];
        if !ext.is_zero(a) || !ext.is_zero(b) {
            self.norm_line(ext.neg(b), a)
        } else {
            let c = me[2];
            let d = ext.sub(me[3], lam);
            self.norm_line(ext.neg(d), c)
        }
    }

    fn analyze(&self, mat: &[Fq; 4]) -> MatEigen {
        let base = self.base;
        let ext = self.ext();
        let tr = base.add(mat[0], mat[3]);
        let tr_ext = self.emb(tr);
        if mat2_is_scalar(base, mat) {
            let lam = self.emb(mat[0]);
            return MatEigen {
                scalar: true,
                diag: true,
                twisted: false,
                evs: [lam, lam],
                lines: [[0, 0]; 2],
                nlines: 0,
                has_one: mat[0] == base.one(),
                tr_ext,
            };
        }
        let det = mat2_det(base, mat);
        let disc = base.sub(base.mul(tr, tr), base.mul(base.el(4 % base.p), det));
        let me = [
            self.emb(mat[0]),
            self.emb(mat[1]),
            self.emb(mat[2]),
            self.emb(mat[3]),
        ];
        let inv2 = ext.inv(ext.el(2));
        let has_one = base.is_zero(base.add(
            base.sub(base.mul(mat[0], mat[3]), base.mul(mat[1], mat[2])),
            base.add(base.one(), base.neg(tr)),
        )); // det(M - I) = det - tr + 1
        if base.is_zero(disc) {
            let lam = ext.mul(tr_ext, inv2);
            let line = self.eigenline(&me, lam);
            return MatEigen {
                scalar: false,
                diag: false,
                twisted: false,
                evs: [lam, lam],
                lines: [line, [0, 0]],
                nlines: 1,
                has_one,
                tr_ext,
            };
        }
        let r = self.sqrt_ext(self.emb(disc));
        let l1 = ext.mul(ext.add(tr_ext, r), inv2);
        let l2 = ext.mul(ext.sub(tr_ext, r), inv2);
        let twisted = !self.qe.is_rational(base, l1);
        MatEigen {
            scalar: false,
            diag: true,
            twisted,
            evs: [l1, l2],
            lines: [self.eigenline(&me, l1), self.eigenline(&me, l2)],
            nlines: 2,
            has_one,
            tr_ext,
        }
    }

    fn in_omega_ext(&self, t: Fq) -> bool {
        self.omega_ext[t.code() as usize]
    }

    fn cusp_inv_ext(&self, x: Fq, y: Fq) -> Fq {
        let ext = self.ext();
        let (a, b) = self.bez;
        ext.mul(ext.pow(x, a), ext.pow(y, b))
    }

    fn classify_analyzed(
        &self,
        w: &PowerInfo,
        ae: &MatEigen,
        be: &MatEigen,
    ) -> (StratumLabel, EigenData) {
        let ext = self.ext();
        let mk_data =
            |sim_diag: bool, omega: Option<u64>, t: Option<[u64; 2]>, dim: u32| EigenData {
                a_eigenvalues: [ae.evs[0].code(), ae.evs[1].code()],
                b_eigenvalues: [be.evs[0].code(), be.evs[1].code()],
                a_diagonalizable: ae.diag,
                b_diagonalizable: be.diag,
                omega,
                sim_diag,
                t_params: t,
                kernel_dim: dim,
            };
        // eigen-characters matched along common eigenlines
        let mut pairs: Vec<(Fq, Fq)> = Vec::with_capacity(2);
        let sim_diag;
        if ae.scalar && be.scalar {
            pairs.push((ae.evs[0], be.evs[0]));
            pairs.push((ae.evs[0], be.evs[0]));
            sim_diag = true;
        } else if ae.scalar {
            for i in 0..be.nlines as usize {
                pairs.push((ae.evs[0], be.evs[i]));
            }
            sim_diag = be.nlines == 2;
        } else if be.scalar {
            for i in 0..ae.nlines as usize {
                pairs.push((ae.evs[i], be.evs[0]));
            }
            sim_diag = ae.nlines == 2;
        } else {
            let mut common: Vec<(Fq, Fq)> = Vec::with_capacity(2);
            for i in 0..ae.nlines as usize {
                for j in 0..be.nlines as usize {
                    if ae.lines[i] == be.lines[j] {
                        common.push((ae.evs[i], be.evs[j]));
                    }
                }
            }
            match common.len() {
                0 => {
                    // irreducible over the quadratic closure; Schur forces a
                    // rational scalar
                    assert!(
                        w.scalar,
                        "Schur violation: A0^n is not scalar on an irreducible pair"
                    );
                    let omega = w.omega;
                    let twist = if ae.twisted || be.twisted {
                        Twist::Quadratic
                    } else {
                        Twist::Split
                    };
                    let family = if omega != self.base.one() {
                        StratumFamily::Irr5
                    } else {
                        match (ae.has_one, be.has_one) {
                            (false, false) => StratumFamily::Irr1,
                            (false, true) => StratumFamily::Irr2,
                            (true, false) => StratumFamily::Irr3,
                            (true, true) => StratumFamily::Irr4,
                        }
                    };
                    return (
                        StratumLabel { family, twist },
                        mk_data(false, Some(omega.code()), None, family.fiber_exponent()),
                    );
                }
                1 => {
                    let (la, lb) = common[0];
                    pairs.push((la, lb));
                    pairs.push((ext.sub(ae.tr_ext, la), ext.sub(be.tr_ext, lb)));
                    sim_diag = false;
                }
                _ => {
                    pairs = common;
                    sim_diag = true;
                }
            }
        }
        if pairs.len() == 1 {
            // single common line against a scalar partner: equal characters
            pairs.push(pairs[0]);
        }
        let t1 = self.cusp_inv_ext(pairs[0].0, pairs[0].1);
        let t2 = self.cusp_inv_ext(pairs[1].0, pairs[1].1);
        let twisted = ae.twisted || be.twisted;
        let twist = if twisted {
            Twist::Quadratic
        } else {
            Twist::Split
        };
        if t1 == t2 {
            debug_assert!(!twisted, "B/C eigendata is forced rational");
            let family = if self.in_omega_ext(t1) {
                if ae.scalar && be.scalar {
                    StratumFamily::B1
                } else {
                    StratumFamily::C1
                }
            } else if ae.scalar && be.scalar {
                StratumFamily::B2
            } else {
                StratumFamily::C2
            };
            let data = mk_data(
                sim_diag,
                None,
                Some([t1.code(), t2.code()]),
                family.fiber_exponent(),
            );
            return (
                StratumLabel {
                    family,
                    twist: Twist::Split,
                },
                data,
            );
        }
        let in1 = self.in_omega_ext(t1);
        let in2 = self.in_omega_ext(t2);
        let k = in1 as u32 + in2 as u32;
        let family = match k {
            2 => StratumFamily::A1,
            1 => StratumFamily::A2,
            _ => StratumFamily::A3,
        };
        // on the triangular pairs (pairs[0] on the common line, pairs[1] the
        // quotient) the kernel drops below the nominal exponent exactly when
        // the common line carries the Omega parameter and the quotient
        // parameter is 1: the two Phi images then span distinct lines
        let dim = if sim_diag {
            2 + k
        } else {
            match k {
                2 => 4,
                0 => 2,
                _ => {
                    if t2 == ext.one() {
                        2
                    } else {
                        3
                    }
                }
            }
        };
        let data = mk_data(sim_diag, None, Some([t1.code(), t2.code()]), dim);
        (StratumLabel { family, twist }, data)
    }

    /// Classify one relation pair. The precondition `A0^n = B0^m` is checked.
    pub fn classify(&self, a0: &[Fq; 4], b0: &[Fq; 4]) -> Result<(StratumLabel, EigenData)> {
        let an = mat2_pow(self.base, a0, self.n);
        let bm = mat2_pow(self.base, b0, self.m);
        if an != bm {
            return Err(Error::Precondition("classify requires A0^n = B0^m".into()));
        }
        let ae = self.analyze(a0);
        let be = self.analyze(b0);
        Ok(self.classify_analyzed(&self.power_info(a0), &ae, &be))
    }
}

/// Convenience wrapper classifying a pair of `GL2` group elements.
pub fn classify(
    ctx: &FieldCtx,
    a0: &GroupElement,
    b0: &GroupElement,
    n: u64,
    m: u64,
) -> Result<(StratumLabel, EigenData)> {
    Classifier::new(ctx, n, m)?.classify(&a0.lin, &b0.lin)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumTally {
    pub base_pairs: u64,
    pub points: BigInt,
}

/// Stratified census of the AGL2 representation variety at one field.
#[derive(Clone, Debug)]
pub struct StratifiedReport {
    pub q: u64,
    pub n: u64,
    pub m: u64,
    pub rows: BTreeMap<(StratumFamily, Twist), StratumTally>,
    pub total_pairs: u64,
    pub total_points: BigInt,
    /// Pairs whose exact kernel dimension differs from the nominal stratum
    /// exponent: the non-commuting triangular pairs with parameters
    /// `{t, 1}`, `t` in `Omega`. Zero whenever `Omega(F_q)` is empty.
    pub nonstandard_fiber_pairs: u64,
}

impl StratifiedReport {
    /// CSV with the fixed schema `label,twist,base_pairs,fiber_exp,points`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("label,twist,base_pairs,fiber_exp,points\n");
        for ((family, twist), tally) in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                family,
                twist,
                tally.base_pairs,
                family.fiber_exponent(),
                tally.points
            ));
        }
        out
    }

    /// Total AGL2 points on a family, both twists.
    pub fn family_points(&self, family: StratumFamily) -> BigInt {
        self.rows
            .iter()
            .filter(|((f, _), _)| *f == family)
            .map(|(_, t)| t.points.clone())
            .sum()
    }

    pub fn tally(&self, family: StratumFamily, twist: Twist) -> StratumTally {
        self.rows
            .get(&(family, twist))
            .cloned()
            .unwrap_or(StratumTally {
                base_pairs: 0,
                points: BigInt::from(0u32),
            })
    }
}

fn check_stratified_pre(n: u64, m: u64, force: bool) -> Result<()> {
    if !force && (n.is_multiple_of(2) || m.is_multiple_of(2)) {
        return Err(Error::HypothesisViolation(format!(
            "stratified counting is stated for odd (n, m), got ({}, {})",
            n, m
        )));
    }
    Ok(())
}

/// Classify every relation pair and tally base pairs and AGL2 points per
/// `(stratum, twist)`. The per-label fiber exponent is asserted against the
/// directly computed kernel dimension on every pair.
pub fn stratified_count(ctx: &FieldCtx, n: u64, m: u64, force: bool) -> Result<StratifiedReport> {
    check_stratified_pre(n, m, force)?;
    let cls = Classifier::new(ctx, n, m)?;
    let buckets = gl2_relation_buckets(ctx, n, m)?;
    let q = ctx.q as u128;
    type Local = (BTreeMap<(StratumFamily, Twist), (u64, u128)>, u64);
    let locals: Vec<Local> = buckets
        .par_iter()
        .map(|bucket| {
            let w = cls.power_info(&bucket.a_mats[0]);
            let a_data: Vec<(MatEigen, [Fq; 4])> = bucket
                .a_mats
                .iter()
                .map(|mt| (cls.analyze(mt), phi_mat(ctx, mt, n)))
                .collect();
            let b_data: Vec<(MatEigen, [Fq; 4])> = bucket
                .b_mats
                .iter()
                .map(|mt| (cls.analyze(mt), phi_mat(ctx, mt, m)))
                .collect();
            let mut local = Local::default();
            for (ae, pa) in &a_data {
                for (be, pb) in &b_data {
                    let dim = 4 - rank_pair(ctx, pa, pb);
                    let (label, data) = cls.classify_analyzed(&w, ae, be);
                    assert_eq!(
                        data.kernel_dim, dim,
                        "stratum {} pair must contribute q^{}",
                        label.family, data.kernel_dim
                    );
                    if dim != label.family.fiber_exponent() {
                        local.1 += 1;
                    }
                    let e = local.0.entry((label.family, label.twist)).or_insert((0, 0));
                    e.0 += 1;
                    e.1 += q.pow(dim);
                }
            }
            local
        })
        .collect();
    let mut rows: BTreeMap<(StratumFamily, Twist), StratumTally> = BTreeMap::new();
    let mut total_pairs = 0u64;
    let mut total_points = BigInt::from(0u32);
    let mut nonstandard = 0u64;
    for (local, off) in locals {
        nonstandard += off;
        for (key, (pairs, points)) in local {
            let entry = rows.entry(key).or_insert(StratumTally {
                base_pairs: 0,
                points: BigInt::from(0u32),
            });
            entry.base_pairs += pairs;
            entry.points += BigInt::from(points);
            total_pairs += pairs;
            total_points += BigInt::from(points);
        }
    }
    Ok(StratifiedReport {
        q: ctx.q,
        n,
        m,
        rows,
        total_pairs,
        total_points,
        nonstandard_fiber_pairs: nonstandard,
    })
}

/// The two AGL1 fibration strata. `generic_points` counts the `q`-fibers
/// over `k^* - Omega`, `omega_points` the `q^2`-fibers over `Omega`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Agl1Strata {
    pub omega_size: u64,
    pub generic_points: BigInt,
    pub omega_points: BigInt,
}

pub fn agl1_stratified_count(ctx: &FieldCtx, n: u64, m: u64) -> Result<Agl1Strata> {
    if gcd(m, n) != 1 {
        return Err(Error::NotCoprime(m, n));
    }
    if n.is_multiple_of(ctx.p) || m.is_multiple_of(ctx.p) {
        return Err(Error::HypothesisViolation(format!(
            "char {} divides nm",
            ctx.p
        )));
    }
    let (z, _) = agl1_fiber_census(ctx, n, m);
    // under char coprime to nm the census locus is exactly Omega
    assert_eq!(z as usize, omega_set(ctx, m, n)?.len());
    let q = BigInt::from(ctx.q);
    Ok(Agl1Strata {
        omega_size: z,
        generic_points: BigInt::from(ctx.q - 1 - z) * &q,
        omega_points: BigInt::from(z) * &q * &q,
    })
}

/// Structural audit of the irreducible stratum: Schur scalar-ness is a hard
/// assertion, diagonalizability and distinct eigenvalues are checked, and
/// the census of quadratically twisted irreducible pairs is reported.
#[derive(Clone, Debug)]
pub struct SchurReport {
    pub q: u64,
    pub n: u64,
    pub m: u64,
    pub total_irr_pairs: u64,
    pub twisted_irr_pairs: u64,
    pub by_family: BTreeMap<(StratumFamily, Twist), u64>,
}

pub fn schur_audit(ctx: &FieldCtx, n: u64, m: u64) -> Result<SchurReport> {
    let cls = Classifier::new(ctx, n, m)?;
    let buckets = gl2_relation_buckets(ctx, n, m)?;
    type Local = BTreeMap<(StratumFamily, Twist), u64>;
    let locals: Vec<Local> = buckets
        .par_iter()
        .map(|bucket| {
            let w = cls.power_info(&bucket.a_mats[0]);
            let a_data: Vec<MatEigen> = bucket.a_mats.iter().map(|mt| cls.analyze(mt)).collect();
            let b_data: Vec<MatEigen> = bucket.b_mats.iter().map(|mt| cls.analyze(mt)).collect();
            let mut local = Local::new();
            for ae in &a_data {
                for be in &b_data {
                    let (label, data) = cls.classify_analyzed(&w, ae, be);
                    if !label.family.is_irr() {
                        continue;
                    }
                    // classify_analyzed has already hard-asserted the Schur
                    // scalar; check the eigen-structure corollaries
                    assert!(data.omega.is_some() && data.omega != Some(0));
                    assert!(
                        data.a_diagonalizable && data.b_diagonalizable,
                        "irreducible pairs must be diagonalizable when char does not divide nm"
                    );
                    assert!(data.a_eigenvalues[0] != data.a_eigenvalues[1]);
                    assert!(data.b_eigenvalues[0] != data.b_eigenvalues[1]);
                    *local.entry((label.family, label.twist)).or_insert(0) += 1;
                }
            }
            local
        })
        .collect();
    let mut by_family: BTreeMap<(StratumFamily, Twist), u64> = BTreeMap::new();
    for local in locals {
        for (k, v) in local {
            *by_family.entry(k).or_insert(0) += v;
        }
    }
    let total: u64 = by_family.values().sum();
    let twisted: u64 = by_family
        .iter()
        .filter(|((_, tw), _)| *tw == Twist::Quadratic)
        .map(|(_, v)| *v)
        .sum();
    Ok(SchurReport {
        q: ctx.q,
        n,
        m,
        total_irr_pairs: total,
        twisted_irr_pairs: twisted,
        by_family,
    })
}

/// Frobenius-orbit censuses behind the plus/minus class lemmas.
#[derive(Clone, Debug)]
pub struct PmClassReport {
    pub q: u64,
    /// Frobenius-stable unordered pairs `{a, b}`, `a != b`, in `F_{q^2}^*`.
    pub value_pairs_split: u64,
    pub value_pairs_twisted: u64,
    pub expected_value_pairs: u64,
    /// Frobenius-stable unordered pairs of distinct lines in `P^1(F_{q^2})`.
    pub line_pairs_split: u64,
    pub line_pairs_twisted: u64,
    pub expected_line_pairs: u64,
    /// A-family base pairs: stable pairs of distinct `(parameter, line)`
    /// data, weighted by the matrices realizing them.
    pub a_base_split: u128,
    pub a_base_twisted: u128,
    pub expected_a_base: u128,
}

impl PmClassReport {
    pub fn value_pairs(&self) -> u64 {
        self.value_pairs_split + self.value_pairs_twisted
    }
    pub fn line_pairs(&self) -> u64 {
        self.line_pairs_split + self.line_pairs_twisted
    }
    pub fn a_base(&self) -> u128 {
        self.a_base_split + self.a_base_twisted
    }
    pub fn ok(&self) -> bool {
        self.value_pairs() == self.expected_value_pairs
            && self.line_pairs() == self.expected_line_pairs
            && self.a_base() == self.expected_a_base
    }
}

pub fn pm_class_audit(ctx: &FieldCtx) -> Result<PmClassReport> {
    if ctx.q > 64 {
        return Err(Error::BoundExceeded {
            what: "q",
            got: ctx.q as u128,
            bound: 64,
        });
    }
    let qe = QuadExt::build(ctx)?;
    let ext = &qe.ext;
    let q = ctx.q;

    // stable unordered value pairs {a, b} in F_{q^2}^*
    let mut value_split = 0u64;
    let rational_units: Vec<Fq> = ext.units().filter(|&y| qe.is_rational(ctx, y)).collect();
    for i in 0..rational_units.len() {
        for _ in (i + 1)..rational_units.len() {
            value_split += 1;
        }
    }
    let mut value_twisted = 0u64;
    for y in ext.units() {
        if !qe.is_rational(ctx, y) {
            let conj = ext.pow(y, q as i64);
            if y.code() < conj.code() {
                value_twisted += 1;
            }
        }
    }

    // lines of P^1(F_{q^2}): (1, z) for each z, plus (0, 1); Frobenius sends
    // (1, z) to (1, z^q) and fixes (0, 1)
    let n_rational_lines = q + 1;
    let mut line_split = 0u64;
    for i in 0..n_rational_lines {
        for _ in (i + 1)..n_rational_lines {
            line_split += 1;
        }
    }
    let mut line_twisted = 0u64;
    let mut irrational_lines = 0u64;
    for z in ext.elems() {
        if !qe.is_rational(ctx, z) {
            irrational_lines += 1;
            let conj = ext.pow(z, q as i64);
            if z.code() < conj.code() {
                line_twisted += 1;
            }
        }
    }

    // A-family base pairs: split eigendata pairs carry (q+1)q matrix pairs
    // each (ordered distinct rational line pairs), twisted eigendata pairs
    // carry (q^2 - q) each (one nonsplit torus class)
    let irrational_units = ext.units().filter(|&y| !qe.is_rational(ctx, y)).count() as u128;
    let a_base_split =
        value_split as u128 * (n_rational_lines as u128) * (n_rational_lines as u128 - 1);
    let a_base_twisted = irrational_units * irrational_lines as u128 / 2;

    let qq = q as u128;
    Ok(PmClassReport {
        q,
        value_pairs_split: value_split,
        value_pairs_twisted: value_twisted,
        expected_value_pairs: (q - 1) * (q - 1),
        line_pairs_split: line_split,
        line_pairs_twisted: line_twisted,
        expected_line_pairs: q * q,
        a_base_split,
        a_base_twisted,
        expected_a_base: qq * qq * (qq - 1) * (qq - 1) - qq * (qq - 1),
    })
}
