//! Verification suites binding all modules: each acceptance-grade criterion
//! is a batch of checks with exact expectations. The CLI `verify` command and
//! the acceptance test target both run these.

use knotvar_core::closedform;
use knotvar_core::error::Result;
use knotvar_core::exactpoly::IntPoly;
use knotvar_core::ffield::{
    alternative_modulus, make_field, make_field_with_modulus, omega_set, unity_root_count,
    unity_root_count_gcd, FieldCtx,
};
use knotvar_core::matgroups::GroupDescriptor;
use knotvar_core::repcount::{count_agl2_reduced, count_naive, count_power_fibers, formula_gap};
use knotvar_core::strata::{
    cusp_inv, cusp_param, pm_class_audit, schur_audit, stratified_count, StratumFamily, Twist,
};
use knotvar_core::trends::{residue_evidence, trend_scan, TrendGroup};
use num_bigint::BigInt;
use num_integer::gcd;

/// Outcome of a single verification check.
#[derive(Clone, Debug)]
pub struct Check {
    pub id: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(id: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
        Check {
            id: id.into(),
            passed,
            detail: detail.into(),
        }
    }
}

fn prime_powers_to(limit: u64) -> Vec<(u64, u64, u32)> {
    knotvar_core::trends::prime_powers(limit).expect("desk-scale sieve")
}

const AGL1_PAIRS: [(u64, u64); 6] = [(1, 1), (2, 3), (3, 5), (4, 5), (3, 7), (4, 9)];

/// Criterion 1: AGL1 engine counts equal the specialized closed form for all
/// prime powers up to `max_q` whose characteristic is coprime to `nm`.
pub fn checks_agl1_exactness(max_q: u64) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let anchors: &[(u64, u64)] = &[
        (2, 2),
        (4, 12),
        (7, 42),
        (8, 56),
        (11, 110),
        (13, 156),
        (16, 2160),
        (31, 8370),
    ];
    for (m, n) in AGL1_PAIRS {
        let motive = closedform::motive_agl1(m, n)?;
        let mut bad = Vec::new();
        let mut tested = 0u32;
        for (q, p, k) in prime_powers_to(max_q) {
            if (n * m) % p == 0 {
                continue;
            }
            let ctx = make_field(p, k)?;
            let engine = count_power_fibers(&GroupDescriptor::agl1(&ctx), n, m)?;
            let formula = motive.eval(q, gcd(m, q - 1) as i64, gcd(n, q - 1) as i64);
            if engine != formula {
                bad.push(format!("q={}: engine {} vs formula {}", q, engine, formula));
            }
            if (m, n) == (3, 5) {
                if let Some(&(_, want)) = anchors.iter().find(|a| a.0 == q) {
                    if engine != BigInt::from(want) {
                        bad.push(format!("anchor q={}: engine {} vs {}", q, engine, want));
                    }
                }
            }
            tested += 1;
        }
        out.push(Check::new(
            format!("C1.agl1({},{})", m, n),
            bad.is_empty(),
            if bad.is_empty() {
                format!("{} prime powers exact (settles the +2 constant)", tested)
            } else {
                bad.join("; ")
            },
        ));
    }
    Ok(out)
}

/// Criterion 2: AGL2 engine counts against the specialized closed form at
/// clean q for (m, n) = (3, 5).
pub fn checks_agl2_exactness(slow: bool) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let motive = closedform::motive_agl2(3, 5)?;
    let mut qs = vec![7u64, 13];
    if slow {
        qs.extend([31, 37]);
    }
    for q in qs {
        let ctx = make_field(q, 1)?;
        let engine = count_agl2_reduced(&ctx, 5, 3, false)?;
        let formula = motive.eval(q, gcd(3, q - 1) as i64, gcd(5, q - 1) as i64);
        let gap = &engine - &formula;
        out.push(Check::new(
            format!("C2.agl2.q{}", q),
            engine == formula,
            format!(
                "engine {} vs closed form {} (gap {}); reference anchor at q=7 is 113190",
                engine, formula, gap
            ),
        ));
    }
    Ok(out)
}

/// Criterion 3: the engine tiers agree wherever several accept the size.
pub fn checks_engine_cross_validation() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let pairs: [(u64, u64); 6] = [(1, 1), (2, 3), (3, 2), (5, 3), (3, 5), (5, 7)];
    let mut bad = Vec::new();
    let mut tested = 0u32;
    for (q, p, k) in prime_powers_to(61) {
        let ctx = make_field(p, k)?;
        let groups = [
            GroupDescriptor::gl1(&ctx),
            GroupDescriptor::agl1(&ctx),
            GroupDescriptor::gl2(&ctx),
            GroupDescriptor::agl2(&ctx),
        ];
        for d in groups {
            if d.order() > 4000 {
                continue;
            }
            for (n, m) in pairs {
                let naive = count_naive(&d, n, m)?;
                let fibers = count_power_fibers(&d, n, m)?;
                if naive != fibers {
                    bad.push(format!(
                        "{}(F_{}) ({},{}): naive {} vs fibers {}",
                        d.name(),
                        q,
                        n,
                        m,
                        naive,
                        fibers
                    ));
                }
                tested += 1;
            }
        }
    }
    out.push(Check::new(
        "C3.naive-vs-fibers",
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} group/exponent combinations agree", tested)
        } else {
            bad.join("; ")
        },
    ));

    let f7 = make_field(7, 1)?;
    let agl2 = GroupDescriptor::agl2(&f7);
    let mut bad = Vec::new();
    for (n, m) in [(5u64, 3u64), (3, 7)] {
        let fibers = count_power_fibers(&agl2, n, m)?;
        let reduced = count_agl2_reduced(&f7, n, m, false)?;
        if fibers != reduced {
            bad.push(format!(
                "({},{}): fibers {} vs reduced {}",
                n, m, fibers, reduced
            ));
        }
    }
    out.push(Check::new(
        "C3.fibers-vs-reduced.AGL2(F_7)",
        bad.is_empty(),
        if bad.is_empty() {
            "exponents (5,3) and (3,7) agree".to_string()
        } else {
            bad.join("; ")
        },
    ));
    Ok(out)
}

/// Criterion 4: the symbolic identities of the stratification bookkeeping.
pub fn checks_symbolic_identities() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let irr_sum = closedform::irr_total_motive();
    let display = closedform::irr_closing_display();
    out.push(Check::new(
        "C4a.irr-sum",
        irr_sum.scaled4() == display.scaled4(),
        "five IRR stratum motives against the closing display",
    ));
    let total = irr_sum
        .add(&closedform::a_total_motive())
        .add(&closedform::b_total_motive())
        .add(&closedform::c_total_motive());
    let thm = closedform::motive_agl2(3, 5)?;
    out.push(Check::new(
        "C4b.strata-sum",
        total.scaled4() == thm.scaled4(),
        "IRR + A + B + C totals against the full AGL2 motive",
    ));
    let mut bad = Vec::new();
    for (m, n) in AGL1_PAIRS {
        let lhs = closedform::motive_agl1(m, n)?.specialize(m as i64, n as i64);
        let c = ((n - 1) * (m - 1) + 1) as i64;
        let rhs = IntPoly::from_i64(&[0, -c, c]);
        if lhs != rhs {
            bad.push(format!("({},{})", m, n));
        }
    }
    out.push(Check::new(
        "C4c.agl1-complex",
        bad.is_empty(),
        if bad.is_empty() {
            "complex specialization equals ((n-1)(m-1)+1)(q^2-q) on all six pairs".to_string()
        } else {
            format!("mismatch at {}", bad.join(", "))
        },
    ));
    Ok(out)
}

/// Criterion 5: stratified counts partition the total, and split counts per
/// stratum against the per-stratum closed forms at clean q.
pub fn checks_stratified() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for q in [7u64, 11, 13] {
        let ctx = make_field(q, 1)?;
        let report = stratified_count(&ctx, 5, 3, false)?;
        let reduced = count_agl2_reduced(&ctx, 5, 3, false)?;
        out.push(Check::new(
            format!("C5a.partition.q{}", q),
            report.total_points == reduced,
            format!(
                "stratified total {} vs reduced engine {}",
                report.total_points, reduced
            ),
        ));
    }
    for q in [7u64, 13] {
        let ctx = make_field(q, 1)?;
        let report = stratified_count(&ctx, 5, 3, false)?;
        let (xi_m, xi_n) = (gcd(3, q - 1) as i64, gcd(5, q - 1) as i64);
        let mut bad = Vec::new();
        for family in StratumFamily::ALL {
            let split = report.tally(family, Twist::Split).points;
            let formula = closedform::stratum_motive(family).eval(q, xi_m, xi_n);
            if split != formula {
                bad.push(format!(
                    "{}: split census {} vs stratum motive {}",
                    family, split, formula
                ));
            }
        }
        out.push(Check::new(
            format!("C5b.split-vs-motive.q{}", q),
            bad.is_empty(),
            if bad.is_empty() {
                "all twelve strata match".to_string()
            } else {
                bad.join("; ")
            },
        ));
    }
    Ok(out)
}

/// Criterion 6: root-of-unity counts by enumeration equal `gcd(l, q-1)`.
pub fn checks_unity_roots(max_q: u64) -> Result<Vec<Check>> {
    let mut bad = Vec::new();
    let mut tested = 0u32;
    for (q, p, k) in prime_powers_to(max_q) {
        let ctx = make_field(p, k)?;
        for l in 1..=30 {
            if unity_root_count(&ctx, l) != unity_root_count_gcd(&ctx, l) {
                bad.push(format!("q={} l={}", q, l));
            }
            tested += 1;
        }
    }
    Ok(vec![Check::new(
        "C6.unity-roots",
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} (q, l) pairs agree with gcd(l, q-1)", tested)
        } else {
            bad.join("; ")
        },
    )])
}

/// Criterion 7: the cusp parametrization and its inverse are mutually
/// inverse bijections between `F_q^*` and the curve.
pub fn checks_cusp(max_q: u64) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (m, n) in [(3u64, 5u64), (4, 5), (5, 7), (4, 9)] {
        let mut bad = Vec::new();
        for (q, p, k) in prime_powers_to(max_q) {
            let ctx = make_field(p, k)?;
            for t in ctx.units() {
                let (x, y) = cusp_param(&ctx, m, n, t)?;
                if cusp_inv(&ctx, m, n, x, y)? != t {
                    bad.push(format!("q={} t={}", q, t.code()));
                }
            }
            // surjectivity: every curve point is hit
            let mut curve_points = 0u64;
            for x in ctx.units() {
                for y in ctx.units() {
                    if ctx.pow(x, n as i64) == ctx.pow(y, m as i64) {
                        curve_points += 1;
                        let t = cusp_inv(&ctx, m, n, x, y)?;
                        if cusp_param(&ctx, m, n, t)? != (x, y) {
                            bad.push(format!("q={} point ({},{})", q, x.code(), y.code()));
                        }
                    }
                }
            }
            if curve_points != q - 1 {
                bad.push(format!("q={}: curve has {} points", q, curve_points));
            }
        }
        out.push(Check::new(
            format!("C7.cusp({},{})", m, n),
            bad.is_empty(),
            if bad.is_empty() {
                "mutually inverse on every field".to_string()
            } else {
                bad.join("; ")
            },
        ));
    }
    Ok(out)
}

/// Criterion 8: Frobenius-orbit censuses behind the plus/minus class lemmas.
pub fn checks_pm_class(max_q: u64) -> Result<Vec<Check>> {
    let mut bad = Vec::new();
    let mut tested = 0u32;
    for (q, p, k) in prime_powers_to(max_q.min(31)) {
        let ctx = make_field(p, k)?;
        let r = pm_class_audit(&ctx)?;
        if !r.ok() {
            bad.push(format!(
                "q={}: values {}/{} lines {}/{} A-base {}/{}",
                q,
                r.value_pairs(),
                r.expected_value_pairs,
                r.line_pairs(),
                r.expected_line_pairs,
                r.a_base(),
                r.expected_a_base
            ));
        }
        tested += 1;
    }
    Ok(vec![Check::new(
        "C8.pm-censuses",
        bad.is_empty(),
        if bad.is_empty() {
            format!(
                "(q-1)^2, q^2 and the A-base census hold on {} prime powers",
                tested
            )
        } else {
            bad.join("; ")
        },
    )])
}

/// Criterion 9: trend reproduction for (4, 5) to the stated limit.
pub fn checks_trends(limit: u64) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let records = trend_scan(4, 5, TrendGroup::Agl1, limit)?;
    let allowed: [BigInt; 3] = [BigInt::from(1), BigInt::from(5), BigInt::from(13)];
    let mut offenders = Vec::new();
    for r in &records {
        let c = r.agl1_coeff().expect("AGL1 counts divide by q^2 - q");
        if !allowed.contains(&c) {
            offenders.push(format!("q={} lies on {}(t^2-t)", r.q, c));
        }
    }
    out.push(Check::new(
        "C9a.trend-coefficients",
        offenders.is_empty(),
        if offenders.is_empty() {
            format!("{} records all on {{1,5,13}}(t^2-t)", records.len())
        } else {
            format!(
                "{} of {} records off the stated trends: {}",
                offenders.len(),
                records.len(),
                offenders.join("; ")
            )
        },
    ));
    let flag_ok = records
        .iter()
        .all(|r| r.right_trend == ((r.q - 1) % 20 == 0));
    out.push(Check::new(
        "C9b.right-trend-flag",
        flag_ok,
        "right trend records are exactly those with 20 | q - 1",
    ));
    let right = records.iter().filter(|r| r.right_trend).count() as u64;
    let total = records.len() as u64;
    out.push(Check::new(
        "C9c.right-trend-density",
        5 * right < total,
        format!("density {}/{} (below 1/5 exactly)", right, total),
    ));
    let rep = residue_evidence(4, 5, limit)?;
    let passed = rep.class_one_sufficient
        && rep.class_two_sufficient
        && rep.distinct_polynomials == Some(true);
    let c2: Vec<String> = rep.class_two.iter().map(|w| w.q.to_string()).collect();
    out.push(Check::new(
        "C9d.residue-evidence",
        passed,
        format!(
            "class 1 mod 20: {:?}; class 2 mod 20: {:?}{}",
            rep.class_one.iter().map(|w| w.q).collect::<Vec<_>>(),
            c2,
            if rep.class_two_sufficient {
                String::new()
            } else {
                " (2 is the only prime in class 2 mod 20; three witnesses cannot exist)".to_string()
            }
        ),
    ));
    Ok(out)
}

/// Criterion 10: exploratory detectors at (m, n) = (3, 5), q = 11. The
/// outcome is reported, not asserted; the check verifies the detectors run
/// deterministically and surfaces the measured findings.
pub fn checks_exploratory() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let f11 = make_field(11, 1)?;
    let gap1 = formula_gap(&f11, 5, 3, false)?;
    let gap2 = formula_gap(&f11, 5, 3, false)?;
    let positive = gap1 > BigInt::from(0);
    out.push(Check::new(
        "C10.formula-gap.q11",
        gap1 == gap2,
        format!(
            "MEASURED gap = {} ({}; the documented proof-gap analysis predicted positive)",
            gap1,
            if positive {
                "positive as predicted"
            } else {
                "ZERO OR NEGATIVE: reportable finding"
            },
        ),
    ));
    let census1 = schur_audit(&f11, 5, 3)?;
    let census2 = schur_audit(&f11, 5, 3)?;
    out.push(Check::new(
        "C10.twist-census.q11",
        census1.twisted_irr_pairs == census2.twisted_irr_pairs,
        format!(
            "MEASURED twisted irreducible pairs = {} of {} ({})",
            census1.twisted_irr_pairs,
            census1.total_irr_pairs,
            if census1.twisted_irr_pairs > 0 {
                "positive as predicted: the rationality corollary fails over F_11"
            } else {
                "ZERO: reportable finding"
            }
        ),
    ));
    // clean-q gaps surfaced prominently: the stated expectation was zero
    let mut notes = Vec::new();
    for q in [7u64, 13] {
        let ctx = make_field(q, 1)?;
        let gap = formula_gap(&ctx, 5, 3, false)?;
        notes.push(format!("gap(q={}) = {}", q, gap));
    }
    out.push(Check::new(
        "C10.clean-q-gaps",
        true,
        format!(
            "MEASURED {} ; negative gaps equal -q^4(q-1): the motive's A3 term counts \
             twisted eigendata with the split fiber (q^2+q) where the classical count \
             has q^2-q",
            notes.join(", ")
        ),
    ));
    Ok(out)
}

/// Criterion 11: every count-valued check on F_9 is invariant under the
/// choice of irreducible modulus.
pub fn checks_modulus_independence() -> Result<Vec<Check>> {
    let canonical = make_field(3, 2)?;
    let alt_mod = alternative_modulus(3, 2)?;
    let alternative = make_field_with_modulus(3, 2, &alt_mod)?;
    let fingerprint = |ctx: &FieldCtx| -> Result<Vec<String>> {
        let mut v = Vec::new();
        for (m, n) in [(1u64, 1u64), (4, 5)] {
            v.push(count_power_fibers(&GroupDescriptor::agl1(ctx), n, m)?.to_string());
        }
        for l in 1..=30 {
            v.push(unity_root_count(ctx, l).to_string());
        }
        for (m, n) in [(3u64, 5u64), (4, 5), (5, 7), (4, 9)] {
            v.push(omega_set(ctx, m, n)?.len().to_string());
            let mut roundtrips = 0u64;
            for t in ctx.units() {
                let (x, y) = cusp_param(ctx, m, n, t)?;
                if cusp_inv(ctx, m, n, x, y)? == t {
                    roundtrips += 1;
                }
            }
            v.push(roundtrips.to_string());
        }
        let pm = pm_class_audit(ctx)?;
        v.push(pm.value_pairs().to_string());
        v.push(pm.line_pairs().to_string());
        v.push(pm.a_base().to_string());
        Ok(v)
    };
    let a = fingerprint(&canonical)?;
    let b = fingerprint(&alternative)?;
    Ok(vec![Check::new(
        "C11.modulus-independence",
        a == b,
        format!(
            "{} count-valued results identical for moduli x^2+1 and x^2+x+2 over F_3",
            a.len()
        ),
    )])
}

/// Suite selector used by the CLI.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Suite {
    Ffield,
    Agl1,
    Agl2,
    Lemmas,
    Symbolic,
    All,
}

/// Run a suite with the given q cap (where a criterion is q-parametric) and
/// slowness toggle.
pub fn run_suite(suite: Suite, max_q: u64, slow: bool) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let want = |s: Suite| suite == s || suite == Suite::All;
    if want(Suite::Ffield) {
        checks.extend(checks_unity_roots(max_q.min(81))?);
    }
    if want(Suite::Agl1) {
        checks.extend(checks_agl1_exactness(max_q.min(64))?);
    }
    if want(Suite::Agl2) {
        checks.extend(checks_agl2_exactness(slow)?);
        checks.extend(checks_engine_cross_validation()?);
        checks.extend(checks_stratified()?);
    }
    if want(Suite::Lemmas) {
        checks.extend(checks_cusp(max_q.min(81))?);
        checks.extend(checks_pm_class(max_q.min(31))?);
    }
    if want(Suite::Symbolic) {
        checks.extend(checks_symbolic_identities()?);
    }
    if suite == Suite::All {
        checks.extend(checks_trends(3000)?);
        checks.extend(checks_exploratory()?);
        checks.extend(checks_modulus_independence()?);
    }
    Ok(checks)
}

/// Fast internal-consistency battery; healthy builds pass everything here.
pub fn selftest() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    checks.extend(checks_symbolic_identities()?);
    checks.extend(checks_unity_roots(27)?);
    checks.extend(checks_cusp(25)?);
    checks.extend(checks_pm_class(9)?);
    checks.extend(checks_modulus_independence()?);
    checks.extend(checks_exploratory()?);
    // engine agreement on a small slice
    let f5 = make_field(5, 1)?;
    let agl1 = GroupDescriptor::agl1(&f5);
    let ok = count_naive(&agl1, 3, 2)? == count_power_fibers(&agl1, 3, 2)?;
    checks.push(Check::new(
        "selftest.engines",
        ok,
        "naive vs fibers on AGL1(F_5)",
    ));
    // frozen gap regressions: the detector is deterministic and the measured
    // values are pinned
    let f7 = make_field(7, 1)?;
    let gap7 = formula_gap(&f7, 5, 3, false)?;
    checks.push(Check::new(
        "selftest.gap-regression",
        gap7 == BigInt::from(-14406),
        format!("gap at clean q=7 pinned to -14406, measured {}", gap7),
    ));
    // partition at q = 7 and 11
    for q in [7u64, 11] {
        let ctx = make_field(q, 1)?;
        let rep = stratified_count(&ctx, 5, 3, false)?;
        let tot = count_agl2_reduced(&ctx, 5, 3, false)?;
        checks.push(Check::new(
            format!("selftest.partition.q{}", q),
            rep.total_points == tot,
            "stratified census partitions the engine count",
        ));
    }
    Ok(checks)
}
