//! Prime-power sieving, trend classification of counts across `F_q`,
//! density reporting, residue-class evidence, and plot-data emission.
//!
//! A scan produces one [`TrendRecord`] per prime power. Counts come from the
//! enumeration engines up to the crossover bound, and from the engine-
//! validated master identity `(d_m d_n - d_m - d_n + 2)(q^2 - q)` above it;
//! records whose characteristic divides `nm` fall outside the identity and
//! are measured honestly (fiber enumeration, or an exact root-set count for
//! fields past the construction bound). The `provenance` column records
//! which path produced each count.

use crate::closedform::{self, Group};
use crate::error::{Error, Result};
use crate::ffield::{make_field, DEFAULT_FIELD_BOUND};
use crate::matgroups::GroupDescriptor;
use crate::repcount::{agl1_fiber_census, count_agl2_reduced, count_power_fibers};
use num_bigint::BigInt;
use num_integer::gcd;
use num_traits::Zero;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Sieve limit cap.
pub const MAX_SIEVE_LIMIT: u64 = 10_000_000;
/// Below this bound counts come from the group engines directly.
pub const ENGINE_CROSSOVER_Q: u64 = 64;
/// AGL2 scans stop here.
pub const AGL2_SCAN_CAP: u64 = 31;

/// All prime powers `p^k <= limit`, ascending, as `(q, p, k)`.
pub fn prime_powers(limit: u64) -> Result<Vec<(u64, u64, u32)>> {
    if limit > MAX_SIEVE_LIMIT {
        return Err(Error::BoundExceeded {
            what: "sieve limit",
            got: limit as u128,
            bound: MAX_SIEVE_LIMIT as u128,
        });
    }
    let mut composite = vec![false; (limit + 1) as usize];
    let mut out = Vec::new();
    for p in 2..=limit {
        if composite[p as usize] {
            continue;
        }
        let mut j = p * p;
        while j <= limit {
            composite[j as usize] = true;
            j += p;
        }
        let mut q = p;
        let mut k = 1u32;
        loop {
            out.push((q, p, k));
            match q.checked_mul(p) {
                Some(next) if next <= limit => {
                    q = next;
                    k += 1;
                }
                _ => break,
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum TrendGroup {
    Agl1,
    Agl2,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Provenance {
    Engine,
    Formula,
}

impl Provenance {
    pub fn name(self) -> &'static str {
        match self {
            Provenance::Engine => "engine",
            Provenance::Formula => "formula",
        }
    }
}

/// One row of a trend scan.
#[derive(Clone, Debug)]
pub struct TrendRecord {
    pub q: u64,
    pub p: u64,
    pub k: u32,
    pub d_n: u64,
    pub d_m: u64,
    pub count: BigInt,
    pub predicted: BigInt,
    pub right_trend: bool,
    pub clean: bool,
    pub hypothesis_ok: bool,
    pub provenance: Provenance,
}

impl TrendRecord {
    /// The trend coefficient `count / (q^2 - q)` of an AGL1 record.
    pub fn agl1_coeff(&self) -> Option<BigInt> {
        let fiber = BigInt::from(self.q) * BigInt::from(self.q - 1);
        let (quo, rem) = num_integer::Integer::div_rem(&self.count, &fiber);
        if rem.is_zero() {
            Some(quo)
        } else {
            None
        }
    }
}

/// Exact count of `t in F_q^*` with `Phi_n(t^m) = Phi_m(t^n) = 0` through
/// root-set gcd arithmetic; valid in every characteristic. Used only past
/// the field construction bound.
fn omega_like_count_gcd(q: u64, p: u64, m: u64, n: u64) -> u64 {
    // roots(Phi_l) = hat mu_l when p does not divide l, and all of mu_{l'}
    // with l' the p-free part otherwise
    let p_free = |mut l: u64| {
        while l.is_multiple_of(p) {
            l /= p;
        }
        l
    };
    let (e_a, excl_a) = if n.is_multiple_of(p) {
        (m * p_free(n), false)
    } else {
        (m * n, true)
    };
    let (e_b, excl_b) = if m.is_multiple_of(p) {
        (n * p_free(m), false)
    } else {
        (n * m, true)
    };
    let s = |u: u64, v: u64| gcd(gcd(u, v), q - 1);
    let mut z = s(e_a, e_b) as i64;
    if excl_a {
        z -= s(m, e_b) as i64;
    }
    if excl_b {
        z -= s(e_a, n) as i64;
    }
    if excl_a && excl_b {
        z += s(m, n) as i64;
    }
    debug_assert!(z >= 0);
    z as u64
}

fn agl1_count_at(q: u64, p: u64, k: u32, m: u64, n: u64) -> Result<(BigInt, Provenance)> {
    let hyp = !m.is_multiple_of(p) && !n.is_multiple_of(p);
    if q <= ENGINE_CROSSOVER_Q {
        let ctx = make_field(p, k)?;
        let d = GroupDescriptor::agl1(&ctx);
        return Ok((count_power_fibers(&d, n, m)?, Provenance::Engine));
    }
    if hyp {
        let (d_m, d_n) = (gcd(m, q - 1), gcd(n, q - 1));
        let c = BigInt::from((d_m * d_n) as i128 - d_m as i128 - d_n as i128 + 2);
        return Ok((
            c * BigInt::from(q) * BigInt::from(q - 1),
            Provenance::Formula,
        ));
    }
    if q <= DEFAULT_FIELD_BOUND {
        let ctx = make_field(p, k)?;
        let (_, count) = agl1_fiber_census(&ctx, n, m);
        return Ok((count, Provenance::Engine));
    }
    let z = omega_like_count_gcd(q, p, m, n);
    Ok((
        BigInt::from(z + 1) * BigInt::from(q) * BigInt::from(q - 1),
        Provenance::Formula,
    ))
}

/// One record per prime power up to `limit`.
pub fn trend_scan(m: u64, n: u64, group: TrendGroup, limit: u64) -> Result<Vec<TrendRecord>> {
    if gcd(m, n) != 1 {
        return Err(Error::NotCoprime(m, n));
    }
    let pps = prime_powers(limit)?;
    let group_kind = match group {
        TrendGroup::Agl1 => Group::Agl1,
        TrendGroup::Agl2 => Group::Agl2,
    };
    let agl2_motive = match group {
        TrendGroup::Agl1 => None,
        TrendGroup::Agl2 => Some(closedform::motive_agl2_unchecked(m, n)?),
    };
    let records: Result<Vec<Option<TrendRecord>>> = pps
        .par_iter()
        .map(|&(q, p, k)| {
            if group == TrendGroup::Agl2 && q > AGL2_SCAN_CAP {
                return Ok(None);
            }
            let d_m = gcd(m, q - 1);
            let d_n = gcd(n, q - 1);
            let hypothesis_ok = closedform::hypotheses_ok(q, m, n, group_kind);
            let (count, provenance) = match group {
                TrendGroup::Agl1 => agl1_count_at(q, p, k, m, n)?,
                TrendGroup::Agl2 => {
                    let ctx = make_field(p, k)?;
                    (count_agl2_reduced(&ctx, n, m, false)?, Provenance::Engine)
                }
            };
            let predicted = match group {
                TrendGroup::Agl1 => {
                    BigInt::from((d_m * d_n) as i128 - d_m as i128 - d_n as i128 + 2)
                        * BigInt::from(q)
                        * BigInt::from(q - 1)
                }
                TrendGroup::Agl2 => agl2_motive
                    .as_ref()
                    .unwrap()
                    .eval(q, d_m as i64, d_n as i64),
            };
            Ok(Some(TrendRecord {
                q,
                p,
                k,
                d_n,
                d_m,
                count,
                predicted,
                right_trend: (q - 1) % n == 0 && (q - 1) % m == 0,
                clean: closedform::is_clean(q, m, n),
                hypothesis_ok,
                provenance,
            }))
        })
        .collect();
    Ok(records?.into_iter().flatten().collect())
}

/// Fixed CSV schema, one row per prime power, ascending `q`.
pub fn records_to_csv(records: &[TrendRecord]) -> String {
    let mut out =
        String::from("q,p,k,d_n,d_m,count,predicted,right_trend,clean,hypothesis_ok,provenance\n");
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.q,
            r.p,
            r.k,
            r.d_n,
            r.d_m,
            r.count,
            r.predicted,
            r.right_trend,
            r.clean,
            r.hypothesis_ok,
            r.provenance.name()
        );
    }
    out
}

/// Per-trend multiplicities and the right-trend fraction as an exact pair.
pub struct DensityReport {
    pub m: u64,
    pub n: u64,
    pub records: Vec<TrendRecord>,
    pub right_count: u64,
    pub total: u64,
    /// Measured trend coefficient (decimal string) to record count.
    pub per_trend: BTreeMap<String, u64>,
}

impl DensityReport {
    /// Right-trend fraction as an exact rational `(numerator, denominator)`.
    pub fn fraction(&self) -> (u64, u64) {
        (self.right_count, self.total)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let trends: Vec<serde_json::Value> = {
            let mut groups: BTreeMap<(u64, u64), u64> = BTreeMap::new();
            for r in &self.records {
                *groups.entry((r.d_m, r.d_n)).or_insert(0) += 1;
            }
            groups
                .into_iter()
                .map(|((d_m, d_n), count_points)| {
                    let coeff = (d_m * d_n) as i128 - d_m as i128 - d_n as i128 + 2;
                    serde_json::json!({
                        "d_m": d_m,
                        "d_n": d_n,
                        "coeff": coeff.to_string(),
                        "count_points": count_points,
                    })
                })
                .collect()
        };
        serde_json::json!({
            "trends": trends,
            "right_trend_fraction": format!("{}/{}", self.right_count, self.total),
        })
    }
}

pub fn density_report(m: u64, n: u64, limit: u64) -> Result<DensityReport> {
    let records = trend_scan(m, n, TrendGroup::Agl1, limit)?;
    let mut per_trend: BTreeMap<String, u64> = BTreeMap::new();
    let mut right = 0u64;
    for r in &records {
        let c = r
            .agl1_coeff()
            .expect("AGL1 counts are multiples of q^2 - q");
        *per_trend.entry(c.to_string()).or_insert(0) += 1;
        if r.right_trend {
            right += 1;
        }
    }
    Ok(DensityReport {
        m,
        n,
        right_count: right,
        total: records.len() as u64,
        records,
        per_trend,
    })
}

/// A gnuplot script referencing an emitted CSV; no plotting dependency.
pub fn gnuplot_script(csv_path: &str, m: u64, n: u64, report: &DensityReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# counting trends for Rep_({},{}) into AGL1", m, n);
    let _ = writeln!(out, "set datafile separator ','");
    let _ = writeln!(out, "set xlabel 'q'");
    let _ = writeln!(out, "set ylabel 'number of points'");
    let _ = writeln!(out, "set key outside");
    let mut curves = String::new();
    for coeff in report.per_trend.keys() {
        let _ = write!(curves, ", {}*(x**2 - x) title 'trend {}'", coeff, coeff);
    }
    let _ = writeln!(
        out,
        "plot '{}' every ::1 using 1:6 with points pt 7 ps 0.6 title 'exact count'{}",
        csv_path, curves
    );
    out
}

#[derive(Clone, Debug)]
pub struct ResidueWitness {
    pub q: u64,
    pub count: BigInt,
    pub coeff: BigInt,
}

/// Dirichlet-class evidence: the first primes in the classes `1 mod nm` and
/// `2 mod nm` with their exact counts and trend coefficients.
#[derive(Clone, Debug)]
pub struct ResidueReport {
    pub m: u64,
    pub n: u64,
    pub modulus: u64,
    pub class_one: Vec<ResidueWitness>,
    pub class_two: Vec<ResidueWitness>,
    pub class_one_sufficient: bool,
    pub class_two_sufficient: bool,
    /// Whether the two classes' measured trend polynomials differ; `None`
    /// when a class has no witnesses below the limit.
    pub distinct_polynomials: Option<bool>,
}

const RESIDUE_WITNESSES: usize = 3;

pub fn residue_evidence(m: u64, n: u64, limit: u64) -> Result<ResidueReport> {
    if gcd(m, n) != 1 {
        return Err(Error::NotCoprime(m, n));
    }
    let modulus = n * m;
    if modulus >= limit {
        return Err(Error::Precondition(format!(
            "nm = {} must be below the limit {}",
            modulus, limit
        )));
    }
    let witnesses = |class: u64| -> Result<Vec<ResidueWitness>> {
        let mut out = Vec::new();
        for &(q, p, k) in prime_powers(limit)?.iter() {
            if k != 1 || q % modulus != class {
                continue;
            }
            let (count, _) = agl1_count_at(q, p, k, m, n)?;
            let fiber = BigInt::from(q) * BigInt::from(q - 1);
            let coeff = &count / &fiber;
            out.push(ResidueWitness { q, count, coeff });
            if out.len() >= RESIDUE_WITNESSES {
                break;
            }
        }
        Ok(out)
    };
    let class_one = witnesses(1 % modulus)?;
    let class_two = witnesses(2 % modulus)?;
    let distinct = match (class_one.first(), class_two.first()) {
        (Some(a), Some(b)) => Some(a.coeff != b.coeff),
        _ => None,
    };
    Ok(ResidueReport {
        m,
        n,
        modulus,
        class_one_sufficient: class_one.len() >= RESIDUE_WITNESSES,
        class_two_sufficient: class_two.len() >= RESIDUE_WITNESSES,
        class_one,
        class_two,
        distinct_polynomials: distinct,
    })
}
