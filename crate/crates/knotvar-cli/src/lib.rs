//! Command surface for the torus-knot representation counting laboratory.
//!
//! Exit codes: 0 success, 1 verification failure, 2 hypothesis violation
//! without `--force`, 3 usage error.

pub mod suite;

use clap::{Parser, Subcommand, ValueEnum};
use knotvar_core::closedform::{self, Group};
use knotvar_core::error::Error;
use knotvar_core::ffield::{make_field, prime_factors};
use knotvar_core::matgroups::GroupDescriptor;
use knotvar_core::repcount::{count_agl2_reduced, count_naive, count_power_fibers, formula_gap};
use knotvar_core::strata::{schur_audit, stratified_count};
use knotvar_core::trends::{
    density_report, gnuplot_script, records_to_csv, residue_evidence, trend_scan, TrendGroup,
};

#[derive(Parser)]
#[command(
    name = "knotvar",
    about = "Exact point counts, motives and trend scans for torus-knot representation varieties"
)]
struct Cli {
    /// Cap data-parallel worker threads; results never depend on this.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
enum GroupArg {
    Agl1,
    Agl2,
    Gl2,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
enum TierArg {
    Naive,
    Fibers,
    Reduced,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
enum FormatArg {
    Human,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
enum SuiteArg {
    Ffield,
    Agl1,
    Agl2,
    Lemmas,
    Symbolic,
    All,
}

impl SuiteArg {
    fn to_suite(self) -> suite::Suite {
        match self {
            SuiteArg::Ffield => suite::Suite::Ffield,
            SuiteArg::Agl1 => suite::Suite::Agl1,
            SuiteArg::Agl2 => suite::Suite::Agl2,
            SuiteArg::Lemmas => suite::Suite::Lemmas,
            SuiteArg::Symbolic => suite::Suite::Symbolic,
            SuiteArg::All => suite::Suite::All,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact |Rep_{m,n}(G)(F_q)| from an enumeration engine
    Count {
        #[arg(long, value_enum)]
        group: GroupArg,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        q: u64,
        /// Engine tier; `reduced` applies to AGL2 only
        #[arg(long, value_enum, default_value = "fibers")]
        tier: TierArg,
        /// Emit the stratified census CSV (AGL2 only)
        #[arg(long)]
        strata: bool,
        /// Emit the irreducible twist census (AGL2 only)
        #[arg(long)]
        twist_census: bool,
        /// Run outside the theorem hypotheses as a probe
        #[arg(long)]
        force: bool,
    },
    /// Closed-form motive in q, xi_m, xi_n
    Motive {
        #[arg(long, value_enum)]
        group: GroupArg,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value = "human")]
        format: FormatArg,
        #[arg(long)]
        force: bool,
    },
    /// E-polynomial: the complex specialization xi_l = l
    Epoly {
        #[arg(long, value_enum)]
        group: GroupArg,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        force: bool,
    },
    /// Finite specialization: trend polynomial and predicted count at q
    Predict {
        #[arg(long, value_enum, default_value = "agl1")]
        group: GroupArg,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        q: u64,
        /// Override the xi_m divisor (defaults to gcd(m, q-1))
        #[arg(long)]
        dm: Option<u64>,
        /// Override the xi_n divisor (defaults to gcd(n, q-1))
        #[arg(long)]
        dn: Option<u64>,
        #[arg(long)]
        force: bool,
    },
    /// Discrepancy detector: engine count minus specialized closed form
    Gap {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        force: bool,
    },
    /// Scan counting trends across prime powers
    Trends {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value = "agl1")]
        group: GroupArg,
        #[arg(long, default_value_t = 3000)]
        limit: u64,
        /// Write the CSV here (stdout gets the JSON summary instead)
        #[arg(long)]
        out: Option<String>,
        /// Also write a gnuplot script referencing the CSV
        #[arg(long)]
        gnuplot: Option<String>,
    },
    /// First primes in the classes 1 and 2 mod nm with their trends
    ResidueEvidence {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 3000)]
        limit: u64,
    },
    /// Right-trend density and per-trend multiplicities
    Density {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 3000)]
        limit: u64,
        #[arg(long)]
        out: Option<String>,
        #[arg(long)]
        gnuplot: Option<String>,
    },
    /// Run a verification suite; exits 1 on any failed check
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, default_value_t = 81)]
        max_q: u64,
        /// Include the slow AGL2 instances (q = 31, 37)
        #[arg(long)]
        slow: bool,
    },
    /// Fast internal-consistency battery
    Selftest,
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::HypothesisViolation(_) => 2,
        _ => 3,
    }
}

fn parse_prime_power(q: u64) -> Result<(u64, u32), Error> {
    if q < 2 {
        return Err(Error::Precondition(format!("{} is not a prime power", q)));
    }
    let p = prime_factors(q)[0];
    let mut v = q;
    let mut k = 0u32;
    while v.is_multiple_of(p) {
        v /= p;
        k += 1;
    }
    if v != 1 {
        return Err(Error::Precondition(format!("{} is not a prime power", q)));
    }
    Ok((p, k))
}

fn hypothesis_gate(q: u64, m: u64, n: u64, group: GroupArg, force: bool) -> Result<(), Error> {
    let kind = match group {
        GroupArg::Agl2 => Group::Agl2,
        _ => Group::Agl1,
    };
    if closedform::hypotheses_ok(q, m, n, kind) {
        return Ok(());
    }
    if force {
        eprintln!(
            "note: outside-theorem probe (hypotheses fail for q={}, m={}, n={})",
            q, m, n
        );
        return Ok(());
    }
    Err(Error::HypothesisViolation(format!(
        "closed-form hypotheses fail for q={}, m={}, n={}",
        q, m, n
    )))
}

fn run_cmd(cmd: Cmd) -> Result<i32, Error> {
    match cmd {
        Cmd::Count {
            group,
            m,
            n,
            q,
            tier,
            strata,
            twist_census,
            force,
        } => {
            let (p, k) = parse_prime_power(q)?;
            hypothesis_gate(q, m, n, group, force)?;
            let ctx = make_field(p, k)?;
            let count = match (group, tier) {
                (GroupArg::Agl2, TierArg::Reduced) => count_agl2_reduced(&ctx, n, m, true)?,
                (_, TierArg::Reduced) => {
                    return Err(Error::Precondition(
                        "the reduced tier applies to AGL2 only".into(),
                    ))
                }
                _ => {
                    let d = match group {
                        GroupArg::Agl1 => GroupDescriptor::agl1(&ctx),
                        GroupArg::Agl2 => GroupDescriptor::agl2(&ctx),
                        GroupArg::Gl2 => GroupDescriptor::gl2(&ctx),
                    };
                    match tier {
                        TierArg::Naive => count_naive(&d, n, m)?,
                        _ => count_power_fibers(&d, n, m)?,
                    }
                }
            };
            println!("{}", count);
            if strata {
                if group != GroupArg::Agl2 {
                    return Err(Error::Precondition("--strata applies to AGL2 only".into()));
                }
                let report = stratified_count(&ctx, n, m, force)?;
                print!("{}", report.to_csv());
                if report.nonstandard_fiber_pairs > 0 {
                    println!(
                        "# note: {} non-commuting triangular pairs carry a kernel below \
                         their stratum's nominal exponent; points above are exact",
                        report.nonstandard_fiber_pairs
                    );
                }
            }
            if twist_census {
                if group != GroupArg::Agl2 {
                    return Err(Error::Precondition(
                        "--twist-census applies to AGL2 only".into(),
                    ));
                }
                let rep = schur_audit(&ctx, n, m)?;
                println!(
                    "irreducible pairs: {} total, {} quadratically twisted",
                    rep.total_irr_pairs, rep.twisted_irr_pairs
                );
                for ((family, twist), count) in &rep.by_family {
                    println!("{},{},{}", family, twist, count);
                }
            }
            Ok(0)
        }
        Cmd::Motive {
            group,
            m,
            n,
            format,
            force,
        } => {
            let motive = match group {
                GroupArg::Agl1 => closedform::motive_agl1(m, n)?,
                GroupArg::Agl2 => {
                    if force {
                        closedform::motive_agl2_unchecked(m, n)?
                    } else {
                        closedform::motive_agl2(m, n)?
                    }
                }
                GroupArg::Gl2 => closedform::gl2_irr_motive(),
            };
            match format {
                FormatArg::Human => println!("{}", motive),
                FormatArg::Json => println!("{}", motive.to_json()),
            }
            Ok(0)
        }
        Cmd::Epoly { group, m, n, force } => {
            let motive = match group {
                GroupArg::Agl1 => closedform::motive_agl1(m, n)?,
                GroupArg::Agl2 => {
                    if force {
                        closedform::motive_agl2_unchecked(m, n)?
                    } else {
                        closedform::motive_agl2(m, n)?
                    }
                }
                GroupArg::Gl2 => closedform::gl2_irr_motive(),
            };
            println!("{}", motive.specialize(m as i64, n as i64));
            Ok(0)
        }
        Cmd::Predict {
            group,
            m,
            n,
            q,
            dm,
            dn,
            force,
        } => {
            parse_prime_power(q)?;
            hypothesis_gate(q, m, n, group, force)?;
            let kind = match group {
                GroupArg::Agl2 => Group::Agl2,
                GroupArg::Gl2 => {
                    return Err(Error::Precondition("predict supports agl1 and agl2".into()))
                }
                GroupArg::Agl1 => Group::Agl1,
            };
            let d_m = dm.unwrap_or_else(|| num_integer::gcd(m, q - 1));
            let d_n = dn.unwrap_or_else(|| num_integer::gcd(n, q - 1));
            let poly = closedform::counting_polynomial(m, n, kind, d_m, d_n)?;
            println!("trend polynomial: {}", poly);
            println!("predicted count at q={}: {}", q, poly.eval_u64(q));
            Ok(0)
        }
        Cmd::Gap { m, n, q, force } => {
            let (p, k) = parse_prime_power(q)?;
            let ctx = make_field(p, k)?;
            let gap = formula_gap(&ctx, n, m, force)?;
            println!("{}", gap);
            Ok(0)
        }
        Cmd::Trends {
            m,
            n,
            group,
            limit,
            out,
            gnuplot,
        } => {
            let tgroup = match group {
                GroupArg::Agl1 => TrendGroup::Agl1,
                GroupArg::Agl2 => TrendGroup::Agl2,
                GroupArg::Gl2 => {
                    return Err(Error::Precondition("trends supports agl1 and agl2".into()))
                }
            };
            let records = trend_scan(m, n, tgroup, limit)?;
            let csv = records_to_csv(&records);
            match &out {
                Some(path) => {
                    std::fs::write(path, &csv).map_err(|e| {
                        Error::Precondition(format!("cannot write {}: {}", path, e))
                    })?;
                    if tgroup == TrendGroup::Agl1 {
                        let rep = density_report(m, n, limit)?;
                        println!("{}", rep.to_json());
                        if let Some(gp) = &gnuplot {
                            let script = gnuplot_script(path, m, n, &rep);
                            std::fs::write(gp, script).map_err(|e| {
                                Error::Precondition(format!("cannot write {}: {}", gp, e))
                            })?;
                        }
                    }
                }
                None => {
                    if gnuplot.is_some() {
                        return Err(Error::Precondition(
                            "--gnuplot needs --out for the CSV path".into(),
                        ));
                    }
                    print!("{}", csv);
                }
            }
            Ok(0)
        }
        Cmd::ResidueEvidence { m, n, limit } => {
            let rep = residue_evidence(m, n, limit)?;
            println!(
                "residue classes modulo {} (m={}, n={}), limit {}",
                rep.modulus, m, n, limit
            );
            for (name, witnesses, sufficient) in [
                ("1", &rep.class_one, rep.class_one_sufficient),
                ("2", &rep.class_two, rep.class_two_sufficient),
            ] {
                for w in witnesses {
                    println!(
                        "class {} mod {}: q={} count={} trend={}*(t^2-t)",
                        name, rep.modulus, w.q, w.count, w.coeff
                    );
                }
                if sufficient {
                    println!("class {}: sufficient witnesses (>= 3)", name);
                } else {
                    println!(
                        "class {}: INSUFFICIENT DATA below limit (found {})",
                        name,
                        witnesses.len()
                    );
                }
            }
            match rep.distinct_polynomials {
                Some(d) => println!("trend polynomials distinct: {}", d),
                None => println!("trend polynomials distinct: undetermined (empty class)"),
            }
            Ok(0)
        }
        Cmd::Density {
            m,
            n,
            limit,
            out,
            gnuplot,
        } => {
            let rep = density_report(m, n, limit)?;
            println!("{}", rep.to_json());
            for (coeff, count) in &rep.per_trend {
                println!("trend {}*(t^2-t): {} prime powers", coeff, count);
            }
            if let Some(path) = &out {
                std::fs::write(path, records_to_csv(&rep.records))
                    .map_err(|e| Error::Precondition(format!("cannot write {}: {}", path, e)))?;
                if let Some(gp) = &gnuplot {
                    std::fs::write(gp, gnuplot_script(path, m, n, &rep))
                        .map_err(|e| Error::Precondition(format!("cannot write {}: {}", gp, e)))?;
                }
            } else if gnuplot.is_some() {
                return Err(Error::Precondition(
                    "--gnuplot needs --out for the CSV path".into(),
                ));
            }
            Ok(0)
        }
        Cmd::Verify { suite, max_q, slow } => {
            let checks = suite::run_suite(suite.to_suite(), max_q, slow)?;
            let mut failed = 0;
            for c in &checks {
                println!(
                    "[{}] {}: {}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.id,
                    c.detail
                );
                if !c.passed {
                    failed += 1;
                }
            }
            println!(
                "verify: {}/{} checks passed",
                checks.len() - failed,
                checks.len()
            );
            Ok(if failed > 0 { 1 } else { 0 })
        }
        Cmd::Selftest => {
            let checks = suite::selftest()?;
            let mut failed = 0;
            for c in &checks {
                println!(
                    "[{}] {}: {}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.id,
                    c.detail
                );
                if !c.passed {
                    failed += 1;
                }
            }
            println!(
                "selftest: {}/{} checks passed",
                checks.len() - failed,
                checks.len()
            );
            Ok(if failed > 0 { 1 } else { 0 })
        }
    }
}

/// Dispatch a full argv (including the program name); returns the exit code.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version through this path as well
            let is_help = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return if is_help { 0 } else { 3 };
        }
    };
    if let Some(t) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global();
    }
    match run_cmd(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            exit_code_for(&e)
        }
    }
}
