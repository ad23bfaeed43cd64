//! Black-box checks of the command surface: exit codes, determinism, tier
//! agreement.

use std::process::Command;

fn knotvar(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_knotvar"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn count_prints_the_exact_number() {
    let (code, stdout, _) = knotvar(&[
        "count", "--group", "agl1", "--m", "3", "--n", "5", "--q", "7",
    ]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "42\n");
}

#[test]
fn tiers_agree_where_both_accept() {
    let base = [
        "count", "--group", "agl1", "--m", "3", "--n", "5", "--q", "16",
    ];
    let (c1, naive, _) = knotvar(&[&base[..], &["--tier", "naive"]].concat());
    let (c2, fibers, _) = knotvar(&[&base[..], &["--tier", "fibers"]].concat());
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(naive, fibers);
    assert_eq!(naive, "2160\n");
}

#[test]
fn exit_codes() {
    // hypothesis violation without --force
    let (code, _, stderr) = knotvar(&["gap", "--m", "3", "--n", "7", "--q", "7"]);
    assert_eq!(code, 2, "stderr: {}", stderr);
    let (code, _, _) = knotvar(&["gap", "--m", "3", "--n", "7", "--q", "7", "--force"]);
    assert_eq!(code, 0);
    // usage error: unknown flag
    let (code, _, _) = knotvar(&["count", "--group", "agl1", "--m", "3"]);
    assert_eq!(code, 3);
    // usage error: not a prime power
    let (code, _, _) = knotvar(&[
        "count", "--group", "agl1", "--m", "3", "--n", "5", "--q", "6",
    ]);
    assert_eq!(code, 3);
    // even m for AGL2 is a refusal by default
    let (code, _, _) = knotvar(&[
        "count", "--group", "agl2", "--m", "4", "--n", "5", "--q", "3",
    ]);
    assert_eq!(code, 2);
    let (code, _, _) = knotvar(&[
        "count", "--group", "agl2", "--m", "4", "--n", "5", "--q", "3", "--force",
    ]);
    assert_eq!(code, 0);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["trends", "--m", "4", "--n", "5", "--limit", "200"];
    let (c1, out1, _) = knotvar(&args);
    let (c2, out2, _) = knotvar(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(out1, out2);
    // and independent of the thread cap
    let (c3, out3, _) = knotvar(&[&args[..], &["--threads", "1"]].concat());
    assert_eq!(c3, 0);
    assert_eq!(out1, out3);
}

#[test]
fn strata_csv_shape() {
    let (code, stdout, _) = knotvar(&[
        "count",
        "--group",
        "agl2",
        "--m",
        "3",
        "--n",
        "5",
        "--q",
        "7",
        "--tier",
        "reduced",
        "--strata",
        "--twist-census",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("98784\n"));
    assert!(stdout.contains("label,twist,base_pairs,fiber_exp,points"));
    assert!(stdout.contains("A3,quadratic,882,2,43218"));
    assert!(stdout.contains("irreducible pairs: 0 total, 0 quadratically twisted"));
}

#[test]
fn motive_json_for_agl2_carries_the_denominator() {
    let (code, stdout, _) = knotvar(&[
        "motive", "--group", "agl2", "--m", "3", "--n", "5", "--format", "json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["vars"], serde_json::json!(["q", "xi_m", "xi_n"]));
    assert_eq!(v["denominator"], "4");
    // the AGL1 motive is integral and uses the plain schema
    let (_, stdout, _) = knotvar(&[
        "motive", "--group", "agl1", "--m", "3", "--n", "5", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert!(v.get("denominator").is_none());
}

#[test]
fn predict_and_epoly() {
    let (code, stdout, _) = knotvar(&["predict", "--m", "3", "--n", "5", "--q", "31"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("trend polynomial: 9*t^2 - 9*t"));
    assert!(stdout.contains("predicted count at q=31: 8370"));
    let (code, stdout, _) = knotvar(&["epoly", "--group", "agl1", "--m", "4", "--n", "5"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "13*t^2 - 13*t\n");
}

#[test]
fn verify_symbolic_suite_is_green() {
    let (code, stdout, _) = knotvar(&["verify", "--suite", "symbolic"]);
    assert_eq!(code, 0, "stdout: {}", stdout);
    assert!(stdout.contains("verify: 3/3 checks passed"));
}
