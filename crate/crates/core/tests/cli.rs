use std::process::{Command, Output};

use oddzeta::cli::{to_json, PolyReport, Report, TableReport, VerifyReport};

fn oddzeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oddzeta"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn compute_zeta3() {
    let o = oddzeta(&["compute", "--p", "1", "--rep", "corollary", "--digits", "30"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("1.2020569031595942853997381615"), "{s}");
}

#[test]
fn compute_json_round_trips() {
    let o = oddzeta(&["compute", "--p", "2", "--rep", "theorem", "--digits", "50", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let report: Report = serde_json::from_str(&text).unwrap();
    assert_eq!(to_json(&report), text);
    assert_eq!(report.command, "compute");
    assert!(report.value.starts_with("1.036927755143369926331365486457"));
    assert_eq!(report.diagnostics["converged"], true);
}

#[test]
fn rejects_p_zero() {
    let o = oddzeta(&["compute", "--p", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("p must be ≥ 1"));
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["compute"][..],
        &["compute", "--p", "1", "--digits", "5"],
        &["compute", "--p", "1", "--digits", "10001"],
        &["compute", "--p", "1", "--rep", "nope"],
        &["frobnicate"],
        &[],
    ] {
        assert_eq!(oddzeta(args).status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(oddzeta(&["--help"]).status.code(), Some(0));
    let v = oddzeta(&["--version"]);
    assert_eq!(v.status.code(), Some(0));
    assert!(stdout(&v).starts_with("oddzeta "));
}

#[test]
fn poly_latex() {
    let o = oddzeta(&["poly", "--p", "1", "--format", "latex"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim_end(), "\\frac{\\pi^2}{6}\\left(t^3 - t\\right)");
}

#[test]
fn poly_json_is_homogeneous() {
    let o = oddzeta(&["poly", "--p", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let report: PolyReport = serde_json::from_str(&text).unwrap();
    assert_eq!(to_json(&report), text);
    assert!(!report.terms.is_empty());
    assert!(report.terms.iter().all(|t| t.pi_exp == 6));
    assert!(report.factored.unwrap().contains("(3*t^4 - 18*t^2 + 31)"));
}

#[test]
fn poly_outside_catalog() {
    let o = oddzeta(&["poly", "--p", "13", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("expanded"));
    assert!(!s.contains("factored"));

    let o = oddzeta(&["poly", "--p", "5"]);
    assert!(stdout(&o).contains("t(t^2 - 1)(t^2 - 5)(3*t^6 - 37*t^4 + 225*t^2 - 511)"));
}

#[test]
fn digamma_half() {
    let o = oddzeta(&["digamma", "--z", "0.5", "--digits", "30", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let r: Report = serde_json::from_str(&stdout(&o)).unwrap();
    // −γ − 2 ln 2
    assert!(r.value.starts_with("-1.963510026021423479440976333"));
    assert!(r.reference.starts_with("-1.963510026021423479440976333"));
}

#[test]
fn digamma_out_of_domain() {
    let o = oddzeta(&["digamma", "--z", "1.5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("(0, 1)"));
    assert_eq!(oddzeta(&["digamma", "--z", "-0.5"]).status.code(), Some(1));
    assert_eq!(oddzeta(&["digamma", "--z", "abc"]).status.code(), Some(1));
}

#[test]
fn gammaderiv_two() {
    let o = oddzeta(&["gammaderiv", "--n", "2", "--digits", "25", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let r: Report = serde_json::from_str(&text).unwrap();
    assert_eq!(to_json(&r), text);
    // γ² + π²/6
    assert!(r.value.starts_with("1.97811199065594511"));
    let diff: f64 = r.diagnostics["difference"].as_str().unwrap().parse().unwrap();
    assert!(diff < 1e-20);
}

#[test]
fn table_csv() {
    let o = oddzeta(&["table", "--max-p", "2", "--digits", "20", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("p,rep,value,abs_error,evaluations"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 8);
    assert!(rows[0].starts_with("1,theorem,1.20205690315959"));
    assert!(rows[7].starts_with("2,ck-bernoulli,1.03692775514336"));
}

#[test]
fn table_json_round_trips() {
    let o = oddzeta(&["table", "--max-p", "1", "--rep", "ck-euler", "--digits", "15", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let r: TableReport = serde_json::from_str(&text).unwrap();
    assert_eq!(to_json(&r), text);
    assert_eq!(r.rows.len(), 1);
}

#[test]
fn out_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("poly.json");
    let o = oddzeta(&["poly", "--p", "2", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let r: PolyReport = serde_json::from_str(&text).unwrap();
    assert_eq!(r.terms.len(), 3);

    let bad = dir.path().join("missing/dir/x.txt");
    let o = oddzeta(&["poly", "--p", "2", "--out", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_passes() {
    let o = oddzeta(&["verify", "--digits", "30", "--format", "json"]);
    let text = stdout(&o);
    let r: VerifyReport = serde_json::from_str(&text).unwrap();
    assert_eq!(to_json(&r), text);
    let failed: Vec<_> = r.checks.iter().filter(|c| !c.passed).collect();
    assert!(failed.is_empty(), "{failed:?}");
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_detects_corrupted_bernoulli() {
    let o = oddzeta(&["verify", "--max-p", "4", "--digits", "20", "--inject-fault"]);
    assert_eq!(o.status.code(), Some(3));
    let s = stdout(&o);
    assert!(s.lines().next().unwrap().contains("FAIL"), "{s}");
}

#[test]
fn verify_extended() {
    let o = oddzeta(&["verify", "--max-p", "12"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn non_convergence_exits_two() {
    let o = oddzeta(&["compute", "--p", "8", "--digits", "200", "--max-level", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("did not converge"));
}
