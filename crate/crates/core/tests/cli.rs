//! End-to-end behaviour of the `tripdm` binary.

use std::fs;
use std::process::{Command, Output};

use tripdm::cli::{RunConfig, CSV_HEADER};

fn tripdm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tripdm"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn data_rows(text: &str) -> Vec<&str> {
    text.lines().skip_while(|l| *l != CSV_HEADER).skip(1).collect()
}

#[test]
fn csv_header_golden() {
    assert_eq!(
        CSV_HEADER,
        "axis,T_solve,T_paper,t1,t2,b1,b2,b3,b4,b5,residual,flags"
    );
    let text = stdout(&tripdm(&["transmission", "--points", "2"]));
    let first_data = text.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(first_data, CSV_HEADER);
}

#[test]
fn default_transmission_has_200_rows() {
    let text = stdout(&tripdm(&["transmission"]));
    assert_eq!(data_rows(&text).len(), 200);
    let alpha = format!("# resolved alpha_eV_per_nm = {:.16e} (auto", 0.45f64 / 7.0);
    assert!(text.contains(&alpha), "{alpha}");
}

#[test]
fn tunnelling_shares_the_schema() {
    let text = stdout(&tripdm(&["tunnelling", "--points", "5"]));
    assert!(text.lines().any(|l| l == CSV_HEADER));
    assert!(text.contains("# note: tunnelling coefficient"));
    assert_eq!(data_rows(&text).len(), 5);
}

#[test]
fn flags_override_the_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.cfg");
    fs::write(&cfg, "# sweep\naxis = V0\nmin = 0.1\nmax = 0.5\npoints = 7\n").unwrap();
    let text = stdout(&tripdm(&["transmission", "--config", cfg.to_str().unwrap(), "--points", "3"]));
    assert!(text.contains("# axis = V0"));
    assert_eq!(data_rows(&text).len(), 3);
    let first: f64 = data_rows(&text)[0].split(',').next().unwrap().parse().unwrap();
    assert_eq!(first, 0.1);
}

#[test]
fn echoed_parameters_parse_back_to_the_run() {
    let text = stdout(&tripdm(&["transmission", "--points", "4", "--V0_eV", "0.3", "--paper-fidelity", "signs"]));
    let rendered: String = text
        .lines()
        .skip(1)
        .take_while(|l| !l.starts_with("# resolved"))
        .map(|l| format!("{}\n", l.trim_start_matches("# ")))
        .collect();
    let c = RunConfig::parse(&rendered).unwrap();
    assert_eq!((c.v0, c.points), (0.3, 4));
    assert_eq!(RunConfig::parse(&c.render()).unwrap(), c);
    assert!(text.contains("# sign_convention = printed"));
}

#[test]
fn out_path_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let out = tripdm(&["bound", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("# tripdm bound\n"));
    assert!(text.contains("-2.9407000000000000e-1"));
}

#[test]
fn unwritable_path_and_bad_config_fail_cleanly() {
    let out = tripdm(&["transmission", "--points", "2", "--out", "/nonexistent-dir/x.csv"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/nonexistent-dir/x.csv"));
    let out = tripdm(&["transmission", "--points", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = tripdm(&["bound", "--kind", "barrier"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn validate_exit_status_and_negative_control() {
    let ok = tripdm(&["validate"]);
    assert_eq!(ok.status.code(), Some(0));
    let text = String::from_utf8(ok.stdout).unwrap();
    assert!(text.contains("OK: 7/7 suites passed"));
    assert!(text.lines().any(|l| l.starts_with("INFO t2:")));
    let bad = tripdm(&["validate", "--perturb-airy-constant", "1e-6"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8(bad.stdout).unwrap().contains("FAIL airy_wronskian"));
}
