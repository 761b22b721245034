use std::path::Path;
use std::process::{Command, Output};

fn lsvlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lsvlab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn sample_is_seeded() {
    let a = lsvlab(&["sample", "--model", "row-regular", "--n", "6", "--seed", "4"]);
    assert!(a.status.success());
    let b = lsvlab(&["sample", "--model", "row-regular", "--n", "6", "--seed", "4"]);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let rows: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    assert!(rows.len() >= 6);
    let odd = lsvlab(&["sample", "--model", "row-regular", "--n", "5"]);
    assert_eq!(odd.status.code(), Some(3));
}

#[test]
fn singularity_prints_exact_fraction() {
    let o = lsvlab(&["singularity", "--model", "iid-rademacher", "--n", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "n=2 singular=8 total=16 fraction=1/2\n");
    let o = lsvlab(&["singularity", "--model", "iid-rademacher", "--n", "7"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn lcd_and_halasz_commands() {
    let dir = tempfile::tempdir().unwrap();
    let e1 = write(dir.path(), "e1.txt", "1.0\n");
    let o = lsvlab(&["lcd", "--input", &e1, "--gamma", "0.1", "--theta-max", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("status=found\n"), "{text}");
    let theta: f64 = text.lines().nth(1).unwrap().trim_start_matches("theta_star=").parse().unwrap();
    assert!((theta - 1.0 / 1.1).abs() <= 1e-3);
    let o = lsvlab(&["lcd", "--input", &e1, "--theta-max", "0.5"]);
    assert!(stdout(&o).starts_with("status=exceeds-theta-max"));
    let bad = write(dir.path(), "bad.txt", "0.6\n0.6\n");
    assert_eq!(lsvlab(&["lcd", "--input", &bad]).status.code(), Some(3));

    let ones = write(dir.path(), "a.txt", &"3\n".repeat(160));
    let o = lsvlab(&["halasz", "--input", &ones, "--p", "2503"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains("n=160\n") && text.contains("holds=true"), "{text}");
    assert_eq!(lsvlab(&["halasz", "--input", &ones, "--p", "2502"]).status.code(), Some(3));
    assert_eq!(lsvlab(&["halasz", "--input", &ones, "--p", "2503", "--m", "3"]).status.code(), Some(3));
}

#[test]
fn tails_csv_is_byte_identical_on_rerun() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "cfg.json",
        r#"{"model":"iid-rademacher","n_list":[4,8],"trials":300,"eta_grid":[0.0,0.01,0.1],"seed":5}"#,
    );
    let out1 = dir.path().join("a.csv");
    let out2 = dir.path().join("b.csv");
    for out in [&out1, &out2] {
        let o = lsvlab(&["tails", "--config", &cfg, "--out", out.to_str().unwrap()]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let a = std::fs::read(&out1).unwrap();
    assert_eq!(a, std::fs::read(&out2).unwrap());
    assert!(String::from_utf8(a).unwrap().starts_with("model,n,eta,trials,hits,p_hat,se,reference\n"));

    let svg = dir.path().join("p.svg");
    let o = lsvlab(&["plot", "--csv", out1.to_str().unwrap(), "--out", svg.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
    assert_eq!(lsvlab(&["plot", "--csv", out1.to_str().unwrap()]).status.code(), Some(3));

    let odd = write(
        dir.path(),
        "odd.json",
        r#"{"model":"row-regular","n_list":[5],"trials":3,"eta_grid":[0.1],"seed":5}"#,
    );
    assert_eq!(lsvlab(&["tails", "--config", &odd]).status.code(), Some(3));
}

#[test]
fn verify_exit_codes() {
    let o = lsvlab(&["verify", "--suite", "rkstar", "--suite", "lcd", "--seed", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["passed"], true);
    assert_eq!(report["suites"].as_array().unwrap().len(), 2);
    assert_eq!(lsvlab(&["verify", "--suite", "nope"]).status.code(), Some(1));
    assert_eq!(lsvlab(&["lcd", "--input", "/nonexistent/file"]).status.code(), Some(1));
}
