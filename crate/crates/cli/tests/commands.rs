use std::process::{Command, Output};

fn locdim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_locdim")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn upper_at_point_eight() {
    let out = locdim(&["upper", "--rho", "0.8", "--interval", "0.3,0.7", "--n", "4", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "rho,n,interval_lo,interval_hi,admissibility,k,value");
    let fields: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(fields[4], "direct");
    assert!((fields[5].parse::<f64>().unwrap() - 0.1875).abs() < 1e-12);
    assert!((fields[6].parse::<f64>().unwrap() - 1.876).abs() < 1e-3);
}

#[test]
fn asymmetric_interval_is_a_hypothesis_error() {
    let out = locdim(&["upper", "--rho", "0.8", "--interval", "0.2,0.7", "--n", "4"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn bad_config_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.json");
    std::fs::write(&path, r#"{"ifs": {"type": "bernoulli"}, "rho_min": 0.9, "rho_max": 0.6}"#).unwrap();
    let out = locdim(&["sweep", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let out = locdim(&["sweep", "--config", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_file_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = |name: &str| {
        let p = dir.path().join(name);
        locdim(&[
            "sweep", "--rho-min", "0.6", "--rho-max", "0.7", "--step", "0.05", "--n-max", "6", "--transitions",
            "--transition-n", "3", "--out", p.to_str().unwrap(),
        ]);
        std::fs::read_to_string(p).unwrap()
    };
    let a = args("a.csv");
    let b = args("b.csv");
    assert_eq!(a, b);
    assert!(a.starts_with("rho,method,n,interval_lo,interval_hi,value,valid,awsc_certified,is_transition\n"));
    assert!(a.lines().any(|l| l.starts_with("0.6180339887") && l.ends_with(",true")));
}

#[test]
fn classify_plastic_number() {
    let out = locdim(&["classify", "--poly", "1,0,-1,-1", "--rho", "0.7548776662466927"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("Pisot\t1.324717957245\t0.754877666247\t0"));
    assert!(text.contains("awsc_known\ttrue"));
}

#[test]
fn transitions_level_two() {
    let out = locdim(&["transitions", "--n", "2", "--range", "0.5,0.999"]);
    assert!(out.status.success());
    assert!(stdout(&out).lines().any(|l| l.starts_with("0.618033988749")));
}
