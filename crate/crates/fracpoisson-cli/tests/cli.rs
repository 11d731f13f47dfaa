use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fracpoisson")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fracpoisson-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn trailer_hash(csv: &str) -> &str {
    let last = csv.lines().last().unwrap();
    let hash = last.strip_prefix("# config_hash=").expect("trailer line");
    assert_eq!(hash.len(), 64);
    assert!(hash.chars().all(|c| c.is_ascii_hexdigit()));
    hash
}

fn field<'a>(csv: &'a str, row: usize, column: &str) -> &'a str {
    let header: Vec<&str> = csv.lines().next().unwrap().split(',').collect();
    let k = header.iter().position(|&h| h == column).unwrap();
    csv.lines().nth(row + 1).unwrap().split(',').nth(k).unwrap()
}

#[test]
fn probs_spot_values() {
    let o = run(&["probs", "--process", "poisson", "--t", "2", "--n-max", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = stdout(&o);
    let p1: f64 = field(&csv, 1, "p").parse().unwrap();
    assert!((p1 - 0.270_670_566_473_225_4).abs() < 1e-15);
    assert_eq!(field(&csv, 0, "q"), "");
    trailer_hash(&csv);

    let o = run(&["probs", "--process", "fpp", "--beta", "0.5", "--t", "1", "--n-max", "0"]);
    let p0: f64 = field(&stdout(&o), 0, "p").parse().unwrap();
    assert!((p0 - 0.427_583_576_155_807).abs() < 1e-15);

    let o = run(&["probs", "--process", "wright", "--beta", "1", "--t", "2.5", "--n-max", "3"]);
    let csv = stdout(&o);
    let window: Vec<f64> = (0..4).map(|r| field(&csv, r, "p").parse().unwrap()).collect();
    assert_eq!(window, vec![0.0, 0.0, 1.0, 0.0]);
}

#[test]
fn output_is_byte_stable_and_hash_tracks_config() {
    let args = ["eval", "--beta", "0.75", "--process", "wright", "--points", "7"];
    let a = stdout(&run(&args));
    let b = stdout(&run(&args));
    assert_eq!(a, b);
    let c = stdout(&run(&["eval", "--beta", "0.75", "--process", "wright", "--points", "8"]));
    assert_ne!(trailer_hash(&a), trailer_hash(&c));
    assert_eq!(a.lines().count(), 1 + 7 + 1);
}

#[test]
fn simulation_is_reproducible() {
    let args = ["simulate", "--beta", "0.5", "--t", "1", "--paths", "5000", "--seed", "3"];
    let a = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&run(&args)));
    let other = stdout(&run(&["simulate", "--beta", "0.5", "--t", "1", "--paths", "5000", "--seed", "4"]));
    assert_ne!(stdout(&a), other);
    assert!(stdout(&a).starts_with("n,count,empirical_p,analytic_p,std_err,z\n"));
}

#[test]
fn json_output_carries_the_hash() {
    let o = run(&["tabulate", "--beta", "0.5", "--points", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["columns"], serde_json::json!(["t", "psi", "phi"]));
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
    assert_eq!(v["config_hash"].as_str().unwrap().len(), 64);
}

#[test]
fn all_orders_write_one_file_each() {
    let out = scratch("tab.csv");
    let o = run(&["tabulate", "--beta", "all", "--points", "4", "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    for b in ["0.25", "0.5", "0.75", "1"] {
        let path = out.with_file_name(format!("tab_beta{b}.csv"));
        let csv = std::fs::read_to_string(&path).unwrap();
        trailer_hash(&csv);
    }
}

#[test]
fn limits_sweep_table() {
    let out = scratch("sweep.csv");
    let o = run(&["limits", "--process", "wright", "--paths", "2000", "--output", out.to_str().unwrap()]);
    assert!(matches!(o.status.code(), Some(0) | Some(1)));
    let csv = std::fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with("tau,h,ks_statistic,paths,pass\n"));
    assert_eq!(csv.lines().count(), 1 + 4 + 1);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["eval", "--beta", "1.5"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "--t-min", "5", "--t-max", "1"]).status.code(), Some(2));
    assert_eq!(run(&["limits", "--process", "poisson"]).status.code(), Some(2));
    assert_eq!(run(&["simulate", "--paths", "0"]).status.code(), Some(2));
    let o = run(&["eval", "--output", "/nonexistent-dir/x.csv"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

#[test]
fn injected_fault_fails_verification() {
    let o = run(&["verify", "--quick", "--beta", "0.5", "--fault", "wrong-gamma"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let failed: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["pass"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(failed.iter().any(|n| n.starts_with("wright_renewal_offset")), "{failed:?}");
}
