use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use grover_forge::cli::{cmd_compare, cmd_simulate, CompareInput, CompareOutput, KChoice, SweepSpec};
use grover_forge::synth::build_u;
use grover_forge::{Circuit, RunOptions, StateVector, TargetSet, Variant};

const EXAMPLE: &str = "n=3\n# worked example\n000\n001\n010\n100\n";

fn forge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grover-forge"))
        .args(args)
        .env_remove("GROVER_FORGE_MAX_QUBITS")
        .output()
        .unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn synth_round_trip_is_bit_exact() {
    let dir = tempfile::tempdir().unwrap();
    let targets = write(dir.path(), "s.txt", EXAMPLE);
    let out = dir.path().join("u.json");
    let qasm = dir.path().join("u.qasm");
    let o = forge(&[
        "synth",
        "--targets",
        &targets,
        "--variant",
        "u",
        "--out",
        out.to_str().unwrap(),
        "--qasm",
        qasm.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stdout).contains("3 gates"));

    let loaded = Circuit::from_json(&fs::read_to_string(&out).unwrap()).unwrap();
    let built = build_u(&TargetSet::parse(EXAMPLE).unwrap()).unwrap();
    assert_eq!(loaded, built);
    let (mut a, mut b) = (StateVector::zero(3).unwrap(), StateVector::zero(3).unwrap());
    loaded.apply_to(&mut a).unwrap();
    built.apply_to(&mut b).unwrap();
    assert_eq!(a.amplitudes(), b.amplitudes());

    let q = fs::read_to_string(&qasm).unwrap();
    assert!(q.starts_with("OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[3];\n"));
    assert!(q.contains("cx "));
}

#[test]
fn synth_variants() {
    let dir = tempfile::tempdir().unwrap();
    let targets = write(dir.path(), "s.json", r#"{"n": 3, "targets": [0, 1, 2, 4]}"#);
    let o = forge(&["synth", "--targets", &targets, "--variant", "pi-sigma"]);
    assert!(o.status.success());
    let pi = Circuit::from_json(&String::from_utf8(o.stdout).unwrap()).unwrap();
    assert_eq!(pi.len(), 3);

    let full = write(dir.path(), "full.txt", "n=3\n000\n001\n010\n011\n100\n101\n110\n111\n");
    let o = forge(&["synth", "--targets", &full, "--variant", "u"]);
    let u = Circuit::from_json(&String::from_utf8(o.stdout).unwrap()).unwrap();
    assert_eq!(u.len(), 3);
    assert!(u.gates().iter().all(|g| g.control_count(3) == 0));

    for v in ["u-tilde", "oracle", "oracle-conv"] {
        let o = forge(&["synth", "--targets", &targets, "--variant", v, "--json", "--out", dir.path().join("x.json").to_str().unwrap()]);
        assert!(o.status.success(), "{v}");
        let summary: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert!(summary["cost"].as_u64().unwrap() as u128 <= summary["bound"].as_u64().unwrap() as u128);
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write(dir.path(), "e.txt", "n=3\n");
    assert_eq!(forge(&["synth", "--targets", &empty]).status.code(), Some(2));
    let bad = write(dir.path(), "b.txt", "n=3\n0102\n");
    assert_eq!(forge(&["synth", "--targets", &bad]).status.code(), Some(2));
    assert_eq!(forge(&["synth", "--targets", "/nonexistent/targets.txt"]).status.code(), Some(1));

    // the chain for 11 → 00 also moves 10 ∈ S̃ onto 00
    let clash = write(dir.path(), "c.txt", "n=2\n01\n10\n11\n");
    let o = forge(&["synth", "--targets", &clash, "--variant", "pi-sigma", "--mode", "paper"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not mapped onto S"));
    let o = forge(&["synth", "--targets", &clash, "--variant", "pi-sigma", "--mode", "exact"]);
    assert!(o.status.success());
    let o = forge(&["simulate", "--targets", &clash, "--variant", "reduced", "--no-fallback", "--k", "0"]);
    assert_eq!(o.status.code(), Some(4));

    let big = write(dir.path(), "big.txt", &format!("n=23\n{}\n", "0".repeat(23)));
    assert_eq!(forge(&["simulate", "--targets", &big, "--k", "0"]).status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_grover-forge"))
        .args(["simulate", "--targets", &big, "--k", "0", "--json"])
        .env("GROVER_FORGE_MAX_QUBITS", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn simulate_reports() {
    let dir = tempfile::tempdir().unwrap();
    let t = write(dir.path(), "t.txt", "n=2\n11\n");
    let o = forge(&["simulate", "--targets", &t, "--variant", "conventional", "--k", "auto", "--json"]);
    assert!(o.status.success());
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["k"], 1);
    assert!((r["final_success"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert_eq!(r["iterations"].as_array().unwrap().len(), 2);

    let s = TargetSet::parse(EXAMPLE).unwrap();
    let reports: Vec<_> = Variant::ALL
        .iter()
        .map(|&v| cmd_simulate(&s, v, KChoice::Fixed(3), RunOptions::default(), 22, true).unwrap())
        .collect();
    for r in &reports[1..] {
        for (a, b) in r.amplitudes.as_ref().unwrap().iter().zip(reports[0].amplitudes.as_ref().unwrap()) {
            assert!((a[0] - b[0]).abs() < 1e-10 && (a[1] - b[1]).abs() < 1e-10);
        }
    }
    let r0 = cmd_simulate(&s, Variant::Reduced, KChoice::Fixed(0), RunOptions::default(), 22, false).unwrap();
    assert!((r0.final_success - 0.5).abs() < 1e-12);
    assert_eq!(r0.warnings.len(), 1);
}

#[test]
fn compare_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("g.csv");
    let o = forge(&["compare", "--sweep", "n=10,100,1000", "gamma=0:1:0.01", "--out", csv.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,gamma,Gamma,dominates"));
    assert_eq!(lines.count(), 3 * 101);
    assert!(text.contains("1000,0.5,0.5,true"));

    let spec = SweepSpec::parse(&["n=1000", "gamma=0.5"]).unwrap();
    let CompareOutput::Sweep(rows) = cmd_compare(CompareInput::Sweep(&spec)).unwrap() else { panic!() };
    assert!(rows[0].dominates);

    let t = write(dir.path(), "s.txt", EXAMPLE);
    let o = forge(&["compare", "--targets", &t, "--k", "1"]);
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["bounds"]["total_reduced"], 266);
    assert_eq!(r["counted"]["u"], 6);

    let o = forge(&["compare", "--n", "1000", "--s", "1", "--json"]);
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r[0]["verdict"], "conventional");
}
