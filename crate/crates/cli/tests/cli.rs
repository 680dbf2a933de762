use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bicanon"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scenario_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios")
}

fn temp_scenario(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("bicanon-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn last_line(o: &Output) -> String {
    stdout(o).lines().last().unwrap_or_default().to_string()
}

#[test]
fn list_builtin_has_five_runnable_names() {
    let o = run(&["list-builtin"]);
    assert!(o.status.success());
    let names: Vec<String> = stdout(&o).lines().map(str::to_string).collect();
    assert_eq!(
        names,
        vec!["inoue7", "beauville8", "inoue-z24", "fermat-z52", "proofcheck-all"]
    );
    for n in &names {
        assert!(run(&["run", n]).status.success(), "{n}");
    }
}

#[test]
fn inoue7_summary() {
    let o = run(&["run", "inoue7"]);
    assert!(o.status.success());
    assert!(last_line(&o).ends_with("K²=7, p_g=0, p₂=8, eigentable (7,1,0,0), bicanonical composed with γ₁, degree 2"));
    let path = scenario_dir().join("inoue7.json");
    assert_eq!(stdout(&run(&["run", path.to_str().unwrap()])), stdout(&o));
}

#[test]
fn beauville8_summary() {
    let o = run(&["run", "beauville8"]);
    assert!(o.status.success());
    assert!(last_line(&o).contains("kernel {0, γ₃}, degree 2"), "{}", last_line(&o));
}

#[test]
fn inoue_z24_is_birational() {
    let o = run(&["run", "inoue-z24"]);
    assert!(
        last_line(&o).contains("eigentable (4,1,1,1,1,1), kernel {0}"),
        "{}",
        last_line(&o)
    );
}

#[test]
fn fermat_json() {
    let o = run(&["run", "--json", "fermat-z52"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["kind"], "fermat");
    assert_eq!(v["result"]["invariant_monomials"].as_array().unwrap().len(), 9);
    assert_eq!(v["result"]["verdict"]["verdict"], "birational");
}

#[test]
fn json_round_trips_and_output_is_deterministic() {
    for name in ["inoue7", "beauville8", "inoue-z24", "fermat-z52", "proofcheck-all"] {
        let a = stdout(&run(&["run", "--json", name]));
        let b = stdout(&run(&["run", "--json", name]));
        assert_eq!(a, b, "{name}");
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", a, "{name}");
        let h1 = stdout(&run(&["run", "--verbose", name]));
        assert_eq!(h1, stdout(&run(&["run", "--verbose", name])), "{name}");
    }
}

#[test]
fn extra_scenarios_run() {
    let dir = scenario_dir().join("extra");
    let mut count = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let o = run(&["run", path.to_str().unwrap()]);
        assert!(
            o.status.success(),
            "{}: {}",
            path.display(),
            String::from_utf8_lossy(&o.stderr)
        );
        count += 1;
    }
    assert_eq!(count, 3);
}

#[test]
fn validation_failure_exits_one() {
    let text = std::fs::read_to_string(scenario_dir().join("inoue7.json")).unwrap();
    let bad = text.replacen("\"e4\": -3", "\"e4\": -2", 1);
    let o = run(&["run", temp_scenario("bad-l1.json", &bad).to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("2L1 = D2+D3"));
}

#[test]
fn inconsistency_exits_two() {
    let text = std::fs::read_to_string(scenario_dir().join("inoue7.json")).unwrap();
    let bad = text.replace("\"blowdowns\": 8", "\"blowdowns\": 7");
    let o = run(&["run", temp_scenario("bad-blowdowns.json", &bad).to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn malformed_input_reports_location() {
    let o = run(&[
        "run",
        temp_scenario("broken.json", "{\"kind\": \"fermat\",\n  \"x\" 1}")
            .to_str()
            .unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    let text = r#"{"kind":"product-quotient","group":[2,2,2],"psi":[[1,0,0],[0,1,0],[0,0,1]],
        "curve1":{"branch":[{"element":[1,0,0],"degree":"two"}]},"curve2":{"branch":[]}}"#;
    let o = run(&["run", temp_scenario("badtype.json", text).to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("curve1.branch[0].degree"));
}

#[test]
fn non_free_action_is_rejected() {
    let text = std::fs::read_to_string(scenario_dir().join("beauville8.json")).unwrap();
    let bad = text.replace("[[1, 0, 1], [0, 1, 1], [1, 1, 1]]", "[[1, 0, 0], [0, 1, 0], [0, 0, 1]]");
    let o = run(&["run", temp_scenario("identity-psi.json", &bad).to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not free"));
}

#[test]
fn missing_scenario() {
    let o = run(&["run", "no-such-scenario"]);
    assert_eq!(o.status.code(), Some(1));
}
