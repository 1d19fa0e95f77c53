use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const WORKED: &str = "?{p, q}, ~s | p, s | q |- [{r}, {t}, {u, v}, {p}, {q}] ?{s, ~s}";

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_erotetic"));
    c.env_remove("EROTETIC_DEFEATERS").env("NO_COLOR", "1");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn defeaters(dir: &Path) -> String {
    let path = dir.join("defeaters.txt");
    std::fs::write(&path, "# worked example\ns : {r}\np : {t}\nq : {u, v}\n").unwrap();
    path.display().to_string()
}

#[test]
fn parse_prints_canonically() {
    let o = run(&["parse", "?{p,~q}"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "?{p, ~q}\n"));
    let o = run(&["parse", "p|q&r"]);
    assert!(stdout(&o).contains("grouped: p | (q & r)"));
    let o = run(&["--format", "json", "parse", "p|q&r"]);
    assert_eq!(json(&o)["grouped"], "p | (q & r)");
}

#[test]
fn parse_errors_name_the_column() {
    let o = run(&["parse", "p & (q"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("column 7"));
}

#[test]
fn prove_exit_codes() {
    let o = run(&["--format", "json", "prove", "p&q |- [{p}] r"]);
    assert_eq!(code(&o), 3);
    assert_eq!(json(&o)["witness"], serde_json::json!(["p"]));
    assert_eq!(code(&run(&["prove", "p |- [] q"])), 4);
    assert_eq!(code(&run(&["prove", "p |- [] ?{p, q}"])), 4);
    assert_eq!(code(&run(&["prove", "p, q |- [] p & q"])), 0);
    let o = run(&["--max-nodes", "1", "prove", "?{p, q}, ?{r, s} |- [{p}, {q}] p, q"]);
    assert_eq!(code(&o), 5, "{}", stdout(&o));
}

#[test]
fn worked_example_proof_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = defeaters(dir.path());
    let proof = dir.path().join("proof.json");
    let proof_s = proof.display().to_string();
    let o = run(&["--defeaters", &d, "prove", WORKED, "--emit-proof", &proof_s]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = run(&["--defeaters", &d, "check", &proof_s]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "proof\n"));

    // Removing one member from the root breaks the last inference.
    let mut tree: Value = serde_json::from_str(&std::fs::read_to_string(&proof).unwrap()).unwrap();
    let root = tree["sequent"].as_str().unwrap().replace("{t}, ", "");
    tree["sequent"] = root.into();
    std::fs::write(&proof, tree.to_string()).unwrap();
    let o = run(&["--defeaters", &d, "--format", "json", "check", &proof_s]);
    assert_eq!(code(&o), 4);
    assert_eq!(json(&o)["classification"], "not-a-derivation");
    assert_eq!(json(&o)["path"], "root");
}

#[test]
fn paraproof_lists_defeated_nodes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().join("d.txt");
    std::fs::write(&d, "p : {t}\nr : {p}\nq : {s}\n").unwrap();
    let ax = |s: &str, rule: &str| serde_json::json!({ "sequent": s, "rule": rule });
    let tree = serde_json::json!({
        "sequent": "p | q, r |- [{t}, {p}, {s}, {q}] p & r, q",
        "rule": "OrL",
        "premises": [
            { "sequent": "p, r |- [{t}, {p}] p & r", "rule": "AndR",
              "premises": [ax("p |- [{t}] p", "Ax1"), ax("r |- [{p}] r", "Ax1")] },
            { "sequent": "q |- [{s}, {q}] q", "rule": "DE",
              "premises": [ax("q |- [{s}] q", "Ax1")] }
        ]
    });
    let file = dir.path().join("tree.json");
    std::fs::write(&file, tree.to_string()).unwrap();
    let args = [
        "--defeaters",
        d.to_str().unwrap(),
        "--format",
        "json",
        "check",
        file.to_str().unwrap(),
    ];
    let o = run(&args);
    assert_eq!(code(&o), 3);
    assert_eq!(json(&o)["classification"], "paraproof");
    assert_eq!(json(&o)["defeated"], serde_json::json!(["root.0", "root.1"]));
}

#[test]
fn evokes_modes_agree() {
    let o = run(&["--format", "json", "evokes", "p|q", "?{p,q}"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(
        (
            v["semantic"]["holds"].clone(),
            v["proof"]["verdict"].clone(),
            v["agree"].clone()
        ),
        (true.into(), "provable".into(), true.into())
    );

    let o = run(&["--format", "json", "evokes", "p", "?{p,q}"]);
    assert_eq!(code(&o), 3);
    assert_eq!(json(&o)["semantic"]["detail"]["answered"], "p");

    let o = run(&["evokes", "--mode", "semantic", "", "?{p|~p, q}"]);
    assert!(stdout(&o).starts_with("semantic: false"));
    assert_ne!(code(&o), 0);
    let o = run(&["evokes", "--mode", "proof", "", "?{p|~p, q}"]);
    assert!(stdout(&o).starts_with("proof: defeated"));
}

#[test]
fn implies_modes() {
    let o = run(&["implies", "~p|q, p|r", "?{q,r}", "?{p,~p}"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let dir = tempfile::tempdir().unwrap();
    let d = defeaters(dir.path());
    let o = run(&["--defeaters", &d, "implies", "~s|p, s|q", "?{p,q}", "?{s,~s}"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));

    let o = run(&[
        "--format",
        "json",
        "implies",
        "--mode",
        "semantic",
        "~p|q, p|r, p",
        "?{q,r}",
        "?{p,~p}",
    ]);
    assert_ne!(code(&o), 0);
    let v = json(&o);
    let clauses: Vec<&str> = v["semantic"]["detail"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["clause"].as_str().unwrap())
        .collect();
    assert!(clauses.contains(&"iii"), "{clauses:?}");
}

#[test]
fn agent_transcript_is_json_lines() {
    let dir = tempfile::tempdir().unwrap();
    let d = defeaters(dir.path());
    let base = [
        "--defeaters",
        d.as_str(),
        "--format",
        "json",
        "agent",
        "--question",
        "?{p,q}",
        "--facts",
        "~s|p, s|q",
    ];
    let o = run_stdin(&[&base[..], &["--stream", "-"]].concat(), "s\np\n");
    assert_eq!(code(&o), 0);
    let events: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let kinds: Vec<&str> = events.iter().map(|e| e["event"].as_str().unwrap()).collect();
    assert_eq!(
        kinds,
        [
            "subquestion-raised",
            "fact-ingested",
            "subquestion-resolved",
            "answered",
            "status"
        ]
    );
    assert_eq!(events[3]["detail"], "?{p, q} by p");
    assert_eq!(events[4]["detail"], "answered");

    let o = run(&base);
    let last: Value = serde_json::from_str(stdout(&o).lines().last().unwrap()).unwrap();
    assert_eq!(last["detail"], "awaiting-facts");

    let o = run_stdin(&[&base[..], &["--stream", "-"]].concat(), "s &\n");
    let events: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(events[1]["event"], "parse-error");
    assert!(events[1]["detail"].as_str().unwrap().starts_with("line 1:"));
}

#[test]
fn repl_metacommands() {
    let dir = tempfile::tempdir().unwrap();
    let d = defeaters(dir.path());
    let o = run_stdin(
        &[
            "--defeaters",
            &d,
            "agent",
            "--question",
            "?{p,q}",
            "--facts",
            "~s|p, s|q",
            "--repl",
        ],
        ":active\nw\n:facts\n:help\n:quit\nr\n",
    );
    let out = stdout(&o);
    assert_eq!(code(&o), 0);
    assert!(out.contains("0: s | q, ~s | p, ?{p, q} |- "), "{out}");
    assert!(out.contains("fact-ingested: w"));
    assert!(out.contains("\nw\n"));
    assert!(out.contains(":quit"));
    // Input after :quit is ignored.
    assert!(!out.contains("fact-ingested: r"));
    assert!(out.trim_end().ends_with("status: awaiting-facts"));
}

#[test]
fn invalid_assignment_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().join("bad.txt");
    std::fs::write(&d, "p : {p}, {q & r}\n").unwrap();
    let o = run(&["--defeaters", d.to_str().unwrap(), "agent", "--question", "?{p,q}"]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(
        err.contains("mentions the atom") && err.contains("not a literal"),
        "{err}"
    );
}

#[test]
fn environment_and_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let d = defeaters(dir.path());
    let o = bin()
        .env("EROTETIC_DEFEATERS", &d)
        .args(["prove", WORKED])
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("Ax3  |- [{r}] s, ~s"), "{}", stdout(&o));

    let cfg = dir.path().join("cfg.toml");
    std::fs::write(
        &cfg,
        format!("defeaters = {d:?}\nformat = \"json\"\n[bounds]\nmax_depth = 5\n"),
    )
    .unwrap();
    let o = run(&["--config", cfg.to_str().unwrap(), "prove", WORKED]);
    assert_eq!(json(&o)["verdict"], "provable");

    std::fs::write(&cfg, "colour = true\n").unwrap();
    assert_eq!(code(&run(&["--config", cfg.to_str().unwrap(), "parse", "p"])), 2);
    assert_eq!(code(&run(&["--max-depth", "0", "parse", "p"])), 2);
}

#[test]
fn output_is_deterministic() {
    let args = [
        "--format",
        "json",
        "prove",
        "~p | q, p | r, ?{q, r} |- [{q}, {r}] ?{p, ~p}",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}
