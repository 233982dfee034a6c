use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

const INTRO: &str = r#"{"arguments":[{"id":"g","tau":0.5},{"id":"a1","tau":0.9},{"id":"s1","tau":0.1},{"id":"s2","tau":0.2}],
"attacks":[["a1","g"]],"supports":[["s1","g"],["s2","g"]]}"#;

const TWO_CYCLE: &str = r#"{"arguments":[{"id":"a","tau":0.5},{"id":"b","tau":0.5},{"id":"c","tau":0.5}],
"attacks":[["a","b"],["b","a"],["c","a"]],"supports":[]}"#;

fn qbaf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qbaf")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn solve_intro_framework() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "intro.json", INTRO);
    let o = qbaf(&["solve", &f, "--semantics", "qen"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[..4], ["a1 0.900000", "g 0.367647", "s1 0.100000", "s2 0.200000"]);
    assert_eq!(lines[4], "status converged");
    assert!(lines[5].starts_with("iterations "));

    let o = qbaf(&["solve", &f, "--semantics", "dfq"]);
    assert!(stdout(&o).contains("g 0.190000\n"));
}

#[test]
fn solve_reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_qbaf"))
        .args(["solve", "-", "--semantics", "mqe"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(br#"{"arguments":[],"attacks":[],"supports":[]}"#)
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("status converged\n"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "cycle.json", TWO_CYCLE);
    let o = qbaf(&["solve", &f, "--max-iter", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("status max_iter_exceeded"));

    assert_eq!(qbaf(&["solve", &f, "--bogus"]).status.code(), Some(1));
    assert_eq!(qbaf(&["solve", &f, "--semantics", "nope"]).status.code(), Some(1));
    assert_eq!(qbaf(&["solve", &f, "--gamma", "-1"]).status.code(), Some(1));
    assert_eq!(qbaf(&["solve", "/definitely/missing.json"]).status.code(), Some(1));
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"arguments":[{"id":"a","tau":2}],"attacks":[],"supports":[]}"#,
    );
    let o = qbaf(&["solve", &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("outside [0, 1]"));
    assert_eq!(qbaf(&[]).status.code(), Some(1));
}

#[test]
fn trajectory_csv() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "cycle.json", TWO_CYCLE);
    let t = dir.path().join("traj.csv");
    let o = qbaf(&["solve", &f, "--mode", "discrete", "--trajectory", t.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(&t).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("iteration,a,b,c"));
    assert!(lines.next().unwrap().starts_with("0,5.0000000000000000e-1,"));
}

#[test]
fn analyze_and_bound() {
    let dir = tempfile::tempdir().unwrap();
    let intro = write(dir.path(), "intro.json", INTRO);
    let cycle = write(dir.path(), "cycle.json", TWO_CYCLE);
    let edgeless = write(
        dir.path(),
        "e.json",
        r#"{"arguments":[{"id":"x","tau":0.3}],"attacks":[],"supports":[]}"#,
    );
    assert_eq!(
        stdout(&qbaf(&["analyze", &intro])),
        "acyclic=true d=3 one_cycle=true sccs=4\n"
    );
    assert_eq!(
        stdout(&qbaf(&["analyze", &cycle])),
        "acyclic=false d=2 one_cycle=true sccs=2\n"
    );
    assert_eq!(stdout(&qbaf(&["bound", &cycle, "--q", "sum"])), "d=2 gamma<0.333333\n");
    assert_eq!(stdout(&qbaf(&["bound", &cycle, "--q", "max"])), "d=2 gamma<0.500000\n");
    assert_eq!(stdout(&qbaf(&["bound", &edgeless])), "d=0 gamma<inf\n");
}

#[test]
fn gen_ladder_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ladder.json");
    let o = qbaf(&[
        "gen",
        "--kind",
        "ladder",
        "--n",
        "5",
        "--seed",
        "1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    let q = qbaf::parse_qbaf(&text).unwrap();
    assert_eq!(q.len(), 13);
    assert_eq!(
        stdout(&qbaf(&["gen", "--kind", "ladder", "--n", "5", "--seed", "1"])),
        text
    );
    let o = qbaf(&["gen", "--kind", "random-cyclic", "--n", "20", "--seed", "4"]);
    assert_eq!(qbaf::parse_qbaf(&stdout(&o)).unwrap().len(), 20);
    assert_eq!(
        qbaf(&["gen", "--kind", "one-cycle", "--density", "1.5"]).status.code(),
        Some(1)
    );
}

#[test]
fn postulates_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let o = qbaf(&[
        "postulates",
        "--semantics",
        "dfq",
        "--n",
        "30",
        "--seed",
        "7",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next().unwrap(), "semantics  An In Di Eq St Ne Mo Re We St Du Op");
    let marks: Vec<&str> = lines.next().unwrap().split_whitespace().skip(1).collect();
    assert_eq!(marks, ["✓", "✓", "✓", "✓", "✓", "✓", "×", "×", "×", "×", "✓", "×"]);
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json.as_array().unwrap().len(), 12);

    let o = qbaf(&[
        "postulates",
        "--semantics",
        "mqe",
        "--q",
        "max",
        "--n",
        "30",
        "--seed",
        "7",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains('×'));
    assert!(!stdout(&o).contains('\x1b'));
}

#[test]
fn bench_is_deterministic() {
    let args = [
        "bench",
        "--exp",
        "distance",
        "--semantics",
        "mqe,drl:q=max,gamma=0.5",
        "--sizes",
        "1,2,5",
        "--per",
        "10",
        "--seed",
        "3",
        "--no-timing",
    ];
    let a = qbaf(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, qbaf(&args).stdout);
    let out = stdout(&a);
    let mut lines = out.lines();
    assert_eq!(
        lines.next(),
        Some("framework_id,semantics,q,gamma,n,metric,value,runtime_ms")
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 6);
    assert!(rows[1].starts_with("ladder_n1,drl,max,5.0000000000000000e-1,1,mean_goal_distance,"));
    assert!(rows.iter().all(|r| r.ends_with(",0.0000000000000000e0")));
}

#[test]
fn bench_gamma_and_runtime() {
    let o = qbaf(&[
        "bench",
        "--exp",
        "gamma",
        "--semantics",
        "drl",
        "--gammas",
        "0,1,2",
        "--dataset",
        "random",
        "--per",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 4);
    assert_eq!(
        qbaf(&["bench", "--exp", "gamma", "--semantics", "qen"]).status.code(),
        Some(1)
    );

    let o = qbaf(&[
        "bench",
        "--exp",
        "runtime",
        "--semantics",
        "mqe",
        "--sizes",
        "30",
        "--per",
        "4",
        "--eps",
        "1e-4",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains(",converged_fraction,"));
    assert!(out.contains(",mean_iterations,"));
}
