use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn tnm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tnm")).args(args).output().unwrap()
}

fn tnm_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tnm"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn gen(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name).to_str().unwrap().to_string();
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", &path]);
    assert!(tnm(&full).status.success());
    path
}

#[test]
fn gen_line_counts() {
    let solid = tnm(&["gen", "kuehnel-solid", "--d", "4"]);
    assert!(solid.status.success());
    assert_eq!(String::from_utf8(solid.stdout).unwrap().lines().count(), 11);
    let torus = tnm(&["gen", "kuehnel-torus", "--d", "2"]);
    assert_eq!(String::from_utf8(torus.stdout).unwrap().lines().count(), 14);
    assert!(String::from_utf8(torus.stderr).unwrap().contains("[7, 21, 14]"));
}

#[test]
fn gen_stacked_ball_is_deterministic() {
    let a = tnm(&["gen", "stacked-ball", "--d", "3", "--m", "10", "--seed", "7"]);
    let b = tnm(&["gen", "stacked-ball", "--d", "3", "--m", "10", "--seed", "7"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(String::from_utf8(a.stdout).unwrap().lines().count(), 10);
    assert_eq!(tnm(&["gen", "stacked-ball", "--d", "3"]).status.code(), Some(2));
    assert_eq!(tnm(&["gen", "kuehnel-solid", "--d", "1"]).status.code(), Some(2));
}

#[test]
fn check_reports_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let torus = gen(dir.path(), "t.fct", &["kuehnel-torus", "--d", "4"]);
    let out = tnm(&["check", &torus, "--checks", "tight-neighborly,class-k,neighborly,pm"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["instance"], torus.as_str());
    assert_eq!(report["checks"][0]["id"], "tight-neighborly");
    assert_eq!(report["checks"][0]["detail"]["is_equality"], true);
    assert!(report["checks"].as_array().unwrap().iter().all(|c| c["holds"] == true));

    let out = tnm(&["check", &torus, "--checks", "stacked-sphere"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["checks"][0]["holds"], false);

    let ball = gen(dir.path(), "b.fct", &["stacked-ball", "--d", "3", "--m", "10", "--seed", "7"]);
    let out = tnm(&["check", &ball, "--checks", "stacked-ball,class-kbar"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn class_check_names_failing_vertex() {
    // Suspension of the octahedron: the apexes have octahedral links.
    let oct = [[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 1, 4], [5, 1, 2], [5, 2, 3], [5, 3, 4], [5, 1, 4]];
    let mut text = String::new();
    for apex in [6, 7] {
        for t in oct {
            text.push_str(&format!("{} {} {} {apex}\n", t[0], t[1], t[2]));
        }
    }
    let out = tnm_stdin(&["check", "-", "--checks", "class-k"], text.as_bytes());
    assert_eq!(out.status.code(), Some(1));
    let report = json(&out);
    assert_eq!(report["instance"], "stdin");
    assert_eq!(report["checks"][0]["witness"]["kind"], "vertex");
    assert_eq!(report["checks"][0]["witness"]["vertex"], 0);
}

#[test]
fn parse_errors_exit_two_with_line() {
    let out = tnm_stdin(&["betti", "-"], b"# c\n0 1 2\n0 1 q\n");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 3"));
}

#[test]
fn betti_of_torus() {
    let out = tnm_stdin(&["betti", "-"], tnm(&["gen", "kuehnel-torus", "--d", "2"]).stdout.as_slice());
    assert!(out.status.success());
    let report = json(&out);
    assert_eq!(report["betti"], serde_json::json!([1, 2, 1]));
    assert_eq!(report["euler"], 0);
}

#[test]
fn params_prints_three_triples() {
    let out = tnm(&["params", "--beta1", "2", "--dmax", "500"]);
    assert!(out.status.success());
    let sols: Vec<(u64, u64)> = json(&out)["solutions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| (t["d"].as_u64().unwrap(), t["f0"].as_u64().unwrap()))
        .collect();
    assert_eq!(sols, [(13, 35), (83, 204), (491, 1189)]);
    assert_eq!(tnm(&["params", "--beta1", "0", "--dmax", "5"]).status.code(), Some(2));
}

#[test]
fn bar_then_boundary_round_trips() {
    let torus = tnm(&["gen", "kuehnel-torus", "--d", "4"]).stdout;
    let bar = tnm_stdin(&["bar", "-"], &torus);
    assert!(bar.status.success());
    assert_eq!(String::from_utf8_lossy(&bar.stdout).lines().count(), 11);
    let back = tnm_stdin(&["boundary", "-"], &bar.stdout);
    assert_eq!(back.stdout, torus);
}

#[test]
fn iso_on_relabeled_pair() {
    let dir = tempfile::tempdir().unwrap();
    let a = gen(dir.path(), "a.fct", &["kuehnel-torus", "--d", "4"]);
    let text = fs::read_to_string(&a).unwrap();
    let shifted: String = text
        .lines()
        .map(|l| {
            l.split(' ').map(|v| ((v.parse::<u32>().unwrap() * 3 + 1) % 11).to_string()).collect::<Vec<_>>().join(" ")
                + "\n"
        })
        .collect();
    let b = dir.path().join("b.fct");
    fs::write(&b, shifted).unwrap();
    let out = tnm(&["iso", &a, b.to_str().unwrap()]);
    assert!(out.status.success());
    let report = json(&out);
    assert_eq!(report["isomorphic"], true);
    assert_eq!(report["bijection"].as_array().unwrap().len(), 11);

    let c = gen(dir.path(), "c.fct", &["kuehnel-torus", "--d", "3"]);
    let out = tnm(&["iso", &a, &c]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["bijection"], Value::Null);
}

#[test]
fn handle_fixture_through_cli() {
    let dir = tempfile::tempdir().unwrap();
    let ball: String =
        (0..=10).map(|i| (i..=i + 5).map(|v: u32| v.to_string()).collect::<Vec<_>>().join(" ") + "\n").collect();
    let ball_path = dir.path().join("ball.fct");
    fs::write(&ball_path, ball).unwrap();
    let sphere = dir.path().join("sphere.fct");
    let out = tnm(&["boundary", ball_path.to_str().unwrap(), "-o", sphere.to_str().unwrap()]);
    assert!(out.status.success());
    let handle = dir.path().join("handle.fct");
    let out = tnm(&[
        "handle",
        sphere.to_str().unwrap(),
        "--sigma1",
        "0,1,2,3,4",
        "--sigma2",
        "11,12,13,14,15",
        "--psi",
        "0:11,1:12,2:13,3:14,4:15",
        "-o",
        handle.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let torus = gen(dir.path(), "t.fct", &["kuehnel-torus", "--d", "4"]);
    assert!(tnm(&["iso", handle.to_str().unwrap(), &torus]).status.success());

    let out = tnm(&[
        "handle",
        sphere.to_str().unwrap(),
        "--sigma1",
        "0,1,2,3,4",
        "--sigma2",
        "11,12,13,14,15",
        "--psi",
        "0:11",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_audit_reconstruct_and_dot() {
    let dir = tempfile::tempdir().unwrap();
    let solid = gen(dir.path(), "s.fct", &["kuehnel-solid", "--d", "5"]);
    let dot = dir.path().join("dual.dot");
    let out =
        tnm(&["verify", &solid, "--lemmas", "dual-counts,cycle-bound,two-connected", "--dot", dot.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(fs::read_to_string(&dot).unwrap().starts_with("graph"));

    let out = tnm(&["verify", &solid, "--lemmas", "path-lemma"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(json(&out)["checks"][0]["witness"]["detail"].as_str().unwrap().contains("hypothesis"));
    assert_eq!(tnm(&["verify", &solid, "--lemmas", "lemma-9"]).status.code(), Some(2));

    let out = tnm(&["audit", &solid, "--beta1", "1"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["audit"]["contradiction"], false);

    let out = tnm(&["reconstruct", &solid]);
    assert!(out.status.success());
    assert_eq!(json(&out)["phi"].as_array().unwrap().len(), 13);
}
