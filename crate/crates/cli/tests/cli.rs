use std::path::PathBuf;
use std::process::{Command, Output};

fn uarg(args: &[&str]) -> Output {
    uarg_env(args, &[])
}

fn uarg_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_uarg"));
    cmd.args(args);
    for key in ["MAX_UNCERTAIN", "MAX_ARGUMENTS", "MAX_DEPTH", "MAX_SEARCH_ARGS", "MAX_IAF_ARGS", "THREADS"] {
        cmd.env_remove(format!("UARG_{key}"));
    }
    cmd.envs(env.iter().copied());
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("uarg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write(name: &str, text: &str) -> String {
    let path = scratch(name);
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

#[test]
fn completion_counts_of_fixtures() {
    for (name, n) in [("example1", "4"), ("example4", "4"), ("example5", "2")] {
        let o = uarg(&["completions", &format!("fixture:{name}"), "--count"]);
        assert!(o.status.success(), "{name}: {}", stderr(&o));
        assert_eq!(stdout(&o).trim(), n, "{name}");
    }
}

#[test]
fn completions_from_file_and_stdin_agree() {
    let doc = stdout(&uarg(&["fixtures", "emit", "example1"]));
    let path = write("e1.apx", &doc);
    let from_file = uarg(&["completions", &path]);
    let mut child = Command::new(env!("CARGO_BIN_EXE_uarg"))
        .args(["completions", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write;
    child.stdin.take().unwrap().write_all(doc.as_bytes()).unwrap();
    let from_stdin = child.wait_with_output().unwrap();
    assert!(from_file.status.success());
    assert_eq!(stdout(&from_file), stdout(&from_stdin));
}

#[test]
fn translations_verify() {
    let o = uarg(&["translate", "fixture:example1", "--from", "arg-iaf", "--to", "rul-isaf", "--verify"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stderr(&o).contains("\"map\""));

    let rul = write("rul.json", &stdout(&o));
    let witness = scratch("w.json");
    let o = uarg(&[
        "translate", &rul, "--from", "rul-isaf", "--to", "imp-arg-iaf", "--verify",
        "--witness", witness.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(std::fs::read_to_string(&witness).unwrap().starts_with("{\"map\":"));

    for (name, from, to) in [
        ("thm3_rul", "rul-isaf", "imp-arg-iaf"),
        ("example5", "prem-isaf", "imp-arg-iaf"),
        ("example5", "prem-isaf", "rul-isaf"),
        ("thm7_prem", "prem-isaf", "prem-isaf"),
        ("example1", "arg-iaf", "prem-isaf"),
    ] {
        let o = uarg(&["translate", &format!("fixture:{name}"), "--from", from, "--to", to, "--verify"]);
        assert!(o.status.success(), "{name} {from}->{to}: {}", stderr(&o));
    }
}

#[test]
fn unsupported_direction() {
    let o = uarg(&["translate", "fixture:thm3_rul", "--from", "rul-isaf", "--to", "arg-iaf"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error[UNSUPPORTED_DIRECTION]"));
}

#[test]
fn semantics_lines() {
    let af = write("a.apx", "arg(a).\n");
    let o = uarg(&["semantics", &af, "--sigma", "grounded"]);
    assert_eq!(stdout(&o), "[a]\n");
    let empty = write("empty.apx", "");
    let o = uarg(&["semantics", &empty, "--sigma", "stable"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "[]\n");
}

#[test]
fn dot_marks_uncertain_arguments() {
    let o = uarg(&["export-dot", "fixture:example1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).matches("style=dashed").count(), 2);
    let o = uarg(&["export-dot", "fixture:example4"]);
    assert!(o.status.success(), "{}", stderr(&o));
}

#[test]
fn equivalence_verdicts() {
    let o = uarg(&["equiv", "fixture:example1", "fixture:example1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"verdict\":\"equivalent\""));
    let o = uarg(&["equiv", "fixture:remark_weak_equiv:1", "fixture:remark_weak_equiv:2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("\"not_equivalent\""));
}

#[test]
fn equivalence_with_given_witness() {
    let o = uarg(&["translate", "fixture:example1", "--from", "arg-iaf", "--to", "rul-isaf"]);
    let rul = write("rul2.json", &stdout(&o));
    let witness = write("w2.json", &stderr(&o));
    let o = uarg(&["equiv", "fixture:example1", &rul, "--witness", &witness]);
    assert_eq!(o.status.code(), Some(2), "a theory is not a completion set");
    let rul_sets = write("rul2.sets", &stdout(&uarg(&["completions", &rul])));
    let o = uarg(&["equiv", "fixture:example1", &rul_sets, "--witness", &witness]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn synthesized_dependencies_reproduce_target() {
    let iaf = write("e1b.apx", &stdout(&uarg(&["fixtures", "emit", "example1"])));
    let target = write("t.sets", &stdout(&uarg(&["fixtures", "emit", "remark_weak_equiv"])));
    let o = uarg(&["synth-deps", &iaf, &target]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error[TARGET_NOT_SUBSET]"));

    let target = write("t2.sets", &stdout(&uarg(&["completions", "fixture:example2_imply"])));
    let base = stdout(&uarg(&["fixtures", "emit", "example2_imply"]));
    let base: String = base
        .lines()
        .filter(|l| ["arg(", "?arg(", "att("].iter().any(|p| l.starts_with(p)))
        .map(|l| format!("{l}\n"))
        .collect();
    let iaf = write("e2.apx", &base);
    let o = uarg(&["synth-deps", &iaf, &target, "--minimize"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let deps = write("e2dep.apx", &stdout(&o));
    let a = stdout(&uarg(&["completions", &deps]));
    let b = stdout(&uarg(&["completions", "fixture:example2_imply"]));
    assert_eq!(a, b);
}

#[test]
fn exit_codes() {
    let o = uarg(&["completions", "fixture:nope"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error[UNKNOWN_FIXTURE]"));
    let o = uarg(&["completions", "/nonexistent/x.apx"]);
    assert_eq!(o.status.code(), Some(2));
    let bad = write("bad.apx", "arg(a\n");
    let o = uarg(&["completions", &bad]);
    assert!(stderr(&o).starts_with("error[PARSE_ERROR]"));
    let o = uarg(&["completions", "fixture:example1", "--max-uncertain", "1"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn config_layers() {
    let cfg = write("c.toml", "max_uncertain = 1\n");
    let o = uarg(&["--config", &cfg, "completions", "fixture:example1", "--count"]);
    assert_eq!(o.status.code(), Some(3));
    let o = uarg(&["--config", &cfg, "completions", "fixture:example1", "--count", "--max-uncertain", "2"]);
    assert_eq!(stdout(&o).trim(), "4");
    let o = uarg_env(
        &["--config", &cfg, "completions", "fixture:example1", "--count", "--max-uncertain", "2"],
        &[("UARG_MAX_UNCERTAIN", "1")],
    );
    assert_eq!(o.status.code(), Some(3));
    let bad = write("bad.toml", "max_uncertainty = 1\n");
    let o = uarg(&["--config", &bad, "fixtures", "list"]);
    assert!(stderr(&o).starts_with("error[CONFIG_ERROR]"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["translate", "fixture:example4", "--from", "rul-isaf", "--to", "imp-arg-iaf"][..],
        &["completions", "fixture:example5"][..],
        &["equiv", "fixture:example1", "fixture:example1"][..],
    ] {
        let a = uarg(args);
        let b = uarg_env(args, &[("UARG_THREADS", "1")]);
        assert_eq!(stdout(&a), stdout(&b));
        assert_eq!(stderr(&a), stderr(&b));
    }
}

#[test]
fn every_fixture_emits_and_reloads() {
    let list = stdout(&uarg(&["fixtures", "list"]));
    for line in list.lines() {
        let (name, kind) = line.split_once('\t').unwrap();
        let doc = stdout(&uarg(&["fixtures", "emit", name]));
        let path = write(&format!("{name}.doc"), &doc);
        if kind == "completion-sets" {
            let o = uarg(&["equiv", &path, &format!("fixture:{name}:1"), "--identity-only"]);
            assert_eq!(o.status.code(), Some(0), "{name}");
            continue;
        }
        let a = stdout(&uarg(&["completions", &path]));
        let b = stdout(&uarg(&["completions", &format!("fixture:{name}")]));
        assert_eq!(a, b, "{name}");
    }
}
