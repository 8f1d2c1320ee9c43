use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn qdeform(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdeform")).args(args).output().unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn scratch(tag: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("qdeform-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

#[test]
fn pentagon_on_z2() {
    let o = qdeform(&["run", "pentagon", "--group", &data("z2.grp")]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["suite"], "pentagon");
    assert_eq!(v["pass"], true);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 3);
    for c in checks {
        assert_eq!(c["defect"].as_f64(), Some(0.0));
        assert_eq!(c["tolerance"].as_f64(), Some(1e-10));
    }
    assert_eq!(v["environment"]["seed"], 7);
}

#[test]
fn theorems_from_a_system_file() {
    let o = qdeform(&["run", "theorems", "--system", &data("cgd.sys"), "--seed", "11"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let v = json(&o);
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names.iter().any(|n| n.contains("dual-crossed-scalars")));
    assert_eq!(v["environment"]["seed"], 11);
}

#[test]
fn strict_fails_on_skipped_verifiers() {
    let sys = data("cgd.sys");
    let o = qdeform(&["run", "deform", "--system", &sys]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["skipped"].as_array().unwrap().len(), 5);
    let o = qdeform(&["run", "deform", "--system", &sys, "--strict"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(qdeform(&["run", "nope"]).status.code(), Some(2));
    assert_eq!(qdeform(&["run", "pentagon", "--group", "/no/such.grp"]).status.code(), Some(2));
    assert_eq!(qdeform(&["run", "pentagon", "--json", "--table"]).status.code(), Some(2));
    assert_eq!(qdeform(&["run", "pentagon", "--tol-identity", "-1"]).status.code(), Some(2));
    assert_eq!(qdeform(&["enumerate_cocycles", "--group", &data("s3.grp")]).status.code(), Some(2));
}

#[test]
fn unverified_cocycle_is_refused_unless_forced() {
    let d = scratch("bad");
    let coc = d.join("bad.coc");
    std::fs::write(&coc, "bicharacter bad\n1 1 0.1\n").unwrap();
    let coc = coc.display().to_string();
    let base = ["run", "cocycle", "--group", &data("z3.grp"), "--cocycle", &coc];
    let o = qdeform(&base);
    assert_eq!(o.status.code(), Some(2));
    let mut forced = base.to_vec();
    forced.push("--force-unverified");
    let o = qdeform(&forced);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["pass"], false);
    std::fs::remove_dir_all(d).ok();
}

#[test]
fn tight_tolerance_fails_the_run() {
    let args = ["run", "twisted", "--group", &data("z2xz2.grp"), "--cocycle", &data("sigma.coc")];
    assert_eq!(qdeform(&args).status.code(), Some(0));
    let mut tight = args.to_vec();
    tight.extend(["--tol-identity", "0", "--tol-span", "0"]);
    assert_eq!(qdeform(&tight).status.code(), Some(1));
}

#[test]
fn table_output() {
    let o = qdeform(&["run", "pentagon", "--group", &data("z3.grp"), "--table"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("check"));
    assert!(text.contains("suite pentagon: 3 checks, 0 failed"));
}

#[test]
fn enumeration_counts_and_round_trip() {
    for (g, n) in [("z1.grp", 1), ("z2.grp", 2), ("z3.grp", 3), ("z4.grp", 4), ("z2xz2.grp", 16)] {
        let o = qdeform(&["enumerate_cocycles", "--group", &data(g)]);
        assert_eq!(o.status.code(), Some(0));
        let text = String::from_utf8(o.stdout).unwrap();
        let sections = text.lines().filter(|l| l.starts_with("bicharacter ")).count();
        assert_eq!(sections, n, "{g}");
    }
    let d = scratch("enum");
    let out = d.display().to_string();
    let o = qdeform(&["enumerate_cocycles", "--group", &data("z4.grp"), "--out", &out]);
    assert_eq!(o.status.code(), Some(0));
    let mut files: Vec<_> = std::fs::read_dir(&d).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    assert_eq!(files.len(), 4);
    for f in files {
        let o = qdeform(&["run", "cocycle", "--group", &data("z4.grp"), "--cocycle", f.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", f.display());
    }
    std::fs::remove_dir_all(d).ok();
}

#[test]
fn same_seed_same_bytes() {
    let args = ["run", "cohomology", "--system", &data("cgd.sys"), "--coboundaries", "5", "--seed", "3"];
    assert_eq!(qdeform(&args).stdout, qdeform(&args).stdout);
}
