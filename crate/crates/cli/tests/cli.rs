use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_helixlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect()
}

#[test]
fn mutate_seed_and_word() {
    let v = json_of(&run(&["mutate", "--space", "P2", "--word", "s1"]));
    assert_eq!(v["space"], "P2");
    assert_eq!(strings(&v["classes"][0]), ["3", "-1", "0"]);
    assert_eq!(strings(&v["classes"][1]), ["1", "0", "0"]);
    let seed = json_of(&run(&["mutate", "--space", "P2"]));
    assert_eq!(seed, json_of(&run(&["mutate", "--seed", "P2", "--word", "s1 s1^-1"])));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["mutate", "--word", "s1 q"]).status.code(), Some(1));
    assert_eq!(run(&["mutate", "--word", "s3"]).status.code(), Some(1));
    assert_eq!(run(&["descend", "1", "1", "1"]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    assert_eq!(run(&["orbit", "markov"]).status.code(), Some(1));
}

#[test]
fn descend_paths() {
    let v = json_of(&run(&["descend", "3", "6", "15"]));
    assert_eq!(v["path"].as_array().unwrap().len(), 3);
    assert_eq!(strings(&v["path"][2]), ["3", "3", "3"]);
    let v = json_of(&run(&["descend", "3", "3", "3"]));
    assert_eq!(v["labels"].as_array().unwrap().len(), 0);
}

#[test]
fn orbit_counts() {
    let v = json_of(&run(&["orbit", "str", "--depth", "2"]));
    assert_eq!(v["meta"]["node_count"], 17);
    let v = json_of(&run(&["orbit", "strw", "--depth", "1"]));
    assert_eq!(v["meta"]["node_count"], 7);
    let out = run(&["orbit", "markov", "--bound", "54", "--format", "dot"]);
    let dot = String::from_utf8(out.stdout).unwrap();
    assert_eq!(dot.lines().filter(|l| l.contains("[depth=")).count(), 4);
}

#[test]
fn orbit_ignores_thread_cap() {
    let one = Command::new(env!("CARGO_BIN_EXE_helixlab"))
        .args(["orbit", "str", "--depth", "3"])
        .env("HELIXLAB_THREADS", "1")
        .output()
        .unwrap();
    let many = Command::new(env!("CARGO_BIN_EXE_helixlab"))
        .args(["orbit", "str", "--depth", "3"])
        .env("HELIXLAB_THREADS", "4")
        .output()
        .unwrap();
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn quiver_values() {
    let v = json_of(&run(&["quiver", "--space", "P2"]));
    assert_eq!(strings(&v["quiver"]), ["3", "3", "3"]);
    assert_eq!(strings(&v["T"]), ["3", "3", "3"]);
    assert_eq!(strings(&v["T_omega"]), ["3", "3", "3"]);
    let v = json_of(&run(&["quiver", "--word", "s1"]));
    assert_eq!(strings(&v["quiver"]), ["3", "3", "6"]);
    assert_eq!(strings(&v["T"]), ["3", "6", "3"]);
    let v = json_of(&run(&["quiver", "--space", "P1"]));
    assert_eq!(strings(&v["quiver"]), ["2", "2"]);
}

#[test]
fn seed_round_trip() {
    let state = json_of(&run(&["mutate", "--word", "s1 s2^-1"]));
    let text = state.to_string();
    let direct = json_of(&run(&["quiver", "--word", "s2 s1 s2^-1"]));
    let via = json_of(&run(&["quiver", "--seed", &text, "--word", "s2"]));
    assert_eq!(direct, via);

    let path = std::env::temp_dir().join(format!("helixlab-seed-{}.json", std::process::id()));
    std::fs::write(&path, &text).unwrap();
    let from_file = json_of(&run(&["mutate", "--seed", path.to_str().unwrap()]));
    std::fs::remove_file(&path).unwrap();
    assert_eq!(from_file, state);

    let sph = json_of(&run(&["mutate", "--spherical", "--word", "t1 r"]));
    let back = json_of(&run(&["mutate", "--seed", &sph.to_string(), "--word", "r^-1 t1^-1"]));
    assert_eq!(back, json_of(&run(&["mutate", "--spherical"])));
}

#[test]
fn verify_suites() {
    let out = run(&["verify", "conj", "--n", "8"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("PASS conj"));
    let v = json_of(&run(&["verify", "descent", "--bound", "100000", "--json"]));
    assert_eq!(v["passed"], true);
    assert_eq!(run(&["verify", "nonsense"]).status.code(), Some(1));
}

#[test]
fn helix_and_euler() {
    let v = json_of(&run(&["helix", "--from", "-1", "--to", "3"]));
    assert_eq!(v.as_array().unwrap().len(), 5);
    assert_eq!(strings(&v[0]["class"]), ["3", "-3", "1"]);
    assert_eq!(strings(&v[4]["class"]), ["1", "-3", "3"]);
    let out = run(&["euler", "1,0,0", "0,0,1"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "6");
    let out = run(&["euler", "--space", "P1", "0,1", "1,0"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "0");
}
