use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_delune");

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data/diagrams").join(name)
}

fn delune(cache: &Path, args: &[&str]) -> Output {
    Command::new(BIN).env("DELUNE_CACHE", cache).args(args).output().expect("binary runs")
}

fn json_of(o: &Output) -> Value {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn entries(dir: &Path) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = fs::read_dir(dir)
        .map(|r| r.map(|e| e.unwrap().path()).filter(|p| p.extension().is_some_and(|x| x == "json")).collect())
        .unwrap_or_default();
    v.sort();
    v
}

#[test]
fn grey_and_lh_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let v = json_of(&delune(dir.path(), &["grey", "17"]));
    assert_eq!(v["p"], 17);
    assert_eq!(v["grey_index"], 5);
    assert_eq!(v["algmincol"], 6);
    let o = delune(dir.path(), &["lh", "17"]);
    let v = json_of(&o);
    assert_eq!(v, serde_json::json!({"n": 17, "seq": [8, 4], "l": 2, "t": 4}));
    let text = delune(dir.path(), &["lh", "17", "--format", "text"]);
    assert_eq!(String::from_utf8(text.stdout).unwrap(), "n    17\nseq  [8,4]\nl    2\nt    4\n");
}

#[test]
fn delunify_the_trefoil() {
    let dir = tempfile::tempdir().unwrap();
    let input = data("trefoil.json");
    let v = json_of(&delune(
        dir.path(),
        &["delunify", "--in", input.to_str().unwrap(), "--mod", "3", "--strategy", "tassel"],
    ));
    assert_eq!(v["crossings_after"], 8);
    assert_eq!(v["lunes_after"], 0);
    assert_eq!(v["palette"], serde_json::json!([0, 1, 2]));
    assert_eq!(v["result"]["diagram"]["crossings"].as_array().unwrap().len(), 8);
    assert_eq!(v["trace"][0]["template"], "TASSEL_3");
}

#[test]
fn diagram_commands_accept_stdin() {
    let dir = tempfile::tempdir().unwrap();
    let text = "# trefoil\nX 1 5 2 4 1\nX 3 1 4 6 1\nX 5 3 6 2 1\n";
    let mut child = Command::new(BIN)
        .env("DELUNE_CACHE", dir.path())
        .args(["invariants", "--in", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    let v = json_of(&child.wait_with_output().unwrap());
    assert_eq!(v["determinant"], 3);
    assert_eq!(v["recognition"], "3_1");

    let f = data("figure_eight.json");
    let f = f.to_str().unwrap();
    assert_eq!(json_of(&delune(dir.path(), &["lunes", "--in", f]))["count"], 2);
    assert_eq!(json_of(&delune(dir.path(), &["faces", "--in", f]))["count"], 6);
    assert_eq!(json_of(&delune(dir.path(), &["tassels", "--in", f]))["count"], 2);
    assert_eq!(json_of(&delune(dir.path(), &["parse", "--in", f]))["crossings"], 4);
    assert_eq!(json_of(&delune(dir.path(), &["color", "--in", f, "--mod", "5"]))["count"], "25");
    assert_eq!(json_of(&delune(dir.path(), &["min-palette", "--in", f, "--mod", "5"]))["size"], 4);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let code = |args: &[&str]| delune(dir.path(), args).status.code().unwrap();
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["grey", "17", "--bogus"]), 2);
    assert_eq!(code(&["lh"]), 2);
    assert_eq!(code(&["delunify", "--in", "x", "--mod", "3", "--strategy", "sideways"]), 2);
    assert_eq!(code(&["grey", "15"]), 3);
    assert_eq!(code(&["lh", "3"]), 3);
    assert_eq!(code(&["parse", "--in", "/nonexistent/diagram.json"]), 3);
    assert_eq!(code(&["alg1", "--knot", "99_1", "--mod", "7", "--max-n", "6"]), 3);
    assert_eq!(code(&["grey", "47"]), 4);
    assert_eq!(code(&["enum-polyhedra", "14"]), 4);
    assert_eq!(code(&["lfc", "--knot", "3_1", "--max-n", "20"]), 4);

    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "X 1 2 3\n").unwrap();
    let o = delune(dir.path(), &["parse", "--in", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
}

#[test]
fn cache_hits_replay_byte_identically() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["alg1", "--knot", "5_2", "--mod", "7", "--max-n", "8"];
    let first = delune(dir.path(), &args);
    assert!(first.status.success());
    assert_eq!(entries(dir.path()).len(), 1);
    let second = delune(dir.path(), &args);
    assert_eq!(first.stdout, second.stdout);

    // Clearing the cache and recomputing gives the same bytes.
    for p in entries(dir.path()) {
        fs::remove_file(p).unwrap();
    }
    let third = delune(dir.path(), &args);
    assert_eq!(first.stdout, third.stdout);
    let uncached = delune(dir.path(), &[&args[..], &["--no-cache"]].concat());
    assert_eq!(first.stdout, uncached.stdout);
}

#[test]
fn cache_is_consulted_and_keyed_on_parameters() {
    let dir = tempfile::tempdir().unwrap();
    delune(dir.path(), &["lh", "17"]);
    let [entry] = &entries(dir.path())[..] else { panic!("one entry expected") };
    let mut e: Value = serde_json::from_str(&fs::read_to_string(entry).unwrap()).unwrap();
    assert_eq!(e["command"], "lh");
    assert_eq!(e["version"], env!("CARGO_PKG_VERSION"));
    assert!(e["timestamp"].as_u64().unwrap() > 0);
    assert_eq!(e["digest"].as_str().unwrap().len(), 64);

    // A planted result shows up, so the stored entry is what gets printed.
    e["result"]["t"] = 99.into();
    fs::write(entry, serde_json::to_string(&e).unwrap()).unwrap();
    assert_eq!(json_of(&delune(dir.path(), &["lh", "17"]))["t"], 99);
    assert_eq!(json_of(&delune(dir.path(), &["lh", "17", "--no-cache"]))["t"], 4);
    assert_eq!(json_of(&delune(dir.path(), &["lh", "18"]))["t"], 4);
    assert_eq!(entries(dir.path()).len(), 2);

    // Entries from another version are recomputed.
    e["version"] = "0.0.0-other".into();
    fs::write(entry, serde_json::to_string(&e).unwrap()).unwrap();
    assert_eq!(json_of(&delune(dir.path(), &["lh", "17"]))["t"], 4);
}

#[test]
fn diagram_key_ignores_input_formatting() {
    let dir = tempfile::tempdir().unwrap();
    let json = data("trefoil.json");
    let text = dir.path().join("trefoil.txt");
    fs::write(&text, "X 1 5 2 4 1\n\nX 3 1 4 6 1\nX 5 3 6 2 1\n").unwrap();
    let cache = dir.path().join("cache");
    let a = delune(&cache, &["min-palette", "--in", json.to_str().unwrap(), "--mod", "3"]);
    let b = delune(&cache, &["min-palette", "--in", text.to_str().unwrap(), "--mod", "3"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(entries(&cache).len(), 1);
}

#[test]
fn flag_overrides_environment_and_no_cache_writes_nothing() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    delune(env_dir.path(), &["torus-bound", "17", "--cache-dir", flag_dir.path().to_str().unwrap()]);
    assert!(entries(env_dir.path()).is_empty());
    assert_eq!(entries(flag_dir.path()).len(), 1);
    delune(env_dir.path(), &["torus-bound", "19", "--no-cache"]);
    assert!(entries(env_dir.path()).is_empty());
}

#[test]
fn output_does_not_depend_on_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let run = |threads: &str| {
        let o = Command::new(BIN)
            .env("RAYON_NUM_THREADS", threads)
            .args(["--no-cache", "alg1", "--knot", "6_2", "--mod", "11", "--max-n", "9"])
            .env("DELUNE_CACHE", dir.path())
            .output()
            .unwrap();
        assert!(o.status.success());
        o.stdout
    };
    let one = run("1");
    assert_eq!(one, run("4"));
    assert_eq!(one, run("8"));
}

#[test]
fn concurrent_processes_share_one_entry() {
    let dir = tempfile::tempdir().unwrap();
    let children: Vec<_> = (0..6)
        .map(|_| {
            Command::new(BIN)
                .env("DELUNE_CACHE", dir.path())
                .args(["grey", "23"])
                .stdout(Stdio::piped())
                .spawn()
                .unwrap()
        })
        .collect();
    let outs: Vec<Vec<u8>> = children.into_iter().map(|c| c.wait_with_output().unwrap().stdout).collect();
    assert!(outs.iter().all(|o| o == &outs[0]));
    assert_eq!(json_of(&delune(dir.path(), &["grey", "23"]))["algmincol"], 6);
    assert_eq!(entries(dir.path()).len(), 1);
}

#[test]
fn alg2_and_enumeration() {
    let dir = tempfile::tempdir().unwrap();
    let v = json_of(&delune(dir.path(), &["enum-polyhedra", "10"]));
    assert_eq!(v["count"], 3);
    let input = data("knot_5_2.json");
    let v = json_of(&delune(dir.path(), &["alg2", "--in", input.to_str().unwrap(), "--knot", "5_2", "--mod", "7"]));
    assert_eq!(v["knot"], "5_2");
    assert!(v["best_palette"].as_u64().unwrap() >= 4);
    let v = json_of(&delune(dir.path(), &["compare-strategies", "--max", "1000"]));
    assert_eq!(v["violations"], serde_json::json!([]));
    assert_eq!(v["checked"], 989);
}
