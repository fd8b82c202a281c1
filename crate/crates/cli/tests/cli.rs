use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use qtg_core::fixtures;
use qtg_core::io::geom::serialize_geom;
use qtg_core::io::qtg::serialize;

fn qtg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qtg"))
        .args(args)
        .env("QTG_LOG", "quiet")
        .output()
        .expect("binary runs")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn put(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn rewrite_then_certify_passes() {
    let dir = tempfile::tempdir().unwrap();
    let input = put(dir.path(), "c4.qtg", &serialize(&fixtures::convex4()));
    let output = dir.path().join("out.qtg");
    let cert = dir.path().join("cert.json");
    let r = qtg(&[
        "rewrite",
        p(&input),
        "--k",
        "3",
        "-o",
        p(&output),
        "--certificate",
        p(&cert),
    ]);
    assert_eq!(r.status.code(), Some(0), "{}", String::from_utf8_lossy(&r.stderr));
    let c: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!(c["pass"], true);
    let r = qtg(&["certify", p(&input), p(&output), "--k", "3"]);
    assert_eq!(r.status.code(), Some(0));
}

#[test]
fn certify_fail_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let input = put(dir.path(), "c4.qtg", &serialize(&fixtures::convex4()));
    let r = qtg(&["certify", p(&input), p(&input), "--k", "3"]);
    assert_eq!(r.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&r.stdout).contains("\"pass\": false"));
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let input = put(dir.path(), "c4.qtg", &serialize(&fixtures::convex4()));
    let out = dir.path().join("o.qtg");
    assert_eq!(
        qtg(&["rewrite", p(&input), "--k", "2", "-o", p(&out)]).status.code(),
        Some(2)
    );
    let bad = put(dir.path(), "bad.qtg", "{\"format\":\"qtg\",\"version\":7}\n");
    let r = qtg(&["validate", p(&bad)]);
    assert_eq!(r.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&r.stderr).contains("version 1"));
    assert_eq!(
        qtg(&["validate", p(&dir.path().join("missing.qtg"))]).status.code(),
        Some(2)
    );
}

#[test]
fn rewrite_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let input = put(dir.path(), "t.qtg", &serialize(&fixtures::nested_tangled()));
    let mut outs = Vec::new();
    for i in 0..2 {
        let o = dir.path().join(format!("o{i}.qtg"));
        let c = dir.path().join(format!("c{i}.json"));
        assert_eq!(
            qtg(&["rewrite", p(&input), "--k", "3", "-o", p(&o), "--certificate", p(&c)])
                .status
                .code(),
            Some(0)
        );
        outs.push((std::fs::read(&o).unwrap(), std::fs::read(&c).unwrap()));
    }
    assert_eq!(outs[0], outs[1]);
}

#[test]
fn generate_ingest_render_and_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.qtg");
    let r = qtg(&[
        "generate",
        "--kind",
        "convex_chords",
        "--n",
        "8",
        "--chords",
        "0-4,1-5,2-6,3-7",
        "-o",
        p(&g),
    ]);
    assert_eq!(r.status.code(), Some(0), "{}", String::from_utf8_lossy(&r.stderr));
    assert_eq!(std::fs::read_to_string(&g).unwrap(), serialize(&fixtures::convex4()));

    let geom = put(dir.path(), "c4.geom", &serialize_geom(&fixtures::convex4_drawing()));
    let ingested = dir.path().join("i.qtg");
    assert_eq!(qtg(&["ingest", p(&geom), "-o", p(&ingested)]).status.code(), Some(0));
    assert_eq!(
        std::fs::read_to_string(&ingested).unwrap(),
        serialize(&fixtures::convex4())
    );

    let svg = dir.path().join("g.svg");
    assert_eq!(qtg(&["render", p(&g), "-o", p(&svg)]).status.code(), Some(0));
    assert_eq!(
        std::fs::read_to_string(&svg)
            .unwrap()
            .matches("class=\"crossing\"")
            .count(),
        6
    );

    let r = qtg(&["analyze", p(&g), "--k", "3"]);
    assert_eq!(r.status.code(), Some(0));
    let a: serde_json::Value = serde_json::from_slice(&r.stdout).unwrap();
    assert_eq!(a["k1_crossings"].as_array().unwrap().len(), 1);
    assert_eq!(a["quasi_planar"]["quasi_planar"], false);

    let r = qtg(&[
        "generate",
        "--kind",
        "random_kplanar",
        "--n",
        "12",
        "--m",
        "20",
        "--k",
        "3",
        "--seed",
        "4",
        "-o",
        p(&g),
    ]);
    assert_eq!(r.status.code(), Some(0));
    assert_eq!(qtg(&["generate", "--kind", "nope", "-o", p(&g)]).status.code(), Some(2));
}

#[test]
fn untangle_and_rewrite_all() {
    let dir = tempfile::tempdir().unwrap();
    let a = put(dir.path(), "a.qtg", &serialize(&fixtures::tangled()));
    let b = put(dir.path(), "b.qtg", &serialize(&fixtures::mutual()));
    let u = dir.path().join("u.qtg");
    assert_eq!(
        qtg(&["untangle", p(&a), "--k", "3", "-o", p(&u)]).status.code(),
        Some(0)
    );
    let out = dir.path().join("out");
    let r = qtg(&["rewrite-all", p(&a), p(&b), "--k", "3", "--out-dir", p(&out)]);
    assert_eq!(r.status.code(), Some(0), "{}", String::from_utf8_lossy(&r.stderr));
    assert!(out.join("a.qtg").exists() && out.join("b.cert.json").exists());
}

#[test]
fn split_writes_components() {
    let dir = tempfile::tempdir().unwrap();
    let text = "{\"format\":\"qtg\",\"version\":1}\n\
        {\"vertex\":0,\"rotation\":[0]}\n{\"vertex\":1,\"rotation\":[0]}\n\
        {\"vertex\":2,\"rotation\":[1]}\n{\"vertex\":3,\"rotation\":[1]}\n\
        {\"edge\":0,\"tail\":0,\"head\":1}\n{\"edge\":1,\"tail\":2,\"head\":3}\n";
    let f = put(dir.path(), "two.qtg", text);
    assert_eq!(qtg(&["validate", p(&f)]).status.code(), Some(2));
    let prefix = dir.path().join("part");
    assert_eq!(qtg(&["split", p(&f), "--prefix", p(&prefix)]).status.code(), Some(0));
    for i in 0..2 {
        let part = dir.path().join(format!("part.{i}.qtg"));
        assert_eq!(qtg(&["validate", p(&part)]).status.code(), Some(0));
    }
}
