use std::path::{Path, PathBuf};
use std::process::Command;

use tempfile::TempDir;

const GOLDEN: &str = "t=3/2+1/2*sqrt(5)";

fn twisted(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_twisted")).args(args).output().unwrap();
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap(),
    )
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn example(dir: &TempDir) -> PathBuf {
    let (_, _, code) = twisted(&["family", "mapping-torus", "2", "1", "1", "1", "--out", s(dir.path())]);
    assert_eq!(code, 0);
    dir.path().join("mapping-torus_2_1_1_1.pres")
}

#[test]
fn h1_on_example() {
    let dir = TempDir::new().unwrap();
    let pres = example(&dir);
    let (out, _, code) = twisted(&["h1", s(&pres), "--char", GOLDEN]);
    assert_eq!(code, 0);
    assert!(out.contains("h1_dim: 1"));
    let (out, _, _) = twisted(&["h1", s(&pres), "--char", "t=2"]);
    assert!(out.contains("h1_dim: 0"));
}

#[test]
fn h1_surface_trivial() {
    let dir = TempDir::new().unwrap();
    let (text, _, _) = twisted(&["family", "surface", "2"]);
    let pres = write(dir.path(), "s.pres", &text);
    let (out, _, code) = twisted(&["h1", s(&pres)]);
    assert_eq!(code, 0);
    assert!(out.contains("h1_dim: 4"));
}

#[test]
fn json_report_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let pres = example(&dir);
    let args = ["h1", s(&pres), "--char", GOLDEN, "--format", "json"];
    let (a, _, code) = twisted(&args);
    let (b, _, _) = twisted(&args);
    assert_eq!(code, 0);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    for key in ["z1_dim", "b1_dim", "h1_dim", "basis", "certificate", "warnings"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["h1_dim"], 1);
    assert_eq!(v["certificate"]["verified"], true);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let pres = example(&dir);
    let bad = write(dir.path(), "bad.pres", "gens: a b\nrel: a b^x\n");
    let (_, err, code) = twisted(&["h1", s(&bad)]);
    assert_eq!(code, 2);
    assert!(err.contains("2:"), "{err}");
    let heis = write(dir.path(), "h.pres", &twisted(&["family", "heisenberg"]).0);
    assert_eq!(twisted(&["h1", s(&heis), "--char", "z=2"]).2, 3);
    assert_eq!(twisted(&["h1", s(&pres), "--char", "u=1.5"]).2, 4);
    assert_eq!(twisted(&["h1", s(&pres), "--char", "u=sqrt(2) t=sqrt(5)"]).2, 4);
    assert_eq!(twisted(&["h1", s(&pres), "--eps", "1e-9"]).2, 2);
    assert_eq!(twisted(&["h1", s(&pres), "--mode", "approx", "--char", "t=2.618033988749895"]).2, 0);
    assert_eq!(twisted(&["family", "surface", "0"]).2, 2);
    assert_eq!(twisted(&["family", "mapping-torus", "2", "0", "0", "1"]).2, 2);
    assert_eq!(twisted(&["h1", "/nonexistent/file.pres"]).2, 1);
    assert_eq!(twisted(&["frobnicate"]).2, 2);
    assert_eq!(twisted(&["certificate", s(&pres), "--char", GOLDEN, "--cocycle", "u=1"]).2, 5);
}

#[test]
fn approx_mode_reports_dimension() {
    let dir = TempDir::new().unwrap();
    let pres = example(&dir);
    let (out, _, code) = twisted(&["h1", s(&pres), "--mode", "approx", "--eps", "1e-9", "--char", "t=2.618033988749895"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("h1_dim: 1"));
    assert!(out.contains("approx(1e-9)"));
}

#[test]
fn certificate_round_trip_and_mutation() {
    let dir = TempDir::new().unwrap();
    let pres = example(&dir);
    let (json, _, code) = twisted(&["certificate", s(&pres), "--char", GOLDEN]);
    assert_eq!(code, 0);
    let cert = write(dir.path(), "c.json", &json);
    let (out, _, code) = twisted(&["verify", s(&cert)]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "verified: true, indecomposable: true");
    assert_eq!(twisted(&["verify", s(&cert), "--presentation", s(&pres)]).2, 0);

    let mut doc: serde_json::Value = serde_json::from_str(&json).unwrap();
    doc["matrices"][1][0][1] = serde_json::Value::String("7".into());
    let bad = write(dir.path(), "bad.json", &doc.to_string());
    let (out, err, code) = twisted(&["verify", s(&bad)]);
    assert_eq!(code, 5, "{out}{err}");
    assert!(err.contains("verified: false"));

    let garbage = write(dir.path(), "garbage.json", "{\"mode\": 1}");
    assert_eq!(twisted(&["verify", s(&garbage)]).2, 5);
}

#[test]
fn coboundary_certificate() {
    let dir = TempDir::new().unwrap();
    let pres = write(dir.path(), "f.pres", "gens: a\n");
    let (json, _, code) = twisted(&["certificate", s(&pres), "--char", "a=2", "--cocycle", "a=1"]);
    assert_eq!(code, 0);
    let cert = write(dir.path(), "c.json", &json);
    let (out, _, code) = twisted(&["verify", s(&cert)]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "verified: true, indecomposable: false, fixed_line_c: 1");
}

#[test]
fn family_outputs() {
    let (out, _, code) = twisted(&["family", "mapping-torus", "2", "1", "1", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out, "gens: u v t\nrel: u v u^-1 v^-1\nrel: t u t^-1 v^-1 u^-2\nrel: t v t^-1 v^-1 u^-1\n");
    let (out, _, _) = twisted(&["family", "surface", "2"]);
    assert!(out.starts_with("gens: g1 g2 g3 g4\n"));
    let (out, _, _) = twisted(&["family", "mapping-torus", "0", "-1", "1", "0"]);
    assert!(out.contains("t v t^-1 u"));
    for fam in [&["free", "2"][..], &["abelian", "3"], &["heisenberg"]] {
        let mut args = vec!["family"];
        args.extend_from_slice(fam);
        assert_eq!(twisted(&args).2, 0);
    }
}

#[test]
fn enumerate_examples() {
    let dir = TempDir::new().unwrap();
    let pres = example(&dir);
    let conj = dir.path().join("mapping-torus_2_1_1_1.conj");
    let (out, _, code) = twisted(&["enumerate", s(&pres), s(&conj), "--outer", "t"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let entries = v.as_array().unwrap();
    assert_eq!(entries.len(), 2);
    assert!(entries.iter().all(|e| e["h1_dim"] == 1));
    assert_eq!(entries[0]["character"][2], "3/2-1/2*sqrt(5)");

    twisted(&["family", "heisenberg", "--out", s(dir.path())]);
    let (out, _, code) = twisted(&[
        "enumerate",
        s(&dir.path().join("heisenberg.pres")),
        s(&dir.path().join("heisenberg.conj")),
        "--outer",
        "x,y",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "[]");

    let big = (0..9).map(|_| "0 0 0 0 0 0 0 0 0\n").collect::<String>();
    let oversized = write(dir.path(), "big.conj", &format!("outer: 1\ncomm: 9\nN_1:\n{big}"));
    let (_, err, code) = twisted(&["enumerate", s(&pres), s(&oversized), "--outer", "t"]);
    assert_eq!(code, 1);
    assert!(err.contains("cap"));
    assert_eq!(twisted(&["enumerate", s(&pres), s(&conj), "--outer", "w"]).2, 2);
}
