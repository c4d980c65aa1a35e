use std::path::{Path, PathBuf};

use iotak_cli::{run, ComplexFile, Outcome, EXIT_CAP, EXIT_OK, EXIT_USAGE, EXIT_VERIFY};
use iotak_core::iota::{product, IotaComplex, Variant};
use iotak_core::models::{mirror, torus_knot, unknot_complex};
use tempfile::TempDir;

fn iotak(args: &[&str]) -> Outcome {
    run(std::iter::once("iotak").chain(args.iter().copied()))
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

fn path(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write(dir: &TempDir, name: &str, ic: &IotaComplex) -> PathBuf {
    let p = path(dir, name);
    std::fs::write(&p, ComplexFile::from_iota(name, ic).to_json()).unwrap();
    p
}

fn base() -> Vec<(String, IotaComplex)> {
    let mut out = vec![("U".to_string(), unknot_complex())];
    for (p, q) in [(2, 3), (3, 4), (4, 5), (5, 6)] {
        let t = torus_knot(p, q).unwrap();
        out.push((format!("-T({p},{q})"), mirror(&t)));
        out.push((format!("T({p},{q})"), t));
    }
    out
}

fn triple(json: &str) -> (i64, i64, i64) {
    let v: serde_json::Value = serde_json::from_str(json).unwrap();
    (v["V0_bar"].as_i64().unwrap(), v["V0"].as_i64().unwrap(), v["V0_under"].as_i64().unwrap())
}

#[test]
fn torus_matches_golden() {
    let out = iotak(&["torus", "2", "3"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout, golden("t23.json"));
}

#[test]
fn text_invariants_match_golden() {
    let out = iotak(&["invariants", "--torus", "2", "3", "--format", "text"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout, golden("t23_invariants.txt"));
}

#[test]
fn check_report_matches_golden() {
    let dir = TempDir::new().unwrap();
    let a = path(&dir, "a.json");
    let b = path(&dir, "b.json");
    assert_eq!(iotak(&["torus", "2", "3", "-o", s(&a)]).code, EXIT_OK);
    assert_eq!(iotak(&["sum", s(&a), s(&a), "-o", s(&b)]).code, EXIT_OK);
    let out = iotak(&["check", s(&b)]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout, golden("t23_t23_check.txt"));
}

#[test]
fn trefoil_invariants() {
    let out = iotak(&["invariants", "--torus", "2", "3"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(triple(&out.stdout), (1, 1, 1));
}

#[test]
fn unknot_invariants() {
    let out = iotak(&["invariants", "--torus", "1", "1"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(triple(&out.stdout), (0, 0, 0));
}

#[test]
fn t45_pipeline() {
    let dir = TempDir::new().unwrap();
    let a = path(&dir, "a.json");
    let b = path(&dir, "b.json");
    assert_eq!(iotak(&["torus", "4", "5", "-o", s(&a)]).code, EXIT_OK);
    assert_eq!(iotak(&["sum", s(&a), s(&a), "-o", s(&b)]).code, EXIT_OK);
    let out = iotak(&["invariants", s(&b)]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(triple(&out.stdout), (4, 4, 6));
    let out = iotak(&["obstruct", s(&b)]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["consistent_with_thin_or_lspace"], false);
}

#[test]
fn round_trip_is_byte_identical() {
    let base = base();
    let mut corpus = base.clone();
    for (i, (na, a)) in base.iter().enumerate() {
        for (nb, b) in &base[i..] {
            corpus.push((format!("{na}#{nb}"), product(a, b, Variant::First).unwrap()));
        }
    }
    for (name, ic) in &corpus {
        let once = ComplexFile::from_iota(name, ic).to_json();
        let parsed = ComplexFile::from_json(&once).unwrap();
        assert_eq!(parsed.to_json(), once, "{name}");
        let (c, i) = parsed.to_parts().unwrap();
        let again = IotaComplex::new(c, i).unwrap();
        assert_eq!(ComplexFile::from_iota(name, &again).to_json(), once, "{name}");
    }
}

#[test]
fn cli_round_trip_through_dual() {
    let dir = TempDir::new().unwrap();
    let a = path(&dir, "a.json");
    let d = path(&dir, "d.json");
    let dd = path(&dir, "dd.json");
    assert_eq!(iotak(&["torus", "3", "4", "-o", s(&a)]).code, EXIT_OK);
    assert_eq!(iotak(&["dual", s(&a), "-o", s(&d)]).code, EXIT_OK);
    assert_eq!(iotak(&["dual", s(&d), "-o", s(&dd)]).code, EXIT_OK);
    assert_eq!(std::fs::read_to_string(&a).unwrap(), std::fs::read_to_string(&dd).unwrap());
    let mirrored = iotak(&["torus", "3", "4", "--mirror"]).stdout;
    assert_eq!(std::fs::read_to_string(&d).unwrap(), mirrored);
}

#[test]
fn variants_agree_on_invariants() {
    let dir = TempDir::new().unwrap();
    let base = base();
    let files: Vec<PathBuf> = base.iter().enumerate().map(|(i, (_, ic))| write(&dir, &format!("k{i}.json"), ic)).collect();
    for (i, a) in files.iter().enumerate() {
        for b in &files[i..] {
            let reports: Vec<String> = ["1", "2"]
                .iter()
                .map(|v| {
                    let out = path(&dir, &format!("sum{v}.json"));
                    assert_eq!(iotak(&["sum", s(a), s(b), "--variant", v, "-o", s(&out)]).code, EXIT_OK);
                    let r = iotak(&["invariants", s(&out), "--oracle"]);
                    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
                    r.stdout
                })
                .collect();
            assert_eq!(reports[0], reports[1], "{} {}", a.display(), b.display());
        }
    }
}

#[test]
fn oracle_passes_on_table_row() {
    let dir = TempDir::new().unwrap();
    let a = path(&dir, "a.json");
    let b = path(&dir, "b.json");
    let c = path(&dir, "c.json");
    let out = path(&dir, "out.json");
    assert_eq!(iotak(&["torus", "3", "4", "--mirror", "-o", s(&a)]).code, EXIT_OK);
    assert_eq!(iotak(&["torus", "4", "5", "--mirror", "-o", s(&b)]).code, EXIT_OK);
    assert_eq!(iotak(&["torus", "5", "6", "-o", s(&c)]).code, EXIT_OK);
    assert_eq!(iotak(&["sum", s(&a), s(&b), s(&c), "-o", s(&out)]).code, EXIT_OK);
    let r = iotak(&["invariants", s(&out), "--oracle"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    assert_eq!(triple(&r.stdout), (-1, 1, 1));
}

#[test]
fn check_rejects_identity_involution() {
    let dir = TempDir::new().unwrap();
    let mut file = ComplexFile::from_iota("T(2,3)", &torus_knot(2, 3).unwrap());
    for arrow in &mut file.iota {
        arrow.to = arrow.from.clone();
    }
    let p = path(&dir, "bad.json");
    std::fs::write(&p, file.to_json()).unwrap();
    let out = iotak(&["check", s(&p)]);
    assert_eq!(out.code, EXIT_VERIFY);
    assert!(out.stdout.ends_with("iota_K-complex: no\n"));
    assert_eq!(iotak(&["invariants", s(&p)]).code, EXIT_VERIFY);
}

#[test]
fn usage_errors() {
    let dir = TempDir::new().unwrap();
    let junk = path(&dir, "junk.json");
    std::fs::write(&junk, "{\"name\": 3}").unwrap();
    let missing = path(&dir, "missing.json");
    for args in [
        vec!["frobnicate"],
        vec!["torus", "2", "4"],
        vec!["torus", "0", "3"],
        vec!["invariants"],
        vec!["invariants", "--torus", "2"],
        vec!["sum", "--variant", "3", s(&junk)],
        vec!["check", s(&junk)],
        vec!["check", s(&missing)],
    ] {
        let out = iotak(&args);
        assert_eq!(out.code, EXIT_USAGE, "{args:?}: {}", out.stderr);
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn local_equiv_outcomes() {
    let dir = TempDir::new().unwrap();
    let u = write(&dir, "u.json", &unknot_complex());
    let t = write(&dir, "t.json", &torus_knot(2, 3).unwrap());
    let out = iotak(&["local-equiv", s(&t), s(&t)]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("are locally equivalent"), "{}", out.stdout);
    let out = iotak(&["local-equiv", s(&u), s(&t)]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("not locally equivalent"), "{}", out.stdout);
    let out = iotak(&["local-equiv", s(&t), s(&t), "--cap", "0"]);
    assert_eq!(out.code, EXIT_CAP);
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = path(&dir, "a.json");
    let b1 = path(&dir, "b1.json");
    let b2 = path(&dir, "b2.json");
    assert_eq!(iotak(&["torus", "5", "6", "-o", s(&a)]).code, EXIT_OK);
    assert_eq!(iotak(&["sum", s(&a), s(&a), "-o", s(&b1)]).code, EXIT_OK);
    assert_eq!(iotak(&["sum", s(&a), s(&a), "-o", s(&b2)]).code, EXIT_OK);
    assert_eq!(std::fs::read(&b1).unwrap(), std::fs::read(&b2).unwrap());
    let first = iotak(&["invariants", s(&b1), "--oracle", "--format", "text"]);
    for _ in 0..3 {
        assert_eq!(iotak(&["invariants", s(&b1), "--oracle", "--format", "text"]), first);
    }
    assert_eq!(triple(&iotak(&["invariants", s(&b1)]).stdout), (6, 6, 6));
}

#[test]
fn binary_honours_thread_limit() {
    let bin = env!("CARGO_BIN_EXE_iotak");
    let run_with = |threads: &str| {
        std::process::Command::new(bin)
            .args(["invariants", "--torus", "4", "5", "--oracle"])
            .env("IOTAK_THREADS", threads)
            .output()
            .unwrap()
    };
    let one = run_with("1");
    let four = run_with("4");
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(one.status.code(), Some(EXIT_OK));
}
