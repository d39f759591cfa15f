use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use unicomplex_cli::cache::{Cache, Lookup};

fn run(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unicomplex"))
        .args(args)
        .env("UNICOMPLEX_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn cache_files(dir: &Path) -> Vec<std::path::PathBuf> {
    let mut out = Vec::new();
    if let Ok(rd) = fs::read_dir(dir) {
        for sub in rd.flatten() {
            for f in fs::read_dir(sub.path()).unwrap().flatten() {
                out.push(f.path());
            }
        }
    }
    out
}

#[test]
fn fvector_of_k32() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run(
        tmp.path(),
        &["fvector", "--family", "K", "--p", "3", "--n", "2"],
    );
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "(1, 4, 6)");
    let o = run(
        tmp.path(),
        &[
            "fvector", "--family", "K", "--p", "3", "--n", "2", "--format", "json",
        ],
    );
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["f_vector"], serde_json::json!(["1", "4", "6"]));
}

#[test]
fn morse_and_recursion_print_the_same_table() {
    let tmp = tempfile::tempdir().unwrap();
    let base = [
        "betti", "--family", "X", "--p", "2", "--n", "3", "--format", "csv", "--method",
    ];
    let a = run(tmp.path(), &[&base[..], &["morse"]].concat());
    let b = run(tmp.path(), &[&base[..], &["recursion"]].concat());
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
    let csv = stdout(&a);
    assert!(csv.starts_with("l,0,1,2,3,4,5,6,7\n"));
    assert!(csv.contains("\n3,0,0,0,0,7,42,42,13\n"));
}

#[test]
fn big_values_are_json_strings() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run(
        tmp.path(),
        &[
            "betti", "--family", "K", "--p", "3", "--n", "4", "--format", "json",
        ],
    );
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let entries = v["bidegrees"].as_array().unwrap();
    assert!(entries.iter().all(|e| e["beta"].is_string()));
    assert!(entries.iter().any(|e| e["beta"] == "431761068648000"));
}

#[test]
fn repeated_call_hits_the_cache() {
    let tmp = tempfile::tempdir().unwrap();
    let args = [
        "betti",
        "--family",
        "X",
        "--p",
        "2",
        "--n",
        "4",
        "--method",
        "euler-oracle",
    ];
    let first = run(tmp.path(), &args);
    assert!(first.status.success());
    let files = cache_files(tmp.path());
    assert_eq!(files.len(), 1);
    let stamp = fs::metadata(&files[0]).unwrap().modified().unwrap();
    let second = run(tmp.path(), &args);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(fs::metadata(&files[0]).unwrap().modified().unwrap(), stamp);
}

#[test]
fn corrupt_entry_is_recomputed_with_a_warning() {
    let tmp = tempfile::tempdir().unwrap();
    let args = ["fvector", "--family", "X", "--p", "3", "--n", "2"];
    let good = run(tmp.path(), &args);
    let files = cache_files(tmp.path());
    assert_eq!(files.len(), 1);
    let mut raw = fs::read(&files[0]).unwrap();
    let last = raw.len() - 2;
    raw[last] ^= 1;
    fs::write(&files[0], raw).unwrap();
    let again = run(tmp.path(), &args);
    assert!(again.status.success());
    assert_eq!(good.stdout, again.stdout);
    assert!(String::from_utf8_lossy(&again.stderr).contains("corrupt cache entry"));
    let cache = Cache::new(tmp.path(), env!("CARGO_PKG_VERSION"));
    let key = files[0]
        .parent()
        .unwrap()
        .file_name()
        .unwrap()
        .to_string_lossy()
        .to_string()
        + &files[0].file_name().unwrap().to_string_lossy();
    assert!(matches!(cache.get(&key), Lookup::Hit(_)));
}

#[test]
fn no_cache_bypasses() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run(
        tmp.path(),
        &[
            "--no-cache",
            "fvector",
            "--family",
            "K",
            "--p",
            "2",
            "--n",
            "3",
        ],
    );
    assert!(o.status.success());
    assert!(cache_files(tmp.path()).is_empty());
}

#[test]
fn version_bump_misses() {
    let tmp = tempfile::tempdir().unwrap();
    let old = Cache::new(tmp.path(), "0.1.0");
    let key = old.key(&["betti", "X", "2", "3", "morse", "table"]);
    old.put(&key, b"artifact").unwrap();
    assert_eq!(old.get(&key), Lookup::Hit(b"artifact".to_vec()));
    let new = Cache::new(tmp.path(), "0.2.0");
    assert_eq!(
        new.get(&new.key(&["betti", "X", "2", "3", "morse", "table"])),
        Lookup::Miss
    );
}

#[test]
fn exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    assert_eq!(
        run(tmp.path(), &["betti", "--p", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(run(tmp.path(), &["no-such-command"]).status.code(), Some(2));
    assert_eq!(
        run(
            tmp.path(),
            &["fvector", "--family", "X", "--p", "4", "--n", "2"]
        )
        .status
        .code(),
        Some(2)
    );
    let big = run(
        tmp.path(),
        &[
            "betti", "--family", "X", "--p", "3", "--n", "3", "--method", "morse",
        ],
    );
    assert_eq!(big.status.code(), Some(3));
}

#[test]
fn buchstaber_from_a_generated_file() {
    let tmp = tempfile::tempdir().unwrap();
    let file = tmp.path().join("k.json");
    let g = run(
        tmp.path(),
        &[
            "generate",
            "--family",
            "K",
            "--p",
            "3",
            "--n",
            "2",
            "-o",
            file.to_str().unwrap(),
        ],
    );
    assert!(g.status.success());
    let o = run(
        tmp.path(),
        &[
            "buchstaber",
            "--complex",
            file.to_str().unwrap(),
            "--p",
            "3",
        ],
    );
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["s_p"], 2);
    assert_eq!(v["r"], 2);
    assert_eq!(v["assignment"].as_array().unwrap().len(), 4);

    let b = run(
        tmp.path(),
        &[
            "buchstaber",
            "--complex",
            file.to_str().unwrap(),
            "--p",
            "3",
            "--bounds-only",
        ],
    );
    let v: serde_json::Value = serde_json::from_slice(&b.stdout).unwrap();
    assert!(v["s_p"].is_null());
    assert_eq!(
        (v["lower"].as_i64(), v["upper"].as_i64()),
        (Some(0), Some(2))
    );

    let t = run(
        tmp.path(),
        &[
            "--no-cache",
            "buchstaber",
            "--complex",
            file.to_str().unwrap(),
            "--p",
            "2",
            "--budget",
            "1",
        ],
    );
    assert_eq!(t.status.code(), Some(3));
    let v: serde_json::Value = serde_json::from_slice(&t.stdout).unwrap();
    assert_eq!(v["budget_exhausted"], true);
}

#[test]
fn omega_reports_exact_and_theta_bounds() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run(tmp.path(), &["omega", "--p", "2", "--q", "3", "--n", "2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["omega"]["exact"], 2);
    assert_eq!(v["theta"]["upper"], 3);
}

#[test]
fn reproduce_tables_and_verify_pass() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("tables");
    let o = run(
        tmp.path(),
        &["reproduce-tables", "--output-dir", out.to_str().unwrap()],
    );
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("163548"));
    assert!(out.join("betti_x2_4.csv").exists());
    let v = run(tmp.path(), &["verify"]);
    assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
    assert!(!stdout(&v).contains("FAIL"));
}

#[test]
fn identical_specs_give_identical_bytes() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = ["cup-length", "--family", "X", "--p", "3", "--n", "3"];
    assert_eq!(run(a.path(), &args).stdout, run(b.path(), &args).stdout);
}
