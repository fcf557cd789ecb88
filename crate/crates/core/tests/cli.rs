mod common;

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use common::{data_dir, CDF13_ROWS};
use serde_json::Value;
use tdauth::catalog::catalog;
use tdauth::difference_families::develop_matrix;
use tdauth::io::{digest, load_json, CdfFile, MatrixFile, Provenance, SourceKind};
use tempfile::TempDir;

fn tdauth(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tdauth"))
        .args(args)
        .current_dir(dir)
        .env_remove("TDAUTH_BUDGET")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn data(rel: &str) -> String {
    data_dir().join(rel).to_string_lossy().into_owned()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn build(dir: &TempDir, input: &str, kind: &str, extra: &[&str]) -> (Output, PathBuf) {
    let out = dir.path().join("matrix.json");
    let mut args = vec!["build", input, "--kind", kind, "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    (tdauth(dir.path(), &args), out)
}

#[test]
fn verify_reports() {
    let dir = TempDir::new().unwrap();
    let o = tdauth(dir.path(), &["verify", &data("cdf/cdf-13-3-1.json"), "--kind", "cdf", "--out", "r.json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(read_json(&dir.path().join("r.json"))["report"]["valid"], true);

    let o = tdauth(dir.path(), &["verify", &data("design/fano.json"), "--kind", "design", "--t", "2", "--out", "f.json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(read_json(&dir.path().join("f.json"))["report"]["inferred_lambda"], 1);

    let o = tdauth(dir.path(), &["verify", &data("design/fano.json"), "--kind", "design", "--lambda", "2", "--out", "g.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(read_json(&dir.path().join("g.json"))["report"]["valid"], false);
}

#[test]
fn verify_writes_beside_input_by_default() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("fano.json");
    std::fs::copy(data_dir().join("design/fano.json"), &input).unwrap();
    let o = tdauth(dir.path(), &["verify", input.to_str().unwrap(), "--kind", "design"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(dir.path().join("fano.report.json").exists());
}

#[test]
fn malformed_inputs_exit_2() {
    let dir = TempDir::new().unwrap();
    let text = std::fs::read_to_string(data_dir().join("cdf/cdf-13-3-1.json")).unwrap();
    let truncated = dir.path().join("trunc.json");
    std::fs::write(&truncated, &text[..text.len() / 2]).unwrap();
    let o = tdauth(dir.path(), &["verify", truncated.to_str().unwrap(), "--kind", "cdf"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));

    let no_t = dir.path().join("no-t.json");
    std::fs::write(&no_t, r#"{"v": 7, "k": 3, "blocks": [[0,1,3],[1,2,4],[2,3,5],[3,4,6],[4,5,0],[5,6,1],[6,0,2]]}"#).unwrap();
    let o = tdauth(dir.path(), &["verify", no_t.to_str().unwrap(), "--kind", "design"]);
    assert_eq!(o.status.code(), Some(2));
    let (o, _) = build(&dir, no_t.to_str().unwrap(), "design", &[]);
    assert_eq!(o.status.code(), Some(2));
    let (o, _) = build(&dir, no_t.to_str().unwrap(), "design", &["--t", "2"]);
    assert_eq!(o.status.code(), Some(0));

    let bad_block = dir.path().join("bad.json");
    std::fs::write(&bad_block, r#"{"v": 7, "lambda": 1, "base_blocks": [[0, 1, 9]]}"#).unwrap();
    let o = tdauth(dir.path(), &["verify", bad_block.to_str().unwrap(), "--kind", "cdf"]);
    assert_eq!(o.status.code(), Some(2));

    let o = tdauth(dir.path(), &["verify", "does-not-exist.json", "--kind", "cdf"]);
    assert_eq!(o.status.code(), Some(2));
    let o = tdauth(dir.path(), &["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn build_cdf13_matches_table_and_library() {
    let dir = TempDir::new().unwrap();
    let input = data("cdf/cdf-13-3-1.json");
    let (o, out) = build(&dir, &input, "cdf", &["--table"]);
    assert_eq!(o.status.code(), Some(0));
    let file: MatrixFile = load_json(&out).unwrap();
    assert_eq!((file.v, file.k, file.b), (13, 3, 26));
    for (row, expected) in file.rows.iter().zip(CDF13_ROWS.iter()) {
        assert_eq!(row.as_slice(), expected.as_slice());
    }

    let cdf: CdfFile = load_json(Path::new(&input)).unwrap();
    let matrix = develop_matrix(&cdf.to_family().unwrap()).unwrap();
    let expected = MatrixFile::from_matrix(
        &matrix,
        Provenance {
            source: SourceKind::Cdf,
            input_digest: digest(&cdf),
        },
    );
    assert_eq!(
        digest(&file),
        digest(&expected)
    );
    let text = stdout(&o);
    assert!(text.contains("b = 26"), "{text}");
    assert!(text.contains("optimal"), "{text}");
}

#[test]
fn build_refuses_affine_plane_and_balances_complete_design() {
    let dir = TempDir::new().unwrap();
    let (o, out) = build(&dir, &data("design/ag-2-3.json"), "design", &[]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("v | b"));
    assert!(!out.exists());

    let (o, out) = build(&dir, &data("design/complete-5-3.json"), "design", &[]);
    assert_eq!(o.status.code(), Some(0));
    let file: MatrixFile = load_json(&out).unwrap();
    assert_eq!((file.b, file.k), (10, 3));
}

#[test]
fn attack_values_and_mutation() {
    let dir = TempDir::new().unwrap();
    let (_, out) = build(&dir, &data("cdf/cdf-13-3-1.json"), "cdf", &[]);
    let m = out.to_str().unwrap();
    let o = tdauth(dir.path(), &["attack", m, "--orders", "0..1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("i = 0: value 3/13 bound 3/13 tight"), "{text}");
    assert!(text.contains("i = 1: value 1/6 bound 1/6 tight"), "{text}");
    assert!(text.contains("security order 1"), "{text}");

    let o = tdauth(dir.path(), &["attack", m, "--orders", "1", "--model", "oracle-online"]);
    assert!(stdout(&o).contains("value 11/26"), "{}", stdout(&o));

    let o = tdauth(dir.path(), &["attack", m, "--orders", "0,1", "--out", "a.json"]);
    assert_eq!(o.status.code(), Some(0));
    let report = read_json(&dir.path().join("a.json"));
    assert_eq!(report["results"]["model"], "classic");
    assert_eq!(report["results"]["orders"][1]["value"]["den"], "6");

    let mut file: MatrixFile = load_json(&out).unwrap();
    file.rows[0] = vec![0, 1, 2];
    let mutated = dir.path().join("mutated.json");
    std::fs::write(&mutated, serde_json::to_string(&file).unwrap()).unwrap();
    let o = tdauth(dir.path(), &["attack", mutated.to_str().unwrap(), "--orders", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("not tight"), "{}", stdout(&o));
}

#[test]
fn budget_errors_exit_3() {
    let dir = TempDir::new().unwrap();
    let (_, out) = build(&dir, &data("cdf/cdf-13-3-1.json"), "cdf", &[]);
    let m = out.to_str().unwrap();
    let o = tdauth(dir.path(), &["--budget", "10", "attack", m, "--orders", "2", "--model", "oracle-offline"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));

    let o = Command::new(env!("CARGO_BIN_EXE_tdauth"))
        .args(["attack", m, "--orders", "1"])
        .env("TDAUTH_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn params_arithmetic() {
    let dir = TempDir::new().unwrap();
    let o = tdauth(dir.path(), &["params", "--t", "2", "--v", "9", "--k", "3", "--lambda", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("b = 12"), "{text}");
    assert!(text.contains("v | b: false"), "{text}");

    let o = tdauth(dir.path(), &["--format", "json", "params", "--t", "6", "--v", "19", "--k", "7", "--lambda", "4"]);
    let json: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json["b"], "15504");
    assert_eq!(json["b_opt"]["num"], "3876");
    assert_eq!(json["class"], "near-optimal");

    let o = tdauth(dir.path(), &["params", "--t", "2", "--v", "8", "--k", "3", "--lambda", "1"]);
    assert_eq!(o.status.code(), Some(1));

    let o = tdauth(dir.path(), &["params", "--teirlinck", "--t", "2", "--v", "7778"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("78394399776"), "{}", stdout(&o));
}

#[test]
fn catalog_commands() {
    let dir = TempDir::new().unwrap();
    let o = tdauth(dir.path(), &["catalog", "list"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().count() >= 8);

    let o = tdauth(dir.path(), &["catalog", "show", "design-6-19-7-4"]);
    assert!(stdout(&o).contains("b_opt: 3876"), "{}", stdout(&o));

    let o = tdauth(dir.path(), &["catalog", "export", "fano-cdf"]);
    assert_eq!(o.status.code(), Some(0));
    let exported = read_json(&dir.path().join("fano-cdf.json"));
    assert_eq!(exported, read_json(&data_dir().join("cdf/fano.json")));

    let o = tdauth(dir.path(), &["catalog", "show", "no-such-entry"]);
    assert_eq!(o.status.code(), Some(1));
    let o = tdauth(dir.path(), &["catalog", "export", "design-6-19-7-4"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn apa_commands() {
    let dir = TempDir::new().unwrap();
    let o = tdauth(dir.path(), &["apa", "van-rees", "--out", "vr.json"]);
    assert_eq!(o.status.code(), Some(0));
    let o = tdauth(dir.path(), &["apa", "verify", "vr.json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(read_json(&dir.path().join("vr.json")), read_json(&data_dir().join("apa/van-rees.json")));

    let mut vr = read_json(&dir.path().join("vr.json"));
    vr["rows"][0][0] = Value::from(vr["rows"][0][1].as_u64().unwrap());
    std::fs::write(dir.path().join("bad.json"), vr.to_string()).unwrap();
    let o = tdauth(dir.path(), &["apa", "verify", "bad.json"]);
    assert_eq!(o.status.code(), Some(1));
}

/// Building and attacking each buildable catalog entry reproduces the
/// security order it claims.
#[test]
fn catalog_round_trip() {
    let dir = TempDir::new().unwrap();
    let mut checked = 0;
    for entry in catalog().iter().filter(|e| e.buildable()) {
        let Some(claimed) = entry.claimed_order else { continue };
        let Some(params) = &entry.params else { continue };
        let b: u64 = params.block_count().try_into().unwrap();
        if b > 2000 {
            continue;
        }
        let exported = dir.path().join(format!("{}.json", entry.name));
        let o = tdauth(dir.path(), &["catalog", "export", &entry.name, "--out", exported.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", entry.name);
        let kind = entry.kind.as_str();
        let t = params.t().to_string();
        let (o, out) = build(&dir, exported.to_str().unwrap(), kind, &["--t", &t]);
        assert_eq!(o.status.code(), Some(0), "{}: {}", entry.name, String::from_utf8_lossy(&o.stderr));
        let orders = format!("0..{}", params.t().min(params.k() - 1));
        let o = tdauth(dir.path(), &["--format", "json", "attack", out.to_str().unwrap(), "--orders", &orders]);
        assert_eq!(o.status.code(), Some(0), "{}: {}", entry.name, String::from_utf8_lossy(&o.stderr));
        let report: Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(report["results"]["security_order"], u64::from(claimed), "{}", entry.name);
        checked += 1;
    }
    assert!(checked >= 8, "{checked}");
}
