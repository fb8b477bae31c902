use std::fs;
use std::path::Path;
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

use trispine::cli::{run, EXIT_CAP, EXIT_INPUT, EXIT_OK, EXIT_VERIFY};

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn trispine(args: &[&str]) -> Output {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("trispine").chain(args.iter().copied()), &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn build_into(dir: &TempDir, name: &str, args: &[&str]) -> std::path::PathBuf {
    let file = dir.path().join(name);
    let mut full = vec!["build"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", path_str(&file)]);
    let o = trispine(&full);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    file
}

#[test]
fn dist_prints_distance_and_path() {
    let o = trispine(&["dist", "0/1", "7/2"]);
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(o.stdout.lines().next(), Some("3 : 0/1 1/0 3/1 7/2"));

    let o = trispine(&["dist", "0/1", "0/1"]);
    assert_eq!(o.stdout.lines().next(), Some("0"));
    assert!(o.stdout.contains("exactness certified"));

    let o = trispine(&["dist", "0/1", "5/4", "--even", "--cap", "64"]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.starts_with("5 : 0/1 "), "{}", o.stdout);
    assert!(o.stdout.lines().next().unwrap().ends_with(" 5/4"));
    assert!(o.stdout.contains("iteration_index 5"));

    let o = trispine(&["dist", "0/1", "7/2", "--even"]);
    assert!(o.stdout.starts_with("3 : "));
    assert!(o.stdout.contains("iteration_index 5"));
}

#[test]
fn dist_accepts_negative_slopes() {
    let o = trispine(&["dist", "-3/1", "7/2"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert!(o.stdout.starts_with("3 : -3/1 "));
}

#[test]
fn dist_input_errors_exit_one() {
    for bad in [["0/1", "7/0"], ["0/1", "x"], ["0/0", "1/1"], ["1", "2/3"]] {
        let o = trispine(&["dist", bad[0], bad[1]]);
        assert_eq!(o.code, EXIT_INPUT, "{bad:?}");
        assert!(!o.stderr.is_empty());
    }
    assert_eq!(trispine(&["dist", "0/1", "1/3", "--even"]).code, EXIT_INPUT);
    assert_eq!(trispine(&["dist", "0/1", "1/2", "--cap", "0"]).code, EXIT_INPUT);
    assert_eq!(trispine(&["frobnicate"]).code, EXIT_INPUT);
}

#[test]
fn dist_cap_exhaustion_exits_three_with_a_bound() {
    let o = trispine(&["dist", "0/1", "19/18", "--even", "--cap", "4"]);
    assert_eq!(o.code, EXIT_CAP);
    assert!(o.stdout.starts_with("19 : 0/1 1/0 2/1"), "{}", o.stdout);
    assert!(o.stderr.contains("upper bound 19"));
}

#[test]
fn help_exits_zero() {
    let o = trispine(&["--help"]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.contains("lens-bounds"));
}

#[test]
fn lens_bounds_json() {
    let o = trispine(&["lens-bounds", "7", "2"]);
    assert_eq!(o.code, EXIT_OK);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["p"], 7);
    assert_eq!(v["q"], 2);
    assert_eq!(v["reps"].as_array().unwrap().len(), 4);
    assert_eq!(v["twisted"]["n"], 2);
    assert_eq!(v["untwisted"]["n"], 2);
    assert_eq!(v["untwisted"]["path"][2], "4/1");
    assert!(v["untwisted"]["exactness"].is_string());

    let o = trispine(&["lens-bounds", "5", "1"]);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["twisted"]["n"], 1);
    assert_eq!(v["twisted"]["exactness"], "certified");

    assert_eq!(trispine(&["lens-bounds", "4", "2"]).code, EXIT_INPUT);
    assert_eq!(trispine(&["lens-bounds", "1", "0"]).code, EXIT_INPUT);
}

#[test]
fn build_reports_genus_and_normal_form() {
    let dir = TempDir::new().unwrap();
    for (p, q, mode, genus, form) in [
        ("7", "2", "any", 4, "#2 S2x~S2"),
        ("7", "2", "even", 4, "#2 S2xS2"),
        ("3", "1", "any", 2, "#1 S2x~S2"),
        ("4", "1", "any", 2, "#1 S2xS2"),
    ] {
        let file = dir.path().join("d.json");
        let o = trispine(&["build", p, q, "--mode", mode, "--out", path_str(&file)]);
        assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
        assert_eq!(o.stdout, format!("genus {genus}\n{form}\n"));
        let v: Value = serde_json::from_str(&fs::read_to_string(&file).unwrap()).unwrap();
        assert_eq!(v["stats"]["total_genus"], genus);
        assert_eq!(v["classification"]["normal_form"], form);
    }
}

#[test]
fn build_without_out_writes_json_to_stdout() {
    let o = trispine(&["build", "5", "2"]);
    assert_eq!(o.code, EXIT_OK);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["num_copies"], 4);
    assert!(o.stderr.starts_with("genus 4"));
}

#[test]
fn build_from_path_file() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("path.json");
    fs::write(
        &file,
        r#"{"mode": "B", "systems": [
            [{"p": 0, "q": 1}, {"p": 0, "q": 1}],
            [{"p": 1, "q": 0}, {"p": 1, "q": 0}],
            [{"p": 2, "q": 1}, {"p": 2, "q": 1}],
            [{"p": 2, "q": 1}, {"p": 3, "q": 2}]
        ]}"#,
    )
    .unwrap();
    let out = dir.path().join("d.json");
    let o = trispine(&["build", "--path-file", path_str(&file), "--out", path_str(&out)]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert_eq!(o.stdout, "genus 8\n#3 S2xS2\n");
    assert_eq!(trispine(&["verify", "--in", path_str(&out)]).code, EXIT_OK);

    // a built document is itself a valid path file
    let again = dir.path().join("again.json");
    let o = trispine(&["build", "--path-file", path_str(&out), "--out", path_str(&again)]);
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(fs::read(&out).unwrap(), fs::read(&again).unwrap());
}

#[test]
fn build_rejects_invalid_path_file_listing_violations() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("bad.json");
    fs::write(
        &file,
        r#"{"mode": "A", "systems": [[{"p": 0, "q": 1}], [{"p": 1, "q": 0}], [{"p": 3, "q": 1}], [{"p": 5, "q": 1}]]}"#,
    )
    .unwrap();
    let o = trispine(&["build", "--path-file", path_str(&file)]);
    assert_eq!(o.code, EXIT_INPUT);
    assert!(o.stderr.contains("step 3, coordinate 0: 3/1 -> 5/1 is not dual"), "{}", o.stderr);
}

#[test]
fn table_csv() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("t.csv");
    let o = trispine(&["table", "--pmax", "5", "--out", path_str(&file)]);
    assert_eq!(o.code, EXIT_OK);
    let text = fs::read_to_string(&file).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("p,q,twisted_n,untwisted_n,twisted_path,untwisted_path,exact"));
    let rows: Vec<Vec<String>> = csv::Reader::from_reader(text.as_bytes())
        .records()
        .map(|r| r.unwrap().iter().map(str::to_string).collect())
        .collect();
    let keys: Vec<(&str, &str)> = rows.iter().map(|r| (r[0].as_str(), r[1].as_str())).collect();
    assert_eq!(keys, [("2", "1"), ("3", "1"), ("4", "1"), ("5", "1"), ("5", "2")]);
    let five_one = &rows[3];
    assert_eq!(five_one[2], "1");
    for r in &rows {
        let p: usize = r[0].parse().unwrap();
        let untwisted: usize = r[3].parse().unwrap();
        assert!(untwisted < p);
    }

    let o = trispine(&["table", "--pmax", "2"]);
    assert_eq!(o.stdout.lines().count(), 2);
    assert_eq!(trispine(&["table", "--pmax", "1"]).code, EXIT_INPUT);
}

#[test]
fn table_is_deterministic() {
    assert_eq!(trispine(&["table", "--pmax", "20"]).stdout, trispine(&["table", "--pmax", "20"]).stdout);
}

#[test]
fn render_is_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let doc = build_into(&dir, "d.json", &["7", "2"]);
    let (a, b) = (dir.path().join("a.svg"), dir.path().join("b.svg"));
    assert_eq!(trispine(&["render", "--in", path_str(&doc), "--out", path_str(&a)]).code, EXIT_OK);
    assert_eq!(trispine(&["render", "--in", path_str(&doc), "--out", path_str(&b)]).code, EXIT_OK);
    let svg = fs::read_to_string(&a).unwrap();
    assert_eq!(svg, fs::read_to_string(&b).unwrap());
    assert!(svg.contains(r#"version="1.1""#));
    for colour in ["#CC0000", "#008800", "#0000CC"] {
        assert!(svg.contains(colour));
    }
    assert!(svg.contains(">D2: -3/1<") && svg.contains(">D3: 7/2<") && svg.contains(">D1: 1/0<"));
}

#[test]
fn render_rejects_higher_genus_and_bad_json() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("path.json");
    fs::write(
        &file,
        r#"{"mode": "A", "systems": [[{"p": 0, "q": 1}, {"p": 0, "q": 1}], [{"p": 1, "q": 0}, {"p": 1, "q": 0}], [{"p": 2, "q": 1}, {"p": 3, "q": 1}]]}"#,
    )
    .unwrap();
    let doc = build_into(&dir, "g2.json", &["--path-file", path_str(&file)]);
    let svg = dir.path().join("g2.svg");
    let o = trispine(&["render", "--in", path_str(&doc), "--out", path_str(&svg)]);
    assert_eq!(o.code, EXIT_VERIFY);
    assert!(o.stderr.contains("render unsupported, JSON only"));
    assert!(!svg.exists());

    let junk = dir.path().join("junk.json");
    fs::write(&junk, "{ not json").unwrap();
    assert_eq!(trispine(&["render", "--in", path_str(&junk), "--out", path_str(&svg)]).code, EXIT_INPUT);
    assert_eq!(trispine(&["verify", "--in", path_str(&junk)]).code, EXIT_INPUT);
}

#[test]
fn verify_round_trip_and_faults() {
    let dir = TempDir::new().unwrap();
    let doc = build_into(&dir, "d.json", &["7", "2"]);
    let o = trispine(&["verify", "--in", path_str(&doc)]);
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(o.stdout, "ok: #2 S2x~S2\n");

    let mut v: Value = serde_json::from_str(&fs::read_to_string(&doc).unwrap()).unwrap();
    v["kirby"]["curves"][2]["framing"] = 15.into();
    let tampered = dir.path().join("tampered.json");
    fs::write(&tampered, v.to_string()).unwrap();
    let o = trispine(&["verify", "--in", path_str(&tampered)]);
    assert_eq!(o.code, EXIT_VERIFY);
    assert!(o.stdout.contains("Kirby curve 2 (D_3, coordinate 0, slope 7/2): framing 15, expected 14"), "{}", o.stdout);

    let mut v: Value = serde_json::from_str(&fs::read_to_string(&doc).unwrap()).unwrap();
    v["path"]["systems"][3][0] = serde_json::json!({"p": 5, "q": 1});
    let nondual = dir.path().join("nondual.json");
    fs::write(&nondual, v.to_string()).unwrap();
    let o = trispine(&["verify", "--in", path_str(&nondual)]);
    assert_eq!(o.code, EXIT_VERIFY);
    assert!(o.stdout.contains("step 3"), "{}", o.stdout);

    let mut v: Value = serde_json::from_str(&fs::read_to_string(&doc).unwrap()).unwrap();
    v["green"].as_array_mut().unwrap().pop();
    let short = dir.path().join("short.json");
    fs::write(&short, v.to_string()).unwrap();
    let o = trispine(&["verify", "--in", path_str(&short)]);
    assert_eq!(o.code, EXIT_VERIFY);
    assert!(o.stdout.contains("3 green curves, expected total genus 4"));
}

#[test]
fn build_verify_round_trip_over_lens_spaces() {
    let dir = TempDir::new().unwrap();
    for p in 2..=25 {
        for q in 1..p {
            if num_integer::gcd(p, q) != 1 {
                continue;
            }
            for mode in ["any", "even"] {
                let doc = build_into(&dir, "d.json", &[&p.to_string(), &q.to_string(), "--mode", mode]);
                let o = trispine(&["verify", "--in", path_str(&doc)]);
                assert_eq!(o.code, EXIT_OK, "L({p},{q}) {mode}: {}", o.stdout);
            }
        }
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_trispine");
    let ok = Command::new(bin).args(["dist", "0/1", "7/2"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&ok.stdout).starts_with("3 : 0/1 1/0 3/1 7/2"));
    let bad = Command::new(bin).args(["lens-bounds", "4", "2"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_INPUT));
}
