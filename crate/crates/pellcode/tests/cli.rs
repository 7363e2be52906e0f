use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn pellcode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pellcode")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn block_encode_exm2_matches_golden() {
    let o = pellcode(&["block", "encode", "--mode", "pell", "--text", "MATH IS SWEET:)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(o.stdout, fs::read(golden("exm2.pellk")).unwrap());
}

#[test]
fn block_encode_exm1_matches_golden() {
    let o = pellcode(&["block", "encode", "--mode", "gpell", "--p", "1", "--text", "HAPPY BIRTHDAY TO YOU:)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(o.stdout, fs::read(golden("exm1.pellk")).unwrap());
}

#[test]
fn block_decode_golden() {
    let path = golden("exm2.pellk");
    let o = pellcode(&["block", "decode", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "MATH0IS0SWEET:)0\n");
    let o = pellcode(&["block", "decode", "--render-spaces", path.to_str().unwrap()]);
    assert_eq!(stdout(&o), "MATH IS SWEET:)\n");
    let o = pellcode(&["block", "decode", "--render-spaces", golden("exm1.pellk").to_str().unwrap()]);
    assert_eq!(stdout(&o), "HAPPY BIRTHDAY TO YOU:)\n");
}

#[test]
fn block_decode_accepts_crlf_and_rejects_damage() {
    let dir = tempfile::tempdir().unwrap();
    let text = fs::read_to_string(golden("exm2.pellk")).unwrap();
    let crlf = dir.path().join("crlf.pellk");
    fs::write(&crlf, text.replace('\n', "\r\n")).unwrap();
    let o = pellcode(&["block", "decode", crlf.to_str().unwrap()]);
    assert_eq!(stdout(&o), "MATH0IS0SWEET:)0\n");

    let damaged = dir.path().join("damaged.pellk");
    fs::write(&damaged, text.replace("-52 12 11 3", "-48 12 11 3")).unwrap();
    let o = pellcode(&["block", "decode", damaged.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("block 3"));

    let short = dir.path().join("short.pellk");
    fs::write(&short, text.replace("52 26 2 4\n", "")).unwrap();
    assert_eq!(pellcode(&["block", "decode", short.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn block_encode_rejects_bad_text() {
    let o = pellcode(&["block", "encode", "--mode", "pell", "--text", "HELLO, WORLD"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("','"));
}

#[test]
fn encode_decode_golden() {
    let o = pellcode(&["encode", "--p", "1", "--n", "3", "--matrix", "18,1;4,22"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(o.stdout, fs::read(golden("exm2_b1.pelle")).unwrap());
    let o = pellcode(&["decode", golden("exm2_b1.pelle").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "18 1\n4 22\n");
}

#[test]
fn encode_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let msg = dir.path().join("m.txt");
    fs::write(&msg, "3 1 4\n1 5 9\n2 6 5").unwrap();
    let out = dir.path().join("m.pelle");
    let o =
        pellcode(&["encode", "--p", "2", "--n", "5", "--input", msg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let o = pellcode(&["decode", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "3 1 4\n1 5 9\n2 6 5\n");
}

#[test]
fn decode_detects_damage() {
    let o = pellcode(&["decode", golden("single_error.pelle").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(o.stdout.is_empty());
}

#[test]
fn correct_single_error() {
    let o = pellcode(&["correct", golden("single_error.pelle").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("status: Corrected\nfault: {1}\nmessage:\n18 1\n4 22\n"), "{text}");
}

#[test]
fn correct_clean_package() {
    let o = pellcode(&["correct", golden("exm2_b1.pelle").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("status: Clean\n"));
}

#[test]
fn correct_four_errors_is_uncorrectable() {
    let o = pellcode(&["correct", golden("four_errors.pelle").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("status: Uncorrectable"));
    assert!(stderr(&o).contains("Uncorrectable"));
}

#[test]
fn malformed_and_missing_files() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.pelle");
    fs::write(&bad, "PELLE 1\np=1 n=3 det=x\n1 2\n3 4\n").unwrap();
    let o = pellcode(&["correct", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"));
    let missing = dir.path().join("nope.pelle");
    assert_eq!(pellcode(&["decode", missing.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn usage_errors() {
    assert_eq!(pellcode(&["encode", "--p", "1", "--n", "0", "--matrix", "1,2;3,4"]).status.code(), Some(1));
    assert_eq!(pellcode(&["encode", "--p", "1", "--n", "3", "--matrix", "1,0;3,4"]).status.code(), Some(1));
    assert_eq!(pellcode(&["seq", "--bogus"]).status.code(), Some(1));
    assert_eq!(pellcode(&[]).status.code(), Some(1));
    assert_eq!(pellcode(&["simulate", "--errors", "5"]).status.code(), Some(1));
    assert_eq!(pellcode(&["simulate", "--n-min", "6", "--n-max", "4"]).status.code(), Some(1));
    assert_eq!(pellcode(&["seq", "--p", "1", "--i", "2", "--to", "3"]).status.code(), Some(1));
    let help = pellcode(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(stdout(&help).contains("simulate"));
}

#[test]
fn seq_and_matrix() {
    let o = pellcode(&["seq", "--p", "1", "--i", "1", "--from", "1", "--to", "5"]);
    assert_eq!(stdout(&o), "1 0\n2 1\n3 2\n4 5\n5 12\n");
    let o = pellcode(&["seq", "--classic", "--from", "0", "--to", "4"]);
    assert_eq!(stdout(&o), "0 0\n1 1\n2 2\n3 5\n4 12\n");
    let o = pellcode(&["matrix", "--kind", "g", "--p", "1", "--n", "3"]);
    assert_eq!(stdout(&o), "12 5\n5 2\n");
    let o = pellcode(&["matrix", "--kind", "pn", "--n", "3"]);
    assert_eq!(stdout(&o), "12 5\n5 2\n");
    let o = pellcode(&["matrix", "--kind", "a", "--p", "2"]);
    assert_eq!(stdout(&o), "2 0 1\n1 0 0\n0 1 0\n");
}

#[test]
fn simulate_is_deterministic() {
    let args = ["simulate", "--trials", "80", "--seed", "11", "--kv"];
    let a = pellcode(&args);
    let b = pellcode(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("total.trials=80\n"));
    assert!(stderr(&a).starts_with("elapsed: "));
    let c = pellcode(&["simulate", "--trials", "80", "--seed", "12", "--kv"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn emitted_files_parse_back() {
    let dir = tempfile::tempdir().unwrap();
    let k = dir.path().join("k.pellk");
    let o = pellcode(&["block", "encode", "--mode", "pell", "--text", "pell numbers", "--out", k.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = pellcode(&["block", "decode", "--render-spaces", k.to_str().unwrap()]);
    assert_eq!(stdout(&o), "PELL NUMBERS\n");
}
