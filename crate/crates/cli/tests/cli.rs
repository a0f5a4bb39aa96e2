use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use mlst::codec::{decode_tokens, Token, HEADER_LEN};
use tempfile::TempDir;

fn mlst(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mlst"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_string_lossy().into_owned()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn round_trip(dir: &TempDir, data: &[u8], extra: &[&str]) -> Vec<u8> {
    let raw = path(dir, "in.bin");
    let packed = path(dir, "in.mlst");
    let back = path(dir, "out.bin");
    fs::write(&raw, data).unwrap();
    let mut args = vec!["compress", raw.as_str(), packed.as_str()];
    args.extend_from_slice(extra);
    assert!(mlst(&args).status.success());
    assert!(mlst(&["decompress", &packed, &back]).status.success());
    assert_eq!(fs::read(&back).unwrap(), data);
    fs::read(&packed).unwrap()
}

#[test]
fn empty_file_compresses_to_bare_header() {
    let dir = TempDir::new().unwrap();
    let packed = round_trip(&dir, b"", &[]);
    assert_eq!(packed.len(), HEADER_LEN);
}

#[test]
fn run_parses_to_literal_then_overlapping_match() {
    let dir = TempDir::new().unwrap();
    let packed = round_trip(&dir, b"aaaa", &[]);
    let (_, tokens) = decode_tokens(&packed).unwrap();
    assert_eq!(
        tokens,
        vec![
            Token::Literal(b'a'),
            Token::Match {
                length: 3,
                offset: 1
            }
        ]
    );
}

#[test]
fn round_trips_with_both_models_and_small_windows() {
    let dir = TempDir::new().unwrap();
    let text: Vec<u8> = b"the cat sat on the mat; the cat sat on the hat. "
        .iter()
        .cycle()
        .take(5000)
        .copied()
        .collect();
    for extra in [
        &["--model", "binary"][..],
        &["--window-log", "4"],
        &["--window-log", "0"],
    ] {
        round_trip(&dir, &text, extra);
    }
}

#[test]
fn rejects_oversized_window_log() {
    let dir = TempDir::new().unwrap();
    let raw = path(&dir, "in.bin");
    fs::write(&raw, b"abc").unwrap();
    let out = mlst(&["compress", &raw, &path(&dir, "x"), "--window-log", "31"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("window-log"));
}

#[test]
fn corrupt_magic_fails_with_diagnostic() {
    let dir = TempDir::new().unwrap();
    let mut packed = round_trip(&dir, b"ababaa", &[]);
    packed[0] ^= 0xff;
    let bad = path(&dir, "bad.mlst");
    fs::write(&bad, &packed).unwrap();
    let out = mlst(&["decompress", &bad, &path(&dir, "never")]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(
        err.contains("corrupt stream") && err.contains("at byte 0"),
        "{err}"
    );
    assert!(!Path::new(&path(&dir, "never")).exists());
}

#[test]
fn truncated_stream_reports_byte_offset() {
    let dir = TempDir::new().unwrap();
    let packed = round_trip(&dir, b"abcdefgh", &[]);
    let bad = path(&dir, "short.mlst");
    fs::write(&bad, &packed[..HEADER_LEN + 2]).unwrap();
    let out = mlst(&["decompress", &bad, &path(&dir, "never")]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("at byte 17"));
}

fn bills(dir: &TempDir, data: &[u8]) -> (u64, u64, u64) {
    let raw = path(dir, "stats.bin");
    fs::write(&raw, data).unwrap();
    let out = mlst(&["stats", &raw]);
    assert!(out.status.success());
    let text = stdout(&out);
    let get = |key: &str| -> u64 {
        text.lines()
            .find_map(|l| l.strip_prefix(key))
            .and_then(|v| v.strip_prefix('='))
            .unwrap()
            .parse()
            .unwrap()
    };
    (
        get("offset_bits.rep"),
        get("offset_bits.rightmost"),
        get("offset_bits.leftmost"),
    )
}

#[test]
fn stats_bills() {
    let dir = TempDir::new().unwrap();
    assert_eq!(bills(&dir, b"abc"), (0, 0, 0));

    let text = b"abcXabcYYabcZZZZabcWWWWWWWWabc";
    let (rep, right, left) = bills(&dir, text);
    assert_eq!(rep, right);
    assert!(left > rep);

    let (rep, right, left) = bills(&dir, &[b'a'; 1000]);
    assert_eq!(rep, right);
    assert!(left >= rep);
}

#[test]
fn bench_reports_one_row_per_input_in_order() {
    let dir = TempDir::new().unwrap();
    let a = path(&dir, "a.bin");
    let b = path(&dir, "b.bin");
    fs::write(&a, vec![b'a'; 1024]).unwrap();
    fs::write(
        &b,
        (0..1024u32)
            .map(|i| (i * 7 % 251) as u8)
            .collect::<Vec<_>>(),
    )
    .unwrap();
    let out = mlst(&["bench", &a, &b, "--window-log", "12"]);
    assert!(out.status.success());
    let lines: Vec<String> = stdout(&out)
        .lines()
        .filter(|l| l.starts_with("bench "))
        .map(String::from)
        .collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].contains(&format!("input={a} ")));
    assert!(lines[1].contains(&format!("input={b} ")));
    for line in &lines {
        let delta: f64 = line
            .split_whitespace()
            .find_map(|kv| kv.strip_prefix("delta="))
            .unwrap()
            .parse()
            .unwrap();
        assert!(delta > 0.0);
        assert!(line.contains("bytes=1024"));
    }
}

#[test]
fn missing_input_is_an_error() {
    let dir = TempDir::new().unwrap();
    let out = mlst(&["compress", &path(&dir, "nope"), &path(&dir, "out")]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("cannot read"));
}
