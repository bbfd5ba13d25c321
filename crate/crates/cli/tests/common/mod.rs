//! Golden corpus runner shared by the golden and acceptance targets.
//!
//! `MVCURL_BLESS=1` rewrites the expected files instead of comparing.

#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};

use mvcurl_cli::{json, printer, Document};

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn blessing() -> bool {
    std::env::var_os("MVCURL_BLESS").is_some_and(|v| v == "1")
}

#[derive(Debug, Clone)]
pub struct Case {
    pub name: String,
    pub doc: String,
    pub args: Vec<String>,
    pub exit: i32,
}

pub fn cases() -> Vec<Case> {
    let text = fs::read_to_string(golden_dir().join("commands.txt")).expect("manifest");
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let f: Vec<&str> = l.split('|').map(str::trim).collect();
            assert_eq!(f.len(), 4, "bad manifest line `{l}`");
            Case {
                name: f[0].into(),
                doc: f[1].into(),
                args: f[2].split_whitespace().map(String::from).collect(),
                exit: f[3].parse().expect("exit code"),
            }
        })
        .collect()
}

pub fn documents() -> Vec<PathBuf> {
    let mut out: Vec<_> = fs::read_dir(golden_dir().join("docs"))
        .expect("docs")
        .map(|e| e.expect("entry").path())
        .filter(|p| p.extension().is_some_and(|e| e == "mv"))
        .collect();
    out.sort();
    out
}

pub fn is_error_doc(p: &Path) -> bool {
    p.file_name().and_then(|s| s.to_str()).is_some_and(|s| s.starts_with("err_"))
}

/// Runs the CLI in-process; returns the exit code and stdout, plus stderr
/// after a separator when non-empty.
pub fn invoke(args: &[String]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("mvcurl".to_string()).chain(args.iter().cloned());
    let code = mvcurl_cli::run(argv, &mut out, &mut err);
    let mut text = String::from_utf8(out).expect("utf-8 output");
    if !err.is_empty() {
        text.push_str("--- stderr\n");
        text.push_str(&String::from_utf8(err).expect("utf-8 errors"));
    }
    (code, text)
}

fn compare(path: &Path, actual: &str, failures: &mut Vec<String>) {
    if blessing() {
        fs::write(path, actual).expect("write expected file");
        return;
    }
    match fs::read_to_string(path) {
        Ok(expected) if expected == actual => {}
        Ok(expected) => {
            failures.push(format!("{}: output differs\n--- expected\n{expected}--- actual\n{actual}", path.display()))
        }
        Err(_) => failures.push(format!("{}: missing expected file", path.display())),
    }
}

/// Every manifest command: exit code plus byte-exact output.
pub fn check_commands() -> Vec<String> {
    let dir = golden_dir();
    let mut failures = Vec::new();
    for c in cases() {
        let mut args = vec!["--input".to_string(), dir.join("docs").join(&c.doc).display().to_string()];
        args.extend(c.args.iter().cloned());
        let (code, text) = invoke(&args);
        let text = text.replace(&dir.display().to_string(), "<golden>");
        if code != c.exit {
            failures.push(format!("{}: exit {code}, expected {}\n{text}", c.name, c.exit));
        }
        compare(&dir.join("expected").join(format!("{}.out", c.name)), &text, &mut failures);
    }
    failures
}

/// Valid documents: canonical print is byte-exact, a fixed point, and
/// re-parses to an equal document, also through JSON.
pub fn check_round_trips() -> Vec<String> {
    let dir = golden_dir();
    let mut failures = Vec::new();
    for path in documents().into_iter().filter(|p| !is_error_doc(p)) {
        let name = path.file_stem().and_then(|s| s.to_str()).expect("file name").to_string();
        let src = fs::read_to_string(&path).expect("document");
        let doc = match Document::parse(&src) {
            Ok(d) => d,
            Err(e) => {
                failures.push(format!("{name}: {e}"));
                continue;
            }
        };
        let printed = printer::document(&doc);
        compare(&dir.join("expected").join(format!("{name}.print")), &printed, &mut failures);
        match Document::parse(&printed) {
            Ok(again) if again == doc && printer::document(&again) == printed => {}
            Ok(_) => failures.push(format!("{name}: printing is not a fixed point")),
            Err(e) => failures.push(format!("{name}: canonical form does not parse: {e}")),
        }
        match json::from_str(&json::to_string(&doc)) {
            Ok(back) if back == doc => {}
            Ok(_) => failures.push(format!("{name}: JSON round trip changed the document")),
            Err(e) => failures.push(format!("{name}: JSON does not re-ingest: {e}")),
        }
    }
    failures
}

/// Invalid documents are rejected with the contracted exit code.
pub fn check_error_documents() -> Vec<String> {
    let mut failures = Vec::new();
    for path in documents().into_iter().filter(|p| is_error_doc(p)) {
        let src = fs::read_to_string(&path).expect("document");
        let expected = if path.ends_with("err_zero_denominator.mv") { 3 } else { 2 };
        match Document::parse(&src) {
            Ok(_) => failures.push(format!("{}: accepted", path.display())),
            Err(e) if e.exit_code() != expected => {
                failures.push(format!("{}: exit {} for `{e}`, expected {expected}", path.display(), e.exit_code()))
            }
            Err(_) => {}
        }
    }
    failures
}
