//! Golden-file runner for the command-line tool.
//!
//! `fixtures/cli/cases.txt` lists one case per line: name, expected exit
//! code, then the arguments. Stdout must equal `expected/<name>.json` byte
//! for byte; when `expected/<name>.err` exists, stderr must match it too.

use std::path::{Path, PathBuf};
use std::process::Command;

pub struct Case {
    pub name: String,
    pub exit_code: i32,
    pub args: Vec<String>,
}

pub fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/cli")
}

pub fn cases() -> Vec<Case> {
    let text = std::fs::read_to_string(fixture_dir().join("cases.txt")).expect("cases.txt");
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|line| {
            let mut words = line.split_whitespace().map(str::to_string);
            let name = words.next().expect("case name");
            let exit_code = words
                .next()
                .and_then(|c| c.parse().ok())
                .expect("exit code");
            Case {
                name,
                exit_code,
                args: words.collect(),
            }
        })
        .collect()
}

/// Runs one case; `Err` carries a description of every mismatch.
pub fn check(case: &Case) -> Result<(), String> {
    let dir = fixture_dir();
    let out = Command::new(env!("CARGO_BIN_EXE_qi-reorder"))
        .args(&case.args)
        .current_dir(&dir)
        .output()
        .map_err(|e| format!("{}: cannot spawn: {e}", case.name))?;
    let mut problems = Vec::new();
    let code = out.status.code().unwrap_or(-1);
    if code != case.exit_code {
        problems.push(format!("exit code {code}, expected {}", case.exit_code));
    }
    let expected = std::fs::read(dir.join("expected").join(format!("{}.json", case.name)))
        .map_err(|e| format!("{}: missing expected output: {e}", case.name))?;
    if out.stdout != expected {
        problems.push("stdout differs from the golden file".to_string());
    }
    let err_path = dir.join("expected").join(format!("{}.err", case.name));
    if let Ok(expected_err) = std::fs::read(err_path) {
        if out.stderr != expected_err {
            problems.push(format!(
                "stderr differs: {}",
                String::from_utf8_lossy(&out.stderr).trim()
            ));
        }
    }
    if problems.is_empty() {
        Ok(())
    } else {
        Err(format!("{}: {}", case.name, problems.join("; ")))
    }
}
