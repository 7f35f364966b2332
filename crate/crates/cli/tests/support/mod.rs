//! Golden-file runner shared by the golden and acceptance targets.
//!
//! Every `tests/golden/*.case` is run through the binary; exit code and
//! stdout must match the sibling `.stdout` file byte for byte.
//! Set `BLESS=1` to rewrite the `.stdout` files.

use std::path::{Path, PathBuf};
use std::process::Command;

use loewner_cli::json;
use serde::Deserialize;

#[derive(Deserialize)]
struct Case {
    args: Vec<String>,
    exit: i32,
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn run_case(path: &Path, bless: bool) -> Result<(), String> {
    let case: Case = serde_json::from_str(&std::fs::read_to_string(path).unwrap())
        .map_err(|e| format!("bad case file: {e}"))?;
    let out = Command::new(env!("CARGO_BIN_EXE_loewner"))
        .args(&case.args)
        .current_dir(golden_dir())
        .output()
        .map_err(|e| e.to_string())?;
    let code = out.status.code().unwrap_or(-1);
    let stdout = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    let stderr = String::from_utf8_lossy(&out.stderr);
    if code != case.exit {
        return Err(format!("exit {code}, expected {}; stderr: {stderr}", case.exit));
    }
    if code != 0 && !stderr.starts_with("error: ") {
        return Err(format!("failure without an error line: {stderr:?}"));
    }
    if code == 0 {
        let reparsed: serde_json::Value =
            serde_json::from_str(&stdout).map_err(|e| format!("stdout is not JSON: {e}"))?;
        if json::render(&reparsed) != stdout {
            return Err("stdout does not re-render identically".into());
        }
    }
    let expected_path = path.with_extension("stdout");
    if bless {
        std::fs::write(&expected_path, &stdout).unwrap();
        return Ok(());
    }
    let expected = std::fs::read_to_string(&expected_path)
        .map_err(|e| format!("{}: {e}", expected_path.display()))?;
    if expected != stdout {
        return Err(format!("stdout differs\n--- expected\n{expected}--- got\n{stdout}"));
    }
    Ok(())
}

/// Returns (case name, outcome) for every case, sorted by name.
pub fn run_all() -> Vec<(String, Result<(), String>)> {
    let bless = std::env::var_os("BLESS").is_some_and(|v| v == "1");
    let mut cases: Vec<PathBuf> = std::fs::read_dir(golden_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "case"))
        .collect();
    cases.sort();
    cases
        .iter()
        .map(|p| {
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            (name, run_case(p, bless))
        })
        .collect()
}
