//! Golden files: a command line, its canonical output and the SHA-256 of
//! that output. Verification replays the command in-process.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GoldenRecord {
    pub command: Vec<String>,
    pub output: String,
    pub sha256: String,
}

pub fn sha256_hex(s: &str) -> String {
    hex::encode(Sha256::digest(s.as_bytes()))
}

/// Commands whose outputs are committed, keyed by file stem.
pub fn golden_commands() -> Vec<(String, Vec<String>)> {
    let argv = |s: &str| s.split_whitespace().map(String::from).collect::<Vec<_>>();
    let mut out = vec![
        (
            "invariants_su2_k10".to_string(),
            argv("invariants su2 --k 10 --json"),
        ),
        (
            "invariants_su2_k28".to_string(),
            argv("invariants su2 --k 28 --json"),
        ),
        (
            "classify_vir_m11".to_string(),
            argv("classify vir --m 11 --json"),
        ),
        (
            "classify_vir_m12".to_string(),
            argv("classify vir --m 12 --json"),
        ),
        (
            "moonshine_j_q50".to_string(),
            argv("moonshine j --nmax 50 --json"),
        ),
    ];
    for m in 3..=12 {
        out.push((
            format!("boundary_m{m:02}"),
            argv(&format!("classify vir --m {m} --boundary --json")),
        ));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GoldenMismatch {
    pub file: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GoldenReport {
    pub dir: String,
    pub checked: usize,
    pub mismatches: Vec<GoldenMismatch>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
    pub pass: bool,
}

fn golden_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let entries = fs::read_dir(dir)
        .map_err(|e| CliError::Usage(format!("golden dir {}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(Result::ok)
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    Ok(files)
}

/// Replay every `*.json` record in `dir`; `replay` returns `(exit code, output)`.
pub fn verify(
    dir: &Path,
    replay: impl Fn(&[String]) -> (i32, String),
) -> Result<GoldenReport, CliError> {
    let files = golden_files(dir)?;
    let mut mismatches = Vec::new();
    for path in &files {
        let file = path
            .file_name()
            .map(|f| f.to_string_lossy().into_owned())
            .unwrap_or_default();
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                mismatches.push(GoldenMismatch {
                    file,
                    reason: format!("unreadable: {e}"),
                });
                continue;
            }
        };
        let rec: GoldenRecord = match serde_json::from_str(&text) {
            Ok(r) => r,
            Err(e) => {
                mismatches.push(GoldenMismatch {
                    file,
                    reason: format!("malformed record: {e}"),
                });
                continue;
            }
        };
        if sha256_hex(&rec.output) != rec.sha256 {
            mismatches.push(GoldenMismatch {
                file,
                reason: "stored output does not match stored hash".into(),
            });
            continue;
        }
        let (code, out) = replay(&rec.command);
        if code != 0 {
            mismatches.push(GoldenMismatch {
                file,
                reason: format!("replay exited with {code}"),
            });
        } else if sha256_hex(&out) != rec.sha256 {
            mismatches.push(GoldenMismatch {
                file,
                reason: "replayed output hash differs".into(),
            });
        }
    }
    let warning = files
        .is_empty()
        .then(|| format!("no golden files in {}", dir.display()));
    Ok(GoldenReport {
        dir: dir.display().to_string(),
        checked: files.len(),
        pass: mismatches.is_empty(),
        mismatches,
        warning,
    })
}

/// Run every entry of [`golden_commands`] and write `<stem>.json` into `dir`.
pub fn record(
    dir: &Path,
    replay: impl Fn(&[String]) -> (i32, String),
) -> Result<Vec<String>, CliError> {
    fs::create_dir_all(dir)
        .map_err(|e| CliError::Usage(format!("golden dir {}: {e}", dir.display())))?;
    let mut written = Vec::new();
    for (stem, command) in golden_commands() {
        let (code, output) = replay(&command);
        if code != 0 {
            return Err(CliError::Verification(format!(
                "{} exited with {code}",
                command.join(" ")
            )));
        }
        let rec = GoldenRecord {
            sha256: sha256_hex(&output),
            command,
            output,
        };
        let path = dir.join(format!("{stem}.json"));
        let text = serde_json::to_string_pretty(&rec).expect("record serializes") + "\n";
        fs::write(&path, text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        written.push(path.display().to_string());
    }
    Ok(written)
}
