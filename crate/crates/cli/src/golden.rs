//! Golden mode: every `NAME.bundle.json` in a directory is run and its
//! rendered report compared byte for byte with `NAME.expected.json`.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use similar::TextDiff;

use crate::report::Status;
use crate::{run, Overrides};

pub const BUNDLE_SUFFIX: &str = ".bundle.json";
pub const EXPECTED_SUFFIX: &str = ".expected.json";

#[derive(Clone, Debug, Serialize)]
pub struct GoldenCase {
    pub name: String,
    pub status: Status,
    pub matches: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diff: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GoldenReport {
    pub directory: String,
    pub status: Status,
    pub cases: Vec<GoldenCase>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl GoldenReport {
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn drifted(&self) -> usize {
        self.cases.iter().filter(|c| !c.matches).count()
    }
}

/// Bundle files of `dir`, sorted by name.
pub fn bundles(dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    let mut out: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            p.file_name()
                .and_then(|n| n.to_str())
                .is_some_and(|n| n.ends_with(BUNDLE_SUFFIX))
        })
        .collect();
    out.sort();
    Ok(out)
}

fn case_name(bundle: &Path) -> String {
    let file = bundle
        .file_name()
        .and_then(|n| n.to_str())
        .unwrap_or_default();
    file.trim_end_matches(BUNDLE_SUFFIX).to_string()
}

pub fn expected_path(bundle: &Path) -> PathBuf {
    bundle.with_file_name(format!("{}{EXPECTED_SUFFIX}", case_name(bundle)))
}

fn failed(dir: &Path, status: Status, error: String) -> GoldenReport {
    GoldenReport {
        directory: dir.display().to_string(),
        status,
        cases: Vec::new(),
        error: Some(error),
    }
}

/// Runs every case of `dir`. Drift in any case gives `golden-drift`.
pub fn check(dir: &Path, overrides: Overrides) -> GoldenReport {
    let paths = match bundles(dir) {
        Ok(p) => p,
        Err(e) => {
            return failed(
                dir,
                Status::InputError,
                format!("cannot read {}: {e}", dir.display()),
            )
        }
    };
    let mut cases = Vec::new();
    for path in &paths {
        let name = case_name(path);
        let expected = expected_path(path);
        let (Ok(text), Ok(want)) = (fs::read_to_string(path), fs::read_to_string(&expected)) else {
            return failed(
                dir,
                Status::InputError,
                format!(
                    "case `{name}` needs readable {} and {}",
                    path.display(),
                    expected.display()
                ),
            );
        };
        let report = run(&text, overrides);
        let got = report.render();
        let matches = got == want;
        let diff = (!matches).then(|| {
            TextDiff::from_lines(&want, &got)
                .unified_diff()
                .header(&format!("{name}{EXPECTED_SUFFIX}"), "actual")
                .to_string()
        });
        cases.push(GoldenCase {
            name,
            status: report.status,
            matches,
            diff,
        });
    }
    let status = if cases.iter().all(|c| c.matches) {
        Status::Ok
    } else {
        Status::GoldenDrift
    };
    GoldenReport {
        directory: dir.display().to_string(),
        status,
        cases,
        error: None,
    }
}

/// Writes the current report of every case as its expected file.
pub fn bless(dir: &Path, overrides: Overrides) -> std::io::Result<usize> {
    let paths = bundles(dir)?;
    for path in &paths {
        let text = fs::read_to_string(path)?;
        fs::write(expected_path(path), run(&text, overrides).render())?;
    }
    Ok(paths.len())
}
