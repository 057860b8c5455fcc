use std::env;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde_json::Value;

use crate::OutArgs;

/// Where a run writes its files. Relative paths, and the default file
/// names used when no path is given, resolve against `TAILLE_OUT_DIR` when
/// it is set.
pub struct Output {
    name: &'static str,
    dir: Option<PathBuf>,
    args: Option<OutArgs>,
}

impl Output {
    pub fn new(name: &'static str, args: Option<OutArgs>) -> Output {
        let dir = env::var_os("TAILLE_OUT_DIR").filter(|d| !d.is_empty()).map(PathBuf::from);
        Output { name, dir, args }
    }

    fn resolve(&self, explicit: Option<&PathBuf>, default_name: String) -> Option<PathBuf> {
        match (explicit, &self.dir) {
            (Some(p), Some(dir)) if p.is_relative() => Some(dir.join(p)),
            (Some(p), _) => Some(p.clone()),
            (None, Some(dir)) => Some(dir.join(default_name)),
            (None, None) => None,
        }
    }

    fn write(path: &Path, contents: &str) -> Result<()> {
        if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
            fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
        }
        fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
    }

    /// Writes the CSV if a destination is known; returns where it went.
    pub fn write_csv(&self, stem: &str, csv: &str) -> Result<Option<String>> {
        let explicit = self.args.as_ref().and_then(|a| a.out.as_ref());
        let Some(path) = self.resolve(explicit, format!("{stem}.csv")) else {
            return Ok(None);
        };
        Self::write(&path, csv)?;
        Ok(Some(path.display().to_string()))
    }

    /// Prints the report and writes it to the report file, if any.
    pub fn write_report(&self, report: &Value) -> Result<()> {
        let text = serde_json::to_string_pretty(report)? + "\n";
        print!("{text}");
        let explicit = self.args.as_ref().and_then(|a| a.report.as_ref());
        if let Some(path) = self.resolve(explicit, format!("{}.json", self.name)) {
            Self::write(&path, &text)?;
        }
        Ok(())
    }
}
