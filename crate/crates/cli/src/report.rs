//! Run manifests and atomic report output.

use std::io::Write;
use std::path::{Path, PathBuf};

use dgla_gr::symmetry::scenario::ScenarioConfig;
use dgla_gr::symmetry::Study;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, Serialize)]
pub struct Input {
    pub path: String,
    pub sha256: String,
}

impl Input {
    pub fn read(path: &Path) -> std::io::Result<(Self, String)> {
        let text = std::fs::read_to_string(path)?;
        let hash = Sha256::digest(text.as_bytes());
        let sha256 = hash.iter().map(|b| format!("{b:02x}")).collect();
        Ok((Self { path: path.display().to_string(), sha256 }, text))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Manifest {
    pub command: String,
    pub inputs: Vec<Input>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub thresholds: Option<Value>,
    pub versions: Value,
    pub timestamp: String,
}

impl Manifest {
    pub fn new(command: &str, inputs: Vec<Input>) -> Self {
        Self {
            command: command.to_string(),
            inputs,
            grid: None,
            thresholds: None,
            versions: json!({
                "dgla-gr": dgla_gr::VERSION,
                "dgla-gr-cli": env!("CARGO_PKG_VERSION"),
            }),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        }
    }

    pub fn with_scenario(mut self, cfg: &ScenarioConfig) -> Self {
        self.grid = Some(json!({
            "L": cfg.grid.half_width,
            "N": cfg.grid.n,
            "Ns": cfg.ns,
            "r": cfg.cutoff.r,
            "R": cfg.cutoff.big_r,
            "radius_mode": cfg.radius_mode,
        }));
        self.thresholds = Some(json!({
            "convergence": cfg.thresholds,
            "mass": cfg.mass_settings,
            "test_form": cfg.test_form,
        }));
        self
    }
}

/// `generator,norm_N17,...,slope,verdict` table of a study.
pub fn study_csv(study: &Study, first_column: &str) -> String {
    let mut out = String::from(first_column);
    for n in &study.ns {
        out.push_str(&format!(",norm_N{n}"));
    }
    out.push_str(",slope,verdict\n");
    for s in &study.series {
        out.push_str(&s.label);
        for v in &s.norms {
            out.push_str(&format!(",{v:e}"));
        }
        match s.slope {
            Some(k) => out.push_str(&format!(",{k:.4}")),
            None => out.push(','),
        }
        out.push_str(&format!(",{}\n", s.verdict));
    }
    out
}

fn write_atomic(dir: &Path, name: &str, contents: &str) -> std::io::Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.flush()?;
    let target = dir.join(name);
    tmp.persist(&target).map_err(|e| e.error)?;
    Ok(target)
}

/// A finished report: JSON body plus optional CSV tables.
pub struct Output {
    pub stem: String,
    pub manifest: Manifest,
    pub report: Value,
    /// `(file suffix, contents)`; the first table is echoed to stdout.
    pub tables: Vec<(String, String)>,
}

impl Output {
    pub fn document(&self) -> Value {
        json!({ "manifest": self.manifest, "report": self.report })
    }

    /// Prints to stdout and, when `dir` is given, writes `<stem>.json` and `<stem><suffix>.csv`.
    pub fn emit(&self, dir: Option<&Path>) -> std::io::Result<()> {
        let text = serde_json::to_string_pretty(&self.document())? + "\n";
        match self.tables.first() {
            Some((_, csv)) => print!("{csv}"),
            None => print!("{text}"),
        }
        if let Some(dir) = dir {
            let path = write_atomic(dir, &format!("{}.json", self.stem), &text)?;
            eprintln!("wrote {}", path.display());
            for (suffix, csv) in &self.tables {
                let path = write_atomic(dir, &format!("{}{suffix}.csv", self.stem), csv)?;
                eprintln!("wrote {}", path.display());
            }
        }
        Ok(())
    }
}
