use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

/// Provenance record written beside the artifacts of one run.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: Value,
    pub version: &'static str,
    pub seed: u64,
    pub wall_time_s: f64,
    pub outputs: Vec<PathBuf>,
}

impl RunManifest {
    pub fn new(command: &str, parameters: Value, seed: u64, started: Instant, outputs: Vec<PathBuf>) -> Self {
        RunManifest {
            command: command.to_string(),
            parameters,
            version: env!("CARGO_PKG_VERSION"),
            seed,
            wall_time_s: started.elapsed().as_secs_f64(),
            outputs,
        }
    }

    pub fn write(&self, path: &Path) -> std::io::Result<()> {
        let text = serde_json::to_string_pretty(self).expect("manifest serializes");
        std::fs::write(path, text + "\n")
    }
}
