//! Artifact writing: fixed-format numbers, run manifests, content hashes.

use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

/// 17 significant digits, locale-independent.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// FNV-1a 64-bit content hash, hex encoded.
pub fn fnv64(bytes: &[u8]) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{h:016x}")
}

#[derive(Serialize)]
struct ManifestOutput {
    path: String,
    bytes: usize,
    fnv64: String,
}

#[derive(Serialize)]
struct Manifest {
    command: String,
    config: serde_json::Value,
    version: String,
    wall_seconds: f64,
    outputs: Vec<ManifestOutput>,
}

/// Collects written artifacts and emits `<out>.manifest.json` alongside the
/// first artifact.
pub struct Run {
    command: String,
    config: serde_json::Value,
    started: Instant,
    outputs: Vec<(PathBuf, usize, String)>,
}

impl Run {
    pub fn new(command: &str, config: serde_json::Value) -> Run {
        Run { command: command.to_string(), config, started: Instant::now(), outputs: Vec::new() }
    }

    pub fn write(&mut self, path: &Path, body: &str) -> std::io::Result<()> {
        std::fs::write(path, body)?;
        self.outputs.push((path.to_path_buf(), body.len(), fnv64(body.as_bytes())));
        Ok(())
    }

    pub fn finish(self) -> std::io::Result<()> {
        let manifest_path = match self.outputs.first() {
            Some((p, _, _)) => {
                let mut name = p.file_name().unwrap_or_default().to_os_string();
                name.push(".manifest.json");
                p.with_file_name(name)
            }
            None => return Ok(()),
        };
        let manifest = Manifest {
            command: self.command,
            config: self.config,
            version: env!("CARGO_PKG_VERSION").to_string(),
            wall_seconds: self.started.elapsed().as_secs_f64(),
            outputs: self
                .outputs
                .iter()
                .map(|(p, b, h)| ManifestOutput {
                    path: p.display().to_string(),
                    bytes: *b,
                    fnv64: h.clone(),
                })
                .collect(),
        };
        std::fs::write(&manifest_path, serde_json::to_string_pretty(&manifest)?)?;
        Ok(())
    }
}
