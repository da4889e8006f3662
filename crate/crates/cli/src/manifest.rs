use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use sha2::{Digest, Sha256};

/// Record of one CLI run. `digest` is the SHA-256 of the exact bytes written
/// to standard output, so golden files can be compared by hash.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub inputs: serde_json::Value,
    pub config: serde_json::Value,
    pub timestamp: u64,
    pub digest: String,
}

impl RunManifest {
    pub fn new(record: serde_json::Value, output: &str) -> Self {
        let field = |k: &str| record.get(k).cloned().unwrap_or(serde_json::Value::Null);
        RunManifest {
            command: field("command").as_str().unwrap_or_default().to_string(),
            inputs: field("inputs"),
            config: field("config"),
            timestamp: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map_or(0, |d| d.as_secs()),
            digest: hex::encode(Sha256::digest(output.as_bytes())),
        }
    }

    pub fn write(&self, path: &Path) -> std::io::Result<()> {
        let mut text = serde_json::to_string_pretty(self).expect("manifest serializes");
        text.push('\n');
        std::fs::write(path, text)
    }
}
