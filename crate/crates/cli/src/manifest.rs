use std::collections::BTreeMap;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use serde::Serialize;
use sha2::{Digest, Sha256};

/// Provenance attached to every output: what was run, with which seed and inputs.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub command_line: Vec<String>,
    pub seed: Option<u64>,
    pub tool_version: &'static str,
    /// SHA-256 of every input file, by path.
    pub input_hashes: BTreeMap<String, String>,
    pub started_unix: u64,
    pub wall_time_s: f64,
    #[serde(skip)]
    clock: Option<Instant>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

impl RunManifest {
    pub fn start(seed: Option<u64>) -> Self {
        RunManifest {
            command_line: std::env::args().collect(),
            seed,
            tool_version: env!("CARGO_PKG_VERSION"),
            input_hashes: BTreeMap::new(),
            started_unix: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
            wall_time_s: 0.0,
            clock: Some(Instant::now()),
        }
    }

    pub fn record_input(&mut self, path: &str, bytes: &[u8]) {
        self.input_hashes.insert(path.to_string(), sha256_hex(bytes));
    }

    pub fn finish(&mut self) {
        if let Some(c) = self.clock {
            self.wall_time_s = c.elapsed().as_secs_f64();
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serialisable manifest")
    }

    /// `# key: value` lines for CSV headers. Only `started_unix` and `wall_time_s` vary between identical runs.
    pub fn csv_header(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("# command_line: {}\n", self.command_line.join(" ")));
        s.push_str(&format!("# seed: {}\n", self.seed.map_or("none".to_string(), |v| v.to_string())));
        s.push_str(&format!("# tool_version: {}\n", self.tool_version));
        for (k, v) in &self.input_hashes {
            s.push_str(&format!("# input_sha256: {k} {v}\n"));
        }
        s.push_str(&format!("# started_unix: {}\n", self.started_unix));
        s.push_str(&format!("# wall_time_s: {:.3}\n", self.wall_time_s));
        s
    }
}
