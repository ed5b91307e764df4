use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::{json, Value};

use crate::exit::CliResult;

/// JSON-lines sink: a file when `--out` is given, stdout otherwise.
pub struct Lines {
    out: Box<dyn Write>,
}

impl Lines {
    pub fn open(path: Option<&Path>) -> CliResult<Self> {
        let out: Box<dyn Write> = match path {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        };
        Ok(Self { out })
    }

    /// First line of every run: the effective configuration. The timestamp
    /// lives here only, so bodies of identical runs are byte-identical.
    pub fn header(&mut self, command: &str, config: impl Serialize, effective: Value) -> CliResult<()> {
        let started = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_millis() as u64)
            .unwrap_or(0);
        self.line(&json!({
            "header": {
                "command": command,
                "version": env!("CARGO_PKG_VERSION"),
                "config": config,
                "effective": effective,
                "started_unix_ms": started,
            }
        }))
    }

    pub fn line(&mut self, value: &impl Serialize) -> CliResult<()> {
        serde_json::to_writer(&mut self.out, value).map_err(io::Error::from)?;
        self.out.write_all(b"\n")?;
        Ok(())
    }

    pub fn finish(mut self) -> CliResult<()> {
        self.out.flush()?;
        Ok(())
    }
}
