use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::Serialize;

use crate::Command;

/// What was run, on which inputs, with which settings. Rerunning the same
/// manifest reproduces the same outputs.
#[derive(Debug, Serialize)]
pub struct RunManifest<'a> {
    pub command: &'static str,
    pub seed: Option<u64>,
    pub inputs: Vec<&'a Path>,
    pub config: &'a Command,
    pub version: &'static str,
}

impl<'a> RunManifest<'a> {
    pub fn for_command(command: &'a Command) -> anyhow::Result<Self> {
        let (name, seed, inputs): (_, _, Vec<&PathBuf>) = match command {
            Command::Solve(a) => ("solve", None, vec![&a.path]),
            Command::Oracle(a) => ("oracle", None, vec![&a.path]),
            Command::Reduce(a) => ("reduce", None, vec![&a.path]),
            Command::Verify(a) => ("verify", None, vec![&a.dnf, &a.qbf]),
            Command::Gen(a) => ("gen", Some(a.seed), vec![]),
            Command::Bench(a) => ("bench", None, vec![&a.corpus]),
        };
        Ok(RunManifest {
            command: name,
            seed,
            inputs: inputs.into_iter().map(PathBuf::as_path).collect(),
            config: command,
            version: env!("CARGO_PKG_VERSION"),
        })
    }

    pub fn write(&self, path: &Path) -> anyhow::Result<()> {
        let json = serde_json::to_string_pretty(self)?;
        fs::write(path, json + "\n").with_context(|| format!("writing manifest {}", path.display()))
    }
}
