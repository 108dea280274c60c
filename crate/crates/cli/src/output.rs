//! Atomic file output with run metadata.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use serde::Serialize;

/// Run information kept next to each data file as `<file>.meta.json`, so data
/// files themselves stay byte-stable.
#[derive(Debug, Clone, Serialize)]
pub struct RunMeta {
    pub tool: &'static str,
    pub version: &'static str,
    pub args: Vec<String>,
    pub threads: usize,
    pub started_unix_ms: u128,
    #[serde(skip)]
    pub started: Instant,
}

impl RunMeta {
    pub fn new(args: Vec<String>, threads: usize) -> Self {
        RunMeta {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            args,
            threads,
            started_unix_ms: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map_or(0, |d| d.as_millis()),
            started: Instant::now(),
        }
    }
}

#[derive(Serialize)]
struct Sidecar<'a> {
    #[serde(flatten)]
    meta: &'a RunMeta,
    output: String,
    bytes: u64,
    elapsed_ms: u128,
}

pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

fn temp_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(format!(".tmp.{}", std::process::id()));
    PathBuf::from(s)
}

fn write_atomic(path: &Path, f: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> io::Result<u64> {
    let tmp = temp_path(path);
    let result = (|| {
        let mut w = BufWriter::new(File::create(&tmp)?);
        f(&mut w)?;
        let file = w.into_inner().map_err(|e| e.into_error())?;
        file.sync_all()?;
        let len = file.metadata()?.len();
        fs::rename(&tmp, path)?;
        Ok(len)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result
}

/// Writes `path` via a temporary file and rename, then its sidecar.
pub fn write_file(
    path: &Path,
    meta: &RunMeta,
    f: impl FnOnce(&mut dyn Write) -> io::Result<()>,
) -> io::Result<()> {
    let bytes = write_atomic(path, f)?;
    let sidecar = Sidecar {
        meta,
        output: path.display().to_string(),
        bytes,
        elapsed_ms: meta.started.elapsed().as_millis(),
    };
    write_atomic(&sidecar_path(path), |w| {
        serde_json::to_writer_pretty(&mut *w, &sidecar)?;
        w.write_all(b"\n")
    })?;
    Ok(())
}

/// Writes to `out` when given, otherwise to `stdout`.
pub fn emit(
    out: Option<&Path>,
    stdout: &mut crate::Sink,
    meta: &RunMeta,
    f: impl FnOnce(&mut dyn Write) -> io::Result<()>,
) -> io::Result<()> {
    match out {
        Some(path) => write_file(path, meta, f),
        None => {
            f(stdout)?;
            stdout.flush()
        }
    }
}
