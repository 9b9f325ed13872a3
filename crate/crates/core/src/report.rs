//! Output plumbing shared by the CLI: format selection and destination
//! handling. Reports themselves are ordinary serde values assembled by the
//! producing modules; everything here is deterministic (sorted maps, no
//! timestamps).

use std::io::Write;
use std::path::PathBuf;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "text" => Ok(OutputFormat::Text),
            other => Err(format!("unknown output format {other:?}")),
        }
    }
}

/// Environment variable naming the default output directory for --out
/// paths that are bare file names.
pub const OUT_DIR_ENV: &str = "QUARTERWALK_OUT_DIR";

/// Resolves the destination path: relative paths land in $QUARTERWALK_OUT_DIR
/// when that is set.
pub fn resolve_out_path(path: &str) -> PathBuf {
    let p = PathBuf::from(path);
    if p.is_absolute() {
        return p;
    }
    match std::env::var(OUT_DIR_ENV) {
        Ok(dir) if !dir.is_empty() => PathBuf::from(dir).join(p),
        _ => p,
    }
}

/// Writes to the resolved path, or stdout when no path is given.
pub fn emit(content: &str, out_path: Option<&str>) -> std::io::Result<()> {
    match out_path {
        Some(p) => {
            let path = resolve_out_path(p);
            if let Some(parent) = path.parent() {
                if !parent.as_os_str().is_empty() {
                    std::fs::create_dir_all(parent)?;
                }
            }
            std::fs::write(path, content)
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes())?;
            if !content.ends_with('\n') {
                stdout.write_all(b"\n")?;
            }
            Ok(())
        }
    }
}

pub fn pretty_json(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable report")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_parsing() {
        assert_eq!("json".parse::<OutputFormat>().unwrap(), OutputFormat::Json);
        assert!("yaml".parse::<OutputFormat>().is_err());
    }
}
