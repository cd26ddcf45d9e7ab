//! Plain-text simplex files: one simplex per line, whitespace-separated
//! coordinates in vertex-major order, `#` starts a comment line.

use std::path::Path;

use crate::HarnessError;

/// Parsed input file: flat coordinates of every simplex, in file order.
#[derive(Clone, Debug, PartialEq)]
pub struct InputFile {
    pub dim: usize,
    pub simplices: Vec<Vec<f64>>,
    /// 1-based source line of each simplex.
    pub lines: Vec<usize>,
}

pub fn parse_input(text: &str, dim: usize) -> Result<InputFile, HarnessError> {
    if dim < 2 {
        return Err(HarnessError::Usage(format!("dim must be at least 2, got {dim}")));
    }
    let mut simplices = Vec::new();
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let coords = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<f64>().map_err(|e| HarnessError::Parse {
                    line: i + 1,
                    message: format!("`{tok}`: {e}"),
                })
            })
            .collect::<Result<Vec<f64>, _>>()?;
        if coords.len() % dim != 0 {
            return Err(HarnessError::Parse {
                line: i + 1,
                message: format!("{} coordinates is not a multiple of dim {dim}", coords.len()),
            });
        }
        simplices.push(coords);
        lines.push(i + 1);
    }
    Ok(InputFile { dim, simplices, lines })
}

pub fn read_input(path: &Path, dim: usize) -> Result<InputFile, HarnessError> {
    let text = std::fs::read_to_string(path).map_err(|source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_input(&text, dim)
}
