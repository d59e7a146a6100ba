//! Code files: JSON (`{"n", "theta", "nodes"}`) and CSV incidence matrices.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::code::{FrCode, IncidenceMatrix};
use crate::error::{FrcError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodeFormat {
    Json,
    CsvMatrix,
}

impl CodeFormat {
    /// `.csv` selects the matrix format, anything else JSON.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => CodeFormat::CsvMatrix,
            _ => CodeFormat::Json,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct CodeFile {
    n: usize,
    theta: usize,
    nodes: Vec<Vec<usize>>,
}

pub fn code_to_json(code: &FrCode) -> String {
    let file = CodeFile {
        n: code.n(),
        theta: code.theta(),
        nodes: code.storage(),
    };
    serde_json::to_string(&file).expect("code file serializes")
}

pub fn code_from_json(text: &str) -> Result<FrCode> {
    let file: CodeFile =
        serde_json::from_str(text).map_err(|e| FrcError::ParseError(e.to_string()))?;
    FrCode::new(file.n, file.theta, file.nodes).map_err(|e| FrcError::InvariantViolation(Box::new(e)))
}

pub fn code_from_csv(text: &str) -> Result<FrCode> {
    let matrix = IncidenceMatrix::parse_csv(text)?;
    FrCode::from_incidence(&matrix).map_err(|e| FrcError::InvariantViolation(Box::new(e)))
}

pub fn encode_code(code: &FrCode, format: CodeFormat) -> String {
    match format {
        CodeFormat::Json => {
            let mut s = code_to_json(code);
            s.push('\n');
            s
        }
        CodeFormat::CsvMatrix => code.incidence_matrix().to_csv(),
    }
}

pub fn decode_code(text: &str, format: CodeFormat) -> Result<FrCode> {
    match format {
        CodeFormat::Json => code_from_json(text),
        CodeFormat::CsvMatrix => code_from_csv(text),
    }
}

pub fn import_code(path: &Path, format: CodeFormat) -> Result<FrCode> {
    decode_code(&fs::read_to_string(path)?, format)
}

pub fn export_code(code: &FrCode, path: &Path, format: CodeFormat) -> Result<()> {
    fs::write(path, encode_code(code, format))?;
    Ok(())
}
