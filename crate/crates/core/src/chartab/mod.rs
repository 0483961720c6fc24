//! Character tables: classes, power maps, ordinary rows and Brauer blocks.

mod doc;
mod table;
mod validate;

use thiserror::Error;

pub use doc::{BlockDoc, ClassDoc, CycDoc, RowDoc, TableDoc};
pub use table::{
    parse_table, BrauerBlock, CharKind, CharacterRow, CharacterTable, ClassInfo, IDENTITY_CLASS,
};
pub use validate::{validate, Issue, IssueKind, Severity, ValidationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChartabError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("{context} refers to unknown class {class}")]
    DanglingClassRef { context: String, class: String },
    #[error("character {row} has bad degree {value}")]
    BadDegree { row: String, value: String },
    #[error("power map {prime} of class {class} lands on {target} of the wrong order")]
    PowerMapOrder { class: String, prime: u64, target: String },
    #[error("class {class} has no {prime}-power map")]
    MissingPowerMap { class: String, prime: u64 },
    #[error("unknown class {0}")]
    UnknownClass(String),
}

/// Read and parse a table document from disk.
pub fn load_table(path: impl AsRef<std::path::Path>) -> Result<CharacterTable, ChartabError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| ChartabError::Schema(format!("{}: {e}", path.display())))?;
    parse_table(&text)
}
