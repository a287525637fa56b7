//! File formats: weight matrices and candidate maps, both JSON.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use toriquot_core::{Error as CoreError, IntMatrix};

use crate::error::{CliError, Result};

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

/// A weight matrix is a non-empty array of equally long integer rows.
pub fn parse_matrix(text: &str, origin: &str) -> Result<IntMatrix> {
    let rows: Vec<Vec<i64>> =
        serde_json::from_str(text).map_err(|source| CliError::Json { path: origin.to_string(), source })?;
    if rows.is_empty() || rows[0].is_empty() {
        return Err(CoreError::Parse(format!("{}: matrix needs at least one row and one column", origin)).into());
    }
    if rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(CoreError::Parse(format!("{}: rows have different lengths", origin)).into());
    }
    Ok(IntMatrix::from_rows(&rows)?)
}

pub fn read_matrix(path: &Path) -> Result<IntMatrix> {
    parse_matrix(&read_text(path)?, &path.display().to_string())
}

/// A map between quotient presentations.
///
/// Source generators are named `{source_prefix}0, {source_prefix}1, …` in
/// the order of the source Hilbert basis, likewise for the target. Images
/// are polynomial strings in the target generators; sources left out are
/// completed from the linear moment relations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    #[serde(default = "default_source_prefix")]
    pub source_prefix: String,
    #[serde(default = "default_target_prefix")]
    pub target_prefix: String,
    pub images: BTreeMap<String, String>,
}

fn default_source_prefix() -> String {
    "p".into()
}

fn default_target_prefix() -> String {
    "q".into()
}

pub fn parse_map(text: &str, origin: &str) -> Result<MapFile> {
    serde_json::from_str(text).map_err(|source| CliError::Json { path: origin.to_string(), source })
}

pub fn read_map(path: &Path) -> Result<MapFile> {
    parse_map(&read_text(path)?, &path.display().to_string())
}

pub const PSI_JSON: &str = include_str!("../maps/psi.json");
pub const PHI_STAR_JSON: &str = include_str!("../maps/phi_star.json");
pub const SOURCE_MATRIX_JSON: &str = "[[-2, 3, 6]]";
pub const TARGET_MATRIX_JSON: &str = "[[-3, 2, 6]]";

/// Bundled maps between the `(-2,3,6)` and `(-3,2,6)` quotients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum BundledMap {
    /// Real graded isomorphism, `p` generators to `q` generators.
    Psi,
    /// Complex Poisson isomorphism, `q` generators to `p` generators.
    PhiStar,
}

impl BundledMap {
    pub fn map(self) -> MapFile {
        let text = match self {
            BundledMap::Psi => PSI_JSON,
            BundledMap::PhiStar => PHI_STAR_JSON,
        };
        parse_map(text, "bundled map").expect("bundled maps are valid")
    }

    /// `(source, target)` weight matrices.
    pub fn matrices(self) -> (IntMatrix, IntMatrix) {
        let a = parse_matrix(SOURCE_MATRIX_JSON, "bundled").expect("valid");
        let b = parse_matrix(TARGET_MATRIX_JSON, "bundled").expect("valid");
        match self {
            BundledMap::Psi => (a, b),
            BundledMap::PhiStar => (b, a),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_shapes() {
        assert_eq!(parse_matrix("[[-2, 3, 6]]", "t").unwrap().cols(), 3);
        assert!(matches!(parse_matrix("[]", "t"), Err(CliError::Core(CoreError::Parse(_)))));
        assert!(matches!(parse_matrix("[[1], [1, 2]]", "t"), Err(CliError::Core(CoreError::Parse(_)))));
        assert!(matches!(parse_matrix("[[1.5]]", "t"), Err(CliError::Json { .. })));
    }

    #[test]
    fn map_defaults_and_strictness() {
        let m = parse_map(r#"{"images": {"p1": "q2"}}"#, "t").unwrap();
        assert_eq!((m.source_prefix.as_str(), m.target_prefix.as_str()), ("p", "q"));
        assert!(parse_map(r#"{"images": {}, "extra": 1}"#, "t").is_err());
        assert_eq!(BundledMap::Psi.map().images.len(), 8);
        assert_eq!(BundledMap::PhiStar.map().images.len(), 9);
    }
}
