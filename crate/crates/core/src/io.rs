//! JSON file formats, canonical digests and atomic writes.

use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::apa::PerpendicularArray;
use crate::balancing::EncodingMatrix;
use crate::designs::BlockDesign;
use crate::difference_families::DifferenceFamily;
use crate::{Error, Result};

/// Serde adapter writing a rational as `{"num": "...", "den": "..."}`.
pub mod rational {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::Zero;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Repr {
        num: String,
        den: String,
    }

    pub fn serialize<S: Serializer>(value: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        Repr {
            num: value.numer().to_string(),
            den: value.denom().to_string(),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let repr = Repr::deserialize(d)?;
        let num: BigInt = repr.num.parse().map_err(D::Error::custom)?;
        let den: BigInt = repr.den.parse().map_err(D::Error::custom)?;
        if den.is_zero() {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(BigRational::new(num, den))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignFile {
    pub v: usize,
    pub k: usize,
    #[serde(default)]
    pub t: Option<usize>,
    #[serde(default)]
    pub lambda: Option<u64>,
    pub blocks: Vec<Vec<usize>>,
}

impl DesignFile {
    pub fn from_design(design: &BlockDesign, t: Option<usize>, lambda: Option<u64>) -> Self {
        DesignFile {
            v: design.v(),
            k: design.k(),
            t,
            lambda,
            blocks: design.blocks().to_vec(),
        }
    }

    pub fn to_design(&self) -> Result<BlockDesign> {
        let design = BlockDesign::new(self.v, self.blocks.clone())?;
        if design.k() != self.k {
            return Err(Error::structural(
                "block size differs from declared k",
                vec![format!("declared k = {}, blocks have {}", self.k, design.k())],
            ));
        }
        Ok(design)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CdfFile {
    pub v: usize,
    pub lambda: u64,
    pub base_blocks: Vec<Vec<usize>>,
}

impl CdfFile {
    pub fn from_family(df: &DifferenceFamily) -> Self {
        CdfFile {
            v: df.v(),
            lambda: df.lambda(),
            base_blocks: df.base_blocks().to_vec(),
        }
    }

    pub fn to_family(&self) -> Result<DifferenceFamily> {
        DifferenceFamily::new(self.v, self.lambda, self.base_blocks.clone())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SourceKind {
    Design,
    Cdf,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub source: SourceKind,
    pub input_digest: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub v: usize,
    pub k: usize,
    pub b: usize,
    pub rows: Vec<Vec<usize>>,
    pub provenance: Provenance,
}

impl MatrixFile {
    pub fn from_matrix(matrix: &EncodingMatrix, provenance: Provenance) -> Self {
        MatrixFile {
            v: matrix.v(),
            k: matrix.k(),
            b: matrix.b(),
            rows: matrix.rows().to_vec(),
            provenance,
        }
    }

    pub fn to_matrix(&self) -> Result<EncodingMatrix> {
        if self.b != self.rows.len() {
            return Err(Error::structural(
                "row count differs from declared b",
                vec![format!("declared b = {}, found {} rows", self.b, self.rows.len())],
            ));
        }
        EncodingMatrix::new(self.v, self.k, self.rows.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApaFile {
    pub t: usize,
    pub k: usize,
    pub v: usize,
    pub lambda: u64,
    pub rows: Vec<Vec<usize>>,
}

impl ApaFile {
    pub fn from_array(array: &PerpendicularArray) -> Self {
        ApaFile {
            t: array.t(),
            k: array.k(),
            v: array.v(),
            lambda: array.lambda(),
            rows: array.rows().to_vec(),
        }
    }

    pub fn to_array(&self) -> Result<PerpendicularArray> {
        PerpendicularArray::new(self.t, self.k, self.v, self.lambda, self.rows.clone())
    }
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Parses JSON, reporting failures with their line and column.
pub fn parse_json<T: DeserializeOwned>(text: &str, path: &Path) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn load_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    parse_json(&read_text(path)?, path)
}

/// Compact JSON with object keys sorted.
pub fn canonical_json<T: Serialize>(value: &T) -> Vec<u8> {
    let value = serde_json::to_value(value).expect("file types serialize to JSON");
    serde_json::to_vec(&value).expect("JSON values serialize")
}

/// Hex SHA-256 of the canonical JSON form.
pub fn digest<T: Serialize>(value: &T) -> String {
    hex::encode(Sha256::digest(canonical_json(value)))
}

pub fn pretty_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("file types serialize to JSON");
    s.push('\n');
    s
}

/// Writes through a temporary file in the target directory and renames it
/// into place.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(&dir).map_err(io_err)?;
    tmp.write_all(contents).map_err(io_err)?;
    tmp.as_file().sync_all().map_err(io_err)?;
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}
