//! Knot records and their JSON/CSV file formats.
//!
//! One JSON record looks like
//!
//! ```json
//! {"name": "m5_2", "seifert": [[4, -1], [-1, 2]], "symmetric": true,
//!  "det": 7, "sigma": 2, "u1": true, "lens": [7, 2]}
//! ```
//!
//! Every field but `name` is optional. `symmetric: true` marks `seifert` as
//! an already symmetrized matrix V + Vᵀ. CSV files use the same column
//! names, with matrices written as bracketed row-major strings such as
//! `[[4,-1],[-1,2]]`. The KnotInfo column names `seifert_matrix`,
//! `determinant` and `signature` are accepted as aliases, and so are braces
//! in place of brackets.

use std::fmt;
use std::io::Read;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seifert::{SeifertMatrix, SymmetricRationalMatrix};
use crate::unknotting::abs_det;
use crate::witt::DiagonalForm;

/// How stored matrices are interpreted.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum IngestMode {
    /// Each record's `symmetric` flag decides.
    #[default]
    Auto,
    Seifert,
    Symmetric,
    /// Matrices are ignored; records need `det` and `sigma`.
    Scalars,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FileFormat {
    Json,
    Csv,
}

impl FileFormat {
    /// Guesses from the file extension, defaulting to JSON.
    pub fn from_path(path: &Path) -> FileFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => FileFormat::Csv,
            _ => FileFormat::Json,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct IngestOptions {
    pub mode: IngestMode,
    /// Reject Seifert matrices with det(V − Vᵀ) ≠ 1.
    pub strict_seifert: bool,
}

/// The on-disk shape of a record.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawRecord {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seifert: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetric: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub det: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u1: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lens: Option<[i64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RecordMatrix {
    Seifert(SeifertMatrix),
    Symmetric(SymmetricRationalMatrix),
}

impl RecordMatrix {
    pub fn phi(&self) -> Result<DiagonalForm> {
        match self {
            RecordMatrix::Seifert(v) => v.rational_witt_class(),
            RecordMatrix::Symmetric(q) => Ok(q.diagonalize()?.form),
        }
    }

    /// |det Q|, which must be a positive integer.
    pub fn determinant(&self) -> Result<BigInt> {
        match self {
            RecordMatrix::Seifert(v) => v.determinant(),
            RecordMatrix::Symmetric(q) => {
                let det = q.determinant();
                if det.is_zero() {
                    return Err(Error::Degenerate);
                }
                if !det.is_integer() {
                    return Err(Error::NotIntegral(det.to_string()));
                }
                Ok(det.to_integer().abs())
            }
        }
    }

    fn integer_rows(&self) -> Vec<Vec<i64>> {
        match self {
            RecordMatrix::Seifert(v) => v.rows(),
            RecordMatrix::Symmetric(q) => q
                .integer_rows()
                .expect("records hold integer matrices")
                .into_iter()
                .map(|row| row.iter().map(|x| x.to_i64().expect("entries came from i64")).collect())
                .collect(),
        }
    }
}

/// A validated knot: at least a matrix or both scalars, mutually consistent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotRecord {
    pub name: String,
    pub matrix: Option<RecordMatrix>,
    pub det: Option<u64>,
    pub sigma: Option<i64>,
    pub u1_known: Option<bool>,
    pub lens: Option<(i64, i64)>,
}

/// The data the obstruction engine needs from a record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolvedKnot {
    pub phi: Option<DiagonalForm>,
    pub det: u64,
    pub sigma: i64,
}

impl KnotRecord {
    pub fn from_matrix(name: impl Into<String>, matrix: RecordMatrix) -> Result<Self> {
        let mut record = KnotRecord::bare(name);
        record.matrix = Some(matrix);
        record.validate()?;
        Ok(record)
    }

    pub fn from_scalars(name: impl Into<String>, det: u64, sigma: i64) -> Result<Self> {
        let mut record = KnotRecord::bare(name);
        record.det = Some(det);
        record.sigma = Some(sigma);
        record.validate()?;
        Ok(record)
    }

    fn bare(name: impl Into<String>) -> Self {
        KnotRecord {
            name: name.into(),
            matrix: None,
            det: None,
            sigma: None,
            u1_known: None,
            lens: None,
        }
    }

    pub fn from_raw(raw: RawRecord, opts: IngestOptions) -> Result<Self> {
        let symmetric = match opts.mode {
            IngestMode::Auto => raw.symmetric.unwrap_or(false),
            IngestMode::Symmetric => true,
            IngestMode::Seifert | IngestMode::Scalars => false,
        };
        let matrix = match raw.seifert {
            Some(rows) if opts.mode != IngestMode::Scalars => Some(if symmetric {
                RecordMatrix::Symmetric(SymmetricRationalMatrix::from_integer_rows(&rows)?)
            } else if opts.strict_seifert {
                RecordMatrix::Seifert(SeifertMatrix::from_rows_strict(rows)?)
            } else {
                RecordMatrix::Seifert(SeifertMatrix::from_rows(rows)?)
            }),
            _ => None,
        };
        let record = KnotRecord {
            name: raw.name,
            matrix,
            det: raw.det,
            sigma: raw.sigma,
            u1_known: raw.u1,
            lens: raw.lens.map(|[p, q]| (p, q)),
        };
        record.validate()?;
        Ok(record)
    }

    pub fn to_raw(&self) -> RawRecord {
        RawRecord {
            name: self.name.clone(),
            seifert: self.matrix.as_ref().map(RecordMatrix::integer_rows),
            symmetric: match self.matrix {
                Some(RecordMatrix::Symmetric(_)) => Some(true),
                _ => None,
            },
            det: self.det,
            sigma: self.sigma,
            u1: self.u1_known,
            lens: self.lens.map(|(p, q)| [p, q]),
        }
    }

    fn validate(&self) -> Result<()> {
        let invalid = |message: String| Error::Validation {
            record: self.name.clone(),
            message,
        };
        match &self.matrix {
            Some(matrix) => {
                let det = abs_det(&matrix.determinant()?)?;
                if self.det.is_some_and(|d| d != det) {
                    return Err(invalid(format!(
                        "stored det {} but the matrix gives {det}",
                        self.det.unwrap()
                    )));
                }
                let sigma = matrix.phi()?.signature();
                if self.sigma.is_some_and(|s| s != sigma) {
                    return Err(invalid(format!(
                        "stored sigma {} but the matrix gives {sigma}",
                        self.sigma.unwrap()
                    )));
                }
            }
            None => {
                if self.det.is_none() || self.sigma.is_none() {
                    return Err(invalid("needs a matrix or both det and sigma".into()));
                }
            }
        }
        Ok(())
    }

    /// φ, det and σ, computed from the matrix when there is one.
    pub fn resolve(&self) -> Result<ResolvedKnot> {
        match &self.matrix {
            Some(matrix) => {
                let phi = matrix.phi()?;
                Ok(ResolvedKnot {
                    det: abs_det(&matrix.determinant()?)?,
                    sigma: phi.signature(),
                    phi: Some(phi),
                })
            }
            None => Ok(ResolvedKnot {
                phi: None,
                det: self.det.expect("validated"),
                sigma: self.sigma.expect("validated"),
            }),
        }
    }
}

/// A record that failed validation; the rest of the batch is unaffected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecordIssue {
    /// 1-based position of the record in its file.
    pub index: usize,
    pub name: String,
    pub error: Error,
}

impl fmt::Display for RecordIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "record {} ({}): {}", self.index, self.name, self.error)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Ingested {
    pub records: Vec<KnotRecord>,
    pub issues: Vec<RecordIssue>,
}

fn validate_all(raws: Vec<RawRecord>, opts: IngestOptions) -> Ingested {
    let mut out = Ingested::default();
    for (i, raw) in raws.into_iter().enumerate() {
        let name = raw.name.clone();
        match KnotRecord::from_raw(raw, opts) {
            Ok(record) => out.records.push(record),
            Err(error) => out.issues.push(RecordIssue {
                index: i + 1,
                name,
                error,
            }),
        }
    }
    out
}

/// Parses a JSON array of records. Blank input is an empty list.
pub fn parse_json(text: &str, opts: IngestOptions) -> Result<Ingested> {
    if text.trim().is_empty() {
        return Ok(Ingested::default());
    }
    let raws: Vec<RawRecord> = serde_json::from_str(text).map_err(|e| Error::Parse {
        location: format!("line {}, column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    Ok(validate_all(raws, opts))
}

#[derive(Debug, Deserialize)]
struct CsvRow {
    name: String,
    #[serde(default, alias = "seifert_matrix")]
    seifert: Option<String>,
    #[serde(default)]
    symmetric: Option<String>,
    #[serde(default, alias = "determinant")]
    det: Option<String>,
    #[serde(default, alias = "signature")]
    sigma: Option<String>,
    #[serde(default)]
    u1: Option<String>,
    #[serde(default)]
    lens: Option<String>,
}

fn nonblank(field: &Option<String>) -> Option<&str> {
    field.as_deref().map(str::trim).filter(|s| !s.is_empty())
}

fn parse_field<T: std::str::FromStr>(field: &Option<String>, line: u64, column: &str) -> Result<Option<T>>
where
    T::Err: fmt::Display,
{
    nonblank(field)
        .map(|s| {
            s.parse::<T>().map_err(|e| Error::Parse {
                location: format!("line {line}, field {column}"),
                message: format!("{s:?}: {e}"),
            })
        })
        .transpose()
}

fn parse_bracketed<T: serde::de::DeserializeOwned>(field: &Option<String>, line: u64, column: &str) -> Result<Option<T>> {
    nonblank(field)
        .map(|s| {
            let s = s.replace('{', "[").replace('}', "]");
            serde_json::from_str(&s).map_err(|e| Error::Parse {
                location: format!("line {line}, field {column}"),
                message: e.to_string(),
            })
        })
        .transpose()
}

fn parse_bool(field: &Option<String>, line: u64, column: &str) -> Result<Option<bool>> {
    nonblank(field)
        .map(|s| match s.to_ascii_lowercase().as_str() {
            "true" | "yes" | "1" | "y" => Ok(true),
            "false" | "no" | "0" | "n" => Ok(false),
            _ => Err(Error::Parse {
                location: format!("line {line}, field {column}"),
                message: format!("{s:?} is not a boolean"),
            }),
        })
        .transpose()
}

/// Parses CSV with a header row. Blank input is an empty list.
pub fn parse_csv(text: &str, opts: IngestOptions) -> Result<Ingested> {
    if text.trim().is_empty() {
        return Ok(Ingested::default());
    }
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let mut raws = Vec::new();
    for row in reader.deserialize::<CsvRow>() {
        let row = row.map_err(|e| Error::Parse {
            location: e
                .position()
                .map(|p| format!("line {}", p.line()))
                .unwrap_or_else(|| "csv".into()),
            message: e.to_string(),
        })?;
        let line = raws.len() as u64 + 2;
        raws.push(RawRecord {
            seifert: parse_bracketed(&row.seifert, line, "seifert")?,
            symmetric: parse_bool(&row.symmetric, line, "symmetric")?,
            det: parse_field(&row.det, line, "det")?,
            sigma: parse_field(&row.sigma, line, "sigma")?,
            u1: parse_bool(&row.u1, line, "u1")?,
            lens: parse_bracketed(&row.lens, line, "lens")?,
            name: row.name,
        });
    }
    Ok(validate_all(raws, opts))
}

pub fn parse(text: &str, format: FileFormat, opts: IngestOptions) -> Result<Ingested> {
    match format {
        FileFormat::Json => parse_json(text, opts),
        FileFormat::Csv => parse_csv(text, opts),
    }
}

/// Reads and validates a record file.
pub fn ingest(path: &Path, format: FileFormat, opts: IngestOptions) -> Result<Ingested> {
    let mut text = String::new();
    std::fs::File::open(path)
        .and_then(|mut f| f.read_to_string(&mut text))
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse(&text, format, opts)
}

/// Canonical JSON: one record per line inside an array, newline-terminated.
pub fn emit_json(records: &[KnotRecord]) -> String {
    let lines: Vec<String> = records
        .iter()
        .map(|r| serde_json::to_string(&r.to_raw()).expect("records serialize"))
        .collect();
    if lines.is_empty() {
        return "[]\n".into();
    }
    format!("[\n  {}\n]\n", lines.join(",\n  "))
}

pub fn emit_csv(records: &[KnotRecord]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record(["name", "seifert", "symmetric", "det", "sigma", "u1", "lens"])
        .expect("in-memory write");
    let opt = |v: Option<String>| v.unwrap_or_default();
    for record in records {
        let raw = record.to_raw();
        writer
            .write_record([
                raw.name.clone(),
                opt(raw.seifert.map(|m| serde_json::to_string(&m).expect("serialize"))),
                opt(raw.symmetric.map(|b| b.to_string())),
                opt(raw.det.map(|d| d.to_string())),
                opt(raw.sigma.map(|s| s.to_string())),
                opt(raw.u1.map(|b| b.to_string())),
                opt(raw.lens.map(|l| serde_json::to_string(&l).expect("serialize"))),
            ])
            .expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("flush")).expect("csv output is UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_inputs() {
        let opts = IngestOptions::default();
        assert_eq!(parse_json("", opts).unwrap(), Ingested::default());
        assert_eq!(parse_json("[]", opts).unwrap(), Ingested::default());
        assert_eq!(parse_csv("\n", opts).unwrap(), Ingested::default());
        assert_eq!(emit_json(&[]), "[]\n");
    }

    #[test]
    fn scalars_only_csv() {
        let text = "name,det,sigma\n3_1,3,-2\n";
        let got = parse_csv(text, IngestOptions::default()).unwrap();
        assert!(got.issues.is_empty());
        let r = got.records[0].resolve().unwrap();
        assert_eq!((r.phi, r.det, r.sigma), (None, 3, -2));
    }

    #[test]
    fn parse_errors_carry_location() {
        let err = parse_json("[{\"name\": 3}]", IngestOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Parse { ref location, .. } if location.starts_with("line 1")));
        let err = parse_csv("name,det,sigma\na,x,0\n", IngestOptions::default()).unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                location: "line 2, field det".into(),
                message: "\"x\": invalid digit found in string".into()
            }
        );
    }

    #[test]
    fn mismatches_are_per_record() {
        let text = r#"[
            {"name": "trefoil", "seifert": [[-1, 1], [0, -1]], "det": 5},
            {"name": "ok", "seifert": [[-1, 1], [0, -1]], "det": 3, "sigma": -2},
            {"name": "bare"}
        ]"#;
        let got = parse_json(text, IngestOptions::default()).unwrap();
        assert_eq!(got.records.len(), 1);
        assert_eq!(got.issues.iter().map(|i| i.index).collect::<Vec<_>>(), vec![1, 3]);
    }

    #[test]
    fn strictness() {
        let text = r#"[{"name": "x", "seifert": [[1, 0], [0, 1]]}]"#;
        let lenient = parse_json(text, IngestOptions::default()).unwrap();
        assert_eq!(lenient.records.len(), 1);
        let strict = IngestOptions {
            strict_seifert: true,
            ..Default::default()
        };
        let got = parse_json(text, strict).unwrap();
        assert_eq!(got.issues[0].error, Error::NotUnimodular(BigInt::zero()));
    }

    #[test]
    fn knotinfo_aliases_and_braces() {
        let text = "name,seifert_matrix,determinant,signature\n3_1,\"{{-1,1},{0,-1}}\",3,-2\n";
        let got = parse_csv(text, IngestOptions::default()).unwrap();
        assert!(got.issues.is_empty(), "{:?}", got.issues);
        assert_eq!(got.records[0].resolve().unwrap().det, 3);
    }

    #[test]
    fn csv_round_trip() {
        let text = r#"[{"name":"a","seifert":[[4,-1],[-1,2]],"symmetric":true,"u1":true,"lens":[7,2]},{"name":"b","det":9,"sigma":0}]"#;
        let first = parse_json(text, IngestOptions::default()).unwrap();
        let again = parse_csv(&emit_csv(&first.records), IngestOptions::default()).unwrap();
        assert_eq!(first, again);
    }
}
