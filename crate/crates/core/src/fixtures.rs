//! Bundled knot data.
//!
//! `worked_knots.json` holds the four symmetrized matrices 7̄₄, 5̄₂, 11a₁₆ and
//! 12n₃₃. `extra_knots.json` holds a symmetric matrix realizing φ(1̄0₄₇),
//! Seifert matrices V with det(V − Vᵀ) = 1 lifting each symmetrized matrix,
//! the trefoil, the figure-eight and the 0×0 unknot. `knots_le9.csv` is the
//! (det, σ, u = 1) table of prime knots up to nine crossings.

use crate::records::{parse_csv, parse_json, IngestOptions, KnotRecord};
use crate::unknotting::UnknottingCategory;
use crate::witt::DiagonalForm;

pub const WORKED_KNOTS_JSON: &str = include_str!("../data/worked_knots.json");
pub const EXTRA_KNOTS_JSON: &str = include_str!("../data/extra_knots.json");
pub const KNOTS_LE9_CSV: &str = include_str!("../data/knots_le9.csv");
pub const ELEVEN_CROSSING_EXPECTED_CSV: &str = include_str!("../data/eleven_crossing_expected.csv");

fn load(text: &str, csv: bool) -> Vec<KnotRecord> {
    let opts = IngestOptions::default();
    let got = if csv { parse_csv(text, opts) } else { parse_json(text, opts) }.expect("bundled data parses");
    assert!(got.issues.is_empty(), "bundled data is valid: {:?}", got.issues);
    got.records
}

pub fn worked_knots() -> Vec<KnotRecord> {
    load(WORKED_KNOTS_JSON, false)
}

pub fn extra_knots() -> Vec<KnotRecord> {
    load(EXTRA_KNOTS_JSON, false)
}

/// Scalar records (name, det, σ, u = 1) for prime knots with at most nine crossings.
pub fn candidate_table() -> Vec<KnotRecord> {
    load(KNOTS_LE9_CSV, true)
}

/// A bundled record by name, from either JSON fixture.
pub fn knot(name: &str) -> Option<KnotRecord> {
    worked_knots()
        .into_iter()
        .chain(extra_knots())
        .find(|r| r.name == name)
}

/// Diagonal forms as printed alongside the worked examples.
pub mod printed {
    use super::*;

    fn form(entries: &[(i64, i64)]) -> DiagonalForm {
        DiagonalForm::from_ratios(entries).expect("printed entries are nonzero")
    }

    pub fn m7_4() -> DiagonalForm {
        form(&[(4, 1), (7, 4), (-4, 7), (15, 4)])
    }

    pub fn m5_2() -> DiagonalForm {
        form(&[(4, 1), (7, 4), (-4, 7), (7, 4)])
    }

    pub fn k11a16() -> DiagonalForm {
        form(&[(-2, 1), (-2, 1), (-3, 2), (8, 3), (13, 8), (105, 26)])
    }

    pub fn k12n33() -> DiagonalForm {
        form(&[(-5, 2), (-11, 10), (2, 11), (53, 2), (-22, 53), (-123, 22)])
    }

    /// φ(1̄0₄₇): det 41, σ −4.
    pub fn m10_47() -> DiagonalForm {
        form(&[
            (2, 1),
            (3, 2),
            (-8, 3),
            (-13, 8),
            (-18, 13),
            (-27, 18),
            (-34, 27),
            (-41, 34),
        ])
    }
}

/// Expected unknotting-number-one category of one eleven-crossing knot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectedCategory {
    pub name: String,
    pub sigma: i64,
    pub category: UnknottingCategory,
}

/// The 151 eleven-crossing knots with their expected categories.
pub fn eleven_crossing_expected() -> Vec<ExpectedCategory> {
    let mut reader = csv::Reader::from_reader(ELEVEN_CROSSING_EXPECTED_CSV.as_bytes());
    reader
        .records()
        .map(|row| {
            let row = row.expect("bundled csv parses");
            ExpectedCategory {
                name: row[0].to_string(),
                sigma: row[1].parse().expect("bundled sigma"),
                category: UnknottingCategory::from_label(&row[2]).expect("bundled label"),
            }
        })
        .collect()
}
