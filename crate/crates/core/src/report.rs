//! Batch commands over knot records and their report rows.
//!
//! Every row stores the inputs it was computed from, so [`rerun`] can
//! rebuild it. Batches run on a dedicated rayon pool and keep input order.

use std::fmt::Write as _;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pretzel::{
    check_pretzel1, check_pretzel2, pretzel3_class, pretzel4_class, pretzel_class, PretzelCheck, PretzelParams,
};
use crate::records::{IngestOptions, KnotRecord, RawRecord};
use crate::unknotting::{
    lickorish_solvable, lickorish_witness, u1_obstruction, u2_matches, CaseOutcome, CrossingSign,
    Exclusion, LensSurgeryDescription, ObstructionVerdict, SignChoice, U2Match,
};
use crate::witt::DiagonalForm;

/// What a row was computed from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RowInput {
    Compute { record: RawRecord },
    ObstructU1 { record: RawRecord },
    U2Range { record: RawRecord, lo: u64, hi: u64 },
    U2Table { record: RawRecord, candidates: Vec<RawRecord> },
    Pretzel { strands: Vec<i64> },
    PretzelFamily3 { p1: i64, p3: i64 },
    PretzelFamily4 { p: i64 },
    Lickorish { p: i64, q: i64, det: u64, record: Option<RawRecord> },
}

/// One line of a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub command: String,
    pub name: String,
    /// Diagonal entries of φ.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<Vec<String>>,
    /// Squarefree generators of φ.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi_canonical: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub det: Option<u64>,
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub obstructed: Option<bool>,
    /// Separating prime, or `None` when nothing local separates.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub category: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub survivors: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub detail: Vec<String>,
    pub input: RowInput,
}

impl ReportRow {
    fn new(command: &str, name: impl Into<String>, input: RowInput) -> Self {
        ReportRow {
            command: command.into(),
            name: name.into(),
            phi: None,
            phi_canonical: None,
            sigma: None,
            det: None,
            verdict: String::new(),
            obstructed: None,
            witness: None,
            category: None,
            survivors: None,
            detail: Vec::new(),
            input,
        }
    }

    fn with_phi(mut self, phi: &DiagonalForm) -> Self {
        self.phi = Some(phi.entries().iter().map(ToString::to_string).collect());
        self.phi_canonical = Some(phi.canonical().iter().map(ToString::to_string).collect());
        self
    }
}

/// Rows plus notices about inputs that were skipped.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Batch {
    pub rows: Vec<ReportRow>,
    pub notices: Vec<String>,
}

impl Batch {
    fn extend(&mut self, other: Batch) {
        self.rows.extend(other.rows);
        self.notices.extend(other.notices);
    }
}

/// Maps `f` over `items` on `jobs` threads, preserving order.
pub fn run_parallel<T, R, F>(items: &[T], jobs: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    if jobs <= 1 {
        return items.iter().map(f).collect();
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool")
        .install(|| items.par_iter().map(f).collect())
}

fn collect(results: Vec<Result<Option<ReportRow>>>, names: impl Iterator<Item = String>) -> Batch {
    let mut batch = Batch::default();
    for (result, name) in results.into_iter().zip(names) {
        match result {
            Ok(Some(row)) => batch.rows.push(row),
            Ok(None) => batch.notices.push(format!("{name}: no matrix, skipped")),
            Err(e) => batch.notices.push(format!("{name}: {e}")),
        }
    }
    batch
}

fn record_of(raw: &RawRecord) -> Result<KnotRecord> {
    KnotRecord::from_raw(raw.clone(), IngestOptions::default())
}

pub fn compute_row(record: &KnotRecord) -> Result<ReportRow> {
    let resolved = record.resolve()?;
    let mut row = ReportRow::new("compute", &record.name, RowInput::Compute { record: record.to_raw() });
    if let Some(phi) = &resolved.phi {
        row = row.with_phi(phi);
        row.detail.push(format!("torsion order {}", phi.torsion_order()));
    }
    row.sigma = Some(resolved.sigma);
    row.det = Some(resolved.det);
    row.verdict = "computed".into();
    Ok(row)
}

pub fn compute(records: &[KnotRecord], jobs: usize) -> Batch {
    let results = run_parallel(records, jobs, |r| compute_row(r).map(Some));
    collect(results, records.iter().map(|r| r.name.clone()))
}

fn case_detail(sign: CrossingSign, outcome: &CaseOutcome) -> String {
    match outcome {
        CaseOutcome::Consistent => format!("{sign}: consistent"),
        CaseOutcome::Excluded(Exclusion::Signature) => format!("{sign}: excluded by signature"),
        CaseOutcome::Excluded(Exclusion::Invariants {
            signature_gap,
            separations,
        }) => {
            let mut s = format!("{sign}: excluded");
            if *signature_gap != 0 {
                let _ = write!(s, ", signature gap {signature_gap}");
            }
            for sep in separations {
                let _ = write!(s, "; {sep}");
            }
            s
        }
    }
}

fn verdict_witness(verdict: &ObstructionVerdict) -> Option<String> {
    verdict
        .common_witness()
        .or_else(|| verdict.witness().map(|s| s.prime.clone()))
        .map(|p| p.to_string())
}

/// Unknotting-number-one verdict; `None` when the record has no matrix.
pub fn obstruct_u1_row(record: &KnotRecord) -> Result<Option<ReportRow>> {
    let resolved = record.resolve()?;
    let Some(phi) = resolved.phi else {
        return Ok(None);
    };
    let verdict = u1_obstruction(&phi, resolved.det, resolved.sigma)?;
    let mut row = ReportRow::new("obstruct-u1", &record.name, RowInput::ObstructU1 { record: record.to_raw() })
        .with_phi(&phi);
    row.sigma = Some(resolved.sigma);
    row.det = Some(resolved.det);
    row.verdict = verdict.to_string();
    row.obstructed = Some(verdict.is_obstructed());
    row.witness = verdict_witness(&verdict);
    row.category = Some(verdict.category().label().into());
    row.detail = [CrossingSign::Positive, CrossingSign::Negative]
        .into_iter()
        .map(|s| case_detail(s, verdict.outcome(s)))
        .collect();
    if let Some(true) = record.u1_known {
        if verdict.is_obstructed() {
            row.detail.push("conflicts with the recorded u = 1".into());
        }
    }
    Ok(Some(row))
}

pub fn obstruct_u1(records: &[KnotRecord], jobs: usize) -> Batch {
    let results = run_parallel(records, jobs, obstruct_u1_row);
    collect(results, records.iter().map(|r| r.name.clone()))
}

fn signs_label(signs: Option<SignChoice>) -> &'static str {
    match signs {
        None => "",
        Some(SignChoice::PlusMinus) => " (+,-)",
        Some(SignChoice::MinusPlus) => " (-,+)",
    }
}

fn match_label(m: &U2Match) -> String {
    let sigmas: Vec<String> = m.sigma_l.iter().map(ToString::to_string).collect();
    format!("{}{} sigma(L) in {{{}}}", m.case.name(), signs_label(m.signs), sigmas.join(","))
}

fn u2_base(record: &KnotRecord, input: RowInput) -> Result<Option<(ReportRow, DiagonalForm, u64, i64)>> {
    let resolved = record.resolve()?;
    let Some(phi) = resolved.phi else {
        return Ok(None);
    };
    let mut row = ReportRow::new("obstruct-u2", &record.name, input).with_phi(&phi);
    row.sigma = Some(resolved.sigma);
    row.det = Some(resolved.det);
    Ok(Some((row, phi, resolved.det, resolved.sigma)))
}

/// Odd d in `range` admitting a two-step unknotting through a knot of
/// determinant d.
pub fn obstruct_u2_range(record: &KnotRecord, range: RangeInclusive<u64>) -> Result<Option<ReportRow>> {
    let input = RowInput::U2Range {
        record: record.to_raw(),
        lo: *range.start(),
        hi: *range.end(),
    };
    let Some((mut row, phi, det, sigma)) = u2_base(record, input)? else {
        return Ok(None);
    };
    let mut survivors = Vec::new();
    let mut tested = 0;
    for d in range.filter(|d| d % 2 == 1) {
        tested += 1;
        let matches = u2_matches(&phi, det, sigma, d)?;
        if !matches.is_empty() {
            survivors.push(d.to_string());
            let labels: Vec<String> = matches.iter().map(match_label).collect();
            row.detail.push(format!("d={d}: {}", labels.join("; ")));
        }
    }
    row.verdict = format!("{} of {tested} odd determinants survive", survivors.len());
    row.survivors = Some(survivors);
    Ok(Some(row))
}

fn mirror_name(name: &str) -> String {
    match name.strip_prefix('m') {
        Some(rest) => rest.to_string(),
        None => format!("m{name}"),
    }
}

/// Knots L from `candidates` with u(L) = 1 whose determinant and signature
/// fit a two-step unknotting of `record`. Both chiralities are tried, the
/// mirror being named with an `m` prefix.
pub fn obstruct_u2_table(record: &KnotRecord, candidates: &[KnotRecord]) -> Result<Option<ReportRow>> {
    let input = RowInput::U2Table {
        record: record.to_raw(),
        candidates: candidates.iter().map(KnotRecord::to_raw).collect(),
    };
    let Some((mut row, phi, det, sigma)) = u2_base(record, input)? else {
        return Ok(None);
    };
    let mut survivors = Vec::new();
    let mut skipped = 0;
    for candidate in candidates {
        if candidate.u1_known != Some(true) {
            if candidate.u1_known.is_none() {
                skipped += 1;
            }
            continue;
        }
        let l = candidate.resolve()?;
        let matches = u2_matches(&phi, det, sigma, l.det)?;
        let mut chiralities = vec![(candidate.name.clone(), l.sigma)];
        if l.sigma != 0 {
            chiralities.push((mirror_name(&candidate.name), -l.sigma));
        }
        for (name, sigma_l) in chiralities {
            if let Some(m) = matches.iter().find(|m| m.sigma_l.contains(&sigma_l)) {
                row.detail.push(format!("{name}: det {}, sigma {sigma_l}, {}", l.det, match_label(m)));
                survivors.push(name);
            }
        }
    }
    if skipped > 0 {
        row.detail.push(format!("{skipped} candidates without u data skipped"));
    }
    row.verdict = format!("{} candidate knots survive", survivors.len());
    row.survivors = Some(survivors);
    Ok(Some(row))
}

pub fn obstruct_u2(records: &[KnotRecord], range: Option<RangeInclusive<u64>>, candidates: Option<&[KnotRecord]>, jobs: usize) -> Batch {
    let mut batch = Batch::default();
    if let Some(range) = range {
        let results = run_parallel(records, jobs, |r| obstruct_u2_range(r, range.clone()));
        batch.extend(collect(results, records.iter().map(|r| r.name.clone())));
    }
    if let Some(candidates) = candidates {
        let results = run_parallel(records, jobs, |r| obstruct_u2_table(r, candidates));
        batch.extend(collect(results, records.iter().map(|r| r.name.clone())));
    }
    batch
}

fn strands_name(strands: &[i64]) -> String {
    let parts: Vec<String> = strands.iter().map(ToString::to_string).collect();
    format!("P({})", parts.join(","))
}

fn check_detail(check: &PretzelCheck) -> Vec<String> {
    let mut out = Vec::new();
    if check.signature_gap != 0 {
        out.push(format!("signature gap {}", check.signature_gap));
    }
    out.extend(check.separations.iter().map(ToString::to_string));
    out
}

// (p1, p3) when the strands are a rotation of P(p1, 4 − p1, p3).
fn family3(strands: &[i64]) -> Option<(i64, i64)> {
    let [a, b, c] = *strands else { return None };
    [(a, b, c), (b, c, a), (c, a, b), (b, a, c), (a, c, b), (c, b, a)]
        .into_iter()
        .find(|&(x, y, z)| x >= 7 && x % 2 == 1 && y == 4 - x && z % 2 == 0 && 4 * z > x * (x - 4))
        .map(|(x, _, z)| (x, z))
}

fn family4(strands: &[i64]) -> Option<i64> {
    let [a, b, c, d] = *strands else { return None };
    let mut s = [a, b, c, d];
    s.sort_unstable();
    let p = s[1];
    (p > 0 && p % 2 == 1 && s[1..] == [p, p, p] && s[0] == -3 * p - 1).then_some(p)
}

/// Class, signature and unknotting-number-one verdict of a pretzel knot.
pub fn pretzel_row(strands: &[i64]) -> Result<ReportRow> {
    let params = PretzelParams::new(strands.to_vec())?;
    let class = pretzel_class(&params)?;
    let mut row = ReportRow::new("pretzel", strands_name(strands), RowInput::Pretzel { strands: strands.to_vec() })
        .with_phi(&class.form);
    row.sigma = Some(class.signature);
    row.det = Some(class.det()?);
    let verdict = class.u1_obstruction()?;
    row.detail = [CrossingSign::Positive, CrossingSign::Negative]
        .into_iter()
        .map(|s| case_detail(s, verdict.outcome(s)))
        .collect();
    row.category = Some(verdict.category().label().into());
    let check = match (family3(strands), family4(strands)) {
        (Some((p1, p3)), _) => Some(("check_pretzel1", check_pretzel1(p1, p3)?)),
        (_, Some(p)) => Some(("check_pretzel2", check_pretzel2(p)?)),
        _ => None,
    };
    match check {
        Some((label, check)) => {
            row.verdict = if check.obstructed {
                format!("obstructed ({label})")
            } else {
                format!("not obstructed ({label})")
            };
            row.obstructed = Some(check.obstructed);
            row.witness = check.witness().map(|s| s.prime.to_string());
            row.detail.extend(check_detail(&check));
        }
        None => {
            row.verdict = if class.form.is_empty() {
                format!("trivial class, {verdict}")
            } else {
                verdict.to_string()
            };
            row.obstructed = Some(verdict.is_obstructed());
            row.witness = verdict_witness(&verdict);
        }
    }
    Ok(row)
}

/// check_pretzel1 on P(p1, 4 − p1, p3).
pub fn pretzel_family3_row(p1: i64, p3: i64) -> Result<ReportRow> {
    let check = check_pretzel1(p1, p3)?;
    let mut row = ReportRow::new(
        "pretzel",
        strands_name(&[p1, 4 - p1, p3]),
        RowInput::PretzelFamily3 { p1, p3 },
    );
    let class = pretzel3_class(p1, 4 - p1, p3)?;
    row = row.with_phi(&class.form);
    row.det = Some(class.det()?);
    row.sigma = Some(class.signature);
    fill_check(&mut row, "check_pretzel1", &check);
    Ok(row)
}

/// check_pretzel2 on P(p, p, p, −3p − 1).
pub fn pretzel_family4_row(p: i64) -> Result<ReportRow> {
    let check = check_pretzel2(p)?;
    let mut row = ReportRow::new(
        "pretzel",
        strands_name(&[p, p, p, -3 * p - 1]),
        RowInput::PretzelFamily4 { p },
    );
    let class = pretzel4_class(p, p, p, -3 * p - 1)?;
    row = row.with_phi(&class.form);
    row.det = Some(class.det()?);
    row.sigma = Some(class.signature);
    fill_check(&mut row, "check_pretzel2", &check);
    Ok(row)
}

fn fill_check(row: &mut ReportRow, label: &str, check: &PretzelCheck) {
    row.obstructed = Some(check.obstructed);
    row.verdict = if check.obstructed {
        format!("obstructed ({label})")
    } else {
        format!("not obstructed ({label})")
    };
    row.witness = check.witness().map(|s| s.prime.to_string());
    row.detail = check_detail(check);
}

/// P(base, 4 − base, 2k·base^(ℓ+1)) for k in 1..=`ks`, ℓ in 0..`ls`.
pub fn family3_grid(base: i64, ks: u32, ls: u32) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for l in 0..ls {
        for k in 1..=ks as i64 {
            out.push((base, 2 * k * base.pow(l + 1)));
        }
    }
    out
}

/// p = 2 + (2k + 1)·base^(ℓ+1) for k in 0..`ks`, ℓ in 0..`ls`.
pub fn family4_grid(base: i64, ks: u32, ls: u32) -> Vec<i64> {
    let mut out = Vec::new();
    for l in 0..ls {
        for k in 0..ks as i64 {
            out.push(2 + (2 * k + 1) * base.pow(l + 1));
        }
    }
    out
}

/// Lickorish's test for a knot whose double branched cover is L(p, q).
pub fn lickorish_row(p: i64, q: i64, det: u64, record: Option<&KnotRecord>) -> Result<ReportRow> {
    let lens = LensSurgeryDescription::new(p, q)?;
    let solvable = lickorish_solvable(&lens, det)?;
    let name = record.map_or_else(|| format!("L({p},{q})"), |r| r.name.clone());
    let mut row = ReportRow::new(
        "lickorish",
        name,
        RowInput::Lickorish {
            p,
            q,
            det,
            record: record.map(KnotRecord::to_raw),
        },
    );
    row.det = Some(det);
    row.obstructed = Some(!solvable);
    row.verdict = if solvable {
        "solvable".into()
    } else {
        "no solution: u > 1".into()
    };
    if let Some(t) = lickorish_witness(q, det) {
        row.detail.push(format!("t = {t}"));
    }
    if let Some(record) = record {
        let resolved = record.resolve()?;
        row.sigma = Some(resolved.sigma);
        if let Some(phi) = resolved.phi {
            let trivial = phi.is_equal(&DiagonalForm::zero());
            row.detail.push(if trivial {
                "phi = 0 in W(Q): the Witt class gives no obstruction here".into()
            } else {
                format!("phi = {phi}")
            });
            row = row.with_phi(&phi);
        }
    }
    Ok(row)
}

/// Lickorish rows for records carrying a lens pair.
pub fn lickorish(records: &[KnotRecord], jobs: usize) -> Batch {
    let results = run_parallel(records, jobs, |r| match r.lens {
        Some((p, q)) => lickorish_row(p, q, r.resolve()?.det, Some(r)).map(Some),
        None => Ok(None),
    });
    let mut batch = collect(results, records.iter().map(|r| r.name.clone()));
    for n in &mut batch.notices {
        if n.ends_with("no matrix, skipped") {
            *n = n.replace("no matrix", "no lens");
        }
    }
    batch
}

/// Recomputes a row from its stored inputs.
pub fn rerun(row: &ReportRow) -> Result<ReportRow> {
    let missing = || Error::Parse {
        location: format!("row {:?}", row.name),
        message: "input no longer resolves to a row".into(),
    };
    match &row.input {
        RowInput::Compute { record } => compute_row(&record_of(record)?),
        RowInput::ObstructU1 { record } => obstruct_u1_row(&record_of(record)?)?.ok_or_else(missing),
        RowInput::U2Range { record, lo, hi } => obstruct_u2_range(&record_of(record)?, *lo..=*hi)?.ok_or_else(missing),
        RowInput::U2Table { record, candidates } => {
            let candidates = candidates.iter().map(record_of).collect::<Result<Vec<_>>>()?;
            obstruct_u2_table(&record_of(record)?, &candidates)?.ok_or_else(missing)
        }
        RowInput::Pretzel { strands } => pretzel_row(strands),
        RowInput::PretzelFamily3 { p1, p3 } => pretzel_family3_row(*p1, *p3),
        RowInput::PretzelFamily4 { p } => pretzel_family4_row(*p),
        RowInput::Lickorish { p, q, det, record } => {
            let record = record.as_ref().map(record_of).transpose()?;
            lickorish_row(*p, *q, *det, record.as_ref())
        }
    }
}

fn cell(v: Option<impl ToString>) -> String {
    v.map_or_else(|| "-".to_string(), |v| v.to_string())
}

/// Aligned plain-text table, one line per row plus indented detail lines.
pub fn render_table(rows: &[ReportRow]) -> String {
    let header = ["NAME", "DET", "SIGMA", "VERDICT", "WITNESS", "CAT", "PHI"];
    let cells: Vec<[String; 7]> = rows
        .iter()
        .map(|r| {
            [
                r.name.clone(),
                cell(r.det),
                cell(r.sigma),
                r.verdict.clone(),
                cell(r.witness.as_deref()),
                cell(r.category.as_deref()),
                r.phi.as_ref().map_or_else(|| "-".into(), |p| format!("[{}]", p.join(", "))),
            ]
        })
        .collect();
    let mut widths = header.map(|h| h.chars().count());
    for row in &cells {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |fields: &[String]| {
        let mut s = String::new();
        for (i, (f, w)) in fields.iter().zip(widths).enumerate() {
            if i + 1 == fields.len() {
                s.push_str(f);
            } else {
                let pad = w - f.chars().count();
                let _ = write!(s, "{f}{}  ", " ".repeat(pad));
            }
        }
        s.trim_end().to_string()
    };
    let mut out = line(&header.map(String::from));
    out.push('\n');
    for (row, fields) in rows.iter().zip(&cells) {
        out.push_str(&line(fields));
        out.push('\n');
        for d in &row.detail {
            let _ = writeln!(out, "    {d}");
        }
        if let Some(s) = &row.survivors {
            let _ = writeln!(out, "    survivors: {}", if s.is_empty() { "none".into() } else { s.join(", ") });
        }
    }
    out
}

pub fn render_json(rows: &[ReportRow]) -> String {
    let mut s = serde_json::to_string_pretty(rows).expect("rows serialize");
    s.push('\n');
    s
}

/// One fixture assertion checked by the `report` command.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assertion {
    pub name: String,
    pub passed: bool,
    pub observed: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FixtureReport {
    pub batch: Batch,
    pub assertions: Vec<Assertion>,
}

impl FixtureReport {
    pub fn all_passed(&self) -> bool {
        self.assertions.iter().all(|a| a.passed)
    }

    fn check(&mut self, name: &str, passed: bool, observed: impl Into<String>) {
        self.assertions.push(Assertion {
            name: name.into(),
            passed,
            observed: observed.into(),
        });
    }
}

fn find<'a>(rows: &'a [ReportRow], command: &str, name: &str) -> Option<&'a ReportRow> {
    rows.iter().find(|r| r.command == command && r.name == name)
}

/// Runs every command over the bundled fixtures plus `extra` records and
/// checks the known outcomes. Records with `u1: true` must not be obstructed.
pub fn fixture_report(extra: &[KnotRecord], jobs: usize) -> Result<FixtureReport> {
    use crate::fixtures;

    let mut records = fixtures::worked_knots();
    records.extend(fixtures::extra_knots());
    records.extend(extra.iter().cloned());
    let mut report = FixtureReport::default();
    report.batch.extend(compute(&records, jobs));
    report.batch.extend(obstruct_u1(&records, jobs));

    let m10_47 = fixtures::knot("m10_47").expect("bundled");
    let table = fixtures::candidate_table();
    report.batch.extend(obstruct_u2(
        std::slice::from_ref(&m10_47),
        Some(1..=75),
        Some(&table),
        jobs,
    ));
    let strands: Vec<Vec<i64>> = vec![vec![7, -3, 14], vec![3, -3, 2], vec![1, 1, 2], vec![1, -1, 1, 2]];
    for row in run_parallel(&strands, jobs, |s| pretzel_row(s)) {
        report.batch.rows.push(row?);
    }
    for p in family4_grid(19, 3, 3) {
        report.batch.rows.push(pretzel_family4_row(p)?);
    }
    for (p, q, det) in [(15, 4, 15), (25, 9, 25), (15, 2, 15)] {
        report.batch.rows.push(lickorish_row(p, q, det, None)?);
    }
    let with_lens: Vec<KnotRecord> = records.iter().filter(|r| r.lens.is_some()).cloned().collect();
    report.batch.extend(lickorish(&with_lens, jobs));

    let rows = report.batch.rows.clone();
    let u1 = |name: &str| find(&rows, "obstruct-u1", name);
    let compute_row = |name: &str| find(&rows, "compute", name);

    let r = u1("11a16");
    report.check(
        "11a16 excluded for both signs, common witness 5",
        r.is_some_and(|r| r.obstructed == Some(true) && r.witness.as_deref() == Some("5")),
        r.map_or("missing".into(), |r| r.verdict.clone()),
    );
    let r = u1("12n33");
    report.check(
        "12n33 excluded, 41 separates",
        r.is_some_and(|r| r.obstructed == Some(true) && r.detail.iter().any(|d| d.contains("∂41: ⟨1⟩ vs ⟨3⟩"))),
        r.map_or("missing".into(), |r| r.detail.join(" | ")),
    );
    let r = compute_row("12n33");
    report.check(
        "12n33 det 123, sigma -2",
        r.is_some_and(|r| r.det == Some(123) && r.sigma == Some(-2)),
        r.map_or("missing".into(), |r| format!("det {:?}, sigma {:?}", r.det, r.sigma)),
    );
    let r = compute_row("unknot");
    report.check(
        "unknot computes to the empty form",
        r.is_some_and(|r| r.phi.as_ref().is_some_and(Vec::is_empty) && r.det == Some(1) && r.sigma == Some(0)),
        r.map_or("missing".into(), |r| format!("{:?}", r.phi)),
    );
    for record in records.iter().filter(|r| r.u1_known == Some(true) && r.matrix.is_some()) {
        let r = u1(&record.name);
        report.check(
            &format!("{} (u = 1) is consistent", record.name),
            r.is_some_and(|r| r.obstructed == Some(false)),
            r.map_or("missing".into(), |r| r.verdict.clone()),
        );
    }
    let survivors = |r: &ReportRow| r.survivors.clone().unwrap_or_default().join(",");
    let u2: Vec<&ReportRow> = rows.iter().filter(|r| r.command == "obstruct-u2").collect();
    let range = u2.iter().find(|r| matches!(r.input, RowInput::U2Range { .. }));
    report.check(
        "m10_47 range filter",
        range.is_some_and(|r| survivors(r) == "3,7,11,15,19,27,35,47,55,63,67,71,75"),
        range.map_or("missing".into(), |r| survivors(r)),
    );
    let tab = u2.iter().find(|r| matches!(r.input, RowInput::U2Table { .. }));
    report.check(
        "m10_47 table filter",
        tab.is_some_and(|r| survivors(r) == "3_1,5_2,6_2,7_2,7_6,8_11,8_21,9_2,9_12,m9_26,m9_39,m9_42"),
        tab.map_or("missing".into(), |r| survivors(r)),
    );
    let r = find(&rows, "pretzel", "P(7,-3,14)");
    report.check(
        "P(7,-3,14) obstructed",
        r.is_some_and(|r| r.obstructed == Some(true)),
        r.map_or("missing".into(), |r| r.verdict.clone()),
    );
    let r = find(&rows, "pretzel", "P(3,-3,2)");
    report.check(
        "P(3,-3,2) has the trivial class",
        r.is_some_and(|r| r.phi.as_ref().is_some_and(Vec::is_empty)),
        r.map_or("missing".into(), |r| r.verdict.clone()),
    );
    let family: Vec<&ReportRow> = rows
        .iter()
        .filter(|r| matches!(r.input, RowInput::PretzelFamily4 { .. }))
        .collect();
    report.check(
        "four-strand family at base 19 obstructed on a 3x3 grid",
        family.len() == 9 && family.iter().all(|r| r.obstructed == Some(true)),
        format!("{} of {} obstructed", family.iter().filter(|r| r.obstructed == Some(true)).count(), family.len()),
    );
    for (name, solvable) in [("L(15,4)", false), ("L(25,9)", false), ("L(15,2)", true)] {
        let r = find(&rows, "lickorish", name);
        report.check(
            &format!("{name} {}", if solvable { "solvable" } else { "unsolvable" }),
            r.is_some_and(|r| r.obstructed == Some(!solvable)),
            r.map_or("missing".into(), |r| r.verdict.clone()),
        );
    }
    Ok(report)
}
