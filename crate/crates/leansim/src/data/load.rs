//! CSV ingestion with per-row validation.
//!
//! Three files feed the pipeline:
//!
//! * `elections.csv` — header `state,year,race,dem,rep,unit`
//! * `state_meta.csv` — header `state,ec_votes,pop1990,pop2000,pop2010,cook_pvi`
//! * `overrides.csv` — header `state,year,race,action,dem,rep,reason`
//!
//! Any malformed row aborts the load with its file, row number, and reason.

use super::{
    aggregate_state_year, apply_overrides, national_lean, ElectionRecord, NationalLean,
    OverrideAction, OverrideLogEntry, OverrideManifest, OverrideRule, Race, StateCode, StateMeta,
    StateYearObservation, VoteUnit,
};
use crate::error::{Error, Result};
use std::collections::BTreeSet;
use std::path::Path;
use std::str::FromStr;

/// Total Electoral College votes across the 50 modeled states (538 minus
/// DC's 3).
pub const STATE_EC_TOTAL: u32 = 535;

fn file_name(path: &Path) -> String {
    path.file_name()
        .map(|f| f.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn open_reader(path: &Path, expected_header: &[&str]) -> Result<csv::Reader<std::fs::File>> {
    let file = std::fs::File::open(path)
        .map_err(|e| Error::data(format!("cannot open {}: {e}", path.display())))?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(file);
    let header = reader
        .headers()
        .map_err(|e| Error::data(format!("{}: cannot read header: {e}", file_name(path))))?;
    let got: Vec<&str> = header.iter().collect();
    if got != expected_header {
        return Err(Error::data(format!(
            "{}: expected header {}, got {}",
            file_name(path),
            expected_header.join(","),
            got.join(",")
        )));
    }
    Ok(reader)
}

fn field(record: &csv::StringRecord, idx: usize) -> &str {
    record.get(idx).unwrap_or("")
}

fn parse_num<T: FromStr>(file: &str, row: usize, name: &str, raw: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    raw.parse::<T>()
        .map_err(|e| Error::row(file, row, format!("invalid {name} {raw:?}: {e}")))
}

/// Loads and validates `elections.csv`. Enforces the schema, known state
/// codes, even in-range years, nonnegative votes, and at most one record per
/// (state, year, race).
pub fn load_elections(path: &Path) -> Result<Vec<ElectionRecord>> {
    let fname = file_name(path);
    let mut reader = open_reader(path, &["state", "year", "race", "dem", "rep", "unit"])?;
    let mut records = Vec::new();
    let mut seen: BTreeSet<(StateCode, u16, Race)> = BTreeSet::new();
    for (i, row) in reader.records().enumerate() {
        let rownum = i + 2; // header is row 1
        let row = row.map_err(|e| Error::row(&fname, rownum, e))?;
        if row.len() != 6 {
            return Err(Error::row(&fname, rownum, "expected 6 fields"));
        }
        let state: StateCode = field(&row, 0)
            .parse()
            .map_err(|e| Error::row(&fname, rownum, e))?;
        let year: u16 = parse_num(&fname, rownum, "year", field(&row, 1))?;
        let race: Race = field(&row, 2)
            .parse()
            .map_err(|e| Error::row(&fname, rownum, e))?;
        let dem: f64 = parse_num(&fname, rownum, "dem", field(&row, 3))?;
        let rep: f64 = parse_num(&fname, rownum, "rep", field(&row, 4))?;
        let unit: VoteUnit = field(&row, 5)
            .parse()
            .map_err(|e| Error::row(&fname, rownum, e))?;
        let record = ElectionRecord {
            state,
            year,
            race,
            dem,
            rep,
            unit,
        };
        record
            .validate()
            .map_err(|e| Error::row(&fname, rownum, e))?;
        if !seen.insert(record.key()) {
            return Err(Error::row(
                &fname,
                rownum,
                format!("duplicate record for {state} {year} {race}"),
            ));
        }
        records.push(record);
    }
    Ok(records)
}

/// Loads and validates `state_meta.csv`: exactly the 50 states, EC votes of
/// at least 3 summing to 535, positive populations.
pub fn load_meta(path: &Path) -> Result<Vec<StateMeta>> {
    let fname = file_name(path);
    let mut reader = open_reader(
        path,
        &["state", "ec_votes", "pop1990", "pop2000", "pop2010", "cook_pvi"],
    )?;
    let mut rows = Vec::new();
    let mut seen: BTreeSet<StateCode> = BTreeSet::new();
    for (i, row) in reader.records().enumerate() {
        let rownum = i + 2;
        let row = row.map_err(|e| Error::row(&fname, rownum, e))?;
        if row.len() != 6 {
            return Err(Error::row(&fname, rownum, "expected 6 fields"));
        }
        let state: StateCode = field(&row, 0)
            .parse()
            .map_err(|e| Error::row(&fname, rownum, e))?;
        if state.is_national() {
            return Err(Error::row(&fname, rownum, "US is not a state"));
        }
        let ec_votes: u32 = parse_num(&fname, rownum, "ec_votes", field(&row, 1))?;
        let pop1990: u64 = parse_num(&fname, rownum, "pop1990", field(&row, 2))?;
        let pop2000: u64 = parse_num(&fname, rownum, "pop2000", field(&row, 3))?;
        let pop2010: u64 = parse_num(&fname, rownum, "pop2010", field(&row, 4))?;
        let cook_pvi: f64 = parse_num(&fname, rownum, "cook_pvi", field(&row, 5))?;
        if ec_votes < 3 {
            return Err(Error::row(&fname, rownum, "ec_votes must be at least 3"));
        }
        if pop1990 == 0 || pop2000 == 0 || pop2010 == 0 {
            return Err(Error::row(&fname, rownum, "populations must be positive"));
        }
        if !cook_pvi.is_finite() {
            return Err(Error::row(&fname, rownum, "cook_pvi must be finite"));
        }
        if !seen.insert(state) {
            return Err(Error::row(&fname, rownum, format!("duplicate state {state}")));
        }
        rows.push(StateMeta {
            state,
            ec_votes,
            pop1990,
            pop2000,
            pop2010,
            cook_pvi,
        });
    }
    if rows.len() != 50 {
        return Err(Error::data(format!(
            "{fname}: expected 50 states, got {}",
            rows.len()
        )));
    }
    let total: u32 = rows.iter().map(|r| r.ec_votes).sum();
    if total != STATE_EC_TOTAL {
        return Err(Error::data(format!(
            "{fname}: EC votes sum to {total}, expected {STATE_EC_TOTAL}"
        )));
    }
    rows.sort_by_key(|r| r.state);
    Ok(rows)
}

/// Loads and validates `overrides.csv`.
pub fn load_manifest(path: &Path) -> Result<OverrideManifest> {
    let fname = file_name(path);
    let mut reader = open_reader(
        path,
        &["state", "year", "race", "action", "dem", "rep", "reason"],
    )?;
    let mut rules = Vec::new();
    for (i, row) in reader.records().enumerate() {
        let rownum = i + 2;
        let row = row.map_err(|e| Error::row(&fname, rownum, e))?;
        if row.len() != 7 {
            return Err(Error::row(&fname, rownum, "expected 7 fields"));
        }
        let state: StateCode = field(&row, 0)
            .parse()
            .map_err(|e| Error::row(&fname, rownum, e))?;
        let year: u16 = parse_num(&fname, rownum, "year", field(&row, 1))?;
        let race: Race = field(&row, 2)
            .parse()
            .map_err(|e| Error::row(&fname, rownum, e))?;
        let action = match field(&row, 3) {
            "EXCLUDE" => {
                if !field(&row, 4).is_empty() || !field(&row, 5).is_empty() {
                    return Err(Error::row(
                        &fname,
                        rownum,
                        "EXCLUDE rows must leave dem/rep blank",
                    ));
                }
                OverrideAction::Exclude
            }
            "REPLACE" => {
                let dem: f64 = parse_num(&fname, rownum, "dem", field(&row, 4))?;
                let rep: f64 = parse_num(&fname, rownum, "rep", field(&row, 5))?;
                OverrideAction::ReplaceVotes { dem, rep }
            }
            other => {
                return Err(Error::row(
                    &fname,
                    rownum,
                    format!("unknown action {other:?}"),
                ))
            }
        };
        rules.push(OverrideRule {
            state,
            year,
            race,
            action,
            reason: field(&row, 6).to_string(),
        });
    }
    OverrideManifest::new(rules)
}

/// A fully ingested dataset: override-filtered records plus the derived
/// aggregates the regression consumes. Construction is deterministic, so the
/// same input files always produce an identical dataset.
#[derive(Debug, Clone)]
pub struct Dataset {
    /// Records after override application (state and national rows).
    pub records: Vec<ElectionRecord>,
    pub meta: Vec<StateMeta>,
    pub override_log: Vec<OverrideLogEntry>,
    pub observations: Vec<StateYearObservation>,
    pub national: Vec<NationalLean>,
}

impl Dataset {
    /// Loads the three CSV files and runs the ingestion pipeline. The
    /// overrides path is optional; without it no corrections are applied.
    pub fn load(elections: &Path, meta: &Path, overrides: Option<&Path>) -> Result<Dataset> {
        let raw = load_elections(elections)?;
        let manifest = match overrides {
            Some(path) => load_manifest(path)?,
            None => OverrideManifest::default(),
        };
        let meta = load_meta(meta)?;
        Dataset::from_parts(raw, meta, &manifest)
    }

    /// Same pipeline for records already in memory.
    pub fn from_parts(
        raw: Vec<ElectionRecord>,
        meta: Vec<StateMeta>,
        manifest: &OverrideManifest,
    ) -> Result<Dataset> {
        let (records, override_log) = apply_overrides(&raw, manifest)?;
        let observations = aggregate_state_year(&records)?;
        let national = national_lean(&records)?;
        Ok(Dataset {
            records,
            meta,
            override_log,
            observations,
            national,
        })
    }

    pub fn meta_for(&self, state: StateCode) -> Option<&StateMeta> {
        self.meta.iter().find(|m| m.state == state)
    }

    /// Actual national popular-vote shares for a presidential year, from the
    /// ingested `US` record.
    pub fn presidential_shares(&self, year: u16) -> Result<(f64, f64)> {
        self.records
            .iter()
            .find(|r| r.state.is_national() && r.year == year && r.race == Race::President)
            .map(|r| (r.dem, r.rep))
            .ok_or_else(|| {
                Error::data(format!(
                    "no national Presidential record for year {year} in the dataset"
                ))
            })
    }
}
