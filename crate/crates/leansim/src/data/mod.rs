//! Election data model: raw race records, the override manifest for special
//! elections, and the aggregation that produces the regression dataset
//! (state-year mean log ratios and the national lean series).

pub mod load;
pub mod states;

pub use load::{load_elections, load_manifest, load_meta, Dataset};
pub use states::{StateCode, STATE_CODES};

use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// First and last election years covered by the model.
pub const FIRST_YEAR: u16 = 1992;
pub const LAST_YEAR: u16 = 2018;
/// Year mapped to t = 0.
pub const REFERENCE_YEAR: u16 = 2020;

/// Federal race type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Race {
    House,
    Senate,
    President,
}

impl FromStr for Race {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "HOUSE" => Ok(Race::House),
            "SENATE" => Ok(Race::Senate),
            "PRESIDENT" => Ok(Race::President),
            other => Err(Error::data(format!("unknown race {other:?}"))),
        }
    }
}

impl fmt::Display for Race {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Race::House => "HOUSE",
            Race::Senate => "SENATE",
            Race::President => "PRESIDENT",
        })
    }
}

/// Whether `dem`/`rep` carry raw vote counts or shares of the total vote.
/// The log ratio is scale invariant, so both feed the model identically.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VoteUnit {
    Counts,
    Shares,
}

impl FromStr for VoteUnit {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "COUNTS" => Ok(VoteUnit::Counts),
            "SHARES" => Ok(VoteUnit::Shares),
            other => Err(Error::data(format!("unknown unit {other:?}"))),
        }
    }
}

impl fmt::Display for VoteUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VoteUnit::Counts => "COUNTS",
            VoteUnit::Shares => "SHARES",
        })
    }
}

/// One statewide race result. House races are pre-summed across a state's
/// districts; `state = US` rows carry the nationwide totals.
#[derive(Debug, Clone, PartialEq)]
pub struct ElectionRecord {
    pub state: StateCode,
    pub year: u16,
    pub race: Race,
    pub dem: f64,
    pub rep: f64,
    pub unit: VoteUnit,
}

impl ElectionRecord {
    /// The (state, year, race) key that overrides address.
    pub fn key(&self) -> (StateCode, u16, Race) {
        (self.state, self.year, self.race)
    }

    /// ln(dem/rep) for this record, with the record named on failure.
    pub fn log_ratio(&self) -> Result<f64> {
        log_ratio(self.dem, self.rep).map_err(|_| {
            Error::data(format!(
                "record {} {} {}: vote values must be strictly positive (dem={}, rep={})",
                self.state, self.year, self.race, self.dem, self.rep
            ))
        })
    }

    fn validate(&self) -> Result<()> {
        if !self.year.is_multiple_of(2) || !(FIRST_YEAR..=LAST_YEAR).contains(&self.year) {
            return Err(Error::data(format!(
                "year {} must be even and within {FIRST_YEAR}-{LAST_YEAR}",
                self.year
            )));
        }
        if !(self.dem.is_finite() && self.rep.is_finite()) || self.dem < 0.0 || self.rep < 0.0 {
            return Err(Error::data(format!(
                "vote values must be finite and nonnegative (dem={}, rep={})",
                self.dem, self.rep
            )));
        }
        if self.unit == VoteUnit::Shares && self.dem + self.rep > 1.0 + 1e-9 {
            return Err(Error::data(format!(
                "shares must sum to at most 1 (dem={}, rep={})",
                self.dem, self.rep
            )));
        }
        Ok(())
    }
}

/// ln(dem/rep). Both inputs must be strictly positive; the result is
/// antisymmetric under swapping the arguments.
pub fn log_ratio(dem: f64, rep: f64) -> Result<f64> {
    if !dem.is_finite() || !rep.is_finite() || dem <= 0.0 || rep <= 0.0 {
        return Err(Error::data(format!(
            "log ratio requires strictly positive vote values, got dem={dem}, rep={rep}"
        )));
    }
    Ok((dem / rep).ln())
}

/// Maps an even election year to its index: 1992 -> -14, 2018 -> -1, 2020 -> 0.
pub fn year_to_t(year: u16) -> Result<i32> {
    if !year.is_multiple_of(2) || year < FIRST_YEAR {
        return Err(Error::data(format!(
            "year {year} must be an even year >= {FIRST_YEAR}"
        )));
    }
    Ok((year as i32 - REFERENCE_YEAR as i32) / 2)
}

/// What an override rule does to its matched record.
#[derive(Debug, Clone, PartialEq)]
pub enum OverrideAction {
    /// Drop the record entirely (one-party runoffs, write-in anomalies, ...).
    Exclude,
    /// Substitute the vote values, e.g. folding an independent's votes into
    /// the Democratic total. Values are in the record's own unit.
    ReplaceVotes { dem: f64, rep: f64 },
}

/// One documented data correction.
#[derive(Debug, Clone, PartialEq)]
pub struct OverrideRule {
    pub state: StateCode,
    pub year: u16,
    pub race: Race,
    pub action: OverrideAction,
    pub reason: String,
}

/// The set of corrections applied before aggregation. Rules are keyed by
/// (state, year, race) and keys must be unique.
#[derive(Debug, Clone, Default)]
pub struct OverrideManifest {
    rules: Vec<OverrideRule>,
}

impl OverrideManifest {
    pub fn new(rules: Vec<OverrideRule>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for rule in &rules {
            if rule.state.is_national() {
                return Err(Error::data(format!(
                    "override rule for {} {} targets the national aggregate",
                    rule.year, rule.race
                )));
            }
            year_to_t(rule.year)?;
            if !seen.insert((rule.state, rule.year, rule.race)) {
                return Err(Error::data(format!(
                    "duplicate override rule for {} {} {}",
                    rule.state, rule.year, rule.race
                )));
            }
        }
        Ok(OverrideManifest { rules })
    }

    pub fn rules(&self) -> &[OverrideRule] {
        &self.rules
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }
}

/// Provenance record for one rule application.
#[derive(Debug, Clone)]
pub struct OverrideLogEntry {
    pub rule: OverrideRule,
    /// False when no record matched the rule's key; surfaced as a warning.
    pub matched: bool,
}

/// Applies the manifest: excluded records are dropped, replaced records get
/// the substituted vote values, everything else passes through unchanged.
/// Returns the surviving records and one log entry per rule.
pub fn apply_overrides(
    records: &[ElectionRecord],
    manifest: &OverrideManifest,
) -> Result<(Vec<ElectionRecord>, Vec<OverrideLogEntry>)> {
    let mut by_key: BTreeMap<(StateCode, u16, Race), &OverrideRule> = BTreeMap::new();
    for rule in manifest.rules() {
        by_key.insert((rule.state, rule.year, rule.race), rule);
    }
    let mut matched: std::collections::BTreeSet<(StateCode, u16, Race)> = Default::default();
    let mut out = Vec::with_capacity(records.len());
    for record in records {
        match by_key.get(&record.key()) {
            Some(rule) => {
                matched.insert(record.key());
                match &rule.action {
                    OverrideAction::Exclude => {}
                    OverrideAction::ReplaceVotes { dem, rep } => {
                        let mut replaced = record.clone();
                        replaced.dem = *dem;
                        replaced.rep = *rep;
                        replaced.validate().map_err(|e| {
                            Error::data(format!(
                                "override for {} {} {} produces invalid record: {e}",
                                rule.state, rule.year, rule.race
                            ))
                        })?;
                        out.push(replaced);
                    }
                }
            }
            None => out.push(record.clone()),
        }
    }
    let log = manifest
        .rules()
        .iter()
        .map(|rule| OverrideLogEntry {
            rule: rule.clone(),
            matched: matched.contains(&(rule.state, rule.year, rule.race)),
        })
        .collect();
    Ok((out, log))
}

/// Mean log ratio for one state in one year.
#[derive(Debug, Clone, PartialEq)]
pub struct StateYearObservation {
    pub state: StateCode,
    pub t: i32,
    pub y: f64,
    pub races_included: u32,
}

/// Nationwide partisan lean for one year index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NationalLean {
    pub t: i32,
    pub x: f64,
}

/// Per-state Electoral College votes, census populations, and Cook PVI
/// (signed, Democratic-positive).
#[derive(Debug, Clone, PartialEq)]
pub struct StateMeta {
    pub state: StateCode,
    pub ec_votes: u32,
    pub pop1990: u64,
    pub pop2000: u64,
    pub pop2010: u64,
    pub cook_pvi: f64,
}

/// One race paired with its own national benchmark, for the un-aggregated
/// diagnostic model.
#[derive(Debug, Clone, PartialEq)]
pub struct RaceObservation {
    pub state: StateCode,
    pub t: i32,
    pub x: f64,
    pub y: f64,
    pub race: Race,
}

/// Averages the per-race log ratios of each (state, year) cell. State-years
/// with no usable race are simply absent from the output. Records must
/// already be override-filtered; national rows are ignored.
pub fn aggregate_state_year(records: &[ElectionRecord]) -> Result<Vec<StateYearObservation>> {
    let mut cells: BTreeMap<(StateCode, i32), (f64, u32)> = BTreeMap::new();
    for record in records {
        if record.state.is_national() {
            continue;
        }
        let t = year_to_t(record.year)?;
        let y = record.log_ratio()?;
        let cell = cells.entry((record.state, t)).or_insert((0.0, 0));
        cell.0 += y;
        cell.1 += 1;
    }
    Ok(cells
        .into_iter()
        .map(|((state, t), (sum, count))| StateYearObservation {
            state,
            t,
            y: sum / count as f64,
            races_included: count,
        })
        .collect())
}

/// National log ratios keyed by (year index, race), for the `US` rows.
fn national_logs(records: &[ElectionRecord]) -> Result<BTreeMap<(i32, Race), f64>> {
    let mut map = BTreeMap::new();
    for record in records.iter().filter(|r| r.state.is_national()) {
        let t = year_to_t(record.year)?;
        if map.insert((t, record.race), record.log_ratio()?).is_some() {
            return Err(Error::data(format!(
                "duplicate national record for {} {}",
                record.year, record.race
            )));
        }
    }
    Ok(map)
}

/// Builds the 14-entry national lean series x_t: the mean of the House and
/// Presidential log ratios in presidential years, the House log ratio alone
/// in midterms.
pub fn national_lean(records: &[ElectionRecord]) -> Result<Vec<NationalLean>> {
    let logs = national_logs(records)?;
    let mut out = Vec::with_capacity(14);
    for year in (FIRST_YEAR..=LAST_YEAR).step_by(2) {
        let t = year_to_t(year)?;
        let house = *logs.get(&(t, Race::House)).ok_or_else(|| {
            Error::data(format!("missing national House record for year {year}"))
        })?;
        let x = if year % 4 == 0 {
            let pres = *logs.get(&(t, Race::President)).ok_or_else(|| {
                Error::data(format!(
                    "missing national Presidential record for year {year}"
                ))
            })?;
            0.5 * (house + pres)
        } else {
            house
        };
        out.push(NationalLean { t, x });
    }
    Ok(out)
}

/// Pairs every statewide race with its own national benchmark: House and
/// Senate races use the national House log ratio of the same year,
/// Presidential races the national Presidential one.
pub fn per_race_observations(records: &[ElectionRecord]) -> Result<Vec<RaceObservation>> {
    let logs = national_logs(records)?;
    let mut out = Vec::new();
    for record in records.iter().filter(|r| !r.state.is_national()) {
        let t = year_to_t(record.year)?;
        let bench_race = match record.race {
            Race::President => Race::President,
            _ => Race::House,
        };
        let x = *logs.get(&(t, bench_race)).ok_or_else(|| {
            Error::data(format!(
                "missing national {bench_race} record for year {}",
                record.year
            ))
        })?;
        out.push(RaceObservation {
            state: record.state,
            t,
            x,
            y: record.log_ratio()?,
            race: record.race,
        });
    }
    out.sort_by(|a, b| (a.state, a.t, a.race).partial_cmp(&(b.state, b.t, b.race)).unwrap());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(state: &str, year: u16, race: Race, dem: f64, rep: f64) -> ElectionRecord {
        ElectionRecord {
            state: state.parse().unwrap(),
            year,
            race,
            dem,
            rep,
            unit: VoteUnit::Counts,
        }
    }

    #[test]
    fn log_ratio_basic() {
        assert_eq!(log_ratio(100.0, 100.0).unwrap(), 0.0);
        let v = log_ratio(48.2, 46.1).unwrap();
        assert!((v - 0.04454607105395179).abs() < 1e-5);
        assert!(log_ratio(0.0, 10.0).is_err());
        assert!(log_ratio(10.0, -1.0).is_err());
    }

    #[test]
    fn log_ratio_antisymmetric() {
        for &(d, r) in &[(3.0, 7.0), (0.51, 0.44), (123456.0, 98765.0)] {
            let fwd = log_ratio(d, r).unwrap();
            let rev = log_ratio(r, d).unwrap();
            assert!((fwd + rev).abs() < 1e-15);
        }
    }

    #[test]
    fn year_index_mapping() {
        assert_eq!(year_to_t(1992).unwrap(), -14);
        assert_eq!(year_to_t(2018).unwrap(), -1);
        assert_eq!(year_to_t(2020).unwrap(), 0);
        assert_eq!(year_to_t(2016).unwrap(), -2);
        assert!(year_to_t(1991).is_err());
        assert!(year_to_t(1990).is_err());
        assert!(year_to_t(2021).is_err());
    }

    #[test]
    fn empty_manifest_is_identity() {
        let records = vec![record("WA", 1992, Race::House, 10.0, 8.0)];
        let manifest = OverrideManifest::default();
        let (out, log) = apply_overrides(&records, &manifest).unwrap();
        assert_eq!(out, records);
        assert!(log.is_empty());
    }

    #[test]
    fn exclude_rule_removes_record() {
        let records = vec![
            record("LA", 1996, Race::House, 10.0, 8.0),
            record("LA", 1996, Race::Senate, 9.0, 8.0),
        ];
        let manifest = OverrideManifest::new(vec![OverrideRule {
            state: "LA".parse().unwrap(),
            year: 1996,
            race: Race::House,
            action: OverrideAction::Exclude,
            reason: "one-party runoffs in at least half the districts".into(),
        }])
        .unwrap();
        let (out, log) = apply_overrides(&records, &manifest).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].race, Race::Senate);
        assert!(log[0].matched);
    }

    #[test]
    fn replace_rule_substitutes_votes() {
        let records = vec![record("VT", 2012, Race::Senate, 20.0, 60.0)];
        let manifest = OverrideManifest::new(vec![OverrideRule {
            state: "VT".parse().unwrap(),
            year: 2012,
            race: Race::Senate,
            action: OverrideAction::ReplaceVotes {
                dem: 95.0,
                rep: 60.0,
            },
            reason: "independent's votes counted as Democratic".into(),
        }])
        .unwrap();
        let (out, _) = apply_overrides(&records, &manifest).unwrap();
        assert_eq!(out[0].dem, 95.0);
        assert_eq!(out[0].rep, 60.0);
    }

    #[test]
    fn unmatched_rule_logged_not_fatal() {
        let records = vec![record("WA", 1992, Race::House, 10.0, 8.0)];
        let manifest = OverrideManifest::new(vec![OverrideRule {
            state: "OR".parse().unwrap(),
            year: 1994,
            race: Race::Senate,
            action: OverrideAction::Exclude,
            reason: "no such record".into(),
        }])
        .unwrap();
        let (out, log) = apply_overrides(&records, &manifest).unwrap();
        assert_eq!(out.len(), 1);
        assert!(!log[0].matched);
    }

    #[test]
    fn manifest_rejects_duplicate_keys() {
        let rule = OverrideRule {
            state: "LA".parse().unwrap(),
            year: 1996,
            race: Race::House,
            action: OverrideAction::Exclude,
            reason: "x".into(),
        };
        assert!(OverrideManifest::new(vec![rule.clone(), rule]).is_err());
    }

    #[test]
    fn washington_1992_average() {
        // Three races with log ratios 0.306, 0.160, 0.305 average to 0.257.
        let recs = vec![
            record("WA", 1992, Race::President, (0.306f64).exp(), 1.0),
            record("WA", 1992, Race::House, (0.160f64).exp(), 1.0),
            record("WA", 1992, Race::Senate, (0.305f64).exp(), 1.0),
        ];
        let obs = aggregate_state_year(&recs).unwrap();
        assert_eq!(obs.len(), 1);
        assert_eq!(obs[0].t, -14);
        assert_eq!(obs[0].races_included, 3);
        assert!((obs[0].y - 0.257).abs() < 1e-12);
    }

    #[test]
    fn single_race_average_is_itself() {
        let recs = vec![record("OR", 2018, Race::House, (0.413f64).exp(), 1.0)];
        let obs = aggregate_state_year(&recs).unwrap();
        assert_eq!(obs.len(), 1);
        assert!((obs[0].y - 0.413).abs() < 1e-12);
        assert_eq!(obs[0].races_included, 1);
    }

    #[test]
    fn national_lean_midterm_and_presidential() {
        let recs = vec![
            record("US", 1992, Race::House, (0.2f64).exp(), 1.0),
            record("US", 1992, Race::President, 1.0, 1.0),
        ];
        // Midterm year with only a House record.
        let mut full: Vec<ElectionRecord> = recs.clone();
        for year in (1994..=2018).step_by(2) {
            full.push(record("US", year, Race::House, (0.1f64).exp(), 1.0));
            if year % 4 == 0 {
                full.push(record("US", year, Race::President, (0.1f64).exp(), 1.0));
            }
        }
        let leans = national_lean(&full).unwrap();
        assert_eq!(leans.len(), 14);
        // 1992: mean of House 0.2 and President 0.0.
        assert!((leans[0].x - 0.1).abs() < 1e-12);
        assert_eq!(leans[0].t, -14);
        // 1994: House alone.
        assert!((leans[1].x - 0.1).abs() < 1e-12);
    }

    #[test]
    fn national_lean_missing_year_is_fatal() {
        let recs = vec![record("US", 1992, Race::House, 2.0, 1.0)];
        let err = national_lean(&recs).unwrap_err();
        assert!(err.to_string().contains("1992") || err.to_string().contains("President"));
    }

    #[test]
    fn per_race_benchmarks_split_by_race() {
        let recs = vec![
            record("US", 1992, Race::House, (0.2f64).exp(), 1.0),
            record("US", 1992, Race::President, (0.4f64).exp(), 1.0),
            record("NV", 1992, Race::Senate, 2.0, 1.0),
            record("NV", 1992, Race::President, 2.0, 1.0),
        ];
        let obs = per_race_observations(&recs).unwrap();
        assert_eq!(obs.len(), 2);
        let senate = obs.iter().find(|o| o.race == Race::Senate).unwrap();
        let pres = obs.iter().find(|o| o.race == Race::President).unwrap();
        assert!((senate.x - 0.2).abs() < 1e-12, "Senate uses House benchmark");
        assert!((pres.x - 0.4).abs() < 1e-12);
    }

    #[test]
    fn shares_validation() {
        let mut rec = record("CA", 2016, Race::House, 0.6, 0.5);
        rec.unit = VoteUnit::Shares;
        assert!(rec.validate().is_err());
        rec.rep = 0.35;
        assert!(rec.validate().is_ok());
    }
}
