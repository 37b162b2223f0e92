//! Synthetic dataset generation.
//!
//! Produces a full 50-state election dataset drawn exactly from the
//! regression model with known per-state parameters, shaped like the real
//! thing: House races every even year, Senate races two of every three even
//! years on a rotating class calendar, presidential races every fourth year,
//! a handful of missing state-years, and an override manifest that the
//! ingestion pipeline must apply. The bundled demo data under `data/demo/`
//! is the output of [`generate`] with [`DEMO_SEED`].
//!
//! The parameter table is invented but plausible; it exists so the examples
//! and end-to-end tests can run the whole pipeline without any external
//! data.

use crate::data::{
    log_ratio, year_to_t, ElectionRecord, OverrideAction, OverrideManifest, OverrideRule, Race,
    StateCode, StateMeta, VoteUnit, FIRST_YEAR, LAST_YEAR,
};
use crate::error::Result;
use crate::rng::RngStream;
use crate::stats::sample_std_normal;
use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

/// Seed behind the committed demo dataset.
pub const DEMO_SEED: u64 = 2020;

/// Ground-truth regression parameters for one synthetic state.
#[derive(Debug, Clone, Copy)]
pub struct SynthTruth {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub sigma: f64,
}

/// state, ec_votes, pop1990/2000/2010 (thousands), alpha, beta, gamma, sigma.
type StateRow = (&'static str, u32, u64, u64, u64, f64, f64, f64, f64);

#[rustfmt::skip]
const STATE_TABLE: [StateRow; 50] = [
    ("AK",  3,   550,   627,   710, -0.32,  0.70,  0.010, 0.140),
    ("AL",  9,  4040,  4447,  4780, -0.58,  0.85, -0.045, 0.110),
    ("AR",  6,  2351,  2673,  2916, -0.50,  1.05, -0.085, 0.130),
    ("AZ", 11,  3665,  5131,  6392, -0.12,  0.80,  0.018, 0.100),
    ("CA", 55, 29760, 33872, 37254,  0.52,  1.10,  0.022, 0.045),
    ("CO",  9,  3294,  4301,  5029,  0.10,  1.00,  0.028, 0.085),
    ("CT",  7,  3287,  3406,  3574,  0.42,  0.95,  0.008, 0.075),
    ("DE",  3,   666,   784,   898,  0.40,  0.90,  0.005, 0.115),
    ("FL", 29, 12938, 15982, 18801, -0.06,  0.75, -0.004, 0.065),
    ("GA", 16,  6478,  8186,  9688, -0.22,  0.90,  0.030, 0.090),
    ("HI",  4,  1108,  1212,  1360,  0.95,  0.60,  0.012, 0.150),
    ("IA",  6,  2777,  2926,  3046, -0.05,  1.25, -0.030, 0.100),
    ("ID",  4,  1007,  1294,  1568, -0.78,  0.95, -0.015, 0.160),
    ("IL", 20, 11431, 12419, 12831,  0.33,  1.00,  0.010, 0.060),
    ("IN", 11,  5544,  6080,  6484, -0.30,  1.10, -0.012, 0.085),
    ("KS",  6,  2478,  2688,  2853, -0.52,  0.90, -0.001, 0.120),
    ("KY",  8,  3685,  4042,  4339, -0.55,  1.15, -0.065, 0.100),
    ("LA",  8,  4220,  4469,  4533, -0.42, -0.30, -0.060, 0.140),
    ("MA", 11,  6016,  6349,  6548,  0.72,  0.80,  0.010, 0.090),
    ("MD", 10,  4781,  5296,  5774,  0.55,  0.85,  0.012, 0.080),
    ("ME",  4,  1228,  1275,  1328,  0.25,  1.05, -0.020, 0.120),
    ("MI", 16,  9295,  9938,  9884,  0.12,  1.05, -0.010, 0.070),
    ("MN", 10,  4375,  4919,  5304,  0.15,  1.10, -0.015, 0.080),
    ("MO", 10,  5117,  5595,  5989, -0.28,  1.00, -0.040, 0.075),
    ("MS",  6,  2573,  2845,  2967, -0.40,  0.75, -0.020, 0.120),
    ("MT",  3,   799,   902,   989, -0.40,  1.00, -0.012, 0.150),
    ("NC", 15,  6629,  8049,  9535, -0.10,  0.85,  0.015, 0.070),
    ("ND",  3,   639,   642,   673, -0.72,  1.20, -0.130, 0.210),
    ("NE",  5,  1578,  1711,  1826, -0.68,  1.75, -0.020, 0.130),
    ("NH",  4,  1109,  1236,  1316,  0.06,  1.20,  0.012, 0.110),
    ("NJ", 14,  7730,  8414,  8792,  0.38,  0.90,  0.005, 0.070),
    ("NM",  5,  1515,  1819,  2059,  0.18,  0.95,  0.010, 0.110),
    ("NV",  6,  1202,  1998,  2701,  0.04,  1.05,  0.012, 0.115),
    ("NY", 29, 17990, 18976, 19378,  0.58,  0.95,  0.012, 0.055),
    ("OH", 18, 10847, 11353, 11537, -0.12,  1.05, -0.028, 0.065),
    ("OK",  7,  3146,  3451,  3751, -0.75,  0.85, -0.030, 0.130),
    ("OR",  7,  2842,  3421,  3831,  0.22,  1.00,  0.015, 0.090),
    ("PA", 20, 11882, 12281, 12702,  0.02,  0.95, -0.012, 0.060),
    ("RI",  4,  1003,  1048,  1053,  0.60,  0.25, -0.010, 0.130),
    ("SC",  9,  3487,  4012,  4625, -0.35,  0.80,  0.010, 0.100),
    ("SD",  3,   696,   755,   814, -0.55,  1.10, -0.040, 0.170),
    ("TN", 11,  4877,  5689,  6346, -0.48,  1.00, -0.070, 0.100),
    ("TX", 38, 16986, 20852, 25146, -0.28,  0.90,  0.022, 0.055),
    ("UT",  6,  1723,  2233,  2764, -0.88,  0.80,  0.005, 0.150),
    ("VA", 13,  6187,  7079,  8001,  0.08,  0.90,  0.032, 0.080),
    ("VT",  3,   563,   609,   626,  0.80,  1.00,  0.034, 0.160),
    ("WA", 12,  4867,  5894,  6725,  0.35,  0.95,  0.015, 0.070),
    ("WI", 10,  4892,  5364,  5687,  0.01,  1.15, -0.014, 0.085),
    ("WV",  5,  1793,  1808,  1853, -0.45,  1.30, -0.110, 0.140),
    ("WY",  3,   454,   494,   564, -1.02,  0.90, -0.018, 0.190),
];

/// National House log ratios per year, and presidential two-party shares for
/// every fourth year (loosely modeled on the real series).
#[rustfmt::skip]
const NATIONAL_HOUSE_LOG: [(u16, f64); 14] = [
    (1992,  0.048), (1994, -0.104), (1996,  0.001), (1998, -0.022),
    (2000, -0.011), (2002, -0.094), (2004, -0.054), (2006,  0.148),
    (2008,  0.209), (2010, -0.135), (2012,  0.024), (2014, -0.118),
    (2016,  0.012), (2018,  0.170),
];
#[rustfmt::skip]
const NATIONAL_PRES_SHARES: [(u16, f64, f64); 7] = [
    (1992, 0.4301, 0.3745),
    (1996, 0.4924, 0.4071),
    (2000, 0.4838, 0.4785),
    (2004, 0.4827, 0.5073),
    (2008, 0.5293, 0.4565),
    (2012, 0.5106, 0.4720),
    (2016, 0.4818, 0.4609),
];

/// State-years with no usable race at all.
const MISSING_CELLS: [(&str, u16); 5] = [
    ("LA", 1994),
    ("MA", 2002),
    ("VT", 2002),
    ("WV", 1998),
    ("WV", 2018),
];

/// A generated dataset plus the ground truth it was drawn from.
#[derive(Debug, Clone)]
pub struct SynthDataset {
    pub elections: Vec<ElectionRecord>,
    pub meta: Vec<StateMeta>,
    pub manifest: OverrideManifest,
    pub truth: BTreeMap<StateCode, SynthTruth>,
}

fn year_class(year: u16) -> u16 {
    ((year - FIRST_YEAR) / 2) % 3
}

fn has_senate_race(ordinal: usize, year: u16) -> bool {
    let class = year_class(year) as usize;
    class == ordinal % 3 || class == (ordinal + 1) % 3
}

/// Converts a log ratio into a two-party vote split of roughly `total` votes.
fn votes_from_log(y: f64, total: f64) -> (f64, f64) {
    let p = 1.0 / (1.0 + (-y).exp());
    let dem = (total * p).round();
    let rep = (total - dem).round().max(1.0);
    (dem, rep)
}

/// Generates the synthetic dataset. Deterministic in `seed`.
pub fn generate(seed: u64) -> SynthDataset {
    let mut rng = RngStream::new(seed, 0);
    let mut elections = Vec::new();
    let mut meta = Vec::new();
    let mut truth = BTreeMap::new();
    let mut rules = Vec::new();

    // National benchmark rows.
    let house_log: BTreeMap<u16, f64> = NATIONAL_HOUSE_LOG.iter().copied().collect();
    let pres_log: BTreeMap<u16, f64> = NATIONAL_PRES_SHARES
        .iter()
        .map(|&(year, d, r)| (year, log_ratio(d, r).expect("positive shares")))
        .collect();
    for &(year, log) in &NATIONAL_HOUSE_LOG {
        let (dem, rep) = votes_from_log(log, 95_000_000.0);
        elections.push(ElectionRecord {
            state: StateCode::NATIONAL,
            year,
            race: Race::House,
            dem,
            rep,
            unit: VoteUnit::Counts,
        });
    }
    for &(year, dem, rep) in &NATIONAL_PRES_SHARES {
        elections.push(ElectionRecord {
            state: StateCode::NATIONAL,
            year,
            race: Race::President,
            dem,
            rep,
            unit: VoteUnit::Shares,
        });
    }

    for (i, &(code, ec, pop90, pop00, pop10, alpha, beta, gamma, sigma)) in
        STATE_TABLE.iter().enumerate()
    {
        let state: StateCode = code.parse().expect("table codes are valid");
        debug_assert_eq!(state.ordinal(), Some(i));
        // Rounded to the precision written to state_meta.csv so the dataset
        // round-trips bit-exactly.
        let pvi = ((alpha * 0.95 + ((i * 37 % 11) as f64 - 5.0) * 0.004) * 1e4).round() / 1e4;
        meta.push(StateMeta {
            state,
            ec_votes: ec,
            pop1990: pop90 * 1000,
            pop2000: pop00 * 1000,
            pop2010: pop10 * 1000,
            cook_pvi: pvi,
        });
        truth.insert(
            state,
            SynthTruth {
                alpha,
                beta,
                gamma,
                sigma,
            },
        );

        for year in (FIRST_YEAR..=LAST_YEAR).step_by(2) {
            if MISSING_CELLS.contains(&(code, year)) {
                continue;
            }
            let t = year_to_t(year).unwrap() as f64;
            let mut races = vec![Race::House];
            if has_senate_race(i, year) {
                races.push(Race::Senate);
            }
            if year % 4 == 0 {
                races.push(Race::President);
            }
            for race in races {
                let x = match race {
                    Race::President => pres_log[&year],
                    _ => house_log[&year],
                };
                let y = alpha + beta * x + gamma * t + sigma * sample_std_normal(&mut rng);
                let turnout = match race {
                    Race::House => 0.35,
                    Race::Senate => 0.33,
                    Race::President => 0.42,
                };
                let total = pop10 as f64 * 1000.0 * turnout;
                let (dem, rep) = votes_from_log(y, total);
                let record = match race {
                    // Presidential rows ship as shares of the full vote, with
                    // minor parties holding 3%; the ratio is unchanged.
                    Race::President => {
                        let two_party = dem + rep;
                        ElectionRecord {
                            state,
                            year,
                            race,
                            dem: round6(dem / two_party * 0.97),
                            rep: round6(rep / two_party * 0.97),
                            unit: VoteUnit::Shares,
                        }
                    }
                    _ => ElectionRecord {
                        state,
                        year,
                        race,
                        dem,
                        rep,
                        unit: VoteUnit::Counts,
                    },
                };

                // Two manufactured corrections exercising the manifest:
                // LA's 1996 House race ships but is excluded, and VT's 2012
                // Senate race ships with the Democratic votes split off to an
                // independent, restored by a REPLACE rule.
                if code == "LA" && year == 1996 && race == Race::House {
                    rules.push(OverrideRule {
                        state,
                        year,
                        race,
                        action: OverrideAction::Exclude,
                        reason: "one-party runoffs in at least half the districts".into(),
                    });
                    elections.push(record);
                    continue;
                }
                if code == "VT" && year == 2012 && race == Race::Senate {
                    let mut split = record.clone();
                    split.dem = (record.dem * 0.45).round();
                    rules.push(OverrideRule {
                        state,
                        year,
                        race,
                        action: OverrideAction::ReplaceVotes {
                            dem: record.dem,
                            rep: record.rep,
                        },
                        reason: "independent's votes counted toward the Democratic total".into(),
                    });
                    elections.push(split);
                    continue;
                }
                elections.push(record);
            }
        }
    }

    elections.sort_by_key(|r| r.key());
    SynthDataset {
        elections,
        meta,
        manifest: OverrideManifest::new(rules).expect("generated rules are unique"),
        truth,
    }
}

fn round6(v: f64) -> f64 {
    (v * 1e6).round() / 1e6
}

fn format_votes(v: f64, unit: VoteUnit) -> String {
    match unit {
        VoteUnit::Counts => format!("{v:.0}"),
        VoteUnit::Shares => format!("{v:.6}"),
    }
}

impl SynthDataset {
    /// Writes `elections.csv`, `state_meta.csv`, and `overrides.csv` into a
    /// directory.
    pub fn write_to_dir(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;

        let mut f = std::fs::File::create(dir.join("elections.csv"))?;
        writeln!(f, "state,year,race,dem,rep,unit")?;
        for r in &self.elections {
            writeln!(
                f,
                "{},{},{},{},{},{}",
                r.state,
                r.year,
                r.race,
                format_votes(r.dem, r.unit),
                format_votes(r.rep, r.unit),
                r.unit
            )?;
        }

        let mut f = std::fs::File::create(dir.join("state_meta.csv"))?;
        writeln!(f, "state,ec_votes,pop1990,pop2000,pop2010,cook_pvi")?;
        for m in &self.meta {
            writeln!(
                f,
                "{},{},{},{},{},{:.4}",
                m.state, m.ec_votes, m.pop1990, m.pop2000, m.pop2010, m.cook_pvi
            )?;
        }

        let mut f = std::fs::File::create(dir.join("overrides.csv"))?;
        writeln!(f, "state,year,race,action,dem,rep,reason")?;
        for rule in self.manifest.rules() {
            let (action, dem, rep) = match &rule.action {
                OverrideAction::Exclude => ("EXCLUDE", String::new(), String::new()),
                OverrideAction::ReplaceVotes { dem, rep } => {
                    ("REPLACE", format!("{dem:.0}"), format!("{rep:.0}"))
                }
            };
            writeln!(
                f,
                "{},{},{},{action},{dem},{rep},{}",
                rule.state, rule.year, rule.race, rule.reason
            )?;
        }
        Ok(())
    }
}
