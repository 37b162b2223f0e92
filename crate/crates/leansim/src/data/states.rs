//! The 50 modeled states. The District of Columbia is deliberately absent:
//! its 3 Electoral College votes enter the simulation as a constant.

use crate::error::{Error, Result};
use std::fmt;
use std::str::FromStr;

/// Two-letter postal codes in ascending order; a state's position here is its
/// ordinal, used to derive per-state random streams.
pub const STATE_CODES: [&str; 50] = [
    "AK", "AL", "AR", "AZ", "CA", "CO", "CT", "DE", "FL", "GA", "HI", "IA", "ID", "IL", "IN",
    "KS", "KY", "LA", "MA", "MD", "ME", "MI", "MN", "MO", "MS", "MT", "NC", "ND", "NE", "NH",
    "NJ", "NM", "NV", "NY", "OH", "OK", "OR", "PA", "RI", "SC", "SD", "TN", "TX", "UT", "VA",
    "VT", "WA", "WI", "WV", "WY",
];

/// A validated state code, or the national aggregate `US`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateCode([u8; 2]);

impl StateCode {
    /// The `US` pseudo-code carrying nationwide totals.
    pub const NATIONAL: StateCode = StateCode(*b"US");

    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.0).expect("state codes are ASCII")
    }

    pub fn is_national(&self) -> bool {
        *self == Self::NATIONAL
    }

    /// Position in [`STATE_CODES`]; `None` for the national code.
    pub fn ordinal(&self) -> Option<usize> {
        STATE_CODES.binary_search(&self.as_str()).ok()
    }

    /// All 50 state codes in ordinal order.
    pub fn all_states() -> impl Iterator<Item = StateCode> {
        STATE_CODES.iter().map(|s| StateCode::from_str(s).unwrap())
    }
}

impl FromStr for StateCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bytes = s.as_bytes();
        if bytes.len() == 2 && bytes.iter().all(|b| b.is_ascii_uppercase()) {
            let code = StateCode([bytes[0], bytes[1]]);
            if code.is_national() || code.ordinal().is_some() {
                return Ok(code);
            }
        }
        Err(Error::data(format!("unknown state code {s:?}")))
    }
}

impl fmt::Display for StateCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}
