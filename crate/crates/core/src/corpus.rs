//! Known cyclic quartic fields and the regression check against them.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::certify::certify_z;

/// Integer that reads from a JSON number or a decimal string and writes as a
/// decimal string.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Decimal(pub BigInt);

impl Serialize for Decimal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Decimal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(Decimal(BigInt::from(n))),
            Raw::Text(s) => s
                .trim()
                .parse::<BigInt>()
                .map(Decimal)
                .map_err(|_| serde::de::Error::custom(format!("not an integer: {s:?}"))),
        }
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<i64> for Decimal {
    fn from(n: i64) -> Self {
        Decimal(BigInt::from(n))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub label: String,
    pub conductor: Decimal,
    pub field_disc: Decimal,
    pub source: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family_z: Option<Decimal>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Informational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryOutcome {
    pub label: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub computed_conductor: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub computed_disc: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub mismatches: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusReport {
    pub passed: usize,
    pub failed: usize,
    pub informational: usize,
    pub entries: Vec<EntryOutcome>,
}

impl CorpusReport {
    pub fn is_ok(&self) -> bool {
        self.failed == 0
    }
}

fn check_entry(e: &CorpusEntry) -> EntryOutcome {
    let mut out = EntryOutcome {
        label: e.label.clone(),
        status: Status::Informational,
        computed_conductor: None,
        computed_disc: None,
        mismatches: Vec::new(),
    };
    if !e.conductor.0.is_positive() {
        out.mismatches
            .push(format!("conductor {} is not positive", e.conductor));
    }
    if !e.field_disc.0.is_positive() {
        out.mismatches
            .push(format!("field_disc {} is not positive", e.field_disc));
    }
    if let Some(z) = &e.family_z {
        match certify_z(&z.0) {
            Ok(cert) => {
                let cond = cert.conductor.as_ref().map(ToString::to_string);
                let disc = cert.disc_field.as_ref().map(ToString::to_string);
                if cert.conductor.as_ref() != Some(&e.conductor.0) {
                    let got = cond.as_deref().unwrap_or("none");
                    out.mismatches.push(format!(
                        "conductor: expected {}, computed {got}",
                        e.conductor
                    ));
                }
                if cert.disc_field.as_ref() != Some(&e.field_disc.0) {
                    let got = disc.as_deref().unwrap_or("none");
                    out.mismatches.push(format!(
                        "field_disc: expected {}, computed {got}",
                        e.field_disc
                    ));
                }
                out.computed_conductor = cond;
                out.computed_disc = disc;
            }
            Err(err) => out.mismatches.push(format!("certify_z({z}) failed: {err}")),
        }
    }
    out.status = if !out.mismatches.is_empty() {
        Status::Fail
    } else if e.family_z.is_some() {
        Status::Pass
    } else {
        Status::Informational
    };
    out
}

/// Recomputes every entry with `family_z` through `certify_z`; entries
/// without it are only checked for positivity.
pub fn corpus_check(entries: &[CorpusEntry]) -> CorpusReport {
    let outcomes: Vec<EntryOutcome> = entries.iter().map(check_entry).collect();
    let count = |s: Status| outcomes.iter().filter(|o| o.status == s).count();
    CorpusReport {
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        informational: count(Status::Informational),
        entries: outcomes,
    }
}
