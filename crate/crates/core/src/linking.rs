//! Virtual linking numbers, the closed-form `X_n` counts of a two-component
//! link, and recovery of `|lk|` from those counts.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gauss::SignedGaussCode;
use crate::homcount::{count, CountOptions, HomError, Method};
use crate::quandle::make_xn;
use crate::wirtinger::presentation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinkingError {
    #[error("expected a two-component link, found {0} components")]
    ComponentCount(usize),
    #[error("component {index} out of range (link has {count})")]
    ComponentOutOfRange { index: usize, count: usize },
    #[error("linking numbers need two distinct components")]
    SameComponent,
    #[error("n = {0} is below 2")]
    SmallN(u32),
    #[error("no count supplied for n = {0}")]
    MissingCount(u32),
    #[error("count {count} for n = {n} is not one of (n+1)^2, (n+1)^2-n, n^2+1")]
    InconsistentCount { n: u32, count: u64 },
    #[error(transparent)]
    Hom(#[from] HomError),
}

/// An exact multiple of one half, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInteger(i64);

impl HalfInteger {
    pub fn from_twice(twice: i64) -> Self {
        HalfInteger(twice)
    }

    pub fn twice(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl std::str::FromStr for HalfInteger {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("{s:?} is not an integer or a half-integer");
        match s.strip_suffix("/2") {
            Some(num) => {
                let twice: i64 = num.parse().map_err(|_| bad())?;
                if twice % 2 == 0 {
                    return Err(bad());
                }
                Ok(HalfInteger(twice))
            }
            None => {
                let v: i64 = s.parse().map_err(|_| bad())?;
                Ok(HalfInteger(v.checked_mul(2).ok_or_else(bad)?))
            }
        }
    }
}

impl Serialize for HalfInteger {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for HalfInteger {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkingProfile {
    /// 0-based indices of the two components.
    pub components: (usize, usize),
    /// Sum of signs where the first component passes over the second.
    pub lk_over: i64,
    /// Sum of signs where the second component passes over the first.
    pub lk_under: i64,
    /// The average of the two.
    pub lk_classical: HalfInteger,
}

pub fn virtual_linking_numbers(
    code: &SignedGaussCode,
    i: usize,
    j: usize,
) -> Result<LinkingProfile, LinkingError> {
    let count = code.component_count();
    for index in [i, j] {
        if index >= count {
            return Err(LinkingError::ComponentOutOfRange { index, count });
        }
    }
    if i == j {
        return Err(LinkingError::SameComponent);
    }
    let (mut lk_over, mut lk_under) = (0, 0);
    for site in code.crossings().values() {
        match (site.over.0, site.under.0) {
            (o, u) if o == i && u == j => lk_over += site.sign.value(),
            (o, u) if o == j && u == i => lk_under += site.sign.value(),
            _ => {}
        }
    }
    Ok(LinkingProfile {
        components: (i, j),
        lk_over,
        lk_under,
        lk_classical: HalfInteger(lk_over + lk_under),
    })
}

/// Linking numbers of a two-component link, first component over second.
pub fn linking_profile(code: &SignedGaussCode) -> Result<LinkingProfile, LinkingError> {
    require_two_components(code)?;
    virtual_linking_numbers(code, 0, 1)
}

fn require_two_components(code: &SignedGaussCode) -> Result<(), LinkingError> {
    match code.component_count() {
        2 => Ok(()),
        c => Err(LinkingError::ComponentCount(c)),
    }
}

fn divides(n: u64, m: i64) -> bool {
    m.unsigned_abs().is_multiple_of(n)
}

/// `#Hom(Q(L), X_n)` of a two-component link with virtual linking numbers
/// `lk12` and `lk21`: `n² + 1` constant colorings plus `n` more for each
/// linking number divisible by `n`.
pub fn xn_count_closed_form(lk12: i64, lk21: i64, n: u32) -> Result<u64, LinkingError> {
    if n < 2 {
        return Err(LinkingError::SmallN(n));
    }
    let n = n as u64;
    Ok(n * n + 1 + n * u64::from(divides(n, lk12)) + n * u64::from(divides(n, lk21)))
}

/// Which of the three possible two-component `X_n` counts a value is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CountClass {
    #[serde(rename = "(n+1)^2")]
    Full,
    #[serde(rename = "(n+1)^2-n")]
    OneShort,
    #[serde(rename = "n^2+1")]
    Minimal,
    #[serde(rename = "other")]
    Other,
}

impl CountClass {
    pub fn of(n: u32, count: u64) -> CountClass {
        let n = n as u64;
        let full = (n + 1) * (n + 1);
        if count == full {
            CountClass::Full
        } else if count == full - n {
            CountClass::OneShort
        } else if count == n * n + 1 {
            CountClass::Minimal
        } else {
            CountClass::Other
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            CountClass::Full => "(n+1)^2",
            CountClass::OneShort => "(n+1)^2-n",
            CountClass::Minimal => "n^2+1",
            CountClass::Other => "other",
        }
    }
}

/// How `|lk|` was read off `S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RecoveryBranch {
    /// Every tested `n` is in `S`: both linking numbers vanish.
    FullRange,
    /// `S` is empty: `|lk| = 1`.
    Empty,
    /// `|lk| = max(S)`.
    MaxS,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecoveryResult {
    /// `n` with count `(n+1)²`.
    pub s: Vec<u32>,
    /// `n` with count `(n+1)² − n`.
    pub s_prime: Vec<u32>,
    pub max_n: u32,
    pub branch: RecoveryBranch,
    pub abs_lk: u64,
    /// `max(S)`, the gcd of the two absolute linking numbers, when
    /// `S` is neither empty nor the full range.
    pub gcd: Option<u32>,
    pub max_s_prime: Option<u32>,
    /// False when some count equals `(n+1)² − n`, which rules out a
    /// classical diagram.
    pub classical: bool,
}

/// Reads `|lk|` off the counts `#Hom(Q(L), X_n)` for `n = 2..=max_n`.
///
/// `max_n` should be at least the number of crossings between the two
/// components; only then does a full `S` imply vanishing linking numbers.
/// Entries outside `2..=max_n` are ignored.
pub fn recover_abs_linking(
    counts: &BTreeMap<u32, u64>,
    max_n: u32,
) -> Result<RecoveryResult, LinkingError> {
    if max_n < 2 {
        return Err(LinkingError::SmallN(max_n));
    }
    let mut s = Vec::new();
    let mut s_prime = Vec::new();
    for n in 2..=max_n {
        let count = *counts.get(&n).ok_or(LinkingError::MissingCount(n))?;
        match CountClass::of(n, count) {
            CountClass::Full => s.push(n),
            CountClass::OneShort => s_prime.push(n),
            CountClass::Minimal => {}
            CountClass::Other => return Err(LinkingError::InconsistentCount { n, count }),
        }
    }
    let (branch, abs_lk, gcd) = if s.len() as u32 == max_n - 1 {
        (RecoveryBranch::FullRange, 0, None)
    } else if let Some(&m) = s.last() {
        (RecoveryBranch::MaxS, m as u64, Some(m))
    } else {
        (RecoveryBranch::Empty, 1, None)
    };
    Ok(RecoveryResult {
        max_s_prime: s_prime.last().copied(),
        classical: s_prime.is_empty(),
        s,
        s_prime,
        max_n,
        branch,
        abs_lk,
        gcd,
    })
}

/// Smallest sufficient `max_n` for [`recover_abs_linking`] on this diagram.
pub fn default_max_n(code: &SignedGaussCode) -> u32 {
    (code.interlinked_crossing_count() as u32).max(2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Evidence {
    BothZero,
    NonclassicalEvidence,
    None,
}

pub fn classify_splitness_evidence(profile: &LinkingProfile) -> Evidence {
    if profile.lk_over != profile.lk_under {
        Evidence::NonclassicalEvidence
    } else if profile.lk_over == 0 {
        Evidence::BothZero
    } else {
        Evidence::None
    }
}

/// How a table of `X_n` counts is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepMethod {
    Closed,
    Oracle,
    Propagate,
}

impl fmt::Display for SweepMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepMethod::Closed => "closed",
            SweepMethod::Oracle => "oracle",
            SweepMethod::Propagate => "propagate",
        })
    }
}

/// `#Hom(Q(L), X_n)` for every `n` in `ns`, ordered by `n`.
///
/// The closed form needs a two-component link; the search methods accept
/// any diagram.
pub fn xn_counts(
    code: &SignedGaussCode,
    ns: RangeInclusive<u32>,
    method: SweepMethod,
    budget: u128,
) -> Result<Vec<(u32, u64)>, LinkingError> {
    if *ns.start() < 2 {
        return Err(LinkingError::SmallN(*ns.start()));
    }
    let ns: Vec<u32> = ns.collect();
    match method {
        SweepMethod::Closed => {
            let lp = linking_profile(code)?;
            ns.into_iter()
                .map(|n| Ok((n, xn_count_closed_form(lp.lk_over, lp.lk_under, n)?)))
                .collect()
        }
        SweepMethod::Oracle | SweepMethod::Propagate => {
            let engine = if method == SweepMethod::Oracle { Method::Oracle } else { Method::Propagate };
            let p = presentation(code);
            let opts = CountOptions { budget, ..CountOptions::default() };
            // collect in order first so the reported error is the lowest n
            let rows: Vec<Result<(u32, u64), LinkingError>> = ns
                .into_par_iter()
                .map(|n| {
                    let xn = make_xn(n as usize).expect("n >= 2");
                    Ok((n, count(&p, &xn, engine, &opts)?.count))
                })
                .collect();
            rows.into_iter().collect()
        }
    }
}
