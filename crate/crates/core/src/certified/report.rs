use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::interval::{BoundReal, Decision, DEFAULT_PRECISION, DEFAULT_PRECISION_CAP};
use crate::{Error, Result};

/// Environment variable that overrides [`DEFAULT_PRECISION_CAP`].
pub const PRECISION_CAP_ENV: &str = "PRECISION_CAP_BITS";

/// Starting precision and escalation ceiling for certified comparisons.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionPolicy {
    pub start_bits: u32,
    pub cap_bits: u32,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy {
            start_bits: DEFAULT_PRECISION,
            cap_bits: DEFAULT_PRECISION_CAP,
        }
    }
}

impl PrecisionPolicy {
    pub fn with_cap(cap_bits: u32) -> Self {
        let start_bits = DEFAULT_PRECISION.min(cap_bits);
        PrecisionPolicy {
            start_bits,
            cap_bits,
        }
    }

    /// Default policy, with the cap taken from `PRECISION_CAP_BITS` when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(PRECISION_CAP_ENV) {
            Ok(text) => {
                let cap: u32 = text.trim().parse().map_err(|_| {
                    Error::domain(format!("{PRECISION_CAP_ENV} must be a positive integer, got {text:?}"))
                })?;
                if cap < 16 {
                    return Err(Error::domain(format!("{PRECISION_CAP_ENV} must be at least 16")));
                }
                Ok(PrecisionPolicy::with_cap(cap))
            }
            Err(_) => Ok(PrecisionPolicy::default()),
        }
    }

    /// Precisions tried in order: start, 2*start, ... up to the cap.
    pub fn schedule(&self) -> impl Iterator<Item = u32> {
        let cap = self.cap_bits;
        std::iter::successors(Some(self.start_bits), move |&p| {
            (p < cap).then(|| p.saturating_mul(2).min(cap))
        })
    }
}

/// The result of deciding `lhs < rhs` with escalating precision.
#[derive(Debug, Clone)]
pub struct Certified {
    pub decision: Decision,
    pub lhs: BoundReal,
    pub rhs: BoundReal,
    pub precision_bits: u32,
}

impl Certified {
    /// `rhs - lhs` at the midpoints.
    pub fn gap(&self) -> f64 {
        self.rhs.midpoint().sub_exact(&self.lhs.midpoint()).to_f64()
    }
}

/// Evaluates both sides at each precision of the policy until the
/// intervals separate.
pub fn certify_less(
    policy: &PrecisionPolicy,
    mut sides: impl FnMut(u32) -> (BoundReal, BoundReal),
) -> Certified {
    let mut last = None;
    for prec in policy.schedule() {
        let (lhs, rhs) = sides(prec);
        let decision = lhs.compare(&rhs);
        let result = Certified {
            decision,
            lhs,
            rhs,
            precision_bits: prec,
        };
        if decision != Decision::Unknown {
            return result;
        }
        last = Some(result);
    }
    last.expect("schedule yields at least one precision")
}

/// The claims the verifier knows how to sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    Thm2,
    Thm3,
    Prop1,
    Prop2,
    LemmaLinks,
    LemmaGr,
    LemmaRechts,
    Lemma13,
    Apostol,
    Stirling,
    Eq9,
    Genfun,
}

impl Claim {
    pub const ALL: [Claim; 12] = [
        Claim::Thm2,
        Claim::Thm3,
        Claim::Prop1,
        Claim::Prop2,
        Claim::LemmaLinks,
        Claim::LemmaGr,
        Claim::LemmaRechts,
        Claim::Lemma13,
        Claim::Apostol,
        Claim::Stirling,
        Claim::Eq9,
        Claim::Genfun,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Claim::Thm2 => "thm2",
            Claim::Thm3 => "thm3",
            Claim::Prop1 => "prop1",
            Claim::Prop2 => "prop2",
            Claim::LemmaLinks => "lemma-links",
            Claim::LemmaGr => "lemma-gr",
            Claim::LemmaRechts => "lemma-rechts",
            Claim::Lemma13 => "lemma13",
            Claim::Apostol => "apostol",
            Claim::Stirling => "stirling",
            Claim::Eq9 => "eq9",
            Claim::Genfun => "genfun",
        }
    }

    /// Smallest `n` the claim is stated for.
    pub fn min_n(self) -> usize {
        match self {
            Claim::Thm2 | Claim::LemmaLinks | Claim::LemmaGr | Claim::LemmaRechts => 4,
            Claim::Lemma13 => 3,
            Claim::Eq9 => 2,
            _ => 1,
        }
    }

    /// Sweep range used when none is given.
    pub fn default_range(self) -> (usize, usize) {
        let max = match self {
            Claim::Thm2 | Claim::Thm3 | Claim::LemmaLinks | Claim::LemmaRechts => 1000,
            Claim::LemmaGr => 500,
            Claim::Eq9 => 300,
            Claim::Genfun => 15,
            Claim::Prop1 | Claim::Prop2 | Claim::Lemma13 | Claim::Apostol | Claim::Stirling => 2000,
        };
        (self.min_n(), max)
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Claim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Claim::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| Error::domain(format!("unknown claim id {s:?}")))
    }
}

/// A point of a sweep: row `n`, and the column when the claim has one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Point {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
}

impl Point {
    pub fn row(n: usize) -> Self {
        Point { n, k: None }
    }

    pub fn at(n: usize, k: usize) -> Self {
        Point { n, k: Some(k) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Outcome {
    Verified,
    Violated { at: Point },
    Inconclusive { at: Point },
}

impl Outcome {
    fn rank(&self) -> u8 {
        match self {
            Outcome::Verified => 0,
            Outcome::Inconclusive { .. } => 1,
            Outcome::Violated { .. } => 2,
        }
    }

    pub fn is_verified(&self) -> bool {
        matches!(self, Outcome::Verified)
    }
}

/// How a report's margin is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MarginScale {
    /// `rhs - lhs` of a comparison between logarithms.
    Log,
    /// `(rhs - lhs) / rhs`.
    Relative,
    /// `rhs - lhs`.
    Absolute,
    /// Exact checks; no margin is reported.
    Exact,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub claim: Claim,
    pub n_min: usize,
    pub n_max: usize,
    /// Number of individual inequalities decided.
    pub checked: u64,
    pub outcome: Outcome,
    pub margin_scale: MarginScale,
    pub min_margin: Option<f64>,
    pub min_margin_at: Option<Point>,
    /// Highest precision any comparison needed; 0 for pure integer checks.
    pub precision_bits: u32,
}

impl VerificationReport {
    pub fn new(claim: Claim, n: usize, margin_scale: MarginScale) -> Self {
        VerificationReport {
            claim,
            n_min: n,
            n_max: n,
            checked: 0,
            outcome: Outcome::Verified,
            margin_scale,
            min_margin: None,
            min_margin_at: None,
            precision_bits: 0,
        }
    }

    pub fn is_verified(&self) -> bool {
        self.outcome.is_verified()
    }

    pub(crate) fn record_margin(&mut self, margin: f64, at: Point) {
        let better = match self.min_margin {
            None => true,
            Some(m) => margin < m || (margin == m && Some(at) < self.min_margin_at),
        };
        if better {
            self.min_margin = Some(margin);
            self.min_margin_at = Some(at);
        }
    }

    /// Folds one certified comparison into the report.
    pub(crate) fn record(&mut self, result: &Certified, margin: f64, at: Point) {
        self.checked += 1;
        self.precision_bits = self.precision_bits.max(result.precision_bits);
        match result.decision {
            Decision::Less => self.record_margin(margin, at),
            Decision::Greater => self.fail(Outcome::Violated { at }),
            Decision::Unknown => self.fail(Outcome::Inconclusive { at }),
        }
    }

    /// Downgrades the outcome; violations outrank inconclusive points.
    pub fn fail(&mut self, outcome: Outcome) {
        if outcome.rank() > self.outcome.rank() {
            self.outcome = outcome;
        }
    }

    /// Combines per-row reports of one claim into a sweep report.
    ///
    /// The result does not depend on the order of `parts`: violations and
    /// inconclusive points are reported at the smallest `(n, k)`.
    pub fn merge(claim: Claim, parts: impl IntoIterator<Item = VerificationReport>) -> Self {
        let mut parts: Vec<_> = parts.into_iter().collect();
        parts.sort_by_key(|r| r.n_min);
        let scale = parts.first().map_or(MarginScale::Exact, |r| r.margin_scale);
        let mut merged = VerificationReport::new(claim, 0, scale);
        merged.n_min = parts.first().map_or(0, |r| r.n_min);
        merged.n_max = parts.iter().map(|r| r.n_max).max().unwrap_or(0);
        for part in parts {
            debug_assert_eq!(part.claim, claim);
            merged.checked += part.checked;
            merged.precision_bits = merged.precision_bits.max(part.precision_bits);
            if let (Some(m), Some(at)) = (part.min_margin, part.min_margin_at) {
                merged.record_margin(m, at);
            }
            let replace = part.outcome.rank() > merged.outcome.rank();
            if replace {
                merged.outcome = part.outcome;
            }
        }
        merged
    }
}
