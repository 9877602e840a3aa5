//! Z-numbers, the linguistic lexicon and the similarity-based Z-number score.
//!
//! A fuzzy number is ranked by blending its centroid, height and compactness
//! with maximal-entropy weights. A Z-number `(A, B)` is then placed between the
//! reference numbers `Z* = (1, 1)` and `ZΔ = (0, 0)` by a weighted distance of
//! its two component scores from those of `Z*`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzzy::TrapezoidalFuzzyNumber;
use crate::owa::{mem_weights, WeightVector, DEFAULT_ORNESS};

/// Nine-grade linguistic scale shared by both Z-number components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LinguisticTerm {
    #[serde(rename = "Absolutely-low")]
    AbsolutelyLow,
    #[serde(rename = "Very-low")]
    VeryLow,
    #[serde(rename = "Low")]
    Low,
    #[serde(rename = "Fairly-low")]
    FairlyLow,
    #[serde(rename = "Medium")]
    Medium,
    #[serde(rename = "Fairly-high")]
    FairlyHigh,
    #[serde(rename = "High")]
    High,
    #[serde(rename = "Very-high")]
    VeryHigh,
    #[serde(rename = "Absolutely-high")]
    AbsolutelyHigh,
}

impl LinguisticTerm {
    pub const ALL: [LinguisticTerm; 9] = [
        Self::AbsolutelyLow,
        Self::VeryLow,
        Self::Low,
        Self::FairlyLow,
        Self::Medium,
        Self::FairlyHigh,
        Self::High,
        Self::VeryHigh,
        Self::AbsolutelyHigh,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::AbsolutelyLow => "Absolutely-low",
            Self::VeryLow => "Very-low",
            Self::Low => "Low",
            Self::FairlyLow => "Fairly-low",
            Self::Medium => "Medium",
            Self::FairlyHigh => "Fairly-high",
            Self::High => "High",
            Self::VeryHigh => "Very-high",
            Self::AbsolutelyHigh => "Absolutely-high",
        }
    }

    pub fn shape(self) -> TrapezoidalFuzzyNumber {
        let [a, b, c, d] = match self {
            Self::AbsolutelyLow => [0.0, 0.0, 0.0, 0.0],
            Self::VeryLow => [0.0, 0.0, 0.02, 0.07],
            Self::Low => [0.04, 0.1, 0.18, 0.23],
            Self::FairlyLow => [0.17, 0.22, 0.36, 0.42],
            Self::Medium => [0.32, 0.41, 0.58, 0.65],
            Self::FairlyHigh => [0.58, 0.63, 0.80, 0.86],
            Self::High => [0.72, 0.78, 0.92, 0.97],
            Self::VeryHigh => [0.93, 0.98, 1.0, 1.0],
            Self::AbsolutelyHigh => [1.0, 1.0, 1.0, 1.0],
        };
        TrapezoidalFuzzyNumber::normal(a, b, c, d).expect("lexicon shapes are valid")
    }
}

impl fmt::Display for LinguisticTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownTerm(pub String);

impl fmt::Display for UnknownTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown linguistic term {:?}", self.0)
    }
}

impl std::error::Error for UnknownTerm {}

impl FromStr for LinguisticTerm {
    type Err = UnknownTerm;

    /// Case-insensitive; hyphens, underscores and spaces are ignored.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let key = normalize(s);
        Self::ALL
            .into_iter()
            .find(|t| normalize(t.name()) == key)
            .ok_or_else(|| UnknownTerm(s.to_string()))
    }
}

fn normalize(s: &str) -> String {
    s.chars()
        .filter(|c| !matches!(c, '-' | '_' | ' '))
        .flat_map(char::to_lowercase)
        .collect()
}

/// An evaluation `A` together with the reliability `B` of that evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZNumber {
    #[serde(rename = "A")]
    pub a: TrapezoidalFuzzyNumber,
    #[serde(rename = "B")]
    pub b: TrapezoidalFuzzyNumber,
}

impl ZNumber {
    pub const MAX: ZNumber = ZNumber {
        a: TrapezoidalFuzzyNumber::ONE,
        b: TrapezoidalFuzzyNumber::ONE,
    };
    pub const MIN: ZNumber = ZNumber {
        a: TrapezoidalFuzzyNumber::ZERO,
        b: TrapezoidalFuzzyNumber::ZERO,
    };

    pub fn new(a: TrapezoidalFuzzyNumber, b: TrapezoidalFuzzyNumber) -> Self {
        Self { a, b }
    }

    pub fn from_terms(a: LinguisticTerm, b: LinguisticTerm) -> Self {
        Self::new(a.shape(), b.shape())
    }

    /// The same evaluation with full reliability.
    pub fn fully_reliable(self) -> Self {
        Self::new(self.a, TrapezoidalFuzzyNumber::ONE)
    }
}

/// Ranking score `H = w1 x + w2 h + w3 / (1 + std)`.
pub fn ranking_score(f: &TrapezoidalFuzzyNumber, criteria: &WeightVector) -> Result<f64> {
    criteria.aggregate(&f.score_factors().ordered())
}

/// Scores of the maximal and minimal reference Z-numbers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReferenceBounds {
    pub zmax: ZNumber,
    pub zmin: ZNumber,
    pub hmax: f64,
    pub hmin: f64,
}

impl ReferenceBounds {
    pub fn new(criteria: &WeightVector) -> Result<Self> {
        Ok(Self {
            zmax: ZNumber::MAX,
            zmin: ZNumber::MIN,
            hmax: ranking_score(&TrapezoidalFuzzyNumber::ONE, criteria)?,
            hmin: ranking_score(&TrapezoidalFuzzyNumber::ZERO, criteria)?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZScore {
    pub h_a: f64,
    pub h_b: f64,
    pub deviation: f64,
    pub similarity: f64,
    /// The raw deviation exceeded 1 and was clamped.
    pub clamped: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ranked {
    pub index: usize,
    pub score: f64,
}

/// Descending by score; equal scores keep their input order.
fn rank_by_score(scores: Vec<f64>) -> Vec<Ranked> {
    let mut ranked: Vec<Ranked> = scores
        .into_iter()
        .enumerate()
        .map(|(index, score)| Ranked { index, score })
        .collect();
    ranked.sort_by(|x, y| y.score.total_cmp(&x.score));
    ranked
}

/// Scores fuzzy numbers and Z-numbers for one orness setting.
///
/// The same `alpha` drives the three criteria weights of the ranking score and
/// the two component weights of the deviation degree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZModel {
    alpha: f64,
    criteria: WeightVector,
    components: WeightVector,
    refs: ReferenceBounds,
}

impl Default for ZModel {
    fn default() -> Self {
        Self::new(DEFAULT_ORNESS).expect("default orness is valid")
    }
}

impl ZModel {
    pub fn new(alpha: f64) -> Result<Self> {
        let criteria = mem_weights(3, alpha)?;
        let components = mem_weights(2, alpha)?;
        Self::with_weights(criteria, components)
    }

    pub fn with_weights(criteria: WeightVector, components: WeightVector) -> Result<Self> {
        if criteria.len() != 3 {
            return Err(Error::WeightLength {
                expected: 3,
                actual: criteria.len(),
            });
        }
        if components.len() != 2 {
            return Err(Error::WeightLength {
                expected: 2,
                actual: components.len(),
            });
        }
        let refs = ReferenceBounds::new(&criteria)?;
        Ok(Self {
            alpha: criteria.alpha(),
            criteria,
            components,
            refs,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn criteria_weights(&self) -> &WeightVector {
        &self.criteria
    }
    pub fn component_weights(&self) -> &WeightVector {
        &self.components
    }
    pub fn refs(&self) -> &ReferenceBounds {
        &self.refs
    }

    pub fn ranking_score(&self, f: &TrapezoidalFuzzyNumber) -> f64 {
        let v = f.score_factors().ordered();
        self.criteria
            .weights()
            .iter()
            .zip(v)
            .map(|(w, x)| w * x)
            .sum()
    }

    pub fn rank_fuzzy(&self, numbers: &[TrapezoidalFuzzyNumber]) -> Result<Vec<Ranked>> {
        if numbers.is_empty() {
            return Err(Error::EmptyList);
        }
        Ok(rank_by_score(
            numbers.iter().map(|f| self.ranking_score(f)).collect(),
        ))
    }

    pub fn score(&self, z: &ZNumber) -> ZScore {
        let h_a = self.ranking_score(&z.a);
        let h_b = self.ranking_score(&z.b);
        let [wa, wb] = [self.components.weights()[0], self.components.weights()[1]];
        let top = self.refs.hmax;
        let num = wa * (h_a - top).powi(2) + wb * (h_b - top).powi(2);
        let den = (wa + wb) * (self.refs.hmin - top).powi(2);
        let raw = if num == 0.0 {
            0.0
        } else if den == 0.0 {
            f64::INFINITY
        } else {
            (num / den).sqrt()
        };
        let clamped = raw > 1.0;
        let deviation = raw.min(1.0);
        ZScore {
            h_a,
            h_b,
            deviation,
            similarity: 1.0 - deviation,
            clamped,
        }
    }

    pub fn deviation(&self, z: &ZNumber) -> f64 {
        self.score(z).deviation
    }

    pub fn similarity(&self, z: &ZNumber) -> f64 {
        self.score(z).similarity
    }

    pub fn rank_znumbers(&self, zs: &[ZNumber]) -> Result<Vec<Ranked>> {
        if zs.is_empty() {
            return Err(Error::EmptyList);
        }
        Ok(rank_by_score(
            zs.iter().map(|z| self.similarity(z)).collect(),
        ))
    }
}
