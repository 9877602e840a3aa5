//! Generalized trapezoidal fuzzy numbers and their three scoring factors.
//!
//! A number `(a, b, c, d; w)` rises linearly on `[a, b]`, stays at height `w`
//! on `[b, c]` and falls linearly back to zero on `[c, d]`. Any of the three
//! segments may have zero width.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 5]", into = "[f64; 5]")]
pub struct TrapezoidalFuzzyNumber {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    w: f64,
}

impl TrapezoidalFuzzyNumber {
    /// The crisp point number at `x` with full height.
    pub const fn point(x: f64) -> Self {
        Self {
            a: x,
            b: x,
            c: x,
            d: x,
            w: 1.0,
        }
    }

    /// `(1, 1, 1, 1; 1)`, the top of the unit scale.
    pub const ONE: Self = Self::point(1.0);
    /// `(0, 0, 0, 0; 1)`, the bottom of the unit scale.
    pub const ZERO: Self = Self::point(0.0);

    pub fn new(a: f64, b: f64, c: f64, d: f64, w: f64) -> Result<Self> {
        let invalid = |reason| Error::InvalidFuzzyNumber {
            a,
            b,
            c,
            d,
            w,
            reason,
        };
        if ![a, b, c, d, w].iter().all(|v| v.is_finite()) {
            return Err(invalid("all parameters must be finite"));
        }
        if !(a <= b && b <= c && c <= d) {
            return Err(invalid("vertices must satisfy a <= b <= c <= d"));
        }
        if !(w > 0.0 && w <= 1.0) {
            return Err(invalid("height must satisfy 0 < w <= 1"));
        }
        Ok(Self { a, b, c, d, w })
    }

    /// Full-height trapezoid `(a, b, c, d; 1)`.
    pub fn normal(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        Self::new(a, b, c, d, 1.0)
    }

    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn c(&self) -> f64 {
        self.c
    }
    pub fn d(&self) -> f64 {
        self.d
    }
    pub fn height(&self) -> f64 {
        self.w
    }

    pub fn vertices(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn is_point(&self) -> bool {
        self.a == self.d
    }

    /// Membership grade of `x`.
    ///
    /// Zero outside `[a, d]`, `w` on `[b, c]`, linear in between. When a ramp
    /// has zero width its boundary point belongs to the plateau.
    pub fn membership(&self, x: f64) -> f64 {
        let Self { a, b, c, d, w } = *self;
        if x < a || x > d {
            0.0
        } else if x < b {
            w * (x - a) / (b - a)
        } else if x <= c {
            w
        } else {
            w * (d - x) / (d - c)
        }
    }

    /// Abscissa of the centroid of the area under the membership function.
    ///
    /// Each non-degenerate piece is integrated exactly. A point number has no
    /// area and its centroid is the point itself.
    pub fn centroid(&self) -> f64 {
        let Self { a, b, c, d, .. } = *self;
        if self.is_point() {
            return a;
        }
        // The height multiplies every piece uniformly and cancels.
        let mut area = 0.0;
        let mut moment = 0.0;
        if b > a {
            // rising ramp: area L/2, centroid two thirds of the way to b
            let len = b - a;
            area += len / 2.0;
            moment += len / 2.0 * (a + 2.0 * len / 3.0);
        }
        if c > b {
            area += c - b;
            moment += (c - b) * (b + c) / 2.0;
        }
        if d > c {
            // falling ramp: centroid one third of the way from c
            let len = d - c;
            area += len / 2.0;
            moment += len / 2.0 * (c + len / 3.0);
        }
        (moment / area).clamp(a, d)
    }

    /// Sample standard deviation (divisor 3) of the four vertices.
    pub fn spread(&self) -> f64 {
        let v = self.vertices();
        let mean = v.iter().sum::<f64>() / 4.0;
        let ss: f64 = v.iter().map(|x| (x - mean).powi(2)).sum();
        (ss / 3.0).sqrt()
    }

    pub fn score_factors(&self) -> ScoreFactors {
        let std = self.spread();
        ScoreFactors {
            x: self.centroid(),
            h: self.w,
            std,
            compact: 1.0 / (1.0 + std),
        }
    }
}

impl TryFrom<[f64; 5]> for TrapezoidalFuzzyNumber {
    type Error = Error;

    fn try_from([a, b, c, d, w]: [f64; 5]) -> Result<Self> {
        Self::new(a, b, c, d, w)
    }
}

impl From<TrapezoidalFuzzyNumber> for [f64; 5] {
    fn from(f: TrapezoidalFuzzyNumber) -> Self {
        [f.a, f.b, f.c, f.d, f.w]
    }
}

impl std::fmt::Display for TrapezoidalFuzzyNumber {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({}, {}, {}, {}; {})",
            self.a, self.b, self.c, self.d, self.w
        )
    }
}

/// Centroid, height and compactness of a fuzzy number, in decreasing order of
/// importance for ranking.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScoreFactors {
    pub x: f64,
    pub h: f64,
    pub std: f64,
    /// `1 / (1 + std)`
    pub compact: f64,
}

impl ScoreFactors {
    /// The ordered argument vector `(x, h, compact)`.
    pub fn ordered(&self) -> [f64; 3] {
        [self.x, self.h, self.compact]
    }
}
