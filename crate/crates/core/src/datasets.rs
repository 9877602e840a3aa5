//! The two worked experiments: a three-expert medical diagnosis and a
//! three-component manufacturing risk assessment.

use crate::evidence::Frame;
use crate::fuzzy::TrapezoidalFuzzyNumber;
use crate::pipeline::AssessmentMatrix;
use crate::zmodel::{LinguisticTerm, ZNumber};

/// Experts E1..E3 grading Common-cold, Meningitis and Measles.
pub fn medical() -> AssessmentMatrix {
    use LinguisticTerm::*;
    let grid = [
        [
            (VeryHigh, VeryHigh),
            (Low, VeryHigh),
            (AbsolutelyLow, VeryHigh),
        ],
        [(FairlyHigh, High), (Low, High), (Low, VeryHigh)],
        [(Low, VeryHigh), (Low, High), (High, VeryHigh)],
    ];
    let cells = grid
        .iter()
        .map(|row| {
            row.iter()
                .map(|(a, b)| ZNumber::from_terms(*a, *b))
                .collect()
        })
        .collect();
    AssessmentMatrix::new(
        Frame::new(["Common-cold", "Meningitis", "Measles"]).unwrap(),
        vec!["E1".into(), "E2".into(), "E3".into()],
        cells,
    )
    .unwrap()
}

/// Components C1..C3 grading the risk of manufactories M1..M3 by severity
/// of loss (A) and reliability of the opinion (B).
pub fn risk() -> AssessmentMatrix {
    let t = |v: [f64; 4]| TrapezoidalFuzzyNumber::normal(v[0], v[1], v[2], v[3]).unwrap();
    let z = |a: [f64; 4], b: [f64; 4]| ZNumber::new(t(a), t(b));
    let cells = vec![
        vec![
            z([0.12, 0.24, 0.24, 0.36], [0.24, 0.36, 0.36, 0.48]),
            z([0.72, 0.84, 0.84, 0.96], [0.72, 0.84, 0.84, 0.96]),
            z([0.84, 1.0, 1.0, 1.0], [0.24, 0.36, 0.36, 0.48]),
        ],
        vec![
            z([0.48, 0.60, 0.60, 0.72], [0.36, 0.48, 0.48, 0.60]),
            z([0.26, 0.36, 0.36, 0.48], [0.48, 0.60, 0.60, 0.72]),
            z([0.0, 0.0, 0.0, 0.12], [0.6, 0.72, 0.72, 0.84]),
        ],
        vec![
            z([0.0, 0.12, 0.12, 0.24], [0.48, 0.60, 0.60, 0.72]),
            z([0.36, 0.48, 0.48, 0.60], [0.36, 0.48, 0.48, 0.60]),
            z([0.60, 0.72, 0.72, 0.84], [0.0, 0.12, 0.12, 0.24]),
        ],
    ];
    AssessmentMatrix::new(
        Frame::new(["M1", "M2", "M3"]).unwrap(),
        vec!["C1".into(), "C2".into(), "C3".into()],
        cells,
    )
    .unwrap()
}
