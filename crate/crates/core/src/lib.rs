//! Decision fusion over Z-number assessments.
//!
//! Expert opinions are Z-numbers: a fuzzy evaluation paired with a fuzzy
//! reliability. Each one is scored against ideal reference numbers, every
//! source's scores become a basic probability assignment, and the
//! assignments are fused with Dempster's rule.

pub mod datasets;
pub mod error;
pub mod evidence;
pub mod fuzzy;
pub mod owa;
pub mod pipeline;
pub mod zmodel;

pub use error::{Error, Result};
pub use evidence::{
    bpa_from_similarities, combine_all, dempster_combine, CombinationOutcome, FocalSet, Frame,
    MassFunction,
};
pub use fuzzy::{ScoreFactors, TrapezoidalFuzzyNumber};
pub use owa::{mem_weights, WeightVector, DEFAULT_ORNESS};
pub use pipeline::{decide, decide_with, AssessmentMatrix, DecisionReport, SourceReport};
pub use zmodel::{LinguisticTerm, Ranked, ReferenceBounds, ZModel, ZNumber, ZScore};
