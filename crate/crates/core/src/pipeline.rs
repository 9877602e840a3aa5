//! End-to-end decision: Z-number assessments in, fused masses and a ranked
//! decision out.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evidence::{bpa_from_similarities, combine_all_labeled, Frame, MassFunction};
use crate::zmodel::{ZModel, ZNumber, ZScore};

/// Every source grades every hypothesis with a Z-number.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AssessmentMatrix {
    frame: Frame,
    sources: Vec<String>,
    /// `cells[source][hypothesis]`
    cells: Vec<Vec<ZNumber>>,
}

impl AssessmentMatrix {
    pub fn new(frame: Frame, sources: Vec<String>, cells: Vec<Vec<ZNumber>>) -> Result<Self> {
        if frame.len() < 2 {
            return Err(Error::InvalidMatrix(
                "at least two hypotheses are required".into(),
            ));
        }
        if sources.is_empty() {
            return Err(Error::InvalidMatrix(
                "at least one source is required".into(),
            ));
        }
        for (i, s) in sources.iter().enumerate() {
            if sources[..i].contains(s) {
                return Err(Error::InvalidMatrix(format!("duplicate source {s:?}")));
            }
        }
        if cells.len() != sources.len() {
            return Err(Error::InvalidMatrix(format!(
                "{} sources but {} rows of assessments",
                sources.len(),
                cells.len()
            )));
        }
        for (name, row) in sources.iter().zip(&cells) {
            if row.len() != frame.len() {
                return Err(Error::InvalidMatrix(format!(
                    "source {name:?} grades {} of {} hypotheses",
                    row.len(),
                    frame.len()
                )));
            }
        }
        Ok(Self {
            frame,
            sources,
            cells,
        })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn sources(&self) -> &[String] {
        &self.sources
    }

    pub fn rows(&self) -> &[Vec<ZNumber>] {
        &self.cells
    }

    pub fn cell(&self, source: usize, hypothesis: usize) -> &ZNumber {
        &self.cells[source][hypothesis]
    }

    /// Replaces every reliability component with `(1, 1, 1, 1; 1)`.
    pub fn strip_reliability(&self) -> Self {
        Self {
            frame: self.frame.clone(),
            sources: self.sources.clone(),
            cells: self
                .cells
                .iter()
                .map(|row| row.iter().map(|z| z.fully_reliable()).collect())
                .collect(),
        }
    }

    /// Swaps the roles of sources and hypotheses.
    pub fn transpose(&self) -> Result<Self> {
        let frame = Frame::new(self.sources.clone())?;
        let sources = self.frame.labels().to_vec();
        let cells = (0..self.frame.len())
            .map(|h| self.cells.iter().map(|row| row[h]).collect())
            .collect();
        Self::new(frame, sources, cells)
    }

    /// Appends another source's row of assessments.
    pub fn with_source(&self, name: impl Into<String>, row: Vec<ZNumber>) -> Result<Self> {
        let mut sources = self.sources.clone();
        sources.push(name.into());
        let mut cells = self.cells.clone();
        cells.push(row);
        Self::new(self.frame.clone(), sources, cells)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub alpha: f64,
    pub criteria_weights: Vec<f64>,
    pub component_weights: Vec<f64>,
}

impl From<&ZModel> for ConfigEcho {
    fn from(model: &ZModel) -> Self {
        Self {
            alpha: model.alpha(),
            criteria_weights: model.criteria_weights().weights().to_vec(),
            component_weights: model.component_weights().weights().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SourceReport {
    pub name: String,
    pub scores: Vec<ZScore>,
    pub bpa: MassFunction,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedHypothesis {
    pub hypothesis: String,
    pub mass: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionReport {
    pub config: ConfigEcho,
    pub sources: Vec<SourceReport>,
    pub fused: MassFunction,
    /// Conflict `k` of each pairwise combination step.
    pub conflict_trace: Vec<f64>,
    pub ranking: Vec<RankedHypothesis>,
    pub decision: String,
}

impl DecisionReport {
    pub fn per_source_bpas(&self) -> impl Iterator<Item = &MassFunction> {
        self.sources.iter().map(|s| &s.bpa)
    }
}

/// Scores each cell and turns every source's row into a mass function.
pub fn source_bpas(model: &ZModel, matrix: &AssessmentMatrix) -> Result<Vec<SourceReport>> {
    matrix
        .sources
        .iter()
        .zip(&matrix.cells)
        .map(|(name, row)| {
            let scores: Vec<ZScore> = row.iter().map(|z| model.score(z)).collect();
            let sims: Vec<f64> = scores.iter().map(|s| s.similarity).collect();
            Ok(SourceReport {
                name: name.clone(),
                bpa: bpa_from_similarities(&matrix.frame, &sims)?,
                scores,
            })
        })
        .collect()
}

pub fn decide_with(model: &ZModel, matrix: &AssessmentMatrix) -> Result<DecisionReport> {
    let sources = source_bpas(model, matrix)?;
    let bpas: Vec<MassFunction> = sources.iter().map(|s| s.bpa.clone()).collect();
    let fusion = combine_all_labeled(&bpas, &matrix.sources)?;
    let fused = fusion.combined;

    let mut ranking: Vec<RankedHypothesis> = matrix
        .frame
        .labels()
        .iter()
        .enumerate()
        .map(|(i, label)| RankedHypothesis {
            hypothesis: label.clone(),
            mass: fused.singleton_mass(i),
        })
        .collect();
    ranking.sort_by(|x, y| y.mass.total_cmp(&x.mass));
    let decision = ranking[0].hypothesis.clone();

    Ok(DecisionReport {
        config: ConfigEcho::from(model),
        sources,
        fused,
        conflict_trace: fusion.trace,
        ranking,
        decision,
    })
}

/// Runs the whole procedure with one orness level for every weight solve.
pub fn decide(matrix: &AssessmentMatrix, alpha: f64) -> Result<DecisionReport> {
    decide_with(&ZModel::new(alpha)?, matrix)
}
