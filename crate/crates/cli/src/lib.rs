//! Batch front end for the decision-fusion engine.
//!
//! [`run`] renders the whole report into a string before anything is printed,
//! so a failing run never leaves partial output on stdout.

pub mod input;
pub mod render;

use std::path::PathBuf;

use serde::Serialize;
use thiserror::Error;
use zfuse_core::pipeline::{source_bpas, ConfigEcho};
use zfuse_core::{decide_with, mem_weights, SourceReport, ZModel, DEFAULT_ORNESS};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Semantic(String),
    #[error("fusion failed: {0}")]
    Conflict(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Semantic(_) => 3,
            CliError::Conflict(_) => 4,
        }
    }
}

impl From<zfuse_core::Error> for CliError {
    fn from(e: zfuse_core::Error) -> Self {
        match e {
            zfuse_core::Error::TotalConflict { .. } => CliError::Conflict(e.to_string()),
            other => CliError::Semantic(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    /// Per-source BPAs, fused masses and the decision
    Decide,
    /// Rank plain fuzzy numbers by their ranking score
    RankFuzzy,
    /// Rank Z-numbers by similarity to the ideal reference
    RankZ,
    /// Per-source BPAs without fusion
    Bpa,
    /// Maximal-entropy OWA weights
    Weights,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Json,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub mode: Mode,
    pub input: Option<PathBuf>,
    /// Overrides any `alpha` stored in the input document.
    pub alpha: Option<f64>,
    pub format: Format,
    pub precision: usize,
    /// Weight-vector length for the `weights` mode.
    pub n: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            mode: Mode::Decide,
            input: None,
            alpha: None,
            format: Format::Table,
            precision: 4,
            n: 3,
        }
    }
}

impl RunConfig {
    fn validate(&self) -> Result<(), CliError> {
        if let Some(a) = self.alpha {
            check_alpha(a)?;
        }
        if !(1..=12).contains(&self.precision) {
            return Err(CliError::Semantic(format!(
                "precision must be between 1 and 12, got {}",
                self.precision
            )));
        }
        Ok(())
    }

    fn input(&self) -> Result<&std::path::Path, CliError> {
        self.input
            .as_deref()
            .ok_or_else(|| CliError::Parse("--input is required for this mode".into()))
    }

    fn resolve_alpha(&self, from_file: Option<f64>) -> Result<f64, CliError> {
        let alpha = self.alpha.or(from_file).unwrap_or(DEFAULT_ORNESS);
        check_alpha(alpha)?;
        Ok(alpha)
    }
}

fn check_alpha(alpha: f64) -> Result<(), CliError> {
    if (0.0..=1.0).contains(&alpha) {
        Ok(())
    } else {
        Err(CliError::Semantic(format!(
            "alpha must lie in [0, 1], got {alpha}"
        )))
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Semantic(format!("cannot serialize report: {e}")))?;
    s.push('\n');
    Ok(s)
}

#[derive(Serialize)]
struct BpaReport<'a> {
    config: ConfigEcho,
    sources: &'a [SourceReport],
}

#[derive(Serialize)]
struct FuzzyEntry<'a> {
    name: &'a str,
    score: f64,
    factors: zfuse_core::ScoreFactors,
}

#[derive(Serialize)]
struct FuzzyReport<'a> {
    alpha: f64,
    criteria_weights: &'a [f64],
    ranking: Vec<FuzzyEntry<'a>>,
}

#[derive(Serialize)]
struct ZEntry<'a> {
    name: &'a str,
    #[serde(flatten)]
    score: zfuse_core::ZScore,
}

#[derive(Serialize)]
struct ZReport<'a> {
    config: ConfigEcho,
    ranking: Vec<ZEntry<'a>>,
}

/// Executes one command and returns everything destined for stdout.
pub fn run(config: &RunConfig) -> Result<String, CliError> {
    config.validate()?;
    match config.mode {
        Mode::Weights => {
            let w = mem_weights(config.n, config.resolve_alpha(None)?)?;
            match config.format {
                Format::Table => Ok(render::weights(&w, config.precision)),
                Format::Json => to_json(&serde_json::json!({
                    "n": w.len(),
                    "alpha": w.alpha(),
                    "weights": w.weights(),
                    "orness": w.orness(),
                    "dispersion": w.dispersion(),
                })),
            }
        }
        Mode::Decide | Mode::Bpa => {
            let (matrix, file_alpha) = input::load_matrix(config.input()?)?;
            let model = ZModel::new(config.resolve_alpha(file_alpha)?)?;
            if config.mode == Mode::Bpa {
                let sources = source_bpas(&model, &matrix)?;
                return match config.format {
                    Format::Table => {
                        let echo = ConfigEcho::from(&model);
                        let mut out = render::config_lines(
                            echo.alpha,
                            &echo.criteria_weights,
                            &echo.component_weights,
                            config.precision,
                        );
                        out.push('\n');
                        out.push_str(&render::bpa_table(
                            &sources,
                            matrix.frame(),
                            config.precision,
                        ));
                        Ok(out)
                    }
                    Format::Json => to_json(&BpaReport {
                        config: ConfigEcho::from(&model),
                        sources: &sources,
                    }),
                };
            }
            let report = decide_with(&model, &matrix)?;
            match config.format {
                Format::Table => Ok(render::decision(&report, config.precision)),
                Format::Json => to_json(&report),
            }
        }
        Mode::RankFuzzy => {
            let text = input::read_to_string(config.input()?)?;
            let doc: input::FuzzyList = input::parse_json(&text)?;
            let items = doc.resolve()?;
            let model = ZModel::new(config.resolve_alpha(doc.alpha)?)?;
            let numbers: Vec<_> = items.iter().map(|(_, f)| *f).collect();
            let ranked = model.rank_fuzzy(&numbers)?;
            match config.format {
                Format::Table => {
                    let rows: Vec<render::FuzzyRow> = ranked
                        .iter()
                        .map(|r| {
                            let f = &items[r.index].1;
                            render::FuzzyRow {
                                name: &items[r.index].0,
                                score: r.score,
                                centroid: f.centroid(),
                                height: f.height(),
                                spread: f.spread(),
                            }
                        })
                        .collect();
                    Ok(render::fuzzy_ranking(&rows, config.precision))
                }
                Format::Json => to_json(&FuzzyReport {
                    alpha: model.alpha(),
                    criteria_weights: model.criteria_weights().weights(),
                    ranking: ranked
                        .iter()
                        .map(|r| FuzzyEntry {
                            name: &items[r.index].0,
                            score: r.score,
                            factors: items[r.index].1.score_factors(),
                        })
                        .collect(),
                }),
            }
        }
        Mode::RankZ => {
            let text = input::read_to_string(config.input()?)?;
            let doc: input::ZList = input::parse_json(&text)?;
            let items = doc.resolve()?;
            let model = ZModel::new(config.resolve_alpha(doc.alpha)?)?;
            let zs: Vec<_> = items.iter().map(|(_, z)| *z).collect();
            let ranked = model.rank_znumbers(&zs)?;
            let entries: Vec<ZEntry> = ranked
                .iter()
                .map(|r| ZEntry {
                    name: &items[r.index].0,
                    score: model.score(&zs[r.index]),
                })
                .collect();
            match config.format {
                Format::Table => {
                    let rows: Vec<render::ZRow> = entries
                        .iter()
                        .map(|e| render::ZRow {
                            name: e.name,
                            h_a: e.score.h_a,
                            h_b: e.score.h_b,
                            deviation: e.score.deviation,
                            similarity: e.score.similarity,
                            clamped: e.score.clamped,
                        })
                        .collect();
                    Ok(render::z_ranking(&rows, config.precision))
                }
                Format::Json => to_json(&ZReport {
                    config: ConfigEcho::from(&model),
                    ranking: entries,
                }),
            }
        }
    }
}
