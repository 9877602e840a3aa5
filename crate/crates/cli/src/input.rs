//! Input documents: assessment matrices (JSON or CSV) and item lists for the
//! ranking modes.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;
use zfuse_core::{AssessmentMatrix, Frame, LinguisticTerm, TrapezoidalFuzzyNumber, ZNumber};

use crate::CliError;

/// One component of a cell: a lexicon name or an explicit `[a, b, c, d, w]`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ComponentSpec {
    Term(String),
    Numbers(Vec<f64>),
}

impl ComponentSpec {
    pub fn resolve(&self, field: &str) -> Result<TrapezoidalFuzzyNumber, CliError> {
        match self {
            ComponentSpec::Term(name) => name
                .parse::<LinguisticTerm>()
                .map(LinguisticTerm::shape)
                .map_err(|e| CliError::Parse(format!("{field}: {e}"))),
            ComponentSpec::Numbers(v) => {
                let [a, b, c, d, w] = v[..] else {
                    return Err(CliError::Parse(format!(
                        "{field}: expected [a, b, c, d, w], got {} numbers",
                        v.len()
                    )));
                };
                TrapezoidalFuzzyNumber::new(a, b, c, d, w)
                    .map_err(|e| CliError::Semantic(format!("{field}: {e}")))
            }
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellSpec {
    #[serde(rename = "A")]
    pub a: ComponentSpec,
    #[serde(rename = "B")]
    pub b: ComponentSpec,
}

impl CellSpec {
    fn resolve(&self, field: &str) -> Result<ZNumber, CliError> {
        Ok(ZNumber::new(
            self.a.resolve(&format!("{field}.A"))?,
            self.b.resolve(&format!("{field}.B"))?,
        ))
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SourceSpec {
    pub name: String,
    pub assessments: BTreeMap<String, CellSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDocument {
    pub frame: Vec<String>,
    pub sources: Vec<SourceSpec>,
    #[serde(default)]
    pub alpha: Option<f64>,
}

impl MatrixDocument {
    pub fn into_matrix(self) -> Result<AssessmentMatrix, CliError> {
        let frame = Frame::new(self.frame.clone())
            .map_err(|e| CliError::Semantic(format!("frame: {e}")))?;
        let mut names = Vec::with_capacity(self.sources.len());
        let mut cells = Vec::with_capacity(self.sources.len());
        for (i, src) in self.sources.iter().enumerate() {
            if let Some(extra) = src.assessments.keys().find(|k| frame.index_of(k).is_none()) {
                return Err(CliError::Semantic(format!(
                    "sources[{i}] ({}): hypothesis {extra:?} is not in the frame",
                    src.name
                )));
            }
            let row = frame
                .labels()
                .iter()
                .map(|h| {
                    let field = format!("sources[{i}].assessments.{h}");
                    src.assessments
                        .get(h)
                        .ok_or_else(|| {
                            CliError::Semantic(format!(
                                "{field}: missing (every source must grade every hypothesis)"
                            ))
                        })?
                        .resolve(&field)
                })
                .collect::<Result<Vec<_>, _>>()?;
            names.push(src.name.clone());
            cells.push(row);
        }
        AssessmentMatrix::new(frame, names, cells).map_err(|e| CliError::Semantic(e.to_string()))
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedNumber {
    pub name: String,
    pub value: ComponentSpec,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedZNumber {
    pub name: String,
    #[serde(rename = "A")]
    pub a: ComponentSpec,
    #[serde(rename = "B")]
    pub b: ComponentSpec,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FuzzyList {
    pub numbers: Vec<NamedNumber>,
    #[serde(default)]
    pub alpha: Option<f64>,
}

impl FuzzyList {
    pub fn resolve(&self) -> Result<Vec<(String, TrapezoidalFuzzyNumber)>, CliError> {
        self.numbers
            .iter()
            .enumerate()
            .map(|(i, n)| {
                Ok((
                    n.name.clone(),
                    n.value.resolve(&format!("numbers[{i}].value"))?,
                ))
            })
            .collect()
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZList {
    pub znumbers: Vec<NamedZNumber>,
    #[serde(default)]
    pub alpha: Option<f64>,
}

impl ZList {
    pub fn resolve(&self) -> Result<Vec<(String, ZNumber)>, CliError> {
        self.znumbers
            .iter()
            .enumerate()
            .map(|(i, z)| {
                let a = z.a.resolve(&format!("znumbers[{i}].A"))?;
                let b = z.b.resolve(&format!("znumbers[{i}].B"))?;
                Ok((z.name.clone(), ZNumber::new(a, b)))
            })
            .collect()
    }
}

pub fn read_to_string(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))
}

pub fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse(format!("invalid input document: {e}")))
}

fn is_csv(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"))
}

/// Loads an assessment matrix and the orness stored in the document, if any.
pub fn load_matrix(path: &Path) -> Result<(AssessmentMatrix, Option<f64>), CliError> {
    let text = read_to_string(path)?;
    if is_csv(path) {
        Ok((parse_csv(&text)?, None))
    } else {
        let doc: MatrixDocument = parse_json(&text)?;
        let alpha = doc.alpha;
        Ok((doc.into_matrix()?, alpha))
    }
}

fn parse_csv_component(raw: &str, field: &str) -> Result<TrapezoidalFuzzyNumber, CliError> {
    let raw = raw.trim();
    let numbers: Result<Vec<f64>, _> = raw
        .split(|c: char| c == ';' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(str::parse::<f64>)
        .collect();
    match numbers {
        Ok(v) if !v.is_empty() => ComponentSpec::Numbers(v).resolve(field),
        _ => ComponentSpec::Term(raw.to_string()).resolve(field),
    }
}

/// Flat matrix form: a header of hypotheses, then an `A` row and a `B` row per
/// source, each led by the source name.
pub fn parse_csv(text: &str) -> Result<AssessmentMatrix, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header = reader
        .headers()
        .map_err(|e| CliError::Parse(format!("csv header: {e}")))?
        .clone();
    let hypotheses: Vec<String> = header.iter().skip(1).map(String::from).collect();
    let frame =
        Frame::new(hypotheses).map_err(|e| CliError::Semantic(format!("csv header: {e}")))?;

    let records: Vec<csv::StringRecord> = reader
        .records()
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Parse(format!("csv: {e}")))?;
    if !records.len().is_multiple_of(2) {
        return Err(CliError::Parse(format!(
            "csv: {} data rows; each source needs an A row and a B row",
            records.len()
        )));
    }

    let mut names = Vec::new();
    let mut cells = Vec::new();
    for pair in records.chunks(2) {
        let (a_row, b_row) = (&pair[0], &pair[1]);
        let line = a_row.position().map_or(0, |p| p.line());
        let name = a_row.get(0).unwrap_or_default().to_string();
        if b_row.get(0) != Some(name.as_str()) {
            return Err(CliError::Parse(format!(
                "csv line {}: expected the B row for source {name:?}",
                line + 1
            )));
        }
        for (row, tag) in [(a_row, "A"), (b_row, "B")] {
            if row.len() != frame.len() + 1 {
                return Err(CliError::Parse(format!(
                    "csv line {}: {} {tag} cells for {} hypotheses",
                    row.position().map_or(0, |p| p.line()),
                    row.len().saturating_sub(1),
                    frame.len()
                )));
            }
        }
        let row = (0..frame.len())
            .map(|h| {
                let field = |tag: &str, r: &csv::StringRecord| {
                    format!(
                        "csv line {} ({name}, {}).{tag}",
                        r.position().map_or(0, |p| p.line()),
                        frame.labels()[h]
                    )
                };
                let a = parse_csv_component(&a_row[h + 1], &field("A", a_row))?;
                let b = parse_csv_component(&b_row[h + 1], &field("B", b_row))?;
                Ok(ZNumber::new(a, b))
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        names.push(name);
        cells.push(row);
    }
    AssessmentMatrix::new(frame, names, cells).map_err(|e| CliError::Semantic(e.to_string()))
}
