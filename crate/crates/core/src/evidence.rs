//! Frames of discernment, mass functions and Dempster's rule of combination.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Masses closer than this to total conflict are rejected.
pub const TOTAL_CONFLICT_EPS: f64 = 1e-12;
const SUM_TOLERANCE: f64 = 1e-12;

/// Ordered set of mutually exclusive hypotheses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct Frame {
    labels: Vec<String>,
}

impl Frame {
    pub const MAX_SIZE: usize = 64;

    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::InvalidFrame(
                "a frame needs at least one hypothesis".into(),
            ));
        }
        if labels.len() > Self::MAX_SIZE {
            return Err(Error::InvalidFrame(format!(
                "{} hypotheses exceed the limit of {}",
                labels.len(),
                Self::MAX_SIZE
            )));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::InvalidFrame(format!("duplicate hypothesis {l:?}")));
            }
        }
        Ok(Self { labels })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn singleton(&self, index: usize) -> FocalSet {
        debug_assert!(index < self.len());
        FocalSet(1 << index)
    }

    /// The whole frame Θ.
    pub fn universe(&self) -> FocalSet {
        FocalSet(if self.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.len()) - 1
        })
    }

    pub fn set_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<FocalSet> {
        labels.iter().try_fold(FocalSet::EMPTY, |acc, l| {
            let l = l.as_ref();
            self.index_of(l)
                .map(|i| acc.union(FocalSet(1 << i)))
                .ok_or_else(|| Error::InvalidMass(format!("unknown hypothesis {l:?}")))
        })
    }

    pub fn labels_of(&self, set: FocalSet) -> Vec<&str> {
        set.members().map(|i| self.labels[i].as_str()).collect()
    }
}

impl TryFrom<Vec<String>> for Frame {
    type Error = Error;

    fn try_from(labels: Vec<String>) -> Result<Self> {
        Frame::new(labels)
    }
}

impl From<Frame> for Vec<String> {
    fn from(f: Frame) -> Self {
        f.labels
    }
}

/// A subset of a frame, stored as a bitmask over hypothesis indices.
///
/// Sets order by cardinality first, so singletons come before Θ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FocalSet(u64);

impl FocalSet {
    pub const EMPTY: FocalSet = FocalSet(0);

    pub fn bits(self) -> u64 {
        self.0
    }
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }
    pub fn intersect(self, other: FocalSet) -> FocalSet {
        FocalSet(self.0 & other.0)
    }
    pub fn union(self, other: FocalSet) -> FocalSet {
        FocalSet(self.0 | other.0)
    }
    pub fn contains(self, index: usize) -> bool {
        index < 64 && self.0 & (1 << index) != 0
    }
    pub fn members(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |i| self.contains(*i))
    }
}

impl Ord for FocalSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.len(), self.0).cmp(&(other.len(), other.0))
    }
}

impl PartialOrd for FocalSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A basic probability assignment over a frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MassRepr", into = "MassRepr")]
pub struct MassFunction {
    frame: Frame,
    masses: BTreeMap<FocalSet, f64>,
}

impl MassFunction {
    /// Builds a mass function from `(focal set, mass)` pairs. Repeated focal
    /// sets accumulate; zero masses are dropped.
    pub fn new<I>(frame: Frame, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (FocalSet, f64)>,
    {
        let universe = frame.universe();
        let mut masses = BTreeMap::new();
        for (set, m) in entries {
            if !m.is_finite() || m < 0.0 {
                return Err(Error::InvalidMass(format!(
                    "mass {m} is not a finite non-negative number"
                )));
            }
            if m == 0.0 {
                continue;
            }
            if set.is_empty() {
                return Err(Error::InvalidMass("the empty set cannot carry mass".into()));
            }
            if set.union(universe) != universe {
                return Err(Error::InvalidMass("focal set outside the frame".into()));
            }
            *masses.entry(set).or_insert(0.0) += m;
        }
        let total: f64 = masses.values().sum();
        if (total - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::InvalidMass(format!("masses sum to {total}, not 1")));
        }
        Ok(Self { frame, masses })
    }

    /// All mass on Θ.
    pub fn vacuous(frame: Frame) -> Self {
        let universe = frame.universe();
        Self {
            frame,
            masses: BTreeMap::from([(universe, 1.0)]),
        }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn mass(&self, set: FocalSet) -> f64 {
        self.masses.get(&set).copied().unwrap_or(0.0)
    }

    pub fn singleton_mass(&self, index: usize) -> f64 {
        self.mass(self.frame.singleton(index))
    }

    pub fn universe_mass(&self) -> f64 {
        self.mass(self.frame.universe())
    }

    /// Focal sets with positive mass, singletons first.
    pub fn focal(&self) -> impl Iterator<Item = (FocalSet, f64)> + '_ {
        self.masses.iter().map(|(s, m)| (*s, *m))
    }

    pub fn singleton_masses(&self) -> Vec<f64> {
        (0..self.frame.len())
            .map(|i| self.singleton_mass(i))
            .collect()
    }

    pub fn is_vacuous(&self) -> bool {
        self.universe_mass() == 1.0
    }
}

impl fmt::Display for MassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .focal()
            .map(|(s, m)| format!("{{{}}}: {m:.4}", self.frame.labels_of(s).join(",")))
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

#[derive(Serialize, Deserialize)]
struct MassRepr {
    frame: Frame,
    masses: Vec<MassEntry>,
}

#[derive(Serialize, Deserialize)]
struct MassEntry {
    focal: Vec<String>,
    mass: f64,
}

impl TryFrom<MassRepr> for MassFunction {
    type Error = Error;

    fn try_from(repr: MassRepr) -> Result<Self> {
        let entries = repr
            .masses
            .iter()
            .map(|e| Ok((repr.frame.set_of(&e.focal)?, e.mass)))
            .collect::<Result<Vec<_>>>()?;
        MassFunction::new(repr.frame, entries)
    }
}

impl From<MassFunction> for MassRepr {
    fn from(m: MassFunction) -> Self {
        let masses = m
            .focal()
            .map(|(s, mass)| MassEntry {
                focal: m.frame.labels_of(s).into_iter().map(String::from).collect(),
                mass,
            })
            .collect();
        MassRepr {
            frame: m.frame,
            masses,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CombinationOutcome {
    pub combined: MassFunction,
    /// Conflict of the whole conjunctive combination, `1 - Π(1 - k_i)`.
    pub conflict: f64,
    /// Conflict `k` of each pairwise step, in fold order.
    pub trace: Vec<f64>,
}

/// Converts per-hypothesis similarity scores into a mass function.
///
/// Each hypothesis receives its score, Θ receives `1 - max score`, and the
/// result is normalized.
pub fn bpa_from_similarities(frame: &Frame, scores: &[f64]) -> Result<MassFunction> {
    if scores.len() != frame.len() {
        return Err(Error::SizeMismatch {
            expected: frame.len(),
            actual: scores.len(),
        });
    }
    if let Some(bad) = scores.iter().find(|s| !(0.0..=1.0).contains(*s)) {
        return Err(Error::ScoreOutOfRange(*bad));
    }
    let best = scores.iter().copied().fold(0.0, f64::max);
    let residual = 1.0 - best;
    let total: f64 = scores.iter().sum::<f64>() + residual;
    let entries = scores
        .iter()
        .enumerate()
        .map(|(i, s)| (frame.singleton(i), s / total))
        .chain(std::iter::once((frame.universe(), residual / total)));
    MassFunction::new(frame.clone(), entries)
}

/// Sums values in a canonical order so the result does not depend on the
/// order they were produced in.
fn canonical_sum(mut values: Vec<f64>) -> f64 {
    values.sort_by(f64::total_cmp);
    values.into_iter().sum()
}

/// Dempster's rule for two mass functions over the same frame.
pub fn dempster_combine(m1: &MassFunction, m2: &MassFunction) -> Result<CombinationOutcome> {
    combine_pair(m1, m2, || ("first".into(), "second".into()))
}

fn combine_pair(
    m1: &MassFunction,
    m2: &MassFunction,
    names: impl FnOnce() -> (String, String),
) -> Result<CombinationOutcome> {
    if m1.frame != m2.frame {
        return Err(Error::FrameMismatch);
    }
    let mut parts: BTreeMap<FocalSet, Vec<f64>> = BTreeMap::new();
    let mut conflicting = Vec::new();
    for (b, mb) in m1.focal() {
        for (c, mc) in m2.focal() {
            let product = mb * mc;
            let meet = b.intersect(c);
            if meet.is_empty() {
                conflicting.push(product);
            } else {
                parts.entry(meet).or_default().push(product);
            }
        }
    }
    let k = canonical_sum(conflicting);
    if k >= 1.0 - TOTAL_CONFLICT_EPS {
        let (left, right) = names();
        return Err(Error::TotalConflict {
            left,
            right,
            conflict: k,
        });
    }
    let scale = 1.0 - k;
    let masses = parts
        .into_iter()
        .map(|(set, ps)| (set, canonical_sum(ps) / scale))
        .collect();
    Ok(CombinationOutcome {
        combined: MassFunction {
            frame: m1.frame.clone(),
            masses,
        },
        conflict: k,
        trace: vec![k],
    })
}

/// Left fold of Dempster's rule over every mass function.
pub fn combine_all(masses: &[MassFunction]) -> Result<CombinationOutcome> {
    let labels: Vec<String> = (0..masses.len()).map(|i| format!("#{i}")).collect();
    combine_all_labeled(masses, &labels)
}

/// As [`combine_all`], naming sources by `labels` when reporting total conflict.
pub fn combine_all_labeled(
    masses: &[MassFunction],
    labels: &[String],
) -> Result<CombinationOutcome> {
    let (first, rest) = masses.split_first().ok_or(Error::EmptyList)?;
    let mut acc = first.clone();
    let mut trace = Vec::with_capacity(rest.len());
    for (i, next) in rest.iter().enumerate() {
        let step = combine_pair(&acc, next, || {
            let left = if i == 0 {
                labels[0].clone()
            } else {
                format!("{}..={}", labels[0], labels[i])
            };
            (left, labels[i + 1].clone())
        })?;
        acc = step.combined;
        trace.push(step.conflict);
    }
    let conflict = 1.0 - trace.iter().map(|k| 1.0 - k).product::<f64>();
    Ok(CombinationOutcome {
        combined: acc,
        conflict,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    use super::*;

    fn frame3() -> Frame {
        Frame::new(["CC", "Men", "Meas"]).unwrap()
    }

    fn simple(frame: &Frame, singles: &[f64], theta: f64) -> MassFunction {
        let entries = singles
            .iter()
            .enumerate()
            .map(|(i, m)| (frame.singleton(i), *m))
            .chain([(frame.universe(), theta)]);
        MassFunction::new(frame.clone(), entries).unwrap()
    }

    #[test]
    fn frame_validation() {
        assert!(Frame::new(Vec::<String>::new()).is_err());
        assert!(Frame::new(["a", "b", "a"]).is_err());
        assert!(Frame::new((0..65).map(|i| i.to_string())).is_err());
        let big = Frame::new((0..64).map(|i| i.to_string())).unwrap();
        assert_eq!(big.universe().len(), 64);
    }

    #[test]
    fn mass_validation() {
        let f = frame3();
        assert!(MassFunction::new(f.clone(), [(f.singleton(0), 0.5)]).is_err());
        assert!(
            MassFunction::new(f.clone(), [(f.singleton(0), -0.5), (f.universe(), 1.5)]).is_err()
        );
        assert!(
            MassFunction::new(f.clone(), [(FocalSet::EMPTY, 0.5), (f.universe(), 0.5)]).is_err()
        );
        assert!(MassFunction::new(f.clone(), [(FocalSet(0b1000), 1.0)]).is_err());
        assert!(
            MassFunction::new(f.clone(), [(f.universe(), 1.0), (FocalSet::EMPTY, 0.0)]).is_ok()
        );
    }

    #[test]
    fn focal_sets_order_singletons_first() {
        let f = frame3();
        let mut sets = [
            f.universe(),
            f.singleton(2),
            f.set_of(&["CC", "Meas"]).unwrap(),
            f.singleton(0),
        ];
        sets.sort();
        assert_eq!(sets[0], f.singleton(0));
        assert_eq!(sets[1], f.singleton(2));
        assert_eq!(sets[3], f.universe());
    }

    #[test]
    fn bpa_from_medical_similarities() {
        let f = frame3();
        let m = bpa_from_similarities(&f, &[0.9662, 0.2599, 0.1632]).unwrap();
        assert_abs_diff_eq!(m.singleton_mass(0), 0.6789, epsilon = 1e-4);
        assert_abs_diff_eq!(m.singleton_mass(1), 0.1826, epsilon = 1e-4);
        assert_abs_diff_eq!(m.singleton_mass(2), 0.1147, epsilon = 1e-4);
        assert_abs_diff_eq!(m.universe_mass(), 0.0238, epsilon = 1e-4);
    }

    #[test]
    fn bpa_edge_cases() {
        let f = frame3();
        assert!(bpa_from_similarities(&f, &[0.0, 0.0, 0.0])
            .unwrap()
            .is_vacuous());
        assert_eq!(
            bpa_from_similarities(&f, &[0.1, 0.2]),
            Err(Error::SizeMismatch {
                expected: 3,
                actual: 2
            })
        );
        assert_eq!(
            bpa_from_similarities(&f, &[0.1, 1.2, 0.0]),
            Err(Error::ScoreOutOfRange(1.2))
        );
        assert!(bpa_from_similarities(&f, &[0.1, f64::NAN, 0.0]).is_err());
        let certain = bpa_from_similarities(&f, &[1.0, 0.0, 0.0]).unwrap();
        assert_eq!(certain.singleton_mass(0), 1.0);
        assert_eq!(certain.universe_mass(), 0.0);
    }

    #[test]
    fn single_hypothesis_frame() {
        let f = Frame::new(["only"]).unwrap();
        let m = bpa_from_similarities(&f, &[0.4]).unwrap();
        assert_abs_diff_eq!(m.universe_mass(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn vacuous_is_identity() {
        let f = frame3();
        let m = simple(&f, &[0.5, 0.2, 0.1], 0.2);
        let out = dempster_combine(&m, &MassFunction::vacuous(f.clone())).unwrap();
        assert_eq!(out.conflict, 0.0);
        assert_eq!(out.combined, m);
    }

    #[test]
    fn total_conflict_is_an_error() {
        let f = Frame::new(["X", "Y"]).unwrap();
        let x = MassFunction::new(f.clone(), [(f.singleton(0), 1.0)]).unwrap();
        let y = MassFunction::new(f.clone(), [(f.singleton(1), 1.0)]).unwrap();
        assert!(matches!(
            dempster_combine(&x, &y),
            Err(Error::TotalConflict { .. })
        ));

        let v = MassFunction::vacuous(f.clone());
        let err =
            combine_all_labeled(&[x, v, y], &["E1".into(), "E2".into(), "E3".into()]).unwrap_err();
        assert_eq!(
            err,
            Error::TotalConflict {
                left: "E1..=E2".into(),
                right: "E3".into(),
                conflict: 1.0
            }
        );
    }

    #[test]
    fn frame_mismatch_is_an_error() {
        let a = MassFunction::vacuous(frame3());
        let b = MassFunction::vacuous(Frame::new(["CC", "Men"]).unwrap());
        assert_eq!(dempster_combine(&a, &b), Err(Error::FrameMismatch));
        assert_eq!(combine_all(&[]), Err(Error::EmptyList));
    }

    #[test]
    fn medical_fusion() {
        let f = frame3();
        let per_expert = [
            bpa_from_similarities(&f, &[0.9662, 0.2599, 0.1632]).unwrap(),
            simple(&f, &[0.4746, 0.1674, 0.1718], 0.1862),
            simple(&f, &[0.1717, 0.1675, 0.5596], 0.1012),
        ];
        let out = combine_all(&per_expert).unwrap();
        let expected = [0.7085, 0.1076, 0.1814];
        for (i, e) in expected.iter().enumerate() {
            assert_abs_diff_eq!(out.combined.singleton_mass(i), *e, epsilon = 2e-3);
        }
        assert_abs_diff_eq!(out.combined.universe_mass(), 0.0025, epsilon = 2e-3);
        assert_eq!(out.trace.len(), 2);

        let single = combine_all(&per_expert[..1]).unwrap();
        assert_eq!(single.combined, per_expert[0]);
        assert!(single.trace.is_empty());
    }

    #[test]
    fn serde_names_focal_sets() {
        let f = frame3();
        let m = simple(&f, &[0.5, 0.2, 0.1], 0.2);
        let repr = MassRepr::from(m.clone());
        assert_eq!(repr.masses[0].focal, vec!["CC"]);
        assert_eq!(repr.masses[3].focal, vec!["CC", "Men", "Meas"]);
        assert_eq!(MassFunction::try_from(repr).unwrap(), m);
    }

    /// Conflict by enumerating every pair of subsets as boolean vectors.
    fn brute_conflict(m1: &MassFunction, m2: &MassFunction) -> f64 {
        let n = m1.frame().len();
        let subsets: Vec<Vec<bool>> = (0u64..1 << n)
            .map(|bits| (0..n).map(|i| bits >> i & 1 == 1).collect())
            .collect();
        let to_set = |v: &Vec<bool>| {
            FocalSet(
                v.iter()
                    .enumerate()
                    .filter(|(_, b)| **b)
                    .map(|(i, _)| 1u64 << i)
                    .sum(),
            )
        };
        let mut k = 0.0;
        for s in &subsets {
            for t in &subsets {
                if !s.iter().zip(t).any(|(x, y)| *x && *y) {
                    k += m1.mass(to_set(s)) * m2.mass(to_set(t));
                }
            }
        }
        k
    }

    fn arb_mass(n: usize) -> impl Strategy<Value = MassFunction> {
        let sets = 1u64 << n;
        prop::collection::vec((1..sets, 0.01f64..1.0), 1..6).prop_map(move |raw| {
            let frame = Frame::new((0..n).map(|i| format!("h{i}"))).unwrap();
            let total: f64 = raw.iter().map(|(_, w)| w).sum();
            let mut entries: Vec<(FocalSet, f64)> =
                raw.iter().map(|(s, w)| (FocalSet(*s), w / total)).collect();
            // absorb rounding so the sum is exact enough
            let sum: f64 = entries.iter().map(|e| e.1).sum();
            entries.push((frame.universe(), (1.0 - sum).max(0.0)));
            MassFunction::new(frame, entries).unwrap()
        })
    }

    fn arb_triple() -> impl Strategy<Value = (MassFunction, MassFunction, MassFunction)> {
        (1usize..=5).prop_flat_map(|n| (arb_mass(n), arb_mass(n), arb_mass(n)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn commutative_and_associative((a, b, c) in arb_triple()) {
            let ab = dempster_combine(&a, &b);
            let ba = dempster_combine(&b, &a);
            prop_assert_eq!(&ab, &ba);
            let (Ok(ab), Ok(bc)) = (ab, dempster_combine(&b, &c)) else { return Ok(()) };
            let (Ok(left), Ok(right)) = (dempster_combine(&ab.combined, &c), dempster_combine(&a, &bc.combined))
                else { return Ok(()) };
            for (set, m) in left.combined.focal().chain(right.combined.focal()) {
                let _ = m;
                prop_assert!((left.combined.mass(set) - right.combined.mass(set)).abs() < 1e-12);
            }
        }

        #[test]
        fn conflict_matches_enumeration((a, b, _c) in arb_triple()) {
            prop_assume!(a.frame().len() <= 4);
            let k = brute_conflict(&a, &b);
            match dempster_combine(&a, &b) {
                Ok(out) => {
                    prop_assert!((out.conflict - k).abs() < 1e-12);
                    let total: f64 = out.combined.focal().map(|(_, m)| m).sum();
                    prop_assert!((total - 1.0).abs() < 1e-12);
                    prop_assert!(out.combined.focal().all(|(s, m)| m >= 0.0 && !s.is_empty()));
                }
                Err(_) => prop_assert!(k >= 1.0 - 1e-12),
            }
        }

        #[test]
        fn bpa_keeps_argmax(scores in prop::collection::vec(0.0f64..=1.0, 2..8)) {
            let frame = Frame::new((0..scores.len()).map(|i| format!("h{i}"))).unwrap();
            let m = bpa_from_similarities(&frame, &scores).unwrap();
            let argmax = |v: &[f64]| {
                v.iter().enumerate().fold(0, |best, (i, x)| if *x > v[best] { i } else { best })
            };
            prop_assert_eq!(argmax(&m.singleton_masses()), argmax(&scores));
            let total: f64 = m.focal().map(|(_, x)| x).sum();
            prop_assert!((total - 1.0).abs() < 1e-12);
        }

        #[test]
        fn self_combination_concentrates(scores in prop::collection::vec(0.01f64..0.99, 2..6)) {
            let frame = Frame::new((0..scores.len()).map(|i| format!("h{i}"))).unwrap();
            let m = bpa_from_similarities(&frame, &scores).unwrap();
            let singles = m.singleton_masses();
            let top = singles.iter().copied().fold(0.0, f64::max);
            prop_assume!(singles.iter().filter(|x| **x == top).count() == 1);
            let mm = dempster_combine(&m, &m).unwrap().combined;
            let top2 = mm.singleton_masses().into_iter().fold(0.0, f64::max);
            prop_assert!(top2 >= top - 1e-15);
        }
    }
}
