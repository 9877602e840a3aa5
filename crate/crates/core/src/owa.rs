//! OWA weight vectors and the maximal-entropy weight model.
//!
//! For a target orness `alpha` the entropy-maximizing weights form a geometric
//! progression `w_i ∝ r^(i-1)`, so the constrained problem reduces to finding
//! the single ratio `r` whose progression has the requested orness.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Orness used throughout the decision pipeline unless configured otherwise.
pub const DEFAULT_ORNESS: f64 = 0.7;

const ORNESS_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightVector {
    weights: Vec<f64>,
    alpha: f64,
}

impl WeightVector {
    /// Wraps caller-supplied weights. They must be non-negative and sum to one;
    /// `alpha` is recomputed from them.
    pub fn from_weights(weights: Vec<f64>) -> Result<Self> {
        if weights.len() < 2 {
            return Err(Error::TooFewWeights(weights.len()));
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidWeights(
                "weights must be finite and non-negative".into(),
            ));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidWeights(format!(
                "weights sum to {total}, not 1"
            )));
        }
        let alpha = orness_of(&weights);
        Ok(Self { weights, alpha })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// The orness level this vector was solved for.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn orness(&self) -> f64 {
        orness_of(&self.weights)
    }

    pub fn dispersion(&self) -> f64 {
        dispersion_of(&self.weights)
    }

    /// Weighted sum of `values`, paired position by position.
    pub fn aggregate(&self, values: &[f64]) -> Result<f64> {
        if values.len() != self.weights.len() {
            return Err(Error::WeightLength {
                expected: self.weights.len(),
                actual: values.len(),
            });
        }
        Ok(self.weights.iter().zip(values).map(|(w, v)| w * v).sum())
    }
}

/// `1/(n-1) * Σ (n-i) w_i`, with positions counted from 1.
pub fn orness_of(weights: &[f64]) -> f64 {
    let n = weights.len();
    if n < 2 {
        return 1.0;
    }
    let top = (n - 1) as f64;
    weights
        .iter()
        .enumerate()
        .map(|(i, w)| (top - i as f64) * w)
        .sum::<f64>()
        / top
}

/// Shannon entropy `-Σ w ln w` with `0 ln 0 = 0`.
pub fn dispersion_of(weights: &[f64]) -> f64 {
    -weights
        .iter()
        .filter(|w| **w > 0.0)
        .map(|w| w * w.ln())
        .sum::<f64>()
}

/// Maximal-entropy OWA weights of length `n` with orness `alpha`.
pub fn mem_weights(n: usize, alpha: f64) -> Result<WeightVector> {
    if n < 2 {
        return Err(Error::TooFewWeights(n));
    }
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidOrness(alpha));
    }

    let weights = if alpha == 1.0 {
        corner(n, 0)
    } else if alpha == 0.0 {
        corner(n, n - 1)
    } else if alpha == 0.5 {
        vec![1.0 / n as f64; n]
    } else if n == 2 {
        vec![alpha, 1.0 - alpha]
    } else if alpha > 0.5 {
        geometric(n, solve_ratio(n, alpha))
    } else {
        // mirror image of the top-heavy solution
        let mut w = geometric(n, solve_ratio(n, 1.0 - alpha));
        w.reverse();
        w
    };
    Ok(WeightVector { weights, alpha })
}

fn corner(n: usize, at: usize) -> Vec<f64> {
    let mut w = vec![0.0; n];
    w[at] = 1.0;
    w
}

fn geometric(n: usize, ratio: f64) -> Vec<f64> {
    let mut w: Vec<f64> = std::iter::successors(Some(1.0), |p| Some(p * ratio))
        .take(n)
        .collect();
    let total: f64 = w.iter().sum();
    w.iter_mut().for_each(|x| *x /= total);
    w
}

/// Bisection for the ratio `r ∈ (0, 1)` whose progression has orness `alpha > 0.5`.
///
/// Orness falls monotonically from 1 at `r = 0` to 1/2 at `r = 1`.
fn solve_ratio(n: usize, alpha: f64) -> f64 {
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    let mut mid = 0.5;
    for _ in 0..200 {
        mid = 0.5 * (lo + hi);
        let residual = orness_of(&geometric(n, mid)) - alpha;
        if residual.abs() < ORNESS_TOLERANCE * 1e-2 {
            break;
        }
        if residual > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * hi {
            break;
        }
    }
    mid
}

#[cfg(test)]
mod tests {
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    use super::*;

    /// Brute-force search along the feasible line of the 3-simplex.
    fn grid_mem3(alpha: f64, step: f64) -> [f64; 3] {
        let mut best = ([0.0; 3], f64::NEG_INFINITY);
        let steps = (1.0 / step).round() as usize;
        for k in 0..=steps {
            let w1 = k as f64 * step;
            let w2 = 2.0 * alpha - 2.0 * w1;
            let w3 = 1.0 - w1 - w2;
            if w2 < 0.0 || w3 < 0.0 {
                continue;
            }
            let disp = dispersion_of(&[w1, w2, w3]);
            if disp > best.1 {
                best = ([w1, w2, w3], disp);
            }
        }
        best.0
    }

    #[test]
    fn orness_examples() {
        assert_eq!(orness_of(&[1.0, 0.0, 0.0]), 1.0);
        assert_abs_diff_eq!(orness_of(&[1.0 / 3.0; 3]), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(orness_of(&[0.7, 0.3]), 0.7, epsilon = 1e-15);
        assert_eq!(orness_of(&[0.0, 0.0, 1.0]), 0.0);
    }

    #[test]
    fn dispersion_examples() {
        assert_eq!(dispersion_of(&[1.0, 0.0, 0.0]), 0.0);
        assert_abs_diff_eq!(dispersion_of(&[1.0 / 3.0; 3]), 3f64.ln(), epsilon = 1e-15);
        assert_abs_diff_eq!(dispersion_of(&[0.7, 0.3]), 0.6109, epsilon = 5e-5);
    }

    #[test]
    fn two_weights_follow_orness() {
        let w = mem_weights(2, 0.7).unwrap();
        assert_eq!(w.weights(), &[0.7, 1.0 - 0.7]);
        assert_abs_diff_eq!(w.weights()[1], 0.3, epsilon = f64::EPSILON);
    }

    #[test]
    fn three_weights_match_grid_oracle() {
        let oracle = grid_mem3(0.7, 1e-6);
        assert_abs_diff_eq!(oracle[0], 0.553972, epsilon = 2e-6);
        assert_abs_diff_eq!(oracle[1], 0.292055, epsilon = 2e-6);
        assert_abs_diff_eq!(oracle[2], 0.153972, epsilon = 2e-6);

        let w = mem_weights(3, 0.7).unwrap();
        let w = w.weights();
        assert_abs_diff_eq!(w[0], 0.553972, epsilon = 5e-7);
        assert_abs_diff_eq!(w[1], 0.292055, epsilon = 5e-7);
        assert_abs_diff_eq!(w[2], 0.153972, epsilon = 5e-7);
        assert_abs_diff_eq!(w[1] + w[2], 0.446, epsilon = 5e-4);
    }

    #[test]
    fn special_orness_levels() {
        let uniform = mem_weights(3, 0.5).unwrap();
        for w in uniform.weights() {
            assert_abs_diff_eq!(*w, 1.0 / 3.0, epsilon = 1e-15);
        }
        assert_eq!(
            mem_weights(4, 1.0).unwrap().weights(),
            &[1.0, 0.0, 0.0, 0.0]
        );
        assert_eq!(
            mem_weights(4, 0.0).unwrap().weights(),
            &[0.0, 0.0, 0.0, 1.0]
        );
        assert_eq!(mem_weights(4, 1.0).unwrap().dispersion(), 0.0);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert_eq!(mem_weights(1, 0.7), Err(Error::TooFewWeights(1)));
        assert_eq!(mem_weights(3, 1.2), Err(Error::InvalidOrness(1.2)));
        assert!(mem_weights(3, -0.1).is_err());
        assert!(mem_weights(3, f64::NAN).is_err());
    }

    #[test]
    fn aggregate_checks_length() {
        let w = mem_weights(3, 0.7).unwrap();
        assert!(w.aggregate(&[1.0, 1.0]).is_err());
        assert_abs_diff_eq!(w.aggregate(&[1.0, 1.0, 1.0]).unwrap(), 1.0, epsilon = 1e-12);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn hits_requested_orness(n in 2usize..=10, alpha in 0.0f64..=1.0) {
            let w = mem_weights(n, alpha).unwrap();
            prop_assert_eq!(w.len(), n);
            prop_assert!((w.orness() - alpha).abs() < 1e-9);
            prop_assert!((w.weights().iter().sum::<f64>() - 1.0).abs() < 1e-12);
            prop_assert!(w.weights().iter().all(|x| (0.0..=1.0).contains(x)));
        }

        #[test]
        fn geometric_progression(n in 3usize..=10, alpha in 0.01f64..0.99) {
            let w = mem_weights(n, alpha).unwrap();
            let w = w.weights();
            let r = w[1] / w[0];
            for pair in w.windows(2).skip(1) {
                prop_assert!((pair[1] / pair[0] - r).abs() < 1e-9 * r.max(1.0));
            }
        }

        #[test]
        fn mirrored_orness_reverses(n in 2usize..=10, alpha in 0.0f64..=1.0) {
            let mut back = mem_weights(n, 1.0 - alpha).unwrap().weights().to_vec();
            back.reverse();
            let fwd = mem_weights(n, alpha).unwrap();
            for (x, y) in fwd.weights().iter().zip(&back) {
                prop_assert!((x - y).abs() < 1e-9);
            }
        }

        #[test]
        fn top_heavy_is_strictly_decreasing(n in 2usize..=10, alpha in 0.5001f64..0.999) {
            let w = mem_weights(n, alpha).unwrap();
            prop_assert!(w.weights().windows(2).all(|p| p[0] > p[1]));
        }

        #[test]
        fn no_feasible_perturbation_gains_entropy(
            n in 3usize..=8,
            alpha in 0.05f64..0.95,
            dir in prop::collection::vec(-1.0f64..1.0, 8),
        ) {
            let w = mem_weights(n, alpha).unwrap();
            let base = w.weights();
            // project a random direction onto the tangent space of both constraints
            let ones: Vec<f64> = vec![1.0; n];
            let positions: Vec<f64> = (0..n).map(|i| (n - 1 - i) as f64).collect();
            let mut v: Vec<f64> = dir[..n].to_vec();
            let mut basis: Vec<Vec<f64>> = Vec::new();
            for g in [ones, positions] {
                let mut g = g;
                for b in &basis {
                    let dot: f64 = g.iter().zip(b).map(|(x, y)| x * y).sum();
                    g.iter_mut().zip(b).for_each(|(x, y)| *x -= dot * y);
                }
                let norm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
                g.iter_mut().for_each(|x| *x /= norm);
                basis.push(g);
            }
            for b in &basis {
                let dot: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
                v.iter_mut().zip(b).for_each(|(x, y)| *x -= dot * y);
            }
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            prop_assume!(norm > 1e-6);
            let moved: Vec<f64> = base.iter().zip(&v).map(|(w, d)| w + 1e-3 * d / norm).collect();
            prop_assume!(moved.iter().all(|x| *x >= 0.0));
            prop_assert!((orness_of(&moved) - alpha).abs() < 1e-9);
            prop_assert!(dispersion_of(&moved) <= w.dispersion() + 1e-9);
        }
    }
}
