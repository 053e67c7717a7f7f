//! Exact finite cosine-sum representation of the iterates h_n for the |sin|
//! weight under the triadic map. Writing s = t - 1/2, every iterate is a sum
//! of terms A cos(pi a s) with A > 0 and frequency a in (0, 1/2); one
//! application of the operator branches each frequency a into (1 +- a)/3 with
//! positive coefficients. All frequencies are exact integer numerators over
//! 3^n, so merging equal frequencies is exact. Since cos(pi a s) is even and
//! decreasing in |s| <= 1/2 for such a, the minimum of h_n is at t = 0 and
//! the maximum at t = 1/2, which certifies the induced enclosure.

use crate::transfer::{Method, SpectralInterval};
use crate::util::{compensated_sum, cos_pi};
use crate::weights::PeriodicWeight;
use crate::{Error, Result};
use std::collections::HashMap;

/// One term A cos(pi (j / 3^depth) (t - 1/2)).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CosineTerm {
    pub amplitude: f64,
    pub freq_numerator: u64,
}

/// h_n as an exact finite cosine sum at depth n.
#[derive(Debug, Clone)]
pub struct CosineSum {
    depth: u32,
    terms: Vec<CosineTerm>,
}

pub const MAX_DEPTH: u32 = 24;

impl CosineSum {
    /// The constant function 1 (depth 0, single zero-frequency term).
    pub fn initial() -> Self {
        Self {
            depth: 0,
            terms: vec![CosineTerm {
                amplitude: 1.0,
                freq_numerator: 0,
            }],
        }
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn terms(&self) -> &[CosineTerm] {
        &self.terms
    }

    /// Apply the transfer operator once: each term (A, a) branches to
    /// (A (1 + 2 cos(pi a')) / 6, a' = (1 +- a)/3), merged by frequency.
    pub fn apply_transfer(&self) -> Result<CosineSum> {
        if self.depth >= MAX_DEPTH {
            return Err(Error::resource(format!(
                "cosine sum capped at depth {MAX_DEPTH} (2^(n-1) terms)"
            )));
        }
        let depth = self.depth + 1;
        let pow3: u64 = 3u64.pow(self.depth);
        let new_pow3 = 3 * pow3;
        let mut merged: HashMap<u64, f64> = HashMap::with_capacity(2 * self.terms.len());
        for term in &self.terms {
            debug_assert!(term.freq_numerator < new_pow3);
            for sign in [1i64, -1] {
                let num = (pow3 as i64 + sign * term.freq_numerator as i64) as u64;
                let a = num as f64 / new_pow3 as f64;
                let amp = term.amplitude * (1.0 + 2.0 * cos_pi(a)) / 6.0;
                *merged.entry(num).or_insert(0.0) += amp;
            }
        }
        let mut terms: Vec<CosineTerm> = merged
            .into_iter()
            .map(|(freq_numerator, amplitude)| CosineTerm {
                amplitude,
                freq_numerator,
            })
            .collect();
        terms.sort_by_key(|t| t.freq_numerator);
        // invariants of the expansion: positive amplitudes, frequencies in (0, 1/2)
        for t in &terms {
            assert!(t.amplitude > 0.0, "amplitude must stay positive");
            assert!(
                t.freq_numerator > 0 && 2 * t.freq_numerator < new_pow3,
                "frequency must stay in (0, 1/2)"
            );
        }
        Ok(CosineSum { depth, terms })
    }

    /// Iterate from h_0 = 1 to depth n.
    pub fn at_depth(n: u32) -> Result<CosineSum> {
        let mut sum = CosineSum::initial();
        for _ in 0..n {
            sum = sum.apply_transfer()?;
        }
        Ok(sum)
    }

    /// Evaluate the sum at t.
    pub fn eval(&self, t: f64) -> f64 {
        let s = t - 0.5;
        let pow3 = 3f64.powi(self.depth as i32);
        compensated_sum(
            self.terms
                .iter()
                .map(|term| term.amplitude * cos_pi(term.freq_numerator as f64 / pow3 * s)),
        )
    }

    /// Minimum of the iterate: attained at t = 0 since every cosine term is
    /// even and decreasing in |t - 1/2| <= 1/2.
    pub fn min_value(&self) -> f64 {
        let pow3 = 3f64.powi(self.depth as i32);
        compensated_sum(
            self.terms
                .iter()
                .map(|t| t.amplitude * cos_pi(0.5 * t.freq_numerator as f64 / pow3)),
        )
    }

    /// Maximum of the iterate: the amplitude sum, attained at t = 1/2.
    pub fn max_value(&self) -> f64 {
        compensated_sum(self.terms.iter().map(|t| t.amplitude))
    }
}

/// Certified enclosure [h_n(0)^{1/n}, h_n(1/2)^{1/n}] for the |sin| weight,
/// d = 3, from the exact cosine sum.
pub fn exact_bounds(n: u32) -> Result<SpectralInterval> {
    if n == 0 {
        return Err(Error::invalid("enclosure depth must be >= 1"));
    }
    let sum = CosineSum::at_depth(n)?;
    let r = sum.min_value();
    let big_r = sum.max_value();
    // frequencies below 1/2 force max <= sqrt(2) min
    assert!(big_r <= 2f64.sqrt() * r + 1e-12);
    let root = |x: f64| x.powf(1.0 / n as f64);
    SpectralInterval::new(root(r), root(big_r), true, Method::Closed, Some(n))
}

/// Max discrepancy on a grid between the cosine-sum evaluation and the
/// preimage-sum evaluation of the same iterate.
pub fn crosscheck_expansion(n: u32, grid_m: usize) -> Result<f64> {
    let sum = CosineSum::at_depth(n)?;
    let w = PeriodicWeight::sin_pow(1.0)?;
    let mut worst: f64 = 0.0;
    for j in 0..grid_m {
        let t = j as f64 / grid_m as f64;
        let direct = crate::transfer::transfer_value_hn(&w, 3, n, t)?;
        worst = worst.max((sum.eval(t) - direct).abs());
    }
    Ok(worst)
}
