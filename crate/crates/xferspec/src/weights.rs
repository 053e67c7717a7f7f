//! 1-periodic nonnegative weights: closed-form power weights |cos(pi t)|^q and
//! |sin(pi t)|^q, symmetric trigonometric polynomials, and d-adic step
//! functions, together with their Fourier coefficients, zero structure and the
//! sine-envelope polynomials used for upper/lower growth-rate bounds.

use crate::util::{abs_cos_pi, abs_sin_pi, frac, golden_min, par_map};
use crate::{Error, Result};
use std::f64::consts::PI;

/// Real trigonometric polynomial with even symmetry a_{-k} = a_k.
///
/// Only the half-spectrum k = 0..=N is stored; symmetry is enforced by
/// construction, so evaluation is real:
/// f(t) = a_0 + 2 sum_{k=1}^N a_k cos(2 pi k t).
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPolynomial {
    coeffs: Vec<f64>,
}

impl TrigPolynomial {
    /// Build from coefficients `[a_0, a_1, ..., a_N]`; the negative-index
    /// coefficients are the mirror image.
    pub fn from_symmetric(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::invalid("trig polynomial needs at least a_0"));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::non_finite("trig polynomial coefficient"));
        }
        Ok(Self { coeffs })
    }

    pub fn constant(c: f64) -> Self {
        Self { coeffs: vec![c] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient a_k for any integer k (0 outside the band).
    #[inline]
    pub fn coeff(&self, k: i64) -> f64 {
        let k = k.unsigned_abs() as usize;
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    /// Half-spectrum view `[a_0, ..., a_N]`.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    #[inline]
    pub fn eval(&self, t: f64) -> f64 {
        let mut acc = self.coeffs[0];
        for (k, &a) in self.coeffs.iter().enumerate().skip(1) {
            acc += 2.0 * a * (2.0 * PI * k as f64 * t).cos();
        }
        acc
    }
}

/// A 1-periodic nonnegative weight function.
#[derive(Debug, Clone, PartialEq)]
pub enum PeriodicWeight {
    /// |cos(pi t)|^q, q > 0
    CosPow { q: f64 },
    /// |sin(pi t)|^q, q > 0
    SinPow { q: f64 },
    /// symmetric trigonometric polynomial
    TrigPoly(TrigPolynomial),
    /// constant value `values[i]` on [i/d, (i+1)/d)
    StepFn { values: Vec<f64> },
}

impl PeriodicWeight {
    pub fn cos_pow(q: f64) -> Result<Self> {
        if !q.is_finite() || q <= 0.0 {
            return Err(Error::invalid("power weight needs finite q > 0"));
        }
        Ok(Self::CosPow { q })
    }

    pub fn sin_pow(q: f64) -> Result<Self> {
        if !q.is_finite() || q <= 0.0 {
            return Err(Error::invalid("power weight needs finite q > 0"));
        }
        Ok(Self::SinPow { q })
    }

    pub fn trig_poly(poly: TrigPolynomial) -> Self {
        Self::TrigPoly(poly)
    }

    pub fn step_fn(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::invalid("step weight needs at least 2 cells"));
        }
        if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::invalid(
                "step weight values must be finite and nonnegative",
            ));
        }
        Ok(Self::StepFn { values })
    }

    /// Weight evaluation, 1-periodic in t. Hot path; `t` must be finite.
    #[inline]
    pub fn eval(&self, t: f64) -> f64 {
        debug_assert!(t.is_finite());
        match self {
            Self::CosPow { q } => pow_abs(abs_cos_pi(t), *q),
            Self::SinPow { q } => pow_abs(abs_sin_pi(t), *q),
            Self::TrigPoly(p) => p.eval(t),
            Self::StepFn { values } => {
                let d = values.len();
                let idx = (frac(t) * d as f64).floor() as usize;
                values[idx.min(d - 1)]
            }
        }
    }

    /// Evaluation with input validation (rejects non-finite t).
    pub fn eval_checked(&self, t: f64) -> Result<f64> {
        if !t.is_finite() {
            return Err(Error::non_finite("evaluation point"));
        }
        Ok(self.eval(t))
    }

    /// For CosPow with even integer exponent, that exponent.
    pub fn even_power(&self) -> Option<u32> {
        match self {
            Self::CosPow { q } | Self::SinPow { q } => {
                let r = q.round();
                if (q - r).abs() < 1e-12 && r > 0.0 && (r as u64).is_multiple_of(2) {
                    Some(r as u32)
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// Fourier coefficients a_k, |k| <= n, as a symmetric polynomial.
    ///
    /// Closed forms are used where available (even-power cosine weights, the
    /// |sin| weight); everything else falls back to midpoint quadrature and
    /// the result is tagged with the method and an error estimate.
    pub fn fourier_coefficients(&self, n: usize) -> Result<FourierCoefficients> {
        match self {
            Self::CosPow { q } if self.even_power().is_some() => {
                let m = (self.even_power().unwrap() / 2) as usize;
                let two_m = 2 * m as u64;
                let scale = (0.5f64).powi(two_m as i32);
                let coeffs: Vec<f64> = (0..=n)
                    .map(|k| {
                        if k <= m {
                            binomial(two_m, (k + m) as u64) * scale
                        } else {
                            0.0
                        }
                    })
                    .collect();
                let _ = q;
                Ok(FourierCoefficients {
                    poly: TrigPolynomial::from_symmetric(coeffs)?,
                    method: CoeffMethod::ClosedForm,
                })
            }
            Self::SinPow { q } if (*q - 1.0).abs() < 1e-12 => {
                let coeffs: Vec<f64> = (0..=n as i64).map(abs_sin_coeff).collect();
                Ok(FourierCoefficients {
                    poly: TrigPolynomial::from_symmetric(coeffs)?,
                    method: CoeffMethod::ClosedForm,
                })
            }
            Self::TrigPoly(p) => {
                let coeffs: Vec<f64> = (0..=n as i64).map(|k| p.coeff(k)).collect();
                Ok(FourierCoefficients {
                    poly: TrigPolynomial::from_symmetric(coeffs)?,
                    method: CoeffMethod::ClosedForm,
                })
            }
            _ => self.quadrature_coefficients(n),
        }
    }

    /// Midpoint-rule Fourier coefficients; m >= 4096 and a multiple of 4n.
    fn quadrature_coefficients(&self, n: usize) -> Result<FourierCoefficients> {
        let base = (4 * n).max(1);
        let m = base * 4096usize.div_ceil(base);
        let samples: Vec<f64> = (0..m)
            .map(|j| self.eval((j as f64 + 0.5) / m as f64))
            .collect();
        let mut coeffs = Vec::with_capacity(n + 1);
        let mut asym: f64 = 0.0;
        let mut half_err: f64 = 0.0;
        for k in 0..=n {
            let mut even = 0.0;
            let mut odd = 0.0;
            let mut s = 0.0;
            for (j, &f) in samples.iter().enumerate() {
                let t = (j as f64 + 0.5) / m as f64;
                let phase = 2.0 * PI * k as f64 * t;
                let c = f * phase.cos();
                if j % 2 == 0 {
                    even += c;
                } else {
                    odd += c;
                }
                s += f * phase.sin();
            }
            let full = (even + odd) / m as f64;
            let half = 2.0 * even / m as f64;
            coeffs.push(full);
            half_err = half_err.max((full - half).abs());
            asym = asym.max((s / m as f64).abs());
        }
        let scale = samples
            .iter()
            .fold(0.0f64, |a, &b| a.max(b.abs()))
            .max(1e-300);
        if asym > 1e-8 * scale {
            return Err(Error::invalid(
                "weight is not symmetric; its Fourier coefficients are not even",
            ));
        }
        Ok(FourierCoefficients {
            poly: TrigPolynomial::from_symmetric(coeffs)?,
            method: CoeffMethod::Quadrature {
                points: m,
                error_estimate: half_err,
            },
        })
    }

    /// Zero set, Krein classification and Hoelder exponent for the transfer
    /// operator with this weight under the degree-d Bernoulli map.
    pub fn classify(&self, d: u32) -> Result<Classification> {
        if d < 2 {
            return Err(Error::invalid("Bernoulli map degree must be >= 2"));
        }
        match self {
            Self::CosPow { q } => Ok(Classification {
                zeros: vec![0.5],
                krein: krein_from_zeros(&[0.5], d),
                holder_alpha: q.min(1.0),
            }),
            Self::SinPow { q } => Ok(Classification {
                zeros: vec![0.0],
                krein: krein_from_zeros(&[0.0], d),
                holder_alpha: q.min(1.0),
            }),
            Self::TrigPoly(p) => {
                let (zeros, interval) = trig_poly_zeros(p)?;
                let krein = if interval {
                    KreinStatus::NotKrein(NotKreinReason::VanishesOnInterval)
                } else {
                    krein_from_zeros(&zeros, d)
                };
                Ok(Classification {
                    zeros,
                    krein,
                    holder_alpha: 1.0,
                })
            }
            Self::StepFn { values } => {
                let d_cells = values.len();
                let zeros: Vec<f64> = values
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| **v == 0.0)
                    .map(|(i, _)| i as f64 / d_cells as f64)
                    .collect();
                let krein = if zeros.is_empty() {
                    // strictly positive weights always give Krein operators
                    KreinStatus::Krein
                } else {
                    KreinStatus::NotKrein(NotKreinReason::VanishesOnInterval)
                };
                Ok(Classification {
                    zeros,
                    krein,
                    holder_alpha: 0.0,
                })
            }
        }
    }
}

#[inline]
fn pow_abs(base: f64, q: f64) -> f64 {
    if q == 1.0 {
        base
    } else if q == 2.0 {
        base * base
    } else {
        base.powf(q)
    }
}

/// Fourier coefficient of |sin(pi t)|: a_k = -(2/pi) / ((2k-1)(2k+1)).
pub fn abs_sin_coeff(k: i64) -> f64 {
    -(2.0 / PI) / (((2 * k - 1) * (2 * k + 1)) as f64)
}

fn binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= (n - i) as u128;
        den *= (i + 1) as u128;
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    num as f64 / den as f64
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Result of a Fourier-coefficient computation.
#[derive(Debug, Clone)]
pub struct FourierCoefficients {
    pub poly: TrigPolynomial,
    pub method: CoeffMethod,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CoeffMethod {
    ClosedForm,
    Quadrature { points: usize, error_estimate: f64 },
}

/// Krein classification of the transfer operator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KreinStatus {
    Krein,
    NotKrein(NotKreinReason),
    /// single-zero theory does not apply (several isolated zeros)
    Unknown,
}

impl KreinStatus {
    pub fn is_krein(&self) -> bool {
        matches!(self, KreinStatus::Krein)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotKreinReason {
    /// d = 2 with the single zero at 1/2
    BinaryHalfZero,
    VanishesOnInterval,
}

#[derive(Debug, Clone)]
pub struct Classification {
    /// zeros of the weight in [0, 1)
    pub zeros: Vec<f64>,
    pub krein: KreinStatus,
    pub holder_alpha: f64,
}

/// Krein status from an isolated-zero set: Krein iff no zero, or exactly one
/// zero s0 with not (d = 2 and s0 = 1/2). Several isolated zeros are outside
/// the single-zero theory and reported as unknown.
pub fn krein_from_zeros(zeros: &[f64], d: u32) -> KreinStatus {
    match zeros.len() {
        0 => KreinStatus::Krein,
        1 => {
            let s0 = frac(zeros[0]);
            if d == 2 && (s0 - 0.5).abs() < 1e-7 {
                KreinStatus::NotKrein(NotKreinReason::BinaryHalfZero)
            } else {
                KreinStatus::Krein
            }
        }
        _ => KreinStatus::Unknown,
    }
}

/// Zeros of a nonnegative trig polynomial by grid scan plus golden-section
/// refinement; also reports whether the weight vanishes on an interval.
fn trig_poly_zeros(p: &TrigPolynomial) -> Result<(Vec<f64>, bool)> {
    const GRID: usize = 1 << 14;
    let vals = par_map(GRID, |j| p.eval(j as f64 / GRID as f64));
    let max = vals.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
    if max == 0.0 {
        return Ok((vec![0.0], true));
    }
    let min = vals.iter().fold(f64::INFINITY, |a, &b| a.min(b));
    if min < -1e-9 * max {
        return Err(Error::invalid(
            "trig polynomial weight takes negative values",
        ));
    }
    let zero_tol = 1e-10 * max;
    let near_tol = 1e-4 * max;
    // a run of >= 3 consecutive near-zero samples counts as interval vanishing
    let flat: Vec<bool> = vals.iter().map(|&v| v.abs() <= zero_tol).collect();
    let mut run = 0usize;
    let mut longest = 0usize;
    for j in 0..2 * GRID {
        if flat[j % GRID] {
            run += 1;
            longest = longest.max(run);
        } else {
            run = 0;
        }
        if j >= GRID && run >= GRID {
            break;
        }
    }
    if longest >= 3 {
        return Ok((vec![], true));
    }
    let h = 1.0 / GRID as f64;
    let mut zeros = Vec::new();
    for j in 0..GRID {
        if vals[j] > near_tol {
            continue;
        }
        let prev = vals[(j + GRID - 1) % GRID];
        let next = vals[(j + 1) % GRID];
        if vals[j] <= prev && vals[j] <= next {
            let a = j as f64 * h - h;
            let b = j as f64 * h + h;
            let (t, v) = golden_min(|t| p.eval(t), a, b, 1e-12);
            if v.abs() <= zero_tol {
                let t = frac(t);
                if zeros.iter().all(|z: &f64| {
                    let gap = (z - t).abs();
                    gap.min(1.0 - gap) > 1e-6
                }) {
                    zeros.push(t);
                }
            }
        }
    }
    zeros.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok((zeros, false))
}

/// Truncated sine-series envelopes g <= |sin(pi t)| <= h of degree N.
///
/// Both share the coefficients of |sin(pi t)| for 1 <= |k| <= N; the constant
/// term absorbs the full tail mass (2/pi)/(2N+1), added for h and subtracted
/// for g.
pub fn sine_envelopes(n: usize) -> Result<(TrigPolynomial, TrigPolynomial)> {
    if n < 1 {
        return Err(Error::invalid("envelope degree must be >= 1"));
    }
    let tail = (2.0 / PI) / (2.0 * n as f64 + 1.0);
    let mut lower = Vec::with_capacity(n + 1);
    let mut upper = Vec::with_capacity(n + 1);
    for k in 0..=n as i64 {
        let a = abs_sin_coeff(k);
        if k == 0 {
            lower.push(a - tail);
            upper.push(a + tail);
        } else {
            lower.push(a);
            upper.push(a);
        }
    }
    Ok((
        TrigPolynomial::from_symmetric(lower)?,
        TrigPolynomial::from_symmetric(upper)?,
    ))
}
