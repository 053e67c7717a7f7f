//! Closed forms for the dyadic map with weight |cos(pi t)|^q: the integrals
//! I_n and iterates h_n in sine-ratio form, the growth rates, the
//! Hurwitz-zeta / Bernoulli / trigonometric eigenfunction families, the
//! cotangent-derivative polynomials, normalized limits of h_n, convexity
//! probes, and the zeta combination F(s) whose sign change sits at s = 2.

use crate::special::{bernoulli_polynomial, gamma, riemann_zeta, zeta_pair};
use crate::transfer::max_preimages;
use crate::util::{abs_sin_pi, cos_pi, frac, par_sum, sin_pi};
use crate::{Error, Result};
use std::f64::consts::PI;

fn check_q(q: f64) -> Result<()> {
    if !(q > 0.0) || !q.is_finite() {
        return Err(Error::invalid("need finite q > 0"));
    }
    Ok(())
}

fn pow2_guarded(n: u32, factor: u64) -> Result<u64> {
    let cap = max_preimages();
    (1u64.checked_shl(n))
        .and_then(|p| p.checked_mul(factor))
        .filter(|&v| v <= cap)
        .ok_or_else(|| Error::resource(format!("2^{n} * {factor} exceeds cap {cap}")))
}

/// I_n for the dyadic cosine weight via the sine-ratio form
/// I_n = 2^{-qn} integral |sin(pi 2^n t)|^q / |sin(pi t)|^q dt,
/// midpoint rule with 32 points per oscillation cell. The singularity at
/// t = 0 is removable (the integrand tends to 2^{qn}) and never sampled.
pub fn integral_in_binary(q: f64, n: u32, points_per_cell: u64) -> Result<f64> {
    check_q(q)?;
    if n == 0 {
        return Ok(1.0);
    }
    let m = pow2_guarded(n, points_per_cell)? as usize;
    let pow2n = 2f64.powi(n as i32);
    let scale = 2f64.powf(-q * n as f64);
    let sum = par_sum(m, |j| {
        let t = (j as f64 + 0.5) / m as f64;
        let ratio = abs_sin_pi(pow2n * t) / abs_sin_pi(t);
        ratio.powf(q)
    });
    Ok(scale * sum / m as f64)
}

/// Convenience wrapper with the standard resolution: 32 points per cell,
/// floored at 8192 points in total for small n.
pub fn in_binary(q: f64, n: u32) -> Result<f64> {
    let per_cell = 32u64.max(8192u64.div_ceil(1u64 << n));
    integral_in_binary(q, n, per_cell)
}

/// h_n(t) for the dyadic cosine weight in closed form:
/// |sin(pi t)|^q / (2^n 2^{qn}) sum_{k < 2^n} |sin(pi 2^{-n}(t+k))|^{-q},
/// with the removable limit h_n(m) = 2^{-n} at integers.
pub fn hn_binary(q: f64, n: u32, t: f64) -> Result<f64> {
    check_q(q)?;
    if !t.is_finite() {
        return Err(Error::non_finite("evaluation point"));
    }
    if n == 0 {
        return Ok(1.0);
    }
    let count = pow2_guarded(n, 1)?;
    let t = frac(t);
    if t == 0.0 {
        return Ok(2f64.powi(-(n as i32)));
    }
    let pow2n = 2f64.powi(n as i32);
    let front = abs_sin_pi(t).powf(q) / (pow2n * pow2n.powf(q));
    let sum = par_sum(count as usize, |k| {
        abs_sin_pi((t + k as f64) / pow2n).powf(-q)
    });
    Ok(front * sum)
}

/// Growth and iterate rates for the dyadic cosine weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinaryRates {
    /// integral growth rate lim I_n^{1/n}
    pub c: f64,
    /// lim r_n^{1/n} (minimum rate)
    pub r: f64,
    /// spectral radius lim R_n^{1/n}
    pub big_r: f64,
}

/// Closed-form rates: c = R = 2^{-q} for q <= 1 and 1/2 for q > 1;
/// r = 1/2 for every q.
pub fn binary_rates(q: f64) -> Result<BinaryRates> {
    check_q(q)?;
    let c = if q <= 1.0 { 2f64.powf(-q) } else { 0.5 };
    Ok(BinaryRates {
        c,
        r: 0.5,
        big_r: c.max(0.5),
    })
}

/// Eigenfunction family for the dyadic cosine weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigenForm {
    /// u = |sin pi t|^q (zeta(s,t) + zeta(s,1-t)), continuous for s <= q
    ZetaPair,
    /// u = |sin pi t|^q B_m(t)
    Bernoulli,
    /// u = |sin pi t|^q (zeta(s,t) + (-1)^s zeta(s,1-t)), a trig polynomial
    /// for even q and integer 2 <= s <= q
    TrigPoly,
}

/// Explicit eigenfunction u with L u = lambda u (d = 2, weight |cos pi t|^q).
#[derive(Debug, Clone)]
pub struct ZetaEigenfunction {
    pub q: f64,
    pub s: f64,
    pub form: EigenForm,
    pub eigenvalue: f64,
    /// integer data for the closed-form variants
    cot_poly: Option<CotDerivPoly>,
    bernoulli_degree: Option<u32>,
}

impl ZetaEigenfunction {
    /// Continuous zeta-pair eigenfunction, eigenvalue 2^{s-q-1}; needs
    /// 1 < s <= q.
    pub fn zeta_pair(q: f64, s: f64) -> Result<Self> {
        check_q(q)?;
        if !(s > 1.0) {
            return Err(Error::invalid("zeta eigenfunction needs s > 1"));
        }
        if s > q {
            return Err(Error::invalid(
                "zeta pair is continuous only for s <= q (see the Lp family for s > q)",
            ));
        }
        Ok(Self {
            q,
            s,
            form: EigenForm::ZetaPair,
            eigenvalue: 2f64.powf(s - q - 1.0),
            cot_poly: None,
            bernoulli_degree: None,
        })
    }

    /// Bernoulli-polynomial eigenfunction u = |sin pi t|^q B_m(t),
    /// eigenvalue 2^{-q-m}; m <= 8.
    pub fn bernoulli(q: f64, m: u32) -> Result<Self> {
        check_q(q)?;
        bernoulli_polynomial(m, 0.0)?;
        Ok(Self {
            q,
            s: -(m as f64),
            form: EigenForm::Bernoulli,
            eigenvalue: 2f64.powf(-q - m as f64),
            cot_poly: None,
            bernoulli_degree: Some(m),
        })
    }

    /// Trigonometric-polynomial eigenfunction for even q and integer
    /// 2 <= s <= q, eigenvalue 2^{s-q-1}. Closed form
    /// pi^s/(s-1)! sin^{q-s}(pi t) P_{s-1}(cos pi t).
    pub fn trig_poly(q: u32, s: u32) -> Result<Self> {
        if q < 2 || !q.is_multiple_of(2) {
            return Err(Error::invalid("trig-poly family needs even q >= 2"));
        }
        if s < 2 || s > q {
            return Err(Error::invalid("trig-poly family needs 2 <= s <= q"));
        }
        Ok(Self {
            q: q as f64,
            s: s as f64,
            form: EigenForm::TrigPoly,
            eigenvalue: 2f64.powf(s as f64 - q as f64 - 1.0),
            cot_poly: Some(cot_poly(s - 1)?),
            bernoulli_degree: None,
        })
    }

    /// Evaluate with continuous extension at the endpoints.
    pub fn eval(&self, t: f64) -> f64 {
        let t = frac(t);
        match self.form {
            EigenForm::ZetaPair => {
                if t == 0.0 {
                    // |sin|^q zeta(s,t) -> pi^q t^{q-s}: 0 for s < q, pi^q at s = q
                    if self.s < self.q {
                        0.0
                    } else {
                        PI.powf(self.q)
                    }
                } else {
                    abs_sin_pi(t).powf(self.q) * zeta_pair(self.s, t).expect("domain checked")
                }
            }
            EigenForm::Bernoulli => {
                let m = self.bernoulli_degree.expect("set by constructor");
                abs_sin_pi(t).powf(self.q) * bernoulli_polynomial(m, t).expect("degree checked")
            }
            EigenForm::TrigPoly => {
                let s = self.s as u32;
                let p = self.cot_poly.as_ref().expect("set by constructor");
                let scale = PI.powi(s as i32) / factorial(s - 1);
                let sin = sin_pi(t);
                let power = (self.q as u32 - s) as i32;
                scale * sin.powi(power) * p.eval(cos_pi(t))
            }
        }
    }
}

fn factorial(n: u32) -> f64 {
    (1..=n as u64).fold(1.0, |acc, k| acc * k as f64)
}

/// Max over an interior midpoint grid of the dyadic functional-equation
/// residual |g(t/2)/2 + g((t+1)/2)/2 - mu g(t)|.
pub fn functional_equation_residual(
    g: &(impl Fn(f64) -> f64 + Sync + ?Sized),
    mu: f64,
    grid_m: usize,
) -> f64 {
    functional_equation_residual_with_margin(g, mu, grid_m, 0.0)
}

/// Residual over midpoints of [margin, 1 - margin]. Solutions like the
/// Hurwitz zeta blow up like t^{-s} at the endpoints, where the exact
/// cancellation in the residual amplifies rounding; a margin keeps the
/// check within what f64 can resolve.
pub fn functional_equation_residual_with_margin(
    g: &(impl Fn(f64) -> f64 + Sync + ?Sized),
    mu: f64,
    grid_m: usize,
    margin: f64,
) -> f64 {
    debug_assert!((0.0..0.5).contains(&margin));
    let span = 1.0 - 2.0 * margin;
    let vals = crate::util::par_map(grid_m, |j| {
        let t = margin + span * (j as f64 + 0.5) / grid_m as f64;
        (0.5 * g(0.5 * t) + 0.5 * g(0.5 * (t + 1.0)) - mu * g(t)).abs()
    });
    vals.into_iter().fold(0.0, f64::max)
}

/// Integer polynomial P_n from the cotangent-derivative recursion
/// P_{n+1}(x) = (n+1) x P_n(x) + (1 - x^2) P_n'(x), P_0 = x, P_1 = 1, so that
/// (d/dt)^n cot t = (-1)^n P_n(cos t) / sin^{n+1} t.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CotDerivPoly {
    n: u32,
    /// coefficients, ascending degree
    coeffs: Vec<i128>,
}

impl CotDerivPoly {
    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c as f64;
        }
        acc
    }

    /// Derivative coefficients (ascending).
    fn derivative(&self) -> Vec<i128> {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * k as i128)
            .collect()
    }
}

/// Exact integer recursion for P_n, n <= 30 (kept within i128).
pub fn cot_poly(n: u32) -> Result<CotDerivPoly> {
    if n > 30 {
        return Err(Error::invalid(
            "cotangent polynomials supported for n <= 30",
        ));
    }
    let mut p = CotDerivPoly {
        n: 0,
        coeffs: vec![0, 1],
    }; // P_0 = x
    for m in 0..n {
        let deriv = p.derivative();
        let mut next = vec![0i128; p.coeffs.len() + 1];
        let factor = (m + 1) as i128;
        for (k, &c) in p.coeffs.iter().enumerate() {
            let term = factor
                .checked_mul(c)
                .ok_or_else(|| Error::resource("cot polynomial coefficient overflow"))?;
            next[k + 1] = next[k + 1]
                .checked_add(term)
                .ok_or_else(|| Error::resource("cot polynomial coefficient overflow"))?;
        }
        for (k, &c) in deriv.iter().enumerate() {
            next[k] = next[k]
                .checked_add(c)
                .ok_or_else(|| Error::resource("cot polynomial coefficient overflow"))?;
            if k + 2 < next.len() {
                next[k + 2] = next[k + 2]
                    .checked_sub(c)
                    .ok_or_else(|| Error::resource("cot polynomial coefficient overflow"))?;
            }
        }
        while next.len() > 1 && *next.last().unwrap() == 0 {
            next.pop();
        }
        p = CotDerivPoly {
            n: m + 1,
            coeffs: next,
        };
    }
    Ok(p)
}

/// Normalized limit of the dyadic cosine iterates: h_infinity(t) =
/// P_{q-1}(cos pi t)/(q-1)! for even q >= 2.
pub fn h_infinity_even(q_even: u32, t: f64) -> Result<f64> {
    if q_even < 2 || !q_even.is_multiple_of(2) {
        return Err(Error::invalid("closed-form limit needs even q >= 2"));
    }
    let p = cot_poly(q_even - 1)?;
    Ok(p.eval(cos_pi(t)) / factorial(q_even - 1))
}

/// Normalization of h_n and its limit function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum LimitRegime {
    /// q < 1: scale 2^{qn}, limit C_q |sin|^q with C_q the inverse-power
    /// sine integral
    Subunit,
    /// q = 1: scale 2^n / n, limit (2 ln 2 / pi) |sin|
    Unit,
    /// q > 1: scale 2^n, limit pi^{-q} |sin|^q G(q, t)
    Superunit,
}

/// Scaling sequence and limit function for the dyadic cosine iterates.
#[derive(Debug, Clone)]
pub struct NormalizedLimit {
    q: f64,
    regime: LimitRegime,
    constant: f64,
    /// exact limit polynomial for even integer q > 1
    even_closed: Option<CotDerivPoly>,
}

impl NormalizedLimit {
    pub fn new(q: f64) -> Result<Self> {
        check_q(q)?;
        if q < 1.0 {
            // C_q = Gamma(1/2 - q/2) / (sqrt(pi) Gamma(1 - q/2)), equal to the
            // integral of |sin(pi x)|^{-q} over one period
            let constant = gamma(0.5 - q / 2.0)? / (PI.sqrt() * gamma(1.0 - q / 2.0)?);
            Ok(Self {
                q,
                regime: LimitRegime::Subunit,
                constant,
                even_closed: None,
            })
        } else if q == 1.0 {
            Ok(Self {
                q,
                regime: LimitRegime::Unit,
                constant: 2.0 * 2f64.ln() / PI,
                even_closed: None,
            })
        } else {
            let even_closed = match even_integer(q) {
                Some(qe) => Some(cot_poly(qe - 1)?),
                None => None,
            };
            Ok(Self {
                q,
                regime: LimitRegime::Superunit,
                constant: 1.0,
                even_closed,
            })
        }
    }

    /// Multiplier applied to h_n so that scale(n) * h_n converges.
    pub fn scale(&self, n: u32) -> f64 {
        match self.regime {
            LimitRegime::Subunit => 2f64.powf(self.q * n as f64),
            LimitRegime::Unit => 2f64.powi(n as i32) / n as f64,
            LimitRegime::Superunit => 2f64.powi(n as i32),
        }
    }

    /// Limit function (continuous extension at the endpoints).
    pub fn limit(&self, t: f64) -> f64 {
        let t = frac(t);
        match self.regime {
            LimitRegime::Subunit => self.constant * abs_sin_pi(t).powf(self.q),
            LimitRegime::Unit => self.constant * abs_sin_pi(t),
            LimitRegime::Superunit => {
                if let Some(p) = &self.even_closed {
                    return p.eval(cos_pi(t)) / factorial(self.q as u32 - 1);
                }
                if t == 0.0 {
                    1.0
                } else {
                    PI.powf(-self.q)
                        * abs_sin_pi(t).powf(self.q)
                        * zeta_pair(self.q, t).expect("q > 1")
                }
            }
        }
    }
}

fn even_integer(q: f64) -> Option<u32> {
    let r = q.round();
    if (q - r).abs() < 1e-12 && r >= 2.0 && (r as u64).is_multiple_of(2) {
        Some(r as u32)
    } else {
        None
    }
}

/// Sign probe of h_n'' at 1/2 and a grid concavity scan (the latter only for
/// q <= 1 where concavity on (0,1) is expected).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvexityProbe {
    /// sign of the second central difference at 1/2; 0 when below the noise
    /// floor
    pub sign_at_half: i8,
    pub estimate_at_half: f64,
    pub concave_everywhere: Option<bool>,
}

/// Second central difference with step 1e-4; values carry ~1e-12 relative
/// error so signs within 1e-3 of zero are reported as inconclusive.
pub fn convexity_probe(q: f64, n: u32) -> Result<ConvexityProbe> {
    check_q(q)?;
    if n > 14 {
        return Err(Error::resource("convexity probe capped at n = 14"));
    }
    let h = 1e-4;
    let noise_floor = 1e-4;
    let second = |t: f64| -> Result<f64> {
        let a = hn_binary(q, n, t - h)?;
        let b = hn_binary(q, n, t)?;
        let c = hn_binary(q, n, t + h)?;
        Ok((a - 2.0 * b + c) / (h * h))
    };
    let est = second(0.5)?;
    let sign_at_half = if est.abs() <= 10.0 * noise_floor {
        0
    } else if est > 0.0 {
        1
    } else {
        -1
    };
    let concave_everywhere = if q <= 1.0 {
        let mut ok = true;
        for j in 1..512 {
            let t = j as f64 / 512.0;
            if second(t)? > 10.0 * noise_floor {
                ok = false;
                break;
            }
        }
        Some(ok)
    } else {
        None
    };
    Ok(ConvexityProbe {
        sign_at_half,
        estimate_at_half: est,
        concave_everywhere,
    })
}

/// F(s) = 2(s+1)(2^{s+2}-1) zeta(s+2) - 2 pi^2 (2^s-1) zeta(s) for s > 1;
/// vanishes at s = 2.
pub fn conjecture_f(s: f64) -> Result<f64> {
    if !(s > 1.0) {
        return Err(Error::invalid("F(s) defined for s > 1"));
    }
    let z2 = riemann_zeta(s + 2.0)?;
    let z0 = riemann_zeta(s)?;
    Ok(2.0 * (s + 1.0) * (2f64.powf(s + 2.0) - 1.0) * z2
        - 2.0 * PI * PI * (2f64.powf(s) - 1.0) * z0)
}
