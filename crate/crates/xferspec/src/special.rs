//! Special functions: Hurwitz zeta via direct summation plus an
//! Euler-Maclaurin tail, Bernoulli polynomials through degree 8, and a
//! Lanczos gamma.

use crate::{Error, Result};
use std::f64::consts::PI;

/// Number of directly summed terms before the Euler-Maclaurin tail.
const ZETA_DIRECT_TERMS: usize = 32;

/// Hurwitz zeta zeta(s, t) = sum_{k>=0} (t+k)^{-s} for s > 1, t > 0.
///
/// Direct sum of the first 32 terms, then the Euler-Maclaurin tail with the
/// half-term and the B_2, B_4, B_6 corrections. Relative error is below
/// 1e-13 uniformly for s in (1, 50], t in (0, 2].
pub fn hurwitz_zeta(s: f64, t: f64) -> Result<f64> {
    if !(s > 1.0) || !s.is_finite() {
        return Err(Error::invalid(format!("hurwitz zeta needs s > 1, got {s}")));
    }
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::invalid(format!("hurwitz zeta needs t > 0, got {t}")));
    }
    let mut acc = crate::util::Accumulator::new();
    for k in 0..ZETA_DIRECT_TERMS {
        acc.add((t + k as f64).powf(-s));
    }
    let a = t + ZETA_DIRECT_TERMS as f64;
    let inv = 1.0 / a;
    let apow = a.powf(-s); // a^{-s}
    acc.add(apow * a / (s - 1.0)); // integral term a^{1-s}/(s-1)
    acc.add(0.5 * apow);
    acc.add(s * apow * inv / 12.0);
    acc.add(-s * (s + 1.0) * (s + 2.0) * apow * inv.powi(3) / 720.0);
    acc.add(s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * apow * inv.powi(5) / 30240.0);
    Ok(acc.total())
}

/// Riemann zeta for s > 1 (the Hurwitz value at t = 1).
pub fn riemann_zeta(s: f64) -> Result<f64> {
    hurwitz_zeta(s, 1.0)
}

/// Symmetric Hurwitz pair G(s, t) = zeta(s, t) + zeta(s, 1 - t) on (0, 1).
pub fn zeta_pair(s: f64, t: f64) -> Result<f64> {
    Ok(hurwitz_zeta(s, t)? + hurwitz_zeta(s, 1.0 - t)?)
}

// Bernoulli polynomials B_0..B_8, coefficients in ascending degree order.
const BERNOULLI_COEFFS: [&[f64]; 9] = [
    &[1.0],
    &[-0.5, 1.0],
    &[1.0 / 6.0, -1.0, 1.0],
    &[0.0, 0.5, -1.5, 1.0],
    &[-1.0 / 30.0, 0.0, 1.0, -2.0, 1.0],
    &[0.0, -1.0 / 6.0, 0.0, 5.0 / 3.0, -2.5, 1.0],
    &[1.0 / 42.0, 0.0, -0.5, 0.0, 2.5, -3.0, 1.0],
    &[0.0, 1.0 / 6.0, 0.0, -7.0 / 6.0, 0.0, 3.5, -3.5, 1.0],
    &[
        -1.0 / 30.0,
        0.0,
        2.0 / 3.0,
        0.0,
        -7.0 / 3.0,
        0.0,
        14.0 / 3.0,
        -4.0,
        1.0,
    ],
];

/// Bernoulli polynomial B_n(t) for n <= 8.
pub fn bernoulli_polynomial(n: u32, t: f64) -> Result<f64> {
    let coeffs = BERNOULLI_COEFFS
        .get(n as usize)
        .ok_or_else(|| Error::invalid("Bernoulli polynomials hard-coded only up to degree 8"))?;
    let mut acc = 0.0;
    for &c in coeffs.iter().rev() {
        acc = acc * t + c;
    }
    Ok(acc)
}

// Lanczos approximation, g = 7, 9 coefficients.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma function for positive arguments (reflection used below 1/2).
pub fn gamma(x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::invalid(format!(
            "gamma implemented for x > 0, got {x}"
        )));
    }
    Ok(lanczos(x))
}

fn lanczos(x: f64) -> f64 {
    if x < 0.5 {
        PI / ((PI * x).sin() * lanczos(1.0 - x))
    } else {
        let x = x - 1.0;
        let mut a = LANCZOS_COEFFS[0];
        let t = x + LANCZOS_G + 0.5;
        for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
            a += c / (x + i as f64);
        }
        (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * a
    }
}
