//! Fourier analysis of the middle-thirds Cantor measure: the infinite cosine
//! product for its transform, dyadic-block integrals of the transform, and
//! the L^p multiplier thresholds delta(p) driven by the triadic growth rate.

use crate::transfer::{integral_in, max_preimages, SpectralInterval};
use crate::util::par_sum;
use crate::weights::PeriodicWeight;
use crate::{Error, Result};
use std::f64::consts::PI;

/// Partial product value with its truncation bound.
#[derive(Debug, Clone, Copy)]
pub struct CantorFourier {
    pub value: f64,
    /// bound on |tail product - 1|
    pub truncation_bound: f64,
    pub terms: u32,
}

/// Transform of the Cantor measure at x: prod_{j >= 1} cos(pi 3^{-j} x).
///
/// With J factors the remaining tail satisfies
/// |prod_{j>J} cos(pi 3^{-j} x) - 1| <= sum_{j>J} (pi 3^{-j} x)^2 / 2
///                                    = (pi x)^2 9^{-J} / 16.
pub fn cantor_fourier(x: f64, terms: Option<u32>) -> Result<CantorFourier> {
    if !x.is_finite() {
        return Err(Error::non_finite("transform argument"));
    }
    let j = match terms {
        Some(j) if j >= 1 => j,
        Some(_) => return Err(Error::invalid("need at least one product term")),
        None => {
            // smallest J with (pi x)^2 9^{-J} / 16 <= 1e-12
            let target = (PI * x).powi(2) / 16.0 / 1e-12;
            let mut j = 1u32;
            let mut nine_j = 9.0;
            while nine_j < target && j < 64 {
                j += 1;
                nine_j *= 9.0;
            }
            j
        }
    };
    let mut value = 1.0;
    let mut scale = x / 3.0;
    for _ in 0..j {
        value *= (PI * scale).cos();
        scale /= 3.0;
    }
    let truncation_bound = (PI * x).powi(2) * 9f64.powi(-(j as i32)) / 16.0;
    Ok(CantorFourier {
        value,
        truncation_bound,
        terms: j,
    })
}

/// Integral of |transform| over the dyadic block [3^k, 3^{k+1}].
///
/// Reduced to 3^k times an integral over [1, 3] of
/// |mu_hat(x)| prod_{i<k} |cos(pi 3^i x)|, quadratured with 32 midpoints per
/// oscillation cell of the fastest factor.
pub fn block_integral(k: u32) -> Result<f64> {
    if k > 12 {
        return Err(Error::resource("block integral capped at k = 12"));
    }
    let cells = 3u64.pow(k);
    let m = cells
        .checked_mul(64)
        .filter(|&v| v <= max_preimages())
        .ok_or_else(|| Error::resource("block quadrature too large"))?;
    let m = m as usize;
    let sum = par_sum(m, |i| {
        let x = 1.0 + 2.0 * (i as f64 + 0.5) / m as f64;
        let mut prod = cantor_fourier(x, None).expect("finite x").value.abs();
        let mut scale = 1.0;
        for _ in 0..k {
            prod *= (PI * scale * x).cos().abs();
            scale *= 3.0;
        }
        prod
    });
    Ok(3f64.powi(k as i32) * 2.0 * sum / m as f64)
}

/// Ratio of the block integral to 3^k I_k(|cos|, d = 3); bounded above and
/// below by constants independent of k.
pub fn block_integral_ratio(k: u32) -> Result<f64> {
    let block = block_integral(k)?;
    let w = PeriodicWeight::cos_pow(1.0)?;
    let reference = 3f64.powi(k as i32) * integral_in(&w, 3, k)?;
    Ok(block / reference)
}

/// Enclosure of a smoothing-exponent threshold. Unlike growth-rate
/// enclosures these can be negative, so they carry no sign constraint.
#[derive(Debug, Clone, Copy)]
pub struct ThresholdInterval {
    pub lower: f64,
    pub upper: f64,
    pub certified: bool,
    pub method: crate::transfer::Method,
    pub depth: Option<u32>,
}

impl ThresholdInterval {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }
}

/// Multiplier threshold delta(p) = log2/log3 - 1 + 1/p + log(c(p)^{1/p})/log3
/// as an interval image of an enclosure of the triadic growth rate c(p).
///
/// For p = 1 this is the exact boundedness threshold; for p > 1 it is a
/// necessary-condition threshold only.
pub fn delta_threshold(p: f64, c_enclosure: &SpectralInterval) -> Result<ThresholdInterval> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::invalid("multiplier threshold needs finite p >= 1"));
    }
    if c_enclosure.lower <= 0.0 {
        return Err(Error::invalid("growth-rate enclosure must be positive"));
    }
    let ln3 = 3f64.ln();
    let alpha = 2f64.ln() / ln3;
    let map = |c: f64| alpha - 1.0 + 1.0 / p + (c.powf(1.0 / p)).ln() / ln3;
    // monotone increasing in c, so endpoints map to endpoints
    Ok(ThresholdInterval {
        lower: map(c_enclosure.lower),
        upper: map(c_enclosure.upper),
        certified: c_enclosure.certified,
        method: c_enclosure.method,
        depth: c_enclosure.depth,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transfer::Method;

    #[test]
    fn transform_at_zero_is_one() {
        let v = cantor_fourier(0.0, None).unwrap();
        assert_eq!(v.value, 1.0);
        assert!(v.truncation_bound <= 1e-12);
    }

    #[test]
    fn transform_truncation_bound_drives_terms() {
        let v = cantor_fourier(1e5, None).unwrap();
        assert!(v.truncation_bound <= 1e-12, "bound {}", v.truncation_bound);
        assert!(v.terms > 15);
    }

    #[test]
    fn transform_self_similarity() {
        // P_{J+1}(3x) = cos(pi x) P_J(x)
        for &x in &[0.3, 1.7, 2.9, 10.1] {
            let lhs = cantor_fourier(3.0 * x, Some(9)).unwrap().value;
            let rhs = (PI * x).cos() * cantor_fourier(x, Some(8)).unwrap().value;
            assert!((lhs - rhs).abs() < 1e-14, "x={x}");
        }
    }

    #[test]
    fn transform_bounded_below_on_2_3() {
        let mut inf: f64 = f64::INFINITY;
        for j in 0..4096 {
            let x = 2.0 + (j as f64 + 0.5) / 4096.0;
            inf = inf.min(cantor_fourier(x, None).unwrap().value.abs());
        }
        assert!(
            inf > 0.0,
            "transform should not vanish on [2,3], inf = {inf}"
        );
    }

    #[test]
    fn block_integrals_positive_and_comparable() {
        let b0 = block_integral(0).unwrap();
        assert!(b0 > 0.0);
        let r1 = block_integral_ratio(1).unwrap();
        assert!(r1 > 0.1 && r1 < 10.0, "ratio {r1}");
        let ratios: Vec<f64> = (3..=8).map(|k| block_integral_ratio(k).unwrap()).collect();
        let max = ratios.iter().fold(0.0f64, |a, &b| a.max(b));
        let min = ratios.iter().fold(f64::INFINITY, |a, &b| a.min(b));
        assert!(max / min <= 5.0, "ratio spread {ratios:?}");
    }

    #[test]
    fn delta_threshold_formula() {
        // degenerate interval at the exact even value c(2) = 1/2
        let c = SpectralInterval::degenerate(0.5, true, Method::Matrix).unwrap();
        let d = delta_threshold(2.0, &c).unwrap();
        let ln3 = 3f64.ln();
        let expect = 2f64.ln() / ln3 - 1.0 + 0.5 + (0.5f64.sqrt()).ln() / ln3;
        assert!((d.lower - expect).abs() < 1e-15);
        assert!((d.upper - expect).abs() < 1e-15);
    }

    #[test]
    fn delta_threshold_monotone_in_enclosure() {
        let narrow = SpectralInterval::new(0.64, 0.65, false, Method::Quotient, None).unwrap();
        let wide = SpectralInterval::new(0.63, 0.66, false, Method::Quotient, None).unwrap();
        let dn = delta_threshold(1.0, &narrow).unwrap();
        let dw = delta_threshold(1.0, &wide).unwrap();
        assert!(dw.lower <= dn.lower && dn.upper <= dw.upper);
    }

    #[test]
    fn delta_threshold_rejects_bad_input() {
        let c = SpectralInterval::new(0.0, 0.5, false, Method::Est1, None).unwrap();
        assert!(delta_threshold(1.0, &c).is_err());
        let c = SpectralInterval::degenerate(0.5, true, Method::Matrix).unwrap();
        assert!(delta_threshold(0.5, &c).is_err());
    }

    #[test]
    fn geometric_series_criterion_identity() {
        // sum 3^{(alpha - delta - 1)k} 3^k c^k converges iff 3^{alpha-delta} c < 1
        // iff delta > alpha + log c / log 3
        let alpha = 2f64.ln() / 3f64.ln();
        let mut state = 42u64;
        let mut rnd = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((state >> 33) as f64) / (u32::MAX as f64)
        };
        for _ in 0..100 {
            let delta = rnd();
            let c = 0.3 + 0.6 * rnd();
            let lhs = 3f64.powf(alpha - delta) * c < 1.0;
            let rhs = delta > alpha + c.ln() / 3f64.ln();
            assert_eq!(lhs, rhs, "delta={delta} c={c}");
        }
    }
}
