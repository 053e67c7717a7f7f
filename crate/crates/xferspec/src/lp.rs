//! Operator norms and spectral radii of the cosine-weight transfer operator
//! on Lebesgue spaces. Duality moves everything to the sup norm of an
//! iterate at the conjugate-scaled exponent:
//!   |L_q^n|_{p -> p} = |L_{q p'}^n 1|_inf^{1/p'},  p' = p/(p-1),
//! and in turn rho_p(L_q) = rho(L_{q p'})^{1/p'}.

use crate::dyadic::binary_rates;
use crate::fourier_matrix::c_even_exact;
use crate::special::zeta_pair;
use crate::transfer::{
    iterate_extrema, quotient_interval, transfer_value_hn, Method, SpectralInterval,
};
use crate::util::{abs_sin_pi, frac};
use crate::weights::PeriodicWeight;
use crate::{Error, Result};

/// Conjugate exponent p' = p/(p-1); p = infinity maps to 1.
pub fn conjugate_exponent(p: f64) -> Result<f64> {
    if p.is_infinite() && p > 0.0 {
        return Ok(1.0);
    }
    if !(p > 1.0) || !p.is_finite() {
        return Err(Error::invalid(
            "need 1 < p <= infinity (p = 1 has no conjugate dual here)",
        ));
    }
    Ok(p / (p - 1.0))
}

/// Operator norm |L_q^n|_{p -> p} for the cosine weight on L^p.
///
/// n = 1 uses the closed extremum formula max{h_1(0), h_1(1/2)} for the
/// exponent q p' (the first iterate is monotone on (0, 1/2)); larger n uses
/// the grid supremum of the iterate.
pub fn lp_operator_norm(q: f64, p: f64, d: u32, n: u32) -> Result<f64> {
    if !(q > 0.0) {
        return Err(Error::invalid("need q > 0"));
    }
    if n == 0 {
        return Err(Error::invalid("need n >= 1"));
    }
    let p_conj = conjugate_exponent(p)?;
    let w = PeriodicWeight::cos_pow(q * p_conj)?;
    let sup = if n == 1 {
        let a = transfer_value_hn(&w, d, 1, 0.0)?;
        let b = transfer_value_hn(&w, d, 1, 0.5)?;
        a.max(b)
    } else {
        iterate_extrema(&w, d, n, 2048)?.max
    };
    Ok(sup.powf(1.0 / p_conj))
}

/// Enclosure of rho_p(L_q) = rho(L_{q p'})^{1/p'}.
///
/// The inner radius uses the best available route: the closed dyadic rates
/// for d = 2, the exact even-power value when q p' is an even integer
/// <= 2(d-1), and otherwise Collatz-Wielandt quotient bounds at depth 3.
pub fn lp_spectral_radius(q: f64, p: f64, d: u32) -> Result<SpectralInterval> {
    if !(q > 0.0) {
        return Err(Error::invalid("need q > 0"));
    }
    let p_conj = conjugate_exponent(p)?;
    let scaled_q = q * p_conj;
    let inner: SpectralInterval = if d == 2 {
        let rates = binary_rates(scaled_q)?;
        SpectralInterval::degenerate(rates.big_r, true, Method::Closed)?
    } else if let Some(qe) = even_integer(scaled_q) {
        if qe <= 2 * (d - 1) {
            c_even_exact(d, qe)?
        } else {
            quotient_route(scaled_q, d)?
        }
    } else {
        quotient_route(scaled_q, d)?
    };
    inner.map_monotone(|x| x.powf(1.0 / p_conj))
}

fn quotient_route(scaled_q: f64, d: u32) -> Result<SpectralInterval> {
    let w = PeriodicWeight::cos_pow(scaled_q)?;
    quotient_interval(&w, d, 3, 2048)
}

fn even_integer(q: f64) -> Option<u32> {
    let r = q.round();
    if (q - r).abs() < 1e-12 && r >= 2.0 && (r as u64).is_multiple_of(2) {
        Some(r as u32)
    } else {
        None
    }
}

/// Explicit L^p eigenfunction u_s = |sin pi t|^q G(s, t) with
/// s = q + 1/p - eps, for the dyadic cosine weight.
#[derive(Debug, Clone)]
pub struct LpEigenfunction {
    pub q: f64,
    pub p: f64,
    pub s: f64,
    pub eigenvalue: f64,
    pub in_lp: bool,
}

impl LpEigenfunction {
    /// Requires q p' > 1 (the regime where the L^p radius is 2^{-1/p'}) and
    /// 0 < eps < q + 1/p - 1 so that s > 1.
    pub fn new(q: f64, p: f64, eps: f64) -> Result<Self> {
        if !(q > 0.0) {
            return Err(Error::invalid("need q > 0"));
        }
        let p_conj = conjugate_exponent(p)?;
        if q * p_conj <= 1.0 {
            return Err(Error::invalid(
                "the zeta family applies in the regime q p' > 1; below it the weight power \
                 |sin|^q itself is the eigenfunction",
            ));
        }
        let inv_p = if p.is_infinite() { 0.0 } else { 1.0 / p };
        if !(eps > 0.0 && eps < q + inv_p - 1.0) {
            return Err(Error::invalid("need 0 < eps < q + 1/p - 1"));
        }
        let s = q + inv_p - eps;
        let eigenvalue = 2f64.powf(s - q - 1.0);
        let in_lp = (s - q) * p < 1.0 || p.is_infinite();
        Ok(Self {
            q,
            p,
            s,
            eigenvalue,
            in_lp,
        })
    }

    /// Pointwise value on the open interval (0, 1); unbounded at the
    /// endpoints when s > q.
    pub fn eval(&self, t: f64) -> f64 {
        let t = frac(t);
        if t == 0.0 {
            return if self.s < self.q {
                0.0
            } else if self.s == self.q {
                std::f64::consts::PI.powf(self.q)
            } else {
                f64::INFINITY
            };
        }
        abs_sin_pi(t).powf(self.q) * zeta_pair(self.s, t).expect("s > 1 by construction")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transfer::apply_transfer;

    #[test]
    fn conjugate_exponents() {
        assert_eq!(conjugate_exponent(2.0).unwrap(), 2.0);
        assert!((conjugate_exponent(4.0).unwrap() - 4.0 / 3.0).abs() < 1e-15);
        assert_eq!(conjugate_exponent(f64::INFINITY).unwrap(), 1.0);
        assert!(conjugate_exponent(1.0).is_err());
        assert!(conjugate_exponent(0.5).is_err());
    }

    #[test]
    fn operator_norm_constant_cases() {
        // q p' = 2 gives the constant first iterate 1/2
        let v = lp_operator_norm(1.0, 2.0, 2, 1).unwrap();
        assert!((v - 0.5f64.sqrt()).abs() < 1e-14);
        // p = infinity: p' = 1, h_1 for q p' = 2 is 1/2
        let v = lp_operator_norm(2.0, f64::INFINITY, 3, 1).unwrap();
        assert!((v - 0.5).abs() < 1e-14);
        let v = lp_operator_norm(1.0, 2.0, 3, 1).unwrap();
        assert!((v - 0.5f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn operator_norm_closed_extremum_matches_grid() {
        // the n = 1 formula agrees with a grid supremum at a non-constant case
        let q = 1.5;
        let p = 2.0;
        let w = PeriodicWeight::cos_pow(q * 2.0).unwrap();
        let grid_sup = iterate_extrema(&w, 2, 1, 4096).unwrap().max;
        let formula = lp_operator_norm(q, p, 2, 1).unwrap();
        assert!((formula - grid_sup.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn norm_submultiplicative_in_n() {
        for &(q, p, d) in &[(1.0f64, 2.0f64, 2u32), (0.7, 3.0, 2), (1.2, 2.0, 3)] {
            let n1 = lp_operator_norm(q, p, d, 1).unwrap();
            let n2 = lp_operator_norm(q, p, d, 2).unwrap();
            let n3 = lp_operator_norm(q, p, d, 3).unwrap();
            assert!(n2 <= n1 * n1 * (1.0 + 1e-9), "q={q} p={p} d={d}");
            assert!(n3 <= n2 * n1 * (1.0 + 1e-9), "q={q} p={p} d={d}");
            assert!(n3 <= n1.powi(3) * (1.0 + 1e-9));
        }
    }

    #[test]
    fn spectral_radius_closed_forms() {
        let i = lp_spectral_radius(1.0, 2.0, 2).unwrap();
        assert!((i.lower - 2f64.powf(-0.5)).abs() < 1e-14);
        assert!((i.upper - 2f64.powf(-0.5)).abs() < 1e-14);
        assert!(i.certified);

        // q p' = 0.8 <= 1: rho_p = 2^{-q}
        let i = lp_spectral_radius(0.4, 2.0, 2).unwrap();
        assert!((i.lower - 2f64.powf(-0.4)).abs() < 1e-14);

        // d = 3, q p' = 2: exact even value 1/2, then the square root
        let i = lp_spectral_radius(1.0, 2.0, 3).unwrap();
        assert!((i.lower - 0.5f64.sqrt()).abs() < 1e-14);
        assert!(i.certified);
    }

    #[test]
    fn spectral_radius_quotient_route_encloses_even_value() {
        // force the quotient route at d = 3 with q p' = 3
        let i = lp_spectral_radius(1.5, 2.0, 3).unwrap();
        assert!(!i.certified);
        assert!(i.lower <= i.upper);
        // c(3) sits between c(2) = 1/2 and c(4) = 3/8 by monotonicity
        assert!(i.upper.powi(2) <= 0.5 + 1e-9);
        assert!(i.lower.powi(2) >= 0.375 - 1e-9);
    }

    #[test]
    fn monotone_in_p_for_closed_dyadic_forms() {
        // rho_p is nonincreasing in p (p' decreases, 2^{-1/p'} decreases)
        let q = 1.0;
        let mut prev = f64::INFINITY;
        for &p in &[1.25, 1.5, 2.0, 3.0, 6.0, f64::INFINITY] {
            let v = lp_spectral_radius(q, p, 2).unwrap().upper;
            assert!(v <= prev + 1e-12, "p={p}: {v} > {prev}");
            prev = v;
        }
    }

    #[test]
    fn p2_self_duality() {
        for &q in &[0.3, 0.8, 1.0] {
            let a = lp_spectral_radius(q, 2.0, 2).unwrap();
            let inner = binary_rates(2.0 * q).unwrap().big_r;
            assert!((a.upper - inner.sqrt()).abs() < 1e-13, "q={q}");
        }
    }

    #[test]
    fn eigenfunction_parameters() {
        let u = LpEigenfunction::new(1.0, 2.0, 0.1).unwrap();
        assert!((u.s - 1.4).abs() < 1e-15);
        assert!((u.eigenvalue - 2f64.powf(-0.6)).abs() < 1e-15);
        assert!(u.in_lp);
        // membership boundary: (s - q) p -> 1 as eps -> 0
        let u = LpEigenfunction::new(1.0, 2.0, 1e-9).unwrap();
        assert!(((u.s - u.q) * u.p - 1.0).abs() < 1e-8);
        assert!(u.in_lp);
        assert!(LpEigenfunction::new(0.4, 2.0, 0.1).is_err()); // q p' < 1
        assert!(LpEigenfunction::new(1.0, 2.0, 2.0).is_err()); // eps too large
    }

    #[test]
    fn eigenfunction_residual_interior() {
        let u = LpEigenfunction::new(1.0, 2.0, 0.1).unwrap();
        let w = PeriodicWeight::cos_pow(1.0).unwrap();
        let f = |t: f64| u.eval(t);
        let m = 512;
        let mut worst: f64 = 0.0;
        let mut sup: f64 = 0.0;
        for j in 1..m {
            let t = j as f64 / m as f64;
            let r = (apply_transfer(&w, 2, &f, t) - u.eigenvalue * u.eval(t)).abs();
            worst = worst.max(r);
            sup = sup.max(u.eval(t).abs());
        }
        assert!(worst <= 1e-7 * sup, "residual {worst} vs sup {sup}");
    }
}
