//! Property-based invariants: submultiplicativity of the iterate extrema,
//! integral/extrema consistency, conjugacy symmetries, matrix adjoint
//! relations and special-function identities on randomized inputs.

use proptest::prelude::*;
use xferspec::transfer::{integral_in, iterate_extrema, transfer_value_hn};
use xferspec::weights::{PeriodicWeight, TrigPolynomial};
use xferspec::{cosine_sum, fourier_matrix, multiplier, special};

fn power_weight(q: f64, sine: bool) -> PeriodicWeight {
    if sine {
        PeriodicWeight::sin_pow(q).unwrap()
    } else {
        PeriodicWeight::cos_pow(q).unwrap()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    // r_{m+n} >= r_m r_n and R_{m+n} <= R_m R_n
    #[test]
    fn extrema_are_submultiplicative(
        q in 0.3f64..3.5,
        sine in any::<bool>(),
        d in 2u32..=3,
        m in 1u32..=2,
        n in 1u32..=3,
    ) {
        // the dyadic cosine pair with q near the kink converges slowly but
        // the inequality is exact at every depth
        let w = power_weight(q, sine);
        let grid = 512;
        let em = iterate_extrema(&w, d, m, grid).unwrap();
        let en = iterate_extrema(&w, d, n, grid).unwrap();
        let emn = iterate_extrema(&w, d, m + n, grid).unwrap();
        prop_assert!(emn.min >= em.min * en.min * (1.0 - 1e-10),
            "r_{{m+n}}={} < r_m r_n={}", emn.min, em.min * en.min);
        prop_assert!(emn.max <= em.max * en.max * (1.0 + 1e-10),
            "R_{{m+n}}={} > R_m R_n={}", emn.max, em.max * en.max);
    }

    // r_n <= I_n <= R_n and I_n equals the grid integral of h_n
    #[test]
    fn integral_between_extrema(
        q in 0.4f64..3.0,
        sine in any::<bool>(),
        d in 2u32..=3,
        n in 1u32..=4,
    ) {
        let w = power_weight(q, sine);
        let e = iterate_extrema(&w, d, n, 512).unwrap();
        let i = integral_in(&w, d, n).unwrap();
        // quadrature resolves the kinks of |.|^q to ~1e-6 at worst
        prop_assert!(i >= e.min - 1e-6 && i <= e.max + 1e-6,
            "I_n={i} outside [{}, {}]", e.min, e.max);
        let m = 512usize;
        let grid_integral = (0..m)
            .map(|j| transfer_value_hn(&w, d, n, (j as f64 + 0.5) / m as f64).unwrap())
            .sum::<f64>() / m as f64;
        prop_assert!((i - grid_integral).abs() <= 1e-4 * i.max(1e-12),
            "I_n={i} vs grid integral of h_n {grid_integral}");
    }

    // h_n inherits the reflection symmetry of the power weights
    #[test]
    fn iterates_symmetric_and_positive(
        q in 0.4f64..3.0,
        sine in any::<bool>(),
        d in 2u32..=3,
        n in 1u32..=4,
    ) {
        let w = power_weight(q, sine);
        for j in 0..64 {
            let t = j as f64 / 64.0;
            let a = transfer_value_hn(&w, d, n, t).unwrap();
            let b = transfer_value_hn(&w, d, n, 1.0 - t).unwrap();
            prop_assert!(a >= 0.0);
            prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1e-300),
                "asymmetry at t={t}: {a} vs {b}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // triadic conjugacy: cosine and sine weights share every I_n
    #[test]
    fn odd_degree_integrals_agree(q in 0.4f64..3.0, n in 1u32..=5) {
        let cos = PeriodicWeight::cos_pow(q).unwrap();
        let sin = PeriodicWeight::sin_pow(q).unwrap();
        let a = integral_in(&cos, 3, n).unwrap();
        let b = integral_in(&sin, 3, n).unwrap();
        prop_assert!((a - b).abs() <= 1e-9 * a.max(1e-12), "{a} vs {b}");
    }

    // composition and transfer blocks are transposes with equal dominant
    // eigenvalues; positive coefficients keep the blocks primitive, the
    // regime where the dominant eigenvalue is real and power iteration is
    // guaranteed to converge
    #[test]
    fn truncation_blocks_are_adjoint(
        coeffs in proptest::collection::vec(0.01f64..0.4, 1..6),
        d in 2u32..=3,
        k_band in 0usize..3,
    ) {
        let mut coeffs = coeffs;
        let bulk: f64 = coeffs.iter().skip(1).map(|c| c.abs()).sum();
        coeffs[0] = bulk + 0.5;
        let p = TrigPolynomial::from_symmetric(coeffs).unwrap();
        let t = fourier_matrix::composition_matrix(&p, d, k_band);
        let l = fourier_matrix::transfer_matrix(&p, d, k_band);
        prop_assert_eq!(&l, &t.transpose());
        let et = fourier_matrix::dominant_eigenvalue(&t).unwrap();
        let el = fourier_matrix::dominant_eigenvalue(&l).unwrap();
        prop_assert!((et.value - el.value).abs() <= 1e-11 * et.value.abs().max(1.0));
    }

    // mixed-sign blocks may legitimately have a complex dominant pair, where
    // the solver must report non-convergence rather than a wrong value
    #[test]
    fn eigensolver_never_silently_wrong(
        coeffs in proptest::collection::vec(-0.4f64..0.4, 2..6),
        d in 2u32..=3,
        k_band in 1usize..3,
    ) {
        let p = TrigPolynomial::from_symmetric(coeffs).unwrap();
        let b = fourier_matrix::composition_matrix(&p, d, k_band);
        if let Ok(e) = fourier_matrix::dominant_eigenvalue(&b) {
            // verify the reported pair against the matrix action
            let mut out = vec![0.0; b.dim()];
            b.mul_vec(&e.vector, &mut out);
            let vnorm = e.vector.iter().fold(0.0f64, |a, &x| a.max(x.abs()));
            for (o, v) in out.iter().zip(&e.vector) {
                prop_assert!((o - e.value * v).abs() <= 1e-10 * vnorm.max(1e-300));
            }
        }
    }

    // truncated coefficient recursion reproduces the quadrature integral
    #[test]
    fn coefficient_recursion_matches_quadrature(
        coeffs in proptest::collection::vec(-0.3f64..0.3, 1..7),
        d in 2u32..=3,
        n in 1u32..=5,
    ) {
        let mut coeffs = coeffs;
        let bulk: f64 = coeffs.iter().skip(1).map(|c| c.abs()).sum();
        coeffs[0] = bulk + 0.4;
        let degree = coeffs.len() - 1;
        let p = TrigPolynomial::from_symmetric(coeffs).unwrap();
        let k = fourier_matrix::truncation_band(degree, d);
        let rec = fourier_matrix::in_coefficient_recursion(&p, d, k, n).unwrap();
        let quad = integral_in(&PeriodicWeight::trig_poly(p), d, n).unwrap();
        prop_assert!((rec - quad).abs() <= 1e-10 * rec.abs().max(1.0),
            "recursion {rec} vs quadrature {quad}");
    }

    // Hurwitz zeta index-shift identity on random arguments
    #[test]
    fn hurwitz_shift_identity(s in 1.1f64..20.0, t in 0.05f64..1.0) {
        let full = special::hurwitz_zeta(s, t).unwrap();
        let lhs = full - t.powf(-s);
        let rhs = special::hurwitz_zeta(s, t + 1.0).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-11 * full.abs().max(1.0));
    }

    // Cantor transform self-similarity P_{J+1}(3x) = cos(pi x) P_J(x)
    #[test]
    fn cantor_product_reindexing(x in -50.0f64..50.0, j in 1u32..12) {
        let lhs = multiplier::cantor_fourier(3.0 * x, Some(j + 1)).unwrap().value;
        let rhs = (std::f64::consts::PI * x).cos()
            * multiplier::cantor_fourier(x, Some(j)).unwrap().value;
        prop_assert!((lhs - rhs).abs() < 1e-13);
    }

    // trig polynomial evaluation equals the two-sided exponential sum
    #[test]
    fn trig_eval_matches_exponential_sum(
        coeffs in proptest::collection::vec(-1.0f64..1.0, 1..12),
        t in 0.0f64..1.0,
    ) {
        let p = TrigPolynomial::from_symmetric(coeffs).unwrap();
        let deg = p.degree() as i64;
        let direct: f64 = (-deg..=deg)
            .map(|k| p.coeff(k) * (2.0 * std::f64::consts::PI * k as f64 * t).cos())
            .sum();
        prop_assert!((p.eval(t) - direct).abs() < 1e-11);
    }
}

#[test]
fn certified_triadic_intervals_nest() {
    // [r_{n+1}^{1/(n+1)}, R_{n+1}^{1/(n+1)}] inside [r_n^{1/n}, R_n^{1/n}]
    let mut prev = cosine_sum::exact_bounds(1).unwrap();
    for n in 2..=14u32 {
        let next = cosine_sum::exact_bounds(n).unwrap();
        assert!(next.lower >= prev.lower - 1e-9, "n={n}");
        assert!(next.upper <= prev.upper + 1e-9, "n={n}");
        prev = next;
    }
}

#[test]
fn normalized_limit_error_decreases() {
    for &q in &[0.5f64, 1.0, 4.0] {
        let nl = xferspec::dyadic::NormalizedLimit::new(q).unwrap();
        let mut prev = f64::INFINITY;
        for n in [6u32, 8, 10, 12] {
            let mut sup: f64 = 0.0;
            for j in 0..256 {
                let t = j as f64 / 256.0;
                let h = xferspec::dyadic::hn_binary(q, n, t).unwrap();
                sup = sup.max((nl.scale(n) * h - nl.limit(t)).abs());
            }
            assert!(sup < prev, "q={q} n={n}: {sup} !< {prev}");
            prev = sup;
        }
    }
}
