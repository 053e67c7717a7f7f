//! Shared numeric primitives: argument-reduced trig, compensated summation,
//! golden-section refinement and deterministic parallel reductions.

use rayon::prelude::*;
use std::f64::consts::PI;

/// |sin(pi t)| with argument reduction.
///
/// Reducing t to its distance from the nearest integer keeps full precision
/// for large |t| and returns exact zeros at integers.
#[inline]
pub fn abs_sin_pi(t: f64) -> f64 {
    let r = (t - t.round()).abs();
    (PI * r).sin()
}

/// |cos(pi t)| with argument reduction (exact zeros at half-integers).
#[inline]
pub fn abs_cos_pi(t: f64) -> f64 {
    abs_sin_pi(t + 0.5)
}

/// sin(pi t) with argument reduction.
#[inline]
pub fn sin_pi(t: f64) -> f64 {
    let n = t.round();
    let r = t - n;
    let s = (PI * r).sin();
    if (n as i64) & 1 == 0 {
        s
    } else {
        -s
    }
}

/// cos(pi t) with argument reduction.
#[inline]
pub fn cos_pi(t: f64) -> f64 {
    let n = t.round();
    let r = t - n;
    let c = (PI * r).cos();
    if (n as i64) & 1 == 0 {
        c
    } else {
        -c
    }
}

/// t mod 1 mapped into [0, 1).
#[inline]
pub fn frac(t: f64) -> f64 {
    let r = t.rem_euclid(1.0);
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

/// Neumaier compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct Accumulator {
    sum: f64,
    compensation: f64,
}

impl Accumulator {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Compensated sum of an iterator in its own order.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut acc = Accumulator::new();
    for v in values {
        acc.add(v);
    }
    acc.total()
}

const PAR_CHUNK: usize = 8192;

/// Sum of `f(i)` for `i in 0..n`, parallel over fixed-size chunks.
///
/// Chunk sums are compensated and combined in chunk order, so the result does
/// not depend on thread scheduling.
pub fn par_sum(n: usize, f: impl Fn(usize) -> f64 + Sync + Send) -> f64 {
    if n <= PAR_CHUNK {
        return compensated_sum((0..n).map(f));
    }
    let chunks = n.div_ceil(PAR_CHUNK);
    let partials: Vec<f64> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = c * PAR_CHUNK;
            let end = (start + PAR_CHUNK).min(n);
            compensated_sum((start..end).map(&f))
        })
        .collect();
    compensated_sum(partials)
}

/// Map `f` over `0..n`, in parallel, into an ordered vector.
pub fn par_map(n: usize, f: impl Fn(usize) -> f64 + Sync + Send) -> Vec<f64> {
    (0..n).into_par_iter().map(f).collect()
}

/// Golden-section search for the minimum of `f` on [a, b].
///
/// Refines until the bracket is narrower than `tol`, returning (argmin, min).
pub fn golden_min(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let (mut a, mut b) = (a, b);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let mid = 0.5 * (a + b);
    (mid, f(mid))
}

/// Golden-section search for the maximum of `f` on [a, b].
pub fn golden_max(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> (f64, f64) {
    let (x, v) = golden_min(|t| -f(t), a, b, tol);
    (x, -v)
}

/// Scan `f` on the uniform grid j/m and refine the extrema by golden-section
/// search in the bracketing cells. Returns ((argmin, min), (argmax, max)).
pub fn grid_extrema(
    f: impl Fn(f64) -> f64 + Sync,
    m: usize,
    refine_tol: f64,
) -> ((f64, f64), (f64, f64)) {
    let vals = par_map(m, |j| f(j as f64 / m as f64));
    let mut imin = 0;
    let mut imax = 0;
    for (j, &v) in vals.iter().enumerate() {
        if v < vals[imin] {
            imin = j;
        }
        if v > vals[imax] {
            imax = j;
        }
    }
    let h = 1.0 / m as f64;
    let lo = |i: usize| (i as f64 - 1.0) * h;
    let hi = |i: usize| (i as f64 + 1.0) * h;
    let (mut tmin, mut vmin) = golden_min(&f, lo(imin), hi(imin), refine_tol);
    let (mut tmax, mut vmax) = golden_max(&f, lo(imax), hi(imax), refine_tol);
    // the refined value can only improve on the grid value
    if vals[imin] < vmin {
        tmin = imin as f64 * h;
        vmin = vals[imin];
    }
    if vals[imax] > vmax {
        tmax = imax as f64 * h;
        vmax = vals[imax];
    }
    ((frac(tmin), vmin), (frac(tmax), vmax))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sin_pi_exact_at_special_points() {
        assert_eq!(abs_sin_pi(0.0), 0.0);
        assert_eq!(abs_sin_pi(1.0), 0.0);
        assert_eq!(abs_sin_pi(123456.0), 0.0);
        assert_eq!(abs_sin_pi(0.5), 1.0);
        assert_eq!(abs_cos_pi(0.5), 0.0);
        assert_eq!(abs_cos_pi(7.5), 0.0);
        assert!((abs_sin_pi(1.0 / 6.0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn signed_trig_reduction() {
        assert!((sin_pi(2.25) - (std::f64::consts::FRAC_PI_4).sin()).abs() < 1e-15);
        assert!((cos_pi(1.0) + 1.0).abs() < 1e-15);
        assert!((cos_pi(3.0) + 1.0).abs() < 1e-15);
        assert!((sin_pi(-0.5) + 1.0).abs() < 1e-15);
    }

    #[test]
    fn compensated_sum_beats_naive() {
        let n = 1_000_000;
        let vals: Vec<f64> = (0..n).map(|i| 1.0 / (i as f64 + 1.0)).collect();
        let fwd = compensated_sum(vals.iter().copied());
        let rev = compensated_sum(vals.iter().rev().copied());
        assert!((fwd - rev).abs() < 1e-12);
    }

    #[test]
    fn par_sum_matches_serial() {
        let n = 100_000;
        let serial = compensated_sum((0..n).map(|i| ((i as f64) * 0.001).sin()));
        let parallel = par_sum(n, |i| ((i as f64) * 0.001).sin());
        assert!((serial - parallel).abs() < 1e-9);
    }

    #[test]
    fn golden_section_finds_parabola_minimum() {
        let (x, v) = golden_min(|t| (t - 0.3) * (t - 0.3) + 1.0, 0.0, 1.0, 1e-10);
        // argmin accuracy saturates near sqrt(eps) where the quadratic is flat
        assert!((x - 0.3).abs() < 1e-7);
        assert!((v - 1.0).abs() < 1e-15);
    }

    #[test]
    fn grid_extrema_of_sine() {
        let ((tmin, vmin), (tmax, vmax)) = grid_extrema(|t| (2.0 * PI * t).sin(), 256, 1e-12);
        assert!((vmin + 1.0).abs() < 1e-12);
        assert!((vmax - 1.0).abs() < 1e-12);
        assert!((tmin - 0.75).abs() < 1e-6);
        assert!((tmax - 0.25).abs() < 1e-6);
    }
}
