//! Exact preimage-sum evaluation of the transfer iterates h_n = L^n 1,
//! their extrema, the spectral-radius enclosures they induce, the integrals
//! I_n of the weight products, and eigen-residual checks.

use crate::util::{compensated_sum, grid_extrema, par_sum, Accumulator};
use crate::weights::PeriodicWeight;
use crate::{Error, Result};
use std::sync::OnceLock;

/// Default cap on the preimage count d^n (and on quadrature point counts).
pub const DEFAULT_MAX_PREIMAGES: u64 = 100_000_000;

/// Cap on d^n, overridable through the `XFERSPEC_MAX_DEPTH` environment
/// variable (read once per process).
pub fn max_preimages() -> u64 {
    static CAP: OnceLock<u64> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("XFERSPEC_MAX_DEPTH")
            .ok()
            .and_then(|s| s.parse::<u64>().ok())
            .unwrap_or(DEFAULT_MAX_PREIMAGES)
    })
}

fn checked_power(d: u32, n: u32) -> Result<u64> {
    let cap = max_preimages();
    let mut p: u64 = 1;
    for _ in 0..n {
        p = p
            .checked_mul(d as u64)
            .filter(|&v| v <= cap)
            .ok_or_else(|| Error::resource(format!("d^n = {d}^{n} exceeds cap {cap}")))?;
    }
    Ok(p)
}

/// Method that produced a spectral enclosure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// n-th roots of iterate extrema
    Est1,
    /// Collatz-Wielandt quotient over a unit
    Quotient,
    /// Fourier truncation matrix eigenvalue
    Matrix,
    /// closed form
    Closed,
    /// envelope-domination bound
    Envelope,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Est1 => "est1",
            Method::Quotient => "quotient",
            Method::Matrix => "matrix",
            Method::Closed => "closed",
            Method::Envelope => "envelope",
        }
    }
}

/// Enclosure [lower, upper] of a growth rate, with provenance.
///
/// `certified` is set only when the extremal locations entering the bound are
/// analytically known, not found by grid search.
#[derive(Debug, Clone, Copy)]
pub struct SpectralInterval {
    pub lower: f64,
    pub upper: f64,
    pub certified: bool,
    pub method: Method,
    pub depth: Option<u32>,
}

impl SpectralInterval {
    pub fn new(
        lower: f64,
        upper: f64,
        certified: bool,
        method: Method,
        depth: Option<u32>,
    ) -> Result<Self> {
        if !(lower.is_finite() && upper.is_finite()) {
            return Err(Error::non_finite("interval endpoint"));
        }
        if lower < 0.0 || lower > upper {
            return Err(Error::invalid(format!(
                "interval endpoints must satisfy 0 <= lower <= upper, got [{lower}, {upper}]"
            )));
        }
        Ok(Self {
            lower,
            upper,
            certified,
            method,
            depth,
        })
    }

    pub fn degenerate(value: f64, certified: bool, method: Method) -> Result<Self> {
        Self::new(value, value, certified, method, None)
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }

    /// Image under a monotone nondecreasing map.
    pub fn map_monotone(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(
            f(self.lower),
            f(self.upper),
            self.certified,
            self.method,
            self.depth,
        )
    }
}

/// Uniform grid sample of a function on the circle (t_j = j / M).
#[derive(Debug, Clone)]
pub struct GridSample {
    values: Vec<f64>,
}

impl GridSample {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::invalid("grid sample needs M >= 2"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::non_finite("grid sample value"));
        }
        Ok(Self { values })
    }

    pub fn from_fn(m: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new((0..m).map(|j| f(j as f64 / m as f64)).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Weight product f_n(t) = prod_{j<n} f(d^j t); the empty product is 1.
pub fn weight_product_fn(w: &PeriodicWeight, d: u32, n: u32, t: f64) -> f64 {
    debug_assert!(d >= 2);
    let mut prod = 1.0;
    let mut scale = 1.0;
    for _ in 0..n {
        prod *= w.eval(scale * t);
        scale *= d as f64;
    }
    prod
}

/// h_n(t) = (L^n 1)(t) by exact preimage enumeration:
/// d^{-n} sum_{k < d^n} f_n((t+k)/d^n), with f_n evaluated level by level so
/// every weight argument is formed by a single division.
pub fn transfer_value_hn(w: &PeriodicWeight, d: u32, n: u32, t: f64) -> Result<f64> {
    if !t.is_finite() {
        return Err(Error::non_finite("evaluation point"));
    }
    if n == 0 {
        return Ok(1.0);
    }
    let count = checked_power(d, n)?;
    // powers d^1 .. d^n
    let mut powers = Vec::with_capacity(n as usize);
    let mut p = 1.0;
    for _ in 0..n {
        p *= d as f64;
        powers.push(p);
    }
    let term = |k: usize| {
        let u = t + k as f64;
        let mut prod = 1.0;
        for &dm in &powers {
            prod *= w.eval(u / dm);
            if prod == 0.0 {
                break;
            }
        }
        prod
    };
    let sum = if count > 16_384 {
        par_sum(count as usize, term)
    } else {
        compensated_sum((0..count as usize).map(term))
    };
    Ok(sum / count as f64)
}

/// Iterate extrema of h_n over a grid with golden-section refinement.
#[derive(Debug, Clone, Copy)]
pub struct IterateExtrema {
    pub min: f64,
    pub max: f64,
    pub argmin: f64,
    pub argmax: f64,
}

pub fn iterate_extrema(
    w: &PeriodicWeight,
    d: u32,
    n: u32,
    grid_m: usize,
) -> Result<IterateExtrema> {
    if grid_m < 256 {
        return Err(Error::invalid("extrema grid must have at least 256 points"));
    }
    checked_power(d, n)?;
    let f = |t: f64| transfer_value_hn(w, d, n, t).expect("guard checked above");
    let ((argmin, min), (argmax, max)) = grid_extrema(f, grid_m, 1e-10);
    Ok(IterateExtrema {
        min,
        max,
        argmin,
        argmax,
    })
}

/// True when h_1 (hence every h_n) is constant: even integer exponent
/// q <= 2(d-1) on either power weight.
fn constant_iterate_case(w: &PeriodicWeight, d: u32) -> Option<f64> {
    let q = w.even_power()?;
    if q <= 2 * (d - 1) {
        // h_1 = 2^{-q} C(q, q/2)
        let mut c = 1.0;
        for i in 0..q / 2 {
            c = c * (q - i) as f64 / (i + 1) as f64;
        }
        Some(c * (0.5f64).powi(q as i32))
    } else {
        None
    }
}

fn is_sin_d3_unit_weight(w: &PeriodicWeight, d: u32) -> bool {
    matches!(w, PeriodicWeight::SinPow { q } if (*q - 1.0).abs() < 1e-12) && d == 3
}

/// Enclosure [r_n^{1/n}, R_n^{1/n}] of the spectral radius.
///
/// Certified only where the extremal locations are analytically pinned: the
/// constant-iterate even-power case, and the |sin| weight for d = 3 where the
/// cosine-sum expansion places the minimum at 0 and the maximum at 1/2.
pub fn submultiplicative_interval(
    w: &PeriodicWeight,
    d: u32,
    n: u32,
    grid_m: usize,
) -> Result<SpectralInterval> {
    if n == 0 {
        return Err(Error::invalid("enclosure depth must be >= 1"));
    }
    let root = |x: f64| x.powf(1.0 / n as f64);
    if let Some(h1) = constant_iterate_case(w, d) {
        let v = root(h1.powi(n as i32));
        return SpectralInterval::new(v, v, true, Method::Est1, Some(n));
    }
    if is_sin_d3_unit_weight(w, d) {
        let r = transfer_value_hn(w, d, n, 0.0)?;
        let big_r = transfer_value_hn(w, d, n, 0.5)?;
        return SpectralInterval::new(root(r), root(big_r), true, Method::Est1, Some(n));
    }
    let ext = iterate_extrema(w, d, n, grid_m)?;
    SpectralInterval::new(root(ext.min), root(ext.max), false, Method::Est1, Some(n))
}

/// One application of L to a callable: (L u)(t) = (1/d) sum_i f(s_i) u(s_i)
/// over the preimages s_i = (t+i)/d.
pub fn apply_transfer(
    w: &PeriodicWeight,
    d: u32,
    u: &(impl Fn(f64) -> f64 + ?Sized),
    t: f64,
) -> f64 {
    let mut acc = Accumulator::new();
    for i in 0..d {
        let s = (t + i as f64) / d as f64;
        acc.add(w.eval(s) * u(s));
    }
    acc.total() / d as f64
}

/// Collatz-Wielandt enclosure from a unit (strictly positive) function:
/// [min_t (L unit)(t)/unit(t), max_t ...], extrema over a grid with
/// golden-section refinement.
pub fn collatz_wielandt_interval(
    w: &PeriodicWeight,
    d: u32,
    unit: &(impl Fn(f64) -> f64 + Sync + ?Sized),
    grid_m: usize,
    depth: Option<u32>,
) -> Result<SpectralInterval> {
    if grid_m < 16 {
        return Err(Error::invalid("quotient grid must have at least 16 points"));
    }
    let ratio = |t: f64| {
        let u = unit(t);
        (apply_transfer(w, d, unit, t), u)
    };
    // positivity scan before refining
    for j in 0..grid_m {
        let t = j as f64 / grid_m as f64;
        let u = unit(t);
        if !(u > 0.0) || !u.is_finite() {
            return Err(Error::invalid(format!(
                "unit must be strictly positive, u({t}) = {u}"
            )));
        }
    }
    let f = |t: f64| {
        let (lu, u) = ratio(t);
        lu / u
    };
    let ((_, min), (_, max)) = grid_extrema(f, grid_m, 1e-10);
    SpectralInterval::new(min, max, false, Method::Quotient, depth)
}

/// Collatz-Wielandt enclosure for the unit h_n (the quotient h_{n+1}/h_n).
pub fn quotient_interval(
    w: &PeriodicWeight,
    d: u32,
    n: u32,
    grid_m: usize,
) -> Result<SpectralInterval> {
    checked_power(d, n + 1)?;
    let unit = move |t: f64| transfer_value_hn(w, d, n, t).expect("depth guard checked");
    collatz_wielandt_interval(w, d, &unit, grid_m, Some(n))
}

/// Quotient enclosure from a grid-sampled unit. The sample resolution must be
/// divisible by d so that every preimage of a coarse grid point is itself a
/// sample point; no interpolation is performed.
pub fn collatz_wielandt_from_grid(
    w: &PeriodicWeight,
    d: u32,
    unit: &GridSample,
    depth: Option<u32>,
) -> Result<SpectralInterval> {
    let m = unit.len();
    if !m.is_multiple_of(d as usize) {
        return Err(Error::invalid("grid length must be divisible by d"));
    }
    if unit.values().iter().any(|&v| !(v > 0.0)) {
        return Err(Error::invalid("unit must be strictly positive"));
    }
    let coarse = m / d as usize;
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for j in 0..coarse {
        // t = j d / m has preimages (t+i)/d = (j + i coarse') / m
        let t_idx = j * d as usize;
        let mut acc = Accumulator::new();
        for i in 0..d as usize {
            let s_idx = (t_idx + i * m) / d as usize;
            let s = s_idx as f64 / m as f64;
            acc.add(w.eval(s) * unit.values()[s_idx]);
        }
        let q = acc.total() / d as f64 / unit.values()[t_idx];
        min = min.min(q);
        max = max.max(q);
    }
    SpectralInterval::new(min, max, false, Method::Quotient, depth)
}

/// I_n = integral of f_n over one period.
///
/// Step weights have the exact closed form (integral of f)^n; all other
/// weights use the midpoint rule with at least 32 sub-points per oscillation
/// cell of width d^{-n} and at least 8192 points in total (the power-weight
/// cusps are only Hoelder-q, so small n needs the absolute floor). The point
/// count is kept even so that half-period shifts permute the sample set
/// exactly.
pub fn integral_in(w: &PeriodicWeight, d: u32, n: u32) -> Result<f64> {
    if n == 0 {
        return Ok(1.0);
    }
    if let PeriodicWeight::StepFn { values } = w {
        let mean = compensated_sum(values.iter().copied()) / values.len() as f64;
        return Ok(mean.powi(n as i32));
    }
    let cells = checked_power(d, n)?;
    let mut m_per_cell: u64 = 32u64.max(8192u64.div_ceil(cells));
    if m_per_cell % 2 == 1 {
        m_per_cell += 1;
    }
    let total = cells
        .checked_mul(m_per_cell)
        .filter(|&v| v <= max_preimages())
        .ok_or_else(|| {
            Error::resource(format!("quadrature would need {cells} * {m_per_cell} points"))
        })?;
    let m = total as usize;
    let sum = par_sum(m, |j| {
        let t = (j as f64 + 0.5) / m as f64;
        weight_product_fn(w, d, n, t)
    });
    Ok(sum / m as f64)
}

/// Max over a grid of |(L u)(t) - lambda u(t)| with L applied exactly.
pub fn eigen_residual(
    w: &PeriodicWeight,
    d: u32,
    u: &(impl Fn(f64) -> f64 + Sync + ?Sized),
    lambda: f64,
    grid_m: usize,
) -> f64 {
    let vals = crate::util::par_map(grid_m, |j| {
        let t = j as f64 / grid_m as f64;
        (apply_transfer(w, d, u, t) - lambda * u(t)).abs()
    });
    vals.into_iter().fold(0.0, f64::max)
}

/// Shape of h_1 for the |sin|^q weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct H1Profile {
    /// constant value when q is an even integer <= 2(d-1)
    pub constant: Option<f64>,
    /// monotonicity class k: (-1)^{k-1} h_1' > 0 on (0, 1/2)
    pub class_k: Option<u32>,
    /// set when q sits numerically on a class boundary
    pub boundary: bool,
}

/// Classify h_1 for the |sin|^q weight: constant for even q <= 2(d-1),
/// otherwise the sign class of h_1' on (0, 1/2), verified numerically.
pub fn h1_profile(q: f64, d: u32) -> Result<H1Profile> {
    if !(q > 0.0) || d < 2 {
        return Err(Error::invalid("need q > 0 and d >= 2"));
    }
    let w = PeriodicWeight::sin_pow(q)?;
    if let Some(c) = constant_iterate_case(&w, d) {
        return Ok(H1Profile {
            constant: Some(c),
            class_k: None,
            boundary: false,
        });
    }
    let k = if q >= 2.0 * (d - 1) as f64 {
        d
    } else {
        (q / 2.0).floor() as u32 + 1
    };
    // boundary when q is within 1e-9 of an even integer below 2(d-1)
    let nearest_even = 2.0 * (q / 2.0).round();
    let boundary = (q - nearest_even).abs() < 1e-9 && nearest_even < 2.0 * (d - 1) as f64;
    // numeric sign verification of h_1' on (0, 1/2)
    let h1 = |t: f64| transfer_value_hn(&w, d, 1, t).expect("d^1 below guard");
    let step = 1e-6;
    let want = if k % 2 == 1 { 1.0 } else { -1.0 };
    let mut ok = true;
    for j in 1..64 {
        let t = j as f64 / 128.0;
        let deriv = (h1(t + step) - h1(t - step)) / (2.0 * step);
        if deriv * want <= 0.0 && deriv.abs() > 1e-7 {
            ok = false;
            break;
        }
    }
    if !ok && !boundary {
        return Err(Error::invalid(format!(
            "sign verification of h_1' failed for q={q}, d={d}, class {k}"
        )));
    }
    Ok(H1Profile {
        constant: None,
        class_k: Some(k),
        boundary,
    })
}
