//! Finite Fourier-truncation matrices of the composition operator
//! (T x)(t) = f(t) x(d t) and of the transfer operator, their dominant
//! eigenvalues, exact growth rates for even-power cosine weights, the
//! coefficient recursion for I_n, and the sine-envelope eigenvalue bounds.

use crate::transfer::{Method, SpectralInterval};
use crate::weights::{sine_envelopes, PeriodicWeight, TrigPolynomial};
use crate::{Error, Result};

/// Dense row-major real matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    dim: usize,
    entries: Vec<f64>,
}

impl DenseMatrix {
    pub fn new(dim: usize, entries: Vec<f64>) -> Result<Self> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(Error::invalid("matrix needs dim >= 1 and dim^2 entries"));
        }
        if entries.iter().any(|e| !e.is_finite()) {
            return Err(Error::non_finite("matrix entry"));
        }
        Ok(Self { dim, entries })
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> f64) -> Result<Self> {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        Self::new(dim, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i)).expect("entries already validated")
    }

    pub fn mul_vec(&self, v: &[f64], out: &mut [f64]) {
        debug_assert_eq!(v.len(), self.dim);
        for (i, o) in out.iter_mut().enumerate() {
            let row = &self.entries[i * self.dim..(i + 1) * self.dim];
            *o = row.iter().zip(v).map(|(a, x)| a * x).sum();
        }
    }

    pub fn column_sums(&self) -> Vec<f64> {
        let mut sums = vec![0.0; self.dim];
        for i in 0..self.dim {
            for (j, s) in sums.iter_mut().enumerate() {
                *s += self.get(i, j);
            }
        }
        sums
    }
}

/// Central (2K+1)^2 block of the composition operator in the Fourier basis:
/// entry (row k, col l) = a_{k - d l}, indices running -K..=K.
pub fn composition_matrix(coeffs: &TrigPolynomial, d: u32, k_band: usize) -> DenseMatrix {
    let dim = 2 * k_band + 1;
    DenseMatrix::from_fn(dim, |i, j| {
        let k = i as i64 - k_band as i64;
        let l = j as i64 - k_band as i64;
        coeffs.coeff(k - d as i64 * l)
    })
    .expect("finite coefficients")
}

/// Central block of the transfer operator: entry (row k, col l) = a_{d k - l}.
/// This is the transpose of the composition block for symmetric coefficients.
pub fn transfer_matrix(coeffs: &TrigPolynomial, d: u32, k_band: usize) -> DenseMatrix {
    let dim = 2 * k_band + 1;
    DenseMatrix::from_fn(dim, |i, j| {
        let k = i as i64 - k_band as i64;
        let l = j as i64 - k_band as i64;
        coeffs.coeff(d as i64 * k - l)
    })
    .expect("finite coefficients")
}

/// Symmetric fold of the composition block onto cosine modes, a
/// (K+1) x (K+1) matrix: c_{i,0} = a_i, c_{i,j} = a_{i-dj} + a_{i+dj}.
pub fn symmetric_matrix(coeffs: &TrigPolynomial, d: u32, k_band: usize) -> DenseMatrix {
    DenseMatrix::from_fn(k_band + 1, |i, j| {
        let i = i as i64;
        let j = j as i64;
        if j == 0 {
            coeffs.coeff(i)
        } else {
            coeffs.coeff(i - d as i64 * j) + coeffs.coeff(i + d as i64 * j)
        }
    })
    .expect("finite coefficients")
}

/// Truncation band K = floor((N-1)/(d-1)) for a degree-N weight; degree-K
/// trigonometric polynomials then form an invariant subspace.
pub fn truncation_band(degree: usize, d: u32) -> usize {
    if degree == 0 {
        0
    } else {
        (degree - 1) / (d as usize - 1)
    }
}

/// Dominant eigenvalue result.
#[derive(Debug, Clone)]
pub struct DominantEigen {
    pub value: f64,
    pub vector: Vec<f64>,
    pub residual: f64,
}

const POWER_ITERATION_CAP: usize = 100_000;
const POWER_ITERATION_TOL: f64 = 1e-13;

/// Dominant eigenvalue by power iteration (closed form for dim <= 2).
///
/// For nonnegative primitive matrices this is the spectral radius. For
/// mixed-sign matrices the iteration targets the magnitude-dominant real
/// eigenvalue; one deterministic restart from a perturbed start vector is
/// attempted before reporting non-convergence.
pub fn dominant_eigenvalue(m: &DenseMatrix) -> Result<DominantEigen> {
    if m.dim() > 512 {
        return Err(Error::invalid("eigensolver restricted to dim <= 512"));
    }
    if m.dim() == 1 {
        return Ok(DominantEigen {
            value: m.get(0, 0),
            vector: vec![1.0],
            residual: 0.0,
        });
    }
    if m.dim() == 2 {
        return two_by_two(m);
    }
    let start: Vec<f64> = vec![1.0; m.dim()];
    match power_iteration(m, start) {
        Ok(e) => Ok(e),
        Err(_) => {
            // deterministic perturbed restart
            let start: Vec<f64> = (0..m.dim())
                .map(|i| 1.0 + 0.25 * ((i + 1) as f64).sin())
                .collect();
            power_iteration(m, start)
        }
    }
}

fn two_by_two(m: &DenseMatrix) -> Result<DominantEigen> {
    let (a, b, c, d) = (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1));
    let tr = a + d;
    let det = a * d - b * c;
    let disc = tr * tr - 4.0 * det;
    if disc < 0.0 {
        return Err(Error::NoConvergence { residual: f64::NAN });
    }
    let sq = disc.sqrt();
    let l1 = 0.5 * (tr + sq);
    let l2 = 0.5 * (tr - sq);
    let value = if l1.abs() >= l2.abs() { l1 } else { l2 };
    // eigenvector from either row equation, whichever is better conditioned
    let vector = if b.abs() > c.abs() {
        vec![b, value - a]
    } else if c != 0.0 {
        vec![value - d, c]
    } else {
        // diagonal matrix
        if a.abs() >= d.abs() {
            vec![1.0, 0.0]
        } else {
            vec![0.0, 1.0]
        }
    };
    let norm = vector.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    let vector: Vec<f64> = vector.iter().map(|v| v / norm).collect();
    let mut out = vec![0.0; 2];
    m.mul_vec(&vector, &mut out);
    let residual = out
        .iter()
        .zip(&vector)
        .map(|(o, v)| (o - value * v).abs())
        .fold(0.0f64, f64::max);
    Ok(DominantEigen {
        value,
        vector,
        residual,
    })
}

fn power_iteration(m: &DenseMatrix, mut v: Vec<f64>) -> Result<DominantEigen> {
    let dim = m.dim();
    let mut w = vec![0.0; dim];
    let mut lambda = 0.0;
    let mut residual = f64::INFINITY;
    for _ in 0..POWER_ITERATION_CAP {
        m.mul_vec(&v, &mut w);
        // Rayleigh quotient
        let num: f64 = w.iter().zip(&v).map(|(a, b)| a * b).sum();
        let den: f64 = v.iter().map(|x| x * x).sum();
        lambda = num / den;
        let vnorm = v.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
        residual = w
            .iter()
            .zip(&v)
            .map(|(a, b)| (a - lambda * b).abs())
            .fold(0.0f64, f64::max);
        if residual <= POWER_ITERATION_TOL * vnorm {
            let scale = 1.0 / w.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
            let vector: Vec<f64> = w.iter().map(|x| x * scale).collect();
            return Ok(DominantEigen {
                value: lambda,
                vector,
                residual,
            });
        }
        let wnorm = w.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
        if wnorm == 0.0 {
            return Ok(DominantEigen {
                value: 0.0,
                vector: v,
                residual: 0.0,
            });
        }
        for (x, y) in v.iter_mut().zip(&w) {
            *x = y / wnorm;
        }
    }
    let _ = lambda;
    Err(Error::NoConvergence { residual })
}

/// Exact growth rate c(2N) for the weight cos^{2N}(pi t): the spectral radius
/// of the symmetric truncation block, certified because all coefficients are
/// positive (the block is primitive).
pub fn c_even_exact(d: u32, q_even: u32) -> Result<SpectralInterval> {
    if q_even == 0 || !q_even.is_multiple_of(2) {
        return Err(Error::invalid(
            "exact growth rate needs an even exponent q >= 2",
        ));
    }
    let n = (q_even / 2) as usize;
    let w = PeriodicWeight::cos_pow(q_even as f64)?;
    let coeffs = w.fourier_coefficients(n)?.poly;
    let k = truncation_band(n, d);
    let c = symmetric_matrix(&coeffs, d, k);
    let eig = dominant_eigenvalue(&c)?;
    SpectralInterval::degenerate(eig.value, true, Method::Matrix)
}

/// a_{0,n} from the truncated coefficient recursion
/// a_{k,n+1} = sum_{|l| <= K} a_{k-dl} a_{l,n}, seeded by a_{k,1} = a_k.
/// Exact for trigonometric-polynomial weights when K is the truncation band.
pub fn in_coefficient_recursion(
    coeffs: &TrigPolynomial,
    d: u32,
    k_band: usize,
    n: u32,
) -> Result<f64> {
    if n == 0 {
        return Err(Error::invalid("coefficient recursion needs n >= 1"));
    }
    let mut a: Vec<f64> = (-(k_band as i64)..=k_band as i64)
        .map(|k| coeffs.coeff(k))
        .collect();
    let dim = 2 * k_band + 1;
    let mut next = vec![0.0; dim];
    for _ in 1..n {
        for (i, slot) in next.iter_mut().enumerate() {
            let k = i as i64 - k_band as i64;
            let mut acc = 0.0;
            for (j, &al) in a.iter().enumerate() {
                let l = j as i64 - k_band as i64;
                acc += coeffs.coeff(k - d as i64 * l) * al;
            }
            *slot = acc;
        }
        std::mem::swap(&mut a, &mut next);
    }
    Ok(a[k_band])
}

/// Upper bound for the growth rate of the |sin| weight from the degree-N
/// envelope: the dominant eigenvalue of the envelope's truncation block.
pub fn sine_upper_bound(d: u32, n: usize) -> Result<f64> {
    let (_, h) = sine_envelopes(n)?;
    let k = truncation_band(n, d);
    let c = symmetric_matrix(&h, d, k);
    Ok(dominant_eigenvalue(&c)?.value)
}

/// Dominant eigenvalue of the lower envelope's truncation block. The envelope
/// has mixed-sign coefficients, so this is reported as an uncertified number,
/// not a bound.
pub fn sine_lower_envelope_eigenvalue(d: u32, n: usize) -> Result<f64> {
    let (g, _) = sine_envelopes(n)?;
    let k = truncation_band(n, d);
    let c = symmetric_matrix(&g, d, k);
    Ok(dominant_eigenvalue(&c)?.value)
}
