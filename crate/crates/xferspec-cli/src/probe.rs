//! Numeric probes of the two open monotonicity statements for the |sin|^q
//! weights: the sign class of h_n' on (0, 1/2), and the location of the
//! extrema of the quotients h_{n+1}/h_n. Probe reports are evidence, not
//! proof.

use xferspec::transfer::{apply_transfer, transfer_value_hn};
use xferspec::weights::PeriodicWeight;
use xferspec::Result;

#[derive(Debug, Clone)]
pub struct ProbeRow {
    pub n: u32,
    /// true when the iterates are constant (even q <= 2(d-1))
    pub degenerate: bool,
    pub monotone_class_pass: bool,
    pub quotient_argmin: f64,
    pub quotient_argmax: f64,
    pub quotient_endpoints_pass: bool,
}

/// Expected sign class: (-1)^{k-1} h_n' > 0 on (0, 1/2) with k from the
/// exponent intervals (2(k-1), 2k), capped at k = d.
fn expected_class(q: f64, d: u32) -> u32 {
    if q >= 2.0 * (d - 1) as f64 {
        d
    } else {
        (q / 2.0).floor() as u32 + 1
    }
}

pub fn probe_conjectures(d: u32, q: f64, nmax: u32, grid: usize) -> Result<Vec<ProbeRow>> {
    let w = PeriodicWeight::sin_pow(q)?;
    let degenerate = matches!(w.even_power(), Some(qe) if qe <= 2 * (d - 1));
    let k = expected_class(q, d);
    let want_sign = if k % 2 == 1 { 1.0 } else { -1.0 };
    let mut rows = Vec::new();
    for n in 1..=nmax {
        if degenerate {
            rows.push(ProbeRow {
                n,
                degenerate: true,
                monotone_class_pass: true,
                quotient_argmin: f64::NAN,
                quotient_argmax: f64::NAN,
                quotient_endpoints_pass: true,
            });
            continue;
        }
        // sign of h_n' sampled on (0, 1/2)
        let h = |t: f64| transfer_value_hn(&w, d, n, t).expect("depth within guard");
        let mut monotone_class_pass = true;
        let step = 1e-6;
        for j in 1..64 {
            let t = j as f64 / 128.0;
            let deriv = (h(t + step) - h(t - step)) / (2.0 * step);
            if deriv * want_sign < -1e-9 {
                monotone_class_pass = false;
                break;
            }
        }
        // quotient h_{n+1}/h_n extrema over the grid
        let ratio = |t: f64| apply_transfer(&w, d, &h, t) / h(t);
        let mut argmin = 0.0;
        let mut argmax = 0.0;
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for j in 0..=grid / 2 {
            // symmetry: scan [0, 1/2]
            let t = j as f64 / grid as f64;
            let v = ratio(t);
            if v < min {
                min = v;
                argmin = t;
            }
            if v > max {
                max = v;
                argmax = t;
            }
        }
        // the expected endpoint pattern: extrema at {0, 1/2}, with which one
        // is the max depending on q and the parity of n for q < 2
        let tol = 2.0 / grid as f64;
        let near = |a: f64, b: f64| (a - b).abs() <= tol;
        let max_at_zero = if q < 2.0 { n % 2 == 1 } else { q < 4.0 };
        let quotient_endpoints_pass = if max_at_zero {
            near(argmax, 0.0) && near(argmin, 0.5)
        } else {
            near(argmax, 0.5) && near(argmin, 0.0)
        };
        rows.push(ProbeRow {
            n,
            degenerate: false,
            monotone_class_pass,
            quotient_argmin: argmin,
            quotient_argmax: argmax,
            quotient_endpoints_pass,
        });
    }
    Ok(rows)
}
