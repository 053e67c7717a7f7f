//! Reproducible table and plot-data builders.

use xferspec::cosine_sum::exact_bounds;
use xferspec::dyadic::{binary_rates, conjecture_f};
use xferspec::fourier_matrix::{c_even_exact, sine_upper_bound};
use xferspec::lp::lp_operator_norm;
use xferspec::multiplier::delta_threshold;
use xferspec::transfer::{iterate_extrema, quotient_interval, transfer_value_hn};
use xferspec::weights::PeriodicWeight;
use xferspec::Result;

/// Column-labelled numeric rows; renders to CSV (15 significant digits, LF)
/// or JSON.
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format_sig(*v)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = serde_json::Map::new();
                for (c, v) in self.columns.iter().zip(row) {
                    obj.insert((*c).to_string(), json_number(*v));
                }
                serde_json::Value::Object(obj)
            })
            .collect();
        serde_json::Value::Array(rows)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join("\t"));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:.9}")).collect();
            out.push_str(&cells.join("\t"));
            out.push('\n');
        }
        out
    }
}

/// 15 significant digits with `.` separator.
pub fn format_sig(v: f64) -> String {
    format!("{v:.14e}")
}

pub fn json_number(v: f64) -> serde_json::Value {
    serde_json::Number::from_f64(v)
        .map(serde_json::Value::Number)
        .unwrap_or(serde_json::Value::Null)
}

/// Exact growth rates for even powers 2N, N = 1..=nmax.
pub fn table_even_q(d: u32, nmax: u32) -> Result<Table> {
    let mut rows = Vec::new();
    for n in 1..=nmax {
        let c = c_even_exact(d, 2 * n)?;
        rows.push(vec![(2 * n) as f64, c.lower]);
    }
    Ok(Table {
        columns: vec!["q", "c"],
        rows,
    })
}

/// Envelope upper bounds rho(C) for degrees N = 1..=nmax.
pub fn table_sine_envelope(d: u32, nmax: u32) -> Result<Table> {
    let mut rows = Vec::new();
    for n in 1..=nmax {
        rows.push(vec![n as f64, sine_upper_bound(d, n as usize)?]);
    }
    Ok(Table {
        columns: vec!["N", "upper"],
        rows,
    })
}

/// Certified cosine-sum enclosures for the |sin| weight at d = 3.
pub fn table_sine_d3_bounds(nmax: u32) -> Result<Table> {
    let mut rows = Vec::new();
    for n in 1..=nmax {
        let b = exact_bounds(n)?;
        rows.push(vec![n as f64, b.lower, b.upper]);
    }
    Ok(Table {
        columns: vec!["n", "lower", "upper"],
        rows,
    })
}

/// Collatz-Wielandt quotient enclosures with units h_0 .. h_nmax.
pub fn table_quotient_bounds(w: &PeriodicWeight, d: u32, nmax: u32, grid: usize) -> Result<Table> {
    let mut rows = Vec::new();
    for n in 0..=nmax {
        let q = quotient_interval(w, d, n, grid)?;
        rows.push(vec![n as f64, q.lower, q.upper]);
    }
    Ok(Table {
        columns: vec!["unit_depth", "lower", "upper"],
        rows,
    })
}

/// Closed-form dyadic rates over a quarter-integer grid of exponents.
pub fn table_binary_rates(steps: u32) -> Result<Table> {
    let mut rows = Vec::new();
    for k in 1..=steps {
        let q = k as f64 * 0.25;
        let r = binary_rates(q)?;
        rows.push(vec![q, r.c, r.r, r.big_r]);
    }
    Ok(Table {
        columns: vec!["q", "c", "r", "R"],
        rows,
    })
}

/// First-iterate operator norms on L^p over a fixed exponent ladder.
pub fn table_lp_norms(q: f64, d: u32) -> Result<Table> {
    let mut rows = Vec::new();
    for &p in &[1.25, 1.5, 1.75, 2.0, 2.5, 3.0, 4.0, 6.0, 8.0, 16.0] {
        rows.push(vec![p, lp_operator_norm(q, p, d, 1)?]);
    }
    Ok(Table {
        columns: vec!["p", "norm"],
        rows,
    })
}

pub fn build_table(name: &str, d: u32, q: f64, nmax: u32, grid: usize) -> Result<(Table, bool)> {
    // the bool reports whether every number in the table is certified
    match name {
        "strichartz-even-q" => Ok((table_even_q(d, nmax)?, true)),
        "sine-envelope" => Ok((table_sine_envelope(d, nmax)?, true)),
        "sine-d3-bounds" => Ok((table_sine_d3_bounds(nmax)?, true)),
        "quotient-bounds" => {
            let w = PeriodicWeight::sin_pow(q)?;
            Ok((table_quotient_bounds(&w, d, nmax, grid)?, false))
        }
        "binary-rates" => Ok((table_binary_rates(nmax.max(1) * 4)?, true)),
        "lp-norms" => Ok((table_lp_norms(q, d)?, false)),
        other => Err(xferspec::Error::InvalidParameter(format!(
            "unknown table '{other}'; expected one of strichartz-even-q, sine-envelope, \
             sine-d3-bounds, quotient-bounds, binary-rates, lp-norms"
        ))),
    }
}

/// Enclosure of the growth rate c(q) for plotting: exact (degenerate) at
/// even integers via the primitive truncation block, quotient bounds with
/// unit h_1 otherwise.
fn cq_enclosure(w_q: f64, d: u32, sine: bool) -> Result<(f64, f64)> {
    let rounded = w_q.round();
    if (w_q - rounded).abs() < 1e-9 && rounded >= 2.0 && (rounded as u64).is_multiple_of(2) {
        let c = c_even_exact(d, rounded as u32)?;
        return Ok((c.lower, c.upper));
    }
    let w = if sine {
        PeriodicWeight::sin_pow(w_q)?
    } else {
        PeriodicWeight::cos_pow(w_q)?
    };
    let i = quotient_interval(&w, d, 1, 1024)?;
    Ok((i.lower, i.upper))
}

/// Plot data per the frozen plot names. Columns are `x,lower,upper` for
/// enclosure curves and `x,y` for function samples.
pub fn build_plot(
    name: &str,
    samples: u32,
    d: u32,
    n: u32,
    weight: Option<&PeriodicWeight>,
) -> Result<Table> {
    match name {
        "cq" => {
            let mut rows = Vec::new();
            for i in 1..=samples {
                let x = 6.0 * i as f64 / samples as f64;
                let (lo, hi) = cq_enclosure(x, d, false)?;
                rows.push(vec![x, lo, hi]);
            }
            Ok(Table {
                columns: vec!["x", "lower", "upper"],
                rows,
            })
        }
        "ctildeq" => {
            let mut rows = Vec::new();
            for i in 1..=samples {
                let x = 20.0 * i as f64 / samples as f64;
                let w = PeriodicWeight::sin_pow(x)?;
                let e = iterate_extrema(&w, d, 2, 1024)?;
                rows.push(vec![x, e.min.sqrt(), e.max.sqrt()]);
            }
            Ok(Table {
                columns: vec!["x", "lower", "upper"],
                rows,
            })
        }
        "Fs" => {
            let mut rows = Vec::new();
            for i in 0..samples {
                let x = 1.0 + 3.0 * (i as f64 + 0.5) / samples as f64;
                rows.push(vec![x, conjecture_f(x)?]);
            }
            Ok(Table {
                columns: vec!["x", "y"],
                rows,
            })
        }
        "deltap" => {
            // x = 1/p on (0, 1); exponents are capped at p = 64 to keep the
            // |sin|^p quotient evaluations inside f64 range
            let mut rows = Vec::new();
            for i in 1..=samples {
                let x = i as f64 / (samples as f64 + 1.0);
                if x < 1.0 / 64.0 {
                    continue;
                }
                let p = 1.0 / x;
                let w = PeriodicWeight::sin_pow(p)?;
                let c = quotient_interval(&w, 3, 3, 512)?;
                let t = delta_threshold(p, &c)?;
                rows.push(vec![x, t.lower, t.upper]);
            }
            Ok(Table {
                columns: vec!["x", "lower", "upper"],
                rows,
            })
        }
        "hn" => {
            let w = weight.ok_or_else(|| {
                xferspec::Error::InvalidParameter("hn plot needs --weight".into())
            })?;
            let mut rows = Vec::new();
            for i in 0..samples {
                let x = i as f64 / samples as f64;
                rows.push(vec![x, transfer_value_hn(w, d, n, x)?]);
            }
            Ok(Table {
                columns: vec!["x", "y"],
                rows,
            })
        }
        other => Err(xferspec::Error::InvalidParameter(format!(
            "unknown plot '{other}'; expected one of cq, ctildeq, Fs, deltap, hn"
        ))),
    }
}
