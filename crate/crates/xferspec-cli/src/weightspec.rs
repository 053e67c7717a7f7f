//! Weight specification grammar: `cos^Q`, `sin^Q`, `trig:[a0,a1,...,aN]`
//! (symmetric extension implied), `step:[v1,...,vd]`.

use xferspec::weights::{PeriodicWeight, TrigPolynomial};

pub fn parse_weight(spec: &str) -> Result<PeriodicWeight, String> {
    let spec = spec.trim();
    if let Some(q) = spec.strip_prefix("cos^") {
        let q: f64 = q.parse().map_err(|_| format!("bad exponent in '{spec}'"))?;
        return PeriodicWeight::cos_pow(q).map_err(|e| e.to_string());
    }
    if let Some(q) = spec.strip_prefix("sin^") {
        let q: f64 = q.parse().map_err(|_| format!("bad exponent in '{spec}'"))?;
        return PeriodicWeight::sin_pow(q).map_err(|e| e.to_string());
    }
    if let Some(body) = spec.strip_prefix("trig:") {
        let coeffs = parse_list(body)?;
        let poly = TrigPolynomial::from_symmetric(coeffs).map_err(|e| e.to_string())?;
        return Ok(PeriodicWeight::trig_poly(poly));
    }
    if let Some(body) = spec.strip_prefix("step:") {
        let values = parse_list(body)?;
        return PeriodicWeight::step_fn(values).map_err(|e| e.to_string());
    }
    Err(format!(
        "unrecognized weight '{spec}'; expected cos^Q, sin^Q, trig:[a0,...], or step:[v1,...]"
    ))
}

fn parse_list(body: &str) -> Result<Vec<f64>, String> {
    let inner = body
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| format!("expected a bracketed list, got '{body}'"))?;
    inner
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<f64>()
                .map_err(|_| format!("bad number '{tok}'"))
        })
        .collect()
}
