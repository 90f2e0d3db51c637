use super::record::ExperimentRecord;
use crate::error::{Error, Result};

const Z95: f64 = 1.96;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AcceptanceEstimate {
    pub trials: usize,
    pub accepts: usize,
    pub p_hat: f64,
    pub lo: f64,
    pub hi: f64,
}

/// Wilson score interval at 95% for `k` successes in `n` trials.
pub fn wilson(k: usize, n: usize) -> (f64, f64) {
    assert!(n > 0 && k <= n, "wilson needs 0 <= k <= n, n > 0");
    let n = n as f64;
    let p = k as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = Z95 / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    let lo = if k == 0 { 0.0 } else { (center - half).max(0.0) };
    let hi = if k as f64 == n { 1.0 } else { (center + half).min(1.0) };
    (lo, hi)
}

/// Acceptance rate of one cell of records.
pub fn estimate_acceptance(records: &[ExperimentRecord]) -> Result<AcceptanceEstimate> {
    if records.is_empty() {
        return Err(Error::arg("empty cell"));
    }
    let trials = records.len();
    let accepts = records.iter().filter(|r| r.is_accept()).count();
    let (lo, hi) = wilson(accepts, trials);
    Ok(AcceptanceEstimate {
        trials,
        accepts,
        p_hat: accepts as f64 / trials as f64,
        lo,
        hi,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    /// Sum of squared residuals.
    pub residual: f64,
}

/// Ordinary least squares `y ≈ slope·x + intercept`.
pub fn fit_line(points: &[(f64, f64)]) -> Result<LineFit> {
    if points.len() < 2 {
        return Err(Error::arg("a line fit needs at least two points"));
    }
    if points.iter().any(|&(x, y)| !x.is_finite() || !y.is_finite()) {
        return Err(Error::arg("non-finite point"));
    }
    let m = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / m;
    let my = points.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx <= f64::EPSILON * mx.abs().max(1.0) {
        return Err(Error::arg("x values are all equal"));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = points.iter().map(|p| (p.1 - slope * p.0 - intercept).powi(2)).sum();
    Ok(LineFit {
        slope,
        intercept,
        residual,
    })
}

/// Slope of `log(queries)` against `log(1/eps)`.
pub fn fit_slope(points: &[(f64, f64)]) -> Result<f64> {
    if points.iter().any(|&(e, q)| !(e > 0.0) || !(q > 0.0)) {
        return Err(Error::arg("eps and query counts must be positive"));
    }
    for (i, a) in points.iter().enumerate() {
        if points[i + 1..].iter().any(|b| b.0 == a.0) {
            return Err(Error::arg(format!("eps {} appears twice", a.0)));
        }
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(e, q)| ((1.0 / e).ln(), q.ln())).collect();
    Ok(fit_line(&logs)?.slope)
}

pub fn median(values: &[usize]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_unstable();
    let mid = v.len() / 2;
    Some(if v.len() % 2 == 1 {
        v[mid] as f64
    } else {
        (v[mid - 1] as f64 + v[mid] as f64) / 2.0
    })
}

/// `(eps, median distinct_queries)` per eps value, by decreasing eps.
pub fn median_queries_by_eps(records: &[ExperimentRecord]) -> Vec<(f64, f64)> {
    let mut eps: Vec<f64> = records.iter().map(|r| r.eps).collect();
    eps.sort_by(|a, b| b.total_cmp(a));
    eps.dedup();
    eps.into_iter()
        .map(|e| {
            let q: Vec<usize> = records.iter().filter(|r| r.eps == e).map(|r| r.distinct_queries).collect();
            (e, median(&q).expect("eps value came from a record"))
        })
        .collect()
}
