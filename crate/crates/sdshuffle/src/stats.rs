//! Small statistical helpers shared by the metrics and simulators.

/// Arithmetic mean.
pub fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Unbiased sample variance (n - 1 denominator).
pub fn sample_var(values: &[f64]) -> f64 {
    let m = mean(values);
    values.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (values.len() - 1) as f64
}

/// Unbiased sample standard deviation.
pub fn sample_std(values: &[f64]) -> f64 {
    sample_var(values).sqrt()
}

/// Unbiased sample covariance of two equal-length columns.
pub fn sample_cov(a: &[f64], b: &[f64]) -> f64 {
    let ma = mean(a);
    let mb = mean(b);
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - ma) * (y - mb))
        .sum::<f64>()
        / (a.len() - 1) as f64
}

/// Pearson correlation; 0 when either column is constant.
pub fn pearson(a: &[f64], b: &[f64]) -> f64 {
    let sa = sample_std(a);
    let sb = sample_std(b);
    if sa == 0.0 || sb == 0.0 {
        return 0.0;
    }
    sample_cov(a, b) / (sa * sb)
}

/// Linear-interpolation sample quantile (the common "type 7" estimator)
/// on an already sorted slice.
pub fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    let n = sorted.len();
    let h = (n - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(n - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Standard normal cumulative distribution function.
pub fn normal_cdf(z: f64) -> f64 {
    0.5 * statrs::function::erf::erfc(-z / std::f64::consts::SQRT_2)
}

/// Silverman's rule-of-thumb bandwidth for a Gaussian kernel on `sorted`
/// data: 0.9 * min(sd, IQR/1.34) * n^(-1/5).
pub fn silverman_bandwidth(sorted: &[f64]) -> f64 {
    let sd = sample_std(sorted);
    let iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
    let spread = if iqr > 0.0 { sd.min(iqr / 1.34) } else { sd };
    0.9 * spread * (sorted.len() as f64).powf(-0.2)
}

/// Gaussian kernel density estimate at `x`.
pub fn gaussian_kde_at(x: f64, data: &[f64], bandwidth: f64) -> f64 {
    let norm = 1.0 / ((2.0 * std::f64::consts::PI).sqrt() * bandwidth * data.len() as f64);
    data.iter()
        .map(|&d| {
            let u = (x - d) / bandwidth;
            (-0.5 * u * u).exp()
        })
        .sum::<f64>()
        * norm
}

/// Sorts a copy of `values` ascending (values must be finite).
pub fn sorted_copy(values: &[f64]) -> Vec<f64> {
    let mut out = values.to_vec();
    out.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
    out
}
