//! Data generators for the simulation experiments and the benchmark
//! harness: Gaussian data with AR(1)-structured covariance, and correlated
//! exponential data via a Gaussian copula.

use nalgebra::DMatrix;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{default_names, DataMatrix};
use crate::rng::Seed;

/// The generator families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SimFamily {
    /// N_p(mu, Sigma) with sigma_ij = rho^|i-j|.
    GaussianAr,
    /// Exponential marginals coupled by the Gaussian copula of the same
    /// AR(1) covariance.
    ExponentialCopula,
    /// The benchmark generator: N_p(0, Sigma) with rho = -0.75.
    BenchmarkGaussian,
}

/// A dataset request. Unspecified hyperparameters are drawn from the
/// hyperpriors: rho ~ U(-0.8, 0.8), mu_j ~ U(-3, 3), lambda ~ U(0.1, 10).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimSpec {
    pub family: SimFamily,
    pub n: usize,
    pub p: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    pub seed: Seed,
}

impl SimSpec {
    pub fn new(family: SimFamily, n: usize, p: usize, seed: Seed) -> Self {
        Self {
            family,
            n,
            p,
            rho: None,
            mu: None,
            lambda: None,
            seed,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidParameter(format!("n must be >= 2, got {}", self.n)));
        }
        if self.p < 1 {
            return Err(Error::InvalidParameter(format!("p must be >= 1, got {}", self.p)));
        }
        if let Some(rho) = self.rho {
            if !(rho.abs() < 1.0) {
                return Err(Error::InvalidParameter(format!("|rho| must be < 1, got {rho}")));
            }
        }
        if let Some(lambda) = self.lambda {
            if !(lambda > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "lambda must be > 0, got {lambda}"
                )));
            }
        }
        if let Some(mu) = &self.mu {
            if mu.len() != self.p {
                return Err(Error::InvalidParameter(format!(
                    "mu has {} entries for p = {}",
                    mu.len(),
                    self.p
                )));
            }
        }
        Ok(())
    }
}

/// A generated dataset plus the hyperparameters actually used (drawn or
/// given), for the simulation manifest.
#[derive(Debug, Clone)]
pub struct SimOutput {
    pub data: DataMatrix,
    pub rho: f64,
    pub mu: Vec<f64>,
    pub lambda: Option<f64>,
}

/// Runs the generator described by `spec`. Hyperparameters are drawn
/// first (rho, then mu or lambda), then the data, so a fixed spec and seed
/// reproduce the dataset bit for bit.
pub fn simulate(spec: &SimSpec) -> Result<SimOutput> {
    spec.validate()?;
    let mut rng = spec.seed.rng();
    match spec.family {
        SimFamily::GaussianAr => {
            let rho = draw_rho(spec.rho, &mut rng);
            let mu = match &spec.mu {
                Some(mu) => mu.clone(),
                None => (0..spec.p).map(|_| rng.random_range(-3.0..3.0)).collect(),
            };
            let data = gaussian_ar_data(spec.n, spec.p, &mu, rho, &mut rng)?;
            Ok(SimOutput {
                data,
                rho,
                mu,
                lambda: None,
            })
        }
        SimFamily::ExponentialCopula => {
            let rho = draw_rho(spec.rho, &mut rng);
            let lambda = match spec.lambda {
                Some(l) => l,
                None => rng.random_range(0.1..10.0),
            };
            let zeros = vec![0.0; spec.p];
            let mut data = gaussian_ar_data(spec.n, spec.p, &zeros, rho, &mut rng)?;
            for j in 0..spec.p {
                for v in data.column_mut(j) {
                    // U = Phi(Z), clamped away from 1 so the inverse
                    // exponential CDF stays finite.
                    let u = crate::stats::normal_cdf(*v).min(1.0 - 1e-16);
                    *v = -(1.0 - u).ln() / lambda;
                }
            }
            Ok(SimOutput {
                data,
                rho,
                mu: zeros,
                lambda: Some(lambda),
            })
        }
        SimFamily::BenchmarkGaussian => {
            let mu = vec![0.0; spec.p];
            let data = gaussian_ar_data(spec.n, spec.p, &mu, -0.75, &mut rng)?;
            Ok(SimOutput {
                data,
                rho: -0.75,
                mu,
                lambda: None,
            })
        }
    }
}

/// The benchmark dataset of the timing experiments: N_p(0, Sigma) with
/// sigma_ij = (-0.75)^|i-j|.
pub fn simulate_benchmark(n: usize, p: usize, seed: Seed) -> Result<DataMatrix> {
    simulate(&SimSpec::new(SimFamily::BenchmarkGaussian, n, p, seed)).map(|out| out.data)
}

fn draw_rho(given: Option<f64>, rng: &mut ChaCha8Rng) -> f64 {
    match given {
        Some(rho) => rho,
        None => rng.random_range(-0.8..0.8),
    }
}

fn gaussian_ar_data(
    n: usize,
    p: usize,
    mu: &[f64],
    rho: f64,
    rng: &mut ChaCha8Rng,
) -> Result<DataMatrix> {
    let sigma = DMatrix::from_fn(p, p, |a, b| rho.powi((a as i32 - b as i32).abs()));
    let chol = sigma
        .cholesky()
        .ok_or_else(|| Error::Numeric("AR covariance is not positive definite".into()))?;
    let l = chol.l();

    let mut values = vec![0.0; n * p];
    let mut z = vec![0.0; p];
    for i in 0..n {
        for zj in z.iter_mut() {
            *zj = StandardNormal.sample(rng);
        }
        for j in 0..p {
            let mut x = mu[j];
            for (t, &zt) in z.iter().enumerate().take(j + 1) {
                x += l[(j, t)] * zt;
            }
            values[j * n + i] = x;
        }
    }
    DataMatrix::new(values, n, p, default_names(p))
}

/// Named experiment presets: (family, n, p, dataset count).
pub fn preset(name: &str) -> Option<(SimFamily, usize, usize, usize)> {
    match name {
        "gaussian-sim" => Some((SimFamily::GaussianAr, 500, 10, 30)),
        "exponential-sim" => Some((SimFamily::ExponentialCopula, 500, 10, 30)),
        _ => None,
    }
}
