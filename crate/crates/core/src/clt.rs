//! Normal approximation of the planar region count.
//!
//! `R = 1 + sum_j I_j + 1/2 sum_{i != j} I_i I_j` is a sum of `n^2 + 1`
//! bounded summands over the cut indicators `I_j`. Joining two summands
//! whenever they share an indicator gives a dependency graph with maximum
//! degree below `4n`, and the Stein-method bound for such graphs is driven by
//! three terms in `N`, `D`, `B` and `sigma`. Those terms are reported raw; the
//! universal constant in front of them is unknown and never applied.
//!
//! The empirical side draws `R` exactly, standardises with the exact mean and
//! variance, and measures the Kolmogorov-Smirnov distance to `Phi`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use libm::erfc;

use crate::error::{Error, Result};
use crate::moments::{binomial_pmf, expected_regions, region_count, variance_closed_form, CutModel};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RinottTerms {
    /// `N D^2 B^3 / sigma^3`
    pub term1: f64,
    /// `(N D^3 B^4)^{1/2} / sigma^2`
    pub term2: f64,
    /// `D B / sigma`
    pub term3: f64,
    pub n_summands: u64,
    pub max_degree: u64,
    pub bound: f64,
    pub sigma: f64,
}

impl RinottTerms {
    pub fn max_term(&self) -> f64 {
        self.term1.max(self.term2).max(self.term3)
    }
}

fn open_unit(p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else if p == 0.0 || p == 1.0 {
        Err(Error::ZeroSigma(p))
    } else {
        Err(Error::InvalidParameter(format!("p = {p} is not in (0, 1)")))
    }
}

pub fn rinott_terms(n: u64, p: f64) -> Result<RinottTerms> {
    open_unit(p)?;
    if n < 2 {
        return Err(Error::InvalidParameter("need n >= 2".into()));
    }
    let n_summands = n
        .checked_mul(n)
        .and_then(|m| m.checked_add(1))
        .ok_or(Error::Overflow("summand count"))?;
    let max_degree = n.checked_mul(4).ok_or(Error::Overflow("maximum degree"))?;
    let bound = 1.0;
    let sigma = variance_closed_form(&CutModel::planar(n, p)?)?.sqrt();
    if sigma <= 0.0 {
        return Err(Error::ZeroSigma(p));
    }

    let big_n = n_summands as f64;
    let big_d = max_degree as f64;
    Ok(RinottTerms {
        term1: big_n * big_d.powi(2) * bound * bound * bound / sigma.powi(3),
        term2: (big_n * big_d.powi(3) * bound.powi(4)).sqrt() / sigma.powi(2),
        term3: big_d * bound / sigma,
        n_summands,
        max_degree,
        bound,
        sigma,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdCheck {
    /// `p (1-p)^{1/3} n^{1/9}`; the normal regime needs this to grow.
    pub margin: f64,
    pub in_regime: bool,
}

pub fn threshold_check(n: u64, p: f64) -> Result<ThresholdCheck> {
    open_unit(p)?;
    if n == 0 {
        return Err(Error::InvalidParameter("need at least one cut".into()));
    }
    let margin = p * (1.0 - p).cbrt() * (n as f64).powf(1.0 / 9.0);
    Ok(ThresholdCheck {
        margin,
        in_regime: margin > 1.0,
    })
}

/// `m` independent draws of the planar region count.
///
/// The binomial is sampled by inverting its exact cdf. Draw `i` uses its own
/// ChaCha8 stream `i` under `seed`, so the output does not depend on how the
/// indices are split across threads.
pub fn sample_region_counts(n: u64, p: f64, m: usize, seed: u64) -> Result<Vec<u64>> {
    CutModel::planar(n, p)?;
    if m == 0 {
        return Err(Error::InvalidParameter("need at least one sample".into()));
    }
    let counts = (0..=n)
        .map(|x| region_count(x, 2))
        .collect::<Result<Vec<u64>>>()?;

    let mut cdf = binomial_pmf(n, p);
    let mut acc = 0.0;
    for w in cdf.iter_mut() {
        acc += *w;
        *w = acc;
    }
    if let Some(last) = cdf.last_mut() {
        *last = 1.0;
    }

    Ok((0..m)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let u: f64 = rng.gen();
            let x = cdf.partition_point(|&c| c <= u).min(n as usize);
            counts[x]
        })
        .collect())
}

pub fn standard_normal_cdf(z: f64) -> f64 {
    0.5 * erfc(-z / std::f64::consts::SQRT_2)
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormalitySample {
    pub n: u64,
    pub p: f64,
    pub sample_count: usize,
    pub seed: Option<u64>,
    pub ks_distance: f64,
    /// Exact `E(R)` used to centre the samples.
    pub mean: f64,
    /// Exact `sqrt(V(R))` used to scale the samples.
    pub sigma: f64,
}

/// Kolmogorov-Smirnov distance between the standardised samples and `Phi`.
///
/// The empirical cdf only jumps at sample values, so the supremum is the
/// larger one-sided gap at one of those jumps.
pub fn ks_distance(samples: &[u64], n: u64, p: f64) -> Result<NormalitySample> {
    if samples.is_empty() {
        return Err(Error::InvalidParameter("no samples".into()));
    }
    open_unit(p)?;
    let model = CutModel::planar(n, p)?;
    let mean = expected_regions(&model);
    let sigma = variance_closed_form(&model)?.sqrt();
    if sigma <= 0.0 {
        return Err(Error::ZeroSigma(p));
    }

    let mut sorted = samples.to_vec();
    sorted.sort_unstable();
    let total = sorted.len() as f64;
    let mut distance: f64 = 0.0;
    let mut below = 0usize;
    for group in sorted.chunk_by(|a, b| a == b) {
        let phi = standard_normal_cdf((group[0] as f64 - mean) / sigma);
        let through = below + group.len();
        distance = distance
            .max((phi - below as f64 / total).abs())
            .max((through as f64 / total - phi).abs());
        below = through;
    }

    Ok(NormalitySample {
        n,
        p,
        sample_count: samples.len(),
        seed: None,
        ks_distance: distance,
        mean,
        sigma,
    })
}

/// Samples `m` region counts and measures their distance from normality.
pub fn normality_check(n: u64, p: f64, m: usize, seed: u64) -> Result<NormalitySample> {
    let samples = sample_region_counts(n, p, m, seed)?;
    let mut report = ks_distance(&samples, n, p)?;
    report.seed = Some(seed);
    Ok(report)
}
