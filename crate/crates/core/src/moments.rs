//! Moments of the random region count.
//!
//! Each of `n` maximal cuts succeeds independently with probability `p`, so
//! the number of successful cuts is `X ~ Bin(n, p)` and the number of pieces
//! of a `d`-dimensional body is `R = sum_{i=0}^{d} C(X, i)`. Because the
//! `r`-th factorial moment of `X` is `n (n-1) ... (n-r+1) p^r`, the mean is
//! `sum_{i=0}^{d} C(n, i) p^i`.
//!
//! Variances come from three routes: the exact polynomials in `n` and `p`
//! for `d = 2, 3`, their leading-order asymptotics, and direct summation
//! over the binomial pmf for any `d`.

use crate::error::{Error, Result};
use crate::geometry::max_regions;

/// Largest `n` accepted by [`variance_exact`].
pub const DEFAULT_ENUMERATION_BOUND: u64 = 1000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutModel {
    n: u64,
    p: f64,
    d: u32,
}

impl CutModel {
    pub fn new(n: u64, p: f64, d: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("need at least one cut".into()));
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!("p = {p} is not a probability")));
        }
        if d == 0 {
            return Err(Error::InvalidParameter("dimension must be at least 1".into()));
        }
        Ok(CutModel { n, p, d })
    }

    /// The planar model.
    pub fn planar(n: u64, p: f64) -> Result<Self> {
        CutModel::new(n, p, 2)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn d(&self) -> u32 {
        self.d
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentMethod {
    ExactEnumeration,
    ClosedForm,
    Asymptotic,
    MonteCarlo,
}

impl MomentMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            MomentMethod::ExactEnumeration => "exact_enumeration",
            MomentMethod::ClosedForm => "closed_form",
            MomentMethod::Asymptotic => "asymptotic",
            MomentMethod::MonteCarlo => "monte_carlo",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionMoments {
    pub mean: f64,
    pub variance: f64,
    /// `None` when the method only yields the variance.
    pub second_moment: Option<f64>,
    pub method: MomentMethod,
    pub d: u32,
}

/// Regions produced by `successes` maximal cuts in dimension `d`.
pub fn region_count(successes: u64, d: u32) -> Result<u64> {
    max_regions(successes, d)
}

/// `E(R) = sum_{i=0}^{d} C(n, i) p^i`.
pub fn expected_regions(model: &CutModel) -> f64 {
    let n = model.n as f64;
    let mut binom = 1.0;
    let mut power = 1.0;
    let mut total = 1.0;
    for i in 1..=u64::from(model.d).min(model.n) {
        // integral at every step, so exact while below 2^53
        binom = binom * (n - (i - 1) as f64) / i as f64;
        power *= model.p;
        total += binom * power;
    }
    total
}

// Coefficients of p^0, p^1, ... scaled by a common denominator. For moderate
// n every coefficient is an integer below 2^53, so p = 0 and p = 1 evaluate
// exactly.
fn eval_scaled(coeffs: &[f64], denom: f64, p: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * p + c) / denom
}

/// `E(R^2)` for the planar model:
/// `1 + 3np + 9/2 n(n-1)p^2 + 2n(n-1)(n-2)p^3 + 1/4 n(n-1)(n-2)(n-3)p^4`.
pub fn second_moment_2d(model: &CutModel) -> Result<f64> {
    if model.d != 2 {
        return Err(Error::UnsupportedDimension(model.d));
    }
    let n = model.n as f64;
    let coeffs = [
        4.0,
        12.0 * n,
        18.0 * n * (n - 1.0),
        8.0 * n * (n - 1.0) * (n - 2.0),
        n * (n - 1.0) * (n - 2.0) * (n - 3.0),
    ];
    Ok(eval_scaled(&coeffs, 4.0, model.p))
}

/// Exact variance polynomial for `d = 2` or `d = 3`.
pub fn variance_closed_form(model: &CutModel) -> Result<f64> {
    let n = model.n as f64;
    let raw = match model.d {
        2 => {
            let coeffs = [
                0.0,
                2.0 * n,
                n * (5.0 * n - 7.0),
                2.0 * n * (n - 1.0) * (n - 4.0),
                -n * (n - 1.0) * (2.0 * n - 3.0),
            ];
            eval_scaled(&coeffs, 2.0, model.p)
        }
        3 => {
            let coeffs = [
                0.0,
                12.0 * n,
                6.0 * n * (5.0 * n - 7.0),
                2.0 * n * (n - 1.0) * (19.0 * n - 50.0),
                6.0 * n * (n - 1.0) * (3.0 * n * n - 19.0 * n + 25.0),
                3.0 * n * (n - 1.0) * (n - 2.0) * (n * n - 11.0 * n + 20.0),
                -n * (n - 1.0) * (n - 2.0) * (3.0 * n * n - 15.0 * n + 20.0),
            ];
            eval_scaled(&coeffs, 12.0, model.p)
        }
        d => return Err(Error::UnsupportedDimension(d)),
    };
    guard_variance(raw, expected_regions(model))
}

/// Leading term of the variance as `np` grows: `n^3 p^3 (1-p)` in the
/// plane, `n^5 p^5 (1-p) / 4` in space.
pub fn variance_asymptotic(model: &CutModel) -> Result<f64> {
    let np = model.n as f64 * model.p;
    let q = 1.0 - model.p;
    match model.d {
        2 => Ok(np.powi(3) * q),
        3 => Ok(0.25 * np.powi(5) * q),
        d => Err(Error::UnsupportedDimension(d)),
    }
}

// Rounding can leave a variance of zero slightly negative.
fn guard_variance(raw: f64, mean: f64) -> Result<f64> {
    if raw >= 0.0 {
        Ok(raw)
    } else if raw >= -1e-9 * mean * mean {
        Ok(0.0)
    } else {
        Err(Error::NegativeVariance(raw))
    }
}

/// The `Bin(n, p)` pmf for `k = 0..=n`.
///
/// Log-weights are accumulated outward from the mode with the ratio
/// `pmf(k+1)/pmf(k) = (n-k)/(k+1) * p/q` and normalised at the end, which
/// stays finite for large `n` where factorials and powers would not.
pub fn binomial_pmf(n: u64, p: f64) -> Vec<f64> {
    let len = n as usize + 1;
    let mut pmf = vec![0.0; len];
    if p <= 0.0 {
        pmf[0] = 1.0;
        return pmf;
    }
    if p >= 1.0 {
        pmf[len - 1] = 1.0;
        return pmf;
    }
    let odds = (p / (1.0 - p)).ln();
    let mode = (((n + 1) as f64 * p).floor() as usize).min(len - 1);

    let mut log_w = vec![0.0; len];
    for k in mode..len - 1 {
        log_w[k + 1] = log_w[k] + ((n as usize - k) as f64 / (k + 1) as f64).ln() + odds;
    }
    for k in (1..=mode).rev() {
        log_w[k - 1] = log_w[k] - ((n as usize - k + 1) as f64 / k as f64).ln() - odds;
    }

    let mut total = 0.0;
    for (w, lw) in pmf.iter_mut().zip(&log_w) {
        *w = lw.exp();
        total += *w;
    }
    pmf.iter_mut().for_each(|w| *w /= total);
    pmf
}

/// Mean, variance and second moment by summing over the binomial pmf.
pub fn exact_moments(model: &CutModel, bound: u64) -> Result<RegionMoments> {
    if model.n > bound {
        return Err(Error::EnumerationBound { n: model.n, bound });
    }
    let pmf = binomial_pmf(model.n, model.p);
    let counts = (0..=model.n)
        .map(|x| region_count(x, model.d).map(|r| r as f64))
        .collect::<Result<Vec<f64>>>()?;

    let mean: f64 = pmf.iter().zip(&counts).map(|(w, r)| w * r).sum();
    let variance: f64 = pmf
        .iter()
        .zip(&counts)
        .map(|(w, r)| w * (r - mean) * (r - mean))
        .sum();
    Ok(RegionMoments {
        mean,
        variance,
        second_moment: Some(variance + mean * mean),
        method: MomentMethod::ExactEnumeration,
        d: model.d,
    })
}

/// Variance by direct enumeration, for `n` up to [`DEFAULT_ENUMERATION_BOUND`].
pub fn variance_exact(model: &CutModel) -> Result<f64> {
    exact_moments(model, DEFAULT_ENUMERATION_BOUND).map(|m| m.variance)
}

pub fn closed_form_moments(model: &CutModel) -> Result<RegionMoments> {
    let mean = expected_regions(model);
    let variance = variance_closed_form(model)?;
    let second_moment = match model.d {
        2 => second_moment_2d(model)?,
        _ => variance + mean * mean,
    };
    Ok(RegionMoments {
        mean,
        variance,
        second_moment: Some(second_moment),
        method: MomentMethod::ClosedForm,
        d: model.d,
    })
}

pub fn asymptotic_moments(model: &CutModel) -> Result<RegionMoments> {
    Ok(RegionMoments {
        mean: expected_regions(model),
        variance: variance_asymptotic(model)?,
        second_moment: None,
        method: MomentMethod::Asymptotic,
        d: model.d,
    })
}

/// Enumeration when `n` is small enough, otherwise the exact polynomial.
pub fn best_variance(model: &CutModel) -> Result<f64> {
    if model.n <= DEFAULT_ENUMERATION_BOUND {
        variance_exact(model)
    } else {
        variance_closed_form(model).map_err(|e| match e {
            Error::UnsupportedDimension(_) => Error::EnumerationBound {
                n: model.n,
                bound: DEFAULT_ENUMERATION_BOUND,
            },
            e => e,
        })
    }
}

/// Chebyshev bound on `P(|R - E(R)| >= lambda)`, capped at 1.
pub fn chebyshev_tail(model: &CutModel, lambda: f64) -> Result<f64> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidParameter(format!("lambda = {lambda} must be positive")));
    }
    Ok((best_variance(model)? / (lambda * lambda)).min(1.0))
}

/// Centre and scale of the interval that holds `R` with high probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConcentrationWindow {
    pub center: f64,
    pub scale: f64,
}

/// `(E(R), sqrt(V(R)))` for the planar model.
///
/// For `p = 1/2` the centre grows like `n^2/8` and the scale like `n^{3/2}`;
/// for `p = n^{-1/2}` like `n/2` and `n^{3/4}`; for `p = 1 - n^{-1/2}` like
/// `n^2/2` and `n^{5/4}`.
pub fn concentration_window(model: &CutModel) -> Result<ConcentrationWindow> {
    if model.d != 2 {
        return Err(Error::UnsupportedDimension(model.d));
    }
    Ok(ConcentrationWindow {
        center: expected_regions(model),
        scale: best_variance(model)?.sqrt(),
    })
}
