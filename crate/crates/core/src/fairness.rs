//! Fairness objectives over the seven-piece profile and their optimizers.
//!
//! Three criteria are scored against the fair share `pi/7`: the population
//! standard deviation, the mean absolute deviation, and the size of the
//! smallest piece.

use std::f64::consts::{FRAC_PI_3, PI};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{area_profile, area_triangle, area_circular_triangle, AreaProfile, ArcLength};
use crate::search;

/// Each eater's fair share of a unit disk.
pub const FAIR_SHARE: f64 = PI / 7.0;

/// Coarse bracketing grid used by the optimizers.
pub const DEFAULT_GRID_POINTS: usize = 4096;

/// Default stopping width on `x` for golden-section refinement.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Minima within this much of the global value are ties, not locals.
const VALUE_TIE: f64 = 1e-12;

const SQRT_3: f64 = 1.732_050_807_568_877_2;

/// Population standard deviation of the seven pieces.
pub fn profile_sd(profile: &AreaProfile) -> f64 {
    let pieces = profile.pieces();
    let mean = pieces.iter().sum::<f64>() / 7.0;
    let var = pieces.iter().map(|a| (a - mean).powi(2)).sum::<f64>() / 7.0;
    var.sqrt()
}

/// Mean absolute deviation of the seven pieces about their mean.
pub fn profile_mad(profile: &AreaProfile) -> f64 {
    let pieces = profile.pieces();
    let mean = pieces.iter().sum::<f64>() / 7.0;
    pieces.iter().map(|a| (a - mean).abs()).sum::<f64>() / 7.0
}

pub fn sd(x: ArcLength) -> f64 {
    profile_sd(&area_profile(x))
}

/// The standard deviation from its expanded trigonometric form,
/// `(1/7) sqrt(21 a2^2 + 189 c^4 + 21 a3^2 - pi^2)` with `c = cos(pi/3 + x/2)`.
///
/// Radicands in `[-1e-12, 0)` are treated as zero.
pub fn sd_closed_form(x: ArcLength) -> Result<f64> {
    let x = x.get();
    let half = x / 2.0;
    let c = (FRAC_PI_3 + half).cos();
    let s = half.sin();
    let circ_tri = half - 2.0 * s * c;
    let trap = FRAC_PI_3 - half + 2.0 * s * c - SQRT_3 * c * c;
    let radicand = 21.0 * circ_tri * circ_tri + 189.0 * c.powi(4) + 21.0 * trap * trap - PI * PI;
    if radicand < -1e-12 {
        return Err(Error::NegativeRadicand(radicand));
    }
    Ok(radicand.max(0.0).sqrt() / 7.0)
}

pub fn mad(x: ArcLength) -> f64 {
    profile_mad(&area_profile(x))
}

/// The mean absolute deviation with the trapezoid term already expanded,
/// which presumes the trapezoids are at least the fair share. Check that
/// with [`trapezoid_above_fair_share`] before relying on it.
pub fn mad_expanded(x: ArcLength) -> f64 {
    let x = x.get();
    let half = x / 2.0;
    let c = (FRAC_PI_3 + half).cos();
    let s = half.sin();
    3.0 / 7.0 * (half - 2.0 * s * c - FAIR_SHARE).abs()
        + 1.0 / 7.0 * (-3.0 * SQRT_3 * c * c + FAIR_SHARE).abs()
        + 4.0 / 49.0 * PI
        - 3.0 / 14.0 * x
        + 6.0 / 7.0 * s * c
        - 3.0 * SQRT_3 / 7.0 * c * c
}

pub fn trapezoid_above_fair_share(x: ArcLength) -> bool {
    area_profile(x).circular_trapezoid >= FAIR_SHARE
}

pub fn min_piece(x: ArcLength) -> f64 {
    area_profile(x).smallest()
}

/// All three objectives at one arc length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FairnessReport {
    pub x: ArcLength,
    pub sd: f64,
    pub mad: f64,
    pub min_piece: f64,
    pub profile: AreaProfile,
}

impl FairnessReport {
    pub fn at(x: ArcLength) -> Self {
        let profile = area_profile(x);
        FairnessReport {
            x,
            sd: profile_sd(&profile),
            mad: profile_mad(&profile),
            min_piece: profile.smallest(),
            profile,
        }
    }
}

/// Reports at `grid_points` evenly spaced arc lengths covering `[0, pi/3]`.
pub fn scan(grid_points: usize) -> Result<Vec<FairnessReport>> {
    if grid_points < 2 {
        return Err(Error::InvalidParameter(format!(
            "scan needs at least 2 grid points, got {grid_points}"
        )));
    }
    let last = grid_points - 1;
    Ok((0..grid_points)
        .into_par_iter()
        .map(|i| {
            let x = if i == last {
                ArcLength::MAX
            } else {
                ArcLength::clamped(FRAC_PI_3 * i as f64 / last as f64)
            };
            FairnessReport::at(x)
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OptimumKind {
    GlobalMin,
    LocalMin,
    GlobalMax,
}

impl OptimumKind {
    pub fn as_str(self) -> &'static str {
        match self {
            OptimumKind::GlobalMin => "global_min",
            OptimumKind::LocalMin => "local_min",
            OptimumKind::GlobalMax => "global_max",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Optimum {
    pub x_star: ArcLength,
    pub objective_value: f64,
    pub kind: OptimumKind,
    pub at_boundary: bool,
}

impl Optimum {
    pub fn profile(&self) -> AreaProfile {
        area_profile(self.x_star)
    }
}

/// Global and strictly worse local minima of the mean absolute deviation.
#[derive(Debug, Clone, PartialEq)]
pub struct MadOptima {
    pub global: Optimum,
    pub locals: Vec<Optimum>,
}

/// Grid resolution and stopping width shared by the optimizers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Optimizer {
    pub grid_points: usize,
    pub tol: f64,
}

impl Default for Optimizer {
    fn default() -> Self {
        Optimizer {
            grid_points: DEFAULT_GRID_POINTS,
            tol: DEFAULT_TOL,
        }
    }
}

impl Optimizer {
    pub fn with_tol(tol: f64) -> Result<Self> {
        let opt = Optimizer {
            tol,
            ..Optimizer::default()
        };
        opt.validate()?;
        Ok(opt)
    }

    fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "tolerance must be positive, got {}",
                self.tol
            )));
        }
        if self.grid_points < 3 {
            return Err(Error::InvalidParameter(format!(
                "optimizer grid needs at least 3 points, got {}",
                self.grid_points
            )));
        }
        Ok(())
    }

    fn minima(&self, f: impl Fn(ArcLength) -> f64) -> Result<Vec<search::Candidate>> {
        self.validate()?;
        let found = search::local_minima(
            |x| f(ArcLength::clamped(x)),
            0.0,
            FRAC_PI_3,
            self.grid_points,
            self.tol,
        );
        if found.is_empty() {
            return Err(Error::Consistency("no minimum bracketed".into()));
        }
        Ok(found)
    }

    pub fn minimize_sd(&self) -> Result<Optimum> {
        let found = self.minima(sd)?;
        let best = &found[search::global_index(&found, VALUE_TIE).unwrap_or(0)];
        Ok(Optimum {
            x_star: ArcLength::clamped(best.x),
            objective_value: best.value,
            kind: OptimumKind::GlobalMin,
            at_boundary: best.at_boundary,
        })
    }

    pub fn minimize_mad(&self) -> Result<MadOptima> {
        let found = self.minima(mad)?;
        let g = search::global_index(&found, VALUE_TIE).unwrap_or(0);
        let to_optimum = |c: &search::Candidate, kind| Optimum {
            x_star: ArcLength::clamped(c.x),
            objective_value: c.value,
            kind,
            at_boundary: c.at_boundary,
        };
        let global = to_optimum(&found[g], OptimumKind::GlobalMin);
        let locals = found
            .iter()
            .enumerate()
            .filter(|&(i, c)| i != g && c.value > global.objective_value + VALUE_TIE)
            .map(|(_, c)| to_optimum(c, OptimumKind::LocalMin))
            .collect();
        Ok(MadOptima { global, locals })
    }

    /// Maximises the smallest piece, then confirms the answer sits on the
    /// crossing of the triangle and circular-triangle areas.
    pub fn maximize_min_piece(&self) -> Result<Optimum> {
        let found = self.minima(|x| -min_piece(x))?;
        let best = &found[search::global_index(&found, VALUE_TIE).unwrap_or(0)];
        let x_star = ArcLength::clamped(best.x);

        let gap = |x: f64| {
            let x = ArcLength::clamped(x);
            area_triangle(x) - area_circular_triangle(x)
        };
        let crossing = search::bisect(gap, 0.0, FRAC_PI_3, 0.0)
            .ok_or_else(|| Error::Consistency("triangle and circular triangle never cross".into()))?;
        if (crossing - x_star.get()).abs() > self.tol {
            return Err(Error::Consistency(format!(
                "maximin point {} is not the area crossing {}",
                x_star.get(),
                crossing
            )));
        }

        Ok(Optimum {
            x_star,
            objective_value: -best.value,
            kind: OptimumKind::GlobalMax,
            at_boundary: best.at_boundary,
        })
    }
}

pub fn minimize_sd(tol: f64) -> Result<Optimum> {
    Optimizer::with_tol(tol)?.minimize_sd()
}

pub fn minimize_mad(tol: f64) -> Result<MadOptima> {
    Optimizer::with_tol(tol)?.minimize_mad()
}

pub fn maximize_min_piece(tol: f64) -> Result<Optimum> {
    Optimizer::with_tol(tol)?.maximize_min_piece()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn arc(x: f64) -> ArcLength {
        ArcLength::new(x).unwrap()
    }

    #[test]
    fn sd_known_values() {
        assert_abs_diff_eq!(sd(ArcLength::MAX), PI / 294f64.sqrt(), epsilon = 1e-15);
        // seven-value population SD of {3 sqrt3/4, 0 x3, (pi/3 - sqrt3/4) x3}
        let t = 3.0 * SQRT_3 / 4.0;
        let z = FRAC_PI_3 - SQRT_3 / 4.0;
        let m = PI / 7.0;
        let by_hand = (((t - m).powi(2) + 3.0 * m * m + 3.0 * (z - m).powi(2)) / 7.0).sqrt();
        assert_abs_diff_eq!(sd(ArcLength::MIN), by_hand, epsilon = 1e-15);
        assert_abs_diff_eq!(sd(ArcLength::MIN), 0.448_684_681, epsilon = 1e-9);
    }

    #[test]
    fn equal_profile_has_no_spread() {
        let equal = AreaProfile {
            triangle: FAIR_SHARE,
            circular_triangle: FAIR_SHARE,
            circular_trapezoid: FAIR_SHARE,
        };
        assert!(profile_sd(&equal) < 1e-16);
        assert!(profile_mad(&equal) < 1e-16);
    }

    #[test]
    fn closed_form_matches_direct() {
        assert_abs_diff_eq!(sd_closed_form(ArcLength::MAX).unwrap(), PI / 294f64.sqrt(), epsilon = 1e-12);
        for x in [0.0, 0.5, 0.96976, 1.0] {
            assert_abs_diff_eq!(sd_closed_form(arc(x)).unwrap(), sd(arc(x)), epsilon = 1e-10);
        }
    }

    #[test]
    fn mad_known_values() {
        assert_abs_diff_eq!(mad(ArcLength::MAX), 2.0 * PI / 49.0, epsilon = 1e-15);
        let m = FAIR_SHARE;
        let quoted_profile = (0.00779 - m).abs() + 3.0 * (0.44880 - m).abs() + 3.0 * (0.59581 - m).abs();
        assert_abs_diff_eq!(mad(arc(0.96976)), quoted_profile / 7.0, epsilon = 5e-5);
    }

    #[test]
    fn mad_expanded_agrees_where_trapezoid_is_large() {
        for i in 0..=300 {
            let x = arc(FRAC_PI_3 * i as f64 / 300.0);
            assert!(trapezoid_above_fair_share(x));
            assert_abs_diff_eq!(mad_expanded(x), mad(x), epsilon = 1e-12);
        }
    }

    #[test]
    fn min_piece_values() {
        assert_eq!(min_piece(ArcLength::MAX), 0.0);
        assert_eq!(min_piece(ArcLength::MIN), 0.0);
        assert_abs_diff_eq!(min_piece(arc(0.652)), 0.2003, epsilon = 1e-3);
    }

    #[test]
    fn scan_shape() {
        let two = scan(2).unwrap();
        assert_eq!(two[0].x, ArcLength::MIN);
        assert_eq!(two[1].x, ArcLength::MAX);
        assert!(scan(1).is_err());
        let rows = scan(1000).unwrap();
        assert!(rows.windows(2).all(|w| w[1].sd < w[0].sd));
        assert!(rows.iter().all(|r| (r.profile.total() - PI).abs() < 1e-12));
    }

    #[test]
    fn sd_minimum_is_right_endpoint() {
        for tol in [1e-8, 1e-3] {
            let opt = minimize_sd(tol).unwrap();
            assert_eq!(opt.x_star, ArcLength::MAX);
            assert!(opt.at_boundary);
            assert_eq!(opt.kind, OptimumKind::GlobalMin);
            assert_abs_diff_eq!(opt.objective_value, PI / 294f64.sqrt(), epsilon = 1e-12);
        }
    }

    #[test]
    fn mad_optima() {
        let MadOptima { global, locals } = minimize_mad(1e-10).unwrap();
        assert_abs_diff_eq!(global.x_star.get(), 0.96976, epsilon = 1e-3);
        assert!(!global.at_boundary);
        assert_eq!(locals.len(), 1);
        assert_abs_diff_eq!(locals[0].x_star.get(), 0.45061, epsilon = 1e-3);
        assert_eq!(locals[0].kind, OptimumKind::LocalMin);
        assert!(global.objective_value < locals[0].objective_value);
    }

    #[test]
    fn maximin_is_the_crossing() {
        let opt = maximize_min_piece(1e-10).unwrap();
        let p = opt.profile();
        assert_eq!(opt.kind, OptimumKind::GlobalMax);
        assert!((p.triangle - p.circular_triangle).abs() < 1e-9);
        assert_abs_diff_eq!(opt.x_star.get(), 0.652_000_5, epsilon = 1e-6);
        assert_abs_diff_eq!(opt.objective_value, 0.2, epsilon = 0.01);
        assert_abs_diff_eq!(p.circular_trapezoid, 0.78, epsilon = 0.01);
    }

    #[test]
    fn bad_tolerances_rejected() {
        assert!(minimize_sd(0.0).is_err());
        assert!(minimize_mad(-1.0).is_err());
        assert!(maximize_min_piece(f64::NAN).is_err());
        let coarse = Optimizer {
            grid_points: 2,
            tol: 1e-6,
        };
        assert!(coarse.minimize_sd().is_err());
    }
}
