//! Region areas of the symmetric three-chord family, and region counting for
//! arbitrary maximal chord arrangements.
//!
//! The symmetric family is parametrised by the arc length `x` between the
//! endpoints of two neighbouring chords. The three chords bound a central
//! equilateral triangle concentric with the disk, three congruent "circular
//! triangles" and three congruent "circular trapezoids".

use std::f64::consts::{FRAC_PI_3, FRAC_PI_6, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

const SQRT_3: f64 = 1.732_050_807_568_877_2;

/// Arc length of the free parameter, in radians of the unit circle.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ArcLength(f64);

impl ArcLength {
    pub const MIN: ArcLength = ArcLength(0.0);
    pub const MAX: ArcLength = ArcLength(FRAC_PI_3);

    /// Rejects values outside `[0, pi/3]`; nothing is clamped.
    pub fn new(x: f64) -> Result<Self> {
        if (0.0..=FRAC_PI_3).contains(&x) {
            Ok(ArcLength(x))
        } else {
            Err(Error::Domain(x))
        }
    }

    pub(crate) fn clamped(x: f64) -> Self {
        ArcLength(x.clamp(0.0, FRAC_PI_3))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for ArcLength {
    type Error = Error;

    fn try_from(x: f64) -> Result<Self> {
        ArcLength::new(x)
    }
}

// (sin(x/2), sin(pi/6 - x/2))
fn half_angle_sines(x: ArcLength) -> (f64, f64) {
    let half = x.0 / 2.0;
    (half.sin(), (FRAC_PI_6 - half).sin())
}

/// Area of the central equilateral triangle, `3 sqrt(3) sin^2(pi/6 - x/2)`.
pub fn area_triangle(x: ArcLength) -> f64 {
    let (_, s) = half_angle_sines(x);
    3.0 * SQRT_3 * s * s
}

/// Area of one circular triangle: the sector `x/2` minus two copies of the
/// triangle between the centre, a chord crossing and a chord endpoint.
pub fn area_circular_triangle(x: ArcLength) -> f64 {
    let (h, s) = half_angle_sines(x);
    x.0 / 2.0 - 2.0 * h * s
}

pub fn area_circular_trapezoid(x: ArcLength) -> f64 {
    let (h, s) = half_angle_sines(x);
    FRAC_PI_3 - x.0 / 2.0 + 2.0 * h * s - SQRT_3 * s * s
}

/// The seven piece areas grouped by symmetry class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AreaProfile {
    pub triangle: f64,
    pub circular_triangle: f64,
    pub circular_trapezoid: f64,
}

impl AreaProfile {
    /// Number of pieces in each class: triangle, circular triangle, trapezoid.
    pub const MULTIPLICITIES: [usize; 3] = [1, 3, 3];

    pub fn classes(&self) -> [f64; 3] {
        [self.triangle, self.circular_triangle, self.circular_trapezoid]
    }

    /// All seven areas, triangle first.
    pub fn pieces(&self) -> [f64; 7] {
        let [t, c, z] = self.classes();
        [t, c, c, c, z, z, z]
    }

    pub fn total(&self) -> f64 {
        self.triangle + 3.0 * self.circular_triangle + 3.0 * self.circular_trapezoid
    }

    pub fn smallest(&self) -> f64 {
        self.triangle
            .min(self.circular_triangle)
            .min(self.circular_trapezoid)
    }
}

pub fn area_profile(x: ArcLength) -> AreaProfile {
    AreaProfile {
        triangle: area_triangle(x),
        circular_triangle: area_circular_triangle(x),
        circular_trapezoid: area_circular_trapezoid(x),
    }
}

/// Maximum number of regions `n` hyperplanes cut from `d`-space:
/// `sum_{i=0}^{d} C(n, i)`, in checked integer arithmetic.
pub fn max_regions(n: u64, d: u32) -> Result<u64> {
    if d == 0 {
        return Err(Error::InvalidParameter("dimension must be at least 1".into()));
    }
    let mut total: u64 = 1;
    let mut binom: u128 = 1;
    for i in 1..=u64::from(d).min(n) {
        // C(n, i) = C(n, i-1) * (n - i + 1) / i, exact at every step
        binom = binom
            .checked_mul(u128::from(n - i + 1))
            .ok_or(Error::Overflow("binomial coefficient"))?
            / u128::from(i);
        let term = u64::try_from(binom).map_err(|_| Error::Overflow("binomial coefficient"))?;
        total = total.checked_add(term).ok_or(Error::Overflow("region count"))?;
    }
    Ok(total)
}

/// Minimum distance of a chord crossing from the circle and from any other
/// crossing.
pub const GENERAL_POSITION_TOL: f64 = 1e-9;

/// A line `normal . p = offset` with a unit normal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Chord {
    normal: [f64; 2],
    offset: f64,
}

impl Chord {
    /// Line whose normal makes angle `theta` with the x axis.
    pub fn from_angle(theta: f64, offset: f64) -> Self {
        Chord {
            normal: [theta.cos(), theta.sin()],
            offset,
        }
    }

    pub fn normal(&self) -> [f64; 2] {
        self.normal
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// The two points where the line meets the unit circle.
    pub fn endpoints(&self) -> Option<[[f64; 2]; 2]> {
        let rem = 1.0 - self.offset * self.offset;
        if rem <= 0.0 {
            return None;
        }
        let half = rem.sqrt();
        let [nx, ny] = self.normal;
        let foot = [nx * self.offset, ny * self.offset];
        let dir = [-ny, nx];
        Some([
            [foot[0] + half * dir[0], foot[1] + half * dir[1]],
            [foot[0] - half * dir[0], foot[1] - half * dir[1]],
        ])
    }

    /// Crossing point with another line, `None` when (nearly) parallel.
    pub fn intersection(&self, other: &Chord) -> Option<[f64; 2]> {
        let [a, b] = self.normal;
        let [c, d] = other.normal;
        let det = a * d - b * c;
        if det.abs() < 1e-12 {
            return None;
        }
        Some([
            (self.offset * d - b * other.offset) / det,
            (a * other.offset - self.offset * c) / det,
        ])
    }
}

/// Chords of the unit disk in maximal general position: every pair crosses
/// strictly inside the disk, no two crossings coincide and no crossing sits
/// on the circle.
#[derive(Debug, Clone, PartialEq)]
pub struct ChordSet {
    chords: Vec<Chord>,
}

impl ChordSet {
    pub fn new(chords: Vec<Chord>) -> Result<Self> {
        for (index, chord) in chords.iter().enumerate() {
            let norm = chord.normal[0].hypot(chord.normal[1]);
            if (norm - 1.0).abs() > 1e-12 || !chord.offset.is_finite() {
                return Err(Error::Degenerate(format!("chord {index} has a non-unit normal")));
            }
            if chord.offset.abs() >= 1.0 - GENERAL_POSITION_TOL {
                return Err(Error::InvalidChord {
                    index,
                    offset: chord.offset,
                });
            }
        }

        let mut crossings: Vec<[f64; 2]> = Vec::new();
        for i in 0..chords.len() {
            for j in i + 1..chords.len() {
                let point = chords[i].intersection(&chords[j]).ok_or_else(|| {
                    Error::Degenerate(format!("chords {i} and {j} are parallel"))
                })?;
                let radius = point[0].hypot(point[1]);
                if (radius - 1.0).abs() < GENERAL_POSITION_TOL {
                    return Err(Error::Degenerate(format!(
                        "chords {i} and {j} cross on the circle"
                    )));
                }
                if radius > 1.0 {
                    return Err(Error::ExteriorIntersection(i, j));
                }
                if crossings
                    .iter()
                    .any(|q| (q[0] - point[0]).hypot(q[1] - point[1]) < GENERAL_POSITION_TOL)
                {
                    return Err(Error::Degenerate(format!(
                        "chords {i} and {j} cross at an existing crossing"
                    )));
                }
                crossings.push(point);
            }
        }
        Ok(ChordSet { chords })
    }

    pub fn chords(&self) -> &[Chord] {
        &self.chords
    }

    pub fn len(&self) -> usize {
        self.chords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chords.is_empty()
    }
}

/// Counts the pieces of the disk with Euler's formula `V - E + F = 2` on the
/// subdivision formed by the chords and the circle.
///
/// Vertices are the interior crossings plus the chord endpoints on the
/// circle; edges are the chord pieces between consecutive vertices plus the
/// circle arcs between consecutive endpoints. The outer face is discarded.
pub fn count_regions_geometric(set: &ChordSet) -> u64 {
    let chords = set.chords();
    if chords.is_empty() {
        return 1;
    }

    let mut crossings = 0u64;
    let mut chord_edges = 0u64;
    for (i, a) in chords.iter().enumerate() {
        let on_chord = chords
            .iter()
            .enumerate()
            .filter(|&(j, b)| {
                j != i
                    && a.intersection(b)
                        .is_some_and(|q| q[0].hypot(q[1]) < 1.0 - GENERAL_POSITION_TOL)
            })
            .count() as u64;
        crossings += on_chord;
        chord_edges += on_chord + 1;
    }
    // each crossing was seen from both of its chords
    let crossings = crossings / 2;

    let mut angles: Vec<f64> = chords
        .iter()
        .filter_map(Chord::endpoints)
        .flatten()
        .map(|p| p[1].atan2(p[0]))
        .collect();
    angles.sort_by(f64::total_cmp);
    angles.dedup_by(|a, b| (*a - *b).abs() < GENERAL_POSITION_TOL);
    let boundary = angles.len() as u64;
    let arcs = boundary;

    let vertices = crossings + boundary;
    let edges = chord_edges + arcs;
    let faces = edges + 2 - vertices;
    faces - 1
}

/// Retry budget for [`random_chord_set`].
pub const CHORD_RETRY_BUDGET: usize = 1000;

/// Deterministic random maximal arrangement of `n` chords.
///
/// Each chord gets a direction uniform on `[0, pi)` and an offset uniform on
/// `[-0.2, 0.2]`; whole sets are redrawn until [`ChordSet::new`] accepts one.
pub fn random_chord_set(n: usize, seed: u64) -> Result<ChordSet> {
    if n == 0 {
        return Err(Error::InvalidParameter("need at least one chord".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..CHORD_RETRY_BUDGET {
        let chords = (0..n)
            .map(|_| {
                let theta = rng.gen_range(0.0..PI);
                let offset = rng.gen_range(-0.2..=0.2);
                Chord::from_angle(theta, offset)
            })
            .collect();
        if let Ok(set) = ChordSet::new(chords) {
            return Ok(set);
        }
    }
    Err(Error::RetriesExhausted(CHORD_RETRY_BUDGET))
}
