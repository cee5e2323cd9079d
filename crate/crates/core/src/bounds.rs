//! Numeric kernel: the annulus angle bound `Φ_d(r, R)`, radial projection,
//! pair-angle lower bounds between weighted point classes, and single-class
//! capacity bounds.
//!
//! All angles cross this module's boundary in degrees. Radians only appear
//! inside [`phi`].

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Slack for "strictly greater than 360°". A sum counts as a contradiction
/// only when it exceeds `360 + CERT_EPSILON`.
pub const CERT_EPSILON: f64 = 1e-6;

/// Downward widening applied to every bound in paranoid mode.
pub const PARANOID_SLACK: f64 = 1e-9;

/// Relative slack used when checking that an annulus sits inside a range
/// whose endpoints are themselves computed (`1 + p`, `1 + q`).
const RANGE_TOL: f64 = 1e-12;

pub const FULL_TURN: f64 = 360.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundsError {
    #[error("phi({d}, {r}, {big_r}): {violated}")]
    PhiDomain {
        d: f64,
        r: f64,
        big_r: f64,
        violated: &'static str,
    },
    #[error("invalid annulus [{lo}, {hi}]")]
    InvalidAnnulus { lo: f64, hi: f64 },
    #[error("invalid threshold p = {0} (need finite p > 1)")]
    InvalidParams(f64),
    #[error("projection radius must exceed 1, got {0}")]
    ProjectionRadius(f64),
    #[error("{weight} class annulus [{lo}, {hi}] outside its admissible range [{min}, {max}]")]
    OutOfRange {
        weight: Weight,
        lo: f64,
        hi: f64,
        min: f64,
        max: f64,
    },
    #[error("two half-weight classes with inner radius {inner} > 1+q = {cap}: no bound available")]
    UnsupportedHalfPair { inner: f64, cap: f64 },
    #[error("pair bound is zero; capacity is unbounded")]
    ZeroBound,
}

/// An angle in degrees.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize, Default)]
#[serde(transparent)]
pub struct Degrees(pub f64);

impl Degrees {
    pub fn value(self) -> f64 {
        self.0
    }

    pub fn from_radians(rad: f64) -> Self {
        Degrees(rad.to_degrees())
    }
}

impl fmt::Display for Degrees {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.4}", self.0)
    }
}

/// True when `sum` certifiably exceeds a full turn.
pub fn exceeds_full_turn(sum: f64) -> bool {
    sum > FULL_TURN + CERT_EPSILON
}

/// The closed region `lo <= rho <= hi` around the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Annulus {
    lo: f64,
    hi: f64,
}

impl Annulus {
    pub fn new(lo: f64, hi: f64) -> Result<Self, BoundsError> {
        if !(lo.is_finite() && hi.is_finite()) || lo < 0.0 || lo > hi {
            return Err(BoundsError::InvalidAnnulus { lo, hi });
        }
        Ok(Annulus { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// Smallest annulus containing both.
    pub fn hull(&self, other: &Annulus) -> Annulus {
        Annulus {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    pub fn contains_radius(&self, rho: f64) -> bool {
        self.lo <= rho && rho <= self.hi
    }

    fn within(&self, min: f64, max: f64) -> bool {
        let tol = RANGE_TOL * max.abs().max(1.0);
        self.lo >= min - tol && self.hi <= max + tol
    }
}

impl fmt::Display for Annulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// The large-ratio threshold `p` and its reciprocal `q`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Params {
    p: f64,
    q: f64,
    #[serde(default)]
    paranoid: bool,
}

impl Params {
    pub fn new(p: f64) -> Result<Self, BoundsError> {
        if !p.is_finite() || p <= 1.0 {
            return Err(BoundsError::InvalidParams(p));
        }
        Ok(Params {
            p,
            q: 1.0 / p,
            paranoid: false,
        })
    }

    /// Widen every pair bound downward by [`PARANOID_SLACK`].
    pub fn paranoid(mut self, on: bool) -> Self {
        self.paranoid = on;
        self
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn is_paranoid(&self) -> bool {
        self.paranoid
    }

    /// Outer edge of both habitats, `1 + p`.
    pub fn outer(&self) -> f64 {
        1.0 + self.p
    }

    /// Cap applied to half/half pairs, `1 + q`.
    pub fn half_cap(&self) -> f64 {
        1.0 + self.q
    }

    /// Admissible radial range for a class of the given weight.
    pub fn habitat(&self, weight: Weight) -> Annulus {
        match weight {
            Weight::One => Annulus {
                lo: self.p,
                hi: self.outer(),
            },
            Weight::Half => Annulus {
                lo: 1.0,
                hi: self.outer(),
            },
        }
    }

    fn slack(&self) -> f64 {
        if self.paranoid {
            PARANOID_SLACK
        } else {
            0.0
        }
    }
}

/// A point in polar coordinates; `theta` is in degrees, normalized to `[0, 360)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolarPoint {
    rho: f64,
    theta: f64,
}

impl PolarPoint {
    pub fn new(rho: f64, theta: f64) -> Self {
        debug_assert!(rho >= 0.0);
        let mut t = theta.rem_euclid(FULL_TURN);
        if t >= FULL_TURN {
            t = 0.0;
        }
        PolarPoint { rho, theta: t }
    }

    pub fn from_cartesian(x: f64, y: f64) -> Self {
        PolarPoint::new(x.hypot(y), y.atan2(x).to_degrees())
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn to_cartesian(&self) -> (f64, f64) {
        let t = self.theta.to_radians();
        (self.rho * t.cos(), self.rho * t.sin())
    }

    pub fn distance(&self, other: &PolarPoint) -> f64 {
        let (ax, ay) = self.to_cartesian();
        let (bx, by) = other.to_cartesian();
        (ax - bx).hypot(ay - by)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Weight {
    One,
    Half,
}

impl Weight {
    pub fn value(self) -> f64 {
        match self {
            Weight::One => 1.0,
            Weight::Half => 0.5,
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::One => f.write_str("weight-1"),
            Weight::Half => f.write_str("weight-1/2"),
        }
    }
}

/// Lower bound on the angle `AOB` for two points of the annulus `[r, R]` at
/// mutual distance at least `d`:
///
/// `min(arccos((R² + r² − d²) / (2Rr)), 2·arcsin(d / (2R)))`.
///
/// Requires `0 <= R − d <= r <= R` and `d > 0`.
pub fn phi(d: f64, r: f64, big_r: f64) -> Result<Degrees, BoundsError> {
    let fail = |violated| BoundsError::PhiDomain {
        d,
        r,
        big_r,
        violated,
    };
    if !(d.is_finite() && r.is_finite() && big_r.is_finite()) {
        return Err(fail("non-finite argument"));
    }
    if d <= 0.0 {
        return Err(fail("d > 0"));
    }
    let tol = RANGE_TOL * big_r.abs().max(1.0);
    if big_r - d < -tol {
        return Err(fail("0 <= R - d"));
    }
    if big_r - d > r + tol {
        return Err(fail("R - d <= r"));
    }
    if r > big_r + tol {
        return Err(fail("r <= R"));
    }
    if r <= 0.0 {
        return Err(fail("r > 0"));
    }
    let cos_arg = ((big_r * big_r + r * r - d * d) / (2.0 * big_r * r)).clamp(-1.0, 1.0);
    let sin_arg = (d / (2.0 * big_r)).clamp(0.0, 1.0);
    let law_of_cosines = cos_arg.acos();
    let chord = 2.0 * sin_arg.asin();
    Ok(Degrees::from_radians(law_of_cosines.min(chord)))
}

/// Push a point lying outside the circle `rho = radius` onto that circle,
/// keeping its amplitude. Points inside stay fixed.
pub fn radial_project(x: PolarPoint, radius: f64) -> Result<PolarPoint, BoundsError> {
    if !(radius.is_finite() && radius > 1.0) {
        return Err(BoundsError::ProjectionRadius(radius));
    }
    if x.rho > radius {
        Ok(PolarPoint {
            rho: radius,
            theta: x.theta,
        })
    } else {
        Ok(x)
    }
}

fn check_habitat(weight: Weight, annulus: &Annulus, params: &Params) -> Result<(), BoundsError> {
    let hab = params.habitat(weight);
    if annulus.within(hab.lo, hab.hi) {
        Ok(())
    } else {
        Err(BoundsError::OutOfRange {
            weight,
            lo: annulus.lo,
            hi: annulus.hi,
            min: hab.lo,
            max: hab.hi,
        })
    }
}

/// Minimum angle between a point of class `a` and a point of class `b` when
/// they are consecutive in circular order.
///
/// With at least one weight-1 point the pair is `p` apart and both lie in the
/// hull of the two annuli. Two half-weight points are only `q` apart, and
/// anything beyond `1 + q` can be pulled back onto that circle without
/// changing the angle, so the outer radius is capped there.
pub fn pair_angle_bound(
    a: (Weight, Annulus),
    b: (Weight, Annulus),
    params: &Params,
) -> Result<Degrees, BoundsError> {
    check_habitat(a.0, &a.1, params)?;
    check_habitat(b.0, &b.1, params)?;
    let hull = a.1.hull(&b.1);
    let raw = if a.0 == Weight::One || b.0 == Weight::One {
        phi(params.p, hull.lo, hull.hi)?
    } else {
        let cap = params.half_cap();
        if hull.lo > cap {
            return Err(BoundsError::UnsupportedHalfPair {
                inner: hull.lo,
                cap,
            });
        }
        phi(params.q, hull.lo, hull.hi.min(cap))?
    };
    Ok(Degrees((raw.0 - params.slack()).max(0.0)))
}

/// Largest `k` such that `k` points of one class fit around the origin, i.e.
/// `k · bound` does not certifiably exceed 360°. More than `k` such points
/// are impossible.
pub fn capacity_bound(cls: (Weight, Annulus), params: &Params) -> Result<u32, BoundsError> {
    let bound = pair_angle_bound(cls, cls, params)?.0;
    if bound <= 0.0 {
        return Err(BoundsError::ZeroBound);
    }
    let mut k = ((FULL_TURN + CERT_EPSILON) / bound).floor() as u32;
    // floor() can land one off when the quotient sits on an integer
    while k > 1 && exceeds_full_turn(k as f64 * bound) {
        k -= 1;
    }
    while !exceeds_full_turn((k + 1) as f64 * bound) {
        k += 1;
    }
    Ok(k.max(1))
}
