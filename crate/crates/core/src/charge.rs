//! Central charges and slopes for the two-parameter family of numerical
//! stability conditions.
//!
//! For parameters `(b, w)` the charge of a class `(r, d, n)` is
//! `Z(v) = (-n + w*r) + i*(d - b*r)`.  Classes in the upper half plane get
//! the finite slope `-Re/Im`; classes on the real axis are either phase-one
//! objects (`Re < 0`, slope `+inf`), kernel classes (`Z = 0`), or lie
//! outside the heart cone entirely (`Im < 0`, or `Im = 0` with `Re > 0`).
//! All slope comparisons cross-multiply; nothing is ever divided inexactly
//! or rounded.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::brill_noether::PiecewiseBound;
use crate::klattice::ClassVector;
use crate::rat::Rat;

/// Errors from slope computations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChargeError {
    #[error("bundle slope needs nonnegative rank, got r = {r}")]
    NegativeRank { r: i64 },
}

/// Stability parameters `(b, w)`; admissibility is a separate predicate,
/// so any rational pair can be probed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChargeParams {
    pub b: Rat,
    pub w: Rat,
}

impl ChargeParams {
    pub fn new(b: Rat, w: Rat) -> Self {
        ChargeParams { b, w }
    }
}

/// Exact value of a central charge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChargeValue {
    pub re: Rat,
    pub im: Rat,
}

impl ChargeValue {
    pub fn new(re: Rat, im: Rat) -> Self {
        ChargeValue { re, im }
    }

    pub fn is_zero(self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl fmt::Display for ChargeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i", self.re, self.im)
    }
}

/// `Z(v) = (-n + w r) + i (d - b r)`, exactly.
pub fn central_charge(v: ClassVector, p: ChargeParams) -> ChargeValue {
    let r = Rat::from(v.r);
    ChargeValue {
        re: -Rat::from(v.n) + p.w * r,
        im: Rat::from(v.d) - p.b * r,
    }
}

/// Slope classification of a class against the heart cone at `(b, w)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlopeClass {
    /// Upper half plane: slope `-Re/Im` is finite.
    Finite(Rat),
    /// Real axis with `Re < 0`: phase-one object, slope `+inf`.
    Infinite,
    /// Charge vanishes identically at these parameters.
    Kernel,
    /// Outside the cone: `Im < 0`, or `Im = 0` with `Re > 0`.
    Invalid,
}

impl SlopeClass {
    /// True for the two classifications that live inside the heart cone.
    pub fn in_cone(self) -> bool {
        matches!(self, SlopeClass::Finite(_) | SlopeClass::Infinite)
    }
}

impl fmt::Display for SlopeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SlopeClass::Finite(nu) => write!(f, "finite:{nu}"),
            SlopeClass::Infinite => write!(f, "inf"),
            SlopeClass::Kernel => write!(f, "kernel"),
            SlopeClass::Invalid => write!(f, "invalid"),
        }
    }
}

impl Serialize for SlopeClass {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// Classifies `Z(v)` at `(b, w)` into finite slope, `+inf`, kernel, or
/// cone-invalid.
pub fn heart_slope(v: ClassVector, p: ChargeParams) -> SlopeClass {
    let z = central_charge(v, p);
    if z.im.is_positive() {
        SlopeClass::Finite(-z.re / z.im)
    } else if z.im.is_negative() {
        SlopeClass::Invalid
    } else if z.re.is_negative() {
        SlopeClass::Infinite
    } else if z.re.is_zero() {
        SlopeClass::Kernel
    } else {
        SlopeClass::Invalid
    }
}

/// Order on slopes of two classes at `(b, w)`.  `Incomparable` is returned
/// when either class is a kernel class or lies outside the cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SlopeOrdering {
    Less,
    Equal,
    Greater,
    Incomparable,
}

/// Compares heart slopes by cross-multiplication: for finite slopes
/// `(-re1) * im2` vs `(-re2) * im1` with both `im > 0`, so no division
/// occurs.  `+inf` compares above every finite slope.
pub fn compare_slopes(v1: ClassVector, v2: ClassVector, p: ChargeParams) -> SlopeOrdering {
    let z1 = central_charge(v1, p);
    let z2 = central_charge(v2, p);
    let k1 = slope_key(z1);
    let k2 = slope_key(z2);
    match (k1, k2) {
        (Some(a), Some(b)) => match a.compare(b) {
            Ordering::Less => SlopeOrdering::Less,
            Ordering::Equal => SlopeOrdering::Equal,
            Ordering::Greater => SlopeOrdering::Greater,
        },
        _ => SlopeOrdering::Incomparable,
    }
}

#[derive(Clone, Copy)]
enum SlopeKey {
    Finite { neg_re: Rat, im: Rat },
    Infinite,
}

impl SlopeKey {
    fn compare(self, other: SlopeKey) -> Ordering {
        match (self, other) {
            (SlopeKey::Infinite, SlopeKey::Infinite) => Ordering::Equal,
            (SlopeKey::Infinite, SlopeKey::Finite { .. }) => Ordering::Greater,
            (SlopeKey::Finite { .. }, SlopeKey::Infinite) => Ordering::Less,
            (
                SlopeKey::Finite { neg_re: a, im: ia },
                SlopeKey::Finite { neg_re: b, im: ib },
            ) => (a * ib).cmp(&(b * ia)),
        }
    }
}

fn slope_key(z: ChargeValue) -> Option<SlopeKey> {
    if z.im.is_positive() {
        Some(SlopeKey::Finite {
            neg_re: -z.re,
            im: z.im,
        })
    } else if z.im.is_zero() && z.re.is_negative() {
        Some(SlopeKey::Infinite)
    } else {
        None
    }
}

/// Classical bundle slope `d/r` with `mu(0, d) = +inf`; rejects `r < 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MuSlope {
    Finite(Rat),
    Infinite,
}

impl fmt::Display for MuSlope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MuSlope::Finite(mu) => write!(f, "{mu}"),
            MuSlope::Infinite => write!(f, "inf"),
        }
    }
}

pub fn mu_slope(r: i64, d: i64) -> Result<MuSlope, ChargeError> {
    if r < 0 {
        Err(ChargeError::NegativeRank { r })
    } else if r == 0 {
        Ok(MuSlope::Infinite)
    } else {
        Ok(MuSlope::Finite(Rat::new(d as i128, r as i128)))
    }
}

/// A parameter pair is admissible when `w` strictly exceeds the section
/// bound at `b`: below that line the conic trick that produces the heart
/// degenerates.
pub fn is_admissible(p: ChargeParams, bound: &PiecewiseBound) -> bool {
    p.w > bound.evaluate(p.b)
}
