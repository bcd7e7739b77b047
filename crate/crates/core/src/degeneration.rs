//! Arithmetic of the degenerate boundary point.
//!
//! At the degenerate parameters the central charge kills an entire lattice
//! direction, so classes are only meaningful up to translation along that
//! kernel ray.  This module descends the charge to the quotient plane,
//! decides when two classes become identified (S-equivalence of the
//! numerical shadow), and classifies how a class sits against the heart
//! cone exactly at the boundary.

use serde::Serialize;

use crate::charge::{heart_slope, ChargeParams, ChargeValue, SlopeClass};
use crate::klattice::{ClassVector, QuotientClass, GENUS4_KERNEL};
use crate::rat::Rat;

/// The genus-4 degenerate stability parameters `(b, w) = (3, 2)`.
pub fn degenerate_point() -> ChargeParams {
    ChargeParams::new(Rat::int(3), Rat::int(2))
}

/// Charge descended to the quotient plane: `(a, c) -> -c + i a`.  The
/// square commutes: descending the projection of a class reproduces the
/// class's own charge at the degenerate point.
pub fn descended_charge(u: QuotientClass) -> ChargeValue {
    ChargeValue::new(-Rat::from(u.c), Rat::from(u.a))
}

/// Two classes are numerically S-equivalent at the boundary when their
/// difference lies on the kernel ray; integrality makes any proportional
/// difference an exact integer multiple of the primitive kernel vector.
pub fn s_equivalent(v1: ClassVector, v2: ClassVector) -> bool {
    (v1 - v2).is_proportional_to(GENUS4_KERNEL)
}

/// Position of a class against the heart cone at the degenerate point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WeakClass {
    /// Charge in the open upper half plane: survives degeneration with a
    /// finite slope.
    Positive,
    /// Charge on the negative real axis: a phase-one object at the
    /// boundary.
    Phase1,
    /// Charge vanishes: the class collapses along the kernel ray.
    Kernel,
    /// Charge leaves the closed cone: the class cannot be represented at
    /// the boundary.
    Violation,
}

/// Classifies a class at arbitrary parameters; see [`weak_classify`] for
/// the canonical boundary point.
pub fn weak_classify_at(v: ClassVector, p: ChargeParams) -> WeakClass {
    match heart_slope(v, p) {
        SlopeClass::Finite(_) => WeakClass::Positive,
        SlopeClass::Infinite => WeakClass::Phase1,
        SlopeClass::Kernel => WeakClass::Kernel,
        SlopeClass::Invalid => WeakClass::Violation,
    }
}

/// Classifies a class at the genus-4 degenerate point `(3, 2)`.
pub fn weak_classify(v: ClassVector) -> WeakClass {
    weak_classify_at(v, degenerate_point())
}

/// Groups classes into S-equivalence families.  Groups appear in
/// first-seen order; inside each group the canonical representative — the
/// member minimizing `(|r|, |d|, |n|)` lexicographically, with the signed
/// entries as a deterministic tiebreak — is moved to the front and the
/// remaining members keep their first-seen order.
pub fn sequiv_classes(classes: &[ClassVector]) -> Vec<Vec<ClassVector>> {
    let mut groups: Vec<Vec<ClassVector>> = Vec::new();
    for &v in classes {
        match groups.iter_mut().find(|group| s_equivalent(group[0], v)) {
            Some(group) => group.push(v),
            None => groups.push(vec![v]),
        }
    }
    let canonical_key =
        |v: &ClassVector| (v.r.abs(), v.d.abs(), v.n.abs(), v.r, v.d, v.n);
    for group in &mut groups {
        let best = group
            .iter()
            .enumerate()
            .min_by_key(|(_, v)| canonical_key(v))
            .map(|(i, _)| i)
            .expect("groups are nonempty");
        let representative = group.remove(best);
        group.insert(0, representative);
    }
    groups
}
