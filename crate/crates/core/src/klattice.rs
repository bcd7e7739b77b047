//! Numerical class lattice for coherent systems on a smooth curve.
//!
//! A coherent system (bundle plus a space of sections) has a numerical class
//! `(r, d, n)`: rank, degree, and the dimension of the section space.  The
//! lattice is `Z^3` equipped with a genus-dependent integer Euler pairing.
//! For genus 4 the class `(1, 3, 2)` is exceptional (self-pairing 1) and
//! spans the kernel of the degenerate central charge; the quotient by that
//! line is the rank-two lattice targeted by [`project_mod_kernel`].

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_integer::Integer;
use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeTuple;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Errors from lattice constructors.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("genus must be at least 1, got {0}")]
    InvalidGenus(i64),
}

/// Curve genus, validated to be `>= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Genus(i64);

impl Genus {
    pub fn new(g: i64) -> Result<Self, LatticeError> {
        if g < 1 {
            Err(LatticeError::InvalidGenus(g))
        } else {
            Ok(Genus(g))
        }
    }

    pub fn get(self) -> i64 {
        self.0
    }
}

/// Numerical class `(r, d, n)` of a coherent system: rank, degree, sections.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassVector {
    pub r: i64,
    pub d: i64,
    pub n: i64,
}

impl ClassVector {
    pub const fn new(r: i64, d: i64, n: i64) -> Self {
        ClassVector { r, d, n }
    }

    pub const ZERO: ClassVector = ClassVector::new(0, 0, 0);

    pub fn is_zero(self) -> bool {
        self == Self::ZERO
    }

    pub fn scaled(self, k: i64) -> Self {
        ClassVector::new(self.r * k, self.d * k, self.n * k)
    }

    /// Divides out the gcd of the entries, keeping the overall sign.
    /// The zero class is returned unchanged.
    pub fn primitive(self) -> Self {
        let g = self.r.abs().gcd(&self.d.abs()).gcd(&self.n.abs());
        if g <= 1 {
            self
        } else {
            ClassVector::new(self.r / g, self.d / g, self.n / g)
        }
    }

    /// Primitive representative with the first nonzero entry positive.
    pub fn sign_normalized_primitive(self) -> Self {
        let p = self.primitive();
        let lead = if p.r != 0 {
            p.r
        } else if p.d != 0 {
            p.d
        } else {
            p.n
        };
        if lead < 0 {
            -p
        } else {
            p
        }
    }

    /// True when `self` is an integer multiple of `other` (including zero,
    /// which is a multiple of everything).  Equivalent to the vanishing of
    /// all 2x2 minors plus an integrality check; for nonzero `other` the
    /// minor test already forces integrality when `other` is primitive, so
    /// proportionality is tested on minors alone.
    pub fn is_proportional_to(self, other: ClassVector) -> bool {
        let a = [self.r as i128, self.d as i128, self.n as i128];
        let b = [other.r as i128, other.d as i128, other.n as i128];
        a[0] * b[1] == a[1] * b[0] && a[0] * b[2] == a[2] * b[0] && a[1] * b[2] == a[2] * b[1]
    }
}

impl Add for ClassVector {
    type Output = ClassVector;
    fn add(self, rhs: ClassVector) -> ClassVector {
        ClassVector::new(self.r + rhs.r, self.d + rhs.d, self.n + rhs.n)
    }
}

impl Sub for ClassVector {
    type Output = ClassVector;
    fn sub(self, rhs: ClassVector) -> ClassVector {
        ClassVector::new(self.r - rhs.r, self.d - rhs.d, self.n - rhs.n)
    }
}

impl Neg for ClassVector {
    type Output = ClassVector;
    fn neg(self) -> ClassVector {
        ClassVector::new(-self.r, -self.d, -self.n)
    }
}

impl fmt::Display for ClassVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.r, self.d, self.n)
    }
}

impl Serialize for ClassVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut t = serializer.serialize_tuple(3)?;
        t.serialize_element(&self.r)?;
        t.serialize_element(&self.d)?;
        t.serialize_element(&self.n)?;
        t.end()
    }
}

impl<'de> Deserialize<'de> for ClassVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = ClassVector;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a [r, d, n] triple of integers")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Self::Value, A::Error> {
                let r = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let d = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(1, &self))?;
                let n = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(2, &self))?;
                if seq.next_element::<i64>()?.is_some() {
                    return Err(de::Error::invalid_length(4, &self));
                }
                Ok(ClassVector::new(r, d, n))
            }
        }
        deserializer.deserialize_tuple(3, V)
    }
}

/// Class in the rank-two quotient lattice `Z^3 / Z*(1, 3, 2)`, written in
/// the section `(a, c) = (d - 3r, n - 2r)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuotientClass {
    pub a: i64,
    pub c: i64,
}

impl QuotientClass {
    pub const fn new(a: i64, c: i64) -> Self {
        QuotientClass { a, c }
    }
}

impl fmt::Display for QuotientClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.c)
    }
}

impl Serialize for QuotientClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut t = serializer.serialize_tuple(2)?;
        t.serialize_element(&self.a)?;
        t.serialize_element(&self.c)?;
        t.end()
    }
}

impl<'de> Deserialize<'de> for QuotientClass {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = QuotientClass;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an [a, c] pair of integers")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Self::Value, A::Error> {
                let a = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let c = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(1, &self))?;
                if seq.next_element::<i64>()?.is_some() {
                    return Err(de::Error::invalid_length(3, &self));
                }
                Ok(QuotientClass::new(a, c))
            }
        }
        deserializer.deserialize_tuple(2, V)
    }
}

/// Gram matrix of the Euler pairing on classes of coherent systems at the
/// given genus, in the basis corresponding to `(r, d, n)` coordinates:
///
/// ```text
/// | 1-g   1   0 |
/// | -1    0   0 |
/// | g-1  -1   1 |
/// ```
pub fn euler_matrix(g: Genus) -> [[i64; 3]; 3] {
    let g = g.get();
    [[1 - g, 1, 0], [-1, 0, 0], [g - 1, -1, 1]]
}

/// Euler pairing `chi(v1, v2) = v1 . M . v2`, exact in integers.
pub fn euler_pairing(v1: ClassVector, v2: ClassVector, g: Genus) -> i64 {
    let m = euler_matrix(g);
    let a = [v1.r as i128, v1.d as i128, v1.n as i128];
    let b = [v2.r as i128, v2.d as i128, v2.n as i128];
    let mut acc: i128 = 0;
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            acc += ai * (m[i][j] as i128) * bj;
        }
    }
    i64::try_from(acc).expect("euler pairing exceeds i64 range")
}

/// Direction spanning the kernel of the genus-4 degenerate charge.
pub const GENUS4_KERNEL: ClassVector = ClassVector::new(1, 3, 2);

/// Projection `Z^3 -> Z^3 / Z*(1, 3, 2)` in the section `(d - 3r, n - 2r)`.
///
/// A class maps to `(0, 0)` exactly when it is an integer multiple of the
/// kernel direction `(1, 3, 2)`.
pub fn project_mod_kernel(v: ClassVector) -> QuotientClass {
    QuotientClass::new(v.d - 3 * v.r, v.n - 2 * v.r)
}
