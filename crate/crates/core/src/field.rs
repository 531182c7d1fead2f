//! Exact arithmetic in the biquadratic field Q(i, √3) and on its projective line.
//!
//! An element is stored as four rational coordinates over the ordered basis
//! `{1, i, √3, i√3}`. Multiplication uses `i² = -1`, `(√3)² = 3` and
//! `(i√3)² = -3`. Inversion goes down the tower Q(i, √3) ⊃ Q(i) ⊃ Q by
//! multiplying through with the two conjugates, so every result is exact.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gaussian::GaussianInt;

/// Reduced rational with positive denominator.
pub type Rational = BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Renders a rational as `"num/den"`, always with an explicit denominator.
pub fn rational_to_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let num: BigInt = n
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
    let den: BigInt = d
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(Rational::new(num, den))
}

/// An element `x0 + x1·i + x2·√3 + x3·i√3` of Q(i, √3).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coords: [Rational; 4],
}

impl FieldElement {
    pub fn new(x0: Rational, x1: Rational, x2: Rational, x3: Rational) -> Self {
        FieldElement {
            coords: [x0, x1, x2, x3],
        }
    }

    /// Small-integer convenience constructor, `(num, den)` per coordinate.
    pub fn from_ratios(c: [(i64, i64); 4]) -> Self {
        FieldElement::new(
            rational(c[0].0, c[0].1),
            rational(c[1].0, c[1].1),
            rational(c[2].0, c[2].1),
            rational(c[3].0, c[3].1),
        )
    }

    pub fn from_ints(c: [i64; 4]) -> Self {
        FieldElement::from_ratios(c.map(|x| (x, 1)))
    }

    /// The general form `((a+bi) + (c+di)√3) / e`.
    pub fn from_general_form(a: i64, b: i64, c: i64, d: i64, e: i64) -> Result<Self> {
        if e == 0 {
            return Err(Error::ZeroDenominator);
        }
        Ok(FieldElement::from_ratios([(a, e), (b, e), (c, e), (d, e)]))
    }

    pub fn zero() -> Self {
        FieldElement::from_ints([0, 0, 0, 0])
    }

    pub fn one() -> Self {
        FieldElement::from_ints([1, 0, 0, 0])
    }

    pub fn i() -> Self {
        FieldElement::from_ints([0, 1, 0, 0])
    }

    pub fn sqrt3() -> Self {
        FieldElement::from_ints([0, 0, 1, 0])
    }

    pub fn from_rational(r: Rational) -> Self {
        FieldElement::new(r, Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn from_gaussian(g: &GaussianInt) -> Self {
        FieldElement::new(
            Rational::from_integer(g.re.clone()),
            Rational::from_integer(g.im.clone()),
            Rational::zero(),
            Rational::zero(),
        )
    }

    pub fn coords(&self) -> &[Rational; 4] {
        &self.coords
    }

    pub fn coord(&self, idx: usize) -> &Rational {
        &self.coords[idx]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Whether either of the `i` or `i√3` coordinates is nonzero.
    pub fn has_imaginary_part(&self) -> bool {
        !self.coords[1].is_zero() || !self.coords[3].is_zero()
    }

    /// Conjugate over Q(i): `√3 ↦ -√3`.
    pub fn conj_over_qi(&self) -> Self {
        let [x0, x1, x2, x3] = &self.coords;
        FieldElement::new(x0.clone(), x1.clone(), -x2, -x3)
    }

    /// Conjugate over Q(√3): `i ↦ -i` (complex conjugation).
    pub fn conj_over_qsqrt3(&self) -> Self {
        let [x0, x1, x2, x3] = &self.coords;
        FieldElement::new(x0.clone(), -x1, x2.clone(), -x3)
    }

    pub fn invert(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        // x·x̄ lies in Q(i); multiplying that by its complex conjugate lands in Q.
        let bar = self.conj_over_qi();
        let rel_norm = self * &bar;
        let rel_bar = rel_norm.conj_over_qsqrt3();
        let norm = &rel_norm * &rel_bar;
        debug_assert!(norm.coords[1..].iter().all(Zero::is_zero));
        let n = norm.coords[0].clone();
        let num = &bar * &rel_bar;
        Ok(num.scale(&n.recip()))
    }

    pub fn div(&self, rhs: &FieldElement) -> Result<Self> {
        Ok(self * &rhs.invert()?)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        FieldElement {
            coords: self.coords.clone().map(|x| x * r),
        }
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        let [a0, a1, a2, a3] = &self.coords;
        let [b0, b1, b2, b3] = &rhs.coords;
        FieldElement::new(a0 + b0, a1 + b1, a2 + b2, a3 + b3)
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        let [a0, a1, a2, a3] = &self.coords;
        let [b0, b1, b2, b3] = &rhs.coords;
        FieldElement::new(a0 - b0, a1 - b1, a2 - b2, a3 - b3)
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        let [a0, a1, a2, a3] = &self.coords;
        let [b0, b1, b2, b3] = &rhs.coords;
        let three = Rational::from_integer(BigInt::from(3));
        let x0 = a0 * b0 - a1 * b1 + &three * (a2 * b2 - a3 * b3);
        let x1 = a0 * b1 + a1 * b0 + &three * (a2 * b3 + a3 * b2);
        let x2 = a0 * b2 + a2 * b0 - a1 * b3 - a3 * b1;
        let x3 = a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1;
        FieldElement::new(x0, x1, x2, x3)
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            coords: self.coords.clone().map(|x| -x),
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const UNITS: [&str; 4] = ["", "i", "√3", "i√3"];
        let mut wrote = false;
        for (x, unit) in self.coords.iter().zip(UNITS) {
            if x.is_zero() {
                continue;
            }
            let mag = x.abs();
            let sign = if x.is_negative() { "-" } else { "+" };
            if wrote {
                write!(f, " {sign} ")?;
            } else if x.is_negative() {
                f.write_str("-")?;
            }
            match (mag.is_one(), unit.is_empty()) {
                (true, false) => f.write_str(unit)?,
                (_, true) => write!(f, "{mag}")?,
                (false, false) => write!(f, "{mag}·{unit}")?,
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.coords.iter().map(rational_to_string).collect();
        strings.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FieldElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let strings = <[String; 4]>::deserialize(deserializer)?;
        let mut out = Vec::with_capacity(4);
        for s in &strings {
            out.push(parse_rational(s).map_err(D::Error::custom)?);
        }
        let [x0, x1, x2, x3]: [Rational; 4] = out.try_into().expect("four coordinates");
        Ok(FieldElement::new(x0, x1, x2, x3))
    }
}

/// A point of the projective line over Q(i, √3).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
#[allow(clippy::large_enum_variant)]
pub enum ProjectivePoint {
    Finite(FieldElement),
    Infinity,
}

impl ProjectivePoint {
    pub fn finite(&self) -> Option<&FieldElement> {
        match self {
            ProjectivePoint::Finite(x) => Some(x),
            ProjectivePoint::Infinity => None,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, ProjectivePoint::Infinity)
    }
}

impl From<FieldElement> for ProjectivePoint {
    fn from(x: FieldElement) -> Self {
        ProjectivePoint::Finite(x)
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjectivePoint::Finite(x) => x.fmt(f),
            ProjectivePoint::Infinity => f.write_str("∞"),
        }
    }
}
