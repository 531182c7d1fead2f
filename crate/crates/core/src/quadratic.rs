//! Numbers `(a + b√3)/c` with integer entries, their sign class, and the
//! closed-form actions of B, C, C² and D.
//!
//! Triples are kept in a canonical orientation (`b > 0`, or `b = 0` and
//! `c > 0`) but are deliberately *not* reduced by `gcd(a, b, c)`: whether the
//! companion value `d = (a² - 3b²)/c` is an integer depends on the
//! representation, and the enumeration of ambiguous numbers relies on that.
//! Use [`RealQuadratic::value_eq`] to compare values.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{rational, FieldElement, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawTriple", into = "RawTriple")]
pub struct RealQuadratic {
    a: i64,
    b: i64,
    c: i64,
}

#[derive(Serialize, Deserialize)]
struct RawTriple {
    a: i64,
    b: i64,
    c: i64,
}

impl TryFrom<RawTriple> for RealQuadratic {
    type Error = Error;
    fn try_from(t: RawTriple) -> Result<Self> {
        RealQuadratic::new(t.a, t.b, t.c)
    }
}

impl From<RealQuadratic> for RawTriple {
    fn from(q: RealQuadratic) -> Self {
        RawTriple {
            a: q.a,
            b: q.b,
            c: q.c,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AmbiguityClass {
    TotallyPositive,
    TotallyNegative,
    Ambiguous,
    RationalDegenerate,
}

impl fmt::Display for AmbiguityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AmbiguityClass::TotallyPositive => "TotallyPositive",
            AmbiguityClass::TotallyNegative => "TotallyNegative",
            AmbiguityClass::Ambiguous => "Ambiguous",
            AmbiguityClass::RationalDegenerate => "RationalDegenerate",
        };
        f.write_str(s)
    }
}

fn narrow(v: i128, what: impl FnOnce() -> String) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow(what()))
}

/// Sign of `a + b√3` without leaving the integers.
fn sign_of_surd(a: i64, b: i64) -> i32 {
    let (a, b) = (a as i128, b as i128);
    let sa = a.signum() as i32;
    let sb = b.signum() as i32;
    if sa == 0 || sb == 0 || sa == sb {
        return if sa != 0 { sa } else { sb };
    }
    match (a * a).cmp(&(3 * b * b)) {
        Ordering::Greater => sa,
        _ => sb,
    }
}

impl RealQuadratic {
    /// Applies the orientation rule; entries are otherwise left as given.
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        if c == 0 {
            return Err(Error::ZeroDenominator);
        }
        if b < 0 || (b == 0 && c < 0) {
            let neg = |x: i64| {
                x.checked_neg()
                    .ok_or_else(|| Error::Overflow(format!("({a},{b},{c})")))
            };
            Ok(RealQuadratic {
                a: neg(a)?,
                b: neg(b)?,
                c: neg(c)?,
            })
        } else {
            Ok(RealQuadratic { a, b, c })
        }
    }

    fn from_wide(a: i128, b: i128, c: i128) -> Result<Self> {
        let what = || format!("({a},{b},{c})");
        RealQuadratic::new(narrow(a, what)?, narrow(b, what)?, narrow(c, what)?)
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn c(&self) -> i64 {
        self.c
    }

    pub fn triple(&self) -> (i64, i64, i64) {
        (self.a, self.b, self.c)
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// `a² - 3b²`, the numerator of `d`.
    pub fn norm_numerator(&self) -> i128 {
        let (a, b) = (self.a as i128, self.b as i128);
        a * a - 3 * b * b
    }

    pub fn d_value(&self) -> Rational {
        let n = self.norm_numerator();
        Rational::new(n.into(), (self.c as i128).into())
    }

    pub fn has_integral_d(&self) -> bool {
        self.norm_numerator() % self.c as i128 == 0
    }

    /// `d` as an integer, or `NonIntegralD`.
    pub fn integral_d(&self) -> Result<i128> {
        let n = self.norm_numerator();
        let c = self.c as i128;
        if n % c != 0 {
            return Err(Error::NonIntegralD(*self));
        }
        Ok(n / c)
    }

    pub fn gcd(&self) -> i64 {
        self.a.gcd(&self.b).gcd(&self.c)
    }

    /// The gcd-reduced representation of the same value.
    pub fn reduced(&self) -> RealQuadratic {
        let g = self.gcd();
        RealQuadratic {
            a: self.a / g,
            b: self.b / g,
            c: self.c / g,
        }
    }

    /// Equality of values, as opposed to the structural `==`.
    pub fn value_eq(&self, other: &RealQuadratic) -> bool {
        self.reduced() == other.reduced()
    }

    pub fn classify(&self) -> AmbiguityClass {
        if self.b == 0 {
            return AmbiguityClass::RationalDegenerate;
        }
        let sc = self.c.signum() as i32;
        let alpha = sign_of_surd(self.a, self.b) * sc;
        let alpha_bar = sign_of_surd(self.a, -self.b) * sc;
        match (alpha > 0, alpha_bar > 0) {
            (true, true) => AmbiguityClass::TotallyPositive,
            (false, false) => AmbiguityClass::TotallyNegative,
            _ => AmbiguityClass::Ambiguous,
        }
    }

    pub fn is_ambiguous(&self) -> bool {
        self.classify() == AmbiguityClass::Ambiguous
    }

    /// Coordinates `(a/c, 0, b/c, 0)` in Q(i, √3).
    pub fn embed(&self) -> FieldElement {
        FieldElement::new(
            rational(self.a, self.c),
            Rational::zero(),
            rational(self.b, self.c),
            Rational::zero(),
        )
    }

    /// Recovers the gcd-reduced triple from a field element with no `i` part.
    pub fn extract(x: &FieldElement) -> Result<RealQuadratic> {
        if x.has_imaginary_part() {
            return Err(Error::NotRealQuadratic);
        }
        let (x0, x2) = (x.coord(0), x.coord(2));
        let c = x0.denom().lcm(x2.denom());
        let a = x0.numer() * (&c / x0.denom());
        let b = x2.numer() * (&c / x2.denom());
        let conv = |v: &num_bigint::BigInt| {
            i64::try_from(v).map_err(|_| Error::Overflow(format!("extracting {x}")))
        };
        RealQuadratic::new(conv(&a)?, conv(&b)?, conv(&c)?)
    }

    /// `ᾱ = (a - b√3)/c`, the conjugate over Q(i).
    pub fn conj(&self) -> RealQuadratic {
        RealQuadratic::new(self.a, -self.b, self.c).expect("c is nonzero")
    }

    fn nonzero(&self) -> Result<()> {
        if self.is_zero() {
            Err(Error::ZeroInput)
        } else {
            Ok(())
        }
    }

    fn nonzero_d(&self) -> Result<i128> {
        self.nonzero()?;
        let d = self.integral_d()?;
        if d == 0 {
            return Err(Error::ZeroD(*self));
        }
        Ok(d)
    }

    /// `B(α) = 1/α = (a - b√3)/d`, before orientation.
    pub fn act_b_raw(&self) -> Result<(i64, i64, i64)> {
        let d = self.nonzero_d()?;
        let what = || format!("B{self}");
        Ok((self.a, -self.b, narrow(d, what)?))
    }

    /// `D(α) = -1/α = (a - b√3)/(-d)`, before orientation.
    pub fn act_d_raw(&self) -> Result<(i64, i64, i64)> {
        let d = self.nonzero_d()?;
        let what = || format!("D{self}");
        Ok((self.a, -self.b, narrow(-d, what)?))
    }

    pub fn act_b(&self) -> Result<RealQuadratic> {
        let (a, b, c) = self.act_b_raw()?;
        RealQuadratic::new(a, b, c)
    }

    pub fn act_d(&self) -> Result<RealQuadratic> {
        let (a, b, c) = self.act_d_raw()?;
        RealQuadratic::new(a, b, c)
    }

    /// `C(α) = (-a - d + b√3)/d`. The image has d-value `2a + c + d`.
    pub fn act_c(&self) -> Result<RealQuadratic> {
        let d = self.nonzero_d()?;
        let a = self.a as i128;
        RealQuadratic::from_wide(-a - d, self.b as i128, d)
    }

    /// `C²(α) = (-a - c + b√3)/(2a + c + d)`. The image has d-value `c`.
    pub fn act_c2(&self) -> Result<RealQuadratic> {
        let d = self.nonzero_d()?;
        let (a, c) = (self.a as i128, self.c as i128);
        let den = 2 * a + c + d;
        if den == 0 {
            return Err(Error::ZeroDenominator);
        }
        RealQuadratic::from_wide(-a - c, self.b as i128, den)
    }

    /// `A(α) = 1/(α - i)`, rationalised: with `N = a² + 3b² + c²` and `M = 2ab`,
    /// `A(α) = c·(a + b√3 + c·i)(N - M√3) / (N² - 3M²)`.
    pub fn act_a_image(&self) -> FieldElement {
        let (a, b, c) = (self.a as i128, self.b as i128, self.c as i128);
        let n = a * a + 3 * b * b + c * c;
        let m = 2 * a * b;
        let delta = n * n - 3 * m * m;
        let r = |num: i128| Rational::new((c * num).into(), delta.into());
        FieldElement::new(r(a * n - 3 * b * m), r(c * n), r(b * n - a * m), r(-c * m))
    }

    /// `A²(α) = 1/α + i = (a - b√3 + d·i)/d`.
    pub fn act_a2_image(&self) -> Result<FieldElement> {
        let n = self.norm_numerator();
        if n == 0 {
            return Err(Error::ZeroD(*self));
        }
        let c = self.c as i128;
        let r = |num: i128| Rational::new((num * c).into(), n.into());
        Ok(FieldElement::new(
            r(self.a as i128),
            Rational::from_integer(1.into()),
            r(-(self.b as i128)),
            Rational::zero(),
        ))
    }

    /// Human rendering such as `(-3+2√3)/3`, `√3`, `-√3/3`.
    ///
    /// The denominator is shown positive; a negative `c` moves its sign into
    /// the numerator.
    pub fn render(&self) -> String {
        let (mut a, mut b, mut c) = (self.a as i128, self.b as i128, self.c as i128);
        if c < 0 {
            a = -a;
            b = -b;
            c = -c;
        }
        let surd = |b: i128| match b.abs() {
            1 => "√3".to_string(),
            m => format!("{m}√3"),
        };
        let (num, terms) = match (a, b) {
            (a, 0) => (a.to_string(), 1),
            (0, b) => (format!("{}{}", if b < 0 { "-" } else { "" }, surd(b)), 1),
            (a, b) => (
                format!("{a}{}{}", if b < 0 { "-" } else { "+" }, surd(b)),
                2,
            ),
        };
        match (c, terms) {
            (1, _) => num,
            (c, 1) => format!("{num}/{c}"),
            (c, _) => format!("({num})/{c}"),
        }
    }

    /// Identifier used for DOT nodes: `a_b_c` with `m` marking negatives.
    pub fn node_id(&self) -> String {
        let part = |v: i64| {
            if v < 0 {
                format!("m{}", v.unsigned_abs())
            } else {
                v.to_string()
            }
        };
        format!("{}_{}_{}", part(self.a), part(self.b), part(self.c))
    }
}

/// Ordered by `(a, c)`, then `b`.
impl Ord for RealQuadratic {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.a, self.c, self.b).cmp(&(other.a, other.c, other.b))
    }
}

impl PartialOrd for RealQuadratic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RealQuadratic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// Shorthand used throughout the tests.
pub fn rq(a: i64, b: i64, c: i64) -> RealQuadratic {
    RealQuadratic::new(a, b, c).expect("nonzero denominator")
}
