//! The Picard group PSL(2, Z[i]) acting by Möbius transformations.
//!
//! Generators are realised by determinant-one matrices:
//!
//! | name | map              | matrix            |
//! |------|------------------|-------------------|
//! | A    | `1/(z - i)`      | `[[0, i], [i, 1]]` |
//! | B    | `1/z`            | `[[0, i], [i, 0]]` |
//! | C    | `-(1 + z)/z`     | `[[1, 1], [-1, 0]]` |
//! | D    | `-1/z`           | `[[0, -1], [1, 0]]` |
//!
//! A and B need the factor `i`: the obvious integer matrices have determinant -1.
//!
//! Words act left to right: in `[A, C]` the letter `A` is applied first, so the
//! matrix of a word is the product of its letters' matrices in reverse order.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldElement, ProjectivePoint};
use crate::gaussian::GaussianInt;

/// A 2×2 matrix over Z[i], with no sign normalisation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussMatrix {
    pub p: GaussianInt,
    pub q: GaussianInt,
    pub r: GaussianInt,
    pub s: GaussianInt,
}

impl GaussMatrix {
    pub fn new(p: GaussianInt, q: GaussianInt, r: GaussianInt, s: GaussianInt) -> Self {
        GaussMatrix { p, q, r, s }
    }

    /// Entries given as `(re, im)` pairs in the order p, q, r, s.
    pub fn from_parts(e: [(i64, i64); 4]) -> Self {
        let [p, q, r, s] = e.map(|(re, im)| GaussianInt::new(re, im));
        GaussMatrix { p, q, r, s }
    }

    pub fn identity() -> Self {
        GaussMatrix::from_parts([(1, 0), (0, 0), (0, 0), (1, 0)])
    }

    pub fn det(&self) -> GaussianInt {
        &(&self.p * &self.s) - &(&self.q * &self.r)
    }

    pub fn mul(&self, rhs: &GaussMatrix) -> GaussMatrix {
        GaussMatrix {
            p: &(&self.p * &rhs.p) + &(&self.q * &rhs.r),
            q: &(&self.p * &rhs.q) + &(&self.q * &rhs.s),
            r: &(&self.r * &rhs.p) + &(&self.s * &rhs.r),
            s: &(&self.r * &rhs.q) + &(&self.s * &rhs.s),
        }
    }

    pub fn pow(&self, n: u32) -> GaussMatrix {
        (0..n).fold(GaussMatrix::identity(), |acc, _| acc.mul(self))
    }

    pub fn neg(&self) -> GaussMatrix {
        GaussMatrix {
            p: -&self.p,
            q: -&self.q,
            r: -&self.r,
            s: -&self.s,
        }
    }

    fn entries(&self) -> [&GaussianInt; 4] {
        [&self.p, &self.q, &self.r, &self.s]
    }
}

impl fmt::Display for GaussMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.p, self.q, self.r, self.s)
    }
}

/// An element of PSL(2, Z[i]).
///
/// The stored matrix always has determinant 1 and is sign-normalised: the
/// first nonzero entry among p, q, r, s has positive real part, or zero real
/// part and positive imaginary part. Equality and hashing are therefore
/// equality in PSL.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MobiusMap {
    m: GaussMatrix,
}

impl MobiusMap {
    pub fn from_matrix(m: GaussMatrix) -> Result<Self> {
        if !m.det().is_one() {
            return Err(Error::DeterminantNotOne);
        }
        Ok(MobiusMap {
            m: normalise_sign(m),
        })
    }

    pub fn identity() -> Self {
        MobiusMap {
            m: GaussMatrix::identity(),
        }
    }

    pub fn matrix(&self) -> &GaussMatrix {
        &self.m
    }

    pub fn is_identity(&self) -> bool {
        self.m == GaussMatrix::identity()
    }

    pub fn compose(&self, rhs: &MobiusMap) -> MobiusMap {
        MobiusMap {
            m: normalise_sign(self.m.mul(&rhs.m)),
        }
    }

    pub fn inverse(&self) -> MobiusMap {
        let GaussMatrix { p, q, r, s } = &self.m;
        MobiusMap {
            m: normalise_sign(GaussMatrix::new(s.clone(), -q, -r, p.clone())),
        }
    }

    /// `z ↦ (p·z + q)/(r·z + s)` on the projective line.
    pub fn apply(&self, z: &ProjectivePoint) -> ProjectivePoint {
        let GaussMatrix { p, q, r, s } = &self.m;
        match z {
            ProjectivePoint::Infinity => {
                if r.is_zero() {
                    ProjectivePoint::Infinity
                } else {
                    let num = FieldElement::from_gaussian(p);
                    let den = FieldElement::from_gaussian(r);
                    ProjectivePoint::Finite(num.div(&den).expect("r is nonzero"))
                }
            }
            ProjectivePoint::Finite(z) => {
                let num = &(&FieldElement::from_gaussian(p) * z) + &FieldElement::from_gaussian(q);
                let den = &(&FieldElement::from_gaussian(r) * z) + &FieldElement::from_gaussian(s);
                match num.div(&den) {
                    Ok(w) => ProjectivePoint::Finite(w),
                    Err(_) => ProjectivePoint::Infinity,
                }
            }
        }
    }

    pub fn apply_finite(&self, z: &FieldElement) -> ProjectivePoint {
        self.apply(&ProjectivePoint::Finite(z.clone()))
    }

    /// True when every entry lies in Z.
    pub fn is_rational(&self) -> bool {
        self.m.entries().iter().all(|g| g.is_real())
    }
}

impl fmt::Display for MobiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.m.fmt(f)
    }
}

fn normalise_sign(m: GaussMatrix) -> GaussMatrix {
    let lead = m
        .entries()
        .into_iter()
        .find(|g| !g.is_zero())
        .expect("determinant-one matrix has a nonzero entry");
    if lead.is_positive_leading() {
        m
    } else {
        m.neg()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    A,
    B,
    C,
    D,
}

impl Generator {
    pub const ALL: [Generator; 4] = [Generator::A, Generator::B, Generator::C, Generator::D];

    pub fn order(self) -> u32 {
        match self {
            Generator::A | Generator::C => 3,
            Generator::B | Generator::D => 2,
        }
    }

    pub fn matrix(self) -> GaussMatrix {
        match self {
            Generator::A => GaussMatrix::from_parts([(0, 0), (0, 1), (0, 1), (1, 0)]),
            Generator::B => GaussMatrix::from_parts([(0, 0), (0, 1), (0, 1), (0, 0)]),
            Generator::C => GaussMatrix::from_parts([(1, 0), (1, 0), (-1, 0), (0, 0)]),
            Generator::D => GaussMatrix::from_parts([(0, 0), (-1, 0), (1, 0), (0, 0)]),
        }
    }

    pub fn map(self) -> MobiusMap {
        MobiusMap::from_matrix(self.matrix()).expect("shipped generators have determinant 1")
    }

    pub fn letter(self) -> char {
        match self {
            Generator::A => 'A',
            Generator::B => 'B',
            Generator::C => 'C',
            Generator::D => 'D',
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Generator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Generator::A),
            "B" | "b" => Ok(Generator::B),
            "C" | "c" => Ok(Generator::C),
            "D" | "d" => Ok(Generator::D),
            other => Err(Error::Parse(format!("unknown generator {other:?}"))),
        }
    }
}

/// Matrices used for A, B, C, D. The shipped set is [`GeneratorSet::standard`];
/// other sets exist so the relator check can be exercised against bad input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    matrices: [GaussMatrix; 4],
}

impl GeneratorSet {
    pub fn standard() -> Self {
        GeneratorSet {
            matrices: Generator::ALL.map(Generator::matrix),
        }
    }

    pub fn with_replaced(mut self, g: Generator, m: GaussMatrix) -> Self {
        self.matrices[g as usize] = m;
        self
    }

    pub fn matrix(&self, g: Generator) -> &GaussMatrix {
        &self.matrices[g as usize]
    }
}

impl Default for GeneratorSet {
    fn default() -> Self {
        GeneratorSet::standard()
    }
}

/// A word in A, B, C, D with exponents reduced modulo the generator orders.
///
/// Adjacent powers of the same letter are merged, and zero exponents are dropped.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GeneratorWord {
    letters: Vec<(Generator, u32)>,
}

impl GeneratorWord {
    pub fn new() -> Self {
        GeneratorWord::default()
    }

    pub fn from_letters(letters: &[Generator]) -> Self {
        let mut w = GeneratorWord::new();
        for &g in letters {
            w.push(g, 1);
        }
        w
    }

    pub fn push(&mut self, g: Generator, exp: u32) {
        let exp = exp % g.order();
        if exp == 0 {
            return;
        }
        match self.letters.last_mut() {
            Some((last, e)) if *last == g => {
                *e = (*e + exp) % g.order();
                if *e == 0 {
                    self.letters.pop();
                }
            }
            _ => self.letters.push((g, exp)),
        }
    }

    pub fn letters(&self) -> &[(Generator, u32)] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The matrix whose action equals the word's left-to-right action.
    pub fn matrix(&self) -> MobiusMap {
        self.letters
            .iter()
            .fold(MobiusMap::identity(), |acc, &(g, e)| {
                let step = MobiusMap::from_matrix(g.matrix().pow(e)).expect("det 1");
                step.compose(&acc)
            })
    }

    pub fn apply(&self, z: &ProjectivePoint) -> ProjectivePoint {
        self.letters.iter().fold(z.clone(), |z, &(g, e)| {
            let m = g.map();
            (0..e).fold(z, |z, _| m.apply(&z))
        })
    }
}

impl FromStr for GeneratorWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let gens = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| c.to_string().parse())
            .collect::<Result<Vec<Generator>>>()?;
        Ok(GeneratorWord::from_letters(&gens))
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for &(g, e) in &self.letters {
            if e == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sign of an evaluated relator: `+I`, `-I`, or something else entirely.
#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum RelatorValue {
    PlusIdentity,
    MinusIdentity,
    Other(GaussMatrix),
}

impl RelatorValue {
    pub fn passes(&self) -> bool {
        !matches!(self, RelatorValue::Other(_))
    }
}

impl fmt::Display for RelatorValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelatorValue::PlusIdentity => f.write_str("+I"),
            RelatorValue::MinusIdentity => f.write_str("-I"),
            RelatorValue::Other(m) => m.fmt(f),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelatorCheck {
    pub name: &'static str,
    pub value: RelatorValue,
}

impl RelatorCheck {
    pub fn passes(&self) -> bool {
        self.value.passes()
    }
}

/// The eight defining relators of the presentation, as letter sequences.
pub const RELATORS: [(&str, &[Generator]); 8] = {
    use Generator::*;
    [
        ("A^3", &[A, A, A]),
        ("B^2", &[B, B]),
        ("C^3", &[C, C, C]),
        ("D^2", &[D, D]),
        ("(AC)^2", &[A, C, A, C]),
        ("(AD)^2", &[A, D, A, D]),
        ("(BC)^2", &[B, C, B, C]),
        ("(BD)^2", &[B, D, B, D]),
    ]
};

/// Multiplies out each relator with raw matrices, keeping the sign.
pub fn verify_relators_with(gens: &GeneratorSet) -> Vec<RelatorCheck> {
    let id = GaussMatrix::identity();
    let minus_id = id.neg();
    RELATORS
        .iter()
        .map(|&(name, word)| {
            let product = word
                .iter()
                .fold(GaussMatrix::identity(), |acc, &g| gens.matrix(g).mul(&acc));
            let value = if product == id {
                RelatorValue::PlusIdentity
            } else if product == minus_id {
                RelatorValue::MinusIdentity
            } else {
                RelatorValue::Other(product)
            };
            RelatorCheck { name, value }
        })
        .collect()
}

pub fn verify_relators() -> Vec<RelatorCheck> {
    verify_relators_with(&GeneratorSet::standard())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational;

    fn pt(c: [(i64, i64); 4]) -> ProjectivePoint {
        ProjectivePoint::Finite(FieldElement::from_ratios(c))
    }

    fn int(c: [i64; 4]) -> ProjectivePoint {
        ProjectivePoint::Finite(FieldElement::from_ints(c))
    }

    #[test]
    fn generator_examples() {
        use Generator::*;
        assert_eq!(A.map().apply(&int([0, 1, 0, 0])), ProjectivePoint::Infinity);
        assert_eq!(
            B.map().apply(&int([2, 0, 0, 0])),
            pt([(1, 2), (0, 1), (0, 1), (0, 1)])
        );
        assert_eq!(A.matrix().det(), GaussianInt::one());
        for g in Generator::ALL {
            assert!(g.matrix().det().is_one(), "{g}");
        }
        assert_eq!(D.map().apply(&int([0, 0, 0, 0])), ProjectivePoint::Infinity);
        assert_eq!(
            A.map().apply(&int([0, 0, 1, 0])),
            pt([(0, 1), (1, 4), (1, 4), (0, 1)])
        );
    }

    #[test]
    fn naive_lifts_have_det_minus_one() {
        // [[0,1],[1,-i]] and [[0,1],[1,0]] realise A and B but are not in SL2.
        let a = GaussMatrix::from_parts([(0, 0), (1, 0), (1, 0), (0, -1)]);
        let b = GaussMatrix::from_parts([(0, 0), (1, 0), (1, 0), (0, 0)]);
        assert_eq!(a.det(), GaussianInt::new(-1, 0));
        assert_eq!(b.det(), GaussianInt::new(-1, 0));
        assert_eq!(MobiusMap::from_matrix(b), Err(Error::DeterminantNotOne));
    }

    #[test]
    fn compose_and_inverse() {
        use Generator::*;
        let id = MobiusMap::identity();
        let a = A.map();
        assert_eq!(a.compose(&id), a);
        assert!(D.map().compose(&D.map()).is_identity());
        let bc = B.map().compose(&C.map());
        assert!(bc.compose(&bc).is_identity());
        assert_eq!(id.inverse(), id);
        assert_eq!(D.map().inverse(), D.map());
        assert_eq!(C.map().inverse(), C.map().compose(&C.map()));
        assert_eq!(
            C.map().compose(&C.map()).matrix(),
            &GaussMatrix::from_parts([(0, 0), (1, 0), (-1, 0), (-1, 0)])
        );
    }

    #[test]
    fn raw_relator_signs() {
        use Generator::*;
        let minus = GaussMatrix::identity().neg();
        assert_eq!(A.matrix().pow(3), minus);
        assert_eq!(B.matrix().pow(2), minus);
        let ad = D.matrix().mul(&A.matrix());
        assert_eq!(ad.pow(2), minus);
    }

    #[test]
    fn all_relators_pass() {
        let report = verify_relators();
        assert_eq!(report.len(), 8);
        for r in &report {
            assert!(r.passes(), "{} evaluated to {}", r.name, r.value);
        }
        assert_eq!(report[0].value, RelatorValue::MinusIdentity);
    }

    #[test]
    fn corrupted_generator_fails_relators() {
        let bad = GeneratorSet::standard().with_replaced(
            Generator::A,
            GaussMatrix::from_parts([(1, 0), (1, 0), (0, 0), (1, 0)]),
        );
        let report = verify_relators_with(&bad);
        let failing: Vec<_> = report
            .iter()
            .filter(|r| !r.passes())
            .map(|r| r.name)
            .collect();
        // T·C has order two, so (AC)^2 still holds
        assert_eq!(failing, ["A^3", "(AD)^2"]);
    }

    #[test]
    fn words() {
        use Generator::*;
        let z = pt([(1, 2), (1, 3), (-1, 1), (2, 5)]);
        assert_eq!(GeneratorWord::new().apply(&z), z);
        assert!(GeneratorWord::from_letters(&[B, B]).is_empty());
        assert_eq!(GeneratorWord::from_letters(&[C, C, C]).apply(&z), z);
        // B then D is z -> -z
        let w: GeneratorWord = "BD".parse().unwrap();
        let neg = ProjectivePoint::Finite(-&z.finite().unwrap().clone());
        assert_eq!(w.apply(&z), neg);
        assert_eq!(w.to_string(), "BD");
        assert_eq!(GeneratorWord::from_letters(&[C, C]).to_string(), "C^2");
    }

    #[test]
    fn left_to_right_convention() {
        use Generator::*;
        // A then C differs from C then A at a generic point
        let z = int([2, 0, 1, 0]);
        let ac = GeneratorWord::from_letters(&[A, C]).apply(&z);
        let manual = C.map().apply(&A.map().apply(&z));
        assert_eq!(ac, manual);
        assert_ne!(ac, A.map().apply(&C.map().apply(&z)));
    }

    #[test]
    fn fixed_points() {
        use Generator::*;
        let cases = [
            (A, [(0, 1), (1, 2), (1, 2), (0, 1)]),
            (A, [(0, 1), (1, 2), (-1, 2), (0, 1)]),
            (B, [(1, 1), (0, 1), (0, 1), (0, 1)]),
            (B, [(-1, 1), (0, 1), (0, 1), (0, 1)]),
            (C, [(-1, 2), (0, 1), (0, 1), (1, 2)]),
            (C, [(-1, 2), (0, 1), (0, 1), (-1, 2)]),
            (D, [(0, 1), (1, 1), (0, 1), (0, 1)]),
            (D, [(0, 1), (-1, 1), (0, 1), (0, 1)]),
        ];
        for (g, c) in cases {
            let z = pt(c);
            assert_eq!(g.map().apply(&z), z, "{g} should fix {z}");
        }
    }

    #[test]
    fn infinity_conventions() {
        use Generator::*;
        // A(∞) = p/r = 0/i = 0, C(∞) = 1/(-1) = -1, and an upper-triangular map fixes ∞
        assert_eq!(A.map().apply(&ProjectivePoint::Infinity), int([0, 0, 0, 0]));
        assert_eq!(
            C.map().apply(&ProjectivePoint::Infinity),
            int([-1, 0, 0, 0])
        );
        let t = MobiusMap::from_matrix(GaussMatrix::from_parts([(1, 0), (0, 1), (0, 0), (1, 0)]))
            .unwrap();
        assert_eq!(
            t.apply(&ProjectivePoint::Infinity),
            ProjectivePoint::Infinity
        );
        let half = FieldElement::from_rational(rational(1, 2));
        assert_eq!(t.apply_finite(&half), pt([(1, 2), (1, 1), (0, 1), (0, 1)]));
    }

    #[test]
    fn conjugation_compatibility() {
        use Generator::*;
        let z = FieldElement::from_ratios([(1, 3), (2, 1), (1, 2), (-1, 1)]);
        // √3 ↦ -√3 fixes Z[i], so it commutes with every generator, A included.
        let zbar = ProjectivePoint::Finite(z.conj_over_qi());
        for g in Generator::ALL {
            let lhs = g.map().apply_finite(&z).finite().unwrap().conj_over_qi();
            assert_eq!(ProjectivePoint::Finite(lhs), g.map().apply(&zbar), "{g}");
        }
        // Complex conjugation commutes with the maps defined over Q (B, C, D) but not with A.
        let zc = ProjectivePoint::Finite(z.conj_over_qsqrt3());
        for g in [B, C, D] {
            let lhs = g
                .map()
                .apply_finite(&z)
                .finite()
                .unwrap()
                .conj_over_qsqrt3();
            assert_eq!(ProjectivePoint::Finite(lhs), g.map().apply(&zc), "{g}");
        }
        let lhs = A
            .map()
            .apply_finite(&z)
            .finite()
            .unwrap()
            .conj_over_qsqrt3();
        assert_ne!(ProjectivePoint::Finite(lhs), A.map().apply(&zc));
    }
}
