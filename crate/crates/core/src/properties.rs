//! Seeded property suites over the enumerated sets and random samples.
//!
//! Every suite stops at its first violation and records the witness.
//! Output depends only on the configuration.

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::enumerate::{candidate_triples, divisors, enumerate};
use crate::error::{Error, Result};
use crate::field::{rational, FieldElement, ProjectivePoint};
use crate::orbit::{bfs_orbit_ambiguous, build_graph, partner_with_via, same_value};
use crate::picard::{verify_relators_with, Generator, GeneratorSet, GeneratorWord};
use crate::quadratic::{AmbiguityClass, RealQuadratic};

#[derive(Clone, Debug)]
pub struct PropertyConfig {
    pub k_max: i64,
    pub seed: u64,
    /// Random integral-d triples per randomised suite.
    pub samples: usize,
    pub bfs_limit: usize,
    pub generators: GeneratorSet,
}

impl PropertyConfig {
    pub fn new(k_max: i64, seed: u64) -> Self {
        PropertyConfig {
            k_max,
            seed,
            samples: 1000,
            bfs_limit: 100_000,
            generators: GeneratorSet::standard(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: usize,
    /// Extra lines reported by the suite, such as per-k counts.
    pub notes: Vec<String>,
    pub failure: Option<String>,
}

impl SuiteResult {
    pub fn ok(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "SUITE {}: {} passed", self.name, self.passed)?,
            Some(w) => write!(
                f,
                "SUITE {}: FAIL after {} passed: {}",
                self.name, self.passed, w
            )?,
        }
        for n in &self.notes {
            write!(f, "\n  {n}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub suites: Vec<SuiteResult>,
}

impl PropertyReport {
    pub fn ok(&self) -> bool {
        self.suites.iter().all(SuiteResult::ok)
    }

    pub fn first_failure(&self) -> Option<&SuiteResult> {
        self.suites.iter().find(|s| !s.ok())
    }

    pub fn suite(&self, name: &str) -> Option<&SuiteResult> {
        self.suites.iter().find(|s| s.name == name)
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.suites {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

struct Tally {
    name: &'static str,
    passed: usize,
    notes: Vec<String>,
}

type Check = std::result::Result<(), String>;

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            passed: 0,
            notes: Vec::new(),
        }
    }

    fn ensure(&mut self, ok: bool, witness: impl FnOnce() -> String) -> Check {
        if ok {
            self.passed += 1;
            Ok(())
        } else {
            Err(witness())
        }
    }

    fn finish(self, outcome: Check) -> SuiteResult {
        SuiteResult {
            name: self.name,
            passed: self.passed,
            notes: self.notes,
            failure: outcome.err(),
        }
    }
}

fn run(name: &'static str, body: impl FnOnce(&mut Tally) -> Check) -> SuiteResult {
    let mut t = Tally::new(name);
    let outcome = body(&mut t);
    t.finish(outcome)
}

fn show<T: fmt::Display>(r: &Result<T>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

/// Random triple with integral d; `c` is a signed divisor of `a² - 3b²`.
pub fn random_integral_triple(rng: &mut impl Rng, a_max: i64, b_max: i64) -> RealQuadratic {
    let a = rng.random_range(-a_max..=a_max);
    let b = rng.random_range(1..=b_max);
    let n = (a as i128) * (a as i128) - 3 * (b as i128) * (b as i128);
    let divs = divisors(n.unsigned_abs());
    let c = divs[rng.random_range(0..divs.len())] as i64;
    let c = if rng.random_bool(0.5) { c } else { -c };
    RealQuadratic::new(a, b, c).expect("divisor is nonzero")
}

/// Random ambiguous triple with integral d: `a² < 3b²`.
pub fn random_ambiguous_triple(rng: &mut impl Rng, b_max: i64) -> RealQuadratic {
    let b = rng.random_range(1..=b_max);
    let mut a_max = ((3 * b * b) as f64).sqrt() as i64;
    while a_max * a_max >= 3 * b * b {
        a_max -= 1;
    }
    let a = rng.random_range(-a_max..=a_max);
    let n = (a * a - 3 * b * b).unsigned_abs() as u128;
    let divs = divisors(n);
    let c = divs[rng.random_range(0..divs.len())] as i64;
    let c = if rng.random_bool(0.5) { c } else { -c };
    RealQuadratic::new(a, b, c).expect("divisor is nonzero")
}

/// Random totally positive triple with integral d. `negative` selects the
/// representation with `a, c, d < 0`.
pub fn random_totally_positive(rng: &mut impl Rng, b_max: i64, negative: bool) -> RealQuadratic {
    let b = rng.random_range(1..=b_max);
    // smallest a with a² > 3b²
    let mut a0 = ((3 * b * b) as f64).sqrt() as i64;
    while a0 * a0 <= 3 * b * b {
        a0 += 1;
    }
    let a = a0 + rng.random_range(0..=3 * b_max);
    let n = (a * a - 3 * b * b) as u128;
    let divs = divisors(n);
    let c = divs[rng.random_range(0..divs.len())] as i64;
    if negative {
        RealQuadratic::new(-a, b, -c).expect("nonzero")
    } else {
        RealQuadratic::new(a, b, c).expect("nonzero")
    }
}

fn random_field(rng: &mut impl Rng) -> FieldElement {
    let mut r = || rational(rng.random_range(-6..=6), rng.random_range(1..=4));
    FieldElement::new(r(), r(), r(), r())
}

fn random_point(rng: &mut impl Rng) -> ProjectivePoint {
    if rng.random_range(0..8) == 0 {
        ProjectivePoint::Infinity
    } else {
        ProjectivePoint::Finite(random_field(rng))
    }
}

fn random_word(rng: &mut impl Rng) -> GeneratorWord {
    let len = rng.random_range(0..=6);
    let letters: Vec<Generator> = (0..len)
        .map(|_| Generator::ALL[rng.random_range(0..4)])
        .collect();
    GeneratorWord::from_letters(&letters)
}

/// Runs every suite. Fails only on an invalid `k_max`.
pub fn run_all(cfg: &PropertyConfig) -> Result<PropertyReport> {
    if cfg.k_max < 1 {
        return Err(Error::InvalidK(cfg.k_max));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut enumerated = Vec::new();
    for k in 1..=cfg.k_max {
        enumerated.push(enumerate(k)?);
    }
    let members: Vec<RealQuadratic> = enumerated
        .iter()
        .flat_map(|e| e.members.iter().copied())
        .collect();
    let randoms: Vec<RealQuadratic> = (0..cfg.samples)
        .map(|_| random_integral_triple(&mut rng, 60, 20))
        .collect();
    let random_ambiguous: Vec<RealQuadratic> = (0..cfg.samples)
        .map(|_| random_ambiguous_triple(&mut rng, 30))
        .collect();
    let samples: Vec<RealQuadratic> = members
        .iter()
        .chain(&randoms)
        .chain(&random_ambiguous)
        .copied()
        .collect();
    let ambiguous: Vec<RealQuadratic> = samples
        .iter()
        .copied()
        .filter(RealQuadratic::is_ambiguous)
        .collect();

    let mut suites = Vec::new();

    suites.push(run("relators", |t| {
        for check in verify_relators_with(&cfg.generators) {
            t.ensure(check.passes(), || {
                format!("{} evaluates to {}", check.name, check.value)
            })?;
        }
        Ok(())
    }));

    suites.push(run("field-arithmetic", |t| {
        for _ in 0..cfg.samples / 4 {
            let (x, y, z) = (
                random_field(&mut rng),
                random_field(&mut rng),
                random_field(&mut rng),
            );
            let w = || format!("x = {x}, y = {y}, z = {z}");
            t.ensure(&(&x * &y) * &z == &x * &(&y * &z), w)?;
            t.ensure(&x * &(&y + &z) == &(&x * &y) + &(&x * &z), w)?;
            for conj in [FieldElement::conj_over_qi, FieldElement::conj_over_qsqrt3] {
                t.ensure(conj(&(&x * &y)) == &conj(&x) * &conj(&y), w)?;
                t.ensure(conj(&conj(&x)) == x, w)?;
            }
            if !x.is_zero() {
                let inv = x.invert().map_err(|e| format!("{e} at {x}"))?;
                t.ensure(&x * &inv == FieldElement::one(), w)?;
            }
        }
        Ok(())
    }));

    suites.push(run("group-action", |t| {
        for _ in 0..cfg.samples / 4 {
            let w = random_word(&mut rng);
            let z = random_point(&mut rng);
            let m = w.matrix();
            t.ensure(w.apply(&z) == m.apply(&z), || format!("word {w} at {z}"))?;
            t.ensure(m.inverse().apply(&m.apply(&z)) == z, || {
                format!("inverse of {w} at {z}")
            })?;
        }
        Ok(())
    }));

    suites.push(run("c-images-of-totally-positive", |t| {
        for i in 0..cfg.samples.max(1000) {
            let q = random_totally_positive(&mut rng, 20, i % 2 == 1);
            if q.classify() != AmbiguityClass::TotallyPositive {
                return Err(format!("sampler produced {q} of class {}", q.classify()));
            }
            for (label, img) in [("C", q.act_c()), ("C^2", q.act_c2())] {
                t.ensure(
                    img.as_ref()
                        .is_ok_and(|v| v.classify() == AmbiguityClass::TotallyNegative),
                    || format!("{label}{q} = {}", show(&img)),
                )?;
            }
        }
        Ok(())
    }));

    suites.push(run("b-d-preserve-ambiguity", |t| {
        for q in &samples {
            let amb = q.is_ambiguous();
            for (label, img) in [("B", q.act_b()), ("D", q.act_d())] {
                t.ensure(img.as_ref().is_ok_and(|v| v.is_ambiguous() == amb), || {
                    format!(
                        "{q} ({}) maps under {label} to {}",
                        q.classify(),
                        show(&img)
                    )
                })?;
            }
        }
        Ok(())
    }));

    suites.push(run("a-images-leave-the-reals", |t| {
        for q in &ambiguous {
            let img = q.act_a_image();
            t.ensure(
                img.has_imaginary_part()
                    && RealQuadratic::extract(&img) == Err(Error::NotRealQuadratic),
                || format!("A{q} = {img}"),
            )?;
            let img2 = q.act_a2_image();
            t.ensure(img2.as_ref().is_ok_and(|v| v.has_imaginary_part()), || {
                format!("A^2{q} = {}", show(&img2))
            })?;
        }
        Ok(())
    }));

    suites.push(run("exactly-one-c-partner", |t| {
        for q in &ambiguous {
            let r = partner_with_via(q);
            t.ensure(r.is_ok(), || show(&r.map(|(p, _)| p)))?;
        }
        Ok(())
    }));

    suites.push(run("d-integrality", |t| {
        for q in &samples {
            let (a, c) = (q.a() as i128, q.c() as i128);
            let d = q.integral_d().map_err(|e| e.to_string())?;
            // raw forms, before orientation
            let raw_d = |r: Result<(i64, i64, i64)>| {
                r.ok().map(|(x, y, z)| {
                    let (x, y, z) = (x as i128, y as i128, z as i128);
                    let n = x * x - 3 * y * y;
                    if n % z == 0 {
                        Ok(n / z)
                    } else {
                        Err(Error::NonIntegralD(*q))
                    }
                })
            };
            let d_of = |r: Result<RealQuadratic>| r.ok().map(|v| v.integral_d());
            let w = |what: &str| format!("{what} at {q}");
            t.ensure(raw_d(q.act_b_raw()) == Some(Ok(c)), || w("d(B) = c"))?;
            t.ensure(raw_d(q.act_d_raw()) == Some(Ok(-c)), || w("d(D) = -c"))?;
            t.ensure(d_of(q.act_b()) == Some(Ok(-c)), || w("canonical d(B) = -c"))?;
            t.ensure(d_of(q.act_d()) == Some(Ok(c)), || w("canonical d(D) = c"))?;
            t.ensure(d_of(q.act_c()) == Some(Ok(2 * a + c + d)), || {
                w("d(C) = 2a+c+d")
            })?;
            t.ensure(d_of(q.act_c2()) == Some(Ok(c)), || w("d(C^2) = c"))?;
        }
        Ok(())
    }));

    suites.push(run("b-invariant", |t| {
        for q in &samples {
            for (label, img) in [
                ("B", q.act_b()),
                ("C", q.act_c()),
                ("C^2", q.act_c2()),
                ("D", q.act_d()),
            ] {
                t.ensure(img.as_ref().is_ok_and(|v| v.b() == q.b()), || {
                    format!("{label}{q} = {}", show(&img))
                })?;
            }
        }
        Ok(())
    }));

    suites.push(run("dc-sign", |t| {
        for q in &samples {
            let d_times_c = q.d_value() * rational(q.c(), 1);
            let neg = d_times_c < rational(0, 1);
            t.ensure(q.is_ambiguous() == neg, || {
                format!("{q}: d·c = {d_times_c}, class {}", q.classify())
            })?;
        }
        Ok(())
    }));

    suites.push(run("enumeration", |t| {
        for e in &enumerated {
            for q in &e.members {
                t.ensure(q.is_ambiguous() && q.has_integral_d(), || {
                    format!("k={}: member {q}", e.k)
                })?;
                t.ensure(e.contains(&q.conj()), || {
                    format!("k={}: conjugate of {q} missing", e.k)
                })?;
            }
            let mut all: Vec<RealQuadratic> = e.members.clone();
            all.extend(e.excluded.iter().map(|x| x.candidate));
            all.sort();
            let cands = candidate_triples(e.k).map_err(|err| err.to_string())?;
            t.ensure(all == cands, || {
                format!(
                    "k={}: members and exclusions do not cover the candidates",
                    e.k
                )
            })?;
        }
        Ok(())
    }));

    let graphs: Vec<_> = (1..=cfg.k_max).map(|k| (k, build_graph(k))).collect();

    suites.push(run("alternating-cycles", |t| {
        for (k, g) in &graphs {
            let g = g.as_ref().map_err(|e| format!("k={k}: {e}"))?;
            let r = g.structure();
            t.ensure(r.matchings.iter().all(|&m| m), || {
                format!("k={k}: {:?}", r.violations())
            })?;
            t.ensure(r.alternating_cycles, || {
                format!("k={k}: {:?}", r.violations())
            })?;
            t.notes.push(format!(
                "k={k}: {} cycles (lengths {})",
                r.cycle_lengths.len(),
                join(&r.cycle_lengths)
            ));
        }
        Ok(())
    }));

    suites.push(run("bfs-vs-enumerate", |t| {
        for e in &enumerated {
            let start = RealQuadratic::new(0, e.k, 1).expect("c = 1");
            let orbit = bfs_orbit_ambiguous(&start, cfg.bfs_limit).map_err(|err| format!("k={}: {err}", e.k))?;
            let expected: BTreeSet<RealQuadratic> = e.members.iter().copied().collect();
            let same = orbit == expected;
            let rel = if same { "==" } else { "!=" };
            t.notes.push(format!("k={}: {} {rel} {}", e.k, orbit.len(), expected.len()));
            t.ensure(same, || {
                let witness = expected.difference(&orbit).next().or(orbit.difference(&expected).next());
                format!(
                    "k={}: orbit of {} has {} ambiguous numbers, enumeration has {}; first difference {}",
                    e.k,
                    start.render(),
                    orbit.len(),
                    expected.len(),
                    witness.map(|w| w.to_string()).unwrap_or_default()
                )
            })?;
        }
        Ok(())
    }));

    suites.push(run("layers-and-connectivity", |t| {
        for (k, g) in &graphs {
            let g = g.as_ref().map_err(|e| format!("k={k}: {e}"))?;
            let r = g.structure();
            t.ensure(r.conj_permutes_layers && r.b_swaps_layers, || {
                format!("k={k}: {:?}", r.violations())
            })?;
            t.ensure(r.components == 1, || {
                let comps = g.components();
                let sizes: Vec<usize> = comps.iter().map(Vec::len).collect();
                let other = comps
                    .get(1)
                    .map(|c| g.vertices()[c[0]].to_string())
                    .unwrap_or_default();
                format!(
                    "k={k}: {} components of sizes {}; {other} is not connected to {}",
                    comps.len(),
                    join(&sizes),
                    g.vertices()[comps[0][0]]
                )
            })?;
        }
        Ok(())
    }));

    suites.push(run("oracle-equivalence", |t| {
        for (k, g) in &graphs {
            let g = g.as_ref().map_err(|e| format!("k={k}: {e}"))?;
            let n = g
                .verify_edges_via_mobius()
                .map_err(|e| format!("k={k}: {e}"))?;
            t.passed += n;
        }
        let b = Generator::B.map();
        let c = Generator::C.map();
        let d = Generator::D.map();
        let c2 = c.compose(&c);
        for q in &samples {
            for (label, map, img) in [
                ("B", &b, q.act_b()),
                ("C", &c, q.act_c()),
                ("C^2", &c2, q.act_c2()),
                ("D", &d, q.act_d()),
            ] {
                t.ensure(img.as_ref().is_ok_and(|v| same_value(map, q, v)), || {
                    format!(
                        "{label}{q}: closed form {} disagrees with {map}",
                        show(&img)
                    )
                })?;
            }
        }
        Ok(())
    }));

    Ok(PropertyReport { suites })
}

fn join(xs: &[usize]) -> String {
    xs.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}
