//! Ambiguous numbers `(a + k√3)/c` for a fixed `k`.
//!
//! A candidate has `a² < 3k²` and `c | a² - 3k²` (both signs of `c`).
//! A candidate is dropped when some common factor `g > 1` of `(a, k, c)`
//! scales it down to `(a/g, k/g, c/g)` that still has an integral d-value:
//! it then lies on a closed path for the smaller coefficient `k/g`.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadratic::RealQuadratic;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathMembership {
    KeepInK,
    /// The candidate belongs to a path of coefficient `m < k`; `reduced` is its
    /// representation there.
    BelongsTo {
        m: i64,
        reduced: RealQuadratic,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exclusion {
    pub candidate: RealQuadratic,
    pub reduced: RealQuadratic,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationResult {
    pub k: i64,
    /// Sorted by `(a, c)`.
    pub members: Vec<RealQuadratic>,
    pub excluded: Vec<Exclusion>,
}

fn check_k(k: i64) -> Result<()> {
    if k < 1 {
        Err(Error::InvalidK(k))
    } else {
        Ok(())
    }
}

/// Positive divisors of `n`, ascending.
pub fn divisors(n: u128) -> Vec<u128> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut x = 1u128;
    while x * x <= n {
        if n.is_multiple_of(x) {
            small.push(x);
            if x * x != n {
                large.push(n / x);
            }
        }
        x += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Largest `a ≥ 0` with `a² < 3k²`.
fn a_bound(k: i64) -> i64 {
    let limit = 3 * (k as i128) * (k as i128);
    let mut a = (limit as f64).sqrt() as i128;
    while a * a >= limit {
        a -= 1;
    }
    while (a + 1) * (a + 1) < limit {
        a += 1;
    }
    a as i64
}

/// All `(a, k, c)` with `a² < 3k²` and `c` a positive or negative divisor of `a² - 3k²`.
pub fn candidate_triples(k: i64) -> Result<Vec<RealQuadratic>> {
    check_k(k)?;
    let bound = a_bound(k);
    let mut out = Vec::new();
    for a in -bound..=bound {
        let n = (a as i128) * (a as i128) - 3 * (k as i128) * (k as i128);
        for c in divisors(n.unsigned_abs()) {
            let c = i64::try_from(c).map_err(|_| Error::Overflow(format!("divisor of {n}")))?;
            out.push(RealQuadratic::new(a, k, -c)?);
            out.push(RealQuadratic::new(a, k, c)?);
        }
    }
    out.sort();
    Ok(out)
}

/// Decides whether a candidate for coefficient `k = q.b()` actually lies on a
/// path with a smaller coefficient.
///
/// Every common factor `g > 1` of `(a, k, c)` is tried, largest first; the first
/// whose reduction `(a/g, k/g, c/g)` has an integral d-value decides.
pub fn belongs_to_smaller_path(q: &RealQuadratic) -> PathMembership {
    let g = q.gcd();
    if g <= 1 {
        return PathMembership::KeepInK;
    }
    for h in divisors(g as u128).into_iter().rev() {
        let h = h as i64;
        if h == 1 {
            break;
        }
        let reduced = RealQuadratic::new(q.a() / h, q.b() / h, q.c() / h).expect("c/h is nonzero");
        if reduced.has_integral_d() {
            return PathMembership::BelongsTo {
                m: reduced.b(),
                reduced,
            };
        }
    }
    PathMembership::KeepInK
}

pub fn enumerate(k: i64) -> Result<EnumerationResult> {
    let mut members = Vec::new();
    let mut excluded = Vec::new();
    for q in candidate_triples(k)? {
        match belongs_to_smaller_path(&q) {
            PathMembership::KeepInK => members.push(q),
            PathMembership::BelongsTo { m, reduced } => {
                let factor = q.b() / m;
                let reason = format!(
                    "divides by {factor} to {reduced}, and {} divides {}",
                    reduced.c(),
                    reduced.norm_numerator()
                );
                excluded.push(Exclusion {
                    candidate: q,
                    reduced,
                    reason,
                });
            }
        }
    }
    members.sort();
    Ok(EnumerationResult {
        k,
        members,
        excluded,
    })
}

impl EnumerationResult {
    pub fn count(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, q: &RealQuadratic) -> bool {
        self.members.binary_search(q).is_ok()
    }

    /// Kept values of `c` for a given `a`, ascending.
    pub fn kept_c_for(&self, a: i64) -> Vec<i64> {
        let mut cs: Vec<i64> = self
            .members
            .iter()
            .filter(|q| q.a() == a)
            .map(|q| q.c())
            .collect();
        cs.sort_unstable();
        cs
    }

    pub fn exclusion_for(&self, q: &RealQuadratic) -> Option<&Exclusion> {
        self.excluded.iter().find(|e| e.candidate == *q)
    }
}

#[derive(Serialize)]
struct MemberRow {
    a: i64,
    b: i64,
    c: i64,
    d: String,
    value: String,
}

#[derive(Serialize)]
struct EnumerationJson<'a> {
    k: i64,
    count: usize,
    members: Vec<MemberRow>,
    excluded: &'a [Exclusion],
}

impl EnumerationResult {
    pub fn to_json(&self) -> String {
        let doc = EnumerationJson {
            k: self.k,
            count: self.count(),
            members: self
                .members
                .iter()
                .map(|q| MemberRow {
                    a: q.a(),
                    b: q.b(),
                    c: q.c(),
                    d: q.d_value().to_string(),
                    value: q.render(),
                })
                .collect(),
            excluded: &self.excluded,
        };
        serde_json::to_string_pretty(&doc).expect("plain data serialises")
    }
}

impl fmt::Display for EnumerationResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "k: {}", self.k)?;
        writeln!(f, "count: {}", self.count())?;
        writeln!(f, "{:>6} {:>8} {:>8}  value", "a", "c", "d")?;
        for q in &self.members {
            writeln!(
                f,
                "{:>6} {:>8} {:>8}  {}",
                q.a(),
                q.c(),
                q.d_value(),
                q.render()
            )?;
        }
        if !self.excluded.is_empty() {
            writeln!(f, "excluded: {}", self.excluded.len())?;
            for e in &self.excluded {
                writeln!(
                    f,
                    "  {} {}: {}",
                    e.candidate,
                    e.candidate.render(),
                    e.reason
                )?;
            }
        }
        Ok(())
    }
}

/// Greatest common divisor of `(a, k, c)`, with `gcd(0, x, y) = gcd(x, y)`.
pub fn gcd3(a: i64, k: i64, c: i64) -> i64 {
    a.gcd(&k).gcd(&c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadratic::rq;
    use std::collections::BTreeSet;

    /// Brute force: scan a box of (a, c) and keep what the two conditions allow.
    fn brute_candidates(k: i64) -> BTreeSet<RealQuadratic> {
        let n_max = 3 * k * k;
        let mut out = BTreeSet::new();
        for a in -2 * k..=2 * k {
            for c in -n_max..=n_max {
                if c != 0 && a * a < 3 * k * k && (a * a - 3 * k * k) % c == 0 {
                    out.insert(rq(a, k, c));
                }
            }
        }
        out
    }

    #[test]
    fn candidates_match_brute_force() {
        for k in 1..=6 {
            let fast: BTreeSet<_> = candidate_triples(k).unwrap().into_iter().collect();
            assert_eq!(fast, brute_candidates(k), "k = {k}");
        }
    }

    fn cs_for(cands: &[RealQuadratic], a: i64) -> Vec<i64> {
        let mut cs: Vec<i64> = cands.iter().filter(|q| q.a() == a).map(|q| q.c()).collect();
        cs.sort_unstable();
        cs
    }

    #[test]
    fn candidate_examples() {
        let k2 = candidate_triples(2).unwrap();
        assert_eq!(cs_for(&k2, 0), [-12, -6, -4, -3, -2, -1, 1, 2, 3, 4, 6, 12]);
        assert_eq!(cs_for(&k2, 1), [-11, -1, 1, 11]);
        assert_eq!(cs_for(&k2, -1), [-11, -1, 1, 11]);
        let k1 = candidate_triples(1).unwrap();
        assert_eq!(cs_for(&k1, 0), [-3, -1, 1, 3]);
        assert_eq!(candidate_triples(0), Err(Error::InvalidK(0)));
        assert_eq!(enumerate(-3).unwrap_err(), Error::InvalidK(-3));
    }

    #[test]
    fn membership_examples() {
        assert_eq!(
            belongs_to_smaller_path(&rq(0, 2, 6)),
            PathMembership::BelongsTo {
                m: 1,
                reduced: rq(0, 1, 3)
            }
        );
        assert_eq!(
            belongs_to_smaller_path(&rq(2, 2, 2)),
            PathMembership::BelongsTo {
                m: 1,
                reduced: rq(1, 1, 1)
            }
        );
        assert_eq!(
            belongs_to_smaller_path(&rq(0, 2, 4)),
            PathMembership::KeepInK
        );
        assert_eq!(
            belongs_to_smaller_path(&rq(1, 2, 11)),
            PathMembership::KeepInK
        );
    }

    #[test]
    fn intermediate_factor_is_checked() {
        // The full gcd 4 gives (0,1,2) with non-integral d, but 2 gives (0,2,4),
        // a member of the k = 2 path.
        assert_eq!(
            belongs_to_smaller_path(&rq(0, 4, 8)),
            PathMembership::BelongsTo {
                m: 2,
                reduced: rq(0, 2, 4)
            }
        );
    }

    #[test]
    fn k2_has_32_members() {
        let e = enumerate(2).unwrap();
        assert_eq!(e.count(), 32);
        assert_eq!(e.kept_c_for(0), [-12, -4, -3, -1, 1, 3, 4, 12]);
        assert_eq!(e.kept_c_for(1), [-11, -1, 1, 11]);
        assert_eq!(e.kept_c_for(-1), [-11, -1, 1, 11]);
        assert_eq!(e.kept_c_for(2), [-8, -1, 1, 8]);
        assert_eq!(e.kept_c_for(-3), [-3, -1, 1, 3]);
        assert!(e.exclusion_for(&rq(0, 2, 6)).is_some());
        assert!(e.exclusion_for(&rq(0, 2, -2)).is_some());
        assert!(e.exclusion_for(&rq(-2, 2, -4)).is_some());
    }

    #[test]
    fn k1_member_set() {
        let e = enumerate(1).unwrap();
        let expected: BTreeSet<_> = [
            (0, 1),
            (0, -1),
            (0, 3),
            (0, -3),
            (1, 1),
            (1, -1),
            (1, 2),
            (1, -2),
            (-1, 1),
            (-1, -1),
            (-1, 2),
            (-1, -2),
        ]
        .into_iter()
        .map(|(a, c)| rq(a, 1, c))
        .collect();
        assert_eq!(e.members.iter().copied().collect::<BTreeSet<_>>(), expected);
        assert!(e.excluded.is_empty());
    }

    #[test]
    fn members_satisfy_conditions_and_partition_candidates() {
        for k in 1..=8 {
            let e = enumerate(k).unwrap();
            for q in &e.members {
                assert!(q.is_ambiguous(), "{q}");
                assert!(q.has_integral_d(), "{q}");
                assert_eq!(q.b(), k);
            }
            let mut all: Vec<_> = e.members.clone();
            all.extend(e.excluded.iter().map(|x| x.candidate));
            all.sort();
            assert_eq!(all, candidate_triples(k).unwrap());
            for x in &e.excluded {
                assert!(x.reduced.b() < k);
                assert!(x.reduced.has_integral_d());
            }
            let w = e.members.windows(2).all(|w| w[0] < w[1]);
            assert!(w, "members sorted and distinct for k = {k}");
        }
    }

    #[test]
    fn prime_k_only_drops_multiples_of_k() {
        for k in [2, 3, 5, 7, 11] {
            let e = enumerate(k).unwrap();
            for x in &e.excluded {
                assert_eq!(gcd3(x.candidate.a(), k, x.candidate.c()), k);
            }
        }
    }

    #[test]
    fn json_shape() {
        let v: serde_json::Value = serde_json::from_str(&enumerate(2).unwrap().to_json()).unwrap();
        assert_eq!(v["k"], 2);
        assert_eq!(v["count"], 32);
        assert_eq!(v["members"].as_array().unwrap().len(), 32);
        assert_eq!(v["excluded"].as_array().unwrap().len(), 12);
        assert_eq!(v["members"][0]["d"], "1");
    }

    #[test]
    fn divisor_helper() {
        assert_eq!(divisors(12), [1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), [1]);
        assert_eq!(divisors(49), [1, 7, 49]);
        assert_eq!(a_bound(1), 1);
        assert_eq!(a_bound(2), 3);
        assert_eq!(a_bound(4), 6);
    }
}
