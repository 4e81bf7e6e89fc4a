//! Evidence collection for the two local inequalities
//!
//! ```text
//! eps(C1 ∪ C2, q) - eps(C1, q) >= 0
//! tau(C1 ∪ C2, q) <= tau(C1, q) + tau(C2, q) + 2 (C1, C2)_q - 1
//! ```
//!
//! over the corpus pairs and over seeded random pairs of branches
//! `U^p - V^q` through the origin, where `(U, V)` is a unimodular integer
//! change of the affine coordinates. Violations are data, not errors.

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::all_pairs;
use crate::incidence::rational_intersections;
use crate::local::{conjecture_check, ConjectureRecord};
use crate::poly::{same_curve, HomogeneousPoly, ProjPoint};

/// Two curves meeting at the origin `(0:0:1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchPair {
    pub label: String,
    pub f1: HomogeneousPoly,
    pub f2: HomogeneousPoly,
}

/// `U^p - V^q` with `U = a x + b y`, `V = c x + e y`, homogenized by `z`.
pub fn branch(p: u32, q: u32, m: [i64; 4]) -> HomogeneousPoly {
    let n = p.max(q);
    let s = format!(
        "({}*x + {}*y)^{p}*z^{} - ({}*x + {}*y)^{q}*z^{}",
        m[0],
        m[1],
        n - p,
        m[2],
        m[3],
        n - q
    );
    crate::parse::parse_homogeneous(&s).expect("well-formed")
}

fn unimodular(rng: &mut ChaCha8Rng) -> [i64; 4] {
    loop {
        let m: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-3..=3));
        if (m[0] * m[3] - m[1] * m[2]).abs() == 1 {
            return m;
        }
    }
}

fn exponents(rng: &mut ChaCha8Rng, irreducible: bool) -> (u32, u32) {
    loop {
        let p = rng.gen_range(1..=4u32);
        let q = rng.gen_range(p + 1..=6u32);
        let g = p.gcd(&q);
        if (g == 1) == irreducible {
            return (p, q);
        }
    }
}

/// `count` pairs of irreducible branches (`gcd(p, q) = 1`), or of reducible
/// ones (`gcd(p, q) > 1`) when `irreducible` is false.
pub fn random_branch_pairs(seed: u64, count: usize, irreducible: bool) -> Vec<BranchPair> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let (p1, q1) = exponents(&mut rng, irreducible);
        let (p2, q2) = exponents(&mut rng, irreducible);
        let (m1, m2) = (unimodular(&mut rng), unimodular(&mut rng));
        let f1 = branch(p1, q1, m1);
        let f2 = branch(p2, q2, m2);
        if same_curve(&f1, &f2) || !crate::poly::is_reduced(&f1.mul(&f2)) {
            continue;
        }
        let label = format!("({p1},{q1}){m1:?} | ({p2},{q2}){m2:?}");
        out.push(BranchPair { label, f1, f2 });
    }
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub checked: u64,
    pub conj1_violations: u64,
    pub conj2_violations: u64,
    /// Points skipped because the curves share a component there.
    pub skipped: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub group: &'static str,
    pub label: String,
    pub record: ConjectureRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub seed: u64,
    pub corpus: Counts,
    pub irreducible: Counts,
    pub reducible: Counts,
    pub violations: Vec<Violation>,
}

type Job = (String, HomogeneousPoly, HomogeneousPoly, ProjPoint);

fn run(group: &'static str, jobs: Vec<Job>, violations: &mut Vec<Violation>) -> Result<Counts> {
    let results: Vec<(String, Result<ConjectureRecord>)> =
        jobs.into_par_iter().map(|(l, f1, f2, p)| (l, conjecture_check(&f1, &f2, &p))).collect();
    let mut c = Counts::default();
    for (label, r) in results {
        let rec = match r {
            Ok(rec) => rec,
            Err(Error::SharedComponent) => {
                c.skipped += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        c.checked += 1;
        c.conj1_violations += u64::from(!rec.conj1_holds);
        c.conj2_violations += u64::from(!rec.conj2_holds);
        if !rec.conj1_holds || !rec.conj2_holds {
            violations.push(Violation { group, label, record: rec });
        }
    }
    Ok(c)
}

/// Curve and line at every rational point of `C ∩ L`, for every corpus
/// pair whose intersection points are all rational.
pub fn corpus_jobs() -> Result<Vec<Job>> {
    let mut jobs = Vec::new();
    for p in all_pairs()? {
        let Some(points) = rational_intersections(&p.f, &p.ell)? else { continue };
        for q in points {
            jobs.push((format!("{} at {q}", p.id), p.f.clone(), p.ell.to_poly(), q));
        }
    }
    Ok(jobs)
}

fn branch_jobs(pairs: Vec<BranchPair>) -> Vec<Job> {
    let origin = ProjPoint::from_ints(0, 0, 1).expect("nonzero");
    pairs.into_iter().map(|b| (b.label, b.f1, b.f2, origin.clone())).collect()
}

/// Full scan: corpus points, `n_irreducible` irreducible branch pairs and
/// `n_reducible` exploratory reducible ones.
pub fn scan(seed: u64, n_irreducible: usize, n_reducible: usize) -> Result<ConjectureReport> {
    let mut violations = Vec::new();
    let corpus = run("corpus", corpus_jobs()?, &mut violations)?;
    let irreducible = run("irreducible", branch_jobs(random_branch_pairs(seed, n_irreducible, true)), &mut violations)?;
    let reducible =
        run("reducible", branch_jobs(random_branch_pairs(seed ^ 0x5eed, n_reducible, false)), &mut violations)?;
    Ok(ConjectureReport { seed, corpus, irreducible, reducible, violations })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quasi_homogeneous_branches() {
        let origin = ProjPoint::from_ints(0, 0, 1).unwrap();
        for (p, q) in [(2, 3), (3, 4), (2, 5), (3, 5)] {
            let f = branch(p, q, [1, 1, 0, 1]);
            let l = crate::local::local_mu_tau(&f, &origin).unwrap();
            let want = ((p - 1) * (q - 1)) as u64;
            assert_eq!((l.mu, l.tau), (want, want), "({p},{q})");
        }
    }

    #[test]
    fn seeded_pairs_are_reproducible() {
        let a = random_branch_pairs(7, 5, true);
        assert_eq!(a, random_branch_pairs(7, 5, true));
        assert_ne!(a, random_branch_pairs(8, 5, true));
    }

    #[test]
    fn small_scan() {
        let r = scan(1, 10, 5).unwrap();
        assert_eq!(r.irreducible.checked + r.irreducible.skipped, 10);
        assert_eq!(r.irreducible.conj1_violations + r.irreducible.conj2_violations, 0);
    }
}
