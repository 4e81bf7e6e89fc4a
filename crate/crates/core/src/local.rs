//! Local invariants of plane curve singularities at rational points.
//!
//! Everything reduces to colengths `dim Q[u,v] / (I + m^N)` of ideals in a
//! translated affine chart, computed as `dim R/m^N` minus the rank of the
//! truncated multiples of the generators. When the values at `N` and `N + 1`
//! agree, Nakayama gives `m^N ⊂ I` in the local ring, so the value is the
//! local colength at the origin.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Echelon, IntRow};
use crate::poly::{HomogeneousPoly, Poly, ProjPoint};

const START_ORDER: u32 = 4;

/// Dehomogenizes at the coordinate of largest magnitude and moves `p` to
/// the origin of the `(u, v)` chart.
pub fn local_chart(f: &HomogeneousPoly, p: &ProjPoint) -> Poly {
    let c = p.coords();
    let i = (0..3).fold(0, |best, j| if c[j].abs() > c[best].abs() { j } else { best });
    let mut slot = 0;
    let subs: [Poly; 3] = std::array::from_fn(|j| {
        if j == i {
            Poly::one()
        } else {
            let t = &Poly::constant(&c[j] / &c[i]) + &Poly::var(slot);
            slot += 1;
            t
        }
    });
    f.poly().compose(&subs)
}

fn mono_index(a: u32, b: u32) -> usize {
    let k = (a + b) as usize;
    k * (k + 1) / 2 + b as usize
}

/// `dim Q[u,v] / (I + m^n)`, generators in the `x, y` slots.
pub(crate) fn truncated_colength(gens: &[Poly], n: u32) -> u64 {
    let cols = mono_index(n, 0) as u64;
    let mut ech = Echelon::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let g = g.primitive_integer();
        let ord = g.min_degree().expect("nonzero");
        if ord >= n {
            continue;
        }
        let terms: Vec<([u32; 3], num_bigint::BigInt)> =
            g.terms().map(|(e, c)| (*e, c.to_integer())).collect();
        for k in 0..n - ord {
            for b in 0..=k {
                let a = k - b;
                let mut row: IntRow = terms
                    .iter()
                    .filter(|(e, _)| e[0] + e[1] + k < n)
                    .map(|(e, c)| (mono_index(e[0] + a, e[1] + b), c.clone()))
                    .collect();
                row.sort_by_key(|t| t.0);
                ech.insert(row);
            }
        }
    }
    cols - ech.rank() as u64
}

/// Local colength at the origin, or `None` if no stabilization up to `cap`.
fn local_colength(gens: &[Poly], cap: u32) -> Option<u64> {
    let mut n = START_ORDER.min(cap);
    loop {
        let a = truncated_colength(gens, n);
        if a == truncated_colength(gens, n + 1) {
            return Some(a);
        }
        if n >= cap {
            return None;
        }
        n = (2 * n).min(cap);
    }
}

/// Milnor and Tjurina numbers at a point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalInvariants {
    pub point: String,
    pub mu: u64,
    pub tau: u64,
    /// `mu - tau`.
    pub epsilon_local: u64,
    pub quasi_homogeneous: bool,
}

fn on_curve(f: &HomogeneousPoly, p: &ProjPoint) -> bool {
    f.eval(p.coords()).is_zero()
}

pub fn local_mu_tau(f: &HomogeneousPoly, p: &ProjPoint) -> Result<LocalInvariants> {
    if !on_curve(f, p) {
        return Err(Error::PointNotOnCurve);
    }
    let d = f.degree();
    let cap = (d.max(1) - 1).pow(2) + 2;
    let g = local_chart(f, p);
    let (gu, gv) = (g.derivative(0), g.derivative(1));
    let mu = local_colength(&[gu.clone(), gv.clone()], cap).ok_or(Error::NonIsolated { cap })?;
    let tau = local_colength(&[g, gu, gv], cap).ok_or(Error::NonIsolated { cap })?;
    debug_assert!(tau <= mu);
    Ok(LocalInvariants {
        point: p.to_string(),
        mu,
        tau,
        epsilon_local: mu - tau,
        quasi_homogeneous: mu == tau,
    })
}

/// `(C1, C2)_p`.
pub fn intersection_multiplicity(f1: &HomogeneousPoly, f2: &HomogeneousPoly, p: &ProjPoint) -> Result<u64> {
    if !on_curve(f1, p) || !on_curve(f2, p) {
        return Err(Error::PointNotOnCurve);
    }
    let cap = f1.degree() * f2.degree() + 2;
    local_colength(&[local_chart(f1, p), local_chart(f2, p)], cap).ok_or(Error::SharedComponent)
}

/// The union formula `mu(C1 ∪ C2) = mu(C1) + mu(C2) + 2 (C1,C2) - 1`, all
/// terms computed independently.
pub fn mu_union_check(f1: &HomogeneousPoly, f2: &HomogeneousPoly, p: &ProjPoint) -> Result<bool> {
    let i = intersection_multiplicity(f1, f2, p)?;
    let a = local_mu_tau(f1, p)?.mu;
    let b = local_mu_tau(f2, p)?.mu;
    let u = local_mu_tau(&f1.mul(f2), p)?.mu;
    Ok(u + 1 == a + b + 2 * i)
}

/// Evidence for the two conjectural local inequalities at one point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureRecord {
    pub point: String,
    pub first: LocalInvariants,
    pub second: LocalInvariants,
    pub union: LocalInvariants,
    pub intersection: u64,
    /// `eps(C1 ∪ C2, p) - eps(C1, p)`.
    pub eps_q: i64,
    /// `eps_q >= 0`.
    pub conj1_holds: bool,
    /// `tau(C1 ∪ C2) <= tau(C1) + tau(C2) + 2 (C1,C2) - 1`.
    pub conj2_holds: bool,
}

pub fn conjecture_check(f1: &HomogeneousPoly, f2: &HomogeneousPoly, p: &ProjPoint) -> Result<ConjectureRecord> {
    let intersection = intersection_multiplicity(f1, f2, p)?;
    let first = local_mu_tau(f1, p)?;
    let second = local_mu_tau(f2, p)?;
    let union = local_mu_tau(&f1.mul(f2), p)?;
    let eps_q = union.epsilon_local as i64 - first.epsilon_local as i64;
    let conj2_holds = union.tau < first.tau + second.tau + 2 * intersection;
    Ok(ConjectureRecord {
        point: p.to_string(),
        first,
        second,
        union,
        intersection,
        eps_q,
        conj1_holds: eps_q >= 0,
        conj2_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_homogeneous;

    fn h(s: &str) -> HomogeneousPoly {
        parse_homogeneous(s).unwrap()
    }

    fn pt(x: i64, y: i64, z: i64) -> ProjPoint {
        ProjPoint::from_ints(x, y, z).unwrap()
    }

    #[test]
    fn truncated_colengths_of_simple_singularities() {
        let p = |s: &str| crate::parse::parse_poly(s).unwrap();
        // A_k: x^2 + y^(k+1), gradient (2x, (k+1) y^k)
        for k in 1..6u32 {
            let g = [p("2*x"), p(&format!("{}*y^{}", k + 1, k))];
            assert_eq!(truncated_colength(&g, 2 * k + 2), k as u64);
        }
        assert_eq!(truncated_colength(&[p("3*x^2"), p("4*y^3")], 10), 6);
        // a unit generates everything, a far-away point is invisible
        assert_eq!(truncated_colength(&[p("1 + x")], 6), 0);
        assert_eq!(truncated_colength(&[p("x - 1"), p("y")], 7), 0);
        assert_eq!(truncated_colength(&[p("x*y")], 3), 5);
    }

    #[test]
    fn cusp_and_smooth_points() {
        let cusp = h("x^2*z - y^3");
        let l = local_mu_tau(&cusp, &pt(0, 0, 1)).unwrap();
        assert_eq!((l.mu, l.tau, l.quasi_homogeneous), (2, 2, true));
        let s = local_mu_tau(&h("x*z - y^2"), &pt(0, 0, 1)).unwrap();
        assert_eq!((s.mu, s.tau), (0, 0));
        assert_eq!(local_mu_tau(&cusp, &pt(1, 2, 1)), Err(Error::PointNotOnCurve));
    }

    #[test]
    fn chart_picks_largest_coordinate() {
        // y and x+y-z cross at (1:0:1)
        let f = h("x*y*(x+y-z)");
        let l = local_mu_tau(&f, &pt(1, 0, 1)).unwrap();
        assert_eq!(l.mu, 1);
        let l = local_mu_tau(&f, &pt(0, 0, 1)).unwrap();
        assert_eq!(l.mu, 1);
    }

    #[test]
    fn non_quasi_homogeneous_point() {
        let f = h("x*z*(x-z)*(x*y-z^2)");
        let l = local_mu_tau(&f, &pt(0, 1, 0)).unwrap();
        assert_eq!((l.mu, l.tau), (11, 10));
    }

    #[test]
    fn intersections() {
        assert_eq!(intersection_multiplicity(&h("x"), &h("y"), &pt(0, 0, 1)).unwrap(), 1);
        assert_eq!(intersection_multiplicity(&h("x*y-z^2"), &h("y"), &pt(1, 0, 0)).unwrap(), 2);
        assert_eq!(
            intersection_multiplicity(&h("x*y"), &h("x*z"), &pt(0, 0, 1)),
            Err(Error::SharedComponent)
        );
    }

    #[test]
    fn union_formula_and_conjectures() {
        assert!(mu_union_check(&h("x"), &h("y"), &pt(0, 0, 1)).unwrap());
        assert!(mu_union_check(&h("x*y-z^2"), &h("y"), &pt(1, 0, 0)).unwrap());
        let tac = local_mu_tau(&h("(x*y-z^2)*y"), &pt(1, 0, 0)).unwrap();
        assert_eq!(tac.mu, 3);
        let rec = conjecture_check(&h("x*z*(x*y-z^2)"), &h("x-z"), &pt(0, 1, 0)).unwrap();
        assert_eq!(rec.eps_q, 1);
        assert!(rec.conj1_holds && rec.conj2_holds);
        assert!(mu_union_check(&h("x*z*(x*y-z^2)"), &h("x-z"), &pt(0, 1, 0)).unwrap());
        let node = conjecture_check(&h("x"), &h("y"), &pt(0, 0, 1)).unwrap();
        assert_eq!(node.eps_q, 0);
    }
}
