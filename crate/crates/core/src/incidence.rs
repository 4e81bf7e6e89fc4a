//! A curve together with a line: the union `C' = C ∪ L`, `r = |C ∩ L|` and
//! the defect `eps(C, L)`.
//!
//! `eps` is computed from total Tjurina numbers. Off `L` the singularities
//! of `C` and `C'` agree. At `q ∈ C ∩ L` the union formula with `mu(L, q) = 0`
//! gives `mu(C', q) - mu(C, q) = 2 (C, L)_q - 1`, and the local intersection
//! numbers add up to `d`. Hence `mu(C') - mu(C) = 2d - r` and
//!
//! ```text
//! eps(C, L) = sum_q [eps(C', q) - eps(C, q)] = 2d - r - (tau(C') - tau(C)).
//! ```

use serde::Serialize;

use crate::error::{Error, Result};
use crate::jacobian::total_tjurina;
use crate::local;
use crate::poly::{divide_exact, is_reduced, restrict_to_line, HomogeneousPoly, LinearForm, ProjPoint};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveLinePair {
    #[serde(serialize_with = "as_text")]
    pub f: HomogeneousPoly,
    #[serde(serialize_with = "as_text")]
    pub ell: LinearForm,
    #[serde(serialize_with = "as_text")]
    pub f_union: HomogeneousPoly,
    pub r: u32,
    pub epsilon: i64,
    pub tau: u64,
    pub tau_union: u64,
}

fn as_text<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn component_check(f: &HomogeneousPoly, ell: &LinearForm) -> Result<crate::poly::LineRestriction> {
    restrict_to_line(f, ell).map_err(|e| match e {
        Error::ZeroRestriction => Error::LineIsComponent,
        e => e,
    })
}

/// `2d - r - (tau(C') - tau(C))`. Negative values would contradict the
/// first conjectural inequality and are returned as is.
pub fn epsilon_global(f: &HomogeneousPoly, ell: &LinearForm) -> Result<i64> {
    Ok(make_pair(f, ell)?.epsilon)
}

pub fn make_pair(f: &HomogeneousPoly, ell: &LinearForm) -> Result<CurveLinePair> {
    let res = component_check(f, ell)?;
    if !is_reduced(f) {
        return Err(Error::NotReduced);
    }
    let f_union = f.mul(&ell.to_poly());
    let r = res.distinct_roots();
    let (tau, tau_union) = rayon::join(|| total_tjurina(f), || total_tjurina(&f_union));
    let (tau, tau_union) = (tau?, tau_union?);
    let d = f.degree() as i64;
    let epsilon = 2 * d - r as i64 - (tau_union as i64 - tau as i64);
    Ok(CurveLinePair { f: f.clone(), ell: ell.clone(), f_union, r, epsilon, tau, tau_union })
}

/// Removes the line from `C'`.
pub fn delete_line(f_union: &HomogeneousPoly, ell: &LinearForm) -> Result<CurveLinePair> {
    let f = divide_exact(f_union, ell)?;
    if divide_exact(&f, ell).is_ok() {
        return Err(Error::NotReduced);
    }
    make_pair(&f, ell)
}

/// Per-point data on `C ∩ L`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointBreakdown {
    pub point: String,
    pub intersection: u64,
    pub eps_q: i64,
}

/// `eps_q` at every point of `C ∩ L`, or `None` if some point is not
/// rational.
pub fn local_breakdown(pair: &CurveLinePair) -> Result<Option<Vec<PointBreakdown>>> {
    let res = component_check(&pair.f, &pair.ell)?;
    let Some((pts, all_rational)) = res.rational_points() else {
        return Ok(None);
    };
    if !all_rational {
        return Ok(None);
    }
    let line = pair.ell.to_poly();
    let mut out = Vec::with_capacity(pts.len());
    for (p, _) in &pts {
        let rec = local::conjecture_check(&pair.f, &line, p)?;
        out.push(PointBreakdown { point: p.to_string(), intersection: rec.intersection, eps_q: rec.eps_q });
    }
    Ok(Some(out))
}

/// Points of `C ∩ L` when all are rational.
pub fn rational_intersections(f: &HomogeneousPoly, ell: &LinearForm) -> Result<Option<Vec<ProjPoint>>> {
    let res = component_check(f, ell)?;
    Ok(match res.rational_points() {
        Some((pts, true)) => Some(pts.into_iter().map(|(p, _)| p).collect()),
        _ => None,
    })
}
