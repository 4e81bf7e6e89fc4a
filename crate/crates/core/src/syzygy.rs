//! The module of Jacobian syzygies `D0(f)`: graded pieces, minimal
//! generator degrees and the free / plus-one generated classification.
//!
//! Generators are found by scanning degrees upward. In degree `k`,
//! `dim D0(f)_k` is the kernel dimension of the Macaulay map
//! `S_k^3 -> S_{k+d-1}` and the span of earlier generators is the rank of
//! their monomial multiples. A modular rank sandwich
//!
//! ```text
//! rank_p(multiples) <= rank(multiples) <= dim D0_k <= cols - rank_p(M_k)
//! ```
//!
//! settles degrees without new generators; otherwise the exact kernel is
//! computed and new generators are taken from it.
//!
//! The scan stops at a certified degree. With two generators whose cross
//! product is nonzero, or three such with their single relation in degree
//! `e`, the generated submodule `U` has a known resolution and is reflexive.
//! `D0(f)` is reflexive as well, so `U = D0(f)` as soon as their Hilbert
//! polynomials agree; the Hilbert polynomial of `D0(f)` depends only on `d`
//! and the total Tjurina number.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::jacobian::{saturation_chart, SaturationChart};
use crate::linalg::{self, Echelon, IntRow, Scalar, FILTER_PRIME};
use crate::poly::{binom2, dim_s, monomial_basis, monomial_index, partials, HomogeneousPoly, Poly};

/// A triple `(a, b, c)` of forms of one degree with `a f_x + b f_y + c f_z = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygyVector {
    pub degree: u32,
    pub components: [HomogeneousPoly; 3],
}

impl SyzygyVector {
    fn from_coords(k: u32, v: &IntRow) -> Self {
        let basis = monomial_basis(k);
        let n = basis.len();
        let mut polys = [Poly::zero(), Poly::zero(), Poly::zero()];
        for (c, val) in v {
            polys[c / n].add_term(basis[c % n], Scalar::from_integer(val.clone()));
        }
        let components = polys.map(|p| HomogeneousPoly::with_degree(p, k).expect("homogeneous by construction"));
        SyzygyVector { degree: k, components }
    }

    /// `a f_x + b f_y + c f_z`.
    pub fn apply(&self, f: &HomogeneousPoly) -> Poly {
        let p = partials(f);
        let mut acc = Poly::zero();
        for i in 0..3 {
            acc = &acc + &(self.components[i].poly() * p[i].poly());
        }
        acc
    }

    /// Cross product `(b c' - c b', c a' - a c', a b' - b a')`.
    pub fn cross(&self, other: &SyzygyVector) -> [Poly; 3] {
        let [a, b, c] = self.components.each_ref().map(|h| h.poly());
        let [a2, b2, c2] = other.components.each_ref().map(|h| h.poly());
        [&(b * c2) - &(c * b2), &(c * a2) - &(a * c2), &(a * b2) - &(b * a2)]
    }
}

impl fmt::Display for SyzygyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.components[0], self.components[1], self.components[2])
    }
}

/// Free / plus-one generated / other.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Classification {
    Free { d1: u32, d2: u32 },
    PlusOneGenerated { d1: u32, d2: u32, d3: u32, nearly_free: bool },
    MSyzygy { m: u32 },
}

impl Classification {
    /// Label used in machine-readable output.
    pub fn label(&self) -> &'static str {
        match self {
            Classification::Free { .. } => "free",
            Classification::PlusOneGenerated { nearly_free: true, .. } => "nearly_free",
            Classification::PlusOneGenerated { .. } => "plus_one_generated",
            Classification::MSyzygy { .. } => "m_syzygy",
        }
    }

    pub fn is_free(&self) -> bool {
        matches!(self, Classification::Free { .. })
    }

    /// `d3` for plus-one generated curves.
    pub fn level(&self) -> Option<u32> {
        match self {
            Classification::PlusOneGenerated { d3, .. } => Some(*d3),
            _ => None,
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Free { d1, d2 } => write!(f, "Free({d1},{d2})"),
            Classification::PlusOneGenerated { d1, d2, d3, nearly_free } => {
                write!(f, "{}({d1},{d2},{d3})", if *nearly_free { "NearlyFree" } else { "PlusOneGenerated" })
            }
            Classification::MSyzygy { m } => write!(f, "MSyzygy({m})"),
        }
    }
}

/// How completeness of the generator list was established.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    /// Reflexive submodule with matching Hilbert polynomial (exact).
    Reflexive,
    /// Two quiet degrees at the scan bound, no structural argument.
    ScanOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    /// Last scanned degree.
    pub scanned_to: u32,
    /// Degree of the relation among three generators.
    pub relation_degree: Option<u32>,
    pub tau_total: u64,
    /// Degrees settled by the modular sandwich without rational elimination.
    pub modular_degrees: Vec<u32>,
}

/// Generator degrees of `D0(f)` and the derived classification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygyProfile {
    pub degree: u32,
    pub generator_degrees: Vec<u32>,
    pub generators: Vec<SyzygyVector>,
    pub classification: Classification,
    /// `dim D0(f)_k` for `0 <= k <= certificate.scanned_to`.
    pub scanned_dims: Vec<u64>,
    /// Number of new generators per scanned degree.
    pub new_generators: Vec<u32>,
    pub complete: bool,
    pub certificate: Certificate,
}

impl SyzygyProfile {
    pub fn m(&self) -> usize {
        self.generator_degrees.len()
    }

    pub fn mdr(&self) -> u32 {
        self.generator_degrees[0]
    }

    /// `(d1, d2)` of a free curve.
    pub fn free_exponents(&self) -> Option<(u32, u32)> {
        match self.classification {
            Classification::Free { d1, d2 } => Some((d1, d2)),
            _ => None,
        }
    }

    /// `dim D0(f)_k`: scanned where available, otherwise from the resolution
    /// of a reflexively certified profile.
    pub fn d0_dim(&self, k: i64) -> Option<u64> {
        if k < 0 {
            return Some(0);
        }
        if let Some(v) = self.scanned_dims.get(k as usize) {
            return Some(*v);
        }
        if self.certificate.kind != CertificateKind::Reflexive {
            return None;
        }
        Some(resolution_hf(&self.generator_degrees, self.certificate.relation_degree, k) as u64)
    }
}

/// `sum C(k - d_i + 2, 2) - C(k - e + 2, 2)`.
fn resolution_hf(degs: &[u32], rel: Option<u32>, k: i64) -> i64 {
    let mut v: i64 = degs.iter().map(|&di| dim_s(k - di as i64)).sum();
    if let Some(e) = rel {
        v -= dim_s(k - e as i64);
    }
    v
}

/// Hilbert polynomial of `D0(f)`: `3 C(t+2,2) - C(t+d+1,2) + tau`.
pub fn hilbert_polynomial(d: u32, tau: u64, t: i64) -> i64 {
    3 * binom2(t + 2) - binom2(t + d as i64 + 1) + tau as i64
}

/// Rows of the map `S_k^3 -> S_{k+d-1}`, one per target monomial, columns
/// indexed by `(component, monomial)`.
fn syzygy_rows(f: &HomogeneousPoly, k: u32) -> (Vec<IntRow>, usize) {
    let d = f.degree();
    let src = monomial_basis(k);
    let n = src.len();
    let cols = 3 * n;
    let target = dim_s((k + d) as i64 - 1) as usize;
    let mut rows: Vec<IntRow> = vec![Vec::new(); target];
    // one common scaling keeps the kernel unchanged
    let fi = HomogeneousPoly::with_degree(f.poly().primitive_integer(), d).expect("same degree");
    for (i, g) in partials(&fi).iter().enumerate() {
        let gi = g.poly();
        for (j, m) in src.iter().enumerate() {
            for (e, c) in gi.terms() {
                let t = monomial_index(&[e[0] + m[0], e[1] + m[1], e[2] + m[2]]);
                rows[t].push((i * n + j, c.to_integer()));
            }
        }
    }
    for r in rows.iter_mut() {
        r.sort_by_key(|t| t.0);
    }
    rows.retain(|r| !r.is_empty());
    (rows, cols)
}

fn filter_enabled() -> bool {
    !matches!(std::env::var("SYZ_PRIME_FILTER").as_deref(), Ok("off") | Ok("OFF") | Ok("0"))
}

/// Basis of `D0(f)_k` in reduced echelon normal form.
pub fn syzygy_space(f: &HomogeneousPoly, k: u32) -> Vec<SyzygyVector> {
    let (rows, cols) = syzygy_rows(f, k);
    linalg::kernel_of_int_rows(rows, cols)
        .iter()
        .map(|v| SyzygyVector::from_coords(k, &linalg::int_row_from_scalars(v)))
        .collect()
}

/// `dim D0(f)_k`.
pub fn syzygy_dim(f: &HomogeneousPoly, k: u32) -> u64 {
    let (rows, cols) = syzygy_rows(f, k);
    if filter_enabled() && linalg::rank_int_rows_mod_p(&rows, cols, FILTER_PRIME) == cols {
        return 0;
    }
    (cols - linalg::rank_int_rows(rows)) as u64
}

/// Smallest `k` with `D0(f)_k != 0`.
pub fn mdr(f: &HomogeneousPoly) -> u32 {
    // the Koszul syzygies live in degree d-1
    (0..).find(|&k| syzygy_dim(f, k) > 0).expect("Koszul syzygies exist")
}

/// Coordinates of `mono * g` in `S_k^3`.
fn shift(g: &IntRow, from: u32, mono: &[u32; 3], k: u32) -> IntRow {
    let src = monomial_basis(from);
    let n_from = src.len();
    let n_to = dim_s(k as i64) as usize;
    let mut out: IntRow = g
        .iter()
        .map(|(c, v)| {
            let e = src[c % n_from];
            let t = monomial_index(&[e[0] + mono[0], e[1] + mono[1], e[2] + mono[2]]);
            ((c / n_from) * n_to + t, v.clone())
        })
        .collect();
    out.sort_by_key(|t| t.0);
    out
}

fn cross_nonzero(a: &SyzygyVector, b: &SyzygyVector) -> bool {
    a.cross(b).iter().any(|p| !p.is_zero())
}

/// Scan state shared by the bound-doubling driver.
struct Scan {
    gens: Vec<(u32, IntRow)>,
    dims: Vec<u64>,
    news: Vec<u32>,
    modular: Vec<u32>,
}

impl Scan {
    fn step(&mut self, f: &HomogeneousPoly, k: u32) {
        let (rows, cols) = syzygy_rows(f, k);
        let mults: Vec<IntRow> = self
            .gens
            .iter()
            .filter(|(dg, _)| *dg <= k)
            .flat_map(|(dg, g)| monomial_basis(k - dg).into_iter().map(move |m| shift(g, *dg, &m, k)))
            .collect();
        if filter_enabled() {
            let upper = cols - linalg::rank_int_rows_mod_p(&rows, cols, FILTER_PRIME);
            let lower = if mults.is_empty() { 0 } else { linalg::rank_int_rows_mod_p(&mults, cols, FILTER_PRIME) };
            if lower == upper {
                self.dims.push(upper as u64);
                self.news.push(0);
                self.modular.push(k);
                return;
            }
        }
        let kernel = linalg::kernel_of_int_rows(rows, cols);
        let mut span = Echelon::new();
        for r in mults {
            span.insert(r);
        }
        let mut new = 0;
        for v in &kernel {
            let row = linalg::int_row_from_scalars(v);
            if span.insert(row.clone()) {
                self.gens.push((k, row));
                new += 1;
            }
        }
        self.dims.push(kernel.len() as u64);
        self.news.push(new);
    }
}

/// Tries to certify the current generator set; returns the relation degree
/// (for three generators) on success.
fn reflexive_certificate(
    degs: &[u32],
    vectors: &[SyzygyVector],
    dims: &[u64],
    d: u32,
    tau: u64,
) -> Option<Option<u32>> {
    let m = degs.len();
    if !(2..=3).contains(&m) {
        return None;
    }
    let rank_two = (0..m).any(|i| (i + 1..m).any(|j| cross_nonzero(&vectors[i], &vectors[j])));
    if !rank_two {
        return None;
    }
    let rel = if m == 3 {
        // relations among the three generators form a free module of rank 1
        let excess = |k: usize| resolution_hf(degs, None, k as i64) - dims[k] as i64;
        let e = (0..dims.len()).find(|&k| excess(k) > 0)?;
        if (e..dims.len()).any(|k| excess(k) != dim_s(k as i64 - e as i64)) {
            return None;
        }
        Some(e as u32)
    } else {
        None
    };
    // quadratic polynomials agreeing at three points agree
    let start = degs.iter().copied().chain(rel).max().unwrap_or(0) as i64 + d as i64 + 2;
    let hp_match = (start..start + 3).all(|t| resolution_hf(degs, rel, t) == hilbert_polynomial(d, tau, t));
    hp_match.then_some(rel)
}

/// Classification from exponents, with the internal consistency checks.
pub fn classify(degs: &[u32], d: u32) -> Result<Classification> {
    let m = degs.len();
    if m < 2 {
        return Err(Error::InconsistentProfile(format!("{m} generators; the module has rank 2")));
    }
    let s = degs[0] + degs[1];
    let c = match m {
        2 if s + 1 == d => Classification::Free { d1: degs[0], d2: degs[1] },
        2 => return Err(Error::InconsistentProfile(format!("two generators {degs:?} but d1+d2 != d-1 = {}", d as i64 - 1))),
        _ if s + 1 == d => {
            return Err(Error::InconsistentProfile(format!("d1+d2 = d-1 but {m} generators {degs:?}")))
        }
        3 if s == d => {
            Classification::PlusOneGenerated { d1: degs[0], d2: degs[1], d3: degs[2], nearly_free: degs[1] == degs[2] }
        }
        _ if s < d => {
            return Err(Error::InconsistentProfile(format!("d1+d2 = {s} < d-1 with {m} generators {degs:?}")))
        }
        _ => Classification::MSyzygy { m: m as u32 },
    };
    Ok(c)
}

/// Default scan bound `2d - 3`.
pub fn default_bound(d: u32) -> u32 {
    (2 * d).saturating_sub(3).max(d.saturating_sub(1)).max(1)
}

/// Minimal generator degrees with a scan bound `bound` (at least `d - 1`).
///
/// The scan stops early once the reflexive certificate holds and at least
/// two degrees past the last generator have been scanned. Without it, the
/// profile is complete only if the last two degrees before `bound` brought
/// no generators and `bound >= 2d - 3`; otherwise [`Error::BoundTooSmall`].
pub fn minimal_generator_degrees(f: &HomogeneousPoly, bound: u32) -> Result<SyzygyProfile> {
    let chart = saturation_chart(f)?;
    scan_with_bound(f, bound, &chart)
}

fn scan_with_bound(f: &HomogeneousPoly, bound: u32, chart: &SaturationChart) -> Result<SyzygyProfile> {
    let d = f.degree();
    if d < 1 {
        return Err(Error::DegreeTooSmall(d));
    }
    let bound = bound.max(d.saturating_sub(1));
    let mut scan = Scan { gens: Vec::new(), dims: Vec::new(), news: Vec::new(), modular: Vec::new() };
    let mut vectors: Vec<SyzygyVector> = Vec::new();
    for k in 0..=bound {
        scan.step(f, k);
        while vectors.len() < scan.gens.len() {
            let (dg, row) = &scan.gens[vectors.len()];
            vectors.push(SyzygyVector::from_coords(*dg, row));
        }
        let degs: Vec<u32> = scan.gens.iter().map(|g| g.0).collect();
        let Some(&last) = degs.last() else { continue };
        if k < last + 2 {
            continue;
        }
        if let Some(rel) = reflexive_certificate(&degs, &vectors, &scan.dims, d, chart.tau) {
            return finish(d, degs, vectors, scan, CertificateKind::Reflexive, rel, chart.tau);
        }
    }
    let degs: Vec<u32> = scan.gens.iter().map(|g| g.0).collect();
    let b = bound as usize;
    let quiet = b >= 1 && scan.news[b] == 0 && scan.news[b - 1] == 0;
    if quiet && bound >= default_bound(d) && degs.len() >= 4 {
        return finish(d, degs, vectors, scan, CertificateKind::ScanOnly, None, chart.tau);
    }
    Err(Error::BoundTooSmall { bound })
}

fn finish(
    d: u32,
    degs: Vec<u32>,
    vectors: Vec<SyzygyVector>,
    scan: Scan,
    kind: CertificateKind,
    rel: Option<u32>,
    tau: u64,
) -> Result<SyzygyProfile> {
    let classification = classify(&degs, d)?;
    let scanned_to = scan.dims.len() as u32 - 1;
    Ok(SyzygyProfile {
        degree: d,
        generator_degrees: degs,
        generators: vectors,
        classification,
        scanned_dims: scan.dims,
        new_generators: scan.news,
        complete: true,
        certificate: Certificate {
            kind,
            scanned_to,
            relation_degree: rel,
            tau_total: tau,
            modular_degrees: scan.modular,
        },
    })
}

/// Profile with the default bound, doubling on [`Error::BoundTooSmall`] up
/// to `3d`.
pub fn profile(f: &HomogeneousPoly, bound: Option<u32>) -> Result<SyzygyProfile> {
    let chart = saturation_chart(f)?;
    profile_with_chart(f, bound, &chart)
}

pub fn profile_with_chart(f: &HomogeneousPoly, bound: Option<u32>, chart: &SaturationChart) -> Result<SyzygyProfile> {
    let d = f.degree();
    let cap = (3 * d).max(bound.unwrap_or(0));
    let mut b = bound.unwrap_or_else(|| default_bound(d));
    loop {
        match scan_with_bound(f, b, chart) {
            Err(Error::BoundTooSmall { .. }) if b < cap => b = (2 * b).min(cap),
            other => return other,
        }
    }
}

/// Whether every generator is a syzygy (exact check).
pub fn verify_generators(f: &HomogeneousPoly, p: &SyzygyProfile) -> bool {
    p.generators.iter().all(|g| g.apply(f).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_homogeneous;

    fn h(s: &str) -> HomogeneousPoly {
        parse_homogeneous(s).unwrap()
    }

    #[test]
    fn small_syzygy_spaces() {
        assert_eq!(syzygy_space(&h("x*(x*y-z^2)"), 1).len(), 2);
        assert_eq!(syzygy_space(&h("x^3+y^3+z^3"), 1).len(), 0);
        assert_eq!(syzygy_space(&h("x^3+y^3+z^3"), 2).len(), 3);
        for s in ["x*(x*y-z^2)", "x^3+y^3+z^3", "x*y*(x*y-z^2)"] {
            assert_eq!(syzygy_space(&h(s), 0).len(), 0);
        }
    }

    #[test]
    fn generators_are_syzygies() {
        let f = h("x*(x+y)*(x*y-z^2)");
        let p = profile(&f, None).unwrap();
        assert!(verify_generators(&f, &p));
        assert_eq!(p.generator_degrees, vec![2, 2, 2]);
    }

    #[test]
    fn mdr_values() {
        assert_eq!(mdr(&h("x*(x*y-z^2)")), 1);
        assert_eq!(mdr(&h("x^3+y^3+z^3")), 2);
        assert_eq!(mdr(&h("x*y - z^2")), 1);
    }

    #[test]
    fn classification_rules() {
        assert_eq!(classify(&[5, 7], 13).unwrap(), Classification::Free { d1: 5, d2: 7 });
        assert_eq!(
            classify(&[3, 4, 5], 7).unwrap(),
            Classification::PlusOneGenerated { d1: 3, d2: 4, d3: 5, nearly_free: false }
        );
        assert_eq!(
            classify(&[2, 3, 3], 5).unwrap(),
            Classification::PlusOneGenerated { d1: 2, d2: 3, d3: 3, nearly_free: true }
        );
        assert!(matches!(classify(&[2, 3], 7), Err(Error::InconsistentProfile(_))));
        assert_eq!(classify(&[2, 2, 2], 3).unwrap(), Classification::MSyzygy { m: 3 });
    }

    #[test]
    fn smooth_cubic_is_koszul() {
        let p = profile(&h("x^3+y^3+z^3"), None).unwrap();
        assert_eq!(p.generator_degrees, vec![2, 2, 2]);
        assert_eq!(p.certificate.relation_degree, Some(4));
        assert_eq!(p.classification, Classification::MSyzygy { m: 3 });
    }
}
