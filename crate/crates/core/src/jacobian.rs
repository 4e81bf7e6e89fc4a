//! Graded pieces of the Jacobian ideal `J_f`, the Milnor algebra
//! `M(f) = S/J_f`, the saturation `I_f` and the Jacobian module
//! `N(f) = I_f / J_f`.
//!
//! `I_f` is read from an affine chart whose line at infinity misses the
//! singular locus: there `I_f` is the homogenization of the affine Jacobian
//! ideal, and its Hilbert function counts standard monomials of bounded
//! degree. `M(f)` in high degrees comes from the certified resolution of
//! the syzygy module (see [`crate::syzygy`]).

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner;
use crate::linalg::{self, IntRow, Matrix, Scalar};
use crate::poly::{
    affine_chart, dim_s, monomial_basis, monomial_index, partials, restrict_to_line, HomogeneousPoly, LinearForm,
    Poly, UnivariatePoly,
};
use crate::syzygy::{self, SyzygyProfile};

/// Rows of the Macaulay matrix of `(f_x, f_y, f_z) * S_{k-d+1}` in the
/// monomial basis of `S_k`.
pub(crate) fn macaulay_rows(f: &HomogeneousPoly, k: u32) -> Vec<IntRow> {
    let d = f.degree();
    if k + 1 < d {
        return Vec::new();
    }
    let shift = k + 1 - d;
    let mut rows = Vec::new();
    for g in partials(f) {
        if g.is_zero() {
            continue;
        }
        let gi = g.poly().primitive_integer();
        for m in monomial_basis(shift) {
            let mut row: IntRow = gi
                .terms()
                .map(|(e, c)| (monomial_index(&[e[0] + m[0], e[1] + m[1], e[2] + m[2]]), c.to_integer()))
                .collect();
            row.sort_by_key(|t| t.0);
            rows.push(row);
        }
    }
    rows
}

/// `dim (J_f)_k`, the rank of the Macaulay matrix.
pub fn dim_jacobian_ideal(f: &HomogeneousPoly, k: u32) -> usize {
    let rows = macaulay_rows(f, k);
    if rows.is_empty() {
        return 0;
    }
    let cols = dim_s(k as i64) as usize;
    let p = linalg::FILTER_PRIME;
    // a full modular rank is already the exact rank
    if linalg::rank_int_rows_mod_p(&rows, cols, p) == cols.min(rows.len()) {
        return cols.min(rows.len());
    }
    linalg::rank_int_rows(rows)
}

/// `dim M(f)_k` for `0 <= k <= k_max` by direct Macaulay ranks.
pub fn milnor_algebra_dims(f: &HomogeneousPoly, k_max: u32) -> Vec<u64> {
    use rayon::prelude::*;
    (0..=k_max)
        .into_par_iter()
        .map(|k| (dim_s(k as i64) as usize - dim_jacobian_ideal(f, k)) as u64)
        .collect()
}

/// The affine chart used for the saturation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SaturationChart {
    /// Line at infinity of the chart; it contains no singular point.
    pub line: String,
    /// Number of standard monomials of the affine Jacobian ideal by degree.
    pub standard_by_degree: Vec<u64>,
    /// Total Tjurina number, the colength of the affine Jacobian ideal.
    pub tau: u64,
}

impl SaturationChart {
    /// `dim (S/I_f)_k`.
    pub fn quotient_dim(&self, k: i64) -> u64 {
        if k < 0 {
            return 0;
        }
        self.standard_by_degree.iter().take(k as usize + 1).sum()
    }
}

/// Whether `ell` meets `V(f_x, f_y, f_z)`: the restrictions of the partials
/// to the line have a common zero.
pub(crate) fn line_meets_singular_locus(f: &HomogeneousPoly, ell: &LinearForm) -> bool {
    let mut g: Option<UnivariatePoly> = None;
    let mut all_at_infinity = true;
    for p in partials(f) {
        if p.is_zero() {
            continue;
        }
        let Ok(r) = restrict_to_line(&p, ell) else { continue };
        all_at_infinity &= r.infinity_multiplicity > 0;
        g = Some(match g {
            None => r.affine.clone(),
            Some(acc) => acc.gcd(&r.affine),
        });
    }
    match g {
        None => true,
        Some(g) => g.degree().unwrap_or(0) > 0 || all_at_infinity,
    }
}

/// Lines tried as line at infinity: `z`, `x`, `y`, then `a x + b y + z`
/// over a growing grid. A reduced curve has at most `(d-1)^2` singular
/// points, so an `n x n` grid with `n > (d-1)^2` contains a line missing
/// all of them.
fn chart_candidates(d: u32) -> impl Iterator<Item = LinearForm> {
    let first = [(0, 0, 1), (1, 0, 0), (0, 1, 0)].into_iter();
    let n = ((d.max(2) - 1) * (d.max(2) - 1)) as i64 + 1;
    let grid = (1..=n).flat_map(move |r| {
        // ring of radius r in the (a, b) grid around 0
        (-r..=r).flat_map(move |a| (-r..=r).filter(move |b| a.abs().max(b.abs()) == r).map(move |b| (a, b, 1)))
    });
    first.chain(grid).map(|(a, b, c)| LinearForm::from_ints(a, b, c).expect("nonzero"))
}

/// Finds a chart and computes the affine Jacobian ideal's standard monomials.
pub fn saturation_chart(f: &HomogeneousPoly) -> Result<SaturationChart> {
    if f.degree() < 1 {
        return Err(Error::DegreeTooSmall(f.degree()));
    }
    let Some(line) = chart_candidates(f.degree()).find(|l| !line_meets_singular_locus(f, l)) else {
        return Err(Error::NotReduced);
    };
    let gens: Vec<Poly> = partials(f).iter().map(|g| affine_chart(g.poly(), &line)).collect();
    let gb = groebner::groebner(gens.iter().filter(|p| !p.is_zero()).map(groebner::from_poly).collect());
    let std = groebner::standard_monomials_by_degree(&groebner::leads(&gb)).ok_or(Error::NotReduced)?;
    let tau = std.iter().sum();
    Ok(SaturationChart { line: line.to_string(), standard_by_degree: std, tau })
}

/// Total Tjurina number `tau(C)`.
pub fn total_tjurina(f: &HomogeneousPoly) -> Result<u64> {
    Ok(saturation_chart(f)?.tau)
}

/// `dim (I_f)_k`.
pub fn saturation_dims(f: &HomogeneousPoly, k: u32) -> Result<u64> {
    let c = saturation_chart(f)?;
    Ok(dim_s(k as i64) as u64 - c.quotient_dim(k as i64))
}

/// `dim (I_f)_k` from the definition: the space of `g` in `S_k` with
/// `x^N g, y^N g, z^N g` in `J_f`, increasing `N` from 1 until the dimension
/// stops changing. Dense and slow; kept as an independent check.
pub fn saturation_dims_by_colon(f: &HomogeneousPoly, k: u32) -> u64 {
    let mut prev: Option<u64> = None;
    let mut n = 1;
    loop {
        let cur = colon_dim(f, k, n);
        if prev == Some(cur) {
            return cur;
        }
        prev = Some(cur);
        n += 1;
    }
}

fn colon_dim(f: &HomogeneousPoly, k: u32, n: u32) -> u64 {
    let nk = dim_s(k as i64) as usize;
    let big = k + n;
    let nb = dim_s(big as i64) as usize;
    let span = macaulay_rows(f, big);
    // unknowns: g (nk), then for each variable the coefficients on `span`
    let cols = nk + 3 * span.len();
    let mut eqs: Vec<HashMap<usize, BigInt>> = vec![HashMap::new(); 3 * nb];
    for v in 0..3 {
        for (i, m) in monomial_basis(k).iter().enumerate() {
            let mut e = *m;
            e[v] += n;
            eqs[v * nb + monomial_index(&e)].insert(i, BigInt::from(1));
        }
        for (j, row) in span.iter().enumerate() {
            for (c, val) in row {
                eqs[v * nb + c].insert(nk + v * span.len() + j, -val.clone());
            }
        }
    }
    let rows: Vec<IntRow> = eqs
        .into_iter()
        .map(|m| {
            let mut r: IntRow = m.into_iter().filter(|(_, v)| !v.is_zero()).collect();
            r.sort_by_key(|t| t.0);
            r
        })
        .filter(|r| !r.is_empty())
        .collect();
    let ker = linalg::kernel_of_int_rows(rows, cols);
    let proj: Vec<IntRow> = ker.iter().map(|v| linalg::int_row_from_scalars(&v[..nk])).collect();
    linalg::rank_int_rows(proj) as u64
}

/// Graded invariants of `M(f)` and `N(f)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobianTable {
    pub degree: u32,
    /// `3d(d-2)`, the default window end.
    pub t: u32,
    /// `3(d-2)`: `n(f)_a = n(f)_b` whenever `a + b` equals this.
    pub symmetry_center: u32,
    pub k_max: u32,
    pub dims_m: Vec<u64>,
    /// `dim (S/I_f)_k`.
    pub dims_sat_quotient: Vec<u64>,
    pub dims_n: Vec<u64>,
    pub tau_total: u64,
    pub nu: u64,
    pub sigma: Option<u32>,
}

impl JacobianTable {
    pub fn n(&self, k: i64) -> u64 {
        if k < 0 {
            return 0;
        }
        self.dims_n.get(k as usize).copied().unwrap_or(0)
    }

    pub fn m(&self, k: i64) -> Option<u64> {
        if k < 0 {
            return Some(0);
        }
        self.dims_m.get(k as usize).copied()
    }
}

/// Assembles the table from a certified profile and the chart.
///
/// `dim M(f)_k = C(k+2,2) - 3 C(k-d+3,2) + dim D0(f)_{k-d+1}`, with the
/// syzygy dimensions taken from the profile.
/// The window is `0..=T+1` unless `k_max` lowers it.
pub fn table_from_profile(
    f: &HomogeneousPoly,
    profile: &SyzygyProfile,
    chart: &SaturationChart,
    k_max: Option<u32>,
) -> Result<JacobianTable> {
    let d = f.degree() as i64;
    let t = (3 * d * (d - 2)).max(0) as u32;
    let mut k_max = k_max.map_or(t + 1, |k| k.min(t + 1));
    let mut dims_m = Vec::new();
    for k in 0..=k_max as i64 {
        let Some(syz) = profile.d0_dim(k - d + 1) else {
            k_max = (k - 1).max(0) as u32;
            break;
        };
        let jk = 3 * dim_s(k - d + 1) - syz as i64;
        dims_m.push((dim_s(k) - jk) as u64);
    }
    let dims_sat: Vec<u64> = (0..dims_m.len() as i64).map(|k| chart.quotient_dim(k)).collect();
    let mut dims_n = Vec::with_capacity(dims_m.len());
    for (k, (m, s)) in dims_m.iter().zip(&dims_sat).enumerate() {
        if m < s {
            return Err(Error::InconsistentProfile(format!(
                "dim M(f)_{k} = {m} is below dim (S/I_f)_{k} = {s}"
            )));
        }
        dims_n.push(m - s);
    }
    let table = JacobianTable {
        degree: f.degree(),
        t,
        symmetry_center: (3 * (d - 2)).max(0) as u32,
        k_max,
        nu: dims_n.iter().copied().max().unwrap_or(0),
        sigma: dims_n.iter().position(|&v| v != 0).map(|k| k as u32),
        dims_m,
        dims_sat_quotient: dims_sat,
        dims_n,
        tau_total: chart.tau,
    };
    check_table(&table)?;
    Ok(table)
}

/// Symmetry about `3(d-2)` (so `n(f)` vanishes past it), unimodality, and
/// stabilization of `dim M(f)_k` at `tau` for `k = T, T+1` when those lie in
/// the window.
pub fn check_table(t: &JacobianTable) -> Result<()> {
    let c = t.symmetry_center as usize;
    for a in 0..t.dims_n.len() {
        let nb = if a <= c { t.dims_n.get(c - a).copied() } else { Some(0) };
        if let Some(nb) = nb {
            if t.dims_n[a] != nb {
                let b = if a <= c { c - a } else { a };
                return Err(Error::SymmetryViolation { a, b, na: t.dims_n[a], nb });
            }
        }
    }
    let top = t.dims_n.len().min(c + 1);
    for k in 1..top {
        let up = k <= c / 2;
        if (up && t.dims_n[k] < t.dims_n[k - 1]) || (!up && t.dims_n[k] > t.dims_n[k - 1]) {
            return Err(Error::UnimodalityViolation { k });
        }
    }
    let tt = t.t as usize;
    if t.dims_m.len() > tt + 1 {
        let (a, b) = (t.dims_m[tt], t.dims_m[tt + 1]);
        if a != b || a != t.tau_total {
            return Err(Error::NotStabilized { at_t: a, at_t1: b });
        }
    }
    Ok(())
}

/// Checks `n(f)_a = n(f)_{center-a}` on the window for an arbitrary center.
/// Returns the first offending pair.
pub fn symmetric_about(dims_n: &[u64], center: i64) -> Option<(usize, i64)> {
    for (a, &na) in dims_n.iter().enumerate() {
        let b = center - a as i64;
        let nb = if b < 0 { Some(0) } else { dims_n.get(b as usize).copied() };
        if nb.is_some_and(|nb| nb != na) {
            return Some((a, b));
        }
    }
    None
}

/// Profile, chart and table in one pass.
pub fn jacobian_module_table(f: &HomogeneousPoly) -> Result<JacobianTable> {
    Ok(analyze(f, None, None)?.1)
}

/// Reducedness check, syzygy profile and Jacobian table.
pub fn analyze(f: &HomogeneousPoly, bound: Option<u32>, k_max: Option<u32>) -> Result<(SyzygyProfile, JacobianTable)> {
    if f.degree() < 1 {
        return Err(Error::DegreeTooSmall(f.degree()));
    }
    if !crate::poly::is_reduced(f) {
        return Err(Error::NotReduced);
    }
    let chart = saturation_chart(f)?;
    let profile = syzygy::profile_with_chart(f, bound, &chart)?;
    let table = table_from_profile(f, &profile, &chart, k_max)?;
    Ok((profile, table))
}

/// Dense Macaulay matrix of `(f_x, f_y, f_z) * S_{k-d+1}`, one row per
/// generator multiple.
pub fn macaulay_matrix(f: &HomogeneousPoly, k: u32) -> Matrix {
    let cols = dim_s(k as i64) as usize;
    let rows = macaulay_rows(f, k);
    let mut m = Matrix::zeros(rows.len(), cols);
    for (i, r) in rows.iter().enumerate() {
        for (c, v) in r {
            m.set(i, *c, Scalar::from_integer(v.clone()));
        }
    }
    m
}
