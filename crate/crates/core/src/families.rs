//! Parametric curve families and the fixed example corpus, each with the
//! invariants it is known to have.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Scalar;
use crate::parse::{parse_homogeneous, parse_line};
use crate::poly::{HomogeneousPoly, LinearForm, Poly, ProjPoint};

/// Known invariants. Every field is optional.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub exponents: Option<Vec<u32>>,
    /// `free`, `nearly_free`, `plus_one_generated` or `m_syzygy`.
    pub classification: Option<&'static str>,
    pub tau: Option<u64>,
    #[serde(serialize_with = "opt_text")]
    pub point: Option<ProjPoint>,
    pub tau_at_point: Option<u64>,
    pub mu_minus_tau_at_point: Option<u64>,
    /// Where the expected values come from.
    pub source: &'static str,
}

fn opt_text<S: serde::Serializer>(p: &Option<ProjPoint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match p {
        Some(p) => s.collect_str(p),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedCurve {
    pub id: String,
    pub f: HomogeneousPoly,
    pub expected: Expected,
}

fn h(s: &str) -> HomogeneousPoly {
    parse_homogeneous(s).expect("built-in polynomial")
}

fn line(s: &str) -> LinearForm {
    parse_line(s).expect("built-in line")
}

fn int(v: i64) -> Scalar {
    Scalar::from_integer(v.into())
}

fn free_tau(d: u32, d1: u32, d2: u32) -> u64 {
    ((d - 1) * (d - 1) - d1 * d2) as u64
}

/// `y * prod_j (x - s_j y) * (yz + x^2)`: `m` lines through `q = (0:0:1)`,
/// the first one tangent to the conic at `q`. Default slopes `1, 2, ...`.
pub fn conic_line_family(m: u32, slopes: Option<&[Scalar]>) -> Result<NamedCurve> {
    if m < 3 {
        return Err(Error::BadParameters(format!("need m >= 3, got {m}")));
    }
    let slopes: Vec<Scalar> = match slopes {
        Some(s) => s.to_vec(),
        None => (1..m as i64).map(int).collect(),
    };
    if slopes.len() != m as usize - 1 {
        return Err(Error::BadParameters(format!("need {} slopes, got {}", m - 1, slopes.len())));
    }
    for (i, a) in slopes.iter().enumerate() {
        if slopes[..i].contains(a) {
            return Err(Error::BadParameters(format!("repeated slope {a}")));
        }
    }
    let (x, y) = (Poly::var(0), Poly::var(1));
    let mut a = y.clone();
    for s in &slopes {
        a = &a * &(&x - &y.scale(s));
    }
    let f = HomogeneousPoly::new(&a * h("y*z + x^2").poly())?;
    let mm = m as u64;
    Ok(NamedCurve {
        id: format!("cm-{m}"),
        f,
        expected: Expected {
            exponents: Some(vec![2, m - 1]),
            classification: Some("free"),
            tau: Some(mm * mm + 3),
            point: Some(ProjPoint::from_ints(0, 0, 1)?),
            tau_at_point: Some(mm * mm - mm + 4),
            mu_minus_tau_at_point: None,
            source: "conic with m concurrent lines, one tangent at the common point",
        },
    })
}

/// `z^(d-1) y + x^d + a x^2 z^(d-2) + b x z^(d-1) + c z^d`, free with
/// exponents `(2, d-3)` when `a != 0`.
pub fn free_rkc_family(d: u32, a: &Scalar, b: &Scalar, c: &Scalar) -> Result<NamedCurve> {
    if d < 5 {
        return Err(Error::BadParameters(format!("need d >= 5, got {d}")));
    }
    if a.is_zero() {
        return Err(Error::BadParameters("a must be nonzero".into()));
    }
    let mono = |e: [u32; 3], c: Scalar| Poly::monomial(e, c);
    let mut p = mono([0, 1, d - 1], int(1));
    p = &p + &mono([d, 0, 0], int(1));
    p = &p + &mono([2, 0, d - 2], a.clone());
    p = &p + &mono([1, 0, d - 1], b.clone());
    p = &p + &mono([0, 0, d], c.clone());
    Ok(NamedCurve {
        id: format!("rkc-{d}-{a}-{b}-{c}"),
        f: HomogeneousPoly::with_degree(p, d)?,
        expected: Expected {
            exponents: Some(vec![2, d - 3]),
            classification: Some("free"),
            tau: Some(free_tau(d, 2, d - 3)),
            source: "rational curve with one cusp-like point at infinity",
            ..Default::default()
        },
    })
}

/// `(z^(k-1) y + x^k)^2 z - x^(2k+1)`, free with exponents `(k, k)`; at
/// `p = (0:1:0)` one has `mu - tau = k^2 - 2k`.
pub fn cuspidal_family(k: u32) -> Result<NamedCurve> {
    if k < 2 {
        return Err(Error::BadParameters(format!("need k >= 2, got {k}")));
    }
    let f = h(&format!("(z^{}*y + x^{k})^2*z - x^{}", k - 1, 2 * k + 1));
    let d = 2 * k + 1;
    let kk = k as u64;
    Ok(NamedCurve {
        id: format!("cusp-{k}"),
        f,
        expected: Expected {
            exponents: Some(vec![k, k]),
            classification: Some("free"),
            tau: Some(free_tau(d, k, k)),
            point: Some(ProjPoint::from_ints(0, 1, 0)?),
            mu_minus_tau_at_point: Some(kk * kk - 2 * kk),
            source: "closure of an affine contractible curve with a (2, 2k+1) cusp",
            ..Default::default()
        },
    })
}

fn gallery_entry(id: &str, f: &str, exps: &[u32], class: &'static str, source: &'static str) -> NamedCurve {
    let f = h(f);
    let tau = (class == "free").then(|| free_tau(f.degree(), exps[0], exps[1]));
    NamedCurve {
        id: id.into(),
        f,
        expected: Expected {
            exponents: Some(exps.to_vec()),
            classification: Some(class),
            tau,
            source,
            ..Default::default()
        },
    }
}

/// The thirteen named conic-line and related curves.
pub fn example_gallery() -> Vec<NamedCurve> {
    const A: &str = "conic-line arrangement";
    const B: &str = "union of two cubic pencils members";
    const C: &str = "free octic-quartic-line curve and its deletion";
    vec![
        gallery_entry("conic-tangent", "x*(x*y-z^2)", &[1, 1], "free", A),
        gallery_entry("conic-two-tangents", "x*y*(x*y-z^2)", &[1, 2], "free", A),
        gallery_entry("conic-tangent-chord", "x*z*(x*y-z^2)", &[1, 2], "free", A),
        gallery_entry("conic-tangent-general", "x*(x+y)*(x*y-z^2)", &[2, 2, 2], "nearly_free", A),
        gallery_entry("conic-two-tangents-node-line", "x*y*(x+y)*(x*y-z^2)", &[2, 3, 3], "nearly_free", A),
        gallery_entry("cubics", "(x^3+y^3)*(x^3+y^3+z^3)", &[2, 3], "free", B),
        gallery_entry("cubics-general-line", "(x^3+y^3)*(x^3+y^3+z^3)*(x+2*y-z)", &[3, 4, 5], "plus_one_generated", B),
        gallery_entry("conic-three-lines", "x*z*(x-z)*(x*y-z^2)", &[2, 2], "free", A),
        gallery_entry("conic-three-lines-minus-tangent", "z*(x-z)*(x*y-z^2)", &[2, 2, 2], "nearly_free", A),
        gallery_entry("conic-four-lines", "x*y*(x-z)*(y-z)*(x*y-z^2)", &[2, 3], "free", A),
        gallery_entry("conic-five-lines", "x*y*(x-z)*(y-z)*(x*y-z^2)*z", &[3, 3], "free", A),
        gallery_entry("octic-quartic-line", "x*(x^4+z^4)*(x^8+(x*z+y^2)^4)", &[5, 7], "free", C),
        gallery_entry("octic-quartic", "(x^4+z^4)*(x^8+(x*z+y^2)^4)", &[5, 7, 9], "plus_one_generated", C),
    ]
}

/// A curve `C` and a line `L` with the addition/deletion data known for
/// `C' = C ∪ L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusPair {
    pub id: String,
    pub f: HomogeneousPoly,
    pub ell: LinearForm,
    pub expected_case: Option<u8>,
    pub expected_r: Option<u32>,
    pub expected_epsilon: Option<i64>,
    /// Exponents of `C'` (additions) or `C` (deletions).
    pub expected_exponents: Option<Vec<u32>>,
}

fn pair(id: &str, f: &str, l: &str) -> CorpusPair {
    CorpusPair {
        id: id.into(),
        f: h(f),
        ell: line(l),
        expected_case: None,
        expected_r: None,
        expected_epsilon: None,
        expected_exponents: None,
    }
}

impl CorpusPair {
    fn case(mut self, c: u8) -> Self {
        self.expected_case = Some(c);
        self
    }

    fn r_eps(mut self, r: Option<u32>, eps: Option<i64>) -> Self {
        self.expected_r = r;
        self.expected_epsilon = eps;
        self
    }

    fn exps(mut self, e: &[u32]) -> Self {
        self.expected_exponents = Some(e.to_vec());
        self
    }
}

/// Which of the five line types to add to the conic-line curve `C_m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AdditionCase {
    /// A new line through the common point `q`.
    ThroughCenter,
    /// The tangent to the conic at its intersection with `x = y`.
    Tangent,
    /// The chord through the conic points on `x = y` and `x = 2y` (`m > 3`).
    Chord,
    /// A line through one special conic point and one ordinary conic point.
    OneSpecialPoint,
    /// A line avoiding all special points.
    Generic,
}

impl AdditionCase {
    pub const ALL: [AdditionCase; 5] = [
        AdditionCase::ThroughCenter,
        AdditionCase::Tangent,
        AdditionCase::Chord,
        AdditionCase::OneSpecialPoint,
        AdditionCase::Generic,
    ];
}

/// The conic `yz + x^2` passes through `(t : 1 : -t^2)`; the line through the
/// parameters `s` and `u` is `(s+u) x - s u y + z`, the tangent when `s = u`.
fn conic_chord(s: i64, u: i64) -> LinearForm {
    LinearForm::from_ints(s + u, -s * u, 1).expect("nonzero")
}

/// `C_m` with default slopes and the chosen line, or `None` for the chord
/// case at `m = 3` (it needs two special points off the tangent line).
pub fn conic_line_addition(m: u32, case: AdditionCase) -> Result<Option<CorpusPair>> {
    let c = conic_line_family(m, None)?;
    let mi = m as i64;
    let (ell, exp_case, r, eps, exps) = match case {
        AdditionCase::ThroughCenter => (LinearForm::from_ints(1, -mi, 0)?, Some(1), 2, 1, vec![2, m]),
        AdditionCase::Tangent => {
            let exps = if m > 3 { vec![3, m - 1] } else { vec![2, 3] };
            (conic_chord(1, 1), (m > 3).then_some(2), m, 0, exps)
        }
        AdditionCase::Chord if m <= 3 => return Ok(None),
        AdditionCase::Chord => (conic_chord(1, 2), Some(2), m, 0, vec![3, m - 1]),
        AdditionCase::OneSpecialPoint => (conic_chord(1, -1), Some(3), m + 1, 0, vec![3, m, m]),
        AdditionCase::Generic => (conic_chord(-1, -2), Some(3), m + 2, 0, vec![3, m, m + 1]),
    };
    let mut exps = exps;
    exps.sort_unstable();
    Ok(Some(CorpusPair {
        id: format!("cm-{m}+{}", serde_plain(case)),
        f: c.f,
        ell,
        expected_case: exp_case,
        expected_r: Some(r),
        expected_epsilon: Some(eps),
        expected_exponents: Some(exps),
    }))
}

fn serde_plain(c: AdditionCase) -> &'static str {
    match c {
        AdditionCase::ThroughCenter => "center",
        AdditionCase::Tangent => "tangent",
        AdditionCase::Chord => "chord",
        AdditionCase::OneSpecialPoint => "one-special",
        AdditionCase::Generic => "generic",
    }
}

/// Named curve-line pairs. Additions and deletions are both represented as
/// `(C, L)`; the reports decide which side is free.
pub fn corpus_pairs() -> Vec<CorpusPair> {
    vec![
        pair("conic-tangent+y", "x*(x*y-z^2)", "y").case(1).exps(&[1, 2]),
        pair("conic-tangent+z", "x*(x*y-z^2)", "z").exps(&[1, 2]),
        pair("conic-tangent+general", "x*(x*y-z^2)", "x+y").case(3).exps(&[2, 2, 2]),
        pair("conic-two-tangents+node-line", "x*y*(x*y-z^2)", "x+y"),
        pair("cubics+general", "(x^3+y^3)*(x^3+y^3+z^3)", "x+2*y-z").case(3).exps(&[3, 4, 5]),
        pair("conic-tangent-chord+x-z", "x*z*(x*y-z^2)", "x-z").case(2).r_eps(Some(2), Some(1)).exps(&[2, 2]),
        pair("conic-three-lines-x", "z*(x-z)*(x*y-z^2)", "x").case(3).r_eps(Some(1), Some(1)).exps(&[2, 2, 2]),
        pair("conic-four-lines+z", "x*y*(x-z)*(y-z)*(x*y-z^2)", "z").case(2).r_eps(Some(2), Some(2)).exps(&[3, 3]),
        pair("octic-quartic-line-x", "(x^4+z^4)*(x^8+(x*z+y^2)^4)", "x").case(3).r_eps(Some(2), None).exps(&[5, 7, 9]),
    ]
}

/// Corpus pairs plus the conic-line additions for `m = 3, 4, 5`.
pub fn all_pairs() -> Result<Vec<CorpusPair>> {
    let mut out = corpus_pairs();
    for m in 3..=5 {
        for case in AdditionCase::ALL {
            if let Some(p) = conic_line_addition(m, case)? {
                out.push(p);
            }
        }
    }
    Ok(out)
}

/// Every curve appearing in the corpus: gallery, family members and both
/// sides of every pair, without repetitions.
pub fn corpus_curves() -> Result<Vec<(String, HomogeneousPoly)>> {
    let mut out: Vec<(String, HomogeneousPoly)> = Vec::new();
    let mut push = |id: String, f: HomogeneousPoly| {
        if !out.iter().any(|(_, g)| crate::poly::same_curve(g, &f)) {
            out.push((id, f));
        }
    };
    for c in example_gallery() {
        push(c.id, c.f);
    }
    for m in 3..=8 {
        let c = conic_line_family(m, None)?;
        push(c.id, c.f);
    }
    for k in 2..=4 {
        let c = cuspidal_family(k)?;
        push(c.id, c.f);
    }
    for (d, abc) in [(5, [1, 0, 0]), (6, [1, 1, 1]), (7, [1, 1, 1])] {
        let c = free_rkc_family(d, &int(abc[0]), &int(abc[1]), &int(abc[2]))?;
        push(c.id, c.f);
    }
    for p in all_pairs()? {
        let u = p.f.mul(&p.ell.to_poly());
        push(format!("{}:C", p.id), p.f);
        push(format!("{}:C'", p.id), u);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_shapes() {
        let c3 = conic_line_family(3, None).unwrap();
        assert_eq!(c3.f.degree(), 5);
        assert_eq!(c3.expected.tau, Some(12));
        assert_eq!(conic_line_family(5, None).unwrap().expected.tau_at_point, Some(24));
        assert!(conic_line_family(2, None).is_err());
        let dup = [int(1), int(1)];
        assert!(conic_line_family(3, Some(&dup)).is_err());
        assert!(free_rkc_family(5, &int(0), &int(0), &int(0)).is_err());
        assert_eq!(free_rkc_family(7, &int(1), &int(1), &int(1)).unwrap().expected.exponents, Some(vec![2, 4]));
        assert_eq!(cuspidal_family(3).unwrap().f.degree(), 7);
        assert_eq!(cuspidal_family(3).unwrap().expected.mu_minus_tau_at_point, Some(3));
    }

    #[test]
    fn gallery_and_pairs() {
        let g = example_gallery();
        assert_eq!(g.len(), 13);
        assert_eq!(g[4].expected.exponents, Some(vec![2, 3, 3]));
        assert_eq!(g[11].expected.exponents, Some(vec![5, 7]));
        let pairs = all_pairs().unwrap();
        assert_eq!(pairs.len(), corpus_pairs().len() + 14);
    }

    #[test]
    fn addition_lines_meet_the_right_points() {
        use crate::poly::count_intersections;
        for m in 3..=5 {
            for case in AdditionCase::ALL {
                let Some(p) = conic_line_addition(m, case).unwrap() else { continue };
                assert_eq!(Some(count_intersections(&p.f, &p.ell).unwrap()), p.expected_r, "{}", p.id);
            }
        }
    }
}
