//! Polynomials in `x, y, z` over the rationals, homogeneous forms, lines,
//! and the univariate utilities used to intersect a curve with a line.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::Scalar;

/// Exponent triple `(i, j, k)` of the monomial `x^i y^j z^k`.
pub type Exponent = [u32; 3];

pub(crate) const VARS: [&str; 3] = ["x", "y", "z"];

pub(crate) fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub(crate) fn total(e: &Exponent) -> u32 {
    e[0] + e[1] + e[2]
}

/// Graded lexicographic comparison with `x > y > z`.
pub(crate) fn glex_cmp(a: &Exponent, b: &Exponent) -> std::cmp::Ordering {
    total(a).cmp(&total(b)).then_with(|| a.cmp(b))
}

/// Sparse polynomial in `x, y, z` with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Exponent, Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::monomial([0, 0, 0], c)
    }

    pub fn one() -> Self {
        Poly::constant(Scalar::one())
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        Poly::monomial(e, Scalar::one())
    }

    pub fn monomial(e: Exponent, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Poly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Exponent, Scalar)>) -> Self {
        let mut p = Poly::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded lexicographic order is not guaranteed; use
    /// [`Poly::sorted_terms`] for display order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Scalar)> {
        self.terms.iter()
    }

    /// Terms in descending graded lexicographic order (`x > y > z`).
    pub fn sorted_terms(&self) -> Vec<(&Exponent, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| glex_cmp(b.0, a.0));
        v
    }

    pub fn coeff(&self, e: &Exponent) -> Scalar {
        self.terms.get(e).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, e: Exponent, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(total).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(total).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(total);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect() }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            if e[var] > 0 {
                let mut ne = *e;
                ne[var] -= 1;
                out.add_term(ne, c * int(e[var] as i64));
            }
        }
        out
    }

    pub fn eval(&self, point: &[Scalar; 3]) -> Scalar {
        let mut acc = Scalar::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..3 {
                if e[i] > 0 {
                    t *= num_traits::pow(point[i].clone(), e[i] as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes `x_i -> subs[i]`.
    pub fn compose(&self, subs: &[Poly; 3]) -> Poly {
        let maxe = self.terms.keys().fold([0u32; 3], |m, e| [m[0].max(e[0]), m[1].max(e[1]), m[2].max(e[2])]);
        let powers: Vec<Vec<Poly>> = (0..3)
            .map(|i| {
                let mut v = vec![Poly::one()];
                for k in 1..=maxe[i] as usize {
                    let next = &v[k - 1] * &subs[i];
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            let t = &(&powers[0][e[0] as usize] * &powers[1][e[1] as usize]) * &powers[2][e[2] as usize];
            for (te, tc) in t.terms {
                out.add_term(te, tc * c);
            }
        }
        out
    }

    /// Primitive integer multiple with positive leading (graded lex) coefficient.
    pub fn primitive_integer(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let lcm = self.terms.values().fold(BigInt::one(), |a, c| a.lcm(c.denom()));
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(&(c.numer() * (&lcm / c.denom())));
        }
        let lead = self.sorted_terms()[0].1.clone();
        let mut s = Scalar::new(lcm, g);
        if lead.is_negative() {
            s = -s;
        }
        self.scale(&s)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term([a[0] + b[0], a[1] + b[1], a[2] + b[2]], ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Scalar::one())
    }
}

pub(crate) fn fmt_scalar(c: &Scalar) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub(crate) fn fmt_monomial(e: &Exponent) -> String {
    let mut parts = Vec::new();
    for i in 0..3 {
        match e[i] {
            0 => {}
            1 => parts.push(VARS[i].to_string()),
            k => parts.push(format!("{}^{}", VARS[i], k)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mono = fmt_monomial(e);
            if mono.is_empty() {
                write!(f, "{}", fmt_scalar(&abs))?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{}", fmt_scalar(&abs), mono)?;
            }
        }
        Ok(())
    }
}

/// A homogeneous polynomial of a declared degree (the zero form is allowed,
/// so partial derivatives of a cone stay representable).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomogeneousPoly {
    degree: u32,
    poly: Poly,
}

impl HomogeneousPoly {
    /// Checks homogeneity of a nonzero polynomial.
    pub fn new(poly: Poly) -> Result<Self> {
        let sorted = poly.sorted_terms();
        let Some((first, _)) = sorted.first() else {
            return Err(Error::BadParameters("zero polynomial".into()));
        };
        let d = total(first);
        if let Some((e, c)) = sorted.iter().find(|(e, _)| total(e) != d) {
            let term = Poly::monomial(**e, (*c).clone()).to_string();
            return Err(Error::NotHomogeneous { term, expected: d, found: total(e) });
        }
        Ok(HomogeneousPoly { degree: d, poly })
    }

    pub fn with_degree(poly: Poly, degree: u32) -> Result<Self> {
        if let Some((e, c)) = poly.terms().find(|(e, _)| total(e) != degree) {
            let term = Poly::monomial(*e, c.clone()).to_string();
            return Err(Error::NotHomogeneous { term, expected: degree, found: total(e) });
        }
        Ok(HomogeneousPoly { degree, poly })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn into_poly(self) -> Poly {
        self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn coeff(&self, e: &Exponent) -> Scalar {
        self.poly.coeff(e)
    }

    pub fn mul(&self, other: &HomogeneousPoly) -> HomogeneousPoly {
        HomogeneousPoly { degree: self.degree + other.degree, poly: &self.poly * &other.poly }
    }

    pub fn partial(&self, var: usize) -> HomogeneousPoly {
        HomogeneousPoly { degree: self.degree.saturating_sub(1), poly: self.poly.derivative(var) }
    }

    /// Dense coefficient vector on [`monomial_basis`] of its degree.
    pub fn coefficient_vector(&self) -> Vec<Scalar> {
        monomial_basis(self.degree).iter().map(|e| self.poly.coeff(e)).collect()
    }

    pub fn eval(&self, point: &[Scalar; 3]) -> Scalar {
        self.poly.eval(point)
    }

    /// `f(A(x, y, z))` for a linear substitution given as three linear forms.
    pub fn substitute(&self, subs: &[Poly; 3]) -> HomogeneousPoly {
        HomogeneousPoly { degree: self.degree, poly: self.poly.compose(subs) }
    }
}

impl fmt::Display for HomogeneousPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

/// `(f_x, f_y, f_z)`.
pub fn partials(f: &HomogeneousPoly) -> [HomogeneousPoly; 3] {
    [f.partial(0), f.partial(1), f.partial(2)]
}

/// All exponent triples of total degree `k`, in descending lexicographic
/// order (`x^k` first, `z^k` last).
pub fn monomial_basis(k: u32) -> Vec<Exponent> {
    let mut out = Vec::with_capacity(((k + 1) * (k + 2) / 2) as usize);
    for i in (0..=k).rev() {
        for j in (0..=k - i).rev() {
            out.push([i, j, k - i - j]);
        }
    }
    out
}

/// Position of `e` in [`monomial_basis`] of its degree.
pub fn monomial_index(e: &Exponent) -> usize {
    let k = total(e) as usize;
    let i = e[0] as usize;
    let j = e[1] as usize;
    // rows with larger x exponent come first: sum_{a=i+1}^{k} (k - a + 1)
    let before: usize = (k - i) * (k - i + 1) / 2;
    before + (k - i - j)
}

pub(crate) fn binom2(n: i64) -> i64 {
    if n < 2 {
        0
    } else {
        n * (n - 1) / 2
    }
}

/// `dim S_k = C(k+2, 2)`, zero for negative `k`.
pub fn dim_s(k: i64) -> i64 {
    binom2(k + 2)
}

/// A line `a x + b y + c z = 0`, scaled so its first nonzero coefficient is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearForm {
    coeffs: [Scalar; 3],
}

impl LinearForm {
    pub fn new(a: Scalar, b: Scalar, c: Scalar) -> Result<Self> {
        let v = [a, b, c];
        let Some(lead) = v.iter().find(|c| !c.is_zero()).cloned() else {
            return Err(Error::BadParameters("linear form with all coefficients zero".into()));
        };
        Ok(LinearForm { coeffs: [&v[0] / &lead, &v[1] / &lead, &v[2] / &lead] })
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Result<Self> {
        LinearForm::new(int(a), int(b), int(c))
    }

    pub fn from_poly(p: &HomogeneousPoly) -> Result<Self> {
        if p.degree() != 1 {
            return Err(Error::BadParameters(format!("expected a linear form, got degree {}", p.degree())));
        }
        LinearForm::new(p.coeff(&[1, 0, 0]), p.coeff(&[0, 1, 0]), p.coeff(&[0, 0, 1]))
    }

    pub fn coeffs(&self) -> &[Scalar; 3] {
        &self.coeffs
    }

    pub fn to_poly(&self) -> HomogeneousPoly {
        let p = Poly::from_terms([
            ([1, 0, 0], self.coeffs[0].clone()),
            ([0, 1, 0], self.coeffs[1].clone()),
            ([0, 0, 1], self.coeffs[2].clone()),
        ]);
        HomogeneousPoly { degree: 1, poly: p }
    }

    /// Linear parametrization `(s : t) -> point` of the line as a 3x2 matrix.
    ///
    /// With `c != 0`: `(s, t, -(a s + b t)/c)`; with `c = 0, b != 0`:
    /// `(s, -a s / b, t)`; for the line `x = 0`: `(0, s, t)`.
    pub fn parametrization(&self) -> [[Scalar; 2]; 3] {
        let [a, b, c] = &self.coeffs;
        let (z, o) = (Scalar::zero(), Scalar::one());
        if !c.is_zero() {
            [[o.clone(), z.clone()], [z, o], [-(a / c), -(b / c)]]
        } else if !b.is_zero() {
            [[o.clone(), z.clone()], [-(a / b), z.clone()], [z, o]]
        } else {
            [[z.clone(), z.clone()], [o.clone(), z.clone()], [z, o]]
        }
    }

    pub fn point_at(&self, s: &Scalar, t: &Scalar) -> ProjPoint {
        let p = self.parametrization();
        ProjPoint::new([&p[0][0] * s + &p[0][1] * t, &p[1][0] * s + &p[1][1] * t, &p[2][0] * s + &p[2][1] * t])
            .expect("parametrization is injective")
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_poly().fmt(f)
    }
}

/// Point of the projective plane with rational coordinates, scaled so the
/// first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    coords: [Scalar; 3],
}

impl ProjPoint {
    pub fn new(coords: [Scalar; 3]) -> Result<Self> {
        let Some(lead) = coords.iter().find(|c| !c.is_zero()).cloned() else {
            return Err(Error::BadParameters("(0:0:0) is not a point".into()));
        };
        Ok(ProjPoint { coords: [&coords[0] / &lead, &coords[1] / &lead, &coords[2] / &lead] })
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Result<Self> {
        ProjPoint::new([int(x), int(y), int(z)])
    }

    pub fn coords(&self) -> &[Scalar; 3] {
        &self.coords
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(fmt_scalar).collect();
        write!(f, "({})", c.join(":"))
    }
}

/// Univariate polynomial, coefficients from the constant term up; the
/// leading coefficient is nonzero (the zero polynomial is empty).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UnivariatePoly {
    coeffs: Vec<Scalar>,
}

impl UnivariatePoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UnivariatePoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn eval(&self, s: &Scalar) -> Scalar {
        self.coeffs.iter().rev().fold(Scalar::zero(), |acc, c| acc * s + c)
    }

    pub fn derivative(&self) -> UnivariatePoly {
        UnivariatePoly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * int(i as i64)).collect())
    }

    pub fn monic(&self) -> UnivariatePoly {
        match self.leading() {
            None => self.clone(),
            Some(l) => UnivariatePoly::new(self.coeffs.iter().map(|c| c / l).collect()),
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &UnivariatePoly) -> (UnivariatePoly, UnivariatePoly) {
        let dl = d.leading().expect("division by zero polynomial");
        let dd = d.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() < d.coeffs.len() {
            return (UnivariatePoly::default(), self.clone());
        }
        let mut quot = vec![Scalar::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let q = &rem[i + dd] / dl;
            if !q.is_zero() {
                for (j, c) in d.coeffs.iter().enumerate() {
                    rem[i + j] -= &q * c;
                }
            }
            quot[i] = q;
        }
        rem.truncate(dd);
        (UnivariatePoly::new(quot), UnivariatePoly::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UnivariatePoly) -> UnivariatePoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn squarefree_part(&self) -> UnivariatePoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Distinct rational roots with their multiplicities, in increasing
    /// order. Returns `None` when the coefficients are too large for the
    /// divisor search.
    pub fn rational_roots(&self) -> Option<Vec<(Scalar, u32)>> {
        if self.is_zero() {
            return Some(Vec::new());
        }
        let sf = self.squarefree_part();
        let ints = integer_coeffs(&sf.coeffs);
        let mut roots = Vec::new();
        let shift = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
        if shift > 0 {
            roots.push(Scalar::zero());
        }
        let core = &ints[shift..];
        if core.len() > 1 {
            let c0 = core[0].abs();
            let cn = core[core.len() - 1].abs();
            let ps = divisors(&c0)?;
            let qs = divisors(&cn)?;
            let mut cands: Vec<Scalar> = Vec::new();
            for p in &ps {
                for q in &qs {
                    let r = Scalar::new(p.clone(), q.clone());
                    cands.push(r.clone());
                    cands.push(-r);
                }
            }
            cands.sort();
            cands.dedup();
            for c in cands {
                if sf.eval(&c).is_zero() {
                    roots.push(c);
                }
            }
        }
        roots.sort();
        let out = roots
            .into_iter()
            .map(|r| {
                let lin = UnivariatePoly::new(vec![-r.clone(), Scalar::one()]);
                let mut m = 0;
                let mut p = self.clone();
                loop {
                    let (q, rem) = p.div_rem(&lin);
                    if !rem.is_zero() {
                        break;
                    }
                    m += 1;
                    p = q;
                }
                (r, m)
            })
            .collect();
        Some(out)
    }
}

fn integer_coeffs(c: &[Scalar]) -> Vec<BigInt> {
    let lcm = c.iter().fold(BigInt::one(), |a, v| a.lcm(v.denom()));
    c.iter().map(|v| v.numer() * (&lcm / v.denom())).collect()
}

/// Positive divisors by trial division; `None` above 10^14.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.to_u64().filter(|&v| v <= 100_000_000_000_000)?;
    if n == 0 {
        return Some(vec![]);
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(BigInt::from(d));
            if d * d != n {
                large.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    Some(small)
}

/// Restriction of a form of degree `d` to a parametrized line, as the
/// dehomogenized binary form `F(s, 1)` plus the multiplicity of the root at
/// parameter infinity (`d - deg F(s, 1)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineRestriction {
    pub line: LinearForm,
    pub affine: UnivariatePoly,
    pub infinity_multiplicity: u32,
    pub degree: u32,
}

impl LineRestriction {
    /// Number of distinct points of the restriction's zero set on the line.
    pub fn distinct_roots(&self) -> u32 {
        let finite = self.affine.squarefree_part().degree().unwrap_or(0) as u32;
        finite + u32::from(self.infinity_multiplicity > 0)
    }

    /// Rational zeros as projective points with multiplicities, plus whether
    /// every zero is rational. `None` when the root search is not possible.
    pub fn rational_points(&self) -> Option<(Vec<(ProjPoint, u32)>, bool)> {
        let roots = self.affine.rational_roots()?;
        let mut pts: Vec<(ProjPoint, u32)> =
            roots.iter().map(|(s, m)| (self.line.point_at(s, &Scalar::one()), *m)).collect();
        if self.infinity_multiplicity > 0 {
            pts.push((self.line.point_at(&Scalar::one(), &Scalar::zero()), self.infinity_multiplicity));
        }
        let all = pts.len() as u32 == self.distinct_roots();
        Some((pts, all))
    }
}

/// Substitutes the line's parametrization into `f`.
pub fn restrict_to_line(f: &HomogeneousPoly, ell: &LinearForm) -> Result<LineRestriction> {
    let p = ell.parametrization();
    // s -> variable x, t -> variable y of the scratch ring
    let subs: [Poly; 3] = std::array::from_fn(|i| {
        Poly::from_terms([([1, 0, 0], p[i][0].clone()), ([0, 1, 0], p[i][1].clone())])
    });
    let g = f.poly().compose(&subs);
    if g.is_zero() {
        return Err(Error::ZeroRestriction);
    }
    let d = f.degree();
    let coeffs: Vec<Scalar> = (0..=d).map(|i| g.coeff(&[i, d - i, 0])).collect();
    let affine = UnivariatePoly::new(coeffs);
    let deg = affine.degree().unwrap_or(0) as u32;
    Ok(LineRestriction { line: ell.clone(), affine, infinity_multiplicity: d - deg, degree: d })
}

/// `r = |C ∩ L|`, the number of distinct intersection points.
pub fn count_intersections(f: &HomogeneousPoly, ell: &LinearForm) -> Result<u32> {
    Ok(restrict_to_line(f, ell)?.distinct_roots())
}

/// Exact division by a linear form.
pub fn divide_exact(f: &HomogeneousPoly, ell: &LinearForm) -> Result<HomogeneousPoly> {
    if f.degree() == 0 {
        return Err(Error::NotDivisible);
    }
    // divide by the lex-leading term of ell, x > y > z
    let lp = ell.to_poly();
    let lead_var = (0..3).find(|&i| !ell.coeffs[i].is_zero()).expect("nonzero form");
    let lead_c = ell.coeffs[lead_var].clone();
    let mut rest = f.poly().clone();
    let mut quot = Poly::zero();
    loop {
        // lex-largest term of the remainder that the lead divides
        let Some((e, c)) = rest.terms().filter(|(e, _)| e[lead_var] > 0).max_by(|a, b| a.0.cmp(b.0)) else {
            break;
        };
        let mut qe = *e;
        qe[lead_var] -= 1;
        let qc = c / &lead_c;
        let qt = Poly::monomial(qe, qc);
        rest = &rest - &(&qt * lp.poly());
        quot = &quot + &qt;
    }
    if !rest.is_zero() {
        return Err(Error::NotDivisible);
    }
    HomogeneousPoly::with_degree(quot, f.degree() - 1)
}

/// Whether two forms define the same curve (are proportional).
pub fn same_curve(f: &HomogeneousPoly, g: &HomogeneousPoly) -> bool {
    if f.degree() != g.degree() {
        return false;
    }
    let (Some((_, a)), Some((_, b))) = (f.poly().sorted_terms().first().copied(), g.poly().sorted_terms().first().copied()) else {
        return f.is_zero() && g.is_zero();
    };
    f.poly().scale(b) == g.poly().scale(a)
}

/// Deterministic sequence of lines used for genericity searches.
pub(crate) fn probe_lines() -> impl Iterator<Item = LinearForm> {
    let small = [1i64, -1, 2, -2, 3, -3, 5, 7];
    let mut out = Vec::new();
    for &a in &small {
        for &b in &small {
            out.push(LinearForm::from_ints(a, b, 1).expect("nonzero"));
        }
    }
    out.into_iter()
}

/// Whether `f` is squarefree.
///
/// A squarefree restriction to some line proves reducedness (a square
/// factor of `f` restricts to a square factor of the binary form). If the
/// probe lines find none, the Jacobian ideal decides: `f` is reduced iff
/// `V(f_x, f_y, f_z)` has dimension at most one as a cone, which is read
/// off the leading monomials of a Gröbner basis.
pub fn is_reduced(f: &HomogeneousPoly) -> bool {
    if f.is_zero() {
        return false;
    }
    if f.degree() == 0 {
        return true;
    }
    for ell in probe_lines().take(12) {
        if let Ok(r) = restrict_to_line(f, &ell) {
            if r.distinct_roots() == f.degree() {
                return true;
            }
        }
    }
    let Some(inf) = probe_lines().find(|l| restrict_to_line(f, l).is_ok()) else {
        return false;
    };
    let gens: Vec<Poly> = partials(f).iter().map(|g| affine_chart(g.poly(), &inf)).collect();
    crate::groebner::colength(&gens).is_some()
}

/// Restriction of a form to the affine plane `ell = 1`, written in the
/// `x, y` slots: `(u, v, (1 - a u - b v)/c)` when `c != 0`,
/// `(u, (1 - a u)/b, v)` when `c = 0, b != 0`, and `(1, u, v)` for `x = 1`.
pub(crate) fn affine_chart(p: &Poly, ell: &LinearForm) -> Poly {
    let [a, b, c] = ell.coeffs();
    let u = Poly::var(0);
    let v = Poly::var(1);
    let one = Poly::one();
    let subs: [Poly; 3] = if !c.is_zero() {
        let w = &(&one - &u.scale(a)) - &v.scale(b);
        [u, v, w.scale(&c.recip())]
    } else if !b.is_zero() {
        let w = &one - &u.scale(a);
        [u, w.scale(&b.recip()), v]
    } else {
        [one, u, v]
    };
    p.compose(&subs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_homogeneous;

    fn h(s: &str) -> HomogeneousPoly {
        parse_homogeneous(s).unwrap()
    }

    #[test]
    fn partials_of_examples() {
        let [fx, fy, fz] = partials(&h("x^2*y - x*z^2"));
        assert_eq!(fx, h("2*x*y - z^2"));
        assert_eq!(fy, h("x^2"));
        assert_eq!(fz, h("-2*x*z"));
        let [fx, fy, fz] = partials(&h("x^3+y^3+z^3"));
        assert_eq!((fx, fy, fz), (h("3*x^2"), h("3*y^2"), h("3*z^2")));
    }

    #[test]
    fn euler_identity() {
        for s in ["x*(x*y-z^2)", "(x^3+y^3)*(x^3+y^3+z^3)", "x^2*y - 7/3*x*z^2 + y^3"] {
            let f = h(s);
            let [fx, fy, fz] = partials(&f);
            let lhs = &(&(&Poly::var(0) * fx.poly()) + &(&Poly::var(1) * fy.poly())) + &(&Poly::var(2) * fz.poly());
            assert_eq!(lhs, f.poly().scale(&int(f.degree() as i64)));
        }
    }

    #[test]
    fn monomial_basis_sizes_and_order() {
        assert_eq!(monomial_basis(0), vec![[0, 0, 0]]);
        assert_eq!(monomial_basis(1), vec![[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        assert_eq!(monomial_basis(3).len(), 10);
        for k in 0..8 {
            for (i, e) in monomial_basis(k).iter().enumerate() {
                assert_eq!(monomial_index(e), i);
            }
        }
    }

    #[test]
    fn division_by_lines() {
        let x = LinearForm::from_ints(1, 0, 0).unwrap();
        assert_eq!(divide_exact(&h("x*(x*y-z^2)"), &x).unwrap(), h("x*y-z^2"));
        assert_eq!(divide_exact(&h("x*y-z^2"), &x), Err(Error::NotDivisible));
        let f = h("x*(x^4+z^4)*(x^8+(x*z+y^2)^4)");
        assert_eq!(divide_exact(&f, &x).unwrap(), h("(x^4+z^4)*(x^8+(x*z+y^2)^4)"));
        let l = LinearForm::from_ints(1, 2, -1).unwrap();
        let g = h("(x^3+y^3)*(x^3+y^3+z^3)");
        assert_eq!(divide_exact(&g.mul(&l.to_poly()), &l).unwrap(), g);
    }

    #[test]
    fn restrictions_and_counts() {
        let f = h("x*(x*y-z^2)");
        let xy = LinearForm::from_ints(1, 1, 0).unwrap();
        assert_eq!(count_intersections(&f, &xy).unwrap(), 3);
        let z = LinearForm::from_ints(0, 0, 1).unwrap();
        assert_eq!(count_intersections(&f, &z).unwrap(), 2);
        let y = LinearForm::from_ints(0, 1, 0).unwrap();
        assert_eq!(count_intersections(&h("x*y-z^2"), &y).unwrap(), 1);
        let x = LinearForm::from_ints(1, 0, 0).unwrap();
        assert_eq!(count_intersections(&h("z*(x-z)*(x*y-z^2)"), &x).unwrap(), 1);
        assert_eq!(count_intersections(&h("(x^4+z^4)*(x^8+(x*z+y^2)^4)"), &x).unwrap(), 2);
        assert_eq!(restrict_to_line(&f, &x), Err(Error::ZeroRestriction));
    }

    #[test]
    fn reducedness() {
        assert!(!is_reduced(&h("x^2*y")));
        assert!(is_reduced(&h("x*(x*y-z^2)")));
        assert!(is_reduced(&h("(x^3+y^3)*(x^3+y^3+z^3)")));
        assert!(!is_reduced(&h("(x*y-z^2)^2*x")));
        assert!(is_reduced(&h("x*y*(x-y)")));
    }

    #[test]
    fn rational_points_on_line() {
        let f = h("x*(x*y-z^2)");
        let z = LinearForm::from_ints(0, 0, 1).unwrap();
        let r = restrict_to_line(&f, &z).unwrap();
        let (pts, all) = r.rational_points().unwrap();
        assert!(all);
        let total: u32 = pts.iter().map(|p| p.1).sum();
        assert_eq!(total, 3);
        let xy = LinearForm::from_ints(1, 1, 0).unwrap();
        let (pts, all) = restrict_to_line(&f, &xy).unwrap().rational_points().unwrap();
        assert!(!all);
        assert_eq!(pts.len(), 1);
    }

    #[test]
    fn univariate_gcd_and_roots() {
        let p = UnivariatePoly::new(vec![int(-1), int(0), int(1)]); // s^2 - 1
        let q = UnivariatePoly::new(vec![int(1), int(2), int(1)]); // (s+1)^2
        assert_eq!(p.gcd(&q), UnivariatePoly::new(vec![int(1), int(1)]));
        let roots = q.rational_roots().unwrap();
        assert_eq!(roots, vec![(int(-1), 2)]);
        assert_eq!(q.squarefree_part().degree(), Some(1));
    }
}
