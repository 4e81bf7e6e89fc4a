//! Buchberger's algorithm in `Q[u, v]` for the degree-compatible order
//! `deg` then `u`-exponent, with integer primitive polynomials, the
//! Gebauer–Möller criteria and sugar selection.
//!
//! Only leading monomials are consumed downstream: colengths of
//! zero-dimensional ideals and affine Hilbert functions.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::linalg::Scalar;
use crate::poly::Poly;

pub(crate) type Mono = [u32; 2];

fn deg(m: &Mono) -> u32 {
    m[0] + m[1]
}

fn mcmp(a: &Mono, b: &Mono) -> Ordering {
    deg(a).cmp(&deg(b)).then(a[0].cmp(&b[0]))
}

fn divides(a: &Mono, b: &Mono) -> bool {
    a[0] <= b[0] && a[1] <= b[1]
}

fn lcm(a: &Mono, b: &Mono) -> Mono {
    [a[0].max(b[0]), a[1].max(b[1])]
}

fn coprime(a: &Mono, b: &Mono) -> bool {
    (a[0] == 0 || b[0] == 0) && (a[1] == 0 || b[1] == 0)
}

/// Nonzero polynomial with terms in descending order.
pub(crate) type BiPoly = Vec<(Mono, BigInt)>;

/// Reads a polynomial whose `z`-exponents are all zero, clearing
/// denominators.
pub(crate) fn from_poly(p: &Poly) -> BiPoly {
    let q = p.primitive_integer();
    let mut out: BiPoly = q
        .terms()
        .map(|(e, c)| {
            debug_assert_eq!(e[2], 0);
            debug_assert!(c.is_integer());
            ([e[0], e[1]], c.to_integer())
        })
        .collect();
    out.sort_by(|a, b| mcmp(&b.0, &a.0));
    normalize(&mut out);
    out
}


fn normalize(p: &mut BiPoly) {
    if p.is_empty() {
        return;
    }
    let mut g = BigInt::zero();
    for (_, c) in p.iter() {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    if p[0].1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for t in p.iter_mut() {
            t.1 /= &g;
        }
    }
}

/// `a * x - b * (q * r)`, merged in descending order.
fn sub_mul(x: &[(Mono, BigInt)], a: &BigInt, r: &[(Mono, BigInt)], b: &BigInt, q: &Mono) -> BiPoly {
    let mut out = Vec::with_capacity(x.len() + r.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < r.len() {
        let rm = r.get(j).map(|t| [t.0[0] + q[0], t.0[1] + q[1]]);
        let ord = match (x.get(i), rm) {
            (Some(t), Some(m)) => mcmp(&t.0, &m),
            (Some(_), None) => Ordering::Greater,
            (None, _) => Ordering::Less,
        };
        match ord {
            Ordering::Greater => {
                out.push((x[i].0, a * &x[i].1));
                i += 1;
            }
            Ordering::Less => {
                out.push((rm.expect("present"), -(b * &r[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let c = a * &x[i].1 - b * &r[j].1;
                if !c.is_zero() {
                    out.push((x[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

struct Elem {
    poly: BiPoly,
    sugar: u32,
}

/// Full reduction of `p` modulo `basis`; returns the remainder and its sugar.
fn reduce(mut p: BiPoly, mut sugar: u32, basis: &[&Elem]) -> (BiPoly, u32) {
    let mut pos = 0;
    let mut steps = 0u32;
    while pos < p.len() {
        let m = p[pos].0;
        let reducer = basis.iter().filter(|e| divides(&e.poly[0].0, &m)).min_by_key(|e| e.poly.len());
        match reducer {
            None => pos += 1,
            Some(e) => {
                let r = &e.poly;
                let q = [m[0] - r[0].0[0], m[1] - r[0].0[1]];
                sugar = sugar.max(e.sugar + deg(&q));
                let g = p[pos].1.gcd(&r[0].1);
                let a = &r[0].1 / &g;
                let b = &p[pos].1 / &g;
                let tail = sub_mul(&p[pos + 1..], &a, &r[1..], &b, &q);
                p.truncate(pos);
                if !a.is_one() {
                    for t in p.iter_mut() {
                        t.1 *= &a;
                    }
                }
                p.extend(tail);
                steps += 1;
                if steps.is_multiple_of(8) {
                    normalize(&mut p);
                }
            }
        }
    }
    normalize(&mut p);
    (p, sugar)
}

#[derive(Clone, Copy)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
    sugar: u32,
}

fn spoly(f: &BiPoly, g: &BiPoly, l: &Mono) -> BiPoly {
    let qf = [l[0] - f[0].0[0], l[1] - f[0].0[1]];
    let qg = [l[0] - g[0].0[0], l[1] - g[0].0[1]];
    let gc = f[0].1.gcd(&g[0].1);
    let a = &g[0].1 / &gc;
    let b = &f[0].1 / &gc;
    // a * qf * f - b * qg * g
    let shifted: BiPoly = f[1..].iter().map(|(m, c)| ([m[0] + qf[0], m[1] + qf[1]], c.clone())).collect();
    let mut out = sub_mul(&shifted, &a, &g[1..], &b, &qg);
    normalize(&mut out);
    out
}

/// Gröbner basis; returns a minimal basis sorted by leading monomial.
pub(crate) fn groebner(gens: Vec<BiPoly>) -> Vec<BiPoly> {
    let mut elems: Vec<Elem> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut queue: Vec<(BiPoly, u32)> = gens
        .into_iter()
        .filter(|p| !p.is_empty())
        .map(|p| {
            let s = p.iter().map(|t| deg(&t.0)).max().unwrap_or(0);
            (p, s)
        })
        .collect();
    queue.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| mcmp(&a.0[0].0, &b.0[0].0)));
    for (p, s) in queue {
        let basis: Vec<&Elem> = active.iter().map(|&i| &elems[i]).collect();
        let (h, s) = reduce(p, s, &basis);
        if !h.is_empty() {
            insert(&mut elems, &mut active, &mut pairs, h, s);
        }
    }
    while !pairs.is_empty() {
        let (k, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.sugar.cmp(&b.sugar).then_with(|| mcmp(&a.lcm, &b.lcm)).then((a.i, a.j).cmp(&(b.i, b.j)))
            })
            .expect("nonempty");
        let pr = pairs.swap_remove(k);
        let sp = spoly(&elems[pr.i].poly, &elems[pr.j].poly, &pr.lcm);
        if sp.is_empty() {
            continue;
        }
        let basis: Vec<&Elem> = active.iter().map(|&i| &elems[i]).collect();
        let (h, s) = reduce(sp, pr.sugar, &basis);
        if !h.is_empty() {
            insert(&mut elems, &mut active, &mut pairs, h, s);
        }
    }
    let mut out: Vec<BiPoly> = active.into_iter().map(|i| std::mem::take(&mut elems[i].poly)).collect();
    out.sort_by(|a, b| mcmp(&a[0].0, &b[0].0));
    out
}

/// Gebauer–Möller update for a new element `h`.
fn insert(elems: &mut Vec<Elem>, active: &mut Vec<usize>, pairs: &mut Vec<Pair>, h: BiPoly, sugar: u32) {
    let hi = elems.len();
    let lh = h[0].0;
    let mk = |g: usize, elems: &Vec<Elem>| {
        let lg = elems[g].poly[0].0;
        let l = lcm(&lh, &lg);
        let s = (sugar + deg(&l) - deg(&lh)).max(elems[g].sugar + deg(&l) - deg(&lg));
        Pair { i: g, j: hi, lcm: l, sugar: s }
    };
    let cand: Vec<Pair> = active.iter().map(|&g| mk(g, elems)).collect();
    // chain criterion among the new pairs
    let mut kept: Vec<Pair> = Vec::new();
    for (idx, p) in cand.iter().enumerate() {
        let lp = elems[p.i].poly[0].0;
        if coprime(&lh, &lp) {
            kept.push(*p);
            continue;
        }
        let dominated = cand.iter().enumerate().any(|(o, q)| {
            o != idx && divides(&q.lcm, &p.lcm) && (q.lcm != p.lcm || o < idx)
        });
        if !dominated {
            kept.push(*p);
        }
    }
    // product criterion
    kept.retain(|p| !coprime(&lh, &elems[p.i].poly[0].0));
    // old pairs made redundant by h
    pairs.retain(|p| {
        let li = elems[p.i].poly[0].0;
        let lj = elems[p.j].poly[0].0;
        !(divides(&lh, &p.lcm) && lcm(&li, &lh) != p.lcm && lcm(&lj, &lh) != p.lcm)
    });
    pairs.extend(kept);
    active.retain(|&g| !divides(&lh, &elems[g].poly[0].0));
    elems.push(Elem { poly: h, sugar });
    active.push(hi);
}

/// Number of standard monomials in each degree, or `None` when the ideal
/// is not zero-dimensional (no pure power of `u` or of `v` among leads).
pub(crate) fn standard_monomials_by_degree(leads: &[Mono]) -> Option<Vec<u64>> {
    let a = leads.iter().filter(|m| m[1] == 0).map(|m| m[0]).min()?;
    let b = leads.iter().filter(|m| m[0] == 0).map(|m| m[1]).min()?;
    let mut out = vec![0u64; (a + b) as usize];
    for i in 0..a {
        for j in 0..b {
            let m = [i, j];
            if !leads.iter().any(|l| divides(l, &m)) {
                out[(i + j) as usize] += 1;
            }
        }
    }
    while out.last() == Some(&0) {
        out.pop();
    }
    Some(out)
}

pub(crate) fn leads(gb: &[BiPoly]) -> Vec<Mono> {
    gb.iter().map(|p| p[0].0).collect()
}

/// `dim Q[u,v] / I` for generators given as polynomials in the `x, y` slots,
/// or `None` when the ideal is not zero-dimensional.
pub(crate) fn colength(gens: &[Poly]) -> Option<u64> {
    let gb = groebner(gens.iter().filter(|p| !p.is_zero()).map(from_poly).collect());
    standard_monomials_by_degree(&leads(&gb)).map(|v| v.iter().sum())
}

#[allow(dead_code)]
pub(crate) fn to_poly(p: &BiPoly) -> Poly {
    Poly::from_terms(p.iter().map(|(m, c)| ([m[0], m[1], 0], Scalar::from_integer(c.clone()))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn colength_of_monomial_and_complete_intersections() {
        assert_eq!(colength(&[p("x^2"), p("y^3")]), Some(6));
        assert_eq!(colength(&[p("x^2 - y^3"), p("x*y")]), Some(5));
        assert_eq!(colength(&[p("x*y")]), None);
        assert_eq!(colength(&[p("1 + x"), p("y")]), Some(1));
        assert_eq!(colength(&[p("3"), p("x")]), Some(0));
        // (x^2+y^2-1, x-y): two points
        assert_eq!(colength(&[p("x^2+y^2-1"), p("x-y")]), Some(2));
    }

    #[test]
    fn gb_leading_terms() {
        let gb = groebner(vec![from_poly(&p("x^2 - y")), from_poly(&p("x*y - 1"))]);
        let l = leads(&gb);
        // ideal of (x^3 = 1, y = x^2): colength 3
        assert_eq!(standard_monomials_by_degree(&l).unwrap().iter().sum::<u64>(), 3);
    }
}
