//! Exact linear algebra over the rationals and over prime fields.
//!
//! All rational work is done on integer rows: each row is scaled to clear
//! denominators and kept primitive (content 1, positive leading entry), and
//! elimination uses cross-multiplication. Row scaling never changes the row
//! space, so ranks and kernels are those of the original rational matrix.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar; `BigRational` keeps numerator and denominator
/// coprime with a positive denominator.
pub type Scalar = BigRational;

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Scalar>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entries length must be rows * cols");
        Matrix { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, entries: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    /// Builds a matrix from integer rows; panics on ragged input.
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            entries.extend(r.iter().map(|&v| Scalar::from_integer(BigInt::from(v))));
        }
        Matrix { rows: rows.len(), cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    fn int_rows(&self) -> Vec<IntRow> {
        (0..self.rows).map(|r| int_row_from_scalars(self.row(r))).collect()
    }
}

/// Sparse integer row: `(column, value)` pairs, strictly increasing columns,
/// no zero values.
pub(crate) type IntRow = Vec<(usize, BigInt)>;

/// Scales a rational row to a primitive integer row.
pub(crate) fn int_row_from_scalars(row: &[Scalar]) -> IntRow {
    let lcm = row
        .iter()
        .filter(|v| !v.is_zero())
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let mut out: IntRow = row
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(c, v)| (c, v.numer() * (&lcm / v.denom())))
        .collect();
    make_primitive(&mut out);
    out
}

pub(crate) fn make_primitive(row: &mut IntRow) {
    if row.is_empty() {
        return;
    }
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    let neg = row[0].1.is_negative();
    if !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
    if neg {
        for (_, v) in row.iter_mut() {
            *v = -std::mem::take(v);
        }
    }
}

/// `a*x - b*y` over the union of supports, dropping cancelled entries.
fn combine(x: &IntRow, a: &BigInt, y: &IntRow, b: &BigInt) -> IntRow {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push((x[i].0, a * &x[i].1));
            i += 1;
        } else if take_y {
            out.push((y[j].0, -(b * &y[j].1)));
            j += 1;
        } else {
            let v = a * &x[i].1 - b * &y[j].1;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Eliminates column `col` of `row` using `pivot`, whose entry at `col` is
/// nonzero. Returns the primitive result.
fn eliminate(row: &IntRow, pivot: &IntRow, col: usize) -> IntRow {
    let pr = pivot.iter().find(|(c, _)| *c == col).map(|(_, v)| v).expect("pivot entry");
    let rr = match row.binary_search_by_key(&col, |(c, _)| *c) {
        Ok(i) => &row[i].1,
        Err(_) => return row.clone(),
    };
    let g = pr.gcd(rr);
    let a = pr / &g;
    let b = rr / &g;
    let mut out = combine(row, &a, pivot, &b);
    make_primitive(&mut out);
    out
}

/// Incremental row echelon form over the rationals, on primitive integer rows.
#[derive(Clone, Debug, Default)]
pub(crate) struct Echelon {
    pivots: BTreeMap<usize, IntRow>,
}

impl Echelon {
    pub(crate) fn new() -> Self {
        Echelon { pivots: BTreeMap::new() }
    }

    pub(crate) fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces the leading entries of `row` against the stored pivots.
    pub(crate) fn reduce(&self, mut row: IntRow) -> IntRow {
        make_primitive(&mut row);
        while let Some(&(lead, _)) = row.first() {
            match self.pivots.get(&lead) {
                Some(p) => row = eliminate(&row, p, lead),
                None => break,
            }
        }
        row
    }

    /// Adds a row; returns whether the rank grew.
    pub(crate) fn insert(&mut self, row: IntRow) -> bool {
        let row = self.reduce(row);
        match row.first() {
            Some(&(lead, _)) => {
                self.pivots.insert(lead, row);
                true
            }
            None => false,
        }
    }

    /// Fully reduced echelon rows (each pivot column is zero in every other
    /// row), ordered by pivot column.
    pub(crate) fn into_reduced(self) -> Vec<IntRow> {
        let cols: Vec<usize> = self.pivots.keys().copied().collect();
        let mut rows: Vec<IntRow> = self.pivots.into_values().collect();
        for (pi, &pc) in cols.iter().enumerate().rev() {
            let (before, rest) = rows.split_at_mut(pi);
            let pivot = &rest[0];
            for r in before.iter_mut() {
                if r.binary_search_by_key(&pc, |(c, _)| *c).is_ok() {
                    *r = eliminate(r, pivot, pc);
                }
            }
        }
        rows
    }
}

/// Rank of `m` over the rationals.
pub fn rank(m: &Matrix) -> usize {
    let mut e = Echelon::new();
    for r in m.int_rows() {
        e.insert(r);
    }
    e.rank()
}

pub(crate) fn rank_int_rows(rows: impl IntoIterator<Item = IntRow>) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Basis of the right null space of `m`, one vector per free column, in
/// reduced echelon normal form (the free coordinate is 1, pivot coordinates
/// are determined, other free coordinates are 0). Vectors are ordered by
/// their free column.
pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Scalar>> {
    kernel_of_int_rows(m.int_rows(), m.cols())
}

pub(crate) fn kernel_of_int_rows(rows: impl IntoIterator<Item = IntRow>, cols: usize) -> Vec<Vec<Scalar>> {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    let reduced = e.into_reduced();
    let mut is_pivot = vec![false; cols];
    for r in &reduced {
        is_pivot[r[0].0] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Scalar::zero(); cols];
        v[free] = Scalar::one();
        for r in &reduced {
            if let Ok(i) = r.binary_search_by_key(&free, |(c, _)| *c) {
                let (lead_col, lead) = &r[0];
                v[*lead_col] = -Scalar::new(r[i].1.clone(), lead.clone());
            }
        }
        basis.push(v);
    }
    basis
}

/// Rank of `m` with entries reduced modulo the prime `p`.
pub fn rank_mod_p(m: &Matrix, p: u64) -> Result<usize> {
    if !is_prime(p) {
        return Err(Error::BadPrime { p });
    }
    let bp = BigInt::from(p);
    let mut dense = Vec::with_capacity(m.rows());
    for r in 0..m.rows() {
        let mut row = Vec::with_capacity(m.cols());
        for v in m.row(r) {
            let den = residue(v.denom(), &bp);
            if den == 0 {
                return Err(Error::BadPrime { p });
            }
            let num = residue(v.numer(), &bp);
            row.push(mul_mod(num, inv_mod(den, p), p));
        }
        dense.push(row);
    }
    Ok(dense_rank_mod_p(dense, p))
}

/// Rank modulo `p` of integer rows. The caller guarantees `p` is prime.
pub(crate) fn rank_int_rows_mod_p(rows: &[IntRow], cols: usize, p: u64) -> usize {
    let bp = BigInt::from(p);
    let dense: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| {
            let mut d = vec![0u64; cols];
            for (c, v) in r {
                d[*c] = residue(v, &bp);
            }
            d
        })
        .collect();
    dense_rank_mod_p(dense, p)
}

fn residue(v: &BigInt, p: &BigInt) -> u64 {
    v.mod_floor(p).to_u64().expect("residue fits in u64")
}

fn dense_rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank][c], p);
        for v in rows[rank][c..].iter_mut() {
            *v = mul_mod(*v, inv, p);
        }
        let (top, bottom) = rows.split_at_mut(rank + 1);
        let prow = &top[rank];
        for r in bottom.iter_mut() {
            let f = r[c];
            if f == 0 {
                continue;
            }
            for j in c..cols {
                if prow[j] != 0 {
                    r[j] = sub_mod(r[j], mul_mod(f, prow[j], p), p);
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + (p - b)
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Largest prime strictly below `bound`.
pub fn prev_prime(bound: u64) -> u64 {
    let mut n = bound - 1;
    while !is_prime(n) {
        n -= 1;
    }
    n
}

/// Fixed prime used for modular pre-filtering.
pub(crate) const FILTER_PRIME: u64 = 4_611_686_018_427_387_847; // largest prime below 2^62
