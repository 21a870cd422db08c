//! Quandle homology over `Z` and 2-cohomology over prime fields.
//!
//! Chains live on the quotient complex: basis tuples have no two adjacent
//! equal entries and are ordered lexicographically. The boundary is
//!
//! `∂_n(x_1..x_n) = Σ_i (-1)^i [(x_1..x̂_i..x_n) - (x_1*x_i, .., x_{i-1}*x_i, x_{i+1}, .., x_n)]`
//!
//! with degenerate images dropped, so `∂_2(x, y) = (x) - (x*y)` and `∂_1 = 0`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quandle::FiniteQuandle;

pub const DEFAULT_DEGREE_CAP: usize = 4;

/// Dense matrix with arbitrary-precision entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntegerMatrix {
        IntegerMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    /// Panics if the rows are ragged.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> IntegerMatrix {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = IntegerMatrix::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            for (j, v) in row.iter().enumerate() {
                m.data[i * cols + j] = v.clone().into();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: impl Into<BigInt>) {
        self.data[i * self.cols + j] = v.into();
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> IntegerMatrix {
        let mut t = IntegerMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    /// Panics on a dimension mismatch.
    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntegerMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Entries reduced into `0..p`.
    pub fn mod_p(&self, p: u64) -> Vec<Vec<u64>> {
        let p = BigInt::from(p);
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|v| v.mod_floor(&p).to_u64().expect("reduced")).collect())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SNFResult {
    /// Nonzero invariant factors `d_1 | d_2 | ... | d_r`, all positive.
    pub factors: Vec<BigInt>,
    pub rank: usize,
}

impl SNFResult {
    /// Factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

/// Diagonalizes by unimodular row and column operations, then normalizes the
/// diagonal into a divisibility chain with gcd/lcm exchanges.
pub fn smith_normal_form(m: &IntegerMatrix) -> SNFResult {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<Vec<BigInt>> = m.to_rows();
    let mut diag: Vec<BigInt> = Vec::new();
    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_nonzero(&a, t..rows, t..cols) else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let pivot = a[t][t].clone();
            let pivot_row: Vec<BigInt> = a[t][t..].to_vec();
            let mut clean = true;
            for row in a.iter_mut().skip(t + 1) {
                if row[t].is_zero() {
                    continue;
                }
                let q = &row[t] / &pivot;
                if !q.is_zero() {
                    for (k, v) in pivot_row.iter().enumerate() {
                        if !v.is_zero() {
                            row[t + k] -= &q * v;
                        }
                    }
                }
                clean &= row[t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = &a[t][j] / &pivot;
                if !q.is_zero() {
                    for row in a.iter_mut().skip(t) {
                        if !row[t].is_zero() {
                            let d = &q * &row[t];
                            row[j] -= d;
                        }
                    }
                }
                clean &= a[t][j].is_zero();
            }
            if clean {
                break;
            }
            // a remainder smaller than the pivot survives in row or column t
            let mut best = (t, t);
            for i in t + 1..rows {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(a[t][t].abs());
    }
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            if !(&diag[j] % &diag[i]).is_zero() {
                let g = diag[i].gcd(&diag[j]);
                let l = diag[i].lcm(&diag[j]);
                diag[i] = g;
                diag[j] = l;
            }
        }
    }
    SNFResult { rank: diag.len(), factors: diag }
}

fn min_nonzero(a: &[Vec<BigInt>], rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            let v = &a[i][j];
            if v.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| v.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
                if v.is_one() || (-v).is_one() {
                    return best;
                }
            }
        }
    }
    best
}

/// `Z^free_rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k` with `d_1 | ... | d_k`, each `d_i > 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Number of torsion factors divisible by `p`.
    pub fn p_torsion_count(&self, p: u64) -> usize {
        let p = BigInt::from(p);
        self.torsion.iter().filter(|d| (*d % &p).is_zero()).count()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

/// Number of length-`n` tuples over `m` letters with no two adjacent equal.
pub fn nondegenerate_count(m: usize, n: usize) -> usize {
    match n {
        0 => 1,
        _ if m == 0 => 0,
        _ => m * (m - 1).pow(n as u32 - 1),
    }
}

/// Nondegenerate tuples in lexicographic order.
pub fn nondegenerate_tuples(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(nondegenerate_count(m, n));
    let mut cur = Vec::with_capacity(n);
    fn go(m: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for x in 0..m {
            if cur.last() != Some(&x) {
                cur.push(x);
                go(m, n, cur, out);
                cur.pop();
            }
        }
    }
    go(m, n, &mut cur, &mut out);
    out
}

/// Position of a tuple among the nondegenerate tuples, `None` if degenerate.
pub fn tuple_index(m: usize, tuple: &[usize]) -> Option<usize> {
    let n = tuple.len();
    let Some(&first) = tuple.first() else {
        return Some(0);
    };
    let mut idx = first * (m - 1).pow(n as u32 - 1);
    for i in 1..n {
        let (prev, x) = (tuple[i - 1], tuple[i]);
        if x == prev {
            return None;
        }
        let r = if x < prev { x } else { x - 1 };
        idx += r * (m - 1).pow((n - 1 - i) as u32);
    }
    Some(idx)
}

/// The quotient chain complex of a finite quandle up to a degree cap.
#[derive(Debug, Clone)]
pub struct QuandleComplex<'a> {
    quandle: &'a FiniteQuandle,
    max_degree: usize,
}

impl<'a> QuandleComplex<'a> {
    pub fn new(quandle: &'a FiniteQuandle, max_degree: usize) -> QuandleComplex<'a> {
        QuandleComplex { quandle, max_degree }
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn dim(&self, n: usize) -> usize {
        nondegenerate_count(self.quandle.order(), n)
    }

    fn check_degree(&self, n: usize) -> Result<()> {
        if n == 0 || n > self.max_degree {
            Err(Error::DegreeOutOfRange { degree: n, cap: self.max_degree })
        } else {
            Ok(())
        }
    }

    /// Matrix of `∂_n: C_n -> C_{n-1}` (rows index `C_{n-1}`).
    pub fn boundary(&self, n: usize) -> Result<IntegerMatrix> {
        self.check_degree(n)?;
        Ok(self.boundary_unchecked(n))
    }

    fn boundary_unchecked(&self, n: usize) -> IntegerMatrix {
        let x = self.quandle;
        let m = x.order();
        let mut d = IntegerMatrix::zeros(self.dim(n - 1), self.dim(n));
        if n == 1 {
            return d;
        }
        let mut acc = vec![0i64; self.dim(n - 1)];
        let mut face = Vec::with_capacity(n - 1);
        for (col, t) in nondegenerate_tuples(m, n).iter().enumerate() {
            acc.iter_mut().for_each(|v| *v = 0);
            for i in 0..n {
                let sign = if (i + 1) % 2 == 0 { 1 } else { -1 };
                face.clear();
                face.extend(t[..i].iter().chain(&t[i + 1..]));
                if let Some(r) = tuple_index(m, &face) {
                    acc[r] += sign;
                }
                face.clear();
                face.extend(t[..i].iter().map(|&a| x.op(a, t[i])));
                face.extend(&t[i + 1..]);
                if let Some(r) = tuple_index(m, &face) {
                    acc[r] -= sign;
                }
            }
            for (r, &v) in acc.iter().enumerate() {
                if v != 0 {
                    d.set(r, col, v);
                }
            }
        }
        d
    }

    /// `H_n^Q(X; Z)`; uses `∂_{n+1}` even when `n` equals the cap.
    pub fn homology(&self, n: usize) -> Result<AbelianGroup> {
        self.check_degree(n)?;
        let rank_n = smith_normal_form(&self.boundary_unchecked(n)).rank;
        let next = smith_normal_form(&self.boundary_unchecked(n + 1));
        Ok(AbelianGroup { free_rank: self.dim(n) - rank_n - next.rank, torsion: next.torsion() })
    }
}

pub fn boundary_matrix(x: &FiniteQuandle, n: usize) -> Result<IntegerMatrix> {
    QuandleComplex::new(x, DEFAULT_DEGREE_CAP).boundary(n)
}

pub fn homology(x: &FiniteQuandle, n: usize) -> Result<AbelianGroup> {
    QuandleComplex::new(x, DEFAULT_DEGREE_CAP).homology(n)
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut base, mut e, mut acc) = (a % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Reduced row echelon form over `Z_p`; returns pivot columns.
fn rref_mod_p(rows: &mut Vec<Vec<u64>>, cols: usize, p: u64) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = inv_mod(rows[r][c], p);
        rows[r].iter_mut().for_each(|v| *v = *v * inv % p);
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v = (*v + (p - f) * pv) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Rank over `Z_p` of vectors with entries in `0..p`.
pub fn rank_mod_p(vectors: &[Vec<u64>], p: u64) -> usize {
    let cols = vectors.first().map_or(0, Vec::len);
    let mut rows = vectors.to_vec();
    rref_mod_p(&mut rows, cols, p).len()
}

/// Basis of `{v : M v = 0}` over `Z_p`, one vector per free column in increasing order.
pub fn kernel_mod_p(m: &[Vec<u64>], cols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut rows = m.to_vec();
    let pivots = rref_mod_p(&mut rows, cols, p);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0; cols];
            v[free] = 1;
            for (row, &pc) in rows.iter().zip(&pivots) {
                v[pc] = (p - row[free]) % p;
            }
            v
        })
        .collect()
}

/// A `Z_p`-valued function on `X × X`, row `x`, column `y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cocycle2 {
    pub modulus: u64,
    pub values: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CocycleViolation {
    Diagonal { x: usize },
    Condition { x: usize, y: usize, z: usize },
}

impl fmt::Display for CocycleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CocycleViolation::Diagonal { x } => write!(f, "φ({x},{x}) is nonzero"),
            CocycleViolation::Condition { x, y, z } => write!(f, "cocycle condition fails at x={x}, y={y}, z={z}"),
        }
    }
}

impl Cocycle2 {
    pub fn zero(order: usize, modulus: u64) -> Cocycle2 {
        Cocycle2 { modulus, values: vec![vec![0; order]; order] }
    }

    pub fn from_json(text: &str) -> Result<Cocycle2> {
        let c: Cocycle2 = serde_json::from_str(text)?;
        if c.modulus < 2 {
            return Err(Error::NotPrime(c.modulus));
        }
        Ok(c)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    #[inline]
    pub fn value(&self, x: usize, y: usize) -> u64 {
        self.values[x][y]
    }

    /// Shape, range and modulus checks against `x`.
    pub fn check_shape(&self, x: &FiniteQuandle) -> Result<()> {
        let n = x.order();
        if self.modulus < 2 || self.values.len() != n || self.values.iter().any(|r| r.len() != n) {
            return Err(Error::CocycleShape { order: n });
        }
        if self.values.iter().flatten().any(|&v| v >= self.modulus) {
            return Err(Error::CocycleShape { order: n });
        }
        Ok(())
    }

    /// Shape and cocycle conditions, as an error.
    pub fn validate(&self, x: &FiniteQuandle) -> Result<()> {
        self.check_shape(x)?;
        check_cocycle(x, self).map_err(|v| Error::NotACocycle(v.to_string()))
    }

    /// `φ + δ¹f`.
    pub fn add_coboundary(&self, x: &FiniteQuandle, f: &[u64]) -> Cocycle2 {
        let d = coboundary(x, f, self.modulus);
        let p = self.modulus;
        let values = self
            .values
            .iter()
            .zip(&d.values)
            .map(|(a, b)| a.iter().zip(b).map(|(u, v)| (u + v) % p).collect())
            .collect();
        Cocycle2 { modulus: p, values }
    }

    fn pair_vector(&self, m: usize) -> Vec<u64> {
        nondegenerate_tuples(m, 2).iter().map(|t| self.values[t[0]][t[1]]).collect()
    }

    fn from_pair_vector(m: usize, p: u64, v: &[u64]) -> Cocycle2 {
        let mut c = Cocycle2::zero(m, p);
        for (t, &val) in nondegenerate_tuples(m, 2).iter().zip(v) {
            c.values[t[0]][t[1]] = val;
        }
        c
    }
}

/// `(δ¹f)(x, y) = f(x) - f(x*y)` mod `p`.
pub fn coboundary(x: &FiniteQuandle, f: &[u64], p: u64) -> Cocycle2 {
    let n = x.order();
    let values = (0..n)
        .map(|a| (0..n).map(|b| (f[a] % p + p - f[x.op(a, b)] % p) % p).collect())
        .collect();
    Cocycle2 { modulus: p, values }
}

/// `Ok` iff `φ(x,x) = 0` and `φ(x,z) - φ(x*y,z) - φ(x,y) + φ(x*z,y*z) = 0` everywhere;
/// otherwise the first violation in lexicographic order. Assumes the shape is valid.
pub fn check_cocycle(x: &FiniteQuandle, c: &Cocycle2) -> std::result::Result<(), CocycleViolation> {
    let p = c.modulus;
    if let Some(a) = x.elements().find(|&a| !c.value(a, a).is_multiple_of(p)) {
        return Err(CocycleViolation::Diagonal { x: a });
    }
    for a in x.elements() {
        for b in x.elements() {
            for z in x.elements() {
                let lhs = c.value(a, z) + c.value(x.op(a, z), x.op(b, z));
                let rhs = c.value(x.op(a, b), z) + c.value(a, b);
                if lhs % p != rhs % p {
                    return Err(CocycleViolation::Condition { x: a, y: b, z });
                }
            }
        }
    }
    Ok(())
}

pub fn is_cocycle(x: &FiniteQuandle, c: &Cocycle2) -> bool {
    c.check_shape(x).is_ok() && check_cocycle(x, c).is_ok()
}

/// Basis of the 2-cocycles `Z²(X; Z_p)`, from the kernel of `∂_3` transposed.
pub fn cocycle_basis2(x: &FiniteQuandle, p: u64) -> Result<Vec<Cocycle2>> {
    check_prime(p)?;
    let m = x.order();
    let complex = QuandleComplex::new(x, 3);
    let d3t = complex.boundary_unchecked(3).transpose().mod_p(p);
    Ok(kernel_mod_p(&d3t, complex.dim(2), p)
        .iter()
        .map(|v| Cocycle2::from_pair_vector(m, p, v))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cohomology2 {
    pub modulus: u64,
    pub dimension: usize,
    pub cocycle_dimension: usize,
    pub coboundary_dimension: usize,
    /// Basis cocycles spanning a complement of the coboundaries.
    pub representatives: Vec<Cocycle2>,
}

/// `H²_Q(X; Z_p)`; representatives are basis cocycles chosen greedily.
pub fn cohomology2(x: &FiniteQuandle, p: u64) -> Result<Cohomology2> {
    let basis = cocycle_basis2(x, p)?;
    let m = x.order();
    let mut span: Vec<Vec<u64>> = (0..m)
        .map(|a| {
            let mut f = vec![0; m];
            f[a] = 1;
            coboundary(x, &f, p).pair_vector(m)
        })
        .collect();
    let coboundary_dimension = rank_mod_p(&span, p);
    let mut rank = coboundary_dimension;
    let mut representatives = Vec::new();
    for c in &basis {
        span.push(c.pair_vector(m));
        let r = rank_mod_p(&span, p);
        if r > rank {
            rank = r;
            representatives.push(c.clone());
        } else {
            span.pop();
        }
    }
    Ok(Cohomology2 {
        modulus: p,
        dimension: basis.len() - coboundary_dimension,
        cocycle_dimension: basis.len(),
        coboundary_dimension,
        representatives,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn snf_examples() {
        let m = IntegerMatrix::from_rows(&[vec![1i64, 0, 0], vec![0, 2, 0], vec![0, 0, 3], vec![0, 0, 0]]);
        assert_eq!(smith_normal_form(&m).factors, big(&[1, 1, 6]));
        let m = IntegerMatrix::from_rows(&[vec![2i64, 4], vec![6, 8]]);
        assert_eq!(smith_normal_form(&m).factors, big(&[2, 4]));
        let z = IntegerMatrix::zeros(3, 2);
        assert_eq!(smith_normal_form(&z), SNFResult { factors: vec![], rank: 0 });
        let m = IntegerMatrix::from_rows(&[vec![4i64, 6], vec![6, 4]]);
        assert_eq!(smith_normal_form(&m).factors, big(&[2, 10]));
    }

    #[test]
    fn snf_handles_big_entries() {
        let huge = BigInt::from(i64::MAX) * BigInt::from(i64::MAX);
        let mut m = IntegerMatrix::zeros(2, 2);
        m.set(0, 0, huge.clone());
        m.set(1, 1, huge.clone() * 2);
        assert_eq!(smith_normal_form(&m).factors, vec![huge.clone(), huge * 2]);
    }

    #[test]
    fn tuple_indexing_matches_enumeration() {
        for m in 1..5 {
            for n in 0..4 {
                let ts = nondegenerate_tuples(m, n);
                assert_eq!(ts.len(), nondegenerate_count(m, n));
                for (i, t) in ts.iter().enumerate() {
                    assert_eq!(tuple_index(m, t), Some(i));
                }
            }
        }
        assert_eq!(tuple_index(3, &[0, 0, 1]), None);
    }

    #[test]
    fn boundary_low_degrees() {
        let r3 = FiniteQuandle::dihedral(3).unwrap();
        let d2 = boundary_matrix(&r3, 2).unwrap();
        for (col, t) in nondegenerate_tuples(3, 2).iter().enumerate() {
            let (x, y) = (t[0], t[1]);
            for row in 0..3 {
                let want = (row == x) as i64 - (row == r3.op(x, y)) as i64;
                assert_eq!(d2.get(row, col), &BigInt::from(want));
            }
        }
        assert!(boundary_matrix(&r3, 1).unwrap().is_zero());
        assert!(boundary_matrix(&FiniteQuandle::trivial(3).unwrap(), 3).unwrap().is_zero());
        assert!(matches!(boundary_matrix(&r3, 5), Err(Error::DegreeOutOfRange { .. })));
        assert!(boundary_matrix(&r3, 0).is_err());
    }

    #[test]
    fn homology_examples() {
        let r3 = FiniteQuandle::dihedral(3).unwrap();
        assert_eq!(homology(&r3, 1).unwrap().to_string(), "Z");
        assert_eq!(homology(&r3, 2).unwrap().to_string(), "0");
        let t2 = FiniteQuandle::trivial(2).unwrap();
        assert_eq!(homology(&t2, 2).unwrap().to_string(), "Z^2");
        let g = AbelianGroup { free_rank: 1, torsion: big(&[2, 4]) };
        assert_eq!(g.to_string(), "Z ⊕ Z/2 ⊕ Z/4");
        assert_eq!(g.p_torsion_count(2), 2);
    }

    #[test]
    fn cocycle_checks() {
        let r3 = FiniteQuandle::dihedral(3).unwrap();
        assert!(is_cocycle(&r3, &Cocycle2::zero(3, 3)));
        let mut c = Cocycle2::zero(3, 3);
        c.values[1][1] = 1;
        assert_eq!(check_cocycle(&r3, &c), Err(CocycleViolation::Diagonal { x: 1 }));
        let mut c = Cocycle2::zero(3, 3);
        c.values[0][1] = 1;
        assert!(matches!(check_cocycle(&r3, &c), Err(CocycleViolation::Condition { .. })));
        let f = [0, 1, 2];
        let d = coboundary(&r3, &f, 3);
        assert!(is_cocycle(&r3, &d));
        assert!((0..3).all(|a| d.value(a, a) == 0));
    }

    #[test]
    fn cohomology_examples() {
        let t2 = FiniteQuandle::trivial(2).unwrap();
        for p in [2, 3, 5] {
            let h = cohomology2(&t2, p).unwrap();
            assert_eq!((h.cocycle_dimension, h.coboundary_dimension, h.dimension), (2, 0, 2));
        }
        let r3 = FiniteQuandle::dihedral(3).unwrap();
        assert_eq!(cohomology2(&r3, 3).unwrap().dimension, 0);
        for c in cocycle_basis2(&FiniteQuandle::s4(), 2).unwrap() {
            assert!(is_cocycle(&FiniteQuandle::s4(), &c));
        }
        assert_eq!(cocycle_basis2(&r3, 4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn cocycle_json_round_trip() {
        let c = cocycle_basis2(&FiniteQuandle::s4(), 2).unwrap().remove(0);
        assert_eq!(Cocycle2::from_json(&c.to_json()).unwrap(), c);
        let bad = Cocycle2 { modulus: 2, values: vec![vec![0, 1]] };
        assert!(bad.validate(&FiniteQuandle::s4()).is_err());
    }

    #[test]
    fn mod_p_kernel() {
        let m = vec![vec![1, 1, 0], vec![0, 1, 1]];
        let k = kernel_mod_p(&m, 3, 2);
        assert_eq!(k, vec![vec![1, 1, 1]]);
        assert_eq!(rank_mod_p(&[vec![1, 2], vec![2, 4]], 5), 1);
    }
}
