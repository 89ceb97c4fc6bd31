//! Exact linear algebra over `Z` and `Z/m`: sparse big-integer matrices,
//! Smith normal form with transforms, integer kernels (optionally modulo
//! `m`), lattice coordinates, solving congruences and lattice quotients.
//!
//! All algorithms first run on checked `i128` arithmetic and transparently
//! restart on arbitrary-precision integers if any intermediate overflows, so
//! results are always exact. Pivots are chosen deterministically: smallest
//! absolute value, ties broken by `(row, col)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Dense matrix of big integers, row-major.
pub type Dense = Vec<Vec<BigInt>>;

/// Sparse integer matrix with arbitrary-precision entries.
///
/// Each row stores `(column, value)` pairs sorted by column; zero entries
/// are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, BigInt)>>,
}

impl IntMatrix {
    /// The `rows × cols` zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    /// The `n × n` identity matrix.
    pub fn identity(n: usize) -> Self {
        let data = (0..n).map(|i| vec![(i, BigInt::one())]).collect();
        IntMatrix { rows: n, cols: n, data }
    }

    /// Builds a matrix from dense machine-integer rows.
    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let data = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged rows");
                r.iter().enumerate().filter(|(_, v)| **v != 0).map(|(j, v)| (j, BigInt::from(*v))).collect()
            })
            .collect();
        IntMatrix { rows: rows.len(), cols, data }
    }

    /// Builds a matrix from dense big-integer rows with an explicit column count.
    pub fn from_dense_big(cols: usize, rows: &[Vec<BigInt>]) -> Self {
        let data = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged rows");
                r.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(j, v)| (j, v.clone())).collect()
            })
            .collect();
        IntMatrix { rows: rows.len(), cols, data }
    }

    /// Builds a matrix whose columns are the given dense vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut data = vec![Vec::new(); rows];
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, v) in c.iter().enumerate() {
                if !v.is_zero() {
                    data[i].push((j, v.clone()));
                }
            }
        }
        IntMatrix { rows, cols: columns.len(), data }
    }

    /// Builds a matrix from sparse rows; duplicate columns are summed and
    /// zeros dropped.
    pub fn from_sparse_rows(cols: usize, rows: Vec<Vec<(usize, i64)>>) -> Self {
        let n = rows.len();
        let data = rows.into_iter().map(|r| normalize_sparse(cols, r)).collect();
        IntMatrix { rows: n, cols, data }
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// The stored entries of row `i`.
    pub fn row(&self, i: usize) -> &[(usize, BigInt)] {
        &self.data[i]
    }

    /// Entry `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.data[i]
            .binary_search_by_key(&j, |e| e.0)
            .map(|k| self.data[i][k].1.clone())
            .unwrap_or_default()
    }

    /// Appends a sparse row (duplicates summed, zeros dropped).
    pub fn push_row(&mut self, row: Vec<(usize, BigInt)>) {
        let mut row: Vec<(usize, BigInt)> = row.into_iter().filter(|e| !e.1.is_zero()).collect();
        row.sort_by_key(|e| e.0);
        let mut merged: Vec<(usize, BigInt)> = Vec::with_capacity(row.len());
        for (j, v) in row {
            assert!(j < self.cols, "column out of range");
            match merged.last_mut() {
                Some(last) if last.0 == j => last.1 += v,
                _ => merged.push((j, v)),
            }
        }
        merged.retain(|e| !e.1.is_zero());
        self.data.push(merged);
        self.rows += 1;
    }

    /// Number of stored (nonzero) entries.
    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    /// True when every entry is zero.
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    /// Dense copy.
    pub fn to_dense(&self) -> Dense {
        let mut out = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (i, r) in self.data.iter().enumerate() {
            for (j, v) in r {
                out[i][*j] = v.clone();
            }
        }
        out
    }

    /// The columns as dense vectors.
    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.rows]; self.cols];
        for (i, r) in self.data.iter().enumerate() {
            for (j, v) in r {
                out[*j][i] = v.clone();
            }
        }
        out
    }

    /// Transpose.
    pub fn transpose(&self) -> IntMatrix {
        let mut data = vec![Vec::new(); self.cols];
        for (i, r) in self.data.iter().enumerate() {
            for (j, v) in r {
                data[*j].push((i, v.clone()));
            }
        }
        IntMatrix { rows: self.cols, cols: self.rows, data }
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Mismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .map(|r| {
                let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
                for (k, a) in r {
                    for (j, b) in &other.data[*k] {
                        *acc.entry(*j).or_default() += a * b;
                    }
                }
                acc.into_iter().filter(|e| !e.1.is_zero()).collect()
            })
            .collect();
        Ok(IntMatrix { rows: self.rows, cols: other.cols, data })
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        self.data.iter().map(|r| r.iter().map(|(j, a)| a * &v[*j]).sum()).collect()
    }
}

fn normalize_sparse(cols: usize, mut row: Vec<(usize, i64)>) -> Vec<(usize, BigInt)> {
    row.sort_by_key(|e| e.0);
    let mut out: Vec<(usize, BigInt)> = Vec::with_capacity(row.len());
    for (j, v) in row {
        assert!(j < cols, "column out of range");
        match out.last_mut() {
            Some(last) if last.0 == j => last.1 += v,
            _ => out.push((j, BigInt::from(v))),
        }
    }
    out.retain(|e| !e.1.is_zero());
    out
}

// ---------------------------------------------------------------------------
// Integer abstraction with overflow detection.

trait Int: Clone + PartialEq + fmt::Debug {
    fn nil() -> Self;
    fn unit() -> Self;
    fn is_nil(&self) -> bool;
    fn is_neg(&self) -> bool;
    fn from_big(b: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn cadd(&self, o: &Self) -> Option<Self>;
    fn csub(&self, o: &Self) -> Option<Self>;
    fn cmul(&self, o: &Self) -> Option<Self>;
    fn cneg(&self) -> Option<Self>;
    fn fdiv(&self, o: &Self) -> Self;
    fn rem_is_zero(&self, o: &Self) -> bool;
    fn cmp_abs(&self, o: &Self) -> Ordering;
    /// `(g, s, t)` with `g = gcd(a, b) > 0` and `s·a + t·b = g`.
    fn ext_gcd(a: &Self, b: &Self) -> Option<(Self, Self, Self)>;
}

impl Int for i128 {
    fn nil() -> Self {
        0
    }
    fn unit() -> Self {
        1
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn is_neg(&self) -> bool {
        *self < 0
    }
    fn from_big(b: &BigInt) -> Option<Self> {
        b.to_i128().filter(|v| v.checked_abs().is_some())
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn cadd(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn csub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn cmul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn cneg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn fdiv(&self, o: &Self) -> Self {
        Integer::div_floor(self, o)
    }
    fn rem_is_zero(&self, o: &Self) -> bool {
        self % o == 0
    }
    fn cmp_abs(&self, o: &Self) -> Ordering {
        self.unsigned_abs().cmp(&o.unsigned_abs())
    }
    fn ext_gcd(a: &Self, b: &Self) -> Option<(Self, Self, Self)> {
        let e = Integer::extended_gcd(a, b);
        if e.gcd < 0 {
            Some((e.gcd.checked_neg()?, e.x.checked_neg()?, e.y.checked_neg()?))
        } else {
            Some((e.gcd, e.x, e.y))
        }
    }
}

impl Int for BigInt {
    fn nil() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_neg(&self) -> bool {
        self.is_negative()
    }
    fn from_big(b: &BigInt) -> Option<Self> {
        Some(b.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn cadd(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn csub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn cmul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn cneg(&self) -> Option<Self> {
        Some(-self)
    }
    fn fdiv(&self, o: &Self) -> Self {
        Integer::div_floor(self, o)
    }
    fn rem_is_zero(&self, o: &Self) -> bool {
        Zero::is_zero(&(self % o))
    }
    fn cmp_abs(&self, o: &Self) -> Ordering {
        self.magnitude().cmp(o.magnitude())
    }
    fn ext_gcd(a: &Self, b: &Self) -> Option<(Self, Self, Self)> {
        let e = Integer::extended_gcd(a, b);
        if e.gcd.is_negative() {
            Some((-e.gcd, -e.x, -e.y))
        } else {
            Some((e.gcd, e.x, e.y))
        }
    }
}

/// Marker for an `i128` overflow; triggers a big-integer rerun.
#[derive(Debug)]
struct Overflow;

type Ov<T> = core::result::Result<T, Overflow>;

fn ck<T>(v: Option<T>) -> Ov<T> {
    v.ok_or(Overflow)
}

/// Runs `f` on `i128`, falling back to `BigInt` on overflow.
macro_rules! with_fallback {
    ($f:ident ( $($arg:expr),* )) => {
        match $f::<i128>($($arg),*) {
            Ok(v) => v,
            Err(Overflow) => $f::<BigInt>($($arg),*).expect("big-integer arithmetic cannot overflow"),
        }
    };
}

// ---------------------------------------------------------------------------
// Row echelon basis of the row lattice (sparse, incremental).

type SparseRow<T> = Vec<(usize, T)>;

fn combine<T: Int>(a: &T, u: &SparseRow<T>, b: &T, v: &SparseRow<T>) -> Ov<SparseRow<T>> {
    // a·u + b·v
    let mut out = Vec::with_capacity(u.len() + v.len());
    let (mut i, mut j) = (0, 0);
    while i < u.len() || j < v.len() {
        let take = match (u.get(i), v.get(j)) {
            (Some(x), Some(y)) => x.0.cmp(&y.0),
            (Some(_), None) => Ordering::Less,
            _ => Ordering::Greater,
        };
        let (col, val) = match take {
            Ordering::Less => {
                i += 1;
                (u[i - 1].0, ck(a.cmul(&u[i - 1].1))?)
            }
            Ordering::Greater => {
                j += 1;
                (v[j - 1].0, ck(b.cmul(&v[j - 1].1))?)
            }
            Ordering::Equal => {
                i += 1;
                j += 1;
                let s = ck(ck(a.cmul(&u[i - 1].1))?.cadd(&ck(b.cmul(&v[j - 1].1))?))?;
                (u[i - 1].0, s)
            }
        };
        if !val.is_nil() {
            out.push((col, val));
        }
    }
    Ok(out)
}

fn echelon_generic<T: Int>(m: &IntMatrix) -> Ov<Vec<SparseRow<T>>> {
    let mut pivots: BTreeMap<usize, SparseRow<T>> = BTreeMap::new();
    for r in &m.data {
        let mut v: SparseRow<T> = Vec::with_capacity(r.len());
        for (j, x) in r {
            v.push((*j, ck(T::from_big(x))?));
        }
        loop {
            let Some((c, b)) = v.first().cloned() else { break };
            match pivots.get(&c) {
                None => {
                    if b.is_neg() {
                        let mut neg = Vec::with_capacity(v.len());
                        for (j, x) in &v {
                            neg.push((*j, ck(x.cneg())?));
                        }
                        v = neg;
                    }
                    pivots.insert(c, v);
                    break;
                }
                Some(p) => {
                    let a = p[0].1.clone();
                    if b.rem_is_zero(&a) {
                        let q = ck(b.fdiv(&a).cneg())?;
                        v = combine(&T::unit(), &v, &q, p)?;
                    } else {
                        let (g, s, t) = ck(T::ext_gcd(&a, &b))?;
                        let new_pivot = combine(&s, p, &t, &v)?;
                        let a_g = a.fdiv(&g);
                        let b_g = ck(b.fdiv(&g).cneg())?;
                        v = combine(&a_g, &v, &b_g, p)?;
                        pivots.insert(c, new_pivot);
                    }
                }
            }
        }
    }
    Ok(pivots.into_values().collect())
}

/// A basis (in echelon form, positive pivots) of the lattice spanned by the
/// rows of `m`. The result has the same row lattice, hence the same kernel
/// over `Z` and modulo every `m`.
pub fn row_echelon(m: &IntMatrix) -> IntMatrix {
    fn run<T: Int>(m: &IntMatrix) -> Ov<IntMatrix> {
        let rows = echelon_generic::<T>(m)?;
        let data: Vec<Vec<(usize, BigInt)>> =
            rows.into_iter().map(|r| r.into_iter().map(|(j, v)| (j, v.to_big())).collect()).collect();
        Ok(IntMatrix { rows: data.len(), cols: m.cols, data })
    }
    with_fallback!(run(m))
}

/// Fully reduced row Hermite normal form of the lattice spanned by `rows`
/// (each of length `n`): positive pivots, entries above each pivot reduced
/// into `[0, pivot)`. Unique for a given lattice; used to canonicalize bases.
pub fn hermite_basis(n: usize, rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let m = IntMatrix::from_dense_big(n, rows);
    let ech = row_echelon(&m);
    let mut dense = ech.to_dense();
    let leads: Vec<usize> = dense.iter().map(|r| r.iter().position(|v| !v.is_zero()).unwrap()).collect();
    for i in (0..dense.len()).rev() {
        let c = leads[i];
        let p = dense[i][c].clone();
        for k in 0..i {
            let q = Integer::div_floor(&dense[k][c], &p);
            if !q.is_zero() {
                let row_i = dense[i].clone();
                for (x, y) in dense[k].iter_mut().zip(row_i.iter()) {
                    *x -= &q * y;
                }
            }
        }
    }
    dense
}

// ---------------------------------------------------------------------------
// Dense Smith normal form with transforms.

struct SnfWork<T> {
    a: Vec<Vec<T>>,
    p: Option<Vec<Vec<T>>>,
    p_inv: Option<Vec<Vec<T>>>,
    q: Option<Vec<Vec<T>>>,
    q_inv: Option<Vec<Vec<T>>>,
}

fn ident<T: Int>(n: usize) -> Vec<Vec<T>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { T::unit() } else { T::nil() }).collect()).collect()
}

impl<T: Int> SnfWork<T> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some(p) = &mut self.p {
            p.swap(i, j);
        }
        if let Some(pi) = &mut self.p_inv {
            for row in pi.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        if let Some(q) = &mut self.q {
            for row in q.iter_mut() {
                row.swap(i, j);
            }
        }
        if let Some(qi) = &mut self.q_inv {
            qi.swap(i, j);
        }
    }

    /// row_i += c·row_j
    fn add_row(&mut self, i: usize, j: usize, c: &T) -> Ov<()> {
        fn axpy<T: Int>(m: &mut [Vec<T>], i: usize, j: usize, c: &T) -> Ov<()> {
            let src = m[j].clone();
            for (x, y) in m[i].iter_mut().zip(src.iter()) {
                if !y.is_nil() {
                    *x = ck(x.cadd(&ck(c.cmul(y))?))?;
                }
            }
            Ok(())
        }
        axpy(&mut self.a, i, j, c)?;
        if let Some(p) = &mut self.p {
            axpy(p, i, j, c)?;
        }
        if let Some(pi) = &mut self.p_inv {
            // column_j -= c·column_i
            for row in pi.iter_mut() {
                if !row[i].is_nil() {
                    row[j] = ck(row[j].csub(&ck(c.cmul(&row[i]))?))?;
                }
            }
        }
        Ok(())
    }

    /// col_i += c·col_j
    fn add_col(&mut self, i: usize, j: usize, c: &T) -> Ov<()> {
        fn caxpy<T: Int>(m: &mut [Vec<T>], i: usize, j: usize, c: &T) -> Ov<()> {
            for row in m.iter_mut() {
                if !row[j].is_nil() {
                    row[i] = ck(row[i].cadd(&ck(c.cmul(&row[j]))?))?;
                }
            }
            Ok(())
        }
        caxpy(&mut self.a, i, j, c)?;
        if let Some(q) = &mut self.q {
            caxpy(q, i, j, c)?;
        }
        if let Some(qi) = &mut self.q_inv {
            // row_j -= c·row_i
            let src = qi[i].clone();
            for (x, y) in qi[j].iter_mut().zip(src.iter()) {
                if !y.is_nil() {
                    *x = ck(x.csub(&ck(c.cmul(y))?))?;
                }
            }
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) -> Ov<()> {
        for x in self.a[i].iter_mut() {
            *x = ck(x.cneg())?;
        }
        if let Some(p) = &mut self.p {
            for x in p[i].iter_mut() {
                *x = ck(x.cneg())?;
            }
        }
        if let Some(pi) = &mut self.p_inv {
            for row in pi.iter_mut() {
                row[i] = ck(row[i].cneg())?;
            }
        }
        Ok(())
    }
}

/// Full result of a Smith decomposition `P·A·Q = D`.
#[derive(Debug, Clone)]
pub struct SmithDecomposition {
    /// Nonzero diagonal entries `d_1 | d_2 | … | d_k`, all positive.
    pub diagonal: Vec<BigInt>,
    /// Row transform `P` (unimodular), if requested.
    pub p: Option<Dense>,
    /// Inverse of `P`, if requested.
    pub p_inv: Option<Dense>,
    /// Column transform `Q` (unimodular), if requested.
    pub q: Option<Dense>,
    /// Inverse of `Q`, if requested.
    pub q_inv: Option<Dense>,
}

/// Which transforms to accumulate during Smith reduction.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Transforms {
    /// Accumulate `P`.
    pub p: bool,
    /// Accumulate `P⁻¹`.
    pub p_inv: bool,
    /// Accumulate `Q`.
    pub q: bool,
    /// Accumulate `Q⁻¹`.
    pub q_inv: bool,
}

impl Transforms {
    /// No transforms: invariant factors only.
    pub const NONE: Transforms = Transforms { p: false, p_inv: false, q: false, q_inv: false };
    /// All four transforms.
    pub const ALL: Transforms = Transforms { p: true, p_inv: true, q: true, q_inv: true };
}

fn snf_generic<T: Int>(m: &IntMatrix, want: Transforms) -> Ov<SmithDecomposition> {
    let (r, c) = (m.rows, m.cols);
    let mut a = vec![vec![T::nil(); c]; r];
    for (i, row) in m.data.iter().enumerate() {
        for (j, v) in row {
            a[i][*j] = ck(T::from_big(v))?;
        }
    }
    let mut w = SnfWork {
        a,
        p: want.p.then(|| ident(r)),
        p_inv: want.p_inv.then(|| ident(r)),
        q: want.q.then(|| ident(c)),
        q_inv: want.q_inv.then(|| ident(c)),
    };
    let mut diagonal = Vec::new();
    let mut t = 0;
    while t < r.min(c) {
        let mut found = false;
        loop {
            // Smallest |entry| in the trailing submatrix, ties by (row, col).
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    let v = &w.a[i][j];
                    if v.is_nil() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| v.cmp_abs(&w.a[bi][bj]) == Ordering::Less) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            found = true;
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            let pivot = w.a[t][t].clone();
            let mut clean = true;
            for i in t + 1..r {
                if !w.a[i][t].is_nil() {
                    let q = ck(w.a[i][t].fdiv(&pivot).cneg())?;
                    w.add_row(i, t, &q)?;
                    clean &= w.a[i][t].is_nil();
                }
            }
            for j in t + 1..c {
                if !w.a[t][j].is_nil() {
                    let q = ck(w.a[t][j].fdiv(&pivot).cneg())?;
                    w.add_col(j, t, &q)?;
                    clean &= w.a[t][j].is_nil();
                }
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..r).find(|&i| (t + 1..c).any(|j| !w.a[i][j].rem_is_zero(&pivot)));
            match offender {
                Some(i) => w.add_row(t, i, &T::unit())?,
                None => break,
            }
        }
        if !found {
            break;
        }
        if w.a[t][t].is_neg() {
            w.negate_row(t)?;
        }
        diagonal.push(w.a[t][t].to_big());
        t += 1;
    }
    let conv = |m: Option<Vec<Vec<T>>>| m.map(|m| m.into_iter().map(|r| r.iter().map(Int::to_big).collect()).collect());
    Ok(SmithDecomposition { diagonal, p: conv(w.p), p_inv: conv(w.p_inv), q: conv(w.q), q_inv: conv(w.q_inv) })
}

/// Smith decomposition with the requested transforms.
pub fn smith_decomposition(m: &IntMatrix, want: Transforms) -> SmithDecomposition {
    with_fallback!(snf_generic(m, want))
}

/// Invariant factors and rank of an integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    /// `d_1 | d_2 | … | d_k`, all positive.
    pub factors: Vec<BigInt>,
    /// `k`, the rank over `Q`.
    pub rank: usize,
}

/// Smith normal form (invariant factors only).
///
/// Large, very sparse inputs are first compressed to an echelon basis of
/// their row lattice, which has the same invariant factors.
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let compact = if m.rows > m.cols { row_echelon(m) } else { m.clone() };
    let d = smith_decomposition(&compact, Transforms::NONE);
    SnfResult { rank: d.diagonal.len(), factors: d.diagonal }
}

/// Rank over `Q` of an integer matrix.
pub fn rank(m: &IntMatrix) -> usize {
    row_echelon(m).rows()
}

// ---------------------------------------------------------------------------
// Kernels, coordinates, congruences.

fn modulus_gcd(d: &BigInt, m: &BigInt) -> BigInt {
    d.gcd(m)
}

/// Basis (as dense columns) of `{x ∈ Zⁿ : A·x ≡ 0 (mod m)}`; `m = 0` gives
/// the integer kernel. The basis is returned in reduced Hermite form, so it
/// is canonical for the lattice.
pub fn kernel_basis_mod(a: &IntMatrix, m: &BigInt) -> Vec<Vec<BigInt>> {
    let n = a.cols();
    let ech = row_echelon(a);
    if ech.rows() == 0 {
        return (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
    }
    let d = smith_decomposition(&ech, Transforms { q: true, ..Transforms::NONE });
    let q = d.q.expect("requested");
    let mut basis = Vec::new();
    for j in 0..n {
        let scale = if j < d.diagonal.len() {
            if m.is_zero() {
                continue;
            }
            m / modulus_gcd(&d.diagonal[j], m)
        } else {
            BigInt::one()
        };
        basis.push((0..n).map(|i| &q[i][j] * &scale).collect::<Vec<BigInt>>());
    }
    hermite_basis(n, &basis)
}

/// Coordinates of each vector in `vectors` with respect to the lattice
/// basis `basis` (columns, linearly independent). Fails if some vector does
/// not lie in the lattice.
pub fn lattice_coordinates(basis: &[Vec<BigInt>], vectors: &[Vec<BigInt>]) -> Result<Vec<Vec<BigInt>>> {
    let k = basis.len();
    if k == 0 {
        return if vectors.iter().all(|v| v.iter().all(Zero::is_zero)) {
            Ok(vec![Vec::new(); vectors.len()])
        } else {
            Err(Error::BrokenComplex("vector outside the zero lattice".into()))
        };
    }
    let n = basis[0].len();
    let b = IntMatrix::from_columns(n, basis);
    let d = smith_decomposition(&b, Transforms { p: true, q: true, ..Transforms::NONE });
    if d.diagonal.len() != k {
        return Err(Error::Mismatch("lattice basis is not linearly independent".into()));
    }
    let p = d.p.expect("requested");
    let q = d.q.expect("requested");
    let mut out = Vec::with_capacity(vectors.len());
    for v in vectors {
        let pv: Vec<BigInt> = p.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect();
        if pv[k..].iter().any(|x| !x.is_zero()) {
            return Err(Error::BrokenComplex("vector outside the rational span of the lattice".into()));
        }
        let mut z = Vec::with_capacity(k);
        for i in 0..k {
            let (quo, rem) = pv[i].div_rem(&d.diagonal[i]);
            if !rem.is_zero() {
                return Err(Error::BrokenComplex("vector outside the lattice".into()));
            }
            z.push(quo);
        }
        out.push(q.iter().map(|row| row.iter().zip(&z).map(|(a, b)| a * b).sum()).collect());
    }
    Ok(out)
}

/// Some `x` with `A·x ≡ b (mod m)` (`m = 0`: exact), or `None`.
pub fn solve_mod(a: &IntMatrix, b: &[BigInt], m: &BigInt) -> Option<Vec<BigInt>> {
    assert_eq!(b.len(), a.rows(), "right-hand side length mismatch");
    let n = a.cols();
    let d = smith_decomposition(a, Transforms { p: true, q: true, ..Transforms::NONE });
    let p = d.p.expect("requested");
    let q = d.q.expect("requested");
    let pb: Vec<BigInt> = p.iter().map(|row| row.iter().zip(b).map(|(x, y)| x * y).sum()).collect();
    let k = d.diagonal.len();
    let reduce = |v: &BigInt| if m.is_zero() { v.clone() } else { v.mod_floor(m) };
    if pb[k..].iter().any(|v| !reduce(v).is_zero()) {
        return None;
    }
    let mut y = vec![BigInt::zero(); n];
    for i in 0..k {
        let di = &d.diagonal[i];
        if m.is_zero() {
            let (quo, rem) = pb[i].div_rem(di);
            if !rem.is_zero() {
                return None;
            }
            y[i] = quo;
        } else {
            let g = di.gcd(m);
            if !pb[i].mod_floor(&g).is_zero() {
                return None;
            }
            let mg = m / &g;
            let dg = (di / &g).mod_floor(&mg);
            let bg = (&pb[i] / &g).mod_floor(&mg);
            y[i] = if mg.is_one() { BigInt::zero() } else { (bg * mod_inverse(&dg, &mg)?).mod_floor(&mg) };
        }
    }
    let x: Vec<BigInt> = q.iter().map(|row| row.iter().zip(&y).map(|(a, b)| a * b).sum()).collect();
    Some(x.into_iter().map(|v| reduce(&v)).collect())
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else if (-&e.gcd).is_one() {
        Some((-e.x).mod_floor(m))
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// Finitely generated abelian groups and lattice quotients.

/// A finitely generated abelian group `Z^r ⊕ Z_{t_1} ⊕ … ⊕ Z_{t_s}` with
/// `t_1 | t_2 | … | t_s`, all `t_i > 1`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AbelianGroup {
    /// Free rank `r`.
    pub free_rank: usize,
    /// Torsion invariant factors.
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    /// Builds the group from diagonal entries, where 0 marks a free summand
    /// and units are dropped.
    pub fn from_diagonal(entries: &[BigInt]) -> Self {
        let free_rank = entries.iter().filter(|d| d.is_zero()).count();
        let mut torsion: Vec<BigInt> = entries.iter().filter(|d| !d.is_zero() && !d.is_one()).cloned().collect();
        torsion.sort();
        AbelianGroup { free_rank, torsion }
    }

    /// Minimal number of generators.
    pub fn generator_count(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// True for the trivial group.
    pub fn is_trivial(&self) -> bool {
        self.generator_count() == 0
    }

    /// Torsion factors as machine integers.
    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion.iter().map(|t| t.to_u64().expect("torsion factor fits in u64")).collect()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z_{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// A lattice quotient `L / (I + m·Zⁿ)` together with generating
/// representatives, one per cyclic summand.
#[derive(Debug, Clone)]
pub struct QuotientDecomposition {
    /// The isomorphism type.
    pub group: AbelianGroup,
    /// Representatives in ambient coordinates with their orders (0 = infinite),
    /// free summands first, then torsion in increasing order.
    pub generators: Vec<(Vec<BigInt>, BigInt)>,
}

/// Decomposes `L / (I + m·Zⁿ)` where `L` is spanned by the columns
/// `kernel_basis` and `I` by `image` (both dense, ambient length `n`);
/// `m = 0` means no modulus. Every image vector (and, for `m > 0`, every
/// vector `m·e_i`) must lie in `L`.
pub fn quotient_decomposition(
    kernel_basis: &[Vec<BigInt>],
    image: &[Vec<BigInt>],
    modulus: &BigInt,
) -> Result<QuotientDecomposition> {
    let k = kernel_basis.len();
    if k == 0 {
        lattice_coordinates(kernel_basis, image)?;
        return Ok(QuotientDecomposition { group: AbelianGroup::default(), generators: Vec::new() });
    }
    let n = kernel_basis[0].len();
    let mut gens: Vec<Vec<BigInt>> = image.to_vec();
    if !modulus.is_zero() {
        for i in 0..n {
            let mut e = vec![BigInt::zero(); n];
            e[i] = modulus.clone();
            gens.push(e);
        }
    }
    let coords = lattice_coordinates(kernel_basis, &gens)
        .map_err(|_| Error::BrokenComplex("image is not contained in the kernel".into()))?;
    // C is k × g with the coordinate vectors as columns.
    let c = IntMatrix::from_columns(k, &coords);
    let d = smith_decomposition(&c, Transforms { p_inv: true, ..Transforms::NONE });
    let p_inv = d.p_inv.expect("requested");
    let mut entries = Vec::with_capacity(k);
    let mut generators = Vec::new();
    for j in 0..k {
        let dj = d.diagonal.get(j).cloned().unwrap_or_default();
        entries.push(dj.clone());
        if dj.is_one() {
            continue;
        }
        let mut v: Vec<BigInt> =
            (0..n).map(|row| (0..k).map(|i| &kernel_basis[i][row] * &p_inv[i][j]).sum()).collect();
        if !modulus.is_zero() {
            for x in v.iter_mut() {
                *x = x.mod_floor(modulus);
            }
        }
        generators.push((v, dj));
    }
    generators.sort_by(|a, b| match (a.1.is_zero(), b.1.is_zero()) {
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        _ => a.1.cmp(&b.1),
    });
    Ok(QuotientDecomposition { group: AbelianGroup::from_diagonal(&entries), generators })
}

/// Isomorphism type of `span(kernel_basis) / (span(image) + m·Zⁿ)`, where the
/// columns of the two matrices are the spanning vectors.
pub fn quotient_invariants(kernel_basis: &IntMatrix, image: &IntMatrix, modulus: &BigInt) -> Result<AbelianGroup> {
    if image.cols() > 0 && image.rows() != kernel_basis.rows() {
        return Err(Error::Mismatch("kernel and image live in different ambient spaces".into()));
    }
    Ok(quotient_decomposition(&kernel_basis.columns(), &image.columns(), modulus)?.group)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|x| BigInt::from(*x)).collect()
    }

    #[test]
    fn snf_examples() {
        let m = IntMatrix::from_dense(&[vec![2, 4], vec![6, 8]]);
        assert_eq!(smith_normal_form(&m).factors, big(&[2, 4]));
        let z = IntMatrix::zeros(3, 2);
        assert_eq!(smith_normal_form(&z), SnfResult { factors: vec![], rank: 0 });
        let id = IntMatrix::identity(3);
        assert_eq!(smith_normal_form(&id).factors, big(&[1, 1, 1]));
    }

    #[test]
    fn transforms_are_consistent() {
        let m = IntMatrix::from_dense(&[vec![3, 6, 9, 2], vec![4, -2, 0, 7], vec![10, 10, 18, 11]]);
        let d = smith_decomposition(&m, Transforms::ALL);
        let p = IntMatrix::from_dense_big(3, d.p.as_ref().unwrap());
        let q = IntMatrix::from_dense_big(4, d.q.as_ref().unwrap());
        let pi = IntMatrix::from_dense_big(3, d.p_inv.as_ref().unwrap());
        let qi = IntMatrix::from_dense_big(4, d.q_inv.as_ref().unwrap());
        let paq = p.mul(&m).unwrap().mul(&q).unwrap();
        for i in 0..3 {
            for j in 0..4 {
                let want = if i == j && i < d.diagonal.len() { d.diagonal[i].clone() } else { BigInt::zero() };
                assert_eq!(paq.get(i, j), want);
            }
        }
        assert_eq!(p.mul(&pi).unwrap(), IntMatrix::identity(3));
        assert_eq!(q.mul(&qi).unwrap(), IntMatrix::identity(4));
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let huge = i64::MAX;
        let m = IntMatrix::from_dense(&[vec![huge, huge - 1, 3], vec![huge - 2, huge, 5], vec![7, huge, huge]]);
        let d = smith_decomposition(&m, Transforms::ALL);
        let p = IntMatrix::from_dense_big(3, d.p.as_ref().unwrap());
        let q = IntMatrix::from_dense_big(3, d.q.as_ref().unwrap());
        let paq = p.mul(&m).unwrap().mul(&q).unwrap();
        let prod: BigInt = d.diagonal.iter().product();
        let det = {
            let a = m.to_dense();
            &a[0][0] * (&a[1][1] * &a[2][2] - &a[1][2] * &a[2][1]) - &a[0][1] * (&a[1][0] * &a[2][2] - &a[1][2] * &a[2][0])
                + &a[0][2] * (&a[1][0] * &a[2][1] - &a[1][1] * &a[2][0])
        };
        assert_eq!(prod, det.abs());
        assert_eq!(paq.get(2, 2), d.diagonal[2]);
    }

    #[test]
    fn quotient_examples() {
        let k = IntMatrix::identity(2);
        let img = IntMatrix::from_dense(&[vec![2, 0], vec![0, 2]]);
        let g = quotient_invariants(&k, &img, &BigInt::zero()).unwrap();
        assert_eq!(g, AbelianGroup { free_rank: 0, torsion: big(&[2, 2]) });
        let k1 = IntMatrix::identity(1);
        let none = IntMatrix::zeros(1, 0);
        assert_eq!(quotient_invariants(&k1, &none, &BigInt::zero()).unwrap().free_rank, 1);
        let k3 = IntMatrix::identity(3);
        let img3 = IntMatrix::from_dense(&[vec![1, 0], vec![1, 1], vec![0, 1]]);
        let g3 = quotient_invariants(&k3, &img3, &BigInt::zero()).unwrap();
        assert_eq!(g3, AbelianGroup { free_rank: 1, torsion: vec![] });
        // Modulus: Z^2 / 3Z^2.
        let g4 = quotient_invariants(&k, &IntMatrix::zeros(2, 0), &BigInt::from(3)).unwrap();
        assert_eq!(g4.torsion, big(&[3, 3]));
    }

    #[test]
    fn image_outside_kernel_is_an_error() {
        let k = IntMatrix::from_dense(&[vec![2], vec![0]]);
        let img = IntMatrix::from_dense(&[vec![1], vec![0]]);
        assert!(matches!(quotient_invariants(&k, &img, &BigInt::zero()), Err(Error::BrokenComplex(_))));
    }

    #[test]
    fn kernels_and_congruences() {
        let a = IntMatrix::from_dense(&[vec![2, 4, 6]]);
        let ker = kernel_basis_mod(&a, &BigInt::zero());
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(a.mul_vec(v).iter().all(Zero::is_zero));
        }
        // Modulo 4: 2x + 4y + 6z ≡ 0  ⇔  x + z even.
        let ker4 = kernel_basis_mod(&a, &BigInt::from(4));
        assert_eq!(ker4.len(), 3);
        let det = smith_normal_form(&IntMatrix::from_columns(3, &ker4)).factors.iter().product::<BigInt>();
        assert_eq!(det, BigInt::from(2));
        let x = solve_mod(&a, &big(&[2]), &BigInt::zero()).unwrap();
        assert_eq!(a.mul_vec(&x), big(&[2]));
        assert!(solve_mod(&a, &big(&[1]), &BigInt::zero()).is_none());
        let y = solve_mod(&a, &big(&[2]), &BigInt::from(5)).unwrap();
        assert_eq!(a.mul_vec(&y)[0].mod_floor(&BigInt::from(5)), BigInt::from(2));
        assert!(solve_mod(&a, &big(&[1]), &BigInt::from(4)).is_none());
    }

    #[test]
    fn hermite_basis_is_canonical() {
        let a = hermite_basis(2, &[big(&[2, 1]), big(&[0, 3])]);
        let b = hermite_basis(2, &[big(&[2, 4]), big(&[2, 1])]);
        assert_eq!(a, b);
    }
}
