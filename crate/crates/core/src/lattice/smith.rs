//! Smith normal form over Z.
//!
//! Elimination runs on machine integers with checked arithmetic and restarts
//! on `BigInt` entries the first time anything overflows.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::integer::IntMatrix;

trait Scalar: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn abs_lt(&self, other: &Self) -> bool;
    fn is_negative(&self) -> bool;
    fn neg(&self) -> Option<Self>;
    fn mul(&self, other: &Self) -> Option<Self>;
    /// `self - q * b`
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    fn add(&self, other: &Self) -> Option<Self>;
    fn div_floor(&self, b: &Self) -> Option<Self>;
    fn divides(&self, other: &Self) -> bool;
    fn to_biguint(&self) -> BigUint;
}

impl Scalar for i64 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*b)?)
    }
    fn add(&self, other: &Self) -> Option<Self> {
        self.checked_add(*other)
    }
    fn div_floor(&self, b: &Self) -> Option<Self> {
        if *self == i64::MIN && *b == -1 {
            return None;
        }
        Some(Integer::div_floor(self, b))
    }
    fn divides(&self, other: &Self) -> bool {
        *self != 0 && other % self == 0
    }
    fn to_biguint(&self) -> BigUint {
        BigUint::from(self.unsigned_abs())
    }
}

impl Scalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn div_floor(&self, b: &Self) -> Option<Self> {
        Some(Integer::div_floor(self, b))
    }
    fn divides(&self, other: &Self) -> bool {
        !Zero::is_zero(self) && Zero::is_zero(&(other % self))
    }
    fn to_biguint(&self) -> BigUint {
        self.magnitude().clone()
    }
}

struct Dense<T> {
    rows: usize,
    cols: usize,
    a: Vec<T>,
}

impl<T: Scalar> Dense<T> {
    #[inline]
    fn at(&self, i: usize, j: usize) -> &T {
        &self.a[i * self.cols + j]
    }

    /// row k -= f * row i, restricted to `cols`.
    fn row_sub(&mut self, k: usize, i: usize, f: &T, cols: &[usize]) -> Option<()> {
        for &c in cols {
            let src = self.a[i * self.cols + c].clone();
            let dst = &mut self.a[k * self.cols + c];
            *dst = dst.sub_mul(f, &src)?;
        }
        Some(())
    }

    fn col_sub(&mut self, k: usize, j: usize, f: &T, rows: &[usize]) -> Option<()> {
        for &r in rows {
            let src = self.a[r * self.cols + j].clone();
            let dst = &mut self.a[r * self.cols + k];
            *dst = dst.sub_mul(f, &src)?;
        }
        Some(())
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        if i != k {
            for c in 0..self.cols {
                self.a.swap(i * self.cols + c, k * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        if j != k {
            for r in 0..self.rows {
                self.a.swap(r * self.cols + j, r * self.cols + k);
            }
        }
    }
}

/// Nonzero invariant factors, or `None` on overflow.
fn snf_factors<T: Scalar>(mut m: Dense<T>) -> Option<Vec<BigUint>> {
    let mut factors: Vec<BigUint> = Vec::new();

    // Unit pivots: eliminate the column, then drop the row and column.
    let mut row_alive = vec![true; m.rows];
    let mut col_alive = vec![true; m.cols];
    loop {
        let mut progress = false;
        for j in 0..m.cols {
            if !col_alive[j] {
                continue;
            }
            let Some(i) = (0..m.rows).find(|&i| row_alive[i] && m.at(i, j).is_unit()) else {
                continue;
            };
            let pivot_cols: Vec<usize> = (0..m.cols)
                .filter(|&c| col_alive[c] && c != j && !m.at(i, c).is_zero())
                .collect();
            let u = m.at(i, j).clone();
            for k in 0..m.rows {
                if k == i || !row_alive[k] || m.at(k, j).is_zero() {
                    continue;
                }
                let f = m.at(k, j).mul(&u)?;
                m.row_sub(k, i, &f, &pivot_cols)?;
                m.a[k * m.cols + j] = T::zero();
            }
            row_alive[i] = false;
            col_alive[j] = false;
            factors.push(BigUint::one());
            progress = true;
        }
        if !progress {
            break;
        }
    }

    let rows: Vec<usize> = (0..m.rows).filter(|&i| row_alive[i]).collect();
    let cols: Vec<usize> = (0..m.cols).filter(|&j| col_alive[j]).collect();
    let mut rest = Dense {
        rows: rows.len(),
        cols: cols.len(),
        a: Vec::with_capacity(rows.len() * cols.len()),
    };
    for &i in &rows {
        for &j in &cols {
            rest.a.push(m.at(i, j).clone());
        }
    }
    let mut diag = classic_snf(rest)?;
    normalize_chain(&mut diag);
    factors.extend(diag);
    Some(factors)
}

fn classic_snf<T: Scalar>(mut m: Dense<T>) -> Option<Vec<BigUint>> {
    let mut out = Vec::new();
    let all_rows: Vec<usize> = (0..m.rows).collect();
    let all_cols: Vec<usize> = (0..m.cols).collect();
    for t in 0..m.rows.min(m.cols) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m.rows {
            for j in t..m.cols {
                let x = m.at(i, j);
                if !x.is_zero() && best.map_or(true, |(bi, bj)| x.abs_lt(m.at(bi, bj))) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap_rows(t, bi);
        m.swap_cols(t, bj);
        loop {
            let mut dirty = false;
            for i in t + 1..m.rows {
                if m.at(i, t).is_zero() {
                    continue;
                }
                let q = m.at(i, t).div_floor(m.at(t, t))?;
                m.row_sub(i, t, &q, &all_cols[t..])?;
                if !m.at(i, t).is_zero() {
                    dirty = true;
                    if m.at(i, t).abs_lt(m.at(t, t)) {
                        m.swap_rows(t, i);
                    }
                }
            }
            for j in t + 1..m.cols {
                if m.at(t, j).is_zero() {
                    continue;
                }
                let q = m.at(t, j).div_floor(m.at(t, t))?;
                m.col_sub(j, t, &q, &all_rows[t..])?;
                if !m.at(t, j).is_zero() {
                    dirty = true;
                    if m.at(t, j).abs_lt(m.at(t, t)) {
                        m.swap_cols(t, j);
                    }
                }
            }
            if dirty {
                continue;
            }
            // pivot must divide the whole trailing block
            let p = m.at(t, t).clone();
            let bad = (t + 1..m.rows).find(|&i| (t + 1..m.cols).any(|j| !p.divides(m.at(i, j))));
            match bad {
                Some(i) => {
                    for c in t..m.cols {
                        let v = m.at(t, c).add(m.at(i, c))?;
                        m.a[t * m.cols + c] = v;
                    }
                }
                None => break,
            }
        }
        let p = m.at(t, t);
        let p = if p.is_negative() { p.neg()? } else { p.clone() };
        out.push(p.to_biguint());
    }
    Some(out)
}

/// Turns a diagonal into a divisibility chain with the same product structure.
fn normalize_chain(d: &mut [BigUint]) {
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            if g != d[i] {
                let l = d[i].lcm(&d[j]);
                d[i] = g;
                d[j] = l;
            }
        }
    }
}

fn dense_from_small(rows: &[Vec<i64>], cols: usize) -> Dense<i64> {
    let mut a = Vec::with_capacity(rows.len() * cols);
    for r in rows {
        assert_eq!(r.len(), cols, "ragged rows");
        a.extend_from_slice(r);
    }
    Dense {
        rows: rows.len(),
        cols,
        a,
    }
}

fn dense_big_from_small(rows: &[Vec<i64>], cols: usize) -> Dense<BigInt> {
    Dense {
        rows: rows.len(),
        cols,
        a: rows.iter().flatten().map(|&x| BigInt::from(x)).collect(),
    }
}

/// Nonzero invariant factors d_1 | d_2 | ... of an integer matrix.
pub fn smith_normal_form(m: &IntMatrix) -> Vec<BigUint> {
    let small: Option<Vec<i64>> = m.entries().iter().map(|x| i64::try_from(x).ok()).collect();
    if let Some(a) = small {
        let dense = Dense {
            rows: m.nrows(),
            cols: m.ncols(),
            a,
        };
        if let Some(f) = snf_factors(dense) {
            return f;
        }
    }
    let dense = Dense {
        rows: m.nrows(),
        cols: m.ncols(),
        a: m.entries().to_vec(),
    };
    snf_factors(dense).expect("bigint arithmetic cannot overflow")
}

/// [`smith_normal_form`] for a row-major matrix of machine integers.
pub fn invariant_factors_small(rows: &[Vec<i64>], cols: usize) -> Vec<BigUint> {
    snf_factors(dense_from_small(rows, cols))
        .unwrap_or_else(|| snf_factors(dense_big_from_small(rows, cols)).expect("no overflow"))
}

/// Rank over Q, i.e. the number of nonzero invariant factors.
pub fn rank_over_q_small(rows: &[Vec<i64>], cols: usize) -> usize {
    invariant_factors_small(rows, cols).len()
}

/// Rank of the reduction mod p.
pub fn rank_mod_p_small(rows: &[Vec<i64>], cols: usize, p: u64) -> usize {
    let p = p as i64;
    let mut a: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| r.iter().map(|x| x.rem_euclid(p)).collect())
        .collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = pow_mod_i64(a[rank][c], p - 2, p);
        for i in 0..a.len() {
            if i != rank && a[i][c] != 0 {
                let f = a[i][c] * inv % p;
                for k in c..cols {
                    a[i][k] = (a[i][k] - f * a[rank][k]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod_i64(mut b: i64, mut e: i64, p: i64) -> i64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Sparse row: (column, value) pairs sorted by column, no zeros.
pub type SparseRow = Vec<(u32, i64)>;

/// `a - f * b` on sparse rows, or `None` on overflow.
fn sparse_axpy(a: &SparseRow, f: i64, b: &SparseRow) -> Option<SparseRow> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map_or(u32::MAX, |e| e.0);
        let cb = b.get(j).map_or(u32::MAX, |e| e.0);
        if ca < cb {
            out.push(a[i]);
            i += 1;
        } else {
            let prod = f.checked_mul(b[j].1)?;
            let v = if ca == cb {
                let v = a[i].1.checked_sub(prod)?;
                i += 1;
                v
            } else {
                prod.checked_neg()?
            };
            j += 1;
            if v != 0 {
                out.push((cb, v));
            }
        }
    }
    Some(out)
}

fn entry(row: &SparseRow, c: u32) -> i64 {
    row.binary_search_by_key(&c, |e| e.0)
        .map_or(0, |k| row[k].1)
}

/// Eliminates with unit pivots; returns the number of pivots and the rows
/// left over, or `None` on overflow.
fn sparse_unit_phase(mut rows: Vec<SparseRow>, ncols: usize) -> Option<(usize, Vec<SparseRow>)> {
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); ncols];
    for (i, r) in rows.iter().enumerate() {
        for &(c, _) in r {
            col_rows[c as usize].push(i as u32);
        }
    }
    let mut alive = vec![true; rows.len()];
    let mut pivots = 0;
    loop {
        let mut order: Vec<usize> = (0..rows.len()).filter(|&i| alive[i]).collect();
        order.sort_by_key(|&i| rows[i].len());
        let mut progress = false;
        for i in order {
            if !alive[i] || rows[i].is_empty() {
                continue;
            }
            let Some(&(c, u)) = rows[i]
                .iter()
                .filter(|e| e.1 == 1 || e.1 == -1)
                .min_by_key(|e| col_rows[e.0 as usize].len())
            else {
                continue;
            };
            let pivot_row = std::mem::take(&mut rows[i]);
            alive[i] = false;
            let touched = std::mem::take(&mut col_rows[c as usize]);
            for &k in &touched {
                let k = k as usize;
                if !alive[k] {
                    continue;
                }
                let a = entry(&rows[k], c);
                if a == 0 {
                    continue;
                }
                let new = sparse_axpy(&rows[k], a.checked_mul(u)?, &pivot_row)?;
                for &(cc, _) in &new {
                    if cc != c && entry(&rows[k], cc) == 0 {
                        col_rows[cc as usize].push(k as u32);
                    }
                }
                rows[k] = new;
            }
            pivots += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    let rest = rows
        .into_iter()
        .zip(alive)
        .filter(|(r, a)| *a && !r.is_empty())
        .map(|(r, _)| r)
        .collect();
    Some((pivots, rest))
}

fn densify(rows: &[SparseRow]) -> (Vec<Vec<i64>>, usize) {
    let mut cols: Vec<u32> = rows.iter().flatten().map(|e| e.0).collect();
    cols.sort_unstable();
    cols.dedup();
    let dense = rows
        .iter()
        .map(|r| {
            let mut d = vec![0i64; cols.len()];
            for &(c, v) in r {
                d[cols.binary_search(&c).expect("column present")] = v;
            }
            d
        })
        .collect();
    (dense, cols.len())
}

/// Nonzero invariant factors of a sparse integer matrix.
pub fn sparse_invariant_factors(rows: &[SparseRow], ncols: usize) -> Vec<BigUint> {
    if let Some((pivots, rest)) = sparse_unit_phase(rows.to_vec(), ncols) {
        let (dense, w) = densify(&rest);
        let mut out = vec![BigUint::one(); pivots];
        out.extend(invariant_factors_small(&dense, w));
        return out;
    }
    let (dense, w) = densify(rows);
    snf_factors(dense_big_from_small(&dense, w)).expect("no overflow")
}

/// Rank of a sparse integer matrix reduced mod p.
pub fn sparse_rank_mod_p(rows: &[SparseRow], ncols: usize, p: u64) -> usize {
    let p = p as i64;
    let mut rows: Vec<SparseRow> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&(c, v)| (c, v.rem_euclid(p)))
                .filter(|e| e.1 != 0)
                .collect()
        })
        .collect();
    let mut pivot_of_col: Vec<Option<SparseRow>> = vec![None; ncols];
    let mut rank = 0;
    for r in rows.iter_mut() {
        let mut cur = std::mem::take(r);
        while let Some(&(c, v)) = cur.first() {
            match &pivot_of_col[c as usize] {
                Some(piv) => {
                    // pivot rows are normalised to leading coefficient 1
                    let next = sparse_axpy(&cur, v, piv).expect("reduced entries are small");
                    cur = next
                        .into_iter()
                        .map(|(c, x)| (c, x.rem_euclid(p)))
                        .filter(|e| e.1 != 0)
                        .collect();
                }
                None => {
                    let inv = pow_mod_i64(v, p - 2, p);
                    let norm: SparseRow = cur.iter().map(|&(c, x)| (c, x * inv % p)).collect();
                    pivot_of_col[c as usize] = Some(norm);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}
