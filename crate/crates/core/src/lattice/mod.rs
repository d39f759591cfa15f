//! Exact linear algebra over F_p and Z.
//!
//! Vectors over F_p carry their prime; lines through the origin are named by
//! their lexicographically smallest nonzero point, which fixes the vertex order
//! of every complex built downstream.

mod gaussian;
mod integer;
mod smith;

pub use gaussian::{binomial, gaussian_binomial, q_pochhammer, GaussianInt};
pub use integer::{extend_to_basis_z, is_unimodular_z, IntMatrix, IntVector};
pub use smith::{
    invariant_factors_small, rank_mod_p_small, rank_over_q_small, smith_normal_form,
    sparse_invariant_factors, sparse_rank_mod_p, SparseRow,
};

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

#[inline]
fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// A point of F_p^n. The derived order compares coordinates left to right,
/// the first differing coordinate deciding.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FpVector {
    p: u32,
    coords: Vec<u32>,
}

impl FpVector {
    pub fn new(p: u32, coords: &[i64]) -> Result<Self> {
        check_prime(p as u64)?;
        let pp = p as i64;
        Ok(FpVector {
            p,
            coords: coords.iter().map(|&c| c.rem_euclid(pp) as u32).collect(),
        })
    }

    /// Coordinates must already be reduced and `p` prime.
    pub(crate) fn from_reduced(p: u32, coords: Vec<u32>) -> Self {
        debug_assert!(coords.iter().all(|&c| c < p));
        FpVector { p, coords }
    }

    pub fn zero(p: u32, n: usize) -> Self {
        FpVector::from_reduced(p, vec![0; n])
    }

    /// The standard basis vector e_i (0-based `i`).
    pub fn unit(p: u32, n: usize, i: usize) -> Self {
        let mut c = vec![0; n];
        c[i] = 1;
        FpVector::from_reduced(p, c)
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn scale(&self, r: u32) -> Self {
        let p = self.p as u64;
        let coords = self
            .coords
            .iter()
            .map(|&c| (c as u64 * r as u64 % p) as u32)
            .collect();
        FpVector::from_reduced(self.p, coords)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p);
        assert_eq!(self.dim(), other.dim());
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| (a + b) % self.p)
            .collect();
        FpVector::from_reduced(self.p, coords)
    }

    /// Embeds into F_p^m (m >= n) by padding with trailing zeros.
    pub fn pad_to(&self, m: usize) -> Self {
        let mut coords = self.coords.clone();
        coords.resize(m.max(self.dim()), 0);
        FpVector::from_reduced(self.p, coords)
    }
}

impl fmt::Debug for FpVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A line through the origin of F_p^n, stored as its lex-smallest nonzero point.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LineLabel(FpVector);

impl LineLabel {
    pub fn representative(&self) -> &FpVector {
        &self.0
    }

    pub fn into_representative(self) -> FpVector {
        self.0
    }

    /// Every nonzero point of the line.
    pub fn points(&self) -> Vec<FpVector> {
        (1..self.0.p).map(|r| self.0.scale(r)).collect()
    }
}

impl fmt::Debug for LineLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "l{:?}", self.0)
    }
}

pub fn canonical_line(v: &FpVector) -> Result<LineLabel> {
    if v.is_zero() {
        return Err(Error::InvalidVertex("the zero vector spans no line".into()));
    }
    let rep = (1..v.p).map(|r| v.scale(r)).min().expect("p >= 2");
    Ok(LineLabel(rep))
}

/// All nonzero vectors of F_p^n in increasing lex order.
pub fn nonzero_vectors(p: u32, n: usize) -> Vec<FpVector> {
    let total = (p as u64).pow(n as u32);
    (1..total)
        .map(|mut idx| {
            let mut coords = vec![0u32; n];
            for c in coords.iter_mut().rev() {
                *c = (idx % p as u64) as u32;
                idx /= p as u64;
            }
            FpVector::from_reduced(p, coords)
        })
        .collect()
}

/// The (p^n - 1)/(p - 1) lines of F_p^n, sorted by representative.
pub fn enumerate_lines(p: u32, n: usize) -> Result<Vec<LineLabel>> {
    check_prime(p as u64)?;
    Ok(nonzero_vectors(p, n)
        .into_iter()
        .filter(|v| v.coords.iter().find(|&&c| c != 0) == Some(&1))
        .map(LineLabel)
        .collect())
}

fn check_compatible(vectors: &[FpVector]) -> Result<Option<(u32, usize)>> {
    let Some(first) = vectors.first() else {
        return Ok(None);
    };
    let (p, n) = (first.p, first.dim());
    for v in vectors {
        if v.p != p || v.dim() != n {
            return Err(Error::DimensionMismatch(format!(
                "expected vectors over F_{p}^{n}, found one over F_{}^{}",
                v.p,
                v.dim()
            )));
        }
    }
    Ok(Some((p, n)))
}

/// Rank of the matrix whose columns are `columns`, by elimination mod p.
pub fn rank_fp(columns: &[FpVector]) -> Result<usize> {
    if check_compatible(columns)?.is_none() {
        return Ok(0);
    }
    let mut basis = EchelonBasis::new(columns[0].p, columns[0].dim());
    Ok(columns.iter().filter(|v| basis.insert(v)).count())
}

/// True iff the vectors are linearly independent over F_p, i.e. span a
/// direct summand of dimension equal to their number.
pub fn is_unimodular_fp(vectors: &[FpVector]) -> Result<bool> {
    if vectors.iter().any(FpVector::is_zero) {
        return Err(Error::InvalidVertex(
            "the zero vector is not a vertex".into(),
        ));
    }
    Ok(rank_fp(vectors)? == vectors.len())
}

/// An incrementally grown row-echelon basis of a subspace of F_p^n.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    p: u64,
    n: usize,
    // (pivot column, row normalised so the pivot is 1)
    rows: Vec<(usize, Vec<u64>)>,
}

impl EchelonBasis {
    pub fn new(p: u32, n: usize) -> Self {
        EchelonBasis {
            p: p as u64,
            n,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &FpVector) -> Vec<u64> {
        debug_assert_eq!(v.dim(), self.n);
        let p = self.p;
        let mut w: Vec<u64> = v.coords.iter().map(|&c| c as u64).collect();
        for (piv, row) in &self.rows {
            let f = w[*piv];
            if f != 0 {
                for (x, r) in w.iter_mut().zip(row) {
                    *x = (*x + (p - f) * r) % p;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &FpVector) -> bool {
        self.reduce(v).iter().all(|&c| c == 0)
    }

    /// Adds `v`; returns false (leaving the basis untouched) if it was already
    /// in the span.
    pub fn insert(&mut self, v: &FpVector) -> bool {
        let mut w = self.reduce(v);
        let Some(piv) = w.iter().position(|&c| c != 0) else {
            return false;
        };
        let inv = inv_mod(w[piv], self.p);
        for x in w.iter_mut() {
            *x = *x * inv % self.p;
        }
        self.rows.push((piv, w));
        true
    }
}
