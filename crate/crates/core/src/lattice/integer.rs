//! Integer vectors and matrices: unimodularity over Z and basis completion.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntVector {
    pub coords: Vec<BigInt>,
}

impl IntVector {
    pub fn new(coords: &[i64]) -> Self {
        IntVector {
            coords: coords.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            data: rows.iter().flatten().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn from_columns(columns: &[IntVector]) -> Result<Self> {
        let n = columns.first().map_or(0, IntVector::dim);
        if columns.iter().any(|c| c.dim() != n) {
            return Err(Error::DimensionMismatch(
                "integer vectors of different lengths".into(),
            ));
        }
        let mut m = Self::zeros(n, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, x) in col.coords.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn column(&self, j: usize) -> IntVector {
        IntVector {
            coords: (0..self.rows).map(|i| self.get(i, j).clone()).collect(),
        }
    }

    /// The square submatrix on the given rows and all columns.
    fn select_rows(&self, rows: &[usize]) -> IntMatrix {
        let mut m = IntMatrix::zeros(rows.len(), self.cols);
        for (a, &i) in rows.iter().enumerate() {
            for j in 0..self.cols {
                m.set(a, j, self.get(i, j).clone());
            }
        }
        m
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }

    fn add_row_multiple(&mut self, target: usize, source: usize, lambda: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(source, j) * lambda;
            self.data[target * self.cols + j] += v;
        }
    }

    fn add_col_multiple(&mut self, target: usize, source: usize, lambda: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, source) * lambda;
            self.data[i * self.cols + target] += v;
        }
    }
}

fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !f(&idx) {
            return;
        }
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return;
        };
        idx[i] += 1;
        for t in i + 1..k {
            idx[t] = idx[t - 1] + 1;
        }
    }
}

/// True iff the gcd of all maximal minors of the column matrix is 1, i.e.
/// the vectors extend to a basis of Z^n. More vectors than coordinates is
/// reported as `false`.
pub fn is_unimodular_z(vectors: &[IntVector]) -> Result<bool> {
    let m = IntMatrix::from_columns(vectors)?;
    let (n, k) = (m.nrows(), m.ncols());
    if k > n {
        return Ok(false);
    }
    let mut g = BigInt::zero();
    for_each_combination(n, k, |rows| {
        let minor = m.select_rows(rows).determinant().expect("square");
        g = g.gcd(&minor);
        !g.is_one()
    });
    Ok(g.is_one())
}

#[derive(Clone, Debug)]
enum Move {
    /// row `target` += lambda * row `source`
    Row {
        target: usize,
        source: usize,
        lambda: BigInt,
    },
    /// column `target` += lambda * column `source`
    Col {
        target: usize,
        source: usize,
        lambda: BigInt,
    },
}

/// Completes a unimodular set of integer vectors to an n x n matrix of
/// determinant +-1 whose leading columns are the inputs.
///
/// The input matrix is reduced to the leading columns of the identity by
/// elementary row additions (Euclid on each column) and column additions
/// (clearing above the pivot); the recorded moves are then undone, in reverse
/// order, on the identity. The completion is not unique; this returns the one
/// that reduction order produces.
pub fn extend_to_basis_z(vectors: &[IntVector]) -> Result<IntMatrix> {
    if !is_unimodular_z(vectors)? {
        return Err(Error::Precondition(
            "vectors are not unimodular over Z".into(),
        ));
    }
    let mut u = IntMatrix::from_columns(vectors)?;
    let (n, k) = (u.nrows(), u.ncols());
    let mut script: Vec<Move> = Vec::new();
    let mut flip_last = false;

    let apply = |u: &mut IntMatrix, mv: Move, script: &mut Vec<Move>| {
        match &mv {
            Move::Row {
                target,
                source,
                lambda,
            } => u.add_row_multiple(*target, *source, lambda),
            Move::Col {
                target,
                source,
                lambda,
            } => u.add_col_multiple(*target, *source, lambda),
        }
        script.push(mv);
    };
    let one = BigInt::one();
    let swap_rows = |u: &mut IntMatrix, a: usize, b: usize, script: &mut Vec<Move>| {
        // (x, y) -> (y, -x) with three row additions
        apply(
            u,
            Move::Row {
                target: a,
                source: b,
                lambda: one.clone(),
            },
            script,
        );
        apply(
            u,
            Move::Row {
                target: b,
                source: a,
                lambda: -one.clone(),
            },
            script,
        );
        apply(
            u,
            Move::Row {
                target: a,
                source: b,
                lambda: one.clone(),
            },
            script,
        );
    };

    for c in 0..k {
        // Euclid on column c, rows c..n
        loop {
            let nonzero: Vec<usize> = (c..n).filter(|&i| !u.get(i, c).is_zero()).collect();
            let Some(&piv) = nonzero.iter().min_by_key(|&&i| u.get(i, c).abs()) else {
                return Err(Error::Internal(
                    "zero column during basis completion".into(),
                ));
            };
            if nonzero.len() == 1 {
                if piv != c {
                    swap_rows(&mut u, c, piv, &mut script);
                }
                break;
            }
            for &i in &nonzero {
                if i != piv {
                    let q = u.get(i, c).div_floor(u.get(piv, c));
                    apply(
                        &mut u,
                        Move::Row {
                            target: i,
                            source: piv,
                            lambda: -q,
                        },
                        &mut script,
                    );
                }
            }
        }
        if !u.get(c, c).abs().is_one() {
            return Err(Error::Internal("pivot is not a unit".into()));
        }
        if u.get(c, c).is_negative() {
            if c + 1 < n {
                swap_rows(&mut u, c, c + 1, &mut script);
                swap_rows(&mut u, c, c + 1, &mut script);
            } else {
                flip_last = true;
            }
        }
        for j in 0..c {
            let lambda = -u.get(j, c).clone();
            if !lambda.is_zero() {
                apply(
                    &mut u,
                    Move::Col {
                        target: c,
                        source: j,
                        lambda,
                    },
                    &mut script,
                );
            }
        }
    }

    let mut basis = IntMatrix::identity(n);
    if flip_last {
        basis.set(n - 1, n - 1, -BigInt::one());
    }
    for mv in script.iter().rev() {
        match mv {
            Move::Row {
                target,
                source,
                lambda,
            } => basis.add_row_multiple(*target, *source, &-lambda.clone()),
            Move::Col {
                target,
                source,
                lambda,
            } => basis.add_col_multiple(*target, *source, &-lambda.clone()),
        }
    }
    for (j, v) in vectors.iter().enumerate() {
        if basis.column(j) != *v {
            return Err(Error::Internal("completion lost an input column".into()));
        }
    }
    Ok(basis)
}
