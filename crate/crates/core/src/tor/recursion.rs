//! Betti tables of X(F_p^n) and K(F_p^n) from the rank recursion.
//!
//! A full subcomplex of rank l < n spans an l-dimensional subspace and is a
//! copy of the rank-l complex, and there are [n l]_p such subspaces; so the
//! entries with j - i = l < n come from the rank-l table. The top row
//! j - i = n then follows from the Euler characteristic of R^{*,2j}, whose
//! generator counts are f_{k-1} C(V-k, j-k).

use num_bigint::{BigInt, BigUint};
use num_traits::Signed;

use super::{BettiTable, Method};
use crate::error::{Error, Result};
use crate::lattice::{binomial, check_prime, gaussian_binomial};
use crate::universal::{f_vector_closed, vertex_count, Family};

pub fn betti_recursion_x(p: u32, n: usize) -> Result<BettiTable> {
    betti_recursion(Family::X, p, n)
}

pub fn betti_recursion_k(p: u32, n: usize) -> Result<BettiTable> {
    betti_recursion(Family::K, p, n)
}

pub fn betti_recursion(family: Family, p: u32, n: usize) -> Result<BettiTable> {
    check_prime(p as u64)?;
    let mut tables: Vec<BettiTable> = Vec::with_capacity(n + 1);
    let mut base = BettiTable::new(Method::Recursion);
    base.set(0, 0, BigUint::from(1u32));
    tables.push(base);
    for rank in 1..=n {
        let t = next_table(family, p, rank, &tables)?;
        tables.push(t);
    }
    Ok(tables.pop().expect("at least the base table"))
}

fn next_table(family: Family, p: u32, n: usize, lower: &[BettiTable]) -> Result<BettiTable> {
    let v: usize = vertex_count(family, p, n)
        .try_into()
        .map_err(|_| Error::ResourceLimit("vertex count does not fit in usize".into()))?;
    let f = f_vector_closed(family, p, n)?;
    let mut t = BettiTable::new(Method::Recursion);
    for (l, sub) in lower.iter().enumerate() {
        let g = gaussian_binomial(n, l, p as u64);
        for (&(i, j), x) in sub.iter() {
            if j - i == l {
                t.set(i, j, &g * x);
            }
        }
    }
    for j in n..=v {
        // Σ_k (-1)^{n-k} N(j, k), N(j, k) = f_{k-1} C(V-k, j-k)
        let mut acc = BigInt::default();
        for k in 0..=n.min(j) {
            let gens =
                BigInt::from(f.get(k as isize - 1) * binomial((v - k) as u64, (j - k) as u64));
            if (n - k) % 2 == 0 {
                acc += gens;
            } else {
                acc -= gens;
            }
        }
        for l in 0..n {
            if l > j {
                continue;
            }
            let x = BigInt::from(t.get(j - l, j));
            if (n - l) % 2 == 0 {
                acc -= x;
            } else {
                acc += x;
            }
        }
        if acc.is_negative() {
            return Err(Error::Internal(format!(
                "negative top-row entry at j = {j} for rank {n}"
            )));
        }
        t.set(j - n, j, acc.to_biguint().expect("nonnegative"));
    }
    Ok(t)
}
