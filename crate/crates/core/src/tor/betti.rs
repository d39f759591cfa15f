//! Three independent routes to the Betti table of a complex.

use std::sync::atomic::{AtomicBool, Ordering};

use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;

use super::faces::{bits, greedy_rank, submasks, MaskFaces};
use super::{BettiTable, Method};
use crate::complex::{reduced_cohomology_from_faces, Coefficients, FVector, SimplicialComplex};
use crate::error::{Error, Result};
use crate::lattice::binomial;
use crate::vertex_set::VertexSet;

/// Vertex cap for the streaming matching count (work grows like 3^m).
pub const MORSE_CAP: usize = 20;
/// Vertex cap for the Euler-characteristic oracle (memory grows like 2^m).
pub const EULER_ORACLE_CAP: usize = 24;
/// Default vertex cap for the explicit cohomology oracle.
pub const COHOMOLOGY_ORACLE_CAP: usize = 16;

fn require_matroid(k: &SimplicialComplex) -> Result<()> {
    if !k.is_matroid() {
        return Err(Error::Precondition(
            "this route requires a matroid complex".into(),
        ));
    }
    Ok(())
}

fn check_cap(k: &SimplicialComplex, cap: usize, what: &str) -> Result<()> {
    if k.vertex_count() > cap {
        return Err(Error::ResourceLimit(format!(
            "{what} supports at most {cap} vertices, got {}",
            k.vertex_count()
        )));
    }
    Ok(())
}

/// Flat (m+1) x (m+1) counter indexed by (i, j).
struct Counts {
    w: usize,
    c: Vec<u64>,
}

impl Counts {
    fn new(m: usize) -> Self {
        Counts {
            w: m + 1,
            c: vec![0; (m + 1) * (m + 1)],
        }
    }

    fn add(&mut self, i: usize, j: usize, x: u64) {
        self.c[i * self.w + j] += x;
    }

    fn merge(mut self, other: Counts) -> Counts {
        for (a, b) in self.c.iter_mut().zip(other.c) {
            *a += b;
        }
        self
    }

    fn into_table(self, method: Method) -> BettiTable {
        let mut t = BettiTable::new(method);
        for i in 0..self.w {
            for j in 0..self.w {
                t.set(i, j, BigUint::from(self.c[i * self.w + j]));
            }
        }
        t
    }
}

/// (M, N) on masks, following the definitions literally. Returns the single
/// element of each set when present.
#[inline]
fn morse_mask(faces: &MaskFaces, a: u64, b: u64) -> (Option<usize>, Option<usize>) {
    let below = |v: usize| (1u64 << v) - 1;
    let repaired = |y: usize| {
        let rest = b & !(1 << y);
        bits(a & below(y)).any(|x| faces.contains(rest | 1 << x))
    };
    let prefix_ok = |bound: usize| bits(b & below(bound)).all(repaired);
    let mut m = None;
    for x in bits(a) {
        if faces.contains(b | 1 << x) {
            if prefix_ok(x) {
                m = Some(x);
            }
            break;
        }
    }
    let mut n = None;
    for y in bits(b) {
        let rest = b & !(1 << y);
        if bits(a & below(y)).all(|x| !faces.contains(rest | 1 << x)) && prefix_ok(y) {
            n = Some(y);
            break;
        }
    }
    (m, n)
}

/// β^{-i,2j} = number of critical cells with |A| = i, |A ∪ B| = j, streamed
/// support by support. Each critical cell is checked to have B maximal in
/// K_{A∪B}.
pub fn betti_via_morse(k: &SimplicialComplex) -> Result<BettiTable> {
    check_cap(k, MORSE_CAP, "the matching count")?;
    require_matroid(k)?;
    let m = k.vertex_count();
    let faces = MaskFaces::new(k)?;
    let broken = AtomicBool::new(false);
    let counts = (0u64..1 << m)
        .into_par_iter()
        .fold(
            || Counts::new(m),
            |mut acc, support| {
                for b in submasks(support) {
                    if !faces.contains(b) {
                        continue;
                    }
                    let a = support & !b;
                    if let (None, None) = morse_mask(&faces, a, b) {
                        if bits(a).any(|x| faces.contains(b | 1 << x)) {
                            broken.store(true, Ordering::Relaxed);
                        }
                        acc.add(a.count_ones() as usize, support.count_ones() as usize, 1);
                    }
                }
                acc
            },
        )
        .reduce(|| Counts::new(m), Counts::merge);
    if broken.load(Ordering::Relaxed) {
        return Err(Error::Internal(
            "a critical cell has a non-maximal face part".into(),
        ));
    }
    Ok(counts.into_table(Method::Morse))
}

/// β^{-i,2j} = Σ_{|J|=j, rank K_J = j-i} (-1)^{j-i-1} χ̃(K_J), with χ̃ of every
/// full subcomplex from one subset-sum transform.
pub fn betti_via_hochster_euler(k: &SimplicialComplex) -> Result<BettiTable> {
    check_cap(k, EULER_ORACLE_CAP, "the Euler oracle")?;
    require_matroid(k)?;
    let m = k.vertex_count();
    let faces = MaskFaces::new(k)?;
    let size = 1usize << m;
    let mut chi = vec![0i32; size];
    for s in k.faces() {
        let mask = s.as_mask().expect("m <= 64") as usize;
        chi[mask] = if s.len() % 2 == 1 { 1 } else { -1 };
    }
    for bit in 0..m {
        let half = 1usize << bit;
        chi.par_chunks_mut(2 * half).for_each(|chunk| {
            let (lo, hi) = chunk.split_at_mut(half);
            for (h, l) in hi.iter_mut().zip(lo.iter()) {
                *h += *l;
            }
        });
    }
    let w = m + 1;
    let totals = (0..size)
        .into_par_iter()
        .fold(
            || vec![0i64; w * w],
            |mut acc, j| {
                let r = greedy_rank(&faces, j as u64);
                let card = (j as u64).count_ones() as usize;
                let sign = if r % 2 == 1 { 1 } else { -1 };
                acc[(card - r) * w + card] += sign * chi[j] as i64;
                acc
            },
        )
        .reduce(
            || vec![0i64; w * w],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    let mut t = BettiTable::new(Method::EulerOracle);
    for i in 0..w {
        for j in 0..w {
            let x = totals[i * w + j];
            let x = u64::try_from(x)
                .map_err(|_| Error::Internal(format!("negative Euler sum at ({i}, {j})")))?;
            t.set(i, j, BigUint::from(x));
        }
    }
    Ok(t)
}

/// β^{-i,2j} = Σ_{|J|=j} rank H̃^{j-i-1}(K_J; Q) from explicit coboundary
/// matrices. No matroid assumption.
pub fn betti_via_cohomology(k: &SimplicialComplex, cap: usize) -> Result<BettiTable> {
    check_cap(k, cap.min(30), "the cohomology oracle")?;
    let m = k.vertex_count();
    let by_size: Vec<Vec<u64>> = k
        .faces_by_size()
        .iter()
        .map(|b| b.iter().map(|s| s.as_mask().expect("m <= 64")).collect())
        .collect();
    let counts = (0u64..1 << m)
        .into_par_iter()
        .fold(
            || Counts::new(m),
            |mut acc, j| {
                let mut local: Vec<Vec<VertexSet>> = by_size
                    .iter()
                    .map(|b| {
                        b.iter()
                            .filter(|&&s| s & !j == 0)
                            .map(|&s| VertexSet::from_mask(s))
                            .collect()
                    })
                    .collect();
                while local.last().is_some_and(Vec::is_empty) {
                    local.pop();
                }
                let h = reduced_cohomology_from_faces(&local, Coefficients::Rationals);
                let card = j.count_ones() as usize;
                for (&d, &r) in &h.ranks {
                    if r > 0 {
                        acc.add((card as i32 - d - 1) as usize, card, r as u64);
                    }
                }
                acc
            },
        )
        .reduce(|| Counts::new(m), Counts::merge);
    Ok(counts.into_table(Method::CohomologyOracle))
}

/// For every j: Σ_i (-1)^i β^{-i,2j} equals Σ_k (-1)^{j-k} f_{k-1} C(m-k, j-k),
/// the Euler characteristic of R^{*,2j}.
pub fn check_euler_consistency(table: &BettiTable, f: &FVector, m: usize) -> bool {
    let top = f.entries().len();
    (0..=m).all(|j| {
        let mut lhs = BigInt::default();
        for i in 0..=j {
            let x = BigInt::from(table.get(i, j));
            if i % 2 == 0 {
                lhs += x;
            } else {
                lhs -= x;
            }
        }
        let mut rhs = BigInt::default();
        for kk in 0..=j.min(top - 1) {
            let x =
                BigInt::from(f.get(kk as isize - 1) * binomial((m - kk) as u64, (j - kk) as u64));
            if (j - kk) % 2 == 0 {
                rhs += x;
            } else {
                rhs -= x;
            }
        }
        lhs == rhs
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{cycle, disjoint_edges, projective_plane, uniform_matroid};

    fn table(method: Method, xs: &[((usize, usize), u64)]) -> BettiTable {
        let mut t = BettiTable::new(method);
        for &((i, j), x) in xs {
            t.set(i, j, x.into());
        }
        t
    }

    #[test]
    fn triangle_and_simplex() {
        let expect = table(Method::Morse, &[((0, 0), 1), ((1, 3), 1)]);
        let c3 = cycle(3);
        assert_eq!(betti_via_morse(&c3).unwrap(), expect);
        assert!(betti_via_hochster_euler(&c3).unwrap().same_values(&expect));
        assert!(betti_via_cohomology(&c3, 16).unwrap().same_values(&expect));
        let d = SimplicialComplex::simplex(4);
        let only = table(Method::Morse, &[((0, 0), 1)]);
        assert_eq!(betti_via_morse(&d).unwrap(), only);
    }

    #[test]
    fn non_matroid_inputs() {
        let k = disjoint_edges();
        assert!(betti_via_morse(&k).is_err());
        assert!(betti_via_hochster_euler(&k).is_err());
        let t = betti_via_cohomology(&k, 16).unwrap();
        // four disconnected pairs {a, c} with a in one edge and c in the other
        assert_eq!(t.get(1, 2), 4u32.into());
        assert!(check_euler_consistency(&t, &k.f_vector(), 4));
    }

    #[test]
    fn routes_agree_on_uniform_matroids() {
        for (r, m) in [(1, 4), (2, 4), (2, 6), (3, 6), (4, 7)] {
            let k = uniform_matroid(r, m);
            let a = betti_via_morse(&k).unwrap();
            assert!(a.same_values(&betti_via_hochster_euler(&k).unwrap()));
            assert!(a.same_values(&betti_via_cohomology(&k, 16).unwrap()));
            assert!(check_euler_consistency(&a, &k.f_vector(), m));
        }
    }

    #[test]
    fn projective_plane_cohomology_table_is_consistent() {
        let k = projective_plane();
        let t = betti_via_cohomology(&k, 16).unwrap();
        assert!(check_euler_consistency(&t, &k.f_vector(), 6));
    }

    #[test]
    fn cap_is_enforced() {
        let k = uniform_matroid(1, 20);
        assert!(matches!(
            betti_via_cohomology(&k, 16),
            Err(Error::ResourceLimit(_))
        ));
    }
}
