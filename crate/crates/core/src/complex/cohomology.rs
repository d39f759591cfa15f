//! Reduced simplicial cohomology from coboundary matrices.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use super::SimplicialComplex;
use crate::lattice::{sparse_invariant_factors, sparse_rank_mod_p, SparseRow};
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Coefficients {
    Rationals,
    Fp(u32),
    Integers,
}

/// Ranks of H̃^d for d = -1 ..= dim, plus nonunit invariant factors of the
/// torsion part when computed over Z.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CohomologyRanks {
    pub ranks: BTreeMap<i32, usize>,
    pub torsion: BTreeMap<i32, Vec<BigUint>>,
}

impl CohomologyRanks {
    pub fn rank(&self, degree: i32) -> usize {
        self.ranks.get(&degree).copied().unwrap_or(0)
    }

    /// Degrees with nonzero rank.
    pub fn support(&self) -> Vec<i32> {
        self.ranks
            .iter()
            .filter(|(_, &r)| r > 0)
            .map(|(&d, _)| d)
            .collect()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.values().all(Vec::is_empty)
    }

    /// Σ (-1)^d rank H̃^d, which equals the reduced Euler characteristic.
    pub fn alternating_sum(&self) -> i64 {
        self.ranks
            .iter()
            .map(|(&d, &r)| {
                if d.rem_euclid(2) == 0 {
                    r as i64
                } else {
                    -(r as i64)
                }
            })
            .sum()
    }
}

/// Rows of δ: C^k -> C^{k+1}, one per face in `upper`, columns indexed by
/// `lower`. The entry for removing the vertex in position t is (-1)^t.
pub fn coboundary_rows(lower: &[VertexSet], upper: &[VertexSet]) -> Vec<SparseRow> {
    let index: FxHashMap<VertexSet, u32> = lower
        .iter()
        .enumerate()
        .map(|(i, s)| (*s, i as u32))
        .collect();
    upper
        .iter()
        .map(|tau| {
            let mut row: SparseRow = tau
                .iter()
                .enumerate()
                .map(|(t, v)| {
                    let col = index[&tau.without(v)];
                    (col, if t % 2 == 0 { 1 } else { -1 })
                })
                .collect();
            row.sort_unstable_by_key(|e| e.0);
            row
        })
        .collect()
}

/// `faces[k]` lists the faces with k vertices; `faces[0]` must be `[∅]`.
pub fn reduced_cohomology_from_faces(
    faces: &[Vec<VertexSet>],
    coefficients: Coefficients,
) -> CohomologyRanks {
    let top = faces.len();
    // rank of δ^{d} for d = -1 ..= top-2, stored at index d+1
    let mut delta_rank = vec![0usize; top];
    let mut factors: Vec<Vec<BigUint>> = vec![Vec::new(); top];
    for k in 0..top.saturating_sub(1) {
        let rows = coboundary_rows(&faces[k], &faces[k + 1]);
        let ncols = faces[k].len();
        match coefficients {
            Coefficients::Fp(p) => delta_rank[k] = sparse_rank_mod_p(&rows, ncols, p as u64),
            Coefficients::Rationals | Coefficients::Integers => {
                let f = sparse_invariant_factors(&rows, ncols);
                delta_rank[k] = f.len();
                factors[k] = f.into_iter().filter(|d| !d.is_one()).collect();
            }
        }
    }
    let mut out = CohomologyRanks::default();
    for k in 0..top {
        let degree = k as i32 - 1;
        let incoming = if k > 0 { delta_rank[k - 1] } else { 0 };
        out.ranks
            .insert(degree, faces[k].len() - delta_rank[k] - incoming);
        if coefficients == Coefficients::Integers {
            let t = if k > 0 {
                factors[k - 1].clone()
            } else {
                Vec::new()
            };
            out.torsion.insert(degree, t);
        }
    }
    out
}

pub fn reduced_cohomology_ranks(
    k: &SimplicialComplex,
    coefficients: Coefficients,
) -> CohomologyRanks {
    reduced_cohomology_from_faces(k.faces_by_size(), coefficients)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::*;

    #[test]
    fn circle_and_cone() {
        let c = cycle(3).reduced_cohomology(Coefficients::Rationals);
        assert_eq!(c.support(), vec![1]);
        assert_eq!(c.rank(1), 1);
        let d = SimplicialComplex::simplex(3).reduced_cohomology(Coefficients::Integers);
        assert!(d.support().is_empty());
        assert!(d.is_torsion_free());
    }

    #[test]
    fn empty_complex_has_degree_minus_one_class() {
        let e = SimplicialComplex::from_facets(0, vec![]).unwrap();
        let c = e.reduced_cohomology(Coefficients::Rationals);
        assert_eq!(c.support(), vec![-1]);
    }

    #[test]
    fn projective_plane_torsion() {
        let rp2 = projective_plane();
        let z = rp2.reduced_cohomology(Coefficients::Integers);
        assert!(z.support().is_empty());
        assert_eq!(z.torsion[&2], vec![BigUint::from(2u32)]);
        assert!(z.torsion[&1].is_empty());
        let f2 = rp2.reduced_cohomology(Coefficients::Fp(2));
        assert_eq!(f2.support(), vec![1, 2]);
        let f3 = rp2.reduced_cohomology(Coefficients::Fp(3));
        assert!(f3.support().is_empty());
    }

    #[test]
    fn euler_poincare_on_catalog() {
        for k in [
            cycle(5),
            petersen_graph(),
            projective_plane(),
            disjoint_edges(),
            simplex_boundary(5),
        ] {
            let c = k.reduced_cohomology(Coefficients::Rationals);
            assert_eq!(BigInt::from(c.alternating_sum()), k.reduced_euler());
        }
    }

    use num_bigint::BigInt;
}
