//! Integral cohomology of every full subcomplex.

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{reduced_cohomology_from_faces, Coefficients, SimplicialComplex};
use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionEntry {
    pub subset: Vec<usize>,
    pub degree: i32,
    pub factors: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionReport {
    pub subsets_checked: u64,
    /// Every (J, degree) whose integral H̃ has an invariant factor other than 1.
    pub torsion: Vec<TorsionEntry>,
}

impl TorsionReport {
    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }
}

/// Smith normal form of every coboundary map of every K_J, J ⊆ [m].
pub fn torsion_check(k: &SimplicialComplex, cap: usize) -> Result<TorsionReport> {
    let m = k.vertex_count();
    if m > cap.min(30) {
        return Err(Error::ResourceLimit(format!(
            "torsion check supports at most {} vertices, got {m}",
            cap.min(30)
        )));
    }
    let by_size: Vec<Vec<u64>> = k
        .faces_by_size()
        .iter()
        .map(|b| b.iter().map(|s| s.as_mask().expect("m <= 64")).collect())
        .collect();
    let mut torsion: Vec<TorsionEntry> = (0u64..1 << m)
        .into_par_iter()
        .flat_map_iter(|j| {
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
            let h = reduced_cohomology_from_faces(&local, Coefficients::Integers);
            h.torsion
                .into_iter()
                .filter(|(_, f)| !f.is_empty())
                .map(move |(degree, f)| TorsionEntry {
                    subset: VertexSet::from_mask(j).to_vec(),
                    degree,
                    factors: f.iter().map(BigUint::to_string).collect(),
                })
                .collect::<Vec<_>>()
        })
        .collect();
    torsion.sort_by(|a, b| (&a.subset, a.degree).cmp(&(&b.subset, b.degree)));
    Ok(TorsionReport {
        subsets_checked: 1 << m,
        torsion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::projective_plane;

    #[test]
    fn projective_plane_has_two_torsion() {
        let r = torsion_check(&projective_plane(), 16).unwrap();
        assert!(!r.is_torsion_free());
        assert!(r.torsion.iter().all(|e| e.factors == vec!["2".to_string()]));
        assert!(r
            .torsion
            .iter()
            .any(|e| e.subset.len() == 6 && e.degree == 2));
    }

    #[test]
    fn simplex_is_torsion_free() {
        let r = torsion_check(&SimplicialComplex::simplex(3), 16).unwrap();
        assert!(r.is_torsion_free());
        assert_eq!(r.subsets_checked, 8);
    }
}
