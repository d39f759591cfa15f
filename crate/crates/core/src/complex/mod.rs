//! Finite simplicial complexes on the vertex set {0, .., m-1}.
//!
//! A complex is stored as its facets; faces are enumerated on demand and
//! cached. Everything is immutable after construction.

mod catalog;
mod cohomology;

pub use catalog::*;
pub use cohomology::{
    coboundary_rows, reduced_cohomology_from_faces, reduced_cohomology_ranks, Coefficients,
    CohomologyRanks,
};

use std::fmt;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;
use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::FpVector;
use crate::vertex_set::{VertexSet, MAX_VERTICES};

/// Anything that can answer "is this vertex set a simplex?".
pub trait SimplexOracle: Sync {
    fn vertex_count(&self) -> usize;
    fn contains(&self, sigma: &VertexSet) -> bool;
}

#[derive(Clone, Default)]
pub struct SimplicialComplex {
    m: usize,
    facets: Vec<VertexSet>,
    labels: Option<Vec<FpVector>>,
    faces: OnceLock<Vec<Vec<VertexSet>>>,
    face_set: OnceLock<FxHashSet<VertexSet>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.facets == other.facets && self.labels == other.labels
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("m", &self.m)
            .field("facets", &self.facets)
            .finish()
    }
}

/// A complex re-indexed over a subset of another complex's vertices.
/// `vertex_map[i]` is the original index of local vertex `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subcomplex {
    pub complex: SimplicialComplex,
    pub vertex_map: Vec<usize>,
}

impl Subcomplex {
    pub fn to_original(&self, sigma: &VertexSet) -> VertexSet {
        sigma.iter().map(|v| self.vertex_map[v]).collect()
    }
}

/// f_{-1}, f_0, .., f_dim.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FVector(pub Vec<BigUint>);

impl FVector {
    /// f_i for i >= -1.
    pub fn get(&self, i: isize) -> BigUint {
        usize::try_from(i + 1)
            .ok()
            .and_then(|k| self.0.get(k).cloned())
            .unwrap_or_default()
    }

    pub fn dim(&self) -> isize {
        self.0.len() as isize - 2
    }

    pub fn entries(&self) -> &[BigUint] {
        &self.0
    }

    pub fn from_u64(xs: &[u64]) -> Self {
        FVector(xs.iter().map(|&x| BigUint::from(x)).collect())
    }

    /// Sum of (-1)^i f_i over i >= 0.
    pub fn euler_characteristic(&self) -> BigInt {
        let mut chi = BigInt::default();
        for (k, f) in self.0.iter().enumerate().skip(1) {
            if k % 2 == 1 {
                chi += BigInt::from(f.clone());
            } else {
                chi -= BigInt::from(f.clone());
            }
        }
        chi
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

fn check_range(m: usize, sigma: &VertexSet) -> Result<()> {
    match sigma.last() {
        Some(v) if v >= m => Err(Error::VertexOutOfRange { vertex: v, m }),
        _ => Ok(()),
    }
}

/// Keeps the inclusion-maximal sets, sorted.
fn maximal_sets(mut sets: Vec<VertexSet>) -> Vec<VertexSet> {
    sets.sort_by_key(|s| std::cmp::Reverse(s.len()));
    let mut keep: Vec<VertexSet> = Vec::new();
    let mut seen = FxHashSet::default();
    let uniform = sets.first().map(|s| s.len()) == sets.last().map(|s| s.len());
    for s in sets {
        if !seen.insert(s) {
            continue;
        }
        if uniform || !keep.iter().any(|k| s.is_subset(k)) {
            keep.push(s);
        }
    }
    keep.sort();
    keep
}

impl SimplicialComplex {
    /// Builds the complex generated by `facets`; non-maximal sets are dropped.
    /// With no facets at all the result is the complex {∅}.
    pub fn from_facets(m: usize, facets: Vec<VertexSet>) -> Result<Self> {
        if m > MAX_VERTICES {
            return Err(Error::ResourceLimit(format!(
                "{m} vertices exceed the supported maximum {MAX_VERTICES}"
            )));
        }
        for f in &facets {
            check_range(m, f)?;
        }
        Ok(Self::from_maximal(m, maximal_sets(facets)))
    }

    pub fn from_facet_lists(m: usize, facets: &[Vec<usize>]) -> Result<Self> {
        for f in facets {
            if let Some(&v) = f.iter().find(|&&v| v >= m) {
                return Err(Error::VertexOutOfRange { vertex: v, m });
            }
        }
        Self::from_facets(
            m,
            facets.iter().map(|f| f.iter().copied().collect()).collect(),
        )
    }

    /// Caller guarantees the sets are pairwise incomparable and in range.
    pub(crate) fn from_maximal(m: usize, mut facets: Vec<VertexSet>) -> Self {
        if facets.is_empty() {
            facets.push(VertexSet::empty());
        }
        facets.sort();
        SimplicialComplex {
            m,
            facets,
            ..Default::default()
        }
    }

    pub fn with_labels(mut self, labels: Vec<FpVector>) -> Result<Self> {
        if labels.len() != self.m {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.m
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// The full simplex on `m` vertices.
    pub fn simplex(m: usize) -> Self {
        Self::from_maximal(m, vec![(0..m).collect()])
    }

    pub fn vertex_count(&self) -> usize {
        self.m
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    pub fn labels(&self) -> Option<&[FpVector]> {
        self.labels.as_deref()
    }

    pub fn dim(&self) -> isize {
        self.facets.iter().map(|f| f.len()).max().unwrap_or(0) as isize - 1
    }

    pub fn is_pure(&self) -> bool {
        let d = self.facets[0].len();
        self.facets.iter().all(|f| f.len() == d)
    }

    /// Faces grouped by cardinality (index 0 holds the empty face), each group
    /// sorted lexicographically.
    pub fn faces_by_size(&self) -> &[Vec<VertexSet>] {
        self.faces.get_or_init(|| {
            let top = (self.dim() + 1) as usize;
            let mut buckets: Vec<FxHashSet<VertexSet>> = vec![FxHashSet::default(); top + 1];
            for f in &self.facets {
                for s in f.subsets() {
                    buckets[s.len()].insert(s);
                }
            }
            buckets
                .into_iter()
                .map(|b| {
                    let mut v: Vec<VertexSet> = b.into_iter().collect();
                    v.sort();
                    v
                })
                .collect()
        })
    }

    /// All faces, including the empty one, by size then lexicographically.
    pub fn faces(&self) -> impl Iterator<Item = &VertexSet> {
        self.faces_by_size().iter().flatten()
    }

    fn face_set(&self) -> &FxHashSet<VertexSet> {
        self.face_set
            .get_or_init(|| self.faces().copied().collect())
    }

    pub fn is_simplex(&self, sigma: &VertexSet) -> Result<bool> {
        check_range(self.m, sigma)?;
        Ok(self.contains_unchecked(sigma))
    }

    #[inline]
    pub(crate) fn contains_unchecked(&self, sigma: &VertexSet) -> bool {
        if self.facets.len() <= 16 {
            self.facets.iter().any(|f| sigma.is_subset(f))
        } else {
            self.face_set().contains(sigma)
        }
    }

    /// Vertices that are faces.
    pub fn support(&self) -> VertexSet {
        self.facets
            .iter()
            .fold(VertexSet::empty(), |acc, f| acc.union(f))
    }

    pub fn f_vector(&self) -> FVector {
        FVector(
            self.faces_by_size()
                .iter()
                .map(|b| BigUint::from(b.len()))
                .collect(),
        )
    }

    pub fn euler_characteristic(&self) -> BigInt {
        self.f_vector().euler_characteristic()
    }

    pub fn reduced_euler(&self) -> BigInt {
        self.euler_characteristic() - 1
    }

    /// K_J = {τ ∈ K : τ ⊆ J}, re-indexed over J.
    pub fn full_subcomplex(&self, j: &VertexSet) -> Result<Subcomplex> {
        check_range(self.m, j)?;
        let vertex_map = j.to_vec();
        let local = |s: &VertexSet| -> VertexSet {
            s.iter()
                .map(|v| j.rank_of(v).expect("subset of J"))
                .collect()
        };
        let pieces: Vec<VertexSet> = self
            .facets
            .iter()
            .map(|f| local(&f.intersection(j)))
            .collect();
        let mut complex = Self::from_maximal(vertex_map.len(), maximal_sets(pieces));
        if let Some(labels) = &self.labels {
            complex.labels = Some(vertex_map.iter().map(|&v| labels[v].clone()).collect());
        }
        Ok(Subcomplex {
            complex,
            vertex_map,
        })
    }

    /// Lk(σ) = {τ : τ ∩ σ = ∅, τ ∪ σ ∈ K}, re-indexed over the vertices
    /// outside σ.
    pub fn link(&self, sigma: &VertexSet) -> Result<Subcomplex> {
        if !self.is_simplex(sigma)? {
            return Err(Error::Precondition(format!("{sigma:?} is not a simplex")));
        }
        let rest: VertexSet = (0..self.m).filter(|v| !sigma.contains(*v)).collect();
        let vertex_map = rest.to_vec();
        let facets: Vec<VertexSet> = self
            .facets
            .iter()
            .filter(|f| sigma.is_subset(f))
            .map(|f| {
                f.difference(sigma)
                    .iter()
                    .map(|v| rest.rank_of(v).expect("outside sigma"))
                    .collect()
            })
            .collect();
        let mut complex = Self::from_maximal(vertex_map.len(), facets);
        if let Some(labels) = &self.labels {
            complex.labels = Some(vertex_map.iter().map(|&v| labels[v].clone()).collect());
        }
        Ok(Subcomplex {
            complex,
            vertex_map,
        })
    }

    /// Exchange property over every pair of faces with |σ| = |τ| + 1, which
    /// implies it for all |σ| > |τ|.
    pub fn is_matroid(&self) -> bool {
        let by_size = self.faces_by_size();
        (1..by_size.len()).all(|k| {
            by_size[k - 1].par_iter().all(|tau| {
                let mut blocked = VertexSet::empty();
                for v in 0..self.m {
                    if !tau.contains(v) && !self.contains_unchecked(&tau.with(v)) {
                        blocked.insert(v);
                    }
                }
                let bad = tau.union(&blocked);
                !by_size[k].iter().any(|sigma| sigma.is_subset(&bad))
            })
        })
    }

    /// Facet cardinality of a pure complex.
    pub fn matroid_rank(&self) -> Result<usize> {
        if !self.is_pure() {
            return Err(Error::Precondition(
                "rank is only defined for pure complexes".into(),
            ));
        }
        Ok(self.facets[0].len())
    }

    /// All (j+1)-sets that are not faces although every proper subset is.
    pub fn minimal_nonsimplices(&self, j: usize) -> Vec<VertexSet> {
        if j == 0 {
            return (0..self.m)
                .map(VertexSet::singleton)
                .filter(|s| !self.contains_unchecked(s))
                .collect();
        }
        let Some(base) = self.faces_by_size().get(j) else {
            return Vec::new();
        };
        let mut out: Vec<VertexSet> = base
            .par_iter()
            .flat_map_iter(|tau| {
                let top = tau.last().map_or(0, |v| v + 1);
                (top..self.m).filter_map(move |v| {
                    let sigma = tau.with(v);
                    let minimal = !self.contains_unchecked(&sigma)
                        && sigma
                            .iter()
                            .all(|w| self.contains_unchecked(&sigma.without(w)));
                    minimal.then_some(sigma)
                })
            })
            .collect();
        out.sort();
        out
    }

    pub fn reduced_cohomology(&self, coefficients: Coefficients) -> CohomologyRanks {
        reduced_cohomology_ranks(self, coefficients)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ComplexDocument::from_complex(self)).expect("serializable document")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ComplexDocument =
            serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        doc.into_complex()
    }
}

impl SimplexOracle for SimplicialComplex {
    fn vertex_count(&self) -> usize {
        self.m
    }

    fn contains(&self, sigma: &VertexSet) -> bool {
        sigma.last().map_or(true, |v| v < self.m) && self.contains_unchecked(sigma)
    }
}

/// The full subcomplex on `vertices` read off a membership oracle, re-indexed
/// over `vertices` in the given order. Enumerates all 2^|vertices| subsets.
pub fn full_subcomplex_from_oracle<O: SimplexOracle + ?Sized>(
    oracle: &O,
    vertices: &[usize],
) -> Result<Subcomplex> {
    if vertices.len() > 24 {
        return Err(Error::ResourceLimit(format!(
            "{} vertices is too many to enumerate subsets",
            vertices.len()
        )));
    }
    let mut faces = Vec::new();
    for mask in 0u64..1 << vertices.len() {
        let local = VertexSet::from_mask(mask);
        let global: VertexSet = local.iter().map(|i| vertices[i]).collect();
        if oracle.contains(&global) {
            faces.push(local);
        }
    }
    let complex = SimplicialComplex::from_facets(vertices.len(), faces)?;
    Ok(Subcomplex {
        complex,
        vertex_map: vertices.to_vec(),
    })
}

/// Δ^m_{(k)}: all subsets of {0..m} with at most k+1 elements.
pub fn skeleton_of_simplex(m: usize, k: usize) -> Result<SimplicialComplex> {
    if k > m {
        return Err(Error::Precondition(format!(
            "skeleton {k} of a {m}-simplex"
        )));
    }
    let n = m + 1;
    let mut facets = Vec::new();
    let mut cur = Vec::with_capacity(k + 1);
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<VertexSet>) {
        if cur.len() == size {
            out.push(cur.iter().copied().collect());
            return;
        }
        for v in start..n {
            if n - v < size - cur.len() {
                break;
            }
            cur.push(v);
            rec(v + 1, n, size, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k + 1, &mut cur, &mut facets);
    SimplicialComplex::from_facets(n, facets)
}

/// Versioned JSON form shared by plain and universal complexes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDocument {
    pub version: u32,
    pub m: usize,
    pub facets: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default)]
    pub labels: Option<Vec<Vec<u32>>>,
}

pub const DOCUMENT_VERSION: u32 = 1;

impl ComplexDocument {
    pub fn from_complex(k: &SimplicialComplex) -> Self {
        ComplexDocument {
            version: DOCUMENT_VERSION,
            m: k.m,
            facets: k.facets.iter().map(VertexSet::to_vec).collect(),
            family: None,
            p: k.labels
                .as_ref()
                .and_then(|l| l.first())
                .map(FpVector::prime),
            n: None,
            labels: k
                .labels
                .as_ref()
                .map(|l| l.iter().map(|v| v.coords().to_vec()).collect()),
        }
    }

    pub fn into_complex(self) -> Result<SimplicialComplex> {
        if self.version != DOCUMENT_VERSION {
            return Err(Error::Format(format!(
                "unsupported document version {}",
                self.version
            )));
        }
        let k = SimplicialComplex::from_facet_lists(self.m, &self.facets)?;
        match self.labels {
            None => Ok(k),
            Some(labels) => {
                let p = self
                    .p
                    .ok_or_else(|| Error::Format("labels given without a prime".into()))?;
                let labels = labels
                    .iter()
                    .map(|c| {
                        let c: Vec<i64> = c.iter().map(|&x| x as i64).collect();
                        FpVector::new(p, &c)
                    })
                    .collect::<Result<Vec<_>>>()?;
                k.with_labels(labels)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(xs: &[usize]) -> VertexSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn membership_and_maximality() {
        let tri = SimplicialComplex::from_facets(3, vec![vs(&[0, 1, 2]), vs(&[0, 1])]).unwrap();
        assert_eq!(tri.facets(), &[vs(&[0, 1, 2])]);
        assert!(tri.is_simplex(&vs(&[0, 2])).unwrap());
        let c3 = cycle(3);
        assert!(!c3.is_simplex(&vs(&[0, 1, 2])).unwrap());
        assert!(matches!(
            c3.is_simplex(&vs(&[5])),
            Err(Error::VertexOutOfRange { vertex: 5, m: 3 })
        ));
        assert!(SimplicialComplex::from_facets(2, vec![vs(&[0, 2])]).is_err());
    }

    #[test]
    fn f_vectors_and_euler() {
        let d2 = SimplicialComplex::simplex(3);
        assert_eq!(d2.f_vector(), FVector::from_u64(&[1, 3, 3, 1]));
        assert_eq!(d2.euler_characteristic(), BigInt::from(1));
        let c3 = cycle(3);
        assert_eq!(c3.f_vector(), FVector::from_u64(&[1, 3, 3]));
        assert_eq!(c3.euler_characteristic(), BigInt::from(0));
        assert_eq!(c3.reduced_euler(), BigInt::from(-1));
        let empty = SimplicialComplex::from_facets(0, vec![]).unwrap();
        assert_eq!(empty.f_vector(), FVector::from_u64(&[1]));
        assert_eq!(empty.reduced_euler(), BigInt::from(-1));
    }

    #[test]
    fn subcomplexes_and_links() {
        let d2 = SimplicialComplex::simplex(3);
        let e = d2.full_subcomplex(&vs(&[0, 1])).unwrap();
        assert_eq!(e.complex.facets(), &[vs(&[0, 1])]);
        assert_eq!(e.vertex_map, vec![0, 1]);
        let lk = cycle(3).link(&vs(&[0])).unwrap();
        assert_eq!(lk.complex.facets(), &[vs(&[0]), vs(&[1])]);
        assert_eq!(lk.vertex_map, vec![1, 2]);
        assert!(matches!(
            cycle(3).link(&vs(&[0, 1, 2])),
            Err(Error::Precondition(_))
        ));
        let j = cycle(4).full_subcomplex(&vs(&[0, 2])).unwrap();
        assert_eq!(j.complex.f_vector(), FVector::from_u64(&[1, 2]));
    }

    #[test]
    fn matroid_checks() {
        assert!(uniform_matroid(2, 4).is_matroid());
        assert!(!disjoint_edges().is_matroid());
        assert!(cycle(3).is_matroid());
        assert!(!cycle(5).is_matroid());
        assert_eq!(uniform_matroid(2, 4).matroid_rank().unwrap(), 2);
        let mixed = SimplicialComplex::from_facets(3, vec![vs(&[0, 1]), vs(&[2])]).unwrap();
        assert!(mixed.matroid_rank().is_err());
    }

    #[test]
    fn minimal_nonsimplices_examples() {
        assert!(SimplicialComplex::simplex(3)
            .minimal_nonsimplices(1)
            .is_empty());
        assert!(SimplicialComplex::simplex(3)
            .minimal_nonsimplices(2)
            .is_empty());
        assert_eq!(cycle(3).minimal_nonsimplices(2), vec![vs(&[0, 1, 2])]);
        assert_eq!(
            cycle(4).minimal_nonsimplices(1),
            vec![vs(&[0, 2]), vs(&[1, 3])]
        );
    }

    #[test]
    fn skeleta() {
        assert_eq!(skeleton_of_simplex(3, 1).unwrap(), complete_graph(4));
        assert_eq!(
            skeleton_of_simplex(2, 2).unwrap(),
            SimplicialComplex::simplex(3)
        );
        assert_eq!(skeleton_of_simplex(2, 1).unwrap(), cycle(3));
        assert!(skeleton_of_simplex(1, 2).is_err());
    }

    #[test]
    fn json_round_trip() {
        let k = projective_plane();
        let text = k.to_json();
        assert_eq!(SimplicialComplex::from_json(&text).unwrap(), k);
        assert_eq!(SimplicialComplex::from_json(&text).unwrap().to_json(), text);
        assert!(SimplicialComplex::from_json("{\"version\":9,\"m\":1,\"facets\":[]}").is_err());
    }
}
