//! Cup-length bounds for moment-angle complexes of the universal complexes.
//!
//! A lower bound comes from disjoint vertex sets I_1, .., I_k whose spans are
//! independent: then K_{I_1 ∪ .. ∪ I_k} is the join of the K_{I_t}, and
//! sphere classes on the parts multiply nontrivially. An upper bound comes
//! from the least degree s in which some full subcomplex has reduced
//! cohomology: every positive-degree class has degree at least s + 2, so at
//! most ⌊(dim K + 1)/(s + 1)⌋ of them have a nonzero product.

use serde::{Deserialize, Serialize};

use crate::complex::{full_subcomplex_from_oracle, Coefficients, SimplexOracle};
use crate::error::{Error, Result};
use crate::lattice::{rank_fp, FpVector};
use crate::universal::{Family, UniversalComplex};
use crate::vertex_set::VertexSet;

/// Disjoint label sets with the degree of the sphere each spans.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JoinWitness {
    pub parts: Vec<Vec<FpVector>>,
    pub sphere_dims: Vec<usize>,
}

fn check_parts(parts: &[Vec<FpVector>]) -> Result<()> {
    let first = parts
        .iter()
        .flatten()
        .next()
        .ok_or_else(|| Error::Precondition("no labels given".into()))?;
    if parts.iter().any(Vec::is_empty) {
        return Err(Error::Precondition("empty part".into()));
    }
    for v in parts.iter().flatten() {
        if v.prime() != first.prime() || v.dim() != first.dim() {
            return Err(Error::DimensionMismatch(
                "labels from different spaces".into(),
            ));
        }
    }
    for (s, a) in parts.iter().enumerate() {
        for b in &parts[s + 1..] {
            if a.iter().any(|v| b.contains(v)) {
                return Err(Error::Precondition("parts overlap".into()));
            }
        }
    }
    Ok(())
}

/// dim span(I_1) + .. + dim span(I_k) = dim span(I_1 ∪ .. ∪ I_k).
pub fn join_condition(parts: &[Vec<FpVector>]) -> Result<bool> {
    check_parts(parts)?;
    let mut sum = 0;
    for part in parts {
        sum += rank_fp(part)?;
    }
    let union: Vec<FpVector> = parts.iter().flatten().cloned().collect();
    Ok(sum == rank_fp(&union)?)
}

fn vertices_of(u: &UniversalComplex, part: &[FpVector]) -> Result<Vec<usize>> {
    part.iter()
        .map(|v| {
            u.vertex_of(v)
                .ok_or_else(|| Error::InvalidVertex(format!("{v:?} is not a vertex")))
        })
        .collect()
}

/// Checks directly that a set is a face of K_{∪ I_t} iff each of its pieces
/// is a face of the corresponding K_{I_t}.
pub fn is_join_of_parts(u: &UniversalComplex, parts: &[Vec<FpVector>]) -> Result<bool> {
    let groups: Vec<Vec<usize>> = parts
        .iter()
        .map(|p| vertices_of(u, p))
        .collect::<Result<_>>()?;
    let all: Vec<usize> = groups.iter().flatten().copied().collect();
    if all.len() > 20 {
        return Err(Error::ResourceLimit("union too large to enumerate".into()));
    }
    for mask in 0u64..1 << all.len() {
        let sigma: VertexSet = VertexSet::from_mask(mask).iter().map(|i| all[i]).collect();
        let pieces_ok = groups.iter().all(|g| {
            let piece: VertexSet = g.iter().copied().filter(|v| sigma.contains(*v)).collect();
            u.contains(&piece)
        });
        if pieces_ok != u.contains(&sigma) {
            return Ok(false);
        }
    }
    Ok(true)
}

impl JoinWitness {
    /// Parts disjoint, spans independent, each K_{I_t} a rational homology
    /// sphere class in degree r_t, and the union carrying a class in degree
    /// Σ r_t + k - 1.
    pub fn validate(&self, u: &UniversalComplex) -> Result<bool> {
        if self.parts.is_empty() {
            return Ok(true);
        }
        if self.parts.len() != self.sphere_dims.len() || !join_condition(&self.parts)? {
            return Ok(false);
        }
        for (part, &r) in self.parts.iter().zip(&self.sphere_dims) {
            let sub = full_subcomplex_from_oracle(u, &vertices_of(u, part)?)?;
            let h = sub.complex.reduced_cohomology(Coefficients::Rationals);
            if h.support() != vec![r as i32] {
                return Ok(false);
            }
        }
        let all: Vec<usize> = self
            .parts
            .iter()
            .map(|p| vertices_of(u, p))
            .collect::<Result<Vec<_>>>()?
            .concat();
        let sub = full_subcomplex_from_oracle(u, &all)?;
        let h = sub.complex.reduced_cohomology(Coefficients::Rationals);
        let degree = self.sphere_dims.iter().sum::<usize>() + self.parts.len() - 1;
        Ok(h.rank(degree as i32) >= 1)
    }
}

fn unit(p: u32, n: usize, i: usize) -> FpVector {
    FpVector::unit(p, n, i)
}

/// The canonical families: {e_j, 2e_j} for X with p > 2, otherwise the line
/// triangles {l(e_{2j-1}), l(e_{2j}), l(e_{2j-1} + e_{2j})}.
fn canonical_witness(u: &UniversalComplex) -> JoinWitness {
    let (p, n) = (u.prime(), u.n());
    if u.family() == Family::X && p > 2 {
        JoinWitness {
            parts: (0..n)
                .map(|j| vec![unit(p, n, j), unit(p, n, j).scale(2)])
                .collect(),
            sphere_dims: vec![0; n],
        }
    } else {
        JoinWitness {
            parts: (0..n / 2)
                .map(|j| {
                    let (a, b) = (unit(p, n, 2 * j), unit(p, n, 2 * j + 1));
                    vec![a.clone(), b.clone(), a.add(&b)]
                })
                .collect(),
            sphere_dims: vec![1; n / 2],
        }
    }
}

/// Minimal nonfaces with at most `max_size` vertices, via the oracle.
fn small_circuits<O: SimplexOracle + ?Sized>(oracle: &O, max_size: usize) -> Vec<VertexSet> {
    let m = oracle.vertex_count();
    let mut level = vec![VertexSet::empty()];
    let mut out = Vec::new();
    for size in 1..=max_size {
        let mut next = Vec::new();
        for tau in &level {
            let start = tau.last().map_or(0, |v| v + 1);
            for v in start..m {
                let sigma = tau.with(v);
                if oracle.contains(&sigma) {
                    next.push(sigma);
                } else if size >= 2 && sigma.iter().all(|w| oracle.contains(&sigma.without(w))) {
                    out.push(sigma);
                }
            }
        }
        level = next;
        if level.len() > 200_000 {
            break;
        }
    }
    out
}

/// Greedy family of small sphere subcomplexes (minimal nonfaces of at most 4
/// vertices) with independent spans.
fn greedy_witness(u: &UniversalComplex) -> JoinWitness {
    let mut circuits = small_circuits(u, 4);
    circuits.sort_by_key(|c| (c.len(), *c));
    let mut w = JoinWitness {
        parts: Vec::new(),
        sphere_dims: Vec::new(),
    };
    let mut used = VertexSet::empty();
    for c in circuits {
        if !c.is_disjoint(&used) {
            continue;
        }
        let part: Vec<FpVector> = c.iter().map(|v| u.labels()[v].clone()).collect();
        let mut trial = w.parts.clone();
        trial.push(part.clone());
        if join_condition(&trial).unwrap_or(false) {
            w.parts.push(part);
            w.sphere_dims.push(c.len() - 2);
            used = used.union(&c);
        }
    }
    w
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CupLengthLower {
    pub bound: usize,
    pub witness: JoinWitness,
}

/// A certified lower bound: the canonical family, or a greedy family of
/// small spheres if that is longer. The witness is re-validated.
pub fn cup_length_lower(u: &UniversalComplex) -> Result<CupLengthLower> {
    let canonical = canonical_witness(u);
    let mut best = canonical;
    let greedy = greedy_witness(u);
    if greedy.parts.len() > best.parts.len() {
        best = greedy;
    }
    if !best.validate(u)? {
        return Err(Error::Internal("join witness failed validation".into()));
    }
    Ok(CupLengthLower {
        bound: best.parts.len(),
        witness: best,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CupLengthUpper {
    /// Least degree with nonvanishing reduced cohomology on a full
    /// subcomplex; `None` when every vertex set is a face.
    pub s: Option<usize>,
    pub bound: usize,
}

/// ⌊(dim + 1)/(s + 1)⌋ where s + 2 is the size of a smallest minimal nonface
/// with at least two vertices (K_J for such J is the boundary of a simplex,
/// and every smaller set is a face).
pub fn cup_length_upper_for<O: SimplexOracle + ?Sized>(oracle: &O, dim: usize) -> CupLengthUpper {
    let m = oracle.vertex_count();
    let mut level = vec![VertexSet::empty()];
    for size in 1..=m {
        let mut next = Vec::new();
        for tau in &level {
            let start = tau.last().map_or(0, |v| v + 1);
            for v in start..m {
                let sigma = tau.with(v);
                if oracle.contains(&sigma) {
                    next.push(sigma);
                } else if size >= 2 && sigma.iter().all(|w| oracle.contains(&sigma.without(w))) {
                    let s = size - 2;
                    return CupLengthUpper {
                        s: Some(s),
                        bound: (dim + 1) / (s + 1),
                    };
                }
            }
        }
        if next.is_empty() {
            break;
        }
        level = next;
    }
    CupLengthUpper { s: None, bound: 0 }
}

pub fn cup_length_upper(u: &UniversalComplex) -> CupLengthUpper {
    cup_length_upper_for(u, u.dim())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CupLengthReport {
    pub lower: CupLengthLower,
    pub upper: CupLengthUpper,
    pub coincide: bool,
    /// Lusternik–Schnirelmann category interval [lower, upper]; reported,
    /// not verified topologically.
    pub ls_category: (usize, usize),
    /// Set for X with p = 2, where X = K and the value is ⌊n/2⌋.
    pub p2_x_case: bool,
}

pub fn cup_length_report(u: &UniversalComplex) -> Result<CupLengthReport> {
    let lower = cup_length_lower(u)?;
    let upper = cup_length_upper(u);
    Ok(CupLengthReport {
        coincide: lower.bound == upper.bound,
        ls_category: (lower.bound, upper.bound),
        p2_x_case: u.family() == Family::X && u.prime() == 2,
        lower,
        upper,
    })
}
