//! The universal complexes X(F_p^n) and K(F_p^n).
//!
//! X has the nonzero vectors of F_p^n as vertices and the linearly
//! independent sets as simplices. K has the lines through the origin as
//! vertices, a set of lines being a simplex when their representatives are
//! independent. Vertices are numbered in lex order of their labels.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{ComplexDocument, FVector, SimplexOracle, SimplicialComplex};
use crate::error::{Error, Result};
use crate::lattice::{
    canonical_line, check_prime, enumerate_lines, nonzero_vectors, EchelonBasis, FpVector,
    LineLabel,
};
use crate::vertex_set::{VertexSet, MAX_VERTICES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    X,
    K,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::X => "X",
            Family::K => "K",
        })
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "X" | "x" => Ok(Family::X),
            "K" | "k" => Ok(Family::K),
            other => Err(Error::Format(format!("unknown family {other:?}"))),
        }
    }
}

/// Guards against building complexes that would not fit in memory.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    pub max_vertices: usize,
    pub max_facets: u64,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            max_vertices: 200,
            max_facets: 10_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalComplex {
    family: Family,
    p: u32,
    n: usize,
    labels: Vec<FpVector>,
    base: Option<SimplicialComplex>,
}

fn pow_big(p: u32, e: usize) -> BigUint {
    num_traits::pow(BigUint::from(p), e)
}

fn factorial(k: usize) -> BigUint {
    (1..=k as u64).map(BigUint::from).product()
}

fn exact_div(num: BigUint, den: &BigUint) -> Result<BigUint> {
    let (q, r) = num.div_rem(den);
    if !r.is_zero() {
        return Err(Error::Internal(format!("{num} is not divisible by {den}")));
    }
    Ok(q)
}

pub fn vertex_count(family: Family, p: u32, n: usize) -> BigUint {
    let total = pow_big(p, n) - 1u32;
    match family {
        Family::X => total,
        Family::K => total / (p - 1),
    }
}

/// Closed-form f-vector of the universal complex.
pub fn f_vector_closed(family: Family, p: u32, n: usize) -> Result<FVector> {
    link_f_vector_from(family, p, n, 0)
}

/// f-vector of the link of an m-simplex, 0 <= m <= n-1.
pub fn link_f_vector_closed(family: Family, p: u32, n: usize, m: usize) -> Result<FVector> {
    if m + 1 > n {
        return Err(Error::Precondition(format!(
            "no {m}-simplices in a complex of dimension {}",
            n as isize - 1
        )));
    }
    link_f_vector_from(family, p, n, m + 1)
}

/// f_i = Π_{t=first}^{first+i} (p^n - p^t) / (i+1)! [/ (p-1)^{i+1} for K].
fn link_f_vector_from(family: Family, p: u32, n: usize, first: usize) -> Result<FVector> {
    check_prime(p as u64)?;
    let pn = pow_big(p, n);
    let mut out = vec![BigUint::one()];
    let mut prod = BigUint::one();
    for t in first..n {
        prod *= &pn - pow_big(p, t);
        let i = t - first;
        let mut den = factorial(i + 1);
        if family == Family::K {
            den *= num_traits::pow(BigUint::from(p - 1), i + 1);
        }
        out.push(exact_div(prod.clone(), &den)?);
    }
    Ok(FVector(out))
}

/// Number of (n-1)-spheres in the wedge decomposition:
/// (-1)^n + Σ_{i=0}^{n-1} (-1)^{n-1-i} f_i. For K with n = 1 this is 0.
pub fn wedge_count(family: Family, p: u32, n: usize) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let f = f_vector_closed(family, p, n)?;
    let mut acc = if n % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    for i in 0..n {
        let term = BigInt::from(f.get(i as isize));
        if (n - 1 - i) % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc.to_biguint()
        .ok_or_else(|| Error::Internal(format!("negative wedge count {acc}")))
}

/// Minimal nonsimplices of X(F_p^n) with j+1 vertices:
/// f_{j-1}(X)(p-1)^j/(j+1) for j >= 2 and (p^n-1)(p-2)/2 for j = 1.
pub fn count_minimal_nonsimplices_closed(p: u32, n: usize, j: usize) -> Result<BigUint> {
    check_prime(p as u64)?;
    if n < 2 || j < 1 || j > n {
        return Err(Error::Precondition(format!(
            "need n >= 2 and 1 <= j <= n, got n = {n}, j = {j}"
        )));
    }
    if j == 1 {
        let num = (pow_big(p, n) - 1u32) * BigUint::from(p - 2);
        return exact_div(num, &BigUint::from(2u32));
    }
    let f = f_vector_closed(Family::X, p, n)?.get(j as isize - 1);
    let num = f * num_traits::pow(BigUint::from(p - 1), j);
    exact_div(num, &BigUint::from(j as u64 + 1))
}

fn labels_for(family: Family, p: u32, n: usize) -> Result<Vec<FpVector>> {
    check_prime(p as u64)?;
    Ok(match family {
        Family::X => nonzero_vectors(p, n),
        Family::K => enumerate_lines(p, n)?
            .into_iter()
            .map(LineLabel::into_representative)
            .collect(),
    })
}

/// Depth-first extension of independent sets in increasing vertex order.
fn independent_facets(labels: &[FpVector], p: u32, n: usize) -> Vec<VertexSet> {
    fn rec(
        labels: &[FpVector],
        n: usize,
        start: usize,
        basis: &EchelonBasis,
        cur: &mut Vec<usize>,
        out: &mut Vec<VertexSet>,
    ) {
        if cur.len() == n {
            out.push(cur.iter().copied().collect());
            return;
        }
        for v in start..labels.len() {
            if labels.len() - v < n - cur.len() {
                break;
            }
            let mut b = basis.clone();
            if b.insert(&labels[v]) {
                cur.push(v);
                rec(labels, n, v + 1, &b, cur, out);
                cur.pop();
            }
        }
    }
    (0..labels.len())
        .into_par_iter()
        .map(|first| {
            let mut basis = EchelonBasis::new(p, n);
            basis.insert(&labels[first]);
            let mut out = Vec::new();
            rec(labels, n, first + 1, &basis, &mut vec![first], &mut out);
            out
        })
        .collect::<Vec<_>>()
        .concat()
}

pub fn build_x(p: u32, n: usize) -> Result<UniversalComplex> {
    UniversalComplex::build(Family::X, p, n, &BuildOptions::default())
}

pub fn build_k(p: u32, n: usize) -> Result<UniversalComplex> {
    UniversalComplex::build(Family::K, p, n, &BuildOptions::default())
}

impl UniversalComplex {
    pub fn build(family: Family, p: u32, n: usize, opts: &BuildOptions) -> Result<Self> {
        check_prime(p as u64)?;
        if n == 0 {
            return Err(Error::Precondition("n must be at least 1".into()));
        }
        let m = vertex_count(family, p, n);
        if m > BigUint::from(opts.max_vertices.min(MAX_VERTICES)) {
            return Err(Error::ResourceLimit(format!(
                "{family}(F_{p}^{n}) has {m} vertices, above the cap {}",
                opts.max_vertices.min(MAX_VERTICES)
            )));
        }
        let facets = f_vector_closed(family, p, n)?.get(n as isize - 1);
        if facets > BigUint::from(opts.max_facets) {
            return Err(Error::ResourceLimit(format!(
                "{family}(F_{p}^{n}) has {facets} facets, above the cap {}",
                opts.max_facets
            )));
        }
        let mut u = Self::unmaterialized(family, p, n)?;
        let facets = independent_facets(&u.labels, p, n);
        let base = SimplicialComplex::from_maximal(u.labels.len(), facets)
            .with_labels(u.labels.clone())?;
        u.base = Some(base);
        Ok(u)
    }

    /// Labels only; membership is answered by rank computations. Used for
    /// instances whose facet list is too large to store.
    pub fn unmaterialized(family: Family, p: u32, n: usize) -> Result<Self> {
        let labels = labels_for(family, p, n)?;
        if labels.len() > MAX_VERTICES {
            return Err(Error::ResourceLimit(format!(
                "{} vertices exceed the supported maximum {MAX_VERTICES}",
                labels.len()
            )));
        }
        Ok(UniversalComplex {
            family,
            p,
            n,
            labels,
            base: None,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[FpVector] {
        &self.labels
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn dim(&self) -> usize {
        self.n - 1
    }

    pub fn is_materialized(&self) -> bool {
        self.base.is_some()
    }

    pub fn base(&self) -> Result<&SimplicialComplex> {
        self.base.as_ref().ok_or_else(|| {
            Error::ResourceLimit(format!(
                "{}(F_{}^{}) was built without its facet list",
                self.family, self.p, self.n
            ))
        })
    }

    /// Vertex whose label is `v` (for K, the line through `v`).
    pub fn vertex_of(&self, v: &FpVector) -> Option<usize> {
        let key = match self.family {
            Family::X => v.clone(),
            Family::K => canonical_line(v).ok()?.into_representative(),
        };
        self.labels.binary_search(&key).ok()
    }

    pub fn is_simplex_labels(&self, sigma: &VertexSet) -> bool {
        let mut b = EchelonBasis::new(self.p, self.n);
        sigma.iter().all(|v| b.insert(&self.labels[v]))
    }

    pub fn to_json(&self) -> Result<String> {
        let mut doc = ComplexDocument::from_complex(self.base()?);
        doc.family = Some(self.family.to_string());
        doc.p = Some(self.p);
        doc.n = Some(self.n);
        Ok(serde_json::to_string(&doc).expect("serializable"))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ComplexDocument =
            serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        let family: Family = doc
            .family
            .as_deref()
            .ok_or_else(|| Error::Format("missing family".into()))?
            .parse()?;
        let (p, n) = match (doc.p, doc.n) {
            (Some(p), Some(n)) => (p, n),
            _ => return Err(Error::Format("missing p or n".into())),
        };
        let base = doc.into_complex()?;
        let labels = base
            .labels()
            .ok_or_else(|| Error::Format("missing labels".into()))?
            .to_vec();
        if labels != labels_for(family, p, n)? {
            return Err(Error::Format(format!(
                "labels do not match {family}(F_{p}^{n})"
            )));
        }
        Ok(UniversalComplex {
            family,
            p,
            n,
            labels,
            base: Some(base),
        })
    }
}

impl SimplexOracle for UniversalComplex {
    fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    fn contains(&self, sigma: &VertexSet) -> bool {
        sigma.last().map_or(true, |v| v < self.labels.len()) && self.is_simplex_labels(sigma)
    }
}

/// φ: a vector goes to the line it spans.
pub fn map_phi(v: &FpVector) -> Result<LineLabel> {
    canonical_line(v)
}

/// ξ: a line goes to its lex-smallest nonzero point.
pub fn map_xi(l: &LineLabel) -> FpVector {
    l.representative().clone()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureMapReport {
    pub phi_simplicial: bool,
    pub phi_nondegenerate: bool,
    pub xi_simplicial: bool,
    pub xi_nondegenerate: bool,
    pub phi_after_xi_is_identity: bool,
    pub xi_after_phi_is_retraction: bool,
}

impl StructureMapReport {
    pub fn all_pass(&self) -> bool {
        self.phi_simplicial
            && self.phi_nondegenerate
            && self.xi_simplicial
            && self.xi_nondegenerate
            && self.phi_after_xi_is_identity
            && self.xi_after_phi_is_retraction
    }
}

/// Exhaustive check of φ: X -> K and ξ: K -> X on every simplex.
pub fn check_structure_maps(p: u32, n: usize) -> Result<StructureMapReport> {
    let x = build_x(p, n)?;
    let k = build_k(p, n)?;
    let xb = x.base()?;
    let kb = k.base()?;
    let phi: Vec<usize> = x
        .labels
        .iter()
        .map(|v| k.vertex_of(v).expect("every vector spans a listed line"))
        .collect();
    let xi: Vec<usize> = k
        .labels
        .iter()
        .map(|l| x.vertex_of(l).expect("representatives are vertices of X"))
        .collect();
    let image = |map: &[usize], s: &VertexSet| -> VertexSet { s.iter().map(|v| map[v]).collect() };

    let (mut phi_simplicial, mut phi_nondegenerate) = (true, true);
    let r: Vec<usize> = phi.iter().map(|&l| xi[l]).collect();
    let mut r_simplicial = true;
    for s in xb.faces() {
        let t = image(&phi, s);
        phi_simplicial &= kb.contains(&t);
        phi_nondegenerate &= t.len() == s.len();
        r_simplicial &= xb.contains(&image(&r, s));
    }
    let (mut xi_simplicial, mut xi_nondegenerate) = (true, true);
    for s in kb.faces() {
        let t = image(&xi, s);
        xi_simplicial &= xb.contains(&t);
        xi_nondegenerate &= t.len() == s.len();
    }
    let phi_after_xi_is_identity = (0..k.vertex_count()).all(|l| phi[xi[l]] == l);
    let fixes_image = xi.iter().all(|&v| r[v] == v);
    Ok(StructureMapReport {
        phi_simplicial,
        phi_nondegenerate,
        xi_simplicial,
        xi_nondegenerate,
        phi_after_xi_is_identity,
        xi_after_phi_is_retraction: r_simplicial && fixes_image,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{complete_graph, cycle};

    fn v(p: u32, c: &[i64]) -> FpVector {
        FpVector::new(p, c).unwrap()
    }

    fn fv(xs: &[u64]) -> FVector {
        FVector::from_u64(xs)
    }

    #[test]
    fn small_builds() {
        let x = build_x(2, 2).unwrap();
        assert_eq!(
            x.base().unwrap(),
            &cycle(3).with_labels(x.labels.clone()).unwrap()
        );
        let k = build_k(3, 2).unwrap();
        assert_eq!(k.vertex_count(), 4);
        assert_eq!(k.base().unwrap().facets(), complete_graph(4).facets());
        for n in 1..=3 {
            let x = build_x(2, n).unwrap();
            let k = build_k(2, n).unwrap();
            assert_eq!(x.base().unwrap(), k.base().unwrap());
        }
        let e1 = x.vertex_of(&v(2, &[1, 0])).unwrap();
        let e12 = x.vertex_of(&v(2, &[1, 1])).unwrap();
        assert!(x
            .base()
            .unwrap()
            .is_simplex(&[e1, e12].into_iter().collect())
            .unwrap());
    }

    #[test]
    fn build_errors() {
        assert!(matches!(build_x(4, 2), Err(Error::NotPrime(4))));
        assert!(matches!(build_x(2, 8), Err(Error::ResourceLimit(_))));
        let tight = BuildOptions {
            max_vertices: 200,
            max_facets: 10,
        };
        assert!(matches!(
            UniversalComplex::build(Family::X, 2, 3, &tight),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn structure_maps() {
        assert_eq!(
            map_phi(&v(3, &[2, 0])).unwrap().representative(),
            &v(3, &[1, 0])
        );
        let l = canonical_line(&v(3, &[1, 2])).unwrap();
        assert_eq!(map_xi(&l), v(3, &[1, 2]));
        assert!(check_structure_maps(3, 2).unwrap().all_pass());
        assert!(check_structure_maps(2, 3).unwrap().all_pass());
        assert!(check_structure_maps(5, 2).unwrap().all_pass());
    }

    #[test]
    fn closed_forms() {
        assert_eq!(
            f_vector_closed(Family::X, 2, 3).unwrap(),
            fv(&[1, 7, 21, 28])
        );
        assert_eq!(f_vector_closed(Family::K, 3, 2).unwrap(), fv(&[1, 4, 6]));
        assert_eq!(f_vector_closed(Family::X, 3, 2).unwrap(), fv(&[1, 8, 24]));
        assert_eq!(
            link_f_vector_closed(Family::X, 2, 3, 0).unwrap(),
            fv(&[1, 6, 12])
        );
        assert_eq!(link_f_vector_closed(Family::X, 2, 3, 2).unwrap(), fv(&[1]));
        assert!(link_f_vector_closed(Family::X, 2, 3, 3).is_err());
    }

    #[test]
    fn wedge_counts() {
        assert_eq!(wedge_count(Family::X, 2, 2).unwrap(), 1u32.into());
        assert_eq!(wedge_count(Family::X, 2, 3).unwrap(), 13u32.into());
        assert_eq!(wedge_count(Family::K, 3, 2).unwrap(), 3u32.into());
        assert_eq!(wedge_count(Family::K, 5, 1).unwrap(), 0u32.into());
        assert_eq!(wedge_count(Family::X, 5, 1).unwrap(), 3u32.into());
    }

    #[test]
    fn minimal_nonsimplex_counts() {
        assert_eq!(
            count_minimal_nonsimplices_closed(2, 2, 2).unwrap(),
            1u32.into()
        );
        assert_eq!(
            count_minimal_nonsimplices_closed(3, 2, 1).unwrap(),
            4u32.into()
        );
        for n in 2..=5 {
            assert!(count_minimal_nonsimplices_closed(2, n, 1)
                .unwrap()
                .is_zero());
        }
        let x = build_x(2, 2).unwrap();
        let found = x.base().unwrap().minimal_nonsimplices(2);
        assert_eq!(found.len(), 1);
        let x3 = build_x(3, 2).unwrap();
        assert_eq!(x3.base().unwrap().minimal_nonsimplices(1).len(), 4);
    }

    #[test]
    fn json_round_trip() {
        let k = build_k(3, 2).unwrap();
        let text = k.to_json().unwrap();
        assert!(text.contains("\"family\":\"K\""));
        assert_eq!(UniversalComplex::from_json(&text).unwrap(), k);
    }

    #[test]
    fn oracle_agrees_with_facets() {
        let x = build_x(3, 2).unwrap();
        let b = x.base().unwrap();
        for mask in 0u64..(1 << 8) {
            let s = VertexSet::from_mask(mask);
            assert_eq!(SimplexOracle::contains(&x, &s), b.contains(&s), "{s:?}");
        }
    }
}
