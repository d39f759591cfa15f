//! Cells, differential and the acyclic matching on R*(K).

use std::collections::VecDeque;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use super::faces::submasks;
use super::KoszulCell;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// Largest vertex count for the explicit (non-streaming) matching routines.
const EXPLICIT_CAP: usize = 16;

/// All u_A v_B with A ⊔ B = `support` and B a face.
pub fn cells_for_support(k: &SimplicialComplex, support: &VertexSet) -> Vec<KoszulCell> {
    let members = support.to_vec();
    assert!(members.len() < 64, "support too large to enumerate");
    let full = (1u64 << members.len()) - 1;
    let mut out: Vec<KoszulCell> = submasks(full)
        .filter_map(|bmask| {
            let b: VertexSet = super::faces::bits(bmask).map(|t| members[t]).collect();
            k.contains_unchecked(&b)
                .then(|| KoszulCell::new(support.difference(&b), b))
        })
        .collect();
    out.sort();
    out
}

/// ∂(u_A v_B) = Σ_k (-1)^k u_{A∖a_k} v_{a_k ∪ B}, k the 1-based position of
/// a_k in A, over the k with a_k ∪ B a face.
pub fn differential(k: &SimplicialComplex, cell: &KoszulCell) -> Vec<(i64, KoszulCell)> {
    cell.a
        .iter()
        .enumerate()
        .filter_map(|(pos, a)| {
            let b = cell.b.with(a);
            k.contains_unchecked(&b).then(|| {
                let sign = if (pos + 1) % 2 == 0 { 1 } else { -1 };
                (sign, KoszulCell::new(cell.a.without(a), b))
            })
        })
        .collect()
}

/// The sets M(u_A v_B) and N(u_A v_B) for the vertex order 0 < 1 < ...
///
/// M: a ∈ A with a ∪ B ∈ K, x ∪ B ∉ K for every x ∈ A below a, and every
/// y ∈ B below a admits some x ∈ A below y with x ∪ B∖y ∈ K.
/// N: b ∈ B with x ∪ B∖b ∉ K for every x ∈ A below b, and the same condition
/// on the y ∈ B below b.
pub fn morse_sets(k: &SimplicialComplex, cell: &KoszulCell) -> (VertexSet, VertexSet) {
    let (m, n) = morse_sets_unchecked(k, cell);
    assert!(m.len() + n.len() <= 1, "|M| + |N| > 1 at {cell:?}");
    (m, n)
}

fn morse_sets_unchecked(k: &SimplicialComplex, cell: &KoszulCell) -> (VertexSet, VertexSet) {
    let (a_set, b_set) = (&cell.a, &cell.b);
    let has = |s: VertexSet| k.contains_unchecked(&s);
    let repaired = |y: usize| {
        a_set
            .iter()
            .take_while(|&x| x < y)
            .any(|x| has(b_set.without(y).with(x)))
    };
    let prefix_ok = |bound: usize| b_set.iter().take_while(|&y| y < bound).all(repaired);
    let m: VertexSet = a_set
        .iter()
        .filter(|&a| {
            has(b_set.with(a))
                && a_set
                    .iter()
                    .take_while(|&x| x < a)
                    .all(|x| !has(b_set.with(x)))
                && prefix_ok(a)
        })
        .collect();
    let n: VertexSet = b_set
        .iter()
        .filter(|&b| {
            a_set
                .iter()
                .take_while(|&x| x < b)
                .all(|x| !has(b_set.without(b).with(x)))
                && prefix_ok(b)
        })
        .collect();
    (m, n)
}

/// Matched pairs (u_A v_B -> u_{A∖a} v_{a∪B} with M = {a}) and critical cells.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MorseMatchingRecord {
    pub pairs: Vec<(KoszulCell, KoszulCell)>,
    pub critical: Vec<KoszulCell>,
}

fn require_matroid(k: &SimplicialComplex) -> Result<()> {
    if !k.is_matroid() {
        return Err(Error::Precondition(
            "the matching is only defined for matroids".into(),
        ));
    }
    Ok(())
}

fn supports(m: usize) -> impl Iterator<Item = VertexSet> {
    (0u64..1 << m).map(VertexSet::from_mask)
}

fn check_explicit_cap(k: &SimplicialComplex) -> Result<()> {
    if k.vertex_count() > EXPLICIT_CAP {
        return Err(Error::ResourceLimit(format!(
            "explicit matching supports at most {EXPLICIT_CAP} vertices"
        )));
    }
    Ok(())
}

pub fn morse_matching(k: &SimplicialComplex) -> Result<MorseMatchingRecord> {
    check_explicit_cap(k)?;
    require_matroid(k)?;
    let mut rec = MorseMatchingRecord::default();
    for support in supports(k.vertex_count()) {
        for cell in cells_for_support(k, &support) {
            let (m, n) = morse_sets(k, &cell);
            if let Some(a) = m.first() {
                rec.pairs
                    .push((cell, KoszulCell::new(cell.a.without(a), cell.b.with(a))));
            } else if n.is_empty() {
                rec.critical.push(cell);
            }
        }
    }
    Ok(rec)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingReport {
    pub cells: usize,
    pub pairs: usize,
    pub critical: usize,
    /// |M| + |N| <= 1 everywhere.
    pub mn_bound: bool,
    /// M(c) = {a} iff N of the partner is {a}.
    pub pairing_consistent: bool,
    /// Pairs and critical cells cover every cell exactly once.
    pub partition: bool,
    /// Condition (1): no two matched edges share an endpoint.
    pub disjoint_endpoints: bool,
    /// Condition (2): matched coefficients are ±1.
    pub unit_coefficients: bool,
    /// Condition (3): the digraph with matched edges reversed has a
    /// topological order.
    pub acyclic: bool,
    /// Along down-then-matched-up steps the value of M strictly increases.
    pub potential_increasing: bool,
    /// Critical cells of support S all have |A| = |S| - rank(K_S).
    pub concentrated: bool,
    /// Every critical u_A v_B has B maximal in K_{A∪B}.
    pub b_maximal: bool,
    /// ∂∘∂ = 0 on every cell.
    pub d_squared_zero: bool,
}

impl MatchingReport {
    pub fn passes(&self) -> bool {
        self.mn_bound
            && self.pairing_consistent
            && self.partition
            && self.disjoint_endpoints
            && self.unit_coefficients
            && self.acyclic
            && self.potential_increasing
            && self.concentrated
            && self.b_maximal
            && self.d_squared_zero
    }
}

fn rank_in(k: &SimplicialComplex, s: &VertexSet) -> usize {
    let mut cur = VertexSet::empty();
    for v in s.iter() {
        if k.contains_unchecked(&cur.with(v)) {
            cur.insert(v);
        }
    }
    cur.len()
}

/// Exhaustive check of the matching, support by support.
pub fn verify_matching(k: &SimplicialComplex) -> Result<MatchingReport> {
    check_explicit_cap(k)?;
    require_matroid(k)?;
    let mut r = MatchingReport {
        mn_bound: true,
        pairing_consistent: true,
        partition: true,
        disjoint_endpoints: true,
        unit_coefficients: true,
        acyclic: true,
        potential_increasing: true,
        concentrated: true,
        b_maximal: true,
        d_squared_zero: true,
        ..Default::default()
    };
    for support in supports(k.vertex_count()) {
        let cells = cells_for_support(k, &support);
        let index: FxHashMap<KoszulCell, usize> =
            cells.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let sets: Vec<(VertexSet, VertexSet)> =
            cells.iter().map(|c| morse_sets_unchecked(k, c)).collect();
        if sets.iter().any(|(m, n)| m.len() + n.len() > 1) {
            r.mn_bound = false;
        }
        r.cells += cells.len();

        // partner[i] = Some(j) for both ends of a matched edge
        let mut partner: Vec<Option<usize>> = vec![None; cells.len()];
        let mut covered = vec![0u32; cells.len()];
        for (i, c) in cells.iter().enumerate() {
            let (m, n) = &sets[i];
            if let Some(a) = m.first() {
                let t = KoszulCell::new(c.a.without(a), c.b.with(a));
                let Some(&j) = index.get(&t) else {
                    r.pairing_consistent = false;
                    continue;
                };
                if sets[j].1 != VertexSet::singleton(a) {
                    r.pairing_consistent = false;
                }
                if partner[i].is_some() || partner[j].is_some() {
                    r.disjoint_endpoints = false;
                }
                partner[i] = Some(j);
                partner[j] = Some(i);
                covered[i] += 1;
                covered[j] += 1;
                r.pairs += 1;
                let coeff = differential(k, c)
                    .into_iter()
                    .find(|(_, x)| *x == t)
                    .map(|(s, _)| s);
                if !matches!(coeff, Some(1) | Some(-1)) {
                    r.unit_coefficients = false;
                }
            }
            if let Some(b) = n.first() {
                let s = KoszulCell::new(c.a.with(b), c.b.without(b));
                match index.get(&s) {
                    Some(&j) if sets[j].0 == VertexSet::singleton(b) => {}
                    _ => r.pairing_consistent = false,
                }
            }
        }
        let rank = rank_in(k, &support);
        for (i, c) in cells.iter().enumerate() {
            if sets[i].0.is_empty() && sets[i].1.is_empty() {
                covered[i] += 1;
                r.critical += 1;
                if c.a.len() != support.len() - rank {
                    r.concentrated = false;
                }
                if c.a.iter().any(|x| k.contains_unchecked(&c.b.with(x))) {
                    r.b_maximal = false;
                }
            }
        }
        if covered.iter().any(|&x| x != 1) {
            r.partition = false;
        }

        // digraph: differential edges, matched ones reversed
        let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); cells.len()];
        let mut indeg = vec![0usize; cells.len()];
        for (i, c) in cells.iter().enumerate() {
            let terms = differential(k, c);
            let mut dd: FxHashMap<KoszulCell, i64> = FxHashMap::default();
            for (s, t) in &terms {
                for (s2, t2) in differential(k, t) {
                    *dd.entry(t2).or_default() += s * s2;
                }
            }
            if dd.values().any(|&x| x != 0) {
                r.d_squared_zero = false;
            }
            for (_, t) in terms {
                let j = index[&t];
                let matched = sets[i].0.first().is_some() && partner[i] == Some(j);
                let (from, to) = if matched { (j, i) } else { (i, j) };
                out_edges[from].push(to);
                indeg[to] += 1;
                // down step from a matched source into another matched target
                if !matched {
                    if let (Some(a0), Some(b)) = (sets[i].0.first(), sets[j].1.first()) {
                        if b <= a0 {
                            r.potential_increasing = false;
                        }
                    }
                }
            }
        }
        let mut queue: VecDeque<usize> = (0..cells.len()).filter(|&i| indeg[i] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop_front() {
            seen += 1;
            for &w in &out_edges[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        if seen != cells.len() {
            r.acyclic = false;
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{cycle, disjoint_edges, uniform_matroid};

    fn vs(xs: &[usize]) -> VertexSet {
        xs.iter().copied().collect()
    }

    fn cell(a: &[usize], b: &[usize]) -> KoszulCell {
        KoszulCell::new(vs(a), vs(b))
    }

    #[test]
    fn cells_of_the_triangle() {
        let c3 = cycle(3);
        assert_eq!(cells_for_support(&c3, &vs(&[0, 1])).len(), 4);
        assert_eq!(cells_for_support(&c3, &vs(&[])), vec![cell(&[], &[])]);
        let top = cells_for_support(&c3, &vs(&[0, 1, 2]));
        assert_eq!(top.len(), 7);
        assert!(!top.contains(&cell(&[], &[0, 1, 2])));
    }

    #[test]
    fn differential_examples() {
        let c3 = cycle(3);
        assert!(differential(&c3, &cell(&[], &[0, 1])).is_empty());
        let d = differential(&c3, &cell(&[0, 1], &[]));
        assert_eq!(d, vec![(-1, cell(&[1], &[0])), (1, cell(&[0], &[1]))]);
        assert!(differential(&c3, &cell(&[0], &[1, 2])).is_empty());
    }

    #[test]
    fn morse_sets_examples() {
        let c3 = cycle(3);
        assert_eq!(morse_sets(&c3, &cell(&[0, 1], &[2])), (vs(&[0]), vs(&[])));
        assert_eq!(morse_sets(&c3, &cell(&[1], &[0, 2])), (vs(&[]), vs(&[0])));
        assert_eq!(morse_sets(&c3, &cell(&[0], &[1, 2])), (vs(&[]), vs(&[])));
    }

    #[test]
    fn triangle_and_simplex_criticals() {
        let rec = morse_matching(&cycle(3)).unwrap();
        assert_eq!(rec.critical, vec![cell(&[], &[]), cell(&[0], &[1, 2])]);
        let total: usize = (0u64..8)
            .map(|m| cells_for_support(&cycle(3), &VertexSet::from_mask(m)).len())
            .sum();
        // 8 cells with B empty, 12 with B a vertex, 6 with B an edge
        assert_eq!(total, 26);
        let rec = morse_matching(&SimplicialComplex::simplex(3)).unwrap();
        assert_eq!(rec.critical, vec![cell(&[], &[])]);
    }

    #[test]
    fn verification_passes_on_matroids() {
        for k in [
            cycle(3),
            uniform_matroid(2, 5),
            uniform_matroid(3, 5),
            SimplicialComplex::simplex(4),
        ] {
            let r = verify_matching(&k).unwrap();
            assert!(r.passes(), "{r:?}");
        }
        assert!(matches!(
            verify_matching(&disjoint_edges()),
            Err(Error::Precondition(_))
        ));
    }
}
