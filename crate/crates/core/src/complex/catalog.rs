//! Small named complexes used as controls and test inputs.

use rustc_hash::FxHashSet;

use super::SimplicialComplex;
use crate::vertex_set::VertexSet;

fn from_lists(m: usize, facets: &[&[usize]]) -> SimplicialComplex {
    let facets = facets.iter().map(|f| f.iter().copied().collect()).collect();
    SimplicialComplex::from_facets(m, facets).expect("catalog complexes are valid")
}

fn graph(m: usize, edges: &[(usize, usize)]) -> SimplicialComplex {
    let mut facets: Vec<VertexSet> = edges
        .iter()
        .map(|&(a, b)| [a, b].into_iter().collect())
        .collect();
    let covered = facets.iter().fold(VertexSet::empty(), |a, f| a.union(f));
    facets.extend(
        (0..m)
            .filter(|v| !covered.contains(*v))
            .map(VertexSet::singleton),
    );
    SimplicialComplex::from_facets(m, facets).expect("valid graph")
}

/// The n-cycle as a 1-dimensional complex, n >= 3.
pub fn cycle(n: usize) -> SimplicialComplex {
    assert!(n >= 3, "a cycle needs at least 3 vertices");
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    graph(n, &edges)
}

pub fn complete_graph(n: usize) -> SimplicialComplex {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    graph(n, &edges)
}

pub fn petersen_graph() -> SimplicialComplex {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    graph(10, &edges)
}

/// Simple graph from an edge list; isolated vertices become 0-dimensional facets.
pub fn graph_complex(m: usize, edges: &[(usize, usize)]) -> SimplicialComplex {
    graph(m, edges)
}

/// The 6-vertex triangulation of the real projective plane.
pub fn projective_plane() -> SimplicialComplex {
    from_lists(
        6,
        &[
            &[0, 1, 2],
            &[0, 2, 3],
            &[0, 3, 4],
            &[0, 4, 5],
            &[0, 5, 1],
            &[1, 2, 4],
            &[2, 3, 5],
            &[3, 4, 1],
            &[4, 5, 2],
            &[5, 1, 3],
        ],
    )
}

/// U_{r,m}: every r-subset of m vertices is a facet.
pub fn uniform_matroid(r: usize, m: usize) -> SimplicialComplex {
    assert!(r <= m);
    if r == 0 {
        return SimplicialComplex::from_facets(m, vec![]).expect("valid");
    }
    super::skeleton_of_simplex(m - 1, r - 1).expect("r <= m")
}

/// Two disjoint edges {0,1}, {2,3}.
pub fn disjoint_edges() -> SimplicialComplex {
    from_lists(4, &[&[0, 1], &[2, 3]])
}

/// The boundary of the simplex on `n` vertices, a sphere of dimension n - 2.
pub fn simplex_boundary(n: usize) -> SimplicialComplex {
    assert!(n >= 2);
    let full: VertexSet = (0..n).collect();
    SimplicialComplex::from_facets(n, (0..n).map(|v| full.without(v)).collect()).expect("valid")
}

/// Edge bitmask over the pairs (a, b), a < b, in lex order.
fn edge_index(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect()
}

fn is_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(a, b) in edges {
            let w = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// One representative of every isomorphism class of connected simple graphs
/// on exactly `n` vertices, n >= 2, as edge lists.
pub fn connected_graphs(n: usize) -> Vec<Vec<(usize, usize)>> {
    assert!(
        (2..=6).contains(&n),
        "graph enumeration supports 2..=6 vertices"
    );
    let pairs = edge_index(n);
    let pos = |a: usize, b: usize| {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        pairs.iter().position(|&e| e == (a, b)).expect("pair")
    };
    let perms = permutations(n);
    let remap: Vec<Vec<usize>> = perms
        .iter()
        .map(|pi| pairs.iter().map(|&(a, b)| pos(pi[a], pi[b])).collect())
        .collect();
    let mut seen = FxHashSet::default();
    let mut out = Vec::new();
    for mask in 0u64..(1 << pairs.len()) {
        let canon = remap
            .iter()
            .map(|r| {
                let mut img = 0u64;
                let mut b = mask;
                while b != 0 {
                    let t = b.trailing_zeros() as usize;
                    img |= 1 << r[t];
                    b &= b - 1;
                }
                img
            })
            .min()
            .expect("at least one permutation");
        if canon != mask || !seen.insert(canon) {
            continue;
        }
        let edges: Vec<(usize, usize)> = (0..pairs.len())
            .filter(|&t| mask >> t & 1 == 1)
            .map(|t| pairs[t])
            .collect();
        if is_connected(n, &edges) {
            out.push(edges);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_class_counts() {
        let counts: Vec<usize> = (2..=6).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 6, 21, 112]);
    }

    #[test]
    fn named_complexes() {
        assert_eq!(petersen_graph().facets().len(), 15);
        assert_eq!(projective_plane().f_vector().entries().len(), 4);
        assert_eq!(projective_plane().euler_characteristic(), 1.into());
        assert_eq!(simplex_boundary(3), cycle(3));
        assert_eq!(uniform_matroid(2, 4), complete_graph(4));
    }
}
