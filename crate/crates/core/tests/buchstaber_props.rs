use proptest::prelude::*;
use unicomplex::buchstaber::{
    chromatic_number, find_map, is_nondegenerate, min_target_rank, optimal_coloring, s_p,
    s_p_graph_formula, target_rank_bounds, SearchOptions,
};
use unicomplex::complex::graph_complex;
use unicomplex::lattice::rank_fp;
use unicomplex::{SimplicialComplex, VertexSet};

fn random_complex() -> impl Strategy<Value = SimplicialComplex> {
    (1usize..=6).prop_flat_map(|m| {
        prop::collection::vec(1u64..1 << m, 1..5).prop_map(move |masks| {
            SimplicialComplex::from_facets(m, masks.into_iter().map(VertexSet::from_mask).collect())
                .unwrap()
        })
    })
}

fn random_graph() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (2usize..=7).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .collect();
        (
            Just(n),
            prop::sample::subsequence(pairs.clone(), 0..=pairs.len()),
        )
    })
}

fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut comp: Vec<usize> = (0..n).collect();
    fn root(c: &mut [usize], x: usize) -> usize {
        if c[x] == x {
            x
        } else {
            let r = root(c, c[x]);
            c[x] = r;
            r
        }
    }
    for &(a, b) in edges {
        let (ra, rb) = (root(&mut comp, a), root(&mut comp, b));
        comp[ra] = rb;
    }
    (0..n).all(|v| root(&mut comp, v) == root(&mut comp, 0))
}

// is there a proper colouring with c colours, by exhaustion
fn colourable(n: usize, edges: &[(usize, usize)], c: usize) -> bool {
    (0..c.pow(n as u32)).any(|mut code| {
        let col: Vec<usize> = (0..n)
            .map(|_| {
                let x = code % c;
                code /= c;
                x
            })
            .collect();
        edges.iter().all(|&(a, b)| col[a] != col[b])
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn minimal_rank_is_attained_and_tight(k in random_complex(), p in prop::sample::select(vec![2u32, 3])) {
        let (lower, upper) = target_rank_bounds(&k, p);
        let pruned = min_target_rank(&k, p, &SearchOptions::default()).unwrap();
        let plain = min_target_rank(&k, p, &SearchOptions { use_lower_bounds: false, ..Default::default() }).unwrap();
        prop_assert_eq!(pruned.r, plain.r);
        prop_assert!(lower <= pruned.r && pruned.r <= upper);
        let map = pruned.assignment.clone();
        prop_assert!(is_nondegenerate(&k, p, pruned.r, &map));
        // independent check: every facet goes to independent vectors
        for f in k.facets() {
            let cols: Vec<_> = f.iter().map(|v| map[v].clone()).collect();
            if !cols.is_empty() {
                prop_assert_eq!(rank_fp(&cols).unwrap(), cols.len());
            }
        }
        if pruned.r > 0 {
            prop_assert!(find_map(&k, p, pruned.r - 1, u64::MAX).unwrap().0.is_none());
        }
        let rep = s_p(&k, p, &SearchOptions::default()).unwrap();
        prop_assert!(rep.chain_holds());
        prop_assert_eq!(rep.s_p, Some(k.vertex_count() - pruned.r));
    }

    #[test]
    fn chromatic_number_by_exhaustion((n, edges) in random_graph()) {
        let g = graph_complex(n, &edges);
        let chi = chromatic_number(&g);
        let col = optimal_coloring(&g);
        prop_assert!(edges.iter().all(|&(a, b)| col[a] != col[b]));
        prop_assert!(colourable(n, &edges, chi));
        prop_assert!(chi == 1 || !colourable(n, &edges, chi - 1));
    }

    #[test]
    fn graph_formula_matches_search((n, edges) in random_graph(), p in prop::sample::select(vec![2u32, 3, 5])) {
        prop_assume!(connected(n, &edges) && !edges.is_empty());
        let g = graph_complex(n, &edges);
        let rep = s_p(&g, p, &SearchOptions::default()).unwrap();
        prop_assert_eq!(rep.s_p, Some(s_p_graph_formula(&g, p).unwrap()));
    }
}
