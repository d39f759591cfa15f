use std::collections::BTreeMap;

use proptest::prelude::*;
use unicomplex::lattice::gaussian_binomial;
use unicomplex::tor::{
    betti_recursion, betti_via_cohomology, betti_via_hochster_euler, betti_via_morse,
    cells_for_support, check_euler_consistency, differential, morse_sets, KoszulCell,
};
use unicomplex::universal::{Family, UniversalComplex};
use unicomplex::{SimplicialComplex, VertexSet};

fn random_complex() -> impl Strategy<Value = SimplicialComplex> {
    (1usize..=7).prop_flat_map(|m| {
        prop::collection::vec(1u64..1 << m, 0..6).prop_map(move |masks| {
            SimplicialComplex::from_facets(m, masks.into_iter().map(VertexSet::from_mask).collect())
                .unwrap()
        })
    })
}

// full subcomplex of a universal complex on at most ten vertices
fn random_matroid() -> impl Strategy<Value = SimplicialComplex> {
    let sources = vec![
        (Family::X, 2u32, 3usize),
        (Family::X, 3, 2),
        (Family::X, 2, 4),
        (Family::K, 3, 3),
        (Family::X, 5, 2),
    ];
    prop::sample::select(sources).prop_flat_map(|(family, p, n)| {
        let u = UniversalComplex::build(family, p, n, &Default::default()).unwrap();
        let base = u.base().unwrap().clone();
        let m = base.vertex_count();
        prop::sample::subsequence((0..m).collect::<Vec<_>>(), 0..=10.min(m)).prop_map(move |j| {
            base.full_subcomplex(&j.into_iter().collect())
                .unwrap()
                .complex
        })
    })
}

fn rank_of(k: &SimplicialComplex, s: &VertexSet) -> usize {
    let sub = k.full_subcomplex(s).unwrap().complex;
    sub.facets()[0].len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn d_squared_is_zero(k in random_complex(), smask in any::<u64>()) {
        let m = k.vertex_count();
        let support = VertexSet::from_mask(smask & ((1 << m) - 1));
        for cell in cells_for_support(&k, &support) {
            let mut acc: BTreeMap<KoszulCell, i64> = BTreeMap::new();
            for (s, c) in differential(&k, &cell) {
                for (t, d) in differential(&k, &c) {
                    *acc.entry(d).or_default() += s * t;
                }
            }
            prop_assert!(acc.values().all(|&x| x == 0), "{:?}", cell);
        }
    }

    #[test]
    fn morse_sets_pair_up_and_criticals_concentrate(k in random_matroid()) {
        prop_assert!(k.is_matroid());
        let m = k.vertex_count();
        for smask in 0u64..1 << m {
            let support = VertexSet::from_mask(smask);
            let cells = cells_for_support(&k, &support);
            let (mut ups, mut downs, mut critical) = (0, 0, 0);
            let r = rank_of(&k, &support);
            for cell in &cells {
                let (mm, nn) = morse_sets(&k, cell);
                prop_assert!(mm.len() + nn.len() <= 1);
                if let Some(a) = mm.first() {
                    ups += 1;
                    let partner = KoszulCell::new(cell.a.without(a), cell.b.with(a));
                    prop_assert_eq!(morse_sets(&k, &partner).1, VertexSet::singleton(a));
                } else if let Some(b) = nn.first() {
                    downs += 1;
                    let partner = KoszulCell::new(cell.a.with(b), cell.b.without(b));
                    prop_assert_eq!(morse_sets(&k, &partner).0, VertexSet::singleton(b));
                } else {
                    critical += 1;
                    prop_assert_eq!(cell.a.len(), support.len() - r);
                }
            }
            prop_assert_eq!(ups, downs);
            prop_assert_eq!(ups + downs + critical, cells.len());
        }
    }

    #[test]
    fn three_methods_agree_on_matroids(k in random_matroid()) {
        let a = betti_via_morse(&k).unwrap();
        let b = betti_via_hochster_euler(&k).unwrap();
        let c = betti_via_cohomology(&k, 16).unwrap();
        prop_assert!(a.same_values(&b));
        prop_assert!(b.same_values(&c));
        prop_assert!(check_euler_consistency(&a, &k.f_vector(), k.vertex_count()));
    }

    #[test]
    fn euler_consistency_without_matroid(k in random_complex()) {
        let t = betti_via_cohomology(&k, 16).unwrap();
        prop_assert!(check_euler_consistency(&t, &k.f_vector(), k.vertex_count()));
    }
}

#[test]
fn recursion_lower_rows_are_scaled_smaller_tables() {
    for (family, p, n) in [
        (Family::X, 2u32, 4usize),
        (Family::X, 3, 3),
        (Family::K, 2, 4),
        (Family::K, 3, 3),
        (Family::X, 5, 3),
    ] {
        let big = betti_recursion(family, p, n).unwrap();
        for (&(i, j), v) in big.iter() {
            let k = j - i;
            if k >= n {
                continue;
            }
            let small = betti_recursion(family, p, k).unwrap();
            assert_eq!(
                v,
                &(gaussian_binomial(n, k, p as u64) * small.get(i, j)),
                "{family:?} p={p} n={n} ({i},{j})"
            );
        }
    }
}
