use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;
use unicomplex::complex::Coefficients;
use unicomplex::lattice::FpVector;
use unicomplex::universal::{
    build_x, count_minimal_nonsimplices_closed, wedge_count, Family, UniversalComplex,
};
use unicomplex::{SimplicialComplex, VertexSet};

fn random_complex() -> impl Strategy<Value = SimplicialComplex> {
    (1usize..=7).prop_flat_map(|m| {
        prop::collection::vec(1u64..1 << m, 0..6).prop_map(move |masks| {
            SimplicialComplex::from_facets(m, masks.into_iter().map(VertexSet::from_mask).collect())
                .unwrap()
        })
    })
}

// every subset of every facet, counted by hand
fn all_faces(k: &SimplicialComplex) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    for f in k.facets() {
        let mask = f.as_mask().unwrap();
        let mut s = mask;
        loop {
            out.insert(s);
            if s == 0 {
                break;
            }
            s = (s - 1) & mask;
        }
    }
    out
}

fn reduced_euler_by_hand(faces: &BTreeSet<u64>) -> i64 {
    faces
        .iter()
        .map(|s| if s.count_ones() % 2 == 1 { 1 } else { -1 })
        .sum()
}

proptest! {
    #[test]
    fn f_vector_and_euler_poincare(k in random_complex()) {
        let faces = all_faces(&k);
        let mut f = vec![0u64; (k.dim() + 2) as usize];
        for s in &faces {
            f[s.count_ones() as usize] += 1;
        }
        let want: Vec<BigUint> = f.iter().map(|&x| BigUint::from(x)).collect();
        prop_assert_eq!(k.f_vector().entries().to_vec(), want);
        let chi = reduced_euler_by_hand(&faces);
        prop_assert_eq!(k.reduced_euler(), BigInt::from(chi));
        for c in [Coefficients::Rationals, Coefficients::Fp(2), Coefficients::Fp(3)] {
            prop_assert_eq!(k.reduced_cohomology(c).alternating_sum(), chi);
        }
    }

    #[test]
    fn minimal_nonsimplices_are_minimal(k in random_complex(), j in 0usize..4) {
        let faces = all_faces(&k);
        let found = k.minimal_nonsimplices(j);
        for s in &found {
            prop_assert_eq!(s.len(), j + 1);
            prop_assert!(!k.is_simplex(s).unwrap());
            for v in s.iter() {
                prop_assert!(k.is_simplex(&s.without(v)).unwrap());
            }
        }
        // nothing missed
        let m = k.vertex_count();
        let brute = (0u64..1 << m)
            .filter(|&s| s.count_ones() as usize == j + 1 && !faces.contains(&s))
            .filter(|&s| (0..m).filter(|&v| s >> v & 1 == 1).all(|v| faces.contains(&(s & !(1 << v)))))
            .count();
        prop_assert_eq!(found.len(), brute);
    }

    #[test]
    fn full_subcomplex_and_json(k in random_complex(), jmask in any::<u64>()) {
        let m = k.vertex_count();
        let j = VertexSet::from_mask(jmask & ((1 << m) - 1));
        let sub = k.full_subcomplex(&j).unwrap();
        let inside: BTreeSet<u64> = all_faces(&k).into_iter().filter(|&s| s & !jmask == 0).collect();
        let mapped: BTreeSet<u64> = sub
            .complex
            .faces()
            .map(|s| sub.to_original(s).as_mask().unwrap())
            .collect();
        prop_assert_eq!(mapped, inside);
        let back = SimplicialComplex::from_json(&k.to_json()).unwrap();
        prop_assert_eq!(back.facets(), k.facets());
    }

    #[test]
    fn vertex_set_matches_btreeset(a in prop::collection::btree_set(0usize..256, 0..20), b in prop::collection::btree_set(0usize..256, 0..20)) {
        let (x, y): (VertexSet, VertexSet) = (a.iter().copied().collect(), b.iter().copied().collect());
        prop_assert_eq!(x.to_vec(), a.iter().copied().collect::<Vec<_>>());
        prop_assert_eq!(x.union(&y).to_vec(), a.union(&b).copied().collect::<Vec<_>>());
        prop_assert_eq!(x.intersection(&y).to_vec(), a.intersection(&b).copied().collect::<Vec<_>>());
        prop_assert_eq!(x.difference(&y).to_vec(), a.difference(&b).copied().collect::<Vec<_>>());
        prop_assert_eq!(x.is_subset(&y), a.is_subset(&b));
        prop_assert_eq!(x.is_disjoint(&y), a.is_disjoint(&b));
        prop_assert_eq!(x.len(), a.len());
        prop_assert_eq!(x.first(), a.first().copied());
        prop_assert_eq!(x.last(), a.last().copied());
    }

    #[test]
    fn full_subcomplexes_of_x_are_matroids(pn in prop::sample::select(vec![(2u32, 2usize), (2, 3), (3, 2), (3, 3)]), jmask in any::<u64>()) {
        let (p, n) = pn;
        let x = build_x(p, n).unwrap();
        let base = x.base().unwrap();
        let m = base.vertex_count();
        let j = VertexSet::from_mask(jmask & ((1u64 << m) - 1));
        prop_assert!(base.full_subcomplex(&j).unwrap().complex.is_matroid());
    }
}

#[test]
fn matroid_cohomology_is_concentrated() {
    let x = build_x(2, 3).unwrap();
    let base = x.base().unwrap();
    for mask in 0u64..1 << base.vertex_count() {
        let sub = base
            .full_subcomplex(&VertexSet::from_mask(mask))
            .unwrap()
            .complex;
        assert!(sub.is_matroid());
        let r = sub.matroid_rank().unwrap() as i32;
        let h = sub.reduced_cohomology(Coefficients::Rationals);
        assert!(h.support().iter().all(|&d| d == r - 1), "mask {mask:b}");
        let sign = if (r - 1).rem_euclid(2) == 0 { 1 } else { -1 };
        assert_eq!(BigInt::from(h.rank(r - 1)), sub.reduced_euler() * sign);
    }
}

#[test]
fn universal_complexes_are_matroids_with_wedge_cohomology() {
    for (p, n) in [(2u32, 2usize), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)] {
        for family in [Family::X, Family::K] {
            let u = UniversalComplex::build(family, p, n, &Default::default()).unwrap();
            let base = u.base().unwrap();
            assert!(base.is_matroid());
            assert_eq!(base.matroid_rank().unwrap(), n);
            let w = wedge_count(family, p, n).unwrap();
            let sign = if (n - 1) % 2 == 0 { 1 } else { -1 };
            assert_eq!(BigInt::from(w.clone()), base.reduced_euler() * sign);
            let h = base.reduced_cohomology(Coefficients::Rationals);
            assert_eq!(BigUint::from(h.rank(n as i32 - 1)), w);
            assert!(h.support().iter().all(|&d| d == n as i32 - 1));
        }
    }
}

// v = Σ a_t w_t with every a_t nonzero, by trying all coefficient tuples
fn full_support_combination(v: &FpVector, ws: &[FpVector]) -> bool {
    let p = v.prime();
    let total = (p as usize - 1).pow(ws.len() as u32);
    (0..total).any(|mut code| {
        let mut acc = FpVector::zero(p, v.dim());
        for w in ws {
            acc = acc.add(&w.scale(1 + (code % (p as usize - 1)) as u32));
            code /= p as usize - 1;
        }
        &acc == v
    })
}

#[test]
fn minimal_nonsimplices_of_x() {
    for (p, n) in [(2u32, 2usize), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)] {
        let x = build_x(p, n).unwrap();
        let base = x.base().unwrap();
        let labels = x.labels();
        for j in 1..=n {
            let found = base.minimal_nonsimplices(j);
            assert_eq!(
                BigUint::from(found.len()),
                count_minimal_nonsimplices_closed(p, n, j).unwrap(),
                "p={p} n={n} j={j}"
            );
            for s in &found {
                let vs = s.to_vec();
                let (last, rest) = vs.split_last().unwrap();
                assert!(base.is_simplex(&rest.iter().copied().collect()).unwrap());
                let ws: Vec<FpVector> = rest.iter().map(|&v| labels[v].clone()).collect();
                assert!(full_support_combination(&labels[*last], &ws));
            }
        }
    }
}
