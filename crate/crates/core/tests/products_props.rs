use proptest::prelude::*;
use unicomplex::lattice::FpVector;
use unicomplex::products::{cup_length_report, join_condition};
use unicomplex::universal::{Family, UniversalComplex};

#[test]
fn bounds_coincide_on_universal_complexes() {
    let mut cases: Vec<(Family, u32, usize, usize)> = Vec::new();
    for p in [3u32, 5] {
        for n in 1..=3 {
            cases.push((Family::X, p, n, n));
        }
    }
    for p in [2u32, 3] {
        for n in 1..=5 {
            cases.push((Family::K, p, n, n / 2));
        }
    }
    for (family, p, n, want) in cases {
        let u = UniversalComplex::unmaterialized(family, p, n).unwrap();
        let r = cup_length_report(&u).unwrap();
        assert!(r.lower.bound <= r.upper.bound);
        assert_eq!(
            (r.lower.bound, r.upper.bound),
            (want, want),
            "{family:?} p={p} n={n}"
        );
        assert!(
            r.lower.witness.validate(&u).unwrap(),
            "{family:?} p={p} n={n}"
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // the spans of unit-vector parts are independent exactly when the parts
    // use disjoint coordinates
    #[test]
    fn join_condition_on_coordinate_parts(assign in prop::collection::vec(0usize..3, 1..=4)) {
        let n = 4;
        let mut parts: Vec<Vec<FpVector>> = vec![Vec::new(); 3];
        for (i, &t) in assign.iter().enumerate() {
            parts[t].push(FpVector::unit(3, n, i));
        }
        parts.retain(|p| !p.is_empty());
        prop_assert!(join_condition(&parts).unwrap());
        if parts.len() >= 2 {
            let mixed = parts[0][0].add(&parts[1][0]);
            parts[0].push(mixed);
            prop_assert!(!join_condition(&parts).unwrap());
        }
    }
}
