//! Invariant suites run by `unicomplex verify`.

use unicomplex::buchstaber::{self, SearchOptions, DEFAULT_BUDGET};
use unicomplex::complex::{
    connected_graphs, graph_complex, petersen_graph, projective_plane, uniform_matroid,
    Coefficients,
};
use unicomplex::lattice::{
    extend_to_basis_z, gaussian_binomial, is_unimodular_z, smith_normal_form, IntMatrix, IntVector,
};
use unicomplex::products::cup_length_report;
use unicomplex::tor::{
    betti_recursion, betti_via_hochster_euler, betti_via_morse, check_euler_consistency,
    torsion_check, verify_matching,
};
use unicomplex::universal::{
    build_k, build_x, check_structure_maps, f_vector_closed, link_f_vector_closed, wedge_count,
    Family, UniversalComplex,
};
use unicomplex::{Result, SimplicialComplex, VertexSet};

pub struct Check {
    pub module: &'static str,
    pub name: &'static str,
    pub run: fn() -> Result<bool>,
}

fn lattice_gaussian() -> Result<bool> {
    Ok(gaussian_binomial(4, 2, 2).to_string() == "35"
        && gaussian_binomial(4, 3, 2).to_string() == "15"
        && gaussian_binomial(3, 1, 3).to_string() == "13")
}

fn lattice_snf() -> Result<bool> {
    let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let f: Vec<String> = smith_normal_form(&m)
        .iter()
        .map(|x| x.to_string())
        .collect();
    Ok(f == ["2", "6", "12"])
}

fn lattice_unimodular() -> Result<bool> {
    let cols = [IntVector::new(&[2, 3]), IntVector::new(&[1, 1])];
    let basis = extend_to_basis_z(&[IntVector::new(&[1, 2, 3])])?;
    Ok(is_unimodular_z(&cols)?
        && !is_unimodular_z(&[IntVector::new(&[2, 4])])?
        && basis.determinant()?.magnitude().to_string() == "1")
}

fn scomplex_rp2() -> Result<bool> {
    let k = projective_plane();
    let z = k.reduced_cohomology(Coefficients::Integers);
    let f2 = k.reduced_cohomology(Coefficients::Fp(2));
    let q = k.reduced_cohomology(Coefficients::Rationals);
    Ok(!z.is_torsion_free() && f2.rank(1) == 1 && f2.rank(2) == 1 && q.support().is_empty())
}

fn scomplex_matroids() -> Result<bool> {
    for (r, m) in [(2, 4), (3, 6), (4, 7)] {
        let u = uniform_matroid(r, m);
        if !u.is_matroid() || u.matroid_rank()? != r {
            return Ok(false);
        }
        let j: VertexSet = (0..m - 1).collect();
        if !u.full_subcomplex(&j)?.complex.is_matroid() {
            return Ok(false);
        }
    }
    Ok(!graph_complex(4, &[(0, 1), (2, 3)]).is_matroid())
}

fn universal_f_vectors() -> Result<bool> {
    for (p, n) in [(2, 2), (2, 3), (3, 2), (3, 3), (5, 2)] {
        for family in [Family::X, Family::K] {
            let u = UniversalComplex::build(family, p, n, &Default::default())?;
            let base = u.base()?;
            if base.f_vector() != f_vector_closed(family, p, n)? {
                return Ok(false);
            }
            // link of the first face of each size
            for sz in 1..n {
                let sigma = base.faces_by_size()[sz][0];
                let link = base.link(&sigma)?.complex;
                if link.f_vector() != link_f_vector_closed(family, p, n, sz - 1)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn universal_structure_maps() -> Result<bool> {
    for (p, n) in [(2, 3), (3, 2), (3, 3), (5, 2)] {
        if !check_structure_maps(p, n)?.all_pass() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn universal_wedges() -> Result<bool> {
    for (p, n) in [(2, 2), (2, 3), (3, 2), (5, 2)] {
        for family in [Family::X, Family::K] {
            let u = UniversalComplex::build(family, p, n, &Default::default())?;
            let h = u.base()?.reduced_cohomology(Coefficients::Rationals);
            let top = (n - 1) as i32;
            if h.rank(top).to_string() != wedge_count(family, p, n)?.to_string()
                || h.support().iter().any(|&d| d != top)
            {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn tor_x2_3() -> Result<bool> {
    let x = build_x(2, 3)?;
    let base = x.base()?;
    let a = betti_via_morse(base)?;
    let b = betti_recursion(Family::X, 2, 3)?;
    let c = betti_via_hochster_euler(base)?;
    Ok(a.same_values(&b)
        && b.same_values(&c)
        && crate::tables::diff(&b, &crate::tables::X2_3).is_empty()
        && check_euler_consistency(&a, &base.f_vector(), base.vertex_count()))
}

fn tor_recursion_vs_morse() -> Result<bool> {
    for (family, p, n) in [
        (Family::X, 2, 2),
        (Family::K, 3, 2),
        (Family::K, 2, 3),
        (Family::X, 3, 2),
    ] {
        let u = UniversalComplex::build(family, p, n, &Default::default())?;
        if !betti_via_morse(u.base()?)?.same_values(&betti_recursion(family, p, n)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn tor_matching() -> Result<bool> {
    for u in [build_x(2, 3)?, build_k(3, 2)?] {
        if !verify_matching(u.base()?)?.passes() {
            return Ok(false);
        }
    }
    Ok(verify_matching(&uniform_matroid(3, 6))?.passes())
}

fn tor_torsion() -> Result<bool> {
    let x = build_x(2, 3)?;
    let clean = torsion_check(x.base()?, 16)?.is_torsion_free();
    let rp2 = torsion_check(&projective_plane(), 16)?;
    let two = rp2
        .torsion
        .iter()
        .any(|t| t.factors.iter().any(|f| f == "2"));
    Ok(clean && two)
}

fn products_cup_length() -> Result<bool> {
    for (family, p, n, want) in [
        (Family::X, 3, 2, 2),
        (Family::X, 3, 3, 3),
        (Family::X, 5, 2, 2),
        (Family::K, 2, 3, 1),
        (Family::K, 3, 4, 2),
        (Family::X, 2, 4, 2),
    ] {
        let r = cup_length_report(&UniversalComplex::unmaterialized(family, p, n)?)?;
        if !r.coincide || r.lower.bound != want {
            return Ok(false);
        }
    }
    Ok(true)
}

fn buchstaber_graphs() -> Result<bool> {
    let opts = SearchOptions {
        budget: DEFAULT_BUDGET,
        use_lower_bounds: false,
    };
    let mut graphs: Vec<SimplicialComplex> = (2..=5)
        .flat_map(|n| {
            connected_graphs(n)
                .into_iter()
                .map(move |g| graph_complex(n, &g))
        })
        .collect();
    graphs.push(petersen_graph());
    for g in &graphs {
        for p in [2, 3] {
            let r = buchstaber::s_p(g, p, &opts)?;
            if r.s_p != Some(buchstaber::s_p_graph_formula(g, p)?) || !r.chain_holds() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn buchstaber_universal() -> Result<bool> {
    for (p, n) in [(2, 3), (3, 2), (3, 3), (5, 2)] {
        let k = build_k(p, n)?;
        let r = buchstaber::s_p(k.base()?, p, &SearchOptions::default())?;
        if r.s_p != Some(k.vertex_count() - n) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn buchstaber_skeletons() -> Result<bool> {
    for p in [2, 3] {
        let r = buchstaber::skeleton_checks(p, 4, DEFAULT_BUDGET)?;
        if !r.is_complete() || !r.chain_holds() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn buchstaber_omega() -> Result<bool> {
    let a = buchstaber::omega(2, 3, 2, DEFAULT_BUDGET)?;
    let b = buchstaber::omega(3, 2, 2, DEFAULT_BUDGET)?;
    let mut ok = a.exact == Some(2) && b.exact == Some(3);
    ok &= a.lower <= 2 && 2 <= a.upper && b.lower <= 3 && 3 <= b.upper;
    for n in 1..=3 {
        ok &= buchstaber::omega(3, 3, n, DEFAULT_BUDGET)?.exact == Some(n);
    }
    let mut prev = 0;
    for n in 1..=3 {
        let w = buchstaber::omega(2, 3, n, DEFAULT_BUDGET)?
            .exact
            .unwrap_or(usize::MAX);
        ok &= prev <= w;
        prev = w;
    }
    Ok(ok)
}

pub const SUITE: &[Check] = &[
    Check {
        module: "ff-lattice",
        name: "gaussian binomials",
        run: lattice_gaussian,
    },
    Check {
        module: "ff-lattice",
        name: "smith normal form",
        run: lattice_snf,
    },
    Check {
        module: "ff-lattice",
        name: "unimodularity over Z",
        run: lattice_unimodular,
    },
    Check {
        module: "scomplex",
        name: "projective plane cohomology",
        run: scomplex_rp2,
    },
    Check {
        module: "scomplex",
        name: "matroid recognition",
        run: scomplex_matroids,
    },
    Check {
        module: "universal",
        name: "f-vectors and links",
        run: universal_f_vectors,
    },
    Check {
        module: "universal",
        name: "structure maps",
        run: universal_structure_maps,
    },
    Check {
        module: "universal",
        name: "wedge counts",
        run: universal_wedges,
    },
    Check {
        module: "tor",
        name: "X(F_2^3) by three methods",
        run: tor_x2_3,
    },
    Check {
        module: "tor",
        name: "recursion against morse",
        run: tor_recursion_vs_morse,
    },
    Check {
        module: "tor",
        name: "morse matching conditions",
        run: tor_matching,
    },
    Check {
        module: "tor",
        name: "torsion check",
        run: tor_torsion,
    },
    Check {
        module: "products",
        name: "cup-length bounds",
        run: products_cup_length,
    },
    Check {
        module: "buchstaber",
        name: "graph formula",
        run: buchstaber_graphs,
    },
    Check {
        module: "buchstaber",
        name: "universal K",
        run: buchstaber_universal,
    },
    Check {
        module: "buchstaber",
        name: "skeleton chain",
        run: buchstaber_skeletons,
    },
    Check {
        module: "buchstaber",
        name: "omega",
        run: buchstaber_omega,
    },
];
