use pgd_core::design::{adjacency_to_incidence, pgd_certify, IncidenceStructure, SymmetricParams};
use pgd_core::dsrg::{
    antiflag_graph, antiflag_graph_with_cap, dsrg_certify, flag_graph, predicted_dsrg_params,
    table1_catalog, Digraph, DsrgError, DsrgParams, Source,
};
use pgd_core::graph::{complete_graph, cycle_graph, petersen_graph};
use pgd_core::hamming::hamming_scheme;
use pgd_core::scheme::{complete_scheme, wreath, z_family_params};
use pgd_core::IntMatrix;
use proptest::prelude::*;

fn fano() -> IncidenceStructure {
    let n = IntMatrix::from_fn(7, 7, |p, b| {
        i64::from([1, 2, 4].iter().any(|d| (b + d) % 7 == p))
    });
    IncidenceStructure::new(n).unwrap()
}

fn h24_design() -> IncidenceStructure {
    let s = hamming_scheme(2, 4).unwrap();
    adjacency_to_incidence(&s.adjacency()[1], false).unwrap()
}

/// Symmetric designs from the constructed corpus, each with its certificate.
fn pgd_corpus() -> Vec<(String, IncidenceStructure, SymmetricParams)> {
    let mut out = Vec::new();
    let mut push = |name: String, d: IncidenceStructure| {
        let p = pgd_certify(&d).unwrap().symmetric().unwrap();
        out.push((name, d, p));
    };
    push("fano".into(), fano());
    push("H(2,4) A1".into(), h24_design());
    let h33 = hamming_scheme(3, 3).unwrap();
    let a = h33.adjacency();
    push(
        "H(3,3) A1".into(),
        adjacency_to_incidence(&a[1], false).unwrap(),
    );
    push(
        "H(3,3) A2".into(),
        adjacency_to_incidence(&a[2], false).unwrap(),
    );
    push(
        "H(3,3) A3+I".into(),
        adjacency_to_incidence(&a[3], true).unwrap(),
    );
    push(
        "C4".into(),
        adjacency_to_incidence(&cycle_graph(4), false).unwrap(),
    );
    let w = wreath(&complete_scheme(3).unwrap(), &complete_scheme(2).unwrap()).unwrap();
    push(
        "K3 wr K2".into(),
        adjacency_to_incidence(&w.adjacency()[2], false).unwrap(),
    );
    out
}

/// Brute-force count of directed paths `x → z → y`.
fn path_counts(g: &Digraph) -> Vec<Vec<i64>> {
    let n = g.order();
    let mut out = vec![vec![0; n]; n];
    for (x, row) in out.iter_mut().enumerate() {
        for z in (0..n).filter(|&z| g.has_arc(x, z)) {
            for (y, cell) in row.iter_mut().enumerate() {
                if g.has_arc(z, y) {
                    *cell += 1;
                }
            }
        }
    }
    out
}

/// DSRG parameters from the definition, by direct counting.
#[allow(clippy::needless_range_loop)]
fn oracle(g: &Digraph) -> Option<DsrgParams> {
    let n = g.order();
    if n == 0 {
        return None;
    }
    let out: Vec<i64> = (0..n)
        .map(|x| (0..n).filter(|&y| g.has_arc(x, y)).count() as i64)
        .collect();
    let inn: Vec<i64> = (0..n)
        .map(|y| (0..n).filter(|&x| g.has_arc(x, y)).count() as i64)
        .collect();
    let k = out[0];
    if out.iter().chain(&inn).any(|&d| d != k) {
        return None;
    }
    let paths = path_counts(g);
    let mut seen: [Option<i64>; 3] = [None; 3];
    for x in 0..n {
        for y in 0..n {
            let slot = if x == y {
                0
            } else if g.has_arc(x, y) {
                1
            } else {
                2
            };
            match seen[slot] {
                None => seen[slot] = Some(paths[x][y]),
                Some(c) if c != paths[x][y] => return None,
                _ => {}
            }
        }
    }
    let [t, l, m] = seen.map(|c| c.unwrap_or(0));
    Some(DsrgParams::new(n as i64, k, t, l, m))
}

#[test]
fn vertex_counts() {
    assert_eq!(flag_graph(&fano()).unwrap().order(), 21);
    assert_eq!(antiflag_graph(&fano()).unwrap().order(), 28);
    assert_eq!(flag_graph(&h24_design()).unwrap().order(), 96);
    assert_eq!(antiflag_graph(&h24_design()).unwrap().order(), 160);
}

#[test]
fn vertices_are_lexicographic_point_block_pairs() {
    let g = flag_graph(&fano()).unwrap();
    let labels = g.labels().unwrap();
    assert!(labels.windows(2).all(|w| w[0] < w[1]));
    assert!(labels.iter().all(|&(p, b)| fano().is_flag(p, b)));
    assert_eq!(g.source(), Some(Source::Flag));
}

#[test]
fn identity_incidence_gives_isolated_flags() {
    let d = IncidenceStructure::new(IntMatrix::identity(5)).unwrap();
    let g = flag_graph(&d).unwrap();
    assert_eq!(g.order(), 5);
    assert_eq!(g.adjacency(), &IntMatrix::zeros(5, 5));
}

#[test]
fn all_ones_incidence_has_no_antiflags() {
    let d = IncidenceStructure::new(IntMatrix::ones(3, 4)).unwrap();
    assert_eq!(
        antiflag_graph(&d),
        Err(DsrgError::EmptyVertexSet(Source::Antiflag))
    );
}

#[test]
fn size_cap_is_enforced() {
    assert_eq!(
        antiflag_graph_with_cap(&h24_design(), 100),
        Err(DsrgError::SizeCap {
            size: 160,
            cap: 100
        })
    );
}

#[test]
fn h24_digraph_parameters() {
    let d = h24_design();
    assert_eq!(
        dsrg_certify(&flag_graph(&d).unwrap()).unwrap().params,
        DsrgParams::new(96, 35, 15, 14, 12)
    );
    assert_eq!(
        dsrg_certify(&antiflag_graph(&d).unwrap()).unwrap().params,
        DsrgParams::new(160, 60, 24, 20, 24)
    );
}

#[test]
fn predicted_examples() {
    assert_eq!(
        predicted_dsrg_params(SymmetricParams::new(27, 6, 6, 15)),
        [
            DsrgParams::new(567, 126, 30, 21, 30),
            DsrgParams::new(162, 35, 14, 13, 6)
        ]
    );
    assert_eq!(
        predicted_dsrg_params(SymmetricParams::new(16, 6, 12, 16)),
        [
            DsrgParams::new(160, 60, 24, 20, 24),
            DsrgParams::new(96, 35, 15, 14, 12)
        ]
    );
}

#[test]
fn every_pgd_in_the_corpus_gives_two_dsrgs() {
    for (name, d, p) in pgd_corpus() {
        let [anti, flag] = predicted_dsrg_params(p);
        let fg = flag_graph(&d).unwrap();
        let cert = dsrg_certify(&fg).unwrap();
        assert_eq!(
            (cert.params, cert.source),
            (flag, Some(Source::Flag)),
            "{name}"
        );
        let ag = antiflag_graph(&d).unwrap();
        let cert = dsrg_certify(&ag).unwrap();
        assert_eq!(
            (cert.params, cert.source),
            (anti, Some(Source::Antiflag)),
            "{name}"
        );
    }
}

#[test]
fn complete_graph_antiflags_form_a_complete_digraph() {
    // every pair of distinct antiflags is an arc, so mu' has no witness and is reported as 0
    let d = adjacency_to_incidence(&complete_graph(5), false).unwrap();
    let cert = dsrg_certify(&antiflag_graph(&d).unwrap()).unwrap();
    assert_eq!(cert.params, DsrgParams::new(5, 4, 4, 3, 0));
    let p = pgd_certify(&d).unwrap().symmetric().unwrap();
    let [anti, _] = predicted_dsrg_params(p);
    assert_eq!((anti.v, anti.k, anti.t, anti.lambda), (5, 4, 4, 3));
}

#[test]
fn path_counts_match_squares_on_small_designs() {
    for d in [
        fano(),
        IncidenceStructure::new(IntMatrix::identity(4)).unwrap(),
    ] {
        for g in [flag_graph(&d), antiflag_graph(&d)].into_iter().flatten() {
            assert!(g.order() <= 30);
            let sq = g.adjacency().multiply(g.adjacency()).unwrap();
            assert_eq!(sq.to_rows(), path_counts(&g));
            assert_eq!(dsrg_certify(&g).ok().map(|c| c.params), oracle(&g));
        }
    }
}

#[test]
fn petersen_neighbourhood_design_gives_no_dsrg() {
    let d = adjacency_to_incidence(&petersen_graph(), false).unwrap();
    assert!(pgd_certify(&d).is_err());
    for g in [flag_graph(&d).unwrap(), antiflag_graph(&d).unwrap()] {
        assert!(matches!(dsrg_certify(&g), Err(DsrgError::NotDsrg(_))));
        assert_eq!(oracle(&g), None);
    }
}

#[test]
fn catalog_rows_follow_from_the_family_designs() {
    for l in 1..=3u32 {
        let m = 3i64.pow(l);
        let rows: Vec<_> = table1_catalog(3).into_iter().filter(|r| r.l == l).collect();
        assert_eq!(rows.len(), 6);
        for (i, p) in z_family_params(m).into_iter().enumerate() {
            let [anti, flag] = predicted_dsrg_params(p);
            assert_eq!(rows[2 * i].params, anti, "l = {l}, design {}", i + 1);
            assert_eq!(rows[2 * i].source, Source::Antiflag);
            assert_eq!(rows[2 * i + 1].params, flag, "l = {l}, design {}", i + 1);
            assert_eq!(rows[2 * i + 1].source, Source::Flag);
        }
    }
}

#[test]
fn catalog_at_m3_is_certified_on_h33() {
    let h33 = hamming_scheme(3, 3).unwrap();
    let a = h33.adjacency();
    let designs = [
        adjacency_to_incidence(&a[1], false).unwrap(),
        adjacency_to_incidence(&a[2], false).unwrap(),
        adjacency_to_incidence(&a[3], true).unwrap(),
    ];
    let rows = table1_catalog(1);
    for (i, d) in designs.iter().enumerate() {
        assert_eq!(
            dsrg_certify(&antiflag_graph(d).unwrap()).unwrap().params,
            rows[2 * i].params
        );
        assert_eq!(
            dsrg_certify(&flag_graph(d).unwrap()).unwrap().params,
            rows[2 * i + 1].params
        );
    }
}

#[test]
fn third_relation_without_identity_gives_no_dsrg() {
    // v = 27, k = 8: the digraph sizes are 27 * 19 and 27 * 8
    let h33 = hamming_scheme(3, 3).unwrap();
    let d = adjacency_to_incidence(&h33.adjacency()[3], false).unwrap();
    assert!(pgd_certify(&d).is_err());
    let anti = antiflag_graph(&d).unwrap();
    let flag = flag_graph(&d).unwrap();
    assert_eq!((anti.order(), flag.order()), (513, 216));
    assert!(dsrg_certify(&anti).is_err());
    assert!(dsrg_certify(&flag).is_err());
}

#[test]
fn certificate_json_keys() {
    let cert = dsrg_certify(&flag_graph(&fano()).unwrap()).unwrap();
    let json = serde_json::to_value(cert).unwrap();
    assert_eq!(
        json,
        serde_json::json!({"v": 21, "k": 8, "t": 4, "lambda": 3, "mu": 3, "source": "flag"})
    );
}

fn small_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
        proptest::collection::vec(0i64..=1, r * c)
            .prop_map(move |data| IntMatrix::new(r, c, data).unwrap())
    })
}

proptest! {
    #[test]
    fn certify_agrees_with_counting(n in small_matrix()) {
        let Ok(d) = IncidenceStructure::new(n) else { return Ok(()); };
        for g in [flag_graph(&d), antiflag_graph(&d)].into_iter().flatten() {
            prop_assert_eq!(dsrg_certify(&g).ok().map(|c| c.params), oracle(&g));
        }
    }

    #[test]
    fn arbitrary_loopless_digraphs_agree_with_counting(bits in proptest::collection::vec(0i64..=1, 36)) {
        let a = IntMatrix::from_fn(6, 6, |i, j| if i == j { 0 } else { bits[6 * i + j] });
        let g = Digraph::new(a).unwrap();
        prop_assert_eq!(dsrg_certify(&g).ok().map(|c| c.params), oracle(&g));
    }
}
