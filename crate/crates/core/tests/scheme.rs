use pgd_core::design::{adjacency_to_incidence, pgd_certify, SymmetricParams};
use pgd_core::graph::{complete_multipartite, srg_certify, SrgParams};
use pgd_core::hamming::{hamming_scheme, ksd_partition, ksd_scheme};
use pgd_core::scheme::{
    character_table, coefficients_in_basis, complete_scheme, fuse, intersection_data, is_self_dual,
    scheme_certify, self_dual_ordering, wreath, wreath_pgd, z_family_check, z_family_params,
    z_family_table, AssociationScheme, Axiom, EigenTable, SchemeError,
};
use pgd_core::{IntMatrix, RatMatrix, Rational};

fn constructed() -> Vec<(&'static str, AssociationScheme)> {
    vec![
        ("K4", complete_scheme(4).unwrap()),
        ("H(2,3)", hamming_scheme(2, 3).unwrap()),
        ("H(3,2)", hamming_scheme(3, 2).unwrap()),
        ("H(3,3)", hamming_scheme(3, 3).unwrap()),
        ("H(2,4)", hamming_scheme(2, 4).unwrap()),
        ("KSD(1)", ksd_scheme(1).unwrap()),
        (
            "K3 wr K2",
            wreath(&complete_scheme(3).unwrap(), &complete_scheme(2).unwrap()).unwrap(),
        ),
        (
            "K2 wr K3",
            wreath(&complete_scheme(2).unwrap(), &complete_scheme(3).unwrap()).unwrap(),
        ),
        (
            "H(2,2) wr K3",
            wreath(&hamming_scheme(2, 2).unwrap(), &complete_scheme(3).unwrap()).unwrap(),
        ),
    ]
}

/// `p_ij^h` by counting common neighbours of one pair in each class.
#[allow(clippy::needless_range_loop)]
fn counted_p(s: &AssociationScheme) -> Vec<Vec<Vec<i64>>> {
    let n = s.order();
    let c = s.classes();
    let mut p = vec![vec![vec![0; c]; c]; c];
    for h in 0..c {
        let (x, y) = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .find(|&(x, y)| s.class_of(x, y) == h)
            .unwrap();
        for z in 0..n {
            p[s.class_of(x, z)][s.class_of(z, y)][h] += 1;
        }
    }
    p
}

#[test]
fn intersection_numbers_match_pair_counts() {
    for (name, s) in constructed() {
        let data = intersection_data(&s);
        assert_eq!(data.p, counted_p(&s), "{name}");
    }
}

#[test]
fn valencies_sum_to_order_and_p_is_symmetric() {
    for (name, s) in constructed() {
        let data = intersection_data(&s);
        assert_eq!(
            data.valencies.iter().sum::<i64>(),
            s.order() as i64,
            "{name}"
        );
        for (i, a) in s.adjacency().iter().enumerate() {
            assert!(
                a.row_sums()
                    .unwrap()
                    .iter()
                    .all(|&r| r == data.valencies[i]),
                "{name}"
            );
        }
        let c = s.classes();
        for i in 0..c {
            for j in 0..c {
                assert_eq!(data.p[i][j], data.p[j][i], "{name} p_{i}{j}");
            }
        }
    }
}

#[test]
fn intersection_algebra_multiplication() {
    for (name, s) in constructed() {
        let data = intersection_data(&s);
        let c = s.classes();
        for i in 0..c {
            for j in 0..c {
                let lhs = data.b[i].multiply(&data.b[j]).unwrap();
                let terms: Vec<(i64, &IntMatrix)> =
                    (0..c).map(|h| (data.p[i][j][h], &data.b[h])).collect();
                assert_eq!(
                    lhs,
                    IntMatrix::linear_combination(&terms).unwrap(),
                    "{name} B{i}B{j}"
                );
            }
        }
    }
}

#[test]
fn bose_mesner_and_intersection_coefficients_agree() {
    for (name, s) in constructed() {
        let data = intersection_data(&s);
        let c = s.classes();
        // (B_h)_{0l} = δ_{hl}, so row 0 of Σ x_h B_h is x
        for i in 0..c {
            for j in 0..c {
                let a = s.adjacency()[i].multiply(&s.adjacency()[j]).unwrap();
                let from_a = coefficients_in_basis(&s, &a).unwrap();
                let bb = data.b[i].multiply(&data.b[j]).unwrap();
                let from_b = bb.row(0).to_vec();
                assert_eq!(from_a, from_b, "{name} A{i}A{j}");
            }
        }
    }
}

fn rat(x: i64) -> Rational {
    Rational::from_integer(i128::from(x))
}

fn check_table(name: &str, s: &AssociationScheme, t: &EigenTable) {
    let n = s.order() as i64;
    let c = s.classes();
    let p = t.p.map(|&x| rat(x));
    assert_eq!(
        p.multiply(&t.q).unwrap(),
        RatMatrix::identity(c).scale(&rat(n)).unwrap(),
        "{name}: PQ = nI"
    );
    assert_eq!(t.p.row(0), s.valencies(), "{name}: row 0");
    assert!((0..c).all(|i| *t.p.get(i, 0) == 1), "{name}: column 0");
    assert_eq!(
        t.multiplicities.iter().sum::<i64>(),
        n,
        "{name}: multiplicities"
    );
    assert!(t.multiplicities.iter().all(|&m| m > 0));
    let rest: Vec<&[i64]> = t.p.row_iter().skip(1).collect();
    assert!(rest.windows(2).all(|w| w[0] > w[1]), "{name}: row order");
}

#[test]
fn character_tables_satisfy_orthogonality() {
    for (name, s) in constructed() {
        let t = character_table(&s).unwrap();
        check_table(name, &s, &t);
    }
}

#[test]
fn rows_of_p_are_common_eigenvectors() {
    for (name, s) in constructed() {
        let data = intersection_data(&s);
        let t = character_table(&s).unwrap();
        for i in 0..s.classes() {
            let u = IntMatrix::from_fn(s.classes(), 1, |r, _| *t.p.get(i, r));
            for (j, b) in data.b.iter().enumerate() {
                assert_eq!(
                    b.multiply(&u).unwrap(),
                    u.scale(t.p.get(i, j)).unwrap(),
                    "{name} row {i} class {j}"
                );
            }
        }
    }
}

#[test]
fn complete_graph_table() {
    for n in 2..6 {
        let t = character_table(&complete_scheme(n).unwrap()).unwrap();
        let n = n as i64;
        assert_eq!(t.p, IntMatrix::from_rows(&[[1, n - 1], [1, -1]]).unwrap());
        assert!(is_self_dual(&t));
    }
}

#[test]
fn h33_intersection_matrix_and_eigenmatrix() {
    let q = 3;
    let s = hamming_scheme(3, q as u32).unwrap();
    let b1 = IntMatrix::from_rows(&[
        [0, 1, 0, 0],
        [3 * (q - 1), q - 2, 2, 0],
        [0, 2 * (q - 1), 2 * (q - 2), 3],
        [0, 0, q - 1, 3 * (q - 2)],
    ])
    .unwrap();
    assert_eq!(intersection_data(&s).b[1], b1);
    let t = character_table(&s).unwrap();
    let p = IntMatrix::from_rows(&[
        [
            1,
            3 * (q - 1),
            3 * (q - 1) * (q - 1),
            (q - 1) * (q - 1) * (q - 1),
        ],
        [1, 2 * q - 3, (q - 1) * (q - 3), -(q - 1) * (q - 1)],
        [1, q - 3, -2 * q + 3, q - 1],
        [1, -3, 3, -1],
    ])
    .unwrap();
    assert_eq!(t.p, p);
    assert!(is_self_dual(&t));
}

#[test]
fn pentagon_has_irrational_eigenvalues() {
    let c5 = pgd_core::graph::cycle_graph(5);
    let co = IntMatrix::ones(5, 5)
        .checked_sub(&IntMatrix::identity(5))
        .unwrap()
        .checked_sub(&c5)
        .unwrap();
    let s = scheme_certify(vec![IntMatrix::identity(5), c5, co]).unwrap();
    assert!(matches!(
        character_table(&s),
        Err(SchemeError::NonIntegerEigenvalues { .. })
    ));
}

#[test]
fn self_dual_ordering_reorders_idempotents() {
    let s = hamming_scheme(2, 3).unwrap();
    let t = character_table(&s).unwrap();
    let sigma = self_dual_ordering(&t).unwrap();
    let c = s.classes();
    for i in 0..c {
        for j in 0..c {
            assert_eq!(rat(*t.p.get(sigma[i], j)), *t.q.get(i, sigma[j]));
        }
    }
}

#[test]
fn non_self_dual_table() {
    // K2 wr K3 has valencies (1,1,4) but multiplicities (1,2,3)
    let s = wreath(&complete_scheme(2).unwrap(), &complete_scheme(3).unwrap()).unwrap();
    let t = character_table(&s).unwrap();
    let mut m = t.multiplicities.clone();
    m.sort();
    assert_eq!(m, vec![1, 2, 3]);
    assert!(!is_self_dual(&t));
}

#[test]
fn z_family_table_is_self_dual() {
    let z = z_family_table(3);
    let n = 27;
    let q = RatMatrix::from_fn(4, 4, |i, j| rat(*z.get(i, j)));
    // P^2 = 3m^2 I
    assert_eq!(
        z.multiply(&z).unwrap(),
        IntMatrix::identity(4).scale(&n).unwrap()
    );
    let t = EigenTable {
        p: z,
        q,
        multiplicities: vec![1, 6, 12, 8],
    };
    assert!(is_self_dual(&t));
}

#[test]
fn fusion_of_h53_is_ksd2() {
    let h = hamming_scheme(5, 3).unwrap();
    let parts = ksd_partition(5);
    assert_eq!(parts, vec![vec![0], vec![1, 4], vec![2, 5], vec![3]]);
    assert_eq!(fuse(&h, &parts).unwrap(), ksd_scheme(2).unwrap());
}

#[test]
fn fusion_of_h43_is_decided_by_the_certifier() {
    let h = hamming_scheme(4, 3).unwrap();
    let s = fuse(&h, &[vec![0], vec![1, 4], vec![2], vec![3]]).unwrap();
    assert_eq!(s.valencies(), &[1, 24, 24, 32]);
    assert_eq!(intersection_data(&s).p, counted_p(&s));
    // merging distances 1 and 2 instead does not close
    let err = fuse(&h, &[vec![0], vec![1, 2], vec![3], vec![4]]).unwrap_err();
    let SchemeError::NotAScheme(v) = err else {
        panic!("{err}")
    };
    assert_eq!(v.axiom, Axiom::Closure);
}

#[test]
fn fusion_puts_identity_first() {
    let h = hamming_scheme(2, 3).unwrap();
    let f = fuse(&h, &[vec![2], vec![0], vec![1]]).unwrap();
    assert_eq!(f.valencies(), &[1, 4, 4]);
    assert_eq!(f.adjacency()[1], h.adjacency()[2]);
}

#[test]
fn wreath_k3_k2_last_class_is_k33() {
    let s = wreath(&complete_scheme(3).unwrap(), &complete_scheme(2).unwrap()).unwrap();
    assert_eq!(s.classes(), 3);
    assert_eq!(s.order(), 6);
    let k33 = IntMatrix::from_fn(6, 6, |x, y| i64::from((x < 3) != (y < 3)));
    assert_eq!(s.adjacency()[2], k33);
}

#[test]
fn wreath_k2_k2_is_square_plus_matching() {
    let s = wreath(&complete_scheme(2).unwrap(), &complete_scheme(2).unwrap()).unwrap();
    let matching = IntMatrix::from_rows(&[[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]);
    let square = IntMatrix::from_rows(&[[0, 0, 1, 1], [0, 0, 1, 1], [1, 1, 0, 0], [1, 1, 0, 0]]);
    assert_eq!(s.adjacency()[1], matching.unwrap());
    assert_eq!(s.adjacency()[2], square.unwrap());
}

#[test]
fn wreath_identities_with_complete_outer_factor() {
    let inners = [
        complete_scheme(1).unwrap(),
        complete_scheme(2).unwrap(),
        complete_scheme(3).unwrap(),
        hamming_scheme(2, 2).unwrap(),
    ];
    for inner in &inners {
        for n in 2..=4usize {
            let s = wreath(inner, &complete_scheme(n).unwrap()).unwrap();
            let m = inner.order() as i64;
            let n = n as i64;
            let a = s.adjacency();
            let d = a.len() - 1;
            let ad = &a[d];
            let j = IntMatrix::ones(ad.rows(), ad.cols());
            let j_minus = j.checked_sub(ad).unwrap();
            for (i, ai) in a.iter().enumerate().take(d) {
                assert_eq!(
                    ai.multiply(ad).unwrap(),
                    ad.scale(&s.valencies()[i]).unwrap()
                );
            }
            let sq = IntMatrix::linear_combination(&[(m * (n - 1), &j_minus), (m * (n - 2), ad)]);
            assert_eq!(ad.power(2).unwrap(), sq.unwrap());
            let p = wreath_pgd(m, n);
            let cube = IntMatrix::linear_combination(&[(p.alpha, &j_minus), (p.beta, ad)]);
            assert_eq!(ad.power(3).unwrap(), cube.unwrap());
            let cert = pgd_certify(&adjacency_to_incidence(ad, false).unwrap()).unwrap();
            assert_eq!(cert.symmetric(), Some(p));
        }
    }
}

#[test]
fn wreath_pgd_instances() {
    assert_eq!(wreath_pgd(3, 2), SymmetricParams::new(6, 3, 0, 9));
    for n in 2..8 {
        assert_eq!(
            wreath_pgd(1, n),
            SymmetricParams::new(n, n - 1, n * n - 3 * n + 2, n * n - 3 * n + 3)
        );
    }
    // K2 wr K3: the last class is K_{2,2,2}
    let s = wreath(&complete_scheme(2).unwrap(), &complete_scheme(3).unwrap()).unwrap();
    let ad = &s.adjacency()[2];
    assert_eq!(*ad, complete_multipartite(3, 2).unwrap());
    assert_eq!(srg_certify(ad).unwrap(), Some(SrgParams::new(6, 4, 2, 4)));
    let cert = pgd_certify(&adjacency_to_incidence(ad, false).unwrap()).unwrap();
    assert_eq!(cert.symmetric(), Some(SymmetricParams::new(6, 4, 8, 12)));
    assert_eq!(wreath_pgd(2, 3), SymmetricParams::new(6, 4, 8, 12));
}

fn check_z_identities(s: &AssociationScheme, order: [usize; 4], m: i64) {
    let a = s.adjacency();
    let n = s.order();
    let i = IntMatrix::identity(n);
    let j = IntMatrix::ones(n, n);
    let a1 = &a[order[1]];
    let a2 = &a[order[2]];
    let a3i = a[order[3]].checked_add(&i).unwrap();
    let m2 = m * m;
    // A_1^3 = m^2 A_1 + (1/3) m^2 (m-1)(m-2) J, and the analogues
    let c1 = IntMatrix::linear_combination(&[(m2, a1), (m2 * (m - 1) * (m - 2) / 3, &j)]);
    assert_eq!(a1.power(3).unwrap(), c1.unwrap());
    let c2 = IntMatrix::linear_combination(&[(m2, a2), (m2 * (m + 1) * (m + 2) / 3, &j)]);
    assert_eq!(a2.power(3).unwrap(), c2.unwrap());
    let c3 = IntMatrix::linear_combination(&[(m2, &a3i), (m2 * (m2 - 1) / 3, &j)]);
    assert_eq!(a3i.power(3).unwrap(), c3.unwrap());
}

#[test]
fn z_family_h33() {
    let s = hamming_scheme(3, 3).unwrap();
    let out = z_family_check(&s, 3).unwrap();
    assert!(out.matches);
    let order = out.class_order.unwrap();
    let got: Vec<_> = out
        .certificates
        .iter()
        .map(|c| c.symmetric().unwrap())
        .collect();
    assert_eq!(
        got,
        vec![
            SymmetricParams::new(27, 6, 6, 15),
            SymmetricParams::new(27, 12, 60, 69),
            SymmetricParams::new(27, 9, 24, 33),
        ]
    );
    assert_eq!(got, z_family_params(3).to_vec());
    check_z_identities(&s, order, 3);
}

#[test]
fn z_family_ksd2_needs_relabel() {
    let s = ksd_scheme(2).unwrap();
    let out = z_family_check(&s, 9).unwrap();
    assert!(out.matches);
    let order = out.class_order.unwrap();
    assert_eq!(order, [0, 2, 1, 3]);
    let got: Vec<_> = out
        .certificates
        .iter()
        .map(|c| c.symmetric().unwrap())
        .collect();
    assert_eq!(got, z_family_params(9).to_vec());
    check_z_identities(&s, order, 9);
}

#[test]
fn z_family_rejects_wrong_shape() {
    let k27 = complete_scheme(27).unwrap();
    assert!(matches!(
        z_family_check(&k27, 3),
        Err(SchemeError::OrderMismatch { .. })
    ));
    let h = hamming_scheme(3, 3).unwrap();
    assert!(matches!(
        z_family_check(&h, 2),
        Err(SchemeError::OrderMismatch { .. })
    ));
    // right shape, wrong table
    let h34 = hamming_scheme(3, 4).unwrap();
    assert!(matches!(
        z_family_check(&h34, 3),
        Err(SchemeError::OrderMismatch { .. })
    ));
}

#[test]
fn z_family_rejects_three_class_scheme_with_other_table() {
    let s = wreath(&complete_scheme(3).unwrap(), &hamming_scheme(2, 3).unwrap()).unwrap();
    assert_eq!(s.order(), 27);
    assert_eq!(s.classes(), 4);
    let out = z_family_check(&s, 3).unwrap();
    assert!(!out.matches);
    assert!(out.certificates.is_empty());
}
