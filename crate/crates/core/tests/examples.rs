mod common;

use extkoszul::hilbert::inverse_series;
use extkoszul::quadrics::{rank, PencilRoot};
use extkoszul::regular::{depth_probe_with, is_regular, lg_obstruction_search, path_witness, quotient_by_linear, LgSummary};
use extkoszul::resolution::{betti_over_e_mod, koszul_betti, koszul_betti_bounded_mod};
use extkoszul::*;

fn hs(c: &[i64]) -> HilbertSeries {
    HilbertSeries::new(c.to_vec())
}

#[test]
fn path_seven_series_two_ways() {
    let g = Graph::path(7);
    let by_gb = hilbert_series(&g.edge_ideal::<Q>(), &MonomialOrder::degrevlex(7)).unwrap();
    assert_eq!(by_gb, hs(&[1, 7, 15, 10, 1]));
    assert_eq!(g.independence_polynomial(), by_gb);
}

#[test]
fn path_seven_slice() {
    let r = QuotientAlgebra::new(&Graph::path(7).edge_ideal(), &MonomialOrder::degrevlex(7)).unwrap();
    let cert = is_regular(&LinearForm::sum_of_vars(7, &[1, 4, 7]), &r).unwrap();
    assert!(cert.is_regular());
    let q = quotient_by_linear(&r, &cert).unwrap();
    assert_eq!(q.algebra.ambient(), 6);
    assert_eq!(q.algebra.hilbert_series(), hs(&[1, 6, 9, 1]));
    let gens = Ideal::new(6, q.generators.clone()).unwrap();
    assert!(common::same_ideal(&gens, &common::six_variable_lg_ideal()));
    assert!(gens.generators().contains(&common::poly(6, &[(-1, &[6, 1]), (-1, &[6, 4])])));
}

#[test]
fn relabelled_presentation_matches() {
    // x3 ↦ -e1, x5 ↦ e2, x2 ↦ e3, x4 ↦ e4, x1 ↦ e5, x6 ↦ e6
    let x = common::ideal(
        6,
        &[
            &[(1, &[1, 6])],
            &[(1, &[2, 4])],
            &[(1, &[3, 5])],
            &[(1, &[1, 4])],
            &[(1, &[2, 5])],
            &[(1, &[4, 6]), (-1, &[3, 6])],
        ],
    );
    let images: Vec<LinearForm> = [[0, 0, 0, 0, 1, 0], [0, 0, 1, 0, 0, 0], [-1, 0, 0, 0, 0, 0], [0, 0, 0, 1, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 0, 0, 0, 1]]
        .iter()
        .map(|c| LinearForm::from_i64s(c))
        .collect();
    let c = LinearChange::from_images(&images).unwrap();
    let moved = Ideal::new(6, x.generators().iter().map(|g| c.substitute(g).unwrap()).collect()).unwrap();
    assert!(common::same_ideal(&moved, &common::six_variable_lg_ideal()));
}

#[test]
fn no_graph_for_the_slice_series() {
    assert!(search_by_series(6..=6, 6, |_| hs(&[1, 6, 9, 1]), false).unwrap().is_empty());
    let (steps, summary) = lg_obstruction_search(&hs(&[1, 6, 9, 1]), 0).unwrap();
    assert_eq!(summary, LgSummary::NotGQuadratic);
    assert_eq!(steps[0].edges, Some(6));
}

#[test]
fn three_graph_classification_up_to_seven_vertices() {
    let found = search_by_series(6..=7, 6, |v| hs(&[1, 3]).mul(&hs(&[1, 3])).mul(&HilbertSeries::one_plus_t_pow(v - 6)), true)
        .unwrap();
    let expect: Vec<Graph> = ["triangle+triangle", "triangle+path:4"]
        .iter()
        .map(|p| canonical_form(&Graph::preset(p).unwrap()))
        .collect();
    for g in &expect {
        assert!(found.contains(g), "{g}");
    }
    assert!(found.iter().all(|g| g.max_degree() <= 2));
}

#[test]
fn path_depth_sweep_small() {
    for n in 2..=8 {
        let r = QuotientAlgebra::new(&Graph::path(n).edge_ideal(), &MonomialOrder::degrevlex(n)).unwrap();
        let rep = depth_probe_with(&r, 8, 7, &[path_witness(n)]).unwrap();
        let expected = usize::from(n % 3 == 1);
        assert_eq!(rep.certified, expected, "P_{n}");
        if expected == 1 {
            assert_eq!(rep.sequence[0], path_witness(n));
        }
    }
}

#[test]
fn thieu_scan_and_change() {
    let i = common::thieu();
    assert!(fixed_coordinate_quadratic_scan(&i).unwrap().is_certificate());
    let forms: Vec<LinearForm> =
        [[1, 0, 0, 1], [0, 1, 1, 0], [1, 0, 0, -1], [0, 1, -1, 0]].iter().map(|c| LinearForm::from_i64s(c)).collect();
    let c = LinearChange::from_new_coordinates(&forms).unwrap();
    let moved = Ideal::new(4, i.generators().iter().map(|g| c.substitute(g).unwrap()).collect()).unwrap();
    let gb = buchberger(&moved, &MonomialOrder::degrevlex(4));
    assert_eq!(gb.elements(), &[common::poly(4, &[(1, &[1, 2])]), common::poly(4, &[(1, &[3, 4])])]);
}

#[test]
fn froberg_principal_quadric() {
    let f = froberg_inverse(&hs(&[1, 4, 5]), 6).unwrap();
    assert_eq!(f.series.to_i64s().unwrap(), vec![1, 4, 11, 24, 41, 44, -29]);
    assert_eq!(f.first_negative, Some(6));
    assert!(f.refutes_koszul());
    let p = hilbert_series(&common::principal_quadric(), &MonomialOrder::degrevlex(4)).unwrap();
    assert_eq!(p, hs(&[1, 4, 5]));
}

#[test]
fn froberg_families() {
    let f = froberg_inverse(&HilbertSeries::one_plus_t_pow(3), 8).unwrap();
    for k in 0..=8 {
        assert_eq!(f.series.coeff(k), &((k + 1) * (k + 2) / 2).into());
    }
    let f = froberg_inverse(&hs(&[1, 6, 9]), 6).unwrap();
    assert_eq!(f.first_negative, None);
    for k in 0..=6u32 {
        assert_eq!(f.series.coeff(k as usize), &(i64::from(k + 1) * 3i64.pow(k)).into());
    }
}

#[test]
fn generic_six_quadrics() {
    let i = quadrics::generic_quadrics::<Q>(6, 6, 1, 100).unwrap();
    assert_eq!(hilbert_series(&i, &MonomialOrder::degrevlex(6)).unwrap(), hs(&[1, 6, 9]));
    let r = min_rank_sample(i.generators(), 2000, 1).unwrap();
    assert!(r.min_rank >= 4);
    assert!(rank_bound(6, 2, 6) && !rank_bound(6, 2, 7));
}

#[test]
fn two_triangle_quadrics() {
    let i = common::two_triangle_quadrics();
    let o = MonomialOrder::degrevlex(8);
    let gb = buchberger(&i, &o);
    let mut mine = gb.elements().to_vec();
    let mut given = i.generators().to_vec();
    mine.sort_by_key(|f| f.to_string());
    given.sort_by_key(|f| f.to_string());
    assert_eq!(mine, given);
    let g = Graph::new(8, &[(1, 2), (1, 3), (2, 3), (5, 6), (5, 7), (6, 7)]).unwrap();
    let edges: Vec<Monomial> = g.edges().iter().map(|&(a, b)| Monomial::from_vars(&[a, b]).unwrap()).collect();
    assert_eq!(gb.initial(), &MonomialIdeal::new(8, edges));
    for q in i.generators() {
        assert_eq!(rank(q).unwrap(), 4);
    }
    let p = rank2_in_pencil(&i.generators()[0], &i.generators()[1]).unwrap();
    let w = p.witnesses().iter().find(|w| w.lambda == Some(rational(1, 1))).unwrap();
    assert_eq!(w.rank, 2);
    assert_eq!(rank(&w.quadric).unwrap(), 2);
    let (l1, l2) = quadrics::rank2_factors(&w.quadric).unwrap().unwrap();
    assert_eq!(&l1.to_element() * &l2.to_element(), w.quadric);
    let m = min_rank_sample(&i.generators()[..3], 100, 5).unwrap();
    assert_eq!(m.min_rank, 2);
}

#[test]
fn rank_two_factorisation_sign() {
    // q1 + q2 = (e1 - e4)(e2 + e3) in these sign conventions
    let q = common::poly(4, &[(1, &[1, 2]), (1, &[3, 4]), (1, &[1, 3]), (1, &[2, 4])]);
    let f = common::poly(4, &[(1, &[1]), (-1, &[4])]);
    let g = common::poly(4, &[(1, &[2]), (1, &[3])]);
    assert_eq!(&f * &g, q);
    let wrong = &common::poly(4, &[(1, &[1]), (1, &[4])]) * &common::poly(4, &[(1, &[2]), (-1, &[3])]);
    assert_ne!(wrong, q);
}

#[test]
fn pencil_with_complex_roots() {
    let q1 = common::poly(4, &[(1, &[1, 2]), (1, &[3, 4])]);
    let q2 = common::poly(4, &[(1, &[1, 3]), (-1, &[2, 4])]);
    match rank2_in_pencil(&q1, &q2).unwrap().root {
        PencilRoot::Irrational { discriminant, .. } => assert_eq!(discriminant, rational(-4, 1)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn cubic_check_series_by_counting() {
    // the quartic generators lie in (xy), so only the two triangles matter
    let h = hilbert_series(&common::cubic_check_ideal(), &MonomialOrder::degrevlex(7)).unwrap();
    let g = Graph::new(7, &[(2, 3), (2, 4), (3, 4), (5, 6), (5, 7), (6, 7)]).unwrap();
    assert_eq!(h, g.independence_polynomial());
    assert_eq!(h, hs(&[1, 7, 15, 9]));
}

#[test]
fn betti_monotone_on_examples() {
    for i in [common::thieu(), common::two_triangle_quadrics()] {
        let o = MonomialOrder::degrevlex(i.ambient());
        let a = betti_over_e_mod(&i, 3, 7).unwrap();
        let b = betti_over_e_mod(&initial_ideal(&i, &o).to_ideal(), 3, 7).unwrap();
        assert!(a.dominated_by(&b), "{a}\n{b}");
        assert_eq!(a.get(1, 2) as usize, i.generators().len());
    }
}

#[test]
fn bounded_koszul_checks() {
    for i in [Graph::preset("triangle+triangle").unwrap().edge_ideal(), common::six_variable_lg_ideal()] {
        let t = koszul_betti_bounded_mod(&i, 4).unwrap();
        assert!(t.is_complete());
        assert!(t.off_diagonal().is_empty(), "{t}");
        let h = hilbert_series(&i, &MonomialOrder::degrevlex(i.ambient())).unwrap();
        let f = froberg_inverse(&h, 4).unwrap();
        for k in 0..=4 {
            assert_eq!(&num_bigint::BigInt::from(t.get(k, k)), f.series.coeff(k));
        }
    }
    let i = common::principal_quadric().reduce_mod::<32003>().unwrap();
    let t = koszul_betti(&i, 6, 6).unwrap();
    let h = hs(&[1, 4, 5]);
    assert!(euler_identity_check(&t, &h, 6).unwrap());
    assert!(t.off_diagonal().iter().any(|&(i, j)| j == 6 && i < 6));
    assert_eq!(inverse_series(&h, 6).unwrap().coeff(6), &num_bigint::BigInt::from(-29));
}
