//! Seeded property suites; each runs 500 cases unless noted.

mod common;

use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, RngSeed};

use extkoszul::quadrics::{decompose, rank, AlternatingMatrix};
use extkoszul::regular::{depth_probe, is_regular, quotient_by_linear, CyclicModule};
use extkoszul::resolution::betti_over_e;
use extkoszul::*;

fn config(cases: u32, seed: u64) -> Config {
    Config { cases, rng_seed: RngSeed::Fixed(seed), failure_persistence: None, ..Config::default() }
}

fn element(n: usize) -> impl Strategy<Value = ExtElement> {
    prop::collection::vec((0u64..1 << n, -3i64..=3), 0..8).prop_map(move |terms| {
        ExtElement::from_terms(n, terms.into_iter().map(|(b, c)| (Monomial::from_bits(b), rational(c, 1))))
    })
}

fn homogeneous(n: usize, d: usize) -> impl Strategy<Value = ExtElement> {
    let monos = Monomial::all_of_degree(n, d);
    let k = monos.len();
    prop::collection::vec((0..k, -3i64..=3), 1..5).prop_map(move |terms| {
        ExtElement::from_terms(n, terms.into_iter().map(|(i, c)| (monos[i], rational(c, 1))))
    })
}

fn quadric(n: usize) -> impl Strategy<Value = ExtElement> {
    let k = n * (n - 1) / 2;
    prop::collection::vec(-3i64..=3, k).prop_map(move |c| {
        AlternatingMatrix::from_upper(n, &c.into_iter().map(|x| rational(x, 1)).collect::<Vec<_>>())
            .unwrap()
            .to_quadric()
    })
}

/// Ideals generated by one to three forms of degree 2 or 3.
fn small_ideal(n: usize) -> impl Strategy<Value = Ideal> {
    prop::collection::vec((2usize..=3).prop_flat_map(move |d| homogeneous(n, d)), 1..=3)
        .prop_map(move |g| Ideal::new(n, g).unwrap())
}

fn order(n: usize) -> impl Strategy<Value = MonomialOrder> {
    let all = stock_orders(n);
    (0..all.len()).prop_map(move |i| all[i].clone())
}

fn form(n: usize) -> impl Strategy<Value = LinearForm> {
    prop::collection::vec(-2i64..=2, n).prop_map(|c| LinearForm::from_i64s(&c))
}

fn embed_ideal(i: &Ideal, n: usize) -> Ideal {
    Ideal::new(n, i.generators().iter().map(|g| g.embed(n)).collect()).unwrap()
}

fn quotient(i: &Ideal) -> QuotientAlgebra {
    QuotientAlgebra::new(i, &MonomialOrder::degrevlex(i.ambient())).unwrap()
}

proptest! {
    #![proptest_config(config(500, 11))]
    #[test]
    fn associativity(a in element(6), b in element(6), c in element(6)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }
}

proptest! {
    #![proptest_config(config(500, 12))]
    #[test]
    fn skew_commutativity(n in 3usize..=6, da in 0usize..=3, db in 0usize..=3, seed in any::<u64>()) {
        let mut runner = proptest::test_runner::TestRunner::new(config(1, seed));
        let a = homogeneous(n, da).new_tree(&mut runner).unwrap().current();
        let b = homogeneous(n, db).new_tree(&mut runner).unwrap().current();
        let sign = if da * db % 2 == 1 { rational(-1, 1) } else { rational(1, 1) };
        prop_assert_eq!(&a * &b, (&b * &a).scale(&sign));
    }
}

proptest! {
    #![proptest_config(config(500, 13))]
    #[test]
    fn square_zero(l in form(6), f in homogeneous(6, 3)) {
        let l = l.to_element();
        prop_assert!((&l * &l).is_zero());
        prop_assert!((&f * &f).is_zero());
    }
}

proptest! {
    #![proptest_config(config(500, 14))]
    #[test]
    fn gb_idempotence(i in small_ideal(5), o in order(5)) {
        let gb = buchberger(&i, &o);
        let again = buchberger(&gb.to_ideal(), &o);
        prop_assert_eq!(gb.elements(), again.elements());
        for g in gb.elements() {
            prop_assert!(gb.normal_form(g).is_zero());
        }
    }
}

proptest! {
    #![proptest_config(config(500, 15))]
    #[test]
    fn hilbert_function_order_invariance(i in small_ideal(5), a in order(5), b in order(5)) {
        prop_assert_eq!(hilbert_series(&i, &a).unwrap(), hilbert_series(&i, &b).unwrap());
    }
}

proptest! {
    #![proptest_config(config(500, 16))]
    #[test]
    fn regularity_after_adjoining_a_variable(i in small_ideal(4), l in form(4), alpha in -2i64..=2) {
        let r = quotient(&i);
        let wide = quotient(&embed_ideal(&i, 5));
        let mut c = l.coeffs().to_vec();
        c.push(rational(alpha, 1));
        let l2 = LinearForm::new(c);
        let base = is_regular(&l, &r).unwrap().is_regular();
        prop_assert_eq!(is_regular(&l2, &wide).unwrap().is_regular(), base || alpha != 0);
    }
}

proptest! {
    #![proptest_config(config(500, 17))]
    #[test]
    fn regularity_after_killing_a_variable(i in small_ideal(4), l in form(4), alpha in -2i64..=2) {
        let r = quotient(&i);
        let killed = embed_ideal(&i, 5).with_generator(ExtElement::var(5, 5)).unwrap();
        let k = quotient(&killed);
        let mut c = l.coeffs().to_vec();
        c.push(rational(alpha, 1));
        let l2 = LinearForm::new(c);
        prop_assert_eq!(is_regular(&l2, &k).unwrap().is_regular(), is_regular(&l, &r).unwrap().is_regular());
    }
}

proptest! {
    #![proptest_config(config(500, 18))]
    #[test]
    fn pfaffian_squared_is_determinant(half in 2usize..=4, entries in prop::collection::vec(-5i64..=5, 28)) {
        let n = 2 * half;
        let k = n * (n - 1) / 2;
        let a = AlternatingMatrix::from_upper(n, &entries[..k].iter().map(|&x| rational(x, 1)).collect::<Vec<_>>()).unwrap();
        let pf = a.pfaffian().unwrap();
        prop_assert_eq!(pf.clone() * pf, a.det());
    }
}

proptest! {
    #![proptest_config(config(500, 19))]
    #[test]
    fn rank_parity_and_invariance(q in quadric(7), c in prop::collection::vec(-2i64..=2, 49)) {
        let r = rank(&q).unwrap();
        prop_assert_eq!(r % 2, 0);
        let rows: Vec<LinearForm> = c.chunks(7).map(LinearForm::from_i64s).collect();
        if let Ok(change) = LinearChange::from_images(&rows) {
            prop_assert_eq!(rank(&change.substitute(&q).unwrap()).unwrap(), r);
        }
    }
}

proptest! {
    #![proptest_config(config(500, 20))]
    #[test]
    fn decomposition_round_trip(n in 2usize..=8, seed in any::<u64>(), o in 0usize..3) {
        let mut runner = proptest::test_runner::TestRunner::new(config(1, seed));
        let q = quadric(n).new_tree(&mut runner).unwrap().current();
        let perm = prop::sample::subsequence((1..=n).collect::<Vec<_>>(), n).prop_shuffle();
        let p = perm.new_tree(&mut runner).unwrap().current();
        let order = MonomialOrder::new(OrderKind::ALL[o], p).unwrap();
        let d = decompose(&q, &order).unwrap();
        prop_assert_eq!(d.recompose(n), q.clone());
        prop_assert_eq!(2 * d.factors.len(), rank(&q).unwrap());
        let lead: Vec<Monomial> =
            d.factors.iter().map(|f| Monomial::from_vars(&[f.leading.0, f.leading.1]).unwrap()).collect();
        for w in lead.windows(2) {
            prop_assert!(order.compare(w[0], w[1]).is_gt());
        }
        for f in &d.factors {
            let (i, j) = f.leading;
            prop_assert!(order.var_greater(i, j));
            prop_assert!(f.left.coeff(i).is_one() && f.right.coeff(j).is_one());
            prop_assert!(f.left.support().into_iter().all(|v| v == i || order.var_greater(i, v)));
            prop_assert!(f.right.support().into_iter().all(|v| v == j || order.var_greater(j, v)));
        }
        if d.factors.len() == 1 {
            let (a, b) = quadrics::rank2_factors(&q).unwrap().unwrap();
            prop_assert_eq!(&a.to_element() * &b.to_element(), q);
        }
    }
}

proptest! {
    #![proptest_config(config(300, 21))]
    #[test]
    fn membership_soundness(i in small_ideal(5), a in element(5), b in element(5), h in element(5)) {
        let gb = buchberger(&i, &MonomialOrder::degrevlex(5));
        let g = i.generators();
        let mut f = match g.first() {
            Some(g0) => &a * g0,
            None => ExtElement::zero(5),
        };
        if g.len() > 1 {
            f = &f + &(&g[1] * &b);
        }
        prop_assert!(gb.contains(&f));
        prop_assert!(gb.contains(&(&h - &gb.normal_form(&h))));
        let nf = gb.normal_form(&h);
        prop_assert!(nf.support().all(|m| !gb.initial().contains(m)));
    }
}

proptest! {
    #![proptest_config(config(300, 22))]
    #[test]
    fn substitution_is_an_algebra_map(a in element(5), b in element(5), c in prop::collection::vec(-2i64..=2, 25)) {
        let rows: Vec<LinearForm> = c.chunks(5).map(LinearForm::from_i64s).collect();
        if let Ok(change) = LinearChange::from_images(&rows) {
            let s = |f: &ExtElement| change.substitute(f).unwrap();
            prop_assert_eq!(s(&(&a * &b)), &s(&a) * &s(&b));
            prop_assert_eq!(s(&(&a + &b)), &s(&a) + &s(&b));
            let back = change.inverse().unwrap();
            prop_assert_eq!(back.substitute(&s(&a)).unwrap(), a);
        }
    }
}

proptest! {
    #![proptest_config(config(200, 23))]
    #[test]
    fn modular_and_rational_agree(i in small_ideal(5)) {
        let o = MonomialOrder::degrevlex(5);
        let p = i.reduce_mod::<32003>().unwrap();
        prop_assert_eq!(hilbert_series(&i, &o).unwrap(), hilbert_series(&p, &o).unwrap());
        let lifted = buchberger(&i, &o).reduce_mod::<32003>().unwrap();
        let direct = buchberger(&p, &o);
        prop_assert_eq!(lifted.elements(), direct.elements());
    }
}

proptest! {
    #![proptest_config(config(500, 24))]
    #[test]
    fn independence_polynomial_is_hilbert_series(v in 1usize..=8, bits in any::<u64>()) {
        let mut edges = Vec::new();
        let mut k = 0;
        for a in 1..=v {
            for b in a + 1..=v {
                if bits >> k & 1 == 1 {
                    edges.push((a, b));
                }
                k += 1;
            }
        }
        let g = Graph::new(v, &edges).unwrap();
        // brute force over vertex subsets
        let mut counts = vec![0i64; v + 1];
        for s in 0u64..1 << v {
            if edges.iter().all(|&(a, b)| s >> (a - 1) & 1 == 0 || s >> (b - 1) & 1 == 0) {
                counts[s.count_ones() as usize] += 1;
            }
        }
        let brute = HilbertSeries::new(counts);
        prop_assert_eq!(&g.independence_polynomial(), &brute);
        prop_assert_eq!(hilbert_series(&g.edge_ideal::<Q>(), &MonomialOrder::degrevlex(v)).unwrap(), brute);
    }
}

proptest! {
    #![proptest_config(config(40, 25))]
    #[test]
    fn betti_monotone_under_initial_ideals(i in small_ideal(4), o in order(4)) {
        let a = betti_over_e::<Q>(&i, 3, 5).unwrap();
        let b = betti_over_e::<Q>(&initial_ideal(&i, &o).to_ideal(), 3, 5).unwrap();
        prop_assert!(a.dominated_by(&b), "{}\n{}", a, b);
    }
}

proptest! {
    #![proptest_config(config(100, 26))]
    #[test]
    fn depth_divides_hilbert_series(i in small_ideal(5), seed in any::<u64>()) {
        let r = quotient(&i);
        let rep = depth_probe(&r, 4, seed).unwrap();
        let h = r.hilbert_series();
        prop_assert!(h.one_plus_t_multiplicity() >= rep.certified);
    }
}

proptest! {
    #![proptest_config(config(300, 27))]
    #[test]
    fn certificates_are_valid(i in small_ideal(5), l in form(5)) {
        let r = quotient(&i);
        let cert = is_regular(&l, &r).unwrap();
        if cert.is_regular() {
            if !l.is_zero() {
                let q = quotient_by_linear(&r, &cert).unwrap();
                prop_assert_eq!(Some(q.algebra.hilbert_series()), r.hilbert_series().div_one_plus_t());
                prop_assert_eq!(q.change.apply_linear(&l).unwrap(), LinearForm::var(5, q.eliminated));
            }
        } else {
            let m = CyclicModule::new(&r, &[]).unwrap();
            prop_assert!(m.verify_witness(&l, cert.witness.as_ref().unwrap()));
        }
    }
}
