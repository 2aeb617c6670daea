//! Seeded randomized suites for the structural invariants, run as part of
//! `verify-paper`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use extkoszul::quadrics::{decompose, rank, AlternatingMatrix};
use extkoszul::regular::is_regular;
use extkoszul::{
    buchberger, hilbert_series, rational, ExtElement, Ideal, LinearForm, Monomial, MonomialOrder, OrderKind,
    QuotientAlgebra,
};

pub const DEFAULT_CASES: usize = 500;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub passed: usize,
    pub first_failure: Option<String>,
}

type Case = fn(&mut ChaCha8Rng) -> Result<(), String>;

pub const SUITES: [(&str, Case); 10] = [
    ("associativity", associativity),
    ("skew-commutativity", skew_commutativity),
    ("square-zero", square_zero),
    ("gb-idempotence", gb_idempotence),
    ("hf-order-invariance", hf_order_invariance),
    ("regularity-adjoin-variable", regularity_adjoin_variable),
    ("regularity-kill-variable", regularity_kill_variable),
    ("pfaffian-squared-is-det", pfaffian_squared),
    ("rank-parity", rank_parity),
    ("decomposition-round-trip", decomposition_round_trip),
];

/// Runs every suite on `cases` instances drawn from streams of `seed`.
pub fn run_all(seed: u64, cases: usize) -> Vec<SuiteResult> {
    SUITES
        .iter()
        .enumerate()
        .map(|(k, (name, case))| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let mut passed = 0;
            let mut first_failure = None;
            for i in 0..cases {
                match case(&mut rng) {
                    Ok(()) => passed += 1,
                    Err(e) => {
                        first_failure.get_or_insert(format!("instance {i}: {e}"));
                    }
                }
            }
            SuiteResult { name, cases, passed, first_failure }
        })
        .collect()
}

fn element(rng: &mut ChaCha8Rng, n: usize) -> ExtElement {
    let k = rng.gen_range(0..8);
    ExtElement::from_terms(
        n,
        (0..k).map(|_| (Monomial::from_bits(rng.gen_range(0..1u64 << n)), rational(rng.gen_range(-3..=3), 1))),
    )
}

fn homogeneous(rng: &mut ChaCha8Rng, n: usize, d: usize) -> ExtElement {
    let monos = Monomial::all_of_degree(n, d);
    let k = rng.gen_range(1..5);
    ExtElement::from_terms(n, (0..k).map(|_| (*monos.choose(rng).unwrap(), rational(rng.gen_range(-3..=3), 1))))
}

fn ideal(rng: &mut ChaCha8Rng, n: usize) -> Ideal {
    let k = rng.gen_range(1..=3);
    let gens = (0..k).map(|_| {
        let d = rng.gen_range(2..=3);
        homogeneous(rng, n, d)
    });
    Ideal::new(n, gens.collect()).expect("homogeneous generators")
}

fn order(rng: &mut ChaCha8Rng, n: usize) -> MonomialOrder {
    let mut p: Vec<usize> = (1..=n).collect();
    p.shuffle(rng);
    MonomialOrder::new(*OrderKind::ALL.choose(rng).unwrap(), p).expect("permutation")
}

fn form(rng: &mut ChaCha8Rng, n: usize) -> LinearForm {
    LinearForm::from_i64s(&(0..n).map(|_| rng.gen_range(-2..=2)).collect::<Vec<_>>())
}

fn alternating(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> AlternatingMatrix {
    let upper: Vec<_> = (0..n * (n - 1) / 2).map(|_| rational(rng.gen_range(-bound..=bound), 1)).collect();
    AlternatingMatrix::from_upper(n, &upper).expect("sized")
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn associativity(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let (a, b, c) = (element(rng, 6), element(rng, 6), element(rng, 6));
    check(&(&a * &b) * &c == &a * &(&b * &c), || format!("({a})({b})({c})"))
}

fn skew_commutativity(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let n = rng.gen_range(3..=6);
    let (da, db) = (rng.gen_range(0..=3), rng.gen_range(0..=3));
    let (a, b) = (homogeneous(rng, n, da), homogeneous(rng, n, db));
    let sign = rational(if da * db % 2 == 1 { -1 } else { 1 }, 1);
    check(&a * &b == (&b * &a).scale(&sign), || format!("{a} and {b}"))
}

fn square_zero(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let l = form(rng, 6).to_element();
    let d = rng.gen_range(1..=3) * 2 - 1;
    let f = homogeneous(rng, 6, d);
    check((&l * &l).is_zero() && (&f * &f).is_zero(), || format!("{l} or {f}"))
}

fn gb_idempotence(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let i = ideal(rng, 5);
    let o = order(rng, 5);
    let gb = buchberger(&i, &o);
    let again = buchberger(&gb.to_ideal(), &o);
    check(gb.elements() == again.elements(), || format!("{i} under {o}"))
}

fn hf_order_invariance(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let i = ideal(rng, 5);
    let (a, b) = (order(rng, 5), order(rng, 5));
    let (ha, hb) = (hilbert_series(&i, &a).map_err(|e| e.to_string())?, hilbert_series(&i, &b).map_err(|e| e.to_string())?);
    check(ha == hb, || format!("{i}: {ha} under {a}, {hb} under {b}"))
}

fn quotient(i: &Ideal) -> QuotientAlgebra {
    QuotientAlgebra::new(i, &MonomialOrder::degrevlex(i.ambient())).expect("small quotient")
}

fn widen(i: &Ideal, n: usize) -> Ideal {
    Ideal::new(n, i.generators().iter().map(|g| g.embed(n)).collect()).expect("embedding")
}

fn extend(l: &LinearForm, alpha: i64) -> LinearForm {
    let mut c = l.coeffs().to_vec();
    c.push(rational(alpha, 1));
    LinearForm::new(c)
}

fn regularity_adjoin_variable(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let i = ideal(rng, 4);
    let l = form(rng, 4);
    let alpha = rng.gen_range(-2..=2);
    let base = is_regular(&l, &quotient(&i)).map_err(|e| e.to_string())?.is_regular();
    let wide = is_regular(&extend(&l, alpha), &quotient(&widen(&i, 5))).map_err(|e| e.to_string())?.is_regular();
    check(wide == (base || alpha != 0), || format!("{i}, {}, α = {alpha}", l.to_element()))
}

fn regularity_kill_variable(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let i = ideal(rng, 4);
    let l = form(rng, 4);
    let alpha = rng.gen_range(-2..=2);
    let base = is_regular(&l, &quotient(&i)).map_err(|e| e.to_string())?.is_regular();
    let killed = widen(&i, 5).with_generator(ExtElement::var(5, 5)).map_err(|e| e.to_string())?;
    let k = is_regular(&extend(&l, alpha), &quotient(&killed)).map_err(|e| e.to_string())?.is_regular();
    check(k == base, || format!("{i}, {}, α = {alpha}", l.to_element()))
}

fn pfaffian_squared(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let n = 2 * rng.gen_range(2..=4);
    let a = alternating(rng, n, 5);
    let pf = a.pfaffian().map_err(|e| e.to_string())?;
    check(pf.clone() * pf == a.det(), || a.to_quadric().to_string())
}

fn rank_parity(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let n = rng.gen_range(2..=8);
    let q = alternating(rng, n, 3).to_quadric();
    let r = rank(&q).map_err(|e| e.to_string())?;
    check(r % 2 == 0, || format!("{q} has rank {r}"))
}

fn decomposition_round_trip(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let n = rng.gen_range(2..=8);
    let q = alternating(rng, n, 3).to_quadric();
    let o = order(rng, n);
    let d = decompose(&q, &o).map_err(|e| e.to_string())?;
    let r = rank(&q).map_err(|e| e.to_string())?;
    check(d.recompose(n) == q && 2 * d.factors.len() == r, || format!("{q} under {o}: {d}"))
}
