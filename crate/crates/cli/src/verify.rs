//! `verify-paper`: every headline computation replayed as a [`Check`].

use std::time::Duration;

use extkoszul::hilbert::froberg_inverse;
use extkoszul::quadrics::{generic_quadrics, min_rank_sample, rank, rank2_factors, rank_bound, rank2_in_pencil};
use extkoszul::regular::{depth_probe_with, is_regular, path_witness, quotient_by_linear};
use extkoszul::resolution::{betti_over_e_mod, euler_identity_check, koszul_betti, koszul_betti_bounded_mod};
use extkoszul::{
    buchberger, canonical_form, fixed_coordinate_quadratic_scan, hilbert_series, initial_ideal, rational, search_by_series,
    ExtElement, Graph, HilbertSeries, Ideal, LinearChange, LinearForm, Monomial, MonomialIdeal, MonomialOrder,
    QuotientAlgebra, Q,
};

use crate::parse::parse_ideal;
use crate::props;
use crate::report::{timed, Check, Report, Session, Status};

/// Instances per property suite.
pub const PROPERTY_CASES: usize = props::DEFAULT_CASES;

/// Samples drawn by the generic min-rank check.
pub const MIN_RANK_SAMPLES: usize = 10_000;

/// Random trials per step of the path depth sweep.
pub const DEPTH_TRIALS: usize = 8;

pub struct Criterion {
    pub name: &'static str,
    pub paper_ref: &'static str,
    /// Wall-clock allowance.
    pub budget: Duration,
    run: fn(&Ctx) -> Outcome,
}

type Outcome = (Status, String, String);

pub struct Ctx {
    pub seed: u64,
    /// Feed deliberately wrong input to this check.
    pub corrupt: bool,
}

const fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

pub const CRITERIA: [Criterion; 13] = [
    Criterion { name: "path7-hilbert-series", paper_ref: "edge ideal of P7: series two ways", budget: secs(1), run: path7_series },
    Criterion { name: "path7-regular-slice", paper_ref: "edge ideal of P7: slice by e1+e4+e7", budget: secs(1), run: path7_slice },
    Criterion { name: "no-graph-for-slice", paper_ref: "no graph with series 1+6t+9t^2+t^3", budget: secs(5), run: no_graph },
    Criterion { name: "three-graph-classification", paper_ref: "graphs with series (1+3t)^2(1+t)^k", budget: secs(120), run: three_graphs },
    Criterion { name: "path-depth-sweep", paper_ref: "depth of path quotients", budget: secs(30), run: depth_sweep },
    Criterion { name: "thieu-quadratic-scan", paper_ref: "Thieu ideal in fixed and changed coordinates", budget: secs(5), run: thieu },
    Criterion { name: "froberg-principal-quadric", paper_ref: "Froberg series of 1+4t+5t^2", budget: secs(1), run: froberg },
    Criterion { name: "generic-six-quadrics", paper_ref: "six generic quadrics in six variables", budget: secs(30), run: generic_six },
    Criterion { name: "two-triangle-quadrics", paper_ref: "rank-4 quadrics over two triangles", budget: secs(5), run: two_triangles },
    Criterion { name: "cubic-hilbert-check", paper_ref: "series of two triangles with quartics in seven variables", budget: secs(1), run: cubic_check },
    Criterion { name: "betti-monotonicity", paper_ref: "Betti numbers under passage to initial ideals", budget: secs(120), run: betti_monotone },
    Criterion { name: "bounded-koszul", paper_ref: "bounded Koszul test and Euler identity", budget: secs(600), run: bounded_koszul },
    Criterion { name: "property-suites", paper_ref: "structural invariants on seeded random instances", budget: secs(300), run: property_suites },
];

pub fn criterion(name: &str) -> Option<&'static Criterion> {
    CRITERIA.iter().find(|c| c.name == name)
}

pub fn run_criterion(c: &Criterion, seed: u64, corrupt: bool) -> Check {
    timed(c.name, c.paper_ref, || (c.run)(&Ctx { seed, corrupt }))
}

/// Runs the named criteria (all when `only` is empty), corrupting the
/// input of `corrupt` if given.
pub fn verify_paper(seed: u64, only: &[String], corrupt: Option<&str>) -> Report {
    let mut report = Report::new(Session {
        command: "verify-paper".into(),
        n: None,
        field: "Q".into(),
        order: "degrevlex".into(),
        seed,
    });
    for c in CRITERIA.iter().filter(|c| only.is_empty() || only.iter().any(|o| o == c.name)) {
        report.checks.push(run_criterion(c, seed, corrupt == Some(c.name)));
    }
    report
}

fn verdict(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn hs(c: &[i64]) -> HilbertSeries {
    HilbertSeries::new(c.to_vec())
}

fn ideal(text: &str, n: usize) -> Ideal {
    parse_ideal(text, n).expect("built-in ideal").value
}

fn degrevlex(i: &Ideal) -> MonomialOrder {
    MonomialOrder::degrevlex(i.ambient())
}

/// Adds `e1*e3` to the generators.
fn spoil(i: Ideal) -> Ideal {
    let n = i.ambient();
    i.with_generator(&ExtElement::var(n, 1) * &ExtElement::var(n, 3)).expect("same ambient")
}

fn maybe_spoil(ctx: &Ctx, i: Ideal) -> Ideal {
    if ctx.corrupt {
        spoil(i)
    } else {
        i
    }
}

fn error(e: impl std::fmt::Display) -> String {
    format!("error: {e}")
}

fn path7_series(ctx: &Ctx) -> Outcome {
    let want = hs(&[1, 7, 15, 10, 1]);
    let g = Graph::path(7);
    let i = maybe_spoil(ctx, g.edge_ideal());
    let by_gb = match hilbert_series(&i, &degrevlex(&i)) {
        Ok(h) => h,
        Err(e) => return (Status::Fail, want.to_string(), error(e)),
    };
    let by_counting = g.independence_polynomial();
    let ok = by_gb == want && by_counting == want;
    (verdict(ok), format!("{want} (both methods)"), format!("standard monomials {by_gb}; independent sets {by_counting}"))
}

fn path7_slice(ctx: &Ctx) -> Outcome {
    let expected = "e1+e4+e7 regular; 6 variables; generator e6*(e1+e4); 1 + 6t + 9t^2 + t^3".to_string();
    let i = maybe_spoil(ctx, Graph::path(7).edge_ideal());
    let run = || -> extkoszul::Result<(bool, String)> {
        let r = QuotientAlgebra::new(&i, &MonomialOrder::degrevlex(7))?;
        let cert = is_regular(&LinearForm::sum_of_vars(7, &[1, 4, 7]), &r)?;
        if !cert.is_regular() {
            let w = cert.witness.map(|w| w.to_string()).unwrap_or_default();
            return Ok((false, format!("e1+e4+e7 not regular; annihilates {w}")));
        }
        let q = quotient_by_linear(&r, &cert)?;
        let target = ideal("e6*(e1+e4)", 6).generators()[0].clone();
        let has_gen = q.generators.iter().any(|g| *g == target || *g == -&target);
        let h = q.algebra.hilbert_series();
        let ok = q.algebra.ambient() == 6 && has_gen && h == hs(&[1, 6, 9, 1]);
        let gens: Vec<String> = q.generators.iter().map(|g| g.to_string()).collect();
        Ok((ok, format!("regular; {} variables; generators {}; {h}", q.algebra.ambient(), gens.join(", "))))
    };
    match run() {
        Ok((ok, actual)) => (verdict(ok), expected, actual),
        Err(e) => (Status::Fail, expected, error(e)),
    }
}

fn no_graph(ctx: &Ctx) -> Outcome {
    let target = if ctx.corrupt { hs(&[1, 6, 9]) } else { hs(&[1, 6, 9, 1]) };
    let expected = "no graph among 5005 labelled graphs".to_string();
    match search_by_series(6..=6, 6, move |_| target.clone(), false) {
        Ok(found) if found.is_empty() => (Status::Pass, expected, "none".into()),
        Ok(found) => (Status::Fail, expected, format!("{} classes, e.g. {}", found.len(), found[0])),
        Err(e) => (Status::Fail, expected, error(e)),
    }
}

fn three_graphs(ctx: &Ctx) -> Outcome {
    let base = if ctx.corrupt { hs(&[1, 6, 10]) } else { hs(&[1, 6, 9]) };
    let expected_names = ["triangle+triangle", "triangle+path:4", "path:4+path:4"];
    let mut expected: Vec<Graph> = expected_names.iter().map(|p| canonical_form(&Graph::preset(p).unwrap())).collect();
    expected.sort();
    let exp_text = format!("{{{}}}, max degree ≤ 2", expected_names.join(", "));
    match search_by_series(6..=9, 6, move |v| base.mul(&HilbertSeries::one_plus_t_pow(v - 6)), true) {
        Ok(mut found) => {
            found.sort();
            let ok = found == expected && found.iter().all(|g| g.max_degree() <= 2);
            let text: Vec<String> = found.iter().map(|g| g.to_string()).collect();
            (verdict(ok), exp_text, format!("{} classes: {}", found.len(), text.join("; ")))
        }
        Err(e) => (Status::Fail, exp_text, error(e)),
    }
}

fn depth_sweep(ctx: &Ctx) -> Outcome {
    let expected = "certified depth 1 with witness Σe_{3i+1} for n ≡ 1 mod 3, probable depth 0 otherwise".to_string();
    let mut lines = Vec::new();
    let mut ok = true;
    for n in 2..=13 {
        let mut i = Graph::path(n).edge_ideal();
        if ctx.corrupt && n == 7 {
            i = spoil(i);
        }
        let rep = QuotientAlgebra::new(&i, &MonomialOrder::degrevlex(n))
            .and_then(|r| depth_probe_with(&r, DEPTH_TRIALS, ctx.seed, &[path_witness(n)]));
        match rep {
            Ok(rep) => {
                let good = if n % 3 == 1 {
                    rep.certified == 1 && rep.sequence.first() == Some(&path_witness(n))
                } else {
                    rep.certified == 0 && rep.probable == 0
                };
                ok &= good;
                let tag = if rep.monte_carlo { " (Monte-Carlo)" } else { "" };
                lines.push(format!("P{n}: certified {} probable {}{tag}", rep.certified, rep.probable));
            }
            Err(e) => {
                ok = false;
                lines.push(format!("P{n}: {}", error(e)));
            }
        }
    }
    (verdict(ok), expected, lines.join("; "))
}

fn thieu(ctx: &Ctx) -> Outcome {
    let expected = "no quadratic GB in given coordinates; after the change (e1e2, e3e4) is its own GB".to_string();
    let i = ideal(if ctx.corrupt { "e1*e2, e3*e4" } else { "e1*e2 - e3*e4, e1*e3 - e2*e4" }, 4);
    let run = || -> extkoszul::Result<(bool, String)> {
        let scan = fixed_coordinate_quadratic_scan(&i)?;
        let forms: Vec<LinearForm> =
            [[1, 0, 0, 1], [0, 1, 1, 0], [1, 0, 0, -1], [0, 1, -1, 0]].iter().map(|c| LinearForm::from_i64s(c)).collect();
        let c = LinearChange::from_new_coordinates(&forms)?;
        let moved = Ideal::new(4, i.generators().iter().map(|g| c.substitute(g)).collect::<extkoszul::Result<_>>()?)?;
        let gb = buchberger(&moved, &MonomialOrder::degrevlex(4));
        let want = ideal("e1*e2, e3*e4", 4);
        let ok = scan.is_certificate() && gb.elements() == want.generators();
        let els: Vec<String> = gb.elements().iter().map(|g| g.to_string()).collect();
        let scan_text = if scan.is_certificate() { "no quadratic GB" } else { "candidates survive" };
        Ok((ok, format!("scan: {scan_text}; GB after change: {}", els.join(", "))))
    };
    match run() {
        Ok((ok, actual)) => (verdict(ok), expected, actual),
        Err(e) => (Status::Fail, expected, error(e)),
    }
}

fn froberg(ctx: &Ctx) -> Outcome {
    let expected = "1, 4, 11, 24, 41, 44, -29; first negative at degree 6; not Koszul".to_string();
    let h = if ctx.corrupt { hs(&[1, 4, 6]) } else { hs(&[1, 4, 5]) };
    match froberg_inverse(&h, 6) {
        Ok(f) => {
            let ok = f.series.to_i64s() == Some(vec![1, 4, 11, 24, 41, 44, -29]) && f.first_negative == Some(6);
            let fnd = f.first_negative.map_or("none".to_string(), |d| d.to_string());
            (verdict(ok), expected, format!("{}; first negative at degree {fnd}", f.series))
        }
        Err(e) => (Status::Fail, expected, error(e)),
    }
}

fn generic_six(ctx: &Ctx) -> Outcome {
    let expected = format!(
        "HS 1 + 6t + 9t^2; sampled min rank ≥ 4 over {MIN_RANK_SAMPLES} samples; rank_bound(6,2,6) true, rank_bound(6,2,7) false"
    );
    let run = || -> extkoszul::Result<(bool, String)> {
        let i = maybe_spoil(ctx, generic_quadrics::<Q>(6, 6, ctx.seed, 100)?);
        let h = hilbert_series(&i, &MonomialOrder::degrevlex(6))?;
        let m = min_rank_sample(i.generators(), MIN_RANK_SAMPLES, ctx.seed)?;
        let (b6, b7) = (rank_bound(6, 2, 6), rank_bound(6, 2, 7));
        let ok = h == hs(&[1, 6, 9]) && m.min_rank >= 4 && b6 && !b7;
        Ok((
            ok,
            format!(
                "HS {h}; sampled min rank {} over {} combinations (Monte-Carlo); rank_bound(6,2,6) {b6}, rank_bound(6,2,7) {b7}",
                m.min_rank, m.examined
            ),
        ))
    };
    match run() {
        Ok((ok, actual)) => (verdict(ok), expected, actual),
        Err(e) => (Status::Fail, expected, error(e)),
    }
}

pub fn two_triangle_ideal() -> Ideal {
    ideal("e1*e2 + e3*e4, e1*e3 + e2*e4, e2*e3 + e1*e4, e5*e6 + e7*e8, e5*e7 + e6*e8, e6*e7 + e5*e8", 8)
}

fn two_triangles(ctx: &Ctx) -> Outcome {
    let expected =
        "GB = the six generators; initial ideal = edges of triangles {1,2,3} and {5,6,7}; λ = 1 gives a rank-2 member".to_string();
    let i = two_triangle_ideal();
    let i = if ctx.corrupt { ideal("e1*e2 + e3*e4, e1*e3 + e2*e4", 8).with_generator(i.generators()[2].clone()).unwrap() } else { i };
    let run = || -> extkoszul::Result<(bool, String)> {
        let gb = buchberger(&i, &MonomialOrder::degrevlex(8));
        let mut mine = gb.elements().to_vec();
        let mut given = two_triangle_ideal().generators().to_vec();
        mine.sort_by_key(|f| f.to_string());
        given.sort_by_key(|f| f.to_string());
        let same = mine == given;
        let edges = [(1, 2), (1, 3), (2, 3), (5, 6), (5, 7), (6, 7)];
        let want = MonomialIdeal::new(8, edges.iter().map(|&(a, b)| Monomial::from_vars(&[a, b]).unwrap()));
        let init = gb.initial() == &want;
        let p = rank2_in_pencil(&i.generators()[0], &i.generators()[1])?;
        let w = p.witnesses().iter().find(|w| w.lambda == Some(rational(1, 1)));
        let (pencil_ok, pencil_text) = match w {
            Some(w) => {
                let r = rank(&w.quadric)?;
                let factors = rank2_factors(&w.quadric)?;
                let certified = r == 2
                    && factors.as_ref().is_some_and(|(a, b)| &a.to_element() * &b.to_element() == w.quadric);
                let shown = factors.map_or(String::new(), |(a, b)| format!(" = ({a})({b})"));
                (certified, format!("λ = 1: {}{shown}, rank {r}", w.quadric))
            }
            None => (false, format!("no λ = 1 witness: {}", p.to_string().replace('\n', "; "))),
        };
        let actual = format!(
            "GB {} the generators ({} elements); initial ideal {}; {pencil_text}",
            if same { "equals" } else { "differs from" },
            gb.elements().len(),
            gb.initial()
        );
        Ok((same && init && pencil_ok, actual))
    };
    match run() {
        Ok((ok, actual)) => (verdict(ok), expected, actual),
        Err(e) => (Status::Fail, expected, error(e)),
    }
}

/// Variables `c, u, v, w, x, y, z` are `e1, …, e7`.
pub fn cubic_check_ideal() -> Ideal {
    ideal("e2*e3, e2*e4, e3*e4, e5*e6, e5*e7, e6*e7, e2*e5*e6*e1, e3*e5*e6*e1", 7)
}

fn cubic_check(ctx: &Ctx) -> Outcome {
    let claimed = hs(&[1, 7, 15, 8]);
    let other = hs(&[1, 3]).mul(&hs(&[1, 3])).mul(&hs(&[1, 1]));
    let expected = format!("{claimed}, different from (1+3t)^2(1+t) = {other}");
    let i = maybe_spoil(ctx, cubic_check_ideal());
    match hilbert_series(&i, &degrevlex(&i)) {
        Ok(h) => {
            let ok = h == claimed && h != other;
            let rel = if h == other { "equal to" } else { "different from" };
            (verdict(ok), expected, format!("{h}, {rel} (1+3t)^2(1+t)"))
        }
        Err(e) => (Status::Fail, expected, error(e)),
    }
}

pub fn thieu_ideal() -> Ideal {
    ideal("e1*e2 - e3*e4, e1*e3 - e2*e4", 4)
}

fn betti_monotone(ctx: &Ctx) -> Outcome {
    let expected = "β_ij(E/I) ≤ β_ij(E/in(I)) for i ≤ 3, j ≤ 7 over F_32003 (Thieu, two triangles)".to_string();
    let mut ok = true;
    let mut lines = Vec::new();
    for (name, i) in [("Thieu", thieu_ideal()), ("two triangles", two_triangle_ideal())] {
        let init = initial_ideal(&i, &degrevlex(&i)).to_ideal::<Q>();
        // the corrupted run compares the wrong way round
        let (a, b) = if ctx.corrupt { (init, i) } else { (i, init) };
        match (betti_over_e_mod(&a, 3, 7), betti_over_e_mod(&b, 3, 7)) {
            (Ok(ta), Ok(tb)) => {
                let dom = ta.is_complete() && tb.is_complete() && ta.dominated_by(&tb);
                ok &= dom;
                let tot = |t: &extkoszul::BettiTable| (0..=3).map(|k| t.total(k).to_string()).collect::<Vec<_>>().join(",");
                lines.push(format!("{name}: totals {} vs {} ({})", tot(&ta), tot(&tb), if dom { "dominated" } else { "violated" }));
            }
            (Err(e), _) | (_, Err(e)) => {
                ok = false;
                lines.push(format!("{name}: {}", error(e)));
            }
        }
    }
    (verdict(ok), expected, lines.join("; "))
}

fn bounded_koszul(ctx: &Ctx) -> Outcome {
    let expected = "linear through i = 4 for two triangles and the six-variable slice; principal quadric: Euler identity through j = 6 and an off-diagonal entry in degree ≤ 6".to_string();
    let mut ok = true;
    let mut lines = Vec::new();
    let cases = [
        ("two triangles", Graph::preset("triangle+triangle").unwrap().edge_ideal()),
        ("six-variable slice", ideal("e1*e2, e2*e3, e3*e4, e4*e5, e5*e6, e6*(e1+e4)", 6)),
    ];
    for (name, i) in cases {
        let i = if ctx.corrupt { ideal("e1*e2 + e3*e4", i.ambient()) } else { i };
        match koszul_betti_bounded_mod(&i, 4) {
            Ok(t) => {
                let good = t.is_complete() && t.off_diagonal().is_empty();
                ok &= good;
                lines.push(format!("{name}: {}", if good { "linear".to_string() } else { format!("off-diagonal {:?}", t.off_diagonal()) }));
            }
            Err(e) => {
                ok = false;
                lines.push(format!("{name}: {}", error(e)));
            }
        }
    }
    let p = ideal("e1*e2 + e3*e4", 4).reduce_mod::<32003>().expect("integral");
    match koszul_betti(&p, 6, 6) {
        Ok(t) => {
            let euler = euler_identity_check(&t, &hs(&[1, 4, 5]), 6).unwrap_or(false);
            let off = t.off_diagonal();
            ok &= euler && !off.is_empty();
            lines.push(format!("principal quadric: Euler identity {}; off-diagonal {:?}", if euler { "holds" } else { "fails" }, off));
        }
        Err(e) => {
            ok = false;
            lines.push(format!("principal quadric: {}", error(e)));
        }
    }
    (verdict(ok), expected, lines.join("; "))
}

fn property_suites(ctx: &Ctx) -> Outcome {
    let cases = if ctx.corrupt { 0 } else { PROPERTY_CASES };
    let results = props::run_all(ctx.seed, cases);
    let ok = results.iter().all(|r| r.cases >= PROPERTY_CASES && r.passed == r.cases);
    let lines: Vec<String> = results
        .iter()
        .map(|r| match &r.first_failure {
            None => format!("{} {}/{}", r.name, r.passed, r.cases),
            Some(f) => format!("{} {}/{} ({f})", r.name, r.passed, r.cases),
        })
        .collect();
    (verdict(ok), format!("{} suites, each {PROPERTY_CASES}/{PROPERTY_CASES}", props::SUITES.len()), lines.join("; "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn criteria_names_are_unique() {
        let mut names: Vec<_> = CRITERIA.iter().map(|c| c.name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), CRITERIA.len());
    }

    #[test]
    fn quick_checks_pass_and_corrupt_inputs_fail() {
        for name in ["path7-hilbert-series", "froberg-principal-quadric", "thieu-quadratic-scan", "path7-regular-slice"] {
            let c = criterion(name).unwrap();
            assert_eq!(run_criterion(c, 1, false).status, Status::Pass, "{name}");
            assert_eq!(run_criterion(c, 1, true).status, Status::Fail, "{name}");
        }
    }
}
