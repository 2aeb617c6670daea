//! Argument definitions and command dispatch.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use extkoszul::hilbert::froberg_inverse;
use extkoszul::quadrics::{decompose, generic_quadrics, min_rank_sample, rank, rank2_in_pencil, PencilRoot};
use extkoszul::regular::{depth_probe_with, is_regular, lg_obstruction_search, quotient_by_linear, LgSummary};
use extkoszul::resolution::{betti_over_e, koszul_betti_bounded};
use extkoszul::{
    buchberger, fixed_coordinate_quadratic_scan, hilbert_series, search_by_series, Error, Fp, Graph,
    HilbertSeries, Ideal, MonomialOrder, QuotientAlgebra, Result, ScanOutcome, Q,
};

use crate::parse::{max_variable, parse_element, parse_form, parse_ideal, parse_list};
use crate::report::{timed, Check, Report, Session, Status};
use crate::verify;

/// Seed used when neither `--seed` nor `EXTKOSZUL_SEED` is given.
pub const DEFAULT_SEED: u64 = 20_240_601;

/// Exit status for malformed invocations.
pub const USAGE_EXIT: i32 = 64;

/// Primes accepted by `--field fp:<p>`.
pub const PRIMES: [u64; 10] = [2, 3, 5, 7, 11, 13, 101, 32003, 65521, 2147483647];

#[derive(Parser, Debug)]
#[command(name = "extkoszul", version, about = "Computations in quotients of exterior algebras")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Number of exterior variables (inferred from the input when omitted).
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// `lex`, `deglex` or `degrevlex`, optionally `:p1,…,pn` ranking the variables.
    #[arg(long, global = true, default_value = "degrevlex")]
    pub order: String,
    /// `q` or `fp:<p>`.
    #[arg(long, global = true)]
    pub field: Option<String>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write the structured report here.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    /// Largest homological degree.
    #[arg(long, global = true)]
    pub imax: Option<usize>,
    /// Random trials per step.
    #[arg(long, global = true)]
    pub trials: Option<usize>,
}

/// An ideal given inline or as the edge ideal of a graph.
#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Comma-separated generators, e.g. `e1*e2 - e3*e4, e1*e3 - e2*e4`.
    #[arg(long, conflicts_with = "graph")]
    pub ideal: Option<String>,
    /// Graph preset (`path:7`, `triangle+path:4`, …) or graph file.
    #[arg(long)]
    pub graph: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Reduced Gröbner basis.
    Gb(Input),
    /// Initial ideal.
    Initial(Input),
    /// Looks for a quadratic Gröbner basis in the given coordinates.
    #[command(alias = "scan-quadratic")]
    Scan(Input),
    /// Hilbert series of the quotient.
    Hilbert(Input),
    /// Coefficients of 1/H(-t) up to degree N.
    Froberg {
        /// Hilbert series coefficients, e.g. `1,4,5`.
        #[arg(long)]
        hs: String,
        #[arg(long = "N", default_value_t = 6)]
        bound: usize,
    },
    /// Betti table of the quotient over E.
    Betti {
        #[command(flatten)]
        input: Input,
        /// Largest internal degree.
        #[arg(long)]
        jmax: Option<usize>,
    },
    /// Betti table of the residue field through `--imax`, with the degree bound that makes it exact.
    KoszulTest(Input),
    /// Graphs with a prescribed independence polynomial.
    GraphsSearch {
        /// Vertex count or range `a..b` (inclusive).
        #[arg(long)]
        v: String,
        #[arg(long)]
        e: usize,
        /// Coefficients of the target series.
        #[arg(long)]
        target: String,
        /// Multiply the target by (1+t)^(v - smallest v).
        #[arg(long)]
        pad: bool,
        #[arg(long)]
        ignore_isolated: bool,
    },
    /// Is a linear form regular on the quotient?
    Regular {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        form: String,
    },
    /// Greedy depth probe.
    Depth {
        #[command(flatten)]
        input: Input,
        /// Forms tried before random ones.
        #[arg(long)]
        prefer: Option<String>,
    },
    /// Presentation of the quotient by a regular linear form.
    Quotient {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        form: String,
    },
    /// Graph obstructions to a quadratic Gröbner basis after adjoining variables.
    LgSearch {
        #[arg(long)]
        hs: String,
        /// Largest number of adjoined variables.
        #[arg(long, default_value_t = 2)]
        extra: usize,
    },
    /// Rank of a quadric and a splitting into products of linear forms.
    Rank {
        #[arg(long)]
        element: String,
    },
    /// Rank-2 members of a pencil of quadrics in at most four variables.
    Pencil {
        #[arg(long)]
        q1: String,
        #[arg(long)]
        q2: String,
    },
    /// Smallest rank found in the span of some quadrics.
    Minrank {
        /// Comma-separated quadrics.
        #[arg(long)]
        quadrics: String,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
    /// Seeded random quadrics.
    Generic {
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 100)]
        bound: i64,
    },
    /// Replays the reference computations.
    VerifyPaper {
        /// Comma-separated check names.
        #[arg(long)]
        only: Option<String>,
        /// Feed wrong input to the named check.
        #[arg(long)]
        corrupt: Option<String>,
        /// Print the check names and exit.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldChoice {
    Q,
    Fp(u64),
}

impl FieldChoice {
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim().to_ascii_lowercase();
        if t == "q" {
            return Ok(FieldChoice::Q);
        }
        let p = t
            .strip_prefix("fp:")
            .and_then(|p| p.parse::<u64>().ok())
            .ok_or_else(|| Error::Usage(format!("unknown field '{text}'; use q or fp:<p>")))?;
        if PRIMES.contains(&p) {
            Ok(FieldChoice::Fp(p))
        } else {
            Err(Error::Usage(format!("unsupported prime {p}; choose one of {PRIMES:?}")))
        }
    }

    pub fn name(self) -> String {
        match self {
            FieldChoice::Q => "Q".into(),
            FieldChoice::Fp(p) => format!("F_{p}"),
        }
    }
}

/// Runs `$body` with `$i` bound to `$ideal` over the chosen field.
macro_rules! over_field {
    ($field:expr, $ideal:expr, $i:ident => $body:expr) => {
        match $field {
            FieldChoice::Q => {
                let $i: Ideal<Q> = $ideal.clone();
                $body
            }
            FieldChoice::Fp(p) => over_field!(@fp p, $ideal, $i => $body; 2 3 5 7 11 13 101 32003 65521 2147483647),
        }
    };
    (@fp $p:expr, $ideal:expr, $i:ident => $body:expr; $($P:literal)*) => {
        match $p {
            $($P => {
                let $i: Ideal<Fp<$P>> = reduce::<$P>(&$ideal)?;
                $body
            })*
            other => Err(Error::Usage(format!("unsupported prime {other}"))),
        }
    };
}

fn reduce<const P: u64>(i: &Ideal<Q>) -> Result<Ideal<Fp<P>>> {
    i.reduce_mod::<P>().ok_or_else(|| Error::Usage(format!("a coefficient has a denominator divisible by {P}")))
}

/// What a command printed and recorded.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub report: Report,
    /// Notes for standard error.
    pub warnings: Vec<String>,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        self.report.status().exit_code()
    }
}

/// Exit status for an error: usage problems get 64, failed computations 1.
pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::Refused(_) | Error::DivisionByZero | Error::SingularChange => 1,
        _ => USAGE_EXIT,
    }
}

pub fn resolve_seed(flag: Option<u64>) -> u64 {
    flag.or_else(|| std::env::var("EXTKOSZUL_SEED").ok().and_then(|s| s.trim().parse().ok())).unwrap_or(DEFAULT_SEED)
}

struct Ctx {
    g: Global,
    seed: u64,
    warnings: Vec<String>,
}

impl Ctx {
    fn field(&self, default: FieldChoice) -> Result<FieldChoice> {
        self.g.field.as_deref().map_or(Ok(default), FieldChoice::parse)
    }

    fn rational_only(&self) -> Result<()> {
        match self.field(FieldChoice::Q)? {
            FieldChoice::Q => Ok(()),
            _ => Err(Error::Usage("this command works over q only".into())),
        }
    }

    fn n_for(&self, texts: &[&str]) -> Result<usize> {
        let n = self.g.n.unwrap_or_else(|| texts.iter().map(|t| max_variable(t)).max().unwrap_or(0));
        if n == 0 {
            return Err(Error::Usage("cannot infer the number of variables; pass --n".into()));
        }
        Ok(n)
    }

    fn order(&self, n: usize) -> Result<MonomialOrder> {
        MonomialOrder::parse(&self.g.order, n)
    }

    fn ideal(&mut self, input: &Input, extra: &[&str]) -> Result<Ideal<Q>> {
        match (&input.ideal, &input.graph) {
            (Some(text), None) => {
                let mut texts = vec![text.as_str()];
                texts.extend_from_slice(extra);
                let n = self.n_for(&texts)?;
                let p = parse_ideal(text, n)?;
                self.warnings.extend(p.warnings);
                Ok(p.value)
            }
            (None, Some(source)) => {
                let g = load_graph(source)?;
                let n = self.g.n.unwrap_or(g.vertex_count()).max(g.vertex_count());
                let i: Ideal<Q> = g.edge_ideal();
                Ok(Ideal::new(n, i.generators().iter().map(|f| f.embed(n)).collect())?)
            }
            _ => Err(Error::Usage("give exactly one of --ideal or --graph".into())),
        }
    }
}

pub fn load_graph(source: &str) -> Result<Graph> {
    let path = std::path::Path::new(source);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Usage(format!("cannot read {source}: {e}")))?;
        Graph::parse_file(&text)
    } else {
        Graph::preset(source)
    }
}

fn check(name: &str, status: Status, expected: &str, actual: &str) -> Check {
    timed(name, "command-line input", || (status, expected.to_string(), actual.to_string()))
}

fn parse_range(text: &str) -> Result<std::ops::RangeInclusive<usize>> {
    let bad = || Error::Usage(format!("bad vertex range '{text}'"));
    match text.split_once("..") {
        Some((a, b)) => {
            let a = a.trim().parse().map_err(|_| bad())?;
            let b = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
            Ok(a..=b)
        }
        None => {
            let v = text.trim().parse().map_err(|_| bad())?;
            Ok(v..=v)
        }
    }
}

/// Runs one command. The report's status determines the exit code.
pub fn run(cli: Cli) -> Result<Outcome> {
    let seed = resolve_seed(cli.global.seed);
    let mut ctx = Ctx { g: cli.global, seed, warnings: Vec::new() };
    let command_name = command_name(&cli.command);
    let mut session = Session { command: command_name.to_string(), n: None, field: String::new(), order: ctx.g.order.clone(), seed };
    let (text, checks) = dispatch(&mut ctx, cli.command, &mut session)?;
    let mut report = Report::new(session);
    report.checks = checks;
    Ok(Outcome { text, report, warnings: ctx.warnings })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Gb(_) => "gb",
        Command::Initial(_) => "initial",
        Command::Scan(_) => "scan",
        Command::Hilbert(_) => "hilbert",
        Command::Froberg { .. } => "froberg",
        Command::Betti { .. } => "betti",
        Command::KoszulTest(_) => "koszul-test",
        Command::GraphsSearch { .. } => "graphs-search",
        Command::Regular { .. } => "regular",
        Command::Depth { .. } => "depth",
        Command::Quotient { .. } => "quotient",
        Command::LgSearch { .. } => "lg-search",
        Command::Rank { .. } => "rank",
        Command::Pencil { .. } => "pencil",
        Command::Minrank { .. } => "minrank",
        Command::Generic { .. } => "generic",
        Command::VerifyPaper { .. } => "verify-paper",
    }
}

fn dispatch(ctx: &mut Ctx, command: Command, session: &mut Session) -> Result<(String, Vec<Check>)> {
    let name = command_name(&command);
    match command {
        Command::Gb(input) => {
            let i = ctx.ideal(&input, &[])?;
            let field = ctx.field(FieldChoice::Q)?;
            let o = ctx.order(i.ambient())?;
            fill(session, i.ambient(), field);
            let lines: Vec<String> = over_field!(field, i, k => {
                Ok::<_, Error>(buchberger(&k, &o).elements().iter().map(|g| g.to_string()).collect())
            })?;
            let text = lines.join("\n");
            Ok((text.clone(), vec![check(name, Status::Pass, "reduced Gröbner basis", &lines.join(", "))]))
        }
        Command::Initial(input) => {
            let i = ctx.ideal(&input, &[])?;
            let field = ctx.field(FieldChoice::Q)?;
            let o = ctx.order(i.ambient())?;
            fill(session, i.ambient(), field);
            let init = over_field!(field, i, k => Ok::<_, Error>(buchberger(&k, &o).initial().to_string()))?;
            Ok((init.clone(), vec![check(name, Status::Pass, "initial ideal", &init)]))
        }
        Command::Scan(input) => {
            let i = ctx.ideal(&input, &[])?;
            let field = ctx.field(FieldChoice::Q)?;
            fill(session, i.ambient(), field);
            let outcome = over_field!(field, i, k => fixed_coordinate_quadratic_scan(&k))?;
            let (status, text) = match &outcome {
                ScanOutcome::NoQuadraticGb { bases_checked, hilbert } => (
                    Status::Pass,
                    format!("no quadratic GB in given coordinates ({bases_checked} candidate sets checked; HS {hilbert})"),
                ),
                ScanOutcome::Inconclusive { survivors, hilbert } => {
                    let first: Vec<String> = survivors[0].iter().map(|m| m.to_string()).collect();
                    (
                        Status::Inconclusive,
                        format!(
                            "{} candidate leading-monomial sets match HS {hilbert}, e.g. {{{}}}",
                            survivors.len(),
                            first.join(", ")
                        ),
                    )
                }
            };
            Ok((text.clone(), vec![check(name, status, "certificate", &text)]))
        }
        Command::Hilbert(input) => {
            let i = ctx.ideal(&input, &[])?;
            let field = ctx.field(FieldChoice::Q)?;
            let o = ctx.order(i.ambient())?;
            fill(session, i.ambient(), field);
            let h = over_field!(field, i, k => hilbert_series(&k, &o))?;
            let text = h.to_string();
            Ok((text.clone(), vec![check(name, Status::Pass, "Hilbert series", &text)]))
        }
        Command::Froberg { hs, bound } => {
            session.field = "Q".into();
            let h = HilbertSeries::parse_list(&hs)?;
            let f = froberg_inverse(&h, bound)?;
            let coeffs: Vec<String> = f.series.coeffs().iter().map(|c| c.to_string()).collect();
            let (status, verdict) = match f.first_negative {
                Some(d) => (
                    Status::Fail,
                    format!("first negative coefficient {} at degree {d}: NOT Koszul", f.series.coeff(d)),
                ),
                None => (Status::Pass, format!("no negative coefficient through degree {bound}")),
            };
            let text = format!("1/H(-t) = {}\n{verdict}", coeffs.join(", "));
            Ok((text, vec![check(name, status, "nonnegative coefficients", &format!("{}; {verdict}", coeffs.join(", ")))]))
        }
        Command::Betti { input, jmax } => {
            let i = ctx.ideal(&input, &[])?;
            let field = ctx.field(FieldChoice::Fp(32003))?;
            fill(session, i.ambient(), field);
            let imax = ctx.g.imax.unwrap_or(3);
            let jmax = jmax.unwrap_or(imax + i.max_generator_degree().max(2));
            let t = over_field!(field, i, k => betti_over_e(&k, imax, jmax))?;
            let status = if t.is_complete() { Status::Pass } else { Status::Inconclusive };
            let text = t.to_string();
            Ok((text.clone(), vec![check(name, status, "complete table", &text)]))
        }
        Command::KoszulTest(input) => {
            let i = ctx.ideal(&input, &[])?;
            let field = ctx.field(FieldChoice::Fp(32003))?;
            fill(session, i.ambient(), field);
            let imax = ctx.g.imax.unwrap_or(4);
            let t = over_field!(field, i, k => koszul_betti_bounded(&k, imax))?;
            let off = t.off_diagonal();
            let (status, verdict) = if !off.is_empty() {
                (Status::Fail, format!("NOT Koszul: β_ij ≠ 0 off the diagonal at {off:?}"))
            } else if !t.is_complete() {
                (Status::Inconclusive, "linear so far, but the table is partial".to_string())
            } else {
                (Status::Pass, format!("linear through homological degree {imax}"))
            };
            Ok((format!("{t}\n{verdict}"), vec![check(name, status, "linear strand only", &verdict)]))
        }
        Command::GraphsSearch { v, e, target, pad, ignore_isolated } => {
            let range = parse_range(&v)?;
            let base = HilbertSeries::parse_list(&target)?;
            let v0 = *range.start();
            let found = search_by_series(
                range,
                e,
                move |v| if pad { base.mul(&HilbertSeries::one_plus_t_pow(v - v0)) } else { base.clone() },
                ignore_isolated,
            )?;
            let mut lines = vec![format!("{} isomorphism classes", found.len())];
            lines.extend(found.iter().map(|g| format!("{g} (max degree {})", g.max_degree())));
            let text = lines.join("\n");
            Ok((text, vec![check(name, Status::Pass, "isomorphism classes", &lines.join("; "))]))
        }
        Command::Regular { input, form } => {
            ctx.rational_only()?;
            let i = ctx.ideal(&input, &[&form])?;
            fill(session, i.ambient(), FieldChoice::Q);
            let r = QuotientAlgebra::new(&i, &ctx.order(i.ambient())?)?;
            let l = parse_form(&form, i.ambient())?;
            let cert = is_regular(&l, &r)?;
            let (status, text) = if cert.is_regular() {
                (Status::Pass, format!("{l} is regular (ranks {:?})", cert.ranks))
            } else {
                let w = cert.witness.as_ref().map_or(String::new(), |w| w.to_string());
                let d = cert.failing_degree.unwrap_or(0);
                (Status::Fail, format!("{l} is not regular: it annihilates {w} in degree {d}, which is not a multiple of it"))
            };
            Ok((text.clone(), vec![check(name, status, "regular", &text)]))
        }
        Command::Depth { input, prefer } => {
            ctx.rational_only()?;
            let extra: Vec<&str> = prefer.iter().map(|s| s.as_str()).collect();
            let i = ctx.ideal(&input, &extra)?;
            let n = i.ambient();
            fill(session, n, FieldChoice::Q);
            let r = QuotientAlgebra::new(&i, &ctx.order(n)?)?;
            let preferred = match &prefer {
                Some(p) => parse_list(p, n)?.value.iter().map(extkoszul::LinearForm::from_element).collect::<Result<Vec<_>>>()?,
                None => Vec::new(),
            };
            let trials = ctx.g.trials.unwrap_or(8);
            let rep = depth_probe_with(&r, trials, ctx.seed, &preferred)?;
            let seq: Vec<String> = rep.sequence.iter().map(|l| l.to_string()).collect();
            let mut text = format!("certified depth ≥ {} via [{}]", rep.certified, seq.join(", "));
            let status = if rep.monte_carlo {
                text.push_str(&format!(
                    "\nprobable depth {} (Monte-Carlo: {} random forms failed, seed {})",
                    rep.probable, rep.random_failures, ctx.seed
                ));
                Status::Inconclusive
            } else {
                text.push_str(&format!("\ndepth = {} (exact)", rep.probable));
                Status::Pass
            };
            Ok((text.clone(), vec![check(name, status, "exact depth", &text.replace('\n', "; "))]))
        }
        Command::Quotient { input, form } => {
            ctx.rational_only()?;
            let i = ctx.ideal(&input, &[&form])?;
            let n = i.ambient();
            fill(session, n, FieldChoice::Q);
            let r = QuotientAlgebra::new(&i, &ctx.order(n)?)?;
            let l = parse_form(&form, n)?;
            let cert = is_regular(&l, &r)?;
            if !cert.is_regular() {
                let text = format!("{l} is not regular; refusing to form the quotient");
                return Ok((text.clone(), vec![check(name, Status::Fail, "regular form", &text)]));
            }
            let q = quotient_by_linear(&r, &cert)?;
            let gens: Vec<String> = q.generators.iter().map(|g| g.to_string()).collect();
            let text = format!(
                "eliminated e{}; {} variables\ngenerators: {}\nHilbert series: {}",
                q.eliminated,
                q.algebra.ambient(),
                gens.join(", "),
                q.algebra.hilbert_series()
            );
            Ok((text.clone(), vec![check(name, Status::Pass, "presentation", &text.replace('\n', "; "))]))
        }
        Command::LgSearch { hs, extra } => {
            let h = HilbertSeries::parse_list(&hs)?;
            let (steps, summary) = lg_obstruction_search(&h, extra)?;
            let mut lines = Vec::new();
            for s in &steps {
                let e = s.edges.map_or("-".to_string(), |e| e.to_string());
                lines.push(format!("d={}: v={} e={e} target {}: {} graphs", s.extra, s.vertices, s.target, s.candidates.len()));
            }
            let (status, verdict) = match summary {
                LgSummary::NotGQuadratic => (Status::Pass, "no graph for d = 0: not G-quadratic"),
                LgSummary::ObstructedInRange => (Status::Pass, "no graph in the tested range"),
                LgSummary::Inconclusive => (Status::Inconclusive, "graph candidates exist"),
            };
            lines.push(verdict.to_string());
            Ok((lines.join("\n"), vec![check(name, status, "obstruction", &lines.join("; "))]))
        }
        Command::Rank { element } => {
            ctx.rational_only()?;
            let n = ctx.n_for(&[&element])?;
            fill(session, n, FieldChoice::Q);
            let p = parse_element(&element, n)?;
            ctx.warnings.extend(p.warnings);
            let r = rank(&p.value)?;
            let d = decompose(&p.value, &ctx.order(n)?)?;
            let text = format!("rank {r}\n{} = {d}", p.value);
            Ok((text.clone(), vec![check(name, Status::Pass, "rank", &text.replace('\n', "; "))]))
        }
        Command::Pencil { q1, q2 } => {
            ctx.rational_only()?;
            let n = ctx.n_for(&[&q1, &q2])?;
            fill(session, n, FieldChoice::Q);
            let (a, b) = (parse_element(&q1, n)?, parse_element(&q2, n)?);
            ctx.warnings.extend(a.warnings.into_iter().chain(b.warnings));
            let p = rank2_in_pencil(&a.value, &b.value)?;
            let status = match p.root {
                PencilRoot::Irrational { .. } => Status::Inconclusive,
                _ => Status::Pass,
            };
            let text = p.to_string();
            Ok((text.clone(), vec![check(name, status, "rational rank-2 member", &text.replace('\n', "; "))]))
        }
        Command::Minrank { quadrics, samples } => {
            ctx.rational_only()?;
            let n = ctx.n_for(&[&quadrics])?;
            fill(session, n, FieldChoice::Q);
            let p = parse_list(&quadrics, n)?;
            ctx.warnings.extend(p.warnings);
            let m = min_rank_sample(&p.value, samples, ctx.seed)?;
            let text = format!(
                "smallest rank found: {} (Monte-Carlo over {} combinations, seed {})\nwitness: {}",
                m.min_rank, m.examined, ctx.seed, m.witness
            );
            Ok((text.clone(), vec![check(name, Status::Pass, "sampled minimum", &text.replace('\n', "; "))]))
        }
        Command::Generic { t, bound } => {
            let n = ctx.g.n.ok_or_else(|| Error::Usage("generic needs --n".into()))?;
            let field = ctx.field(FieldChoice::Q)?;
            fill(session, n, field);
            let i = generic_quadrics::<Q>(n, t, ctx.seed, bound)?;
            let o = ctx.order(n)?;
            let h = over_field!(field, i, k => hilbert_series(&k, &o))?;
            let gens: Vec<String> = i.generators().iter().map(|g| g.to_string()).collect();
            let text = format!("{}\nHilbert series: {h}", gens.join("\n"));
            Ok((text, vec![check(name, Status::Pass, "generic quadrics", &format!("{}; HS {h}", gens.join(", ")))]))
        }
        Command::VerifyPaper { only, corrupt, list } => {
            session.field = "Q".into();
            if list {
                let lines: Vec<String> = verify::CRITERIA.iter().map(|c| format!("{}: {}", c.name, c.paper_ref)).collect();
                return Ok((lines.join("\n"), Vec::new()));
            }
            let only: Vec<String> = only.iter().flat_map(|s| s.split(',')).map(|s| s.trim().to_string()).collect();
            for name in only.iter().chain(corrupt.iter()) {
                if verify::criterion(name).is_none() {
                    return Err(Error::Usage(format!("unknown check '{name}'")));
                }
            }
            let report = verify::verify_paper(ctx.seed, &only, corrupt.as_deref());
            let lines: Vec<String> = report
                .checks
                .iter()
                .map(|c| format!("[{}] {} ({} ms)\n    expected: {}\n    actual:   {}", c.status.label(), c.name, c.runtime_ms, c.expected, c.actual))
                .collect();
            Ok((lines.join("\n"), report.checks))
        }
    }
}

fn fill(session: &mut Session, n: usize, field: FieldChoice) {
    session.n = Some(n);
    session.field = field.name();
}

/// Parses `args`, runs the command, prints, and returns the exit status.
pub fn main_with(args: impl IntoIterator<Item = String>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { USAGE_EXIT } else { 0 };
        }
    };
    let json = cli.global.json.clone();
    match run(cli) {
        Ok(out) => {
            for w in &out.warnings {
                eprintln!("warning: {w}");
            }
            println!("{}", out.text);
            if let Some(path) = json {
                if let Err(e) = std::fs::write(&path, out.report.to_json()) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return USAGE_EXIT;
                }
            }
            out.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            error_exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Result<Outcome> {
        let cli = Cli::try_parse_from(std::iter::once("extkoszul").chain(args.iter().copied())).unwrap();
        run(cli)
    }

    #[test]
    fn hilbert_of_a_path() {
        let out = run_args(&["hilbert", "--graph", "path:7"]).unwrap();
        assert_eq!(out.text, "1 + 7t + 15t^2 + 10t^3 + t^4");
        assert_eq!(out.exit_code(), 0);
    }

    #[test]
    fn froberg_refutes() {
        let out = run_args(&["froberg", "--hs", "1,4,5", "--N", "6"]).unwrap();
        assert!(out.text.contains("-29 at degree 6") && out.text.contains("NOT Koszul"), "{}", out.text);
        assert_eq!(out.exit_code(), 1);
    }

    #[test]
    fn fields_parse() {
        assert_eq!(FieldChoice::parse("fp:32003").unwrap(), FieldChoice::Fp(32003));
        assert_eq!(FieldChoice::parse("Q").unwrap(), FieldChoice::Q);
        assert!(FieldChoice::parse("fp:4").is_err());
        assert!(FieldChoice::parse("r").is_err());
    }

    #[test]
    fn gb_over_a_prime_field() {
        let out = run_args(&["gb", "--field", "fp:7", "--ideal", "e1*e2 - e3*e4, e1*e3 - e2*e4"]).unwrap();
        assert_eq!(out.report.session.field, "F_7");
        assert!(!out.text.is_empty());
    }

    #[test]
    fn vertex_ranges() {
        assert_eq!(parse_range("6..9").unwrap(), 6..=9);
        assert_eq!(parse_range("6..=9").unwrap(), 6..=9);
        assert_eq!(parse_range("7").unwrap(), 7..=7);
        assert!(parse_range("x").is_err());
    }
}
