//! Simple graphs, their exterior edge ideals and independence polynomials.

use std::fmt;

use crate::element::ExtElement;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::hilbert::HilbertSeries;
use crate::ideal::Ideal;
use crate::monomial::Monomial;

/// Largest vertex count supported by the bitmask representation.
pub const MAX_GRAPH_VERTICES: usize = 62;

/// A simple undirected graph on vertices `1..=v`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    v: usize,
    // adjacency bitmask per vertex, 0-based bits
    adj: Vec<u64>,
}

impl Graph {
    pub fn empty(v: usize) -> Self {
        assert!(v <= MAX_GRAPH_VERTICES, "at most {MAX_GRAPH_VERTICES} vertices");
        Graph { v, adj: vec![0; v] }
    }

    /// Edges are 1-based pairs; loops and out-of-range endpoints are errors,
    /// repeated edges collapse.
    pub fn new(v: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if v > MAX_GRAPH_VERTICES {
            return Err(Error::TooManyVariables { got: v, max: MAX_GRAPH_VERTICES });
        }
        let mut g = Graph::empty(v);
        for &(a, b) in edges {
            for x in [a, b] {
                if x == 0 || x > v {
                    return Err(Error::VariableOutOfRange { index: x, n: v });
                }
            }
            if a == b {
                return Err(Error::Usage(format!("loop at vertex {a}")));
            }
            g.add_edge(a, b);
        }
        Ok(g)
    }

    pub(crate) fn from_adjacency(adj: Vec<u64>) -> Self {
        Graph { v: adj.len(), adj }
    }

    fn add_edge(&mut self, a: usize, b: usize) {
        self.adj[a - 1] |= 1 << (b - 1);
        self.adj[b - 1] |= 1 << (a - 1);
    }

    pub fn vertex_count(&self) -> usize {
        self.v
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    /// Sorted 1-based edges `(a, b)` with `a < b`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.v {
            let mut higher = self.adj[a] & !((2u64 << a) - 1);
            while higher != 0 {
                let b = higher.trailing_zeros() as usize;
                higher &= higher - 1;
                out.push((a + 1, b + 1));
            }
        }
        out
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a >= 1 && a <= self.v && b >= 1 && self.adj[a - 1] & (1 << (b - 1)) != 0
    }

    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    pub fn degree(&self, a: usize) -> usize {
        self.adj[a - 1].count_ones() as usize
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).max().unwrap_or(0)
    }

    pub fn isolated_count(&self) -> usize {
        self.adj.iter().filter(|&&a| a == 0).count()
    }

    /// Drops isolated vertices, keeping the relative order of the others.
    pub fn without_isolated(&self) -> Graph {
        let keep: Vec<usize> = (0..self.v).filter(|&i| self.adj[i] != 0).collect();
        let mut g = Graph::empty(keep.len());
        for (a, b) in self.edges() {
            let na = keep.iter().position(|&k| k == a - 1).expect("non-isolated") + 1;
            let nb = keep.iter().position(|&k| k == b - 1).expect("non-isolated") + 1;
            g.add_edge(na, nb);
        }
        g
    }

    /// Vertices of `other` are shifted past those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = Graph::empty(self.v + other.v);
        for (a, b) in self.edges() {
            g.add_edge(a, b);
        }
        for (a, b) in other.edges() {
            g.add_edge(a + self.v, b + self.v);
        }
        g
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        Graph::new(n, &edges).expect("valid path")
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let mut edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        edges.push((1, n));
        Graph::new(n, &edges).expect("valid cycle")
    }

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for a in 1..=n {
            for b in a + 1..=n {
                edges.push((a, b));
            }
        }
        Graph::new(n, &edges).expect("valid complete graph")
    }

    /// Named graphs: `path:n`, `cycle:n`, `complete:n`, `empty:n`, `triangle`,
    /// and disjoint unions written with `+`, e.g. `triangle+path:4`.
    pub fn preset(name: &str) -> Result<Graph> {
        let mut acc: Option<Graph> = None;
        for part in name.split('+') {
            let part = part.trim();
            let (kind, arg) = match part.split_once(':') {
                Some((k, a)) => {
                    let n = a
                        .trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Usage(format!("bad size in graph preset '{part}'")))?;
                    (k.trim(), Some(n))
                }
                None => (part, None),
            };
            let g = match (kind, arg) {
                ("triangle", None) => Graph::complete(3),
                ("path", Some(n)) if n >= 1 => Graph::path(n),
                ("cycle", Some(n)) if n >= 3 => Graph::cycle(n),
                ("complete", Some(n)) => Graph::complete(n),
                ("empty", Some(n)) => Graph::empty(n),
                _ => return Err(Error::Usage(format!("unknown graph preset '{part}'"))),
            };
            if g.v > MAX_GRAPH_VERTICES {
                return Err(Error::TooManyVariables { got: g.v, max: MAX_GRAPH_VERTICES });
            }
            acc = Some(match acc {
                None => g,
                Some(a) => a.disjoint_union(&g),
            });
        }
        acc.ok_or_else(|| Error::Usage("empty graph preset".into()))
    }

    /// Reads `v <count>` followed by `edge <i> <j>` lines; `#` starts a comment.
    pub fn parse_file(text: &str) -> Result<Graph> {
        let mut v: Option<usize> = None;
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let words: Vec<&str> = line.split_whitespace().collect();
            let num = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("line {}: expected a number, got '{s}'", lineno + 1)))
            };
            match words.as_slice() {
                ["v", n] if v.is_none() => v = Some(num(n)?),
                ["edge", a, b] if v.is_some() => edges.push((num(a)?, num(b)?)),
                _ => return Err(Error::Parse(format!("line {}: cannot read '{line}'", lineno + 1))),
            }
        }
        let v = v.ok_or_else(|| Error::Parse("missing 'v <count>' line".into()))?;
        Graph::new(v, &edges)
    }

    pub fn to_file_string(&self) -> String {
        let mut s = format!("v {}\n", self.v);
        for (a, b) in self.edges() {
            s.push_str(&format!("edge {a} {b}\n"));
        }
        s
    }

    /// `I_E(G)`: one generator `e_a e_b` per edge.
    pub fn edge_ideal<K: Field>(&self) -> Ideal<K> {
        let gens = self
            .edges()
            .into_iter()
            .map(|(a, b)| ExtElement::monomial(self.v, Monomial::from_vars(&[a, b]).expect("distinct")))
            .collect();
        Ideal::new(self.v, gens).expect("monomials are homogeneous")
    }

    /// Counts independent sets by size.
    pub fn independence_polynomial(&self) -> HilbertSeries {
        let all = if self.v == 64 { u64::MAX } else { (1u64 << self.v) - 1 };
        HilbertSeries::new(independence_counts(&self.adj, all))
    }
}

/// Independent-set counts of the subgraph induced on `mask`.
pub(crate) fn independence_counts(adj: &[u64], mask: u64) -> Vec<i64> {
    if mask == 0 {
        return vec![1];
    }
    // branch on the vertex of largest degree inside the mask
    let mut best = mask.trailing_zeros() as usize;
    let mut best_deg = (adj[best] & mask).count_ones();
    let mut rest = mask & (mask - 1);
    while rest != 0 {
        let x = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let d = (adj[x] & mask).count_ones();
        if d > best_deg {
            best = x;
            best_deg = d;
        }
    }
    if best_deg == 0 {
        // every vertex isolated: (1+t)^k
        let k = mask.count_ones() as usize;
        let mut c = vec![1i64; k + 1];
        for i in 1..k {
            c[i] = c[i - 1] * (k - i + 1) as i64 / i as i64;
        }
        return c;
    }
    let without = independence_counts(adj, mask & !(1 << best));
    let with = independence_counts(adj, mask & !(1 << best) & !adj[best]);
    let mut out = without;
    if out.len() < with.len() + 1 {
        out.resize(with.len() + 1, 0);
    }
    for (k, c) in with.into_iter().enumerate() {
        out[k + 1] += c;
    }
    out
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `G(v=4; 1-2, 2-3)`.
impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<String> = self.edges().iter().map(|(a, b)| format!("{a}-{b}")).collect();
        write!(f, "G(v={}; {})", self.v, e.join(", "))
    }
}
