//! Exhaustive graph enumeration, canonical forms and searches by
//! independence polynomial.

use std::collections::BTreeSet;
use std::ops::{Range, RangeInclusive};

use rayon::prelude::*;

use crate::combin::{binomial, combinations_in_range};
use crate::error::{Error, Result};
use crate::graph::{independence_counts, Graph};
use crate::hilbert::HilbertSeries;

/// Largest vertex count for enumeration and canonical forms.
pub const MAX_ENUM_VERTICES: usize = 10;

const SHARD: u64 = 1 << 15;

fn pair_list(v: usize) -> Vec<(usize, usize)> {
    let mut p = Vec::with_capacity(v * (v.saturating_sub(1)) / 2);
    for a in 0..v {
        for b in a + 1..v {
            p.push((a, b));
        }
    }
    p
}

/// Number of labelled graphs with `v` vertices and `e` edges.
pub fn labelled_count(v: usize, e: usize) -> u64 {
    binomial((v * v.saturating_sub(1) / 2) as u64, e as u64)
}

/// Labelled graphs whose edge sets have lexicographic rank in `range`.
pub fn labelled_graphs_in_range(v: usize, e: usize, range: Range<u64>) -> impl Iterator<Item = Graph> {
    let pairs = pair_list(v);
    combinations_in_range(pairs.len(), e, range.start, range.end).map(move |c| {
        let mut adj = vec![0u64; v];
        for i in c {
            let (a, b) = pairs[i];
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        Graph::from_adjacency(adj)
    })
}

pub fn labelled_graphs(v: usize, e: usize) -> impl Iterator<Item = Graph> {
    labelled_graphs_in_range(v, e, 0..u64::MAX)
}

/// All graphs with `v` vertices and `e` edges; with `dedup`, one canonical
/// representative per isomorphism class.
pub fn enumerate_graphs(v: usize, e: usize, dedup: bool) -> Result<Box<dyn Iterator<Item = Graph>>> {
    if v > MAX_ENUM_VERTICES {
        return Err(Error::Refused(format!("enumeration is limited to {MAX_ENUM_VERTICES} vertices")));
    }
    if !dedup {
        return Ok(Box::new(labelled_graphs(v, e)));
    }
    let classes: BTreeSet<Graph> = labelled_graphs(v, e).map(|g| canonical_form(&g)).collect();
    Ok(Box::new(classes.into_iter()))
}

/// Bit `k` set iff the `k`-th pair (lexicographic) is an edge.
fn edge_code(adj: &[u64], labels: &[usize]) -> u64 {
    // labels[old] = new position
    let v = adj.len();
    let mut code = 0u64;
    for a in 0..v {
        let mut nb = adj[a];
        while nb != 0 {
            let b = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            let (x, y) = (labels[a], labels[b]);
            if x < y {
                code |= 1 << pair_index(v, x, y);
            }
        }
    }
    code
}

fn pair_index(v: usize, x: usize, y: usize) -> usize {
    // pairs (0,1),(0,2),…,(0,v-1),(1,2),…
    x * (2 * v - x - 1) / 2 + (y - x - 1)
}

/// Canonical representative of the isomorphism class.
///
/// Vertices are first grouped by an isomorphism-invariant key (degree, then
/// the sorted degrees of the neighbours); the result is the relabelling with
/// the largest edge code among those respecting the grouping.
pub fn canonical_form(g: &Graph) -> Graph {
    let v = g.vertex_count();
    assert!(v <= MAX_ENUM_VERTICES, "canonical forms are limited to {MAX_ENUM_VERTICES} vertices");
    let adj = g.adjacency();
    let deg: Vec<u32> = adj.iter().map(|a| a.count_ones()).collect();
    let key = |x: usize| {
        let mut nd: Vec<u32> = (0..v).filter(|&y| adj[x] & 1 << y != 0).map(|y| deg[y]).collect();
        nd.sort_unstable_by(|a, b| b.cmp(a));
        (std::cmp::Reverse(deg[x]), nd.into_iter().map(std::cmp::Reverse).collect::<Vec<_>>())
    };
    let mut order: Vec<usize> = (0..v).collect();
    order.sort_by_key(|&x| key(x));
    // cell id of each new position
    let mut cell_of_pos = vec![0usize; v];
    for p in 1..v {
        cell_of_pos[p] = cell_of_pos[p - 1] + usize::from(key(order[p]) != key(order[p - 1]));
    }
    let cell_of_vertex: Vec<usize> = {
        let mut c = vec![0; v];
        for (p, &x) in order.iter().enumerate() {
            c[x] = cell_of_pos[p];
        }
        c
    };
    let mut labels = vec![usize::MAX; v];
    let mut best: Option<(u64, Vec<usize>)> = None;
    search(0, v, adj, &cell_of_pos, &cell_of_vertex, &mut labels, &mut best);
    let (_, labels) = best.expect("at least one labelling");
    let mut new_adj = vec![0u64; v];
    for a in 0..v {
        let mut nb = adj[a];
        while nb != 0 {
            let b = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            new_adj[labels[a]] |= 1 << labels[b];
        }
    }
    Graph::from_adjacency(new_adj)
}

fn search(
    pos: usize,
    v: usize,
    adj: &[u64],
    cell_of_pos: &[usize],
    cell_of_vertex: &[usize],
    labels: &mut Vec<usize>,
    best: &mut Option<(u64, Vec<usize>)>,
) {
    if pos == v {
        let code = edge_code(adj, labels);
        if best.as_ref().map_or(true, |(b, _)| code > *b) {
            *best = Some((code, labels.clone()));
        }
        return;
    }
    for x in 0..v {
        if labels[x] == usize::MAX && cell_of_vertex[x] == cell_of_pos[pos] {
            labels[x] = pos;
            search(pos + 1, v, adj, cell_of_pos, cell_of_vertex, labels, best);
            labels[x] = usize::MAX;
        }
    }
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.vertex_count() == b.vertex_count()
        && a.edge_count() == b.edge_count()
        && canonical_form(a) == canonical_form(b)
}

/// Isomorphism classes (optionally modulo isolated vertices) of graphs with
/// `v` in `vertices` and `e` edges whose independence polynomial equals
/// `target(v)`. Labelled graphs are scanned in parallel shards.
pub fn search_by_series(
    vertices: RangeInclusive<usize>,
    e: usize,
    target: impl Fn(usize) -> HilbertSeries + Sync,
    ignore_isolated: bool,
) -> Result<Vec<Graph>> {
    let mut classes: BTreeSet<(usize, Graph)> = BTreeSet::new();
    for v in vertices {
        if v > MAX_ENUM_VERTICES {
            return Err(Error::Refused(format!("enumeration is limited to {MAX_ENUM_VERTICES} vertices")));
        }
        let want = target(v);
        let total = labelled_count(v, e);
        let shards = total.div_ceil(SHARD);
        let hits: Vec<Graph> = (0..shards)
            .into_par_iter()
            .flat_map_iter(|s| {
                let want = &want;
                let all = if v == 0 { 0 } else { u64::MAX >> (64 - v) };
                labelled_graphs_in_range(v, e, s * SHARD..(s + 1) * SHARD).filter(move |g| {
                    HilbertSeries::new(independence_counts(g.adjacency(), all)) == *want
                })
            })
            .collect();
        let mut seen: BTreeSet<Graph> = BTreeSet::new();
        for g in hits {
            let g = if ignore_isolated { g.without_isolated() } else { g };
            if seen.contains(&g) {
                continue;
            }
            seen.insert(g.clone());
            let c = canonical_form(&g);
            classes.insert((c.vertex_count(), c));
        }
    }
    Ok(classes.into_iter().map(|(_, g)| g).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labelled_counts() {
        assert_eq!(labelled_graphs(6, 6).count(), 5005);
        assert_eq!(labelled_count(9, 6), 1_947_792);
    }

    #[test]
    fn classes_small() {
        assert_eq!(enumerate_graphs(3, 3, true).unwrap().count(), 1);
        assert_eq!(enumerate_graphs(4, 3, true).unwrap().count(), 3);
        assert_eq!(enumerate_graphs(4, 2, true).unwrap().count(), 2);
    }

    #[test]
    fn canonical_form_is_invariant() {
        let a = Graph::new(5, &[(1, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
        let b = Graph::new(5, &[(3, 5), (5, 1), (1, 4), (4, 2)]).unwrap();
        assert!(is_isomorphic(&a, &b));
        let star = Graph::new(5, &[(1, 2), (1, 3), (1, 4), (1, 5)]).unwrap();
        assert!(!is_isomorphic(&a, &star));
    }

    #[test]
    fn pair_indices_are_lexicographic() {
        let v = 5;
        for (k, (a, b)) in pair_list(v).into_iter().enumerate() {
            assert_eq!(pair_index(v, a, b), k);
        }
    }

    #[test]
    fn no_graph_with_cubic_target() {
        let t = HilbertSeries::new(vec![1, 6, 9, 1]);
        assert!(search_by_series(6..=6, 6, |_| t.clone(), false).unwrap().is_empty());
        let t = HilbertSeries::new(vec![1, 6, 9]);
        let found = search_by_series(6..=6, 6, |_| t.clone(), false).unwrap();
        assert_eq!(found, vec![canonical_form(&Graph::preset("triangle+triangle").unwrap())]);
    }
}
