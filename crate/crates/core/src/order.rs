//! Monomial orders on squarefree monomials.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::monomial::Monomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrderKind {
    Lex,
    DegLex,
    DegRevLex,
}

impl OrderKind {
    pub const ALL: [OrderKind; 3] = [OrderKind::Lex, OrderKind::DegLex, OrderKind::DegRevLex];

    pub fn name(self) -> &'static str {
        match self {
            OrderKind::Lex => "lex",
            OrderKind::DegLex => "deglex",
            OrderKind::DegRevLex => "degrevlex",
        }
    }
}

/// A standard order after relabelling the variables.
///
/// `perm[k]` is the (1-based) variable ranked `k`, rank 0 being the largest;
/// the identity permutation gives `e_1 > e_2 > … > e_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    perm: Vec<usize>,
    // bit position of each variable in the rank word; largest variable on top
    pos: Vec<u32>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n + 1];
        for &v in &perm {
            if v == 0 || v > n || seen[v] {
                return Err(Error::Usage(format!("{perm:?} is not a permutation of 1..={n}")));
            }
            seen[v] = true;
        }
        let mut pos = vec![0u32; n + 1];
        for (rank, &v) in perm.iter().enumerate() {
            pos[v] = (n - 1 - rank) as u32;
        }
        Ok(MonomialOrder { kind, perm, pos })
    }

    pub fn standard(kind: OrderKind, n: usize) -> Self {
        Self::new(kind, (1..=n).collect()).expect("identity permutation")
    }

    pub fn lex(n: usize) -> Self {
        Self::standard(OrderKind::Lex, n)
    }

    pub fn deglex(n: usize) -> Self {
        Self::standard(OrderKind::DegLex, n)
    }

    pub fn degrevlex(n: usize) -> Self {
        Self::standard(OrderKind::DegRevLex, n)
    }

    /// Parses `kind` or `kind:p1,p2,…` (a permutation listing the variables
    /// from largest to smallest).
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let (name, perm) = match text.split_once(':') {
            Some((a, b)) => (a, Some(b)),
            None => (text, None),
        };
        let kind = match name.trim().to_ascii_lowercase().as_str() {
            "lex" => OrderKind::Lex,
            "deglex" | "grlex" => OrderKind::DegLex,
            "degrevlex" | "grevlex" | "revlex" => OrderKind::DegRevLex,
            other => return Err(Error::Usage(format!("unknown monomial order '{other}'"))),
        };
        let perm = match perm {
            None => (1..=n).collect(),
            Some(p) => p
                .split(',')
                .map(|s| s.trim().trim_start_matches('e').parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Usage(format!("bad permutation '{p}': {e}")))?,
        };
        if perm.len() != n {
            return Err(Error::Usage(format!("permutation has {} entries, expected {n}", perm.len())));
        }
        Self::new(kind, perm)
    }

    /// The induced order after deleting variable `k` and renumbering the
    /// variables above it.
    pub fn without_variable(&self, k: usize) -> MonomialOrder {
        let perm = self
            .perm
            .iter()
            .filter(|&&v| v != k)
            .map(|&v| if v > k { v - 1 } else { v })
            .collect();
        MonomialOrder::new(self.kind, perm).expect("restriction of a permutation")
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn ambient(&self) -> usize {
        self.perm.len()
    }

    fn rank_word(&self, m: Monomial) -> u64 {
        m.vars().fold(0u64, |w, v| w | 1u64 << self.pos[v])
    }

    /// Sort key: `compare(u, v) == key(u).cmp(&key(v))`.
    pub fn key(&self, m: Monomial) -> u128 {
        let w = self.rank_word(m);
        match self.kind {
            OrderKind::Lex => w as u128,
            OrderKind::DegLex => (m.degree() as u128) << 64 | w as u128,
            OrderKind::DegRevLex => {
                // the monomial owning the lowest differing rank bit is smaller
                let n = self.perm.len() as u32;
                let rev = if n == 0 { 0 } else { w.reverse_bits() >> (64 - n) };
                let mask = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
                (m.degree() as u128) << 64 | (!rev & mask) as u128
            }
        }
    }

    pub fn compare(&self, u: Monomial, v: Monomial) -> Ordering {
        self.key(u).cmp(&self.key(v))
    }

    /// Does variable `a` rank above variable `b`?
    pub fn var_greater(&self, a: usize, b: usize) -> bool {
        self.pos[a] > self.pos[b]
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind.name())?;
        if self.perm.iter().enumerate().any(|(i, &v)| v != i + 1) {
            let p: Vec<String> = self.perm.iter().map(|v| v.to_string()).collect();
            write!(f, ":{}", p.join(","))?;
        }
        Ok(())
    }
}

/// All permutations of `1..=n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (1..=n).collect();
    let mut out = vec![p.clone()];
    loop {
        let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
        p.swap(i - 1, j);
        p[i..].reverse();
        out.push(p.clone());
    }
}

/// The `3·n!` orders: every kind under every relabelling of the variables.
pub fn stock_orders(n: usize) -> Vec<MonomialOrder> {
    let perms = permutations(n);
    OrderKind::ALL
        .iter()
        .flat_map(|&k| perms.iter().map(move |p| MonomialOrder::new(k, p.clone()).expect("valid")))
        .collect()
}
