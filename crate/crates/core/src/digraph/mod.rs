//! Rooted digraphs and the directed branching greedoid on their edges.
//!
//! Vertices are `0..n`. The edge list order is significant: edges are the
//! ground set of the greedoid and [`EdgeSubset`] bitmasks index into it.
//! Vertex and edge sets are bitmasks, so at most 64 of each are supported.

pub mod canon;

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 64;
pub const MAX_EDGES: usize = 64;
/// Bound for the brute-force oracles that enumerate edge subsets.
pub const MAX_ORACLE_EDGES: usize = 20;

pub type Edge = (usize, usize);

/// Set of edge positions.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeSubset(pub u64);

impl EdgeSubset {
    pub fn empty() -> Self {
        Self(0)
    }

    /// The first `m` edges.
    pub fn full(m: usize) -> Self {
        if m >= 64 {
            Self(u64::MAX)
        } else {
            Self((1u64 << m) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        Self(1 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        Self(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Self {
        Self(self.0 & !(1 << i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        Self(self.0 | other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        Self(self.0 & !other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        BitIter(self.0)
    }
}

impl fmt::Debug for EdgeSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub(crate) struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

/// Subsets of `0..m` with exactly `k` elements, in increasing numeric order.
pub(crate) fn subsets_of_size(m: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit = if m >= 64 { u64::MAX } else { 1u64 << m };
    let first = if k == 0 { 0 } else { (1u64 << k) - 1 };
    let mut cur = (k <= m).then_some(first);
    std::iter::from_fn(move || {
        let out = cur?;
        cur = if out == 0 {
            None
        } else {
            // Gosper's hack
            let c = out & out.wrapping_neg();
            let r = out + c;
            let next = (((r ^ out) >> 2) / c) | r;
            (next < limit && r != 0).then_some(next)
        };
        Some(out)
    })
}

/// Digraph without a distinguished root, as read from a McKay line.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    edges: Vec<Edge>,
}

impl Digraph {
    pub fn new(n: usize, edges: Vec<Edge>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDigraph("order must be positive".into()));
        }
        if n > MAX_VERTICES {
            return Err(Error::TooLarge {
                what: "vertex count",
                limit: MAX_VERTICES,
            });
        }
        if edges.len() > MAX_EDGES {
            return Err(Error::TooLarge {
                what: "edge count",
                limit: MAX_EDGES,
            });
        }
        let mut seen = std::collections::HashSet::new();
        for &(u, v) in &edges {
            if u >= n || v >= n {
                return Err(Error::InvalidDigraph(format!(
                    "edge ({u},{v}) out of range for order {n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidDigraph(format!("self-loop at {u}")));
            }
            if !seen.insert((u, v)) {
                return Err(Error::InvalidDigraph(format!("duplicate edge ({u},{v})")));
            }
        }
        Ok(Self { n, edges })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn rooted(&self, root: usize) -> Result<RootedDigraph> {
        RootedDigraph::new(self.n, self.edges.clone(), root)
    }

    pub fn to_mckay(&self) -> String {
        mckay_line(self.n, &self.edges)
    }
}

fn mckay_line(n: usize, edges: &[Edge]) -> String {
    let mut s = format!("{} {}", n, edges.len());
    for &(u, v) in edges {
        s.push_str(&format!(" {u} {v}"));
    }
    s
}

/// Parses `"<order> <size> <tail> <head> ..."`.
pub fn parse_mckay(line: &str) -> Result<Digraph> {
    let tokens: Vec<usize> = line
        .split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::Format(format!("not a non-negative integer: {t:?}")))
        })
        .collect::<Result<_>>()?;
    let [n, m, rest @ ..] = tokens.as_slice() else {
        return Err(Error::Format("expected order and size".into()));
    };
    if rest.len() != 2 * m {
        return Err(Error::Format(format!(
            "size {m} needs {} endpoint values, found {}",
            2 * m,
            rest.len()
        )));
    }
    let edges = rest.chunks_exact(2).map(|c| (c[0], c[1])).collect();
    Digraph::new(*n, edges).map_err(|e| match e {
        Error::InvalidDigraph(msg) => Error::Format(msg),
        other => other,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootedDigraph {
    n: usize,
    edges: Vec<Edge>,
    root: usize,
}

impl RootedDigraph {
    pub fn new(n: usize, edges: Vec<Edge>, root: usize) -> Result<Self> {
        let g = Digraph::new(n, edges)?;
        if root >= n {
            return Err(Error::InvalidDigraph(format!(
                "root {root} out of range for order {n}"
            )));
        }
        Ok(Self {
            n,
            edges: g.edges,
            root,
        })
    }

    pub fn from_mckay(line: &str, root: usize) -> Result<Self> {
        parse_mckay(line)?.rooted(root)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn unrooted(&self) -> Digraph {
        Digraph {
            n: self.n,
            edges: self.edges.clone(),
        }
    }

    pub fn to_mckay(&self) -> String {
        mckay_line(self.n, &self.edges)
    }

    pub fn all_edges(&self) -> EdgeSubset {
        EdgeSubset::full(self.edges.len())
    }

    fn check_oracle_size(&self) -> Result<()> {
        if self.edges.len() > MAX_ORACLE_EDGES {
            return Err(Error::TooLarge {
                what: "edge count for brute-force enumeration",
                limit: MAX_ORACLE_EDGES,
            });
        }
        Ok(())
    }

    /// Vertices reachable from the root using only edges of `x`.
    pub fn reach(&self, x: EdgeSubset) -> u64 {
        let mut out = [0u64; MAX_VERTICES];
        for i in x.iter() {
            let (u, v) = self.edges[i];
            out[u] |= 1 << v;
        }
        closure(&out, 1 << self.root)
    }

    /// Rank in the directed branching greedoid: the number of vertices
    /// reachable from the root via `x`, minus one.
    pub fn rank(&self, x: EdgeSubset) -> usize {
        self.reach(x).count_ones() as usize - 1
    }

    pub fn full_rank(&self) -> usize {
        self.rank(self.all_edges())
    }

    /// Whether `a` is the edge set of an arborescence rooted at the root.
    pub fn is_feasible(&self, a: EdgeSubset) -> bool {
        let mut heads = 0u64;
        for i in a.iter() {
            let v = self.edges[i].1;
            if v == self.root || heads >> v & 1 == 1 {
                return false;
            }
            heads |= 1 << v;
        }
        // With in-degree at most one and no edge into the root, the edge set
        // is an arborescence iff every tail is reachable from the root.
        let reached = self.reach(a);
        a.iter().all(|i| reached >> self.edges[i].0 & 1 == 1)
    }

    /// All feasible sets, including the empty set.
    pub fn feasible_sets(&self) -> Result<Vec<EdgeSubset>> {
        self.check_oracle_size()?;
        Ok((0..1u64 << self.edges.len())
            .map(EdgeSubset)
            .filter(|&a| self.is_feasible(a))
            .collect())
    }

    /// Edges lying in no feasible set: an edge `(u, v)` is a greedoid loop iff
    /// `v` is the root or every directed path from the root to `u` passes
    /// through `v`.
    pub fn greedoid_loops(&self) -> EdgeSubset {
        let mut loops = EdgeSubset::empty();
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if v == self.root {
                loops = loops.with(i);
                continue;
            }
            let avoiding: Vec<usize> = (0..self.edges.len())
                .filter(|&j| self.edges[j].0 != v && self.edges[j].1 != v)
                .collect();
            let x = EdgeSubset(avoiding.iter().fold(0, |m, &j| m | 1 << j));
            if self.reach(x) >> u & 1 == 0 {
                loops = loops.with(i);
            }
        }
        loops
    }

    pub fn delete(&self, e: usize) -> RootedDigraph {
        let mut edges = self.edges.clone();
        edges.remove(e);
        RootedDigraph {
            n: self.n,
            edges,
            root: self.root,
        }
    }

    /// Contracts a root out-edge: its head is identified with the root,
    /// resulting self-loops are dropped, duplicate edges are collapsed to
    /// their first occurrence, and the remaining vertices keep their
    /// relative order.
    pub fn contract(&self, e: usize) -> Result<RootedDigraph> {
        let &(u, v) = self.edges.get(e).ok_or(Error::InvalidContraction(e))?;
        if u != self.root || v == self.root {
            return Err(Error::InvalidContraction(e));
        }
        let relabel = |x: usize| {
            let x = if x == v { self.root } else { x };
            if x > v {
                x - 1
            } else {
                x
            }
        };
        let mut edges = Vec::with_capacity(self.edges.len());
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if i == e {
                continue;
            }
            let (a, b) = (relabel(a), relabel(b));
            if a != b && !edges.contains(&(a, b)) {
                edges.push((a, b));
            }
        }
        Ok(RootedDigraph {
            n: self.n - 1,
            edges,
            root: relabel(self.root),
        })
    }

    fn undirected_adjacency(&self) -> Vec<u64> {
        let mut adj = vec![0u64; self.n];
        for &(u, v) in &self.edges {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        adj
    }

    /// Connected components of the underlying graph with the root removed,
    /// ordered by smallest vertex.
    fn components_without_root(&self) -> Vec<u64> {
        let adj = self.undirected_adjacency();
        let mut remaining = ((1u128 << self.n) - 1) as u64 & !(1 << self.root);
        let mut comps = Vec::new();
        while remaining != 0 {
            let start = remaining & remaining.wrapping_neg();
            let mut comp = start;
            let mut frontier = start;
            while frontier != 0 {
                let mut next = 0;
                for x in BitIter(frontier) {
                    next |= adj[x];
                }
                next &= remaining & !comp;
                comp |= next;
                frontier = next;
            }
            remaining &= !comp;
            comps.push(comp);
        }
        comps
    }

    /// Whether the root is an articulation point of the underlying
    /// undirected multigraph.
    pub fn is_separable(&self) -> bool {
        let root_nbrs = self.undirected_adjacency()[self.root];
        self.components_without_root()
            .iter()
            .filter(|&&c| c & root_nbrs != 0)
            .count()
            >= 2
    }

    /// Direct summands at the root: one per component of the underlying
    /// graph minus the root that touches the root. Components not touching
    /// the root are kept with the first summand. Returns `[self]` when the
    /// digraph is not separable.
    pub fn split_at_root(&self) -> Vec<RootedDigraph> {
        let root_nbrs = self.undirected_adjacency()[self.root];
        let comps = self.components_without_root();
        let (touching, detached): (Vec<u64>, Vec<u64>) =
            comps.into_iter().partition(|&c| c & root_nbrs != 0);
        if touching.len() < 2 {
            return vec![self.clone()];
        }
        let extra = detached.iter().fold(0, |m, c| m | c);
        touching
            .iter()
            .enumerate()
            .map(|(k, &c)| {
                let verts = c | 1 << self.root | if k == 0 { extra } else { 0 };
                self.induced(verts)
            })
            .collect()
    }

    /// Sub-digraph on the vertex mask `verts`, vertices renumbered in
    /// increasing order.
    fn induced(&self, verts: u64) -> RootedDigraph {
        let index = |x: usize| (verts & ((1u64 << x) - 1)).count_ones() as usize;
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| verts >> u & 1 == 1 && verts >> v & 1 == 1)
            .map(|&(u, v)| (index(u), index(v)))
            .collect();
        RootedDigraph {
            n: verts.count_ones() as usize,
            edges,
            root: index(self.root),
        }
    }

    pub fn has_directed_cycle(&self) -> bool {
        !is_acyclic(self.n, &self.edges, self.all_edges())
    }

    /// Minimum number of edges whose removal leaves an acyclic digraph that
    /// still spans, i.e. keeps the full rank.
    pub fn min_edges_to_spanning_acyclic(&self) -> Result<usize> {
        self.check_oracle_size()?;
        let m = self.edges.len();
        let full = self.all_edges();
        let target = self.full_rank();
        for k in 0..=m {
            for removed in subsets_of_size(m, k) {
                let rest = full.difference(EdgeSubset(removed));
                if is_acyclic(self.n, &self.edges, rest) && self.rank(rest) == target {
                    return Ok(k);
                }
            }
        }
        unreachable!("removing every edge always leaves an acyclic spanning set of rank 0 or less")
    }

    /// Number of bases: feasible sets of size `r(E)`.
    pub fn count_spanning_arborescences(&self) -> Result<u64> {
        self.check_oracle_size()?;
        let r = self.full_rank();
        Ok(subsets_of_size(self.edges.len(), r)
            .filter(|&a| self.is_feasible(EdgeSubset(a)))
            .count() as u64)
    }

    /// Lexicographically minimal adjacency encoding over all relabellings
    /// (root-fixing relabellings when `fix_root`).
    pub fn canonical_form(&self, fix_root: bool) -> Result<Vec<u8>> {
        if self.n > canon::MAX_CANON_VERTICES {
            return Err(Error::TooLarge {
                what: "vertex count for canonical form",
                limit: canon::MAX_CANON_VERTICES,
            });
        }
        let code = canon::canonical_code(self.n, &self.edges, fix_root.then_some(self.root));
        let mut out = vec![self.n as u8, fix_root as u8];
        out.extend_from_slice(&code.to_be_bytes());
        Ok(out)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> RootedDigraph {
        RootedDigraph {
            n: self.n,
            edges: self
                .edges
                .iter()
                .map(|&(u, v)| (perm[u], perm[v]))
                .collect(),
            root: perm[self.root],
        }
    }

    pub fn with_root(&self, root: usize) -> Result<RootedDigraph> {
        RootedDigraph::new(self.n, self.edges.clone(), root)
    }
}

impl fmt::Display for RootedDigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (root {})", self.to_mckay(), self.root)
    }
}

/// Fixpoint of forward reachability from `start` along the out-masks.
#[inline]
pub(crate) fn closure(out: &[u64], start: u64) -> u64 {
    let mut reached = start;
    let mut frontier = start;
    while frontier != 0 {
        let mut next = 0;
        for x in BitIter(frontier) {
            next |= out[x];
        }
        frontier = next & !reached;
        reached |= next;
    }
    reached
}

fn is_acyclic(n: usize, edges: &[Edge], x: EdgeSubset) -> bool {
    let mut preds = vec![0u64; n];
    for i in x.iter() {
        let (u, v) = edges[i];
        preds[v] |= 1 << u;
    }
    let mut remaining = ((1u128 << n) - 1) as u64;
    while remaining != 0 {
        let Some(src) = BitIter(remaining).find(|&v| preds[v] & remaining == 0) else {
            return false;
        };
        remaining &= !(1 << src);
    }
    true
}
