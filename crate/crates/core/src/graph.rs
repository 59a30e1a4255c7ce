//! Undirected simple graphs on vertices `0..n` with hop-distance and
//! connectivity primitives.
//!
//! Adjacency rows are 64-bit masks, so every graph has at most
//! [`MAX_VERTICES`] vertices.

use std::fmt;

use thiserror::Error;

pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has {0} vertices, at most {MAX_VERTICES} are supported")]
    TooManyVertices(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge {{{0}, {1}}} references a vertex outside 0..{2}")]
    VertexOutOfRange(usize, usize, usize),
}

/// A set of vertices stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1u64 << v)
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Canonical tie-break order: fewer elements first, then the
    /// lexicographically smaller sorted element list.
    pub fn canonical_cmp(self, other: Self) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        match self.len().cmp(&other.len()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        // Same cardinality: the first differing element decides.
        if self.0 & (diff & diff.wrapping_neg()) != 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = VertexSet::EMPTY;
        for v in iter {
            set.insert(v);
        }
        set
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for VertexIter {}

/// Hop distance; `Unreachable` compares greater than every finite distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(u32),
    Unreachable,
}

impl Distance {
    pub fn finite(self) -> Option<u32> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Unreachable => None,
        }
    }

    /// True when strictly farther than `limit` hops.
    pub fn exceeds(self, limit: u32) -> bool {
        match self {
            Distance::Finite(d) => d > limit,
            Distance::Unreachable => true,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Unreachable => write!(f, "inf"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<VertexSet>,
}

impl Graph {
    /// The edgeless graph `I_n`.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph {
            adj: vec![VertexSet::EMPTY; n],
        })
    }

    /// Builds a graph from an edge list; duplicate edges collapse.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub(crate) fn from_adjacency(adj: Vec<VertexSet>) -> Self {
        debug_assert!(adj.len() <= MAX_VERTICES);
        debug_assert!(adj
            .iter()
            .enumerate()
            .all(|(u, row)| !row.contains(u) && row.iter().all(|v| adj[v].contains(u))));
        Graph { adj }
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for u in 0..n {
            g.adj[u] = VertexSet::full(n).without(u);
        }
        Ok(g)
    }

    pub fn star(n: usize, center: usize) -> Result<Self, GraphError> {
        Graph::from_edges(n, (0..n).filter(|&v| v != center).map(|v| (center, v)))
    }

    pub fn path(n: usize) -> Result<Self, GraphError> {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v)))
    }

    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(GraphError::VertexOutOfRange(u, v, n));
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        if u < self.n() && v < self.n() {
            self.adj[u].remove(v);
            self.adj[v].remove(u);
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].contains(v)
    }

    pub fn neighbors(&self, u: usize) -> VertexSet {
        self.adj[u]
    }

    pub fn adjacency(&self) -> &[VertexSet] {
        &self.adj
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|row| row.len()).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, row) in self.adj.iter().enumerate() {
            out.extend(row.iter().filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    pub fn is_empty_graph(&self) -> bool {
        self.adj.iter().all(|row| row.is_empty())
    }

    /// BFS distances from `source`.
    pub fn distances_from(&self, source: usize) -> Vec<Distance> {
        let n = self.n();
        let mut dist = vec![Distance::Unreachable; n];
        dist[source] = Distance::Finite(0);
        let mut visited = VertexSet::singleton(source);
        let mut frontier = visited;
        let mut level = 0;
        while !frontier.is_empty() {
            level += 1;
            let mut next = VertexSet::EMPTY;
            for u in frontier.iter() {
                next = next.union(self.adj[u]);
            }
            next = next.difference(visited);
            for v in next.iter() {
                dist[v] = Distance::Finite(level);
            }
            visited = visited.union(next);
            frontier = next;
        }
        dist
    }

    /// Vertices within `radius` hops of `source` (including `source`).
    pub fn ball(&self, source: usize, radius: u32) -> VertexSet {
        ball_in(&self.adj, source, radius)
    }

    pub fn all_pairs_distances(&self) -> DistanceMatrix {
        let n = self.n();
        let mut table = Vec::with_capacity(n * n);
        for u in 0..n {
            table.extend(self.distances_from(u));
        }
        DistanceMatrix { n, table }
    }

    /// `diam(u)`: largest distance from `u`, `Unreachable` if some vertex is.
    pub fn eccentricity(&self, u: usize) -> Distance {
        self.distances_from(u)
            .into_iter()
            .max()
            .unwrap_or(Distance::Finite(0))
    }

    /// Maximum finite distance when connected, otherwise `Unreachable`.
    pub fn diameter(&self) -> Distance {
        (0..self.n())
            .map(|u| self.eccentricity(u))
            .max()
            .unwrap_or(Distance::Finite(0))
    }

    pub fn component_count(&self) -> usize {
        let mut seen = VertexSet::EMPTY;
        let mut count = 0;
        for u in 0..self.n() {
            if !seen.contains(u) {
                count += 1;
                seen = seen.union(self.ball(u, u32::MAX));
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Connected and `|E| = n - 1`.
    pub fn is_tree(&self) -> bool {
        self.n() >= 1 && self.edge_count() + 1 == self.n() && self.is_connected()
    }

    /// Bridges `(u, v)` with `u < v`, sorted, found with one low-link DFS pass.
    pub fn bridges(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut order = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut counter = 0;
        let mut out = Vec::new();
        // (vertex, parent, unexplored neighbours)
        let mut stack: Vec<(usize, usize, VertexSet)> = Vec::new();
        for root in 0..n {
            if order[root] != usize::MAX {
                continue;
            }
            order[root] = counter;
            low[root] = counter;
            counter += 1;
            stack.push((root, usize::MAX, self.adj[root]));
            while let Some(top) = stack.last_mut() {
                let (u, parent) = (top.0, top.1);
                let next = top.2.iter().next();
                match next {
                    Some(v) => {
                        top.2.remove(v);
                        if v == parent {
                            continue;
                        }
                        if order[v] == usize::MAX {
                            order[v] = counter;
                            low[v] = counter;
                            counter += 1;
                            stack.push((v, u, self.adj[v]));
                        } else {
                            low[u] = low[u].min(order[v]);
                        }
                    }
                    None => {
                        stack.pop();
                        if parent != usize::MAX {
                            low[parent] = low[parent].min(low[u]);
                            if low[u] > order[parent] {
                                out.push((parent.min(u), parent.max(u)));
                            }
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn is_bridge(&self, u: usize, v: usize) -> bool {
        self.has_edge(u, v) && self.bridges().contains(&(u.min(v), u.max(v)))
    }

    /// Connected, at least two vertices, and bridgeless.
    pub fn is_two_edge_connected(&self) -> bool {
        self.n() >= 2 && self.is_connected() && self.bridges().is_empty()
    }

    /// Edges as `u-v` separated by spaces, sorted; empty string for `I_n`.
    pub fn edge_list_string(&self) -> String {
        self.edges()
            .iter()
            .map(|(u, v)| format!("{u}-{v}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges())
    }
}

pub(crate) fn ball_in(adj: &[VertexSet], source: usize, radius: u32) -> VertexSet {
    let mut visited = VertexSet::singleton(source);
    let mut frontier = visited;
    let mut level = 0;
    while level < radius && !frontier.is_empty() {
        let mut next = VertexSet::EMPTY;
        for u in frontier.iter() {
            next = next.union(adj[u]);
        }
        frontier = next.difference(visited);
        visited = visited.union(frontier);
        level += 1;
    }
    visited
}

/// Row-major `n x n` table of hop distances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    table: Vec<Distance>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: usize, v: usize) -> Distance {
        self.table[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[Distance] {
        &self.table[u * self.n..(u + 1) * self.n]
    }
}
