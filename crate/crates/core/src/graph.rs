//! Simple graphs, two-terminal graphs and the structural primitives used
//! throughout the crate: components of spanning subgraphs, bridges, edge
//! connectivity, minimum separators, contraction, subdivision and the
//! bridge-contracted skeleton.
//!
//! Vertices are `0..n`. Edges are unordered pairs stored as `(u, v)` with
//! `u < v`, sorted and deduplicated, so an edge index is stable for the
//! lifetime of a value.

use std::collections::VecDeque;
use std::fmt;

use itertools::Itertools;
use num_integer::binomial;

use crate::dsu::DisjointSets;
use crate::error::{Error, Result};

/// Largest number of subsets `count_min_separators` will inspect.
pub const MIN_SEPARATOR_GUARD: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    /// Builds a simple graph, normalizing each pair to `u < v` and sorting.
    /// Self-loops, duplicate edges and out-of-range vertices are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexIndex {
                    vertex: u.max(v),
                    n,
                });
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(format!(
                "duplicate edge ({}, {})",
                w[0].0, w[0].1
            )));
        }
        Ok(Self { n, edges: list })
    }

    /// Like [`SimpleGraph::new`] but silently merges parallel pairs and drops loops.
    pub(crate) fn from_pairs_merged(
        n: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Self {
        let mut edges: Vec<_> = pairs
            .into_iter()
            .filter(|(u, v)| u != v)
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        Self { n, edges }
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            edges: Vec::new(),
        }
    }

    pub fn complete(n: usize) -> Self {
        Self {
            n,
            edges: (0..n).tuple_combinations().collect(),
        }
    }

    pub fn path(n: usize) -> Self {
        Self {
            n,
            edges: (1..n).map(|v| (v - 1, v)).collect(),
        }
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a simple cycle needs at least 3 vertices");
        Self::from_pairs_merged(n, (0..n).map(|v| (v, (v + 1) % n)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> Result<(usize, usize)> {
        self.edges.get(e).copied().ok_or(Error::EdgeIndex {
            index: e,
            len: self.edges.len(),
        })
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// δ(G); zero for the empty vertex set.
    pub fn min_degree(&self) -> usize {
        self.degrees().into_iter().min().unwrap_or(0)
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.count_components_with(|_| true) == 1
    }

    fn count_components_with(&self, mut keep: impl FnMut(usize) -> bool) -> usize {
        let mut dsu = DisjointSets::new(self.n);
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if keep(i) {
                dsu.union(u, v);
            }
        }
        dsu.sets()
    }

    /// Connected components of the spanning subgraph with edge set `kept`,
    /// each sorted, ordered by smallest vertex.
    pub fn components(&self, kept: &EdgeSubset) -> Result<Vec<Vec<usize>>> {
        kept.check(self.m())?;
        let mut dsu = DisjointSets::new(self.n);
        for &e in kept.indices() {
            let (u, v) = self.edges[e];
            dsu.union(u, v);
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; self.n];
        for v in 0..self.n {
            let r = dsu.find(v);
            if slot[r] == usize::MAX {
                slot[r] = groups.len();
                groups.push(Vec::new());
            }
            groups[slot[r]].push(v);
        }
        Ok(groups)
    }

    /// Edges whose deletion disconnects the graph (low-link DFS).
    pub fn bridges(&self) -> Result<Vec<usize>> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let adj: Vec<Vec<(usize, usize)>> = {
            let mut adj = vec![Vec::new(); self.n];
            for (i, &(u, v)) in self.edges.iter().enumerate() {
                adj[u].push((v, i));
                adj[v].push((u, i));
            }
            adj
        };
        let mut order = vec![usize::MAX; self.n];
        let mut low = vec![0; self.n];
        let mut out = Vec::new();
        let mut clock = 0;
        // (vertex, edge used to enter it, next adjacency position)
        let mut stack: Vec<(usize, usize, usize)> = Vec::new();
        for root in 0..self.n {
            if order[root] != usize::MAX {
                continue;
            }
            order[root] = clock;
            low[root] = clock;
            clock += 1;
            stack.push((root, usize::MAX, 0));
            while let Some(&mut (v, via, ref mut pos)) = stack.last_mut() {
                if *pos < adj[v].len() {
                    let (w, e) = adj[v][*pos];
                    *pos += 1;
                    if e == via {
                        continue;
                    }
                    if order[w] == usize::MAX {
                        order[w] = clock;
                        low[w] = clock;
                        clock += 1;
                        stack.push((w, e, 0));
                    } else {
                        low[v] = low[v].min(order[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(parent, _, _)) = stack.last() {
                        low[parent] = low[parent].min(low[v]);
                        if low[v] > order[parent] {
                            out.push(via);
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// λ(G): minimum over `v != 0` of the unit-capacity max flow between 0 and v.
    pub fn edge_connectivity(&self) -> Result<usize> {
        if self.n < 2 {
            return Err(Error::Precondition(
                "edge connectivity needs at least 2 vertices".into(),
            ));
        }
        if !self.is_connected() {
            return Ok(0);
        }
        let mut best = usize::MAX;
        for t in 1..self.n {
            best = best.min(self.max_flow(0, t, best));
        }
        Ok(best)
    }

    /// Unit-capacity undirected max flow, stopping early once `limit` is reached.
    fn max_flow(&self, s: usize, t: usize, limit: usize) -> usize {
        let n = self.n;
        let mut cap = vec![0i32; n * n];
        for &(u, v) in &self.edges {
            cap[u * n + v] = 1;
            cap[v * n + u] = 1;
        }
        let mut flow = 0;
        let mut prev = vec![usize::MAX; n];
        while flow < limit {
            prev.iter_mut().for_each(|p| *p = usize::MAX);
            prev[s] = s;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                if x == t {
                    break;
                }
                for y in 0..n {
                    if prev[y] == usize::MAX && cap[x * n + y] > 0 {
                        prev[y] = x;
                        queue.push_back(y);
                    }
                }
            }
            if prev[t] == usize::MAX {
                break;
            }
            let mut y = t;
            while y != s {
                let x = prev[y];
                cap[x * n + y] -= 1;
                cap[y * n + x] += 1;
                y = x;
            }
            flow += 1;
        }
        flow
    }

    /// s(G): the number of edge sets of size λ(G) whose removal disconnects G.
    pub fn count_min_separators(&self) -> Result<u64> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let lambda = self.edge_connectivity()?;
        let subsets: u64 = binomial(self.m() as u64, lambda as u64);
        if subsets > MIN_SEPARATOR_GUARD {
            return Err(Error::Guard(format!(
                "C({}, {}) = {} separator candidates exceed {}",
                self.m(),
                lambda,
                subsets,
                MIN_SEPARATOR_GUARD
            )));
        }
        let mut count = 0;
        for removed in (0..self.m()).combinations(lambda) {
            let mut gone = vec![false; self.m()];
            for e in removed {
                gone[e] = true;
            }
            if self.count_components_with(|e| !gone[e]) > 1 {
                count += 1;
            }
        }
        Ok(count)
    }

    /// G * e together with the vertex map `old -> new`. The higher endpoint is
    /// merged into the lower one; parallel edges created by the identification
    /// are merged.
    pub fn contract_edge_with_map(&self, e: usize) -> Result<(SimpleGraph, Vec<usize>)> {
        let (u, v) = self.edge(e)?;
        let map: Vec<usize> = (0..self.n)
            .map(|x| match x.cmp(&v) {
                std::cmp::Ordering::Less => x,
                std::cmp::Ordering::Equal => u,
                std::cmp::Ordering::Greater => x - 1,
            })
            .collect();
        let g = Self::from_pairs_merged(
            self.n - 1,
            self.edges
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != e)
                .map(|(_, &(a, b))| (map[a], map[b])),
        );
        Ok((g, map))
    }

    pub fn contract_edge(&self, e: usize) -> Result<SimpleGraph> {
        Ok(self.contract_edge_with_map(e)?.0)
    }

    /// Replaces edge `vw` by `vz`, `zw` with the new vertex `z = n`.
    pub fn subdivide_edge(&self, e: usize) -> Result<SimpleGraph> {
        let (u, v) = self.edge(e)?;
        let z = self.n;
        let mut edges: Vec<_> = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != e)
            .map(|(_, &p)| p)
            .collect();
        edges.push((u, z));
        edges.push((v, z));
        Self::new(self.n + 1, edges)
    }

    pub fn remove_edge(&self, e: usize) -> Result<SimpleGraph> {
        self.edge(e)?;
        let mut edges = self.edges.clone();
        edges.remove(e);
        Ok(Self { n: self.n, edges })
    }

    pub fn add_edge(&self, u: usize, v: usize) -> Result<SimpleGraph> {
        Self::new(self.n, self.edges.iter().copied().chain([(u, v)]))
    }

    /// Applies `perm`, where `perm[old] = new`.
    pub fn relabel(&self, perm: &[usize]) -> SimpleGraph {
        assert_eq!(perm.len(), self.n);
        Self::from_pairs_merged(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
    }

    /// Induced subgraph on `vertices`, relabeled `0..k` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> SimpleGraph {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i;
        }
        Self::from_pairs_merged(
            vertices.len(),
            self.edges
                .iter()
                .filter(|&&(u, v)| pos[u] != usize::MAX && pos[v] != usize::MAX)
                .map(|&(u, v)| (pos[u], pos[v])),
        )
    }

    /// Breadth-first distances from `source`; `None` for unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let adj = self.adjacency();
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            let d = dist[x].unwrap();
            for &y in &adj[x] {
                if dist[y].is_none() {
                    dist[y] = Some(d + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    pub fn distance(&self, u: usize, v: usize) -> Result<usize> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::VertexIndex {
                    vertex: x,
                    n: self.n,
                });
            }
        }
        self.distances_from(u)[v].ok_or(Error::Disconnected)
    }

    pub fn diameter(&self) -> Result<usize> {
        let mut best = 0;
        for u in 0..self.n {
            for d in self.distances_from(u) {
                best = best.max(d.ok_or(Error::Disconnected)?);
            }
        }
        Ok(best)
    }

    /// The skeleton G′ (every bridge contracted) and the surjection
    /// `V(G) -> V(G′)`. Skeleton vertices are numbered by their smallest
    /// preimage.
    pub fn skeleton(&self) -> Result<(SimpleGraph, Vec<usize>)> {
        let bridges = self.bridges()?;
        let mut is_bridge = vec![false; self.m()];
        let mut dsu = DisjointSets::new(self.n);
        for &e in &bridges {
            is_bridge[e] = true;
            let (u, v) = self.edges[e];
            dsu.union(u, v);
        }
        let mut label = vec![usize::MAX; self.n];
        let mut map = vec![0; self.n];
        let mut next = 0;
        for (v, slot) in map.iter_mut().enumerate() {
            let r = dsu.find(v);
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            *slot = label[r];
        }
        let g = Self::from_pairs_merged(
            next,
            self.edges
                .iter()
                .enumerate()
                .filter(|&(i, _)| !is_bridge[i])
                .map(|(_, &(u, v))| (map[u], map[v])),
        );
        Ok((g, map))
    }
}

impl fmt::Display for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} [", self.n)?;
        for (i, (u, v)) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "]")
    }
}

/// A set of edge indices into a fixed host graph.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct EdgeSubset {
    indices: Vec<usize>,
}

impl EdgeSubset {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn all(m: usize) -> Self {
        Self {
            indices: (0..m).collect(),
        }
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        let mut indices: Vec<_> = indices.into_iter().collect();
        indices.sort_unstable();
        indices.dedup();
        Self { indices }
    }

    /// Bit `i` of `mask` selects edge `i`.
    pub fn from_mask(mask: u64) -> Self {
        Self {
            indices: (0..64).filter(|i| mask >> i & 1 == 1).collect(),
        }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.indices.binary_search(&e).is_ok()
    }

    /// Every edge of an `m`-edge graph not in this subset.
    pub fn complement(&self, m: usize) -> Self {
        Self {
            indices: (0..m).filter(|&e| !self.contains(e)).collect(),
        }
    }

    fn check(&self, m: usize) -> Result<()> {
        match self.indices.last() {
            Some(&e) if e >= m => Err(Error::EdgeIndex { index: e, len: m }),
            _ => Ok(()),
        }
    }
}

/// A simple graph with an unordered pair of distinct terminals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwoTerminalGraph {
    graph: SimpleGraph,
    s: usize,
    t: usize,
}

impl TwoTerminalGraph {
    pub fn new(graph: SimpleGraph, s: usize, t: usize) -> Result<Self> {
        for x in [s, t] {
            if x >= graph.n() {
                return Err(Error::VertexIndex {
                    vertex: x,
                    n: graph.n(),
                });
            }
        }
        if s == t {
            return Err(Error::InvalidGraph("terminals must be distinct".into()));
        }
        Ok(Self { graph, s, t })
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn terminals(&self) -> (usize, usize) {
        (self.s, self.t)
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn m(&self) -> usize {
        self.graph.m()
    }

    pub fn relabel(&self, perm: &[usize]) -> TwoTerminalGraph {
        Self {
            graph: self.graph.relabel(perm),
            s: perm[self.s],
            t: perm[self.t],
        }
    }

    /// Empty iff the graph is connected (simplicity and distinct terminals
    /// are guaranteed by construction).
    pub fn validate(&self) -> Vec<Diagnostic> {
        validate_parts(self.graph.n(), self.graph.edges(), Some((self.s, self.t)))
    }

    /// True iff `kept` leaves exactly two components with s and t apart.
    pub fn is_split_subgraph(&self, kept: &EdgeSubset) -> Result<bool> {
        let comps = self.graph.components(kept)?;
        Ok(comps.len() == 2 && comps[0].contains(&self.s) != comps[0].contains(&self.t))
    }

    /// Skeleton images `(s′, t′)` of the terminals, or `None` when they coincide.
    pub fn projected_terminals(&self) -> Result<Option<(usize, usize)>> {
        let (_, map) = self.graph.skeleton()?;
        let (a, b) = (map[self.s], map[self.t]);
        Ok((a != b).then_some((a, b)))
    }

    /// The skeleton equipped with the projected terminals.
    pub fn projected_skeleton(&self) -> Result<Option<TwoTerminalGraph>> {
        let (skel, map) = self.graph.skeleton()?;
        let (a, b) = (map[self.s], map[self.t]);
        if a == b {
            return Ok(None);
        }
        Ok(Some(TwoTerminalGraph::new(skel, a, b)?))
    }

    /// Contraction that carries the terminals through the vertex map.
    pub fn contract_edge(&self, e: usize) -> Result<TwoTerminalGraph> {
        let (g, map) = self.graph.contract_edge_with_map(e)?;
        TwoTerminalGraph::new(g, map[self.s], map[self.t])
    }

    pub fn subdivide_edge(&self, e: usize) -> Result<TwoTerminalGraph> {
        TwoTerminalGraph::new(self.graph.subdivide_edge(e)?, self.s, self.t)
    }

    pub fn with_graph(&self, graph: SimpleGraph) -> Result<TwoTerminalGraph> {
        TwoTerminalGraph::new(graph, self.s, self.t)
    }
}

impl fmt::Display for TwoTerminalGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} T={{{},{}}}", self.graph, self.s, self.t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagnostic {
    SelfLoop(usize),
    DuplicateEdge(usize, usize),
    VertexOutOfRange(usize),
    NotConnected,
    TerminalsEqual,
    TerminalOutOfRange(usize),
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::SelfLoop(_) => write!(f, "self-loop"),
            Diagnostic::DuplicateEdge(..) => write!(f, "duplicate edge"),
            Diagnostic::VertexOutOfRange(_) => write!(f, "vertex out of range"),
            Diagnostic::NotConnected => write!(f, "not connected"),
            Diagnostic::TerminalsEqual => write!(f, "terminals not distinct"),
            Diagnostic::TerminalOutOfRange(_) => write!(f, "terminal out of range"),
        }
    }
}

/// Diagnoses raw graph data: one entry per violation, empty when the data
/// describes a connected simple graph with distinct terminals.
pub fn validate_parts(
    n: usize,
    edges: &[(usize, usize)],
    terminals: Option<(usize, usize)>,
) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut dsu = DisjointSets::new(n);
    for &(u, v) in edges {
        if u >= n || v >= n {
            out.push(Diagnostic::VertexOutOfRange(u.max(v)));
            continue;
        }
        if u == v {
            out.push(Diagnostic::SelfLoop(u));
            continue;
        }
        if !seen.insert((u.min(v), u.max(v))) {
            out.push(Diagnostic::DuplicateEdge(u.min(v), u.max(v)));
        }
        dsu.union(u, v);
    }
    if n > 1 && dsu.sets() > 1 {
        out.push(Diagnostic::NotConnected);
    }
    if let Some((s, t)) = terminals {
        for x in [s, t] {
            if x >= n {
                out.push(Diagnostic::TerminalOutOfRange(x));
            }
        }
        if s == t {
            out.push(Diagnostic::TerminalsEqual);
        }
    }
    out
}
