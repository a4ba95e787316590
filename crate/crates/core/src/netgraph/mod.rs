//! Undirected terminal multigraphs.
//!
//! A [`TerminalNetwork`] stores vertices, edges with stable ids, and an ordered
//! terminal list. Parallel edges are distinct entries; self-loops are never
//! stored. All operations are value-semantic: structural changes return a new
//! network.

mod format;
mod partition;

pub use format::{parse_graph, write_graph};
pub use partition::{all_partitions, CutRequests, Partition};

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::trace::TraceEvent;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub type VertexSet = BTreeSet<VertexId>;
pub type EdgeSet = BTreeSet<EdgeId>;

/// Builds a vertex set from raw ids.
pub fn vset<I: IntoIterator<Item = u32>>(ids: I) -> VertexSet {
    ids.into_iter().map(VertexId).collect()
}

/// Builds an edge set from raw ids.
pub fn eset<I: IntoIterator<Item = u32>>(ids: I) -> EdgeSet {
    ids.into_iter().map(EdgeId).collect()
}

/// An undirected multigraph with a distinguished, ordered terminal list.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TerminalNetwork {
    vertices: VertexSet,
    /// Endpoints are stored with the smaller id first.
    edges: BTreeMap<EdgeId, (VertexId, VertexId)>,
    terminals: Vec<VertexId>,
    next_edge: u32,
}

impl TerminalNetwork {
    pub fn new() -> Self {
        TerminalNetwork {
            next_edge: 1,
            ..Default::default()
        }
    }

    /// A network on vertices `1..=n` with no edges and no terminals.
    pub fn with_vertices(n: u32) -> Self {
        let mut g = Self::new();
        for v in 1..=n {
            g.vertices.insert(VertexId(v));
        }
        g
    }

    pub fn add_vertex(&mut self, v: VertexId) -> bool {
        self.vertices.insert(v)
    }

    /// Adds an edge with the next free id. Self-loops are discarded and yield `None`.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<Option<EdgeId>> {
        let id = EdgeId(self.next_edge.max(1));
        self.insert_edge(id, u, v)?;
        Ok(if u == v { None } else { Some(id) })
    }

    /// Inserts an edge under an explicit id. A self-loop consumes the id but is not stored.
    pub fn insert_edge(&mut self, id: EdgeId, u: VertexId, v: VertexId) -> Result<()> {
        self.require_vertex(u)?;
        self.require_vertex(v)?;
        if id.0 == 0 || id.0 < self.next_edge {
            return Err(Error::input(format!("edge id {id} already used")));
        }
        self.next_edge = self.next_edge.max(id.0 + 1);
        if u != v {
            self.edges.insert(id, if u < v { (u, v) } else { (v, u) });
        }
        Ok(())
    }

    pub fn add_terminal(&mut self, v: VertexId) -> Result<()> {
        self.require_vertex(v)?;
        if self.terminals.contains(&v) {
            return Err(Error::input(format!("duplicate terminal {v}")));
        }
        self.terminals.push(v);
        Ok(())
    }

    /// The same graph with terminal list `ts`.
    pub fn with_terminals(&self, ts: &[VertexId]) -> Result<TerminalNetwork> {
        let mut g = TerminalNetwork {
            terminals: Vec::new(),
            ..self.clone()
        };
        for &t in ts {
            g.add_terminal(t)?;
        }
        Ok(g)
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, VertexId, VertexId)> + '_ {
        self.edges.iter().map(|(&e, &(u, v))| (e, u, v))
    }

    pub fn edge_ids(&self) -> EdgeSet {
        self.edges.keys().copied().collect()
    }

    pub fn endpoints(&self, e: EdgeId) -> Option<(VertexId, VertexId)> {
        self.edges.get(&e).copied()
    }

    pub fn terminals(&self) -> &[VertexId] {
        &self.terminals
    }

    pub fn terminal_set(&self) -> VertexSet {
        self.terminals.iter().copied().collect()
    }

    pub fn is_terminal(&self, v: VertexId) -> bool {
        self.terminals.contains(&v)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.edges
            .values()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    /// Total terminal capacity `k = cap(T)`.
    pub fn k(&self) -> usize {
        let t = self.terminal_set();
        self.edges
            .values()
            .map(|(a, b)| t.contains(a) as usize + t.contains(b) as usize)
            .sum()
    }

    /// Whether `e` joins two terminals.
    pub fn joins_terminals(&self, e: EdgeId) -> bool {
        self.endpoints(e)
            .is_some_and(|(u, v)| self.is_terminal(u) && self.is_terminal(v))
    }

    fn require_vertex(&self, v: VertexId) -> Result<()> {
        if self.vertices.contains(&v) {
            Ok(())
        } else {
            Err(Error::input(format!("unknown vertex {v}")))
        }
    }

    fn require_subset(&self, s: &VertexSet) -> Result<()> {
        s.iter().try_for_each(|&v| self.require_vertex(v))
    }

    /// Sum of degrees over `s`, parallel edges counted individually.
    pub fn capacity(&self, s: &VertexSet) -> Result<usize> {
        self.require_subset(s)?;
        Ok(self
            .edges
            .values()
            .map(|(a, b)| s.contains(a) as usize + s.contains(b) as usize)
            .sum())
    }

    /// `cap_T(S) = cap(T ∩ S) + δ(S)`.
    pub fn t_capacity(&self, s: &VertexSet) -> Result<usize> {
        let inside: VertexSet = self
            .terminals
            .iter()
            .filter(|t| s.contains(t))
            .copied()
            .collect();
        Ok(self.capacity(&inside)? + self.boundary(s)?.len())
    }

    /// Edges with exactly one endpoint in `s`.
    pub fn boundary(&self, s: &VertexSet) -> Result<EdgeSet> {
        self.require_subset(s)?;
        Ok(self
            .edges
            .iter()
            .filter(|(_, (a, b))| s.contains(a) != s.contains(b))
            .map(|(&e, _)| e)
            .collect())
    }

    /// `E(A, B)`: edges with one endpoint in `a` and the other in `b`.
    pub fn edges_between(&self, a: &VertexSet, b: &VertexSet) -> Result<EdgeSet> {
        self.require_subset(a)?;
        self.require_subset(b)?;
        Ok(self
            .edges
            .iter()
            .filter(|(_, (u, v))| {
                (a.contains(u) && b.contains(v)) || (a.contains(v) && b.contains(u))
            })
            .map(|(&e, _)| e)
            .collect())
    }

    /// `N(S)`: vertices outside `s` adjacent to `s`.
    pub fn neighborhood(&self, s: &VertexSet) -> Result<VertexSet> {
        self.require_subset(s)?;
        let mut out = VertexSet::new();
        for &(u, v) in self.edges.values() {
            if s.contains(&u) && !s.contains(&v) {
                out.insert(v);
            } else if s.contains(&v) && !s.contains(&u) {
                out.insert(u);
            }
        }
        Ok(out)
    }

    /// Adjacency lists `(edge, neighbor)` in edge-id order.
    pub fn adjacency(&self) -> BTreeMap<VertexId, Vec<(EdgeId, VertexId)>> {
        let mut adj: BTreeMap<VertexId, Vec<(EdgeId, VertexId)>> =
            self.vertices.iter().map(|&v| (v, Vec::new())).collect();
        for (&e, &(u, v)) in &self.edges {
            adj.get_mut(&u).expect("endpoint").push((e, v));
            adj.get_mut(&v).expect("endpoint").push((e, u));
        }
        adj
    }

    /// Connected components, ordered by smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        self.components_without(&EdgeSet::new())
    }

    /// Connected components of `G - removed`.
    pub fn components_without(&self, removed: &EdgeSet) -> Vec<VertexSet> {
        let adj = self.adjacency();
        let mut seen = VertexSet::new();
        let mut out = Vec::new();
        for &start in &self.vertices {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = VertexSet::new();
            let mut queue = VecDeque::from([start]);
            comp.insert(start);
            while let Some(u) = queue.pop_front() {
                for &(e, w) in &adj[&u] {
                    if !removed.contains(&e) && seen.insert(w) {
                        comp.insert(w);
                        queue.push_back(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// The recursive instance `(G_S, T(S))` at `s`.
    ///
    /// `G_S` is `G[N[S]]` without edges inside `N(S)`; its terminals are
    /// `T ∩ S` (in terminal order) followed by `N(S)` (by id). Edge ids are
    /// inherited, so the returned edge set is the embedding `E(G_S) ⊆ E(G)`.
    pub fn recursive_instance(&self, s: &VertexSet) -> Result<(TerminalNetwork, EdgeSet)> {
        if s.is_empty() {
            return Err(Error::input("recursive instance needs a nonempty set"));
        }
        let nbr = self.neighborhood(s)?;
        let mut sub = TerminalNetwork::new();
        sub.next_edge = self.next_edge;
        for &v in s.iter().chain(&nbr) {
            sub.vertices.insert(v);
        }
        let mut embedding = EdgeSet::new();
        for (&e, &(u, v)) in &self.edges {
            if s.contains(&u) || s.contains(&v) {
                sub.edges.insert(e, (u, v));
                embedding.insert(e);
            }
        }
        for &t in &self.terminals {
            if s.contains(&t) {
                sub.terminals.push(t);
            }
        }
        sub.terminals.extend(nbr.iter().copied());
        Ok((sub, embedding))
    }

    /// Contracts `e`. The merged vertex keeps the terminal endpoint's id, or the
    /// smaller id when neither endpoint is a terminal. Parallel edges survive;
    /// edges that become self-loops are dropped.
    pub fn contract_edge(&self, e: EdgeId) -> Result<TerminalNetwork> {
        let (u, v) = self
            .endpoints(e)
            .ok_or_else(|| Error::input(format!("unknown edge {e}")))?;
        let (keep, gone) = match (self.is_terminal(u), self.is_terminal(v)) {
            (true, true) => return Err(Error::TerminalMerge(e.0)),
            (false, true) => (v, u),
            _ => (u, v),
        };
        let mut g = self.clone();
        g.vertices.remove(&gone);
        let mut edges = BTreeMap::new();
        for (&id, &(a, b)) in &self.edges {
            let a = if a == gone { keep } else { a };
            let b = if b == gone { keep } else { b };
            if a != b {
                edges.insert(id, if a < b { (a, b) } else { (b, a) });
            }
        }
        g.edges = edges;
        Ok(g)
    }

    /// Removes `v` together with its incident edges.
    pub fn delete_vertex(&self, v: VertexId) -> Result<TerminalNetwork> {
        self.require_vertex(v)?;
        let mut g = self.clone();
        g.vertices.remove(&v);
        g.edges.retain(|_, &mut (a, b)| a != v && b != v);
        g.terminals.retain(|&t| t != v);
        Ok(g)
    }

    /// Removes every vertex of `s` together with incident edges.
    pub fn delete_vertices(&self, s: &VertexSet) -> Result<TerminalNetwork> {
        self.require_subset(s)?;
        let mut g = self.clone();
        g.vertices.retain(|v| !s.contains(v));
        g.edges
            .retain(|_, (a, b)| !s.contains(a) && !s.contains(b));
        g.terminals.retain(|t| !s.contains(t));
        Ok(g)
    }

    /// Applies the local reduction rules exhaustively: terminal-free components
    /// are deleted, non-terminal leaves are deleted, and a non-terminal vertex
    /// of degree 2 has its lowest-id incident edge contracted.
    pub fn degree2_reduce(&self) -> (TerminalNetwork, Vec<TraceEvent>) {
        let mut g = self.clone();
        let mut events = Vec::new();
        while let Some(ev) = g.next_local_reduction() {
            g = g.apply_event(&ev).expect("local reduction is valid");
            events.push(ev);
        }
        (g, events)
    }

    /// The next local reduction that applies, if any.
    pub fn next_local_reduction(&self) -> Option<TraceEvent> {
        let terminals = self.terminal_set();
        for comp in self.components() {
            if comp.is_disjoint(&terminals) {
                return Some(TraceEvent::DeleteComponent(comp.into_iter().collect()));
            }
        }
        let adj = self.adjacency();
        for (&v, inc) in &adj {
            if !terminals.contains(&v) && inc.len() <= 1 {
                return Some(TraceEvent::DeleteLeaf(v));
            }
        }
        for (&v, inc) in &adj {
            if !terminals.contains(&v) && inc.len() == 2 {
                let e = inc.iter().map(|&(e, _)| e).min().expect("two edges");
                return Some(TraceEvent::Contract(e));
            }
        }
        None
    }

    /// Applies one structural trace event; informational events are no-ops.
    pub fn apply_event(&self, ev: &TraceEvent) -> Result<TerminalNetwork> {
        match ev {
            TraceEvent::Contract(e) => self.contract_edge(*e),
            TraceEvent::DeleteLeaf(v) => {
                if self.is_terminal(*v) {
                    return Err(Error::input(format!("cannot delete terminal {v}")));
                }
                if self.degree(*v) > 1 {
                    return Err(Error::input(format!("vertex {v} is not a leaf")));
                }
                self.delete_vertex(*v)
            }
            TraceEvent::DeleteComponent(vs) => {
                let s: VertexSet = vs.iter().copied().collect();
                if s.iter().any(|&v| self.is_terminal(v)) {
                    return Err(Error::input("component to delete contains a terminal"));
                }
                if !self.boundary(&s)?.is_empty() {
                    return Err(Error::input("deleted set is not a union of components"));
                }
                self.delete_vertices(&s)
            }
            TraceEvent::Recurse { .. } | TraceEvent::MarkStats { .. } | TraceEvent::Stop(_) => {
                Ok(self.clone())
            }
        }
    }

    /// Dense index view used by the exhaustive and flow-based routines.
    pub fn indexed(&self) -> IndexedGraph {
        IndexedGraph::new(self)
    }
}

/// A snapshot of a network with vertices renumbered `0..n` in id order.
#[derive(Debug, Clone)]
pub struct IndexedGraph {
    pub ids: Vec<VertexId>,
    pub index: BTreeMap<VertexId, usize>,
    /// `(u, v)` vertex indices, in edge-id order.
    pub edges: Vec<(usize, usize)>,
    pub edge_ids: Vec<EdgeId>,
    pub terminals: Vec<usize>,
    pub is_terminal: Vec<bool>,
    /// `(neighbor, edge index)` per vertex.
    pub adj: Vec<Vec<(usize, usize)>>,
}

impl IndexedGraph {
    fn new(g: &TerminalNetwork) -> Self {
        let ids: Vec<VertexId> = g.vertices.iter().copied().collect();
        let index: BTreeMap<VertexId, usize> =
            ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut edges = Vec::with_capacity(g.edges.len());
        let mut edge_ids = Vec::with_capacity(g.edges.len());
        let mut adj = vec![Vec::new(); ids.len()];
        for (&e, &(u, v)) in &g.edges {
            let (a, b) = (index[&u], index[&v]);
            adj[a].push((b, edges.len()));
            adj[b].push((a, edges.len()));
            edges.push((a, b));
            edge_ids.push(e);
        }
        let terminals: Vec<usize> = g.terminals.iter().map(|t| index[t]).collect();
        let mut is_terminal = vec![false; ids.len()];
        for &t in &terminals {
            is_terminal[t] = true;
        }
        IndexedGraph {
            ids,
            index,
            edges,
            edge_ids,
            terminals,
            is_terminal,
            adj,
        }
    }

    pub fn n(&self) -> usize {
        self.ids.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn k(&self) -> usize {
        self.terminals.iter().map(|&t| self.degree(t)).sum()
    }

    /// Component label per vertex in `G - removed` (edge indices), plus the count.
    pub fn component_labels(&self, removed: &[bool]) -> (Vec<usize>, usize) {
        let mut label = vec![usize::MAX; self.n()];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..self.n() {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &(w, ei) in &self.adj[u] {
                    if !removed[ei] && label[w] == usize::MAX {
                        label[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }
}

/// Small-network constructor for unit tests: vertices `1..=n`.
#[cfg(test)]
pub(crate) fn test_net(n: u32, edges: &[(u32, u32)], terminals: &[u32]) -> TerminalNetwork {
    let mut g = TerminalNetwork::with_vertices(n);
    for &(u, v) in edges {
        g.add_edge(VertexId(u), VertexId(v)).unwrap();
    }
    for &t in terminals {
        g.add_terminal(VertexId(t)).unwrap();
    }
    g
}
