//! Exact reference solvers for cut problems on small networks.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::flow::{FlowNetwork, INF};
use crate::netgraph::{
    all_partitions, CutRequests, EdgeSet, IndexedGraph, Partition, TerminalNetwork, VertexId,
    VertexSet,
};

/// Size ceilings for the exponential searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    /// Edge ceiling for the multicut path-branching search.
    pub max_edges: usize,
    /// Non-terminal vertex ceiling for multiway cuts with three or more blocks.
    pub max_free_vertices: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            max_edges: 64,
            max_free_vertices: 24,
        }
    }
}

/// Vertices merged along an optional forbidden edge, edges re-indexed.
struct Quotient {
    n: usize,
    /// `(u, v, original edge index)`, self-loops removed.
    edges: Vec<(usize, usize, usize)>,
    fixed: Vec<Option<usize>>,
}

impl Quotient {
    /// `None` when the merge joins two terminals of different blocks.
    fn build(ix: &IndexedGraph, label: &[Option<usize>], forbid: Option<usize>) -> Option<Self> {
        let mut rep: Vec<usize> = (0..ix.n()).collect();
        if let Some(e) = forbid {
            let (u, v) = ix.edges[e];
            rep[v] = u;
        }
        let mut fixed = label.to_vec();
        if let Some(e) = forbid {
            let (u, v) = ix.edges[e];
            match (label[u], label[v]) {
                (Some(a), Some(b)) if a != b => return None,
                (None, Some(b)) => fixed[u] = Some(b),
                _ => {}
            }
            fixed[v] = None;
        }
        let edges = ix
            .edges
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| (rep[a], rep[b], i))
            .filter(|&(a, b, _)| a != b)
            .collect();
        Some(Quotient {
            n: ix.n(),
            edges,
            fixed,
        })
    }
}

struct Search<'a> {
    q: &'a Quotient,
    blocks: usize,
    adj: Vec<Vec<usize>>,
    order: Vec<usize>,
    label: Vec<usize>,
    assigned: Vec<bool>,
    /// `count[v][l]`: assigned neighbors of `v` labeled `l`.
    count: Vec<Vec<usize>>,
    assigned_deg: Vec<usize>,
    best: usize,
    best_label: Vec<usize>,
    /// Collect every labeling of cost `<= best` instead of improving.
    collect: Option<Vec<Vec<usize>>>,
}

const UNSET: usize = usize::MAX;

impl<'a> Search<'a> {
    fn new(q: &'a Quotient, blocks: usize) -> Self {
        let mut adj = vec![Vec::new(); q.n];
        for &(u, v, _) in &q.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut s = Search {
            q,
            blocks,
            adj,
            order: Vec::new(),
            label: vec![UNSET; q.n],
            assigned: vec![false; q.n],
            count: vec![vec![0; blocks]; q.n],
            assigned_deg: vec![0; q.n],
            best: usize::MAX,
            best_label: Vec::new(),
            collect: None,
        };
        for v in 0..q.n {
            if let Some(l) = q.fixed[v] {
                s.assign(v, l);
            }
        }
        // free vertices, most attached to the already-ordered set first
        let mut attached = s.assigned_deg.clone();
        let mut placed = s.assigned.clone();
        let live: Vec<usize> = (0..q.n)
            .filter(|&v| !placed[v] && !s.adj[v].is_empty())
            .collect();
        for _ in 0..live.len() {
            let v = *live
                .iter()
                .filter(|&&v| !placed[v])
                .max_by_key(|&&v| (attached[v], std::cmp::Reverse(v)))
                .expect("remaining vertex");
            placed[v] = true;
            s.order.push(v);
            for &w in &s.adj[v] {
                attached[w] += 1;
            }
        }
        s
    }

    fn assign(&mut self, v: usize, l: usize) {
        self.label[v] = l;
        self.assigned[v] = true;
        for i in 0..self.adj[v].len() {
            let w = self.adj[v][i];
            self.count[w][l] += 1;
            self.assigned_deg[w] += 1;
        }
    }

    fn unassign(&mut self, v: usize) {
        let l = self.label[v];
        self.label[v] = UNSET;
        self.assigned[v] = false;
        for i in 0..self.adj[v].len() {
            let w = self.adj[v][i];
            self.count[w][l] -= 1;
            self.assigned_deg[w] -= 1;
        }
    }

    fn fixed_cost(&self) -> usize {
        self.q
            .edges
            .iter()
            .filter(|&&(u, v, _)| self.assigned[u] && self.assigned[v] && self.label[u] != self.label[v])
            .count()
    }

    fn lower_bound(&self, depth: usize) -> usize {
        self.order[depth..]
            .iter()
            .map(|&w| self.assigned_deg[w] - self.count[w].iter().max().copied().unwrap_or(0))
            .sum()
    }

    fn run(&mut self) {
        let base = self.fixed_cost();
        self.go(0, base);
    }

    fn go(&mut self, depth: usize, cost: usize) {
        let over = |c: usize, best: usize, collecting: bool| if collecting { c > best } else { c >= best };
        let collecting = self.collect.is_some();
        if over(cost + self.lower_bound(depth), self.best, collecting) {
            return;
        }
        if depth == self.order.len() {
            let mut lab = self.label.clone();
            for l in lab.iter_mut() {
                if *l == UNSET {
                    *l = 0;
                }
            }
            match &mut self.collect {
                Some(all) => all.push(lab),
                None => {
                    self.best = cost;
                    self.best_label = lab;
                }
            }
            return;
        }
        let v = self.order[depth];
        let mut choices: Vec<(usize, usize)> = (0..self.blocks)
            .map(|l| (self.assigned_deg[v] - self.count[v][l], l))
            .collect();
        choices.sort();
        for (inc, l) in choices {
            if over(cost + inc, self.best, collecting) {
                continue;
            }
            self.assign(v, l);
            self.go(depth + 1, cost + inc);
            self.unassign(v);
        }
    }
}

/// The fully-determined cut of a labeling, as original edge indices.
fn cut_of(q: &Quotient, label: &[usize]) -> Vec<usize> {
    q.edges
        .iter()
        .filter(|&&(u, v, _)| label[u] != label[v])
        .map(|&(_, _, i)| i)
        .collect()
}

fn two_block_flow(q: &Quotient) -> (usize, Vec<usize>) {
    let s = q.n;
    let t = q.n + 1;
    let mut f = FlowNetwork::new(q.n + 2);
    for (v, l) in q.fixed.iter().enumerate() {
        match l {
            Some(0) => {
                f.add_arc(s, v, INF);
            }
            Some(_) => {
                f.add_arc(v, t, INF);
            }
            None => {}
        }
    }
    for &(u, v, _) in &q.edges {
        f.add_undirected(u, v, 1);
    }
    let value = f.max_flow(s, t) as usize;
    let reach = f.residual_reachable(s);
    let cut = q
        .edges
        .iter()
        .filter(|&&(u, v, _)| reach[u] != reach[v])
        .map(|&(_, _, i)| i)
        .collect();
    (value, cut)
}

fn block_labels(ix: &IndexedGraph, p: &Partition) -> Result<Vec<Option<usize>>> {
    let mut label = vec![None; ix.n()];
    for (b, block) in p.blocks().iter().enumerate() {
        for v in block {
            let &i = ix
                .index
                .get(v)
                .ok_or_else(|| Error::input(format!("partition vertex {v} not in graph")))?;
            if !ix.is_terminal[i] {
                return Err(Error::input(format!("partition vertex {v} is not a terminal")));
            }
            label[i] = Some(b);
        }
    }
    if label.iter().filter(|l| l.is_some()).count() != ix.terminals.len() {
        return Err(Error::input("partition does not cover the terminal set"));
    }
    Ok(label)
}

fn edge_set(ix: &IndexedGraph, idx: impl IntoIterator<Item = usize>) -> EdgeSet {
    idx.into_iter().map(|i| ix.edge_ids[i]).collect()
}

impl Oracle {
    fn check_free(&self, ix: &IndexedGraph, blocks: usize) -> Result<()> {
        let free = ix.n() - ix.terminals.len();
        if blocks >= 3 && free > self.max_free_vertices {
            return Err(Error::Refused(format!(
                "{free} non-terminal vertices above the multiway-cut ceiling {}",
                self.max_free_vertices
            )));
        }
        Ok(())
    }

    /// Minimum over cuts avoiding the forbidden edge; `None` when none exists.
    fn solve(
        &self,
        ix: &IndexedGraph,
        label: &[Option<usize>],
        blocks: usize,
        forbid: Option<usize>,
    ) -> Result<Option<(usize, Vec<usize>)>> {
        if blocks <= 1 {
            return Ok(Some((0, Vec::new())));
        }
        self.check_free(ix, blocks)?;
        let Some(q) = Quotient::build(ix, label, forbid) else {
            return Ok(None);
        };
        if blocks == 2 {
            return Ok(Some(two_block_flow(&q)));
        }
        let mut s = Search::new(&q, blocks);
        s.run();
        Ok(Some((s.best, cut_of(&q, &s.best_label))))
    }

    /// Minimum multiway cut for `p` with a witness.
    pub fn min_multiway_cut(&self, g: &TerminalNetwork, p: &Partition) -> Result<(usize, EdgeSet)> {
        let ix = g.indexed();
        let label = block_labels(&ix, p)?;
        let (v, cut) = self
            .solve(&ix, &label, p.num_blocks(), None)?
            .expect("unconstrained instance is feasible");
        Ok((v, edge_set(&ix, cut)))
    }

    /// Every minimum multiway cut for `p`, as sorted distinct edge sets.
    pub fn all_min_multiway_cuts(&self, g: &TerminalNetwork, p: &Partition) -> Result<Vec<EdgeSet>> {
        let ix = g.indexed();
        let label = block_labels(&ix, p)?;
        if p.num_blocks() <= 1 {
            return Ok(vec![EdgeSet::new()]);
        }
        let free = ix.n() - ix.terminals.len();
        if free > self.max_free_vertices {
            return Err(Error::Refused(format!("{free} non-terminal vertices to enumerate")));
        }
        let (opt, _) = self.min_multiway_cut(g, p)?;
        let q = Quotient::build(&ix, &label, None).expect("feasible");
        let mut s = Search::new(&q, p.num_blocks());
        s.best = opt;
        s.collect = Some(Vec::new());
        s.run();
        let mut cuts: Vec<EdgeSet> = s
            .collect
            .take()
            .unwrap_or_default()
            .iter()
            .map(|lab| edge_set(&ix, cut_of(&q, lab)))
            .collect();
        cuts.sort();
        cuts.dedup();
        Ok(cuts)
    }

    /// Edges in every minimum multiway cut for `p`: those whose protection
    /// from deletion raises the optimum.
    pub fn essential_for(&self, g: &TerminalNetwork, p: &Partition) -> Result<EdgeSet> {
        let ix = g.indexed();
        let label = block_labels(&ix, p)?;
        let blocks = p.num_blocks();
        let (opt, witness) = self
            .solve(&ix, &label, blocks, None)?
            .expect("unconstrained instance is feasible");
        let mut out = EdgeSet::new();
        // an edge outside some minimum cut is not essential
        for e in witness {
            match self.solve(&ix, &label, blocks, Some(e))? {
                Some((v, _)) if v <= opt => {}
                _ => {
                    out.insert(ix.edge_ids[e]);
                }
            }
        }
        Ok(out)
    }

    /// Essential edges per partition of the terminal set.
    pub fn essential_edges(&self, g: &TerminalNetwork) -> Result<BTreeMap<Partition, EdgeSet>> {
        all_partitions(g.terminals())
            .into_iter()
            .map(|p| Ok((p.clone(), self.essential_for(g, &p)?)))
            .collect()
    }

    pub fn cut_value_table(&self, g: &TerminalNetwork) -> Result<CutValueTable> {
        let values = all_partitions(g.terminals())
            .into_iter()
            .map(|p| Ok((p.clone(), self.min_multiway_cut(g, &p)?.0)))
            .collect::<Result<_>>()?;
        Ok(CutValueTable { values })
    }

    /// Minimum multicut for `r` by iterative deepening over path branchings.
    pub fn min_multicut(&self, g: &TerminalNetwork, r: &CutRequests) -> Result<(usize, EdgeSet)> {
        let ix = g.indexed();
        let pairs = request_indices(&ix, r)?;
        self.check_edges(&ix)?;
        let lb = pairs
            .iter()
            .map(|&(s, t)| pair_flow(&ix, s, t))
            .max()
            .unwrap_or(0);
        for budget in lb..=ix.m() {
            if let Some(x) = multicut_search(&ix, &pairs, budget) {
                return Ok((x.len(), edge_set(&ix, x)));
            }
        }
        unreachable!("deleting every edge is a multicut")
    }

    /// A multicut of at most `budget` edges, if one exists.
    pub fn multicut_at_most(
        &self,
        g: &TerminalNetwork,
        r: &CutRequests,
        budget: usize,
    ) -> Result<Option<EdgeSet>> {
        let ix = g.indexed();
        let pairs = request_indices(&ix, r)?;
        self.check_edges(&ix)?;
        Ok(multicut_search(&ix, &pairs, budget).map(|x| edge_set(&ix, x)))
    }

    fn check_edges(&self, ix: &IndexedGraph) -> Result<()> {
        if ix.m() > self.max_edges {
            return Err(Error::Refused(format!(
                "{} edges above the multicut ceiling {}",
                ix.m(),
                self.max_edges
            )));
        }
        Ok(())
    }

    /// Compares the cut value tables of `g` and `h`, matching terminals by
    /// position, then spot-checks `spot_checks` random request sets.
    pub fn verify_mimicking<R: Rng + ?Sized>(
        &self,
        g: &TerminalNetwork,
        h: &TerminalNetwork,
        spot_checks: usize,
        rng: &mut R,
    ) -> Result<VerifyReport> {
        let (tg, th) = (g.terminals(), h.terminals());
        if tg.len() != th.len() {
            return Err(Error::input(format!(
                "terminal counts differ: {} vs {}",
                tg.len(),
                th.len()
            )));
        }
        let table_g = self.cut_value_table(g)?;
        let mut report = VerifyReport::default();
        for (p, &vg) in &table_g.values {
            let (vh, _) = self.min_multiway_cut(h, &p.relabel(tg, th)?)?;
            if vg != vh {
                report.first_failure = Some(Mismatch {
                    partition: p.clone(),
                    left: vg,
                    right: vh,
                });
                return Ok(report);
            }
        }
        let all_pairs: Vec<(usize, usize)> = (0..tg.len())
            .flat_map(|i| (i + 1..tg.len()).map(move |j| (i, j)))
            .collect();
        if !all_pairs.is_empty() {
            for _ in 0..spot_checks {
                let count = rng.gen_range(1..=all_pairs.len());
                let chosen: Vec<_> = all_pairs.choose_multiple(rng, count).copied().collect();
                let rg = CutRequests::new(chosen.iter().map(|&(i, j)| (tg[i], tg[j])), tg)?;
                let rh = CutRequests::new(chosen.iter().map(|&(i, j)| (th[i], th[j])), th)?;
                let (a, b) = (self.min_multicut(g, &rg)?.0, self.min_multicut(h, &rh)?.0);
                report.spot_checked += 1;
                if a != b {
                    report.request_failure = Some((chosen.iter().map(|&(i, j)| (tg[i], tg[j])).collect(), a, b));
                    return Ok(report);
                }
            }
        }
        report.equal = true;
        Ok(report)
    }
}

fn request_indices(ix: &IndexedGraph, r: &CutRequests) -> Result<Vec<(usize, usize)>> {
    r.pairs()
        .map(|(u, v)| match (ix.index.get(&u), ix.index.get(&v)) {
            (Some(&a), Some(&b)) => Ok((a, b)),
            _ => Err(Error::input(format!("request {{{u},{v}}} names a missing vertex"))),
        })
        .collect()
}

fn pair_flow(ix: &IndexedGraph, s: usize, t: usize) -> usize {
    let mut f = FlowNetwork::new(ix.n());
    for &(u, v) in &ix.edges {
        f.add_undirected(u, v, 1);
    }
    f.max_flow(s, t) as usize
}

/// Edge indices of a shortest path joining some request pair in `G - removed`.
fn connecting_path(ix: &IndexedGraph, pairs: &[(usize, usize)], removed: &[bool]) -> Option<Vec<usize>> {
    let mut best: Option<Vec<usize>> = None;
    for &(s, t) in pairs {
        let mut via = vec![usize::MAX; ix.n()];
        let mut seen = vec![false; ix.n()];
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            if u == t {
                break;
            }
            for &(w, e) in &ix.adj[u] {
                if !removed[e] && !seen[w] {
                    seen[w] = true;
                    via[w] = e;
                    q.push_back(w);
                }
            }
        }
        if !seen[t] {
            continue;
        }
        let mut path = Vec::new();
        let mut v = t;
        while v != s {
            let e = via[v];
            path.push(e);
            let (a, b) = ix.edges[e];
            v = if a == v { b } else { a };
        }
        if best.as_ref().is_none_or(|b| path.len() < b.len()) {
            best = Some(path);
        }
    }
    best
}

fn multicut_search(ix: &IndexedGraph, pairs: &[(usize, usize)], budget: usize) -> Option<Vec<usize>> {
    fn go(
        ix: &IndexedGraph,
        pairs: &[(usize, usize)],
        removed: &mut Vec<bool>,
        keep: &mut Vec<bool>,
        budget: usize,
    ) -> bool {
        let Some(path) = connecting_path(ix, pairs, removed) else {
            return true;
        };
        if budget == 0 {
            return false;
        }
        let choices: Vec<usize> = path.into_iter().filter(|&e| !keep[e]).collect();
        let mut kept = Vec::new();
        let mut found = false;
        for &e in &choices {
            removed[e] = true;
            if go(ix, pairs, removed, keep, budget - 1) {
                found = true;
                break;
            }
            removed[e] = false;
            keep[e] = true;
            kept.push(e);
        }
        for e in kept {
            keep[e] = false;
        }
        found
    }
    let mut removed = vec![false; ix.m()];
    let mut keep = vec![false; ix.m()];
    go(ix, pairs, &mut removed, &mut keep, budget)
        .then(|| (0..ix.m()).filter(|&e| removed[e]).collect())
}

/// Minimum multiway cut values for every partition of the terminals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutValueTable {
    pub values: BTreeMap<Partition, usize>,
}

impl CutValueTable {
    /// One line per partition, `<blocks> <value>`, in canonical order.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (p, v) in &self.values {
            writeln!(s, "{p} {v}").unwrap();
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub partition: Partition,
    pub left: usize,
    pub right: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub equal: bool,
    /// First partition whose values differ, labeled by the first network.
    pub first_failure: Option<Mismatch>,
    /// A request set (first network's labels) with differing multicut values.
    pub request_failure: Option<(Vec<(VertexId, VertexId)>, usize, usize)>,
    pub spot_checked: usize,
}

fn indices(ix: &IndexedGraph, s: &VertexSet) -> Result<Vec<usize>> {
    s.iter()
        .map(|v| {
            ix.index
                .get(v)
                .copied()
                .ok_or_else(|| Error::input(format!("unknown vertex {v}")))
        })
        .collect()
}

/// Max-flow between `a` and `b` with the residual-reachable side of `a`.
pub fn closest_min_cut_side(g: &TerminalNetwork, a: &VertexSet, b: &VertexSet) -> Result<(usize, VertexSet)> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::input("cut sides must be nonempty"));
    }
    if !a.is_disjoint(b) {
        return Err(Error::input("cut sides intersect"));
    }
    let ix = g.indexed();
    let (ai, bi) = (indices(&ix, a)?, indices(&ix, b)?);
    let (s, t) = (ix.n(), ix.n() + 1);
    let mut f = FlowNetwork::new(ix.n() + 2);
    for &v in &ai {
        f.add_arc(s, v, INF);
    }
    for &v in &bi {
        f.add_arc(v, t, INF);
    }
    for &(u, v) in &ix.edges {
        f.add_undirected(u, v, 1);
    }
    let value = f.max_flow(s, t) as usize;
    let reach = f.residual_reachable(s);
    let side = (0..ix.n()).filter(|&v| reach[v]).map(|v| ix.ids[v]).collect();
    Ok((value, side))
}

/// The minimum `(a, b)`-cut whose `a`-side is inclusion-minimal.
pub fn closest_min_cut(g: &TerminalNetwork, a: &VertexSet, b: &VertexSet) -> Result<EdgeSet> {
    let (_, side) = closest_min_cut_side(g, a, b)?;
    g.boundary(&side)
}

/// Union of closest cuts over all bipartitions of the terminals.
pub fn cut_covering_set(g: &TerminalNetwork) -> Result<EdgeSet> {
    let t = g.terminals();
    let mut out = EdgeSet::new();
    if t.len() < 2 {
        return Ok(out);
    }
    for mask in 0u64..(1 << (t.len() - 1)) - 1 {
        // bit i of mask puts t[i + 1] on the first terminal's side
        let mut a = VertexSet::from([t[0]]);
        let mut b = VertexSet::new();
        for (i, &v) in t[1..].iter().enumerate() {
            if mask >> i & 1 == 1 {
                a.insert(v);
            } else {
                b.insert(v);
            }
        }
        out.extend(closest_min_cut(g, &a, &b)?);
    }
    Ok(out)
}

/// Isolating values `λ(T_i, T ∖ T_i)` for each block of `p`.
pub fn isolating_cut_values(g: &TerminalNetwork, p: &Partition) -> Result<Vec<usize>> {
    if p.num_blocks() < 2 {
        return Ok(Vec::new());
    }
    p.blocks()
        .iter()
        .map(|block| {
            let a: VertexSet = block.iter().copied().collect();
            let b: VertexSet = g.terminals().iter().filter(|t| !a.contains(t)).copied().collect();
            Ok(closest_min_cut_side(g, &a, &b)?.0)
        })
        .collect()
}

/// Union of the closest isolating cuts of the blocks of `p`: a multiway cut
/// of size at most twice the optimum.
pub fn two_approx_multicut_cover(g: &TerminalNetwork, p: &Partition) -> Result<(EdgeSet, usize)> {
    let mut out = EdgeSet::new();
    if p.num_blocks() >= 2 {
        for block in p.blocks() {
            let a: VertexSet = block.iter().copied().collect();
            let b: VertexSet = g.terminals().iter().filter(|t| !a.contains(t)).copied().collect();
            out.extend(closest_min_cut(g, &a, &b)?);
        }
    }
    let n = out.len();
    Ok((out, n))
}

/// Whether removing `x` leaves no component meeting two blocks of `p`.
pub fn is_multiway_cut(g: &TerminalNetwork, p: &Partition, x: &EdgeSet) -> bool {
    g.components_without(x).iter().all(|c| {
        let mut seen = None;
        c.iter().filter_map(|&v| p.block_of(v)).all(|b| *seen.get_or_insert(b) == b)
    })
}

/// Whether removing `x` disconnects every requested pair.
pub fn is_multicut(g: &TerminalNetwork, r: &CutRequests, x: &EdgeSet) -> bool {
    let comps = g.components_without(x);
    let comp_of = |v: VertexId| comps.iter().position(|c| c.contains(&v));
    r.pairs().all(|(u, v)| comp_of(u) != comp_of(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netgraph::{eset, test_net, vset, EdgeId};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn o() -> Oracle {
        Oracle::default()
    }

    fn singletons(g: &TerminalNetwork) -> Partition {
        Partition::singletons(g.terminals())
    }

    /// Minimum multiway cut by scanning all edge subsets.
    fn brute_mwc(g: &TerminalNetwork, p: &Partition) -> usize {
        let ids: Vec<EdgeId> = g.edge_ids().into_iter().collect();
        (0u32..1 << ids.len())
            .filter(|mask| {
                let x: EdgeSet = (0..ids.len()).filter(|&i| mask >> i & 1 == 1).map(|i| ids[i]).collect();
                is_multiway_cut(g, p, &x)
            })
            .map(|m| m.count_ones() as usize)
            .min()
            .unwrap()
    }

    fn brute_mc(g: &TerminalNetwork, r: &CutRequests) -> usize {
        let ids: Vec<EdgeId> = g.edge_ids().into_iter().collect();
        (0u32..1 << ids.len())
            .filter(|mask| {
                let x: EdgeSet = (0..ids.len()).filter(|&i| mask >> i & 1 == 1).map(|i| ids[i]).collect();
                is_multicut(g, r, &x)
            })
            .map(|m| m.count_ones() as usize)
            .min()
            .unwrap()
    }

    #[test]
    fn multiway_examples() {
        let star = test_net(4, &[(1, 2), (1, 3), (1, 4)], &[2, 3, 4]);
        assert_eq!(o().min_multiway_cut(&star, &singletons(&star)).unwrap().0, 2);
        assert_eq!(brute_mwc(&star, &singletons(&star)), 2);
        let c4 = test_net(4, &[(1, 2), (2, 3), (3, 4), (4, 1)], &[1, 2, 3, 4]);
        assert_eq!(o().min_multiway_cut(&c4, &singletons(&c4)).unwrap().0, 4);
        let one = Partition::new(vec![c4.terminals().to_vec()], c4.terminals()).unwrap();
        assert_eq!(o().min_multiway_cut(&c4, &one).unwrap(), (0, EdgeSet::new()));
    }

    #[test]
    fn multicut_examples() {
        let tri = test_net(3, &[(1, 2), (2, 3), (1, 3)], &[1, 2, 3]);
        let r = CutRequests::new([(VertexId(1), VertexId(2))], tri.terminals()).unwrap();
        assert_eq!(o().min_multicut(&tri, &r).unwrap().0, 2);
        assert_eq!(o().min_multicut(&tri, &CutRequests::default()).unwrap().0, 0);
        assert!(o().multicut_at_most(&tri, &r, 1).unwrap().is_none());
    }

    #[test]
    fn essential_examples() {
        // t1 - a - t2 with a bridge a-t2 that every cut needs
        let bridge = test_net(3, &[(1, 2), (1, 2), (2, 3)], &[1, 3]);
        let p = singletons(&bridge);
        assert_eq!(o().essential_for(&bridge, &p).unwrap(), eset([3]));
        let two_paths = test_net(4, &[(1, 3), (3, 2), (1, 4), (4, 2)], &[1, 2]);
        for (_, ess) in o().essential_edges(&two_paths).unwrap() {
            assert!(ess.is_empty());
        }
        assert_eq!(o().all_min_multiway_cuts(&two_paths, &singletons(&two_paths)).unwrap().len(), 4);
    }

    #[test]
    fn closest_cut_examples() {
        let path = test_net(4, &[(1, 2), (2, 3), (3, 4)], &[1, 4]);
        assert_eq!(closest_min_cut(&path, &vset([1]), &vset([4])).unwrap(), eset([1]));
        let double = test_net(2, &[(1, 2), (1, 2)], &[1, 2]);
        assert_eq!(closest_min_cut(&double, &vset([1]), &vset([2])).unwrap(), eset([1, 2]));
        let c4 = test_net(4, &[(1, 2), (2, 3), (3, 4), (4, 1)], &[1, 3]);
        assert_eq!(closest_min_cut(&c4, &vset([1]), &vset([3])).unwrap(), eset([1, 4]));
        assert!(closest_min_cut(&c4, &vset([1]), &vset([1, 3])).is_err());
    }

    #[test]
    fn cut_covering_examples() {
        let star = test_net(4, &[(1, 2), (1, 3), (1, 4)], &[2, 3, 4]);
        assert_eq!(cut_covering_set(&star).unwrap(), eset([1, 2, 3]));
        let path = test_net(4, &[(1, 2), (2, 3), (3, 4)], &[1, 4]);
        assert_eq!(cut_covering_set(&path).unwrap(), eset([1]));
        let lone = test_net(2, &[(1, 2)], &[1]);
        assert!(cut_covering_set(&lone).unwrap().is_empty());
    }

    #[test]
    fn two_approx_examples() {
        let tri = test_net(3, &[(1, 2), (2, 3), (1, 3)], &[1, 2, 3]);
        let (x, n) = two_approx_multicut_cover(&tri, &singletons(&tri)).unwrap();
        assert_eq!((x.len(), n), (3, 3));
        // every triangle edge joins two blocks, so all three must go
        assert_eq!(o().min_multiway_cut(&tri, &singletons(&tri)).unwrap().0, 3);
        assert_eq!(brute_mwc(&tri, &singletons(&tri)), 3);
        let c4 = test_net(4, &[(1, 2), (2, 3), (3, 4), (4, 1)], &[1, 2, 3, 4]);
        assert_eq!(two_approx_multicut_cover(&c4, &singletons(&c4)).unwrap().1, 4);
        let one = Partition::new(vec![c4.terminals().to_vec()], c4.terminals()).unwrap();
        assert!(two_approx_multicut_cover(&c4, &one).unwrap().0.is_empty());
    }

    #[test]
    fn verify_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let g = test_net(4, &[(1, 2), (2, 3), (3, 4), (2, 4)], &[1, 3, 4]);
        // subdivide edge 1-2 through a new vertex 5
        let sub = test_net(5, &[(1, 5), (5, 2), (2, 3), (3, 4), (2, 4)], &[1, 3, 4]);
        assert!(o().verify_mimicking(&g, &sub, 20, &mut rng).unwrap().equal);
        assert!(o().verify_mimicking(&g, &g, 20, &mut rng).unwrap().equal);
        let bridge = test_net(3, &[(1, 2), (2, 3)], &[1, 3]);
        let cut = test_net(3, &[(1, 2)], &[1, 3]);
        let rep = o().verify_mimicking(&bridge, &cut, 0, &mut rng).unwrap();
        assert!(!rep.equal);
        assert_eq!(rep.first_failure.unwrap().partition.to_string(), "1|3");
    }

    #[test]
    fn table_text() {
        let path = test_net(3, &[(1, 2), (2, 3)], &[1, 3]);
        assert_eq!(o().cut_value_table(&path).unwrap().to_text(), "1|3 1\n1,3 0\n");
    }

    #[test]
    fn refusal_above_ceiling() {
        let tight = Oracle {
            max_edges: 2,
            max_free_vertices: 0,
        };
        let star = test_net(4, &[(1, 2), (1, 3), (1, 4)], &[2, 3, 4]);
        assert!(matches!(tight.min_multiway_cut(&star, &singletons(&star)), Err(Error::Refused(_))));
        let r = CutRequests::new([(VertexId(2), VertexId(3))], star.terminals()).unwrap();
        assert!(matches!(tight.min_multicut(&star, &r), Err(Error::Refused(_))));
    }

    fn small_graph() -> impl Strategy<Value = TerminalNetwork> {
        (3u32..=6).prop_flat_map(|n| {
            (
                prop::collection::vec((1..=n, 1..=n), 1..=9),
                prop::collection::btree_set(1..=n, 2..=4.min(n as usize)),
            )
                .prop_map(move |(es, ts)| test_net(n, &es, &ts.into_iter().collect::<Vec<_>>()))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn multiway_matches_brute_force(g in small_graph()) {
            for p in all_partitions(g.terminals()) {
                let (v, w) = o().min_multiway_cut(&g, &p).unwrap();
                prop_assert_eq!(v, brute_mwc(&g, &p));
                prop_assert_eq!(w.len(), v);
                prop_assert!(is_multiway_cut(&g, &p, &w));
            }
        }

        #[test]
        fn multicut_matches_brute_force_and_partitions(g in small_graph(), pick in any::<u64>()) {
            let t = g.terminals().to_vec();
            let pairs: Vec<_> = (0..t.len()).flat_map(|i| (i + 1..t.len()).map(move |j| (i, j))).collect();
            let chosen = pairs.iter().enumerate().filter(|(i, _)| pick >> i & 1 == 1).map(|(_, &(i, j))| (t[i], t[j]));
            let r = CutRequests::new(chosen, &t).unwrap();
            let (v, w) = o().min_multicut(&g, &r).unwrap();
            prop_assert_eq!(v, brute_mc(&g, &r));
            prop_assert!(is_multicut(&g, &r, &w));
            // the multicut optimum is the best multiway cut over partitions
            // separating every request
            let best = all_partitions(&t)
                .into_iter()
                .filter(|p| r.pairs().all(|(a, b)| p.block_of(a) != p.block_of(b)))
                .map(|p| o().min_multiway_cut(&g, &p).unwrap().0)
                .min()
                .unwrap();
            prop_assert_eq!(v, best);
        }

        #[test]
        fn cut_oracle_invariants(g in small_graph()) {
            let table = o().cut_value_table(&g).unwrap();
            for (p, &v) in &table.values {
                if p.num_blocks() == 1 {
                    prop_assert_eq!(v, 0);
                }
                for (q, &w) in &table.values {
                    if p.refines(q) {
                        prop_assert!(v >= w);
                    }
                }
                let lambdas: usize = isolating_cut_values(&g, p).unwrap().iter().sum();
                prop_assert!(lambdas <= 2 * v);
                let (x, n) = two_approx_multicut_cover(&g, p).unwrap();
                prop_assert!(n <= 2 * v);
                prop_assert!(is_multiway_cut(&g, p, &x));
                let cuts = o().all_min_multiway_cuts(&g, p).unwrap();
                let ess = o().essential_for(&g, p).unwrap();
                for c in &cuts {
                    prop_assert_eq!(c.len(), v);
                    prop_assert!(ess.is_subset(c));
                }
                let common = cuts.iter().skip(1).fold(cuts[0].clone(), |acc, c| &acc & c);
                prop_assert_eq!(common, ess);
            }
        }

        #[test]
        fn closest_cut_is_innermost(g in small_graph()) {
            let t = g.terminals();
            let a = vset([t[0].0]);
            let b: VertexSet = t[1..].iter().copied().collect();
            let (value, side) = closest_min_cut_side(&g, &a, &b).unwrap();
            prop_assert_eq!(g.boundary(&side).unwrap().len(), value);
            // every minimum (a, b)-cut side contains the closest side
            let free: Vec<VertexId> = g.vertices().iter().filter(|v| !a.contains(v) && !b.contains(v)).copied().collect();
            for mask in 0u32..1 << free.len() {
                let mut s = a.clone();
                s.extend((0..free.len()).filter(|&i| mask >> i & 1 == 1).map(|i| free[i]));
                if g.boundary(&s).unwrap().len() == value {
                    prop_assert!(side.is_subset(&s));
                }
            }
        }
    }
}
