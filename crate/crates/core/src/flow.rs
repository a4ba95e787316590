//! Dinic max-flow on small integer-capacity networks.

use std::collections::VecDeque;

pub const INF: u64 = u64::MAX / 4;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: u64,
}

/// Directed flow network. Arcs are stored in pairs `(2i, 2i+1)`, the second
/// being the residual reverse of the first.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
    original: Vec<u64>,
}

impl FlowNetwork {
    pub fn new(n: usize) -> Self {
        FlowNetwork {
            arcs: Vec::new(),
            out: vec![Vec::new(); n],
            original: Vec::new(),
        }
    }

    pub fn num_nodes(&self) -> usize {
        self.out.len()
    }

    pub fn add_node(&mut self) -> usize {
        self.out.push(Vec::new());
        self.out.len() - 1
    }

    /// Adds `u -> v` with capacity `cap`; returns the arc index.
    pub fn add_arc(&mut self, u: usize, v: usize, cap: u64) -> usize {
        self.add_pair(u, v, cap, 0)
    }

    /// Adds an undirected edge of capacity `cap` in both directions.
    pub fn add_undirected(&mut self, u: usize, v: usize, cap: u64) -> usize {
        self.add_pair(u, v, cap, cap)
    }

    fn add_pair(&mut self, u: usize, v: usize, fwd: u64, back: u64) -> usize {
        let i = self.arcs.len();
        self.arcs.push(Arc { to: v, cap: fwd });
        self.arcs.push(Arc { to: u, cap: back });
        self.original.push(fwd);
        self.original.push(back);
        self.out[u].push(i);
        self.out[v].push(i + 1);
        i
    }

    /// Net flow currently pushed along arc `a` (as returned by `add_arc`).
    pub fn flow(&self, a: usize) -> i64 {
        self.original[a] as i64 - self.arcs[a].cap as i64
    }

    fn levels(&self, s: usize) -> Vec<usize> {
        let mut level = vec![usize::MAX; self.out.len()];
        level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &a in &self.out[u] {
                let arc = &self.arcs[a];
                if arc.cap > 0 && level[arc.to] == usize::MAX {
                    level[arc.to] = level[u] + 1;
                    q.push_back(arc.to);
                }
            }
        }
        level
    }

    fn augment(&mut self, u: usize, t: usize, pushed: u64, level: &[usize], it: &mut [usize]) -> u64 {
        if u == t {
            return pushed;
        }
        while it[u] < self.out[u].len() {
            let a = self.out[u][it[u]];
            let (to, cap) = (self.arcs[a].to, self.arcs[a].cap);
            if cap > 0 && level[to] == level[u] + 1 {
                let d = self.augment(to, t, pushed.min(cap), level, it);
                if d > 0 {
                    self.arcs[a].cap -= d;
                    self.arcs[a ^ 1].cap += d;
                    return d;
                }
            }
            it[u] += 1;
        }
        0
    }

    /// Pushes flow from `s` to `t` until maximal or until `limit` is reached.
    pub fn max_flow_bounded(&mut self, s: usize, t: usize, limit: u64) -> u64 {
        if s == t {
            return 0;
        }
        let mut total = 0;
        while total < limit {
            let level = self.levels(s);
            if level[t] == usize::MAX {
                break;
            }
            let mut it = vec![0; self.out.len()];
            loop {
                let d = self.augment(s, t, limit - total, &level, &mut it);
                if d == 0 {
                    break;
                }
                total += d;
                if total >= limit {
                    break;
                }
            }
        }
        total
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> u64 {
        self.max_flow_bounded(s, t, INF)
    }

    /// Nodes reachable from `s` in the residual network.
    pub fn residual_reachable(&self, s: usize) -> Vec<bool> {
        self.levels(s).into_iter().map(|l| l != usize::MAX).collect()
    }
}
