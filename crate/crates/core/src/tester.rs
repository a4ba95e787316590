//! Expansion testers: find a set `S` with `cap_T(S)^c < |S|`, or report that
//! none exists.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::netgraph::{TerminalNetwork, VertexSet};

/// Default vertex ceiling for the exhaustive tester.
pub const DEFAULT_MAX_EXACT_N: usize = 20;

/// A witness of sparsity. Only constructible through [`SparseSet::new`],
/// which checks the defining inequality exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseSet {
    set: VertexSet,
    cap: usize,
}

/// `cap^c < size` in exact arithmetic.
pub fn is_sparse(cap: usize, size: usize, c: u32) -> bool {
    (cap as u128).checked_pow(c).is_some_and(|x| x < size as u128)
}

impl SparseSet {
    pub fn new(g: &TerminalNetwork, set: VertexSet, c: u32) -> Result<Self> {
        if set.is_empty() {
            return Err(Error::input("sparse set is empty"));
        }
        let mut closed = g.neighborhood(&set)?;
        closed.extend(set.iter().copied());
        if closed.len() == g.num_vertices() {
            return Err(Error::input("closed neighborhood of the sparse set is everything"));
        }
        let cap = g.t_capacity(&set)?;
        if !is_sparse(cap, set.len(), c) {
            return Err(Error::input(format!(
                "cap_T = {cap} with |S| = {} fails cap^{c} < |S|",
                set.len()
            )));
        }
        Ok(SparseSet { set, cap })
    }

    pub fn set(&self) -> &VertexSet {
        &self.set
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn size(&self) -> usize {
        self.set.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TesterVerdict {
    /// No sparse set exists (`verified`), or none was found (heuristic).
    Dense { verified: bool },
    SparseSet(SparseSet),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tester {
    Exact { max_n: usize },
    Heuristic,
}

impl Default for Tester {
    fn default() -> Self {
        Tester::Exact {
            max_n: DEFAULT_MAX_EXACT_N,
        }
    }
}

impl Tester {
    pub fn run(&self, g: &TerminalNetwork, c: u32) -> Result<TesterVerdict> {
        match *self {
            Tester::Exact { max_n } => exact_tester(g, c, max_n),
            Tester::Heuristic => heuristic_tester(g, c),
        }
    }
}

/// Enumerates every `S` with `1 ≤ |S| ≤ n/2` and `N[S] ≠ V`, returning the set
/// minimizing `cap_T(S)^c - |S|` (then smallest, then lexicographically first)
/// among those with `cap_T(S)^c < |S|`.
pub fn exact_tester(g: &TerminalNetwork, c: u32, max_n: usize) -> Result<TesterVerdict> {
    let ix = g.indexed();
    let n = ix.n();
    if n > max_n || n > 30 {
        return Err(Error::Refused(format!(
            "{n} vertices above the exhaustive tester ceiling {max_n}"
        )));
    }
    let full: u32 = (1 << n) - 1;
    let nbr: Vec<u32> = (0..n)
        .map(|v| ix.adj[v].iter().fold(0, |m, &(w, _)| m | 1 << w))
        .collect();
    let deg: Vec<usize> = (0..n).map(|v| ix.degree(v)).collect();
    let tmask = ix.terminals.iter().fold(0u32, |m, &t| m | 1 << t);
    let edges: Vec<(u32, u32)> = ix.edges.iter().map(|&(u, v)| (1 << u, 1 << v)).collect();
    // (score, size, sorted members) of the best set so far
    let mut best: Option<(i128, usize, Vec<usize>)> = None;
    for mask in 1..=full {
        let size = mask.count_ones() as usize;
        if size > n / 2 {
            continue;
        }
        let closed = (0..n)
            .filter(|&v| mask >> v & 1 == 1)
            .fold(mask, |m, v| m | nbr[v]);
        if closed == full {
            continue;
        }
        let boundary = edges
            .iter()
            .filter(|&&(a, b)| (mask & a != 0) != (mask & b != 0))
            .count();
        let tcap: usize = (0..n)
            .filter(|&v| (mask & tmask) >> v & 1 == 1)
            .map(|v| deg[v])
            .sum();
        let cap = tcap + boundary;
        if !is_sparse(cap, size, c) {
            continue;
        }
        let score = (cap as i128).pow(c) - size as i128;
        let members: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let better = match &best {
            None => true,
            Some((s, z, m)) => (score, size, &members) < (*s, *z, m),
        };
        if better {
            best = Some((score, size, members));
        }
    }
    match best {
        None => Ok(TesterVerdict::Dense { verified: true }),
        Some((_, _, members)) => {
            let set = members.into_iter().map(|v| ix.ids[v]).collect();
            Ok(TesterVerdict::SparseSet(SparseSet::new(g, set, c)?))
        }
    }
}

/// Sweep search over BFS orders from each non-terminal and over the degree
/// order. A `Dense` answer carries no guarantee.
pub fn heuristic_tester(g: &TerminalNetwork, c: u32) -> Result<TesterVerdict> {
    let ix = g.indexed();
    let n = ix.n();
    let mut orders: Vec<Vec<usize>> = Vec::new();
    for seed in (0..n).filter(|&v| !ix.is_terminal[v]) {
        let mut seen = vec![false; n];
        seen[seed] = true;
        let mut order = vec![seed];
        let mut q = VecDeque::from([seed]);
        while let Some(u) = q.pop_front() {
            for &(w, _) in &ix.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                    q.push_back(w);
                }
            }
        }
        orders.push(order);
    }
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&v| (ix.is_terminal[v], ix.degree(v), v));
    orders.push(by_degree);
    for order in orders {
        let mut set = VertexSet::new();
        for &v in order.iter().take(n / 2) {
            set.insert(ix.ids[v]);
            let cap = g.t_capacity(&set)?;
            if is_sparse(cap, set.len(), c) {
                if let Ok(s) = SparseSet::new(g, set.clone(), c) {
                    return Ok(TesterVerdict::SparseSet(s));
                }
            }
        }
    }
    Ok(TesterVerdict::Dense { verified: false })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netgraph::{test_net, vset};
    use proptest::prelude::*;

    fn path(n: u32) -> TerminalNetwork {
        let es: Vec<(u32, u32)> = (1..n).map(|i| (i, i + 1)).collect();
        test_net(n, &es, &[1, n])
    }

    fn k4() -> TerminalNetwork {
        test_net(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)], &[1, 2, 3, 4])
    }

    /// Independent re-check of density: no valid set satisfies the inequality.
    fn brute_dense(g: &TerminalNetwork, c: u32) -> bool {
        let vs: Vec<_> = g.vertices().iter().copied().collect();
        (1u32..1 << vs.len()).all(|mask| {
            let s: VertexSet = (0..vs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| vs[i]).collect();
            s.len() > vs.len() / 2 || SparseSet::new(g, s, c).is_err()
        })
    }

    #[test]
    fn path_is_sparse() {
        let g = path(10);
        match exact_tester(&g, 2, 20).unwrap() {
            TesterVerdict::SparseSet(s) => {
                assert_eq!(s.size(), 5);
                assert_eq!(s.cap(), 2);
                assert_eq!(s.set(), &vset([1, 2, 3, 4, 5]));
            }
            v => panic!("{v:?}"),
        }
        assert!(matches!(heuristic_tester(&g, 2).unwrap(), TesterVerdict::SparseSet(_)));
    }

    #[test]
    fn clique_is_dense() {
        assert_eq!(exact_tester(&k4(), 2, 20).unwrap(), TesterVerdict::Dense { verified: true });
        assert!(brute_dense(&k4(), 2));
        let k6 = {
            let mut es = Vec::new();
            for a in 1..=6 {
                for b in a + 1..=6 {
                    es.push((a, b));
                }
            }
            test_net(6, &es, &[1, 2, 3, 4, 5, 6])
        };
        assert_eq!(heuristic_tester(&k6, 2).unwrap(), TesterVerdict::Dense { verified: false });
    }

    #[test]
    fn single_vertex_is_dense() {
        let g = test_net(1, &[], &[1]);
        assert_eq!(exact_tester(&g, 3, 20).unwrap(), TesterVerdict::Dense { verified: true });
    }

    #[test]
    fn ceiling_refuses() {
        assert!(matches!(exact_tester(&path(21), 2, 20), Err(Error::Refused(_))));
    }

    #[test]
    fn sparse_set_checks_inequality() {
        let g = path(10);
        assert!(SparseSet::new(&g, vset([2, 3, 4]), 2).is_err());
        assert!(SparseSet::new(&g, VertexSet::new(), 2).is_err());
        assert!(SparseSet::new(&g, vset([2, 3, 4, 5, 6]), 2).is_ok());
        assert!(is_sparse(2, 5, 2));
        assert!(!is_sparse(2, 4, 2));
        assert!(!is_sparse(usize::MAX, 5, 3));
    }

    fn graph() -> impl Strategy<Value = TerminalNetwork> {
        (2u32..=9).prop_flat_map(|n| {
            (
                prop::collection::vec((1..=n, 1..=n), 1..=14),
                prop::collection::btree_set(1..=n, 1..=3),
            )
                .prop_map(move |(es, ts)| test_net(n, &es, &ts.into_iter().collect::<Vec<_>>()))
        })
    }

    proptest! {
        #[test]
        fn verdicts_are_consistent(g in graph(), c in 1u32..=3) {
            match exact_tester(&g, c, 20).unwrap() {
                TesterVerdict::Dense { verified } => {
                    prop_assert!(verified);
                    prop_assert!(brute_dense(&g, c));
                }
                TesterVerdict::SparseSet(s) => {
                    prop_assert!(SparseSet::new(&g, s.set().clone(), c).is_ok());
                    prop_assert!(!brute_dense(&g, c));
                }
            }
            if let TesterVerdict::SparseSet(s) = heuristic_tester(&g, c).unwrap() {
                prop_assert!(is_sparse(g.t_capacity(s.set()).unwrap(), s.size(), c));
            }
        }
    }
}
