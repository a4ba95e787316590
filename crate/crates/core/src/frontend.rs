//! Kernelization front-ends for Edge Multiway Cut and Edge Multicut.

use std::fmt::Write as _;

use rand::Rng;

use crate::error::{Error, Result};
use crate::ffield::PrimeField;
use crate::marker::{default_c, MarkParams, DEFAULT_I0};
use crate::netgraph::{CutRequests, Partition, TerminalNetwork, VertexId, VertexSet};
use crate::oracles::{closest_min_cut_side, Oracle};
use crate::reducer::{mimicking_network, ReduceParams};
use crate::tester::Tester;
use crate::trace::{ReductionTrace, TraceEvent};

/// User-level overrides resolved against the terminal capacity of each instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Settings {
    pub c: Option<u32>,
    pub i0: Option<u32>,
    pub threshold: Option<usize>,
    pub tester: Tester,
    pub field: PrimeField,
    pub graphic_cap: Option<usize>,
}

impl Settings {
    pub fn params_for(&self, k: usize) -> Result<ReduceParams> {
        let i0 = self
            .i0
            .unwrap_or_else(|| self.c.map_or(DEFAULT_I0, |c| c.min(DEFAULT_I0)));
        let c = self.c.unwrap_or_else(|| default_c(k, i0));
        let p = ReduceParams {
            tester: self.tester,
            mark: MarkParams {
                c,
                i0,
                graphic_cap: self.graphic_cap,
                field: self.field,
                ..MarkParams::defaults_for(k)
            },
            threshold: self.threshold,
            ..ReduceParams::defaults_for(k)
        };
        p.validate()?;
        Ok(p)
    }
}

/// Is there a multiway cut of at most `budget` edges separating all terminals?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiwayCutInstance {
    pub network: TerminalNetwork,
    pub budget: usize,
}

impl MultiwayCutInstance {
    /// Exact answer by the oracle.
    pub fn solve(&self, oracle: &Oracle) -> Result<bool> {
        if self.network.terminals().len() < 2 {
            return Ok(true);
        }
        let p = Partition::singletons(self.network.terminals());
        Ok(oracle.min_multiway_cut(&self.network, &p)?.0 <= self.budget)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MwcKernel {
    pub instance: MultiwayCutInstance,
    /// Events from the input network to the kernel network.
    pub trace: ReductionTrace,
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MwcOutcome {
    /// The isolating cut of `terminal` is larger than the budget.
    IsolatingCutTooLarge { terminal: VertexId, value: usize },
    /// After isolating-cut contraction the terminals carry more than twice the budget.
    CapacityTooLarge { cap: usize },
    Kernel(MwcKernel),
}

impl MwcOutcome {
    pub fn is_no(&self) -> bool {
        !matches!(self, MwcOutcome::Kernel(_))
    }
}

/// Contracts the closest isolating cut side of every terminal onto it, in
/// terminal order. Returns `Some(outcome)` for a NO answer.
fn contract_isolating_sides(
    g: &mut TerminalNetwork,
    budget: usize,
    trace: &mut ReductionTrace,
) -> Result<Option<MwcOutcome>> {
    let ts = g.terminals().to_vec();
    if ts.len() < 2 {
        return Ok(None);
    }
    for &t in &ts {
        let rest: VertexSet = ts.iter().copied().filter(|&x| x != t).collect();
        let (value, side) = closest_min_cut_side(g, &VertexSet::from([t]), &rest)?;
        if value > budget {
            return Ok(Some(MwcOutcome::IsolatingCutTooLarge { terminal: t, value }));
        }
        loop {
            let inside = g
                .edges()
                .find(|&(_, u, v)| side.contains(&u) && side.contains(&v))
                .map(|(e, _, _)| e);
            let Some(e) = inside else { break };
            *g = g.contract_edge(e)?;
            trace.push(TraceEvent::Contract(e));
        }
    }
    let cap = g.k();
    if cap > 2 * budget {
        return Ok(Some(MwcOutcome::CapacityTooLarge { cap }));
    }
    Ok(None)
}

/// Isolating-cut contraction, the mimicking reduction, then a second
/// contraction pass so the emitted instance has `cap(T) ≤ 2k`.
pub fn kernelize_multiway_cut<R: Rng + ?Sized>(
    inst: &MultiwayCutInstance,
    settings: &Settings,
    rng: &mut R,
) -> Result<MwcOutcome> {
    let mut g = inst.network.clone();
    let mut trace = ReductionTrace::new();
    if g.terminals().is_empty() {
        let (h, events) = g.degree2_reduce();
        trace.extend(events);
        let instance = MultiwayCutInstance { network: h, budget: inst.budget };
        return Ok(MwcOutcome::Kernel(MwcKernel { instance, trace, verified: true }));
    }
    if let Some(no) = contract_isolating_sides(&mut g, inst.budget, &mut trace)? {
        return Ok(no);
    }
    let r = mimicking_network(&g, &settings.params_for(g.k())?, rng)?;
    trace.extend(r.trace.events);
    let mut g = r.network;
    if let Some(no) = contract_isolating_sides(&mut g, inst.budget, &mut trace)? {
        return Ok(no);
    }
    assert!(g.k() <= 2 * inst.budget || g.terminals().len() < 2);
    Ok(MwcOutcome::Kernel(MwcKernel {
        instance: MultiwayCutInstance { network: g, budget: inst.budget },
        trace,
        verified: r.verified,
    }))
}

/// Is there an edge set of at most `budget` edges disconnecting every request?
/// The terminal list of `network` is ignored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MulticutInstance {
    pub network: TerminalNetwork,
    pub requests: Vec<(VertexId, VertexId)>,
    pub budget: usize,
}

impl MulticutInstance {
    pub fn new(network: TerminalNetwork, requests: Vec<(VertexId, VertexId)>, budget: usize) -> Result<Self> {
        for &(u, v) in &requests {
            for x in [u, v] {
                if !network.contains_vertex(x) {
                    return Err(Error::input(format!("request endpoint {x} is not a vertex")));
                }
            }
        }
        Ok(MulticutInstance { network, requests, budget })
    }

    /// The network with terminals set to the request endpoints, and the
    /// requests; `None` when some request pairs a vertex with itself.
    pub fn request_network(&self) -> Result<Option<(TerminalNetwork, CutRequests)>> {
        if self.requests.iter().any(|&(u, v)| u == v) {
            return Ok(None);
        }
        let mut ends: Vec<VertexId> = Vec::new();
        for &(u, v) in &self.requests {
            for x in [u, v] {
                if !ends.contains(&x) {
                    ends.push(x);
                }
            }
        }
        let g = self.network.with_terminals(&ends)?;
        let r = CutRequests::new(self.requests.iter().copied(), &ends)?;
        Ok(Some((g, r)))
    }

    pub fn solve(&self, oracle: &Oracle) -> Result<bool> {
        match self.request_network()? {
            None => Ok(false),
            Some((g, r)) => Ok(oracle.multicut_at_most(&g, &r, self.budget)?.is_some()),
        }
    }
}

/// The attachment network: the input plus a fresh terminal for each request
/// endpoint, joined to it by `p + 1` paths of length two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MulticutGadget {
    pub network: TerminalNetwork,
    /// Requests between the fresh terminals.
    pub requests: Vec<(VertexId, VertexId)>,
    /// Fresh terminal and the vertex it is attached to, in terminal order.
    pub attachments: Vec<(VertexId, VertexId)>,
}

pub fn multicut_gadget(inst: &MulticutInstance) -> Result<MulticutGadget> {
    let mut g = inst.network.with_terminals(&[])?;
    let mut next = g.vertices().iter().next_back().map_or(1, |v| v.0 + 1);
    let mut fresh = || {
        next += 1;
        VertexId(next - 1)
    };
    let mut requests = Vec::new();
    let mut attachments = Vec::new();
    for &(s, t) in &inst.requests {
        let mut primed = [s, t];
        for (slot, x) in primed.iter_mut().zip([s, t]) {
            let xp = fresh();
            g.add_vertex(xp);
            g.add_terminal(xp)?;
            for _ in 0..=inst.budget {
                let w = fresh();
                g.add_vertex(w);
                g.add_edge(xp, w)?;
                g.add_edge(w, x)?;
            }
            attachments.push((xp, x));
            *slot = xp;
        }
        requests.push((primed[0], primed[1]));
    }
    Ok(MulticutGadget { network: g, requests, attachments })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MulticutKernel {
    pub instance: MulticutInstance,
    /// `cap(T)` of the attachment network, before reduction.
    pub gadget_cap: usize,
    /// Events from the attachment network to the kernel network.
    pub trace: ReductionTrace,
    pub verified: bool,
}

pub fn kernelize_multicut<R: Rng + ?Sized>(
    inst: &MulticutInstance,
    settings: &Settings,
    rng: &mut R,
) -> Result<MulticutKernel> {
    let gadget = multicut_gadget(inst)?;
    let gadget_cap = gadget.network.k();
    if gadget.network.terminals().is_empty() {
        let (h, events) = gadget.network.degree2_reduce();
        let mut trace = ReductionTrace::new();
        trace.extend(events);
        return Ok(MulticutKernel {
            instance: MulticutInstance { network: h, requests: Vec::new(), budget: inst.budget },
            gadget_cap,
            trace,
            verified: true,
        });
    }
    let r = mimicking_network(&gadget.network, &settings.params_for(gadget_cap)?, rng)?;
    Ok(MulticutKernel {
        instance: MulticutInstance {
            network: r.network,
            requests: gadget.requests,
            budget: inst.budget,
        },
        gadget_cap,
        trace: r.trace,
        verified: r.verified,
    })
}

/// Parses a requests file: `r <u> <v>` lines, `c` comments, blank lines.
pub fn parse_requests(text: &str) -> Result<Vec<(VertexId, VertexId)>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 3 || toks[0] != "r" {
            return Err(Error::parse(line_no, "expected `r <u> <v>`"));
        }
        let num = |s: &str| {
            s.parse::<u32>()
                .map(VertexId)
                .map_err(|_| Error::parse(line_no, format!("not an unsigned integer: {s:?}")))
        };
        out.push((num(toks[1])?, num(toks[2])?));
    }
    Ok(out)
}

pub fn write_requests(requests: &[(VertexId, VertexId)]) -> String {
    let mut s = String::new();
    for (u, v) in requests {
        writeln!(s, "r {u} {v}").unwrap();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netgraph::test_net;
    use crate::oracles::is_multicut;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn v(x: u32) -> VertexId {
        VertexId(x)
    }

    fn stress() -> Settings {
        Settings {
            c: Some(2),
            i0: Some(2),
            threshold: Some(1),
            graphic_cap: Some(64),
            ..Settings::default()
        }
    }

    #[test]
    fn isolating_contraction_merges_side() {
        // t1 - a - t2 with an extra a - t2 edge
        let g = test_net(3, &[(1, 3), (3, 2), (3, 2)], &[1, 2]);
        let mut h = g.clone();
        let mut trace = ReductionTrace::new();
        assert_eq!(contract_isolating_sides(&mut h, 1, &mut trace).unwrap(), None);
        assert_eq!(h.num_vertices(), 2);
        assert_eq!(h.k(), 2);
        assert_eq!(trace.replay(&g).unwrap(), h);
    }

    #[test]
    fn large_isolating_cut_is_no() {
        let g = test_net(3, &[(1, 2), (1, 2), (1, 3), (2, 3)], &[1, 2, 3]);
        let inst = MultiwayCutInstance { network: g, budget: 2 };
        let out = kernelize_multiway_cut(&inst, &Settings::default(), &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        assert_eq!(out, MwcOutcome::IsolatingCutTooLarge { terminal: v(1), value: 3 });
        assert!(!inst.solve(&Oracle::default()).unwrap());
    }

    #[test]
    fn gadget_shape() {
        let g = test_net(3, &[(1, 2), (2, 3)], &[]);
        let inst = MulticutInstance::new(g, vec![(v(1), v(3))], 2).unwrap();
        let gd = multicut_gadget(&inst).unwrap();
        assert_eq!(gd.network.num_vertices(), 3 + 2 + 6);
        assert_eq!(gd.network.num_edges(), 2 + 12);
        assert_eq!(gd.network.k(), 6);
        assert_eq!(gd.requests, vec![(v(4), v(8))]);
        assert_eq!(gd.attachments, vec![(v(4), v(1)), (v(8), v(3))]);
        let degree_two = gd
            .network
            .vertices()
            .iter()
            .filter(|&&x| x.0 > 3 && !gd.network.is_terminal(x) && gd.network.degree(x) == 2)
            .count();
        assert_eq!(degree_two, 6);
    }

    #[test]
    fn zero_budget_multicut() {
        let joined = test_net(3, &[(1, 2)], &[]);
        let apart = MulticutInstance::new(joined.clone(), vec![(v(1), v(3))], 0).unwrap();
        let together = MulticutInstance::new(joined, vec![(v(1), v(2))], 0).unwrap();
        let o = Oracle::default();
        for inst in [apart, together] {
            let kern = kernelize_multicut(&inst, &stress(), &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
            assert_eq!(kern.gadget_cap, 2);
            assert_eq!(inst.solve(&o).unwrap(), kern.instance.solve(&o).unwrap());
        }
    }

    #[test]
    fn requests_parse() {
        let r = parse_requests("c x\nr 1 2\n\nr 3 4\n").unwrap();
        assert_eq!(r, vec![(v(1), v(2)), (v(3), v(4))]);
        assert_eq!(write_requests(&r), "r 1 2\nr 3 4\n");
        assert_eq!(parse_requests("r 1\n"), Err(Error::parse(1, "expected `r <u> <v>`")));
        assert!(matches!(parse_requests("c\nr 1 x\n"), Err(Error::Parse { line: 2, .. })));
        assert!(MulticutInstance::new(test_net(2, &[], &[]), vec![(v(1), v(5))], 1).is_err());
    }

    #[test]
    fn settings_resolve() {
        let p = Settings::default().params_for(2).unwrap();
        assert_eq!((p.mark.c, p.mark.i0), (default_c(2, 4), 4));
        let q = Settings { c: Some(3), ..Settings::default() }.params_for(2).unwrap();
        assert_eq!((q.mark.c, q.mark.i0), (3, 3));
        assert!(Settings { c: Some(1), ..Settings::default() }.params_for(2).is_err());
        assert!(Settings { threshold: Some(0), ..Settings::default() }.params_for(2).is_err());
    }

    fn graph(ts: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = TerminalNetwork> {
        (3u32..=7).prop_flat_map(move |n| {
            (
                prop::collection::vec((1..=n, 1..=n), 2..=10),
                prop::collection::btree_set(1..=n, ts.clone()),
            )
                .prop_map(move |(es, t)| test_net(n, &es, &t.into_iter().collect::<Vec<_>>()))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn multiway_kernel_preserves_answer(g in graph(2..=4), k in 0usize..=3, seed in any::<u64>()) {
            let inst = MultiwayCutInstance { network: g, budget: k };
            let o = Oracle::default();
            let out = kernelize_multiway_cut(&inst, &stress(), &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
            match &out {
                MwcOutcome::Kernel(kern) => {
                    prop_assert!(kern.instance.network.k() <= 2 * k);
                    prop_assert_eq!(kern.instance.solve(&o).unwrap(), inst.solve(&o).unwrap());
                    prop_assert_eq!(&kern.trace.replay(&inst.network).unwrap(), &kern.instance.network);
                }
                _ => prop_assert!(!inst.solve(&o).unwrap()),
            }
        }

        #[test]
        fn multicut_kernel_preserves_answer(
            g in graph(0..=0),
            raw in prop::collection::vec((1u32..=7, 1u32..=7), 1..=2),
            p in 0usize..=2,
            seed in any::<u64>(),
        ) {
            let n = g.num_vertices() as u32;
            let reqs: Vec<_> = raw.into_iter().map(|(a, b)| (v((a - 1) % n + 1), v((b - 1) % n + 1))).collect();
            let inst = MulticutInstance::new(g, reqs, p).unwrap();
            let o = Oracle::default();
            let kern = kernelize_multicut(&inst, &stress(), &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
            prop_assert_eq!(kern.gadget_cap, 2 * inst.requests.len() * (p + 1));
            prop_assert_eq!(kern.instance.solve(&o).unwrap(), inst.solve(&o).unwrap());
        }

        #[test]
        fn small_multicuts_keep_attachments(
            g in graph(0..=0),
            raw in prop::collection::vec((1u32..=7, 1u32..=7), 1..=2),
            p in 0usize..=2,
        ) {
            let n = g.num_vertices() as u32;
            let reqs: Vec<_> = raw.into_iter().map(|(a, b)| (v((a - 1) % n + 1), v((b - 1) % n + 1))).collect();
            let inst = MulticutInstance::new(g, reqs, p).unwrap();
            let gd = multicut_gadget(&inst).unwrap();
            let ts = gd.network.terminals().to_vec();
            let Ok(r) = CutRequests::new(gd.requests.iter().copied(), &ts) else {
                return Ok(());
            };
            let ids: Vec<_> = gd.network.edge_ids().into_iter().collect();
            let mut subsets: Vec<Vec<usize>> = vec![vec![]];
            for size in 1..=p {
                let mut next = Vec::new();
                for s in subsets.iter().filter(|s| s.len() == size - 1) {
                    let lo = s.last().map_or(0, |&x| x + 1);
                    for i in lo..ids.len() {
                        let mut t = s.clone();
                        t.push(i);
                        next.push(t);
                    }
                }
                subsets.extend(next);
            }
            for s in subsets {
                let x = s.iter().map(|&i| ids[i]).collect();
                if is_multicut(&gd.network, &r, &x) {
                    let comps = gd.network.components_without(&x);
                    for &(a, b) in &gd.attachments {
                        prop_assert!(comps.iter().any(|c| c.contains(&a) && c.contains(&b)));
                    }
                }
            }
        }
    }
}
