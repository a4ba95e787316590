//! The main reduction loop: contract certified non-essential edges until the
//! network is small.

use rand::Rng;

use crate::error::{Error, Result};
use crate::marker::{mark, MarkParams};
use crate::netgraph::{EdgeSet, TerminalNetwork};
use crate::tester::{Tester, TesterVerdict};
use crate::trace::{ReductionTrace, StopReason, TraceEvent};

pub const DEFAULT_MAX_DEPTH: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReduceParams {
    pub tester: Tester,
    pub mark: MarkParams,
    /// Stop once `|E|` is at most this; `None` means `k^c` of each instance.
    pub threshold: Option<usize>,
    pub max_depth: usize,
}

impl ReduceParams {
    pub fn defaults_for(k: usize) -> Self {
        ReduceParams {
            tester: Tester::default(),
            mark: MarkParams::defaults_for(k),
            threshold: None,
            max_depth: DEFAULT_MAX_DEPTH,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.threshold == Some(0) {
            return Err(Error::input("threshold must be at least 1"));
        }
        self.mark.validate()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub network: TerminalNetwork,
    /// Surviving input edges: a multicut-covering set of the input.
    pub covering: EdgeSet,
    pub trace: ReductionTrace,
    /// False when some dense verdict came from the heuristic tester.
    pub verified: bool,
}

/// Lowest-id edge of `pool` that is absent from `protected` and does not join
/// two terminals of `g`.
fn pick_edge(g: &TerminalNetwork, pool: &EdgeSet, protected: &EdgeSet) -> Option<crate::netgraph::EdgeId> {
    pool.difference(protected)
        .copied()
        .find(|&e| !g.joins_terminals(e))
}

fn run<R: Rng + ?Sized>(
    input: &TerminalNetwork,
    params: &ReduceParams,
    depth: usize,
    rng: &mut R,
) -> Result<Reduction> {
    let c = params.mark.c;
    let threshold = params
        .threshold
        .unwrap_or_else(|| input.k().saturating_pow(c))
        .max(1);
    let mut g = input.clone();
    let mut trace = ReductionTrace::new();
    let mut verified = true;
    loop {
        let (reduced, events) = g.degree2_reduce();
        g = reduced;
        trace.extend(events);
        if g.num_edges() <= threshold {
            trace.push(TraceEvent::Stop(StopReason::Threshold));
            break;
        }
        let verdict = params.tester.run(&g, c)?;
        if let TesterVerdict::SparseSet(s) = &verdict {
            if depth < params.max_depth {
                trace.push(TraceEvent::Recurse {
                    depth: depth + 1,
                    set: s.set().iter().copied().collect(),
                });
                let (sub, embedding) = g.recursive_instance(s.set())?;
                let inner = run(&sub, params, depth + 1, rng)?;
                verified &= inner.verified;
                trace.extend(
                    inner
                        .trace
                        .events
                        .into_iter()
                        .filter(|e| matches!(e, TraceEvent::Recurse { .. })),
                );
                if let Some(e) = pick_edge(&g, &embedding, &inner.covering) {
                    g = g.contract_edge(e)?;
                    trace.push(TraceEvent::Contract(e));
                    continue;
                }
            }
        }
        if verdict == (TesterVerdict::Dense { verified: false }) {
            verified = false;
        }
        let marked = match mark(&g, &params.mark, rng) {
            Ok(r) => {
                trace.push(TraceEvent::MarkStats {
                    marked: r.marked.len(),
                    c,
                    i0: params.mark.i0,
                });
                r.marked
            }
            Err(Error::SizeLimit(_)) => g.edge_ids(),
            Err(e) => return Err(e),
        };
        match pick_edge(&g, &g.edge_ids(), &marked) {
            Some(e) => {
                g = g.contract_edge(e)?;
                trace.push(TraceEvent::Contract(e));
            }
            None => {
                trace.push(TraceEvent::Stop(StopReason::Saturated));
                break;
            }
        }
    }
    Ok(Reduction {
        covering: g.edge_ids(),
        network: g,
        trace,
        verified,
    })
}

/// Reduces `g` to a multicut-mimicking network.
pub fn mimicking_network<R: Rng + ?Sized>(
    g: &TerminalNetwork,
    params: &ReduceParams,
    rng: &mut R,
) -> Result<Reduction> {
    params.validate()?;
    if g.terminals().is_empty() {
        return Err(Error::input("terminal set is empty"));
    }
    run(g, params, 0, rng)
}

/// A multicut-covering set of `g` with the trace that produced it.
pub fn multicut_covering_set<R: Rng + ?Sized>(
    g: &TerminalNetwork,
    params: &ReduceParams,
    rng: &mut R,
) -> Result<(EdgeSet, ReductionTrace)> {
    let r = mimicking_network(g, params, rng)?;
    Ok((r.covering, r.trace))
}
