//! Reduction traces: one event per line.
//!
//! | token | meaning |
//! |-------|---------|
//! | `C <eid>` | contract edge |
//! | `DL <v>` | delete a non-terminal leaf or isolated vertex |
//! | `DC <v...>` | delete a terminal-free component |
//! | `R <depth> <v...>` | recursion into the instance at a sparse set |
//! | `M <\|Z\|> <c> <i0>` | marking statistics |
//! | `S <reason>` | stop |
//!
//! Ids refer to the input network. Replaying the structural events (`C`,
//! `DL`, `DC`) on the input reproduces the output network.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::netgraph::{EdgeId, TerminalNetwork, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// Edge count at or below the stop threshold.
    Threshold,
    /// No certified non-essential edge was available.
    Saturated,
}

impl fmt::Display for StopReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StopReason::Threshold => "threshold",
            StopReason::Saturated => "saturated",
        })
    }
}

impl FromStr for StopReason {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "threshold" => Ok(StopReason::Threshold),
            "saturated" => Ok(StopReason::Saturated),
            _ => Err(Error::input(format!("unknown stop reason {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceEvent {
    Contract(EdgeId),
    DeleteLeaf(VertexId),
    DeleteComponent(Vec<VertexId>),
    Recurse { depth: usize, set: Vec<VertexId> },
    MarkStats { marked: usize, c: u32, i0: u32 },
    Stop(StopReason),
}

impl TraceEvent {
    pub fn is_structural(&self) -> bool {
        matches!(
            self,
            TraceEvent::Contract(_) | TraceEvent::DeleteLeaf(_) | TraceEvent::DeleteComponent(_)
        )
    }
}

impl fmt::Display for TraceEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, vs: &[VertexId]| -> fmt::Result {
            for v in vs {
                write!(f, " {v}")?;
            }
            Ok(())
        };
        match self {
            TraceEvent::Contract(e) => write!(f, "C {e}"),
            TraceEvent::DeleteLeaf(v) => write!(f, "DL {v}"),
            TraceEvent::DeleteComponent(vs) => {
                f.write_str("DC")?;
                list(f, vs)
            }
            TraceEvent::Recurse { depth, set } => {
                write!(f, "R {depth}")?;
                list(f, set)
            }
            TraceEvent::MarkStats { marked, c, i0 } => write!(f, "M {marked} {c} {i0}"),
            TraceEvent::Stop(r) => write!(f, "S {r}"),
        }
    }
}

/// Ordered log of reduction events.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReductionTrace {
    pub events: Vec<TraceEvent>,
}

impl ReductionTrace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, ev: TraceEvent) {
        self.events.push(ev);
    }

    pub fn extend<I: IntoIterator<Item = TraceEvent>>(&mut self, evs: I) {
        self.events.extend(evs);
    }

    pub fn stop_reason(&self) -> Option<StopReason> {
        self.events.iter().rev().find_map(|e| match e {
            TraceEvent::Stop(r) => Some(*r),
            _ => None,
        })
    }

    /// Number of structural events.
    pub fn structural_len(&self) -> usize {
        self.events.iter().filter(|e| e.is_structural()).count()
    }

    /// Applies the structural events to `input` in order.
    pub fn replay(&self, input: &TerminalNetwork) -> Result<TerminalNetwork> {
        let mut g = input.clone();
        for ev in self.events.iter().filter(|e| e.is_structural()) {
            g = g.apply_event(ev)?;
        }
        Ok(g)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for ev in &self.events {
            s.push_str(&ev.to_string());
            s.push('\n');
        }
        s
    }
}

fn ids<T, F: Fn(u32) -> T>(toks: &[&str], line: usize, f: F) -> Result<Vec<T>> {
    toks.iter()
        .map(|t| {
            t.parse::<u32>()
                .map(&f)
                .map_err(|_| Error::parse(line, format!("not an unsigned integer: {t:?}")))
        })
        .collect()
}

fn exactly<'a>(toks: &'a [&'a str], n: usize, line: usize) -> Result<&'a [&'a str]> {
    if toks.len() == n {
        Ok(toks)
    } else {
        Err(Error::parse(line, format!("expected {n} argument(s)")))
    }
}

pub fn parse_trace(text: &str) -> Result<ReductionTrace> {
    let mut trace = ReductionTrace::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let toks: Vec<&str> = raw.split_whitespace().collect();
        let Some((&head, rest)) = toks.split_first() else {
            continue;
        };
        let ev = match head {
            "C" => TraceEvent::Contract(ids(exactly(rest, 1, line)?, line, EdgeId)?[0]),
            "DL" => TraceEvent::DeleteLeaf(ids(exactly(rest, 1, line)?, line, VertexId)?[0]),
            "DC" => {
                if rest.is_empty() {
                    return Err(Error::parse(line, "DC needs at least one vertex"));
                }
                TraceEvent::DeleteComponent(ids(rest, line, VertexId)?)
            }
            "R" => {
                if rest.len() < 2 {
                    return Err(Error::parse(line, "R needs a depth and a vertex set"));
                }
                let depth = ids(&rest[..1], line, |d| d as usize)?[0];
                TraceEvent::Recurse {
                    depth,
                    set: ids(&rest[1..], line, VertexId)?,
                }
            }
            "M" => {
                let v = ids(exactly(rest, 3, line)?, line, |x| x)?;
                TraceEvent::MarkStats {
                    marked: v[0] as usize,
                    c: v[1],
                    i0: v[2],
                }
            }
            "S" => TraceEvent::Stop(
                exactly(rest, 1, line)?[0]
                    .parse()
                    .map_err(|e: Error| Error::parse(line, e.to_string()))?,
            ),
            other => return Err(Error::parse(line, format!("unknown trace token {other:?}"))),
        };
        trace.push(ev);
    }
    Ok(trace)
}
