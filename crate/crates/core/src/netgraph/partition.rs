use std::collections::BTreeSet;
use std::fmt;

use super::VertexId;
use crate::error::{Error, Result};

/// A partition of the terminal set into nonempty, pairwise disjoint blocks.
///
/// Stored canonically: members sorted within a block, blocks sorted by their
/// smallest member.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    blocks: Vec<Vec<VertexId>>,
}

impl Partition {
    /// Validates that `blocks` partitions `terminals` exactly.
    pub fn new(blocks: Vec<Vec<VertexId>>, terminals: &[VertexId]) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::input("partition block is empty"));
            }
            for &v in b {
                if !seen.insert(v) {
                    return Err(Error::input(format!("vertex {v} appears in two blocks")));
                }
            }
        }
        let all: BTreeSet<VertexId> = terminals.iter().copied().collect();
        if seen != all {
            return Err(Error::input("partition blocks do not cover the terminal set"));
        }
        Ok(Self::canonical(blocks))
    }

    fn canonical(mut blocks: Vec<Vec<VertexId>>) -> Self {
        for b in &mut blocks {
            b.sort();
        }
        blocks.sort_by_key(|b| b[0]);
        Partition { blocks }
    }

    /// Every terminal in its own block.
    pub fn singletons(terminals: &[VertexId]) -> Self {
        Self::canonical(terminals.iter().map(|&t| vec![t]).collect())
    }

    pub fn blocks(&self) -> &[Vec<VertexId>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_of(&self, v: VertexId) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(&v))
    }

    /// All pairs of terminals lying in different blocks.
    pub fn cross_pairs(&self) -> CutRequests {
        let mut pairs = BTreeSet::new();
        for (i, a) in self.blocks.iter().enumerate() {
            for b in &self.blocks[i + 1..] {
                for &u in a {
                    for &v in b {
                        pairs.insert(if u < v { (u, v) } else { (v, u) });
                    }
                }
            }
        }
        CutRequests { pairs }
    }

    /// Whether every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.blocks.iter().all(|b| {
            coarser
                .block_of(b[0])
                .is_some_and(|i| b.iter().all(|v| coarser.blocks[i].contains(v)))
        })
    }

    /// Relabels members positionally: `from[i]` becomes `to[i]`.
    pub fn relabel(&self, from: &[VertexId], to: &[VertexId]) -> Result<Self> {
        let map = |v: &VertexId| {
            from.iter()
                .position(|f| f == v)
                .and_then(|i| to.get(i).copied())
                .ok_or_else(|| Error::input(format!("vertex {v} has no relabeling")))
        };
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.iter().map(map).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::canonical(blocks))
    }

    /// Parses the canonical text form `1,2|3`.
    pub fn parse(text: &str, terminals: &[VertexId]) -> Result<Self> {
        let blocks = text
            .split('|')
            .map(|b| {
                b.split(',')
                    .map(|v| {
                        v.trim()
                            .parse::<u32>()
                            .map(VertexId)
                            .map_err(|_| Error::input(format!("bad vertex id {v:?} in partition")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(blocks, terminals)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            for (j, v) in b.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

/// Enumerates every partition of `terminals` (Bell-number many), in
/// restricted-growth order over the given terminal order.
pub fn all_partitions(terminals: &[VertexId]) -> Vec<Partition> {
    let n = terminals.len();
    if n == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    loop {
        let nb = rgs.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); nb];
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b].push(terminals[i]);
        }
        out.push(Partition::canonical(blocks));
        // next restricted growth string
        let mut i = n;
        loop {
            if i <= 1 {
                return out;
            }
            i -= 1;
            let prefix_max = rgs[..i].iter().copied().max().unwrap_or(0);
            if rgs[i] <= prefix_max {
                rgs[i] += 1;
                for r in rgs.iter_mut().skip(i + 1) {
                    *r = 0;
                }
                break;
            }
        }
    }
}

/// A set of unordered terminal pairs to be separated.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CutRequests {
    pairs: BTreeSet<(VertexId, VertexId)>,
}

impl CutRequests {
    pub fn new<I: IntoIterator<Item = (VertexId, VertexId)>>(
        pairs: I,
        terminals: &[VertexId],
    ) -> Result<Self> {
        let mut out = BTreeSet::new();
        for (u, v) in pairs {
            if u == v {
                return Err(Error::input(format!("cut request {{{u},{v}}} is not a pair")));
            }
            if !terminals.contains(&u) || !terminals.contains(&v) {
                return Err(Error::input(format!("cut request {{{u},{v}}} leaves T")));
            }
            out.insert(if u < v { (u, v) } else { (v, u) });
        }
        Ok(CutRequests { pairs: out })
    }

    pub fn pairs(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}
