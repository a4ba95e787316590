//! Dense-case marking: a representative set over the layered matroid
//! picks out a set of edges that contains every essential edge.

use rand::Rng;

use crate::error::{Error, Result};
use crate::ffield::PrimeField;
use crate::matroids::{
    build_edge_cut_gammoid_digraph, disjoint_union, gammoid_rep, graphic_rep, uniform_rep, Element,
    LayerRole, LayeredMatroid, MatroidRep,
};
use crate::netgraph::{EdgeSet, TerminalNetwork, VertexSet};
use crate::repset::representative_set_product;

pub const DEFAULT_I0: u32 = 4;
pub const DEFAULT_GRAPHIC_CEILING: usize = 64;
pub const DEFAULT_DIM_LIMIT: usize = 1 << 18;
const GAMMOID_ATTEMPTS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MarkParams {
    pub c: u32,
    pub i0: u32,
    /// Explicit graphic rank; `None` means `k^(c - i0)` clamped to the ceiling.
    pub graphic_cap: Option<usize>,
    pub graphic_ceiling: usize,
    pub field: PrimeField,
    /// Largest tensor dimension attempted.
    pub dim_limit: usize,
}

/// Smallest `c ≥ i0` with `(4/3)^c ≥ k^(i0+1)`.
pub fn default_c(k: usize, i0: u32) -> u32 {
    let target = (k as u128).checked_pow(i0 + 1);
    let mut c = i0;
    loop {
        let ok = match (4u128.checked_pow(c), 3u128.checked_pow(c), target) {
            (Some(a), Some(b), Some(t)) => match b.checked_mul(t) {
                Some(bt) => a >= bt,
                None => false,
            },
            _ => c as f64 * (4f64 / 3f64).ln() >= (i0 + 1) as f64 * (k.max(1) as f64).ln(),
        };
        if ok {
            return c;
        }
        c += 1;
    }
}

impl MarkParams {
    /// The default schedule for terminal capacity `k`.
    pub fn defaults_for(k: usize) -> Self {
        MarkParams {
            c: default_c(k, DEFAULT_I0),
            i0: DEFAULT_I0,
            graphic_cap: None,
            graphic_ceiling: DEFAULT_GRAPHIC_CEILING,
            field: PrimeField::default(),
            dim_limit: DEFAULT_DIM_LIMIT,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.i0 < 2 {
            return Err(Error::input("i0 must be at least 2"));
        }
        if self.i0 > self.c {
            return Err(Error::input(format!("i0 = {} exceeds c = {}", self.i0, self.c)));
        }
        if self.graphic_cap == Some(0) || self.graphic_ceiling == 0 {
            return Err(Error::input("graphic rank cap must be positive"));
        }
        Ok(())
    }

    /// Graphic-layer rank requested for terminal capacity `k`.
    pub fn graphic_rank(&self, k: usize) -> usize {
        self.graphic_cap
            .unwrap_or_else(|| k.saturating_pow(self.c - self.i0).min(self.graphic_ceiling))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkResult {
    pub marked: EdgeSet,
    /// Row counts of the layers, in layer order.
    pub ranks: Vec<usize>,
    pub tensor_dim: usize,
    /// Edges marked because their tuple was dependent.
    pub dependent: usize,
}

/// `i0 - 1` gammoid layers, then the truncated graphic layer, then `U(E, k)`.
pub fn build_marking_matroid<R: Rng + ?Sized>(
    g: &TerminalNetwork,
    params: &MarkParams,
    rng: &mut R,
) -> Result<LayeredMatroid> {
    params.validate()?;
    let k = g.k();
    if k == 0 {
        return Err(Error::input("marking needs cap(T) ≥ 1"));
    }
    let m = g.num_edges();
    params.field.require_larger_than(m as u64)?;
    let d = build_edge_cut_gammoid_digraph(g);
    let mut layers = Vec::new();
    for _ in 1..params.i0 {
        let rep = (0..GAMMOID_ATTEMPTS)
            .map(|_| gammoid_rep(&d, params.field, rng))
            .find(|r| !matches!(r, Err(Error::Degenerate(_))))
            .unwrap_or_else(|| Err(Error::Degenerate("gammoid representation kept failing".into())))?;
        layers.push((LayerRole::Gammoid, rep));
    }
    layers.push((
        LayerRole::Graphic,
        graphic_rep(g, params.graphic_rank(k), params.field, rng)?,
    ));
    let ground: Vec<Element> = g.edges().map(|(e, _, _)| Element::Edge(e)).collect();
    layers.push((
        LayerRole::Uniform,
        uniform_rep(m, k.min(m), params.field)?.relabel(ground)?,
    ));
    disjoint_union(layers)
}

fn tuple_columns(m: &LayeredMatroid, e: crate::netgraph::EdgeId) -> Vec<usize> {
    m.layers()
        .iter()
        .zip(m.roles())
        .map(|(l, role)| {
            let x = match role {
                LayerRole::Gammoid => Element::Sink(e),
                LayerRole::Graphic | LayerRole::Uniform => Element::Edge(e),
            };
            l.column_of(x).expect("every edge labels a column in every layer")
        })
        .collect()
}

fn column_is_zero(l: &MatroidRep, j: usize) -> bool {
    (0..l.matrix().rows()).all(|i| l.matrix().get(i, j) == 0)
}

/// Marks edges: survivors of the representative set over `{t(e)}`, plus every
/// edge whose tuple is dependent.
pub fn mark<R: Rng + ?Sized>(g: &TerminalNetwork, params: &MarkParams, rng: &mut R) -> Result<MarkResult> {
    let m = build_marking_matroid(g, params, rng)?;
    let ranks: Vec<usize> = m.layers().iter().map(|l| l.matrix().rows()).collect();
    let tensor_dim = ranks.iter().try_fold(1usize, |a, &r| a.checked_mul(r)).unwrap_or(usize::MAX);
    if tensor_dim > params.dim_limit {
        return Err(Error::SizeLimit(format!(
            "tensor dimension {tensor_dim} exceeds {}; lower c, i0 or the graphic cap",
            params.dim_limit
        )));
    }
    let mut marked = EdgeSet::new();
    let mut candidates = Vec::new();
    let mut owners = Vec::new();
    for (e, _, _) in g.edges() {
        let cols = tuple_columns(&m, e);
        if cols.iter().zip(m.layers()).any(|(&j, l)| column_is_zero(l, j)) {
            marked.insert(e);
        } else {
            candidates.push(cols);
            owners.push(e);
        }
    }
    let dependent = marked.len();
    for i in representative_set_product(&m, &candidates, params.dim_limit)? {
        marked.insert(owners[i]);
    }
    Ok(MarkResult {
        marked,
        ranks,
        tensor_dim,
        dependent,
    })
}

/// Components of `G - x` with their T-capacities in `G`, sorted by
/// non-increasing capacity, larger components first on ties, then by
/// smallest vertex.
pub fn components_by_t_capacity(g: &TerminalNetwork, x: &EdgeSet) -> Vec<(VertexSet, usize)> {
    let mut comps: Vec<(VertexSet, usize)> = g
        .components_without(x)
        .into_iter()
        .map(|c| {
            let cap = g.t_capacity(&c).expect("component of g");
            (c, cap)
        })
        .collect();
    comps.sort_by(|a, b| {
        b.1.cmp(&a.1)
            .then(b.0.len().cmp(&a.0.len()))
            .then(a.0.first().cmp(&b.0.first()))
    });
    comps
}

/// Whether the components from position `i0` on (1-based) hold at most
/// `bound` vertices in total.
pub fn covered_within(g: &TerminalNetwork, x: &EdgeSet, i0: u32, bound: usize) -> bool {
    let tail: usize = components_by_t_capacity(g, x)
        .iter()
        .skip(i0.saturating_sub(1) as usize)
        .map(|(c, _)| c.len())
        .sum();
    tail <= bound
}

/// The covering condition with bound `k^(c - i0)`.
pub fn covering_condition_holds(g: &TerminalNetwork, x: &EdgeSet, i0: u32, c: u32) -> bool {
    covered_within(g, x, i0, g.k().saturating_pow(c.saturating_sub(i0)))
}
