//! Linear matroid representations: uniform, truncated graphic, edge-cut
//! gammoid, and disjoint unions.

use std::collections::BTreeSet;

use rand::Rng;

use crate::error::{Error, Result};
use crate::ffield::{Matrix, PrimeField};
use crate::flow::FlowNetwork;
use crate::netgraph::{EdgeId, TerminalNetwork};

/// Ground-set label of one column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    /// An edge, or the line-graph node `z_e`.
    Edge(EdgeId),
    /// The sink-only copy `z_e'`.
    Sink(EdgeId),
    /// A plain position, for matroids over `0..m`.
    Index(usize),
}

/// A matrix whose columns are labeled by ground elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatroidRep {
    matrix: Matrix,
    ground: Vec<Element>,
    rank: usize,
}

impl MatroidRep {
    pub fn new(matrix: Matrix, ground: Vec<Element>, rank: usize) -> Result<Self> {
        if matrix.cols() != ground.len() {
            return Err(Error::input("column count differs from ground size"));
        }
        if ground.iter().collect::<BTreeSet<_>>().len() != ground.len() {
            return Err(Error::input("duplicate ground label"));
        }
        if matrix.rank() > rank {
            return Err(Error::input("matrix rank exceeds declared rank"));
        }
        Ok(MatroidRep {
            matrix,
            ground,
            rank,
        })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn ground(&self) -> &[Element] {
        &self.ground
    }

    /// Declared rank, an upper bound on the matrix rank.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn field(&self) -> PrimeField {
        self.matrix.field()
    }

    pub fn column_of(&self, x: Element) -> Option<usize> {
        self.ground.iter().position(|&g| g == x)
    }

    pub fn is_independent(&self, cols: &[usize]) -> bool {
        cols.len() <= self.matrix.rows() && self.matrix.select_columns(cols).rank() == cols.len()
    }

    /// Independence of a labeled subset; unknown labels are an input error.
    pub fn is_independent_set(&self, xs: &[Element]) -> Result<bool> {
        let cols = xs
            .iter()
            .map(|&x| {
                self.column_of(x)
                    .ok_or_else(|| Error::input(format!("{x:?} not in ground set")))
            })
            .collect::<Result<Vec<_>>>()?;
        let distinct: BTreeSet<_> = cols.iter().collect();
        Ok(distinct.len() == cols.len() && self.is_independent(&cols))
    }

    /// Replaces the ground labels, keeping columns in place.
    pub fn relabel(self, ground: Vec<Element>) -> Result<Self> {
        Self::new(self.matrix, ground, self.rank)
    }
}

/// `r × m` Vandermonde matrix on points `1..=m`: the uniform matroid `U(m, r)`.
pub fn uniform_rep(m: usize, r: usize, field: PrimeField) -> Result<MatroidRep> {
    if r > m {
        return Err(Error::input(format!("uniform rank {r} exceeds ground size {m}")));
    }
    field.require_larger_than(m as u64)?;
    let mut a = Matrix::zeros(field, r, m);
    for j in 0..m {
        let x = j as u64 + 1;
        let mut pw = 1;
        for i in 0..r {
            a.set(i, j, pw);
            pw = field.mul(pw, x);
        }
    }
    MatroidRep::new(a, (0..m).map(Element::Index).collect(), r)
}

/// Signed incidence matrix, lower vertex id `+1`, columns in edge-id order.
pub fn signed_incidence(g: &TerminalNetwork, field: PrimeField) -> Matrix {
    let ix = g.indexed();
    let mut a = Matrix::zeros(field, ix.n(), ix.m());
    for (j, &(u, v)) in ix.edges.iter().enumerate() {
        a.set(u, j, 1);
        a.set(v, j, field.neg(1));
    }
    a
}

/// The `r`-truncated graphic matroid of `g`, by random projection of the
/// signed incidence matrix.
///
/// The projection has `min(r, n - #components)` rows; at or above the rank of
/// the graphic matroid truncation changes nothing, so the extra rows are
/// dropped.
pub fn graphic_rep<R: Rng + ?Sized>(
    g: &TerminalNetwork,
    r: usize,
    field: PrimeField,
    rng: &mut R,
) -> Result<MatroidRep> {
    if r == 0 {
        return Err(Error::input("graphic rank cap must be positive"));
    }
    let full = g.num_vertices() - g.components().len();
    let rows = r.min(full);
    let proj = Matrix::random(field, rng, rows, g.num_vertices());
    let a = proj.mul(&signed_incidence(g, field))?;
    let ground = g.edges().map(|(e, _, _)| Element::Edge(e)).collect();
    MatroidRep::new(a, ground, rows)
}

/// Directed line graph with sink-only copies.
///
/// Node `i < m` is `z_e` for the i-th edge in id order; node `m + i` is its
/// sink-only copy `z_e'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammoidDigraph {
    pub edge_ids: Vec<EdgeId>,
    pub arcs: Vec<(usize, usize)>,
    pub sources: Vec<usize>,
}

impl GammoidDigraph {
    pub fn num_edges(&self) -> usize {
        self.edge_ids.len()
    }

    pub fn num_nodes(&self) -> usize {
        2 * self.edge_ids.len()
    }

    pub fn label(&self, node: usize) -> Element {
        let m = self.num_edges();
        if node < m {
            Element::Edge(self.edge_ids[node])
        } else {
            Element::Sink(self.edge_ids[node - m])
        }
    }

    pub fn node_of(&self, x: Element) -> Option<usize> {
        match x {
            Element::Edge(e) => self.edge_ids.iter().position(|&f| f == e),
            Element::Sink(e) => self
                .edge_ids
                .iter()
                .position(|&f| f == e)
                .map(|i| i + self.num_edges()),
            Element::Index(_) => None,
        }
    }
}

pub fn build_edge_cut_gammoid_digraph(g: &TerminalNetwork) -> GammoidDigraph {
    let ix = g.indexed();
    let m = ix.m();
    let mut adjacent = BTreeSet::new();
    for inc in &ix.adj {
        for (a, &(_, e)) in inc.iter().enumerate() {
            for &(_, f) in &inc[a + 1..] {
                if e != f {
                    adjacent.insert((e.min(f), e.max(f)));
                }
            }
        }
    }
    let mut arcs = Vec::with_capacity(4 * adjacent.len());
    for &(e, f) in &adjacent {
        arcs.extend([(e, f), (f, e), (e, m + f), (f, m + e)]);
    }
    let sources = (0..m)
        .filter(|&i| {
            let (u, v) = ix.edges[i];
            ix.is_terminal[u] || ix.is_terminal[v]
        })
        .collect();
    GammoidDigraph {
        edge_ids: ix.edge_ids.clone(),
        arcs,
        sources,
    }
}

/// Random representation of the gammoid of `d` over `E ∪ E'`.
///
/// The strict gammoid is the dual of the transversal matroid presented by
/// `{v} ∪ N⁻(v)` for each non-source node `v`. That transversal matroid is
/// represented by a random pattern matrix whose non-source block is brought
/// to the identity, and the standard-form dual is read off. A singular block
/// reports [`Error::Degenerate`].
pub fn gammoid_rep<R: Rng + ?Sized>(
    d: &GammoidDigraph,
    field: PrimeField,
    rng: &mut R,
) -> Result<MatroidRep> {
    let nodes = d.num_nodes();
    let is_source: Vec<bool> = {
        let mut s = vec![false; nodes];
        for &v in &d.sources {
            s[v] = true;
        }
        s
    };
    let rest: Vec<usize> = (0..nodes).filter(|&v| !is_source[v]).collect();
    let src = &d.sources;
    let mut row_of = vec![usize::MAX; nodes];
    for (i, &v) in rest.iter().enumerate() {
        row_of[v] = i;
    }
    // columns: non-sources first (in `rest` order), then sources
    let mut col_of = vec![0; nodes];
    for (j, &v) in rest.iter().chain(src).enumerate() {
        col_of[v] = j;
    }
    let mut pattern = Matrix::zeros(field, rest.len(), nodes);
    for &v in &rest {
        pattern.set(row_of[v], col_of[v], field.random_nonzero(rng));
    }
    for &(u, v) in &d.arcs {
        if !is_source[v] {
            pattern.set(row_of[v], col_of[u], field.random_nonzero(rng));
        }
    }
    let r = rest.len();
    let square = pattern.select_columns(&(0..r).collect::<Vec<_>>());
    let tail = pattern.select_columns(&(r..nodes).collect::<Vec<_>>());
    let q = square
        .solve(&tail)
        .ok_or_else(|| Error::Degenerate("transversal pattern block is singular".into()))?;
    // dual of [I | Q] is [-Qᵀ | I]
    let mut dual = Matrix::zeros(field, src.len(), nodes);
    for (v, &c) in col_of.iter().enumerate() {
        if is_source[v] {
            dual.set(c - r, v, 1);
        } else {
            for i in 0..src.len() {
                dual.set(i, v, field.neg(q.get(c, i)));
            }
        }
    }
    let ground = (0..nodes).map(|v| d.label(v)).collect();
    MatroidRep::new(dual, ground, src.len())
}

/// Whether `xs` is linked from the sources by vertex-disjoint paths.
pub fn independence_by_flow(d: &GammoidDigraph, xs: &[Element]) -> Result<bool> {
    let nodes = d.num_nodes();
    let targets = xs
        .iter()
        .map(|&x| {
            d.node_of(x)
                .ok_or_else(|| Error::input(format!("{x:?} not a gammoid node")))
        })
        .collect::<Result<BTreeSet<_>>>()?;
    if targets.len() != xs.len() {
        return Ok(false);
    }
    if targets.len() > d.sources.len() {
        return Ok(false);
    }
    // node v splits into v (in) and nodes + v (out)
    let s = 2 * nodes;
    let t = s + 1;
    let mut f = FlowNetwork::new(2 * nodes + 2);
    for v in 0..nodes {
        f.add_arc(v, nodes + v, 1);
    }
    for &(u, v) in &d.arcs {
        f.add_arc(nodes + u, v, 1);
    }
    for &v in &d.sources {
        f.add_arc(s, v, 1);
    }
    for &x in &targets {
        f.add_arc(nodes + x, t, 1);
    }
    Ok(f.max_flow(s, t) == targets.len() as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LayerRole {
    Gammoid,
    Graphic,
    Uniform,
}

/// Ordered disjoint union of matroids over one field.
#[derive(Debug, Clone)]
pub struct LayeredMatroid {
    layers: Vec<MatroidRep>,
    roles: Vec<LayerRole>,
}

pub fn disjoint_union(layers: Vec<(LayerRole, MatroidRep)>) -> Result<LayeredMatroid> {
    let Some(first) = layers.first() else {
        return Err(Error::input("disjoint union of no layers"));
    };
    let field = first.1.field();
    if layers.iter().any(|(_, l)| l.field() != field) {
        return Err(Error::input("layers over different fields"));
    }
    let (roles, layers) = layers.into_iter().unzip();
    Ok(LayeredMatroid { layers, roles })
}

impl LayeredMatroid {
    pub fn layers(&self) -> &[MatroidRep] {
        &self.layers
    }

    pub fn roles(&self) -> &[LayerRole] {
        &self.roles
    }

    pub fn field(&self) -> PrimeField {
        self.layers[0].field()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.layers.iter().map(MatroidRep::rank).collect()
    }

    pub fn num_columns(&self) -> usize {
        self.layers.iter().map(|l| l.ground().len()).sum()
    }

    /// Independence of `(layer, column)` pairs: independent in every layer.
    pub fn is_independent(&self, xs: &[(usize, usize)]) -> bool {
        (0..self.layers.len()).all(|i| {
            let cols: Vec<usize> = xs.iter().filter(|x| x.0 == i).map(|x| x.1).collect();
            let distinct: BTreeSet<_> = cols.iter().collect();
            distinct.len() == cols.len() && self.layers[i].is_independent(&cols)
        })
    }

    /// Block-diagonal matrix; columns follow the layer order.
    pub fn block_matrix(&self) -> Matrix {
        let rows = self.layers.iter().map(|l| l.matrix().rows()).sum();
        let mut out = Matrix::zeros(self.field(), rows, self.num_columns());
        let (mut r0, mut c0) = (0, 0);
        for l in &self.layers {
            let a = l.matrix();
            for i in 0..a.rows() {
                for j in 0..a.cols() {
                    out.set(r0 + i, c0 + j, a.get(i, j));
                }
            }
            r0 += a.rows();
            c0 += a.cols();
        }
        out
    }
}
