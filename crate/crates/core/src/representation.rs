//! Finite-dimensional representations of quivers (non-degenerate modules over
//! `KQ`) and raw modules with arbitrary generator actions.
//!
//! A representation stores a rank per vertex and a matrix per edge of shape
//! `dims[target] x dims[source]`. Vectors of the total space `⊕_v K^{d_v}`
//! are laid out vertex by vertex in declaration order.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgElem, AlgebraError, PathAlgebra};
use crate::linalg::{column_span, kernel, vec_is_zero, Matrix, Span, Vector};
use crate::quiver::{Path, Vertex};
use crate::ring::{RingError, RingSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("matrix for edge {edge:?} has shape {got:?}, expected {expected:?}")]
    Shape {
        edge: String,
        got: (usize, usize),
        expected: (usize, usize),
    },
    #[error("wrong number of {what}: got {got}, expected {expected}")]
    Count {
        what: &'static str,
        got: usize,
        expected: usize,
    },
    #[error("modules live over different path algebras")]
    AmbientMismatch,
    #[error("the element is not idempotent")]
    NotIdempotent,
    #[error(
        "submodule is not a free direct summand at vertex {0:?}; only free quotients are supported"
    )]
    NotFree(String),
    #[error("subspace is not closed under the action of edge {0:?}")]
    NotSubmodule(String),
    #[error("the quiver has an oriented cycle; the corner algebra is infinite-dimensional")]
    CyclicQuiver,
    #[error("raw module relation violated: {0}")]
    Relation(String),
    #[error("base ring {0} is not a field")]
    NotAField(RingSpec),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

fn same_algebra(a: &Arc<PathAlgebra>, b: &Arc<PathAlgebra>) -> Result<(), RepError> {
    if Arc::ptr_eq(a, b) || **a == **b {
        Ok(())
    } else {
        Err(RepError::AmbientMismatch)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Representation {
    algebra: Arc<PathAlgebra>,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl Representation {
    pub fn new(
        algebra: &Arc<PathAlgebra>,
        dims: Vec<usize>,
        maps: Vec<Matrix>,
    ) -> Result<Self, RepError> {
        let q = &algebra.quiver;
        if dims.len() != q.vertex_count() {
            return Err(RepError::Count {
                what: "vertex dimensions",
                got: dims.len(),
                expected: q.vertex_count(),
            });
        }
        if maps.len() != q.edge_count() {
            return Err(RepError::Count {
                what: "edge matrices",
                got: maps.len(),
                expected: q.edge_count(),
            });
        }
        for (e, m) in q.edges().iter().zip(&maps) {
            let expected = (dims[e.dst], dims[e.src]);
            if (m.rows(), m.cols()) != expected {
                return Err(RepError::Shape {
                    edge: e.id.clone(),
                    got: (m.rows(), m.cols()),
                    expected,
                });
            }
        }
        Ok(Representation {
            algebra: algebra.clone(),
            dims,
            maps,
        })
    }

    pub fn zero(algebra: &Arc<PathAlgebra>) -> Self {
        let q = &algebra.quiver;
        let maps = q
            .edges()
            .iter()
            .map(|_| Matrix::zeros(algebra.ring, 0, 0))
            .collect();
        Representation {
            algebra: algebra.clone(),
            dims: vec![0; q.vertex_count()],
            maps,
        }
    }

    /// The simple module `K` at one vertex.
    pub fn simple(algebra: &Arc<PathAlgebra>, v: Vertex) -> Self {
        let q = &algebra.quiver;
        let mut dims = vec![0; q.vertex_count()];
        dims[v] = 1;
        let maps = q
            .edges()
            .iter()
            .map(|e| Matrix::zeros(algebra.ring, dims[e.dst], dims[e.src]))
            .collect();
        Representation {
            algebra: algebra.clone(),
            dims,
            maps,
        }
    }

    pub fn algebra(&self) -> &Arc<PathAlgebra> {
        &self.algebra
    }

    pub fn ring(&self) -> RingSpec {
        self.algebra.ring
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn map(&self, edge: usize) -> &Matrix {
        &self.maps[edge]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.dims
            .iter()
            .map(|d| {
                let o = acc;
                acc += d;
                o
            })
            .collect()
    }

    fn ambient_check(&self, e: &AlgElem) -> Result<(), RepError> {
        same_algebra(&self.algebra, e.algebra())
    }

    /// Block matrix of a path: `dims[t(p)] x dims[s(p)]`.
    pub fn path_block(&self, p: &Path) -> Matrix {
        let ring = self.ring();
        match p {
            Path::Trivial(v) => Matrix::identity(ring, self.dims[*v]),
            Path::Edges(es) => {
                let mut acc = self.maps[es[0]].clone();
                for &a in &es[1..] {
                    acc = self.maps[a].mul(ring, &acc);
                }
                acc
            }
        }
    }

    /// Action of an algebra element on the total space.
    pub fn action_matrix(&self, x: &AlgElem) -> Result<Matrix, RepError> {
        self.ambient_check(x)?;
        let ring = self.ring();
        let q = &self.algebra.quiver;
        let n = self.total_dim();
        let off = self.offsets();
        let mut out = Matrix::zeros(ring, n, n);
        for (p, c) in x.terms() {
            let (s, t) = (p.source(q), p.target(q));
            let block = self.path_block(p);
            for i in 0..block.rows() {
                for j in 0..block.cols() {
                    let b = block.get(i, j);
                    if ring.is_zero(b) {
                        continue;
                    }
                    let (r, col) = (off[t] + i, off[s] + j);
                    let v = ring.add(out.get(r, col), &ring.mul(c, b));
                    out.set(r, col, v);
                }
            }
        }
        Ok(out)
    }

    /// Action matrix of an edge on the total space.
    pub fn edge_action(&self, edge: usize) -> Matrix {
        let x = AlgElem::term(&self.algebra, Path::Edges(vec![edge]), self.ring().one())
            .expect("edge is valid");
        self.action_matrix(&x).expect("same ambient")
    }

    /// Components of a total-space vector at one vertex.
    pub fn component(&self, x: &[crate::ring::RingElem], v: Vertex) -> Vector {
        let off = self.offsets()[v];
        x[off..off + self.dims[v]].to_vec()
    }

    /// Embed a vertex-local vector into the total space.
    pub fn embed(&self, v: Vertex, local: &[crate::ring::RingElem]) -> Vector {
        let ring = self.ring();
        let mut out = vec![ring.zero(); self.total_dim()];
        let off = self.offsets()[v];
        out[off..off + local.len()].clone_from_slice(local);
        out
    }

    pub fn to_raw(&self) -> RawModule {
        let q = &self.algebra.quiver;
        let idem = (0..q.vertex_count())
            .map(|v| {
                self.action_matrix(&AlgElem::vertex(&self.algebra, v).unwrap())
                    .unwrap()
            })
            .collect();
        let edges = (0..q.edge_count()).map(|a| self.edge_action(a)).collect();
        RawModule {
            algebra: self.algebra.clone(),
            rank: self.total_dim(),
            idem,
            edges,
        }
    }

    /// The whole module as a submodule of itself.
    pub fn whole(&self) -> Submodule {
        Submodule {
            spans: self
                .dims
                .iter()
                .map(|&d| Span::full(self.ring(), d))
                .collect(),
        }
    }

    pub fn zero_submodule(&self) -> Submodule {
        Submodule {
            spans: self
                .dims
                .iter()
                .map(|&d| Span::zero(self.ring(), d))
                .collect(),
        }
    }

    pub fn to_json(&self) -> RepresentationJson {
        let q = &self.algebra.quiver;
        let ring = self.ring();
        RepresentationJson {
            dims: q
                .vertex_ids()
                .iter()
                .cloned()
                .zip(self.dims.iter().copied())
                .collect(),
            edges: q
                .edges()
                .iter()
                .zip(&self.maps)
                .map(|(e, m)| {
                    let rows = (0..m.rows())
                        .map(|i| m.row(i).iter().map(|x| ring.format(x)).collect())
                        .collect();
                    (e.id.clone(), rows)
                })
                .collect(),
        }
    }

    pub fn from_json(algebra: &Arc<PathAlgebra>, j: &RepresentationJson) -> Result<Self, RepError> {
        let q = &algebra.quiver;
        let ring = algebra.ring;
        let mut dims = vec![0; q.vertex_count()];
        for (id, &d) in &j.dims {
            let v = q
                .vertex_index(id)
                .map_err(|e| RepError::Algebra(AlgebraError::Quiver(e)))?;
            dims[v] = d;
        }
        let mut maps = Vec::with_capacity(q.edge_count());
        for e in q.edges() {
            let expected = (dims[e.dst], dims[e.src]);
            let rows: &[Vec<String>] = j.edges.get(&e.id).map(Vec::as_slice).unwrap_or(&[]);
            // a missing edge entry means the zero map
            if rows.is_empty() && !j.edges.contains_key(&e.id) {
                maps.push(Matrix::zeros(ring, expected.0, expected.1));
                continue;
            }
            let cols = rows.first().map_or(expected.1, Vec::len);
            if rows.len() != expected.0
                || rows.iter().any(|r| r.len() != cols)
                || cols != expected.1
            {
                return Err(RepError::Shape {
                    edge: e.id.clone(),
                    got: (rows.len(), cols),
                    expected,
                });
            }
            let data = rows
                .iter()
                .flatten()
                .map(|s| ring.parse(s))
                .collect::<Result<Vec<_>, _>>()?;
            maps.push(Matrix::from_rows(expected.0, expected.1, data));
        }
        for id in j.edges.keys() {
            q.edge_index(id)
                .map_err(|e| RepError::Algebra(AlgebraError::Quiver(e)))?;
        }
        Representation::new(algebra, dims, maps)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationJson {
    pub dims: BTreeMap<String, usize>,
    pub edges: BTreeMap<String, Vec<Vec<String>>>,
}

/// A module over `KQ` given by arbitrary generator actions on `K^rank`,
/// possibly degenerate (the vertex idempotents need not sum to the identity).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawModule {
    algebra: Arc<PathAlgebra>,
    rank: usize,
    idem: Vec<Matrix>,
    edges: Vec<Matrix>,
}

impl RawModule {
    /// Checks that the `e_v` act by pairwise orthogonal idempotents and that
    /// every edge satisfies `A_a = E_{t(a)} A_a E_{s(a)}`.
    pub fn new(
        algebra: &Arc<PathAlgebra>,
        rank: usize,
        idem: Vec<Matrix>,
        edges: Vec<Matrix>,
    ) -> Result<Self, RepError> {
        let q = &algebra.quiver;
        let ring = algebra.ring;
        if idem.len() != q.vertex_count() {
            return Err(RepError::Count {
                what: "vertex actions",
                got: idem.len(),
                expected: q.vertex_count(),
            });
        }
        if edges.len() != q.edge_count() {
            return Err(RepError::Count {
                what: "edge actions",
                got: edges.len(),
                expected: q.edge_count(),
            });
        }
        for (i, m) in idem.iter().chain(&edges).enumerate() {
            if (m.rows(), m.cols()) != (rank, rank) {
                return Err(RepError::Shape {
                    edge: format!("generator {i}"),
                    got: (m.rows(), m.cols()),
                    expected: (rank, rank),
                });
            }
        }
        for (v, ev) in idem.iter().enumerate() {
            for (w, ew) in idem.iter().enumerate() {
                let prod = ev.mul(ring, ew);
                let ok = if v == w {
                    prod == *ev
                } else {
                    prod.is_zero(ring)
                };
                if !ok {
                    return Err(RepError::Relation(format!(
                        "e_{} e_{} has the wrong action",
                        q.vertex_id(v),
                        q.vertex_id(w)
                    )));
                }
            }
        }
        for (e, m) in q.edges().iter().zip(&edges) {
            let sandwiched = idem[e.dst].mul(ring, m).mul(ring, &idem[e.src]);
            if sandwiched != *m {
                return Err(RepError::Relation(format!(
                    "edge {} is not e_t a e_s",
                    e.id
                )));
            }
        }
        Ok(RawModule {
            algebra: algebra.clone(),
            rank,
            idem,
            edges,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

/// The non-degenerate part `sum_v e_v M` of a raw module, as a representation.
pub fn nu(m: &RawModule) -> Result<Representation, RepError> {
    let ring = m.algebra.ring;
    let q = &m.algebra.quiver;
    let images: Vec<Span> = m.idem.iter().map(|e| column_span(ring, e)).collect();
    for (v, s) in images.iter().enumerate() {
        if !s.has_unit_pivots() {
            return Err(RepError::NotFree(q.vertex_id(v).to_string()));
        }
    }
    let dims: Vec<usize> = images.iter().map(|s| s.rows().len()).collect();
    let maps = q
        .edges()
        .iter()
        .zip(&m.edges)
        .map(|(e, a)| {
            let cols: Vec<Vector> = images[e.src]
                .rows()
                .iter()
                .map(|b| {
                    images[e.dst]
                        .coordinates(&a.apply(ring, b))
                        .expect("edge image lies in the target vertex image")
                })
                .collect();
            Matrix::from_columns(ring, dims[e.dst], &cols)
        })
        .collect();
    Representation::new(&m.algebra, dims, maps)
}

/// A vertex-graded subspace, one span per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Submodule {
    spans: Vec<Span>,
}

impl Submodule {
    pub fn from_spans(spans: Vec<Span>) -> Self {
        Submodule { spans }
    }

    pub fn spans(&self) -> &[Span] {
        &self.spans
    }

    pub fn at(&self, v: Vertex) -> &Span {
        &self.spans[v]
    }

    /// Per-vertex ranks; `None` where the span is not a free summand.
    pub fn dims(&self) -> Vec<Option<usize>> {
        self.spans.iter().map(Span::rank).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.spans.iter().all(Span::is_zero)
    }

    pub fn is_everything(&self) -> bool {
        self.spans.iter().all(Span::is_full)
    }

    /// First edge whose map does not preserve the subspace.
    pub fn closure_violation(&self, m: &Representation) -> Option<usize> {
        let ring = m.ring();
        m.algebra.quiver.edges().iter().position(|e| {
            let a = m.map(m.algebra.quiver.edge_index(&e.id).unwrap());
            self.spans[e.src]
                .rows()
                .iter()
                .any(|b| !self.spans[e.dst].contains(&a.apply(ring, b)))
        })
    }

    pub fn is_closed(&self, m: &Representation) -> bool {
        self.closure_violation(m).is_none()
    }

    pub fn contains(&self, other: &Submodule) -> bool {
        self.spans
            .iter()
            .zip(&other.spans)
            .all(|(a, b)| a.contains_span(b))
    }

    /// Total-space generators (each span's rows, embedded).
    pub fn total_generators(&self, m: &Representation) -> Vec<Vector> {
        self.spans
            .iter()
            .enumerate()
            .flat_map(|(v, s)| s.rows().iter().map(move |r| m.embed(v, r)))
            .collect()
    }

    pub fn to_json(&self, m: &Representation) -> SubmoduleJson {
        let ring = m.ring();
        SubmoduleJson {
            basis: m
                .algebra
                .quiver
                .vertex_ids()
                .iter()
                .zip(&self.spans)
                .map(|(id, s)| {
                    let rows = s
                        .rows()
                        .iter()
                        .map(|r| r.iter().map(|x| ring.format(x)).collect())
                        .collect();
                    (id.clone(), rows)
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubmoduleJson {
    pub basis: BTreeMap<String, Vec<Vec<String>>>,
}

/// The smallest submodule containing the given total-space vectors: project
/// to each vertex, then close under the edge maps.
pub fn generated_submodule(m: &Representation, vectors: &[Vector]) -> Submodule {
    let ring = m.ring();
    let q = &m.algebra.quiver;
    let mut spans: Vec<Span> = (0..q.vertex_count())
        .map(|v| Span::new(ring, m.dims[v], vectors.iter().map(|x| m.component(x, v))))
        .collect();
    // worklist over vertices whose span grew
    let mut dirty: Vec<bool> = vec![true; q.vertex_count()];
    while let Some(v) = dirty.iter().position(|&d| d) {
        dirty[v] = false;
        for &a in q.out_edges(v) {
            let t = q.edge(a).dst;
            let images: Vec<Vector> = spans[v]
                .rows()
                .iter()
                .map(|b| m.maps[a].apply(ring, b))
                .filter(|y| !spans[t].contains(y))
                .collect();
            if !images.is_empty() {
                spans[t] = Span::new(
                    ring,
                    m.dims[t],
                    spans[t].rows().iter().cloned().chain(images),
                );
                dirty[t] = true;
            }
        }
    }
    Submodule { spans }
}

fn check_idempotent(e: &AlgElem) -> Result<(), RepError> {
    if e.is_idempotent() {
        Ok(())
    } else {
        Err(RepError::NotIdempotent)
    }
}

/// `eM`, the image of the action of `e`; isomorphic to `Hom_A(Ae, M)`.
pub fn e_fixed(e: &AlgElem, m: &Representation) -> Result<Span, RepError> {
    m.ambient_check(e)?;
    check_idempotent(e)?;
    Ok(column_span(m.ring(), &m.action_matrix(e)?))
}

/// `Γ_e(M) = AeM`.
pub fn gamma(e: &AlgElem, m: &Representation) -> Result<Submodule, RepError> {
    let em = e_fixed(e, m)?;
    Ok(generated_submodule(m, em.rows()))
}

/// `M = AeM`.
pub fn in_category_e(e: &AlgElem, m: &Representation) -> Result<bool, RepError> {
    Ok(gamma(e, m)?.is_everything())
}

/// A submodule as a representation in its own right, in the echelon bases.
pub fn restrict(m: &Representation, s: &Submodule) -> Result<Representation, RepError> {
    let ring = m.ring();
    let q = &m.algebra.quiver;
    if let Some(a) = s.closure_violation(m) {
        return Err(RepError::NotSubmodule(q.edge(a).id.clone()));
    }
    for (v, span) in s.spans.iter().enumerate() {
        if !span.has_unit_pivots() {
            return Err(RepError::NotFree(q.vertex_id(v).to_string()));
        }
    }
    let dims: Vec<usize> = s.spans.iter().map(|x| x.rows().len()).collect();
    let maps = q
        .edges()
        .iter()
        .enumerate()
        .map(|(a, e)| {
            let cols: Vec<Vector> = s.spans[e.src]
                .rows()
                .iter()
                .map(|b| {
                    s.spans[e.dst]
                        .coordinates(&m.maps[a].apply(ring, b))
                        .expect("closed under the edge map")
                })
                .collect();
            Matrix::from_columns(ring, dims[e.dst], &cols)
        })
        .collect();
    Representation::new(&m.algebra, dims, maps)
}

/// `M / N` with induced maps, in coordinates of the non-pivot columns.
pub fn quotient(m: &Representation, s: &Submodule) -> Result<Representation, RepError> {
    let ring = m.ring();
    let q = &m.algebra.quiver;
    if let Some(a) = s.closure_violation(m) {
        return Err(RepError::NotSubmodule(q.edge(a).id.clone()));
    }
    for (v, span) in s.spans.iter().enumerate() {
        if !span.has_unit_pivots() {
            return Err(RepError::NotFree(q.vertex_id(v).to_string()));
        }
    }
    let free_cols: Vec<Vec<usize>> = s.spans.iter().map(Span::non_pivot_columns).collect();
    let dims: Vec<usize> = free_cols.iter().map(Vec::len).collect();
    let maps = q
        .edges()
        .iter()
        .enumerate()
        .map(|(a, e)| {
            let cols: Vec<Vector> = free_cols[e.src]
                .iter()
                .map(|&c| {
                    let mut unit = vec![ring.zero(); m.dims[e.src]];
                    unit[c] = ring.one();
                    s.spans[e.dst]
                        .quotient_coordinates(&m.maps[a].apply(ring, &unit))
                        .expect("unit pivots")
                })
                .collect();
            Matrix::from_columns(ring, dims[e.dst], &cols)
        })
        .collect();
    Representation::new(&m.algebra, dims, maps)
}

/// A module homomorphism given by one block per vertex (`n_v x m_v`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomMap {
    pub blocks: Vec<Matrix>,
}

impl HomMap {
    /// Block-diagonal matrix on the total spaces.
    pub fn total_matrix(&self, ring: RingSpec) -> Matrix {
        let rows: usize = self.blocks.iter().map(Matrix::rows).sum();
        let cols: usize = self.blocks.iter().map(Matrix::cols).sum();
        let mut out = Matrix::zeros(ring, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in &self.blocks {
            for i in 0..b.rows() {
                for j in 0..b.cols() {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows();
            c0 += b.cols();
        }
        out
    }
}

/// Solution space of the intertwining equations, as a span over the
/// concatenated block entries, with decoded generators.
#[derive(Debug, Clone)]
pub struct HomSpace {
    pub span: Span,
    pub maps: Vec<HomMap>,
}

impl HomSpace {
    /// Dimension over a field (or rank when the solution module is free).
    pub fn dim(&self) -> Option<usize> {
        self.span.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.span.is_zero()
    }
}

/// `Hom_A(M, N)`: families `f_v` with `f_{t(a)} M_a = N_a f_{s(a)}` for all edges.
pub fn hom_space(m: &Representation, n: &Representation) -> Result<HomSpace, RepError> {
    same_algebra(&m.algebra, &n.algebra)?;
    let ring = m.ring();
    let q = &m.algebra.quiver;
    let nv = q.vertex_count();
    // unknown (v, i, j) -> offset_v + i * m_v + j
    let mut var_off = Vec::with_capacity(nv);
    let mut nvars = 0;
    for v in 0..nv {
        var_off.push(nvars);
        nvars += n.dims[v] * m.dims[v];
    }
    let var = |v: Vertex, i: usize, j: usize| var_off[v] + i * m.dims[v] + j;
    let mut equations: Vec<Vector> = Vec::new();
    for (a, e) in q.edges().iter().enumerate() {
        let (s, t) = (e.src, e.dst);
        let (ma, na) = (&m.maps[a], &n.maps[a]);
        for i in 0..n.dims[t] {
            for j in 0..m.dims[s] {
                let mut row = vec![ring.zero(); nvars];
                // (f_t M_a)[i][j] = sum_k f_t[i][k] M_a[k][j]
                for k in 0..m.dims[t] {
                    let c = ma.get(k, j);
                    let x = var(t, i, k);
                    row[x] = ring.add(&row[x], c);
                }
                // - (N_a f_s)[i][j] = - sum_k N_a[i][k] f_s[k][j]
                for k in 0..n.dims[s] {
                    let c = na.get(i, k);
                    let x = var(s, k, j);
                    row[x] = ring.sub(&row[x], c);
                }
                if !vec_is_zero(ring, &row) {
                    equations.push(row);
                }
            }
        }
    }
    let system = Matrix::from_rows(
        equations.len(),
        nvars,
        equations.into_iter().flatten().collect(),
    );
    let span = kernel(ring, &system);
    let maps = span
        .rows()
        .iter()
        .map(|sol| HomMap {
            blocks: (0..nv)
                .map(|v| {
                    let start = var_off[v];
                    let len = n.dims[v] * m.dims[v];
                    Matrix::from_rows(n.dims[v], m.dims[v], sol[start..start + len].to_vec())
                })
                .collect(),
        })
        .collect();
    Ok(HomSpace { span, maps })
}

/// `eM` as a module over the corner algebra `eAe`, for acyclic quivers.
#[derive(Debug, Clone)]
pub struct CornerModule {
    /// Basis of `eAe` (echelonized sandwiches `e p e`).
    pub algebra_basis: Vec<AlgElem>,
    /// `structure[i][j]` = coordinates of `b_i b_j`.
    pub structure: Vec<Vec<Vector>>,
    /// Basis of `eM` in total-space coordinates.
    pub module_basis: Vec<Vector>,
    pub module_span: Span,
    /// Action of each `b_i` on `eM`, in the module basis.
    pub actions: Vec<Matrix>,
}

impl CornerModule {
    pub fn module_dim(&self) -> usize {
        self.module_basis.len()
    }
}

/// Elements spanning `eAe`, echelonized over the (finite) path basis.
fn corner_algebra_basis(e: &AlgElem) -> Result<(Vec<AlgElem>, Vec<Path>, Span), RepError> {
    let alg = e.algebra();
    let q = &alg.quiver;
    if !q.is_acyclic() {
        return Err(RepError::CyclicQuiver);
    }
    let ring = alg.ring;
    let paths = q
        .paths_up_to(q.vertex_count(), usize::MAX)
        .expect("acyclic quivers have finitely many paths");
    let sandwiches: Vec<AlgElem> = paths
        .iter()
        .map(|p| {
            let x = AlgElem::term(alg, p.clone(), ring.one()).unwrap();
            e.mul(&x).unwrap().mul(e).unwrap()
        })
        .collect();
    let to_vec = |x: &AlgElem| -> Vector { paths.iter().map(|p| x.coeff(p)).collect() };
    let span = Span::new(ring, paths.len(), sandwiches.iter().map(to_vec));
    if !span.has_unit_pivots() {
        return Err(RepError::NotFree("eAe".into()));
    }
    let basis = span
        .rows()
        .iter()
        .map(|row| {
            AlgElem::from_terms(alg, paths.iter().cloned().zip(row.iter().cloned())).unwrap()
        })
        .collect();
    Ok((basis, paths, span))
}

pub fn corner_module(e: &AlgElem, m: &Representation) -> Result<CornerModule, RepError> {
    m.ambient_check(e)?;
    check_idempotent(e)?;
    let ring = m.ring();
    let (algebra_basis, paths, alg_span) = corner_algebra_basis(e)?;
    let to_vec = |x: &AlgElem| -> Vector { paths.iter().map(|p| x.coeff(p)).collect() };
    let structure = algebra_basis
        .iter()
        .map(|bi| {
            algebra_basis
                .iter()
                .map(|bj| {
                    alg_span
                        .coordinates(&to_vec(&bi.mul(bj).unwrap()))
                        .expect("eAe is closed under products")
                })
                .collect()
        })
        .collect();
    let module_span = e_fixed(e, m)?;
    if !module_span.has_unit_pivots() {
        return Err(RepError::NotFree("eM".into()));
    }
    let module_basis = module_span.rows().to_vec();
    let actions = algebra_basis
        .iter()
        .map(|b| {
            let act = m.action_matrix(b)?;
            let cols: Vec<Vector> = module_basis
                .iter()
                .map(|x| {
                    module_span
                        .coordinates(&act.apply(ring, x))
                        .expect("eAe maps eM into itself")
                })
                .collect();
            Ok(Matrix::from_columns(ring, module_basis.len(), &cols))
        })
        .collect::<Result<Vec<_>, RepError>>()?;
    Ok(CornerModule {
        algebra_basis,
        structure,
        module_basis,
        module_span,
        actions,
    })
}

/// Linear maps `g: eM -> eN` commuting with every basis element of `eAe`.
/// Both corner modules must come from the same idempotent.
pub fn corner_hom_space(cm: &CornerModule, cn: &CornerModule, ring: RingSpec) -> Span {
    let (dm, dn) = (cm.module_dim(), cn.module_dim());
    let nvars = dn * dm;
    let mut equations: Vec<Vector> = Vec::new();
    for (am, an) in cm.actions.iter().zip(&cn.actions) {
        // g am - an g = 0, g is dn x dm, entry (i, j) -> i * dm + j
        for i in 0..dn {
            for j in 0..dm {
                let mut row = vec![ring.zero(); nvars];
                for k in 0..dm {
                    let x = i * dm + k;
                    row[x] = ring.add(&row[x], am.get(k, j));
                }
                for k in 0..dn {
                    let x = k * dm + j;
                    row[x] = ring.sub(&row[x], an.get(i, k));
                }
                if !vec_is_zero(ring, &row) {
                    equations.push(row);
                }
            }
        }
    }
    let system = Matrix::from_rows(
        equations.len(),
        nvars,
        equations.into_iter().flatten().collect(),
    );
    kernel(ring, &system)
}

/// `f|_{eM}` as a flattened `dim eN x dim eM` matrix in the corner bases.
pub fn restrict_to_corner(
    f: &HomMap,
    cm: &CornerModule,
    cn: &CornerModule,
    ring: RingSpec,
) -> Vector {
    let total = f.total_matrix(ring);
    let cols: Vec<Vector> = cm
        .module_basis
        .iter()
        .map(|x| {
            cn.module_span
                .coordinates(&total.apply(ring, x))
                .expect("homomorphisms map eM into eN")
        })
        .collect();
    let g = Matrix::from_columns(ring, cn.module_dim(), &cols);
    (0..g.rows()).flat_map(|i| g.row(i).to_vec()).collect()
}

/// Dimensions involved in comparing `Hom_A(M, N)` with `Hom_{eAe}(eM, eN)`
/// through restriction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MoritaComparison {
    pub hom_dim: usize,
    pub corner_hom_dim: usize,
    pub restriction_rank: usize,
}

impl MoritaComparison {
    /// Restriction is injective and the dimensions agree.
    pub fn is_bijection(&self) -> bool {
        self.restriction_rank == self.hom_dim && self.hom_dim == self.corner_hom_dim
    }
}

/// Restriction `Hom_A(M, N) -> Hom_{eAe}(eM, eN)`; over fields.
pub fn compare_with_corner(
    e: &AlgElem,
    m: &Representation,
    n: &Representation,
) -> Result<MoritaComparison, RepError> {
    let ring = m.ring();
    if !ring.is_field() {
        return Err(RepError::NotAField(ring));
    }
    let cm = corner_module(e, m)?;
    let cn = corner_module(e, n)?;
    let hom = hom_space(m, n)?;
    let corner = corner_hom_space(&cm, &cn, ring);
    let images: Vec<Vector> = hom
        .maps
        .iter()
        .map(|f| restrict_to_corner(f, &cm, &cn, ring))
        .collect();
    let restriction = Span::new(ring, cn.module_dim() * cm.module_dim(), images);
    debug_assert!(corner.contains_span(&restriction));
    Ok(MoritaComparison {
        hom_dim: hom.dim().expect("field"),
        corner_hom_dim: corner.rank().expect("field"),
        restriction_rank: restriction.rank().expect("field"),
    })
}

/// The left ideal `Ae` as a representation (acyclic quivers):
/// `(Ae)_v = span{p e : t(p) = v}` with edges acting by left multiplication.
pub fn left_ideal_rep(e: &AlgElem) -> Result<Representation, RepError> {
    let alg = e.algebra();
    let q = &alg.quiver;
    if !q.is_acyclic() {
        return Err(RepError::CyclicQuiver);
    }
    let ring = alg.ring;
    let paths = q.paths_up_to(q.vertex_count(), usize::MAX).unwrap();
    let to_vec = |x: &AlgElem| -> Vector { paths.iter().map(|p| x.coeff(p)).collect() };
    let spans: Vec<Span> = (0..q.vertex_count())
        .map(|v| {
            let gens = paths.iter().filter(|p| p.target(q) == v).map(|p| {
                to_vec(
                    &AlgElem::term(alg, p.clone(), ring.one())
                        .unwrap()
                        .mul(e)
                        .unwrap(),
                )
            });
            Span::new(ring, paths.len(), gens)
        })
        .collect();
    for (v, s) in spans.iter().enumerate() {
        if !s.has_unit_pivots() {
            return Err(RepError::NotFree(q.vertex_id(v).to_string()));
        }
    }
    let dims: Vec<usize> = spans.iter().map(|s| s.rows().len()).collect();
    let maps = q
        .edges()
        .iter()
        .enumerate()
        .map(|(a, ed)| {
            let edge = AlgElem::term(alg, Path::Edges(vec![a]), ring.one()).unwrap();
            let cols: Vec<Vector> = spans[ed.src]
                .rows()
                .iter()
                .map(|row| {
                    let x =
                        AlgElem::from_terms(alg, paths.iter().cloned().zip(row.iter().cloned()))
                            .unwrap();
                    spans[ed.dst]
                        .coordinates(&to_vec(&edge.mul(&x).unwrap()))
                        .expect("left multiplication stays in Ae")
                })
                .collect();
            Matrix::from_columns(ring, dims[ed.dst], &cols)
        })
        .collect();
    Representation::new(alg, dims, maps)
}

/// Whether the multiplication map `A ⊗_A M -> M` is an isomorphism, computed
/// with `A` finite-dimensional (acyclic quivers, over a field).
pub fn multiplication_map_is_iso(m: &Representation) -> Result<bool, RepError> {
    let alg = m.algebra.clone();
    let q = &alg.quiver;
    let ring = alg.ring;
    if !ring.is_field() {
        return Err(RepError::NotAField(ring));
    }
    if !q.is_acyclic() {
        return Err(RepError::CyclicQuiver);
    }
    let paths = q.paths_up_to(q.vertex_count(), usize::MAX).unwrap();
    let d = m.total_dim();
    let np = paths.len();
    let idx = |pi: usize, j: usize| pi * d + j;
    let actions: Vec<Matrix> = paths
        .iter()
        .map(|p| m.action_matrix(&AlgElem::term(&alg, p.clone(), ring.one()).unwrap()))
        .collect::<Result<_, _>>()?;
    // multiplication map p ⊗ x_j -> p x_j, as a d x (np d) matrix
    let mut mu = Matrix::zeros(ring, d, np * d);
    for (pi, act) in actions.iter().enumerate() {
        for j in 0..d {
            for i in 0..d {
                mu.set(i, idx(pi, j), act.get(i, j).clone());
            }
        }
    }
    // balancing relations (p g) ⊗ x_j - p ⊗ (g x_j)
    let mut relations = Vec::new();
    for (pi, p) in paths.iter().enumerate() {
        for (gi, g) in paths.iter().enumerate() {
            for j in 0..d {
                let mut v = vec![ring.zero(); np * d];
                if let Some(pg) = p.compose_after(g, q) {
                    let r = paths
                        .binary_search(&pg)
                        .expect("products of paths are paths");
                    v[idx(r, j)] = ring.add(&v[idx(r, j)], &ring.one());
                }
                for k in 0..d {
                    let c = actions[gi].get(k, j);
                    v[idx(pi, k)] = ring.sub(&v[idx(pi, k)], c);
                }
                relations.push(v);
            }
        }
    }
    let rel = Span::new(ring, np * d, relations);
    let surjective = column_span(ring, &mu).is_full();
    let ker = kernel(ring, &mu);
    Ok(surjective && rel == ker)
}
