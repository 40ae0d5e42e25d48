//! Finite quivers, paths, and the vertex-set predicates used by the classifier.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("duplicate vertex id {0:?}")]
    DuplicateVertex(String),
    #[error("duplicate edge id {0:?}")]
    DuplicateEdge(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("unknown edge {0:?}")]
    UnknownEdge(String),
    #[error("edges {0:?} and {1:?} do not compose")]
    NotComposable(String, String),
    #[error("vertex index {0} out of range")]
    VertexOutOfRange(usize),
    #[error("{0} vertices exceed the enumeration bound {1}")]
    TooManyVertices(usize, usize),
    #[error("path enumeration exceeds {0} paths")]
    TooManyPaths(usize),
}

pub type Vertex = usize;
pub type Edge = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeData {
    pub id: String,
    pub src: Vertex,
    pub dst: Vertex,
}

/// A finite quiver with identifiers; vertices and edges are addressed by
/// their declaration index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    edges: Vec<EdgeData>,
    out_edges: Vec<Vec<Edge>>,
    in_edges: Vec<Vec<Edge>>,
}

/// Default bound for subset enumeration.
pub const DEFAULT_SUBSET_BOUND: usize = 16;

impl Quiver {
    pub fn new<V, E, S>(vertices: V, edges: E) -> Result<Self, QuiverError>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator<Item = (S, S, S)>,
        S: Into<String>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(QuiverError::DuplicateVertex(v.clone()));
            }
        }
        let mut seen = BTreeSet::new();
        let mut data = Vec::new();
        for (id, s, t) in edges {
            let (id, s, t): (String, String, String) = (id.into(), s.into(), t.into());
            if !seen.insert(id.clone()) {
                return Err(QuiverError::DuplicateEdge(id));
            }
            let src = *index.get(&s).ok_or(QuiverError::UnknownVertex(s))?;
            let dst = *index.get(&t).ok_or(QuiverError::UnknownVertex(t))?;
            data.push(EdgeData { id, src, dst });
        }
        Ok(Self::from_parts(vertices, data))
    }

    /// Quiver on vertices `0..n` (ids `"0"`, `"1"`, ...) with edges given by
    /// index pairs; edge ids are `"a0"`, `"a1"`, ...
    pub fn from_indices(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, QuiverError> {
        for &(s, t) in edges {
            for v in [s, t] {
                if v >= n {
                    return Err(QuiverError::VertexOutOfRange(v));
                }
            }
        }
        let vertices = (0..n).map(|i| i.to_string()).collect();
        let data = edges
            .iter()
            .enumerate()
            .map(|(i, &(src, dst))| EdgeData {
                id: format!("a{i}"),
                src,
                dst,
            })
            .collect();
        Ok(Self::from_parts(vertices, data))
    }

    fn from_parts(vertices: Vec<String>, edges: Vec<EdgeData>) -> Self {
        let n = vertices.len();
        let mut out_edges = vec![Vec::new(); n];
        let mut in_edges = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            out_edges[e.src].push(i);
            in_edges[e.dst].push(i);
        }
        Quiver {
            vertices,
            edges,
            out_edges,
            in_edges,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_id(&self, v: Vertex) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_ids(&self) -> &[String] {
        &self.vertices
    }

    pub fn edge(&self, a: Edge) -> &EdgeData {
        &self.edges[a]
    }

    pub fn edges(&self) -> &[EdgeData] {
        &self.edges
    }

    pub fn vertex_index(&self, id: &str) -> Result<Vertex, QuiverError> {
        self.vertices
            .iter()
            .position(|v| v == id)
            .ok_or_else(|| QuiverError::UnknownVertex(id.to_string()))
    }

    pub fn edge_index(&self, id: &str) -> Result<Edge, QuiverError> {
        self.edges
            .iter()
            .position(|e| e.id == id)
            .ok_or_else(|| QuiverError::UnknownEdge(id.to_string()))
    }

    pub fn out_edges(&self, v: Vertex) -> &[Edge] {
        &self.out_edges[v]
    }

    pub fn in_edges(&self, v: Vertex) -> &[Edge] {
        &self.in_edges[v]
    }

    pub fn all_vertices(&self) -> BTreeSet<Vertex> {
        (0..self.vertex_count()).collect()
    }

    fn check_set(&self, s: &BTreeSet<Vertex>) -> Result<(), QuiverError> {
        match s.iter().find(|&&v| v >= self.vertex_count()) {
            Some(&v) => Err(QuiverError::VertexOutOfRange(v)),
            None => Ok(()),
        }
    }

    /// First edge leaving `s` (source inside, target outside), if any.
    pub fn left_closure_violation(
        &self,
        s: &BTreeSet<Vertex>,
    ) -> Result<Option<Edge>, QuiverError> {
        self.check_set(s)?;
        Ok(self
            .edges
            .iter()
            .position(|e| s.contains(&e.src) && !s.contains(&e.dst)))
    }

    /// First edge entering `s` from outside, if any.
    pub fn right_closure_violation(
        &self,
        s: &BTreeSet<Vertex>,
    ) -> Result<Option<Edge>, QuiverError> {
        self.check_set(s)?;
        Ok(self
            .edges
            .iter()
            .position(|e| s.contains(&e.dst) && !s.contains(&e.src)))
    }

    /// Every edge starting in `s` ends in `s`.
    pub fn is_left_closed(&self, s: &BTreeSet<Vertex>) -> Result<bool, QuiverError> {
        Ok(self.left_closure_violation(s)?.is_none())
    }

    /// Every edge ending in `s` starts in `s`.
    pub fn is_right_closed(&self, s: &BTreeSet<Vertex>) -> Result<bool, QuiverError> {
        Ok(self.right_closure_violation(s)?.is_none())
    }

    /// Weakly connected components, each sorted, ordered by least vertex.
    pub fn weak_components(&self) -> Vec<BTreeSet<Vertex>> {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut set = BTreeSet::new();
            let mut queue = VecDeque::from([start]);
            comp[start] = id;
            while let Some(v) = queue.pop_front() {
                set.insert(v);
                let nbrs = self.out_edges[v]
                    .iter()
                    .map(|&a| self.edges[a].dst)
                    .chain(self.in_edges[v].iter().map(|&a| self.edges[a].src));
                for w in nbrs {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        queue.push_back(w);
                    }
                }
            }
            out.push(set);
        }
        out
    }

    /// Component index of each vertex, matching [`Quiver::weak_components`].
    pub fn component_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.vertex_count()];
        for (i, c) in self.weak_components().iter().enumerate() {
            for &v in c {
                out[v] = i;
            }
        }
        out
    }

    /// Vertices reachable from `from` by a directed path (including `from`).
    pub fn reachable(&self, from: Vertex) -> Result<BTreeSet<Vertex>, QuiverError> {
        if from >= self.vertex_count() {
            return Err(QuiverError::VertexOutOfRange(from));
        }
        let mut seen = BTreeSet::from([from]);
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            for &a in &self.out_edges[v] {
                let w = self.edges[a].dst;
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        Ok(seen)
    }

    /// All left-closed vertex sets, ordered by bitmask.
    pub fn enumerate_left_closed(
        &self,
        bound: usize,
    ) -> Result<Vec<BTreeSet<Vertex>>, QuiverError> {
        let n = self.vertex_count();
        if n > bound || n >= 64 {
            return Err(QuiverError::TooManyVertices(n, bound));
        }
        let mut out = Vec::new();
        for mask in 0u64..(1u64 << n) {
            let s = mask_to_set(mask, n);
            if self.is_left_closed(&s)? {
                out.push(s);
            }
        }
        Ok(out)
    }

    pub fn is_acyclic(&self) -> bool {
        // Kahn's algorithm
        let n = self.vertex_count();
        let mut indeg: Vec<usize> = (0..n).map(|v| self.in_edges[v].len()).collect();
        let mut queue: VecDeque<Vertex> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut removed = 0;
        while let Some(v) = queue.pop_front() {
            removed += 1;
            for &a in &self.out_edges[v] {
                let w = self.edges[a].dst;
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        removed == n
    }

    /// The opposite quiver: same vertices, every edge reversed.
    pub fn opposite(&self) -> Quiver {
        let edges = self
            .edges
            .iter()
            .map(|e| EdgeData {
                id: e.id.clone(),
                src: e.dst,
                dst: e.src,
            })
            .collect();
        Self::from_parts(self.vertices.clone(), edges)
    }

    /// All paths of length at most `max_len`, in canonical order.
    pub fn paths_up_to(&self, max_len: usize, cap: usize) -> Result<Vec<Path>, QuiverError> {
        let mut out: Vec<Path> = (0..self.vertex_count()).map(Path::Trivial).collect();
        let mut frontier: Vec<Vec<Edge>> = (0..self.edge_count()).map(|a| vec![a]).collect();
        let mut len = 1;
        while len <= max_len && !frontier.is_empty() {
            if out.len() + frontier.len() > cap {
                return Err(QuiverError::TooManyPaths(cap));
            }
            frontier.sort();
            let mut next = Vec::new();
            for p in &frontier {
                let end = self.edges[*p.last().unwrap()].dst;
                for &a in &self.out_edges[end] {
                    let mut q = p.clone();
                    q.push(a);
                    next.push(q);
                }
            }
            out.extend(frontier.drain(..).map(Path::Edges));
            frontier = next;
            len += 1;
        }
        Ok(out)
    }

    pub fn to_json(&self) -> QuiverJson {
        QuiverJson {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeJson {
                    id: e.id.clone(),
                    src: self.vertices[e.src].clone(),
                    dst: self.vertices[e.dst].clone(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &QuiverJson) -> Result<Self, QuiverError> {
        Self::new(
            j.vertices.iter().cloned(),
            j.edges
                .iter()
                .map(|e| (e.id.clone(), e.src.clone(), e.dst.clone())),
        )
    }

    /// Every quiver on `1..=max_vertices` vertices with at most `max_edges`
    /// edges, edges drawn as multisets of ordered vertex pairs (loops
    /// included). Deterministic order; not reduced up to isomorphism.
    pub fn enumerate_small(max_vertices: usize, max_edges: usize) -> Vec<Quiver> {
        let mut out = Vec::new();
        for n in 1..=max_vertices {
            let pairs: Vec<(Vertex, Vertex)> =
                (0..n).flat_map(|s| (0..n).map(move |t| (s, t))).collect();
            for k in 0..=max_edges {
                multisets(pairs.len(), k, &mut |idx| {
                    let edges: Vec<_> = idx.iter().map(|&i| pairs[i]).collect();
                    out.push(Quiver::from_indices(n, &edges).expect("valid indices"));
                });
            }
        }
        out
    }
}

fn multisets(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i, cur, f);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut Vec::new(), f)
}

pub fn mask_to_set(mask: u64, n: usize) -> BTreeSet<Vertex> {
    (0..n).filter(|i| mask & (1 << i) != 0).collect()
}

/// A path: trivial at a vertex, or a nonempty composable edge sequence in
/// traversal order (first edge first).
///
/// Ordering is canonical: by length, then lexicographic by edge index;
/// trivial paths by vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Path {
    Trivial(Vertex),
    Edges(Vec<Edge>),
}

impl Path {
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        match self {
            Path::Trivial(_) => 0,
            Path::Edges(es) => es.len(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, Path::Trivial(_))
    }

    pub fn source(&self, q: &Quiver) -> Vertex {
        match self {
            Path::Trivial(v) => *v,
            Path::Edges(es) => q.edge(es[0]).src,
        }
    }

    pub fn target(&self, q: &Quiver) -> Vertex {
        match self {
            Path::Trivial(v) => *v,
            Path::Edges(es) => q.edge(*es.last().unwrap()).dst,
        }
    }

    /// Validate against a quiver.
    pub fn check(&self, q: &Quiver) -> Result<(), QuiverError> {
        match self {
            Path::Trivial(v) => {
                if *v >= q.vertex_count() {
                    return Err(QuiverError::VertexOutOfRange(*v));
                }
            }
            Path::Edges(es) => {
                if es.is_empty() {
                    return Err(QuiverError::UnknownEdge(String::new()));
                }
                for &a in es {
                    if a >= q.edge_count() {
                        return Err(QuiverError::UnknownEdge(a.to_string()));
                    }
                }
                for w in es.windows(2) {
                    if q.edge(w[0]).dst != q.edge(w[1]).src {
                        return Err(QuiverError::NotComposable(
                            q.edge(w[0]).id.clone(),
                            q.edge(w[1]).id.clone(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// The product `self * other` in the path algebra: `other` first, then
    /// `self`; `None` when `t(other) != s(self)`.
    pub fn compose_after(&self, other: &Path, q: &Quiver) -> Option<Path> {
        if other.target(q) != self.source(q) {
            return None;
        }
        Some(match (self, other) {
            (Path::Trivial(_), p) | (p, Path::Trivial(_)) => p.clone(),
            (Path::Edges(a), Path::Edges(b)) => {
                let mut es = b.clone();
                es.extend_from_slice(a);
                Path::Edges(es)
            }
        })
    }

    /// The same path in the opposite quiver.
    pub fn reversed(&self) -> Path {
        match self {
            Path::Trivial(v) => Path::Trivial(*v),
            Path::Edges(es) => Path::Edges(es.iter().rev().copied().collect()),
        }
    }

    pub fn to_json(&self, q: &Quiver) -> PathJson {
        match self {
            Path::Trivial(v) => PathJson::Trivial {
                trivial: q.vertex_id(*v).to_string(),
            },
            Path::Edges(es) => PathJson::Edges {
                edges: es.iter().map(|&a| q.edge(a).id.clone()).collect(),
            },
        }
    }

    pub fn from_json(j: &PathJson, q: &Quiver) -> Result<Path, QuiverError> {
        let p = match j {
            PathJson::Trivial { trivial } => Path::Trivial(q.vertex_index(trivial)?),
            PathJson::Edges { edges } => Path::Edges(
                edges
                    .iter()
                    .map(|id| q.edge_index(id))
                    .collect::<Result<_, _>>()?,
            ),
        };
        p.check(q)?;
        Ok(p)
    }

    pub fn display<'a>(&'a self, q: &'a Quiver) -> PathDisplay<'a> {
        PathDisplay {
            path: self,
            quiver: q,
        }
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self, other) {
            (Path::Trivial(a), Path::Trivial(b)) => a.cmp(b),
            (Path::Trivial(_), Path::Edges(_)) => std::cmp::Ordering::Less,
            (Path::Edges(_), Path::Trivial(_)) => std::cmp::Ordering::Greater,
            (Path::Edges(a), Path::Edges(b)) => a.len().cmp(&b.len()).then_with(|| a.cmp(b)),
        }
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

pub struct PathDisplay<'a> {
    path: &'a Path,
    quiver: &'a Quiver,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.path {
            Path::Trivial(v) => write!(f, "e_{}", self.quiver.vertex_id(*v)),
            Path::Edges(es) => {
                let ids: Vec<&str> = es
                    .iter()
                    .map(|&a| self.quiver.edge(a).id.as_str())
                    .collect();
                write!(f, "{}", ids.join("."))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub id: String,
    pub src: String,
    pub dst: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverJson {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PathJson {
    Trivial { trivial: String },
    Edges { edges: Vec<String> },
}
