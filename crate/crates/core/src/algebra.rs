//! Sparse exact arithmetic in the path algebra `KQ`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::Span;
use crate::quiver::{Path, PathJson, Quiver, QuiverError, Vertex};
use crate::ring::{RingElem, RingError, RingSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("elements live in different path algebras")]
    AmbientMismatch,
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("ideal slice needs {needed} sandwiches, budget is {budget}")]
    Budget { needed: usize, budget: usize },
}

/// The ambient algebra: a quiver and a base ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PathAlgebra {
    pub quiver: Quiver,
    pub ring: RingSpec,
}

/// Maximum number of `(p, g, q)` sandwiches materialized by an ideal slice.
pub const DEFAULT_SANDWICH_BUDGET: usize = 200_000;

impl PathAlgebra {
    pub fn new(quiver: Quiver, ring: RingSpec) -> Arc<Self> {
        Arc::new(PathAlgebra { quiver, ring })
    }
}

/// An element of `KQ`: a finite sparse map from paths to nonzero coefficients.
#[derive(Clone)]
pub struct AlgElem {
    algebra: Arc<PathAlgebra>,
    terms: BTreeMap<Path, RingElem>,
}

impl PartialEq for AlgElem {
    fn eq(&self, other: &Self) -> bool {
        self.same_ambient(other) && self.terms == other.terms
    }
}

impl Eq for AlgElem {}

impl fmt::Debug for AlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgElem({self})")
    }
}

impl fmt::Display for AlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let q = &self.algebra.quiver;
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(p, c)| format!("{}*{}", self.algebra.ring.format(c), p.display(q)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl AlgElem {
    pub fn zero(algebra: &Arc<PathAlgebra>) -> Self {
        AlgElem {
            algebra: algebra.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// `c * p`; the path is validated.
    pub fn term(algebra: &Arc<PathAlgebra>, path: Path, c: RingElem) -> Result<Self, AlgebraError> {
        path.check(&algebra.quiver)?;
        let mut x = Self::zero(algebra);
        x.add_term(path, c);
        Ok(x)
    }

    pub fn from_terms<I>(algebra: &Arc<PathAlgebra>, terms: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (Path, RingElem)>,
    {
        let mut x = Self::zero(algebra);
        for (p, c) in terms {
            p.check(&algebra.quiver)?;
            x.add_term(p, c);
        }
        Ok(x)
    }

    /// The trivial path `e_v`.
    pub fn vertex(algebra: &Arc<PathAlgebra>, v: Vertex) -> Result<Self, AlgebraError> {
        Self::term(algebra, Path::Trivial(v), algebra.ring.one())
    }

    /// `e_S = sum of e_v over v in S`.
    pub fn vertex_set(
        algebra: &Arc<PathAlgebra>,
        s: &BTreeSet<Vertex>,
    ) -> Result<Self, AlgebraError> {
        Self::from_terms(
            algebra,
            s.iter().map(|&v| (Path::Trivial(v), algebra.ring.one())),
        )
    }

    /// `sum of lambda_v e_v`.
    pub fn diagonal(
        algebra: &Arc<PathAlgebra>,
        lambda: &BTreeMap<Vertex, RingElem>,
    ) -> Result<Self, AlgebraError> {
        Self::from_terms(
            algebra,
            lambda.iter().map(|(&v, c)| (Path::Trivial(v), c.clone())),
        )
    }

    /// The unit `e_V` of a finite quiver's path algebra.
    pub fn unit(algebra: &Arc<PathAlgebra>) -> Self {
        Self::vertex_set(algebra, &algebra.quiver.all_vertices()).expect("all vertices are valid")
    }

    fn add_term(&mut self, path: Path, c: RingElem) {
        let ring = self.algebra.ring;
        let entry = self.terms.entry(path);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                if !ring.is_zero(&c) {
                    v.insert(c);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = ring.add(o.get(), &c);
                if ring.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn algebra(&self) -> &Arc<PathAlgebra> {
        &self.algebra
    }

    pub fn ring(&self) -> RingSpec {
        self.algebra.ring
    }

    pub fn quiver(&self) -> &Quiver {
        &self.algebra.quiver
    }

    pub fn terms(&self) -> &BTreeMap<Path, RingElem> {
        &self.terms
    }

    pub fn coeff(&self, p: &Path) -> RingElem {
        self.terms
            .get(p)
            .cloned()
            .unwrap_or_else(|| self.ring().zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_ambient(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) || *self.algebra == *other.algebra
    }

    fn check_ambient(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.same_ambient(other) {
            Ok(())
        } else {
            Err(AlgebraError::AmbientMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_ambient(other)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let ring = self.ring();
        AlgElem {
            algebra: self.algebra.clone(),
            terms: self
                .terms
                .iter()
                .map(|(p, c)| (p.clone(), ring.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &RingElem) -> Self {
        let ring = self.ring();
        let mut out = Self::zero(&self.algebra);
        for (p, x) in &self.terms {
            out.add_term(p.clone(), ring.mul(c, x));
        }
        out
    }

    /// Bilinear extension of path concatenation.
    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_ambient(other)?;
        let ring = self.ring();
        let q = &self.algebra.quiver;
        let mut out = Self::zero(&self.algebra);
        for (p, a) in &self.terms {
            for (r, b) in &other.terms {
                if let Some(pr) = p.compose_after(r, q) {
                    out.add_term(pr, ring.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul(self).expect("same ambient") == *self
    }

    /// Terms whose paths start in `right` and end in `left`: `e_left x e_right`.
    pub fn restrict(&self, left: &BTreeSet<Vertex>, right: &BTreeSet<Vertex>) -> Self {
        let q = &self.algebra.quiver;
        AlgElem {
            algebra: self.algebra.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(p, _)| left.contains(&p.target(q)) && right.contains(&p.source(q)))
                .map(|(p, c)| (p.clone(), c.clone()))
                .collect(),
        }
    }

    /// Vertices touched by the support (sources and targets of all terms).
    pub fn support_vertices(&self) -> BTreeSet<Vertex> {
        let q = &self.algebra.quiver;
        self.terms
            .keys()
            .flat_map(|p| [p.source(q), p.target(q)])
            .collect()
    }

    pub fn max_path_len(&self) -> usize {
        self.terms.keys().map(Path::len).max().unwrap_or(0)
    }

    /// The same element in the path algebra of the opposite quiver.
    pub fn opposite(&self, op_algebra: &Arc<PathAlgebra>) -> Result<Self, AlgebraError> {
        Self::from_terms(
            op_algebra,
            self.terms.iter().map(|(p, c)| (p.reversed(), c.clone())),
        )
    }

    pub fn to_json(&self) -> AlgElemJson {
        let q = &self.algebra.quiver;
        AlgElemJson {
            terms: self
                .terms
                .iter()
                .map(|(p, c)| TermJson {
                    path: p.to_json(q),
                    coeff: self.ring().format(c),
                })
                .collect(),
        }
    }

    pub fn from_json(algebra: &Arc<PathAlgebra>, j: &AlgElemJson) -> Result<Self, AlgebraError> {
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in &j.terms {
            let p = Path::from_json(&t.path, &algebra.quiver)?;
            let c = algebra.ring.parse(&t.coeff)?;
            terms.push((p, c));
        }
        Self::from_terms(algebra, terms)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub path: PathJson,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgElemJson {
    pub terms: Vec<TermJson>,
}

/// The K-span of `{p g q : g in gens, len(p) + len(q) <= degree}`, echelonized
/// over the finitely many paths that occur.
#[derive(Debug, Clone)]
pub struct IdealSlice {
    algebra: Arc<PathAlgebra>,
    coords: Vec<Path>,
    span: Span,
}

impl IdealSlice {
    pub fn span(&self) -> &Span {
        &self.span
    }

    pub fn paths(&self) -> &[Path] {
        &self.coords
    }

    /// Membership of an element; paths outside the slice's coordinates
    /// count as non-members.
    pub fn contains(&self, x: &AlgElem) -> Result<bool, AlgebraError> {
        if !(Arc::ptr_eq(&self.algebra, &x.algebra) || *self.algebra == *x.algebra) {
            return Err(AlgebraError::AmbientMismatch);
        }
        let ring = self.algebra.ring;
        let mut v = vec![ring.zero(); self.coords.len()];
        for (p, c) in &x.terms {
            match self.coords.binary_search(p) {
                Ok(i) => v[i] = c.clone(),
                Err(_) => return Ok(false),
            }
        }
        Ok(self.span.contains(&v))
    }

    /// Basis (generating set) of the slice as algebra elements.
    pub fn generators(&self) -> Vec<AlgElem> {
        self.span
            .rows()
            .iter()
            .map(|row| {
                AlgElem::from_terms(
                    &self.algebra,
                    self.coords.iter().cloned().zip(row.iter().cloned()),
                )
                .expect("coordinates are valid paths")
            })
            .collect()
    }
}

/// Degree-truncated slice of the two-sided ideal generated by `gens`.
pub fn truncated_two_sided_ideal(
    algebra: &Arc<PathAlgebra>,
    gens: &[AlgElem],
    degree: usize,
    budget: usize,
) -> Result<IdealSlice, AlgebraError> {
    let q = &algebra.quiver;
    let paths = q
        .paths_up_to(degree, budget)
        .map_err(|_| AlgebraError::Budget {
            needed: budget + 1,
            budget,
        })?;
    let pairs = paths.len() * paths.len() * gens.len();
    if pairs > budget {
        return Err(AlgebraError::Budget {
            needed: pairs,
            budget,
        });
    }
    let mut products = Vec::new();
    for g in gens {
        if !(Arc::ptr_eq(algebra, &g.algebra) || **algebra == *g.algebra) {
            return Err(AlgebraError::AmbientMismatch);
        }
        for left in &paths {
            let lg = AlgElem::term(algebra, left.clone(), algebra.ring.one())?.mul(g)?;
            if lg.is_zero() {
                continue;
            }
            for right in &paths {
                if left.len() + right.len() > degree {
                    continue;
                }
                let r = AlgElem::term(algebra, right.clone(), algebra.ring.one())?;
                let x = lg.mul(&r)?;
                if !x.is_zero() {
                    products.push(x);
                }
            }
        }
    }
    let coords: Vec<Path> = products
        .iter()
        .flat_map(|x| x.terms.keys().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let ring = algebra.ring;
    let vectors = products.iter().map(|x| {
        let mut v = vec![ring.zero(); coords.len()];
        for (p, c) in &x.terms {
            v[coords.binary_search(p).unwrap()] = c.clone();
        }
        v
    });
    let span = Span::new(ring, coords.len(), vectors);
    Ok(IdealSlice {
        algebra: algebra.clone(),
        coords,
        span,
    })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn arrow(ring: RingSpec) -> Arc<PathAlgebra> {
        let q = Quiver::new(["v1", "v2"], [("a", "v1", "v2")]).unwrap();
        PathAlgebra::new(q, ring)
    }

    fn f5() -> RingSpec {
        RingSpec::prime_field(5).unwrap()
    }

    fn z6() -> RingSpec {
        RingSpec::integers_mod(6).unwrap()
    }

    fn edge(alg: &Arc<PathAlgebra>, i: usize) -> AlgElem {
        AlgElem::term(alg, Path::Edges(vec![i]), alg.ring.one()).unwrap()
    }

    #[test]
    fn multiplication_rules() {
        let alg = arrow(f5());
        let e2 = AlgElem::vertex(&alg, 1).unwrap();
        let a = edge(&alg, 0);
        assert_eq!(e2.mul(&a).unwrap(), a);
        assert!(a.mul(&e2).unwrap().is_zero());
        assert!(a.mul(&a).unwrap().is_zero());
        let x = e2.add(&a).unwrap();
        assert_eq!(x.mul(&x).unwrap(), x);
    }

    #[test]
    fn idempotency_examples() {
        let alg = arrow(z6());
        let s = BTreeSet::from([0, 1]);
        assert!(AlgElem::vertex_set(&alg, &s).unwrap().is_idempotent());
        assert!(AlgElem::zero(&alg).is_idempotent());
        let e1 = AlgElem::vertex(&alg, 0).unwrap();
        assert!(e1.scale(&RingElem::Residue(3)).is_idempotent());
        assert!(!e1.scale(&RingElem::Residue(2)).is_idempotent());
    }

    #[test]
    fn ambient_mismatch() {
        let a = AlgElem::unit(&arrow(f5()));
        let b = AlgElem::unit(&arrow(z6()));
        assert_eq!(a.mul(&b), Err(AlgebraError::AmbientMismatch));
        // structurally equal ambients are accepted
        let c = AlgElem::unit(&arrow(f5()));
        assert!(a.mul(&c).is_ok());
    }

    #[test]
    fn json_round_trip_and_format() {
        let alg = arrow(z6());
        let x = AlgElem::vertex(&alg, 1)
            .unwrap()
            .scale(&RingElem::Residue(3))
            .add(&edge(&alg, 0))
            .unwrap();
        let j = serde_json::to_string(&x.to_json()).unwrap();
        assert_eq!(
            j,
            r#"{"terms":[{"path":{"trivial":"v2"},"coeff":"3"},{"path":{"edges":["a"]},"coeff":"1"}]}"#
        );
        let back: AlgElemJson = serde_json::from_str(&j).unwrap();
        assert_eq!(AlgElem::from_json(&alg, &back).unwrap(), x);
    }

    #[test]
    fn ideal_slice_examples() {
        let alg = arrow(f5());
        let e2 = AlgElem::vertex(&alg, 1).unwrap();
        let a = edge(&alg, 0);
        let slice =
            truncated_two_sided_ideal(&alg, std::slice::from_ref(&e2), 1, DEFAULT_SANDWICH_BUDGET)
                .unwrap();
        assert_eq!(slice.span().rank(), Some(2));
        assert!(slice.contains(&e2).unwrap());
        assert!(slice.contains(&a).unwrap());
        assert!(!slice.contains(&AlgElem::vertex(&alg, 0).unwrap()).unwrap());

        let zero = truncated_two_sided_ideal(&alg, &[AlgElem::zero(&alg)], 3, 1000).unwrap();
        assert!(zero.span().is_zero());

        let alg6 = arrow(z6());
        let u = AlgElem::unit(&alg6);
        let gens = [
            u.scale(&RingElem::Residue(3)),
            u.scale(&RingElem::Residue(4)),
        ];
        let slice = truncated_two_sided_ideal(&alg6, &gens, 0, 1000).unwrap();
        assert!(slice.contains(&AlgElem::vertex(&alg6, 0).unwrap()).unwrap());
        assert!(slice.contains(&AlgElem::vertex(&alg6, 1).unwrap()).unwrap());
    }

    #[test]
    fn ideal_slice_budget() {
        let q = Quiver::from_indices(1, &[(0, 0), (0, 0)]).unwrap();
        let alg = PathAlgebra::new(q, f5());
        let g = AlgElem::unit(&alg);
        assert!(matches!(
            truncated_two_sided_ideal(&alg, &[g], 6, 100),
            Err(AlgebraError::Budget { .. })
        ));
    }

    /// A quiver with a cycle and a loop, for property tests.
    pub(crate) fn cyclic(ring: RingSpec) -> Arc<PathAlgebra> {
        PathAlgebra::new(
            Quiver::from_indices(3, &[(0, 1), (1, 2), (2, 0), (1, 1)]).unwrap(),
            ring,
        )
    }

    pub(crate) fn elem_strategy(alg: Arc<PathAlgebra>) -> impl Strategy<Value = AlgElem> {
        let paths = alg.quiver.paths_up_to(2, 10_000).unwrap();
        let n = alg.ring.modulus().unwrap();
        proptest::collection::vec((0..paths.len(), 0..n), 0..5).prop_map(move |ts| {
            AlgElem::from_terms(
                &alg,
                ts.into_iter()
                    .map(|(i, c)| (paths[i].clone(), RingElem::Residue(c))),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn associative_and_distributive(
            (x, y, z) in (elem_strategy(cyclic(z6())), elem_strategy(cyclic(z6())), elem_strategy(cyclic(z6())))
        ) {
            let xy_z = x.mul(&y).unwrap().mul(&z).unwrap();
            let x_yz = x.mul(&y.mul(&z).unwrap()).unwrap();
            prop_assert_eq!(xy_z, x_yz);
            let lhs = x.mul(&y.add(&z).unwrap()).unwrap();
            let rhs = x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            let lhs = x.add(&y).unwrap().mul(&z).unwrap();
            let rhs = x.mul(&z).unwrap().add(&y.mul(&z).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn vertex_sandwich_filters_terms(x in elem_strategy(cyclic(z6())), sm in 0u64..8, tm in 0u64..8) {
            let alg = x.algebra().clone();
            let s = crate::quiver::mask_to_set(sm, 3);
            let t = crate::quiver::mask_to_set(tm, 3);
            let es = AlgElem::vertex_set(&alg, &s).unwrap();
            let et = AlgElem::vertex_set(&alg, &t).unwrap();
            let sandwich = es.mul(&x).unwrap().mul(&et).unwrap();
            prop_assert_eq!(sandwich, x.restrict(&s, &t));
        }

        #[test]
        fn locally_unital(x in elem_strategy(cyclic(z6()))) {
            let s = x.support_vertices();
            let es = AlgElem::vertex_set(x.algebra(), &s).unwrap();
            prop_assert_eq!(es.mul(&x).unwrap().mul(&es).unwrap(), x);
        }

        #[test]
        fn degree_additivity(x in elem_strategy(cyclic(z6())), y in elem_strategy(cyclic(z6()))) {
            let q = &x.algebra().quiver;
            let xy = x.mul(&y).unwrap();
            for p in xy.terms().keys() {
                let ok = x.terms().keys().any(|a| y.terms().keys().any(|b| {
                    a.compose_after(b, q).as_ref() == Some(p) && a.len() + b.len() == p.len()
                }));
                prop_assert!(ok);
                if !p.is_trivial() {
                    continue;
                }
                // trivial paths only arise from trivial times trivial
                prop_assert!(x.terms().contains_key(p) && y.terms().contains_key(p));
            }
        }
    }
}
