//! Decision procedures for special, split and central idempotents of `KQ`
//! and for strong orthogonality and fullness of families.
//!
//! An element `e` is left special exactly when it can be written as
//! `sum_{v in S} lambda_v e_v + sum_i kappa_i p_i` where
//!
//! 1. `S` is left closed,
//! 2. each `lambda_v` is a nonzero idempotent of `K`, with
//!    `K lambda_v ⊆ K lambda_w` whenever a path runs from `v` to `w`,
//! 3. the `p_i` are distinct non-trivial paths ending in `S`,
//! 4. each `kappa_i` is nonzero, fixed by `lambda_{t(p_i)}` and killed by
//!    `lambda_{s(p_i)}` when `s(p_i)` lies in `S`.
//!
//! Such a decomposition is unique (it is read off the support of `e`), so
//! deciding specialness is a matter of checking the four conditions.
//! A special `e` is left split exactly when `S` is also right closed and
//! `lambda` is constant on every weak component of the quiver.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgElem, AlgebraError, PathAlgebra};
use crate::quiver::{Edge, Path, PathJson, Quiver, QuiverError, Vertex, DEFAULT_SUBSET_BOUND};
use crate::ring::RingElem;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("element {index} is not left special: {witness:?}")]
    NotSpecial { index: usize, witness: Witness },
    #[error("the base ring {0} has idempotents other than 0 and 1")]
    NontrivialIdempotents(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

/// Why a predicate failed. Indices refer to the ambient quiver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    NotIdempotent,
    /// The trivial-path support is not left closed: `edge` leaves it.
    NotLeftClosed {
        edge: Edge,
    },
    LambdaNotIdempotent {
        vertex: Vertex,
    },
    /// `K lambda_{s(edge)}` is not contained in `K lambda_{t(edge)}`.
    LambdaNotMonotone {
        edge: Edge,
    },
    KappaTargetOutside {
        path: Path,
    },
    /// `lambda_{t(p)} kappa != kappa`.
    KappaNotFixed {
        path: Path,
    },
    /// `lambda_{s(p)} kappa != 0` with `s(p)` in the support.
    KappaNotAnnihilated {
        path: Path,
    },
    /// `edge` enters the support from outside.
    NotRightClosed {
        edge: Edge,
    },
    LambdaNotConstant {
        first: Vertex,
        second: Vertex,
    },
    /// `e` does not commute with this generator.
    NotCentral {
        generator: Path,
    },
    NotSpecial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum WitnessJson {
    NotIdempotent,
    NotLeftClosed {
        edge: String,
        src: String,
        dst: String,
    },
    LambdaNotIdempotent {
        vertex: String,
    },
    LambdaNotMonotone {
        edge: String,
        src: String,
        dst: String,
    },
    KappaTargetOutside {
        path: PathJson,
    },
    KappaNotFixed {
        path: PathJson,
    },
    KappaNotAnnihilated {
        path: PathJson,
    },
    NotRightClosed {
        edge: String,
        src: String,
        dst: String,
    },
    LambdaNotConstant {
        first: String,
        second: String,
    },
    NotCentral {
        generator: PathJson,
    },
    NotSpecial,
}

impl Witness {
    pub fn to_json(&self, q: &Quiver) -> WitnessJson {
        let v = |x: &Vertex| q.vertex_id(*x).to_string();
        let edge = |a: &Edge| {
            let d = q.edge(*a);
            (d.id.clone(), v(&d.src), v(&d.dst))
        };
        match self {
            Witness::NotIdempotent => WitnessJson::NotIdempotent,
            Witness::NotLeftClosed { edge: a } => {
                let (edge, src, dst) = edge(a);
                WitnessJson::NotLeftClosed { edge, src, dst }
            }
            Witness::LambdaNotIdempotent { vertex } => {
                WitnessJson::LambdaNotIdempotent { vertex: v(vertex) }
            }
            Witness::LambdaNotMonotone { edge: a } => {
                let (edge, src, dst) = edge(a);
                WitnessJson::LambdaNotMonotone { edge, src, dst }
            }
            Witness::KappaTargetOutside { path } => WitnessJson::KappaTargetOutside {
                path: path.to_json(q),
            },
            Witness::KappaNotFixed { path } => WitnessJson::KappaNotFixed {
                path: path.to_json(q),
            },
            Witness::KappaNotAnnihilated { path } => WitnessJson::KappaNotAnnihilated {
                path: path.to_json(q),
            },
            Witness::NotRightClosed { edge: a } => {
                let (edge, src, dst) = edge(a);
                WitnessJson::NotRightClosed { edge, src, dst }
            }
            Witness::LambdaNotConstant { first, second } => WitnessJson::LambdaNotConstant {
                first: v(first),
                second: v(second),
            },
            Witness::NotCentral { generator } => WitnessJson::NotCentral {
                generator: generator.to_json(q),
            },
            Witness::NotSpecial => WitnessJson::NotSpecial,
        }
    }
}

/// The certified decomposition of a left special idempotent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardForm {
    pub support: BTreeSet<Vertex>,
    pub lambda: BTreeMap<Vertex, RingElem>,
    /// Non-trivial terms in canonical path order.
    pub kappa: Vec<(Path, RingElem)>,
}

impl StandardForm {
    /// `sum lambda_v e_v`, the diagonal part.
    pub fn diagonal(&self, algebra: &Arc<PathAlgebra>) -> AlgElem {
        AlgElem::diagonal(algebra, &self.lambda).expect("support vertices are valid")
    }

    pub fn reassemble(&self, algebra: &Arc<PathAlgebra>) -> AlgElem {
        let terms = self
            .lambda
            .iter()
            .map(|(&v, c)| (Path::Trivial(v), c.clone()))
            .chain(self.kappa.iter().cloned());
        AlgElem::from_terms(algebra, terms).expect("standard form paths are valid")
    }

    pub fn lambda_at(&self, v: Vertex, zero: &RingElem) -> RingElem {
        self.lambda.get(&v).cloned().unwrap_or_else(|| zero.clone())
    }

    pub fn to_json(&self, q: &Quiver, ring: crate::ring::RingSpec) -> StandardFormJson {
        StandardFormJson {
            support: self
                .support
                .iter()
                .map(|&v| q.vertex_id(v).to_string())
                .collect(),
            lambda: self
                .lambda
                .iter()
                .map(|(&v, c)| (q.vertex_id(v).to_string(), ring.format(c)))
                .collect(),
            kappa_terms: self
                .kappa
                .iter()
                .map(|(p, c)| crate::algebra::TermJson {
                    path: p.to_json(q),
                    coeff: ring.format(c),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StandardFormJson {
    pub support: Vec<String>,
    pub lambda: BTreeMap<String, String>,
    pub kappa_terms: Vec<crate::algebra::TermJson>,
}

/// Read the standard form off the support of `e` and verify it, reporting
/// the first failing condition in the fixed order: left closure, lambda
/// idempotency, lambda monotonicity, kappa constraints.
pub fn try_standard_form(e: &AlgElem) -> Result<StandardForm, Witness> {
    let q = e.quiver();
    let ring = e.ring();
    let mut lambda = BTreeMap::new();
    let mut kappa = Vec::new();
    for (p, c) in e.terms() {
        match p {
            Path::Trivial(v) => {
                lambda.insert(*v, c.clone());
            }
            Path::Edges(_) => kappa.push((p.clone(), c.clone())),
        }
    }
    let support: BTreeSet<Vertex> = lambda.keys().copied().collect();

    if let Some(edge) = q
        .left_closure_violation(&support)
        .expect("support vertices are valid")
    {
        return Err(Witness::NotLeftClosed { edge });
    }
    if let Some((&vertex, _)) = lambda.iter().find(|(_, c)| !ring.is_idempotent(c)) {
        return Err(Witness::LambdaNotIdempotent { vertex });
    }
    // along every edge inside S: lambda_s * lambda_t == lambda_s; transitivity
    // covers longer paths, and left closure keeps paths from S inside S
    for (i, a) in q.edges().iter().enumerate() {
        if let (Some(ls), Some(lt)) = (lambda.get(&a.src), lambda.get(&a.dst)) {
            if ring.mul(ls, lt) != *ls {
                return Err(Witness::LambdaNotMonotone { edge: i });
            }
        }
    }
    for (p, k) in &kappa {
        let Some(lt) = lambda.get(&p.target(q)) else {
            return Err(Witness::KappaTargetOutside { path: p.clone() });
        };
        if ring.mul(lt, k) != *k {
            return Err(Witness::KappaNotFixed { path: p.clone() });
        }
        if let Some(ls) = lambda.get(&p.source(q)) {
            if !ring.is_zero(&ring.mul(ls, k)) {
                return Err(Witness::KappaNotAnnihilated { path: p.clone() });
            }
        }
    }
    Ok(StandardForm {
        support,
        lambda,
        kappa,
    })
}

pub fn is_left_special(e: &AlgElem) -> bool {
    try_standard_form(e).is_ok()
}

/// Split test on a verified standard form.
pub fn split_witness(form: &StandardForm, q: &Quiver) -> Option<Witness> {
    if let Some(edge) = q
        .right_closure_violation(&form.support)
        .expect("support vertices are valid")
    {
        return Some(Witness::NotRightClosed { edge });
    }
    for comp in q.weak_components() {
        let mut it = comp
            .iter()
            .filter_map(|v| form.lambda.get(v).map(|c| (*v, c)));
        if let Some((first, c0)) = it.next() {
            if let Some((second, _)) = it.find(|(_, c)| *c != c0) {
                return Some(Witness::LambdaNotConstant { first, second });
            }
        }
    }
    None
}

pub fn is_left_split(e: &AlgElem) -> Result<bool, ClassifyError> {
    let form =
        try_standard_form(e).map_err(|witness| ClassifyError::NotSpecial { index: 0, witness })?;
    Ok(split_witness(&form, e.quiver()).is_none())
}

/// First generator (trivial path or edge) that does not commute with `e`.
pub fn central_witness(e: &AlgElem) -> Option<Witness> {
    let alg = e.algebra();
    let q = e.quiver();
    let gens = (0..q.vertex_count())
        .map(Path::Trivial)
        .chain((0..q.edge_count()).map(|a| Path::Edges(vec![a])));
    for g in gens {
        let x = AlgElem::term(alg, g.clone(), e.ring().one()).expect("generator is valid");
        if e.mul(&x).expect("same ambient") != x.mul(e).expect("same ambient") {
            return Some(Witness::NotCentral { generator: g });
        }
    }
    None
}

pub fn is_central(e: &AlgElem) -> bool {
    central_witness(e).is_none()
}

fn require_special(e: &AlgElem, index: usize) -> Result<StandardForm, ClassifyError> {
    try_standard_form(e).map_err(|witness| ClassifyError::NotSpecial { index, witness })
}

/// Decides `e A f = 0` through the diagonal parts of the standard forms:
/// `e A f` vanishes iff no path `p` runs from `S_f` to `S_e` with
/// `lambda^e_{t(p)} lambda^f_{s(p)} != 0`. Returns such an endpoint pair.
pub fn one_sided_witness(
    e: &StandardForm,
    f: &StandardForm,
    algebra: &PathAlgebra,
) -> Option<(Vertex, Vertex)> {
    let ring = algebra.ring;
    for (&u, lu) in &f.lambda {
        let reach = algebra
            .quiver
            .reachable(u)
            .expect("support vertex is valid");
        for w in reach.intersection(&e.support) {
            if !ring.is_zero(&ring.mul(&e.lambda[w], lu)) {
                return Some((u, *w));
            }
        }
    }
    None
}

/// `e A f = 0` for left special `e`, `f`.
pub fn one_sided_vanishes(e: &AlgElem, f: &AlgElem) -> Result<bool, ClassifyError> {
    let fe = require_special(e, 0)?;
    let ff = require_special(f, 1)?;
    Ok(one_sided_witness(&fe, &ff, e.algebra()).is_none())
}

/// `e A f = f A e = 0`.
pub fn strongly_orthogonal(e: &AlgElem, f: &AlgElem) -> Result<bool, ClassifyError> {
    let fe = require_special(e, 0)?;
    let ff = require_special(f, 1)?;
    let alg = e.algebra();
    Ok(one_sided_witness(&fe, &ff, alg).is_none() && one_sided_witness(&ff, &fe, alg).is_none())
}

/// Outcome of the fullness test, with the first obstruction found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyReport {
    pub full: bool,
    /// First pair `(i, j)`, `i < j`, that is not strongly orthogonal.
    pub non_orthogonal: Option<(usize, usize)>,
    /// First vertex `v` with `e_v` outside the ideal generated by the family.
    pub uncovered_vertex: Option<Vertex>,
}

/// Pairwise strong orthogonality plus, at every vertex `v`, the idempotents
/// `lambda^i_v` generating the unit ideal of `K`. The second condition is the
/// vertex-local form of `sum_i A e_i A = A`: products of paths never produce
/// trivial paths, so the `e_v`-coefficients of the ideal form the ideal of `K`
/// generated by the `lambda^i_v`.
pub fn full_family_report(es: &[AlgElem]) -> Result<FamilyReport, ClassifyError> {
    let forms = es
        .iter()
        .enumerate()
        .map(|(i, e)| require_special(e, i))
        .collect::<Result<Vec<_>, _>>()?;
    let Some(first) = es.first() else {
        // the empty family generates the zero ideal
        return Ok(FamilyReport {
            full: false,
            non_orthogonal: None,
            uncovered_vertex: None,
        });
    };
    let alg = first.algebra();
    for e in es {
        if **e.algebra() != **alg {
            return Err(AlgebraError::AmbientMismatch.into());
        }
    }
    let mut non_orthogonal = None;
    'pairs: for i in 0..forms.len() {
        for j in i + 1..forms.len() {
            if one_sided_witness(&forms[i], &forms[j], alg).is_some()
                || one_sided_witness(&forms[j], &forms[i], alg).is_some()
            {
                non_orthogonal = Some((i, j));
                break 'pairs;
            }
        }
    }
    let ring = alg.ring;
    let uncovered_vertex = (0..alg.quiver.vertex_count()).find(|v| {
        let local: Vec<RingElem> = forms
            .iter()
            .filter_map(|f| f.lambda.get(v).cloned())
            .collect();
        !ring
            .idem_join_is_unit(&local)
            .expect("standard-form lambdas are idempotent")
    });
    let full = non_orthogonal.is_none() && uncovered_vertex.is_none();
    Ok(FamilyReport {
        full,
        non_orthogonal,
        uncovered_vertex,
    })
}

pub fn is_full_family(es: &[AlgElem]) -> Result<bool, ClassifyError> {
    Ok(full_family_report(es)?.full)
}

/// All partitions of the vertex set into nonempty left-closed parts, for base
/// rings whose only idempotents are 0 and 1. Parts are listed by least
/// vertex; families in depth-first order, choosing candidate parts by bitmask.
pub fn enumerate_full_families_trivial_idem(
    algebra: &PathAlgebra,
) -> Result<Vec<Vec<BTreeSet<Vertex>>>, ClassifyError> {
    if algebra.ring.idempotents().len() != 2 {
        return Err(ClassifyError::NontrivialIdempotents(
            algebra.ring.to_string(),
        ));
    }
    let q = &algebra.quiver;
    let closed: Vec<BTreeSet<Vertex>> = q
        .enumerate_left_closed(DEFAULT_SUBSET_BOUND)?
        .into_iter()
        .filter(|s| !s.is_empty())
        .collect();

    fn rec(
        remaining: &BTreeSet<Vertex>,
        closed: &[BTreeSet<Vertex>],
        cur: &mut Vec<BTreeSet<Vertex>>,
        out: &mut Vec<Vec<BTreeSet<Vertex>>>,
    ) {
        let Some(&least) = remaining.iter().next() else {
            out.push(cur.clone());
            return;
        };
        for part in closed {
            if part.contains(&least) && part.is_subset(remaining) {
                let rest = remaining.difference(part).copied().collect();
                cur.push(part.clone());
                rec(&rest, closed, cur, out);
                cur.pop();
            }
        }
    }

    let mut out = Vec::new();
    rec(&q.all_vertices(), &closed, &mut Vec::new(), &mut out);
    Ok(out)
}

/// Families of `e_S` elements for each partition.
pub fn families_as_elements(
    algebra: &Arc<PathAlgebra>,
    families: &[Vec<BTreeSet<Vertex>>],
) -> Vec<Vec<AlgElem>> {
    families
        .iter()
        .map(|f| {
            f.iter()
                .map(|s| AlgElem::vertex_set(algebra, s).expect("valid vertex set"))
                .collect()
        })
        .collect()
}

/// Everything the classifier can say about one element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub is_idempotent: bool,
    pub is_left_special: bool,
    pub standard_form: Option<StandardForm>,
    /// Present only for left special elements.
    pub is_left_split: Option<bool>,
    pub is_central: bool,
    pub witnesses: Vec<Witness>,
}

pub fn classify(e: &AlgElem) -> ClassificationReport {
    let mut witnesses = Vec::new();
    let is_idempotent = e.is_idempotent();
    if !is_idempotent {
        witnesses.push(Witness::NotIdempotent);
    }
    let (standard_form, is_left_split) = match try_standard_form(e) {
        Ok(form) => {
            let split = split_witness(&form, e.quiver());
            let is_split = split.is_none();
            witnesses.extend(split);
            (Some(form), Some(is_split))
        }
        Err(w) => {
            witnesses.push(w);
            (None, None)
        }
    };
    let central = central_witness(e);
    let is_central = central.is_none();
    witnesses.extend(central);
    ClassificationReport {
        is_idempotent,
        is_left_special: standard_form.is_some(),
        standard_form,
        is_left_split,
        is_central,
        witnesses,
    }
}

/// The right-handed variants, computed in the opposite quiver.
pub mod right {
    use super::*;

    pub fn opposite_element(e: &AlgElem) -> AlgElem {
        let op = PathAlgebra::new(e.quiver().opposite(), e.ring());
        e.opposite(&op)
            .expect("reversed paths are valid in the opposite quiver")
    }

    pub fn is_right_special(e: &AlgElem) -> bool {
        is_left_special(&opposite_element(e))
    }

    pub fn is_right_split(e: &AlgElem) -> Result<bool, ClassifyError> {
        is_left_split(&opposite_element(e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::arrow;
    use crate::ring::RingSpec;

    fn f5() -> RingSpec {
        RingSpec::prime_field(5).unwrap()
    }

    fn z6() -> RingSpec {
        RingSpec::integers_mod(6).unwrap()
    }

    fn r(x: u64) -> RingElem {
        RingElem::Residue(x)
    }

    fn diag(alg: &Arc<PathAlgebra>, lams: &[u64]) -> AlgElem {
        AlgElem::diagonal(
            alg,
            &lams.iter().enumerate().map(|(v, &c)| (v, r(c))).collect(),
        )
        .unwrap()
    }

    fn edge(alg: &Arc<PathAlgebra>, i: usize) -> AlgElem {
        AlgElem::term(alg, Path::Edges(vec![i]), alg.ring.one()).unwrap()
    }

    #[test]
    fn standard_form_examples() {
        let alg = arrow(f5());
        let e2 = AlgElem::vertex(&alg, 1).unwrap();
        let form = try_standard_form(&e2).unwrap();
        assert_eq!(form.support, BTreeSet::from([1]));
        assert_eq!(form.lambda[&1], r(1));
        assert!(form.kappa.is_empty());

        let e1 = AlgElem::vertex(&alg, 0).unwrap();
        assert_eq!(
            try_standard_form(&e1),
            Err(Witness::NotLeftClosed { edge: 0 })
        );

        let x = e2.add(&edge(&alg, 0)).unwrap();
        let form = try_standard_form(&x).unwrap();
        assert_eq!(form.kappa, vec![(Path::Edges(vec![0]), r(1))]);
        assert_eq!(form.reassemble(&alg), x);
    }

    #[test]
    fn special_examples() {
        let alg = arrow(f5());
        assert!(is_left_special(&AlgElem::vertex(&alg, 1).unwrap()));
        assert!(!is_left_special(&AlgElem::vertex(&alg, 0).unwrap()));
        let alg6 = arrow(z6());
        assert!(is_left_special(&diag(&alg6, &[3, 3])));
        // zero: vacuous standard form
        let zero = AlgElem::zero(&alg);
        let form = try_standard_form(&zero).unwrap();
        assert!(form.support.is_empty() && form.kappa.is_empty());
    }

    #[test]
    fn witness_order() {
        let alg6 = arrow(z6());
        assert_eq!(
            try_standard_form(&diag(&alg6, &[2, 1])),
            Err(Witness::LambdaNotIdempotent { vertex: 0 })
        );
        // lambda_1 = 1 on the source, lambda_2 = 3 on the target: 1*3 != 1
        assert_eq!(
            try_standard_form(&diag(&alg6, &[1, 3])),
            Err(Witness::LambdaNotMonotone { edge: 0 })
        );
        // kappa on a with lambda_2 = 3: need 3 kappa = kappa, kappa = 2 fails
        let x = diag(&alg6, &[0, 3])
            .add(&edge(&alg6, 0).scale(&r(2)))
            .unwrap();
        assert_eq!(
            try_standard_form(&x),
            Err(Witness::KappaNotFixed {
                path: Path::Edges(vec![0])
            })
        );
        // kappa on a with lambda = (3, 3): 3 kappa = 0 needed, kappa = 3 fails
        let x = diag(&alg6, &[3, 3])
            .add(&edge(&alg6, 0).scale(&r(3)))
            .unwrap();
        assert_eq!(
            try_standard_form(&x),
            Err(Witness::KappaNotAnnihilated {
                path: Path::Edges(vec![0])
            })
        );
        // valid kappa: lambda = (3, 1), kappa = 4: 1*4 = 4, 3*4 = 0
        let x = diag(&alg6, &[3, 1])
            .add(&edge(&alg6, 0).scale(&r(4)))
            .unwrap();
        assert!(try_standard_form(&x).is_ok());
        assert!(x.is_idempotent());
        // a lone path: target outside the support
        assert_eq!(
            try_standard_form(&edge(&alg6, 0)),
            Err(Witness::KappaTargetOutside {
                path: Path::Edges(vec![0])
            })
        );
    }

    #[test]
    fn split_examples() {
        let alg = arrow(f5());
        assert!(!is_left_split(&AlgElem::vertex(&alg, 1).unwrap()).unwrap());
        assert!(is_left_split(&AlgElem::unit(&alg)).unwrap());
        assert!(matches!(
            is_left_split(&AlgElem::vertex(&alg, 0).unwrap()),
            Err(ClassifyError::NotSpecial { .. })
        ));
        let alg6 = arrow(z6());
        assert!(is_left_split(&diag(&alg6, &[3, 3])).unwrap());
        let x = diag(&alg6, &[3, 1]);
        assert!(is_left_special(&x));
        assert!(!is_left_split(&x).unwrap());
        assert_eq!(
            split_witness(&try_standard_form(&x).unwrap(), &alg6.quiver),
            Some(Witness::LambdaNotConstant {
                first: 0,
                second: 1
            })
        );
    }

    #[test]
    fn central_examples() {
        let alg = arrow(f5());
        assert!(is_central(&AlgElem::unit(&alg)));
        let e2 = AlgElem::vertex(&alg, 1).unwrap();
        assert_eq!(
            central_witness(&e2),
            Some(Witness::NotCentral {
                generator: Path::Edges(vec![0])
            })
        );
        assert!(is_central(&diag(&arrow(z6()), &[3, 3])));
    }

    #[test]
    fn orthogonality_examples() {
        let two = PathAlgebra::new(Quiver::from_indices(2, &[]).unwrap(), f5());
        let e1 = AlgElem::vertex(&two, 0).unwrap();
        let e2 = AlgElem::vertex(&two, 1).unwrap();
        assert!(strongly_orthogonal(&e1, &e2).unwrap());
        let alg = arrow(f5());
        let v2 = AlgElem::vertex(&alg, 1).unwrap();
        assert!(!strongly_orthogonal(&v2, &v2).unwrap());
        let alg6 = arrow(z6());
        assert!(strongly_orthogonal(&diag(&alg6, &[3, 3]), &diag(&alg6, &[4, 4])).unwrap());
        assert!(matches!(
            strongly_orthogonal(&AlgElem::vertex(&alg, 0).unwrap(), &v2),
            Err(ClassifyError::NotSpecial { index: 0, .. })
        ));
    }

    #[test]
    fn fullness_examples() {
        let alg = arrow(f5());
        assert!(is_full_family(&[AlgElem::unit(&alg)]).unwrap());
        let rep = full_family_report(&[AlgElem::vertex(&alg, 1).unwrap()]).unwrap();
        assert!(!rep.full);
        assert_eq!(rep.uncovered_vertex, Some(0));
        let alg6 = arrow(z6());
        assert!(is_full_family(&[diag(&alg6, &[3, 3]), diag(&alg6, &[4, 4])]).unwrap());
        assert!(!is_full_family(&[diag(&alg6, &[3, 3])]).unwrap());
        let rep = full_family_report(&[AlgElem::unit(&alg), AlgElem::unit(&alg)]).unwrap();
        assert_eq!(rep.non_orthogonal, Some((0, 1)));
        assert!(!is_full_family(&[]).unwrap());
    }

    #[test]
    fn partition_enumeration() {
        let set = |xs: &[usize]| xs.iter().copied().collect::<BTreeSet<_>>();
        let alg = arrow(f5());
        assert_eq!(
            enumerate_full_families_trivial_idem(&alg).unwrap(),
            vec![vec![set(&[0, 1])]]
        );
        let two = PathAlgebra::new(Quiver::from_indices(2, &[]).unwrap(), f5());
        assert_eq!(
            enumerate_full_families_trivial_idem(&two).unwrap(),
            vec![vec![set(&[0]), set(&[1])], vec![set(&[0, 1])]]
        );
        let a3 = PathAlgebra::new(Quiver::from_indices(3, &[(0, 1), (1, 2)]).unwrap(), f5());
        assert_eq!(
            enumerate_full_families_trivial_idem(&a3).unwrap(),
            vec![vec![set(&[0, 1, 2])]]
        );
        assert!(matches!(
            enumerate_full_families_trivial_idem(&arrow(z6())),
            Err(ClassifyError::NontrivialIdempotents(_))
        ));
    }

    #[test]
    fn right_variants_mirror() {
        let alg = arrow(f5());
        // e_v1 is right special (v1 has no incoming edges) but not left special
        let e1 = AlgElem::vertex(&alg, 0).unwrap();
        assert!(right::is_right_special(&e1));
        assert!(!is_left_special(&e1));
        assert!(!right::is_right_split(&e1).unwrap());
    }

    #[test]
    fn report_fields() {
        let alg = arrow(f5());
        let rep = classify(&AlgElem::vertex(&alg, 1).unwrap());
        assert!(rep.is_idempotent && rep.is_left_special);
        assert_eq!(rep.is_left_split, Some(false));
        assert!(!rep.is_central);
        assert_eq!(rep.witnesses.len(), 2);
        let rep = classify(&AlgElem::vertex(&alg, 0).unwrap());
        assert_eq!(rep.is_left_split, None);
        assert!(!rep.witnesses.is_empty());
    }
}
