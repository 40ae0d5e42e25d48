//! Brute-force validators over small representations.
//!
//! Everything here enumerates: representations of bounded total dimension
//! over a finite prime field, their submodules, complements and truncated
//! ideals. Verdicts are deterministic: parallel sweeps report the first hit
//! in enumeration order.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{
    truncated_two_sided_ideal, AlgElem, AlgebraError, PathAlgebra, DEFAULT_SANDWICH_BUDGET,
};
use crate::classify::is_left_special;
use crate::exec::Exec;
use crate::linalg::{all_subspaces, Matrix, Span};
use crate::quiver::Path;
use crate::representation::{
    compare_with_corner, gamma, generated_submodule, in_category_e, MoritaComparison, RepError,
    Representation, RepresentationJson, Submodule, SubmoduleJson,
};
use crate::ring::RingSpec;

/// Largest total dimension accepted by submodule enumeration.
pub const MAX_SUBMODULE_DIM: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("oracle enumeration needs a finite prime field, got {0}")]
    NotPrimeField(RingSpec),
    #[error("enumeration would produce {count} representations, cap is {cap}")]
    TooManyReps { count: u128, cap: usize },
    #[error("total dimension {dim} exceeds the submodule enumeration bound {max}")]
    DimensionBound { dim: usize, max: usize },
    #[error("budget field {0} must be positive")]
    InvalidBudget(&'static str),
    #[error("the element is not idempotent")]
    NotIdempotent,
    #[error("the element is not left special")]
    NotSpecial,
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl OracleError {
    /// Budget exhaustion, as opposed to bad input.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            OracleError::TooManyReps { .. }
                | OracleError::DimensionBound { .. }
                | OracleError::Algebra(AlgebraError::Budget { .. })
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleBudget {
    pub max_total_dim: usize,
    pub max_path_degree: usize,
    pub max_reps: usize,
    #[serde(skip)]
    pub exec: Exec,
}

impl OracleBudget {
    pub const DEFAULT_MAX_REPS: usize = 1 << 20;

    /// Total dimension 3 over F_2, 2 otherwise; path degree `|V|`.
    pub fn default_for(algebra: &PathAlgebra) -> Self {
        let max_total_dim = if algebra.ring.modulus() == Some(2) {
            3
        } else {
            2
        };
        OracleBudget {
            max_total_dim,
            max_path_degree: algebra.quiver.vertex_count(),
            max_reps: Self::DEFAULT_MAX_REPS,
            exec: Exec::default(),
        }
    }

    pub fn with_max_dim(mut self, d: usize) -> Self {
        self.max_total_dim = d;
        self
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    pub fn validate(&self) -> Result<(), OracleError> {
        if self.max_reps == 0 {
            return Err(OracleError::InvalidBudget("max_reps"));
        }
        Ok(())
    }
}

fn require_prime_field(ring: RingSpec) -> Result<u64, OracleError> {
    match ring.modulus() {
        Some(p) if ring.is_field() => Ok(p),
        _ => Err(OracleError::NotPrimeField(ring)),
    }
}

/// Dimension vectors with the given sum, in lexicographic order.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn entry_count(algebra: &PathAlgebra, dims: &[usize]) -> usize {
    algebra
        .quiver
        .edges()
        .iter()
        .map(|e| dims[e.dst] * dims[e.src])
        .sum()
}

/// Number of representations `enumerate_reps` would produce.
pub fn count_reps(algebra: &PathAlgebra, max_total_dim: usize) -> Result<u128, OracleError> {
    let p = require_prime_field(algebra.ring)? as u128;
    let n = algebra.quiver.vertex_count();
    let mut count: u128 = 0;
    for d in 0..=max_total_dim {
        for dims in compositions(d, n) {
            let k = entry_count(algebra, &dims) as u32;
            count = count.saturating_add(p.checked_pow(k).unwrap_or(u128::MAX));
        }
    }
    Ok(count)
}

/// All representations of total dimension at most `max_total_dim`: by total
/// dimension, then dimension vector lexicographically, then matrix entries
/// (edges in order, each row-major) as a base-p counter with the last entry
/// running fastest.
pub fn enumerate_reps(
    algebra: &Arc<PathAlgebra>,
    budget: &OracleBudget,
) -> Result<Vec<Representation>, OracleError> {
    budget.validate()?;
    let ring = algebra.ring;
    let p = require_prime_field(ring)?;
    let count = count_reps(algebra, budget.max_total_dim)?;
    if count > budget.max_reps as u128 {
        return Err(OracleError::TooManyReps {
            count,
            cap: budget.max_reps,
        });
    }
    let q = &algebra.quiver;
    let mut out = Vec::with_capacity(count as usize);
    for d in 0..=budget.max_total_dim {
        for dims in compositions(d, q.vertex_count()) {
            let k = entry_count(algebra, &dims);
            let mut digits = vec![0u64; k];
            loop {
                let mut it = digits.iter();
                let maps = q
                    .edges()
                    .iter()
                    .map(|e| {
                        let (r, c) = (dims[e.dst], dims[e.src]);
                        let data = it
                            .by_ref()
                            .take(r * c)
                            .map(|&x| ring.from_i64(x as i64))
                            .collect();
                        Matrix::from_rows(r, c, data)
                    })
                    .collect();
                out.push(Representation::new(algebra, dims.clone(), maps)?);
                // odometer increment
                let mut i = k;
                loop {
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                    digits[i] += 1;
                    if digits[i] < p {
                        break;
                    }
                    digits[i] = 0;
                }
                if digits.iter().all(|&x| x == 0) {
                    break;
                }
            }
        }
    }
    Ok(out)
}

/// All submodules: products of per-vertex subspaces that are edge-closed.
pub fn enumerate_submodules(m: &Representation) -> Result<Vec<Submodule>, OracleError> {
    let ring = m.ring();
    require_prime_field(ring)?;
    if m.total_dim() > MAX_SUBMODULE_DIM {
        return Err(OracleError::DimensionBound {
            dim: m.total_dim(),
            max: MAX_SUBMODULE_DIM,
        });
    }
    let per_vertex: Vec<Vec<Span>> = m.dims().iter().map(|&d| all_subspaces(ring, d)).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; per_vertex.len()];
    loop {
        let candidate = Submodule::from_spans(
            idx.iter()
                .zip(&per_vertex)
                .map(|(&i, choices)| choices[i].clone())
                .collect(),
        );
        if candidate.is_closed(m) {
            out.push(candidate);
        }
        let mut v = per_vertex.len();
        loop {
            if v == 0 {
                return Ok(out);
            }
            v -= 1;
            idx[v] += 1;
            if idx[v] < per_vertex[v].len() {
                break;
            }
            idx[v] = 0;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Consistent {
        reps_checked: usize,
    },
    Counterexample {
        module: Representation,
        submodule: Submodule,
    },
}

impl Verdict {
    pub fn is_consistent(&self) -> bool {
        matches!(self, Verdict::Consistent { .. })
    }

    pub fn to_json(&self) -> VerdictJson {
        match self {
            Verdict::Consistent { reps_checked } => VerdictJson::Consistent {
                reps_checked: *reps_checked,
            },
            Verdict::Counterexample { module, submodule } => VerdictJson::Counterexample {
                module: module.to_json(),
                submodule: submodule.to_json(module),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum VerdictJson {
    Consistent {
        reps_checked: usize,
    },
    Counterexample {
        module: RepresentationJson,
        submodule: SubmoduleJson,
    },
}

/// A submodule `N` of `M` with `N != AeN`, if any.
pub fn subquotient_failure(
    e: &AlgElem,
    m: &Representation,
) -> Result<Option<Submodule>, OracleError> {
    let ring = m.ring();
    let act = m.action_matrix(e)?;
    for n in enumerate_submodules(m)? {
        let images: Vec<_> = n
            .total_generators(m)
            .iter()
            .map(|x| act.apply(ring, x))
            .collect();
        if generated_submodule(m, &images) != n {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Searches the enumerated `M = AeM` for a submodule not generated by its
/// `e`-fixed part. A counterexample certifies that `e` is not left special;
/// consistency is evidence only.
pub fn check_special_by_modules(
    e: &AlgElem,
    budget: &OracleBudget,
) -> Result<Verdict, OracleError> {
    if !e.is_idempotent() {
        return Err(OracleError::NotIdempotent);
    }
    let reps = enumerate_reps(e.algebra(), budget)?;
    let hit = budget.exec.find_map_first(&reps, |m| {
        let run = || -> Result<Option<Submodule>, OracleError> {
            if !in_category_e(e, m)? {
                return Ok(None);
            }
            subquotient_failure(e, m)
        };
        match run() {
            Ok(None) => None,
            Ok(Some(n)) => Some(Ok((m.clone(), n))),
            Err(err) => Some(Err(err)),
        }
    });
    match hit {
        None => Ok(Verdict::Consistent {
            reps_checked: reps.len(),
        }),
        Some(Ok((module, submodule))) => Ok(Verdict::Counterexample { module, submodule }),
        Some(Err(err)) => Err(err),
    }
}

/// An edge-closed complement of `Γ_e(M)` in `M`, found by exhaustive search.
pub fn split_complement(e: &AlgElem, m: &Representation) -> Result<Option<Submodule>, OracleError> {
    let g = gamma(e, m)?;
    for c in enumerate_submodules(m)? {
        let complementary = g
            .spans()
            .iter()
            .zip(c.spans())
            .zip(m.dims())
            .all(|((gv, cv), &d)| {
                gv.rank().zip(cv.rank()).is_some_and(|(a, b)| a + b == d) && gv.join(cv).is_full()
            });
        if complementary {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// Searches for `M` where `0 -> Γ_e(M) -> M -> M/Γ_e(M) -> 0` does not
/// split. The counterexample carries `Γ_e(M)` as its submodule.
pub fn check_split_by_sequences(
    e: &AlgElem,
    budget: &OracleBudget,
) -> Result<Verdict, OracleError> {
    if !is_left_special(e) {
        return Err(OracleError::NotSpecial);
    }
    let reps = enumerate_reps(e.algebra(), budget)?;
    let hit = budget
        .exec
        .find_map_first(&reps, |m| match split_complement(e, m) {
            Ok(Some(_)) => None,
            Ok(None) => Some(
                gamma(e, m)
                    .map(|g| (m.clone(), g))
                    .map_err(OracleError::from),
            ),
            Err(err) => Some(Err(err)),
        });
    match hit {
        None => Ok(Verdict::Consistent {
            reps_checked: reps.len(),
        }),
        Some(Ok((module, submodule))) => Ok(Verdict::Counterexample { module, submodule }),
        Some(Err(err)) => Err(err),
    }
}

/// `e1 p e2 = 0` for every path of length at most `degree`.
pub fn orthogonality_bruteforce(
    e1: &AlgElem,
    e2: &AlgElem,
    degree: usize,
) -> Result<bool, OracleError> {
    let alg = e1.algebra();
    let ring = alg.ring;
    let paths = alg
        .quiver
        .paths_up_to(degree, DEFAULT_SANDWICH_BUDGET)
        .map_err(|_| AlgebraError::Budget {
            needed: DEFAULT_SANDWICH_BUDGET + 1,
            budget: DEFAULT_SANDWICH_BUDGET,
        })?;
    for p in paths {
        let x = AlgElem::term(alg, p, ring.one())?;
        if !e1.mul(&x)?.mul(e2)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Fullness {
    Full,
    NotFull,
    Inconclusive,
}

/// Whether every `e_v` lies in the two-sided ideal generated by `es`,
/// decided from the degree-truncated slice.
///
/// `NotFull` is certain when the `e_v`-coefficients of the slice miss `1`
/// (trivial-path coefficients only come from degree 0), or when the slice is
/// the whole ideal (acyclic quiver, degree at least the longest path).
pub fn fullness_bruteforce(
    algebra: &Arc<PathAlgebra>,
    es: &[AlgElem],
    degree: usize,
) -> Result<Fullness, OracleError> {
    let q = &algebra.quiver;
    let ring = algebra.ring;
    let slice = truncated_two_sided_ideal(algebra, es, degree, DEFAULT_SANDWICH_BUDGET)?;
    let exhaustive = q.is_acyclic() && degree + 1 >= q.vertex_count();
    let mut inconclusive = false;
    for v in 0..q.vertex_count() {
        let ev = AlgElem::vertex(algebra, v)?;
        if slice.contains(&ev)? {
            continue;
        }
        let coeff_ideal = match slice.paths().binary_search(&Path::Trivial(v)) {
            Ok(i) => Span::new(
                ring,
                1,
                slice.span().rows().iter().map(|r| vec![r[i].clone()]),
            ),
            Err(_) => Span::zero(ring, 1),
        };
        if !coeff_ideal.is_full() || exhaustive {
            return Ok(Fullness::NotFull);
        }
        inconclusive = true;
    }
    Ok(if inconclusive {
        Fullness::Inconclusive
    } else {
        Fullness::Full
    })
}

/// Outcome of comparing `Hom_A(M, N)` with corner intertwiners over all
/// enumerated pairs in `M(A)_e`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MoritaSweep {
    pub reps_checked: usize,
    pub reps_in_category: usize,
    pub pairs_checked: usize,
    pub bijective_pairs: usize,
    /// Indices (into the in-category list) and dimensions of the first failure.
    pub first_failure: Option<(usize, usize, MoritaComparison)>,
}

impl MoritaSweep {
    pub fn all_bijective(&self) -> bool {
        self.bijective_pairs == self.pairs_checked
    }
}

pub fn check_morita(e: &AlgElem, budget: &OracleBudget) -> Result<MoritaSweep, OracleError> {
    if !e.is_idempotent() {
        return Err(OracleError::NotIdempotent);
    }
    let reps = enumerate_reps(e.algebra(), budget)?;
    let flags = budget.exec.try_map(&reps, |m| in_category_e(e, m))?;
    let inside: Vec<&Representation> = reps
        .iter()
        .zip(flags)
        .filter_map(|(m, ok)| ok.then_some(m))
        .collect();
    let pairs: Vec<(usize, usize)> = (0..inside.len())
        .flat_map(|i| (0..inside.len()).map(move |j| (i, j)))
        .collect();
    let results = budget.exec.try_map(&pairs, |&(i, j)| {
        compare_with_corner(e, inside[i], inside[j])
    })?;
    let first_failure = pairs
        .iter()
        .zip(&results)
        .find(|(_, c)| !c.is_bijection())
        .map(|(&(i, j), &c)| (i, j, c));
    Ok(MoritaSweep {
        reps_checked: reps.len(),
        reps_in_category: inside.len(),
        pairs_checked: pairs.len(),
        bijective_pairs: results.iter().filter(|c| c.is_bijection()).count(),
        first_failure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::arrow;
    use crate::quiver::Quiver;
    use crate::ring::RingElem;

    fn f2() -> RingSpec {
        RingSpec::prime_field(2).unwrap()
    }

    fn budget(alg: &PathAlgebra, d: usize) -> OracleBudget {
        OracleBudget::default_for(alg).with_max_dim(d)
    }

    fn kk(alg: &Arc<PathAlgebra>, c: u64) -> Representation {
        Representation::new(
            alg,
            vec![1, 1],
            vec![Matrix::from_rows(1, 1, vec![RingElem::Residue(c)])],
        )
        .unwrap()
    }

    #[test]
    fn rep_enumeration_examples() {
        let alg = arrow(f2());
        let reps = enumerate_reps(&alg, &budget(&alg, 2)).unwrap();
        for m in [
            Representation::simple(&alg, 0),
            Representation::simple(&alg, 1),
            kk(&alg, 0),
            kk(&alg, 1),
        ] {
            assert!(reps.contains(&m));
        }
        // dims (0,0) (0,1) (1,0) (0,2) (1,1)x2 (2,0)
        assert_eq!(reps.len(), 7);
        assert_eq!(count_reps(&alg, 2).unwrap(), 7);
        let zero = enumerate_reps(&alg, &budget(&alg, 0)).unwrap();
        assert_eq!(zero, vec![Representation::zero(&alg)]);
        let point = PathAlgebra::new(Quiver::from_indices(1, &[]).unwrap(), f2());
        assert_eq!(enumerate_reps(&point, &budget(&point, 1)).unwrap().len(), 2);
    }

    #[test]
    fn rep_enumeration_cap_and_field() {
        let alg = PathAlgebra::new(Quiver::from_indices(1, &[(0, 0), (0, 0)]).unwrap(), f2());
        let mut b = budget(&alg, 3);
        b.max_reps = 100;
        match enumerate_reps(&alg, &b) {
            Err(e @ OracleError::TooManyReps { count, .. }) => {
                assert_eq!(count, 1 + 4 + 256 + (1 << 18));
                assert!(e.is_budget());
            }
            other => panic!("{other:?}"),
        }
        let z6 = PathAlgebra::new(
            Quiver::from_indices(1, &[]).unwrap(),
            RingSpec::integers_mod(6).unwrap(),
        );
        assert!(matches!(
            enumerate_reps(&z6, &budget(&z6, 1)),
            Err(OracleError::NotPrimeField(_))
        ));
    }

    #[test]
    fn submodule_examples() {
        let alg = arrow(f2());
        assert_eq!(
            enumerate_submodules(&Representation::zero(&alg))
                .unwrap()
                .len(),
            1
        );
        let subs = enumerate_submodules(&kk(&alg, 1)).unwrap();
        assert_eq!(
            subs.iter().map(|s| s.dims()).collect::<Vec<_>>(),
            vec![
                vec![Some(0), Some(0)],
                vec![Some(0), Some(1)],
                vec![Some(1), Some(1)]
            ]
        );
        assert_eq!(enumerate_submodules(&kk(&alg, 0)).unwrap().len(), 4);
    }

    #[test]
    fn special_oracle_examples() {
        let alg = arrow(f2());
        let b = budget(&alg, 2);
        let e1 = AlgElem::vertex(&alg, 0).unwrap();
        match check_special_by_modules(&e1, &b).unwrap() {
            Verdict::Counterexample { module, submodule } => {
                assert_eq!(module, kk(&alg, 1));
                assert_eq!(submodule.dims(), vec![Some(0), Some(1)]);
            }
            v => panic!("{v:?}"),
        }
        let e2 = AlgElem::vertex(&alg, 1).unwrap();
        assert_eq!(
            check_special_by_modules(&e2, &b).unwrap(),
            Verdict::Consistent { reps_checked: 7 }
        );
        assert!(check_special_by_modules(&AlgElem::unit(&alg), &b)
            .unwrap()
            .is_consistent());
    }

    #[test]
    fn split_oracle_examples() {
        let alg = arrow(f2());
        let b = budget(&alg, 2);
        let e2 = AlgElem::vertex(&alg, 1).unwrap();
        match check_split_by_sequences(&e2, &b).unwrap() {
            Verdict::Counterexample { module, submodule } => {
                assert_eq!(module, kk(&alg, 1));
                assert_eq!(submodule.dims(), vec![Some(0), Some(1)]);
            }
            v => panic!("{v:?}"),
        }
        assert!(check_split_by_sequences(&AlgElem::unit(&alg), &b)
            .unwrap()
            .is_consistent());
        let two = PathAlgebra::new(Quiver::from_indices(2, &[]).unwrap(), f2());
        let e = AlgElem::vertex(&two, 1).unwrap();
        assert!(check_split_by_sequences(&e, &budget(&two, 3))
            .unwrap()
            .is_consistent());
        let e1 = AlgElem::vertex(&alg, 0).unwrap();
        assert_eq!(
            check_split_by_sequences(&e1, &b),
            Err(OracleError::NotSpecial)
        );
    }

    #[test]
    fn verdict_json() {
        let v = Verdict::Consistent { reps_checked: 7 };
        assert_eq!(
            serde_json::to_string(&v.to_json()).unwrap(),
            r#"{"verdict":"consistent","reps_checked":7}"#
        );
        let alg = arrow(f2());
        let m = kk(&alg, 1);
        let n = gamma(&AlgElem::vertex(&alg, 1).unwrap(), &m).unwrap();
        let j = serde_json::to_value(
            Verdict::Counterexample {
                module: m,
                submodule: n,
            }
            .to_json(),
        )
        .unwrap();
        assert_eq!(j["verdict"], "counterexample");
        assert_eq!(j["submodule"]["basis"]["v2"][0][0], "1");
    }

    #[test]
    fn orthogonality_examples() {
        let two = PathAlgebra::new(Quiver::from_indices(2, &[]).unwrap(), f2());
        let (a, b) = (
            AlgElem::vertex(&two, 0).unwrap(),
            AlgElem::vertex(&two, 1).unwrap(),
        );
        assert!(orthogonality_bruteforce(&a, &b, 2).unwrap());
        let alg = arrow(f2());
        let e2 = AlgElem::vertex(&alg, 1).unwrap();
        assert!(!orthogonality_bruteforce(&e2, &e2, 2).unwrap());
        let z6 = RingSpec::integers_mod(6).unwrap();
        let alg6 = arrow(z6);
        let x = AlgElem::unit(&alg6).scale(&RingElem::Residue(3));
        let y = AlgElem::unit(&alg6).scale(&RingElem::Residue(4));
        assert!(orthogonality_bruteforce(&x, &y, 2).unwrap());
    }

    #[test]
    fn fullness_examples() {
        let f5 = RingSpec::prime_field(5).unwrap();
        let alg = arrow(f5);
        assert_eq!(
            fullness_bruteforce(&alg, &[AlgElem::unit(&alg)], 0).unwrap(),
            Fullness::Full
        );
        let e2 = AlgElem::vertex(&alg, 1).unwrap();
        assert_eq!(
            fullness_bruteforce(&alg, &[e2], 3).unwrap(),
            Fullness::NotFull
        );
        let z6 = RingSpec::integers_mod(6).unwrap();
        let alg6 = arrow(z6);
        let x = AlgElem::unit(&alg6).scale(&RingElem::Residue(3));
        let y = AlgElem::unit(&alg6).scale(&RingElem::Residue(4));
        assert_eq!(
            fullness_bruteforce(&alg6, &[x.clone(), y], 0).unwrap(),
            Fullness::Full
        );
        assert_eq!(
            fullness_bruteforce(&alg6, &[x], 0).unwrap(),
            Fullness::NotFull
        );
    }

    #[test]
    fn fullness_inconclusive_on_truncation() {
        let f2 = f2();
        let alg = arrow(f2);
        let a = AlgElem::term(&alg, Path::Edges(vec![0]), RingElem::Residue(1)).unwrap();
        let e2 = AlgElem::vertex(&alg, 1).unwrap();
        // degree-0 sandwiches of e_v2 + a already separate e_v2 and a
        let g = e2.add(&a).unwrap();
        assert_eq!(
            fullness_bruteforce(&alg, &[g, AlgElem::vertex(&alg, 0).unwrap()], 0).unwrap(),
            Fullness::Full
        );
        // the cyclic quiver never becomes exhaustive
        let cyc = PathAlgebra::new(Quiver::from_indices(1, &[(0, 0)]).unwrap(), f2);
        let loop_plus = AlgElem::unit(&cyc)
            .add(&AlgElem::term(&cyc, Path::Edges(vec![0]), RingElem::Residue(1)).unwrap())
            .unwrap();
        // (1 + x) is proper in K[x], but no truncation can show it
        assert_eq!(
            fullness_bruteforce(&cyc, &[loop_plus], 2).unwrap(),
            Fullness::Inconclusive
        );
    }

    #[test]
    fn morita_on_arrow() {
        let alg = arrow(f2());
        let e2 = AlgElem::vertex(&alg, 1).unwrap();
        let sweep = check_morita(&e2, &budget(&alg, 3)).unwrap();
        assert!(sweep.reps_in_category > 1);
        assert!(sweep.all_bijective(), "{sweep:?}");
    }

    #[test]
    fn exec_strategies_agree() {
        let alg = PathAlgebra::new(Quiver::from_indices(3, &[(0, 1), (1, 2)]).unwrap(), f2());
        for mask in 0u64..8 {
            let e = AlgElem::vertex_set(&alg, &crate::quiver::mask_to_set(mask, 3)).unwrap();
            let seq = check_special_by_modules(&e, &budget(&alg, 2).with_exec(Exec::Sequential));
            let par = check_special_by_modules(&e, &budget(&alg, 2).with_exec(Exec::Parallel));
            assert_eq!(seq, par);
        }
    }
}
