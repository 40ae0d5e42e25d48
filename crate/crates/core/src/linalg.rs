//! Exact linear algebra over the supported base rings.
//!
//! Subspaces (submodules of `K^d`) are kept in a canonical echelon form.
//! Over a field this is the reduced row echelon form. Over `Z/n` it is the
//! Howell form: an echelon form whose pivots divide `n` and which is saturated,
//! i.e. `ann(pivot) * row` lies in the span of the later rows. Saturation is
//! what makes greedy reduction a complete membership test over a ring with
//! zero divisors, and the canonical form makes equal spans compare equal.

use crate::ring::{RingElem, RingSpec};

pub type Vector = Vec<RingElem>;

/// A dense row-major matrix over a base ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<RingElem>,
}

impl Matrix {
    pub fn zeros(ring: RingSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: RingSpec, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<RingElem>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has the wrong length");
        Matrix { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(ring: RingSpec, height: usize, columns: &[Vector]) -> Self {
        let mut m = Self::zeros(ring, height, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RingElem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: RingElem) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[RingElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self, ring: RingSpec) -> bool {
        self.data.iter().all(|x| ring.is_zero(x))
    }

    pub fn mul(&self, ring: RingSpec, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shapes do not compose");
        let mut out = Matrix::zeros(ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if ring.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if ring.is_zero(b) {
                        continue;
                    }
                    let v = ring.add(out.get(i, j), &ring.mul(a, b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, ring: RingSpec, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| ring.add(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, ring: RingSpec, c: &RingElem) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| ring.mul(a, c)).collect(),
        }
    }

    pub fn apply(&self, ring: RingSpec, v: &[RingElem]) -> Vector {
        assert_eq!(self.cols, v.len(), "vector length does not match matrix");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(ring.zero(), |acc, (a, b)| ring.add(&acc, &ring.mul(a, b)))
            })
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }
}

pub(crate) fn vec_is_zero(ring: RingSpec, v: &[RingElem]) -> bool {
    v.iter().all(|x| ring.is_zero(x))
}

fn axpy(ring: RingSpec, y: &mut [RingElem], c: &RingElem, x: &[RingElem]) {
    if ring.is_zero(c) {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi = ring.add(yi, &ring.mul(c, xi));
    }
}

fn scaled(ring: RingSpec, c: &RingElem, x: &[RingElem]) -> Vector {
    x.iter().map(|xi| ring.mul(c, xi)).collect()
}

fn lin2(ring: RingSpec, a: &RingElem, x: &[RingElem], b: &RingElem, y: &[RingElem]) -> Vector {
    x.iter()
        .zip(y)
        .map(|(xi, yi)| ring.add(&ring.mul(a, xi), &ring.mul(b, yi)))
        .collect()
}

/// A submodule of `K^d`, stored in canonical echelon form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Span {
    ring: RingSpec,
    dim: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Span {
    pub fn zero(ring: RingSpec, dim: usize) -> Self {
        Span {
            ring,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ring: RingSpec, dim: usize) -> Self {
        let rows = (0..dim)
            .map(|i| {
                let mut v = vec![ring.zero(); dim];
                v[i] = ring.one();
                v
            })
            .collect();
        Span {
            ring,
            dim,
            rows,
            pivots: (0..dim).collect(),
        }
    }

    pub fn new<I>(ring: RingSpec, dim: usize, generators: I) -> Self
    where
        I: IntoIterator<Item = Vector>,
    {
        let mut pending: Vec<Vector> = generators
            .into_iter()
            .inspect(|g| assert_eq!(g.len(), dim, "generator has the wrong length"))
            .filter(|g| !vec_is_zero(ring, g))
            .collect();
        let mut rows: Vec<Vector> = Vec::new();
        let mut pivots = Vec::new();
        for col in 0..dim {
            if pending.is_empty() {
                break;
            }
            let (mut with, mut rest): (Vec<Vector>, Vec<Vector>) =
                pending.into_iter().partition(|r| !ring.is_zero(&r[col]));
            if with.is_empty() {
                pending = rest;
                continue;
            }
            let mut piv = with.swap_remove(0);
            for r in with {
                let [s, t, c, d] = ring.bezout(&piv[col], &r[col]);
                let new_piv = lin2(ring, &s, &piv, &t, &r);
                let cleared = lin2(ring, &c, &piv, &d, &r);
                debug_assert!(ring.is_zero(&cleared[col]));
                piv = new_piv;
                if !vec_is_zero(ring, &cleared) {
                    rest.push(cleared);
                }
            }
            // after combining, the pivot entry may have collapsed to zero mod n
            if ring.is_zero(&piv[col]) {
                if !vec_is_zero(ring, &piv) {
                    rest.push(piv);
                }
                pending = rest;
                continue;
            }
            let (_, unit) = ring.normalize(&piv[col]);
            piv = scaled(ring, &unit, &piv);
            let ann = ring.annihilator(&piv[col]);
            if !ring.is_zero(&ann) {
                let sat = scaled(ring, &ann, &piv);
                if !vec_is_zero(ring, &sat) {
                    rest.push(sat);
                }
            }
            rows.push(piv);
            pivots.push(col);
            pending = rest;
        }
        let mut span = Span {
            ring,
            dim,
            rows,
            pivots,
        };
        span.reduce_above();
        span
    }

    /// Bring entries above each pivot into canonical residue range.
    fn reduce_above(&mut self) {
        let ring = self.ring;
        for i in 0..self.rows.len() {
            let col = self.pivots[i];
            let pivot = self.rows[i][col].clone();
            let pivot_row = self.rows[i].clone();
            for j in 0..i {
                let (q, _) = ring.reduce_mod(&self.rows[j][col], &pivot);
                axpy(ring, &mut self.rows[j], &ring.neg(&q), &pivot_row);
            }
        }
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    /// Ambient dimension `d`.
    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Every pivot is a unit, so the rows are a basis of a free direct summand.
    pub fn has_unit_pivots(&self) -> bool {
        self.rows
            .iter()
            .zip(&self.pivots)
            .all(|(r, &c)| self.ring.is_unit(&r[c]))
    }

    /// Rank when the span is a free direct summand.
    pub fn rank(&self) -> Option<usize> {
        self.has_unit_pivots().then_some(self.rows.len())
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim && self.has_unit_pivots()
    }

    /// Number of elements, for finite rings: the product of `n / pivot`.
    pub fn cardinality(&self) -> Option<u128> {
        let n = self.ring.modulus()? as u128;
        let mut total: u128 = 1;
        for (r, &c) in self.rows.iter().zip(&self.pivots) {
            let g = match &r[c] {
                RingElem::Residue(g) => *g as u128,
                RingElem::Rational(_) => unreachable!(),
            };
            total = total.checked_mul(n / g)?;
        }
        Some(total)
    }

    /// Greedy reduction; returns the remainder and the row multipliers used.
    fn reduce(&self, v: &[RingElem]) -> (Vector, Vec<RingElem>) {
        assert_eq!(v.len(), self.dim, "vector has the wrong length");
        let ring = self.ring;
        let mut v = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.rows.len());
        for (row, &col) in self.rows.iter().zip(&self.pivots) {
            match ring.divide(&v[col], &row[col]) {
                Some(q) => {
                    axpy(ring, &mut v, &ring.neg(&q), row);
                    coeffs.push(q);
                }
                None => {
                    coeffs.push(ring.zero());
                }
            }
        }
        (v, coeffs)
    }

    pub fn contains(&self, v: &[RingElem]) -> bool {
        vec_is_zero(self.ring, &self.reduce(v).0)
    }

    /// Coordinates of `v` with respect to the rows, when the span is a free
    /// direct summand and `v` lies in it.
    pub fn coordinates(&self, v: &[RingElem]) -> Option<Vector> {
        if !self.has_unit_pivots() {
            return None;
        }
        let (rem, coeffs) = self.reduce(v);
        vec_is_zero(self.ring, &rem).then_some(coeffs)
    }

    /// Residue of `v` modulo a free direct summand, read off at the non-pivot
    /// columns (the coordinates in the quotient `K^d / self`).
    pub fn quotient_coordinates(&self, v: &[RingElem]) -> Option<Vector> {
        if !self.has_unit_pivots() {
            return None;
        }
        let (rem, _) = self.reduce(v);
        Some(
            self.non_pivot_columns()
                .into_iter()
                .map(|c| rem[c].clone())
                .collect(),
        )
    }

    pub fn non_pivot_columns(&self) -> Vec<usize> {
        (0..self.dim).filter(|c| !self.pivots.contains(c)).collect()
    }

    pub fn join(&self, other: &Span) -> Span {
        assert_eq!(self.dim, other.dim);
        Span::new(
            self.ring,
            self.dim,
            self.rows.iter().chain(other.rows.iter()).cloned(),
        )
    }

    pub fn contains_span(&self, other: &Span) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// Image of the span under a matrix of shape `m x dim`.
    pub fn image(&self, matrix: &Matrix) -> Span {
        Span::new(
            self.ring,
            matrix.rows(),
            self.rows.iter().map(|r| matrix.apply(self.ring, r)),
        )
    }

    /// All elements, for finite rings (test and oracle use only; exponential).
    pub fn elements(&self) -> Option<Vec<Vector>> {
        let n = self.ring.modulus()?;
        let mut out = vec![vec![self.ring.zero(); self.dim]];
        for row in &self.rows {
            let mut next = Vec::new();
            for base in &out {
                for c in 0..n {
                    let mut v = base.clone();
                    axpy(self.ring, &mut v, &RingElem::Residue(c), row);
                    next.push(v);
                }
            }
            next.sort();
            next.dedup();
            out = next;
        }
        Some(out)
    }
}

/// Column space of a matrix.
pub fn column_span(ring: RingSpec, m: &Matrix) -> Span {
    Span::new(ring, m.rows(), (0..m.cols()).map(|j| m.column(j)))
}

/// Solutions `x` of `m x = 0`.
pub fn kernel(ring: RingSpec, m: &Matrix) -> Span {
    let (r, c) = (m.rows(), m.cols());
    // rows (m e_i, e_i); the span's part with zero head is {(0, x) : m x = 0}
    let aug = (0..c).map(|i| {
        let mut v = m.column(i);
        v.extend((0..c).map(|k| if k == i { ring.one() } else { ring.zero() }));
        v
    });
    let span = Span::new(ring, r + c, aug);
    let tails = span
        .rows
        .iter()
        .zip(&span.pivots)
        .filter(|(_, &p)| p >= r)
        .map(|(row, _)| row[r..].to_vec());
    Span::new(ring, c, tails)
}

/// All subspaces of `F_p^d` (each exactly once), for prime fields.
pub fn all_subspaces(ring: RingSpec, dim: usize) -> Vec<Span> {
    assert!(
        ring.is_field() && ring.is_finite(),
        "subspace enumeration needs a finite field"
    );
    let p = ring.modulus().unwrap();
    let mut out = Vec::new();
    // choose pivot columns, then fill free entries of an RREF matrix
    for mask in 0u64..(1 << dim) {
        let pivots: Vec<usize> = (0..dim).filter(|i| mask & (1 << i) != 0).collect();
        let mut free: Vec<(usize, usize)> = Vec::new();
        for (ri, &pc) in pivots.iter().enumerate() {
            for c in pc + 1..dim {
                if !pivots.contains(&c) {
                    free.push((ri, c));
                }
            }
        }
        let count = (p as u128).pow(free.len() as u32);
        for mut k in 0..count {
            let mut rows: Vec<Vector> = pivots
                .iter()
                .map(|&pc| {
                    let mut v = vec![ring.zero(); dim];
                    v[pc] = ring.one();
                    v
                })
                .collect();
            for &(ri, c) in &free {
                rows[ri][c] = RingElem::Residue((k % p as u128) as u64);
                k /= p as u128;
            }
            out.push(Span {
                ring,
                dim,
                rows,
                pivots: pivots.clone(),
            });
        }
    }
    out
}
