//! The commutative base ring.
//!
//! Three families are supported: prime fields `F_p`, residue rings `Z/n` and
//! the rationals. Elements are stored in canonical form (least nonnegative
//! residue, or reduced fraction with positive denominator) so that structural
//! equality is ring equality.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(u64),
    #[error("cannot parse {0:?} as an element of {1}")]
    Parse(String, RingSpec),
    #[error("{0} is not an idempotent of {1}")]
    NotIdempotent(String, RingSpec),
    #[error("{0} is not invertible in {1}")]
    NotInvertible(String, RingSpec),
    #[error("the ring {0} is infinite")]
    Infinite(RingSpec),
}

/// A supported base ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "ring")]
pub enum RingSpec {
    #[serde(rename = "Fp")]
    PrimeField { p: u64 },
    #[serde(rename = "Zn")]
    IntegersMod { n: u64 },
    #[serde(rename = "Q")]
    Rationals,
}

/// An element of a [`RingSpec`] in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingElem {
    Residue(u64),
    Rational(BigRational),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Extended gcd on nonnegative integers: returns `(g, s, t)` with `s*a + t*b = g`.
fn xgcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0, s0, t0)
}

impl RingSpec {
    pub fn prime_field(p: u64) -> Result<Self, RingError> {
        if !is_prime(p) {
            return Err(RingError::NotPrime(p));
        }
        Ok(RingSpec::PrimeField { p })
    }

    pub fn integers_mod(n: u64) -> Result<Self, RingError> {
        if n < 2 {
            return Err(RingError::ModulusTooSmall(n));
        }
        Ok(RingSpec::IntegersMod { n })
    }

    pub fn rationals() -> Self {
        RingSpec::Rationals
    }

    /// Re-check the invariants; used after deserialization.
    pub fn validate(self) -> Result<Self, RingError> {
        match self {
            RingSpec::PrimeField { p } => Self::prime_field(p),
            RingSpec::IntegersMod { n } => Self::integers_mod(n),
            RingSpec::Rationals => Ok(self),
        }
    }

    /// The modulus for finite rings, `None` for the rationals.
    pub fn modulus(self) -> Option<u64> {
        match self {
            RingSpec::PrimeField { p } => Some(p),
            RingSpec::IntegersMod { n } => Some(n),
            RingSpec::Rationals => None,
        }
    }

    pub fn is_field(self) -> bool {
        match self {
            RingSpec::PrimeField { .. } | RingSpec::Rationals => true,
            RingSpec::IntegersMod { n } => is_prime(n),
        }
    }

    pub fn is_finite(self) -> bool {
        self.modulus().is_some()
    }

    fn residue(self, x: u64) -> RingElem {
        RingElem::Residue(x % self.modulus().expect("finite ring"))
    }

    pub fn zero(self) -> RingElem {
        match self {
            RingSpec::Rationals => RingElem::Rational(BigRational::zero()),
            _ => RingElem::Residue(0),
        }
    }

    pub fn one(self) -> RingElem {
        self.from_i64(1)
    }

    pub fn from_i64(self, x: i64) -> RingElem {
        match self.modulus() {
            Some(n) => RingElem::Residue((x as i128).rem_euclid(n as i128) as u64),
            None => RingElem::Rational(BigRational::from_integer(BigInt::from(x))),
        }
    }

    pub fn from_ratio(self, num: i64, den: i64) -> Result<RingElem, RingError> {
        let d = self.from_i64(den);
        let inv = self
            .inv(&d)
            .ok_or_else(|| RingError::NotInvertible(den.to_string(), self))?;
        Ok(self.mul(&self.from_i64(num), &inv))
    }

    fn res(a: &RingElem) -> u64 {
        match a {
            RingElem::Residue(x) => *x,
            RingElem::Rational(_) => panic!("rational element used in a residue ring"),
        }
    }

    fn rat(a: &RingElem) -> &BigRational {
        match a {
            RingElem::Rational(q) => q,
            RingElem::Residue(_) => panic!("residue element used in the rationals"),
        }
    }

    pub fn add(self, a: &RingElem, b: &RingElem) -> RingElem {
        match self.modulus() {
            Some(n) => RingElem::Residue(
                ((Self::res(a) as u128 + Self::res(b) as u128) % n as u128) as u64,
            ),
            None => RingElem::Rational(Self::rat(a) + Self::rat(b)),
        }
    }

    pub fn neg(self, a: &RingElem) -> RingElem {
        match self.modulus() {
            Some(n) => RingElem::Residue((n - Self::res(a)) % n),
            None => RingElem::Rational(-Self::rat(a)),
        }
    }

    pub fn sub(self, a: &RingElem, b: &RingElem) -> RingElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(self, a: &RingElem, b: &RingElem) -> RingElem {
        match self.modulus() {
            Some(n) => RingElem::Residue(
                ((Self::res(a) as u128 * Self::res(b) as u128) % n as u128) as u64,
            ),
            None => RingElem::Rational(Self::rat(a) * Self::rat(b)),
        }
    }

    pub fn is_zero(self, a: &RingElem) -> bool {
        match a {
            RingElem::Residue(x) => *x == 0,
            RingElem::Rational(q) => q.is_zero(),
        }
    }

    pub fn is_one(self, a: &RingElem) -> bool {
        *a == self.one()
    }

    pub fn is_unit(self, a: &RingElem) -> bool {
        match self.modulus() {
            Some(n) => gcd(Self::res(a), n) == 1,
            None => !Self::rat(a).is_zero(),
        }
    }

    pub fn inv(self, a: &RingElem) -> Option<RingElem> {
        match self.modulus() {
            Some(n) => {
                let (g, s, _) = xgcd(Self::res(a) as i128, n as i128);
                (g == 1).then(|| RingElem::Residue(s.rem_euclid(n as i128) as u64))
            }
            None => {
                let q = Self::rat(a);
                (!q.is_zero()).then(|| RingElem::Rational(q.recip()))
            }
        }
    }

    pub fn is_idempotent(self, a: &RingElem) -> bool {
        self.mul(a, a) == *a
    }

    /// All elements of a finite ring in increasing residue order.
    pub fn elements(self) -> Result<Vec<RingElem>, RingError> {
        let n = self.modulus().ok_or(RingError::Infinite(self))?;
        Ok((0..n).map(RingElem::Residue).collect())
    }

    /// The idempotents of the ring, sorted.
    pub fn idempotents(self) -> Vec<RingElem> {
        match self.modulus() {
            Some(n) => (0..n)
                .map(RingElem::Residue)
                .filter(|x| self.is_idempotent(x))
                .collect(),
            None => vec![self.zero(), self.one()],
        }
    }

    fn check_idempotent(self, a: &RingElem) -> Result<(), RingError> {
        if self.is_idempotent(a) {
            Ok(())
        } else {
            Err(RingError::NotIdempotent(self.format(a), self))
        }
    }

    /// `K a ⊆ K b` for idempotents `a`, `b`; equivalent to `a b = a`.
    pub fn idem_leq(self, a: &RingElem, b: &RingElem) -> Result<bool, RingError> {
        self.check_idempotent(a)?;
        self.check_idempotent(b)?;
        Ok(self.mul(a, b) == *a)
    }

    /// `a ∨ b = a + b - ab`, the idempotent generating the ideal `(a, b)`.
    pub fn idem_join(self, a: &RingElem, b: &RingElem) -> RingElem {
        self.sub(&self.add(a, b), &self.mul(a, b))
    }

    /// Whether the ideal generated by the given idempotents is the whole ring.
    pub fn idem_join_is_unit(self, elems: &[RingElem]) -> Result<bool, RingError> {
        let mut acc = self.zero();
        for e in elems {
            self.check_idempotent(e)?;
            acc = self.idem_join(&acc, e);
        }
        Ok(self.is_one(&acc))
    }

    /// Canonical string form: `"3"`, `"-2/5"`.
    pub fn format(self, a: &RingElem) -> String {
        match a {
            RingElem::Residue(x) => x.to_string(),
            RingElem::Rational(q) => {
                if q.is_integer() {
                    q.numer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
        }
    }

    /// Parse a coefficient string. Residue rings accept any integer (reduced)
    /// and `a/b` with `b` invertible.
    pub fn parse(self, s: &str) -> Result<RingElem, RingError> {
        let err = || RingError::Parse(s.to_string(), self);
        let t = s.trim();
        let (num, den) = match t.split_once('/') {
            Some((a, b)) => (a.trim(), Some(b.trim())),
            None => (t, None),
        };
        let num: BigInt = num.parse().map_err(|_| err())?;
        let den: BigInt = match den {
            Some(d) => d.parse().map_err(|_| err())?,
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(err());
        }
        match self.modulus() {
            Some(n) => {
                let n_big = BigInt::from(n);
                let reduce = |x: &BigInt| -> u64 {
                    let r = x.mod_floor(&n_big);
                    r.try_into().expect("residue fits in u64")
                };
                let a = RingElem::Residue(reduce(&num));
                let b = RingElem::Residue(reduce(&den));
                let binv = self.inv(&b).ok_or_else(err)?;
                Ok(self.mul(&a, &binv))
            }
            None => {
                let q = BigRational::new(num, den);
                debug_assert!(q.denom().is_positive());
                Ok(RingElem::Rational(q))
            }
        }
    }

    /// For residue rings: the canonical associate `gcd(a, n)` of `a` and a unit
    /// `u` with `u a = gcd(a, n)`. For fields the associate of a nonzero
    /// element is 1.
    pub(crate) fn normalize(self, a: &RingElem) -> (RingElem, RingElem) {
        match self.modulus() {
            Some(n) => {
                let x = Self::res(a);
                let g = gcd(x, n);
                if g == n {
                    return (RingElem::Residue(0), RingElem::Residue(1));
                }
                // x = g x', n = g n', x' invertible mod n'
                let n1 = n / g;
                let x1 = (x / g) % n1;
                let (_, s, _) = xgcd(x1 as i128, n1 as i128);
                let mut u = s.rem_euclid(n1 as i128) as u64;
                if n1 == 1 {
                    u = 1;
                }
                // lift u to a unit modulo n
                while gcd(u, n) != 1 {
                    u += n1;
                }
                (RingElem::Residue(g), RingElem::Residue(u % n))
            }
            None => {
                if Self::rat(a).is_zero() {
                    (self.zero(), self.one())
                } else {
                    (self.one(), self.inv(a).unwrap())
                }
            }
        }
    }

    /// A generator of the annihilator of a canonical pivot (zero for units).
    pub(crate) fn annihilator(self, pivot: &RingElem) -> RingElem {
        match self.modulus() {
            Some(n) => {
                let g = gcd(Self::res(pivot), n);
                self.residue(n / g)
            }
            None => self.zero(),
        }
    }

    /// If `a` is a multiple of the canonical pivot `p`, a quotient `q` with `q p = a`.
    pub(crate) fn divide(self, a: &RingElem, p: &RingElem) -> Option<RingElem> {
        match self.modulus() {
            Some(n) => {
                let (x, g) = (Self::res(a), Self::res(p));
                if g == 0 {
                    return (x == 0).then_some(RingElem::Residue(0));
                }
                // p is canonical, so g divides n
                debug_assert_eq!(n % g, 0);
                (x % g == 0).then(|| RingElem::Residue(x / g))
            }
            None => self.inv(p).map(|pi| self.mul(a, &pi)),
        }
    }

    /// Reduce `a` modulo the canonical pivot `p`: returns `(q, r)` with
    /// `a = q p + r` and `r` canonical among residues mod `p`.
    pub(crate) fn reduce_mod(self, a: &RingElem, p: &RingElem) -> (RingElem, RingElem) {
        match self.modulus() {
            Some(_) => {
                let (x, g) = (Self::res(a), Self::res(p));
                match x.checked_div(g) {
                    None => (RingElem::Residue(0), a.clone()),
                    Some(q) => (RingElem::Residue(q), RingElem::Residue(x % g)),
                }
            }
            None => (
                self.divide(a, p).unwrap_or_else(|| self.zero()),
                self.zero(),
            ),
        }
    }

    /// Row-combination coefficients clearing `b` against `a`, both nonzero:
    /// returns `(g, s, t, c, d)` with `s a + t b = g`, `c a + d b = 0` and
    /// `[[s, t], [c, d]]` invertible.
    pub(crate) fn bezout(self, a: &RingElem, b: &RingElem) -> [RingElem; 4] {
        match self.modulus() {
            Some(n) => {
                let (x, y) = (Self::res(a) as i128, Self::res(b) as i128);
                let (g, s, t) = xgcd(x, y);
                let c = y / g;
                let d = -(x / g);
                let m = n as i128;
                let r = |v: i128| RingElem::Residue(v.rem_euclid(m) as u64);
                [r(s), r(t), r(c), r(d)]
            }
            None => {
                // a is a unit: keep a, clear b
                let ai = self.inv(a).expect("nonzero rational");
                [
                    self.one(),
                    self.zero(),
                    self.neg(&self.mul(b, &ai)),
                    self.one(),
                ]
            }
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::PrimeField { p } => write!(f, "F_{p}"),
            RingSpec::IntegersMod { n } => write!(f, "Z/{n}"),
            RingSpec::Rationals => write!(f, "Q"),
        }
    }
}

impl std::str::FromStr for RingSpec {
    type Err = RingError;

    /// Accepts the JSON form (`{"ring":"Zn","n":6}`) or the short forms
    /// `Fp:5`, `Zn:6`, `Q`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let bad = || RingError::Parse(t.to_string(), RingSpec::Rationals);
        if t.starts_with('{') {
            let spec: RingSpec = serde_json::from_str(t).map_err(|_| bad())?;
            return spec.validate();
        }
        match t.split_once(':') {
            Some(("Fp", p)) => Self::prime_field(p.trim().parse().map_err(|_| bad())?),
            Some(("Zn", n)) => Self::integers_mod(n.trim().parse().map_err(|_| bad())?),
            None if t == "Q" => Ok(RingSpec::Rationals),
            _ => Err(bad()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> RingSpec {
        RingSpec::integers_mod(n).unwrap()
    }

    fn r(x: u64) -> RingElem {
        RingElem::Residue(x)
    }

    #[test]
    fn idempotents_of_z6() {
        // brute force: x*x == x over all residues
        let brute: Vec<_> = (0..6u64).filter(|x| x * x % 6 == *x).map(r).collect();
        assert_eq!(brute, vec![r(0), r(1), r(3), r(4)]);
        assert_eq!(z(6).idempotents(), brute);
    }

    #[test]
    fn idempotents_of_fields() {
        let f5 = RingSpec::prime_field(5).unwrap();
        assert_eq!(f5.idempotents(), vec![r(0), r(1)]);
        let q = RingSpec::Rationals;
        assert_eq!(q.idempotents(), vec![q.zero(), q.one()]);
    }

    #[test]
    fn idem_leq_examples() {
        let k = z(6);
        assert!(k.idem_leq(&r(3), &r(3)).unwrap());
        assert!(k.idem_leq(&r(3), &r(1)).unwrap());
        assert!(!k.idem_leq(&r(3), &r(4)).unwrap());
        // K*4 = {0, 4, 2}
        let k4: Vec<u64> = (0..6).map(|x| x * 4 % 6).collect();
        assert!(!k4.contains(&3));
        assert!(matches!(
            k.idem_leq(&r(2), &r(1)),
            Err(RingError::NotIdempotent(..))
        ));
    }

    #[test]
    fn idem_join_examples() {
        let k = z(6);
        assert!(k.idem_join_is_unit(&[r(3), r(4)]).unwrap());
        assert!(k.idem_join_is_unit(&[r(1)]).unwrap());
        assert!(!k.idem_join_is_unit(&[r(3)]).unwrap());
        assert!(!k.idem_join_is_unit(&[]).unwrap());
        assert!(RingSpec::Rationals
            .idem_join_is_unit(&[RingSpec::Rationals.one()])
            .unwrap());
    }

    #[test]
    fn spec_validation() {
        assert_eq!(RingSpec::prime_field(4), Err(RingError::NotPrime(4)));
        assert_eq!(
            RingSpec::integers_mod(1),
            Err(RingError::ModulusTooSmall(1))
        );
        assert_eq!(
            "Fp:5".parse::<RingSpec>().unwrap(),
            RingSpec::PrimeField { p: 5 }
        );
        assert_eq!(
            r#"{"ring":"Zn","n":6}"#.parse::<RingSpec>().unwrap(),
            RingSpec::IntegersMod { n: 6 }
        );
        assert_eq!(
            r#"{"ring":"Q"}"#.parse::<RingSpec>().unwrap(),
            RingSpec::Rationals
        );
        assert!(r#"{"ring":"Fp","p":6}"#.parse::<RingSpec>().is_err());
        assert_eq!(
            serde_json::to_string(&RingSpec::PrimeField { p: 5 }).unwrap(),
            r#"{"ring":"Fp","p":5}"#
        );
    }

    #[test]
    fn parse_and_format() {
        let q = RingSpec::Rationals;
        let x = q.parse("6/-4").unwrap();
        assert_eq!(q.format(&x), "-3/2");
        assert_eq!(q.format(&q.parse("4/2").unwrap()), "2");
        let k = z(6);
        assert_eq!(k.parse("-1").unwrap(), r(5));
        assert_eq!(k.parse("1/5").unwrap(), r(5));
        assert!(k.parse("1/2").is_err());
        assert!(k.parse("x").is_err());
        assert!(q.parse("1/0").is_err());
    }

    #[test]
    fn normalize_gives_gcd_associate() {
        for n in [4u64, 6, 12, 7] {
            let k = z(n);
            for x in 0..n {
                let (g, u) = k.normalize(&r(x));
                assert!(k.is_unit(&u));
                assert_eq!(k.mul(&u, &r(x)), g);
                assert_eq!(RingSpec::res(&g), gcd(x, n) % n);
            }
        }
    }

    #[test]
    fn bezout_clears() {
        let k = z(12);
        for a in 1..12u64 {
            for b in 1..12u64 {
                let [s, t, c, d] = k.bezout(&r(a), &r(b));
                let lin = |x: &RingElem, y: &RingElem| k.add(&k.mul(x, &r(a)), &k.mul(y, &r(b)));
                assert!(k.is_zero(&lin(&c, &d)));
                let det = k.sub(&k.mul(&s, &d), &k.mul(&t, &c));
                assert!(k.is_unit(&det), "a={a} b={b}");
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn idem_leq_matches_principal_ideal(n in 2u64..40) {
                let k = z(n);
                let idem = k.idempotents();
                for a in &idem {
                    for b in &idem {
                        let kb: Vec<RingElem> = (0..n).map(|x| k.mul(&r(x), b)).collect();
                        prop_assert_eq!(k.idem_leq(a, b).unwrap(), kb.contains(a));
                    }
                }
            }

            #[test]
            fn join_unit_matches_ideal_enumeration(n in 2u64..40, mask in 0u32..256) {
                let k = z(n);
                let idem = k.idempotents();
                let chosen: Vec<RingElem> = idem
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, e)| e.clone())
                    .collect();
                // ideal generated: closure of {0} under adding multiples of generators
                let mut ideal = std::collections::BTreeSet::from([0u64]);
                loop {
                    let mut next = ideal.clone();
                    for x in &ideal {
                        for g in &chosen {
                            for c in 0..n {
                                next.insert((x + c * RingSpec::res(g)) % n);
                            }
                        }
                    }
                    if next == ideal { break; }
                    ideal = next;
                }
                prop_assert_eq!(k.idem_join_is_unit(&chosen).unwrap(), ideal.contains(&1));
            }

            #[test]
            fn idempotents_closed_under_product_and_join(n in 2u64..60) {
                let k = z(n);
                let idem = k.idempotents();
                for a in &idem {
                    for b in &idem {
                        prop_assert!(idem.contains(&k.mul(a, b)));
                        prop_assert!(idem.contains(&k.idem_join(a, b)));
                    }
                }
            }
        }
    }
}
