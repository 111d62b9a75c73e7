//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.
//!
//! A value is stored in the power basis `1, ζ_N, …, ζ_N^{φ(N)-1}` of
//! `Q[X]/(Φ_N)` at the smallest conductor `N` whose field contains it, so two
//! values are equal exactly when their conductors and coordinates agree.
//! Rationals always have conductor 1; conductors `≡ 2 mod 4` never occur.

use crate::linalg::{self, Matrix};
use crate::numtheory::{self, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CyclotomicError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("exponent {k} is not coprime to the conductor {conductor}")]
    NotCoprime { k: i64, conductor: u64 },
    #[error("prime {p} divides the conductor {conductor}")]
    PrimeDividesConductor { p: u64, conductor: u64 },
    #[error("not rational (conductor {conductor})")]
    NotRational { conductor: u64 },
    #[error("invalid cyclotomic encoding: {0}")]
    Encoding(String),
}

/// Per-conductor tables: `Φ_N` and the reductions of `X^k mod Φ_N` for `0 <= k < N`.
#[derive(Debug)]
struct FieldTables {
    n: u64,
    degree: usize,
    phi: Vec<i64>,
    powers: Vec<Vec<i64>>,
}

type Cache<K, V> = OnceLock<RwLock<HashMap<K, Arc<V>>>>;

static TABLES: Cache<u64, FieldTables> = OnceLock::new();
static DESCENT: Cache<(u64, u64), Descent> = OnceLock::new();

fn tables(n: u64) -> Arc<FieldTables> {
    let cache = TABLES.get_or_init(Default::default);
    if let Some(t) = cache.read().expect("cyclotomic cache poisoned").get(&n) {
        return t.clone();
    }
    let built = Arc::new(FieldTables::build(n));
    cache
        .write()
        .expect("cyclotomic cache poisoned")
        .entry(n)
        .or_insert(built)
        .clone()
}

/// Ascending coefficients of `Φ_n`, computed as `(X^n - 1) / ∏_{d | n, d < n} Φ_d`.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    tables(n).phi.clone()
}

fn poly_divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qlen = rem.len() - dd;
    let mut q = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dd];
        q[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    q
}

impl FieldTables {
    fn build(n: u64) -> Self {
        assert!(n >= 1, "conductor must be positive");
        let phi = if n == 1 {
            vec![-1, 1]
        } else {
            let mut p = vec![0i64; n as usize + 1];
            p[0] = -1;
            p[n as usize] = 1;
            for d in numtheory::divisors(n) {
                if d < n {
                    p = poly_divide_monic(&p, &tables(d).phi);
                }
            }
            p
        };
        let degree = phi.len() - 1;
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        if degree == 1 && n == 1 {
            powers.push(cur);
        } else {
            for _ in 0..n {
                powers.push(cur.clone());
                // multiply by X and reduce with the monic Φ_n
                let top = cur[degree - 1];
                let mut next = vec![0i64; degree];
                next[1..degree].copy_from_slice(&cur[..degree - 1]);
                for (j, c) in next.iter_mut().enumerate() {
                    *c -= top * phi[j];
                }
                cur = next;
            }
        }
        FieldTables { n, degree, phi, powers }
    }

    fn power(&self, k: u64) -> &[i64] {
        &self.powers[(k % self.n) as usize]
    }

    /// Adds `c · X^k` into `acc`.
    fn accumulate(&self, acc: &mut [Rational], k: u64, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (a, &t) in acc.iter_mut().zip(self.power(k)) {
            if t != 0 {
                *a += c * BigInt::from(t);
            }
        }
    }
}

/// Embedding `Q(ζ_m) -> Q(ζ_n)` for `m | n`, with a left inverse used to pull
/// values back down once they are known to lie in the subfield.
#[derive(Debug)]
struct Descent {
    embed: Sparse,
    left: Sparse,
}

/// Rows holding only their nonzero `(column, entry)` pairs.
type Sparse = Vec<Vec<(usize, Rational)>>;

fn sparse(m: &Matrix<Rational>) -> Sparse {
    m.iter()
        .map(|row| row.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(j, x)| (j, x.clone())).collect())
        .collect()
}

fn sparse_row(row: &[(usize, Rational)], v: &[Rational]) -> Rational {
    row.iter().filter(|(j, _)| !v[*j].is_zero()).map(|(j, x)| x * &v[*j]).sum()
}

impl Descent {
    /// The coordinates in `Q(ζ_m)` of `v`, if `v` lies in that subfield.
    fn pull_back(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let w: Vec<Rational> = self.left.iter().map(|row| sparse_row(row, v)).collect();
        self.embed.iter().zip(v).all(|(row, x)| sparse_row(row, &w) == *x).then_some(w)
    }
}

fn descent(m: u64, n: u64) -> Arc<Descent> {
    let cache = DESCENT.get_or_init(Default::default);
    if let Some(d) = cache.read().expect("descent cache poisoned").get(&(m, n)) {
        return d.clone();
    }
    let small = tables(m);
    let big = tables(n);
    let step = n / m;
    let mut embed = vec![vec![Rational::zero(); small.degree]; big.degree];
    for j in 0..small.degree {
        for (i, &t) in big.power(j as u64 * step).iter().enumerate() {
            embed[i][j] = numtheory::rat_int(t);
        }
    }
    let left = linalg::left_inverse(&embed).expect("cyclotomic embedding is injective");
    let built = Arc::new(Descent { embed: sparse(&embed), left: sparse(&left) });
    cache
        .write()
        .expect("descent cache poisoned")
        .entry((m, n))
        .or_insert(built)
        .clone()
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    conductor: u64,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        Cyclotomic { conductor: 1, coeffs: vec![q] }
    }

    pub fn from_integer(k: i64) -> Self {
        Self::from_rational(numtheory::rat_int(k))
    }

    /// `ζ_n^k`.
    pub fn root(n: u64, k: i64) -> Self {
        Self::from_terms(n, [(k, Rational::one())])
    }

    /// `Σ c · ζ_n^k` over arbitrary (possibly repeated or out of range) exponents.
    pub fn from_terms<I>(n: u64, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        assert!(n >= 1, "conductor must be positive");
        let t = tables(n);
        let mut acc = vec![Rational::zero(); t.degree];
        for (k, c) in terms {
            t.accumulate(&mut acc, numtheory::modulo(k, n), &c);
        }
        Self::canonical(n, acc)
    }

    /// Builds a value from power-basis coordinates at conductor `n`.
    pub fn from_coordinates(n: u64, coeffs: Vec<Rational>) -> Self {
        assert_eq!(coeffs.len() as u64, numtheory::totient(n), "coordinate length must be φ(n)");
        Self::canonical(n, coeffs)
    }

    fn canonical(mut n: u64, mut v: Vec<Rational>) -> Self {
        'descend: loop {
            if v.iter().skip(1).all(Zero::is_zero) {
                return Cyclotomic { conductor: 1, coeffs: vec![v.swap_remove(0)] };
            }
            for q in numtheory::prime_factors(n) {
                let m = n / q;
                if let Some(w) = descent(m, n).pull_back(&v) {
                    n = m;
                    v = w;
                    continue 'descend;
                }
            }
            return Cyclotomic { conductor: n, coeffs: v };
        }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Power-basis coordinates at the canonical conductor.
    pub fn coordinates(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    /// Coordinates of `self` in the power basis of `Q(ζ_n)`; `n` must be a
    /// multiple of the conductor.
    pub fn coordinates_at(&self, n: u64) -> Vec<Rational> {
        assert_eq!(n % self.conductor, 0, "target conductor must be a multiple");
        let t = tables(n);
        let step = n / self.conductor;
        let mut acc = vec![Rational::zero(); t.degree];
        for (j, c) in self.coeffs.iter().enumerate() {
            t.accumulate(&mut acc, j as u64 * step, c);
        }
        acc
    }

    fn combine(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        if self.conductor == other.conductor {
            let v = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect();
            return Self::canonical(self.conductor, v);
        }
        let n = numtheory::lcm(self.conductor, other.conductor);
        let a = self.coordinates_at(n);
        let b = other.coordinates_at(n);
        Self::canonical(n, a.iter().zip(&b).map(|(x, y)| f(x, y)).collect())
    }

    fn multiply(&self, other: &Self) -> Self {
        if self.conductor == 1 {
            return other.scale(&self.coeffs[0]);
        }
        if other.conductor == 1 {
            return self.scale(&other.coeffs[0]);
        }
        let n = numtheory::lcm(self.conductor, other.conductor);
        let a = self.coordinates_at(n);
        let b = other.coordinates_at(n);
        let t = tables(n);
        let mut conv = vec![Rational::zero(); 2 * t.degree - 1];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                conv[i + j] += x * y;
            }
        }
        let mut acc = vec![Rational::zero(); t.degree];
        for (k, c) in conv.iter().enumerate() {
            t.accumulate(&mut acc, k as u64, c);
        }
        Self::canonical(n, acc)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Cyclotomic { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    /// Multiplicative inverse, via the norm-style product of the nontrivial
    /// Galois conjugates: `a^{-1} = (∏_{σ ≠ 1} σ(a)) / N(a)`.
    pub fn inverse(&self) -> Result<Self, CyclotomicError> {
        if self.is_zero() {
            return Err(CyclotomicError::DivisionByZero);
        }
        if self.conductor == 1 {
            return Ok(Self::from_rational(self.coeffs[0].recip()));
        }
        let n = self.conductor;
        let mut others = Self::one();
        for k in 2..n {
            if numtheory::gcd(k, n) == 1 {
                others = &others * &self.apply_unit(k);
            }
        }
        let norm = (&others * self).to_rational()?;
        Ok(others.scale(&norm.recip()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, CyclotomicError> {
        Ok(self * &other.inverse()?)
    }

    fn apply_unit(&self, k: u64) -> Self {
        let n = self.conductor;
        let t = tables(n);
        let mut acc = vec![Rational::zero(); t.degree];
        for (j, c) in self.coeffs.iter().enumerate() {
            t.accumulate(&mut acc, j as u64 * k % n, c);
        }
        Cyclotomic { conductor: n, coeffs: acc }
    }

    /// The automorphism `ζ ↦ ζ^{-1}`.
    pub fn conjugate(&self) -> Self {
        if self.conductor <= 2 {
            return self.clone();
        }
        self.apply_unit(self.conductor - 1)
    }

    /// The automorphism `ζ_N ↦ ζ_N^k`; `k` must be a unit modulo the conductor.
    pub fn galois_apply(&self, k: i64) -> Result<Self, CyclotomicError> {
        let n = self.conductor;
        let k_mod = numtheory::modulo(k, n);
        if n > 1 && numtheory::gcd(k_mod, n) != 1 {
            return Err(CyclotomicError::NotCoprime { k, conductor: n });
        }
        Ok(if n == 1 { self.clone() } else { self.apply_unit(k_mod) })
    }

    /// Average of the orbit of `self` under `ζ ↦ ζ^p`, i.e. under
    /// `Gal(Q_p(ζ_N)/Q_p)` for `p` prime to the conductor.
    pub fn frobenius_average(&self, p: u64) -> Result<Self, CyclotomicError> {
        let n = self.conductor;
        if n == 1 {
            return Ok(self.clone());
        }
        let r = numtheory::multiplicative_order(p, n)
            .ok_or(CyclotomicError::PrimeDividesConductor { p, conductor: n })?;
        let t = tables(n);
        let mut acc = vec![Rational::zero(); t.degree];
        let mut k = 1u64;
        for _ in 0..r {
            for (j, c) in self.coeffs.iter().enumerate() {
                t.accumulate(&mut acc, j as u64 * k % n, c);
            }
            k = k * p % n;
        }
        let inv = numtheory::rat(1, r as i64);
        Ok(Self::canonical(n, acc.into_iter().map(|c| c * &inv).collect()))
    }

    /// Whether `self` is fixed by the decomposition group of `p` in
    /// `Gal(Q(ζ_N)/Q)`: units `k` whose prime-to-`p` part is a power of `p`.
    /// For `p = 0` this means fixed by the whole Galois group (rational).
    pub fn is_qp_stable(&self, p: u64) -> bool {
        let n = self.conductor;
        if n == 1 {
            return true;
        }
        if p == 0 {
            return false;
        }
        let (_, m) = numtheory::split_prime_power(n, p);
        let frob: Vec<u64> = {
            let mut powers = vec![1 % m];
            let mut x = p % m;
            while m > 1 && x != 1 % m {
                powers.push(x);
                x = x * p % m;
            }
            powers
        };
        (1..n)
            .filter(|&k| numtheory::gcd(k, n) == 1 && frob.contains(&(k % m)))
            .all(|k| self.apply_unit(k) == *self)
    }

    pub fn to_rational(&self) -> Result<Rational, CyclotomicError> {
        if self.conductor == 1 {
            Ok(self.coeffs[0].clone())
        } else {
            Err(CyclotomicError::NotRational { conductor: self.conductor })
        }
    }

    /// Sparse term list `(k, c)` with `Σ c ζ_N^k`, nonzero coordinates only.
    pub fn terms(&self) -> Vec<(u64, Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as u64, c.clone()))
            .collect()
    }

    pub fn encode(&self) -> CyclotomicRepr {
        CyclotomicRepr {
            n: self.conductor,
            terms: self.terms().into_iter().map(|(k, c)| (k as i64, c.to_string())).collect(),
        }
    }
}

impl Default for Cyclotomic {
    fn default() -> Self {
        Self::zero()
    }
}

impl linalg::Field for Cyclotomic {
    fn zero() -> Self {
        Cyclotomic::zero()
    }
    fn one() -> Self {
        Cyclotomic::one()
    }
    fn is_zero(&self) -> bool {
        Cyclotomic::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn inv(&self) -> Self {
        self.inverse().expect("inverse of zero")
    }
}

impl From<Rational> for Cyclotomic {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl From<i64> for Cyclotomic {
    fn from(k: i64) -> Self {
        Self::from_integer(k)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl<'a> $trait<&'a Cyclotomic> for &'a Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &'a Cyclotomic) -> Cyclotomic {
                let f: fn(&Cyclotomic, &Cyclotomic) -> Cyclotomic = $body;
                f(self, rhs)
            }
        }
        impl $trait<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.combine(b, |x, y| x + y));
forward_binop!(Sub, sub, |a, b| a.combine(b, |x, y| x - y));
forward_binop!(Mul, mul, |a, b| a.multiply(b));

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        iter.fold(Cyclotomic::zero(), |a, b| &a + &b)
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Human-readable form, e.g. `3/2`, `-1 - ζ3`, `1/2*ζ8 + ζ8^3`.
impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.conductor == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let mut first = true;
        for (k, c) in self.terms() {
            let (neg, mag) = if c < Rational::zero() { (true, -c) } else { (false, c) };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            first = false;
            let unit = match k {
                0 => String::new(),
                1 => format!("ζ{}", self.conductor),
                _ => format!("ζ{}^{}", self.conductor, k),
            };
            match (mag.is_one(), unit.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{unit}")?,
                (false, true) => write!(f, "{mag}")?,
                (false, false) => write!(f, "{mag}*{unit}")?,
            }
        }
        Ok(())
    }
}

/// Wire form `{"n": N, "terms": [[k, "a/b"], ...]}` meaning `Σ (a/b)·ζ_N^k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicRepr {
    pub n: u64,
    pub terms: Vec<(i64, String)>,
}

pub fn parse_rational(s: &str) -> Result<Rational, CyclotomicError> {
    let s = s.trim();
    let bad = || CyclotomicError::Encoding(format!("bad rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

impl TryFrom<CyclotomicRepr> for Cyclotomic {
    type Error = CyclotomicError;

    fn try_from(r: CyclotomicRepr) -> Result<Self, Self::Error> {
        if r.n == 0 {
            return Err(CyclotomicError::Encoding("conductor must be positive".into()));
        }
        // keeps the cyclotomic tables at desk scale
        if r.n > 10_000 {
            return Err(CyclotomicError::Encoding(format!("conductor {} too large", r.n)));
        }
        let terms = r
            .terms
            .iter()
            .map(|(k, c)| Ok((*k, parse_rational(c)?)))
            .collect::<Result<Vec<_>, CyclotomicError>>()?;
        Ok(Cyclotomic::from_terms(r.n, terms))
    }
}

impl Serialize for Cyclotomic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.encode().serialize(s)
    }
}

/// Accepts the term-list form, or a bare rational as a string or integer.
impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Wire {
            Full(CyclotomicRepr),
            Text(String),
            Int(i64),
        }
        match Wire::deserialize(d)? {
            Wire::Full(r) => Cyclotomic::try_from(r).map_err(serde::de::Error::custom),
            Wire::Text(s) => parse_rational(&s).map(Cyclotomic::from_rational).map_err(serde::de::Error::custom),
            Wire::Int(k) => Ok(Cyclotomic::from_integer(k)),
        }
    }
}
