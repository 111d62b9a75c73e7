//! Ramification data of a finite Galois extension of local fields: the lower
//! numbering filtration, the tame character Ψ, Herbrand's functions, and the
//! characters built from them.

mod characters;
mod derived;

pub use characters::{artin_character, bar_n, induced_augmentation, p_average, refined_artin, refined_artin_upper};
pub use derived::{quotient_data, subgroup_data, SubgroupData};

use crate::cyclotomic::CyclotomicError;
use crate::group::{quotient, Group, GroupError, Subgroup};
use crate::numtheory::{gcd, is_power_of, is_prime, modulo, rat_int, Rational};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// `Ψ(generator · Γ_1) = ζ_n^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TameCharacter {
    pub generator: usize,
    pub exponent: i64,
}

/// A single failed invariant, with its location in the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("filtration[{index}]: {source}")]
    NotSubgroup { index: usize, source: GroupError },
    #[error("filtration[{index}] is not normal in the Galois group")]
    NotNormal { index: usize },
    #[error("filtration[{index}] is not contained in filtration[{prev}]", prev = .index - 1)]
    NotDecreasing { index: usize },
    #[error("p = {0} is neither a prime nor 0")]
    BadPrime(u64),
    #[error("wild inertia filtration[1] has order {order}, not a power of p = {p}")]
    WildNotPGroup { order: usize, p: u64 },
    #[error("wild inertia filtration[1] must be trivial when p = 0")]
    WildInCharZero,
    #[error("tame quotient filtration[0]/filtration[1] is not cyclic")]
    TameNotCyclic,
    #[error("tame quotient has order {n}, divisible by p = {p}")]
    TameOrderDivisibleByP { n: usize, p: u64 },
    #[error("tame.generator = {0} does not generate filtration[0]/filtration[1]")]
    TameGenerator(usize),
    #[error("tame.exponent = {exponent} is not a unit mod {n}, so Ψ is not injective")]
    PsiNotInjective { exponent: i64, n: usize },
    #[error("tame quotient has order {0} but no tame character was given")]
    MissingTame(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RamificationError {
    #[error("invalid ramification data: {}", join(.0))]
    Invalid(Vec<Violation>),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cyclotomic(#[from] CyclotomicError),
    #[error("quotient tame character undefined: image of wild inertia is not the quotient's wild inertia")]
    QuotientTame,
    #[error("herbrand argument {0} is below -1")]
    HerbrandDomain(Rational),
}

fn join(vs: &[Violation]) -> String {
    vs.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

#[derive(Clone)]
pub struct RamificationData {
    gamma: Group,
    /// `Γ_0, Γ_1, …, Γ_s`; every entry past index 0 is nontrivial.
    filtration: Vec<Subgroup>,
    p: u64,
    tame: TameCharacter,
    n: usize,
    /// Exponent of `Ψ(x)` as a power of `ζ_n` for `x ∈ Γ_0`.
    psi: Vec<Option<u64>>,
}

/// Validates the inputs and returns the data, or every violated invariant.
pub fn build_ramification(
    gamma: &Group,
    filtration: &[Vec<usize>],
    p: u64,
    tame: Option<TameCharacter>,
) -> Result<RamificationData, RamificationError> {
    let mut violations = Vec::new();
    if p != 0 && !is_prime(p) {
        violations.push(Violation::BadPrime(p));
    }
    let mut groups = Vec::with_capacity(filtration.len());
    for (index, members) in filtration.iter().enumerate() {
        match Subgroup::new(gamma, members) {
            Ok(h) => {
                if !h.is_normal() {
                    violations.push(Violation::NotNormal { index });
                }
                groups.push(Some(h));
            }
            Err(source) => {
                violations.push(Violation::NotSubgroup { index, source });
                groups.push(None);
            }
        }
    }
    for index in 1..groups.len() {
        if let (Some(prev), Some(cur)) = (&groups[index - 1], &groups[index]) {
            if !cur.is_subgroup_of(prev) {
                violations.push(Violation::NotDecreasing { index });
            }
        }
    }
    if !violations.is_empty() {
        return Err(RamificationError::Invalid(violations));
    }
    let mut groups: Vec<Subgroup> = groups.into_iter().flatten().collect();
    if groups.is_empty() {
        groups.push(Subgroup::trivial(gamma));
    }
    while groups.len() > 1 && groups.last().is_some_and(Subgroup::is_trivial) {
        groups.pop();
    }
    let g0 = groups[0].clone();
    let g1 = groups.get(1).cloned().unwrap_or_else(|| Subgroup::trivial(gamma));
    let n = g0.order() / g1.order();

    if p == 0 && !g1.is_trivial() {
        violations.push(Violation::WildInCharZero);
    }
    if p > 1 && !is_power_of(g1.order() as u64, p) {
        violations.push(Violation::WildNotPGroup { order: g1.order(), p });
    }
    if p > 1 && (n as u64).is_multiple_of(p) {
        violations.push(Violation::TameOrderDivisibleByP { n, p });
    }
    let (_, inc) = g0.as_group();
    let (tame_q, _) = quotient(&g1.preimage(&inc))?;
    if !tame_q.is_cyclic() {
        violations.push(Violation::TameNotCyclic);
    }

    let tame = match tame {
        Some(t) => t,
        None if n == 1 => TameCharacter { generator: 0, exponent: 0 },
        None => {
            violations.push(Violation::MissingTame(n));
            return Err(RamificationError::Invalid(violations));
        }
    };
    let mut psi = vec![None; gamma.order()];
    if tame.generator >= gamma.order() || !g0.contains(tame.generator) {
        violations.push(Violation::TameGenerator(tame.generator));
    } else {
        // walk the cosets g^j Γ_1; the generator is good iff they exhaust Γ_0
        let mut x = 0usize;
        for j in 0..n {
            if j > 0 && g1.contains(x) {
                break;
            }
            let k = modulo(tame.exponent * j as i64, n as u64);
            for &h in g1.members() {
                psi[gamma.mul(x, h)] = Some(k);
            }
            x = gamma.mul(x, tame.generator);
        }
        if g0.members().iter().any(|&y| psi[y].is_none()) {
            violations.push(Violation::TameGenerator(tame.generator));
        }
    }
    if gcd(modulo(tame.exponent, n as u64), n as u64) != 1 {
        violations.push(Violation::PsiNotInjective { exponent: tame.exponent, n });
    }
    if !violations.is_empty() {
        return Err(RamificationError::Invalid(violations));
    }
    Ok(RamificationData { gamma: gamma.clone(), filtration: groups, p, tame, n, psi })
}

impl RamificationData {
    pub fn gamma(&self) -> &Group {
        &self.gamma
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn tame(&self) -> TameCharacter {
        self.tame
    }

    /// Order of the tame quotient `Γ_0/Γ_1`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Ramification index `|Γ_0|`.
    pub fn e(&self) -> usize {
        self.filtration[0].order()
    }

    /// Inertial degree `[Γ : Γ_0]`.
    pub fn f(&self) -> usize {
        self.gamma.order() / self.e()
    }

    /// `Γ_0, …, Γ_s` with `Γ_{s+1}` trivial.
    pub fn filtration(&self) -> &[Subgroup] {
        &self.filtration
    }

    /// `Γ_i` for any integer `i`, with `Γ_{-1} = Γ`.
    pub fn lower(&self, i: i64) -> Subgroup {
        if i < 0 {
            Subgroup::whole(&self.gamma)
        } else {
            self.filtration
                .get(i as usize)
                .cloned()
                .unwrap_or_else(|| Subgroup::trivial(&self.gamma))
        }
    }

    pub fn psi_exponent(&self, x: usize) -> Option<u64> {
        self.psi[x]
    }

    /// Slope of φ on `(i − 1, i]`, i.e. `|Γ_i| / |Γ_0|`.
    fn slope(&self, i: usize) -> Rational {
        Rational::new(self.lower(i as i64).order().into(), self.e().into())
    }

    /// Herbrand's φ: `∫_0^u dt / [Γ_0 : Γ_t]` with `Γ_t = Γ_⌈t⌉`.
    pub fn herbrand_phi(&self, u: &Rational) -> Result<Rational, RamificationError> {
        if *u < -Rational::one() {
            return Err(RamificationError::HerbrandDomain(u.clone()));
        }
        if *u <= Rational::zero() {
            return Ok(u.clone());
        }
        let m = self.filtration.len();
        let mut acc = Rational::zero();
        for i in 1..m {
            let lo = rat_int(i as i64 - 1);
            let hi = rat_int(i as i64);
            if *u <= hi {
                return Ok(acc + self.slope(i) * (u - lo));
            }
            acc += self.slope(i);
        }
        Ok(acc + (u - rat_int(m as i64 - 1)) / rat_int(self.e() as i64))
    }

    /// Herbrand's ψ, the inverse of φ.
    pub fn herbrand_psi(&self, v: &Rational) -> Result<Rational, RamificationError> {
        if *v < -Rational::one() {
            return Err(RamificationError::HerbrandDomain(v.clone()));
        }
        if *v <= Rational::zero() {
            return Ok(v.clone());
        }
        let m = self.filtration.len();
        let mut acc = Rational::zero();
        for i in 1..m {
            let s = self.slope(i);
            if *v <= &acc + &s {
                return Ok(rat_int(i as i64 - 1) + (v - acc) / s);
            }
            acc += s;
        }
        Ok(rat_int(m as i64 - 1) + (v - acc) * rat_int(self.e() as i64))
    }

    /// `Γ^v = Γ_⌈ψ(v)⌉`.
    pub fn upper(&self, v: &Rational) -> Result<Subgroup, RamificationError> {
        let u = self.herbrand_psi(v)?;
        Ok(self.lower(u.ceil().to_integer().try_into().unwrap_or(i64::MAX)))
    }

    /// Upper numbering jumps `φ(i)` for each `i ≥ 0` with `Γ_i ≠ Γ_{i+1}`.
    pub fn upper_jumps(&self) -> Vec<Rational> {
        (0..self.filtration.len())
            .filter(|&i| self.lower(i as i64).order() != self.lower(i as i64 + 1).order())
            .map(|i| self.herbrand_phi(&rat_int(i as i64)).expect("nonnegative"))
            .collect()
    }

    /// `ν_L(D_{L/K}) = Σ_{i≥0} (|Γ_i| − 1)`.
    pub fn different_valuation(&self) -> u64 {
        self.filtration.iter().map(|h| h.order() as u64 - 1).sum()
    }

    /// `ν_K(𝔡_{M/K})` for `M = L^{Γ'}`, by the tower rule.
    pub fn discriminant_valuation(&self, sub: &Subgroup) -> Result<Rational, RamificationError> {
        let inside: u64 = self.filtration.iter().map(|h| h.intersection(sub).order() as u64 - 1).sum();
        let e_lm = self.filtration[0].intersection(sub).order();
        let f_mk = self.gamma.order() / self.filtration[0].join(sub).order();
        let diff = rat_int((self.different_valuation() - inside) as i64);
        Ok(diff * Rational::new(f_mk.into(), e_lm.into()))
    }
}

impl fmt::Debug for RamificationData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RamificationData")
            .field("order", &self.gamma.order())
            .field("filtration", &self.filtration)
            .field("p", &self.p)
            .field("tame", &self.tame)
            .finish()
    }
}
