//! Base-change conductors `c = (bAr | χ)`, Artin conductors, the
//! `Q_p`-irreducible characters of cyclic groups, and the identity report.

pub mod report;

pub use report::{verify_suite, ConductorReport, IdentityRecord, SuiteOptions};

use crate::cyclotomic::{Cyclotomic, CyclotomicError};
use crate::group::{same_group, ClassFunction, FiniteGroup, GroupError, GroupHom, Subgroup};
use crate::numtheory::{gcd, pow_mod, rat, split_prime_power, Rational};
use crate::ramification::{artin_character, p_average, refined_artin, subgroup_data, RamificationData, RamificationError};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConductorError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Ramification(#[from] RamificationError),
    #[error(transparent)]
    Cyclotomic(#[from] CyclotomicError),
    #[error("pairing value {0} is not rational")]
    Irrational(String),
    #[error("character values are not stable under the decomposition group at p = {0}")]
    NotQpStable(u64),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ConductorOptions {
    /// Pair with the `Gal(Q_p(μ_n)/Q_p)`-average of bAr instead of bAr.
    pub p_average: bool,
    /// Refuse characters that fail the σ_p-stability gate.
    pub strict_rational: bool,
}

/// A conductor together with the outcome of the stability gate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conductor {
    pub value: Rational,
    pub qp_stable: bool,
}

/// Values fixed by the decomposition group at `p` (rational when `p = 0`).
pub fn is_qp_stable(chi: &ClassFunction, p: u64) -> bool {
    chi.values().iter().all(|v| v.is_qp_stable(p))
}

fn rational_pairing(a: &ClassFunction, b: &ClassFunction) -> Result<Rational, ConductorError> {
    let v = a.pair(b)?;
    v.to_rational().map_err(|_| ConductorError::Irrational(v.to_string()))
}

/// `(bAr_{L/K} | χ)` with the rationality gate controlled by `opts`.
pub fn conductor_with(r: &RamificationData, chi: &ClassFunction, opts: ConductorOptions) -> Result<Conductor, ConductorError> {
    if !same_group(chi.group(), r.gamma()) {
        return Err(GroupError::GroupMismatch.into());
    }
    let qp_stable = is_qp_stable(chi, r.p());
    if opts.strict_rational && !qp_stable {
        return Err(ConductorError::NotQpStable(r.p()));
    }
    let mut bar = refined_artin(r);
    if opts.p_average {
        bar = p_average(&bar, r.p())?;
    }
    Ok(Conductor { value: rational_pairing(&bar, chi)?, qp_stable })
}

/// `(bAr_{L/K} | χ)`; errors if `χ` fails the σ_p-stability gate.
pub fn conductor(r: &RamificationData, chi: &ClassFunction) -> Result<Rational, ConductorError> {
    let opts = ConductorOptions { strict_rational: true, ..Default::default() };
    Ok(conductor_with(r, chi, opts)?.value)
}

/// `(Ar_{L/K} | χ)`.
pub fn artin_conductor(r: &RamificationData, chi: &ClassFunction) -> Result<Rational, ConductorError> {
    if !same_group(chi.group(), r.gamma()) {
        return Err(GroupError::GroupMismatch.into());
    }
    rational_pairing(&artin_character(r), chi)
}

/// Characters of the simple `Q_p[C_n]`-modules, on `cyclic(n)`, sorted by the
/// smallest linear character they contain.
///
/// Built as tensor products: on the prime-to-p part `C_m`, sums over the
/// orbits of `x ↦ px`; on the p-part `C_{p^k}`, the characters of
/// `Q_p[X]/(Φ_{p^i})`, i.e. sums over the elements of exact order `p^i`.
/// For `p = 0` the orbits are those of the full unit group.
pub fn qp_irreducibles_cyclic(n: usize, p: u64) -> Vec<ClassFunction> {
    let cn = FiniteGroup::cyclic(n).expect("positive order");
    let (k, m) = split_prime_power(n as u64, p);
    let pk = n as u64 / m;
    let units: Vec<u64> = if p == 0 {
        (1..=m).filter(|&a| gcd(a, m) == 1).collect()
    } else {
        let mut powers = vec![1 % m];
        let mut x = p % m;
        while m > 1 && x != 1 % m {
            powers.push(x);
            x = x * p % m;
        }
        powers
    };
    let mut tame_orbits: Vec<BTreeSet<u64>> = Vec::new();
    for a in 0..m {
        if tame_orbits.iter().any(|o| o.contains(&a)) {
            continue;
        }
        tame_orbits.push(units.iter().map(|&u| a * u % m).collect());
    }
    let blocks: Vec<Vec<u64>> = (0..=k)
        .map(|i| {
            let order = p.pow(i);
            (0..pk).filter(|&b| pk / gcd(b, pk) == order).collect()
        })
        .collect();

    let mut out: Vec<(u64, ClassFunction)> = Vec::new();
    for orbit in &tame_orbits {
        for block in &blocks {
            let tame_part = |j: u64| -> Cyclotomic {
                Cyclotomic::from_terms(m, orbit.iter().map(|&a| ((a * j % m) as i64, rat(1, 1))))
            };
            let wild_part = |j: u64| -> Cyclotomic {
                Cyclotomic::from_terms(pk, block.iter().map(|&b| ((b * j % pk) as i64, rat(1, 1))))
            };
            let chi = ClassFunction::from_fn(&cn, |j| {
                let j = j as u64;
                &tame_part(j % m) * &wild_part(j % pk)
            });
            // smallest r ∈ Z/n with r ≡ a (mod m), r ≡ b (mod p^k)
            let label = (0..n as u64)
                .find(|&r| orbit.contains(&(r % m)) && block.contains(&(r % pk)))
                .expect("CRT");
            out.push((label, chi));
        }
    }
    out.sort_by_key(|(label, _)| *label);
    out.into_iter().map(|(_, chi)| chi).collect()
}

/// Orbit sums of the linear characters `χ_r` of `cyclic(n)` under the
/// decomposition group, computed directly on `Z/n`. An independent route to
/// [`qp_irreducibles_cyclic`].
pub fn qp_orbit_characters(n: usize, p: u64) -> Vec<ClassFunction> {
    let cn = FiniteGroup::cyclic(n).expect("positive order");
    let n64 = n as u64;
    let (_, m) = split_prime_power(n64, p);
    let decomposition: Vec<u64> = (1..=n64)
        .filter(|&a| gcd(a, n64) == 1)
        .filter(|&a| p == 0 || (0..m).any(|t| pow_mod(p, t, m) == a % m))
        .collect();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for r in 0..n64 {
        if seen[r as usize] {
            continue;
        }
        let orbit: BTreeSet<u64> = decomposition.iter().map(|&a| r * a % n64).collect();
        for &s in &orbit {
            seen[s as usize] = true;
        }
        out.push(ClassFunction::from_fn(&cn, |j| {
            Cyclotomic::from_terms(n64, orbit.iter().map(|&s| ((s * j as u64 % n64) as i64, rat(1, 1))))
        }));
    }
    out
}

/// Transports characters of `cyclic(m)` to a cyclic group `h` of order `m`
/// along `j ↦ g^j` for the smallest generator `g`.
pub fn transport_from_cyclic(h: &crate::group::Group, chars: &[ClassFunction]) -> Result<Vec<ClassFunction>, ConductorError> {
    let m = h.order();
    let g = (0..m).find(|&x| h.element_order(x) == m).ok_or(GroupError::WrongKind("cyclic"))?;
    let mut map = vec![0usize; m];
    let mut x = 0;
    for j in 0..m {
        map[x] = j;
        x = h.mul(x, g);
    }
    let iso = GroupHom::new(h.clone(), FiniteGroup::cyclic(m)?, map)?;
    chars.iter().map(|c| Ok(c.pullback(&iso)?)).collect()
}

/// Both sides of `c(Res_{M/K} T) = f_{M/K}·c(T) + ½ν_K(𝔡_{M/K})·dim T`, for
/// `χ` a character of `Γ' = Gal(L/M)`.
pub fn weil_restriction_check(
    r: &RamificationData,
    sub: &Subgroup,
    chi: &ClassFunction,
) -> Result<(Rational, Rational), ConductorError> {
    let s = subgroup_data(r, sub)?;
    let induced = chi.pushforward(&s.inclusion)?;
    let lhs = conductor(r, &induced)?;
    let degree = chi.degree().to_rational().map_err(|_| ConductorError::Irrational(chi.degree().to_string()))?;
    let rhs = Rational::from_integer(s.f_mk.into()) * conductor(&s.data, chi)?
        + r.discriminant_valuation(sub)? * degree * rat(1, 2);
    Ok((lhs, rhs))
}
