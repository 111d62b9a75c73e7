//! Definition-level `c_lin` by lattice determinants, independent of the
//! character-theoretic side: a tame cyclic model over `Q(ζ_n)((t))` and a
//! monogenic wild model `Z[x]/(f)`.

pub mod lattice;
pub mod monogenic;
pub mod poly;
pub mod tame;

pub use monogenic::{
    filtration_from_monogenic, lower_indices, oracle_monogenic_clin, oracle_monogenic_clin_zlinear,
    tame_character_from_monogenic, valuation_monogenic, IntMatrix, MonogenicOrder,
};
pub use tame::{oracle_tame_clin, tame_clin_matrix};

use crate::cyclotomic::cyclotomic_polynomial;
use crate::group::GroupError;
use crate::numtheory::gcd;
use crate::ramification::RamificationError;
use num_bigint::BigInt;
use num_traits::{One, Zero};

#[derive(Debug, thiserror::Error)]
pub enum OracleError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{f} is not monic Eisenstein at {p}")]
    NotEisenstein { f: String, p: u64 },
    #[error("bad Galois action: {0}")]
    BadGalois(String),
    #[error("Galois action is not closed under composition")]
    NotClosed,
    #[error("bad module: {0}")]
    ModuleShape(String),
    #[error("module matrices are not a representation (fails at {s}·{t})")]
    NotRepresentation { s: usize, t: usize },
    #[error("invariant lattice has rank {got}, expected {expected}")]
    InvariantRank { expected: usize, got: usize },
    #[error("φ has zero determinant")]
    ZeroDeterminant,
    #[error("tame quotient is trivial")]
    TrivialTame,
    #[error("p = {p} divides the tame degree {n}")]
    PrimeDividesTame { n: usize, p: u64 },
    #[error("Γ_0/Γ_1 is not cyclic")]
    TameNotCyclic,
    #[error("prime choice {choice} out of range ({available} primes)")]
    PrimeChoice { choice: usize, available: usize },
    #[error("{what} {size} exceeds the supported maximum {max}")]
    TooLarge { what: &'static str, size: usize, max: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Ramification(#[from] RamificationError),
}

/// `Z[ζ_{p^k}]` as `Z[x]/(Φ_{p^k}(x + 1))`, `x = ζ − 1`, with `σ_a(x) = (x+1)^a − 1`
/// for `a ∈ (Z/p^k)^×` in increasing order.
pub fn cyclotomic_order(p: u64, k: u32) -> Result<MonogenicOrder, OracleError> {
    let q = p.pow(k);
    let phi: Vec<BigInt> = cyclotomic_polynomial(q).into_iter().map(BigInt::from).collect();
    let shift = [BigInt::one(), BigInt::one()];
    let f = poly::compose_mod(&phi, &shift, &leading_power(phi.len()));
    let galois = (1..q.max(2))
        .filter(|&a| gcd(a, q) == 1)
        .map(|a| {
            let mut g = poly::pow_mod(&shift, a as usize, &f);
            g = poly::sub(&g, &[BigInt::one()]);
            g
        })
        .collect();
    MonogenicOrder::new(p, f, galois)
}

// x^len: reduction modulo it is the identity on polynomials of degree < len
fn leading_power(len: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); len + 1];
    v[len] = BigInt::one();
    v
}
