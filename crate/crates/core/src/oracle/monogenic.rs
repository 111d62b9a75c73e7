//! Wildly ramified model `O_L = Z[x]/(f)` with `f` Eisenstein at `p`.
//!
//! Everything is computed in the dense global order: a nonzero element's
//! `ν_L` is `ν_p(Res(f, y))` because `p` is totally ramified, so no
//! truncated p-adic arithmetic is needed.

use super::lattice::integer_kernel;
use super::poly::{self, ZPoly};
use super::OracleError;
use crate::group::{FiniteGroup, Group};
use crate::linalg;
use crate::numtheory::{is_prime, multiplicative_order, valuation_rat, Rational};
use crate::ramification::{build_ramification, RamificationData, TameCharacter};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

/// Largest degree of `f` accepted.
pub const MAX_DEGREE: usize = 64;
/// Largest `rank M · deg f` accepted by the determinant oracles.
pub const MAX_LATTICE_RANK: usize = 256;

#[derive(Debug, Clone)]
pub struct MonogenicOrder {
    p: u64,
    f: ZPoly,
    galois: Vec<ZPoly>,
    group: Group,
}

impl MonogenicOrder {
    /// `galois[s]` is `g_σ` with `σ(x) = g_σ(x)`; the identity `x` must come first.
    pub fn new(p: u64, f: ZPoly, galois: Vec<ZPoly>) -> Result<Self, OracleError> {
        if !is_prime(p) {
            return Err(OracleError::NotPrime(p));
        }
        let f = poly::trim(f);
        if f.len() > MAX_DEGREE + 1 {
            return Err(OracleError::TooLarge { what: "degree", size: f.len() - 1, max: MAX_DEGREE });
        }
        if !poly::is_eisenstein(&f, p) {
            return Err(OracleError::NotEisenstein { f: poly::show(&f), p });
        }
        if galois.is_empty() {
            return Err(OracleError::BadGalois("empty action".into()));
        }
        // distinct roots of an irreducible f
        if galois.len() > f.len() - 1 {
            return Err(OracleError::BadGalois(format!("{} entries for a polynomial of degree {}", galois.len(), f.len() - 1)));
        }
        let galois: Vec<ZPoly> = galois.into_iter().map(|g| poly::rem_monic(&g, &f)).collect();
        let x = poly::rem_monic(&[BigInt::zero(), BigInt::one()], &f);
        if galois[0] != x {
            return Err(OracleError::BadGalois("first entry must be the identity x".into()));
        }
        for (s, g) in galois.iter().enumerate() {
            if !poly::compose_mod(&f, g, &f).is_empty() {
                return Err(OracleError::BadGalois(format!("entry {s} is not a root of f")));
            }
            if galois[..s].contains(g) {
                return Err(OracleError::BadGalois(format!("entry {s} is repeated")));
            }
        }
        let n = galois.len();
        let mut table = vec![vec![0; n]; n];
        for s in 0..n {
            for t in 0..n {
                // (σ_s σ_t)(x) = σ_s(g_t(x)) = g_t(g_s(x))
                let h = poly::compose_mod(&galois[t], &galois[s], &f);
                table[s][t] = galois.iter().position(|g| *g == h).ok_or(OracleError::NotClosed)?;
            }
        }
        let group = FiniteGroup::from_table(table)?;
        Ok(MonogenicOrder { p, f, galois, group })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn f(&self) -> &[BigInt] {
        &self.f
    }

    /// Ramification index `e = deg f`.
    pub fn degree(&self) -> usize {
        self.f.len() - 1
    }

    pub fn galois(&self) -> &[ZPoly] {
        &self.galois
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    /// Left regular permutation representation, `e_t ↦ e_{st}`.
    pub fn regular_module(&self) -> Vec<IntMatrix> {
        let n = self.group.order();
        (0..n)
            .map(|s| {
                let mut m = vec![vec![BigInt::zero(); n]; n];
                for t in 0..n {
                    m[self.group.mul(s, t)][t] = BigInt::one();
                }
                m
            })
            .collect()
    }

    pub fn trivial_module(&self) -> Vec<IntMatrix> {
        vec![vec![vec![BigInt::one()]]; self.group.order()]
    }

    fn check_module(&self, action: &[IntMatrix]) -> Result<usize, OracleError> {
        let n = self.group.order();
        if action.len() != n {
            return Err(OracleError::ModuleShape(format!("{} matrices for a group of order {n}", action.len())));
        }
        let d = action[0].len();
        if d * self.degree() > MAX_LATTICE_RANK {
            return Err(OracleError::TooLarge { what: "lattice rank", size: d * self.degree(), max: MAX_LATTICE_RANK });
        }
        if action.iter().any(|m| m.len() != d || m.iter().any(|r| r.len() != d)) {
            return Err(OracleError::ModuleShape("matrices must all be square of one size".into()));
        }
        let mat_mul = |a: &IntMatrix, b: &IntMatrix| -> IntMatrix {
            (0..d).map(|i| (0..d).map(|j| (0..d).map(|k| &a[i][k] * &b[k][j]).sum()).collect()).collect()
        };
        for s in 0..n {
            for t in 0..n {
                if mat_mul(&action[s], &action[t]) != action[self.group.mul(s, t)] {
                    return Err(OracleError::NotRepresentation { s, t });
                }
            }
        }
        Ok(d)
    }

    /// Matrix of `σ_s` on `O_L` in the basis `1, x, …, x^{e−1}`.
    fn galois_matrix(&self, s: usize) -> IntMatrix {
        let e = self.degree();
        let mut m = vec![vec![BigInt::zero(); e]; e];
        for k in 0..e {
            for (l, c) in poly::pow_mod(&self.galois[s], k, &self.f).into_iter().enumerate() {
                m[l][k] = c;
            }
        }
        m
    }

    /// Z-basis of `(M ⊗ O_L)^Γ` in coordinates `m_j ⊗ x^k ↦ j·e + k`.
    fn invariants(&self, action: &[IntMatrix]) -> Result<Vec<Vec<BigInt>>, OracleError> {
        let d = self.check_module(action)?;
        let e = self.degree();
        let size = d * e;
        let mut stacked = Vec::with_capacity(size * self.group.order());
        for (s, a) in action.iter().enumerate() {
            let g = self.galois_matrix(s);
            for i in 0..d {
                for l in 0..e {
                    let row: Vec<BigInt> = (0..size)
                        .map(|col| {
                            let (j, k) = (col / e, col % e);
                            let mut v = &a[i][j] * &g[l][k];
                            if i * e + l == col {
                                v -= 1;
                            }
                            v
                        })
                        .collect();
                    stacked.push(row);
                }
            }
        }
        let kernel = integer_kernel(&stacked, size);
        if kernel.len() != d {
            return Err(OracleError::InvariantRank { expected: d, got: kernel.len() });
        }
        Ok(kernel)
    }

    /// `φ_{M,L}` as a `d×d` matrix over `O_L`.
    fn phi(&self, action: &[IntMatrix]) -> Result<Vec<Vec<ZPoly>>, OracleError> {
        let inv = self.invariants(action)?;
        let e = self.degree();
        let d = inv.len();
        Ok((0..d).map(|j| inv.iter().map(|w| poly::trim(w[j * e..(j + 1) * e].to_vec())).collect()).collect())
    }
}

/// `ν_L(y)`, or `None` for `y = 0`.
pub fn valuation_monogenic(o: &MonogenicOrder, y: &[BigInt]) -> Option<u64> {
    let y = poly::rem_monic(y, &o.f);
    if y.is_empty() {
        return None;
    }
    let res = poly::resultant(&poly::to_q(&o.f), &poly::to_q(&y));
    Some(valuation_rat(&res, o.p) as u64)
}

/// `c_lin(M) = ν_K(det_{O_L} φ_{M,L})` with the determinant taken in `Q[x]/(f)`.
pub fn oracle_monogenic_clin(o: &MonogenicOrder, action: &[IntMatrix]) -> Result<Rational, OracleError> {
    let phi = o.phi(action)?;
    let f = poly::to_q(&o.f);
    let det = determinant_mod(phi.iter().map(|r| r.iter().map(|c| poly::to_q(c)).collect()).collect(), &f);
    let det = poly::to_z(&det).expect("φ has entries in Z[x]/(f)");
    let v = valuation_monogenic(o, &det).ok_or(OracleError::ZeroDeterminant)?;
    Ok(Rational::new(v.into(), (o.degree() as u64).into()))
}

/// The same quantity through `det_Z(φ) = N_{L/K}(det_{O_L} φ)` on the
/// restriction of scalars, an independent route used as a cross-check.
pub fn oracle_monogenic_clin_zlinear(o: &MonogenicOrder, action: &[IntMatrix]) -> Result<Rational, OracleError> {
    let phi = o.phi(action)?;
    let f = poly::to_q(&o.f);
    let e = o.degree();
    let d = phi.len();
    let mut big = vec![vec![Rational::zero(); d * e]; d * e];
    for j in 0..d {
        for k in 0..e {
            let mut xk = vec![Rational::zero(); k + 1];
            xk[k] = Rational::one();
            for i in 0..d {
                let col = poly::rem_monic(&poly::mul(&poly::to_q(&phi[i][j]), &xk), &f);
                for (l, c) in col.into_iter().enumerate() {
                    big[i * e + l][j * e + k] = c;
                }
            }
        }
    }
    let det = linalg::determinant(&big);
    if det.is_zero() {
        return Err(OracleError::ZeroDeterminant);
    }
    Ok(Rational::new(valuation_rat(&det, o.p).into(), (e as i64).into()))
}

/// Gaussian elimination in the field `Q[x]/(f)`.
fn determinant_mod(mut m: Vec<Vec<poly::QPoly>>, f: &[Rational]) -> poly::QPoly {
    let d = m.len();
    let mut det = vec![Rational::one()];
    for k in 0..d {
        let Some(p) = (k..d).find(|&r| !m[r][k].is_empty()) else {
            return Vec::new();
        };
        if p != k {
            m.swap(p, k);
            det = det.iter().map(|c| -c).collect();
        }
        let inv = poly::inverse_mod_q(&m[k][k], f).expect("f irreducible");
        for i in k + 1..d {
            let factor = poly::rem_monic(&poly::mul(&m[i][k], &inv), f);
            for j in k..d {
                let t = poly::rem_monic(&poly::mul(&factor, &m[k][j]), f);
                m[i][j] = poly::sub(&m[i][j], &t);
            }
        }
        det = poly::rem_monic(&poly::mul(&det, &m[k][k]), f);
    }
    det
}

/// `i_Γ(σ) = ν_L(σ(x) − x)`, `None` for the identity.
pub fn lower_indices(o: &MonogenicOrder) -> Vec<Option<u64>> {
    let x = [BigInt::zero(), BigInt::one()];
    o.galois.iter().map(|g| valuation_monogenic(o, &poly::sub(g, &x))).collect()
}

fn lower_lists(o: &MonogenicOrder) -> Vec<Vec<usize>> {
    let idx = lower_indices(o);
    let top = idx.iter().flatten().copied().max().unwrap_or(0);
    (0..top.max(1))
        .map(|i| (0..idx.len()).filter(|&s| idx[s].is_none_or(|v| v > i)).collect())
        .collect()
}

pub fn filtration_from_monogenic(o: &MonogenicOrder) -> Result<RamificationData, OracleError> {
    let lists = lower_lists(o);
    let n = lists[0].len() / lists.get(1).map_or(1, Vec::len);
    let tame = if n > 1 { Some(tame_character_from_monogenic(o, 0)?) } else { None };
    Ok(build_ramification(&o.group, &lists, o.p, tame)?)
}

/// `Ψ` on a generator of `Γ_0/Γ_1`, from `σ(π)/π mod m_L`.
///
/// `Ψ(σ)` is the residue of `σ(π_t)/π_t` for a uniformizer `π_t` of the
/// maximal tame subextension; `π_t = x^{|Γ_1|}·unit`, so it is the
/// `|Γ_1|`-th power of the residue of `σ(x)/x`, i.e. of the linear
/// coefficient of `g_σ`. The identification `μ_n(F_p) ≅ μ_n ⊂ Q(ζ_n)` is
/// reduction modulo the prime `(p, ζ_n − a)`, where `a` is the
/// `prime_choice`-th primitive `n`-th root of unity mod `p` in increasing order.
pub fn tame_character_from_monogenic(o: &MonogenicOrder, prime_choice: usize) -> Result<TameCharacter, OracleError> {
    let lists = lower_lists(o);
    let wild = lists.get(1).cloned().unwrap_or_else(|| vec![0]);
    let n = lists[0].len() / wild.len();
    if n == 1 {
        return Err(OracleError::TrivialTame);
    }
    let p = o.p;
    if (n as u64).is_multiple_of(p) {
        return Err(OracleError::PrimeDividesTame { n, p });
    }
    let g = &o.group;
    let coset_order = |s: usize| {
        let (mut y, mut k) = (s, 1);
        while !wild.contains(&y) {
            y = g.mul(y, s);
            k += 1;
        }
        k
    };
    let generator = lists[0].iter().copied().find(|&s| coset_order(s) == n).ok_or(OracleError::TameNotCyclic)?;
    let big_p = BigInt::from(p);
    let c1 = o.galois[generator].get(1).cloned().unwrap_or_default();
    let residue = ((c1 % &big_p) + &big_p) % &big_p;
    let residue = residue.to_u64().expect("reduced mod p");
    let psi = crate::numtheory::pow_mod(residue, wild.len() as u64, p);

    let roots: Vec<u64> = (1..p).filter(|&a| multiplicative_order(a, p) == Some(n as u64)).collect();
    let a = *roots.get(prime_choice).ok_or(OracleError::PrimeChoice { choice: prime_choice, available: roots.len() })?;
    let exponent = (0..n as u64)
        .find(|&k| crate::numtheory::pow_mod(a, k, p) == psi)
        .ok_or(OracleError::TameNotCyclic)?;
    Ok(TameCharacter { generator, exponent: exponent as i64 })
}
