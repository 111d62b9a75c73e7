//! Equal-characteristic tame model: `O_K = k[[t]]` with `k = Q(ζ_n)`,
//! `O_L = O_K[π]/(π^n − t)`, and `σ(π) = ζ_n·π`.

use crate::cyclotomic::Cyclotomic;
use crate::linalg::{self, Field, Matrix};
use crate::numtheory::{modulo, Rational};

type Poly = Vec<Cyclotomic>;

/// `c_lin` of the cocharacter module on which `σ` acts by `diag(ζ^{i_j})`.
pub fn oracle_tame_clin(n: u64, exponents: &[i64]) -> Rational {
    assert!(n >= 1, "tame degree must be positive");
    let d = exponents.len();
    let mut a = vec![vec![Cyclotomic::zero(); d]; d];
    for (j, &i) in exponents.iter().enumerate() {
        a[j][j] = Cyclotomic::root(n, modulo(i, n) as i64);
    }
    tame_clin_matrix(n, &a)
}

/// `c_lin` for an arbitrary `k`-linear action `A` of `σ` on `M = O_K^d`
/// with `A^n = 1`.
pub fn tame_clin_matrix(n: u64, a: &Matrix<Cyclotomic>) -> Rational {
    let d = a.len();
    if d == 0 {
        return Rational::from_integer(0.into());
    }
    let nn = n as usize;
    // O_K-basis of M ⊗ O_L: m_j ⊗ π^k at index j·n + k.
    // σ(m_j ⊗ π^k) = Σ_i A_ij ζ^k m_i ⊗ π^k
    let size = d * nn;
    let mut b = vec![vec![Cyclotomic::zero(); size]; size];
    for j in 0..d {
        for k in 0..nn {
            let twist = Cyclotomic::root(n, k as i64);
            for i in 0..d {
                let v = &a[i][j] * &twist;
                b[i * nn + k][j * nn + k] = v;
            }
        }
    }
    for (i, row) in b.iter_mut().enumerate() {
        row[i] = row[i].sub(&Cyclotomic::one());
    }
    // B has constant entries, so the O_K-saturation of its kernel is the
    // k-kernel tensored up: no t-adic work is needed.
    let kernel = linalg::kernel(&b, size);
    assert_eq!(kernel.len(), d, "invariant lattice must have full rank");

    // φ(w ⊗ 1) in O_L-coordinates: the j-th entry is Σ_k w_{j,k} π^k
    let phi: Vec<Vec<Poly>> = (0..d)
        .map(|j| kernel.iter().map(|w| trim(w[j * nn..(j + 1) * nn].to_vec())).collect())
        .collect();
    let det = bareiss(phi);
    let v_l = det.iter().position(|c| !c.is_zero()).expect("φ is injective");
    Rational::new((v_l as i64).into(), (n as i64).into())
}

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Cyclotomic::is_zero) {
        p.pop();
    }
    p
}

fn mul(a: &[Cyclotomic], b: &[Cyclotomic]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Cyclotomic::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    trim(out)
}

fn sub(a: &[Cyclotomic], b: &[Cyclotomic]) -> Poly {
    let n = a.len().max(b.len());
    let z = Cyclotomic::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

/// Exact quotient `a / b` in `k[π]`.
fn div_exact(a: &[Cyclotomic], b: &[Cyclotomic]) -> Poly {
    let db = b.len() - 1;
    let lead = b[db].inv();
    let mut r = a.to_vec();
    let mut q = vec![Cyclotomic::zero(); r.len().saturating_sub(db)];
    while r.len() > db {
        let top = r.len() - 1;
        let c = &r[top] * &lead;
        for k in 0..=db {
            r[top - db + k] = &r[top - db + k] - &(&c * &b[k]);
        }
        q[top - db] = c;
        r = trim(r);
    }
    debug_assert!(r.is_empty(), "inexact division");
    trim(q)
}

/// Fraction-free determinant over `k[π]`.
fn bareiss(mut m: Vec<Vec<Poly>>) -> Poly {
    let d = m.len();
    let mut sign = false;
    let mut prev: Poly = vec![Cyclotomic::one()];
    for k in 0..d {
        let Some(p) = (k..d).find(|&r| !m[r][k].is_empty()) else {
            return Vec::new();
        };
        if p != k {
            m.swap(p, k);
            sign = !sign;
        }
        for i in k + 1..d {
            for j in k + 1..d {
                let num = sub(&mul(&m[i][j], &m[k][k]), &mul(&m[i][k], &m[k][j]));
                m[i][j] = div_exact(&num, &prev);
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[d - 1][d - 1].clone();
    if sign {
        det.iter().map(|c| -c).collect()
    } else {
        det
    }
}
