//! Dense univariate polynomials, coefficients in ascending degree.

use crate::linalg;
use crate::numtheory::Rational;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type ZPoly = Vec<BigInt>;
pub type QPoly = Vec<Rational>;

pub fn to_q(p: &[BigInt]) -> QPoly {
    p.iter().cloned().map(Rational::from_integer).collect()
}

/// Integer coefficients, if every coefficient is integral.
pub fn to_z(p: &[Rational]) -> Option<ZPoly> {
    p.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
}

pub fn trim<T: Zero>(mut p: Vec<T>) -> Vec<T> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub fn degree<T: Zero>(p: &[T]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn add<T: Zero + Clone>(a: &[T], b: &[T]) -> Vec<T> {
    let n = a.len().max(b.len());
    trim((0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(T::zero);
            let y = b.get(i).cloned().unwrap_or_else(T::zero);
            x + y
        })
        .collect())
}

pub fn sub<T: Zero + Clone + std::ops::Neg<Output = T>>(a: &[T], b: &[T]) -> Vec<T> {
    let neg: Vec<T> = b.iter().cloned().map(|x| -x).collect();
    add(a, &neg)
}

pub fn mul<T: Zero + Clone>(a: &[T], b: &[T]) -> Vec<T>
where
    for<'x> &'x T: std::ops::Mul<&'x T, Output = T>,
{
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x * y;
        }
    }
    trim(out)
}

/// Remainder modulo a monic polynomial.
pub fn rem_monic<T: Zero + Clone + std::ops::Sub<Output = T>>(a: &[T], f: &[T]) -> Vec<T>
where
    for<'x> &'x T: std::ops::Mul<&'x T, Output = T>,
{
    let e = f.len() - 1;
    let mut r: Vec<T> = a.to_vec();
    while r.len() > e {
        let lead = r.pop().expect("nonempty");
        if lead.is_zero() {
            continue;
        }
        let shift = r.len() - e;
        for (k, c) in f[..e].iter().enumerate() {
            r[shift + k] = r[shift + k].clone() - &lead * c;
        }
    }
    trim(r)
}

/// `g(h(x)) mod f`.
pub fn compose_mod(g: &[BigInt], h: &[BigInt], f: &[BigInt]) -> ZPoly {
    let mut acc: ZPoly = Vec::new();
    for c in g.iter().rev() {
        acc = rem_monic(&add(&mul(&acc, h), std::slice::from_ref(c)), f);
    }
    acc
}

pub fn pow_mod(base: &[BigInt], k: usize, f: &[BigInt]) -> ZPoly {
    (0..k).fold(rem_monic(&[BigInt::one()], f), |acc, _| rem_monic(&mul(&acc, base), f))
}

/// Division with remainder over `Q`.
pub fn divmod_q(a: &[Rational], b: &[Rational]) -> (QPoly, QPoly) {
    let db = degree(b).expect("division by zero polynomial");
    let lead_inv = b[db].recip();
    let mut r = trim(a.to_vec());
    let mut q = vec![Rational::zero(); r.len().saturating_sub(db)];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = &r[dr] * &lead_inv;
        for k in 0..=db {
            r[dr - db + k] = &r[dr - db + k] - &c * &b[k];
        }
        q[dr - db] = c;
        r = trim(r);
    }
    (trim(q), r)
}

/// Inverse of `a` modulo `f` over `Q`, when `gcd(a, f) = 1`.
pub fn inverse_mod_q(a: &[Rational], f: &[Rational]) -> Option<QPoly> {
    let (mut r0, mut r1) = (f.to_vec(), trim(a.to_vec()));
    let (mut s0, mut s1): (QPoly, QPoly) = (Vec::new(), vec![Rational::one()]);
    while degree(&r1).is_some() {
        let (q, r) = divmod_q(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if degree(&r0) != Some(0) {
        return None;
    }
    let c = r0[0].recip();
    let (_, inv) = divmod_q(&s0.iter().map(|x| x * &c).collect::<Vec<_>>(), f);
    Some(inv)
}

/// Matrix of multiplication by `y` on `Q[x]/(f)` in the power basis.
pub fn multiplication_matrix(y: &[Rational], f: &[Rational]) -> linalg::Matrix<Rational> {
    let e = f.len() - 1;
    let mut m = vec![vec![Rational::zero(); e]; e];
    let mut col = rem_monic(y, f);
    for k in 0..e {
        for (i, c) in col.iter().enumerate() {
            m[i][k] = c.clone();
        }
        col = rem_monic(&mul(&col, &[Rational::zero(), Rational::one()]), f);
    }
    m
}

/// `N(y) = det(multiplication by y)` on `Q[x]/(f)`, equal to `Res(f, y)` for monic `f`.
pub fn norm(y: &[Rational], f: &[Rational]) -> Rational {
    linalg::determinant(&multiplication_matrix(y, f))
}

/// Resultant through the Sylvester matrix.
pub fn resultant(a: &[Rational], b: &[Rational]) -> Rational {
    let (Some(m), Some(n)) = (degree(a), degree(b)) else {
        return Rational::zero();
    };
    if m + n == 0 {
        return Rational::one();
    }
    let size = m + n;
    let mut s = vec![vec![Rational::zero(); size]; size];
    for i in 0..n {
        for k in 0..=m {
            s[i][i + k] = a[m - k].clone();
        }
    }
    for i in 0..m {
        for k in 0..=n {
            s[n + i][i + k] = b[n - k].clone();
        }
    }
    linalg::determinant(&s)
}

pub fn is_eisenstein(f: &[BigInt], p: u64) -> bool {
    let Some(e) = degree(f) else { return false };
    let p = BigInt::from(p);
    e >= 1
        && f[e].is_one()
        && f[..e].iter().all(|c| (c % &p).is_zero())
        && !(&f[0] % (&p * &p)).is_zero()
}

pub fn show(p: &[BigInt]) -> String {
    let terms: Vec<String> = p
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| match k {
            0 => c.to_string(),
            _ => format!("{}x^{k}", if c.abs().is_one() { if c.is_negative() { "-".into() } else { String::new() } } else { c.to_string() }),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}
