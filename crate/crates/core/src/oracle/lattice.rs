//! Integer lattices: saturated kernels by unimodular elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Z-basis of `{v ∈ Z^cols : m·v = 0}`.
///
/// Row-reduces `[mᵀ | I]` with unimodular integer operations (a Hermite
/// normal form computation on the left block); rows whose left block
/// vanishes carry a basis of the kernel. The result is saturated by
/// construction: the transform is invertible over Z.
pub fn integer_kernel(m: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let rows = m.len();
    // work[j] = (column j of m, e_j)
    let mut work: Vec<(Vec<BigInt>, Vec<BigInt>)> = (0..cols)
        .map(|j| {
            let left = m.iter().map(|r| r[j].clone()).collect();
            let mut right = vec![BigInt::zero(); cols];
            right[j] = BigInt::one();
            (left, right)
        })
        .collect();

    let mut pivot_row = 0;
    for c in 0..rows {
        if pivot_row == cols {
            break;
        }
        // gcd-combine every remaining row into the pivot row at column c
        for r in pivot_row + 1..cols {
            if work[r].0[c].is_zero() {
                continue;
            }
            let a = work[pivot_row].0[c].clone();
            let b = work[r].0[c].clone();
            let g = a.extended_gcd(&b);
            let (x, y) = (g.x, g.y);
            let (ag, bg) = (&a / &g.gcd, &b / &g.gcd);
            // [x y; -b/g a/g] has determinant 1
            let (top, bottom) = {
                let (p, q) = (&work[pivot_row], &work[r]);
                (combine(p, q, &x, &y), combine(p, q, &(-&bg), &ag))
            };
            work[pivot_row] = top;
            work[r] = bottom;
        }
        if !work[pivot_row].0[c].is_zero() {
            if work[pivot_row].0[c].is_negative() {
                let (l, r) = &mut work[pivot_row];
                l.iter_mut().chain(r.iter_mut()).for_each(|v| *v = -&*v);
            }
            pivot_row += 1;
        }
    }
    work.into_iter().skip(pivot_row).map(|(_, right)| right).collect()
}

fn combine(
    p: &(Vec<BigInt>, Vec<BigInt>),
    q: &(Vec<BigInt>, Vec<BigInt>),
    a: &BigInt,
    b: &BigInt,
) -> (Vec<BigInt>, Vec<BigInt>) {
    let lin = |u: &[BigInt], v: &[BigInt]| u.iter().zip(v).map(|(s, t)| a * s + b * t).collect();
    (lin(&p.0, &q.0), lin(&p.1, &q.1))
}
