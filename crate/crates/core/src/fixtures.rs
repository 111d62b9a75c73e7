//! Curated ramification data used by the verification batteries.

use crate::group::FiniteGroup;
use crate::numtheory::gcd;
use crate::oracle::{self, MonogenicOrder};
use crate::ramification::{build_ramification, RamificationData, TameCharacter};
use num_bigint::BigInt;

/// `Q_2(√2)/Q_2`: `Γ = C_2 = Γ_0 = Γ_1 = Γ_2`, `Γ_3 = 1`.
pub fn quad() -> RamificationData {
    let c2 = FiniteGroup::cyclic(2).expect("small");
    build_ramification(&c2, &[vec![0, 1], vec![0, 1], vec![0, 1]], 2, None).expect("admissible")
}

/// Totally tamely ramified `C_n` with `Ψ(1) = ζ_n`.
pub fn tame(n: usize, p: u64) -> RamificationData {
    let g = FiniteGroup::cyclic(n).expect("small");
    let tame = (n > 1).then_some(TameCharacter { generator: 1, exponent: 1 });
    build_ramification(&g, &[(0..n).collect()], p, tame).expect("admissible")
}

/// `C_6` at `p = 2` with `Γ_1 = Γ_2 = Γ_3 = C_2`: adjoin `∛2` and `√3` to
/// the unramified quadratic extension of `Q_2`. Upper jumps `0` and `1`.
pub fn mixed_c6() -> RamificationData {
    let g = FiniteGroup::cyclic(6).expect("small");
    let f = [(0..6).collect(), vec![0, 3], vec![0, 3], vec![0, 3]];
    build_ramification(&g, &f, 2, Some(TameCharacter { generator: 2, exponent: 1 })).expect("admissible")
}

/// `x^3 − 7x^2 + 14x − 7`, the cyclic cubic of conductor 7, totally and
/// tamely ramified at 7; `σ(x) = 4x − x^2`.
pub fn cubic7_order() -> MonogenicOrder {
    let z = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    MonogenicOrder::new(7, z(&[-7, 14, -7, 1]), vec![z(&[0, 1]), z(&[0, 4, -1]), z(&[7, -5, 1])]).expect("valid order")
}

/// `Q_2(√2)` as the order `Z[x]/(x^2 − 2)`.
pub fn quad_order() -> MonogenicOrder {
    let z = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    MonogenicOrder::new(2, z(&[-2, 0, 1]), vec![z(&[0, 1]), z(&[0, -1])]).expect("valid order")
}

/// `Q_p(ζ_{p^k})` for the pairs the batteries use.
pub fn cyclotomic_orders() -> Vec<(String, MonogenicOrder)> {
    [(2u64, 1u32), (2, 2), (3, 1), (3, 2)]
        .into_iter()
        .map(|(p, k)| (format!("Q{p}(zeta{})", p.pow(k)), oracle::cyclotomic_order(p, k).expect("valid order")))
        .collect()
}

/// Primes used for the tame family.
pub const TAME_PRIMES: [u64; 4] = [2, 3, 5, 7];

/// Every curated fixture, by name.
pub fn curated() -> Vec<(String, RamificationData)> {
    let mut out = vec![("quad".to_string(), quad()), ("mixed-C6".to_string(), mixed_c6())];
    for n in 1..=12 {
        for p in TAME_PRIMES.into_iter().filter(|&p| gcd(p, n as u64) == 1) {
            out.push((format!("tame-C{n}-p{p}"), tame(n, p)));
        }
    }
    for (name, o) in cyclotomic_orders() {
        out.push((name, oracle::filtration_from_monogenic(&o).expect("derived data is admissible")));
    }
    out.push(("cubic7".into(), oracle::filtration_from_monogenic(&cubic7_order()).expect("admissible")));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_fixtures_build() {
        let all = curated();
        assert!(all.len() > 30);
        let names: std::collections::BTreeSet<_> = all.iter().map(|(n, _)| n.clone()).collect();
        assert_eq!(names.len(), all.len());
        assert_eq!(mixed_c6().upper_jumps().len(), 2);
    }
}
