//! Random admissible ramification data on groups of order ≤ 24.
#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use refined_artin::group::{normal_subgroups, quotient, FiniteGroup, Group, Subgroup};
use refined_artin::numtheory::{is_power_of, split_prime_power};
use refined_artin::ramification::{build_ramification, RamificationData, TameCharacter};

fn dihedral(n: usize) -> Group {
    let rotation = vec![(1..=n).collect::<Vec<_>>()];
    let reflection: Vec<Vec<usize>> = (2..=n).map(|i| (i, n + 2 - i)).filter(|(a, b)| a < b).map(|(a, b)| vec![a, b]).collect();
    FiniteGroup::from_permutations(&[rotation, reflection]).expect("dihedral group")
}

fn perm(gens: &[&[&[usize]]]) -> Group {
    let gens: Vec<Vec<Vec<usize>>> = gens.iter().map(|g| g.iter().map(|c| c.to_vec()).collect()).collect();
    FiniteGroup::from_permutations(&gens).expect("permutation group")
}

/// A zoo of groups of order ≤ 24, abelian and not.
pub fn small_groups() -> Vec<(String, Group)> {
    let mut out = Vec::new();
    for n in 1..=24 {
        out.push((format!("C{n}"), FiniteGroup::cyclic(n).unwrap()));
    }
    for ns in [&[2, 2][..], &[2, 4], &[2, 2, 2], &[3, 3], &[2, 6], &[2, 8], &[4, 4], &[2, 2, 4], &[2, 10], &[2, 2, 6], &[2, 12]] {
        out.push((format!("abelian{ns:?}"), FiniteGroup::abelian(ns).unwrap()));
    }
    for n in 3..=12 {
        out.push((format!("D{n}"), dihedral(n)));
    }
    out.push(("Q8".into(), perm(&[&[&[1, 2, 4, 7], &[3, 6, 8, 5]], &[&[1, 3, 4, 8], &[2, 5, 7, 6]]])));
    out.push(("A4".into(), perm(&[&[&[1, 2, 3]], &[&[1, 2], &[3, 4]]])));
    out.push(("S4".into(), perm(&[&[&[1, 2, 3, 4]], &[&[1, 2]]])));
    out.push(("Dic3".into(), perm(&[&[&[1, 2, 3]], &[&[2, 3], &[4, 5, 6, 7]]])));
    out.push(("F20".into(), perm(&[&[&[1, 2, 3, 4, 5]], &[&[2, 3, 5, 4]]])));
    out
}

fn is_cyclic_quotient(top: &Subgroup, bottom: &Subgroup) -> bool {
    let g = top.parent();
    let want = top.order() / bottom.order();
    top.members().iter().any(|&x| {
        let (mut y, mut k) = (x, 1);
        while !bottom.contains(y) {
            y = g.mul(y, x);
            k += 1;
        }
        k == want
    })
}

/// One attempt; `None` when the random choices admit no filtration.
fn attempt(rng: &mut StdRng, groups: &[(String, Group)]) -> Option<(String, RamificationData)> {
    let (name, g) = groups.choose(rng)?;
    let p = *[2u64, 3, 5, 7].choose(rng)?;
    let normals = normal_subgroups(g);

    // inertia: normal with cyclic (unramified) quotient
    let inertia: Vec<&Subgroup> = normals.iter().filter(|h| quotient(h).map(|(q, _)| q.is_cyclic()).unwrap_or(false)).collect();
    let g0 = (*inertia.choose(rng)?).clone();

    // wild inertia: the normal Sylow p-subgroup of Γ_0
    let (k, _) = split_prime_power(g0.order() as u64, p);
    let sylow = p.pow(k) as usize;
    let g1 = normals.iter().find(|h| h.order() == sylow && h.is_subgroup_of(&g0))?.clone();
    if !is_cyclic_quotient(&g0, &g1) {
        return None;
    }

    let mut chain = vec![g0.clone(), g1.clone()];
    let mut current = g1;
    while !current.is_trivial() {
        for _ in 0..rng.gen_range(0..3) {
            chain.push(current.clone());
        }
        let smaller: Vec<&Subgroup> = normals
            .iter()
            .filter(|h| h.order() < current.order() && h.is_subgroup_of(&current) && is_power_of(h.order() as u64, p))
            .collect();
        current = (*smaller.choose(rng)?).clone();
        if !current.is_trivial() {
            chain.push(current.clone());
        }
    }
    let n = chain[0].order() / chain.get(1).map_or(1, |h| h.order());
    let tame = (n > 1).then(|| {
        let w = chain.get(1).cloned().unwrap_or_else(|| Subgroup::trivial(g));
        let generator = chain[0]
            .members()
            .iter()
            .copied()
            .find(|&x| {
                let (mut y, mut k) = (x, 1);
                while !w.contains(y) {
                    y = g.mul(y, x);
                    k += 1;
                }
                k == n
            })
            .expect("cyclic tame quotient");
        let units: Vec<i64> = (1..n as i64).filter(|&e| num_integer::gcd(e, n as i64) == 1).collect();
        TameCharacter { generator, exponent: *units.choose(rng).unwrap_or(&1) }
    });
    let lists: Vec<Vec<usize>> = chain.iter().map(|h| h.members().to_vec()).collect();
    let data = build_ramification(g, &lists, p, tame).ok()?;
    let shape: Vec<usize> = chain.iter().map(Subgroup::order).collect();
    Some((format!("{name} p={p} |Γ_i|={shape:?}"), data))
}

/// `count` admissible data sets from a fixed seed.
pub fn random_admissible(seed: u64, count: usize) -> Vec<(String, RamificationData)> {
    let groups = small_groups();
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        if let Some(d) = attempt(&mut rng, &groups) {
            out.push(d);
        }
    }
    out
}

/// A single data set, for property tests driven by a seed.
pub fn one_admissible(seed: u64) -> (String, RamificationData) {
    random_admissible(seed, 1).pop().expect("one")
}
