mod common;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use refined_artin::cyclotomic::Cyclotomic;
use refined_artin::format::parse_group_spec;
use refined_artin::group::{
    abelian_irreducibles, all_subgroups, build_group, normal_subgroups, quotient, ClassFunction, FiniteGroup, Group,
    GroupError, GroupHom, Subgroup,
};
use refined_artin::numtheory::rat;

fn int(k: i64) -> Cyclotomic {
    Cyclotomic::from_integer(k)
}

fn ints(g: &Group, v: &[i64]) -> ClassFunction {
    ClassFunction::new(g, v.iter().map(|&k| int(k)).collect()).unwrap()
}

fn s3() -> Group {
    FiniteGroup::from_permutations(&[vec![vec![1, 2]], vec![vec![1, 2, 3]]]).unwrap()
}

fn c(n: usize) -> Group {
    FiniteGroup::cyclic(n).unwrap()
}

#[test]
fn builds_groups() {
    let g = build_group(&parse_group_spec(r#"{"cyclic": 4}"#).unwrap()).unwrap();
    assert_eq!((g.order(), g.num_classes()), (4, 4));
    let g = build_group(&parse_group_spec(r#"{"abelian": [2, 2]}"#).unwrap()).unwrap();
    assert_eq!((g.order(), g.num_classes()), (4, 4));
    assert_eq!(g.exponent(), 2);
    let g = build_group(&parse_group_spec(r#"{"perm": [[[1, 2]], [[1, 2, 3]]]}"#).unwrap()).unwrap();
    let sizes: Vec<usize> = (0..g.num_classes()).map(|c| g.class_size(c)).collect();
    assert_eq!(g.order(), 6);
    assert_eq!(sizes, [1, 3, 2]);
    let table = build_group(&parse_group_spec(r#"{"table": [[0, 1], [1, 0]]}"#).unwrap()).unwrap();
    assert!(table.is_cyclic());
}

#[test]
fn rejects_bad_groups() {
    assert!(matches!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]), Err(GroupError::Axiom(_))));
    // identity not at index 0
    assert!(FiniteGroup::from_table(vec![vec![1, 0], vec![0, 1]]).is_err());
    // a Latin square that is not associative
    let quasi = vec![vec![0, 1, 2, 3, 4], vec![1, 0, 3, 4, 2], vec![2, 4, 0, 1, 3], vec![3, 2, 4, 0, 1], vec![4, 3, 1, 2, 0]];
    assert!(FiniteGroup::from_table(quasi).is_err());
    assert!(FiniteGroup::from_permutations(&[vec![vec![1, 1]]]).is_err());
    assert!(parse_group_spec(r#"{"dihedral": 4}"#).is_err());
}

#[test]
fn subgroups_quotients_homs() {
    let c4 = c(4);
    let (q, proj) = quotient(&Subgroup::new(&c4, &[0, 2]).unwrap()).unwrap();
    assert_eq!(q.order(), 2);
    for y in 0..2 {
        assert_eq!((0..4).filter(|&x| proj.apply(x) == y).count(), 2);
    }
    let g = s3();
    assert!(Subgroup::new(&g, &[0]).unwrap().is_trivial());
    let t = g.classes()[1][0];
    assert!(matches!(Subgroup::new(&g, &[0, t, g.classes()[2][0]]), Err(GroupError::NotClosed(_))));
    assert!(matches!(quotient(&Subgroup::new(&g, &[0, t]).unwrap()), Err(GroupError::NotNormal)));

    let inc = GroupHom::new(c(2), c4.clone(), vec![0, 2]).unwrap();
    assert!(inc.is_injective() && !inc.is_surjective());
    assert_eq!(inc.image().members(), &[0, 2]);
    assert!(matches!(GroupHom::new(c(2), c4, vec![0, 1]), Err(GroupError::NotHomomorphism(_))));
}

#[test]
fn pairing_examples() {
    let c6 = c(6);
    assert_eq!(ClassFunction::regular(&c6).pair(&ClassFunction::trivial(&c6)).unwrap(), int(1));
    let c2 = c(2);
    let u = ClassFunction::augmentation(&c2);
    assert_eq!(u.pair(&u).unwrap(), int(1));
    let chars = abelian_irreducibles(&c(5)).unwrap();
    for (a, x) in chars.iter().enumerate() {
        for (b, y) in chars.iter().enumerate() {
            assert_eq!(x.pair(y).unwrap(), int((a == b) as i64));
        }
    }
    assert!(matches!(x_pair_mismatch(), Err(GroupError::GroupMismatch)));
}

fn x_pair_mismatch() -> Result<Cyclotomic, GroupError> {
    ClassFunction::trivial(&c(2)).pair(&ClassFunction::trivial(&c(3)))
}

#[test]
fn standard_characters() {
    assert_eq!(ClassFunction::augmentation(&c(3)), ints(&c(3), &[2, -1, -1]));
    let g = s3();
    assert_eq!(ClassFunction::regular(&g), ints(&g, &[6, 0, 0]));
    let c7 = c(7);
    assert_eq!(ClassFunction::augmentation(&c7).pair(&ClassFunction::trivial(&c7)).unwrap(), int(0));
}

#[test]
fn restriction_and_inflation() {
    let (c2, c4) = (c(2), c(4));
    let inc = GroupHom::new(c2.clone(), c4.clone(), vec![0, 2]).unwrap();
    assert_eq!(ClassFunction::regular(&c4).restrict(&inc).unwrap(), ClassFunction::regular(&c2).scale(&rat(2, 1)));
    let proj = GroupHom::new(c4.clone(), c2.clone(), vec![0, 1, 0, 1]).unwrap();
    assert_eq!(ClassFunction::trivial(&c2).inflate(&proj).unwrap(), ClassFunction::trivial(&c4));
    // χ_1 of C_4 is ζ_4 on 1, hence −1 on 2, which is χ_1 of C_2
    let chi = &abelian_irreducibles(&c4).unwrap()[1];
    assert_eq!(chi.restrict(&inc).unwrap(), abelian_irreducibles(&c2).unwrap()[1]);
    assert!(matches!(chi.restrict(&proj), Err(GroupError::WrongKind(_))));
    assert!(matches!(ClassFunction::trivial(&c2).inflate(&inc), Err(GroupError::WrongKind(_))));
}

#[test]
fn pushforward_examples() {
    let (c2, c4) = (c(2), c(4));
    let inc = GroupHom::new(c2.clone(), c4.clone(), vec![0, 2]).unwrap();
    assert_eq!(ClassFunction::trivial(&c2).pushforward(&inc).unwrap(), ints(&c4, &[2, 0, 2, 0]));
    let proj = GroupHom::new(c4.clone(), c2.clone(), vec![0, 1, 0, 1]).unwrap();
    assert_eq!(ClassFunction::regular(&c4).pushforward(&proj).unwrap(), ClassFunction::regular(&c2));
    let g = s3();
    let chi = ints(&g, &[5, -1, 2]);
    assert_eq!(chi.pushforward(&GroupHom::identity(&g)).unwrap(), chi);
}

#[test]
fn irreducibles() {
    let c3 = abelian_irreducibles(&c(3)).unwrap();
    assert_eq!(c3.len(), 3);
    assert_eq!(*c3[1].value_at(1), Cyclotomic::root(3, 1));
    let klein = FiniteGroup::abelian(&[2, 2]).unwrap();
    let k = abelian_irreducibles(&klein).unwrap();
    assert_eq!(k.len(), 4);
    assert!(k.iter().flat_map(|x| x.values()).all(|v| *v == int(1) || *v == int(-1)));
    let c12 = abelian_irreducibles(&c(12)).unwrap();
    assert_eq!(c12.len(), 12);
    for (a, x) in c12.iter().enumerate() {
        for (b, y) in c12.iter().enumerate() {
            assert_eq!(x.pair(y).unwrap(), int((a == b) as i64));
        }
    }
    assert!(matches!(abelian_irreducibles(&s3()), Err(GroupError::NotAbelian)));
}

// ---- randomized properties on groups of order ≤ 12 ----

fn small() -> Vec<Group> {
    common::small_groups().into_iter().map(|(_, g)| g).filter(|g| g.order() <= 12).collect()
}

fn random_cf(rng: &mut StdRng, g: &Group) -> ClassFunction {
    let e = g.exponent() as u64;
    ClassFunction::new(
        g,
        (0..g.num_classes())
            .map(|_| {
                let terms: Vec<(i64, _)> =
                    (0..2).map(|_| (rng.gen_range(0..e as i64), rat(rng.gen_range(-3..=3), rng.gen_range(1..=2)))).collect();
                Cyclotomic::from_terms(e, terms)
            })
            .collect(),
    )
    .unwrap()
}

/// Inclusion of a subgroup followed by a projection: injective, surjective
/// or neither depending on the draw.
fn random_hom(rng: &mut StdRng, g: &Group) -> GroupHom {
    let h = all_subgroups(g).choose(rng).unwrap().clone();
    let (_, inc) = h.as_group();
    let n = normal_subgroups(g).choose(rng).unwrap().clone();
    let (_, proj) = quotient(&n).unwrap();
    inc.then(&proj).unwrap()
}

/// `γ: G → G/N`, `α: G → G/M`, `β: G/M → G/MN`, `δ: G/N → G/MN`.
fn square(g: &Group, m: &Subgroup, n: &Subgroup) -> (GroupHom, GroupHom, GroupHom, GroupHom) {
    let (_, alpha) = quotient(m).unwrap();
    let (gn, gamma) = quotient(n).unwrap();
    let (_, beta) = quotient(&alpha.image_of(n)).unwrap();
    let delta_map: Vec<usize> =
        (0..gn.order()).map(|q| beta.apply(alpha.apply((0..g.order()).find(|&x| gamma.apply(x) == q).unwrap()))).collect();
    let delta = GroupHom::new(gn, beta.target().clone(), delta_map).unwrap();
    (alpha, beta, gamma, delta)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn pushforward_is_adjoint_to_pullback(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let groups = small();
        let g = groups.choose(&mut rng).unwrap();
        let hom = random_hom(&mut rng, g);
        let chi = random_cf(&mut rng, hom.source());
        let psi = random_cf(&mut rng, hom.target());
        prop_assert_eq!(psi.pair(&chi.pushforward(&hom).unwrap()).unwrap(), psi.pullback(&hom).unwrap().pair(&chi).unwrap());
    }

    #[test]
    fn pushforward_respects_composition(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let groups = small();
        let g = groups.choose(&mut rng).unwrap();
        let first = random_hom(&mut rng, g);
        let n = normal_subgroups(first.target()).choose(&mut rng).unwrap().clone();
        let (_, second) = quotient(&n).unwrap();
        let chi = random_cf(&mut rng, first.source());
        let composite = chi.pushforward(&first.then(&second).unwrap()).unwrap();
        prop_assert_eq!(composite, chi.pushforward(&first).unwrap().pushforward(&second).unwrap());
    }

    #[test]
    fn quotient_square_commutes(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let groups = small();
        let g = groups.choose(&mut rng).unwrap();
        let normals = normal_subgroups(g);
        let m = normals.choose(&mut rng).unwrap();
        let n = normals.choose(&mut rng).unwrap();
        let (alpha, beta, gamma, delta) = square(g, m, n);
        let chi = random_cf(&mut rng, alpha.target());
        let lhs = chi.inflate(&alpha).unwrap().pushforward(&gamma).unwrap();
        let rhs = chi.pushforward(&beta).unwrap().inflate(&delta).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    // the pairing uses χ₂(g⁻¹), so it is symmetric; on virtual characters
    // χ(g⁻¹) is the complex conjugate and the pairing is hermitian too
    #[test]
    fn pairing_is_symmetric_and_hermitian_on_characters(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let groups = small();
        let g = groups.choose(&mut rng).unwrap();
        let (a, b) = (random_cf(&mut rng, g), random_cf(&mut rng, g));
        prop_assert_eq!(a.pair(&b).unwrap(), b.pair(&a).unwrap());
        if let Ok(irr) = abelian_irreducibles(g) {
            let mut virtual_char = || {
                irr.iter().fold(ClassFunction::zero(g), |acc, x| acc.add(&x.scale(&rat(rng.gen_range(-2..=2), 1))).unwrap())
            };
            let (x, y) = (virtual_char(), virtual_char());
            prop_assert_eq!(x.pair(&y).unwrap(), y.pair(&x).unwrap().conjugate());
            prop_assert_eq!(x.dual(), x.map_values(Cyclotomic::conjugate));
        }
    }
}
