//! Finite groups given by Cayley tables, with subgroups, quotients,
//! homomorphisms and class functions.
//!
//! Elements are indices `0..order` and the identity is always index 0.

mod class_function;
mod hom;
mod subgroup;

pub use class_function::{abelian_irreducibles, ClassFunction};
pub use hom::{quotient, GroupHom};
pub use subgroup::{all_subgroups, normal_subgroups, Subgroup};

use serde::{Deserialize, Serialize};
use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Largest group accepted by the constructors.
pub const MAX_ORDER: usize = 2048;
/// Largest point moved by a permutation generator.
pub const MAX_DEGREE: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group axiom violated: {0}")]
    Axiom(String),
    #[error("malformed permutation: {0}")]
    Permutation(String),
    #[error("group order {0} exceeds the supported maximum")]
    TooLarge(usize),
    #[error("element set is not a subgroup: {0}")]
    NotClosed(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("map is not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("homomorphism is not {0}")]
    WrongKind(&'static str),
    #[error("class functions live on different groups")]
    GroupMismatch,
    #[error("expected {expected} class values, got {got}")]
    ClassCount { expected: usize, got: usize },
    #[error("group is not abelian")]
    NotAbelian,
}

pub type Group = Arc<FiniteGroup>;

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

/// Input forms accepted by [`build_group`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupSpec {
    Cyclic(usize),
    Abelian(Vec<usize>),
    /// Generators as lists of cycles on the points `1..=degree`.
    Perm(Vec<Vec<Vec<usize>>>),
    Table(Vec<Vec<usize>>),
}

pub fn build_group(spec: &GroupSpec) -> Result<Group, GroupError> {
    match spec {
        GroupSpec::Cyclic(n) => FiniteGroup::cyclic(*n),
        GroupSpec::Abelian(ns) => FiniteGroup::abelian(ns),
        GroupSpec::Perm(gens) => FiniteGroup::from_permutations(gens),
        GroupSpec::Table(t) => FiniteGroup::from_table(t.clone()),
    }
}

impl FiniteGroup {
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Group, GroupError> {
        let m = table.len();
        if m == 0 {
            return Err(GroupError::Axiom("empty table".into()));
        }
        if m > MAX_ORDER {
            return Err(GroupError::TooLarge(m));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != m {
                return Err(GroupError::Axiom(format!("row {i} has length {}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= m) {
                return Err(GroupError::Axiom(format!("entry {bad} out of range in row {i}")));
            }
        }
        for x in 0..m {
            if table[0][x] != x || table[x][0] != x {
                return Err(GroupError::Axiom("index 0 is not the identity".into()));
            }
        }
        let mut inverse = vec![usize::MAX; m];
        for x in 0..m {
            match (0..m).find(|&y| table[x][y] == 0) {
                Some(y) if table[y][x] == 0 => inverse[x] = y,
                _ => return Err(GroupError::Axiom(format!("element {x} has no two-sided inverse"))),
            }
        }
        for a in 0..m {
            for b in 0..m {
                let ab = table[a][b];
                for c in 0..m {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(GroupError::Axiom(format!("associativity fails at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(Arc::new(Self::with_classes(table, inverse)))
    }

    /// Builds from a table already known to satisfy the axioms.
    pub(crate) fn from_trusted_table(table: Vec<Vec<usize>>) -> Group {
        let m = table.len();
        let mut inverse = vec![0; m];
        for x in 0..m {
            inverse[x] = (0..m).find(|&y| table[x][y] == 0).expect("trusted table has inverses");
        }
        Arc::new(Self::with_classes(table, inverse))
    }

    fn with_classes(table: Vec<Vec<usize>>, inverse: Vec<usize>) -> Self {
        let m = table.len();
        let mut class_of = vec![usize::MAX; m];
        let mut classes = Vec::new();
        for x in 0..m {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members: Vec<usize> = (0..m).map(|g| table[table[g][x]][inverse[g]]).collect();
            members.sort_unstable();
            members.dedup();
            for &y in &members {
                class_of[y] = id;
            }
            classes.push(members);
        }
        FiniteGroup { table, inverse, classes, class_of }
    }

    pub fn cyclic(n: usize) -> Result<Group, GroupError> {
        Self::abelian(&[n])
    }

    /// `Z/n_1 × Z/n_2 × …`, element index `a_1 + n_1 (a_2 + n_2 (…))`.
    pub fn abelian(invariants: &[usize]) -> Result<Group, GroupError> {
        if invariants.contains(&0) {
            return Err(GroupError::Axiom("cyclic factor of order 0".into()));
        }
        let order = invariants.iter().try_fold(1usize, |acc, &n| acc.checked_mul(n).filter(|&o| o <= MAX_ORDER));
        let order = order.ok_or(GroupError::TooLarge(usize::MAX))?;
        let digits = |mut x: usize| -> Vec<usize> {
            invariants
                .iter()
                .map(|&n| {
                    let d = x % n;
                    x /= n;
                    d
                })
                .collect()
        };
        let index = |ds: &[usize]| -> usize { ds.iter().zip(invariants).rev().fold(0, |acc, (&d, &n)| acc * n + d) };
        let table = (0..order)
            .map(|a| {
                let da = digits(a);
                (0..order)
                    .map(|b| {
                        let db = digits(b);
                        let sum: Vec<usize> = da.iter().zip(&db).zip(invariants).map(|((x, y), n)| (x + y) % n).collect();
                        index(&sum)
                    })
                    .collect()
            })
            .collect();
        Ok(Self::from_trusted_table(table))
    }

    /// Closure of permutation generators written in cycle notation on the
    /// points `1..=d`. Elements are numbered in breadth-first order from the
    /// identity; products compose right to left, `(xy)(i) = x(y(i))`.
    pub fn from_permutations(generators: &[Vec<Vec<usize>>]) -> Result<Group, GroupError> {
        let degree = generators.iter().flatten().flatten().copied().max().unwrap_or(1);
        if degree > MAX_DEGREE {
            return Err(GroupError::Permutation(format!("point {degree} exceeds the maximum degree {MAX_DEGREE}")));
        }
        let mut perms = Vec::with_capacity(generators.len());
        for cycles in generators {
            let mut img: Vec<usize> = (0..degree).collect();
            let mut seen = vec![false; degree];
            for cycle in cycles {
                for &pt in cycle {
                    if pt == 0 {
                        return Err(GroupError::Permutation("points are numbered from 1".into()));
                    }
                    if std::mem::replace(&mut seen[pt - 1], true) {
                        return Err(GroupError::Permutation(format!("point {pt} repeated in one generator")));
                    }
                }
                for (i, &pt) in cycle.iter().enumerate() {
                    img[pt - 1] = cycle[(i + 1) % cycle.len()] - 1;
                }
            }
            perms.push(img);
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &perms {
                let prod: Vec<usize> = (0..degree).map(|pt| elements[i][g[pt]]).collect();
                if !index.contains_key(&prod) {
                    if elements.len() == MAX_ORDER {
                        return Err(GroupError::TooLarge(MAX_ORDER + 1));
                    }
                    index.insert(prod.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(prod);
                }
            }
        }
        let table = elements
            .iter()
            .map(|x| {
                elements
                    .iter()
                    .map(|y| {
                        let prod: Vec<usize> = (0..degree).map(|pt| x[y[pt]]).collect();
                        index[&prod]
                    })
                    .collect()
            })
            .collect();
        Ok(Self::from_trusted_table(table))
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        (0..k.unsigned_abs()).fold(0, |acc, _| self.mul(acc, base))
    }

    pub fn conjugate_by(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        (0..self.order()).fold(1, |acc, a| num_integer::lcm(acc, self.element_order(a)))
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a]
    }

    pub fn class_size(&self, c: usize) -> usize {
        self.classes[c].len()
    }

    /// Class containing the inverses of the elements of class `c`.
    pub fn inverse_class(&self, c: usize) -> usize {
        self.class_of[self.inverse[self.classes[c][0]]]
    }

    pub fn is_abelian(&self) -> bool {
        self.classes.len() == self.order()
    }

    pub fn is_cyclic(&self) -> bool {
        self.is_abelian() && self.exponent() == self.order()
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order {}, {} classes)", self.order(), self.num_classes())
    }
}

pub(crate) fn same_group(a: &Group, b: &Group) -> bool {
    Arc::ptr_eq(a, b) || a.table == b.table
}
