//! Multiplication tables of the finite groups acting freely on the 3-sphere.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::todd_coxeter::{enumerate, Presentation};

/// Largest group order the catalog will build.
pub const MAX_ORDER: usize = 10_000;
const EXHAUSTIVE_ASSOCIATIVITY: usize = 48;
const RANDOM_TRIPLES: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("bad parameter {parameter} for family {family}")]
    BadParameter { family: String, parameter: i64 },
    #[error("unknown family '{0}'")]
    UnknownFamily(String),
    #[error("table is empty or not square")]
    NotSquare,
    #[error("entry {value} at ({row}, {col}) is out of range")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
    },
    #[error("no identity element")]
    NoIdentity,
    #[error("row or column {0} is not a permutation")]
    NotLatin(usize),
    #[error("({a} {b}) {c} differs from {a} ({b} {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("{0} elements of order 2; a group acting freely on S^3 has at most one")]
    NotFreeOnSphere(usize),
    #[error("coset enumeration exceeded its limit")]
    EnumerationFailed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Cyclic(u32),
    BinaryDihedral(u32),
    BinaryTetrahedral,
    BinaryOctahedral,
    BinaryIcosahedral,
    /// A validated user-supplied table.
    Custom,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Cyclic(_) => "cyclic",
            Family::BinaryDihedral(_) => "binary_dihedral",
            Family::BinaryTetrahedral => "binary_tetrahedral",
            Family::BinaryOctahedral => "binary_octahedral",
            Family::BinaryIcosahedral => "binary_icosahedral",
            Family::Custom => "custom",
        }
    }

    pub fn parameter(&self) -> Option<u32> {
        match self {
            Family::Cyclic(n) | Family::BinaryDihedral(n) => Some(*n),
            _ => None,
        }
    }

    /// Order predicted by the family.
    pub fn expected_order(&self) -> Option<usize> {
        match self {
            Family::Cyclic(n) => Some(*n as usize),
            Family::BinaryDihedral(n) => Some(4 * *n as usize),
            Family::BinaryTetrahedral => Some(24),
            Family::BinaryOctahedral => Some(48),
            Family::BinaryIcosahedral => Some(120),
            Family::Custom => None,
        }
    }

    /// Parses a family name with an optional parameter.
    pub fn parse(name: &str, parameter: Option<i64>) -> Result<Self, GroupError> {
        let bad = |p: i64| GroupError::BadParameter {
            family: name.to_string(),
            parameter: p,
        };
        let need = |limit: usize| -> Result<u32, GroupError> {
            let p = parameter.ok_or_else(|| bad(0))?;
            if p < 1 || p as usize > limit {
                return Err(bad(p));
            }
            Ok(p as u32)
        };
        match name {
            "cyclic" => Ok(Family::Cyclic(need(MAX_ORDER)?)),
            "binary_dihedral" => Ok(Family::BinaryDihedral(need(MAX_ORDER / 4)?)),
            "binary_tetrahedral" | "binary_octahedral" | "binary_icosahedral" => {
                if let Some(p) = parameter {
                    return Err(bad(p));
                }
                Ok(name.parse()?)
            }
            "trivial" => Ok(Family::Cyclic(1)),
            "quaternion" => Ok(Family::BinaryDihedral(2)),
            _ => Err(GroupError::UnknownFamily(name.to_string())),
        }
    }

    fn presentation(&self) -> Presentation {
        match *self {
            Family::Cyclic(n) => Presentation {
                generators: 1,
                relators: vec![vec![1; n as usize]],
            },
            // <a, b | a^2n, a^n = b^2, b^-1 a b = a^-1>
            Family::BinaryDihedral(n) => Presentation {
                generators: 2,
                relators: vec![
                    vec![1; 2 * n as usize],
                    [vec![1; n as usize], vec![-2, -2]].concat(),
                    vec![-2, 1, 2, 1],
                ],
            },
            Family::BinaryTetrahedral => polyhedral(3),
            Family::BinaryOctahedral => polyhedral(4),
            Family::BinaryIcosahedral => polyhedral(5),
            Family::Custom => unreachable!("custom tables have no presentation"),
        }
    }
}

impl FromStr for Family {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "binary_tetrahedral" => Ok(Family::BinaryTetrahedral),
            "binary_octahedral" => Ok(Family::BinaryOctahedral),
            "binary_icosahedral" => Ok(Family::BinaryIcosahedral),
            other => Err(GroupError::UnknownFamily(other.to_string())),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.parameter() {
            Some(n) => write!(f, "{}({n})", self.name()),
            None => f.write_str(self.name()),
        }
    }
}

/// `<r, s, t | r^2 = s^3 = t^k = rst>`
fn polyhedral(k: usize) -> Presentation {
    let rst_inv = vec![-3, -2, -1];
    Presentation {
        generators: 3,
        relators: vec![
            [vec![1, 1], rst_inv.clone()].concat(),
            [vec![2, 2, 2], rst_inv.clone()].concat(),
            [vec![3; k], rst_inv].concat(),
        ],
    }
}

/// A validated multiplication table; `table[a][b]` is `a b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    table: Vec<Vec<usize>>,
    identity: usize,
}

impl GroupTable {
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 || table.iter().any(|row| row.len() != n) {
            return Err(GroupError::NotSquare);
        }
        for (row, r) in table.iter().enumerate() {
            for (col, &value) in r.iter().enumerate() {
                if value >= n {
                    return Err(GroupError::EntryOutOfRange { row, col, value });
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or(GroupError::NoIdentity)?;
        for i in 0..n {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for j in 0..n {
                row_seen[table[i][j]] = true;
                col_seen[table[j][i]] = true;
            }
            if row_seen.contains(&false) || col_seen.contains(&false) {
                return Err(GroupError::NotLatin(i));
            }
        }
        let g = GroupTable { table, identity };
        g.check_associative()?;
        Ok(g)
    }

    fn check_associative(&self) -> Result<(), GroupError> {
        let n = self.order();
        let check = |a: usize, b: usize, c: usize| {
            if self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c)) {
                Ok(())
            } else {
                Err(GroupError::NotAssociative { a, b, c })
            }
        };
        if n <= EXHAUSTIVE_ASSOCIATIVITY {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
            for _ in 0..RANDOM_TRIPLES {
                check(
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                )?;
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order())
            .find(|&b| self.mul(a, b) == self.identity)
            .expect("validated table has inverses")
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// Smallest `k >= 1` with `a^k = 1`.
    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Elements of order exactly two.
    pub fn involutions(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&a| a != self.identity && self.mul(a, a) == self.identity)
            .collect()
    }
}

/// A finite group from the catalog of free actions on S^3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSubgroupS3 {
    family: Family,
    table: GroupTable,
}

impl FiniteSubgroupS3 {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn table(&self) -> &GroupTable {
        &self.table
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }

    pub fn involutions(&self) -> Vec<usize> {
        self.table.involutions()
    }

    /// Accepts a user table if it is a group with at most one involution.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let table = GroupTable::new(table)?;
        let inv = table.involutions().len();
        if inv > 1 {
            return Err(GroupError::NotFreeOnSphere(inv));
        }
        Ok(FiniteSubgroupS3 {
            family: Family::Custom,
            table,
        })
    }
}

/// Builds the multiplication table of a catalog group.
///
/// Elements are numbered breadth-first from the identity over the
/// generators of the standard presentation.
pub fn build_group(family: Family) -> Result<FiniteSubgroupS3, GroupError> {
    let expected = match family.expected_order() {
        Some(n) if (1..=MAX_ORDER).contains(&n) => n,
        _ => {
            return Err(GroupError::BadParameter {
                family: family.name().to_string(),
                parameter: family.parameter().map_or(0, i64::from),
            })
        }
    };
    let cosets = enumerate(&family.presentation(), 64 * expected + 1024)
        .ok_or(GroupError::EnumerationFailed)?;
    let action = cosets.action;
    let n = action.len();
    // Word for each element along the breadth-first tree.
    let mut word: Vec<Option<Vec<usize>>> = vec![None; n];
    word[0] = Some(Vec::new());
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for (g, &d) in action[c].iter().enumerate() {
            if word[d].is_none() {
                let mut w = word[c].clone().unwrap();
                w.push(g);
                word[d] = Some(w);
                queue.push_back(d);
            }
        }
    }
    let table = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    word[b]
                        .as_ref()
                        .unwrap()
                        .iter()
                        .fold(a, |x, &g| action[x][g])
                })
                .collect()
        })
        .collect();
    let table = GroupTable::new(table)?;
    debug_assert_eq!(table.order(), expected);
    Ok(FiniteSubgroupS3 { family, table })
}
