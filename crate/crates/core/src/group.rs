//! Finite groups given by validated Cayley tables.
//!
//! Every constructor numbers elements so that the identity is element 0.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::table::CayleyTable;

/// Largest symmetric group degree accepted by [`build_group`].
pub const MAX_SYMMETRIC_DEGREE: usize = 6;
/// Largest group order accepted by [`build_group`], the order of `S6`.
pub const MAX_GROUP_ORDER: usize = 1440;

/// A recipe for one of the built-in groups.
///
/// The string form is `C<n>`, `D<2n>`, `S<n>`, `Q8`, or several of those
/// joined by `x`, e.g. `S3xC2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    /// Cyclic group of the given order; element `k` is the `k`-th power of a generator.
    Cyclic(usize),
    /// Dihedral group of the given (even) order: rotations first, then reflections.
    Dihedral(usize),
    /// Symmetric group on the given number of points, in lexicographic
    /// one-line order.
    Symmetric(usize),
    /// Quaternion group, ordered `1, -1, i, -i, j, -j, k, -k`.
    Quaternion8,
    /// Direct product; the pair `(a, b)` has index `a * |B| + b`.
    Product(Box<GroupSpec>, Box<GroupSpec>),
}

impl GroupSpec {
    pub fn product(a: GroupSpec, b: GroupSpec) -> GroupSpec {
        GroupSpec::Product(Box::new(a), Box::new(b))
    }

    pub fn order(&self) -> usize {
        match self {
            GroupSpec::Cyclic(n) | GroupSpec::Dihedral(n) => *n,
            GroupSpec::Symmetric(m) => (1..=*m).product(),
            GroupSpec::Quaternion8 => 8,
            GroupSpec::Product(a, b) => a.order().saturating_mul(b.order()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            GroupSpec::Cyclic(0) => {
                Err(Error::UnsupportedGroup("C0: order must be positive".into()))
            }
            GroupSpec::Dihedral(n) if *n == 0 || n % 2 == 1 => Err(Error::UnsupportedGroup(
                format!("D{n}: dihedral order must be even and positive"),
            )),
            GroupSpec::Symmetric(m) if *m == 0 || *m > MAX_SYMMETRIC_DEGREE => {
                Err(Error::UnsupportedGroup(format!(
                    "S{m}: degree must be in 1..={MAX_SYMMETRIC_DEGREE}"
                )))
            }
            GroupSpec::Product(a, b) => {
                a.validate()?;
                b.validate()?;
                Ok(())
            }
            _ => Ok(()),
        }?;
        let order = self.order();
        if order > MAX_GROUP_ORDER {
            return Err(Error::UnsupportedGroup(format!(
                "{self}: order {order} exceeds {MAX_GROUP_ORDER}"
            )));
        }
        Ok(())
    }

    fn fmt_factor(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C{n}"),
            GroupSpec::Dihedral(n) => write!(f, "D{n}"),
            GroupSpec::Symmetric(m) => write!(f, "S{m}"),
            GroupSpec::Quaternion8 => f.write_str("Q8"),
            GroupSpec::Product(a, b) => {
                a.fmt_factor(f)?;
                f.write_str("x")?;
                b.fmt_factor(f)
            }
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_factor(f)
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadGroupSpec(s.to_string());
        let mut factors = s.trim().split(['x', 'X']).map(|tok| {
            let tok = tok.trim();
            let mut chars = tok.chars();
            let kind = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
            let digits = chars.as_str();
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let n: usize = digits.parse().map_err(|_| bad())?;
            match (kind, n) {
                ('C', n) => Ok(GroupSpec::Cyclic(n)),
                ('D', n) => Ok(GroupSpec::Dihedral(n)),
                ('S', n) => Ok(GroupSpec::Symmetric(n)),
                ('Q', 8) => Ok(GroupSpec::Quaternion8),
                _ => Err(bad()),
            }
        });
        let first = factors.next().ok_or_else(bad)??;
        factors.try_fold(first, |acc, next| Ok(GroupSpec::product(acc, next?)))
    }
}

impl Serialize for GroupSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GroupSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A finite group with identity 0.
#[derive(Clone, Debug)]
pub struct Group {
    table: CayleyTable,
    inv: Vec<u32>,
    center: Vec<usize>,
    spec: Option<GroupSpec>,
}

impl Group {
    pub fn order(&self) -> usize {
        self.table.order()
    }

    pub fn table(&self) -> &CayleyTable {
        &self.table
    }

    /// The recipe this group was built from, if any.
    pub fn spec(&self) -> Option<&GroupSpec> {
        self.spec.as_ref()
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table.get(x, y)
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inv[x] as usize
    }

    pub fn inverses(&self) -> impl Iterator<Item = usize> + '_ {
        self.inv.iter().map(|&v| v as usize)
    }

    pub fn is_abelian(&self) -> bool {
        self.center.len() == self.order()
    }

    pub fn is_elementary_abelian_2(&self) -> bool {
        self.is_abelian() && (0..self.order()).all(|x| self.mul(x, x) == 0)
    }

    pub fn center(&self) -> &[usize] {
        &self.center
    }

    /// `|G| / |Z(G)|`.
    pub fn center_index(&self) -> usize {
        self.order() / self.center.len()
    }

    /// Whether every square is central, i.e. `G/Z(G)` has exponent at most 2.
    /// Equivalent to the law `xxy = yxx`.
    pub fn squares_are_central(&self) -> bool {
        (0..self.order()).all(|x| self.center.binary_search(&self.mul(x, x)).is_ok())
    }

    /// Whether the hypotheses of the doubling classification hold:
    /// `|G| > 1` and `G` is not an elementary abelian 2-group.
    pub fn is_admissible(&self) -> bool {
        self.order() > 1 && !self.is_elementary_abelian_2()
    }

    pub(crate) fn with_spec(mut self, spec: GroupSpec) -> Self {
        self.spec = Some(spec);
        self
    }
}

pub fn is_abelian(g: &Group) -> bool {
    g.is_abelian()
}

pub fn is_elementary_abelian_2(g: &Group) -> bool {
    g.is_elementary_abelian_2()
}

pub fn center_index(g: &Group) -> usize {
    g.center_index()
}

/// Checks that `table` is a group with identity 0 and returns it.
pub fn validate_group(table: CayleyTable) -> Result<Group> {
    let n = table.order();
    if let Some(x) = (0..n).find(|&x| table.get(0, x) != x || table.get(x, 0) != x) {
        return Err(Error::NoIdentity(x));
    }
    if let Some((a, b, c)) = table.associativity_witness() {
        return Err(Error::NotAssociative(a, b, c));
    }
    let mut inv = Vec::with_capacity(n);
    for x in 0..n {
        let y = (0..n)
            .find(|&y| table.get(x, y) == 0 && table.get(y, x) == 0)
            .ok_or(Error::MissingInverse(x))?;
        inv.push(y as u32);
    }
    let center = (0..n)
        .filter(|&z| (0..n).all(|x| table.get(z, x) == table.get(x, z)))
        .collect();
    Ok(Group {
        table,
        inv,
        center,
        spec: None,
    })
}

/// Builds one of the built-in groups.
pub fn build_group(spec: &GroupSpec) -> Result<Group> {
    spec.validate()?;
    let table = build_table(spec)?;
    Ok(validate_group(table)?.with_spec(spec.clone()))
}

fn build_table(spec: &GroupSpec) -> Result<CayleyTable> {
    match spec {
        GroupSpec::Cyclic(n) => CayleyTable::from_fn(*n, |a, b| (a + b) % n),
        GroupSpec::Dihedral(order) => {
            let m = order / 2;
            // index f*m + k stands for r^k s^f, and s r = r^-1 s
            CayleyTable::from_fn(*order, |a, b| {
                let (fa, ka) = (a / m, a % m);
                let (fb, kb) = (b / m, b % m);
                let k = if fa == 0 { ka + kb } else { ka + m - kb } % m;
                ((fa + fb) % 2) * m + k
            })
        }
        GroupSpec::Symmetric(m) => {
            let perms = permutations(*m);
            let index: HashMap<&[u8], usize> = perms
                .iter()
                .enumerate()
                .map(|(i, p)| (p.as_slice(), i))
                .collect();
            // (p q)(i) = p(q(i))
            CayleyTable::from_fn(perms.len(), |a, b| {
                let (p, q) = (&perms[a], &perms[b]);
                let composed: Vec<u8> = q.iter().map(|&qi| p[qi as usize]).collect();
                index[composed.as_slice()]
            })
        }
        GroupSpec::Quaternion8 => CayleyTable::from_fn(8, |a, b| {
            let (unit, sign) = quaternion_unit_product(a / 2, b / 2);
            let negative = (a % 2 == 1) ^ (b % 2 == 1) ^ sign;
            unit * 2 + negative as usize
        }),
        GroupSpec::Product(a, b) => {
            let ta = build_table(a)?;
            let tb = build_table(b)?;
            let nb = tb.order();
            CayleyTable::from_fn(ta.order() * nb, |x, y| {
                ta.get(x / nb, y / nb) * nb + tb.get(x % nb, y % nb)
            })
        }
    }
}

/// Product of the basis units `1, i, j, k` (as 0..4); returns the unit and
/// whether the sign flips.
fn quaternion_unit_product(a: usize, b: usize) -> (usize, bool) {
    match (a, b) {
        (0, u) | (u, 0) => (u, false),
        (u, v) if u == v => (0, true),
        (1, 2) => (3, false),
        (2, 3) => (1, false),
        (3, 1) => (2, false),
        (2, 1) => (3, true),
        (3, 2) => (1, true),
        (1, 3) => (2, true),
        _ => unreachable!("quaternion unit out of range"),
    }
}

/// All permutations of `0..m` in lexicographic order.
fn permutations(m: usize) -> Vec<Vec<u8>> {
    let mut current: Vec<u8> = (0..m as u8).collect();
    let mut out = vec![current.clone()];
    loop {
        let Some(i) = (1..m).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..m).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
        out.push(current.clone());
    }
}
