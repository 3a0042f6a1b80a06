use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;

/// Isomorphism type of `Gal(Q(E[n])/Q)`, as far as it is determined.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupType {
    /// Invariant factors `d1 | d2 | ...`; empty for the trivial group.
    Abelian(Vec<u32>),
    S3,
    /// Non-abelian, structure not computed.
    NonAbelian,
}

fn factor_u32(mut n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Canonical invariant factors of `Z/m1 x Z/m2 x ...`.
pub fn invariant_factors(cyclic: &[u32]) -> Vec<u32> {
    let mut primary: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for &m in cyclic {
        for (p, e) in factor_u32(m) {
            primary.entry(p).or_default().push(p.pow(e));
        }
    }
    let len = primary.values().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![1u32; len];
    for mut powers in primary.into_values() {
        powers.sort_unstable_by(|a, b| b.cmp(a));
        for (i, q) in powers.into_iter().enumerate() {
            out[len - 1 - i] *= q;
        }
    }
    out
}

impl GroupType {
    pub fn trivial() -> Self {
        GroupType::Abelian(Vec::new())
    }

    pub fn cyclic(m: u32) -> Self {
        GroupType::Abelian(invariant_factors(&[m]))
    }

    /// `(Z/2)^k`.
    pub fn elementary(k: u32) -> Self {
        GroupType::Abelian(vec![2; k as usize])
    }

    pub fn from_cyclic_factors(ms: &[u32]) -> Self {
        GroupType::Abelian(invariant_factors(ms))
    }

    pub fn is_abelian(&self) -> bool {
        matches!(self, GroupType::Abelian(_))
    }

    pub fn order(&self) -> Option<u64> {
        match self {
            GroupType::Abelian(f) => Some(f.iter().map(|&m| m as u64).product()),
            GroupType::S3 => Some(6),
            GroupType::NonAbelian => None,
        }
    }

    /// `k` when the group is `(Z/2)^k`.
    pub fn elementary_rank(&self) -> Option<u32> {
        match self {
            GroupType::Abelian(f) if f.iter().all(|&m| m == 2) => Some(f.len() as u32),
            _ => None,
        }
    }

    /// `G x Z/2`.
    pub fn times_z2(&self) -> Option<GroupType> {
        match self {
            GroupType::Abelian(f) => {
                let mut ms = f.clone();
                ms.push(2);
                Some(GroupType::from_cyclic_factors(&ms))
            }
            _ => None,
        }
    }

    /// `G = G'`, `G = G' x Z/2` or `G x Z/2 = G'`.
    pub fn within_one_z2(&self, other: &GroupType) -> bool {
        self == other || self.times_z2().as_ref() == Some(other) || other.times_z2().as_ref() == Some(self)
    }
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupType::S3 => write!(f, "S3"),
            GroupType::NonAbelian => write!(f, "non-abelian"),
            GroupType::Abelian(fs) if fs.is_empty() => write!(f, "0"),
            GroupType::Abelian(fs) => {
                let mut parts = Vec::new();
                let mut i = 0;
                while i < fs.len() {
                    let j = fs[i..].iter().take_while(|&&m| m == fs[i]).count();
                    parts.push(if j == 1 { format!("Z/{}", fs[i]) } else { format!("(Z/{})^{}", fs[i], j) });
                    i += j;
                }
                write!(f, "{}", parts.join(" x "))
            }
        }
    }
}

impl Serialize for GroupType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Groups that can occur as an abelian `Gal(Q(E[n])/Q)` for `E/Q`.
pub fn theorem_groups(n: u32) -> Vec<GroupType> {
    match n {
        2 => vec![GroupType::trivial(), GroupType::cyclic(2), GroupType::cyclic(3)],
        3 => vec![GroupType::elementary(1), GroupType::elementary(2)],
        4 => (1..=4).map(GroupType::elementary).collect(),
        5 => vec![
            GroupType::cyclic(4),
            GroupType::from_cyclic_factors(&[2, 4]),
            GroupType::from_cyclic_factors(&[4, 4]),
        ],
        6 => vec![GroupType::elementary(2), GroupType::elementary(3)],
        8 => (4..=6).map(GroupType::elementary).collect(),
        _ => Vec::new(),
    }
}

pub fn in_theorem_table(n: u32, g: &GroupType) -> bool {
    theorem_groups(n).contains(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display() {
        assert_eq!(GroupType::trivial().to_string(), "0");
        assert_eq!(GroupType::elementary(3).to_string(), "(Z/2)^3");
        assert_eq!(GroupType::from_cyclic_factors(&[4, 2]).to_string(), "Z/2 x Z/4");
        assert_eq!(GroupType::from_cyclic_factors(&[4, 4]).to_string(), "(Z/4)^2");
        assert_eq!(GroupType::from_cyclic_factors(&[2, 3]).to_string(), "Z/6");
        assert_eq!(GroupType::S3.to_string(), "S3");
    }

    #[test]
    fn invariant_factor_normal_form() {
        assert_eq!(invariant_factors(&[6, 4]), vec![2, 12]);
        assert_eq!(invariant_factors(&[2, 2, 4]), vec![2, 2, 4]);
        assert_eq!(invariant_factors(&[1, 1]), Vec::<u32>::new());
        assert_eq!(invariant_factors(&[9, 3, 5]), vec![3, 45]);
    }

    #[test]
    fn one_z2_relation() {
        let z4 = GroupType::cyclic(4);
        let z2z4 = GroupType::from_cyclic_factors(&[2, 4]);
        assert!(z4.within_one_z2(&z2z4) && z2z4.within_one_z2(&z4));
        assert!(!z4.within_one_z2(&GroupType::from_cyclic_factors(&[4, 4])));
        assert!(GroupType::elementary(2).within_one_z2(&GroupType::elementary(3)));
        assert!(!GroupType::elementary(2).within_one_z2(&GroupType::elementary(4)));
    }

    #[test]
    fn table_orders_are_multiples_of_phi() {
        for (n, phi) in [(2, 1), (3, 2), (4, 2), (5, 4), (6, 2), (8, 4)] {
            for g in theorem_groups(n) {
                assert_eq!(g.order().unwrap() % phi, 0, "{n} {g}");
            }
        }
        assert!(theorem_groups(7).is_empty());
    }
}
