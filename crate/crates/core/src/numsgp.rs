//! Numerical semigroups: membership, conductor, gaps, Apéry sets, symmetry.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A numerical semigroup `H = <a_1, ..., a_l>` with a membership table below
/// its conductor. Generators are stored in minimal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
    conductor: u64,
    member: Vec<bool>,
}

impl NumericalSemigroup {
    pub fn new(gens: &[u64]) -> Result<Self> {
        let mut gens: Vec<u64> = gens.iter().copied().filter(|&g| g > 0).collect();
        if gens.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        gens.sort_unstable();
        gens.dedup();
        let g = gens.iter().fold(0u64, |acc, &x| acc.gcd(&x));
        if g != 1 {
            return Err(Error::GcdNotOne(g));
        }

        // Every run of `m` consecutive members (m = multiplicity) implies all
        // later integers are members, so the scan can stop there.
        let m = gens[0] as usize;
        let mut table = vec![true];
        let mut run = if m == 1 { 1 } else { 0 };
        let mut last_gap: i64 = -1;
        let mut n = 1usize;
        while run < m {
            let hit = gens
                .iter()
                .any(|&g| (g as usize) <= n && table[n - g as usize]);
            table.push(hit);
            if hit {
                run += 1;
            } else {
                run = 0;
                last_gap = n as i64;
            }
            n += 1;
        }
        let conductor = (last_gap + 1) as u64;
        table.truncate(conductor as usize);
        let mut sg = NumericalSemigroup {
            generators: Vec::new(),
            conductor,
            member: table,
        };
        sg.generators = sg.minimal_generators_from(&gens);
        Ok(sg)
    }

    /// Rebuilds a semigroup from a membership predicate on `[0, bound)`,
    /// assuming every integer `>= bound` is a member. Fails unless the set is
    /// additively closed and contains 0.
    pub fn from_members(bound: u64, is_member: impl Fn(u64) -> bool) -> Result<Self> {
        let mem = |n: u64| n >= bound || is_member(n);
        if !mem(0) {
            return Err(Error::NotASemigroup);
        }
        for x in 1..bound {
            if !mem(x) {
                continue;
            }
            for y in x..bound {
                if mem(y) && !mem(x + y) {
                    return Err(Error::NotASemigroup);
                }
            }
        }
        let mut gens: Vec<u64> = (1..bound).filter(|&n| mem(n)).collect();
        gens.extend(bound..bound.max(1) * 2 + 1);
        let sg = NumericalSemigroup::new(&gens)?;
        if (0..bound).any(|n| sg.contains(n as i64) != mem(n)) {
            return Err(Error::NotASemigroup);
        }
        Ok(sg)
    }

    fn minimal_generators_from(&self, gens: &[u64]) -> Vec<u64> {
        // g is redundant iff g - h is a member for some other member h in (0, g)
        gens.iter()
            .copied()
            .filter(|&g| {
                !(1..g).any(|h| self.contains(h as i64) && self.contains((g - h) as i64))
            })
            .collect()
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Largest gap, or -1 when the semigroup is all of N.
    pub fn frobenius(&self) -> i64 {
        self.conductor as i64 - 1
    }

    pub fn multiplicity(&self) -> u64 {
        self.generators[0]
    }

    pub fn contains(&self, n: i64) -> bool {
        if n < 0 {
            return false;
        }
        let n = n as u64;
        n >= self.conductor || self.member[n as usize]
    }

    pub fn contains_usize(&self, n: usize) -> bool {
        n as u64 >= self.conductor || self.member[n]
    }

    pub fn gaps(&self) -> Vec<u64> {
        (0..self.conductor).filter(|&n| !self.member[n as usize]).collect()
    }

    pub fn genus(&self) -> usize {
        self.gaps().len()
    }

    /// Members below `bound`, in increasing order.
    pub fn members_below(&self, bound: usize) -> impl Iterator<Item = usize> + '_ {
        (0..bound).filter(move |&n| self.contains_usize(n))
    }

    /// `apery[i]` is the least member congruent to `i` modulo `m`.
    pub fn apery(&self, m: u64) -> Result<Vec<u64>> {
        if m == 0 || !self.contains(m as i64) {
            return Err(Error::NotAMember(m as i64));
        }
        Ok((0..m)
            .map(|i| {
                (0..)
                    .map(|k| i + k * m)
                    .find(|&n| self.contains(n as i64))
                    .expect("residue class meets the semigroup")
            })
            .collect())
    }

    pub fn is_symmetric(&self) -> bool {
        let f = self.frobenius();
        (0..self.conductor as i64).all(|x| self.contains(x) != self.contains(f - x))
    }
}

impl fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(u64::to_string).collect();
        write!(f, "<{}>", gens.join(","))
    }
}

impl FromStr for NumericalSemigroup {
    type Err = Error;

    /// Parses literals such as `<5,11>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidSemigroup(s.to_string());
        let inner = s
            .trim()
            .strip_prefix('<')
            .and_then(|t| t.strip_suffix('>'))
            .ok_or_else(bad)?;
        let gens = inner
            .split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        if gens.contains(&0) {
            return Err(bad());
        }
        NumericalSemigroup::new(&gens)
    }
}

impl Serialize for NumericalSemigroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sg(g: &[u64]) -> NumericalSemigroup {
        NumericalSemigroup::new(g).unwrap()
    }

    #[test]
    fn conductors() {
        assert_eq!(sg(&[5, 11]).conductor(), 40);
        assert_eq!(sg(&[5, 6, 9]).conductor(), 14);
        assert_eq!(sg(&[5, 6]).frobenius(), 19);
        assert_eq!(sg(&[5, 11]).frobenius(), 39);
        assert_eq!(sg(&[1]).frobenius(), -1);
        assert_eq!(sg(&[2, 3]).conductor(), 2);
    }

    #[test]
    fn rejects_bad_generators() {
        assert_eq!(NumericalSemigroup::new(&[]), Err(Error::EmptyGenerators));
        assert_eq!(NumericalSemigroup::new(&[4, 6]), Err(Error::GcdNotOne(2)));
    }

    #[test]
    fn membership() {
        let h = sg(&[5, 11]);
        assert!(!h.contains(6));
        assert!(!h.contains(23));
        assert!(h.contains(0));
        assert!(!h.contains(-5));
        assert!(h.contains(1000));
        assert!(h.contains(33));
    }

    #[test]
    fn symmetry() {
        assert!(!sg(&[5, 6, 19]).is_symmetric());
        assert!(!sg(&[5, 6, 13]).is_symmetric());
        assert!(!sg(&[5, 6, 13, 14]).is_symmetric());
        assert!(!sg(&[5, 6, 14]).is_symmetric());
        assert!(sg(&[5, 6]).is_symmetric());
        assert!(sg(&[5, 6, 9]).is_symmetric());
    }

    #[test]
    fn gaps_and_apery() {
        let h = sg(&[5, 11]);
        // brute-force gap count below the conductor
        let brute = (0..40)
            .filter(|&n| !(0..=8).any(|i| (0..=4).any(|j| 5 * i + 11 * j == n)))
            .count();
        assert_eq!(brute, 20);
        assert_eq!(h.gaps().len(), brute);
        assert!(sg(&[5, 6, 9]).gaps().contains(&13));
        assert_eq!(h.apery(5).unwrap(), vec![0, 11, 22, 33, 44]);
        assert_eq!(h.apery(6), Err(Error::NotAMember(6)));
    }

    #[test]
    fn minimal_generators_and_literals() {
        assert_eq!(sg(&[5, 6, 10, 11, 12]).generators(), &[5, 6]);
        let h: NumericalSemigroup = "<5, 11>".parse().unwrap();
        assert_eq!(h.to_string(), "<5,11>");
        assert_eq!(h.multiplicity(), 5);
        assert!("5,11".parse::<NumericalSemigroup>().is_err());
        assert!("<5,x>".parse::<NumericalSemigroup>().is_err());
    }

    #[test]
    fn from_members_roundtrip() {
        let h = sg(&[5, 6]);
        let back = NumericalSemigroup::from_members(30, |n| h.contains(n as i64)).unwrap();
        assert_eq!(back, h);
        assert_eq!(
            NumericalSemigroup::from_members(10, |n| n == 0 || n == 3),
            Err(Error::NotASemigroup)
        );
    }

    proptest! {
        #[test]
        fn two_generated_frobenius(a in 2u64..15, b in 2u64..25) {
            prop_assume!(a.gcd(&b) == 1);
            let h = sg(&[a, b]);
            prop_assert_eq!(h.frobenius(), (a * b) as i64 - a as i64 - b as i64);
            prop_assert!(h.is_symmetric());
        }

        #[test]
        fn symmetry_matches_pairing(gens in proptest::collection::vec(2u64..20, 1..4)) {
            let g = gens.iter().fold(0u64, |acc, &x| acc.gcd(&x));
            prop_assume!(g == 1);
            let h = sg(&gens);
            let f = h.frobenius();
            let pairing = (0..=f).all(|x| h.contains(x) != h.contains(f - x));
            prop_assert_eq!(h.is_symmetric(), pairing);
        }

        #[test]
        fn closed_under_addition(x in 0i64..80, y in 0i64..80) {
            let h = sg(&[5, 11]);
            if h.contains(x) && h.contains(y) {
                prop_assert!(h.contains(x + y));
            }
        }
    }
}
