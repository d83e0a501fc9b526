//! Coxeter type descriptors and their Coxeter matrices.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The irreducible families handled by the workbench.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    D,
    E,
    F,
    H,
    I2,
}

/// An irreducible finite Coxeter type such as `A4`, `I2(7)` or `E6`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CoxeterType {
    pub family: Family,
    pub rank: usize,
    /// Only meaningful for [`Family::I2`].
    pub m: u32,
}

/// Largest number of generators we accept; subsets are stored as `u16` masks.
pub const MAX_RANK: usize = 12;

/// Largest dihedral parameter; roots are indexed by `u8`.
pub const MAX_DIHEDRAL_M: u32 = 127;

impl CoxeterType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let t = Self { family, rank, m: 0 };
        t.validate()?;
        Ok(t)
    }

    pub fn dihedral(m: u32) -> Result<Self> {
        let t = Self {
            family: Family::I2,
            rank: 2,
            m,
        };
        t.validate()?;
        Ok(t)
    }

    fn validate(&self) -> Result<()> {
        let ok = match self.family {
            Family::A => self.rank >= 1,
            Family::B => self.rank >= 2,
            Family::D => self.rank >= 4,
            Family::E => (6..=8).contains(&self.rank),
            Family::F => self.rank == 4,
            Family::H => self.rank == 3 || self.rank == 4,
            Family::I2 => self.rank == 2 && self.m >= 3 && self.m <= MAX_DIHEDRAL_M,
        };
        if !ok || self.rank > MAX_RANK {
            return Err(Error::UnsupportedType(self.to_string()));
        }
        Ok(())
    }

    /// Whether the type is only available behind the extended flag.
    pub fn is_extended(&self) -> bool {
        matches!(self.family, Family::E) && self.rank >= 7
    }

    /// Closed-form group order.
    pub fn order(&self) -> BigUint {
        let n = self.rank as u64;
        let fact = |k: u64| (1..=k).fold(BigUint::one(), |acc, i| acc * i);
        match self.family {
            Family::A => fact(n + 1),
            Family::B => fact(n) << n,
            Family::D => fact(n) << (n - 1),
            Family::E => BigUint::from(match n {
                6 => 51_840u64,
                7 => 2_903_040,
                _ => 696_729_600,
            }),
            Family::F => BigUint::from(1152u32),
            Family::H => BigUint::from(if n == 3 { 120u32 } else { 14_400 }),
            Family::I2 => BigUint::from(2 * self.m),
        }
    }

    /// Coxeter matrix in the generator numbering used throughout the crate.
    ///
    /// * `A_n`: the path `0 - 1 - ... - (n-1)`.
    /// * `B_n`: generator 0 is the sign change `s0`, with `m(s0, s1) = 4`.
    /// * `D_n`: generator 0 is `u = s0 s1 s0`, attached to `s2`; generator
    ///   `i >= 1` is `s_i`.
    /// * `E_n`: Bourbaki numbering shifted down by one (node 1 is the branch
    ///   neighbour of node 3).
    /// * `F4`: `0 - 1 = 2 - 3`; `H_n`: the 5 sits on the edge `0 - 1`.
    pub fn coxeter_matrix(&self) -> Vec<Vec<u32>> {
        let n = self.rank;
        let mut m = vec![vec![2u32; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        let mut edge = |i: usize, j: usize, v: u32| {
            m[i][j] = v;
            m[j][i] = v;
        };
        match self.family {
            Family::A => (1..n).for_each(|i| edge(i - 1, i, 3)),
            Family::B => {
                edge(0, 1, 4);
                (2..n).for_each(|i| edge(i - 1, i, 3));
            }
            Family::D => {
                edge(0, 2, 3);
                (2..n).for_each(|i| edge(i - 1, i, 3));
            }
            Family::E => {
                // Bourbaki: 1-3-4-5-6(-7-8), 2-4.
                edge(0, 2, 3);
                edge(1, 3, 3);
                (3..n).for_each(|i| edge(i - 1, i, 3));
            }
            Family::F => {
                edge(0, 1, 3);
                edge(1, 2, 4);
                edge(2, 3, 3);
            }
            Family::H => {
                edge(0, 1, 5);
                (2..n).for_each(|i| edge(i - 1, i, 3));
            }
            Family::I2 => edge(0, 1, self.m),
        }
        m
    }

    /// Permutations `σ` of the generators with `m(σi, σj) = m(i, j)`,
    /// identity first.
    pub fn diagram_automorphisms(&self) -> Vec<Vec<usize>> {
        fn extend(m: &[Vec<u32>], image: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
            let i = image.len();
            if i == m.len() {
                out.push(image.clone());
                return;
            }
            for t in 0..m.len() {
                if !used[t] && (0..i).all(|j| m[i][j] == m[t][image[j]]) {
                    used[t] = true;
                    image.push(t);
                    extend(m, image, used, out);
                    image.pop();
                    used[t] = false;
                }
            }
        }
        let m = self.coxeter_matrix();
        let mut out = Vec::new();
        extend(&m, &mut Vec::new(), &mut vec![false; self.rank], &mut out);
        out
    }
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::I2 => write!(f, "I2({})", self.m),
            fam => {
                let c = match fam {
                    Family::A => 'A',
                    Family::B => 'B',
                    Family::D => 'D',
                    Family::E => 'E',
                    Family::F => 'F',
                    Family::H => 'H',
                    Family::I2 => unreachable!(),
                };
                write!(f, "{c}{}", self.rank)
            }
        }
    }
}

impl FromStr for CoxeterType {
    type Err = Error;

    /// Accepts `A4`, `B3`, `D5`, `E6`, `F4`, `H3`, `I2:7` and `I2(7)`
    /// (case-insensitive family letter).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let err = || Error::Parse(s.to_string());
        let upper = s.to_ascii_uppercase();
        if let Some(rest) = upper.strip_prefix("I2") {
            let m = rest
                .strip_prefix(':')
                .or_else(|| rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')))
                .ok_or_else(err)?;
            let m: u32 = m.parse().map_err(|_| err())?;
            return Self::dihedral(m);
        }
        let mut chars = upper.chars();
        let family = match chars.next().ok_or_else(err)? {
            'A' => Family::A,
            'B' => Family::B,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'H' => Family::H,
            _ => return Err(err()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| err())?;
        Self::new(family, rank)
    }
}

impl Serialize for CoxeterType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CoxeterType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_spellings() {
        assert_eq!("A4".parse::<CoxeterType>().unwrap().to_string(), "A4");
        assert_eq!("i2:7".parse::<CoxeterType>().unwrap().to_string(), "I2(7)");
        assert_eq!("I2(5)".parse::<CoxeterType>().unwrap().m, 5);
        assert_eq!("h4".parse::<CoxeterType>().unwrap().rank, 4);
    }

    #[test]
    fn diagram_automorphism_counts() {
        let count = |s: &str| s.parse::<CoxeterType>().unwrap().diagram_automorphisms().len();
        let cases = [("A1", 1), ("A5", 2), ("B4", 1), ("D4", 6), ("D5", 2), ("E6", 2), ("E7", 1), ("F4", 2), ("H4", 1), ("I2:7", 2)];
        for (ty, n) in cases {
            assert_eq!(count(ty), n, "{ty}");
        }
        let f4 = "F4".parse::<CoxeterType>().unwrap().diagram_automorphisms();
        assert_eq!(f4, [vec![0, 1, 2, 3], vec![3, 2, 1, 0]]);
    }

    #[test]
    fn rejects_unsupported() {
        for bad in ["D3", "B1", "A0", "F5", "H2", "I2:2", "E9", "G2", "X", "I2:", ""] {
            assert!(bad.parse::<CoxeterType>().is_err(), "{bad} should not parse");
        }
    }

    #[test]
    fn closed_form_orders() {
        let order = |s: &str| s.parse::<CoxeterType>().unwrap().order();
        assert_eq!(order("A2"), BigUint::from(6u32));
        assert_eq!(order("B3"), BigUint::from(48u32));
        assert_eq!(order("D4"), BigUint::from(192u32));
        assert_eq!(order("F4"), BigUint::from(1152u32));
        assert_eq!(order("H4"), BigUint::from(14400u32));
        assert_eq!(order("E6"), BigUint::from(51840u32));
        assert_eq!(order("I2:7"), BigUint::from(14u32));
    }

    #[test]
    fn coxeter_matrix_is_symmetric() {
        for s in ["A5", "B4", "D5", "E6", "F4", "H4", "I2:8"] {
            let m = s.parse::<CoxeterType>().unwrap().coxeter_matrix();
            for i in 0..m.len() {
                for j in 0..m.len() {
                    assert_eq!(m[i][j], m[j][i]);
                }
            }
        }
    }
}
