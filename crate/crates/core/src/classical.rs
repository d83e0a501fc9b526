//! Combinatorial models of the classical types: subsets of `S` as
//! compositions, normalizer indices from closed formulas, and `B_n`/`D_n` as
//! signed permutations.
//!
//! Everything here is independent of the root-system machinery and serves as
//! a cross-check for it.

use num_bigint::BigUint;
use num_traits::One;

use crate::descriptor::{CoxeterType, Family};
use crate::error::{Error, Result};
use crate::partitions::{multiplicities, p_regular_cycle_type, partition_of};
use crate::subset::GeneratorSubset;

/// Lengths of the runs of consecutive points `lo..=hi`, where generator
/// `s_i` joins points `i` and `i + 1` exactly when it lies in `k`.
fn runs(lo: usize, hi: usize, k: GeneratorSubset) -> Vec<usize> {
    let mut out = Vec::new();
    let mut i = lo;
    while i <= hi {
        let mut len = 1;
        while i < hi && k.contains(i) {
            i += 1;
            len += 1;
        }
        out.push(len);
        i += 1;
    }
    out
}

/// The label of a subset of the generators of a classical group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetLabel {
    /// Rank of the factor of type `B_{n0}` / `D_{n0}` (always 0 in type `A`).
    pub n0: usize,
    /// Run lengths of the symmetric-group factor, left to right.
    pub composition: Vec<usize>,
    /// For `D_n`: whether `u ∈ K` while `s_1 ∉ K`, so that `K ⊆ S''`.
    pub in_s_double_prime: bool,
}

impl SubsetLabel {
    pub fn partition(&self) -> Vec<usize> {
        partition_of(&self.composition)
    }
}

/// Labels `K ⊆ S` for `A_{n}`, `B_n` or `D_n`.
pub fn subset_label(ty: CoxeterType, k: GeneratorSubset) -> Result<SubsetLabel> {
    let n = ty.rank;
    match ty.family {
        // A_{n}: generator i joins points i and i+1 on points 0..=n
        Family::A => Ok(SubsetLabel {
            n0: 0,
            composition: runs(0, n, k),
            in_s_double_prime: false,
        }),
        Family::B => {
            let n0 = if k.contains(0) {
                1 + (1..n).take_while(|&i| k.contains(i)).count()
            } else {
                0
            };
            Ok(SubsetLabel {
                n0,
                composition: runs(n0 + 1, n, k),
                in_s_double_prime: false,
            })
        }
        Family::D => {
            if k.contains(0) && k.contains(1) {
                let n0 = 2 + (2..n).take_while(|&i| k.contains(i)).count();
                Ok(SubsetLabel {
                    n0,
                    composition: runs(n0 + 1, n, k),
                    in_s_double_prime: false,
                })
            } else {
                let swapped = k.contains(0);
                let k1 = if swapped {
                    GeneratorSubset(k.without(0).mask() | 0b10)
                } else {
                    k
                };
                Ok(SubsetLabel {
                    n0: 0,
                    composition: runs(1, n, k1),
                    in_s_double_prime: swapped,
                })
            }
        }
        _ => Err(Error::WrongType {
            expected: "A, B or D",
            got: ty.to_string(),
        }),
    }
}

fn factorial(k: usize) -> BigUint {
    (1..=k as u64).fold(BigUint::one(), |acc, i| acc * i)
}

/// `[N_W(W_K) : W_K]` from the label of `K`:
/// `∏ a_i!` in type `A`, `2^t ∏ a_i!` in type `B`, and the `D_n` formula of
/// [`d_type_normalizer_oracle`].
pub fn normalizer_index_formula(ty: CoxeterType, k: GeneratorSubset) -> Result<BigUint> {
    let label = subset_label(ty, k)?;
    let mu = label.partition();
    let mult = multiplicities(&mu);
    let prod = mult.iter().fold(BigUint::one(), |acc, &a| acc * factorial(a));
    match ty.family {
        Family::A => Ok(prod),
        Family::B => Ok(prod << mu.len()),
        _ => d_type_normalizer_oracle(ty.rank, &mu),
    }
}

/// `2^{m_1} m_1! ⋯ 2^{m_n} m_n! · a` for a `D_n` label `μ = (1^{m_1} … n^{m_n})`,
/// with `a = 1/2` when `μ ⊢ n` has an odd part and `a = 1` otherwise.
pub fn d_type_normalizer_oracle(n: usize, mu: &[usize]) -> Result<BigUint> {
    let m: usize = mu.iter().sum();
    if m > n || m + 1 == n || mu.contains(&0) {
        return Err(Error::InvalidPartition(mu.to_vec()));
    }
    let mut value = multiplicities(mu)
        .iter()
        .fold(BigUint::one(), |acc, &a| (acc * factorial(a)) << a);
    if m == n && mu.iter().any(|x| x % 2 == 1) {
        value >>= 1;
    }
    Ok(value)
}

/// Whether `K` is `p`-special: the label of `K` has no part divisible by `p`.
pub fn p_special(ty: CoxeterType, k: GeneratorSubset, p: u64) -> Result<bool> {
    if !matches!(ty.family, Family::B | Family::D) {
        return Err(Error::WrongType {
            expected: "B or D",
            got: ty.to_string(),
        });
    }
    let label = subset_label(ty, k)?;
    Ok(label.composition.iter().all(|&x| !(x as u64).is_multiple_of(p)))
}

/// Cycle type of the `p`-regular part of `c_K` in type `A`, from the
/// composition of `K`.
pub fn type_a_p_regular_type(ty: CoxeterType, k: GeneratorSubset, p: u64) -> Result<Vec<usize>> {
    if ty.family != Family::A {
        return Err(Error::WrongType {
            expected: "A",
            got: ty.to_string(),
        });
    }
    let label = subset_label(ty, k)?;
    Ok(p_regular_cycle_type(&label.partition(), p as usize))
}

/// A signed permutation of `{±1, …, ±n}`, stored as the images of `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedPerm(pub Vec<i32>);

/// A cycle of a signed permutation: its length on `{1..n}` and whether
/// following it once around flips the sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedCycle {
    pub length: usize,
    pub negative: bool,
}

impl SignedPerm {
    pub fn identity(n: usize) -> Self {
        Self((1..=n as i32).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, x: i32) -> i32 {
        let y = self.0[x.unsigned_abs() as usize - 1];
        if x < 0 {
            -y
        } else {
            y
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        Self(other.0.iter().map(|&x| self.apply(x)).collect())
    }

    pub fn pow(&self, k: u64) -> Self {
        let mut acc = Self::identity(self.degree());
        for _ in 0..k {
            acc = self.compose(&acc);
        }
        acc
    }

    pub fn order(&self) -> u64 {
        let id = Self::identity(self.degree());
        let mut x = self.clone();
        let mut k = 1;
        while x != id {
            x = self.compose(&x);
            k += 1;
        }
        k
    }

    /// The power of `self` of order prime to `p` whose cofactor has `p`-power
    /// order.
    pub fn p_regular_part(&self, p: u64) -> Self {
        let n = self.order();
        let mut pa = 1;
        while (n / pa).is_multiple_of(p) {
            pa *= p;
        }
        let m = n / pa;
        // the exponent e ≡ 0 mod p^a, e ≡ 1 mod m
        let e = (0..n).step_by(pa as usize).find(|e| e % m == 1 % m).unwrap_or(0);
        self.pow(e)
    }

    /// Cycles on `{1..n}`, sorted.
    pub fn cycle_type(&self) -> Vec<SignedCycle> {
        let n = self.degree();
        let mut seen = vec![false; n + 1];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut x = start as i32;
            let mut len = 0;
            loop {
                seen[x.unsigned_abs() as usize] = true;
                x = self.apply(x);
                len += 1;
                if x.unsigned_abs() as usize == start {
                    break;
                }
            }
            out.push(SignedCycle {
                length: len,
                negative: x < 0,
            });
        }
        out.sort();
        out
    }

    /// For an element with only positive cycles, all of even length, the
    /// parity of the sign changes needed to conjugate it (inside `B_n`) to an
    /// unsigned permutation; `None` for every other element.
    ///
    /// Such classes of `B_n` split into two classes of `D_n`, told apart by
    /// this parity.
    pub fn d_split_parity(&self) -> Option<bool> {
        let ct = self.cycle_type();
        if ct.iter().any(|c| c.negative || c.length % 2 == 1) {
            return None;
        }
        let n = self.degree();
        let mut sign = vec![0i32; n + 1];
        let mut flips = 0;
        for start in 1..=n {
            if sign[start] != 0 {
                continue;
            }
            sign[start] = 1;
            let mut x = start;
            loop {
                let y = self.apply(x as i32);
                let next = y.unsigned_abs() as usize;
                if next == start {
                    break;
                }
                sign[next] = sign[x] * y.signum();
                if sign[next] < 0 {
                    flips += 1;
                }
                x = next;
            }
        }
        Some(flips % 2 == 1)
    }
}

/// Generator `s` of `B_n` or `D_n` as a signed permutation.
pub fn signed_generator(ty: CoxeterType, s: usize) -> Result<SignedPerm> {
    let n = ty.rank;
    let mut x = SignedPerm::identity(n);
    match (ty.family, s) {
        (Family::B, 0) => x.0[0] = -1,
        (Family::D, 0) => {
            x.0[0] = -2;
            x.0[1] = -1;
        }
        (Family::B | Family::D, i) if i < n => x.0.swap(i - 1, i),
        _ => {
            return Err(Error::WrongType {
                expected: "B or D",
                got: ty.to_string(),
            })
        }
    }
    Ok(x)
}

/// `c_K` (the ascending product of the generators in `K`) as a signed
/// permutation.
pub fn signed_coxeter_element(ty: CoxeterType, k: GeneratorSubset) -> Result<SignedPerm> {
    let mut acc = SignedPerm::identity(ty.rank);
    for s in k.indices() {
        acc = acc.compose(&signed_generator(ty, s)?);
    }
    Ok(acc)
}

/// Conjugacy invariant of a signed permutation in `B_n` (`split = None`) or
/// `D_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedClass {
    pub cycles: Vec<SignedCycle>,
    pub split: Option<bool>,
}

pub fn signed_class(ty: CoxeterType, x: &SignedPerm) -> SignedClass {
    SignedClass {
        cycles: x.cycle_type(),
        split: if ty.family == Family::D {
            x.d_split_parity()
        } else {
            None
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(s: &str) -> CoxeterType {
        s.parse().unwrap()
    }

    fn set(idx: &[usize]) -> GeneratorSubset {
        GeneratorSubset::from_indices(idx.iter().copied())
    }

    #[test]
    fn labels() {
        assert_eq!(subset_label(ty("A2"), set(&[0])).unwrap().composition, vec![2, 1]);
        assert_eq!(subset_label(ty("A2"), set(&[1])).unwrap().composition, vec![1, 2]);
        let b = subset_label(ty("B4"), set(&[0, 1, 3])).unwrap();
        assert_eq!((b.n0, b.composition), (2, vec![2]));
        let d = subset_label(ty("D4"), set(&[0, 3])).unwrap();
        assert_eq!((d.n0, d.composition.clone(), d.in_s_double_prime), (0, vec![2, 2], true));
        let d = subset_label(ty("D5"), set(&[0, 1, 2])).unwrap();
        assert_eq!((d.n0, d.composition), (3, vec![1, 1]));
    }

    #[test]
    fn d_normalizer_examples() {
        assert_eq!(d_type_normalizer_oracle(5, &[]).unwrap(), BigUint::one());
        assert_eq!(d_type_normalizer_oracle(5, &[5]).unwrap(), BigUint::one());
        assert_eq!(d_type_normalizer_oracle(4, &[2, 2]).unwrap(), BigUint::from(8u32));
        assert_eq!(d_type_normalizer_oracle(4, &[1, 1, 1, 1]).unwrap(), BigUint::from(192u32));
        assert!(d_type_normalizer_oracle(4, &[3]).is_err());
        assert!(d_type_normalizer_oracle(4, &[4, 1]).is_err());
    }

    #[test]
    fn p_special_examples() {
        assert!(p_special(ty("B3"), set(&[0, 1, 2]), 2).unwrap());
        // composition (2, 1): s1 joins points 1 and 2
        assert!(!p_special(ty("B3"), set(&[1]), 2).unwrap());
        assert!(p_special(ty("A3"), set(&[1]), 2).is_err());
    }

    #[test]
    fn signed_generators_satisfy_coxeter_relations() {
        for t in ["B3", "B4", "D4", "D5"] {
            let t = ty(t);
            let m = t.coxeter_matrix();
            for i in 0..t.rank {
                for j in 0..t.rank {
                    let x = signed_generator(t, i).unwrap().compose(&signed_generator(t, j).unwrap());
                    assert_eq!(x.order(), u64::from(m[i][j]), "{t} {i} {j}");
                }
            }
        }
    }

    #[test]
    fn split_parity() {
        let d4 = ty("D4");
        let a = signed_coxeter_element(d4, set(&[1, 3])).unwrap();
        let b = signed_coxeter_element(d4, set(&[0, 3])).unwrap();
        assert_eq!(a.cycle_type(), b.cycle_type());
        assert_eq!(a.d_split_parity(), Some(false));
        assert_eq!(b.d_split_parity(), Some(true));
    }
}
