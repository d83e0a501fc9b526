//! Integer partitions: counts, restricted counts and enumeration.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// `π(n)`, the coefficient of `q^n` in `∏ 1/(1 - q^k)`.
pub fn partitions_count(n: usize) -> BigUint {
    count_with_parts(n, |_| true, usize::MAX)
}

/// `π(n, p)`: partitions of `n` in which no part occurs `p` or more times.
pub fn restricted_count(n: usize, p: usize) -> BigUint {
    count_with_parts(n, |_| true, p - 1)
}

/// Partitions of `n` with no part divisible by `p`.
pub fn no_part_divisible_count(n: usize, p: usize) -> BigUint {
    count_with_parts(n, |k| k % p != 0, usize::MAX)
}

/// Coefficient of `q^n` in `∏_{k allowed} (1 + q^k + … + q^{k·max_mult})`.
fn count_with_parts(n: usize, allowed: impl Fn(usize) -> bool, max_mult: usize) -> BigUint {
    let mut dp = vec![BigUint::zero(); n + 1];
    dp[0] = BigUint::one();
    for k in (1..=n).filter(|&k| allowed(k)) {
        let mut next = dp.clone();
        for total in 0..=n {
            if dp[total].is_zero() {
                continue;
            }
            let mut m = 1;
            while m <= max_mult && total + m * k <= n {
                next[total + m * k] += &dp[total];
                m += 1;
            }
        }
        dp = next;
    }
    dp.swap_remove(n)
}

/// All partitions of `n`, each with parts in decreasing order, in reverse
/// lexicographic order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// The parts of a composition, sorted into a partition.
pub fn partition_of(composition: &[usize]) -> Vec<usize> {
    let mut p: Vec<usize> = composition.iter().copied().filter(|&x| x > 0).collect();
    p.sort_unstable_by(|a, b| b.cmp(a));
    p
}

/// Multiplicity of each part: `a[i]` is how often `i` occurs.
pub fn multiplicities(partition: &[usize]) -> Vec<usize> {
    let max = partition.iter().copied().max().unwrap_or(0);
    let mut a = vec![0; max + 1];
    for &x in partition {
        a[x] += 1;
    }
    a
}

/// Cycle type of the `p`-regular part of a permutation of cycle type `λ`:
/// a cycle of length `p^a·m` with `p ∤ m` becomes `p^a` cycles of length `m`.
pub fn p_regular_cycle_type(lambda: &[usize], p: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for &l in lambda {
        let (mut m, mut pa) = (l, 1);
        while m % p == 0 {
            m /= p;
            pa *= p;
        }
        out.extend(std::iter::repeat_n(m, pa));
    }
    partition_of(&out)
}
