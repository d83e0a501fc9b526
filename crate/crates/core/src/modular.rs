//! Decomposition matrices and the `→_p` relation.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::classical::{self, signed_class, signed_coxeter_element};
use crate::descriptor::Family;
use crate::error::{Error, Result};
use crate::marks::MarksTable;
use crate::ring::{is_prime, prime_divisors};
use crate::subset::GeneratorSubset;
use crate::workbench::Workbench;

/// The decomposition matrix for a prime `p`: rows indexed by `E`, columns by
/// `F = {L ∈ E : p ∤ β_LL}`; `d_KL = 1` iff columns `K` and `L` of the table
/// of marks agree mod `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionMatrix {
    pub p: u64,
    /// `F`, as indices into `E`.
    pub f: Vec<usize>,
    /// `entries[K][i]` is `d_{K, f[i]}`.
    pub entries: Vec<Vec<bool>>,
}

impl DecompositionMatrix {
    /// Position in `F` of the unique column with `d_KL = 1`.
    pub fn image(&self, k: usize) -> usize {
        self.entries[k].iter().position(|&x| x).expect("every row has a one")
    }

    pub fn s(&self) -> usize {
        self.f.len()
    }
}

pub fn decomposition_matrix(marks: &MarksTable, p: u64) -> Result<DecompositionMatrix> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let f = marks.p_regular_rows(p);
    let cols: Vec<Vec<u64>> = (0..marks.len()).map(|k| marks.column_mod(k, p)).collect();
    let mut entries = Vec::with_capacity(marks.len());
    for (k, col) in cols.iter().enumerate() {
        let row: Vec<bool> = f.iter().map(|&l| cols[l] == *col).collect();
        let ones = row.iter().filter(|&&x| x).count();
        if ones != 1 {
            return Err(Error::Internal(format!(
                "column {k} is congruent to {ones} columns of F modulo {p}"
            )));
        }
        entries.push(row);
    }
    Ok(DecompositionMatrix { p, f, entries })
}

/// The relation `K →_p L` and the equivalence it generates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowClasses {
    pub p: u64,
    /// `targets[K]`: all `L` with `K →_p L`; the first entry comes from the
    /// `p`-regular part of `c_K`, the rest ascend.
    pub targets: Vec<Vec<usize>>,
    /// Smallest member of each index's equivalence class.
    pub representative: Vec<usize>,
}

impl ArrowClasses {
    /// The equivalence classes, each ascending, ordered by representative.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        for (k, &rep) in self.representative.iter().enumerate() {
            match out.iter_mut().find(|c| c[0] == rep) {
                Some(c) => c.push(k),
                None => out.push(vec![k]),
            }
        }
        out
    }

    /// Row entry in the usual notation, with `number` translating indices to
    /// displayed row numbers: the targets, then `(r)` if the class
    /// representative `r` differs from the first target; a lone `.` when `K`
    /// only points to itself and represents its class.
    pub fn render(&self, k: usize, number: impl Fn(usize) -> usize) -> String {
        render_entry(
            number(k),
            &self.targets[k].iter().map(|&t| number(t)).collect::<Vec<_>>(),
            self.classes()
                .into_iter()
                .find(|c| c.contains(&k))
                .map(|c| c.iter().map(|&x| number(x)).min().unwrap())
                .unwrap(),
        )
    }
}

/// Formats one entry; `targets[0]` is kept first and the rest are sorted.
pub fn render_entry(k: usize, targets: &[usize], rep: usize) -> String {
    if targets == [k] && rep == k {
        return ".".to_string();
    }
    let mut rest: Vec<usize> = targets[1..].to_vec();
    rest.sort_unstable();
    let mut s = std::iter::once(targets[0])
        .chain(rest)
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ");
    if rep != targets[0] {
        s.push_str(&format!(" ({rep})"));
    }
    s
}

/// `K →_p L` whenever some `w` has closure class `K` and its `p`-regular
/// part has closure class `L`; one `w` per conjugacy class suffices.
pub fn p_arrow_classes(wb: &Workbench, p: u64) -> Result<ArrowClasses> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let g = wb.group();
    let data = wb.closure_data()?;
    let r = wb.classes().len();
    let mut sets: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); r];
    for (c, &w) in data.classes.representatives().iter().enumerate() {
        let from = data.closure[c];
        let to = data.closure_of(g.p_regular_part(w, p));
        sets[from].insert(to);
    }
    let mut targets = Vec::with_capacity(r);
    for (k, set) in sets.iter().enumerate() {
        let ck = g.coxeter_element(wb.classes().representative(k));
        let first = data.closure_of(g.p_regular_part(ck, p));
        if !set.contains(&first) {
            return Err(Error::Internal(format!("class {k}: missing arrow to {first}")));
        }
        let mut t = vec![first];
        t.extend(set.iter().copied().filter(|&x| x != first));
        targets.push(t);
    }
    // connected components of the arrows, labelled by their least member
    let mut parent: Vec<usize> = (0..r).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (k, t) in targets.iter().enumerate() {
        for &l in t {
            let (a, b) = (find(&mut parent, k), find(&mut parent, l));
            parent[a.max(b)] = a.min(b);
        }
    }
    let representative = (0..r).map(|k| find(&mut parent, k)).collect();
    Ok(ArrowClasses {
        p,
        targets,
        representative,
    })
}

/// Outcome of a batch of checks: each failure names the property and the
/// witnesses.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: usize,
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn check(&mut self, ok: bool, failure: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(failure());
        }
    }

    pub fn merge(&mut self, other: VerifyReport) {
        self.checks += other.checks;
        self.failures.extend(other.failures);
    }
}

/// Checks that the rows of `D` sharing a column are exactly the `→_p`
/// classes, together with the type-specific descriptions for `A_n`, `B_n`
/// and `D_n`.
pub fn verify_decomp_equals_arrow(wb: &Workbench, p: u64) -> Result<VerifyReport> {
    let d = decomposition_matrix(wb.marks(), p)?;
    let arrows = p_arrow_classes(wb, p)?;
    let r = wb.classes().len();
    let mut rep = VerifyReport::default();
    let g = wb.group();
    let data = wb.closure_data()?;
    for k in 0..r {
        let ck = g.coxeter_element(wb.classes().representative(k));
        rep.check(data.closure_of(ck) == k, || {
            format!("closure of <c_K> is not W_K for K = {}", wb.classes().representative(k))
        });
    }
    for k in 0..r {
        for l in 0..r {
            let by_d = d.image(k) == d.image(l);
            let by_arrow = arrows.representative[k] == arrows.representative[l];
            rep.check(by_d == by_arrow, || {
                format!("p = {p}: rows {k} and {l}: same column of D = {by_d}, same ->_p class = {by_arrow}")
            });
        }
    }
    rep.check(d.s() == wb.marks().rank_mod_p(p), || {
        format!("p = {p}: |F| = {} but the table of marks has p-rank {}", d.s(), wb.marks().rank_mod_p(p))
    });
    let mut distinct: Vec<Vec<u64>> = (0..r).map(|k| wb.marks().column_mod(k, p)).collect();
    distinct.sort();
    distinct.dedup();
    rep.check(distinct.len() == d.s(), || {
        format!("p = {p}: {} distinct columns mod p, s = {}", distinct.len(), d.s())
    });
    // conjugate p-regular parts of Coxeter elements force d_KL = 1
    for k in 0..r {
        for l in 0..r {
            let pk = g.p_regular_part(g.coxeter_element(wb.classes().representative(k)), p);
            let pl = g.p_regular_part(g.coxeter_element(wb.classes().representative(l)), p);
            if data.classes.class_of(pk) == data.classes.class_of(pl) {
                rep.check(d.image(k) == d.image(l), || {
                    format!("p = {p}: c_K, c_L have conjugate p-regular parts but d differs (K = {k}, L = {l})")
                });
            }
        }
    }
    rep.merge(verify_classical(wb, &d)?);
    Ok(rep)
}

fn verify_classical(wb: &Workbench, d: &DecompositionMatrix) -> Result<VerifyReport> {
    let ty = wb.coxeter_type();
    let p = d.p;
    let classes = wb.classes();
    let r = classes.len();
    let mut rep = VerifyReport::default();
    let full = GeneratorSubset::full(ty.rank);
    let s_class = classes.class_of(full);
    match ty.family {
        Family::A => {
            let n = ty.rank + 1;
            let types: Vec<Vec<usize>> = (0..r)
                .map(|k| classical::type_a_p_regular_type(ty, classes.representative(k), p))
                .collect::<Result<_>>()?;
            for k in 0..r {
                for l in 0..r {
                    let same = types[k] == types[l];
                    rep.check(same == (d.image(k) == d.image(l)), || {
                        format!("A{}: p = {p}: equal p-regular cycle types {same} for rows {k}, {l}", ty.rank)
                    });
                }
            }
            rep.check(BigUint::from(r) == crate::partitions::partitions_count(n), || {
                format!("r = {r} but pi({n}) = {}", crate::partitions::partitions_count(n))
            });
            let s = crate::partitions::restricted_count(n, p as usize);
            rep.check(BigUint::from(d.s()) == s, || format!("s = {} but pi({n}, {p}) = {s}", d.s()));
        }
        Family::B | Family::D if p == 2 => {
            let n = ty.rank;
            if ty.family == Family::B || n.is_multiple_of(2) {
                rep.check(d.f == vec![s_class], || format!("p = 2: F = {:?}, expected only S", d.f));
                rep.check((0..r).all(|k| d.entries[k] == [true]), || {
                    "p = 2: D is not the all-ones column".to_string()
                });
            } else {
                let s1 = classes.class_of(full.without(0));
                let mut expected_f = vec![s1, s_class];
                expected_f.sort_unstable();
                rep.check(d.f == expected_f, || format!("p = 2: F = {:?}, expected S' and S", d.f));
                for k in 0..r {
                    for (i, &l) in d.f.iter().enumerate() {
                        let expected = (l == s_class && k != s1) || (l == s1 && k == s1);
                        rep.check(d.entries[k][i] == expected, || {
                            format!("D{n}: p = 2: d_({k},{l}) should be {expected}")
                        });
                    }
                }
            }
        }
        Family::B | Family::D => {
            let inv: Vec<classical::SignedClass> = (0..r)
                .map(|k| {
                    signed_coxeter_element(ty, classes.representative(k))
                        .map(|x| signed_class(ty, &x.p_regular_part(p)))
                })
                .collect::<Result<_>>()?;
            for k in 0..r {
                for l in 0..r {
                    let conj = inv[k] == inv[l];
                    rep.check(conj == (d.image(k) == d.image(l)), || {
                        format!("{ty}: p = {p}: conjugate p-regular parts {conj} for rows {k}, {l}")
                    });
                }
            }
            let special = (0..r)
                .filter(|&k| classical::p_special(ty, classes.representative(k), p).unwrap_or(false))
                .count();
            if ty.family == Family::B {
                rep.check(special == d.s(), || format!("{special} p-special classes, s = {}", d.s()));
                let sum: BigUint = (0..=ty.rank)
                    .map(|m| crate::partitions::restricted_count(m, p as usize))
                    .sum();
                rep.check(sum == BigUint::from(d.s()), || format!("s = {} but sum pi(m, p) = {sum}", d.s()));
            }
        }
        _ => {}
    }
    Ok(rep)
}

/// For `B_n` and `D_n`: every `K ∈ E` shares the conjugacy class of the
/// `p`-regular part of its Coxeter element with some `p`-special class.
pub fn verify_special_lemma(wb: &Workbench, p: u64) -> Result<VerifyReport> {
    let ty = wb.coxeter_type();
    let g = wb.group();
    let classes = wb.classes();
    let data = wb.closure_data()?;
    let preg_class = |k: usize| {
        data.classes
            .class_of(g.p_regular_part(g.coxeter_element(classes.representative(k)), p))
    };
    let mut special_classes = Vec::new();
    for k in 0..classes.len() {
        if classical::p_special(ty, classes.representative(k), p)? {
            special_classes.push(preg_class(k));
        }
    }
    let mut rep = VerifyReport::default();
    for k in 0..classes.len() {
        let c = preg_class(k);
        rep.check(special_classes.contains(&c), || {
            format!("{ty}: p = {p}: no p-special class matches row {k}")
        });
    }
    Ok(rep)
}

/// The primes dividing `|W|`, ascending.
pub fn primes_dividing_order(wb: &Workbench) -> Vec<u64> {
    primes_dividing(&wb.group().order())
}

/// The primes dividing `n`, ascending.
pub fn primes_dividing(n: &BigUint) -> Vec<u64> {
    // every supported group order is below 2^32
    prime_divisors(n.to_u64().expect("group order fits in 64 bits"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wb(s: &str) -> Workbench {
        Workbench::new(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn a2_mod_2() {
        let w = wb("A2");
        let d = decomposition_matrix(w.marks(), 2).unwrap();
        assert_eq!(d.f, vec![1, 2]);
        assert_eq!(d.image(0), 0);
        assert_eq!(d.image(1), 0);
        assert_eq!(d.image(2), 1);
        let d7 = decomposition_matrix(w.marks(), 7).unwrap();
        assert_eq!(d7.f, vec![0, 1, 2]);
        assert!((0..3).all(|k| d7.image(k) == k));
    }

    #[test]
    fn f4_classes() {
        let w = wb("F4");
        let d = decomposition_matrix(w.marks(), 2).unwrap();
        assert_eq!(d.s(), 1);
        let a3 = p_arrow_classes(&w, 3).unwrap();
        assert_eq!(a3.classes().len(), 7);
        let a2 = p_arrow_classes(&w, 2).unwrap();
        assert_eq!(a2.classes().len(), 1);
        for p in [2, 3] {
            let rep = verify_decomp_equals_arrow(&w, p).unwrap();
            assert!(rep.passed(), "{:?}", rep.failures);
        }
    }

    #[test]
    fn h3_mod_5() {
        let w = wb("H3");
        let a = p_arrow_classes(&w, 5).unwrap();
        let classes = a.classes();
        assert_eq!(classes.len(), 5);
        assert_eq!(primes_dividing_order(&w), vec![2, 3, 5]);
    }

    #[test]
    fn rendering() {
        assert_eq!(render_entry(3, &[3], 3), ".");
        assert_eq!(render_entry(5, &[5], 1), "5 (1)");
        assert_eq!(render_entry(12, &[12, 6, 1, 5], 1), "12, 1, 5, 6 (1)");
        assert_eq!(render_entry(16, &[1, 4], 1), "1, 4");
    }

    #[test]
    fn classical_theorems_small() {
        for (ty, primes) in [("A3", vec![2, 3]), ("B3", vec![2, 3]), ("D4", vec![2, 3]), ("D5", vec![2, 3, 5])] {
            let w = wb(ty);
            for p in primes {
                let rep = verify_decomp_equals_arrow(&w, p).unwrap();
                assert!(rep.passed(), "{ty} {p}: {:?}", rep.failures);
                if !ty.starts_with('A') {
                    let rep = verify_special_lemma(&w, p).unwrap();
                    assert!(rep.passed(), "{ty} {p}: {:?}", rep.failures);
                }
            }
        }
    }
}
