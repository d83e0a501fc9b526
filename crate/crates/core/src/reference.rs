//! Published decomposition tables for the exceptional types, and a
//! comparator that matches computed rows to the published numbering.
//!
//! Labels are written in ASCII: `x` for direct products, `'` and `''` for
//! dashes. Entries use the published notation: the `→_p` targets of the row
//! (the one coming from the Coxeter element first), then the class
//! representative in parentheses when it differs from the first target, or
//! a lone `.` for a row that only points to itself and represents its class.

use std::collections::BTreeMap;

use crate::modular::render_entry;
use crate::report::DecompRecord;

#[derive(Clone, Copy, Debug)]
pub struct ReferenceRow {
    pub label: &'static str,
    pub beta: u64,
    /// One entry per prime of the table, in the same order.
    pub entries: &'static [&'static str],
}

#[derive(Clone, Copy, Debug)]
pub struct ReferenceTable {
    pub descriptor: &'static str,
    pub primes: &'static [u64],
    pub rows: &'static [ReferenceRow],
}

macro_rules! rows {
    ($( $label:literal, $beta:literal, [$($e:literal),*]; )*) => {
        &[$(ReferenceRow { label: $label, beta: $beta, entries: &[$($e),*] }),*]
    };
}

pub const F4: ReferenceTable = ReferenceTable {
    descriptor: "F4",
    primes: &[2, 3],
    rows: rows![
        "1", 1152, [".", "."];
        "A1'", 48, ["1", "."];
        "A1''", 48, ["1", "."];
        "A1xA1", 4, ["1", "."];
        "A2'", 12, ["5 (1)", "1"];
        "A2''", 12, ["6 (1)", "1"];
        "B2", 8, ["1", "."];
        "(A2xA1)'", 2, ["5 (1)", "2"];
        "(A2xA1)''", 2, ["6 (1)", "3"];
        "B3'", 2, ["5, 1 (1)", "."];
        "B3''", 2, ["6, 1 (1)", "."];
        "F4", 1, ["12, 1, 5, 6 (1)", "12, 1 (1)"];
    ],
};

pub const H3: ReferenceTable = ReferenceTable {
    descriptor: "H3",
    primes: &[2, 3, 5],
    rows: rows![
        "1", 120, [".", ".", "."];
        "A1", 4, ["1", ".", "."];
        "A1xA1", 2, ["1", ".", "."];
        "A2", 2, ["4 (1)", "1", "."];
        "I2(5)", 2, ["5 (1)", ".", "1"];
        "H3", 1, ["5, 1, 4 (1)", ".", "."];
    ],
};

pub const H4: ReferenceTable = ReferenceTable {
    descriptor: "H4",
    primes: &[2, 3, 5],
    rows: rows![
        "1", 14400, [".", ".", "."];
        "A1", 120, ["1", ".", "."];
        "A1xA1", 8, ["1", ".", "."];
        "A2", 12, ["4 (1)", "1", "."];
        "I2(5)", 20, ["5 (1)", ".", "1"];
        "A2xA1", 2, ["4 (1)", "2", "."];
        "I2(5)xA1", 2, ["5 (1)", ".", "2"];
        "A3", 2, ["1", ".", "."];
        "H3", 2, ["5, 1, 4 (1)", ".", "."];
        "H4", 1, ["10, 1, 4, 5 (1)", "10, 1 (1)", "10, 1 (1)"];
    ],
};

pub const E6: ReferenceTable = ReferenceTable {
    descriptor: "E6",
    primes: &[2, 3, 5],
    rows: rows![
        "1", 51840, [".", ".", "."];
        "A1", 720, ["1", ".", "."];
        "A1xA1", 48, ["1", ".", "."];
        "A2", 72, ["4 (1)", "1", "."];
        "A1xA1xA1", 12, ["1", ".", "."];
        "A2xA1", 6, ["4 (1)", "2", "."];
        "A3", 8, ["1", ".", "."];
        "A2xA1xA1", 2, ["4 (1)", "3", "."];
        "A2xA2", 12, [".", "1", "."];
        "A3xA1", 2, ["1", ".", "."];
        "A4", 2, [".", ".", "1"];
        "D4", 6, ["4, 1 (1)", "12 (1)", "."];
        "A2xA2xA1", 2, ["9", "2", "."];
        "A4xA1", 1, ["11", ".", "2"];
        "A5", 2, ["9", "5", "."];
        "D5", 1, ["1, 4", ".", "."];
        "E6", 1, ["17, 9 (9)", "12, 1 (1)", "."];
    ],
};

pub const E7: ReferenceTable = ReferenceTable {
    descriptor: "E7",
    primes: &[2, 3, 5, 7],
    rows: rows![
        "1", 2903040, [".", ".", ".", "."];
        "A1", 23040, ["1", ".", ".", "."];
        "A1xA1", 768, ["1", ".", ".", "."];
        "A2", 1440, ["4 (1)", "1", ".", "."];
        "(A1xA1xA1)'", 1152, ["1", ".", ".", "."];
        "(A1xA1xA1)''", 96, ["1", ".", ".", "."];
        "A2xA1", 48, ["4 (1)", "2", ".", "."];
        "A3", 96, ["1", ".", ".", "."];
        "A1xA1xA1xA1", 48, ["1", ".", ".", "."];
        "A2xA1xA1", 8, ["4 (1)", "3", ".", "."];
        "A2xA2", 24, ["11 (1)", "1", ".", "."];
        "(A3xA1)'", 48, ["1", ".", ".", "."];
        "(A3xA1)''", 8, ["1", ".", ".", "."];
        "A4", 12, ["14 (1)", ".", "1", "."];
        "D4", 48, ["4, 1 (1)", "15 (1)", ".", "."];
        "A2xA1xA1xA1", 12, ["4 (1)", "5", ".", "."];
        "A2xA2xA1", 4, ["11 (1)", "2", ".", "."];
        "A3xA1xA1", 4, ["1", ".", ".", "."];
        "A3xA2", 4, ["4 (1)", "8", ".", "."];
        "A4xA1", 2, ["14 (1)", ".", "2", "."];
        "D4xA1", 8, ["4, 1 (1)", ".", ".", "."];
        "A5'", 12, ["11 (1)", "5", ".", "."];
        "A5''", 4, ["11 (1)", "6", ".", "."];
        "D5", 4, ["1, 4", ".", ".", "."];
        "A3xA2xA1", 2, ["4 (1)", "12", ".", "."];
        "A4xA2", 2, ["26 (1)", "14", "4", "."];
        "A5xA1", 2, ["11 (1)", "9", ".", "."];
        "D5xA1", 2, ["1, 4", ".", ".", "."];
        "A6", 2, ["29 (1)", ".", ".", "1"];
        "D6", 2, ["14, 1, 4, 11 (1)", ".", ".", "."];
        "E6", 2, ["31, 11 (1)", "15, 1 (1)", ".", "."];
        "E7", 1, ["31, 1, 4, 11, 14, 26, 29 (1)", "32, 5 (5)", ".", "."];
    ],
};

/// The published table for a descriptor, if there is one.
pub fn reference_table(descriptor: &str) -> Option<&'static ReferenceTable> {
    [&F4, &H3, &H4, &E6, &E7]
        .into_iter()
        .find(|t| t.descriptor.eq_ignore_ascii_case(descriptor))
}

/// Isomorphism type with dashes and grouping removed and factors sorted, so
/// that labels differing only in presentation compare equal.
pub fn normalize_label(label: &str) -> String {
    let mut parts: Vec<String> = label
        .split('x')
        .map(|p| p.chars().filter(|c| !matches!(c, '\'' | '"' | '(' | ')' | '′' | '″')).collect())
        .collect();
    parts.sort();
    parts.join("x")
}

/// Outcome of matching a computed decomposition report to a published table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    /// Every assignment (among those respecting label and `β`) that
    /// reproduces all entries; `a[k]` is the published row (from 1) matched
    /// to computed row `k`.
    pub assignments: Vec<Vec<usize>>,
    /// Published rows sharing a normalized label and `β`.
    pub ambiguous_rows: Vec<Vec<usize>>,
    pub failures: Vec<String>,
}

impl Comparison {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && !self.assignments.is_empty()
    }

    pub fn row_of(&self) -> Option<&[usize]> {
        self.assignments.first().map(Vec::as_slice)
    }

    /// Number of matching assignments up to relabelling the computed rows by
    /// `symmetries` (permutations of computed row indices closed under
    /// composition, e.g. those induced by diagram automorphisms).
    pub fn distinct_up_to(&self, symmetries: &[Vec<usize>]) -> usize {
        let mut seen: Vec<&Vec<usize>> = Vec::new();
        let mut orbits = 0;
        for a in &self.assignments {
            if seen.contains(&a) {
                continue;
            }
            orbits += 1;
            for sigma in symmetries {
                let image: Vec<usize> = sigma.iter().map(|&k| a[k]).collect();
                if let Some(b) = self.assignments.iter().find(|b| **b == image) {
                    seen.push(b);
                }
            }
            seen.push(a);
        }
        orbits
    }
}

/// Most assignments tried before giving up.
const ASSIGNMENT_LIMIT: usize = 1 << 16;

/// Matches the rows of `rec` to the published rows by normalized label and
/// `β`, trying every permutation within groups of equal keys, and checks
/// every entry for every published prime after renumbering.
pub fn compare(table: &ReferenceTable, rec: &DecompRecord) -> Comparison {
    let mut out = Comparison {
        assignments: Vec::new(),
        ambiguous_rows: Vec::new(),
        failures: Vec::new(),
    };
    let r = table.rows.len();
    if rec.labels.len() != r {
        out.failures.push(format!("{} rows computed, {r} published", rec.labels.len()));
        return out;
    }
    let mut per_prime = Vec::new();
    for &p in table.primes {
        match rec.primes.iter().find(|x| x.p == p) {
            Some(x) => per_prime.push(x),
            None => out.failures.push(format!("no data for p = {p}")),
        }
    }
    if !out.failures.is_empty() {
        return out;
    }

    // group published and computed rows by key
    let mut groups: BTreeMap<(String, String), (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for (i, row) in table.rows.iter().enumerate() {
        let key = (normalize_label(row.label), row.beta.to_string());
        groups.entry(key).or_default().0.push(i);
    }
    for (k, l) in rec.labels.iter().enumerate() {
        let key = (normalize_label(&l.iso_type), l.beta.clone());
        groups.entry(key).or_default().1.push(k);
    }
    for ((label, beta), (published, computed)) in &groups {
        if published.len() != computed.len() {
            out.failures.push(format!(
                "{label} with beta {beta}: {} published rows, {} computed",
                published.len(),
                computed.len()
            ));
        }
        if published.len() > 1 {
            out.ambiguous_rows.push(published.iter().map(|i| i + 1).collect());
        }
    }
    if !out.failures.is_empty() {
        return out;
    }
    let groups: Vec<(Vec<usize>, Vec<usize>)> = groups.into_values().collect();
    let total: usize = groups
        .iter()
        .map(|g| (1..=g.0.len()).product::<usize>())
        .try_fold(1usize, |acc, x| acc.checked_mul(x))
        .unwrap_or(usize::MAX);
    if total > ASSIGNMENT_LIMIT {
        out.failures.push(format!("{total} candidate row assignments; too many to try"));
        return out;
    }

    let mut perms: Vec<Vec<usize>> = groups.iter().map(|g| (0..g.0.len()).collect()).collect();
    let mut best: Option<(usize, Vec<String>)> = None;
    loop {
        let mut row_of = vec![0usize; r];
        for ((published, computed), perm) in groups.iter().zip(&perms) {
            for (slot, &c) in perm.iter().zip(computed) {
                row_of[c] = published[*slot] + 1;
            }
        }
        let diffs = entry_differences(table, &per_prime, &row_of);
        if diffs.is_empty() {
            out.assignments.push(row_of);
        } else if best.as_ref().is_none_or(|(n, _)| diffs.len() < *n) {
            best = Some((diffs.len(), diffs));
        }
        if !next_assignment(&mut perms) {
            break;
        }
    }
    if out.assignments.is_empty() {
        out.failures = best.map(|b| b.1).unwrap_or_default();
    }
    out
}

fn entry_differences(
    table: &ReferenceTable,
    per_prime: &[&crate::report::PrimeDecompRecord],
    row_of: &[usize],
) -> Vec<String> {
    let mut diffs = Vec::new();
    for (pi, d) in per_prime.iter().enumerate() {
        for (k, targets) in d.targets.iter().enumerate() {
            let rep = d
                .classes
                .iter()
                .find(|c| c.contains(&k))
                .map(|c| c.iter().map(|&x| row_of[x]).min().unwrap_or(0))
                .unwrap_or(0);
            let mapped: Vec<usize> = targets.iter().map(|&t| row_of[t]).collect();
            let got = render_entry(row_of[k], &mapped, rep);
            let want = table.rows[row_of[k] - 1].entries[pi];
            if got != want {
                diffs.push(format!(
                    "p = {}, row {} ({}): computed {got:?}, published {want:?}",
                    d.p,
                    row_of[k],
                    table.rows[row_of[k] - 1].label
                ));
            }
        }
    }
    diffs
}

/// Advances to the next permutation in the first group that has one,
/// resetting the groups before it; false once every combination is done.
fn next_assignment(perms: &mut [Vec<usize>]) -> bool {
    for p in perms.iter_mut() {
        if next_permutation(p) {
            return true;
        }
        p.sort_unstable();
    }
    false
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("pivot exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
