//! Brute-force products in the group algebra, for checking the structure
//! constants on small groups.

use crate::error::{Error, Result};
use crate::group::{CoxeterGroup, Element};
use crate::subset::GeneratorSubset;

/// Largest group the oracle is meant for.
pub const ORACLE_LIMIT: u64 = 5000;

/// Coefficients (indexed by mask `L`) of `x_J x_K` in the basis `{x_L}`,
/// obtained by multiplying the coset-representative sums element by element
/// in `ZW` and inverting `x_L = Σ_{D(w) ∩ L = ∅} w` over right descent sets.
pub fn product(g: &CoxeterGroup, j: GeneratorSubset, k: GeneratorSubset) -> Result<Vec<i64>> {
    let n = g.rank();
    let reps = |l: GeneratorSubset| -> Vec<Element> {
        g.elements()
            .filter(|&w| g.right_descents(w).intersection(l).is_empty())
            .collect()
    };
    let (xj, xk) = (reps(j), reps(k));
    let mut coeff = vec![0i64; g.len()];
    for &a in &xj {
        for &b in &xk {
            coeff[g.multiply(a, b).index()] += 1;
        }
    }
    // the product must be constant on each right descent class
    let mut by_descent: Vec<Option<i64>> = vec![None; 1 << n];
    for (w, &c) in g.elements().zip(&coeff) {
        let slot = &mut by_descent[g.right_descents(w).mask() as usize];
        match slot {
            None => *slot = Some(c),
            Some(prev) if *prev != c => {
                return Err(Error::Internal(format!(
                    "x_{j} x_{k} is not constant on the descent class of element {}",
                    w.index()
                )))
            }
            _ => {}
        }
    }
    let z: Vec<i64> = by_descent.into_iter().map(|c| c.unwrap_or(0)).collect();
    // x_L = Σ_{D ⊆ S∖L} y_D, so the coefficient of x_L is
    // Σ_{D ⊇ S∖L} (-1)^{|D| - |S∖L|} z_D.
    let full = GeneratorSubset::full(n);
    Ok(GeneratorSubset::all(n)
        .map(|l| {
            let t = GeneratorSubset(full.mask() & !l.mask());
            GeneratorSubset::all(n)
                .filter(|d| t.is_subset_of(*d))
                .map(|d| {
                    let sign = if (d.len() - t.len()).is_multiple_of(2) { 1 } else { -1 };
                    sign * z[d.mask() as usize]
                })
                .sum()
        })
        .collect())
}

/// Every basis product, row `J · 2^n + K`.
pub fn multiplication_table(g: &CoxeterGroup) -> Result<Vec<Vec<i64>>> {
    let n = g.rank();
    let mut out = Vec::with_capacity(1 << (2 * n));
    for j in GeneratorSubset::all(n) {
        for k in GeneratorSubset::all(n) {
            out.push(product(g, j, k)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_square_of_a_generator() {
        let g = CoxeterGroup::build("A2".parse().unwrap()).unwrap();
        let s1 = GeneratorSubset::from_indices([0]);
        assert_eq!(product(&g, s1, s1).unwrap(), vec![1, 1, 0, 0]);
        let e = GeneratorSubset(0);
        assert_eq!(product(&g, e, e).unwrap(), vec![6, 0, 0, 0]);
        let s = GeneratorSubset::full(2);
        for k in GeneratorSubset::all(2) {
            let mut want = vec![0; 4];
            want[k.mask() as usize] = 1;
            assert_eq!(product(&g, s, k).unwrap(), want);
        }
    }
}
