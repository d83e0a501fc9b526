//! Primitive idempotents and Cartan matrices of `Σ_W` and `Σ(W, p)`.

use num_bigint::BigInt;

use crate::descent::{multiply, theta, DescentElement, StructureConstants};
use crate::error::{Error, Result};
use crate::linalg::{invert, Subspace};
use crate::marks::MarksTable;
use crate::modular::{DecompositionMatrix, VerifyReport};
use crate::ring::{Field, PrimeField, Rationals};
use crate::subset::GeneratorSubset;

/// A Cartan matrix with rows and columns indexed by `index` (positions in `E`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanMatrix {
    pub characteristic: u64,
    pub index: Vec<usize>,
    /// `entries[i][j] = dim(f_j A f_i)`.
    pub entries: Vec<Vec<u64>>,
}

impl CartanMatrix {
    pub fn entry_sum(&self) -> u64 {
        self.entries.iter().flatten().sum()
    }
}

/// A complete set of orthogonal primitive idempotents, one per irreducible
/// representation (indexed by `index`, positions in `E`).
#[derive(Clone, Debug)]
pub struct Idempotents<F: Field> {
    pub index: Vec<usize>,
    pub lifted: Vec<DescentElement<F>>,
    /// Idempotents of the semisimple quotient, as combinations of the
    /// representatives `x_J`, `J` in `index`.
    pub quotient: Vec<DescentElement<F>>,
}

/// Idempotents mapping onto the point masses of the split commutative
/// quotient: `e_K = Σ_J c_J x_J` with `Σ_J c_J β_JL = δ_KL` for `J, L` in
/// `index`.
fn quotient_idempotents<F: Field>(
    field: &F,
    marks: &MarksTable,
    index: &[usize],
) -> Result<Vec<DescentElement<F>>> {
    let n = marks.classes().rank();
    let block: Vec<Vec<F::Elem>> = index
        .iter()
        .map(|&j| {
            index
                .iter()
                .map(|&l| field.from_bigint(&BigInt::from(marks.entry(j, l).clone())))
                .collect()
        })
        .collect();
    let inv = invert(field, &block)
        .ok_or_else(|| Error::Internal("table of marks block is singular".into()))?;
    Ok(inv
        .iter()
        .map(|row| {
            let mut coeffs = vec![field.zero(); 1 << n];
            for (c, &j) in row.iter().zip(index) {
                coeffs[marks.classes().representative(j).mask() as usize] = c.clone();
            }
            DescentElement::from_coefficients(field.clone(), coeffs).expect("power of two")
        })
        .collect())
}

/// Lifts the quotient idempotents one at a time: with `g` the complement of
/// those already lifted, iterate `y ← 3y² − 2y³` from `y = g e g` until `y`
/// is idempotent; the last idempotent is whatever remains of `g`.
pub fn primitive_idempotents<F: Field>(
    field: &F,
    marks: &MarksTable,
    sc: &StructureConstants,
    index: &[usize],
) -> Result<Idempotents<F>> {
    let n = sc.rank();
    let quotient = quotient_idempotents(field, marks, index)?;
    let three = field.from_u64(3);
    let two = field.from_u64(2);
    let mut g = DescentElement::identity(field.clone(), n);
    let mut lifted = Vec::with_capacity(index.len());
    for (i, e) in quotient.iter().enumerate() {
        if i + 1 == quotient.len() {
            lifted.push(g.clone());
            break;
        }
        let mut y = multiply(&multiply(&g, e, sc)?, &g, sc)?;
        let mut steps = 0;
        loop {
            let y2 = multiply(&y, &y, sc)?;
            if y2 == y {
                break;
            }
            steps += 1;
            if steps > 64 {
                return Err(Error::Internal("idempotent lifting did not converge".into()));
            }
            let y3 = multiply(&y2, &y, sc)?;
            y = y2.scale(&three).sub(&y3.scale(&two))?;
        }
        g = g.sub(&y)?;
        lifted.push(y);
    }
    Ok(Idempotents {
        index: index.to_vec(),
        lifted,
        quotient,
    })
}

/// `c_ij = dim(f_j A f_i)`, spanning `f_j x_K f_i` over all `K ⊆ S`.
pub fn cartan_from_idempotents<F: Field>(
    field: &F,
    idem: &Idempotents<F>,
    sc: &StructureConstants,
) -> Result<CartanMatrix> {
    let n = sc.rank();
    let mut entries = vec![vec![0u64; idem.lifted.len()]; idem.lifted.len()];
    for (i, fi) in idem.lifted.iter().enumerate() {
        let right: Vec<DescentElement<F>> = GeneratorSubset::all(n)
            .map(|k| multiply(&DescentElement::basis(field.clone(), n, k), fi, sc))
            .collect::<Result<_>>()?;
        for (j, fj) in idem.lifted.iter().enumerate() {
            let mut span = Subspace::new(field.clone(), sc.dimension());
            for x in &right {
                span.insert(multiply(fj, x, sc)?.coefficients());
            }
            entries[i][j] = span.dimension() as u64;
        }
    }
    Ok(CartanMatrix {
        characteristic: field.domain().characteristic(),
        index: idem.index.clone(),
        entries,
    })
}

/// `C` over the rationals, indexed by all of `E`.
pub fn cartan_matrix_char0(marks: &MarksTable, sc: &StructureConstants) -> Result<CartanMatrix> {
    let index: Vec<usize> = (0..marks.len()).collect();
    let idem = primitive_idempotents(&Rationals, marks, sc, &index)?;
    cartan_from_idempotents(&Rationals, &idem, sc)
}

/// `C̃` over `F_p`, indexed by `F`.
pub fn cartan_matrix_mod_p(marks: &MarksTable, sc: &StructureConstants, p: u64) -> Result<CartanMatrix> {
    let field = crate::descent::prime_field(p)?;
    let index = marks.p_regular_rows(p);
    let idem = primitive_idempotents(&field, marks, sc, &index)?;
    cartan_from_idempotents(&field, &idem, sc)
}

/// `Dᵀ C D`.
pub fn transform(c: &CartanMatrix, d: &DecompositionMatrix) -> Vec<Vec<u64>> {
    let s = d.f.len();
    let mut out = vec![vec![0u64; s]; s];
    for (a, row) in out.iter_mut().enumerate() {
        for (b, slot) in row.iter_mut().enumerate() {
            for (i, &k) in c.index.iter().enumerate() {
                for (j, &l) in c.index.iter().enumerate() {
                    if d.entries[k][a] && d.entries[l][b] {
                        *slot += c.entries[i][j];
                    }
                }
            }
        }
    }
    out
}

/// Checks the idempotent axioms: `f_i² = f_i`, `f_i f_j = 0` for `i ≠ j`,
/// `Σ f_i = 1`, and that each `f_i` has the same image in the quotient as
/// the corresponding `e_i`.
pub fn verify_idempotents<F: Field>(
    field: &F,
    idem: &Idempotents<F>,
    marks: &MarksTable,
    sc: &StructureConstants,
) -> Result<VerifyReport> {
    let n = sc.rank();
    let mut rep = VerifyReport::default();
    let mut total = DescentElement::zero(field.clone(), n);
    for (i, fi) in idem.lifted.iter().enumerate() {
        for (j, fj) in idem.lifted.iter().enumerate() {
            let prod = multiply(fi, fj, sc)?;
            let ok = if i == j { prod == *fi } else { prod.is_zero() };
            rep.check(ok, || format!("idempotent axiom fails for ({i}, {j})"));
        }
        total = total.add(fi)?;
        let (a, b) = (theta(fi, marks), theta(&idem.quotient[i], marks));
        rep.check(a == b, || format!("idempotent {i} does not lift its quotient image"));
    }
    rep.check(total == DescentElement::identity(field.clone(), n), || {
        "idempotents do not sum to the identity".to_string()
    });
    Ok(rep)
}

/// All Cartan data for one prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanComparison {
    pub c: CartanMatrix,
    pub c_tilde: CartanMatrix,
    pub dt_c_d: Vec<Vec<u64>>,
}

impl CartanComparison {
    pub fn equal(&self) -> bool {
        self.c_tilde.entries == self.dt_c_d
    }
}

/// Computes `C`, `C̃` and `DᵀCD` independently and checks `C̃ = DᵀCD`, the
/// entry sums and the idempotent axioms in both characteristics.
pub fn verify_cdc(
    marks: &MarksTable,
    sc: &StructureConstants,
    d: &DecompositionMatrix,
) -> Result<(CartanComparison, VerifyReport)> {
    let mut rep = VerifyReport::default();
    let index0: Vec<usize> = (0..marks.len()).collect();
    let idem0 = primitive_idempotents(&Rationals, marks, sc, &index0)?;
    rep.merge(verify_idempotents(&Rationals, &idem0, marks, sc)?);
    let c = cartan_from_idempotents(&Rationals, &idem0, sc)?;
    let field: PrimeField = crate::descent::prime_field(d.p)?;
    let idem_p = primitive_idempotents(&field, marks, sc, &d.f)?;
    rep.merge(verify_idempotents(&field, &idem_p, marks, sc)?);
    let c_tilde = cartan_from_idempotents(&field, &idem_p, sc)?;
    let dt_c_d = transform(&c, d);
    let dim = sc.dimension() as u64;
    rep.check(c.entry_sum() == dim, || format!("entries of C sum to {}", c.entry_sum()));
    rep.check(c_tilde.entry_sum() == dim, || {
        format!("entries of C~ sum to {}", c_tilde.entry_sum())
    });
    let cmp = CartanComparison { c, c_tilde, dt_c_d };
    rep.check(cmp.equal(), || {
        format!("p = {}: C~ = {:?} but D^T C D = {:?}", d.p, cmp.c_tilde.entries, cmp.dt_c_d)
    });
    Ok((cmp, rep))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular::decomposition_matrix;
    use crate::workbench::Workbench;

    fn wb(s: &str) -> Workbench {
        Workbench::new(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn a1_is_semisimple() {
        let w = wb("A1");
        let c = cartan_matrix_char0(w.marks(), w.structure_constants()).unwrap();
        assert_eq!(c.entries, vec![vec![1, 0], vec![0, 1]]);
    }

    /// Cartan matrix of the 4-dimensional algebra by brute force: the
    /// idempotents are found by searching small integer combinations.
    #[test]
    fn a2_matches_search() {
        let w = wb("A2");
        let sc = w.structure_constants();
        let c = cartan_matrix_char0(w.marks(), sc).unwrap();
        assert_eq!(c.entry_sum(), 4);
        let q = Rationals;
        let frac = |n: i64, d: i64| num_rational::BigRational::new(n.into(), d.into());
        // coordinates (x_∅, x_{s}, x_{t}, x_S) with denominators 6, 2, 2, 1
        let vals = -3i64..=3;
        let mut found = Vec::new();
        for a in vals.clone() {
            for b in vals.clone() {
                for c2 in vals.clone() {
                    for d in vals.clone() {
                        let cand = DescentElement::from_coefficients(
                            q,
                            vec![frac(a, 6), frac(b, 2), frac(c2, 2), frac(d, 1)],
                        )
                        .unwrap();
                        if !cand.is_zero() && multiply(&cand, &cand, sc).unwrap() == cand {
                            found.push(cand);
                        }
                    }
                }
            }
        }
        // a complete orthogonal set of three nonzero idempotents exists among them
        let mut best = None;
        'outer: for i in 0..found.len() {
            for j in 0..found.len() {
                for k in 0..found.len() {
                    let (a, b, cc) = (&found[i], &found[j], &found[k]);
                    let sum = a.add(b).unwrap().add(cc).unwrap();
                    if sum == DescentElement::identity(q, 2)
                        && multiply(a, b, sc).unwrap().is_zero()
                        && multiply(b, a, sc).unwrap().is_zero()
                        && multiply(a, cc, sc).unwrap().is_zero()
                        && multiply(cc, a, sc).unwrap().is_zero()
                        && multiply(b, cc, sc).unwrap().is_zero()
                        && multiply(cc, b, sc).unwrap().is_zero()
                    {
                        best = Some(vec![a.clone(), b.clone(), cc.clone()]);
                        break 'outer;
                    }
                }
            }
        }
        let set = best.expect("orthogonal idempotents among small candidates");
        let idem = Idempotents {
            index: vec![0, 1, 2],
            lifted: set,
            quotient: Vec::new(),
        };
        let brute = cartan_from_idempotents(&q, &idem, sc).unwrap();
        let mut a: Vec<u64> = brute.entries.iter().flatten().copied().collect();
        let mut b: Vec<u64> = c.entries.iter().flatten().copied().collect();
        a.sort_unstable();
        b.sort_unstable();
        assert_eq!(a, b);
        assert_eq!(brute.entry_sum(), 4);
    }

    #[test]
    fn cdc_holds_for_small_types() {
        for (ty, primes) in [("A2", vec![2, 3]), ("B2", vec![2]), ("H3", vec![2, 3, 5]), ("I2:5", vec![2, 5])] {
            let w = wb(ty);
            for p in primes {
                let d = decomposition_matrix(w.marks(), p).unwrap();
                let (cmp, rep) = verify_cdc(w.marks(), w.structure_constants(), &d).unwrap();
                assert!(rep.passed(), "{ty} {p}: {:?}", rep.failures);
                assert!(cmp.equal());
            }
        }
    }

    #[test]
    fn coprime_prime_gives_same_matrix() {
        let w = wb("A2");
        let d = decomposition_matrix(w.marks(), 5).unwrap();
        let (cmp, rep) = verify_cdc(w.marks(), w.structure_constants(), &d).unwrap();
        assert!(rep.passed());
        assert_eq!(cmp.c.entries, cmp.c_tilde.entries);
    }
}
