//! The parabolic table of marks and permutation character values.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::descriptor::CoxeterType;
use crate::error::{Error, Result};
use crate::group::{CoxeterGroup, Element};
use crate::linalg::{rank, rational_rank};
use crate::parabolic::{min_coset_reps, ClassIndex};
use crate::ring::PrimeField;
use crate::subset::GeneratorSubset;

/// The left cosets `W/W_J`, each named by its minimal-length representative.
#[derive(Clone, Debug)]
pub struct CosetSpace {
    subset: GeneratorSubset,
    reps: Vec<Element>,
}

impl CosetSpace {
    pub fn new(g: &CoxeterGroup, j: GeneratorSubset) -> Self {
        Self {
            subset: j,
            reps: min_coset_reps(g, j),
        }
    }

    pub fn subset(&self) -> GeneratorSubset {
        self.subset
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn representatives(&self) -> &[Element] {
        &self.reps
    }

    /// Minimal-length representative of `w W_J`.
    pub fn reduce(&self, g: &CoxeterGroup, mut w: Element) -> Element {
        loop {
            let d = g.right_descents(w).intersection(self.subset);
            match d.indices().next() {
                Some(s) => w = g.mul_gen(w, s),
                None => return w,
            }
        }
    }

    /// Whether `x` fixes the coset `r W_J`, for `r` a minimal representative.
    pub fn fixes(&self, g: &CoxeterGroup, x: Element, r: Element) -> bool {
        self.reduce(g, g.multiply(x, r)) == r
    }

    /// Number of cosets fixed by `x`, i.e. the permutation character value.
    pub fn fixed_by(&self, g: &CoxeterGroup, x: Element) -> u64 {
        self.fixed_by_all(g, &[x])
    }

    /// Number of cosets fixed by every element of `gens` (hence by the
    /// subgroup they generate).
    pub fn fixed_by_all(&self, g: &CoxeterGroup, gens: &[Element]) -> u64 {
        if gens.iter().all(|&x| x == g.identity()) {
            return self.reps.len() as u64;
        }
        if self.subset.is_empty() {
            return 0;
        }
        self.reps
            .iter()
            .filter(|&&r| gens.iter().all(|&x| self.fixes(g, x, r)))
            .count() as u64
    }

    /// Number of cosets fixed by all of `W_K`.
    ///
    /// `s r` is either a minimal representative again or equals `r t` with
    /// `t ∈ J`; only in the second case is the coset fixed.
    pub fn fixed_by_parabolic(&self, g: &CoxeterGroup, k: GeneratorSubset) -> u64 {
        self.reps
            .iter()
            .filter(|&&r| {
                k.indices().all(|s| {
                    !g.right_descents(g.gen_mul(s, r))
                        .intersection(self.subset)
                        .is_empty()
                })
            })
            .count() as u64
    }
}

/// `β_JK` as the number of cosets in `W/W_J` fixed by `W_K`.
pub fn beta(g: &CoxeterGroup, j: GeneratorSubset, k: GeneratorSubset) -> BigUint {
    BigUint::from(CosetSpace::new(g, j).fixed_by_parabolic(g, k))
}

/// `β_JK` as `a_JKK`: double coset representatives `g` with `g K g^{-1} ⊆ J`.
pub fn beta_by_double_cosets(g: &CoxeterGroup, j: GeneratorSubset, k: GeneratorSubset) -> BigUint {
    let n = g
        .elements()
        .filter(|&w| {
            g.left_descents(w).intersection(j).is_empty()
                && g.right_descents(w).intersection(k).is_empty()
                && k.indices()
                    .all(|s| g.simple_image(w, s).is_some_and(|t| j.contains(t)))
        })
        .count();
    BigUint::from(n)
}

/// `M^c(W)`: rows and columns indexed by `E`, entry `(J, K)` is `β_JK`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarksTable {
    descriptor: CoxeterType,
    classes: ClassIndex,
    entries: Vec<Vec<BigUint>>,
}

impl MarksTable {
    pub fn from_parts(
        descriptor: CoxeterType,
        classes: ClassIndex,
        entries: Vec<Vec<BigUint>>,
    ) -> Result<Self> {
        let r = classes.len();
        if entries.len() != r || entries.iter().any(|row| row.len() != r) {
            return Err(Error::Internal(format!("marks matrix is not {r}x{r}")));
        }
        Ok(Self {
            descriptor,
            classes,
            entries,
        })
    }

    pub fn descriptor(&self) -> CoxeterType {
        self.descriptor
    }

    pub fn classes(&self) -> &ClassIndex {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Vec<BigUint>] {
        &self.entries
    }

    pub fn entry(&self, j: usize, k: usize) -> &BigUint {
        &self.entries[j][k]
    }

    pub fn entry_u64(&self, j: usize, k: usize) -> Option<u64> {
        self.entries[j][k].to_u64()
    }

    pub fn diagonal(&self) -> Vec<BigUint> {
        (0..self.len()).map(|i| self.entries[i][i].clone()).collect()
    }

    pub fn column(&self, k: usize) -> Vec<BigUint> {
        self.entries.iter().map(|row| row[k].clone()).collect()
    }

    /// Column `k` reduced modulo `p`.
    pub fn column_mod(&self, k: usize, p: u64) -> Vec<u64> {
        let pb = BigUint::from(p);
        self.entries
            .iter()
            .map(|row| (&row[k] % &pb).to_u64().expect("residue fits"))
            .collect()
    }

    /// Indices `J ∈ E` with `p ∤ β_JJ`, in `E` order.
    pub fn p_regular_rows(&self, p: u64) -> Vec<usize> {
        let pb = BigUint::from(p);
        (0..self.len())
            .filter(|&i| !(&self.entries[i][i] % &pb).is_zero())
            .collect()
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<num_rational::BigRational>> = self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| num_rational::BigRational::from_integer(x.clone().into()))
                    .collect()
            })
            .collect();
        rational_rank(&rows)
    }

    /// Rank of the table reduced modulo `p`.
    pub fn rank_mod_p(&self, p: u64) -> usize {
        let pb = BigUint::from(p);
        let rows: Vec<Vec<u64>> = self
            .entries
            .iter()
            .map(|row| row.iter().map(|x| (x % &pb).to_u64().unwrap()).collect())
            .collect();
        rank(PrimeField::new(p), &rows)
    }
}

/// Builds `M^c(W)` by counting fixed cosets.
pub fn build_marks_table(g: &CoxeterGroup, classes: &ClassIndex) -> MarksTable {
    let spaces = coset_spaces(g, classes);
    build_marks_table_from_spaces(g, classes, &spaces)
}

/// One coset space per class representative, in `E` order.
pub fn coset_spaces(g: &CoxeterGroup, classes: &ClassIndex) -> Vec<CosetSpace> {
    classes.representatives().map(|j| CosetSpace::new(g, j)).collect()
}

pub fn build_marks_table_from_spaces(
    g: &CoxeterGroup,
    classes: &ClassIndex,
    spaces: &[CosetSpace],
) -> MarksTable {
    let r = classes.len();
    let entries = (0..r)
        .map(|j| {
            (0..r)
                .map(|k| {
                    // only subgroups of smaller or equal size can fix a coset
                    if k > j {
                        BigUint::zero()
                    } else {
                        BigUint::from(spaces[j].fixed_by_parabolic(g, classes.representative(k)))
                    }
                })
                .collect()
        })
        .collect();
    MarksTable {
        descriptor: g.coxeter_type(),
        classes: classes.clone(),
        entries,
    }
}

/// Builds `M^c(W)` from double coset counts, independently of
/// [`build_marks_table`].
pub fn build_marks_table_by_double_cosets(g: &CoxeterGroup, classes: &ClassIndex) -> MarksTable {
    let reps: Vec<GeneratorSubset> = classes.representatives().collect();
    let entries = reps
        .iter()
        .map(|&j| reps.iter().map(|&k| beta_by_double_cosets(g, j, k)).collect())
        .collect();
    MarksTable {
        descriptor: g.coxeter_type(),
        classes: classes.clone(),
        entries,
    }
}

/// `χ_J(w)`: the number of cosets of `W_J` fixed by `w`.
pub fn chi_value(g: &CoxeterGroup, j: GeneratorSubset, w: Element) -> BigUint {
    BigUint::from(CosetSpace::new(g, j).fixed_by(g, w))
}
