//! Solomon's descent algebra: structure constants, multiplication, the
//! character map and radical bases.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::group::CoxeterGroup;
use crate::linalg::Subspace;
use crate::marks::MarksTable;
use crate::parabolic::ClassIndex;
use crate::ring::{CoefficientDomain, Field, PrimeField, Rationals, Ring};
use crate::subset::GeneratorSubset;

/// `a_JKL` for a single pair `(J, K)`, from the double coset representatives
/// `g ∈ X_J^{-1} ∩ X_K`, each contributing to `L = K ∩ g^{-1} J g`.
pub fn structure_constants(
    g: &CoxeterGroup,
    j: GeneratorSubset,
    k: GeneratorSubset,
) -> BTreeMap<GeneratorSubset, u64> {
    let mut out = BTreeMap::new();
    for w in g.elements() {
        if !g.left_descents(w).intersection(j).is_empty()
            || !g.right_descents(w).intersection(k).is_empty()
        {
            continue;
        }
        let l = GeneratorSubset::from_indices(
            k.indices()
                .filter(|&s| g.simple_image(w, s).is_some_and(|t| j.contains(t))),
        );
        *out.entry(l).or_insert(0) += 1;
    }
    out
}

/// All structure constants `x_J x_K = Σ_L a_JKL x_L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    rank: usize,
    // indexed by (J << rank) | K; entries sorted by L
    table: Vec<Vec<(GeneratorSubset, u64)>>,
}

impl StructureConstants {
    /// Computes the whole table in one pass over `W`.
    ///
    /// An element `g` is a double coset representative for exactly those
    /// pairs with `J` avoiding its left descents and `K` avoiding its right
    /// descents, so each element is visited once.
    pub fn compute(g: &CoxeterGroup) -> Self {
        let n = g.rank();
        let size = 1usize << n;
        let full = g.full_set().mask();
        let mut counts = vec![0u32; size * size * size];
        let mut image = [0usize; 16];
        for w in g.elements() {
            let a = full & !g.left_descents(w).mask();
            let b = full & !g.right_descents(w).mask();
            let mut simple = 0u16;
            for s in GeneratorSubset(b).indices() {
                if let Some(t) = g.simple_image(w, s) {
                    simple |= 1 << s;
                    image[s] = t;
                }
            }
            for j in GeneratorSubset(a).subsets() {
                let q = GeneratorSubset(simple)
                    .indices()
                    .filter(|&s| j.contains(image[s]))
                    .fold(0u16, |m, s| m | 1 << s);
                let base = (j.mask() as usize) << (2 * n);
                for k in GeneratorSubset(b).subsets() {
                    let l = k.mask() & q;
                    counts[base | (k.mask() as usize) << n | l as usize] += 1;
                }
            }
        }
        let table = (0..size * size)
            .map(|jk| {
                (0..size)
                    .filter_map(|l| {
                        let c = counts[jk << n | l];
                        (c != 0).then(|| (GeneratorSubset(l as u16), u64::from(c)))
                    })
                    .collect()
            })
            .collect();
        Self { rank: n, table }
    }

    /// Computes the table pair by pair with [`structure_constants`].
    pub fn compute_pairwise(g: &CoxeterGroup) -> Self {
        let n = g.rank();
        let table = (0..1usize << (2 * n))
            .map(|jk| {
                let j = GeneratorSubset((jk >> n) as u16);
                let k = GeneratorSubset((jk & ((1 << n) - 1)) as u16);
                structure_constants(g, j, k).into_iter().collect()
            })
            .collect();
        Self { rank: n, table }
    }

    pub fn from_table(rank: usize, table: Vec<Vec<(GeneratorSubset, u64)>>) -> Result<Self> {
        if table.len() != 1 << (2 * rank) {
            return Err(Error::Internal("structure constant table has the wrong size".into()));
        }
        Ok(Self { rank, table })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `2^|S|`.
    pub fn dimension(&self) -> usize {
        1 << self.rank
    }

    /// Nonzero `a_JKL`, ascending in `L`'s mask.
    pub fn get(&self, j: GeneratorSubset, k: GeneratorSubset) -> &[(GeneratorSubset, u64)] {
        &self.table[(j.mask() as usize) << self.rank | k.mask() as usize]
    }

    pub fn table(&self) -> &[Vec<(GeneratorSubset, u64)>] {
        &self.table
    }
}

/// An element of `Σ_W ⊗ R`, as coordinates in the basis `{x_K}` indexed by mask.
#[derive(Clone, Debug, PartialEq)]
pub struct DescentElement<R: Ring> {
    ring: R,
    coeffs: Vec<R::Elem>,
}

impl<R: Ring> DescentElement<R> {
    pub fn zero(ring: R, rank: usize) -> Self {
        let coeffs = vec![ring.zero(); 1 << rank];
        Self { ring, coeffs }
    }

    /// The basis element `x_K`.
    pub fn basis(ring: R, rank: usize, k: GeneratorSubset) -> Self {
        let mut e = Self::zero(ring, rank);
        e.coeffs[k.mask() as usize] = e.ring.one();
        e
    }

    /// `x_S`, the identity of the algebra.
    pub fn identity(ring: R, rank: usize) -> Self {
        Self::basis(ring, rank, GeneratorSubset::full(rank))
    }

    pub fn from_coefficients(ring: R, coeffs: Vec<R::Elem>) -> Result<Self> {
        if !coeffs.len().is_power_of_two() {
            return Err(Error::Internal(format!("{} coefficients", coeffs.len())));
        }
        Ok(Self { ring, coeffs })
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn domain(&self) -> CoefficientDomain {
        self.ring.domain()
    }

    pub fn coefficients(&self) -> &[R::Elem] {
        &self.coeffs
    }

    pub fn coefficient(&self, k: GeneratorSubset) -> &R::Elem {
        &self.coeffs[k.mask() as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.ring.is_zero(c))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.domain() != other.domain() {
            return Err(Error::DomainMismatch(
                self.domain().to_string(),
                other.domain().to_string(),
            ));
        }
        if self.coeffs.len() != other.coeffs.len() {
            return Err(Error::Internal("elements of different algebras".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| self.ring.add(a, b))
            .collect();
        Ok(Self {
            ring: self.ring.clone(),
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| self.ring.sub(a, b))
            .collect();
        Ok(Self {
            ring: self.ring.clone(),
            coeffs,
        })
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.ring.mul(a, c)).collect();
        Self {
            ring: self.ring.clone(),
            coeffs,
        }
    }

    /// Nonzero terms as `(K, coefficient)`, ascending by mask.
    pub fn terms(&self) -> impl Iterator<Item = (GeneratorSubset, &R::Elem)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.ring.is_zero(c))
            .map(|(k, c)| (GeneratorSubset(k as u16), c))
    }
}

/// The product `a b`, extending the structure constants bilinearly.
pub fn multiply<R: Ring>(
    a: &DescentElement<R>,
    b: &DescentElement<R>,
    sc: &StructureConstants,
) -> Result<DescentElement<R>> {
    a.check(b)?;
    if a.coeffs.len() != sc.dimension() {
        return Err(Error::Internal("element and structure constants disagree on rank".into()));
    }
    let ring = &a.ring;
    let mut out = vec![ring.zero(); sc.dimension()];
    let bt: Vec<(GeneratorSubset, &R::Elem)> = b.terms().collect();
    for (j, ca) in a.terms() {
        for &(k, cb) in &bt {
            let ab = ring.mul(ca, cb);
            for &(l, n) in sc.get(j, k) {
                let slot = &mut out[l.mask() as usize];
                *slot = ring.add(slot, &ring.mul(&ab, &ring.from_u64(n)));
            }
        }
    }
    Ok(DescentElement {
        ring: ring.clone(),
        coeffs: out,
    })
}

/// The character values `(λ_L(x))_{L ∈ E}` of `x`, where `λ_L(x_J) = β_{J,L}`
/// (with `J` replaced by its class representative).
///
/// Over `F_p` this is the reduction map whose kernel is the radical.
pub fn theta<R: Ring>(x: &DescentElement<R>, marks: &MarksTable) -> Vec<R::Elem> {
    let ring = &x.ring;
    let classes = marks.classes();
    let r = marks.len();
    let mut out = vec![ring.zero(); r];
    for (j, c) in x.terms() {
        let row = classes.class_of(j);
        for (l, slot) in out.iter_mut().enumerate() {
            let beta = ring.from_bigint(&BigInt::from(marks.entry(row, l).clone()));
            *slot = ring.add(slot, &ring.mul(c, &beta));
        }
    }
    out
}

/// A basis of the radical, together with the characteristic it belongs to.
#[derive(Clone, Debug, PartialEq)]
pub struct RadicalBasis<F: Field> {
    pub characteristic: u64,
    pub elements: Vec<DescentElement<F>>,
}

impl<F: Field> RadicalBasis<F> {
    pub fn dimension(&self) -> usize {
        self.elements.len()
    }
}

fn differences<F: Field>(field: &F, classes: &ClassIndex) -> Vec<DescentElement<F>> {
    let n = classes.rank();
    GeneratorSubset::all(n)
        .filter_map(|j| {
            let rep = classes.representative(classes.class_of(j));
            (rep != j).then(|| {
                DescentElement::basis(field.clone(), n, j)
                    .sub(&DescentElement::basis(field.clone(), n, rep))
                    .expect("same algebra")
            })
        })
        .collect()
}

/// The differences `x_J - x_K` of conjugate subsets, one for each `J` that is
/// not its class representative; dimension `2^|S| - r`.
pub fn radical_basis_char0(classes: &ClassIndex) -> RadicalBasis<Rationals> {
    RadicalBasis {
        characteristic: 0,
        elements: differences(&Rationals, classes),
    }
}

/// The char-0 differences reduced mod `p`, together with `x̄_J` for each
/// representative `J` with `p | β_JJ`; dimension `2^|S| - s`.
pub fn radical_basis_mod_p(marks: &MarksTable, p: u64) -> Result<RadicalBasis<PrimeField>> {
    let field = prime_field(p)?;
    let classes = marks.classes();
    let n = classes.rank();
    let mut elements = differences(&field, classes);
    let regular = marks.p_regular_rows(p);
    for (i, cls) in classes.classes().iter().enumerate() {
        if !regular.contains(&i) {
            elements.push(DescentElement::basis(field, n, cls.representative));
        }
    }
    Ok(RadicalBasis {
        characteristic: p,
        elements,
    })
}

pub fn prime_field(p: u64) -> Result<PrimeField> {
    if !crate::ring::is_prime(p) || p >= 1 << 32 {
        return Err(Error::NotPrime(p));
    }
    Ok(PrimeField::new(p))
}

pub fn span<F: Field>(field: &F, dim: usize, elems: &[DescentElement<F>]) -> Subspace<F> {
    let mut s = Subspace::new(field.clone(), dim);
    for e in elems {
        s.insert(&e.coeffs);
    }
    s
}

fn as_elements<F: Field>(field: &F, s: &Subspace<F>) -> Vec<DescentElement<F>> {
    s.basis()
        .iter()
        .map(|v| DescentElement {
            ring: field.clone(),
            coeffs: v.clone(),
        })
        .collect()
}

/// Whether the span of `elems` is closed under multiplication by every `x_K`
/// on both sides.
pub fn is_two_sided_ideal<F: Field>(
    field: &F,
    elems: &[DescentElement<F>],
    sc: &StructureConstants,
) -> Result<bool> {
    let n = sc.rank();
    let s = span(field, sc.dimension(), elems);
    for b in as_elements(field, &s) {
        for k in GeneratorSubset::all(n) {
            let xk = DescentElement::basis(field.clone(), n, k);
            if !s.contains(&multiply(&xk, &b, sc)?.coeffs)
                || !s.contains(&multiply(&b, &xk, sc)?.coeffs)
            {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Smallest `k` with `I^k = 0` for `I` the span of `elems`, searching up to
/// `limit`; `None` if `I^limit` is still nonzero.
pub fn nilpotency_degree<F: Field>(
    field: &F,
    elems: &[DescentElement<F>],
    sc: &StructureConstants,
    limit: usize,
) -> Result<Option<usize>> {
    let base = as_elements(field, &span(field, sc.dimension(), elems));
    let mut power = base.clone();
    for k in 1..=limit {
        if power.is_empty() {
            return Ok(Some(k));
        }
        if k == limit {
            break;
        }
        let mut next = Subspace::new(field.clone(), sc.dimension());
        for a in &power {
            for b in &base {
                next.insert(&multiply(a, b, sc)?.coeffs);
            }
        }
        power = as_elements(field, &next);
    }
    Ok(None)
}

/// Dimension of the kernel of `x ↦ θ(x) mod p` on `Σ(W, p)`, computed
/// directly from the reduced table of marks.
pub fn kernel_dimension_mod_p(marks: &MarksTable, p: u64) -> Result<usize> {
    let field = prime_field(p)?;
    let n = marks.classes().rank();
    let images: Vec<Vec<u64>> = GeneratorSubset::all(n)
        .map(|j| theta(&DescentElement::basis(field, n, j), marks))
        .collect();
    Ok((1 << n) - crate::linalg::rank(field, &images))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::marks::build_marks_table;
    use crate::parabolic::class_index;
    use crate::ring::Integers;
    use num_traits::ToPrimitive;

    fn setup(ty: &str) -> (CoxeterGroup, MarksTable, StructureConstants) {
        let g = CoxeterGroup::build(ty.parse().unwrap()).unwrap();
        let c = class_index(&g);
        let m = build_marks_table(&g, &c);
        let sc = StructureConstants::compute(&g);
        (g, m, sc)
    }

    fn set(idx: &[usize]) -> GeneratorSubset {
        GeneratorSubset::from_indices(idx.iter().copied())
    }

    #[test]
    fn a2_constants() {
        let (g, _, sc) = setup("A2");
        let s1 = set(&[0]);
        let expect: BTreeMap<GeneratorSubset, u64> = [(GeneratorSubset::EMPTY, 1), (s1, 1)].into();
        assert_eq!(structure_constants(&g, s1, s1), expect);
        assert_eq!(sc.get(s1, s1), &[(GeneratorSubset::EMPTY, 1), (s1, 1)]);
        assert_eq!(sc.get(GeneratorSubset::EMPTY, GeneratorSubset::EMPTY), &[(GeneratorSubset::EMPTY, 6)]);
    }

    #[test]
    fn sweep_matches_pairwise() {
        for ty in ["A3", "B3", "H3", "D4", "I2:7"] {
            let g = CoxeterGroup::build(ty.parse().unwrap()).unwrap();
            assert_eq!(StructureConstants::compute(&g), StructureConstants::compute_pairwise(&g), "{ty}");
        }
    }

    #[test]
    fn identity_and_domain_mismatch() {
        let (_, _, sc) = setup("B3");
        let one = DescentElement::identity(Integers, 3);
        for k in GeneratorSubset::all(3) {
            let x = DescentElement::basis(Integers, 3, k);
            assert_eq!(multiply(&one, &x, &sc).unwrap(), x);
            assert_eq!(multiply(&x, &one, &sc).unwrap(), x);
        }
        let a = DescentElement::identity(PrimeField::new(2), 3);
        let b = DescentElement::identity(PrimeField::new(3), 3);
        assert!(matches!(multiply(&a, &b, &sc), Err(Error::DomainMismatch(..))));
    }

    #[test]
    fn a2_radical_squares_to_zero() {
        let (_, marks, sc) = setup("A2");
        let r0 = radical_basis_char0(marks.classes());
        assert_eq!(r0.dimension(), 1);
        for p in [2, 3, 5, 7] {
            let f = PrimeField::new(p);
            let d = DescentElement::basis(f, 2, set(&[0]))
                .sub(&DescentElement::basis(f, 2, set(&[1])))
                .unwrap();
            assert!(multiply(&d, &d, &sc).unwrap().is_zero());
        }
        assert_eq!(radical_basis_mod_p(&marks, 3).unwrap().dimension(), 2);
        assert_eq!(nilpotency_degree(&Rationals, &r0.elements, &sc, 3).unwrap(), Some(2));
        let empty: Vec<DescentElement<Rationals>> = Vec::new();
        assert_eq!(nilpotency_degree(&Rationals, &empty, &sc, 3).unwrap(), Some(1));
    }

    #[test]
    fn theta_is_multiplicative_on_a3() {
        let (_, marks, sc) = setup("A3");
        for j in GeneratorSubset::all(3) {
            for k in GeneratorSubset::all(3) {
                let xj = DescentElement::basis(Integers, 3, j);
                let xk = DescentElement::basis(Integers, 3, k);
                let lhs = theta(&multiply(&xj, &xk, &sc).unwrap(), &marks);
                let rhs: Vec<BigInt> = theta(&xj, &marks)
                    .iter()
                    .zip(theta(&xk, &marks))
                    .map(|(a, b)| a * b)
                    .collect();
                assert_eq!(lhs, rhs);
            }
        }
        let ones = theta(&DescentElement::identity(Integers, 3), &marks);
        assert!(ones.iter().all(|v| v.to_i64() == Some(1)));
    }

    #[test]
    fn f4_radical_dimensions() {
        let (_, marks, sc) = setup("F4");
        let r0 = radical_basis_char0(marks.classes());
        assert_eq!(r0.dimension(), 4);
        let r2 = radical_basis_mod_p(&marks, 2).unwrap();
        assert_eq!(r2.dimension(), 15);
        assert_eq!(kernel_dimension_mod_p(&marks, 2).unwrap(), 15);
        let f = PrimeField::new(2);
        assert!(is_two_sided_ideal(&f, &r2.elements, &sc).unwrap());
        let deg = nilpotency_degree(&f, &r2.elements, &sc, 5).unwrap();
        assert!(deg.is_some_and(|d| d <= 5), "{deg:?}");
        assert!(radical_basis_mod_p(&marks, 4).is_err());
    }
}
