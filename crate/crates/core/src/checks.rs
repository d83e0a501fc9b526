//! Property checks over a [`Workbench`], each returning a [`VerifyReport`].

use num_bigint::BigUint;
use num_traits::Zero;

use crate::cartan::verify_cdc;
use crate::classical::normalizer_index_formula;
use crate::descent::{
    is_two_sided_ideal, nilpotency_degree, prime_field, radical_basis_char0, radical_basis_mod_p,
    theta,
};
use crate::descriptor::Family;
use crate::error::Result;
use crate::marks::build_marks_table_by_double_cosets;
use crate::modular::{decomposition_matrix, VerifyReport};
use crate::oracle;
use crate::reference::{compare, ReferenceTable};
use crate::report::DecompRecord;
use crate::ring::Rationals;
use crate::subset::GeneratorSubset;
use crate::workbench::Workbench;

/// Both constructions of the table of marks agree; the table is lower
/// triangular with `β_JJ | β_JK` and distinct columns; its rational rank is
/// `r` and its `p`-rank is `s` for each prime in `primes`.
pub fn check_marks(wb: &Workbench, primes: &[u64]) -> VerifyReport {
    let mut rep = VerifyReport::default();
    let m = wb.marks();
    let other = build_marks_table_by_double_cosets(wb.group(), wb.classes());
    for j in 0..m.len() {
        for k in 0..m.len() {
            rep.check(m.entry(j, k) == other.entry(j, k), || {
                format!("beta({j}, {k}): {} by fixed points, {} by double cosets", m.entry(j, k), other.entry(j, k))
            });
            let d = m.entry(j, j);
            rep.check(!d.is_zero() && (m.entry(j, k) % d).is_zero(), || {
                format!("beta({j}, {j}) does not divide beta({j}, {k})")
            });
            if k > j {
                rep.check(m.entry(j, k).is_zero(), || format!("entry ({j}, {k}) above the diagonal"));
            }
        }
    }
    let mut cols: Vec<Vec<BigUint>> = (0..m.len()).map(|k| m.column(k)).collect();
    cols.sort();
    cols.dedup();
    rep.check(cols.len() == m.len(), || "two columns coincide".to_string());
    rep.check(m.rank() == m.len(), || format!("rank {} with {} classes", m.rank(), m.len()));
    for &p in primes {
        let s = m.p_regular_rows(p).len();
        rep.check(m.rank_mod_p(p) == s, || format!("p = {p}: rank mod p {} but s = {s}", m.rank_mod_p(p)));
    }
    rep
}

/// `[N_W(W_K) : W_K]` against the closed forms for types `A`, `B`, `D`.
pub fn check_normalizers(wb: &Workbench) -> Result<VerifyReport> {
    let ty = wb.coxeter_type();
    let mut rep = VerifyReport::default();
    if !matches!(ty.family, Family::A | Family::B | Family::D) {
        return Ok(rep);
    }
    for k in GeneratorSubset::all(ty.rank) {
        let got = &wb.classes().class(wb.classes().class_of(k)).normalizer_index;
        let want = normalizer_index_formula(ty, k)?;
        rep.check(*got == want, || format!("{k}: normalizer index {got}, closed form {want}"));
    }
    Ok(rep)
}

/// Radical in characteristic 0 (`characteristic = None`) or `p`: dimension
/// `2^|S| - r` (resp. `- s`), a two-sided ideal, nilpotent of degree at most
/// `|S| + 1`, and for `p` killed by `θ` mod `p`.
pub fn check_radical(wb: &Workbench, characteristic: Option<u64>) -> Result<VerifyReport> {
    let sc = wb.structure_constants();
    let n = sc.rank();
    let dim = sc.dimension();
    let mut rep = VerifyReport::default();
    match characteristic {
        None => {
            let b = radical_basis_char0(wb.classes());
            let r = wb.classes().len();
            rep.check(b.dimension() == dim - r, || format!("dimension {} but 2^|S| - r = {}", b.dimension(), dim - r));
            rep.check(is_two_sided_ideal(&Rationals, &b.elements, sc)?, || "not a two-sided ideal".into());
            let deg = nilpotency_degree(&Rationals, &b.elements, sc, n + 1)?;
            rep.check(deg.is_some(), || format!("not nilpotent within {} products", n + 1));
            for (i, e) in b.elements.iter().enumerate() {
                rep.check(theta(e, wb.marks()).iter().all(|x| x.is_zero()), || {
                    format!("basis vector {i} has nonzero image under theta")
                });
            }
        }
        Some(p) => {
            let f = prime_field(p)?;
            let b = radical_basis_mod_p(wb.marks(), p)?;
            let s = wb.marks().p_regular_rows(p).len();
            rep.check(b.dimension() == dim - s, || format!("p = {p}: dimension {} but 2^|S| - s = {}", b.dimension(), dim - s));
            rep.check(crate::descent::span(&f, dim, &b.elements).dimension() == b.dimension(), || {
                format!("p = {p}: basis is linearly dependent")
            });
            rep.check(is_two_sided_ideal(&f, &b.elements, sc)?, || format!("p = {p}: not a two-sided ideal"));
            let deg = nilpotency_degree(&f, &b.elements, sc, n + 1)?;
            rep.check(deg.is_some(), || format!("p = {p}: not nilpotent within {} products", n + 1));
            for (i, e) in b.elements.iter().enumerate() {
                rep.check(theta(e, wb.marks()).iter().all(|&x| x == 0), || {
                    format!("p = {p}: basis vector {i} has nonzero image under theta mod p")
                });
            }
            let kernel = crate::descent::kernel_dimension_mod_p(wb.marks(), p)?;
            rep.check(kernel == b.dimension(), || {
                format!("p = {p}: kernel of theta mod p has dimension {kernel}, radical {}", b.dimension())
            });
        }
    }
    Ok(rep)
}

/// `C̃ = DᵀCD`, entry sums and the idempotent axioms for one prime.
pub fn check_cartan(wb: &Workbench, p: u64) -> Result<VerifyReport> {
    let d = decomposition_matrix(wb.marks(), p)?;
    Ok(verify_cdc(wb.marks(), wb.structure_constants(), &d)?.1)
}

/// Structure constants against brute-force products in the group algebra.
pub fn check_oracle(wb: &Workbench) -> Result<VerifyReport> {
    let g = wb.group();
    let sc = wb.structure_constants();
    let n = g.rank();
    let mut rep = VerifyReport::default();
    for j in GeneratorSubset::all(n) {
        for k in GeneratorSubset::all(n) {
            let brute = oracle::product(g, j, k)?;
            let mut fast = vec![0i64; 1 << n];
            for &(l, a) in sc.get(j, k) {
                fast[l.mask() as usize] = a as i64;
            }
            rep.check(brute == fast, || format!("x_{j} x_{k}: {fast:?}, group algebra gives {brute:?}"));
        }
    }
    Ok(rep)
}

/// The computed decomposition data against a published table.
pub fn check_published(wb: &Workbench, table: &ReferenceTable) -> Result<VerifyReport> {
    let rec = DecompRecord::compute(wb, table.primes)?;
    let cmp = compare(table, &rec);
    let mut rep = VerifyReport::default();
    rep.check(cmp.passed(), || format!("{} does not match: {}", table.descriptor, cmp.failures.join("; ")));
    let symmetries = wb.classes().induced_permutations(&wb.coxeter_type().diagram_automorphisms());
    let distinct = cmp.distinct_up_to(&symmetries);
    rep.check(!cmp.passed() || distinct == 1, || {
        format!("{distinct} row assignments reproduce the table up to diagram automorphisms")
    });
    Ok(rep)
}
