//! Serializable records for every artifact the workbench emits or caches.
//!
//! Row and column indices are positions in `E` (0-based). Arbitrary
//! precision integers are encoded as decimal strings.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::cartan::CartanComparison;
use crate::descent::{RadicalBasis, StructureConstants};
use crate::descriptor::CoxeterType;
use crate::error::{Error, Result};
use crate::marks::MarksTable;
use crate::modular::{decomposition_matrix, p_arrow_classes, ArrowClasses, DecompositionMatrix};
use crate::parabolic::{ClassIndex, SubsetClass};
use crate::ring::Field;
use crate::subset::GeneratorSubset;
use crate::workbench::Workbench;

pub const SCHEMA_VERSION: u32 = 1;

/// One element of `E`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelRecord {
    pub index: usize,
    pub iso_type: String,
    pub mask: u16,
    /// `β_JJ`.
    pub beta: String,
    /// Masks of every subset in the class.
    pub members: Vec<u16>,
}

pub fn labels(classes: &ClassIndex) -> Vec<LabelRecord> {
    classes
        .classes()
        .iter()
        .enumerate()
        .map(|(index, c)| LabelRecord {
            index,
            iso_type: c.iso_type.clone(),
            mask: c.representative.mask(),
            beta: c.normalizer_index.to_string(),
            members: c.members.iter().map(|m| m.mask()).collect(),
        })
        .collect()
}

fn parse_big(s: &str) -> Result<BigUint> {
    s.parse()
        .map_err(|_| Error::Parse(format!("not a nonnegative integer: {s:?}")))
}

fn class_index(rank: usize, labels: &[LabelRecord]) -> Result<ClassIndex> {
    let classes = labels
        .iter()
        .map(|l| {
            Ok(SubsetClass {
                representative: GeneratorSubset(l.mask),
                members: l.members.iter().map(|&m| GeneratorSubset(m)).collect(),
                normalizer_index: parse_big(&l.beta)?,
                iso_type: l.iso_type.clone(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    ClassIndex::from_classes(rank, classes)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarksRecord {
    pub schema_version: u32,
    pub descriptor: CoxeterType,
    pub labels: Vec<LabelRecord>,
    pub matrix: Vec<Vec<String>>,
}

impl MarksRecord {
    pub fn from_table(m: &MarksTable) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            descriptor: m.descriptor(),
            labels: labels(m.classes()),
            matrix: m
                .entries()
                .iter()
                .map(|row| row.iter().map(|x| x.to_string()).collect())
                .collect(),
        }
    }

    pub fn to_table(&self) -> Result<MarksTable> {
        let classes = class_index(self.descriptor.rank, &self.labels)?;
        let entries = self
            .matrix
            .iter()
            .map(|row| row.iter().map(|x| parse_big(x)).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        MarksTable::from_parts(self.descriptor, classes, entries)
    }
}

/// Nonzero `a_JKL` for one pair `(J, K)`, as `[L, a_JKL]` mask pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductRecord {
    pub j: u16,
    pub k: u16,
    pub terms: Vec<(u16, u64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureConstantsRecord {
    pub schema_version: u32,
    pub descriptor: CoxeterType,
    pub products: Vec<ProductRecord>,
}

impl StructureConstantsRecord {
    pub fn from_constants(descriptor: CoxeterType, sc: &StructureConstants) -> Self {
        let n = sc.rank();
        let products = sc
            .table()
            .iter()
            .enumerate()
            .map(|(jk, terms)| ProductRecord {
                j: (jk >> n) as u16,
                k: (jk & ((1 << n) - 1)) as u16,
                terms: terms.iter().map(|&(l, a)| (l.mask(), a)).collect(),
            })
            .collect();
        Self {
            schema_version: SCHEMA_VERSION,
            descriptor,
            products,
        }
    }

    pub fn to_constants(&self) -> Result<StructureConstants> {
        let n = self.descriptor.rank;
        let mut table = vec![Vec::new(); 1 << (2 * n)];
        for p in &self.products {
            let slot = table
                .get_mut(((p.j as usize) << n) | p.k as usize)
                .ok_or_else(|| Error::Parse(format!("product ({}, {}) out of range", p.j, p.k)))?;
            *slot = p.terms.iter().map(|&(l, a)| (GeneratorSubset(l), a)).collect();
        }
        StructureConstants::from_table(n, table)
    }
}

/// The decomposition data for one prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeDecompRecord {
    pub p: u64,
    pub s: usize,
    /// Rows with `p ∤ β_JJ`, indexing the columns of `matrix`.
    pub f: Vec<usize>,
    /// `E × F` 0/1 matrix.
    pub matrix: Vec<Vec<u8>>,
    /// `targets[K]`: every `L` with `K →_p L`.
    pub targets: Vec<Vec<usize>>,
    /// Least member of the class of each row.
    pub representative: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
    /// Row entries in table notation, with rows numbered from 1.
    pub entries: Vec<String>,
}

impl PrimeDecompRecord {
    pub fn new(d: &DecompositionMatrix, arrows: &ArrowClasses) -> Self {
        Self {
            p: d.p,
            s: d.s(),
            f: d.f.clone(),
            matrix: d
                .entries
                .iter()
                .map(|row| row.iter().map(|&b| b as u8).collect())
                .collect(),
            targets: arrows.targets.clone(),
            representative: arrows.representative.clone(),
            classes: arrows.classes(),
            entries: (0..arrows.targets.len())
                .map(|k| arrows.render(k, |x| x + 1))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompRecord {
    pub schema_version: u32,
    pub descriptor: CoxeterType,
    pub labels: Vec<LabelRecord>,
    pub primes: Vec<PrimeDecompRecord>,
}

impl DecompRecord {
    pub fn compute(wb: &Workbench, primes: &[u64]) -> Result<Self> {
        let primes = primes
            .iter()
            .map(|&p| {
                let d = decomposition_matrix(wb.marks(), p)?;
                let arrows = p_arrow_classes(wb, p)?;
                Ok(PrimeDecompRecord::new(&d, &arrows))
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            schema_version: SCHEMA_VERSION,
            descriptor: wb.coxeter_type(),
            labels: labels(wb.classes()),
            primes,
        })
    }
}

/// A Cartan matrix with its index set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixRecord {
    pub index: Vec<usize>,
    pub entries: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeCartanRecord {
    pub p: u64,
    pub c_tilde: MatrixRecord,
    pub dt_c_d: Vec<Vec<u64>>,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanRecord {
    pub schema_version: u32,
    pub descriptor: CoxeterType,
    pub labels: Vec<LabelRecord>,
    pub c: MatrixRecord,
    pub primes: Vec<PrimeCartanRecord>,
}

impl PrimeCartanRecord {
    pub fn new(p: u64, cmp: &CartanComparison) -> Self {
        Self {
            p,
            c_tilde: MatrixRecord {
                index: cmp.c_tilde.index.clone(),
                entries: cmp.c_tilde.entries.clone(),
            },
            dt_c_d: cmp.dt_c_d.clone(),
            equal: cmp.equal(),
        }
    }
}

/// A radical basis; `characteristic` is 0 or `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadicalPartRecord {
    pub characteristic: u64,
    /// Number of irreducible representations (`r` or `s`).
    pub irreducibles: usize,
    pub dimension: usize,
    /// Coefficients of each basis vector, indexed by mask.
    pub basis: Vec<Vec<String>>,
}

impl RadicalPartRecord {
    pub fn new<F: Field>(field: &F, irreducibles: usize, basis: &RadicalBasis<F>) -> Self {
        Self {
            characteristic: basis.characteristic,
            irreducibles,
            dimension: basis.dimension(),
            basis: basis
                .elements
                .iter()
                .map(|e| e.coefficients().iter().map(|c| field.to_string(c)).collect())
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadicalRecord {
    pub schema_version: u32,
    pub descriptor: CoxeterType,
    pub algebra_dimension: usize,
    pub parts: Vec<RadicalPartRecord>,
}

/// Outcome of one named group of checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl CheckRecord {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRecord {
    pub schema_version: u32,
    pub descriptor: CoxeterType,
    pub checks: Vec<CheckRecord>,
}

impl VerifyRecord {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckRecord::passed)
    }
}
