//! Exact linear algebra: row reduction over a field and fraction-free rank
//! over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::ring::Field;

/// A subspace of `F^n` held as a reduced row-echelon basis.
#[derive(Clone, Debug)]
pub struct Subspace<F: Field> {
    field: F,
    dim: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn new(field: F, dim: usize) -> Self {
        Self {
            field,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn spanned_by<'a>(
        field: F,
        dim: usize,
        vectors: impl IntoIterator<Item = &'a Vec<F::Elem>>,
    ) -> Self
    where
        F::Elem: 'a,
    {
        let mut s = Self::new(field, dim);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dimension(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    /// Reduces `v` against the basis; the result is zero iff `v` is in the span.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !f.is_zero(&v[p]) {
                let c = v[p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    if !f.is_zero(r) {
                        *x = f.sub(x, &f.mul(&c, r));
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.reduce(v).iter().all(|x| self.field.is_zero(x))
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[F::Elem]) -> bool {
        let f = self.field.clone();
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&v[p]).expect("pivot is nonzero");
        for x in v.iter_mut() {
            *x = f.mul(x, &inv);
        }
        // keep the basis fully reduced
        for row in self.rows.iter_mut() {
            if !f.is_zero(&row[p]) {
                let c = row[p].clone();
                for (x, r) in row.iter_mut().zip(&v) {
                    if !f.is_zero(r) {
                        *x = f.sub(x, &f.mul(&c, r));
                    }
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }
}

pub fn rank<F: Field>(field: F, rows: &[Vec<F::Elem>]) -> usize {
    let dim = rows.first().map_or(0, Vec::len);
    Subspace::spanned_by(field, dim, rows).dimension()
}

/// Inverse of a square matrix over a field, by Gauss-Jordan elimination.
pub fn invert<F: Field>(field: &F, m: &[Vec<F::Elem>]) -> Option<Vec<Vec<F::Elem>>> {
    let n = m.len();
    let mut a: Vec<Vec<F::Elem>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { field.one() } else { field.zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !field.is_zero(&a[r][col]))?;
        a.swap(col, piv);
        let inv = field.inv(&a[col][col])?;
        for x in a[col].iter_mut() {
            *x = field.mul(x, &inv);
        }
        for r in 0..n {
            if r != col && !field.is_zero(&a[r][col]) {
                let c = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot_row) {
                    *x = field.sub(x, &field.mul(&c, p));
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
pub fn integer_rank(rows: &[Vec<BigInt>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for col in 0..n {
        if r == m {
            break;
        }
        let Some(piv) = (r..m).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, piv);
        for i in r + 1..m {
            for j in col + 1..n {
                let v = &a[r][col] * &a[i][j] - &a[i][col] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[r][col].clone();
        r += 1;
    }
    r
}

/// Rank of a rational matrix: clear denominators row by row, then run the
/// fraction-free elimination.
pub fn rational_rank(rows: &[Vec<BigRational>]) -> usize {
    let ints: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let l = row
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter()
                .map(|x| x.numer() * (&l / x.denom()))
                .collect()
        })
        .collect();
    integer_rank(&ints)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{PrimeField, Rationals, Ring};
    use proptest::prelude::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn subspace_membership() {
        let mut s = Subspace::new(Rationals, 3);
        assert!(s.insert(&[q(1), q(2), q(3)]));
        assert!(s.insert(&[q(0), q(1), q(1)]));
        assert!(!s.insert(&[q(1), q(3), q(4)]));
        assert!(s.contains(&[q(2), q(5), q(7)]));
        assert!(!s.contains(&[q(0), q(0), q(1)]));
        assert_eq!(s.dimension(), 2);
    }

    #[test]
    fn rank_mod_p_differs_from_rank_over_q() {
        let rows = vec![vec![q(2), q(0)], vec![q(0), q(3)]];
        assert_eq!(rational_rank(&rows), 2);
        let f = PrimeField::new(2);
        let rows2: Vec<Vec<u64>> = vec![vec![0, 0], vec![0, 1]];
        assert_eq!(rank(f, &rows2), 1);
    }

    #[test]
    fn invert_roundtrip() {
        let f = PrimeField::new(5);
        let m = vec![vec![1, 2], vec![3, 4]];
        let inv = invert(&f, &m).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let v = (0..2).fold(0, |acc, k| f.add(&acc, &f.mul(&m[i][k], &inv[k][j])));
                assert_eq!(v, u64::from(i == j));
            }
        }
        assert!(invert(&f, &[vec![1, 2], vec![2, 4]]).is_none());
    }

    proptest! {
        #[test]
        fn bareiss_agrees_with_field_elimination(
            entries in proptest::collection::vec(-4i64..5, 12)
        ) {
            let int_rows: Vec<Vec<BigInt>> =
                entries.chunks(4).map(|c| c.iter().map(|&x| BigInt::from(x)).collect()).collect();
            let rat_rows: Vec<Vec<BigRational>> =
                entries.chunks(4).map(|c| c.iter().map(|&x| q(x)).collect()).collect();
            prop_assert_eq!(integer_rank(&int_rows), rank(Rationals, &rat_rows));
        }
    }
}
