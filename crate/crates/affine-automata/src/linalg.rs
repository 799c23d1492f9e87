//! Affine vectors and matrices over exact rationals.
//!
//! An [`AffineVector`] has entry sum exactly 1; an affine matrix has every
//! column summing to 1, which makes matrix application preserve the entry
//! sum. The [`AffineVector::weigh`] operator turns a final affine state into
//! observation probabilities via normalized absolute values.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, ValidationReport};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineVector {
    entries: Vec<Rational>,
}

impl AffineVector {
    /// Wraps `entries`, checking that they sum to exactly 1.
    pub fn new(entries: Vec<Rational>) -> Result<Self, Error> {
        let sum: Rational = entries.iter().sum();
        if !sum.is_one() {
            return Err(Error::NotAffine {
                got: sum.to_string(),
            });
        }
        Ok(Self { entries })
    }

    /// The standard basis vector with a 1 at `index`.
    pub fn basis(dim: usize, index: usize) -> Result<Self, Error> {
        if index >= dim {
            return Err(Error::IndexOutOfBounds { index, dim });
        }
        let mut entries = vec![Rational::zero(); dim];
        entries[index] = Rational::one();
        Ok(Self { entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn get(&self, index: usize) -> Result<&Rational, Error> {
        self.entries.get(index).ok_or(Error::IndexOutOfBounds {
            index,
            dim: self.entries.len(),
        })
    }

    /// Sum of absolute values. Always >= 1 for an affine vector, since the
    /// entries sum to 1.
    pub fn l1_norm(&self) -> Rational {
        self.entries.iter().map(|e| e.abs()).sum()
    }

    /// Weighting operator: total observation probability of the given state
    /// indices, `sum |v[i]| / ||v||_1`. The l1 norm is at least 1, so the
    /// division is always defined.
    pub fn weigh(&self, indices: impl IntoIterator<Item = usize>) -> Result<Rational, Error> {
        let norm = self.l1_norm();
        let mut acc = Rational::zero();
        for i in indices {
            acc += self.get(i)?.abs();
        }
        Ok(acc / norm)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMatrix {
    dim: usize,
    rows: Vec<Vec<Rational>>,
}

impl AffineMatrix {
    /// Builds a matrix from rows. Only the shape is checked here; column
    /// sums are the job of [`AffineMatrix::validate`].
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, Error> {
        let dim = rows.len();
        for row in &rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "expected {dim}x{dim} matrix, got a row of length {}",
                    row.len()
                )));
            }
        }
        Ok(Self { dim, rows })
    }

    pub fn identity(dim: usize) -> Self {
        let rows = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                    .collect()
            })
            .collect();
        Self { dim, rows }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn entry(&self, row: usize, col: usize) -> &Rational {
        &self.rows[row][col]
    }

    /// Checks that every column sums to exactly 1, reporting each offending
    /// column together with its actual sum.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::ok();
        for col in 0..self.dim {
            let sum: Rational = self.rows.iter().map(|row| row[col].clone()).sum();
            if !sum.is_one() {
                report.push(format!("column {} sums to {}, expected 1", col + 1, sum));
            }
        }
        report
    }

    /// Exact matrix-vector product. For a well-formed matrix the result is
    /// again affine; the constructor re-checks the entry sum.
    pub fn apply(&self, v: &AffineVector) -> Result<AffineVector, Error> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "matrix is {}x{} but vector has dimension {}",
                self.dim,
                self.dim,
                v.dim()
            )));
        }
        let entries = self
            .rows
            .iter()
            .map(|row| row.iter().zip(v.entries()).map(|(a, b)| a * b).sum())
            .collect();
        AffineVector::new(entries)
    }

    /// Matrix product `self * other`.
    pub fn compose(&self, other: &AffineMatrix) -> Result<AffineMatrix, Error> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose {}x{} with {}x{}",
                self.dim, self.dim, other.dim, other.dim
            )));
        }
        let rows = (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| {
                        (0..self.dim)
                            .map(|l| self.entry(i, l) * other.entry(l, j))
                            .sum()
                    })
                    .collect()
            })
            .collect();
        AffineMatrix::from_rows(rows)
    }
}

/// Convenience for literal matrices in builders and tests.
pub fn matrix_from_i64(rows: &[&[i64]]) -> AffineMatrix {
    let rows = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|&x| Rational::from_integer(x.into()))
                .collect()
        })
        .collect();
    AffineMatrix::from_rows(rows).expect("literal matrix must be square")
}

/// Convenience for literal vectors in tests and oracles.
pub fn vector_from_i64(entries: &[i64]) -> Result<AffineVector, Error> {
    AffineVector::new(
        entries
            .iter()
            .map(|&x| Rational::from_integer(x.into()))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};
    use crate::zoo;

    #[test]
    fn vector_sum_enforced() {
        assert!(vector_from_i64(&[1, 0, 0]).is_ok());
        assert!(matches!(
            vector_from_i64(&[1, 1, 0]),
            Err(Error::NotAffine { .. })
        ));
    }

    #[test]
    fn identity_apply_is_noop() {
        let v = vector_from_i64(&[3, -2, 0]).unwrap();
        let id = AffineMatrix::identity(3);
        assert_eq!(id.apply(&v).unwrap(), v);
        assert!(id.validate().is_ok());
    }

    #[test]
    fn pal_npal_columns_from_basis() {
        // M_1 and M_2 applied to (0,0,1,0,0)^T pick out their third columns.
        let e3 = AffineVector::basis(5, 2).unwrap();
        let v1 = zoo::pal_npal_m1().apply(&e3).unwrap();
        assert_eq!(v1, vector_from_i64(&[1, 1, 3, 0, -4]).unwrap());
        let v2 = zoo::pal_npal_m2().apply(&e3).unwrap();
        assert_eq!(v2, vector_from_i64(&[2, 2, 3, 0, -6]).unwrap());
    }

    #[test]
    fn weigh_examples() {
        let v = vector_from_i64(&[1, 0, 0]).unwrap();
        assert_eq!(v.weigh([0]).unwrap(), rat_int(1));

        // Final pal-npal vector for x=1, y=12, k=1.
        let v = vector_from_i64(&[-2, 2, 0, 0, 1]).unwrap();
        assert_eq!(v.l1_norm(), rat_int(5));
        assert_eq!(v.weigh([0, 1]).unwrap(), rat(4, 5));

        let v = AffineVector::new(vec![rat(1, 2), rat(1, 2), rat_int(0)]).unwrap();
        assert_eq!(v.weigh([2]).unwrap(), rat_int(0));
        assert!(v.weigh([3]).is_err());
    }

    #[test]
    fn validate_reports_offending_columns() {
        let m = matrix_from_i64(&[&[1, 0], &[1, 1]]);
        let report = m.validate();
        assert!(!report.is_ok());
        assert_eq!(report.problems, vec!["column 1 sums to 2, expected 1"]);

        assert!(zoo::pal_npal_m0().validate().is_ok());
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let m = AffineMatrix::identity(2);
        let v = vector_from_i64(&[1, 0, 0]).unwrap();
        assert!(matches!(m.apply(&v), Err(Error::DimensionMismatch(_))));
    }
}
