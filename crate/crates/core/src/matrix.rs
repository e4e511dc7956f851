use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::label::Label;

/// A square matrix of exact nonnegative rationals.
///
/// The weight `|A|` is the sum of all entries. For nonnegative matrices,
/// nilpotency is equivalent to the support digraph (nonzero entries read as
/// edges) being acyclic; both tests are exposed so they can cross-check each
/// other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledMatrix {
    dim: usize,
    entries: Vec<Label>,
}

impl LabeledMatrix {
    pub fn zeros(dim: usize) -> Self {
        LabeledMatrix {
            dim,
            entries: alloc::vec![Label::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Label::one());
        }
        m
    }

    /// Builds a matrix from rows; every row must have the same length as the
    /// number of rows.
    pub fn from_rows(rows: Vec<Vec<Label>>) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(LabeledMatrix { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Label {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Label) {
        self.entries[i * self.dim + j] = value;
    }

    /// Sum of all entries, exactly.
    pub fn weight(&self) -> Label {
        self.entries.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Label::is_zero)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let mut cell = out.get(i, j).clone();
                    cell += &(a * b);
                    out.set(i, j, cell);
                }
            }
        }
        out
    }

    /// Exact `k`-th power, `k >= 1`.
    pub fn pow(&self, k: u32) -> Self {
        assert!(k >= 1, "matrix power needs k >= 1");
        let mut result: Option<Self> = None;
        let mut base = self.clone();
        let mut exp = k;
        loop {
            if exp & 1 == 1 {
                result = Some(match result {
                    Some(r) => r.mul(&base),
                    None => base.clone(),
                });
            }
            exp >>= 1;
            if exp == 0 {
                break;
            }
            base = base.mul(&base);
        }
        result.expect("k >= 1")
    }

    /// True iff some power of the matrix vanishes. Decided by cycle
    /// detection on the support digraph, which for nonnegative entries is
    /// equivalent to `A^dim = 0`; see [`Self::is_nilpotent_by_power`] for
    /// the direct cross-check.
    pub fn is_nilpotent(&self) -> bool {
        // Kahn's algorithm on the support.
        let n = self.dim;
        let mut indeg = alloc::vec![0usize; n];
        for i in 0..n {
            for (j, deg) in indeg.iter_mut().enumerate() {
                if !self.get(i, j).is_zero() {
                    *deg += 1;
                }
            }
        }
        let mut done = alloc::vec![false; n];
        for _ in 0..n {
            let next = match (0..n).find(|&v| !done[v] && indeg[v] == 0) {
                Some(v) => v,
                None => return false,
            };
            done[next] = true;
            for (j, deg) in indeg.iter_mut().enumerate() {
                if !self.get(next, j).is_zero() {
                    *deg -= 1;
                }
            }
        }
        true
    }

    /// The direct nilpotency test `A^dim = 0`, exposed as a cross-check mode
    /// for [`Self::is_nilpotent`].
    pub fn is_nilpotent_by_power(&self) -> bool {
        if self.dim == 0 {
            return true;
        }
        self.pow(self.dim as u32).is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lab(s: &str) -> Label {
        s.parse().unwrap()
    }

    fn from_ints(rows: &[&[u64]]) -> LabeledMatrix {
        LabeledMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Label::from_int(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn power_and_weight() {
        let a = from_ints(&[&[0, 2, 0], &[0, 0, 3], &[0, 0, 0]]);
        let a2 = a.pow(2);
        assert_eq!(a2.get(0, 2), &lab("6"));
        assert_eq!(a2.weight(), lab("6"));
        assert_eq!(a.pow(1), a);
        assert!(a.pow(3).is_zero());

        // Strictly upper triangular 4x4 with unit superdiagonal: exactly one
        // walk of length 3.
        let p = from_ints(&[&[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1], &[0, 0, 0, 0]]);
        assert_eq!(p.pow(3).weight(), lab("1"));
        assert_eq!(p.pow(2).mul(&p), p.pow(3));
    }

    #[test]
    fn nilpotency() {
        let cycle = from_ints(&[&[0, 1], &[1, 0]]);
        assert!(!cycle.is_nilpotent());
        assert!(!cycle.is_nilpotent_by_power());

        let upper = from_ints(&[&[0, 1], &[0, 0]]);
        assert!(upper.is_nilpotent());
        assert!(upper.is_nilpotent_by_power());
        assert!(upper.pow(2).is_zero());

        let loopy = from_ints(&[&[1]]);
        assert!(!loopy.is_nilpotent());
    }

    #[test]
    fn ragged_rows_rejected() {
        let bad = LabeledMatrix::from_rows(alloc::vec![
            alloc::vec![Label::zero(), Label::zero()],
            alloc::vec![Label::zero()],
        ]);
        assert_eq!(
            bad,
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 1
            })
        );
    }
}
