//! Dense integer matrices with exact, fraction-free rank.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m[(i, i)] = 1;
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.as_ref().len(), cols, "ragged matrix rows");
            data.extend_from_slice(r.as_ref());
        }
        IntegerMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [i64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = i64> + '_ {
        (0..self.rows).map(move |i| self.data[i * self.cols + j])
    }

    pub fn column_is_zero(&self, j: usize) -> bool {
        self.column(j).all(|x| x == 0)
    }

    /// Exact rank over `Q` by Bareiss elimination.
    ///
    /// All-zero rows are dropped first. Every stored intermediate is a minor
    /// of the input, so each division is exact; products are formed in
    /// `i128` and any minor that does not fit `i64` aborts with
    /// [`Error::OverflowDetected`].
    pub fn rank_fraction_free(&self) -> Result<usize> {
        let mut work: Vec<Vec<i64>> = (0..self.rows)
            .map(|i| self.row(i))
            .filter(|r| r.iter().any(|&x| x != 0))
            .map(|r| r.to_vec())
            .collect();
        let nrows = work.len();
        let mut rank = 0;
        let mut prev: i128 = 1;
        for col in 0..self.cols {
            if rank == nrows {
                break;
            }
            let Some(pivot_row) = (rank..nrows).find(|&i| work[i][col] != 0) else {
                continue;
            };
            work.swap(rank, pivot_row);
            let (head, tail) = work.split_at_mut(rank + 1);
            let pivot = &head[rank];
            let pv = pivot[col] as i128;
            for row in tail.iter_mut() {
                let factor = row[col] as i128;
                for j in col + 1..self.cols {
                    let num = pv * row[j] as i128 - factor * pivot[j] as i128;
                    debug_assert_eq!(num % prev, 0, "Bareiss division must be exact");
                    row[j] = i64::try_from(num / prev).map_err(|_| Error::OverflowDetected)?;
                }
                row[col] = 0;
            }
            prev = pv;
            rank += 1;
        }
        Ok(rank)
    }
}

impl core::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = i64;

    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.rows).map(|i| self.row(i)))
            .finish()
    }
}
