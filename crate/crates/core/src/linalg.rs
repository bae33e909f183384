//! Exact row reduction over ℚ(√2).

use crate::scalar::QuadRat;

/// An incrementally maintained reduced row echelon form.
///
/// Every stored row has a leading 1 in its pivot column and zeros in every
/// other row's pivot column. Rows are kept sorted by pivot.
#[derive(Clone, Debug, Default)]
pub struct RowReducer {
    ncols: usize,
    rows: Vec<Vec<QuadRat>>,
    pivots: Vec<usize>,
}

fn axpy(target: &mut [QuadRat], factor: &QuadRat, row: &[QuadRat]) {
    for (t, r) in target.iter_mut().zip(row) {
        if !r.is_zero() {
            *t = &*t - &(factor * r);
        }
    }
}

impl RowReducer {
    pub fn new(ncols: usize) -> Self {
        RowReducer { ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<QuadRat>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The remainder of `v` after elimination against the stored rows.
    pub fn reduce(&self, v: &[QuadRat]) -> Vec<QuadRat> {
        assert_eq!(v.len(), self.ncols);
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let factor = v[p].clone();
                axpy(&mut v, &factor, row);
            }
        }
        v
    }

    pub fn contains(&self, v: &[QuadRat]) -> bool {
        self.reduce(v).iter().all(QuadRat::is_zero)
    }

    /// Adds `v` to the span. Returns `false` (and leaves the basis
    /// untouched) when `v` is already in the span.
    pub fn insert(&mut self, v: &[QuadRat]) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero pivot");
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let factor = row[p].clone();
                axpy(row, &factor, &v);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    /// A basis of the solution space of `rows · x = 0`.
    pub fn nullspace(&self) -> Vec<Vec<QuadRat>> {
        let mut out = Vec::new();
        let mut pivot_iter = self.pivots.iter().peekable();
        for free in 0..self.ncols {
            if pivot_iter.peek() == Some(&&free) {
                pivot_iter.next();
                continue;
            }
            let mut x = vec![QuadRat::zero(); self.ncols];
            x[free] = QuadRat::one();
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                if !row[free].is_zero() {
                    x[p] = -&row[free];
                }
            }
            out.push(x);
        }
        out
    }
}
