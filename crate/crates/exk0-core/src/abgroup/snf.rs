use num_bigint::BigInt;
use num_bigint::Sign;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// Smith normal form `U * M * V = D` with all four transforms tracked.
///
/// `U` and `V` are unimodular, `D` is diagonal with nonnegative entries
/// satisfying the divisibility chain `d_1 | d_2 | ...`. The inverses are
/// maintained alongside so callers can move between the original and the
/// diagonal coordinates without solving anything.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries, in divisibility order.
    pub fn diagonal(&self) -> alloc::vec::Vec<BigInt> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Number of nonzero diagonal entries, i.e. the rank of the source
    /// matrix.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

struct SnfCalc {
    d: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl SnfCalc {
    fn new(m: &IntMatrix) -> Self {
        SnfCalc {
            d: m.clone(),
            u: IntMatrix::identity(m.rows()),
            u_inv: IntMatrix::identity(m.rows()),
            v: IntMatrix::identity(m.cols()),
            v_inv: IntMatrix::identity(m.cols()),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    /// row[dst] += q * row[src]
    fn row_add(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.d.row_add_multiple(dst, src, q);
        self.u.row_add_multiple(dst, src, q);
        let neg = -q;
        self.u_inv.col_add_multiple(src, dst, &neg);
    }

    /// col[dst] += q * col[src]
    fn col_add(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.d.col_add_multiple(dst, src, q);
        self.v.col_add_multiple(dst, src, q);
        let neg = -q;
        self.v_inv.row_add_multiple(src, dst, &neg);
    }

    fn negate_row(&mut self, i: usize) {
        self.d.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Smallest nonzero entry (by absolute value) of the trailing submatrix
    /// starting at `(t, t)`; ties broken by position for determinism.
    fn pick_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.d.rows() {
            for j in t..self.d.cols() {
                let x = &self.d[(i, j)];
                if x.is_zero() {
                    continue;
                }
                match best {
                    None => best = Some((i, j)),
                    Some(b) => {
                        if x.abs() < self.d[b].abs() {
                            best = Some((i, j));
                        }
                    }
                }
            }
        }
        best
    }

    /// First entry of the trailing submatrix (excluding the pivot row and
    /// column) not divisible by the pivot, if any.
    fn find_nondivisible(&self, t: usize) -> Option<(usize, usize)> {
        let pivot = &self.d[(t, t)];
        for i in t + 1..self.d.rows() {
            for j in t + 1..self.d.cols() {
                if !(&self.d[(i, j)] % pivot).is_zero() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    fn process(&mut self) {
        let limit = self.d.rows().min(self.d.cols());
        'outer: for t in 0..limit {
            loop {
                let Some((pi, pj)) = self.pick_pivot(t) else {
                    // Trailing submatrix is zero: diagonal is complete.
                    break 'outer;
                };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);

                // Clear the pivot column and row with truncated quotients.
                // Any nonzero remainder is strictly smaller than the pivot,
                // so re-running pivot selection terminates.
                let mut dirty = false;
                for i in t + 1..self.d.rows() {
                    if self.d[(i, t)].is_zero() {
                        continue;
                    }
                    let q = -(&self.d[(i, t)] / &self.d[(t, t)]);
                    self.row_add(i, t, &q);
                    if !self.d[(i, t)].is_zero() {
                        dirty = true;
                    }
                }
                for j in t + 1..self.d.cols() {
                    if self.d[(t, j)].is_zero() {
                        continue;
                    }
                    let q = -(&self.d[(t, j)] / &self.d[(t, t)]);
                    self.col_add(j, t, &q);
                    if !self.d[(t, j)].is_zero() {
                        dirty = true;
                    }
                }
                if dirty {
                    continue;
                }
                // Pivot row and column are clear. Enforce that the pivot
                // divides the rest of the submatrix by folding an offending
                // row into the pivot row and repeating.
                if let Some((i, _)) = self.find_nondivisible(t) {
                    let one = BigInt::one();
                    self.row_add(t, i, &one);
                    continue;
                }
                break;
            }
        }
        for t in 0..limit {
            if self.d[(t, t)].sign() == Sign::Minus {
                self.negate_row(t);
            }
        }
    }
}

/// Computes the Smith normal form of `m` by gcd-driven row/column reduction
/// with minimal-pivot selection. Deterministic, exact, no modular tricks.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let mut calc = SnfCalc::new(m);
    calc.process();
    SmithDecomposition {
        u: calc.u,
        u_inv: calc.u_inv,
        d: calc.d,
        v: calc.v,
        v_inv: calc.v_inv,
    }
}
