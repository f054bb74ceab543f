use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Column-style Hermite normal form.
///
/// The result spans the same column lattice as `m` and is in the fixed
/// canonical convention: column echelon form with strictly increasing pivot
/// rows, positive pivots, entries to the left of a pivot (same row, earlier
/// columns) reduced into `[0, pivot)`, and zero columns pushed to the right.
/// Dimensions are preserved, so structural equality of two outputs means
/// equality of the spanned lattices up to the number of zero columns.
pub fn hnf_columns(m: &IntMatrix) -> IntMatrix {
    hnf_rows(&m.transpose()).transpose()
}

/// Row-style HNF: row echelon with positive pivots, entries above a pivot
/// reduced into `[0, pivot)`, zero rows at the bottom. Row span preserved.
fn hnf_rows(m: &IntMatrix) -> IntMatrix {
    let mut h = m.clone();
    let rows = h.rows();
    let cols = h.cols();
    let mut pivots: alloc::vec::Vec<(usize, usize)> = alloc::vec::Vec::new();
    let mut pr = 0;
    for c in 0..cols {
        if pr == rows {
            break;
        }
        loop {
            // Row in pr.. with the smallest nonzero |entry| in column c.
            let mut best: Option<usize> = None;
            for r in pr..rows {
                if h[(r, c)].is_zero() {
                    continue;
                }
                match best {
                    None => best = Some(r),
                    Some(b) => {
                        if h[(r, c)].abs() < h[(b, c)].abs() {
                            best = Some(r);
                        }
                    }
                }
            }
            let Some(r) = best else {
                break; // no pivot in this column
            };
            h.swap_rows(pr, r);
            let mut remainder = false;
            for r2 in pr + 1..rows {
                if h[(r2, c)].is_zero() {
                    continue;
                }
                let q = -(&h[(r2, c)] / &h[(pr, c)]);
                h.row_add_multiple(r2, pr, &q);
                if !h[(r2, c)].is_zero() {
                    remainder = true;
                }
            }
            if remainder {
                continue;
            }
            if h[(pr, c)].sign() == Sign::Minus {
                h.negate_row(pr);
            }
            pivots.push((pr, c));
            pr += 1;
            break;
        }
    }
    // Reduce entries above each pivot into [0, pivot). Processing pivots in
    // increasing column order leaves earlier pivot columns untouched, since
    // each pivot row is zero left of its pivot.
    for &(p, c) in &pivots {
        for r in 0..p {
            let q = -(h[(r, c)].div_floor(&h[(p, c)]));
            h.row_add_multiple(r, p, &q);
        }
    }
    h
}

/// Drops trailing zero columns, giving the canonical basis used for
/// subgroup lattices (unique per lattice, so structural equality decides
/// lattice equality).
pub(crate) fn hnf_chop_zero_columns(h: IntMatrix) -> IntMatrix {
    let nonzero: alloc::vec::Vec<usize> = (0..h.cols())
        .filter(|&j| (0..h.rows()).any(|i| !h[(i, j)].is_zero()))
        .collect();
    if nonzero.len() == h.cols() {
        h
    } else {
        h.select_columns(&nonzero)
    }
}

/// Exact lattice membership: does `v` lie in the column span of the HNF
/// basis `h`? `h` must be in the form produced by [`hnf_columns`].
pub(crate) fn hnf_contains(h: &IntMatrix, v: &[BigInt]) -> bool {
    debug_assert_eq!(h.rows(), v.len());
    let mut r: alloc::vec::Vec<BigInt> = v.to_vec();
    for j in 0..h.cols() {
        // pivot row of column j
        let Some(p) = (0..h.rows()).find(|&i| !h[(i, j)].is_zero()) else {
            continue; // trailing zero column
        };
        let (q, rem) = r[p].div_rem(&h[(p, j)]);
        if !rem.is_zero() {
            return false;
        }
        if !q.is_zero() {
            for i in 0..h.rows() {
                let delta = &q * &h[(i, j)];
                r[i] -= delta;
            }
        }
    }
    r.iter().all(|x| x.is_zero())
}
