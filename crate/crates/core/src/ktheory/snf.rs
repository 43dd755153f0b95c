//! Smith normal form over ℤ.
//!
//! Convention: M = U·S·V with U, V unimodular and S diagonal with
//! nonnegative entries d₁ | d₂ | ⋯ (zeros last). The inverses of U and V
//! are tracked alongside so callers can change basis without inverting.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snf {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl Snf {
    /// Diagonal of S, length min(rows, cols).
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols())).map(|i| self.s[(i, i)].clone()).collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let (r, c) = (m.rows(), m.cols());
    let mut a = m.clone();
    // a = P·m·Q throughout
    let mut p = IntMatrix::identity(r);
    let mut p_inv = IntMatrix::identity(r);
    let mut q = IntMatrix::identity(c);
    let mut q_inv = IntMatrix::identity(c);

    let row_swap = |a: &mut IntMatrix, p: &mut IntMatrix, p_inv: &mut IntMatrix, i: usize, j: usize| {
        a.swap_rows(i, j);
        p.swap_rows(i, j);
        p_inv.swap_cols(i, j);
    };
    let col_swap = |a: &mut IntMatrix, q: &mut IntMatrix, q_inv: &mut IntMatrix, i: usize, j: usize| {
        a.swap_cols(i, j);
        q.swap_cols(i, j);
        q_inv.swap_rows(i, j);
    };
    // row[dst] += k·row[src]
    let row_add = |a: &mut IntMatrix, p: &mut IntMatrix, p_inv: &mut IntMatrix, dst: usize, src: usize, k: &BigInt| {
        a.add_row(dst, src, k);
        p.add_row(dst, src, k);
        p_inv.add_col(src, dst, &-k);
    };
    // col[dst] += k·col[src]
    let col_add = |a: &mut IntMatrix, q: &mut IntMatrix, q_inv: &mut IntMatrix, dst: usize, src: usize, k: &BigInt| {
        a.add_col(dst, src, k);
        q.add_col(dst, src, k);
        q_inv.add_row(src, dst, &-k);
    };

    for t in 0..r.min(c) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    if a[(i, j)].is_zero() {
                        continue;
                    }
                    if pivot.is_none_or(|(pi, pj)| a[(i, j)].abs() < a[(pi, pj)].abs()) {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                return finish(a, p_inv, q_inv, p, q);
            };
            row_swap(&mut a, &mut p, &mut p_inv, t, pi);
            col_swap(&mut a, &mut q, &mut q_inv, t, pj);

            let mut clean = true;
            for i in t + 1..r {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let k = a[(i, t)].div_floor(&a[(t, t)]);
                row_add(&mut a, &mut p, &mut p_inv, i, t, &-k);
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..c {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let k = a[(t, j)].div_floor(&a[(t, t)]);
                col_add(&mut a, &mut q, &mut q_inv, j, t, &-k);
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // pivot must divide the whole trailing block
            let offender = (t + 1..r)
                .flat_map(|i| (t + 1..c).map(move |j| (i, j)))
                .find(|&(i, j)| !a[(i, j)].is_multiple_of(&a[(t, t)]));
            match offender {
                Some((i, _)) => {
                    let one = BigInt::from(1);
                    row_add(&mut a, &mut p, &mut p_inv, t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            p.negate_row(t);
            p_inv.negate_col(t);
        }
    }
    finish(a, p_inv, q_inv, p, q)
}

fn finish(s: IntMatrix, p_inv: IntMatrix, q_inv: IntMatrix, p: IntMatrix, q: IntMatrix) -> Snf {
    Snf { u: p_inv, s, v: q_inv, u_inv: p, v_inv: q }
}

/// Invariant factors of the cokernel-style presentation, i.e. the diagonal
/// of the Smith form.
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    smith_normal_form(m).invariant_factors()
}
