//! Smith normal form over `Z` by gcd-pivot reduction.
//!
//! The pivot is always the entry of minimal absolute value in the
//! remaining submatrix, which keeps intermediate entries small at these
//! sizes. Row and column transforms are tracked so the result can be
//! certified by re-multiplication; `smith_normal_form` performs that
//! certification before returning.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// `row_ops * M * col_ops = diag(divisors)`, with `divisors` forming a
/// divisibility chain of positive integers.
#[derive(Debug, Clone)]
pub struct SmithNormalForm {
    pub divisors: Vec<BigUint>,
    pub row_ops: IntMatrix,
    pub col_ops: IntMatrix,
    pub col_ops_inv: IntMatrix,
    rows: usize,
    cols: usize,
}

impl SmithNormalForm {
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }

    /// The diagonal matrix the transforms certify against.
    pub fn diagonal(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.rows, self.cols);
        for (i, div) in self.divisors.iter().enumerate() {
            d[(i, i)] = BigInt::from(div.clone());
        }
        d
    }
}

struct SnfCalc {
    a: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
    vinv: IntMatrix,
}

impl SnfCalc {
    fn new(m: &IntMatrix) -> Self {
        SnfCalc {
            a: m.clone(),
            u: IntMatrix::identity(m.rows()),
            v: IntMatrix::identity(m.cols()),
            vinv: IntMatrix::identity(m.cols()),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.vinv.swap_rows(i, j);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
    }

    /// `row_dst += c * row_src`.
    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.add_scaled_row(dst, src, c);
        self.u.add_scaled_row(dst, src, c);
    }

    /// `col_dst += c * col_src`.
    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.add_scaled_col(dst, src, c);
        self.v.add_scaled_col(dst, src, c);
        self.vinv.add_scaled_row(src, dst, &-c);
    }

    /// Moves the submatrix entry of minimal absolute value to `(t, t)` and
    /// makes it positive. False when the submatrix is zero.
    fn place_pivot(&mut self, t: usize) -> bool {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                if self.a[(i, j)].is_zero() {
                    continue;
                }
                let better = match best {
                    Some((bi, bj)) => {
                        self.a[(i, j)].magnitude() < self.a[(bi, bj)].magnitude()
                    }
                    None => true,
                };
                if better {
                    best = Some((i, j));
                }
            }
        }
        let Some((i, j)) = best else {
            return false;
        };
        self.swap_rows(t, i);
        self.swap_cols(t, j);
        if self.a[(t, t)].is_negative() {
            self.negate_row(t);
        }
        true
    }

    /// Clears row `t` and column `t` (beyond the diagonal), shrinking the
    /// pivot to the gcd as needed.
    fn clear_cross(&mut self, t: usize) {
        loop {
            // Column first: reduce every entry below the pivot; a nonzero
            // remainder is strictly smaller, promote it and restart.
            let mut column_clear = true;
            for i in t + 1..self.a.rows() {
                if self.a[(i, t)].is_zero() {
                    continue;
                }
                let q = self.a[(i, t)].div_floor(&self.a[(t, t)]);
                self.add_row(i, t, &-q);
                if !self.a[(i, t)].is_zero() {
                    self.swap_rows(t, i);
                    column_clear = false;
                    break;
                }
            }
            if !column_clear {
                continue;
            }
            let mut row_clear = true;
            for j in t + 1..self.a.cols() {
                if self.a[(t, j)].is_zero() {
                    continue;
                }
                let q = self.a[(t, j)].div_floor(&self.a[(t, t)]);
                self.add_col(j, t, &-q);
                if !self.a[(t, j)].is_zero() {
                    self.swap_cols(t, j);
                    row_clear = false;
                    break;
                }
            }
            if !row_clear {
                continue;
            }
            // Column entries are untouched by the row clearing because the
            // column below the pivot is already zero.
            break;
        }
    }

    /// Ensures the pivot divides every entry of the trailing submatrix by
    /// folding an offending row into row `t` and re-clearing.
    fn enforce_divisibility(&mut self, t: usize) {
        'outer: loop {
            let p = self.a[(t, t)].clone();
            for i in t + 1..self.a.rows() {
                for j in t + 1..self.a.cols() {
                    if !self.a[(i, j)].mod_floor(&p).is_zero() {
                        self.add_row(t, i, &BigInt::one());
                        self.clear_cross(t);
                        continue 'outer;
                    }
                }
            }
            return;
        }
    }
}

/// Computes the Smith normal form, certifying `U * M * V = diag` and the
/// divisibility chain before returning.
pub fn smith_normal_form(m: &IntMatrix) -> SmithNormalForm {
    let mut calc = SnfCalc::new(m);
    let steps = m.rows().min(m.cols());
    let mut divisors = Vec::new();

    for t in 0..steps {
        if !calc.place_pivot(t) {
            break;
        }
        calc.clear_cross(t);
        calc.enforce_divisibility(t);
        divisors.push(calc.a[(t, t)].magnitude().clone());
    }

    let snf = SmithNormalForm {
        divisors,
        row_ops: calc.u,
        col_ops: calc.v,
        col_ops_inv: calc.vinv,
        rows: m.rows(),
        cols: m.cols(),
    };

    let product = snf.row_ops.mul(m).mul(&snf.col_ops);
    assert_eq!(product, snf.diagonal(), "transform certification failed");
    for pair in snf.divisors.windows(2) {
        assert!(
            pair[1].mod_floor(&pair[0]).is_zero(),
            "divisors {} and {} break the chain",
            pair[0],
            pair[1]
        );
    }
    snf
}
