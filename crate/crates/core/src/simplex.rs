//! Exact-rational two-phase simplex for the small covering linear programs
//! behind the fractional-chromatic computation.
//!
//! Entering columns are picked by largest reduced cost until a long run of
//! degenerate pivots, after which the rule switches to Bland's (smallest
//! index) permanently, which guarantees termination.

use crate::{Error, Result};
use num::{BigRational, One, Zero};

const DEGENERATE_SWITCH: u32 = 40;

struct Tableau {
    /// `rows × cols` coefficients.
    rows: Vec<Vec<BigRational>>,
    rhs: Vec<BigRational>,
    /// Reduced-cost row `z_j − c_j`; optimal when all entries ≤ 0.
    obj: Vec<BigRational>,
    obj_val: BigRational,
    /// Column index basic in each row.
    basis: Vec<usize>,
    bland: bool,
    degenerate_streak: u32,
}

impl Tableau {
    fn pivot(&mut self, r: usize, j: usize) {
        let pv = self.rows[r][j].clone();
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x /= &pv;
            }
        }
        self.rhs[r] /= &pv;
        let (pivot_row, rhs_r) = (self.rows[r].clone(), self.rhs[r].clone());
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][j].is_zero() {
                continue;
            }
            let factor = self.rows[i][j].clone();
            for (x, p) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
            self.rhs[i] -= &factor * &rhs_r;
        }
        if !self.obj[j].is_zero() {
            let factor = self.obj[j].clone();
            for (x, p) in self.obj.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
            self.obj_val -= &factor * &rhs_r;
        }
        self.basis[r] = j;
    }

    /// Run simplex to optimality over columns `0..eligible`.
    fn optimize(&mut self, eligible: usize) -> Result<()> {
        loop {
            let entering = if self.bland {
                (0..eligible).find(|&j| self.obj[j] > BigRational::zero())
            } else {
                (0..eligible)
                    .filter(|&j| self.obj[j] > BigRational::zero())
                    .max_by(|&a, &b| self.obj[a].cmp(&self.obj[b]).then(b.cmp(&a)))
            };
            let Some(j) = entering else { return Ok(()) };

            let mut leave: Option<(usize, BigRational)> = None;
            for r in 0..self.rows.len() {
                if self.rows[r][j] <= BigRational::zero() {
                    continue;
                }
                let ratio = &self.rhs[r] / &self.rows[r][j];
                let better = match &leave {
                    None => true,
                    Some((lr, lratio)) => {
                        ratio < *lratio || (ratio == *lratio && self.basis[r] < self.basis[*lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            let Some((r, ratio)) = leave else {
                return Err(Error::internal("covering LP appears unbounded"));
            };
            if ratio.is_zero() {
                self.degenerate_streak += 1;
                if self.degenerate_streak >= DEGENERATE_SWITCH {
                    self.bland = true;
                }
            } else {
                self.degenerate_streak = 0;
            }
            self.pivot(r, j);
        }
    }
}

/// Minimize `Σ_j y_j` subject to `Σ_{j : r ∈ columns[j]} y_j ≥ 1` for every
/// row `r` in `0..n_rows`, with `y ≥ 0`.  Returns the exact optimum and an
/// optimal `y`.
pub fn solve_covering_lp(
    n_rows: usize,
    columns: &[Vec<usize>],
) -> Result<(BigRational, Vec<BigRational>)> {
    if n_rows == 0 {
        return Ok((BigRational::zero(), vec![BigRational::zero(); columns.len()]));
    }
    let n = columns.len();
    let m = n_rows;
    let total = n + 2 * m;
    let zero = BigRational::zero;
    let one = BigRational::one;

    let mut rows = vec![vec![zero(); total]; m];
    for (j, col) in columns.iter().enumerate() {
        for &r in col {
            if r >= m {
                return Err(Error::invalid(format!("column touches row {r} out of range")));
            }
            rows[r][j] = one();
        }
    }
    for r in 0..m {
        rows[r][n + r] = -one();
        rows[r][n + m + r] = one();
    }
    let rhs = vec![one(); m];
    let basis: Vec<usize> = (0..m).map(|r| n + m + r).collect();

    // Phase 1: minimize the artificial total.  Basis costs are all 1, so the
    // reduced-cost row is the column sum over real columns.
    let mut obj = vec![zero(); total];
    #[allow(clippy::needless_range_loop)]
    for j in 0..n + m {
        obj[j] = rows.iter().map(|row| &row[j]).sum();
    }
    let obj_val = rhs.iter().sum();
    let mut tab = Tableau {
        rows,
        rhs,
        obj,
        obj_val,
        basis,
        bland: false,
        degenerate_streak: 0,
    };
    tab.optimize(n + m)?;
    if !tab.obj_val.is_zero() {
        return Err(Error::internal(
            "covering LP infeasible: some row lies in no column",
        ));
    }
    // Drive leftover artificials out of the basis where possible; rows that
    // cannot pivot are identically zero over real columns and stay inert.
    for r in 0..m {
        if tab.basis[r] >= n + m {
            if let Some(j) = (0..n + m).find(|&j| !tab.rows[r][j].is_zero()) {
                tab.pivot(r, j);
            }
        }
    }

    // Phase 2: minimize the true objective Σ y.
    let cost = |col: usize| -> BigRational {
        if col < n {
            one()
        } else {
            zero()
        }
    };
    for j in 0..total {
        tab.obj[j] = (0..m)
            .map(|r| cost(tab.basis[r]) * &tab.rows[r][j])
            .sum::<BigRational>()
            - cost(j);
    }
    tab.obj_val = (0..m).map(|r| cost(tab.basis[r]) * &tab.rhs[r]).sum();
    tab.bland = false;
    tab.degenerate_streak = 0;
    tab.optimize(n + m)?;

    let mut y = vec![zero(); n];
    for r in 0..m {
        if tab.basis[r] < n {
            y[tab.basis[r]] = tab.rhs[r].clone();
        }
    }
    Ok((tab.obj_val, y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigInt;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    fn check(n_rows: usize, columns: &[Vec<usize>], want: BigRational) {
        let (value, y) = solve_covering_lp(n_rows, columns).unwrap();
        assert_eq!(value, want);
        // The returned point must be feasible and have the stated value.
        assert_eq!(y.iter().sum::<BigRational>(), value);
        for r in 0..n_rows {
            let covered: BigRational = columns
                .iter()
                .zip(&y)
                .filter(|(c, _)| c.contains(&r))
                .map(|(_, w)| w.clone())
                .sum();
            assert!(covered >= q(1, 1), "row {r} under-covered");
            assert!(y.iter().all(|w| *w >= q(0, 1)));
        }
    }

    #[test]
    fn singletons_need_one_each() {
        check(3, &[vec![0], vec![1], vec![2]], q(3, 1));
    }

    #[test]
    fn path_cover() {
        check(3, &[vec![0, 2], vec![1]], q(2, 1));
    }

    #[test]
    fn five_cycle_halves() {
        let columns: Vec<Vec<usize>> = (0..5).map(|i| vec![i, (i + 2) % 5]).collect();
        check(5, &columns, q(5, 2));
    }

    #[test]
    fn redundant_columns_are_free() {
        check(2, &[vec![0, 1], vec![0], vec![0], vec![1], vec![0, 1]], q(1, 1));
    }

    #[test]
    fn uncoverable_row_is_an_error() {
        assert!(solve_covering_lp(1, &[]).is_err());
        assert!(solve_covering_lp(2, &[vec![0]]).is_err());
    }

    #[test]
    fn empty_program() {
        let (v, y) = solve_covering_lp(0, &[vec![], vec![], vec![]]).unwrap();
        assert_eq!(v, q(0, 1));
        assert_eq!(y.len(), 3);
    }
}
