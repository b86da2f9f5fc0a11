//! Exact phase-1 simplex for systems `A·v >= b` over free variables.
//!
//! Free variables are split as `v = p − q` with `p, q >= 0`. Rows with
//! `b <= 0` get a slack column and start basic on it; rows with `b > 0` get a
//! surplus column and an artificial. Phase 1 minimizes the artificial sum
//! with Bland's rule, so it terminates. At optimum the reduced cost of each
//! row's slack/surplus column is that row's Farkas multiplier: when the
//! optimum is positive those multipliers `y >= 0` satisfy `yᵀA = 0` and
//! `yᵀb > 0`.
//!
//! Arithmetic first runs on `Ratio<i128>` with checked operations and is
//! redone on `BigRational` if anything overflows.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedDiv, CheckedMul, CheckedSub, Signed, Zero};

pub(crate) trait Scalar: Clone + PartialOrd {
    fn from_i64(v: i64) -> Self;
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn is_positive(&self) -> bool;
    fn sub(&self, rhs: &Self) -> Option<Self>;
    fn mul(&self, rhs: &Self) -> Option<Self>;
    fn div(&self, rhs: &Self) -> Option<Self>;
    fn to_big(&self) -> BigRational;
}

impl Scalar for Ratio<i128> {
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(v as i128)
    }
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }
    fn sub(&self, rhs: &Self) -> Option<Self> {
        self.checked_sub(rhs)
    }
    fn mul(&self, rhs: &Self) -> Option<Self> {
        self.checked_mul(rhs)
    }
    fn div(&self, rhs: &Self) -> Option<Self> {
        self.checked_div(rhs)
    }
    fn to_big(&self) -> BigRational {
        BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }
}

impl Scalar for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }
    fn sub(&self, rhs: &Self) -> Option<Self> {
        Some(self - rhs)
    }
    fn mul(&self, rhs: &Self) -> Option<Self> {
        Some(self * rhs)
    }
    fn div(&self, rhs: &Self) -> Option<Self> {
        Some(self / rhs)
    }
    fn to_big(&self) -> BigRational {
        self.clone()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Outcome {
    /// A point satisfying every row.
    Feasible(Vec<BigRational>),
    /// Nonnegative row multipliers `y` with `yᵀA = 0` and `yᵀb > 0`.
    Infeasible(Vec<BigRational>),
}

struct Overflow;

struct Tableau<S> {
    rows: Vec<Vec<S>>,
    rhs: Vec<S>,
    basis: Vec<usize>,
    cost: Vec<S>,
    /// negated objective value
    cost_rhs: S,
}

impl<S: Scalar> Tableau<S> {
    fn build(a: &[Vec<i64>], b: &[i64], dim: usize) -> Result<Self, Overflow> {
        let m = a.len();
        let n_art = b.iter().filter(|&&v| v > 0).count();
        let cols = 2 * dim + m + n_art;
        let mut rows = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut cost = vec![S::zero(); cols];
        let mut cost_rhs = S::zero();
        let mut art = 2 * dim + m;
        for (i, (coeffs, &bi)) in a.iter().zip(b).enumerate() {
            let mut row = vec![S::zero(); cols];
            let sign = if bi > 0 { 1 } else { -1 };
            for (j, &c) in coeffs.iter().enumerate() {
                row[j] = S::from_i64(sign * c);
                row[dim + j] = S::from_i64(-sign * c);
            }
            if bi > 0 {
                row[2 * dim + i] = S::from_i64(-1);
                row[art] = S::from_i64(1);
                basis.push(art);
                cost[art] = S::from_i64(1);
                // price out the basic artificial
                for (c, r) in cost.iter_mut().zip(&row) {
                    *c = c.sub(r).ok_or(Overflow)?;
                }
                cost_rhs = cost_rhs.sub(&S::from_i64(bi)).ok_or(Overflow)?;
                art += 1;
                rhs.push(S::from_i64(bi));
            } else {
                row[2 * dim + i] = S::from_i64(1);
                basis.push(2 * dim + i);
                rhs.push(S::from_i64(-bi));
            }
            rows.push(row);
        }
        Ok(Tableau {
            rows,
            rhs,
            basis,
            cost,
            cost_rhs,
        })
    }

    fn pivot(&mut self, r: usize, e: usize) -> Result<(), Overflow> {
        let piv = self.rows[r][e].clone();
        let nonzero: Vec<usize> = (0..self.rows[r].len())
            .filter(|&j| !self.rows[r][j].is_zero())
            .collect();
        for &j in &nonzero {
            self.rows[r][j] = self.rows[r][j].div(&piv).ok_or(Overflow)?;
        }
        self.rhs[r] = self.rhs[r].div(&piv).ok_or(Overflow)?;

        let (pivot_row, pivot_rhs) = (self.rows[r].clone(), self.rhs[r].clone());
        let eliminate = |row: &mut Vec<S>, rhs: &mut S| -> Result<(), Overflow> {
            let f = row[e].clone();
            if f.is_zero() {
                return Ok(());
            }
            for &j in &nonzero {
                let t = f.mul(&pivot_row[j]).ok_or(Overflow)?;
                row[j] = row[j].sub(&t).ok_or(Overflow)?;
            }
            *rhs = rhs
                .sub(&f.mul(&pivot_rhs).ok_or(Overflow)?)
                .ok_or(Overflow)?;
            Ok(())
        };
        for i in 0..self.rows.len() {
            if i != r {
                let (row, rhs) = (&mut self.rows[i], &mut self.rhs[i]);
                eliminate(row, rhs)?;
            }
        }
        eliminate(&mut self.cost, &mut self.cost_rhs)?;
        self.basis[r] = e;
        Ok(())
    }

    fn run(&mut self) -> Result<(), Overflow> {
        // Bland: lowest-index improving column, lowest-index basic variable on ratio ties.
        while let Some(e) = self.cost.iter().position(|c| c.is_negative()) {
            let mut best: Option<(usize, S)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][e];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs[i].div(a).ok_or(Overflow)?;
                best = match best {
                    None => Some((i, ratio)),
                    Some((bi, br)) => {
                        if ratio < br || (ratio == br && self.basis[i] < self.basis[bi]) {
                            Some((i, ratio))
                        } else {
                            Some((bi, br))
                        }
                    }
                };
            }
            let (r, _) = best.expect("phase-1 objective is bounded below by zero");
            self.pivot(r, e)?;
        }
        Ok(())
    }

    fn outcome(&self, dim: usize) -> Outcome {
        if self.cost_rhs.is_negative() {
            let m = self.rows.len();
            return Outcome::Infeasible((0..m).map(|i| self.cost[2 * dim + i].to_big()).collect());
        }
        let mut v = vec![<BigRational as Zero>::zero(); dim];
        for (i, &col) in self.basis.iter().enumerate() {
            if col < dim {
                v[col] += self.rhs[i].to_big();
            } else if col < 2 * dim {
                v[col - dim] -= self.rhs[i].to_big();
            }
        }
        Outcome::Feasible(v)
    }
}

fn solve_with<S: Scalar>(a: &[Vec<i64>], b: &[i64], dim: usize) -> Result<Outcome, Overflow> {
    let mut t = Tableau::<S>::build(a, b, dim)?;
    t.run()?;
    Ok(t.outcome(dim))
}

/// Decides `A·v >= b` exactly. Every row of `a` must have length `dim`.
pub(crate) fn feasibility(a: &[Vec<i64>], b: &[i64], dim: usize) -> Outcome {
    debug_assert_eq!(a.len(), b.len());
    debug_assert!(a.iter().all(|r| r.len() == dim));
    match solve_with::<Ratio<i128>>(a, b, dim) {
        Ok(out) => out,
        Err(Overflow) => match solve_with::<BigRational>(a, b, dim) {
            Ok(out) => out,
            Err(Overflow) => unreachable!("BigRational arithmetic does not overflow"),
        },
    }
}
