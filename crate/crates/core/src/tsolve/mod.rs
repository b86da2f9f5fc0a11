//! Single-gate threshold realizability.
//!
//! A function `f` is threshold iff some integer `(w, T)` satisfies
//! `w·x >= T` on the on-set and `w·x <= T − 1` on the off-set. That system is
//! decided exactly by [`solve_threshold`]; a negative answer comes with a
//! [`FarkasCertificate`] that can be checked independently.

mod simplex;

use std::ops::Range;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::gate::ThresholdGate;
use crate::truth_table::TruthTable;
use simplex::Outcome;

/// Largest input count accepted by [`solve_threshold`].
pub const MAX_SOLVE_INPUTS: usize = 10;
/// Largest input count accepted by [`minimize_weights`].
pub const MAX_MINIMIZE_INPUTS: usize = 6;
/// Largest input count accepted by [`chow_parameters`] and [`is_unate`].
pub const MAX_ANALYSIS_INPUTS: usize = 16;
/// Largest input count accepted by [`enumerate_threshold_functions`].
pub const MAX_ENUMERATE_INPUTS: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("{got} inputs exceed the limit of {max} for this operation")]
    Arity { got: usize, max: usize },
    #[error("function is not a threshold function")]
    NotThreshold,
    #[error("integer weights overflow i64")]
    WeightOverflow,
}

fn check_arity(n: usize, max: usize) -> Result<(), SolveError> {
    if n > max {
        Err(SolveError::Arity { got: n, max })
    } else {
        Ok(())
    }
}

/// `m0 = 2·|on-set| − 2ⁿ`, `m[j] = Σ_{x ∈ on-set} (2xⱼ − 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChowVector {
    pub m0: i64,
    pub m: Vec<i64>,
}

pub fn chow_parameters(tt: &TruthTable) -> Result<ChowVector, SolveError> {
    let n = tt.num_inputs();
    check_arity(n, MAX_ANALYSIS_INPUTS)?;
    let mut m = vec![0i64; n];
    let mut ones = 0i64;
    for row in tt.on_set() {
        ones += 1;
        for (j, mj) in m.iter_mut().enumerate() {
            *mj += if row >> j & 1 == 1 { 1 } else { -1 };
        }
    }
    Ok(ChowVector {
        m0: 2 * ones - (1i64 << n),
        m,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarity {
    /// Nondecreasing in the variable.
    Positive,
    /// Nonincreasing in the variable.
    Negative,
    /// The function does not depend on the variable.
    Independent,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Unateness {
    Unate(Vec<Polarity>),
    /// `rising` and `falling` are `(row with variable = 0, row with variable = 1)`
    /// pairs where the function goes 0→1 and 1→0 respectively.
    NotUnate {
        variable: usize,
        rising: (usize, usize),
        falling: (usize, usize),
    },
}

pub fn is_unate(tt: &TruthTable) -> Result<Unateness, SolveError> {
    let n = tt.num_inputs();
    check_arity(n, MAX_ANALYSIS_INPUTS)?;
    let mut polarities = Vec::with_capacity(n);
    for j in 0..n {
        let bit = 1usize << j;
        let mut rising = None;
        let mut falling = None;
        for lo in (0..tt.num_rows()).filter(|r| r & bit == 0) {
            let hi = lo | bit;
            match (tt.get(lo), tt.get(hi)) {
                (false, true) if rising.is_none() => rising = Some((lo, hi)),
                (true, false) if falling.is_none() => falling = Some((lo, hi)),
                _ => {}
            }
            if rising.is_some() && falling.is_some() {
                break;
            }
        }
        polarities.push(match (rising, falling) {
            (Some(rising), Some(falling)) => {
                return Ok(Unateness::NotUnate {
                    variable: j,
                    rising,
                    falling,
                })
            }
            (Some(_), None) => Polarity::Positive,
            (None, Some(_)) => Polarity::Negative,
            (None, None) => Polarity::Independent,
        });
    }
    Ok(Unateness::Unate(polarities))
}

/// Proof that no `(w, T)` separates the function: positive integer weights on
/// some on-set rows and some off-set rows with equal totals and equal
/// weighted coordinate sums. Any separator would give
/// `Σλ(w·x − T) >= 0` and `Σμ(w·x − T) <= −Σμ < 0` for the same quantity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FarkasCertificate {
    pub on_set: Vec<(usize, BigInt)>,
    pub off_set: Vec<(usize, BigInt)>,
}

impl FarkasCertificate {
    /// Checks the certificate against `tt` in exact arithmetic.
    pub fn verify(&self, tt: &TruthTable) -> bool {
        let n = tt.num_inputs();
        let side_ok = |side: &[(usize, BigInt)], value: bool| {
            side.iter()
                .all(|(r, m)| *r < tt.num_rows() && tt.get(*r) == value && m.is_positive())
        };
        if self.off_set.is_empty() || !side_ok(&self.on_set, true) || !side_ok(&self.off_set, false)
        {
            return false;
        }
        let moments = |side: &[(usize, BigInt)]| {
            let mut acc = vec![BigInt::zero(); n + 1];
            for (r, m) in side {
                acc[n] += m;
                for (j, a) in acc.iter_mut().take(n).enumerate() {
                    if r >> j & 1 == 1 {
                        *a += m;
                    }
                }
            }
            acc
        };
        moments(&self.on_set) == moments(&self.off_set)
    }

    pub fn rows_used(&self) -> usize {
        self.on_set.len() + self.off_set.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdRealization {
    pub gate: ThresholdGate,
    /// Set when `Σ|w|` was minimized.
    pub minimal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotThreshold {
    pub certificate: FarkasCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    Threshold(ThresholdRealization),
    NotThreshold(NotThreshold),
}

impl Classification {
    pub fn is_threshold(&self) -> bool {
        matches!(self, Classification::Threshold(_))
    }

    pub fn realization(&self) -> Option<&ThresholdRealization> {
        match self {
            Classification::Threshold(r) => Some(r),
            Classification::NotThreshold(_) => None,
        }
    }
}

/// LP row for assignment `row`: `(x, −1)·(w, T) >= 0` on the on-set,
/// `(−x, 1)·(w, T) >= 1` on the off-set.
fn separation_row(n: usize, row: usize, on: bool) -> (Vec<i64>, i64) {
    let sign = if on { 1 } else { -1 };
    let mut a: Vec<i64> = (0..n).map(|j| sign * (row >> j & 1) as i64).collect();
    a.push(-sign);
    (a, if on { 0 } else { 1 })
}

/// Scales a rational point to the smallest integer multiple.
fn integer_point(v: &[BigRational]) -> Result<Vec<i64>, SolveError> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.iter()
        .map(|x| {
            let x = if g.is_zero() { x.clone() } else { x / &g };
            x.to_i64().ok_or(SolveError::WeightOverflow)
        })
        .collect()
}

/// How many violated rows to add per round once the active set is partial.
fn batch(n: usize) -> usize {
    2 * (n + 1)
}

/// Decides whether `tt` is a single threshold gate.
///
/// Tables of up to 32 rows go to the LP whole. Larger ones start from an
/// empty active set and add violated rows until the LP solution satisfies
/// every row or the active subsystem is infeasible; a certificate for a
/// subsystem is a certificate for the whole.
pub fn solve_threshold(tt: &TruthTable) -> Result<Classification, SolveError> {
    let n = tt.num_inputs();
    check_arity(n, MAX_SOLVE_INPUTS)?;
    let rows = tt.num_rows();
    let mut active: Vec<usize> = if rows <= 32 {
        (0..rows).collect()
    } else {
        Vec::new()
    };
    let mut in_active = vec![false; rows];
    for &r in &active {
        in_active[r] = true;
    }

    loop {
        let (a, b): (Vec<Vec<i64>>, Vec<i64>) = active
            .iter()
            .map(|&r| separation_row(n, r, tt.get(r)))
            .unzip();
        match simplex::feasibility(&a, &b, n + 1) {
            Outcome::Infeasible(y) => {
                return Ok(Classification::NotThreshold(NotThreshold {
                    certificate: certificate_from(tt, &active, &y),
                }))
            }
            Outcome::Feasible(v) => {
                let point = integer_point(&v)?;
                let (w, t) = point.split_at(n);
                let gate = ThresholdGate::new(w.to_vec(), t[0]).expect("n >= 1");
                let violated: Vec<usize> = (0..rows)
                    .filter(|&r| !in_active[r] && gate.eval_row(r) != tt.get(r))
                    .take(batch(n))
                    .collect();
                if violated.is_empty() {
                    debug_assert_eq!(gate.truth_table().ok().as_ref(), Some(tt));
                    return Ok(Classification::Threshold(ThresholdRealization {
                        gate,
                        minimal: false,
                    }));
                }
                for r in violated {
                    in_active[r] = true;
                    active.push(r);
                }
            }
        }
    }
}

fn certificate_from(tt: &TruthTable, active: &[usize], y: &[BigRational]) -> FarkasCertificate {
    let lcm = y.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut on_set = Vec::new();
    let mut off_set = Vec::new();
    let mut pairs: Vec<(usize, BigInt)> = active
        .iter()
        .zip(y)
        .filter(|(_, m)| m.is_positive())
        .map(|(&r, m)| (r, (m * &lcm).to_integer()))
        .collect();
    pairs.sort_by_key(|(r, _)| *r);
    for (r, m) in pairs {
        if tt.get(r) {
            on_set.push((r, m));
        } else {
            off_set.push((r, m));
        }
    }
    let cert = FarkasCertificate { on_set, off_set };
    debug_assert!(cert.verify(tt), "simplex produced an invalid certificate");
    cert
}

/// Realization with the smallest `Σ|w|`, ties broken by the lexicographically
/// smallest weight vector and then the smallest threshold.
///
/// Only sign-consistent candidates are searched: in any realization a
/// variable the function increases in needs `w > 0`, one it decreases in
/// needs `w < 0`, and an irrelevant variable can always be zeroed without
/// changing the function, so every minimal realization lies in that set.
/// For fixed `w` the smallest valid `T` is `max(off-set sums) + 1`; a
/// constant-1 function uses `T = 0`.
pub fn minimize_weights(tt: &TruthTable) -> Result<ThresholdRealization, SolveError> {
    let n = tt.num_inputs();
    check_arity(n, MAX_MINIMIZE_INPUTS)?;
    let upper = match solve_threshold(tt)? {
        Classification::Threshold(r) => r.gate.abs_weight_sum(),
        Classification::NotThreshold(_) => return Err(SolveError::NotThreshold),
    };
    let polarities = match is_unate(tt)? {
        Unateness::Unate(p) => p,
        Unateness::NotUnate { .. } => unreachable!("threshold functions are unate"),
    };
    let relevant: Vec<usize> = (0..n)
        .filter(|&j| polarities[j] != Polarity::Independent)
        .collect();

    let start = relevant.len() as i64;
    for total in start..=upper.max(start) {
        let mut w = vec![0i64; n];
        if let Some(t) = search(tt, &polarities, &relevant, 0, total, &mut w) {
            return Ok(ThresholdRealization {
                gate: ThresholdGate::new(w, t).expect("n >= 1"),
                minimal: true,
            });
        }
    }
    unreachable!("the LP realization bounds the search")
}

/// Depth-first over signed weights in increasing lexicographic order.
fn search(
    tt: &TruthTable,
    polarities: &[Polarity],
    relevant: &[usize],
    k: usize,
    remaining: i64,
    w: &mut [i64],
) -> Option<i64> {
    if k == relevant.len() {
        return if remaining == 0 {
            best_threshold(tt, w)
        } else {
            None
        };
    }
    let j = relevant[k];
    let left = (relevant.len() - k - 1) as i64;
    let max_mag = if left == 0 {
        remaining
    } else {
        remaining - left
    };
    let min_mag = if left == 0 { remaining } else { 1 };
    if max_mag < min_mag {
        return None;
    }
    let mags: Box<dyn Iterator<Item = i64>> = match polarities[j] {
        // w = −mag ascending means magnitudes descending
        Polarity::Negative => Box::new((min_mag..=max_mag).rev()),
        _ => Box::new(min_mag..=max_mag),
    };
    for mag in mags {
        w[j] = if polarities[j] == Polarity::Negative {
            -mag
        } else {
            mag
        };
        if let Some(t) = search(tt, polarities, relevant, k + 1, remaining - mag, w) {
            return Some(t);
        }
    }
    w[j] = 0;
    None
}

fn best_threshold(tt: &TruthTable, w: &[i64]) -> Option<i64> {
    let mut min_on = i64::MAX;
    let mut max_off = i64::MIN;
    for row in 0..tt.num_rows() {
        let s: i64 = w
            .iter()
            .enumerate()
            .filter(|(j, _)| row >> j & 1 == 1)
            .map(|(_, &x)| x)
            .sum();
        if tt.get(row) {
            min_on = min_on.min(s);
        } else {
            max_off = max_off.max(s);
        }
    }
    if max_off == i64::MIN {
        return Some(0.min(min_on));
    }
    (min_on > max_off).then_some(max_off + 1)
}

/// Threshold functions found among a range of `n`-input truth tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdCensus {
    pub num_inputs: usize,
    pub examined: u64,
    pub count: u64,
    /// Threshold tables in increasing table-value order.
    pub tables: Vec<TruthTable>,
}

impl ThresholdCensus {
    /// Combines two censuses of disjoint ranges; the result does not depend
    /// on argument order.
    pub fn merge(mut self, other: ThresholdCensus) -> ThresholdCensus {
        assert_eq!(self.num_inputs, other.num_inputs);
        self.examined += other.examined;
        self.count += other.count;
        self.tables.extend(other.tables);
        self.tables.sort_by_key(|t| t.as_u64());
        self
    }
}

/// Classifies the `n`-input tables whose value lies in `values`.
pub fn classify_range(n: usize, values: Range<u64>) -> Result<ThresholdCensus, SolveError> {
    check_arity(n, MAX_ENUMERATE_INPUTS)?;
    if n == 0 {
        return Err(SolveError::Arity {
            got: 0,
            max: MAX_ENUMERATE_INPUTS,
        });
    }
    let end = values.end.min(1u64 << (1 << n));
    let mut census = ThresholdCensus {
        num_inputs: n,
        examined: 0,
        count: 0,
        tables: Vec::new(),
    };
    for value in values.start..end {
        let tt = TruthTable::from_u64(n, value).expect("value below 2^(2^n)");
        census.examined += 1;
        if solve_threshold(&tt)?.is_threshold() {
            census.count += 1;
            census.tables.push(tt);
        }
    }
    Ok(census)
}

/// Classifies all `2^(2ⁿ)` functions of `n <= 4` inputs.
pub fn enumerate_threshold_functions(n: usize) -> Result<ThresholdCensus, SolveError> {
    check_arity(n, MAX_ENUMERATE_INPUTS)?;
    classify_range(n, 0..1u64 << (1 << n))
}
