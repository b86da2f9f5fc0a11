//! Spin-domain encoding and the two gate semantics.
//!
//! A [`SpinMinorityGate`] is the physical gate: inputs are ±1 spins, each
//! scaled by a signed integer weight, and the output spin is the sign of the
//! sum. With all weights `-1` this is the minority function; negative weights
//! are inverted inputs. A [`ThresholdGate`] is the 0/1-domain form with an
//! explicit threshold and is what the weight solver produces.

use std::fmt;

use thiserror::Error;

use crate::truth_table::{decode_row, TruthTable, MAX_INPUTS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GateError {
    #[error("gate needs at least one input")]
    Empty,
    #[error("zero weight at input {index}")]
    ZeroWeight { index: usize },
    #[error("expected {expected} inputs, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("tie at assignment {}: weighted spin sum is zero", fmt_bits(.assignment))]
    Tie { assignment: Vec<bool> },
    #[error("fan-in {fan_in} exceeds the {max}-input table limit", max = MAX_INPUTS)]
    TooManyInputs { fan_in: usize },
}

pub(crate) fn fmt_bits(bits: &[bool]) -> String {
    let body: Vec<&str> = bits.iter().map(|&b| if b { "1" } else { "0" }).collect();
    format!("({})", body.join(","))
}

/// Normalized z-magnetization of a domain. Logic 1 is `Up` (+z).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Spin {
    Down,
    Up,
}

impl Spin {
    pub fn value(self) -> i64 {
        match self {
            Spin::Down => -1,
            Spin::Up => 1,
        }
    }

    pub fn bit(self) -> bool {
        self == Spin::Up
    }
}

impl From<bool> for Spin {
    fn from(bit: bool) -> Self {
        if bit {
            Spin::Up
        } else {
            Spin::Down
        }
    }
}

impl From<Spin> for bool {
    fn from(spin: Spin) -> Self {
        spin.bit()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpinMinorityGate {
    weights: Vec<i32>,
}

impl SpinMinorityGate {
    pub fn new(weights: Vec<i32>) -> Result<Self, GateError> {
        if weights.is_empty() {
            return Err(GateError::Empty);
        }
        if let Some(index) = weights.iter().position(|&w| w == 0) {
            return Err(GateError::ZeroWeight { index });
        }
        Ok(SpinMinorityGate { weights })
    }

    /// The three-input minority gate, weights `(-1, -1, -1)`.
    pub fn minority3() -> Self {
        SpinMinorityGate {
            weights: vec![-1, -1, -1],
        }
    }

    pub fn weights(&self) -> &[i32] {
        &self.weights
    }

    pub fn fan_in(&self) -> usize {
        self.weights.len()
    }

    pub fn abs_weight_sum(&self) -> i64 {
        self.weights.iter().map(|&w| (w as i64).abs()).sum()
    }

    /// An odd total weight magnitude makes a zero spin sum impossible.
    pub fn has_odd_weight(&self) -> bool {
        self.abs_weight_sum() % 2 == 1
    }

    pub fn spin_sum(&self, inputs: &[bool]) -> Result<i64, GateError> {
        if inputs.len() != self.weights.len() {
            return Err(GateError::Arity {
                expected: self.weights.len(),
                got: inputs.len(),
            });
        }
        Ok(self
            .weights
            .iter()
            .zip(inputs)
            .map(|(&w, &x)| w as i64 * Spin::from(x).value())
            .sum())
    }

    /// Output bit: 1 iff the weighted spin sum is positive.
    pub fn eval(&self, inputs: &[bool]) -> Result<bool, GateError> {
        match self.spin_sum(inputs)? {
            0 => Err(GateError::Tie {
                assignment: inputs.to_vec(),
            }),
            s => Ok(s > 0),
        }
    }

    /// Calls `visit(row, spin_sum)` for every assignment, in Gray-code order.
    fn for_each_sum(&self, mut visit: impl FnMut(usize, i64)) {
        let n = self.weights.len();
        let mut sum: i64 = -self.weights.iter().map(|&w| w as i64).sum::<i64>();
        let mut row = 0usize;
        visit(row, sum);
        for i in 1usize..(1 << n) {
            let flip = i.trailing_zeros() as usize;
            let w = self.weights[flip] as i64;
            row ^= 1 << flip;
            if row >> flip & 1 == 1 {
                sum += 2 * w;
            } else {
                sum -= 2 * w;
            }
            visit(row, sum);
        }
    }

    /// Every assignment (as a row index) whose weighted spin sum is zero,
    /// in increasing order. Empty iff the gate is usable on all inputs.
    pub fn tie_rows(&self) -> Result<Vec<usize>, GateError> {
        if self.fan_in() > MAX_INPUTS {
            return Err(GateError::TooManyInputs {
                fan_in: self.fan_in(),
            });
        }
        if self.has_odd_weight() {
            return Ok(Vec::new());
        }
        let mut ties = Vec::new();
        self.for_each_sum(|row, sum| {
            if sum == 0 {
                ties.push(row);
            }
        });
        ties.sort_unstable();
        Ok(ties)
    }

    /// Tie assignments as bit vectors; see [`Self::tie_rows`].
    pub fn check_well_defined(&self) -> Result<Vec<Vec<bool>>, GateError> {
        Ok(self
            .tie_rows()?
            .into_iter()
            .map(|r| decode_row(r, self.fan_in()))
            .collect())
    }

    pub fn truth_table(&self) -> Result<TruthTable, GateError> {
        let n = self.fan_in();
        if n > MAX_INPUTS {
            return Err(GateError::TooManyInputs { fan_in: n });
        }
        let mut tt = TruthTable::zeros(n).expect("fan-in checked");
        let mut first_tie: Option<usize> = None;
        self.for_each_sum(|row, sum| {
            if sum == 0 {
                first_tie = Some(first_tie.map_or(row, |t| t.min(row)));
            } else if sum > 0 {
                tt.set(row, true);
            }
        });
        match first_tie {
            Some(row) => Err(GateError::Tie {
                assignment: decode_row(row, n),
            }),
            None => Ok(tt),
        }
    }

    /// Exact 0/1 form under `s = 2x - 1`: `2·Σwx > Σw`, i.e. weights `2w`
    /// and threshold `Σw + 1`.
    pub fn to_threshold_form(&self) -> ThresholdGate {
        let total: i64 = self.weights.iter().map(|&w| w as i64).sum();
        ThresholdGate {
            weights: self.weights.iter().map(|&w| 2 * w as i64).collect(),
            threshold: total + 1,
        }
    }

    /// Flips every weight sign. The result computes the bitwise complement,
    /// which only holds when no assignment ties.
    pub fn complement(&self) -> Result<SpinMinorityGate, GateError> {
        if let Some(&row) = self.tie_rows()?.first() {
            return Err(GateError::Tie {
                assignment: decode_row(row, self.fan_in()),
            });
        }
        Ok(SpinMinorityGate {
            weights: self.weights.iter().map(|w| -w).collect(),
        })
    }

    /// Multiplies every weight by `k >= 1`.
    pub fn scaled(&self, k: i32) -> SpinMinorityGate {
        assert!(k >= 1, "scale factor must be positive");
        SpinMinorityGate {
            weights: self.weights.iter().map(|w| w * k).collect(),
        }
    }
}

impl fmt::Display for SpinMinorityGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ws: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
        write!(f, "spin({})", ws.join(","))
    }
}

/// `output = 1` iff `Σ wᵢ·xᵢ >= threshold` over `xᵢ ∈ {0, 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ThresholdGate {
    weights: Vec<i64>,
    threshold: i64,
}

impl ThresholdGate {
    pub fn new(weights: Vec<i64>, threshold: i64) -> Result<Self, GateError> {
        if weights.is_empty() {
            return Err(GateError::Empty);
        }
        Ok(ThresholdGate { weights, threshold })
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn threshold(&self) -> i64 {
        self.threshold
    }

    pub fn fan_in(&self) -> usize {
        self.weights.len()
    }

    pub fn abs_weight_sum(&self) -> i64 {
        self.weights.iter().map(|w| w.abs()).sum()
    }

    pub fn eval(&self, inputs: &[bool]) -> Result<bool, GateError> {
        if inputs.len() != self.weights.len() {
            return Err(GateError::Arity {
                expected: self.weights.len(),
                got: inputs.len(),
            });
        }
        Ok(self.eval_row(crate::truth_table::encode_row(inputs)))
    }

    pub(crate) fn eval_row(&self, row: usize) -> bool {
        let sum: i128 = self
            .weights
            .iter()
            .enumerate()
            .filter(|(j, _)| row >> j & 1 == 1)
            .map(|(_, &w)| w as i128)
            .sum();
        sum >= self.threshold as i128
    }

    pub fn truth_table(&self) -> Result<TruthTable, GateError> {
        let n = self.fan_in();
        if n > MAX_INPUTS {
            return Err(GateError::TooManyInputs { fan_in: n });
        }
        Ok(TruthTable::from_fn(n, |row| self.eval_row(row)).expect("fan-in checked"))
    }
}

impl fmt::Display for ThresholdGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ws: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
        write!(f, "w=({}) T={}", ws.join(","), self.threshold)
    }
}
