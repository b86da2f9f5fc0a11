//! Bit-packed truth tables.
//!
//! Row `i` of an `n`-input table is the assignment where input `j` takes the
//! value `(i >> j) & 1`, so input 0 is the least significant bit of the row
//! index. Every table in this crate uses that ordering.

use std::fmt;
use std::ops::Not;
use std::str::FromStr;

use thiserror::Error;

/// Largest input count for which a table is materialized (2 MiB of bits).
pub const MAX_INPUTS: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TruthTableError {
    #[error("input count {0} outside 1..={max}", max = MAX_INPUTS)]
    InputCount(usize),
    #[error("malformed truth table {0:?}: expected <n>:<hex>")]
    Malformed(String),
    #[error("value out of range for {0} inputs")]
    OutOfRange(usize),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    num_inputs: usize,
    words: Vec<u64>,
}

impl TruthTable {
    /// The all-zero function of `num_inputs` inputs.
    pub fn zeros(num_inputs: usize) -> Result<Self, TruthTableError> {
        if num_inputs == 0 || num_inputs > MAX_INPUTS {
            return Err(TruthTableError::InputCount(num_inputs));
        }
        let rows = 1usize << num_inputs;
        Ok(TruthTable {
            num_inputs,
            words: vec![0; rows.div_ceil(64)],
        })
    }

    pub fn from_fn(
        num_inputs: usize,
        mut f: impl FnMut(usize) -> bool,
    ) -> Result<Self, TruthTableError> {
        let mut tt = Self::zeros(num_inputs)?;
        for row in 0..tt.num_rows() {
            if f(row) {
                tt.set(row, true);
            }
        }
        Ok(tt)
    }

    /// Builds a table of at most 6 inputs from the low `2^n` bits of `value`.
    pub fn from_u64(num_inputs: usize, value: u64) -> Result<Self, TruthTableError> {
        if num_inputs > 6 {
            return Err(TruthTableError::InputCount(num_inputs));
        }
        let mut tt = Self::zeros(num_inputs)?;
        if num_inputs < 6 && value >> (1u32 << num_inputs) != 0 {
            return Err(TruthTableError::OutOfRange(num_inputs));
        }
        tt.words[0] = value;
        Ok(tt)
    }

    pub fn num_inputs(&self) -> usize {
        self.num_inputs
    }

    pub fn num_rows(&self) -> usize {
        1 << self.num_inputs
    }

    #[inline]
    pub fn get(&self, row: usize) -> bool {
        debug_assert!(row < self.num_rows());
        self.words[row >> 6] >> (row & 63) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, row: usize, value: bool) {
        debug_assert!(row < self.num_rows());
        let mask = 1u64 << (row & 63);
        if value {
            self.words[row >> 6] |= mask;
        } else {
            self.words[row >> 6] &= !mask;
        }
    }

    /// The low 64 rows as an integer; the whole table when `n <= 6`.
    pub fn as_u64(&self) -> Option<u64> {
        (self.num_inputs <= 6).then(|| self.words[0])
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Iterates the on-set row indices in increasing order.
    pub fn on_set(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_rows()).filter(|&r| self.get(r))
    }

    /// Iterates the off-set row indices in increasing order.
    pub fn off_set(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_rows()).filter(|&r| !self.get(r))
    }

    fn used_mask(&self) -> u64 {
        if self.num_inputs >= 6 {
            u64::MAX
        } else {
            (1u64 << (1 << self.num_inputs)) - 1
        }
    }

    /// Hex digits, most significant first, padded to the full table width.
    pub fn to_hex(&self) -> String {
        let digits = self.num_rows().div_ceil(4);
        let mut s = String::with_capacity(digits);
        for d in (0..digits).rev() {
            let bit = d * 4;
            let nibble = (self.words[bit >> 6] >> (bit & 63)) & 0xf;
            s.push(char::from_digit(nibble as u32, 16).unwrap());
        }
        s
    }

    /// Parses the hex part of an `n:hex` string. A `0x` prefix is optional.
    pub fn from_hex(num_inputs: usize, hex: &str) -> Result<Self, TruthTableError> {
        let mut tt = Self::zeros(num_inputs)?;
        let digits = hex
            .strip_prefix("0x")
            .or_else(|| hex.strip_prefix("0X"))
            .unwrap_or(hex);
        if digits.is_empty() {
            return Err(TruthTableError::Malformed(hex.to_string()));
        }
        let rows = tt.num_rows();
        for (pos, c) in digits.chars().rev().enumerate() {
            let nibble = c
                .to_digit(16)
                .ok_or_else(|| TruthTableError::Malformed(hex.to_string()))?
                as u64;
            if nibble == 0 {
                continue;
            }
            let bit = pos * 4;
            if bit >= rows {
                return Err(TruthTableError::OutOfRange(num_inputs));
            }
            tt.words[bit >> 6] |= nibble << (bit & 63);
        }
        if tt.words[0] & !tt.used_mask() != 0 {
            return Err(TruthTableError::OutOfRange(num_inputs));
        }
        Ok(tt)
    }
}

impl Not for &TruthTable {
    type Output = TruthTable;

    fn not(self) -> TruthTable {
        let mask = self.used_mask();
        TruthTable {
            num_inputs: self.num_inputs,
            words: self.words.iter().map(|w| !w & mask).collect(),
        }
    }
}

impl Not for TruthTable {
    type Output = TruthTable;

    fn not(self) -> TruthTable {
        !&self
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:0x{}", self.num_inputs, self.to_hex())
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruthTable({self})")
    }
}

impl FromStr for TruthTable {
    type Err = TruthTableError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (n, hex) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| TruthTableError::Malformed(s.to_string()))?;
        let n: usize = n
            .parse()
            .map_err(|_| TruthTableError::Malformed(s.to_string()))?;
        Self::from_hex(n, hex)
    }
}

/// Decodes row `row` into one bit per input.
pub fn decode_row(row: usize, num_inputs: usize) -> Vec<bool> {
    (0..num_inputs).map(|j| row >> j & 1 == 1).collect()
}

/// Inverse of [`decode_row`].
pub fn encode_row(bits: &[bool]) -> usize {
    bits.iter()
        .enumerate()
        .fold(0, |acc, (j, &b)| acc | (b as usize) << j)
}
