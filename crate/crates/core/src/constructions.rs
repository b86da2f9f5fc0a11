//! Adder generators.
//!
//! All adders use the same naming: inputs `a0..a{n-1}`, `b0..b{n-1}`, `cin`;
//! outputs `sum0..sum{n-1}`, `cout`. Carries between bits travel as the
//! inverted carry (the minority gate's raw output) and are consumed with a
//! positive weight, which undoes the inversion for free.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::gate::SpinMinorityGate;
use crate::netlist::{Netlist, Reference, TableReference, CONST_ONE};
use crate::truth_table::{TruthTable, MAX_INPUTS};

pub const MAX_ADDER_BITS: usize = 64;

/// Baseline device count per adder bit that reductions are measured
/// against.
pub const BASELINE_GATES_PER_BIT: u64 = 15;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("adder width {0} outside 1..={max}", max = MAX_ADDER_BITS)]
    Width(usize),
    #[error("unknown adder style {0:?} (expected minority, weighted or nand)")]
    Style(String),
}

fn gate(weights: &[i32]) -> SpinMinorityGate {
    SpinMinorityGate::new(weights.to_vec()).expect("static weights are nonzero")
}

/// Arithmetic reference for an `n_bits` ripple adder.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdderSpec {
    n_bits: usize,
}

impl AdderSpec {
    pub fn new(n_bits: usize) -> Result<Self, ConstructionError> {
        if n_bits == 0 || n_bits > MAX_ADDER_BITS {
            return Err(ConstructionError::Width(n_bits));
        }
        Ok(AdderSpec { n_bits })
    }

    pub fn n_bits(&self) -> usize {
        self.n_bits
    }

    pub fn inputs(&self) -> Vec<String> {
        let n = self.n_bits;
        (0..n)
            .map(|i| format!("a{i}"))
            .chain((0..n).map(|i| format!("b{i}")))
            .chain(std::iter::once("cin".to_string()))
            .collect()
    }

    pub fn outputs(&self) -> Vec<String> {
        (0..self.n_bits)
            .map(|i| format!("sum{i}"))
            .chain(std::iter::once("cout".to_string()))
            .collect()
    }

    /// Per-output tables; only defined while `2n + 1` inputs fit a table.
    pub fn tables(&self) -> Option<TableReference> {
        let width = 2 * self.n_bits + 1;
        if width > MAX_INPUTS {
            return None;
        }
        let mut tables: Vec<TruthTable> = (0..=self.n_bits)
            .map(|_| TruthTable::zeros(width).unwrap())
            .collect();
        for row in 0..1usize << width {
            let bits = crate::truth_table::decode_row(row, width);
            for (t, v) in tables.iter_mut().zip(self.eval(&bits)) {
                t.set(row, v);
            }
        }
        TableReference::new(self.outputs().into_iter().zip(tables).collect())
    }
}

impl Reference for AdderSpec {
    fn input_names(&self) -> Option<Vec<String>> {
        Some(self.inputs())
    }

    fn output_names(&self) -> Vec<String> {
        self.outputs()
    }

    fn eval(&self, inputs: &[bool]) -> Vec<bool> {
        let n = self.n_bits;
        let word = |bits: &[bool]| {
            bits.iter()
                .enumerate()
                .fold(0u128, |acc, (i, &b)| acc | (b as u128) << i)
        };
        let total = word(&inputs[..n]) + word(&inputs[n..2 * n]) + inputs[2 * n] as u128;
        (0..=n).map(|i| total >> i & 1 == 1).collect()
    }
}

/// Adder generator families selectable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdderStyle {
    /// Three minority gates per bit.
    Minority,
    /// Two gates per bit: a minority carry gate and a 4-input weighted sum gate.
    Weighted,
    /// Nine NAND2 gates per bit, the comparison baseline.
    Nand,
}

impl FromStr for AdderStyle {
    type Err = ConstructionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "minority" => Ok(AdderStyle::Minority),
            "weighted" => Ok(AdderStyle::Weighted),
            "nand" => Ok(AdderStyle::Nand),
            other => Err(ConstructionError::Style(other.to_string())),
        }
    }
}

impl fmt::Display for AdderStyle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AdderStyle::Minority => "minority",
            AdderStyle::Weighted => "weighted",
            AdderStyle::Nand => "nand",
        })
    }
}

pub fn adder(style: AdderStyle, n_bits: usize) -> Result<Netlist, ConstructionError> {
    match style {
        AdderStyle::Minority => minority_ripple_adder(n_bits),
        AdderStyle::Weighted => ripple_adder(n_bits),
        AdderStyle::Nand => nand_ripple_adder(n_bits),
    }
}

fn adder_skeleton(n_bits: usize, with_one: bool) -> Result<Netlist, ConstructionError> {
    let spec = AdderSpec::new(n_bits)?;
    let mut net = Netlist::new();
    if with_one {
        net.add_input(CONST_ONE);
    }
    for name in spec.inputs() {
        net.add_input(name);
    }
    Ok(net)
}

/// Carry into bit `i`: the `cin` input at bit 0 (consumed with weight -1
/// like any plain input), otherwise the previous bit's inverted carry
/// (consumed with weight +1).
fn carry_in(i: usize, carry_gate: &str) -> (String, i32) {
    if i == 0 {
        ("cin".to_string(), -1)
    } else {
        (carry_gate.to_string(), 1)
    }
}

/// One-bit full adder from three minority gates.
///
/// `g1 = MIN(a, b, cin)` is the inverted carry. `g2 = MIN(a, b, g1)` and
/// `g3 = MAJ(¬cin, ¬g1, g2)` give `g3 = ¬sum`.
pub fn minority_full_adder() -> Netlist {
    minority_ripple_adder(1).expect("width 1 is valid")
}

/// Chain of [`minority_full_adder`] cells, three gates per bit.
pub fn minority_ripple_adder(n_bits: usize) -> Result<Netlist, ConstructionError> {
    let mut net = adder_skeleton(n_bits, false)?;
    let mut prev = String::new();
    for i in 0..n_bits {
        let (a, b) = (format!("a{i}"), format!("b{i}"));
        let (cin, cw) = carry_in(i, &prev);
        let (g1, g2, g3) = (format!("g1_{i}"), format!("g2_{i}"), format!("g3_{i}"));
        net.add_gate(&g1, gate(&[-1, -1, cw]), [&a, &b, &cin]);
        net.add_gate(&g2, SpinMinorityGate::minority3(), [&a, &b, &g1]);
        net.add_gate(&g3, gate(&[cw, -1, 1]), [&cin, &g1, &g2]);
        prev = g1;
    }
    for i in 0..n_bits {
        net.add_output(format!("sum{i}"), format!("g3_{i}"), true);
    }
    net.add_output("cout", prev, true);
    Ok(net)
}

/// The four-input sum gate: three unit inputs and one double-width input.
/// Fed `(a, b, cin, MIN(a, b, cin))` it outputs `¬(a ⊕ b ⊕ cin)`.
pub fn weighted_sum_gate() -> SpinMinorityGate {
    gate(&[-1, -1, -1, -2])
}

/// Ripple adder with two gates per bit: a minority carry gate and the
/// weighted sum gate.
pub fn ripple_adder(n_bits: usize) -> Result<Netlist, ConstructionError> {
    let mut net = adder_skeleton(n_bits, false)?;
    let mut prev = String::new();
    let sum_weights = weighted_sum_gate();
    for i in 0..n_bits {
        let (a, b) = (format!("a{i}"), format!("b{i}"));
        let (cin, cw) = carry_in(i, &prev);
        let (g1, g2) = (format!("g1_{i}"), format!("g2_{i}"));
        net.add_gate(&g1, gate(&[-1, -1, cw]), [&a, &b, &cin]);
        let mut w = sum_weights.weights().to_vec();
        w[2] = cw;
        net.add_gate(&g2, gate(&w), [&a, &b, &cin, &g1]);
        prev = g1;
    }
    for i in 0..n_bits {
        net.add_output(format!("sum{i}"), format!("g2_{i}"), true);
    }
    net.add_output("cout", prev, true);
    Ok(net)
}

/// NAND2 as a spin gate: `MIN(x, y, 0)`, with the constant 0 supplied as an
/// inverted constant-1 input.
fn nand2() -> SpinMinorityGate {
    gate(&[-1, -1, 1])
}

/// Textbook nine-gate NAND2 full adder.
pub fn nand_full_adder() -> Netlist {
    nand_ripple_adder(1).expect("width 1 is valid")
}

pub fn nand_ripple_adder(n_bits: usize) -> Result<Netlist, ConstructionError> {
    let mut net = adder_skeleton(n_bits, true)?;
    let mut carry = "cin".to_string();
    for i in 0..n_bits {
        let (a, b) = (format!("a{i}"), format!("b{i}"));
        let n = |k: usize| format!("n{k}_{i}");
        let wiring = [
            (1, a.clone(), b),
            (2, a, n(1)),
            (3, format!("b{i}"), n(1)),
            (4, n(2), n(3)),
            (5, n(4), carry.clone()),
            (6, n(4), n(5)),
            (7, carry, n(5)),
            (8, n(6), n(7)),
            (9, n(5), n(1)),
        ];
        for (k, x, y) in wiring {
            net.add_gate(n(k), nand2(), [x.as_str(), y.as_str(), CONST_ONE]);
        }
        carry = n(9);
    }
    for i in 0..n_bits {
        net.add_output(format!("sum{i}"), format!("n8_{i}"), false);
    }
    net.add_output("cout", carry, false);
    Ok(net)
}
