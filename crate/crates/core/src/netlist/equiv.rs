//! Equivalence checking against a reference function.
//!
//! Up to [`MAX_INPUTS`] free inputs every row is checked and the reported
//! counterexample is the lowest disagreeing row. Wider netlists are checked
//! on corner vectors plus a seeded pseudo-random sample.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CompiledNetlist, NetlistError};
use crate::truth_table::{TruthTable, MAX_INPUTS};

pub const DEFAULT_SEED: u64 = 0xD0DA11;
pub const RANDOM_VECTORS: usize = 100_000;

/// The function a netlist is checked against.
pub trait Reference {
    /// Input names in the order [`Reference::eval`] expects them. `None`
    /// means positional: the netlist's free-input order.
    fn input_names(&self) -> Option<Vec<String>>;
    fn output_names(&self) -> Vec<String>;
    /// One bit per output, in [`Reference::output_names`] order.
    fn eval(&self, inputs: &[bool]) -> Vec<bool>;
    /// Input count when positional.
    fn num_inputs(&self) -> Option<usize> {
        self.input_names().map(|n| n.len())
    }
}

/// Reference given as one truth table per output, positional inputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableReference {
    outputs: Vec<(String, TruthTable)>,
}

impl TableReference {
    /// All tables must share one input count.
    pub fn new(outputs: Vec<(String, TruthTable)>) -> Option<Self> {
        let n = outputs.first()?.1.num_inputs();
        outputs
            .iter()
            .all(|(_, t)| t.num_inputs() == n)
            .then_some(TableReference { outputs })
    }

    pub fn tables(&self) -> &[(String, TruthTable)] {
        &self.outputs
    }
}

impl Reference for TableReference {
    fn input_names(&self) -> Option<Vec<String>> {
        None
    }

    fn output_names(&self) -> Vec<String> {
        self.outputs.iter().map(|(n, _)| n.clone()).collect()
    }

    fn eval(&self, inputs: &[bool]) -> Vec<bool> {
        let row = crate::truth_table::encode_row(inputs);
        self.outputs.iter().map(|(_, t)| t.get(row)).collect()
    }

    fn num_inputs(&self) -> Option<usize> {
        Some(self.outputs[0].1.num_inputs())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceOptions {
    pub seed: u64,
    pub random_vectors: usize,
}

impl Default for EquivalenceOptions {
    fn default() -> Self {
        EquivalenceOptions {
            seed: DEFAULT_SEED,
            random_vectors: RANDOM_VECTORS,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckMethod {
    Exhaustive,
    Sampled {
        seed: u64,
        random_vectors: usize,
        corner_vectors: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    /// One value per netlist free input, in declaration order.
    pub assignment: Vec<bool>,
    /// Row index under the table bit order; set in exhaustive mode.
    pub row: Option<u64>,
    pub output: String,
    pub got: bool,
    pub want: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Equivalence {
    Equivalent {
        rows_checked: u64,
        method: CheckMethod,
    },
    Counterexample(Counterexample),
}

impl Equivalence {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Equivalence::Equivalent { .. })
    }
}

struct Matcher<'a> {
    net: &'a CompiledNetlist,
    reference: &'a dyn Reference,
    /// reference input k reads netlist input `input_map[k]`
    input_map: Vec<usize>,
    /// netlist output i is reference output `output_map[i]`
    output_map: Vec<usize>,
    scratch: Vec<bool>,
    got: Vec<bool>,
    ref_inputs: Vec<bool>,
}

impl<'a> Matcher<'a> {
    fn new(net: &'a CompiledNetlist, reference: &'a dyn Reference) -> Result<Self, NetlistError> {
        let ref_outputs = reference.output_names();
        let mut a: Vec<&String> = net.output_names().iter().collect();
        let mut b: Vec<&String> = ref_outputs.iter().collect();
        a.sort();
        b.sort();
        if a != b || ref_outputs.len() != net.output_names().len() {
            return Err(NetlistError::OutputMismatch {
                netlist: net.output_names().to_vec(),
                reference: ref_outputs,
            });
        }
        let out_pos: HashMap<&str, usize> = ref_outputs
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        let output_map = net
            .output_names()
            .iter()
            .map(|n| out_pos[n.as_str()])
            .collect();

        let input_map = match reference.input_names() {
            Some(names) => {
                let pos: HashMap<&str, usize> = net
                    .input_names()
                    .iter()
                    .enumerate()
                    .map(|(i, n)| (n.as_str(), i))
                    .collect();
                let map: Option<Vec<usize>> =
                    names.iter().map(|n| pos.get(n.as_str()).copied()).collect();
                match map {
                    Some(m) if m.len() == net.num_inputs() => m,
                    _ => {
                        return Err(NetlistError::InputMismatch {
                            netlist: net.input_names().to_vec(),
                            reference: names,
                        })
                    }
                }
            }
            None => {
                let n = reference.num_inputs().unwrap_or(net.num_inputs());
                if n != net.num_inputs() {
                    return Err(NetlistError::InputCountMismatch {
                        netlist: net.num_inputs(),
                        reference: n,
                    });
                }
                (0..n).collect()
            }
        };
        Ok(Matcher {
            net,
            reference,
            ref_inputs: vec![false; input_map.len()],
            input_map,
            output_map,
            scratch: Vec::new(),
            got: Vec::new(),
        })
    }

    /// First disagreeing netlist output at this assignment, if any.
    fn compare(&mut self, inputs: &[bool]) -> Result<Option<(usize, bool, bool)>, NetlistError> {
        self.net
            .evaluate_into(inputs, &mut self.scratch, &mut self.got)?;
        for (k, &src) in self.input_map.iter().enumerate() {
            self.ref_inputs[k] = inputs[src];
        }
        let want = self.reference.eval(&self.ref_inputs);
        Ok(self
            .got
            .iter()
            .zip(&self.output_map)
            .enumerate()
            .find(|(_, (&g, &r))| g != want[r])
            .map(|(i, (&g, &r))| (i, g, want[r])))
    }
}

pub(super) fn check(
    net: &CompiledNetlist,
    reference: &dyn Reference,
    options: &EquivalenceOptions,
) -> Result<Equivalence, NetlistError> {
    let mut matcher = Matcher::new(net, reference)?;
    let n = net.num_inputs();
    let counterexample =
        |m: &Matcher, inputs: &[bool], row: Option<u64>, (i, got, want): (usize, bool, bool)| {
            Equivalence::Counterexample(Counterexample {
                assignment: inputs.to_vec(),
                row,
                output: m.net.output_names()[i].clone(),
                got,
                want,
            })
        };

    if n <= MAX_INPUTS {
        let rows = 1u64 << n;
        let mut inputs = vec![false; n];
        for row in 0..rows {
            for (j, v) in inputs.iter_mut().enumerate() {
                *v = row >> j & 1 == 1;
            }
            if let Some(diff) = matcher.compare(&inputs)? {
                return Ok(counterexample(&matcher, &inputs, Some(row), diff));
            }
        }
        return Ok(Equivalence::Equivalent {
            rows_checked: rows,
            method: CheckMethod::Exhaustive,
        });
    }

    let mut corners = vec![vec![false; n], vec![true; n]];
    corners.extend((0..n).map(|j| {
        let mut v = vec![false; n];
        v[j] = true;
        v
    }));
    for inputs in &corners {
        if let Some(diff) = matcher.compare(inputs)? {
            return Ok(counterexample(&matcher, inputs, None, diff));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut inputs = vec![false; n];
    for _ in 0..options.random_vectors {
        for v in inputs.iter_mut() {
            *v = rng.random();
        }
        if let Some(diff) = matcher.compare(&inputs)? {
            return Ok(counterexample(&matcher, &inputs, None, diff));
        }
    }
    Ok(Equivalence::Equivalent {
        rows_checked: (corners.len() + options.random_vectors) as u64,
        method: CheckMethod::Sampled {
            seed: options.seed,
            random_vectors: options.random_vectors,
            corner_vectors: corners.len(),
        },
    })
}
