//! Feed-forward circuits of spin-minority gates.
//!
//! Gates may only reference primary inputs or gates defined before them, so a
//! netlist that validates is acyclic by construction. Outputs carry a free
//! inversion flag. The reserved input name [`CONST_ONE`] is a constant-1
//! source and is not part of the assignment space.

mod cost;
mod equiv;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::gate::{fmt_bits, GateError, SpinMinorityGate};
use crate::truth_table::{TruthTable, MAX_INPUTS};

pub use cost::CostReport;
pub use equiv::{
    CheckMethod, Counterexample, Equivalence, EquivalenceOptions, Reference, TableReference,
    DEFAULT_SEED, RANDOM_VECTORS,
};

/// Reserved input name for a constant-1 source.
pub const CONST_ONE: &str = "one";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateDef {
    pub name: String,
    pub gate: SpinMinorityGate,
    pub sources: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputDef {
    pub name: String,
    pub source: String,
    pub inverted: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Netlist {
    pub inputs: Vec<String>,
    pub gates: Vec<GateDef>,
    pub outputs: Vec<OutputDef>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructuralError {
    #[error("invalid name {0:?}")]
    InvalidName(String),
    #[error("duplicate name {0}")]
    DuplicateName(String),
    #[error("{user}: unknown reference {name}")]
    UnknownReference { user: String, name: String },
    #[error("{user}: forward reference to {name}")]
    ForwardReference { user: String, name: String },
    #[error("gate {gate}: {weights} weights but {sources} sources")]
    ArityMismatch {
        gate: String,
        weights: usize,
        sources: usize,
    },
    #[error("gate {gate}: tie at assignment {}", fmt_bits(.assignment))]
    TieProne { gate: String, assignment: Vec<bool> },
    #[error("gate {gate}: fan-in {fan_in} too wide to certify tie-freedom")]
    TooWide { gate: String, fan_in: usize },
    #[error("netlist has no outputs")]
    NoOutputs,
}

impl StructuralError {
    /// The declared name this error is attached to, if any.
    pub fn subject(&self) -> Option<&str> {
        match self {
            StructuralError::InvalidName(n) | StructuralError::DuplicateName(n) => Some(n),
            StructuralError::UnknownReference { user, .. }
            | StructuralError::ForwardReference { user, .. } => Some(user),
            StructuralError::ArityMismatch { gate, .. }
            | StructuralError::TieProne { gate, .. }
            | StructuralError::TooWide { gate, .. } => Some(gate),
            StructuralError::NoOutputs => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetlistError {
    #[error("invalid netlist: {}", join_errors(.0))]
    Invalid(Vec<StructuralError>),
    #[error("expected {expected} input values, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("missing value for input {0}")]
    MissingInput(String),
    #[error("unknown input {0}")]
    UnknownInput(String),
    #[error("gate {gate}: {source}")]
    Gate { gate: String, source: GateError },
    #[error("{0} inputs exceed the {max}-input table limit", max = MAX_INPUTS)]
    TooManyInputs(usize),
    #[error("netlist has no free inputs")]
    NoInputs,
    #[error("output names differ: netlist has [{}], reference has [{}]", .netlist.join(","), .reference.join(","))]
    OutputMismatch {
        netlist: Vec<String>,
        reference: Vec<String>,
    },
    #[error("input names differ: netlist has [{}], reference has [{}]", .netlist.join(","), .reference.join(","))]
    InputMismatch {
        netlist: Vec<String>,
        reference: Vec<String>,
    },
    #[error("reference has {reference} inputs, netlist has {netlist}")]
    InputCountMismatch { netlist: usize, reference: usize },
    #[error("baseline count must be at least 1")]
    InvalidBaseline,
}

fn join_errors(errs: &[StructuralError]) -> String {
    errs.iter()
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

pub fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Signal {
    Input(usize),
    One,
    Gate(usize),
}

#[derive(Debug, Clone)]
pub(crate) struct CompiledGate {
    weights: Vec<i64>,
    sources: Vec<Signal>,
}

/// A validated netlist with references resolved to indices.
#[derive(Debug, Clone)]
pub struct CompiledNetlist {
    input_names: Vec<String>,
    gate_names: Vec<String>,
    output_names: Vec<String>,
    gates: Vec<CompiledGate>,
    outputs: Vec<(Signal, bool)>,
}

impl Netlist {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_input(&mut self, name: impl Into<String>) -> &mut Self {
        self.inputs.push(name.into());
        self
    }

    pub fn add_gate<S: Into<String>>(
        &mut self,
        name: impl Into<String>,
        gate: SpinMinorityGate,
        sources: impl IntoIterator<Item = S>,
    ) -> &mut Self {
        self.gates.push(GateDef {
            name: name.into(),
            gate,
            sources: sources.into_iter().map(Into::into).collect(),
        });
        self
    }

    pub fn add_output(
        &mut self,
        name: impl Into<String>,
        source: impl Into<String>,
        inverted: bool,
    ) -> &mut Self {
        self.outputs.push(OutputDef {
            name: name.into(),
            source: source.into(),
            inverted,
        });
        self
    }

    /// Inputs that take assignment values, in declaration order (excludes
    /// the constant `one`).
    pub fn free_inputs(&self) -> Vec<&str> {
        self.inputs
            .iter()
            .map(String::as_str)
            .filter(|&n| n != CONST_ONE)
            .collect()
    }

    pub fn output_names(&self) -> Vec<&str> {
        self.outputs.iter().map(|o| o.name.as_str()).collect()
    }

    pub fn gate_count(&self) -> usize {
        self.gates.len()
    }

    /// All structural problems; empty iff the netlist is usable.
    pub fn validate(&self) -> Vec<StructuralError> {
        let mut errors = Vec::new();
        let mut seen: HashSet<String> = HashSet::new();
        let all_gate_names: HashMap<&str, usize> = self
            .gates
            .iter()
            .enumerate()
            .map(|(i, g)| (g.name.as_str(), i))
            .collect();

        let mut declare = |name: &str, errors: &mut Vec<StructuralError>| {
            if !is_valid_name(name) {
                errors.push(StructuralError::InvalidName(name.to_string()));
            }
            if !seen.insert(name.to_string()) {
                errors.push(StructuralError::DuplicateName(name.to_string()));
            }
        };

        for input in &self.inputs {
            declare(input, &mut errors);
        }
        let inputs: HashMap<&str, ()> = self.inputs.iter().map(|n| (n.as_str(), ())).collect();
        let check_ref =
            |user: &str, r: &str, gate_pos: usize, errors: &mut Vec<StructuralError>| {
                if inputs.contains_key(r) {
                    return;
                }
                match all_gate_names.get(r) {
                    Some(&i) if i < gate_pos => {}
                    Some(_) => errors.push(StructuralError::ForwardReference {
                        user: user.to_string(),
                        name: r.to_string(),
                    }),
                    None => errors.push(StructuralError::UnknownReference {
                        user: user.to_string(),
                        name: r.to_string(),
                    }),
                }
            };

        for (pos, g) in self.gates.iter().enumerate() {
            declare(&g.name, &mut errors);
            if g.sources.len() != g.gate.fan_in() {
                errors.push(StructuralError::ArityMismatch {
                    gate: g.name.clone(),
                    weights: g.gate.fan_in(),
                    sources: g.sources.len(),
                });
            }
            for r in &g.sources {
                check_ref(&g.name, r, pos, &mut errors);
            }
            match g.gate.tie_rows() {
                Ok(ties) => {
                    if let Some(&row) = ties.first() {
                        errors.push(StructuralError::TieProne {
                            gate: g.name.clone(),
                            assignment: crate::truth_table::decode_row(row, g.gate.fan_in()),
                        });
                    }
                }
                Err(_) => errors.push(StructuralError::TooWide {
                    gate: g.name.clone(),
                    fan_in: g.gate.fan_in(),
                }),
            }
        }
        for o in &self.outputs {
            declare(&o.name, &mut errors);
            check_ref(&o.name, &o.source, self.gates.len(), &mut errors);
        }
        if self.outputs.is_empty() {
            errors.push(StructuralError::NoOutputs);
        }
        errors
    }

    pub fn compile(&self) -> Result<CompiledNetlist, NetlistError> {
        let errors = self.validate();
        if !errors.is_empty() {
            return Err(NetlistError::Invalid(errors));
        }
        let mut signals: HashMap<&str, Signal> = HashMap::new();
        let mut free = 0;
        for name in &self.inputs {
            if name == CONST_ONE {
                signals.insert(name, Signal::One);
            } else {
                signals.insert(name, Signal::Input(free));
                free += 1;
            }
        }
        let mut gates = Vec::with_capacity(self.gates.len());
        for (i, g) in self.gates.iter().enumerate() {
            gates.push(CompiledGate {
                weights: g.gate.weights().iter().map(|&w| w as i64).collect(),
                sources: g.sources.iter().map(|s| signals[s.as_str()]).collect(),
            });
            signals.insert(&g.name, Signal::Gate(i));
        }
        let outputs = self
            .outputs
            .iter()
            .map(|o| (signals[o.source.as_str()], o.inverted))
            .collect();
        Ok(CompiledNetlist {
            input_names: self.free_inputs().into_iter().map(String::from).collect(),
            gate_names: self.gates.iter().map(|g| g.name.clone()).collect(),
            output_names: self.outputs.iter().map(|o| o.name.clone()).collect(),
            gates,
            outputs,
        })
    }

    /// Evaluates with one value per free input, in declaration order.
    pub fn evaluate(&self, inputs: &[bool]) -> Result<Vec<bool>, NetlistError> {
        self.compile()?.evaluate(inputs)
    }

    /// Evaluates from a name → value map; returns `(output, value)` pairs.
    pub fn evaluate_named(
        &self,
        assignment: &BTreeMap<String, bool>,
    ) -> Result<Vec<(String, bool)>, NetlistError> {
        let compiled = self.compile()?;
        for name in assignment.keys() {
            if !compiled.input_names.contains(name) {
                return Err(NetlistError::UnknownInput(name.clone()));
            }
        }
        let values = compiled
            .input_names
            .iter()
            .map(|n| {
                assignment
                    .get(n)
                    .copied()
                    .ok_or_else(|| NetlistError::MissingInput(n.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let out = compiled.evaluate(&values)?;
        Ok(compiled.output_names.iter().cloned().zip(out).collect())
    }

    /// One table per output, in output order.
    pub fn truth_tables(&self) -> Result<Vec<(String, TruthTable)>, NetlistError> {
        self.compile()?.truth_tables()
    }

    pub fn check_equivalence(
        &self,
        reference: &dyn Reference,
        options: &EquivalenceOptions,
    ) -> Result<Equivalence, NetlistError> {
        equiv::check(&self.compile()?, reference, options)
    }

    pub fn cost_report(&self, baseline_count: u64) -> Result<CostReport, NetlistError> {
        cost::report(self, &self.compile()?, baseline_count)
    }
}

impl CompiledNetlist {
    pub fn input_names(&self) -> &[String] {
        &self.input_names
    }

    pub fn output_names(&self) -> &[String] {
        &self.output_names
    }

    pub fn num_inputs(&self) -> usize {
        self.input_names.len()
    }

    pub(crate) fn gates(&self) -> &[CompiledGate] {
        &self.gates
    }

    pub(crate) fn outputs(&self) -> &[(Signal, bool)] {
        &self.outputs
    }

    /// Evaluates into caller-provided buffers. `gate_values` is scratch space.
    pub fn evaluate_into(
        &self,
        inputs: &[bool],
        gate_values: &mut Vec<bool>,
        out: &mut Vec<bool>,
    ) -> Result<(), NetlistError> {
        if inputs.len() != self.input_names.len() {
            return Err(NetlistError::Arity {
                expected: self.input_names.len(),
                got: inputs.len(),
            });
        }
        gate_values.clear();
        for (i, g) in self.gates.iter().enumerate() {
            let mut sum = 0i64;
            for (&w, &src) in g.weights.iter().zip(&g.sources) {
                let bit = match src {
                    Signal::Input(j) => inputs[j],
                    Signal::One => true,
                    Signal::Gate(k) => gate_values[k],
                };
                sum += if bit { w } else { -w };
            }
            if sum == 0 {
                let assignment = g
                    .sources
                    .iter()
                    .map(|&src| match src {
                        Signal::Input(j) => inputs[j],
                        Signal::One => true,
                        Signal::Gate(k) => gate_values[k],
                    })
                    .collect();
                return Err(NetlistError::Gate {
                    gate: self.gate_names[i].clone(),
                    source: GateError::Tie { assignment },
                });
            }
            gate_values.push(sum > 0);
        }
        out.clear();
        out.extend(self.outputs.iter().map(|&(src, inv)| {
            let v = match src {
                Signal::Input(j) => inputs[j],
                Signal::One => true,
                Signal::Gate(k) => gate_values[k],
            };
            v ^ inv
        }));
        Ok(())
    }

    pub fn evaluate(&self, inputs: &[bool]) -> Result<Vec<bool>, NetlistError> {
        let mut scratch = Vec::with_capacity(self.gates.len());
        let mut out = Vec::with_capacity(self.outputs.len());
        self.evaluate_into(inputs, &mut scratch, &mut out)?;
        Ok(out)
    }

    pub fn truth_tables(&self) -> Result<Vec<(String, TruthTable)>, NetlistError> {
        let n = self.num_inputs();
        if n > MAX_INPUTS {
            return Err(NetlistError::TooManyInputs(n));
        }
        if n == 0 {
            return Err(NetlistError::NoInputs);
        }
        let mut tables: Vec<TruthTable> = (0..self.outputs.len())
            .map(|_| TruthTable::zeros(n).expect("input count checked"))
            .collect();
        let mut inputs = vec![false; n];
        let mut scratch = Vec::new();
        let mut out = Vec::new();
        for row in 0..1usize << n {
            for (j, v) in inputs.iter_mut().enumerate() {
                *v = row >> j & 1 == 1;
            }
            self.evaluate_into(&inputs, &mut scratch, &mut out)?;
            for (t, &v) in tables.iter_mut().zip(&out) {
                if v {
                    t.set(row, true);
                }
            }
        }
        Ok(self.output_names.iter().cloned().zip(tables).collect())
    }
}

impl fmt::Display for Netlist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::textio::print_netlist(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn min3() -> SpinMinorityGate {
        SpinMinorityGate::minority3()
    }

    fn single_gate() -> Netlist {
        let mut n = Netlist::new();
        n.add_input("a").add_input("b").add_input("c");
        n.add_gate("g", min3(), ["a", "b", "c"]);
        n.add_output("y", "g", false);
        n
    }

    #[test]
    fn single_gate_table_matches_gate() {
        let tables = single_gate().truth_tables().unwrap();
        assert_eq!(tables[0].1.as_u64(), Some(0x17));
        assert_eq!(tables[0].1, min3().truth_table().unwrap());
    }

    #[test]
    fn pass_through() {
        let mut n = Netlist::new();
        n.add_input("a").add_output("y", "a", false);
        assert_eq!(n.truth_tables().unwrap()[0].1.as_u64(), Some(0b10));
        assert_eq!(n.cost_report(1).unwrap().depth, 0);
    }

    #[test]
    fn forward_reference_rejected() {
        let mut n = Netlist::new();
        n.add_input("a").add_input("b");
        n.add_gate("g1", min3(), ["a", "b", "g2"]);
        n.add_gate("g2", min3(), ["a", "b", "a"]);
        n.add_output("y", "g1", false);
        let errs = n.validate();
        assert!(errs
            .iter()
            .any(|e| e.to_string().contains("forward reference")));
        assert!(matches!(
            n.evaluate(&[true, true]),
            Err(NetlistError::Invalid(_))
        ));
    }

    #[test]
    fn tie_prone_gate_rejected() {
        let mut n = Netlist::new();
        n.add_input("a").add_input("b");
        n.add_gate(
            "g",
            SpinMinorityGate::new(vec![-1, -1]).unwrap(),
            ["a", "b"],
        );
        n.add_output("y", "g", false);
        let errs = n.validate();
        assert_eq!(errs.len(), 1);
        assert!(errs[0].to_string().contains("tie at assignment"));
    }

    #[test]
    fn structural_errors() {
        let mut n = Netlist::new();
        n.add_input("a").add_input("a").add_input("9x");
        n.add_gate("g", min3(), ["a", "zz"]);
        let errs = n.validate();
        assert!(errs.contains(&StructuralError::DuplicateName("a".into())));
        assert!(errs.contains(&StructuralError::InvalidName("9x".into())));
        assert!(errs.contains(&StructuralError::UnknownReference {
            user: "g".into(),
            name: "zz".into()
        }));
        assert!(errs
            .iter()
            .any(|e| matches!(e, StructuralError::ArityMismatch { .. })));
        assert!(errs.contains(&StructuralError::NoOutputs));
    }

    #[test]
    fn constant_one_is_not_an_assignment_input() {
        let mut n = Netlist::new();
        n.add_input(CONST_ONE).add_input("a").add_input("b");
        // NAND2 as a minority gate with an inverted constant-1 third input
        n.add_gate(
            "g",
            SpinMinorityGate::new(vec![-1, -1, 1]).unwrap(),
            ["a", "b", CONST_ONE],
        );
        n.add_output("y", "g", false);
        assert_eq!(n.free_inputs(), vec!["a", "b"]);
        assert_eq!(n.truth_tables().unwrap()[0].1.as_u64(), Some(0b0111));
    }

    #[test]
    fn named_evaluation() {
        let n = single_gate();
        let mut m = BTreeMap::new();
        m.insert("a".to_string(), true);
        m.insert("b".to_string(), true);
        assert_eq!(
            n.evaluate_named(&m),
            Err(NetlistError::MissingInput("c".into()))
        );
        m.insert("c".to_string(), false);
        assert_eq!(
            n.evaluate_named(&m).unwrap(),
            vec![("y".to_string(), false)]
        );
        m.insert("d".to_string(), false);
        assert_eq!(
            n.evaluate_named(&m),
            Err(NetlistError::UnknownInput("d".into()))
        );
    }

    #[test]
    fn arity_checked() {
        assert_eq!(
            single_gate().evaluate(&[true]),
            Err(NetlistError::Arity {
                expected: 3,
                got: 1
            })
        );
    }
}
