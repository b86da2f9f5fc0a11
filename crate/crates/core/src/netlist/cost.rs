use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;

use super::{CompiledNetlist, Netlist, NetlistError, Signal};

/// Gate-level cost of a netlist relative to a baseline device count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostReport {
    pub gate_count: u64,
    pub fanin_sum: u64,
    /// Largest number of uses of one input or gate as a source, outputs included.
    pub max_fanout: u64,
    /// Gates on the longest input-to-output path.
    pub depth: u64,
    pub inverted_outputs: u64,
    pub baseline_count: u64,
    /// `100 · (1 − gate_count / baseline_count)`, exact.
    pub reduction_percent: Ratio<i64>,
}

/// `floor(x + 1/2)`: half-up rounding that is also well defined below zero.
fn round_half_up(x: Ratio<i64>) -> i64 {
    (x + Ratio::new(1, 2)).floor().to_integer()
}

impl CostReport {
    /// Reduction rounded half-up to one decimal, e.g. `"86.7"`.
    pub fn reduction_one_decimal(&self) -> String {
        let tenths = round_half_up(self.reduction_percent * 10);
        let (whole, frac) = tenths.abs().div_rem(&10);
        let sign = if tenths < 0 { "-" } else { "" };
        format!("{sign}{whole}.{frac}")
    }

    /// Reduction rounded half-up to a whole percent.
    pub fn reduction_rounded(&self) -> i64 {
        round_half_up(self.reduction_percent)
    }
}

impl fmt::Display for CostReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "gates={} fanin_sum={} max_fanout={} depth={} inverted_outputs={} baseline={} reduction={}% (≈{}%)",
            self.gate_count,
            self.fanin_sum,
            self.max_fanout,
            self.depth,
            self.inverted_outputs,
            self.baseline_count,
            self.reduction_one_decimal(),
            self.reduction_rounded()
        )
    }
}

pub(super) fn report(
    net: &Netlist,
    compiled: &CompiledNetlist,
    baseline_count: u64,
) -> Result<CostReport, NetlistError> {
    if baseline_count == 0 {
        return Err(NetlistError::InvalidBaseline);
    }
    let gates = compiled.gates();
    let mut input_uses = vec![0u64; compiled.num_inputs()];
    let mut one_uses = 0u64;
    let mut gate_uses = vec![0u64; gates.len()];
    let mut level = vec![0u64; gates.len()];
    let mut count_use = |s: Signal| match s {
        Signal::Input(j) => input_uses[j] += 1,
        Signal::One => one_uses += 1,
        Signal::Gate(k) => gate_uses[k] += 1,
    };
    for (i, g) in gates.iter().enumerate() {
        let mut deepest = 0;
        for &s in &g.sources {
            count_use(s);
            if let Signal::Gate(k) = s {
                deepest = deepest.max(level[k]);
            }
        }
        level[i] = deepest + 1;
    }
    let mut depth = 0;
    for &(s, _) in compiled.outputs() {
        count_use(s);
        if let Signal::Gate(k) = s {
            depth = depth.max(level[k]);
        }
    }
    let max_fanout = input_uses
        .iter()
        .chain(&gate_uses)
        .copied()
        .chain(std::iter::once(one_uses))
        .max()
        .unwrap_or(0);

    let gate_count = net.gates.len() as u64;
    let reduction_percent = Ratio::new(
        100 * (baseline_count as i64 - gate_count as i64),
        baseline_count as i64,
    );
    Ok(CostReport {
        gate_count,
        fanin_sum: net.gates.iter().map(|g| g.gate.fan_in() as u64).sum(),
        max_fanout,
        depth,
        inverted_outputs: net.outputs.iter().filter(|o| o.inverted).count() as u64,
        baseline_count,
        reduction_percent,
    })
}
