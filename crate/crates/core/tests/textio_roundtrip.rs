use dwtl_core::netlist::Netlist;
use dwtl_core::{parse_netlist, print_netlist, SpinMinorityGate};
use proptest::prelude::*;

fn name() -> impl Strategy<Value = String> {
    "[A-Za-z_][A-Za-z0-9_]{0,6}"
}

/// Random valid netlists with arbitrary (distinct) names and mixed gate forms.
fn netlist() -> impl Strategy<Value = Netlist> {
    (
        prop::collection::hash_set(name(), 3..24),
        1usize..=4,
        prop::collection::vec(
            (
                prop::collection::vec((any::<prop::sample::Index>(), -3i32..=3), 1..=5),
                any::<bool>(),
            ),
            0..8,
        ),
        prop::collection::vec((any::<prop::sample::Index>(), any::<bool>()), 1..=3),
        any::<bool>(),
    )
        .prop_filter("enough names", |(names, ni, gates, outs, _)| {
            names.len() >= ni + gates.len() + outs.len()
        })
        .prop_map(|(names, ni, gates, outs, with_one)| {
            let mut names: Vec<String> = names.into_iter().filter(|n| n != "one").collect();
            names.sort();
            let mut pool = names.into_iter();
            let mut net = Netlist::new();
            let mut signals = Vec::new();
            if with_one {
                net.add_input("one");
                signals.push("one".to_string());
            }
            for _ in 0..ni {
                let n = pool.next().unwrap_or_else(|| "spare_in".into());
                net.add_input(&n);
                signals.push(n);
            }
            for (inputs, sugar) in gates {
                let Some(n) = pool.next() else { break };
                let (weights, sources): (Vec<i32>, Vec<String>) = if sugar {
                    let s =
                        |k: usize| signals[inputs[k % inputs.len()].0.index(signals.len())].clone();
                    (vec![-1, -1, -1], vec![s(0), s(1), s(2)])
                } else {
                    let mut w: Vec<i32> = inputs
                        .iter()
                        .map(|&(_, w)| if w == 0 { 1 } else { w })
                        .collect();
                    if w.iter().map(|x| x.abs()).sum::<i32>() % 2 == 0 {
                        w[0] += w[0].signum();
                    }
                    let srcs = inputs
                        .iter()
                        .map(|(i, _)| signals[i.index(signals.len())].clone())
                        .collect();
                    (w, srcs)
                };
                net.add_gate(&n, SpinMinorityGate::new(weights).unwrap(), sources);
                signals.push(n);
            }
            for (k, (src, inv)) in outs.into_iter().enumerate() {
                let n = pool.next().unwrap_or_else(|| format!("out_{k}"));
                net.add_output(n, signals[src.index(signals.len())].clone(), inv);
            }
            net
        })
        .prop_filter("valid", |n| n.validate().is_empty())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn parse_print_roundtrip(net in netlist()) {
        let text = print_netlist(&net);
        let back = parse_netlist(&text).unwrap();
        prop_assert_eq!(&back, &net);
        prop_assert_eq!(print_netlist(&back), text.clone());
        let crlf = text.replace('\n', "\r\n");
        prop_assert_eq!(parse_netlist(&crlf).unwrap(), net);
    }

    #[test]
    fn rejections_carry_a_line_number(net in netlist(), drop in any::<prop::sample::Index>()) {
        // deleting a declaration that something depends on must fail on a real line
        let text = print_netlist(&net);
        let lines: Vec<&str> = text.lines().collect();
        let k = drop.index(lines.len());
        let mutated: String = lines
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k)
            .map(|(_, l)| format!("{l}\n"))
            .collect();
        if let Err(e) = parse_netlist(&mutated) {
            prop_assert!(e.line >= 1 && e.line <= lines.len());
        }
    }
}
