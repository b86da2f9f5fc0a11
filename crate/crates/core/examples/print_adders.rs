//! Prints the generated adders in canonical `.dwtl` form.
//!
//! ```text
//! cargo run -p dwtl-core --example print_adders -- weighted 3
//! ```

use dwtl_core::constructions::{adder, AdderStyle};
use dwtl_core::print_netlist;

fn main() {
    let mut args = std::env::args().skip(1);
    let style: AdderStyle = args
        .next()
        .unwrap_or_else(|| "minority".into())
        .parse()
        .expect("style");
    let bits: usize = args.next().map_or(1, |b| b.parse().expect("bit count"));
    print!("{}", print_netlist(&adder(style, bits).expect("adder")));
}
