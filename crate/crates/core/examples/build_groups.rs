//! Builds a few groups from their specs and prints their basic invariants.
//!
//!     cargo run --example build_groups -- S4 D10 Q8xC3

use chein_double::{build_group, GroupSpec};

fn main() -> chein_double::Result<()> {
    let mut specs: Vec<String> = std::env::args().skip(1).collect();
    if specs.is_empty() {
        specs = ["C5", "D8", "Q8", "S3", "S3xC2", "C2xC2xC2"]
            .map(String::from)
            .to_vec();
    }
    println!(
        "{:<10} {:>5} {:>8} {:>6} {:>14}",
        "group", "order", "abelian", "|G:Z|", "squares central"
    );
    for s in specs {
        let spec: GroupSpec = s.parse()?;
        let g = build_group(&spec)?;
        println!(
            "{:<10} {:>5} {:>8} {:>6} {:>14}",
            spec.to_string(),
            g.order(),
            g.is_abelian(),
            g.center_index(),
            g.squares_are_central()
        );
    }
    Ok(())
}
