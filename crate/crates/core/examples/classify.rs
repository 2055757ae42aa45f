//! Runs the full classification of the 4096 doubles of a group.
//!
//!     cargo run --example classify -- Q8

use chein_double::{build_group, enumerate};

fn main() -> chein_double::Result<()> {
    let spec = std::env::args().nth(1).unwrap_or_else(|| "D8".into());
    let g = build_group(&spec.parse()?)?;
    let report = enumerate(&g)?;

    println!("{spec}: {} matrices", report.per_matrix.len());
    for (flag, count) in &report.counts.flags {
        println!("  {flag:<24} {count}");
    }
    println!("Moufang matrices:");
    for m in &report.moufang_set {
        let name = chein_double::NamedMatrix::identify(m).map_or("", |n| n.name());
        println!("  {:<16} {name}", m.to_string());
    }
    for (i, class) in report.nonassoc_moufang_classes.iter().enumerate() {
        let members: Vec<String> = class.members.iter().map(|m| m.to_string()).collect();
        println!("class {i}: {}", members.join("  "));
    }
    for check in report.lemma_checks.iter().chain(&report.cross_checks) {
        println!("{:<32} {:?} {}", check.name, check.status, check.detail);
    }
    println!("theorem6: {:?}", report.theorem6.status);
    Ok(())
}
