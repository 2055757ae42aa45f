//! The Chein double of S3: a Moufang loop of order 12 that is not a group.

use chein_double::identity::Builtin;
use chein_double::{analyze, build_group, builtin, check_identity, chein, PropertyReport};

fn main() -> chein_double::Result<()> {
    let g = build_group(&"S3".parse()?)?;
    let d = chein(g);
    println!("M(S3, 2) has order {}", d.order());
    print!("{}", d.table());

    for law in Builtin::MOUFANG {
        println!("{law:<10} {}", check_identity(d.table(), &law.identity())?);
    }
    let assoc = check_identity(d.table(), &builtin("associativity")?)?;
    println!("associativity {assoc}");

    let report = analyze(&d);
    for (name, value) in PropertyReport::FLAG_NAMES.iter().zip(report.flags()) {
        println!("  {name:<24} {value}");
    }
    Ok(())
}
