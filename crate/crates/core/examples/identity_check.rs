//! Checks an identity, given on the command line, on a table file or a
//! built-in double.
//!
//!     cargo run --example identity_check -- "x*(y*x) = (x*y)*x"
//!     cargo run --example identity_check -- "(x*y)^-1 = y^-1*x^-1" table.txt

use chein_double::{
    build_double, build_group, check_identity, parse_identity, CayleyTable, NamedMatrix,
};

fn main() -> chein_double::Result<()> {
    let mut args = std::env::args().skip(1);
    let src = args
        .next()
        .unwrap_or_else(|| "((x*y)*x)*z = x*(y*(x*z))".into());
    let table = match args.next() {
        Some(path) => CayleyTable::from_text(&std::fs::read_to_string(path)?)?,
        None => {
            build_double(build_group(&"D8".parse()?)?, NamedMatrix::MSigma.matrix()).into_table()
        }
    };
    let id = parse_identity(&src)?;
    println!("identity:  {id}");
    println!("variables: {}", id.variables.join(", "));
    println!("order {}: {}", table.order(), check_identity(&table, &id)?);
    Ok(())
}
