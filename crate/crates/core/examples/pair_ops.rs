//! The eight pair operations, their composition table, and the named matrices.

use chein_double::pair_ops::compose;
use chein_double::{build_group, named_matrix, opposite_matrix, t_transform, NamedMatrix, PairOp};

fn main() -> chein_double::Result<()> {
    let g = build_group(&"S3".parse()?)?;
    let (x, y) = (1, 3);
    println!("x = {x}, y = {y} in S3");
    for op in PairOp::ALL {
        let (u, v) = op.transform(&g, x, y);
        println!("  {:<4} ({u}, {v}) -> {}", op.symbol(), op.eval(&g, x, y));
    }

    print!("\nthen  ");
    for b in PairOp::ALL {
        print!("{:>4}", b.symbol());
    }
    println!();
    for a in PairOp::ALL {
        print!("{:<5} ", a.symbol());
        for b in PairOp::ALL {
            print!("{:>4}", compose(a, b).symbol());
        }
        println!();
    }

    println!();
    for n in NamedMatrix::ALL {
        let m = named_matrix(n);
        let name = |m| NamedMatrix::identify(&m).map_or("-".to_string(), |n| n.name().to_string());
        println!(
            "{:<11} {:<16} opposite {:<11} t-transform {}",
            n.name(),
            m.to_string(),
            name(opposite_matrix(&m)),
            name(t_transform(&m))
        );
    }
    Ok(())
}
