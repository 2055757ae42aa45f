//! Finds explicit isomorphisms and anti-isomorphisms between doubles of Q8.

use std::sync::Arc;

use chein_double::{
    are_anti_isomorphic, are_isomorphic, build_double, build_group, lemma5_map,
    verify_homomorphism, NamedMatrix,
};

fn main() -> chein_double::Result<()> {
    let g = Arc::new(build_group(&"Q8".parse()?)?);
    let table = |n: NamedMatrix| build_double(g.clone(), n.matrix()).into_table();
    let (mc, ms, op_mc) = (
        table(NamedMatrix::MC),
        table(NamedMatrix::MSigma),
        table(NamedMatrix::OpMC),
    );

    let f = lemma5_map(&g);
    println!("closed-form map M_c -> M_sigma: {:?}", f.images);
    println!("  homomorphism: {}", verify_homomorphism(&mc, &ms, &f)?);

    match are_isomorphic(&mc, &ms)? {
        Some(map) => println!("search M_c -> M_sigma: {:?}", map.images),
        None => println!("search M_c -> M_sigma: none"),
    }
    match are_anti_isomorphic(&mc, &op_mc)? {
        Some(map) => println!("anti M_c -> op_M_c: {:?}", map.images),
        None => println!("anti M_c -> op_M_c: none"),
    }
    let giota = table(NamedMatrix::GIota);
    println!("M_c ~ G_iota: {}", are_isomorphic(&mc, &giota)?.is_some());
    Ok(())
}
