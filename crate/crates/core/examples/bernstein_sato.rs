//! Bernstein–Sato polynomial by elimination and by the functional-equation oracle:
//! `cargo run --example bernstein_sato -- "x*y*(x+y)" x,y`
use logdiv::bernstein::{bs_general, default_bounds, minimal_certified_b};
use logdiv::{parse_poly, Budget, VariableContext};

fn main() -> logdiv::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let expr = args.first().map(String::as_str).unwrap_or("x^2 - y^3");
    let vars = args.get(1).map(String::as_str).unwrap_or("x,y");
    let h = parse_poly(expr, &VariableContext::parse_base(vars)?)?;
    let budget = Budget::default();
    let res = bs_general(&h, &budget)?;
    println!("b(s) = {}  (S-pairs: {})", res.b.factored_text(), budget.pairs_used());
    println!("b(s) = b(-s-2) up to sign: {}", res.symmetry_shift2);
    let (order, degree) = default_bounds(&h);
    let max_degree = res.b.degree().unwrap_or(0) as u32;
    match minimal_certified_b(&h, max_degree, order, degree)? {
        Some(c) => println!("oracle: {}  via P = {}", c.b.factored_text(), c.certificate.map(|p| p.to_text()).unwrap_or_default()),
        None => println!("oracle: inconclusive within order {order}, degree {degree}"),
    }
    Ok(())
}
