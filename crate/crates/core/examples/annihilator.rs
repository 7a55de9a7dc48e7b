//! ann_{D[s]} h^s by elimination, and the b-function from it.
use logdiv::{annihilator_fs, parse_poly, Budget, VariableContext, WeylElement};

fn main() -> logdiv::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let expr = args.first().map(String::as_str).unwrap_or("x^2 - y^3");
    let vars = args.get(1).map(String::as_str).unwrap_or("x,y");
    let h = parse_poly(expr, &VariableContext::parse_base(vars)?)?;
    let budget = Budget::default();
    let ann = annihilator_fs(&h, &budget)?;
    println!("ann h^s for h = {}:", h.to_text());
    for g in ann.generators() {
        println!("  {}", g.to_text());
    }
    let b = ann.with(&[WeylElement::from_poly(ann.context(), &h)?])?.eliminate_to_center(&budget)?;
    println!("(ann h^s + (h)) ∩ Q[s] = ({})", b.factored_text());
    Ok(())
}
