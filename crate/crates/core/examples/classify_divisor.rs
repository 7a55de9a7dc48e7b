//! Classify a free divisor: `cargo run --example classify_divisor -- "x1*x2*(x1+x2)*(x1+x3*x2)" x1,x2,x3`
use logdiv::{certify, classify, parse_poly, Budget, DltMode, VariableContext};

fn main() -> logdiv::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let expr = args.first().map(String::as_str).unwrap_or("x^4 + y^5 + x*y^4");
    let vars = args.get(1).map(String::as_str).unwrap_or("x,y");
    let ctx = VariableContext::parse_base(vars)?;
    let budget = Budget::default();
    let fd = certify(&parse_poly(expr, &ctx)?, &budget)?;
    for b in &fd.basis {
        println!("basis: {}", b.to_text());
    }
    let report = classify(&fd, DltMode::ViaEquivalence, &budget)?;
    for (name, p) in &report.flags {
        println!("{name:>16}: {:?}", p.value);
    }
    Ok(())
}
