//! Der(log D), Saito's criterion and the Euler-normalized basis.
use logdiv::{certify, log_derivations, parse_poly, Budget, VariableContext};

fn main() -> logdiv::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let expr = args.first().map(String::as_str).unwrap_or("x*y*(x+y)");
    let vars = args.get(1).map(String::as_str).unwrap_or("x,y");
    let h = parse_poly(expr, &VariableContext::parse_base(vars)?)?;
    let budget = Budget::default();
    println!("generators of Der(log h) for h = {}:", h.to_text());
    for d in log_derivations(&h, &budget)? {
        println!("  {}   (alpha = {})", d.to_text(), d.alpha.to_text());
    }
    match certify(&h, &budget) {
        Ok(fd) => {
            println!("free ({:?}); det = {}", fd.freeness, fd.saito_det.to_text());
            for d in &fd.basis {
                println!("  basis: {}   (alpha = {})", d.to_text(), d.alpha.to_text());
            }
        }
        Err(e) => println!("not certified free: {e}"),
    }
    Ok(())
}
