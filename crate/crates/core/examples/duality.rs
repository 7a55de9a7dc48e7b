//! Dual of D[s]h^q read from the transposed Spencer complex, compared with D[s]h^(-q-1).
use logdiv::spencer::{dual_presentation, verify_duality};
use logdiv::{certify, parse_poly, Budget, UniPoly, VariableContext};

fn main() -> logdiv::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let expr = args.first().map(String::as_str).unwrap_or("x*y*(x+y)");
    let vars = args.get(1).map(String::as_str).unwrap_or("x,y");
    let budget = Budget::default();
    let fd = certify(&parse_poly(expr, &VariableContext::parse_base(vars)?)?, &budget)?;
    for q in [UniPoly::s(), UniPoly::parse("s+1")?] {
        let dp = dual_presentation(&fd, &q, &budget)?;
        println!("q = {q}: relations");
        for g in dp.relations.generators() {
            println!("  {}", g.to_text());
        }
        println!("  equals D[s]Θ_(h,-q-1): {}", verify_duality(&fd, &q, &budget)?);
    }
    Ok(())
}
