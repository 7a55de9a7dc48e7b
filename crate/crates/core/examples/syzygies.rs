//! Syzygies and cofactor lifting, the linear algebra behind logarithmic derivations.
use logdiv::{lift, parse_poly, syzygies, Budget, VariableContext};

fn main() -> logdiv::Result<()> {
    let budget = Budget::default();
    let ctx = VariableContext::parse_base("x,y")?;
    let h = parse_poly("x^2 - y^3", &ctx)?;
    let gens = vec![h.clone(), h.partial_derivative(0), h.partial_derivative(1)];
    let syz = syzygies(&gens, &budget)?;
    println!("syzygies of (h, h_x, h_y):");
    for r in &syz.relations {
        println!("  ({})", r.iter().map(|c| c.to_text()).collect::<Vec<_>>().join(", "));
    }
    println!("all relations verified: {}", syz.verify(&gens));
    let cof = lift(&h, &gens[1..], &budget)?.expect("h lies in its Jacobian ideal");
    println!("h = ({})*h_x + ({})*h_y", cof[0].to_text(), cof[1].to_text());
    Ok(())
}
