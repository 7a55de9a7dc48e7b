//! Exact polynomial arithmetic over Q: parsing, expansion, derivatives, gradings.
use logdiv::{parse_poly, MultiPoly, Rational, VariableContext};

fn main() -> logdiv::Result<()> {
    let ctx = VariableContext::parse_base("x1,x2,x3")?;
    let h = parse_poly("x1*x2*(x1+x2)*(x1+x3*x2)", &ctx)?;
    println!("h          = {}", h.to_text());
    println!("terms      = {}, degree = {:?}", h.len(), h.total_degree());
    for i in 0..ctx.len() {
        println!("d{}(h)      = {}", i + 1, h.partial_derivative(i).to_text());
    }
    let cusp = parse_poly("x1^2 - x2^3", &ctx)?;
    let w = [Rational::new(1, 2), Rational::new(1, 3), Rational::one()];
    println!("cusp weight = {:?}", cusp.weighted_homogeneous_degree(&w).map(|r| r.to_string()));
    let prod: MultiPoly = &h * &cusp;
    println!("h * cusp has {} terms; exact division recovers h: {}", prod.len(), prod.div_exact(&cusp) == Some(h));
    Ok(())
}
