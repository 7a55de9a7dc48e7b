//! Commutative Gröbner bases: membership, elimination, intersections and dimension.
use logdiv::{parse_poly, Budget, Ideal, MonomialOrder, VariableContext};

fn main() -> logdiv::Result<()> {
    let budget = Budget::default();
    let ctx = VariableContext::parse_base("x,y,t")?;
    let p = |s: &str| parse_poly(s, &ctx);
    let graph = Ideal::new(&ctx, vec![p("x - t^2")?, p("y - t^3")?])?;
    let gb = graph.groebner(&MonomialOrder::lex(3), &budget)?;
    println!("lex basis of (x - t^2, y - t^3):");
    for g in gb.polys() {
        println!("  {}", g.to_text());
    }
    let curve = graph.eliminate(&[2], &budget)?;
    println!("eliminating t: {:?}", curve.generators().iter().map(|g| g.to_text()).collect::<Vec<_>>());
    let i = Ideal::new(&ctx, vec![p("x")?])?;
    let j = Ideal::new(&ctx, vec![p("y")?])?;
    let meet = i.intersect(&j, &budget)?;
    println!("(x) ∩ (y) = {:?}", meet.generators().iter().map(|g| g.to_text()).collect::<Vec<_>>());
    println!("dim Q[x,y,t]/(x - t^2, y - t^3) = {}", graph.krull_dimension(&budget)?);
    Ok(())
}
