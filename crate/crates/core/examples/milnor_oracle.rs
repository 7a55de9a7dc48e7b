//! Roots of b~(s) for quasi-homogeneous isolated singularities from the Milnor algebra.
use logdiv::bernstein::{qh_milnor_oracle, reduced_from_roots};
use logdiv::{parse_poly, Budget, Rational, VariableContext};

fn main() -> logdiv::Result<()> {
    let budget = Budget::default();
    for (expr, vars, w) in [
        ("x^2 - y^3", "x,y", vec![Rational::new(1, 2), Rational::new(1, 3)]),
        ("x^3 + y^3 + z^3", "x,y,z", vec![Rational::new(1, 3); 3]),
    ] {
        let ctx = VariableContext::parse_base(vars)?;
        let roots = qh_milnor_oracle(&parse_poly(expr, &ctx)?, &w, &budget)?;
        let bt = reduced_from_roots(&roots);
        println!("{expr}: roots {:?}", roots.iter().map(|r| r.to_string()).collect::<Vec<_>>());
        println!("  b~ = {}, b~(s) = ±b~(-s-{}): {}", bt.factored_text(), ctx.len(), bt.check_symmetry(ctx.len() as i64));
    }
    Ok(())
}
