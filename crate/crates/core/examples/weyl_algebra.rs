//! Operators in D[s]: normal-ordered products, transposition, symbols and action on h^s.
use logdiv::{parse_poly, UniPoly, VariableContext, WeylContext, WeylElement};

fn main() -> logdiv::Result<()> {
    let base = VariableContext::parse_base("x,y")?;
    let ctx = WeylContext::standard(&base)?;
    let w = |s: &str| WeylElement::parse(s, &ctx);
    let p = w("d1")?.checked_mul(&w("x")?)?;
    println!("d1 * x       = {}", p.to_text());
    println!("[d1, x^2]    = {}", w("d1")?.commutator(&w("x^2")?).to_text());
    let op = w("x*d1 - s")?;
    println!("transpose of {} = {}", op.to_text(), op.transpose().to_text());
    println!("symbol of d1^2 + s*d1 + x = {}", w("d1^2 + s*d1 + x")?.total_symbol()?.to_text());
    let h = parse_poly("x^2 - y^3", &base)?;
    let euler = w("1/2*x*d1 + 1/3*y*d2 - s")?;
    println!("(δ_E - s) h^s = 0: {}", euler.apply_to_power(&h, &UniPoly::s())?.is_zero());
    let act = w("d1")?.apply_to_power(&h, &UniPoly::parse("s+1")?)?;
    println!("d1 h^(s+1) = ({}) h^(s+1-{})", act.numerator.to_text(), act.h_power);
    Ok(())
}
