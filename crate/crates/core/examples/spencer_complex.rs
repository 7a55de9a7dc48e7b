//! The logarithmic Spencer complex of Θ_{h,s} and its differentials.
use logdiv::spencer::{build_spencer, check_complex, structure_constants};
use logdiv::{certify, parse_poly, Budget, UniPoly, VariableContext};

fn main() -> logdiv::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let expr = args.first().map(String::as_str).unwrap_or("x^2 - y^3");
    let vars = args.get(1).map(String::as_str).unwrap_or("x,y");
    let fd = certify(&parse_poly(expr, &VariableContext::parse_base(vars)?)?, &Budget::default())?;
    let c = structure_constants(&fd)?;
    for (i, row) in c.iter().enumerate() {
        for (j, cij) in row.iter().enumerate().filter(|(j, _)| *j > i) {
            let texts: Vec<String> = cij.iter().map(|p| p.to_text()).collect();
            println!("[δ{}, δ{}] coefficients: ({})", i + 1, j + 1, texts.join(", "));
        }
    }
    let sp = build_spencer(&fd, &UniPoly::s())?;
    println!("ranks {:?}", sp.ranks());
    for r in 1..=sp.dimension() {
        println!("ε^-{r}:");
        for row in sp.differential(r).to_text_rows() {
            println!("  [{}]", row.join(", "));
        }
    }
    println!("ε∘ε = 0: {}", check_complex(&sp)?);
    Ok(())
}
