//! Logarithmic derivations, Saito's criterion and the generator sets `Θ_{h,q(s)}`.

use serde::Serialize;

use crate::budget::Budget;
use crate::context::VariableContext;
use crate::error::{Error, Result};
use crate::ideal::{syzygies, Ideal, Submodule};
use crate::poly::MultiPoly;
use crate::rational::Rational;
use crate::unipoly::UniPoly;
use crate::weyl::{WeylContext, WeylElement};

/// `δ = Σ a_i d_i` with `δ(h) = α h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogDerivation {
    pub coeffs: Vec<MultiPoly>,
    pub alpha: MultiPoly,
}

impl LogDerivation {
    pub fn new(coeffs: Vec<MultiPoly>, alpha: MultiPoly) -> Self {
        LogDerivation { coeffs, alpha }
    }

    pub fn context(&self) -> &VariableContext {
        self.alpha.context()
    }

    /// `δ(f) = Σ a_i ∂f/∂x_i`.
    pub fn apply(&self, f: &MultiPoly) -> MultiPoly {
        self.coeffs
            .iter()
            .enumerate()
            .fold(MultiPoly::zero(f.context()), |acc, (i, a)| &acc + &(a * &f.partial_derivative(i)))
    }

    /// `Σ a_i h_i - α h = 0`.
    pub fn is_log_for(&self, h: &MultiPoly) -> bool {
        (&self.apply(h) - &(&self.alpha * h)).is_zero()
    }

    pub fn divergence(&self) -> MultiPoly {
        self.coeffs
            .iter()
            .enumerate()
            .fold(MultiPoly::zero(self.context()), |acc, (i, a)| &acc + &a.partial_derivative(i))
    }

    pub fn vanishes_at_origin(&self) -> bool {
        self.coeffs.iter().all(|a| a.eval_origin().is_zero())
    }

    /// Coefficients of the vector field `[self, other]`.
    pub fn bracket(&self, other: &LogDerivation) -> Vec<MultiPoly> {
        (0..self.coeffs.len())
            .map(|m| &self.apply(&other.coeffs[m]) - &other.apply(&self.coeffs[m]))
            .collect()
    }

    /// `Σ c_k δ_k`.
    pub fn combine(cs: &[MultiPoly], ders: &[LogDerivation]) -> LogDerivation {
        let ctx = ders[0].context().clone();
        let d = ders[0].coeffs.len();
        let mut coeffs = vec![MultiPoly::zero(&ctx); d];
        let mut alpha = MultiPoly::zero(&ctx);
        for (c, der) in cs.iter().zip(ders) {
            for (acc, a) in coeffs.iter_mut().zip(&der.coeffs) {
                *acc = &*acc + &(c * a);
            }
            alpha = &alpha + &(c * &der.alpha);
        }
        LogDerivation { coeffs, alpha }
    }

    pub fn scale(&self, c: &Rational) -> LogDerivation {
        LogDerivation { coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect(), alpha: self.alpha.scale(c) }
    }

    /// The vector field as an operator.
    pub fn to_weyl(&self, ctx: &WeylContext) -> Result<WeylElement> {
        WeylElement::vector_field(ctx, &self.coeffs)
    }

    /// `δ - α q(s)`.
    pub fn theta(&self, ctx: &WeylContext, q: &UniPoly) -> Result<WeylElement> {
        let s = ctx.s_index().ok_or_else(|| Error::Input("context has no central s".into()))?;
        let cctx = ctx.coefficient_context();
        let alpha = WeylElement::from_poly(ctx, &self.alpha)?;
        let qw = WeylElement::from_poly(ctx, &q.to_multipoly(&cctx, s))?;
        Ok(&self.to_weyl(ctx)? - &(&alpha * &qw))
    }

    pub fn to_text(&self) -> String {
        match WeylContext::new(self.context(), &[], None) {
            Ok(ctx) => self.to_weyl(&ctx).map(|w| w.to_text()).unwrap_or_default(),
            Err(_) => String::new(),
        }
    }
}

/// The ideal `(h, h_1, ..., h_d)`.
pub fn jacobian_ideal(h: &MultiPoly) -> Result<Ideal> {
    let ctx = h.context();
    let mut gens = vec![h.clone()];
    gens.extend((0..ctx.len()).map(|i| h.partial_derivative(i)));
    Ideal::new(ctx, gens)
}

/// Squarefreeness: the singular locus `V(h, ∇h)` has codimension at least 2.
pub fn is_reduced(h: &MultiPoly, budget: &Budget) -> Result<bool> {
    let d = h.context().len() as i64;
    Ok(jacobian_ideal(h)?.krull_dimension(budget)? <= d - 2)
}

/// Rejects inputs that are not reduced divisor germs at the origin.
pub fn check_divisor(h: &MultiPoly, budget: &Budget) -> Result<()> {
    if h.is_zero() || h.is_constant() {
        return Err(Error::Input("h must be a non-constant polynomial".into()));
    }
    if !h.eval_origin().is_zero() {
        return Err(Error::NotAtOrigin(h.to_text()));
    }
    if !is_reduced(h, budget)? {
        return Err(Error::NotReduced(h.to_text()));
    }
    Ok(())
}

/// Generators of `Der(log h)` from the syzygies of `(h, h_1, ..., h_d)`, redundant ones removed.
pub fn log_derivations(h: &MultiPoly, budget: &Budget) -> Result<Vec<LogDerivation>> {
    if h.is_zero() {
        return Err(Error::Input("h must be nonzero".into()));
    }
    let ctx = h.context().clone();
    let d = ctx.len();
    let gens: Vec<MultiPoly> = jacobian_ideal(h)?.generators().to_vec();
    if gens.len() != d + 1 {
        // some partial derivative vanishes identically
        return log_derivations_with_zero_partials(h, budget);
    }
    let syz = syzygies(&gens, budget)?;
    let mut out: Vec<LogDerivation> = syz
        .relations
        .into_iter()
        .map(|r| LogDerivation { alpha: -&r[0], coeffs: r[1..].to_vec() })
        .filter(|der| der.coeffs.iter().any(|a| !a.is_zero()))
        .map(positive)
        .collect();
    minimize(&ctx, &mut out, budget)?;
    Ok(out)
}

/// Sign convention: the first nonzero coefficient has a positive leading coefficient.
fn positive(der: LogDerivation) -> LogDerivation {
    let first = der.coeffs.iter().find(|a| !a.is_zero()).expect("nonzero derivation");
    let order = crate::order::MonomialOrder::degrevlex(first.context().len());
    match first.leading_term(&order) {
        Some((_, c)) if c.is_negative() => der.scale(&Rational::from(-1)),
        _ => der,
    }
}

/// Variables not occurring in `h` contribute their own derivative to `Der(log h)`.
fn log_derivations_with_zero_partials(h: &MultiPoly, budget: &Budget) -> Result<Vec<LogDerivation>> {
    let ctx = h.context().clone();
    let d = ctx.len();
    let live: Vec<usize> = (0..d).filter(|&i| !h.partial_derivative(i).is_zero()).collect();
    let mut gens = vec![h.clone()];
    gens.extend(live.iter().map(|&i| h.partial_derivative(i)));
    let syz = syzygies(&gens, budget)?;
    let mut out = Vec::new();
    for r in syz.relations {
        let mut coeffs = vec![MultiPoly::zero(&ctx); d];
        for (k, &i) in live.iter().enumerate() {
            coeffs[i] = r[k + 1].clone();
        }
        if coeffs.iter().any(|a| !a.is_zero()) {
            out.push(positive(LogDerivation { alpha: -&r[0], coeffs }));
        }
    }
    for i in (0..d).filter(|i| !live.contains(i)) {
        let mut coeffs = vec![MultiPoly::zero(&ctx); d];
        coeffs[i] = MultiPoly::one(&ctx);
        out.push(LogDerivation { alpha: MultiPoly::zero(&ctx), coeffs });
    }
    minimize(&ctx, &mut out, budget)?;
    Ok(out)
}

/// Drops generators lying in the module spanned by the others, last first.
fn minimize(ctx: &VariableContext, ders: &mut Vec<LogDerivation>, budget: &Budget) -> Result<()> {
    let mut k = ders.len();
    while k > 0 {
        k -= 1;
        if ders.len() <= 1 {
            break;
        }
        let others: Vec<Vec<MultiPoly>> =
            ders.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, der)| der.coeffs.clone()).collect();
        let rank = ders[k].coeffs.len();
        if Submodule::new(ctx, rank, &others, budget)?.contains(&ders[k].coeffs, budget)? {
            ders.remove(k);
        }
    }
    Ok(())
}

/// Determinant by cofactor expansion along the first row.
pub fn determinant(rows: &[Vec<MultiPoly>], ctx: &VariableContext) -> MultiPoly {
    match rows.len() {
        0 => MultiPoly::one(ctx),
        1 => rows[0][0].clone(),
        n => {
            let mut acc = MultiPoly::zero(ctx);
            for j in 0..n {
                if rows[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<MultiPoly>> = rows[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, p)| p.clone()).collect())
                    .collect();
                let term = &rows[0][j] * &determinant(&minor, ctx);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

/// Transposed cofactor matrix, so that `adj(A) * A = det(A) * I`.
pub fn adjugate(rows: &[Vec<MultiPoly>], ctx: &VariableContext) -> Vec<Vec<MultiPoly>> {
    let n = rows.len();
    if n == 1 {
        return vec![vec![MultiPoly::one(ctx)]];
    }
    let mut adj = vec![vec![MultiPoly::zero(ctx); n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<MultiPoly>> = rows
                .iter()
                .enumerate()
                .filter(|(r, _)| *r != i)
                .map(|(_, r)| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, p)| p.clone()).collect())
                .collect();
            let m = determinant(&minor, ctx);
            adj[j][i] = if (i + j) % 2 == 0 { m } else { -&m };
        }
    }
    adj
}

/// How far a Saito certificate reaches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Freeness {
    /// `det = c h` with `c` a nonzero constant.
    Global,
    /// `det = c(x) h` with `c(0) != 0`: free at 0, not globally certified.
    AtOrigin,
}

/// A reduced `h` together with a Saito-certified basis of `Der(log h)`.
#[derive(Clone, Debug)]
pub struct FreeDivisor {
    pub h: MultiPoly,
    pub basis: Vec<LogDerivation>,
    pub saito_det: MultiPoly,
    pub saito_cofactor: MultiPoly,
    pub freeness: Freeness,
    pub euler_normalized: bool,
}

impl FreeDivisor {
    pub fn context(&self) -> &VariableContext {
        self.h.context()
    }

    pub fn dimension(&self) -> usize {
        self.h.context().len()
    }

    /// Coefficient matrix, one row per basis derivation.
    pub fn matrix(&self) -> Vec<Vec<MultiPoly>> {
        self.basis.iter().map(|b| b.coeffs.clone()).collect()
    }

    /// Whether every given derivation is a `Q[x]`-combination of the basis.
    pub fn spans(&self, ders: &[LogDerivation], budget: &Budget) -> Result<bool> {
        let rows: Vec<Vec<MultiPoly>> = self.matrix();
        let m = Submodule::new(self.context(), self.dimension(), &rows, budget)?;
        for der in ders {
            if !m.contains(&der.coeffs, budget)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `Θ_{h,q(s)}` in `D[s]` over the divisor's variables.
    pub fn theta_generators(&self, q: &UniPoly) -> Result<ThetaGenerators> {
        let ctx = WeylContext::standard(self.context())?;
        self.theta_generators_in(&ctx, q)
    }

    pub fn theta_generators_in(&self, ctx: &WeylContext, q: &UniPoly) -> Result<ThetaGenerators> {
        let elements = self.basis.iter().map(|b| b.theta(ctx, q)).collect::<Result<Vec<_>>>()?;
        Ok(ThetaGenerators { q: q.clone(), elements })
    }
}

/// The operators `δ_i - α_i q(s)`.
#[derive(Clone, Debug)]
pub struct ThetaGenerators {
    pub q: UniPoly,
    pub elements: Vec<WeylElement>,
}

/// Saito's criterion for `d` candidate derivations.
pub fn saito_check(h: &MultiPoly, cand: &[LogDerivation]) -> Result<FreeDivisor> {
    let ctx = h.context();
    let d = ctx.len();
    if cand.len() != d {
        return Err(Error::Input(format!("Saito's criterion needs {d} derivations, got {}", cand.len())));
    }
    let rows: Vec<Vec<MultiPoly>> = cand.iter().map(|c| c.coeffs.clone()).collect();
    let det = determinant(&rows, ctx);
    let fail = |why: &str| Error::NotFree(format!("det = {} {why}", det.to_text()));
    let cof = det.div_exact(h).ok_or_else(|| fail("is not a multiple of h"))?;
    for c in cand {
        if !c.is_log_for(h) {
            return Err(Error::Input(format!("{} is not logarithmic for h", c.to_text())));
        }
    }
    let freeness = if cof.is_constant() && !cof.is_zero() {
        Freeness::Global
    } else if !cof.eval_origin().is_zero() {
        Freeness::AtOrigin
    } else {
        return Err(fail("vanishes to higher order at 0"));
    };
    Ok(FreeDivisor {
        h: h.clone(),
        basis: cand.to_vec(),
        saito_det: det,
        saito_cofactor: cof,
        freeness,
        euler_normalized: false,
    })
}

/// Log derivations, then the first `d`-subset passing Saito's criterion (global before at-0),
/// then the Euler normal form when available.
pub fn certify(h: &MultiPoly, budget: &Budget) -> Result<FreeDivisor> {
    check_divisor(h, budget)?;
    let gens = log_derivations(h, budget)?;
    let d = h.context().len();
    if gens.len() < d {
        return Err(Error::NotFree(format!("Der(log h) has only {} generators", gens.len())));
    }
    let mut at_origin: Option<FreeDivisor> = None;
    let mut last_err = None;
    for subset in subsets(gens.len(), d) {
        let cand: Vec<LogDerivation> = subset.iter().map(|&i| gens[i].clone()).collect();
        match saito_check(h, &cand) {
            Ok(fd) if fd.freeness == Freeness::Global => return Ok(euler_normalize(&fd)),
            Ok(fd) => {
                at_origin.get_or_insert(fd);
            }
            Err(e) => last_err = Some(e),
        }
    }
    match at_origin {
        Some(fd) => Ok(euler_normalize(&fd)),
        None => Err(last_err.unwrap_or_else(|| Error::NotFree("no candidate basis".into()))),
    }
}

/// `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Rebases to `δ_1(h) = ... = δ_{d-1}(h) = 0`, `δ_d(h) = h` when some eigenvalue is a
/// nonzero constant; otherwise returns the input unchanged.
pub fn euler_normalize(fd: &FreeDivisor) -> FreeDivisor {
    let Some(j) = fd.basis.iter().position(|b| b.alpha.is_constant() && !b.alpha.is_zero()) else {
        return fd.clone();
    };
    let euler = fd.basis[j].scale(&fd.basis[j].alpha.constant_term().recip());
    let mut basis: Vec<LogDerivation> = Vec::with_capacity(fd.basis.len());
    for (i, b) in fd.basis.iter().enumerate() {
        if i != j {
            let a = b.alpha.clone();
            let shifted = LogDerivation::combine(&[MultiPoly::one(fd.context()), -&a], &[b.clone(), euler.clone()]);
            basis.push(shifted);
        }
    }
    basis.push(euler);
    let rows: Vec<Vec<MultiPoly>> = basis.iter().map(|b| b.coeffs.clone()).collect();
    let det = determinant(&rows, fd.context());
    let cofactor = det.div_exact(&fd.h).expect("unimodular change of a certified basis");
    FreeDivisor {
        h: fd.h.clone(),
        basis,
        saito_det: det,
        saito_cofactor: cofactor,
        freeness: fd.freeness,
        euler_normalized: true,
    }
}
