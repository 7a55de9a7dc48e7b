//! Bernstein–Sato polynomials: elimination routes, a functional-equation oracle and the
//! Milnor algebra formula for quasi-homogeneous isolated singularities.

use std::collections::HashMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::budget::Budget;
use crate::classify::{is_differential_linear_type, DltMode};
use crate::divisor::{jacobian_ideal, FreeDivisor};
use crate::error::{Error, Result};
use crate::linalg::{solve, sparse_row, Echelon, SparseRow};
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::poly::MultiPoly;
use crate::rational::Rational;
use crate::unipoly::UniPoly;
use crate::weyl::{annihilator_fs, LeftIdealW, PowerAction, WeylContext, WeylElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    FreeElimination,
    GeneralAnnihilator,
    FunctionalEquation,
}

#[derive(Clone, Debug)]
pub struct BernsteinResult {
    pub b: UniPoly,
    pub reduced: UniPoly,
    pub roots: Vec<(Rational, u32)>,
    pub remainder: UniPoly,
    pub symmetry_shift2: bool,
    /// `(e, b̃(s) = ±b̃(-s-e))` when a shift was requested.
    pub yano: Option<(i64, bool)>,
    pub integer_root_bound_ok: bool,
    pub method: Method,
    pub certificate: Option<WeylElement>,
}

impl BernsteinResult {
    pub fn new(b: UniPoly, method: Method) -> Result<Self> {
        let b = b.monic();
        let s_plus_1 = UniPoly::parse("s+1")?;
        let (reduced, rem) = b.div_rem(&s_plus_1);
        if b.is_zero() || !rem.is_zero() {
            return Err(Error::Internal(format!("b(s) = {b} does not vanish at -1")));
        }
        let (roots, remainder) = b.rational_roots();
        Ok(BernsteinResult {
            symmetry_shift2: b.check_symmetry(2),
            integer_root_bound_ok: b.integer_root_bound(),
            reduced,
            roots,
            remainder,
            yano: None,
            method,
            certificate: None,
            b,
        })
    }

    /// Records `b̃(s) = ±b̃(-s-e)`.
    pub fn with_yano_shift(mut self, e: i64) -> Self {
        self.yano = Some((e, self.reduced.check_symmetry(e)));
        self
    }

    pub fn to_json(&self) -> Value {
        json!({
            "b": self.b.factored_text(),
            "b_expanded": self.b.to_string(),
            "b_reduced": self.reduced.factored_text(),
            "roots": self.roots.iter().map(|(r, m)| json!({"root": r.to_string(), "multiplicity": m})).collect::<Vec<_>>(),
            "remainder": self.remainder.to_string(),
            "symmetry_shift2": self.symmetry_shift2,
            "yano": self.yano.map(|(e, ok)| json!({"shift": e, "holds": ok})),
            "integer_root_bound": self.integer_root_bound_ok,
            "method": self.method,
            "certificate": self.certificate.as_ref().map(WeylElement::to_text),
        })
    }
}

/// `(D[s] Θ_{h,s} + D[s] h) ∩ Q[s]` for a divisor of differential linear type.
pub fn bs_free(fd: &FreeDivisor, budget: &Budget) -> Result<BernsteinResult> {
    let mode = if crate::classify::is_weakly_koszul(fd, budget)?.0 { DltMode::ViaEquivalence } else { DltMode::Direct };
    if !is_differential_linear_type(fd, mode, budget)?.0 {
        return Err(Error::Precondition("divisor is not of differential linear type".into()));
    }
    let ctx = WeylContext::standard(fd.context())?;
    let mut gens = fd.theta_generators_in(&ctx, &UniPoly::s())?.elements;
    gens.push(WeylElement::from_poly(&ctx, &fd.h)?);
    let b = LeftIdealW::new(&ctx, gens)?.eliminate_to_center(budget)?;
    nonzero(b).and_then(|b| BernsteinResult::new(b, Method::FreeElimination))
}

/// `(ann h^s + D[s] h) ∩ Q[s]`.
pub fn bs_general(h: &MultiPoly, budget: &Budget) -> Result<BernsteinResult> {
    if h.is_zero() {
        return Err(Error::Input("h must be nonzero".into()));
    }
    let ann = annihilator_fs(h, budget)?;
    let hw = WeylElement::from_poly(ann.context(), h)?;
    let b = ann.with(&[hw])?.eliminate_to_center(budget)?;
    nonzero(b).and_then(|b| BernsteinResult::new(b, Method::GeneralAnnihilator))
}

fn nonzero(b: UniPoly) -> Result<UniPoly> {
    if b.is_zero() {
        Err(Error::Internal("central intersection is zero".into()))
    } else {
        Ok(b)
    }
}

/// Exponent vectors of length `n` and total degree at most `max`, graded.
fn multi_indices(n: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0; n]];
    let mut frontier = out.clone();
    for _ in 0..max {
        let mut next = Vec::new();
        for v in &frontier {
            let last = v.iter().rposition(|&e| e > 0).unwrap_or(0);
            for i in last..n {
                let mut w = v.clone();
                w[i] += 1;
                next.push(w);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Weight vectors `(n, c)` with `n·m = c` on the support of `h`.
fn grading_lattice(h: &MultiPoly) -> Vec<(Vec<Rational>, Rational)> {
    let d = h.context().len();
    let mut ech = Echelon::new(d + 1);
    for (m, _) in h.terms() {
        let row = (0..d).map(|i| (i, Rational::from(i64::from(m.exponent(i))))).chain([(d, Rational::from(-1))]);
        ech.insert(sparse_row(row));
    }
    ech.nullspace().into_iter().map(|mut v| {
        let c = v.pop().expect("nonempty");
        (v, c)
    }).collect()
}

/// The bounded search space of a functional equation `b(s) h^s = P h^{s+1}`.
struct EquationSystem {
    ctx: WeylContext,
    /// `(x exponent a, ∂ exponent b, s power e)` per unknown.
    unknowns: Vec<(Vec<u32>, Vec<u32>, u32)>,
    /// Column of each unknown's contribution, keyed by row monomial.
    columns: Vec<MultiPoly>,
    /// `h^{K-1}`, the right-hand side multiplier.
    rhs_base: MultiPoly,
    s_cctx: usize,
}

impl EquationSystem {
    fn new(h: &MultiPoly, order_bound: u32, degree_bound: u32, s_degree: u32) -> Result<Self> {
        let base = h.context();
        let d = base.len();
        let ctx = WeylContext::standard(base)?;
        let cctx = ctx.coefficient_context();
        let s_cctx = d;
        let hc = h.embed(&cctx)?;
        let q = UniPoly::parse("s+1")?;
        let lattice = grading_lattice(h);
        let weight_ok = |a: &[u32], b: &[u32]| {
            lattice.iter().all(|(n, c)| {
                let mut w = c.clone();
                for i in 0..d {
                    w += &(&n[i] * &Rational::from(i64::from(a[i]) - i64::from(b[i])));
                }
                w.is_zero()
            })
        };
        // ∂^b h^{s+1} built one derivative at a time
        let mut sections: HashMap<Vec<u32>, PowerAction> = HashMap::new();
        let derivs = multi_indices(d, order_bound);
        sections.insert(vec![0; d], PowerAction { numerator: MultiPoly::one(&cctx), h_power: 0 });
        for b in &derivs {
            if sections.contains_key(b) {
                continue;
            }
            let i = b.iter().position(|&e| e > 0).expect("nonzero index");
            let mut prev = b.clone();
            prev[i] -= 1;
            let sec = WeylElement::d(&ctx, i).apply_to_section(h, &q, &sections[&prev])?;
            sections.insert(b.clone(), sec);
        }
        let k_max = sections.values().map(|s| s.h_power).max().unwrap_or(0).max(1);
        let mut unknowns = Vec::new();
        let mut columns = Vec::new();
        let xs = multi_indices(d, degree_bound);
        for b in &derivs {
            let sec = &sections[b];
            let lifted = &sec.numerator * &hc.pow(k_max - sec.h_power);
            for a in &xs {
                if !weight_ok(a, b) {
                    continue;
                }
                let mut exps = a.clone();
                exps.push(0);
                let xa = Monomial::from_exponents(&exps);
                for e in 0..=s_degree {
                    let mono = xa.mul(&Monomial::var(d + 1, s_cctx, e));
                    unknowns.push((a.clone(), b.clone(), e));
                    columns.push(lifted.mul_monomial(&mono));
                }
            }
        }
        Ok(EquationSystem { ctx, unknowns, columns, rhs_base: hc.pow(k_max - 1), s_cctx })
    }

    /// Solves `Σ c_j col_j - Σ β_i s^i h^{K-1} = rhs h^{K-1}` with `extra` free `β_i`.
    fn solve(&self, rhs: &UniPoly, extra: usize) -> Option<(Vec<Rational>, Vec<Rational>)> {
        let cctx = self.rhs_base.context();
        let n = self.columns.len();
        let mut rows: HashMap<Monomial, Vec<(usize, Rational)>> = HashMap::new();
        for (j, col) in self.columns.iter().enumerate() {
            for (m, c) in col.terms() {
                rows.entry(m.clone()).or_default().push((j, c.clone()));
            }
        }
        for i in 0..extra {
            let p = self.rhs_base.mul_monomial(&Monomial::var(cctx.len(), self.s_cctx, i as u32));
            for (m, c) in p.terms() {
                rows.entry(m.clone()).or_default().push((n + i, -c));
            }
        }
        let target = &rhs.to_multipoly(cctx, self.s_cctx) * &self.rhs_base;
        let mut keys: Vec<Monomial> = rows.keys().chain(target.terms().map(|(m, _)| m)).cloned().collect();
        keys.sort();
        keys.dedup();
        let system: Vec<SparseRow> =
            keys.iter().map(|m| sparse_row(rows.get(m).into_iter().flatten().cloned())).collect();
        let rhs_col: Vec<Rational> = keys.iter().map(|m| target.coefficient(m)).collect();
        let sol = solve(&system, &rhs_col, n + extra)?;
        Some((sol[..n].to_vec(), sol[n..].to_vec()))
    }

    fn operator(&self, coeffs: &[Rational]) -> WeylElement {
        let ctx = &self.ctx;
        let d = ctx.dim();
        let s = ctx.s_index().expect("standard context");
        WeylElement::from_terms(
            ctx,
            self.unknowns.iter().zip(coeffs).filter(|(_, c)| !c.is_zero()).map(|((a, b, e), c)| {
                let mut exps = vec![0u32; ctx.nvars()];
                for i in 0..d {
                    exps[ctx.x_index(i)] = a[i];
                    exps[ctx.d_index(i)] = b[i];
                }
                exps[s] = *e;
                (Monomial::from_exponents(&exps), c.clone())
            }),
        )
    }
}

/// `P h^{s+1} = b(s) h^s`, checked through the action on powers.
pub fn check_certificate(p: &WeylElement, h: &MultiPoly, b: &UniPoly) -> Result<bool> {
    let act = p.apply_to_power(h, &UniPoly::parse("s+1")?)?;
    let cctx = act.numerator.context().clone();
    let hc = h.embed(&cctx)?;
    let s = cctx.index_of("s").ok_or_else(|| Error::UnknownVariable("s".into()))?;
    // N h^{-k} h^{s+1} = b h^s  <=>  N h = b h^k
    let lhs = &act.numerator * &hc;
    let rhs = &b.to_multipoly(&cctx, s) * &hc.pow(act.h_power);
    Ok(lhs == rhs)
}

/// An operator `P` with `b(s) h^s = P(s) h^{s+1}` inside the given bounds, if any.
/// `None` is inconclusive.
pub fn functional_equation_oracle(
    h: &MultiPoly,
    candidate: &UniPoly,
    order_bound: u32,
    degree_bound: u32,
) -> Result<Option<WeylElement>> {
    let sdeg = candidate.degree().unwrap_or(0) as u32;
    let sys = EquationSystem::new(h, order_bound, degree_bound, sdeg)?;
    let Some((coeffs, _)) = sys.solve(candidate, 0) else {
        return Ok(None);
    };
    let p = sys.operator(&coeffs);
    if !check_certificate(&p, h, candidate)? {
        return Err(Error::Internal("functional equation certificate failed to re-verify".into()));
    }
    Ok(Some(p))
}

/// Default search bounds: order `deg h + 1`, coefficient degree `2 deg h`.
pub fn default_bounds(h: &MultiPoly) -> (u32, u32) {
    let deg = h.total_degree().unwrap_or(0);
    (deg + 1, 2 * deg)
}

/// The monic `b` of least degree `<= max_degree` admitting a certificate within the bounds.
pub fn minimal_certified_b(
    h: &MultiPoly,
    max_degree: u32,
    order_bound: u32,
    degree_bound: u32,
) -> Result<Option<BernsteinResult>> {
    let sys = EquationSystem::new(h, order_bound, degree_bound, max_degree)?;
    for deg in 1..=max_degree {
        // monic s^deg on the right, lower coefficients free
        let lead = UniPoly::s().pow(deg);
        let trimmed = sys.restricted_s_degree(deg);
        if let Some((coeffs, betas)) = trimmed.solve(&lead, deg as usize) {
            let mut bc = betas;
            bc.push(Rational::one());
            let b = UniPoly::new(bc);
            let p = trimmed.operator(&coeffs);
            if !check_certificate(&p, h, &b)? {
                return Err(Error::Internal("functional equation certificate failed to re-verify".into()));
            }
            let mut res = BernsteinResult::new(b, Method::FunctionalEquation)?;
            res.certificate = Some(p);
            return Ok(Some(res));
        }
    }
    Ok(None)
}

impl EquationSystem {
    fn restricted_s_degree(&self, max: u32) -> EquationSystem {
        let keep: Vec<usize> = (0..self.unknowns.len()).filter(|&j| self.unknowns[j].2 <= max).collect();
        EquationSystem {
            ctx: self.ctx.clone(),
            unknowns: keep.iter().map(|&j| self.unknowns[j].clone()).collect(),
            columns: keep.iter().map(|&j| self.columns[j].clone()).collect(),
            rhs_base: self.rhs_base.clone(),
            s_cctx: self.s_cctx,
        }
    }
}

/// Roots of `b̃` for a quasi-homogeneous isolated singularity: `-(w(m) + Σ w_i)` over a
/// monomial basis of the Milnor algebra, weights scaled so that `h` has weight 1.
pub fn qh_milnor_oracle(h: &MultiPoly, weights: &[Rational], budget: &Budget) -> Result<Vec<Rational>> {
    let d = h.context().len();
    if weights.len() != d || weights.iter().any(|w| *w <= Rational::zero()) {
        return Err(Error::Input("one positive weight per variable expected".into()));
    }
    let deg = h
        .weighted_homogeneous_degree(weights)
        .ok_or_else(|| Error::NotHomogeneous(format!("{} is not weighted homogeneous", h.to_text())))?;
    let w: Vec<Rational> = weights.iter().map(|x| x / &deg).collect();
    let gb = jacobian_ideal(h)?.groebner(&MonomialOrder::degrevlex(d), budget)?;
    let leads = gb.leading_monomials();
    let standard = |m: &Monomial| !leads.iter().any(|l| l.divides(m));
    // each variable needs a pure power among the leading monomials
    for i in 0..d {
        if !leads.iter().any(|l| l.exponent(i) > 0 && l.support().all(|j| j == i)) {
            return Err(Error::Precondition("Milnor algebra is infinite dimensional".into()));
        }
    }
    let mut basis = vec![Monomial::one(d)];
    let mut k = 0;
    while k < basis.len() {
        let m = basis[k].clone();
        for i in 0..d {
            let next = m.mul(&Monomial::var(d, i, 1));
            if standard(&next) && !basis.contains(&next) {
                basis.push(next);
            }
        }
        k += 1;
    }
    let sum: Rational = w.iter().fold(Rational::zero(), |acc, x| &acc + x);
    let mut roots: Vec<Rational> = basis
        .iter()
        .map(|m| {
            let wm = (0..d).fold(Rational::zero(), |acc, i| &acc + &(&w[i] * &Rational::from(i64::from(m.exponent(i)))));
            -&(&wm + &sum)
        })
        .collect();
    roots.sort();
    Ok(roots)
}

/// `Π (s - r)` over the distinct roots.
pub fn reduced_from_roots(roots: &[Rational]) -> UniPoly {
    let mut distinct = roots.to_vec();
    distinct.dedup();
    distinct.iter().fold(UniPoly::one(), |acc, r| &acc * &UniPoly::linear(r))
}
