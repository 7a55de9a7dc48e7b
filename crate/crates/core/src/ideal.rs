//! Ideals of commutative polynomial rings over the rationals.
//!
//! Everything here reduces to the Buchberger engine: membership and equality by
//! normal forms, elimination with block orders, syzygies and cofactor lifting
//! through a module basis computed in position-over-term order, and Krull
//! dimension from maximal independent sets of the leading-term ideal.

use std::sync::OnceLock;

use crate::budget::Budget;
use crate::context::{Role, VariableContext};
use crate::engine::{self, Poly, Ring};
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::order::{MonomialOrder, OrderKind};
use crate::poly::MultiPoly;
use crate::rational::Rational;

/// A finitely generated ideal, with its degrevlex basis cached on first use.
pub struct Ideal {
    ctx: VariableContext,
    generators: Vec<MultiPoly>,
    cached: OnceLock<GroebnerBasis>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let cached = OnceLock::new();
        if let Some(gb) = self.cached.get() {
            let _ = cached.set(gb.clone());
        }
        Ideal { ctx: self.ctx.clone(), generators: self.generators.clone(), cached }
    }
}

impl std::fmt::Debug for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.generators.iter().map(|g| g.to_text())).finish()
    }
}

/// A reduced Gröbner basis together with the order it was computed for.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    polys: Vec<MultiPoly>,
}

impl GroebnerBasis {
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn polys(&self) -> &[MultiPoly] {
        &self.polys
    }

    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].is_constant()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys.iter().filter_map(|p| p.leading_term(&self.order).map(|t| t.0)).collect()
    }

    /// Normal form of `f`.
    pub fn reduce(&self, f: &MultiPoly, budget: &Budget) -> Result<MultiPoly> {
        let ring = Ring::commutative(self.order.clone());
        let basis: Vec<Poly> = self.polys.iter().map(|p| to_engine(p, &ring)).collect();
        let refs: Vec<&Poly> = basis.iter().collect();
        let r = engine::normal_form(&ring, &to_engine(f, &ring), &refs, budget)?;
        Ok(from_engine(&r, f.context()))
    }

    pub fn contains(&self, f: &MultiPoly, budget: &Budget) -> Result<bool> {
        Ok(self.reduce(f, budget)?.is_zero())
    }
}

pub(crate) fn to_engine(p: &MultiPoly, ring: &Ring) -> Poly {
    Poly::from_terms(ring, p.terms().map(|(m, c)| (m.clone(), c.clone())).collect())
}

pub(crate) fn from_engine(p: &Poly, ctx: &VariableContext) -> MultiPoly {
    MultiPoly::from_terms(ctx, p.terms.iter().cloned())
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(ctx: &VariableContext, generators: Vec<MultiPoly>) -> Result<Self> {
        for g in &generators {
            g.context().check(ctx)?;
        }
        Ok(Ideal {
            ctx: ctx.clone(),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
            cached: OnceLock::new(),
        })
    }

    pub fn from_generators(generators: Vec<MultiPoly>) -> Result<Self> {
        let ctx = generators
            .first()
            .map(|g| g.context().clone())
            .ok_or_else(|| Error::Input("an ideal needs at least one generator to fix its context".into()))?;
        Self::new(&ctx, generators)
    }

    pub fn context(&self) -> &VariableContext {
        &self.ctx
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// Reduced Gröbner basis for `order`.
    pub fn groebner(&self, order: &MonomialOrder, budget: &Budget) -> Result<GroebnerBasis> {
        if order.nvars() != self.ctx.len() {
            return Err(Error::InadmissibleOrder("order and context sizes differ".into()));
        }
        let default = MonomialOrder::degrevlex(self.ctx.len());
        if *order == default {
            if let Some(gb) = self.cached.get() {
                return Ok(gb.clone());
            }
        }
        let ring = Ring::commutative(order.clone());
        let gens: Vec<Poly> = self.generators.iter().map(|g| to_engine(g, &ring)).collect();
        let gb = engine::groebner(&ring, &gens, budget)?;
        let out = GroebnerBasis {
            order: order.clone(),
            polys: gb.iter().map(|p| from_engine(p, &self.ctx)).collect(),
        };
        if *order == default {
            let _ = self.cached.set(out.clone());
        }
        Ok(out)
    }

    /// Degrevlex basis, cached.
    pub fn gb(&self, budget: &Budget) -> Result<GroebnerBasis> {
        self.groebner(&MonomialOrder::degrevlex(self.ctx.len()), budget)
    }

    pub fn contains(&self, f: &MultiPoly, budget: &Budget) -> Result<bool> {
        f.context().check(&self.ctx)?;
        if f.is_zero() {
            return Ok(true);
        }
        self.gb(budget)?.contains(f, budget)
    }

    pub fn contains_ideal(&self, other: &Ideal, budget: &Budget) -> Result<bool> {
        other.ctx.check(&self.ctx)?;
        let gb = self.gb(budget)?;
        for g in &other.generators {
            if !gb.contains(g, budget)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_unit(&self, budget: &Budget) -> Result<bool> {
        Ok(self.gb(budget)?.is_unit())
    }

    /// `I ∩ Q[vars not in drop]`, expressed in the same context.
    pub fn eliminate(&self, drop: &[usize], budget: &Budget) -> Result<Ideal> {
        if drop.iter().any(|&i| i >= self.ctx.len()) {
            return Err(Error::Input("elimination variable out of range".into()));
        }
        let order = MonomialOrder::elimination(self.ctx.len(), drop);
        let gb = self.groebner(&order, budget)?;
        let kept = gb
            .polys
            .into_iter()
            .filter(|p| p.terms().all(|(m, _)| drop.iter().all(|&i| m.exponent(i) == 0)))
            .collect();
        Ideal::new(&self.ctx, kept)
    }

    /// Moves the ideal to `target`, matching variables by name.
    pub fn embed(&self, target: &VariableContext) -> Result<Ideal> {
        let gens = self.generators.iter().map(|g| g.embed(target)).collect::<Result<Vec<_>>>()?;
        Ideal::new(target, gens)
    }

    /// `I ∩ J` via `t*I + (1-t)*J`.
    pub fn intersect(&self, other: &Ideal, budget: &Budget) -> Result<Ideal> {
        other.ctx.check(&self.ctx)?;
        if self.is_zero() || other.is_zero() {
            return Ideal::new(&self.ctx, vec![]);
        }
        let tname = self.ctx.fresh_name("t");
        let big = self.ctx.extend(&[(tname.as_str(), Role::Auxiliary)])?;
        let t = MultiPoly::var(&big, self.ctx.len());
        let one_minus_t = &MultiPoly::one(&big) - &t;
        let mut gens = Vec::new();
        for g in &self.generators {
            gens.push(&t * &g.embed(&big)?);
        }
        for g in &other.generators {
            gens.push(&one_minus_t * &g.embed(&big)?);
        }
        let elim = Ideal::new(&big, gens)?.eliminate(&[self.ctx.len()], budget)?;
        elim.embed(&self.ctx)
    }

    /// `(I : J) = { f | f*J ⊆ I }`.
    pub fn quotient(&self, other: &Ideal, budget: &Budget) -> Result<Ideal> {
        other.ctx.check(&self.ctx)?;
        let mut acc: Option<Ideal> = None;
        for g in &other.generators {
            let principal = Ideal::new(&self.ctx, vec![g.clone()])?;
            let inter = self.intersect(&principal, budget)?;
            let gens = inter
                .generators
                .iter()
                .map(|p| {
                    p.div_exact(g)
                        .ok_or_else(|| Error::Internal("intersection element not divisible".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            let q = Ideal::new(&self.ctx, gens)?;
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersect(&q, budget)?,
            });
        }
        match acc {
            Some(a) => Ok(a),
            None => Ideal::new(&self.ctx, vec![MultiPoly::one(&self.ctx)]),
        }
    }

    /// Iterated quotient `I : J^k` until it stabilises, at most `max_steps` times.
    pub fn saturate(&self, other: &Ideal, max_steps: usize, budget: &Budget) -> Result<Ideal> {
        let mut cur = self.clone();
        for _ in 0..max_steps {
            let next = cur.quotient(other, budget)?;
            if cur.contains_ideal(&next, budget)? {
                return Ok(cur);
            }
            cur = next;
        }
        Err(Error::Budget(format!("saturation did not stabilise in {max_steps} steps")))
    }

    /// Krull dimension of the quotient ring; `-1` for the unit ideal.
    pub fn krull_dimension(&self, budget: &Budget) -> Result<i64> {
        let gb = self.gb(budget)?;
        if gb.is_unit() {
            return Ok(-1);
        }
        Ok(max_independent_set(&gb.leading_monomials(), self.ctx.len()) as i64)
    }
}

/// Size of a largest set of variables containing the support of no given monomial.
pub(crate) fn max_independent_set(monomials: &[Monomial], n: usize) -> usize {
    let supports: Vec<u64> = monomials
        .iter()
        .map(|m| m.support().fold(0u64, |acc, i| acc | (1 << i)))
        .collect();
    let mut best = 0;
    // grow sets greedily in a depth first search, pruning by size
    fn dfs(next: usize, n: usize, set: u64, size: usize, supports: &[u64], best: &mut usize) {
        if size + (n - next) <= *best {
            return;
        }
        if next == n {
            *best = size;
            return;
        }
        let with = set | (1 << next);
        if supports.iter().all(|&s| s & !with != 0) {
            dfs(next + 1, n, with, size + 1, supports, best);
        }
        dfs(next + 1, n, set, size, supports, best);
    }
    dfs(0, n, 0, 0, &supports, &mut best);
    best
}

/// Generators of the syzygy module of a list of polynomials.
#[derive(Clone, Debug)]
pub struct SyzygyBasis {
    pub relations: Vec<Vec<MultiPoly>>,
}

impl SyzygyBasis {
    /// Checks `Σ r_i g_i = 0` for every relation.
    pub fn verify(&self, gens: &[MultiPoly]) -> bool {
        self.relations.iter().all(|r| {
            r.len() == gens.len()
                && r.iter()
                    .zip(gens)
                    .fold(MultiPoly::zero(gens[0].context()), |acc, (a, g)| &acc + &(a * g))
                    .is_zero()
        })
    }
}

/// Module basis of the rows `g_i*e_0 + e_i`, with `e_0` above every other term.
struct LiftData {
    ring: Ring,
    n: usize,
    m: usize,
    basis: Vec<Poly>,
}

fn lift_data(gens: &[MultiPoly], budget: &Budget) -> Result<LiftData> {
    let ctx = gens[0].context();
    for g in gens {
        g.context().check(ctx)?;
    }
    let n = ctx.len();
    let m = gens.len();
    let total = n + m + 1;
    let comps: Vec<usize> = (n..total).collect();
    // only e_0 has to be eliminated; a degree order on the rest keeps coefficients small
    let rest: Vec<usize> = (0..n).chain(n + 1..total).collect();
    let order = MonomialOrder::new(
        OrderKind::Block(vec![(vec![n], OrderKind::Lex), (rest, OrderKind::DegRevLex)]),
        total,
    )?;
    let ring = Ring::commutative(order).with_module(comps);
    let rows: Vec<Poly> = gens
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let mut terms: Vec<(Monomial, Rational)> =
                g.terms().map(|(mono, c)| (widen(mono, total, n), c.clone())).collect();
            terms.push((Monomial::var(total, n + 1 + i, 1), Rational::one()));
            Poly::from_terms(&ring, terms)
        })
        .collect();
    let basis = engine::groebner(&ring, &rows, budget)?;
    Ok(LiftData { ring, n, m, basis })
}

fn widen(mono: &Monomial, total: usize, comp: usize) -> Monomial {
    let mut w = Monomial::one(total);
    for i in 0..mono.nvars() {
        w.set(i, mono.exponent(i));
    }
    w.set(comp, 1);
    w
}

fn narrow(mono: &Monomial, n: usize) -> Monomial {
    Monomial::from_exponents(&mono.exponents()[..n])
}

/// Component `k` (0 = the value slot) of a module element, as a polynomial.
fn component(p: &Poly, k: usize, n: usize, ctx: &VariableContext) -> MultiPoly {
    MultiPoly::from_terms(
        ctx,
        p.terms
            .iter()
            .filter(|(m, _)| m.exponent(n + k) > 0)
            .map(|(m, c)| (narrow(m, n), c.clone())),
    )
}

/// Generators of `{ r | Σ r_i g_i = 0 }`.
pub fn syzygies(gens: &[MultiPoly], budget: &Budget) -> Result<SyzygyBasis> {
    if gens.is_empty() {
        return Ok(SyzygyBasis { relations: vec![] });
    }
    if gens.iter().any(MultiPoly::is_zero) {
        return Err(Error::Input("syzygies of a zero generator".into()));
    }
    let ctx = gens[0].context().clone();
    let data = lift_data(gens, budget)?;
    let relations = data
        .basis
        .iter()
        .filter(|p| p.terms.iter().all(|(m, _)| m.exponent(data.n) == 0))
        .map(|p| (1..=data.m).map(|k| component(p, k, data.n, &ctx)).collect())
        .collect();
    Ok(SyzygyBasis { relations })
}

/// Cofactors `c` with `f = Σ c_i g_i`, or `None` when `f` is not in the ideal.
pub fn lift(f: &MultiPoly, gens: &[MultiPoly], budget: &Budget) -> Result<Option<Vec<MultiPoly>>> {
    let ctx = f.context().clone();
    if gens.is_empty() {
        return Ok(f.is_zero().then(Vec::new));
    }
    let data = lift_data(gens, budget)?;
    let total = data.n + data.m + 1;
    let fe = Poly::from_terms(
        &data.ring,
        f.terms().map(|(m, c)| (widen(m, total, data.n), c.clone())).collect(),
    );
    let refs: Vec<&Poly> = data.basis.iter().collect();
    let r = engine::normal_form(&data.ring, &fe, &refs, budget)?;
    if r.terms.iter().any(|(m, _)| m.exponent(data.n) > 0) {
        return Ok(None);
    }
    Ok(Some((1..=data.m).map(|k| -&component(&r, k, data.n, &ctx)).collect()))
}

/// A submodule of a free module `R^rank`, with a position-over-term basis.
pub struct Submodule {
    ctx: VariableContext,
    rank: usize,
    ring: Ring,
    basis: Vec<Poly>,
}

impl Submodule {
    pub fn new(ctx: &VariableContext, rank: usize, gens: &[Vec<MultiPoly>], budget: &Budget) -> Result<Self> {
        let n = ctx.len();
        let total = n + rank;
        let comps: Vec<usize> = (n..total).collect();
        let order = MonomialOrder::new(
            OrderKind::Block(vec![(comps.clone(), OrderKind::Lex), ((0..n).collect(), OrderKind::DegRevLex)]),
            total,
        )?;
        let ring = Ring::commutative(order).with_module(comps);
        let mut rows = Vec::new();
        for g in gens {
            if g.len() != rank {
                return Err(Error::Input("vector of the wrong length".into()));
            }
            rows.push(encode_vector(&ring, g, n, ctx)?);
        }
        let basis = engine::groebner(&ring, &rows, budget)?;
        Ok(Submodule { ctx: ctx.clone(), rank, ring, basis })
    }

    pub fn contains(&self, v: &[MultiPoly], budget: &Budget) -> Result<bool> {
        if v.len() != self.rank {
            return Err(Error::Input("vector of the wrong length".into()));
        }
        let p = encode_vector(&self.ring, v, self.ctx.len(), &self.ctx)?;
        let refs: Vec<&Poly> = self.basis.iter().collect();
        Ok(engine::normal_form(&self.ring, &p, &refs, budget)?.is_zero())
    }
}

fn encode_vector(ring: &Ring, v: &[MultiPoly], n: usize, ctx: &VariableContext) -> Result<Poly> {
    let total = n + v.len();
    let mut terms = Vec::new();
    for (k, p) in v.iter().enumerate() {
        p.context().check(ctx)?;
        terms.extend(p.terms().map(|(m, c)| (widen(m, total, n + k), c.clone())));
    }
    Ok(Poly::from_terms(ring, terms))
}

/// Regularity of a sequence homogeneous for `weights`, via `dim R/(seq) = dim R - len`.
///
/// The ambient ring is the polynomial ring of the sequence's context.
pub fn is_regular_sequence(seq: &[MultiPoly], weights: &[Rational], budget: &Budget) -> Result<bool> {
    let Some(first) = seq.first() else {
        return Ok(true);
    };
    let ctx = first.context().clone();
    if weights.len() != ctx.len() {
        return Err(Error::Input("one weight per variable required".into()));
    }
    for f in seq {
        f.context().check(&ctx)?;
        if f.is_zero() {
            return Ok(false);
        }
        if f.weighted_homogeneous_degree(weights).is_none() {
            return Err(Error::NotHomogeneous(f.to_text()));
        }
    }
    let dim = Ideal::new(&ctx, seq.to_vec())?.krull_dimension(budget)?;
    Ok(dim >= 0 && dim == ctx.len() as i64 - seq.len() as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn ctx(names: &[&str]) -> VariableContext {
        VariableContext::base(names).unwrap()
    }

    fn p(text: &str, c: &VariableContext) -> MultiPoly {
        parse_poly(text, c).unwrap()
    }

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn basis_examples() {
        let c = ctx(&["x", "y"]);
        let i = Ideal::new(&c, vec![p("x", &c), p("y", &c)]).unwrap();
        let gb = i.groebner(&MonomialOrder::lex(2), &b()).unwrap();
        assert_eq!(gb.polys(), &[p("y", &c), p("x", &c)]);

        let j = Ideal::new(&c, vec![p("x^2-y^3", &c), p("2*x", &c), p("-3*y^2", &c)]).unwrap();
        assert_eq!(j.gb(&b()).unwrap().polys(), &[p("x", &c), p("y^2", &c)]);

        let u = Ideal::new(&c, vec![p("x+1", &c), p("x", &c)]).unwrap();
        assert_eq!(u.gb(&b()).unwrap().polys(), &[p("1", &c)]);
    }

    #[test]
    fn membership() {
        let c = ctx(&["x", "y"]);
        let jac = Ideal::new(&c, vec![p("2*x", &c), p("-3*y^2", &c)]).unwrap();
        assert!(jac.contains(&p("x^2-y^3", &c), &b()).unwrap());
        let i = Ideal::new(&c, vec![p("x^2", &c), p("y", &c)]).unwrap();
        assert!(!i.contains(&p("x", &c), &b()).unwrap());
        assert!(i.contains(&MultiPoly::zero(&c), &b()).unwrap());
    }

    #[test]
    fn euler_cofactors_of_cusp() {
        let c = ctx(&["x", "y"]);
        let gens = vec![p("2*x", &c), p("-3*y^2", &c)];
        let co = lift(&p("x^2-y^3", &c), &gens, &b()).unwrap().unwrap();
        assert_eq!(co, vec![p("1/2*x", &c), p("1/3*y", &c)]);
        assert!(lift(&p("x", &c), &[p("x^2", &c), p("y", &c)], &b()).unwrap().is_none());
    }

    #[test]
    fn equality() {
        let c = ctx(&["x", "y"]);
        let a = Ideal::new(&c, vec![p("x", &c), p("y", &c)]).unwrap();
        let bb = Ideal::new(&c, vec![p("x+y", &c), p("y", &c)]).unwrap();
        assert!(a.contains_ideal(&bb, &b()).unwrap() && bb.contains_ideal(&a, &b()).unwrap());
        let x2 = Ideal::new(&c, vec![p("x^2", &c)]).unwrap();
        let x1 = Ideal::new(&c, vec![p("x", &c)]).unwrap();
        assert!(!x2.contains_ideal(&x1, &b()).unwrap());
    }

    #[test]
    fn elimination_of_graph_parameter() {
        let c = ctx(&["x", "s", "xi", "t"]);
        let i = Ideal::new(&c, vec![p("s - t*x", &c), p("xi - t", &c)]).unwrap();
        let e = i.eliminate(&[3], &b()).unwrap();
        assert_eq!(e.generators().len(), 1);
        assert_eq!(e.generators()[0].monic(), p("x*xi - s", &c).monic());

        let c2 = ctx(&["y", "t"]);
        let i = Ideal::new(&c2, vec![p("y - t", &c2)]).unwrap();
        assert!(i.eliminate(&[1], &b()).unwrap().is_zero());
    }

    #[test]
    fn cusp_rees_relation_by_elimination() {
        let c = ctx(&["x", "y", "s", "xi1", "xi2", "t"]);
        let i = Ideal::new(
            &c,
            vec![p("s - t*(x^2-y^3)", &c), p("xi1 - 2*t*x", &c), p("xi2 + 3*t*y^2", &c)],
        )
        .unwrap();
        let e = i.eliminate(&[5], &b()).unwrap();
        assert!(e.contains(&p("6*s - 3*x*xi1 - 2*y*xi2", &c), &b()).unwrap());
    }

    #[test]
    fn quotients() {
        let c = ctx(&["x", "y"]);
        let id = |t: &str| Ideal::new(&c, vec![p(t, &c)]).unwrap();
        let eq = |a: &Ideal, bb: &Ideal| {
            a.contains_ideal(bb, &b()).unwrap() && bb.contains_ideal(a, &b()).unwrap()
        };
        assert!(eq(&id("x^2").quotient(&id("x"), &b()).unwrap(), &id("x")));
        assert!(eq(&id("x").quotient(&id("1"), &b()).unwrap(), &id("x")));
        assert!(eq(&id("x*y").quotient(&id("x"), &b()).unwrap(), &id("y")));
        let sat = id("x^3*y").saturate(&id("x"), 10, &b()).unwrap();
        assert!(eq(&sat, &id("y")));
    }

    #[test]
    fn syzygy_examples() {
        let c = ctx(&["x", "y"]);
        let gens = vec![p("x", &c), p("y", &c)];
        let s = syzygies(&gens, &b()).unwrap();
        assert_eq!(s.relations.len(), 1);
        assert!(s.verify(&gens));
        let r = &s.relations[0];
        assert_eq!(r[0].monic(), p("y", &c));
        assert_eq!(r[1].monic(), p("x", &c));

        let gens = vec![p("x^2-y^3", &c), p("2*x", &c), p("-3*y^2", &c)];
        let s = syzygies(&gens, &b()).unwrap();
        assert!(s.verify(&gens));
        // the expected relations lie in the computed module
        for expected in [vec!["-1", "1/2*x", "1/3*y"], vec!["0", "3*y^2", "2*x"]] {
            let sum = expected
                .iter()
                .zip(&gens)
                .fold(MultiPoly::zero(&c), |acc, (a, g)| &acc + &(&p(a, &c) * g));
            assert!(sum.is_zero());
        }
        assert!(syzygies(&[p("1", &c)], &b()).unwrap().relations.is_empty());
    }

    #[test]
    fn submodule_membership() {
        let c = ctx(&["x", "y"]);
        let gens = vec![vec![p("x", &c), p("0", &c)], vec![p("y", &c), p("y", &c)]];
        let m = Submodule::new(&c, 2, &gens, &b()).unwrap();
        assert!(m.contains(&[p("x*y + y^2", &c), p("y^2", &c)], &b()).unwrap());
        assert!(!m.contains(&[p("0", &c), p("y", &c)], &b()).unwrap());
        assert!(m.contains(&[p("x-y", &c), p("-y", &c)], &b()).unwrap());
    }

    #[test]
    fn dimensions() {
        let c = ctx(&["x", "y"]);
        assert_eq!(Ideal::new(&c, vec![]).unwrap().krull_dimension(&b()).unwrap(), 2);
        assert_eq!(Ideal::new(&c, vec![p("x", &c)]).unwrap().krull_dimension(&b()).unwrap(), 1);
        assert_eq!(Ideal::new(&c, vec![p("x", &c), p("x-1", &c)]).unwrap().krull_dimension(&b()).unwrap(), -1);
    }

    #[test]
    fn regular_sequences() {
        let c = ctx(&["x", "y"]);
        let w = vec![Rational::one(), Rational::one()];
        assert!(is_regular_sequence(&[p("x", &c), p("y", &c)], &w, &b()).unwrap());
        assert!(!is_regular_sequence(&[p("x", &c), p("x*y", &c)], &w, &b()).unwrap());
        assert!(matches!(
            is_regular_sequence(&[p("x+y^2", &c)], &w, &b()),
            Err(Error::NotHomogeneous(_))
        ));

        let c = ctx(&["x", "y", "s", "xi1", "xi2"]);
        let w: Vec<Rational> = [0, 0, 1, 1, 1].iter().map(|&k| Rational::from(k)).collect();
        let seq = vec![
            p("x^2-y^3", &c),
            p("1/2*x*xi1 + 1/3*y*xi2 - s", &c),
            p("-3*y^2*xi1 - 2*x*xi2", &c),
        ];
        assert!(is_regular_sequence(&seq, &w, &b()).unwrap());
    }
}
