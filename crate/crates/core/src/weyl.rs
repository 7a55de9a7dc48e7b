//! The Weyl algebra `Q[x]<d>` extended by central variables, optionally with
//! an auxiliary pair `(t, dt)`.
//!
//! Elements are stored in normal order, every `x`, `t` and central factor to
//! the left of every derivative. The text format prints a term as
//! `coef*x1^a*t^e*s^b*d1^c*dt^f`, where `d1` is the derivative with respect to
//! the first base variable.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::budget::Budget;
use crate::context::{is_identifier, Role, VariableContext};
use crate::engine::{self, Poly, Ring};
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::order::{MonomialOrder, OrderKind};
use crate::parse::{parse_with, ParseTarget};
use crate::poly::{format_terms, monomial_factors, MultiPoly};
use crate::rational::Rational;
use crate::unipoly::UniPoly;

#[derive(PartialEq, Eq, Hash)]
struct Inner {
    base: VariableContext,
    t: Option<String>,
    central: Vec<String>,
    names: Vec<String>,
}

/// Variable layout `[x1..xd, t?, central.., d1..dd, dt?]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeylContext(Arc<Inner>);

impl WeylContext {
    pub fn new(base: &VariableContext, central: &[&str], t: Option<&str>) -> Result<Self> {
        let d = base.len();
        if d == 0 {
            return Err(Error::Input("empty variable list".into()));
        }
        let mut names: Vec<String> = base.names().to_vec();
        names.extend(t.map(str::to_string));
        names.extend(central.iter().map(|c| c.to_string()));
        names.extend((1..=d).map(|i| format!("d{i}")));
        if let Some(t) = t {
            names.push(format!("d{t}"));
        }
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(Error::Input(format!("invalid variable name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(Error::Input(format!("variable name `{n}` clashes with a derivative or parameter")));
            }
        }
        Ok(WeylContext(Arc::new(Inner {
            base: base.clone(),
            t: t.map(str::to_string),
            central: central.iter().map(|c| c.to_string()).collect(),
            names,
        })))
    }

    /// `D[s]` over the given base variables.
    pub fn standard(base: &VariableContext) -> Result<Self> {
        Self::new(base, &["s"], None)
    }

    pub fn base(&self) -> &VariableContext {
        &self.0.base
    }

    pub fn dim(&self) -> usize {
        self.0.base.len()
    }

    fn nb(&self) -> usize {
        self.dim() + usize::from(self.0.t.is_some())
    }

    pub fn nvars(&self) -> usize {
        self.0.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.names.iter().position(|n| n == name)
    }

    pub fn x_index(&self, i: usize) -> usize {
        i
    }

    pub fn d_index(&self, i: usize) -> usize {
        self.nb() + self.0.central.len() + i
    }

    pub fn t_index(&self) -> Option<usize> {
        self.0.t.as_ref().map(|_| self.dim())
    }

    pub fn dt_index(&self) -> Option<usize> {
        self.0.t.as_ref().map(|_| self.nvars() - 1)
    }

    pub fn central_index(&self, name: &str) -> Option<usize> {
        self.0.central.iter().position(|c| c == name).map(|j| self.nb() + j)
    }

    pub fn s_index(&self) -> Option<usize> {
        self.central_index("s")
    }

    fn is_derivative(&self, i: usize) -> bool {
        i >= self.nb() + self.0.central.len()
    }

    /// `(x, d)` index pairs with `[d, x] = 1`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let off = self.nb() + self.0.central.len();
        (0..self.nb()).map(|i| (i, off + i)).collect()
    }

    pub(crate) fn ring(&self, order: MonomialOrder) -> Ring {
        Ring::weyl(order, self.pairs())
    }

    /// Commutative coefficient ring: base variables then central ones.
    pub fn coefficient_context(&self) -> VariableContext {
        let mut vars: Vec<(String, Role)> =
            self.base().names().iter().map(|n| (n.clone(), Role::Base)).collect();
        vars.extend(self.0.central.iter().map(|c| (c.clone(), Role::Central)));
        VariableContext::new(&vars).expect("names checked at construction")
    }

    /// Symbol ring `Q[x, central, xi]`, with `xi_i` the symbol of `d_i`.
    pub fn symbol_context(&self) -> Result<VariableContext> {
        let mut vars: Vec<(String, Role)> =
            self.base().names().iter().map(|n| (n.clone(), Role::Base)).collect();
        vars.extend(self.0.central.iter().map(|c| (c.clone(), Role::Central)));
        vars.extend((1..=self.dim()).map(|i| (format!("xi{i}"), Role::Symbol)));
        VariableContext::new(&vars)
    }

    fn same(&self, other: &WeylContext) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }

    fn check(&self, other: &WeylContext) -> Result<()> {
        if self.same(other) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }
}

impl fmt::Debug for WeylContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylContext{:?}", self.0.names)
    }
}

/// An element of the Weyl algebra in normal order.
#[derive(Clone, PartialEq, Eq)]
pub struct WeylElement {
    ctx: WeylContext,
    terms: BTreeMap<Monomial, Rational>,
}

impl WeylElement {
    pub fn zero(ctx: &WeylContext) -> Self {
        WeylElement { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ctx: &WeylContext, c: Rational) -> Self {
        Self::from_terms(ctx, [(Monomial::one(ctx.nvars()), c)])
    }

    pub fn one(ctx: &WeylContext) -> Self {
        Self::constant(ctx, Rational::one())
    }

    /// The generator with engine index `i`.
    pub fn var(ctx: &WeylContext, i: usize) -> Self {
        Self::from_terms(ctx, [(Monomial::var(ctx.nvars(), i, 1), Rational::one())])
    }

    pub fn x(ctx: &WeylContext, i: usize) -> Self {
        Self::var(ctx, ctx.x_index(i))
    }

    pub fn d(ctx: &WeylContext, i: usize) -> Self {
        Self::var(ctx, ctx.d_index(i))
    }

    /// The central variable `s`; panics when the context has none.
    pub fn s(ctx: &WeylContext) -> Self {
        Self::var(ctx, ctx.s_index().expect("context has a central s"))
    }

    pub fn from_terms(ctx: &WeylContext, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            *map.entry(m).or_default() += &c;
        }
        map.retain(|_, c| !c.is_zero());
        WeylElement { ctx: ctx.clone(), terms: map }
    }

    /// A commutative polynomial whose variables are found in `ctx` by name.
    pub fn from_poly(ctx: &WeylContext, p: &MultiPoly) -> Result<Self> {
        let pctx = p.context();
        let map: Vec<Option<usize>> = (0..pctx.len()).map(|i| ctx.index_of(pctx.name(i))).collect();
        let mut terms = Vec::new();
        for (m, c) in p.terms() {
            let mut w = Monomial::one(ctx.nvars());
            for i in m.support() {
                let j = map[i].ok_or_else(|| Error::UnknownVariable(pctx.name(i).to_string()))?;
                if ctx.is_derivative(j) {
                    return Err(Error::Input(format!("`{}` names a derivative", pctx.name(i))));
                }
                w.set(j, m.exponent(i));
            }
            terms.push((w, c.clone()));
        }
        Ok(Self::from_terms(ctx, terms))
    }

    /// `Σ a_i d_i`.
    pub fn vector_field(ctx: &WeylContext, coeffs: &[MultiPoly]) -> Result<Self> {
        let mut acc = Self::zero(ctx);
        for (i, a) in coeffs.iter().enumerate() {
            acc = &acc + &(&Self::from_poly(ctx, a)? * &Self::d(ctx, i));
        }
        Ok(acc)
    }

    pub fn parse(text: &str, ctx: &WeylContext) -> Result<Self> {
        parse_with(text, &Self::zero(ctx))
    }

    pub fn context(&self) -> &WeylContext {
        &self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(&self.ctx, self.terms.iter().map(|(m, a)| (m.clone(), a * c)))
    }

    /// Normal-ordered product `self * other`.
    pub fn checked_mul(&self, other: &WeylElement) -> Result<WeylElement> {
        self.ctx.check(&other.ctx)?;
        let ring = self.ctx.ring(MonomialOrder::degrevlex(self.ctx.nvars()));
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        let mut scratch = Vec::new();
        for (m, a) in &self.terms {
            for (t, b) in &other.terms {
                scratch.clear();
                ring.mul_monomials(m, t, &mut scratch);
                let ab = a * b;
                for (mono, k) in scratch.drain(..) {
                    *acc.entry(mono).or_default() += &(&ab * &Rational::from_int(k));
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(WeylElement { ctx: self.ctx.clone(), terms: acc })
    }

    pub fn checked_add(&self, other: &WeylElement) -> Result<WeylElement> {
        self.ctx.check(&other.ctx)?;
        Ok(Self::from_terms(
            &self.ctx,
            self.terms.iter().chain(other.terms.iter()).map(|(m, c)| (m.clone(), c.clone())),
        ))
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(&self.ctx), |acc, _| &acc * self)
    }

    /// `[self, other] = self*other - other*self`.
    pub fn commutator(&self, other: &WeylElement) -> Self {
        &(self * other) - &(other * self)
    }

    /// The anti-automorphism fixing `x`, `t` and central variables, with `d -> -d`.
    pub fn transpose(&self) -> Self {
        let mut acc = Self::zero(&self.ctx);
        let n = self.ctx.nvars();
        for (m, c) in &self.terms {
            let mut left = Monomial::one(n);
            let mut right = Monomial::one(n);
            let mut sign = 1i64;
            for i in m.support() {
                if self.ctx.is_derivative(i) {
                    left.set(i, m.exponent(i));
                    if m.exponent(i) % 2 == 1 {
                        sign = -sign;
                    }
                } else {
                    right.set(i, m.exponent(i));
                }
            }
            let l = Self::from_terms(&self.ctx, [(left, c * &Rational::from(sign))]);
            let r = Self::from_terms(&self.ctx, [(right, Rational::one())]);
            acc = &acc + &(&l * &r);
        }
        acc
    }

    /// Highest derivative order, `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|m| m.support().filter(|&i| self.ctx.is_derivative(i)).map(|i| m.exponent(i)).sum())
            .max()
    }

    fn symbol(&self, weight: impl Fn(usize) -> u32) -> Result<MultiPoly> {
        if self.ctx.0.t.is_some() {
            return Err(Error::Input("symbols are defined without the auxiliary pair".into()));
        }
        let sym = self.ctx.symbol_context()?;
        let w = |m: &Monomial| m.support().map(|i| weight(i) * m.exponent(i)).sum::<u32>();
        let top = self.terms.keys().map(w).max().unwrap_or(0);
        // layout [x, central, d] maps onto [x, central, xi] index for index
        Ok(MultiPoly::from_terms(
            &sym,
            self.terms.iter().filter(|(m, _)| w(m) == top).map(|(m, c)| (m.clone(), c.clone())),
        ))
    }

    /// Top part for weights `x: 0`, `d: 1`, central: 1, with `d_i -> xi_i`.
    pub fn total_symbol(&self) -> Result<MultiPoly> {
        let ctx = self.ctx.clone();
        let nb = ctx.nb();
        self.symbol(move |i| u32::from(i >= nb))
    }

    /// Principal symbol for the order filtration, with `d_i -> xi_i`.
    pub fn order_symbol(&self) -> Result<MultiPoly> {
        let ctx = self.ctx.clone();
        self.symbol(move |i| u32::from(ctx.is_derivative(i)))
    }

    /// Replaces the central variable `name` by a rational number.
    pub fn specialize(&self, name: &str, value: &Rational) -> Result<Self> {
        let j = self.ctx.central_index(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Self::from_terms(
            &self.ctx,
            self.terms.iter().map(|(m, c)| {
                let mut m2 = m.clone();
                m2.set(j, 0);
                (m2, c * &value.pow(m.exponent(j)))
            }),
        ))
    }

    pub fn to_text(&self) -> String {
        let order = MonomialOrder::degrevlex(self.ctx.nvars());
        let mut terms: Vec<(Monomial, Rational)> =
            self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        let names = self.ctx.names();
        format_terms(&terms, |m| monomial_factors(m, |i| names[i].clone()))
    }

    pub(crate) fn to_engine(&self, ring: &Ring) -> Poly {
        Poly::from_terms(ring, self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect())
    }

    pub(crate) fn from_engine(ctx: &WeylContext, p: &Poly) -> Self {
        Self::from_terms(ctx, p.terms.iter().cloned())
    }

    /// `P·h^q` as `numerator / h^k` times `h^q`; `q` is a polynomial in `s`.
    pub fn apply_to_power(&self, h: &MultiPoly, q: &UniPoly) -> Result<PowerAction> {
        let cctx = self.ctx.coefficient_context();
        let start = PowerAction { numerator: MultiPoly::one(&cctx), h_power: 0 };
        self.apply_to_section(h, q, &start)
    }

    /// Action on the section `N h^{-k} h^q`.
    pub fn apply_to_section(&self, h: &MultiPoly, q: &UniPoly, sec: &PowerAction) -> Result<PowerAction> {
        if self.ctx.0.t.is_some() {
            return Err(Error::Input("cannot act with the auxiliary pair present".into()));
        }
        let cctx = self.ctx.coefficient_context();
        sec.numerator.context().check(&cctx)?;
        let hh = h.embed(&cctx)?;
        if hh.is_zero() {
            return Err(Error::Input("h must be nonzero".into()));
        }
        let qq = if q.degree().unwrap_or(0) == 0 {
            MultiPoly::constant(&cctx, q.eval(&Rational::zero()))
        } else {
            let s = self.ctx.s_index().ok_or_else(|| Error::Input("exponent needs a central s".into()))?;
            q.to_multipoly(&cctx, s)
        };
        let d = self.ctx.dim();
        let grads: Vec<MultiPoly> = (0..d).map(|i| hh.partial_derivative(i)).collect();
        let dstart = self.ctx.d_index(0);

        // group terms by their derivative part
        let mut groups: BTreeMap<Vec<u32>, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let dpart: Vec<u32> = (0..d).map(|i| m.exponent(dstart + i)).collect();
            let cm = Monomial::from_exponents(&m.exponents()[..cctx.len()]);
            let entry = groups.entry(dpart).or_insert_with(|| MultiPoly::zero(&cctx));
            *entry = &*entry + &MultiPoly::monomial(&cctx, cm, c.clone());
        }

        let mut memo: BTreeMap<Vec<u32>, (MultiPoly, u32)> = BTreeMap::new();
        memo.insert(vec![0; d], (sec.numerator.clone(), sec.h_power));
        let mut results: Vec<(MultiPoly, u32)> = Vec::new();
        for (dpart, coef) in &groups {
            let (n, k) = derivative_of_section(dpart, &mut memo, &hh, &qq, &grads);
            results.push((&coef.clone() * &n, k));
        }
        let kmax = results.iter().map(|r| r.1).max().unwrap_or(0);
        let mut num = MultiPoly::zero(&cctx);
        for (n, k) in results {
            num = &num + &(&n * &hh.pow(kmax - k));
        }
        Ok(PowerAction { numerator: num, h_power: kmax }.normalized(&hh))
    }
}

/// `d^b` applied to the memoised section, built from smaller multi-indices.
fn derivative_of_section(
    b: &[u32],
    memo: &mut BTreeMap<Vec<u32>, (MultiPoly, u32)>,
    h: &MultiPoly,
    q: &MultiPoly,
    grads: &[MultiPoly],
) -> (MultiPoly, u32) {
    if let Some(v) = memo.get(b) {
        return v.clone();
    }
    let i = b.iter().position(|&e| e > 0).expect("nonzero multi-index");
    let mut smaller = b.to_vec();
    smaller[i] -= 1;
    let (n, k) = derivative_of_section(&smaller, memo, h, q, grads);
    // d_i (N h^{q-k}) = (h d_i N + (q - k) h_i N) h^{q-k-1}
    let qk = q - &MultiPoly::constant(h.context(), Rational::from(k as i64));
    let next = &(h * &n.partial_derivative(i)) + &(&(&qk * &grads[i]) * &n);
    let out = (next, k + 1);
    memo.insert(b.to_vec(), out.clone());
    out
}

/// A section `numerator * h^(-h_power) * h^q` of the module generated by `h^q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerAction {
    pub numerator: MultiPoly,
    pub h_power: u32,
}

impl PowerAction {
    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    fn normalized(mut self, h: &MultiPoly) -> Self {
        if self.numerator.is_zero() {
            self.h_power = 0;
            return self;
        }
        while self.h_power > 0 {
            match self.numerator.div_exact(h) {
                Some(q) => {
                    self.numerator = q;
                    self.h_power -= 1;
                }
                None => break,
            }
        }
        self
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W({})", self.to_text())
    }
}

impl std::ops::Add for &WeylElement {
    type Output = WeylElement;
    fn add(self, rhs: &WeylElement) -> WeylElement {
        self.checked_add(rhs).expect("shared Weyl context")
    }
}

impl std::ops::Sub for &WeylElement {
    type Output = WeylElement;
    fn sub(self, rhs: &WeylElement) -> WeylElement {
        self.checked_add(&-rhs).expect("shared Weyl context")
    }
}

impl std::ops::Neg for &WeylElement {
    type Output = WeylElement;
    fn neg(self) -> WeylElement {
        self.scale(&Rational::from(-1))
    }
}

impl std::ops::Mul for &WeylElement {
    type Output = WeylElement;
    fn mul(self, rhs: &WeylElement) -> WeylElement {
        self.checked_mul(rhs).expect("shared Weyl context")
    }
}

impl ParseTarget for WeylElement {
    fn constant(&self, c: Rational) -> Self {
        WeylElement::constant(&self.ctx, c)
    }
    fn variable(&self, name: &str) -> Option<Self> {
        self.ctx.index_of(name).map(|i| WeylElement::var(&self.ctx, i))
    }
    fn add(a: Self, b: Self) -> Self {
        &a + &b
    }
    fn sub(a: Self, b: Self) -> Self {
        &a - &b
    }
    fn mul(a: Self, b: Self) -> Self {
        &a * &b
    }
    fn neg(a: Self) -> Self {
        -&a
    }
}

/// A left ideal of a Weyl algebra.
pub struct LeftIdealW {
    ctx: WeylContext,
    generators: Vec<WeylElement>,
    cached: OnceLock<Vec<WeylElement>>,
}

impl Clone for LeftIdealW {
    fn clone(&self) -> Self {
        let cached = OnceLock::new();
        if let Some(gb) = self.cached.get() {
            let _ = cached.set(gb.clone());
        }
        LeftIdealW { ctx: self.ctx.clone(), generators: self.generators.clone(), cached }
    }
}

impl fmt::Debug for LeftIdealW {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.generators.iter().map(|g| g.to_text())).finish()
    }
}

impl LeftIdealW {
    pub fn new(ctx: &WeylContext, generators: Vec<WeylElement>) -> Result<Self> {
        for g in &generators {
            g.ctx.check(ctx)?;
        }
        Ok(LeftIdealW {
            ctx: ctx.clone(),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
            cached: OnceLock::new(),
        })
    }

    pub fn context(&self) -> &WeylContext {
        &self.ctx
    }

    pub fn generators(&self) -> &[WeylElement] {
        &self.generators
    }

    /// The ideal with extra generators.
    pub fn with(&self, extra: &[WeylElement]) -> Result<Self> {
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().cloned());
        Self::new(&self.ctx, gens)
    }

    /// Reduced left Gröbner basis, sorted by increasing leading monomial.
    pub fn left_groebner(&self, order: &MonomialOrder, budget: &Budget) -> Result<Vec<WeylElement>> {
        if order.nvars() != self.ctx.nvars() {
            return Err(Error::InadmissibleOrder("order and context sizes differ".into()));
        }
        let default = MonomialOrder::degrevlex(self.ctx.nvars());
        if *order == default {
            if let Some(gb) = self.cached.get() {
                return Ok(gb.clone());
            }
        }
        let ring = self.ctx.ring(order.clone());
        let gens: Vec<Poly> = self.generators.iter().map(|g| g.to_engine(&ring)).collect();
        let gb: Vec<WeylElement> =
            engine::groebner(&ring, &gens, budget)?.iter().map(|p| WeylElement::from_engine(&self.ctx, p)).collect();
        if *order == default {
            let _ = self.cached.set(gb.clone());
        }
        Ok(gb)
    }

    pub fn gb(&self, budget: &Budget) -> Result<Vec<WeylElement>> {
        self.left_groebner(&MonomialOrder::degrevlex(self.ctx.nvars()), budget)
    }

    /// Left normal form for the degrevlex basis.
    pub fn reduce(&self, f: &WeylElement, budget: &Budget) -> Result<WeylElement> {
        f.ctx.check(&self.ctx)?;
        let ring = self.ctx.ring(MonomialOrder::degrevlex(self.ctx.nvars()));
        let basis: Vec<Poly> = self.gb(budget)?.iter().map(|g| g.to_engine(&ring)).collect();
        let refs: Vec<&Poly> = basis.iter().collect();
        let r = engine::normal_form(&ring, &f.to_engine(&ring), &refs, budget)?;
        Ok(WeylElement::from_engine(&self.ctx, &r))
    }

    pub fn contains(&self, f: &WeylElement, budget: &Budget) -> Result<bool> {
        Ok(self.reduce(f, budget)?.is_zero())
    }

    /// Equality by comparison of reduced bases.
    pub fn equals(&self, other: &LeftIdealW, budget: &Budget) -> Result<bool> {
        other.ctx.check(&self.ctx)?;
        Ok(self.gb(budget)? == other.gb(budget)?)
    }

    /// Monic generator of `I ∩ Q[s]`, zero when the intersection is trivial.
    pub fn eliminate_to_center(&self, budget: &Budget) -> Result<UniPoly> {
        let s = self.ctx.s_index().ok_or_else(|| Error::Input("context has no central s".into()))?;
        let n = self.ctx.nvars();
        let rest: Vec<usize> = (0..n).filter(|&i| i != s).collect();
        let order = MonomialOrder::new(
            OrderKind::Block(vec![(rest, OrderKind::DegRevLex), (vec![s], OrderKind::DegRevLex)]),
            n,
        )?;
        let gb = self.left_groebner(&order, budget)?;
        let central: Vec<&WeylElement> =
            gb.iter().filter(|g| g.terms.keys().all(|m| m.support().all(|i| i == s))).collect();
        match central.as_slice() {
            [] => Ok(UniPoly::zero()),
            [g] => {
                let coeffs = g.terms.iter().map(|(m, c)| (m.exponent(s) as usize, c.clone()));
                let mut v = vec![Rational::zero(); g.terms.keys().map(|m| m.exponent(s) as usize + 1).max().unwrap_or(0)];
                for (e, c) in coeffs {
                    v[e] = c;
                }
                Ok(UniPoly::new(v).monic())
            }
            _ => Err(Error::Internal("reduced basis with two central elements".into())),
        }
    }
}

/// `ann_{D[s]} h^s` by Oaku's homogenised version of Malgrange's construction.
pub fn annihilator_fs(h: &MultiPoly, budget: &Budget) -> Result<LeftIdealW> {
    if h.is_zero() {
        return Err(Error::Input("h must be nonzero".into()));
    }
    let base = h.context().clone();
    let target = WeylContext::standard(&base)?;
    let tn = base.fresh_name("t");
    let un = base.fresh_name("u");
    let vn = base.fresh_name("v");
    let big = WeylContext::new(&base, &[un.as_str(), vn.as_str()], Some(tn.as_str()))?;
    let d = base.len();
    let t = WeylElement::var(&big, big.t_index().expect("t present"));
    let dt = WeylElement::var(&big, big.dt_index().expect("dt present"));
    let ui = big.central_index(&un).expect("u present");
    let vi = big.central_index(&vn).expect("v present");
    let u = WeylElement::var(&big, ui);
    let v = WeylElement::var(&big, vi);
    let hw = WeylElement::from_poly(&big, h)?;
    let mut gens = vec![&t - &(&u * &hw)];
    for i in 0..d {
        let hi = WeylElement::from_poly(&big, &h.partial_derivative(i))?;
        gens.push(&WeylElement::d(&big, i) + &(&(&u * &hi) * &dt));
    }
    gens.push(&(&u * &v) - &WeylElement::one(&big));
    let order = MonomialOrder::elimination(big.nvars(), &[ui, vi]);
    let gb = LeftIdealW::new(&big, gens)?.left_groebner(&order, budget)?;

    let (ti, dti) = (big.t_index().unwrap(), big.dt_index().unwrap());
    let s_target = WeylElement::s(&target);
    let mut out: Vec<WeylElement> = Vec::new();
    for g in gb.iter().filter(|g| g.terms.keys().all(|m| m.exponent(ui) == 0 && m.exponent(vi) == 0)) {
        let weight = |m: &Monomial| m.exponent(dti) as i64 - m.exponent(ti) as i64;
        let w0 = weight(g.terms.keys().next().expect("nonzero"));
        if g.terms.keys().any(|m| weight(m) != w0) {
            return Err(Error::Internal("non-homogeneous element in the Malgrange ideal".into()));
        }
        let g = if w0 > 0 {
            &t.pow(w0 as u32) * g
        } else if w0 < 0 {
            &dt.pow((-w0) as u32) * g
        } else {
            g.clone()
        };
        // t^e dt^e = prod_{j<e} (t dt - j) and t dt = -s - 1
        let mut acc = WeylElement::zero(&target);
        for (m, c) in &g.terms {
            let e = m.exponent(ti);
            let mut mono = Monomial::one(target.nvars());
            for i in 0..d {
                mono.set(target.x_index(i), m.exponent(big.x_index(i)));
                mono.set(target.d_index(i), m.exponent(big.d_index(i)));
            }
            let mut term = WeylElement::from_terms(&target, [(mono, c.clone())]);
            for j in 0..e {
                let factor = &(-&s_target) - &WeylElement::constant(&target, Rational::from(1 + j as i64));
                term = &term * &factor;
            }
            acc = &acc + &term;
        }
        if !acc.is_zero() && !out.contains(&acc) {
            out.push(acc);
        }
    }
    LeftIdealW::new(&target, out)
}

/// A matrix over a Weyl algebra acting on row vectors from the right.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeylMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<WeylElement>>,
}

impl WeylMatrix {
    pub fn zeros(ctx: &WeylContext, rows: usize, cols: usize) -> Self {
        WeylMatrix { rows, cols, entries: vec![vec![WeylElement::zero(ctx); cols]; rows] }
    }

    pub fn from_rows(entries: Vec<Vec<WeylElement>>) -> Result<Self> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, Vec::len);
        if entries.iter().any(|r| r.len() != cols) {
            return Err(Error::Input("ragged matrix".into()));
        }
        Ok(WeylMatrix { rows, cols, entries })
    }

    pub fn get(&self, i: usize, j: usize) -> &WeylElement {
        &self.entries[i][j]
    }

    pub fn checked_mul(&self, other: &WeylMatrix) -> Result<WeylMatrix> {
        if self.cols != other.rows {
            return Err(Error::Input(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row = Vec::with_capacity(other.cols);
            for j in 0..other.cols {
                let mut acc: Option<WeylElement> = None;
                for k in 0..self.cols {
                    let p = self.entries[i][k].checked_mul(&other.entries[k][j])?;
                    acc = Some(match acc {
                        None => p,
                        Some(a) => a.checked_add(&p)?,
                    });
                }
                row.push(acc.ok_or_else(|| Error::Input("empty inner dimension".into()))?);
            }
            out.push(row);
        }
        Self::from_rows(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(WeylElement::is_zero)
    }

    /// Entrywise transpose together with matrix transposition.
    pub fn adjoint(&self) -> WeylMatrix {
        let entries = (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.entries[i][j].transpose()).collect())
            .collect();
        WeylMatrix { rows: self.cols, cols: self.rows, entries }
    }

    pub fn to_text_rows(&self) -> Vec<Vec<String>> {
        self.entries.iter().map(|r| r.iter().map(WeylElement::to_text).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn wctx(names: &[&str]) -> WeylContext {
        WeylContext::standard(&VariableContext::base(names).unwrap()).unwrap()
    }

    fn w(text: &str, c: &WeylContext) -> WeylElement {
        WeylElement::parse(text, c).unwrap()
    }

    #[test]
    fn products() {
        let c = wctx(&["x"]);
        assert_eq!(&w("d1", &c) * &w("x", &c), w("x*d1 + 1", &c));
        assert_eq!(w("(x*d1)^2", &c), w("x^2*d1^2 + x*d1", &c));
        assert_eq!(&w("s", &c) * &w("d1", &c), w("s*d1", &c));
        assert_eq!(w("d1*x", &c).to_text(), "x*d1 + 1");
    }

    #[test]
    fn transposition() {
        let c = wctx(&["x"]);
        assert_eq!(w("d1", &c).transpose(), w("-d1", &c));
        assert_eq!(w("x*d1", &c).transpose(), w("-x*d1 - 1", &c));
        assert_eq!(w("x*d1 - s", &c).transpose(), w("-x*d1 - 1 - s", &c));
    }

    #[test]
    fn symbols() {
        let c = wctx(&["x"]);
        let sym = c.symbol_context().unwrap();
        assert_eq!(w("x*d1 - s", &c).total_symbol().unwrap(), parse_poly("x*xi1 - s", &sym).unwrap());
        // s*d1 has total weight 2 as well
        assert_eq!(w("d1^2 + s*d1 + x", &c).total_symbol().unwrap(), parse_poly("xi1^2 + s*xi1", &sym).unwrap());
        assert_eq!(w("d1^2 + x", &c).total_symbol().unwrap(), parse_poly("xi1^2", &sym).unwrap());
        assert_eq!(w("x*d1 - s", &c).order_symbol().unwrap(), parse_poly("x*xi1", &sym).unwrap());
        let c2 = wctx(&["x", "y"]);
        let sym2 = c2.symbol_context().unwrap();
        assert_eq!(w("d1*d2 + x", &c2).order_symbol().unwrap(), parse_poly("xi1*xi2", &sym2).unwrap());
        assert_eq!(w("x^2 - y^3", &c2).order_symbol().unwrap(), parse_poly("x^2 - y^3", &sym2).unwrap());
    }

    #[test]
    fn action_on_powers() {
        let c = wctx(&["x"]);
        let h = parse_poly("x", c.base()).unwrap();
        assert!(w("x*d1 - s", &c).apply_to_power(&h, &UniPoly::s()).unwrap().is_zero());
        let r = w("d1", &c).apply_to_power(&h, &UniPoly::parse("s+1").unwrap()).unwrap();
        // (s+1) x^s = (s+1) h^-1 h^(s+1)
        assert_eq!(r.h_power, 1);
        assert_eq!(r.numerator, parse_poly("s + 1", &c.coefficient_context()).unwrap());

        let c2 = wctx(&["x", "y"]);
        let cusp = parse_poly("x^2 - y^3", c2.base()).unwrap();
        let dh = w("-3*y^2*d1 - 2*x*d2", &c2);
        assert!(dh.apply_to_power(&cusp, &UniPoly::s()).unwrap().is_zero());
        let de = w("1/2*x*d1 + 1/3*y*d2 - s", &c2);
        assert!(de.apply_to_power(&cusp, &UniPoly::s()).unwrap().is_zero());
    }

    #[test]
    fn left_bases() {
        let c = wctx(&["x", "y"]);
        let b = Budget::default();
        let i = LeftIdealW::new(&c, vec![w("d1", &c), w("d2", &c)]).unwrap();
        assert_eq!(i.gb(&b).unwrap(), vec![w("d2", &c), w("d1", &c)]);
        let c1 = wctx(&["x"]);
        let i = LeftIdealW::new(&c1, vec![w("x", &c1), w("d1", &c1)]).unwrap();
        assert_eq!(i.gb(&b).unwrap(), vec![w("1", &c1)]);
        // d*x - (x*d - s) = s + 1
        let i = LeftIdealW::new(&c1, vec![w("x*d1 - s", &c1), w("x", &c1)]).unwrap();
        assert_eq!(i.gb(&b).unwrap(), vec![w("s + 1", &c1), w("x", &c1)]);
    }

    #[test]
    fn central_elimination() {
        let c = wctx(&["x"]);
        let b = Budget::default();
        let i = LeftIdealW::new(&c, vec![w("x*d1 - s", &c), w("x", &c)]).unwrap();
        assert_eq!(i.eliminate_to_center(&b).unwrap(), UniPoly::parse("s+1").unwrap());
        let i = LeftIdealW::new(&c, vec![w("d1", &c)]).unwrap();
        assert!(i.eliminate_to_center(&b).unwrap().is_zero());
        let i = LeftIdealW::new(&c, vec![w("s^2 - 1", &c)]).unwrap();
        assert_eq!(i.eliminate_to_center(&b).unwrap(), UniPoly::parse("s^2 - 1").unwrap());
    }

    #[test]
    fn annihilators() {
        let b = Budget::default();
        let c = wctx(&["x"]);
        let ann = annihilator_fs(&parse_poly("x", c.base()).unwrap(), &b).unwrap();
        let expected = LeftIdealW::new(&c, vec![w("x*d1 - s", &c)]).unwrap();
        assert!(ann.equals(&expected, &b).unwrap());

        let c = wctx(&["x", "y"]);
        let h = parse_poly("x*y", c.base()).unwrap();
        let ann = annihilator_fs(&h, &b).unwrap();
        let expected = LeftIdealW::new(&c, vec![w("x*d1 - s", &c), w("y*d2 - s", &c)]).unwrap();
        assert!(ann.equals(&expected, &b).unwrap());

        let cusp = parse_poly("x^2 - y^3", c.base()).unwrap();
        let ann = annihilator_fs(&cusp, &b).unwrap();
        for g in ann.generators() {
            assert!(g.apply_to_power(&cusp, &UniPoly::s()).unwrap().is_zero(), "{g}");
        }
        assert!(ann.contains(&w("-3*y^2*d1 - 2*x*d2", &c), &b).unwrap());
        assert!(ann.contains(&w("1/2*x*d1 + 1/3*y*d2 - s", &c), &b).unwrap());
    }

    #[test]
    fn context_checks() {
        let base = VariableContext::base(&["d1"]).unwrap();
        assert!(WeylContext::standard(&base).is_err());
        let a = wctx(&["x"]);
        let b = wctx(&["y"]);
        assert_eq!(WeylElement::one(&a).checked_mul(&WeylElement::one(&b)), Err(Error::ContextMismatch));
    }
}
