//! Exact multivariate polynomials over the rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::context::VariableContext;
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::rational::Rational;

/// A polynomial with rational coefficients in the variables of a [`VariableContext`].
///
/// Terms are kept in a canonical map without zero coefficients, so equality is
/// structural.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    ctx: VariableContext,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(ctx: &VariableContext) -> Self {
        MultiPoly { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ctx: &VariableContext, c: Rational) -> Self {
        let mut p = Self::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ctx.len()), c);
        }
        p
    }

    pub fn one(ctx: &VariableContext) -> Self {
        Self::constant(ctx, Rational::one())
    }

    /// The variable with index `i`.
    pub fn var(ctx: &VariableContext, i: usize) -> Self {
        Self::monomial(ctx, Monomial::var(ctx.len(), i, 1), Rational::one())
    }

    pub fn var_named(ctx: &VariableContext, name: &str) -> Result<Self> {
        let i = ctx.index_of(name).ok_or_else(|| Error::UnknownVariable(name.into()))?;
        Ok(Self::var(ctx, i))
    }

    pub fn monomial(ctx: &VariableContext, m: Monomial, c: Rational) -> Self {
        debug_assert_eq!(m.nvars(), ctx.len());
        let mut p = Self::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(ctx: &VariableContext, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(ctx);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn context(&self) -> &VariableContext {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in the canonical (lexicographic exponent) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one(self.ctx.len()))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Degree in the variables listed.
    pub fn degree_in(&self, vars: &[usize]) -> Option<u32> {
        self.terms.keys().map(|m| vars.iter().map(|&i| m.exponent(i)).sum()).max()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.ctx.check(&other.ctx)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.ctx.check(&other.ctx)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.ctx.check(&other.ctx)?;
        let mut out = Self::zero(&self.ctx);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        MultiPoly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MultiPoly {
        MultiPoly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = Self::one(&self.ctx);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to variable `i`.
    pub fn partial_derivative(&self, i: usize) -> MultiPoly {
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            let e = m.exponent(i);
            if e > 0 {
                let mut m2 = m.clone();
                m2.set(i, e - 1);
                out.add_term(m2, &(c * &Rational::from(e as i64)));
            }
        }
        out
    }

    /// Evaluates at a full point (one value per context variable).
    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= &point[i].pow(e as u32);
                }
            }
            acc += &t;
        }
        acc
    }

    /// Value at the origin.
    pub fn eval_origin(&self) -> Rational {
        self.constant_term()
    }

    /// Substitutes polynomials (in a possibly different context) for every variable.
    pub fn substitute(&self, target: &VariableContext, images: &[MultiPoly]) -> Result<MultiPoly> {
        if images.len() != self.ctx.len() {
            return Err(Error::Input("substitution needs one image per variable".into()));
        }
        for img in images {
            img.ctx.check(target)?;
        }
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &images[i].pow(e as u32);
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Re-expresses the polynomial in another context, matching variables by name.
    pub fn embed(&self, target: &VariableContext) -> Result<MultiPoly> {
        // only variables that occur need a counterpart
        let used: Vec<bool> = (0..self.ctx.len())
            .map(|i| self.terms.keys().any(|m| m.exponent(i) > 0))
            .collect();
        let map: Vec<usize> = (0..self.ctx.len())
            .map(|i| match target.index_of(self.ctx.name(i)) {
                Some(j) => Ok(j),
                None if !used[i] => Ok(usize::MAX),
                None => Err(Error::UnknownVariable(self.ctx.name(i).to_string())),
            })
            .collect::<Result<_>>()?;
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut m2 = Monomial::one(target.len());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    m2.set(map[i], e as u32);
                }
            }
            out.add_term(m2, c);
        }
        Ok(out)
    }

    /// Terms sorted in decreasing order for `order`.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(Monomial, Rational)> {
        let mut v: Vec<(Monomial, Rational)> =
            self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        v.sort_by(|a, b| order.compare(&b.0, &a.0));
        v
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(Monomial, Rational)> {
        self.terms
            .iter()
            .max_by(|a, b| order.compare(a.0, b.0))
            .map(|(m, c)| (m.clone(), c.clone()))
    }

    /// Divides by the leading coefficient under degrevlex.
    pub fn monic(&self) -> MultiPoly {
        match self.leading_term(&MonomialOrder::degrevlex(self.ctx.len())) {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        if d.is_zero() {
            return None;
        }
        let order = MonomialOrder::lex(self.ctx.len());
        let (lm, lc) = d.leading_term(&order)?;
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.ctx);
        while let Some((m, c)) = rem.leading_term(&order) {
            if !lm.divides(&m) {
                return None;
            }
            let q = lm.quotient_of(&m);
            let qc = &c / &lc;
            quot.add_term(q.clone(), &qc);
            rem = &rem - &d.mul_monomial(&q).scale(&qc);
        }
        Some(quot)
    }

    /// Weighted degree of each term; `None` for the zero polynomial.
    pub fn weighted_degrees(&self, weights: &[Rational]) -> Vec<Rational> {
        self.terms
            .keys()
            .map(|m| {
                let mut acc = Rational::zero();
                for (i, &e) in m.0.iter().enumerate() {
                    if e > 0 {
                        acc += &(&weights[i] * &Rational::from(e as i64));
                    }
                }
                acc
            })
            .collect()
    }

    /// The common weighted degree when all terms share it.
    pub fn weighted_homogeneous_degree(&self, weights: &[Rational]) -> Option<Rational> {
        let degs = self.weighted_degrees(weights);
        let first = degs.first()?.clone();
        degs.iter().all(|d| *d == first).then_some(first)
    }

    /// Printing in the grammar accepted by [`crate::parse::parse_poly`], terms in
    /// decreasing degrevlex order.
    pub fn to_text(&self) -> String {
        let order = MonomialOrder::degrevlex(self.ctx.len());
        let terms = self.sorted_terms(&order);
        let names = self.ctx.names();
        format_terms(&terms, |m| monomial_factors(m, |i| names[i].clone()))
    }
}

pub(crate) fn monomial_factors(m: &Monomial, name: impl Fn(usize) -> String) -> Vec<String> {
    m.0.iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { name(i) } else { format!("{}^{}", name(i), e) })
        .collect()
}

/// Joins signed terms as `a*x^2 - b*y + c`.
pub(crate) fn format_terms(
    terms: &[(Monomial, Rational)],
    factors: impl Fn(&Monomial) -> Vec<String>,
) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let fs = factors(m);
        if fs.is_empty() {
            out.push_str(&abs.to_string());
        } else {
            if !abs.is_one() {
                out.push_str(&abs.to_string());
                out.push('*');
            }
            out.push_str(&fs.join("*"));
        }
    }
    out
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({})", self.to_text())
    }
}

// Operator forms panic on mismatched contexts; the `checked_*` methods report it.
impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_add(rhs).expect("context mismatch")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_sub(rhs).expect("context mismatch")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_mul(rhs).expect("context mismatch")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&Rational::from(-1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn ctx() -> VariableContext {
        VariableContext::base(&["x", "y"]).unwrap()
    }

    #[test]
    fn derivatives_of_cusp() {
        let c = ctx();
        let h = parse_poly("x^2 - y^3", &c).unwrap();
        assert_eq!(h.partial_derivative(0), parse_poly("2*x", &c).unwrap());
        assert_eq!(h.partial_derivative(1), parse_poly("-3*y^2", &c).unwrap());
    }

    #[test]
    fn product_difference_of_squares() {
        let c = ctx();
        let a = parse_poly("x+y", &c).unwrap();
        let b = parse_poly("x-y", &c).unwrap();
        assert_eq!(&a * &b, parse_poly("x^2-y^2", &c).unwrap());
    }

    #[test]
    fn context_mismatch_reported() {
        let a = MultiPoly::var(&ctx(), 0);
        let b = MultiPoly::var(&VariableContext::base(&["u"]).unwrap(), 0);
        assert_eq!(a.checked_add(&b), Err(Error::ContextMismatch));
    }

    #[test]
    fn exact_division() {
        let c = ctx();
        let p = parse_poly("x^3*y - x*y^4", &c).unwrap();
        let d = parse_poly("x^2 - y^3", &c).unwrap();
        assert_eq!(p.div_exact(&d), Some(parse_poly("x*y", &c).unwrap()));
        assert_eq!(d.div_exact(&parse_poly("x", &c).unwrap()), None);
    }

    #[test]
    fn printing() {
        let c = ctx();
        let p = parse_poly("-3*y^2 + 1/2*x + 7", &c).unwrap();
        assert_eq!(p.to_text(), "-3*y^2 + 1/2*x + 7");
        assert_eq!(MultiPoly::zero(&c).to_text(), "0");
    }
}
