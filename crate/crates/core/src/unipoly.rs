//! Univariate polynomials in `s` over the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::context::VariableContext;
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::MultiPoly;
use crate::rational::{divisors, Rational};

/// Dense coefficients, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The variable `s`.
    pub fn s() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    /// `s - r`.
    pub fn linear(r: &Rational) -> Self {
        Self::new(vec![-r, Rational::one()])
    }

    /// `Π (s - r)^m`.
    pub fn from_roots(roots: &[(Rational, u32)]) -> Self {
        roots.iter().fold(Self::one(), |acc, (r, m)| &acc * &Self::linear(r).pow(*m))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| &(&acc * x) + c)
    }

    /// `self(a*s + b)`.
    pub fn compose_linear(&self, a: &Rational, b: &Rational) -> Self {
        let lin = Self::new(vec![b.clone(), a.clone()]);
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| &(&acc * &lin) + &Self::constant(c.clone()))
    }

    /// Quotient and remainder.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.coeffs.len() - 1;
        let lc = d.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lc;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &(&c * dc);
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn divides(&self, other: &UniPoly) -> bool {
        !self.is_zero() && other.div_rem(self).1.is_zero()
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Rational roots with multiplicities (ascending) and the root-free remainder, monic.
    pub fn rational_roots(&self) -> (Vec<(Rational, u32)>, UniPoly) {
        if self.is_zero() {
            return (vec![], Self::zero());
        }
        let mut rest = self.monic();
        let mut roots: Vec<(Rational, u32)> = Vec::new();
        let push = |r: Rational, roots: &mut Vec<(Rational, u32)>| match roots.iter_mut().find(|(x, _)| *x == r) {
            Some(e) => e.1 += 1,
            None => roots.push((r, 1)),
        };
        while rest.coeffs.first().is_some_and(Rational::is_zero) && rest.degree() > Some(0) {
            rest = Self::new(rest.coeffs[1..].to_vec());
            push(Rational::zero(), &mut roots);
        }
        'outer: loop {
            if rest.degree().unwrap_or(0) == 0 {
                break;
            }
            let ints = rest.integer_coeffs();
            let a0 = ints[0].clone();
            let an = ints.last().unwrap().clone();
            for p in divisors(&a0) {
                for q in divisors(&an) {
                    for sign in [1, -1] {
                        let r = Rational::from(BigInt::from(sign) * &p) / Rational::from(q.clone());
                        if rest.eval(&r).is_zero() {
                            rest = rest.div_rem(&Self::linear(&r)).0;
                            push(r, &mut roots);
                            continue 'outer;
                        }
                    }
                }
            }
            break;
        }
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        (roots, rest)
    }

    /// Primitive integer multiple, positive leading coefficient.
    fn integer_coeffs(&self) -> Vec<BigInt> {
        let lcm = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c.numer() * &lcm) / c.denom()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().is_some_and(|c| c.is_negative()) { -BigInt::one() } else { BigInt::one() };
        ints.into_iter().map(|c| c * &sign / &g).collect()
    }

    /// `b(-s-shift) = ±b(s)` after monic normalisation.
    pub fn check_symmetry(&self, shift: i64) -> bool {
        if self.is_zero() {
            return false;
        }
        let reflected = self.compose_linear(&Rational::from(-1), &Rational::from(-shift)).monic();
        reflected == self.monic()
    }

    /// No integer root `r <= -2`.
    pub fn integer_root_bound(&self) -> bool {
        let (roots, _) = self.rational_roots();
        !roots.iter().any(|(r, _)| r.is_integer() && *r <= Rational::from(-2))
    }

    /// Product of linear factors, e.g. `(s+1)^2*(s+2/3)`, followed by the remainder when not 1.
    pub fn factored_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let (roots, rest) = self.rational_roots();
        let mut parts: Vec<String> = Vec::new();
        let lc = self.leading();
        if !lc.is_one() {
            parts.push(lc.to_string());
        }
        // roots in decreasing order give factors like (s+1)*(s+4/3)
        for (r, m) in roots.iter().rev() {
            let f = if r.is_zero() {
                "s".to_string()
            } else if r.is_negative() {
                format!("(s+{})", -r)
            } else {
                format!("(s-{r})")
            };
            parts.push(if *m == 1 { f } else { format!("{f}^{m}") });
        }
        if rest.degree().unwrap_or(0) > 0 {
            parts.push(format!("({rest})"));
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// Reads a polynomial in the single variable `s`.
    pub fn parse(text: &str) -> Result<Self> {
        let ctx = VariableContext::base(&["s"])?;
        Self::from_multipoly(&crate::parse::parse_poly(text, &ctx)?, 0)
    }

    /// The polynomial `p`, which must only involve variable `var`.
    pub fn from_multipoly(p: &MultiPoly, var: usize) -> Result<Self> {
        let mut coeffs = Vec::new();
        for (m, c) in p.terms() {
            if m.support().any(|i| i != var) {
                return Err(Error::Input(format!("{} is not univariate", p.to_text())));
            }
            let e = m.exponent(var) as usize;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, Rational::zero());
            }
            coeffs[e] = c.clone();
        }
        Ok(Self::new(coeffs))
    }

    /// Embeds the polynomial as a polynomial in variable `var` of `ctx`.
    pub fn to_multipoly(&self, ctx: &VariableContext, var: usize) -> MultiPoly {
        MultiPoly::from_terms(
            ctx,
            self.coeffs.iter().enumerate().map(|(e, c)| (Monomial::var(ctx.len(), var, e as u32), c.clone())),
        )
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ctx = VariableContext::base(&["s"]).expect("valid name");
        f.write_str(&self.to_multipoly(&ctx, 0).to_text())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

impl std::ops::Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Rational::zero();
        UniPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl std::ops::Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &rhs.scale(&Rational::from(-1))
    }
}

impl std::ops::Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        UniPoly::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn roots_of_constructed_inputs() {
        let b = UniPoly::from_roots(&[(q(-1, 1), 2), (q(-2, 3), 1), (q(-4, 3), 1)]);
        let (roots, rest) = b.rational_roots();
        assert_eq!(roots, vec![(q(-4, 3), 1), (q(-1, 1), 2), (q(-2, 3), 1)]);
        assert_eq!(rest, UniPoly::one());

        let p = UniPoly::parse("s^2 + 1").unwrap();
        let (roots, rest) = p.rational_roots();
        assert!(roots.is_empty());
        assert_eq!(rest, p);

        let p = UniPoly::parse("6*s^2 + 13*s + 6").unwrap();
        assert_eq!(p.rational_roots().0, vec![(q(-3, 2), 1), (q(-2, 3), 1)]);
    }

    #[test]
    fn symmetry_examples() {
        assert!(UniPoly::parse("(s+1)^2").unwrap().check_symmetry(2));
        let cusp = UniPoly::from_roots(&[(q(-1, 1), 1), (q(-5, 6), 1), (q(-7, 6), 1)]);
        assert!(cusp.check_symmetry(2));
        assert!(!UniPoly::parse("(s+1)*(s+2)").unwrap().check_symmetry(2));
    }

    #[test]
    fn integer_root_examples() {
        assert!(UniPoly::parse("(s+1)^2").unwrap().integer_root_bound());
        assert!(!UniPoly::parse("(s+1)*(s+2)").unwrap().integer_root_bound());
        let cusp = UniPoly::from_roots(&[(q(-1, 1), 1), (q(-5, 6), 1), (q(-7, 6), 1)]);
        assert!(cusp.integer_root_bound());
    }

    #[test]
    fn printing() {
        let b = UniPoly::from_roots(&[(q(-1, 1), 2), (q(-2, 3), 1), (q(-4, 3), 1)]);
        assert_eq!(b.factored_text(), "(s+2/3)*(s+1)^2*(s+4/3)");
        assert_eq!(UniPoly::parse("(s+1)^2").unwrap().to_string(), "s^2 + 2*s + 1");
        assert_eq!(UniPoly::parse("s*(s^2+1)").unwrap().factored_text(), "s*(s^2 + 1)");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn roots_reconstruct(rs in proptest::collection::vec((-6i64..6, 1i64..5, 1u32..3), 0..4), extra in 0u32..2) {
            let roots: Vec<(Rational, u32)> = rs.iter().map(|&(n, d, m)| (q(n, d), m)).collect();
            let tail = UniPoly::parse("s^2 + 2").unwrap().pow(extra);
            let b = &UniPoly::from_roots(&roots) * &tail;
            let (found, rest) = b.rational_roots();
            prop_assert_eq!(&UniPoly::from_roots(&found) * &rest, b.clone());
            prop_assert_eq!(rest, tail);
        }
    }
}
