#![allow(dead_code)]

use std::sync::OnceLock;

use logdiv::{
    certify, parse_poly, Budget, FreeDivisor, GroebnerBasis, Monomial, MonomialOrder, MultiPoly, Rational, UniPoly,
    VariableContext, WeylContext, WeylElement,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestCaseError, TestRunner};

pub fn ctx(vars: &[&str]) -> VariableContext {
    VariableContext::base(vars).unwrap()
}

pub fn poly(vars: &[&str], text: &str) -> MultiPoly {
    parse_poly(text, &ctx(vars)).unwrap()
}

pub fn u(text: &str) -> UniPoly {
    UniPoly::parse(text).unwrap()
}

pub fn small_rational() -> impl Strategy<Value = Rational> + Clone {
    (-5i64..=5, 1i64..=3).prop_map(|(n, d)| Rational::new(n, d))
}

/// Terms `(exponents, coefficient)` with every exponent at most `max_exp`.
pub fn terms(nvars: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Vec<(Vec<u32>, Rational)>> + Clone {
    prop::collection::vec((prop::collection::vec(0..=max_exp, nvars), small_rational()), 0..=max_terms)
}

pub fn multipoly(c: &VariableContext, max_exp: u32, max_terms: usize) -> impl Strategy<Value = MultiPoly> + Clone {
    let c = c.clone();
    terms(c.len(), max_exp, max_terms)
        .prop_map(move |ts| MultiPoly::from_terms(&c, ts.into_iter().map(|(e, r)| (Monomial::from_exponents(&e), r))))
}

/// Operators in `D[s]` over two variables.
pub fn weyl_ctx() -> WeylContext {
    WeylContext::standard(&ctx(&["x", "y"])).unwrap()
}

pub fn weyl_element(w: &WeylContext, max_exp: u32, max_terms: usize) -> impl Strategy<Value = WeylElement> + Clone {
    let w = w.clone();
    terms(w.nvars(), max_exp, max_terms)
        .prop_map(move |ts| WeylElement::from_terms(&w, ts.into_iter().map(|(e, r)| (Monomial::from_exponents(&e), r))))
}

/// Fixed seed unless `PROPTEST_RNG_SEED` is set.
pub fn config(cases: u32) -> Config {
    let base = Config::default();
    let rng_seed = match base.rng_seed {
        RngSeed::Random => RngSeed::Fixed(0x10_9d1f),
        seed => seed,
    };
    Config { cases, failure_persistence: None, rng_seed, ..base }
}

/// Runs a property for `cases` random inputs; returns the failure message if any.
pub fn run_property<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(config(cases));
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

/// The free divisors of the corpus, certified once.
pub fn corpus_divisors() -> &'static [(String, FreeDivisor)] {
    static CELL: OnceLock<Vec<(String, FreeDivisor)>> = OnceLock::new();
    CELL.get_or_init(|| {
        logdiv::corpus::embedded()
            .into_iter()
            .filter(|e| e.free)
            .map(|e| {
                let fd = certify(&e.poly().unwrap(), &Budget::default()).unwrap();
                (e.name, fd)
            })
            .collect()
    })
}

/// `S(f, g)` for the leading terms under `order`.
pub fn s_polynomial(f: &MultiPoly, g: &MultiPoly, order: &MonomialOrder) -> MultiPoly {
    let (mf, cf) = f.leading_term(order).unwrap();
    let (mg, cg) = g.leading_term(order).unwrap();
    let l = mf.lcm(&mg);
    let a = f.mul_monomial(&mf.quotient_of(&l)).scale(&cf.recip());
    let b = g.mul_monomial(&mg.quotient_of(&l)).scale(&cg.recip());
    &a - &b
}

/// Every S-polynomial of the basis reduces to zero.
pub fn buchberger_criterion(gb: &GroebnerBasis, budget: &Budget) -> bool {
    let ps = gb.polys();
    for i in 0..ps.len() {
        for j in i + 1..ps.len() {
            let s = s_polynomial(&ps[i], &ps[j], gb.order());
            if !gb.reduce(&s, budget).unwrap().is_zero() {
                return false;
            }
        }
    }
    true
}
