//! Buchberger engine shared by commutative rings, Weyl algebras and free modules.
//!
//! A ring is described by its number of variables, the Weyl pairs `(x, d)` with
//! `d*x = x*d + 1`, and optionally a set of module component variables. Module
//! elements are encoded as polynomials linear in the component variables; pairs
//! between different components are never formed.
//!
//! Products in the Weyl algebra satisfy `lm(m*g) = m*lm(g)` for every term order,
//! so left reduction and S-polynomials work as in the commutative case. The
//! product criterion only holds when the ring is commutative.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::One;

use crate::budget::Budget;
use crate::error::Result;
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::rational::{binomial, Rational};

#[derive(Clone, Debug)]
pub(crate) struct Ring {
    pub weyl: Vec<(usize, usize)>,
    pub module: Vec<usize>,
    pub order: MonomialOrder,
}

impl Ring {
    pub fn commutative(order: MonomialOrder) -> Self {
        Ring { weyl: Vec::new(), module: Vec::new(), order }
    }

    pub fn weyl(order: MonomialOrder, pairs: Vec<(usize, usize)>) -> Self {
        Ring { weyl: pairs, module: Vec::new(), order }
    }

    pub fn with_module(mut self, components: Vec<usize>) -> Self {
        self.module = components;
        self
    }

    pub fn is_commutative(&self) -> bool {
        self.weyl.is_empty()
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.compare(a, b)
    }

    fn component(&self, m: &Monomial) -> Option<usize> {
        self.module.iter().copied().find(|&i| m.exponent(i) > 0)
    }

    fn compatible(&self, a: &Monomial, b: &Monomial) -> bool {
        self.module.is_empty() || self.component(a) == self.component(b)
    }

    /// Left product of the monomial `m` with the normal-ordered term `t`.
    pub(crate) fn mul_monomials(&self, m: &Monomial, t: &Monomial, out: &mut Vec<(Monomial, BigInt)>) {
        let base = m.mul(t);
        let mut ranges: Vec<(usize, usize, u32, u32)> = Vec::new();
        for &(x, d) in &self.weyl {
            let b = m.exponent(d);
            let c = t.exponent(x);
            if b > 0 && c > 0 {
                ranges.push((x, d, b, c));
            }
        }
        if ranges.is_empty() {
            out.push((base, BigInt::one()));
            return;
        }
        let mut ks = vec![0u32; ranges.len()];
        loop {
            let mut coef = BigInt::one();
            let mut mono = base.clone();
            for (idx, &(x, d, b, c)) in ranges.iter().enumerate() {
                let k = ks[idx];
                if k > 0 {
                    coef *= binomial(b, k) * binomial(c, k) * factorial(k);
                    mono.set(x, mono.exponent(x) - k);
                    mono.set(d, mono.exponent(d) - k);
                }
            }
            out.push((mono, coef));
            // odometer increment
            let mut pos = 0;
            loop {
                if pos == ranges.len() {
                    return;
                }
                let (_, _, b, c) = ranges[pos];
                if ks[pos] < b.min(c) {
                    ks[pos] += 1;
                    break;
                }
                ks[pos] = 0;
                pos += 1;
            }
        }
    }
}

fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Polynomial with terms sorted in decreasing order for the ring's order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Poly {
    pub terms: Vec<(Monomial, Rational)>,
}

impl Poly {
    pub fn from_terms(ring: &Ring, mut terms: Vec<(Monomial, Rational)>) -> Self {
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, Rational)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 += &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &Rational {
        &self.terms[0].1
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0)
    }

    pub fn make_monic(&mut self) {
        if self.terms.is_empty() || self.lc().is_one() {
            return;
        }
        let inv = self.lc().recip();
        for t in &mut self.terms {
            t.1 *= &inv;
        }
    }

    /// `c * m * self` (left multiplication).
    pub fn mul_term(&self, ring: &Ring, m: &Monomial, c: &Rational) -> Poly {
        if ring.is_commutative() || ring.weyl.iter().all(|&(_, d)| m.exponent(d) == 0) {
            // x-monomials on the left keep normal order and the term order
            return Poly { terms: self.terms.iter().map(|(t, a)| (m.mul(t), a * c)).collect() };
        }
        let mut raw = Vec::new();
        let mut scratch = Vec::new();
        for (t, a) in &self.terms {
            scratch.clear();
            ring.mul_monomials(m, t, &mut scratch);
            let ac = a * c;
            for (mono, k) in scratch.drain(..) {
                raw.push((mono, &ac * &Rational::from_int(k)));
            }
        }
        Poly::from_terms(ring, raw)
    }

    pub fn add(&self, ring: &Ring, other: &Poly) -> Poly {
        merge(ring, &self.terms, other, &Rational::one())
    }

    pub fn sub(&self, ring: &Ring, other: &Poly) -> Poly {
        merge(ring, &self.terms, other, &Rational::from(-1))
    }
}

/// `a + c * b` for sorted term lists.
fn merge(ring: &Ring, a: &[(Monomial, Rational)], b: &Poly, c: &Rational) -> Poly {
    let mut out = Vec::with_capacity(a.len() + b.terms.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.terms.len() {
        match ring.cmp(&a[i].0, &b.terms[j].0) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((b.terms[j].0.clone(), &b.terms[j].1 * c));
                j += 1;
            }
            Ordering::Equal => {
                let s = &a[i].1 + &(&b.terms[j].1 * c);
                if !s.is_zero() {
                    out.push((a[i].0.clone(), s));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(b.terms[j..].iter().map(|(m, x)| (m.clone(), x * c)));
    Poly { terms: out }
}

/// Full left normal form of `f` with respect to `basis`.
pub(crate) fn normal_form(ring: &Ring, f: &Poly, basis: &[&Poly], budget: &Budget) -> Result<Poly> {
    let mut rest: Vec<(Monomial, Rational)> = f.terms.clone();
    let mut start = 0;
    let mut out: Vec<(Monomial, Rational)> = Vec::new();
    let mut steps = 0u64;
    while start < rest.len() {
        let (m, c) = &rest[start];
        let reducer = basis.iter().find(|g| g.lm().divides(m));
        match reducer {
            Some(g) => {
                let q = g.lm().quotient_of(m);
                let coef = -(c / g.lc());
                let sub = g.mul_term(ring, &q, &Rational::one());
                let merged = merge(ring, &rest[start..], &sub, &coef);
                budget.check_terms(merged.terms.len())?;
                steps += 1;
                if steps.is_multiple_of(16) {
                    budget.check_clock()?;
                }
                rest = merged.terms;
                start = 0;
            }
            None => {
                out.push(rest[start].clone());
                start += 1;
            }
        }
    }
    Ok(Poly { terms: out })
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

/// Reduced Gröbner basis of the left ideal (or submodule) generated by `gens`.
///
/// The result is monic, inter-reduced and sorted by increasing leading monomial.
pub(crate) fn groebner(ring: &Ring, gens: &[Poly], budget: &Budget) -> Result<Vec<Poly>> {
    let mut state = State { ring, polys: Vec::new(), sugar: Vec::new(), active: Vec::new(), pairs: Vec::new() };
    let mut gens: Vec<Poly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    gens.sort_by(|a, b| ring.cmp(a.lm(), b.lm()));
    for g in gens {
        let basis = state.active_refs();
        let mut h = normal_form(ring, &g, &basis, budget)?;
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        let s = h.degree();
        state.insert(h, s);
    }
    let mut count = 0u64;
    while let Some(pair) = state.next_pair() {
        count += 1;
        budget.charge_pair(count)?;
        let s = state.spoly(&pair);
        let basis = state.active_refs();
        let mut h = normal_form(ring, &s, &basis, budget)?;
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        state.insert(h, pair.sugar);
    }
    // inter-reduce the active elements
    let active: Vec<Poly> = state
        .polys
        .iter()
        .zip(&state.active)
        .filter(|(_, a)| **a)
        .map(|(p, _)| p.clone())
        .collect();
    let mut minimal: Vec<Poly> = Vec::new();
    for (k, p) in active.iter().enumerate() {
        let redundant = active
            .iter()
            .enumerate()
            .any(|(l, q)| l != k && q.lm().divides(p.lm()) && (q.lm() != p.lm() || l < k));
        if !redundant {
            minimal.push(p.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<&Poly> = minimal.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, q)| q).collect();
        let head = Poly { terms: vec![minimal[k].terms[0].clone()] };
        let tail = Poly { terms: minimal[k].terms[1..].to_vec() };
        let tail = normal_form(ring, &tail, &others, budget)?;
        let mut p = head.add(ring, &tail);
        p.make_monic();
        reduced.push(p);
    }
    reduced.sort_by(|a, b| ring.cmp(a.lm(), b.lm()));
    Ok(reduced)
}

struct State<'r> {
    ring: &'r Ring,
    polys: Vec<Poly>,
    sugar: Vec<u32>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl State<'_> {
    fn active_refs(&self) -> Vec<&Poly> {
        self.polys.iter().zip(&self.active).filter(|(_, a)| **a).map(|(p, _)| p).collect()
    }

    fn next_pair(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let ring = self.ring;
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            let better = match a.sugar.cmp(&b.sugar) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => ring.cmp(&a.lcm, &b.lcm) == Ordering::Less,
            };
            if better {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, pair: &Pair) -> Poly {
        let (f, g) = (&self.polys[pair.i], &self.polys[pair.j]);
        let mf = f.lm().quotient_of(&pair.lcm);
        let mg = g.lm().quotient_of(&pair.lcm);
        let a = f.mul_term(self.ring, &mf, &f.lc().recip());
        let b = g.mul_term(self.ring, &mg, &g.lc().recip());
        a.sub(self.ring, &b)
    }

    /// Gebauer–Möller update with the new element `h`.
    fn insert(&mut self, h: Poly, sugar: u32) {
        let ring = self.ring;
        let hi = self.polys.len();
        let hlm = h.lm().clone();
        let commutative = ring.is_commutative();

        let mut cands: Vec<(usize, Monomial, bool)> = Vec::new();
        for (j, p) in self.polys.iter().enumerate() {
            if self.active[j] && ring.compatible(&hlm, p.lm()) {
                let coprime = commutative && hlm.coprime(p.lm());
                cands.push((j, hlm.lcm(p.lm()), coprime));
            }
        }
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        while let Some((j, l, coprime)) = cands.pop() {
            let dominated = cands.iter().chain(kept.iter()).any(|(_, l2, _)| l2.divides(&l));
            if coprime || !dominated {
                kept.push((j, l, coprime));
            }
        }
        // old pairs made redundant by h
        let polys = &self.polys;
        self.pairs.retain(|p| {
            if !hlm.divides(&p.lcm) {
                return true;
            }
            let l1 = polys[p.i].lm().lcm(&hlm);
            let l2 = polys[p.j].lm().lcm(&hlm);
            l1 == p.lcm || l2 == p.lcm
        });
        for (j, l, coprime) in kept {
            if coprime {
                continue;
            }
            let g = &self.polys[j];
            let s = (sugar + hlm.quotient_of(&l).degree()).max(self.sugar[j] + g.lm().quotient_of(&l).degree());
            self.pairs.push(Pair { i: hi, j, lcm: l, sugar: s });
        }
        for (j, p) in self.polys.iter().enumerate() {
            if self.active[j] && hlm.divides(p.lm()) {
                self.active[j] = false;
            }
        }
        self.polys.push(h);
        self.sugar.push(sugar);
        self.active.push(true);
    }
}
