//! The predicate hierarchy for free divisors: Euler homogeneity, the Koszul
//! family, linear Jacobian type and differential linear type.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::budget::Budget;
use crate::context::{Role, VariableContext};
use crate::divisor::{FreeDivisor, LogDerivation};
use crate::error::{Error, Result};
use crate::ideal::{is_regular_sequence, lift, Ideal};
use crate::linalg::solve_dense;
use crate::poly::MultiPoly;
use crate::rational::Rational;
use crate::weyl::{annihilator_fs, LeftIdealW, WeylContext};

pub const EULER_HOMOGENEOUS: &str = "EulerHom";
pub const STRONG_EULER_AT_0: &str = "StrongEuler@0";
pub const KOSZUL: &str = "Koszul";
pub const WEAKLY_KOSZUL: &str = "WeaklyKoszul";
pub const STRONGLY_KOSZUL: &str = "StronglyKoszul";
pub const LJT: &str = "LJT";
pub const DLT: &str = "DLT";

/// Outcome of the linear Jacobian type test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LjtVerdict {
    True,
    TrueAtOriginOnly,
    False,
}

impl LjtVerdict {
    pub fn holds_at_origin(self) -> bool {
        self != LjtVerdict::False
    }
}

/// How differential linear type is decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DltMode {
    /// Strongly Koszul, valid for weakly Koszul divisors.
    ViaEquivalence,
    /// Compare `ann h^s` with `D[s] Θ_{h,s}`.
    Direct,
}

/// `Q[x, s, xi]` for a divisor in `Q[x]`.
pub fn symbol_context(base: &VariableContext) -> Result<VariableContext> {
    let mut vars: Vec<(String, Role)> = base.names().iter().map(|n| (n.clone(), Role::Base)).collect();
    vars.push(("s".into(), Role::Central));
    vars.extend((1..=base.len()).map(|i| (format!("xi{i}"), Role::Symbol)));
    VariableContext::new(&vars)
}

/// Grading `x: 0`, `s: 1`, `xi: 1`.
fn symbol_weights(d: usize) -> Vec<Rational> {
    (0..2 * d + 1).map(|i| Rational::from(i64::from(i >= d))).collect()
}

/// `σ(δ) = Σ a_j xi_j`.
pub fn symbol(der: &LogDerivation, sym: &VariableContext) -> Result<MultiPoly> {
    let d = der.coeffs.len();
    let mut acc = MultiPoly::zero(sym);
    for (j, a) in der.coeffs.iter().enumerate() {
        acc = &acc + &(&a.embed(sym)? * &MultiPoly::var(sym, d + 1 + j));
    }
    Ok(acc)
}

fn symbols(fd: &FreeDivisor, sym: &VariableContext) -> Result<Vec<MultiPoly>> {
    fd.basis.iter().map(|b| symbol(b, sym)).collect()
}

/// `σ(δ_i) - α_i s`.
fn shifted_symbols(fd: &FreeDivisor, sym: &VariableContext) -> Result<Vec<MultiPoly>> {
    let s = MultiPoly::var(sym, fd.dimension());
    fd.basis
        .iter()
        .map(|b| Ok(&symbol(b, sym)? - &(&b.alpha.embed(sym)? * &s)))
        .collect()
}

fn texts(ps: &[MultiPoly]) -> Vec<String> {
    ps.iter().map(MultiPoly::to_text).collect()
}

/// `h ∈ (h_1, ..., h_d)`, with the Euler field as witness.
pub fn is_euler_homogeneous(fd: &FreeDivisor, budget: &Budget) -> Result<(bool, Option<LogDerivation>)> {
    let h = &fd.h;
    let partials: Vec<MultiPoly> = (0..fd.dimension()).map(|i| h.partial_derivative(i)).collect();
    Ok(match lift(h, &partials, budget)? {
        Some(cofactors) => (true, Some(LogDerivation::new(cofactors, MultiPoly::one(h.context())))),
        None => (false, None),
    })
}

/// Strong Euler homogeneity at 0.
///
/// With a basis at 0, a field `χ = Σ c_i δ_i` satisfies `χ(h) = h` up to a unit and
/// `χ(0) = 0` iff `v = c(0)` solves `Σ v_i α_i(0) = 1`, `Σ v_i a_ij(0) = 0`; the
/// unit is then absorbed into the `c_i`.
pub fn is_strongly_euler_at_origin(fd: &FreeDivisor) -> (bool, Option<LogDerivation>) {
    let d = fd.dimension();
    let mut rows = vec![fd.basis.iter().map(|b| b.alpha.eval_origin()).collect::<Vec<_>>()];
    let mut rhs = vec![Rational::one()];
    for j in 0..d {
        rows.push(fd.basis.iter().map(|b| b.coeffs[j].eval_origin()).collect());
        rhs.push(Rational::zero());
    }
    match solve_dense(&rows, &rhs) {
        Some(v) => {
            let cs: Vec<MultiPoly> = v.into_iter().map(|c| MultiPoly::constant(fd.context(), c)).collect();
            (true, Some(LogDerivation::combine(&cs, &fd.basis)))
        }
        None => (false, None),
    }
}

/// Regularity of a sequence in the symbol ring together with its witness.
fn regular(seq: Vec<MultiPoly>, d: usize, budget: &Budget) -> Result<(bool, Value)> {
    let sym = seq[0].context().clone();
    let ok = is_regular_sequence(&seq, &symbol_weights(d), budget)?;
    let dim = Ideal::new(&sym, seq.clone())?.krull_dimension(budget)?;
    Ok((
        ok,
        json!({
            "sequence": texts(&seq),
            "ambient_dimension": sym.len(),
            "quotient_dimension": dim,
            "expected_dimension": sym.len() as i64 - seq.len() as i64,
        }),
    ))
}

pub fn is_koszul(fd: &FreeDivisor, budget: &Budget) -> Result<(bool, Value)> {
    let sym = symbol_context(fd.context())?;
    regular(symbols(fd, &sym)?, fd.dimension(), budget)
}

pub fn is_weakly_koszul(fd: &FreeDivisor, budget: &Budget) -> Result<(bool, Value)> {
    let sym = symbol_context(fd.context())?;
    regular(shifted_symbols(fd, &sym)?, fd.dimension(), budget)
}

pub fn is_strongly_koszul(fd: &FreeDivisor, budget: &Budget) -> Result<(bool, Value)> {
    let sym = symbol_context(fd.context())?;
    let mut seq = vec![fd.h.embed(&sym)?];
    seq.extend(shifted_symbols(fd, &sym)?);
    regular(seq, fd.dimension(), budget)
}

/// Kernel of `Q[x, s, xi] -> Rees(J)`, `s -> h t`, `xi_i -> h_i t`, by eliminating `t`.
pub fn rees_kernel(h: &MultiPoly, budget: &Budget) -> Result<Ideal> {
    let base = h.context();
    let d = base.len();
    let sym = symbol_context(base)?;
    let tname = sym.fresh_name("t");
    let big = sym.extend(&[(tname.as_str(), Role::Auxiliary)])?;
    let t = MultiPoly::var(&big, 2 * d + 1);
    let hb = h.embed(&big)?;
    let mut gens = vec![&MultiPoly::var(&big, d) - &(&t * &hb)];
    for i in 0..d {
        gens.push(&MultiPoly::var(&big, d + 1 + i) - &(&t * &hb.partial_derivative(i)));
    }
    Ideal::new(&big, gens)?.eliminate(&[2 * d + 1], budget)?.embed(&sym)
}

/// Compares the Rees kernel with its linear part `K1 = (σ(δ_i) - α_i s)`.
pub fn is_linear_jacobian_type(fd: &FreeDivisor, budget: &Budget) -> Result<(LjtVerdict, Value)> {
    let sym = symbol_context(fd.context())?;
    let d = fd.dimension();
    let k = rees_kernel(&fd.h, budget)?;
    let k1 = Ideal::new(&sym, shifted_symbols(fd, &sym)?)?;
    let mut witness = json!({
        "rees_kernel": texts(k.gb(budget)?.polys()),
        "linear_part": texts(k1.generators()),
    });
    if !k.contains_ideal(&k1, budget)? {
        return Err(Error::Internal("linear relations outside the Rees kernel".into()));
    }
    if k1.contains_ideal(&k, budget)? {
        witness["comparison"] = json!("equal");
        return Ok((LjtVerdict::True, witness));
    }
    // 0 ∉ Supp(K/K1) iff (K1 : K) ∩ Q[x] has an element with nonzero value at 0
    let quotient = k1.quotient(&k, budget)?;
    let drop: Vec<usize> = (d..2 * d + 1).collect();
    let restricted = quotient.eliminate(&drop, budget)?;
    let unit_at_0 = restricted.generators().iter().find(|g| !g.eval_origin().is_zero());
    witness["comparison"] = json!("different");
    witness["annihilator_in_x"] = json!(texts(restricted.generators()));
    Ok(match unit_at_0 {
        Some(g) => {
            witness["nonvanishing_at_0"] = json!(g.to_text());
            (LjtVerdict::TrueAtOriginOnly, witness)
        }
        None => (LjtVerdict::False, witness),
    })
}

/// `ann_{D[s]} h^s` compared with `D[s] Θ_{h,s}`, or the strongly Koszul shortcut.
pub fn is_differential_linear_type(fd: &FreeDivisor, mode: DltMode, budget: &Budget) -> Result<(bool, Value)> {
    match mode {
        DltMode::ViaEquivalence => {
            let (wk, _) = is_weakly_koszul(fd, budget)?;
            if !wk {
                return Err(Error::Precondition("the equivalence route needs a weakly Koszul divisor".into()));
            }
            let (sk, _) = is_strongly_koszul(fd, budget)?;
            Ok((sk, json!({"mode": mode, "strongly_koszul": sk})))
        }
        DltMode::Direct => {
            let ctx = WeylContext::standard(fd.context())?;
            let ann = annihilator_fs(&fd.h, budget)?;
            let theta = LeftIdealW::new(&ctx, fd.theta_generators(&crate::unipoly::UniPoly::s())?.elements)?;
            let equal = ann.equals(&theta, budget)?;
            Ok((
                equal,
                json!({
                    "mode": mode,
                    "annihilator_basis": ann.gb(budget)?.iter().map(|g| g.to_text()).collect::<Vec<_>>(),
                    "theta_basis": theta.gb(budget)?.iter().map(|g| g.to_text()).collect::<Vec<_>>(),
                }),
            ))
        }
    }
}

/// A flag that could not be decided within the budget.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum FlagValue {
    Bool(bool),
    Ljt(LjtVerdict),
    NotCertified(String),
}

impl FlagValue {
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            FlagValue::Bool(b) => Some(*b),
            FlagValue::Ljt(v) => Some(v.holds_at_origin()),
            FlagValue::NotCertified(_) => None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PredicateResult {
    pub value: FlagValue,
    pub witness: Value,
    pub cpu_budget_used: u64,
}

/// One entry per predicate, keyed by name.
#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub flags: BTreeMap<String, PredicateResult>,
}

impl ClassificationReport {
    pub fn flag(&self, name: &str) -> Option<bool> {
        self.flags.get(name).and_then(|p| p.value.as_bool())
    }

    pub fn ljt(&self) -> Option<LjtVerdict> {
        match self.flags.get(LJT).map(|p| &p.value) {
            Some(FlagValue::Ljt(v)) => Some(*v),
            _ => None,
        }
    }

    /// Known implications among decided flags; returns the violated ones.
    pub fn consistency_violations(&self) -> Vec<String> {
        let f = |n: &str| self.flag(n);
        let mut out = Vec::new();
        let implies = |a: Option<bool>, b: Option<bool>| !(a == Some(true) && b == Some(false));
        if !implies(f(STRONGLY_KOSZUL), f(KOSZUL)) {
            out.push("StronglyKoszul => Koszul".to_string());
        }
        if !implies(f(KOSZUL), f(WEAKLY_KOSZUL)) {
            out.push("Koszul => WeaklyKoszul".to_string());
        }
        if let (Some(sk), Some(ljt)) = (f(STRONGLY_KOSZUL), self.ljt()) {
            if sk != ljt.holds_at_origin() {
                out.push("StronglyKoszul <=> LJT at 0".to_string());
            }
        }
        if let Some(ljt) = self.ljt() {
            if ljt.holds_at_origin() && f(STRONG_EULER_AT_0) == Some(false) {
                out.push("LJT => StrongEuler@0".to_string());
            }
        }
        let direct = self
            .flags
            .get(DLT)
            .is_some_and(|p| p.witness.get("mode").and_then(Value::as_str) == Some("direct"));
        if direct {
            if let (Some(dlt), Some(wk), Some(sk)) = (f(DLT), f(WEAKLY_KOSZUL), f(STRONGLY_KOSZUL)) {
                if (dlt && wk) != sk {
                    out.push("(DLT and WeaklyKoszul) <=> StronglyKoszul".to_string());
                }
            }
        }
        out
    }
}

fn record<T>(
    flags: &mut BTreeMap<String, PredicateResult>,
    name: &str,
    budget: &Budget,
    run: impl FnOnce() -> Result<T>,
    to_flag: impl FnOnce(T) -> (FlagValue, Value),
) -> Result<()> {
    let before = budget.pairs_used();
    let (value, witness) = match run() {
        Ok(v) => to_flag(v),
        Err(Error::Budget(msg)) => (FlagValue::NotCertified(format!("budget: {msg}")), Value::Null),
        Err(Error::Precondition(msg)) => (FlagValue::NotCertified(msg), Value::Null),
        Err(e) => return Err(e),
    };
    flags.insert(
        name.to_string(),
        PredicateResult { value, witness, cpu_budget_used: budget.pairs_used() - before },
    );
    Ok(())
}

/// Runs every predicate, cheap dimension tests first, and checks the known implications.
pub fn classify(fd: &FreeDivisor, dlt_mode: DltMode, budget: &Budget) -> Result<ClassificationReport> {
    let mut flags = BTreeMap::new();
    let der_text = |o: Option<LogDerivation>| o.map(|c| json!(c.to_text())).unwrap_or(Value::Null);
    record(&mut flags, KOSZUL, budget, || is_koszul(fd, budget), |(b, w)| (FlagValue::Bool(b), w))?;
    record(&mut flags, WEAKLY_KOSZUL, budget, || is_weakly_koszul(fd, budget), |(b, w)| (FlagValue::Bool(b), w))?;
    record(&mut flags, STRONGLY_KOSZUL, budget, || is_strongly_koszul(fd, budget), |(b, w)| {
        (FlagValue::Bool(b), w)
    })?;
    record(&mut flags, EULER_HOMOGENEOUS, budget, || is_euler_homogeneous(fd, budget), |(b, w)| {
        (FlagValue::Bool(b), json!({"euler_field": der_text(w)}))
    })?;
    record(&mut flags, STRONG_EULER_AT_0, budget, || Ok(is_strongly_euler_at_origin(fd)), |(b, w)| {
        (FlagValue::Bool(b), json!({"vanishing_euler_field": der_text(w)}))
    })?;
    record(&mut flags, LJT, budget, || is_linear_jacobian_type(fd, budget), |(v, w)| (FlagValue::Ljt(v), w))?;
    record(&mut flags, DLT, budget, || is_differential_linear_type(fd, dlt_mode, budget), |(b, w)| {
        (FlagValue::Bool(b), w)
    })?;
    let report = ClassificationReport { flags };
    let violations = report.consistency_violations();
    if !violations.is_empty() {
        return Err(Error::Internal(format!("predicate implications violated: {}", violations.join(", "))));
    }
    Ok(report)
}

/// `h` viewed in one more variable, i.e. the divisor `D × C`.
pub fn product_with_line(h: &MultiPoly) -> Result<MultiPoly> {
    let base = h.context();
    let name = base.fresh_name("z");
    let big = base.extend(&[(name.as_str(), Role::Base)])?;
    h.embed(&big)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisor::certify;
    use crate::parse::parse_poly;

    fn fd(vars: &[&str], h: &str) -> FreeDivisor {
        let c = VariableContext::base(vars).unwrap();
        certify(&parse_poly(h, &c).unwrap(), &Budget::default()).unwrap()
    }

    #[test]
    fn euler_fields() {
        let b = Budget::default();
        let cusp = fd(&["x", "y"], "x^2 - y^3");
        let (ok, w) = is_euler_homogeneous(&cusp, &b).unwrap();
        assert!(ok);
        assert_eq!(w.unwrap().to_text(), "1/2*x*d1 + 1/3*y*d2");
        assert!(is_strongly_euler_at_origin(&cusp).0);
        let xy = fd(&["x", "y"], "x*y");
        assert!(is_euler_homogeneous(&xy, &b).unwrap().0);
        assert!(is_strongly_euler_at_origin(&xy).0);
        assert!(is_strongly_euler_at_origin(&fd(&["x"], "x")).0);
    }

    #[test]
    fn koszul_family_small() {
        let b = Budget::default();
        for (vars, h) in [(&["x", "y"][..], "x^2 - y^3"), (&["x", "y"][..], "x*y")] {
            let f = fd(vars, h);
            assert!(is_koszul(&f, &b).unwrap().0);
            assert!(is_weakly_koszul(&f, &b).unwrap().0);
            assert!(is_strongly_koszul(&f, &b).unwrap().0);
        }
    }

    #[test]
    fn rees_kernels() {
        let b = Budget::default();
        let c = VariableContext::base(&["x"]).unwrap();
        let k = rees_kernel(&parse_poly("x", &c).unwrap(), &b).unwrap();
        let sym = symbol_context(&c).unwrap();
        assert_eq!(k.gb(&b).unwrap().polys(), &[parse_poly("x*xi1 - s", &sym).unwrap()]);

        let c = VariableContext::base(&["x", "y"]).unwrap();
        let sym = symbol_context(&c).unwrap();
        let k = rees_kernel(&parse_poly("x*y", &c).unwrap(), &b).unwrap();
        assert!(k.contains(&parse_poly("x*xi1 - s", &sym).unwrap(), &b).unwrap());
        assert!(k.contains(&parse_poly("y*xi2 - s", &sym).unwrap(), &b).unwrap());
        let k = rees_kernel(&parse_poly("x^2 - y^3", &c).unwrap(), &b).unwrap();
        assert!(k.contains(&parse_poly("-3*y^2*xi1 - 2*x*xi2", &sym).unwrap(), &b).unwrap());
        assert!(k.contains(&parse_poly("1/2*x*xi1 + 1/3*y*xi2 - s", &sym).unwrap(), &b).unwrap());
        assert_eq!(k.krull_dimension(&b).unwrap(), 3);
    }

    #[test]
    fn cusp_classifies_fully() {
        let b = Budget::default();
        let report = classify(&fd(&["x", "y"], "x^2 - y^3"), DltMode::Direct, &b).unwrap();
        for name in [EULER_HOMOGENEOUS, STRONG_EULER_AT_0, KOSZUL, WEAKLY_KOSZUL, STRONGLY_KOSZUL, DLT] {
            assert_eq!(report.flag(name), Some(true), "{name}");
        }
        assert_eq!(report.ljt(), Some(LjtVerdict::True));
    }

    #[test]
    fn product_with_line_adds_a_variable() {
        let c = VariableContext::base(&["x", "y"]).unwrap();
        let h = product_with_line(&parse_poly("x*y", &c).unwrap()).unwrap();
        assert_eq!(h.context().names(), &["x", "y", "z"]);
        let f = certify(&h, &Budget::default()).unwrap();
        assert!(is_strongly_koszul(&f, &Budget::default()).unwrap().0);
    }
}
