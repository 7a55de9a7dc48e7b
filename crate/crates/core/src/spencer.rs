//! The logarithmic Spencer complex of `Θ_{h,q(s)}` and the dual presentation read off
//! its transposed top differential.

use serde_json::{json, Value};

use crate::budget::Budget;
use crate::classify::is_weakly_koszul;
use crate::divisor::{adjugate, subsets, FreeDivisor};
use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::unipoly::UniPoly;
use crate::weyl::{LeftIdealW, WeylContext, WeylElement, WeylMatrix};

/// `c[i][j][m]` with `[δ_i, δ_j] = Σ_m c[i][j][m] δ_m`.
pub type StructureConstants = Vec<Vec<Vec<MultiPoly>>>;

pub fn structure_constants(fd: &FreeDivisor) -> Result<StructureConstants> {
    let d = fd.dimension();
    let ctx = fd.context();
    let a = fd.matrix();
    let adj = adjugate(&a, ctx);
    let det = &fd.saito_det;
    let mut c = vec![vec![vec![MultiPoly::zero(ctx); d]; d]; d];
    for i in 0..d {
        for j in i + 1..d {
            let b = fd.basis[i].bracket(&fd.basis[j]);
            for m in 0..d {
                // row vector b times adj(A), column m
                let mut num = MultiPoly::zero(ctx);
                for (k, bk) in b.iter().enumerate() {
                    num = &num + &(bk * &adj[k][m]);
                }
                let q = num.div_exact(det).ok_or_else(|| {
                    Error::Internal(format!("bracket [δ{}, δ{}] is not in the span of the basis", i + 1, j + 1))
                })?;
                c[j][i][m] = -&q;
                c[i][j][m] = q;
            }
        }
    }
    Ok(c)
}

/// Ranks `C(d, r)` and differentials `ε^{-r}: Sp^{-r} -> Sp^{-r+1}` for `r = 1..d`,
/// acting on row vectors from the right.
#[derive(Clone, Debug)]
pub struct SpencerComplex {
    pub q: UniPoly,
    pub context: WeylContext,
    pub lambdas: Vec<WeylElement>,
    /// `labels[r]` lists the `r`-subsets in lex order.
    pub labels: Vec<Vec<Vec<usize>>>,
    /// `differentials[r - 1]` is `ε^{-r}`, of shape `C(d, r) × C(d, r-1)`.
    pub differentials: Vec<WeylMatrix>,
}

impl SpencerComplex {
    pub fn dimension(&self) -> usize {
        self.lambdas.len()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    pub fn differential(&self, r: usize) -> &WeylMatrix {
        &self.differentials[r - 1]
    }

    pub fn to_json(&self) -> Value {
        let fmt = |s: &[usize]| s.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join("^");
        json!({
            "q": self.q.to_string(),
            "lambdas": self.lambdas.iter().map(WeylElement::to_text).collect::<Vec<_>>(),
            "ranks": self.ranks(),
            "differentials": self.differentials.iter().enumerate().map(|(k, m)| json!({
                "degree": -((k + 1) as i64),
                "rows": self.labels[k + 1].iter().map(|s| fmt(s)).collect::<Vec<_>>(),
                "cols": self.labels[k].iter().map(|s| fmt(s)).collect::<Vec<_>>(),
                "entries": m.to_text_rows(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// `(-1)^n`.
fn sign(n: usize) -> i64 {
    if n.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Sorts `m ∪ rest` and returns the permutation sign, or `None` if `m ∈ rest`.
fn insert_sorted(m: usize, rest: &[usize]) -> Option<(Vec<usize>, i64)> {
    if rest.contains(&m) {
        return None;
    }
    let pos = rest.iter().filter(|&&k| k < m).count();
    let mut out = rest.to_vec();
    out.insert(pos, m);
    Some((out, sign(pos)))
}

pub fn build_spencer(fd: &FreeDivisor, q: &UniPoly) -> Result<SpencerComplex> {
    let ctx = WeylContext::standard(fd.context())?;
    let d = fd.dimension();
    let lambdas = fd.theta_generators_in(&ctx, q)?.elements;
    let c = structure_constants(fd)?;
    let c_w: Vec<Vec<Vec<WeylElement>>> = c
        .iter()
        .map(|ci| {
            ci.iter()
                .map(|cij| cij.iter().map(|p| WeylElement::from_poly(&ctx, p)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let labels: Vec<Vec<Vec<usize>>> = (0..=d).map(|r| subsets(d, r)).collect();
    let mut differentials = Vec::with_capacity(d);
    for r in 1..=d {
        let rows = &labels[r];
        let cols = &labels[r - 1];
        let col_of = |s: &[usize]| cols.iter().position(|c| c.as_slice() == s).expect("subset label");
        let mut m = WeylMatrix::zeros(&ctx, rows.len(), cols.len());
        for (ri, set) in rows.iter().enumerate() {
            for (k, &ik) in set.iter().enumerate() {
                let mut rest = set.clone();
                rest.remove(k);
                let e = &mut m.entries[ri][col_of(&rest)];
                *e = &*e + &lambdas[ik].scale(&sign(k).into());
            }
            for k in 0..set.len() {
                for l in k + 1..set.len() {
                    let rest: Vec<usize> =
                        set.iter().enumerate().filter(|&(p, _)| p != k && p != l).map(|(_, &v)| v).collect();
                    // (k+1) + (l+1) with 1-based positions
                    let base = sign(k + l);
                    for mm in 0..d {
                        let coef = &c_w[set[k]][set[l]][mm];
                        if coef.is_zero() {
                            continue;
                        }
                        if let Some((target, s)) = insert_sorted(mm, &rest) {
                            let e = &mut m.entries[ri][col_of(&target)];
                            *e = &*e + &coef.scale(&(base * s).into());
                        }
                    }
                }
            }
        }
        differentials.push(m);
    }
    Ok(SpencerComplex { q: q.clone(), context: ctx, lambdas, labels, differentials })
}

/// `ε^{-r} ε^{-r+1} = 0` for all `r`.
pub fn check_complex(sp: &SpencerComplex) -> Result<bool> {
    for w in sp.differentials.windows(2) {
        if !w[1].checked_mul(&w[0])?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exactness of `D[s] ⊗ Sp` off degree 0, through the weakly Koszul criterion.
pub fn induced_exactness_criterion(fd: &FreeDivisor, budget: &Budget) -> Result<bool> {
    Ok(is_weakly_koszul(fd, budget)?.0)
}

/// Cyclic presentation of the top Ext of the induced Spencer complex.
#[derive(Clone, Debug)]
pub struct DualPresentation {
    pub q: UniPoly,
    pub relations: LeftIdealW,
    /// Homological degree of the top Ext before the `[d]` shift; 0 after it.
    pub concentration_degree: usize,
    /// The complex was not certified to be a resolution.
    pub heuristic: bool,
}

pub fn dual_presentation(fd: &FreeDivisor, q: &UniPoly, budget: &Budget) -> Result<DualPresentation> {
    let sp = build_spencer(fd, q)?;
    let heuristic = !induced_exactness_criterion(fd, budget)?;
    let d = sp.dimension();
    let top = sp.differential(d);
    let relations: Vec<WeylElement> = (0..top.cols).map(|j| top.get(0, j).transpose()).collect();
    Ok(DualPresentation {
        q: q.clone(),
        relations: LeftIdealW::new(&sp.context, relations)?,
        concentration_degree: d,
        heuristic,
    })
}

/// `-q(s) - 1`.
pub fn dual_exponent(q: &UniPoly) -> UniPoly {
    &(&UniPoly::zero() - q) - &UniPoly::one()
}

/// `J = D[s] Θ_{h,-q-1}` as left ideals.
pub fn verify_duality(fd: &FreeDivisor, q: &UniPoly, budget: &Budget) -> Result<bool> {
    let dp = dual_presentation(fd, q, budget)?;
    let ctx = dp.relations.context().clone();
    let expected = LeftIdealW::new(&ctx, fd.theta_generators_in(&ctx, &dual_exponent(q))?.elements)?;
    dp.relations.equals(&expected, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::VariableContext;
    use crate::divisor::certify;
    use crate::parse::parse_poly;
    use crate::rational::Rational;

    fn fd(vars: &[&str], h: &str) -> FreeDivisor {
        let c = VariableContext::base(vars).unwrap();
        certify(&parse_poly(h, &c).unwrap(), &Budget::default()).unwrap()
    }

    fn w(ctx: &WeylContext, t: &str) -> WeylElement {
        WeylElement::parse(t, ctx).unwrap()
    }

    fn qs() -> Vec<UniPoly> {
        ["s", "s+1", "-s-1", "-s-2"].iter().map(|t| UniPoly::parse(t).unwrap()).collect()
    }

    #[test]
    fn one_variable() {
        let sp = build_spencer(&fd(&["x"], "x"), &UniPoly::s()).unwrap();
        assert_eq!(sp.ranks(), vec![1, 1]);
        assert_eq!(sp.differential(1).get(0, 0), &w(&sp.context, "x*d1 - s"));
        assert!(check_complex(&sp).unwrap());
    }

    #[test]
    fn normal_crossing_is_koszul() {
        let f = fd(&["x", "y"], "x*y");
        assert!(structure_constants(&f).unwrap().iter().flatten().flatten().all(MultiPoly::is_zero));
        let sp = build_spencer(&f, &UniPoly::s()).unwrap();
        let m2 = sp.differential(2);
        let l = &sp.lambdas;
        assert_eq!((m2.rows, m2.cols), (1, 2));
        assert_eq!(m2.get(0, 0), &-&l[1]);
        assert_eq!(m2.get(0, 1), &l[0]);
        assert!(check_complex(&sp).unwrap());
    }

    #[test]
    fn cusp_bracket() {
        let f = fd(&["x", "y"], "x^2 - y^3");
        let c = structure_constants(&f).unwrap();
        // independent check: coefficientwise [δ_i, δ_j] = Σ c^m δ_m
        for i in 0..2 {
            for j in 0..2 {
                let lhs = f.basis[i].bracket(&f.basis[j]);
                for k in 0..2 {
                    let rhs = &(&c[i][j][0] * &f.basis[0].coeffs[k]) + &(&c[i][j][1] * &f.basis[1].coeffs[k]);
                    assert_eq!(lhs[k], rhs);
                }
            }
        }
        assert!(c[0][1].iter().all(|p| p.total_degree().unwrap_or(0) == 0));
        for q in qs() {
            let sp = build_spencer(&f, &q).unwrap();
            assert_eq!(sp.ranks(), vec![1, 2, 1]);
            assert!(check_complex(&sp).unwrap());
        }
    }

    #[test]
    fn complexes_in_three_variables() {
        for h in ["x*y*z", "x*y*(x+y)*(x+z*y)"] {
            let f = fd(&["x", "y", "z"], h);
            for q in qs() {
                let sp = build_spencer(&f, &q).unwrap();
                assert_eq!(sp.ranks(), vec![1, 3, 3, 1]);
                assert!(check_complex(&sp).unwrap(), "{h} q={q}");
            }
        }
    }

    #[test]
    fn corrupted_complex_is_detected() {
        let mut sp = build_spencer(&fd(&["x", "y"], "x^2 - y^3"), &UniPoly::s()).unwrap();
        let e = sp.differentials[1].entries[0][0].clone();
        sp.differentials[1].entries[0][0] = -&e;
        assert!(!check_complex(&sp).unwrap());
    }

    #[test]
    fn dual_presentations() {
        let b = Budget::default();
        let f = fd(&["x"], "x");
        let dp = dual_presentation(&f, &UniPoly::s(), &b).unwrap();
        let ctx = dp.relations.context().clone();
        assert_eq!(dp.relations.generators(), &[w(&ctx, "-x*d1 - s - 1")]);
        assert!(!dp.heuristic);
        assert_eq!(dual_exponent(&UniPoly::s()), UniPoly::parse("-s-1").unwrap());

        let f = fd(&["x", "y"], "x*y");
        let dp = dual_presentation(&f, &UniPoly::s(), &b).unwrap();
        let ctx = dp.relations.context().clone();
        let j = LeftIdealW::new(&ctx, vec![w(&ctx, "x*d1 + s + 1"), w(&ctx, "y*d2 + s + 1")]).unwrap();
        assert!(dp.relations.equals(&j, &b).unwrap());
    }

    #[test]
    fn duality_holds() {
        let b = Budget::default();
        for (vars, h) in [(&["x"][..], "x"), (&["x", "y"][..], "x*y"), (&["x", "y"][..], "x^2 - y^3")] {
            let f = fd(vars, h);
            for q in [UniPoly::s(), UniPoly::parse("s+1").unwrap()] {
                assert!(verify_duality(&f, &q, &b).unwrap(), "{h} q={q}");
            }
        }
    }

    #[test]
    fn specialized_relations_kill_dual_power() {
        let b = Budget::default();
        let f = fd(&["x", "y"], "x^2 - y^3");
        let dp = dual_presentation(&f, &UniPoly::s(), &b).unwrap();
        let c = Rational::new(3, 7);
        // J at s = c annihilates h^{-c-1}
        let target = UniPoly::constant(-&c - &Rational::one());
        for g in dp.relations.generators() {
            let g = g.specialize("s", &c).unwrap();
            assert!(g.apply_to_power(&f.h, &target).unwrap().is_zero());
        }
    }
}
