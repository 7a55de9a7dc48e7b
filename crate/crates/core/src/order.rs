//! Monomial orders.
//!
//! Every order is compiled to a list of integer weight rows; two monomials are
//! compared by the first row on which their weights differ, falling back to
//! lexicographic comparison of the exponent vectors when all rows agree.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::monomial::Monomial;

/// How a monomial order is built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderKind {
    Lex,
    DegRevLex,
    /// Weighted degree, ties broken by `tie`. Weights are indexed like the
    /// variables the order applies to.
    Weighted { weights: Vec<i64>, tie: Box<OrderKind> },
    /// Blocks of variables (global indices), compared block after block.
    Block(Vec<(Vec<usize>, OrderKind)>),
}

type Row = Vec<(usize, i64)>;

#[derive(Clone, Debug)]
pub struct MonomialOrder {
    kind: OrderKind,
    nvars: usize,
    rows: Arc<[Row]>,
}

impl PartialEq for MonomialOrder {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.kind == other.kind
    }
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, nvars: usize) -> Result<Self> {
        let all: Vec<usize> = (0..nvars).collect();
        let rows = compile(&kind, &all)?;
        let order = MonomialOrder { kind, nvars, rows: rows.into() };
        order.validate()?;
        Ok(order)
    }

    pub fn lex(nvars: usize) -> Self {
        Self::new(OrderKind::Lex, nvars).expect("lex is admissible")
    }

    pub fn degrevlex(nvars: usize) -> Self {
        Self::new(OrderKind::DegRevLex, nvars).expect("degrevlex is admissible")
    }

    /// Weighted degree refined by degrevlex.
    pub fn weighted(weights: Vec<i64>) -> Result<Self> {
        let n = weights.len();
        Self::new(OrderKind::Weighted { weights, tie: Box::new(OrderKind::DegRevLex) }, n)
    }

    /// Elimination order: `first` block dominates, each block degrevlex.
    pub fn elimination(nvars: usize, first: &[usize]) -> Self {
        let rest: Vec<usize> = (0..nvars).filter(|i| !first.contains(i)).collect();
        let mut blocks = Vec::new();
        if !first.is_empty() {
            blocks.push((first.to_vec(), OrderKind::DegRevLex));
        }
        if !rest.is_empty() {
            blocks.push((rest, OrderKind::DegRevLex));
        }
        Self::new(OrderKind::Block(blocks), nvars).expect("block degrevlex is admissible")
    }

    pub fn kind(&self) -> &OrderKind {
        &self.kind
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        for row in self.rows.iter() {
            let mut wa = 0i64;
            let mut wb = 0i64;
            for &(i, w) in row {
                wa += w * a.0[i] as i64;
                wb += w * b.0[i] as i64;
            }
            match wa.cmp(&wb) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        a.0.cmp(&b.0)
    }

    /// A term order needs the first nonzero weight of every variable to be positive.
    fn validate(&self) -> Result<()> {
        for v in 0..self.nvars {
            for row in self.rows.iter() {
                let w: i64 = row.iter().filter(|(i, _)| *i == v).map(|(_, w)| *w).sum();
                if w < 0 {
                    return Err(Error::InadmissibleOrder(format!(
                        "variable {v} has a negative leading weight"
                    )));
                }
                if w > 0 {
                    break;
                }
            }
        }
        Ok(())
    }
}

fn compile(kind: &OrderKind, vars: &[usize]) -> Result<Vec<Row>> {
    Ok(match kind {
        OrderKind::Lex => vars.iter().map(|&v| vec![(v, 1)]).collect(),
        OrderKind::DegRevLex => {
            let mut rows = vec![vars.iter().map(|&v| (v, 1)).collect::<Row>()];
            rows.extend(vars.iter().rev().take(vars.len().saturating_sub(1)).map(|&v| vec![(v, -1)]));
            rows
        }
        OrderKind::Weighted { weights, tie } => {
            if weights.len() != vars.len() {
                return Err(Error::InadmissibleOrder(format!(
                    "{} weights for {} variables",
                    weights.len(),
                    vars.len()
                )));
            }
            let mut rows = vec![vars.iter().zip(weights).map(|(&v, &w)| (v, w)).collect::<Row>()];
            rows.extend(compile(tie, vars)?);
            rows
        }
        OrderKind::Block(blocks) => {
            let mut rows = Vec::new();
            for (block, sub) in blocks {
                let global: Vec<usize> = block
                    .iter()
                    .map(|&i| {
                        vars.get(i).copied().ok_or_else(|| {
                            Error::InadmissibleOrder(format!("block index {i} out of range"))
                        })
                    })
                    .collect::<Result<_>>()?;
                rows.extend(compile(sub, &global)?);
            }
            rows
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn degrevlex_convention() {
        let o = MonomialOrder::degrevlex(2);
        assert_eq!(o.compare(&m(&[2, 1]), &m(&[1, 2])), Ordering::Greater);
        let o = MonomialOrder::degrevlex(3);
        // x*z < y^2 in degrevlex
        assert_eq!(o.compare(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
    }

    #[test]
    fn weighted_by_symbol_degree() {
        // variables (x, s, xi): weights x:0, s:1, xi:1
        let o = MonomialOrder::weighted(vec![0, 1, 1]).unwrap();
        assert_eq!(o.compare(&m(&[5, 1, 0]), &m(&[0, 0, 2])), Ordering::Less);
    }

    #[test]
    fn block_elimination_dominance() {
        // variables (x, xi, s): block (x, xi) degrevlex, then s
        let o = MonomialOrder::new(
            OrderKind::Block(vec![(vec![0, 1], OrderKind::DegRevLex), (vec![2], OrderKind::Lex)]),
            3,
        )
        .unwrap();
        assert_eq!(o.compare(&m(&[0, 0, 9]), &m(&[1, 0, 0])), Ordering::Less);
    }

    #[test]
    fn negative_weights_rejected() {
        assert!(MonomialOrder::weighted(vec![-1, 1]).is_err());
    }

    fn orders() -> Vec<MonomialOrder> {
        vec![
            MonomialOrder::lex(3),
            MonomialOrder::degrevlex(3),
            MonomialOrder::weighted(vec![0, 2, 1]).unwrap(),
            MonomialOrder::elimination(3, &[2]),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn order_axioms(a in proptest::collection::vec(0u32..5, 3),
                        b in proptest::collection::vec(0u32..5, 3),
                        c in proptest::collection::vec(0u32..5, 3)) {
            let (a, b, c) = (m(&a), m(&b), m(&c));
            for o in orders() {
                // totality and antisymmetry
                let ab = o.compare(&a, &b);
                prop_assert_eq!(ab, o.compare(&b, &a).reverse());
                prop_assert_eq!(ab == Ordering::Equal, a == b);
                // multiplicativity
                prop_assert_eq!(o.compare(&a.mul(&c), &b.mul(&c)), ab);
                // 1 is minimal
                prop_assert!(o.compare(&Monomial::one(3), &a) != Ordering::Greater);
            }
        }
    }
}
