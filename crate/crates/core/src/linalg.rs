//! Exact sparse Gaussian elimination over the rationals.

use std::collections::BTreeMap;

use crate::rational::Rational;

/// A sparse row: strictly increasing column indices with nonzero entries.
pub type SparseRow = Vec<(usize, Rational)>;

/// Builds a sparse row from `(column, value)` pairs, summing duplicates.
pub fn sparse_row(entries: impl IntoIterator<Item = (usize, Rational)>) -> SparseRow {
    let mut map: BTreeMap<usize, Rational> = BTreeMap::new();
    for (c, v) in entries {
        *map.entry(c).or_default() += &v;
    }
    map.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// `a - c*b`.
fn axpy(a: &[(usize, Rational)], c: &Rational, b: &[(usize, Rational)]) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, -&(c * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - &(c * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incrementally built row echelon form.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    ncols: usize,
    /// pivot column -> row with leading entry 1 at that column
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, pivots: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Adds a row; returns `false` when it was dependent on earlier rows.
    pub fn insert(&mut self, mut row: SparseRow) -> bool {
        loop {
            let Some((col, lead)) = row.first().cloned() else {
                return false;
            };
            match self.pivots.get(&col) {
                Some(p) => row = axpy(&row, &lead, p),
                None => {
                    let inv = lead.recip();
                    let row: SparseRow = row.into_iter().map(|(c, v)| (c, &v * &inv)).collect();
                    self.pivots.insert(col, row);
                    return true;
                }
            }
        }
    }

    /// Reduces every pivot row against the later pivots.
    fn reduced(&self) -> BTreeMap<usize, SparseRow> {
        let mut done: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for (&col, row) in self.pivots.iter().rev() {
            let mut r = row.clone();
            let mut k = 1;
            while k < r.len() {
                let (c, v) = r[k].clone();
                if let Some(p) = done.get(&c) {
                    r = axpy(&r, &v, p);
                } else {
                    k += 1;
                }
            }
            done.insert(col, r);
        }
        done
    }

    /// Basis of the solution space of `A x = 0` for the inserted rows.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let red = self.reduced();
        let mut out = Vec::new();
        for free in (0..self.ncols).filter(|c| !red.contains_key(c)) {
            let mut v = vec![Rational::zero(); self.ncols];
            v[free] = Rational::one();
            for (&p, row) in &red {
                if let Some((_, x)) = row.iter().find(|(c, _)| *c == free) {
                    v[p] = -x;
                }
            }
            out.push(v);
        }
        out
    }
}

/// One solution of `A x = b`, free variables set to zero.
pub fn solve(rows: &[SparseRow], rhs: &[Rational], ncols: usize) -> Option<Vec<Rational>> {
    let mut ech = Echelon::new(ncols + 1);
    for (row, b) in rows.iter().zip(rhs) {
        let mut r = row.clone();
        if !b.is_zero() {
            r.push((ncols, b.clone()));
        }
        ech.insert(r);
    }
    if ech.pivots.contains_key(&ncols) {
        return None;
    }
    let red = ech.reduced();
    let mut x = vec![Rational::zero(); ncols];
    for (&p, row) in &red {
        if let Some((_, v)) = row.iter().find(|(c, _)| *c == ncols) {
            x[p] = v.clone();
        }
    }
    Some(x)
}

/// Dense convenience wrapper around [`solve`].
pub fn solve_dense(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let ncols = a.first().map_or(0, Vec::len);
    let rows: Vec<SparseRow> =
        a.iter().map(|r| sparse_row(r.iter().cloned().enumerate())).collect();
    solve(&rows, b, ncols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn small_system() {
        let a = vec![vec![r(1), r(2)], vec![r(3), r(4)]];
        let x = solve_dense(&a, &[r(5), r(6)]).unwrap();
        assert_eq!(x, vec![r(-4), Rational::new(9, 2)]);
        let sing = vec![vec![r(1), r(2)], vec![r(2), r(4)]];
        assert!(solve_dense(&sing, &[r(1), r(3)]).is_none());
    }

    #[test]
    fn kernel() {
        let mut e = Echelon::new(3);
        e.insert(sparse_row([(0, r(1)), (1, r(1)), (2, r(1))]));
        e.insert(sparse_row([(1, r(1)), (2, r(-1))]));
        let ns = e.nullspace();
        assert_eq!(ns, vec![vec![r(-2), r(1), r(1)]]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn nullspace_vectors_are_annihilated(m in proptest::collection::vec(proptest::collection::vec(-3i64..4, 5), 1..5)) {
            let mut e = Echelon::new(5);
            for row in &m {
                e.insert(sparse_row(row.iter().map(|&v| r(v)).enumerate()));
            }
            let ns = e.nullspace();
            prop_assert_eq!(ns.len() + e.rank(), 5);
            for v in &ns {
                for row in &m {
                    let dot = row.iter().zip(v).fold(Rational::zero(), |acc, (&a, x)| &acc + &(&r(a) * x));
                    prop_assert!(dot.is_zero());
                }
            }
        }
    }
}
