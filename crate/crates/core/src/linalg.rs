//! Exact sparse Gaussian elimination over a coefficient field.
//!
//! Pivots are chosen deterministically: each incoming row is reduced against
//! the existing pivot rows on its leading column until its leading column has
//! no pivot, which then becomes a new pivot.

use std::collections::BTreeMap;

use crate::scalar::Coefficient;

pub type SparseRow<S> = BTreeMap<usize, S>;

/// A linear system `A x = b` stored row by row.
#[derive(Clone, Debug, Default)]
pub struct SparseSystem<S> {
    ncols: usize,
    rows: Vec<(SparseRow<S>, S)>,
}

/// Row-echelon form with unit leading coefficients, keyed by pivot column.
#[derive(Clone, Debug)]
pub struct Echelon<S> {
    ncols: usize,
    pivots: BTreeMap<usize, (SparseRow<S>, S)>,
    consistent: bool,
}

fn axpy<S: Coefficient>(row: &mut SparseRow<S>, rhs: &mut S, factor: &S, other: &SparseRow<S>, other_rhs: &S) {
    for (&c, v) in other {
        let e = row.entry(c).or_insert_with(S::zero);
        *e = e.clone() - factor.clone() * v.clone();
        if e.is_zero() {
            row.remove(&c);
        }
    }
    *rhs = rhs.clone() - factor.clone() * other_rhs.clone();
}

impl<S: Coefficient> SparseSystem<S> {
    pub fn new(ncols: usize) -> Self {
        SparseSystem { ncols, rows: Vec::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn push_row(&mut self, row: SparseRow<S>, rhs: S) {
        debug_assert!(row.keys().all(|&c| c < self.ncols));
        let row = row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        self.rows.push((row, rhs));
    }

    pub fn echelon(&self) -> Echelon<S> {
        let mut pivots: BTreeMap<usize, (SparseRow<S>, S)> = BTreeMap::new();
        let mut consistent = true;
        for (row, rhs) in &self.rows {
            let (mut row, mut rhs) = (row.clone(), rhs.clone());
            while let Some((prow, prhs)) = row.keys().next().and_then(|lead| pivots.get(lead)) {
                let f = row.values().next().cloned().unwrap_or_else(S::zero);
                axpy(&mut row, &mut rhs, &f, prow, prhs);
            }
            match row.iter().next().map(|(&c, v)| (c, v.clone())) {
                None => {
                    if !rhs.is_zero() {
                        consistent = false;
                    }
                }
                Some((lead, lv)) => {
                    let inv = S::one() / lv;
                    let row: SparseRow<S> = row.into_iter().map(|(c, v)| (c, v * inv.clone())).collect();
                    pivots.insert(lead, (row, rhs * inv));
                }
            }
        }
        Echelon { ncols: self.ncols, pivots, consistent }
    }

    /// A particular solution (free variables set to zero), or `None` when
    /// the system is inconsistent.
    pub fn solve(&self) -> Option<Vec<S>> {
        self.echelon().solution()
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    /// Checks `A x = b` exactly.
    pub fn satisfied_by(&self, x: &[S]) -> bool {
        self.rows.iter().all(|(row, rhs)| {
            let lhs = row.iter().fold(S::zero(), |acc, (&c, v)| acc + v.clone() * x[c].clone());
            lhs == *rhs
        })
    }
}

impl<S: Coefficient> Echelon<S> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_consistent(&self) -> bool {
        self.consistent
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    pub fn solution(&self) -> Option<Vec<S>> {
        if !self.consistent {
            return None;
        }
        let mut x = vec![S::zero(); self.ncols];
        for (&p, (row, rhs)) in self.pivots.iter().rev() {
            let tail = row.range(p + 1..).fold(S::zero(), |acc, (&c, v)| acc + v.clone() * x[c].clone());
            x[p] = rhs.clone() - tail;
        }
        Some(x)
    }
}

/// Rank of a list of sparse vectors.
pub fn rank_of<S: Coefficient>(ncols: usize, vectors: impl IntoIterator<Item = SparseRow<S>>) -> usize {
    let mut sys = SparseSystem::new(ncols);
    for v in vectors {
        sys.push_row(v, S::zero());
    }
    sys.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussRational as Q;
    use num_rational::BigRational;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn row(entries: &[(usize, i64)]) -> SparseRow<Q> {
        entries.iter().map(|&(c, v)| (c, Q::from_ints(v, 0))).collect()
    }

    #[test]
    fn solves_small_system() {
        // x + y = 3, x - y = 1
        let mut s = SparseSystem::new(2);
        s.push_row(row(&[(0, 1), (1, 1)]), Q::from_ints(3, 0));
        s.push_row(row(&[(0, 1), (1, -1)]), Q::from_ints(1, 0));
        assert_eq!(s.solve().unwrap(), vec![Q::from_ints(2, 0), Q::from_ints(1, 0)]);
    }

    #[test]
    fn detects_inconsistency() {
        let mut s = SparseSystem::new(2);
        s.push_row(row(&[(0, 1), (1, 1)]), Q::from_ints(3, 0));
        s.push_row(row(&[(0, 2), (1, 2)]), Q::from_ints(5, 0));
        assert!(s.solve().is_none());
        assert_eq!(s.rank(), 1);
    }

    #[test]
    fn complex_pivots() {
        // i x = 1
        let mut s = SparseSystem::new(1);
        s.push_row([(0, Q::i())].into_iter().collect(), Q::from_ints(1, 0));
        assert_eq!(s.solve().unwrap(), vec![Q::from_ints(0, -1)]);
    }

    /// Dense Gauss–Jordan with row swaps over BigRational, used as an
    /// independent rank oracle.
    fn dense_rank(mut m: Vec<Vec<BigRational>>) -> usize {
        let rows = m.len();
        let cols = if rows == 0 { 0 } else { m[0].len() };
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
            m.swap(r, p);
            let pv = m[r][c].clone();
            for v in m[r].iter_mut() {
                *v = v.clone() / pv.clone();
            }
            for i in 0..rows {
                if i != r && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    let pivot_row = m[r].clone();
                    for (x, p) in m[i].iter_mut().zip(pivot_row) {
                        *x = x.clone() - p * f.clone();
                    }
                }
            }
            r += 1;
        }
        r
    }

    proptest! {
        #[test]
        fn agrees_with_dense_oracle(
            entries in proptest::collection::vec(proptest::collection::vec(-2i64..3, 5), 1..6),
            rhs in proptest::collection::vec(-3i64..4, 6),
        ) {
            let ncols = 5;
            let mut sys = SparseSystem::<BigRational>::new(ncols);
            let mut dense = Vec::new();
            let mut aug = Vec::new();
            for (r, e) in entries.iter().enumerate() {
                let q = |v: i64| BigRational::from_integer(v.into());
                sys.push_row(e.iter().enumerate().map(|(c, &v)| (c, q(v))).collect(), q(rhs[r]));
                dense.push(e.iter().map(|&v| q(v)).collect::<Vec<_>>());
                let mut a: Vec<BigRational> = e.iter().map(|&v| q(v)).collect();
                a.push(q(rhs[r]));
                aug.push(a);
            }
            let rank_a = dense_rank(dense);
            let rank_ab = dense_rank(aug);
            prop_assert_eq!(sys.rank(), rank_a);
            match sys.solve() {
                Some(x) => {
                    prop_assert_eq!(rank_a, rank_ab);
                    prop_assert!(sys.satisfied_by(&x));
                }
                None => prop_assert!(rank_ab > rank_a),
            }
        }
    }
}
