//! Smith normal form by unimodular row and column operations.
//!
//! Elimination runs on machine integers first and restarts on arbitrary
//! precision integers if any intermediate value overflows, so results are
//! always exact. Pivots are chosen with minimal absolute value.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntegerMatrix;

/// Column count at or below which the dense path is used.
pub const DENSE_THRESHOLD: usize = 200;

/// Invariant factors `d1 | d2 | ...` (all positive) and the rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub factors: Vec<BigInt>,
    pub rank: usize,
}

impl SmithForm {
    /// Factors greater than one.
    pub fn torsion(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.iter().filter(|d| !d.is_one())
    }
}

pub(crate) trait Exact: Clone + PartialEq + Debug {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn abs_lt(&self, other: &Self) -> bool;
    /// Quotient rounded toward zero; `None` on overflow.
    fn quot(&self, d: &Self) -> Option<Self>;
    /// `self - q * p`; `None` on overflow.
    fn sub_mul(&self, q: &Self, p: &Self) -> Option<Self>;
    fn into_big(self) -> BigInt;
}

impl Exact for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        self.unsigned_abs() == 1
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn quot(&self, d: &Self) -> Option<Self> {
        self.checked_div(*d)
    }
    fn sub_mul(&self, q: &Self, p: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*p)?)
    }
    fn into_big(self) -> BigInt {
        BigInt::from(self)
    }
}

impl Exact for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn quot(&self, d: &Self) -> Option<Self> {
        Some(self / d)
    }
    fn sub_mul(&self, q: &Self, p: &Self) -> Option<Self> {
        Some(self - q * p)
    }
    fn into_big(self) -> BigInt {
        self
    }
}

/// Smith normal form of `m`; dense below [`DENSE_THRESHOLD`] columns,
/// sparse above.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    if m.cols() <= DENSE_THRESHOLD {
        smith_normal_form_dense(m)
    } else {
        smith_normal_form_sparse(m)
    }
}

pub fn smith_normal_form_dense(m: &IntegerMatrix) -> SmithForm {
    let diagonal = match dense_diagonal::<i64>(m) {
        Some(d) => d.into_iter().map(Exact::into_big).collect(),
        None => dense_diagonal::<BigInt>(m).expect("big integers do not overflow"),
    };
    normalize(diagonal)
}

pub fn smith_normal_form_sparse(m: &IntegerMatrix) -> SmithForm {
    let diagonal = match sparse_diagonal::<i64>(m) {
        Some(d) => d.into_iter().map(Exact::into_big).collect(),
        None => sparse_diagonal::<BigInt>(m).expect("big integers do not overflow"),
    };
    normalize(diagonal)
}

/// Turns a nonzero diagonal into the divisibility chain of invariant factors.
fn normalize(diagonal: Vec<BigInt>) -> SmithForm {
    let rank = diagonal.len();
    let mut d: Vec<BigInt> = diagonal
        .into_iter()
        .map(|x| x.abs())
        .filter(|x| !x.is_one())
        .collect();
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    let mut factors = vec![BigInt::one(); rank];
    let units = d.iter().filter(|x| x.is_one()).count() + (rank - d.len());
    let mut nonunits: Vec<BigInt> = d.into_iter().filter(|x| !x.is_one()).collect();
    nonunits.sort();
    for (k, v) in nonunits.into_iter().enumerate() {
        factors[units + k] = v;
    }
    SmithForm { factors, rank }
}

fn dense_diagonal<T: Exact>(m: &IntegerMatrix) -> Option<Vec<T>> {
    let (nr, nc) = (m.rows(), m.cols());
    let zero = T::from_i64(0);
    let mut a: Vec<Vec<T>> = vec![vec![zero.clone(); nc]; nr];
    for c in 0..nc {
        for &(r, v) in m.column(c) {
            a[r][c] = T::from_i64(v);
        }
    }
    let mut row_live = vec![true; nr];
    let mut col_live = vec![true; nc];
    let mut diagonal = Vec::new();
    loop {
        // minimal nonzero pivot among live entries
        let mut pivot: Option<(usize, usize)> = None;
        'scan: for r in (0..nr).filter(|&r| row_live[r]) {
            for c in (0..nc).filter(|&c| col_live[c]) {
                if a[r][c].is_zero() {
                    continue;
                }
                match pivot {
                    Some((pr, pc)) if !a[r][c].abs_lt(&a[pr][pc]) => {}
                    _ => {
                        pivot = Some((r, c));
                        if a[r][c].is_unit() {
                            break 'scan;
                        }
                    }
                }
            }
        }
        let Some((mut r, mut c)) = pivot else { break };
        loop {
            let p = a[r][c].clone();
            // column phase: row operations clear column c
            let mut smaller: Option<usize> = None;
            for i in 0..nr {
                if i == r || !row_live[i] || a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].quot(&p)?;
                if !q.is_zero() {
                    for j in 0..nc {
                        if col_live[j] && !a[r][j].is_zero() {
                            a[i][j] = a[i][j].sub_mul(&q, &a[r][j])?;
                        }
                    }
                }
                if !a[i][c].is_zero() && smaller.is_none_or(|s| a[i][c].abs_lt(&a[s][c])) {
                    smaller = Some(i);
                }
            }
            if let Some(i) = smaller {
                r = i;
                continue;
            }
            // row phase: column c is clear, so column operations only touch row r
            let mut smaller: Option<usize> = None;
            for j in 0..nc {
                if j == c || !col_live[j] || a[r][j].is_zero() {
                    continue;
                }
                let q = a[r][j].quot(&p)?;
                a[r][j] = a[r][j].sub_mul(&q, &p)?;
                if !a[r][j].is_zero() && smaller.is_none_or(|s| a[r][j].abs_lt(&a[r][s])) {
                    smaller = Some(j);
                }
            }
            if let Some(j) = smaller {
                c = j;
                continue;
            }
            break;
        }
        diagonal.push(a[r][c].clone());
        row_live[r] = false;
        col_live[c] = false;
    }
    Some(diagonal)
}

struct Sparse<T> {
    rows: Vec<BTreeMap<usize, T>>,
    cols: Vec<BTreeSet<usize>>,
}

impl<T: Exact> Sparse<T> {
    fn set(&mut self, r: usize, c: usize, v: T) {
        if v.is_zero() {
            self.rows[r].remove(&c);
            self.cols[c].remove(&r);
        } else {
            self.rows[r].insert(c, v);
            self.cols[c].insert(r);
        }
    }

    fn get(&self, r: usize, c: usize) -> Option<&T> {
        self.rows[r].get(&c)
    }
}

fn sparse_diagonal<T: Exact>(m: &IntegerMatrix) -> Option<Vec<T>> {
    let mut s = Sparse::<T> {
        rows: vec![BTreeMap::new(); m.rows()],
        cols: vec![BTreeSet::new(); m.cols()],
    };
    for c in 0..m.cols() {
        for &(r, v) in m.column(c) {
            s.set(r, c, T::from_i64(v));
        }
    }
    let mut live_rows: Vec<usize> = (0..m.rows()).collect();
    let mut diagonal = Vec::new();
    loop {
        live_rows.retain(|&r| !s.rows[r].is_empty());
        let mut pivot: Option<(usize, usize)> = None;
        'scan: for &r in &live_rows {
            for (&c, v) in &s.rows[r] {
                let better = match pivot {
                    Some((pr, pc)) => v.abs_lt(s.get(pr, pc).expect("pivot entry")),
                    None => true,
                };
                if better {
                    pivot = Some((r, c));
                    if v.is_unit() {
                        break 'scan;
                    }
                }
            }
        }
        let Some((mut r, mut c)) = pivot else { break };
        loop {
            let p = s.get(r, c).expect("pivot entry").clone();
            let pivot_row: Vec<(usize, T)> =
                s.rows[r].iter().map(|(&j, v)| (j, v.clone())).collect();
            let others: Vec<usize> = s.cols[c].iter().copied().filter(|&i| i != r).collect();
            let mut smaller: Option<usize> = None;
            for i in others {
                let q = s.get(i, c).expect("column entry").quot(&p)?;
                if !q.is_zero() {
                    for (j, v) in &pivot_row {
                        let current = s.get(i, *j).cloned().unwrap_or_else(|| T::from_i64(0));
                        let updated = current.sub_mul(&q, v)?;
                        s.set(i, *j, updated);
                    }
                }
                if let Some(v) = s.get(i, c) {
                    if smaller.is_none_or(|k| v.abs_lt(s.get(k, c).expect("entry"))) {
                        smaller = Some(i);
                    }
                }
            }
            if let Some(i) = smaller {
                r = i;
                continue;
            }
            let row_entries: Vec<(usize, T)> = s.rows[r]
                .iter()
                .filter(|(&j, _)| j != c)
                .map(|(&j, v)| (j, v.clone()))
                .collect();
            let mut smaller: Option<usize> = None;
            for (j, v) in row_entries {
                let q = v.quot(&p)?;
                let rem = v.sub_mul(&q, &p)?;
                s.set(r, j, rem);
                if let Some(v) = s.get(r, j) {
                    if smaller.is_none_or(|k| v.abs_lt(s.get(r, k).expect("entry"))) {
                        smaller = Some(j);
                    }
                }
            }
            if let Some(j) = smaller {
                c = j;
                continue;
            }
            break;
        }
        let p = s.get(r, c).expect("pivot entry").clone();
        s.set(r, c, T::from_i64(0));
        diagonal.push(p);
    }
    Some(diagonal)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn identity_has_unit_factors() {
        let m = IntegerMatrix::from_dense(&[vec![1, 0], vec![0, 1]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.factors, big(&[1, 1]));
        assert_eq!(s.rank, 2);
    }

    #[test]
    fn single_two() {
        let m = IntegerMatrix::from_dense(&[vec![2, 0], vec![0, 0]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.factors, big(&[2]));
        assert_eq!(s.rank, 1);
    }

    #[test]
    fn divisibility_is_restored() {
        // diag(4, 6) has invariant factors (2, 12)
        let m = IntegerMatrix::from_dense(&[vec![4, 0], vec![0, 6]]);
        assert_eq!(smith_normal_form_dense(&m).factors, big(&[2, 12]));
        assert_eq!(smith_normal_form_sparse(&m).factors, big(&[2, 12]));
    }

    #[test]
    fn non_diagonal_input() {
        let m = IntegerMatrix::from_dense(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        // known example with invariant factors 2, 6, 12
        assert_eq!(smith_normal_form_dense(&m).factors, big(&[2, 6, 12]));
        assert_eq!(smith_normal_form_sparse(&m).factors, big(&[2, 6, 12]));
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let huge = i64::MAX / 2;
        let m = IntegerMatrix::from_dense(&[vec![huge, huge - 1], vec![huge - 1, huge - 3]]);
        let dense = smith_normal_form_dense(&m);
        let sparse = smith_normal_form_sparse(&m);
        assert_eq!(dense, sparse);
        // determinant computed exactly
        let h = BigInt::from(huge);
        let det: BigInt = &h * (&h - 3) - (&h - 1) * (&h - 1);
        let product: BigInt = dense.factors.iter().product();
        assert_eq!(product, det.abs());
    }
}
