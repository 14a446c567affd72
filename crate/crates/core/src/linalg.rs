//! Small dense exact linear algebra: fraction-free determinants over any
//! [`Ring`] with exact division, and row reduction over fields.

use num_traits::Zero;

use crate::ring::Ring;
use crate::scalar::{FieldElement, Rational};

/// Determinant by Bareiss fraction-free elimination. Every division performed
/// is exact, so this works over polynomial rings as well as fields. `zero` is
/// returned for the empty matrix's sibling cases and fixes the ring.
pub fn bareiss_det<T: Ring>(mut m: Vec<Vec<T>>, zero: &T) -> T {
    let n = m.len();
    if n == 0 {
        return zero.one_like();
    }
    let mut sign = false;
    let mut prev = zero.one_like();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return zero.clone(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].times(&m[i][j]).minus(&m[i][k].times(&m[k][j]));
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        d.negated()
    } else {
        d
    }
}

pub fn mat_mul<T: Ring>(a: &[Vec<T>], b: &[Vec<T>]) -> Vec<Vec<T>> {
    let (n, k) = (a.len(), b.len());
    let m = b.first().map(|r| r.len()).unwrap_or(0);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut acc = a[i][0].zero_like();
                    for l in 0..k {
                        if !a[i][l].is_zero() && !b[l][j].is_zero() {
                            acc = acc.plus(&a[i][l].times(&b[l][j]));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Inverse over a field by Gauss-Jordan elimination; `None` when singular.
pub fn inverse(m: &[Vec<FieldElement>]) -> Option<Vec<Vec<FieldElement>>> {
    let n = m.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let field = m[0][0].field().clone();
    let mut a: Vec<Vec<FieldElement>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { field.one() } else { field.zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].inv().ok()?;
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&f * p);
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// A subspace of `Q^n` kept in reduced row echelon form. Pivots are taken from
/// the highest column index downwards, so reducing a vector modulo the
/// subspace leaves it supported on the lowest-index non-pivot columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace {
    dim_ambient: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(dim_ambient: usize) -> Subspace {
        Subspace { dim_ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn span<I: IntoIterator<Item = Vec<Rational>>>(dim_ambient: usize, vectors: I) -> Subspace {
        let mut s = Subspace::zero(dim_ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim_ambient
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    /// Reduces `v` against the stored rows.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x -= &f * r;
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds a vector; returns whether the dimension grew.
    pub fn insert(&mut self, v: Vec<Rational>) -> bool {
        let mut v = self.reduce(&v);
        let Some(p) = (0..v.len()).rev().find(|&i| !v[i].is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, y) in row.iter_mut().zip(&v) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Polynomial, Variables};
    use crate::scalar::{rat, Field};

    fn fe(n: i64) -> FieldElement {
        FieldElement::int(n)
    }

    #[test]
    fn numeric_determinant_with_pivoting() {
        let m = vec![vec![fe(0), fe(2), fe(1)], vec![fe(1), fe(0), fe(3)], vec![fe(4), fe(1), fe(0)]];
        // cofactor expansion: 0*(0-3) - 2*(0-12) + 1*(1-0) = 25
        assert_eq!(bareiss_det(m, &fe(0)), fe(25));
    }

    #[test]
    fn symbolic_determinant() {
        let v = Variables::new(&["A", "B", "C", "D", "E", "F"]);
        let q = Field::rationals();
        let p = |s: &str| Polynomial::parse(s, &v, &q).unwrap();
        let m = vec![vec![p("0"), p("B"), p("C")], vec![p("D"), p("0"), p("F")], vec![p("0"), p("0"), p("B*D")]];
        assert_eq!(bareiss_det(m, &p("0")), p("-B^2*D^2"));
    }

    #[test]
    fn inverse_round_trip() {
        let m = vec![vec![fe(2), fe(1)], vec![fe(5), fe(3)]];
        let inv = inverse(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv), vec![vec![fe(1), fe(0)], vec![fe(0), fe(1)]]);
        assert!(inverse(&[vec![fe(1), fe(2)], vec![fe(2), fe(4)]]).is_none());
    }

    #[test]
    fn subspace_pivots_from_the_top() {
        let mut s = Subspace::zero(3);
        assert!(s.insert(vec![rat(1), rat(0), rat(2)]));
        assert!(!s.insert(vec![rat(2), rat(0), rat(4)]));
        assert_eq!(s.pivots(), &[2]);
        assert_eq!(s.reduce(&[rat(0), rat(0), rat(1)]), vec![crate::scalar::ratio(-1, 2), rat(0), rat(0)]);
    }
}
