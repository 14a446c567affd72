use std::fmt;

use super::{PolyError, Polynomial};
use crate::scalar::{Field, FieldElement, Rational};

/// Dense univariate polynomial over a [`Field`], lowest degree first.
#[derive(Clone, PartialEq)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<FieldElement>,
}

/// An endpoint of a real interval.
#[derive(Clone, Debug, PartialEq)]
pub enum Bound {
    NegInfinity,
    Finite(Rational),
    PosInfinity,
}

impl UniPoly {
    pub fn new(field: &Field, coeffs: Vec<FieldElement>) -> UniPoly {
        let mut u = UniPoly { field: field.clone(), coeffs };
        u.trim();
        u
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> FieldElement {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn derivative(&self) -> UniPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale(&Rational::from_integer((k as i64).into())))
            .collect();
        UniPoly::new(&self.field, coeffs)
    }

    pub fn divrem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = d.leading().inv().expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        let mut q = vec![self.field.zero(); r.len().saturating_sub(dd)];
        while r.len() > dd {
            let shift = r.len() - 1 - dd;
            let c = r.last().unwrap() * &inv;
            for (j, y) in d.coeffs.iter().enumerate() {
                r[shift + j] = &r[shift + j] - &(&c * y);
            }
            q[shift] = c;
            r.pop();
        }
        (UniPoly::new(&self.field, q), UniPoly::new(&self.field, r))
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading().inv().unwrap();
        UniPoly::new(&self.field, self.coeffs.iter().map(|c| c * &inv).collect())
    }

    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = std::mem::replace(&mut b, r);
        }
        a.monic()
    }

    /// `p / gcd(p, p')`: same roots, each simple.
    pub fn squarefree_part(&self) -> UniPoly {
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.clone();
        }
        self.divrem(&g).0
    }

    pub fn eval_rational(&self, x: &Rational) -> FieldElement {
        self.coeffs.iter().rev().fold(self.field.zero(), |acc, c| &acc.scale(x) + c)
    }

    /// Largest power of the variable dividing the polynomial, and the cofactor.
    pub fn split_zero_root(&self) -> (usize, UniPoly) {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        (k, UniPoly::new(&self.field, self.coeffs[k.min(self.coeffs.len())..].to_vec()))
    }

    fn sign_at(&self, b: &Bound) -> i32 {
        match b {
            Bound::Finite(x) => self.eval_rational(x).sign(),
            Bound::PosInfinity => self.leading().sign(),
            Bound::NegInfinity => {
                let s = self.leading().sign();
                if self.degree().unwrap_or(0) % 2 == 1 {
                    -s
                } else {
                    s
                }
            }
        }
    }

    /// Sturm chain of the square-free part.
    pub fn sturm_chain(&self) -> Vec<UniPoly> {
        let p0 = self.squarefree_part();
        let p1 = p0.derivative();
        let mut chain = vec![p0, p1];
        while !chain.last().unwrap().is_zero() && chain.last().unwrap().degree() != Some(0) {
            let n = chain.len();
            let (_, r) = chain[n - 2].divrem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(UniPoly::new(&self.field, r.coeffs.iter().map(|c| -c).collect()));
        }
        chain.retain(|p| !p.is_zero());
        chain
    }

    /// Number of distinct real roots in `(lo, hi]`.
    pub fn count_real_roots(&self, lo: &Bound, hi: &Bound) -> usize {
        let chain = self.sturm_chain();
        let variations = |b: &Bound| {
            let signs: Vec<i32> = chain.iter().map(|p| p.sign_at(b)).filter(|s| *s != 0).collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        variations(lo).saturating_sub(variations(hi))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> =
            self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| format!("({c})x^{k}")).collect();
        write!(f, "{}", if terms.is_empty() { "0".into() } else { terms.join(" + ") })
    }
}

/// Number of distinct real roots of a univariate polynomial in `(lo, hi]`,
/// from sign variations of its Sturm chain. Signs of extension-field values
/// come from the field's sign oracle, so no floating point is involved.
pub fn sturm_count(p: &Polynomial, lo: &Bound, hi: &Bound) -> Result<usize, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let (_, u) = p.to_univariate()?;
    Ok(u.count_real_roots(lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Variables;
    use crate::scalar::{rat, ratio};

    fn x(text: &str) -> Polynomial {
        Polynomial::parse(text, &Variables::new(&["x"]), &Field::rationals()).unwrap()
    }

    #[test]
    fn counts() {
        let all = (Bound::NegInfinity, Bound::PosInfinity);
        assert_eq!(sturm_count(&x("x^2 - 2"), &Bound::Finite(rat(0)), &Bound::Finite(rat(2))).unwrap(), 1);
        assert_eq!(sturm_count(&x("x^2 + 1"), &all.0, &all.1).unwrap(), 0);
        assert_eq!(sturm_count(&x("x^3 - 4"), &all.0, &all.1).unwrap(), 1);
        assert_eq!(sturm_count(&x("(x - 1)^3*(x + 2)^2*(x^2 + 1)"), &all.0, &all.1).unwrap(), 2);
        assert!(sturm_count(&x("x - x"), &all.0, &all.1).is_err());
    }

    #[test]
    fn half_open_interval() {
        // roots at 1 and 2; (1, 2] contains only 2
        let p = x("(x - 1)*(x - 2)");
        assert_eq!(sturm_count(&p, &Bound::Finite(rat(1)), &Bound::Finite(rat(2))).unwrap(), 1);
        assert_eq!(sturm_count(&p, &Bound::Finite(ratio(1, 2)), &Bound::Finite(rat(1))).unwrap(), 1);
    }

    #[test]
    fn over_an_extension() {
        // x^3 - 4 has exactly one real root, c itself; x - c has it too
        let k = Field::real_root("c", 3, &rat(4)).unwrap();
        let v = Variables::new(&["x"]);
        let p = Polynomial::parse("x^2 - c", &v, &k).unwrap(); // roots +-sqrt(c)
        assert_eq!(sturm_count(&p, &Bound::NegInfinity, &Bound::PosInfinity).unwrap(), 2);
        assert_eq!(sturm_count(&p, &Bound::Finite(rat(0)), &Bound::PosInfinity).unwrap(), 1);
        let q = Polynomial::parse("x^2 + c", &v, &k).unwrap();
        assert_eq!(sturm_count(&q, &Bound::NegInfinity, &Bound::PosInfinity).unwrap(), 0);
    }
}
