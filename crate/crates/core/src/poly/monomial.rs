use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use super::PolyError;

/// An ordered list of variable names shared by all polynomials of one ring.
#[derive(Clone)]
pub struct Variables(Arc<Vec<String>>);

impl Variables {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Variables {
        Variables(Arc::new(names.iter().map(|s| s.as_ref().to_string()).collect()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }
}

impl PartialEq for Variables {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Variables {}

impl fmt::Debug for Variables {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// Exponent vector, one entry per variable of the ambient [`Variables`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exps: Vec<u32>) -> Monomial {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.divides(self) {
            Some(Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|e| e * k).collect())
    }

    /// Indices of the variables that occur.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, _)| i)
    }

    pub fn display_with(&self, vars: &Variables) -> String {
        if self.is_one() {
            return "1".into();
        }
        let parts: Vec<String> = self
            .support()
            .map(|i| match self.0[i] {
                1 => vars.name(i).to_string(),
                e => format!("{}^{}", vars.name(i), e),
            })
            .collect();
        parts.join("*")
    }

    /// Compact form used for basis labels, e.g. `X^2Y`.
    pub fn label_with(&self, vars: &Variables) -> String {
        if self.is_one() {
            return "1".into();
        }
        self.support()
            .map(|i| match self.0[i] {
                1 => vars.name(i).to_string(),
                e => format!("{}^{}", vars.name(i), e),
            })
            .collect()
    }
}

/// Graded lexicographic order; ties in total degree are broken by comparing
/// exponents along `precedence`, most significant variable first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialOrder {
    precedence: Vec<usize>,
}

impl MonomialOrder {
    pub fn new(precedence: Vec<usize>) -> Result<MonomialOrder, PolyError> {
        let mut seen = vec![false; precedence.len()];
        for &i in &precedence {
            if i >= seen.len() || seen[i] {
                return Err(PolyError::InvalidOrder(format!("{precedence:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(MonomialOrder { precedence })
    }

    /// Declaration order: the first variable is the most significant.
    pub fn grlex(nvars: usize) -> MonomialOrder {
        MonomialOrder { precedence: (0..nvars).collect() }
    }

    pub fn precedence(&self) -> &[usize] {
        &self.precedence
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        a.degree().cmp(&b.degree()).then_with(|| {
            for &i in &self.precedence {
                match a.0[i].cmp(&b.0[i]) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }

    pub fn describe(&self, vars: &Variables) -> String {
        self.precedence.iter().map(|&i| vars.name(i)).collect::<Vec<_>>().join(" > ")
    }
}
