//! Sparse multivariate polynomials over a [`Field`], plus the univariate
//! elimination tools built on them (resultants and Sturm chains).

mod monomial;
mod parse;
mod univariate;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::linalg;
use crate::ring::Ring;
use crate::scalar::{Field, FieldElement, Rational, ScalarError};

pub use monomial::{Monomial, MonomialOrder, Variables};
pub use parse::parse_polynomial;
pub use univariate::{sturm_count, Bound, UniPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomials live in different rings")]
    ContextMismatch,
    #[error("the zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("polynomial has degree 0 in {0}")]
    DegreeZero(String),
    #[error("expected a univariate polynomial")]
    NotUnivariate,
    #[error("invalid monomial order: {0}")]
    InvalidOrder(String),
    #[error("{message} at offset {offset}")]
    Parse { offset: usize, message: String },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Clone)]
pub struct Polynomial {
    vars: Variables,
    field: Field,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl Polynomial {
    pub fn zero(vars: &Variables, field: &Field) -> Polynomial {
        Polynomial { vars: vars.clone(), field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &Variables, c: FieldElement) -> Polynomial {
        let field = c.field().clone();
        let mut p = Polynomial::zero(vars, &field);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn one(vars: &Variables, field: &Field) -> Polynomial {
        Polynomial::constant(vars, field.one())
    }

    pub fn var(vars: &Variables, field: &Field, i: usize) -> Polynomial {
        Polynomial::term(vars, Monomial::var(vars.len(), i), field.one())
    }

    pub fn term(vars: &Variables, m: Monomial, c: FieldElement) -> Polynomial {
        let mut p = Polynomial::zero(vars, &c.field().clone());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms<I>(vars: &Variables, field: &Field, terms: I) -> Polynomial
    where
        I: IntoIterator<Item = (Monomial, FieldElement)>,
    {
        let mut p = Polynomial::zero(vars, field);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn parse(text: &str, vars: &Variables, field: &Field) -> Result<Polynomial, PolyError> {
        parse_polynomial(text, vars, field)
    }

    pub fn vars(&self) -> &Variables {
        &self.vars
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> FieldElement {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn constant_value(&self) -> Option<FieldElement> {
        if self.is_constant() {
            Some(self.coeff(&Monomial::one(self.vars.len())))
        } else {
            None
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// The variable index, when the polynomial is exactly one variable.
    pub fn as_variable(&self) -> Option<usize> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next().unwrap();
        if !c.is_one() || m.degree() != 1 {
            return None;
        }
        m.support().next()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.vars != other.vars {
            return Err(PolyError::ContextMismatch);
        }
        if self.field != other.field {
            return Err(PolyError::Scalar(ScalarError::FieldMismatch(self.field.to_string(), other.field.to_string())));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        let mut out = Polynomial::zero(&self.vars, &self.field);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.vars, &self.field);
        }
        Polynomial {
            vars: self.vars.clone(),
            field: self.field.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn scale_rational(&self, q: &Rational) -> Polynomial {
        self.scale(&self.field.from_rational(q.clone()))
    }

    pub fn mul_term(&self, m: &Monomial, c: &FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.vars, &self.field);
        }
        Polynomial {
            vars: self.vars.clone(),
            field: self.field.clone(),
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.vars, &self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.exponent(i)).max().unwrap_or(0)
    }

    /// Indices of the variables that actually occur.
    pub fn variables_used(&self) -> BTreeSet<usize> {
        self.terms.keys().flat_map(|m| m.support().collect::<Vec<_>>()).collect()
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Result<(Monomial, FieldElement), PolyError> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(a.0, b.0))
            .map(|(m, c)| (m.clone(), c.clone()))
            .ok_or(PolyError::ZeroPolynomial)
    }

    /// Divides by the leading coefficient under `order`.
    pub fn monic(&self, order: &MonomialOrder) -> Polynomial {
        match self.leading_term(order) {
            Ok((_, c)) => self.scale(&c.inv().expect("nonzero")),
            Err(_) => self.clone(),
        }
    }

    /// Greatest common monomial divisor of all terms.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(self.vars.len()),
            Some(first) => it.fold(first.clone(), |g, m| g.gcd(m)),
        }
    }

    /// Divides every term by a monomial that divides all of them.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Polynomial> {
        let mut terms = BTreeMap::new();
        for (n, c) in &self.terms {
            terms.insert(n.div(m)?, c.clone());
        }
        Some(Polynomial { vars: self.vars.clone(), field: self.field.clone(), terms })
    }

    /// Coefficients with respect to variable `i`, lowest power first; each
    /// coefficient is a polynomial free of `i` in the same ring.
    pub fn coefficients_in(&self, i: usize) -> Vec<Polynomial> {
        let d = self.degree_in(i) as usize;
        let mut out = vec![Polynomial::zero(&self.vars, &self.field); d + 1];
        for (m, c) in &self.terms {
            let mut e = m.exponents().to_vec();
            let k = e[i] as usize;
            e[i] = 0;
            out[k].add_term(Monomial::from_exponents(e), c);
        }
        out
    }

    /// Simultaneous substitution of variables by polynomials of the same ring.
    pub fn substitute(&self, bindings: &BTreeMap<usize, Polynomial>) -> Polynomial {
        if bindings.is_empty() || self.variables_used().iter().all(|i| !bindings.contains_key(i)) {
            return self.clone();
        }
        let mut powers: BTreeMap<(usize, u32), Polynomial> = BTreeMap::new();
        let mut out = Polynomial::zero(&self.vars, &self.field);
        for (m, c) in &self.terms {
            let mut kept = m.exponents().to_vec();
            let mut factor = Polynomial::one(&self.vars, &self.field);
            for (i, e) in m.exponents().iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                if let Some(value) = bindings.get(&i) {
                    kept[i] = 0;
                    let pw = powers.entry((i, *e)).or_insert_with(|| value.pow(*e));
                    factor = &factor * pw;
                }
            }
            let term = factor.mul_term(&Monomial::from_exponents(kept), c);
            for (tm, tc) in term.terms {
                out.add_term(tm, &tc);
            }
        }
        out
    }

    /// Evaluates with every variable bound to a field element.
    pub fn evaluate(&self, values: &[FieldElement]) -> FieldElement {
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in m.support() {
                t = &t * &values[i].pow(m.exponent(i));
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Re-expresses the polynomial over another field; coefficients must embed.
    pub fn lift(&self, field: &Field) -> Result<Polynomial, PolyError> {
        if &self.field == field {
            return Ok(self.clone());
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            terms.insert(m.clone(), c.embed(field)?);
        }
        Ok(Polynomial { vars: self.vars.clone(), field: field.clone(), terms })
    }

    /// Moves the polynomial into another variable list, mapping each used
    /// variable by name.
    pub fn rename_into(&self, vars: &Variables) -> Result<Polynomial, PolyError> {
        let map: Vec<Option<usize>> = (0..self.vars.len()).map(|i| vars.index_of(self.vars.name(i))).collect();
        let mut out = Polynomial::zero(vars, &self.field);
        for (m, c) in &self.terms {
            let mut e = vec![0; vars.len()];
            for i in m.support() {
                let j = map[i].ok_or(PolyError::ContextMismatch)?;
                e[j] += m.exponent(i);
            }
            out.add_term(Monomial::from_exponents(e), c);
        }
        Ok(out)
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        if d.is_zero() {
            return None;
        }
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.inv().ok()?));
        }
        let order = MonomialOrder::grlex(self.vars.len());
        let (dm, dc) = d.leading_term(&order).ok()?;
        let dc_inv = dc.inv().ok()?;
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(&self.vars, &self.field);
        while let Ok((rm, rc)) = rem.leading_term(&order) {
            let qm = rm.div(&dm)?;
            let qc = &rc * &dc_inv;
            rem = &rem - &d.mul_term(&qm, &qc);
            quot.add_term(qm, &qc);
        }
        Some(quot)
    }

    /// The polynomial as a dense univariate one, when at most one variable
    /// occurs. The variable index is `None` for constants.
    pub fn to_univariate(&self) -> Result<(Option<usize>, UniPoly), PolyError> {
        let used = self.variables_used();
        if used.len() > 1 {
            return Err(PolyError::NotUnivariate);
        }
        let var = used.into_iter().next();
        let deg = var.map(|i| self.degree_in(i)).unwrap_or(0) as usize;
        let mut coeffs = vec![self.field.zero(); deg + 1];
        for (m, c) in &self.terms {
            let k = var.map(|i| m.exponent(i)).unwrap_or(0) as usize;
            coeffs[k] = c.clone();
        }
        Ok((var, UniPoly::new(&self.field, coeffs)))
    }

    pub fn from_univariate(vars: &Variables, i: usize, u: &UniPoly) -> Polynomial {
        let mut out = Polynomial::zero(vars, u.field());
        for (k, c) in u.coeffs().iter().enumerate() {
            let mut e = vec![0; vars.len()];
            e[i] = k as u32;
            out.add_term(Monomial::from_exponents(e), c);
        }
        out
    }

    /// Terms sorted from highest to lowest under `order`.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(&Monomial, &FieldElement)> {
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|a, b| order.cmp(b.0, a.0));
        ts
    }

    /// Same polynomial up to a nonzero scalar factor.
    pub fn is_scalar_multiple_of(&self, other: &Polynomial) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        if self.terms.len() != other.terms.len() || !self.terms.keys().eq(other.terms.keys()) {
            return false;
        }
        let (m, c) = self.terms.iter().next().unwrap();
        let ratio = c.checked_div(&other.terms[m]).expect("nonzero");
        self.terms.iter().all(|(m, c)| c == &(&other.terms[m] * &ratio))
    }

    pub fn same_support(&self, other: &Polynomial) -> bool {
        self.terms.keys().eq(other.terms.keys())
    }

    /// Juxtaposed form such as `3A^2B - K^3`, used when every variable name
    /// is a single character; otherwise the same as `Display`.
    pub fn compact(&self) -> String {
        struct C<'a>(&'a Polynomial, bool);
        impl fmt::Display for C<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_with(f, &MonomialOrder::grlex(self.0.vars.len()), self.1)
            }
        }
        let compact = self.vars.names().iter().all(|n| n.chars().count() == 1);
        C(self, compact).to_string()
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, order: &MonomialOrder, compact: bool) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.sorted_terms(order) {
            let (neg, mag) = if c.is_rational() && c.sign() < 0 { (true, -c) } else { (false, c.clone()) };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mono = if compact { m.label_with(&self.vars) } else { m.display_with(&self.vars) };
            let coeff = if mag.is_rational() { mag.to_string() } else { format!("({mag})") };
            if m.is_one() {
                f.write_str(&coeff)?;
            } else if mag.is_one() {
                f.write_str(&mono)?;
            } else if compact {
                write!(f, "{coeff}{mono}")?;
            } else {
                write!(f, "{coeff}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, &MonomialOrder::grlex(self.vars.len()), false)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a> $tr<&'a Polynomial> for &'a Polynomial {
            type Output = Polynomial;
            /// Panics when the operands live in different rings; use the
            /// `try_*` methods to get an error instead.
            fn $method(self, rhs: &'a Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomial arithmetic")
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$checked(&rhs).expect("polynomial arithmetic")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            field: self.field.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Ring for Polynomial {
    fn zero_like(&self) -> Self {
        Polynomial::zero(&self.vars, &self.field)
    }
    fn one_like(&self) -> Self {
        Polynomial::one(&self.vars, &self.field)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, by: &Rational) -> Self {
        self.scale_rational(by)
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        Polynomial::div_exact(self, rhs)
    }
}

/// Resultant of `p` and `q` with respect to variable `var`: the determinant
/// of their Sylvester matrix, computed fraction-free. The result lives in the
/// same ring and no longer involves `var`.
pub fn resultant(p: &Polynomial, q: &Polynomial, var: usize) -> Result<Polynomial, PolyError> {
    p.check_ring(q)?;
    let (m, n) = (p.degree_in(var) as usize, q.degree_in(var) as usize);
    if m == 0 || p.is_zero() {
        return Err(PolyError::DegreeZero(p.vars.name(var).to_string()));
    }
    if n == 0 || q.is_zero() {
        return Err(PolyError::DegreeZero(q.vars.name(var).to_string()));
    }
    let (pc, qc) = (p.coefficients_in(var), q.coefficients_in(var));
    let size = m + n;
    let zero = Polynomial::zero(&p.vars, &p.field);
    let mut rows = vec![vec![zero.clone(); size]; size];
    for r in 0..n {
        for k in 0..=m {
            rows[r][r + k] = pc[m - k].clone();
        }
    }
    for r in 0..m {
        for k in 0..=n {
            rows[n + r][r + k] = qc[n - k].clone();
        }
    }
    Ok(linalg::bareiss_det(rows, &zero))
}
