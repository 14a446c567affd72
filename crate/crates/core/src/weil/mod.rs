//! Weil algebras `D^r_n / I`: monomial basis, structure constants, the
//! nilradical filtration and the projection onto `n / n^2`.

mod spec;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::linalg::Subspace;
use crate::poly::{Monomial, MonomialOrder, PolyError, Polynomial, Variables};
use crate::quotient::{
    basis_layout_cmp, buchberger, normal_form, standard_monomials, GroebnerBasis, IdealPresentation,
};
use crate::ring::Ring;
use crate::scalar::{Field, FieldElement, Rational};

pub use spec::{parse_specs, AlgebraSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeilError {
    #[error("line {line}, column {col}: {message}")]
    Parse { line: usize, col: usize, message: String },
    #[error("relation '{0}' has a nonzero constant term")]
    ConstantTerm(String),
    #[error("bad precedence '{0}'")]
    Precedence(String),
    #[error("relation '{relation}': {source}")]
    Relation { relation: String, source: PolyError },
}

/// Coordinates with respect to an algebra basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Element<T> {
    pub coords: Vec<T>,
}

impl<T: Ring> Element<T> {
    pub fn new(coords: Vec<T>) -> Self {
        Element { coords }
    }

    pub fn zero(dim: usize, like: &T) -> Self {
        Element { coords: vec![like.zero_like(); dim] }
    }

    pub fn unit(dim: usize, k: usize, like: &T) -> Self {
        let mut e = Element::zero(dim, like);
        e.coords[k] = like.one_like();
        e
    }

    pub fn plus(&self, other: &Self) -> Self {
        Element { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a.plus(b)).collect() }
    }

    pub fn minus(&self, other: &Self) -> Self {
        Element { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a.minus(b)).collect() }
    }

    pub fn times_scalar(&self, c: &T) -> Self {
        Element { coords: self.coords.iter().map(|a| a.times(c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Ring::is_zero)
    }
}

/// A finite-dimensional local algebra presented by standard monomials.
#[derive(Clone, Debug)]
pub struct WeilAlgebra {
    spec: AlgebraSpec,
    vars: Variables,
    order: MonomialOrder,
    relations: Vec<Polynomial>,
    gb: GroebnerBasis,
    basis: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
    table: Vec<Vec<Vec<Rational>>>,
    sparse: Vec<Vec<Vec<(usize, Rational)>>>,
    nil_powers: Vec<Subspace>,
    cotangent: Vec<usize>,
    projection: Vec<Vec<Rational>>,
}

fn resolve_order(spec: &AlgebraSpec, vars: &Variables) -> Result<MonomialOrder, WeilError> {
    match &spec.precedence {
        None => Ok(MonomialOrder::grlex(vars.len())),
        Some(names) => {
            let bad = || WeilError::Precedence(names.join(" > "));
            let idx = names.iter().map(|n| vars.index_of(n).ok_or_else(bad)).collect::<Result<Vec<_>, _>>()?;
            MonomialOrder::new(idx).map_err(|_| bad())
        }
    }
}

/// Builds the algebra: Gröbner basis, standard-monomial basis (graded, first
/// declared variable heaviest within a degree), structure constants by
/// normal forms of products, and the powers of the nilradical.
pub fn build_algebra(spec: &AlgebraSpec) -> Result<WeilAlgebra, WeilError> {
    let vars = spec.vars();
    let q = Field::rationals();
    let order = resolve_order(spec, &vars)?;
    let mut relations = Vec::new();
    for r in &spec.relations {
        let p =
            Polynomial::parse(r, &vars, &q).map_err(|source| WeilError::Relation { relation: r.clone(), source })?;
        if !p.coeff(&Monomial::one(vars.len())).is_zero() {
            return Err(WeilError::ConstantTerm(r.clone()));
        }
        relations.push(p);
    }
    let ideal = IdealPresentation::new(&vars, &q, relations.clone(), spec.order);
    let gb = buchberger(&ideal, &order);
    let mut basis = standard_monomials(&gb, vars.len(), spec.order);
    basis.sort_by(basis_layout_cmp);
    let index: BTreeMap<Monomial, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let dim = basis.len();

    let coords = |p: &Polynomial| -> Vec<Rational> {
        let nf = normal_form(p, &gb);
        let mut v = vec![Rational::zero(); dim];
        for (m, c) in nf.terms() {
            v[index[m]] = c.as_rational().expect("rational algebra");
        }
        v
    };
    let mut table = vec![vec![Vec::new(); dim]; dim];
    for i in 0..dim {
        for j in i..dim {
            let prod = Polynomial::term(&vars, basis[i].mul(&basis[j]), q.one());
            let v = coords(&prod);
            table[j][i] = v.clone();
            table[i][j] = v;
        }
    }
    let sparse = table
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect())
                .collect()
        })
        .collect();

    let mut alg = WeilAlgebra {
        spec: spec.clone(),
        vars,
        order,
        relations,
        gb,
        basis,
        index,
        table,
        sparse,
        nil_powers: Vec::new(),
        cotangent: Vec::new(),
        projection: Vec::new(),
    };
    alg.build_filtration();
    Ok(alg)
}

impl WeilAlgebra {
    fn build_filtration(&mut self) {
        let dim = self.dim();
        let unit_vec = |k: usize| {
            let mut v = vec![Rational::zero(); dim];
            v[k] = Rational::from_integer(1.into());
            v
        };
        let nil = Subspace::span(dim, (1..dim).map(unit_vec));
        let mut powers = vec![nil];
        while powers.last().unwrap().dim() > 0 {
            let prev = powers.last().unwrap();
            let mut next = Subspace::zero(dim);
            for i in 1..dim {
                for row in prev.rows() {
                    next.insert(self.mul_vec(&unit_vec(i), row));
                }
            }
            powers.push(next);
        }
        let sq = powers.get(1).cloned().unwrap_or_else(|| Subspace::zero(dim));
        self.cotangent = (1..dim).filter(|k| !sq.pivots().contains(k)).collect();
        self.projection = (0..dim)
            .map(|k| {
                if k == 0 {
                    return vec![Rational::zero(); self.cotangent.len()];
                }
                let r = sq.reduce(&unit_vec(k));
                self.cotangent.iter().map(|&j| r[j].clone()).collect()
            })
            .collect();
        self.nil_powers = powers;
    }

    fn mul_vec(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim()];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let xy = x * y;
                for (k, c) in &self.sparse[i][j] {
                    out[*k] += &xy * c;
                }
            }
        }
        out
    }

    pub fn name(&self) -> &str {
        &self.spec.name
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn vars(&self) -> &Variables {
        &self.vars
    }

    pub fn monomial_order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    pub fn groebner_basis(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn basis_labels(&self) -> Vec<String> {
        self.basis.iter().map(|m| m.label_with(&self.vars)).collect()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// `c[i][j][k]` with `e_i e_j = sum_k c[i][j][k] e_k`.
    pub fn structure_constants(&self) -> &[Vec<Vec<Rational>>] {
        &self.table
    }

    /// Nonzero `(k, c[i][j][k])`.
    pub fn product_terms(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.sparse[i][j]
    }

    /// Indices of the basis of the nilradical: everything but `1`.
    pub fn nil_basis(&self) -> Vec<usize> {
        (1..self.dim()).collect()
    }

    /// `n^s` for `s >= 1`, as a subspace of the full coordinate space.
    pub fn nil_power(&self, s: usize) -> Subspace {
        assert!(s >= 1);
        self.nil_powers.get(s - 1).cloned().unwrap_or_else(|| Subspace::zero(self.dim()))
    }

    pub fn nil_power_dims(&self) -> Vec<usize> {
        self.nil_powers.iter().map(Subspace::dim).collect()
    }

    /// Largest `s` with `n^s != 0`.
    pub fn nilpotency_order(&self) -> usize {
        self.nil_powers.iter().filter(|s| s.dim() > 0).count()
    }

    /// Basis indices whose classes form a basis of `n / n^2`.
    pub fn cotangent_basis(&self) -> &[usize] {
        &self.cotangent
    }

    /// Projection matrix: row `k` gives the `n / n^2` coordinates of `e_k`.
    pub fn projection_matrix(&self) -> &[Vec<Rational>] {
        &self.projection
    }

    pub fn project<T: Ring>(&self, coords: &[T]) -> Vec<T> {
        let like = &coords[0];
        (0..self.cotangent.len())
            .map(|j| {
                let mut acc = like.zero_like();
                for (k, x) in coords.iter().enumerate() {
                    let p = &self.projection[k][j];
                    if !p.is_zero() && !x.is_zero() {
                        acc = acc.plus(&x.scaled(p));
                    }
                }
                acc
            })
            .collect()
    }

    /// Coordinates of the class of a polynomial in the algebra's variables.
    pub fn coords_of(&self, p: &Polynomial) -> Vec<Rational> {
        let nf = normal_form(p, &self.gb);
        let mut v = vec![Rational::zero(); self.dim()];
        for (m, c) in nf.terms() {
            v[self.index[m]] = c.as_rational().expect("rational coefficients");
        }
        v
    }

    pub fn element_of(&self, p: &Polynomial) -> Element<FieldElement> {
        Element::new(self.coords_of(p).into_iter().map(FieldElement::rational).collect())
    }

    pub fn variable(&self, i: usize) -> Element<FieldElement> {
        self.element_of(&Polynomial::var(&self.vars, &Field::rationals(), i))
    }

    pub fn one<T: Ring>(&self, like: &T) -> Element<T> {
        Element::unit(self.dim(), 0, like)
    }

    pub fn multiply<T: Ring>(&self, a: &Element<T>, b: &Element<T>) -> Element<T> {
        let like = &a.coords[0];
        let mut out = vec![like.zero_like(); self.dim()];
        for (i, x) in a.coords.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.coords.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let terms = &self.sparse[i][j];
                if terms.is_empty() {
                    continue;
                }
                let xy = x.times(y);
                for (k, c) in terms {
                    out[*k] = out[*k].plus(&xy.scaled(c));
                }
            }
        }
        Element::new(out)
    }

    pub fn pow<T: Ring>(&self, a: &Element<T>, e: u32) -> Element<T> {
        let mut acc = self.one(&a.coords[0]);
        for _ in 0..e {
            acc = self.multiply(&acc, a);
        }
        acc
    }

    /// `sum_k x_k e_k` with basis labels, e.g. `2 + X - 1/2*XY`.
    pub fn format_element<T: Ring + fmt::Display>(&self, a: &Element<T>) -> String {
        let labels = self.basis_labels();
        let parts: Vec<String> = a
            .coords
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(k, x)| {
                let s = x.to_string();
                let wrapped = if s.contains([' ', '+']) || s[1..].contains('-') { format!("({s})") } else { s };
                if k == 0 {
                    wrapped
                } else if wrapped == "1" {
                    labels[k].clone()
                } else {
                    format!("{wrapped}*{}", labels[k])
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}
