//! Endomorphisms with unknown coefficients: the matrices `M` (on `n`) and
//! `M1` (on `n / n^2`), the constraint system cutting out the algebra
//! endomorphisms, and an independent numeric multiplicativity check.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use thiserror::Error;

use crate::linalg::{bareiss_det, inverse, mat_mul};
use crate::poly::{Monomial, PolyError, Polynomial, Variables};
use crate::ring::Ring;
use crate::scalar::{Field, FieldElement};
use crate::weil::{Element, WeilAlgebra};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EndoError {
    #[error("cyclic bindings through {0}")]
    Cyclic(String),
    #[error("expected {expected} values, got {got}")]
    Arity { expected: usize, got: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Unknown-to-polynomial assignments, keyed by unknown index.
pub type Bindings = BTreeMap<usize, Polynomial>;

const LETTERS: &str = "ABCDEFGHIJKLMNPQRSTUVWXYZ";

/// Names for `n` unknowns: `A, B, ...` skipping `O` while they last, otherwise
/// `prefix1, prefix2, ...`.
pub fn unknown_names(n: usize, prefix: Option<&str>) -> Vec<String> {
    match prefix {
        None if n <= LETTERS.len() => LETTERS.chars().take(n).map(String::from).collect(),
        _ => (1..=n).map(|i| format!("{}{i}", prefix.unwrap_or("u"))).collect(),
    }
}

/// `phi(x_i) = sum_k u_{i,k} e_k` over the nilradical basis, one fresh unknown
/// per coordinate.
#[derive(Clone, Debug)]
pub struct SymbolicEndo {
    algebra: Arc<WeilAlgebra>,
    unknowns: Variables,
    images: Vec<Element<Polynomial>>,
    slots: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymbolicMatrix {
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub entries: Vec<Vec<Polynomial>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Equation {
    /// Index into the algebra's relations.
    pub generator: usize,
    /// Basis index whose coordinate this is.
    pub basis_index: usize,
    pub poly: Polynomial,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstraintSystem {
    pub equations: Vec<Equation>,
    pub nondegeneracy: Vec<Polynomial>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DeterminantReport {
    pub det_full: Polynomial,
    pub det_linear: Polynomial,
}

pub fn generic_endo(algebra: &Arc<WeilAlgebra>, prefix: Option<&str>) -> SymbolicEndo {
    let nil = algebra.nil_basis();
    let n = algebra.vars().len();
    let names = unknown_names(n * nil.len(), prefix);
    let unknowns = Variables::new(&names);
    let field = Field::rationals();
    let zero = Polynomial::zero(&unknowns, &field);
    let mut images = Vec::new();
    let mut slots = Vec::new();
    for i in 0..n {
        let mut e = Element::zero(algebra.dim(), &zero);
        for &k in &nil {
            e.coords[k] = Polynomial::var(&unknowns, &field, slots.len());
            slots.push((i, k));
        }
        images.push(e);
    }
    SymbolicEndo { algebra: algebra.clone(), unknowns, images, slots }
}

fn images_of_monomials<T: Ring>(alg: &WeilAlgebra, images: &[Element<T>], monos: &[Monomial]) -> Vec<Element<T>> {
    let like = &images[0].coords[0];
    let mut memo: BTreeMap<Monomial, Element<T>> = BTreeMap::new();
    memo.insert(Monomial::one(alg.vars().len()), alg.one(like));
    fn go<T: Ring>(
        alg: &WeilAlgebra,
        images: &[Element<T>],
        m: &Monomial,
        memo: &mut BTreeMap<Monomial, Element<T>>,
    ) -> Element<T> {
        if let Some(e) = memo.get(m) {
            return e.clone();
        }
        let i = m.support().next().unwrap();
        let rest = m.div(&Monomial::var(m.nvars(), i)).unwrap();
        let r = go(alg, images, &rest, memo);
        let e = alg.multiply(&images[i], &r);
        memo.insert(m.clone(), e.clone());
        e
    }
    monos.iter().map(|m| go(alg, images, m, &mut memo)).collect()
}

fn apply_poly<T: Ring>(alg: &WeilAlgebra, images: &[Element<T>], g: &Polynomial) -> Element<T> {
    let monos: Vec<Monomial> = g.terms().map(|(m, _)| m.clone()).collect();
    let vals = images_of_monomials(alg, images, &monos);
    let like = &images[0].coords[0];
    let mut acc = Element::zero(alg.dim(), like);
    for ((_, c), v) in g.terms().zip(vals) {
        let c = c.as_rational().expect("rational relation");
        acc = acc.plus(&Element::new(v.coords.iter().map(|x| x.scaled(&c)).collect()));
    }
    acc
}

impl SymbolicEndo {
    pub fn algebra(&self) -> &Arc<WeilAlgebra> {
        &self.algebra
    }

    pub fn unknowns(&self) -> &Variables {
        &self.unknowns
    }

    pub fn field(&self) -> &Field {
        self.images[0].coords[0].field()
    }

    pub fn images(&self) -> &[Element<Polynomial>] {
        &self.images
    }

    /// `(variable, basis index)` of each unknown.
    pub fn slots(&self) -> &[(usize, usize)] {
        &self.slots
    }

    /// `phi(e_k)` for every basis element, extended multiplicatively.
    pub fn basis_images(&self) -> Vec<Element<Polynomial>> {
        images_of_monomials(&self.algebra, &self.images, self.algebra.basis())
    }

    pub fn apply(&self, g: &Polynomial) -> Element<Polynomial> {
        apply_poly(&self.algebra, &self.images, g)
    }

    pub fn describe_image(&self, i: usize) -> String {
        self.algebra.format_element(&self.images[i])
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(&self.unknowns, self.field())
    }

    pub fn substitute(&self, bindings: &Bindings) -> Result<SymbolicEndo, EndoError> {
        let b = resolve_bindings(bindings, &self.unknowns)?;
        let images = self
            .images
            .iter()
            .map(|e| Ok(Element::new(e.coords.iter().map(|p| bind(p, &b)).collect::<Result<_, _>>()?)))
            .collect::<Result<_, EndoError>>()?;
        Ok(SymbolicEndo { images, ..self.clone() })
    }
}

/// `M`: entry `(i, j)` is the coefficient of the `j`-th nilradical basis
/// element in `phi` of the `i`-th.
pub fn extend_to_matrix(e: &SymbolicEndo) -> SymbolicMatrix {
    let alg = e.algebra();
    let nil = alg.nil_basis();
    let labels: Vec<String> = nil.iter().map(|&k| alg.basis_labels()[k].clone()).collect();
    let imgs = e.basis_images();
    let entries = nil.iter().map(|&i| nil.iter().map(|&j| imgs[i].coords[j].clone()).collect()).collect();
    SymbolicMatrix { row_labels: labels.clone(), col_labels: labels, entries }
}

/// `M1`: the action on `n / n^2`.
pub fn linear_matrix(e: &SymbolicEndo) -> SymbolicMatrix {
    let alg = e.algebra();
    let cot = alg.cotangent_basis();
    let labels: Vec<String> = cot.iter().map(|&k| alg.basis_labels()[k].clone()).collect();
    let imgs = e.basis_images();
    let entries = cot.iter().map(|&i| alg.project(&imgs[i].coords)).collect();
    SymbolicMatrix { row_labels: labels.clone(), col_labels: labels, entries }
}

/// One equation per nonzero coordinate of `phi(g)`, for each relation `g`;
/// nondegeneracy is `det M1`.
pub fn constraint_system(e: &SymbolicEndo) -> ConstraintSystem {
    let alg = e.algebra();
    let mut equations = Vec::new();
    for (gi, g) in alg.relations().iter().enumerate() {
        let v = e.apply(g);
        for (k, p) in v.coords.into_iter().enumerate() {
            if !p.is_zero() {
                equations.push(Equation { generator: gi, basis_index: k, poly: p });
            }
        }
    }
    let m1 = linear_matrix(e);
    ConstraintSystem { equations, nondegeneracy: vec![det(&m1)] }
}

pub fn det(m: &SymbolicMatrix) -> Polynomial {
    let zero = m.entries.first().and_then(|r| r.first()).cloned().expect("nonempty matrix");
    bareiss_det(m.entries.clone(), &zero.zero_like())
}

pub fn determinants(m_full: &SymbolicMatrix, m_lin: &SymbolicMatrix) -> DeterminantReport {
    DeterminantReport { det_full: det(m_full), det_linear: det(m_lin) }
}

/// Substitutes bindings into `p`, lifting it to the bindings' field first.
pub fn bind(p: &Polynomial, bindings: &Bindings) -> Result<Polynomial, PolyError> {
    match bindings.values().next() {
        Some(v) if v.field() != p.field() => Ok(p.lift(v.field())?.substitute(bindings)),
        _ => Ok(p.substitute(bindings)),
    }
}

/// Closes a binding set under itself so that no right-hand side mentions a
/// bound unknown. Cycles are an error.
pub fn resolve_bindings(bindings: &Bindings, unknowns: &Variables) -> Result<Bindings, EndoError> {
    let field = bindings.values().map(|p| p.field().clone()).find(|f| !f.is_rationals());
    let mut b: Bindings = BTreeMap::new();
    for (k, v) in bindings {
        b.insert(
            *k,
            match &field {
                Some(f) => v.lift(f)?,
                None => v.clone(),
            },
        );
    }
    // depth-first order; a grey node reached again is a cycle
    let mut state: BTreeMap<usize, u8> = BTreeMap::new();
    let mut order = Vec::new();
    fn visit(
        k: usize,
        b: &Bindings,
        state: &mut BTreeMap<usize, u8>,
        order: &mut Vec<usize>,
        unknowns: &Variables,
    ) -> Result<(), EndoError> {
        match state.get(&k) {
            Some(2) => return Ok(()),
            Some(1) => return Err(EndoError::Cyclic(unknowns.name(k).to_string())),
            _ => {}
        }
        state.insert(k, 1);
        for d in b[&k].variables_used() {
            if b.contains_key(&d) {
                visit(d, b, state, order, unknowns)?;
            }
        }
        state.insert(k, 2);
        order.push(k);
        Ok(())
    }
    for &k in b.keys() {
        visit(k, &b, &mut state, &mut order, unknowns)?;
    }
    let mut done: Bindings = BTreeMap::new();
    for k in order {
        let v = b[&k].substitute(&done);
        done.insert(k, v);
    }
    Ok(done)
}

impl SymbolicMatrix {
    pub fn substitute(&self, bindings: &Bindings) -> Result<SymbolicMatrix, EndoError> {
        let unknowns = self.entries[0][0].vars().clone();
        let b = resolve_bindings(bindings, &unknowns)?;
        let entries = self
            .entries
            .iter()
            .map(|r| r.iter().map(|p| bind(p, &b)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<_, _>>()?;
        Ok(SymbolicMatrix { entries, ..self.clone() })
    }

    pub fn diagonal(&self) -> Vec<Polynomial> {
        (0..self.entries.len()).map(|i| self.entries[i][i].clone()).collect()
    }
}

impl ConstraintSystem {
    /// Substituted system; equations that vanish are dropped.
    pub fn substitute(&self, bindings: &Bindings) -> Result<ConstraintSystem, EndoError> {
        let Some(first) = self.nondegeneracy.first() else { return Ok(self.clone()) };
        let b = resolve_bindings(bindings, first.vars())?;
        let mut equations = Vec::new();
        for e in &self.equations {
            let p = bind(&e.poly, &b)?;
            if !p.is_zero() {
                equations.push(Equation { poly: p, ..e.clone() });
            }
        }
        let nondegeneracy = self.nondegeneracy.iter().map(|p| bind(p, &b)).collect::<Result<_, _>>()?;
        Ok(ConstraintSystem { equations, nondegeneracy })
    }

    pub fn polys(&self) -> Vec<Polynomial> {
        self.equations.iter().map(|e| e.poly.clone()).collect()
    }

    pub fn unknowns_used(&self) -> BTreeSet<usize> {
        self.equations.iter().flat_map(|e| e.poly.variables_used()).collect()
    }
}

/// A fully bound endomorphism: `matrix[i]` holds the coordinates of `phi(e_i)`
/// over the whole basis (row `0` is the unit).
#[derive(Clone, Debug, PartialEq)]
pub struct NumericEndo {
    pub matrix: Vec<Vec<FieldElement>>,
    pub is_homomorphism: bool,
    /// First basis pair `(i, j)` with `phi(e_i e_j) != phi(e_i) phi(e_j)`.
    pub failing_pair: Option<(usize, usize)>,
    pub is_automorphism: bool,
}

/// Builds `phi` from the numeric images of the variables and checks
/// `phi(e_i e_j) = phi(e_i) phi(e_j)` on every basis pair using only the
/// structure constants.
pub fn numeric_from_images(alg: &WeilAlgebra, images: &[Element<FieldElement>]) -> NumericEndo {
    let rows: Vec<Element<FieldElement>> = images_of_monomials(alg, images, alg.basis());
    let like = rows[0].coords[0].clone();
    let mut failing_pair = None;
    'outer: for i in 0..alg.dim() {
        for j in i..alg.dim() {
            let mut lhs = Element::zero(alg.dim(), &like);
            for (k, c) in alg.product_terms(i, j) {
                lhs = lhs.plus(&Element::new(rows[*k].coords.iter().map(|x| x.scaled(c)).collect()));
            }
            let rhs = alg.multiply(&rows[i], &rows[j]);
            if lhs != rhs {
                failing_pair = Some((i, j));
                break 'outer;
            }
        }
    }
    let matrix: Vec<Vec<FieldElement>> = rows.into_iter().map(|e| e.coords).collect();
    let is_homomorphism = failing_pair.is_none();
    let is_automorphism = is_homomorphism && !bareiss_det(matrix.clone(), &like.zero_like()).is_zero();
    NumericEndo { matrix, is_homomorphism, failing_pair, is_automorphism }
}

/// Instantiates every unknown; `values[k]` is the value of unknown `k`.
pub fn numeric_instantiate(e: &SymbolicEndo, values: &[FieldElement]) -> Result<NumericEndo, EndoError> {
    if values.len() != e.unknowns().len() {
        return Err(EndoError::Arity { expected: e.unknowns().len(), got: values.len() });
    }
    let alg = e.algebra();
    let field = values.iter().map(|v| v.field().clone()).find(|f| !f.is_rationals()).unwrap_or_else(Field::rationals);
    let zero = field.zero();
    let mut images = vec![Element::zero(alg.dim(), &zero); alg.vars().len()];
    for (k, &(i, b)) in e.slots().iter().enumerate() {
        images[i].coords[b] = values[k].embed(&field).unwrap_or_else(|_| values[k].clone());
    }
    Ok(numeric_from_images(alg, &images))
}

/// Matrix of `phi . psi` in the row convention: `v -> v M_psi M_phi`.
pub fn compose(phi: &[Vec<FieldElement>], psi: &[Vec<FieldElement>]) -> Vec<Vec<FieldElement>> {
    mat_mul(psi, phi)
}

pub fn invert(phi: &[Vec<FieldElement>]) -> Option<Vec<Vec<FieldElement>>> {
    inverse(phi)
}

/// The block of a full matrix acting on the nilradical.
pub fn nil_block(alg: &WeilAlgebra, m: &[Vec<FieldElement>]) -> Vec<Vec<FieldElement>> {
    let nil = alg.nil_basis();
    nil.iter().map(|&i| nil.iter().map(|&j| m[i][j].clone()).collect()).collect()
}

/// The induced matrix on `n / n^2`.
pub fn linear_block(alg: &WeilAlgebra, m: &[Vec<FieldElement>]) -> Vec<Vec<FieldElement>> {
    alg.cotangent_basis().iter().map(|&i| alg.project(&m[i])).collect()
}

/// `(det M, det M1)` of a numeric endomorphism matrix.
pub fn numeric_determinants(alg: &WeilAlgebra, m: &[Vec<FieldElement>]) -> (FieldElement, FieldElement) {
    let zero = m[0][0].zero_like();
    (bareiss_det(nil_block(alg, m), &zero), bareiss_det(linear_block(alg, m), &zero))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weil::{build_algebra, AlgebraSpec};

    fn tangent() -> Arc<WeilAlgebra> {
        Arc::new(build_algebra(&AlgebraSpec::new("t", &["X", "Y"], 2, &["X^2", "Y^2"])).unwrap())
    }

    fn p(e: &SymbolicEndo, s: &str) -> Polynomial {
        Polynomial::parse(s, e.unknowns(), &Field::rationals()).unwrap()
    }

    #[test]
    fn names() {
        assert_eq!(unknown_names(18, None).join(""), "ABCDEFGHIJKLMNPQRS");
        assert_eq!(unknown_names(28, None)[27], "u28");
        assert_eq!(unknown_names(2, Some("t")), ["t1", "t2"]);
    }

    #[test]
    fn tangent_images_and_xy_row() {
        let e = generic_endo(&tangent(), None);
        assert_eq!(e.describe_image(0), "A*X + B*Y + C*XY");
        assert_eq!(e.describe_image(1), "D*X + E*Y + F*XY");
        let m = extend_to_matrix(&e);
        assert_eq!(m.entries[2], vec![p(&e, "0"), p(&e, "0"), p(&e, "A*E + B*D")]);
    }

    #[test]
    fn tangent_constraints() {
        let e = generic_endo(&tangent(), None);
        let sys = constraint_system(&e);
        let eqs: Vec<String> = sys.equations.iter().map(|q| q.poly.to_string()).collect();
        assert_eq!(eqs, ["2*A*B", "2*D*E"]);
        assert_eq!(sys.nondegeneracy, vec![p(&e, "A*E - B*D")]);
    }

    #[test]
    fn cyclic_bindings_rejected() {
        let e = generic_endo(&tangent(), None);
        let mut b = Bindings::new();
        b.insert(0, p(&e, "B"));
        b.insert(1, p(&e, "A"));
        assert!(matches!(e.substitute(&b), Err(EndoError::Cyclic(_))));
        let mut chain = Bindings::new();
        chain.insert(0, p(&e, "B"));
        chain.insert(1, p(&e, "C + 1"));
        let r = resolve_bindings(&chain, e.unknowns()).unwrap();
        assert_eq!(r[&0], p(&e, "C + 1"));
    }

    #[test]
    fn numeric_oracle() {
        let e = generic_endo(&tangent(), None);
        let v = |xs: [i64; 6]| xs.iter().map(|&x| FieldElement::int(x)).collect::<Vec<_>>();
        let id = numeric_instantiate(&e, &v([1, 0, 0, 0, 1, 0])).unwrap();
        assert!(id.is_automorphism);
        let good = numeric_instantiate(&e, &v([1, 0, 2, 0, 1, 3])).unwrap();
        assert!(good.is_automorphism);
        let bad = numeric_instantiate(&e, &v([1, 1, 0, 0, 1, 0])).unwrap();
        assert!(!bad.is_homomorphism);
        assert_eq!(bad.failing_pair, Some((1, 1)));
    }
}
