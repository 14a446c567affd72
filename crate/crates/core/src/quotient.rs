//! Gröbner bases (Buchberger) and normal forms for the truncated ideals that
//! present Weil algebras.

use std::cmp::Ordering;

use crate::poly::{Monomial, MonomialOrder, Polynomial, Variables};
use crate::scalar::Field;

/// Generators plus a truncation order `r`: the ideal also contains every
/// monomial of total degree `r + 1`, so the quotient is finite-dimensional.
#[derive(Clone, Debug)]
pub struct IdealPresentation {
    pub vars: Variables,
    pub field: Field,
    pub generators: Vec<Polynomial>,
    pub truncation: u32,
}

impl IdealPresentation {
    pub fn new(vars: &Variables, field: &Field, generators: Vec<Polynomial>, truncation: u32) -> Self {
        IdealPresentation { vars: vars.clone(), field: field.clone(), generators, truncation }
    }

    /// Generators followed by all monomials of degree `r + 1`.
    pub fn all_generators(&self) -> Vec<Polynomial> {
        let mut gens: Vec<Polynomial> = self.generators.iter().filter(|g| !g.is_zero()).cloned().collect();
        for m in monomials_of_degree(self.vars.len(), self.truncation + 1) {
            gens.push(Polynomial::term(&self.vars, m, self.field.one()));
        }
        gens
    }
}

/// A reduced Gröbner basis: monic elements, none of whose terms is divisible
/// by another element's leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    elements: Vec<Polynomial>,
    leading: Vec<Monomial>,
    order: MonomialOrder,
}

impl GroebnerBasis {
    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leading
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// The ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.leading.iter().any(Monomial::is_one)
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.leading.iter().any(|l| l.divides(m))
    }
}

/// Every monomial in `nvars` variables of total degree exactly `d`.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == nvars {
            cur.push(left);
            out.push(Monomial::from_exponents(cur.clone()));
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            rec(nvars, i + 1, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(nvars, 0, d, &mut Vec::new(), &mut out);
    out
}

/// Every monomial of total degree at most `d`, degree by degree.
pub fn monomials_up_to(nvars: usize, d: u32) -> Vec<Monomial> {
    (0..=d).flat_map(|k| monomials_of_degree(nvars, k)).collect()
}

/// Fully reduces `p` modulo `basis` (monic elements with the given leading
/// monomials): the remainder has no term divisible by any leading monomial.
fn reduce(p: &Polynomial, basis: &[Polynomial], leading: &[Monomial], order: &MonomialOrder) -> Polynomial {
    let mut rest = p.clone();
    let mut rem = Polynomial::zero(p.vars(), p.field());
    while let Ok((m, c)) = rest.leading_term(order) {
        match leading.iter().position(|l| l.divides(&m)) {
            Some(k) => {
                let q = m.div(&leading[k]).unwrap();
                rest = &rest - &basis[k].mul_term(&q, &c);
            }
            None => {
                let t = Polynomial::term(p.vars(), m, c);
                rest = &rest - &t;
                rem = &rem + &t;
            }
        }
    }
    rem
}

fn s_polynomial(f: &Polynomial, fl: &Monomial, g: &Polynomial, gl: &Monomial) -> Polynomial {
    let l = fl.lcm(gl);
    let one = f.field().one();
    &f.mul_term(&l.div(fl).unwrap(), &one) - &g.mul_term(&l.div(gl).unwrap(), &one)
}

/// Buchberger's algorithm with the coprime-leading-monomial criterion and
/// the normal (smallest lcm first) selection strategy. Returns `None` if
/// `max_reductions` S-polynomial reductions do not suffice.
pub fn groebner_with_limit(
    generators: &[Polynomial],
    order: &MonomialOrder,
    max_reductions: Option<usize>,
) -> Option<Vec<Polynomial>> {
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut leading: Vec<Monomial> = Vec::new();
    for g in generators {
        let r = reduce(g, &basis, &leading, order);
        if !r.is_zero() {
            let r = r.monic(order);
            leading.push(r.leading_term(order).unwrap().0);
            basis.push(r);
        }
    }
    let mut pairs: Vec<(usize, usize)> = (0..basis.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let mut reductions = 0;
    while !pairs.is_empty() {
        if leading.iter().any(Monomial::is_one) {
            break;
        }
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                let la = leading[pairs[a].0].lcm(&leading[pairs[a].1]);
                let lb = leading[pairs[b].0].lcm(&leading[pairs[b].1]);
                order.cmp(&la, &lb).then(pairs[a].cmp(&pairs[b]))
            })
            .unwrap();
        let (i, j) = pairs.remove(best);
        if leading[i].is_coprime(&leading[j]) {
            continue;
        }
        reductions += 1;
        if max_reductions.is_some_and(|m| reductions > m) {
            return None;
        }
        let s = s_polynomial(&basis[i], &leading[i], &basis[j], &leading[j]);
        let r = reduce(&s, &basis, &leading, order);
        if !r.is_zero() {
            let r = r.monic(order);
            let k = basis.len();
            leading.push(r.leading_term(order).unwrap().0);
            basis.push(r);
            pairs.extend((0..k).map(|i| (i, k)));
        }
    }
    Some(interreduce(basis, order))
}

/// Minimal, tail-reduced, monic; sorted by leading monomial.
fn interreduce(basis: Vec<Polynomial>, order: &MonomialOrder) -> Vec<Polynomial> {
    let mut with_lead: Vec<(Monomial, Polynomial)> =
        basis.into_iter().map(|p| (p.leading_term(order).unwrap().0, p)).collect();
    with_lead.sort_by(|a, b| order.cmp(&a.0, &b.0));
    let mut minimal: Vec<(Monomial, Polynomial)> = Vec::new();
    for (m, p) in with_lead {
        if !minimal.iter().any(|(l, _)| l.divides(&m)) {
            minimal.push((m, p));
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Polynomial> =
            minimal.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, (_, p))| p.clone()).collect();
        let others_lead: Vec<Monomial> =
            minimal.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, (l, _))| l.clone()).collect();
        out.push(reduce(&minimal[k].1, &others, &others_lead, order).monic(order));
    }
    out
}

pub fn groebner(generators: &[Polynomial], order: &MonomialOrder) -> Vec<Polynomial> {
    groebner_with_limit(generators, order, None).expect("no limit")
}

/// Reduced Gröbner basis of the generators together with the truncation
/// monomials of degree `r + 1`.
pub fn buchberger(ideal: &IdealPresentation, order: &MonomialOrder) -> GroebnerBasis {
    let elements = groebner(&ideal.all_generators(), order);
    let leading = elements.iter().map(|p| p.leading_term(order).unwrap().0).collect();
    GroebnerBasis { elements, leading, order: order.clone() }
}

/// The unique remainder of `p` modulo the basis; it is supported on standard
/// monomials.
pub fn normal_form(p: &Polynomial, gb: &GroebnerBasis) -> Polynomial {
    reduce(p, &gb.elements, &gb.leading, &gb.order)
}

/// Monomials of degree at most `r` divisible by no leading monomial, sorted
/// ascending under the basis order.
pub fn standard_monomials(gb: &GroebnerBasis, nvars: usize, r: u32) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = monomials_up_to(nvars, r).into_iter().filter(|m| gb.is_standard(m)).collect();
    out.sort_by(|a, b| gb.order.cmp(a, b));
    out
}

/// Graded order with the first declared variable heaviest inside a degree:
/// `1, X, Y, X^2, XY, Y^2, ...`. Used to lay out quotient bases independently
/// of the precedence that drives reduction.
pub fn basis_layout_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| b.exponents().cmp(a.exponents()))
}
