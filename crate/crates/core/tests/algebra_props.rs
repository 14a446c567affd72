//! Multiplication in the shipped algebras against independent oracles.

mod common;

use common::{algebra, random_element, small_rational, SHIPPED};
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use weilaut::poly::{Monomial, Polynomial};
use weilaut::quotient::{monomials_up_to, normal_form};
use weilaut::scalar::{Field, FieldElement, Rational};
use weilaut::weil::{Element, WeilAlgebra};

/// Row echelon rank over Q, written without the library's linear algebra.
fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone() / rows[r][c].clone();
                let pivot = rows[r].clone();
                for (x, p) in rows[i].iter_mut().zip(pivot) {
                    *x -= p * f.clone();
                }
            }
        }
        r += 1;
    }
    r
}

/// Truncations `trunc_r(m g)` span the ideal in degrees `<= r`.
fn ideal_rows(alg: &WeilAlgebra, monos: &[Monomial]) -> Vec<Vec<Rational>> {
    let r = alg.spec().order;
    let q = Field::rationals();
    let mut rows = Vec::new();
    for g in alg.relations() {
        for m in monomials_up_to(alg.vars().len(), r) {
            let p = g.mul_term(&m, &q.one());
            rows.push(monos.iter().map(|x| p.coeff(x).as_rational().unwrap()).collect());
        }
    }
    rows
}

fn coords_in(p: &Polynomial, monos: &[Monomial]) -> Vec<Rational> {
    monos.iter().map(|x| p.coeff(x).as_rational().unwrap()).collect()
}

#[test]
fn dimension_matches_linear_algebra() {
    for name in SHIPPED {
        let alg = algebra(name);
        let monos = monomials_up_to(2, alg.spec().order);
        let rows = ideal_rows(&alg, &monos);
        assert_eq!(monos.len() - rank(rows), alg.dim(), "{name}");
    }
}

#[test]
fn normal_form_differs_by_an_ideal_element() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for name in SHIPPED {
        let alg = algebra(name);
        let q = Field::rationals();
        let r = alg.spec().order;
        let monos = monomials_up_to(2, r);
        let rows = ideal_rows(&alg, &monos);
        let base = rank(rows.clone());
        for _ in 0..200 {
            let mut terms = Vec::new();
            for m in &monos {
                if rand::Rng::gen_bool(&mut rng, 0.4) {
                    terms.push((m.clone(), FieldElement::rational(small_rational(&mut rng))));
                }
            }
            let p = Polynomial::from_terms(alg.vars(), &q, terms);
            let nf = normal_form(&p, alg.groebner_basis());
            assert!(nf.terms().all(|(m, _)| alg.index_of(m).is_some()), "{name}: {nf} not reduced");
            let diff = &p - &nf;
            let mut with = rows.clone();
            with.push(coords_in(&diff, &monos));
            assert_eq!(rank(with), base, "{name}: {p} - {nf} not in the ideal");
        }
    }
}

fn poly_of(alg: &WeilAlgebra, e: &Element<FieldElement>) -> Polynomial {
    let q = Field::rationals();
    Polynomial::from_terms(alg.vars(), &q, alg.basis().iter().cloned().zip(e.coords.iter().cloned()))
}

#[test]
fn multiply_agrees_with_product_then_normal_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for name in SHIPPED {
        let alg = algebra(name);
        for _ in 0..500 {
            let a = random_element(&alg, &mut rng);
            let b = random_element(&alg, &mut rng);
            let via_poly = normal_form(&(&poly_of(&alg, &a) * &poly_of(&alg, &b)), alg.groebner_basis());
            assert_eq!(alg.element_of(&via_poly), alg.multiply(&a, &b), "{name}");
        }
    }
}

#[test]
fn ring_axioms_on_basis_triples() {
    for name in SHIPPED {
        let alg = algebra(name);
        let q = Field::rationals();
        let e: Vec<Element<FieldElement>> = (0..alg.dim()).map(|i| Element::unit(alg.dim(), i, &q.zero())).collect();
        let one = alg.one(&q.zero());
        for i in 0..alg.dim() {
            assert_eq!(alg.multiply(&one, &e[i]), e[i]);
            for j in 0..alg.dim() {
                let ij = alg.multiply(&e[i], &e[j]);
                assert_eq!(ij, alg.multiply(&e[j], &e[i]), "{name}: commutativity");
                for k in 0..alg.dim() {
                    assert_eq!(
                        alg.multiply(&ij, &e[k]),
                        alg.multiply(&e[i], &alg.multiply(&e[j], &e[k])),
                        "{name}: associativity"
                    );
                }
            }
        }
    }
}

#[test]
fn nilradical_filtration_is_strict() {
    for name in SHIPPED {
        let alg = algebra(name);
        let dims = alg.nil_power_dims();
        assert_eq!(dims[0], alg.dim() - 1);
        assert!(dims.windows(2).all(|w| w[0] > w[1] || w[0] == 0));
        assert_eq!(*dims.last().unwrap(), 0);
        assert_eq!(dims.len() - 1, alg.nilpotency_order());
    }
}

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn poly_strategy(alg: &'static WeilAlgebra) -> impl Strategy<Value = Polynomial> {
    let monos = monomials_up_to(2, alg.spec().order + 2);
    prop::collection::vec((0..monos.len(), rational()), 0..8).prop_map(move |terms| {
        Polynomial::from_terms(
            alg.vars(),
            &Field::rationals(),
            terms.into_iter().map(|(i, c)| (monos[i].clone(), FieldElement::rational(c))),
        )
    })
}

fn quartic() -> &'static WeilAlgebra {
    static ALG: std::sync::OnceLock<std::sync::Arc<WeilAlgebra>> = std::sync::OnceLock::new();
    ALG.get_or_init(|| algebra("quartic"))
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn normal_form_is_idempotent(p in poly_strategy(quartic())) {
        let gb = quartic().groebner_basis();
        let nf = normal_form(&p, gb);
        prop_assert_eq!(normal_form(&nf, gb), nf);
    }

    #[test]
    fn normal_form_is_linear(p in poly_strategy(quartic()), r in poly_strategy(quartic()), c in rational()) {
        let gb = quartic().groebner_basis();
        let lhs = normal_form(&(&p.scale_rational(&c) + &r), gb);
        let rhs = &normal_form(&p, gb).scale_rational(&c) + &normal_form(&r, gb);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn normal_form_is_multiplicative(p in poly_strategy(quartic()), r in poly_strategy(quartic())) {
        let gb = quartic().groebner_basis();
        let lhs = normal_form(&(&p * &r), gb);
        let rhs = normal_form(&(&normal_form(&p, gb) * &normal_form(&r, gb)), gb);
        prop_assert_eq!(lhs, rhs);
    }
}
