#![allow(dead_code)]

use std::sync::Arc;

use rand::Rng;
use weilaut::endo::{Bindings, NumericEndo};
use weilaut::report::{analyze, Analysis};
use weilaut::scalar::{FieldElement, Rational};
use weilaut::solver::SolverOptions;
use weilaut::weil::{build_algebra, parse_specs, AlgebraSpec, Element, WeilAlgebra};

pub const SHIPPED: [&str; 3] = ["tangent", "quartic", "sextic"];

pub fn spec_path(name: &str) -> String {
    format!("{}/specs/{name}.weil", env!("CARGO_MANIFEST_DIR"))
}

pub fn spec(name: &str) -> AlgebraSpec {
    let text = std::fs::read_to_string(spec_path(name)).unwrap();
    parse_specs(&text).unwrap().remove(0)
}

pub fn algebra(name: &str) -> Arc<WeilAlgebra> {
    Arc::new(build_algebra(&spec(name)).unwrap())
}

pub fn analysis(name: &str) -> Analysis {
    analyze(algebra(name), &SolverOptions::default())
}

pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(rng.gen_range(-5i64..=5).into(), rng.gen_range(1i64..=4).into())
}

pub fn random_element<R: Rng>(alg: &WeilAlgebra, rng: &mut R) -> Element<FieldElement> {
    Element::new((0..alg.dim()).map(|_| FieldElement::rational(small_rational(rng))).collect())
}

pub fn family_bindings(a: &Analysis, i: usize) -> &Bindings {
    &a.families[i].bindings
}

pub fn is_identity(m: &NumericEndo) -> bool {
    m.matrix
        .iter()
        .enumerate()
        .all(|(i, row)| row.iter().enumerate().all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() }))
}
