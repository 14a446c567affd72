//! The symbolic constraint system against the numeric multiplicativity
//! check, and the symbolic matrices against direct multiplication.

mod common;

use common::{analysis, is_identity, small_rational, SHIPPED};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use weilaut::endo::{constraint_system, extend_to_matrix, generic_endo, linear_matrix, numeric_instantiate};
use weilaut::sample::sample_point;
use weilaut::scalar::{Field, FieldElement};
use weilaut::weil::Element;

#[test]
fn constraints_vanish_iff_numerically_multiplicative() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for name in SHIPPED {
        let a = analysis(name);
        let endo = generic_endo(&a.algebra, None);
        let system = constraint_system(&endo);
        let n = endo.unknowns().len();
        let mut seen = [0usize; 2];
        for t in 0..200 {
            let values: Vec<FieldElement> = if t % 2 == 0 || a.families.is_empty() {
                // sparse points hit homomorphisms that are not automorphisms
                (0..n)
                    .map(|_| {
                        if rng.gen_bool(0.5) {
                            FieldElement::int(0)
                        } else {
                            FieldElement::rational(small_rational(&mut rng))
                        }
                    })
                    .collect()
            } else {
                let f = &a.families[t % a.families.len()];
                sample_point(endo.unknowns(), &f.field, &f.bindings, &f.strict_nonzero, &mut rng).unwrap()
            };
            let field = values[0].field();
            let vanish = system.equations.iter().all(|e| e.poly.lift(field).unwrap().evaluate(&values).is_zero());
            let num = numeric_instantiate(&endo, &values).unwrap();
            assert_eq!(vanish, num.is_homomorphism, "{name}: {values:?}");
            seen[vanish as usize] += 1;
        }
        assert!(seen[0] > 0 && seen[1] > 0, "{name}: only one side exercised {seen:?}");
    }
}

#[test]
fn matrix_entries_match_repeated_multiplication() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for name in SHIPPED {
        let a = analysis(name);
        let alg = &a.algebra;
        let endo = generic_endo(alg, None);
        let m = extend_to_matrix(&endo);
        let m1 = linear_matrix(&endo);
        let q = Field::rationals();
        for _ in 0..10 {
            let values: Vec<FieldElement> =
                (0..endo.unknowns().len()).map(|_| FieldElement::rational(small_rational(&mut rng))).collect();
            // images of the variables, then of every basis monomial by products
            let images: Vec<Element<FieldElement>> = (0..alg.vars().len())
                .map(|v| {
                    let mut e = Element::zero(alg.dim(), &q.zero());
                    for (k, &(var, b)) in endo.slots().iter().enumerate() {
                        if var == v {
                            e.coords[b] = values[k].clone();
                        }
                    }
                    e
                })
                .collect();
            let nil = alg.nil_basis();
            for (r, &i) in nil.iter().enumerate() {
                let mut img = alg.one(&q.zero());
                for (v, &exp) in alg.basis()[i].exponents().iter().enumerate() {
                    img = alg.multiply(&img, &alg.pow(&images[v], exp));
                }
                for (c, &j) in nil.iter().enumerate() {
                    assert_eq!(m.entries[r][c].evaluate(&values), img.coords[j], "{name}: ({i}, {j})");
                }
                if let Some(p) = alg.cotangent_basis().iter().position(|&k| k == i) {
                    let proj = alg.project(&img.coords);
                    for (c, x) in proj.iter().enumerate() {
                        assert_eq!(&m1.entries[p][c].evaluate(&values), x);
                    }
                }
            }
            let num = numeric_instantiate(&endo, &values).unwrap();
            for (r, &i) in nil.iter().enumerate() {
                for (c, &j) in nil.iter().enumerate() {
                    assert_eq!(num.matrix[i][j], m.entries[r][c].evaluate(&values));
                }
            }
        }
    }
}

#[test]
fn identity_satisfies_every_system() {
    for name in SHIPPED {
        let a = analysis(name);
        let endo = generic_endo(&a.algebra, None);
        let values: Vec<FieldElement> = endo
            .slots()
            .iter()
            .map(|&(v, b)| {
                FieldElement::int(
                    (a.algebra.basis()[b] == weilaut::poly::Monomial::var(a.algebra.vars().len(), v)) as i64,
                )
            })
            .collect();
        for e in &a.system.equations {
            assert!(e.poly.evaluate(&values).is_zero(), "{name}: {}", e.poly);
        }
        let num = numeric_instantiate(&endo, &values).unwrap();
        assert!(num.is_automorphism && is_identity(&num));
    }
}

#[test]
fn failing_pair_is_reported() {
    let a = analysis("tangent");
    let endo = generic_endo(&a.algebra, None);
    // A = B = E = 1: phi(X) = X + Y squares to 2XY
    let values: Vec<FieldElement> = [1, 1, 0, 0, 1, 0].into_iter().map(FieldElement::int).collect();
    let num = numeric_instantiate(&endo, &values).unwrap();
    let labels = a.algebra.basis_labels();
    let (i, j) = num.failing_pair.unwrap();
    assert_eq!((labels[i].as_str(), labels[j].as_str()), ("X", "X"));
}
