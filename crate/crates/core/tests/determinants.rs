//! det M and det M1 are multiplicative on sampled automorphism pairs, and the
//! family determinants agree with numeric ones.

mod common;

use common::{analysis, SHIPPED};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use weilaut::endo::{compose, generic_endo, invert, numeric_determinants, numeric_instantiate, NumericEndo};
use weilaut::sample::sample_point;
use weilaut::scalar::FieldElement;

fn is_hom_matrix(alg: &weilaut::weil::WeilAlgebra, m: &[Vec<FieldElement>]) -> bool {
    // phi(e_i e_j) = phi(e_i) phi(e_j) read off the rows
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            let mut lhs = vec![FieldElement::int(0); alg.dim()];
            for (k, c) in alg.product_terms(i, j) {
                for (t, x) in m[*k].iter().enumerate() {
                    lhs[t] = lhs[t].clone() + x.scale(c);
                }
            }
            let rhs =
                alg.multiply(&weilaut::weil::Element::new(m[i].clone()), &weilaut::weil::Element::new(m[j].clone()));
            if lhs != rhs.coords {
                return false;
            }
        }
    }
    true
}

#[test]
fn determinants_are_multiplicative() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for name in SHIPPED {
        let a = analysis(name);
        let alg = &a.algebra;
        let endo = generic_endo(alg, None);
        for f in &a.families {
            let mut draw = || -> NumericEndo {
                let v = sample_point(endo.unknowns(), &f.field, &f.bindings, &f.strict_nonzero, &mut rng).unwrap();
                numeric_instantiate(&endo, &v).unwrap()
            };
            for _ in 0..100 {
                let (phi, psi) = (draw(), draw());
                assert!(phi.is_automorphism && psi.is_automorphism);
                let comp = compose(&phi.matrix, &psi.matrix);
                let (d, d1) = numeric_determinants(alg, &comp);
                let (dp, d1p) = numeric_determinants(alg, &phi.matrix);
                let (ds, d1s) = numeric_determinants(alg, &psi.matrix);
                assert_eq!(d, dp * ds, "{name}");
                assert_eq!(d1, d1p * d1s, "{name}");
                assert!(is_hom_matrix(alg, &comp), "{name}: composite not multiplicative");
            }
        }
    }
}

#[test]
fn inverse_of_an_automorphism_is_an_automorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for name in SHIPPED {
        let a = analysis(name);
        let endo = generic_endo(&a.algebra, None);
        for f in &a.families {
            let v = sample_point(endo.unknowns(), &f.field, &f.bindings, &f.strict_nonzero, &mut rng).unwrap();
            let phi = numeric_instantiate(&endo, &v).unwrap();
            let inv = invert(&phi.matrix).unwrap();
            assert!(is_hom_matrix(&a.algebra, &inv), "{name}");
        }
    }
}

#[test]
fn family_determinants_match_numeric_ones() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for name in SHIPPED {
        let a = analysis(name);
        let endo = generic_endo(&a.algebra, None);
        for (f, dets) in a.families.iter().zip(&a.family_dets) {
            for _ in 0..20 {
                let v = sample_point(endo.unknowns(), &f.field, &f.bindings, &f.strict_nonzero, &mut rng).unwrap();
                let phi = numeric_instantiate(&endo, &v).unwrap();
                let (d, d1) = numeric_determinants(&a.algebra, &phi.matrix);
                assert_eq!(dets.det_full.evaluate(&v), d, "{name}");
                assert_eq!(dets.det_linear.evaluate(&v), d1, "{name}");
            }
        }
    }
}
