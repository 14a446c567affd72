//! The generic endomorphism of the quartic algebra and the polynomial
//! equations that make it an algebra map.

use std::sync::Arc;

use weilaut::endo::{constraint_system, generic_endo};
use weilaut::weil::{build_algebra, AlgebraSpec};

fn main() {
    let spec = AlgebraSpec::new("quartic", &["X", "Y"], 4, &["X^3*Y", "X^2*Y^2", "Y^4", "X^3 - Y^3"])
        .with_precedence(&["Y", "X"]);
    let alg = Arc::new(build_algebra(&spec).unwrap());
    let endo = generic_endo(&alg, None);
    for i in 0..alg.vars().len() {
        println!("phi({}) = {}", alg.vars().name(i), endo.describe_image(i));
    }
    let labels = alg.basis_labels();
    let system = constraint_system(&endo);
    for e in &system.equations {
        println!("{} @ {}: {} = 0", alg.relations()[e.generator], labels[e.basis_index], e.poly.compact());
    }
    println!("nondegenerate: {} != 0", system.nondegeneracy[0].compact());
}
