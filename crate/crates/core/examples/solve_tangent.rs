//! Case split of the tangent-bundle algebra into families, with the
//! component count and the image of det M1.

use std::sync::Arc;

use weilaut::endo::{constraint_system, generic_endo, linear_matrix};
use weilaut::solver::{classify_det1, component_count, solve, Closure, SolverOptions};
use weilaut::weil::{build_algebra, AlgebraSpec};

fn main() {
    let spec = AlgebraSpec::new("tangent", &["X", "Y"], 2, &["X^2", "Y^2"]);
    let alg = Arc::new(build_algebra(&spec).unwrap());
    let endo = generic_endo(&alg, None);
    let system = constraint_system(&endo);
    let outcomes = solve(&system, &SolverOptions::default());
    let mut families = Vec::new();
    for (branch, closure) in &outcomes {
        match closure {
            Closure::Family(f) => {
                println!("[{}] family", branch.path.join("; "));
                families.push(f.clone());
            }
            Closure::Contradiction(why) => println!("[{}] {why}", branch.path.join("; ")),
            Closure::Residual(_) => println!("[{}] residual", branch.path.join("; ")),
        }
    }
    let m1 = linear_matrix(&endo);
    let dets: Vec<_> = families.iter().map(|f| weilaut::endo::det(&m1.substitute(&f.bindings).unwrap())).collect();
    for d in &dets {
        println!("det M1 = {}", d.compact());
    }
    println!("components: {}", component_count(&families));
    println!("image of det M1: {}", classify_det1(&families, &dets));
}
