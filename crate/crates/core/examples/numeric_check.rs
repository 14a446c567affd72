//! Samples the sextic family found by the solver and checks each point
//! with the numeric oracle (multiplicativity on all basis pairs).

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use weilaut::cli::check_samples;
use weilaut::endo::generic_endo;
use weilaut::report::analyze;
use weilaut::solver::SolverOptions;
use weilaut::weil::{build_algebra, AlgebraSpec};

fn main() {
    let spec = AlgebraSpec::new("sextic", &["X", "Y"], 6, &["X^3 + Y^4", "X^4 + Y^5"]).with_precedence(&["Y", "X"]);
    let alg = Arc::new(build_algebra(&spec).unwrap());
    let analysis = analyze(alg.clone(), &SolverOptions::default());
    let endo = generic_endo(&alg, None);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (i, f) in analysis.families.iter().enumerate() {
        let results = check_samples(&endo, i + 1, &f.field, &f.bindings, &f.strict_nonzero, 10, &mut rng);
        let ok = results.iter().filter(|r| r.passed()).count();
        println!("family {}: {ok}/{} automorphisms, det M1 = {}", i + 1, results.len(), results[0].det_linear);
    }
}
