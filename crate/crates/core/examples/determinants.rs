//! The matrices M (on the nilradical) and M1 (on n/n^2) for the quartic
//! family B = J = 0, K = A, M = C, and their determinants.

use std::sync::Arc;

use weilaut::endo::{determinants, extend_to_matrix, generic_endo, linear_matrix, Bindings};
use weilaut::poly::Polynomial;
use weilaut::weil::{build_algebra, AlgebraSpec};

fn main() {
    let spec = AlgebraSpec::new("quartic", &["X", "Y"], 4, &["X^3*Y", "X^2*Y^2", "Y^4", "X^3 - Y^3"])
        .with_precedence(&["Y", "X"]);
    let alg = Arc::new(build_algebra(&spec).unwrap());
    let endo = generic_endo(&alg, None);
    let u = endo.unknowns();
    let mut b = Bindings::new();
    for (k, v) in [("B", "0"), ("J", "0"), ("K", "A"), ("M", "C")] {
        b.insert(u.index_of(k).unwrap(), Polynomial::parse(v, u, endo.field()).unwrap());
    }
    let m = extend_to_matrix(&endo).substitute(&b).unwrap();
    let m1 = linear_matrix(&endo).substitute(&b).unwrap();
    for (label, row) in m.row_labels.iter().zip(&m.entries) {
        let cells: Vec<String> = row.iter().map(|p| p.compact()).collect();
        println!("{label:>5} | {}", cells.join("  "));
    }
    let d = determinants(&m, &m1);
    println!("det M = {}", d.det_full.compact());
    println!("det M1 = {}", d.det_linear.compact());
}
