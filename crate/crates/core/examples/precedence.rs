//! The same quartic ideal under two monomial orders: the basis differs in
//! its top element (X^4 or XY^3) but the algebras are isomorphic.

use weilaut::weil::{build_algebra, AlgebraSpec};

fn main() {
    let relations = ["X^3*Y", "X^2*Y^2", "Y^4", "X^3 - Y^3"];
    for prec in [["X", "Y"], ["Y", "X"]] {
        let spec = AlgebraSpec::new("quartic", &["X", "Y"], 4, &relations).with_precedence(&prec);
        let alg = build_algebra(&spec).unwrap();
        let gb: Vec<String> = alg.groebner_basis().elements().iter().map(|p| p.to_string()).collect();
        println!("{} > {}", prec[0], prec[1]);
        println!("  groebner basis: {}", gb.join(", "));
        println!("  basis: {}", alg.basis_labels().join(", "));
    }
}
