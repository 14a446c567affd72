//! Builds D^2_2/(X^2, Y^2) and prints its basis, filtration and products.

use weilaut::weil::{build_algebra, AlgebraSpec};

fn main() {
    let spec = AlgebraSpec::new("tangent", &["X", "Y"], 2, &["X^2", "Y^2"]);
    let alg = build_algebra(&spec).expect("valid spec");
    println!("dim {}: {}", alg.dim(), alg.basis_labels().join(", "));
    println!("n^s dimensions: {:?}", alg.nil_power_dims());
    let x = alg.variable(0);
    let y = alg.variable(1);
    println!("X * Y = {}", alg.format_element(&alg.multiply(&x, &y)));
    println!("X * X = {}", alg.format_element(&alg.multiply(&x, &x)));
}
