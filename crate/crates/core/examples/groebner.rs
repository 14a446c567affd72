//! Reduced Groebner basis and normal forms for an ideal with truncation.

use weilaut::poly::{MonomialOrder, Polynomial, Variables};
use weilaut::quotient::{buchberger, normal_form, standard_monomials, IdealPresentation};
use weilaut::scalar::Field;

fn main() {
    let vars = Variables::new(&["X", "Y"]);
    let q = Field::rationals();
    let gens = ["X^3 + Y^4", "X^4 + Y^5"].iter().map(|g| Polynomial::parse(g, &vars, &q).unwrap()).collect();
    let ideal = IdealPresentation::new(&vars, &q, gens, 6);
    let order = MonomialOrder::new(vec![1, 0]).unwrap();
    let gb = buchberger(&ideal, &order);
    for g in gb.elements() {
        println!("{g}");
    }
    let std = standard_monomials(&gb, 2, 6);
    println!("{} standard monomials", std.len());
    let p = Polynomial::parse("X^3*Y^2 + Y^4", &vars, &q).unwrap();
    println!("nf({p}) = {}", normal_form(&p, &gb));
}
