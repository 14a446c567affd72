//! Resultant and Sturm counting on a pair over Q(c), c^3 = 4: the pair has
//! a common real root exactly when the gcd of its dehomogenized forms does.

use weilaut::poly::{resultant, sturm_count, Bound, Polynomial, Variables};
use weilaut::report::pair_nonzero_real_solution;
use weilaut::scalar::{ratio, Field};

fn main() {
    let k = Field::real_root("c", 3, &ratio(4, 1)).unwrap();
    let vars = Variables::new(&["A", "B"]);
    let f = Polynomial::parse("A^3 - 3/4*c^2*A*B^2 + B^3", &vars, &k).unwrap();
    let g = Polynomial::parse("A^2 + 1/2*c*A*B - 1/2*c^2*B^2", &vars, &k).unwrap();
    let r = resultant(&f, &g, 0).unwrap();
    println!("res_A(f, g) = {r}");
    let h = Polynomial::parse("A^2 + 1/2*c*A - 1/2*c^2", &vars, &k).unwrap();
    let n = sturm_count(&h, &Bound::NegInfinity, &Bound::PosInfinity).unwrap();
    println!("real roots of {}: {n}", h.compact());
    match pair_nonzero_real_solution(&f, &g, 0, 1) {
        Some(w) => println!("nonzero real solution: {w}"),
        None => println!("only A = B = 0"),
    }
}
