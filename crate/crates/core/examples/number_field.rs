//! Exact arithmetic in Q(c) with c^3 = 4, c taken as the real cube root.

use weilaut::scalar::{ratio, Field};

fn main() {
    let k = Field::real_root("c", 3, &ratio(4, 1)).unwrap();
    let c = k.generator();
    let c2 = c.clone() * c.clone();
    println!("c^2 = {c2}");
    println!("c^3 = {}", c.pow(3));
    let x = c.clone() - k.from_int(2);
    let inv = x.inv().unwrap();
    println!("1/(c - 2) = {inv}");
    println!("check: {}", x * inv);
    // c is about 1.587
    println!("sign(c^2 - 2c) = {}", (c2 - c.clone() * k.from_int(2)).sign());
    println!("c ~ {}", c.approximate(&ratio(1, 1000)));
}
