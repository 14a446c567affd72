//! Seeded sampling of parameter values for families and binding files.

use rand::Rng;

use crate::endo::{resolve_bindings, Bindings};
use crate::poly::{Polynomial, Variables};
use crate::scalar::{Field, FieldElement, Rational};

/// A small rational `n / d`, `|n| <= 6`, `1 <= d <= 3`.
pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    let n: i64 = rng.gen_range(-6..=6);
    let d: i64 = rng.gen_range(1..=3);
    Rational::new(n.into(), d.into())
}

/// Values for every unknown: free ones drawn at random, bound ones
/// evaluated. Draws are repeated until every `nonzero` polynomial is
/// nonzero; gives up after 200 attempts.
pub fn sample_point<R: Rng>(
    unknowns: &Variables,
    field: &Field,
    bindings: &Bindings,
    nonzero: &[Polynomial],
    rng: &mut R,
) -> Option<Vec<FieldElement>> {
    let resolved = resolve_bindings(bindings, unknowns).ok()?;
    for _ in 0..200 {
        let mut values: Vec<FieldElement> = (0..unknowns.len())
            .map(|i| if resolved.contains_key(&i) { field.zero() } else { field.from_rational(random_rational(rng)) })
            .collect();
        for (k, v) in &resolved {
            values[*k] = v.lift(field).ok()?.evaluate(&values);
        }
        let ok = nonzero.iter().all(|p| match p.lift(field) {
            Ok(p) => !p.evaluate(&values).is_zero(),
            Err(_) => false,
        });
        if ok {
            return Some(values);
        }
    }
    None
}
