//! Exact scalars: rationals and elements of a simple real algebraic extension
//! `Q[c]/(p(c))`, with a sign oracle for the embedding fixed by an isolating
//! interval of one real root of `p`.
//!
//! Pure `Q` is the degree-one extension `Q[c]/(c)`; both share one code path.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields: {0} and {1}")]
    FieldMismatch(String, String),
    #[error("invalid extension: {0}")]
    InvalidExtension(String),
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug)]
struct FieldData {
    generator: String,
    /// Monic modulus, coefficients from the constant term upward.
    modulus: Vec<Rational>,
    lo: Rational,
    hi: Rational,
}

/// A simple extension `Q[c]/(p(c))` together with a rational interval
/// isolating the real root that `c` stands for.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

static RATIONALS: Lazy<Field> = Lazy::new(|| {
    Field(Arc::new(FieldData { generator: String::new(), modulus: vec![rat(0), rat(1)], lo: rat(-1), hi: rat(1) }))
});

impl Field {
    pub fn rationals() -> Field {
        RATIONALS.clone()
    }

    /// Builds `Q[generator]/(modulus)`. The modulus must be monic of degree at
    /// least one and change sign over `(lo, hi)`; irreducibility is the
    /// caller's responsibility.
    pub fn extension(
        generator: &str,
        modulus: Vec<Rational>,
        lo: Rational,
        hi: Rational,
    ) -> Result<Field, ScalarError> {
        let mut modulus = modulus;
        trim(&mut modulus);
        if modulus.len() < 2 {
            return Err(ScalarError::InvalidExtension("modulus must have positive degree".into()));
        }
        if !modulus.last().unwrap().is_one() {
            return Err(ScalarError::InvalidExtension("modulus must be monic".into()));
        }
        if lo >= hi {
            return Err(ScalarError::InvalidExtension("empty isolating interval".into()));
        }
        let (slo, shi) = (sign_rat(&horner(&modulus, &lo)), sign_rat(&horner(&modulus, &hi)));
        if slo * shi >= 0 {
            return Err(ScalarError::InvalidExtension("modulus does not change sign on the isolating interval".into()));
        }
        Ok(Field(Arc::new(FieldData { generator: generator.to_string(), modulus, lo, hi })))
    }

    /// `Q[generator]/(generator^k - d)` embedded at the positive real root,
    /// isolated between consecutive integers. Requires `d > 0` and `k >= 1`.
    pub fn real_root(generator: &str, k: u32, d: &Rational) -> Result<Field, ScalarError> {
        if !d.is_positive() || k == 0 {
            return Err(ScalarError::InvalidExtension("need k >= 1 and d > 0".into()));
        }
        let mut modulus = vec![Rational::zero(); k as usize + 1];
        modulus[0] = -d.clone();
        modulus[k as usize] = Rational::one();
        // largest integer n with n^k <= d
        let n = d.floor().to_integer().nth_root(k);
        let (lo, hi) = (Rational::from_integer(n.clone()), Rational::from_integer(n + 1));
        let lo = if horner(&modulus, &lo).is_zero() { lo - ratio(1, 2) } else { lo };
        Field::extension(generator, modulus, lo, hi)
    }

    pub fn degree(&self) -> usize {
        self.0.modulus.len() - 1
    }

    pub fn is_rationals(&self) -> bool {
        self.degree() == 1 && self.0.modulus[0].is_zero()
    }

    pub fn generator_name(&self) -> &str {
        &self.0.generator
    }

    pub fn modulus(&self) -> &[Rational] {
        &self.0.modulus
    }

    pub fn isolating_interval(&self) -> (&Rational, &Rational) {
        (&self.0.lo, &self.0.hi)
    }

    pub fn generator(&self) -> FieldElement {
        FieldElement::from_coeffs(self, vec![Rational::zero(), Rational::one()])
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { field: self.clone(), coeffs: Vec::new() }
    }

    pub fn one(&self) -> FieldElement {
        self.from_rational(Rational::one())
    }

    pub fn from_rational(&self, q: Rational) -> FieldElement {
        FieldElement::from_coeffs(self, vec![q])
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        self.from_rational(rat(n))
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.modulus == other.0.modulus
                && self.0.generator == other.0.generator
                && self.0.lo == other.0.lo
                && self.0.hi == other.0.hi)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rationals() {
            return write!(f, "Q");
        }
        let g = &self.0.generator;
        write!(f, "Q[{g}]/({}), {g} in ({}, {})", univariate_text(&self.0.modulus, g), self.0.lo, self.0.hi)
    }
}

/// An element of a [`Field`], stored as the coefficient list of its
/// representative of degree below the field degree.
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    coeffs: Vec<Rational>,
}

impl FieldElement {
    pub fn rational(q: Rational) -> FieldElement {
        Field::rationals().from_rational(q)
    }

    pub fn int(n: i64) -> FieldElement {
        FieldElement::rational(rat(n))
    }

    pub fn from_coeffs(field: &Field, coeffs: Vec<Rational>) -> FieldElement {
        let mut coeffs = coeffs;
        reduce_mod(&mut coeffs, field.modulus());
        FieldElement { field: field.clone(), coeffs }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// The value as a rational, when it lies in the prime field.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    /// Moves a rational element into `field`; elements already in `field` are
    /// returned unchanged.
    pub fn embed(&self, field: &Field) -> Result<FieldElement, ScalarError> {
        if &self.field == field {
            return Ok(self.clone());
        }
        match self.as_rational() {
            Some(q) if self.field.is_rationals() => Ok(field.from_rational(q)),
            _ => Err(ScalarError::FieldMismatch(self.field.to_string(), field.to_string())),
        }
    }

    fn check_same(&self, other: &Self) -> Result<(), ScalarError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(ScalarError::FieldMismatch(self.field.to_string(), other.field.to_string()))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<FieldElement, ScalarError> {
        self.check_same(other)?;
        let mut coeffs = add_coeffs(&self.coeffs, &other.coeffs);
        trim(&mut coeffs);
        Ok(FieldElement { field: self.field.clone(), coeffs })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<FieldElement, ScalarError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<FieldElement, ScalarError> {
        self.check_same(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(self.field.zero());
        }
        if self.coeffs.len() == 1 && other.coeffs.len() == 1 {
            return Ok(self.field.from_rational(&self.coeffs[0] * &other.coeffs[0]));
        }
        Ok(FieldElement::from_coeffs(&self.field, mul_coeffs(&self.coeffs, &other.coeffs)))
    }

    pub fn checked_div(&self, other: &Self) -> Result<FieldElement, ScalarError> {
        self.check_same(other)?;
        self.checked_mul(&other.inv()?)
    }

    /// Multiplicative inverse by the extended Euclidean algorithm against the
    /// modulus.
    pub fn inv(&self) -> Result<FieldElement, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if self.coeffs.len() == 1 {
            return Ok(self.field.from_rational(self.coeffs[0].recip()));
        }
        // invariant: s * self = r (mod modulus)
        let (mut r0, mut r1) = (self.field.modulus().to_vec(), self.coeffs.clone());
        let (mut s0, mut s1): (Vec<Rational>, Vec<Rational>) = (Vec::new(), vec![Rational::one()]);
        while r1.len() > 1 {
            let (q, r) = divrem_coeffs(&r0, &r1);
            let mut s2 = sub_coeffs(&s0, &mul_coeffs(&q, &s1));
            trim(&mut s2);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        if r1.is_empty() {
            // only possible when the modulus is reducible
            return Err(ScalarError::InvalidExtension("element shares a factor with the modulus".into()));
        }
        let lead = r1[0].recip();
        Ok(FieldElement::from_coeffs(&self.field, s1.into_iter().map(|c| c * &lead).collect()))
    }

    pub fn scale(&self, q: &Rational) -> FieldElement {
        if q.is_zero() {
            return self.field.zero();
        }
        FieldElement { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    pub fn pow(&self, mut e: u32) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Sign of the real number this element denotes under the field's
    /// embedding. The isolating interval is bisected until an exact interval
    /// enclosure of the value excludes zero.
    pub fn sign(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        if self.coeffs.len() == 1 {
            return sign_rat(&self.coeffs[0]);
        }
        let modulus = self.field.modulus();
        let (mut lo, mut hi) = (self.field.0.lo.clone(), self.field.0.hi.clone());
        let sign_lo = sign_rat(&horner(modulus, &lo));
        loop {
            let (elo, ehi) = interval_horner(&self.coeffs, &lo, &hi);
            if elo.is_positive() {
                return 1;
            }
            if ehi.is_negative() {
                return -1;
            }
            let mid = (&lo + &hi) / rat(2);
            let at_mid = sign_rat(&horner(modulus, &mid));
            if at_mid == 0 {
                return sign_rat(&horner(&self.coeffs, &mid));
            }
            if at_mid == sign_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }

    /// A rational approximation of the value within `tol`.
    pub fn approximate(&self, tol: &Rational) -> Rational {
        if self.coeffs.len() <= 1 {
            return self.as_rational().unwrap();
        }
        let modulus = self.field.modulus();
        let (mut lo, mut hi) = (self.field.0.lo.clone(), self.field.0.hi.clone());
        let sign_lo = sign_rat(&horner(modulus, &lo));
        loop {
            let (elo, ehi) = interval_horner(&self.coeffs, &lo, &hi);
            if &(&ehi - &elo) <= tol {
                return (elo + ehi) / rat(2);
            }
            let mid = (&lo + &hi) / rat(2);
            let at_mid = sign_rat(&horner(modulus, &mid));
            if at_mid == 0 {
                return horner(&self.coeffs, &mid);
            }
            if at_mid == sign_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }

    /// Compares the real values of two elements of the same field.
    pub fn cmp_real(&self, other: &Self) -> Ordering {
        (self - other).sign().cmp(&0)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.len() <= 1
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && (self.coeffs.len() <= 1 || self.field == other.field)
    }
}

impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.len() <= 1 {
            return write!(f, "{}", self.as_rational().unwrap());
        }
        f.write_str(&univariate_text(&self.coeffs, self.field.generator_name()))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a> $tr<&'a FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            /// Panics when the operands live in different fields; use the
            /// `checked_*` methods to get an error instead.
            fn $method(self, rhs: &'a FieldElement) -> FieldElement {
                self.$checked(rhs).expect("field arithmetic")
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$checked(&rhs).expect("field arithmetic")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

pub(crate) fn sign_rat(q: &Rational) -> i32 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

fn trim(v: &mut Vec<Rational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn add_coeffs(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x + y,
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        })
        .collect()
}

fn sub_coeffs(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let nb: Vec<Rational> = b.iter().map(|c| -c).collect();
    add_coeffs(a, &nb)
}

fn mul_coeffs(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn divrem_coeffs(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].recip();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![Rational::zero(); r.len() - db];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() * &lead;
        for (j, y) in b.iter().enumerate() {
            r[shift + j] -= &c * y;
        }
        q[shift] = c;
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

fn reduce_mod(v: &mut Vec<Rational>, modulus: &[Rational]) {
    trim(v);
    let d = modulus.len() - 1;
    while v.len() > d {
        let top = v.pop().unwrap();
        let shift = v.len() - d;
        for (j, m) in modulus[..d].iter().enumerate() {
            v[shift + j] -= &top * m;
        }
        trim(v);
    }
}

pub(crate) fn horner(coeffs: &[Rational], x: &Rational) -> Rational {
    coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

/// Exact enclosure of `p([lo, hi])` by interval Horner evaluation.
fn interval_horner(coeffs: &[Rational], lo: &Rational, hi: &Rational) -> (Rational, Rational) {
    let (mut a, mut b) = (Rational::zero(), Rational::zero());
    for c in coeffs.iter().rev() {
        let corners = [&a * lo, &a * hi, &b * lo, &b * hi];
        let min = corners.iter().min().unwrap().clone();
        let max = corners.iter().max().unwrap().clone();
        a = min + c;
        b = max + c;
    }
    (a, b)
}

fn univariate_text(coeffs: &[Rational], var: &str) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let power = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        if power.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&power);
        } else {
            out.push_str(&format!("{mag}*{power}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube_root_four() -> Field {
        Field::real_root("c", 3, &rat(4)).unwrap()
    }

    #[test]
    fn rational_sum() {
        let a = FieldElement::rational(ratio(1, 2));
        let b = FieldElement::rational(ratio(1, 3));
        assert_eq!(&a + &b, FieldElement::rational(ratio(5, 6)));
    }

    #[test]
    fn generator_times_its_square_is_four() {
        let k = cube_root_four();
        let c = k.generator();
        assert_eq!(&c * &c.pow(2), k.from_int(4));
    }

    #[test]
    fn generator_inverse() {
        let k = cube_root_four();
        let c = k.generator();
        let expected = c.pow(2).scale(&ratio(1, 4));
        assert_eq!(c.inv().unwrap(), expected);
        assert!((&c * &expected).is_one());
    }

    #[test]
    fn isolating_interval_of_cube_root() {
        let k = cube_root_four();
        assert_eq!(k.isolating_interval(), (&rat(1), &rat(2)));
    }

    #[test]
    fn signs() {
        let k = cube_root_four();
        let c = k.generator();
        assert_eq!(k.zero().sign(), 0);
        assert_eq!((&c - &k.one()).sign(), 1);
        assert_eq!((c.scale(&rat(2)) - k.from_int(4)).sign(), -1);
        assert_eq!((&c.pow(2) - &k.from_int(3)).sign(), -1); // c^2 = 2.519...
        assert_eq!((&c.pow(2) - &k.from_int(2)).sign(), 1);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let k = cube_root_four();
        assert_eq!(k.one().checked_div(&k.zero()), Err(ScalarError::DivisionByZero));
        assert_eq!(FieldElement::int(0).inv().unwrap_err(), ScalarError::DivisionByZero);
    }

    #[test]
    fn mixed_fields_are_an_error() {
        let k = cube_root_four();
        let l = Field::real_root("d", 3, &rat(2)).unwrap();
        let err = k.generator().checked_add(&l.generator()).unwrap_err();
        assert!(matches!(err, ScalarError::FieldMismatch(_, _)));
        // rationals embed, extension elements do not move between fields
        assert!(FieldElement::int(3).embed(&k).is_ok());
        assert!(k.generator().embed(&l).is_err());
    }

    #[test]
    fn rejects_bad_extensions() {
        assert!(Field::extension("c", vec![rat(-4), rat(0), rat(0), rat(2)], rat(1), rat(2)).is_err());
        assert!(Field::extension("c", vec![rat(-4), rat(0), rat(0), rat(1)], rat(2), rat(3)).is_err());
        assert!(Field::extension("c", vec![rat(-4), rat(0), rat(0), rat(1)], rat(1), rat(2)).is_ok());
    }

    #[test]
    fn rational_root_landing_on_midpoint() {
        // x^2 - 9/4 has the rational root 3/2, the midpoint of (1, 2)
        let k = Field::extension("r", vec![ratio(-9, 4), rat(0), rat(1)], rat(1), rat(2)).unwrap();
        let r = k.generator();
        assert_eq!((&r - &k.from_rational(ratio(3, 2))).sign(), 0);
        assert_eq!((&r - &k.one()).sign(), 1);
    }

    #[test]
    fn display() {
        let k = cube_root_four();
        let x = k.generator().pow(2).scale(&ratio(1, 4)) - k.one();
        assert_eq!(x.to_string(), "1/4*c^2 - 1");
        assert_eq!(k.to_string(), "Q[c]/(c^3 - 4), c in (1, 2)");
    }
}
