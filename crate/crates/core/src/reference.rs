//! Published values for three well-known algebras, kept verbatim so that
//! reports can set them beside the derived ones.

use crate::poly::{Polynomial, Variables};
use crate::quotient::{groebner, monomials_of_degree};
use crate::scalar::Field;
use crate::solver::Det1Image;
use crate::weil::{AlgebraSpec, WeilAlgebra};

/// A printed equation, optionally tied to the derived coordinate it should
/// correspond to.
#[derive(Clone, Debug)]
pub struct RefEquation {
    pub label: &'static str,
    pub printed: &'static str,
    /// Relation index and basis class of the derived counterpart.
    pub target: Option<(usize, &'static str)>,
    /// Bindings (unknown, value) in force when the equation is stated.
    pub context: &'static [(&'static str, &'static str)],
}

#[derive(Clone, Debug)]
pub struct RefMatrix {
    pub context: &'static [(&'static str, &'static str)],
    /// `(row label, column label, printed entry)`.
    pub entries: Vec<(&'static str, &'static str, &'static str)>,
}

/// A printed pair in two unknowns over `Q(c)`, `c^3 = 4`, claimed to have
/// only the zero real solution.
#[derive(Clone, Debug)]
pub struct RefPair {
    pub unknowns: [&'static str; 2],
    pub printed: [&'static str; 2],
}

#[derive(Clone, Debug)]
pub struct Reference {
    pub key: &'static str,
    pub variables: &'static [&'static str],
    pub order: u32,
    pub relations: &'static [&'static str],
    pub basis: &'static [&'static str],
    pub equations: Vec<RefEquation>,
    /// Printed equation set compared as a whole.
    pub equation_set: Option<&'static [&'static str]>,
    pub matrix: Option<RefMatrix>,
    pub det_full: &'static [&'static str],
    pub det_linear: &'static [&'static str],
    pub components: Option<u64>,
    pub det1_image: Option<Det1Image>,
    pub linear_matrix_identity: bool,
    pub pair: Option<RefPair>,
}

const QUARTIC_FAMILY: &[(&str, &str)] = &[("B", "0"), ("J", "0"), ("K", "A"), ("M", "C")];

const QUARTIC_LABELS: [&str; 9] = ["X", "Y", "X^2", "XY", "Y^2", "X^3", "X^2Y", "XY^2", "X^4"];

const QUARTIC_MATRIX: [[&str; 9]; 9] = [
    ["A", "0", "C", "D", "E", "F", "G", "H", "I"],
    ["0", "A", "L", "C", "N", "P", "Q", "R", "S"],
    ["0", "0", "A^2", "0", "0", "2AC", "2AD", "2AE", "2AF+C^2-2DE"],
    ["0", "0", "0", "A^2", "0", "AL-AE", "2AC", "AD+AN", "AP+CL-AH-CE-DN"],
    ["0", "0", "0", "0", "A^2", "-2AN", "2AL", "2AC", "L^2-2AR-2CN"],
    ["0", "0", "0", "0", "0", "2A^3", "0", "0", "6A^2C"],
    ["0", "0", "0", "0", "0", "0", "A^3", "0", "A^2L-2A^2E"],
    ["0", "0", "0", "0", "0", "0", "0", "A^3", "-A^2D-2A^2N"],
    ["0", "0", "0", "0", "0", "0", "0", "0", "2A^4"],
];

pub fn references() -> Vec<Reference> {
    let mut quartic_entries = Vec::new();
    for (i, row) in QUARTIC_MATRIX.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            quartic_entries.push((QUARTIC_LABELS[i], QUARTIC_LABELS[j], *e));
        }
    }
    vec![
        Reference {
            key: "tangent",
            variables: &["X", "Y"],
            order: 2,
            relations: &["X^2", "Y^2"],
            basis: &["1", "X", "Y", "XY"],
            equations: Vec::new(),
            equation_set: Some(&["AD", "BE"]),
            matrix: Some(RefMatrix {
                context: &[],
                entries: vec![("XY", "X", "AD"), ("XY", "Y", "BE"), ("XY", "XY", "AE+BD")],
            }),
            det_full: &["A^2E^2", "-B^2D^2"],
            det_linear: &["AE", "-BD"],
            components: Some(8),
            det1_image: Some(Det1Image::NonzeroReals),
            linear_matrix_identity: false,
            pair: None,
        },
        Reference {
            key: "quartic",
            variables: &["X", "Y"],
            order: 4,
            relations: &["X^3*Y", "X^2*Y^2", "Y^4", "X^3 - Y^3"],
            basis: &["1", "X", "Y", "X^2", "XY", "Y^2", "X^3", "X^2Y", "XY^2", "X^4"],
            equations: vec![
                RefEquation {
                    label: "X^3*Y at X^4",
                    printed: "A^3J-B^3J-3AB^2K",
                    target: Some((0, "X^4")),
                    context: &[],
                },
                RefEquation {
                    label: "X^2*Y^2 at X^4",
                    printed: "A^2J^2-2B^2JK-2ABK^2",
                    target: Some((1, "X^4")),
                    context: &[],
                },
                RefEquation { label: "Y^4 at X^4", printed: "J^4-4JK^3", target: Some((2, "X^4")), context: &[] },
                RefEquation {
                    label: "X^3 - Y^3 at X^3",
                    printed: "A^3-K^3",
                    target: Some((3, "X^3")),
                    context: &[("B", "0"), ("J", "0")],
                },
                RefEquation {
                    label: "X^3 - Y^3 at X^4",
                    printed: "3A^2CD-3A^2M",
                    target: Some((3, "X^4")),
                    context: &[("B", "0"), ("J", "0"), ("K", "A")],
                },
            ],
            equation_set: None,
            matrix: Some(RefMatrix { context: QUARTIC_FAMILY, entries: quartic_entries }),
            det_full: &["4A^21"],
            det_linear: &["A^2"],
            components: Some(1),
            det1_image: Some(Det1Image::Positive),
            linear_matrix_identity: false,
            pair: Some(RefPair {
                unknowns: ["A", "B"],
                // the second bracket is printed with cube root of 8, i.e. 2
                printed: ["c*A^3 - c*B^3 - 3*A*B^2", "2*A^2 - 2*c*B^2 - 2*A*B"],
            }),
        },
        Reference {
            key: "sextic",
            variables: &["X", "Y"],
            order: 6,
            relations: &["X^3 + Y^4", "X^4 + Y^5"],
            basis: &[],
            equations: Vec::new(),
            equation_set: None,
            matrix: None,
            det_full: &[],
            det_linear: &["1"],
            components: Some(1),
            det1_image: Some(Det1Image::One),
            linear_matrix_identity: true,
            pair: None,
        },
    ]
}

impl Reference {
    pub fn spec(&self) -> AlgebraSpec {
        AlgebraSpec::new(self.key, self.variables, self.order, self.relations)
    }

    /// Same variable count, truncation order and ideal as `alg`, with the
    /// reference variables matched positionally.
    pub fn matches(&self, alg: &WeilAlgebra) -> bool {
        if alg.vars().len() != self.variables.len() || alg.spec().order != self.order {
            return false;
        }
        let q = Field::rationals();
        let vars: &Variables = alg.vars();
        let own = Variables::new(self.variables);
        let mut gens = Vec::new();
        for r in self.relations {
            let Ok(p) = Polynomial::parse(r, &own, &q) else { return false };
            gens.push(positional(&p, vars));
        }
        for m in monomials_of_degree(vars.len(), self.order + 1) {
            gens.push(Polynomial::term(vars, m, q.one()));
        }
        let gb = groebner(&gens, alg.monomial_order());
        gb == alg.groebner_basis().elements()
    }
}

/// Same exponent vectors, read in another variable list of equal length.
fn positional(p: &Polynomial, vars: &Variables) -> Polynomial {
    let mut out = Polynomial::zero(vars, p.field());
    for (m, c) in p.terms() {
        out = &out + &Polynomial::term(vars, m.clone(), c.clone());
    }
    out
}

/// The reference entry describing `alg`, if any.
pub fn lookup(alg: &WeilAlgebra) -> Option<Reference> {
    references().into_iter().find(|r| r.matches(alg))
}
