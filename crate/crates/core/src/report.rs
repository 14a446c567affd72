//! The full pipeline for one algebra and its serializable report, with the
//! reference values set beside the derived ones.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::endo::{
    constraint_system, det, determinants, extend_to_matrix, generic_endo, linear_matrix, resolve_bindings, Bindings,
    ConstraintSystem, DeterminantReport, SymbolicEndo, SymbolicMatrix,
};
use crate::poly::{Bound, MonomialOrder, Polynomial, Variables};
use crate::reference::{lookup, RefPair, Reference};
use crate::scalar::{rat, Field};
use crate::solver::{
    classify_det1, component_count, solve, Branch, Closure, ComponentCount, Det1Image, SolutionFamily, SolverOptions,
};
use crate::weil::WeilAlgebra;

/// Everything computed for one algebra.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub algebra: Arc<WeilAlgebra>,
    pub endo: SymbolicEndo,
    pub system: ConstraintSystem,
    pub matrix: SymbolicMatrix,
    pub linear: SymbolicMatrix,
    pub outcomes: Vec<(Branch, Closure)>,
    pub families: Vec<SolutionFamily>,
    pub family_matrices: Vec<(SymbolicMatrix, SymbolicMatrix)>,
    pub family_dets: Vec<DeterminantReport>,
    pub components: ComponentCount,
    pub det1_image: Det1Image,
    pub reference: Option<Reference>,
}

impl Analysis {
    pub fn residual_branches(&self) -> Vec<&Branch> {
        self.outcomes
            .iter()
            .filter_map(|(_, c)| match c {
                Closure::Residual(b) => Some(b),
                _ => None,
            })
            .collect()
    }

    pub fn is_closed(&self) -> bool {
        self.residual_branches().is_empty()
    }
}

pub fn analyze(algebra: Arc<WeilAlgebra>, opts: &SolverOptions) -> Analysis {
    let endo = generic_endo(&algebra, None);
    let system = constraint_system(&endo);
    let matrix = extend_to_matrix(&endo);
    let linear = linear_matrix(&endo);
    let outcomes = solve(&system, opts);
    let families: Vec<SolutionFamily> = outcomes
        .iter()
        .filter_map(|(_, c)| match c {
            Closure::Family(f) => Some(f.clone()),
            _ => None,
        })
        .collect();
    let mut family_matrices = Vec::new();
    let mut family_dets = Vec::new();
    for f in &families {
        let m = matrix.substitute(&f.bindings).expect("acyclic family bindings");
        let l = linear.substitute(&f.bindings).expect("acyclic family bindings");
        family_dets.push(determinants(&m, &l));
        family_matrices.push((m, l));
    }
    let det1: Vec<Polynomial> = family_dets.iter().map(|d| d.det_linear.clone()).collect();
    let residual = outcomes.iter().any(|(_, c)| matches!(c, Closure::Residual(_)));
    let components = if residual { ComponentCount::Undetermined } else { component_count(&families) };
    let det1_image = if residual { Det1Image::Undetermined } else { classify_det1(&families, &det1) };
    let reference = lookup(&algebra);
    Analysis {
        algebra,
        endo,
        system,
        matrix,
        linear,
        outcomes,
        families,
        family_matrices,
        family_dets,
        components,
        det1_image,
        reference,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraView {
    pub name: String,
    pub spec: String,
    pub variables: Vec<String>,
    pub order: u32,
    pub precedence: String,
    pub dimension: usize,
    pub nilpotency_order: usize,
    pub nil_power_dims: Vec<usize>,
    pub cotangent_basis: Vec<String>,
    pub groebner_basis: Vec<String>,
    pub unknowns: Vec<String>,
    pub images: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquationView {
    pub class: String,
    pub equation: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupView {
    pub relation: String,
    pub equations: Vec<EquationView>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReferenceEquationView {
    pub label: String,
    pub context: String,
    pub printed: String,
    pub derived: String,
    pub status: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstraintsView {
    pub groups: Vec<GroupView>,
    pub nondegeneracy: Vec<String>,
    pub reference: Vec<ReferenceEquationView>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BindingView {
    pub unknown: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyView {
    pub path: Vec<String>,
    pub field: String,
    pub bindings: Vec<BindingView>,
    pub free_parameters: Vec<String>,
    pub strict_nonzero: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeterminantView {
    pub family: usize,
    pub det_full: String,
    pub det_linear: String,
    pub matrix_diagonal: Vec<String>,
    pub linear_matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchView {
    pub path: Vec<String>,
    pub outcome: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentsView {
    /// `None` when undetermined.
    pub count: Option<u64>,
    pub reference: Option<u64>,
    pub branches: Vec<BranchView>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub item: String,
    pub reference: String,
    pub derived: String,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualView {
    pub path: Vec<String>,
    pub field: String,
    pub equations: Vec<String>,
    pub nondegeneracy: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub algebra: AlgebraView,
    pub basis: Vec<String>,
    pub constraints: ConstraintsView,
    pub families: Vec<FamilyView>,
    pub determinants: Vec<DeterminantView>,
    pub components: ComponentsView,
    pub det1_image: String,
    pub discrepancies: Vec<Discrepancy>,
    pub residuals: Vec<ResidualView>,
}

/// Divides out the content so that integer equations print without a
/// common factor and with a positive leading coefficient.
pub fn primitive(p: &Polynomial) -> Polynomial {
    if p.is_zero() {
        return p.clone();
    }
    let order = MonomialOrder::grlex(p.vars().len());
    let monic = p.monic(&order);
    let coeffs: Option<Vec<_>> = monic.terms().map(|(_, c)| c.as_rational()).collect();
    let Some(coeffs) = coeffs else { return monic };
    let lcm = coeffs.iter().fold(num_bigint::BigInt::from(1), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
    let scaled = monic.scale_rational(&crate::scalar::Rational::from_integer(lcm));
    let gcd = scaled
        .terms()
        .map(|(_, c)| c.as_rational().unwrap().to_integer())
        .fold(num_bigint::BigInt::from(0), |acc, n| num_integer::Integer::gcd(&acc, &n));
    scaled.scale_rational(&crate::scalar::Rational::new(1.into(), gcd))
}

fn context_bindings(unknowns: &Variables, context: &[(&str, &str)]) -> Option<Bindings> {
    let q = Field::rationals();
    let mut b = Bindings::new();
    for (k, v) in context {
        b.insert(unknowns.index_of(k)?, Polynomial::parse(v, unknowns, &q).ok()?);
    }
    resolve_bindings(&b, unknowns).ok()
}

fn parse_in(text: &str, unknowns: &Variables, field: &Field) -> Option<Polynomial> {
    Polynomial::parse(text, unknowns, field).ok()
}

/// A nonzero real solution of a pair homogeneous in `(a, b)`, described in
/// words, or `None` when the only real solution is `a = b = 0`.
pub fn pair_nonzero_real_solution(f: &Polynomial, g: &Polynomial, a: usize, b: usize) -> Option<String> {
    let names = f.vars();
    let field = f.field();
    let at = |p: &Polynomial, k: usize| {
        let mut s = Bindings::new();
        s.insert(k, Polynomial::constant(names, field.one()));
        p.substitute(&s)
    };
    // b = 1
    let (fu, gu) = (at(f, b), at(g, b));
    if let (Ok((_, fu)), Ok((_, gu))) = (fu.to_univariate(), gu.to_univariate()) {
        let h = fu.gcd(&gu);
        if h.is_zero() {
            return Some(format!("both vanish identically at {} = 1", names.name(b)));
        }
        if h.count_real_roots(&Bound::NegInfinity, &Bound::PosInfinity) > 0 {
            let shown = Polynomial::from_univariate(names, a, &h);
            return Some(format!("{} = 1 and {} a real root of {}", names.name(b), names.name(a), shown.compact()));
        }
    }
    // b = 0, a = 1
    let mut s = Bindings::new();
    s.insert(b, Polynomial::zero(names, field));
    s.insert(a, Polynomial::constant(names, field.one()));
    if f.substitute(&s).is_zero() && g.substitute(&s).is_zero() {
        return Some(format!("{} = 1, {} = 0", names.name(a), names.name(b)));
    }
    None
}

fn field_label(f: &Field) -> String {
    f.to_string()
}

fn branch_views(a: &Analysis) -> Vec<BranchView> {
    a.outcomes
        .iter()
        .map(|(b, c)| {
            let (outcome, detail) = match c {
                Closure::Family(f) => (
                    "family".to_string(),
                    format!("strict: {}", f.strict_nonzero.iter().map(|p| p.compact()).collect::<Vec<_>>().join(", ")),
                ),
                Closure::Contradiction(why) => ("contradiction".to_string(), why.clone()),
                Closure::Residual(r) => ("residual".to_string(), format!("{} equations left", r.residuals.len())),
            };
            BranchView { path: b.path.clone(), outcome, detail }
        })
        .collect()
}

fn relation_index(a: &Analysis, r: &Reference, k: usize) -> Option<usize> {
    let vars = a.algebra.vars();
    let own = Variables::new(r.variables);
    let p = Polynomial::parse(r.relations[k], &own, &Field::rationals()).ok()?;
    let mut moved = Polynomial::zero(vars, p.field());
    for (m, c) in p.terms() {
        moved = &moved + &Polynomial::term(vars, m.clone(), c.clone());
    }
    a.algebra.relations().iter().position(|q| q.is_scalar_multiple_of(&moved))
}

fn compare_equation(printed: &Polynomial, derived: Option<&Polynomial>) -> &'static str {
    match derived {
        None => "no derived counterpart",
        Some(d) if d.is_scalar_multiple_of(printed) => "agrees",
        Some(d) if d.same_support(printed) => "differs in signs or coefficients",
        Some(_) => "differs in terms",
    }
}

fn reference_equations(a: &Analysis, r: &Reference, out: &mut Vec<Discrepancy>) -> Vec<ReferenceEquationView> {
    let unknowns = a.endo.unknowns();
    let q = Field::rationals();
    let labels = a.algebra.basis_labels();
    let mut views = Vec::new();
    for e in &r.equations {
        let Some(printed) = parse_in(e.printed, unknowns, &q) else { continue };
        let Some(ctx) = context_bindings(unknowns, e.context) else { continue };
        let sys = a.system.substitute(&ctx).expect("context binds");
        let derived = e.target.and_then(|(g, class)| {
            let gi = relation_index(a, r, g)?;
            let k = labels.iter().position(|l| l == class)?;
            sys.equations.iter().find(|q| q.generator == gi && q.basis_index == k).map(|q| q.poly.clone())
        });
        let status = compare_equation(&printed, derived.as_ref());
        let context = e.context.iter().map(|(k, v)| format!("{k} = {v}")).collect::<Vec<_>>().join(", ");
        let derived_text = derived.as_ref().map(|d| primitive(d).compact()).unwrap_or_else(|| "-".into());
        if status != "agrees" {
            out.push(Discrepancy {
                item: format!("equation {}", e.label),
                reference: format!("{} = 0", printed.compact()),
                derived: format!("{derived_text} = 0"),
                note: format!(
                    "{status}{}",
                    if context.is_empty() { String::new() } else { format!(" (under {context})") }
                ),
            });
        }
        views.push(ReferenceEquationView {
            label: e.label.to_string(),
            context,
            printed: format!("{} = 0", printed.compact()),
            derived: format!("{derived_text} = 0"),
            status: status.to_string(),
        });
    }
    if let Some(set) = r.equation_set {
        let printed: Vec<Polynomial> = set.iter().filter_map(|s| parse_in(s, unknowns, &q)).collect();
        let derived = a.system.polys();
        let same = printed.len() == derived.len()
            && printed.iter().all(|p| derived.iter().any(|d| d.is_scalar_multiple_of(p)));
        let show = |ps: &[Polynomial]| {
            ps.iter().map(|p| format!("{} = 0", primitive(p).compact())).collect::<Vec<_>>().join(", ")
        };
        if !same {
            out.push(Discrepancy {
                item: "constraint system".into(),
                reference: show(&printed),
                derived: show(&derived),
                note: "the derived equations are the coordinates of phi(g) for each relation g".into(),
            });
        }
        views.push(ReferenceEquationView {
            label: "system".into(),
            context: String::new(),
            printed: show(&printed),
            derived: show(&derived),
            status: if same { "agrees" } else { "differs" }.into(),
        });
    }
    views
}

fn reference_matrix(a: &Analysis, r: &Reference, out: &mut Vec<Discrepancy>) {
    let Some(rm) = &r.matrix else { return };
    let unknowns = a.endo.unknowns();
    let Some(ctx) = context_bindings(unknowns, rm.context) else { return };
    let m = a.matrix.substitute(&ctx).expect("context binds");
    let q = Field::rationals();
    let mut diag_ref = Vec::new();
    let mut diag_der = Vec::new();
    for (row, col, printed) in &rm.entries {
        let (Some(i), Some(j)) =
            (m.row_labels.iter().position(|l| l == row), m.col_labels.iter().position(|l| l == col))
        else {
            continue;
        };
        let Some(p) = parse_in(printed, unknowns, &q) else { continue };
        if i == j {
            diag_ref.push(p.compact());
            diag_der.push(m.entries[i][j].compact());
        }
        if p != m.entries[i][j] {
            out.push(Discrepancy {
                item: format!("matrix entry ({row}, {col})"),
                reference: p.compact(),
                derived: m.entries[i][j].compact(),
                note: if rm.context.is_empty() {
                    "generic endomorphism".into()
                } else {
                    format!(
                        "under {}",
                        rm.context.iter().map(|(k, v)| format!("{k} = {v}")).collect::<Vec<_>>().join(", ")
                    )
                },
            });
        }
    }
    if diag_ref.len() > 1 && diag_ref != diag_der {
        out.push(Discrepancy {
            item: "matrix diagonal".into(),
            reference: diag_ref.join(", "),
            derived: diag_der.join(", "),
            note: "row convention: entry (i, j) is the coefficient of e_j in phi(e_i)".into(),
        });
    }
}

fn reference_pair(a: &Analysis, pair: &RefPair, out: &mut Vec<Discrepancy>) {
    let unknowns = a.endo.unknowns();
    let (Some(ai), Some(bi)) = (unknowns.index_of(pair.unknowns[0]), unknowns.index_of(pair.unknowns[1])) else {
        return;
    };
    let Ok(k) = Field::real_root("c", 3, &rat(4)) else { return };
    let printed: Vec<Polynomial> = pair.printed.iter().filter_map(|s| parse_in(s, unknowns, &k)).collect();
    if printed.len() == 2 {
        if let Some(w) = pair_nonzero_real_solution(&printed[0], &printed[1], ai, bi) {
            out.push(Discrepancy {
                item: "extension branch pair (printed)".into(),
                reference: format!(
                    "{} = 0, {} = 0 has only the zero real solution",
                    printed[0].compact(),
                    printed[1].compact()
                ),
                derived: format!("nonzero real solution: {w}"),
                note: "c^3 = 4".into(),
            });
        }
    }
    let target: std::collections::BTreeSet<usize> = [ai, bi].into_iter().collect();
    for (b, c) in &a.outcomes {
        if b.field.is_rationals() {
            continue;
        }
        let eqs: Vec<&Polynomial> = b.residuals.iter().filter(|p| p.variables_used() == target).collect();
        if eqs.len() < 2 {
            continue;
        }
        if let Some(w) = pair_nonzero_real_solution(eqs[0], eqs[1], ai, bi) {
            let closed = match c {
                Closure::Contradiction(why) => format!("branch still closed: {why}"),
                Closure::Family(_) => "branch yields a family".into(),
                Closure::Residual(_) => "branch left residual".into(),
            };
            out.push(Discrepancy {
                item: "extension branch pair (derived)".into(),
                reference: "only the zero real solution".into(),
                derived: format!("{} = 0, {} = 0 has a nonzero real solution: {w}", eqs[0].compact(), eqs[1].compact()),
                note: closed,
            });
        }
    }
}

fn discrepancies(a: &Analysis) -> (Vec<Discrepancy>, Vec<ReferenceEquationView>) {
    let mut out = Vec::new();
    let Some(r) = &a.reference else { return (out, Vec::new()) };
    let labels = a.algebra.basis_labels();
    if !r.basis.is_empty() && labels != r.basis {
        out.push(Discrepancy {
            item: "basis".into(),
            reference: r.basis.join(", "),
            derived: labels.join(", "),
            note: format!("precedence {}", a.algebra.monomial_order().describe(a.algebra.vars())),
        });
    }
    let views = reference_equations(a, r, &mut out);
    reference_matrix(a, r, &mut out);
    let unknowns = a.endo.unknowns();
    let q = Field::rationals();
    let check_set = |item: &str, printed: &[&str], derived: Vec<&Polynomial>, out: &mut Vec<Discrepancy>| {
        if printed.is_empty() || !a.is_closed() {
            return;
        }
        let ps: Vec<Polynomial> = printed.iter().filter_map(|s| parse_in(s, unknowns, &q)).collect();
        let same = ps.len() == derived.len()
            && ps.iter().all(|p| derived.iter().any(|d| d.lift(&q).map(|d| d == *p).unwrap_or(false)));
        if !same {
            out.push(Discrepancy {
                item: item.into(),
                reference: ps.iter().map(|p| p.compact()).collect::<Vec<_>>().join(", "),
                derived: derived.iter().map(|p| p.compact()).collect::<Vec<_>>().join(", "),
                note: "one value per family".into(),
            });
        }
    };
    check_set("det M", r.det_full, a.family_dets.iter().map(|d| &d.det_full).collect(), &mut out);
    check_set("det M1", r.det_linear, a.family_dets.iter().map(|d| &d.det_linear).collect(), &mut out);
    if let Some(rc) = r.components {
        let derived = match a.components {
            ComponentCount::Count(n) => Some(n),
            ComponentCount::Undetermined => None,
        };
        if derived != Some(rc) {
            out.push(Discrepancy {
                item: "connected components".into(),
                reference: rc.to_string(),
                derived: a.components.to_string(),
                note: "count of sign choices for the strict unknowns of each family".into(),
            });
        }
    }
    if let Some(img) = r.det1_image {
        if img != a.det1_image {
            out.push(Discrepancy {
                item: "image of det M1".into(),
                reference: img.to_string(),
                derived: a.det1_image.to_string(),
                note: String::new(),
            });
        }
    }
    if r.linear_matrix_identity && a.is_closed() {
        for (i, (_, l)) in a.family_matrices.iter().enumerate() {
            let ok = l.entries.iter().enumerate().all(|(x, row)| {
                row.iter().enumerate().all(|(y, p)| {
                    p.constant_value().is_some_and(|c| if x == y { c.is_one() } else { c.is_zero() })
                        || (p.is_zero() && x != y)
                })
            });
            if !ok {
                out.push(Discrepancy {
                    item: format!("M1 of family {}", i + 1),
                    reference: "identity".into(),
                    derived: format!(
                        "{:?}",
                        l.entries.iter().map(|r| r.iter().map(|p| p.compact()).collect::<Vec<_>>()).collect::<Vec<_>>()
                    ),
                    note: String::new(),
                });
            }
        }
    }
    if let Some(pair) = &r.pair {
        reference_pair(a, pair, &mut out);
    }
    (out, views)
}

pub fn build_report(a: &Analysis) -> Report {
    let alg = &a.algebra;
    let labels = alg.basis_labels();
    let unknowns = a.endo.unknowns();
    let algebra = AlgebraView {
        name: alg.name().to_string(),
        spec: alg.spec().to_string(),
        variables: alg.vars().names().to_vec(),
        order: alg.spec().order,
        precedence: alg.monomial_order().describe(alg.vars()),
        dimension: alg.dim(),
        nilpotency_order: alg.nilpotency_order(),
        nil_power_dims: alg.nil_power_dims(),
        cotangent_basis: alg.cotangent_basis().iter().map(|&k| labels[k].clone()).collect(),
        groebner_basis: alg.groebner_basis().elements().iter().map(|p| p.to_string()).collect(),
        unknowns: unknowns.names().to_vec(),
        images: (0..alg.vars().len())
            .map(|i| format!("phi({}) = {}", alg.vars().name(i), a.endo.describe_image(i)))
            .collect(),
    };
    let mut groups = Vec::new();
    for (gi, g) in alg.relations().iter().enumerate() {
        let equations = a
            .system
            .equations
            .iter()
            .filter(|e| e.generator == gi)
            .map(|e| EquationView {
                class: labels[e.basis_index].clone(),
                equation: format!("{} = 0", primitive(&e.poly).compact()),
            })
            .collect();
        groups.push(GroupView { relation: g.to_string(), equations });
    }
    let (discrepancies, reference) = discrepancies(a);
    let constraints = ConstraintsView {
        groups,
        nondegeneracy: a.system.nondegeneracy.iter().map(|p| format!("{} != 0", p.compact())).collect(),
        reference,
    };
    let families = a
        .families
        .iter()
        .map(|f| FamilyView {
            path: f.path.clone(),
            field: field_label(&f.field),
            bindings: f
                .bindings
                .iter()
                .map(|(k, v)| BindingView { unknown: unknowns.name(*k).to_string(), value: v.compact() })
                .collect(),
            free_parameters: f.free_parameters.iter().map(|&k| unknowns.name(k).to_string()).collect(),
            strict_nonzero: f.strict_nonzero.iter().map(|p| p.compact()).collect(),
        })
        .collect();
    let determinants = a
        .family_dets
        .iter()
        .zip(&a.family_matrices)
        .enumerate()
        .map(|(i, (d, (m, l)))| DeterminantView {
            family: i + 1,
            det_full: d.det_full.compact(),
            det_linear: d.det_linear.compact(),
            matrix_diagonal: m.diagonal().iter().map(|p| p.compact()).collect(),
            linear_matrix: l.entries.iter().map(|r| r.iter().map(|p| p.compact()).collect()).collect(),
        })
        .collect();
    let components = ComponentsView {
        count: match a.components {
            ComponentCount::Count(n) => Some(n),
            ComponentCount::Undetermined => None,
        },
        reference: a.reference.as_ref().and_then(|r| r.components),
        branches: branch_views(a),
    };
    let residuals = a
        .residual_branches()
        .into_iter()
        .map(|b| ResidualView {
            path: b.path.clone(),
            field: field_label(&b.field),
            equations: b.residuals.iter().map(|p| format!("{} = 0", p.compact())).collect(),
            nondegeneracy: b.strict_nonzero.iter().chain(&b.guards).map(|p| format!("{} != 0", p.compact())).collect(),
        })
        .collect();
    Report {
        algebra,
        basis: labels,
        constraints,
        families,
        determinants,
        components,
        det1_image: a.det1_image.to_string(),
        discrepancies,
        residuals,
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Report> {
        serde_json::from_str(text)
    }

    pub fn render_basis(&self) -> String {
        format!("dim {}: {}\n", self.basis.len(), self.basis.join(", "))
    }

    pub fn render_constraints(&self) -> String {
        let mut s = String::new();
        for img in &self.algebra.images {
            let _ = writeln!(s, "{img}");
        }
        for g in &self.constraints.groups {
            for e in &g.equations {
                let _ = writeln!(s, "{} @ {}: {}", g.relation, e.class, e.equation);
            }
        }
        for n in &self.constraints.nondegeneracy {
            let _ = writeln!(s, "nondegenerate: {n}");
        }
        s
    }

    pub fn render_solution(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "branches:");
        for b in &self.components.branches {
            let _ = writeln!(s, "  [{}] {}: {}", b.path.join("; "), b.outcome, b.detail);
        }
        for (f, d) in self.families.iter().zip(&self.determinants) {
            let _ = writeln!(s, "family {} over {}:", d.family, f.field);
            let bind: Vec<String> = f.bindings.iter().map(|b| format!("{} = {}", b.unknown, b.value)).collect();
            let _ = writeln!(s, "  bindings: {}", if bind.is_empty() { "none".into() } else { bind.join(", ") });
            let _ = writeln!(s, "  free: {}", f.free_parameters.join(", "));
            let _ = writeln!(
                s,
                "  nonzero: {}",
                if f.strict_nonzero.is_empty() { "none".into() } else { f.strict_nonzero.join(", ") }
            );
            let _ = writeln!(s, "  det M = {}", d.det_full);
            let _ = writeln!(s, "  det M1 = {}", d.det_linear);
        }
        for r in &self.residuals {
            let _ = writeln!(s, "residual [{}] over {}:", r.path.join("; "), r.field);
            for e in &r.equations {
                let _ = writeln!(s, "  {e}");
            }
            for n in &r.nondegeneracy {
                let _ = writeln!(s, "  {n}");
            }
        }
        let count = self.components.count.map(|n| n.to_string()).unwrap_or_else(|| "undetermined".into());
        let _ = writeln!(s, "components: {count}");
        let _ = writeln!(s, "det M1 image: {}", self.det1_image);
        s
    }

    pub fn render_full(&self) -> String {
        let mut s = String::new();
        let a = &self.algebra;
        let _ = writeln!(s, "algebra {}: {}", a.name, a.spec);
        let _ =
            writeln!(s, "precedence {}; dim {}; nilpotency order {}", a.precedence, a.dimension, a.nilpotency_order);
        let _ = write!(s, "{}", self.render_basis());
        let _ = writeln!(s, "n^s dimensions: {:?}", a.nil_power_dims);
        let _ = writeln!(s, "n/n^2 basis: {}", a.cotangent_basis.join(", "));
        let _ = writeln!(s);
        let _ = write!(s, "{}", self.render_constraints());
        if !self.constraints.reference.is_empty() {
            let _ = writeln!(s);
            let _ = writeln!(s, "reference equations:");
            for r in &self.constraints.reference {
                let ctx = if r.context.is_empty() { String::new() } else { format!(" [{}]", r.context) };
                let _ =
                    writeln!(s, "  {}{}: printed {} | derived {} | {}", r.label, ctx, r.printed, r.derived, r.status);
            }
        }
        let _ = writeln!(s);
        let _ = write!(s, "{}", self.render_solution());
        if let Some(r) = self.components.reference {
            let _ = writeln!(s, "reference components: {r}");
        }
        let _ = writeln!(s);
        if self.discrepancies.is_empty() {
            let _ = writeln!(s, "discrepancies: none");
        } else {
            let _ = writeln!(s, "discrepancies:");
            for d in &self.discrepancies {
                let _ = writeln!(s, "  {}: reference {} | derived {}", d.item, d.reference, d.derived);
                if !d.note.is_empty() {
                    let _ = writeln!(s, "    {}", d.note);
                }
            }
        }
        s
    }
}

/// `det` re-exported for callers that only hold matrices.
pub fn matrix_det(m: &SymbolicMatrix) -> Polynomial {
    det(m)
}

/// Family bindings keyed by unknown name.
pub fn named_bindings(a: &Analysis, f: &SolutionFamily) -> BTreeMap<String, String> {
    f.bindings.iter().map(|(k, v)| (a.endo.unknowns().name(*k).to_string(), v.compact())).collect()
}
