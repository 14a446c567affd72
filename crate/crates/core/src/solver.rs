//! Case-split solving of constraint systems into parametrized families of
//! automorphisms, component counting and the image of `det M1`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::endo::{bind, resolve_bindings, Bindings, ConstraintSystem};
use crate::poly::{resultant, Bound, Monomial, MonomialOrder, Polynomial, UniPoly, Variables};
use crate::quotient::groebner_with_limit;
use crate::scalar::{Field, FieldElement, Rational};

#[derive(Clone, Debug)]
pub struct SolverOptions {
    /// Maximum number of branching splits along one path.
    pub max_branch_depth: usize,
    /// Budget of S-polynomial reductions for the Gröbner refutation step.
    pub groebner_budget: usize,
    /// Largest number of unknowns handed to the Gröbner refutation step.
    pub groebner_max_vars: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { max_branch_depth: 16, groebner_budget: 4000, groebner_max_vars: 8 }
    }
}

#[derive(Clone, Debug)]
pub struct Branch {
    /// Steps taken from the root, e.g. `J = 0`, `A != 0`, `K := A`.
    pub path: Vec<String>,
    pub bindings: Bindings,
    pub residuals: Vec<Polynomial>,
    /// Nondegeneracy polynomials with the bindings substituted.
    pub strict_nonzero: Vec<Polynomial>,
    /// Negated split conditions that keep sibling branches disjoint.
    pub guards: Vec<Polynomial>,
    pub field: Field,
    splits: usize,
}

#[derive(Clone, Debug)]
pub struct SolutionFamily {
    pub path: Vec<String>,
    pub bindings: Bindings,
    pub free_parameters: Vec<usize>,
    pub strict_nonzero: Vec<Polynomial>,
    pub field: Field,
}

#[derive(Clone, Debug)]
pub enum Closure {
    Family(SolutionFamily),
    Contradiction(String),
    Residual(Branch),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ComponentCount {
    Count(u64),
    Undetermined,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Det1Image {
    /// Identically `1`.
    One,
    /// All of `(0, inf)`.
    Positive,
    /// All of `R \ {0}`.
    NonzeroReals,
    Undetermined,
}

impl fmt::Display for ComponentCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentCount::Count(n) => write!(f, "{n}"),
            ComponentCount::Undetermined => f.write_str("undetermined"),
        }
    }
}

impl fmt::Display for Det1Image {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Det1Image::One => "{1}",
            Det1Image::Positive => "(0, inf)",
            Det1Image::NonzeroReals => "R \\ {0}",
            Det1Image::Undetermined => "undetermined",
        })
    }
}

fn grlex(p: &Polynomial) -> MonomialOrder {
    MonomialOrder::grlex(p.vars().len())
}

fn name(vars: &Variables, i: usize) -> &str {
    vars.name(i)
}

/// Support of a single-term polynomial.
fn monomial_support(p: &Polynomial) -> Option<Vec<usize>> {
    if p.num_terms() == 1 {
        Some(p.variables_used().into_iter().collect())
    } else {
        None
    }
}

fn guarded_vars(guards: &[Polynomial]) -> BTreeSet<usize> {
    guards.iter().filter_map(monomial_support).flatten().collect()
}

/// Removes the factors of the monomial content that are known to be nonzero.
fn strip(p: &Polynomial, guarded: &BTreeSet<usize>) -> Polynomial {
    let content = p.monomial_content();
    let e: Vec<u32> =
        (0..content.nvars()).map(|i| if guarded.contains(&i) { content.exponent(i) } else { 0 }).collect();
    let m = Monomial::from_exponents(e);
    if m.is_one() {
        p.clone()
    } else {
        p.div_monomial(&m).expect("content divides")
    }
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs();
    if n > BigInt::from(1_000_000_000_000u64) {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            large.push(&n / &d);
            small.push(d.clone());
        }
        d += 1;
    }
    large.reverse();
    if small.last() == large.first() {
        large.remove(0);
    }
    small.extend(large);
    Some(small)
}

/// All distinct real roots when every one of them is rational; `None` when
/// some real root is irrational or the coefficients are too large to search.
fn rational_real_roots(u: &UniPoly) -> Option<Vec<Rational>> {
    if u.degree().unwrap_or(0) == 0 {
        return None;
    }
    let coeffs: Vec<Rational> = u.coeffs().iter().map(FieldElement::as_rational).collect::<Option<_>>()?;
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let real = u.count_real_roots(&Bound::NegInfinity, &Bound::PosInfinity);
    let (k, rest) = u.split_zero_root();
    let mut roots = Vec::new();
    if k > 0 {
        roots.push(Rational::zero());
    }
    let lo = &ints[k];
    let hi = ints.last().unwrap();
    if rest.degree().unwrap_or(0) > 0 {
        let (ps, qs) = (divisors(lo)?, divisors(hi)?);
        let mut cands: BTreeSet<Rational> = BTreeSet::new();
        for p in &ps {
            for q in &qs {
                let r = Rational::new(p.clone(), q.clone());
                cands.insert(-r.clone());
                cands.insert(r);
            }
        }
        roots.extend(cands.into_iter().filter(|r| rest.eval_rational(r).is_zero()));
    }
    roots.sort();
    (roots.len() == real).then_some(roots)
}

/// Exact rational `k`-th root, if any.
fn rational_root(q: &Rational, k: u32) -> Option<Rational> {
    let root = |n: &BigInt| -> Option<BigInt> {
        let r = n.abs().nth_root(k);
        (r.pow(k) == n.abs()).then(|| if n.is_negative() { -r } else { r })
    };
    if q.is_negative() && k.is_multiple_of(2) {
        return None;
    }
    Some(Rational::new(root(q.numer())?, root(q.denom())?))
}

enum Step {
    Bind { var: usize, value: Polynomial, field: Option<Field>, note: String },
    Split { vars: Vec<usize>, keep_cofactor: bool },
    Enumerate { var: usize, values: Vec<Rational> },
    Stop,
}

impl Branch {
    fn root(system: &ConstraintSystem) -> Branch {
        let field = system
            .equations
            .iter()
            .map(|e| e.poly.field().clone())
            .chain(system.nondegeneracy.iter().map(|p| p.field().clone()))
            .next()
            .unwrap_or_else(Field::rationals);
        Branch {
            path: Vec::new(),
            bindings: Bindings::new(),
            residuals: system.polys(),
            strict_nonzero: system.nondegeneracy.clone(),
            guards: Vec::new(),
            field,
            splits: 0,
        }
    }

    /// Zero removal, guard stripping, normalization and deduplication.
    fn tidy(&mut self) {
        let guarded = guarded_vars(&self.guards);
        let mut seen: Vec<Polynomial> = Vec::new();
        for p in &self.residuals {
            if p.is_zero() {
                continue;
            }
            let q = strip(p, &guarded);
            let q = q.monic(&grlex(&q));
            if !seen.contains(&q) {
                seen.push(q);
            }
        }
        self.residuals = seen;
    }

    fn dead(&self) -> bool {
        self.strict_nonzero.iter().chain(&self.guards).any(Polynomial::is_zero)
            || self.residuals.iter().any(Polynomial::is_constant)
    }

    fn apply(&mut self, var: usize, value: Polynomial, field: Option<Field>) {
        if let Some(f) = field {
            let lift = |p: &Polynomial| p.lift(&f).expect("rational embeds");
            self.residuals = self.residuals.iter().map(lift).collect();
            self.strict_nonzero = self.strict_nonzero.iter().map(lift).collect();
            self.guards = self.guards.iter().map(lift).collect();
            self.bindings = self.bindings.iter().map(|(k, v)| (*k, lift(v))).collect();
            self.field = f;
        }
        let mut one = Bindings::new();
        one.insert(var, value.lift(&self.field).expect("same field"));
        let sub = |p: &Polynomial| p.substitute(&one);
        self.residuals = self.residuals.iter().map(sub).collect();
        self.strict_nonzero = self.strict_nonzero.iter().map(sub).collect();
        self.guards = self.guards.iter().map(sub).collect();
        self.bindings = self.bindings.iter().map(|(k, v)| (*k, sub(v))).collect();
        self.bindings.insert(var, one.remove(&var).unwrap());
    }

    fn vars(&self) -> Variables {
        self.strict_nonzero
            .first()
            .or(self.residuals.first())
            .map(|p| p.vars().clone())
            .unwrap_or_else(|| Variables::new::<&str>(&[]))
    }

    fn priority(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.residuals.len()).collect();
        idx.sort_by_key(|&i| {
            let p = &self.residuals[i];
            (p.variables_used().len(), p.total_degree(), p.num_terms(), i)
        });
        idx
    }

    fn next_step(&self, opts: &SolverOptions) -> Step {
        if self.dead() || self.residuals.is_empty() {
            return Step::Stop;
        }
        let order = self.priority();
        let vars = self.vars();
        let zero = Polynomial::zero(&vars, &self.field);
        // a single-variable monomial forces that variable to vanish
        for &i in &order {
            let p = &self.residuals[i];
            if let Some(s) = monomial_support(p) {
                if s.len() == 1 {
                    return Step::Bind {
                        var: s[0],
                        value: zero,
                        field: None,
                        note: format!("{} = 0", name(&vars, s[0])),
                    };
                }
            }
        }
        // u^k = d v^k with k odd: real odd root
        for &i in &order {
            if let Some(step) = self.odd_root(&self.residuals[i], &vars) {
                return step;
            }
        }
        // linear with a constant coefficient: solve for the latest unknown
        for &i in &order {
            let p = &self.residuals[i];
            for u in p.variables_used().into_iter().rev() {
                if p.degree_in(u) != 1 {
                    continue;
                }
                let coeffs = p.coefficients_in(u);
                let Some(c) = coeffs[1].constant_value() else { continue };
                let value = coeffs[0].scale(&(-&c).inv().expect("nonzero"));
                let note = format!("{} := {}", name(&vars, u), value.compact());
                return Step::Bind { var: u, value, field: None, note };
            }
        }
        if self.splits >= opts.max_branch_depth {
            return Step::Stop;
        }
        for &i in &order {
            let p = &self.residuals[i];
            let content = p.monomial_content();
            if !content.is_one() {
                let keep_cofactor = !p.div_monomial(&content).expect("content divides").is_constant();
                return Step::Split { vars: content.support().collect(), keep_cofactor };
            }
        }
        self.finite_real_values(&order).unwrap_or(Step::Stop)
    }

    /// A subsystem in one or two unknowns whose real solutions have only
    /// rational coordinates in some unknown: branch over those values.
    fn finite_real_values(&self, order: &[usize]) -> Option<Step> {
        if !self.field.is_rationals() {
            return None;
        }
        let small: Vec<&Polynomial> =
            order.iter().map(|&i| &self.residuals[i]).filter(|p| p.variables_used().len() <= 2).collect();
        for p in &small {
            let used: Vec<usize> = p.variables_used().into_iter().collect();
            if used.len() == 1 {
                let (_, u) = p.to_univariate().ok()?;
                if let Some(values) = rational_real_roots(&u).filter(|v| !v.is_empty()) {
                    return Some(Step::Enumerate { var: used[0], values });
                }
            }
        }
        for (i, p) in small.iter().enumerate() {
            let used: Vec<usize> = p.variables_used().into_iter().collect();
            if used.len() != 2 {
                continue;
            }
            for q in &small[i + 1..] {
                if q.variables_used().into_iter().collect::<Vec<_>>() != used {
                    continue;
                }
                for (elim, keep) in [(used[0], used[1]), (used[1], used[0])] {
                    let Ok(r) = resultant(p, q, elim) else { continue };
                    if r.is_zero() {
                        continue;
                    }
                    let (_, ru) = r.to_univariate().ok()?;
                    if let Some(values) = rational_real_roots(&ru).filter(|v| !v.is_empty()) {
                        return Some(Step::Enumerate { var: keep, values });
                    }
                }
            }
        }
        None
    }

    fn odd_root(&self, p: &Polynomial, vars: &Variables) -> Option<Step> {
        if p.num_terms() != 2 {
            return None;
        }
        let ts: Vec<(&Monomial, &FieldElement)> = p.terms().collect();
        let single = |m: &Monomial| {
            let s: Vec<usize> = m.support().collect();
            (s.len() == 1).then(|| (s[0], m.exponent(s[0])))
        };
        let ((a, ka), (b, kb)) = (single(ts[0].0)?, single(ts[1].0)?);
        if ka != kb || ka % 2 == 0 || a == b {
            return None;
        }
        let k = ka;
        let (ca, cb) = (ts[0].1.as_rational()?, ts[1].1.as_rational()?);
        // ca a^k + cb b^k = 0  <=>  a^k = d b^k
        let d = -(&cb / &ca);
        // bind the side whose ratio has magnitude at least 1; on ties the later unknown
        let (u, v, d) = if d.abs() > Rational::one() || (d.abs() == Rational::one() && a > b) {
            (a, b, d)
        } else {
            (b, a, d.recip())
        };
        let vp = Polynomial::var(vars, &self.field, v);
        if let Some(r) = rational_root(&d, k) {
            let value = vp.scale_rational(&r);
            let note = format!("{} := {}", name(vars, u), value.compact());
            return Some(Step::Bind { var: u, value, field: None, note });
        }
        if !self.field.is_rationals() {
            return None;
        }
        let ext = Field::real_root("c", k, &d.abs()).ok()?;
        let c = ext.generator();
        let c = if d.is_negative() { -&c } else { c };
        let value = vp.lift(&ext).ok()?.scale(&c);
        let note = format!("{} := {} with c^{k} = {}", name(vars, u), value.compact(), d.abs());
        Some(Step::Bind { var: u, value, field: Some(ext), note })
    }
}

/// Applies the rewriting and splitting rules to a fixpoint. Leaves are
/// returned in depth-first order, so the list is deterministic.
pub fn case_split(system: &ConstraintSystem, opts: &SolverOptions) -> Vec<Branch> {
    let mut root = Branch::root(system);
    root.tidy();
    let mut stack = vec![root];
    let mut out = Vec::new();
    while let Some(mut b) = stack.pop() {
        loop {
            match b.next_step(opts) {
                Step::Bind { var, value, field, note } => {
                    b.apply(var, value, field);
                    b.path.push(note);
                    b.tidy();
                }
                Step::Split { vars, keep_cofactor } => {
                    let names = b.vars();
                    let mut children = Vec::new();
                    for (s, &u) in vars.iter().enumerate() {
                        let mut c = b.clone();
                        c.splits += 1;
                        for &w in &vars[..s] {
                            c.guards.push(Polynomial::var(&names, &c.field, w));
                            c.path.push(format!("{} != 0", name(&names, w)));
                        }
                        let zero = Polynomial::zero(&names, &c.field);
                        c.apply(u, zero, None);
                        c.path.push(format!("{} = 0", name(&names, u)));
                        c.tidy();
                        children.push(c);
                    }
                    if keep_cofactor {
                        let mut last = b.clone();
                        last.splits += 1;
                        for &w in &vars {
                            last.guards.push(Polynomial::var(&names, &last.field, w));
                            last.path.push(format!("{} != 0", name(&names, w)));
                        }
                        last.tidy();
                        children.push(last);
                    }
                    stack.extend(children.into_iter().rev());
                    break;
                }
                Step::Enumerate { var, values } => {
                    let names = b.vars();
                    let mut children = Vec::new();
                    for v in values {
                        let mut c = b.clone();
                        c.splits += 1;
                        let value = Polynomial::constant(&names, c.field.from_rational(v.clone()));
                        c.apply(var, value, None);
                        c.path.push(format!("{} = {v}", name(&names, var)));
                        c.tidy();
                        children.push(c);
                    }
                    stack.extend(children.into_iter().rev());
                    break;
                }
                Step::Stop => {
                    out.push(b);
                    break;
                }
            }
        }
    }
    out
}

fn forced_zero(u: &UniPoly) -> Option<bool> {
    // Some(true): the only real root is 0; Some(false): no real root at all
    let (k, rest) = u.split_zero_root();
    let none_else = rest.count_real_roots(&Bound::NegInfinity, &Bound::PosInfinity) == 0;
    match (k, none_else) {
        (0, true) => Some(false),
        (_, true) => Some(true),
        _ => None,
    }
}

impl Branch {
    fn violates(&self, zeros: &[usize]) -> bool {
        let vars = self.vars();
        let mut b = Bindings::new();
        for &z in zeros {
            b.insert(z, Polynomial::zero(&vars, &self.field));
        }
        self.strict_nonzero.iter().chain(&self.guards).any(|p| p.substitute(&b).is_zero())
    }

    /// Resultant plus Sturm on equations in at most two unknowns.
    fn sturm_refutation(&self) -> Option<String> {
        let vars = self.vars();
        let small: Vec<&Polynomial> = self.residuals.iter().filter(|p| p.variables_used().len() <= 2).collect();
        for p in &small {
            let used: Vec<usize> = p.variables_used().into_iter().collect();
            if used.len() == 1 {
                let (_, u) = p.to_univariate().ok()?;
                match forced_zero(&u) {
                    Some(false) => return Some(format!("{} has no real root", p.compact())),
                    Some(true) if self.violates(&used) => {
                        return Some(format!("{} forces {} = 0", p.compact(), name(&vars, used[0])))
                    }
                    _ => {}
                }
            }
        }
        for (i, p) in small.iter().enumerate() {
            for q in &small[i + 1..] {
                let used: Vec<usize> = p.variables_used().into_iter().collect();
                if used.len() != 2 || q.variables_used().into_iter().collect::<Vec<_>>() != used {
                    continue;
                }
                for (elim, keep) in [(used[0], used[1]), (used[1], used[0])] {
                    let Ok(r) = resultant(p, q, elim) else { continue };
                    if r.is_zero() {
                        continue;
                    }
                    let (_, ru) = r.to_univariate().ok()?;
                    match forced_zero(&ru) {
                        Some(false) => return Some(format!("resultant in {} has no real root", name(&vars, keep))),
                        Some(true) => {
                            let mut b = Bindings::new();
                            b.insert(keep, Polynomial::zero(&vars, &self.field));
                            let (_, pu) = p.substitute(&b).to_univariate().ok()?;
                            let (_, qu) = q.substitute(&b).to_univariate().ok()?;
                            let g = pu.gcd(&qu);
                            if g.degree() == Some(0) {
                                return Some(format!("no real solution with {} = 0", name(&vars, keep)));
                            }
                            if !g.is_zero() && forced_zero(&g) == Some(true) && self.violates(&[elim, keep]) {
                                return Some(format!(
                                    "only real solution is {} = {} = 0",
                                    name(&vars, elim),
                                    name(&vars, keep)
                                ));
                            }
                            if self.violates(&[keep]) {
                                return Some(format!("forces {} = 0", name(&vars, keep)));
                            }
                        }
                        None => {}
                    }
                }
            }
        }
        None
    }

    /// `1` in the ideal of the relevant equations together with
    /// `t * prod(nonzero) - 1`.
    fn groebner_refutation(&self, opts: &SolverOptions) -> Option<String> {
        let vars = self.vars();
        let nonzero: Vec<&Polynomial> = self.strict_nonzero.iter().chain(&self.guards).collect();
        let keep: BTreeSet<usize> = nonzero.iter().flat_map(|p| p.variables_used()).collect();
        let eqs: Vec<&Polynomial> = self.residuals.iter().filter(|p| p.variables_used().is_subset(&keep)).collect();
        if eqs.is_empty() || keep.len() + 1 > opts.groebner_max_vars {
            return None;
        }
        let mut names: Vec<String> = keep.iter().map(|&i| vars.name(i).to_string()).collect();
        names.push("_t".into());
        let small = Variables::new(&names);
        let mut gens = Vec::new();
        for p in &eqs {
            gens.push(p.rename_into(&small).ok()?);
        }
        let mut prod = Polynomial::var(&small, &self.field, names.len() - 1);
        for p in &nonzero {
            prod = &prod * &p.rename_into(&small).ok()?;
        }
        gens.push(&prod - &Polynomial::one(&small, &self.field));
        let gb = groebner_with_limit(&gens, &MonomialOrder::grlex(small.len()), Some(opts.groebner_budget))?;
        gb.iter().any(Polynomial::is_constant).then(|| {
            format!(
                "the equations in {} leave no point where the nondegeneracy holds",
                names[..names.len() - 1].join(", ")
            )
        })
    }
}

/// Decides a leaf: a family when nothing remains to solve, a contradiction
/// when the nondegeneracy cannot hold, otherwise the branch stays residual.
pub fn close_branch(b: &Branch, nondegeneracy: &[Polynomial], opts: &SolverOptions) -> Closure {
    let mut b = b.clone();
    if let Ok(res) = resolve_bindings(&b.bindings, &b.vars()) {
        b.strict_nonzero = nondegeneracy.iter().map(|p| bind(p, &res).expect("bindable")).collect();
    }
    if b.strict_nonzero.iter().any(Polynomial::is_zero) {
        return Closure::Contradiction("nondegeneracy vanishes identically".into());
    }
    if b.guards.iter().any(Polynomial::is_zero) {
        return Closure::Contradiction("a branch guard vanishes".into());
    }
    if let Some(p) = b.residuals.iter().find(|p| p.is_constant()) {
        return Closure::Contradiction(format!("equation {} = 0", p.compact()));
    }
    if b.residuals.is_empty() {
        return Closure::Family(family_of(&b));
    }
    if let Some(why) = b.sturm_refutation() {
        return Closure::Contradiction(why);
    }
    if let Some(why) = b.groebner_refutation(opts) {
        return Closure::Contradiction(why);
    }
    Closure::Residual(b)
}

fn family_of(b: &Branch) -> SolutionFamily {
    let vars = b.vars();
    let mut strict: Vec<Polynomial> = Vec::new();
    let mut push = |p: Polynomial| {
        let p = p.monic(&grlex(&p));
        if !strict.contains(&p) {
            strict.push(p);
        }
    };
    for p in b.strict_nonzero.iter().chain(&b.guards) {
        match monomial_support(p) {
            Some(s) => s.into_iter().for_each(|i| push(Polynomial::var(&vars, &b.field, i))),
            None => push(p.clone()),
        }
    }
    strict.sort_by_key(|x| x.to_string());
    SolutionFamily {
        path: b.path.clone(),
        bindings: b.bindings.clone(),
        free_parameters: (0..vars.len()).filter(|i| !b.bindings.contains_key(i)).collect(),
        strict_nonzero: strict,
        field: b.field.clone(),
    }
}

/// Every leaf of [`case_split`] with its closure.
pub fn solve(system: &ConstraintSystem, opts: &SolverOptions) -> Vec<(Branch, Closure)> {
    case_split(system, opts)
        .into_iter()
        .map(|b| {
            let c = close_branch(&b, &system.nondegeneracy, opts);
            (b, c)
        })
        .collect()
}

impl SolutionFamily {
    /// Unknowns of the strict conditions, defined when every condition is a
    /// monomial (so it holds exactly when each of its unknowns is nonzero).
    pub fn strict_variables(&self) -> Option<Vec<usize>> {
        let mut out = BTreeSet::new();
        for p in &self.strict_nonzero {
            if p.num_terms() != 1 {
                return None;
            }
            out.extend(p.variables_used());
        }
        Some(out.into_iter().collect())
    }

    pub fn vars(&self) -> Option<&Variables> {
        self.strict_nonzero.first().or(self.bindings.values().next()).map(Polynomial::vars)
    }
}

/// Sum over families of `2^(number of strict variables)`, defined when every
/// strict condition is a monomial.
pub fn component_count(families: &[SolutionFamily]) -> ComponentCount {
    let mut total = 0u64;
    for f in families {
        match f.strict_variables() {
            Some(vs) => total += 1u64 << vs.len(),
            None => return ComponentCount::Undetermined,
        }
    }
    ComponentCount::Count(total)
}

/// Image of `det M1` over all families, from its monomial shape on each.
pub fn classify_det1(families: &[SolutionFamily], det1: &[Polynomial]) -> Det1Image {
    let mut kinds = Vec::new();
    for (f, d) in families.iter().zip(det1) {
        let strict: BTreeSet<usize> = f.strict_variables().unwrap_or_default().into_iter().collect();
        let kind = if let Some(c) = d.constant_value() {
            if c.is_one() {
                Det1Image::One
            } else {
                Det1Image::Undetermined
            }
        } else if d.num_terms() == 1 && d.variables_used().is_subset(&strict) {
            let (m, c) = d.terms().next().unwrap();
            let c = c.as_rational();
            let odd = m.exponents().iter().any(|e| e % 2 == 1);
            match c {
                Some(_) if odd => Det1Image::NonzeroReals,
                Some(c) if c.is_positive() => Det1Image::Positive,
                _ => Det1Image::Undetermined,
            }
        } else {
            Det1Image::Undetermined
        };
        kinds.push(kind);
    }
    if kinds.is_empty() || kinds.contains(&Det1Image::Undetermined) {
        Det1Image::Undetermined
    } else if kinds.contains(&Det1Image::NonzeroReals) {
        Det1Image::NonzeroReals
    } else if kinds.contains(&Det1Image::Positive) {
        Det1Image::Positive
    } else {
        Det1Image::One
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};

    #[test]
    fn roots() {
        assert_eq!(rational_root(&rat(-8), 3), Some(rat(-2)));
        assert_eq!(rational_root(&ratio(1, 27), 3), Some(ratio(1, 3)));
        assert_eq!(rational_root(&rat(4), 3), None);
    }

    #[test]
    fn rational_roots_only() {
        let q = Field::rationals();
        let u = |cs: &[i64]| UniPoly::new(&q, cs.iter().map(|&c| FieldElement::int(c)).collect());
        // x^4 - 1: real roots -1, 1
        assert_eq!(rational_real_roots(&u(&[-1, 0, 0, 0, 1])), Some(vec![rat(-1), rat(1)]));
        // x^3 - 2x: sqrt 2 is irrational
        assert_eq!(rational_real_roots(&u(&[0, -2, 0, 1])), None);
        // 2x^2 - x: 0 and 1/2
        assert_eq!(rational_real_roots(&u(&[0, -1, 2])), Some(vec![rat(0), ratio(1, 2)]));
    }

    #[test]
    fn trivial_system_has_one_branch() {
        let sys = ConstraintSystem { equations: Vec::new(), nondegeneracy: Vec::new() };
        let bs = case_split(&sys, &SolverOptions::default());
        assert_eq!(bs.len(), 1);
        assert!(bs[0].bindings.is_empty());
    }
}
