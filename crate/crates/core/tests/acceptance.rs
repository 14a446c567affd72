//! Acceptance checks, one line per criterion part. A FAIL line states what
//! was computed instead; the process still exits 0 so that the remaining
//! suite runs.

mod common;

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use common::{analysis, small_rational, spec_path, SHIPPED};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use weilaut::endo::{compose, constraint_system, generic_endo, numeric_determinants, numeric_instantiate, Bindings};
use weilaut::poly::{resultant, Polynomial, Variables};
use weilaut::quotient::normal_form;
use weilaut::report::{build_report, pair_nonzero_real_solution, Analysis};
use weilaut::sample::sample_point;
use weilaut::scalar::{ratio, Field, FieldElement, Rational};
use weilaut::solver::{close_branch, Closure, ComponentCount, Det1Image, SolutionFamily, SolverOptions};
use weilaut::weil::{Element, WeilAlgebra};

struct Tally {
    pass: usize,
    fail: usize,
}

impl Tally {
    fn check(&mut self, id: &str, what: &str, ok: bool, detail: impl AsRef<str>) {
        let detail = detail.as_ref();
        if ok {
            self.pass += 1;
            println!("PASS {id} {what}");
        } else {
            self.fail += 1;
            println!("FAIL {id} {what}: {detail}");
        }
    }
}

fn parse(text: &str, vars: &Variables) -> Polynomial {
    Polynomial::parse(text, vars, &Field::rationals()).unwrap()
}

fn set_of(ps: &[Polynomial]) -> BTreeSet<String> {
    ps.iter().map(|p| p.compact()).collect()
}

fn family_with(a: &Analysis, unknowns: &[&str]) -> Option<usize> {
    let u = a.endo.unknowns();
    a.families.iter().position(|f| {
        let zeros: BTreeSet<usize> = f.bindings.iter().filter(|(_, p)| p.is_zero()).map(|(k, _)| *k).collect();
        zeros == unknowns.iter().map(|n| u.index_of(n).unwrap()).collect()
    })
}

fn criterion_1(t: &mut Tally) {
    let a = analysis("tangent");
    let u = a.endo.unknowns().clone();
    t.check(
        "1.1",
        "dimension 4, basis {1, X, Y, XY} (exact)",
        a.algebra.dim() == 4 && a.algebra.basis_labels() == ["1", "X", "Y", "XY"],
        format!("{:?}", a.algebra.basis_labels()),
    );
    let derived = set_of(&a.system.polys().iter().map(weilaut::report::primitive).collect::<Vec<_>>());
    let expected = set_of(&[parse("A*D", &u), parse("B*E", &u)]);
    t.check(
        "1.2",
        "constraint equations exactly {AD = 0, BE = 0} (exact)",
        derived == expected,
        format!("derived {:?}: the XY-coordinates of phi(X)^2 and phi(Y)^2 are 2AB and 2DE", derived),
    );
    t.check("1.3", "four branches (exact)", a.outcomes.len() == 4, format!("{} branches", a.outcomes.len()));
    let diag = family_with(&a, &["B", "D"]);
    let anti = family_with(&a, &["A", "E"]);
    t.check(
        "1.4",
        "two families: diagonal (B = D = 0) and antidiagonal (A = E = 0)",
        a.families.len() == 2 && diag.is_some() && anti.is_some(),
        format!("{} families", a.families.len()),
    );
    t.check("1.5", "component count 8 (exact)", a.components == ComponentCount::Count(8), a.components.to_string());
    let full = set_of(&a.family_dets.iter().map(|d| d.det_full.clone()).collect::<Vec<_>>());
    let lin = set_of(&a.family_dets.iter().map(|d| d.det_linear.clone()).collect::<Vec<_>>());
    t.check(
        "1.6",
        "det M in {A^2E^2, -B^2D^2}, det M1 in {AE, -BD} (exact)",
        full == set_of(&[parse("A^2*E^2", &u), parse("-B^2*D^2", &u)])
            && lin == set_of(&[parse("A*E", &u), parse("-B*D", &u)]),
        format!("{full:?} / {lin:?}"),
    );
    t.check("1.7", "det M1 image R \\ {0}", a.det1_image == Det1Image::NonzeroReals, a.det1_image.to_string());
}

fn criterion_2(t: &mut Tally) {
    let a = analysis("quartic");
    let u = a.endo.unknowns().clone();
    let labels = a.algebra.basis_labels();
    t.check(
        "2.1",
        "dimension 10, basis 1, X, Y, X^2, XY, Y^2, X^3, X^2Y, XY^2, X^4 under Y > X (exact)",
        labels == ["1", "X", "Y", "X^2", "XY", "Y^2", "X^3", "X^2Y", "XY^2", "X^4"],
        labels.join(", "),
    );
    let mut expected = Bindings::new();
    for (k, v) in [("B", "0"), ("J", "0"), ("K", "A"), ("M", "C")] {
        expected.insert(u.index_of(k).unwrap(), parse(v, &u));
    }
    let one = a.families.len() == 1;
    let f: Option<&SolutionFamily> = a.families.first();
    t.check(
        "2.2",
        "exactly one family, bindings {B = 0, J = 0, K = A, M = C}, strict A != 0",
        one && f.is_some_and(|f| f.bindings == expected && set_of(&f.strict_nonzero) == set_of(&[parse("A", &u)])),
        format!("{} families", a.families.len()),
    );
    let d = a.family_dets.first();
    // the family member with A = K = 1 and every other unknown 0
    let at_one = f.map(|_| {
        let mut v = vec![FieldElement::int(0); u.len()];
        v[u.index_of("A").unwrap()] = FieldElement::int(1);
        v[u.index_of("K").unwrap()] = FieldElement::int(1);
        numeric_determinants(&a.algebra, &numeric_instantiate(&a.endo, &v).unwrap().matrix).0
    });
    t.check(
        "2.3",
        "det M = 4A^21 (exact)",
        d.is_some_and(|d| d.det_full == parse("4*A^21", &u)),
        format!(
            "derived {}; the numeric oracle gives det M = {} at A = K = 1, all other unknowns 0",
            d.map(|d| d.det_full.compact()).unwrap_or_default(),
            at_one.map(|x| x.to_string()).unwrap_or_default()
        ),
    );
    t.check(
        "2.4",
        "det M1 = A^2 (exact)",
        d.is_some_and(|d| d.det_linear == parse("A^2", &u)),
        d.map(|d| d.det_linear.compact()).unwrap_or_default(),
    );
    t.check("2.5", "det M1 image (0, inf)", a.det1_image == Det1Image::Positive, a.det1_image.to_string());
    let diag: Vec<String> =
        a.family_matrices.first().map(|(m, _)| m.diagonal().iter().map(|p| p.compact()).collect()).unwrap_or_default();
    let printed = ["A", "A", "A^2", "A^2", "A^2", "2A^3", "A^3", "A^3", "2A^4"];
    t.check(
        "2.6",
        "diagonal of M is (A, A, A^2, A^2, A^2, 2A^3, A^3, A^3, 2A^4) (exact)",
        diag == printed,
        format!("derived ({})", diag.join(", ")),
    );
    let report = build_report(&a);
    let items: Vec<&str> = report.discrepancies.iter().map(|d| d.item.as_str()).collect();
    let listed =
        ["equation X^3*Y at X^4", "equation X^2*Y^2 at X^4", "equation Y^4 at X^4", "equation X^3 - Y^3 at X^4"]
            .iter()
            .all(|e| items.contains(e))
            && items.iter().any(|i| i.starts_with("matrix entry"));
    t.check(
        "2.7",
        "discrepancies list the sign and term differences in the printed equations and M",
        listed,
        format!("{items:?}"),
    );
    t.check(
        "2.8",
        "computed component count (2) reported beside the connectedness claim",
        report.components.count == Some(2)
            && report.components.reference == Some(1)
            && items.contains(&"connected components"),
        format!("{:?} vs {:?}", report.components.count, report.components.reference),
    );
}

fn criterion_3(t: &mut Tally) {
    let a = analysis("quartic");
    let u = a.endo.unknowns().clone();
    let (ai, bi) = (u.index_of("A").unwrap(), u.index_of("B").unwrap());
    let start = Instant::now();
    let beta = a.outcomes.iter().find(|(b, _)| !b.field.is_rationals());
    let Some((branch, closure)) = beta else {
        t.check("3.1", "branch over Q(c), c^3 = 4, exists", false, "no extension branch");
        return;
    };
    t.check(
        "3.1",
        "branch over Q(c), c^3 = 4, is closed as a contradiction",
        matches!(closure, Closure::Contradiction(_)),
        format!("{closure:?}"),
    );
    let target: BTreeSet<usize> = [ai, bi].into_iter().collect();
    let pair: Vec<&Polynomial> = branch.residuals.iter().filter(|p| p.variables_used() == target).collect();
    let opts = SolverOptions { groebner_max_vars: 0, ..SolverOptions::default() };
    let by_sturm = close_branch(branch, &a.system.nondegeneracy, &opts);
    t.check(
        "3.2",
        "resultant and Sturm counting alone close the branch",
        matches!(by_sturm, Closure::Contradiction(_)),
        "with the Groebner step disabled the branch stays residual; it closes only through a Groebner certificate in A, B, K",
    );
    if pair.len() >= 2 {
        let res = resultant(pair[0], pair[1], ai).unwrap();
        let witness = pair_nonzero_real_solution(pair[0], pair[1], ai, bi);
        t.check(
            "3.3",
            "derived pair in (A, B) has only the real solution A = B = 0",
            witness.is_none(),
            format!(
                "{} = 0, {} = 0; resultant in A is {}; nonzero real solution: {}",
                pair[0].compact(),
                pair[1].compact(),
                if res.is_zero() { "identically 0".to_string() } else { res.compact() },
                witness.unwrap_or_default()
            ),
        );
    } else {
        t.check(
            "3.3",
            "derived pair in (A, B) present on the branch",
            false,
            format!("{} equations in A, B", pair.len()),
        );
    }
    let k = Field::real_root("c", 3, &ratio(4, 1)).unwrap();
    let f = Polynomial::parse("c*A^3 - c*B^3 - 3*A*B^2", &u, &k).unwrap();
    let g = Polynomial::parse("2*A^2 - 2*c*B^2 - 2*A*B", &u, &k).unwrap();
    let witness = pair_nonzero_real_solution(&f, &g, ai, bi);
    t.check(
        "3.4",
        "printed pair (with cube root of 8 = 2) has only the real solution A = B = 0",
        witness.is_none(),
        witness.unwrap_or_default(),
    );
    let elapsed = start.elapsed();
    t.check("3.5", "runtime < 5 s", elapsed < Duration::from_secs(5), format!("{elapsed:?}"));
}

fn criterion_4(t: &mut Tally) {
    let start = Instant::now();
    let alg = common::algebra("sextic");
    let endo = generic_endo(&alg, None);
    let system = constraint_system(&endo);
    let elapsed = start.elapsed();
    t.check("4.1", "constraint system generated in < 5 s", elapsed < Duration::from_secs(5), format!("{elapsed:?}"));
    let id: Vec<FieldElement> = endo
        .slots()
        .iter()
        .map(|&(v, b)| FieldElement::int((alg.basis()[b] == weilaut::poly::Monomial::var(alg.vars().len(), v)) as i64))
        .collect();
    t.check(
        "4.2",
        "identity endomorphism satisfies every equation (exact)",
        system.equations.iter().all(|e| e.poly.evaluate(&id).is_zero()),
        "an equation does not vanish at the identity",
    );
    let a = analysis("sextic");
    let out = Command::new(env!("CARGO_BIN_EXE_weilaut")).args(["solve", &spec_path("sextic")]).output().unwrap();
    let code = out.status.code().unwrap();
    if a.is_closed() {
        let identity = a.family_matrices.iter().all(|(_, l)| {
            l.entries.iter().enumerate().all(|(i, row)| {
                row.iter().enumerate().all(|(j, p)| {
                    if i == j {
                        p.constant_value().is_some_and(|c| c.is_one())
                    } else {
                        p.is_zero()
                    }
                })
            })
        });
        t.check("4.3", "all branches closed: M1 = identity on every family", identity, "M1 is not the identity");
        t.check("4.4", "det M1 image {1}", a.det1_image == Det1Image::One, a.det1_image.to_string());
        t.check(
            "4.5",
            "weilaut solve exits 0 with a report",
            code == 0 && !out.stdout.is_empty(),
            format!("exit {code}"),
        );
    } else {
        t.check(
            "4.3",
            "residual branches reported with exit code 2",
            code == 2 && !out.stdout.is_empty(),
            format!("exit {code}"),
        );
    }
}

fn poly_of(alg: &WeilAlgebra, e: &Element<FieldElement>) -> Polynomial {
    Polynomial::from_terms(alg.vars(), &Field::rationals(), alg.basis().iter().cloned().zip(e.coords.iter().cloned()))
}

fn criterion_5(t: &mut Tally) {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for name in SHIPPED {
        let a = analysis(name);
        let alg = &a.algebra;
        let endo = generic_endo(alg, None);
        let n = endo.unknowns().len();
        let mut agree = 0;
        for k in 0..200 {
            let values: Vec<FieldElement> = if k % 2 == 0 {
                (0..n)
                    .map(|_| {
                        if rng.gen_bool(0.5) {
                            FieldElement::int(0)
                        } else {
                            FieldElement::rational(small_rational(&mut rng))
                        }
                    })
                    .collect()
            } else {
                let f = &a.families[k % a.families.len()];
                sample_point(endo.unknowns(), &f.field, &f.bindings, &f.strict_nonzero, &mut rng).unwrap()
            };
            let vanish = a.system.equations.iter().all(|e| e.poly.evaluate(&values).is_zero());
            let num = numeric_instantiate(&endo, &values).unwrap();
            agree += (vanish == num.is_homomorphism) as usize;
        }
        t.check(
            &format!("5.1 {name}"),
            "200 bindings: constraints vanish iff multiplicative on all basis pairs (exact)",
            agree == 200,
            format!("{agree}/200 agree"),
        );
        let mut same = 0;
        for _ in 0..500 {
            let x = common::random_element(alg, &mut rng);
            let y = common::random_element(alg, &mut rng);
            let nf = normal_form(&(&poly_of(alg, &x) * &poly_of(alg, &y)), alg.groebner_basis());
            same += (alg.element_of(&nf) == alg.multiply(&x, &y)) as usize;
        }
        t.check(
            &format!("5.2 {name}"),
            "500 pairs: multiply equals product then normal form (exact)",
            same == 500,
            format!("{same}/500"),
        );
        let q = Field::rationals();
        let e: Vec<Element<FieldElement>> = (0..alg.dim()).map(|i| Element::unit(alg.dim(), i, &q.zero())).collect();
        let one = alg.one(&q.zero());
        let mut ok = true;
        for i in 0..alg.dim() {
            ok &= alg.multiply(&one, &e[i]) == e[i];
            for j in 0..alg.dim() {
                let ij = alg.multiply(&e[i], &e[j]);
                ok &= ij == alg.multiply(&e[j], &e[i]);
                for k in 0..alg.dim() {
                    ok &= alg.multiply(&ij, &e[k]) == alg.multiply(&e[i], &alg.multiply(&e[j], &e[k]));
                }
            }
        }
        t.check(
            &format!("5.3 {name}"),
            "associativity, commutativity, unit on all basis triples (exact)",
            ok,
            "axiom violated",
        );
    }
}

fn criterion_6(t: &mut Tally) {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for name in SHIPPED {
        let a = analysis(name);
        let endo = generic_endo(&a.algebra, None);
        for (i, f) in a.families.iter().enumerate() {
            let mut good = 0;
            for _ in 0..100 {
                let mut draw = || {
                    let v = sample_point(endo.unknowns(), &f.field, &f.bindings, &f.strict_nonzero, &mut rng).unwrap();
                    numeric_instantiate(&endo, &v).unwrap()
                };
                let (phi, psi) = (draw(), draw());
                let (d, d1) = numeric_determinants(&a.algebra, &compose(&phi.matrix, &psi.matrix));
                let (dp, d1p) = numeric_determinants(&a.algebra, &phi.matrix);
                let (ds, d1s) = numeric_determinants(&a.algebra, &psi.matrix);
                good += (d == dp * ds && d1 == d1p * d1s) as usize;
            }
            t.check(
                &format!("6 {name} family {}", i + 1),
                "100 pairs: det(phi psi) = det(phi) det(psi) for M and M1 (exact)",
                good == 100,
                format!("{good}/100"),
            );
        }
    }
}

fn criterion_7(t: &mut Tally) {
    let a = analysis("tangent");
    let endo = generic_endo(&a.algebra, None);
    let grid: Vec<Rational> =
        [(-2, 1), (-1, 1), (-1, 2), (0, 1), (1, 2), (1, 1), (2, 1)].iter().map(|&(n, d)| ratio(n, d)).collect();
    let n = endo.unknowns().len();
    let mut idx = vec![0usize; n];
    let (mut autos, mut outside) = (0usize, 0usize);
    loop {
        let values: Vec<FieldElement> = idx.iter().map(|&i| FieldElement::rational(grid[i].clone())).collect();
        if numeric_instantiate(&endo, &values).unwrap().is_automorphism {
            autos += 1;
            let inside = a.families.iter().any(|f| {
                f.bindings.iter().all(|(k, p)| p.evaluate(&values) == values[*k])
                    && f.strict_nonzero.iter().all(|p| !p.evaluate(&values).is_zero())
            });
            outside += !inside as usize;
        }
        let mut k = 0;
        while k < n && idx[k] == grid.len() - 1 {
            idx[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
        idx[k] += 1;
    }
    t.check(
        "7",
        &format!("grid of {} matrices: no automorphism outside the families ({autos} found)", grid.len().pow(n as u32)),
        outside == 0,
        format!("{outside} automorphisms outside"),
    );
}

fn criterion_8(t: &mut Tally) {
    let dir = tempfile::tempdir().unwrap();
    for name in SHIPPED {
        let mut texts = Vec::new();
        for run in 0..2 {
            let p = dir.path().join(format!("{name}-{run}.json"));
            Command::new(env!("CARGO_BIN_EXE_weilaut"))
                .args(["solve", &spec_path(name), "--seed", "8", "--json", p.to_str().unwrap()])
                .output()
                .unwrap();
            texts.push(std::fs::read(&p).unwrap_or_default());
        }
        t.check(
            &format!("8 {name}"),
            "two solve runs give byte-identical JSON",
            !texts[0].is_empty() && texts[0] == texts[1],
            "outputs differ",
        );
    }
}

fn main() {
    let mut t = Tally { pass: 0, fail: 0 };
    criterion_1(&mut t);
    criterion_2(&mut t);
    criterion_3(&mut t);
    criterion_4(&mut t);
    criterion_5(&mut t);
    criterion_6(&mut t);
    criterion_7(&mut t);
    criterion_8(&mut t);
    println!("{} passed, {} failed", t.pass, t.fail);
}
