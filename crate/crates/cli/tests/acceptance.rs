//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use mvcurl_cli::Document;
use mvcurl_core::ansatz::{casimir_solve, in_span, lm_solve, multivector_basis};
use mvcurl_core::closure::run_closures;
use mvcurl_core::cohomology::{lichnerowicz_delta, truncated_exact_cohomology, TruncatedComplexReport};
use mvcurl_core::constructions::{jacobian_multivector, multiplier_multivector};
use mvcurl_core::curl::{curl, divergence, is_last_multiplier};
use mvcurl_core::exterior::IndexSet;
use mvcurl_core::identities::run_suite;
use mvcurl_core::poisson::{
    hamiltonian_field, jacobi_residual, lie_poisson, lm_system_residuals, modular_field, modular_field_coordinate,
};
use mvcurl_core::random::Sampler;
use mvcurl_core::{AnsatzSpace, Execution, Multivector, PoissonBivector, RationalFunc, StructureConstants, VolumeForm};
use num_rational::BigRational;

const SEED: u64 = mvcurl_cli::cli::DEFAULT_SEED;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn func(chart: &str, src: &str) -> RationalFunc {
    Document::parse(&format!("chart {chart}\n")).unwrap().eval_function(src).unwrap()
}

fn q(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

fn identity_suite() -> Outcome {
    let start = Instant::now();
    let outcomes = run_suite(SEED, 200, Execution::default());
    let mut summary = Vec::new();
    for o in &outcomes {
        ensure(o.passed(), || format!("{}: failures {:?}, errors {:?}", o.identity.name(), o.failures, o.errors))?;
        ensure(o.cases == 200, || format!("{}: only {} cases", o.identity.name(), o.cases))?;
        summary.push(o.identity.name());
    }
    Ok(format!("{} identities x 200 cases in {:.1?}", summary.len(), start.elapsed()))
}

fn three_routes() -> Outcome {
    let (mut yes, mut no) = (0, 0);
    for case in 0..100 {
        let mut s = Sampler::new(SEED, 200, case);
        let n = 2 + s.index(3);
        let v = s.volume(n);
        let m = s.nonzero_function(n);
        let a = if case % 2 == 0 {
            let g = 2 + s.index(n - 1);
            let f = s.multivector(n, g);
            multiplier_multivector(&v, &m, &f).map_err(|e| format!("case {case}: {e}"))?
        } else {
            let g = s.grade(n, 1);
            s.multivector(n, g)
        };
        let check = is_last_multiplier(&v, &m, &a).map_err(|e| format!("case {case}: {e}"))?;
        ensure(check.is_unanimous(), || format!("case {case}: routes {:?}", check.routes()))?;
        if check.holds() {
            yes += 1;
        } else {
            no += 1;
        }
    }
    ensure(yes >= 30 && no >= 30, || format!("unbalanced verdicts: {yes} true, {no} false"))?;
    Ok(format!("100 triples unanimous ({yes} multipliers, {no} not)"))
}

fn planar_h_example() -> Outcome {
    let unit = VolumeForm::unit(2);
    let constant = Multivector::basis(2, &[0, 1]).unwrap();
    let hs = ["x^2 + y^2 + 1", "x", "1 + x^2", "x y + 3", "2 + y^4"];
    for src in hs {
        let h = func("x y", src);
        let m = h.recip().unwrap();
        let pi = constant.scale(&h).unwrap();
        let residuals = lm_system_residuals(&unit, &m, &pi).unwrap();
        ensure(residuals.iter().all(RationalFunc::is_zero), || format!("h = {src}: residuals {residuals:?}"))?;
        ensure(is_last_multiplier(&unit, &m, &pi).unwrap().holds(), || format!("h = {src}: check failed"))?;
        ensure(pi.scale(&m).unwrap() == constant, || format!("h = {src}: (1/h) pi is not constant"))?;
        let found = lm_solve(&unit, &pi, &AnsatzSpace::with_denominator(2, 0, &h).unwrap()).unwrap();
        ensure(found.len() == 1 && in_span(&found, &m).unwrap(), || format!("h = {src}: solutions {found:?}"))?;
    }
    Ok(format!("{} densities h, multiplier 1/h, solution space of dimension 1", hs.len()))
}

fn planar_lie(a: i64, b: i64) -> Result<Multivector, String> {
    let pi = lie_poisson(&StructureConstants::planar(q(a), q(b))).into_inner();
    let expected = func("x y", &format!("{a} x + {b} y"));
    ensure(pi.coefficient(IndexSet::full(2)) == expected, || format!("planar({a},{b}) has pi^12 != {a}x + {b}y"))?;
    Ok(pi)
}

fn lie_poisson_cases() -> Outcome {
    let unit = VolumeForm::unit(2);
    let mut runs = 0;
    for a in [1, 2] {
        for b in [1, 2] {
            let found = lm_solve(&unit, &planar_lie(a, b)?, &AnsatzSpace::polynomial(2, 3)).unwrap();
            ensure(found.is_empty(), || format!("case I ({a},{b}): {found:?}"))?;
            runs += 1;
        }
    }
    for c in [1, 2] {
        for (label, pi, var) in [("II", planar_lie(c, 0)?, "x"), ("III", planar_lie(0, c)?, "y")] {
            let d = func("x y", var);
            for degree in [0, 2] {
                let space = AnsatzSpace::with_denominator(2, degree, &d).unwrap();
                let found = lm_solve(&unit, &pi, &space).unwrap();
                let expected = d.recip().unwrap();
                ensure(found.len() == 1 && in_span(&found, &expected).unwrap(), || {
                    format!("case {label} (c = {c}, degree {degree}): {found:?}")
                })?;
                runs += 1;
            }
        }
    }
    Ok(format!("{runs} solver runs: case I zero, case II 1/x, case III 1/y"))
}

fn lie_poisson_system() -> Outcome {
    let ms = ["x", "1/x", "x^2 y + 1", "1/(x + y)", "y^3 - x", "(x - 2)/(y^2 + 1)", "3", "x y", "1/y^2", "x^2 + y^2"];
    let cs = [(1, 1), (1, 2), (2, 1), (2, 2), (1, 0), (0, 1), (3, -1), (-2, 5), (1, 1), (2, 0)];
    for (src, (c1, c2)) in ms.iter().zip(cs) {
        let m = func("x y", src);
        let pi = planar_lie(c1, c2)?;
        let lin = func("x y", &format!("{c1} x + {c2} y"));
        let (k1, k2) = (RationalFunc::constant(2, q(c1)), RationalFunc::constant(2, q(c2)));
        let (mx, my) = (m.partial_derivative(0).unwrap(), m.partial_derivative(1).unwrap());
        let expected1 = &(&k2 * &m) + &(&my * &lin);
        let expected2 = -&(&(&k1 * &m) + &(&mx * &lin));
        let got = lm_system_residuals(&VolumeForm::unit(2), &m, &pi).unwrap();
        ensure(got == vec![expected1, expected2], || format!("m = {src}, c = ({c1},{c2}): {got:?}"))?;
    }
    Ok(format!("{} (m, c) instances match the closed form", ms.len()))
}

fn modular_routes() -> Outcome {
    for case in 0..50 {
        let mut s = Sampler::new(SEED, 201, case);
        let n = 2 + s.index(3);
        let pi = s.multivector(n, 2);
        let pi = if pi.is_zero() { Multivector::zero(n, 2) } else { pi };
        let a = modular_field(&VolumeForm::unit(n), &pi).unwrap();
        let b = modular_field_coordinate(&pi).unwrap();
        ensure(a == b, || format!("bivector case {case}: routes differ"))?;
    }
    for case in 0..50 {
        let mut s = Sampler::new(SEED, 202, case);
        let n = 2 + s.index(3);
        let pi = s.poisson(n);
        let v = s.volume(n);
        let f = s.function(n);
        let lhs = divergence(&v, &hamiltonian_field(&pi, &f).unwrap()).unwrap();
        let rhs = modular_field(&v, &pi).unwrap().apply_to(&f).unwrap();
        ensure(lhs == rhs, || format!("Poisson case {case}: div A_f differs from X(f)"))?;
    }
    Ok("50 bivectors, 50 (pi, f) pairs".into())
}

fn closure_theorems() -> Outcome {
    let outcomes = run_closures(SEED, 30, Execution::default());
    let mut parts = Vec::new();
    for o in &outcomes {
        ensure(o.passed(), || format!("{}: failures {:?}, errors {:?}", o.closure.name(), o.failures, o.errors))?;
        ensure(o.cases >= 30 && o.positives >= 10, || {
            format!("{}: {} cases, {} constructed positives", o.closure.name(), o.cases, o.positives)
        })?;
        parts.push(format!("{} {}/{}", o.closure.name(), o.positives, o.cases));
    }
    Ok(parts.join(", "))
}

fn nambu() -> Outcome {
    let mut count = 0;
    for n in [2, 3] {
        let chart = ["x", "y", "z"][..n].join(" ");
        for src in ["1", "1 + x^2", "1 + x^2 + y^2"] {
            let f = func(&chart, src);
            let v = VolumeForm::new(f.clone()).unwrap();
            let top: Vec<usize> = (0..n).collect();
            let a = Multivector::basis(n, &top).unwrap().scale(&f.recip().unwrap()).unwrap();
            ensure(curl(&v, &a).unwrap().is_zero(), || format!("n = {n}, f = {src}: curl is not zero"))?;
            count += 1;
        }
    }
    Ok(format!("{count} Nambu multivectors exact"))
}

fn so3_battery() -> Outcome {
    let pi = lie_poisson(&StructureConstants::so3());
    let unit = VolumeForm::unit(3);
    ensure(jacobi_residual(pi.as_multivector()).unwrap().is_zero(), || "jacobi residual".into())?;
    ensure(modular_field(&unit, &pi).unwrap().is_zero(), || "modular field".into())?;
    let casimirs = casimir_solve(&pi, &AnsatzSpace::polynomial(3, 2)).unwrap();
    let norm = func("x y z", "x^2 + y^2 + z^2");
    ensure(casimirs.len() == 2 && in_span(&casimirs, &norm).unwrap(), || format!("casimirs {casimirs:?}"))?;
    let h0 = truncated_exact_cohomology(&unit, &pi, 0, 2).unwrap();
    ensure(h0.dim_kernel == 2, || format!("H0 report {h0:?}"))?;
    let mut checked = 0;
    for k in 0..3 {
        for a in multivector_basis(3, k, 2) {
            let dd = lichnerowicz_delta(&pi, &lichnerowicz_delta(&pi, &a).unwrap()).unwrap();
            ensure(dd.is_zero(), || format!("delta^2 on grade {k}"))?;
            checked += 1;
        }
    }
    for case in 0..20 {
        let mut s = Sampler::new(SEED, 203, case);
        let k = s.index(3);
        let a = s.multivector(3, k);
        let dd = lichnerowicz_delta(&pi, &lichnerowicz_delta(&pi, &a).unwrap()).unwrap();
        ensure(dd.is_zero(), || format!("delta^2 on random case {case}"))?;
        checked += 1;
    }
    Ok(format!("jacobi, modular, casimirs, H0 kernel 2, delta^2 = 0 on {checked} cochains"))
}

fn cohomology_sanity() -> Outcome {
    let unit2 = VolumeForm::unit(2);
    let symplectic = PoissonBivector::new(Multivector::basis(2, &[0, 1]).unwrap()).unwrap();
    let h0 = truncated_exact_cohomology(&unit2, &symplectic, 0, 3).unwrap();
    ensure(h0.truncated_h_dim == 1, || format!("symplectic H0 {h0:?}"))?;
    let mut reports: Vec<TruncatedComplexReport> = vec![h0];
    for (k, d) in [(1, 2), (2, 2)] {
        reports.push(truncated_exact_cohomology(&unit2, &symplectic, k, d).unwrap());
    }
    let so3 = lie_poisson(&StructureConstants::so3());
    for (k, d) in [(0, 2), (1, 1), (2, 1), (3, 1)] {
        reports.push(truncated_exact_cohomology(&VolumeForm::unit(3), &so3, k, d).unwrap());
    }
    for case in 0..4 {
        let mut s = Sampler::new(SEED, 204, case);
        let c = RationalFunc::from_poly(s.polynomial_with(3, 2, 0.6));
        let pi = PoissonBivector::new(jacobian_multivector(&VolumeForm::unit(3), &[c]).unwrap()).unwrap();
        for k in 0..3 {
            reports.push(truncated_exact_cohomology(&VolumeForm::unit(3), &pi, k, 1).unwrap());
        }
    }
    for r in &reports {
        ensure(r.exact_kernel_in_full_kernel && r.dimensions_consistent(), || format!("report {r:?}"))?;
    }
    Ok(format!("symplectic H0 = 1, containment on {} reports", reports.len()))
}

fn parser_printer() -> Outcome {
    let valid = common::documents().iter().filter(|p| !common::is_error_doc(p)).count();
    ensure(valid >= 15, || format!("only {valid} valid documents"))?;
    let mut failures = common::check_round_trips();
    failures.extend(common::check_error_documents());
    failures.extend(common::check_commands());
    ensure(failures.is_empty(), || failures.join("\n"))?;
    Ok(format!("{valid} documents round-trip, {} golden commands", common::cases().len()))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("identity suite", identity_suite),
        ("three-route multiplier agreement", three_routes),
        ("planar h pi example", planar_h_example),
        ("planar Lie-Poisson case analysis", lie_poisson_cases),
        ("planar Lie-Poisson multiplier system", lie_poisson_system),
        ("modular field routes and divergence law", modular_routes),
        ("closure theorems", closure_theorems),
        ("Nambu multivector", nambu),
        ("so(3) battery", so3_battery),
        ("truncated cohomology sanity", cohomology_sanity),
        ("parser, printer and CLI", parser_printer),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
