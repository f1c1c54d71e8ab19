//! Acceptance run: one PASS/FAIL line per criterion, with wall time against
//! its budget. Exceeding a budget counts as a failure.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use hpt_core::algebra::{double_factorial, int, rat};
use hpt_core::ce::{
    check_cone_conditions, to_gaussian_poly, CeComplex, CeElement, LieAlgebraData, MatrixAction, PolynomialAction,
};
use hpt_core::chain::{check_d_squared, check_expectation_chain_map, ProbabilitySpace};
use hpt_core::cone::{build_algebraic_cone, degree_zero_basis, homology_ranks, ordinary_space, verify_cone};
use hpt_core::gaussian::{
    d_poly, expectation, gauss_d, lambda_n, moment, remark_experiment, y_n, y_n_floor_half, GaussElement, Homotopy,
};
use hpt_core::transport::{
    joint_cumulant, moments_from_cumulants, ordinary_collection, total_cumulant, transported_bracket, CoalgMorphism,
};
use hpt_core::{parse_poly, GradedPoly, Monomial, Rational};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Duration, Box<dyn FnMut() -> Outcome + 'a>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn p(s: &str) -> GradedPoly {
    parse_poly(s).expect("literal parses")
}

fn chain_axioms() -> Outcome {
    let g = ProbabilitySpace::homotopy_gaussian();
    let mut basis: Vec<GradedPoly> = (0..=20).map(GradedPoly::x_pow).collect();
    basis.extend((0..=20).map(|k| GradedPoly::monomial(Monomial::new(k, true, 0, false))));
    let dd = check_d_squared(&g, &basis);
    ensure(dd.passed(), || dd.to_string())?;
    let ed = check_expectation_chain_map(&g, 20);
    ensure(ed.passed(), || ed.to_string())?;
    for v in &basis {
        ensure(expectation(&d_poly(v)) == int(0), || format!("E(d({v})) != 0"))?;
    }
    Ok(format!("{} basis elements", basis.len()))
}

fn gaussian_moments() -> Outcome {
    let mut k = vec![int(0); 17];
    k[1] = int(1);
    for n in 1..=17u32 {
        let by_recurrence = moment(n);
        let by_pairs = moments_from_cumulants(&k, n as usize).map_err(|e| e.to_string())?;
        let expected = if n % 2 == 0 {
            Rational::from_integer(double_factorial(n as i64 - 1))
        } else {
            int(0)
        };
        ensure(by_recurrence == expected && by_pairs == expected, || {
            format!("n = {n}: recurrence {by_recurrence}, pairs {by_pairs}, expected {expected}")
        })?;
    }
    Ok("E(x^16) = 2027025 by both routes".into())
}

fn y_contract() -> Outcome {
    for n in 1..=15 {
        let y = y_n(n).map_err(|e| e.to_string())?;
        let dy = gauss_d(&GaussElement::try_from(&y).map_err(|e| e.to_string())?).to_poly();
        let target = &GradedPoly::x_pow(n) - &GradedPoly::constant(moment(n));
        ensure(dy == target, || format!("n = {n}: d y_n = {dy}"))?;
    }
    for n in [1, 3] {
        let dy = d_poly(&y_n_floor_half(n));
        let target = &GradedPoly::x_pow(n) - &GradedPoly::constant(moment(n));
        ensure(dy != target, || format!("printed bound unexpectedly satisfies n = {n}"))?;
    }
    Ok("n <= 15 hold; printed bound fails at n = 1, 3".into())
}

fn cumulant_transport(rng: &mut StdRng) -> Outcome {
    // (a)
    let composite = CoalgMorphism::phi().then(&CoalgMorphism::phi_inverse());
    let mut words = 0;
    for arity in 1..=6 {
        for _ in 0..30 {
            let word: Vec<Monomial> = (0..arity)
                .map(|_| {
                    Monomial::new(
                        rng.random_range(0..3),
                        rng.random(),
                        rng.random_range(0..2),
                        rng.random(),
                    )
                })
                .collect();
            let v = composite.component(&word);
            let expected = if arity == 1 {
                GradedPoly::monomial(word[0])
            } else {
                GradedPoly::zero()
            };
            ensure(v == expected, || format!("(phi^-1 phi) on {word:?} = {v}"))?;
            words += 1;
        }
    }
    // (b)
    let g = ProbabilitySpace::homotopy_gaussian();
    let k: Vec<Rational> = (1..=6)
        .map(|n| total_cumulant(&g, &vec![GradedPoly::x(); n]))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    ensure(k == vec![int(0), int(1), int(0), int(0), int(0), int(0)], || {
        format!("Gaussian cumulants {k:?}")
    })?;
    // (c)
    for s in 0..20 {
        let mut table = vec![int(1)];
        table.extend((0..8).map(|_| rat(rng.random_range(-9..=9), rng.random_range(1..=7))));
        let space = ProbabilitySpace::ordinary_from_moments(table.clone());
        let cumulants: Vec<Rational> = (1..=8)
            .map(|n| total_cumulant(&space, &vec![GradedPoly::x(); n]))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        for (n, expected) in table.iter().enumerate().skip(1) {
            let m = moments_from_cumulants(&cumulants, n).map_err(|e| e.to_string())?;
            ensure(m == *expected, || format!("sequence {s}, order {n}: {m} != {expected}"))?;
        }
    }
    Ok(format!("{words} random words, 20 moment sequences"))
}

fn transported_brackets() -> Outcome {
    let g = ProbabilitySpace::homotopy_gaussian();
    let l_eta_x = transported_bracket(&g, &[p("eta"), p("x")]).map_err(|e| e.to_string())?;
    let l_x_x = transported_bracket(&g, &[p("x"), p("x")]).map_err(|e| e.to_string())?;
    ensure(l_eta_x == GradedPoly::one(), || format!("l2(eta, x) = {l_eta_x}"))?;
    ensure(l_x_x.is_zero(), || format!("l2(x, x) = {l_x_x}"))?;
    Ok("l2(eta, x) = 1, l2(x, x) = 0".into())
}

fn explicit_homotopy() -> Outcome {
    let (a, b) = (p("x"), p("-x"));
    let big_d = ProbabilitySpace::homotopy_gaussian().homotopy_differential();
    for n in 1..=6 {
        let l = lambda_n(&a, &b, n).map_err(|e| e.to_string())?;
        ensure(big_d.apply(&l).is_zero(), || {
            format!("D Lambda_{n} = {}", big_d.apply(&l))
        })?;
    }
    let h = Homotopy::build(&a, &b, 6).map_err(|e| e.to_string())?;
    for (i, c) in h.components.iter().enumerate() {
        let (x_n, y_n) = if i == 0 {
            (a.clone(), b.clone())
        } else {
            (GradedPoly::zero(), GradedPoly::zero())
        };
        ensure(c.eval_t(&int(0)) == x_n && c.eval_t(&int(1)) == y_n, || {
            format!("H_{} endpoints", i + 1)
        })?;
    }
    let g = ProbabilitySpace::homotopy_gaussian();
    let (x, y) = (ordinary_collection(vec![a]), ordinary_collection(vec![b]));
    for n in 1..=6 {
        let kx = joint_cumulant(&g, &x, &vec![0; n]).map_err(|e| e.to_string())?;
        let ky = joint_cumulant(&g, &y, &vec![0; n]).map_err(|e| e.to_string())?;
        ensure(kx == ky, || format!("order {n}: {kx} vs {ky}"))?;
    }
    Ok("Lambda closed, endpoints and cumulant tables match through 6".into())
}

fn algebraic_cones(rng: &mut StdRng) -> Outcome {
    for s in 0..20 {
        let dim = rng.random_range(1..=5);
        let weights: Vec<i64> = (0..dim).map(|_| rng.random_range(1..=12)).collect();
        let total: i64 = weights.iter().sum();
        let probs: Vec<Rational> = weights.iter().map(|&w| rat(w, total)).collect();
        let v = ordinary_space(&probs).map_err(|e| e.to_string())?;
        let cone = build_algebraic_cone(&v).map_err(|e| e.to_string())?;
        let report = verify_cone(&cone, &degree_zero_basis(&v), 5).map_err(|e| e.to_string())?;
        ensure(report.passed() && report.checks.len() == 5, || {
            format!("space {s} {probs:?}:\n{report}")
        })?;
        let ranks = homology_ranks(&cone.space);
        let (h0, h1) = (
            ranks.get(&0).copied().unwrap_or(0),
            ranks.get(&-1).copied().unwrap_or(0),
        );
        ensure(h0 == 1 && h1 == 0, || format!("space {s}: homology ranks {ranks:?}"))?;
    }
    Ok("20 random spaces".into())
}

fn ce_complex() -> Outcome {
    // (a)
    let abelian = LieAlgebraData::abelian(1).map_err(|e| e.to_string())?;
    let translation = PolynomialAction::gaussian_translation(1);
    let ce = CeComplex::new(&abelian, &translation).map_err(|e| e.to_string())?;
    for k in 0..=12 {
        for mask in [0u32, 1] {
            let x = CeElement::single(mask, GradedPoly::x_pow(k));
            let (lhs, rhs) = (to_gaussian_poly(&ce.d(&x)), d_poly(&to_gaussian_poly(&x)));
            ensure(lhs == rhs, || format!("degree {k}, mask {mask}: {lhs} vs {rhs}"))?;
        }
    }
    // (b)
    let so3 = LieAlgebraData::so3();
    let standard = MatrixAction::so3_standard(false);
    let dd = CeComplex::new(&so3, &standard)
        .map_err(|e| e.to_string())?
        .check_d_squared(0);
    ensure(dd.passed(), || dd.to_string())?;
    // (c)
    let c = check_cone_conditions(&abelian, &translation, 8).map_err(|e| e.to_string())?;
    ensure(c.is_algebraic_cone, || c.report.to_string())?;
    let zero = MatrixAction::zero_action(1, 2);
    let c = check_cone_conditions(&abelian, &zero, 4).map_err(|e| e.to_string())?;
    ensure(!c.is_algebraic_cone, || "zero action on Q^2 accepted".into())?;
    let two = LieAlgebraData::abelian(2).map_err(|e| e.to_string())?;
    let doubled = PolynomialAction::gaussian_translation(2);
    let c = check_cone_conditions(&two, &doubled, 6).map_err(|e| e.to_string())?;
    ensure(!c.is_algebraic_cone, || "redundant generator accepted".into())?;
    Ok("abelian recovery, so(3) d^2 = 0, Gaussian accepted, 2 negatives rejected".into())
}

fn remark() -> Outcome {
    let r = remark_experiment(6).map_err(|e| e.to_string())?;
    ensure(r.rows.len() == 27, || format!("{} rows", r.rows.len()))?;
    ensure(r.consistent && r.rows.iter().all(|row| row.consistent), || {
        "entries disagree between routes".into()
    })?;
    let listed: Vec<&String> = r.rows.iter().filter(|row| !row.agree).map(|row| &row.word).collect();
    ensure(listed.len() == r.distinguishing_words.len(), || {
        "distinguishing words out of sync".into()
    })?;
    serde_json::to_string(&r).map_err(|e| e.to_string())?;
    Ok(format!("27 words, {} distinguishing", r.distinguishing_words.len()))
}

fn cli_contract() -> Outcome {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let run = |cmd: &str, file: &str| -> Result<i32, String> {
        let out = Command::new(env!("CARGO_BIN_EXE_hpt"))
            .args([cmd, "--input", dir.join(file).to_str().unwrap()])
            .output()
            .map_err(|e| e.to_string())?;
        out.status.code().ok_or_else(|| format!("{cmd} {file}: killed"))
    };
    let cases = [
        ("moments", "moments.json", "negative/moments_over_cap.json"),
        ("cumulants", "cumulants.json", "negative/cumulants_not_closed.json"),
        ("homotopy", "homotopy.json", "negative/homotopy_mismatch.json"),
        ("ce", "ce_gaussian.json", "negative/ce_redundant.json"),
        ("cone", "cone_two_point.json", "negative/cone_bad_unit.json"),
        ("remark", "remark.json", "negative/remark_over_cap.json"),
    ];
    for (cmd, good, bad) in cases {
        let c = run(cmd, good)?;
        ensure(c == 0, || format!("{cmd} {good}: exit {c}"))?;
        let c = run(cmd, bad)?;
        ensure(c == 1 || c == 2, || format!("{cmd} {bad}: exit {c}"))?;
    }
    Ok("6 commands, 6 negative variants".into())
}

fn main() -> ExitCode {
    let mut rng = StdRng::seed_from_u64(0x5eed_cafe);
    let s = Duration::from_secs;
    let mut cone_rng = StdRng::seed_from_u64(0x00c0_ffee);
    let mut criteria: Vec<Criterion> = vec![
        ("chain axioms", s(1), Box::new(chain_axioms)),
        ("Gaussian moments", s(1), Box::new(gaussian_moments)),
        ("primitive y_n contract", s(1), Box::new(y_contract)),
        ("cumulant transport", s(5), Box::new(|| cumulant_transport(&mut rng))),
        ("transported brackets", s(1), Box::new(transported_brackets)),
        ("explicit homotopy", s(10), Box::new(explicit_homotopy)),
        (
            "algebraic cone",
            s(10),
            Box::new(move || algebraic_cones(&mut cone_rng)),
        ),
        ("Chevalley-Eilenberg complex", s(5), Box::new(ce_complex)),
        ("remark experiment", s(5), Box::new(remark)),
        ("CLI contract", s(5), Box::new(cli_contract)),
    ];

    let mut failures = 0;
    for (i, (name, budget, run)) in criteria.iter_mut().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (verdict, detail) = match outcome {
            Ok(_) if elapsed > *budget => ("FAIL", "over budget".to_string()),
            Ok(msg) => ("PASS", msg),
            Err(msg) => ("FAIL", msg),
        };
        if verdict == "FAIL" {
            failures += 1;
        }
        println!(
            "{verdict} {:>2}. {name} ({:.3}s / {}s): {detail}",
            i + 1,
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
