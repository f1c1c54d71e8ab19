use std::fmt::Write as _;
use std::path::Path;

use serde::Deserialize;
use serde_json::{json, Value};

use hpt_core::ce::{self, Action, CeComplex, CeInputJson, LieModule};
use hpt_core::chain::ProbabilitySpace;
use hpt_core::cone::{self, TruncatedSpace, TruncatedSpaceJson};
use hpt_core::gaussian::{self, Homotopy};
use hpt_core::transport::{self, generator_words};
use hpt_core::{parse_poly, Error, GradedPoly, Report};

use crate::input::{load_json, resolve, InputError};

pub const MAX_MOMENT_ORDER: usize = 40;
pub const MAX_VARIABLES: usize = 6;
pub const MAX_TRUNCATION: usize = 30;
/// Cumulants are also recomputed through `phi^{-1} E phi` up to this order.
pub const TRANSPORT_CROSS_CHECK_ORDER: usize = 4;

/// Result of a command: human text, machine JSON, and whether every check
/// passed.
pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub passed: bool,
}

fn optional_input<T: for<'de> Deserialize<'de> + Default>(path: Option<&Path>) -> Result<T, InputError> {
    match path {
        Some(p) => load_json(p),
        None => Ok(T::default()),
    }
}

fn parse_expr(s: &str) -> Result<GradedPoly, InputError> {
    parse_poly(s).map_err(|e| InputError(format!("cannot parse {s:?}: {e}")))
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MomentsInput {
    pub max_order: Option<usize>,
}

pub fn moments(max_order: Option<usize>, input: Option<&Path>) -> Result<Outcome, InputError> {
    let file: MomentsInput = optional_input(input)?;
    let n_max = resolve(max_order, file.max_order, 10, 0, MAX_MOMENT_ORDER, "moment order")?;
    let mut report = Report::new(format!("Gaussian moments through order {n_max}"));
    let mut text = String::from("n\tE(x^n)\n");
    let mut rows = Vec::new();
    // k_2 = 1 and nothing else: moments count pair partitions
    let mut cumulants = vec![hpt_core::algebra::int(0); n_max.max(2)];
    cumulants[1] = hpt_core::algebra::int(1);
    let mut mismatch = None;
    for n in 1..=n_max {
        let m = gaussian::moment(n as u32);
        writeln!(text, "{n}\t{m}").unwrap();
        let from_pairs = transport::moments_from_cumulants(&cumulants, n)?;
        if from_pairs != m && mismatch.is_none() {
            mismatch = Some(format!("n = {n}: recurrence {m}, pair partitions {from_pairs}"));
        }
        rows.push(json!({"n": n, "moment": m.to_string()}));
    }
    match mismatch {
        Some(w) => report.fail("recurrence agrees with pair-partition count", w),
        None if n_max > 0 => report.pass("recurrence agrees with pair-partition count"),
        None => {}
    }
    writeln!(text, "{report}").unwrap();
    Ok(Outcome {
        passed: report.passed(),
        json: json!({"command": "moments", "max_order": n_max, "rows": rows, "report": report}),
        text,
    })
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CumulantsInput {
    #[serde(default)]
    pub variables: Vec<String>,
    pub max_order: Option<usize>,
}

pub fn cumulants(exprs: &[String], max_order: Option<usize>, input: Option<&Path>) -> Result<Outcome, InputError> {
    let file: CumulantsInput = optional_input(input)?;
    let sources = if exprs.is_empty() {
        file.variables
    } else {
        exprs.to_vec()
    };
    if sources.is_empty() || sources.len() > MAX_VARIABLES {
        return Err(InputError(format!(
            "need between 1 and {MAX_VARIABLES} variables, got {}",
            sources.len()
        )));
    }
    let order = resolve(
        max_order,
        file.max_order,
        4,
        1,
        transport::MAX_PARTITION_SIZE,
        "cumulant order",
    )?;
    let space = ProbabilitySpace::homotopy_gaussian();
    let mut vars = Vec::new();
    for (i, s) in sources.iter().enumerate() {
        let v = parse_expr(s)?;
        if !v.is_in_v() {
            return Err(InputError(format!("variable {} = {v} is not in C[x, eta]", i + 1)));
        }
        let l1 = transport::transported_bracket(&space, std::slice::from_ref(&v))?;
        if !l1.is_zero() {
            return Err(InputError(
                Error::NotClosed {
                    index: i + 1,
                    witness: l1.to_string(),
                }
                .to_string(),
            ));
        }
        if v.terms().any(|(m, _)| m.degree() != 0) {
            return Err(InputError(format!("variable {} = {v} is not of degree 0", i + 1)));
        }
        vars.push(v);
    }

    let mut report = Report::new(format!(
        "joint cumulants of {} variable(s) through order {order}",
        vars.len()
    ));
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut mismatch = None;
    for word in generator_words(vars.len(), order) {
        let args: Vec<GradedPoly> = word.iter().map(|&i| vars[i].clone()).collect();
        let k = transport::total_cumulant(&space, &args)?;
        if word.len() <= TRANSPORT_CROSS_CHECK_ORDER && mismatch.is_none() {
            let via = transport::total_cumulant_transported(&space, &args)?;
            if via != k {
                mismatch = Some(format!("word {word:?}: partition formula {k}, transport {via}"));
            }
        }
        let names: Vec<&str> = word.iter().map(|&i| sources[i].as_str()).collect();
        writeln!(text, "k({}) = {k}", names.join(", ")).unwrap();
        rows.push(json!({"word": word, "arguments": names, "cumulant": k.to_string()}));
    }
    match mismatch {
        Some(w) => report.fail("partition formula agrees with phi^-1 E phi", w),
        None => report.pass("partition formula agrees with phi^-1 E phi"),
    }
    report.note(format!(
        "cross-checked through the symmetric coalgebra up to order {}",
        order.min(TRANSPORT_CROSS_CHECK_ORDER)
    ));
    writeln!(text, "{report}").unwrap();
    let variables: Vec<String> = vars.iter().map(GradedPoly::to_string).collect();
    Ok(Outcome {
        passed: report.passed(),
        json: json!({"command": "cumulants", "variables": variables, "max_order": order, "cumulants": rows, "report": report}),
        text,
    })
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomotopyInput {
    pub p: Option<String>,
    pub q: Option<String>,
    pub max_order: Option<usize>,
}

pub fn homotopy(
    p: Option<&str>,
    q: Option<&str>,
    max_order: Option<usize>,
    input: Option<&Path>,
) -> Result<Outcome, InputError> {
    let file: HomotopyInput = optional_input(input)?;
    let p_src = p
        .map(str::to_string)
        .or(file.p)
        .ok_or_else(|| InputError("missing p".into()))?;
    let q_src = q
        .map(str::to_string)
        .or(file.q)
        .ok_or_else(|| InputError("missing q".into()))?;
    let order = resolve(
        max_order,
        file.max_order,
        4,
        1,
        gaussian::MAX_HOMOTOPY_ORDER,
        "homotopy order",
    )?;
    let (pp, qq) = (parse_expr(&p_src)?, parse_expr(&q_src)?);
    for (name, v) in [("p", &pp), ("q", &qq)] {
        if !v.is_x_only() {
            return Err(InputError(format!("{name} = {v} is not a polynomial in x")));
        }
    }

    let report = gaussian::verify_homotopy(&pp, &qq, order)?;
    let mut text = String::new();
    let mut lambdas = Vec::new();
    let mut components = Vec::new();
    match Homotopy::build(&pp, &qq, order) {
        Ok(h) => {
            for (i, (l, c)) in h.lambdas.iter().zip(&h.components).enumerate() {
                writeln!(text, "Lambda_{} = {l}", i + 1).unwrap();
                writeln!(text, "H_{} = {c}", i + 1).unwrap();
                lambdas.push(l.to_string());
                components.push(c.to_string());
            }
        }
        Err(Error::CumulantMismatch { order, left, right }) => {
            writeln!(text, "refused: cumulants differ at order {order} ({left} vs {right})").unwrap();
        }
        Err(e) => return Err(e.into()),
    }
    writeln!(text, "{report}").unwrap();
    Ok(Outcome {
        passed: report.passed(),
        json: json!({
            "command": "homotopy",
            "p": pp.to_string(),
            "q": qq.to_string(),
            "max_order": order,
            "lambda": lambdas,
            "h": components,
            "report": report,
        }),
        text,
    })
}

pub fn ce(input: &Path, truncation: Option<usize>) -> Result<Outcome, InputError> {
    let data: CeInputJson = load_json(input)?;
    let trunc = resolve(truncation, None, 8, 0, MAX_TRUNCATION, "truncation")?;
    let lie = data.lie()?;
    match data.action()? {
        Action::Polynomial(a) => ce_with(&lie, &a, trunc),
        Action::Matrix(a) => ce_with(&lie, &a, trunc),
    }
}

fn ce_with<M: LieModule>(lie: &ce::LieAlgebraData, module: &M, trunc: usize) -> Result<Outcome, InputError> {
    let conditions = ce::check_cone_conditions(lie, module, trunc)?;
    let (h0, reps) = ce::ce_h0(lie, module, trunc)?;
    let complex = CeComplex::new(lie, module)?;
    let reps: Vec<String> = reps.iter().map(|r| module.describe(r)).collect();
    let mut text = String::new();
    writeln!(text, "truncation D = {trunc}; degree -k uses module level D + (n - k)").unwrap();
    for (deg, dim) in &conditions.cohomology {
        writeln!(text, "H^{deg} = {dim}").unwrap();
    }
    writeln!(text, "H^0 representatives: {}", reps.join(", ")).unwrap();
    let verdict = if conditions.is_algebraic_cone { "yes" } else { "no" };
    writeln!(text, "algebraic cone: {verdict}").unwrap();
    writeln!(text, "{}", conditions.report).unwrap();
    let cohomology: serde_json::Map<String, Value> = conditions
        .cohomology
        .iter()
        .map(|(d, r)| (d.to_string(), json!(r)))
        .collect();
    let caps: Vec<usize> = (0..=lie.dim()).map(|k| complex.cap(k, trunc)).collect();
    Ok(Outcome {
        passed: conditions.report.passed(),
        json: json!({
            "command": "ce",
            "dim": lie.dim(),
            "truncation": trunc,
            "module_levels": caps,
            "cohomology": cohomology,
            "h0": {"dim": h0, "representatives": reps},
            "algebraic_cone": conditions.is_algebraic_cone,
            "report": conditions.report,
        }),
        text,
    })
}

pub fn cone(input: &Path, max_order: Option<usize>) -> Result<Outcome, InputError> {
    let data: TruncatedSpaceJson = load_json(input)?;
    let order = resolve(
        max_order,
        None,
        cone::MAX_CONE_CUMULANT_ORDER,
        1,
        cone::MAX_CONE_CUMULANT_ORDER,
        "cumulant order",
    )?;
    let space = TruncatedSpace::try_from(&data)?;
    let result = cone::build_algebraic_cone(&space)?;
    let elements = cone::degree_zero_basis(&space);
    let report = cone::verify_cone(&result, &elements, order)?;
    let (h, b, b_hat) = result.decomposition.dims();
    let k: Vec<Vec<String>> = result
        .k
        .iter()
        .map(|v| v.iter().map(ToString::to_string).collect())
        .collect();
    let mut text = String::new();
    writeln!(
        text,
        "dim V = {}, dim H = {h}, dim B = {b}, dim B^ = {b_hat}",
        space.dim()
    )
    .unwrap();
    for (i, v) in k.iter().enumerate() {
        writeln!(text, "k{} = ({})", i + 1, v.join(", ")).unwrap();
    }
    writeln!(text, "dim CV = {}", result.space.dim()).unwrap();
    writeln!(text, "{report}").unwrap();
    Ok(Outcome {
        passed: report.passed(),
        json: json!({
            "command": "cone",
            "decomposition": {"h": h, "b": b, "b_hat": b_hat, "b_hat_indices": result.decomposition.b_hat},
            "k": k,
            "cone": result.space.to_json(),
            "report": report,
        }),
        text,
    })
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RemarkInput {
    pub max_order: Option<usize>,
}

pub fn remark(max_order: Option<usize>, input: Option<&Path>) -> Result<Outcome, InputError> {
    let file: RemarkInput = optional_input(input)?;
    let order = resolve(
        max_order,
        file.max_order,
        6,
        1,
        transport::MAX_HRV_ARITY,
        "remark order",
    )?;
    let r = gaussian::remark_experiment(order)?;
    let mut report = Report::new(format!("joint cumulants of (x, 1) and (-x, 1) through order {order}"));
    let inconsistent: Vec<&str> = r
        .rows
        .iter()
        .filter(|row| !row.consistent)
        .map(|row| row.word.as_str())
        .collect();
    if inconsistent.is_empty() {
        report.pass("partition formula agrees with K o X on every word");
    } else {
        report.fail(
            "partition formula agrees with K o X on every word",
            inconsistent.join("; "),
        );
    }
    for n in &r.notes {
        report.note(n.clone());
    }
    let mut text = String::from("word\tX\tY\tagree\n");
    for row in &r.rows {
        writeln!(
            text,
            "{}\t{}\t{}\t{}",
            row.word,
            row.x_bar,
            row.y_bar,
            if row.agree { "yes" } else { "no" }
        )
        .unwrap();
    }
    if r.distinguishing_words.is_empty() {
        text.push_str("no word distinguishes the two collections\n");
    } else {
        writeln!(text, "distinguishing words: {}", r.distinguishing_words.join(", ")).unwrap();
    }
    writeln!(text, "{report}").unwrap();
    Ok(Outcome {
        passed: report.passed(),
        json: json!({"command": "remark", "experiment": r, "report": report}),
        text,
    })
}
