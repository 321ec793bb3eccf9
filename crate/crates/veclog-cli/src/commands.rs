//! One handler per subcommand. Each produces both the JSON result payload
//! and the human rendering, so the two outputs can never drift apart.

use crate::output::{fmt_scalar, CliError, DocumentParts, Outcome, EXIT_EVAL};
use serde_json::{json, Value};
use std::fmt::Write as _;
use veclog::analysis::{hierarchy_chain, hierarchy_check, sensitivity_report};
use veclog::derivative::{cross_diff, diff, diff_numeric, second_diff_numeric};
use veclog::eval::{
    eval_scalar, is_tautology_capped, scan_grid, truth_table_capped, Assignment, EvalError,
};
use veclog::formula::{is_valid_identifier, Formula};
use veclog::integral::{
    default_template_library, general_integral, particular_integral_search, verify_integral,
    IntegralError, IntegralVersion,
};
use veclog::parser::parse;

pub struct Settings {
    pub tol: f64,
    pub grid_step: f64,
    pub seed: Option<u64>,
    pub max_vars: usize,
}

impl Settings {
    pub fn echo(&self) -> Value {
        json!({
            "grid_step": fmt_scalar(self.grid_step),
            "max_vars": self.max_vars,
            "seed": self.seed,
            "tol": format!("{:e}", self.tol),
        })
    }
}

fn formula_json(f: &Formula) -> Value {
    json!({
        "infix": f.render_infix(),
        "polish": f.render_polish(),
    })
}

fn parse_formula(text: &str) -> Result<Formula, CliError> {
    parse(text).map_err(CliError::from_parse)
}

fn parse_assignments(args: &[String]) -> Result<Assignment, CliError> {
    let mut assignment = Assignment::new();
    for arg in args {
        let (name, value) = arg
            .split_once('=')
            .ok_or_else(|| CliError::usage(format!("expected NAME=WEIGHT, got '{arg}'")))?;
        if !is_valid_identifier(name) {
            return Err(CliError::usage(format!("invalid variable name '{name}'")));
        }
        let weight = match value {
            "true" => 1.0,
            "false" => 0.0,
            other => other
                .parse::<f64>()
                .map_err(|_| CliError::usage(format!("invalid weight '{other}' for '{name}'")))?,
        };
        assignment
            .set(name, weight)
            .map_err(CliError::from_eval)?;
    }
    Ok(assignment)
}

fn assignment_json(a: &Assignment) -> Value {
    let mut map = serde_json::Map::new();
    for (name, weight) in a.iter() {
        map.insert(name.to_string(), Value::String(fmt_scalar(weight)));
    }
    Value::Object(map)
}

fn assignment_text(a: &Assignment) -> String {
    a.iter()
        .map(|(name, weight)| format!("{name}={}", fmt_scalar(weight)))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn cmd_parse(parts: &DocumentParts, text: &str) -> Outcome {
    let f = match parse_formula(text) {
        Ok(f) => f,
        Err(err) => return parts.error(err),
    };
    let variables: Vec<String> = f.variables().into_vec();
    let result = json!({
        "formula": formula_json(&f),
        "variables": variables,
    });
    let text = format!(
        "formula:   {}\npolish:    {}\nvariables: {}",
        f.render_infix(),
        f.render_polish(),
        if variables.is_empty() {
            "(none)".to_string()
        } else {
            variables.join(" ")
        }
    );
    parts.ok(result, text)
}

pub fn cmd_table(parts: &DocumentParts, settings: &Settings, text: &str) -> Outcome {
    let f = match parse_formula(text) {
        Ok(f) => f,
        Err(err) => return parts.error(err),
    };
    let table = match truth_table_capped(&f, settings.max_vars) {
        Ok(t) => t,
        Err(err) => return parts.error(CliError::from_eval(err)),
    };
    let mut rows = Vec::new();
    let mut body = String::new();
    let names = table.variables().names();
    let header: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let _ = writeln!(body, "{} | {}", header.join(" "), f.render_infix());
    for (row, output) in table.outputs().iter().enumerate() {
        let inputs = table.row_inputs(row);
        let mut cells: Vec<Value> = inputs.iter().map(|b| json!(u8::from(*b))).collect();
        cells.push(json!(u8::from(*output)));
        rows.push(Value::Array(cells));
        let shown: Vec<String> = inputs
            .iter()
            .zip(names.iter())
            .map(|(b, name)| format!("{:>width$}", u8::from(*b), width = name.len()))
            .collect();
        let _ = writeln!(body, "{} | {}", shown.join(" "), u8::from(*output));
    }
    let result = json!({
        "contradiction": table.is_all_false(),
        "formula": formula_json(&f),
        "rows": rows,
        "tautology": table.is_all_true(),
        "variables": header,
    });
    let _ = write!(
        body,
        "tautology: {}   contradiction: {}",
        if table.is_all_true() { "yes" } else { "no" },
        if table.is_all_false() { "yes" } else { "no" }
    );
    parts.ok(result, body)
}

pub fn cmd_eval(parts: &DocumentParts, text: &str, assignments: &[String]) -> Outcome {
    let f = match parse_formula(text) {
        Ok(f) => f,
        Err(err) => return parts.error(err),
    };
    let assignment = match parse_assignments(assignments) {
        Ok(a) => a,
        Err(err) => return parts.error(err),
    };
    let scalar = match eval_scalar(&f, &assignment) {
        Ok(s) => s,
        Err(err) => return parts.error(CliError::from_eval(err)),
    };
    let result = json!({
        "assignment": assignment_json(&assignment),
        "formula": formula_json(&f),
        "scalar": fmt_scalar(scalar),
    });
    let text = format!(
        "formula:    {}\nassignment: {}\nscalar:     {}",
        f.render_infix(),
        assignment_text(&assignment),
        fmt_scalar(scalar)
    );
    parts.ok(result, text)
}

fn derivative_json(raw: &Formula) -> Value {
    let folded = veclog::derivative::constant_fold(raw);
    json!({
        "infix": folded.render_infix(),
        "polish": folded.render_polish(),
        "raw": raw.render_infix(),
    })
}

pub fn cmd_diff(
    parts: &DocumentParts,
    text: &str,
    variable: &str,
    order: u8,
    cross: Option<&str>,
    assignments: &[String],
) -> Outcome {
    let f = match parse_formula(text) {
        Ok(f) => f,
        Err(err) => return parts.error(err),
    };
    if !is_valid_identifier(variable) {
        return parts.error(CliError::usage(format!("invalid variable name '{variable}'")));
    }
    if cross.is_some() && order != 1 {
        return parts.error(CliError::usage("--cross cannot be combined with --order"));
    }
    if order != 1 && order != 2 {
        return parts.error(CliError::usage(format!("order must be 1 or 2, got {order}")));
    }
    let assignment = if assignments.is_empty() {
        None
    } else {
        match parse_assignments(assignments) {
            Ok(a) => Some(a),
            Err(err) => return parts.error(err),
        }
    };

    if let Some(second) = cross {
        if !is_valid_identifier(second) {
            return parts.error(CliError::usage(format!("invalid variable name '{second}'")));
        }
        let mixed = match cross_diff(&f, variable, second) {
            Ok(c) => c,
            Err(err) => return parts.error(CliError::evaluation(err.to_string())),
        };
        let mut numeric = Value::Null;
        let mut numeric_text = String::new();
        if let Some(a) = &assignment {
            match veclog::derivative::cross_diff_numeric(&f, variable, second, a) {
                Ok(v) => {
                    numeric = json!({
                        "assignment": assignment_json(a),
                        "weight": fmt_scalar(v.weight()),
                    });
                    numeric_text = format!("\nnumeric weight: {}", fmt_scalar(v.weight()));
                }
                Err(err) => return parts.error(CliError::evaluation(err.to_string())),
            }
        }
        let folded = mixed.folded();
        let result = json!({
            "derivative": derivative_json(&mixed.formula),
            "formula": formula_json(&f),
            "numeric": numeric,
            "variables": [mixed.first, mixed.second],
        });
        let text = format!(
            "formula:          {}\ncross derivative: {}   (d²/d{} d{}){}",
            f.render_infix(),
            folded.render_infix(),
            mixed.first,
            mixed.second,
            numeric_text
        );
        return parts.ok(result, text);
    }

    let first = diff(&f, variable);
    let symbolic = if order == 2 {
        diff(&first.formula, variable).formula
    } else {
        first.formula.clone()
    };
    let mut numeric = Value::Null;
    let mut numeric_text = String::new();
    if let Some(a) = &assignment {
        let value = if order == 2 {
            second_diff_numeric(&f, variable, a)
        } else {
            diff_numeric(&f, variable, a)
        };
        match value {
            Ok(v) => {
                numeric = json!({
                    "assignment": assignment_json(a),
                    "weight": fmt_scalar(v.weight()),
                });
                numeric_text = format!("\nnumeric weight: {}", fmt_scalar(v.weight()));
            }
            Err(err) => return parts.error(CliError::from_eval(err)),
        }
    }
    let folded = veclog::derivative::constant_fold(&symbolic);
    let result = json!({
        "derivative": derivative_json(&symbolic),
        "formula": formula_json(&f),
        "numeric": numeric,
        "order": order,
        "variable": variable,
    });
    let label = if order == 2 { "second derivative" } else { "derivative" };
    let text = format!(
        "formula:    {}\n{label}: {}   (d/d{variable}, order {order}){numeric_text}",
        f.render_infix(),
        folded.render_infix(),
    );
    parts.ok(result, text)
}

// Numeric spot-check of an integral: largest deviation between the numeric
// derivative of the candidate and the integrand on the probabilistic grid.
fn integral_grid_error(candidate: &Formula, f: &Formula, tau: &str, step: f64) -> Option<f64> {
    let vars: Vec<String> = candidate
        .variables()
        .iter()
        .filter(|v| v.as_str() != tau)
        .cloned()
        .collect();
    if vars.len() > 6 {
        return None;
    }
    let mut worst = 0.0f64;
    scan_grid(&vars, step, &mut |a| {
        let numeric = diff_numeric(candidate, tau, a).expect("total assignment");
        let expected = eval_scalar(f, a).expect("total assignment");
        worst = worst.max((numeric.weight() - expected).abs());
        true
    });
    Some(worst)
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_integrate(
    parts: &DocumentParts,
    settings: &Settings,
    text: &str,
    tau: &str,
    general: Option<u8>,
    particular: bool,
    max_results: usize,
) -> Outcome {
    let f = match parse_formula(text) {
        Ok(f) => f,
        Err(err) => return parts.error(err),
    };
    if !is_valid_identifier(tau) {
        return parts.error(CliError::usage(format!("invalid variable name '{tau}'")));
    }
    if general.is_some() && particular {
        return parts.error(CliError::usage("--general and --particular are mutually exclusive"));
    }
    if f.variables().len() > settings.max_vars {
        return parts.error(CliError::from_eval(EvalError::TooManyVariables {
            count: f.variables().len(),
            cap: settings.max_vars,
        }));
    }

    if particular {
        let library = default_template_library();
        let found = match particular_integral_search(&f, tau, &library, max_results) {
            Ok(found) => found,
            Err(err) => return parts.error(integral_error(err)),
        };
        let mut items = Vec::new();
        let mut body = format!("formula: {}\nintegration variable: {tau}\n", f.render_infix());
        for pi in &found {
            let verified = verify_integral(&pi.result, &f, tau);
            let choices: Vec<Value> = pi
                .choices
                .iter()
                .map(|c| {
                    json!({
                        "literal": c.literal.render_infix(),
                        "mode": c.mode.to_string(),
                        "position": c.position,
                        "template": c.template,
                    })
                })
                .collect();
            items.push(json!({
                "choices": choices,
                "condition": pi.condition.to_string(),
                "integral": formula_json(&pi.result),
                "verified": verified,
            }));
            let _ = writeln!(
                body,
                "  [{}] {}   ({})",
                if verified { "ok" } else { "UNVERIFIED" },
                pi.result.render_infix(),
                pi.choices
                    .iter()
                    .map(|c| format!("{} @ {} ({})", c.template, c.literal.render_infix(), c.mode))
                    .collect::<Vec<_>>()
                    .join(", ")
            );
        }
        let _ = write!(body, "found: {}", found.len());
        let all_verified = items.iter().all(|i| i["verified"] == json!(true));
        let result = json!({
            "count": found.len(),
            "formula": formula_json(&f),
            "integrals": items,
            "mode": "particular",
            "tau": tau,
        });
        let exit = if all_verified { 0 } else { EXIT_EVAL };
        return parts.ok_with_exit(result, body, exit);
    }

    let version = match IntegralVersion::from_number(general.unwrap_or(1)) {
        Some(v) => v,
        None => {
            return parts.error(CliError::usage(format!(
                "general version must be 1-4, got {}",
                general.unwrap_or(1)
            )))
        }
    };
    let integral = match general_integral(&f, tau, version) {
        Ok(y) => y,
        Err(err) => return parts.error(integral_error(err)),
    };
    let verified = verify_integral(&integral, &f, tau);
    let grid_error = integral_grid_error(&integral, &f, tau, settings.grid_step);
    let numeric_ok = grid_error.map(|e| e <= settings.tol);
    let result = json!({
        "formula": formula_json(&f),
        "integral": formula_json(&integral),
        "max_numeric_error": grid_error.map(fmt_scalar),
        "mode": "general",
        "notation": version.notation(),
        "numeric_ok": numeric_ok,
        "tau": tau,
        "verified": verified,
        "version": version.number(),
    });
    let text = format!(
        "formula:  {}\nintegral: {}   ({})\nverified: {}{}",
        f.render_infix(),
        integral.render_infix(),
        version,
        if verified { "yes" } else { "NO" },
        match grid_error {
            Some(e) => format!("   max numeric error: {}", fmt_scalar(e)),
            None => String::new(),
        }
    );
    let ok = verified && numeric_ok.unwrap_or(true);
    parts.ok_with_exit(result, text, if ok { 0 } else { EXIT_EVAL })
}

fn integral_error(err: IntegralError) -> CliError {
    match err {
        IntegralError::TauNotFresh(_) => CliError::evaluation(err.to_string()),
        _ => CliError::usage(err.to_string()),
    }
}

pub fn cmd_hierarchy(parts: &DocumentParts) -> Outcome {
    let report = hierarchy_check();
    let chain = hierarchy_chain();
    let steps: Vec<Value> = report
        .steps
        .iter()
        .map(|s| {
            json!({
                "expected": s.expected.render_infix(),
                "from": s.from.render_infix(),
                "holds": s.holds,
                "negated_derivative": s.negated_derivative.render_infix(),
                "variable": s.variable,
            })
        })
        .collect();
    let all_hold = report.all_hold() && chain.holds;
    let result = json!({
        "all_hold": all_hold,
        "chained": {
            "holds": chain.holds,
            "stages": chain.stages.iter().map(|s| s.render_infix()).collect::<Vec<_>>(),
        },
        "steps": steps,
    });
    let mut text = String::from("tautology hierarchy: HS -> MP -> EM -> 1\n");
    for step in &report.steps {
        let _ = writeln!(
            text,
            "  [{}] !d/d{} {}  ==  {}",
            if step.holds { "ok" } else { "FAIL" },
            step.variable,
            step.from.render_infix(),
            step.expected.render_infix()
        );
    }
    let _ = writeln!(
        text,
        "  [{}] chained outputs reach 1",
        if chain.holds { "ok" } else { "FAIL" }
    );
    let _ = write!(text, "all hold: {}", if all_hold { "yes" } else { "NO" });
    parts.ok_with_exit(result, text, if all_hold { 0 } else { EXIT_EVAL })
}

// Extremes of a formula's scalar projection over the probabilistic grid on
// its own variables; None when the scan would be too large.
fn probabilistic_range(f: &Formula, step: f64) -> Option<(f64, f64)> {
    let vars = f.variables();
    if vars.len() > 6 {
        return None;
    }
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    scan_grid(vars.names(), step, &mut |a| {
        let value = eval_scalar(f, a).expect("total assignment");
        lo = lo.min(value);
        hi = hi.max(value);
        true
    });
    Some((lo, hi))
}

pub fn cmd_sensitivity(parts: &DocumentParts, settings: &Settings, text: &str) -> Outcome {
    let f = match parse_formula(text) {
        Ok(f) => f,
        Err(err) => return parts.error(err),
    };
    let report = match sensitivity_report(&f) {
        Ok(r) => r,
        Err(err) => return parts.error(CliError::from_eval(err)),
    };
    let mut entries = Vec::new();
    let mut body = format!("formula: {}\n", f.render_infix());
    for entry in &report.entries {
        let prob = probabilistic_range(&entry.derivative, settings.grid_step);
        entries.push(json!({
            "classification": entry.classification.to_string(),
            "derivative": entry.derivative.render_infix(),
            "max": fmt_scalar(entry.max_projection),
            "min": fmt_scalar(entry.min_projection),
            "prob_max": prob.map(|(_, hi)| fmt_scalar(hi)),
            "prob_min": prob.map(|(lo, _)| fmt_scalar(lo)),
            "variable": entry.variable,
        }));
        let _ = writeln!(
            body,
            "  {}: {:<12} derivative: {}   binary range [{}, {}]{}",
            entry.variable,
            entry.classification.to_string(),
            entry.derivative.render_infix(),
            fmt_scalar(entry.min_projection),
            fmt_scalar(entry.max_projection),
            match prob {
                Some((lo, hi)) => format!("   prob range [{}, {}]", fmt_scalar(lo), fmt_scalar(hi)),
                None => String::new(),
            }
        );
    }
    let collapse = report.collapse.as_ref().map(|c| c.render_infix());
    let result = json!({
        "collapse": collapse,
        "entries": entries,
        "formula": formula_json(&f),
    });
    let _ = write!(
        body,
        "collapse: {}",
        collapse.as_deref().unwrap_or("(none)")
    );
    parts.ok(result, body)
}

pub fn cmd_tautology(parts: &DocumentParts, settings: &Settings, text: &str) -> Outcome {
    let f = match parse_formula(text) {
        Ok(f) => f,
        Err(err) => return parts.error(err),
    };
    let verdict = match is_tautology_capped(&f, settings.max_vars) {
        Ok(v) => v,
        Err(err) => return parts.error(CliError::from_eval(err)),
    };
    let result = json!({
        "formula": formula_json(&f),
        "tautology": verdict,
    });
    let text = format!(
        "formula:   {}\ntautology: {}",
        f.render_infix(),
        if verdict { "yes" } else { "no" }
    );
    parts.ok(result, text)
}
