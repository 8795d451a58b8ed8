use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use triality::covariants::{self, FormPoly};
use triality::curve::{self, CurvePolyAB};
use triality::enumerator;
use triality::invariant::{Expansions, Invariant};
use triality::series::modular;
use triality::verify::{run_suites, Suite};
use triality::FracSeries;

#[derive(Parser)]
#[command(name = "triality", version, about = "D4 triality invariants: expansions, bases, covariants and identity checks")]
struct Cli {
    /// Truncation order in powers of q.
    #[arg(long, global = true, default_value_t = 24, value_parser = clap::value_parser!(i64).range(2..))]
    order: i64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Expand a named modular form, weak invariant or curve coefficient.
    Expand { name: String },
    /// Basis of the triality invariants of the given weight and degree.
    Basis {
        #[arg(long)]
        weight: i32,
        #[arg(long)]
        degree: i32,
    },
    /// Table of dimensions for even weights and degrees.
    Dims {
        #[arg(long, default_value_t = 24)]
        kmax: i32,
        #[arg(long, default_value_t = 8)]
        mmax: i32,
    },
    /// The fifteen generators of the joint covariants of f and g.
    Generators {
        /// Shorthand for `--format json`.
        #[arg(long)]
        json: bool,
    },
    /// Transvectant of two forms in alpha0..alpha2, beta0..beta3, u, v, f, g.
    Transvect {
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long, allow_hyphen_values = true)]
        right: String,
        #[arg(long)]
        index: i32,
    },
    /// Decide whether a polynomial in a0, a2, b0..b3 is a triality invariant.
    Membership {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Run an identity suite: series, jacobians, curve, isomorphism, table1, classify or all.
    Verify { suite: String },
}

enum Failure {
    Usage(String),
    Verification,
}

impl From<triality::Error> for Failure {
    fn from(e: triality::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

const SERIES_NAMES: [&str; 10] = ["E4", "E6", "Delta", "eta", "theta2", "theta3", "theta4", "e1", "e2", "e3"];
const INVARIANT_NAMES: [&str; 4] = ["K", "L", "M", "N"];
const AB_NAMES: [&str; 6] = ["a0", "a2", "b0", "b1", "b2", "b3"];
const CD_NAMES: [&str; 6] = ["c0", "c1", "c2", "d0", "d2", "d3"];

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match &cli.command {
        Command::Generators { json: true } => Format::Json,
        _ => cli.format,
    };
    match run(&cli, format) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn emit(format: Format, value: &Value, text: impl FnOnce() -> String) {
    let out = match format {
        Format::Json => serde_json::to_string(value).expect("serializable"),
        Format::Text => text(),
    };
    let _ = writeln!(std::io::stdout().lock(), "{out}");
}

fn run(cli: &Cli, format: Format) -> Result<(), Failure> {
    match &cli.command {
        Command::Expand { name } => expand(name, cli.order, format),
        Command::Basis { weight, degree } => {
            let basis = enumerator::triality_basis(*weight, *degree);
            emit(format, &basis.to_json(), || {
                let mut out = format!("weight {weight}, degree {degree}: dimension {}", basis.dimension());
                for p in &basis.basis {
                    out.push_str(&format!("\n  {p}"));
                }
                out
            });
            Ok(())
        }
        Command::Dims { kmax, mmax } => {
            dims(*kmax, *mmax, format);
            Ok(())
        }
        Command::Generators { .. } => {
            generators(format);
            Ok(())
        }
        Command::Transvect { left, right, index } => {
            let l = parse_form(left)?;
            let r = parse_form(right)?;
            let t = covariants::transvect(&l, &r, *index)?;
            let lead = t.leading().map(|(m, _)| *m);
            let (d_a, d_b) = lead.map(|m| covariants::form_degrees(&m)).unwrap_or((0, 0));
            let omega = lead.map(|m| covariants::uv_degree(&m)).unwrap_or(0);
            let value = json!({
                "kind": "form",
                "grading": {"d_a": d_a, "d_b": d_b, "order_omega": omega},
                "variables": t.to_json()["variables"],
                "terms": t.to_json()["terms"],
            });
            emit(format, &value, || t.to_string());
            Ok(())
        }
        Command::Membership { poly } => membership(poly, cli.order, format),
        Command::Verify { suite } => verify(suite, cli.order, format),
    }
}

fn named_series(name: &str, ctx: &Expansions) -> Option<(FracSeries, &'static str)> {
    let order = ctx.order();
    Some(match name {
        "E4" => (ctx.e4().clone(), "4"),
        "E6" => (ctx.e6().clone(), "6"),
        "Delta" => (ctx.delta().clone(), "12"),
        "eta" => (ctx.eta().clone(), "1/2"),
        "theta2" => (modular::theta_const(2, order), "1/2"),
        "theta3" => (modular::theta_const(3, order), "1/2"),
        "theta4" => (modular::theta_const(4, order), "1/2"),
        "e1" => (ctx.e(1).clone(), "2"),
        "e2" => (ctx.e(2).clone(), "2"),
        "e3" => (ctx.e(3).clone(), "2"),
        _ => return None,
    })
}

fn expand(name: &str, order: i64, format: Format) -> Result<(), Failure> {
    let known = SERIES_NAMES.iter().chain(&INVARIANT_NAMES).chain(&AB_NAMES).chain(&CD_NAMES);
    if !known.clone().any(|n| *n == name) {
        let names: Vec<&str> = known.copied().collect();
        return Err(Failure::Usage(format!("unknown name {name}; valid names: {}", names.join(", "))));
    }
    let ctx = Expansions::new(order);
    if let Some((s, weight)) = named_series(name, &ctx) {
        let weight_value = weight.parse::<i64>().map(Value::from).unwrap_or_else(|_| json!(weight));
        let mut value = s.to_json();
        value["name"] = json!(name);
        value["grading"] = json!({"weight": weight_value, "degree": 0});
        emit(format, &value, || format!("{name} = {s}"));
        return Ok(());
    }
    let inv: Invariant = if let Some(i) = INVARIANT_NAMES.iter().position(|n| *n == name) {
        ctx.klmn()[i].clone()
    } else if AB_NAMES.contains(&name) {
        curve::evaluate_ab(&curve::ab_var(name), &ctx)?
    } else {
        curve::evaluate_cd(&curve::cd_var(name), &ctx)?
    };
    let mut value = inv.to_json();
    value["name"] = json!(name);
    emit(format, &value, || format!("{name} (weight {}, degree {}) = {inv}", inv.weight(), inv.degree()));
    Ok(())
}

fn dims(kmax: i32, mmax: i32, format: Format) {
    let table = enumerator::dimension_table(kmax, mmax);
    let even_k: Vec<i32> = (0..=kmax).step_by(2).collect();
    let even_m: Vec<i32> = (0..=mmax).step_by(2).collect();
    let rows: Vec<Value> = even_m
        .iter()
        .map(|&m| json!({"degree": m, "dims": even_k.iter().map(|&k| table[m as usize][k as usize]).collect::<Vec<_>>()}))
        .collect();
    let value = json!({"kind": "dimension_table", "weights": even_k, "rows": rows});
    emit(format, &value, || {
        let width = 4;
        let mut out = format!("{:>5}", "m\\k");
        for k in &even_k {
            out.push_str(&format!("{k:>width$}"));
        }
        for &m in &even_m {
            out.push_str(&format!("\n{m:>5}"));
            for &k in &even_k {
                out.push_str(&format!("{:>width$}", table[m as usize][k as usize]));
            }
        }
        out
    });
}

fn generators(format: Format) {
    let gens = covariants::gordan_generators();
    let items: Vec<Value> = gens
        .iter()
        .map(|g| {
            let body = g.covariant.to_json();
            json!({
                "label": g.label(),
                "expression": g.expression,
                "grading": {"weight": g.weight(), "degree": g.m, "d_a": g.d_a, "d_b": g.d_b, "order_omega": g.omega},
                "variables": body["variables"],
                "terms": body["terms"],
            })
        })
        .collect();
    let value = json!({"kind": "generators", "count": gens.len(), "generators": items});
    emit(format, &value, || gens.iter().map(|g| g.to_string()).collect::<Vec<_>>().join("\n"));
}

/// Parses a form expression, reading the bare identifiers `f` and `g` as the
/// quadratic and the cubic.
fn parse_form(src: &str) -> Result<FormPoly, Failure> {
    let mut expanded = String::new();
    let mut word = String::new();
    let flush = |word: &mut String, out: &mut String| {
        match word.as_str() {
            "f" => out.push_str(&format!("({})", covariants::f())),
            "g" => out.push_str(&format!("({})", covariants::g())),
            _ => out.push_str(word),
        }
        word.clear();
    };
    for ch in src.chars() {
        if ch.is_alphanumeric() || ch == '_' {
            word.push(ch);
        } else {
            flush(&mut word, &mut expanded);
            expanded.push(ch);
        }
    }
    flush(&mut word, &mut expanded);
    Ok(expanded.parse()?)
}

fn membership(src: &str, order: i64, format: Format) -> Result<(), Failure> {
    let p: CurvePolyAB = src.parse()?;
    let image = curve::ab_to_cd(&p);
    let member = image.is_polynomial();
    let grading = p.leading().map(|(m, _)| {
        let (k, deg) = curve::ab_weight_degree(m);
        let (d_a, d_b) = curve::refined_degrees(m);
        json!({"weight": k, "degree": deg, "d_a": d_a, "d_b": d_b})
    });
    let mut value = json!({
        "kind": "membership",
        "input": curve::ab_json(&p),
        "grading": grading,
        "cd_image": curve::cd_json(&image),
        "triality_invariant": member,
    });
    let mut text = format!("{p}\n  cd frame: {image}\n  triality invariant: {member}");
    if member {
        let ctx = Expansions::new(order);
        let inv = curve::evaluate_ab(&p, &ctx)?;
        let klmn = ctx.express_in_klmn(&inv)?;
        value["classification"] = json!(inv.classify().to_string());
        value["klmn"] = json!(klmn.to_string());
        text.push_str(&format!("\n  classification: {}\n  in E4, E6, K, L, M, N: {klmn}", inv.classify()));
        if let Ok(phi) = covariants::psi_forward(&p) {
            value["semiinvariant"] = json!(phi.to_string());
            text.push_str(&format!("\n  semiinvariant: {phi}"));
        }
    }
    emit(format, &value, || text);
    Ok(())
}

fn verify(suite: &str, order: i64, format: Format) -> Result<(), Failure> {
    let suites: Vec<Suite> = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        let s = suite.parse::<Suite>().map_err(|s| {
            let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
            Failure::Usage(format!("unknown suite {s}; valid suites: {}, all", names.join(", ")))
        })?;
        vec![s]
    };
    let ctx = Expansions::new(order);
    let checks = run_suites(&suites, &ctx);
    let failed = checks.iter().filter(|c| !c.passed).count();
    let value = json!({
        "kind": "verification",
        "order": order,
        "passed": checks.len() - failed,
        "failed": failed,
        "checks": checks.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
    });
    emit(format, &value, || {
        let mut lines: Vec<String> = checks.iter().map(|c| c.to_string()).collect();
        lines.push(format!("{} passed, {failed} failed at order q^{order}", checks.len() - failed));
        lines.join("\n")
    });
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}
