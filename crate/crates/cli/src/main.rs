use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use dixcurve::ch::{ideal_to_subspace, subspace_to_ideal};
use dixcurve::classify::{classify_graded, fat_normalize_graded};
use dixcurve::curve::CurveModel;
use dixcurve::harness::{run_group, BatterySizes, VerifyReport, GROUPS};
use dixcurve::ideal::CIdeal;
use dixcurve::json::*;
use dixcurve::picd::{act_dideal, act_graded, act_pic};

#[derive(Parser)]
#[command(
    name = "dixcurve",
    version,
    about = "Right ideals of differential operators on the line and on elliptic curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Curve as JSON or a path to a JSON file; defaults to the line.
    #[arg(long, global = true)]
    curve: Option<String>,
    /// Input as JSON or a path to a JSON file.
    #[arg(long = "in", global = true)]
    input: Option<String>,
    /// Battery seed.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the curve and, if given, the input ideal.
    Validate,
    /// Class of a right ideal of D (or of a graded ideal, `{"graded": [...]}`).
    Gamma,
    /// The invariant n.
    N,
    /// The associated graded ideal and its classification.
    Gr,
    /// The Hilbert-point ideal and its colength.
    Hilb,
    /// Divisor and class of a primary decomposable subspace.
    Div,
    /// The right ideal of operators mapping O(X) into a subspace.
    ToIdeal,
    /// The subspace M.O(X) of a fat right ideal.
    ToSubspace,
    /// Act by a datum on a class or graded ideal, or by an automorphism on a right ideal.
    Act,
    /// Run a verification group, or `all`.
    Verify {
        name: String,
        /// Instances per randomized group.
        #[arg(long)]
        count: Option<usize>,
    },
}

fn load(arg: &str) -> Result<Value> {
    let text = if arg.trim_start().starts_with(['{', '[', '"']) {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).with_context(|| format!("reading {}", arg))?
    };
    serde_json::from_str(&text).with_context(|| format!("parsing JSON from {}", arg))
}

fn curve_of(cli: &Cli) -> Result<CurveModel> {
    match &cli.curve {
        None => Ok(CurveModel::Line),
        Some(s) => Ok(curve_from_json(&load(s)?)?),
    }
}

fn input(cli: &Cli) -> Result<Value> {
    match &cli.input {
        Some(s) => load(s),
        None => bail!("this command needs --in"),
    }
}

/// The graded ideal named by the input: `gr M` for a list of operators,
/// or the ideal itself for `{"graded": [...]}`.
fn graded_input(curve: &CurveModel, v: &Value) -> Result<CIdeal> {
    if let Some(g) = v.get("graded") {
        return Ok(cideal_from_json(curve, g)?);
    }
    let m = dideal_from_json(curve, v.get("ideal").unwrap_or(v))?;
    Ok(m.gr_ideal()?)
}

fn classify(curve: &CurveModel, v: &Value) -> Result<Value> {
    let f = graded_input(curve, v)?;
    let c = classify_graded(&f)?;
    Ok(json!({
        "class": class_to_json(&c.class),
        "n": c.n,
        "I": oideal_to_json(&c.i)?,
        "hilb": cideal_to_json(&c.hilb)?,
        "gr": cideal_to_json(&fat_normalize_graded(&f)?)?,
    }))
}

fn pick(v: Value, keys: &[&str]) -> Value {
    let mut out = serde_json::Map::new();
    for k in keys {
        if let Some(x) = v.get(*k) {
            out.insert(k.to_string(), x.clone());
        }
    }
    Value::Object(out)
}

fn act(curve: &CurveModel, v: &Value) -> Result<Value> {
    if let Some(phi) = v.get("daut") {
        let phi = daut_from_json(curve, phi)?;
        let i = match v.get("I") {
            Some(i) => oideal_from_json(curve, i)?,
            None => dixcurve::oideal::OIdeal::unit(curve),
        };
        let m = dideal_from_json(curve, v.get("ideal").context("act with daut needs \"ideal\"")?)?;
        return Ok(json!({"ideal": dideal_to_json(&act_dideal(&phi, &i, &m)?)?}));
    }
    let p = datum_from_json(curve, v.get("datum").context("act needs \"datum\" or \"daut\"")?)?;
    if let Some(c) = v.get("class") {
        return Ok(json!({"class": class_to_json(&act_pic(&p, &class_from_json(curve, c)?)?)}));
    }
    let f = cideal_from_json(curve, v.get("graded").context("act with datum needs \"class\" or \"graded\"")?)?;
    Ok(json!({"graded": cideal_to_json(&act_graded(&p, &f)?)?}))
}

fn verify(cli: &Cli, name: &str, count: Option<usize>) -> Result<Vec<VerifyReport>> {
    let sizes = match count {
        Some(c) => {
            BatterySizes { subspaces: c, subspace_extras: c, fat_ideals: c, actions: c, filtrations: c, graded: c }
        }
        None => BatterySizes::default(),
    };
    let curves = match &cli.curve {
        Some(_) => vec![curve_of(cli)?],
        None => vec![CurveModel::Line, CurveModel::standard_elliptic()],
    };
    let names: Vec<&str> = if name == "all" { GROUPS.to_vec() } else { vec![name] };
    let mut out = Vec::new();
    for n in names {
        let fixed = n == "golden" || n == "pic";
        for (k, curve) in curves.iter().enumerate() {
            if fixed && k > 0 {
                break;
            }
            match run_group(n, cli.seed, curve, &sizes) {
                Some(r) => out.extend(r),
                None => bail!("unknown group {}; expected one of {} or all", n, GROUPS.join(", ")),
            }
        }
    }
    Ok(out)
}

fn run(cli: &Cli) -> Result<(Value, usize)> {
    let curve = curve_of(cli)?;
    let value = match &cli.command {
        Command::Validate => {
            let mut r = json!({"curve": curve_to_json(&curve), "valid": true});
            if let Some(s) = &cli.input {
                let v = load(s)?;
                let m = dideal_from_json(&curve, v.get("ideal").unwrap_or(&v))?;
                r["fat"] = json!(m.is_fat()?);
                r["unit"] = json!(m.is_unit()?);
            }
            r
        }
        Command::Gamma => pick(classify(&curve, &input(cli)?)?, &["class", "n", "I"]),
        Command::N => pick(classify(&curve, &input(cli)?)?, &["class", "n", "I"]),
        Command::Gr => pick(classify(&curve, &input(cli)?)?, &["class", "n", "I", "gr"]),
        Command::Hilb => pick(classify(&curve, &input(cli)?)?, &["class", "n", "I", "hilb"]),
        Command::Div => {
            let v = subspace_from_json(&curve, &input(cli)?)?;
            let d = v.div_of();
            let entries: Vec<Value> =
                d.entries.iter().map(|(p, n)| json!({"point": point_to_json(p), "mult": n})).collect();
            let i = v.i_v_formula()?;
            json!({
                "divisor": entries,
                "class": class_to_json(&d.class(&curve)),
                "codim": v.codim(),
                "I": oideal_to_json(&i)?,
            })
        }
        Command::ToIdeal => {
            let v = subspace_from_json(&curve, &input(cli)?)?;
            json!({"ideal": dideal_to_json(&subspace_to_ideal(&v)?)?})
        }
        Command::ToSubspace => {
            let v = input(cli)?;
            let m = dideal_from_json(&curve, v.get("ideal").unwrap_or(&v))?;
            subspace_to_json(&ideal_to_subspace(&m.fat_normalize()?)?)
        }
        Command::Act => act(&curve, &input(cli)?)?,
        Command::Verify { name, count } => {
            let reports = verify(cli, name, *count)?;
            let failed = reports.iter().filter(|r| !r.pass).count();
            return Ok((serde_json::to_value(&reports)?, failed));
        }
    };
    Ok((value, 0))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((value, failed)) => {
            let text = serde_json::to_string_pretty(&value).expect("serializable");
            match &cli.out {
                Some(p) => {
                    if let Err(e) = std::fs::write(p, text + "\n") {
                        eprintln!("error: writing {}: {}", p.display(), e);
                        return ExitCode::from(125);
                    }
                }
                None => println!("{}", text),
            }
            ExitCode::from(failed.min(120) as u8)
        }
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(125)
        }
    }
}
