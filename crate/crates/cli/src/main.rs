//! Command-line front door: load fixtures or JSON files, run the checkers
//! and constructions, emit line-oriented reports (JSON behind --json).
//!
//! Exit codes: 0 pass, 1 property fail, 2 input error, 3 truncated.

use clap::{Args, Parser, Subcommand};
use omega_rep::json::{self, Object};
use omega_rep::{
    congruence_violation, fixtures, is_homomorphism, is_morphism,
    is_polymorphism, is_reduced_polymorphism, quotient_representation, tensor_product,
    validate_algebra, validate_representation, Congruence, Error, FiniteAlgebra, Mapping,
    MultiMap, RepMorphism, Representation, TensorBudgets, TensorResult, TensorStatus,
};
use serde_json::json;
use std::path::Path;
use std::process::ExitCode;

const EXIT_PASS: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_TRUNCATED: u8 = 3;

#[derive(Parser)]
#[command(
    name = "omega-rep",
    about = "Finite representations of universal algebras: checkers, quotients, tensor products"
)]
struct Cli {
    /// Emit machine-readable JSON instead of plain text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse files and run every object's validator
    Validate { paths: Vec<String> },
    /// Run a checker; exit 0 on pass, 1 with the least witness on fail
    Check(CheckArgs),
    /// Quotient a representation by a coordinated congruence
    Quotient {
        rep: String,
        congruence: String,
        #[arg(long)]
        out: Option<String>,
    },
    /// Tensor product of representations sharing one monoid actor
    Tensor {
        reps: Vec<String>,
        /// Saturation round budget
        #[arg(long)]
        depth: Option<usize>,
        /// Congruence class budget
        #[arg(long)]
        classes: Option<usize>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Factor a reduced polymorphism through a saved tensor result
    Factor {
        result: String,
        multimap: String,
        target: String,
        #[arg(long)]
        out: Option<String>,
    },
    /// Verify the universal property of a saved tensor result
    Universal {
        result: String,
        /// Largest fixture target carrier to try
        #[arg(long, default_value_t = 3)]
        bound: usize,
    },
}

#[derive(Args)]
struct CheckArgs {
    /// One of: hom, rep, morphism, polymorphism, reduced
    kind: String,
    /// Checker-specific operands (see README)
    args: Vec<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::TruncatedResult => EXIT_INPUT,
                Error::BudgetExceeded(_) => EXIT_TRUNCATED,
                _ => EXIT_INPUT,
            })
        }
    }
}

fn load_object(name: &str) -> Result<Object, Error> {
    if Path::new(name).exists() {
        let text = std::fs::read_to_string(name)
            .map_err(|e| Error::ParseError(format!("{name}: {e}")))?;
        return json::parse_object_str(&text);
    }
    builtin(name).ok_or_else(|| Error::NameNotFound(name.to_string()))
}

/// Builtin fixtures addressable by name: scalN, zN, klein4, bool-monoid,
/// mul-zN, add-zN, proj1-zN, zero-zN.
fn builtin(name: &str) -> Option<Object> {
    if let Some(n) = name.strip_prefix("scal").and_then(|s| s.parse().ok()) {
        if (2..=12).contains(&n) {
            return Some(Object::Representation(fixtures::scal(n)));
        }
    }
    if let Some(n) = name.strip_prefix('z').and_then(|s| s.parse().ok()) {
        if (1..=12).contains(&n) {
            return Some(Object::Algebra(fixtures::zn(n)));
        }
    }
    if name == "klein4" {
        return Some(Object::Algebra(fixtures::klein_four()));
    }
    if name == "bool-monoid" {
        return Some(Object::Algebra(fixtures::bool_monoid()));
    }
    let table = |n: usize, f: &dyn Fn(usize, usize) -> usize| {
        let mut values = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                values.push(f(x, y));
            }
        }
        MultiMap::new(vec![n, n], n, values)
    };
    let mul = |n: usize, x: usize, y: usize| x * y % n;
    let add = |n: usize, x: usize, y: usize| (x + y) % n;
    let proj1 = |_: usize, x: usize, _: usize| x;
    let zero = |_: usize, _: usize, _: usize| 0;
    let cases: [(&str, &dyn Fn(usize, usize, usize) -> usize); 4] = [
        ("mul-z", &mul),
        ("add-z", &add),
        ("proj1-z", &proj1),
        ("zero-z", &zero),
    ];
    for (prefix, f) in cases {
        if let Some(n) = name.strip_prefix(prefix).and_then(|s| s.parse::<usize>().ok()) {
            if (2..=12).contains(&n) {
                return Some(Object::MultiMap(table(n, &|x, y| f(n, x, y))));
            }
        }
    }
    None
}

fn want_representation(name: &str) -> Result<Representation, Error> {
    match load_object(name)? {
        Object::Representation(r) => Ok(r),
        _ => Err(Error::ParseError(format!("{name}: expected a representation"))),
    }
}

fn want_algebra(name: &str) -> Result<FiniteAlgebra, Error> {
    match load_object(name)? {
        Object::Algebra(a) => Ok(a),
        _ => Err(Error::ParseError(format!("{name}: expected an algebra"))),
    }
}

fn want_multimap(name: &str) -> Result<MultiMap, Error> {
    match load_object(name)? {
        Object::MultiMap(m) => Ok(m),
        _ => Err(Error::ParseError(format!("{name}: expected a multimap"))),
    }
}

fn want_mapping(name: &str) -> Result<Mapping, Error> {
    match load_object(name)? {
        Object::Mapping(m) => Ok(m),
        _ => Err(Error::ParseError(format!("{name}: expected a mapping"))),
    }
}

fn want_congruence(name: &str) -> Result<Congruence, Error> {
    match load_object(name)? {
        Object::Congruence(c) => Ok(c),
        _ => Err(Error::ParseError(format!("{name}: expected a congruence"))),
    }
}

fn want_tensor(name: &str) -> Result<TensorResult, Error> {
    match load_object(name)? {
        Object::Tensor(t) => Ok(*t),
        _ => Err(Error::ParseError(format!("{name}: expected a tensor result"))),
    }
}

fn emit(as_json: bool, value: serde_json::Value, text: &str) {
    if as_json {
        println!("{value}");
    } else {
        println!("{text}");
    }
}

fn write_out(path: &Option<String>, value: &serde_json::Value) -> Result<(), Error> {
    if let Some(path) = path {
        std::fs::write(path, format!("{value}\n"))
            .map_err(|e| Error::ParseError(format!("{path}: {e}")))?;
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<u8, Error> {
    match &cli.command {
        Command::Validate { paths } => cmd_validate(cli.json, paths),
        Command::Check(args) => cmd_check(cli.json, args),
        Command::Quotient { rep, congruence, out } => cmd_quotient(cli.json, rep, congruence, out),
        Command::Tensor {
            reps,
            depth,
            classes,
            out,
        } => cmd_tensor(cli.json, reps, *depth, *classes, out),
        Command::Factor {
            result,
            multimap,
            target,
            out,
        } => cmd_factor(cli.json, result, multimap, target, out),
        Command::Universal { result, bound } => cmd_universal(cli.json, result, *bound),
    }
}

fn cmd_validate(as_json: bool, paths: &[String]) -> Result<u8, Error> {
    let mut violations: Vec<(String, String)> = Vec::new();
    for path in paths {
        match load_object(path)? {
            Object::Signature(_) | Object::Congruence(_) => {}
            Object::Algebra(a) => {
                for v in validate_algebra(&a) {
                    violations.push((path.clone(), format!("{}: {}", v.op, v.detail)));
                }
            }
            Object::Representation(r) => {
                for v in validate_representation(&r) {
                    violations.push((path.clone(), format!("{v:?}")));
                }
            }
            Object::Mapping(m) => {
                if !m.is_valid() {
                    violations.push((path.clone(), "mapping not total or out of range".into()));
                }
            }
            Object::MultiMap(m) => {
                if !m.is_valid() {
                    violations.push((path.clone(), "multimap not total or out of range".into()));
                }
            }
            Object::Tensor(t) => {
                for v in validate_algebra(&t.quotient) {
                    violations.push((path.clone(), format!("quotient {}: {}", v.op, v.detail)));
                }
                for v in validate_representation(&t.induced) {
                    violations.push((path.clone(), format!("induced {v:?}")));
                }
            }
        }
    }
    let pass = violations.is_empty();
    emit(
        as_json,
        json!({"valid": pass, "violations": violations.iter()
            .map(|(p, d)| json!({"path": p, "detail": d})).collect::<Vec<_>>()}),
        &if pass {
            format!("{} object(s) valid", paths.len())
        } else {
            violations
                .iter()
                .map(|(p, d)| format!("{p}: {d}"))
                .collect::<Vec<_>>()
                .join("\n")
        },
    );
    if !pass {
        for (p, d) in &violations {
            eprintln!("{p}: {d}");
        }
    }
    Ok(if pass { EXIT_PASS } else { EXIT_FAIL })
}

fn operand_error(kind: &str, expected: &str) -> Error {
    Error::ParseError(format!("check {kind} expects {expected}"))
}

/// Splits the rep operands of polymorphism checks: one name means the same
/// representation in every slot and as target, several mean factors then
/// target last.
fn rep_operands(names: &[String], arity: usize) -> Result<(Vec<Representation>, Representation), Error> {
    if names.len() == 1 {
        let rep = want_representation(&names[0])?;
        return Ok((vec![rep.clone(); arity], rep));
    }
    if names.len() != arity + 1 {
        return Err(Error::ParseError(format!(
            "expected 1 or {} representation names, got {}",
            arity + 1,
            names.len()
        )));
    }
    let mut reps = Vec::new();
    for name in &names[..arity] {
        reps.push(want_representation(name)?);
    }
    Ok((reps, want_representation(&names[arity])?))
}

fn verdict(as_json: bool, pass: bool, witness: String) -> u8 {
    emit(
        as_json,
        json!({"pass": pass, "witness": if pass { serde_json::Value::Null } else { json!(witness) }}),
        &if pass {
            "pass".to_string()
        } else {
            format!("fail: {witness}")
        },
    );
    if pass {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn cmd_check(as_json: bool, args: &CheckArgs) -> Result<u8, Error> {
    let ops = &args.args;
    match args.kind.as_str() {
        "hom" => {
            let [m, src, dst] = ops.as_slice() else {
                return Err(operand_error("hom", "<mapping> <src-algebra> <dst-algebra>"));
            };
            let src = want_algebra(src)?;
            let dst = want_algebra(dst)?;
            let map = if m == "identity" {
                Mapping::identity(src.size)
            } else {
                want_mapping(m)?
            };
            let w = is_homomorphism(&map, &src, &dst)?;
            Ok(verdict(as_json, w.is_none(), format!("{w:?}")))
        }
        "rep" => {
            let [name] = ops.as_slice() else {
                return Err(operand_error("rep", "<representation>"));
            };
            let rep = want_representation(name)?;
            let violations = validate_representation(&rep);
            Ok(verdict(as_json, violations.is_empty(), format!("{violations:?}")))
        }
        "morphism" => {
            let [r, big_r, src, dst] = ops.as_slice() else {
                return Err(operand_error(
                    "morphism",
                    "<r-mapping> <R-mapping> <src-rep> <dst-rep>",
                ));
            };
            let m = RepMorphism {
                r: want_mapping(r)?,
                big_r: want_mapping(big_r)?,
            };
            let w = is_morphism(&m, &want_representation(src)?, &want_representation(dst)?)?;
            Ok(verdict(as_json, w.is_none(), format!("{w:?}")))
        }
        "polymorphism" => {
            let [r, big_r, reps @ ..] = ops.as_slice() else {
                return Err(operand_error(
                    "polymorphism",
                    "<r-multimap> <R-multimap> <reps…> (factors then target, or one shared rep)",
                ));
            };
            let r = want_multimap(r)?;
            let big_r = want_multimap(big_r)?;
            let (factors, target) = rep_operands(reps, big_r.arity())?;
            let refs: Vec<&Representation> = factors.iter().collect();
            let w = is_polymorphism(&r, &big_r, &refs, &target)?;
            Ok(verdict(as_json, w.is_none(), format!("{w:?}")))
        }
        "reduced" => {
            let [big_r, reps @ ..] = ops.as_slice() else {
                return Err(operand_error(
                    "reduced",
                    "<R-multimap> <reps…> (factors then target, or one shared rep)",
                ));
            };
            let big_r = want_multimap(big_r)?;
            let (factors, target) = rep_operands(reps, big_r.arity())?;
            let refs: Vec<&Representation> = factors.iter().collect();
            let w = is_reduced_polymorphism(&big_r, &refs, &target)?;
            Ok(verdict(as_json, w.is_none(), format!("{w:?}")))
        }
        other => Err(Error::ParseError(format!(
            "unknown check kind `{other}` (expected hom, rep, morphism, polymorphism, reduced)"
        ))),
    }
}

fn cmd_quotient(
    as_json: bool,
    rep: &str,
    congruence: &str,
    out: &Option<String>,
) -> Result<u8, Error> {
    let rep = want_representation(rep)?;
    let cong = want_congruence(congruence)?;
    if let Some(e) = congruence_violation(&rep.carrier, &cong) {
        emit(as_json, json!({"pass": false, "witness": e.to_string()}), &format!("fail: {e}"));
        return Ok(EXIT_FAIL);
    }
    match quotient_representation(&rep, &cong) {
        Ok((induced, projection)) => {
            let value = json::representation_to_json(&induced);
            write_out(out, &json::object_to_json(&Object::Representation(induced.clone())))?;
            emit(
                as_json,
                json!({"pass": true, "classes": cong.classes(), "quotient": value,
                       "projection": projection.big_r.values}),
                &format!(
                    "quotient carrier size {} over {} classes",
                    induced.carrier.size,
                    cong.class_count()
                ),
            );
            Ok(EXIT_PASS)
        }
        Err(e @ Error::NotCoordinated { .. }) => {
            emit(as_json, json!({"pass": false, "witness": e.to_string()}), &format!("fail: {e}"));
            Ok(EXIT_FAIL)
        }
        Err(e) => Err(e),
    }
}

fn cmd_tensor(
    as_json: bool,
    reps: &[String],
    depth: Option<usize>,
    classes: Option<usize>,
    out: &Option<String>,
) -> Result<u8, Error> {
    let mut budgets = TensorBudgets::default();
    if let Some(d) = depth {
        budgets.depth = d;
    }
    if let Some(c) = classes {
        budgets.classes = c;
    }
    let loaded: Vec<Representation> = reps
        .iter()
        .map(|n| want_representation(n))
        .collect::<Result<_, _>>()?;
    let refs: Vec<&Representation> = loaded.iter().collect();
    let result = tensor_product(&refs, budgets)?;
    let value = json::object_to_json(&Object::Tensor(Box::new(result.clone())));
    write_out(out, &value)?;
    let (text, code) = match &result.status {
        TensorStatus::Complete => (
            format!("complete: quotient size {}", result.quotient.size),
            EXIT_PASS,
        ),
        TensorStatus::Truncated { depth, classes } => (
            format!(
                "truncated at depth {depth} with {classes} classes (quotient size so far {})",
                result.quotient.size
            ),
            EXIT_TRUNCATED,
        ),
    };
    emit(as_json, value, &text);
    Ok(code)
}

fn cmd_factor(
    as_json: bool,
    result: &str,
    multimap: &str,
    target: &str,
    out: &Option<String>,
) -> Result<u8, Error> {
    let result = want_tensor(result)?;
    let g2 = want_multimap(multimap)?;
    let target = want_representation(target)?;
    match omega_rep::factor_polymorphism(&result, &g2, &target) {
        Ok(m) => {
            let value = json::object_to_json(&Object::Mapping(m.big_r.clone()));
            write_out(out, &value)?;
            emit(
                as_json,
                json!({"pass": true, "map": value}),
                &format!("factored: class map {:?}", m.big_r.values),
            );
            Ok(EXIT_PASS)
        }
        Err(e @ (Error::NotAReducedPolymorphism | Error::FactorizationInconsistent { .. })) => {
            emit(as_json, json!({"pass": false, "witness": e.to_string()}), &format!("fail: {e}"));
            Ok(EXIT_FAIL)
        }
        Err(Error::TruncatedResult) => Err(Error::TruncatedResult),
        Err(e) => Err(e),
    }
}

fn cmd_universal(as_json: bool, result: &str, bound: usize) -> Result<u8, Error> {
    let result = want_tensor(result)?;
    let refs: Vec<&Representation> = result.factors.iter().collect();
    let report = omega_rep::verify_universal_property(&result, &refs, bound)?;
    let pass = report.passed();
    emit(
        as_json,
        json!({"pass": pass, "targets": report.targets,
               "representations": report.representations,
               "polymorphisms": report.polymorphisms,
               "counterexample": report.counterexample}),
        &if pass {
            format!(
                "universal property holds: {} polymorphisms over {} targets",
                report.polymorphisms, report.targets
            )
        } else {
            format!(
                "fail: {}",
                report.counterexample.as_deref().unwrap_or("counterexample")
            )
        },
    );
    Ok(if pass { EXIT_PASS } else { EXIT_FAIL })
}
