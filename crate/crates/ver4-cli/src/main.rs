//! Command-line interface: builds the additive, multiplicative and general
//! linear families at a chosen truncation, emits structure-constant tables,
//! and drives the verification suites. Reports are printed as text or JSON;
//! the exit code is 0 for PASS, 1 for FAIL and 2 for ERROR.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use ver4_core::deriv::{omega_filtration_check, verify_universality};
use ver4_core::dist::DistAlgebra;
use ver4_core::f2::F2Vec;
use ver4_core::hopf::{
    build_ga, build_gl, build_gm, verify_delta_filtration, verify_gr_cocommutative, verify_hopf,
    HopfData,
};
use ver4_core::lie::{lie_of_group_unchecked, RestrictedLie};
use ver4_core::report::Report;
use ver4_core::tangent::{enumerate_tangent_oracle, tangent_labels, tangent_object, tangent_slots};

/// Desk-scale resource guards.
const MAX_TANGENT_DIM: usize = 400;
const MAX_TRUNC: usize = 8;

#[derive(Parser)]
#[command(name = "ver4", version, about = "Exact group schemes and restricted Lie algebras over F2")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Truncation degree of the local algebra.
    #[arg(long, global = true, default_value_t = 4)]
    trunc: usize,
    /// Emit the report as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Ga,
    Gm,
    Gl,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteName {
    Hopf,
    Dist,
    Lie,
    Restricted,
    Universality,
    Omega,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Bracket, differential and square tables of the Lie algebra.
    Lie {
        #[arg(value_enum)]
        family: Family,
        m: Option<usize>,
        n: Option<usize>,
    },
    /// Layer dimensions and convolution tables of the distribution algebra.
    Dist {
        #[arg(value_enum)]
        family: Family,
        m: Option<usize>,
        n: Option<usize>,
        /// Highest distribution order to expose.
        #[arg(long, default_value_t = 2)]
        max_order: usize,
    },
    /// Tangent space basis, differential, and enumeration oracle counts.
    Tangent {
        #[arg(value_enum)]
        family: Family,
        m: Option<usize>,
        n: Option<usize>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: SuiteName,
        #[arg(value_enum)]
        family: Family,
        m: Option<usize>,
        n: Option<usize>,
        /// Highest distribution order for the dist suite.
        #[arg(long, default_value_t = 2)]
        max_order: usize,
    },
    /// Dimensions, generators and the shape of the Lie algebra.
    Info {
        #[arg(value_enum)]
        family: Family,
        m: Option<usize>,
        n: Option<usize>,
    },
}

struct Outcome {
    command: String,
    parameters: Value,
    status: Status,
    payload: Value,
    counterexamples: Vec<String>,
}

#[derive(PartialEq, Clone, Copy)]
enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        }
    }

    fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }
}

fn main() {
    if let Ok(threads) = std::env::var("VER4_THREADS") {
        if let Ok(threads) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
        }
    }
    let cli = Cli::parse();
    let outcome = run(&cli);
    let rendered = if cli.json {
        let doc = json!({
            "command": outcome.command,
            "parameters": outcome.parameters,
            "status": outcome.status.as_str(),
            "payload": outcome.payload,
            "counterexamples": outcome.counterexamples,
        });
        let mut s = serde_json::to_string_pretty(&doc).unwrap();
        s.push('\n');
        s
    } else {
        let mut s = format!("{} — {}\n", outcome.command, outcome.status.as_str());
        render_text(&outcome.payload, 0, &mut s);
        if !outcome.counterexamples.is_empty() {
            s.push_str("counterexamples:\n");
            for c in &outcome.counterexamples {
                s.push_str(&format!("  {c}\n"));
            }
        }
        s
    };
    // Written once; a closed pipe downstream is not an error.
    use std::io::Write;
    let _ = std::io::stdout().write_all(rendered.as_bytes());
    std::process::exit(outcome.status.exit_code());
}

fn render_text(value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                match v {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(v, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {v}\n")),
                }
            }
        }
        Value::Array(items) => {
            for v in items {
                match v {
                    Value::Object(_) | Value::Array(_) => render_text(v, indent + 1, out),
                    _ => out.push_str(&format!("{pad}- {v}\n")),
                }
            }
        }
        _ => out.push_str(&format!("{pad}{value}\n")),
    }
}

fn family_name(family: Family, m: usize, n: usize) -> String {
    match family {
        Family::Ga => "ga".into(),
        Family::Gm => "gm".into(),
        Family::Gl => format!("gl({m},{n})"),
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Lie { family, m, n } => cmd_lie(cli, *family, *m, *n),
        Command::Dist { family, m, n, max_order } => cmd_dist(cli, *family, *m, *n, *max_order),
        Command::Tangent { family, m, n } => cmd_tangent(cli, *family, *m, *n),
        Command::Verify { suite, family, m, n, max_order } => {
            cmd_verify(cli, *suite, *family, *m, *n, *max_order)
        }
        Command::Info { family, m, n } => cmd_info(cli, *family, *m, *n),
    }
}

fn build_family(
    cli: &Cli,
    family: Family,
    m: Option<usize>,
    n: Option<usize>,
    min_trunc: usize,
) -> Result<(HopfData, usize, usize), String> {
    let trunc = cli.trunc;
    if trunc > MAX_TRUNC {
        return Err(format!("truncation {trunc} exceeds the limit {MAX_TRUNC}"));
    }
    if trunc < min_trunc {
        return Err(format!("this command needs truncation at least {min_trunc}"));
    }
    match family {
        Family::Ga => Ok((build_ga(trunc), 0, 0)),
        Family::Gm => Ok((build_gm(trunc), 0, 0)),
        Family::Gl => {
            let (m, n) = (m.unwrap_or(0), n.unwrap_or(1));
            if m + n == 0 {
                return Err("the general linear family needs m + n ≥ 1".into());
            }
            let size = m + n;
            let tangent_dim = size * size + n * n;
            if tangent_dim > MAX_TANGENT_DIM {
                return Err(format!(
                    "tangent dimension {tangent_dim} exceeds the limit {MAX_TANGENT_DIM}"
                ));
            }
            Ok((build_gl(m, n, trunc), m, n))
        }
    }
}

fn error_outcome(command: &str, parameters: Value, message: String) -> Outcome {
    Outcome {
        command: command.into(),
        parameters,
        status: Status::Error,
        payload: json!({ "error": message }),
        counterexamples: vec![],
    }
}

fn labels_of(l: &RestrictedLie, v: &F2Vec) -> Vec<String> {
    v.ones().map(|i| l.labels()[i].clone()).collect()
}

fn lie_tables(l: &RestrictedLie) -> Value {
    let dim = l.dim();
    let mut d_table = Map::new();
    for i in 0..dim {
        let dv = l.d(&F2Vec::unit(dim, i));
        let entry = match dv.count_ones() {
            0 => Value::Null,
            1 => Value::String(l.labels()[dv.first_one().unwrap()].clone()),
            _ => Value::Array(labels_of(l, &dv).into_iter().map(Value::String).collect()),
        };
        d_table.insert(l.labels()[i].clone(), entry);
    }
    let mut bracket = Map::new();
    for i in 0..dim {
        for j in 0..dim {
            bracket.insert(
                format!("[{},{}]", l.labels()[i], l.labels()[j]),
                Value::Array(
                    labels_of(l, l.bracket_basis(i, j)).into_iter().map(Value::String).collect(),
                ),
            );
        }
    }
    let mut square = Map::new();
    for i in 0..dim {
        let v = F2Vec::unit(dim, i);
        let entry = match l.square(&v) {
            Err(_) => Value::String("undefined".into()),
            Ok(sq) => {
                Value::Array(labels_of(l, &sq).into_iter().map(Value::String).collect())
            }
        };
        square.insert(l.labels()[i].clone(), entry);
    }
    json!({
        "basis": l.labels(),
        "d": d_table,
        "bracket": bracket,
        "square": square,
    })
}

fn cmd_lie(cli: &Cli, family: Family, m: Option<usize>, n: Option<usize>) -> Outcome {
    let parameters = json!({
        "family": family_name(family, m.unwrap_or(0), n.unwrap_or(1)),
        "trunc": cli.trunc,
    });
    let (hopf, _, _) = match build_family(cli, family, m, n, 3) {
        Ok(v) => v,
        Err(e) => return error_outcome("lie", parameters, e),
    };
    let l = match lie_of_group_unchecked(&hopf) {
        Ok(l) => l,
        Err(e) => return error_outcome("lie", parameters, e.to_string()),
    };
    let mut counterexamples = Vec::new();
    for report in [l.verify_lie_axioms(), l.verify_restricted_axioms()] {
        for c in report.checks.iter().filter(|c| !c.passed) {
            counterexamples.push(format!(
                "{}: {}",
                c.name,
                c.counterexample.as_deref().unwrap_or("")
            ));
        }
    }
    Outcome {
        command: "lie".into(),
        parameters,
        status: if counterexamples.is_empty() { Status::Pass } else { Status::Fail },
        payload: lie_tables(&l),
        counterexamples,
    }
}

fn cmd_dist(
    cli: &Cli,
    family: Family,
    m: Option<usize>,
    n: Option<usize>,
    max_order: usize,
) -> Outcome {
    let parameters = json!({
        "family": family_name(family, m.unwrap_or(0), n.unwrap_or(1)),
        "trunc": cli.trunc,
        "max_order": max_order,
    });
    let (hopf, _, _) = match build_family(cli, family, m, n, 2) {
        Ok(v) => v,
        Err(e) => return error_outcome("dist", parameters, e),
    };
    let dist = match DistAlgebra::new(&hopf, max_order) {
        Ok(d) => d,
        Err(e) => return error_outcome("dist", parameters, e.to_string()),
    };
    let alg = hopf.algebra();
    let layers: Vec<Value> = (0..=max_order)
        .map(|k| json!({ "order": k, "dim": dist.layer_dim(k) }))
        .collect();
    // Convolution and commutator on the order-1 layer, labelled by the
    // tangent names with "eta" for the counit.
    let slots = tangent_slots(alg);
    let names = tangent_labels(&hopf);
    let mut layer1: Vec<(String, F2Vec)> = vec![("eta".into(), dist.unit())];
    for (k, &b) in slots.iter().enumerate() {
        layer1.push((names[k].clone(), F2Vec::unit(alg.dim(), b)));
    }
    let render = |v: &F2Vec| -> Vec<String> {
        let mut out = Vec::new();
        if v.get(alg.unit_index()) {
            out.push("eta".into());
        }
        for (k, &b) in slots.iter().enumerate() {
            if v.get(b) {
                out.push(names[k].clone());
            }
        }
        for b in v.ones() {
            if b != alg.unit_index() && !slots.contains(&b) {
                out.push(format!("dual({})", alg.label(b)));
            }
        }
        out
    };
    let mut product = Map::new();
    let mut beta = Map::new();
    for (na, va) in &layer1 {
        for (nb, vb) in &layer1 {
            product.insert(format!("{na}*{nb}"), json!(render(&dist.convolve(va, vb))));
            beta.insert(format!("[{na},{nb}]"), json!(render(&dist.beta(va, vb))));
        }
    }
    Outcome {
        command: "dist".into(),
        parameters,
        status: Status::Pass,
        payload: json!({
            "layers": layers,
            "order_one_basis": layer1.iter().map(|(n, _)| n.clone()).collect::<Vec<_>>(),
            "product": product,
            "beta": beta,
        }),
        counterexamples: vec![],
    }
}

fn cmd_tangent(cli: &Cli, family: Family, m: Option<usize>, n: Option<usize>) -> Outcome {
    let parameters = json!({
        "family": family_name(family, m.unwrap_or(0), n.unwrap_or(1)),
        "trunc": cli.trunc,
    });
    let (hopf, _, _) = match build_family(cli, family, m, n, 2) {
        Ok(v) => v,
        Err(e) => return error_outcome("tangent", parameters, e),
    };
    let (obj, labels) = tangent_object(&hopf);
    let decomposition = obj.decompose();
    let mut d_table = Map::new();
    for (i, label) in labels.iter().enumerate() {
        let dv = obj.d_of_basis(i);
        let entry = match dv.count_ones() {
            0 => Value::Null,
            _ => Value::Array(
                dv.ones().map(|k| Value::String(labels[k].clone())).collect(),
            ),
        };
        d_table.insert(label.clone(), entry);
    }
    let oracle = match enumerate_tangent_oracle(&hopf) {
        Ok(homs) => json!({ "count": homs.len(), "expected": 1u64 << labels.len() }),
        Err(e) => json!({ "skipped": e.to_string() }),
    };
    Outcome {
        command: "tangent".into(),
        parameters,
        status: Status::Pass,
        payload: json!({
            "basis": labels,
            "d": d_table,
            "trivial_summands": decomposition.m,
            "projective_summands": decomposition.n,
            "dual_number_homs": oracle,
        }),
        counterexamples: vec![],
    }
}

fn cmd_info(cli: &Cli, family: Family, m: Option<usize>, n: Option<usize>) -> Outcome {
    let parameters = json!({
        "family": family_name(family, m.unwrap_or(0), n.unwrap_or(1)),
        "trunc": cli.trunc,
    });
    let (hopf, _, _) = match build_family(cli, family, m, n, 2) {
        Ok(v) => v,
        Err(e) => return error_outcome("info", parameters, e),
    };
    let alg = hopf.algebra();
    let (obj, labels) = tangent_object(&hopf);
    let decomposition = obj.decompose();
    let generators: Vec<Value> = hopf
        .generator_formulas()
        .iter()
        .map(|(g, delta, tau)| json!({ "generator": g, "coproduct": delta, "antipode": tau }))
        .collect();
    Outcome {
        command: "info".into(),
        parameters,
        status: Status::Pass,
        payload: json!({
            "algebra_dimension": alg.dim(),
            "cotangent_dimension": labels.len(),
            "lie_dimension": labels.len(),
            "lie_decomposition": format!("{}·k ⊕ {}·P", decomposition.m, decomposition.n),
            "generators": generators,
        }),
        counterexamples: vec![],
    }
}

fn collect(report: &Report, into: &mut Vec<Value>, counterexamples: &mut Vec<String>) {
    let mut checks = Vec::new();
    for c in &report.checks {
        checks.push(json!({ "name": c.name, "passed": c.passed }));
        if !c.passed {
            counterexamples.push(format!(
                "{}/{}: {}",
                report.suite,
                c.name,
                c.counterexample.as_deref().unwrap_or("")
            ));
        }
    }
    into.push(json!({ "suite": report.suite, "passed": report.passed(), "checks": checks }));
}

fn cmd_verify(
    cli: &Cli,
    suite: SuiteName,
    family: Family,
    m: Option<usize>,
    n: Option<usize>,
    max_order: usize,
) -> Outcome {
    let suite_name = match suite {
        SuiteName::Hopf => "hopf",
        SuiteName::Dist => "dist",
        SuiteName::Lie => "lie",
        SuiteName::Restricted => "restricted",
        SuiteName::Universality => "universality",
        SuiteName::Omega => "omega",
        SuiteName::All => "all",
    };
    let parameters = json!({
        "suite": suite_name,
        "family": family_name(family, m.unwrap_or(0), n.unwrap_or(1)),
        "trunc": cli.trunc,
        "max_order": max_order,
    });
    let min_trunc = match suite {
        SuiteName::Hopf => 2,
        SuiteName::Dist | SuiteName::Omega => 2,
        _ => 3,
    };
    let (hopf, _, _) = match build_family(cli, family, m, n, min_trunc) {
        Ok(v) => v,
        Err(e) => return error_outcome("verify", parameters, e),
    };
    let mut reports = Vec::new();
    let mut counterexamples = Vec::new();
    let run_hopf = |reports: &mut Vec<Value>, cx: &mut Vec<String>| {
        collect(&verify_hopf(&hopf), reports, cx);
        collect(&hopf.algebra().verify_commutativity(), reports, cx);
        collect(&hopf.algebra().verify_algebra_laws(), reports, cx);
        for j in 0..hopf.trunc() {
            collect(&verify_delta_filtration(&hopf, j).unwrap(), reports, cx);
        }
        collect(&verify_gr_cocommutative(&hopf), reports, cx);
    };
    let run_dist = |reports: &mut Vec<Value>, cx: &mut Vec<String>| -> Result<(), String> {
        let dist = DistAlgebra::new(&hopf, max_order).map_err(|e| e.to_string())?;
        collect(&dist.verify_identities(), reports, cx);
        Ok(())
    };
    let run_lie = |reports: &mut Vec<Value>, cx: &mut Vec<String>, restricted: bool| -> Result<(), String> {
        let l = lie_of_group_unchecked(&hopf).map_err(|e| e.to_string())?;
        if restricted {
            collect(&l.verify_restricted_axioms(), reports, cx);
        } else {
            collect(&l.verify_lie_axioms(), reports, cx);
        }
        Ok(())
    };
    let run_universality = |reports: &mut Vec<Value>, cx: &mut Vec<String>| -> Result<(), String> {
        collect(&verify_universality(&hopf).map_err(|e| e.to_string())?, reports, cx);
        Ok(())
    };
    let run_omega = |reports: &mut Vec<Value>, cx: &mut Vec<String>| {
        for arity in [2usize, 3] {
            for j in 1..hopf.trunc() {
                if arity + j - 1 <= hopf.trunc() {
                    collect(&omega_filtration_check(&hopf, arity, j).unwrap(), reports, cx);
                }
            }
        }
    };
    let result: Result<(), String> = match suite {
        SuiteName::Hopf => {
            run_hopf(&mut reports, &mut counterexamples);
            Ok(())
        }
        SuiteName::Dist => run_dist(&mut reports, &mut counterexamples),
        SuiteName::Lie => run_lie(&mut reports, &mut counterexamples, false),
        SuiteName::Restricted => run_lie(&mut reports, &mut counterexamples, true),
        SuiteName::Universality => run_universality(&mut reports, &mut counterexamples),
        SuiteName::Omega => {
            run_omega(&mut reports, &mut counterexamples);
            Ok(())
        }
        SuiteName::All => {
            run_hopf(&mut reports, &mut counterexamples);
            run_omega(&mut reports, &mut counterexamples);
            run_dist(&mut reports, &mut counterexamples)
                .and_then(|_| run_lie(&mut reports, &mut counterexamples, false))
                .and_then(|_| run_lie(&mut reports, &mut counterexamples, true))
                .and_then(|_| run_universality(&mut reports, &mut counterexamples))
        }
    };
    if let Err(e) = result {
        return error_outcome("verify", parameters, e);
    }
    Outcome {
        command: "verify".into(),
        parameters,
        status: if counterexamples.is_empty() { Status::Pass } else { Status::Fail },
        payload: json!({ "reports": reports }),
        counterexamples,
    }
}
