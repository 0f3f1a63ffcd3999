use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use schurpf::lgv::build_network;
use schurpf::operators::{self, Method, Operator};
use schurpf::pfaffian::{expand_in_q_basis, skew_pf};
use schurpf::ring::packed::{PackedPoly, VarTable};
use schurpf::schubert::{vexillary_expansion, vexillary_tableau_expansion, w321_expansion, w321_tableau_expansion, W321Data};
use schurpf::schur::{determinant_cutoff, expand_in_schur_basis, schur_det};
use schurpf::series::parse_series;
use schurpf::shapes::Triple;
use schurpf::tableaux::{figure1, flagged_count, flagged_tableaux, flagged_weight_sum, FlagData};
use schurpf::verify::{self, Report};
use schurpf::{ChernSeries, Error};

#[derive(Parser)]
#[command(name = "schurpf", version, about = "Schur determinants, pseudo-pfaffians, tableaux and lattice paths")]
struct Cli {
    /// Print compact single-line JSON instead of indented JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expand S_{λ/μ}(a(•)·c) in the basis S_ν(c).
    ExpandSchur(ExpandArgs),
    /// Expand Pf_{λ/μ}(a(•)·c) in the basis Q_ν.
    ExpandPfaffian(ExpandArgs),
    /// Expand the polynomial of a vexillary triple in the basis S_λ(c).
    Vexillary(VexArgs),
    /// Expand the polynomial of a 321-avoiding permutation in the basis S_λ(c).
    W321(W321Args),
    /// Count and weigh the flagged tableaux of an instance.
    Tableaux(InstanceArgs),
    /// Count and weigh the non-intersecting path families of an instance.
    Paths(InstanceArgs),
    /// Apply an operator to S_λ(c) (type A) or Q_λ (type C).
    Operator(OperatorArgs),
    /// Run one identity suite and report failures.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct ExpandArgs {
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    /// Defaults to all zeros.
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    /// Row series; give one for all rows or one per row. Defaults to 1.
    #[arg(long = "a")]
    a: Vec<String>,
    /// Do not multiply the row series by the generic series c.
    #[arg(long)]
    no_c: bool,
    #[arg(long)]
    cutoff: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExpansionMethod {
    Determinant,
    Tableaux,
}

#[derive(Args)]
struct VexArgs {
    #[arg(long, allow_hyphen_values = true)]
    p: String,
    #[arg(long, allow_hyphen_values = true)]
    q: String,
    /// Defaults to 1, 2, …, n (a complete triple).
    #[arg(long)]
    k: Option<String>,
    #[arg(long, value_enum, default_value = "determinant")]
    method: ExpansionMethod,
}

#[derive(Args)]
struct W321Args {
    #[arg(long, allow_hyphen_values = true)]
    p: String,
    #[arg(long, allow_hyphen_values = true)]
    q: String,
    #[arg(long, value_enum, default_value = "determinant")]
    method: ExpansionMethod,
}

#[derive(Args)]
struct InstanceArgs {
    /// Use the large worked instance with seven rows.
    #[arg(long)]
    figure1: bool,
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    q: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    /// Include the full weight sum even for the large instance.
    #[arg(long)]
    full: bool,
    /// Number of tableaux to list.
    #[arg(long, default_value_t = 10)]
    list: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum OpName {
    S0,
    Partial0,
    Gamma,
    Theta,
    CS0,
    CPartial0,
}

#[derive(Clone, Copy, ValueEnum)]
enum OpMethod {
    Direct,
    ClosedForm,
}

#[derive(Args)]
struct OperatorArgs {
    #[arg(long, value_enum)]
    op: OpName,
    #[arg(long)]
    lambda: String,
    /// Shift for `gamma`.
    #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
    m: i64,
    #[arg(long, value_enum, default_value = "direct")]
    method: OpMethod,
}

#[derive(Clone, Copy, ValueEnum)]
enum Identity {
    Theorem1,
    Example,
    Figure1,
    Figure1Points,
    Flagged,
    Theorem5,
    Reorder,
    Linearity,
    Shifted,
    Classical,
    TypeC,
    TypeA,
    Vexillary,
    W321,
    Molev,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    identity: Identity,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    max_entry: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    min_entry: Option<i64>,
    #[arg(long)]
    factors: Option<usize>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 50)]
    instances: usize,
    #[arg(long)]
    cutoff: Option<usize>,
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn parse_list(name: &str, s: &str) -> Result<Vec<i64>, Failure> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|v| v.trim().parse::<i64>().map_err(|_| Failure::Input(format!("--{name}: '{v}' is not an integer"))))
        .collect()
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn row_series(args: &ExpandArgs, n: usize, cutoff: usize) -> Result<Vec<ChernSeries>, Failure> {
    let srcs: Vec<String> = match args.a.len() {
        0 => vec!["1".into(); n],
        1 => vec![args.a[0].clone(); n],
        k if k == n => args.a.clone(),
        k => return Err(Failure::Input(format!("--a given {k} times for {n} rows"))),
    };
    let c = ChernSeries::generic(cutoff);
    srcs.iter()
        .map(|s| {
            let a = parse_series(s, cutoff)?;
            Ok(if args.no_c { a } else { a.mul(&c)? })
        })
        .collect()
}

fn expand(args: &ExpandArgs, pfaffian: bool) -> Result<Value, Failure> {
    let lambda = parse_list("lambda", &args.lambda)?;
    let n = lambda.len();
    let mu = match &args.mu {
        Some(m) => parse_list("mu", m)?,
        None => vec![0; n],
    };
    if mu.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: mu.len() }.into());
    }
    let cutoff = args.cutoff.unwrap_or_else(|| {
        let spread = lambda.iter().chain(&mu).map(|v| v.abs()).sum::<i64>() as usize + n + 2;
        spread.max(determinant_cutoff(&lambda, &mu))
    });
    let rows = row_series(args, n, cutoff)?;
    let (basis, expansion) = if pfaffian {
        ("Q", expand_in_q_basis(&skew_pf(&lambda, &mu, &rows)?)?)
    } else {
        ("S", expand_in_schur_basis(&schur_det(&lambda, &mu, &rows)?))
    };
    Ok(json!({
        "lambda": lambda,
        "mu": mu,
        "series": rows.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        "basis": basis,
        "expansion": to_json(&expansion),
    }))
}

fn vexillary(args: &VexArgs) -> Result<Value, Failure> {
    let p = parse_list("p", &args.p)?;
    let q = parse_list("q", &args.q)?;
    let tau = match &args.k {
        Some(k) => Triple::new(parse_list("k", k)?, p, q)?,
        None => Triple::complete(p, q)?,
    };
    let e = match args.method {
        ExpansionMethod::Determinant => vexillary_expansion(&tau)?,
        ExpansionMethod::Tableaux => vexillary_tableau_expansion(&tau)?,
    };
    Ok(json!({
        "k": tau.k,
        "p": tau.p,
        "q": tau.q,
        "partition": tau.partition(),
        "expansion": to_json(&e),
    }))
}

fn w321(args: &W321Args) -> Result<Value, Failure> {
    let w = W321Data::new(parse_list("p", &args.p)?, parse_list("q", &args.q)?)?;
    let e = match args.method {
        ExpansionMethod::Determinant => w321_expansion(&w)?,
        ExpansionMethod::Tableaux => w321_tableau_expansion(&w)?,
    };
    Ok(json!({ "p": w.p, "q": w.q, "kappa": w.kappa(), "rho": w.rho(), "expansion": to_json(&e) }))
}

struct Instance {
    flags: FlagData,
    lambda: Vec<i64>,
    mu: Vec<i64>,
    large: bool,
}

fn instance(args: &InstanceArgs) -> Result<Instance, Failure> {
    if args.figure1 {
        return Ok(Instance {
            flags: figure1::flags(),
            lambda: figure1::LAMBDA.to_vec(),
            mu: figure1::MU.to_vec(),
            large: true,
        });
    }
    let need = |name: &str, v: &Option<String>| -> Result<Vec<i64>, Failure> {
        match v {
            Some(s) => parse_list(name, s),
            None => Err(Failure::Input(format!("--{name} is required without --figure1"))),
        }
    };
    let flags = FlagData::new(need("p", &args.p)?, need("q", &args.q)?)?;
    let n = flags.len();
    let lambda = match &args.lambda {
        Some(s) => parse_list("lambda", s)?,
        None => (1..=n).map(|i| flags.base(i)).collect(),
    };
    let mu = match &args.mu {
        Some(s) => parse_list("mu", s)?,
        None => vec![0; n],
    };
    Ok(Instance { flags, lambda, mu, large: false })
}

fn tableaux(args: &InstanceArgs) -> Result<Value, Failure> {
    let inst = instance(args)?;
    let (lambda, mu, flags) = (&inst.lambda, &inst.mu, &inst.flags);
    let count = flagged_count(lambda, mu, flags)?;
    let listed: Vec<Value> = flagged_tableaux(lambda, mu, flags)?
        .take(args.list)
        .map(|t| json!({ "rows": to_json(&t), "weight": t.weight().to_string() }))
        .collect();
    let mut out = json!({
        "p": flags.p,
        "q": flags.q,
        "lambda": lambda,
        "mu": mu,
        "count": count.to_string(),
        "tableaux": listed,
    });
    if inst.large {
        let shown = figure1::displayed();
        let rows: Vec<String> = (0..shown.rows.len())
            .map(|i| {
                let mut one = shown.clone();
                one.rows.iter_mut().enumerate().filter(|(j, _)| *j != i).for_each(|(_, r)| r.clear());
                one.weight().to_string()
            })
            .collect();
        out["displayed"] = json!({ "rows": to_json(&shown), "weight": shown.weight().to_string(), "row_weights": rows });
    }
    if !inst.large || args.full {
        let sum = if inst.large {
            let (tab, _) = verify::figure1_symbolic();
            figure1_table().unpack(&tab)
        } else {
            flagged_weight_sum(lambda, mu, flags)?
        };
        out["weight_sum_terms"] = json!(sum.len());
        out["weight_sum"] = json!(sum.to_string());
    }
    Ok(out)
}

fn figure1_table() -> VarTable {
    let mut vars: Vec<schurpf::Var> = (1..=6).map(schurpf::Var::X).collect();
    vars.extend((1..=9).map(schurpf::Var::Y));
    VarTable::new(vars)
}

fn paths(args: &InstanceArgs) -> Result<Value, Failure> {
    let inst = instance(args)?;
    let net = build_network(&inst.flags, &inst.lambda, &inst.mu)?;
    let families = net.family_weight_sum_with(&|_| PackedPoly::one());
    let families = VarTable::new(Vec::new()).unpack(&families).as_constant().unwrap_or_default();
    let mut out = json!({
        "p": inst.flags.p,
        "q": inst.flags.q,
        "lambda": inst.lambda,
        "mu": inst.mu,
        "paths": net.len(),
        "families": families.to_string(),
    });
    if !inst.large || args.full {
        let sum = if inst.large {
            let (_, paths) = verify::figure1_symbolic();
            figure1_table().unpack(&paths)
        } else {
            net.family_weight_sum()
        };
        out["weight_sum_terms"] = json!(sum.len());
        out["weight_sum"] = json!(sum.to_string());
    }
    Ok(out)
}

fn operator(args: &OperatorArgs) -> Result<Value, Failure> {
    let lambda = parse_list("lambda", &args.lambda)?;
    let op = match args.op {
        OpName::S0 => Operator::TypeAS0,
        OpName::Partial0 => Operator::TypeAPartial0,
        OpName::Gamma => Operator::Gamma(args.m),
        OpName::Theta => Operator::Theta,
        OpName::CS0 => Operator::TypeCS0,
        OpName::CPartial0 => Operator::TypeCPartial0,
    };
    let method = match args.method {
        OpMethod::Direct => Method::Direct,
        OpMethod::ClosedForm => Method::ClosedForm,
    };
    let r = operators::evaluate(op, &lambda, method)?;
    let basis = if matches!(op, Operator::TypeCS0 | Operator::TypeCPartial0) { "Q" } else { "S" };
    Ok(json!({
        "op": format!("{op:?}"),
        "lambda": lambda,
        "method": to_json(&r.method),
        "basis": basis,
        "expansion": to_json(&r.expansion),
    }))
}

fn run_verify(a: &VerifyArgs) -> Result<Report, Failure> {
    let n = |d: usize| a.n.unwrap_or(d);
    let hi = |d: i64| a.max_entry.unwrap_or(d);
    let factors = a.factors.unwrap_or(2);
    if factors > 2 {
        return Err(Failure::Input("--factors must be at most 2".into()));
    }
    Ok(match a.identity {
        Identity::Theorem1 => verify::theorem1(n(3), a.min_entry.unwrap_or(-2), hi(4), factors, a.seed),
        Identity::Example => verify::example_431_report(),
        Identity::Figure1 => verify::figure1_symbolic_report(),
        Identity::Figure1Points => {
            let seeds: Vec<u64> = (a.seed..a.seed + 5).collect();
            verify::figure1_points_report(&seeds)
        }
        Identity::Flagged => verify::flagged_sweep(n(4), hi(4)),
        Identity::Theorem5 => verify::theorem5(n(4), hi(4), factors, a.seed),
        Identity::Reorder => verify::reorder_lemma(hi(7)),
        Identity::Linearity => verify::linearity_lemma(a.instances, a.seed),
        Identity::Shifted => verify::shifted_tableaux(hi(5), n(2) as i64, a.cutoff.unwrap_or(5)),
        Identity::Classical => verify::classical_reduction(hi(8)),
        Identity::TypeC => verify::type_c_operators(hi(8)),
        Identity::TypeA => verify::type_a_operators(hi(6)),
        Identity::Vexillary => verify::vexillary_suite(n(3), hi(3)),
        Identity::W321 => verify::w321_suite(n(3), hi(3)),
        Identity::Molev => verify::molev_suite(n(3), hi(4)),
    })
}

fn emit(v: &Value, compact: bool) {
    let s = if compact { serde_json::to_string(v) } else { serde_json::to_string_pretty(v) };
    println!("{}", s.expect("serializable"));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.render().to_string();
            emit(&json!({ "error": "invalid input", "message": msg.trim() }), true);
            return ExitCode::from(1);
        }
    };
    std::panic::set_hook(Box::new(|_| {}));
    let outcome = std::panic::catch_unwind(|| -> Result<Value, Failure> {
        match &cli.command {
            Command::ExpandSchur(a) => expand(a, false),
            Command::ExpandPfaffian(a) => expand(a, true),
            Command::Vexillary(a) => vexillary(a),
            Command::W321(a) => w321(a),
            Command::Tableaux(a) => tableaux(a),
            Command::Paths(a) => paths(a),
            Command::Operator(a) => operator(a),
            Command::Verify(a) => {
                let r = run_verify(a)?;
                if r.passed {
                    Ok(to_json(&r))
                } else {
                    emit(&to_json(&r), cli.json);
                    Err(Failure::Internal(format!("{} failed on {} of {} instances", r.identity, r.failed, r.instances)))
                }
            }
        }
    })
    .unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        Err(Failure::Internal(msg))
    });
    match outcome {
        Ok(v) => {
            emit(&v, cli.json);
            ExitCode::SUCCESS
        }
        Err(Failure::Input(m)) => {
            emit(&json!({ "error": "invalid input", "message": m }), true);
            ExitCode::from(1)
        }
        Err(Failure::Internal(m)) => {
            emit(&json!({ "error": "internal assertion failure", "message": m }), true);
            ExitCode::from(2)
        }
    }
}
