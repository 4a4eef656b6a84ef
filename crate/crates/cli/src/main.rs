use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use qkahler::fiber::{basis_bidegree, basis_degree, check_rank, BasisMonomial};
use qkahler::hodge::{certify_posdef, gram, hodge_operator};
use qkahler::lefschetz::{primitive_basis, primitive_dims};
use qkahler::scalar::parse_sample_point;
use qkahler::verify::{self, Suite, VerifyConfig, SCHEMA};
use qkahler::{FiberForm, HodgeMode, Scalar};

#[derive(Parser)]
#[command(name = "qkahler", version, about = "Exact Kähler structure on the quantum projective space fiber algebra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Rank n of CP^n.
    #[arg(short = 'n', long = "rank", default_value_t = 2)]
    n: usize,
    /// Hodge parameter: hq (h=q), h1 (h=1) or numeric:Q0[:H0].
    #[arg(long, default_value = "h=q")]
    mode: String,
    /// Comma-separated positive rationals used for positivity certificates.
    #[arg(long = "q-samples", default_value = "9/10,1,11/10")]
    q_samples: String,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Write the report to a file instead of stdout.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// List basis monomials of one degree or bidegree.
    Basis {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'k', long, conflicts_with = "bidegree")]
        degree: Option<usize>,
        /// Bidegree as `a,b`.
        #[arg(long)]
        bidegree: Option<String>,
    },
    /// Hodge images of the basis monomials of degree at most n.
    Hodge {
        #[command(flatten)]
        common: Common,
    },
    /// Primitive bases per bidegree.
    Primitive {
        #[command(flatten)]
        common: Common,
    },
    /// Gram blocks and positivity certificates.
    Gram {
        #[command(flatten)]
        common: Common,
    },
    /// Run verification suites.
    Verify {
        #[command(flatten)]
        common: Common,
        /// relations, hodge, metric, lids, strings, posdef, cp1-laplacian or all.
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// The zero-form Laplacian eigenvalue on CP^1.
    #[command(name = "laplacian-cp1")]
    LaplacianCp1 {
        #[command(flatten)]
        common: Common,
    },
}

enum Failure {
    Config(String),
    Violation,
}

impl From<qkahler::Error> for Failure {
    fn from(e: qkahler::Error) -> Self {
        Failure::Config(e.to_string())
    }
}

struct Output {
    command: &'static str,
    config: Value,
    results: Vec<Value>,
    failures: Vec<Value>,
    text: String,
}

impl Output {
    fn json(&self) -> Value {
        json!({
            "schema": SCHEMA,
            "command": self.command,
            "config": self.config,
            "results": self.results,
            "failures": self.failures,
        })
    }
}

fn config_of(common: &Common) -> Result<VerifyConfig, Failure> {
    let mode: HodgeMode = common.mode.parse()?;
    let samples = common
        .q_samples
        .split(',')
        .map(|s| parse_sample_point(s.trim()))
        .collect::<qkahler::Result<Vec<_>>>()?;
    Ok(VerifyConfig::new(common.n, mode, samples)?)
}

fn monomial_row(n: usize, m: &BasisMonomial) -> Value {
    json!({"monomial": m.to_string(), "bidegree": [m.bidegree().0, m.bidegree().1], "weight": m.weight(n)})
}

fn cmd_basis(cfg: &VerifyConfig, degree: Option<usize>, bidegree: Option<&str>) -> Result<Output, Failure> {
    let n = cfg.n;
    let (basis, label, selector) = match (degree, bidegree) {
        (Some(k), None) => {
            if k > 2 * n {
                return Err(Failure::Config(format!("degree {k} out of range for n = {n}")));
            }
            (basis_degree(n, k), format!("V^{k}"), json!({"degree": k}))
        }
        (None, Some(s)) => {
            let parsed: Vec<usize> = s
                .split(',')
                .map(|x| x.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|_| Failure::Config(format!("bad bidegree '{s}'")))?;
            let [a, b] = parsed[..] else {
                return Err(Failure::Config(format!("bad bidegree '{s}'")));
            };
            if a > n || b > n {
                return Err(Failure::Config(format!("bidegree ({a},{b}) out of range for n = {n}")));
            }
            (basis_bidegree(n, a, b), format!("V^({a},{b})"), json!({"bidegree": [a, b]}))
        }
        _ => return Err(Failure::Config("give exactly one of -k or --bidegree".into())),
    };
    let mut text = format!("{label} for n = {n}: dimension {}\n", basis.len());
    for m in &basis {
        let w: Vec<String> = m.weight(n).iter().map(i64::to_string).collect();
        text.push_str(&format!("  {m}  weight ({})\n", w.join(",")));
    }
    let mut config = json!({"n": n});
    config["select"] = selector;
    Ok(Output {
        command: "basis",
        config,
        results: vec![json!({"dimension": basis.len(), "monomials": basis.iter().map(|m| monomial_row(n, m)).collect::<Vec<_>>()})],
        failures: Vec::new(),
        text,
    })
}

fn cmd_hodge(cfg: &VerifyConfig) -> Result<Output, Failure> {
    let n = cfg.n;
    let star = hodge_operator(n, &cfg.mode)?;
    let mut text = format!("Hodge map, n = {n}, {}\n", cfg.mode);
    let mut results = Vec::new();
    for k in 0..=n {
        for m in basis_degree(n, k) {
            let img = star.apply(&FiberForm::monomial(n, m, Scalar::one()))?;
            text.push_str(&format!("*({m}) = {img}\n"));
            results.push(json!({"input": m.to_string(), "image": img.to_string()}));
        }
    }
    Ok(Output { command: "hodge", config: cfg.to_json(), results, failures: Vec::new(), text })
}

fn cmd_primitive(cfg: &VerifyConfig) -> Result<Output, Failure> {
    let n = cfg.n;
    let mut text = format!("Primitive forms, n = {n}\n");
    let mut results = Vec::new();
    for ((a, b), dim) in primitive_dims(n)? {
        let basis = primitive_basis(n, a, b)?;
        text.push_str(&format!("P^({a},{b}): dimension {dim}\n"));
        for p in basis.iter() {
            text.push_str(&format!("  {p}\n"));
        }
        results.push(json!({
            "bidegree": [a, b],
            "dimension": dim,
            "basis": basis.iter().map(FiberForm::to_string).collect::<Vec<_>>(),
        }));
    }
    Ok(Output { command: "primitive", config: json!({"n": n}), results, failures: Vec::new(), text })
}

fn cmd_gram(cfg: &VerifyConfig) -> Result<Output, Failure> {
    let n = cfg.n;
    let mut text = format!("Gram blocks, n = {n}, {}\n", cfg.mode);
    let mut results = Vec::new();
    let mut failures = Vec::new();
    for a in 0..=n {
        for b in 0..=n {
            let g = gram(n, a, b, &cfg.mode)?;
            text.push_str(&format!("({a},{b}) basis [{}]\n", g.basis.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(", ")));
            text.push_str(&g.matrix.to_string());
            let mut certs = Vec::new();
            for q0 in &cfg.q_samples {
                let c = certify_posdef(&g, q0)?;
                let verdict = if c.verdict() { "PASS" } else { "FAIL" };
                text.push_str(&format!("  positive definite at q = {q0}: {verdict}\n"));
                if !c.verdict() {
                    failures.push(c.to_json());
                }
                certs.push(c.to_json());
            }
            let mut entry = g.to_json();
            entry["certificates"] = json!(certs);
            results.push(entry);
        }
    }
    Ok(Output { command: "gram", config: cfg.to_json(), results, failures, text })
}

fn from_report(command: &'static str, r: &verify::Report) -> Output {
    Output {
        command,
        config: r.config.clone(),
        results: r.results.iter().map(|c| c.to_json()).collect(),
        failures: r.failures().map(|c| c.to_json()).collect(),
        text: r.to_text(),
    }
}

fn cmd_verify(cfg: &VerifyConfig, suite: &str) -> Result<Output, Failure> {
    let suites = Suite::parse_selection(suite)?;
    let report = verify::run(cfg, &suites)?;
    Ok(from_report("verify", &report))
}

fn cmd_laplacian(cfg: &VerifyConfig) -> Result<Output, Failure> {
    let mut report = verify::run(cfg, &[Suite::Cp1Laplacian])?;
    report.config = json!({});
    Ok(from_report("laplacian-cp1", &report))
}

fn run(cli: Cli) -> Result<(), Failure> {
    let common = match &cli.command {
        Command::Basis { common, .. }
        | Command::Hodge { common }
        | Command::Primitive { common }
        | Command::Gram { common }
        | Command::Verify { common, .. }
        | Command::LaplacianCp1 { common } => common.clone(),
    };
    check_rank(common.n).map_err(|e| Failure::Config(e.to_string()))?;
    let cfg = config_of(&common)?;
    let out = match &cli.command {
        Command::Basis { degree, bidegree, .. } => cmd_basis(&cfg, *degree, bidegree.as_deref())?,
        Command::Hodge { .. } => cmd_hodge(&cfg)?,
        Command::Primitive { .. } => cmd_primitive(&cfg)?,
        Command::Gram { .. } => cmd_gram(&cfg)?,
        Command::Verify { suite, .. } => cmd_verify(&cfg, suite)?,
        Command::LaplacianCp1 { .. } => cmd_laplacian(&cfg)?,
    };
    let rendered = if common.json {
        let mut s = serde_json::to_string_pretty(&out.json()).expect("serialisable");
        s.push('\n');
        s
    } else {
        out.text.clone()
    };
    match &common.out {
        Some(path) => fs::write(path, rendered).map_err(|e| Failure::Config(format!("{path}: {e}")))?,
        None => print!("{rendered}"),
    }
    if out.failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Violation)
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation) => ExitCode::from(1),
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
