//! `mfk`: command-line front end for exact matrix-factorization computations.
//!
//! Results go to stdout as a JSON envelope `{command, config, result, ...}`
//! (or its plain-text rendering). Commands producing a factorization or a
//! morphism add it under `factorization` or `morphism`; every input reader
//! accepts such envelopes. Exit codes: 0 on success, 1 on a domain error
//! or failed check (error JSON on stderr), 2 on a usage error.

mod input;
mod render;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mfk_core::clifford::{abs_class, beh_theta, classify, default_vars, DiagonalForm};
use mfk_core::exactalg::{milnor_report, parse_poly, Mode, WeightSystem};
use mfk_core::homotopy::{
    default_bound, find_homotopy_equivalence, find_null_homotopy, hom_homology_dims, OddMap, DEFAULT_WINDOW_CAP,
};
use mfk_core::knoerrer::{knorrer, verify_companion_endomorphisms, verify_periodicity_diagram_quadratic, KnoerrerKind};
use mfk_core::mfcore::{koszul_stabilization, strip_trivial_summands_with_maps, tensor, MorphismJson, PolyMatrix};
use mfk_core::theta::theta_with_cap;
use mfk_core::{MFMorphism, MatrixFactorization};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "mfk", version, about = "Exact matrix-factorization calculus")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    /// Total-degree bound for ungraded homotopy searches.
    #[arg(long, global = true, env = "MFK_DEGREE_BOUND")]
    degree_bound: Option<u32>,
    /// Maximum number of internal degrees scanned by degreewise solvers.
    #[arg(long, global = true, default_value_t = DEFAULT_WINDOW_CAP)]
    window_cap: usize,
    /// Requested worker count; the solvers currently run on one thread.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum ModeArg {
    Rational,
    Gaussian,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Rational => Mode::Rational,
            ModeArg::Gaussian => Mode::Gaussian,
        }
    }
}

#[derive(Args, Debug, Clone)]
struct WeightArgs {
    /// Comma-separated variable weights.
    #[arg(long, allow_hyphen_values = true)]
    weights: Option<String>,
    /// Weighted degree of f.
    #[arg(long)]
    degree: Option<u32>,
}

impl WeightArgs {
    fn resolve(&self) -> Result<Option<WeightSystem>, Failure> {
        match (&self.weights, self.degree) {
            (None, None) => Ok(None),
            (Some(w), Some(d)) => {
                let ws = input::split_list(w)
                    .iter()
                    .map(|t| {
                        t.parse::<u32>()
                            .map_err(|_| Failure::usage(format!("bad weight '{t}'")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Some(WeightSystem::new(ws, d)?))
            }
            _ => Err(Failure::usage("--weights and --degree go together")),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check d1·d0 = d0·d1 = f·I and the grading.
    Validate { file: String },
    /// The shift (-d0, -d1).
    Shift { file: String },
    /// Mapping cone of a morphism between two factorizations.
    Cone {
        source: String,
        target: String,
        /// Morphism JSON with blocks `a1`, `a0`.
        #[arg(long)]
        morphism: String,
    },
    /// Direct sum.
    Sum { a: String, b: String },
    /// Tensor product over disjoint variable sets.
    Tensor { a: String, b: String },
    /// Koszul stabilization of f = Σ g_i x_i.
    Stabilize {
        /// Comma-separated variables.
        #[arg(long)]
        vars: String,
        /// The polynomial f.
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        /// One `g:var` pair per term, repeated.
        #[arg(long = "term", required = true, allow_hyphen_values = true)]
        terms: Vec<String>,
        /// Coefficient field: rational (ℚ) or gaussian (ℚ(i)).
        #[arg(long, value_enum, default_value_t = ModeArg::Rational)]
        mode: ModeArg,
        #[command(flatten)]
        weights: WeightArgs,
    },
    /// Remove trivial summands by unit-entry elimination.
    Strip { file: String },
    /// Degreewise homology of Hom(P, P') (P' defaults to P).
    Homology { a: String, b: Option<String> },
    /// Search for h with α = ∂h.
    NullHomotopy {
        source: String,
        target: String,
        #[arg(long)]
        morphism: String,
    },
    /// Search for a verified homotopy equivalence.
    Equiv { a: String, b: String },
    /// Structure of Cliff(q) for a diagonal unit form.
    CliffordClassify {
        /// Comma-separated coefficients, each +1 or -1.
        #[arg(long, allow_hyphen_values = true)]
        form: String,
        /// Coefficient field: rational (ℚ) or gaussian (ℚ(i)).
        #[arg(long, value_enum, default_value_t = ModeArg::Rational)]
        mode: ModeArg,
    },
    /// The factorization Θ(M) of a graded Clifford module.
    Beh {
        module: String,
        /// Comma-separated variable names (default x1, ..., xn).
        #[arg(long)]
        vars: Option<String>,
    },
    /// ABS class of a module over Cliff(-Σ x_i^2) (any unit form when gaussian).
    AbsClass { module: String },
    /// Complex Knörrer functor P ↦ P ⊗ (u+iv, u-iv).
    Knorrer { file: String },
    /// Real Knörrer functor P ↦ P ⊗ X8.
    KnorrerReal8 {
        file: String,
        /// Use +Σ u_i^2 instead of -Σ u_i^2.
        #[arg(long)]
        positive: bool,
    },
    /// Endomorphism homology of X8 (or of Y with --complex); expects (1, 0).
    VerifyX8 {
        /// Check the complex companion Y instead.
        #[arg(long)]
        complex: bool,
    },
    /// Class-level Knörrer/Bott compatibility for a Clifford module.
    VerifyPeriodicity {
        module: String,
        /// Real mode: use +Σ u_i^2.
        #[arg(long)]
        positive: bool,
    },
    /// Hochster theta pairing of two graded factorizations.
    Theta { a: String, b: String },
    /// Milnor number of a quasi-homogeneous isolated singularity.
    Milnor {
        /// The polynomial f.
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        /// Comma-separated variables (default: order of appearance in f).
        #[arg(long)]
        vars: Option<String>,
        /// Coefficient field: rational (ℚ) or gaussian (ℚ(i)).
        #[arg(long, value_enum, default_value_t = ModeArg::Rational)]
        mode: ModeArg,
        #[command(flatten)]
        weights: WeightArgs,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Shift { .. } => "shift",
            Command::Cone { .. } => "cone",
            Command::Sum { .. } => "sum",
            Command::Tensor { .. } => "tensor",
            Command::Stabilize { .. } => "stabilize",
            Command::Strip { .. } => "strip",
            Command::Homology { .. } => "homology",
            Command::NullHomotopy { .. } => "null-homotopy",
            Command::Equiv { .. } => "equiv",
            Command::CliffordClassify { .. } => "clifford-classify",
            Command::Beh { .. } => "beh",
            Command::AbsClass { .. } => "abs-class",
            Command::Knorrer { .. } => "knorrer",
            Command::KnorrerReal8 { .. } => "knorrer-real8",
            Command::VerifyX8 { .. } => "verify-x8",
            Command::VerifyPeriodicity { .. } => "verify-periodicity",
            Command::Theta { .. } => "theta",
            Command::Milnor { .. } => "milnor",
        }
    }

    fn inputs(&self) -> Vec<String> {
        match self {
            Command::Validate { file }
            | Command::Shift { file }
            | Command::Strip { file }
            | Command::Knorrer { file }
            | Command::KnorrerReal8 { file, .. } => vec![file.clone()],
            Command::Cone {
                source,
                target,
                morphism,
            }
            | Command::NullHomotopy {
                source,
                target,
                morphism,
            } => vec![source.clone(), target.clone(), morphism.clone()],
            Command::Sum { a, b } | Command::Tensor { a, b } | Command::Equiv { a, b } | Command::Theta { a, b } => {
                vec![a.clone(), b.clone()]
            }
            Command::Homology { a, b } => std::iter::once(a.clone()).chain(b.clone()).collect(),
            Command::Beh { module, .. } | Command::AbsClass { module } | Command::VerifyPeriodicity { module, .. } => {
                vec![module.clone()]
            }
            Command::Stabilize { .. }
            | Command::CliffordClassify { .. }
            | Command::VerifyX8 { .. }
            | Command::Milnor { .. } => Vec::new(),
        }
    }
}

/// A failed run: exit code plus the error document for stderr.
#[derive(Debug)]
pub struct Failure {
    code: u8,
    error: Box<Value>,
    /// Report to print on stdout anyway (failed checks).
    report: Option<Box<Value>>,
}

impl Failure {
    pub fn io(msg: String) -> Self {
        Failure {
            code: 1,
            error: Box::new(json!({ "kind": "io", "message": msg })),
            report: None,
        }
    }

    fn usage(msg: impl Into<String>) -> Self {
        Failure {
            code: 2,
            error: Box::new(json!({ "kind": "usage", "message": msg.into() })),
            report: None,
        }
    }

    fn check_failed(msg: impl Into<String>, report: Value) -> Self {
        Failure {
            code: 1,
            error: Box::new(json!({ "kind": "check_failed", "message": msg.into() })),
            report: Some(Box::new(report)),
        }
    }
}

impl From<mfk_core::Error> for Failure {
    fn from(e: mfk_core::Error) -> Self {
        Failure {
            code: 1,
            error: Box::new(e.to_json()),
            report: None,
        }
    }
}

/// What a subcommand produced, before wrapping in the envelope.
#[derive(Default)]
struct Outcome {
    result: Value,
    factorization: Option<MatrixFactorization>,
    morphism: Option<Value>,
    /// Message when a check in the result failed.
    failed: Option<String>,
}

impl Outcome {
    fn result(result: Value) -> Self {
        Outcome {
            result,
            ..Default::default()
        }
    }

    fn factorization(p: MatrixFactorization, result: Value) -> Self {
        Outcome {
            result,
            factorization: Some(p),
            ..Default::default()
        }
    }

    fn check(mut self, ok: bool, msg: &str) -> Self {
        if !ok {
            self.failed = Some(msg.into());
        }
        self
    }
}

fn summary(p: &MatrixFactorization) -> Value {
    json!({
        "mode": p.mode.as_str(),
        "vars": p.vars,
        "f": p.f.to_string_with(&p.vars),
        "rank1": p.rank1(),
        "rank0": p.rank0(),
        "graded": p.is_graded(),
    })
}

fn print_matrix(m: &PolyMatrix, vars: &[String]) -> Value {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| m.get(i, j).to_string_with(vars))
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .into()
}

fn odd_map_json(h: &OddMap, vars: &[String]) -> Value {
    json!({ "h1": print_matrix(&h.h1, vars), "h0": print_matrix(&h.h0, vars) })
}

fn morphism_json(m: &MFMorphism) -> Value {
    serde_json::to_value(MorphismJson::from_morphism(m)).expect("serializable")
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn run(cmd: &Command, g: &Global) -> Result<Outcome, Failure> {
    use input::{factorization as load, module as load_module};
    Ok(match cmd {
        Command::Validate { file } => {
            let p = load(file)?;
            let r = p.validate();
            let ok = r.valid;
            Outcome::result(to_value(&r)).check(ok, "factorization is not valid")
        }
        Command::Shift { file } => {
            let s = load(file)?.shift();
            Outcome::factorization(s.clone(), summary(&s))
        }
        Command::Cone {
            source,
            target,
            morphism,
        } => {
            let (p, q) = (load(source)?, load(target)?);
            let c = input::morphism(morphism, &p, &q)?.cone()?;
            Outcome::factorization(c.clone(), summary(&c))
        }
        Command::Sum { a, b } => {
            let s = load(a)?.direct_sum(&load(b)?)?;
            Outcome::factorization(s.clone(), summary(&s))
        }
        Command::Tensor { a, b } => {
            let t = tensor(&load(a)?, &load(b)?)?;
            Outcome::factorization(t.clone(), summary(&t))
        }
        Command::Stabilize {
            vars,
            f,
            terms,
            mode,
            weights,
        } => {
            let vars = input::split_list(vars);
            let mode = Mode::from(*mode);
            let fp = parse_poly(f, &vars, mode)?;
            let mut dec = Vec::new();
            for t in terms {
                let (gs, v) = t
                    .rsplit_once(':')
                    .ok_or_else(|| Failure::usage(format!("term '{t}' is not of the form g:var")))?;
                let idx = vars
                    .iter()
                    .position(|x| x == v.trim())
                    .ok_or_else(|| Failure::usage(format!("unknown variable '{v}' in term '{t}'")))?;
                dec.push((parse_poly(gs, &vars, mode)?, idx));
            }
            let w = weights.resolve()?;
            let e = koszul_stabilization(&fp, &vars, mode, &dec, w.as_ref())?;
            Outcome::factorization(e.clone(), summary(&e))
        }
        Command::Strip { file } => {
            let p = load(file)?;
            let s = strip_trivial_summands_with_maps(&p);
            let mut r = summary(&s.reduced);
            r["removed"] = s.removed.into();
            Outcome::factorization(s.reduced, r)
        }
        Command::Homology { a, b } => {
            let p = load(a)?;
            let q = match b {
                Some(b) => load(b)?,
                None => p.clone(),
            };
            let t = hom_homology_dims(&p, &q, g.window_cap)?;
            Outcome::result(to_value(&t))
        }
        Command::NullHomotopy {
            source,
            target,
            morphism,
        } => {
            let (p, q) = (load(source)?, load(target)?);
            let alpha = input::morphism(morphism, &p, &q)?;
            let bound = g.degree_bound;
            let r = find_null_homotopy(&alpha, bound)?;
            let result = json!({
                "found": r.homotopy.is_some(),
                "method": to_value(&r.method),
                "homotopy": r.homotopy.as_ref().map(|h| odd_map_json(h, &p.vars)),
                "conclusive": r.homotopy.is_some() || matches!(r.method, mfk_core::homotopy::SearchMethod::Graded),
            });
            Outcome::result(result)
        }
        Command::Equiv { a, b } => {
            let (p, q) = (load(a)?, load(b)?);
            let r = find_homotopy_equivalence(&p, &q, g.degree_bound)?;
            let tried: Vec<Value> = r.tried.iter().map(to_value).collect();
            let result = match &r.certificate {
                Some(c) => json!({
                    "found": true,
                    "verified": c.verify(),
                    "tried": tried,
                    "alpha": morphism_json(&c.alpha),
                    "beta": morphism_json(&c.beta),
                    "h": odd_map_json(&c.h, &p.vars),
                    "h_prime": odd_map_json(&c.h_prime, &q.vars),
                }),
                None => json!({
                    "found": false,
                    "tried": tried,
                    "default_bound": default_bound(&p, &q),
                    "note": "no certificate within the searched degrees; this does not prove inequivalence",
                }),
            };
            let mut o = Outcome::result(result);
            o.morphism = r.certificate.as_ref().map(|c| morphism_json(&c.alpha));
            o
        }
        Command::CliffordClassify { form, mode } => {
            let coeffs = input::split_list(form)
                .iter()
                .map(|t| {
                    t.parse::<i64>()
                        .map_err(|_| Failure::usage(format!("bad coefficient '{t}'")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let q = DiagonalForm::from_ints(Mode::from(*mode), &coeffs)?;
            let t = classify(&q)?;
            Outcome::result(json!({
                "n": q.n(),
                "algebra": t.to_string(),
                "type": to_value(&t),
            }))
        }
        Command::Beh { module, vars } => {
            let m = load_module(module)?;
            let vars = match vars {
                Some(v) => input::split_list(v),
                None => default_vars("x", m.n()),
            };
            let p = beh_theta(&m, &vars)?;
            Outcome::factorization(p.clone(), summary(&p))
        }
        Command::AbsClass { module } => {
            let m = load_module(module)?;
            let c = abs_class(&m)?;
            let mut r = to_value(&c);
            r["group_name"] = c.group_name().into();
            r["is_zero"] = c.is_zero().into();
            r["is_free_generator"] = c.is_free_generator().into();
            Outcome::result(r)
        }
        Command::Knorrer { file } | Command::KnorrerReal8 { file, .. } => {
            let kind = match cmd {
                Command::KnorrerReal8 { positive, .. } => KnoerrerKind::Real8 { positive: *positive },
                _ => KnoerrerKind::Complex,
            };
            let p = load(file)?;
            let (out, report) = knorrer(&p, kind)?;
            let ok = report.valid;
            Outcome::factorization(out, to_value(&report)).check(ok, "output failed validation")
        }
        Command::VerifyX8 { complex } => {
            let kind = if *complex {
                KnoerrerKind::Complex
            } else {
                KnoerrerKind::Real8 { positive: false }
            };
            let r = verify_companion_endomorphisms(kind, g.window_cap)?;
            let ok = r.passed;
            Outcome::result(to_value(&r)).check(ok, "endomorphism homology is not (1, 0)")
        }
        Command::VerifyPeriodicity { module, positive } => {
            let m = load_module(module)?;
            let kind = match m.mode() {
                Mode::Gaussian => KnoerrerKind::Complex,
                Mode::Rational => KnoerrerKind::Real8 { positive: *positive },
            };
            let r = verify_periodicity_diagram_quadratic(&m, kind)?;
            let ok = r.passed;
            let msg = if r.inconclusive {
                "image could not be recognized as a Clifford module"
            } else {
                "classes do not match"
            };
            Outcome::result(to_value(&r)).check(ok, msg)
        }
        Command::Theta { a, b } => {
            let r = theta_with_cap(&load(a)?, &load(b)?, g.window_cap)?;
            let ok = r.valid;
            Outcome::result(to_value(&r)).check(ok, "Tor lengths are not 2-periodic")
        }
        Command::Milnor { f, vars, mode, weights } => {
            let vars = match vars {
                Some(v) => input::split_list(v),
                None => input::infer_vars(f),
            };
            let mode = Mode::from(*mode);
            let fp = parse_poly(f, &vars, mode)?;
            let w = weights
                .resolve()?
                .ok_or_else(|| Failure::usage("milnor needs --weights and --degree"))?;
            let r = milnor_report(&fp, &w)?;
            let mut v = to_value(&r);
            v["vars"] = to_value(&vars);
            Outcome::result(v)
        }
    })
}

fn config(cmd: &Command, g: &Global) -> Value {
    json!({
        "subcommand": cmd.name(),
        "inputs": cmd.inputs(),
        "format": match g.format { Format::Json => "json", Format::Text => "text" },
        "degree_bound": g.degree_bound,
        "window_cap": g.window_cap,
        "threads": g.threads,
    })
}

fn envelope(cmd: &Command, g: &Global, o: Outcome) -> (Value, Option<String>) {
    let mut v = json!({
        "command": cmd.name(),
        "config": config(cmd, g),
        "result": o.result,
    });
    if let Some(p) = &o.factorization {
        v["factorization"] = p.to_json_value();
    }
    if let Some(m) = o.morphism {
        v["morphism"] = m;
    }
    (v, o.failed)
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn emit(v: &Value, format: Format) {
    let text = match format {
        Format::Json => serde_json::to_string_pretty(v).expect("serializable") + "\n",
        Format::Text => render::to_text(v),
    };
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = cli.global.clone();
    let failure = match run(&cli.command, &g) {
        Ok(o) => {
            let (v, failed) = envelope(&cli.command, &g, o);
            match failed {
                None => {
                    emit(&v, g.format);
                    return ExitCode::SUCCESS;
                }
                Some(msg) => Failure::check_failed(msg, v),
            }
        }
        Err(f) => f,
    };
    if let Some(r) = &failure.report {
        emit(r, g.format);
    }
    eprintln!("{}", json!({ "error": failure.error }));
    ExitCode::from(failure.code)
}
