use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use serde_json::{json, Value};

use liewb::character::{random_character, verify_family_laws, verify_series_identities, CharBackend, CharConfig};
use liewb::modular::{parse_green, FpMatrix, GreenConfig, GreenElement, MatRep, ModularLab, DEFAULT_BUDGET};
use liewb::numtheory::{gcd, is_prime};
use liewb::report::{Check, Format, Report};
use liewb::{Basis, Error, SymFunc};

#[derive(Parser)]
#[command(name = "liewb", version, about = "Lie powers, Adams operations and Lie resolvents, computed exactly")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Json)]
    format: OutFormat,
    /// Cap on dim^d for tensor-space computations.
    #[arg(long, global = true, env = "LIEWB_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
    Table,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Format {
        match f {
            OutFormat::Json => Format::Json,
            OutFormat::Csv => Format::Csv,
            OutFormat::Table => Format::Table,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Characters of polynomial GL_n-modules.
    #[command(subcommand)]
    Sym(SymCmd),
    /// Solve the Witt equations for the characters B_{p^i k}.
    Witt(WittArgs),
    /// Modules for the cyclic group of order p over F_p.
    #[command(subcommand)]
    Modular(ModCmd),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct CharInput {
    /// Input character as SymFunc JSON; defaults to the natural module p_[1].
    #[arg(long)]
    input: Option<String>,
    /// Numbers of variables for dimension columns.
    #[arg(long, num_args = 1.., default_values_t = [2])]
    n: Vec<usize>,
    /// Basis for printed characters.
    #[arg(long, value_enum)]
    basis: Option<BasisArg>,
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisArg {
    P,
    M,
    H,
    E,
    S,
}

impl From<BasisArg> for Basis {
    fn from(b: BasisArg) -> Basis {
        match b {
            BasisArg::P => Basis::PowerSum,
            BasisArg::M => Basis::Monomial,
            BasisArg::H => Basis::Homogeneous,
            BasisArg::E => Basis::Elementary,
            BasisArg::S => Basis::Schur,
        }
    }
}

#[derive(Subcommand)]
enum SymCmd {
    /// ch L^r(V).
    Lie {
        #[arg(long)]
        r: usize,
        #[command(flatten)]
        input: CharInput,
    },
    /// ch R^{p^m k}(V).
    Restricted {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[command(flatten)]
        input: CharInput,
    },
    /// Substitute t_i -> t_i^r.
    Chi {
        #[arg(long)]
        r: usize,
        #[command(flatten)]
        input: CharInput,
    },
}

#[derive(Args)]
struct WittArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    m: u32,
    #[command(flatten)]
    input: CharInput,
}

#[derive(Args)]
struct ModuleArgs {
    #[arg(long)]
    p: u32,
    /// Green-ring expression such as 'J2' or '2*J1 + J3'.
    #[arg(long)]
    module: String,
}

#[derive(Subcommand)]
enum ModCmd {
    /// Decompose a Green-ring expression or a matrix into indecomposables.
    Decompose {
        #[arg(long)]
        p: u32,
        #[arg(long, conflicts_with = "matrix", required_unless_present = "matrix")]
        expr: Option<String>,
        /// Matrix of the generator as JSON rows, e.g. '[[1,1],[0,1]]'.
        #[arg(long)]
        matrix: Option<String>,
    },
    /// Adams operation ψ^r.
    Psi {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long)]
        r: usize,
    },
    /// Lie resolvent Φ^r.
    Phi {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long)]
        r: usize,
    },
    /// ρ^r = (1/r) Σ_{d|r} Φ^d ∘ ψ^{r/d}.
    Rho {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long)]
        r: usize,
    },
    /// Lie power L^d, or the restricted Lie power R^d.
    Lie {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        restricted: bool,
    },
    /// Exploratory: ρ^{p^m} for m = 0, 1, … until the budget stops it.
    RhoScan {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long = "max-m", default_value_t = 3)]
        max_m: u32,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Char0,
    Char,
    Factorisation,
    Ptypical,
    Rho,
    Ghost,
    Restricted,
    Green,
    Properties,
    All,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    #[arg(long, default_value_t = 2)]
    p: u32,
    /// Base module J_a.
    #[arg(long, default_value_t = 2)]
    a: usize,
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[arg(long, default_value_t = 1)]
    m: u32,
    #[arg(long, default_value_t = 2)]
    r: usize,
    #[arg(long, default_value_t = 3)]
    s: usize,
    /// Truncation degree.
    #[arg(long = "D", default_value_t = 8)]
    d: usize,
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random inputs per seeded check.
    #[arg(long, default_value_t = 5)]
    trials: usize,
    /// Character fed to the character suites; defaults to p_[1].
    #[arg(long)]
    input: Option<String>,
}

/// Why a command stopped, mapped onto the exit status.
enum Fail {
    /// Exit 1.
    Failed(String),
    /// Exit 2.
    Usage(String),
    /// Exit 3.
    Budget(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        match e {
            Error::BudgetExceeded(_) => Fail::Budget(e.to_string()),
            Error::Integrality(_) | Error::Internal(_) => Fail::Failed(e.to_string()),
            Error::Domain(_) | Error::Parse(_) | Error::InvalidRep(_) | Error::NegativeCoords(_) => {
                Fail::Usage(e.to_string())
            }
        }
    }
}

type Outcome = Result<(String, bool), Fail>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format.into();
    let outcome = match cli.command {
        Command::Sym(cmd) => cmd_sym(cmd, format),
        Command::Witt(args) => cmd_witt(args, format),
        Command::Modular(cmd) => cmd_modular(cmd, cli.budget, format),
        Command::Verify(args) => cmd_verify(args, cli.budget, format),
    };
    match outcome {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(fail) => {
            let (code, msg) = match fail {
                Fail::Failed(m) => (1, m),
                Fail::Usage(m) => (2, m),
                Fail::Budget(m) => (3, m),
            };
            eprintln!("liewb: {msg}");
            ExitCode::from(code)
        }
    }
}

/// A result as a JSON document plus the ordered `key, value` rows used by
/// the table and CSV renderings.
struct Output {
    json: Value,
    rows: Vec<(String, String)>,
}

impl Output {
    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => format!("{}\n", self.json),
            Format::Table => {
                let width = self.rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
                self.rows.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(["key", "value"]).expect("in-memory write");
                for (k, v) in &self.rows {
                    w.write_record([k, v]).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("in-memory write")).expect("utf-8")
            }
        }
    }
}

fn parse_char(input: &Option<String>) -> Result<SymFunc, Fail> {
    match input {
        None => Ok(SymFunc::p(&[1])),
        Some(s) => serde_json::from_str(s).map_err(|e| Fail::Usage(format!("bad character JSON: {e}"))),
    }
}

fn require_prime(p: u64) -> Result<(), Fail> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Fail::Usage(format!("{p} is not prime")))
    }
}

fn require_coprime(p: u64, k: usize) -> Result<(), Fail> {
    if k == 0 || k as u64 % p == 0 {
        return Err(Fail::Usage(format!("k = {k} must be positive and prime to p = {p}")));
    }
    Ok(())
}

fn char_output(what: String, input: &SymFunc, res: &SymFunc, args: &CharInput, default: Basis) -> Output {
    let basis = args.basis.map(Basis::from).unwrap_or(default);
    let shown = res.to_basis(basis);
    let dims: Vec<Value> =
        args.n.iter().map(|&n| json!({"n": n, "dim": res.eval_dim(n).to_string()})).collect();
    let mut rows = vec![(what.clone(), shown.to_string())];
    rows.extend(args.n.iter().map(|&n| (format!("dim (n={n})"), res.eval_dim(n).to_string())));
    Output { json: json!({"op": what, "input": input, "character": shown, "dims": dims}), rows }
}

fn cmd_sym(cmd: SymCmd, format: Format) -> Outcome {
    let be = CharBackend::default();
    let out = match cmd {
        SymCmd::Lie { r, input } => {
            let f = parse_char(&input.input)?;
            let res = be.lie_char(&f, r)?;
            char_output(format!("ch L^{r}"), &f, &res, &input, Basis::Schur)
        }
        SymCmd::Restricted { p, m, k, input } => {
            require_prime(p)?;
            require_coprime(p, k)?;
            let f = parse_char(&input.input)?;
            let res = be.restricted_lie_char(&f, p, m, k)?;
            let d = (p as usize).pow(m) * k;
            char_output(format!("ch R^{d}"), &f, &res, &input, Basis::Schur)
        }
        SymCmd::Chi { r, input } => {
            if r == 0 {
                return Err(Fail::Usage("r must be positive".into()));
            }
            let f = parse_char(&input.input)?;
            char_output(format!("chi^{r}"), &f, &f.chi(r), &input, Basis::PowerSum)
        }
    };
    Ok((out.render(format), true))
}

fn cmd_witt(args: WittArgs, format: Format) -> Outcome {
    require_prime(args.p)?;
    require_coprime(args.p, args.k)?;
    let f = parse_char(&args.input.input)?;
    let sol = CharBackend::default().ghost_solve(&f, args.p, args.k, args.m)?;
    let positive = sol.positivity().iter().all(|&b| b);
    let basis = args.input.basis.map(Basis::from).unwrap_or(Basis::Schur);
    let mut rows = Vec::new();
    let pu = args.p as usize;
    for (i, b) in sol.b.iter().enumerate() {
        let label = format!("B_{}", pu.pow(i as u32) * args.k);
        rows.push((label.clone(), b.to_basis(basis).to_string()));
        for &n in &args.input.n {
            rows.push((format!("dim {label} (n={n})"), b.eval_dim(n).to_string()));
        }
        rows.push((format!("{label} Schur positive"), b.is_schur_positive().ok.to_string()));
    }
    let out = Output { json: sol.to_json(&args.input.n), rows };
    Ok((out.render(format), positive))
}

fn green_output(op: &str, module: &str, value: &GreenElement) -> Output {
    Output {
        json: json!({"op": op, "p": value.p(), "module": module, "value": value, "display": value.to_string()}),
        rows: vec![(format!("{op}({module})"), value.to_string()), ("dim".into(), value.dim().to_string())],
    }
}

fn cmd_modular(cmd: ModCmd, budget: u64, format: Format) -> Outcome {
    let lab_for = |p: u32| ModularLab::with_budget(p, budget).map_err(Fail::from);
    let module_of = |m: &ModuleArgs| -> Result<(ModularLab, GreenElement), Fail> {
        let lab = lab_for(m.p)?;
        let x = parse_green(m.p, &m.module)?;
        Ok((lab, x))
    };
    let out = match cmd {
        ModCmd::Decompose { p, expr, matrix } => {
            let lab = lab_for(p)?;
            let (label, value) = match (expr, matrix) {
                (Some(e), _) => {
                    let x = parse_green(p, &e)?;
                    (e, x)
                }
                (None, Some(m)) => {
                    let rows: Vec<Vec<i64>> =
                        serde_json::from_str(&m).map_err(|e| Fail::Usage(format!("bad matrix JSON: {e}")))?;
                    let rep = MatRep::from_matrix(FpMatrix::from_rows(p, &rows)?)?;
                    (m, lab.decompose(&rep)?)
                }
                (None, None) => return Err(Fail::Usage("give --expr or --matrix".into())),
            };
            green_output("decompose", &label, &value)
        }
        ModCmd::Psi { module, r } => {
            let (lab, x) = module_of(&module)?;
            green_output(&format!("psi^{r}"), &module.module, &lab.adams(&x, r)?)
        }
        ModCmd::Phi { module, r } => {
            let (lab, x) = module_of(&module)?;
            green_output(&format!("phi^{r}"), &module.module, &lab.phi(&x, r)?)
        }
        ModCmd::Rho { module, r } => {
            let (lab, x) = module_of(&module)?;
            green_output(&format!("rho^{r}"), &module.module, &lab.rho(&x, r)?)
        }
        ModCmd::Lie { module, d, restricted } => {
            let (lab, x) = module_of(&module)?;
            let (op, v) = if restricted {
                (format!("R^{d}"), lab.restricted_lie_power(&x, d)?)
            } else {
                (format!("L^{d}"), lab.lie_power(&x, d)?)
            };
            green_output(&op, &module.module, &v)
        }
        ModCmd::RhoScan { module, max_m } => {
            let (lab, x) = module_of(&module)?;
            let mut values = Vec::new();
            let mut rows = vec![("exploratory".to_string(), "no pass/fail semantics".to_string())];
            for (r, v) in lab.rho_scan(&x, max_m) {
                match v {
                    Ok(v) => {
                        rows.push((format!("rho^{r}({})", module.module), v.to_string()));
                        values.push(json!({"r": r, "value": v, "display": v.to_string()}));
                    }
                    Err(e) => {
                        rows.push((format!("rho^{r}({})", module.module), format!("stopped: {e}")));
                        values.push(json!({"r": r, "stopped": e.to_string()}));
                    }
                }
            }
            let json = json!({"op": "rho-scan", "p": module.p, "module": module.module, "exploratory": true, "values": values});
            Output { json, rows }
        }
    };
    Ok((out.render(format), true))
}

fn cmd_verify(args: VerifyArgs, budget: u64, format: Format) -> Outcome {
    require_prime(args.p as u64)?;
    if args.d == 0 {
        return Err(Fail::Usage("D must be at least 1".into()));
    }
    if args.a == 0 || args.a > args.p as usize {
        return Err(Fail::Usage(format!("J_{} does not exist for p = {}", args.a, args.p)));
    }
    use Suite::*;
    let suite = args.suite;
    if matches!(suite, Char | Factorisation | Ghost | Restricted | Green | All) {
        require_coprime(args.p as u64, args.k)?;
    }
    let f = parse_char(&args.input)?;
    let be = CharBackend::default();
    let lab = ModularLab::with_budget(args.p, budget)?;
    let char_cfg = CharConfig {
        f: f.clone(),
        p: args.p as u64,
        k: args.k,
        m: args.m,
        r: args.r,
        s: args.s,
        d: args.d,
        n: args.n,
    };
    let char_filtered = |pred: &dyn Fn(&str) -> bool| {
        let mut r = Report::new();
        for c in be.verify_char_identities(&char_cfg).checks {
            if pred(&c.identity) {
                r.push(c);
            }
        }
        r
    };
    let green_filtered = |pred: &dyn Fn(&str) -> bool| {
        let mut r = Report::new();
        for c in lab.check_decompositions(args.a, args.k, args.m).checks {
            if pred(&c.identity) {
                r.push(c);
            }
        }
        r
    };

    let mut report = Report::new();
    if matches!(suite, Char0 | Properties | All) {
        report.extend(verify_series_identities(args.d, args.seed, args.trials));
    }
    if matches!(suite, Char | All) {
        report.extend(be.verify_char_identities(&char_cfg));
    }
    if matches!(suite, Factorisation | All) {
        if gcd(args.r as u64, args.s as u64) != 1 {
            return Err(Fail::Usage(format!("r = {} and s = {} are not coprime", args.r, args.s)));
        }
        report.push(coprime_factorisation(&be, &f, args.r, args.s, args.seed, args.trials));
    }
    if matches!(suite, Factorisation) {
        report.push(lab.check_factorisation(args.a, args.k, args.m));
    }
    if matches!(suite, Ptypical) {
        report.push(lab.check_p_typical(args.a, args.d));
        report.push(lab.check_rho_vanishing(args.a, args.d));
    }
    if matches!(suite, Rho) {
        report.push(lab.check_rho_vanishing(args.a, args.d));
        report.push(lab.check_rho_higher_powers(args.a, args.d));
    }
    if matches!(suite, Ghost) {
        report.extend(char_filtered(&|id| id.contains("ghost") && !id.contains("restricted")));
        report.extend(green_filtered(&|id| !id.contains("restricted")));
    }
    if matches!(suite, Restricted) {
        report.extend(char_filtered(&|id| id.contains("restricted")));
        report.extend(green_filtered(&|id| id.contains("restricted")));
    }
    if matches!(suite, Green | All) {
        report.extend(lab.verify_green_identities(&GreenConfig { a: args.a, d: args.d, k: args.k, m: args.m }));
    }
    if matches!(suite, Properties | All) {
        report.extend(verify_family_laws(args.seed, args.trials, 6));
        report.extend(lab.check_ring_laws(args.seed, args.trials));
    }

    let text = report.render(format);
    if report.all_pass() {
        Ok((text, true))
    } else if report.only_budget_failures() {
        print!("{text}");
        Err(Fail::Budget("some checks exceeded the budget".into()))
    } else {
        Ok((text, false))
    }
}

/// `ch Φ^{rs} = ch Φ^r ∘ Φ^s` on the given character and on seeded random
/// actual characters.
fn coprime_factorisation(be: &CharBackend, f: &SymFunc, r: usize, s: usize, seed: u64, trials: usize) -> Check {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let inputs: Vec<SymFunc> =
        std::iter::once(f.clone()).chain((0..trials).map(|_| random_character(&mut rng))).collect();
    let outcome = inputs.iter().enumerate().try_fold(None, |w: Option<String>, (i, g)| {
        if w.is_some() {
            return Ok(w);
        }
        Ok(be.check_coprime_factorisation(g, r, s)?.map(|w| format!("input {i} ({g}): {w}")))
    });
    Check::from_result(
        "resolvent of coprime product factorises",
        &format!("r={r} s={s} seed={seed} trials={trials}"),
        outcome,
    )
}
