//! Command-line front end: `asq2 [--config PATH] <command> [ARGS...] [--json]`.
//!
//! [`run`] does all the work and returns the exit code with the captured
//! output, so the binary and the tests share one code path.

mod config;

use clap::{Parser, Subcommand};
use serde::Serialize;

pub use config::Config;

use crate::checks::{self, CheckReport};
use crate::error::{Error, Result};
use crate::expr::parse_element;
use crate::oracle::{brute_roots, InstanceCase};
use crate::quadroots::{LocusStatus, RootSet, Solution, Solver};
use crate::quat::{ElementClass, QuatAlgebra};

/// Environment variable consulted when `--config` is absent.
pub const CONFIG_ENV: &str = "ASQ2_CONFIG";

#[derive(Parser, Debug)]
#[command(name = "asq2", version, about = "Quadratic equations over quaternion algebras in characteristic 2")]
struct Args {
    /// Flat key=value configuration file.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<String>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve z^2 + MU z + NU = 0.
    Solve { mu: String, nu: String },
    /// Report the class of an element and its trace.
    Classify { q: String },
    /// Artin-Schreier complement of a square-central element.
    Complement { y: String },
    /// Compare the solver with exhaustive search over a bounded box.
    Oracle {
        mu: String,
        nu: String,
        /// Degree bound of the box (default: oracle_bound from the config).
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Run the invariant suites on seeded random samples.
    Selftest {
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Exit status and captured streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout, stderr: String::new() }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotDivision(_) | Error::SplitAlgebra(_) => 2,
        Error::Internal(_) => 3,
        _ => 1,
    }
}

fn failure(e: &Error) -> Outcome {
    Outcome { code: exit_code(e), stdout: String::new(), stderr: format!("error: {e}\n") }
}

#[derive(Serialize)]
struct LocusJson {
    trace: String,
    norm: String,
    status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
}

#[derive(Serialize)]
struct RootSetJson {
    kind: &'static str,
    roots: Vec<String>,
    central_roots: Vec<String>,
    locus: Option<LocusJson>,
    case: String,
    reductions: Vec<String>,
}

impl RootSetJson {
    fn new(sol: &Solution) -> Self {
        let (kind, roots, central_roots, locus) = match &sol.roots {
            RootSet::Finite(v) => ("finite", v.iter().map(|z| z.to_string()).collect(), Vec::new(), None),
            RootSet::CentralPlusLocus { central_roots, locus } => (
                "central-plus-locus",
                Vec::new(),
                central_roots.iter().map(|r| r.to_string()).collect(),
                Some(LocusJson {
                    trace: locus.trace.to_string(),
                    norm: locus.norm.to_string(),
                    status: locus.status.to_string(),
                    witness: match &locus.status {
                        LocusStatus::Witness(w) => Some(w.to_string()),
                        LocusStatus::NoneWithinBound(_) => None,
                    },
                }),
            ),
        };
        RootSetJson {
            kind,
            roots,
            central_roots,
            locus,
            case: sol.case.to_string(),
            reductions: sol.reductions.iter().map(|r| r.to_string()).collect(),
        }
    }

    fn text(&self) -> String {
        let mut out = format!("kind: {}\nroots:\n", self.kind);
        for r in &self.roots {
            out += &format!("  {r}\n");
        }
        out += "central_roots:\n";
        for r in &self.central_roots {
            out += &format!("  {r}\n");
        }
        match &self.locus {
            None => out += "locus: null\n",
            Some(l) => {
                out += &format!("locus.trace: {}\nlocus.norm: {}\nlocus.status: {}\n", l.trace, l.norm, l.status);
                if let Some(w) = &l.witness {
                    out += &format!("locus.witness: {w}\n");
                }
            }
        }
        out += &format!("case: {}\nreductions:\n", self.case);
        for r in &self.reductions {
            out += &format!("  {r}\n");
        }
        out
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data serializes") + "\n"
}

#[derive(Serialize)]
struct ClassJson {
    class: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    eta: Option<String>,
}

#[derive(Serialize)]
struct ComplementJson {
    complement: String,
    /// `x'^2 + x'`, an element of F.
    as_value: String,
}

#[derive(Serialize)]
struct OracleJson {
    bound: u32,
    brute_roots: Vec<String>,
    solution: RootSetJson,
    agree: bool,
    disagreements: Vec<String>,
}

#[derive(Serialize)]
struct SuiteJson {
    name: String,
    passed: bool,
    samples: usize,
    failures: usize,
    examples: Vec<String>,
}

#[derive(Serialize)]
struct SelftestJson {
    passed: bool,
    suites: Vec<SuiteJson>,
}

struct Session {
    alg: QuatAlgebra,
    config: Config,
    json: bool,
}

impl Session {
    fn solve(&self, mu: &str, nu: &str) -> Result<Outcome> {
        let mu = parse_element(&self.alg, mu)?;
        let nu = parse_element(&self.alg, nu)?;
        let sol = Solver::with_options(&self.alg, self.config.solve_options()).solve(&mu, &nu)?;
        let view = RootSetJson::new(&sol);
        Ok(Outcome::ok(if self.json { to_json(&view) } else { view.text() }))
    }

    fn classify(&self, q: &str) -> Result<Outcome> {
        let q = parse_element(&self.alg, q)?;
        let view = match self.alg.classify(&q) {
            ElementClass::Zero => ClassJson { class: "zero", eta: None },
            ElementClass::CentralNonzero => ClassJson { class: "central", eta: None },
            ElementClass::SquareCentral => ClassJson { class: "square-central", eta: None },
            ElementClass::General { eta } => ClassJson { class: "general", eta: Some(eta.to_string()) },
        };
        Ok(Outcome::ok(if self.json {
            to_json(&view)
        } else {
            let mut s = format!("class: {}\n", view.class);
            if let Some(eta) = &view.eta {
                s += &format!("eta: {eta}\n");
            }
            s
        }))
    }

    fn complement(&self, y: &str) -> Result<Outcome> {
        let y = parse_element(&self.alg, y)?;
        let x = self.alg.as_complement(&y)?;
        let view = ComplementJson {
            complement: x.to_string(),
            as_value: (&self.alg.square(&x) + &x).to_string(),
        };
        Ok(Outcome::ok(if self.json {
            to_json(&view)
        } else {
            format!("complement: {}\nas_value: {}\n", view.complement, view.as_value)
        }))
    }

    fn oracle(&self, mu: &str, nu: &str, bound: Option<u32>) -> Result<Outcome> {
        let bound = bound.unwrap_or(self.config.oracle_bound);
        let mu = parse_element(&self.alg, mu)?;
        let nu = parse_element(&self.alg, nu)?;
        let solver = Solver::with_options(&self.alg, self.config.solve_options());
        let brute = brute_roots(&self.alg, &mu, &nu, bound)?;
        let sol = solver.solve(&mu, &nu)?;
        let disagreements = checks::disagreements(&solver, &mu, &nu, &brute, &sol);
        let view = OracleJson {
            bound,
            brute_roots: brute.iter().map(|z| z.to_string()).collect(),
            solution: RootSetJson::new(&sol),
            agree: disagreements.is_empty(),
            disagreements,
        };
        let stdout = if self.json {
            to_json(&view)
        } else {
            let mut s = format!("bound: {bound}\nbrute_roots:\n");
            for z in &view.brute_roots {
                s += &format!("  {z}\n");
            }
            s += &view.solution.text();
            s += &format!("agree: {}\ndisagreements:\n", view.agree);
            for d in &view.disagreements {
                s += &format!("  {d}\n");
            }
            s
        };
        let code = if view.agree { 0 } else { 3 };
        Ok(Outcome { code, stdout, stderr: String::new() })
    }

    fn selftest(&self, samples: usize, seed: u64) -> Result<Outcome> {
        let h = &self.alg;
        let solver = Solver::with_options(h, self.config.solve_options());
        let n = samples.max(5);
        let mut reports: Vec<CheckReport> = vec![
            checks::algebra_axioms(h, seed, n, 2),
            checks::norm_closed_form(h, seed + 1, n, 2),
            checks::parser_roundtrip(h, seed + 2, n, 2),
        ];
        for (i, case) in InstanceCase::ALL.into_iter().enumerate() {
            reports.push(checks::roundtrip_completeness(&solver, case, seed + 100 * (i as u64 + 1), n / 5, 2));
        }
        reports.push(checks::oracle_agreement(&solver, seed + 3, (n / 10).max(1), self.config.oracle_bound.min(1)));
        reports.push(checks::candidate_bounds(&solver, seed + 4, n, 2));
        reports.push(checks::complement(h, seed + 5, n, 2));
        reports.push(checks::field_solver_exhaustive(h.field(), 1));
        let passed = reports.iter().all(CheckReport::passed);
        let stdout = if self.json {
            to_json(&SelftestJson {
                passed,
                suites: reports
                    .iter()
                    .map(|r| SuiteJson {
                        name: r.name.clone(),
                        passed: r.passed(),
                        samples: r.samples,
                        failures: r.failures,
                        examples: r.examples.clone(),
                    })
                    .collect(),
            })
        } else {
            let mut s: String = reports.iter().map(|r| format!("{r}\n")).collect();
            s += if passed { "selftest: pass\n" } else { "selftest: FAIL\n" };
            s
        };
        Ok(Outcome { code: if passed { 0 } else { 3 }, stdout, stderr: String::new() })
    }
}

/// Runs one invocation. `args` excludes the program name; `env_config` is
/// the value of [`CONFIG_ENV`], used when `--config` is absent.
pub fn run<S: AsRef<str>>(args: &[S], env_config: Option<&str>) -> Outcome {
    let argv = std::iter::once("asq2").chain(args.iter().map(|s| s.as_ref()));
    let parsed = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 1, stdout: String::new(), stderr: text }
            } else {
                Outcome::ok(text)
            };
        }
    };
    let config = match parsed.config.as_deref().or(env_config) {
        Some(path) => Config::load(path),
        None => Ok(Config::default()),
    };
    let session = config.and_then(|config| {
        let alg = config.algebra()?;
        Ok(Session { alg, config, json: parsed.json })
    });
    let session = match session {
        Ok(s) => s,
        Err(e) => return failure(&e),
    };
    let result = match &parsed.command {
        Command::Solve { mu, nu } => session.solve(mu, nu),
        Command::Classify { q } => session.classify(q),
        Command::Complement { y } => session.complement(y),
        Command::Oracle { mu, nu, bound } => session.oracle(mu, nu, *bound),
        Command::Selftest { samples, seed } => session.selftest(*samples, *seed),
    };
    let mut out = result.unwrap_or_else(|e| failure(&e));
    if session.alg.split_detected() && out.code == 0 {
        out.code = 2;
        out.stderr += "error: a zero divisor was met; the algebra is split\n";
    }
    out
}
