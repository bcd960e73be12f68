//! `solve`, `verify` and `table`, rendered to a document plus an exit code.

use serde::Serialize;

use psdual::duality::wavefunction_eval;
use psdual::electrostatics::{field_from_density, potential_from_field};
use psdual::oracle::FailureReason;
use psdual::{solve_dual, verify, ChargeDensity, DualSolution, GridSpec, RadialPolynomial, VerificationReport};

use crate::density::{parse_density, render_polynomial, DensityError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NOT_BOUND: i32 = 3;
pub const EXIT_VERIFY_FAILED: i32 = 4;

pub const DEFAULT_MAX_ROWS: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Solve,
    Verify,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub grid: GridSpec,
    /// `None` picks JSON for `solve`/`verify` and CSV for `table`.
    pub format: Option<Format>,
    pub strict_bound: bool,
    pub max_rows: usize,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            grid: GridSpec::default(),
            format: None,
            strict_bound: false,
            max_rows: DEFAULT_MAX_ROWS,
        }
    }

    fn format(&self) -> Format {
        self.format.unwrap_or(match self.command {
            Command::Table => Format::Csv,
            Command::Solve | Command::Verify => Format::Json,
        })
    }
}

/// What a run printed and how it ended.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub exit_code: i32,
}

impl Outcome {
    fn error(reason: &str, message: &str, offset: Option<usize>, exit_code: i32) -> Self {
        let payload = ErrorPayload {
            error: reason,
            message,
            offset,
        };
        Outcome {
            stdout: String::new(),
            stderr: serde_json::to_string(&payload).expect("error payload serializes") + "\n",
            exit_code,
        }
    }
}

#[derive(Serialize)]
struct ErrorPayload<'a> {
    error: &'a str,
    message: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    offset: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveDocument {
    pub density: RadialPolynomial,
    pub field: RadialPolynomial,
    pub potential_V: RadialPolynomial,
    pub quantum_potential_U: RadialPolynomial,
    pub E0: f64,
    pub S: RadialPolynomial,
    pub A: Option<f64>,
    pub bound: bool,
}

impl SolveDocument {
    pub fn new(rho: &ChargeDensity, sol: &DualSolution) -> Self {
        let field = field_from_density(rho);
        let potential = potential_from_field(&field).expect("Gauss fields have no negative powers");
        SolveDocument {
            density: rho.profile().clone(),
            field,
            potential_V: potential,
            quantum_potential_U: sol.potential.clone(),
            E0: sol.energy,
            S: sol.exponent.clone(),
            A: sol.norm_constant,
            bound: sol.bound,
        }
    }

    fn pairs(&self) -> Vec<(&'static str, String)> {
        vec![
            ("density", render_polynomial(&self.density)),
            ("field", render_polynomial(&self.field)),
            ("potential_V", render_polynomial(&self.potential_V)),
            ("quantum_potential_U", render_polynomial(&self.quantum_potential_U)),
            ("E0", number(self.E0)),
            ("S", render_polynomial(&self.S)),
            ("A", self.A.map(number).unwrap_or_default()),
            ("bound", self.bound.to_string()),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyDocument {
    pub density: RadialPolynomial,
    pub analytic_E0: f64,
    pub numeric_E0: Option<f64>,
    pub abs_err: Option<f64>,
    pub node_count: Option<usize>,
    pub ode_residual_max: Option<f64>,
    pub norm_quadrature: Option<f64>,
    pub norm_closed_form: Option<f64>,
    pub passed: bool,
    pub reason: Option<FailureReason>,
    pub reason_message: Option<&'static str>,
}

impl VerifyDocument {
    pub fn new(rho: &ChargeDensity, report: &VerificationReport) -> Self {
        VerifyDocument {
            density: rho.profile().clone(),
            analytic_E0: report.analytic_e0,
            numeric_E0: report.numeric_e0,
            abs_err: report.abs_err,
            node_count: report.node_count,
            ode_residual_max: report.ode_residual_max,
            norm_quadrature: report.norm_quadrature,
            norm_closed_form: report.norm_closed_form,
            passed: report.passed,
            reason: report.reason,
            reason_message: report.reason.map(|r| r.message()),
        }
    }

    fn pairs(&self) -> Vec<(&'static str, String)> {
        let opt = |v: Option<f64>| v.map(number).unwrap_or_default();
        vec![
            ("density", render_polynomial(&self.density)),
            ("analytic_E0", number(self.analytic_E0)),
            ("numeric_E0", opt(self.numeric_E0)),
            ("abs_err", opt(self.abs_err)),
            ("node_count", self.node_count.map(|n| n.to_string()).unwrap_or_default()),
            ("ode_residual_max", opt(self.ode_residual_max)),
            ("norm_quadrature", opt(self.norm_quadrature)),
            ("norm_closed_form", opt(self.norm_closed_form)),
            ("passed", self.passed.to_string()),
            ("reason", self.reason.map(|r| r.code().to_string()).unwrap_or_default()),
        ]
    }
}

/// One sampled row of `table`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub r: f64,
    pub rho: f64,
    pub E_field: f64,
    pub V: f64,
    pub U: f64,
    pub psi: Option<f64>,
}

pub const TABLE_HEADER: &str = "r,rho,E_field,V,U,psi";

pub fn table_row(rho: &ChargeDensity, sol: &DualSolution, r: f64) -> psdual::Result<TableRow> {
    let field = field_from_density(rho);
    let potential = potential_from_field(&field)?;
    Ok(TableRow {
        r,
        rho: rho.evaluate(r)?,
        E_field: field.evaluate(r)?,
        V: potential.evaluate(r)?,
        U: sol.potential.evaluate(r)?,
        psi: wavefunction_eval(sol, r).ok(),
    })
}

/// Grid indices kept when decimating `n + 1` points down to `max_rows`.
fn sample_indices(n: usize, max_rows: usize) -> impl Iterator<Item = usize> {
    let points = n + 1;
    let stride = points.div_ceil(max_rows.max(1));
    (0..points).step_by(stride)
}

/// Shortest round-trip decimal, as used in the JSON output.
pub fn number(v: f64) -> String {
    serde_json::to_string(&v).expect("f64 serializes")
}

fn key_values(pairs: &[(&str, String)], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Csv => {
            out.push_str("key,value\n");
            for (k, v) in pairs {
                out.push_str(&format!("{k},{v}\n"));
            }
        }
        _ => {
            let width = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            for (k, v) in pairs {
                let v = if v.is_empty() { "-" } else { v };
                out.push_str(&format!("{k:<width$}  {v}\n"));
            }
        }
    }
    out
}

fn json<T: Serialize>(doc: &T) -> String {
    serde_json::to_string_pretty(doc).expect("document serializes") + "\n"
}

/// Parses `input` and runs the configured command.
pub fn run(cfg: &RunConfig, input: &str) -> Outcome {
    let rho = match parse_density(input) {
        Ok(rho) => rho,
        Err(e) => return density_error(&e),
    };
    match cfg.command {
        Command::Solve => cmd_solve(cfg, &rho),
        Command::Verify => cmd_verify(cfg, &rho),
        Command::Table => cmd_table(cfg, &rho),
    }
}

fn density_error(e: &DensityError) -> Outcome {
    Outcome::error(e.reason_code(), &e.to_string(), e.offset(), EXIT_INVALID)
}

fn core_error(e: &psdual::Error, exit_code: i32) -> Outcome {
    Outcome::error(e.reason_code(), &e.to_string(), None, exit_code)
}

fn bound_exit(cfg: &RunConfig, sol: &DualSolution) -> (i32, String) {
    if cfg.strict_bound && !sol.bound {
        let payload = ErrorPayload {
            error: "not_bound",
            message: FailureReason::NotBound.message(),
            offset: None,
        };
        (
            EXIT_NOT_BOUND,
            serde_json::to_string(&payload).expect("error payload serializes") + "\n",
        )
    } else {
        (EXIT_OK, String::new())
    }
}

pub fn cmd_solve(cfg: &RunConfig, rho: &ChargeDensity) -> Outcome {
    let sol = match solve_dual(rho) {
        Ok(sol) => sol,
        Err(e) => return core_error(&e, EXIT_INVALID),
    };
    let doc = SolveDocument::new(rho, &sol);
    let stdout = match cfg.format() {
        Format::Json => json(&doc),
        f => key_values(&doc.pairs(), f),
    };
    let (exit_code, stderr) = bound_exit(cfg, &sol);
    Outcome {
        stdout,
        stderr,
        exit_code,
    }
}

pub fn cmd_verify(cfg: &RunConfig, rho: &ChargeDensity) -> Outcome {
    let report = match verify(rho, &cfg.grid) {
        Ok(report) => report,
        Err(e) => return core_error(&e, EXIT_VERIFY_FAILED),
    };
    let doc = VerifyDocument::new(rho, &report);
    let stdout = match cfg.format() {
        Format::Json => json(&doc),
        f => key_values(&doc.pairs(), f),
    };
    let exit_code = match report.reason {
        None if report.passed => EXIT_OK,
        Some(FailureReason::NotBound | FailureReason::NotNormalizable) => EXIT_NOT_BOUND,
        _ => EXIT_VERIFY_FAILED,
    };
    let stderr = match report.reason {
        Some(reason) => {
            let payload = ErrorPayload {
                error: reason.code(),
                message: reason.message(),
                offset: None,
            };
            serde_json::to_string(&payload).expect("error payload serializes") + "\n"
        }
        None => String::new(),
    };
    Outcome {
        stdout,
        stderr,
        exit_code,
    }
}

pub fn cmd_table(cfg: &RunConfig, rho: &ChargeDensity) -> Outcome {
    let sol = match solve_dual(rho) {
        Ok(sol) => sol,
        Err(e) => return core_error(&e, EXIT_INVALID),
    };
    let rows = match sample_indices(cfg.grid.n(), cfg.max_rows)
        .map(|i| table_row(rho, &sol, cfg.grid.point(i)))
        .collect::<psdual::Result<Vec<_>>>()
    {
        Ok(rows) => rows,
        Err(e) => return core_error(&e, EXIT_INVALID),
    };

    let stdout = match cfg.format() {
        Format::Json => json(&rows),
        Format::Csv => {
            let mut out = String::from(TABLE_HEADER);
            out.push('\n');
            for row in &rows {
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    number(row.r),
                    number(row.rho),
                    number(row.E_field),
                    number(row.V),
                    number(row.U),
                    row.psi.map(number).unwrap_or_default()
                ));
            }
            out
        }
        Format::Text => {
            let mut out = format!(
                "{:>24} {:>24} {:>24} {:>24} {:>24} {:>24}\n",
                "r", "rho", "E_field", "V", "U", "psi"
            );
            for row in &rows {
                out.push_str(&format!(
                    "{:>24.15e} {:>24.15e} {:>24.15e} {:>24.15e} {:>24.15e} {:>24}\n",
                    row.r,
                    row.rho,
                    row.E_field,
                    row.V,
                    row.U,
                    row.psi.map(|p| format!("{p:.15e}")).unwrap_or_else(|| "-".into())
                ));
            }
            out
        }
    };
    let (exit_code, stderr) = bound_exit(cfg, &sol);
    Outcome {
        stdout,
        stderr,
        exit_code,
    }
}
