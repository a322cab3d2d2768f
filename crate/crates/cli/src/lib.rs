// SPDX-License-Identifier: Apache-2.0

//! `qclone` command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 no solution or empty
//! result, 64 usage error, 65 input parse error.

pub mod schema;

use std::f64::consts::TAU;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use qclone_core::cloner::{machine, reference_states, ANCILLA_WEIGHT, COPY_WEIGHT};
use qclone_core::prep::SolveMethod;
use qclone_core::state::EXACT_TOL;
use qclone_core::synth::column_reports;
use qclone_core::table1::ROW_COUNT;
use qclone_core::{
    bloch_state, enumerate_completions, expected_output, machine_average_fidelities,
    mixture_residual, residual, solve_branches, synthesize, verify_program, verify_table,
    BlochAngles, Branch, PrepCoefficients, TruthTable, Variant,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use schema::*;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_EMPTY: u8 = 2;
pub const EXIT_USAGE: u8 = 64;
pub const EXIT_PARSE: u8 = 65;

/// Default seed for randomized commands.
pub const DEFAULT_SEED: u64 = 42;
/// Inputs per cell in `verify-table`.
pub const SWEEP_INPUTS: usize = 100;

#[derive(Debug, Parser)]
#[command(
    name = "qclone",
    version,
    about = "Optimal qubit cloner: preparation angles, CNOT synthesis, verification"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve the preparation angles for a coefficient vector.
    Solve(SolveArgs),
    /// Synthesize CNOT circuits from a truth table file.
    Synth(SynthArgs),
    /// Run one tabulated cloning machine on a Bloch-sphere input.
    Clone(CloneArgs),
    /// Check all 24 tabulated circuits on random inputs.
    VerifyTable(VerifyArgs),
    /// Sphere-averaged fidelities by quadrature.
    Fidelity(FidelityArgs),
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// C1,C2,C3,C4 (normalized automatically with a warning).
    #[arg(
        long,
        value_delimiter = ',',
        num_args = 1,
        allow_hyphen_values = true,
        required = true
    )]
    pub coeffs: Vec<f64>,
    /// Print a JSON report instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Truth table: one `<bits> -> <bits>` line per input, `*` for don't-care.
    #[arg(long)]
    pub table: PathBuf,
    /// Emit every completion instead of the first.
    #[arg(long)]
    pub all_completions: bool,
    /// Print a JSON report instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct CloneArgs {
    /// Polar angle in radians, [0, pi].
    #[arg(long, allow_hyphen_values = true)]
    pub theta: f64,
    /// Azimuth in radians, [0, 2pi).
    #[arg(long, allow_hyphen_values = true)]
    pub phi: f64,
    /// Tabulated row, 1 to 12.
    #[arg(long, default_value_t = 1)]
    pub row: usize,
    /// `upper` or `lower` circuit of the row.
    #[arg(long, default_value = "upper", value_parser = parse_variant)]
    pub variant: Variant,
    /// Print a JSON report instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Seed for the random Bloch-sphere inputs.
    #[arg(long, env = "QCLONE_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Print a JSON report instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct FidelityArgs {
    /// Quadrature grid `NxM` (polar nodes x azimuth nodes), at least 2x2.
    #[arg(long, default_value = "64x64", value_parser = parse_grid)]
    pub grid: (usize, usize),
    /// Restrict to one row (both variants); default is all rows.
    #[arg(long)]
    pub row: Option<usize>,
    /// Print a JSON report instead of text.
    #[arg(long)]
    pub json: bool,
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse().map_err(|e: qclone_core::Error| e.to_string())
}

fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected NxM, got `{s}`"))?;
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
    let (n, m) = (parse(a)?, parse(b)?);
    if n < 2 || m < 2 {
        return Err(format!("grid must be at least 2x2, got {n}x{m}"));
    }
    Ok((n, m))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match &cli.command {
        Command::Solve(a) => cmd_solve(a, out, err),
        Command::Synth(a) => cmd_synth(a, out, err),
        Command::Clone(a) => cmd_clone(a, out),
        Command::VerifyTable(a) => cmd_verify_table(a, out),
        Command::Fidelity(a) => cmd_fidelity(a, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure { code, message }) => {
            if !message.is_empty() {
                let _ = writeln!(err, "qclone: {message}");
            }
            code
        }
    }
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        // a closed downstream pipe is not worth a diagnostic
        let message = match e.kind() {
            std::io::ErrorKind::BrokenPipe => String::new(),
            _ => format!("write failed: {e}"),
        };
        Failure {
            code: EXIT_FAILED,
            message,
        }
    }
}

impl From<qclone_core::Error> for Failure {
    fn from(e: qclone_core::Error) -> Self {
        use qclone_core::Error as E;
        let code = match e {
            E::Parse { .. } => EXIT_PARSE,
            E::NoRealSolution(_) | E::NotReversible => EXIT_EMPTY,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<u8, Failure>;

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure {
        code: EXIT_FAILED,
        message: format!("serialization failed: {e}"),
    })?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn cmd_solve(args: &SolveArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let [c1, c2, c3, c4]: [f64; 4] = args.coeffs.as_slice().try_into().map_err(|_| {
        usage(format!(
            "--coeffs needs 4 values, got {}",
            args.coeffs.len()
        ))
    })?;
    let raw = [c1, c2, c3, c4];
    if raw.iter().any(|x| !x.is_finite()) {
        return Err(usage("--coeffs must be finite"));
    }
    let norm_sq: f64 = raw.iter().map(|x| x * x).sum();
    if norm_sq < 1e-300 {
        return Err(usage("--coeffs must not all be zero"));
    }
    let normalized = (norm_sq - 1.0).abs() > 1e-9;
    let c = if normalized {
        writeln!(
            err,
            "warning: coefficients have squared norm {norm_sq}; normalizing"
        )?;
        PrepCoefficients::normalized(raw)?
    } else {
        let n = norm_sq.sqrt();
        PrepCoefficients::normalized(raw.map(|x| x / n))?
    };
    let branches = solve_branches(&c)?;
    let report = SolveReport {
        schema: SCHEMA_VERSION,
        coefficients: c.values(),
        normalized,
        branches: branches
            .iter()
            .map(|b| BranchDocument {
                branch: b.branch.map(|br| match br {
                    Branch::Minus => "minus".to_string(),
                    Branch::Plus => "plus".to_string(),
                }),
                method: match b.method {
                    SolveMethod::ClosedForm => "closed_form",
                    SolveMethod::Newton => "newton",
                }
                .to_string(),
                cos_squared: b.cos_squared,
                solutions: b
                    .triples
                    .iter()
                    .map(|t| SolutionDocument {
                        signs: t.signs().to_string(),
                        angles: t.angles(),
                        cos: t.rotations().map(|r| r.cos()),
                        sin: t.rotations().map(|r| r.sin()),
                        residual: residual(t, &c),
                    })
                    .collect(),
            })
            .collect(),
    };
    let count: usize = report.branches.iter().map(|b| b.solutions.len()).sum();
    if args.json {
        emit_json(out, &report)?;
    } else {
        let [c1, c2, c3, c4] = report.coefficients;
        writeln!(out, "coefficients: {c1:.10} {c2:.10} {c3:.10} {c4:.10}")?;
        for b in &report.branches {
            let label = b.branch.as_deref().unwrap_or("numerical");
            let [k1, k2, k3] = b.cos_squared;
            writeln!(
                out,
                "branch {label} ({}): cos^2 = {k1:.12}, {k2:.12}, {k3:.12}",
                b.method
            )?;
            for s in &b.solutions {
                let [t1, t2, t3] = s.angles;
                writeln!(
                    out,
                    "  {}  theta = {t1:+.10} {t2:+.10} {t3:+.10}  residual {:.1e}",
                    s.signs, s.residual
                )?;
            }
        }
        writeln!(out, "{count} solution(s)")?;
    }
    Ok(if count == 0 { EXIT_EMPTY } else { EXIT_OK })
}

fn bits_string(bits: impl IntoIterator<Item = bool>) -> String {
    bits.into_iter()
        .map(|b| if b { '1' } else { '0' })
        .collect()
}

fn cmd_synth(args: &SynthArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let text = std::fs::read_to_string(&args.table)
        .map_err(|e| usage(format!("cannot read {}: {e}", args.table.display())))?;
    let table: TruthTable = text.parse()?;
    let n = table.n();
    let completions = enumerate_completions(&table);
    if completions.is_empty() {
        writeln!(err, "no affine reversible completion exists")?;
        for r in column_reports(&table) {
            if r.affine_fits == 0 {
                let terms = r.anf.nonlinear_terms();
                writeln!(
                    err,
                    "  output {}: no affine function fits; ANF (don't-cares as 0) = {}{}",
                    r.column,
                    r.anf,
                    if terms.is_empty() {
                        String::new()
                    } else {
                        format!("; nonlinear monomials: {}", terms.join(", "))
                    }
                )?;
            }
        }
        if args.json {
            emit_json(
                out,
                &SynthReport {
                    schema: SCHEMA_VERSION,
                    n_bits: n,
                    total_completions: 0,
                    completions: Vec::new(),
                },
            )?;
        }
        return Ok(EXIT_EMPTY);
    }
    let total = completions.len();
    let take = if args.all_completions { total } else { 1 };
    let mut docs = Vec::with_capacity(take);
    for c in completions.iter().take(take) {
        let prog = synthesize(&c.map)?;
        let verified = verify_program(&prog, &c.table) && verify_program(&prog, &table);
        if !verified {
            return Err(Failure {
                code: EXIT_FAILED,
                message: format!("synthesized circuit for {} failed verification", c.map),
            });
        }
        docs.push(CompletionDocument {
            assignment: bits_string(c.assignment(&table)),
            map: c.map.to_string(),
            matrix: (0..n)
                .map(|i| (0..n).map(|j| c.map.entry(i, j) as u8).collect())
                .collect(),
            affine: (0..n)
                .map(|i| (c.map.affine() >> (n - 1 - i) & 1) as u8)
                .collect(),
            notation: prog.to_product_notation(),
            verified,
            circuit: CircuitDocument::from_program(&prog, n),
        });
    }
    if args.json {
        emit_json(
            out,
            &SynthReport {
                schema: SCHEMA_VERSION,
                n_bits: n,
                total_completions: total,
                completions: docs,
            },
        )?;
    } else {
        writeln!(out, "{total} affine reversible completion(s)")?;
        for d in &docs {
            writeln!(out, "map {}", d.map)?;
            if !d.assignment.is_empty() {
                writeln!(out, "  don't-cares: {}", d.assignment)?;
            }
            writeln!(out, "  circuit (rightmost first): {}", d.notation)?;
            writeln!(out, "  gates (application order):")?;
            for g in &d.circuit.gates {
                match g {
                    GateDocument::Cnot {
                        control,
                        target,
                        invert_target,
                        invert_control,
                    } => writeln!(
                        out,
                        "    cnot control={control} target={target}{}{}",
                        if *invert_control {
                            " invert_control"
                        } else {
                            ""
                        },
                        if *invert_target { " invert_target" } else { "" }
                    )?,
                    GateDocument::Not { target } => writeln!(out, "    not target={target}")?,
                }
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_clone(args: &CloneArgs, out: &mut dyn Write) -> CmdResult {
    let angles = BlochAngles::new(args.theta, args.phi)?;
    if !(1..=ROW_COUNT).contains(&args.row) {
        return Err(usage(format!(
            "--row must be in 1..={ROW_COUNT}, got {}",
            args.row
        )));
    }
    let m = machine(args.row, args.variant)?;
    let psi = bloch_state(&angles);
    let r = m.run(&psi)?;
    let (rin, rperp) = reference_states(&psi)?;
    let residuals = Residuals {
        copy0: mixture_residual(&r.rho0, &rin, &rperp, COPY_WEIGHT)?,
        copy1: mixture_residual(&r.rho1, &rin, &rperp, COPY_WEIGHT)?,
        ancilla: mixture_residual(&r.rho2, &rin, &rperp, ANCILLA_WEIGHT)?,
        ancilla_conjugated: mixture_residual(
            &r.rho2,
            &rin.conjugate(),
            &rperp.conjugate(),
            ANCILLA_WEIGHT,
        )?,
        output: r.output.phase_aligned_deviation(&expected_output(&psi)?)?,
    };
    let report = CloneReport {
        schema: SCHEMA_VERSION,
        row: args.row,
        variant: args.variant.to_string(),
        theta: args.theta,
        phi: args.phi,
        input: state_amplitudes(&psi),
        output: state_amplitudes(&r.output),
        rho0: matrix(&r.rho0),
        rho1: matrix(&r.rho1),
        rho2: matrix(&r.rho2),
        fidelities: [r.f0, r.f1, r.f2],
        residuals,
        circuit: CircuitDocument::from_program(m.program(), 3),
    };
    if args.json {
        emit_json(out, &report)?;
        return Ok(EXIT_OK);
    }
    writeln!(
        out,
        "row {} {} circuit {}",
        report.row,
        report.variant,
        m.program().to_product_notation()
    )?;
    writeln!(out, "input  {psi}")?;
    writeln!(out, "output {}", r.output)?;
    for (name, rho) in [("rho0", &r.rho0), ("rho1", &r.rho1), ("rho2", &r.rho2)] {
        let e = |i: usize, j: usize| rho.get(i, j);
        writeln!(
            out,
            "{name} = [[{:.10}, {:.10}{:+.10}i], [{:.10}{:+.10}i, {:.10}]]",
            e(0, 0).re,
            e(0, 1).re,
            e(0, 1).im,
            e(1, 0).re,
            e(1, 0).im,
            e(1, 1).re
        )?;
    }
    writeln!(
        out,
        "fidelities f0 = {:.10}  f1 = {:.10}  f2 = {:.10}",
        r.f0, r.f1, r.f2
    )?;
    let res = &report.residuals;
    writeln!(
        out,
        "residuals: copies {:.1e} {:.1e}, ancilla {:.1e} (conjugated {:.1e}), output {:.1e}",
        res.copy0, res.copy1, res.ancilla, res.ancilla_conjugated, res.output
    )?;
    Ok(EXIT_OK)
}

/// `n` Bloch inputs uniform on the sphere, reproducible from `seed`.
pub fn sample_inputs(n: usize, seed: u64) -> Vec<BlochAngles> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let u: f64 = rng.random_range(-1.0..=1.0);
            let phi: f64 = rng.random_range(0.0..TAU);
            BlochAngles::new(u.acos(), phi).expect("sampled angles are in range")
        })
        .collect()
}

fn cmd_verify_table(args: &VerifyArgs, out: &mut dyn Write) -> CmdResult {
    let inputs = sample_inputs(SWEEP_INPUTS, args.seed);
    let cells = verify_table(&inputs)?;
    let passed = cells.iter().filter(|c| c.passed).count();
    let report = VerifyReport {
        schema: SCHEMA_VERSION,
        seed: args.seed,
        inputs: inputs.len(),
        tolerance: EXACT_TOL,
        passed,
        cells: cells
            .iter()
            .map(|c| SweepCellDocument {
                row: c.row,
                variant: c.variant.to_string(),
                max_error: c.max_error,
                passed: c.passed,
            })
            .collect(),
    };
    if args.json {
        emit_json(out, &report)?;
    } else {
        for c in &report.cells {
            writeln!(
                out,
                "row {:>2} {:<5} {}  max error {:.2e}",
                c.row,
                c.variant,
                if c.passed { "pass" } else { "FAIL" },
                c.max_error
            )?;
        }
        writeln!(
            out,
            "{passed}/{} pass (seed {}, {} inputs)",
            report.cells.len(),
            args.seed,
            inputs.len()
        )?;
    }
    Ok(if passed == report.cells.len() {
        EXIT_OK
    } else {
        EXIT_FAILED
    })
}

fn cmd_fidelity(args: &FidelityArgs, out: &mut dyn Write) -> CmdResult {
    let rows: Vec<usize> = match args.row {
        Some(r) if (1..=ROW_COUNT).contains(&r) => vec![r],
        Some(r) => return Err(usage(format!("--row must be in 1..={ROW_COUNT}, got {r}"))),
        None => (1..=ROW_COUNT).collect(),
    };
    let (n_theta, n_phi) = args.grid;
    let mut report = FidelityReport {
        schema: SCHEMA_VERSION,
        grid: [n_theta, n_phi],
        rows: Vec::new(),
    };
    for row in rows {
        for variant in Variant::BOTH {
            let f = machine_average_fidelities(row, variant, n_theta, n_phi)?;
            report.rows.push(FidelityRow {
                row,
                variant: variant.to_string(),
                copy0: f.copy0,
                copy1: f.copy1,
                ancilla: f.ancilla,
            });
        }
    }
    if args.json {
        emit_json(out, &report)?;
    } else {
        writeln!(
            out,
            "grid {n_theta}x{n_phi} (Gauss-Legendre in cos theta x uniform phi)"
        )?;
        for f in &report.rows {
            writeln!(
                out,
                "row {:>2} {:<5} F_copy = {:.7} / {:.7}  F_ancilla = {:.7}",
                f.row, f.variant, f.copy0, f.copy1, f.ancilla
            )?;
        }
    }
    Ok(EXIT_OK)
}
