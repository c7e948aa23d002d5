//! Command-line front end. [`run`] does all the work so it can be driven
//! from tests without spawning a process.

pub mod request;
pub mod verify;

use std::io::{BufRead, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::element::{variant_for, ElementKind, HalfSpaceCut};
use crate::equiv_poly::equivalent_polynomial;
use crate::{integrate, BoundaryMode, Integral, PolyOrder, Result};
use request::{parse_order, resolve_element, InputError, IntegralRequest, IntegralResponse, Num};
use verify::{VerifyConfig, DEFAULT_ELEMENTS};

/// Signature shared by [`crate::integrate`] and the corrupted kernels used
/// as negative controls.
pub type Kernel =
    dyn Fn(ElementKind, &HalfSpaceCut, &[u32], PolyOrder, BoundaryMode) -> Result<Integral>;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "cutquad",
    version,
    about = "Exact polynomial integrals over cut reference elements"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Integrate one basis element, or a JSON-lines batch from stdin when
    /// --element is omitted.
    Integrate(IntegrateArgs),
    /// Equivalent-polynomial coefficients for a cut.
    EquivPoly(EquivArgs),
    /// Compare the kernels against the clipping oracle on random cuts.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Half,
    Full,
}

impl From<Mode> for BoundaryMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Half => BoundaryMode::Half,
            Mode::Full => BoundaryMode::Full,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct CutArgs {
    /// segment, square, cube, hypercube (with --dim), hypercubeN, triangle,
    /// tetrahedron or prism
    #[arg(long)]
    element: Option<String>,
    #[arg(long)]
    dim: Option<usize>,
    /// Comma separated normal coefficients
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    normal: Option<Vec<f64>>,
    #[arg(long, allow_hyphen_values = true)]
    d: Option<f64>,
    /// -1 for the interface, 0 for the subdomain
    #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
    s: i32,
    #[arg(long, value_enum, default_value = "half")]
    boundary_mode: Mode,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Debug, Args)]
struct IntegrateArgs {
    #[command(flatten)]
    cut: CutArgs,
    /// Comma separated basis exponents
    #[arg(long, value_delimiter = ',')]
    powers: Option<Vec<u32>>,
    /// Also report the value for the cut scaled to a unit normal
    #[arg(long)]
    normalize: bool,
}

#[derive(Debug, Args)]
struct EquivArgs {
    #[command(flatten)]
    cut: CutArgs,
    #[arg(long)]
    degree: u32,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// `all` or a comma separated list of element names
    #[arg(long, default_value = "all")]
    elements: String,
    #[arg(long, default_value_t = 4)]
    max_degree: u32,
    /// Perturb the kernel results (negative control; must fail)
    #[arg(long)]
    inject_fault: bool,
}

fn required<T>(value: Option<T>, field: &str) -> std::result::Result<T, InputError> {
    value.ok_or_else(|| InputError::new(field, "missing"))
}

/// Runs the tool and returns the process exit code.
pub fn run<I, S>(
    args: I,
    stdin: &mut dyn BufRead,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = write!(stderr, "{e}");
            return EXIT_INPUT;
        }
        Err(e) => {
            let _ = write!(stdout, "{e}");
            return EXIT_OK;
        }
    };
    let result = match cli.command {
        Command::Integrate(a) => cmd_integrate(a, stdin, stdout),
        Command::EquivPoly(a) => cmd_equiv_poly(a, stdout),
        Command::Verify(a) => return cmd_verify(a, stdout, stderr),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn emit(out: &mut dyn Write, format: Format, resp: &IntegralResponse) {
    let line = match format {
        Format::Json => resp.to_json(),
        Format::Csv => resp.to_csv(),
    };
    let _ = writeln!(out, "{line}");
}

fn cmd_integrate(
    a: IntegrateArgs,
    stdin: &mut dyn BufRead,
    out: &mut dyn Write,
) -> std::result::Result<(), InputError> {
    let format = a.cut.format;
    if let Format::Csv = format {
        let _ = writeln!(out, "{}", IntegralResponse::CSV_HEADER);
    }
    if let Some(element) = a.cut.element {
        let req = IntegralRequest {
            element,
            dim: a.cut.dim,
            normal: required(a.cut.normal, "normal")?,
            d: required(a.cut.d, "d")?,
            powers: required(a.powers, "powers")?,
            s: a.cut.s,
            boundary_mode: a.cut.boundary_mode.into(),
            normalize: a.normalize,
        };
        emit(out, format, &req.compute()?);
        return Ok(());
    }
    for (i, line) in stdin.lines().enumerate() {
        let line = line.map_err(|e| InputError::new("stdin", e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let located =
            |e: InputError| InputError::new(e.field, format!("{} (line {})", e.message, i + 1));
        let req: IntegralRequest = serde_json::from_str(&line)
            .map_err(|e| located(InputError::new(json_field(&e.to_string()), e.to_string())))?;
        emit(out, format, &req.compute().map_err(located)?);
    }
    Ok(())
}

/// Field named in a serde_json message (``missing field `d` `` etc.).
fn json_field(message: &str) -> String {
    message
        .split('`')
        .nth(1)
        .filter(|f| f.chars().all(|c| c.is_ascii_alphanumeric() || c == '_'))
        .unwrap_or("request")
        .to_string()
}

#[derive(Serialize)]
struct EquivRecord {
    element: String,
    degree: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    variant: Option<crate::TetVariant>,
    basis: Vec<Vec<u32>>,
    moments: Vec<Num>,
    coefficients: Vec<Num>,
    residual: Num,
}

fn cmd_equiv_poly(a: EquivArgs, out: &mut dyn Write) -> std::result::Result<(), InputError> {
    let c = a.cut;
    let kind = resolve_element(&required(c.element, "element")?, c.dim)?;
    let cut = HalfSpaceCut::new(required(c.normal, "normal")?, required(c.d, "d")?);
    if cut.normal.len() != kind.dim() {
        return Err(InputError::new(
            "normal",
            format!(
                "expected {} coefficients, got {}",
                kind.dim(),
                cut.normal.len()
            ),
        ));
    }
    let s = parse_order(c.s)?;
    let p = equivalent_polynomial(kind, a.degree, &cut, s, c.boundary_mode.into()).map_err(
        |e| match e {
            crate::Error::DegreeCap { .. } => InputError::new("degree", e.to_string()),
            other => InputError::from(other),
        },
    )?;
    match c.format {
        Format::Json => {
            let record = EquivRecord {
                element: kind.to_string(),
                degree: a.degree,
                variant: variant_for(kind, &cut),
                basis: p.basis.entries.clone(),
                moments: p.moments.iter().copied().map(Num).collect(),
                coefficients: p.coefficients.iter().copied().map(Num).collect(),
                residual: Num(p.residual),
            };
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string(&record).expect("records serialize")
            );
        }
        Format::Csv => {
            let _ = writeln!(out, "index,powers,moment,coefficient");
            for (i, e) in p.basis.entries.iter().enumerate() {
                let powers: Vec<String> = e.iter().map(|k| k.to_string()).collect();
                let _ = writeln!(
                    out,
                    "{i},{},{},{}",
                    powers.join(" "),
                    Num(p.moments[i]),
                    Num(p.coefficients[i])
                );
            }
        }
    }
    Ok(())
}

fn parse_elements(list: &str) -> std::result::Result<Vec<ElementKind>, InputError> {
    if list == "all" {
        return Ok(DEFAULT_ELEMENTS.to_vec());
    }
    list.split(',')
        .map(|name| {
            resolve_element(name.trim(), None).map_err(|e| InputError::new("elements", e.message))
        })
        .collect()
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let elements = match parse_elements(&a.elements) {
        Ok(e) => e,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INPUT;
        }
    };
    if a.max_degree > crate::polylog::MAX_TOTAL_DEGREE {
        let _ = writeln!(
            err,
            "error: invalid `max-degree`: above {}",
            crate::polylog::MAX_TOTAL_DEGREE
        );
        return EXIT_INPUT;
    }
    let config = VerifyConfig {
        seed: a.seed,
        trials: a.trials,
        elements,
        max_degree: a.max_degree,
    };
    let report = if a.inject_fault {
        verify::verify(&config, &faulty_kernel)
    } else {
        verify::verify(&config, &integrate)
    };
    let _ = write!(out, "{}", report.render());
    if report.passed() {
        EXIT_OK
    } else {
        if let Some(f) = report.worst_failure() {
            let json = serde_json::to_string(&f.request).unwrap_or_default();
            let _ = writeln!(err, "verification failed; worst case: {json}");
        }
        EXIT_VERIFY
    }
}

/// Kernel with a small relative error on subdomain values.
fn faulty_kernel(
    kind: ElementKind,
    cut: &HalfSpaceCut,
    powers: &[u32],
    s: PolyOrder,
    mode: BoundaryMode,
) -> Result<Integral> {
    integrate(kind, cut, powers, s, mode).map(|mut r| {
        if s == PolyOrder::SUBDOMAIN {
            r.value *= 1.0 + 1e-6;
        }
        r
    })
}
