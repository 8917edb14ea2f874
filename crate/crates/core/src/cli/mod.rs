//! The `ito-frft` command line. [`run`] parses arguments, dispatches to the
//! library and maps failures to exit codes:
//! 0 success, 1 domain error, 2 usage error, 3 verification failure.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::Error;
use crate::io::{resolve_output_dir, write_spectrum_csv, CoeffFile, ComplexValue, OUT_DIR_ENV};
use crate::ito_hermite::{hermite_ito, null_index_set, zero_radii, PolyIndex, ScaledPoint};
use crate::kernels::{bergman_kernel, frft_kernel, gram_kernel, mehler_closed, mehler_series, TransformParams};
use crate::quadrature::{plane_rule, DEFAULT_N_ANGULAR, DEFAULT_N_RADIAL};
use crate::spectral::{kw_constant_default, schatten_partial, spectrum};
use crate::transforms::{angular_coefficients, dual_apply, frft_apply, rotational_frft, RadialFunction};
use crate::verify::{run_all, Report, RunConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

/// Cutoffs at which `summary.json` reports Schatten partial sums.
pub const SCHATTEN_CUTOFFS: [usize; 3] = [10, 20, 40];

#[derive(Debug, Parser)]
#[command(name = "ito-frft", version, about = "Ito-Hermite FrFT, its dual transform and Bergman-space spectra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate H^ν_{m,n}, its zero circles, or the null index set at a point.
    Hermite(HermiteArgs),
    /// Evaluate one of the closed-form kernels.
    Kernel(KernelArgs),
    /// Apply a transform to a coefficient file over a grid.
    Transform(TransformArgs),
    /// Tabulate singular values; writes spectrum.csv and summary.json.
    Spectrum(SpectrumArgs),
    /// Run every check; writes report.json.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum HermiteAction {
    Eval,
    Zeros,
    Nullset,
}

#[derive(Debug, Args)]
struct HermiteArgs {
    action: HermiteAction,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    nu: f64,
    /// First index (the box bound for `nullset`).
    #[arg(long)]
    m: usize,
    /// Second index (the box bound for `nullset`).
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    z_re: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    z_im: f64,
    /// Threshold on |ψ_{m,n}(z)| for `nullset`.
    #[arg(long, default_value_t = 1e-10, allow_negative_numbers = true)]
    tol: f64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KernelKind {
    /// Mehler kernel in closed form. `--trunc` adds the series
    /// Σ u^m v^n ψ_{m,n}(z) ψ_{m,n}(w), which is ν/π times it.
    Mehler,
    /// FrFT kernel K^ν_{u,v}(z; w).
    Frft,
    /// Bi-disk Bergman kernel at (z, w) against (a, b).
    Bergman,
    /// Kernel of R*R between z and the point a, with source point w.
    Gram,
}

#[derive(Debug, Args)]
struct KernelArgs {
    kind: KernelKind,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    nu: f64,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "0.5")]
    u: Complex64,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "0.5")]
    v: Complex64,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "0")]
    z: Complex64,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "0")]
    w: Complex64,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "0")]
    a: Complex64,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "0")]
    b: Complex64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    alpha: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    beta: f64,
    /// Also report the series truncated at this order (mehler, gram).
    #[arg(long)]
    trunc: Option<usize>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TransformKind {
    /// F^ν_{u,v} f(ξ), grid over Re ξ and Im ξ.
    Frft,
    /// R^ν_w f(u, v), grid over real u and v.
    Dual,
    /// Hankel transform of the angular mode `--order` of f, grid over y.
    Hankel,
}

#[derive(Debug, Args)]
struct TransformArgs {
    kind: TransformKind,
    /// CoeffFile JSON; ν is taken from the file.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "0.5")]
    u: Complex64,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "0.5")]
    v: Complex64,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "1")]
    w: Complex64,
    /// Angular mode for `hankel`.
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    order: i64,
    /// First axis as center:half-width:count.
    #[arg(long, value_parser = parse_axis, allow_hyphen_values = true, default_value = "0:0:1")]
    grid_x: Axis,
    /// Second axis as center:half-width:count (ignored by `hankel`).
    #[arg(long, value_parser = parse_axis, allow_hyphen_values = true, default_value = "0:0:1")]
    grid_y: Axis,
    #[arg(long, default_value_t = DEFAULT_N_RADIAL)]
    n_radial: usize,
    #[arg(long, default_value_t = DEFAULT_N_ANGULAR)]
    n_angular: usize,
}

#[derive(Debug, Args)]
struct SpectrumArgs {
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    nu: f64,
    #[arg(long, allow_negative_numbers = true)]
    alpha: f64,
    #[arg(long, allow_negative_numbers = true)]
    beta: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    w_re: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    w_im: f64,
    #[arg(long)]
    max_m: usize,
    #[arg(long)]
    max_n: usize,
    /// Schatten exponent for the partial sums in summary.json.
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    schatten: f64,
    /// Output directory; ITO_FRFT_OUT_DIR takes precedence.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// RunConfig JSON. Without it every default applies.
    #[arg(long)]
    config: Option<PathBuf>,
}

/// One grid axis: `count` evenly spaced values across `center ± half`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub center: f64,
    pub half: f64,
    pub count: usize,
}

impl Axis {
    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.center];
        }
        let step = 2.0 * self.half / (self.count - 1) as f64;
        (0..self.count).map(|i| self.center - self.half + step * i as f64).collect()
    }
}

fn parse_axis(s: &str) -> std::result::Result<Axis, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [c, h, n] = parts[..] else {
        return Err(format!("expected center:half-width:count, got {s:?}"));
    };
    let center: f64 = c.trim().parse().map_err(|e| format!("center: {e}"))?;
    let half: f64 = h.trim().parse().map_err(|e| format!("half-width: {e}"))?;
    let count: usize = n.trim().parse().map_err(|e| format!("count: {e}"))?;
    if !center.is_finite() || !(half >= 0.0) || !half.is_finite() {
        return Err("center must be finite and half-width >= 0".into());
    }
    if count == 0 {
        return Err("count must be >= 1".into());
    }
    Ok(Axis { center, half, count })
}

/// `re` or `re,im`.
fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    let mut it = s.split(',');
    let re: f64 = it.next().unwrap_or("").trim().parse().map_err(|e| format!("real part: {e}"))?;
    let im: f64 = match it.next() {
        Some(t) => t.trim().parse().map_err(|e| format!("imaginary part: {e}"))?,
        None => 0.0,
    };
    if it.next().is_some() || !re.is_finite() || !im.is_finite() {
        return Err(format!("expected re or re,im, got {s:?}"));
    }
    Ok(Complex64::new(re, im))
}

enum Failure {
    Domain(String),
    Usage(String),
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type CliResult = std::result::Result<(), Failure>;

/// Where a run writes: the two output streams and the value of the
/// output-directory environment override.
pub struct Io<'a> {
    pub out: &'a mut dyn Write,
    pub err: &'a mut dyn Write,
    pub out_dir_env: Option<PathBuf>,
}

/// Runs the tool on `args` (program name first) against the process streams
/// and environment, returning the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut io = Io {
        out: &mut stdout.lock(),
        err: &mut stderr.lock(),
        out_dir_env: std::env::var_os(OUT_DIR_ENV).filter(|v| !v.is_empty()).map(PathBuf::from),
    };
    run_with(args, &mut io)
}

pub fn run_with<I, T>(args: I, io: &mut Io) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(io.err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(io.out, "{text}");
                EXIT_OK
            };
        }
    };
    let outcome = match cli.command {
        Command::Hermite(a) => cmd_hermite(&a, io),
        Command::Kernel(a) => cmd_kernel(&a, io),
        Command::Transform(a) => cmd_transform(&a, io),
        Command::Spectrum(a) => cmd_spectrum(&a, io),
        Command::Verify(a) => cmd_verify(&a, io),
    };
    let (code, msg) = match outcome {
        Ok(()) => (EXIT_OK, None),
        Err(Failure::Domain(msg)) => (EXIT_DOMAIN, Some(msg)),
        Err(Failure::Usage(msg)) => (EXIT_USAGE, Some(msg)),
        Err(Failure::Verify) => (EXIT_VERIFY, None),
    };
    if let Some(msg) = msg {
        let _ = writeln!(io.err, "error: {msg}");
    }
    let _ = io.out.flush();
    code
}

fn print_json<T: Serialize>(io: &mut Io, value: &T) -> CliResult {
    let text = serde_json::to_string(value).expect("output serializes");
    writeln!(io.out, "{text}").map_err(|e| Failure::Domain(format!("cannot write output: {e}")))
}

fn write_file(path: &Path, contents: &[u8]) -> CliResult {
    fs::write(path, contents).map_err(|e| Failure::Domain(format!("cannot write {}: {e}", path.display())))
}

fn create_dir(dir: &Path) -> CliResult {
    fs::create_dir_all(dir).map_err(|e| Failure::Domain(format!("cannot create {}: {e}", dir.display())))
}

#[derive(Serialize)]
struct ValueOut {
    value: ComplexValue,
}

#[derive(Serialize)]
struct ZerosOut {
    radii: Vec<f64>,
    origin: bool,
}

#[derive(Serialize)]
struct IndicesOut {
    indices: Vec<[usize; 2]>,
}

fn cmd_hermite(a: &HermiteArgs, io: &mut Io) -> CliResult {
    let z = Complex64::new(a.z_re, a.z_im);
    let idx = PolyIndex::new(a.m, a.n);
    match a.action {
        HermiteAction::Eval => {
            let value = hermite_ito(ScaledPoint::new(a.nu, z)?, idx)?;
            print_json(io, &ValueOut { value: value.into() })?;
        }
        HermiteAction::Zeros => {
            let zs = zero_radii(a.nu, idx)?;
            print_json(io, &ZerosOut {
                radii: zs.radii,
                origin: zs.includes_origin,
            })?;
        }
        HermiteAction::Nullset => {
            let set = null_index_set(a.nu, z, a.m, a.n, a.tol)?;
            print_json(io, &IndicesOut {
                indices: set.into_iter().map(|i| [i.m, i.n]).collect(),
            })?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct KernelOut {
    value: ComplexValue,
    #[serde(skip_serializing_if = "Option::is_none")]
    series: Option<ComplexValue>,
}

fn cmd_kernel(a: &KernelArgs, io: &mut Io) -> CliResult {
    let (value, series) = match a.kind {
        KernelKind::Mehler => {
            let p = TransformParams::new(a.nu, a.u, a.v)?;
            let series = a.trunc.map(|t| mehler_series(&p, a.z, a.w, t)).transpose()?;
            (mehler_closed(&p, a.z, a.w)?, series)
        }
        KernelKind::Frft => {
            let p = TransformParams::new(a.nu, a.u, a.v)?;
            (frft_kernel(&p, a.z, a.w)?, None)
        }
        KernelKind::Bergman => (bergman_kernel(a.alpha, a.beta, (a.z, a.w), (a.a, a.b))?, None),
        KernelKind::Gram => {
            let trunc = a.trunc.unwrap_or(60);
            (gram_kernel(a.nu, a.alpha, a.beta, a.w, a.z, a.a, trunc)?, None)
        }
    };
    print_json(io, &KernelOut {
        value: value.into(),
        series: series.map(Into::into),
    })
}

#[derive(Serialize)]
#[serde(untagged)]
enum Point {
    Pair { u: ComplexValue, v: ComplexValue },
    Plane(ComplexValue),
    Real(f64),
}

#[derive(Serialize)]
struct Sample {
    point: Point,
    value: ComplexValue,
}

fn cmd_transform(a: &TransformArgs, io: &mut Io) -> CliResult {
    let f = CoeffFile::read(&a.input)?;
    let nu = f.nu();
    let xs = a.grid_x.values();
    let ys = a.grid_y.values();
    let mut out = Vec::new();
    match a.kind {
        TransformKind::Frft => {
            let p = TransformParams::new(nu, a.u, a.v)?;
            let rule = plane_rule(nu, a.n_radial, a.n_angular)?;
            for &x in &xs {
                for &y in &ys {
                    let xi = Complex64::new(x, y);
                    let value = frft_apply(&p, &f, xi, &rule)?;
                    out.push(Sample {
                        point: Point::Plane(xi.into()),
                        value: value.into(),
                    });
                }
            }
        }
        TransformKind::Dual => {
            let rule = plane_rule(nu, a.n_radial, a.n_angular)?;
            for &x in &xs {
                for &y in &ys {
                    let uv = (Complex64::new(x, 0.0), Complex64::new(y, 0.0));
                    let value = dual_apply(nu, a.w, &f, uv, &rule)?;
                    out.push(Sample {
                        point: Point::Pair {
                            u: uv.0.into(),
                            v: uv.1.into(),
                        },
                        value: value.into(),
                    });
                }
            }
        }
        TransformKind::Hankel => {
            if a.u.im != 0.0 || a.v.im != 0.0 {
                return Err(Failure::Domain("hankel transform takes real u and v".into()));
            }
            let k = a.order;
            // Probe once so that aliasing is reported instead of surfacing as NaN.
            angular_coefficients(&f, [k], 1.0, a.n_angular)?;
            let f = Arc::new(f);
            let n_angular = a.n_angular;
            let profile = RadialFunction::callable(move |r| {
                angular_coefficients(&*f, [k], r, n_angular)
                    .map(|g| g[&k])
                    .unwrap_or(Complex64::new(f64::NAN, f64::NAN))
            });
            for &y in &xs {
                let value = rotational_frft(nu, a.u.re, a.v.re, k, &profile, Complex64::new(y, 0.0), a.n_radial)?;
                out.push(Sample {
                    point: Point::Real(y),
                    value: value.into(),
                });
            }
        }
    }
    print_json(io, &out)
}

#[derive(Serialize)]
struct TopEntry {
    m: usize,
    n: usize,
    s: f64,
}

#[derive(Serialize)]
struct PartialSum {
    cutoff: usize,
    value: f64,
}

#[derive(Serialize)]
struct SchattenOut {
    p: f64,
    partial_sums: Vec<PartialSum>,
}

#[derive(Serialize)]
struct KwOut {
    value: f64,
    lower: f64,
    upper: f64,
    in_bracket: bool,
}

#[derive(Serialize)]
struct Summary {
    nu: f64,
    alpha: f64,
    beta: f64,
    w: ComplexValue,
    max_m: usize,
    max_n: usize,
    top: Vec<TopEntry>,
    schatten: SchattenOut,
    kw: KwOut,
}

fn cmd_spectrum(a: &SpectrumArgs, io: &mut Io) -> CliResult {
    let w = Complex64::new(a.w_re, a.w_im);
    let spec = spectrum(a.nu, a.alpha, a.beta, w, a.max_m, a.max_n)?;
    let partial_sums = SCHATTEN_CUTOFFS
        .iter()
        .map(|&c| {
            let box_c = spectrum(a.nu, a.alpha, a.beta, w, c, c)?;
            Ok(PartialSum {
                cutoff: c,
                value: schatten_partial(&box_c, a.schatten)?,
            })
        })
        .collect::<crate::Result<Vec<_>>>()?;
    let kw = kw_constant_default(a.nu, a.alpha, a.beta, w)?;
    let summary = Summary {
        nu: a.nu,
        alpha: a.alpha,
        beta: a.beta,
        w: w.into(),
        max_m: a.max_m,
        max_n: a.max_n,
        top: spec
            .sorted()
            .into_iter()
            .take(10)
            .map(|(i, s)| TopEntry { m: i.m, n: i.n, s })
            .collect(),
        schatten: SchattenOut {
            p: a.schatten,
            partial_sums,
        },
        kw: KwOut {
            value: kw.value,
            lower: kw.lower,
            upper: kw.upper,
            in_bracket: kw.in_bracket(),
        },
    };

    let dir = resolve_output_dir(io.out_dir_env.as_deref(), a.out_dir.as_deref());
    create_dir(&dir)?;
    let mut csv = Vec::new();
    write_spectrum_csv(&spec, &mut csv)?;
    write_file(&dir.join("spectrum.csv"), &csv)?;
    let json = serde_json::to_string_pretty(&summary).expect("summary serializes");
    write_file(&dir.join("summary.json"), json.as_bytes())?;
    writeln!(io.out, "{}", dir.join("summary.json").display())
        .map_err(|e| Failure::Domain(format!("cannot write output: {e}")))
}

fn cmd_verify(a: &VerifyArgs, io: &mut Io) -> CliResult {
    let cfg = match &a.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read config {}: {e}", path.display())))?;
            serde_json::from_str::<RunConfig>(&text)
                .map_err(|e| Failure::Usage(format!("invalid config {}: {e}", path.display())))?
        }
        None => RunConfig::default(),
    };
    cfg.validate().map_err(|e| Failure::Usage(format!("invalid config: {e}")))?;
    let suites = run_all(&cfg).map_err(|e| Failure::Usage(e.to_string()))?;
    let report = Report::new(&cfg, &suites);

    for check in &report.checks {
        let status = serde_json::to_value(check.status).expect("status serializes");
        let _ = writeln!(
            io.out,
            "{:<10} {:<34} observed {:<12.3e} tolerance {:.1e}",
            status.as_str().unwrap_or("?"),
            check.name,
            check.observed,
            check.tolerance
        );
    }
    let dir = resolve_output_dir(io.out_dir_env.as_deref(), cfg.output_dir.as_deref());
    create_dir(&dir)?;
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    write_file(&dir.join("report.json"), json.as_bytes())?;
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Verify)
    }
}

#[cfg(test)]
mod tests;
