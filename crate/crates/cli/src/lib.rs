//! Command-line front end for `landau-core`.
//!
//! [`run`] takes the full argument vector and writers for the output and
//! error streams, and returns the process exit code.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use landau_core::field::{sample_field, FieldSample, FieldSource, GridSpec};
use landau_core::lg_beam::{gouy_phase, LGParams};
use landau_core::output::{fmt17, json_num};
use landau_core::superposition::tracking_samples;
use landau_core::verify;
use landau_core::{
    analytic_rotation_rate, decompose_current, density, energy, expectations, measured_rotation_rate,
    radial_wavefunction, Error, ModeIndex, PhysicalScales, SuperpositionSpec,
};
use serde_json::Value;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(name = "landau", version, about = "Landau states, currents and beam interference")]
struct Cli {
    #[command(flatten)]
    scales: ScaleArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct ScaleArgs {
    /// Magnetic field strength B.
    #[arg(long, global = true, default_value_t = 1.0)]
    field: f64,
    /// Electron mass.
    #[arg(long, global = true, default_value_t = 1.0)]
    mass: f64,
    /// Magnitude of the electron charge.
    #[arg(long, global = true, default_value_t = 1.0)]
    charge: f64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Single-mode density and current at a point, or on a grid.
    State(StateArgs),
    /// Single-mode density and current grid.
    Field(FieldArgs),
    /// OAM and energy expectation values.
    Expect(ModeArgs),
    /// Two-mode superposition grids, one per Z.
    Superpose(SuperposeArgs),
    /// Analytic and measured pattern rotation rates.
    RotationTable(RotationArgs),
    /// Width, curvature and Gouy phase of a free-space Laguerre–Gauss beam.
    Lgbeam(LgArgs),
    /// Runs the verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Args, Clone)]
struct ModeArgs {
    /// Radial index.
    #[arg(long, conflicts_with = "n", required_unless_present = "n")]
    p: Option<u32>,
    /// Landau index.
    #[arg(long)]
    n: Option<u32>,
    /// Azimuthal index.
    #[arg(long, allow_negative_numbers = true)]
    m: i32,
}

impl ModeArgs {
    fn mode(&self) -> landau_core::Result<ModeIndex> {
        match (self.p, self.n) {
            (Some(p), _) => Ok(ModeIndex::new(p, self.m)),
            (None, Some(n)) => ModeIndex::from_landau(n, self.m),
            (None, None) => Err(Error::Configuration("one of --p or --n is required".into())),
        }
    }
}

#[derive(Debug, Args, Clone)]
struct GridArgs {
    /// Points per side.
    #[arg(long, default_value_t = 301)]
    grid: usize,
    /// Half width in units of l_B.
    #[arg(long, default_value_t = 12.0)]
    half_width: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Args)]
struct StateArgs {
    #[command(flatten)]
    mode: ModeArgs,
    /// Radius (physical units). Without it a grid is written.
    #[arg(long)]
    r: Option<f64>,
    #[command(flatten)]
    grid: GridArgs,
}

#[derive(Debug, Args)]
struct FieldArgs {
    #[command(flatten)]
    mode: ModeArgs,
    #[command(flatten)]
    grid: GridArgs,
}

#[derive(Debug, Args)]
struct SuperposeArgs {
    #[arg(long, allow_negative_numbers = true)]
    m1: i32,
    #[arg(long, allow_negative_numbers = true)]
    m2: i32,
    #[arg(long, default_value_t = 0)]
    p1: u32,
    #[arg(long, default_value_t = 0)]
    p2: u32,
    /// Mixing amplitude of mode 1 (default from the mixing rule).
    #[arg(long, allow_negative_numbers = true)]
    a: Option<f64>,
    /// Mixing amplitude of mode 2 (default from the mixing rule).
    #[arg(long, allow_negative_numbers = true)]
    b: Option<f64>,
    /// Comma-separated Z = z/z_m values.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    z_list: String,
    #[command(flatten)]
    grid: GridArgs,
}

#[derive(Debug, Args)]
struct RotationArgs {
    /// Semicolon-separated nodeless pairs, e.g. "1,-1;1,-2".
    #[arg(long, allow_hyphen_values = true)]
    pairs: Option<String>,
    /// Number of Z samples for the measured rate.
    #[arg(long, default_value_t = 4)]
    samples: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output directory; prints to stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct LgArgs {
    #[arg(long, default_value_t = 0)]
    p: u32,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0)]
    m: i32,
    /// Beam waist.
    #[arg(long, default_value_t = 2.0)]
    w0: f64,
    /// Longitudinal wavenumber.
    #[arg(long, default_value_t = 1.0)]
    k: f64,
    /// Comma-separated z values (default: -3 z_R to 3 z_R in steps of z_R/2).
    #[arg(long, allow_hyphen_values = true)]
    z_list: Option<String>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Writes the report here as well as to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(Error),
    Io(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Parses `argv` (including the program name), executes the command and
/// returns the exit code: 0 on success, 1 on usage or domain errors, 2
/// when `verify` finds a failing criterion.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    1
                }
            };
        }
    };
    match execute(&cli, out, err) {
        Ok(()) => 0,
        Err(Failure::Verification) => 2,
        Err(Failure::Usage(msg)) | Err(Failure::Io(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    let scales = PhysicalScales::new(cli.scales.field, cli.scales.mass, cli.scales.charge)?;
    match &cli.command {
        Command::State(args) => state(args, &scales, out),
        Command::Field(args) => {
            let mode = args.mode.mode()?;
            write_mode_grid("field", mode, &args.grid, &scales, out)
        }
        Command::Expect(args) => expect(args, &scales, out),
        Command::Superpose(args) => superpose(args, &scales, out),
        Command::RotationTable(args) => rotation_table(args, &scales, out),
        Command::Lgbeam(args) => lgbeam(args, out),
        Command::Verify(args) => run_verify(args, out, err),
    }
}

fn mode_json(mode: ModeIndex) -> Value {
    obj([("p", Value::from(mode.p)), ("m", Value::from(mode.m)), ("n", Value::from(mode.n()))])
}

fn obj<const N: usize>(entries: [(&str, Value); N]) -> Value {
    let map: BTreeMap<String, Value> = entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
    serde_json::to_value(map).expect("string keys")
}

fn scales_json(scales: &PhysicalScales) -> Value {
    obj([
        ("field", json_num(scales.field())),
        ("mass", json_num(scales.mass())),
        ("charge", json_num(scales.charge())),
        ("magnetic_length", json_num(scales.magnetic_length())),
        ("magnetic_width", json_num(scales.magnetic_width())),
        ("cyclotron_frequency", json_num(scales.cyclotron_frequency())),
        ("larmor_frequency", json_num(scales.larmor_frequency())),
    ])
}

fn print_json(out: &mut dyn Write, value: &Value) -> CliResult<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(value).expect("serializable"))?;
    Ok(())
}

fn state(args: &StateArgs, scales: &PhysicalScales, out: &mut dyn Write) -> CliResult<()> {
    let mode = args.mode.mode()?;
    let Some(r) = args.r else {
        return write_mode_grid("state", mode, &args.grid, scales, out);
    };
    let rho = density(mode, scales, r)?;
    let radial = radial_wavefunction(mode, scales, r)?;
    let (j_can, j_gauge, j_total, omega) = if r > 0.0 {
        let c = decompose_current(mode, scales, r)?;
        (c.j_can_phi, c.j_gauge_phi, c.j_total_phi, json_num(c.omega_local))
    } else {
        (0.0, 0.0, 0.0, Value::Null)
    };
    print_json(
        out,
        &obj([
            ("mode", mode_json(mode)),
            ("r", json_num(r)),
            ("rho", json_num(rho)),
            ("radial_wavefunction", json_num(radial)),
            ("j_can_phi", json_num(j_can)),
            ("j_gauge_phi", json_num(j_gauge)),
            ("j_total_phi", json_num(j_total)),
            ("omega_local", omega),
        ]),
    )
}

fn expect(args: &ModeArgs, scales: &PhysicalScales, out: &mut dyn Write) -> CliResult<()> {
    let mode = args.mode()?;
    let e = expectations(mode, scales)?;
    let en = energy(mode, scales);
    print_json(
        out,
        &obj([
            ("mode", mode_json(mode)),
            ("L_can", json_num(e.l_can)),
            ("L_gauge", json_num(e.l_gauge)),
            ("L_mech", json_num(e.l_mech)),
            ("E_kinetic", json_num(e.e_osc_kinetic)),
            ("E_potential", json_num(e.e_osc_potential)),
            ("E_zeeman", json_num(e.e_zeeman)),
            ("E_total", json_num(e.e_total)),
            ("E_total_exact", json_num(en.total)),
            ("B_dot_mu", json_num(e.b_dot_mu)),
        ]),
    )
}

fn parse_list(flag: &str, text: &str) -> CliResult<Vec<(String, f64)>> {
    text.split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .map(|v| (tok.to_string(), v))
                .ok_or_else(|| Failure::Usage(format!("invalid number '{tok}' in {flag}")))
        })
        .collect()
}

fn grid_spec(args: &GridArgs) -> CliResult<GridSpec> {
    Ok(GridSpec::new(args.half_width, args.grid)?)
}

fn write_samples(path: &Path, samples: &[FieldSample], format: Format) -> CliResult<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_path(path)?;
            w.write_record(["X", "Y", "rho", "jx", "jy"])?;
            for s in samples {
                w.write_record([fmt17(s.x), fmt17(s.y), fmt17(s.rho), fmt17(s.jx), fmt17(s.jy)])?;
            }
            w.flush()?;
        }
        Format::Json => {
            let rows: Vec<Value> = samples
                .iter()
                .map(|s| {
                    obj([
                        ("X", json_num(s.x)),
                        ("Y", json_num(s.y)),
                        ("rho", json_num(s.rho)),
                        ("jx", json_num(s.jx)),
                        ("jy", json_num(s.jy)),
                    ])
                })
                .collect();
            fs::write(path, serde_json::to_string(&Value::Array(rows)).expect("serializable") + "\n")?;
        }
    }
    Ok(())
}

struct Manifest {
    command: &'static str,
    parameters: BTreeMap<String, Value>,
    scales: Value,
    outputs: Vec<String>,
}

impl Manifest {
    fn write(&self, dir: &Path) -> CliResult<()> {
        let value = obj([
            ("command", Value::from(self.command)),
            ("parameters", serde_json::to_value(&self.parameters).expect("string keys")),
            ("scales", self.scales.clone()),
            ("tool_version", Value::from(TOOL_VERSION)),
            ("outputs", Value::from(self.outputs.clone())),
        ]);
        fs::write(dir.join("manifest.json"), serde_json::to_string_pretty(&value).expect("serializable") + "\n")?;
        Ok(())
    }
}

fn grid_parameters(params: &mut BTreeMap<String, Value>, args: &GridArgs) {
    params.insert("grid".into(), Value::from(args.grid));
    params.insert("half_width".into(), json_num(args.half_width));
    params.insert("format".into(), Value::from(args.format.name()));
}

fn write_mode_grid(
    command: &'static str,
    mode: ModeIndex,
    args: &GridArgs,
    scales: &PhysicalScales,
    out: &mut dyn Write,
) -> CliResult<()> {
    let grid = grid_spec(args)?;
    let samples = sample_field(&FieldSource::Mode(mode), scales, &grid, 0.0)?;
    fs::create_dir_all(&args.out)?;
    let name = format!("{command}_p{}_m{}.{}", mode.p, mode.m, args.format.name());
    write_samples(&args.out.join(&name), &samples, args.format)?;

    let mut parameters = BTreeMap::new();
    parameters.insert("p".into(), Value::from(mode.p));
    parameters.insert("m".into(), Value::from(mode.m));
    grid_parameters(&mut parameters, args);
    Manifest { command, parameters, scales: scales_json(scales), outputs: vec![name.clone()] }.write(&args.out)?;
    writeln!(out, "{}", args.out.join(name).display())?;
    Ok(())
}

fn superpose(args: &SuperposeArgs, scales: &PhysicalScales, out: &mut dyn Write) -> CliResult<()> {
    let mode1 = ModeIndex::new(args.p1, args.m1);
    let mode2 = ModeIndex::new(args.p2, args.m2);
    let (da, db) = landau_core::default_mixing(args.m1, args.m2);
    let (a, b) = (args.a.unwrap_or(da), args.b.unwrap_or(db));
    let spec = SuperpositionSpec::new(mode1, mode2, a, b)?;
    let zs = parse_list("--z-list", &args.z_list)?;
    let grid = grid_spec(&args.grid)?;
    fs::create_dir_all(&args.grid.out)?;

    let mut outputs = Vec::new();
    for (token, z) in &zs {
        let samples = sample_field(&FieldSource::Superposition(spec), scales, &grid, *z)?;
        let name = format!(
            "superpose_p{}_m{}_p{}_m{}_Z{token}.{}",
            mode1.p,
            mode1.m,
            mode2.p,
            mode2.m,
            args.grid.format.name()
        );
        write_samples(&args.grid.out.join(&name), &samples, args.grid.format)?;
        writeln!(out, "{}", args.grid.out.join(&name).display())?;
        outputs.push(name);
    }

    let mut parameters = BTreeMap::new();
    parameters.insert("p1".into(), Value::from(args.p1));
    parameters.insert("m1".into(), Value::from(args.m1));
    parameters.insert("p2".into(), Value::from(args.p2));
    parameters.insert("m2".into(), Value::from(args.m2));
    parameters.insert("a".into(), json_num(a));
    parameters.insert("b".into(), json_num(b));
    parameters.insert("z_list".into(), Value::from(zs.iter().map(|(t, _)| t.clone()).collect::<Vec<_>>()));
    grid_parameters(&mut parameters, &args.grid);
    Manifest { command: "superpose", parameters, scales: scales_json(scales), outputs }.write(&args.grid.out)?;
    Ok(())
}

/// Nodeless pairs of the published rotation tables.
pub fn default_rotation_pairs() -> Vec<(i32, i32)> {
    let mut pairs = Vec::new();
    for k in 1..=8 {
        pairs.push((k, -k));
    }
    for k in 1..=8 {
        pairs.push((0, k));
        pairs.push((0, -k));
    }
    for k in 2..=8 {
        pairs.push((1, -k));
    }
    for k in 2..=8 {
        pairs.push((-1, k));
    }
    for k in 1..=7 {
        pairs.push((k, k + 1));
        pairs.push((-k, -k - 1));
    }
    pairs
}

fn parse_pairs(text: &str) -> CliResult<Vec<(i32, i32)>> {
    text.split(';')
        .filter(|chunk| !chunk.trim().is_empty())
        .map(|chunk| {
            let parts: Vec<&str> = chunk.split(',').map(str::trim).collect();
            let bad = || Failure::Usage(format!("invalid pair '{}' in --pairs (expected m1,m2)", chunk.trim()));
            if parts.len() != 2 {
                return Err(bad());
            }
            let m1 = parts[0].parse::<i32>().map_err(|_| bad())?;
            let m2 = parts[1].parse::<i32>().map_err(|_| bad())?;
            Ok((m1, m2))
        })
        .collect()
}

/// `2(n₁ − n₂)/(m₁ − m₂)` as an unreduced fraction with positive
/// denominator, or an integer when it divides evenly.
pub fn rate_fraction(m1: i32, m2: i32) -> String {
    let n = |m: i32| i64::from(m.max(0));
    let mut num = 2 * (n(m1) - n(m2));
    let mut den = i64::from(m1) - i64::from(m2);
    if den < 0 {
        num = -num;
        den = -den;
    }
    if num % den == 0 {
        (num / den).to_string()
    } else {
        format!("{num}/{den}")
    }
}

fn rotation_table(args: &RotationArgs, scales: &PhysicalScales, out: &mut dyn Write) -> CliResult<()> {
    let pairs = match &args.pairs {
        Some(text) => parse_pairs(text)?,
        None => default_rotation_pairs(),
    };
    if args.samples < 3 {
        return Err(Failure::Usage(format!("--samples must be at least 3, got {}", args.samples)));
    }
    let mut rows = Vec::new();
    for &(m1, m2) in &pairs {
        let spec = SuperpositionSpec::nodeless(m1, m2)?;
        let analytic = analytic_rotation_rate(&spec)?;
        let measured = measured_rotation_rate(&spec, scales, &tracking_samples(&spec, args.samples))?;
        rows.push((m1, m2, rate_fraction(m1, m2), analytic, measured));
    }

    let text = match args.format {
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|(m1, m2, frac, analytic, measured)| {
                    obj([
                        ("m1", Value::from(*m1)),
                        ("m2", Value::from(*m2)),
                        ("rate", Value::from(frac.clone())),
                        ("analytic", json_num(*analytic)),
                        ("measured", json_num(*measured)),
                    ])
                })
                .collect();
            serde_json::to_string_pretty(&Value::Array(rows)).expect("serializable") + "\n"
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["m1", "m2", "rate", "analytic", "measured"])?;
            for (m1, m2, frac, analytic, measured) in &rows {
                w.write_record([m1.to_string(), m2.to_string(), frac.clone(), fmt17(*analytic), fmt17(*measured)])?;
            }
            String::from_utf8(w.into_inner().map_err(|e| Failure::Io(e.to_string()))?).expect("utf8")
        }
    };

    match &args.out {
        None => write!(out, "{text}")?,
        Some(dir) => {
            fs::create_dir_all(dir)?;
            let name = format!("rotation_table.{}", args.format.name());
            fs::write(dir.join(&name), &text)?;
            let mut parameters = BTreeMap::new();
            let pair_text: Vec<String> = pairs.iter().map(|(a, b)| format!("{a},{b}")).collect();
            parameters.insert("pairs".into(), Value::from(pair_text.join(";")));
            parameters.insert("samples".into(), Value::from(args.samples));
            parameters.insert("format".into(), Value::from(args.format.name()));
            Manifest { command: "rotation-table", parameters, scales: scales_json(scales), outputs: vec![name.clone()] }
                .write(dir)?;
            writeln!(out, "{}", dir.join(name).display())?;
        }
    }
    Ok(())
}

fn lgbeam(args: &LgArgs, out: &mut dyn Write) -> CliResult<()> {
    let params = LGParams::new(args.w0, args.k)?;
    let mode = ModeIndex::new(args.p, args.m);
    let z_r = params.rayleigh_length();
    let zs: Vec<f64> = match &args.z_list {
        Some(text) => parse_list("--z-list", text)?.into_iter().map(|(_, z)| z).collect(),
        None => (-6..=6).map(|i| 0.5 * f64::from(i) * z_r).collect(),
    };
    let rows: Vec<Value> = zs
        .iter()
        .map(|&z| {
            obj([
                ("z", json_num(z)),
                ("width", json_num(params.width(z))),
                ("curvature_radius", json_num(params.curvature_radius(z))),
                ("gouy_phase", json_num(gouy_phase(mode, &params, z))),
            ])
        })
        .collect();
    print_json(
        out,
        &obj([
            ("mode", mode_json(mode)),
            ("w0", json_num(args.w0)),
            ("k", json_num(args.k)),
            ("rayleigh_length", json_num(z_r)),
            ("gouy_jump", json_num(landau_core::gouy_jump(mode, &params))),
            ("profile", Value::Array(rows)),
        ]),
    )
}

fn run_verify(args: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    let outcomes = verify::run_all();
    let report = verify::report_json(&outcomes);
    for o in &outcomes {
        writeln!(err, "{}", o.summary_line())?;
    }
    write!(out, "{report}")?;
    if let Some(path) = &args.out {
        if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
            fs::create_dir_all(parent)?;
        }
        fs::write(path, &report)?;
    }
    if outcomes.iter().all(|o| o.passed) {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}
