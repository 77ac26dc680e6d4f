//! Command implementations behind the `twisted` binary.
//!
//! Every command renders its output to a `String`; `main` prints it and maps
//! errors to exit codes through [`CliError::exit_code`].

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;
use twisted_core::certificate::parse_cocycle;
use twisted_core::families::{self, Sl2};
use twisted_core::{
    build_representation, cocycle_space, enumerate_nonvanishing, is_decomposable, parse_character, parse_presentation,
    twisted_h1_dimension, verify_homomorphism, CertificateDocument, Character, Cocycle, ConjugationData,
    Precision, Presentation, RepCertificate, Scalar, DEFAULT_EPSILON,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] twisted_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    /// 0 success, 2 parse/usage/parameter, 3 inadmissible character,
    /// 4 numeric-mode mismatch, 5 verification failure, 1 anything else.
    pub fn exit_code(&self) -> i32 {
        use twisted_core::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Io { .. } => 1,
            CliError::Verification(_) => 5,
            CliError::Core(e) => match e {
                E::Syntax { .. }
                | E::UnknownGenerator { .. }
                | E::DuplicateGenerator { .. }
                | E::InvalidLiteral(_)
                | E::InvalidParameter(_)
                | E::NonPositive { .. }
                | E::DimensionMismatch { .. } => 2,
                E::Inadmissible { .. } => 3,
                E::ModeMismatch { .. } | E::MixedLiterals(_) => 4,
                E::NotACocycle { .. } | E::Certificate(_) => 5,
                E::DivisionByZero | E::SizeExceeded { .. } | E::Precondition(_) | E::Numerical(_) => 1,
            },
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "twisted", version, about = "Twisted first cohomology of finitely presented groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dimensions of Z¹, B¹ and H¹ for a presentation and character.
    H1(H1Args),
    /// Emit a 2×2 representation certificate as JSON.
    Certificate(CertificateArgs),
    /// Re-check a certificate JSON file from scratch.
    Verify(VerifyArgs),
    /// Write a presentation from a built-in family.
    Family(FamilyArgs),
    /// List candidate characters with non-vanishing H¹.
    Enumerate(EnumerateArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum NumericMode {
    Exact,
    Approx,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct ModeArgs {
    /// Exact (rational or quadratic) or approximate arithmetic.
    #[arg(long, value_enum, default_value_t = NumericMode::Exact)]
    pub mode: NumericMode,
    /// Zero-test tolerance; only with `--mode approx`.
    #[arg(long)]
    pub eps: Option<f64>,
}

impl ModeArgs {
    pub fn precision(&self) -> CliResult<Precision> {
        match (self.mode, self.eps) {
            (NumericMode::Exact, Some(_)) => Err(CliError::Usage("--eps requires --mode approx".into())),
            (NumericMode::Exact, None) => Ok(Precision::Exact),
            (NumericMode::Approx, eps) => {
                let eps = eps.unwrap_or(DEFAULT_EPSILON);
                if !(eps.is_finite() && eps > 0.0) {
                    return Err(CliError::Usage(format!("--eps must be positive, got {eps}")));
                }
                Ok(Precision::Approx(eps))
            }
        }
    }
}

#[derive(Debug, Args)]
pub struct CharacterArgs {
    /// Character as `name=value` pairs; unlisted generators map to 1.
    #[arg(long = "char", conflicts_with = "char_file")]
    pub char_text: Option<String>,
    /// File holding a `char:` line.
    #[arg(long)]
    pub char_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct H1Args {
    /// Presentation file.
    pub presentation: PathBuf,
    #[command(flatten)]
    pub character: CharacterArgs,
    #[command(flatten)]
    pub mode: ModeArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct CertificateArgs {
    pub presentation: PathBuf,
    #[command(flatten)]
    pub character: CharacterArgs,
    /// Cocycle as `name=value` pairs; unlisted generators map to 0.
    #[arg(long)]
    pub cocycle: Option<String>,
    #[command(flatten)]
    pub mode: ModeArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Certificate JSON file.
    pub certificate: PathBuf,
    /// Check against this presentation instead of the one recorded in the file.
    #[arg(long)]
    pub presentation: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[command(subcommand)]
    pub family: Family,
    /// Directory for `.pres`, `.char` and (when known) `.conj` files.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Family {
    /// Mapping torus of A = [[a, b], [c, d]] in SL₂(ℤ).
    #[command(allow_negative_numbers = true)]
    MappingTorus { a: i64, b: i64, c: i64, d: i64 },
    /// Closed orientable surface of genus g.
    Surface { g: usize },
    /// Free group of rank m.
    Free { m: usize },
    /// Free abelian group of rank n.
    Abelian { n: usize },
    /// Integer Heisenberg group.
    Heisenberg,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    pub presentation: PathBuf,
    /// Conjugation data file.
    pub conjugation: PathBuf,
    /// Generators receiving the outer-generator values, in order.
    #[arg(long, value_delimiter = ',', required = true)]
    pub outer: Vec<String>,
    #[arg(long)]
    pub eps: Option<f64>,
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_character(p: &Presentation, args: &CharacterArgs, precision: Precision) -> CliResult<Character> {
    let text = match (&args.char_text, &args.char_file) {
        (Some(t), _) => t.clone(),
        (None, Some(path)) => read(path)?,
        (None, None) => String::new(),
    };
    let rho = parse_character(&text, p.generators(), precision)?;
    rho.check_admissible(p)?;
    Ok(rho)
}

fn strings(values: &[Scalar]) -> Vec<String> {
    values.iter().map(ToString::to_string).collect()
}

/// The first `Z¹` basis vector giving an indecomposable certificate.
pub fn indecomposable_certificate(p: &Presentation, rho: &Character) -> CliResult<Option<RepCertificate>> {
    for mu in cocycle_space(p, rho)? {
        let cert = build_representation(p, rho, &mu)?;
        if is_decomposable(&cert).is_none() {
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

#[derive(Serialize)]
struct H1Report {
    mode: String,
    generators: Vec<String>,
    character: Vec<String>,
    z1_dim: usize,
    b1_dim: usize,
    h1_dim: usize,
    basis: Vec<Vec<String>>,
    coboundary: Option<Vec<String>>,
    certificate: Option<CertificateDocument>,
    warnings: Vec<String>,
}

pub fn cmd_h1(args: &H1Args) -> CliResult<String> {
    let precision = args.mode.precision()?;
    let p = parse_presentation(&read(&args.presentation)?)?;
    let rho = load_character(&p, &args.character, precision)?;
    let report = twisted_h1_dimension(&p, &rho)?;
    let names = p.generators();
    let warnings: Vec<String> = report.warnings.iter().map(ToString::to_string).collect();
    match args.format {
        Format::Text => {
            let mut out = format!(
                "mode: {}\nz1_dim: {}\nb1_dim: {}\nh1_dim: {}\n",
                rho.mode(),
                report.z1_dim,
                report.b1_dim,
                report.h1_dim
            );
            out.push_str("basis:\n");
            for mu in &report.z1_basis {
                out.push_str(&format!("  {}\n", cocycle_display(names, mu)));
            }
            for w in &warnings {
                out.push_str(&format!("warning: {w}\n"));
            }
            Ok(out)
        }
        Format::Json => {
            let certificate = if report.is_nonvanishing() {
                indecomposable_certificate(&p, &rho)?.map(|c| CertificateDocument::from_certificate(&c, &p))
            } else {
                None
            };
            let doc = H1Report {
                mode: rho.mode().to_string(),
                generators: names.to_vec(),
                character: strings(rho.values()),
                z1_dim: report.z1_dim,
                b1_dim: report.b1_dim,
                h1_dim: report.h1_dim,
                basis: report.z1_basis.iter().map(|mu| strings(mu.values())).collect(),
                coboundary: report.coboundary_generator.as_deref().map(strings),
                certificate,
                warnings,
            };
            Ok(to_json(&doc))
        }
    }
}

fn cocycle_display(names: &[String], mu: &Cocycle) -> String {
    names
        .iter()
        .zip(mu.values())
        .map(|(n, v)| format!("{n}={v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn cmd_certificate(args: &CertificateArgs) -> CliResult<String> {
    let precision = args.mode.precision()?;
    let p = parse_presentation(&read(&args.presentation)?)?;
    let rho = load_character(&p, &args.character, precision)?;
    let cert = match &args.cocycle {
        Some(text) => build_representation(&p, &rho, &parse_cocycle(text, p.generators(), &rho)?)?,
        None => match indecomposable_certificate(&p, &rho)? {
            Some(c) => c,
            None => {
                let one = Scalar::one(rho.mode());
                build_representation(&p, &rho, &Cocycle::coboundary(rho.clone(), &one)?)?
            }
        },
    };
    if !cert.is_verified() {
        return Err(CliError::Verification(failure_reason(&cert)));
    }
    Ok(to_json(&CertificateDocument::from_certificate(&cert, &p)))
}

fn failure_reason(cert: &RepCertificate) -> String {
    let Some(s) = cert.status() else {
        return "not checked".into();
    };
    let mut reasons = Vec::new();
    if !s.fixes_first_basis_vector {
        reasons.push("a matrix does not fix (1,0)".to_string());
    }
    if !s.determinant_matches {
        reasons.push("a determinant differs from the character".to_string());
    }
    if !s.cocycle_matches {
        reasons.push("a top-right entry differs from the cocycle".to_string());
    }
    if !s.relators_hold {
        match s.failing_relator {
            Some(i) => reasons.push(format!("relator {} is not sent to the identity", i + 1)),
            None => reasons.push("generators do not match the presentation".to_string()),
        }
    }
    reasons.join("; ")
}

pub fn cmd_verify(args: &VerifyArgs) -> CliResult<String> {
    let doc = CertificateDocument::from_json(&read(&args.certificate)?)?;
    let p = match &args.presentation {
        Some(path) => parse_presentation(&read(path)?)?,
        None => doc.presentation()?,
    };
    let mut cert = doc.to_certificate()?;
    let verified = verify_homomorphism(&mut cert, &p);
    let c = is_decomposable(&cert);
    let mut line = format!("verified: {verified}, indecomposable: {}", c.is_none());
    if let Some(c) = &c {
        line.push_str(&format!(", fixed_line_c: {c}"));
    }
    if !verified {
        return Err(CliError::Verification(format!("{line} ({})", failure_reason(&cert))));
    }
    if doc.indecomposable != c.is_none() {
        return Err(CliError::Verification(format!(
            "{line} (file claims indecomposable: {})",
            doc.indecomposable
        )));
    }
    line.push('\n');
    Ok(line)
}

/// Presentation, default character and optional conjugation data for a family.
pub fn build_family(family: &Family) -> CliResult<(String, Presentation, Character, Option<ConjugationData>)> {
    let out = match *family {
        Family::MappingTorus { a, b, c, d } => {
            let m: Sl2 = [[a, b], [c, d]];
            let p = families::mapping_torus_presentation(m)?;
            let rho = families::default_character(&p, Some(m))?;
            let conj = families::mapping_torus_conjugation(m)?;
            (format!("mapping-torus_{a}_{b}_{c}_{d}"), p, rho, Some(conj))
        }
        Family::Surface { g } => {
            let p = families::surface_presentation(g)?;
            let rho = families::default_character(&p, None)?;
            (format!("surface_{g}"), p, rho, None)
        }
        Family::Free { m } => {
            let p = families::free_group(m);
            let rho = families::default_character(&p, None)?;
            (format!("free_{m}"), p, rho, None)
        }
        Family::Abelian { n } => {
            let p = families::free_abelian(n);
            let rho = families::default_character(&p, None)?;
            (format!("abelian_{n}"), p, rho, None)
        }
        Family::Heisenberg => {
            let p = families::heisenberg();
            let rho = families::default_character(&p, None)?;
            ("heisenberg".to_string(), p, rho, Some(families::heisenberg_conjugation()))
        }
    };
    Ok(out)
}

/// Prints the presentation; with `--out` also writes the files and lists them.
pub fn cmd_family(args: &FamilyArgs) -> CliResult<String> {
    let (stem, p, rho, conj) = build_family(&args.family)?;
    let text = p.to_string();
    let Some(dir) = &args.out else {
        return Ok(text);
    };
    fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.clone(),
        source,
    })?;
    let mut files = vec![(dir.join(format!("{stem}.pres")), text.clone())];
    files.push((dir.join(format!("{stem}.char")), format!("char: {}\n", rho.display(p.generators()))));
    if let Some(conj) = conj {
        files.push((dir.join(format!("{stem}.conj")), conj.to_string()));
    }
    let mut listing = text;
    for (path, body) in &files {
        write(path, body)?;
        listing.push_str(&format!("# wrote {}\n", path.display()));
    }
    Ok(listing)
}

#[derive(Serialize)]
struct EnumerationEntry {
    mode: String,
    generators: Vec<String>,
    character: Vec<String>,
    z1_dim: usize,
    b1_dim: usize,
    h1_dim: usize,
}

pub fn cmd_enumerate(args: &EnumerateArgs) -> CliResult<String> {
    let eps = args.eps.unwrap_or(DEFAULT_EPSILON);
    if !(eps.is_finite() && eps > 0.0) {
        return Err(CliError::Usage(format!("--eps must be positive, got {eps}")));
    }
    let p = parse_presentation(&read(&args.presentation)?)?;
    let d = ConjugationData::parse(&read(&args.conjugation)?)?;
    let outer = args
        .outer
        .iter()
        .map(|name| {
            p.generator_index(name.trim())
                .ok_or_else(|| CliError::Usage(format!("--outer: unknown generator `{name}`")))
        })
        .collect::<CliResult<Vec<_>>>()?;
    let found = enumerate_nonvanishing(&p, &d, &outer, eps)?;
    let entries: Vec<EnumerationEntry> = found
        .iter()
        .map(|nv| EnumerationEntry {
            mode: nv.character.mode().to_string(),
            generators: p.generators().to_vec(),
            character: strings(nv.character.values()),
            z1_dim: nv.report.z1_dim,
            b1_dim: nv.report.b1_dim,
            h1_dim: nv.report.h1_dim,
        })
        .collect();
    Ok(to_json(&entries))
}

pub fn run(cli: &Cli) -> CliResult<String> {
    match &cli.command {
        Command::H1(a) => cmd_h1(a),
        Command::Certificate(a) => cmd_certificate(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Family(a) => cmd_family(a),
        Command::Enumerate(a) => cmd_enumerate(a),
    }
}

/// Parses `argv` and runs it, returning the text for stdout and the exit code.
/// Errors are rendered as `error: …` lines.
pub fn run_args<I, T>(argv: I) -> (String, String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { (text, String::new(), 0) } else { (String::new(), text, 2) };
        }
    };
    match run(&cli) {
        Ok(out) => (out, String::new(), 0),
        Err(e) => (String::new(), format!("error: {e}\n"), e.exit_code()),
    }
}
