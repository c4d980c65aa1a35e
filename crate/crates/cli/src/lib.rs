//! The `iotak` command line: complex files, sums, invariants and checks.

use std::collections::HashMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Once;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use iotak_core::invariants::{
    a_zero_minus, default_m_cap, involutive_invariants, lemma_criteria_oracle, obstruction_pattern, InvariantReport,
};
use iotak_core::iota::{self, product, search_local_equivalence, verify_iota_complex, SearchOutcome};
use iotak_core::models::{mirror, torus_knot};
use iotak_core::{
    BasisElement, Error, FreeComplex, IotaComplex, LaurentPoly, Monomial, Morphism, SparseMatrix, Variance, Variant,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

/// One generator of a complex file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorEntry {
    pub name: String,
    pub gr_u: i32,
    pub gr_v: i32,
}

/// One matrix entry: the coefficient of `to` in the image of `from`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowEntry {
    pub from: String,
    pub to: String,
    pub mono: Vec<Monomial>,
}

/// On-disk form of a complex with involution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub name: String,
    pub generators: Vec<GeneratorEntry>,
    pub differential: Vec<ArrowEntry>,
    pub iota: Vec<ArrowEntry>,
}

/// A problem with the contents of a complex file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError(pub String);

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl ComplexFile {
    pub fn from_iota(name: &str, ic: &IotaComplex) -> Self {
        let basis = ic.basis();
        let arrows = |m: &SparseMatrix| {
            m.entries()
                .map(|(y, x, p)| ArrowEntry {
                    from: basis[x].name.clone(),
                    to: basis[y].name.clone(),
                    mono: p.terms().to_vec(),
                })
                .collect()
        };
        ComplexFile {
            name: name.to_string(),
            generators: basis
                .iter()
                .map(|b| GeneratorEntry { name: b.name.clone(), gr_u: b.gr_u, gr_v: b.gr_v })
                .collect(),
            differential: arrows(ic.complex().diff()),
            iota: arrows(&ic.iota().matrix),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, ParseError> {
        serde_json::from_str(text).map_err(|e| ParseError(format!("invalid complex file: {e}")))
    }

    /// The complex and involution as written, without any verification.
    pub fn to_parts(&self) -> Result<(FreeComplex, Morphism), ParseError> {
        let mut index = HashMap::new();
        for (i, g) in self.generators.iter().enumerate() {
            if index.insert(g.name.as_str(), i).is_some() {
                return Err(ParseError(format!("duplicate generator name {:?}", g.name)));
            }
        }
        let n = self.generators.len();
        let matrix = |arrows: &[ArrowEntry], what: &str| -> Result<SparseMatrix, ParseError> {
            let mut m = SparseMatrix::zeros(n, n);
            for a in arrows {
                let lookup = |s: &str| {
                    index.get(s).copied().ok_or_else(|| ParseError(format!("{what}: unknown generator {s:?}")))
                };
                let (x, y) = (lookup(&a.from)?, lookup(&a.to)?);
                if m.get(y, x).is_some() {
                    return Err(ParseError(format!("{what}: repeated entry {} -> {}", a.from, a.to)));
                }
                m.set(y, x, LaurentPoly::from_terms(a.mono.iter().copied()));
            }
            Ok(m)
        };
        let diff = matrix(&self.differential, "differential")?;
        let iota = matrix(&self.iota, "iota")?;
        let basis = self.generators.iter().map(|g| BasisElement::new(g.name.clone(), g.gr_u, g.gr_v)).collect();
        let complex = FreeComplex::new(basis, diff, true).map_err(|e| ParseError(e.to_string()))?;
        Ok((complex, Morphism::new(iota, Variance::Skew, (0, 0))))
    }
}

#[derive(Parser, Debug)]
#[command(name = "iotak", version, about = "Involutive correction terms of knot-like complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug)]
struct Source {
    /// Complex file
    file: Option<PathBuf>,
    /// Use the (P, Q) torus knot instead of a file
    #[arg(long, num_args = 2, value_names = ["P", "Q"])]
    torus: Option<Vec<u32>>,
    /// Mirror the torus knot
    #[arg(long)]
    mirror: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Verify every condition on a complex file
    Check { file: PathBuf },
    /// Write the staircase model of a torus knot
    Torus {
        p: u32,
        q: u32,
        #[arg(long)]
        mirror: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Connected sum of complexes
    Sum {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        variant: u8,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Dual complex
    Dual {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compute d, d_bar, d_under and the V0 values
    Invariants {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Cross-check against the element-wise criteria
        #[arg(long)]
        oracle: bool,
        /// Exponent bound for the oracle (default: largest torsion order + 1)
        #[arg(long)]
        m_cap: Option<u32>,
    },
    /// Check the value patterns of L-space and thin knots
    Obstruct {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Search for a local equivalence between two complexes
    LocalEquiv {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = iota::DEFAULT_CAP)]
        cap: usize,
    },
}

/// Exit code and captured output of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn fail(code: i32, stderr: impl Into<String>) -> Self {
        let mut stderr = stderr.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome { code, stdout: String::new(), stderr }
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } | Error::OracleCap(_) => EXIT_CAP,
        Error::NotCoprime(..) | Error::Staircase(_) => EXIT_USAGE,
        _ => EXIT_VERIFY,
    }
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        Outcome::fail(error_code(&e), format!("error: {e}"))
    }
}

impl From<ParseError> for Outcome {
    fn from(e: ParseError) -> Self {
        Outcome::fail(EXIT_USAGE, format!("error: {e}"))
    }
}

fn configure_threads() {
    static INIT: Once = Once::new();
    INIT.call_once(|| {
        if let Some(n) = std::env::var("IOTAK_THREADS").ok().and_then(|s| s.trim().parse::<usize>().ok()) {
            // a pool built earlier in the process wins
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
        }
    });
}

/// Runs one command line; `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    configure_threads();
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome::ok(text),
                _ => Outcome::fail(EXIT_USAGE, text),
            };
        }
    };
    match execute(cli.command) {
        Ok(o) | Err(o) => o,
    }
}

type Step<T> = Result<T, Outcome>;

fn read_file(path: &Path) -> Step<ComplexFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Outcome::fail(EXIT_USAGE, format!("error: cannot read {}: {e}", path.display())))?;
    ComplexFile::from_json(&text).map_err(|e| Outcome::fail(EXIT_USAGE, format!("error: {}: {e}", path.display())))
}

fn load(path: &Path) -> Step<(String, IotaComplex)> {
    let file = read_file(path)?;
    let (c, i) = file.to_parts()?;
    let ic = IotaComplex::new(c, i)
        .map_err(|e| Outcome::fail(EXIT_VERIFY, format!("error: {}: {e}", path.display())))?;
    Ok((file.name, ic))
}

fn torus_name(p: u32, q: u32, mirrored: bool) -> String {
    if mirrored {
        format!("-T({p},{q})")
    } else {
        format!("T({p},{q})")
    }
}

fn dual_name(name: &str) -> String {
    if let Some(rest) = name.strip_prefix("-(").and_then(|r| r.strip_suffix(')')) {
        rest.to_string()
    } else if name.contains('#') {
        format!("-({name})")
    } else if let Some(rest) = name.strip_prefix('-') {
        rest.to_string()
    } else {
        format!("-{name}")
    }
}

fn build_torus(p: u32, q: u32, mirrored: bool) -> Step<(String, IotaComplex)> {
    let ic = torus_knot(p, q)?;
    let ic = if mirrored { mirror(&ic) } else { ic };
    Ok((torus_name(p, q, mirrored), ic))
}

fn resolve(source: &Source) -> Step<(String, IotaComplex)> {
    match (&source.file, &source.torus) {
        (Some(_), Some(_)) => Err(Outcome::fail(EXIT_USAGE, "error: give either a file or --torus, not both")),
        (None, None) => Err(Outcome::fail(EXIT_USAGE, "error: give a complex file or --torus P Q")),
        (Some(_), None) if source.mirror => Err(Outcome::fail(EXIT_USAGE, "error: --mirror applies to --torus only")),
        (Some(path), None) => load(path),
        (None, Some(pq)) => build_torus(pq[0], pq[1], source.mirror),
    }
}

fn emit(file: &ComplexFile, output: &Option<PathBuf>) -> Step<Outcome> {
    let json = file.to_json();
    match output {
        Some(path) => {
            std::fs::write(path, json)
                .map_err(|e| Outcome::fail(EXIT_USAGE, format!("error: cannot write {}: {e}", path.display())))?;
            Ok(Outcome::ok(String::new()))
        }
        None => Ok(Outcome::ok(json)),
    }
}

fn execute(command: Command) -> Step<Outcome> {
    match command {
        Command::Check { file } => {
            let f = read_file(&file)?;
            let (c, i) = f.to_parts()?;
            let report = verify_iota_complex(&c, &i);
            let mut out = format!("{}: {} generators\n{report}", f.name, c.rank());
            if report.passes() {
                out.push_str("iota_K-complex: yes\n");
                Ok(Outcome::ok(out))
            } else {
                out.push_str("iota_K-complex: no\n");
                Ok(Outcome { code: EXIT_VERIFY, stdout: out, stderr: String::new() })
            }
        }
        Command::Torus { p, q, mirror, output } => {
            let (name, ic) = build_torus(p, q, mirror)?;
            emit(&ComplexFile::from_iota(&name, &ic), &output)
        }
        Command::Sum { files, variant, output } => {
            let variant = if variant == 1 { Variant::First } else { Variant::Second };
            let mut names = Vec::new();
            let mut acc: Option<IotaComplex> = None;
            for path in &files {
                let (name, ic) = load(path)?;
                names.push(if name.contains('#') { format!("({name})") } else { name });
                acc = Some(match acc {
                    None => ic,
                    Some(a) => product(&a, &ic, variant)?,
                });
            }
            let ic = acc.expect("at least one file");
            emit(&ComplexFile::from_iota(&names.join("#"), &ic), &output)
        }
        Command::Dual { file, output } => {
            let (name, ic) = load(&file)?;
            emit(&ComplexFile::from_iota(&dual_name(&name), &iota::dual_iota(&ic)), &output)
        }
        Command::Invariants { source, format, oracle, m_cap } => {
            let (name, ic) = resolve(&source)?;
            let tower = a_zero_minus(&ic);
            let report = involutive_invariants(&tower)?;
            if oracle {
                let cap = m_cap.unwrap_or_else(|| default_m_cap(&tower));
                let o = lemma_criteria_oracle(&tower, cap)?;
                if (o.d, o.d_bar, o.d_under) != (report.d, report.d_bar, report.d_under) {
                    return Err(Outcome::fail(
                        EXIT_CAP,
                        format!(
                            "error: oracle disagrees: normal form gives (d, d_bar, d_under) = ({}, {}, {}), criteria give ({}, {}, {})",
                            report.d, report.d_bar, report.d_under, o.d, o.d_bar, o.d_under
                        ),
                    ));
                }
            }
            Ok(Outcome::ok(match format {
                Format::Json => json_line(&report),
                Format::Text => format!("{name}\n{report}\n"),
            }))
        }
        Command::Obstruct { source, format } => {
            let (name, ic) = resolve(&source)?;
            let report = involutive_invariants(&a_zero_minus(&ic))?;
            let pattern = obstruction_pattern(&report);
            Ok(Outcome::ok(match format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct Verdict<'a> {
                        name: &'a str,
                        #[serde(flatten)]
                        report: &'a InvariantReport,
                        #[serde(flatten)]
                        pattern: &'a iotak_core::invariants::ObstructionPattern,
                    }
                    json_line(&Verdict { name: &name, report: &report, pattern: &pattern })
                }
                Format::Text => {
                    let (b, v, u) = report.v_triple();
                    let mut s = String::new();
                    let _ = writeln!(s, "{name}");
                    let _ = writeln!(s, "(V0_bar, V0, V0_under) = ({b}, {v}, {u})");
                    let _ = writeln!(s, "pattern 1 (0 <= V0_under - V0_bar <= 1, all >= 0): {}", pattern.pattern1);
                    let _ = writeln!(s, "pattern 2 (V0_bar <= 0 = V0 = V0_under): {}", pattern.pattern2);
                    let verdict = if pattern.consistent_with_thin_or_lspace {
                        "consistent with an L-space knot or thin knot"
                    } else {
                        "not concordant to any L-space knot or thin knot"
                    };
                    let _ = writeln!(s, "{verdict}");
                    s
                }
            }))
        }
        Command::LocalEquiv { a, b, cap } => {
            let (na, ia) = load(&a)?;
            let (nb, ib) = load(&b)?;
            let mut s = String::new();
            match search_local_equivalence(&ia, &ib, cap)? {
                SearchOutcome::Equivalent { forward, backward } => {
                    let _ = writeln!(s, "{na} and {nb} are locally equivalent");
                    let _ = writeln!(s, "F:");
                    s.push_str(&indent(&forward.describe(ia.basis(), ib.basis())));
                    let _ = writeln!(s, "G:");
                    s.push_str(&indent(&backward.describe(ib.basis(), ia.basis())));
                }
                SearchOutcome::NotEquivalent { failed_direction } => {
                    let (from, to) = match failed_direction {
                        iota::Direction::Forward => (&na, &nb),
                        iota::Direction::Backward => (&nb, &na),
                    };
                    let _ = writeln!(s, "{na} and {nb} are not locally equivalent");
                    let _ = writeln!(
                        s,
                        "every filtered chain map {from} -> {to} was checked; none is an isomorphism on homology intertwining the involutions"
                    );
                }
            }
            Ok(Outcome::ok(s))
        }
    }
}

fn indent(text: &str) -> String {
    text.lines().map(|l| format!("  {l}\n")).collect()
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serializable");
    s.push('\n');
    s
}
