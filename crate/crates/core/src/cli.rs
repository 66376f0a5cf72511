//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
//! 3 resource budget exceeded.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::action::{self, find_torsion_fixed_point, Caps, DEFAULT_ORACLE_BUDGET};
use crate::certificate::{point_strings, rational_string, CertificateDocument, RangeDocument, VerifyParams};
use crate::construction::{verify_construction_with_caps, verify_corollary, Construction, ConstructionParams, Mutation};
use crate::error::Error;
use crate::torus::{AffineAuto, EnlargedLattice};
use crate::word::parse_word;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "dihedral-free",
    version,
    about = "Exact verification of free dihedral actions on abelian varieties"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Verify the order-8n dihedral action on A = (E^2n x E') / <w>.
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..), required_unless_present = "range")]
        n: Option<u64>,
        /// Write the JSON certificate to this path.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Verify every n in 1..=N and emit one aggregate document.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..), conflicts_with = "n")]
        range: Option<u64>,
        /// Maximum group size explored before giving up.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        closure_cap: Option<u64>,
        /// Cross-check every element with a brute-force search over (1/D)-torsion.
        #[arg(long, value_name = "D", value_parser = clap::value_parser!(u64).range(1..))]
        oracle: Option<u64>,
        /// Search-node budget for --oracle.
        #[arg(long, default_value_t = DEFAULT_ORACLE_BUDGET)]
        oracle_budget: u64,
        /// Record wall-clock time in the certificate (breaks byte-identical output).
        #[arg(long)]
        timing: bool,
    },
    /// Verify the embedded action of D_k of order 2k.
    Corollary {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        timing: bool,
    },
    /// Inspect a single group element given as a word in r and s.
    ///
    /// Words compose right to left: "r s" is r o s, so s acts first.
    Element {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, value_name = "D", value_parser = clap::value_parser!(u64).range(1..))]
        oracle: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_ORACLE_BUDGET)]
        oracle_budget: u64,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    let result = match cli.command {
        Command::Verify {
            n,
            json,
            range,
            closure_cap,
            oracle,
            oracle_budget,
            timing,
        } => {
            let opts = VerifyOptions {
                closure_cap: closure_cap.map(|c| c as usize),
                oracle: oracle.map(|d| d as usize),
                oracle_budget,
                timing,
            };
            match range {
                Some(range) => cmd_verify_range(range as usize, &opts, json.as_ref(), out),
                None => cmd_verify(n.expect("clap enforces --n") as usize, &opts, json.as_ref(), out),
            }
        }
        Command::Corollary { k, json, timing } => cmd_corollary(k as usize, timing, json.as_ref(), out),
        Command::Element {
            n,
            word,
            oracle,
            oracle_budget,
        } => cmd_element(n as usize, &word, oracle.map(|d| d as usize), oracle_budget, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                CliError::Core(Error::OracleBudgetExceeded { .. }) => EXIT_BUDGET,
                CliError::Core(Error::Parse(_)) | CliError::Core(Error::InvalidParameter(_)) => EXIT_USAGE,
                CliError::Core(_) => EXIT_FAILED,
                CliError::Io(_) => EXIT_USAGE,
            }
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    pub closure_cap: Option<usize>,
    pub oracle: Option<usize>,
    pub oracle_budget: u64,
    pub timing: bool,
}

fn elapsed_ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

/// Builds the certificate document for one `n`, running the oracle if asked.
pub fn verify_document(n: usize, opts: &VerifyOptions) -> Result<CertificateDocument, Error> {
    let params = ConstructionParams::new(n)?;
    let c = Construction::new(params, Mutation::None);
    let mut caps = c.caps();
    if let Some(cap) = opts.closure_cap {
        caps.closure = cap;
    }
    let cert = verify_construction_with_caps(&c, caps);
    let mut doc = CertificateDocument::theorem(
        &cert,
        VerifyParams {
            n,
            closure_cap: caps.closure,
            order_cap: caps.order,
            oracle_denominator: opts.oracle,
            w: point_strings(&c.w),
        },
    );
    if let (Some(d), Some(analysis)) = (opts.oracle, cert.analysis.as_ref()) {
        let mut agrees = true;
        for (entry, element) in doc.elements.iter_mut().zip(&analysis.elements) {
            let hit = find_torsion_fixed_point(&element.auto, &c.lattice, d, opts.oracle_budget)?.is_some();
            agrees &= hit == entry.has_fixed_point;
            entry.oracle_fixed_point = Some(hit);
        }
        doc.oracle_agrees = Some(agrees);
    }
    Ok(doc)
}

fn write_json(path: &PathBuf, text: &str) -> Result<(), CliError> {
    fs::write(path, text)?;
    Ok(())
}

fn summarize(doc: &CertificateDocument, out: &mut dyn Write) -> std::io::Result<()> {
    let crate::certificate::Detail::Theorem(cert) = &doc.certificate else {
        unreachable!("verify document");
    };
    writeln!(
        out,
        "n = {}: dimension {}, group order {} (expected {})",
        cert.n,
        cert.dimension,
        cert.group_order_actual.map_or("?".to_string(), |g| g.to_string()),
        cert.group_order_expected
    )?;
    for (name, ok) in &doc.steps {
        writeln!(out, "  {name}: {}", if *ok { "pass" } else { "FAIL" })?;
    }
    writeln!(
        out,
        "  free: {}, no translations: {}, symmetry classes: {}",
        cert.is_free,
        cert.has_no_translations,
        cert.step4.symmetry_class_count.map_or("?".to_string(), |c| c.to_string())
    )?;
    if let Some(agrees) = doc.oracle_agrees {
        writeln!(out, "  oracle agreement: {agrees}")?;
    }
    if let Some(f) = &cert.failure {
        writeln!(out, "  failure: {f}")?;
    }
    writeln!(
        out,
        "  theorem {}",
        if doc.theorem_verified { "verified" } else { "NOT verified" }
    )
}

pub fn cmd_verify(n: usize, opts: &VerifyOptions, json: Option<&PathBuf>, out: &mut dyn Write) -> Result<i32, CliError> {
    let start = Instant::now();
    let mut doc = verify_document(n, opts)?;
    if opts.timing {
        doc.elapsed_ms = Some(elapsed_ms(start));
    }
    summarize(&doc, out)?;
    if let Some(path) = json {
        write_json(path, &doc.to_json())?;
    }
    let ok = doc.theorem_verified && doc.oracle_agrees != Some(false);
    Ok(if ok { EXIT_OK } else { EXIT_FAILED })
}

pub fn cmd_verify_range(range: usize, opts: &VerifyOptions, json: Option<&PathBuf>, out: &mut dyn Write) -> Result<i32, CliError> {
    let start = Instant::now();
    let mut docs = Vec::with_capacity(range);
    for n in 1..=range {
        let mut doc = verify_document(n, opts)?;
        summarize(&doc, out)?;
        if opts.timing {
            doc.elapsed_ms = Some(elapsed_ms(start));
        }
        docs.push(doc);
    }
    let mut agg = RangeDocument::new(range, docs);
    if opts.timing {
        agg.elapsed_ms = Some(elapsed_ms(start));
    }
    let ok = agg.all_verified && agg.documents.iter().all(|d| d.oracle_agrees != Some(false));
    writeln!(out, "range 1..={range}: {}", if ok { "all verified" } else { "FAILED" })?;
    if let Some(path) = json {
        write_json(path, &agg.to_json())?;
    }
    Ok(if ok { EXIT_OK } else { EXIT_FAILED })
}

pub fn cmd_corollary(k: usize, timing: bool, json: Option<&PathBuf>, out: &mut dyn Write) -> Result<i32, CliError> {
    let start = Instant::now();
    let cert = verify_corollary(k)?;
    let mut doc = CertificateDocument::corollary(&cert);
    if timing {
        doc.elapsed_ms = Some(elapsed_ms(start));
    }
    writeln!(
        out,
        "k = {}: D_{} inside the order-{} action with n = {}, rotation r^{}",
        k,
        k,
        8 * cert.plan.params.n,
        cert.plan.params.n,
        cert.plan.rotation_power
    )?;
    writeln!(
        out,
        "  ambient dimension {} (expected {}), subgroup order {} (expected {})",
        cert.dimension,
        cert.plan.expected_dimension,
        cert.subgroup_order.map_or("?".to_string(), |g| g.to_string()),
        cert.plan.expected_order
    )?;
    writeln!(
        out,
        "  free: {}, no translations: {}, relations: {}",
        cert.is_free, cert.has_no_translations, cert.relations_hold
    )?;
    if let Some(f) = &cert.failure {
        writeln!(out, "  failure: {f}")?;
    }
    writeln!(out, "  corollary {}", if cert.verified { "verified" } else { "NOT verified" })?;
    if let Some(path) = json {
        write_json(path, &doc.to_json())?;
    }
    Ok(if cert.verified { EXIT_OK } else { EXIT_FAILED })
}

fn print_view(out: &mut dyn Write, title: &str, g: &AffineAuto, lattice: &EnlargedLattice, cap: usize) -> Result<(), CliError> {
    writeln!(out, "{title}:")?;
    let t: Vec<String> = g.translation().coords().iter().map(rational_string).collect();
    writeln!(out, "  translation: ({})", t.join(", "))?;
    let identity = g.is_identity(lattice);
    writeln!(out, "  identity: {identity}")?;
    writeln!(out, "  order: {}", action::order(g, lattice, cap)?)?;
    writeln!(out, "  is_translation: {}", action::is_translation(g, lattice))?;
    writeln!(
        out,
        "  has_fixed_point: {}",
        identity || action::exists_fixed_point(g, lattice)
    )?;
    Ok(())
}

pub fn cmd_element(n: usize, word: &str, oracle: Option<usize>, budget: u64, out: &mut dyn Write) -> Result<i32, CliError> {
    let word = parse_word(word).map_err(Error::from)?;
    let params = ConstructionParams::new(n)?;
    let c = Construction::new(params, Mutation::None);
    let caps = Caps::for_rotation_order(params.rotation_order());
    let on_a = word.evaluate(&c.r, &c.s, &c.lattice, caps.order)?;
    let on_product = word.evaluate(&c.r_product, &c.s_product, &c.product_lattice, caps.order)?;

    writeln!(out, "word: \"{word}\" (n = {n}, applied right to left)")?;
    writeln!(out, "linear part:")?;
    let m = on_a.dim();
    for i in 0..m {
        let row: Vec<String> = (0..m)
            .map(|j| {
                let x = &on_a.linear()[(i, j)];
                format!("{:>2}", x.to_string())
            })
            .collect();
        writeln!(out, "  [{}]", row.join(" "))?;
    }
    print_view(out, "on A' (lattice Z^m)", &on_product, &c.product_lattice, caps.order)?;
    print_view(out, "on A = A'/<w>", &on_a, &c.lattice, caps.order)?;

    if let Some(d) = oracle {
        let hit = find_torsion_fixed_point(&on_a, &c.lattice, d, budget)?;
        let decided = on_a.is_identity(&c.lattice) || action::exists_fixed_point(&on_a, &c.lattice);
        let agrees = hit.is_some() == decided;
        match &hit {
            Some(p) => writeln!(out, "oracle (D = {d}): fixed torsion point {}", point_strings(p).join(", "))?,
            None => writeln!(out, "oracle (D = {d}): no fixed point of order dividing {d}")?,
        }
        writeln!(out, "oracle agreement: {agrees}")?;
        if !agrees {
            return Ok(EXIT_FAILED);
        }
    }
    Ok(EXIT_OK)
}
