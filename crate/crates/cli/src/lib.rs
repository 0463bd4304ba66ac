//! `ryde` command-line front end.
//!
//! Exit codes: 0 success (or signature accepted), 1 failure (or signature
//! rejected), 2 bad arguments.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::RngCore;
use ryde_core::estimator::{self, ReportRow};
use ryde_core::params::{by_name, shipped};
use ryde_core::{kat, scheme};
use serde::Serialize;
use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

#[derive(Debug, Parser)]
#[command(name = "ryde", version, about = "Rank-SD MPC-in-the-head signatures")]
pub struct Cli {
    /// Worker threads for per-repetition parallelism (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Encoding {
    Bin,
    Hex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Text,
    Csv,
    Json,
}

/// Bytes given on the command line in hex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HexBytes(pub Vec<u8>);

fn parse_hex(s: &str) -> std::result::Result<HexBytes, String> {
    hex::decode(s.trim()).map(HexBytes).map_err(|e| format!("invalid hex: {e}"))
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a key pair, writing <out>.pk and <out>.sk.
    Keygen {
        #[arg(long)]
        params: String,
        /// λ-bit key seed in hex (default: OS entropy).
        #[arg(long, value_parser = parse_hex)]
        seed: Option<HexBytes>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "bin")]
        format: Encoding,
    },
    /// Sign a message file.
    Sign {
        /// Secret key file (bin or hex).
        #[arg(long)]
        sk: PathBuf,
        /// Message file.
        #[arg(long = "in")]
        input: PathBuf,
        /// Signature output file.
        #[arg(long)]
        out: PathBuf,
        /// Signing seed in hex; the salt and all randomness derive from it
        /// (default: OS entropy).
        #[arg(long, value_parser = parse_hex)]
        seed: Option<HexBytes>,
        #[arg(long, value_enum, default_value = "bin")]
        format: Encoding,
    },
    /// Verify a signature; exits 0 on accept and 1 on reject.
    Verify {
        #[arg(long)]
        pk: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        sig: PathBuf,
    },
    /// Write symmetric.kat and signatures.kat into a directory.
    KatGen {
        #[arg(long)]
        out: PathBuf,
        /// Signature records per parameter set.
        #[arg(long, default_value_t = 2)]
        count: usize,
        /// Restrict signature records to these sets.
        #[arg(long)]
        params: Vec<String>,
    },
    /// Recompute every record of KAT files (a file or a directory of *.kat).
    KatCheck {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Size and security table for a level or one parameter set.
    Estimate(EstimateArgs),
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    /// Security level: I, III or V.
    #[arg(long, conflicts_with = "params", required_unless_present = "params")]
    pub level: Option<String>,
    #[arg(long)]
    pub params: Option<String>,
    /// Linear algebra exponent for the algebraic attacks.
    #[arg(long, default_value_t = estimator::DEFAULT_OMEGA)]
    pub omega: f64,
    #[arg(long, value_enum, default_value = "text")]
    pub format: TableFormat,
    /// Write the table here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses `argv` and runs the command, returning the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    }
}

fn execute(cli: Cli) -> Result<i32> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global().ok();
    }
    match cli.command {
        Command::Keygen { params, seed, out, format } => {
            let p = by_name(&params)?;
            let seed = seed.map_or_else(|| entropy(p.lambda / 8), |h| h.0);
            let kp = scheme::keygen(&p, &seed)?;
            write_encoded(&with_ext(&out, "pk"), &kp.pk, format)?;
            write_encoded(&with_ext(&out, "sk"), &kp.sk, format)?;
            Ok(0)
        }
        Command::Sign { sk, input, out, seed, format } => {
            let sk = read_encoded(&sk)?;
            let msg = fs::read(&input).with_context(|| format!("reading {}", input.display()))?;
            let p = scheme::params_of_key(&sk)?;
            let rand = seed.map_or_else(|| entropy(p.lambda / 8), |h| h.0);
            let sig = scheme::sign(&sk, &msg, &rand)?;
            write_encoded(&out, &sig, format)?;
            Ok(0)
        }
        Command::Verify { pk, input, sig } => {
            let pk = read_encoded(&pk)?;
            let msg = fs::read(&input).with_context(|| format!("reading {}", input.display()))?;
            let sig = read_encoded(&sig)?;
            match scheme::verify(&pk, &msg, &sig) {
                Ok(true) => {
                    println!("accept");
                    Ok(0)
                }
                Ok(false) => {
                    eprintln!("reject");
                    Ok(1)
                }
                Err(e) => {
                    eprintln!("reject: {e}");
                    Ok(1)
                }
            }
        }
        Command::KatGen { out, count, params } => {
            for name in &params {
                by_name(name)?;
            }
            fs::create_dir_all(&out).with_context(|| format!("creating {}", out.display()))?;
            let sym = kat::symmetric_records()?;
            fs::write(
                out.join("symmetric.kat"),
                kat::render("Empty-payload digests H0..H4 and GGM root-to-leaf expansions.", &sym),
            )?;
            let sigs = kat::signature_records(count, &params)?;
            fs::write(
                out.join("signatures.kat"),
                kat::render("Key pairs from seed and signatures on msg with signing seed rand.", &sigs),
            )?;
            println!("wrote {} symmetric and {} signature records to {}", sym.len(), sigs.len(), out.display());
            Ok(0)
        }
        Command::KatCheck { input } => {
            let files = kat_files(&input)?;
            let mut total = 0;
            for f in &files {
                let text = fs::read_to_string(f).with_context(|| format!("reading {}", f.display()))?;
                let recs = kat::parse(&text).with_context(|| f.display().to_string())?;
                total += kat::check_all(&recs).with_context(|| f.display().to_string())?;
            }
            println!("{total} records ok");
            Ok(0)
        }
        Command::Estimate(args) => {
            let rows = match (&args.level, &args.params) {
                (Some(level), _) => estimator::table_report(level, args.omega)?,
                (None, Some(name)) => vec![estimator::report_row(&by_name(name)?, args.omega)?],
                (None, None) => bail!("either --level or --params is required"),
            };
            let text = match args.format {
                TableFormat::Text => estimator::format_table(&rows),
                TableFormat::Csv => to_csv(&rows)?,
                TableFormat::Json => serde_json::to_string_pretty(&rows)? + "\n",
            };
            match &args.out {
                Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
                None => print!("{text}"),
            }
            Ok(0)
        }
    }
}

fn entropy(len: usize) -> Vec<u8> {
    let mut v = vec![0; len];
    rand::rngs::OsRng.fill_bytes(&mut v);
    v
}

fn with_ext(base: &Path, ext: &str) -> PathBuf {
    let mut s = base.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

fn write_encoded(path: &Path, data: &[u8], enc: Encoding) -> Result<()> {
    let bytes = match enc {
        Encoding::Bin => data.to_vec(),
        Encoding::Hex => (hex::encode(data) + "\n").into_bytes(),
    };
    fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))
}

/// Reads a key or signature file written in either encoding. Binary key and
/// signature files never consist solely of hex digits in practice: keys start
/// with a non-printable parameter id byte.
fn read_encoded(path: &Path) -> Result<Vec<u8>> {
    let raw = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let trimmed = raw.trim_ascii();
    if !trimmed.is_empty() && trimmed.iter().all(u8::is_ascii_hexdigit) {
        return hex::decode(trimmed).map_err(|e| anyhow!("{}: {e}", path.display()));
    }
    Ok(raw)
}

fn kat_files(input: &Path) -> Result<Vec<PathBuf>> {
    if input.is_dir() {
        let mut files: Vec<PathBuf> = fs::read_dir(input)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "kat"))
            .collect();
        files.sort();
        if files.is_empty() {
            bail!("no .kat files in {}", input.display());
        }
        Ok(files)
    } else {
        Ok(vec![input.to_path_buf()])
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    name: &'a str,
    level: u8,
    variant: String,
    q: usize,
    m: usize,
    n: usize,
    k: usize,
    r: usize,
    parties: usize,
    eta: usize,
    tau: usize,
    ell: usize,
    pk_bytes: usize,
    sig_formula_bytes: usize,
    sig_wire_max_bytes: Option<usize>,
    log2_false_positive: f64,
    log2_soundness: f64,
    kz_forge: f64,
    kz_tau_prime: usize,
    enumeration: f64,
    error_support: f64,
    max_minors: Option<f64>,
    mm_a: Option<usize>,
    mm_p: Option<usize>,
    support_minors: Option<f64>,
    sm_a: Option<usize>,
    sm_p: Option<usize>,
    sm_b: Option<usize>,
    binding_min: f64,
}

fn to_csv(rows: &[ReportRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        let p = &row.params;
        let c = &row.costs;
        w.serialize(CsvRow {
            name: &p.name,
            level: p.level,
            variant: serde_json::to_value(p.variant)?.as_str().unwrap_or_default().to_string(),
            q: p.q,
            m: p.m,
            n: p.n,
            k: p.k,
            r: p.r,
            parties: p.parties,
            eta: p.eta,
            tau: p.tau,
            ell: p.ell,
            pk_bytes: row.pk_bytes,
            sig_formula_bytes: row.sig_formula_bytes,
            sig_wire_max_bytes: row.sig_wire_max_bytes,
            log2_false_positive: row.log2_false_positive,
            log2_soundness: row.log2_soundness,
            kz_forge: c.kz_forge.log2,
            kz_tau_prime: c.kz_forge.tau_prime,
            enumeration: c.enumeration,
            error_support: c.error_support,
            max_minors: c.max_minors.map(|x| x.log2),
            mm_a: c.max_minors.map(|x| x.a),
            mm_p: c.max_minors.map(|x| x.p),
            support_minors: c.support_minors.map(|x| x.log2),
            sm_a: c.support_minors.map(|x| x.a),
            sm_p: c.support_minors.map(|x| x.p),
            sm_b: c.support_minors.map(|x| x.b),
            binding_min: c.binding_min,
        })?;
    }
    Ok(String::from_utf8(w.into_inner().map_err(|e| anyhow!("{e}"))?)?)
}

/// Names of every shipped parameter set, for help output and tests.
pub fn parameter_names() -> Vec<String> {
    shipped().into_iter().map(|p| p.name).collect()
}
