use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use expdio_core::classnum::{class_number_exact, hua_upper_bound};
use expdio_core::linforms::derive_family_bounds_report;
use expdio_core::lucas::{in_defective_table, is_defective, lucas_u, primitive_divisor, LucasPair, PrimitiveDivisor};
use expdio_core::quadrep::{check_lemma, classify, enumerate_solutions, RepresentationInstance};
use expdio_core::search::{
    congruence_certificate, default_sieve, recheck_certificate, solve_general, verify_theorem, Certificate,
    EquationInstance, ExpRange, Mode, Parity, SearchRange, TheoremOptions, TheoremReport,
};
use expdio_core::Error;

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_PRECISION: u8 = 3;
const EXIT_OTHER: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "expdio", version, about = "Searches and certificates for (n-1)^x + (n+2)^y = n^z")]
struct Cli {
    /// Worker threads for parallel searches.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    workers: Option<u64>,

    /// Working precision in significant decimal digits.
    #[arg(long, global = true, env = "EXPDIO_PRECISION", default_value_t = 60,
          value_parser = clap::value_parser!(u32).range(60..))]
    precision: u32,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    /// JSON
    Structured,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum ParityArg {
    Any,
    Even,
    Odd,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Self {
        match p {
            ParityArg::Any => Parity::Any,
            ParityArg::Even => Parity::Even,
            ParityArg::Odd => Parity::Odd,
        }
    }
}

#[derive(clap::Args, Debug)]
struct EquationArgs {
    #[arg(long)]
    a: u64,
    #[arg(long)]
    b: u64,
    #[arg(long)]
    c: u64,
    #[arg(long, value_enum, default_value_t = ParityArg::Any)]
    x_parity: ParityArg,
    #[arg(long, value_enum, default_value_t = ParityArg::Any)]
    y_parity: ParityArg,
    #[arg(long, value_enum, default_value_t = ParityArg::Any)]
    z_parity: ParityArg,
}

impl EquationArgs {
    fn equation(&self) -> expdio_core::Result<EquationInstance> {
        EquationInstance::new(self.a, self.b, self.c)
    }

    fn range(&self, max: Option<u64>) -> SearchRange {
        let r = |p: ParityArg| ExpRange { min: 1, max, parity: p.into() };
        SearchRange { x: r(self.x_parity), y: r(self.y_parity), z: r(self.z_parity), n: None }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// All solutions of a^x + b^y = c^z with every exponent at most --max.
    Solve {
        #[command(flatten)]
        eq: EquationArgs,
        #[arg(long, default_value_t = 100)]
        max: u64,
        /// Number of sieve primes; 0 disables the sieve.
        #[arg(long, default_value_t = 4)]
        sieve: usize,
    },
    /// Run every case check for the family equation.
    VerifyTheorem {
        /// Reduced ranges.
        #[arg(long)]
        smoke: bool,
        /// Also fail when an inequality of the bound derivation does not hold.
        #[arg(long)]
        strict: bool,
        /// Stop the x = 1 search after this many seconds.
        #[arg(long)]
        time_budget: Option<u64>,
        /// Resume file for the x = 1 search.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// Derive the n and y ceilings for the x = 1 branch.
    Bounds {
        /// Fail when any step of the derivation does not hold.
        #[arg(long)]
        strict: bool,
    },
    /// Class number h(-4D) and its upper bound.
    Classnum {
        #[arg(long)]
        d: u64,
    },
    /// Lucas number u_k(P, Q) and its primitive divisor.
    Lucas {
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, allow_hyphen_values = true)]
        q: i64,
        #[arg(long)]
        k: usize,
    },
    /// Solutions of D1 X^2 + D2 Y^2 = k^Z and their classes.
    Quadrep {
        #[arg(long)]
        d1: u64,
        #[arg(long)]
        d2: u64,
        #[arg(long)]
        k: u64,
        #[arg(long, default_value_t = 6)]
        z_max: u32,
    },
    /// Least modulus ruling out a^x + b^y = c^z, or recheck a certificate file.
    Certify {
        #[command(flatten)]
        eq: Option<EquationArgs>,
        #[arg(long, default_value_t = 1000)]
        m_max: u64,
        /// Recheck the certificate stored in this file.
        #[arg(long, conflicts_with_all = ["a", "b", "c"])]
        check: Option<PathBuf>,
    },
}

struct Outcome {
    ok: bool,
    human: String,
    structured: String,
}

impl Outcome {
    fn new(ok: bool, human: String, value: &impl Serialize) -> Self {
        Outcome { ok, human, structured: serde_json::to_string_pretty(value).expect("report serializes") }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::InvalidArgument(_)) | Some(Error::Degenerate(_)) => EXIT_USAGE,
        Some(Error::Precision(_)) => EXIT_PRECISION,
        Some(Error::Verification(_)) => EXIT_FAILED,
        _ => EXIT_OTHER,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let workers = cli.workers.map_or_else(
        || std::thread::available_parallelism().map_or(1, |n| n.get()),
        |w| w as usize,
    );
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(workers).build_global() {
        eprintln!("error: thread pool: {e}");
        return ExitCode::from(EXIT_OTHER);
    }
    match run(&cli, workers).and_then(|o| emit(&cli, &o).map(|_| o.ok)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAILED),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn emit(cli: &Cli, o: &Outcome) -> anyhow::Result<()> {
    let mut text = match cli.format {
        Format::Human => o.human.clone(),
        Format::Structured => o.structured.clone(),
    };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &cli.output {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(cli: &Cli, workers: usize) -> anyhow::Result<Outcome> {
    let digits = cli.precision;
    Ok(match &cli.command {
        Command::Solve { eq, max, sieve } => {
            let e = eq.equation()?;
            let moduli = default_sieve(&e, *sieve);
            let cert = solve_general(&e, &eq.range(Some(*max)), (*sieve > 0).then_some(&moduli[..]), digits)?;
            let mut h = format!("{}^x + {}^y = {}^z, exponents <= {max}\n", e.a, e.b, e.c);
            if cert.solutions().is_empty() {
                h.push_str("no solutions\n");
            }
            for s in cert.solutions() {
                h.push_str(&format!("{s}\n"));
            }
            Outcome::new(true, h, &cert)
        }
        Command::VerifyTheorem { smoke, strict, time_budget, checkpoint } => {
            let mut o = TheoremOptions::new(if *smoke { Mode::Smoke } else { Mode::Full });
            o.workers = workers;
            o.digits = digits;
            o.checkpoint = checkpoint.clone();
            o.time_budget = time_budget.map(Duration::from_secs);
            let report = verify_theorem(&o)?;
            Outcome::new(report.passes(*strict), render_theorem(&report, *strict), &report)
        }
        Command::Bounds { strict } => {
            let d = derive_family_bounds_report(digits)?;
            let mut h = format!(
                "n_max = {}\ny_max = {}\nstated: n_max = {}, y_max = {}\nwith y > n: n_max = {}, y_max = {}\n\
                 large-branch root < {}\n",
                d.n_max, d.y_max, d.stated_n_max, d.stated_y_max, d.alt_n_max, d.alt_y_max, d.large_branch_root
            );
            for s in &d.steps {
                h.push_str(&format!("[{}] {}: {} ({})\n", if s.holds { "ok" } else { "FAIL" }, s.label, s.claim, s.detail));
            }
            Outcome::new(!*strict || d.consistent(), h, &d)
        }
        Command::Classnum { d } => {
            let r = class_number_exact(*d)?;
            let b = hua_upper_bound(*d)?;
            let h = format!("h(-4*{d}) = {}\nbound < {}\n", r.h, b.value);
            Outcome::new(true, h, &r)
        }
        Command::Lucas { p, q, k } => {
            let pair = LucasPair::new(*p, *q)?;
            let u = lucas_u(&pair, *k);
            let pd = primitive_divisor(&pair, *k)?;
            let defective = is_defective(&pair, *k)?;
            let (pd_text, pd_json) = match &pd {
                PrimitiveDivisor::Prime(p) => (p.to_string(), json!({ "prime": p.to_string() })),
                PrimitiveDivisor::None => ("none".to_string(), json!(null)),
                PrimitiveDivisor::Undetermined { primitive_part } => (
                    format!("exists, primitive part {primitive_part}"),
                    json!({ "primitive_part": primitive_part.to_string() }),
                ),
            };
            let in_table = *k % 2 == 1 && (5..=30).contains(k) && in_defective_table(&pair, *k);
            let h = format!(
                "u_{k}({p}, {q}) = {u}\nprimitive divisor: {pd_text}\ndefective: {defective}\nin table: {in_table}\n"
            );
            let v = json!({
                "p": p, "q": q, "k": k, "u_k": u.to_string(),
                "primitive_divisor": pd_json, "defective": defective, "in_table": in_table,
            });
            Outcome::new(true, h, &v)
        }
        Command::Quadrep { d1, d2, k, z_max } => {
            let inst = RepresentationInstance::new(*d1, *d2, *k, *z_max)?;
            let sols = enumerate_solutions(&inst)?;
            let classes = classify(&inst, &sols)?;
            let lemma = check_lemma(&inst, &classes)?;
            let mut h = format!("{d1} X^2 + {d2} Y^2 = {k}^Z, Z <= {z_max}: {} solution(s)\n", sols.len());
            for c in &classes {
                let (x, y, z) = c.minimal;
                h.push_str(&format!("class of ({x}, {y}, {z}): {} member(s)\n", c.members.len()));
            }
            h.push_str(&format!(
                "classes {} <= {}: {}; minimal exponents divide h = {}: {}\n",
                lemma.classes,
                lemma.class_limit,
                lemma.classes <= lemma.class_limit,
                lemma.h,
                lemma.minimal_exponents.iter().all(|e| e.1)
            ));
            let v = json!({ "solutions": sols, "classes": classes, "lemma": lemma, "holds": lemma.holds() });
            Outcome::new(lemma.holds(), h, &v)
        }
        Command::Certify { eq, m_max, check } => match (check, eq) {
            (Some(path), _) => {
                let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                let cert = Certificate::from_json(&text)?;
                let ok = recheck_certificate(&cert)?;
                let h = format!("{}: {}\n", path.display(), if ok { "confirmed" } else { "REJECTED" });
                Outcome::new(ok, h, &json!({ "confirmed": ok }))
            }
            (None, Some(eq)) => {
                let e = eq.equation()?;
                match congruence_certificate(&e, &eq.range(None), *m_max, digits)? {
                    Some(cert) => {
                        let m = match cert.kind {
                            expdio_core::search::CertificateKind::CongruenceEmpty { modulus } => modulus,
                            _ => unreachable!(),
                        };
                        Outcome::new(true, format!("no solutions: refuted modulo {m}\n"), &cert)
                    }
                    None => Outcome::new(
                        false,
                        format!("no modulus up to {m_max} refutes the equation\n"),
                        &json!({ "certificate": null, "m_max": m_max }),
                    ),
                }
            }
            (None, None) => return Err(Error::InvalidArgument("give --a --b --c or --check FILE".into()).into()),
        },
    })
}

fn render_theorem(r: &TheoremReport, strict: bool) -> String {
    let mut h = format!("{} ({:?} mode, {} digits)\n", r.tool_version, r.mode, r.precision_digits);
    for c in &r.cases {
        h.push_str(&format!("[{}] {}: {}\n", if c.holds { "ok" } else { "FAIL" }, c.case, c.summary));
        for n in &c.notes {
            h.push_str(&format!("       note: {n}\n"));
        }
    }
    let b = &r.bounds;
    h.push_str(&format!(
        "bounds: derived n < {}, y < {}; stated n < {}, y < {}; searched n <= {}, y <= {}\n",
        b.derivation.n_max,
        b.derivation.y_max,
        b.derivation.stated_n_max,
        b.derivation.stated_y_max,
        b.searched_n_hi,
        b.searched_y_hi
    ));
    for d in &r.defects {
        h.push_str(&format!("  defect: {d}\n"));
    }
    h.push_str("solutions:\n");
    for s in &r.solutions {
        h.push_str(&format!("  {s}\n"));
    }
    let (missing, extra) = r.diff();
    for s in &missing {
        h.push_str(&format!("  missing {s}\n"));
    }
    for s in &extra {
        h.push_str(&format!("  unexpected {s}\n"));
    }
    if !r.complete {
        h.push_str("x = 1 search incomplete; rerun with the same --checkpoint to resume\n");
    }
    h.push_str(if r.passes(strict) { "VERIFIED\n" } else { "NOT VERIFIED\n" });
    h
}
