//! `digreedoid`: greedoid polynomials of rooted digraphs from the command line.
//!
//! Exit status: 0 on success, 2 for malformed input or parameters, 3 when an
//! input exceeds a size limit, 4 when a self-check fails.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use digreedoid::census::{self, emit_table, emit_tables, summarize, Table, TableFormat};
use digreedoid::digraph::{parse_mckay, Digraph};
use digreedoid::enumerate::rooted_classes;
use digreedoid::factor::{factorise, gm_factorise};
use digreedoid::families::{self, FamilyReport, FamilySpec, Guest};
use digreedoid::greedoid::{poly_dc, poly_subsets, MemoCache};
use digreedoid::{BiPoly, Error};

#[derive(Parser)]
#[command(
    name = "digreedoid",
    version,
    about = "Greedoid polynomials of rooted digraphs"
)]
struct Cli {
    /// Worker threads; defaults to one per core. Output never depends on it.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Greedoid polynomial of one or more rooted digraphs.
    Poly(PolyArgs),
    /// Factorise polynomials over the integers.
    Factor(FactorArgs),
    /// Run the census of all rooted digraphs up to an order.
    Census(CensusArgs),
    /// Build a member of one of the GM-factorising families.
    Family(FamilyArgs),
    /// List unlabelled digraphs or rooted classes of one order.
    Enumerate(EnumerateArgs),
}

#[derive(Args)]
struct DigraphInput {
    /// One digraph in McKay format, e.g. "3 2 0 1 1 2".
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    inline: Option<String>,
    /// File with one McKay line per digraph.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(
        long,
        conflicts_with = "all_roots",
        required_unless_present = "all_roots"
    )]
    root: Option<usize>,
    /// Use every vertex as the root in turn.
    #[arg(long)]
    all_roots: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    /// Deletion–contraction with memoisation.
    Dc,
    /// Direct sum over all edge subsets (small digraphs only).
    Subsets,
}

#[derive(Args)]
struct PolyArgs {
    #[command(flatten)]
    input: DigraphInput,
    #[arg(long, value_enum, default_value = "dc")]
    method: Method,
    /// Also print the factorisation.
    #[arg(long)]
    factor: bool,
}

#[derive(Args)]
struct FactorArgs {
    /// Polynomial such as "1 + t + t^2 + t^2*z".
    #[arg(conflicts_with = "input", required_unless_present = "input")]
    polynomial: Option<String>,
    /// File with one polynomial per line.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Also list GM-factorisations against the polynomials of all rooted
    /// digraphs up to this order.
    #[arg(long)]
    gm_order: Option<usize>,
}

#[derive(Args)]
struct CensusArgs {
    #[arg(long)]
    order: usize,
    /// Directory receiving `database.tsv` and one file per table.
    #[arg(long, default_value = "census-out")]
    out: PathBuf,
    #[arg(long, default_value = "csv", value_parser = parse_format)]
    format: TableFormat,
    /// Permit order 6, which takes hours.
    #[arg(long)]
    allow_heavy: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyKind {
    Path,
    Cycle,
    Lemma3,
    Theorem4,
    Theorem5,
    Corollary1,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(value_enum)]
    kind: FamilyKind,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    /// Guest for the doubled families: `path:M` or `chorded`.
    #[arg(long, default_value = "path:2")]
    guest: String,
    /// Attachment digraph in McKay format; vertex 0 is the copied root and
    /// vertex 1 the end of the guest path.
    #[arg(long)]
    attachment: Option<String>,
    /// Check the closed form or the divisibility property.
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    order: usize,
    /// Print one `McKay line<TAB>root` per rooted class.
    #[arg(long)]
    rooted: bool,
    #[arg(long)]
    allow_heavy: bool,
}

fn parse_format(s: &str) -> Result<TableFormat, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::TooLarge { .. } => 3,
        Error::Verification(_) | Error::Inconsistency(_) => 4,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cli.workers {
        pool = pool.num_threads(w.max(1));
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start worker pool: {e}");
            return ExitCode::from(1);
        }
    };
    let result = pool.install(|| run(cli.command, &mut io::stdout().lock()));
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(command: Command, out: &mut impl Write) -> Result<u8, Error> {
    match command {
        Command::Poly(a) => cmd_poly(a, out),
        Command::Factor(a) => cmd_factor(a, out),
        Command::Census(a) => cmd_census(a, out),
        Command::Family(a) => cmd_family(a, out),
        Command::Enumerate(a) => cmd_enumerate(a, out),
    }
}

fn write_err(path: &Path) -> impl Fn(io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn stdout_err(source: io::Error) -> Error {
    Error::Io {
        path: PathBuf::from("<stdout>"),
        source,
    }
}

/// Non-blank lines of `path`, or the single inline value.
fn input_lines(inline: Option<String>, path: Option<&Path>) -> Result<Vec<String>, Error> {
    match (inline, path) {
        (Some(line), _) => Ok(vec![line]),
        (None, Some(p)) => Ok(fs::read_to_string(p)
            .map_err(write_err(p))?
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(String::from)
            .collect()),
        (None, None) => Err(Error::Format("no input given".into())),
    }
}

fn cmd_poly(a: PolyArgs, out: &mut impl Write) -> Result<u8, Error> {
    let lines = input_lines(a.input.inline, a.input.input.as_deref())?;
    let digraphs: Vec<Digraph> = lines
        .iter()
        .map(|l| parse_mckay(l))
        .collect::<Result<_, _>>()?;
    let mut jobs = Vec::new();
    for g in &digraphs {
        let roots: Vec<usize> = match a.input.root {
            Some(r) => vec![r],
            None => (0..g.order()).collect(),
        };
        for r in roots {
            jobs.push((g, r, g.rooted(r)?));
        }
    }
    let cache = MemoCache::new();
    let single = jobs.len() == 1;
    for (g, r, d) in jobs {
        let poly = match a.method {
            Method::Dc => poly_dc(&d, &cache),
            Method::Subsets => poly_subsets(&d)?,
        };
        let fact = if a.factor {
            Some(factorise(&poly)?)
        } else {
            None
        };
        let res = if single {
            writeln!(out, "{poly}").and_then(|_| match &fact {
                Some(f) => writeln!(out, "{f}"),
                None => Ok(()),
            })
        } else {
            let extra = fact.map(|f| format!("\t{f}")).unwrap_or_default();
            writeln!(out, "{}\t{r}\t{poly}{extra}", g.to_mckay())
        };
        res.map_err(stdout_err)?;
    }
    Ok(0)
}

fn cmd_factor(a: FactorArgs, out: &mut impl Write) -> Result<u8, Error> {
    let lines = input_lines(a.polynomial, a.input.as_deref())?;
    let polys: Vec<BiPoly> = lines.iter().map(|l| l.parse()).collect::<Result<_, _>>()?;
    let db = match a.gm_order {
        Some(n) => Some(census::build_database(n, false, &MemoCache::new())?.combined_up_to(n)),
        None => None,
    };
    for p in &polys {
        let fact = factorise(p)?;
        writeln!(out, "{fact}").map_err(stdout_err)?;
        if let Some(db) = &db {
            for (g, h) in gm_factorise(p, db)? {
                writeln!(out, "  GM: ({g}) * ({h})").map_err(stdout_err)?;
            }
        }
    }
    Ok(0)
}

fn cmd_census(a: CensusArgs, out: &mut impl Write) -> Result<u8, Error> {
    let db = census::build_database(a.order, a.allow_heavy, &MemoCache::new())?;
    let report = summarize(&db);
    fs::create_dir_all(&a.out).map_err(write_err(&a.out))?;
    census::persist(&db, &a.out.join("database.tsv"))?;
    for table in Table::ALL {
        let path = a
            .out
            .join(format!("{}.{}", table.name(), a.format.extension()));
        fs::write(&path, emit_table(&report, table, a.format)).map_err(write_err(&path))?;
    }
    write!(out, "{}", emit_tables(&report, a.format)).map_err(stdout_err)?;
    let violations = report.violations();
    for v in &violations {
        eprintln!("identity violated: {v}");
    }
    Ok(if violations.is_empty() { 0 } else { 4 })
}

fn parse_guest(s: &str) -> Result<Guest, Error> {
    match s.split_once(':') {
        Some(("path", m)) => {
            let m = m
                .parse()
                .map_err(|_| Error::InvalidFamily(format!("bad path length {m:?}")))?;
            Guest::directed_path(m)
        }
        None if s == "chorded" => Ok(Guest::chorded_path()),
        _ => Err(Error::InvalidFamily(format!(
            "unknown guest {s:?}; use path:M or chorded"
        ))),
    }
}

fn need(v: Option<usize>, flag: &str) -> Result<usize, Error> {
    v.ok_or_else(|| Error::InvalidFamily(format!("--{flag} is required for this family")))
}

fn family_spec(a: &FamilyArgs) -> Result<FamilySpec, Error> {
    Ok(match a.kind {
        FamilyKind::Path => FamilySpec::Path { m: need(a.m, "m")? },
        FamilyKind::Cycle => FamilySpec::Cycle { m: need(a.m, "m")? },
        FamilyKind::Lemma3 => FamilySpec::Lemma3 { k: need(a.k, "k")? },
        FamilyKind::Theorem4 => FamilySpec::Theorem4 {
            k: need(a.k, "k")?,
            l: need(a.l, "l")?,
        },
        FamilyKind::Theorem5 => FamilySpec::Theorem5 {
            guest: parse_guest(&a.guest)?,
            l: need(a.l, "l")?,
        },
        FamilyKind::Corollary1 => {
            let line = a
                .attachment
                .as_deref()
                .ok_or_else(|| Error::InvalidFamily("--attachment is required".into()))?;
            FamilySpec::Corollary1 {
                guest: parse_guest(&a.guest)?,
                l: need(a.l, "l")?,
                attachment: parse_mckay(line)?,
            }
        }
    })
}

fn cmd_family(a: FamilyArgs, out: &mut impl Write) -> Result<u8, Error> {
    let spec = family_spec(&a)?;
    let cache = MemoCache::new();
    let (report, verdict) = if a.verify {
        match families::verify_family(&spec, &cache) {
            Ok(r) => (r, Some(Ok(()))),
            Err(Error::Verification(msg)) => {
                let digraph = families::build(&spec)?;
                let polynomial = poly_dc(&digraph, &cache);
                let report = FamilyReport {
                    digraph,
                    polynomial,
                    closed_form: families::closed_form(&spec)?,
                    guest_factor: None,
                    cofactor: None,
                };
                (report, Some(Err(msg)))
            }
            Err(e) => return Err(e),
        }
    } else {
        let digraph = families::build(&spec)?;
        let polynomial = poly_dc(&digraph, &cache);
        let report = FamilyReport {
            digraph,
            polynomial,
            closed_form: families::closed_form(&spec)?,
            guest_factor: None,
            cofactor: None,
        };
        (report, None)
    };
    let fact = factorise(&report.polynomial)?;
    let mut text = format!("{report}factorisation: {fact}\n");
    let code = match verdict {
        Some(Ok(())) => {
            text.push_str("verification: PASS\n");
            0
        }
        Some(Err(msg)) => {
            text.push_str(&format!("verification: FAIL ({msg})\n"));
            4
        }
        None => 0,
    };
    out.write_all(text.as_bytes()).map_err(stdout_err)?;
    Ok(code)
}

fn cmd_enumerate(a: EnumerateArgs, out: &mut impl Write) -> Result<u8, Error> {
    let list = rooted_classes(a.order, a.allow_heavy)?;
    let text = if a.rooted {
        list.rooted_classes()
            .iter()
            .map(|&(rep, root)| format!("{}\t{root}\n", list.representatives()[rep].to_mckay()))
            .collect()
    } else {
        list.to_mckay_lines()
    };
    out.write_all(text.as_bytes()).map_err(stdout_err)?;
    Ok(0)
}
