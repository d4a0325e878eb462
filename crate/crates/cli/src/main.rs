//! `satake`: tables of integral spherical Hecke algebras from the command line.

mod table;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use satake::catalog;
use satake::charalg::QMode;
use satake::error::Error;
use satake::hecke::{HeckeAlgebra, HeckeElement};
use satake::kostka::kostka_foulkes;
use satake::lattice::Weight;
use satake::oracle::Oracle;
use satake::rootdata::RootDatum;
use satake::verify::{run_all, structure_tables, VerifyConfig};
use serde_json::json;

use table::{Cell, Format, Table};

#[derive(Parser, Debug)]
#[command(
    name = "satake",
    version,
    about = "Integral spherical Hecke algebras via the invariant-ring model"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    job: JobArgs,
}

#[derive(Args, Debug, Clone)]
struct JobArgs {
    /// Catalog name of the root datum.
    #[arg(long, global = true, conflicts_with = "datum_file")]
    datum: Option<String>,
    /// TOML file describing a root datum.
    #[arg(long, global = true)]
    datum_file: Option<PathBuf>,
    /// `rho`, or `rho+w:v1,...` for the weight-twisted algebra.
    #[arg(long, global = true, default_value = "rho")]
    shift: String,
    /// `symbolic` or an integer prime power.
    #[arg(long, global = true, default_value = "symbolic")]
    q: String,
    #[arg(long, global = true, value_parser = clap::value_parser!(i64).range(1..))]
    height: Option<i64>,
    #[arg(long, global = true, value_parser = clap::value_parser!(i64).range(1..))]
    spread: Option<i64>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the built-in root data.
    Catalog,
    /// Print `m_lambda` as a combination of lattice monomials.
    Mbasis {
        #[arg(long = "l", allow_hyphen_values = true)]
        lambda: String,
    },
    /// Structure constants of `m_l * m_m`, or the whole table up to `--height`.
    Structconst {
        #[arg(long = "l", allow_hyphen_values = true, requires = "mu")]
        lambda: Option<String>,
        #[arg(long = "m", allow_hyphen_values = true, requires = "lambda")]
        mu: Option<String>,
    },
    /// Satake transform of the double coset of a dominant weight.
    SatakeDc {
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
    /// Kostka-Foulkes polynomial `K_{mu,lambda}(q)`.
    Kostka {
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Brute-force double-coset counts for `GL_n` over `F_q((t))`.
    Oracle {
        #[command(subcommand)]
        query: OracleQuery,
    },
    /// Run the acceptance checks.
    Verify,
}

#[derive(Subcommand, Debug)]
enum OracleQuery {
    /// Counts `|U(F) lambda K  cap  K mu K / K|` for every `lambda`.
    Satake {
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
    /// The single count for one `lambda`.
    Count {
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Convolution coefficients of two double cosets of `GL_2`.
    Convolve {
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
    },
}

/// A failed command: exit code plus a diagnostic.
struct Failure {
    code: u8,
    kind: String,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::EnvelopeExceeded(_)) {
            4
        } else {
            2
        };
        Failure {
            code,
            kind: e.kind().to_string(),
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        let kind = if e.kind() == io::ErrorKind::BrokenPipe {
            "BrokenPipe"
        } else {
            "Io"
        };
        Failure {
            code: 2,
            kind: kind.into(),
            message: e.to_string(),
        }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        kind: "InvalidArgument".into(),
        message: message.into(),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Catalog => "catalog",
        Command::Mbasis { .. } => "mbasis",
        Command::Structconst { .. } => "structconst",
        Command::SatakeDc { .. } => "satake-dc",
        Command::Kostka { .. } => "kostka",
        Command::Oracle { .. } => "oracle",
        Command::Verify => "verify",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) if f.kind == "BrokenPipe" => ExitCode::SUCCESS,
        Err(f) => {
            let diag =
                json!({ "command": name, "error": f.kind, "message": f.message, "exit": f.code });
            eprintln!("{diag}");
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let job = &cli.job;
    let (table, code) = match &cli.command {
        Command::Catalog => (cmd_catalog(), 0),
        Command::Mbasis { lambda } => (cmd_mbasis(job, lambda)?, 0),
        Command::Structconst { lambda, mu } => (
            cmd_structconst(job, lambda.as_deref().zip(mu.as_deref()))?,
            0,
        ),
        Command::SatakeDc { mu } => (cmd_satake_dc(job, mu)?, 0),
        Command::Kostka { mu, lambda } => (cmd_kostka(job, mu, lambda)?, 0),
        Command::Oracle { query } => (cmd_oracle(job, query)?, 0),
        Command::Verify => cmd_verify(job)?,
    };
    match &job.out {
        Some(path) => {
            let mut f = fs::File::create(path)?;
            table.write(job.format, &mut f)?;
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            table.write(job.format, &mut lock)?;
            lock.flush()?;
        }
    }
    Ok(code)
}

fn weight(s: &str) -> Result<Weight, Failure> {
    Ok(s.parse::<Weight>()?)
}

fn datum(job: &JobArgs) -> Result<RootDatum, Failure> {
    match (&job.datum, &job.datum_file) {
        (Some(name), _) => Ok(catalog::lookup(name)?),
        (None, Some(path)) => {
            let text = fs::read_to_string(path)?;
            Ok(RootDatum::from_toml_str(&text)?)
        }
        (None, None) => Err(invalid("one of --datum or --datum-file is required")),
    }
}

fn mode(job: &JobArgs) -> Result<QMode, Failure> {
    if job.q.eq_ignore_ascii_case("symbolic") {
        return Ok(QMode::Symbolic);
    }
    match job.q.parse::<u64>() {
        Ok(q) if q >= 2 => Ok(QMode::Numeric(q)),
        _ => Err(invalid(format!(
            "--q must be `symbolic` or an integer at least 2, got `{}`",
            job.q
        ))),
    }
}

fn numeric_q(job: &JobArgs) -> Result<u64, Failure> {
    match mode(job)? {
        QMode::Numeric(q) => Ok(q),
        QMode::Symbolic => Err(invalid("this command needs a numeric --q")),
    }
}

fn algebra(job: &JobArgs) -> Result<HeckeAlgebra, Failure> {
    let h = HeckeAlgebra::spherical(datum(job)?, mode(job)?);
    let spec = job.shift.trim();
    if spec == "rho" {
        return Ok(h);
    }
    let Some(w) = spec.strip_prefix("rho+w:") else {
        return Err(invalid(format!(
            "--shift must be `rho` or `rho+w:v1,...`, got `{spec}`"
        )));
    };
    Ok(h.weight_hecke(weight(w)?.coords())?)
}

fn element_table(
    key: &'static str,
    terms: impl IntoIterator<Item = (Weight, satake::poly::LaurentPoly)>,
) -> Table {
    let mut t = Table::new(vec![key, "coefficient"]);
    for (w, c) in terms {
        t.push(vec![Cell::Weight(w), Cell::Poly(c)]);
    }
    t
}

fn cmd_catalog() -> Table {
    let mut t = Table::new(vec![
        "name",
        "rank",
        "semisimple_rank",
        "split",
        "description",
    ]);
    for d in catalog::catalog() {
        let desc = d.spec().description.clone().unwrap_or_default();
        t.push(vec![
            Cell::Text(d.name().to_string()),
            Cell::Int(d.rank() as i64),
            Cell::Int(d.semisimple_rank() as i64),
            Cell::Text(if d.is_split() { "yes" } else { "no" }.to_string()),
            Cell::Text(desc),
        ]);
    }
    t
}

fn cmd_mbasis(job: &JobArgs, lambda: &str) -> Result<Table, Failure> {
    let h = algebra(job)?;
    let x = h.m_element(&weight(lambda)?)?;
    Ok(element_table(
        "weight",
        x.terms().iter().map(|(w, c)| (w.clone(), c.clone())),
    ))
}

fn cmd_structconst(job: &JobArgs, pair: Option<(&str, &str)>) -> Result<Table, Failure> {
    let h = algebra(job)?;
    if let Some((l, m)) = pair {
        let table = h.structure_constants(&weight(l)?, &weight(m)?)?;
        return Ok(element_table("kappa", table));
    }
    let Some(height) = job.height else {
        return Err(invalid("give --l and --m, or --height for a full table"));
    };
    let mut t = Table::new(vec!["lambda", "mu", "kappa", "coefficient"]);
    for (l, m, table) in structure_tables(&h, height) {
        for (k, c) in table? {
            t.push(vec![
                Cell::Weight(l.clone()),
                Cell::Weight(m.clone()),
                Cell::Weight(k),
                Cell::Poly(c),
            ]);
        }
    }
    Ok(t)
}

fn cmd_satake_dc(job: &JobArgs, mu: &str) -> Result<Table, Failure> {
    let h = algebra(job)?;
    let dc: HeckeElement = h.double_coset_basis(&weight(mu)?)?;
    let x = h.lift(&dc)?;
    Ok(element_table(
        "weight",
        x.terms().iter().map(|(w, c)| (w.clone(), c.clone())),
    ))
}

fn cmd_kostka(job: &JobArgs, mu: &str, lambda: &str) -> Result<Table, Failure> {
    let d = datum(job)?;
    let p = kostka_foulkes(&d, &weight(mu)?, &weight(lambda)?)?;
    let mut t = Table::new(vec!["mu", "lambda", "polynomial"]);
    t.push(vec![
        Cell::Weight(weight(mu)?),
        Cell::Weight(weight(lambda)?),
        Cell::Poly(p),
    ]);
    Ok(t)
}

fn cmd_oracle(job: &JobArgs, query: &OracleQuery) -> Result<Table, Failure> {
    let oracle = Oracle::new(numeric_q(job)?)?;
    match query {
        OracleQuery::Satake { mu } => {
            let v = oracle.satake_vector(weight(mu)?.coords())?;
            Ok(element_table(
                "lambda",
                v.terms().iter().map(|(w, c)| (w.clone(), c.clone())),
            ))
        }
        OracleQuery::Count { mu, lambda } => {
            let (mu, lambda) = (weight(mu)?, weight(lambda)?);
            let c = oracle.satake_count(mu.coords(), lambda.coords())?;
            let mut t = Table::new(vec!["mu", "lambda", "count"]);
            t.push(vec![
                Cell::Weight(mu),
                Cell::Weight(lambda),
                Cell::Int(c as i64),
            ]);
            Ok(t)
        }
        OracleQuery::Convolve { mu, nu } => {
            let counts = oracle.convolution(weight(mu)?.coords(), weight(nu)?.coords())?;
            let mut t = Table::new(vec!["kappa", "count"]);
            for (k, c) in counts {
                t.push(vec![Cell::Weight(k), Cell::Int(c as i64)]);
            }
            Ok(t)
        }
    }
}

fn cmd_verify(job: &JobArgs) -> Result<(Table, u8), Failure> {
    if job.datum_file.is_some() {
        return Err(invalid("verify runs on catalog data; use --datum"));
    }
    let mut config = VerifyConfig::default();
    if let Some(name) = &job.datum {
        config.datum = Some(catalog::lookup(name)?.name().to_string());
    }
    if let QMode::Numeric(q) = mode(job)? {
        config.qs = vec![q];
    }
    if let Some(h) = job.height {
        config.height = h;
    }
    if let Some(s) = job.spread {
        config.gl2_spread = s;
    }
    if let Some(s) = job.seed {
        config.seed = s;
    }
    let reports = run_all(&config);
    let mut t = Table::new(vec!["criterion", "name", "status", "checks", "failures"]);
    for r in &reports {
        let status = if r.skipped() {
            "SKIP"
        } else if r.passed() {
            "PASS"
        } else {
            "FAIL"
        };
        t.push(vec![
            Cell::Int(r.id.into()),
            Cell::Text(r.name.to_string()),
            Cell::Text(status.to_string()),
            Cell::Int(r.checked as i64),
            Cell::Int(r.failures.len() as i64),
        ]);
        for f in &r.failures {
            t.footer
                .push(format!("criterion {} counterexample: {f}", r.id));
        }
        for n in &r.notes {
            t.footer.push(format!("criterion {} note: {n}", r.id));
        }
    }
    let failed = reports
        .iter()
        .filter(|r| !r.passed() && !r.skipped())
        .count();
    let passed = reports.iter().filter(|r| r.passed()).count();
    let skipped = reports.len() - passed - failed;
    t.footer.push(format!(
        "{passed} passed, {failed} failed, {skipped} skipped"
    ));
    Ok((t, if failed > 0 { 3 } else { 0 }))
}
