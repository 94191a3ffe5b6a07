use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use descent::cache::{resolve_cache_dir, TableCache, CACHE_DIR_ENV};
use descent::characters::{character_matrix, irreducible_reps};
use descent::combinatorics::{count_p_regular, partition_count};
use descent::radical::{radical_dimension, ModularAlgebra, MAX_CERTIFY_N};
use descent::verify::{self, VerifyOptions};
use descent::{Composition, Element, Error, Prime, Ring};
use serde_json::json;

const MAX_TABLE_N: usize = 10;
const MAX_CHARACTERS_CLI_N: usize = 9;

#[derive(Parser)]
#[command(name = "descent", version, about = "Modular descent algebras: products, radicals, characters")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Directory for cached structure tables
    #[arg(long, global = true, env = CACHE_DIR_ENV)]
    cache_dir: Option<PathBuf>,
    /// Lift the default size bounds
    #[arg(long, global = true)]
    force: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Product of two basis elements
    Multiply {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_composition)]
        q: Composition,
        #[arg(long, value_parser = parse_composition)]
        r: Composition,
        /// Z, F<p> (e.g. F2), or Fp together with --p
        #[arg(long, default_value = "Z")]
        ring: String,
        #[arg(long, value_parser = parse_prime)]
        p: Option<Prime>,
    },
    /// Certify the radical of the algebra mod p
    Radical {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_prime)]
        p: Prime,
    },
    /// Summary table of dimensions and nilpotency indices
    Table {
        #[arg(long, default_value_t = 1)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_parser = parse_prime, value_delimiter = ',', required = true)]
        p: Vec<Prime>,
    },
    /// Run the property suite
    Verify {
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_parser = parse_prime, value_delimiter = ',', required = true)]
        p: Vec<Prime>,
        /// Also compare against the symmetric-group oracle
        #[arg(long)]
        with_oracle: bool,
    },
    /// Character matrix, with rank and irreducible representations mod p
    Characters {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_prime)]
        p: Option<Prime>,
    },
}

fn parse_composition(s: &str) -> Result<Composition, String> {
    s.parse::<Composition>().map_err(|e| e.to_string())
}

fn parse_prime(s: &str) -> Result<Prime, String> {
    let v: u32 = s.trim().parse().map_err(|_| format!("{s:?} is not an integer"))?;
    Prime::new(v).map_err(|e| e.to_string())
}

/// Exit status 1: a mathematical check failed.
struct Failed(String);

enum Outcome {
    Ok(String),
    Failed(String, Failed),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let (text, failure) = match outcome {
                Outcome::Ok(t) => (t, None),
                Outcome::Failed(t, f) => (t, Some(f)),
            };
            if let Err(e) = emit(&cli.common, &text) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            match failure {
                None => ExitCode::SUCCESS,
                Some(Failed(msg)) => {
                    eprintln!("verification failed: {msg}");
                    ExitCode::from(1)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Certification(_) | Error::Oracle(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn emit(common: &Common, text: &str) -> io::Result<()> {
    match &common.out {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn bound(n: usize, max: usize, what: &str, force: bool) -> descent::Result<()> {
    if n > max && !force {
        return Err(Error::Resource(format!("{what} is limited to n <= {max} (got {n}); pass --force to lift")));
    }
    Ok(())
}

fn run(cli: &Cli) -> descent::Result<Outcome> {
    let common = &cli.common;
    let cache = TableCache::new(resolve_cache_dir(common.cache_dir.as_deref()));
    match &cli.command {
        Command::Multiply { n, q, r, ring, p } => {
            let ring = parse_ring(ring, *p)?;
            for c in [q, r] {
                if c.n() != *n {
                    return Err(Error::Input(format!("{c} is not a composition of {n}")));
                }
            }
            let prod = Element::basis(q, ring).multiply(&Element::basis(r, ring))?;
            Ok(Outcome::Ok(render_element(&prod, common.format)?))
        }
        Command::Radical { n, p } => {
            if *n == 0 {
                return Err(Error::Input("n must be at least 1".into()));
            }
            bound(*n, MAX_CERTIFY_N, "radical", common.force)?;
            let table = cache.load_or_build(*n, Ring::PrimeField(*p), common.force)?;
            let cert = ModularAlgebra::from_table(table)?.certificate()?;
            let text = match common.format {
                Format::Json => to_json(&cert)?,
                Format::Csv => {
                    let mut s = String::from("field,value\n");
                    for (k, v) in certificate_fields(&cert) {
                        s.push_str(&format!("{k},{v}\n"));
                    }
                    s
                }
                Format::Text => {
                    let mut s = format!("radical of the descent algebra, n = {n}, p = {p}\n");
                    for (k, v) in certificate_fields(&cert) {
                        s.push_str(&format!("  {k:<22} {v}\n"));
                    }
                    s.push_str("spanning set:\n");
                    for x in &cert.spanning_set {
                        s.push_str(&format!("  {x}\n"));
                    }
                    s
                }
            };
            Ok(match cert.failed_clause() {
                None => Outcome::Ok(text),
                Some(clause) => Outcome::Failed(text, Failed(clause.to_string())),
            })
        }
        Command::Table { n_min, n_max, p } => {
            if *n_min == 0 || n_min > n_max {
                return Err(Error::Input(format!("bad range {n_min}..={n_max}")));
            }
            bound(*n_max, MAX_TABLE_N, "table", common.force)?;
            let mut rows = Vec::new();
            for n in *n_min..=*n_max {
                for &prime in p {
                    let dimension = radical_dimension(n, prime)?;
                    let index = if n <= MAX_CERTIFY_N || common.force {
                        let algebra =
                            ModularAlgebra::from_table(cache.load_or_build(n, Ring::PrimeField(prime), common.force)?)?;
                        algebra.nilpotency_index_of(&algebra.radical()?)?
                    } else {
                        None
                    };
                    rows.push(TableRow {
                        n,
                        p: prime.get(),
                        dim: 1 << (n - 1),
                        partitions: partition_count(n)?,
                        p_regular: count_p_regular(n, prime)?,
                        radical_dim: dimension,
                        nilpotency_index: index,
                    });
                }
            }
            Ok(Outcome::Ok(render_table(&rows, common.format)?))
        }
        Command::Verify { n_max, p, with_oracle } => {
            let report = verify::run(&VerifyOptions {
                n_max: *n_max,
                primes: p.clone(),
                with_oracle: *with_oracle,
                force: common.force,
            })?;
            let text = match common.format {
                Format::Json => to_json(&report)?,
                Format::Csv => {
                    let mut s = String::from("check,passed,detail\n");
                    for c in &report.checks {
                        s.push_str(&format!("{},{},{}\n", csv_field(&c.name), c.passed, csv_field(&c.detail)));
                    }
                    s
                }
                Format::Text => {
                    let mut s = String::new();
                    for c in &report.checks {
                        let mark = if c.passed { "PASS" } else { "FAIL" };
                        s.push_str(&format!("{mark}  {}", c.name));
                        if !c.detail.is_empty() {
                            s.push_str(&format!(" ({})", c.detail));
                        }
                        s.push('\n');
                    }
                    for notice in &report.notices {
                        s.push_str(&format!("NOTE  {notice}\n"));
                    }
                    let failed = report.failures().count();
                    s.push_str(&format!("{} checks, {} failed\n", report.checks.len(), failed));
                    s
                }
            };
            for notice in &report.notices {
                if common.format != Format::Text {
                    eprintln!("note: {notice}");
                }
            }
            let failed = report.failures().next().map(|c| c.name.clone());
            Ok(match failed {
                None => Outcome::Ok(text),
                Some(name) => Outcome::Failed(text, Failed(name)),
            })
        }
        Command::Characters { n, p } => {
            if *n == 0 {
                return Err(Error::Input("n must be at least 1".into()));
            }
            bound(*n, MAX_CHARACTERS_CLI_N, "characters", common.force)?;
            let m = character_matrix(*n)?;
            let extra = match p {
                Some(prime) => Some((m.rank_mod_p(*prime), count_p_regular(*n, *prime)?, irreducible_reps(*n, *prime)?)),
                None => None,
            };
            let text = match common.format {
                Format::Csv => m.to_csv(),
                Format::Json => {
                    let mut v = json!({
                        "n": n,
                        "compositions": m.compositions(),
                        "partitions": m.partitions(),
                        "matrix": m.entries(),
                    });
                    if let (Some((rank, g, reps)), Some(prime)) = (&extra, p) {
                        v["p"] = json!(prime);
                        v["rank_mod_p"] = json!(rank);
                        v["p_regular_partitions"] = json!(g);
                        v["irreducible_representations"] = json!(reps);
                    }
                    to_json(&v)?
                }
                Format::Text => {
                    let labels: Vec<String> = m.partitions().iter().map(|pi| pi.to_string()).collect();
                    let rows: Vec<String> = m.compositions().iter().map(|q| q.to_string()).collect();
                    let w0 = rows.iter().map(String::len).max().unwrap_or(0);
                    let widths: Vec<usize> = (0..labels.len())
                        .map(|k| m.column(k).iter().map(|v| v.to_string().len()).chain([labels[k].len()]).max().unwrap_or(1))
                        .collect();
                    let mut s = format!("{:w0$}", "");
                    for (l, w) in labels.iter().zip(&widths) {
                        s.push_str(&format!("  {l:>w$}"));
                    }
                    s.push('\n');
                    for (label, row) in rows.iter().zip(m.entries()) {
                        s.push_str(&format!("{label:<w0$}"));
                        for (v, w) in row.iter().zip(&widths) {
                            s.push_str(&format!("  {v:>w$}"));
                        }
                        s.push('\n');
                    }
                    if let (Some((rank, g, reps)), Some(prime)) = (&extra, p) {
                        s.push_str(&format!("rank mod {prime}: {rank}\np-regular partitions: {g}\n"));
                        for rep in reps {
                            let vals: Vec<String> = rep.values.iter().map(u32::to_string).collect();
                            s.push_str(&format!("lambda {}: {}\n", rep.label, vals.join(" ")));
                        }
                    }
                    s
                }
            };
            Ok(Outcome::Ok(text))
        }
    }
}

fn parse_ring(s: &str, p: Option<Prime>) -> descent::Result<Ring> {
    match (s, p) {
        ("Fp", Some(p)) => Ok(Ring::PrimeField(p)),
        ("Fp", None) => Err(Error::Input("--ring Fp needs --p".into())),
        (other, p) => {
            let ring: Ring = other.parse()?;
            match (ring, p) {
                (Ring::PrimeField(a), Some(b)) if a != b => {
                    Err(Error::Input(format!("--ring {other} disagrees with --p {b}")))
                }
                _ => Ok(ring),
            }
        }
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> descent::Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn render_element(x: &Element, format: Format) -> descent::Result<String> {
    Ok(match format {
        Format::Text => format!("{x}\n"),
        Format::Json => to_json(x)?,
        Format::Csv => {
            let mut s = String::from("composition,coeff\n");
            for (q, c) in x.terms() {
                s.push_str(&format!("\"{q}\",{c}\n"));
            }
            s
        }
    })
}

fn certificate_fields(c: &descent::radical::RadicalCertificate) -> Vec<(&'static str, String)> {
    vec![
        ("dimension", c.dimension.to_string()),
        ("nilpotency_index", c.nilpotency_index.map_or("none".into(), |k| k.to_string())),
        ("is_ideal", c.is_ideal.to_string()),
        ("quotient_commutative", c.quotient_commutative.to_string()),
        ("quotient_reduced", c.quotient_reduced.to_string()),
        ("within_kernel_phi", c.within_kernel_phi.to_string()),
        ("kernel_phi_dimension", c.kernel_phi_dimension.to_string()),
        ("verified", c.all_verified().to_string()),
    ]
}

#[derive(serde::Serialize)]
struct TableRow {
    n: usize,
    p: u32,
    dim: usize,
    partitions: usize,
    p_regular: usize,
    radical_dim: usize,
    nilpotency_index: Option<usize>,
}

fn render_table(rows: &[TableRow], format: Format) -> descent::Result<String> {
    let cells = |r: &TableRow| {
        [
            r.n.to_string(),
            r.p.to_string(),
            r.dim.to_string(),
            r.partitions.to_string(),
            r.p_regular.to_string(),
            r.radical_dim.to_string(),
            r.nilpotency_index.map_or(String::new(), |k| k.to_string()),
        ]
    };
    let header = ["n", "p", "dim", "partitions", "p_regular", "radical_dim", "nilpotency_index"];
    Ok(match format {
        Format::Json => to_json(&rows)?,
        Format::Csv => {
            let mut s = header.join(",") + "\n";
            for r in rows {
                s.push_str(&(cells(r).join(",") + "\n"));
            }
            s
        }
        Format::Text => {
            let body: Vec<[String; 7]> = rows
                .iter()
                .map(|r| {
                    let mut c = cells(r);
                    if c[6].is_empty() {
                        c[6] = "-".into();
                    }
                    c
                })
                .collect();
            let widths: Vec<usize> =
                (0..7).map(|k| body.iter().map(|c| c[k].len()).chain([header[k].len()]).max().unwrap_or(1)).collect();
            let line = |c: &[&str]| {
                c.iter().zip(&widths).map(|(v, w)| format!("{v:>w$}")).collect::<Vec<_>>().join("  ") + "\n"
            };
            let mut s = line(&header);
            for c in &body {
                s.push_str(&line(&c.iter().map(String::as_str).collect::<Vec<_>>()));
            }
            s
        }
    })
}
