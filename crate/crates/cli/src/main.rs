//! `classalg`: structure constants of stable class algebras from the shell.

mod cache;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use serde::Serialize;

use classalg::diagnose::{ambient_shift_scalars, span_index};
use classalg::{
    bracket_graded, bullet, class_sizes, involution, parse_class, star, verify_local_stability, verify_stability,
    AlgebraElement, CheckerSurface, Config, Error, ExportFormat, FamilyDescriptor, GroupElement, StabilityReport,
    Strategy,
};

#[derive(Parser)]
#[command(name = "classalg", version, about = "Exact stable algebras of conjugacy classes")]
struct Cli {
    /// Family: s1, s2, sm:<m> or full:<l1,l2,...> (default s1; s2 for surfaces)
    #[arg(long, global = true)]
    family: Option<String>,
    /// Print JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Write the result to this file
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Recompute a cached table
    #[arg(long, global = true)]
    force: bool,
    /// Worker threads for the reductions; 1 runs sequentially
    #[arg(long, global = true, value_name = "K", value_parser = clap::value_parser!(u16).range(1..))]
    parallel: Option<u16>,
    /// Override the largest N accepted by the oracle and class enumeration
    #[arg(long = "max-n", global = true)]
    max_n: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Stable product g * h
    Mult { g: String, h: String },
    /// Product of the associated graded algebra
    Bullet { g: String, h: String },
    /// Graded Lie bracket
    Bracket { g: String, h: String },
    /// The anti-involution B[c] -> B[c^-1]
    Involution { x: String },
    /// Filtration degree (largest ambient with a nonzero term)
    Degree { x: String },
    /// Classes of G_n // K_n with their sizes
    Classes {
        #[arg(long)]
        n: usize,
    },
    /// Structure constants for all basis pairs with ambients <= n-max, as CSV
    Table {
        #[arg(long = "n-max")]
        n_max: usize,
    },
    /// Check the expansion of g * h against the finite group algebras
    Verify {
        g: String,
        h: String,
        /// Values of N: `a..b` (inclusive), `a,b,c` or a single number
        #[arg(long = "n", default_value = "0..4")]
        range: String,
        /// Check in the local-bijection algebras instead
        #[arg(long)]
        local: bool,
    },
    /// Checker triangulated surfaces of Product(2) pairs
    Surface {
        #[command(subcommand)]
        command: SurfaceCommand,
    },
    /// Numerical diagnostics
    Diagnose {
        #[command(subcommand)]
        command: DiagnoseCommand,
    },
}

#[derive(Subcommand)]
enum SurfaceCommand {
    /// Faces, edges, vertices, Euler characteristic and genus per component
    Analyze { surface: String },
    /// Write the surface as json or dot
    Export {
        surface: String,
        #[arg(long, default_value = "json")]
        format: String,
    },
}

#[derive(Subcommand)]
enum DiagnoseCommand {
    /// How A_N of a class changes when its ambient grows
    Remark1 {
        class: String,
        #[arg(long, default_value_t = 2)]
        shift: usize,
        #[arg(long = "n", default_value = "0..6")]
        range: String,
    },
    /// Index of the span of all A_N[r] inside the class functions on G_N
    Remark2 {
        #[arg(long)]
        n: usize,
    },
}

/// Raised when a verification ran to completion and found a mismatch.
#[derive(Debug)]
struct VerificationFailed;

impl std::fmt::Display for VerificationFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("verification failed")
    }
}

impl std::error::Error for VerificationFailed {}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match with_pool(cli.parallel, || run(&cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<VerificationFailed>().is_some() {
        return 1;
    }
    match e.downcast_ref::<Error>() {
        Some(Error::ResourceGuard(_) | Error::CapExceeded { .. }) => 3,
        _ => 2,
    }
}

#[cfg(feature = "parallel")]
fn with_pool<T: Send>(k: Option<u16>, f: impl FnOnce() -> anyhow::Result<T> + Send) -> anyhow::Result<T> {
    match k {
        Some(k) if k > 1 => rayon::ThreadPoolBuilder::new()
            .num_threads(usize::from(k))
            .build()
            .context("starting worker pool")?
            .install(f),
        _ => f(),
    }
}

#[cfg(not(feature = "parallel"))]
fn with_pool<T>(_k: Option<u16>, f: impl FnOnce() -> anyhow::Result<T>) -> anyhow::Result<T> {
    f()
}

impl Cli {
    fn config(&self) -> Config {
        let strategy = match self.parallel {
            Some(1) => Strategy::Sequential,
            _ => Strategy::Parallel,
        };
        Config { oracle_max_n: self.max_n, strategy, ..Config::default() }
    }

    fn family(&self) -> anyhow::Result<FamilyDescriptor> {
        Ok(FamilyDescriptor::parse(self.family.as_deref().unwrap_or("s1"))?)
    }

    fn emit(&self, text: &str) -> anyhow::Result<()> {
        let mut text = text.to_owned();
        if !text.ends_with('\n') {
            text.push('\n');
        }
        match &self.out {
            Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
            None => std::io::stdout().lock().write_all(text.as_bytes())?,
        }
        Ok(())
    }

    fn emit_element(&self, x: &AlgebraElement) -> anyhow::Result<()> {
        if self.json {
            self.emit(&x.to_json())
        } else {
            self.emit(&x.to_string())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> anyhow::Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

fn run(cli: &Cli) -> anyhow::Result<()> {
    let config = cli.config();
    match &cli.command {
        Command::Mult { g, h } => binary(cli, g, h, |u, v| star(u, v, &config)),
        Command::Bullet { g, h } => binary(cli, g, h, |u, v| bullet(u, v, &config)),
        Command::Bracket { g, h } => binary(cli, g, h, |u, v| bracket_graded(u, v, &config)),
        Command::Involution { x } => {
            let x = parse_element(&cli.family()?, x, &config)?;
            cli.emit_element(&involution(&x))
        }
        Command::Degree { x } => {
            let d = parse_element(&cli.family()?, x, &config)?.degree()?;
            cli.emit(&if cli.json { to_json(&serde_json::json!({ "degree": d }))? } else { d.to_string() })
        }
        Command::Classes { n } => classes(cli, *n, &config),
        Command::Table { n_max } => cache::table(cli, *n_max, &config),
        Command::Verify { g, h, range, local } => verify(cli, g, h, range, *local, &config),
        Command::Surface { command } => surface(cli, command),
        Command::Diagnose { command } => diagnose(cli, command, &config),
    }
}

fn binary(
    cli: &Cli,
    g: &str,
    h: &str,
    op: impl Fn(&AlgebraElement, &AlgebraElement) -> classalg::Result<AlgebraElement>,
) -> anyhow::Result<()> {
    let family = cli.family()?;
    let config = cli.config();
    let u = parse_element(&family, g, &config)?;
    let v = parse_element(&family, h, &config)?;
    cli.emit_element(&op(&u, &v)?)
}

/// A class literal, an element in JSON, or a file holding one.
fn parse_element(family: &FamilyDescriptor, text: &str, config: &Config) -> anyhow::Result<AlgebraElement> {
    let json = if text.trim_start().starts_with('{') {
        Some(text.to_owned())
    } else if Path::new(text).is_file() {
        Some(fs::read_to_string(text).with_context(|| format!("reading {text}"))?)
    } else {
        None
    };
    match json {
        Some(doc) => {
            let x = AlgebraElement::from_json(&doc, config)?;
            if x.family() != family {
                return Err(Error::FamilyMismatch(x.family().to_string(), family.to_string()).into());
            }
            Ok(x)
        }
        None => Ok(AlgebraElement::basis(&parse_class(family, text, config)?)),
    }
}

fn parse_range(text: &str) -> anyhow::Result<Vec<usize>> {
    let bad = || Error::Parse(format!("bad N range `{text}`"));
    if let Some((a, b)) = text.split_once("..") {
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad().into());
        }
        return Ok((a..=b).collect());
    }
    text.split(',').map(|s| s.trim().parse().map_err(|_| bad().into())).collect()
}

#[derive(Serialize)]
struct ClassRow {
    n: usize,
    rep: String,
    size: u64,
}

fn classes(cli: &Cli, n: usize, config: &Config) -> anyhow::Result<()> {
    let sizes = class_sizes(&cli.family()?, n, config)?;
    if cli.json {
        let rows: Vec<ClassRow> =
            sizes.iter().map(|(c, &size)| ClassRow { n: c.ambient(), rep: c.key().to_owned(), size }).collect();
        return cli.emit(&to_json(&rows)?);
    }
    let lines: Vec<String> = sizes.iter().map(|(c, size)| format!("{}\t{size}", c.key())).collect();
    cli.emit(&lines.join("\n"))
}

fn verify(cli: &Cli, g: &str, h: &str, range: &str, local: bool, config: &Config) -> anyhow::Result<()> {
    let family = cli.family()?;
    let g = parse_class(&family, g, config)?;
    let h = parse_class(&family, h, config)?;
    let ns = parse_range(range)?;
    let report = if local {
        verify_local_stability(&g, &h, &ns, config)?
    } else {
        verify_stability(&g, &h, &ns, config)?
    };
    if cli.json {
        cli.emit(&serde_json::to_string_pretty(&report.to_json())?)?;
    } else {
        cli.emit(&render_report(&report))?;
    }
    if report.all_passed() {
        Ok(())
    } else {
        Err(VerificationFailed.into())
    }
}

fn render_report(report: &StabilityReport) -> String {
    let mut out = format!("{} * {} = {}\n", report.g.key(), report.h.key(), report.constants);
    for c in &report.checks {
        let verdict = if c.pass { "ok" } else { "FAIL" };
        out.push_str(&format!("N={}\t{verdict}\t{} terms\n", c.n, c.lhs_terms));
    }
    out
}

fn parse_surface(cli: &Cli, text: &str) -> anyhow::Result<CheckerSurface> {
    if text.trim_start().starts_with('{') {
        return Ok(CheckerSurface::from_json(text)?);
    }
    if Path::new(text).is_file() {
        return Ok(CheckerSurface::from_json(&fs::read_to_string(text)?)?);
    }
    let family = FamilyDescriptor::parse(cli.family.as_deref().unwrap_or("s2"))?;
    if family != FamilyDescriptor::product(2)? {
        return Err(Error::WrongFamily(family.to_string()).into());
    }
    let mut g = GroupElement::parse(&family, text)?;
    // a surface has at least one triangle pair
    if g.ambient() == 0 && !text.contains('@') {
        g = g.embed(1)?;
    }
    Ok(CheckerSurface::from_element(&g)?)
}

fn surface(cli: &Cli, command: &SurfaceCommand) -> anyhow::Result<()> {
    match command {
        SurfaceCommand::Analyze { surface } => {
            let s = parse_surface(cli, surface)?;
            let t = s.topology();
            if cli.json {
                return cli.emit(&to_json(&t)?);
            }
            let mut out = format!(
                "N={} components={} V={} E={} F={} chi={}\n",
                s.size(),
                t.components.len(),
                t.vertices,
                t.edges,
                t.faces,
                t.euler
            );
            for (i, c) in t.components.iter().enumerate() {
                out.push_str(&format!(
                    "component {}: V={} E={} F={} chi={} genus={}\n",
                    i + 1,
                    c.vertices,
                    c.edges,
                    c.faces,
                    c.euler,
                    c.genus
                ));
            }
            cli.emit(&out)
        }
        SurfaceCommand::Export { surface, format } => {
            let format: ExportFormat = format.parse()?;
            let s = parse_surface(cli, surface)?;
            cli.emit(&s.export(format))
        }
    }
}

fn diagnose(cli: &Cli, command: &DiagnoseCommand, config: &Config) -> anyhow::Result<()> {
    match command {
        DiagnoseCommand::Remark1 { class, shift, range } => {
            let c = parse_class(&cli.family()?, class, config)?;
            let rows = ambient_shift_scalars(&c, *shift, &parse_range(range)?, config)?;
            if cli.json {
                return cli.emit(&to_json(&rows)?);
            }
            let mut out = String::from("shift\tN\tproportional\tmeasured\tfalling_factorial\n");
            for r in &rows {
                out.push_str(&format!(
                    "{}\t{}\t{}\t{}\t{}\n",
                    r.shift, r.big_n, r.proportional, r.measured, r.falling_factorial
                ));
            }
            cli.emit(&out)
        }
        DiagnoseCommand::Remark2 { n } => {
            let rep = span_index(&cli.family()?, *n, config)?;
            if cli.json {
                return cli.emit(&to_json(&rep)?);
            }
            let index = rep.index.clone().unwrap_or_else(|| "infinite (rank deficient)".into());
            cli.emit(&format!(
                "N={} classes={} generators={} rank={} index={index}",
                rep.big_n, rep.classes, rep.generators, rep.rank
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("0..3").unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(parse_range("2,5").unwrap(), vec![2, 5]);
        assert_eq!(parse_range("4").unwrap(), vec![4]);
        assert!(parse_range("3..1").is_err());
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&VerificationFailed.into()), 1);
        assert_eq!(exit_code(&Error::Parse("x".into()).into()), 2);
        assert_eq!(exit_code(&Error::ResourceGuard("x".into()).into()), 3);
        assert_eq!(exit_code(&Error::CapExceeded { ambient: 11, cap: 10 }.into()), 3);
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
