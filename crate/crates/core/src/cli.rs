//! Command-line front end. [`run`] takes the argument vector and returns the
//! exit status together with everything written to stdout and stderr.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::cartan::AffineCartanData;
use crate::characters::{euler_character, local_cohomology_character, weyl_kac_character};
use crate::expr::{print_element, PrintMode};
use crate::groth::{GrothTable, CHECKS};
use crate::weights::Weight;
use crate::weyl::WeylElement;

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "AFFGROTH_CACHE";

pub const GRAMMAR: &str = "\
types:   A1~ .. An~, C2~ .., D4~ .., or a JSON matrix such as [[2,-2],[-2,2]]
words:   comma separated node labels, `1,0` meaning s_1 s_0; `e` is the identity
weights: integer combinations of L<i> and a<i>, e.g. `2L0 - L1 + a1`
expr:    term (('+'|'-') term)*, with atoms int[/int], q, e[weight], E[weight],
         (expr), {expr}, optional `^int` and implicit or explicit `*`";

#[derive(Parser, Debug)]
#[command(name = "affgroth", version, about = "Affine Grothendieck polynomials")]
struct Cli {
    /// Directory for cached tables (overrides AFFGROTH_CACHE).
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct TypeArg {
    /// Cartan type, e.g. A2~, or a JSON matrix.
    #[arg(long = "type")]
    ty: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the derived data of a Cartan matrix.
    Cartan {
        #[command(flatten)]
        ty: TypeArg,
    },
    /// Compute G_w.
    Groth {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long)]
        word: String,
        /// terms, orbit or json.
        #[arg(long, default_value = "orbit")]
        format: String,
        /// Run every check on the result.
        #[arg(long)]
        verify: bool,
    },
    /// Fill the table up to a length.
    Table {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long)]
        max_length: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Check every G_w up to a length.
    Verify {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long)]
        max_length: usize,
        #[arg(long, default_value = "window,demazure,localization,psi")]
        checks: String,
        /// Probe localization at every x up to this length (default: max length).
        #[arg(long)]
        probe_length: Option<usize>,
    },
    /// Truncated characters: Weyl-Kac by default.
    Char {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long, default_value = "e")]
        word: String,
        #[arg(long)]
        weight: String,
        #[arg(long)]
        cutoff: i64,
        /// Euler characteristic of the twisted structure sheaf of X_w.
        #[arg(long, conflicts_with = "local")]
        euler: bool,
        /// Local cohomology character at the cell of this element.
        #[arg(long)]
        local: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Restriction j_x(G_w) to a fixed point.
    Localize {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long)]
        word: String,
        #[arg(long)]
        at: String,
        #[arg(long, default_value = "orbit")]
        format: String,
    },
}

#[derive(Debug, Default)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(msg: impl std::fmt::Display) -> Self {
        Outcome { status: 2, stdout: String::new(), stderr: format!("error: {msg}\n\n{GRAMMAR}\n") }
    }

    fn failure(msg: impl std::fmt::Display) -> Self {
        Outcome { status: 1, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

struct Ctx {
    cache: Option<PathBuf>,
}

impl Ctx {
    fn table(&self, cartan: AffineCartanData) -> Result<GrothTable, Outcome> {
        match &self.cache {
            Some(dir) => GrothTable::load_or_new(cartan, dir).map_err(Outcome::failure),
            None => Ok(GrothTable::new(cartan)),
        }
    }

    fn save(&self, table: &GrothTable) -> Result<(), Outcome> {
        if let Some(dir) = &self.cache {
            std::fs::create_dir_all(dir).map_err(Outcome::failure)?;
            table.save(dir).map_err(Outcome::failure)?;
        }
        Ok(())
    }
}

fn cartan(ty: &TypeArg) -> Result<AffineCartanData, Outcome> {
    AffineCartanData::from_type_str(&ty.ty).map_err(Outcome::usage)
}

fn word(text: &str, c: &AffineCartanData) -> Result<WeylElement, Outcome> {
    WeylElement::parse(text, c).map_err(|e| Outcome::usage(format!("word `{text}`: {e}")))
}

fn mode(text: &str) -> Result<PrintMode, Outcome> {
    text.parse().map_err(Outcome::usage)
}

/// Runs the command line `args` (the first item is the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { status: 2, stdout: String::new(), stderr: format!("{text}\n{GRAMMAR}\n") }
            } else {
                Outcome { status: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let ctx = Ctx { cache: cli.cache.or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from)) };
    match dispatch(&ctx, cli.command) {
        Ok(o) | Err(o) => o,
    }
}

fn dispatch(ctx: &Ctx, command: Command) -> Result<Outcome, Outcome> {
    let mut out = Outcome::default();
    match command {
        Command::Cartan { ty } => {
            let c = cartan(&ty)?;
            writeln!(out.stdout, "{c}").unwrap();
        }
        Command::Groth { ty, word: w, format, verify } => {
            let c = cartan(&ty)?;
            let w = word(&w, &c)?;
            let mode = mode(&format)?;
            let mut table = ctx.table(c.clone())?;
            let g = table.compute(&w).map_err(Outcome::failure)?;
            out.stdout.push_str(&print_element(&c, &g, mode));
            if !out.stdout.ends_with('\n') {
                out.stdout.push('\n');
            }
            if verify {
                let report = table.verify_entry(&w, &CHECKS, w.length() + 1);
                writeln!(out.stdout, "{report}").unwrap();
                if !report.passed() {
                    out.status = 1;
                }
            }
            ctx.save(&table)?;
        }
        Command::Table { ty, max_length, jobs } => {
            let c = cartan(&ty)?;
            let mut table = ctx.table(c.clone())?;
            table.fill_up_to(max_length, jobs).map_err(Outcome::failure)?;
            for (k, layer) in WeylElement::layers(&c, max_length).iter().enumerate() {
                let terms: usize = layer.iter().map(|w| table.get(w).map_or(0, |g| g.len())).sum();
                writeln!(out.stdout, "length {k}: {} elements, {terms} terms", layer.len()).unwrap();
            }
            ctx.save(&table)?;
        }
        Command::Verify { ty, max_length, checks, probe_length } => {
            let c = cartan(&ty)?;
            let checks: Vec<&str> = checks.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
            if let Some(bad) = checks.iter().find(|s| !CHECKS.contains(s)) {
                return Err(Outcome::usage(format!("unknown check `{bad}` (known: {})", CHECKS.join(","))));
            }
            let probe = probe_length.unwrap_or(max_length);
            let mut table = ctx.table(c.clone())?;
            let mut failed = 0;
            for w in WeylElement::enumerate_up_to(&c, max_length) {
                let report = table.verify_entry(&w, &checks, probe);
                if !report.passed() {
                    failed += 1;
                }
                writeln!(out.stdout, "{report}").unwrap();
            }
            writeln!(out.stdout, "{failed} failing").unwrap();
            if failed > 0 {
                out.status = 1;
            }
            ctx.save(&table)?;
        }
        Command::Char { ty, word: w, weight, cutoff, euler, local, json } => {
            let c = cartan(&ty)?;
            let w = word(&w, &c)?;
            let mu = Weight::parse(&weight, &c).map_err(|e| Outcome::usage(format!("weight `{weight}`: {e}")))?;
            let mut table = ctx.table(c.clone())?;
            let (label, series) = if euler {
                ("euler characteristic", euler_character(&mut table, &w, &mu, cutoff))
            } else if let Some(x) = &local {
                let x = word(x, &c)?;
                ("local cohomology character", local_cohomology_character(&mut table, &w, &x, &mu, cutoff))
            } else {
                ("weyl-kac character", weyl_kac_character(&c, &mu, cutoff))
            };
            let series = series.map_err(Outcome::failure)?;
            if json {
                out.stdout.push_str(&series.to_json());
            } else {
                writeln!(out.stdout, "# {label}, depth <= {cutoff}").unwrap();
                out.stdout.push_str(&series.to_text(&c));
            }
            ctx.save(&table)?;
        }
        Command::Localize { ty, word: w, at, format } => {
            let c = cartan(&ty)?;
            let w = word(&w, &c)?;
            let x = word(&at, &c)?;
            let mode = mode(&format)?;
            let mut table = ctx.table(c.clone())?;
            let g = table.compute(&w).map_err(Outcome::failure)?;
            out.stdout.push_str(&print_element(&c, &g.j_map(&c, &x), mode));
            if !out.stdout.ends_with('\n') {
                out.stdout.push('\n');
            }
            ctx.save(&table)?;
        }
    }
    Ok(out)
}
