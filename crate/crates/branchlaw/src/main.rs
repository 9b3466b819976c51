use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use branchlaw::branching::{compute_series, molien_series, poincare_series};
use branchlaw::doc::{
    molien_section, parse_assignments, render_json, render_text, series_section,
    specialization_section, table_section, tensor_section, verify_section, RunDocument,
};
use branchlaw::error::{Error, Result};
use branchlaw::pipeline::{prepare, GroupSource, Prepared};
use branchlaw::verify::{run_checks, VerifyOptions};

/// Exact multiplicity series for finite subgroups of SL(4,C).
#[derive(Parser)]
#[command(name = "branchlaw", version, propagate_version = true)]
struct Cli {
    /// Size of the worker thread pool (default: one per CPU)
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SourceArgs {
    /// Built-in group name (trivial, cyclic4, typeII) or path to a generator file
    #[arg(long, conflicts_with = "table")]
    group: Option<String>,

    /// Path to a saved character table
    #[arg(long)]
    table: Option<PathBuf>,
}

impl SourceArgs {
    fn resolve(&self) -> Result<GroupSource> {
        match (&self.group, &self.table) {
            (Some(g), None) => Ok(GroupSource::from_group_flag(g)),
            (None, Some(t)) => Ok(GroupSource::TableFile(t.clone())),
            _ => Err(Error::Parse(
                "exactly one of --group and --table is required".into(),
            )),
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    #[value(name = "json-like")]
    JsonLike,
}

#[derive(Args)]
struct OutputArgs {
    /// Report format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the report to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

impl OutputArgs {
    fn emit(&self, document: &RunDocument) -> Result<()> {
        let rendered = match self.format {
            Format::Text => render_text(document),
            Format::JsonLike => render_json(document)?,
        };
        match &self.out {
            Some(path) => std::fs::write(path, rendered)?,
            None => print!("{rendered}"),
        }
        Ok(())
    }
}

#[derive(Args)]
struct CheckArgs {
    /// Verify invariants on all series coefficients up to this total degree
    #[arg(long, default_value_t = 5)]
    check_degree: u32,

    /// Skip the two independent multiplicity cross-checks
    #[arg(long)]
    no_oracles: bool,

    /// Skip the operator identity check on the truncated series
    #[arg(long)]
    no_key_relation: bool,
}

impl CheckArgs {
    fn options(&self) -> VerifyOptions {
        VerifyOptions {
            degree: self.check_degree,
            oracles: !self.no_oracles,
            key_relation: !self.no_key_relation,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print group facts: order, classes, sizes, element orders, exponent
    Info {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compute the multiplicity series as exact rational functions
    Series {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[command(flatten)]
        checks: CheckArgs,
        /// Also print the coordinates with variables fixed, e.g. u=0,w=0
        #[arg(long)]
        specialize: Option<String>,
    },
    /// Compute the invariant-counting series by averaging over the classes
    Molien {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the full check suite and report every result
    Verify {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[command(flatten)]
        checks: CheckArgs,
    },
}

fn cmd_info(p: &Prepared, output: &OutputArgs) -> Result<()> {
    let mut document = RunDocument::new("info", p);
    document.character_table = Some(table_section(&p.table));
    output.emit(&document)
}

fn cmd_series(
    p: &Prepared,
    output: &OutputArgs,
    checks: &CheckArgs,
    specialize: &Option<String>,
) -> Result<()> {
    let (report, series) = run_checks(p, &checks.options());
    let series = match series {
        Some(s) => s,
        // reconstruct the typed error so the exit code names the failure
        None => return compute_series(&p.table, &p.matrices).map(|_| ()),
    };

    let mut document = RunDocument::new("series", p);
    document.character_table = Some(table_section(&p.table));
    document.tensor = Some(tensor_section(&p.matrices, &p.table.degrees));
    document.series = Some(series_section(&series));
    if let Some(text) = specialize {
        let assignments = parse_assignments(text)?;
        document.specializations = vec![specialization_section(&series, &assignments)?];
    }
    document.verification = Some(verify_section(&report));
    output.emit(&document)?;

    if report.all_passed() {
        Ok(())
    } else {
        let names: Vec<_> = report.failures().map(|c| c.name).collect();
        Err(Error::Verify(format!("failed checks: {}", names.join(", "))))
    }
}

fn cmd_molien(p: &Prepared, output: &OutputArgs) -> Result<()> {
    let mol = molien_series(&p.table)?;
    let series = compute_series(&p.table, &p.matrices)?;
    let agrees = mol.equal(&poincare_series(&series)?);

    let mut document = RunDocument::new("molien", p);
    document.molien = Some(molien_section(&mol, Some(agrees)));
    output.emit(&document)?;

    if agrees {
        Ok(())
    } else {
        Err(Error::Verify(
            "invariant-counting series disagrees with the series specialization".into(),
        ))
    }
}

fn cmd_verify(p: &Prepared, output: &OutputArgs, checks: &CheckArgs) -> Result<()> {
    let (report, _) = run_checks(p, &checks.options());
    let mut document = RunDocument::new("verify", p);
    document.verification = Some(verify_section(&report));
    output.emit(&document)?;

    if report.all_passed() {
        Ok(())
    } else {
        let names: Vec<_> = report.failures().map(|c| c.name).collect();
        Err(Error::Verify(format!("failed checks: {}", names.join(", "))))
    }
}

fn run(cli: &Cli) -> Result<()> {
    if let Some(k) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
            .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    }
    match &cli.command {
        Command::Info { source, output } => cmd_info(&prepare(&source.resolve()?)?, output),
        Command::Series {
            source,
            output,
            checks,
            specialize,
        } => cmd_series(&prepare(&source.resolve()?)?, output, checks, specialize),
        Command::Molien { source, output } => cmd_molien(&prepare(&source.resolve()?)?, output),
        Command::Verify {
            source,
            output,
            checks,
        } => cmd_verify(&prepare(&source.resolve()?)?, output, checks),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
