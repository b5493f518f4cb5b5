//! The `liking` command-line tool.
//!
//! Exit codes are uniform across subcommands: 0 when the property holds,
//! 1 when it fails, 2 on bad input. Human output labels vertices from 1.

pub mod report;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use liking_core::analysis::{liking_profile, validate_all, AnalysisError, Precondition};
use liking_core::canon::canonical_form;
use liking_core::design::{
    check_hughes_bound, design_counts, extract_design, verify_design, write_design, DesignError,
};
use liking_core::io::{read_digraph, read_matrix, write_digraph, ParseError};
use liking_core::search::{enumerate_range, write_catalog, PruneRules, SearchError, SearchOptions};
use liking_core::{check_liking, Digraph, DigraphError};

use crate::report::{verify_paper, VerifyOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Holds = 0,
    Fails = 1,
    Input = 2,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}: {source}", .path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: {source}", .path.display())]
    Parse { path: PathBuf, source: ParseError },
    #[error("{}: {source}", .path.display())]
    Digraph { path: PathBuf, source: DigraphError },
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Design(#[from] DesignError),
    #[error("writing output: {0}")]
    Output(#[from] std::io::Error),
    #[error("encoding report: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Parser)]
#[command(
    name = "liking",
    version,
    about = "Toolkit for (t,lambda)-liking digraphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Params {
    /// Subset size t.
    #[arg(short = 't', long)]
    pub t: usize,
    /// Required number of common out-neighbors.
    #[arg(short = 'l', long = "lambda")]
    pub lambda: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check whether a digraph is (t,lambda)-liking.
    Check {
        path: PathBuf,
        #[command(flatten)]
        params: Params,
        /// Print the histogram of common out-neighborhood sizes.
        #[arg(long)]
        profile: bool,
        /// Run every structural validator on a liking digraph.
        #[arg(long)]
        validate: bool,
    },
    /// Enumerate isomorphism classes of liking digraphs and write catalogs.
    Search {
        #[command(flatten)]
        params: Params,
        /// Order `N` or inclusive range `A..B`.
        #[arg(short = 'n', long = "order", value_parser = parse_order_range)]
        order: (usize, usize),
        /// Directory for the catalog files.
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Node budget per order.
        #[arg(long)]
        budget: Option<u64>,
        /// Exit 1 if any order hits the budget.
        #[arg(long)]
        strict: bool,
        /// List the classes that are not diregular.
        #[arg(long)]
        find_nondiregular: bool,
        /// Disable symmetry breaking (non-increasing out-degree rows).
        #[arg(long)]
        no_symmetry_breaking: bool,
    },
    /// Build the symmetric design of a diregular liking digraph.
    ExtractDesign {
        path: PathBuf,
        #[command(flatten)]
        params: Params,
        /// Design file to write [default: input path with extension `.design`].
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Run the fixed claim list and print a report.
    VerifyPaper {
        /// Skip the exhaustive searches (and the claims that need them).
        #[arg(long)]
        skip_search: bool,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, hide = true)]
        corrupt_fixture: bool,
    },
    /// Double every edge of an undirected graph into a 2-cycle.
    Convert {
        path: PathBuf,
        /// Output file [default: stdout].
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Test two digraphs for isomorphism.
    Iso { a: PathBuf, b: PathBuf },
}

fn parse_order_range(s: &str) -> Result<(usize, usize), String> {
    let num = |x: &str| {
        x.trim()
            .parse::<usize>()
            .map_err(|_| format!("expected an order or A..B, got {s:?}"))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let n = num(s)?;
            (n, n)
        }
    };
    if lo == 0 || lo > hi {
        return Err(format!("order range {s:?} must satisfy 1 <= A <= B"));
    }
    Ok((lo, hi))
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_digraph(path: &Path) -> Result<Digraph, CliError> {
    read_digraph(&read_text(path)?).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn cmd_check(
    path: &Path,
    t: usize,
    lambda: usize,
    profile: bool,
    validate: bool,
    out: &mut dyn Write,
) -> Result<Exit, CliError> {
    let d = load_digraph(path)?;
    let report = check_liking(&d, t, lambda)?;
    writeln!(
        out,
        "{}: n={}, arcs={}, ({t},{lambda})-liking: {}",
        path.display(),
        d.order(),
        d.arc_count(),
        yes_no(report.holds)
    )?;
    if let Some(w) = report.witness {
        writeln!(
            out,
            "witness: S = {} has {} common out-neighbors, expected {lambda}",
            w.subset.one_indexed(),
            w.common_out
        )?;
    }
    if profile {
        let p = liking_profile(&d, t)?;
        writeln!(out, "profile over {} {t}-subsets:", p.subsets())?;
        for (size, count) in &p.histogram {
            writeln!(out, "  |CN+(S)| = {size}: {count}")?;
        }
    }
    let mut exit = if report.holds {
        Exit::Holds
    } else {
        Exit::Fails
    };
    if validate {
        if report.holds {
            let suite = validate_all(&d, t, lambda, Precondition::Assume)?;
            let od = &suite.order_degree;
            writeln!(
                out,
                "order/min-degree: {} (n={}, min out-degree {})",
                pass(od.holds),
                od.n,
                od.min_out_degree
            )?;
            writeln!(
                out,
                "counting identity: {} ({} = {})",
                pass(suite.counting.holds),
                suite.counting.lhs,
                suite.counting.rhs
            )?;
            writeln!(
                out,
                "degree-binomial inequality: {}",
                pass(suite.binomial.holds)
            )?;
            writeln!(
                out,
                "tool inequality: {} ({} vertices checked)",
                pass(suite.tool.holds),
                suite.tool.checked_vertices
            )?;
            match &suite.balance {
                Some(b) => writeln!(out, "degree balance: {}", pass(b.holds))?,
                None => writeln!(out, "degree balance: not applicable")?,
            }
            writeln!(out, "subset expansion: {}", pass(suite.expansion.holds))?;
            if !suite.all_pass() {
                exit = Exit::Fails;
            }
        } else {
            writeln!(out, "validators skipped: the digraph is not liking")?;
        }
    }
    Ok(exit)
}

fn pass(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

pub struct SearchArgs {
    pub t: usize,
    pub lambda: usize,
    pub order: (usize, usize),
    pub out_dir: PathBuf,
    pub options: SearchOptions,
    pub strict: bool,
    pub find_nondiregular: bool,
}

/// Catalog file name for one order.
pub fn catalog_file_name(t: usize, lambda: usize, n: usize) -> String {
    format!("liking-t{t}-l{lambda}-n{n}.cat")
}

pub fn cmd_search(args: &SearchArgs, out: &mut dyn Write) -> Result<Exit, CliError> {
    let (t, lambda) = (args.t, args.lambda);
    let report = enumerate_range(t, lambda, args.order.0, args.order.1, args.options)?;
    fs::create_dir_all(&args.out_dir).map_err(|source| CliError::Io {
        path: args.out_dir.clone(),
        source,
    })?;
    for c in &report.catalogs {
        let n = c.config.n;
        let path = args.out_dir.join(catalog_file_name(t, lambda, n));
        write_file(&path, &write_catalog(c))?;
        writeln!(
            out,
            "n={n}: {} classes, {} nodes{} -> {}",
            c.len(),
            c.stats.expanded,
            if c.complete {
                ""
            } else {
                " (budget exhausted, partial)"
            },
            path.display()
        )?;
        if args.find_nondiregular {
            let irregular: Vec<_> = c
                .representatives
                .iter()
                .filter(|r| r.digraph.diregular_degree().is_none())
                .collect();
            writeln!(out, "  non-diregular classes: {}", irregular.len())?;
            for r in irregular {
                let (outs, _) = r.digraph.degree_sequences();
                writeln!(out, "    {} out-degrees {outs:?}", r.key)?;
            }
        }
    }
    match report.theorem1_consistent() {
        Some(true) => writeln!(out, "consistent with Theorem 1")?,
        Some(false) => writeln!(out, "INCONSISTENT with Theorem 1")?,
        None if t >= lambda + 2 => writeln!(
            out,
            "Theorem 1 check inconclusive: some order hit the budget"
        )?,
        None => {}
    }
    if report.theorem1_consistent() == Some(false) || (args.strict && !report.complete()) {
        return Ok(Exit::Fails);
    }
    Ok(Exit::Holds)
}

pub fn cmd_extract_design(
    path: &Path,
    t: usize,
    lambda: usize,
    out_path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<Exit, CliError> {
    let d = load_digraph(path)?;
    let design = match extract_design(&d, t, lambda) {
        Ok(design) => design,
        Err(e @ (DesignError::NotDiregular { .. } | DesignError::NotALikingDigraph { .. })) => {
            writeln!(out, "{}: {e}", path.display())?;
            return Ok(Exit::Fails);
        }
        Err(e) => return Err(e.into()),
    };
    let verdict = verify_design(&design)?;
    let counts = design_counts(&design)?;
    writeln!(
        out,
        "{}-({},{},{}) design: v={} k={} lambda={} b={} r={} symmetric={}",
        design.t,
        design.v,
        design.k,
        design.lambda,
        design.v,
        design.k,
        design.lambda,
        counts.b,
        counts.r,
        yes_no(counts.is_symmetric)
    )?;
    if t >= 3 {
        let h = check_hughes_bound(&design)?;
        writeln!(
            out,
            "Hughes bound k >= v-1: {}{}",
            if h.holds { "holds" } else { "VIOLATED" },
            if h.tight { " (tight)" } else { "" }
        )?;
    }
    if !verdict.holds || !counts.consistent {
        writeln!(out, "design verification failed: {:?}", verdict.violation)?;
        return Ok(Exit::Fails);
    }
    let target = out_path
        .map(Path::to_path_buf)
        .unwrap_or_else(|| path.with_extension("design"));
    write_file(&target, &write_design(&design))?;
    writeln!(out, "wrote {}", target.display())?;
    Ok(Exit::Holds)
}

pub fn cmd_verify_paper(
    opts: VerifyOptions,
    json: bool,
    out: &mut dyn Write,
) -> Result<Exit, CliError> {
    let report = verify_paper(opts);
    if json {
        serde_json::to_writer_pretty(&mut *out, &report)?;
        writeln!(out)?;
    } else {
        out.write_all(report.render_text().as_bytes())?;
    }
    Ok(if report.passed() {
        Exit::Holds
    } else {
        Exit::Fails
    })
}

pub fn cmd_convert(
    path: &Path,
    out_path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<Exit, CliError> {
    let rows = read_matrix(&read_text(path)?).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })?;
    let d = Digraph::double_graph(&rows).map_err(|source| CliError::Digraph {
        path: path.to_path_buf(),
        source,
    })?;
    let text = write_digraph(&d);
    match out_path {
        Some(p) => {
            write_file(p, &text)?;
            writeln!(
                out,
                "wrote {} (n={}, arcs={})",
                p.display(),
                d.order(),
                d.arc_count()
            )?;
        }
        None => out.write_all(text.as_bytes())?,
    }
    Ok(Exit::Holds)
}

pub fn cmd_iso(a: &Path, b: &Path, out: &mut dyn Write) -> Result<Exit, CliError> {
    let (da, db) = (load_digraph(a)?, load_digraph(b)?);
    let key = |d: &Digraph, p: &Path| {
        canonical_form(d).map_err(|source| CliError::Digraph {
            path: p.to_path_buf(),
            source,
        })
    };
    let (ka, kb) = (key(&da, a)?, key(&db, b)?);
    let iso = ka == kb;
    writeln!(out, "{}: {ka}", a.display())?;
    writeln!(out, "{}: {kb}", b.display())?;
    writeln!(out, "isomorphic: {}", yes_no(iso))?;
    Ok(if iso { Exit::Holds } else { Exit::Fails })
}

pub fn execute(command: Command, out: &mut dyn Write) -> Result<Exit, CliError> {
    match command {
        Command::Check {
            path,
            params,
            profile,
            validate,
        } => cmd_check(&path, params.t, params.lambda, profile, validate, out),
        Command::Search {
            params,
            order,
            out: out_dir,
            workers,
            budget,
            strict,
            find_nondiregular,
            no_symmetry_breaking,
        } => {
            let options = SearchOptions {
                max_nodes: budget,
                workers,
                symmetry_breaking: !no_symmetry_breaking,
                prune: PruneRules::ALL,
            };
            cmd_search(
                &SearchArgs {
                    t: params.t,
                    lambda: params.lambda,
                    order,
                    out_dir,
                    options,
                    strict,
                    find_nondiregular,
                },
                out,
            )
        }
        Command::ExtractDesign {
            path,
            params,
            out: o,
        } => cmd_extract_design(&path, params.t, params.lambda, o.as_deref(), out),
        Command::VerifyPaper {
            skip_search,
            json,
            workers,
            corrupt_fixture,
        } => cmd_verify_paper(
            VerifyOptions {
                skip_search,
                corrupt_fixture,
                workers,
            },
            json,
            out,
        ),
        Command::Convert { path, out: o } => cmd_convert(&path, o.as_deref(), out),
        Command::Iso { a, b } => cmd_iso(&a, &b, out),
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code. Diagnostics go to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() {
                Exit::Input as i32
            } else {
                0
            };
        }
    };
    match execute(cli.command, out) {
        Ok(exit) => exit as i32,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            Exit::Input as i32
        }
    }
}
