//! Command-line front end.
//!
//! Exit status: 0 on success, 2 for unreadable or invalid input, 3 when a
//! resource cap is exceeded, 4 when `verify` finds a counterexample.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::bitset::ElementSet;
use crate::decomposition::{csd_search, SearchOptions, StarDecomposition};
use crate::depth::{depth, DepthKind};
use crate::error::{Error, Result};
use crate::matroid::{Matroid, MatroidFile, MatroidRef, DEFAULT_SUBSET_CAP};
use crate::tamed::{distribute_by_marking, extension_to_text, Mutation, TamedExtension};
use crate::verify::{run_suite, summary_table, write_witness, Check, Corpus, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_COUNTEREXAMPLE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "matroid-depth", version, about = "Exact matroid depth parameters and tamed-set extensions")]
pub struct Invocation {
    #[command(flatten)]
    pub caps: Caps,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct Caps {
    /// Largest ground set for subset enumeration and depth recursions.
    #[arg(long, global = true, default_value_t = DEFAULT_SUBSET_CAP)]
    pub subset_cap: usize,
    /// Largest rank for the decomposition search.
    #[arg(long, global = true, default_value_t = 6)]
    pub rank_cap: usize,
    /// Largest ground set for the decomposition search.
    #[arg(long, global = true, default_value_t = 10)]
    pub size_cap: usize,
}

impl Caps {
    fn search(&self, depth_cap: Option<usize>) -> SearchOptions {
        SearchOptions {
            depth_cap,
            rank_cap: self.rank_cap,
            size_cap: self.size_cap,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rank of a set of elements.
    Rank {
        file: PathBuf,
        /// Comma-separated element ids.
        #[arg(long, default_value = "")]
        set: String,
    },
    /// One of the recursive depth parameters.
    Depth {
        file: PathBuf,
        #[arg(long, default_value = "cd", value_parser = ["cd", "dd", "cd-alt", "dd-alt"])]
        kind: String,
    },
    /// Contraction*-depth with search statistics.
    Csd {
        file: PathBuf,
        /// Only look for decompositions up to this depth.
        #[arg(long)]
        depth_cap: Option<usize>,
    },
    /// An optimal contraction*-decomposition as DOT.
    Decompose {
        file: PathBuf,
        /// Write the DOT here instead of standard output.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// The extension matroid in explicit form, with its edge map.
    Extend {
        file: PathBuf,
        /// Decomposition to extend along; an optimal one by default.
        #[arg(long)]
        decomposition: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Token ledger and verdict for a subset of the extension ground set.
    Tamed {
        file: PathBuf,
        /// Elements and edges: ids, `e<v>` for the edge above vertex v, or `E(T)`.
        #[arg(long, default_value = "")]
        set: String,
        #[arg(long)]
        decomposition: Option<PathBuf>,
        /// Also print the steps of the marking procedure.
        #[arg(long)]
        trace: bool,
    },
    /// Runs the checks over the corpus.
    Verify {
        /// `all` or a comma-separated list of checks.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Corrupt the construction to confirm the checks can fail.
        #[arg(long, default_value = "none")]
        mutate: Mutation,
        /// Where counterexample witnesses are written.
        #[arg(long)]
        witness_dir: Option<PathBuf>,
        /// Random subsets per extension.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Largest extension checked exhaustively against the axioms.
        #[arg(long, default_value_t = 12)]
        extension_cap: usize,
        /// Print only failing reports and the summary.
        #[arg(long)]
        quiet: bool,
    },
}

/// Parses `argv` and runs it, writing results to `out` and diagnostics to
/// `err`. Returns the exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let invocation = match Invocation::try_parse_from(argv) {
        Ok(i) => i,
        Err(e) => {
            let shown = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{shown}");
                EXIT_INPUT
            } else {
                let _ = write!(out, "{shown}");
                EXIT_OK
            };
        }
    };
    match execute(&invocation, out) {
        Ok(status) => status,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_resource() {
                EXIT_RESOURCE
            } else {
                EXIT_INPUT
            }
        }
    }
}

fn load(path: &Path) -> Result<MatroidRef> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    MatroidFile::parse(&text)?.build()
}

fn parse_ids(text: &str, n: usize) -> Result<ElementSet> {
    let mut set = ElementSet::empty();
    for token in text.split([',', ' ']).filter(|t| !t.is_empty()) {
        let e: usize = token
            .parse()
            .map_err(|_| Error::parse(0, format!("`{token}` is not an element id")))?;
        if e >= n {
            return Err(Error::ElementOutOfRange { index: e, size: n });
        }
        set.insert(e);
    }
    Ok(set)
}

/// Parses a `tamed --set` value against the extension's combined indices.
pub fn parse_extended_set(text: &str, ext: &TamedExtension) -> Result<ElementSet> {
    let mut set = ElementSet::empty();
    for token in text.split([',', ' ']).filter(|t| !t.is_empty()) {
        if token == "E(T)" {
            set |= ext.all_edges();
        } else if let Some(v) = token.strip_prefix('e') {
            let v: usize = v
                .parse()
                .map_err(|_| Error::parse(0, format!("`{token}` does not name an edge")))?;
            if v >= ext.tree().num_vertices() || v == ext.tree().root() {
                return Err(Error::parse(0, format!("vertex {v} has no edge above it")));
            }
            set.insert(ext.edge_element(v));
        } else {
            set |= parse_ids(token, ext.len())?;
        }
    }
    Ok(set)
}

fn decomposition_for(m: &dyn Matroid, path: Option<&Path>, caps: &Caps) -> Result<StarDecomposition> {
    match path {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
            StarDecomposition::from_dot(&text)
        }
        None => Ok(csd_search(m, &caps.search(None))?
            .ok_or_else(|| Error::invalid("no decomposition found"))?
            .decomposition),
    }
}

fn write_to(path: &Path, body: &str) -> Result<()> {
    std::fs::write(path, body).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn execute(inv: &Invocation, out: &mut dyn Write) -> Result<i32> {
    let caps = &inv.caps;
    match &inv.command {
        Command::Rank { file, set } => {
            let m = load(file)?;
            let x = parse_ids(set, m.len())?;
            writeln!(out, "{}", m.rank(x)?)?;
        }
        Command::Depth { file, kind } => {
            let m = load(file)?;
            let kind: DepthKind = kind.parse().map_err(|e: String| Error::parse(0, e))?;
            writeln!(out, "{}", depth(m.as_ref(), kind, caps.subset_cap)?.value)?;
        }
        Command::Csd { file, depth_cap } => {
            let m = load(file)?;
            match csd_search(m.as_ref(), &caps.search(*depth_cap))? {
                Some(r) => {
                    writeln!(out, "{}", r.depth)?;
                    writeln!(out, "trees examined {}", r.trees_examined)?;
                    writeln!(out, "assignments examined {}", r.assignments_examined)?;
                }
                None => writeln!(out, "none within depth {}", depth_cap.unwrap_or(0))?,
            }
        }
        Command::Decompose { file, dot } => {
            let m = load(file)?;
            let d = decomposition_for(m.as_ref(), None, caps)?;
            match dot {
                Some(path) => {
                    write_to(path, &d.to_dot())?;
                    writeln!(out, "depth {}", d.depth())?;
                }
                None => write!(out, "{}", d.to_dot())?,
            }
        }
        Command::Extend {
            file,
            decomposition,
            out: target,
        } => {
            let m = load(file)?;
            let d = decomposition_for(m.as_ref(), decomposition.as_deref(), caps)?;
            let ext = TamedExtension::new(m, d)?;
            let text = extension_to_text(&ext, caps.subset_cap)?;
            match target {
                Some(path) => {
                    write_to(path, &text)?;
                    writeln!(out, "{} elements, rank {}", ext.len(), ext.full_rank())?;
                }
                None => write!(out, "{text}")?,
            }
        }
        Command::Tamed {
            file,
            set,
            decomposition,
            trace,
        } => {
            let m = load(file)?;
            let d = decomposition_for(m.as_ref(), decomposition.as_deref(), caps)?;
            let ext = TamedExtension::new(m, d)?;
            let x = ext.split(parse_extended_set(set, &ext)?);
            let ledger = ext.ledger(&x);
            for v in ext.tree().preorder() {
                writeln!(out, "v{v} assigned {} kept {}", ledger.assigned[v], ledger.kept[v])?;
            }
            writeln!(out, "root surplus {}", ledger.root_surplus)?;
            if *trace {
                let (_, steps) = distribute_by_marking(ext.tree(), &ledger.assigned);
                for s in steps {
                    writeln!(out, "mark v{} holding {} sends {}", s.vertex, s.held, s.sent)?;
                }
            }
            let verdict = if ext.is_tamed(&x) { "tamed" } else { "not tamed" };
            writeln!(out, "verdict {verdict}")?;
        }
        Command::Verify {
            suite,
            seed,
            mutate,
            witness_dir,
            samples,
            extension_cap,
            quiet,
        } => {
            let checks = Check::parse_suite(suite).map_err(|e| Error::parse(0, e))?;
            let config = VerifyConfig {
                seed: *seed,
                mutation: *mutate,
                search: caps.search(None),
                subset_cap: caps.subset_cap,
                extension_cap: *extension_cap,
                samples: *samples,
            };
            let corpus = Corpus::generate(*seed);
            let reports = run_suite(&corpus, &checks, &config);
            for r in &reports {
                if !*quiet || r.failed() {
                    writeln!(out, "{}", r.line())?;
                }
                if let (Some(dir), true) = (witness_dir, r.failed()) {
                    for path in write_witness(dir, r)? {
                        writeln!(out, "  witness {}", path.display())?;
                    }
                }
            }
            write!(out, "{}", summary_table(&reports))?;
            let failing = reports.iter().filter(|r| r.failed()).count();
            if failing > 0 {
                writeln!(out, "result FAIL ({failing} failing reports)")?;
                return Ok(EXIT_COUNTEREXAMPLE);
            }
            writeln!(out, "result pass")?;
        }
    }
    Ok(EXIT_OK)
}
