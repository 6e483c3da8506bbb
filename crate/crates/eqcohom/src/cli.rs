//! Command-line surface. Exit codes: 0 success, 1 usage error (bad flags,
//! unknown names, unreadable input), 2 verification or validation failure.

use std::fs;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::abelian::FgAbGroup;
use crate::borel::{borel_cohomology, h_theory};
use std::io::Write as _;
use crate::bredon::bredon_cohomology;
use crate::cache::{CacheKey, CachedGroup, ResultCache};
use crate::catalog;
use crate::coeff::parse_system;
use crate::error::EqError;
use crate::verify;
use crate::zcw::{Z2CwComplex, ZcwError};

/// Print a line to stdout, exiting quietly if the reader has gone away
/// (for example when piped into `head`).
macro_rules! out {
    ($($arg:tt)*) => {{
        let mut so = std::io::stdout();
        if writeln!(so, $($arg)*).is_err() {
            std::process::exit(0);
        }
    }};
}

#[derive(Parser)]
#[command(
    name = "eqcohom",
    version,
    about = "Equivariant cohomology of finite involutive cell complexes",
    long_about = "Computes orbit-cochain (Bredon) and homotopy-quotient (Borel) cohomology \
                  of finite cell complexes with involution, and counts the phases these \
                  groups classify."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Table,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Theory {
    /// Orbit cochains with a coefficient system
    Bredon,
    /// Homotopy quotient with twisted integral coefficients
    Borel,
    /// Homotopy quotient relative to the fixed subcomplex
    BorelRelative,
}

impl Theory {
    fn tag(self) -> &'static str {
        match self {
            Theory::Bredon => "bredon",
            Theory::Borel => "borel",
            Theory::BorelRelative => "borel-relative",
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// List the catalog spaces, or the coefficient systems with --systems
    List {
        /// List coefficient system names instead of spaces
        #[arg(long)]
        systems: bool,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
    },
    /// Compute cohomology groups of a catalog space
    Compute {
        /// Catalog space name (see `list`)
        #[arg(long)]
        space: String,
        #[arg(long, value_enum)]
        theory: Theory,
        /// Coefficient system for the orbit-cochain theory, e.g. 0~Ztilde
        #[arg(long)]
        coeff: Option<String>,
        /// Twist (0 or 1) for the homotopy-quotient theories
        #[arg(long)]
        twist: Option<u8>,
        /// Comma-separated list of degrees, e.g. 0,1,2
        #[arg(long, value_delimiter = ',', required = true)]
        deg: Vec<usize>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
        /// Do not read or write the result cache
        #[arg(long)]
        no_cache: bool,
    },
    /// Count the inequivalent phases classified over a catalog space
    Classify {
        space: String,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
    },
    /// Run a verification suite: paper-tables, theorem-3-3, exactness, all
    Verify {
        suite: String,
        /// Skip auditing the result cache
        #[arg(long)]
        no_cache: bool,
    },
    /// Validate a complex JSON file
    Validate { file: PathBuf },
    /// Export a catalog space as complex JSON
    Export {
        #[arg(long)]
        space: String,
        /// Output file; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Parse the process arguments and run; returns the exit code.
pub fn run() -> i32 {
    run_from(std::env::args_os())
}

/// Same as [`run`] with explicit arguments, for tests.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn dispatch(cmd: Command) -> Result<i32, EqError> {
    match cmd {
        Command::List { systems, format } => list(systems, format),
        Command::Compute {
            space,
            theory,
            coeff,
            twist,
            deg,
            format,
            no_cache,
        } => compute(&space, theory, coeff, twist, deg, format, no_cache),
        Command::Classify { space, format } => classify(&space, format),
        Command::Verify { suite, no_cache } => run_verify(&suite, no_cache),
        Command::Validate { file } => validate(&file),
        Command::Export { space, out } => export(&space, out),
    }
}

// --------------------------------------------------------------------------

const SYSTEM_LISTING: [(&str, &str); 5] = [
    ("0~Z", "zero at the fixed orbit, Z with trivial involution on the free orbit"),
    ("0~Ztilde", "zero at the fixed orbit, Z with sign involution on the free orbit"),
    ("constA-<rank>", "constant Z^rank, identity everywhere"),
    ("constZ", "constant Z; orbit cochains reduce to the quotient space"),
    ("fixedZ-<rank>", "Z^rank at the fixed orbit, zero on the free orbit"),
];

fn list(systems: bool, format: OutputFormat) -> Result<i32, EqError> {
    if systems {
        match format {
            OutputFormat::Table => {
                for (name, desc) in SYSTEM_LISTING {
                    out!("{name:<16} {desc}");
                }
            }
            OutputFormat::Json => {
                let arr: Vec<_> = SYSTEM_LISTING
                    .iter()
                    .map(|(name, desc)| json!({"name": name, "description": desc}))
                    .collect();
                out!("{}", serde_json::to_string_pretty(&json!(arr)).unwrap());
            }
        }
        return Ok(0);
    }
    let mut names = catalog::catalog_names();
    names.sort_unstable();
    let mut rows = Vec::new();
    for name in names {
        let x = catalog::build(name)?;
        let dims: Vec<usize> = (0..x.graded_len()).map(|n| x.cell_count(n)).collect();
        let fixed: usize = (0..x.graded_len())
            .map(|n| (0..x.cell_count(n)).filter(|&i| x.is_fixed(n, i)).count())
            .sum();
        rows.push((name, x.graded_len().saturating_sub(1), dims, fixed));
    }
    match format {
        OutputFormat::Table => {
            for (name, dim, dims, fixed) in rows {
                out!("{name:<20} dim {dim}  cells {dims:?}  fixed {fixed}");
            }
        }
        OutputFormat::Json => {
            let arr: Vec<_> = rows
                .iter()
                .map(|(name, dim, dims, fixed)| {
                    json!({"name": name, "dimension": dim, "cells": dims, "fixed_cells": fixed})
                })
                .collect();
            out!("{}", serde_json::to_string_pretty(&json!(arr)).unwrap());
        }
    }
    Ok(0)
}

// --------------------------------------------------------------------------

fn render_parts(free_rank: usize, torsion: &[String]) -> String {
    if free_rank == 0 && torsion.is_empty() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    match free_rank {
        0 => {}
        1 => parts.push("Z".to_string()),
        r => parts.push(format!("Z^{r}")),
    }
    for d in torsion {
        parts.push(format!("Z/{d}"));
    }
    parts.join(" + ")
}

fn record_of(g: &FgAbGroup) -> CachedGroup {
    CachedGroup::from_group(g)
}

fn compute(
    space: &str,
    theory: Theory,
    coeff: Option<String>,
    twist: Option<u8>,
    deg: Vec<usize>,
    format: OutputFormat,
    no_cache: bool,
) -> Result<i32, EqError> {
    let x = catalog::build(space)?;
    let cache = if no_cache {
        None
    } else {
        Some(ResultCache::from_env())
    };

    enum Resolved {
        Bredon(crate::coeff::CoefficientSystem),
        Borel { twist: u8, rel: Option<Z2CwComplex> },
    }
    let resolved = match theory {
        Theory::Bredon => {
            if twist.is_some() {
                return Err(EqError::Message(
                    "--twist applies to the homotopy-quotient theories; \
                     the orbit-cochain theory takes --coeff"
                        .to_string(),
                ));
            }
            let name = coeff.ok_or_else(|| {
                EqError::Message(
                    "--coeff is required for the orbit-cochain theory (try 0~Ztilde)".to_string(),
                )
            })?;
            Resolved::Bredon(parse_system(&name)?)
        }
        Theory::Borel | Theory::BorelRelative => {
            if coeff.is_some() {
                return Err(EqError::Message(
                    "--coeff applies to the orbit-cochain theory; \
                     the homotopy-quotient theories take --twist"
                        .to_string(),
                ));
            }
            let twist = twist.unwrap_or(0);
            if twist > 1 {
                return Err(EqError::Message("twist must be 0 or 1".to_string()));
            }
            let rel = match theory {
                Theory::BorelRelative => Some(x.fixed_subcomplex()?.0),
                _ => None,
            };
            Resolved::Borel { twist, rel }
        }
    };

    let mut degrees = deg;
    degrees.sort_unstable();
    degrees.dedup();

    let mut results = Vec::new();
    for &n in &degrees {
        let (key, coeff_tag) = match &resolved {
            Resolved::Bredon(sys) => (
                CacheKey::new(&x, "bredon", sys.name(), n, 0)?,
                sys.name().to_string(),
            ),
            Resolved::Borel { twist, .. } => (
                CacheKey::new(&x, theory.tag(), &format!("twist{twist}"), n, n + 2)?,
                format!("twist{twist}"),
            ),
        };
        let record = match cache.as_ref().and_then(|c| c.lookup(&key)) {
            Some(rec) => rec,
            None => {
                let g = match &resolved {
                    Resolved::Bredon(sys) => bredon_cohomology(&x, sys, n)?,
                    Resolved::Borel { twist, rel } => {
                        borel_cohomology(&x, *twist, n, rel.as_ref())?
                    }
                };
                if let Some(c) = &cache {
                    // The cache is a convenience; failing to write it is not
                    // a computation failure.
                    if let Err(e) = c.store(&key, &g) {
                        eprintln!("warning: could not write cache entry: {e}");
                    }
                }
                record_of(&g)
            }
        };
        results.push((n, coeff_tag, record));
    }

    match format {
        OutputFormat::Table => {
            out!("space: {space}");
            out!("theory: {}", theory.tag());
            match &resolved {
                Resolved::Bredon(sys) => out!("coefficients: {}", sys.name()),
                Resolved::Borel { twist, .. } => out!("twist: {twist}"),
            }
            for (n, _, rec) in &results {
                out!("H^{n} = {}", render_parts(rec.free_rank, &rec.torsion));
            }
        }
        OutputFormat::Json => {
            let rows: Vec<_> = results
                .iter()
                .map(|(n, _, rec)| {
                    json!({
                        "degree": n,
                        "free_rank": rec.free_rank,
                        "torsion": rec.torsion,
                        "rendered": render_parts(rec.free_rank, &rec.torsion),
                    })
                })
                .collect();
            let mut doc = json!({
                "schema_version": 1,
                "space": space,
                "theory": theory.tag(),
                "results": rows,
            });
            match &resolved {
                Resolved::Bredon(sys) => {
                    doc["coefficients"] = json!(sys.name());
                }
                Resolved::Borel { twist, .. } => {
                    doc["twist"] = json!(twist);
                }
            }
            out!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
    }
    Ok(0)
}

// --------------------------------------------------------------------------

fn classify(space: &str, format: OutputFormat) -> Result<i32, EqError> {
    let x = catalog::build(space)?;
    let dim = x.graded_len().saturating_sub(1);
    if dim > 4 {
        return Err(EqError::Message(format!(
            "classification refused: the correspondence between phases and group elements \
             is established only through dimension 4 (and is one-to-one only through 3); \
             {space} has dimension {dim}"
        )));
    }
    let group = h_theory(&x, None, 1, 2)?;
    let (fix, _) = x.fixed_subcomplex()?;
    let free_action = fix.graded_len() == 0;

    let mut notes = Vec::new();
    if dim <= 3 {
        notes.push(
            "complete: inequivalent phases correspond one-to-one to group elements".to_string(),
        );
    } else {
        notes.push(
            "dimension 4: every group element is realized by a phase, but the \
             correspondence is not established to be one-to-one"
                .to_string(),
        );
    }
    notes.push("counts rank-2k families; the count is the same for every k >= 1".to_string());
    if free_action {
        notes.push(
            "the involution is free: odd-rank families are also defined for this space \
             and are not counted here"
                .to_string(),
        );
    }

    let phases = group.order().map(|o| o.to_string());
    match format {
        OutputFormat::Table => {
            out!("space: {space} (dimension {dim})");
            out!("group: {group}");
            match &phases {
                Some(p) => out!("phases: {p}"),
                None => out!("phases: infinitely many"),
            }
            for note in &notes {
                out!("note: {note}");
            }
        }
        OutputFormat::Json => {
            let rec = record_of(&group);
            let doc = json!({
                "schema_version": 1,
                "space": space,
                "dimension": dim,
                "group": {
                    "free_rank": rec.free_rank,
                    "torsion": rec.torsion,
                    "rendered": group.to_string(),
                },
                "phases": phases,
                "notes": notes,
            });
            out!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
    }
    Ok(0)
}

// --------------------------------------------------------------------------

fn run_verify(suite: &str, no_cache: bool) -> Result<i32, EqError> {
    let store;
    let cache = if no_cache {
        None
    } else {
        store = ResultCache::from_env();
        Some(&store)
    };
    let report = verify::run_suite(suite, cache)?;
    out!("{}", report.render().trim_end_matches('\n'));
    Ok(if report.passed() { 0 } else { 2 })
}

fn validate(file: &PathBuf) -> Result<i32, EqError> {
    let text = fs::read_to_string(file)
        .map_err(|e| EqError::Message(format!("cannot read {}: {e}", file.display())))?;
    match Z2CwComplex::from_json_str(&text) {
        Ok(x) => {
            let violations = x.validate();
            if violations.is_empty() {
                let cells: usize = (0..x.graded_len()).map(|n| x.cell_count(n)).sum();
                out!(
                    "valid: {} ({} cells, dimension {})",
                    x.name(),
                    cells,
                    x.graded_len().saturating_sub(1)
                );
                Ok(0)
            } else {
                out!("invalid: {}", x.name());
                for v in violations {
                    out!("  {v}");
                }
                Ok(2)
            }
        }
        Err(ZcwError::InvalidComplex { violations }) => {
            out!("invalid complex:");
            for v in violations {
                out!("  {v}");
            }
            Ok(2)
        }
        Err(e) => {
            out!("{e}");
            Ok(2)
        }
    }
}

fn export(space: &str, out: Option<PathBuf>) -> Result<i32, EqError> {
    let x = catalog::build(space)?;
    let json = x.to_json_string()?;
    match out {
        Some(path) => fs::write(&path, format!("{json}\n"))
            .map_err(|e| EqError::Message(format!("cannot write {}: {e}", path.display())))?,
        None => out!("{json}"),
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_rendering_matches_display() {
        let cases = [
            FgAbGroup::trivial(),
            FgAbGroup::free(1),
            FgAbGroup::free(3),
            FgAbGroup::new(0, vec![4]),
            FgAbGroup::new(2, vec![2, 6]),
        ];
        for g in cases {
            let rec = record_of(&g);
            assert_eq!(render_parts(rec.free_rank, &rec.torsion), g.to_string());
        }
    }
}
