//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a check came out negative (counterexample,
//! failed theorem, no isomorphism), 2 bad arguments, 3 hypothesis violated,
//! 4 I/O or file-format error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::classifier::{enumerate, enumerate_with_threads, verify_theorem6, Status};
use crate::double::build_double;
use crate::error::{Error, Result};
use crate::group::{build_group, GroupSpec};
use crate::identity::{check_identity, parse_identity, Builtin};
use crate::morphisms::{are_anti_isomorphic, are_isomorphic};
use crate::pair_ops::OpMatrix;
use crate::table::CayleyTable;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_HYPOTHESIS: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "chein",
    version,
    about = "Group doubling constructions and Moufang classification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write the Cayley table of a doubled group
    Construct {
        #[arg(long)]
        group: GroupSpec,
        /// `a,b,c,d` or a name such as M_c, G_tau, op_M_sigma
        #[arg(long)]
        matrix: OpMatrix,
        /// Output file; a JSON sidecar is written next to it as FILE.json
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check an identity on a Cayley table
    Check {
        #[arg(long)]
        table: PathBuf,
        #[command(flatten)]
        law: LawArg,
    },
    /// Analyze all 4096 doubles of a group
    Enumerate {
        #[arg(long)]
        group: GroupSpec,
        #[arg(long)]
        report: PathBuf,
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Worker threads (default: all cores)
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Check the Moufang classification over a nonabelian group
    VerifyTheorem {
        #[arg(long)]
        group: GroupSpec,
    },
    /// Search for an isomorphism between two loops
    Iso {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        /// Search for an anti-isomorphism instead
        #[arg(long)]
        anti: bool,
    },
    /// Print basic invariants of a group
    GroupInfo {
        #[arg(long)]
        group: GroupSpec,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct LawArg {
    #[arg(long)]
    builtin: Option<Builtin>,
    #[arg(long)]
    identity: Option<String>,
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Io(_) | Error::TableFormat { .. } | Error::Json(_) | Error::Csv(_) => EXIT_IO,
        Error::Hypothesis(_)
        | Error::NotALoop
        | Error::SearchTooLarge(..)
        | Error::InverseUndefined(_)
        | Error::TooManyVariables { .. } => EXIT_HYPOTHESIS,
        _ => EXIT_USAGE,
    }
}

/// Runs the CLI on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn read_table(path: &Path) -> Result<CayleyTable> {
    CayleyTable::from_text(&fs::read_to_string(path)?)
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Construct {
            group,
            matrix,
            out: path,
        } => {
            let g = build_group(&group)?;
            let d = build_double(g, matrix);
            match path {
                Some(path) => {
                    fs::write(&path, d.table().to_text())?;
                    let mut sidecar = serde_json::to_string_pretty(&d.sidecar())?;
                    sidecar.push('\n');
                    let mut side_path = path.into_os_string();
                    side_path.push(".json");
                    fs::write(side_path, sidecar)?;
                }
                None => out.write_all(d.table().to_text().as_bytes())?,
            }
            Ok(EXIT_OK)
        }
        Command::Check { table, law } => {
            let id = match (law.builtin, law.identity) {
                (Some(b), _) => b.identity(),
                (None, Some(src)) => parse_identity(&src)?,
                (None, None) => unreachable!("clap requires one of --builtin/--identity"),
            };
            let t = read_table(&table)?;
            let outcome = check_identity(&t, &id)?;
            writeln!(out, "{outcome}")?;
            Ok(if outcome.holds() {
                EXIT_OK
            } else {
                EXIT_NEGATIVE
            })
        }
        Command::Enumerate {
            group,
            report,
            csv,
            threads,
        } => {
            let g = build_group(&group)?;
            let r = match threads {
                Some(t) => enumerate_with_threads(&g, t)?,
                None => enumerate(&g)?,
            };
            fs::write(&report, r.to_json()?)?;
            if let Some(csv) = csv {
                r.write_csv(fs::File::create(csv)?)?;
            }
            let f = &r.counts.flags;
            writeln!(
                out,
                "group {group}: {} loops, {} Moufang loops, {} nonassociative Moufang in {} class(es), {} Bol but not Moufang, {} without full inverse property",
                f["is_loop"],
                r.moufang_set.len(),
                r.nonassoc_moufang_classes.iter().map(|c| c.members.len()).sum::<usize>(),
                r.nonassoc_moufang_classes.len(),
                r.bol_not_moufang.len(),
                r.ip_discrepancies.len(),
            )?;
            for c in &r.lemma_checks {
                writeln!(out, "{}: {} ({})", c.name, status_word(c.status), c.detail)?;
            }
            writeln!(out, "theorem6: {}", status_word(r.theorem6.status))?;
            Ok(if r.all_passed() {
                EXIT_OK
            } else {
                EXIT_NEGATIVE
            })
        }
        Command::VerifyTheorem { group } => {
            let g = build_group(&group)?;
            let result = verify_theorem6(&g)?;
            writeln!(out, "theorem6: {}", status_word(result.status))?;
            for m in &result.missing {
                writeln!(out, "- missing {m}")?;
            }
            for m in &result.unexpected {
                writeln!(out, "+ unexpected {m}")?;
            }
            for note in &result.notes {
                writeln!(out, "! {note}")?;
            }
            Ok(if result.passed() {
                EXIT_OK
            } else {
                EXIT_NEGATIVE
            })
        }
        Command::Iso { a, b, anti } => {
            let ta = read_table(&a)?;
            let tb = read_table(&b)?;
            let found = if anti {
                are_anti_isomorphic(&ta, &tb)?
            } else {
                are_isomorphic(&ta, &tb)?
            };
            match found {
                Some(map) => {
                    writeln!(out, "{}", serde_json::to_string(&map)?)?;
                    Ok(EXIT_OK)
                }
                None => {
                    writeln!(out, "none")?;
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
        Command::GroupInfo { group } => {
            let g = build_group(&group)?;
            writeln!(out, "group: {group}")?;
            writeln!(out, "order: {}", g.order())?;
            writeln!(out, "abelian: {}", g.is_abelian())?;
            writeln!(out, "center_index: {}", g.center_index())?;
            writeln!(out, "elementary_abelian_2: {}", g.is_elementary_abelian_2())?;
            writeln!(out, "squares_central: {}", g.squares_are_central())?;
            Ok(EXIT_OK)
        }
    }
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::NotApplicable => "not applicable",
    }
}
