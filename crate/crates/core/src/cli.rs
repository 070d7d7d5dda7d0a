//! Command-line front end: `check`, `bench build`, `bench groups`, `demo`.
//!
//! Demo scripts are UTF-8 text with one command per line:
//!
//! ```text
//! seq z a b c y d e
//! levels 4 6 1 2 5 3
//! focus 4
//! remove L
//! unfocus
//! print
//! ```
//!
//! `seq` comes first. `levels`, when present, must come next and supply one
//! level per gap in `seq` plus one per `insert`; without it levels are drawn
//! from `--seed`. Blank lines and lines starting with `#` are ignored.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::bench::{self, BenchConfig};
use crate::checker::{check_many, EditOp, Session};
use crate::error::RazError;
use crate::levels::LevelSource;
use crate::steps::Steps;
use crate::tlist::Dir;

#[derive(Debug, Parser)]
#[command(
    name = "raz",
    about = "Random access zipper: checks, benchmarks and demos"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Differential fuzzing against the naive sequence.
    Check {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        scripts: usize,
        #[arg(long, default_value_t = 1000)]
        ops: usize,
    },
    /// Random-position insertion benchmarks, as CSV.
    Bench {
        #[command(subcommand)]
        experiment: BenchCommand,
    },
    /// Run an edit script.
    Demo {
        #[arg(long)]
        script: PathBuf,
        /// Level seed used when the script has no `levels` line.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
enum BenchCommand {
    /// Build sequences of each size from scratch.
    Build {
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time successive groups of insertions into one sequence.
    Groups {
        #[arg(long, default_value_t = 100_000)]
        group_size: usize,
        #[arg(long, default_value_t = 10_000_000)]
        max: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Parses `argv` (program name first) and runs it. Returns the exit code:
/// 0 on success, 1 on a violation or script error, 2 on bad usage.
pub fn run_command<I, T, O, E>(argv: I, out: &mut O, err: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
    O: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Check { seed, scripts, ops } => run_check(seed, scripts, ops, out),
        Command::Bench { experiment } => run_bench(experiment, out),
        Command::Demo { script, seed } => std::fs::read_to_string(&script)
            .map_err(|e| format!("{}: {e}", script.display()))
            .and_then(|text| run_demo(&text, seed, out)),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn run_check<O: Write>(seed: u64, scripts: usize, ops: usize, out: &mut O) -> Result<i32, String> {
    let report = check_many(seed, scripts, ops);
    let io = |e: io::Error| e.to_string();
    for v in &report.violations {
        writeln!(out, "{v}").map_err(io)?;
    }
    writeln!(out, "{}", report.summary()).map_err(io)?;
    Ok(if report.passed() { 0 } else { 1 })
}

fn run_bench<O: Write>(cmd: BenchCommand, out: &mut O) -> Result<i32, String> {
    let (cfg, path) = match cmd {
        BenchCommand::Build {
            sizes,
            trials,
            seed,
            out,
        } => (BenchConfig::build(sizes, trials, seed), out),
        BenchCommand::Groups {
            group_size,
            max,
            seed,
            out,
        } => (BenchConfig::groups(group_size, max, seed), out),
    };
    let records = bench::run(&cfg).map_err(|e| e.to_string())?;
    match path {
        Some(p) => {
            let file = File::create(&p).map_err(|e| format!("{}: {e}", p.display()))?;
            bench::write_csv(BufWriter::new(file), &records)
        }
        None => bench::write_csv(&mut *out, &records),
    }
    .map_err(|e| e.to_string())?;
    Ok(0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum DemoCmd {
    Op(EditOp<String>),
    Print,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct DemoScript {
    seq: Vec<String>,
    levels: Option<Vec<u32>>,
    /// (line number, command)
    commands: Vec<(usize, DemoCmd)>,
}

fn parse_dir(tok: Option<&str>) -> Result<Dir, String> {
    match tok {
        Some("L") => Ok(Dir::L),
        Some("R") => Ok(Dir::R),
        Some(other) => Err(format!("expected L or R, got `{other}`")),
        None => Err("missing direction".into()),
    }
}

fn parse_script(text: &str) -> Result<DemoScript, String> {
    let mut seq: Option<Vec<String>> = None;
    let mut levels = None;
    let mut commands = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let at = |msg: String| format!("line {lineno}: {msg}");
        let mut toks = line.split_whitespace();
        let cmd = toks.next().unwrap_or_default();
        let args: Vec<&str> = toks.collect();
        let arity = |n: usize| {
            if args.len() == n {
                Ok(())
            } else {
                Err(at(format!(
                    "`{cmd}` takes {n} argument(s), got {}",
                    args.len()
                )))
            }
        };

        if seq.is_none() {
            if cmd != "seq" {
                return Err(at("script must start with `seq`".into()));
            }
            if args.is_empty() {
                return Err(at("`seq` needs at least one element".into()));
            }
            seq = Some(args.iter().map(|s| s.to_string()).collect());
            continue;
        }
        if cmd == "levels" {
            if levels.is_some() || !commands.is_empty() {
                return Err(at("`levels` must directly follow `seq`".into()));
            }
            let parsed = args
                .iter()
                .map(|a| match a.parse::<u32>() {
                    Ok(v) if v >= 1 => Ok(v),
                    _ => Err(at(format!("bad level `{a}`"))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            levels = Some(parsed);
            continue;
        }

        let op = match cmd {
            "seq" => return Err(at("`seq` may appear only once".into())),
            "focus" => {
                arity(1)?;
                let p = args[0]
                    .parse()
                    .map_err(|_| at(format!("bad position `{}`", args[0])))?;
                DemoCmd::Op(EditOp::Focus(p))
            }
            "insert" => {
                arity(2)?;
                DemoCmd::Op(EditOp::Insert(
                    parse_dir(Some(args[0])).map_err(at)?,
                    args[1].to_string(),
                ))
            }
            "remove" => {
                arity(1)?;
                DemoCmd::Op(EditOp::Remove(
                    parse_dir(args.first().copied()).map_err(at)?,
                ))
            }
            "replace" => {
                arity(2)?;
                DemoCmd::Op(EditOp::Replace(
                    parse_dir(Some(args[0])).map_err(at)?,
                    args[1].to_string(),
                ))
            }
            "replace-cursor" => {
                arity(1)?;
                DemoCmd::Op(EditOp::ReplaceCursor(args[0].to_string()))
            }
            "move" => {
                arity(1)?;
                DemoCmd::Op(EditOp::Move(parse_dir(args.first().copied()).map_err(at)?))
            }
            "view" => {
                arity(1)?;
                DemoCmd::Op(EditOp::View(parse_dir(args.first().copied()).map_err(at)?))
            }
            "view-cursor" => {
                arity(0)?;
                DemoCmd::Op(EditOp::ViewCursor)
            }
            "unfocus" => {
                arity(0)?;
                DemoCmd::Op(EditOp::Unfocus)
            }
            "print" => {
                arity(0)?;
                DemoCmd::Print
            }
            other => return Err(at(format!("unknown command `{other}`"))),
        };
        commands.push((lineno, op));
    }
    let seq = seq.ok_or("empty script: expected `seq`")?;
    if let Some(lv) = &levels {
        let inserts = commands
            .iter()
            .filter(|(_, c)| matches!(c, DemoCmd::Op(EditOp::Insert(..))))
            .count();
        let want = seq.len() - 1 + inserts;
        if lv.len() != want {
            return Err(format!(
                "`levels` supplies {} value(s), script needs {want}",
                lv.len()
            ));
        }
    }
    Ok(DemoScript {
        seq,
        levels,
        commands,
    })
}

fn run_demo<O: Write>(text: &str, seed: u64, out: &mut O) -> Result<i32, String> {
    let script = parse_script(text)?;
    let mut src = match &script.levels {
        Some(lv) => {
            LevelSource::scripted_from_u32(lv.iter().copied()).map_err(|e| e.to_string())?
        }
        None => LevelSource::seeded(seed),
    };
    let mut session =
        Session::from_elements(script.seq.iter().cloned(), &mut src).map_err(|e| e.to_string())?;
    let io = |e: io::Error| e.to_string();
    for (lineno, cmd) in &script.commands {
        match cmd {
            DemoCmd::Print => writeln!(out, "{}", session.to_elements().join(" ")).map_err(io)?,
            DemoCmd::Op(op) => {
                let seen = session
                    .apply(op, &mut src, &mut Steps::default())
                    .map_err(|e: RazError| format!("line {lineno}: {e}"))?;
                if let Some(e) = seen {
                    writeln!(out, "{e}").map_err(io)?;
                }
            }
        }
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    const WALKTHROUGH: &str =
        "seq z a b c y d e\nlevels 4 6 1 2 5 3\nfocus 4\nremove L\nunfocus\nprint\n";

    fn demo(text: &str) -> (Result<i32, String>, String) {
        let mut out = Vec::new();
        let r = run_demo(text, 0, &mut out);
        (r, String::from_utf8(out).unwrap())
    }

    #[test]
    fn example_walkthrough() {
        let (r, out) = demo(WALKTHROUGH);
        assert_eq!(r, Ok(0));
        assert_eq!(out, "z a b y d e\n");
    }

    #[test]
    fn views_print_elements() {
        let (r, out) = demo("seq a b c\nfocus 1\nview L\nview R\nview-cursor\n");
        assert_eq!(r, Ok(0));
        assert_eq!(out, "a\nc\nb\n");
    }

    #[test]
    fn edits_without_levels_use_seed() {
        let text = "seq a b c\n# comment\n\nfocus 2\ninsert L x\nreplace-cursor C\nmove L\nreplace L B\nprint\n";
        let (r, out) = demo(text);
        assert_eq!(r, Ok(0));
        assert_eq!(out, "a B x C\n");
    }

    #[test]
    fn levels_count_is_enforced() {
        let (r, _) = demo("seq a b c\nlevels 1\nprint\n");
        assert!(r.unwrap_err().contains("needs 2"));
        let (r, _) = demo("seq a b\nlevels 1\ninsert R x\n");
        assert!(r.unwrap_err().contains("needs 2"));
        let (r, out) = demo("seq a b\nlevels 1 3\nfocus 0\ninsert R x\nprint\n");
        assert_eq!((r, out.as_str()), (Ok(0), "a x b\n"));
    }

    #[test]
    fn script_errors_name_the_line() {
        assert!(parse_script("focus 1\n").unwrap_err().contains("line 1"));
        assert!(parse_script("seq a\nfrobnicate\n")
            .unwrap_err()
            .contains("line 2"));
        assert!(parse_script("seq a\nmove X\n")
            .unwrap_err()
            .contains("L or R"));
        assert!(parse_script("seq a\nprint\nlevels\n").is_err());
        assert!(parse_script("seq a\nlevels 0\n").is_err());
        assert!(parse_script("").is_err());
        let (r, _) = demo("seq a\nremove L\n");
        assert_eq!(r.unwrap_err(), "line 2: no elements");
        let (r, _) = demo("seq a b\nfocus 5\n");
        assert!(r.unwrap_err().starts_with("line 2: out of bounds"));
    }

    #[test]
    fn usage_errors_exit_2() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run_command(["raz", "frob"], &mut out, &mut err), 2);
        assert!(!err.is_empty());
        let mut err = Vec::new();
        assert_eq!(
            run_command(["raz", "check", "--bogus"], &mut out, &mut err),
            2
        );
    }

    #[test]
    fn check_summary() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_command(
            [
                "raz",
                "check",
                "--seed",
                "1",
                "--scripts",
                "10",
                "--ops",
                "100",
            ],
            &mut out,
            &mut err,
        );
        assert_eq!(code, 0);
        assert_eq!(String::from_utf8(out).unwrap(), "scripts=10 violations=0\n");
    }
}
