//! The `mcb` command line: generators, checkers, decompositions, R-moves and coloring counts.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Read;

use clap::{Args, Parser, Subcommand};
use mcb_core::biquandle::{
    check_biquandle, make_alexander, make_conjugation, make_group_pair, make_quaternion, make_wada,
    parallel_op, type_of, WadaVariant,
};
use mcb_core::coloring::{count_colorings_parallel, enumerate_colorings_parallel, render_coloring};
use mcb_core::corpus::named_group;
use mcb_core::diagram::{
    apply_rmove, find_sites, parse_diagram, Chirality, Move, MoveDirection, RMoveSite, Variant,
};
use mcb_core::format;
use mcb_core::gfamily::{
    associated_mcb, check_gfamily, make_gfamily_alexander, make_gfamily_generalized,
    zfamily_from_biquandle,
};
use mcb_core::group::check_group;
use mcb_core::mcb::{
    check_mcb_def1, check_mcb_def2, check_pmb, check_primitive, decompose_universal,
    disjoint_union, pmb_from_mcb,
};
use mcb_core::{Error, FiniteGroup, Mcb, OpTable, ValidationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "mcb",
    about = "Multiple conjugation biquandles and handlebody-link colorings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate an algebra file
    #[command(subcommand)]
    Gen(Gen),
    /// Check the axioms of an algebra file
    #[command(subcommand)]
    Check(Check),
    /// Print the type of a biquandle
    Type { file: String },
    /// Print the n-parallel operations of a biquandle
    Parallel {
        #[arg(allow_negative_numbers = true)]
        n: i64,
        file: String,
    },
    /// Build the MCB associated with a G-family
    AssocMcb { file: String },
    /// Split a primitive structure into an MCB and the remaining biquandle
    Decompose { file: String },
    /// Build the partially multiplicative biquandle of an MCB
    PmbFromMcb { file: String },
    /// Apply an R-move to a diagram
    Rmove {
        diagram: String,
        #[arg(value_name = "MOVE")]
        kind: String,
        #[arg(value_name = "expand|contract")]
        direction: String,
        #[arg(required = true)]
        anchor: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        chirality: u8,
        #[arg(long, default_value = "plain")]
        variant: String,
    },
    /// List every R-move site of a diagram
    Sites { diagram: String },
    /// Count colorings of a diagram by an MCB
    ColorCount(ColorArgs),
    /// List colorings of a diagram by an MCB
    ColorEnum(ColorArgs),
}

#[derive(Args, Debug)]
struct ColorArgs {
    diagram: String,
    mcb: String,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Subcommand, Debug)]
enum Gen {
    /// `a ⋆ b = ta + (s − t)b`, `a ◦ b = sa` on Z_m
    Alexander {
        m: u64,
        #[arg(allow_negative_numbers = true)]
        s: i64,
        #[arg(allow_negative_numbers = true)]
        t: i64,
    },
    /// Wada biquandle of a group, variant 1, 2 or 3
    Wada { group: String, variant: u8 },
    /// Quaternion biquandle with coefficients mod m
    Quaternion { m: usize },
    /// Conjugation biquandle `a ⋆ b = (b⁻¹ab) ◦ b`
    Conj {
        group: String,
        /// over-operation table file; trivial if omitted
        #[arg(long)]
        over: Option<String>,
        /// emit the MCB with one block instead of the biquandle
        #[arg(long)]
        mcb: bool,
    },
    /// Biquandle on G² with parameters m, n
    Gpair {
        group: String,
        #[arg(allow_negative_numbers = true)]
        m: i64,
        #[arg(allow_negative_numbers = true)]
        n: i64,
    },
    /// G-family on Z_m: comma-separated φ and unit action, one entry per group element
    GfamAlex {
        group: String,
        phi: String,
        m: u64,
        #[arg(allow_negative_numbers = true)]
        action: String,
    },
    /// G-family on a group X: action maps separated by `;`, entries by `,`
    GfamGen {
        group: String,
        phi: String,
        carrier: String,
        action: String,
    },
    /// Z-family of a biquandle file
    Zfam { file: String },
    /// Primitive structure on the disjoint union of an MCB and a biquandle
    Union { mcb: String, biquandle: String },
}

#[derive(Subcommand, Debug)]
enum Check {
    Group {
        file: String,
    },
    Biquandle {
        file: String,
    },
    Mcb {
        file: String,
        /// 1 or 2; both if omitted
        #[arg(long)]
        definition: Option<u8>,
    },
    Gfamily {
        file: String,
    },
    Primitive {
        file: String,
    },
    Pmb {
        file: String,
    },
}

enum Failure {
    Input(String),
    Violation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::MalformedTable(_)
            | Error::NotAUnit { .. }
            | Error::CarrierTooLarge { .. }
            | Error::InvalidArgument(_)
            | Error::Parse { .. }
            | Error::DanglingSemiArc { .. }
            | Error::PatternMismatch(_)
            | Error::IncompleteAssignment(_) => Failure::Input(e.to_string()),
            _ => Failure::Violation(e.to_string()),
        }
    }
}

struct Env {
    stdin: Option<String>,
}

impl Env {
    fn read(&mut self, path: &str) -> Result<String, Failure> {
        if path == "-" {
            if self.stdin.is_none() {
                let mut s = String::new();
                std::io::stdin()
                    .read_to_string(&mut s)
                    .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
                self.stdin = Some(s);
            }
            return Ok(self.stdin.clone().unwrap_or_default());
        }
        std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))
    }

    fn mcb(&mut self, path: &str) -> Result<Mcb, Failure> {
        let tables = format::parse_mcb(&self.read(path)?)?;
        Ok(Mcb::new(tables)?)
    }
}

fn group(name: &str) -> Result<FiniteGroup, Failure> {
    named_group(name).ok_or_else(|| {
        Failure::Input(format!(
            "unknown group `{name}` (use Z<n>, D<n>, S3, S4 or 1)"
        ))
    })
}

fn list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, Failure> {
    s.split(',')
        .map(|v| {
            v.trim()
                .parse()
                .map_err(|_| Failure::Input(format!("bad list entry `{v}` in `{s}`")))
        })
        .collect()
}

fn report(r: ValidationReport) -> Result<String, Failure> {
    match r {
        ValidationReport::Valid => Ok("ok\n".into()),
        v => Err(Failure::Violation(v.to_string())),
    }
}

fn gen(cmd: Gen, env: &mut Env) -> Result<String, Failure> {
    Ok(match cmd {
        Gen::Alexander { m, s, t } => format::render_biquandle(&make_alexander(m, s, t)?),
        Gen::Wada { group: g, variant } => {
            format::render_biquandle(&make_wada(&group(&g)?, WadaVariant::try_from(variant)?))
        }
        Gen::Quaternion { m } => format::render_biquandle(&make_quaternion(m)?),
        Gen::Conj {
            group: g,
            over,
            mcb,
        } => {
            let g = group(&g)?;
            let over = match over {
                Some(path) => format::parse_table(&env.read(&path)?)?,
                None => OpTable::projection(g.order()),
            };
            let x = make_conjugation(&g, &over)?;
            if mcb {
                let tables = mcb_core::McbTables::from_groups(
                    x.under_table().clone(),
                    over,
                    vec![(0..g.order()).collect()],
                    vec![g],
                )?;
                format::render_mcb(Mcb::new(tables)?.tables())
            } else {
                format::render_biquandle(&x)
            }
        }
        Gen::Gpair { group: g, m, n } => {
            format::render_biquandle(&make_group_pair(&group(&g)?, m, n))
        }
        Gen::GfamAlex {
            group: g,
            phi,
            m,
            action,
        } => {
            let f = make_gfamily_alexander(&group(&g)?, &list(&phi)?, m, &list(&action)?)?;
            format::render_gfamily(&f)
        }
        Gen::GfamGen {
            group: g,
            phi,
            carrier,
            action,
        } => {
            let maps = action
                .split(';')
                .map(list)
                .collect::<Result<Vec<Vec<usize>>, _>>()?;
            let f = make_gfamily_generalized(&group(&g)?, &list(&phi)?, &group(&carrier)?, &maps)?;
            format::render_gfamily(&f)
        }
        Gen::Zfam { file } => {
            let x = format::parse_biquandle(&env.read(&file)?)?;
            format::render_gfamily(&zfamily_from_biquandle(&x))
        }
        Gen::Union { mcb, biquandle } => {
            let m = env.mcb(&mcb)?;
            let y = format::parse_biquandle(&env.read(&biquandle)?)?;
            format::render_primitive(&disjoint_union(&m, &y))
        }
    })
}

fn check(cmd: Check, env: &mut Env) -> Result<String, Failure> {
    match cmd {
        Check::Group { file } => {
            report(check_group(&format::parse_group_rows(&env.read(&file)?)?)?)
        }
        Check::Biquandle { file } => {
            let (u, o) = format::parse_biquandle_tables(&env.read(&file)?)?;
            report(check_biquandle(&u, &o))
        }
        Check::Mcb { file, definition } => {
            let m = format::parse_mcb(&env.read(&file)?)?;
            let defs: Vec<u8> = match definition {
                None => vec![1, 2],
                Some(d @ (1 | 2)) => vec![d],
                Some(d) => {
                    return Err(Failure::Input(format!(
                        "definition must be 1 or 2, got {d}"
                    )))
                }
            };
            let mut out = String::new();
            let mut failed = false;
            for d in defs {
                let r = if d == 1 {
                    check_mcb_def1(&m)
                } else {
                    check_mcb_def2(&m)
                };
                failed |= !r.is_valid();
                let _ = writeln!(out, "definition {d}: {r}");
            }
            if failed {
                Err(Failure::Violation(out))
            } else {
                Ok(out)
            }
        }
        Check::Gfamily { file } => {
            report(check_gfamily(&format::parse_gfamily(&env.read(&file)?)?))
        }
        Check::Primitive { file } => report(check_primitive(&format::parse_primitive(
            &env.read(&file)?,
        )?)),
        Check::Pmb { file } => report(check_pmb(&format::parse_pmb(&env.read(&file)?)?)),
    }
}

fn ids(label: &str, v: &[usize]) -> String {
    let mut s = label.to_string();
    for x in v {
        let _ = write!(s, " {x}");
    }
    s.push('\n');
    s
}

fn dispatch(cmd: Command, env: &mut Env) -> Result<String, Failure> {
    match cmd {
        Command::Gen(g) => gen(g, env),
        Command::Check(c) => check(c, env),
        Command::Type { file } => {
            let x = format::parse_biquandle(&env.read(&file)?)?;
            Ok(format!("type {}\n", type_of(&x)))
        }
        Command::Parallel { n, file } => {
            let x = format::parse_biquandle(&env.read(&file)?)?;
            let p = parallel_op(&x, n);
            Ok(format::render_biquandle_tables(&p.under, &p.over))
        }
        Command::AssocMcb { file } => {
            let f = format::parse_gfamily(&env.read(&file)?)?;
            Ok(format::render_mcb(associated_mcb(&f)?.tables()))
        }
        Command::Decompose { file } => {
            let s = format::parse_primitive(&env.read(&file)?)?;
            let d = decompose_universal(&s)?;
            let mut out = ids("x1", &d.x1);
            out.push_str(&ids("x2", &d.x2));
            out.push_str(&format::render_mcb(d.mcb.tables()));
            out.push_str(&format::render_biquandle(&d.rest));
            Ok(out)
        }
        Command::PmbFromMcb { file } => {
            let m = env.mcb(&file)?;
            Ok(format::render_pmb(&pmb_from_mcb(&m)))
        }
        Command::Rmove {
            diagram,
            kind,
            direction,
            anchor,
            chirality,
            variant,
        } => {
            let d = parse_diagram(&env.read(&diagram)?)?;
            let chirality = match chirality {
                1 => Chirality::One,
                2 => Chirality::Two,
                c => return Err(Failure::Input(format!("chirality must be 1 or 2, got {c}"))),
            };
            let site = RMoveSite::new(kind.parse::<Move>()?, anchor)
                .with_chirality(chirality)
                .with_variant(variant.parse::<Variant>()?);
            let dir: MoveDirection = direction.parse()?;
            Ok(apply_rmove(&d, &site, dir)?.to_string())
        }
        Command::Sites { diagram } => {
            let d = parse_diagram(&env.read(&diagram)?)?;
            let mut out = String::new();
            for (site, dir) in find_sites(&d) {
                let _ = writeln!(out, "{dir} {site}");
            }
            Ok(out)
        }
        Command::ColorCount(a) => {
            let d = parse_diagram(&env.read(&a.diagram)?)?;
            let m = env.mcb(&a.mcb)?;
            Ok(format!("{}\n", count_colorings_parallel(&m, &d, a.jobs)))
        }
        Command::ColorEnum(a) => {
            let d = parse_diagram(&env.read(&a.diagram)?)?;
            let m = env.mcb(&a.mcb)?;
            let mut out = String::new();
            for c in enumerate_colorings_parallel(&m, &d, a.jobs) {
                out.push_str(&render_coloring(&c));
                out.push('\n');
            }
            Ok(out)
        }
    }
}

fn execute<I, T>(argv: I, stdin: Option<String>) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandOutcome {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CommandOutcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let mut env = Env { stdin };
    match dispatch(cli.command, &mut env) {
        Ok(stdout) => CommandOutcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        },
        Err(Failure::Violation(msg)) => CommandOutcome {
            code: EXIT_VIOLATION,
            stdout: if msg.ends_with('\n') {
                msg
            } else {
                format!("{msg}\n")
            },
            stderr: String::new(),
        },
        Err(Failure::Input(msg)) => CommandOutcome {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
    }
}

/// Runs one command line; `argv[0]` is the program name. `-` reads the process stdin.
pub fn run<I, T>(argv: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    execute(argv, None)
}

/// Same as [`run`] with `-` reading from `stdin`.
pub fn run_with_stdin<I, T>(argv: I, stdin: &str) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    execute(argv, Some(stdin.to_string()))
}
