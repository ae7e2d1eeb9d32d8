//! `blockwork`: character tables, p-blocks and the principal-block checks from the command
//! line.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use blockwork::blocks;
use blockwork::groups::{default_cap, GroupFile};
use blockwork::rationality;
use blockwork::tables::{CharacterTable, FusionMap, TableError};
use blockwork::verify::{
    self, CheckReport, CorpusConfig, CorpusReport, GroupContext, StarField, StarInput, Verdict,
    VerifyError,
};

#[derive(Parser)]
#[command(name = "blockwork", version, about = "Character tables, p-blocks and principal-block checks")]
struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Enumeration cap; defaults to BLOCKWORK_CAP or 20000
    #[arg(long, global = true)]
    cap: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Compute or validate character tables
    Ct {
        #[command(subcommand)]
        action: CtAction,
    },
    /// Print the p-block partition with defects and heights
    Blocks {
        #[command(flatten)]
        input: Input,
        #[arg(short = 'p', long = "prime", required = true)]
        primes: Vec<u64>,
    },
    /// Conductors, rationality flags and Galois action on characters
    Galois {
        #[command(flatten)]
        input: Input,
        #[arg(short = 'p', long = "prime")]
        primes: Vec<u64>,
        /// Also print the row permutation induced by ζ ↦ ζ^k
        #[arg(short = 'k')]
        k: Option<i64>,
    },
    /// Check one statement on a table, group or corpus
    Verify {
        #[command(subcommand)]
        check: VerifyCommand,
    },
    /// Run a corpus configuration
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum CtAction {
    /// Character table of a permutation group, in interchange format
    Compute {
        #[arg(long)]
        group: PathBuf,
        /// Table name; defaults to the name in the group file
        #[arg(long)]
        name: Option<String>,
    },
    /// Validate a table, and optionally a fusion from a subgroup table into it
    Validate {
        #[arg(long)]
        table: PathBuf,
        #[arg(long, requires = "sub")]
        fusion: Option<PathBuf>,
        /// Subgroup table for --fusion
        #[arg(long, requires = "fusion")]
        sub: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    Run {
        #[arg(long, alias = "corpus")]
        config: PathBuf,
        /// Restrict to these checks
        #[arg(long = "check")]
        checks: Vec<String>,
    },
}

#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
struct Input {
    #[arg(long)]
    table: Option<PathBuf>,
    #[arg(long)]
    group: Option<PathBuf>,
}

#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
struct Source {
    #[arg(long)]
    table: Option<PathBuf>,
    #[arg(long)]
    group: Option<PathBuf>,
    #[arg(long)]
    corpus: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct TableCheck {
    #[command(flatten)]
    source: Source,
    #[arg(short = 'p', long = "prime")]
    primes: Vec<u64>,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Rational odd-degree characters in B0 versus a normal 2-complement
    #[command(name = "thmD")]
    ThmD(TableCheck),
    /// Q_p-valued p′-degree characters in B0 versus a normal p-complement
    #[command(name = "thmE")]
    ThmE(TableCheck),
    /// Almost p-rational height-zero characters in every block
    #[command(name = "thm41")]
    Thm41(TableCheck),
    /// Equal degrees of almost p-rational height-zero B0 characters versus a normal p-complement
    #[command(name = "conjF")]
    ConjF(TableCheck),
    /// Restriction over the normal subgroup of the group file (or [G, G])
    #[command(name = "thmC")]
    ThmC {
        #[arg(long)]
        group: PathBuf,
        #[arg(short = 'p', long = "prime")]
        primes: Vec<u64>,
    },
    /// Irreducible restrictions to p′-index subgroups stay in the principal block
    #[command(name = "lemma21")]
    Lemma21 {
        #[arg(long)]
        group: PathBuf,
        #[arg(short = 'p', long = "prime")]
        primes: Vec<u64>,
    },
    /// Table-side and group-side normal p-complement tests agree
    #[command(name = "npc")]
    Npc {
        #[arg(long)]
        group: PathBuf,
        #[arg(short = 'p', long = "prime")]
        primes: Vec<u64>,
    },
    /// Character degrees of A_n for the alternating-group construction
    #[command(name = "prop37")]
    Prop37 {
        #[arg(long, default_value_t = 60)]
        n_max: u32,
        #[arg(long)]
        p_max: Option<u64>,
    },
    /// The orbit condition on a simple group's principal block
    #[command(name = "star")]
    Star(StarArgs),
}

#[derive(Args)]
struct StarArgs {
    /// Table of S, with the orbit given by --orbit
    #[arg(long, conflicts_with = "group")]
    table: Option<PathBuf>,
    /// Group T whose file names S as its normal subgroup; orbits of T on Irr(S) are computed
    #[arg(long)]
    group: Option<PathBuf>,
    /// Orbit as comma-separated rows of the table of S
    #[arg(long, value_delimiter = ',')]
    orbit: Vec<usize>,
    #[arg(short = 'p', long = "prime", required = true)]
    p: u64,
    #[arg(long, value_enum, default_value_t = FieldArg::Qp)]
    field: FieldArg,
    /// Extension table T ≥ S (with --table; pair each with --fusion)
    #[arg(long)]
    extension: Vec<PathBuf>,
    /// Fusion of S into the matching --extension
    #[arg(long)]
    fusion: Vec<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldArg {
    Rationals,
    Qp,
}

// Writes to stdout, ignoring a closed pipe.
macro_rules! outln {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout().lock(), $($t)*);
    }};
}

macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = write!(std::io::stdout().lock(), $($t)*);
    }};
}

/// An error that exits with status 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type Outcome = Result<i32, InputError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cap = cli.cap.unwrap_or_else(default_cap);
    let result = match cli.command {
        Command::Ct { action } => ct(action, cli.format, cap),
        Command::Blocks { input, primes } => blocks_cmd(&input, &primes, cli.format, cap),
        Command::Galois { input, primes, k } => galois(&input, &primes, k, cli.format, cap),
        Command::Verify { check } => verify_cmd(check, cli.format, cli.cap),
        Command::Corpus {
            action: CorpusAction::Run { config, checks },
        } => corpus(&config, &checks, cli.format, cli.cap),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn load_table(path: &Path) -> Result<CharacterTable, InputError> {
    CharacterTable::from_json(&read(path)?).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn load_group(path: &Path, cap: usize) -> Result<GroupContext, InputError> {
    let file = GroupFile::load(path)?;
    GroupContext::from_file(&file, cap).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn input_table(input: &Input, cap: usize) -> Result<CharacterTable, InputError> {
    match (&input.table, &input.group) {
        (Some(t), _) => load_table(t),
        (_, Some(g)) => Ok(load_group(g, cap)?.table),
        _ => unreachable!("clap requires one input"),
    }
}

fn check_primes(primes: &[u64]) -> Result<(), InputError> {
    match primes.iter().find(|&&p| !blockwork::arith::is_prime(p)) {
        Some(p) => Err(InputError(format!("{p} is not a prime"))),
        None => Ok(()),
    }
}

fn primes_or_dividing(primes: &[u64], order: u64) -> Result<Vec<u64>, InputError> {
    check_primes(primes)?;
    Ok(if primes.is_empty() {
        blockwork::arith::prime_divisors(order)
    } else {
        primes.to_vec()
    })
}

fn emit_reports(reports: &[CheckReport], format: Format) -> i32 {
    for r in reports {
        match format {
            Format::Json => outln!("{}", r.to_json()),
            Format::Text => outln!("{}", r.to_text()),
        }
    }
    i32::from(reports.iter().any(|r| r.verdict == Verdict::Inconsistent))
}

fn emit_corpus(report: &CorpusReport, format: Format) -> i32 {
    match format {
        Format::Json => outln!("{}", report.to_json()),
        Format::Text => out!("{}", report.to_text()),
    }
    for e in &report.errors {
        eprintln!("error: {e}");
    }
    report.exit_code()
}

fn ct(action: CtAction, format: Format, cap: usize) -> Outcome {
    match action {
        CtAction::Compute { group, name } => {
            let file = GroupFile::load(&group)?;
            let g = file.build(cap)?;
            let table = g.character_table(name.as_deref().unwrap_or(&file.name))?;
            match format {
                Format::Json => outln!("{}", table.to_json()),
                Format::Text => out!("{}", render_table(&table)),
            }
            Ok(0)
        }
        CtAction::Validate { table, fusion, sub } => {
            let text = read(&table)?;
            let result = CharacterTable::from_json(&text).and_then(|t| {
                if let (Some(f), Some(s)) = (&fusion, &sub) {
                    let sub_table = CharacterTable::from_json(&read(s).map_err(|e| TableError::Schema(e.0))?)?;
                    let map = FusionMap::from_json(&read(f).map_err(|e| TableError::Schema(e.0))?)?;
                    map.validate(&sub_table, &t)?;
                }
                Ok(t)
            });
            let (code, message) = match &result {
                Ok(t) => (0, format!("{}: valid ({} classes)", t.name(), t.num_classes())),
                Err(TableError::Schema(e)) => return Err(InputError(format!("{}: {e}", table.display()))),
                Err(e) => (1, format!("{}: invalid: {e}", table.display())),
            };
            match format {
                Format::Json => outln!("{}", json!({"valid": code == 0, "message": message})),
                Format::Text => outln!("{message}"),
            }
            Ok(code)
        }
    }
}

fn render_table(t: &CharacterTable) -> String {
    let mut cells: Vec<Vec<String>> = Vec::new();
    let header = |label: &str, f: &dyn Fn(usize) -> String| {
        let mut row = vec![label.to_string()];
        row.extend((0..t.num_classes()).map(f));
        row
    };
    cells.push(header("class", &|k| k.to_string()));
    cells.push(header("size", &|k| t.classes()[k].size.to_string()));
    cells.push(header("order", &|k| t.classes()[k].rep_order.to_string()));
    for (i, row) in t.irr().iter().enumerate() {
        let mut line = vec![format!("X.{i}")];
        line.extend(row.iter().map(|v| v.to_string()));
        cells.push(line);
    }
    let widths: Vec<usize> = (0..=t.num_classes())
        .map(|c| cells.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = format!("{} (order {})\n", t.name(), t.order());
    for row in &cells {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(s, &w)| format!("{s:>w$}"))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn blocks_cmd(input: &Input, primes: &[u64], format: Format, cap: usize) -> Outcome {
    check_primes(primes)?;
    let table = input_table(input, cap)?;
    for &p in primes {
        let bp = blocks::block_partition(&table, p)?;
        match format {
            Format::Json => outln!("{}", json!({"table": table.name(), "partition": bp})),
            Format::Text => {
                outln!("{} p={p} |G|_p = {p}^{}", table.name(), bp.a);
                for (b, block) in bp.blocks.iter().enumerate() {
                    let members: Vec<String> = block
                        .members
                        .iter()
                        .map(|m| format!("{}(deg {}, h {})", m.row, m.degree, m.height))
                        .collect();
                    let tag = if b == bp.principal { " principal" } else { "" };
                    outln!("  block {b}{tag} defect {}: {}", block.defect, members.join(" "));
                }
            }
        }
    }
    Ok(0)
}

fn galois(input: &Input, primes: &[u64], k: Option<i64>, format: Format, cap: usize) -> Outcome {
    let table = input_table(input, cap)?;
    let primes = primes_or_dividing(primes, table.order())?;
    for &p in &primes {
        let profiles: Vec<_> = (0..table.irr().len())
            .map(|r| rationality::classify(&table, r, p))
            .collect();
        let orbits = rationality::a_group_orbits(&table, p)?;
        match format {
            Format::Json => outln!(
                "{}",
                json!({"table": table.name(), "p": p, "profiles": profiles, "a_orbits": orbits.orbits})
            ),
            Format::Text => {
                outln!("{} p={p}", table.name());
                outln!("  row  degree  conductor  rational  Q_p  p-rational  almost  A-fixed");
                for prof in &profiles {
                    let yn = |b: bool| if b { "yes" } else { "no" };
                    outln!(
                        "  {:>3}  {:>6}  {:>9}  {:>8}  {:>3}  {:>10}  {:>6}  {:>7}",
                        prof.row,
                        table.degree(prof.row),
                        prof.conductor,
                        yn(prof.rational),
                        yn(prof.qp_valued),
                        yn(prof.p_rational),
                        yn(prof.almost_p_rational),
                        yn(orbits.is_fixed(prof.row))
                    );
                }
            }
        }
    }
    if let Some(k) = k {
        let perm = table.galois_permutation(k)?;
        match format {
            Format::Json => outln!("{}", json!({"table": table.name(), "k": k, "permutation": perm})),
            Format::Text => outln!("{} σ_{k}: rows ↦ {:?}", table.name(), perm),
        }
    }
    Ok(0)
}

fn table_reports(
    name: &str,
    table: &CharacterTable,
    primes: &[u64],
) -> Result<Vec<CheckReport>, VerifyError> {
    let primes: Vec<u64> = if primes.is_empty() {
        blockwork::arith::prime_divisors(table.order())
    } else {
        primes.to_vec()
    };
    let mut out = Vec::new();
    match name {
        "thmD" => out.push(verify::check_rational_degree_parity(table)?),
        "thmE" => {
            for &p in primes.iter().filter(|&&p| p != 2) {
                out.push(verify::check_qp_valued_degree_criterion(table, p)?);
            }
        }
        "thm41" => {
            for &p in &primes {
                out.push(verify::check_almost_rational_height_zero(table, p)?);
            }
        }
        "conjF" => {
            for &p in &primes {
                out.push(verify::check_principal_nilpotency_degrees(table, p)?.0);
            }
        }
        _ => unreachable!("table checks are fixed"),
    }
    Ok(out)
}

fn table_check(name: &str, args: &TableCheck, format: Format, cap_flag: Option<usize>) -> Outcome {
    check_primes(&args.primes)?;
    if let Some(config) = &args.source.corpus {
        return corpus(config, &[name.to_string()], format, cap_flag);
    }
    let cap = cap_flag.unwrap_or_else(default_cap);
    let input = Input {
        table: args.source.table.clone(),
        group: args.source.group.clone(),
    };
    let table = input_table(&input, cap)?;
    Ok(emit_reports(&table_reports(name, &table, &args.primes)?, format))
}

fn group_check(
    group: &Path,
    primes: &[u64],
    format: Format,
    cap: usize,
    check: impl Fn(&GroupContext, u64) -> Result<Vec<CheckReport>, VerifyError>,
) -> Outcome {
    let ctx = load_group(group, cap)?;
    let mut reports = Vec::new();
    for p in primes_or_dividing(primes, ctx.group.order())? {
        reports.extend(check(&ctx, p)?);
    }
    Ok(emit_reports(&reports, format))
}

fn verify_cmd(check: VerifyCommand, format: Format, cap_flag: Option<usize>) -> Outcome {
    let cap = cap_flag.unwrap_or_else(default_cap);
    match check {
        VerifyCommand::ThmD(a) => table_check("thmD", &a, format, cap_flag),
        VerifyCommand::ThmE(a) => table_check("thmE", &a, format, cap_flag),
        VerifyCommand::Thm41(a) => table_check("thm41", &a, format, cap_flag),
        VerifyCommand::ConjF(a) => table_check("conjF", &a, format, cap_flag),
        VerifyCommand::ThmC { group, primes } => group_check(&group, &primes, format, cap, |ctx, p| {
            let n = match &ctx.normal {
                Some(n) => n.clone(),
                None => verify::derived_subgroup(&ctx.group),
            };
            Ok(vec![verify::check_restriction_over_normal(ctx, &n, p)?])
        }),
        VerifyCommand::Lemma21 { group, primes } => group_check(&group, &primes, format, cap, |ctx, p| {
            Ok(vec![verify::check_restriction_p_prime_index(ctx, p)?])
        }),
        VerifyCommand::Npc { group, primes } => group_check(&group, &primes, format, cap, |ctx, p| {
            Ok(vec![verify::check_normal_complement_oracle(ctx, p)?])
        }),
        VerifyCommand::Prop37 { n_max, p_max } => {
            let reports = verify::check_prop37(n_max, p_max.unwrap_or(n_max as u64));
            if format == Format::Text {
                outln!("{:>3} {:>3}  {:<24} {:>30}  core  assoc", "n", "p", "λ", "degree");
                for r in &reports {
                    let Some(c) = r.witnesses.first() else {
                        outln!("{:>3} {:>3}  {}", &r.subject.group[1..], r.subject.p, r.narrative);
                        continue;
                    };
                    let lambda: Vec<String> = c["lambda"]
                        .as_array()
                        .map(|a| a.iter().map(|x| x.to_string()).collect())
                        .unwrap_or_default();
                    outln!(
                        "{:>3} {:>3}  {:<24} {:>30}  {:<4}  {}",
                        c["n"].as_u64().unwrap_or(0),
                        c["p"].as_u64().unwrap_or(0),
                        format!("({})", lambda.join(",")),
                        c["degree"].as_str().unwrap_or("?"),
                        c["core_matches_trivial"],
                        c["not_self_associate"]
                    );
                }
                return Ok(i32::from(reports.iter().any(CheckReport::is_inconsistent)));
            }
            Ok(emit_reports(&reports, format))
        }
        VerifyCommand::Star(args) => star(args, format, cap),
    }
}

fn star(args: StarArgs, format: Format, cap: usize) -> Outcome {
    check_primes(&[args.p])?;
    let field = match args.field {
        FieldArg::Rationals => StarField::Rationals,
        FieldArg::Qp => StarField::Qp,
    };
    if let Some(path) = &args.table {
        if args.extension.len() != args.fusion.len() {
            return Err(InputError("each --extension needs a matching --fusion".into()));
        }
        let s = load_table(path)?;
        let exts = args
            .extension
            .iter()
            .zip(&args.fusion)
            .map(|(t, f)| Ok((load_table(t)?, FusionMap::from_json(&read(f)?)?)))
            .collect::<Result<Vec<_>, InputError>>()?;
        let input = StarInput {
            table: &s,
            orbit: args.orbit.clone(),
            p: args.p,
            field,
            extensions: exts.iter().map(|(t, f)| (t, f)).collect(),
        };
        return Ok(emit_reports(&[verify::check_condition_star(&input)?], format));
    }
    let Some(path) = &args.group else {
        return Err(InputError("star needs --table or --group".into()));
    };
    let ctx = load_group(path, cap)?;
    let Some(s_set) = &ctx.normal else {
        return Err(InputError(format!("{}: the group file names no normal subgroup", path.display())));
    };
    let orbit = (!args.orbit.is_empty()).then(|| args.orbit.clone());
    let reports = verify::check_condition_star_in_group(&ctx, s_set, args.p, field, orbit)?;
    Ok(emit_reports(&reports, format))
}

/// `--cap` overrides the config file's cap, which overrides BLOCKWORK_CAP.
fn corpus(config: &Path, checks: &[String], format: Format, cap_flag: Option<usize>) -> Outcome {
    let mut cfg = CorpusConfig::load(config)?;
    if !checks.is_empty() {
        for c in checks {
            if !verify::TABLE_CHECKS.contains(&c.as_str()) && !verify::GROUP_CHECKS.contains(&c.as_str()) {
                return Err(InputError(format!("unknown check {c:?}")));
            }
        }
        cfg.checks = checks.to_vec();
    }
    if cap_flag.is_some() {
        cfg.cap = cap_flag;
    }
    Ok(emit_corpus(&verify::corpus_run(&cfg), format))
}
