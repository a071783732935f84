// SPDX-License-Identifier: Apache-2.0

//! Command-line front end. [`run`] parses arguments, executes one
//! subcommand and returns the process exit code: 0 on success, 1 on domain
//! errors (bad games, failed verification), 2 on usage errors.

use std::fs;
use std::io::{self, Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use lmcost::enumeration::{self, GameFilter, WeightednessCertificate};
use lmcost::families::{self, FamilyInstance, ScoreStatus};
use lmcost::format::{game_to_json, parse_game};
use lmcost::ilp::{self, BaseClass, ClassFlags};
use lmcost::indices::all_indices;
use lmcost::monotonicity::{self, convex_index, lm_check, IndexCollection, LmCheck};
use lmcost::polyhedron::{self, GameSource, LmPolyhedron};
use lmcost::scalar::{parse_rational, to_decimal};
use lmcost::{ConvexWeights, GameEntry, Rational, SimpleGame};

pub const JOBS_ENV: &str = "LMCOST_JOBS";

#[derive(Parser, Debug)]
#[command(
    name = "lmcost",
    version,
    about = "Exact power indices and the cost of local monotonicity"
)]
struct Cli {
    /// Worker threads; defaults to all cores.
    #[arg(long, global = true, env = JOBS_ENV)]
    jobs: Option<usize>,
    /// Add a decimal rendering with this many digits next to exact values.
    #[arg(long, global = true)]
    decimals: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Suppress progress messages on standard error.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Raw index vectors of one game.
    Indices(IndicesArgs),
    /// Local monotonicity of a convex combination on one game.
    CheckLm(CheckLmArgs),
    /// Cost of local monotonicity over an enumerated class.
    Cost(CostArgs),
    /// Count or list complete and weighted games.
    Enumerate(EnumerateArgs),
    /// Vertices of the set of multipliers giving a locally monotone index.
    Polyhedron(PolyhedronArgs),
    /// Generate and verify a parametric family or the witness catalog.
    Family(FamilyArgs),
    /// Write the integer programming model, or read back a solution.
    EmitIlp(EmitIlpArgs),
}

#[derive(Args, Debug)]
struct GameInput {
    /// Bracket notation `[q;w1,...,wn]`, a JSON record, or `-` for stdin.
    game: Option<String>,
    /// Read the game from a file instead.
    #[arg(long)]
    file: Option<String>,
    /// Relabel players into non-increasing desirability first.
    #[arg(long)]
    sort: bool,
}

#[derive(Args, Debug)]
struct IndicesArgs {
    #[command(flatten)]
    input: GameInput,
    /// Also print the normalized vectors.
    #[arg(long)]
    normalized: bool,
}

#[derive(Args, Debug)]
struct CheckLmArgs {
    #[command(flatten)]
    input: GameInput,
    #[arg(long, default_value = "bz,pgi,s")]
    collection: String,
    /// Comma-separated exact weights summing to one.
    #[arg(long)]
    alpha: String,
}

#[derive(Args, Debug, Clone)]
struct ClassArgs {
    #[arg(long)]
    n: usize,
    /// `weighted` or `complete`, optionally followed by `,proper`,
    /// `,strong`, `,constant-sum`, `,uniform`, `,flat`.
    #[arg(long, default_value = "weighted")]
    class: String,
}

#[derive(Args, Debug)]
struct CostArgs {
    #[command(flatten)]
    class: ClassArgs,
    /// Two indices, anchor first.
    #[arg(long, conflicts_with = "collection")]
    pair: Option<String>,
    /// Any collection with an anchor first.
    #[arg(long)]
    collection: Option<String>,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long, required_unless_present = "uniform_table")]
    n: Option<usize>,
    #[arg(long, default_value = "weighted")]
    class: String,
    /// Print every game.
    #[arg(long, visible_alias = "emit", conflicts_with = "count_only")]
    list: bool,
    /// Print only the count (the default).
    #[arg(long)]
    count_only: bool,
    /// Counts of uniform complete and weighted games for 1..=N players.
    #[arg(long, value_name = "N", visible_alias = "table-uniform")]
    uniform_table: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Direct,
    Lazy,
}

#[derive(Args, Debug)]
struct PolyhedronArgs {
    #[command(flatten)]
    class: ClassArgs,
    #[arg(long, default_value = "bz,pgi,s")]
    collection: String,
    #[arg(long, value_enum, default_value_t = Method::Direct)]
    method: Method,
    /// Write the boundary in (alpha2, alpha3) coordinates to this file.
    #[arg(long)]
    csv: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyId {
    Star,
    Proper,
    ConstantSum,
    BzShift,
    JoDp,
    JoSdp,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    #[arg(value_enum, required_unless_present = "verify_all")]
    id: Option<FamilyId>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    /// Verify every catalog witness.
    #[arg(long)]
    verify_all: bool,
}

#[derive(Args, Debug)]
struct EmitIlpArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "weighted")]
    class: String,
    #[arg(long, default_value = "bz,pgi,s")]
    collection: String,
    #[arg(long, required_unless_present = "solution")]
    alpha: Option<String>,
    #[arg(long, default_value_t = 1)]
    pair: usize,
    /// Replace the default big-M; the model is then only correct if every
    /// game of the class has a representation with total weight below M.
    #[arg(long)]
    big_m: Option<i64>,
    #[arg(long, short)]
    output: Option<String>,
    /// Rebuild the game from `x_<mask> <0|1>` lines of a solver solution.
    #[arg(long)]
    solution: Option<String>,
}

/// Failure of a subcommand, mapped to an exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(String),
    Closed,
}

impl From<lmcost::Error> for Failure {
    fn from(e: lmcost::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            return Failure::Closed;
        }
        Failure::Domain(format!("i/o error: {e}"))
    }
}

type Outcome = std::result::Result<(), Failure>;

struct Ctx<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    decimals: Option<usize>,
    format: Format,
    quiet: bool,
}

impl Ctx<'_> {
    fn num(&self, x: &Rational) -> String {
        match self.decimals {
            Some(d) => format!("{x} ({})", to_decimal(x, d)),
            None => x.to_string(),
        }
    }

    fn progress(&mut self, msg: &str) {
        if !self.quiet {
            let _ = writeln!(self.err, "{msg}");
        }
    }

    fn line(&mut self, text: impl AsRef<str>) -> io::Result<()> {
        writeln!(self.out, "{}", text.as_ref())
    }

    fn json(&mut self, value: serde_json::Value) -> io::Result<()> {
        writeln!(self.out, "{value}")
    }
}

/// Runs the command line `args` (program name first).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    let jobs = cli.jobs;
    let mut ctx = Ctx {
        out,
        err,
        decimals: cli.decimals,
        format: cli.format,
        quiet: cli.quiet,
    };
    let result = match jobs {
        Some(0) => Err(Failure::Usage("--jobs must be at least 1".into())),
        Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j).build() {
            Ok(pool) => {
                let (decimals, format, quiet) = (ctx.decimals, ctx.format, ctx.quiet);
                let command = cli.command;
                let (result, out_buf, err_buf) = pool.install(move || {
                    let (mut out_buf, mut err_buf) = (Vec::new(), Vec::new());
                    let mut inner = Ctx {
                        out: &mut out_buf,
                        err: &mut err_buf,
                        decimals,
                        format,
                        quiet,
                    };
                    let result = dispatch(command, &mut inner);
                    (result, out_buf, err_buf)
                });
                let _ = ctx.err.write_all(&err_buf);
                let _ = ctx.out.write_all(&out_buf);
                result
            }
            Err(e) => Err(Failure::Domain(format!("cannot start worker pool: {e}"))),
        },
        None => dispatch(cli.command, &mut ctx),
    };
    let _ = ctx.out.flush();
    match result {
        Ok(()) | Err(Failure::Closed) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(ctx.err, "error: {msg}");
            2
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(ctx.err, "error: {msg}");
            1
        }
    }
}

fn dispatch(command: Command, ctx: &mut Ctx<'_>) -> Outcome {
    match command {
        Command::Indices(a) => cmd_indices(a, ctx),
        Command::CheckLm(a) => cmd_check_lm(a, ctx),
        Command::Cost(a) => cmd_cost(a, ctx),
        Command::Enumerate(a) => cmd_enumerate(a, ctx),
        Command::Polyhedron(a) => cmd_polyhedron(a, ctx),
        Command::Family(a) => cmd_family(a, ctx),
        Command::EmitIlp(a) => cmd_emit_ilp(a, ctx),
    }
}

fn read_game(input: &GameInput) -> std::result::Result<SimpleGame, Failure> {
    let text = match (&input.game, &input.file) {
        (Some(_), Some(_)) => return Err(Failure::Usage("give either a game or --file, not both".into())),
        (None, None) => {
            return Err(Failure::Usage(
                "missing game (bracket notation, JSON, or --file)".into(),
            ))
        }
        (Some(g), None) if g == "-" => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        }
        (Some(g), None) => g.clone(),
        (None, Some(path)) => fs::read_to_string(path)?,
    };
    let game = parse_game(&text)?;
    Ok(if input.sort { game.sorted()? } else { game })
}

fn parse_collection(text: &str) -> std::result::Result<IndexCollection, Failure> {
    text.parse().map_err(|e: lmcost::Error| Failure::Usage(e.to_string()))
}

fn parse_alpha(text: &str, r: usize) -> std::result::Result<ConvexWeights, Failure> {
    let values = text
        .split(',')
        .map(parse_rational)
        .collect::<lmcost::Result<Vec<Rational>>>()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    if values.len() != r {
        return Err(Failure::Usage(format!(
            "--alpha has {} entries but the collection has {r} indices",
            values.len()
        )));
    }
    ConvexWeights::new(values).map_err(|e| Failure::Usage(e.to_string()))
}

/// Splits `weighted,proper` into the base class and the restriction.
fn parse_class(text: &str) -> std::result::Result<(BaseClass, GameFilter), Failure> {
    let lower = text.to_ascii_lowercase();
    let mut parts = lower.split(',').map(str::trim);
    let base = match parts.next() {
        Some("weighted") => BaseClass::Weighted,
        Some("complete") => BaseClass::Complete,
        other => {
            return Err(Failure::Usage(format!(
                "--class must start with 'weighted' or 'complete', found '{}'",
                other.unwrap_or("")
            )))
        }
    };
    let rest: Vec<&str> = parts.collect();
    let filter = if rest.is_empty() {
        GameFilter::ALL
    } else {
        rest.join(",")
            .parse()
            .map_err(|e: lmcost::Error| Failure::Usage(e.to_string()))?
    };
    Ok((base, filter))
}

fn class_entries(args: &ClassArgs, ctx: &mut Ctx<'_>) -> std::result::Result<Vec<GameEntry>, Failure> {
    let (base, filter) = parse_class(&args.class)?;
    if args.n == 0 || args.n > enumeration::MAX_ENUMERATION_PLAYERS {
        return Err(Failure::Usage(format!(
            "--n must be between 1 and {}",
            enumeration::MAX_ENUMERATION_PLAYERS
        )));
    }
    if args.n >= 7 {
        ctx.progress(&format!("enumerating {} games with {} players", args.class, args.n));
    }
    let entries = match base {
        BaseClass::Weighted => enumeration::weighted_entries(args.n, filter)?,
        BaseClass::Complete => enumeration::complete_entries(args.n, filter)?,
    };
    if args.n >= 7 {
        ctx.progress(&format!("{} games", entries.len()));
    }
    Ok(entries)
}

fn cmd_indices(a: IndicesArgs, ctx: &mut Ctx<'_>) -> Outcome {
    let v = read_game(&a.input)?;
    let vectors = all_indices(&v);
    match ctx.format {
        Format::Human => {
            ctx.line(format!("players {}", v.players()))?;
            for (kind, vec) in &vectors {
                let body = match vec {
                    Some(x) => x.values.iter().map(|x| ctx.num(x)).collect::<Vec<_>>().join(" "),
                    None => "undefined (game is not complete)".into(),
                };
                ctx.line(format!("{:<5}{body}", kind.short_name()))?;
                if a.normalized {
                    if let Some(Ok(nx)) = vec.as_ref().map(|x| x.normalize()) {
                        let body = nx.values.iter().map(|x| ctx.num(x)).collect::<Vec<_>>().join(" ");
                        ctx.line(format!("{:<5}{body}", format!("{}*", kind.short_name())))?;
                    }
                }
            }
        }
        Format::Csv => {
            let header = if ctx.decimals.is_some() {
                "index,player,value,decimal"
            } else {
                "index,player,value"
            };
            ctx.line(header)?;
            for (kind, vec) in &vectors {
                let Some(x) = vec else { continue };
                for (p, value) in x.values.iter().enumerate() {
                    let mut row = format!("{},{},{}", kind.short_name(), p + 1, value);
                    if let Some(d) = ctx.decimals {
                        row.push_str(&format!(",{}", to_decimal(value, d)));
                    }
                    ctx.line(row)?;
                }
            }
        }
        Format::Json => {
            for (kind, vec) in &vectors {
                let values = vec
                    .as_ref()
                    .map(|x| x.values.iter().map(|v| v.to_string()).collect::<Vec<_>>());
                ctx.json(json!({"index": kind.short_name(), "values": values}))?;
            }
        }
    }
    Ok(())
}

fn cmd_check_lm(a: CheckLmArgs, ctx: &mut Ctx<'_>) -> Outcome {
    let collection = parse_collection(&a.collection)?;
    let alpha = parse_alpha(&a.alpha, collection.len())?;
    let v = read_game(&a.input)?;
    let combined = convex_index(&v, &collection, &alpha)?;
    let check = lm_check(&v, &collection, &alpha)?;
    match ctx.format {
        Format::Json => {
            let (monotone, pair, excess) = match &check {
                LmCheck::Monotone => (true, None, None),
                LmCheck::Violated { pair, excess } => (false, Some(*pair), Some(excess.to_string())),
            };
            ctx.json(json!({
                "combined": combined.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "monotone": monotone,
                "pair": pair,
                "excess": excess,
            }))?;
        }
        Format::Csv => {
            ctx.line("player,combined,step")?;
            for (p, value) in combined.iter().enumerate() {
                let step = combined
                    .get(p + 1)
                    .map_or(String::new(), |next| (value - next).to_string());
                ctx.line(format!("{},{value},{step}", p + 1))?;
            }
        }
        Format::Human => {
            let body = combined.iter().map(|x| ctx.num(x)).collect::<Vec<_>>().join(" ");
            ctx.line(format!("combined {body}"))?;
            match check {
                LmCheck::Monotone => ctx.line("monotone")?,
                LmCheck::Violated { pair, excess } => {
                    let e = ctx.num(&excess);
                    ctx.line(format!("violated at players {pair},{} by {e}", pair + 1))?
                }
            }
        }
    }
    Ok(())
}

fn cmd_cost(a: CostArgs, ctx: &mut Ctx<'_>) -> Outcome {
    let collection = match (&a.pair, &a.collection) {
        (Some(p), None) => {
            let c = parse_collection(p)?;
            if c.len() != 2 {
                return Err(Failure::Usage("--pair takes exactly two indices".into()));
            }
            c
        }
        (None, Some(c)) => parse_collection(c)?,
        _ => return Err(Failure::Usage("give --pair or --collection".into())),
    };
    let entries = class_entries(&a.class, ctx)?;
    let result = monotonicity::cost_multi(&entries, &collection)?;
    let w = result.witness();
    let pair = w.witness_pair.map_or("-".to_string(), |p| format!("{p},{}", p + 1));
    match ctx.format {
        Format::Json => {
            let pairwise: Vec<_> = result
                .pairwise
                .iter()
                .map(|c| json!({"index": c.other.short_name(), "cost": c.value.to_string(), "witness": c.witness.key(), "pair": c.witness_pair}))
                .collect();
            ctx.json(json!({
                "collection": collection.to_string(),
                "n": a.class.n,
                "class": a.class.class,
                "games": entries.len(),
                "cost": result.value.to_string(),
                "approx": to_decimal(&result.value, ctx.decimals.unwrap_or(6)),
                "witness": w.witness.key(),
                "pair": w.witness_pair,
                "pairwise": pairwise,
            }))?;
        }
        Format::Csv => {
            ctx.line("anchor,other,n,class,games,cost,approx,witness,player")?;
            for c in &result.pairwise {
                let player = c.witness_pair.map_or(String::new(), |p| p.to_string());
                let approx = to_decimal(&c.value, ctx.decimals.unwrap_or(6));
                ctx.line(format!(
                    "{},{},{},\"{}\",{},{},{approx},\"{}\",{player}",
                    c.anchor.short_name(),
                    c.other.short_name(),
                    a.class.n,
                    a.class.class,
                    entries.len(),
                    c.value,
                    c.witness.key()
                ))?;
            }
        }
        Format::Human => {
            ctx.line(format!("collection {collection}"))?;
            ctx.line(format!("n {}", a.class.n))?;
            ctx.line(format!("class {}", a.class.class))?;
            ctx.line(format!("games {}", entries.len()))?;
            ctx.line(format!("cost {}", result.value))?;
            ctx.line(format!(
                "approx {}",
                to_decimal(&result.value, ctx.decimals.unwrap_or(6))
            ))?;
            ctx.line(format!("witness {}", w.witness.key()))?;
            ctx.line(format!("players {pair}"))?;
            if result.pairwise.len() > 1 {
                for c in &result.pairwise {
                    let value = ctx.num(&c.value);
                    ctx.line(format!(
                        "  {}/{} {value} {}",
                        c.anchor.short_name(),
                        c.other.short_name(),
                        c.witness.key()
                    ))?;
                }
            }
        }
    }
    Ok(())
}

fn cmd_enumerate(a: EnumerateArgs, ctx: &mut Ctx<'_>) -> Outcome {
    if let Some(max) = a.uniform_table {
        if max == 0 || max > enumeration::MAX_ENUMERATION_PLAYERS {
            return Err(Failure::Usage("--uniform-table must be between 1 and 8".into()));
        }
        let table = enumeration::count_uniform_table(max)?;
        match ctx.format {
            Format::Json => {
                for row in table {
                    ctx.json(json!({"n": row.n, "complete": row.complete, "weighted": row.weighted}))?;
                }
            }
            Format::Csv => {
                ctx.line("n,uniform_complete,uniform_weighted")?;
                for row in table {
                    ctx.line(format!("{},{},{}", row.n, row.complete, row.weighted))?;
                }
            }
            Format::Human => {
                ctx.line("n  uniform-complete  uniform-weighted")?;
                for row in table {
                    ctx.line(format!("{:<2} {:>16}  {:>16}", row.n, row.complete, row.weighted))?;
                }
            }
        }
        return Ok(());
    }
    let n = a.n.expect("clap enforces --n");
    let (base, filter) = parse_class(&a.class)?;
    if n == 0 || n > enumeration::MAX_ENUMERATION_PLAYERS {
        return Err(Failure::Usage("--n must be between 1 and 8".into()));
    }
    let listed: Vec<String> = if a.list {
        match base {
            BaseClass::Weighted => enumeration::weighted_entries(n, filter)?
                .iter()
                .map(|e| e.key().to_string())
                .collect(),
            BaseClass::Complete => enumeration::complete_games(n, filter)?
                .iter()
                .map(game_to_json)
                .collect(),
        }
    } else {
        Vec::new()
    };
    let count = if a.list {
        listed.len() as u64
    } else {
        match base {
            BaseClass::Weighted => enumeration::enumerate_weighted(n, filter, |_, _| {})?,
            BaseClass::Complete => enumeration::count_complete(n, filter)?,
        }
    };
    match ctx.format {
        Format::Json => {
            ctx.json(json!({"n": n, "class": a.class, "count": count}))?;
            for g in listed {
                ctx.json(json!({"game": g}))?;
            }
        }
        _ => {
            ctx.line(format!("n {n}"))?;
            ctx.line(format!("class {}", a.class))?;
            ctx.line(format!("count {count}"))?;
            for g in listed {
                ctx.line(g)?;
            }
        }
    }
    Ok(())
}

fn vertex_text(ctx: &Ctx<'_>, v: &[Rational]) -> String {
    format!("({})", v.iter().map(|x| ctx.num(x)).collect::<Vec<_>>().join(", "))
}

fn cmd_polyhedron(a: PolyhedronArgs, ctx: &mut Ctx<'_>) -> Outcome {
    let collection = parse_collection(&a.collection)?;
    if !(2..=3).contains(&collection.len()) {
        return Err(Failure::Usage("polyhedra are computed for two or three indices".into()));
    }
    let entries = class_entries(&a.class, ctx)?;
    let source = GameSource::new(&entries, &collection)?;
    let (poly, rounds): (LmPolyhedron, Option<usize>) = match a.method {
        Method::Direct => (polyhedron::plm_direct(&source)?, None),
        Method::Lazy => {
            let (p, r) = polyhedron::plm_lazy(&source)?;
            (p, Some(r.len()))
        }
    };
    let cost = polyhedron::cost_from_polyhedron(&poly);
    if let Some(path) = &a.csv {
        fs::write(path, poly.boundary_csv(ctx.decimals.unwrap_or(6)))?;
    }
    match ctx.format {
        Format::Csv => {
            let csv = poly.boundary_csv(ctx.decimals.unwrap_or(6));
            write!(ctx.out, "{csv}")?;
        }
        Format::Json => {
            let vertices: Vec<Vec<String>> = poly
                .vertices
                .iter()
                .map(|v| v.iter().map(|x| x.to_string()).collect())
                .collect();
            let facets: Vec<_> = poly
                .halfspaces
                .iter()
                .map(|h| json!({"d": h.d.iter().map(|x| x.to_string()).collect::<Vec<_>>(), "game": h.game.key(), "pair": h.pair}))
                .collect();
            ctx.json(json!({
                "collection": collection.to_string(),
                "n": a.class.n,
                "class": a.class.class,
                "vertices": vertices,
                "facets": facets,
                "cost": cost.to_string(),
                "rounds": rounds,
            }))?;
        }
        Format::Human => {
            ctx.line(format!("collection {collection}"))?;
            ctx.line(format!("n {}", a.class.n))?;
            ctx.line(format!("class {}", a.class.class))?;
            ctx.line(format!("vertices {}", poly.vertices.len()))?;
            for v in &poly.vertices {
                let t = vertex_text(ctx, v);
                ctx.line(format!("  {t}"))?;
            }
            for h in &poly.halfspaces {
                let d = h.d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
                ctx.line(format!(
                    "facet ({d}) from {} players {},{}",
                    h.game.key(),
                    h.pair,
                    h.pair + 1
                ))?;
            }
            if let Some(r) = rounds {
                ctx.line(format!("rounds {r}"))?;
            }
            let c = ctx.num(&cost);
            ctx.line(format!("cost {c}"))?;
        }
    }
    Ok(())
}

fn need(value: Option<usize>, flag: &str) -> std::result::Result<usize, Failure> {
    value.ok_or_else(|| Failure::Usage(format!("this family needs --{flag}")))
}

fn report_instance(inst: &FamilyInstance, ctx: &mut Ctx<'_>) -> std::result::Result<bool, Failure> {
    let report = families::verify_family(inst)?;
    let ok = report.all_match(inst);
    ctx.line(format!("game {}", inst.representation))?;
    ctx.line(format!(
        "indices {}/{} players {},{}",
        inst.anchor.short_name(),
        inst.other.short_name(),
        inst.pair,
        inst.pair + 1
    ))?;
    for s in &report.scores {
        let mark = if s.status == ScoreStatus::Match {
            "ok"
        } else {
            "MISMATCH"
        };
        let (e, c) = (ctx.num(&s.expected), ctx.num(&s.computed));
        ctx.line(format!(
            "  {}[{}] predicted {e} computed {c} {mark}",
            s.kind.short_name(),
            s.player
        ))?;
    }
    let (p, c) = (ctx.num(&inst.predicted_bound), ctx.num(&report.threshold));
    let mark = if report.threshold == inst.predicted_bound {
        "ok"
    } else {
        "MISMATCH"
    };
    ctx.line(format!("bound predicted {p} computed {c} {mark}"))?;
    ctx.line(format!(
        "class {} {}",
        inst.class,
        if report.class_holds { "ok" } else { "MISMATCH" }
    ))?;
    Ok(ok)
}

fn cmd_family(a: FamilyArgs, ctx: &mut Ctx<'_>) -> Outcome {
    if a.verify_all {
        return verify_catalog(ctx);
    }
    let id = a.id.expect("clap enforces the family id");
    let inst = match id {
        FamilyId::Star => families::star_family(need(a.n, "n")?)?,
        FamilyId::Proper => families::proper_family(need(a.n, "n")?)?,
        FamilyId::ConstantSum => families::constant_sum_family(need(a.n, "n")?)?,
        FamilyId::BzShift => families::bz_shift_family(need(a.k, "k")?, need(a.m, "m")?)?,
        FamilyId::JoDp => families::jo_dp_family(need(a.k, "k")?)?,
        FamilyId::JoSdp => {
            let n = need(a.n, "n")?;
            let rep = families::jo_sdp_game(n)?;
            let v = SimpleGame::from_weighted(&rep)?;
            let t = monotonicity::lm_threshold(
                &v,
                n - 1,
                lmcost::IndexKind::Johnston,
                lmcost::IndexKind::ShiftDeeganPackel,
            )?;
            ctx.line(format!("game {rep}"))?;
            ctx.line(format!("indices jo/sdp players {},{n}", n - 1))?;
            let t = ctx.num(&t);
            ctx.line(format!("bound {t}"))?;
            return Ok(());
        }
    };
    if report_instance(&inst, ctx)? {
        Ok(())
    } else {
        Err(Failure::Domain("prediction does not match brute force".into()))
    }
}

fn verify_catalog(ctx: &mut Ctx<'_>) -> Outcome {
    let catalog = families::witness_catalog();
    let mut failed = 0;
    for entry in &catalog {
        let report = families::verify_witness(entry)?;
        let reproduced = report.threshold_reproduced(entry);
        let clean = reproduced && report.scores_match() && report.class_holds;
        let status = if clean {
            "ok"
        } else if entry.note.is_some() && report.class_holds {
            "flagged"
        } else {
            failed += 1;
            "FAIL"
        };
        let (claimed, computed) = (ctx.num(&entry.claimed), ctx.num(&report.threshold));
        ctx.line(format!(
            "{:<12} {:<34} {}/{} claimed {claimed} computed {computed} {status}",
            entry.label,
            entry.game,
            entry.anchor.short_name(),
            entry.other.short_name()
        ))?;
        for s in report.scores.iter().filter(|s| s.status != ScoreStatus::Match) {
            let detail = match &s.status {
                ScoreStatus::Relabeled(k) => format!("value belongs to {}", k.short_name()),
                ScoreStatus::Mismatch(c) => format!("computed {c}"),
                ScoreStatus::Match => unreachable!(),
            };
            ctx.line(format!(
                "    {}[{}] printed {}: {detail}",
                s.kind.short_name(),
                s.player,
                s.expected
            ))?;
        }
        if !clean {
            if let Some(note) = entry.note {
                ctx.line(format!("    note: {note}"))?;
            }
        }
    }
    ctx.line(format!("{} entries, {failed} failed", catalog.len()))?;
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Domain(format!("{failed} catalog entries failed")))
    }
}

fn cmd_emit_ilp(a: EmitIlpArgs, ctx: &mut Ctx<'_>) -> Outcome {
    if let Some(path) = &a.solution {
        let text = fs::read_to_string(path)?;
        let v = ilp::parse_solution(a.n, &text)?;
        ctx.line(game_to_json(&v))?;
        if v.is_complete() {
            if let WeightednessCertificate::Weighted(rep) = enumeration::is_weighted(&v)? {
                ctx.line(rep.to_string())?;
            }
        }
        return Ok(());
    }
    let collection = parse_collection(&a.collection)?;
    let alpha = parse_alpha(a.alpha.as_deref().expect("clap enforces --alpha"), collection.len())?;
    let (base, filter) = parse_class(&a.class)?;
    let flags = ClassFlags::with_filter(base, filter).map_err(|e| Failure::Usage(e.to_string()))?;
    if a.big_m.is_some() {
        ctx.progress("warning: with a user-supplied big-M the model relies on that bound being large enough");
    }
    let model = ilp::build_model(a.n, flags, &collection, &alpha, a.pair, a.big_m)?;
    let text = ilp::emit_lp_text(&model);
    match &a.output {
        Some(path) => {
            fs::write(path, text)?;
            ctx.line(format!(
                "wrote {path}: {} constraints, {} variables",
                model.constraints.len(),
                model.variables().len()
            ))?;
        }
        None => write!(ctx.out, "{text}")?,
    }
    Ok(())
}
