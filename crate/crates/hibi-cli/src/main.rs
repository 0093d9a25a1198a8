//! Command-line front end: conic class enumeration, signature tables, NCCR
//! character sets, mutation steps, exchange graphs, and a property checker.

use clap::{Args, Parser, Subcommand, ValueEnum};
use hibi::classgroup::{class_group_rank, DivisorClass};
use hibi::conic::{cell_of, conic_polytope, cotree_box, enumerate_conic, oracle_sweep, Cell};
use hibi::geometry::signature_table;
use hibi::hasse::{choose_spanning_tree, random_spanning_tree, SpanningTree};
use hibi::lp::{LinearConstraint, Sense};
use hibi::mutation::{exchange_graph, find_admissible_lambda, NccrSet};
use hibi::poset::{augment, parse_poset, AugmentedPoset, Poset};
use hibi::rational::to_f64;
use hibi::segre::{
    l_tilde, nccr_set, segre_conic_closed_form, segre_poset, segre_tree, Character, SegreSpec,
};
use rand::SeedableRng;
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "hibi",
    version,
    about = "Exact conic divisor classes, cell volumes, and NCCR mutations of Hibi rings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the conic classes and their half-open cells
    Conic(CommonArgs),
    /// Exact cell volumes (generalized F-signatures) per conic class
    Fsig(CommonArgs),
    /// NCCR character set, conic set, and envelope of a Segre product
    Nccr(CommonArgs),
    /// Apply one mutation to the NCCR character set
    Mutate {
        #[command(flatten)]
        common: CommonArgs,
        /// Character to mutate, comma-separated coordinates
        #[arg(long, value_name = "C1,C2,...", allow_hyphen_values = true)]
        at: String,
        /// Apply the left mutation instead of the right one
        #[arg(long)]
        left: bool,
    },
    /// Exchange graph of generators under mutation
    Graph(CommonArgs),
    /// Run the property suite on the input poset
    Check(CommonArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
}

#[derive(Args)]
struct CommonArgs {
    /// Poset document (JSON with "elements" and "covers")
    #[arg(long, value_name = "FILE")]
    poset: Option<PathBuf>,
    /// Disjoint-chain poset from comma-separated chain lengths
    #[arg(long, value_name = "R1,R2,...")]
    segre: Option<String>,
    /// Uniform Segre product, written r=R,t=T
    #[arg(long = "segre-nccr", value_name = "r=R,t=T")]
    segre_nccr: Option<String>,
    /// Spanning tree override as comma-separated edge names
    #[arg(long, value_name = "e1,e2,...")]
    tree: Option<String>,
    /// Output format (defaults per subcommand)
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write output here instead of stdout
    #[arg(short, long, value_name = "FILE")]
    output: Option<PathBuf>,
    /// Vertex cap for the graph search
    #[arg(long, default_value_t = 10_000)]
    cap: usize,
    /// Worker threads for data-parallel sweeps (default: all cores)
    #[arg(long)]
    jobs: Option<usize>,
}

enum CliError {
    /// Bad input: malformed poset, flags, or files (exit 2).
    Input(String),
    /// Mathematically infeasible request (exit 3).
    Infeasible(String),
    /// The vertex cap truncated the graph; partial output was written (exit 4).
    Truncated,
    /// Property check failed (exit 1).
    CheckFailed,
    /// IO or internal failure (exit 1).
    Other(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Infeasible(_) => 3,
            CliError::Truncated => 4,
            CliError::CheckFailed | CliError::Other(_) => 1,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Input(m) => eprintln!("error: {m}"),
                CliError::Infeasible(m) => eprintln!("error: {m}"),
                CliError::Truncated => eprintln!("warning: vertex cap reached, output truncated"),
                CliError::CheckFailed => eprintln!("error: property checks failed"),
                CliError::Other(m) => eprintln!("error: {m}"),
            }
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let common = match &cli.command {
        Command::Conic(c)
        | Command::Fsig(c)
        | Command::Nccr(c)
        | Command::Graph(c)
        | Command::Check(c) => c,
        Command::Mutate { common, .. } => common,
    };
    if let Some(jobs) = common.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| CliError::Other(e.to_string()))?;
    }
    match cli.command {
        Command::Conic(args) => conic_cmd(&args),
        Command::Fsig(args) => fsig_cmd(&args),
        Command::Nccr(args) => nccr_cmd(&args),
        Command::Mutate { common, at, left } => mutate_cmd(&common, &at, left),
        Command::Graph(args) => graph_cmd(&args),
        Command::Check(args) => check_cmd(&args),
    }
}

/// Resolved poset input: the poset plus the Segre structure when the input
/// was one.
struct Input {
    poset: Poset,
    spec: Option<SegreSpec>,
}

fn parse_segre_lengths(text: &str) -> Result<SegreSpec, CliError> {
    let lengths: Vec<usize> = text
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Input(format!("bad chain lengths {text:?}")))?;
    SegreSpec::from_chain_lengths(&lengths).map_err(|e| CliError::Input(e.to_string()))
}

fn parse_segre_nccr(text: &str) -> Result<SegreSpec, CliError> {
    let mut r = None;
    let mut t = None;
    for part in text.split(',') {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| CliError::Input(format!("bad clause {part:?}, want r=R,t=T")))?;
        let value: usize = value
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("bad number in {part:?}")))?;
        match key.trim() {
            "r" => r = Some(value),
            "t" => t = Some(value),
            other => return Err(CliError::Input(format!("unknown key {other:?}"))),
        }
    }
    let (r, t) = r
        .zip(t)
        .ok_or_else(|| CliError::Input("need both r= and t=".into()))?;
    SegreSpec::uniform(t, r).map_err(|e| CliError::Input(e.to_string()))
}

fn resolve_input(args: &CommonArgs) -> Result<Input, CliError> {
    let sources =
        args.poset.is_some() as u8 + args.segre.is_some() as u8 + args.segre_nccr.is_some() as u8;
    if sources != 1 {
        return Err(CliError::Input(
            "give exactly one of --poset, --segre, --segre-nccr".into(),
        ));
    }
    if let Some(path) = &args.poset {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let poset = parse_poset(&text).map_err(|e| CliError::Input(e.to_string()))?;
        return Ok(Input { poset, spec: None });
    }
    let spec = if let Some(lengths) = &args.segre {
        parse_segre_lengths(lengths)?
    } else {
        parse_segre_nccr(args.segre_nccr.as_ref().expect("validated above"))?
    };
    Ok(Input { poset: segre_poset(&spec), spec: Some(spec) })
}

fn resolve_tree(
    args: &CommonArgs,
    input: &Input,
    ap: &AugmentedPoset,
) -> Result<SpanningTree, CliError> {
    if let Some(text) = &args.tree {
        let mut edges = Vec::new();
        for token in text.split(',') {
            let token = token.trim();
            let index: usize = token
                .strip_prefix('e')
                .unwrap_or(token)
                .parse()
                .map_err(|_| CliError::Input(format!("bad edge name {token:?}")))?;
            if index == 0 || index > ap.n() {
                return Err(CliError::Input(format!("edge {token:?} out of range")));
            }
            edges.push(index - 1);
        }
        return choose_spanning_tree(ap, Some(&edges)).map_err(|e| CliError::Input(e.to_string()));
    }
    // Segre inputs default to the fixture tree whose coordinates match the
    // closed forms; everything else gets the deterministic search tree.
    match &input.spec {
        Some(spec) => Ok(segre_tree(spec, ap)),
        None => choose_spanning_tree(ap, None).map_err(|e| CliError::Other(e.to_string())),
    }
}

fn emit(args: &CommonArgs, text: &str) -> Result<(), CliError> {
    match &args.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Other(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pick_format(args: &CommonArgs, default: Format, allowed: &[Format]) -> Result<Format, CliError> {
    let format = args.format.unwrap_or(default);
    if allowed.contains(&format) {
        Ok(format)
    } else {
        Err(CliError::Input("format not supported by this subcommand".into()))
    }
}

fn sense_str(sense: Sense) -> &'static str {
    match sense {
        Sense::Le => "<=",
        Sense::Lt => "<",
        Sense::Ge => ">=",
        Sense::Gt => ">",
        Sense::Eq => "=",
    }
}

fn constraint_json(c: &LinearConstraint) -> Value {
    json!({
        "coeffs": c.coeffs.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        "sense": sense_str(c.sense),
        "bound": c.bound.to_string(),
    })
}

fn cell_json(cell: &Cell) -> Value {
    json!({
        "dim": cell.ambient_dim,
        "constraints": cell.constraints.iter().map(constraint_json).collect::<Vec<_>>(),
    })
}

fn poset_json(poset: &Poset) -> Value {
    json!({
        "elements": poset.labels(),
        "covers": poset
            .covers()
            .iter()
            .map(|&(a, b)| vec![poset.label(a).to_string(), poset.label(b).to_string()])
            .collect::<Vec<_>>(),
    })
}

fn tree_json(ap: &AugmentedPoset, tree: &SpanningTree) -> Value {
    Value::Array(
        tree.tree_edges()
            .iter()
            .map(|&e| Value::String(ap.edge_name(e)))
            .collect(),
    )
}

fn class_text(class: &[i64]) -> String {
    class
        .iter()
        .map(i64::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn conic_cmd(args: &CommonArgs) -> Result<(), CliError> {
    let format = pick_format(args, Format::Json, &[Format::Json, Format::Csv])?;
    let input = resolve_input(args)?;
    let ap = augment(input.poset.clone());
    let tree = resolve_tree(args, &input, &ap)?;
    let classes = enumerate_conic(&ap, &tree);
    let text = match format {
        Format::Json => {
            let system = conic_polytope(&ap, &tree);
            let value = json!({
                "poset": poset_json(&input.poset),
                "n": ap.n(),
                "d": ap.d(),
                "rank": class_group_rank(&ap),
                "tree": tree_json(&ap, &tree),
                "circuit_bounds": system.bounds.iter().map(|b| json!({
                    "coeffs": b.coeffs,
                    "lower": b.lower,
                    "upper": b.upper,
                })).collect::<Vec<_>>(),
                "classes": classes.iter().map(|c| json!({
                    "class": c.coords,
                    "cell": cell_json(&cell_of(c, &ap, &tree)),
                })).collect::<Vec<_>>(),
            });
            format!("{}\n", serde_json::to_string_pretty(&value).expect("serializable"))
        }
        _ => {
            let mut out = String::from("class\n");
            for c in &classes {
                let _ = writeln!(out, "{}", class_text(&c.coords));
            }
            out
        }
    };
    emit(args, &text)
}

fn fsig_cmd(args: &CommonArgs) -> Result<(), CliError> {
    let format = pick_format(args, Format::Csv, &[Format::Csv, Format::Json])?;
    let input = resolve_input(args)?;
    let ap = augment(input.poset.clone());
    let tree = resolve_tree(args, &input, &ap)?;
    let table = signature_table(&ap, &tree).map_err(|e| CliError::Other(e.to_string()))?;
    let text = match format {
        Format::Csv => {
            let mut out = String::from("class,volume,approx\n");
            for (class, vol) in &table.entries {
                let _ = writeln!(
                    out,
                    "{},{},{:.12}",
                    class_text(&class.coords),
                    vol,
                    to_f64(vol)
                );
            }
            out
        }
        _ => {
            let value = json!({
                "tree": tree_json(&ap, &tree),
                "signatures": table.entries.iter().map(|(c, v)| json!({
                    "class": c.coords,
                    "volume": v.to_string(),
                    "approx": to_f64(v),
                })).collect::<Vec<_>>(),
                "total": table.total().to_string(),
            });
            format!("{}\n", serde_json::to_string_pretty(&value).expect("serializable"))
        }
    };
    emit(args, &text)
}

fn require_spec(input: &Input) -> Result<&SegreSpec, CliError> {
    input.spec.as_ref().ok_or_else(|| {
        CliError::Input("this subcommand needs --segre or --segre-nccr input".into())
    })
}

fn nccr_cmd(args: &CommonArgs) -> Result<(), CliError> {
    pick_format(args, Format::Json, &[Format::Json])?;
    let input = resolve_input(args)?;
    let spec = require_spec(&input)?;
    let l = nccr_set(spec).map_err(|e| CliError::Infeasible(e.to_string()))?;
    let envelope = l_tilde(spec).map_err(|e| CliError::Infeasible(e.to_string()))?;
    let value = json!({
        "t": spec.t(),
        "r": spec.factor_dimension(),
        "L": l.iter().map(|c| c.0.clone()).collect::<Vec<_>>(),
        "conic": segre_conic_closed_form(spec).iter().map(|c| c.0.clone()).collect::<Vec<_>>(),
        "L_tilde": envelope.iter().map(|c| c.0.clone()).collect::<Vec<_>>(),
    });
    emit(args, &format!("{}\n", serde_json::to_string_pretty(&value).expect("serializable")))
}

fn parse_character(text: &str, rank: usize) -> Result<Character, CliError> {
    let coords: Vec<i64> = text
        .split(',')
        .map(|s| s.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Input(format!("bad character {text:?}")))?;
    if coords.len() != rank {
        return Err(CliError::Input(format!(
            "character has {} coordinates, expected {rank}",
            coords.len()
        )));
    }
    Ok(Character(coords))
}

fn mutate_cmd(args: &CommonArgs, at: &str, left: bool) -> Result<(), CliError> {
    let input = resolve_input(args)?;
    let spec = require_spec(&input)?;
    let chi = parse_character(at, spec.t() - 1)?;
    let l = NccrSet::new(nccr_set(spec).map_err(|e| CliError::Infeasible(e.to_string()))?)
        .expect("NCCR set is nonempty");
    let (search_set, search_chi) = if left {
        (l.negated(), chi.negated())
    } else {
        (l.clone(), chi.clone())
    };
    let found = find_admissible_lambda(&search_set, &search_chi, spec)
        .map_err(|e| CliError::Infeasible(e.to_string()))?;
    let Some(adm) = found else {
        return Err(CliError::Infeasible(format!(
            "no admissible one-parameter subgroup at {at}"
        )));
    };
    let (lambda, nu, result) = if left {
        let lambda = adm.lambda.negated();
        let result = hibi::mutation::left_mutation(&l, &chi, &lambda, spec)
            .map_err(|e| CliError::Infeasible(e.to_string()))?;
        (lambda, adm.nu.negated(), result)
    } else {
        let result = hibi::mutation::right_mutation(&l, &chi, &adm.lambda, spec)
            .map_err(|e| CliError::Infeasible(e.to_string()))?;
        (adm.lambda.clone(), adm.nu.clone(), result)
    };
    let value = json!({
        "direction": if left { "left" } else { "right" },
        "chi": chi.0,
        "lambda": lambda.0.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        "positive_weights": adm.positive_weights.iter().map(|&b| b + 1).collect::<Vec<_>>(),
        "nu": nu.0,
        "set": result.chars().iter().map(|c| c.0.clone()).collect::<Vec<_>>(),
    });
    emit(args, &format!("{}\n", serde_json::to_string_pretty(&value).expect("serializable")))
}

fn graph_cmd(args: &CommonArgs) -> Result<(), CliError> {
    let format = pick_format(args, Format::Dot, &[Format::Dot, Format::Json])?;
    let input = resolve_input(args)?;
    let spec = require_spec(&input)?;
    let l0 = NccrSet::new(nccr_set(spec).map_err(|e| CliError::Infeasible(e.to_string()))?)
        .expect("NCCR set is nonempty");
    let graph = exchange_graph(&l0, spec, args.cap).map_err(|e| CliError::Other(e.to_string()))?;
    let text = match format {
        Format::Dot => {
            let mut out = String::from("graph exchange {\n");
            for (i, v) in graph.vertices.iter().enumerate() {
                let label = v
                    .chars()
                    .iter()
                    .map(|c| {
                        format!(
                            "({})",
                            c.0.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
                        )
                    })
                    .collect::<Vec<_>>()
                    .join(" ");
                let _ = writeln!(out, "  v{i} [label=\"{label}\"];");
            }
            for e in &graph.edges {
                let _ = writeln!(out, "  v{} -- v{};", e.a, e.b);
            }
            out.push_str("}\n");
            out
        }
        _ => {
            let value = json!({
                "vertices": graph.vertices.iter().map(|v| {
                    v.chars().iter().map(|c| c.0.clone()).collect::<Vec<_>>()
                }).collect::<Vec<_>>(),
                "edges": graph.edges.iter().map(|e| json!({
                    "a": e.a,
                    "b": e.b,
                    "chi": e.chi.0,
                })).collect::<Vec<_>>(),
                "truncated": graph.truncated,
            });
            format!("{}\n", serde_json::to_string_pretty(&value).expect("serializable"))
        }
    };
    emit(args, &text)?;
    if graph.truncated {
        return Err(CliError::Truncated);
    }
    Ok(())
}

fn check_cmd(args: &CommonArgs) -> Result<(), CliError> {
    let input = resolve_input(args)?;
    let ap = augment(input.poset.clone());
    let tree = resolve_tree(args, &input, &ap)?;
    let mut out = String::new();
    let mut all_ok = true;
    let record = |name: &str, ok: bool, out: &mut String, all_ok: &mut bool| {
        let _ = writeln!(out, "check {name}: {}", if ok { "ok" } else { "FAIL" });
        *all_ok &= ok;
    };

    let enumerated = enumerate_conic(&ap, &tree);
    let narrow = oracle_sweep(&ap, &tree, &cotree_box(&ap, &tree));
    record(
        "oracle equivalence (cotree box)",
        enumerated == narrow,
        &mut out,
        &mut all_ok,
    );

    let rank = class_group_rank(&ap);
    let d = ap.d() as i64;
    let wide = oracle_sweep(&ap, &tree, &vec![(-d, d); rank]);
    record(
        "oracle equivalence (dimension box)",
        enumerated == wide,
        &mut out,
        &mut all_ok,
    );

    let table = signature_table(&ap, &tree).map_err(|e| CliError::Other(e.to_string()))?;
    record(
        "volumes sum to 1",
        table.total() == hibi::rational::rat(1),
        &mut out,
        &mut all_ok,
    );

    let mut base: Vec<_> = table.entries.iter().map(|(_, v)| v.clone()).collect();
    base.sort();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
    let mut independent = true;
    for _ in 0..3 {
        let other_tree = random_spanning_tree(&ap, &mut rng);
        let other =
            signature_table(&ap, &other_tree).map_err(|e| CliError::Other(e.to_string()))?;
        let mut volumes: Vec<_> = other.entries.iter().map(|(_, v)| v.clone()).collect();
        volumes.sort();
        independent &= volumes == base && other.entries.len() == table.entries.len();
    }
    record(
        "tree independence (3 random trees)",
        independent,
        &mut out,
        &mut all_ok,
    );

    let zero = DivisorClass::zero(rank);
    record(
        "zero class is conic",
        enumerated.contains(&zero) && cell_of(&zero, &ap, &tree).is_nonempty(),
        &mut out,
        &mut all_ok,
    );

    emit(args, &out)?;
    if all_ok {
        Ok(())
    } else {
        Err(CliError::CheckFailed)
    }
}
