use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use homfold::fixtures::{graphs_up_to_iso, random_descending_closure, random_poset};
use homfold::fold::{first_arg_plan, second_arg_plan, FoldCollapsePlan, Side};
use homfold::poset::PosetJson;
use homfold::simplicial::ComplexJson;
use homfold::{
    collapse_sequence_from_closure, compare_collapse_with, disconnected_graph_fixture, morse_matching_from_closure,
    order_complex, parse_graph, ChainComplex, Coefficients, Direction, ElemId, Error, FacePoset, FoldWitness, Graph,
    HomComplex, Poset, PosetMap, SimplicialComplex, DEFAULT_MAX_CELLS,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

const DEFAULT_MAX_SIMPLICES: u128 = 5_000_000;

#[derive(Parser)]
#[command(name = "homfold", version, about = "Hom complexes of graphs and fold-induced collapses")]
struct Cli {
    /// Worker threads for enumeration and homology (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the cells of Hom(G, H).
    Hom {
        #[command(flatten)]
        pair: GraphPair,
        #[command(flatten)]
        output: Output,
    },
    /// List or apply folds of a graph.
    Fold(FoldArgs),
    /// Emit a collapse plan without executing it.
    Collapse(CollapseArgs),
    /// Betti numbers of a Hom complex, a poset's order complex or a simplicial complex.
    Homology(HomologyArgs),
    /// Build a fold collapse plan, execute it and report the verdict.
    Verify {
        #[command(flatten)]
        plan: PlanArgs,
        #[arg(long, value_enum, default_value = "gf2")]
        coeff: Coeff,
        #[command(flatten)]
        output: Output,
    },
    /// Generate test inputs.
    Gen(GenArgs),
}

#[derive(Args)]
struct GraphPair {
    #[arg(short = 'G', value_name = "FILE")]
    g: PathBuf,
    #[arg(short = 'H', value_name = "FILE")]
    h: PathBuf,
    #[arg(long, default_value_t = DEFAULT_MAX_CELLS)]
    max_cells: usize,
}

#[derive(Args)]
struct Output {
    /// Write JSON to this file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print JSON on standard output (the summary goes to standard error).
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct FoldArgs {
    #[arg(short = 'G', value_name = "FILE")]
    g: PathBuf,
    /// Print every fold witness `[v, u]`.
    #[arg(long, conflicts_with = "apply")]
    list: bool,
    /// Delete this vertex.
    #[arg(long, value_name = "V")]
    apply: Option<usize>,
    /// Vertex dominating the deleted one (default: the smallest that works).
    #[arg(long)]
    u: Option<usize>,
    /// Where to write the folded graph (default: standard output).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Where to write the relabeling JSON (default: a `# relabel` comment line).
    #[arg(long)]
    relabel_out: Option<PathBuf>,
}

#[derive(Args)]
struct PlanArgs {
    #[command(flatten)]
    pair: GraphPair,
    /// Vertex of G to fold away.
    #[arg(long)]
    fold_vertex: usize,
    #[arg(long)]
    u: Option<usize>,
    #[arg(long, value_enum, default_value = "first")]
    side: SideArg,
    /// Comma-separated order of V(H) for the second side (default: identity).
    #[arg(long, value_delimiter = ',')]
    order: Option<Vec<usize>>,
    /// Refuse first-side plans whose subdivision exceeds this many simplices.
    #[arg(long, default_value_t = DEFAULT_MAX_SIMPLICES)]
    max_simplices: u128,
}

#[derive(Args)]
struct CollapseArgs {
    #[arg(short = 'G', value_name = "FILE", requires_all = ["h", "fold_vertex"])]
    g: Option<PathBuf>,
    #[arg(short = 'H', value_name = "FILE", requires = "g")]
    h: Option<PathBuf>,
    #[arg(long, requires = "g")]
    fold_vertex: Option<usize>,
    #[arg(long)]
    u: Option<usize>,
    #[arg(long, value_enum, default_value = "first")]
    side: SideArg,
    #[arg(long, value_delimiter = ',')]
    order: Option<Vec<usize>>,
    #[arg(long, default_value_t = DEFAULT_MAX_CELLS)]
    max_cells: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_SIMPLICES)]
    max_simplices: u128,
    /// Poset JSON for a closure-operator collapse instead of a fold plan.
    #[arg(long, conflicts_with = "g", requires = "map")]
    poset: Option<PathBuf>,
    /// Map JSON: a list of `[x, phi(x)]` id pairs.
    #[arg(long, requires = "poset")]
    map: Option<PathBuf>,
    #[arg(long, default_value = "descending")]
    direction: Direction,
    /// Emit the acyclic matching instead of a collapse sequence.
    #[arg(long, requires = "poset")]
    matching: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct HomologyArgs {
    #[arg(short = 'G', value_name = "FILE", requires = "h")]
    g: Option<PathBuf>,
    #[arg(short = 'H', value_name = "FILE", requires = "g")]
    h: Option<PathBuf>,
    /// Poset JSON; homology of its order complex.
    #[arg(long, conflicts_with_all = ["g", "complex"])]
    poset: Option<PathBuf>,
    /// Simplicial complex JSON.
    #[arg(long, conflicts_with_all = ["g", "poset"])]
    complex: Option<PathBuf>,
    /// For Hom complexes, compute on the order complex of the cell poset.
    #[arg(long)]
    subdivide: bool,
    #[arg(long, value_enum, default_value = "gf2")]
    coeff: Coeff,
    #[arg(long, default_value_t = DEFAULT_MAX_CELLS)]
    max_cells: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct GenArgs {
    #[arg(value_enum)]
    kind: GenKind,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    count: usize,
    /// Largest poset size, vertex count for graphs and the fixture.
    #[arg(long, default_value_t = 4)]
    size: usize,
    /// Directory for graph files; otherwise JSON goes to standard output.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Coeff {
    Gf2,
    Integer,
}

impl From<Coeff> for Coefficients {
    fn from(c: Coeff) -> Self {
        match c {
            Coeff::Gf2 => Coefficients::Gf2,
            Coeff::Integer => Coefficients::Integer,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    First,
    Second,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    /// Random posets with random descending closure operators.
    Closure,
    /// All graphs on `--size` vertices up to isomorphism.
    Graphs,
    /// The disconnected-graphs poset on `--size` vertices with its closure map.
    Fixture,
}

/// Failures sorted into exit codes.
enum Failure {
    Input(anyhow::Error),
    Resource(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast_ref::<Error>() {
            Some(Error::ResourceLimit { .. } | Error::TooLarge { .. } | Error::Overflow) => Failure::Resource(e),
            _ => Failure::Input(e),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let outcome = match cli.command {
        Command::Hom { pair, output } => cmd_hom(&pair, &output),
        Command::Fold(args) => cmd_fold(&args),
        Command::Collapse(args) => cmd_collapse(&args),
        Command::Homology(args) => cmd_homology(&args),
        Command::Verify { plan, coeff, output } => cmd_verify(&plan, coeff.into(), &output),
        Command::Gen(args) => cmd_gen(&args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Resource(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_graph(path: &Path) -> anyhow::Result<Graph> {
    parse_graph(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    serde_json::from_str(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn write(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Summary lines to standard output, or to standard error under `--json`.
fn emit(output: &Output, summary: &str, payload: &impl serde::Serialize) -> Result<(), Failure> {
    let text = serde_json::to_string(payload).expect("serializable");
    if output.json {
        eprint!("{summary}");
        println!("{text}");
    } else {
        print!("{summary}");
    }
    if let Some(path) = &output.out {
        write(path, &format!("{text}\n"))?;
    }
    Ok(())
}

fn enumerate(g: &Graph, h: &Graph, max_cells: usize) -> Result<HomComplex, Failure> {
    Ok(HomComplex::enumerate(g, h, max_cells)?)
}

fn cmd_hom(pair: &GraphPair, output: &Output) -> Outcome {
    let (g, h) = (read_graph(&pair.g)?, read_graph(&pair.h)?);
    let hom = enumerate(&g, &h, pair.max_cells)?;
    let summary = format!("cells: {}\nf-vector: {:?}\n", hom.len(), hom.f_vector());
    emit(output, &summary, &hom.to_json())?;
    Ok(true)
}

fn cmd_fold(args: &FoldArgs) -> Outcome {
    let g = read_graph(&args.g)?;
    if args.list {
        let pairs: Vec<[usize; 2]> = g.find_folds().iter().map(|w| [w.v, w.u]).collect();
        println!("{}", serde_json::to_string(&pairs).expect("serializable"));
        return Ok(true);
    }
    let Some(v) = args.apply else {
        return Err(Failure::Input(anyhow::anyhow!("one of --list or --apply is required")));
    };
    let w = witness(&g, v, args.u)?;
    let fold = g.apply_fold(w)?;
    let relabel = json!({ "v": w.v, "u": w.u, "relabel": fold.relabel });
    let relabel = serde_json::to_string(&relabel).expect("serializable");
    let mut text = fold.folded.to_text();
    match &args.relabel_out {
        Some(path) => write(path, &format!("{relabel}\n"))?,
        None => text = format!("# relabel {relabel}\n{text}"),
    }
    match &args.out {
        Some(path) => write(path, &text)?,
        None => print!("{text}"),
    }
    Ok(true)
}

fn witness(g: &Graph, v: usize, u: Option<usize>) -> Result<FoldWitness, Failure> {
    let w = match u {
        Some(u) => FoldWitness { v, u },
        None => {
            if v < g.n() && g.is_stiff() {
                return Err(Error::Stiff.into());
            }
            g.fold_for(v)?
        }
    };
    g.check_witness(w)?;
    Ok(w)
}

struct Built {
    hom: HomComplex,
    plan: FoldCollapsePlan,
    target_cells: usize,
    bd: Option<SimplicialComplex>,
}

fn build_plan(args: &PlanArgs, want_bd: bool) -> Result<Built, Failure> {
    let (g, h) = (read_graph(&args.pair.g)?, read_graph(&args.pair.h)?);
    let w = witness(&g, args.fold_vertex, args.u)?;
    let folded = g.apply_fold(w)?.folded;
    match args.side {
        SideArg::First => {
            let hom = enumerate(&g, &h, args.pair.max_cells)?;
            let simplices = hom.poset().chain_count();
            if simplices > args.max_simplices {
                return Err(Error::TooLarge { what: "Bd Hom(G, H)", count: simplices, limit: args.max_simplices }.into());
            }
            let target_cells = enumerate(&folded, &h, args.pair.max_cells)?.len();
            let plan = first_arg_plan(&hom, w)?;
            let bd = want_bd.then(|| order_complex(hom.poset()));
            Ok(Built { hom, plan, target_cells, bd })
        }
        SideArg::Second => {
            let hom = enumerate(&h, &g, args.pair.max_cells)?;
            let target_cells = enumerate(&h, &folded, args.pair.max_cells)?.len();
            let order: Vec<usize> = args.order.clone().unwrap_or_else(|| (0..h.n()).collect());
            let plan = second_arg_plan(&hom, w, &order)?;
            Ok(Built { hom, plan, target_cells, bd: None })
        }
    }
}

fn pairs_json(p: &FacePoset, map: &PosetMap) -> Vec<[ElemId; 2]> {
    map.pairs(p).into_iter().map(|(a, b)| [a, b]).collect()
}

fn cmd_collapse(args: &CollapseArgs) -> Outcome {
    let text = if let (Some(poset), Some(map)) = (&args.poset, &args.map) {
        let p = FacePoset::from_json(read_json::<PosetJson>(poset)?)?;
        let pairs: Vec<(ElemId, ElemId)> = read_json::<Vec<[ElemId; 2]>>(map)?.into_iter().map(|[a, b]| (a, b)).collect();
        let phi = PosetMap::from_pairs(&p, &pairs)?;
        if args.matching {
            let m = morse_matching_from_closure(&p, &phi)?;
            serde_json::to_string(&m).expect("serializable")
        } else {
            let seq = collapse_sequence_from_closure(&p, &phi, args.direction)?;
            serde_json::to_string(&seq).expect("serializable")
        }
    } else if let (Some(g), Some(h), Some(fold_vertex)) = (&args.g, &args.h, args.fold_vertex) {
        let plan = PlanArgs {
            pair: GraphPair { g: g.clone(), h: h.clone(), max_cells: args.max_cells },
            fold_vertex,
            u: args.u,
            side: args.side,
            order: args.order.clone(),
            max_simplices: args.max_simplices,
        };
        serde_json::to_string(&build_plan(&plan, false)?.plan).expect("serializable")
    } else {
        return Err(Failure::Input(anyhow::anyhow!("give -G/-H/--fold-vertex or --poset/--map")));
    };
    match &args.out {
        Some(path) => write(path, &format!("{text}\n"))?,
        None => println!("{text}"),
    }
    Ok(true)
}

fn cmd_homology(args: &HomologyArgs) -> Outcome {
    let coeff = args.coeff.into();
    let b = if let (Some(g), Some(h)) = (&args.g, &args.h) {
        let hom = enumerate(&read_graph(g)?, &read_graph(h)?, args.max_cells)?;
        if args.subdivide {
            homfold::betti(&order_complex(hom.poset()), coeff)?
        } else {
            ChainComplex::cellular(&hom, None).betti(coeff)?
        }
    } else if let Some(path) = &args.poset {
        let p = FacePoset::from_json(read_json::<PosetJson>(path)?)?;
        homfold::betti(&order_complex(&p), coeff)?
    } else if let Some(path) = &args.complex {
        let x = SimplicialComplex::from_json(&read_json::<ComplexJson>(path)?);
        x.validate()?;
        homfold::betti(&x, coeff)?
    } else {
        return Err(Failure::Input(anyhow::anyhow!("give -G/-H, --poset or --complex")));
    };
    let mut summary = format!("betti: {:?}\n", b.betti);
    if matches!(args.coeff, Coeff::Integer) {
        summary.push_str(&format!("torsion: {:?}\n", b.torsion));
    }
    emit(&args.output, &summary, &b)?;
    Ok(true)
}

fn cmd_verify(args: &PlanArgs, coeff: Coefficients, output: &Output) -> Outcome {
    let built = build_plan(args, true)?;
    let ambient = match &built.bd {
        Some(bd) => homfold::Ambient::Simplicial(bd),
        None => homfold::Ambient::Hom(&built.hom),
    };
    let v = compare_collapse_with(ambient, &built.plan.sequence, &built.plan.retained, coeff)?;
    let side = match built.plan.side {
        Side::First => "first",
        Side::Second => "second",
    };
    let mut summary = format!(
        "side: {side}\nwitness: v = {}, u = {}\nambient cells: {}\ntarget cells: {}\nsteps: {}\n",
        built.plan.witness.v,
        built.plan.witness.u,
        built.hom.len(),
        built.target_cells,
        built.plan.sequence.len(),
    );
    summary.push_str(&format!(
        "valid: {}\nremaining matches: {}\neuler invariant: {}\nbetti: {:?} -> {:?}\n",
        v.valid, v.remaining_matches, v.euler_invariant, v.betti_before, v.betti_after
    ));
    if let Some(f) = &v.failure {
        summary.push_str(&format!("failed step {}: {:?}\n", f.index, f.fault));
    }
    summary.push_str(if v.all_pass() { "PASS\n" } else { "FAIL\n" });
    emit(output, &summary, &v)?;
    Ok(v.all_pass())
}

fn cmd_gen(args: &GenArgs) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    match args.kind {
        GenKind::Closure => {
            use rand::Rng;
            let items: Vec<Value> = (0..args.count)
                .map(|_| {
                    let n = rng.gen_range(1..=args.size.max(1));
                    let density = rng.gen_range(0.1..0.7);
                    let p = random_poset(&mut rng, n, density);
                    let phi = random_descending_closure(&mut rng, &p, 100);
                    json!({ "poset": p.to_json(), "map": pairs_json(&p, &phi) })
                })
                .collect();
            println!("{}", serde_json::to_string(&items).expect("serializable"));
        }
        GenKind::Graphs => {
            let graphs = graphs_up_to_iso(args.size)?;
            match &args.out_dir {
                Some(dir) => {
                    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
                    for (i, g) in graphs.iter().enumerate() {
                        write(&dir.join(format!("g{}_{i:03}.g", args.size)), &g.to_text())?;
                    }
                }
                None => {
                    let texts: Vec<String> = graphs.iter().map(Graph::to_text).collect();
                    println!("{}", serde_json::to_string(&texts).expect("serializable"));
                }
            }
        }
        GenKind::Fixture => {
            let (p, phi) = disconnected_graph_fixture(args.size)?;
            println!("{}", json!({ "poset": p.to_json(), "map": pairs_json(&p, &phi) }));
        }
    }
    Ok(true)
}
