//! The `cist` command line. JSON goes to stdout, diagnostics to stderr.
//!
//! Exit codes: 0 affirmative or valid, 1 negative or invalid, 2 usage or
//! input error, 3 size guard exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::bounds::{check_all, connectivity_bound, sweep, SweepClass, Verdict};
use crate::construct::{
    bipartite_max_ridst, bipartite_ridst_size, linkage_host_graph, min_cut_pendant_cist, minimal_cut_components,
    partition_to_trees, trees_to_partition, PartitionCertificate,
};
use crate::darbor::{
    build_directed_r_minor_ids, check_cisa_partition, cisa_to_partition, contract_rcist_to_cisa,
    expand_cisa_to_rcist, find_expandable_cisa, ghouila_houri_cisa, oracle_max_cisa_by, partition_to_cisa,
    CisaPartition, DirectedRMinor, MinorDocument,
};
use crate::digraph::{DiGraph, InteriorRule};
use crate::error::{Error, Result};
use crate::gen::{generate, Family, GenParams};
use crate::graph::{MultiGraph, TerminalSet};
use crate::io::{
    arborescence_document, digraph_document, family_document, graph_document, parse_arborescences, parse_family,
    parse_graph, parse_partition, to_json,
};
use crate::solver::{find_dominating_family, oracle_max, solve_rcist, OracleNotion, OracleOptions, SolveOptions, TreeFilter};
use crate::transform::{
    hardness_reduce, lift_family, map_cist_to_dst, map_dst_to_cist, project_family, repair_idst_to_cist, simp,
    tilde_gr, TransformTrace,
};
use crate::tree::TreeFamily;
use crate::verify::{
    verify_cisa_by, verify_cist, verify_rcist_definitional, verify_rcist_structural, verify_rdst, verify_ridst,
};

#[derive(Debug, Parser)]
#[command(name = "cist", version, about = "Completely independent Steiner trees and spanning arborescences")]
struct Cli {
    /// Seed for the random instance families.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Evaluate candidates and sweeps on one thread, in a fixed order.
    #[arg(long, global = true)]
    sequential: bool,
    /// Lift the desk-scale size guards.
    #[arg(long, global = true)]
    force: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Accept disconnected input graphs.
    #[arg(long, global = true)]
    allow_disconnected: bool,
    /// Also write the run manifest (flags, input digests, seed, version) to this file.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a tree or arborescence family against a disjointness notion.
    Verify(VerifyArgs),
    /// Decide whether an R-CIST of size k exists (template algorithm).
    Solve(SolveArgs),
    /// Exhaustive maximum R-CIST, R-DST or R-IDST.
    Oracle(OracleArgs),
    /// The R-DST to R-CIST hardness reduction, optionally mapping a family.
    Reduce(ReduceArgs),
    /// Graph rewrites and the maps that carry families through them.
    Transform(TransformArgs),
    /// Explicit constructions.
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Upper bounds, falsification sweeps and the connectivity threshold.
    Bounds(BoundsArgs),
    /// CISA partitions and constructions on digraphs.
    #[command(subcommand)]
    Cisa(CisaCmd),
    /// Directed R-minors: build, contract an R-CIST, expand a CISA.
    #[command(subcommand)]
    Minor(MinorCmd),
    /// Generate an instance document.
    Gen(GenArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VerifyNotion {
    Rcist,
    RcistDefinitional,
    Rdst,
    Ridst,
    Cist,
    Cisa,
    CisaDegree,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Tree family (or arborescence family for the CISA notions).
    #[arg(long, visible_alias = "family")]
    trees: PathBuf,
    #[arg(long, value_enum, default_value_t = VerifyNotion::Rcist)]
    notion: VerifyNotion,
}

#[derive(Debug, Args)]
struct FilterArgs {
    #[arg(long, conflicts_with = "nonpendant_only")]
    pendant_only: bool,
    #[arg(long)]
    nonpendant_only: bool,
}

impl FilterArgs {
    fn filter(&self) -> TreeFilter {
        match (self.pendant_only, self.nonpendant_only) {
            (true, _) => TreeFilter::PendantOnly,
            (_, true) => TreeFilter::NonPendantOnly,
            _ => TreeFilter::All,
        }
    }
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(short)]
    k: usize,
    #[command(flatten)]
    filter: FilterArgs,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_enum, default_value_t = NotionArg::Rcist)]
    notion: NotionArg,
    #[command(flatten)]
    filter: FilterArgs,
    /// Stop once a family of this size is found.
    #[arg(long)]
    target: Option<usize>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum NotionArg {
    Rcist,
    Rdst,
    Ridst,
}

#[derive(Debug, Args)]
struct ReduceArgs {
    #[arg(long)]
    graph: PathBuf,
    /// An R-DST of the input graph, mapped to an R-CIST of the reduced graph.
    #[arg(long)]
    family: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(args_conflicts_with_subcommands = true)]
struct TransformArgs {
    #[arg(long, value_enum)]
    kind: Option<KindArg>,
    #[arg(long)]
    graph: Option<PathBuf>,
    #[command(subcommand)]
    action: Option<TransformCmd>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Tilde,
    Simp,
    Hardness,
}

#[derive(Debug, Subcommand)]
enum TransformCmd {
    /// Carry a family of the source graph onto the target graph.
    Lift {
        #[arg(long)]
        trace: PathBuf,
        #[arg(long)]
        family: PathBuf,
    },
    /// Carry a family of the target graph back onto the source graph.
    Project {
        #[arg(long)]
        trace: PathBuf,
        #[arg(long)]
        family: PathBuf,
    },
    /// Solution maps of the hardness reduction (R-DST to R-CIST, or back).
    MapSolution {
        #[arg(long)]
        trace: PathBuf,
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        backward: bool,
    },
    /// Turn an R-IDST into an R-CIST of the same size by parallel-edge swaps.
    Repair {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        family: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
enum ConstructCmd {
    /// Maximum R-IDST of a complete bipartite graph.
    Bipartite {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        ra: usize,
        #[arg(long)]
        rb: usize,
    },
    /// Pendant R-CIST from a minimal vertex cut R.
    Mincut {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Connected R-dominating partitions and R-CISTs, either way round.
    Partition {
        #[arg(long)]
        graph: PathBuf,
        /// Certificate to turn into trees.
        #[arg(long, conflicts_with_all = ["family", "k"])]
        certificate: Option<PathBuf>,
        /// R-CIST to turn into a certificate.
        #[arg(long, conflicts_with = "k")]
        family: Option<PathBuf>,
        /// Search for a certificate with k subsets.
        #[arg(short)]
        k: Option<usize>,
    },
    /// The linkage host graph with its pendant/non-pendant star witness.
    Host {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        r: usize,
    },
}

#[derive(Debug, Args)]
#[command(args_conflicts_with_subcommands = true)]
struct BoundsArgs {
    #[arg(long)]
    graph: Option<PathBuf>,
    /// R-CIST to check; defaults to an oracle maximum.
    #[arg(long)]
    family: Option<PathBuf>,
    #[command(subcommand)]
    action: Option<BoundsCmd>,
}

#[derive(Debug, Subcommand)]
enum BoundsCmd {
    /// Exhaustive search for bound violations on small graphs.
    Sweep {
        #[arg(long, value_enum)]
        class: SweepClass,
        #[arg(long)]
        max_n: usize,
        /// Also run every instance with its terminal-terminal edges doubled
        /// (default: on for planar, off for tw2).
        #[arg(long, num_args = 0..=1, default_missing_value = "true")]
        doubled: Option<bool>,
    },
    /// The connectivity that makes a graph host-linked.
    Threshold {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        r: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum InteriorArg {
    OutArc,
    Degree,
}

#[derive(Debug, Subcommand)]
enum CisaCmd {
    /// Test a vertex partition against the CISA partition conditions.
    Check {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        partition: PathBuf,
    },
    /// Build one spanning arborescence per block of a valid partition.
    Build {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        partition: PathBuf,
    },
    /// Size-2 CISA from a Hamiltonian cycle when the semi-degree allows it.
    Ghouila {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Exhaustive maximum CISA.
    Oracle {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = InteriorArg::OutArc)]
        interior: InteriorArg,
    },
    /// The partition induced by a CISA.
    Partition {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        cisa: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
enum MinorCmd {
    /// The directed R-minor of a block partition.
    Build {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        partition: PathBuf,
    },
    /// Contract an R-CIST into a minor carrying a CISA of the same size.
    Contract {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        family: PathBuf,
    },
    /// Expand a CISA of a minor into an R-CIST.
    Expand {
        #[arg(long)]
        graph: PathBuf,
        /// Minor document (its blocks are used).
        #[arg(long)]
        minor: PathBuf,
        /// Arborescence family on the minor; defaults to the minor document.
        #[arg(long)]
        cisa: Option<PathBuf>,
    },
    /// Search all minors for a size-k CISA that expands to an R-CIST.
    Search {
        #[arg(long)]
        graph: PathBuf,
        #[arg(short)]
        k: usize,
    },
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Vertex count (kn and the random families).
    #[arg(long)]
    n: Option<usize>,
    /// Terminal count (kn, random families), or terminals in the host graph.
    #[arg(long)]
    r: Option<usize>,
    /// Side sizes of kpq, or pendant and non-pendant counts of the host graph.
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    /// Terminals on each side of kpq.
    #[arg(long)]
    ra: Option<usize>,
    #[arg(long)]
    rb: Option<usize>,
    /// Edge multiplicity of hi.
    #[arg(long)]
    i: Option<usize>,
    /// Extra edge attempts for the random undirected families.
    #[arg(long)]
    extra: Option<usize>,
    /// Arc probability for random digraphs; without it the digraph has
    /// minimum semi-degree at least n/2.
    #[arg(long)]
    density: Option<f64>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

/// What a run depended on. Equal manifests give byte-identical output in
/// sequential mode.
#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RunManifest {
    pub subcommand: String,
    pub flags: Vec<String>,
    pub inputs: Vec<InputDigest>,
    pub seed: u64,
    pub sequential: bool,
    pub force: bool,
    pub version: String,
}

struct Ctx {
    seed: u64,
    sequential: bool,
    force: bool,
    allow_disconnected: bool,
    inputs: Vec<InputDigest>,
}

/// A finished command: the JSON document and whether the answer is affirmative.
struct Outcome {
    value: Value,
    affirmative: bool,
}

fn yes(value: Value) -> Result<Outcome> {
    Ok(Outcome { value, affirmative: true })
}

fn answer(value: Value, affirmative: bool) -> Result<Outcome> {
    Ok(Outcome { value, affirmative })
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("documents always serialise")
}

impl Ctx {
    fn read(&mut self, path: &Path) -> Result<Vec<u8>> {
        let bytes = std::fs::read(path)
            .map_err(|e| Error::Parameter(format!("cannot read `{}`: {e}", path.display())))?;
        self.inputs.push(InputDigest {
            path: path.display().to_string(),
            sha256: hex::encode(Sha256::digest(&bytes)),
        });
        Ok(bytes)
    }

    fn instance(&mut self, path: &Path) -> Result<(MultiGraph, TerminalSet)> {
        let bytes = self.read(path)?;
        parse_graph(&bytes, self.allow_disconnected)?.into_instance()
    }

    fn digraph(&mut self, path: &Path) -> Result<DiGraph> {
        let bytes = self.read(path)?;
        parse_graph(&bytes, true)?.into_directed()
    }

    fn family(&mut self, g: &MultiGraph, path: &Path) -> Result<TreeFamily> {
        let bytes = self.read(path)?;
        parse_family(g, &bytes)
    }

    fn trace(&mut self, path: &Path) -> Result<TransformTrace> {
        let bytes = self.read(path)?;
        let value: Value = serde_json::from_slice(&bytes)?;
        let value = match value {
            Value::Object(mut map) if !map.contains_key("kind") && map.contains_key("trace") => {
                map.remove("trace").expect("checked above")
            }
            other => other,
        };
        Ok(serde_json::from_value(value)?)
    }

    fn oracle_options(&self, filter: TreeFilter) -> OracleOptions {
        OracleOptions { filter, force: self.force, target: None }
    }
}

fn with_family(g: &MultiGraph, r: &TerminalSet, f: &TreeFamily) -> Value {
    json!({ "graph": to_value(&graph_document(g, Some(r))), "family": to_value(&family_document(g, f)) })
}

fn verify_cmd(ctx: &mut Ctx, a: &VerifyArgs) -> Result<Outcome> {
    let report = match a.notion {
        VerifyNotion::Cisa | VerifyNotion::CisaDegree => {
            let d = ctx.digraph(&a.graph)?;
            let bytes = ctx.read(&a.trees)?;
            let arbs = parse_arborescences(&d, &bytes)?;
            let rule = if matches!(a.notion, VerifyNotion::Cisa) { InteriorRule::OutArc } else { InteriorRule::Degree };
            verify_cisa_by(&d, &arbs, rule)?
        }
        notion => {
            let (g, r) = ctx.instance(&a.graph)?;
            let f = ctx.family(&g, &a.trees)?;
            match notion {
                VerifyNotion::Rcist => verify_rcist_structural(&g, &r, &f)?,
                VerifyNotion::RcistDefinitional => verify_rcist_definitional(&g, &r, &f)?,
                VerifyNotion::Rdst => verify_rdst(&g, &r, &f)?,
                VerifyNotion::Ridst => verify_ridst(&g, &r, &f)?,
                _ => verify_cist(&g, &f)?,
            }
        }
    };
    answer(to_value(&report), report.valid)
}

fn solve_cmd(ctx: &mut Ctx, a: &SolveArgs) -> Result<Outcome> {
    let (g, r) = ctx.instance(&a.graph)?;
    let opts = SolveOptions { filter: a.filter.filter(), sequential: ctx.sequential, force: ctx.force };
    let found = solve_rcist(&g, &r, a.k, &opts)?;
    let family = found.as_ref().map(|f| to_value(&family_document(&g, f)));
    answer(
        json!({ "graph": to_value(&graph_document(&g, Some(&r))), "k": a.k, "found": found.is_some(), "family": family }),
        found.is_some(),
    )
}

fn oracle_cmd(ctx: &mut Ctx, a: &OracleArgs) -> Result<Outcome> {
    let (g, r) = ctx.instance(&a.graph)?;
    let notion = match a.notion {
        NotionArg::Rcist => OracleNotion::Rcist,
        NotionArg::Rdst => OracleNotion::Rdst,
        NotionArg::Ridst => OracleNotion::Ridst,
    };
    let mut opts = ctx.oracle_options(a.filter.filter());
    opts.target = a.target;
    let res = oracle_max(&g, &r, notion, &opts)?;
    let family = res.witness.as_ref().map(|f| to_value(&family_document(&g, f)));
    answer(
        json!({
            "graph": to_value(&graph_document(&g, Some(&r))),
            "notion": to_value(&notion),
            "filter": to_value(&opts.filter),
            "size": res.size,
            "steinerTrees": res.trees,
            "family": family,
        }),
        res.size > 0,
    )
}

fn reduce_cmd(ctx: &mut Ctx, a: &ReduceArgs) -> Result<Outcome> {
    let (g, r) = ctx.instance(&a.graph)?;
    let t = hardness_reduce(&g, &r)?;
    let mut value = json!({ "graph": to_value(&t.trace.target), "trace": to_value(&t.trace) });
    if let Some(path) = &a.family {
        let f = ctx.family(&g, path)?;
        let mapped = map_dst_to_cist(&t.trace, &f)?;
        value["family"] = to_value(&family_document(&t.graph, &mapped));
    }
    yes(value)
}

fn transform_cmd(ctx: &mut Ctx, a: &TransformArgs) -> Result<Outcome> {
    let Some(action) = &a.action else {
        let (Some(kind), Some(path)) = (a.kind, &a.graph) else {
            return Err(Error::Parameter("transform needs --kind and --graph, or a subcommand".into()));
        };
        let (g, r) = ctx.instance(path)?;
        let t = match kind {
            KindArg::Tilde => tilde_gr(&g, &r)?,
            KindArg::Simp => simp(&g, &r)?,
            KindArg::Hardness => hardness_reduce(&g, &r)?,
        };
        return yes(json!({ "graph": to_value(&t.trace.target), "trace": to_value(&t.trace) }));
    };
    match action {
        TransformCmd::Lift { trace, family } | TransformCmd::Project { trace, family } => {
            let t = ctx.trace(trace)?;
            let (src, sr) = t.source_instance()?;
            let (tgt, tr) = t.target_instance()?;
            if matches!(action, TransformCmd::Lift { .. }) {
                let f = ctx.family(&src, family)?;
                yes(with_family(&tgt, &tr, &lift_family(&t, &src, &tgt, &f)?))
            } else {
                let f = ctx.family(&tgt, family)?;
                yes(with_family(&src, &sr, &project_family(&t, &src, &tgt, &f)?))
            }
        }
        TransformCmd::MapSolution { trace, family, backward } => {
            let t = ctx.trace(trace)?;
            let (src, sr) = t.source_instance()?;
            let (tgt, tr) = t.target_instance()?;
            if *backward {
                let f = ctx.family(&tgt, family)?;
                yes(with_family(&src, &sr, &map_cist_to_dst(&t, &f)?))
            } else {
                let f = ctx.family(&src, family)?;
                yes(with_family(&tgt, &tr, &map_dst_to_cist(&t, &f)?))
            }
        }
        TransformCmd::Repair { graph, family } => {
            let (g, r) = ctx.instance(graph)?;
            let f = ctx.family(&g, family)?;
            let (fixed, trace) = repair_idst_to_cist(&g, &r, &f)?;
            let mut value = with_family(&g, &r, &fixed);
            value["trace"] = to_value(&trace);
            yes(value)
        }
    }
}

fn construct_cmd(ctx: &mut Ctx, c: &ConstructCmd) -> Result<Outcome> {
    match c {
        ConstructCmd::Bipartite { a, b, ra, rb } => {
            let built = bipartite_max_ridst(*a, *b, *ra, *rb)?;
            let mut value = with_family(&built.graph, &built.terminals, &built.family);
            value["size"] = json!(bipartite_ridst_size(*a, *b, *ra, *rb)?);
            yes(value)
        }
        ConstructCmd::Mincut { graph } => {
            let (g, r) = ctx.instance(graph)?;
            let comps = minimal_cut_components(&g, &r)?;
            let f = min_cut_pendant_cist(&g, &r)?;
            let mut value = with_family(&g, &r, &f);
            value["components"] =
                json!(comps.iter().map(|c| c.iter().map(|&v| g.node_id(v)).collect::<Vec<_>>()).collect::<Vec<_>>());
            yes(value)
        }
        ConstructCmd::Partition { graph, certificate, family, k } => {
            let (g, r) = ctx.instance(graph)?;
            if let Some(path) = certificate {
                let bytes = ctx.read(path)?;
                let cert = PartitionCertificate::from_document(&g, &parse_partition(&bytes)?)?;
                let f = partition_to_trees(&g, &r, &cert)?;
                let mut value = with_family(&g, &r, &f);
                value["certificate"] = to_value(&cert.document(&g));
                return yes(value);
            }
            if let Some(path) = family {
                let f = ctx.family(&g, path)?;
                let cert = trees_to_partition(&g, &r, &f)?;
                return yes(json!({ "graph": to_value(&graph_document(&g, Some(&r))), "certificate": to_value(&cert.document(&g)) }));
            }
            let k = k.ok_or_else(|| Error::Parameter("partition needs --certificate, --family or -k".into()))?;
            match find_dominating_family(&g, &r, k)? {
                Some(cert) => {
                    let f = partition_to_trees(&g, &r, &cert)?;
                    let mut value = with_family(&g, &r, &f);
                    value["certificate"] = to_value(&cert.document(&g));
                    value["found"] = json!(true);
                    yes(value)
                }
                None => answer(json!({ "graph": to_value(&graph_document(&g, Some(&r))), "found": false }), false),
            }
        }
        ConstructCmd::Host { p, q, r } => {
            let h = linkage_host_graph(*p, *q, *r)?;
            let mut value = with_family(&h.graph, &h.terminals, &h.witness);
            value["summary"] = to_value(&h.summary());
            value["q"] = json!(h.q_set.iter().map(|&v| h.graph.node_id(v)).collect::<Vec<_>>());
            yes(value)
        }
    }
}

fn bounds_cmd(ctx: &mut Ctx, a: &BoundsArgs) -> Result<Outcome> {
    match &a.action {
        Some(BoundsCmd::Sweep { class, max_n, doubled }) => {
            let doubled = doubled.unwrap_or(*class == SweepClass::Planar);
            let rep = sweep(*class, *max_n, doubled, ctx.sequential)?;
            let clean = rep.violations.is_empty();
            answer(to_value(&rep), clean)
        }
        Some(BoundsCmd::Threshold { p, q, r }) => yes(json!({ "p": p, "q": q, "r": r, "kappa": connectivity_bound(*p, *q, *r)? })),
        None => {
            let path = a.graph.as_ref().ok_or_else(|| Error::Parameter("bounds needs --graph or a subcommand".into()))?;
            let (g, r) = ctx.instance(path)?;
            let f = match &a.family {
                Some(p) => Some(ctx.family(&g, p)?),
                None => oracle_max(&g, &r, OracleNotion::Rcist, &ctx.oracle_options(TreeFilter::All))?.witness,
            };
            let reports = match &f {
                Some(f) => check_all(&g, &r, f)?,
                None => Vec::new(),
            };
            let clean = reports.iter().all(|b| b.verdict != Verdict::Violation);
            let family = f.as_ref().map(|f| to_value(&family_document(&g, f)));
            answer(
                json!({ "graph": to_value(&graph_document(&g, Some(&r))), "reports": to_value(&reports), "family": family }),
                clean,
            )
        }
    }
}

fn cisa_cmd(ctx: &mut Ctx, c: &CisaCmd) -> Result<Outcome> {
    match c {
        CisaCmd::Check { graph, partition } => {
            let d = ctx.digraph(graph)?;
            let bytes = ctx.read(partition)?;
            let p = CisaPartition::from_document(&d, &parse_partition(&bytes)?)?;
            let rep = check_cisa_partition(&d, &p);
            answer(to_value(&rep), rep.valid)
        }
        CisaCmd::Build { graph, partition } => {
            let d = ctx.digraph(graph)?;
            let bytes = ctx.read(partition)?;
            let p = CisaPartition::from_document(&d, &parse_partition(&bytes)?)?;
            let arbs = partition_to_cisa(&d, &p)?;
            yes(json!({ "graph": to_value(&digraph_document(&d)), "cisa": to_value(&arborescence_document(&d, &arbs)) }))
        }
        CisaCmd::Ghouila { graph } => {
            let d = ctx.digraph(graph)?;
            let built = ghouila_houri_cisa(&d, ctx.force)?;
            let cisa = built.as_ref().map(|a| to_value(&arborescence_document(&d, a)));
            answer(
                json!({
                    "graph": to_value(&digraph_document(&d)),
                    "minSemiDegree": d.min_semi_degree(),
                    "applicable": built.is_some(),
                    "cisa": cisa,
                }),
                built.is_some(),
            )
        }
        CisaCmd::Oracle { graph, interior } => {
            let d = ctx.digraph(graph)?;
            let rule = match interior {
                InteriorArg::OutArc => InteriorRule::OutArc,
                InteriorArg::Degree => InteriorRule::Degree,
            };
            let arbs = oracle_max_cisa_by(&d, ctx.force, rule)?;
            let cisa = (!arbs.is_empty()).then(|| to_value(&arborescence_document(&d, &arbs)));
            answer(
                json!({ "graph": to_value(&digraph_document(&d)), "interior": to_value(&rule), "size": arbs.len(), "cisa": cisa }),
                !arbs.is_empty(),
            )
        }
        CisaCmd::Partition { graph, cisa } => {
            let d = ctx.digraph(graph)?;
            let bytes = ctx.read(cisa)?;
            let arbs = parse_arborescences(&d, &bytes)?;
            let p = cisa_to_partition(&d, &arbs)?;
            yes(json!({ "graph": to_value(&digraph_document(&d)), "partition": to_value(&p.document(&d)) }))
        }
    }
}

fn minor_value(g: &MultiGraph, m: &DirectedRMinor) -> Value {
    to_value(&m.document(g))
}

fn minor_cmd(ctx: &mut Ctx, c: &MinorCmd) -> Result<Outcome> {
    match c {
        MinorCmd::Build { graph, partition } => {
            let (g, r) = ctx.instance(graph)?;
            let bytes = ctx.read(partition)?;
            let m = build_directed_r_minor_ids(&g, &r, &parse_partition(&bytes)?)?;
            yes(minor_value(&g, &m))
        }
        MinorCmd::Contract { graph, family } => {
            let (g, r) = ctx.instance(graph)?;
            let f = ctx.family(&g, family)?;
            let (m, arbs) = contract_rcist_to_cisa(&g, &r, &f)?;
            let mut value = minor_value(&g, &m);
            value["cisa"] = to_value(&arborescence_document(&m.minor, &arbs));
            yes(value)
        }
        MinorCmd::Expand { graph, minor, cisa } => {
            let (g, r) = ctx.instance(graph)?;
            let bytes = ctx.read(minor)?;
            let doc: MinorDocument = serde_json::from_slice(&bytes)?;
            let m = DirectedRMinor::from_document(&g, &r, &doc)?;
            let arb_bytes = match cisa {
                Some(p) => ctx.read(p)?,
                None => bytes,
            };
            let arbs = parse_arborescences(&m.minor, &arb_bytes)?;
            yes(with_family(&g, &r, &expand_cisa_to_rcist(&g, &r, &m, &arbs)?))
        }
        MinorCmd::Search { graph, k } => {
            let (g, r) = ctx.instance(graph)?;
            match find_expandable_cisa(&g, &r, *k, ctx.force)? {
                Some((m, arbs, f)) => {
                    let mut value = with_family(&g, &r, &f);
                    value["found"] = json!(true);
                    value["minor"] = minor_value(&g, &m);
                    value["cisa"] = to_value(&arborescence_document(&m.minor, &arbs));
                    yes(value)
                }
                None => answer(json!({ "graph": to_value(&graph_document(&g, Some(&r))), "found": false }), false),
            }
        }
    }
}

fn gen_cmd(ctx: &Ctx, a: &GenArgs) -> Result<Outcome> {
    let params = GenParams {
        n: a.n,
        r: a.r,
        p: a.p,
        q: a.q,
        ra: a.ra,
        rb: a.rb,
        i: a.i,
        extra: a.extra,
        density: a.density,
    };
    yes(to_value(&generate(a.family, &params, ctx.seed)?))
}

fn subcommand_name(c: &Command) -> &'static str {
    match c {
        Command::Verify(_) => "verify",
        Command::Solve(_) => "solve",
        Command::Oracle(_) => "oracle",
        Command::Reduce(_) => "reduce",
        Command::Transform(_) => "transform",
        Command::Construct(_) => "construct",
        Command::Bounds(_) => "bounds",
        Command::Cisa(_) => "cisa",
        Command::Minor(_) => "minor",
        Command::Gen(_) => "gen",
    }
}

fn dispatch(ctx: &mut Ctx, c: &Command) -> Result<Outcome> {
    match c {
        Command::Verify(a) => verify_cmd(ctx, a),
        Command::Solve(a) => solve_cmd(ctx, a),
        Command::Oracle(a) => oracle_cmd(ctx, a),
        Command::Reduce(a) => reduce_cmd(ctx, a),
        Command::Transform(a) => transform_cmd(ctx, a),
        Command::Construct(c) => construct_cmd(ctx, c),
        Command::Bounds(a) => bounds_cmd(ctx, a),
        Command::Cisa(c) => cisa_cmd(ctx, c),
        Command::Minor(c) => minor_cmd(ctx, c),
        Command::Gen(a) => gen_cmd(ctx, a),
    }
}

/// Exit code for an error: 3 for guard errors, 2 for everything else.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::GuardExceeded(_) => 3,
        _ => 2,
    }
}

/// Runs the command line given by `args` (program name first).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    2
                }
            };
        }
    };
    let Format::Json = cli.format;
    let mut ctx = Ctx {
        seed: cli.seed,
        sequential: cli.sequential,
        force: cli.force,
        allow_disconnected: cli.allow_disconnected,
        inputs: Vec::new(),
    };
    let outcome = dispatch(&mut ctx, &cli.command);
    if let Some(path) = &cli.manifest {
        let manifest = RunManifest {
            subcommand: subcommand_name(&cli.command).to_string(),
            flags: args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect(),
            inputs: std::mem::take(&mut ctx.inputs),
            seed: cli.seed,
            sequential: cli.sequential,
            force: cli.force,
            version: env!("CARGO_PKG_VERSION").to_string(),
        };
        if let Err(e) = std::fs::write(path, to_json(&manifest)) {
            let _ = writeln!(err, "error: cannot write manifest `{}`: {e}", path.display());
            return 2;
        }
    }
    match outcome {
        Ok(o) => {
            if out.write_all(to_json(&o.value).as_bytes()).is_err() {
                return 2;
            }
            if o.affirmative {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
