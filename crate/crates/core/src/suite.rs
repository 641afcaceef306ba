//! Reproduction suites behind `conchrom reproduce`.
//!
//! * `theorem1`: plain-palette extraction on the shipped instances.
//! * `theorem2`: list-mode extraction on the shipped instances.
//! * `oracles`: search routines against exhaustive enumeration.
//! * `properties`: randomized checks of the construction bounds, plus
//!   invalidated witnesses that must drive a construction into building a
//!   respecting colouring.
//!
//! Every random choice is drawn from a ChaCha stream keyed by the suite
//! seed, and reports carry no timing, so a rerun is byte-identical.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::seq::{IteratorRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::certificate::{certificate_failures, Certificate, ChromaticEvidence};
use crate::colouring::{
    is_colourable, is_proper, list_chromatic_at_least, list_colour, Colour, ColourSet, ListAssignment,
};
use crate::connectivity::{connectivity, min_vertex_cut, MinCut};
use crate::construct::{
    colour_from_intervals, derive_completion_template, derive_separation_template, glue, interval_partition,
    rainbow_small_case,
};
use crate::extract::{
    descend, extract, finalize_chromatic, plain_palette_size, ExtractConfig, ExtractError, PreconditionPolicy,
    WitnessPair,
};
use crate::family::FamilySpec;
use crate::graph::{Graph, Vertex, VertexSet};
use crate::oracle;
use crate::solver::{brute_force_extend, extend, Outcome, SolveStats, SolverBudget};
use crate::template::{respects, Mode, Palette, Template};
use crate::witness::{degree_bound, strengthen_witness, witness_status, WitnessStatus};

pub const DEFAULT_SEED: u64 = 20_240_607;
/// Randomized trials per property.
pub const PROPERTY_TRIALS: u64 = 1000;
/// Invalidated witnesses in the unreachability check.
pub const MUTATION_TRIALS: u64 = 100;
/// Random instances in the second half of the extension equivalence check.
pub const RANDOM_EXTEND_TRIALS: u64 = 500;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Theorem1,
    Theorem2,
    Oracles,
    Properties,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Theorem1, Suite::Theorem2, Suite::Oracles, Suite::Properties];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Theorem1 => "theorem1",
            Suite::Theorem2 => "theorem2",
            Suite::Oracles => "oracles",
            Suite::Properties => "properties",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown suite {0:?}; expected one of theorem1, theorem2, oracles, properties")]
pub struct UnknownSuite(pub String);

impl FromStr for Suite {
    type Err = UnknownSuite;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunOutcome {
    Extracted,
    NotInextensible,
    ResourceLimit,
    InternalContradiction,
    Error,
    /// An oracle or property check ran to completion.
    Checked,
}

/// Outcome an extraction instance is expected to reach.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    Extract,
    NotInextensible,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceReport {
    pub id: String,
    pub spec: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub list_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expectation>,
    pub outcome: RunOutcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h_order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub descent_steps: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_cut_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_cut: Option<VertexSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chromatic: Option<ChromaticEvidence>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solver: Option<SolveStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate_sha256: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violations: Option<u64>,
    pub passed: bool,
    pub detail: String,
    /// Kept out of the serialized report so reruns compare equal.
    #[serde(skip)]
    pub wall_time: Duration,
}

impl InstanceReport {
    fn new(id: impl Into<String>, spec: impl Into<String>) -> Self {
        InstanceReport {
            id: id.into(),
            spec: spec.into(),
            k: None,
            mode: None,
            list_size: None,
            expected: None,
            outcome: RunOutcome::Checked,
            h_order: None,
            descent_steps: None,
            min_cut_size: None,
            min_cut: None,
            chromatic: None,
            solver: None,
            certificate_sha256: None,
            trials: None,
            violations: None,
            passed: false,
            detail: String::new(),
            wall_time: Duration::ZERO,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub suite: Suite,
    pub seed: u64,
    pub passed: usize,
    pub failed: usize,
    pub instances: Vec<InstanceReport>,
}

impl RunReport {
    fn assemble(suite: Suite, seed: u64, mut instances: Vec<InstanceReport>) -> Self {
        instances.sort_by(|a, b| a.id.cmp(&b.id));
        let passed = instances.iter().filter(|i| i.passed).count();
        RunReport { suite, seed, passed, failed: instances.len() - passed, instances }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

/// Run a whole suite. Instances run on separate threads; the report is
/// sorted by instance id.
pub fn run_suite(suite: Suite, seed: u64) -> RunReport {
    let jobs: Vec<Box<dyn FnOnce() -> InstanceReport + Send>> = match suite {
        Suite::Theorem1 => theorem1_instances().into_iter().map(extraction_job).collect(),
        Suite::Theorem2 => theorem2_instances().into_iter().map(extraction_job).collect(),
        Suite::Oracles => oracle_jobs(seed),
        Suite::Properties => property_jobs(seed),
    };
    let instances = std::thread::scope(|s| {
        let handles: Vec<_> = jobs
            .into_iter()
            .map(|job| {
                s.spawn(move || {
                    let start = Instant::now();
                    let mut r = job();
                    r.wall_time = start.elapsed();
                    r
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("suite instance panicked")).collect()
    });
    RunReport::assemble(suite, seed, instances)
}

fn extraction_job(inst: ExtractInstance) -> Box<dyn FnOnce() -> InstanceReport + Send> {
    Box::new(move || run_extract_instance(&inst).0)
}

// ---------------------------------------------------------------------------
// extraction instances

#[derive(Debug, Clone, PartialEq)]
pub struct ExtractInstance {
    pub id: String,
    pub family: FamilySpec,
    pub k: usize,
    /// List mode with the list `{0, .., n-1}` at every vertex.
    pub list_size: Option<usize>,
    pub expected: Expectation,
}

impl ExtractInstance {
    fn plain(k: usize, family: &str) -> Self {
        let family: FamilySpec = family.parse().expect("shipped family parses");
        ExtractInstance { id: format!("k{k}-{family}"), family, k, list_size: None, expected: Expectation::Extract }
    }

    fn list(k: usize, family: &str, size: usize, expected: Expectation) -> Self {
        let family: FamilySpec = family.parse().expect("shipped family parses");
        ExtractInstance { id: format!("k{k}-{family}-lists{size}"), family, k, list_size: Some(size), expected }
    }

    pub fn graph(&self) -> Graph {
        self.family.generate().expect("shipped family generates")
    }

    pub fn lists(&self, g: &Graph) -> Option<ListAssignment> {
        self.list_size.map(|n| g.vertices().iter().map(|&v| (v, (0..n).collect())).collect())
    }

    pub fn config(&self, g: &Graph) -> ExtractConfig {
        match self.lists(g) {
            None => ExtractConfig::plain(self.k),
            Some(lists) => ExtractConfig::with_palette(self.k, Palette::List(lists)),
        }
    }
}

/// Graphs with chromatic number `7k + 1` for `k = 1, 2`: the clique, two
/// cliques glued along `1` and `k - 1` vertices, and a join.
pub fn theorem1_instances() -> Vec<ExtractInstance> {
    let mut out = Vec::new();
    for k in 1..=2usize {
        let n = 7 * k + 1;
        out.push(ExtractInstance::plain(k, &format!("complete({n})")));
        let mut shared = vec![1, k - 1];
        shared.dedup();
        for s in shared {
            out.push(ExtractInstance::plain(k, &format!("glued_cliques([{n},{n}],{s})")));
        }
    }
    out.push(ExtractInstance::plain(1, "join(cycle(5),complete(5))"));
    out.push(ExtractInstance::plain(2, "join(cycle(5),cycle(5),cycle(5),cycle(5),cycle(5))"));
    out
}

/// `K_{4k+1}` and two copies glued at a vertex, with every list equal to
/// `{0, .., 4k-1}` (no colouring exists, so the empty template is a
/// witness). The same graphs with `4k + 1` colours per list are colourable,
/// and are checked to be rejected.
pub fn theorem2_instances() -> Vec<ExtractInstance> {
    let mut out = Vec::new();
    for k in 1..=2usize {
        let n = 4 * k + 1;
        for family in [format!("complete({n})"), format!("glued_cliques([{n},{n}],1)")] {
            out.push(ExtractInstance::list(k, &family, 4 * k, Expectation::Extract));
            out.push(ExtractInstance::list(k, &family, 4 * k + 1, Expectation::NotInextensible));
        }
    }
    out
}

/// Extract, verify, and re-check connectivity and chromatic evidence on `H`
/// with routines the extraction does not use.
pub fn run_extract_instance(inst: &ExtractInstance) -> (InstanceReport, Option<Certificate>) {
    let g = inst.graph();
    let cfg = inst.config(&g);
    let mut r = InstanceReport::new(&inst.id, inst.family.to_string());
    r.k = Some(inst.k);
    r.mode = Some(cfg.mode());
    r.list_size = inst.list_size;
    r.expected = Some(inst.expected);

    let cert = match extract(&g, &cfg) {
        Ok(cert) => cert,
        Err(e) => {
            r.outcome = match &e {
                ExtractError::NotInextensible(_) => RunOutcome::NotInextensible,
                ExtractError::ResourceLimit(_) => RunOutcome::ResourceLimit,
                ExtractError::InternalContradiction(_) => RunOutcome::InternalContradiction,
                _ => RunOutcome::Error,
            };
            r.passed = inst.expected == Expectation::NotInextensible && r.outcome == RunOutcome::NotInextensible;
            r.detail = e.to_string();
            return (r, None);
        }
    };
    r.outcome = RunOutcome::Extracted;
    r.h_order = Some(cert.vertices.len());
    r.descent_steps = Some(cert.trace.len());
    r.min_cut_size = Some(cert.connectivity.min_cut_size);
    r.min_cut = cert.connectivity.min_cut.clone();
    r.chromatic = Some(cert.chromatic.clone());
    r.solver = Some(cert.solver.clone());
    r.certificate_sha256 = Some(sha256_hex(&cert.to_json()));

    let mut problems = certificate_failures(&g, &cert);
    problems.extend(independent_checks(&g, &cert));
    if inst.expected != Expectation::Extract {
        problems.push("expected the graph to be rejected".into());
    }
    r.passed = problems.is_empty();
    r.detail = if r.passed { "verified".into() } else { problems.join("; ") };
    (r, Some(cert))
}

fn independent_checks(g: &Graph, cert: &Certificate) -> Vec<String> {
    let mut out = Vec::new();
    let k = cert.k;
    let h = match g.induced_subgraph(&cert.vertex_set()) {
        Ok(h) => h,
        Err(e) => return vec![e.to_string()],
    };
    let kappa = if h.order() <= 16 { oracle::brute_connectivity(&h) } else { connectivity(&h) };
    if kappa < k {
        out.push(format!("recomputed connectivity {kappa} < k"));
    }
    match &cert.chromatic {
        ChromaticEvidence::Plain { .. } => {
            let brute_feasible = (k as f64 - 1.0).powi(h.order() as i32) <= (1u64 << 22) as f64;
            let colourable =
                if brute_feasible { oracle::brute_colourable(&h, k - 1) } else { is_colourable(&h, k - 1).is_some() };
            if colourable {
                out.push(format!("H is {}-colourable", k - 1));
            }
        }
        ChromaticEvidence::List { witness, .. } => match witness {
            None if k <= 2 => out.push("no choosability witness".into()),
            None => {}
            Some(w) => {
                let sized = w.len() == h.order() && w.values().all(|l| l.len() + 1 == k);
                let product: f64 = w.values().map(|l| l.len() as f64).product();
                let colourable = if product <= (1u64 << 22) as f64 {
                    oracle::brute_list_colourable(&h, w)
                } else {
                    list_colour(&h, w).map_or(true, |c| c.is_some())
                };
                if !sized || colourable {
                    out.push("choosability witness does not check".into());
                }
            }
        },
    }
    out
}

// ---------------------------------------------------------------------------
// random instances

/// Shape of a random template.
#[derive(Debug, Clone, Copy)]
pub struct TemplateShape {
    pub p_precolour: f64,
    pub p_forbid: f64,
    pub max_forbidden: usize,
    /// `(k, cap)`: keep `k|S| + Σ|F|` at most `cap`.
    pub degree_cap: Option<(usize, usize)>,
}

/// A random template on `g`: proper pre-colouring drawn from each vertex's
/// palette colours, forbidden lists drawn from the palette universe.
pub fn random_template<R: Rng>(rng: &mut R, g: &Graph, palette: &Palette, shape: &TemplateShape) -> Template {
    let mut order = g.vertices().to_vec();
    order.shuffle(rng);
    let universe: Vec<Colour> = palette.universe().into_iter().collect();
    let (unit, mut budget) = shape.degree_cap.map_or((0, usize::MAX), |(k, cap)| (k, cap));
    let mut pre = BTreeMap::new();
    let mut forbidden = BTreeMap::new();
    for v in order {
        let roll: f64 = rng.gen();
        if roll < shape.p_precolour {
            if budget < unit {
                continue;
            }
            let blocked: ColourSet = g.neighbours(v).filter_map(|u| pre.get(&u).copied()).collect();
            if let Some(c) = palette.colours(v).filter(|c| !blocked.contains(c)).choose(rng) {
                pre.insert(v, c);
                budget -= unit;
            }
        } else if roll < shape.p_precolour + shape.p_forbid && shape.max_forbidden > 0 {
            let size = rng.gen_range(1..=shape.max_forbidden).min(budget).min(universe.len());
            if size == 0 {
                continue;
            }
            let f: ColourSet = universe.choose_multiple(rng, size).copied().collect();
            budget -= f.len();
            forbidden.insert(v, f);
        }
    }
    Template::new(pre, forbidden).expect("pre-coloured and forbidden vertices are disjoint")
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(p)).collect::<Vec<_>>();
    Graph::new(n, edges).expect("valid pairs")
}

/// Random lists of `size` colours from `0..universe` for every vertex.
pub fn random_lists<R: Rng>(rng: &mut R, g: &Graph, size: usize, universe: usize) -> ListAssignment {
    g.vertices().iter().map(|&v| (v, (0..universe).choose_multiple(rng, size).into_iter().collect())).collect()
}

fn budget_shape(k: usize, max_forbidden: usize) -> TemplateShape {
    TemplateShape { p_precolour: 0.25, p_forbid: 0.45, max_forbidden, degree_cap: Some((k, degree_bound(k))) }
}

/// A graph split by a cut `X` (`|X| <= k-1`) into nonempty sides `Y`, `Z`
/// with a template whose forbidden lists are below `k`; `Z` is the side of
/// smaller template degree, so `deg(T_Z) <= k²`.
#[derive(Debug, Clone)]
pub struct SeparationCase {
    pub h: Graph,
    pub t: Template,
    pub k: usize,
    pub x: VertexSet,
    pub y: VertexSet,
    pub z: VertexSet,
}

pub fn random_separation_case<R: Rng>(rng: &mut R, k: usize, palette: &Palette) -> SeparationCase {
    let nx = rng.gen_range(0..k);
    let ny = rng.gen_range(1..=5);
    let nz = rng.gen_range(1..=5);
    let n = nx + ny + nz;
    let mut ids: Vec<Vertex> = (0..n).collect();
    ids.shuffle(rng);
    let x: VertexSet = ids[..nx].iter().copied().collect();
    let mut y: VertexSet = ids[nx..nx + ny].iter().copied().collect();
    let mut z: VertexSet = ids[nx + ny..].iter().copied().collect();
    let p = rng.gen_range(0.2..0.9);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let crosses = (y.contains(&u) && z.contains(&v)) || (z.contains(&u) && y.contains(&v));
            if !crosses && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    let h = Graph::new(n, edges).expect("valid pairs");
    let t = random_template(rng, &h, palette, &budget_shape(k, k - 1));
    if t.restrict(&z).degree(k) > t.restrict(&y).degree(k) {
        std::mem::swap(&mut y, &mut z);
    }
    SeparationCase { h, t, k, x, y, z }
}

/// Free vertices split into `k - 1` independent classes, plus a few
/// pre-coloured vertices adjacent to anything.
#[derive(Debug, Clone)]
pub struct IntervalCase {
    pub h: Graph,
    pub t: Template,
    pub k: usize,
    pub classes: Vec<VertexSet>,
}

pub fn random_interval_case<R: Rng>(rng: &mut R, k: usize) -> IntervalCase {
    let nf = rng.gen_range(1..=12);
    let ns = rng.gen_range(0..=2 * k);
    let n = nf + ns;
    let class_of: Vec<usize> = (0..nf).map(|_| rng.gen_range(0..k - 1)).collect();
    let p = rng.gen_range(0.1..0.8);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let same_class = v < nf && class_of[u] == class_of[v];
            if !same_class && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    let h = Graph::new(n, edges).expect("valid pairs");
    let palette_size = plain_palette_size(k);
    let mut pre = BTreeMap::new();
    for s in nf..n {
        let blocked: ColourSet = h.neighbours(s).filter_map(|u| pre.get(&u).copied()).collect();
        let c = (0..palette_size).filter(|c| !blocked.contains(c)).choose(rng).expect("7k colours suffice");
        pre.insert(s, c);
    }
    let mut budget = degree_bound(k) - k * ns;
    let mut forbidden = BTreeMap::new();
    for v in 0..nf {
        if budget == 0 || rng.gen_bool(0.4) {
            continue;
        }
        let size = rng.gen_range(1..=k - 1).min(budget);
        let f: ColourSet = (0..palette_size).choose_multiple(rng, size).into_iter().collect();
        budget -= f.len();
        forbidden.insert(v, f);
    }
    let classes = (0..k - 1).map(|c| (0..nf).filter(|&v| class_of[v] == c).collect()).collect();
    IntervalCase { h, t: Template::new(pre, forbidden).expect("disjoint"), k, classes }
}

// ---------------------------------------------------------------------------
// tallies

#[derive(Debug, Default)]
struct Tally {
    trials: u64,
    violations: u64,
    first: Option<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.trials += 1;
        if !ok {
            self.violations += 1;
            self.first.get_or_insert_with(what);
        }
    }

    fn fail(&mut self, what: impl FnOnce() -> String) {
        self.check(false, what);
    }

    fn report(self, id: &str, spec: &str, required: u64) -> InstanceReport {
        let mut r = InstanceReport::new(id, spec);
        r.passed = self.violations == 0 && self.trials >= required;
        r.detail = match (&self.first, self.trials >= required) {
            (Some(f), _) => format!("first violation: {f}"),
            (None, false) => format!("only {} of {required} trials ran", self.trials),
            (None, true) => "no violations".into(),
        };
        r.trials = Some(self.trials);
        r.violations = Some(self.violations);
        r
    }
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

// ---------------------------------------------------------------------------
// oracle suite

fn oracle_jobs(seed: u64) -> Vec<Box<dyn FnOnce() -> InstanceReport + Send>> {
    vec![
        Box::new(check_colourable_exhaustive),
        Box::new(check_min_cut_exhaustive),
        Box::new(move || check_min_cut_random(seed)),
        Box::new(check_choosability_small),
        Box::new(move || check_extend_exhaustive(seed)),
        Box::new(move || check_extend_random(seed)),
    ]
}

/// `is_colourable` against `t^n` enumeration, every graph on at most 6
/// vertices, `t <= 4`.
pub fn check_colourable_exhaustive() -> InstanceReport {
    let mut tally = Tally::default();
    for n in 0..=6 {
        for g in oracle::all_graphs(n) {
            for t in 0..=4 {
                let fast = is_colourable(&g, t);
                let sound = fast.as_ref().is_none_or(|c| is_proper(&g, c) && c.len() == n && c.values().all(|&x| x < t));
                let brute = oracle::brute_colourable(&g, t);
                tally.check(sound && fast.is_some() == brute, || format!("n={n} t={t} edges={:?}", g.edges().collect::<Vec<_>>()));
            }
        }
    }
    tally.report("colourable-exhaustive", "all graphs n<=6, t<=4", 1)
}

fn min_cut_agrees(g: &Graph) -> bool {
    let brute = oracle::brute_min_cut(g);
    let fast = match min_vertex_cut(g) {
        MinCut::Cut(x) => Some(x),
        MinCut::Complete => None,
    };
    fast == brute && connectivity(g) == oracle::brute_connectivity(g)
}

/// Lexicographically smallest minimum cut, every graph on at most 6
/// vertices.
pub fn check_min_cut_exhaustive() -> InstanceReport {
    let mut tally = Tally::default();
    for n in 0..=6 {
        for g in oracle::all_graphs(n) {
            tally.check(min_cut_agrees(&g), || format!("n={n} edges={:?}", g.edges().collect::<Vec<_>>()));
        }
    }
    tally.report("min-cut-exhaustive", "all graphs n<=6", 1)
}

/// Lexicographically smallest minimum cut on random graphs with 7 and 8
/// vertices across densities.
pub fn check_min_cut_random(seed: u64) -> InstanceReport {
    let mut rng = rng_for(seed, 1);
    let mut tally = Tally::default();
    for n in [7, 8] {
        for _ in 0..2000 {
            let p = rng.gen_range(0.2..1.0);
            let g = random_graph(&mut rng, n, p);
            tally.check(min_cut_agrees(&g), || format!("n={n} edges={:?}", g.edges().collect::<Vec<_>>()));
        }
    }
    tally.report("min-cut-random", "4000 random graphs, n in {7,8}", 4000)
}

fn k24() -> Graph {
    Graph::new(6, (0..2).flat_map(|a| (2..6).map(move |b| (a, b)))).expect("valid pairs")
}

/// The fixed `K_{2,4}` assignment `{1,2},{3,4}` against
/// `{1,3},{1,4},{2,3},{2,4}`.
pub fn k24_bad_lists() -> ListAssignment {
    let sets: [&[Colour]; 6] = [&[1, 2], &[3, 4], &[1, 3], &[1, 4], &[2, 3], &[2, 4]];
    sets.iter().enumerate().map(|(v, s)| (v, s.iter().copied().collect())).collect()
}

/// Choosability of `C_4`, `K_4` and `K_{2,4}`, by the canonical search and
/// by plain enumeration of list assignments.
pub fn check_choosability_small() -> InstanceReport {
    let mut tally = Tally::default();
    let c4: Graph = "cycle(4)".parse::<FamilySpec>().unwrap().generate().unwrap();
    let k4: Graph = "complete(4)".parse::<FamilySpec>().unwrap().generate().unwrap();
    let search = |g: &Graph, t: usize| list_chromatic_at_least(g, t, 8).expect("within cap");
    let witness_holds = |g: &Graph, w: &Option<ListAssignment>, t: usize| {
        w.as_ref().is_some_and(|w| w.values().all(|l| l.len() + 1 == t) && !oracle::brute_list_colourable(g, w))
    };

    // χ_ℓ(C_4) = 2
    let w = search(&c4, 2);
    tally.check(witness_holds(&c4, &w, 2), || "C4 has no bad 1-lists".into());
    tally.check(search(&c4, 3).is_none(), || "canonical search finds bad 2-lists on C4".into());
    // 2-subsets of 8 colours cover every assignment up to renaming
    tally.check(oracle::brute_bad_lists(&c4, 2, 8).is_none(), || "enumeration finds bad 2-lists on C4".into());

    // χ_ℓ(K_4) = 4
    let w = search(&k4, 4);
    tally.check(witness_holds(&k4, &w, 4), || "K4 has no bad 3-lists".into());
    tally.check(search(&k4, 5).is_none(), || "canonical search finds bad 4-lists on K4".into());
    tally.check(oracle::brute_bad_lists(&k4, 4, 6).is_none(), || "enumeration finds bad 4-lists on K4".into());
    tally.check(oracle::brute_bad_lists(&k4, 3, 3).is_some(), || "enumeration finds no bad 3-lists on K4".into());

    // K_{2,4} is not 2-choosable
    let g = k24();
    let fixed = k24_bad_lists();
    tally.check(!oracle::brute_list_colourable(&g, &fixed), || "fixed K24 lists are colourable".into());
    tally.check(list_colour(&g, &fixed).unwrap().is_none(), || "list_colour colours the fixed K24 lists".into());
    let w = search(&g, 3);
    tally.check(witness_holds(&g, &w, 3), || "K24 search found no witness".into());
    tally.report("choosability-small", "C4, K4, K24", 1)
}

/// One random extension instance on `g`, plain or list mode.
fn random_extension_instance<R: Rng>(rng: &mut R, g: &Graph, palette_size: usize, list_mode: bool) -> (Palette, Template) {
    let palette = if list_mode {
        let lists = g
            .vertices()
            .iter()
            .map(|&v| {
                let size = rng.gen_range(1..=palette_size);
                (v, (0..palette_size + 1).choose_multiple(rng, size).into_iter().collect())
            })
            .collect();
        Palette::List(lists)
    } else {
        Palette::Plain(palette_size)
    };
    let shape = TemplateShape {
        p_precolour: rng.gen_range(0.0..0.5),
        p_forbid: rng.gen_range(0.0..0.5),
        max_forbidden: palette_size,
        degree_cap: None,
    };
    let t = random_template(rng, g, &palette, &shape);
    (palette, t)
}

fn extension_agrees(g: &Graph, t: &Template, palette: &Palette) -> Result<(), String> {
    let fast = extend(g, t, palette, SolverBudget::unlimited()).map_err(|e| e.to_string())?;
    let brute = brute_force_extend(g, t, palette).map_err(|e| e.to_string())?;
    match (&fast.outcome, &brute.outcome) {
        (Outcome::Sat(c), Outcome::Sat(_)) if respects(g, t, palette, c) => Ok(()),
        (Outcome::Unsat, Outcome::Unsat) => Ok(()),
        (a, b) => Err(format!("search {a:?} vs enumeration {b:?}")),
    }
}

/// `extend` against enumeration on every graph with at most 5 vertices,
/// three random templates each at palette sizes 2, 3 and 4.
pub fn check_extend_exhaustive(seed: u64) -> InstanceReport {
    let mut rng = rng_for(seed, 2);
    let mut tally = Tally::default();
    for n in 0..=5 {
        for g in oracle::all_graphs(n) {
            for size in 2..=4 {
                for _ in 0..3 {
                    let (palette, t) = random_extension_instance(&mut rng, &g, size, false);
                    let r = extension_agrees(&g, &t, &palette);
                    tally.check(r.is_ok(), || format!("n={n} size={size} {t:?}: {}", r.unwrap_err()));
                }
            }
        }
    }
    tally.report("extend-exhaustive", "all graphs n<=5 x 3 templates x palette 2..4", 1)
}

/// `extend` against enumeration on random instances with at most 7
/// vertices, a quarter of them in list mode.
pub fn check_extend_random(seed: u64) -> InstanceReport {
    let mut rng = rng_for(seed, 3);
    let mut tally = Tally::default();
    for _ in 0..RANDOM_EXTEND_TRIALS {
        let n = rng.gen_range(1..=7);
        let p = rng.gen_range(0.1..0.95);
        let g = random_graph(&mut rng, n, p);
        let size = rng.gen_range(2..=4);
        let list_mode = rng.gen_bool(0.25);
        let (palette, t) = random_extension_instance(&mut rng, &g, size, list_mode);
        let r = extension_agrees(&g, &t, &palette);
        tally.check(r.is_ok(), || format!("n={n} {palette:?} {t:?}: {}", r.unwrap_err()));
    }
    tally.report("extend-random", "500 random instances n<=7", RANDOM_EXTEND_TRIALS)
}

// ---------------------------------------------------------------------------
// property suite

fn property_jobs(seed: u64) -> Vec<Box<dyn FnOnce() -> InstanceReport + Send>> {
    vec![
        Box::new(move || check_degree_additivity(seed)),
        Box::new(move || check_strengthening(seed)),
        Box::new(move || check_separation_bounds(seed)),
        Box::new(move || check_completion_bounds(seed)),
        Box::new(move || check_interval_bounds(seed)),
        Box::new(move || check_glue_respects(seed)),
        Box::new(move || check_rainbow_respects(seed)),
        Box::new(move || check_mutations(seed)),
    ]
}

/// `deg(T) = deg(T|A) + deg(T|B)` for random bipartitions `A ⊔ B`.
pub fn check_degree_additivity(seed: u64) -> InstanceReport {
    let mut rng = rng_for(seed, 10);
    let mut tally = Tally::default();
    for _ in 0..PROPERTY_TRIALS {
        let n = rng.gen_range(0..=12);
        let p = rng.gen_range(0.0..1.0);
        let g = random_graph(&mut rng, n, p);
        let shape = TemplateShape { p_precolour: 0.3, p_forbid: 0.4, max_forbidden: 6, degree_cap: None };
        let t = random_template(&mut rng, &g, &Palette::Plain(10), &shape);
        let a: VertexSet = g.vertices().iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
        let b: VertexSet = g.vertex_set().difference(&a).copied().collect();
        let k = rng.gen_range(1..=5);
        let (whole, left, right) = (t.degree(k), t.restrict(&a).degree(k), t.restrict(&b).degree(k));
        tally.check(whole == left + right, || format!("{whole} != {left} + {right} for {t:?}"));
    }
    tally.report("degree-additivity", "random templates, random bipartitions", PROPERTY_TRIALS)
}

/// A random witness for `k`: `K_{7k+1}` (sometimes missing an edge) with a
/// few extra vertices and a template inside the witness bounds, kept only
/// if the solver confirms it is inextensible.
fn random_witness<R: Rng>(rng: &mut R, k: usize) -> Option<(Graph, Template)> {
    let palette = Palette::Plain(plain_palette_size(k));
    let clique = 7 * k + 1;
    let extra = rng.gen_range(0..=3);
    let n = clique + extra;
    let missing = rng.gen_bool(0.3).then(|| {
        let u = rng.gen_range(0..clique);
        let v = (u + rng.gen_range(1..clique)) % clique;
        (u.min(v), u.max(v))
    });
    let mut edges: Vec<(usize, usize)> =
        (0..clique).flat_map(|u| (u + 1..clique).map(move |v| (u, v))).filter(|e| Some(*e) != missing).collect();
    for v in clique..n {
        for u in 0..v {
            if rng.gen_bool(0.5) {
                edges.push((u, v));
            }
        }
    }
    let g = Graph::new(n, edges).expect("valid pairs");
    let shape = TemplateShape {
        p_precolour: 0.1,
        p_forbid: 0.2,
        max_forbidden: 2 * k,
        degree_cap: Some((k, degree_bound(k))),
    };
    let t = random_template(rng, &g, &palette, &shape);
    match witness_status(&g, &t, k, &palette, SolverBudget::unlimited()) {
        Ok((WitnessStatus::Valid, _)) => Some((g, t)),
        _ => None,
    }
}

/// Strengthening a witness gives forbidden lists below `k`, no larger
/// degree, and a template that is still a witness.
pub fn check_strengthening(seed: u64) -> InstanceReport {
    let mut rng = rng_for(seed, 11);
    let mut tally = Tally::default();
    let mut attempts = 0;
    while tally.trials < PROPERTY_TRIALS && attempts < 20 * PROPERTY_TRIALS {
        attempts += 1;
        let k = rng.gen_range(1..=2);
        let Some((g, t)) = random_witness(&mut rng, k) else { continue };
        let palette = Palette::Plain(plain_palette_size(k));
        match strengthen_witness(&g, &t, k, &palette, SolverBudget::unlimited()) {
            Ok((s, _)) => {
                let still = matches!(witness_status(&g, &s, k, &palette, SolverBudget::unlimited()), Ok((WitnessStatus::Valid, _)));
                let ok = s.max_forbidden() < k && s.degree(k) <= t.degree(k) && still;
                tally.check(ok, || format!("k={k} {t:?} -> {s:?}"));
            }
            Err(e) => tally.fail(|| format!("k={k} {t:?}: {e}")),
        }
    }
    tally.report("strengthen-witness", "random witnesses for k in {1,2}", PROPERTY_TRIALS)
}

/// The separation template keeps the degree and stays below `2k` on `X`.
pub fn check_separation_bounds(seed: u64) -> InstanceReport {
    let mut rng = rng_for(seed, 12);
    let mut tally = Tally::default();
    for _ in 0..PROPERTY_TRIALS {
        let k = rng.gen_range(1..=4);
        let palette = Palette::Plain(plain_palette_size(k));
        let c = random_separation_case(&mut rng, k, &palette);
        match derive_separation_template(&c.h, &c.t, k, &palette, &c.x, &c.y, &c.z) {
            Ok(tp) => {
                let on_x = c.x.iter().map(|&v| tp.forbidden(v).len()).max().unwrap_or(0);
                let ok = tp.degree(k) <= c.t.degree(k) && on_x < 2 * k;
                tally.check(ok, || format!("k={k} {c:?} -> {tp:?}"));
            }
            Err(e) => tally.fail(|| format!("k={k} {c:?}: {e}")),
        }
    }
    tally.report("separation-template", "random separations, k in 1..=4", PROPERTY_TRIALS)
}

/// Greedy proper colouring of `X ∖ S` that agrees with the template on
/// `X ∩ S` and avoids pre-coloured neighbours.
fn colour_cut<R: Rng>(rng: &mut R, c: &SeparationCase, palette_size: usize) -> BTreeMap<Vertex, Colour> {
    let mut col: BTreeMap<Vertex, Colour> = c.t.precolouring().clone();
    for &v in &c.x {
        if col.contains_key(&v) {
            continue;
        }
        let blocked: ColourSet = c.h.neighbours(v).filter_map(|u| col.get(&u).copied()).collect();
        let choice = (0..palette_size).filter(|x| !blocked.contains(x)).choose(rng).expect("7k colours suffice");
        col.insert(v, choice);
    }
    col.retain(|v, _| c.x.contains(v));
    col
}

/// The completion template stays within `2k²`.
pub fn check_completion_bounds(seed: u64) -> InstanceReport {
    let mut rng = rng_for(seed, 13);
    let mut tally = Tally::default();
    for _ in 0..PROPERTY_TRIALS {
        let k = rng.gen_range(1..=4);
        let size = plain_palette_size(k);
        let c = random_separation_case(&mut rng, k, &Palette::Plain(size));
        let cprime = colour_cut(&mut rng, &c, size);
        match derive_completion_template(&c.h, &c.t, k, &c.x, &c.z, &cprime) {
            Ok(td) => {
                let ok = td.degree(k) <= degree_bound(k) && td.max_forbidden() < k;
                tally.check(ok, || format!("k={k} {c:?} -> {td:?}"));
            }
            Err(e) => tally.fail(|| format!("k={k} {c:?}: {e}")),
        }
    }
    tally.report("completion-template", "random separations, k in 1..=4", PROPERTY_TRIALS)
}

/// At most `3k` intervals, each inside one class with `Σ|F| <= 2k`, and the
/// colouring built from them respects the template.
pub fn check_interval_bounds(seed: u64) -> InstanceReport {
    let mut rng = rng_for(seed, 14);
    let mut tally = Tally::default();
    for _ in 0..PROPERTY_TRIALS {
        let k = rng.gen_range(2..=5);
        let c = random_interval_case(&mut rng, k);
        let palette = Palette::Plain(plain_palette_size(k));
        let parts = match interval_partition(&c.h, &c.t, k, &c.classes) {
            Ok(p) => p,
            Err(e) => {
                tally.fail(|| format!("k={k} {c:?}: {e}"));
                continue;
            }
        };
        let free: VertexSet = c.h.vertices().iter().copied().filter(|&v| c.t.colour_of(v).is_none()).collect();
        let covered: Vec<Vertex> = parts.intervals.iter().flatten().copied().collect();
        let shape_ok = parts.len() <= 3 * k
            && (0..parts.len()).all(|m| parts.forbidden_load(&c.t, m) <= 2 * k)
            && parts.intervals.iter().zip(&parts.class_of_interval).all(|(iv, &j)| iv.iter().all(|v| c.classes[j].contains(v)))
            && covered.len() == free.len()
            && covered.iter().copied().collect::<VertexSet>() == free;
        let coloured = colour_from_intervals(&c.t, &parts, &palette);
        let respects_ok = coloured.as_ref().is_ok_and(|col| respects(&c.h, &c.t, &palette, col));
        tally.check(shape_ok && respects_ok, || format!("k={k} {c:?} -> {parts:?} / {coloured:?}"));
    }
    tally.report("interval-partition", "random (k-1)-partite remainders, k in 2..=5", PROPERTY_TRIALS)
}

/// When both derived templates are extensible, gluing the two colourings
/// gives a colouring that respects the original template.
pub fn check_glue_respects(seed: u64) -> InstanceReport {
    let mut rng = rng_for(seed, 15);
    let mut tally = Tally::default();
    let mut attempts = 0;
    while tally.trials < PROPERTY_TRIALS && attempts < 10 * PROPERTY_TRIALS {
        attempts += 1;
        let k = rng.gen_range(1..=4);
        let palette = Palette::Plain(plain_palette_size(k));
        let c = random_separation_case(&mut rng, k, &palette);
        let Ok(tp) = derive_separation_template(&c.h, &c.t, k, &palette, &c.x, &c.y, &c.z) else {
            tally.fail(|| format!("separation failed on {c:?}"));
            continue;
        };
        let xy: VertexSet = c.x.union(&c.y).copied().collect();
        let xz: VertexSet = c.x.union(&c.z).copied().collect();
        let h1 = c.h.induced_subgraph(&xy).expect("own vertices");
        let Ok(r1) = extend(&h1, &tp, &palette, SolverBudget::unlimited()) else { continue };
        let Outcome::Sat(cprime) = r1.outcome else { continue };
        let Ok(td) = derive_completion_template(&c.h, &c.t, k, &c.x, &c.z, &cprime) else {
            tally.fail(|| format!("completion failed on {c:?}"));
            continue;
        };
        let h2 = c.h.induced_subgraph(&xz).expect("own vertices");
        let Ok(r2) = extend(&h2, &td, &palette, SolverBudget::unlimited()) else { continue };
        let Outcome::Sat(cdouble) = r2.outcome else { continue };
        let glued = glue(&cprime, &cdouble);
        let ok = glued.as_ref().is_ok_and(|col| col.len() == c.h.order() && respects(&c.h, &c.t, &palette, col));
        tally.check(ok, || format!("k={k} {c:?} -> {glued:?}"));
    }
    tally.report("glue", "random separations with both sides extensible", PROPERTY_TRIALS)
}

/// The rainbow colouring of a graph on at most `k` vertices respects the
/// template, for plain palettes of `7k` colours and lists of `4k`.
pub fn check_rainbow_respects(seed: u64) -> InstanceReport {
    let mut rng = rng_for(seed, 16);
    let mut tally = Tally::default();
    for _ in 0..PROPERTY_TRIALS {
        let k = rng.gen_range(1..=5);
        let n = rng.gen_range(1..=k);
        let p = rng.gen_range(0.0..1.0);
        let g = random_graph(&mut rng, n, p);
        let palette = if rng.gen_bool(0.5) {
            Palette::Plain(plain_palette_size(k))
        } else {
            Palette::List(random_lists(&mut rng, &g, 4 * k, 6 * k))
        };
        let t = random_template(&mut rng, &g, &palette, &budget_shape(k, k - 1));
        let col = rainbow_small_case(&g, &t, k, &palette);
        let ok = col.as_ref().is_ok_and(|col| respects(&g, &t, &palette, col));
        tally.check(ok, || format!("k={k} {t:?} {palette:?} -> {col:?}"));
    }
    tally.report("rainbow", "graphs on at most k vertices, k in 1..=5", PROPERTY_TRIALS)
}

/// Which construction an invalidated witness is aimed at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MutationTarget {
    SmallCase,
    Strengthen,
    Glue,
    Intervals,
    ListCompletion,
}

impl MutationTarget {
    pub const ALL: [MutationTarget; 5] = [
        MutationTarget::SmallCase,
        MutationTarget::Strengthen,
        MutationTarget::Glue,
        MutationTarget::Intervals,
        MutationTarget::ListCompletion,
    ];
}

/// A pair with every shape bound of a witness but a respecting colouring,
/// built so that the descent reaches the targeted construction.
pub fn mutated_pair<R: Rng>(rng: &mut R, target: MutationTarget) -> (WitnessPair, ExtractConfig) {
    let pick_k = |rng: &mut R, lo: usize, hi: usize| rng.gen_range(lo..=hi);
    let (h, k, palette, max_forbidden) = match target {
        MutationTarget::SmallCase => {
            let k = pick_k(rng, 1, 4);
            let n = rng.gen_range(1..=k);
            let p = rng.gen_range(0.0..1.0);
            (random_graph(rng, n, p), k, Palette::Plain(plain_palette_size(k)), k - 1)
        }
        MutationTarget::Strengthen => {
            // sparse, so forcing a colour on a long-list vertex cannot block
            // the rest
            let k = pick_k(rng, 1, 2);
            let n = rng.gen_range(k + 2..=10);
            (random_graph(rng, n, 0.3), k, Palette::Plain(plain_palette_size(k)), 2 * k)
        }
        MutationTarget::Glue => {
            let k = pick_k(rng, 2, 3);
            let palette = Palette::Plain(plain_palette_size(k));
            let c = loop {
                let c = random_separation_case(rng, k, &palette);
                if c.h.order() > k {
                    break c;
                }
            };
            (c.h, k, palette, k - 1)
        }
        MutationTarget::Intervals | MutationTarget::ListCompletion => {
            let k = if target == MutationTarget::Intervals { pick_k(rng, 3, 4) } else { pick_k(rng, 2, 3) };
            let (a, b) = (rng.gen_range(k..=k + 3), rng.gen_range(k..=k + 3));
            let h = Graph::new(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)))).expect("valid pairs");
            let palette = if target == MutationTarget::Intervals {
                Palette::Plain(plain_palette_size(k))
            } else {
                Palette::List(random_lists(rng, &h, 4 * k, 6 * k))
            };
            (h, k, palette, k - 1)
        }
    };
    let t = if target == MutationTarget::Strengthen {
        // one vertex with a forbidden list of exactly k colours, so
        // strengthening has something to do
        let v = *h.vertices().choose(rng).expect("graph has vertices");
        let shape = TemplateShape { degree_cap: Some((k, degree_bound(k) - k)), ..budget_shape(k, max_forbidden) };
        let rest: VertexSet = h.vertices().iter().copied().filter(|&u| u != v).collect();
        let mut t = random_template(rng, &h, &palette, &shape).restrict(&rest);
        for c in 0..k {
            t = t.with_forbidden(v, c);
        }
        t
    } else {
        random_template(rng, &h, &palette, &budget_shape(k, max_forbidden))
    };
    let mode = palette.mode();
    let mut cfg = ExtractConfig::with_palette(k, palette);
    cfg.policy = PreconditionPolicy::Trust;
    (WitnessPair { h, t, k, mode }, cfg)
}

/// Run the descent and the chromatic evidence on `pair`; on an internal
/// contradiction, check its colouring respects the reported template.
pub fn run_mutation(pair: WitnessPair, cfg: &ExtractConfig) -> Result<(), String> {
    let g = pair.h.clone();
    let outcome = descend(pair, cfg).and_then(|(_, last, _)| finalize_chromatic(&last, cfg));
    match outcome {
        Err(ExtractError::InternalContradiction(c)) => {
            let h = g.induced_subgraph(&c.vertices).map_err(|e| e.to_string())?;
            if respects(&h, &c.template, &cfg.palette, &c.colouring) && c.colouring.len() == h.order() {
                Ok(())
            } else {
                Err(format!("{:?} colouring does not respect its template", c.stage))
            }
        }
        Err(e) => Err(format!("no contradiction: {e}")),
        Ok(_) => Err("no contradiction: descent completed".into()),
    }
}

/// Invalidated witnesses aimed at each construction in turn: every one must
/// end in an internal contradiction carrying a respecting colouring.
pub fn check_mutations(seed: u64) -> InstanceReport {
    let mut rng = rng_for(seed, 17);
    let mut tally = Tally::default();
    for i in 0..MUTATION_TRIALS {
        let target = MutationTarget::ALL[i as usize % MutationTarget::ALL.len()];
        let (pair, cfg) = mutated_pair(&mut rng, target);
        let desc = format!("{target:?} k={} h={:?} t={:?}", pair.k, pair.h.edges().collect::<Vec<_>>(), pair.t);
        let r = run_mutation(pair, &cfg);
        tally.check(r.is_ok(), || format!("{desc}: {}", r.unwrap_err()));
    }
    tally.report("unreachability-mutations", "invalidated witnesses aimed at each construction", MUTATION_TRIALS)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("theorem3".parse::<Suite>().is_err());
    }

    #[test]
    fn shipped_instance_ids_are_unique() {
        let mut ids: Vec<String> = theorem1_instances().into_iter().chain(theorem2_instances()).map(|i| i.id).collect();
        let n = ids.len();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), n);
    }

    #[test]
    fn random_cases_meet_their_shapes() {
        let mut rng = rng_for(1, 0);
        for _ in 0..200 {
            let k = rng.gen_range(1..=4);
            let c = random_separation_case(&mut rng, k, &Palette::Plain(7 * k));
            assert!(c.t.degree(k) <= degree_bound(k));
            assert!(c.t.restrict(&c.z).degree(k) <= k * k);
            assert!(c.x.len() < k);
            let k = rng.gen_range(2..=4);
            let ic = random_interval_case(&mut rng, k);
            assert!(ic.t.degree(k) <= degree_bound(k));
            assert_eq!(ic.classes.len(), k - 1);
        }
    }

    #[test]
    fn each_mutation_target_fires() {
        let mut rng = rng_for(3, 0);
        for target in MutationTarget::ALL {
            for _ in 0..5 {
                let (pair, cfg) = mutated_pair(&mut rng, target);
                run_mutation(pair, &cfg).unwrap_or_else(|e| panic!("{target:?}: {e}"));
            }
        }
    }
}
