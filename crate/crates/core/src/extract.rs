//! Extraction of a `k`-connected subgraph of chromatic (or list chromatic)
//! number at least `k` from an inextensible graph.
//!
//! The search keeps a witness pair `(H, T)`: an induced subgraph together
//! with a template that no colouring of `H` respects. While `H` is not
//! `k`-connected, a minimum cut `X` splits it into `Y` and `Z` with
//! `deg(T_Z) <= k²`. Either the separation template on `H[X ∪ Y]` is already
//! unsatisfiable, or a colouring of that side fixes `X` and the completion
//! template on `H[X ∪ Z]` must be unsatisfiable; otherwise gluing both
//! colourings would colour `H` and respect `T`. The pair moves to the
//! unsatisfiable side, which is strictly smaller, so the loop terminates.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certificate::{graph_digest, Certificate, ChromaticEvidence, ConnectivityEvidence, CERTIFICATE_FORMAT};
use crate::colouring::{is_colourable, list_chromatic_at_least, Colouring, ListAssignment, DEFAULT_CHOOSABILITY_CAP};
use crate::connectivity::{is_k_connected, min_vertex_cut, MinCut};
use crate::construct::{
    available_lists, colour_from_intervals, derive_completion_template, derive_separation_template, glue,
    interval_partition, list_direct_completion, rainbow_small_case,
};
use crate::graph::{split_by_cut, Graph, GraphError, VertexSet};
use crate::solver::{extend, Outcome, SolveStats, SolverBudget, SolverError};
use crate::template::{respects, Mode, Palette, Template, TemplateError};
use crate::witness::{strengthen_witness, witness_status, WitnessError, WitnessStatus};

/// Palette size that drives the plain-mode theorem: `7k`.
pub fn plain_palette_size(k: usize) -> usize {
    7 * k
}

/// Smallest list size accepted in list mode: `4k`.
pub fn min_list_size(k: usize) -> usize {
    4 * k
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PreconditionPolicy {
    /// Confirm with the solver that the empty template is a witness.
    Verify,
    /// Assume it, e.g. when the chromatic number is known by construction.
    Trust,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtractConfig {
    pub k: usize,
    pub palette: Palette,
    pub budget: SolverBudget,
    pub policy: PreconditionPolicy,
    /// Re-run the solver at every descent entry to confirm the loop
    /// invariant.
    pub recheck_invariant: bool,
    /// Vertex cap for the brute-force choosability witness in list mode.
    pub choosability_cap: usize,
}

impl ExtractConfig {
    /// Plain mode with the palette `0..7k`.
    pub fn plain(k: usize) -> Self {
        Self::with_palette(k, Palette::Plain(plain_palette_size(k)))
    }

    /// List mode. Every list must have at least `4k` colours.
    pub fn list(k: usize, lists: ListAssignment) -> Result<Self, ExtractError> {
        if let Some((v, l)) = lists.iter().find(|(_, l)| l.len() < min_list_size(k)) {
            return Err(ExtractError::InvalidConfig(format!(
                "list at vertex {v} has {} colours, fewer than 4k = {}",
                l.len(),
                min_list_size(k)
            )));
        }
        Ok(Self::with_palette(k, Palette::List(lists)))
    }

    /// Any palette; no size requirements are enforced.
    pub fn with_palette(k: usize, palette: Palette) -> Self {
        ExtractConfig {
            k,
            palette,
            budget: SolverBudget::unlimited(),
            policy: PreconditionPolicy::Verify,
            recheck_invariant: false,
            choosability_cap: DEFAULT_CHOOSABILITY_CAP,
        }
    }

    pub fn mode(&self) -> Mode {
        self.palette.mode()
    }
}

/// The construction that turned out to build a respecting colouring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    LoopInvariant,
    Strengthen,
    SmallCase,
    Glue,
    Intervals,
    ListCompletion,
}

/// A colouring of `H` respecting `T` where none should exist.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contradiction {
    pub stage: Stage,
    pub vertices: VertexSet,
    pub template: Template,
    pub colouring: Colouring,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("graph is not inextensible: a respecting colouring exists")]
    NotInextensible(Colouring),
    #[error("solver budget exhausted during {0}")]
    ResourceLimit(&'static str),
    #[error("internal contradiction at {:?}: a respecting colouring was built", .0.stage)]
    InternalContradiction(Box<Contradiction>),
    #[error("construction failed: {0}")]
    Construction(#[from] TemplateError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// An induced subgraph of the input and a template on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessPair {
    pub h: Graph,
    pub t: Template,
    pub k: usize,
    pub mode: Mode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// Moved to `H[X ∪ Y]` with the separation template.
    Separation,
    /// Moved to `H[X ∪ Z]` with the completion template.
    Completion,
}

/// One move of the descent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescentStep {
    pub order_before: usize,
    pub degree_before: usize,
    pub cut: VertexSet,
    pub y: VertexSet,
    pub z: VertexSet,
    /// `deg(T_Z)`.
    pub side_degree: usize,
    pub branch: Branch,
    pub derived_degree: usize,
    pub derived_max_forbidden: usize,
    pub stats: SolveStats,
}

fn contradiction(stage: Stage, h: &Graph, t: &Template, colouring: Colouring) -> ExtractError {
    ExtractError::InternalContradiction(Box::new(Contradiction {
        stage,
        vertices: h.vertex_set(),
        template: t.clone(),
        colouring,
    }))
}

fn solver_outcome(outcome: Outcome, stage: &'static str) -> Result<Option<Colouring>, ExtractError> {
    match outcome {
        Outcome::Sat(c) => Ok(Some(c)),
        Outcome::Unsat => Ok(None),
        Outcome::ResourceLimit => Err(ExtractError::ResourceLimit(stage)),
    }
}

/// The empty template as the initial witness, confirmed by the solver
/// unless the policy says to trust it.
pub fn check_precondition(g: &Graph, cfg: &ExtractConfig) -> Result<(WitnessPair, SolveStats), ExtractError> {
    if cfg.k == 0 {
        return Err(ExtractError::InvalidConfig("k must be at least 1".into()));
    }
    cfg.palette.covers(g)?;
    let t = Template::empty();
    let mut stats = SolveStats::default();
    if cfg.policy == PreconditionPolicy::Verify {
        let r = extend(g, &t, &cfg.palette, cfg.budget)?;
        stats = r.stats;
        if let Some(col) = solver_outcome(r.outcome, "precondition check")? {
            return Err(ExtractError::NotInextensible(col));
        }
    }
    Ok((WitnessPair { h: g.clone(), t, k: cfg.k, mode: cfg.mode() }, stats))
}

fn pick_sides(t: &Template, k: usize, a: VertexSet, b: VertexSet) -> (VertexSet, VertexSet) {
    // Z is the side with the smaller template degree, then fewer vertices,
    // then the lexicographically smaller vertex set
    let key = |s: &VertexSet| (t.restrict(s).degree(k), s.len(), s.iter().copied().collect::<Vec<_>>());
    if key(&b) < key(&a) {
        (a, b)
    } else {
        (b, a)
    }
}

/// Run the descent from `wp` until the current subgraph is `k`-connected.
pub fn descend(wp: WitnessPair, cfg: &ExtractConfig) -> Result<(Vec<DescentStep>, WitnessPair, SolveStats), ExtractError> {
    let k = wp.k;
    let palette = &cfg.palette;
    let WitnessPair { mut h, mut t, mode, .. } = wp;
    let mut trace = Vec::new();
    let mut total = SolveStats::default();
    loop {
        if cfg.recheck_invariant {
            let (status, stats) = witness_status(&h, &t, k, palette, cfg.budget)?;
            total.absorb(&stats);
            match status {
                WitnessStatus::Valid => {}
                WitnessStatus::Extensible(col) => return Err(contradiction(Stage::LoopInvariant, &h, &t, col)),
                WitnessStatus::ResourceLimit => return Err(ExtractError::ResourceLimit("invariant check")),
                other => {
                    return Err(ExtractError::Construction(TemplateError::Precondition(format!(
                        "loop invariant broken: {other:?}"
                    ))))
                }
            }
        }

        t = match strengthen_witness(&h, &t, k, palette, cfg.budget) {
            Ok((s, stats)) => {
                total.absorb(&stats);
                s
            }
            Err(WitnessError::Extensible(col)) => return Err(contradiction(Stage::Strengthen, &h, &t, col)),
            Err(WitnessError::ResourceLimit) => return Err(ExtractError::ResourceLimit("strengthening")),
            Err(WitnessError::Solver(e)) => return Err(e.into()),
            Err(WitnessError::NoEligibleColour(v)) => return Err(TemplateError::NoEligibleColour(v).into()),
            Err(WitnessError::OutOfBounds) => {
                return Err(TemplateError::Precondition("strengthened template out of bounds".into()).into())
            }
        };

        if h.order() <= k {
            let col = rainbow_small_case(&h, &t, k, palette)?;
            return Err(unreachable_colouring(Stage::SmallCase, &h, &t, palette, col));
        }
        if is_k_connected(&h, k).expect("k >= 1") {
            return Ok((trace, WitnessPair { h, t, k, mode }, total));
        }

        let x = match min_vertex_cut(&h) {
            MinCut::Cut(x) => x,
            MinCut::Complete => unreachable!("a complete graph on more than k vertices is k-connected"),
        };
        debug_assert!(x.len() < k);
        let (a, b) = split_by_cut(&h, &x)?;
        let (y, z) = pick_sides(&t, k, a, b);
        let side_degree = t.restrict(&z).degree(k);
        let mut step_stats = SolveStats::default();

        let t_sep = derive_separation_template(&h, &t, k, palette, &x, &y, &z)?;
        let xy: VertexSet = x.union(&y).copied().collect();
        let h_sep = h.induced_subgraph(&xy)?;
        let r = extend(&h_sep, &t_sep, palette, cfg.budget)?;
        step_stats.absorb(&r.stats);
        let (branch, next_h, next_t) = match solver_outcome(r.outcome, "separation side")? {
            None => (Branch::Separation, h_sep, t_sep),
            Some(cprime) => {
                let t_comp = derive_completion_template(&h, &t, k, &x, &z, &cprime)?;
                let xz: VertexSet = x.union(&z).copied().collect();
                let h_comp = h.induced_subgraph(&xz)?;
                let r = extend(&h_comp, &t_comp, palette, cfg.budget)?;
                step_stats.absorb(&r.stats);
                match solver_outcome(r.outcome, "completion side")? {
                    None => (Branch::Completion, h_comp, t_comp),
                    Some(cdouble) => {
                        let col = glue(&cprime, &cdouble)?;
                        return Err(unreachable_colouring(Stage::Glue, &h, &t, palette, col));
                    }
                }
            }
        };
        total.absorb(&step_stats);
        trace.push(DescentStep {
            order_before: h.order(),
            degree_before: t.degree(k),
            cut: x,
            y,
            z,
            side_degree,
            branch,
            derived_degree: next_t.degree(k),
            derived_max_forbidden: next_t.max_forbidden(),
            stats: step_stats,
        });
        h = next_h;
        t = next_t;
    }
}

/// A construction that should be impossible produced `col`. If it really
/// respects the template this is the proof's contradiction; otherwise the
/// construction itself is broken.
fn unreachable_colouring(stage: Stage, h: &Graph, t: &Template, palette: &Palette, col: Colouring) -> ExtractError {
    if respects(h, t, palette, &col) {
        contradiction(stage, h, t, col)
    } else {
        ExtractError::Construction(TemplateError::Precondition(format!(
            "{stage:?} construction produced a colouring that does not respect the template"
        )))
    }
}

/// Evidence that the final `H` has (list) chromatic number at least `k`.
pub fn finalize_chromatic(wp: &WitnessPair, cfg: &ExtractConfig) -> Result<ChromaticEvidence, ExtractError> {
    let k = wp.k;
    let (h, t) = (&wp.h, &wp.t);
    match &cfg.palette {
        Palette::Plain(_) => {
            let free: VertexSet = h.vertices().iter().copied().filter(|&v| t.colour_of(v).is_none()).collect();
            let rest = h.induced_subgraph(&free)?;
            if let Some(col) = is_colourable(&rest, k - 1) {
                let classes: Vec<VertexSet> = (0..k - 1)
                    .map(|c| col.iter().filter(|(_, &cc)| cc == c).map(|(&v, _)| v).collect())
                    .collect();
                let parts = interval_partition(h, t, k, &classes)?;
                let full = colour_from_intervals(t, &parts, &cfg.palette)?;
                return Err(unreachable_colouring(Stage::Intervals, h, t, &cfg.palette, full));
            }
            let whole_colourable = is_colourable(h, k - 1).is_some();
            debug_assert!(!whole_colourable);
            Ok(ChromaticEvidence::Plain { colours: k - 1, remainder_colourable: false, whole_colourable })
        }
        Palette::List(lists) => {
            if let Some(col) = list_direct_completion(h, t, &cfg.palette)? {
                return Err(unreachable_colouring(Stage::ListCompletion, h, t, &cfg.palette, col));
            }
            let completion_lists = available_lists(h, t, lists)?;
            let witness = if k <= 2 || h.order() <= cfg.choosability_cap {
                list_chromatic_at_least(h, k, cfg.choosability_cap).ok().flatten()
            } else {
                None
            };
            Ok(ChromaticEvidence::List { threshold: k, completion_lists, witness })
        }
    }
}

/// Precondition check, descent and chromatic evidence, assembled into a
/// certificate.
pub fn extract(g: &Graph, cfg: &ExtractConfig) -> Result<Certificate, ExtractError> {
    let (wp, mut stats) = check_precondition(g, cfg)?;
    let (trace, last, descent_stats) = descend(wp, cfg)?;
    stats.absorb(&descent_stats);
    let chromatic = finalize_chromatic(&last, cfg)?;
    let cut = match min_vertex_cut(&last.h) {
        MinCut::Cut(x) => Some(x),
        MinCut::Complete => None,
    };
    let connectivity = ConnectivityEvidence {
        min_cut_size: cut.as_ref().map_or(last.h.order().saturating_sub(1), VertexSet::len),
        min_cut: cut,
    };
    let lists = match &cfg.palette {
        Palette::Plain(_) => None,
        Palette::List(l) => Some(l.iter().filter(|(v, _)| last.h.contains(**v)).map(|(&v, l)| (v, l.clone())).collect()),
    };
    Ok(Certificate {
        format: CERTIFICATE_FORMAT.to_string(),
        graph_sha256: graph_digest(g),
        graph_order: g.order(),
        graph_size: g.size(),
        k: cfg.k,
        mode: cfg.mode(),
        palette_size: match cfg.palette {
            Palette::Plain(s) => Some(s),
            Palette::List(_) => None,
        },
        lists,
        vertices: last.h.vertices().to_vec(),
        template: last.t.clone(),
        trace,
        connectivity,
        chromatic,
        solver: stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::verify_certificate;
    use crate::family::FamilySpec;

    fn gen(s: &str) -> Graph {
        s.parse::<FamilySpec>().unwrap().generate().unwrap()
    }

    #[test]
    fn precondition_examples() {
        let (wp, _) = check_precondition(&gen("complete(8)"), &ExtractConfig::plain(1)).unwrap();
        assert_eq!(wp.t, Template::empty());
        assert!(matches!(
            check_precondition(&gen("cycle(5)"), &ExtractConfig::plain(1)),
            Err(ExtractError::NotInextensible(_))
        ));
        assert!(check_precondition(&gen("glued_cliques([15,15],1)"), &ExtractConfig::plain(2)).is_ok());
        assert!(matches!(
            check_precondition(&gen("complete(3)"), &ExtractConfig::with_palette(0, Palette::Plain(0))),
            Err(ExtractError::InvalidConfig(_))
        ));
    }

    #[test]
    fn trust_policy_skips_the_solver() {
        let mut cfg = ExtractConfig::plain(1);
        cfg.policy = PreconditionPolicy::Trust;
        let (_, stats) = check_precondition(&gen("cycle(5)"), &cfg).unwrap();
        assert_eq!(stats.decisions, 0);
    }

    #[test]
    fn complete_graph_needs_no_descent() {
        let cfg = ExtractConfig::plain(2);
        let (wp, _) = check_precondition(&gen("complete(15)"), &cfg).unwrap();
        let (trace, last, _) = descend(wp, &cfg).unwrap();
        assert!(trace.is_empty());
        assert_eq!(last.h.order(), 15);
    }

    #[test]
    fn glued_cliques_descend_once() {
        let g = gen("glued_cliques([15,15],1)");
        let mut cfg = ExtractConfig::plain(2);
        cfg.recheck_invariant = true;
        let cert = extract(&g, &cfg).unwrap();
        assert_eq!(cert.trace.len(), 1);
        assert_eq!(cert.trace[0].cut, [0].into());
        assert_eq!(cert.vertices.len(), 15);
        assert!(cert.vertices.contains(&0));
        assert!(verify_certificate(&g, &cert));
    }

    #[test]
    fn join_is_already_connected_enough() {
        let g = gen("join(cycle(5),complete(5))");
        let cert = extract(&g, &ExtractConfig::plain(1)).unwrap();
        assert!(cert.trace.is_empty());
        assert_eq!(cert.vertices.len(), 10);
        assert!(verify_certificate(&g, &cert));
    }

    #[test]
    fn k1_on_k8() {
        let g = gen("complete(8)");
        let cert = extract(&g, &ExtractConfig::plain(1)).unwrap();
        assert_eq!(cert.vertices, (0..8).collect::<Vec<_>>());
        assert_eq!(cert.connectivity.min_cut_size, 7);
        assert!(matches!(cert.chromatic, ChromaticEvidence::Plain { colours: 0, .. }));
    }

    #[test]
    fn list_mode_on_glued_cliques() {
        let g = gen("glued_cliques([9,9],1)");
        let lists: ListAssignment = g.vertices().iter().map(|&v| (v, (0..8).collect())).collect();
        let cfg = ExtractConfig::list(2, lists).unwrap();
        let cert = extract(&g, &cfg).unwrap();
        assert_eq!(cert.vertices.len(), 9);
        let ChromaticEvidence::List { witness: Some(w), .. } = &cert.chromatic else { panic!() };
        assert!(w.values().all(|l| l.len() == 1));
        assert!(verify_certificate(&g, &cert));
    }

    #[test]
    fn short_lists_are_rejected() {
        let lists: ListAssignment = (0..3).map(|v| (v, (0..7).collect())).collect();
        assert!(matches!(ExtractConfig::list(2, lists), Err(ExtractError::InvalidConfig(_))));
    }

    #[test]
    fn corrupted_witness_triggers_contradiction() {
        // K_3 with 7 colours: the empty template is no witness, so the small
        // case colours it.
        let g = gen("complete(3)");
        let cfg = ExtractConfig::plain(3);
        let wp = WitnessPair { h: g.clone(), t: Template::empty(), k: 3, mode: Mode::Plain };
        let Err(ExtractError::InternalContradiction(c)) = descend(wp, &cfg) else { panic!() };
        assert_eq!(c.stage, Stage::SmallCase);
        assert!(respects(&g, &c.template, &cfg.palette, &c.colouring));
    }
}
