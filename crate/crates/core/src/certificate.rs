//! Certificates produced by extraction, their JSON form, and an independent
//! re-check from the input graph.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::colouring::{is_colourable, list_colour, ListAssignment};
use crate::connectivity::{is_k_connected, min_vertex_cut, MinCut};
use crate::extract::{Branch, DescentStep};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::solver::{extend, Outcome, SolveStats, SolverBudget};
use crate::template::{Mode, Palette, Template};
use crate::witness::degree_bound;

pub const CERTIFICATE_FORMAT: &str = "conchrom-certificate/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectivityEvidence {
    /// `None` when `H` is complete.
    pub min_cut: Option<VertexSet>,
    /// κ(H); `|V(H)| - 1` for complete graphs.
    pub min_cut_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChromaticEvidence {
    /// `H` minus the pre-coloured set has no colouring with `colours`
    /// colours, and neither has `H`.
    Plain { colours: usize, remainder_colourable: bool, whole_colourable: bool },
    /// `completion_lists` are lists on the free vertices of `H`, each of
    /// size at least `threshold - 1`, admitting no colouring; `witness`, when
    /// present, is an assignment of `(threshold - 1)`-element lists to all of
    /// `H` admitting no colouring.
    List { threshold: usize, completion_lists: ListAssignment, witness: Option<ListAssignment> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub format: String,
    pub graph_sha256: String,
    pub graph_order: usize,
    pub graph_size: usize,
    pub k: usize,
    pub mode: Mode,
    pub palette_size: Option<usize>,
    /// Lists of the vertices of `H` (list mode).
    pub lists: Option<ListAssignment>,
    /// Vertices of the extracted subgraph `H`.
    pub vertices: Vec<Vertex>,
    /// The final witness template on `H`.
    pub template: Template,
    pub trace: Vec<DescentStep>,
    pub connectivity: ConnectivityEvidence,
    pub chromatic: ChromaticEvidence,
    pub solver: SolveStats,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().copied().collect()
    }
}

/// SHA-256 over a canonical text form of the graph (vertex list, then
/// edges in lexicographic order).
pub fn graph_digest(g: &Graph) -> String {
    let mut hasher = Sha256::new();
    let ids: Vec<String> = g.vertices().iter().map(Vertex::to_string).collect();
    hasher.update(format!("v {}\n", ids.join(" ")));
    for (u, v) in g.edges() {
        hasher.update(format!("e {u} {v}\n"));
    }
    hasher.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// Every reason the certificate fails to check against `g`; empty means
/// accepted.
pub fn certificate_failures(g: &Graph, cert: &Certificate) -> Vec<String> {
    let mut fails = Vec::new();
    let k = cert.k;
    if cert.format != CERTIFICATE_FORMAT {
        fails.push(format!("unknown format {:?}", cert.format));
    }
    if cert.graph_sha256 != graph_digest(g) {
        fails.push("graph hash mismatch".into());
        return fails;
    }
    if k == 0 {
        fails.push("k must be positive".into());
        return fails;
    }
    let vertices = cert.vertex_set();
    if vertices.len() != cert.vertices.len() {
        fails.push("duplicate vertices in H".into());
    }
    let h = match g.induced_subgraph(&vertices) {
        Ok(h) => h,
        Err(e) => {
            fails.push(format!("H is not a vertex subset of the graph: {e}"));
            return fails;
        }
    };

    // connectivity
    if !is_k_connected(&h, k).unwrap_or(false) {
        fails.push(format!("H is not {k}-connected"));
    }
    let kappa = match min_vertex_cut(&h) {
        MinCut::Cut(x) => x.len(),
        MinCut::Complete => h.order().saturating_sub(1),
    };
    if kappa != cert.connectivity.min_cut_size {
        fails.push(format!("recorded connectivity {} but recomputed {kappa}", cert.connectivity.min_cut_size));
    }
    if let Some(x) = &cert.connectivity.min_cut {
        if x.len() != cert.connectivity.min_cut_size {
            fails.push("recorded cut size disagrees with the cut".into());
        }
    }

    // chromatic evidence
    match (&cert.mode, &cert.chromatic) {
        (Mode::Plain, ChromaticEvidence::Plain { colours, .. }) => {
            if *colours + 1 != k {
                fails.push(format!("chromatic evidence is for {colours} colours, not k - 1"));
            }
            if is_colourable(&h, k - 1).is_some() {
                fails.push(format!("H is {}-colourable", k - 1));
            }
        }
        (Mode::List, ChromaticEvidence::List { threshold, completion_lists, witness }) => {
            if *threshold != k {
                fails.push("list evidence threshold differs from k".into());
            }
            check_bad_lists(&h, completion_lists, k, false, "completion lists", &mut fails);
            if let Some(w) = witness {
                check_bad_lists(&h, w, k, true, "choosability witness", &mut fails);
            }
        }
        _ => fails.push("chromatic evidence does not match the mode".into()),
    }

    // final template
    let t = &cert.template;
    let palette = match (&cert.mode, cert.palette_size, &cert.lists) {
        (Mode::Plain, Some(size), _) => Some(Palette::Plain(size)),
        (Mode::List, _, Some(l)) => Some(Palette::List(l.clone())),
        _ => {
            fails.push("palette missing for the mode".into());
            None
        }
    };
    if t.degree(k) > degree_bound(k) {
        fails.push("final template degree exceeds 2k²".into());
    }
    if t.max_forbidden() + 1 > k && t.max_forbidden() > 0 {
        fails.push("final template has a forbidden list of size >= k".into());
    }
    if let Some(p) = &palette {
        match extend(&h, t, p, SolverBudget::unlimited()) {
            Ok(r) if r.outcome == Outcome::Unsat => {}
            Ok(r) if matches!(r.outcome, Outcome::Sat(_)) => fails.push("final template is extensible".into()),
            Ok(_) => fails.push("solver gave no definite answer on the final template".into()),
            Err(e) => fails.push(format!("final template malformed: {e}")),
        }
    }

    replay_trace(g, cert, &vertices, &mut fails);
    fails
}

fn check_bad_lists(h: &Graph, lists: &ListAssignment, k: usize, exact: bool, what: &str, fails: &mut Vec<String>) {
    let domain: VertexSet = lists.keys().copied().collect();
    if exact && domain != h.vertex_set() {
        fails.push(format!("{what} do not cover H"));
        return;
    }
    let Ok(sub) = h.induced_subgraph(&domain) else {
        fails.push(format!("{what} mention vertices outside H"));
        return;
    };
    let short = |l: &crate::colouring::ColourSet| if exact { l.len() != k - 1 } else { l.len() < k - 1 };
    if lists.values().any(short) {
        fails.push(format!("{what} have the wrong size"));
    }
    match list_colour(&sub, lists) {
        Ok(None) => {}
        _ => fails.push(format!("{what} admit a colouring")),
    }
}

fn replay_trace(g: &Graph, cert: &Certificate, final_set: &VertexSet, fails: &mut Vec<String>) {
    let k = cert.k;
    let mut current: VertexSet = g.vertex_set();
    for (i, step) in cert.trace.iter().enumerate() {
        let mut bad = |msg: String| fails.push(format!("step {i}: {msg}"));
        if step.order_before != current.len() {
            bad("order does not match the running vertex set".into());
        }
        if step.cut.len() + 1 > k {
            bad(format!("cut of size {} is not below k", step.cut.len()));
        }
        let union: VertexSet = step.cut.iter().chain(&step.y).chain(&step.z).copied().collect();
        if union != current || union.len() != step.cut.len() + step.y.len() + step.z.len() {
            bad("cut and sides do not partition the vertex set".into());
        }
        if step.y.is_empty() || step.z.is_empty() {
            bad("empty side".into());
        }
        if g.edges().any(|(u, v)| (step.y.contains(&u) && step.z.contains(&v)) || (step.z.contains(&u) && step.y.contains(&v))) {
            bad("an edge joins the two sides".into());
        }
        if step.side_degree > k * k {
            bad(format!("side degree {} exceeds k²", step.side_degree));
        }
        if step.degree_before > degree_bound(k) || step.derived_degree > degree_bound(k) {
            bad("template degree exceeds 2k²".into());
        }
        let kept = match step.branch {
            Branch::Separation => {
                if step.derived_degree > step.degree_before {
                    bad("separation template degree increased".into());
                }
                if step.derived_max_forbidden > 2 * k {
                    bad("separation template forbidden list exceeds 2k".into());
                }
                &step.y
            }
            Branch::Completion => {
                if step.derived_max_forbidden + 1 > k && step.derived_max_forbidden > 0 {
                    bad("completion template forbidden list not below k".into());
                }
                &step.z
            }
        };
        current = step.cut.union(kept).copied().collect();
    }
    if &current != final_set {
        fails.push("trace does not end at H".into());
    }
}

/// Accept iff [`certificate_failures`] finds nothing.
pub fn verify_certificate(g: &Graph, cert: &Certificate) -> bool {
    certificate_failures(g, cert).is_empty()
}
