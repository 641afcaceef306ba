//! Template-level constructions used by the descent: the separation and
//! completion templates built around a small cut, gluing of the two side
//! colourings, the rainbow colouring of tiny graphs, the interval partition
//! of a `(k-1)`-colourable remainder and its colouring, and the direct list
//! completion.
//!
//! Each construction checks its preconditions and returns a fresh value.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::colouring::{list_colour, ColourSet, Colouring, ListAssignment};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::template::{Palette, Template, TemplateError};

fn precondition(msg: impl Into<String>) -> TemplateError {
    TemplateError::Precondition(msg.into())
}

fn require_forbidden_at_most(t: &Template, bound: usize) -> Result<(), TemplateError> {
    if let Some((v, f)) = t.forbidden_lists().iter().find(|(_, f)| f.len() > bound) {
        return Err(precondition(format!("|F({v})| = {} exceeds {bound}", f.len())));
    }
    Ok(())
}

/// `T′` on `h[X ∪ Y]`: the restriction of `t`, where every pre-coloured
/// vertex of `Z` additionally forbids its colour at each of its neighbours in
/// `X ∖ S`.
///
/// In list mode a colour is only forbidden where it is on the vertex's list;
/// elsewhere the constraint is vacuous.
pub fn derive_separation_template(
    h: &Graph,
    t: &Template,
    k: usize,
    palette: &Palette,
    x: &VertexSet,
    y: &VertexSet,
    z: &VertexSet,
) -> Result<Template, TemplateError> {
    check_partition(h, &[x, y, z])?;
    if y.is_empty() || z.is_empty() {
        return Err(precondition("both sides of the cut must be nonempty"));
    }
    if let Some((u, v)) = h.edges().find(|(u, v)| (y.contains(u) && z.contains(v)) || (z.contains(u) && y.contains(v))) {
        return Err(precondition(format!("edge {u}-{v} crosses the cut")));
    }
    let side = t.restrict(z).degree(k);
    if side > k * k {
        return Err(precondition(format!("deg(T_Z) = {side} exceeds k² = {}", k * k)));
    }
    require_forbidden_at_most(t, k.saturating_sub(1))?;

    let kept: VertexSet = x.union(y).copied().collect();
    let mut derived = t.restrict(&kept);
    for (&w, &c) in t.precolouring().iter().filter(|(w, _)| z.contains(w)) {
        for v in h.neighbours(w).filter(|v| x.contains(v) && t.colour_of(*v).is_none()) {
            if palette.allows(v, c) {
                derived = derived.with_forbidden(v, c);
            }
        }
    }
    Ok(derived)
}

/// `T″` on `h[X ∪ Z]`: the restriction of `t` with every vertex of `X ∖ S`
/// pre-coloured as in `cprime`.
pub fn derive_completion_template(
    h: &Graph,
    t: &Template,
    k: usize,
    x: &VertexSet,
    z: &VertexSet,
    cprime: &Colouring,
) -> Result<Template, TemplateError> {
    if x.len() + 1 > k {
        return Err(precondition(format!("|X| = {} exceeds k - 1", x.len())));
    }
    if let Some(&v) = x.iter().chain(z).find(|v| !h.contains(**v)) {
        return Err(TemplateError::UnknownVertex(v));
    }
    if !x.is_disjoint(z) {
        return Err(precondition("X and Z overlap"));
    }
    let side = t.restrict(z).degree(k);
    if side > k * k {
        return Err(precondition(format!("deg(T_Z) = {side} exceeds k² = {}", k * k)));
    }
    let kept: VertexSet = x.union(z).copied().collect();
    let mut derived = t.restrict(&kept);
    for &v in x {
        let c = *cprime.get(&v).ok_or_else(|| precondition(format!("c′ does not colour {v}")))?;
        match t.colour_of(v) {
            Some(pre) if pre != c => return Err(TemplateError::Disagreement(v)),
            Some(_) => {}
            None => derived = derived.with_precolour(v, c),
        }
    }
    for (&v, &c) in derived.precolouring() {
        if let Some(u) = h.neighbours(v).find(|u| kept.contains(u) && derived.colour_of(*u) == Some(c)) {
            return Err(TemplateError::ImproperPrecolouring(v.min(u), v.max(u)));
        }
    }
    Ok(derived)
}

/// Union of two colourings that must agree wherever both are defined.
pub fn glue(cprime: &Colouring, cdouble: &Colouring) -> Result<Colouring, TemplateError> {
    let mut out = cdouble.clone();
    for (&v, &c) in cprime {
        match out.insert(v, c) {
            Some(prev) if prev != c => return Err(TemplateError::Disagreement(v)),
            _ => {}
        }
    }
    Ok(out)
}

/// Colour every free vertex of a graph on at most `k` vertices with a
/// distinct colour avoiding the pre-colouring and its forbidden list.
///
/// Greedy in vertex order, smallest admissible colour first. Each free
/// vertex has at least `k` admissible colours, so this never runs out.
pub fn rainbow_small_case(h: &Graph, t: &Template, k: usize, palette: &Palette) -> Result<Colouring, TemplateError> {
    if h.order() > k {
        return Err(precondition(format!("graph has {} > k = {k} vertices", h.order())));
    }
    let blocked = t.used_colours();
    let mut col = t.precolouring().clone();
    let mut taken = ColourSet::new();
    for &v in h.vertices() {
        if t.colour_of(v).is_some() {
            continue;
        }
        let c = palette
            .colours(v)
            .find(|c| !blocked.contains(c) && !t.forbidden(v).contains(c) && !taken.contains(c))
            .ok_or(TemplateError::NoEligibleColour(v))?;
        taken.insert(c);
        col.insert(v, c);
    }
    Ok(col)
}

/// Consecutive runs of free vertices, each inside one independent class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalPartition {
    pub intervals: Vec<Vec<Vertex>>,
    /// The class `J_i` each interval lies in.
    pub class_of_interval: Vec<usize>,
    pub classes: Vec<VertexSet>,
}

impl IntervalPartition {
    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// `Σ |F(v)|` over the members of interval `m`.
    pub fn forbidden_load(&self, t: &Template, m: usize) -> usize {
        self.intervals[m].iter().map(|&v| t.forbidden(v).len()).sum()
    }
}

/// Cut the free vertices, ordered class by class and ascending within each
/// class, into intervals. The current interval is closed
///
/// 1. before `v`, when `v` belongs to a different class than the interval;
/// 2. after `v`, when adding `v` pushes the interval's `Σ |F|` above `k`.
pub fn interval_partition(
    h: &Graph,
    t: &Template,
    k: usize,
    classes: &[VertexSet],
) -> Result<IntervalPartition, TemplateError> {
    let free: VertexSet = h.vertices().iter().copied().filter(|&v| t.colour_of(v).is_none()).collect();
    let mut covered = VertexSet::new();
    for (i, class) in classes.iter().enumerate() {
        for &v in class {
            if !free.contains(&v) {
                return Err(precondition(format!("class {i} contains {v}, which is not a free vertex")));
            }
            if !covered.insert(v) {
                return Err(precondition(format!("vertex {v} is in two classes")));
            }
            if let Some(u) = h.neighbours(v).find(|u| class.contains(u)) {
                return Err(precondition(format!("class {i} is not independent: edge {v}-{u}")));
            }
        }
    }
    if covered != free {
        return Err(precondition("classes do not cover the free vertices"));
    }

    let mut intervals: Vec<Vec<Vertex>> = Vec::new();
    let mut class_of_interval = Vec::new();
    let mut current: Vec<Vertex> = Vec::new();
    let mut current_class = 0;
    let mut load = 0;
    for (i, class) in classes.iter().enumerate() {
        for &v in class {
            if !current.is_empty() && current_class != i {
                intervals.push(std::mem::take(&mut current));
                class_of_interval.push(current_class);
                load = 0;
            }
            current_class = i;
            current.push(v);
            load += t.forbidden(v).len();
            if load > k {
                intervals.push(std::mem::take(&mut current));
                class_of_interval.push(current_class);
                load = 0;
            }
        }
    }
    if !current.is_empty() {
        intervals.push(current);
        class_of_interval.push(current_class);
    }
    Ok(IntervalPartition { intervals, class_of_interval, classes: classes.to_vec() })
}

/// Give each interval one colour avoiding all pre-coloured colours and every
/// member's forbidden list, distinct across intervals (greedy, smallest
/// first), and keep the pre-colouring.
pub fn colour_from_intervals(
    t: &Template,
    parts: &IntervalPartition,
    palette: &Palette,
) -> Result<Colouring, TemplateError> {
    let Palette::Plain(size) = palette else { return Err(TemplateError::WrongMode) };
    let blocked = t.used_colours();
    let mut col = t.precolouring().clone();
    let mut taken = ColourSet::new();
    for interval in &parts.intervals {
        let c = (0..*size)
            .find(|c| !blocked.contains(c) && !taken.contains(c) && interval.iter().all(|&v| !t.forbidden(v).contains(c)))
            .ok_or(TemplateError::NoEligibleColour(interval[0]))?;
        taken.insert(c);
        for &v in interval {
            col.insert(v, c);
        }
    }
    Ok(col)
}

/// Per-vertex lists for the free vertices: `L_v ∖ F(v)` minus the colours
/// of pre-coloured neighbours.
pub fn available_lists(h: &Graph, t: &Template, lists: &ListAssignment) -> Result<ListAssignment, TemplateError> {
    let mut out = BTreeMap::new();
    for &v in h.vertices().iter().filter(|&&v| t.colour_of(v).is_none()) {
        let list = lists.get(&v).ok_or(TemplateError::MissingList(v))?;
        let mut avail: ColourSet = list.difference(t.forbidden(v)).copied().collect();
        for u in h.neighbours(v) {
            if let Some(c) = t.colour_of(u) {
                avail.remove(&c);
            }
        }
        out.insert(v, avail);
    }
    Ok(out)
}

/// Colour the free vertices from their available lists with the exact list
/// colouring oracle; `None` when no such colouring exists.
pub fn list_direct_completion(h: &Graph, t: &Template, palette: &Palette) -> Result<Option<Colouring>, TemplateError> {
    let Palette::List(lists) = palette else { return Err(TemplateError::WrongMode) };
    let avail = available_lists(h, t, lists)?;
    let free: VertexSet = avail.keys().copied().collect();
    let sub = h.induced_subgraph(&free).map_err(|_| precondition("template outside graph"))?;
    let inner = list_colour(&sub, &avail).map_err(|_| precondition("missing available list"))?;
    Ok(inner.map(|c| {
        let mut col = t.precolouring().clone();
        col.extend(c);
        col
    }))
}

fn check_partition(h: &Graph, parts: &[&VertexSet]) -> Result<(), TemplateError> {
    let mut seen = VertexSet::new();
    for part in parts {
        for &v in *part {
            if !h.contains(v) {
                return Err(TemplateError::UnknownVertex(v));
            }
            if !seen.insert(v) {
                return Err(precondition(format!("vertex {v} appears in two parts")));
            }
        }
    }
    if seen.len() != h.order() {
        return Err(precondition("parts do not cover the graph"));
    }
    Ok(())
}
