//! Exact colourability oracles: ordinary `t`-colouring, colouring from
//! per-vertex lists, and an exhaustive choosability search for small graphs.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::graph::{Graph, Vertex, VertexSet};

pub type Colour = usize;
pub type ColourSet = BTreeSet<Colour>;

/// Total map from a graph's vertices to colours.
pub type Colouring = BTreeMap<Vertex, Colour>;

/// Per-vertex colour lists `L_v`.
pub type ListAssignment = BTreeMap<Vertex, ColourSet>;

/// Largest graph the choosability search accepts for `t >= 3`.
pub const DEFAULT_CHOOSABILITY_CAP: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColouringError {
    #[error("vertex {0} has no list")]
    MissingList(Vertex),
    #[error("graph has {order} vertices, above the choosability search cap of {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("list size threshold must be positive")]
    ZeroThreshold,
}

/// Whether `col` is a proper colouring of `g` defined on every vertex.
pub fn is_proper(g: &Graph, col: &Colouring) -> bool {
    g.vertices().iter().all(|v| col.contains_key(v)) && g.edges().all(|(u, v)| col[&u] != col[&v])
}

/// A proper colouring of `g` with colours `0..t`, or `None` if `χ(g) > t`.
///
/// DSATUR-ordered backtracking; a vertex may only open the next unused
/// colour, which removes colour-permutation symmetry.
pub fn is_colourable(g: &Graph, t: usize) -> Option<Colouring> {
    let n = g.order();
    if n == 0 {
        return Some(Colouring::new());
    }
    if t == 0 {
        return None;
    }
    let mut search = Dsatur {
        g,
        t,
        colour: vec![usize::MAX; n],
        seen: vec![vec![0u32; t]; n],
        saturation: vec![0; n],
    };
    if search.run(0) {
        Some(g.vertices().iter().copied().zip(search.colour).collect())
    } else {
        None
    }
}

struct Dsatur<'a> {
    g: &'a Graph,
    t: usize,
    colour: Vec<usize>,
    /// `seen[v][c]` counts coloured neighbours of `v` with colour `c`.
    seen: Vec<Vec<u32>>,
    saturation: Vec<usize>,
}

impl Dsatur<'_> {
    fn pick(&self) -> Option<usize> {
        (0..self.colour.len())
            .filter(|&v| self.colour[v] == usize::MAX)
            .max_by(|&a, &b| {
                (self.saturation[a], self.g.local_neighbours(a).len())
                    .cmp(&(self.saturation[b], self.g.local_neighbours(b).len()))
                    .then(b.cmp(&a))
            })
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.colour[v] = c;
        for &u in self.g.local_neighbours(v) {
            if self.seen[u][c] == 0 {
                self.saturation[u] += 1;
            }
            self.seen[u][c] += 1;
        }
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.colour[v] = usize::MAX;
        for &u in self.g.local_neighbours(v) {
            self.seen[u][c] -= 1;
            if self.seen[u][c] == 0 {
                self.saturation[u] -= 1;
            }
        }
    }

    fn run(&mut self, used: usize) -> bool {
        let Some(v) = self.pick() else { return true };
        if self.saturation[v] >= self.t {
            return false;
        }
        for c in 0..self.t.min(used + 1) {
            if self.seen[v][c] > 0 {
                continue;
            }
            self.assign(v, c);
            if self.run(used.max(c + 1)) {
                return true;
            }
            self.unassign(v, c);
        }
        false
    }
}

/// A proper colouring of `g` with every vertex coloured from its own list,
/// or `Ok(None)` if none exists. Empty lists are allowed and force `None`.
pub fn list_colour(g: &Graph, lists: &ListAssignment) -> Result<Option<Colouring>, ColouringError> {
    let mut domains = Vec::with_capacity(g.order());
    for &v in g.vertices() {
        let list = lists.get(&v).ok_or(ColouringError::MissingList(v))?;
        domains.push(list.iter().copied().collect::<Vec<_>>());
    }
    let mut colour = vec![None; g.order()];
    if list_search(g, &domains, &mut colour) {
        Ok(Some(g.vertices().iter().copied().zip(colour.into_iter().map(Option::unwrap)).collect()))
    } else {
        Ok(None)
    }
}

fn list_search(g: &Graph, domains: &[Vec<Colour>], colour: &mut [Option<Colour>]) -> bool {
    let candidates = |v: usize, colour: &[Option<Colour>]| -> Vec<Colour> {
        domains[v]
            .iter()
            .copied()
            .filter(|c| g.local_neighbours(v).iter().all(|&u| colour[u] != Some(*c)))
            .collect()
    };
    // most constrained uncoloured vertex, ties to the smallest index
    let mut best: Option<(usize, Vec<Colour>)> = None;
    for v in (0..colour.len()).filter(|&v| colour[v].is_none()) {
        let cands = candidates(v, colour);
        if best.as_ref().is_none_or(|(_, b)| cands.len() < b.len()) {
            let empty = cands.is_empty();
            best = Some((v, cands));
            if empty {
                break;
            }
        }
    }
    let Some((v, cands)) = best else { return true };
    for c in cands {
        colour[v] = Some(c);
        if list_search(g, domains, colour) {
            return true;
        }
    }
    colour[v] = None;
    false
}

/// Decide `χ_ℓ(g) >= t` by searching for an assignment of `(t-1)`-element
/// lists from which `g` cannot be coloured. Returns that assignment when one
/// exists.
///
/// Lists are enumerated vertex by vertex up to renaming of colours: each new
/// list mixes already-introduced colours with the next fresh ones, so the
/// colour universe never exceeds `|V|·(t-1)`. A prefix that is already not
/// colourable is completed with fresh lists and returned.
pub fn list_chromatic_at_least(
    g: &Graph,
    t: usize,
    cap: usize,
) -> Result<Option<ListAssignment>, ColouringError> {
    if t == 0 {
        return Err(ColouringError::ZeroThreshold);
    }
    if t == 1 {
        return Ok(if g.is_empty() { None } else { Some(g.vertices().iter().map(|&v| (v, ColourSet::new())).collect()) });
    }
    if t >= 3 && g.order() > cap {
        return Err(ColouringError::CapExceeded { order: g.order(), cap });
    }
    let mut lists = ListAssignment::new();
    Ok(choosability_search(g, t - 1, 0, 0, &mut lists))
}

fn choosability_search(
    g: &Graph,
    size: usize,
    next: usize,
    used: usize,
    lists: &mut ListAssignment,
) -> Option<ListAssignment> {
    let verts = g.vertices();
    if next > 0 {
        let prefix: VertexSet = verts[..next].iter().copied().collect();
        let sub = g.induced_subgraph(&prefix).expect("prefix of own vertices");
        if list_colour(&sub, lists).expect("prefix lists present").is_none() {
            let mut witness = lists.clone();
            let mut fresh = used;
            for &v in &verts[next..] {
                witness.insert(v, (fresh..fresh + size).collect());
                fresh += size;
            }
            return Some(witness);
        }
    }
    if next == verts.len() {
        return None;
    }
    for fresh in 0..=size {
        let old = size - fresh;
        if old > used {
            continue;
        }
        for mut list in subsets(used, old) {
            list.extend(used..used + fresh);
            lists.insert(verts[next], list);
            if let Some(w) = choosability_search(g, size, next + 1, used + fresh, lists) {
                return Some(w);
            }
        }
    }
    lists.remove(&verts[next]);
    None
}

/// All `r`-subsets of `0..n` in lexicographic order.
fn subsets(n: usize, r: usize) -> Vec<ColourSet> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<ColourSet>) {
        if cur.len() == r {
            out.push(cur.iter().copied().collect());
            return;
        }
        for i in start..n {
            if n - i < r - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    rec(0, n, r, &mut cur, &mut out);
    out
}
