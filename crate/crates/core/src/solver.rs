//! The extensibility oracle: does some proper colouring from the palette
//! respect a given template?
//!
//! [`extend`] is a complete backtracking search with forward checking.
//! [`brute_force_extend`] enumerates every assignment and exists only as an
//! independent check on small instances.

use std::time::{Duration, Instant};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::colouring::{Colour, Colouring};
use crate::graph::Graph;
use crate::template::{respects, Palette, Template, TemplateError};

/// Largest graph [`brute_force_extend`] accepts.
pub const BRUTE_FORCE_MAX_ORDER: usize = 8;
/// Largest number of assignments [`brute_force_extend`] will enumerate.
pub const BRUTE_FORCE_MAX_ASSIGNMENTS: u128 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("malformed template: {0}")]
    Malformed(#[from] TemplateError),
    #[error("instance too large for exhaustive enumeration ({0})")]
    CapExceeded(String),
    #[error("search produced a colouring that does not respect the template")]
    Unsound,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverBudget {
    /// Maximum number of colour assignments tried; 0 means unlimited.
    pub max_decisions: u64,
    #[serde(skip)]
    pub wall_clock: Option<Duration>,
}

impl SolverBudget {
    pub fn unlimited() -> Self {
        SolverBudget::default()
    }

    pub fn decisions(max_decisions: u64) -> Self {
        SolverBudget { max_decisions, wall_clock: None }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveStats {
    pub decisions: u64,
    pub backtracks: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SolveStats {
    pub fn absorb(&mut self, other: &SolveStats) {
        self.decisions += other.decisions;
        self.backtracks += other.backtracks;
        self.elapsed += other.elapsed;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Sat(Colouring),
    Unsat,
    ResourceLimit,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub outcome: Outcome,
    pub stats: SolveStats,
}

impl SolveResult {
    pub fn is_sat(&self) -> bool {
        matches!(self.outcome, Outcome::Sat(_))
    }

    pub fn is_unsat(&self) -> bool {
        matches!(self.outcome, Outcome::Unsat)
    }
}

/// Decide whether a colouring of `g` from `palette` respecting `t` exists.
///
/// Free vertices carry candidate sets (palette or `L_v`, minus `F(v)`, minus
/// colours of pre-coloured neighbours). The search branches on the vertex
/// with the fewest candidates (then higher degree, then smaller id), tries
/// colours in ascending order and prunes neighbours' candidates after each
/// assignment. Colours that start with identical candidate membership at
/// every vertex are interchangeable until one of them is used, so only the
/// smallest unused colour of each such class is tried.
pub fn extend(g: &Graph, t: &Template, palette: &Palette, budget: SolverBudget) -> Result<SolveResult, SolverError> {
    t.check(g, palette)?;
    let started = Instant::now();
    let universe: Vec<Colour> = palette.universe().into_iter().collect();
    let nc = universe.len();

    let free: Vec<usize> = (0..g.order()).filter(|&i| t.colour_of(g.vertices()[i]).is_none()).collect();
    let mut slot = vec![usize::MAX; g.order()];
    for (s, &i) in free.iter().enumerate() {
        slot[i] = s;
    }

    let mut domains = Vec::with_capacity(free.len());
    for &i in &free {
        let v = g.vertices()[i];
        let mut d = FixedBitSet::with_capacity(nc);
        for (ci, &c) in universe.iter().enumerate() {
            if palette.allows(v, c) && !t.forbidden(v).contains(&c) {
                d.insert(ci);
            }
        }
        for u in g.neighbours(v) {
            if let Some(c) = t.colour_of(u) {
                if let Ok(ci) = universe.binary_search(&c) {
                    d.set(ci, false);
                }
            }
        }
        domains.push(d);
    }

    // colours with identical membership across all initial domains
    let mut class_of = vec![0usize; nc];
    {
        let mut signatures: Vec<Vec<bool>> = Vec::new();
        for (ci, class) in class_of.iter_mut().enumerate() {
            let sig: Vec<bool> = domains.iter().map(|d| d.contains(ci)).collect();
            *class = match signatures.iter().position(|s| *s == sig) {
                Some(p) => p,
                None => {
                    signatures.push(sig);
                    signatures.len() - 1
                }
            };
        }
    }

    let neighbours: Vec<Vec<usize>> = free
        .iter()
        .map(|&i| g.local_neighbours(i).iter().filter(|&&j| slot[j] != usize::MAX).map(|&j| slot[j]).collect())
        .collect();
    let degree: Vec<usize> = free.iter().map(|&i| g.local_neighbours(i).len()).collect();
    let cliques = clique_cover(&neighbours, &degree);

    let mut search = Search {
        domains,
        neighbours,
        degree,
        class_of,
        cliques,
        assigned: vec![None; free.len()],
        use_count: vec![0; nc],
        trail: Vec::new(),
        stats: SolveStats::default(),
        budget,
        started,
        exhausted: false,
    };
    let found = search.run();
    search.stats.elapsed = started.elapsed();
    let outcome = if found {
        let mut col: Colouring = t.precolouring().clone();
        for (s, &i) in free.iter().enumerate() {
            col.insert(g.vertices()[i], universe[search.assigned[s].expect("complete assignment")]);
        }
        if !respects(g, t, palette, &col) {
            return Err(SolverError::Unsound);
        }
        Outcome::Sat(col)
    } else if search.exhausted {
        Outcome::ResourceLimit
    } else {
        Outcome::Unsat
    };
    Ok(SolveResult { outcome, stats: search.stats })
}

struct Search {
    domains: Vec<FixedBitSet>,
    neighbours: Vec<Vec<usize>>,
    degree: Vec<usize>,
    class_of: Vec<usize>,
    /// Cliques among free vertices; their unassigned members need distinct
    /// colours, so together they need as many candidates as members.
    cliques: Vec<Vec<usize>>,
    assigned: Vec<Option<usize>>,
    use_count: Vec<u32>,
    /// `(vertex, colour)` removals to undo, in order.
    trail: Vec<(usize, usize)>,
    stats: SolveStats,
    budget: SolverBudget,
    started: Instant,
    exhausted: bool,
}

impl Search {
    fn pick(&self) -> Option<usize> {
        (0..self.assigned.len()).filter(|&v| self.assigned[v].is_none()).min_by_key(|&v| {
            (self.domains[v].count_ones(..), std::cmp::Reverse(self.degree[v]), v)
        })
    }

    fn out_of_budget(&mut self) -> bool {
        if self.budget.max_decisions > 0 && self.stats.decisions > self.budget.max_decisions {
            self.exhausted = true;
        }
        if let Some(cap) = self.budget.wall_clock {
            if self.stats.decisions.is_multiple_of(1024) && self.started.elapsed() > cap {
                self.exhausted = true;
            }
        }
        self.exhausted
    }

    fn cliques_fit(&self) -> bool {
        let mut union = FixedBitSet::with_capacity(self.use_count.len());
        self.cliques.iter().all(|q| {
            union.clear();
            let mut open = 0;
            for &v in q.iter().filter(|&&v| self.assigned[v].is_none()) {
                union.union_with(&self.domains[v]);
                open += 1;
            }
            union.count_ones(..) >= open
        })
    }

    fn run(&mut self) -> bool {
        if !self.cliques_fit() {
            return false;
        }
        let Some(v) = self.pick() else { return true };
        let candidates: Vec<usize> = self.domains[v].ones().collect();
        let mut tried_fresh_class = Vec::new();
        for c in candidates {
            if self.use_count[c] == 0 {
                let class = self.class_of[c];
                if tried_fresh_class.contains(&class) {
                    continue;
                }
                tried_fresh_class.push(class);
            }
            self.stats.decisions += 1;
            if self.out_of_budget() {
                return false;
            }
            let mark = self.trail.len();
            if self.assign(v, c) && self.run() {
                return true;
            }
            if self.exhausted {
                return false;
            }
            self.stats.backtracks += 1;
            self.undo(v, c, mark);
        }
        false
    }

    fn assign(&mut self, v: usize, c: usize) -> bool {
        self.assigned[v] = Some(c);
        self.use_count[c] += 1;
        let mut ok = true;
        for idx in 0..self.neighbours[v].len() {
            let u = self.neighbours[v][idx];
            if self.assigned[u].is_none() && self.domains[u].contains(c) {
                self.domains[u].set(c, false);
                self.trail.push((u, c));
                if self.domains[u].is_clear() {
                    ok = false;
                }
            }
        }
        ok
    }

    fn undo(&mut self, v: usize, c: usize, mark: usize) {
        for (u, col) in self.trail.drain(mark..) {
            self.domains[u].insert(col);
        }
        self.use_count[c] -= 1;
        self.assigned[v] = None;
    }
}

/// One greedy maximal clique per vertex (seeded in decreasing degree,
/// extended by common neighbours of largest degree), deduplicated; only
/// cliques of three or more vertices are kept.
fn clique_cover(neighbours: &[Vec<usize>], degree: &[usize]) -> Vec<Vec<usize>> {
    let n = neighbours.len();
    let adj: Vec<FixedBitSet> = neighbours
        .iter()
        .map(|ns| {
            let mut b = FixedBitSet::with_capacity(n);
            ns.iter().for_each(|&u| b.insert(u));
            b
        })
        .collect();
    let mut seeds: Vec<usize> = (0..n).collect();
    seeds.sort_by_key(|&v| (std::cmp::Reverse(degree[v]), v));
    let mut out: Vec<Vec<usize>> = Vec::new();
    for seed in seeds {
        let mut clique = vec![seed];
        let mut common = adj[seed].clone();
        while let Some(u) = common.ones().max_by_key(|&u| (degree[u], std::cmp::Reverse(u))) {
            clique.push(u);
            common.intersect_with(&adj[u]);
        }
        clique.sort_unstable();
        if clique.len() >= 3 && !out.contains(&clique) {
            out.push(clique);
        }
    }
    out
}

/// Exhaustive enumeration over `∏ (palette at v ∖ F(v))` for free vertices,
/// returning the first respecting assignment in odometer order.
pub fn brute_force_extend(g: &Graph, t: &Template, palette: &Palette) -> Result<SolveResult, SolverError> {
    t.check(g, palette)?;
    if g.order() > BRUTE_FORCE_MAX_ORDER {
        return Err(SolverError::CapExceeded(format!("{} vertices", g.order())));
    }
    let started = Instant::now();
    let free: Vec<_> = g.vertices().iter().copied().filter(|&v| t.colour_of(v).is_none()).collect();
    let options: Vec<Vec<Colour>> =
        free.iter().map(|&v| palette.colours(v).filter(|c| !t.forbidden(v).contains(c)).collect()).collect();
    let space: u128 = options.iter().map(|o| o.len() as u128).product();
    if space > BRUTE_FORCE_MAX_ASSIGNMENTS {
        return Err(SolverError::CapExceeded(format!("{space} assignments")));
    }
    let mut stats = SolveStats::default();
    let mut outcome = Outcome::Unsat;
    if options.iter().all(|o| !o.is_empty()) {
        let mut odometer = vec![0usize; free.len()];
        'enumerate: loop {
            stats.decisions += 1;
            let mut col = t.precolouring().clone();
            for (j, &v) in free.iter().enumerate() {
                col.insert(v, options[j][odometer[j]]);
            }
            if respects(g, t, palette, &col) {
                outcome = Outcome::Sat(col);
                break;
            }
            let mut pos = free.len();
            loop {
                if pos == 0 {
                    break 'enumerate;
                }
                pos -= 1;
                odometer[pos] += 1;
                if odometer[pos] < options[pos].len() {
                    continue 'enumerate;
                }
                odometer[pos] = 0;
            }
        }
    }
    stats.elapsed = started.elapsed();
    Ok(SolveResult { outcome, stats })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::is_colourable;
    use crate::graph::Vertex;

    fn complete(n: usize) -> Graph {
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    fn tpl(pre: &[(Vertex, Colour)], forb: &[(Vertex, &[Colour])]) -> Template {
        Template::new(
            pre.iter().copied().collect(),
            forb.iter().map(|(v, f)| (*v, f.iter().copied().collect())).collect(),
        )
        .unwrap()
    }

    #[test]
    fn triangle_with_seven_colours() {
        let r = extend(&complete(3), &Template::empty(), &Palette::Plain(7), SolverBudget::unlimited()).unwrap();
        let Outcome::Sat(col) = r.outcome else { panic!() };
        let distinct: std::collections::BTreeSet<_> = col.values().collect();
        assert_eq!(distinct.len(), 3);
    }

    #[test]
    fn forced_conflict_is_unsat() {
        let t = tpl(&[(0, 0)], &[(1, &[1])]);
        let r = extend(&complete(2), &t, &Palette::Plain(2), SolverBudget::unlimited()).unwrap();
        assert_eq!(r.outcome, Outcome::Unsat);
        assert_eq!(brute_force_extend(&complete(2), &t, &Palette::Plain(2)).unwrap().outcome, Outcome::Unsat);
    }

    #[test]
    fn k8_is_not_seven_colourable() {
        assert!(is_colourable(&complete(8), 7).is_none());
        let r = extend(&complete(8), &Template::empty(), &Palette::Plain(7), SolverBudget::unlimited()).unwrap();
        assert!(r.is_unsat());
        // symmetry reduction keeps the proof linear
        assert!(r.stats.decisions <= 8, "{:?}", r.stats);
    }

    #[test]
    fn large_clique_proofs_stay_small() {
        let r = extend(&complete(15), &Template::empty(), &Palette::Plain(14), SolverBudget::unlimited()).unwrap();
        assert!(r.is_unsat());
        let t = tpl(&[(0, 3)], &[(1, &[0, 1]), (2, &[2])]);
        let r = extend(&complete(15), &t, &Palette::Plain(14), SolverBudget::unlimited()).unwrap();
        assert!(r.is_unsat());
        assert!(r.stats.decisions < 10_000, "{:?}", r.stats);
    }

    #[test]
    fn budget_is_reported_distinctly() {
        let g = crate::family::FamilySpec::Mycielski { base: Box::new(crate::family::FamilySpec::Complete(2)), times: 2 }
            .generate()
            .unwrap();
        let r = extend(&g, &Template::empty(), &Palette::Plain(3), SolverBudget::decisions(3)).unwrap();
        assert_eq!(r.outcome, Outcome::ResourceLimit);
        let r = extend(&g, &Template::empty(), &Palette::Plain(3), SolverBudget::unlimited()).unwrap();
        assert!(r.is_unsat());
    }

    #[test]
    fn empty_graph_and_malformed_templates() {
        let e = Graph::empty(0);
        let r = brute_force_extend(&e, &Template::empty(), &Palette::Plain(3)).unwrap();
        assert_eq!(r.outcome, Outcome::Sat(Colouring::new()));
        assert_eq!(extend(&e, &Template::empty(), &Palette::Plain(0), SolverBudget::unlimited()).unwrap().outcome, Outcome::Sat(Colouring::new()));

        let bad = tpl(&[(0, 1), (1, 1)], &[]);
        assert!(matches!(
            brute_force_extend(&complete(2), &bad, &Palette::Plain(3)),
            Err(SolverError::Malformed(TemplateError::ImproperPrecolouring(0, 1)))
        ));
        assert!(matches!(extend(&complete(2), &bad, &Palette::Plain(3), SolverBudget::unlimited()), Err(SolverError::Malformed(_))));
        assert!(matches!(brute_force_extend(&complete(9), &Template::empty(), &Palette::Plain(3)), Err(SolverError::CapExceeded(_))));
    }

    #[test]
    fn list_mode_uses_own_lists() {
        let g = complete(2);
        let lists = [(0, [5].into()), (1, [5, 6].into())].into();
        let r = extend(&g, &Template::empty(), &Palette::List(lists), SolverBudget::unlimited()).unwrap();
        assert_eq!(r.outcome, Outcome::Sat([(0, 5), (1, 6)].into()));
    }

    #[test]
    fn deterministic_colourings() {
        let g = crate::family::FamilySpec::Random { n: 12, p: 0.4, seed: 3 }.generate().unwrap();
        let t = tpl(&[(0, 2)], &[(3, &[0, 1])]);
        let a = extend(&g, &t, &Palette::Plain(4), SolverBudget::unlimited()).unwrap();
        let b = extend(&g, &t, &Palette::Plain(4), SolverBudget::unlimited()).unwrap();
        assert_eq!(a.outcome, b.outcome);
        assert_eq!(a.stats.decisions, b.stats.decisions);
    }
}
