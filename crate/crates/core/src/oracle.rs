//! Exhaustive reference implementations for tiny graphs. They share no code
//! with the search routines they are compared against: every answer comes
//! from plain enumeration.

use crate::colouring::{ColourSet, ListAssignment};
use crate::graph::{Graph, VertexSet};

/// Any proper colouring with colours `0..t`? Tries all `t^n` assignments.
pub fn brute_colourable(g: &Graph, t: usize) -> bool {
    let n = g.order();
    let edges: Vec<(usize, usize)> = g.edges().map(|(u, v)| (g.index_of(u).unwrap(), g.index_of(v).unwrap())).collect();
    if n == 0 {
        return true;
    }
    if t == 0 {
        return false;
    }
    let mut col = vec![0usize; n];
    loop {
        if edges.iter().all(|&(u, v)| col[u] != col[v]) {
            return true;
        }
        let mut i = 0;
        while i < n {
            col[i] += 1;
            if col[i] < t {
                break;
            }
            col[i] = 0;
            i += 1;
        }
        if i == n {
            return false;
        }
    }
}

/// Smallest `t` with [`brute_colourable`].
pub fn brute_chromatic_number(g: &Graph) -> usize {
    (0..).find(|&t| brute_colourable(g, t)).unwrap()
}

/// Every vertex subset as a sorted vector, by size then lexicographically.
fn subsets_by_size(vertices: &[usize]) -> Vec<Vec<usize>> {
    let n = vertices.len();
    let mut all: Vec<Vec<usize>> = (0u32..1 << n)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).map(|i| vertices[i]).collect())
        .collect();
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    all
}

/// The lexicographically smallest minimum vertex cut, by trying every
/// subset in order; `None` for complete graphs.
pub fn brute_min_cut(g: &Graph) -> Option<VertexSet> {
    subsets_by_size(g.vertices()).into_iter().map(|s| s.into_iter().collect::<VertexSet>()).find(|s| {
        s.len() + 2 <= g.order() && g.components_without(s).len() >= 2
    })
}

/// `n - 1` for complete graphs, otherwise the size of a minimum cut.
pub fn brute_connectivity(g: &Graph) -> usize {
    brute_min_cut(g).map_or(g.order().saturating_sub(1), |s| s.len())
}

/// Any proper colouring choosing each colour from the vertex's list? Walks
/// the full product of the lists.
pub fn brute_list_colourable(g: &Graph, lists: &ListAssignment) -> bool {
    let verts = g.vertices();
    let choices: Vec<Vec<usize>> = verts.iter().map(|v| lists.get(v).map_or(vec![], |l| l.iter().copied().collect())).collect();
    if choices.iter().any(Vec::is_empty) {
        return verts.is_empty();
    }
    let edges: Vec<(usize, usize)> = g.edges().map(|(u, v)| (g.index_of(u).unwrap(), g.index_of(v).unwrap())).collect();
    let n = verts.len();
    let mut idx = vec![0usize; n];
    loop {
        if edges.iter().all(|&(u, v)| choices[u][idx[u]] != choices[v][idx[v]]) {
            return true;
        }
        let mut i = 0;
        while i < n {
            idx[i] += 1;
            if idx[i] < choices[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
        if i == n {
            return false;
        }
    }
}

/// Some assignment of `size`-subsets of `0..palette` to the vertices that
/// admits no colouring, searched over the full product in lexicographic
/// order.
pub fn brute_bad_lists(g: &Graph, size: usize, palette: usize) -> Option<ListAssignment> {
    let pool: Vec<ColourSet> = subsets_by_size(&(0..palette).collect::<Vec<_>>())
        .into_iter()
        .filter(|s| s.len() == size)
        .map(|s| s.into_iter().collect())
        .collect();
    let verts = g.vertices();
    let n = verts.len();
    let mut idx = vec![0usize; n];
    loop {
        let lists: ListAssignment = verts.iter().zip(&idx).map(|(&v, &i)| (v, pool[i].clone())).collect();
        if !brute_list_colourable(g, &lists) {
            return Some(lists);
        }
        let mut i = 0;
        while i < n {
            idx[i] += 1;
            if idx[i] < pool.len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
        if i == n {
            return None;
        }
    }
}

/// Every graph on `0..n` (one per edge subset), in mask order.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let m = pairs.len();
    (0u64..1 << m).map(move |mask| {
        let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
        Graph::new(n, edges).expect("pairs are valid edges")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::FamilySpec;

    fn gen(s: &str) -> Graph {
        s.parse::<FamilySpec>().unwrap().generate().unwrap()
    }

    #[test]
    fn known_values() {
        assert_eq!(brute_chromatic_number(&gen("cycle(5)")), 3);
        assert_eq!(brute_chromatic_number(&gen("complete(4)")), 4);
        assert_eq!(brute_chromatic_number(&Graph::empty(0)), 0);
        assert_eq!(brute_connectivity(&gen("cycle(6)")), 2);
        assert_eq!(brute_min_cut(&gen("complete(5)")), None);
        assert_eq!(brute_min_cut(&Graph::empty(3)), Some(VertexSet::new()));
        assert_eq!(all_graphs(4).count(), 64);
    }

    #[test]
    fn c4_is_two_choosable_and_k24_is_not() {
        assert!(brute_bad_lists(&gen("cycle(4)"), 2, 4).is_none());
        assert!(brute_bad_lists(&gen("cycle(4)"), 1, 2).is_some());
        let k24 = Graph::new(6, (0..2).flat_map(|a| (2..6).map(move |b| (a, b)))).unwrap();
        assert!(brute_bad_lists(&k24, 2, 4).is_some());
    }
}
