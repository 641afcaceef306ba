//! Vertex connectivity and minimum vertex cuts.
//!
//! Local connectivity between two non-adjacent vertices is the maximum
//! number of internally disjoint paths, computed as a unit-capacity max flow
//! on the vertex-split digraph. Global connectivity takes the minimum over
//! the pairs Even's argument requires.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConnectivityError {
    #[error("connectivity threshold k must be positive")]
    ZeroK,
}

/// Result of [`min_vertex_cut`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinCut {
    /// A minimum disconnecting set; empty when the graph is already
    /// disconnected.
    Cut(VertexSet),
    /// The graph is complete (including `K_0` and `K_1`), so no vertex set
    /// disconnects it.
    Complete,
}

impl MinCut {
    pub fn cut(&self) -> Option<&VertexSet> {
        match self {
            MinCut::Cut(x) => Some(x),
            MinCut::Complete => None,
        }
    }
}

struct FlowNet {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u32>,
}

impl FlowNet {
    fn new(nodes: usize) -> Self {
        FlowNet { adj: vec![Vec::new(); nodes], to: Vec::new(), cap: Vec::new() }
    }

    fn arc(&mut self, u: usize, v: usize, c: u32) {
        self.adj[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(c);
        self.adj[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(0);
    }

    /// Augment along shortest paths until `limit` units flow or none remain.
    fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let mut flow = 0;
        let mut pred = vec![usize::MAX; self.adj.len()];
        while flow < limit {
            pred.iter_mut().for_each(|p| *p = usize::MAX);
            let mut queue = VecDeque::from([s]);
            let mut reached = false;
            'bfs: while let Some(u) = queue.pop_front() {
                for &e in &self.adj[u] {
                    let v = self.to[e];
                    if self.cap[e] > 0 && v != s && pred[v] == usize::MAX {
                        pred[v] = e;
                        if v == t {
                            reached = true;
                            break 'bfs;
                        }
                        queue.push_back(v);
                    }
                }
            }
            if !reached {
                break;
            }
            let mut v = t;
            while v != s {
                let e = pred[v];
                self.cap[e] -= 1;
                self.cap[e ^ 1] += 1;
                v = self.to[e ^ 1];
            }
            flow += 1;
        }
        flow
    }
}

/// Connectivity of the subgraph on the `alive` local indices.
enum Conn {
    Complete,
    Value(usize),
}

/// Number of internally disjoint `s`–`t` paths among alive vertices, capped
/// at `limit`. `s` and `t` must be alive and non-adjacent.
fn local_connectivity(g: &Graph, alive: &[bool], s: usize, t: usize, limit: usize) -> usize {
    let n = g.order();
    // node 2i = in(i), 2i+1 = out(i)
    let mut net = FlowNet::new(2 * n);
    for i in (0..n).filter(|&i| alive[i]) {
        net.arc(2 * i, 2 * i + 1, if i == s || i == t { n as u32 } else { 1 });
        for &j in g.local_neighbours(i) {
            if alive[j] {
                net.arc(2 * i + 1, 2 * j, n as u32);
            }
        }
    }
    net.max_flow(2 * s + 1, 2 * t, limit)
}

/// Connectivity of `g[alive]`, computed exactly when it is below `limit`;
/// otherwise any value `>= limit` may be reported.
fn connectivity_capped(g: &Graph, alive: &[bool], limit: usize) -> Conn {
    let live: Vec<usize> = (0..g.order()).filter(|&i| alive[i]).collect();
    let m = live.len();
    let live_edges: usize =
        live.iter().map(|&i| g.local_neighbours(i).iter().filter(|&&j| alive[j]).count()).sum::<usize>() / 2;
    if live_edges == m * m.saturating_sub(1) / 2 {
        return Conn::Complete;
    }
    if !alive_connected(g, alive, &live) {
        return Conn::Value(0);
    }
    let mut best = limit.min(m);
    let mut i = 0;
    while i < live.len() && i <= best {
        let s = live[i];
        for &t in &live[i + 1..] {
            if g.local_neighbours(s).binary_search(&t).is_ok() {
                continue;
            }
            let f = local_connectivity(g, alive, s, t, best);
            if f < best {
                best = f;
            }
        }
        i += 1;
    }
    Conn::Value(best)
}

fn alive_connected(g: &Graph, alive: &[bool], live: &[usize]) -> bool {
    let Some(&start) = live.first() else { return true };
    let mut seen = vec![false; g.order()];
    seen[start] = true;
    let mut stack = vec![start];
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &v in g.local_neighbours(u) {
            if alive[v] && !seen[v] {
                seen[v] = true;
                count += 1;
                stack.push(v);
            }
        }
    }
    count == live.len()
}

/// Vertex connectivity κ(g); `K_n` has connectivity `n - 1`.
pub fn connectivity(g: &Graph) -> usize {
    let alive = vec![true; g.order()];
    match connectivity_capped(g, &alive, usize::MAX) {
        Conn::Complete => g.order().saturating_sub(1),
        Conn::Value(v) => v,
    }
}

/// A minimum vertex cut of `g`, or [`MinCut::Complete`] if none exists.
///
/// Among all minimum cuts the lexicographically smallest (as a sorted
/// sequence) is returned. It is built greedily: the next member is the
/// smallest vertex `v` such that some minimum cut contains the members
/// chosen so far together with `v`.
pub fn min_vertex_cut(g: &Graph) -> MinCut {
    let n = g.order();
    let mut alive = vec![true; n];
    let kappa = match connectivity_capped(g, &alive, usize::MAX) {
        Conn::Complete => return MinCut::Complete,
        Conn::Value(0) => return MinCut::Cut(VertexSet::new()),
        Conn::Value(v) => v,
    };
    let mut cut = VertexSet::new();
    let mut next_from = 0;
    for chosen in 0..kappa {
        let remaining = kappa - chosen - 1;
        let pick = (next_from..n).find(|&i| {
            if !alive[i] {
                return false;
            }
            alive[i] = false;
            let ok = matches!(connectivity_capped(g, &alive, remaining + 1), Conn::Value(c) if c <= remaining);
            alive[i] = true;
            ok
        });
        let i = pick.expect("a minimum cut extends every greedy prefix");
        alive[i] = false;
        cut.insert(g.vertices()[i]);
        next_from = i + 1;
    }
    MinCut::Cut(cut)
}

/// Whether `g` is `k`-connected: more than `k` vertices and no vertex cut
/// of size below `k`.
pub fn is_k_connected(g: &Graph, k: usize) -> Result<bool, ConnectivityError> {
    if k == 0 {
        return Err(ConnectivityError::ZeroK);
    }
    if g.order() <= k {
        return Ok(false);
    }
    let alive = vec![true; g.order()];
    Ok(match connectivity_capped(g, &alive, k) {
        Conn::Complete => true,
        Conn::Value(v) => v >= k,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Vertex;

    fn complete(n: usize) -> Graph {
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    /// Two cliques on `a` vertices sharing vertex 0.
    fn glued(a: usize) -> Graph {
        let mut edges = Vec::new();
        for side in 0..2 {
            let members: Vec<Vertex> =
                std::iter::once(0).chain((1..a).map(|i| i + side * (a - 1))).collect();
            for (p, &u) in members.iter().enumerate() {
                for &v in &members[p + 1..] {
                    edges.push((u, v));
                }
            }
        }
        Graph::new(2 * a - 1, edges).unwrap()
    }

    fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::new(10, e).unwrap()
    }

    #[test]
    fn cut_examples() {
        assert_eq!(min_vertex_cut(&glued(5)), MinCut::Cut([0].into()));
        assert_eq!(min_vertex_cut(&complete(6)), MinCut::Complete);
        assert_eq!(min_vertex_cut(&complete(1)), MinCut::Complete);
        assert_eq!(min_vertex_cut(&Graph::empty(3)), MinCut::Cut(VertexSet::new()));
        let p = petersen();
        let MinCut::Cut(x) = min_vertex_cut(&p) else { panic!() };
        assert_eq!(x.len(), 3);
        assert!(!p.induced_subgraph(&p.vertex_set().difference(&x).copied().collect()).unwrap().is_connected());
        // N(1) = {0, 2, 6} is the lexicographically smallest 3-cut
        assert_eq!(x, [0, 2, 6].into());
    }

    #[test]
    fn k_connected_examples() {
        assert!(is_k_connected(&complete(15), 2).unwrap());
        assert!(!is_k_connected(&glued(15), 2).unwrap());
        assert!(is_k_connected(&cycle(5), 2).unwrap());
        assert!(!is_k_connected(&cycle(5), 3).unwrap());
        assert!(!is_k_connected(&complete(3), 3).unwrap());
        assert!(is_k_connected(&complete(4), 3).unwrap());
        assert_eq!(is_k_connected(&complete(3), 0), Err(ConnectivityError::ZeroK));
        assert_eq!(connectivity(&petersen()), 3);
        assert_eq!(connectivity(&complete(7)), 6);
    }
}
