//! Undirected simple graphs with stable vertex identities.
//!
//! A [`Graph`] never renames its vertices: an induced subgraph keeps the
//! identifiers of its host, so templates and colourings defined on the host
//! restrict to subgraphs without any translation.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

/// Vertex identifier. Identifiers are stable across induced subgraphs.
pub type Vertex = usize;

/// A set of vertices, always iterated in ascending order.
pub type VertexSet = BTreeSet<Vertex>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(Vertex),
    #[error("the given vertex set does not disconnect the graph")]
    NotACut,
    #[error("invalid graph family parameters: {0}")]
    InvalidFamily(String),
}

/// An immutable undirected simple graph.
///
/// Vertices are kept sorted; adjacency is stored as sorted lists of local
/// indices into that vertex array.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    ids: Vec<Vertex>,
    nbrs: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Graph on vertices `0..n`. Duplicate edges (in either orientation) are
    /// merged; self-loops and out-of-range endpoints are rejected.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        Self::with_vertices(0..n, edges)
    }

    /// Graph on an arbitrary vertex set.
    pub fn with_vertices<V, I>(vertices: V, edges: I) -> Result<Self, GraphError>
    where
        V: IntoIterator<Item = Vertex>,
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let ids: Vec<Vertex> = vertices.into_iter().collect::<VertexSet>().into_iter().collect();
        let mut nbrs = vec![Vec::new(); ids.len()];
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let iu = ids.binary_search(&u).map_err(|_| GraphError::UnknownVertex(u))?;
            let iv = ids.binary_search(&v).map_err(|_| GraphError::UnknownVertex(v))?;
            nbrs[iu].push(iv);
            nbrs[iv].push(iu);
        }
        let mut twice = 0;
        for list in &mut nbrs {
            list.sort_unstable();
            list.dedup();
            twice += list.len();
        }
        Ok(Graph { ids, nbrs, edge_count: twice / 2 })
    }

    /// The edgeless graph on `0..n`.
    pub fn empty(n: usize) -> Self {
        Graph { ids: (0..n).collect(), nbrs: vec![Vec::new(); n], edge_count: 0 }
    }

    pub fn order(&self) -> usize {
        self.ids.len()
    }

    pub fn size(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Vertices in ascending order.
    pub fn vertices(&self) -> &[Vertex] {
        &self.ids
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.ids.iter().copied().collect()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.ids.binary_search(&v).is_ok()
    }

    /// Position of `v` in [`Graph::vertices`].
    pub fn index_of(&self, v: Vertex) -> Option<usize> {
        self.ids.binary_search(&v).ok()
    }

    /// Neighbours of the vertex at local index `i`, as local indices.
    pub fn local_neighbours(&self, i: usize) -> &[usize] {
        &self.nbrs[i]
    }

    /// Neighbours of `v` in ascending order. Empty if `v` is not a vertex.
    pub fn neighbours(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        let list: &[usize] = match self.index_of(v) {
            Some(i) => &self.nbrs[i],
            None => &[],
        };
        list.iter().map(move |&j| self.ids[j])
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.index_of(v).map_or(0, |i| self.nbrs[i].len())
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        match (self.index_of(u), self.index_of(v)) {
            (Some(i), Some(j)) => self.nbrs[i].binary_search(&j).is_ok(),
            _ => false,
        }
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.nbrs.iter().enumerate().flat_map(move |(i, list)| {
            list.iter().filter(move |&&j| j > i).map(move |&j| (self.ids[i], self.ids[j]))
        })
    }

    pub fn is_complete(&self) -> bool {
        let n = self.order();
        n == 0 || self.edge_count == n * (n - 1) / 2
    }

    /// The subgraph induced by `x`, keeping original vertex identities.
    pub fn induced_subgraph(&self, x: &VertexSet) -> Result<Graph, GraphError> {
        let mut keep = vec![None; self.order()];
        let mut ids = Vec::with_capacity(x.len());
        for &v in x {
            let i = self.index_of(v).ok_or(GraphError::UnknownVertex(v))?;
            keep[i] = Some(ids.len());
            ids.push(v);
        }
        let mut nbrs = vec![Vec::new(); ids.len()];
        let mut twice = 0;
        for (i, slot) in keep.iter().enumerate() {
            if let Some(li) = *slot {
                nbrs[li] = self.nbrs[i].iter().filter_map(|&j| keep[j]).collect();
                twice += nbrs[li].len();
            }
        }
        Ok(Graph { ids, nbrs, edge_count: twice / 2 })
    }

    /// Connected components of the graph with `removed` deleted, each as a
    /// vertex set, ordered by smallest member.
    pub fn components_without(&self, removed: &VertexSet) -> Vec<VertexSet> {
        let n = self.order();
        let mut seen: Vec<bool> = self.ids.iter().map(|v| removed.contains(v)).collect();
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = VertexSet::new();
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                comp.insert(self.ids[i]);
                for &j in &self.nbrs[i] {
                    if !seen[j] {
                        seen[j] = true;
                        queue.push_back(j);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components_without(&VertexSet::new()).len() <= 1
    }
}

/// Split `g - x` into `(Y, Z)`: `Y` is the component holding the smallest
/// remaining vertex, `Z` is every other component. No edge joins `Y` and `Z`.
pub fn split_by_cut(g: &Graph, x: &VertexSet) -> Result<(VertexSet, VertexSet), GraphError> {
    if let Some(&v) = x.iter().find(|&&v| !g.contains(v)) {
        return Err(GraphError::UnknownVertex(v));
    }
    let mut comps = g.components_without(x).into_iter();
    match (comps.next(), comps.next()) {
        (Some(y), Some(first_z)) => {
            let mut z = first_z;
            for c in comps {
                z.extend(c);
            }
            Ok((y, z))
        }
        _ => Err(GraphError::NotACut),
    }
}
