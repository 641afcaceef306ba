//! Deterministic graph families used as test inputs.
//!
//! A [`FamilySpec`] has a compact text form, e.g. `join(cycle(5),complete(5))`
//! or `glued_cliques([15,15],1)`, which round-trips through `Display` and
//! `FromStr`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, GraphError, Vertex};

#[derive(Debug, Clone, PartialEq)]
pub enum FamilySpec {
    Complete(usize),
    Cycle(usize),
    /// Disjoint union of the parts plus every edge between distinct parts.
    Join(Vec<FamilySpec>),
    /// The Mycielskian applied `times` times to `base`.
    Mycielski { base: Box<FamilySpec>, times: usize },
    Kneser { n: usize, r: usize },
    /// Cliques of the given sizes, pairwise intersecting exactly in the
    /// vertices `0..shared`.
    GluedCliques { sizes: Vec<usize>, shared: usize },
    /// Erdős–Rényi `G(n, p)`, keyed by `seed`.
    Random { n: usize, p: f64, seed: u64 },
}

fn invalid(msg: impl Into<String>) -> GraphError {
    GraphError::InvalidFamily(msg.into())
}

impl FamilySpec {
    pub fn validate(&self) -> Result<(), GraphError> {
        match self {
            FamilySpec::Complete(_) => Ok(()),
            FamilySpec::Cycle(n) if *n < 3 => Err(invalid(format!("cycle needs at least 3 vertices, got {n}"))),
            FamilySpec::Cycle(_) => Ok(()),
            FamilySpec::Join(parts) if parts.is_empty() => Err(invalid("join needs at least one part")),
            FamilySpec::Join(parts) => parts.iter().try_for_each(FamilySpec::validate),
            FamilySpec::Mycielski { base, .. } => base.validate(),
            FamilySpec::Kneser { n, r } if *r == 0 || *n < 2 * r => {
                Err(invalid(format!("kneser({n},{r}) requires r >= 1 and n >= 2r")))
            }
            FamilySpec::Kneser { .. } => Ok(()),
            FamilySpec::GluedCliques { sizes, .. } if sizes.is_empty() => Err(invalid("glued_cliques needs a size")),
            FamilySpec::GluedCliques { sizes, shared } if sizes.iter().any(|s| s < shared) => {
                Err(invalid(format!("every clique must contain the {shared} shared vertices")))
            }
            FamilySpec::GluedCliques { .. } => Ok(()),
            FamilySpec::Random { p, .. } if !(0.0..=1.0).contains(p) => {
                Err(invalid(format!("edge probability {p} outside [0, 1]")))
            }
            FamilySpec::Random { .. } => Ok(()),
        }
    }

    /// Build the graph. Vertices are `0..n`.
    pub fn generate(&self) -> Result<Graph, GraphError> {
        self.validate()?;
        let (n, edges) = self.build();
        Graph::new(n, edges)
    }

    fn build(&self) -> (usize, Vec<(Vertex, Vertex)>) {
        match self {
            FamilySpec::Complete(n) => (*n, clique_edges(&(0..*n).collect::<Vec<_>>())),
            FamilySpec::Cycle(n) => (*n, (0..*n).map(|i| (i, (i + 1) % n)).collect()),
            FamilySpec::Join(parts) => {
                let mut n = 0;
                let mut edges = Vec::new();
                let mut ranges = Vec::new();
                for part in parts {
                    let (m, e) = part.build();
                    edges.extend(e.into_iter().map(|(u, v)| (u + n, v + n)));
                    ranges.push(n..n + m);
                    n += m;
                }
                for (i, a) in ranges.iter().enumerate() {
                    for b in &ranges[i + 1..] {
                        for u in a.clone() {
                            edges.extend(b.clone().map(|v| (u, v)));
                        }
                    }
                }
                (n, edges)
            }
            FamilySpec::Mycielski { base, times } => {
                let (mut n, mut edges) = base.build();
                for _ in 0..*times {
                    (n, edges) = mycielskian(n, &edges);
                }
                (n, edges)
            }
            FamilySpec::Kneser { n, r } => {
                let sets = r_subsets(*n, *r);
                let mut edges = Vec::new();
                for (i, a) in sets.iter().enumerate() {
                    for (j, b) in sets.iter().enumerate().skip(i + 1) {
                        if a & b == 0 {
                            edges.push((i, j));
                        }
                    }
                }
                (sets.len(), edges)
            }
            FamilySpec::GluedCliques { sizes, shared } => {
                let mut n = *shared;
                let mut edges = clique_edges(&(0..*shared).collect::<Vec<_>>());
                for &size in sizes {
                    let private: Vec<Vertex> = (n..n + size - shared).collect();
                    n += private.len();
                    edges.extend(clique_edges(&private));
                    for &u in &private {
                        edges.extend((0..*shared).map(|s| (s, u)));
                    }
                }
                (n, edges)
            }
            FamilySpec::Random { n, p, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let mut edges = Vec::new();
                for u in 0..*n {
                    for v in u + 1..*n {
                        if rng.gen_bool(*p) {
                            edges.push((u, v));
                        }
                    }
                }
                (*n, edges)
            }
        }
    }
}

fn clique_edges(members: &[Vertex]) -> Vec<(Vertex, Vertex)> {
    let mut out = Vec::new();
    for (i, &u) in members.iter().enumerate() {
        out.extend(members[i + 1..].iter().map(|&v| (u, v)));
    }
    out
}

/// Vertices `0..n` keep their edges; `n + i` shadows `i`; `2n` is the apex.
fn mycielskian(n: usize, edges: &[(Vertex, Vertex)]) -> (usize, Vec<(Vertex, Vertex)>) {
    let mut out = edges.to_vec();
    for &(u, v) in edges {
        out.push((u, n + v));
        out.push((v, n + u));
    }
    out.extend((0..n).map(|i| (n + i, 2 * n)));
    (2 * n + 1, out)
}

/// `r`-subsets of `0..n` as bitmasks, in lexicographic order of their
/// sorted member lists.
fn r_subsets(n: usize, r: usize) -> Vec<u64> {
    fn rec(start: usize, n: usize, left: usize, mask: u64, out: &mut Vec<u64>) {
        if left == 0 {
            out.push(mask);
            return;
        }
        for i in start..n {
            rec(i + 1, n, left - 1, mask | 1 << i, out);
        }
    }
    let mut out = Vec::new();
    rec(0, n, r, 0, &mut out);
    out
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Complete(n) => write!(f, "complete({n})"),
            FamilySpec::Cycle(n) => write!(f, "cycle({n})"),
            FamilySpec::Join(parts) => {
                write!(f, "join(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
            FamilySpec::Mycielski { base, times } => write!(f, "mycielski({base},{times})"),
            FamilySpec::Kneser { n, r } => write!(f, "kneser({n},{r})"),
            FamilySpec::GluedCliques { sizes, shared } => {
                let sizes: Vec<String> = sizes.iter().map(usize::to_string).collect();
                write!(f, "glued_cliques([{}],{shared})", sizes.join(","))
            }
            FamilySpec::Random { n, p, seed } => write!(f, "random({n},{p},{seed})"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = Parser { s: compact.as_bytes(), pos: 0 };
        let spec = p.spec()?;
        if p.pos != p.s.len() {
            return Err(invalid(format!("trailing input in {s:?}")));
        }
        spec.validate()?;
        Ok(spec)
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn expect(&mut self, b: u8) -> Result<(), GraphError> {
        if self.s.get(self.pos) == Some(&b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(invalid(format!("expected '{}' at offset {}", b as char, self.pos)))
        }
    }

    fn eat(&mut self, b: u8) -> bool {
        let hit = self.s.get(self.pos) == Some(&b);
        if hit {
            self.pos += 1;
        }
        hit
    }

    fn token(&mut self, allowed: impl Fn(u8) -> bool) -> &str {
        let start = self.pos;
        while self.s.get(self.pos).is_some_and(|&b| allowed(b)) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).unwrap_or("")
    }

    fn number<T: FromStr>(&mut self) -> Result<T, GraphError> {
        let at = self.pos;
        let tok = self.token(|b| b.is_ascii_digit() || b == b'.' || b == b'e' || b == b'-');
        tok.parse().map_err(|_| invalid(format!("bad number {tok:?} at offset {at}")))
    }

    fn spec(&mut self) -> Result<FamilySpec, GraphError> {
        let name = self.token(|b| b.is_ascii_alphabetic() || b == b'_').to_string();
        self.expect(b'(')?;
        let spec = match name.as_str() {
            "complete" => FamilySpec::Complete(self.number()?),
            "cycle" => FamilySpec::Cycle(self.number()?),
            "join" => {
                let mut parts = vec![self.spec()?];
                while self.eat(b',') {
                    parts.push(self.spec()?);
                }
                FamilySpec::Join(parts)
            }
            "mycielski" => {
                let base = Box::new(self.spec()?);
                self.expect(b',')?;
                FamilySpec::Mycielski { base, times: self.number()? }
            }
            "kneser" => {
                let n = self.number()?;
                self.expect(b',')?;
                FamilySpec::Kneser { n, r: self.number()? }
            }
            "glued_cliques" => {
                self.expect(b'[')?;
                let mut sizes = vec![self.number()?];
                while self.eat(b',') {
                    sizes.push(self.number()?);
                }
                self.expect(b']')?;
                self.expect(b',')?;
                FamilySpec::GluedCliques { sizes, shared: self.number()? }
            }
            "random" => {
                let n = self.number()?;
                self.expect(b',')?;
                let p = self.number()?;
                self.expect(b',')?;
                FamilySpec::Random { n, p, seed: self.number()? }
            }
            other => return Err(invalid(format!("unknown family {other:?}"))),
        };
        self.expect(b')')?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::is_colourable;
    use crate::connectivity::{min_vertex_cut, MinCut};

    fn chromatic(g: &Graph) -> usize {
        (0..).find(|&t| is_colourable(g, t).is_some()).unwrap()
    }

    #[test]
    fn complete_and_cycle() {
        let k8 = FamilySpec::Complete(8).generate().unwrap();
        assert_eq!((k8.order(), k8.size()), (8, 28));
        let c5 = FamilySpec::Cycle(5).generate().unwrap();
        assert_eq!((c5.order(), c5.size()), (5, 5));
        assert!(FamilySpec::Cycle(2).generate().is_err());
    }

    #[test]
    fn join_adds_chromatic_numbers() {
        let g: Graph = "join(cycle(5),complete(5))".parse::<FamilySpec>().unwrap().generate().unwrap();
        assert_eq!(g.order(), 10);
        assert_eq!(g.size(), 5 + 10 + 25);
        assert_eq!(chromatic(&g), 8);
    }

    #[test]
    fn glued_cliques_have_a_cut_vertex() {
        let g = FamilySpec::GluedCliques { sizes: vec![15, 15], shared: 1 }.generate().unwrap();
        assert_eq!(g.order(), 29);
        assert_eq!(chromatic(&g), 15);
        assert_eq!(min_vertex_cut(&g), MinCut::Cut([0].into()));
        let disjoint = FamilySpec::GluedCliques { sizes: vec![3, 3], shared: 0 }.generate().unwrap();
        assert_eq!(disjoint.size(), 6);
        assert!(FamilySpec::GluedCliques { sizes: vec![2, 5], shared: 3 }.generate().is_err());
    }

    #[test]
    fn mycielski_and_kneser() {
        let grotzsch = FamilySpec::Mycielski { base: Box::new(FamilySpec::Cycle(5)), times: 1 }.generate().unwrap();
        assert_eq!((grotzsch.order(), grotzsch.size()), (11, 20));
        assert_eq!(chromatic(&grotzsch), 4);
        let petersen = FamilySpec::Kneser { n: 5, r: 2 }.generate().unwrap();
        assert_eq!((petersen.order(), petersen.size()), (10, 15));
        assert_eq!(chromatic(&petersen), 3);
        assert!(FamilySpec::Kneser { n: 3, r: 2 }.generate().is_err());
    }

    #[test]
    fn random_is_reproducible() {
        let a = FamilySpec::Random { n: 20, p: 0.5, seed: 7 }.generate().unwrap();
        let b = FamilySpec::Random { n: 20, p: 0.5, seed: 7 }.generate().unwrap();
        let c = FamilySpec::Random { n: 20, p: 0.5, seed: 8 }.generate().unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(FamilySpec::Random { n: 3, p: 1.5, seed: 0 }.generate().is_err());
    }

    #[test]
    fn text_form_round_trips() {
        for s in [
            "complete(8)",
            "join(cycle(5),cycle(5),complete(2))",
            "mycielski(complete(2),3)",
            "kneser(7,3)",
            "glued_cliques([15,15],1)",
            "random(20,0.5,7)",
        ] {
            let spec: FamilySpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert!("wheel(5)".parse::<FamilySpec>().is_err());
        assert!("complete(5".parse::<FamilySpec>().is_err());
    }
}
