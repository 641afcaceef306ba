//! Templates: a properly pre-coloured vertex set together with forbidden
//! colour lists on the remaining vertices, and the palette they live in.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::colouring::{Colour, ColourSet, Colouring, ListAssignment};
use crate::graph::{Graph, Vertex, VertexSet};

static NO_COLOURS: ColourSet = ColourSet::new();

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TemplateError {
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(Vertex),
    #[error("vertex {0} is both pre-coloured and carries a forbidden list")]
    Overlap(Vertex),
    #[error("pre-coloured neighbours {0} and {1} share a colour")]
    ImproperPrecolouring(Vertex, Vertex),
    #[error("colour {colour} at vertex {vertex} is outside the palette")]
    OutsidePalette { vertex: Vertex, colour: Colour },
    #[error("vertex {0} has no colour list")]
    MissingList(Vertex),
    #[error("colourings disagree at vertex {0}")]
    Disagreement(Vertex),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no eligible colour for vertex {0}")]
    NoEligibleColour(Vertex),
    #[error("list-mode operation given a plain palette, or vice versa")]
    WrongMode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Plain,
    List,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Plain => "plain",
            Mode::List => "list",
        })
    }
}

/// The colours a vertex may ever take: a shared palette `0..size`, or a
/// per-vertex list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Palette {
    Plain(usize),
    List(ListAssignment),
}

impl Palette {
    pub fn mode(&self) -> Mode {
        match self {
            Palette::Plain(_) => Mode::Plain,
            Palette::List(_) => Mode::List,
        }
    }

    pub fn allows(&self, v: Vertex, c: Colour) -> bool {
        match self {
            Palette::Plain(size) => c < *size,
            Palette::List(lists) => lists.get(&v).is_some_and(|l| l.contains(&c)),
        }
    }

    /// Colours available at `v` in ascending order.
    pub fn colours(&self, v: Vertex) -> Box<dyn Iterator<Item = Colour> + '_> {
        match self {
            Palette::Plain(size) => Box::new(0..*size),
            Palette::List(lists) => Box::new(lists.get(&v).into_iter().flatten().copied()),
        }
    }

    /// Every colour the palette mentions.
    pub fn universe(&self) -> ColourSet {
        match self {
            Palette::Plain(size) => (0..*size).collect(),
            Palette::List(lists) => lists.values().flatten().copied().collect(),
        }
    }

    /// Fail unless every vertex of `g` has a list (list mode).
    pub fn covers(&self, g: &Graph) -> Result<(), TemplateError> {
        if let Palette::List(lists) = self {
            if let Some(&v) = g.vertices().iter().find(|v| !lists.contains_key(v)) {
                return Err(TemplateError::MissingList(v));
            }
        }
        Ok(())
    }
}

/// `T = (S, c, F)`. `S` is the key set of the pre-colouring; vertices with
/// no forbidden colours are simply absent from the forbidden map.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Template {
    precolour: BTreeMap<Vertex, Colour>,
    forbidden: BTreeMap<Vertex, ColourSet>,
}

impl Template {
    pub fn empty() -> Self {
        Template::default()
    }

    pub fn new(
        precolour: BTreeMap<Vertex, Colour>,
        forbidden: BTreeMap<Vertex, ColourSet>,
    ) -> Result<Self, TemplateError> {
        let forbidden: BTreeMap<_, _> = forbidden.into_iter().filter(|(_, f)| !f.is_empty()).collect();
        if let Some(&v) = forbidden.keys().find(|v| precolour.contains_key(v)) {
            return Err(TemplateError::Overlap(v));
        }
        Ok(Template { precolour, forbidden })
    }

    pub fn precolouring(&self) -> &BTreeMap<Vertex, Colour> {
        &self.precolour
    }

    pub fn forbidden_lists(&self) -> &BTreeMap<Vertex, ColourSet> {
        &self.forbidden
    }

    /// The pre-coloured set `S`.
    pub fn precoloured(&self) -> VertexSet {
        self.precolour.keys().copied().collect()
    }

    pub fn colour_of(&self, v: Vertex) -> Option<Colour> {
        self.precolour.get(&v).copied()
    }

    /// `F(v)`; empty for pre-coloured vertices and vertices with no list.
    pub fn forbidden(&self, v: Vertex) -> &ColourSet {
        self.forbidden.get(&v).unwrap_or(&NO_COLOURS)
    }

    /// Colours used anywhere in the pre-colouring.
    pub fn used_colours(&self) -> ColourSet {
        self.precolour.values().copied().collect()
    }

    /// `k|S| + Σ |F(v)|`.
    pub fn degree(&self, k: usize) -> usize {
        k * self.precolour.len() + self.forbidden.values().map(ColourSet::len).sum::<usize>()
    }

    pub fn max_forbidden(&self) -> usize {
        self.forbidden.values().map(ColourSet::len).max().unwrap_or(0)
    }

    /// `T_X = (S ∩ X, c|_{S∩X}, F|_{X∖S})`.
    pub fn restrict(&self, x: &VertexSet) -> Template {
        Template {
            precolour: self.precolour.iter().filter(|(v, _)| x.contains(v)).map(|(&v, &c)| (v, c)).collect(),
            forbidden: self.forbidden.iter().filter(|(v, _)| x.contains(v)).map(|(&v, f)| (v, f.clone())).collect(),
        }
    }

    /// Pre-colour `v` with `c`, dropping its forbidden list.
    pub fn with_precolour(&self, v: Vertex, c: Colour) -> Template {
        let mut t = self.clone();
        t.forbidden.remove(&v);
        t.precolour.insert(v, c);
        t
    }

    /// Add `c` to `F(v)`. No effect on pre-coloured vertices.
    pub fn with_forbidden(&self, v: Vertex, c: Colour) -> Template {
        let mut t = self.clone();
        if !t.precolour.contains_key(&v) {
            t.forbidden.entry(v).or_default().insert(c);
        }
        t
    }

    /// Remove `c` from `F(v)`.
    pub fn without_forbidden(&self, v: Vertex, c: Colour) -> Template {
        let mut t = self.clone();
        if let Some(f) = t.forbidden.get_mut(&v) {
            f.remove(&c);
            if f.is_empty() {
                t.forbidden.remove(&v);
            }
        }
        t
    }

    /// Well-formedness on `g`: domains inside `V(g)`, the pre-colouring
    /// proper on `g[S]` and drawn from the palette.
    pub fn check(&self, g: &Graph, palette: &Palette) -> Result<(), TemplateError> {
        palette.covers(g)?;
        for &v in self.precolour.keys().chain(self.forbidden.keys()) {
            if !g.contains(v) {
                return Err(TemplateError::UnknownVertex(v));
            }
        }
        for (&v, &c) in &self.precolour {
            if !palette.allows(v, c) {
                return Err(TemplateError::OutsidePalette { vertex: v, colour: c });
            }
            for u in g.neighbours(v).filter(|&u| u > v) {
                if self.precolour.get(&u) == Some(&c) {
                    return Err(TemplateError::ImproperPrecolouring(v, u));
                }
            }
        }
        Ok(())
    }
}

/// Whether `col` is a proper colouring of `g` from the palette that extends
/// the pre-colouring of `t` and avoids every forbidden list.
pub fn respects(g: &Graph, t: &Template, palette: &Palette, col: &Colouring) -> bool {
    let assigned_ok = g.vertices().iter().all(|&v| match col.get(&v) {
        None => false,
        Some(&c) => {
            palette.allows(v, c)
                && match t.colour_of(v) {
                    Some(pre) => pre == c,
                    None => !t.forbidden(v).contains(&c),
                }
        }
    });
    assigned_ok && g.edges().all(|(u, v)| col[&u] != col[&v])
}
