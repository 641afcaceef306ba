//! Line-oriented text format for templates and list assignments.
//!
//! ```text
//! # comment
//! k 2
//! palette plain 14        # or: palette list
//! precolour 3 0
//! forbid 4 1 2
//! list 0 0 1 2 3 4 5 6 7
//! ```
//!
//! `list` lines are only meaningful with `palette list`. A file holding
//! nothing but `list` lines (and comments) is a valid lists file.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::colouring::{ColourSet, ListAssignment};
use crate::graph::Vertex;
use crate::template::{Palette, Template, TemplateError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TextError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {what} given twice")]
    Duplicate { line: usize, what: String },
    #[error("list lines require `palette list`")]
    ListsWithoutListPalette,
    #[error(transparent)]
    Template(#[from] TemplateError),
}

/// Everything a template file can say.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TemplateDoc {
    pub k: Option<usize>,
    pub palette: Option<Palette>,
    pub template: Template,
}

fn numbers(line: usize, words: &[&str]) -> Result<Vec<usize>, TextError> {
    words
        .iter()
        .map(|w| w.parse().map_err(|_| TextError::Syntax { line, msg: format!("expected a number, got {w:?}") }))
        .collect()
}

pub fn parse_template(text: &str) -> Result<TemplateDoc, TextError> {
    let mut k = None;
    let mut plain: Option<Option<usize>> = None;
    let mut pre = BTreeMap::new();
    let mut forbidden: BTreeMap<Vertex, ColourSet> = BTreeMap::new();
    let mut lists = ListAssignment::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        let words: Vec<&str> = content.split_whitespace().collect();
        let Some((&head, rest)) = words.split_first() else { continue };
        let syntax = |msg: &str| TextError::Syntax { line, msg: msg.to_string() };
        match head {
            "k" => {
                let [n] = numbers(line, rest)?[..] else { return Err(syntax("usage: k <n>")) };
                if k.replace(n).is_some() {
                    return Err(TextError::Duplicate { line, what: "k".into() });
                }
            }
            "palette" => {
                let choice = match rest {
                    ["plain", n] => Some(numbers(line, &[n])?[0]),
                    ["list"] => None,
                    _ => return Err(syntax("usage: palette plain <n> | palette list")),
                };
                if plain.replace(choice).is_some() {
                    return Err(TextError::Duplicate { line, what: "palette".into() });
                }
            }
            "precolour" | "precolor" => {
                let [v, c] = numbers(line, rest)?[..] else { return Err(syntax("usage: precolour <v> <c>")) };
                if pre.insert(v, c).is_some() {
                    return Err(TextError::Duplicate { line, what: format!("precolour of {v}") });
                }
            }
            "forbid" => {
                let nums = numbers(line, rest)?;
                let Some((&v, cs)) = nums.split_first() else { return Err(syntax("usage: forbid <v> <c>...")) };
                forbidden.entry(v).or_default().extend(cs);
            }
            "list" => {
                let nums = numbers(line, rest)?;
                let Some((&v, cs)) = nums.split_first() else { return Err(syntax("usage: list <v> <c>...")) };
                if lists.insert(v, cs.iter().copied().collect()).is_some() {
                    return Err(TextError::Duplicate { line, what: format!("list of {v}") });
                }
            }
            other => return Err(syntax(&format!("unknown directive {other:?}"))),
        }
    }

    let palette = match plain {
        Some(Some(n)) if lists.is_empty() => Some(Palette::Plain(n)),
        Some(None) => Some(Palette::List(lists)),
        None if lists.is_empty() => None,
        _ => return Err(TextError::ListsWithoutListPalette),
    };
    Ok(TemplateDoc { k, palette, template: Template::new(pre, forbidden)? })
}

pub fn write_template(doc: &TemplateDoc) -> String {
    let mut out = String::new();
    let join = |cs: &ColourSet| cs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ");
    if let Some(k) = doc.k {
        writeln!(out, "k {k}").unwrap();
    }
    match &doc.palette {
        Some(Palette::Plain(n)) => writeln!(out, "palette plain {n}").unwrap(),
        Some(Palette::List(_)) => writeln!(out, "palette list").unwrap(),
        None => {}
    }
    for (v, c) in doc.template.precolouring() {
        writeln!(out, "precolour {v} {c}").unwrap();
    }
    for (v, f) in doc.template.forbidden_lists() {
        writeln!(out, "forbid {v} {}", join(f)).unwrap();
    }
    if let Some(Palette::List(lists)) = &doc.palette {
        for (v, l) in lists {
            writeln!(out, "list {v} {}", join(l)).unwrap();
        }
    }
    out
}

/// A lists file: `list <v> <c>...` lines only.
pub fn parse_lists(text: &str) -> Result<ListAssignment, TextError> {
    let doc = parse_template(&format!("palette list\n{text}"))?;
    if doc.k.is_some() || doc.template != Template::empty() {
        return Err(TextError::Syntax { line: 0, msg: "a lists file may only contain list lines".into() });
    }
    match doc.palette {
        Some(Palette::List(l)) => Ok(l),
        _ => unreachable!("palette list was prepended"),
    }
}

pub fn write_lists(lists: &ListAssignment) -> String {
    let doc = TemplateDoc { k: None, palette: Some(Palette::List(lists.clone())), template: Template::empty() };
    write_template(&doc).lines().skip(1).map(|l| format!("{l}\n")).collect()
}
