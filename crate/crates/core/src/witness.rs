//! Witnesses of inextensibility and the strengthening step that brings
//! every forbidden list below `k`.

use thiserror::Error;

use crate::colouring::Colouring;
use crate::graph::{Graph, Vertex};
use crate::solver::{extend, Outcome, SolveStats, SolverBudget, SolverError};
use crate::template::{Palette, Template};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error("solver budget exhausted before a definite answer")]
    ResourceLimit,
    #[error("no eligible colour to pre-colour vertex {0}")]
    NoEligibleColour(Vertex),
    #[error("template is not a witness: a respecting colouring exists")]
    Extensible(Colouring),
    #[error("template violates the witness bounds")]
    OutOfBounds,
}

/// Why a template is or is not a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessStatus {
    Valid,
    DegreeTooLarge(usize),
    ForbiddenListTooLarge(usize),
    Extensible(Colouring),
    ResourceLimit,
}

/// `deg(T) <= 2k²`.
pub fn degree_bound(k: usize) -> usize {
    2 * k * k
}

/// `|F(v)| <= 2k` for every free vertex.
pub fn forbidden_bound(k: usize) -> usize {
    2 * k
}

/// Check the two size bounds, then ask the solver for a respecting
/// colouring. Returns the solver statistics alongside the status.
pub fn witness_status(
    g: &Graph,
    t: &Template,
    k: usize,
    palette: &Palette,
    budget: SolverBudget,
) -> Result<(WitnessStatus, SolveStats), SolverError> {
    let deg = t.degree(k);
    if deg > degree_bound(k) {
        return Ok((WitnessStatus::DegreeTooLarge(deg), SolveStats::default()));
    }
    let widest = t.max_forbidden();
    if widest > forbidden_bound(k) {
        return Ok((WitnessStatus::ForbiddenListTooLarge(widest), SolveStats::default()));
    }
    let r = extend(g, t, palette, budget)?;
    let status = match r.outcome {
        Outcome::Unsat => WitnessStatus::Valid,
        Outcome::Sat(col) => WitnessStatus::Extensible(col),
        Outcome::ResourceLimit => WitnessStatus::ResourceLimit,
    };
    Ok((status, r.stats))
}

/// Whether `t` witnesses that `g` is inextensible. Budget exhaustion is an
/// error, never `false`.
pub fn is_valid_witness(
    g: &Graph,
    t: &Template,
    k: usize,
    palette: &Palette,
    budget: SolverBudget,
) -> Result<bool, WitnessError> {
    match witness_status(g, t, k, palette, budget)?.0 {
        WitnessStatus::Valid => Ok(true),
        WitnessStatus::ResourceLimit => Err(WitnessError::ResourceLimit),
        _ => Ok(false),
    }
}

/// Repeatedly pre-colour the smallest free vertex whose forbidden list has
/// at least `k` colours, using the smallest colour it may take that is
/// neither forbidden there nor used anywhere in the pre-colouring.
///
/// Each move raises `k|S|` by `k` and removes at least `k` forbidden
/// colours, so the degree never grows. Any colouring respecting the result
/// respects the input; when something changed the result is re-checked with
/// the solver anyway.
pub fn strengthen_witness(
    g: &Graph,
    t: &Template,
    k: usize,
    palette: &Palette,
    budget: SolverBudget,
) -> Result<(Template, SolveStats), WitnessError> {
    let mut current = t.clone();
    let mut changed = false;
    while let Some(v) = current.forbidden_lists().iter().find(|(_, f)| f.len() >= k).map(|(&v, _)| v) {
        let used = current.used_colours();
        let c = palette
            .colours(v)
            .find(|c| !current.forbidden(v).contains(c) && !used.contains(c))
            .ok_or(WitnessError::NoEligibleColour(v))?;
        current = current.with_precolour(v, c);
        changed = true;
    }
    if !changed {
        return Ok((current, SolveStats::default()));
    }
    let (status, stats) = witness_status(g, &current, k, palette, budget)?;
    match status {
        WitnessStatus::Valid => Ok((current, stats)),
        WitnessStatus::ResourceLimit => Err(WitnessError::ResourceLimit),
        WitnessStatus::Extensible(col) => Err(WitnessError::Extensible(col)),
        WitnessStatus::DegreeTooLarge(_) | WitnessStatus::ForbiddenListTooLarge(_) => Err(WitnessError::OutOfBounds),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::{is_colourable, Colour};
    use crate::family::FamilySpec;

    fn tpl(pre: &[(Vertex, Colour)], forb: &[(Vertex, &[Colour])]) -> Template {
        Template::new(
            pre.iter().copied().collect(),
            forb.iter().map(|(v, f)| (*v, f.iter().copied().collect())).collect(),
        )
        .unwrap()
    }

    fn k(n: usize) -> Graph {
        FamilySpec::Complete(n).generate().unwrap()
    }

    #[test]
    fn empty_template_witnesses_high_chromatic_number() {
        assert!(is_colourable(&k(8), 7).is_none());
        assert!(is_valid_witness(&k(8), &Template::empty(), 1, &Palette::Plain(7), SolverBudget::unlimited()).unwrap());
        assert!(!is_valid_witness(&k(7), &Template::empty(), 1, &Palette::Plain(7), SolverBudget::unlimited()).unwrap());
    }

    #[test]
    fn degree_bound_is_checked_before_solving() {
        // k = 1: 2k² = 2, so three forbidden colours are too many
        let t = tpl(&[], &[(0, &[0]), (1, &[0]), (2, &[0])]);
        assert_eq!(t.degree(1), 3);
        let (status, stats) = witness_status(&k(8), &t, 1, &Palette::Plain(7), SolverBudget::unlimited()).unwrap();
        assert_eq!(status, WitnessStatus::DegreeTooLarge(3));
        assert_eq!(stats.decisions, 0);
        let t = tpl(&[], &[(0, &[0, 1, 2, 3, 4])]);
        assert!(!is_valid_witness(&k(8), &t, 2, &Palette::Plain(14), SolverBudget::unlimited()).unwrap());
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let g = FamilySpec::Mycielski { base: Box::new(FamilySpec::Cycle(5)), times: 1 }.generate().unwrap();
        let r = is_valid_witness(&g, &Template::empty(), 1, &Palette::Plain(3), SolverBudget::decisions(2));
        assert_eq!(r, Err(WitnessError::ResourceLimit));
    }

    #[test]
    fn strengthening_leaves_short_lists_alone() {
        let t = tpl(&[(0, 0)], &[(1, &[1])]);
        let (s, _) = strengthen_witness(&k(15), &t, 2, &Palette::Plain(14), SolverBudget::unlimited()).unwrap();
        assert_eq!(s, t);
    }

    #[test]
    fn strengthening_moves_long_lists_into_the_precolouring() {
        // k = 2, |F(3)| = 2 triggers; degree unchanged: +k - |F| = 0
        let t = tpl(&[(0, 0)], &[(3, &[1, 2]), (4, &[5])]);
        let (s, _) = strengthen_witness(&k(15), &t, 2, &Palette::Plain(14), SolverBudget::unlimited()).unwrap();
        assert_eq!(s.colour_of(3), Some(3));
        assert_eq!(s.degree(2), t.degree(2));
        assert!(s.max_forbidden() <= 1);

        // K_8, k = 1, palette 7: any nonempty list triggers
        let t = tpl(&[], &[(2, &[0])]);
        let (s, _) = strengthen_witness(&k(8), &t, 1, &Palette::Plain(7), SolverBudget::unlimited()).unwrap();
        assert_eq!(s, tpl(&[(2, 1)], &[]));
        assert!(is_valid_witness(&k(8), &s, 1, &Palette::Plain(7), SolverBudget::unlimited()).unwrap());
    }

    #[test]
    fn strengthening_reports_extensible_input() {
        // K_3 with 7 colours is colourable whatever we forbid at one vertex
        let t = tpl(&[], &[(0, &[0])]);
        let err = strengthen_witness(&k(3), &t, 1, &Palette::Plain(7), SolverBudget::unlimited()).unwrap_err();
        assert!(matches!(err, WitnessError::Extensible(_)));
    }
}
