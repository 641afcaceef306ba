//! Randomized properties of templates, the extension solver and the
//! constructions.

use std::collections::{BTreeMap, BTreeSet};

use conchrom::colouring::ColourSet;
use conchrom::construct::{derive_completion_template, derive_separation_template, interval_partition};
use conchrom::graph::{Graph, VertexSet};
use conchrom::solver::{brute_force_extend, extend, Outcome, SolverBudget};
use conchrom::suite::{random_interval_case, random_separation_case};
use conchrom::template::{respects, Palette, Template};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn graph(n: usize, mask: u64) -> Graph {
    let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::new(n, pairs.enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| e)).unwrap()
}

/// Template from per-vertex codes: 0 free, 1 pre-coloured (dropped if it
/// clashes with an earlier neighbour), 2 forbidden list from the bits.
fn template(g: &Graph, palette: usize, codes: &[(u8, u8)]) -> Template {
    let mut pre = BTreeMap::new();
    let mut forbidden = BTreeMap::new();
    for (v, &(kind, bits)) in codes.iter().enumerate().take(g.order()) {
        match kind % 3 {
            1 => {
                let c = bits as usize % palette;
                if g.neighbours(v).all(|u| pre.get(&u) != Some(&c)) {
                    pre.insert(v, c);
                }
            }
            2 => {
                let f: ColourSet = (0..palette).filter(|c| bits >> c & 1 == 1).collect();
                forbidden.insert(v, f);
            }
            _ => {}
        }
    }
    Template::new(pre, forbidden).unwrap()
}

fn codes() -> impl Strategy<Value = Vec<(u8, u8)>> {
    prop::collection::vec((any::<u8>(), any::<u8>()), 8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn degree_is_additive(n in 0usize..=8, mask in any::<u64>(), cs in codes(), side in any::<u8>(), k in 1usize..=5) {
        let g = graph(n, mask);
        let t = template(&g, 6, &cs);
        let a: VertexSet = (0..n).filter(|v| side >> v & 1 == 1).collect();
        let b: VertexSet = (0..n).filter(|v| side >> v & 1 == 0).collect();
        prop_assert_eq!(t.degree(k), t.restrict(&a).degree(k) + t.restrict(&b).degree(k));
    }

    #[test]
    fn extend_matches_enumeration(n in 0usize..=6, mask in any::<u64>(), cs in codes(), size in 2usize..=4) {
        let g = graph(n, mask);
        let t = template(&g, size, &cs);
        let p = Palette::Plain(size);
        let fast = extend(&g, &t, &p, SolverBudget::unlimited()).unwrap();
        let slow = brute_force_extend(&g, &t, &p).unwrap();
        prop_assert_eq!(fast.is_sat(), slow.is_sat());
        if let Outcome::Sat(c) = fast.outcome {
            prop_assert!(respects(&g, &t, &p, &c));
        }
    }

    /// Forbidding one more colour can only turn extensible into
    /// inextensible, never the reverse; likewise a larger palette can only
    /// help.
    #[test]
    fn solver_is_monotone(n in 1usize..=7, mask in any::<u64>(), cs in codes(), v in 0usize..7, c in 0usize..4) {
        let g = graph(n, mask);
        let t = template(&g, 4, &cs);
        let v = v % n;
        let p = Palette::Plain(4);
        let before = extend(&g, &t, &p, SolverBudget::unlimited()).unwrap();
        if t.colour_of(v).is_none() {
            let tighter = t.with_forbidden(v, c);
            let after = extend(&g, &tighter, &p, SolverBudget::unlimited()).unwrap();
            prop_assert!(!after.is_sat() || before.is_sat());
        }
        let wider = extend(&g, &t, &Palette::Plain(5), SolverBudget::unlimited()).unwrap();
        prop_assert!(!before.is_sat() || wider.is_sat());
    }

    #[test]
    fn construction_bounds(seed in any::<u64>(), k in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = Palette::Plain(7 * k);
        let c = random_separation_case(&mut rng, k, &p);
        let sep = derive_separation_template(&c.h, &c.t, k, &p, &c.x, &c.y, &c.z).unwrap();
        prop_assert!(sep.degree(k) <= c.t.degree(k));
        prop_assert!(c.x.iter().all(|&v| sep.forbidden(v).len() < 2 * k));

        let mut cprime = BTreeMap::new();
        for &v in &c.x {
            let used: BTreeSet<usize> = c.h.neighbours(v).filter_map(|u| cprime.get(&u).copied().or(c.t.colour_of(u))).collect();
            let col = c.t.colour_of(v).unwrap_or_else(|| (0..).find(|x| !used.contains(x)).unwrap());
            cprime.insert(v, col);
        }
        let comp = derive_completion_template(&c.h, &c.t, k, &c.x, &c.z, &cprime).unwrap();
        prop_assert!(comp.degree(k) <= 2 * k * k);

        if k >= 2 {
            let ic = random_interval_case(&mut rng, k);
            let parts = interval_partition(&ic.h, &ic.t, k, &ic.classes).unwrap();
            prop_assert!(parts.len() <= 3 * k);
            prop_assert!((0..parts.len()).all(|m| parts.forbidden_load(&ic.t, m) <= 2 * k));
        }
    }
}
