//! Search routines against brute force written here, independently of the
//! library's own reference module.

use std::collections::BTreeSet;

use conchrom::colouring::{is_colourable, is_proper, list_chromatic_at_least, list_colour, ListAssignment};
use conchrom::connectivity::{connectivity, is_k_connected, min_vertex_cut, MinCut};
use conchrom::graph::Graph;
use conchrom::oracle;
use proptest::prelude::*;

fn graph(n: usize, mask: u64) -> Graph {
    let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::new(n, pairs.enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| e)).unwrap()
}

/// Every map `V -> 0..t`, by counting in base `t`.
fn colourable(g: &Graph, t: usize) -> bool {
    let n = g.order();
    let total = (t as u64).pow(n as u32);
    (0..total).any(|mut code| {
        let mut col = vec![0; n];
        for c in col.iter_mut() {
            *c = (code % t as u64) as usize;
            code /= t as u64;
        }
        g.edges().all(|(u, v)| col[u] != col[v])
    })
}

fn disconnects(g: &Graph, cut: &BTreeSet<usize>) -> bool {
    let rest: Vec<usize> = g.vertices().iter().copied().filter(|v| !cut.contains(v)).collect();
    let Some(&start) = rest.first() else { return false };
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for u in g.neighbours(v) {
            if !cut.contains(&u) && seen.insert(u) {
                stack.push(u);
            }
        }
    }
    seen.len() < rest.len()
}

/// All minimum cuts, sorted; empty for complete graphs.
fn minimum_cuts(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut cuts: Vec<Vec<usize>> = (0u32..1 << n)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect::<Vec<_>>())
        .filter(|c| disconnects(g, &c.iter().copied().collect()))
        .collect();
    let Some(best) = cuts.iter().map(Vec::len).min() else { return vec![] };
    cuts.retain(|c| c.len() == best);
    cuts.sort();
    cuts
}

fn list_colourable(g: &Graph, lists: &ListAssignment) -> bool {
    fn go(g: &Graph, lists: &ListAssignment, i: usize, col: &mut Vec<usize>) -> bool {
        if i == g.order() {
            return true;
        }
        for &c in &lists[&i] {
            if g.neighbours(i).filter(|&u| u < i).all(|u| col[u] != c) {
                col.push(c);
                if go(g, lists, i + 1, col) {
                    return true;
                }
                col.pop();
            }
        }
        false
    }
    go(g, lists, 0, &mut Vec::new())
}

#[test]
fn colourability_matches_on_every_graph_up_to_six_vertices() {
    for n in 0usize..=6 {
        for mask in 0..1u64 << (n * n.saturating_sub(1) / 2) {
            let g = graph(n, mask);
            for t in 0..=4 {
                let fast = is_colourable(&g, t);
                assert_eq!(fast.is_some(), colourable(&g, t), "n={n} mask={mask} t={t}");
                if let Some(c) = fast {
                    assert!(is_proper(&g, &c) && c.values().all(|&x| x < t));
                }
            }
        }
    }
}

#[test]
fn min_cut_matches_on_every_graph_up_to_six_vertices() {
    for n in 0usize..=6 {
        for mask in 0..1u64 << (n * n.saturating_sub(1) / 2) {
            let g = graph(n, mask);
            let cuts = minimum_cuts(&g);
            match min_vertex_cut(&g) {
                MinCut::Complete => assert!(cuts.is_empty(), "n={n} mask={mask}"),
                MinCut::Cut(x) => assert_eq!(Some(&x.into_iter().collect::<Vec<_>>()), cuts.first(), "n={n} mask={mask}"),
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn min_cut_matches_on_eight_vertices(n in 7usize..=8, mask in any::<u64>()) {
        let g = graph(n, mask);
        let cuts = minimum_cuts(&g);
        let kappa = cuts.first().map_or(n - 1, Vec::len);
        prop_assert_eq!(connectivity(&g), kappa);
        prop_assert!(is_k_connected(&g, kappa.max(1)).unwrap() || kappa == 0);
        match min_vertex_cut(&g) {
            MinCut::Complete => prop_assert!(cuts.is_empty()),
            MinCut::Cut(x) => prop_assert_eq!(Some(&x.into_iter().collect::<Vec<_>>()), cuts.first()),
        }
        prop_assert_eq!(oracle::brute_connectivity(&g), kappa);
    }

    #[test]
    fn list_colouring_matches(n in 1usize..=7, mask in any::<u64>(), seeds in prop::collection::vec((1usize..=3, any::<u8>()), 7)) {
        let g = graph(n, mask);
        let lists: ListAssignment = (0..n)
            .map(|v| {
                let (size, bits) = seeds[v];
                let mut l: BTreeSet<usize> = (0..5).filter(|c| bits >> c & 1 == 1).take(size).collect();
                if l.is_empty() {
                    l.insert(bits as usize % 5);
                }
                (v, l)
            })
            .collect();
        let fast = list_colour(&g, &lists).unwrap();
        prop_assert_eq!(fast.is_some(), list_colourable(&g, &lists));
        prop_assert_eq!(oracle::brute_list_colourable(&g, &lists), list_colourable(&g, &lists));
        if let Some(c) = fast {
            prop_assert!(is_proper(&g, &c));
            prop_assert!(c.iter().all(|(v, col)| lists[v].contains(col)));
        }
    }
}

#[test]
fn choosability_ground_truths() {
    let c4 = graph(4, 0b101101); // edges 01, 03, 12, 23
    assert_eq!(c4.size(), 4);
    assert!(c4.edges().all(|(u, v)| (u + v) % 2 == 1));
    assert!(list_chromatic_at_least(&c4, 2, 8).unwrap().is_some());
    assert!(list_chromatic_at_least(&c4, 3, 8).unwrap().is_none());

    let k4 = graph(4, 0b111111);
    assert!(list_chromatic_at_least(&k4, 4, 8).unwrap().is_some());
    assert!(list_chromatic_at_least(&k4, 5, 8).unwrap().is_none());

    let k24 = Graph::new(6, (0..2).flat_map(|a| (2..6).map(move |b| (a, b)))).unwrap();
    let sets: [&[usize]; 6] = [&[1, 2], &[3, 4], &[1, 3], &[1, 4], &[2, 3], &[2, 4]];
    let fixed: ListAssignment = sets.iter().enumerate().map(|(v, s)| (v, s.iter().copied().collect())).collect();
    assert!(!list_colourable(&k24, &fixed));
    let w = list_chromatic_at_least(&k24, 3, 8).unwrap().expect("K24 is not 2-choosable");
    assert!(w.values().all(|l| l.len() == 2));
    assert!(!list_colourable(&k24, &w));
}
