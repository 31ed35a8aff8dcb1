//! Conformal cycles and cycle-conformality.
//!
//! A cycle `C` of `G` is conformal when `G - V(C)` has a perfect matching.
//! `G` is cycle-conformal when it has a perfect matching and every even
//! cycle is conformal.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bit, enumerate_cycles, Bits, Cycle, Graph, Parity, MAX_VERTICES};
use crate::matching::{cover_graph, has_perfect_matching_within};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConformalityReport {
    pub verdict: bool,
    /// First non-conformal cycle in enumeration order.
    pub witness: Option<Cycle>,
    pub checked_cycles: usize,
    /// Set when the verdict is false for a reason other than a witness.
    pub reason: Option<String>,
}

fn check_cycle(g: &Graph, c: &Cycle) -> Result<()> {
    if c.vertices().iter().any(|&v| v >= g.n()) {
        return Err(Error::NotACycle("vertex out of range".into()));
    }
    if let Some((u, v)) = c.traversal().find(|&(u, v)| !g.has_edge(u, v)) {
        return Err(Error::NotACycle(format!("{u}{v} is not an edge")));
    }
    Ok(())
}

pub fn is_conformal(g: &Graph, c: &Cycle) -> Result<bool> {
    check_cycle(g, c)?;
    Ok(has_perfect_matching_within(g, g.vertex_mask() & !c.vertex_mask()))
}

/// Tests every cycle of the given parity, memoizing by vertex set.
fn all_conformal(g: &Graph, parity: Parity) -> ConformalityReport {
    let all = g.vertex_mask();
    let mut memo: HashMap<u64, bool> = HashMap::new();
    let mut checked = 0;
    for c in enumerate_cycles(g, parity) {
        checked += 1;
        let mask = c.vertex_mask();
        let ok = *memo.entry(mask).or_insert_with(|| has_perfect_matching_within(g, all & !mask));
        if !ok {
            return ConformalityReport { verdict: false, witness: Some(c), checked_cycles: checked, reason: None };
        }
    }
    ConformalityReport { verdict: true, witness: None, checked_cycles: checked, reason: None }
}

/// Exhaustive check over all even cycles.
pub fn brute_is_cycle_conformal(g: &Graph) -> ConformalityReport {
    if !has_perfect_matching_within(g, g.vertex_mask()) {
        return ConformalityReport {
            verdict: false,
            witness: None,
            checked_cycles: 0,
            reason: Some("no perfect matching".into()),
        };
    }
    all_conformal(g, Parity::Even)
}

/// Exhaustive check over all odd cycles.
pub fn is_odd_cycle_conformal(g: &Graph) -> ConformalityReport {
    all_conformal(g, Parity::Odd)
}

/// Whether some even cycle of `g` passes through `e`, i.e. whether `g - e`
/// has an odd path between the ends of `e`.
pub fn edge_in_even_cycle(g: &Graph, e: (usize, usize)) -> Result<bool> {
    let (u, v) = e;
    if !g.has_edge(u, v) {
        return Err(Error::EdgeAbsent(u, v));
    }
    let mut h = g.clone();
    h.remove_edge(u, v)?;
    Ok(has_parity_path(&h, u, v, true))
}

/// Whether `g` has a path from `s` to `t` with an odd (or even) number of
/// edges.
///
/// Every other vertex `w` becomes an edge `w1 w2`, each edge among them is
/// copied into both layers, `s` is joined to the layer-1 copies of its
/// neighbours and `t` to the layer-1 copies (odd) or layer-2 copies (even).
/// A path alternates layers, so a perfect matching of this graph exists iff
/// a path of the requested parity does; unused vertices match `w1 w2`.
pub fn has_parity_path(g: &Graph, s: usize, t: usize, odd: bool) -> bool {
    assert!(s != t);
    if g.has_edge(s, t) && odd {
        return true;
    }
    let n = g.n();
    if 2 * n - 2 > MAX_VERTICES {
        return brute_parity_path(g, s, t, odd);
    }
    let others: Vec<usize> = (0..n).filter(|&w| w != s && w != t).collect();
    let mut index = vec![usize::MAX; n];
    for (i, &w) in others.iter().enumerate() {
        index[w] = i;
    }
    let k = others.len();
    let (gs, gt) = (2 * k, 2 * k + 1);
    let mut h = Graph::new(2 * k + 2);
    for (i, &w) in others.iter().enumerate() {
        h.add_edge(2 * i, 2 * i + 1).unwrap();
        for x in Bits(g.neighbor_mask(w)) {
            if x == s {
                h.add_edge(gs, 2 * i).unwrap();
            } else if x == t {
                h.add_edge(gt, 2 * i + usize::from(!odd)).unwrap();
            } else if index[x] > i {
                h.add_edge(2 * i, 2 * index[x]).unwrap();
                h.add_edge(2 * i + 1, 2 * index[x] + 1).unwrap();
            }
        }
    }
    has_perfect_matching_within(&h, h.vertex_mask())
}

fn brute_parity_path(g: &Graph, s: usize, t: usize, odd: bool) -> bool {
    fn walk(g: &Graph, v: usize, t: usize, len: usize, odd: bool, used: u64) -> bool {
        Bits(g.neighbor_mask(v) & !used).any(|w| {
            if w == t {
                (len + 1) % 2 == usize::from(odd)
            } else {
                walk(g, w, t, len + 1, odd, used | bit(w))
            }
        })
    }
    walk(g, s, t, 0, odd, bit(s))
}

/// Decides cycle-conformality from the components of the cover graph:
/// every component must pass `component_checker`, and no edge outside the
/// cover graph may lie on an even cycle of `g`.
pub fn is_cycle_conformal_reduced(g: &Graph, component_checker: impl Fn(&Graph) -> bool) -> Result<bool> {
    let cov = cover_graph(g)?;
    for (h, _) in cov.component_graphs(g) {
        if !component_checker(&h) {
            return Ok(false);
        }
    }
    for e in cov.excluded(g) {
        if edge_in_even_cycle(g, e)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, complete_bipartite, cycle, even_wheel, heawood, moebius_ladder, path};

    #[test]
    fn conformal_cycles() {
        let k = complete_bipartite(3, 3).unwrap();
        let c = Cycle::new(&k, vec![0, 3, 1, 4]).unwrap();
        assert!(is_conformal(&k, &c).unwrap());
        let hamiltonian = Cycle::new(&k, vec![0, 3, 1, 4, 2, 5]).unwrap();
        assert!(is_conformal(&k, &hamiltonian).unwrap());
        let c6 = cycle(6).unwrap();
        let bad = Cycle::new(&k, vec![0, 3, 1, 4]).unwrap();
        assert!(matches!(is_conformal(&c6, &bad), Err(Error::NotACycle(_))));
    }

    #[test]
    fn heawood_cycle_from_drawing() {
        let g = heawood();
        let c = Cycle::new(&g, [2, 11, 10, 5, 4, 13, 14, 1].iter().map(|v| v - 1).collect()).unwrap();
        assert!(!is_conformal(&g, &c).unwrap());
    }

    #[test]
    fn even_cycle_membership() {
        let c4 = cycle(4).unwrap();
        assert!(edge_in_even_cycle(&c4, (0, 1)).unwrap());
        let mut pendant = c4.clone();
        let x = pendant.add_vertex().unwrap();
        pendant.add_edge(0, x).unwrap();
        assert!(!edge_in_even_cycle(&pendant, (0, x)).unwrap());
        let mut chord = cycle(6).unwrap();
        chord.add_edge(0, 3).unwrap();
        assert!(edge_in_even_cycle(&chord, (0, 3)).unwrap());
        // triangle edges lie on no even cycle
        assert!(!edge_in_even_cycle(&cycle(3).unwrap(), (0, 1)).unwrap());
    }

    #[test]
    fn gadget_matches_path_search() {
        for g in [complete(6).unwrap(), heawood(), moebius_ladder(5).unwrap(), even_wheel(6).unwrap()] {
            for (u, v) in g.edges() {
                for odd in [true, false] {
                    assert_eq!(has_parity_path(&g, u, v, odd), brute_parity_path(&g, u, v, odd));
                }
            }
        }
    }

    #[test]
    fn brute_oracle_examples() {
        assert!(brute_is_cycle_conformal(&complete_bipartite(3, 3).unwrap()).verdict);
        assert!(brute_is_cycle_conformal(&moebius_ladder(4).unwrap()).verdict);
        let h = brute_is_cycle_conformal(&heawood());
        assert!(!h.verdict);
        let w = h.witness.unwrap();
        assert!(w.is_even() && !is_conformal(&heawood(), &w).unwrap());
        assert!(!brute_is_cycle_conformal(&moebius_ladder(5).unwrap()).verdict);
        let odd = brute_is_cycle_conformal(&cycle(5).unwrap());
        assert!(!odd.verdict && odd.witness.is_none() && odd.reason.is_some());
    }

    #[test]
    fn reduced_examples() {
        let brute = |h: &Graph| brute_is_cycle_conformal(h).verdict;
        assert!(is_cycle_conformal_reduced(&path(4).unwrap(), brute).unwrap());
        assert!(is_cycle_conformal_reduced(&cycle(6).unwrap(), brute).unwrap());
        assert!(!is_cycle_conformal_reduced(&crate::families::tight_cut_example().graph, brute).unwrap());
    }

    #[test]
    fn odd_cycle_conformal_examples() {
        assert!(is_odd_cycle_conformal(&cycle(5).unwrap()).verdict);
        assert!(is_odd_cycle_conformal(&complete(5).unwrap()).verdict);
        assert!(is_odd_cycle_conformal(&even_wheel(4).unwrap()).verdict);
    }
}
