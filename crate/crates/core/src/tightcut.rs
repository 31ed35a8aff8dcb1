//! Tight cuts, their contractions, and the brick/brace decomposition.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bit, full_mask, vertex_connectivity, Bits, Contraction, Graph};
use crate::matching::{has_perfect_matching_within, is_k_extendable, is_matching_covered};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TightCut {
    pub shore: u64,
    pub cut_edges: Vec<(usize, usize)>,
    pub trivial: bool,
}

impl TightCut {
    fn new(g: &Graph, shore: u64) -> TightCut {
        let size = shore.count_ones() as usize;
        TightCut { shore, cut_edges: g.cut(shore), trivial: size == 1 || size + 1 == g.n() }
    }

    /// The same cut with the shore chosen to contain vertex 0.
    pub fn normalized(&self, g: &Graph) -> TightCut {
        if self.shore & 1 == 1 {
            self.clone()
        } else {
            TightCut { shore: g.vertex_mask() & !self.shore, ..self.clone() }
        }
    }

    pub fn co_shore(&self, g: &Graph) -> u64 {
        g.vertex_mask() & !self.shore
    }
}

fn require_matching_covered(g: &Graph) -> Result<()> {
    if is_matching_covered(g) {
        Ok(())
    } else {
        Err(Error::Precondition("graph is not matching covered".into()))
    }
}

fn check_shore(g: &Graph, x: u64) -> Result<()> {
    if x & !g.vertex_mask() != 0 {
        return Err(Error::InvalidShore(format!("shore mentions a vertex outside 0..{}", g.n())));
    }
    if x == 0 || x == g.vertex_mask() {
        return Err(Error::InvalidShore("shore must be a proper non-empty vertex set".into()));
    }
    Ok(())
}

/// Whether `∂(x)` is tight in the matching covered graph `g`.
pub fn is_tight_cut(g: &Graph, x: u64) -> Result<bool> {
    check_shore(g, x)?;
    require_matching_covered(g)?;
    Ok(tight_unchecked(g, x))
}

/// An odd shore is crossed an odd number of times by every perfect matching,
/// so the cut is tight iff no perfect matching uses two disjoint cut edges.
pub(crate) fn tight_unchecked(g: &Graph, x: u64) -> bool {
    if x.count_ones() % 2 == 0 {
        return false;
    }
    let cut = g.cut(x);
    let all = g.vertex_mask();
    for (i, &(a, b)) in cut.iter().enumerate() {
        for &(c, d) in &cut[i + 1..] {
            let ends = bit(a) | bit(b) | bit(c) | bit(d);
            if ends.count_ones() == 4 && has_perfect_matching_within(g, all & !ends) {
                return false;
            }
        }
    }
    true
}

fn next_combination(x: u64) -> Option<u64> {
    let low = x & x.wrapping_neg();
    let ripple = x.checked_add(low)?;
    Some((((ripple ^ x) >> 2) / low) | ripple)
}

/// Odd shores with both sides of size at least 3, smaller side first, by
/// size and then by mask. When the two sides have equal size only the one
/// containing vertex 0 is produced.
fn candidate_shores(g: &Graph) -> impl Iterator<Item = u64> + '_ {
    let n = g.n();
    let all = g.vertex_mask();
    let colour = g.bipartition().map(|p| p.white);
    (3..=n / 2)
        .step_by(2)
        .flat_map(move |k| {
            let mut x = Some(full_mask(k));
            std::iter::from_fn(move || {
                let cur = x.filter(|&c| c & !all == 0)?;
                x = next_combination(cur);
                Some(cur)
            })
            .filter(move |&x| 2 * k != n || x & 1 == 1)
        })
        .filter(move |&x| match colour {
            // a perfect matching crossing once forces colour imbalance one
            Some(white) => ((x & white).count_ones() as i32 - (x & !white).count_ones() as i32).abs() == 1,
            None => true,
        })
}

/// The first nontrivial tight cut in candidate order, if any.
pub fn find_nontrivial_tight_cut(g: &Graph) -> Result<Option<TightCut>> {
    require_matching_covered(g)?;
    Ok(first_cut(g))
}

fn first_cut(g: &Graph) -> Option<TightCut> {
    if g.is_cubic() && g.is_bipartite() && g.n() >= 6 && vertex_connectivity(g).is_ok_and(|k| k >= 3) {
        return structural_cuts(g).into_iter().next();
    }
    candidate_shores(g).find(|&x| tight_unchecked(g, x)).map(|x| TightCut::new(g, x))
}

/// Every nontrivial tight cut, once each.
pub fn all_nontrivial_tight_cuts(g: &Graph) -> Result<Vec<TightCut>> {
    require_matching_covered(g)?;
    Ok(candidate_shores(g).filter(|&x| tight_unchecked(g, x)).map(|x| TightCut::new(g, x)).collect())
}

/// `G[X -> c]` and `G[X̄ -> c]`, in that order.
pub fn tight_cut_contractions(g: &Graph, cut: &TightCut) -> Result<(Contraction, Contraction)> {
    check_shore(g, cut.shore)?;
    if !tight_unchecked(g, cut.shore) {
        return Err(Error::NotTight);
    }
    let a = g.contract_shore(cut.shore)?;
    let b = g.contract_shore(cut.co_shore(g))?;
    for c in [&a, &b] {
        assert!(c.graph.n() < 4 || is_matching_covered(&c.graph), "tight cut contraction lost matching coverage");
    }
    Ok((a, b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Class {
    Brick,
    Brace,
    Neither,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Leaf {
    pub graph: Graph,
    pub class: Class,
}

/// One contraction step: node `host` was split along `shore` into the two
/// child nodes (shore contracted first, co-shore contracted second).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Split {
    pub shore: u64,
    pub children: [usize; 2],
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TraceNode {
    pub graph: Graph,
    pub split: Option<Split>,
    /// Index into the leaf list for unsplit nodes.
    pub leaf: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecompositionResult {
    pub leaves: Vec<Leaf>,
    /// Contraction tree, root first.
    pub trace: Vec<TraceNode>,
}

/// Contract along nontrivial tight cuts until none are left.
pub fn decompose(g: &Graph) -> Result<DecompositionResult> {
    require_matching_covered(g)?;
    Ok(run_decomposition(g, &mut |h: &Graph| first_cut(h)))
}

/// As [`decompose`], choosing each cut after a random relabelling.
pub fn decompose_randomized<R: Rng>(g: &Graph, rng: &mut R) -> Result<DecompositionResult> {
    require_matching_covered(g)?;
    Ok(run_decomposition(g, &mut |h: &Graph| {
        let mut perm: Vec<usize> = (0..h.n()).collect();
        perm.shuffle(rng);
        let cut = first_cut(&h.relabel(&perm))?;
        let shore = Bits(cut.shore).fold(0, |m, v| m | bit(perm.iter().position(|&p| p == v).unwrap()));
        Some(TightCut::new(h, shore))
    }))
}

fn run_decomposition(g: &Graph, choose: &mut dyn FnMut(&Graph) -> Option<TightCut>) -> DecompositionResult {
    let mut result = DecompositionResult { leaves: Vec::new(), trace: Vec::new() };
    let mut pending = vec![0];
    result.trace.push(TraceNode { graph: g.clone(), split: None, leaf: None });
    while let Some(id) = pending.pop() {
        let h = result.trace[id].graph.clone();
        match choose(&h) {
            Some(cut) => {
                let (a, b) = tight_cut_contractions(&h, &cut).expect("chosen cut is tight");
                let first = result.trace.len();
                for c in [a, b] {
                    result.trace.push(TraceNode { graph: c.graph, split: None, leaf: None });
                }
                result.trace[id].split = Some(Split { shore: cut.shore, children: [first, first + 1] });
                pending.push(first + 1);
                pending.push(first);
            }
            None => {
                let class = if h.is_bipartite() { Class::Brace } else { Class::Brick };
                result.trace[id].leaf = Some(result.leaves.len());
                result.leaves.push(Leaf { graph: h, class });
            }
        }
    }
    result
}

/// Brace: `C4`, or bipartite and 2-extendable. Brick: non-bipartite,
/// matching covered and without nontrivial tight cuts.
pub fn classify(g: &Graph) -> Class {
    if g.is_bipartite() {
        let c4 = g.n() == 4 && g.m() == 4 && g.is_regular(2) && g.is_connected();
        let extendable = g.is_connected() && is_k_extendable(g, 2).is_ok_and(|r| r.extendable);
        if c4 || extendable {
            Class::Brace
        } else {
            Class::Neither
        }
    } else if is_matching_covered(g) && first_cut(g).is_none() {
        Class::Brick
    } else {
        Class::Neither
    }
}

/// All nontrivial tight cuts of a cubic bipartite 3-connected graph: the
/// 3-edge induced matchings whose removal leaves two components. Shores
/// contain vertex 0 and come out sorted.
pub fn cubic_tight_cut_structural(g: &Graph) -> Result<Vec<TightCut>> {
    if !g.is_cubic() || !g.is_bipartite() {
        return Err(Error::Precondition("graph must be cubic and bipartite".into()));
    }
    if vertex_connectivity(g).map_or(true, |k| k < 3) {
        return Err(Error::Precondition("graph must be 3-connected".into()));
    }
    Ok(structural_cuts(g))
}

fn structural_cuts(g: &Graph) -> Vec<TightCut> {
    let edges = g.edges();
    let ends = |(u, v): (usize, usize)| bit(u) | bit(v);
    let mut out = Vec::new();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            if ends(edges[i]) & ends(edges[j]) != 0 || spans_extra(g, edges[i], edges[j]) {
                continue;
            }
            for k in j + 1..edges.len() {
                let e = edges[k];
                if ends(e) & (ends(edges[i]) | ends(edges[j])) != 0
                    || spans_extra(g, edges[i], e)
                    || spans_extra(g, edges[j], e)
                {
                    continue;
                }
                let mut h = g.clone();
                for &(u, v) in [edges[i], edges[j], e].iter() {
                    h.remove_edge(u, v).unwrap();
                }
                let parts = h.components();
                if parts.len() == 2 {
                    let shore = parts.into_iter().find(|&p| p & 1 == 1).unwrap();
                    out.push(TightCut::new(g, shore));
                }
            }
        }
    }
    out.sort_by_key(|c| c.shore);
    out
}

/// Whether edges between the ends of two disjoint edges exist.
fn spans_extra(g: &Graph, (a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    g.has_edge(a, c) || g.has_edge(a, d) || g.has_edge(b, c) || g.has_edge(b, d)
}
