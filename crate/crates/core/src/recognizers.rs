//! Polynomial-style recognizers for cycle-conformality in two classes:
//! cubic bipartite graphs (all braces are `K_{3,3}`) and planar bipartite
//! graphs (built from `C4` by bisubdivisions and 3-path operations).

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::families::{bisubdivide, complete_bipartite, cycle, three_path_op};
use crate::graph::{are_isomorphic, bit, canonical_form, canonical_labelling, is_planar, CanonicalForm, Graph};
use crate::matching::is_matching_covered;
use crate::tightcut::decompose;

/// Why a recognizer rejected its input without deciding it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reason {
    NotCubic,
    NotBipartite,
    NotMatchingCovered,
    NotPlanar,
    /// Some brace of the decomposition is neither `K_{3,3}` nor `C4`.
    BraceNotK33,
    /// No sequence of inverse operations reaches `C4`.
    NoReduction,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CubicRecognition {
    pub verdict: bool,
    pub reason: Option<Reason>,
    pub leaves: Vec<Graph>,
    pub failing_leaf: Option<Graph>,
}

/// A cubic bipartite matching covered graph is cycle-conformal iff all of
/// its braces are `K_{3,3}`. Graphs that are only 2-connected also produce
/// `C4` braces (a 2-edge cut contracts to parallel edges, which are
/// dropped); `C4` is cycle-conformal, so those leaves are accepted too.
pub fn recognize_cubic_bipartite_cc(g: &Graph) -> CubicRecognition {
    let reject = |reason| CubicRecognition { verdict: false, reason: Some(reason), leaves: vec![], failing_leaf: None };
    if !g.is_cubic() {
        return reject(Reason::NotCubic);
    }
    if !g.is_bipartite() {
        return reject(Reason::NotBipartite);
    }
    let Ok(result) = decompose(g) else {
        return reject(Reason::NotMatchingCovered);
    };
    let k33 = complete_bipartite(3, 3).unwrap();
    let leaves: Vec<Graph> = result.leaves.into_iter().map(|l| l.graph).collect();
    let failing_leaf = leaves.iter().find(|l| !is_c4(l) && !are_isomorphic(l, &k33)).cloned();
    CubicRecognition {
        verdict: failing_leaf.is_none(),
        reason: failing_leaf.as_ref().map(|_| Reason::BraceNotK33),
        leaves,
        failing_leaf,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "op")]
pub enum Operation {
    Bisubdivision { pairs: usize },
    ThreePath,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    #[serde(flatten)]
    pub op: Operation,
    /// Edge of the graph built so far; new vertices take the next labels.
    pub edge: (usize, usize),
}

/// Forward construction of a graph from `C4` (the cycle `0 1 2 3`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionTrace {
    pub base: Graph,
    pub steps: Vec<Step>,
}

impl ConstructionTrace {
    pub fn replay(&self) -> crate::Result<Graph> {
        let mut g = self.base.clone();
        for step in &self.steps {
            g = match step.op {
                Operation::Bisubdivision { pairs } => bisubdivide(&g, step.edge, pairs)?,
                Operation::ThreePath => three_path_op(&g, step.edge)?,
            };
        }
        Ok(g)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PlanarRecognition {
    pub verdict: bool,
    pub reason: Option<Reason>,
    pub trace: Option<ConstructionTrace>,
    /// Inverse moves that led to dead ends before the search finished.
    pub backtracks: usize,
}

/// One inverse move: delete adjacent degree-2 vertices `a`, `b` whose other
/// neighbours are `x` (of `a`) and `y` (of `b`). Inverse bisubdivision also
/// adds `xy`; the inverse 3-path operation needs `xy` present already.
#[derive(Clone, Copy, Debug)]
struct Move {
    op: Operation,
    a: usize,
    b: usize,
    x: usize,
    y: usize,
}

fn inverse_moves(h: &Graph) -> Vec<Move> {
    let mut out = Vec::new();
    for a in (0..h.n()).filter(|&a| h.degree(a) == 2) {
        for b in h.neighbors(a).filter(|&b| b > a && h.degree(b) == 2) {
            let x = h.neighbors(a).find(|&v| v != b).unwrap();
            let y = h.neighbors(b).find(|&v| v != a).unwrap();
            if x == y {
                continue;
            }
            let op = if h.has_edge(x, y) { Operation::ThreePath } else { Operation::Bisubdivision { pairs: 1 } };
            out.push(Move { op, a, b, x, y });
        }
    }
    out
}

/// The smaller graph and the old label of each of its vertices.
fn apply_inverse(h: &Graph, mv: &Move) -> (Graph, Vec<usize>) {
    let mut h2 = h.clone();
    if let Operation::Bisubdivision { .. } = mv.op {
        h2.add_edge(mv.x, mv.y).unwrap();
    }
    h2.remove_vertices(bit(mv.a) | bit(mv.b))
}

fn is_c4(h: &Graph) -> bool {
    h.n() == 4 && h.m() == 4 && h.is_regular(2)
}

struct Reducer {
    dead: HashSet<CanonicalForm>,
    /// Graphs and moves from the input down to `C4`.
    path: Vec<(Graph, Move, Vec<usize>)>,
    backtracks: usize,
}

impl Reducer {
    fn reduce(&mut self, h: &Graph) -> bool {
        if is_c4(h) {
            return true;
        }
        if h.n() <= 4 {
            return false;
        }
        let key = canonical_form(h);
        if self.dead.contains(&key) {
            return false;
        }
        for mv in inverse_moves(h) {
            let (smaller, origin) = apply_inverse(h, &mv);
            self.path.push((h.clone(), mv, origin));
            if self.reduce(&smaller) {
                return true;
            }
            self.path.pop();
            self.backtracks += 1;
        }
        self.dead.insert(key);
        false
    }

    /// Turns the reduction path into forward steps on `cycle(4)` labels.
    fn trace(&self, c4: &Graph) -> ConstructionTrace {
        let base = cycle(4).unwrap();
        let (_, from_c4) = canonical_labelling(c4);
        let (_, from_base) = canonical_labelling(&base);
        let mut to_base = vec![0; 4];
        for v in 0..4 {
            to_base[v] = from_base.iter().position(|&p| p == from_c4[v]).unwrap();
        }
        let mut map = to_base;
        let mut built = base.clone();
        let mut steps = Vec::new();
        for (h, mv, origin) in self.path.iter().rev() {
            let mut next = vec![usize::MAX; h.n()];
            for (j, &old) in origin.iter().enumerate() {
                next[old] = map[j];
            }
            next[mv.a] = built.n();
            next[mv.b] = built.n() + 1;
            let step = Step { op: mv.op, edge: (next[mv.x], next[mv.y]) };
            built = match step.op {
                Operation::Bisubdivision { pairs } => bisubdivide(&built, step.edge, pairs).unwrap(),
                Operation::ThreePath => three_path_op(&built, step.edge).unwrap(),
            };
            debug_assert_eq!(built, h.relabel(&next));
            steps.push(step);
            map = next;
        }
        ConstructionTrace { base, steps }
    }
}

/// A planar bipartite matching covered graph is cycle-conformal iff it can
/// be built from `C4` by bisubdivisions and 3-path operations. The search
/// runs the operations backwards with backtracking; dead ends are
/// remembered by canonical form.
pub fn recognize_planar_bipartite_cc(g: &Graph) -> PlanarRecognition {
    let reject = |reason| PlanarRecognition { verdict: false, reason: Some(reason), trace: None, backtracks: 0 };
    if !g.is_bipartite() {
        return reject(Reason::NotBipartite);
    }
    if !is_matching_covered(g) {
        return reject(Reason::NotMatchingCovered);
    }
    if !is_planar(g).planar {
        return reject(Reason::NotPlanar);
    }
    let mut reducer = Reducer { dead: HashSet::new(), path: Vec::new(), backtracks: 0 };
    if !reducer.reduce(g) {
        return PlanarRecognition { backtracks: reducer.backtracks, ..reject(Reason::NoReduction) };
    }
    let c4 = match reducer.path.last() {
        Some((h, mv, _)) => apply_inverse(h, mv).0,
        None => g.clone(),
    };
    PlanarRecognition { verdict: true, reason: None, trace: Some(reducer.trace(&c4)), backtracks: reducer.backtracks }
}

/// A bipartite matching covered graph is Pfaffian and cycle-conformal iff
/// it is planar and cycle-conformal.
pub fn recognize_pfaffian_bipartite_cc(g: &Graph) -> PlanarRecognition {
    recognize_planar_bipartite_cc(g)
}
