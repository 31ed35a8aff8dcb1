use serde::{Deserialize, Serialize};

use super::{bit, full_mask, Cycle, Graph};

/// Which cycles [`enumerate_cycles`] yields.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    All,
    Even,
    Odd,
}

impl Parity {
    fn accepts(self, len: usize) -> bool {
        match self {
            Parity::All => true,
            Parity::Even => len % 2 == 0,
            Parity::Odd => len % 2 == 1,
        }
    }
}

/// Every cycle of `g` exactly once, in canonical form, filtered by parity.
///
/// Cycles come out in lexicographic order of their canonical vertex
/// sequences: a backtracking search anchored at each vertex in turn, using
/// only larger vertices, extending in increasing vertex order. Branches that
/// can no longer close back to the anchor are pruned by a reachability test.
pub fn enumerate_cycles(g: &Graph, parity: Parity) -> CycleIter<'_> {
    CycleIter { g, parity, next_anchor: 0, path: Vec::new(), candidates: Vec::new(), on_path: 0 }
}

/// Lazy stream returned by [`enumerate_cycles`].
pub struct CycleIter<'a> {
    g: &'a Graph,
    parity: Parity,
    next_anchor: usize,
    path: Vec<usize>,
    candidates: Vec<u64>,
    on_path: u64,
}

impl CycleIter<'_> {
    fn above(v: usize) -> u64 {
        !full_mask(v + 1)
    }

    /// Candidates for extending the current path beyond its last vertex.
    fn extensions(&self) -> u64 {
        let g = self.g;
        let s = self.path[0];
        let w = *self.path.last().unwrap();
        let allowed = Self::above(s) & g.vertex_mask() & !self.on_path;
        let next = g.neighbor_mask(w) & allowed;
        if next == 0 || self.path.len() < 2 {
            return next;
        }
        // the vertex closing the cycle must exceed the second vertex
        let targets = g.neighbor_mask(s) & allowed & Self::above(self.path[1]);
        if targets == 0 {
            return 0;
        }
        let reach = g.reach(w, allowed | bit(w)) & !bit(w);
        if reach & targets == 0 {
            0
        } else {
            next & reach
        }
    }
}

impl Iterator for CycleIter<'_> {
    type Item = Cycle;

    fn next(&mut self) -> Option<Cycle> {
        let g = self.g;
        loop {
            if self.path.is_empty() {
                // an anchor needs two larger neighbours to lie on any cycle
                while self.next_anchor < g.n()
                    && (g.neighbor_mask(self.next_anchor) & Self::above(self.next_anchor)).count_ones() < 2
                {
                    self.next_anchor += 1;
                }
                if self.next_anchor >= g.n() {
                    return None;
                }
                let s = self.next_anchor;
                self.next_anchor += 1;
                self.path.push(s);
                self.on_path = bit(s);
                let first = self.extensions();
                self.candidates.push(first);
            }
            let top = self.candidates.len() - 1;
            if self.candidates[top] == 0 {
                let v = self.path.pop().unwrap();
                self.on_path &= !bit(v);
                self.candidates.pop();
                continue;
            }
            let w = self.candidates[top].trailing_zeros() as usize;
            self.candidates[top] &= !bit(w);
            self.path.push(w);
            self.on_path |= bit(w);
            let s = self.path[0];
            let closes =
                self.path.len() >= 3 && g.has_edge(w, s) && self.path[1] < w && self.parity.accepts(self.path.len());
            let ext = self.extensions();
            self.candidates.push(ext);
            if closes {
                return Some(Cycle { vertices: self.path.clone() });
            }
        }
    }
}
