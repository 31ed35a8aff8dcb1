use super::Graph;
use crate::error::{Error, Result};

/// Size of a smallest vertex separator, or `n - 1` for complete graphs.
///
/// Runs a unit-capacity max-flow on the vertex-split digraph for every
/// non-adjacent pair, stopping each flow once it reaches the best separator
/// found so far.
pub fn vertex_connectivity(g: &Graph) -> Result<usize> {
    let n = g.n();
    if n < 2 {
        return Err(Error::Degenerate("vertex connectivity needs at least 2 vertices".into()));
    }
    let mut best = n - 1;
    for s in 0..n {
        for t in s + 1..n {
            if g.has_edge(s, t) {
                continue;
            }
            let flow = disjoint_paths(g, s, t, best);
            best = best.min(flow);
            if best == 0 {
                return Ok(0);
            }
        }
    }
    Ok(best)
}

/// Number of internally disjoint `s`-`t` paths, capped at `limit`.
fn disjoint_paths(g: &Graph, s: usize, t: usize, limit: usize) -> usize {
    let n = g.n();
    // node 2v is v_in, 2v + 1 is v_out
    let size = 2 * n;
    let big = n as i32 + 1;
    let mut cap = vec![0i32; size * size];
    let idx = |a: usize, b: usize| a * size + b;
    for v in 0..n {
        let c = if v == s || v == t { big } else { 1 };
        cap[idx(2 * v, 2 * v + 1)] = c;
        for w in g.neighbors(v) {
            cap[idx(2 * v + 1, 2 * w)] = big;
        }
    }
    let (source, sink) = (2 * s + 1, 2 * t);
    let mut flow = 0;
    let mut prev = vec![usize::MAX; size];
    while flow < limit {
        prev.iter_mut().for_each(|p| *p = usize::MAX);
        prev[source] = source;
        let mut queue = std::collections::VecDeque::from([source]);
        while let Some(a) = queue.pop_front() {
            if a == sink {
                break;
            }
            for b in 0..size {
                if prev[b] == usize::MAX && cap[idx(a, b)] > 0 {
                    prev[b] = a;
                    queue.push_back(b);
                }
            }
        }
        if prev[sink] == usize::MAX {
            break;
        }
        let mut b = sink;
        while b != source {
            let a = prev[b];
            cap[idx(a, b)] -= 1;
            cap[idx(b, a)] += 1;
            b = a;
        }
        flow += 1;
    }
    flow
}
