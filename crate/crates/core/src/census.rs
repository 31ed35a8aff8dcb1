//! Exhaustive small-graph censuses with isomorphism rejection, and the
//! reports built on them.
//!
//! Bipartite classes are generated as biadjacency matrices whose rows and
//! columns are both lexicographically non-increasing (every matrix can be
//! brought into that form by permuting rows and columns), then deduplicated
//! by canonical form. Other classes grow graphs one vertex at a time,
//! keeping one representative per isomorphism class at every order.
//! Results are sorted by order and canonical form, so they do not depend on
//! the thread count.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::conformality::brute_is_cycle_conformal;
use crate::error::{Error, Result};
use crate::graph::io::{read_graphs, to_graph6};
use crate::graph::{bit, canonical_form, is_planar, Bits, CanonicalForm, Graph};
use crate::matching::is_matching_covered;
use crate::recognizers::{recognize_cubic_bipartite_cc, recognize_planar_bipartite_cc};
use crate::tightcut::{classify, Class};

/// Largest order for cubic bipartite censuses.
pub const MAX_CUBIC_BIPARTITE_N: usize = 14;
/// Largest order for other bipartite censuses.
pub const MAX_BIPARTITE_N: usize = 12;
/// Largest order for censuses of general graphs.
pub const MAX_GENERAL_N: usize = 9;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusSpec {
    pub min_n: usize,
    pub max_n: usize,
    pub bipartite: bool,
    /// Colour classes of equal size (for connected graphs).
    pub balanced: bool,
    pub regular: Option<usize>,
    pub connected: bool,
    pub min_degree: usize,
    pub planar: bool,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl Default for CensusSpec {
    fn default() -> Self {
        CensusSpec {
            min_n: 1,
            max_n: 8,
            bipartite: false,
            balanced: false,
            regular: None,
            connected: true,
            min_degree: 0,
            planar: false,
            threads: None,
        }
    }
}

impl CensusSpec {
    pub fn bound(&self) -> usize {
        match (self.bipartite, self.regular) {
            (true, Some(3)) => MAX_CUBIC_BIPARTITE_N,
            (true, _) => MAX_BIPARTITE_N,
            (false, _) => MAX_GENERAL_N,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_n > self.bound() {
            return Err(Error::Scale(format!(
                "census up to {} vertices exceeds the bound {} for this class; ingest graph6 instead",
                self.max_n,
                self.bound()
            )));
        }
        if self.min_n > self.max_n {
            return Err(Error::Parameter(format!("min_n {} exceeds max_n {}", self.min_n, self.max_n)));
        }
        Ok(())
    }

    fn min_row_degree(&self) -> usize {
        let lo = if self.connected { self.min_degree.max(1) } else { self.min_degree };
        self.regular.unwrap_or(lo)
    }

    /// Whether `g` has every property asked for.
    pub fn accepts(&self, g: &Graph) -> bool {
        let n = g.n();
        if n < self.min_n || n > self.max_n {
            return false;
        }
        if self.connected && !g.is_connected() {
            return false;
        }
        if n > 0 && g.min_degree() < self.min_degree {
            return false;
        }
        if self.regular.is_some_and(|d| !g.is_regular(d)) {
            return false;
        }
        if self.bipartite || self.balanced {
            match g.bipartition() {
                None => return false,
                Some(p) => {
                    if self.balanced && 2 * p.white.count_ones() as usize != n {
                        return false;
                    }
                }
            }
        }
        !self.planar || is_planar(g).planar
    }

    fn hereditary_ok(&self, g: &Graph) -> bool {
        if self.regular.is_some_and(|d| g.max_degree() > d) {
            return false;
        }
        if self.bipartite && !g.is_bipartite() {
            return false;
        }
        !self.planar || is_planar(g).planar
    }
}

fn in_pool<T: Send>(threads: Option<usize>, work: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(work()),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| Error::Parameter(format!("thread pool: {e}")))?;
            Ok(pool.install(work))
        }
    }
}

/// One canonically labelled representative per isomorphism class.
pub fn enumerate_graphs(spec: &CensusSpec) -> Result<Vec<Graph>> {
    spec.validate()?;
    in_pool(spec.threads, || {
        let forms: Vec<CanonicalForm> = if spec.bipartite || spec.balanced {
            (spec.min_n..=spec.max_n).flat_map(|n| bipartite_of_order(n, spec)).collect()
        } else {
            general_up_to(spec)
        };
        forms.iter().map(|f| f.graph()).filter(|g| spec.accepts(g)).collect()
    })
}

/// Graphs from a graph6 stream that satisfy `spec`, one per isomorphism
/// class, in input order of first appearance.
pub fn ingest_graph6(text: &str, spec: &CensusSpec) -> Result<Vec<Graph>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for g in read_graphs(text)? {
        if spec.accepts(&g) && seen.insert(canonical_form(&g)) {
            out.push(g);
        }
    }
    Ok(out)
}

fn bipartite_of_order(n: usize, spec: &CensusSpec) -> Vec<CanonicalForm> {
    let mut found = BTreeSet::new();
    if n == 0 {
        return Vec::new();
    }
    for w in 0..=n / 2 {
        let b = n - w;
        if spec.balanced && w != b {
            continue;
        }
        if w == 0 {
            let g = Graph::new(n);
            if spec.accepts(&g) {
                found.insert(canonical_form(&g));
            }
            continue;
        }
        let search = MatrixSearch { w, b, spec };
        // split the work on the first two rows
        let mut prefixes = Vec::new();
        search.extend(&mut State::new(b), w.min(2), &mut |st: &State| prefixes.push(st.clone()));
        let parts: Vec<BTreeSet<CanonicalForm>> = prefixes
            .into_par_iter()
            .map(|mut st| {
                let mut local = BTreeSet::new();
                search.extend(&mut st, w, &mut |done: &State| {
                    if let Some(g) = search.graph(done) {
                        local.insert(canonical_form(&g));
                    }
                });
                local
            })
            .collect();
        for part in parts {
            found.extend(part);
        }
    }
    found.into_iter().collect()
}

#[derive(Clone)]
struct State {
    rows: Vec<u64>,
    col_sums: Vec<usize>,
    /// Bit `j` set while columns `j` and `j + 1` agree on all rows so far.
    tied: u64,
}

impl State {
    fn new(b: usize) -> State {
        State { rows: Vec::new(), col_sums: vec![0; b], tied: if b > 1 { (1u64 << (b - 1)) - 1 } else { 0 } }
    }
}

struct MatrixSearch<'a> {
    w: usize,
    b: usize,
    spec: &'a CensusSpec,
}

impl MatrixSearch<'_> {
    /// Column `j` is bit `b - 1 - j`, so integer order on rows is
    /// lexicographic order with column 0 first.
    fn col_bit(&self, row: u64, j: usize) -> bool {
        row >> (self.b - 1 - j) & 1 == 1
    }

    fn extend(&self, st: &mut State, depth: usize, emit: &mut dyn FnMut(&State)) {
        let i = st.rows.len();
        if i == depth {
            emit(st);
            return;
        }
        let lo = self.spec.min_row_degree();
        let max = st.rows.last().copied().unwrap_or((1u64 << self.b) - 1);
        let remaining_after = self.w - i - 1;
        let col_lo = self.spec.regular.unwrap_or(lo);
        for row in (0..=max).rev() {
            let weight = row.count_ones() as usize;
            if weight < lo || self.spec.regular.is_some_and(|d| weight != d) {
                continue;
            }
            let Some(tied) = self.retie(st.tied, row) else { continue };
            let mut ok = true;
            for j in 0..self.b {
                let s = st.col_sums[j] + usize::from(self.col_bit(row, j));
                if self.spec.regular.is_some_and(|d| s > d) || s + remaining_after < col_lo {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            let saved = st.tied;
            for j in 0..self.b {
                st.col_sums[j] += usize::from(self.col_bit(row, j));
            }
            st.tied = tied;
            st.rows.push(row);
            self.extend(st, depth, emit);
            st.rows.pop();
            st.tied = saved;
            for j in 0..self.b {
                st.col_sums[j] -= usize::from(self.col_bit(row, j));
            }
        }
    }

    /// Updates the tied column pairs, or rejects a row that would put a
    /// column below its right neighbour.
    fn retie(&self, tied: u64, row: u64) -> Option<u64> {
        let mut out = tied;
        for j in Bits(tied) {
            match (self.col_bit(row, j), self.col_bit(row, j + 1)) {
                (false, true) => return None,
                (true, false) => out &= !bit(j),
                _ => {}
            }
        }
        Some(out)
    }

    fn graph(&self, st: &State) -> Option<Graph> {
        let mut g = Graph::new(self.w + self.b);
        for (i, &row) in st.rows.iter().enumerate() {
            for j in 0..self.b {
                if self.col_bit(row, j) {
                    g.add_edge(i, self.w + j).unwrap();
                }
            }
        }
        self.spec.accepts(&g).then_some(g)
    }
}

fn general_up_to(spec: &CensusSpec) -> Vec<CanonicalForm> {
    let mut out = Vec::new();
    let mut level: Vec<CanonicalForm> = vec![canonical_form(&Graph::new(1))];
    for n in 1..=spec.max_n {
        if n > 1 {
            let parts: Vec<BTreeSet<CanonicalForm>> = level
                .par_iter()
                .map(|parent| {
                    let base = parent.graph();
                    let mut local = BTreeSet::new();
                    for nbrs in 0u64..1 << (n - 1) {
                        let mut g = base.clone();
                        let v = g.add_vertex().unwrap();
                        for u in Bits(nbrs) {
                            g.add_edge(u, v).unwrap();
                        }
                        if spec.hereditary_ok(&g) {
                            local.insert(canonical_form(&g));
                        }
                    }
                    local
                })
                .collect();
            let merged: BTreeSet<CanonicalForm> = parts.into_iter().flatten().collect();
            level = merged.into_iter().collect();
        }
        if n >= spec.min_n {
            out.extend(level.iter().cloned());
        }
    }
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCounts {
    pub graphs: usize,
    pub matching_covered: usize,
    pub braces: usize,
    pub cycle_conformal: usize,
    pub cycle_conformal_braces: usize,
    pub cubic_checked: usize,
    pub planar_checked: usize,
    /// Dead-end inverse moves taken by the planar recognizer.
    pub planar_backtracks: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub graph6: String,
    pub recognizer: String,
    pub recognizer_verdict: bool,
    pub oracle_verdict: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    /// Counts per vertex count.
    pub class_counts: BTreeMap<usize, ClassCounts>,
    pub cycle_conformal_braces: Vec<String>,
    /// Cycle-conformal braces that are not complete bipartite.
    pub counterexamples: Vec<String>,
    pub mismatches: Vec<Mismatch>,
}

struct Findings {
    n: usize,
    matching_covered: bool,
    brace: bool,
    cycle_conformal: Option<bool>,
    complete_bipartite: bool,
    cubic: Option<bool>,
    planar: Option<(bool, usize)>,
}

fn is_complete_bipartite(g: &Graph) -> bool {
    g.is_connected()
        && g.bipartition().is_some_and(|p| {
            let w = p.white.count_ones() as usize;
            g.m() == w * (g.n() - w)
        })
}

fn examine(g: &Graph, braces: bool, recognizers: bool) -> Findings {
    let matching_covered = is_matching_covered(g);
    let brace = braces && g.is_bipartite() && classify(g) == Class::Brace;
    let bip = g.is_bipartite();
    let cubic_applies = recognizers && matching_covered && bip && g.is_cubic();
    let planar_applies = recognizers && matching_covered && bip && is_planar(g).planar;
    let cycle_conformal = (brace || cubic_applies || planar_applies).then(|| brute_is_cycle_conformal(g).verdict);
    let cubic = cubic_applies.then(|| recognize_cubic_bipartite_cc(g).verdict);
    let planar = planar_applies.then(|| {
        let r = recognize_planar_bipartite_cc(g);
        (r.verdict, r.backtracks)
    });
    Findings {
        n: g.n(),
        matching_covered,
        brace,
        cycle_conformal,
        complete_bipartite: is_complete_bipartite(g),
        cubic,
        planar,
    }
}

/// Brace census and recognizer validation over a list of graphs.
pub fn census_report(
    graphs: &[Graph],
    braces: bool,
    recognizers: bool,
    threads: Option<usize>,
) -> Result<CensusReport> {
    let findings: Vec<Findings> =
        in_pool(threads, || graphs.par_iter().map(|g| examine(g, braces, recognizers)).collect())?;
    let mut report = CensusReport::default();
    for (g, f) in graphs.iter().zip(findings) {
        let counts = report.class_counts.entry(f.n).or_default();
        counts.graphs += 1;
        counts.matching_covered += usize::from(f.matching_covered);
        counts.braces += usize::from(f.brace);
        let cc = f.cycle_conformal.unwrap_or(false);
        counts.cycle_conformal += usize::from(cc);
        if f.brace && cc {
            counts.cycle_conformal_braces += 1;
            report.cycle_conformal_braces.push(to_graph6(g));
            if !f.complete_bipartite {
                report.counterexamples.push(to_graph6(g));
            }
        }
        if let Some(v) = f.cubic {
            counts.cubic_checked += 1;
            if v != cc {
                report.mismatches.push(Mismatch {
                    graph6: to_graph6(g),
                    recognizer: "cubic".into(),
                    recognizer_verdict: v,
                    oracle_verdict: cc,
                });
            }
        }
        if let Some((v, backtracks)) = f.planar {
            counts.planar_checked += 1;
            counts.planar_backtracks += backtracks;
            if v != cc {
                report.mismatches.push(Mismatch {
                    graph6: to_graph6(g),
                    recognizer: "kuske".into(),
                    recognizer_verdict: v,
                    oracle_verdict: cc,
                });
            }
        }
    }
    Ok(report)
}

/// Every brace in the census with its cycle-conformality verdict.
pub fn census_braces(spec: &CensusSpec) -> Result<CensusReport> {
    if !spec.bipartite {
        return Err(Error::Parameter("brace census needs bipartite graphs".into()));
    }
    // braces have a perfect matching and minimum degree at least 2
    let spec = CensusSpec { balanced: true, min_degree: spec.min_degree.max(2), ..spec.clone() };
    let graphs = enumerate_graphs(&spec)?;
    census_report(&graphs, true, false, spec.threads)
}

/// Recognizer verdicts against the brute-force oracle on every matching
/// covered graph of the census.
pub fn validate_recognizers(spec: &CensusSpec) -> Result<CensusReport> {
    let graphs = enumerate_graphs(spec)?;
    census_report(&graphs, false, true, spec.threads)
}
