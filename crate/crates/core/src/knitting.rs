//! Knitting on ADE translation quivers with kill vertices.
//!
//! The mesh recurrence is run synchronously on the diagram:
//! `v_{k+1} = A·v_k − v_{k−1}`, zeroing kill vertices after every step. For
//! a bipartite graph each vertex is live on every other step, so two
//! consecutive steps form one τ-slice of `ℤΔ`; a *layer* is such a slice
//! (steps `2j`, `2j+1` summed vertexwise).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::data::ReferenceData;
use crate::dynkin::{build_diagram, MarkedDiagram, Placement};
use crate::error::{Error, Result};
use crate::numerics::HelixNumerics;

pub const DEFAULT_MAX_LAYERS: usize = 64;

#[derive(Debug, Clone)]
pub struct KnitProblem<'a> {
    pub graph: &'a MarkedDiagram,
    pub start: usize,
    pub read: usize,
    pub kill: Vec<usize>,
    pub max_layers: usize,
}

impl<'a> KnitProblem<'a> {
    /// Resolves vertex names (ids or aliases) against `graph`.
    pub fn new(graph: &'a MarkedDiagram, start: &str, read: &str, kill: &[&str]) -> Result<Self> {
        let kill = kill.iter().map(|k| graph.index(k)).collect::<Result<Vec<_>>>()?;
        Ok(KnitProblem {
            graph,
            start: graph.index(start)?,
            read: graph.index(read)?,
            kill,
            max_layers: DEFAULT_MAX_LAYERS,
        })
    }

    pub fn by_index(graph: &'a MarkedDiagram, start: usize, read: usize, kill: &[usize]) -> Self {
        KnitProblem { graph, start, read, kill: kill.to_vec(), max_layers: DEFAULT_MAX_LAYERS }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnitTrace {
    pub ids: Vec<String>,
    /// Raw synchronous steps, kept for the grid rendering.
    pub steps: Vec<Vec<i64>>,
    pub killed: Vec<bool>,
    /// Non-negative τ-slices, terminating slice excluded.
    pub layers: Vec<Vec<i64>>,
    pub read_values: Vec<i64>,
    pub total: i64,
}

#[derive(Serialize)]
struct TraceJson<'a> {
    layers: Vec<BTreeMap<&'a str, i64>>,
    read_values: &'a [i64],
    total: i64,
}

impl KnitTrace {
    pub fn to_json(&self) -> serde_json::Value {
        let layers =
            self.layers.iter().map(|l| self.ids.iter().map(String::as_str).zip(l.iter().copied()).collect()).collect();
        serde_json::to_value(TraceJson { layers, read_values: &self.read_values, total: self.total })
            .expect("trace serializes")
    }

    /// Aligned grid: one row per vertex, one column per step; killed
    /// vertices show `•`, structurally absent entries are blank.
    pub fn grid(&self) -> String {
        let width = self.ids.iter().map(String::len).max().unwrap_or(1);
        let cols = self.layers.len() * 2;
        let parity = self.parities();
        let cell = |v: usize, k: usize| -> String {
            if self.killed[v] {
                "•".to_string()
            } else if parity[v].is_some_and(|p| p != k % 2) {
                String::new()
            } else {
                self.steps[k][v].to_string()
            }
        };
        let cw = (0..self.ids.len())
            .flat_map(|v| (0..cols).map(move |k| (v, k)))
            .map(|(v, k)| cell(v, k).chars().count())
            .max()
            .unwrap_or(1)
            .max(1);
        let mut out = String::new();
        for v in 0..self.ids.len() {
            let _ = write!(out, "{:>width$} |", self.ids[v]);
            for k in 0..cols {
                let c = cell(v, k);
                let pad = cw - c.chars().count();
                let _ = write!(out, " {}{}", " ".repeat(pad), c);
            }
            out.push('\n');
        }
        let _ = write!(out, "{:>width$} |", "read");
        let rv: Vec<String> = self.read_values.iter().map(i64::to_string).collect();
        let _ = writeln!(out, " {} = {}", rv.join("+"), self.total);
        out
    }

    /// Parity of the step on which each vertex can be non-zero, when the
    /// trace is bipartite in that sense.
    fn parities(&self) -> Vec<Option<usize>> {
        (0..self.ids.len())
            .map(|v| {
                let even = self.steps.iter().step_by(2).any(|s| s[v] != 0);
                let odd = self.steps.iter().skip(1).step_by(2).any(|s| s[v] != 0);
                match (even, odd) {
                    (true, false) => Some(0),
                    (false, true) => Some(1),
                    _ => None,
                }
            })
            .collect()
    }
}

pub fn knit(p: &KnitProblem<'_>) -> Result<KnitTrace> {
    let g = p.graph;
    let n = g.len();
    if p.kill.contains(&p.start) {
        return Err(Error::StartKilled(g.id(p.start).to_string()));
    }
    let mut killed = vec![false; n];
    for &k in &p.kill {
        killed[k] = true;
    }
    let mut prev = vec![0i64; n];
    let mut cur = vec![0i64; n];
    cur[p.start] = 1;
    let mut steps = vec![cur.clone()];
    let mut layers = Vec::new();
    loop {
        let next: Vec<i64> = (0..n)
            .map(|v| {
                if killed[v] {
                    0
                } else {
                    g.neighbours(v).iter().map(|&(w, m)| i64::from(m) * cur[w]).sum::<i64>() - prev[v]
                }
            })
            .collect();
        steps.push(next.clone());
        prev = std::mem::replace(&mut cur, next);
        if steps.len() % 2 == 0 {
            let k = steps.len();
            let slice: Vec<i64> = (0..n).map(|v| steps[k - 2][v] + steps[k - 1][v]).collect();
            if slice.iter().all(|&x| x <= 0) {
                steps.truncate(k - 2);
                break;
            }
            if slice.iter().any(|&x| x < 0) {
                return Err(Error::MixedSigns { layer: layers.len(), values: slice });
            }
            layers.push(slice);
            if layers.len() > p.max_layers {
                return Err(Error::GuardExceeded(p.max_layers));
            }
        }
    }
    let read_values: Vec<i64> = layers.iter().map(|l| l[p.read]).collect();
    Ok(KnitTrace { ids: g.ids().to_vec(), steps, killed, total: read_values.iter().sum(), read_values, layers })
}

/// `dim End(V_a)/[V_b]` on the affine diagram: knit from `a`, read at
/// `a`, kill `b`.
pub fn stable_dim(g: &MarkedDiagram, a: usize, b: usize) -> Result<i64> {
    Ok(knit(&KnitProblem::by_index(g, a, a, &[b]))?.total)
}

/// A vertex assignment `V_{-1}, V_0, …, V_{N/2}` along the chamber walk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChamberWalk {
    pub placement: Placement,
    /// `(vertex(V_{i−1}), vertex(V_i))` for `i = 0..=N/2`.
    pub pairs: Vec<(String, String)>,
    pub dims: Vec<i64>,
    /// Number of consistent assignments found.
    pub solutions: usize,
}

impl ChamberWalk {
    pub fn is_unique(&self) -> bool {
        self.solutions == 1
    }
}

fn dims_column(ell: u8) -> Result<Vec<i64>> {
    ReferenceData::embedded()
        .deformation_row(ell)
        .map(|r| r.dims.clone())
        .ok_or(Error::LengthOutOfRange(i64::from(ell)))
}

/// Outcome of walking one placement: the longest consistent prefix and,
/// if the walk breaks, the index and the values actually observed there.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlacementProfile {
    pub placement: Placement,
    /// Vertices `V_{−1}, V_0, …` of the first solution, or of the longest
    /// consistent prefix when there is none.
    pub walk: Vec<String>,
    pub dims: Vec<i64>,
    pub solutions: usize,
    pub divergence: Option<Divergence>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Divergence {
    pub i: usize,
    pub expected: i64,
    pub observed: Vec<i64>,
}

struct Search<'a> {
    g: &'a MarkedDiagram,
    h: &'a HelixNumerics,
    target: &'a [i64],
    /// `walk[j] = vertex(V_{j−1})`.
    walk: Vec<usize>,
    first: Option<Vec<usize>>,
    solutions: usize,
    deepest: Vec<usize>,
    divergence: Option<Divergence>,
}

impl Search<'_> {
    fn run(&mut self) -> Result<()> {
        // walk holds V_{-1}..V_i; extend with V_{i+1}.
        let i = self.walk.len() - 2;
        let half = self.h.half_period();
        if i >= half {
            self.solutions += 1;
            if self.first.is_none() {
                self.first = Some(self.walk.clone());
            }
            return Ok(());
        }
        let rank = self.h.rank_at(i as i64 + 1);
        let cur = self.walk[i + 1];
        let mut observed = Vec::new();
        for v in 0..self.g.len() {
            if i64::from(self.g.label(v)) != rank || v == cur {
                continue;
            }
            let d = stable_dim(self.g, cur, v)?;
            if d == self.target[i + 1] {
                self.walk.push(v);
                if self.walk.len() > self.deepest.len() {
                    self.deepest = self.walk.clone();
                }
                self.run()?;
                self.walk.pop();
            } else {
                observed.push(d);
            }
        }
        if self.first.is_none() && self.walk.len() >= self.deepest.len() {
            observed.sort_unstable();
            observed.dedup();
            self.divergence = Some(Divergence { i: i + 1, expected: self.target[i + 1], observed });
        }
        Ok(())
    }
}

/// Walks a placement against the tabulated dimension column.
///
/// `V_0` is the extending vertex, `V_1` and `V_{−1}` the marked vertex;
/// each later `V_{i+1}` ranges over vertices labelled `rank(V_{i+1})` and
/// must reproduce the tabulated `dim 𝔽Λ_{i+1}^def`. All solutions are
/// counted and the first in vertex order is kept.
pub fn placement_profile(placement: &Placement, h: &HelixNumerics) -> Result<PlacementProfile> {
    let g = placement.affine_diagram()?;
    let m = g.marked().expect("placement diagram is marked");
    let e = g.extending().expect("affine");
    if i64::from(g.label(m)) != i64::from(h.ell) {
        return Err(Error::Invariant(format!("{placement} has label {}, not {}", g.label(m), h.ell)));
    }
    let target = dims_column(h.ell)?;
    let d0 = stable_dim(&g, m, e)?;
    if d0 != target[0] {
        return Ok(PlacementProfile {
            placement: placement.clone(),
            walk: vec![g.id(m).to_string(), g.id(e).to_string()],
            dims: vec![],
            solutions: 0,
            divergence: Some(Divergence { i: 0, expected: target[0], observed: vec![d0] }),
        });
    }
    let mut s = Search {
        g: &g,
        h,
        target: &target,
        walk: vec![m, e],
        first: None,
        solutions: 0,
        deepest: vec![m, e],
        divergence: None,
    };
    if h.half_period() >= 1 {
        // V_1 is forced to be the marked vertex.
        let d1 = stable_dim(&g, e, m)?;
        if d1 != target[1] {
            return Ok(PlacementProfile {
                placement: placement.clone(),
                walk: vec![g.id(m).to_string(), g.id(e).to_string()],
                dims: vec![d0],
                solutions: 0,
                divergence: Some(Divergence { i: 1, expected: target[1], observed: vec![d1] }),
            });
        }
        s.walk.push(m);
        s.deepest = s.walk.clone();
    }
    s.run()?;
    let best = s.first.clone().unwrap_or_else(|| s.deepest.clone());
    let dims = (0..best.len() - 1).map(|i| stable_dim(&g, best[i], best[i + 1])).collect::<Result<_>>()?;
    Ok(PlacementProfile {
        placement: placement.clone(),
        walk: best.iter().map(|&v| g.id(v).to_string()).collect(),
        dims,
        solutions: s.solutions,
        divergence: if s.first.is_some() { None } else { s.divergence },
    })
}

pub fn chamber_walk(placement: &Placement, h: &HelixNumerics) -> Result<ChamberWalk> {
    let prof = placement_profile(placement, h)?;
    if let Some(d) = &prof.divergence {
        return Err(Error::NoConsistentWalk(format!(
            "{placement}: at i={} expected {}, knitting gives {:?}",
            d.i, d.expected, d.observed
        )));
    }
    let pairs = prof.walk.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
    Ok(ChamberWalk { placement: placement.clone(), pairs, dims: prof.dims, solutions: prof.solutions })
}

/// `dim 𝔽Λ_i^def` for a placement, via its chamber walk.
pub fn sliced_def_dim(h: &HelixNumerics, i: usize, placement: &Placement) -> Result<i64> {
    if i > h.half_period() {
        return Err(Error::IndexOutOfRange { index: i as i64, lo: 0, hi: h.half_period() as i64 });
    }
    let walk = chamber_walk(placement, h)?;
    let g = placement.affine_diagram()?;
    let (a, b) = &walk.pairs[i];
    stable_dim(&g, g.index(a)?, g.index(b)?)
}

/// Knits on the affine diagram of `t` with named vertices.
pub fn knit_named(t: crate::dynkin::DynkinType, start: &str, read: &str, kill: &[&str]) -> Result<KnitTrace> {
    let g = build_diagram(t, true)?;
    knit(&KnitProblem::new(&g, start, read, kill)?)
}
