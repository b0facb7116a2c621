//! Finite and affine ADE diagrams, highest-root labels and length-ℓ
//! placements.
//!
//! Vertices use Bourbaki numbering and are named `a1..an`; the extending
//! vertex of an affine diagram is `a0`. Ids are therefore stable across
//! runs and serialize deterministically.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default upper bound on `n` when enumerating the `A` and `D` families.
pub const DEFAULT_FAMILY_BOUND: u32 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DynkinType {
    A(u32),
    D(u32),
    E6,
    E7,
    E8,
}

impl DynkinType {
    pub fn validate(self) -> Result<Self> {
        match self {
            DynkinType::A(n) if n < 1 => Err(Error::InvalidType(format!("A({n}) needs n >= 1"))),
            DynkinType::D(n) if n < 4 => Err(Error::InvalidType(format!("D({n}) needs n >= 4"))),
            t => Ok(t),
        }
    }

    pub fn rank(self) -> usize {
        match self {
            DynkinType::A(n) | DynkinType::D(n) => n as usize,
            DynkinType::E6 => 6,
            DynkinType::E7 => 7,
            DynkinType::E8 => 8,
        }
    }

    pub fn family(self) -> &'static str {
        match self {
            DynkinType::A(_) => "A",
            DynkinType::D(_) => "D",
            _ => "E",
        }
    }

    /// Finite edges in Bourbaki numbering (1-based).
    fn finite_edges(self) -> Vec<(usize, usize)> {
        match self {
            DynkinType::A(n) => (1..n as usize).map(|i| (i, i + 1)).collect(),
            DynkinType::D(n) => {
                let n = n as usize;
                let mut e: Vec<_> = (1..n - 1).map(|i| (i, i + 1)).collect();
                e.push((n - 2, n));
                e
            }
            t => {
                let mut e = vec![(1, 3), (3, 4), (4, 5), (2, 4)];
                e.extend((5..t.rank()).map(|i| (i, i + 1)));
                e
            }
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A({n})"),
            DynkinType::D(n) => write!(f, "D({n})"),
            DynkinType::E6 => write!(f, "E6"),
            DynkinType::E7 => write!(f, "E7"),
            DynkinType::E8 => write!(f, "E8"),
        }
    }
}

impl FromStr for DynkinType {
    type Err = Error;

    /// Accepts `E6`, `A3`, `A(3)`, `d4`, ...
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidType(s.to_string());
        let mut chars = s.chars();
        let fam = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
        let rest: String = chars.filter(|c| *c != '(' && *c != ')').collect();
        let n: u32 = rest.parse().map_err(|_| bad())?;
        let t = match (fam, n) {
            ('A', n) => DynkinType::A(n),
            ('D', n) => DynkinType::D(n),
            ('E', 6) => DynkinType::E6,
            ('E', 7) => DynkinType::E7,
            ('E', 8) => DynkinType::E8,
            _ => return Err(bad()),
        };
        t.validate()
    }
}

/// An ADE graph with highest-root labels and optional distinguished
/// vertices. Vertices are addressed by index; `id(i)` gives the stable name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedDiagram {
    ty: DynkinType,
    affine: bool,
    ids: Vec<String>,
    adj: Vec<Vec<(usize, u32)>>,
    labels: Vec<u32>,
    extending: Option<usize>,
    marked: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct EdgeJson {
    pub a: String,
    pub b: String,
    pub multiplicity: u32,
}

/// Serialized form of a diagram.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct DiagramJson {
    pub family: String,
    pub n: u32,
    pub affine: bool,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeJson>,
    pub labels: BTreeMap<String, u32>,
    pub extending: Option<String>,
    pub marked: Option<String>,
}

impl MarkedDiagram {
    pub fn ty(&self) -> DynkinType {
        self.ty
    }

    pub fn is_affine(&self) -> bool {
        self.affine
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn label(&self, v: usize) -> u32 {
        self.labels[v]
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn neighbours(&self, v: usize) -> &[(usize, u32)] {
        &self.adj[v]
    }

    pub fn extending(&self) -> Option<usize> {
        self.extending
    }

    pub fn marked(&self) -> Option<usize> {
        self.marked
    }

    /// Unordered edges `(a, b, multiplicity)` with `a < b`.
    pub fn edges(&self) -> Vec<(usize, usize, u32)> {
        let mut out = Vec::new();
        for (a, nb) in self.adj.iter().enumerate() {
            for &(b, m) in nb {
                if a < b {
                    out.push((a, b, m));
                }
            }
        }
        out
    }

    /// The unique trivalent vertex, if any.
    pub fn branch(&self) -> Option<usize> {
        let finite: Vec<usize> = (0..self.len()).filter(|&v| Some(v) != self.extending).collect();
        let deg = |v: usize| self.adj[v].iter().filter(|(w, _)| Some(*w) != self.extending).count();
        let mut hits = finite.into_iter().filter(|&v| deg(v) == 3);
        match (hits.next(), hits.next()) {
            (Some(v), None) => Some(v),
            _ => None,
        }
    }

    /// Resolves a vertex id or one of the aliases `extending`, `branch`,
    /// `marked`.
    pub fn index(&self, name: &str) -> Result<usize> {
        let unknown = || Error::UnknownVertex(name.to_string());
        match name {
            "extending" => self.extending.ok_or_else(unknown),
            "branch" => self.branch().ok_or_else(unknown),
            "marked" => self.marked.ok_or_else(unknown),
            _ => self.ids.iter().position(|s| s == name).ok_or_else(unknown),
        }
    }

    pub fn with_marked(mut self, name: &str) -> Result<Self> {
        self.marked = Some(self.index(name)?);
        Ok(self)
    }

    /// `2·label(v) = Σ multiplicity·label(w)` at every vertex.
    pub fn kernel_identity_holds(&self) -> bool {
        (0..self.len()).all(|v| {
            let s: u32 = self.adj[v].iter().map(|&(w, m)| m * self.labels[w]).sum();
            2 * self.labels[v] == s
        })
    }

    pub fn to_json(&self) -> DiagramJson {
        let n = match self.ty {
            DynkinType::A(n) | DynkinType::D(n) => n,
            t => t.rank() as u32,
        };
        DiagramJson {
            family: self.ty.family().to_string(),
            n,
            affine: self.affine,
            vertices: self.ids.clone(),
            edges: self
                .edges()
                .into_iter()
                .map(|(a, b, m)| EdgeJson { a: self.ids[a].clone(), b: self.ids[b].clone(), multiplicity: m })
                .collect(),
            labels: self.ids.iter().cloned().zip(self.labels.iter().copied()).collect(),
            extending: self.extending.map(|v| self.ids[v].clone()),
            marked: self.marked.map(|v| self.ids[v].clone()),
        }
    }

    /// The finite part: all vertices except the extending one.
    fn finite_part(&self) -> (Vec<usize>, Vec<(usize, usize)>) {
        let keep: Vec<usize> = (0..self.len()).filter(|&v| Some(v) != self.extending).collect();
        let pos = |v: usize| keep.iter().position(|&k| k == v);
        let mut edges = Vec::new();
        for (a, b, _) in self.edges() {
            if let (Some(x), Some(y)) = (pos(a), pos(b)) {
                edges.push((x, y));
            }
        }
        (keep, edges)
    }
}

/// Cartan matrix of a simply-laced graph on `r` vertices (0-based edges).
fn cartan(r: usize, edges: &[(usize, usize)]) -> Vec<Vec<i64>> {
    let mut c = vec![vec![0i64; r]; r];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(a, b) in edges {
        c[a][b] -= 1;
        c[b][a] -= 1;
    }
    c
}

/// Positive roots of a simply-laced finite root system, by saturation:
/// `β + α_i` is a root whenever `(β, α_i) = −1`.
pub fn positive_roots(r: usize, edges: &[(usize, usize)]) -> Vec<Vec<i64>> {
    let c = cartan(r, edges);
    let simple = |i: usize| (0..r).map(|j| i64::from(i == j)).collect::<Vec<_>>();
    let mut seen: BTreeSet<Vec<i64>> = (0..r).map(simple).collect();
    let mut frontier: Vec<Vec<i64>> = seen.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for b in &frontier {
            for i in 0..r {
                let ip: i64 = (0..r).map(|j| b[j] * c[j][i]).sum();
                if ip == -1 {
                    let mut nb = b.clone();
                    nb[i] += 1;
                    if seen.insert(nb.clone()) {
                        next.push(nb);
                    }
                }
            }
        }
        frontier = next;
    }
    seen.into_iter().collect()
}

fn max_root(r: usize, edges: &[(usize, usize)]) -> Vec<u32> {
    let roots = positive_roots(r, edges);
    (0..r).map(|i| roots.iter().map(|b| b[i]).max().unwrap_or(0) as u32).collect()
}

/// Builds the standard finite or affine diagram of type `t`.
pub fn build_diagram(t: DynkinType, affine: bool) -> Result<MarkedDiagram> {
    let t = t.validate()?;
    let r = t.rank();
    let edges0: Vec<(usize, usize)> = t.finite_edges().into_iter().map(|(a, b)| (a - 1, b - 1)).collect();
    let theta = max_root(r, &edges0);
    let offset = usize::from(affine);
    let size = r + offset;
    let mut adj = vec![Vec::new(); size];
    for &(a, b) in &edges0 {
        adj[a + offset].push((b + offset, 1));
        adj[b + offset].push((a + offset, 1));
    }
    let mut labels: Vec<u32> = Vec::with_capacity(size);
    let mut ids: Vec<String> = Vec::with_capacity(size);
    if affine {
        // a0 attaches to a_j with multiplicity (Cθ)_j.
        let c = cartan(r, &edges0);
        for j in 0..r {
            let m: i64 = (0..r).map(|i| c[j][i] * i64::from(theta[i])).sum();
            if m > 0 {
                adj[0].push((j + 1, m as u32));
                adj[j + 1].push((0, m as u32));
            }
        }
        labels.push(1);
        ids.push("a0".to_string());
    }
    labels.extend(theta.iter().copied());
    ids.extend((1..=r).map(|i| format!("a{i}")));
    let d = MarkedDiagram { ty: t, affine, ids, adj, labels, extending: affine.then_some(0), marked: None };
    if affine && !d.kernel_identity_holds() {
        return Err(Error::Invariant(format!("affine {t}: labels not in kernel of Cartan matrix")));
    }
    Ok(d)
}

/// Highest-root labels, recomputed from the graph by root saturation.
/// For affine input the extending vertex receives label 1.
pub fn highest_root_labels(d: &MarkedDiagram) -> Vec<(String, u32)> {
    let (keep, edges) = d.finite_part();
    let theta = max_root(keep.len(), &edges);
    (0..d.len())
        .map(|v| {
            let l = keep.iter().position(|&k| k == v).map_or(1, |p| theta[p]);
            (d.id(v).to_string(), l)
        })
        .collect()
}

/// A (finite diagram, vertex) pair whose highest-root label is ℓ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Placement {
    pub ty: DynkinType,
    pub vertex: String,
}

impl fmt::Display for Placement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.ty, self.vertex)
    }
}

impl Placement {
    pub fn new(ty: DynkinType, vertex: &str) -> Self {
        Placement { ty, vertex: vertex.to_string() }
    }

    /// The affine diagram with this placement's vertex marked.
    pub fn affine_diagram(&self) -> Result<MarkedDiagram> {
        build_diagram(self.ty, true)?.with_marked(&self.vertex)
    }

    /// Whether this is the placement realised by a smooth flop of its
    /// length, the one the deformation table is stated for.
    pub fn is_smooth_model(&self) -> bool {
        (1..=6).any(|l| smooth_placement(l).as_ref() == Ok(self))
    }
}

/// The placement of a smooth length-ℓ flop: the general elephant is
/// A1, D4, E6, E7, E8, E8 and the curve sits at the vertex below.
pub fn smooth_placement(ell: u8) -> Result<Placement> {
    let (t, v) = match ell {
        1 => (DynkinType::A(1), "a1"),
        2 => (DynkinType::D(4), "a2"),
        3 => (DynkinType::E6, "a4"),
        4 => (DynkinType::E7, "a4"),
        5 => (DynkinType::E8, "a5"),
        6 => (DynkinType::E8, "a4"),
        _ => return Err(Error::LengthOutOfRange(i64::from(ell))),
    };
    Ok(Placement::new(t, v))
}

/// `A(1..=bound)`, `D(4..=bound)`, `E6`, `E7`, `E8`.
pub fn standard_types(bound: u32) -> Vec<DynkinType> {
    let mut out: Vec<DynkinType> = (1..=bound).map(DynkinType::A).collect();
    out.extend((4..=bound).map(DynkinType::D));
    out.extend([DynkinType::E6, DynkinType::E7, DynkinType::E8]);
    out
}

/// Canonical string of the labelled tree rooted at `v` (AHU encoding).
fn rooted_form(d: &MarkedDiagram, v: usize, parent: Option<usize>) -> String {
    let mut kids: Vec<String> =
        d.neighbours(v).iter().filter(|(w, _)| Some(*w) != parent).map(|&(w, _)| rooted_form(d, w, Some(v))).collect();
    kids.sort();
    format!("({}{})", d.label(v), kids.concat())
}

/// All placements of label ℓ over `types`, optionally deduplicated up to
/// diagram automorphism. Output order: `types` order, then vertex index.
pub fn vertices_with_label(ell: u32, types: &[DynkinType], dedup: bool) -> Result<Vec<Placement>> {
    let mut out = Vec::new();
    for &t in types {
        let d = build_diagram(t, false)?;
        let mut seen = BTreeSet::new();
        for v in 0..d.len() {
            if d.label(v) != ell {
                continue;
            }
            if dedup && !seen.insert(rooted_form(&d, v, None)) {
                continue;
            }
            out.push(Placement::new(t, d.id(v)));
        }
    }
    Ok(out)
}
