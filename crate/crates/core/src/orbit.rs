//! The ambiguous part of the coset diagram for the orbit of `k√3`.
//!
//! Each ambiguous number is joined to three others: its partner in the
//! C-triangle (whichever of `C(α)`, `C²(α)` is ambiguous), `D(α)` and `B(α)`.
//! Partner and D edges alternate around cycles (the layers). B edges, drawn
//! bold, join the layers.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::enumerate::enumerate;
use crate::error::{Error, Result};
use crate::field::ProjectivePoint;
use crate::picard::{Generator, MobiusMap};
use crate::quadratic::{AmbiguityClass, RealQuadratic};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdgeLabel {
    /// The C-triangle partner. Exported as `"C"`.
    #[serde(rename = "C")]
    Partner,
    D,
    B,
}

impl EdgeLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeLabel::Partner => "C",
            EdgeLabel::D => "D",
            EdgeLabel::B => "B",
        }
    }
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which power of C realises a partner edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PartnerVia {
    C,
    C2,
}

impl PartnerVia {
    pub fn flip(self) -> PartnerVia {
        match self {
            PartnerVia::C => PartnerVia::C2,
            PartnerVia::C2 => PartnerVia::C,
        }
    }
}

/// The ambiguous one of `C(q)`, `C²(q)`, together with which one it was.
pub fn partner_with_via(q: &RealQuadratic) -> Result<(RealQuadratic, PartnerVia)> {
    if !q.is_ambiguous() {
        return Err(Error::NotAmbiguousInput(*q));
    }
    let c = q.act_c()?;
    let c2 = q.act_c2()?;
    match (c.classify(), c2.classify()) {
        (AmbiguityClass::Ambiguous, AmbiguityClass::TotallyNegative) => Ok((c, PartnerVia::C)),
        (AmbiguityClass::TotallyNegative, AmbiguityClass::Ambiguous) => Ok((c2, PartnerVia::C2)),
        _ => Err(Error::PropositionViolation {
            witness: *q,
            c_image: c,
            c2_image: c2,
        }),
    }
}

pub fn partner(q: &RealQuadratic) -> Result<RealQuadratic> {
    partner_with_via(q).map(|(p, _)| p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub label: EdgeLabel,
}

/// Ambiguous vertices with their three perfect matchings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmbiguousGraph {
    k: i64,
    vertices: Vec<RealQuadratic>,
    partner: Vec<usize>,
    via: Vec<PartnerVia>,
    d_mate: Vec<usize>,
    b_mate: Vec<usize>,
}

/// Vertices of `enumerate(k)` joined by partner, D and B edges.
pub fn build_graph(k: i64) -> Result<AmbiguousGraph> {
    let e = enumerate(k)?;
    AmbiguousGraph::from_vertices(k, e.members)
}

impl AmbiguousGraph {
    /// Fails with `ClosureViolation` when some image leaves `vertices`.
    pub fn from_vertices(k: i64, mut vertices: Vec<RealQuadratic>) -> Result<Self> {
        vertices.sort();
        vertices.dedup();
        let index: HashMap<RealQuadratic, usize> =
            vertices.iter().enumerate().map(|(i, q)| (*q, i)).collect();
        let lookup = |label: &'static str, v: &RealQuadratic, img: RealQuadratic| {
            index.get(&img).copied().ok_or(Error::ClosureViolation {
                label,
                vertex: *v,
                image: img,
            })
        };
        let n = vertices.len();
        let mut partner = Vec::with_capacity(n);
        let mut via = Vec::with_capacity(n);
        let mut d_mate = Vec::with_capacity(n);
        let mut b_mate = Vec::with_capacity(n);
        for v in &vertices {
            let (p, how) = partner_with_via(v)?;
            partner.push(lookup("C", v, p)?);
            via.push(how);
            d_mate.push(lookup("D", v, v.act_d()?)?);
            b_mate.push(lookup("B", v, v.act_b()?)?);
        }
        Ok(AmbiguousGraph {
            k,
            vertices,
            partner,
            via,
            d_mate,
            b_mate,
        })
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    /// Sorted by `(a, c)`.
    pub fn vertices(&self) -> &[RealQuadratic] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn index_of(&self, q: &RealQuadratic) -> Option<usize> {
        self.vertices.binary_search(q).ok()
    }

    pub fn mate(&self, i: usize, label: EdgeLabel) -> usize {
        match label {
            EdgeLabel::Partner => self.partner[i],
            EdgeLabel::D => self.d_mate[i],
            EdgeLabel::B => self.b_mate[i],
        }
    }

    /// How the partner of vertex `i` is reached from `i`.
    pub fn partner_via(&self, i: usize) -> PartnerVia {
        self.via[i]
    }

    /// Undirected edges with `from < to`, sorted.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for label in [EdgeLabel::Partner, EdgeLabel::D, EdgeLabel::B] {
            for i in 0..self.len() {
                let j = self.mate(i, label);
                // a non-involutive matching still shows up, once per direction
                if i < j || self.mate(j, label) != i {
                    out.push(Edge {
                        from: i.min(j),
                        to: i.max(j),
                        label,
                    });
                }
            }
        }
        out.sort();
        out
    }

    pub fn edges_with(&self, label: EdgeLabel) -> Vec<Edge> {
        self.edges()
            .into_iter()
            .filter(|e| e.label == label)
            .collect()
    }

    pub fn has_edge(&self, a: &RealQuadratic, b: &RealQuadratic, label: EdgeLabel) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.mate(i, label) == j,
            _ => false,
        }
    }

    fn is_perfect_matching(&self, label: EdgeLabel) -> bool {
        (0..self.len()).all(|i| {
            let j = self.mate(i, label);
            j != i && self.mate(j, label) == i
        })
    }

    /// Connected components, counting all three edge kinds.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for s in 0..self.len() {
            if seen[s] {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([s]);
            seen[s] = true;
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for label in [EdgeLabel::Partner, EdgeLabel::D, EdgeLabel::B] {
                    let w = self.mate(v, label);
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn structure(&self) -> StructureReport {
        let cycles = layer_cycles(self);
        let matchings =
            [EdgeLabel::Partner, EdgeLabel::D, EdgeLabel::B].map(|l| self.is_perfect_matching(l));
        let alternating_cycles = matchings[0]
            && matchings[1]
            && (0..self.len()).all(|i| self.partner[i] != self.d_mate[i])
            && cycles
                .iter()
                .all(|c| c.len() >= 4 && c.len() % 2 == 0 && c.is_valid())
            && cycles.iter().map(ClosedPath::len).sum::<usize>() == self.len();

        let layer_sets: Vec<BTreeSet<RealQuadratic>> =
            cycles.iter().map(ClosedPath::vertex_set).collect();
        let image_layer = |f: &dyn Fn(&RealQuadratic) -> Option<RealQuadratic>, c: &ClosedPath| {
            let img: Option<BTreeSet<_>> = c.vertices().map(f).collect();
            img.and_then(|img| layer_sets.iter().position(|s| *s == img))
        };
        let conj_permutes_layers = cycles
            .iter()
            .all(|c| image_layer(&|q| Some(q.conj()), c).is_some());
        let b_swaps_layers = cycles
            .iter()
            .enumerate()
            .all(|(i, c)| image_layer(&|q| q.act_b().ok(), c).is_some_and(|j| j != i));
        StructureReport {
            k: self.k,
            vertex_count: self.len(),
            matchings,
            alternating_cycles,
            cycle_lengths: cycles.iter().map(ClosedPath::len).collect(),
            components: self.components().len(),
            conj_permutes_layers,
            b_swaps_layers,
        }
    }

    /// Recomputes every edge through the general Möbius action on Q(i, √3).
    ///
    /// Returns the number of edge directions checked, or the first mismatch.
    pub fn verify_edges_via_mobius(&self) -> std::result::Result<usize, String> {
        let b = Generator::B.map();
        let d = Generator::D.map();
        let c = Generator::C.map();
        let c2 = c.compose(&c);
        let mut checked = 0;
        for (i, v) in self.vertices.iter().enumerate() {
            let partner_map = match self.via[i] {
                PartnerVia::C => &c,
                PartnerVia::C2 => &c2,
            };
            for (label, map) in [
                (EdgeLabel::Partner, partner_map),
                (EdgeLabel::D, &d),
                (EdgeLabel::B, &b),
            ] {
                let target = self.vertices[self.mate(i, label)];
                if !same_value(map, v, &target) {
                    return Err(format!(
                        "{label} edge {v} -> {target} is not reproduced by {map}"
                    ));
                }
                checked += 1;
            }
        }
        Ok(checked)
    }
}

/// Whether applying `m` to `from` gives the value of `to`.
pub fn same_value(m: &MobiusMap, from: &RealQuadratic, to: &RealQuadratic) -> bool {
    m.apply_finite(&from.embed()) == ProjectivePoint::Finite(to.embed())
}

/// Result of the structural checks on an [`AmbiguousGraph`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub k: i64,
    pub vertex_count: usize,
    /// Partner, D, B.
    pub matchings: [bool; 3],
    /// Partner ∪ D is 2-regular and splits into alternating cycles.
    pub alternating_cycles: bool,
    pub cycle_lengths: Vec<usize>,
    /// Components of the whole graph, B edges included.
    pub components: usize,
    pub conj_permutes_layers: bool,
    pub b_swaps_layers: bool,
}

impl StructureReport {
    /// Names of the violated invariants, in a fixed order.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (ok, label) in self.matchings.iter().zip(["C", "D", "B"]) {
            if !ok {
                out.push(format!("{label} edges do not form a perfect matching"));
            }
        }
        if !self.alternating_cycles {
            out.push("2-regularity: C/D subgraph is not a union of alternating cycles".into());
        }
        if self.components != 1 {
            out.push(format!(
                "connectivity-with-B: graph has {} components",
                self.components
            ));
        }
        if !self.conj_permutes_layers {
            out.push("layer map: conjugation does not permute the layers".into());
        }
        if !self.b_swaps_layers {
            out.push("layer map: B does not move every layer to another layer".into());
        }
        out
    }

    pub fn is_ok(&self) -> bool {
        self.violations().is_empty()
    }
}

/// A closed walk through ambiguous numbers; each step records the label of the
/// edge leaving its vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedPath {
    steps: Vec<(RealQuadratic, EdgeLabel)>,
}

impl ClosedPath {
    pub fn new(steps: Vec<(RealQuadratic, EdgeLabel)>) -> Self {
        ClosedPath { steps }
    }

    pub fn steps(&self) -> &[(RealQuadratic, EdgeLabel)] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = &RealQuadratic> + '_ {
        self.steps.iter().map(|(v, _)| v)
    }

    pub fn vertex_set(&self) -> BTreeSet<RealQuadratic> {
        self.vertices().copied().collect()
    }

    /// Each step's label, applied as a closed form, leads to the next vertex,
    /// and the last step leads back to the first.
    pub fn is_valid(&self) -> bool {
        let n = self.steps.len();
        (0..n).all(|i| {
            let (v, label) = self.steps[i];
            let next = self.steps[(i + 1) % n].0;
            let img = match label {
                EdgeLabel::Partner => partner(&v),
                EdgeLabel::D => v.act_d(),
                EdgeLabel::B => v.act_b(),
            };
            img == Ok(next)
        })
    }

    /// The same cycle read from `v`, walking its partner edge first.
    pub fn starting_at(&self, v: &RealQuadratic) -> Option<ClosedPath> {
        let n = self.steps.len();
        let pos = self.steps.iter().position(|(w, _)| w == v)?;
        if self.steps[pos].1 == EdgeLabel::Partner {
            let mut steps = self.steps.clone();
            steps.rotate_left(pos);
            return Some(ClosedPath { steps });
        }
        // reverse: vertex order flips and each outgoing label becomes the
        // label of the edge arriving from the old predecessor
        let mut steps = Vec::with_capacity(n);
        for off in 0..n {
            let i = (pos + n - off) % n;
            let prev = (i + n - 1) % n;
            steps.push((self.steps[i].0, self.steps[prev].1));
        }
        Some(ClosedPath { steps })
    }
}

impl fmt::Display for ClosedPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, label) in &self.steps {
            write!(f, "{} -{}-> ", v.render(), label)?;
        }
        if let Some((first, _)) = self.steps.first() {
            write!(f, "{}", first.render())?;
        }
        Ok(())
    }
}

/// Splits the partner ∪ D subgraph into alternating cycles.
///
/// Cycles are listed by their smallest vertex and start there with a partner step.
pub fn layer_cycles(g: &AmbiguousGraph) -> Vec<ClosedPath> {
    let mut seen = vec![false; g.len()];
    let mut out = Vec::new();
    for s in 0..g.len() {
        if seen[s] {
            continue;
        }
        let mut steps = Vec::new();
        let mut cur = s;
        let mut label = EdgeLabel::Partner;
        while !seen[cur] {
            seen[cur] = true;
            steps.push((g.vertices[cur], label));
            cur = g.mate(cur, label);
            label = match label {
                EdgeLabel::Partner => EdgeLabel::D,
                _ => EdgeLabel::Partner,
            };
        }
        out.push(ClosedPath { steps });
    }
    out
}

/// Closure of `{start}` under B, D, C, C², keeping only ambiguous images.
///
/// Visited vertices are tracked by value; stored triples keep the coefficient
/// of the start. The frontier is FIFO with images in the order B, D, C, C².
pub fn bfs_orbit_ambiguous(start: &RealQuadratic, limit: usize) -> Result<BTreeSet<RealQuadratic>> {
    if !start.is_ambiguous() {
        return Err(Error::NotAmbiguousInput(*start));
    }
    start.integral_d()?;
    let mut seen_values = HashSet::from([start.reduced()]);
    let mut found = BTreeSet::from([*start]);
    let mut queue = VecDeque::from([*start]);
    while let Some(q) = queue.pop_front() {
        for img in [q.act_b()?, q.act_d()?, q.act_c()?, q.act_c2()?] {
            if img.is_ambiguous() && seen_values.insert(img.reduced()) {
                found.insert(img);
                if found.len() > limit {
                    return Err(Error::LimitExceeded(limit));
                }
                queue.push_back(img);
            }
        }
    }
    Ok(found)
}

#[derive(Serialize, Deserialize)]
struct JsonEdge {
    from: usize,
    to: usize,
    label: EdgeLabel,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    via: Option<PartnerVia>,
}

#[derive(Serialize, Deserialize)]
struct JsonGraph {
    k: i64,
    vertices: Vec<RealQuadratic>,
    edges: Vec<JsonEdge>,
    cycles: Vec<Vec<usize>>,
}

/// JSON export: vertices in sorted order, edges and cycles by vertex index.
pub fn export_json(g: &AmbiguousGraph) -> String {
    let edges = g
        .edges()
        .into_iter()
        .map(|e| JsonEdge {
            from: e.from,
            to: e.to,
            label: e.label,
            via: (e.label == EdgeLabel::Partner).then(|| g.via[e.from]),
        })
        .collect();
    let cycles = layer_cycles(g)
        .iter()
        .map(|c| {
            c.vertices()
                .map(|v| g.index_of(v).expect("own vertex"))
                .collect()
        })
        .collect();
    let doc = JsonGraph {
        k: g.k,
        vertices: g.vertices.clone(),
        edges,
        cycles,
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("plain data serialises");
    s.push('\n');
    s
}

/// Rebuilds a graph from [`export_json`] output.
pub fn import_json(s: &str) -> Result<AmbiguousGraph> {
    let doc: JsonGraph = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    let n = doc.vertices.len();
    let mut mates = [
        vec![usize::MAX; n],
        vec![usize::MAX; n],
        vec![usize::MAX; n],
    ];
    let mut via = vec![PartnerVia::C; n];
    for e in &doc.edges {
        if e.from >= n || e.to >= n {
            return Err(Error::Parse(format!(
                "edge {}-{} out of range",
                e.from, e.to
            )));
        }
        let m = &mut mates[e.label as usize];
        m[e.from] = e.to;
        m[e.to] = e.from;
        if e.label == EdgeLabel::Partner {
            let v = e
                .via
                .ok_or_else(|| Error::Parse("partner edge without via".into()))?;
            via[e.from] = v;
            via[e.to] = v.flip();
        }
    }
    if mates.iter().flatten().any(|&j| j == usize::MAX) {
        return Err(Error::Parse("some vertex is missing an edge".into()));
    }
    let [partner, d_mate, b_mate] = mates;
    Ok(AmbiguousGraph {
        k: doc.k,
        vertices: doc.vertices,
        partner,
        via,
        d_mate,
        b_mate,
    })
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Undirected DOT graph; B edges are bold.
pub fn export_dot(g: &AmbiguousGraph) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "graph {} {{\n",
        quote(&format!("ambiguous_k{}", g.k))
    ));
    for v in &g.vertices {
        out.push_str(&format!(
            "  {} [label={}];\n",
            quote(&v.node_id()),
            quote(&v.render())
        ));
    }
    for e in g.edges() {
        let style = if e.label == EdgeLabel::B {
            ", style=bold"
        } else {
            ""
        };
        out.push_str(&format!(
            "  {} -- {} [label={}{}];\n",
            quote(&g.vertices[e.from].node_id()),
            quote(&g.vertices[e.to].node_id()),
            quote(e.label.as_str()),
            style
        ));
    }
    out.push_str("}\n");
    out
}
