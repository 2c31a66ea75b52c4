//! Directed colored multigraphs, edge-induced subgraphs, the ρ-image and
//! gauge normalization.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::group::{rank_of_span, GroupElem, GroupSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    pub tail: VertexId,
    pub head: VertexId,
    pub color: GroupElem,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }

    /// The endpoint opposite `v` (for a loop, `v` itself).
    pub fn other(&self, v: VertexId) -> VertexId {
        if self.tail == v {
            self.head
        } else {
            self.tail
        }
    }

    /// Color seen when traversing the edge from `from` to the other end.
    pub fn color_from(&self, from: VertexId) -> GroupElem {
        if self.tail == from {
            self.color.clone()
        } else {
            self.color.neg()
        }
    }

    /// Orientation-free key: reversing an edge and negating its color gives
    /// the same key.
    pub fn normalized_key(&self) -> (VertexId, VertexId, GroupElem) {
        if self.tail < self.head {
            (self.tail, self.head, self.color.clone())
        } else if self.tail > self.head {
            (self.head, self.tail, self.color.neg())
        } else {
            let neg = self.color.neg();
            (self.tail, self.head, neg.min(self.color.clone()))
        }
    }
}

/// A finite directed multigraph with a group element on every edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredGraph {
    spec: GroupSpec,
    vertices: Vec<VertexId>,
    edges: Vec<Edge>,
    next_edge_id: u32,
}

impl ColoredGraph {
    pub fn new(spec: GroupSpec) -> Self {
        ColoredGraph { spec, vertices: Vec::new(), edges: Vec::new(), next_edge_id: 0 }
    }

    /// Graph on vertices `0..n` with no edges.
    pub fn with_vertices(spec: GroupSpec, n: u32) -> Self {
        let mut g = Self::new(spec);
        g.vertices = (0..n).map(VertexId).collect();
        g
    }

    pub fn spec(&self) -> GroupSpec {
        self.spec
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// Dense index of `v` into [`Self::vertices`].
    pub fn vertex_index(&self, v: VertexId) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.edge_position(id).map(|i| &self.edges[i])
    }

    fn edge_position(&self, id: EdgeId) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    pub fn next_vertex_id(&self) -> VertexId {
        self.vertices.last().map_or(VertexId(0), |v| VertexId(v.0 + 1))
    }

    pub fn add_vertex(&mut self, v: VertexId) -> Result<()> {
        match self.vertices.binary_search(&v) {
            Ok(_) => Err(Error::Usage(format!("vertex {v} already exists"))),
            Err(pos) => {
                self.vertices.insert(pos, v);
                Ok(())
            }
        }
    }

    pub fn add_edge(&mut self, tail: VertexId, head: VertexId, color: GroupElem) -> Result<EdgeId> {
        for v in [tail, head] {
            if !self.has_vertex(v) {
                return Err(Error::Usage(format!("edge endpoint {v} is not a vertex")));
            }
        }
        if color.spec() != self.spec {
            return Err(Error::SpecMismatch { left: self.spec, right: color.spec() });
        }
        let id = EdgeId(self.next_edge_id);
        self.next_edge_id += 1;
        self.edges.push(Edge { id, tail, head, color });
        Ok(id)
    }

    pub fn remove_edge(&mut self, id: EdgeId) -> Result<Edge> {
        let pos = self.edge_position(id).ok_or_else(|| Error::Usage(format!("no edge with id {id}")))?;
        Ok(self.edges.remove(pos))
    }

    /// Removes `v` and every edge touching it, returning those edges.
    pub fn remove_vertex(&mut self, v: VertexId) -> Result<Vec<Edge>> {
        let pos = self.vertices.binary_search(&v).map_err(|_| Error::Usage(format!("no vertex {v}")))?;
        self.vertices.remove(pos);
        let (gone, kept) = self.edges.drain(..).partition(|e| e.tail == v || e.head == v);
        self.edges = kept;
        Ok(gone)
    }

    pub fn incident_edges(&self, v: VertexId) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(move |e| e.tail == v || e.head == v)
    }

    /// Degree with every self-loop counted twice.
    pub fn degree(&self, v: VertexId) -> usize {
        self.incident_edges(v).map(|e| if e.is_loop() { 2 } else { 1 }).sum()
    }

    pub fn whole(&self) -> Subgraph<'_> {
        Subgraph { graph: self, edges: (0..self.edges.len()).collect() }
    }

    pub fn subgraph(&self, ids: &[EdgeId]) -> Result<Subgraph<'_>> {
        let mut edges = ids
            .iter()
            .map(|&id| self.edge_position(id).ok_or_else(|| Error::Usage(format!("no edge with id {id}"))))
            .collect::<Result<Vec<_>>>()?;
        edges.sort_unstable();
        edges.dedup();
        Ok(Subgraph { graph: self, edges })
    }

    /// Edge multiset equality after orienting every edge canonically.
    pub fn same_up_to_orientation(&self, other: &ColoredGraph) -> bool {
        self.spec == other.spec && self.vertices == other.vertices && self.edge_keys() == other.edge_keys()
    }

    fn edge_keys(&self) -> Vec<(VertexId, VertexId, GroupElem)> {
        let mut keys: Vec<_> = self.edges.iter().map(Edge::normalized_key).collect();
        keys.sort();
        keys
    }

    /// Parses the one-graph text format.
    ///
    /// ```text
    /// group Z/5
    /// vertices 3
    /// edge 0 1 2
    /// ```
    ///
    /// `vertices <n> ids <v1> ... <vn>` names vertices explicitly.
    pub fn from_text(text: &str) -> Result<Self> {
        let lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        parse_graph_lines(lines, 0)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("group {}\n", self.spec);
        let contiguous = self.vertices.iter().enumerate().all(|(i, v)| v.0 as usize == i);
        out.push_str(&format!("vertices {}", self.vertices.len()));
        if !contiguous {
            out.push_str(" ids");
            for v in &self.vertices {
                out.push_str(&format!(" {v}"));
            }
        }
        out.push('\n');
        for e in &self.edges {
            out.push_str(&format!("edge {} {} {}\n", e.tail, e.head, e.color));
        }
        out
    }
}

/// Strips a `#` comment and surrounding whitespace.
pub(crate) fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

/// Parses a graph from numbered lines; `offset` only affects messages.
pub(crate) fn parse_graph_lines<'a>(
    lines: impl Iterator<Item = (usize, &'a str)>,
    offset: usize,
) -> Result<ColoredGraph> {
    let perr = |line: usize, message: String| Error::Parse { line: line + offset, message };
    let mut graph: Option<ColoredGraph> = None;
    let mut spec: Option<GroupSpec> = None;
    for (no, raw) in lines {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        let keyword = words.next().unwrap_or_default();
        match keyword {
            "group" => {
                if spec.is_some() {
                    return Err(perr(no, "duplicate group line".into()));
                }
                let rest: Vec<&str> = words.collect();
                spec = Some(rest.join("").parse().map_err(|e: Error| perr(no, e.to_string()))?);
            }
            "vertices" => {
                let spec = spec.ok_or_else(|| perr(no, "'vertices' before 'group'".into()))?;
                if graph.is_some() {
                    return Err(perr(no, "duplicate vertices line".into()));
                }
                let n: u32 = words
                    .next()
                    .and_then(|w| w.parse().ok())
                    .ok_or_else(|| perr(no, "expected vertex count".into()))?;
                let mut g = ColoredGraph::new(spec);
                match words.next() {
                    None => g.vertices = (0..n).map(VertexId).collect(),
                    Some("ids") => {
                        for w in words {
                            let v = w.parse().map_err(|_| perr(no, format!("bad vertex id '{w}'")))?;
                            g.add_vertex(VertexId(v)).map_err(|e| perr(no, e.to_string()))?;
                        }
                        if g.vertices.len() != n as usize {
                            return Err(perr(no, format!("expected {n} vertex ids")));
                        }
                    }
                    Some(w) => return Err(perr(no, format!("unexpected '{w}'"))),
                }
                graph = Some(g);
            }
            "edge" => {
                let g = graph.as_mut().ok_or_else(|| perr(no, "'edge' before 'vertices'".into()))?;
                let parts: Vec<&str> = words.collect();
                if parts.len() < 3 {
                    return Err(perr(no, "expected 'edge <tail> <head> <color>'".into()));
                }
                let endpoint = |w: &str| -> Result<VertexId> {
                    w.parse().map(VertexId).map_err(|_| perr(no, format!("bad vertex '{w}'")))
                };
                let tail = endpoint(parts[0])?;
                let head = endpoint(parts[1])?;
                let color = GroupElem::parse(g.spec, &parts[2..].join("")).map_err(|e| perr(no, e.to_string()))?;
                g.add_edge(tail, head, color).map_err(|e| perr(no, e.to_string()))?;
            }
            other => return Err(perr(no, format!("unknown keyword '{other}'"))),
        }
    }
    graph.ok_or_else(|| perr(0, "missing 'group' or 'vertices' line".into()))
}

/// An edge-induced subgraph: a set of edges of a parent graph together with
/// exactly their endpoints.
#[derive(Clone, Debug)]
pub struct Subgraph<'a> {
    graph: &'a ColoredGraph,
    /// Sorted positions into `graph.edges`.
    edges: Vec<usize>,
}

/// The tuple entering the colored sparsity counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubgraphCounts {
    pub n_prime: usize,
    pub m_prime: usize,
    pub r: usize,
    pub c0: usize,
    pub c1: usize,
    pub c2: usize,
}

impl SubgraphCounts {
    pub fn components(&self) -> usize {
        self.c0 + self.c1 + self.c2
    }
}

impl<'a> Subgraph<'a> {
    pub fn graph(&self) -> &'a ColoredGraph {
        self.graph
    }

    pub fn edges(&self) -> impl Iterator<Item = &'a Edge> + '_ {
        self.edges.iter().map(|&i| &self.graph.edges[i])
    }

    pub fn edge_ids(&self) -> Vec<EdgeId> {
        self.edges().map(|e| e.id).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Endpoints of the selected edges, sorted.
    pub fn vertices(&self) -> Vec<VertexId> {
        let mut vs: Vec<VertexId> = self.edges().flat_map(|e| [e.tail, e.head]).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Connected components (direction ignored), ordered by first edge.
    pub fn components(&self) -> Vec<Subgraph<'a>> {
        let mut dsu = Dsu::new(self.graph.vertex_count());
        for e in self.edges() {
            dsu.union(self.index(e.tail), self.index(e.head));
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut order: Vec<usize> = Vec::new();
        for &i in &self.edges {
            let root = dsu.find(self.index(self.graph.edges[i].tail));
            let bucket = groups.entry(root).or_default();
            if bucket.is_empty() {
                order.push(root);
            }
            bucket.push(i);
        }
        order
            .into_iter()
            .map(|root| Subgraph { graph: self.graph, edges: groups.remove(&root).unwrap_or_default() })
            .collect()
    }

    /// Maximal cycle-free edge set, chosen greedily in edge order. Loops are
    /// never included.
    pub fn spanning_forest(&self) -> Vec<EdgeId> {
        self.forest_positions().into_iter().map(|i| self.graph.edges[i].id).collect()
    }

    fn forest_positions(&self) -> Vec<usize> {
        let mut dsu = Dsu::new(self.graph.vertex_count());
        self.edges
            .iter()
            .copied()
            .filter(|&i| {
                let e = &self.graph.edges[i];
                dsu.union(self.index(e.tail), self.index(e.head))
            })
            .collect()
    }

    /// Potentials on the subgraph's vertices that make every forest edge
    /// satisfy `pot(head) = pot(tail) + color`. Roots get zero.
    fn forest_potentials(&self, forest: &[usize]) -> Vec<Option<GroupElem>> {
        let g = self.graph;
        let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); g.vertex_count()];
        for &i in forest {
            let e = &g.edges[i];
            adjacency[self.index(e.tail)].push(i);
            adjacency[self.index(e.head)].push(i);
        }
        let mut pot: Vec<Option<GroupElem>> = vec![None; g.vertex_count()];
        for v in self.vertices() {
            let root = self.index(v);
            if pot[root].is_some() {
                continue;
            }
            pot[root] = Some(GroupElem::zero(g.spec));
            let mut queue = VecDeque::from([v]);
            while let Some(u) = queue.pop_front() {
                let pu = pot[self.index(u)].clone().expect("visited vertex has a potential");
                for &i in &adjacency[self.index(u)] {
                    let e = &g.edges[i];
                    let w = e.other(u);
                    let slot = &mut pot[self.index(w)];
                    if slot.is_none() {
                        *slot = Some(pu.plus(&e.color_from(u)));
                        queue.push_back(w);
                    }
                }
            }
        }
        pot
    }

    /// ρ-values of the fundamental cycles of [`Self::spanning_forest`], one per
    /// non-forest edge in edge order. Each cycle is traversed along its
    /// non-forest edge.
    pub fn rho_image_basis(&self) -> Vec<GroupElem> {
        let forest = self.forest_positions();
        let pot = self.forest_potentials(&forest);
        let mut in_forest = vec![false; self.graph.edges.len()];
        for &i in &forest {
            in_forest[i] = true;
        }
        self.edges
            .iter()
            .filter(|&&i| !in_forest[i])
            .map(|&i| {
                let e = &self.graph.edges[i];
                let pt = pot[self.index(e.tail)].as_ref().expect("endpoint has potential");
                let ph = pot[self.index(e.head)].as_ref().expect("endpoint has potential");
                e.color.plus(pt).minus(ph)
            })
            .collect()
    }

    pub fn rho_rank(&self) -> Result<usize> {
        rank_of_span(self.graph.spec, &self.rho_image_basis())
    }

    /// `(n', m', r, c'0, c'1, c'2)`; `r` is the rank of the whole subgraph's
    /// image, the `c'i` count components by their own rank.
    pub fn counts(&self) -> Result<SubgraphCounts> {
        let mut counts = SubgraphCounts {
            n_prime: self.vertices().len(),
            m_prime: self.edge_count(),
            r: self.rho_rank()?,
            c0: 0,
            c1: 0,
            c2: 0,
        };
        for comp in self.components() {
            match comp.rho_rank()? {
                0 => counts.c0 += 1,
                1 => counts.c1 += 1,
                _ => counts.c2 += 1,
            }
        }
        Ok(counts)
    }

    fn index(&self, v: VertexId) -> usize {
        self.graph.vertex_index(v).expect("edge endpoints are vertices")
    }
}

/// Recolors by vertex potentials so that every edge of the whole graph's
/// spanning forest has color zero. Cycle values are unchanged.
pub fn gauge_normalize(g: &ColoredGraph) -> ColoredGraph {
    let whole = g.whole();
    let forest = whole.forest_positions();
    let pot = whole.forest_potentials(&forest);
    let zero = GroupElem::zero(g.spec);
    let potential = |v: VertexId| pot[g.vertex_index(v).expect("vertex")].clone().unwrap_or_else(|| zero.clone());
    let mut out = g.clone();
    for e in &mut out.edges {
        e.color = e.color.plus(&potential(e.tail)).minus(&potential(e.head));
    }
    out
}

/// ρ-value of a closed walk given as a sequence of edges, starting at
/// `start` and following each edge from the current vertex.
pub fn walk_value(g: &ColoredGraph, start: VertexId, walk: &[EdgeId]) -> Result<GroupElem> {
    let mut at = start;
    let mut total = GroupElem::zero(g.spec);
    for &id in walk {
        let e = g.edge(id).ok_or_else(|| Error::Usage(format!("no edge with id {id}")))?;
        if e.tail != at && e.head != at {
            return Err(Error::Usage(format!("edge {id} does not continue the walk at {at}")));
        }
        total = total.plus(&e.color_from(at));
        at = e.other(at);
    }
    Ok(total)
}

/// Disjoint-set union with path halving.
#[derive(Clone, Debug)]
pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}
