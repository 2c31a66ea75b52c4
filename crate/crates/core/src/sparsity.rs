//! Brute-force recognizers for the four colored sparsity counts.
//!
//! Every count bounds `m'` by a sum of per-component terms plus a term that
//! depends on the rank of the whole subgraph:
//!
//! | family        | rank-0 component | rank ≥ 1 component | global   |
//! |---------------|------------------|--------------------|----------|
//! | Ross          | 2n − 3           | 2n − 2             | 0        |
//! | cone-Laman    | 2n − 3           | 2n − 1             | 0        |
//! | cylinder      | 2n − 3           | 2n − 2             | r        |
//! | colored-Laman | 2n − 3           | 2n − 2             | max(2r−1, 0) |
//!
//! All connected edge subsets are enumerated once each; for the two families
//! with a global term, vertex-disjoint families of positive-excess components
//! are combined afterwards.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, EdgeId, SubgraphCounts};
use crate::group::{is_prime, GroupSpec};
use crate::pebble::UncoloredMultigraph;

pub const DEFAULT_BUDGET: usize = 24;

/// Colors beyond this magnitude are rejected by the enumerator so that its
/// fixed-width arithmetic cannot overflow.
const MAX_FAST_COORD: i64 = 1 << 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Ross,
    ConeLaman,
    CylinderLaman,
    ColoredLaman,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Ross => "ross",
            Family::ConeLaman => "cone",
            Family::CylinderLaman => "cylinder",
            Family::ColoredLaman => "colored-laman",
        }
    }

    pub fn accepts(&self, spec: GroupSpec) -> bool {
        matches!(
            (self, spec),
            (Family::Ross, GroupSpec::FreeRank2 | GroupSpec::CyclicPQ(..))
                | (Family::ConeLaman, GroupSpec::Cyclic(_))
                | (Family::CylinderLaman, GroupSpec::FreeRank1)
                | (Family::ColoredLaman, GroupSpec::FreeRank2)
        )
    }

    fn check_spec(&self, spec: GroupSpec) -> Result<()> {
        if !self.accepts(spec) {
            return Err(Error::Usage(format!("family {} does not take {spec} colors", self.name())));
        }
        Ok(())
    }

    fn component_term(&self, n: usize, rank: usize) -> i64 {
        let n = 2 * n as i64;
        match (self, rank) {
            (_, 0) => n - 3,
            (Family::ConeLaman, _) => n - 1,
            _ => n - 2,
        }
    }

    fn global_term(&self, rank: usize) -> i64 {
        match self {
            Family::Ross | Family::ConeLaman => 0,
            Family::CylinderLaman => rank as i64,
            Family::ColoredLaman => (2 * rank as i64 - 1).max(0),
        }
    }

    /// Right-hand side of the family's count for a subgraph.
    pub fn bound(&self, c: &SubgraphCounts) -> i64 {
        let per_component = match self {
            Family::ConeLaman => 1,
            _ => 2,
        };
        2 * c.n_prime as i64 - 3 * c.c0 as i64 - per_component * (c.c1 + c.c2) as i64 + self.global_term(c.r)
    }

    pub fn violates(&self, c: &SubgraphCounts) -> bool {
        c.m_prime as i64 > self.bound(c)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ross" => Ok(Family::Ross),
            "cone" | "cone-laman" => Ok(Family::ConeLaman),
            "cylinder" | "cylinder-laman" => Ok(Family::CylinderLaman),
            "colored-laman" | "colored" => Ok(Family::ColoredLaman),
            other => Err(Error::Usage(format!("unknown family '{other}'"))),
        }
    }
}

/// Outcome of a sparsity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub sparse: bool,
    pub tight: bool,
    /// A violating subgraph from which no single edge can be dropped while
    /// still violating.
    pub witness: Option<Vec<EdgeId>>,
}

impl Verdict {
    pub fn tight() -> Self {
        Verdict { sparse: true, tight: true, witness: None }
    }
}

/// Line protocol: `SPARSE`, `TIGHT` or `VIOLATION <edge ids>`.
impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.witness, self.tight) {
            (Some(w), _) => {
                f.write_str("VIOLATION")?;
                for e in w {
                    write!(f, " {e}")?;
                }
                Ok(())
            }
            (None, true) => f.write_str("TIGHT"),
            (None, false) => f.write_str("SPARSE"),
        }
    }
}

/// Whole-graph counts, isolated vertices included as rank-0 components.
pub fn whole_graph_counts(g: &ColoredGraph) -> Result<SubgraphCounts> {
    let mut c = g.whole().counts()?;
    let isolated = g.vertex_count() - c.n_prime;
    c.n_prime += isolated;
    c.c0 += isolated;
    Ok(c)
}

pub fn check_colored_sparsity(g: &ColoredGraph, family: Family) -> Result<Verdict> {
    check_colored_sparsity_with_budget(g, family, DEFAULT_BUDGET)
}

pub fn check_colored_sparsity_with_budget(g: &ColoredGraph, family: Family, budget: usize) -> Result<Verdict> {
    family.check_spec(g.spec())?;
    if let GroupSpec::Cyclic(k) = g.spec() {
        if !is_prime(k) {
            return Err(Error::UnsupportedGroup { spec: g.spec(), what: "rank (composite modulus)" });
        }
    }
    let m = g.edge_count();
    if m > budget.min(63) {
        return Err(Error::Budget { edges: m, budget: budget.min(63) });
    }
    let enumerator = Enumerator::new(g, family)?;
    match enumerator.find_violation() {
        Some(mask) => {
            let ids: Vec<EdgeId> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| g.edges()[i].id).collect();
            Ok(Verdict { sparse: false, tight: false, witness: Some(minimize_witness(g, family, ids)?) })
        }
        None => {
            let c = whole_graph_counts(g)?;
            Ok(Verdict { sparse: true, tight: m as i64 == family.bound(&c), witness: None })
        }
    }
}

/// Drops edges one at a time while the remainder still violates.
fn minimize_witness(g: &ColoredGraph, family: Family, mut ids: Vec<EdgeId>) -> Result<Vec<EdgeId>> {
    let mut i = 0;
    while i < ids.len() {
        let mut trial = ids.clone();
        trial.remove(i);
        if !trial.is_empty() && family.violates(&g.subgraph(&trial)?.counts()?) {
            ids = trial;
        } else {
            i += 1;
        }
    }
    Ok(ids)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Arith {
    Free1,
    Free2,
    Mod1(i128),
    Mod2(i128, i128),
}

impl Arith {
    fn of(spec: GroupSpec) -> Self {
        match spec {
            GroupSpec::FreeRank1 => Arith::Free1,
            GroupSpec::FreeRank2 => Arith::Free2,
            GroupSpec::Cyclic(k) => Arith::Mod1(k as i128),
            GroupSpec::CyclicPQ(p, q) => Arith::Mod2(p as i128, q as i128),
        }
    }

    fn reduce(&self, v: [i128; 2]) -> [i128; 2] {
        match *self {
            Arith::Free1 | Arith::Free2 => v,
            Arith::Mod1(k) => [v[0].rem_euclid(k), 0],
            Arith::Mod2(p, q) => [v[0].rem_euclid(p), v[1].rem_euclid(q)],
        }
    }

    fn add(&self, a: [i128; 2], b: [i128; 2]) -> [i128; 2] {
        self.reduce([a[0] + b[0], a[1] + b[1]])
    }

    fn sub(&self, a: [i128; 2], b: [i128; 2]) -> [i128; 2] {
        self.reduce([a[0] - b[0], a[1] - b[1]])
    }
}

/// Running rank of a set of cycle values: at most two independent
/// generators (ℤ²), one nonzero representative (ℤ, ℤ/p), or component flags
/// (ℤ/p × ℤ/q).
#[derive(Clone, Copy, Debug, Default)]
struct Span {
    gens: [[i128; 2]; 2],
    len: u8,
}

impl Span {
    fn push(&mut self, arith: Arith, v: [i128; 2]) {
        if v == [0, 0] || self.len == 2 {
            return;
        }
        match arith {
            Arith::Free1 | Arith::Mod1(_) => {
                if self.len == 0 {
                    self.gens[0] = v;
                    self.len = 1;
                }
            }
            Arith::Free2 => {
                if self.len == 0 {
                    self.gens[0] = v;
                    self.len = 1;
                } else {
                    let g = self.gens[0];
                    if g[0] * v[1] - g[1] * v[0] != 0 {
                        self.gens[1] = v;
                        self.len = 2;
                    }
                }
            }
            Arith::Mod2(..) => {
                // gens[0] holds the two side flags
                for side in 0..2 {
                    if v[side] != 0 {
                        self.gens[0][side] = 1;
                    }
                }
                self.len = (self.gens[0][0] + self.gens[0][1]) as u8;
            }
        }
    }

    fn merge(&mut self, arith: Arith, other: &Span) {
        match arith {
            Arith::Mod2(..) => self.push(arith, other.gens[0]),
            _ => {
                for g in &other.gens[..other.len as usize] {
                    self.push(arith, *g);
                }
            }
        }
    }

    fn rank(&self) -> usize {
        self.len as usize
    }
}

#[derive(Clone, Copy, Debug)]
struct Candidate {
    vertices: u128,
    edges: u64,
    span: Span,
    excess: i64,
}

struct Enumerator {
    family: Family,
    arith: Arith,
    /// Endpoints as dense indices of touched vertices.
    ends: Vec<(usize, usize)>,
    colors: Vec<[i128; 2]>,
    incident: Vec<u64>,
}

struct Walk {
    potential: Vec<[i128; 2]>,
    candidates: Vec<Candidate>,
    violation: Option<u64>,
}

impl Enumerator {
    fn new(g: &ColoredGraph, family: Family) -> Result<Self> {
        let mut dense = vec![usize::MAX; g.vertex_count()];
        let mut touched = 0usize;
        let mut index = |v| {
            let i = g.vertex_index(v).expect("endpoint");
            if dense[i] == usize::MAX {
                dense[i] = touched;
                touched += 1;
            }
            dense[i]
        };
        let ends: Vec<(usize, usize)> = g.edges().iter().map(|e| (index(e.tail), index(e.head))).collect();
        let mut incident = vec![0u64; touched];
        for (i, &(u, v)) in ends.iter().enumerate() {
            incident[u] |= 1 << i;
            incident[v] |= 1 << i;
        }
        let colors = g
            .edges()
            .iter()
            .map(|e| {
                e.color
                    .to_i64_pair()
                    .filter(|c| c.iter().all(|x| x.abs() < MAX_FAST_COORD))
                    .map(|c| [c[0] as i128, c[1] as i128])
                    .ok_or_else(|| Error::Usage(format!("color {} too large for brute-force enumeration", e.color)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Enumerator { family, arith: Arith::of(g.spec()), ends, colors, incident })
    }

    fn find_violation(&self) -> Option<u64> {
        let mut walk = Walk {
            potential: vec![[0, 0]; self.incident.len()],
            candidates: Vec::new(),
            violation: None,
        };
        for first in 0..self.ends.len() {
            let above: u64 = !((1u64 << first) - 1);
            let mut span = Span::default();
            let (u, v) = self.ends[first];
            walk.potential[u] = [0, 0];
            let vertices = if u == v {
                span.push(self.arith, self.colors[first]);
                1u128 << u
            } else {
                walk.potential[v] = self.colors[first];
                (1u128 << u) | (1u128 << v)
            };
            let edges = 1u64 << first;
            if self.visit(&mut walk, vertices, edges, &span) {
                return walk.violation;
            }
            let ext = (self.incident[u] | self.incident[v]) & above & !edges;
            if self.grow(&mut walk, vertices, edges, ext, !above | edges, span) {
                return walk.violation;
            }
        }
        if matches!(self.family, Family::CylinderLaman | Family::ColoredLaman) {
            return self.combine(&walk.candidates);
        }
        None
    }

    /// Include/exclude recursion over the extension set; every connected
    /// edge set whose lowest edge is the starting edge is visited once.
    fn grow(&self, walk: &mut Walk, vertices: u128, edges: u64, ext: u64, excluded: u64, span: Span) -> bool {
        if ext == 0 {
            return false;
        }
        let f = ext.trailing_zeros() as usize;
        let bit = 1u64 << f;
        let (u, v) = self.ends[f];
        let mut with = span;
        let mut new_vertices = vertices;
        let has_u = vertices >> u & 1 == 1;
        let has_v = vertices >> v & 1 == 1;
        match (has_u, has_v) {
            (true, true) => {
                let cycle = self.arith.sub(self.arith.add(self.colors[f], walk.potential[u]), walk.potential[v]);
                with.push(self.arith, cycle);
            }
            (true, false) => {
                walk.potential[v] = self.arith.add(walk.potential[u], self.colors[f]);
                new_vertices |= 1 << v;
            }
            (false, true) => {
                walk.potential[u] = self.arith.sub(walk.potential[v], self.colors[f]);
                new_vertices |= 1 << u;
            }
            (false, false) => unreachable!("extension edges touch the current set"),
        }
        let new_edges = edges | bit;
        if self.visit(walk, new_vertices, new_edges, &with) {
            return true;
        }
        let mut new_ext = ext & !bit;
        let mut fresh = new_vertices & !vertices;
        while fresh != 0 {
            let x = fresh.trailing_zeros() as usize;
            new_ext |= self.incident[x] & !excluded & !new_edges;
            fresh &= fresh - 1;
        }
        if self.grow(walk, new_vertices, new_edges, new_ext, excluded, with) {
            return true;
        }
        self.grow(walk, vertices, edges, ext & !bit, excluded | bit, span)
    }

    /// Records a violation or a candidate for combination; returns true to
    /// stop the search.
    fn visit(&self, walk: &mut Walk, vertices: u128, edges: u64, span: &Span) -> bool {
        let n = vertices.count_ones() as usize;
        let m = edges.count_ones() as i64;
        let rank = span.rank();
        let excess = m - self.family.component_term(n, rank);
        if excess > self.family.global_term(rank) {
            walk.violation = Some(edges);
            return true;
        }
        if rank > 0 && excess > 0 && self.family.global_term(1) > 0 {
            walk.candidates.push(Candidate { vertices, edges, span: *span, excess });
        }
        false
    }

    /// Looks for vertex-disjoint candidates whose summed excess beats the
    /// global term of their union.
    fn combine(&self, candidates: &[Candidate]) -> Option<u64> {
        fn dfs(
            en: &Enumerator,
            cands: &[Candidate],
            start: usize,
            used: u128,
            edges: u64,
            span: Span,
            excess: i64,
            depth: usize,
        ) -> Option<u64> {
            if depth >= 2 && excess > en.family.global_term(span.rank()) {
                return Some(edges);
            }
            for (i, c) in cands.iter().enumerate().skip(start) {
                if c.vertices & used != 0 {
                    continue;
                }
                let mut s = span;
                s.merge(en.arith, &c.span);
                let hit = dfs(en, cands, i + 1, used | c.vertices, edges | c.edges, s, excess + c.excess, depth + 1);
                if hit.is_some() {
                    return hit;
                }
            }
            None
        }
        dfs(self, candidates, 0, 0, 0, Span::default(), 0, 0)
    }
}

/// Underlying undirected multigraph on the dense vertex indices of `g`.
pub fn underlying(g: &ColoredGraph) -> UncoloredMultigraph {
    let idx = |v| g.vertex_index(v).expect("endpoint");
    UncoloredMultigraph::from_edges(g.vertex_count(), g.edges().iter().map(|e| (idx(e.tail), idx(e.head))))
        .expect("endpoints are vertices")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexId;
    use crate::group::GroupElem;
    use crate::pebble::{is_kl_sparse, SparsityParams};

    fn one_loop(spec: GroupSpec, color: GroupElem) -> ColoredGraph {
        let mut g = ColoredGraph::with_vertices(spec, 1);
        g.add_edge(VertexId(0), VertexId(0), color).unwrap();
        g
    }

    #[test]
    fn cone_base_is_tight() {
        let z3 = GroupSpec::Cyclic(3);
        let v = check_colored_sparsity(&one_loop(z3, GroupElem::from_i64(z3, 1)), Family::ConeLaman).unwrap();
        assert_eq!(v, Verdict::tight());
        assert_eq!(v.to_string(), "TIGHT");
    }

    #[test]
    fn ross_base_is_tight() {
        let z2 = GroupSpec::FreeRank2;
        let mut g = ColoredGraph::with_vertices(z2, 2);
        g.add_edge(VertexId(0), VertexId(1), GroupElem::from_pair(z2, 1, 0)).unwrap();
        g.add_edge(VertexId(0), VertexId(1), GroupElem::from_pair(z2, 0, 1)).unwrap();
        assert_eq!(check_colored_sparsity(&g, Family::Ross).unwrap(), Verdict::tight());
    }

    #[test]
    fn zero_loop_violates_everywhere() {
        let cases = [
            (GroupSpec::Cyclic(3), Family::ConeLaman),
            (GroupSpec::FreeRank1, Family::CylinderLaman),
            (GroupSpec::FreeRank2, Family::Ross),
            (GroupSpec::FreeRank2, Family::ColoredLaman),
        ];
        for (spec, fam) in cases {
            let v = check_colored_sparsity(&one_loop(spec, GroupElem::zero(spec)), fam).unwrap();
            assert!(!v.sparse);
            assert_eq!(v.to_string(), "VIOLATION 0");
        }
    }

    #[test]
    fn cylinder_base_is_tight() {
        let z = GroupSpec::FreeRank1;
        let v = check_colored_sparsity(&one_loop(z, GroupElem::from_i64(z, 1)), Family::CylinderLaman).unwrap();
        assert_eq!(v, Verdict::tight());
    }

    #[test]
    fn family_group_mismatch() {
        let z = GroupSpec::FreeRank1;
        let r = check_colored_sparsity(&one_loop(z, GroupElem::from_i64(z, 1)), Family::ConeLaman);
        assert!(matches!(r, Err(Error::Usage(_))));
    }

    #[test]
    fn budget_is_enforced() {
        let z3 = GroupSpec::Cyclic(3);
        let mut g = ColoredGraph::with_vertices(z3, 30);
        for i in 0..29 {
            g.add_edge(VertexId(i), VertexId(i + 1), GroupElem::from_i64(z3, 1)).unwrap();
        }
        assert!(matches!(check_colored_sparsity(&g, Family::ConeLaman), Err(Error::Budget { .. })));
        assert!(check_colored_sparsity_with_budget(&g, Family::ConeLaman, 40).unwrap().sparse);
    }

    #[test]
    fn disjoint_tight_cylinder_pieces_violate_together() {
        // two rank-1 loops: each alone is fine, together 2 > 2*2 + 1 - 4
        let z = GroupSpec::FreeRank1;
        let mut g = ColoredGraph::with_vertices(z, 2);
        g.add_edge(VertexId(0), VertexId(0), GroupElem::from_i64(z, 1)).unwrap();
        g.add_edge(VertexId(1), VertexId(1), GroupElem::from_i64(z, 2)).unwrap();
        let v = check_colored_sparsity(&g, Family::CylinderLaman).unwrap();
        assert_eq!(v.witness, Some(vec![EdgeId(0), EdgeId(1)]));
        assert!(check_colored_sparsity(&g, Family::ConeLaman).is_err());
    }

    #[test]
    fn zero_colors_reduce_to_laman() {
        let z5 = GroupSpec::Cyclic(5);
        let mut g = ColoredGraph::with_vertices(z5, 4);
        for (a, b) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
            g.add_edge(VertexId(a), VertexId(b), GroupElem::zero(z5)).unwrap();
        }
        let v = check_colored_sparsity(&g, Family::ConeLaman).unwrap();
        assert!(!v.sparse);
        assert!(!is_kl_sparse(&underlying(&g), SparsityParams::LAMAN));
        assert_eq!(v.witness.unwrap().len(), 6);
    }
}
