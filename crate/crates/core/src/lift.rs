//! Symmetric covers of colored graphs over finite groups.
//!
//! Vertex `ĩ_γ` of the cover sits over base vertex `i`; the base edge `ij`
//! colored `c` lifts to the fiber `{ĩ_γ, j̃_{c+γ}}` for every γ. The group
//! acts by `γ' · ĩ_γ = ĩ_{γ+γ'}`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, Dsu, EdgeId, VertexId};
use crate::group::{is_prime, odd_prime_above, GroupElem, GroupSpec};
use crate::pebble::{fundamental_circuit, is_circuit, is_kl_sparse, kl_basis, PebbleGame, SparsityParams, UncoloredMultigraph};

/// A finite cover together with its free group action.
#[derive(Clone, Debug)]
pub struct SymmetricGraph {
    base: ColoredGraph,
    elements: Vec<GroupElem>,
    cover: UncoloredMultigraph,
}

impl SymmetricGraph {
    pub fn base(&self) -> &ColoredGraph {
        &self.base
    }

    /// Group elements in canonical order; `γ` indices refer to this list.
    pub fn elements(&self) -> &[GroupElem] {
        &self.elements
    }

    pub fn group_order(&self) -> usize {
        self.elements.len()
    }

    /// The cover as an undirected multigraph. Vertex `ĩ_γ` has index
    /// `i·|Γ| + γ`; the lift of base edge position `e` at `γ` has index
    /// `e·|Γ| + γ`.
    pub fn cover(&self) -> &UncoloredMultigraph {
        &self.cover
    }

    pub fn vertex(&self, base_index: usize, gamma: usize) -> usize {
        base_index * self.group_order() + gamma
    }

    /// `(base vertex, γ)` of a cover vertex.
    pub fn vertex_label(&self, v: usize) -> (VertexId, &GroupElem) {
        let n = self.group_order();
        (self.base.vertices()[v / n], &self.elements[v % n])
    }

    pub fn vertex_name(&self, v: usize) -> String {
        let (i, g) = self.vertex_label(v);
        format!("{i}_{g}")
    }

    /// Base edge id over a cover edge.
    pub fn base_edge(&self, e: usize) -> EdgeId {
        self.base.edges()[e / self.group_order()].id
    }

    /// The orbit of a cover edge, ordered by γ.
    pub fn edge_orbit(&self, e: usize) -> Vec<usize> {
        let n = self.group_order();
        let start = e - e % n;
        (start..start + n).collect()
    }

    /// Image of a cover vertex under the action of element `gamma`.
    pub fn act_vertex(&self, gamma: usize, v: usize) -> usize {
        let n = self.group_order();
        v - v % n + self.add_indices(v % n, gamma)
    }

    /// Image of a cover edge under the action of element `gamma`.
    pub fn act_edge(&self, gamma: usize, e: usize) -> usize {
        let n = self.group_order();
        e - e % n + self.add_indices(e % n, gamma)
    }

    fn add_indices(&self, a: usize, b: usize) -> usize {
        index_of(&self.elements[a].plus(&self.elements[b]))
    }

    /// Plain-text multigraph with `<i>_<gamma>` vertex names.
    pub fn to_text(&self) -> String {
        let mut out = format!("# lift of a {} colored graph\n", self.base.spec());
        out.push_str(&format!("vertices {}\n", self.cover.vertex_count()));
        for v in 0..self.cover.vertex_count() {
            out.push_str(&format!("vertex {}\n", self.vertex_name(v)));
        }
        for &(a, b) in self.cover.edges() {
            out.push_str(&format!("edge {} {}\n", self.vertex_name(a), self.vertex_name(b)));
        }
        out
    }
}

fn index_of(e: &GroupElem) -> usize {
    e.finite_index().expect("finite group element")
}

fn check_liftable(spec: GroupSpec) -> Result<()> {
    match spec {
        GroupSpec::Cyclic(k) if k % 2 == 1 && is_prime(k) => Ok(()),
        GroupSpec::CyclicPQ(..) => Ok(()),
        _ => Err(Error::UnsupportedGroup { spec, what: "lifting (needs Z/p with p an odd prime, or Z/pxZ/q)" }),
    }
}

pub fn build_lift(g: &ColoredGraph) -> Result<SymmetricGraph> {
    check_liftable(g.spec())?;
    let elements = g.spec().elements().expect("finite group");
    let order = elements.len();
    let mut cover = UncoloredMultigraph::new(g.vertex_count() * order);
    for e in g.edges() {
        let i = g.vertex_index(e.tail).expect("endpoint");
        let j = g.vertex_index(e.head).expect("endpoint");
        for (gamma, elem) in elements.iter().enumerate() {
            let target = index_of(&e.color.plus(elem));
            cover.add_edge(i * order + gamma, j * order + target)?;
        }
    }
    Ok(SymmetricGraph { base: g.clone(), elements, cover })
}

fn is_connected(g: &ColoredGraph) -> bool {
    let mut dsu = Dsu::new(g.vertex_count());
    let mut parts = g.vertex_count();
    for e in g.edges() {
        if dsu.union(g.vertex_index(e.tail).expect("endpoint"), g.vertex_index(e.head).expect("endpoint")) {
            parts -= 1;
        }
    }
    parts <= 1
}

/// Number of connected components of the lift of a connected graph.
pub fn lift_component_count(g: &ColoredGraph) -> Result<usize> {
    if !is_connected(g) {
        return Err(Error::Precondition("lift_component_count needs a connected graph".into()));
    }
    let sg = build_lift(g)?;
    let cover = sg.cover();
    let mut dsu = Dsu::new(cover.vertex_count());
    let mut parts = cover.vertex_count();
    for &(a, b) in cover.edges() {
        if dsu.union(a, b) {
            parts -= 1;
        }
    }
    Ok(parts)
}

/// Oriented color sum along the path `a –(first)– i –(second)– b`.
pub fn path_color_sum(
    g: &ColoredGraph,
    a: VertexId,
    first: EdgeId,
    i: VertexId,
    second: EdgeId,
    b: VertexId,
) -> Result<GroupElem> {
    let step = |id: EdgeId, from: VertexId, to: VertexId| -> Result<GroupElem> {
        let e = g.edge(id).ok_or_else(|| Error::Usage(format!("no edge with id {id}")))?;
        if e.tail == from && e.head == to {
            Ok(e.color.clone())
        } else if e.tail == to && e.head == from {
            Ok(e.color.neg())
        } else {
            Err(Error::Usage(format!("edge {id} does not join {from} and {to}")))
        }
    };
    Ok(step(first, a, i)?.plus(&step(second, i, b)?))
}

/// Cone-Laman test through the cover: for a graph with `2n − 1` edges over
/// ℤ/p (p an odd prime) or ℤ/p × ℤ/q, cone-Laman exactly when the lift is
/// (2,3)-sparse.
pub fn cone_laman_via_lift(g: &ColoredGraph) -> Result<bool> {
    check_liftable(g.spec())?;
    let n = g.vertex_count();
    if g.edge_count() + 1 != 2 * n {
        return Err(Error::Precondition(format!(
            "lift recognition needs 2n-1 = {} edges, graph has {}",
            (2 * n).saturating_sub(1),
            g.edge_count()
        )));
    }
    Ok(is_kl_sparse(build_lift(g)?.cover(), SparsityParams::LAMAN))
}

/// A Laman circuit of the lift when it is not (2,3)-sparse, as cover edge
/// indices.
pub fn lift_violation(sg: &SymmetricGraph) -> Option<Vec<usize>> {
    let cover = sg.cover();
    let mut game = PebbleGame::new(cover.vertex_count(), SparsityParams::LAMAN);
    let mut basis = Vec::new();
    for (i, &(u, v)) in cover.edges().iter().enumerate() {
        if game.insert(u, v) {
            basis.push(i);
        } else {
            return fundamental_circuit(cover, SparsityParams::LAMAN, &basis, i).ok();
        }
    }
    None
}

/// Result of [`reduce_colors`].
#[derive(Clone, Debug)]
pub struct Reduction {
    pub graph: ColoredGraph,
    pub p: u64,
    pub q: Option<u64>,
}

/// Reduces ℤ colors mod a prime p (ℤ² colors mod distinct primes p, q per
/// coordinate). Each prime is the smallest odd prime above
/// `2·(Σ|coordinate| + 1)`, so no cycle sum can wrap to zero.
pub fn reduce_colors(g: &ColoredGraph) -> Result<Reduction> {
    let mut totals = [BigInt::zero(), BigInt::zero()];
    for e in g.edges() {
        let [x, y] = e.color.abs_coords();
        totals[0] += x;
        totals[1] += y;
    }
    let bound = |t: &BigInt| (t + 1) * 2;
    let (spec, p, q) = match g.spec() {
        GroupSpec::FreeRank1 => {
            let p = odd_prime_above(&bound(&totals[0]), None)?;
            (GroupSpec::cyclic(p)?, p, None)
        }
        GroupSpec::FreeRank2 => {
            let p = odd_prime_above(&bound(&totals[0]), None)?;
            let q = odd_prime_above(&bound(&totals[1]), Some(p))?;
            (GroupSpec::cyclic_pq(p, q)?, p, Some(q))
        }
        other => return Err(Error::UnsupportedGroup { spec: other, what: "color reduction (needs Z or Z^2)" }),
    };
    let mut out = ColoredGraph::new(spec);
    for &v in g.vertices() {
        out.add_vertex(v)?;
    }
    for e in g.edges() {
        let color = GroupElem::new(spec, e.color.coords())?;
        out.add_edge(e.tail, e.head, color)?;
    }
    Ok(Reduction { graph: out, p, q })
}

/// Given a Laman circuit of the cover meeting the orbit of `orbit_rep`,
/// returns a Laman circuit containing at most one edge of that orbit.
///
/// The search runs first inside the union of all translates of the circuit
/// and then, if that union has no such circuit, in the whole cover. Within
/// an edge set `S`, a circuit through exactly one orbit edge exists iff some
/// orbit edge is spanned by a basis of `S` minus the orbit, and one avoiding
/// the orbit exists iff `S` minus the orbit is dependent, so each stage is
/// exhaustive. Fails with a precondition error when the whole cover has no
/// such circuit.
pub fn eliminate_orbit_circuit(sg: &SymmetricGraph, circuit: &[usize], orbit_rep: usize) -> Result<Vec<usize>> {
    let cover = sg.cover();
    if orbit_rep >= cover.edge_count() || circuit.iter().any(|&e| e >= cover.edge_count()) {
        return Err(Error::Usage("edge index outside the cover".into()));
    }
    let mut circuit = circuit.to_vec();
    circuit.sort_unstable();
    circuit.dedup();
    if !is_circuit(cover, SparsityParams::LAMAN, &circuit) {
        return Err(Error::Usage("input edges are not a (2,3)-circuit".into()));
    }
    let orbit = sg.edge_orbit(orbit_rep);
    let hits = circuit.iter().filter(|e| orbit.contains(e)).count();
    if hits == 0 {
        return Err(Error::Usage("the circuit does not meet the orbit".into()));
    }
    if hits == 1 {
        return Ok(circuit);
    }

    let mut union: Vec<usize> = (0..sg.group_order())
        .flat_map(|gamma| circuit.iter().map(move |&e| sg.act_edge(gamma, e)))
        .collect();
    union.sort_unstable();
    union.dedup();
    if let Some(found) = circuit_meeting_once(cover, &union, &orbit)? {
        return Ok(found);
    }
    let everything: Vec<usize> = (0..cover.edge_count()).collect();
    circuit_meeting_once(cover, &everything, &orbit)?.ok_or_else(|| {
        Error::Precondition("every (2,3)-circuit of the cover meets the orbit at least twice".into())
    })
}

/// A circuit inside `pool` with at most one edge from `orbit`, if any.
fn circuit_meeting_once(cover: &UncoloredMultigraph, pool: &[usize], orbit: &[usize]) -> Result<Option<Vec<usize>>> {
    let params = SparsityParams::LAMAN;
    let (orbit_part, rest): (Vec<usize>, Vec<usize>) = pool.iter().partition(|e| orbit.contains(e));
    let rest_graph = cover.restricted(&rest);
    let rest_basis = kl_basis(&rest_graph, params);
    if let Some(dep) = (0..rest.len()).find(|i| !rest_basis.contains(i)) {
        let local = fundamental_circuit(&rest_graph, params, &rest_basis, dep)?;
        let mut found: Vec<usize> = local.into_iter().map(|i| rest[i]).collect();
        found.sort_unstable();
        return Ok(Some(found));
    }
    let mut ids: Vec<usize> = rest_basis.iter().map(|&i| rest[i]).collect();
    let local_basis: Vec<usize> = (0..ids.len()).collect();
    for &x in &orbit_part {
        ids.push(x);
        match fundamental_circuit(&cover.restricted(&ids), params, &local_basis, ids.len() - 1) {
            Ok(local) => {
                let mut found: Vec<usize> = local.into_iter().map(|i| ids[i]).collect();
                found.sort_unstable();
                return Ok(Some(found));
            }
            Err(Error::NoCircuit(_)) => {
                ids.pop();
            }
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}
