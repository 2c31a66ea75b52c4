//! Independent reference implementations used by the integration tests.
//! Nothing here calls the library's counting, rank or pebble code.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, VecDeque};

use gainsparse::{ColoredGraph, Family, GroupElem, GroupSpec, VertexId};

/// Plain integer coordinates of a color.
pub fn coords(c: &GroupElem) -> (i64, i64) {
    let v: Vec<i64> = c.coords().iter().map(|x| i64::try_from(x).expect("small test colors")).collect();
    (v[0], *v.get(1).unwrap_or(&0))
}

/// Edge-subset check of m' <= k n' - l over every nonempty subset.
/// `edges` are endpoint pairs; loops allowed.
pub fn kl_sparse_by_subsets(edges: &[(usize, usize)], k: i64, l: i64) -> bool {
    let m = edges.len();
    assert!(m < 32);
    for mask in 1u32..(1u32 << m) {
        let mut verts = 0u64;
        for (i, &(a, b)) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                verts |= 1 << a | 1 << b;
            }
        }
        if mask.count_ones() as i64 > k * verts.count_ones() as i64 - l {
            return false;
        }
    }
    true
}

/// Vertex-subset form of (k,l)-sparsity: every vertex set induces at most
/// k|V'| - l edges whenever it induces any.
pub fn kl_sparse_by_vertex_sets(n: usize, edges: &[(usize, usize)], k: i64, l: i64) -> bool {
    assert!(n < 25);
    for mask in 1u32..(1u32 << n) {
        let inside = edges.iter().filter(|&&(a, b)| mask >> a & 1 == 1 && mask >> b & 1 == 1).count() as i64;
        if inside > 0 && inside > k * mask.count_ones() as i64 - l {
            return false;
        }
    }
    true
}

/// (2,3)-circuit test: 2n'-2 edges and every one-edge deletion is sparse.
pub fn is_laman_circuit(edges: &[(usize, usize)]) -> bool {
    let mut verts: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    verts.sort_unstable();
    verts.dedup();
    let local: Vec<(usize, usize)> = edges
        .iter()
        .map(|&(a, b)| (verts.binary_search(&a).unwrap(), verts.binary_search(&b).unwrap()))
        .collect();
    if local.len() != 2 * verts.len() - 2 {
        return false;
    }
    (0..local.len()).all(|skip| {
        let rest: Vec<(usize, usize)> =
            local.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &e)| e).collect();
        kl_sparse_by_vertex_sets(verts.len(), &rest, 2, 3)
    })
}

/// Elements of the subgroup generated by `gens` in a finite group, by closure.
pub fn subgroup_closure(spec: GroupSpec, gens: &[(i64, i64)]) -> BTreeSet<(i64, i64)> {
    let (m1, m2) = match spec {
        GroupSpec::Cyclic(k) => (k as i64, 1),
        GroupSpec::CyclicPQ(p, q) => (p as i64, q as i64),
        _ => panic!("finite groups only"),
    };
    let mut seen = BTreeSet::from([(0, 0)]);
    let mut queue = VecDeque::from([(0, 0)]);
    while let Some((x, y)) = queue.pop_front() {
        for &(gx, gy) in gens {
            let next = ((x + gx).rem_euclid(m1), (y + gy).rem_euclid(m2));
            if seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    seen
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Rank of a set of cycle values, from first principles per group.
pub fn rank_oracle(spec: GroupSpec, values: &[(i64, i64)]) -> usize {
    match spec {
        GroupSpec::FreeRank1 => usize::from(values.iter().any(|v| v.0 != 0)),
        GroupSpec::FreeRank2 => {
            let nonzero = values.iter().any(|&v| v != (0, 0));
            let independent_pair =
                values.iter().any(|a| values.iter().any(|b| a.0 as i128 * b.1 as i128 != a.1 as i128 * b.0 as i128));
            match (nonzero, independent_pair) {
                (_, true) => 2,
                (true, false) => 1,
                _ => 0,
            }
        }
        GroupSpec::Cyclic(k) => {
            assert!(is_small_prime(k));
            usize::from(subgroup_closure(spec, values).len() > 1)
        }
        GroupSpec::CyclicPQ(p, q) => {
            let order = subgroup_closure(spec, values).len() as u64;
            usize::from(order.is_multiple_of(p)) + usize::from(order.is_multiple_of(q))
        }
    }
}

pub fn is_small_prime(k: u64) -> bool {
    k >= 2 && (2..k).take_while(|d| d * d <= k).all(|d| !k.is_multiple_of(d))
}

/// Counts of one edge subset: (n', m', r, c0, c1, c2). Cycle values come
/// from BFS potentials, with the rank of the union taken over all
/// components. `isolated` adds vertices with no selected edge as rank-0
/// components.
pub fn counts_oracle(g: &ColoredGraph, subset: &[usize], isolated: &[VertexId]) -> (i64, i64, usize, i64, i64, i64) {
    let spec = g.spec();
    let edges: Vec<(VertexId, VertexId, (i64, i64))> =
        subset.iter().map(|&i| &g.edges()[i]).map(|e| (e.tail, e.head, coords(&e.color))).collect();
    let mut adjacency: HashMap<VertexId, Vec<(usize, VertexId, i64)>> = HashMap::new();
    for (i, &(t, h, _)) in edges.iter().enumerate() {
        adjacency.entry(t).or_default().push((i, h, 1));
        adjacency.entry(h).or_default().push((i, t, -1));
    }
    let mut verts: Vec<VertexId> = adjacency.keys().copied().collect();
    verts.sort();
    let mut potential: HashMap<VertexId, (i64, i64)> = HashMap::new();
    let mut all_values = Vec::new();
    let mut ranks = Vec::new();
    for &root in &verts {
        if potential.contains_key(&root) {
            continue;
        }
        potential.insert(root, (0, 0));
        let mut queue = VecDeque::from([root]);
        let mut comp_edges = BTreeSet::new();
        while let Some(u) = queue.pop_front() {
            let pu = potential[&u];
            for &(i, w, sign) in &adjacency[&u] {
                comp_edges.insert(i);
                let c = edges[i].2;
                if let std::collections::hash_map::Entry::Vacant(slot) = potential.entry(w) {
                    slot.insert((pu.0 + sign * c.0, pu.1 + sign * c.1));
                    queue.push_back(w);
                }
            }
        }
        let values: Vec<(i64, i64)> = comp_edges
            .iter()
            .map(|&i| {
                let (t, h, c) = edges[i];
                let (pt, ph) = (potential[&t], potential[&h]);
                (c.0 + pt.0 - ph.0, c.1 + pt.1 - ph.1)
            })
            .collect();
        ranks.push(rank_oracle(spec, &values));
        all_values.extend(values);
    }
    let extra = isolated.iter().filter(|v| !adjacency.contains_key(v)).count() as i64;
    let c = |r: usize| ranks.iter().filter(|&&x| x == r).count() as i64;
    (verts.len() as i64 + extra, edges.len() as i64, rank_oracle(spec, &all_values), c(0) + extra, c(1), c(2))
}

/// Right-hand side of each family's count, written out directly.
pub fn bound_oracle(family: Family, (n, _, r, c0, c1, c2): (i64, i64, usize, i64, i64, i64)) -> i64 {
    let r = r as i64;
    match family {
        Family::Ross => 2 * n - 3 * c0 - 2 * (c1 + c2),
        Family::ConeLaman => 2 * n - 3 * c0 - c1 - c2,
        Family::CylinderLaman => 2 * n + r - 3 * c0 - 2 * (c1 + c2),
        Family::ColoredLaman => 2 * n + (2 * r - 1).max(0) - 3 * c0 - 2 * (c1 + c2),
    }
}

/// (sparse, tight) by checking every nonempty edge subset.
pub fn colored_by_subsets(g: &ColoredGraph, family: Family) -> (bool, bool) {
    let m = g.edge_count();
    assert!(m <= 20, "oracle is exponential");
    for mask in 1u32..(1u32 << m) {
        let subset: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
        let counts = counts_oracle(g, &subset, &[]);
        if counts.1 > bound_oracle(family, counts) {
            return (false, false);
        }
    }
    let all: Vec<usize> = (0..m).collect();
    let whole = counts_oracle(g, &all, g.vertices());
    (true, whole.1 == bound_oracle(family, whole))
}

/// Components of the cover built from scratch: vertex (i, γ) for the i-th
/// base vertex, edge (i, γ) -- (j, γ + c).
pub fn lift_components(g: &ColoredGraph) -> usize {
    let spec = g.spec();
    let elements: Vec<(i64, i64)> = g.spec().elements().unwrap().iter().map(coords).collect();
    let index: HashMap<(i64, i64), usize> = elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let order = elements.len();
    let (m1, m2) = match spec {
        GroupSpec::Cyclic(k) => (k as i64, 1),
        GroupSpec::CyclicPQ(p, q) => (p as i64, q as i64),
        _ => unreachable!(),
    };
    let n = g.vertex_count() * order;
    let mut adjacency = vec![Vec::new(); n];
    for e in g.edges() {
        let i = g.vertex_index(e.tail).unwrap();
        let j = g.vertex_index(e.head).unwrap();
        let c = coords(&e.color);
        for (gi, &(x, y)) in elements.iter().enumerate() {
            let target = index[&((x + c.0).rem_euclid(m1), (y + c.1).rem_euclid(m2))];
            adjacency[i * order + gi].push(j * order + target);
            adjacency[j * order + target].push(i * order + gi);
        }
    }
    let mut seen = vec![false; n];
    let mut parts = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        parts += 1;
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &w in &adjacency[u] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    parts
}

/// Cycle values of a connected graph (for index computations).
pub fn cycle_values(g: &ColoredGraph) -> Vec<(i64, i64)> {
    let all: Vec<usize> = (0..g.edge_count()).collect();
    let edges: Vec<_> = all.iter().map(|&i| &g.edges()[i]).collect();
    let mut potential: HashMap<VertexId, (i64, i64)> = HashMap::new();
    if let Some(first) = g.vertices().first() {
        potential.insert(*first, (0, 0));
    }
    let mut changed = true;
    while changed {
        changed = false;
        for e in &edges {
            let c = coords(&e.color);
            match (potential.get(&e.tail).copied(), potential.get(&e.head).copied()) {
                (Some(pt), None) => {
                    potential.insert(e.head, (pt.0 + c.0, pt.1 + c.1));
                    changed = true;
                }
                (None, Some(ph)) => {
                    potential.insert(e.tail, (ph.0 - c.0, ph.1 - c.1));
                    changed = true;
                }
                _ => {}
            }
        }
    }
    edges
        .iter()
        .map(|e| {
            let c = coords(&e.color);
            let (pt, ph) = (potential[&e.tail], potential[&e.head]);
            (c.0 + pt.0 - ph.0, c.1 + pt.1 - ph.1)
        })
        .collect()
}

pub fn graph_from(spec: GroupSpec, n: u32, edges: &[(u32, u32, i64, i64)]) -> ColoredGraph {
    let mut g = ColoredGraph::with_vertices(spec, n);
    for &(t, h, x, y) in edges {
        let color = match spec.dimension() {
            1 => GroupElem::from_i64(spec, x),
            _ => GroupElem::from_pair(spec, x, y),
        };
        g.add_edge(VertexId(t), VertexId(h), color).unwrap();
    }
    g
}
