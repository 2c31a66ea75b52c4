//! The (k, ℓ)-pebble game on undirected multigraphs.
//!
//! Every vertex starts with k pebbles. An edge uv is accepted when ℓ + 1
//! pebbles can be gathered on {u, v} by reversing directed paths; one of them
//! is then spent to cover the edge. Loops need ℓ + 1 pebbles on a single
//! vertex, so they only enter when ℓ < k.

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SparsityParams {
    pub k: u32,
    pub l: u32,
}

impl SparsityParams {
    pub const LAMAN: SparsityParams = SparsityParams { k: 2, l: 3 };

    pub fn new(k: u32, l: u32) -> Result<Self> {
        if k == 0 || l >= 2 * k {
            return Err(Error::Usage(format!("({k},{l}) outside 0 <= l < 2k")));
        }
        Ok(SparsityParams { k, l })
    }

    /// `k·n − ℓ`, which may be negative.
    pub fn bound(&self, n: usize) -> i64 {
        self.k as i64 * n as i64 - self.l as i64
    }
}

/// Vertices `0..n` and undirected edges; edge ids are positions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UncoloredMultigraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl UncoloredMultigraph {
    pub fn new(n: usize) -> Self {
        UncoloredMultigraph { n, edges: Vec::new() }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Self::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<usize> {
        if u >= self.n || v >= self.n {
            return Err(Error::Usage(format!("edge ({u},{v}) outside {} vertices", self.n)));
        }
        self.edges.push((u, v));
        Ok(self.edges.len() - 1)
    }

    pub fn add_vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    /// Removes the first edge joining `u` and `v` (either order).
    pub fn remove_edge_between(&mut self, u: usize, v: usize) -> Option<usize> {
        let pos = self.edges.iter().position(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u))?;
        self.edges.remove(pos);
        Some(pos)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Subgraph on the same vertices keeping only the listed edge ids
    /// (re-indexed in the given order).
    pub fn restricted(&self, ids: &[usize]) -> UncoloredMultigraph {
        UncoloredMultigraph { n: self.n, edges: ids.iter().map(|&i| self.edges[i]).collect() }
    }

    /// Sorted edge list with each edge as `(min, max)`, for comparisons.
    pub fn canonical_edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<_> = self.edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        e.sort_unstable();
        e
    }
}

/// State of one pebble game run.
#[derive(Clone, Debug)]
pub struct PebbleGame {
    params: SparsityParams,
    pebbles: Vec<u32>,
    /// Accepted edges as (holder, other end).
    accepted: Vec<(usize, usize)>,
    /// Per vertex, indices into `accepted` that it holds.
    out: Vec<Vec<usize>>,
    seen: Vec<u32>,
    stamp: u32,
    parent: Vec<usize>,
    stack: Vec<usize>,
}

impl PebbleGame {
    pub fn new(n: usize, params: SparsityParams) -> Self {
        PebbleGame {
            params,
            pebbles: vec![params.k; n],
            accepted: Vec::new(),
            out: vec![Vec::new(); n],
            seen: vec![0; n],
            stamp: 0,
            parent: vec![usize::MAX; n],
            stack: Vec::new(),
        }
    }

    pub fn free_pebbles(&self, v: usize) -> u32 {
        self.pebbles[v]
    }

    pub fn accepted_count(&self) -> usize {
        self.accepted.len()
    }

    /// Accepted edges with their current orientation (holder first).
    pub fn orientation(&self) -> &[(usize, usize)] {
        &self.accepted
    }

    /// Tries to insert uv; returns whether it was independent.
    pub fn insert(&mut self, u: usize, v: usize) -> bool {
        let need = self.params.l + 1;
        if u == v {
            if need > self.params.k {
                return false;
            }
            while self.pebbles[u] < need {
                if !self.fetch(u, u, v) {
                    return false;
                }
            }
        } else {
            while self.pebbles[u] + self.pebbles[v] < need {
                if !(self.fetch(u, u, v) || self.fetch(v, u, v)) {
                    return false;
                }
            }
        }
        let holder = if self.pebbles[u] > 0 { u } else { v };
        self.pebbles[holder] -= 1;
        self.out[holder].push(self.accepted.len());
        self.accepted.push((holder, if holder == u { v } else { u }));
        true
    }

    /// Moves one pebble to `root` from a vertex outside {u, v} reachable
    /// along held edges, reversing the path.
    fn fetch(&mut self, root: usize, u: usize, v: usize) -> bool {
        if self.pebbles[root] >= self.params.k {
            return false;
        }
        self.next_stamp();
        self.seen[u] = self.stamp;
        self.seen[v] = self.stamp;
        self.stack.clear();
        self.stack.push(root);
        let mut found = None;
        'search: while let Some(x) = self.stack.pop() {
            for &ei in &self.out[x] {
                let y = self.accepted[ei].1;
                if self.seen[y] == self.stamp {
                    continue;
                }
                self.seen[y] = self.stamp;
                self.parent[y] = ei;
                if self.pebbles[y] > 0 {
                    found = Some(y);
                    break 'search;
                }
                self.stack.push(y);
            }
        }
        let Some(w) = found else { return false };
        self.pebbles[w] -= 1;
        self.pebbles[root] += 1;
        let mut y = w;
        while y != root {
            let ei = self.parent[y];
            let (x, _) = self.accepted[ei];
            self.reverse(ei);
            y = x;
        }
        true
    }

    fn reverse(&mut self, ei: usize) {
        let (x, y) = self.accepted[ei];
        let pos = self.out[x].iter().position(|&e| e == ei).expect("holder lists its edge");
        self.out[x].swap_remove(pos);
        self.out[y].push(ei);
        self.accepted[ei] = (y, x);
    }

    fn next_stamp(&mut self) {
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.seen.iter_mut().for_each(|s| *s = 0);
            self.stamp = 1;
        }
    }

    /// Vertices reachable from u or v along held edges. After a failed
    /// insertion of uv this spans a tight block containing both.
    pub fn reach(&mut self, u: usize, v: usize) -> Vec<usize> {
        self.next_stamp();
        self.stack.clear();
        for s in [u, v] {
            if self.seen[s] != self.stamp {
                self.seen[s] = self.stamp;
                self.stack.push(s);
            }
        }
        let mut reached = Vec::new();
        while let Some(x) = self.stack.pop() {
            reached.push(x);
            for &ei in &self.out[x] {
                let y = self.accepted[ei].1;
                if self.seen[y] != self.stamp {
                    self.seen[y] = self.stamp;
                    self.stack.push(y);
                }
            }
        }
        reached.sort_unstable();
        reached
    }
}

/// A maximal (k, ℓ)-sparse edge subset, greedy in edge order.
pub fn kl_basis(g: &UncoloredMultigraph, params: SparsityParams) -> Vec<usize> {
    let mut game = PebbleGame::new(g.n, params);
    g.edges.iter().enumerate().filter(|(_, &(u, v))| game.insert(u, v)).map(|(i, _)| i).collect()
}

pub fn is_kl_sparse(g: &UncoloredMultigraph, params: SparsityParams) -> bool {
    let mut game = PebbleGame::new(g.n, params);
    g.edges.iter().all(|&(u, v)| game.insert(u, v))
}

/// Whether the graph contains a spanning (k, ℓ)-tight subgraph.
pub fn is_kl_spanning(g: &UncoloredMultigraph, params: SparsityParams) -> bool {
    kl_basis(g, params).len() as i64 == params.bound(g.n)
}

/// The unique (k, ℓ)-circuit inside `basis + e`.
///
/// The failed pebble search for `e` marks a tight block; a basis edge `f` of
/// that block lies on the circuit exactly when swapping it for `e` keeps the
/// block sparse.
pub fn fundamental_circuit(
    g: &UncoloredMultigraph,
    params: SparsityParams,
    basis: &[usize],
    e: usize,
) -> Result<Vec<usize>> {
    if e >= g.edges.len() {
        return Err(Error::Usage(format!("no edge {e}")));
    }
    if basis.contains(&e) {
        return Err(Error::NoCircuit(e as u32));
    }
    let mut game = PebbleGame::new(g.n, params);
    for &b in basis {
        let (u, v) = g.edges[b];
        if !game.insert(u, v) {
            return Err(Error::Precondition(format!("basis edge {b} is dependent")));
        }
    }
    let (u, v) = g.edges[e];
    if game.insert(u, v) {
        return Err(Error::NoCircuit(e as u32));
    }
    let block = game.reach(u, v);
    let in_block = |x: usize| block.binary_search(&x).is_ok();
    let candidates: Vec<usize> =
        basis.iter().copied().filter(|&b| in_block(g.edges[b].0) && in_block(g.edges[b].1)).collect();
    let mut circuit = vec![e];
    for &f in &candidates {
        let mut trial = PebbleGame::new(g.n, params);
        let independent = candidates
            .iter()
            .filter(|&&x| x != f)
            .chain(std::iter::once(&e))
            .all(|&x| trial.insert(g.edges[x].0, g.edges[x].1));
        if independent {
            circuit.push(f);
        }
    }
    circuit.sort_unstable();
    Ok(circuit)
}

/// Whether `ids` form a (k, ℓ)-circuit: dependent, and every single-edge
/// deletion is sparse.
pub fn is_circuit(g: &UncoloredMultigraph, params: SparsityParams, ids: &[usize]) -> bool {
    if ids.is_empty() || is_kl_sparse(&g.restricted(ids), params) {
        return false;
    }
    (0..ids.len()).all(|skip| {
        let rest: Vec<usize> = ids.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &x)| x).collect();
        is_kl_sparse(&g.restricted(&rest), params)
    })
}
