//! Colored Henneberg moves, base graphs, deconstruction into certificates
//! and seeded random construction.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, Edge, EdgeId, VertexId};
use crate::group::{GroupElem, GroupSpec};
use crate::recognize::{is_family_tight, Method};
use crate::sparsity::Family;

/// A forward colored Henneberg move. New edges are oriented into `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    /// New vertex `n` joined to `a` and `b`.
    H1c { n: VertexId, a: VertexId, b: VertexId, color_a: GroupElem, color_b: GroupElem },
    /// "Lollipop": new vertex `n` joined to `a`, plus a nonzero loop at `n`.
    H1cPrime { n: VertexId, a: VertexId, color_a: GroupElem, loop_color: GroupElem },
    /// Splits edge `split` (a→b) through `n`, with `color_a − color_b` equal
    /// to the split edge's color, and joins `n` to `c`.
    H2c { n: VertexId, split: EdgeId, color_a: GroupElem, color_b: GroupElem, c: VertexId, color_c: GroupElem },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum MoveKind {
    H1c,
    H1cPrime,
    H2c,
}

impl Move {
    pub fn kind(&self) -> MoveKind {
        match self {
            Move::H1c { .. } => MoveKind::H1c,
            Move::H1cPrime { .. } => MoveKind::H1cPrime,
            Move::H2c { .. } => MoveKind::H2c,
        }
    }

    pub fn new_vertex(&self) -> VertexId {
        match self {
            Move::H1c { n, .. } | Move::H1cPrime { n, .. } | Move::H2c { n, .. } => *n,
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::H1c { n, a, b, color_a, color_b } => write!(f, "h1c n={n} a={a} b={b} ca={color_a} cb={color_b}"),
            Move::H1cPrime { n, a, color_a, loop_color } => write!(f, "h1cp n={n} a={a} ca={color_a} loop={loop_color}"),
            Move::H2c { n, split, color_a, color_b, c, color_c } => {
                write!(f, "h2c n={n} split={split} can={color_a} cbn={color_b} c={c} ccn={color_c}")
            }
        }
    }
}

/// Moves each family may use.
pub fn allowed_moves(family: Family) -> Result<&'static [MoveKind]> {
    match family {
        Family::Ross | Family::CylinderLaman => Ok(&[MoveKind::H1c, MoveKind::H2c]),
        Family::ConeLaman => Ok(&[MoveKind::H1c, MoveKind::H1cPrime, MoveKind::H2c]),
        Family::ColoredLaman => Err(Error::Usage("no Henneberg construction for colored-Laman graphs".into())),
    }
}

fn check_family_group(family: Family, spec: GroupSpec) -> Result<()> {
    let ok = matches!(
        (family, spec),
        (Family::Ross, GroupSpec::FreeRank2)
            | (Family::ConeLaman, GroupSpec::Cyclic(_))
            | (Family::CylinderLaman, GroupSpec::FreeRank1)
    );
    if !ok {
        allowed_moves(family)?;
        return Err(Error::Usage(format!("family {family} is not constructed over {spec}")));
    }
    Ok(())
}

/// Group used when none is given: ℤ², ℤ/5 and ℤ.
pub fn default_group(family: Family) -> Result<GroupSpec> {
    match family {
        Family::Ross => Ok(GroupSpec::FreeRank2),
        Family::ConeLaman => Ok(GroupSpec::Cyclic(5)),
        Family::CylinderLaman => Ok(GroupSpec::FreeRank1),
        Family::ColoredLaman => Err(Error::Usage("no Henneberg construction for colored-Laman graphs".into())),
    }
}

fn require_vertex(g: &ColoredGraph, v: VertexId) -> Result<()> {
    if !g.has_vertex(v) {
        return Err(Error::Usage(format!("move refers to missing vertex {v}")));
    }
    Ok(())
}

fn require_spec(g: &ColoredGraph, colors: &[&GroupElem]) -> Result<()> {
    for c in colors {
        if c.spec() != g.spec() {
            return Err(Error::SpecMismatch { left: g.spec(), right: c.spec() });
        }
    }
    Ok(())
}

pub fn apply_move(g: &ColoredGraph, mv: &Move) -> Result<ColoredGraph> {
    let n = mv.new_vertex();
    if g.has_vertex(n) {
        return Err(Error::Usage(format!("new vertex {n} already exists")));
    }
    let mut h = g.clone();
    match mv {
        Move::H1c { a, b, color_a, color_b, .. } => {
            require_vertex(g, *a)?;
            require_vertex(g, *b)?;
            require_spec(g, &[color_a, color_b])?;
            if a == b && color_a == color_b {
                return Err(Error::InvalidMove(format!("h1c: parallel edges {a}->{n} need different colors")));
            }
            h.add_vertex(n)?;
            h.add_edge(*a, n, color_a.clone())?;
            h.add_edge(*b, n, color_b.clone())?;
        }
        Move::H1cPrime { a, color_a, loop_color, .. } => {
            require_vertex(g, *a)?;
            require_spec(g, &[color_a, loop_color])?;
            if loop_color.is_zero() {
                return Err(Error::InvalidMove("h1cp: loop color must be nonzero".into()));
            }
            h.add_vertex(n)?;
            h.add_edge(*a, n, color_a.clone())?;
            h.add_edge(n, n, loop_color.clone())?;
        }
        Move::H2c { split, color_a, color_b, c, color_c, .. } => {
            require_vertex(g, *c)?;
            require_spec(g, &[color_a, color_b, color_c])?;
            let removed = h.remove_edge(*split)?;
            let (a, b) = (removed.tail, removed.head);
            if color_a.minus(color_b) != removed.color {
                return Err(Error::InvalidMove(format!(
                    "h2c: {color_a} - {color_b} differs from the split color {}",
                    removed.color
                )));
            }
            let ends = [(a, color_a), (b, color_b), (*c, color_c)];
            for (i, (x, cx)) in ends.iter().enumerate() {
                for (y, cy) in &ends[i + 1..] {
                    if x == y && cx == cy {
                        return Err(Error::InvalidMove(format!("h2c: parallel edges {x}->{n} need different colors")));
                    }
                }
            }
            h.add_vertex(n)?;
            h.add_edge(a, n, color_a.clone())?;
            h.add_edge(b, n, color_b.clone())?;
            h.add_edge(*c, n, color_c.clone())?;
        }
    }
    debug_assert_eq!(h.vertex_count(), g.vertex_count() + 1);
    debug_assert_eq!(h.edge_count(), g.edge_count() + 2);
    Ok(h)
}

/// Color of `e` read as an edge into `v`.
fn color_into(e: &Edge, v: VertexId) -> GroupElem {
    if e.head == v {
        e.color.clone()
    } else {
        e.color.neg()
    }
}

/// Every reverse move at `v` allowed for `family`, paired with the graph it
/// produces. Families are not re-checked here.
pub fn reverse_candidates(g: &ColoredGraph, v: VertexId, family: Family) -> Result<Vec<(Move, ColoredGraph)>> {
    require_vertex(g, v)?;
    let allowed = allowed_moves(family)?;
    let incident: Vec<Edge> = g.incident_edges(v).cloned().collect();
    let loops: Vec<&Edge> = incident.iter().filter(|e| e.is_loop()).collect();
    let plain: Vec<&Edge> = incident.iter().filter(|e| !e.is_loop()).collect();
    let mut without = g.clone();
    without.remove_vertex(v)?;
    let mut out = Vec::new();
    match (loops.len(), plain.len()) {
        (0, 2) => {
            let (e1, e2) = (plain[0], plain[1]);
            let mv = Move::H1c {
                n: v,
                a: e1.other(v),
                b: e2.other(v),
                color_a: color_into(e1, v),
                color_b: color_into(e2, v),
            };
            if apply_move(&without, &mv).is_ok() {
                out.push((mv, without));
            }
        }
        (1, 1) => {
            let mv = Move::H1cPrime { n: v, a: plain[0].other(v), color_a: color_into(plain[0], v), loop_color: loops[0].color.clone() };
            if allowed.contains(&MoveKind::H1cPrime) && apply_move(&without, &mv).is_ok() {
                out.push((mv, without));
            }
        }
        (0, 3) => {
            for (x, y, z) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
                let (ex, ey, ez) = (plain[x], plain[y], plain[z]);
                let (a, b) = (ex.other(v), ey.other(v));
                let color_a = color_into(ex, v);
                let color_b = color_into(ey, v);
                let eta = color_a.minus(&color_b);
                let probe = Edge { id: EdgeId(u32::MAX), tail: a, head: b, color: eta.clone() };
                if without.edges().iter().any(|e| e.normalized_key() == probe.normalized_key()) {
                    continue;
                }
                let mut h = without.clone();
                let split = h.add_edge(a, b, eta)?;
                let mv = Move::H2c { n: v, split, color_a, color_b, c: ez.other(v), color_c: color_into(ez, v) };
                if apply_move(&h, &mv).is_ok() {
                    out.push((mv, h));
                }
            }
        }
        _ => return Err(Error::NoCandidates(v.0)),
    }
    Ok(out)
}

/// Base graphs: a single vertex with a nonzero loop (cone over
/// ℤ/k, cylinder over ℤ) or two vertices joined by two parallel ℤ²-colored
/// edges with nonzero cycle value (Ross).
pub fn is_base(g: &ColoredGraph, family: Family) -> bool {
    if check_family_group(family, g.spec()).is_err() {
        return false;
    }
    match family {
        Family::ConeLaman | Family::CylinderLaman => {
            g.vertex_count() == 1 && g.edge_count() == 1 && g.edges()[0].is_loop() && !g.edges()[0].color.is_zero()
        }
        Family::Ross => {
            g.vertex_count() == 2
                && g.edge_count() == 2
                && g.edges().iter().all(|e| !e.is_loop())
                && g.whole().rho_rank().is_ok_and(|r| r >= 1)
        }
        Family::ColoredLaman => false,
    }
}

/// Tightness test used between moves: the cover route for cylinder graphs
/// (reduced colors plus (2,2)-spanning) and brute force otherwise.
fn step_is_tight(g: &ColoredGraph, family: Family) -> Result<bool> {
    let method = match family {
        Family::CylinderLaman if g.edge_count() + 1 == 2 * g.vertex_count() => Method::Lift,
        _ => Method::Auto,
    };
    is_family_tight(g, family, method)
}

/// Reduces a tight graph to its base by reverse moves and returns the
/// forward certificate.
pub fn deconstruct(g: &ColoredGraph, family: Family) -> Result<Certificate> {
    check_family_group(family, g.spec())?;
    if !is_family_tight(g, family, Method::Auto)? {
        return Err(Error::Precondition(format!("graph is not a tight {family} graph")));
    }
    let mut current = g.clone();
    // reverse moves, each with the key of the edge an H2c split
    let mut steps: Vec<(Move, Option<Edge>)> = Vec::new();
    while !is_base(&current, family) {
        let next = reverse_step(&current, family)?;
        let Some((mv, h)) = next else {
            return Err(Error::Internal(format!(
                "no family-preserving reverse move on a tight {family} graph with {} vertices",
                current.vertex_count()
            )));
        };
        let split_edge = match &mv {
            Move::H2c { split, .. } => Some(h.edge(*split).cloned().expect("split edge exists")),
            _ => None,
        };
        steps.push((mv, split_edge));
        current = h;
    }
    let base = ColoredGraph::from_text(&current.to_text())?;
    let mut replay = base.clone();
    let mut moves = Vec::with_capacity(steps.len());
    for (mv, split_edge) in steps.into_iter().rev() {
        let mv = match (mv, split_edge) {
            (Move::H2c { n, color_a, color_b, c, color_c, .. }, Some(edge)) => {
                resolve_split(&replay, &edge, n, color_a, color_b, c, color_c)?
            }
            (mv, _) => mv,
        };
        replay = apply_move(&replay, &mv)?;
        moves.push(mv);
    }
    if !replay.same_up_to_orientation(g) {
        return Err(Error::Internal("certificate replay does not reproduce the input".into()));
    }
    Ok(Certificate { family, base, moves })
}

fn reverse_step(g: &ColoredGraph, family: Family) -> Result<Option<(Move, ColoredGraph)>> {
    for &v in g.vertices() {
        if g.degree(v) > 3 {
            continue;
        }
        let mut candidates = match reverse_candidates(g, v, family) {
            Ok(c) => c,
            Err(Error::NoCandidates(_)) => continue,
            Err(e) => return Err(e),
        };
        candidates.sort_by_key(|(mv, _)| mv.kind());
        for (mv, h) in candidates {
            if step_is_tight(&h, family)? {
                return Ok(Some((mv, h)));
            }
        }
    }
    Ok(None)
}

/// Finds the replayed edge matching `edge` and orients the H2c move to it.
fn resolve_split(
    g: &ColoredGraph,
    edge: &Edge,
    n: VertexId,
    color_a: GroupElem,
    color_b: GroupElem,
    c: VertexId,
    color_c: GroupElem,
) -> Result<Move> {
    let key = edge.normalized_key();
    let found = g
        .edges()
        .iter()
        .find(|e| e.normalized_key() == key)
        .ok_or_else(|| Error::Internal("split edge missing during replay".into()))?;
    let same = found.tail == edge.tail && found.color == edge.color;
    let (color_a, color_b) = if same { (color_a, color_b) } else { (color_b, color_a) };
    Ok(Move::H2c { n, split: found.id, color_a, color_b, c, color_c })
}

/// Replays a certificate, checking the base, every move and the family
/// count of every prefix. Step 0 is the base; step `i` is the i-th move.
pub fn verify_certificate(cert: &Certificate) -> Result<ColoredGraph> {
    verify_certificate_with(cert, Method::Auto)
}

pub fn verify_certificate_with(cert: &Certificate, method: Method) -> Result<ColoredGraph> {
    let invalid = |step: usize, reason: String| Error::CertificateInvalid { step, reason };
    let allowed = allowed_moves(cert.family).map_err(|e| invalid(0, e.to_string()))?;
    if !is_base(&cert.base, cert.family) {
        return Err(invalid(0, format!("not a {} base graph", cert.family)));
    }
    let mut g = cert.base.clone();
    for (i, mv) in cert.moves.iter().enumerate() {
        let step = i + 1;
        if !allowed.contains(&mv.kind()) {
            return Err(invalid(step, format!("{:?} is not allowed for {}", mv.kind(), cert.family)));
        }
        g = apply_move(&g, mv).map_err(|e| invalid(step, e.to_string()))?;
        if !is_family_tight(&g, cert.family, method).map_err(|e| invalid(step, e.to_string()))? {
            return Err(invalid(step, format!("result is not a tight {} graph", cert.family)));
        }
    }
    Ok(g)
}

/// Color pool for random construction: every element of ℤ/k, coordinates in
/// [-2, 2] otherwise.
fn color_pool(spec: GroupSpec) -> Vec<GroupElem> {
    match spec {
        GroupSpec::Cyclic(_) | GroupSpec::CyclicPQ(..) => spec.elements().expect("finite"),
        GroupSpec::FreeRank1 => (-2..=2).map(|x| GroupElem::from_i64(spec, x)).collect(),
        GroupSpec::FreeRank2 => (-2..=2).flat_map(|x| (-2..=2).map(move |y| GroupElem::from_pair(spec, x, y))).collect(),
    }
}

const RETRY_CAP: usize = 10_000;

/// Seeded random certificate with `steps` moves. Each step samples moves
/// until one keeps the graph tight for the family.
pub fn random_construct(family: Family, spec: GroupSpec, steps: usize, seed: u64) -> Result<Certificate> {
    check_family_group(family, spec)?;
    let allowed = allowed_moves(family)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = color_pool(spec);
    let nonzero: Vec<GroupElem> = pool.iter().filter(|c| !c.is_zero()).cloned().collect();
    let pick = |rng: &mut ChaCha8Rng, from: &[GroupElem]| from.choose(rng).expect("nonempty pool").clone();

    let mut base = ColoredGraph::new(spec);
    match family {
        Family::Ross => {
            base.add_vertex(VertexId(0))?;
            base.add_vertex(VertexId(1))?;
            let first = pick(&mut rng, &pool);
            let second = loop {
                let c = pick(&mut rng, &pool);
                if c != first {
                    break c;
                }
            };
            base.add_edge(VertexId(0), VertexId(1), first)?;
            base.add_edge(VertexId(0), VertexId(1), second)?;
        }
        _ => {
            base.add_vertex(VertexId(0))?;
            base.add_edge(VertexId(0), VertexId(0), pick(&mut rng, &nonzero))?;
        }
    }

    let mut g = base.clone();
    let mut moves = Vec::with_capacity(steps);
    for _ in 0..steps {
        let n = g.next_vertex_id();
        let mut accepted = None;
        for _ in 0..RETRY_CAP {
            let vertex = |rng: &mut ChaCha8Rng| *g.vertices().choose(rng).expect("nonempty graph");
            let mv = match allowed.choose(&mut rng).expect("moves") {
                MoveKind::H1c => Move::H1c {
                    n,
                    a: vertex(&mut rng),
                    b: vertex(&mut rng),
                    color_a: pick(&mut rng, &pool),
                    color_b: pick(&mut rng, &pool),
                },
                MoveKind::H1cPrime => Move::H1cPrime {
                    n,
                    a: vertex(&mut rng),
                    color_a: pick(&mut rng, &pool),
                    loop_color: pick(&mut rng, &nonzero),
                },
                MoveKind::H2c => {
                    let split = g.edges()[rng.gen_range(0..g.edge_count())].clone();
                    let color_a = pick(&mut rng, &pool);
                    Move::H2c {
                        n,
                        split: split.id,
                        color_b: color_a.minus(&split.color),
                        color_a,
                        c: vertex(&mut rng),
                        color_c: pick(&mut rng, &pool),
                    }
                }
            };
            let Ok(h) = apply_move(&g, &mv) else { continue };
            if is_family_tight(&h, family, Method::Auto)? {
                accepted = Some((mv, h));
                break;
            }
        }
        let (mv, h) = accepted
            .ok_or_else(|| Error::Generation(format!("no tight {family} move found in {RETRY_CAP} tries")))?;
        moves.push(mv);
        g = h;
    }
    Ok(Certificate { family, base, moves })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sparsity::check_colored_sparsity;

    fn z5(x: i64) -> GroupElem {
        GroupElem::from_i64(GroupSpec::Cyclic(5), x)
    }

    fn cone_base() -> ColoredGraph {
        let mut g = ColoredGraph::with_vertices(GroupSpec::Cyclic(5), 1);
        g.add_edge(VertexId(0), VertexId(0), z5(1)).unwrap();
        g
    }

    fn ross_base() -> ColoredGraph {
        let z2 = GroupSpec::FreeRank2;
        let mut g = ColoredGraph::with_vertices(z2, 2);
        g.add_edge(VertexId(0), VertexId(1), GroupElem::from_pair(z2, 1, 0)).unwrap();
        g.add_edge(VertexId(0), VertexId(1), GroupElem::from_pair(z2, 0, 1)).unwrap();
        g
    }

    #[test]
    fn h1c_on_cone_base() {
        let mv = Move::H1c { n: VertexId(1), a: VertexId(0), b: VertexId(0), color_a: z5(1), color_b: z5(2) };
        let h = apply_move(&cone_base(), &mv).unwrap();
        assert_eq!((h.vertex_count(), h.edge_count()), (2, 3));
        assert!(check_colored_sparsity(&h, Family::ConeLaman).unwrap().tight);
    }

    #[test]
    fn h1c_needs_distinct_parallel_colors() {
        let mv = Move::H1c { n: VertexId(1), a: VertexId(0), b: VertexId(0), color_a: z5(2), color_b: z5(2) };
        assert!(matches!(apply_move(&cone_base(), &mv), Err(Error::InvalidMove(_))));
    }

    #[test]
    fn h1cp_on_cone_base() {
        let mv = Move::H1cPrime { n: VertexId(1), a: VertexId(0), color_a: z5(0), loop_color: z5(1) };
        let h = apply_move(&cone_base(), &mv).unwrap();
        assert_eq!((h.vertex_count(), h.edge_count()), (2, 3));
        assert!(check_colored_sparsity(&h, Family::ConeLaman).unwrap().tight);
        let zero_loop = Move::H1cPrime { n: VertexId(1), a: VertexId(0), color_a: z5(0), loop_color: z5(0) };
        assert!(matches!(apply_move(&cone_base(), &zero_loop), Err(Error::InvalidMove(_))));
    }

    #[test]
    fn h2c_on_ross_base() {
        let z2 = GroupSpec::FreeRank2;
        let mv = Move::H2c {
            n: VertexId(2),
            split: EdgeId(0),
            color_a: GroupElem::from_pair(z2, 1, 0),
            color_b: GroupElem::zero(z2),
            c: VertexId(0),
            color_c: GroupElem::zero(z2),
        };
        let h = apply_move(&ross_base(), &mv).unwrap();
        assert_eq!((h.vertex_count(), h.edge_count()), (3, 4));
        assert!(check_colored_sparsity(&h, Family::Ross).unwrap().tight);
    }

    #[test]
    fn h2c_checks_split_identity_and_references() {
        let z2 = GroupSpec::FreeRank2;
        let bad = Move::H2c {
            n: VertexId(2),
            split: EdgeId(0),
            color_a: GroupElem::zero(z2),
            color_b: GroupElem::zero(z2),
            c: VertexId(1),
            color_c: GroupElem::zero(z2),
        };
        assert!(matches!(apply_move(&ross_base(), &bad), Err(Error::InvalidMove(_))));
        let dangling = Move::H2c {
            n: VertexId(2),
            split: EdgeId(9),
            color_a: GroupElem::zero(z2),
            color_b: GroupElem::zero(z2),
            c: VertexId(1),
            color_c: GroupElem::zero(z2),
        };
        assert!(matches!(apply_move(&ross_base(), &dangling), Err(Error::Usage(_))));
    }

    #[test]
    fn reverse_of_degree_two_is_deletion() {
        let mv = Move::H1c { n: VertexId(1), a: VertexId(0), b: VertexId(0), color_a: z5(1), color_b: z5(2) };
        let h = apply_move(&cone_base(), &mv).unwrap();
        let cands = reverse_candidates(&h, VertexId(1), Family::ConeLaman).unwrap();
        assert_eq!(cands.len(), 1);
        assert_eq!(cands[0].0, mv);
        assert!(cands[0].1.same_up_to_orientation(&cone_base()));
    }

    #[test]
    fn reverse_h2c_offers_three_pairs() {
        let spec = GroupSpec::Cyclic(7);
        let c = |x| GroupElem::from_i64(spec, x);
        let mut g = ColoredGraph::with_vertices(spec, 4);
        g.add_edge(VertexId(0), VertexId(3), c(1)).unwrap();
        g.add_edge(VertexId(3), VertexId(1), c(2)).unwrap();
        g.add_edge(VertexId(2), VertexId(3), c(4)).unwrap();
        let cands = reverse_candidates(&g, VertexId(3), Family::ConeLaman).unwrap();
        let added: Vec<(VertexId, VertexId, GroupElem)> = cands
            .iter()
            .map(|(mv, h)| match mv {
                Move::H2c { split, .. } => {
                    let e = h.edge(*split).unwrap();
                    (e.tail, e.head, e.color.clone())
                }
                _ => panic!("expected h2c"),
            })
            .collect();
        // oriented sums through vertex 3: into-colors are 1, -2, 4
        assert_eq!(
            added,
            vec![
                (VertexId(0), VertexId(1), c(3)),
                (VertexId(0), VertexId(2), c(4)),
                (VertexId(1), VertexId(2), c(1)),
            ]
        );
    }

    #[test]
    fn reverse_h2c_round_trip() {
        let z2 = GroupSpec::FreeRank2;
        let mv = Move::H2c {
            n: VertexId(2),
            split: EdgeId(0),
            color_a: GroupElem::from_pair(z2, 1, 0),
            color_b: GroupElem::zero(z2),
            c: VertexId(0),
            color_c: GroupElem::zero(z2),
        };
        let h = apply_move(&ross_base(), &mv).unwrap();
        let cands = reverse_candidates(&h, VertexId(2), Family::Ross).unwrap();
        assert!(cands.iter().any(|(_, g)| g.same_up_to_orientation(&ross_base())));
    }

    #[test]
    fn base_detection() {
        let mut g = ColoredGraph::with_vertices(GroupSpec::Cyclic(5), 1);
        g.add_edge(VertexId(0), VertexId(0), z5(2)).unwrap();
        assert!(is_base(&g, Family::ConeLaman));
        let z2 = GroupSpec::FreeRank2;
        let mut r = ColoredGraph::with_vertices(z2, 2);
        r.add_edge(VertexId(0), VertexId(1), GroupElem::from_pair(z2, 1, 0)).unwrap();
        r.add_edge(VertexId(0), VertexId(1), GroupElem::from_pair(z2, 1, 0)).unwrap();
        assert!(!is_base(&r, Family::Ross));
        assert!(is_base(&ross_base(), Family::Ross));
        let z = GroupSpec::FreeRank1;
        let mut c = ColoredGraph::with_vertices(z, 1);
        c.add_edge(VertexId(0), VertexId(0), GroupElem::zero(z)).unwrap();
        assert!(!is_base(&c, Family::CylinderLaman));
    }

    #[test]
    fn deconstruct_base_is_empty() {
        let cert = deconstruct(&cone_base(), Family::ConeLaman).unwrap();
        assert!(cert.moves.is_empty());
        assert!(verify_certificate(&cert).unwrap().same_up_to_orientation(&cone_base()));
    }

    #[test]
    fn deconstruct_one_h2c() {
        let z2 = GroupSpec::FreeRank2;
        let mv = Move::H2c {
            n: VertexId(2),
            split: EdgeId(0),
            color_a: GroupElem::from_pair(z2, 1, 0),
            color_b: GroupElem::zero(z2),
            c: VertexId(0),
            color_c: GroupElem::zero(z2),
        };
        let h = apply_move(&ross_base(), &mv).unwrap();
        let cert = deconstruct(&h, Family::Ross).unwrap();
        assert_eq!(cert.moves.len(), 1);
        assert!(verify_certificate(&cert).unwrap().same_up_to_orientation(&h));
    }

    #[test]
    fn deconstruct_rejects_non_tight() {
        let mut g = cone_base();
        g.add_vertex(VertexId(1)).unwrap();
        assert!(matches!(deconstruct(&g, Family::ConeLaman), Err(Error::Precondition(_))));
    }

    #[test]
    fn ross_rejects_lollipop() {
        let z2 = GroupSpec::FreeRank2;
        let cert = Certificate {
            family: Family::Ross,
            base: ross_base(),
            moves: vec![Move::H1cPrime {
                n: VertexId(2),
                a: VertexId(0),
                color_a: GroupElem::zero(z2),
                loop_color: GroupElem::from_pair(z2, 1, 0),
            }],
        };
        assert!(matches!(verify_certificate(&cert), Err(Error::CertificateInvalid { step: 1, .. })));
    }

    #[test]
    fn random_construction_is_deterministic() {
        let spec = GroupSpec::Cyclic(5);
        let a = random_construct(Family::ConeLaman, spec, 5, 42).unwrap();
        let b = random_construct(Family::ConeLaman, spec, 5, 42).unwrap();
        assert_eq!(a, b);
        let empty = random_construct(Family::ConeLaman, spec, 0, 1).unwrap();
        assert!(empty.moves.is_empty());
        assert!(is_base(&empty.base, Family::ConeLaman));
    }

    #[test]
    fn hand_built_cone_certificate() {
        let cert = Certificate {
            family: Family::ConeLaman,
            base: cone_base(),
            moves: vec![
                Move::H1c { n: VertexId(1), a: VertexId(0), b: VertexId(0), color_a: z5(0), color_b: z5(2) },
                Move::H1cPrime { n: VertexId(2), a: VertexId(1), color_a: z5(3), loop_color: z5(4) },
                Move::H2c { n: VertexId(3), split: EdgeId(1), color_a: z5(1), color_b: z5(1), c: VertexId(2), color_c: z5(0) },
            ],
        };
        let g = verify_certificate(&cert).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 7));
        assert!(check_colored_sparsity(&g, Family::ConeLaman).unwrap().tight);
    }
}
