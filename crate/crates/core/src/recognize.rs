//! One entry point over the two recognition routes: brute-force counting
//! and the pebble game on a finite cover.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, EdgeId};
use crate::lift::{build_lift, lift_violation, reduce_colors};
use crate::pebble::{fundamental_circuit, is_kl_spanning, kl_basis, SparsityParams};
use crate::sparsity::{check_colored_sparsity_with_budget, underlying, Family, Verdict, DEFAULT_BUDGET};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Enumerate subgraphs and evaluate the count directly.
    Brute,
    /// Pebble game on the symmetric cover; needs `2n − 1` edges.
    Lift,
    /// Brute force within the enumeration budget, the cover beyond it.
    Auto,
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brute" => Ok(Method::Brute),
            "lift" => Ok(Method::Lift),
            "auto" => Ok(Method::Auto),
            other => Err(Error::Usage(format!("unknown method '{other}' (brute, lift or auto)"))),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Brute => "brute",
            Method::Lift => "lift",
            Method::Auto => "auto",
        })
    }
}

pub fn check(g: &ColoredGraph, family: Family, method: Method) -> Result<Verdict> {
    check_with_budget(g, family, method, DEFAULT_BUDGET)
}

pub fn check_with_budget(g: &ColoredGraph, family: Family, method: Method, budget: usize) -> Result<Verdict> {
    match method {
        Method::Brute => check_colored_sparsity_with_budget(g, family, budget),
        Method::Lift => check_via_lift(g, family),
        Method::Auto if g.edge_count() <= budget => check_colored_sparsity_with_budget(g, family, budget),
        Method::Auto => check_via_lift(g, family),
    }
}

pub fn is_family_tight(g: &ColoredGraph, family: Family, method: Method) -> Result<bool> {
    Ok(check(g, family, method)?.tight)
}

/// Cover-based verdict for graphs with `2n − 1` edges, where sparse and
/// tight coincide. On failure the witness lists base edges under the
/// obstruction found in the cover (not minimized).
fn check_via_lift(g: &ColoredGraph, family: Family) -> Result<Verdict> {
    if !family.accepts(g.spec()) {
        return Err(Error::Usage(format!("family {family} does not take {} colors", g.spec())));
    }
    if g.edge_count() + 1 != 2 * g.vertex_count() {
        return Err(Error::Precondition(format!(
            "the lift method needs 2n-1 edges ({} vertices, {} edges)",
            g.vertex_count(),
            g.edge_count()
        )));
    }
    let fail = |ids: Vec<EdgeId>| {
        let mut ids = ids;
        ids.sort_unstable();
        ids.dedup();
        Ok(Verdict { sparse: false, tight: false, witness: Some(ids) })
    };
    match family {
        Family::ConeLaman => {
            let sg = build_lift(g)?;
            match lift_violation(&sg) {
                None => Ok(Verdict::tight()),
                Some(circuit) => fail(circuit.into_iter().map(|e| sg.base_edge(e)).collect()),
            }
        }
        Family::CylinderLaman => {
            let reduced = reduce_colors(g)?;
            let sg = build_lift(&reduced.graph)?;
            if let Some(circuit) = lift_violation(&sg) {
                return fail(circuit.into_iter().map(|e| sg.base_edge(e)).collect());
            }
            let params = SparsityParams { k: 2, l: 2 };
            let base = underlying(g);
            if is_kl_spanning(&base, params) {
                return Ok(Verdict::tight());
            }
            // 2n − 1 edges but a (2,2)-basis short of 2n − 2: some edge closes a (2,2)-circuit.
            let basis = kl_basis(&base, params);
            let rejected = (0..g.edge_count()).find(|e| !basis.contains(e)).ok_or_else(|| {
                Error::Internal("short (2,2)-basis with every edge accepted".into())
            })?;
            let circuit = fundamental_circuit(&base, params, &basis, rejected)?;
            fail(circuit.into_iter().map(|i| g.edges()[i].id).collect())
        }
        Family::Ross | Family::ColoredLaman => {
            Err(Error::Usage(format!("the lift method does not apply to family {family}")))
        }
    }
}
