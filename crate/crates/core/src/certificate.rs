//! Text form of construction certificates.
//!
//! ```text
//! family cone
//! begin base
//! group Z/5
//! vertices 1
//! edge 0 0 1
//! end base
//! h1c n=1 a=0 b=0 ca=1 cb=2
//! h1cp n=2 a=1 ca=0 loop=3
//! h2c n=3 split=1 can=1 cbn=1 c=2 ccn=0
//! ```

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{parse_graph_lines, strip_comment, ColoredGraph, EdgeId, VertexId};
use crate::group::{GroupElem, GroupSpec};
use crate::henneberg::Move;
use crate::sparsity::Family;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub family: Family,
    pub base: ColoredGraph,
    pub moves: Vec<Move>,
}

impl Certificate {
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn from_text(text: &str) -> Result<Self> {
        text.parse()
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "family {}", self.family)?;
        writeln!(f, "begin base")?;
        f.write_str(&self.base.to_text())?;
        writeln!(f, "end base")?;
        for mv in &self.moves {
            writeln!(f, "{mv}")?;
        }
        Ok(())
    }
}

impl FromStr for Certificate {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let lines: Vec<(usize, &str)> = text.lines().enumerate().map(|(i, l)| (i + 1, l)).collect();
        let perr = |line: usize, message: String| Error::Parse { line, message };
        let mut rest = lines.iter().copied().filter(|(_, l)| !strip_comment(l).is_empty());

        let (no, first) = rest.next().ok_or_else(|| perr(1, "empty certificate".into()))?;
        let family = match strip_comment(first).split_once(char::is_whitespace) {
            Some(("family", name)) => name.trim().parse::<Family>().map_err(|e| perr(no, e.to_string()))?,
            _ => return Err(perr(no, "expected 'family <name>'".into())),
        };
        let (no, begin) = rest.next().ok_or_else(|| perr(no + 1, "expected 'begin base'".into()))?;
        if strip_comment(begin) != "begin base" {
            return Err(perr(no, "expected 'begin base'".into()));
        }
        let mut base_lines = Vec::new();
        let mut closed = false;
        for (no, line) in rest.by_ref() {
            if strip_comment(line) == "end base" {
                closed = true;
                break;
            }
            base_lines.push((no, line));
        }
        if !closed {
            return Err(perr(lines.len(), "missing 'end base'".into()));
        }
        let base = parse_graph_lines(base_lines.into_iter(), 0).map_err(|e| match e {
            Error::Parse { line: 0, message } => perr(no, message),
            other => other,
        })?;
        let moves = rest.map(|(no, line)| parse_move(base.spec(), strip_comment(line), no)).collect::<Result<_>>()?;
        Ok(Certificate { family, base, moves })
    }
}

fn parse_move(spec: GroupSpec, line: &str, no: usize) -> Result<Move> {
    let perr = |message: String| Error::Parse { line: no, message };
    let mut words = line.split_whitespace();
    let kind = words.next().unwrap_or_default();
    let mut fields: HashMap<&str, &str> = HashMap::new();
    for w in words {
        let (k, v) = w.split_once('=').ok_or_else(|| perr(format!("expected key=value, got '{w}'")))?;
        if fields.insert(k, v).is_some() {
            return Err(perr(format!("duplicate field '{k}'")));
        }
    }
    let expected: &[&str] = match kind {
        "h1c" => &["n", "a", "b", "ca", "cb"],
        "h1cp" => &["n", "a", "ca", "loop"],
        "h2c" => &["n", "split", "can", "cbn", "c", "ccn"],
        other => return Err(perr(format!("unknown move '{other}'"))),
    };
    if let Some(extra) = fields.keys().find(|k| !expected.contains(k)) {
        return Err(perr(format!("unexpected field '{extra}' for {kind}")));
    }
    let get = |k: &str| fields.get(k).copied().ok_or_else(|| perr(format!("{kind} needs '{k}='")));
    let id = |k: &str| -> Result<u32> { get(k)?.parse().map_err(|_| perr(format!("bad integer for '{k}'"))) };
    let vertex = |k: &str| id(k).map(VertexId);
    let color = |k: &str| GroupElem::parse(spec, get(k)?).map_err(|e| perr(e.to_string()));
    Ok(match kind {
        "h1c" => Move::H1c { n: vertex("n")?, a: vertex("a")?, b: vertex("b")?, color_a: color("ca")?, color_b: color("cb")? },
        "h1cp" => Move::H1cPrime { n: vertex("n")?, a: vertex("a")?, color_a: color("ca")?, loop_color: color("loop")? },
        _ => Move::H2c {
            n: vertex("n")?,
            split: EdgeId(id("split")?),
            color_a: color("can")?,
            color_b: color("cbn")?,
            c: vertex("c")?,
            color_c: color("ccn")?,
        },
    })
}
