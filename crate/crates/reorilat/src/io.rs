//! Text, JSON, and DOT formats. Vertices are 1-based in every external
//! format; the dense 0-based indexing is internal.

use crate::bits::{ArcSet, VertexSet};
use crate::congruence::PartialReorientation;
use crate::dag::Dag;
use crate::error::{Error, Result};
use crate::geom::polytope::{HRep, VPolytope};
use crate::geom::Q;
use crate::reorient::ArLattice;
use crate::rope::Rope;
use num_traits::One;
use serde_json::{json, Value};
use std::fmt::Write as _;

// -- graphs --

/// First line `n`, then one `u v` line per arc (1-based).
pub fn parse_graph_text(input: &str) -> Result<Dag> {
    let mut lines = input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (first_no, first) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "empty input".into(),
    })?;
    let n: usize = first.parse().map_err(|_| Error::Parse {
        line: first_no,
        msg: format!("expected vertex count, found {first:?}"),
    })?;
    let mut arcs = Vec::new();
    for (no, line) in lines {
        let mut it = line.split_whitespace();
        let (u, v) = (it.next(), it.next());
        let bad = || Error::Parse {
            line: no,
            msg: format!("expected `u v`, found {line:?}"),
        };
        let u: usize = u.ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let v: usize = v.ok_or_else(bad)?.parse().map_err(|_| bad())?;
        if it.next().is_some() {
            return Err(bad());
        }
        if u == 0 || v == 0 {
            return Err(Error::Parse {
                line: no,
                msg: "vertices are 1-based".into(),
            });
        }
        arcs.push((u - 1, v - 1));
    }
    Dag::new(n, arcs)
}

pub fn graph_to_text(d: &Dag) -> String {
    let mut out = format!("{}\n", d.n());
    for &(u, v) in d.arcs() {
        let _ = writeln!(out, "{} {}", u + 1, v + 1);
    }
    out
}

pub fn graph_to_json(d: &Dag) -> Value {
    json!({
        "n": d.n(),
        "arcs": d.arcs().iter().map(|&(u, v)| json!([u + 1, v + 1])).collect::<Vec<_>>(),
    })
}

pub fn parse_graph_json(input: &str) -> Result<Dag> {
    let value: Value = serde_json::from_str(input).map_err(|e| Error::Parse {
        line: e.line(),
        msg: e.to_string(),
    })?;
    let bad = |msg: &str| Error::Parse {
        line: 0,
        msg: msg.into(),
    };
    let n = value["n"].as_u64().ok_or_else(|| bad("missing `n`"))? as usize;
    let arcs = value["arcs"]
        .as_array()
        .ok_or_else(|| bad("missing `arcs`"))?
        .iter()
        .map(|a| {
            let pair = a.as_array().filter(|p| p.len() == 2);
            let pair = pair.ok_or_else(|| bad("arcs must be pairs"))?;
            let u = pair[0].as_u64().ok_or_else(|| bad("bad arc"))? as usize;
            let v = pair[1].as_u64().ok_or_else(|| bad("bad arc"))? as usize;
            if u == 0 || v == 0 {
                return Err(bad("vertices are 1-based"));
            }
            Ok((u - 1, v - 1))
        })
        .collect::<Result<Vec<_>>>()?;
    Dag::new(n, arcs)
}

pub fn graph_to_dot(d: &Dag) -> String {
    let mut out = String::from("digraph {\n  rankdir=LR;\n");
    for v in 0..d.n() {
        let _ = writeln!(out, "  v{};", v + 1);
    }
    for &(u, v) in d.arcs() {
        let _ = writeln!(out, "  v{} -> v{};", u + 1, v + 1);
    }
    out.push_str("}\n");
    out
}

// -- reorientations and posets --

fn reversed_list(e: ArcSet) -> Vec<usize> {
    e.iter().collect()
}

/// Elements as sorted arc-index lists, covers as index pairs.
pub fn lattice_to_json(ar: &ArLattice) -> Value {
    json!({
        "graph": graph_to_json(ar.dag()),
        "elements": (0..ar.len())
            .map(|i| json!(reversed_list(ar.reversed(i))))
            .collect::<Vec<_>>(),
        "covers": ar.covers()
            .map(|c| json!([c.lo, c.hi, c.arc]))
            .collect::<Vec<_>>(),
    })
}

/// Hasse diagram with one node per reorientation. Arcs of the underlying
/// graph color the cover edges; node labels list the reorientation with
/// reversed arcs marked.
pub fn hasse_to_dot(ar: &ArLattice) -> String {
    let d = ar.dag();
    let palette = [
        "firebrick",
        "royalblue",
        "forestgreen",
        "darkorange",
        "purple",
        "teal",
        "saddlebrown",
        "deeppink",
        "gray25",
        "olive",
    ];
    let mut out = String::from("digraph {\n  rankdir=BT;\n  node [shape=box];\n");
    for i in 0..ar.len() {
        let label: Vec<String> = (0..d.arc_count())
            .map(|id| {
                let (u, v) = d.arc(id);
                if ar.reversed(i).contains(id) {
                    format!("{}<-{}", u + 1, v + 1)
                } else {
                    format!("{}->{}", u + 1, v + 1)
                }
            })
            .collect();
        let _ = writeln!(out, "  e{} [label=\"{}\"];", i, label.join(" "));
    }
    for c in ar.covers() {
        let _ = writeln!(
            out,
            "  e{} -> e{} [color={}];",
            c.lo,
            c.hi,
            palette[c.arc as usize % palette.len()]
        );
    }
    out.push_str("}\n");
    out
}

// -- ropes and diagrams --

fn vertex_list(s: VertexSet) -> String {
    s.iter()
        .map(|w| (w + 1).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// `u v | d1 d2 ... | n1 n2 ...` with 1-based vertices.
pub fn rope_to_text(r: &Rope) -> String {
    format!(
        "{} {} | {} | {}",
        r.u + 1,
        r.v + 1,
        vertex_list(r.down),
        vertex_list(r.up)
    )
    .trim_end()
    .to_string()
}

pub fn parse_rope(input: &str) -> Result<Rope> {
    let parts: Vec<&str> = input.split('|').collect();
    let bad = |msg: String| Error::Parse { line: 1, msg };
    if parts.len() != 3 {
        return Err(bad(format!("expected `u v | down | up`, found {input:?}")));
    }
    let head: Vec<usize> = parts[0]
        .split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| bad(format!("bad vertex {t:?}")))
        })
        .collect::<Result<_>>()?;
    let [u, v] = head[..] else {
        return Err(bad("expected two endpoints".into()));
    };
    let set = |s: &str| -> Result<VertexSet> {
        let mut out = VertexSet::EMPTY;
        for t in s.split_whitespace() {
            let w: usize = t.parse().map_err(|_| bad(format!("bad vertex {t:?}")))?;
            if w == 0 {
                return Err(bad("vertices are 1-based".into()));
            }
            out.insert(w - 1);
        }
        Ok(out)
    };
    if u == 0 || v == 0 {
        return Err(bad("vertices are 1-based".into()));
    }
    Ok(Rope {
        u: u - 1,
        v: v - 1,
        down: set(parts[1])?,
        up: set(parts[2])?,
    })
}

pub fn rope_to_json(r: &Rope) -> Value {
    json!({
        "u": r.u + 1,
        "v": r.v + 1,
        "down": r.down.iter().map(|w| w + 1).collect::<Vec<_>>(),
        "up": r.up.iter().map(|w| w + 1).collect::<Vec<_>>(),
    })
}

/// One rope per line.
pub fn diagram_to_text(ropes: &[Rope]) -> String {
    let mut out = String::new();
    for r in ropes {
        let _ = writeln!(out, "{}", rope_to_text(r));
    }
    out
}

pub fn parse_diagram(input: &str) -> Result<Vec<Rope>> {
    input
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(parse_rope)
        .collect()
}

pub fn partial_to_json(d: &Dag, p: &PartialReorientation) -> Value {
    json!(p
        .oriented_arcs(d)
        .iter()
        .map(|&(t, h)| json!([t + 1, h + 1]))
        .collect::<Vec<_>>())
}

// -- rational geometry --

pub fn q_to_string(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// One vertex per line, coordinates space-separated, rationals as `p/q`.
pub fn vpolytope_to_text(p: &VPolytope) -> String {
    let mut out = String::new();
    for v in p.vertices() {
        let coords: Vec<String> = v.iter().map(q_to_string).collect();
        let _ = writeln!(out, "{}", coords.join(" "));
    }
    out
}

pub fn vpolytope_to_json(p: &VPolytope) -> Value {
    json!(p
        .vertices()
        .iter()
        .map(|v| json!(v.iter().map(q_to_string).collect::<Vec<_>>()))
        .collect::<Vec<_>>())
}

/// Equalities as `a1 ... an = c`, inequalities as `a1 ... an >= c`.
pub fn hrep_to_text(h: &HRep) -> String {
    let mut out = String::new();
    let row = |normal: &[Q], rhs: &Q, op: &str| {
        let coords: Vec<String> = normal.iter().map(q_to_string).collect();
        format!("{} {} {}", coords.join(" "), op, q_to_string(rhs))
    };
    for (n, c) in &h.equalities {
        let _ = writeln!(out, "{}", row(n, c, "="));
    }
    for (n, c) in &h.inequalities {
        let _ = writeln!(out, "{}", row(n, c, ">="));
    }
    out
}

pub fn hrep_to_json(h: &HRep) -> Value {
    let side = |rows: &[(Vec<Q>, Q)]| {
        rows.iter()
            .map(|(n, c)| {
                json!({
                    "normal": n.iter().map(q_to_string).collect::<Vec<_>>(),
                    "rhs": q_to_string(c),
                })
            })
            .collect::<Vec<_>>()
    };
    json!({
        "equalities": side(&h.equalities),
        "inequalities": side(&h.inequalities),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dag::testgraphs::*;
    use proptest::prelude::*;

    #[test]
    fn graph_text_roundtrip() {
        let d = t1();
        let text = graph_to_text(&d);
        assert_eq!(parse_graph_text(&text).unwrap(), d);
        assert_eq!(text, "4\n1 2\n1 3\n2 3\n3 4\n");
    }

    #[test]
    fn graph_json_roundtrip() {
        let d = c4();
        let js = graph_to_json(&d).to_string();
        assert_eq!(parse_graph_json(&js).unwrap(), d);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        match parse_graph_text("3\n1 2\n1 bad") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_graph_text("").is_err());
        assert!(parse_graph_text("2\n0 1").is_err());
    }

    #[test]
    fn rope_text_roundtrip() {
        let r = Rope {
            u: 0,
            v: 2,
            down: VertexSet::singleton(1),
            up: VertexSet::EMPTY,
        };
        let text = rope_to_text(&r);
        assert_eq!(text, "1 3 | 2 |");
        assert_eq!(parse_rope(&text).unwrap(), r);
        let diag = diagram_to_text(&[r]);
        assert_eq!(parse_diagram(&diag).unwrap(), vec![r]);
    }

    #[test]
    fn rational_formatting() {
        use crate::geom::{qi, qr};
        assert_eq!(q_to_string(&qi(3)), "3");
        assert_eq!(q_to_string(&qr(-1, 2)), "-1/2");
    }

    proptest! {
        /// Serialization round-trip is exact on arbitrary small dags.
        #[test]
        fn text_roundtrip_on_random_dags(n in 1usize..6, mask in 0u64..1 << 15) {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .collect();
            let arcs: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|&(k, _)| mask >> k & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            let d = Dag::new(n, arcs).unwrap();
            prop_assert_eq!(parse_graph_text(&graph_to_text(&d)).unwrap(), d.clone());
            prop_assert_eq!(parse_graph_json(&graph_to_json(&d).to_string()).unwrap(), d);
        }
    }
}
