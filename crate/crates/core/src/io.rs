//! JSON file formats and Graphviz export.
//!
//! Every writer emits compact JSON with a fixed key order, so parsing and re-emitting a
//! document reproduces it byte for byte. Rationals are strings `"p/q"` in lowest terms.

use serde_json::{json, Map as JsonMap, Value};

use crate::affine::uncross_covers;
use crate::combinat::{all_matchings, format_subset, parse_subset, NCPartition};
use crate::electroid::{Electroid, PartitionNecklace};
use crate::error::{Error, Result};
use crate::grassmann::{BEdge, Color, PlanarBipartiteGraph, PluckerVector};
use crate::network::{nc_index, CactusNetwork, Edge, GroveVector, Vertex};
use crate::rat::{format_q, parse_q};
use crate::temperley::{concordance_triplets, Role, TemperleyGraph};

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn parse_value(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| perr(e.to_string()))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| perr(format!("missing field {key:?}")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| perr(format!("{what} must be a nonnegative integer")))
}

fn as_str<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| perr(format!("{what} must be a string")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| perr(format!("{what} must be an array")))
}

fn as_object<'a>(v: &'a Value, what: &str) -> Result<&'a JsonMap<String, Value>> {
    v.as_object().ok_or_else(|| perr(format!("{what} must be an object")))
}

fn index_list(v: &Value, what: &str) -> Result<Vec<usize>> {
    as_array(v, what)?.iter().map(|x| as_usize(x, what)).collect()
}

fn vertex_json(v: &Vertex) -> Value {
    match *v {
        Vertex::Bar(p) => json!({ "b": p }),
        Vertex::Inner(j) => json!({ "v": j + 1 }),
    }
}

fn parse_vertex(v: &Value) -> Result<Vertex> {
    let obj = as_object(v, "vertex")?;
    match (obj.get("b"), obj.get("v"), obj.len()) {
        (Some(b), None, 1) => Ok(Vertex::Bar(as_usize(b, "b")?)),
        (None, Some(j), 1) => match as_usize(j, "v")? {
            0 => Err(perr("interior vertices are numbered from 1")),
            j => Ok(Vertex::Inner(j - 1)),
        },
        _ => Err(perr(format!("bad vertex {v}"))),
    }
}

fn rotation_lookup<'a>(rot: &'a JsonMap<String, Value>, key: &str) -> Result<Vec<usize>> {
    match rot.get(key) {
        Some(v) => index_list(v, key),
        None => Ok(Vec::new()),
    }
}

pub fn network_to_json(net: &CactusNetwork) -> String {
    let shape: Vec<Value> = net.shape.parts().iter().map(|p| json!(p)).collect();
    let edges: Vec<Value> = net
        .edges
        .iter()
        .map(|e| json!({ "u": vertex_json(&e.u), "v": vertex_json(&e.v), "w": format_q(&e.w) }))
        .collect();
    let mut rot = JsonMap::new();
    for (p, r) in net.bar_rotation.iter().enumerate() {
        rot.insert(format!("b{}", p + 1), json!(r));
    }
    for (j, r) in net.inner_rotation.iter().enumerate() {
        rot.insert(format!("v{}", j + 1), json!(r));
    }
    json!({ "n": net.n, "shape": shape, "interior": net.interior, "edges": edges, "rotation": rot }).to_string()
}

/// Parses and validates a network document.
pub fn network_from_json(text: &str) -> Result<CactusNetwork> {
    let v = parse_value(text)?;
    let n = as_usize(field(&v, "n")?, "n")?;
    let parts = as_array(field(&v, "shape")?, "shape")?
        .iter()
        .map(|p| index_list(p, "shape part"))
        .collect::<Result<Vec<_>>>()?;
    let shape = NCPartition::new(n, parts).map_err(|e| perr(e.to_string()))?;
    let interior = as_usize(field(&v, "interior")?, "interior")?;
    let edges = as_array(field(&v, "edges")?, "edges")?
        .iter()
        .map(|e| {
            Ok(Edge {
                u: parse_vertex(field(e, "u")?)?,
                v: parse_vertex(field(e, "v")?)?,
                w: parse_q(as_str(field(e, "w")?, "w")?)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let rot = as_object(field(&v, "rotation")?, "rotation")?;
    for key in rot.keys() {
        let ok = |prefix: char, bound: usize| {
            key.strip_prefix(prefix).and_then(|s| s.parse::<usize>().ok()).is_some_and(|i| (1..=bound).contains(&i))
        };
        if !ok('b', n) && !ok('v', interior) {
            return Err(perr(format!("unknown rotation key {key:?}")));
        }
    }
    let bar_rotation = (1..=n).map(|p| rotation_lookup(rot, &format!("b{p}"))).collect::<Result<Vec<_>>>()?;
    let inner_rotation =
        (1..=interior).map(|j| rotation_lookup(rot, &format!("v{j}"))).collect::<Result<Vec<_>>>()?;
    for r in bar_rotation.iter().chain(&inner_rotation) {
        if let Some(&e) = r.iter().find(|&&e| e >= edges.len()) {
            return Err(perr(format!("rotation mentions edge {e}, but there are {} edges", edges.len())));
        }
    }
    let net = CactusNetwork { n, shape, interior, edges, bar_rotation, inner_rotation };
    net.validate().map_err(|e| perr(e.to_string()))?;
    Ok(net)
}

/// Nonzero coordinates only, keyed by subsets in lexicographic order.
pub fn plucker_to_json(p: &PluckerVector) -> String {
    let mut coords = JsonMap::new();
    for (s, x) in p.subsets().iter().zip(&p.coords) {
        if !num_traits::Zero::is_zero(x) {
            coords.insert(format_subset(s), json!(format_q(x)));
        }
    }
    json!({ "m": p.m, "k": p.k, "coords": coords }).to_string()
}

pub fn plucker_from_json(text: &str) -> Result<PluckerVector> {
    let v = parse_value(text)?;
    let m = as_usize(field(&v, "m")?, "m")?;
    let k = as_usize(field(&v, "k")?, "k")?;
    if k > m {
        return Err(perr(format!("k = {k} exceeds m = {m}")));
    }
    let mut p = PluckerVector::zero(m, k);
    for (key, x) in as_object(field(&v, "coords")?, "coords")? {
        let s = parse_subset(key)?;
        if s.len() != k || s.iter().any(|&i| i == 0 || i > m) {
            return Err(perr(format!("{key:?} is not a {k}-subset of [{m}]")));
        }
        p.set(&s, parse_q(as_str(x, key)?)?);
    }
    Ok(p)
}

/// Nonzero coordinates only, keyed by canonical partition strings in canonical order.
pub fn grove_to_json(l: &GroveVector) -> String {
    let idx = nc_index(l.n);
    let mut coords = JsonMap::new();
    for (s, x) in idx.list.iter().zip(&l.coords) {
        if !num_traits::Zero::is_zero(x) {
            coords.insert(s.to_string(), json!(format_q(x)));
        }
    }
    json!({ "n": l.n, "coords": coords }).to_string()
}

pub fn grove_from_json(text: &str) -> Result<GroveVector> {
    let v = parse_value(text)?;
    let n = as_usize(field(&v, "n")?, "n")?;
    if n == 0 {
        return Err(perr("n must be positive"));
    }
    let mut l = GroveVector::zero(n);
    for (key, x) in as_object(field(&v, "coords")?, "coords")? {
        let s = NCPartition::parse(key)?;
        if s.n() != n {
            return Err(perr(format!("{key:?} is not a partition of [{n}]")));
        }
        l.set(&s, parse_q(as_str(x, key)?)?);
    }
    Ok(l)
}

fn bnode_json(g: &PlanarBipartiteGraph, x: usize) -> Value {
    if g.is_boundary(x) {
        json!({ "b": x + 1 })
    } else {
        json!({ "v": x - g.m + 1 })
    }
}

fn parse_bnode(g_m: usize, v: &Value) -> Result<usize> {
    Ok(match parse_vertex(v)? {
        Vertex::Bar(b) if (1..=g_m).contains(&b) => b - 1,
        Vertex::Bar(b) => return Err(perr(format!("boundary vertex {b} out of range"))),
        Vertex::Inner(j) => g_m + j,
    })
}

pub fn bipartite_to_json(g: &PlanarBipartiteGraph) -> String {
    let color: Vec<String> = g.colors.iter().map(|c| c.to_string()).collect();
    let edges: Vec<Value> = g
        .edges
        .iter()
        .map(|e| json!({ "u": bnode_json(g, e.u), "v": bnode_json(g, e.v), "w": format_q(&e.w) }))
        .collect();
    let mut rot = JsonMap::new();
    for (j, r) in g.rotation.iter().enumerate() {
        rot.insert(format!("v{}", j + 1), json!(r));
    }
    json!({ "m": g.m, "interior": g.colors.len(), "color": color, "edges": edges, "rotation": rot }).to_string()
}

pub fn bipartite_from_json(text: &str) -> Result<PlanarBipartiteGraph> {
    let v = parse_value(text)?;
    let m = as_usize(field(&v, "m")?, "m")?;
    let interior = as_usize(field(&v, "interior")?, "interior")?;
    let colors = as_array(field(&v, "color")?, "color")?
        .iter()
        .map(|c| match as_str(c, "color")? {
            "black" => Ok(Color::Black),
            "white" => Ok(Color::White),
            other => Err(perr(format!("unknown colour {other:?}"))),
        })
        .collect::<Result<Vec<_>>>()?;
    if colors.len() != interior {
        return Err(perr("one colour per interior vertex is required"));
    }
    let edges = as_array(field(&v, "edges")?, "edges")?
        .iter()
        .map(|e| {
            Ok(BEdge {
                u: parse_bnode(m, field(e, "u")?)?,
                v: parse_bnode(m, field(e, "v")?)?,
                w: parse_q(as_str(field(e, "w")?, "w")?)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let rot = as_object(field(&v, "rotation")?, "rotation")?;
    let rotation = (1..=interior).map(|j| rotation_lookup(rot, &format!("v{j}"))).collect::<Result<Vec<_>>>()?;
    let g = PlanarBipartiteGraph { m, colors, edges, rotation };
    g.validate().map_err(|e| perr(e.to_string()))?;
    Ok(g)
}

/// The 0/1 matrix `A` with rows `(n-1)`-subsets of `[2n]` and columns `NC_n`, as sparse triplets.
pub fn concordance_triplets_json(n: usize) -> String {
    let idx = nc_index(n);
    let rows = crate::combinat::k_subsets(2 * n, n - 1);
    let row_of = |s: &[usize]| rows.iter().position(|r| r == s).expect("subset of the right size");
    let entries: Vec<Value> =
        concordance_triplets(n).iter().map(|(s, sigma)| json!([row_of(s), idx.index[sigma], 1])).collect();
    let row_names: Vec<String> = rows.iter().map(|r| format_subset(r)).collect();
    let col_names: Vec<String> = idx.list.iter().map(|s| s.to_string()).collect();
    json!({ "n": n, "rows": row_names, "cols": col_names, "entries": entries }).to_string()
}

pub fn electroid_to_json(e: &Electroid) -> String {
    json!(e.strings()).to_string()
}

pub fn necklace_to_json(neck: &PartitionNecklace) -> String {
    let list: Vec<String> = neck.entries.iter().map(|s| s.to_string()).collect();
    json!(list).to_string()
}

pub fn necklace_from_json(text: &str) -> Result<PartitionNecklace> {
    let v = parse_value(text)?;
    let entries = as_array(&v, "necklace")?
        .iter()
        .map(|s| NCPartition::parse(as_str(s, "necklace entry")?))
        .collect::<Result<Vec<_>>>()?;
    if entries.is_empty() || entries.len() % 2 == 1 {
        return Err(perr("a necklace has 2n entries"));
    }
    let n = entries.len() / 2;
    if entries.iter().any(|s| s.n() != n) {
        return Err(perr(format!("every entry must be a partition of [{n}]")));
    }
    Ok(PartitionNecklace { n, entries })
}

pub fn network_dot(net: &CactusNetwork) -> String {
    let mut out = String::from("graph network {\n");
    for (c, part) in net.shape.parts().iter().enumerate() {
        let label: Vec<String> = part.iter().map(|p| format!("b{p}")).collect();
        out.push_str(&format!("  k{c} [shape=box, label=\"{}\"];\n", label.join("=")));
    }
    for j in 0..net.interior {
        out.push_str(&format!("  v{} [shape=circle];\n", j + 1));
    }
    let blocks = net.shape.block_ids();
    let name = |v: &Vertex| match *v {
        Vertex::Bar(p) => format!("k{}", blocks[p]),
        Vertex::Inner(j) => format!("v{}", j + 1),
    };
    for (i, e) in net.edges.iter().enumerate() {
        out.push_str(&format!("  {} -- {} [label=\"e{i}: {}\"];\n", name(&e.u), name(&e.v), format_q(&e.w)));
    }
    out.push_str("}\n");
    out
}

pub fn bipartite_dot(g: &PlanarBipartiteGraph) -> String {
    let mut out = String::from("graph bipartite {\n");
    for x in 0..g.m {
        out.push_str(&format!("  n{x} [shape=box, label=\"{}\"];\n", x + 1));
    }
    for (j, c) in g.colors.iter().enumerate() {
        let fill = match c {
            Color::Black => "black",
            Color::White => "white",
        };
        out.push_str(&format!("  n{} [shape=circle, style=filled, fillcolor={fill}, label=\"\"];\n", g.m + j));
    }
    for e in &g.edges {
        out.push_str(&format!("  n{} -- n{} [label=\"{}\"];\n", e.u, e.v, format_q(&e.w)));
    }
    out.push_str("}\n");
    out
}

/// Like [`bipartite_dot`], with interior vertices labelled by their role in the network.
pub fn temperley_dot(t: &TemperleyGraph) -> String {
    let g = &t.graph;
    let mut out = String::from("graph temperley {\n");
    for x in 0..g.m {
        let label = if x % 2 == 0 { format!("{}", x / 2 + 1) } else { format!("{}~", x / 2 + 1) };
        out.push_str(&format!("  n{x} [shape=box, label=\"{label}\"];\n"));
    }
    for (j, role) in t.roles.iter().enumerate() {
        let (label, fill) = match role {
            Role::Node(v) => (format!("node {v}"), "black"),
            Role::Face(f) => (format!("face {f}"), "gray"),
            Role::EdgeMid(e) => (format!("edge {e}"), "white"),
        };
        let font = if fill == "black" { ", fontcolor=white" } else { "" };
        out.push_str(&format!(
            "  n{} [shape=circle, style=filled, fillcolor={fill}{font}, label=\"{label}\"];\n",
            g.m + j
        ));
    }
    for e in &g.edges {
        out.push_str(&format!("  n{} -- n{} [label=\"{}\"];\n", e.u, e.v, format_q(&e.w)));
    }
    out.push_str("}\n");
    out
}

/// Hasse diagram of the uncrossing order on matchings of `[2n]`, edges pointing down.
pub fn hasse_dot(n: usize) -> String {
    let all = all_matchings(n);
    let mut out = String::from("digraph hasse {\n  rankdir=TB;\n");
    for (i, t) in all.iter().enumerate() {
        out.push_str(&format!("  m{i} [label=\"{t}\"];\n"));
    }
    for (i, t) in all.iter().enumerate() {
        for c in uncross_covers(t) {
            let j = all.iter().position(|x| *x == c).expect("covers are matchings");
            out.push_str(&format!("  m{i} -> m{j};\n"));
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::electroid::{electroid, partition_necklace_of};
    use crate::combinat::Matching;
    use crate::network::{example_network, y_network};
    use crate::rat::{frac, q};
    use crate::temperley::{embed, temperley};

    #[test]
    fn network_round_trip_is_byte_exact() {
        for net in [example_network(), y_network(q(1), frac(2, 3), q(7))] {
            let text = network_to_json(&net);
            let back = network_from_json(&text).unwrap();
            assert_eq!(back, net);
            assert_eq!(network_to_json(&back), text);
        }
    }

    #[test]
    fn network_schema_shape() {
        let text = network_to_json(&y_network(q(1), q(2), q(3)));
        assert_eq!(
            text,
            r#"{"n":3,"shape":[[1],[2],[3]],"interior":1,"edges":[{"u":{"b":1},"v":{"v":1},"w":"1/1"},{"u":{"b":2},"v":{"v":1},"w":"2/1"},{"u":{"b":3},"v":{"v":1},"w":"3/1"}],"rotation":{"b1":[0],"b2":[1],"b3":[2],"v1":[0,1,2]}}"#
        );
    }

    #[test]
    fn y_embedding_json() {
        let p = embed(&y_network(q(1), q(1), q(1)).grove_vector());
        let text = plucker_to_json(&p);
        assert!(text.starts_with(r#"{"m":6,"k":2,"coords":{"1,2":"1/1""#));
        assert!(text.contains(r#""2,4":"3/1""#));
        assert!(text.contains(r#""1,4":"2/1""#));
        let back = plucker_from_json(&text).unwrap();
        assert_eq!(back, p);
        assert_eq!(plucker_to_json(&back), text);
    }

    #[test]
    fn grove_round_trip() {
        let l = y_network(q(1), q(1), q(1)).grove_vector();
        let text = grove_to_json(&l);
        assert!(text.contains(r#""1|2|3":"3/1""#));
        assert!(text.contains(r#""1 2|3":"1/1""#));
        let back = grove_from_json(&text).unwrap();
        assert_eq!(back, l);
        assert_eq!(grove_to_json(&back), text);
    }

    #[test]
    fn bipartite_round_trip() {
        let g = temperley(&example_network()).graph;
        let text = bipartite_to_json(&g);
        let back = bipartite_from_json(&text).unwrap();
        assert_eq!(back, g);
        assert_eq!(bipartite_to_json(&back), text);
    }

    #[test]
    fn necklace_and_electroid_lists() {
        let tau = Matching::parse("(1,4)(2,6)(3,7)(5,8)").unwrap();
        let neck = partition_necklace_of(&tau);
        let text = necklace_to_json(&neck);
        assert_eq!(necklace_from_json(&text).unwrap(), neck);
        let e = electroid(&tau);
        let text = electroid_to_json(&e);
        let back: Vec<String> = serde_json::from_str(&text).unwrap();
        let mut sorted = back.clone();
        sorted.sort();
        assert_eq!(back, sorted);
        assert_eq!(back.len(), e.len());
    }

    #[test]
    fn triplets_match_the_embedding() {
        let v: Value = serde_json::from_str(&concordance_triplets_json(3)).unwrap();
        let entries = v["entries"].as_array().unwrap();
        let cols = v["cols"].as_array().unwrap();
        assert_eq!(cols.len(), 5);
        let rows = v["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 15);
        // every column of A has at least one 1
        for c in 0..cols.len() {
            assert!(entries.iter().any(|t| t[1].as_u64() == Some(c as u64)));
        }
    }

    #[test]
    fn malformed_inputs_are_parse_errors() {
        for bad in [
            "",
            "{}",
            r#"{"n":3,"shape":[[1,2,3]],"interior":0,"edges":[],"rotation":{"q1":[]}}"#,
            r#"{"n":2,"shape":[[1],[2]],"interior":0,"edges":[{"u":{"b":1},"v":{"b":2},"w":"x"}],"rotation":{}}"#,
            r#"{"n":2,"shape":[[1],[2]],"interior":0,"edges":[],"rotation":{"b1":[4]}}"#,
        ] {
            assert!(matches!(network_from_json(bad), Err(Error::Parse(_))), "{bad}");
        }
        assert!(plucker_from_json(r#"{"m":4,"k":2,"coords":{"1,2,3":"1/1"}}"#).is_err());
        assert!(grove_from_json(r#"{"n":3,"coords":{"1 3|2 4":"1/1"}}"#).is_err());
    }

    #[test]
    fn dot_exports_are_well_formed() {
        let net = example_network();
        for dot in [network_dot(&net), temperley_dot(&temperley(&net)), hasse_dot(3)] {
            assert!(dot.ends_with("}\n"));
            assert_eq!(dot.matches('{').count(), 1);
        }
        assert_eq!(hasse_dot(2).matches("->").count(), 2);
    }
}
