//! DOT and JSON export of orbit graphs. Both are byte-deterministic.

use std::fmt::Write;

use serde_json::{json, Map, Value};

use super::OrbitGraph;

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

pub fn export_dot(g: &OrbitGraph) -> String {
    if g.nodes.is_empty() {
        return "digraph {}\n".into();
    }
    let mut out = String::from("digraph {\n");
    for n in &g.nodes {
        let _ = writeln!(out, "  {} [depth={}];", quote(&n.key), n.depth);
    }
    for e in &g.edges {
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(&g.nodes[e.from].key),
            quote(&g.nodes[e.to].key),
            quote(&e.label)
        );
    }
    out.push_str("}\n");
    out
}

pub fn graph_to_json(g: &OrbitGraph) -> Value {
    let mut nodes = Map::new();
    for n in &g.nodes {
        nodes.insert(
            n.key.clone(),
            json!({
                "state": n.payload,
                "depth": n.depth,
                "word": g.word_string(n),
            }),
        );
    }
    let edges: Vec<Value> = g
        .edges
        .iter()
        .map(|e| json!([g.nodes[e.from].key, g.nodes[e.to].key, e.label]))
        .collect();
    json!({
        "meta": {
            "kind": g.meta.kind,
            "seed": g.meta.seed,
            "depth": g.meta.depth,
            "generators": g.meta.generators,
            "node_count": g.nodes.len(),
            "edge_count": g.edges.len(),
            "dedup_hits": g.dedup_hits,
        },
        "nodes": nodes,
        "edges": edges,
    })
}

pub fn export_json(g: &OrbitGraph) -> String {
    serde_json::to_string_pretty(&graph_to_json(g)).expect("JSON values always serialize") + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::explorer::{explore_markov_bound, explore_markov_depth};
    use num_bigint::BigInt;

    #[test]
    fn empty_graph() {
        let g = OrbitGraph::empty("markov", "(3, 3, 3)", vec![]);
        assert_eq!(export_dot(&g), "digraph {}\n");
        let j = graph_to_json(&g);
        assert_eq!(j["nodes"], json!({}));
        assert_eq!(j["edges"], json!([]));
    }

    #[test]
    fn single_node() {
        let g = explore_markov_depth(0, None).unwrap();
        assert_eq!(export_dot(&g), "digraph {\n  \"3,3,3\" [depth=0];\n}\n");
    }

    #[test]
    fn json_schema() {
        let g = explore_markov_bound(&BigInt::from(54), None).unwrap();
        let j = graph_to_json(&g);
        assert_eq!(j["meta"]["node_count"], 4);
        assert_eq!(j["nodes"]["3,3,6"]["state"], json!(["3", "3", "6"]));
        assert_eq!(j["nodes"]["3,3,6"]["word"], "v");
        assert_eq!(j["edges"][0], json!(["3,3,3", "3,3,6", "v"]));
        let text = export_json(&g);
        assert_eq!(text, export_json(&g));
        let back: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(back, j);
    }

    #[test]
    fn quoting() {
        assert_eq!(quote("a\"b"), "\"a\\\"b\"");
    }
}
