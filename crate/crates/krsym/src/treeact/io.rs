//! Line-oriented text format for tree actions:
//!
//! ```text
//! tree <n>
//! edge <u> <v>
//! gen <image of 0> <image of 1> ... <image of n-1>
//! ```
//!
//! Comment lines start with `#`. Files without `gen` lines describe a bare
//! tree with the trivial action.

use super::{Tree, TreeAction, TreeError};
use crate::groups::{PermGroup, Permutation};

pub fn parse_act(text: &str) -> Result<TreeAction, TreeError> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    let mut gens: Vec<Permutation> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let head = parts.next().unwrap();
        let fields: Vec<&str> = parts.collect();
        let bad = |msg: &str| TreeError::Malformed(format!("line {}: {msg}", lineno + 1));
        match head {
            "tree" => {
                let v = fields
                    .first()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| bad("expected `tree <n>`"))?;
                n = Some(v);
            }
            "edge" => {
                if fields.len() != 2 {
                    return Err(bad("expected `edge <u> <v>`"));
                }
                let u = fields[0].parse().map_err(|_| bad("bad vertex"))?;
                let v = fields[1].parse().map_err(|_| bad("bad vertex"))?;
                edges.push((u, v));
            }
            "gen" => {
                let images: Result<Vec<usize>, _> =
                    fields.iter().map(|s| s.parse::<usize>()).collect();
                let images = images.map_err(|_| bad("bad image list"))?;
                let p = Permutation::new(images)
                    .map_err(|e| bad(&format!("not a permutation: {e}")))?;
                gens.push(p);
            }
            other => return Err(bad(&format!("unknown directive `{other}`"))),
        }
    }
    let n = n.ok_or_else(|| TreeError::Malformed("missing `tree <n>` header".into()))?;
    let tree = Tree::new(n, &edges)?;
    let group = if gens.is_empty() {
        PermGroup::trivial(n)
    } else {
        PermGroup::new(n, gens)?
    };
    TreeAction::new(tree, group)
}

pub fn write_act(act: &TreeAction) -> String {
    let mut out = String::new();
    out.push_str(&format!("tree {}\n", act.tree().vertex_count()));
    for &(u, v) in act.tree().edges() {
        out.push_str(&format!("edge {u} {v}\n"));
    }
    for g in act.group().generators() {
        out.push_str("gen");
        for &i in g.images() {
            out.push_str(&format!(" {i}"));
        }
        out.push('\n');
    }
    out
}
