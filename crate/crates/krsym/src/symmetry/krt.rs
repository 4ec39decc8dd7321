//! Text format for KR models:
//!
//! ```text
//! # comment
//! vertex <id> height=<decimal> kind=<boundary|extreme|degextreme|saddle|regular> [symmetry=<n>]
//! children <id>: <id> <id> ...
//! root <id>
//! ```
//!
//! The writer is stable: vertices in id order, single spaces, cyclic child
//! order exactly as stored. Phantom vertices are internal and never written.

use std::collections::BTreeMap;

use super::{Height, KrModel, KrVertex, ModelError, VertexKind};

pub fn parse_krt(text: &str) -> Result<KrModel, ModelError> {
    let mut vertex_rows: BTreeMap<usize, KrVertex> = BTreeMap::new();
    let mut child_rows: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut root: Option<usize> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |msg: String| ModelError::Malformed(format!("line {}: {msg}", lineno + 1));
        let mut parts = line.split_whitespace();
        match parts.next().unwrap() {
            "vertex" => {
                let id: usize = parts
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| bad("expected `vertex <id> ...`".into()))?;
                let mut height = None;
                let mut kind = None;
                let mut symmetry = None;
                for field in parts {
                    let (key, value) = field
                        .split_once('=')
                        .ok_or_else(|| bad(format!("expected key=value, found {field:?}")))?;
                    match key {
                        "height" => height = Some(Height::parse(value)?),
                        "kind" => {
                            kind = Some(match value {
                                "boundary" => VertexKind::Boundary,
                                "extreme" => VertexKind::Extreme,
                                "degextreme" => VertexKind::DegenerateExtreme,
                                "saddle" => VertexKind::Saddle,
                                "regular" => VertexKind::Regular,
                                other => return Err(bad(format!("unknown kind {other:?}"))),
                            })
                        }
                        "symmetry" => {
                            symmetry = Some(
                                value
                                    .parse()
                                    .map_err(|_| bad(format!("bad symmetry {value:?}")))?,
                            )
                        }
                        other => return Err(bad(format!("unknown field {other:?}"))),
                    }
                }
                let vert = KrVertex {
                    height: height.ok_or_else(|| bad("missing height".into()))?,
                    kind: kind.ok_or_else(|| bad("missing kind".into()))?,
                    symmetry,
                };
                if vertex_rows.insert(id, vert).is_some() {
                    return Err(bad(format!("duplicate vertex {id}")));
                }
            }
            "children" => {
                let head = parts
                    .next()
                    .ok_or_else(|| bad("expected `children <id>: ...`".into()))?;
                let id: usize = head
                    .trim_end_matches(':')
                    .parse()
                    .map_err(|_| bad(format!("bad id {head:?}")))?;
                let ids: Result<Vec<usize>, _> = parts.map(|s| s.parse::<usize>()).collect();
                let ids = ids.map_err(|_| bad("bad child id".into()))?;
                if child_rows.insert(id, ids).is_some() {
                    return Err(bad(format!("duplicate children row for {id}")));
                }
            }
            "root" => {
                let id: usize = parts
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| bad("expected `root <id>`".into()))?;
                root = Some(id);
            }
            other => return Err(bad(format!("unknown directive {other:?}"))),
        }
    }
    let root = root.ok_or_else(|| ModelError::Malformed("missing `root` line".into()))?;
    let n = vertex_rows
        .keys()
        .max()
        .map(|&m| m + 1)
        .ok_or_else(|| ModelError::Malformed("no vertices".into()))?;
    if vertex_rows.len() != n {
        return Err(ModelError::Malformed(
            "vertex ids must be contiguous from 0".into(),
        ));
    }
    let vertices: Vec<KrVertex> = (0..n).map(|i| vertex_rows.remove(&i).unwrap()).collect();
    let children: Vec<Vec<usize>> = (0..n)
        .map(|i| child_rows.remove(&i).unwrap_or_default())
        .collect();
    if let Some((&id, _)) = child_rows.iter().next() {
        return Err(ModelError::Malformed(format!(
            "children row for unknown vertex {id}"
        )));
    }
    KrModel::new(vertices, children, root)
}

pub fn write_krt(model: &KrModel) -> String {
    let mut out = String::new();
    for v in 0..model.vertex_count() {
        let vert = model.vertex(v);
        if vert.kind == VertexKind::Phantom {
            continue;
        }
        out.push_str(&format!(
            "vertex {v} height={} kind={}",
            vert.height,
            vert.kind.token()
        ));
        if let Some(n) = vert.symmetry {
            out.push_str(&format!(" symmetry={n}"));
        }
        out.push('\n');
    }
    for v in 0..model.vertex_count() {
        if model.vertex(v).kind == VertexKind::Phantom {
            continue;
        }
        let visible: Vec<String> = model
            .children(v)
            .iter()
            .filter(|&&c| model.vertex(c).kind != VertexKind::Phantom)
            .map(|c| c.to_string())
            .collect();
        if !visible.is_empty() {
            out.push_str(&format!("children {v}: {}\n", visible.join(" ")));
        }
    }
    out.push_str(&format!("root {}\n", model.root()));
    out
}
