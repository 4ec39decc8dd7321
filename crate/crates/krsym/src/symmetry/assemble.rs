//! Bottom-up assembly of the symmetry group of a KR model.
//!
//! At a vertex whose cyclic child-code word has length m and rotation
//! order d, the admissible symmetries rotate the children in steps of
//! m/d, so the vertex contributes `(product over one period) wr Zd`.
//! Degenerate extremes enter through their phantom expansion: an index-n
//! extreme owns n identical phantom leaves and contributes `Zn`.

use super::{canonical_code, KrModel, ModelError};
use crate::cyclic::smallest_period;
use crate::rexpr::{normal_form, AtomExpr, GroupExpr};

/// The symmetry group of the model as a normal-form expression over
/// cyclic atoms.
pub fn assemble(model: &KrModel) -> Result<GroupExpr, ModelError> {
    let expanded = model.expand_degenerate()?;
    let raw = assemble_raw(&expanded)?;
    Ok(normal_form(&raw))
}

/// The structured (pre-normal-form) expression; the factor layout mirrors
/// the recursion over the expanded model.
pub fn assemble_raw(model: &KrModel) -> Result<GroupExpr, ModelError> {
    vertex_group(model, model.root())
}

fn vertex_group(model: &KrModel, v: usize) -> Result<GroupExpr, ModelError> {
    let children = model.children(v);
    if children.is_empty() {
        return Ok(GroupExpr::Triv);
    }
    let word: Vec<String> = children
        .iter()
        .map(|&c| canonical_code(model, c))
        .collect();
    let m = word.len();
    let p = smallest_period(&word);
    let d = m / p;
    let mut factors = Vec::with_capacity(p);
    for &c in &children[..p] {
        factors.push(vertex_group(model, c)?);
    }
    let base = match factors.len() {
        1 => factors.pop().unwrap(),
        _ => GroupExpr::Prod(factors),
    };
    if d == 1 {
        return Ok(base);
    }
    Ok(GroupExpr::Wr {
        base: Box::new(base),
        top: Box::new(GroupExpr::Atom(AtomExpr::cyclic(d as u64))),
        degree: d as u64,
    })
}
