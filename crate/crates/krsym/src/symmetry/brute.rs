//! Exhaustive oracle for the symmetry group of a KR model: enumerate every
//! vertex bijection that fixes the root and preserves heights, kinds,
//! symmetry indices, adjacency, and the cyclic order of children up to
//! rotation at every vertex (no reflections). Independent of the
//! canonical-code machinery used by the assembler.

use std::collections::BTreeSet;

use super::{KrModel, ModelError};
use crate::groups::{PermGroup, Permutation};

pub const BRUTE_FORCE_VERTEX_LIMIT: usize = 16;

/// The symmetry group as explicit permutations of the expanded model's
/// vertices. Degenerate extremes are expanded first so their framing
/// rotations are counted.
pub fn brute_force_group(model: &KrModel) -> Result<PermGroup, ModelError> {
    let expanded = model.expand_degenerate()?;
    let n = expanded.vertex_count();
    if n > BRUTE_FORCE_VERTEX_LIMIT {
        return Err(ModelError::TooLarge(n));
    }
    let assignments = subtree_maps(&expanded, expanded.root(), expanded.root());
    let mut elements = BTreeSet::new();
    for pairs in assignments {
        let mut images = vec![usize::MAX; n];
        for (v, w) in pairs {
            images[v] = w;
        }
        let p = Permutation::new(images)
            .map_err(|e| ModelError::Invalid(format!("enumeration bug: {e}")))?;
        elements.insert(p);
    }
    Ok(PermGroup::from_elements(n, elements, 1 << 20))
}

/// All structure-preserving bijections from the subtree at `v` onto the
/// subtree at `w`, as assignment lists.
fn subtree_maps(model: &KrModel, v: usize, w: usize) -> Vec<Vec<(usize, usize)>> {
    let a = model.vertex(v);
    let b = model.vertex(w);
    if a.height != b.height || a.kind != b.kind || a.symmetry != b.symmetry {
        return Vec::new();
    }
    let vc = model.children(v);
    let wc = model.children(w);
    if vc.len() != wc.len() {
        return Vec::new();
    }
    if vc.is_empty() {
        return vec![vec![(v, w)]];
    }
    let m = vc.len();
    let mut results = Vec::new();
    for rot in 0..m {
        // Child i of v maps onto child (i + rot) mod m of w.
        let mut per_child: Vec<Vec<Vec<(usize, usize)>>> = Vec::with_capacity(m);
        let mut dead = false;
        for (i, &c) in vc.iter().enumerate() {
            let target = wc[(i + rot) % m];
            let maps = subtree_maps(model, c, target);
            if maps.is_empty() {
                dead = true;
                break;
            }
            per_child.push(maps);
        }
        if dead {
            continue;
        }
        // Cross product over the children's assignment choices.
        let mut combos: Vec<Vec<(usize, usize)>> = vec![vec![(v, w)]];
        for maps in per_child {
            let mut next = Vec::with_capacity(combos.len() * maps.len());
            for combo in &combos {
                for m in &maps {
                    let mut merged = combo.clone();
                    merged.extend(m.iter().copied());
                    next.push(merged);
                }
            }
            combos = next;
        }
        results.extend(combos);
    }
    results
}
