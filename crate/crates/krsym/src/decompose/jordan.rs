//! Decomposition of the full automorphism group of a bare tree over
//! symmetric atoms, via canonical subtree codes: k identical child
//! subtrees contribute a wreath by `Sk`, distinct ones a direct product.
//! Rooting happens at the tree center; a center edge with swappable halves
//! contributes the half-swap wreath by `S2`.

use std::collections::BTreeMap;

use super::DecomposeError;
use crate::rexpr::{normal_form, AtomExpr, GroupExpr};
use crate::treeact::{Tree, TreeError};

/// Expression over symmetric atoms with `order = |Aut(tree)|`.
pub fn jordan_decompose(tree: &Tree) -> Result<GroupExpr, DecomposeError> {
    let n = tree.vertex_count();
    if n == 0 {
        return Ok(GroupExpr::Triv);
    }
    if n > 64 {
        return Err(DecomposeError::Tree(TreeError::TooLarge(n)));
    }
    let centers = tree.center();
    let expr = match centers.as_slice() {
        [c] => vertex_expr(tree, *c, None),
        [u, v] => {
            let left = vertex_expr(tree, *u, Some(*v));
            let right = vertex_expr(tree, *v, Some(*u));
            if code(tree, *u, Some(*v)) == code(tree, *v, Some(*u)) {
                GroupExpr::Wr {
                    base: Box::new(left),
                    top: Box::new(GroupExpr::Atom(AtomExpr::symmetric(2))),
                    degree: 2,
                }
            } else {
                GroupExpr::Prod(vec![left, right])
            }
        }
        _ => unreachable!("a tree has one or two center vertices"),
    };
    Ok(normal_form(&expr))
}

/// Automorphism-group expression of the subtree rooted at `v`.
fn vertex_expr(tree: &Tree, v: usize, parent: Option<usize>) -> GroupExpr {
    let mut classes: BTreeMap<String, (usize, GroupExpr)> = BTreeMap::new();
    for &w in tree.neighbors(v) {
        if Some(w) == parent {
            continue;
        }
        let c = code(tree, w, Some(v));
        let entry = classes
            .entry(c)
            .or_insert_with(|| (0, vertex_expr(tree, w, Some(v))));
        entry.0 += 1;
    }
    let factors: Vec<GroupExpr> = classes
        .into_values()
        .map(|(count, sub)| GroupExpr::Wr {
            base: Box::new(sub),
            top: Box::new(GroupExpr::Atom(AtomExpr::symmetric(count as u64))),
            degree: count as u64,
        })
        .collect();
    match factors.len() {
        0 => GroupExpr::Triv,
        1 => factors.into_iter().next().unwrap(),
        _ => GroupExpr::Prod(factors),
    }
}

/// Canonical rooted-subtree code: sorted child codes in parentheses.
fn code(tree: &Tree, v: usize, parent: Option<usize>) -> String {
    let mut child_codes: Vec<String> = tree
        .neighbors(v)
        .iter()
        .filter(|&&w| Some(w) != parent)
        .map(|&w| code(tree, w, Some(v)))
        .collect();
    child_codes.sort();
    format!("({})", child_codes.join(""))
}

/// Canonical code of an unrooted tree: rooted code at the center, or the
/// sorted pair of half codes for a center edge.
fn unrooted_code(tree: &Tree) -> String {
    let centers = tree.center();
    match centers.as_slice() {
        [c] => code(tree, *c, None),
        [u, v] => {
            let mut pair = [code(tree, *u, Some(*v)), code(tree, *v, Some(*u))];
            pair.sort();
            format!("{}|{}", pair[0], pair[1])
        }
        _ => String::new(),
    }
}

/// All trees with 1..=max_vertices vertices, one per isomorphism class,
/// grown by leaf attachment with canonical-code deduplication.
pub fn enumerate_trees(max_vertices: usize) -> Vec<Tree> {
    let mut out: Vec<Tree> = Vec::new();
    if max_vertices == 0 {
        return out;
    }
    let mut current = vec![Tree::new(1, &[]).unwrap()];
    out.extend(current.iter().cloned());
    for n in 2..=max_vertices {
        let mut seen = std::collections::BTreeSet::new();
        let mut next = Vec::new();
        for tree in &current {
            for v in 0..tree.vertex_count() {
                let mut edges = tree.edges().to_vec();
                edges.push((v, n - 1));
                let grown = Tree::new(n, &edges).unwrap();
                if seen.insert(unrooted_code(&grown)) {
                    next.push(grown);
                }
            }
        }
        out.extend(next.iter().cloned());
        current = next;
    }
    out
}
