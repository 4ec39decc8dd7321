//! Realization of cyclic expressions as tree actions.
//!
//! Every constructed action keeps a degree-1 fixed root so the pieces glue
//! cleanly: products wedge the sub-trees at their roots, and a wreath by
//! `Zm` glues m copies of the base tree at a common center rotated
//! cyclically. The root ends up as vertex 0.

use super::DecomposeError;
use crate::groups::{PermGroup, Permutation};
use crate::rexpr::{Family, GroupExpr};
use crate::treeact::{Tree, TreeAction};

struct Realized {
    n: usize,
    edges: Vec<(usize, usize)>,
    root: usize,
    gens: Vec<Vec<usize>>, // image arrays
}

/// Build a tree action whose decomposition returns `normal_form(e)`.
/// Requires a normal-form expression over cyclic atoms.
pub fn expression_to_action(e: &GroupExpr) -> Result<TreeAction, DecomposeError> {
    if !e.is_r_expression(Family::Cyclic) {
        return Err(DecomposeError::NotCyclic(e.pretty()));
    }
    let mut r = build(e)?;
    // Relabel so the fixed root is vertex 0.
    if r.root != 0 {
        let root = r.root;
        let swap = |v: usize| {
            if v == root {
                0
            } else if v == 0 {
                root
            } else {
                v
            }
        };
        r.edges = r.edges.iter().map(|&(a, b)| (swap(a), swap(b))).collect();
        r.gens = r
            .gens
            .iter()
            .map(|images| {
                let mut out = vec![0; r.n];
                for (i, &img) in images.iter().enumerate() {
                    out[swap(i)] = swap(img);
                }
                out
            })
            .collect();
        r.root = 0;
    }
    let tree = Tree::new(r.n, &r.edges)?;
    let gens: Result<Vec<Permutation>, _> =
        r.gens.into_iter().map(Permutation::new).collect();
    let group = PermGroup::new(r.n, gens.map_err(crate::groups::GroupError::from)?)?;
    Ok(TreeAction::new(tree, group)?)
}

fn build(e: &GroupExpr) -> Result<Realized, DecomposeError> {
    match e {
        GroupExpr::Triv => Ok(Realized {
            n: 2,
            edges: vec![(0, 1)],
            root: 0,
            gens: Vec::new(),
        }),
        GroupExpr::Atom(a) if a.family == Family::Cyclic => {
            let n = a.n as usize;
            // root 0 - center 1 - leaves 2..2+n
            let mut edges = vec![(0, 1)];
            for i in 0..n {
                edges.push((1, 2 + i));
            }
            let mut gens = Vec::new();
            if n > 1 {
                let mut images: Vec<usize> = (0..n + 2).collect();
                for i in 0..n {
                    images[2 + i] = 2 + (i + 1) % n;
                }
                gens.push(images);
            }
            Ok(Realized {
                n: n + 2,
                edges,
                root: 0,
                gens,
            })
        }
        GroupExpr::Prod(children) => {
            // Fresh root 0 and wedge point 1; children glued at 1.
            let mut edges = vec![(0, 1)];
            let mut maps: Vec<Vec<usize>> = Vec::new();
            let mut next = 2;
            let mut subs = Vec::new();
            for c in children {
                let sub = build(c)?;
                // Child's root becomes the wedge vertex, the rest is fresh.
                let mut map = vec![usize::MAX; sub.n];
                map[sub.root] = 1;
                for v in 0..sub.n {
                    if v != sub.root {
                        map[v] = next;
                        next += 1;
                    }
                }
                for &(a, b) in &sub.edges {
                    edges.push((map[a], map[b]));
                }
                maps.push(map);
                subs.push(sub);
            }
            let n = next;
            let mut gens = Vec::new();
            for (sub, map) in subs.iter().zip(&maps) {
                for g in &sub.gens {
                    let mut images: Vec<usize> = (0..n).collect();
                    for (v, &img) in g.iter().enumerate() {
                        images[map[v]] = map[img];
                    }
                    gens.push(images);
                }
            }
            Ok(Realized {
                n,
                edges,
                root: 0,
                gens,
            })
        }
        GroupExpr::Wr { base, top, .. } => {
            let m = match &**top {
                GroupExpr::Atom(a) if a.family == Family::Cyclic => a.n as usize,
                other => return Err(DecomposeError::NotCyclic(other.pretty())),
            };
            let sub = build(base)?;
            // root 0, center 1 (identified copy roots), m relabeled copies.
            let mut edges = vec![(0, 1)];
            let mut copy_maps = Vec::new();
            let mut next = 2;
            for _ in 0..m {
                let mut map = vec![usize::MAX; sub.n];
                map[sub.root] = 1;
                for v in 0..sub.n {
                    if v != sub.root {
                        map[v] = next;
                        next += 1;
                    }
                }
                for &(a, b) in &sub.edges {
                    edges.push((map[a], map[b]));
                }
                copy_maps.push(map);
            }
            let n = next;
            let mut gens = Vec::new();
            // Base generators live in copy 0.
            for g in &sub.gens {
                let mut images: Vec<usize> = (0..n).collect();
                for (v, &img) in g.iter().enumerate() {
                    images[copy_maps[0][v]] = copy_maps[0][img];
                }
                gens.push(images);
            }
            // Rotation of the copies.
            if m > 1 {
                let mut images: Vec<usize> = (0..n).collect();
                for k in 0..m {
                    let from = &copy_maps[k];
                    let to = &copy_maps[(k + 1) % m];
                    for v in 0..sub.n {
                        if v != sub.root {
                            images[from[v]] = to[v];
                        }
                    }
                }
                gens.push(images);
            }
            Ok(Realized {
                n,
                edges,
                root: 0,
                gens,
            })
        }
        GroupExpr::Atom(a) => Err(DecomposeError::NotCyclic(GroupExpr::Atom(*a).pretty())),
    }
}
