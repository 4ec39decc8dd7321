//! Constructive translation between tree actions and group expressions:
//! actions satisfying the fixed-point / branch-decomposability / cyclic
//! local-stabilizer conditions decompose into product-and-wreath
//! expressions, and every cyclic expression is realized back as such an
//! action. Bare trees decompose over symmetric atoms into the structure of
//! their full automorphism group.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::groups::{GroupError, PermGroup, Permutation};
use crate::rexpr::{evaluate, normal_form, AtomExpr, ExprError, Family, GroupExpr};
use crate::treeact::{
    check_tt, family_cyclic, fix_set, local_stabilizer, Tree, TreeAction, TreeError,
};

#[derive(Debug, Clone, Error)]
pub enum DecomposeError {
    #[error("action does not satisfy the tree-class conditions: {0}")]
    NotTt(String),
    #[error("expression is not over cyclic atoms: {0}")]
    NotCyclic(String),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Expr(#[from] ExprError),
}

/// Result of decomposing a tree action: the normal-form expression, the
/// raw structured expression the recursion produced, and the isomorphism
/// from group elements onto the evaluated raw expression.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub expr: GroupExpr,
    pub raw_expr: GroupExpr,
    pub iso: BTreeMap<Permutation, Permutation>,
}

/// Decompose a tree action over the given atom family (cyclic local
/// stabilizers for `Family::Cyclic`; symmetric ones for
/// `Family::Symmetric`, with regular-degree wreaths).
///
/// The recursion runs at the smallest-index fixed vertex, splits the
/// adjacent branches into local-stabilizer orbits, and emits fixed
/// branches as direct factors and each free orbit as a wreath by the
/// local stabilizer. The emitted `iso` maps every group element to the
/// corresponding element of `evaluate(raw_expr)`.
pub fn action_to_expression(
    act: &TreeAction,
    family: Family,
) -> Result<Decomposition, DecomposeError> {
    let report = check_tt(act, |g| match family {
        Family::Cyclic => family_cyclic(g),
        Family::Symmetric => family_symmetric(g),
        Family::Dihedral => Ok(false),
    })?;
    if !report.all() {
        return Err(DecomposeError::NotTt(format!(
            "fix_nonempty={} t_decomposable={} local_ok={} (failing vertex {:?})",
            report.fix_nonempty, report.t_decomposable, report.local_ok, report.failing_vertex
        )));
    }
    decompose_rec(act, family)
}

fn family_symmetric(g: &PermGroup) -> Result<bool, TreeError> {
    use crate::groups::{recognize, GroupKind};
    Ok(matches!(
        recognize(g)?,
        GroupKind::Trivial | GroupKind::Symmetric(_) | GroupKind::Cyclic(2)
    ))
}

fn decompose_rec(act: &TreeAction, family: Family) -> Result<Decomposition, DecomposeError> {
    let group = act.group();
    let order = group.order()?;
    if order == 1 {
        let mut iso = BTreeMap::new();
        iso.insert(
            Permutation::identity(group.domain_size()),
            Permutation::identity(1),
        );
        return Ok(Decomposition {
            expr: GroupExpr::Triv,
            raw_expr: GroupExpr::Triv,
            iso,
        });
    }

    let fix = fix_set(act)?;
    let &u = fix
        .vertices
        .first()
        .ok_or_else(|| DecomposeError::NotTt("no common fixed vertex".into()))?;

    let local = local_stabilizer(act, u)?;
    let star = &local.neighbors;
    let star_index: BTreeMap<usize, usize> =
        star.iter().enumerate().map(|(i, &w)| (w, i)).collect();
    let m = local.group.order()?;

    // Partition the star into fixed points and free orbits.
    let mut fixed_neighbors = Vec::new();
    let mut orbit_of: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut assigned: BTreeSet<usize> = BTreeSet::new();
    for (idx, &w) in star.iter().enumerate() {
        if local
            .group
            .elements()?
            .iter()
            .all(|g| g.apply(idx) == idx)
        {
            fixed_neighbors.push(w);
        } else if !assigned.contains(&w) {
            let mut orbit: BTreeSet<usize> = BTreeSet::new();
            for g in local.group.elements()? {
                orbit.insert(star[g.apply(idx)]);
            }
            for &o in &orbit {
                assigned.insert(o);
            }
            orbit_of.insert(w, orbit.into_iter().collect());
        }
    }
    let orbits: Vec<Vec<usize>> = orbit_of.into_values().collect();
    for orbit in &orbits {
        if orbit.len() != m {
            return Err(DecomposeError::NotTt(format!(
                "orbit of size {} under a local stabilizer of order {m}: action is not semi-free",
                orbit.len()
            )));
        }
    }

    let elements: Vec<&Permutation> = group.elements()?.iter().collect();

    // Sub-decompositions of the fixed branches.
    let mut fixed_parts = Vec::new();
    for &v in &fixed_neighbors {
        fixed_parts.push(branch_subaction(act, u, v, family)?);
    }

    // Local-stabilizer generator and the transversal t_x with loc(t_x) = l^x.
    let (gen_l, top_atom, positions) = local_generator(&local.group, family, m)?;
    let mut transversal: Vec<Permutation> = Vec::with_capacity(positions.len());
    for target in &positions {
        let t = elements
            .iter()
            .find(|g| star_restriction(g, star, &star_index) == *target)
            .ok_or_else(|| {
                DecomposeError::NotTt("local stabilizer element without a lift".into())
            })?;
        transversal.push((*t).clone());
    }
    let _ = gen_l;

    // Sub-decompositions of the orbit representatives.
    let mut orbit_parts = Vec::new();
    for orbit in &orbits {
        let rep = orbit[0];
        orbit_parts.push(branch_subaction(act, u, rep, family)?);
    }

    // Raw expression: fixed factors, then one wreath over all free orbits.
    let mut components: Vec<GroupExpr> = fixed_parts.iter().map(|p| p.dec.raw_expr.clone()).collect();
    let wreath = if orbit_parts.is_empty() {
        None
    } else {
        let base = match orbit_parts.len() {
            1 => orbit_parts[0].dec.raw_expr.clone(),
            _ => GroupExpr::Prod(orbit_parts.iter().map(|p| p.dec.raw_expr.clone()).collect()),
        };
        let degree = positions.len() as u64;
        Some(GroupExpr::Wr {
            base: Box::new(base),
            top: Box::new(GroupExpr::Atom(top_atom)),
            degree,
        })
    };
    if let Some(w) = &wreath {
        components.push(w.clone());
    }
    let raw_expr = match components.len() {
        0 => GroupExpr::Triv,
        1 => components.pop().unwrap(),
        _ => GroupExpr::Prod(components),
    };

    // Domain layout of evaluate(raw_expr): fixed blocks then the wreath
    // block (base copies indexed by position).
    let fixed_sizes: Vec<usize> = fixed_parts.iter().map(|p| p.eval_domain).collect();
    let base_sizes: Vec<usize> = orbit_parts.iter().map(|p| p.eval_domain).collect();
    let base_total: usize = base_sizes.iter().sum();
    let x_count = positions.len();
    let fixed_total: usize = fixed_sizes.iter().sum();
    let total = fixed_total
        + if orbit_parts.is_empty() {
            0
        } else {
            base_total * x_count
        };
    let total = total.max(1);

    let mut base_offsets = Vec::new();
    {
        let mut off = 0;
        for s in &base_sizes {
            base_offsets.push(off);
            off += s;
        }
    }

    // Element-by-element image construction.
    let mut iso = BTreeMap::new();
    for g in &elements {
        let loc_g = star_restriction(g, star, &star_index);
        let k = positions
            .iter()
            .position(|p| *p == loc_g)
            .ok_or_else(|| DecomposeError::NotTt("local action outside the stabilizer".into()))?;
        let mut images: Vec<usize> = (0..total).collect();
        let mut offset = 0;
        for (part, size) in fixed_parts.iter().zip(&fixed_sizes) {
            let restricted = restrict(g, &part.vertices, &part.index);
            let sub_image = part.dec.iso.get(&restricted).ok_or_else(|| {
                DecomposeError::NotTt("fixed-branch restriction escaped the branch group".into())
            })?;
            for p in 0..*size {
                images[offset + p] = offset + sub_image.apply(p);
            }
            offset += size;
        }
        if !orbit_parts.is_empty() {
            for x in 0..x_count {
                let xk = position_compose(&positions, k, x);
                for (j, part) in orbit_parts.iter().enumerate() {
                    let conj = transversal[xk]
                        .inverse()
                        .compose(g)
                        .compose(&transversal[x]);
                    let restricted = restrict(&conj, &part.vertices, &part.index);
                    let sub_image = part.dec.iso.get(&restricted).ok_or_else(|| {
                        DecomposeError::NotTt(
                            "orbit-branch conjugate escaped the branch group".into(),
                        )
                    })?;
                    for p in 0..part.eval_domain {
                        images[offset + x * base_total + base_offsets[j] + p] =
                            offset + xk * base_total + base_offsets[j] + sub_image.apply(p);
                    }
                }
            }
        }
        iso.insert((*g).clone(), Permutation::new(images).expect("iso image"));
    }

    Ok(Decomposition {
        expr: normal_form(&raw_expr),
        raw_expr,
        iso,
    })
}

/// Composition index: the position of `l^k ∘ l^x` in the position list.
/// Positions are the powers of the generator in order, so this is addition
/// mod the list length for cyclic stabilizers; for symmetric stabilizers
/// positions enumerate all elements and composition is looked up.
fn position_compose(positions: &[Permutation], k: usize, x: usize) -> usize {
    let composed = positions[k].compose(&positions[x]);
    positions
        .iter()
        .position(|p| *p == composed)
        .expect("closed position list")
}

/// The ordered position list of the local stabilizer together with the
/// wreath top atom it contributes.
///
/// Cyclic family: positions are `id, l, l^2, ..` for a canonical generator
/// `l`, and the atom is the cyclic atom of order m (regular = natural
/// degree). Symmetric family: positions are all elements in canonical
/// order and the atom has regular degree.
fn local_generator(
    local: &PermGroup,
    family: Family,
    m: usize,
) -> Result<(Permutation, AtomExpr, Vec<Permutation>), DecomposeError> {
    match family {
        Family::Cyclic => {
            let l = local
                .elements()?
                .iter()
                .find(|p| p.element_order() == m)
                .cloned()
                .ok_or_else(|| DecomposeError::NotTt("local stabilizer not cyclic".into()))?;
            let mut positions = Vec::with_capacity(m);
            let mut cur = Permutation::identity(l.degree());
            for _ in 0..m {
                positions.push(cur.clone());
                cur = l.compose(&cur);
            }
            Ok((l, AtomExpr::cyclic(m as u64), positions))
        }
        Family::Symmetric => {
            use crate::groups::{recognize, GroupKind};
            let n = match recognize(local)? {
                GroupKind::Trivial => 1,
                GroupKind::Symmetric(n) => n,
                GroupKind::Cyclic(2) => 2,
                other => {
                    return Err(DecomposeError::NotTt(format!(
                        "local stabilizer not symmetric: {other:?}"
                    )))
                }
            };
            let positions: Vec<Permutation> = local.elements()?.iter().cloned().collect();
            let l = positions
                .get(1)
                .cloned()
                .unwrap_or_else(|| Permutation::identity(local.domain_size()));
            Ok((l, AtomExpr::symmetric(n as u64), positions))
        }
        Family::Dihedral => Err(DecomposeError::NotTt(
            "dihedral-topped decompositions are not supported".into(),
        )),
    }
}

struct BranchPart {
    vertices: Vec<usize>,
    index: BTreeMap<usize, usize>,
    dec: Decomposition,
    eval_domain: usize,
}

/// Decompose the subgroup supported in the reduced branch below `v`,
/// restricted to that branch.
fn branch_subaction(
    act: &TreeAction,
    u: usize,
    v: usize,
    family: Family,
) -> Result<BranchPart, DecomposeError> {
    let sub = crate::treeact::reduced_branch(act.tree(), u, v)?;
    let vertices = sub.vertices.clone();
    let index: BTreeMap<usize, usize> =
        vertices.iter().enumerate().map(|(i, &w)| (w, i)).collect();
    let inside: BTreeSet<usize> = vertices.iter().copied().collect();
    let edges: Vec<(usize, usize)> = sub
        .edges
        .iter()
        .map(|&(a, b)| (index[&a], index[&b]))
        .collect();
    let tree = Tree::new(vertices.len(), &edges)?;
    let mut elements = BTreeSet::new();
    for g in act.group().elements()? {
        if g.moved_points().iter().all(|p| inside.contains(p)) {
            elements.insert(restrict(g, &vertices, &index));
        }
    }
    let group = PermGroup::from_elements(vertices.len(), elements, act.group().element_cap());
    let sub_act = TreeAction::new(tree, group)?;
    let dec = decompose_rec(&sub_act, family)?;
    let eval_domain = evaluate(&dec.raw_expr)?.domain_size();
    Ok(BranchPart {
        vertices,
        index,
        dec,
        eval_domain,
    })
}

fn restrict(g: &Permutation, vertices: &[usize], index: &BTreeMap<usize, usize>) -> Permutation {
    let images: Vec<usize> = vertices.iter().map(|&w| index[&g.apply(w)]).collect();
    Permutation::new(images).expect("restriction is a bijection")
}

fn star_restriction(
    g: &Permutation,
    star: &[usize],
    star_index: &BTreeMap<usize, usize>,
) -> Permutation {
    let images: Vec<usize> = star.iter().map(|&w| star_index[&g.apply(w)]).collect();
    Permutation::new(images).expect("star restriction is a bijection")
}

mod realize_action;
pub use realize_action::expression_to_action;

mod jordan;
pub use jordan::{enumerate_trees, jordan_decompose};

#[cfg(test)]
mod tests;
