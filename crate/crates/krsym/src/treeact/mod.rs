//! Finite trees, permutation groups acting on them by graph automorphisms,
//! stabilizer machinery, and the decomposability predicates that decide
//! whether an action splits along branches.

mod io;

pub use io::{parse_act, write_act};

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::groups::{close, GroupError, PermGroup, Permutation};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("tree must have exactly n-1 edges (got {edges} for {vertices} vertices)")]
    WrongEdgeCount { vertices: usize, edges: usize },
    #[error("tree is not connected")]
    NotConnected,
    #[error("invalid edge ({0}, {1})")]
    InvalidEdge(usize, usize),
    #[error("({0}, {1}) is not an edge")]
    NotAnEdge(usize, usize),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("generator is not a tree automorphism: {0:?}")]
    NotAutomorphism(Permutation),
    #[error("permutation does not stabilize the edge ({0}, {1})")]
    NotInEdgeStabilizer(usize, usize),
    #[error("blocks do not partition the ground set")]
    BadPartition,
    #[error("group does not preserve the partition")]
    NotPartitionPreserving,
    #[error("tree too large for exhaustive search ({0} vertices)")]
    TooLarge(usize),
    #[error("malformed action file: {0}")]
    Malformed(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A finite tree on vertices `0 .. n-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tree {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Tree {
    pub fn new(n: usize, raw_edges: &[(usize, usize)]) -> Result<Self, TreeError> {
        let mut edges = Vec::with_capacity(raw_edges.len());
        let mut seen = BTreeSet::new();
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in raw_edges {
            if a >= n || b >= n || a == b {
                return Err(TreeError::InvalidEdge(a, b));
            }
            let e = (a.min(b), a.max(b));
            if !seen.insert(e) {
                return Err(TreeError::InvalidEdge(a, b));
            }
            edges.push(e);
            adj[a].push(b);
            adj[b].push(a);
        }
        if edges.len() + 1 != n {
            return Err(TreeError::WrongEdgeCount {
                vertices: n,
                edges: edges.len(),
            });
        }
        let tree = Tree { n, edges, adj };
        if n > 0 && tree.component_of(0, None).len() != n {
            return Err(TreeError::NotConnected);
        }
        Ok(tree)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && self.adj[a].contains(&b)
    }

    /// Vertices of the component of `start` in the tree minus `removed`.
    fn component_of(&self, start: usize, removed: Option<usize>) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        if let Some(r) = removed {
            seen[r] = true;
        }
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        let mut out = Vec::new();
        while let Some(v) = queue.pop_front() {
            out.push(v);
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Center of the tree: one or two vertices, found by leaf peeling.
    pub fn center(&self) -> Vec<usize> {
        if self.n <= 2 {
            return (0..self.n).collect();
        }
        let mut degree: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        let mut layer: Vec<usize> = (0..self.n).filter(|&v| degree[v] == 1).collect();
        let mut remaining = self.n;
        while remaining > 2 {
            remaining -= layer.len();
            let mut next = Vec::new();
            for &v in &layer {
                degree[v] = 0;
                for &w in &self.adj[v] {
                    if degree[w] > 0 {
                        degree[w] -= 1;
                        if degree[w] == 1 {
                            next.push(w);
                        }
                    }
                }
            }
            layer = next;
        }
        let mut c = layer;
        c.sort_unstable();
        c
    }
}

/// A subtree of a tree, with original vertex labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subtree {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

/// The branch `T_u(v)`: closure of the component of `T - u` containing `v`,
/// so it includes `u` and the edge `uv`.
pub fn branch(tree: &Tree, u: usize, v: usize) -> Result<Subtree, TreeError> {
    if !tree.has_edge(u, v) {
        return Err(TreeError::NotAnEdge(u, v));
    }
    let mut vertices = tree.component_of(v, Some(u));
    vertices.push(u);
    vertices.sort_unstable();
    let inside: BTreeSet<usize> = vertices.iter().copied().collect();
    let edges = tree
        .edges()
        .iter()
        .copied()
        .filter(|&(a, b)| inside.contains(&a) && inside.contains(&b))
        .collect();
    Ok(Subtree { vertices, edges })
}

/// The reduced branch: `T_u(v)` with `u` and the open edge `uv` removed.
pub fn reduced_branch(tree: &Tree, u: usize, v: usize) -> Result<Subtree, TreeError> {
    if !tree.has_edge(u, v) {
        return Err(TreeError::NotAnEdge(u, v));
    }
    let vertices = tree.component_of(v, Some(u));
    let inside: BTreeSet<usize> = vertices.iter().copied().collect();
    let edges = tree
        .edges()
        .iter()
        .copied()
        .filter(|&(a, b)| inside.contains(&a) && inside.contains(&b))
        .collect();
    Ok(Subtree { vertices, edges })
}

/// A permutation group acting on a tree by graph automorphisms.
#[derive(Clone, Debug)]
pub struct TreeAction {
    tree: Tree,
    group: PermGroup,
}

impl TreeAction {
    pub fn new(tree: Tree, group: PermGroup) -> Result<Self, TreeError> {
        if group.domain_size() != tree.vertex_count() {
            return Err(TreeError::VertexOutOfRange(group.domain_size()));
        }
        for g in group.generators() {
            if !is_automorphism(&tree, g) {
                return Err(TreeError::NotAutomorphism(g.clone()));
            }
        }
        Ok(TreeAction { tree, group })
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }
}

pub fn is_automorphism(tree: &Tree, p: &Permutation) -> bool {
    p.degree() == tree.vertex_count()
        && tree
            .edges()
            .iter()
            .all(|&(a, b)| tree.has_edge(p.apply(a), p.apply(b)))
}

/// Common fixed vertices and edges. An edge counts as fixed only when both
/// endpoints are fixed; an endpoint swap reverses orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixSet {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

pub fn fix_set(act: &TreeAction) -> Result<FixSet, TreeError> {
    let elements = act.group.elements()?;
    let vertices: Vec<usize> = (0..act.tree.vertex_count())
        .filter(|&v| elements.iter().all(|g| g.apply(v) == v))
        .collect();
    let fixed: BTreeSet<usize> = vertices.iter().copied().collect();
    let edges = act
        .tree
        .edges()
        .iter()
        .copied()
        .filter(|&(a, b)| fixed.contains(&a) && fixed.contains(&b))
        .collect();
    Ok(FixSet { vertices, edges })
}

/// Stabilizer of a vertex, as a subgroup on the same domain.
pub fn stabilizer(act: &TreeAction, u: usize) -> Result<PermGroup, TreeError> {
    if u >= act.tree.vertex_count() {
        return Err(TreeError::VertexOutOfRange(u));
    }
    let elements: BTreeSet<Permutation> = act
        .group
        .elements()?
        .iter()
        .filter(|g| g.apply(u) == u)
        .cloned()
        .collect();
    Ok(PermGroup::from_elements(
        act.group.domain_size(),
        elements,
        act.group.element_cap(),
    ))
}

/// Stabilizer of the edge `uv`: elements fixing both endpoints.
pub fn stabilizer_edge(act: &TreeAction, u: usize, v: usize) -> Result<PermGroup, TreeError> {
    if !act.tree.has_edge(u, v) {
        return Err(TreeError::NotAnEdge(u, v));
    }
    let elements: BTreeSet<Permutation> = act
        .group
        .elements()?
        .iter()
        .filter(|g| g.apply(u) == u && g.apply(v) == v)
        .cloned()
        .collect();
    Ok(PermGroup::from_elements(
        act.group.domain_size(),
        elements,
        act.group.element_cap(),
    ))
}

/// The branch restriction of an edge-stabilizer element: equal to `g` on
/// `T_u(v)` and the identity on `T_v(u)`. The result is a tree
/// automorphism, not necessarily in the acting group.
pub fn r_uv(
    act: &TreeAction,
    u: usize,
    v: usize,
    g: &Permutation,
) -> Result<Permutation, TreeError> {
    if !act.tree.has_edge(u, v) {
        return Err(TreeError::NotAnEdge(u, v));
    }
    if g.apply(u) != u || g.apply(v) != v || !act.group.contains(g)? {
        return Err(TreeError::NotInEdgeStabilizer(u, v));
    }
    let side = act.tree.component_of(v, Some(u));
    let mut images: Vec<usize> = (0..act.tree.vertex_count()).collect();
    for w in side {
        images[w] = g.apply(w);
    }
    Ok(Permutation::new(images).expect("branch restriction is a bijection"))
}

/// Witness for a failed decomposability check.
#[derive(Clone, Debug)]
pub struct TDecomposability {
    pub holds: bool,
    pub witness: Option<(usize, usize, Permutation)>,
}

/// The action is branch-decomposable iff for every edge `uv` and every `g`
/// in the edge stabilizer the restriction `r_uv(g)` stays in the group.
pub fn is_t_decomposable(act: &TreeAction) -> Result<TDecomposability, TreeError> {
    for &(u, v) in act.tree.edges() {
        let stab = stabilizer_edge(act, u, v)?;
        for g in stab.elements()? {
            let restricted = r_uv(act, u, v, g)?;
            if !act.group.contains(&restricted)? {
                return Ok(TDecomposability {
                    holds: false,
                    witness: Some((u, v, g.clone())),
                });
            }
        }
    }
    Ok(TDecomposability {
        holds: true,
        witness: None,
    })
}

/// Semi-free: every non-identity element moves every point outside the
/// common fixed set; equivalently all non-identity elements share one
/// fixed-point set.
pub fn is_semi_free(group: &PermGroup) -> Result<bool, TreeError> {
    let mut common: Option<Vec<usize>> = None;
    for g in group.elements()? {
        if g.is_identity() {
            continue;
        }
        let fixed = g.fixed_points();
        match &common {
            None => common = Some(fixed),
            Some(f) => {
                if *f != fixed {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Restrictions of the vertex stabilizer to the neighbors of `u` (the star
/// edges of `u`), as a group on `deg(u)` points.
#[derive(Clone, Debug)]
pub struct LocalStabilizer {
    /// Neighbor vertex carried by each star point, in sorted order.
    pub neighbors: Vec<usize>,
    pub group: PermGroup,
}

pub fn local_stabilizer(act: &TreeAction, u: usize) -> Result<LocalStabilizer, TreeError> {
    if u >= act.tree.vertex_count() {
        return Err(TreeError::VertexOutOfRange(u));
    }
    let mut neighbors: Vec<usize> = act.tree.neighbors(u).to_vec();
    neighbors.sort_unstable();
    let index: BTreeMap<usize, usize> = neighbors.iter().enumerate().map(|(i, &w)| (w, i)).collect();
    let mut restrictions = BTreeSet::new();
    for g in act.group.elements()? {
        if g.apply(u) != u {
            continue;
        }
        let images: Vec<usize> = neighbors.iter().map(|&w| index[&g.apply(w)]).collect();
        restrictions.insert(Permutation::new(images).expect("stabilizer permutes the star"));
    }
    Ok(LocalStabilizer {
        neighbors,
        group: PermGroup::from_elements(
            index.len().max(1),
            if index.is_empty() {
                let mut s = BTreeSet::new();
                s.insert(Permutation::identity(1));
                s
            } else {
                restrictions
            },
            act.group.element_cap(),
        ),
    })
}

/// Report of the three conditions defining the tree-action class: a
/// nonempty fixed set, branch decomposability, and per-vertex local
/// stabilizers in the family acting semi-freely on their stars.
#[derive(Clone, Debug)]
pub struct TtReport {
    pub fix_nonempty: bool,
    pub t_decomposable: bool,
    pub local_ok: bool,
    pub failing_vertex: Option<usize>,
    pub witness: Option<(usize, usize, Permutation)>,
}

impl TtReport {
    pub fn all(&self) -> bool {
        self.fix_nonempty && self.t_decomposable && self.local_ok
    }
}

pub fn check_tt<F>(act: &TreeAction, family: F) -> Result<TtReport, TreeError>
where
    F: Fn(&PermGroup) -> Result<bool, TreeError>,
{
    let fix_nonempty = !fix_set(act)?.vertices.is_empty();
    let td = is_t_decomposable(act)?;
    let mut local_ok = true;
    let mut failing_vertex = None;
    for u in 0..act.tree.vertex_count() {
        let local = local_stabilizer(act, u)?;
        if !family(&local.group)? || !is_semi_free(&local.group)? {
            local_ok = false;
            failing_vertex = Some(u);
            break;
        }
    }
    Ok(TtReport {
        fix_nonempty,
        t_decomposable: td.holds,
        local_ok,
        failing_vertex,
        witness: td.witness,
    })
}

/// The cyclic family: trivial or cyclic local stabilizers.
pub fn family_cyclic(g: &PermGroup) -> Result<bool, TreeError> {
    use crate::groups::{recognize, GroupKind};
    Ok(matches!(
        recognize(g)?,
        GroupKind::Trivial | GroupKind::Cyclic(_)
    ))
}

/// A group acting on `{0, .., size-1}` preserving a partition into blocks.
#[derive(Clone, Debug)]
pub struct PartitionAction {
    size: usize,
    blocks: Vec<Vec<usize>>,
    group: PermGroup,
    block_of: Vec<usize>,
}

impl PartitionAction {
    pub fn new(
        size: usize,
        blocks: Vec<Vec<usize>>,
        group: PermGroup,
    ) -> Result<Self, TreeError> {
        let mut block_of = vec![usize::MAX; size];
        for (i, block) in blocks.iter().enumerate() {
            for &p in block {
                if p >= size || block_of[p] != usize::MAX {
                    return Err(TreeError::BadPartition);
                }
                block_of[p] = i;
            }
        }
        if block_of.iter().any(|&b| b == usize::MAX) || group.domain_size() != size {
            return Err(TreeError::BadPartition);
        }
        let pact = PartitionAction {
            size,
            blocks,
            group,
            block_of,
        };
        for g in pact.group.elements()? {
            if pact.block_image(g).is_none() {
                return Err(TreeError::NotPartitionPreserving);
            }
        }
        Ok(pact)
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    /// The permutation of block indices induced by `g`, if blocks map to
    /// blocks.
    pub fn block_image(&self, g: &Permutation) -> Option<Permutation> {
        let mut images = vec![usize::MAX; self.blocks.len()];
        for (i, block) in self.blocks.iter().enumerate() {
            let target = self.block_of[g.apply(block[0])];
            if block.iter().any(|&p| self.block_of[g.apply(p)] != target) {
                return None;
            }
            images[i] = target;
        }
        Permutation::new(images).ok()
    }

    /// The induced projection onto the block set.
    pub fn projection(&self) -> Result<PermGroup, TreeError> {
        let mut elements = BTreeSet::new();
        for g in self.group.elements()? {
            elements.insert(self.block_image(g).ok_or(TreeError::NotPartitionPreserving)?);
        }
        Ok(PermGroup::from_elements(
            self.blocks.len().max(1),
            elements,
            self.group.element_cap(),
        ))
    }
}

/// Decomposability over a set `X` of block indices: every family of
/// block-stabilizing elements, patched together block by block (identity
/// elsewhere), stays in the group. Patches over disjoint blocks compose,
/// so checking one block at a time decides the property.
pub fn partition_decomposable(pact: &PartitionAction, x: &[usize]) -> Result<bool, TreeError> {
    for &b in x {
        if b >= pact.blocks.len() {
            return Err(TreeError::BadPartition);
        }
        let block = &pact.blocks[b];
        let inside: BTreeSet<usize> = block.iter().copied().collect();
        for g in pact.group.elements()? {
            if block.iter().any(|&p| !inside.contains(&g.apply(p))) {
                continue; // does not stabilize this block
            }
            let mut images: Vec<usize> = (0..pact.size).collect();
            for &p in block {
                images[p] = g.apply(p);
            }
            let patched = Permutation::new(images).expect("patch of a block bijection");
            if !pact.group.contains(&patched)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Decomposability over every subset, decided via singletons.
pub fn fully_partition_decomposable(pact: &PartitionAction) -> Result<bool, TreeError> {
    let all: Vec<usize> = (0..pact.blocks.len()).collect();
    partition_decomposable(pact, &all)
}

/// The stabilizer of `u` acting on `T - u` with the branch partition;
/// ground points are re-indexed in sorted vertex order.
pub fn branch_partition_action(act: &TreeAction, u: usize) -> Result<PartitionAction, TreeError> {
    if u >= act.tree.vertex_count() {
        return Err(TreeError::VertexOutOfRange(u));
    }
    let rest: Vec<usize> = (0..act.tree.vertex_count()).filter(|&v| v != u).collect();
    let index: BTreeMap<usize, usize> = rest.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let blocks: Vec<Vec<usize>> = {
        let mut neighbors = act.tree.neighbors(u).to_vec();
        neighbors.sort_unstable();
        neighbors
            .iter()
            .map(|&w| {
                act.tree
                    .component_of(w, Some(u))
                    .into_iter()
                    .map(|v| index[&v])
                    .collect()
            })
            .collect()
    };
    let stab = stabilizer(act, u)?;
    let mut elements = BTreeSet::new();
    for g in stab.elements()? {
        let images: Vec<usize> = rest.iter().map(|&v| index[&g.apply(v)]).collect();
        elements.insert(Permutation::new(images).expect("restriction is a bijection"));
    }
    PartitionAction::new(
        rest.len(),
        blocks,
        PermGroup::from_elements(rest.len(), elements, act.group.element_cap()),
    )
}

/// Full automorphism group of a tree by exhaustive search over vertex
/// permutations. Exact and intentionally brute force; guarded by size.
pub fn aut_group(tree: &Tree) -> Result<PermGroup, TreeError> {
    let n = tree.vertex_count();
    if n > 10 {
        return Err(TreeError::TooLarge(n));
    }
    if n == 0 {
        return Ok(PermGroup::trivial(1));
    }
    let masks: Vec<u64> = (0..n)
        .map(|v| tree.neighbors(v).iter().fold(0u64, |m, &w| m | (1 << w)))
        .collect();
    let mut elements = BTreeSet::new();
    let mut images: Vec<usize> = (0..n).collect();
    permute_search(&mut images, 0, &masks, &mut elements);
    Ok(PermGroup::from_elements(n, elements, 1_000_000))
}

fn permute_search(
    images: &mut Vec<usize>,
    k: usize,
    masks: &[u64],
    out: &mut BTreeSet<Permutation>,
) {
    let n = images.len();
    if k == n {
        let p = Permutation::new(images.clone()).unwrap();
        let ok = (0..n).all(|v| {
            let mapped = (0..n)
                .filter(|&w| masks[v] & (1 << w) != 0)
                .fold(0u64, |m, w| m | (1 << p.apply(w)));
            mapped == masks[p.apply(v)]
        });
        if ok {
            out.insert(p);
        }
        return;
    }
    for i in k..n {
        images.swap(k, i);
        // Degree must be preserved; prunes most branches immediately.
        if masks[k].count_ones() == masks[images[k]].count_ones() {
            permute_search(images, k + 1, masks, out);
        }
        images.swap(k, i);
    }
}

#[cfg(test)]
mod tests;
