//! The level-set sweep: vertices in increasing perturbed order, level-set
//! components tracked by union-find over the mesh edges crossing each gap
//! between consecutive sweep values.

use std::collections::{BTreeMap, BTreeSet};

use super::{Mesh, ReebError, ScalarField};

/// A sweep node: an interior mesh vertex or a whole boundary loop
/// (contracted; its vertices share one value).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Interior(usize),
    BoundaryLoop(usize),
}

#[derive(Clone, Debug)]
pub struct SweepNode {
    pub kind: NodeKind,
    pub value: f64,
    pub token: String,
    /// Tie-break index: the vertex, or the loop's smallest vertex.
    pub tie: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReebVertexKind {
    Min,
    Max,
    /// Saddle with `arcs` lower-link arcs (equivalently upper); 1 for a
    /// simple saddle, k >= 2 for a multisaddle.
    Saddle { multiplicity: usize },
    Boundary,
}

#[derive(Clone, Debug)]
pub struct ReebVertex {
    pub kind: ReebVertexKind,
    pub value: f64,
    pub token: String,
    /// The critical mesh vertex, for interior kinds.
    pub mesh_vertex: Option<usize>,
    /// The boundary loop index, for boundary kind.
    pub loop_index: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct ReebEdge {
    pub lower: usize,
    pub upper: usize,
    /// A mesh edge crossed by the regular family: the preimage certificate.
    pub sample_edge: (usize, usize),
}

/// The Reeb graph plus the sweep bookkeeping the atom machinery reads.
#[derive(Clone, Debug)]
pub struct ReebGraph {
    pub vertices: Vec<ReebVertex>,
    pub edges: Vec<ReebEdge>,
    pub(super) nodes: Vec<SweepNode>,
    pub(super) node_of_vertex: Vec<usize>,
    pub(super) node_pos: Vec<usize>,
    /// Per gap: spanning mesh edge -> dense component id.
    pub(super) slab_comp: Vec<BTreeMap<usize, usize>>,
    /// Component id -> Reeb edge id.
    pub(super) comp_edge: Vec<usize>,
    /// Reeb vertex id per sweep node (None for regular nodes).
    pub(super) reeb_of_node: Vec<Option<usize>>,
    /// Reeb edges attached below / above each Reeb vertex.
    pub lower_edges: Vec<Vec<usize>>,
    pub upper_edges: Vec<Vec<usize>>,
}

impl ReebGraph {
    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.vertices.len()
    }

    pub fn cycle_rank(&self) -> usize {
        (self.edges.len() + 1).saturating_sub(self.vertices.len())
    }

    pub fn degree(&self, v: usize) -> usize {
        self.lower_edges[v].len() + self.upper_edges[v].len()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for &e in &self.lower_edges[v] {
            out.push(self.edges[e].lower);
        }
        for &e in &self.upper_edges[v] {
            out.push(self.edges[e].upper);
        }
        out
    }

    /// Stable DOT rendering: `v<i>` nodes with value labels.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph reeb {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let kind = match v.kind {
                ReebVertexKind::Min => "min".to_string(),
                ReebVertexKind::Max => "max".to_string(),
                ReebVertexKind::Saddle { multiplicity } => format!("saddle{multiplicity}"),
                ReebVertexKind::Boundary => "boundary".to_string(),
            };
            out.push_str(&format!("  v{i} [label=\"v{i} f={} {kind}\"];\n", v.token));
        }
        for e in &self.edges {
            out.push_str(&format!("  v{} -- v{};\n", e.lower, e.upper));
        }
        out.push_str("}\n");
        out
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }
    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Number of maximal below-runs and above-runs in the link cycle of an
/// interior vertex, under perturbed comparison.
pub(super) fn link_arcs(
    mesh: &Mesh,
    below: impl Fn(usize) -> bool,
    v: usize,
) -> Result<(usize, usize), ReebError> {
    let star = mesh.star_cycle(v)?;
    // Link vertices in rotational order: y of each oriented (v, x, y).
    let ring: Vec<usize> = star
        .iter()
        .map(|&t| super::mesh::oriented_pair(&mesh.triangles()[t], v).1)
        .collect();
    let flags: Vec<bool> = ring.iter().map(|&w| below(w)).collect();
    let n = flags.len();
    if flags.iter().all(|&f| !f) {
        return Ok((0, 1)); // local minimum: the whole link is above
    }
    if flags.iter().all(|&f| f) {
        return Ok((1, 0)); // local maximum
    }
    let mut lo = 0;
    let mut hi = 0;
    for i in 0..n {
        if flags[i] && !flags[(i + n - 1) % n] {
            lo += 1;
        }
        if !flags[i] && flags[(i + n - 1) % n] {
            hi += 1;
        }
    }
    Ok((lo, hi))
}

/// Run the sweep and build the Reeb graph.
pub fn compute_reeb(mesh: &Mesh, field: &ScalarField) -> Result<ReebGraph, ReebError> {
    if field.len() != mesh.vertex_count() {
        return Err(ReebError::CountMismatch {
            expected: mesh.vertex_count(),
            got: field.len(),
        });
    }

    // Boundary loops must sit at constant values (checked textually) and
    // have one-sided collars.
    for (li, l) in mesh.boundary_loops().iter().enumerate() {
        let t0 = field.token(l[0]);
        if l.iter().any(|&v| field.token(v) != t0) {
            return Err(ReebError::BoundaryNotLevel(format!(
                "boundary loop {li} is not at a constant value"
            )));
        }
    }

    // Sweep nodes: interior vertices individually, loops contracted.
    let mut nodes: Vec<SweepNode> = Vec::new();
    let mut node_of_vertex = vec![usize::MAX; mesh.vertex_count()];
    let mut loop_of_vertex = vec![usize::MAX; mesh.vertex_count()];
    for (li, l) in mesh.boundary_loops().iter().enumerate() {
        let tie = *l.iter().min().unwrap();
        let id = nodes.len();
        nodes.push(SweepNode {
            kind: NodeKind::BoundaryLoop(li),
            value: field.value(l[0]),
            token: field.token(l[0]).to_string(),
            tie,
        });
        for &v in l {
            node_of_vertex[v] = id;
            loop_of_vertex[v] = li;
        }
    }
    for v in 0..mesh.vertex_count() {
        if node_of_vertex[v] == usize::MAX {
            let id = nodes.len();
            nodes.push(SweepNode {
                kind: NodeKind::Interior(v),
                value: field.value(v),
                token: field.token(v).to_string(),
                tie: v,
            });
            node_of_vertex[v] = id;
        }
    }
    let mut order: Vec<usize> = (0..nodes.len()).collect();
    order.sort_by(|&a, &b| {
        nodes[a]
            .value
            .partial_cmp(&nodes[b].value)
            .unwrap()
            .then(nodes[a].tie.cmp(&nodes[b].tie))
    });
    let mut node_pos = vec![0usize; nodes.len()];
    for (p, &n) in order.iter().enumerate() {
        node_pos[n] = p;
    }
    let pos_of_vertex = |v: usize| node_pos[node_of_vertex[v]];
    let n_nodes = nodes.len();

    // One-sidedness of boundary collars, in perturbed order.
    for (li, l) in mesh.boundary_loops().iter().enumerate() {
        let loop_pos = node_pos[node_of_vertex[l[0]]];
        let mut above = false;
        let mut below = false;
        for &v in l {
            for &(a, b) in mesh.edges() {
                if a != v && b != v {
                    continue;
                }
                let w = if a == v { b } else { a };
                if loop_of_vertex[w] == li {
                    continue;
                }
                if pos_of_vertex(w) > loop_pos {
                    above = true;
                } else {
                    below = true;
                }
            }
        }
        if above && below {
            return Err(ReebError::CriticalBoundary(format!(
                "boundary loop {li} has interior neighbors on both sides"
            )));
        }
    }

    // Spanning edges per gap and their components.
    let edge_span: Vec<Option<(usize, usize)>> = mesh
        .edges()
        .iter()
        .map(|&(a, b)| {
            let (pa, pb) = (pos_of_vertex(a), pos_of_vertex(b));
            if pa == pb {
                None
            } else {
                Some((pa.min(pb), pa.max(pb)))
            }
        })
        .collect();

    let mut slab_comp: Vec<BTreeMap<usize, usize>> = Vec::with_capacity(n_nodes.saturating_sub(1));
    let mut comp_count = 0usize;
    for gap in 0..n_nodes.saturating_sub(1) {
        let spanning: Vec<usize> = (0..mesh.edges().len())
            .filter(|&e| matches!(edge_span[e], Some((lo, hi)) if lo <= gap && gap < hi))
            .collect();
        let mut uf = UnionFind::new(mesh.edges().len());
        for tri in mesh.triangles() {
            let mut span_edges = Vec::new();
            for (u, v) in [(tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0])] {
                let e = mesh.edge_id(u, v).unwrap();
                if matches!(edge_span[e], Some((lo, hi)) if lo <= gap && gap < hi) {
                    span_edges.push(e);
                }
            }
            for w in span_edges.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        let mut comp_of_root: BTreeMap<usize, usize> = BTreeMap::new();
        let mut map = BTreeMap::new();
        for &e in &spanning {
            let root = uf.find(e);
            let comp = *comp_of_root.entry(root).or_insert_with(|| {
                let c = comp_count;
                comp_count += 1;
                c
            });
            map.insert(e, comp);
        }
        slab_comp.push(map);
    }

    // Criticality per node.
    let below = |w: usize, p: usize| pos_of_vertex(w) < p;
    let mut reeb_of_node: Vec<Option<usize>> = vec![None; n_nodes];
    let mut vertices: Vec<ReebVertex> = Vec::new();
    for (p, &nid) in order.iter().enumerate() {
        let node = &nodes[nid];
        let kind = match node.kind {
            NodeKind::BoundaryLoop(li) => {
                let _ = li;
                Some(ReebVertexKind::Boundary)
            }
            NodeKind::Interior(v) => {
                let (lo, hi) = link_arcs(mesh, |w| below(w, p), v)?;
                if lo == 0 {
                    Some(ReebVertexKind::Min)
                } else if hi == 0 {
                    Some(ReebVertexKind::Max)
                } else if lo == 1 && hi == 1 {
                    None
                } else {
                    Some(ReebVertexKind::Saddle {
                        multiplicity: lo.max(hi),
                    })
                }
            }
        };
        if let Some(kind) = kind {
            let id = vertices.len();
            vertices.push(ReebVertex {
                kind,
                value: node.value,
                token: node.token.clone(),
                mesh_vertex: match node.kind {
                    NodeKind::Interior(v) => Some(v),
                    NodeKind::BoundaryLoop(_) => None,
                },
                loop_index: match node.kind {
                    NodeKind::BoundaryLoop(li) => Some(li),
                    NodeKind::Interior(_) => None,
                },
            });
            reeb_of_node[nid] = Some(id);
        }
    }

    // Families: union-find over slab components; attachments at critical
    // nodes become Reeb edge endpoints.
    let mut fam = UnionFind::new(comp_count);
    // (component, reeb vertex, attaches from below?)
    let mut attachments: Vec<(usize, usize, bool)> = Vec::new();
    for p in 0..n_nodes {
        let nid = order[p];
        let node = &nodes[nid];
        let touching_below: BTreeSet<usize> = if p > 0 {
            mesh.edges()
                .iter()
                .enumerate()
                .filter(|&(_, &(a, b))| {
                    let (pa, pb) = (pos_of_vertex(a), pos_of_vertex(b));
                    pa.max(pb) == p && pa != pb
                })
                .filter_map(|(e, _)| slab_comp[p - 1].get(&e).copied())
                .collect()
        } else {
            BTreeSet::new()
        };
        let touching_above: BTreeSet<usize> = if p + 1 < n_nodes {
            mesh.edges()
                .iter()
                .enumerate()
                .filter(|&(_, &(a, b))| {
                    let (pa, pb) = (pos_of_vertex(a), pos_of_vertex(b));
                    pa.min(pb) == p && pa != pb
                })
                .filter_map(|(e, _)| slab_comp[p].get(&e).copied())
                .collect()
        } else {
            BTreeSet::new()
        };
        match reeb_of_node[nid] {
            None => {
                // Regular node: the unique touching families continue into
                // each other.
                if touching_below.len() != 1 || touching_above.len() != 1 {
                    return Err(ReebError::Malformed(format!(
                        "regular sweep node {nid} touches {} below / {} above components",
                        touching_below.len(),
                        touching_above.len()
                    )));
                }
                fam.union(
                    *touching_below.iter().next().unwrap(),
                    *touching_above.iter().next().unwrap(),
                );
            }
            Some(rv) => {
                if let NodeKind::BoundaryLoop(_) = node.kind {
                    if n_nodes > 1 && touching_below.len() + touching_above.len() != 1 {
                        return Err(ReebError::CriticalBoundary(format!(
                            "boundary loop node {nid} touches {} components",
                            touching_below.len() + touching_above.len()
                        )));
                    }
                }
                for &c in &touching_below {
                    attachments.push((c, rv, true));
                }
                for &c in &touching_above {
                    attachments.push((c, rv, false));
                }
            }
        }
        // Families passing by at a distance continue across the level.
        if p > 0 && p + 1 < n_nodes {
            for (e, span) in edge_span.iter().enumerate() {
                if let Some((lo, hi)) = span {
                    if *lo < p && p < *hi {
                        let cb = slab_comp[p - 1][&e];
                        let ca = slab_comp[p][&e];
                        if !touching_below.contains(&cb) && !touching_above.contains(&ca) {
                            fam.union(cb, ca);
                        }
                    }
                }
            }
        }
    }

    // Assemble edges: every family must attach exactly once from below
    // (its top) and once from above (its bottom).
    let mut family_ends: BTreeMap<usize, (Option<usize>, Option<usize>)> = BTreeMap::new();
    for (c, rv, from_below) in attachments {
        let f = fam.find(c);
        let entry = family_ends.entry(f).or_insert((None, None));
        if from_below {
            if entry.1.replace(rv).is_some() {
                return Err(ReebError::Malformed(
                    "level family with two upper endpoints".into(),
                ));
            }
        } else if entry.0.replace(rv).is_some() {
            return Err(ReebError::Malformed(
                "level family with two lower endpoints".into(),
            ));
        }
    }
    let mut edges = Vec::new();
    let mut edge_of_family: BTreeMap<usize, usize> = BTreeMap::new();
    // Representative mesh edge per family: smallest spanning edge met.
    let mut sample: BTreeMap<usize, usize> = BTreeMap::new();
    for (gap, comp_map) in slab_comp.iter().enumerate() {
        let _ = gap;
        for (&e, &c) in comp_map {
            let f = fam.find(c);
            sample.entry(f).or_insert(e);
        }
    }
    for (&f, &(lower, upper)) in &family_ends {
        let (lower, upper) = match (lower, upper) {
            (Some(l), Some(u)) => (l, u),
            _ => {
                return Err(ReebError::Malformed(
                    "level family with a missing endpoint".into(),
                ))
            }
        };
        let id = edges.len();
        edges.push(ReebEdge {
            lower,
            upper,
            sample_edge: mesh.edges()[sample[&f]],
        });
        edge_of_family.insert(f, id);
    }
    // Stable edge order: by (lower, upper, sample).
    let mut edge_order: Vec<usize> = (0..edges.len()).collect();
    edge_order.sort_by_key(|&i| (edges[i].lower, edges[i].upper, edges[i].sample_edge));
    let rank: BTreeMap<usize, usize> = edge_order
        .iter()
        .enumerate()
        .map(|(rank, &old)| (old, rank))
        .collect();
    let mut sorted_edges = vec![
        ReebEdge {
            lower: 0,
            upper: 0,
            sample_edge: (0, 0)
        };
        edges.len()
    ];
    for (old, e) in edges.into_iter().enumerate() {
        sorted_edges[rank[&old]] = e;
    }
    let comp_edge: Vec<usize> = (0..comp_count)
        .map(|c| rank[&edge_of_family[&fam.find(c)]])
        .collect();

    let mut lower_edges = vec![Vec::new(); vertices.len()];
    let mut upper_edges = vec![Vec::new(); vertices.len()];
    for (i, e) in sorted_edges.iter().enumerate() {
        upper_edges[e.lower].push(i);
        lower_edges[e.upper].push(i);
    }

    Ok(ReebGraph {
        vertices,
        edges: sorted_edges,
        nodes,
        node_of_vertex,
        node_pos,
        slab_comp,
        comp_edge,
        reeb_of_node,
        lower_edges,
        upper_edges,
    })
}
