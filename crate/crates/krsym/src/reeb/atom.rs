//! Atoms: regular neighborhoods of critical level components, their
//! boundary circles, and the Eulerian words those circles trace along the
//! critical graph.
//!
//! A critical component through a vertex z is a wedge of circles: each
//! arc leaves z through one mixed star triangle and returns through
//! another. The boundary circles of the atom are the faces of that
//! one-vertex ribbon graph; walking a face records the cyclic sequence of
//! arcs it runs along, one entry per arc side.

use std::collections::BTreeMap;

use super::mesh::oriented_pair;
use super::sweep::{ReebGraph, ReebVertexKind};
use super::{Mesh, ReebError, ScalarField};

/// A regular neighborhood of the critical component at a Reeb vertex.
#[derive(Clone, Debug)]
pub struct Atom {
    pub reeb_vertex: usize,
    /// Half-width of the value band around the critical value.
    pub epsilon: f64,
    /// Boundary circles, one per incident Reeb edge.
    pub lower_circles: Vec<usize>,
    pub upper_circles: Vec<usize>,
    /// Number of arcs of the critical component (0 for extremes).
    pub arc_count: usize,
    words: BTreeMap<usize, CyclicWord>,
}

/// One traversal entry of an Eulerian boundary word.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct WordLabel {
    /// Arc of the critical component (atom-local id).
    pub arc: usize,
    /// Reeb edge on the far side of the arc.
    pub far_edge: usize,
    /// Canonical code of the branch behind the far edge (empty when the
    /// graph is not a tree).
    pub branch: String,
    /// Traversal direction relative to the arc's trace orientation.
    pub sign: i8,
}

/// A cyclic word; equality is rotation invariant.
#[derive(Clone, Debug, Eq)]
pub struct CyclicWord {
    pub labels: Vec<WordLabel>,
}

impl PartialEq for CyclicWord {
    fn eq(&self, other: &Self) -> bool {
        crate::cyclic::cyclic_eq(&self.labels, &other.labels)
    }
}

impl CyclicWord {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Rotation order of the word under (branch, sign) labels: arc ids are
    /// position-dependent and excluded.
    pub fn rotation_order(&self) -> usize {
        let simplified: Vec<(&str, i8)> = self
            .labels
            .iter()
            .map(|l| (l.branch.as_str(), l.sign))
            .collect();
        crate::cyclic::rotation_order(&simplified)
    }
}

impl Atom {
    /// The Eulerian word of a boundary circle, named by its Reeb edge.
    pub fn eulerian_cycle(&self, circle: usize) -> Result<&CyclicWord, ReebError> {
        if self.arc_count == 0 {
            return Err(ReebError::ExtremeAtom);
        }
        self.words
            .get(&circle)
            .ok_or_else(|| ReebError::Malformed(format!("edge {circle} is not a circle of this atom")))
    }

    pub fn words(&self) -> &BTreeMap<usize, CyclicWord> {
        &self.words
    }
}

/// Extract the atom of a critical Reeb vertex. `epsilon` is fixed at 0.4
/// times the gap to the nearest other critical value.
pub fn extract_atom(
    reeb: &ReebGraph,
    mesh: &Mesh,
    field: &ScalarField,
    u: usize,
) -> Result<Atom, ReebError> {
    let vert = &reeb.vertices[u];
    if vert.kind == ReebVertexKind::Boundary {
        // The neighborhood of a boundary component always meets the
        // surface boundary.
        return Err(ReebError::BoundaryCollision);
    }
    let value = vert.value;
    let mut gap = f64::INFINITY;
    for (i, w) in reeb.vertices.iter().enumerate() {
        if i != u && w.value != value {
            gap = gap.min((w.value - value).abs());
        }
    }
    let epsilon = if gap.is_finite() { 0.4 * gap } else { 0.5 };

    let lower_circles = reeb.lower_edges[u].clone();
    let upper_circles = reeb.upper_edges[u].clone();

    let z = vert.mesh_vertex.expect("interior critical vertex");
    if matches!(vert.kind, ReebVertexKind::Min | ReebVertexKind::Max) {
        return Ok(Atom {
            reeb_vertex: u,
            epsilon,
            lower_circles,
            upper_circles,
            arc_count: 0,
            words: BTreeMap::new(),
        });
    }

    // Branch codes of the far sides, when the graph is a tree.
    let branch_codes = if reeb.is_tree() {
        Some(tree_branch_codes(reeb, u))
    } else {
        None
    };

    let ribbon = trace_arcs(reeb, mesh, field, z)?;
    let faces = ribbon.faces();

    // Face -> Reeb edge via sector components; every sector of a face must
    // agree, and faces must biject onto the incident edges.
    let mut face_edge: Vec<usize> = Vec::with_capacity(faces.len());
    for face in &faces {
        let mut edge: Option<usize> = None;
        for &dart in face {
            let sector_edge = ribbon.sector_edge(dart);
            match edge {
                None => edge = Some(sector_edge),
                Some(e) if e == sector_edge => {}
                Some(e) => {
                    return Err(ReebError::Malformed(format!(
                        "atom face mixes level families {e} and {sector_edge}"
                    )))
                }
            }
        }
        face_edge.push(edge.expect("faces are nonempty"));
    }
    {
        let mut seen: Vec<usize> = face_edge.clone();
        seen.sort_unstable();
        let mut expected: Vec<usize> = lower_circles
            .iter()
            .chain(upper_circles.iter())
            .copied()
            .collect();
        expected.sort_unstable();
        if seen != expected {
            return Err(ReebError::Malformed(
                "atom faces do not biject onto the incident level families".into(),
            ));
        }
    }

    // The far side of a dart's arc is the face containing the other end.
    let mut face_of_dart = vec![usize::MAX; ribbon.darts()];
    for (fi, face) in faces.iter().enumerate() {
        for &d in face {
            face_of_dart[d] = fi;
        }
    }

    let mut words = BTreeMap::new();
    for (fi, face) in faces.iter().enumerate() {
        let labels: Vec<WordLabel> = face
            .iter()
            .map(|&d| {
                let arc = ribbon.arc_of_dart(d);
                let other = ribbon.other_end(d);
                let far_edge = face_edge[face_of_dart[other]];
                let branch = branch_codes
                    .as_ref()
                    .map(|codes| codes[&far_edge].clone())
                    .unwrap_or_default();
                WordLabel {
                    arc,
                    far_edge,
                    branch,
                    sign: if ribbon.is_trace_start(d) { 1 } else { -1 },
                }
            })
            .collect();
        words.insert(face_edge[fi], CyclicWord { labels });
    }

    Ok(Atom {
        reeb_vertex: u,
        epsilon,
        lower_circles,
        upper_circles,
        arc_count: ribbon.arc_pairs.len(),
        words,
    })
}

/// Canonical code of the subtree behind each edge at `u`, computed on the
/// bare Reeb tree (sorted children, height tokens; no plane structure).
fn tree_branch_codes(reeb: &ReebGraph, u: usize) -> BTreeMap<usize, String> {
    let mut out = BTreeMap::new();
    for (&e, &w) in reeb.lower_edges[u]
        .iter()
        .map(|e| (e, &reeb.edges[*e].lower))
        .chain(reeb.upper_edges[u].iter().map(|e| (e, &reeb.edges[*e].upper)))
        .collect::<Vec<_>>()
        .iter()
    {
        out.insert(e, reeb_branch_code(reeb, w, u));
    }
    out
}

fn reeb_branch_code(reeb: &ReebGraph, v: usize, parent: usize) -> String {
    let vert = &reeb.vertices[v];
    let mut child_codes: Vec<String> = reeb
        .neighbors(v)
        .into_iter()
        .filter(|&w| w != parent)
        .map(|w| reeb_branch_code(reeb, w, v))
        .collect();
    child_codes.sort();
    let kind = match vert.kind {
        ReebVertexKind::Min => "м",
        ReebVertexKind::Max => "M",
        ReebVertexKind::Saddle { .. } => "s",
        ReebVertexKind::Boundary => "b",
    };
    format!("({kind}@{}|{})", vert.token, child_codes.join(""))
}

/// The one-vertex ribbon structure of a critical component: darts are the
/// mixed star triangles of z in rotational order; arcs pair them up.
struct Ribbon {
    /// Star position of each dart, in rotational order.
    dart_positions: Vec<usize>,
    /// Pairs of darts, one per arc.
    arc_pairs: Vec<(usize, usize)>,
    /// Arc id and role per dart.
    arc_of: Vec<usize>,
    trace_start: Vec<bool>,
    /// Reeb edge of the sector following each dart (rotationally).
    sector_edges: Vec<usize>,
}

impl Ribbon {
    fn darts(&self) -> usize {
        self.dart_positions.len()
    }

    fn arc_of_dart(&self, d: usize) -> usize {
        self.arc_of[d]
    }

    fn other_end(&self, d: usize) -> usize {
        let (a, b) = self.arc_pairs[self.arc_of[d]];
        if a == d {
            b
        } else {
            a
        }
    }

    fn is_trace_start(&self, d: usize) -> bool {
        self.trace_start[d]
    }

    fn sector_edge(&self, d: usize) -> usize {
        self.sector_edges[d]
    }

    /// Boundary faces: orbits of dart -> other_end(next(dart)).
    fn faces(&self) -> Vec<Vec<usize>> {
        let n = self.darts();
        let next = |d: usize| self.other_end((d + 1) % n);
        let mut seen = vec![false; n];
        let mut faces = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut face = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                face.push(d);
                d = next(d);
            }
            faces.push(face);
        }
        faces
    }
}

fn trace_arcs(
    reeb: &ReebGraph,
    mesh: &Mesh,
    field: &ScalarField,
    z: usize,
) -> Result<Ribbon, ReebError> {
    let _ = field;
    let pos_of_vertex = |v: usize| reeb.node_pos[reeb.node_of_vertex[v]];
    let pz = pos_of_vertex(z);
    let below = |v: usize| pos_of_vertex(v) < pz;

    let star = mesh.star_cycle(z)?;
    let tris = mesh.triangles();

    // Darts: mixed star triangles (opposite edge straddles z's level).
    let mut dart_positions = Vec::new();
    for (i, &t) in star.iter().enumerate() {
        let (x, y) = oriented_pair(&tris[t], z);
        if below(x) != below(y) {
            dart_positions.push(i);
        }
    }
    let n_darts = dart_positions.len();
    let dart_at: BTreeMap<usize, usize> = dart_positions
        .iter()
        .enumerate()
        .map(|(d, &p)| (p, d))
        .collect();

    // Sector edge per dart: the star edge right after the dart's triangle
    // leads into the adjacent region; its slab component names the Reeb
    // edge of that sector.
    let mut sector_edges = Vec::with_capacity(n_darts);
    for &p in &dart_positions {
        let t = star[p];
        let (_, y) = oriented_pair(&tris[t], z);
        sector_edges.push(region_edge(reeb, mesh, z, y, pz)?);
    }

    // Trace each arc once, from the lexicographically first unused dart.
    let mut arc_pairs = Vec::new();
    let mut arc_of = vec![usize::MAX; n_darts];
    let mut trace_start = vec![false; n_darts];
    for d in 0..n_darts {
        if arc_of[d] != usize::MAX {
            continue;
        }
        let start_tri = star[dart_positions[d]];
        let (mut a, mut b) = oriented_pair(&tris[start_tri], z);
        if below(b) {
            std::mem::swap(&mut a, &mut b);
        }
        // a below, b above; the arc leaves through edge (a, b).
        let mut cur_tri = start_tri;
        let mut cur_edge = mesh
            .edge_id(a, b)
            .expect("triangle edge");
        let end_dart;
        loop {
            let sides = mesh.edge_triangles(cur_edge);
            if sides.len() != 2 {
                return Err(ReebError::Malformed(
                    "level arc ran into the surface boundary".into(),
                ));
            }
            let next_tri = if sides[0] == cur_tri { sides[1] } else { sides[0] };
            if tris[next_tri].contains(&z) {
                let pos = star
                    .iter()
                    .position(|&t| t == next_tri)
                    .expect("star triangle");
                end_dart = *dart_at.get(&pos).ok_or_else(|| {
                    ReebError::Malformed("arc ended at a non-mixed star triangle".into())
                })?;
                break;
            }
            // Cross next_tri: exit through its other straddling edge.
            let (ea, eb) = mesh.edges()[cur_edge];
            let w = *tris[next_tri]
                .iter()
                .find(|&&v| v != ea && v != eb)
                .expect("third vertex");
            let (lo, hi) = if below(ea) { (ea, eb) } else { (eb, ea) };
            let exit = if below(w) {
                mesh.edge_id(w, hi).expect("edge")
            } else {
                mesh.edge_id(lo, w).expect("edge")
            };
            cur_tri = next_tri;
            cur_edge = exit;
        }
        let arc = arc_pairs.len();
        arc_pairs.push((d, end_dart));
        arc_of[d] = arc;
        arc_of[end_dart] = arc;
        trace_start[d] = true;
    }

    Ok(Ribbon {
        dart_positions,
        arc_pairs,
        arc_of,
        trace_start,
        sector_edges,
    })
}

/// The Reeb edge of the region touching z through its star edge (z, w).
fn region_edge(
    reeb: &ReebGraph,
    mesh: &Mesh,
    z: usize,
    w: usize,
    pz: usize,
) -> Result<usize, ReebError> {
    let pos_of_vertex = |v: usize| reeb.node_pos[reeb.node_of_vertex[v]];
    let pw = pos_of_vertex(w);
    let slab = if pw < pz { pz - 1 } else { pz };
    let e = mesh
        .edge_id(z, w)
        .ok_or_else(|| ReebError::Malformed("missing star edge".into()))?;
    let comp = reeb.slab_comp[slab]
        .get(&e)
        .ok_or_else(|| ReebError::Malformed("star edge misses its slab".into()))?;
    Ok(reeb.comp_edge[*comp])
}
