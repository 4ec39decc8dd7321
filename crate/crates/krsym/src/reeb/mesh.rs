//! Triangulated surface meshes: OFF loading, manifold/orientation
//! validation, and boundary-loop extraction.

use std::collections::BTreeMap;

use super::ReebError;

#[derive(Clone, Debug)]
pub struct Mesh {
    positions: Vec<[f64; 3]>,
    triangles: Vec<[usize; 3]>,
    edges: Vec<(usize, usize)>,
    edge_index: BTreeMap<(usize, usize), usize>,
    edge_triangles: Vec<Vec<usize>>,
    boundary_loops: Vec<Vec<usize>>,
}

impl Mesh {
    /// Validate and index a triangle soup: every edge borders at most two
    /// triangles, windings are consistent (orientable), the surface is
    /// connected, and boundary edges close into disjoint simple loops.
    pub fn new(positions: Vec<[f64; 3]>, triangles: Vec<[usize; 3]>) -> Result<Self, ReebError> {
        let nv = positions.len();
        if nv == 0 || triangles.is_empty() {
            return Err(ReebError::Malformed("empty mesh".into()));
        }
        let mut edge_index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut edge_triangles: Vec<Vec<usize>> = Vec::new();
        let mut directed_seen: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (ti, tri) in triangles.iter().enumerate() {
            let [a, b, c] = *tri;
            if a >= nv || b >= nv || c >= nv || a == b || b == c || a == c {
                return Err(ReebError::Malformed(format!("bad triangle {tri:?}")));
            }
            for (u, v) in [(a, b), (b, c), (c, a)] {
                if directed_seen.insert((u, v), ti).is_some() {
                    // The same directed edge twice means inconsistent
                    // windings (or a doubled face).
                    return Err(ReebError::NonOrientable);
                }
                let key = (u.min(v), u.max(v));
                let id = *edge_index.entry(key).or_insert_with(|| {
                    edges.push(key);
                    edge_triangles.push(Vec::new());
                    edges.len() - 1
                });
                if !edge_triangles[id].contains(&ti) {
                    edge_triangles[id].push(ti);
                }
            }
        }
        for (id, tris) in edge_triangles.iter().enumerate() {
            if tris.len() > 2 {
                return Err(ReebError::Malformed(format!(
                    "edge {:?} borders {} triangles",
                    edges[id],
                    tris.len()
                )));
            }
        }
        // Connectivity over the vertex graph.
        let mut adj = vec![Vec::new(); nv];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut seen = vec![false; nv];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        if count != nv {
            return Err(ReebError::Malformed(
                "mesh is not connected (or has isolated vertices)".into(),
            ));
        }
        // Boundary loops: boundary edges chain into disjoint simple cycles.
        let mut boundary_next: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (id, tris) in edge_triangles.iter().enumerate() {
            if tris.len() == 1 {
                let (u, v) = edges[id];
                boundary_next.entry(u).or_default().push(v);
                boundary_next.entry(v).or_default().push(u);
            }
        }
        for (v, nbrs) in &boundary_next {
            if nbrs.len() != 2 {
                return Err(ReebError::Malformed(format!(
                    "boundary vertex {v} has {} boundary edges",
                    nbrs.len()
                )));
            }
        }
        let mut boundary_loops = Vec::new();
        let mut visited: BTreeMap<usize, bool> = BTreeMap::new();
        for &start in boundary_next.keys() {
            if visited.get(&start).copied().unwrap_or(false) {
                continue;
            }
            let mut cycle = vec![start];
            visited.insert(start, true);
            let mut prev = start;
            let mut cur = boundary_next[&start][0];
            while cur != start {
                visited.insert(cur, true);
                cycle.push(cur);
                let nbrs = &boundary_next[&cur];
                let next = if nbrs[0] == prev { nbrs[1] } else { nbrs[0] };
                prev = cur;
                cur = next;
            }
            boundary_loops.push(cycle);
        }
        boundary_loops.sort_by_key(|l| l.iter().copied().min());
        Ok(Mesh {
            positions,
            triangles,
            edges,
            edge_index,
            edge_triangles,
            boundary_loops,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.positions.len()
    }

    pub fn positions(&self) -> &[[f64; 3]] {
        &self.positions
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        self.edge_index.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn edge_triangles(&self, edge: usize) -> &[usize] {
        &self.edge_triangles[edge]
    }

    pub fn boundary_loops(&self) -> &[Vec<usize>] {
        &self.boundary_loops
    }

    pub fn is_closed(&self) -> bool {
        self.boundary_loops.is_empty()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.positions.len() as i64 - self.edges.len() as i64 + self.triangles.len() as i64
    }

    pub fn is_boundary_vertex(&self, v: usize) -> bool {
        self.boundary_loops.iter().any(|l| l.contains(&v))
    }

    /// The star triangles around an interior vertex in rotational order:
    /// consecutive triangles share an edge through `v`, and the walk
    /// follows the global orientation.
    pub fn star_cycle(&self, v: usize) -> Result<Vec<usize>, ReebError> {
        let first = self
            .triangles
            .iter()
            .position(|t| t.contains(&v))
            .ok_or_else(|| ReebError::Malformed(format!("vertex {v} has no triangle")))?;
        let mut order = vec![first];
        let mut current = first;
        loop {
            // Oriented triple with v first: (v, x, y); leave across (v, y).
            let (_, y) = oriented_pair(&self.triangles[current], v);
            let edge = self.edge_id(v, y).expect("star edge exists");
            let tris = self.edge_triangles(edge);
            if tris.len() != 2 {
                return Err(ReebError::Malformed(format!(
                    "vertex {v} is not interior: open star edge"
                )));
            }
            let next = if tris[0] == current { tris[1] } else { tris[0] };
            if next == first {
                break;
            }
            order.push(next);
            current = next;
            if order.len() > self.triangles.len() {
                return Err(ReebError::Malformed(format!(
                    "star walk at vertex {v} does not close"
                )));
            }
        }
        Ok(order)
    }
}

/// For a triangle containing `v`, the other two vertices (x, y) so that
/// the stored winding reads v -> x -> y.
pub fn oriented_pair(tri: &[usize; 3], v: usize) -> (usize, usize) {
    let i = tri.iter().position(|&w| w == v).expect("vertex in triangle");
    (tri[(i + 1) % 3], tri[(i + 2) % 3])
}

/// Parse an ASCII OFF file: `OFF` header, `nv nf ne` counts, vertex
/// coordinate lines, then `3 a b c` face lines.
pub fn load_off(text: &str) -> Result<Mesh, ReebError> {
    let mut tokens = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(|l| l.split_whitespace().map(String::from).collect::<Vec<_>>())
        .into_iter();
    let header = tokens
        .next()
        .ok_or_else(|| ReebError::Malformed("empty OFF file".into()))?;
    if header != "OFF" {
        return Err(ReebError::Malformed(format!(
            "expected OFF header, found {header:?}"
        )));
    }
    let mut next_usize = |what: &str| -> Result<usize, ReebError> {
        tokens
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| ReebError::Malformed(format!("expected {what}")))
    };
    let nv = next_usize("vertex count")?;
    let nf = next_usize("face count")?;
    let _ne = next_usize("edge count")?;
    let mut rest: Vec<String> = tokens.collect();
    rest.reverse();
    let mut pop = |what: &str| -> Result<String, ReebError> {
        rest.pop()
            .ok_or_else(|| ReebError::Malformed(format!("expected {what}")))
    };
    let mut positions = Vec::with_capacity(nv);
    for _ in 0..nv {
        let mut coord = [0.0; 3];
        for c in &mut coord {
            *c = pop("coordinate")?
                .parse()
                .map_err(|_| ReebError::Malformed("bad coordinate".into()))?;
        }
        positions.push(coord);
    }
    let mut triangles = Vec::with_capacity(nf);
    for _ in 0..nf {
        let arity: usize = pop("face arity")?
            .parse()
            .map_err(|_| ReebError::Malformed("bad face arity".into()))?;
        if arity != 3 {
            return Err(ReebError::Malformed(format!(
                "only triangles are supported, found a {arity}-gon"
            )));
        }
        let mut tri = [0usize; 3];
        for t in &mut tri {
            *t = pop("face index")?
                .parse()
                .map_err(|_| ReebError::Malformed("bad face index".into()))?;
        }
        triangles.push(tri);
    }
    Mesh::new(positions, triangles)
}

/// Serialize to ASCII OFF (stable text, one vertex/face per line).
pub fn write_off(mesh: &Mesh) -> String {
    let mut out = String::from("OFF\n");
    out.push_str(&format!(
        "{} {} {}\n",
        mesh.vertex_count(),
        mesh.triangles().len(),
        mesh.edges().len()
    ));
    for p in mesh.positions() {
        out.push_str(&format!("{} {} {}\n", p[0], p[1], p[2]));
    }
    for t in mesh.triangles() {
        out.push_str(&format!("3 {} {} {}\n", t[0], t[1], t[2]));
    }
    out
}
