//! Height-labeled plane trees (KR models) and their symmetry groups.
//!
//! A `KrModel` is a rooted tree with a height per vertex and a cyclic
//! order on each vertex's children. Its symmetry group is the group of
//! root-fixing, height-preserving automorphisms that act on every child
//! list by a cyclic rotation. `assemble` computes that group as a
//! product/wreath expression over cyclic atoms, `brute_force_group`
//! enumerates it exhaustively, and `realize` builds a model on a disk or
//! cylinder whose symmetry group is a given expression.

mod assemble;
mod brute;
mod code;
mod height;
mod krt;
mod realize;

pub use assemble::assemble;
pub use brute::brute_force_group;
pub use code::canonical_code;
pub use height::Height;
pub use krt::{parse_krt, write_krt};
pub use realize::{realize, roundtrip, RoundtripReport, Surface};

use thiserror::Error;

use crate::groups::GroupError;
use crate::rexpr::ExprError;

#[derive(Debug, Clone, Error)]
pub enum ModelError {
    #[error("invalid model: {0}")]
    Invalid(String),
    #[error("malformed model file: {0}")]
    Malformed(String),
    #[error("model too large for exhaustive search ({0} vertices)")]
    TooLarge(usize),
    #[error("expression is not normal-form over cyclic atoms: {0}")]
    NotCyclic(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Expr(#[from] ExprError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexKind {
    /// Surface boundary component; the root, or the second cylinder
    /// boundary as a leaf.
    Boundary,
    /// Nondegenerate local extreme: a plain leaf.
    Extreme,
    /// Degenerate local extreme with a symmetry index; expands into
    /// phantom framing leaves.
    DegenerateExtreme,
    Saddle,
    Regular,
    /// Framing leaf attached under a degenerate extreme. Internal only:
    /// never written to files, shares its parent's height.
    Phantom,
}

impl VertexKind {
    pub fn token(self) -> &'static str {
        match self {
            VertexKind::Boundary => "boundary",
            VertexKind::Extreme => "extreme",
            VertexKind::DegenerateExtreme => "degextreme",
            VertexKind::Saddle => "saddle",
            VertexKind::Regular => "regular",
            VertexKind::Phantom => "phantom",
        }
    }
}

#[derive(Clone, Debug)]
pub struct KrVertex {
    pub height: Height,
    pub kind: VertexKind,
    /// Symmetry index of a degenerate extreme (>= 2).
    pub symmetry: Option<u32>,
}

/// A height-labeled plane tree. `children[v]` is cyclically ordered; the
/// root is a boundary vertex.
#[derive(Clone, Debug)]
pub struct KrModel {
    vertices: Vec<KrVertex>,
    children: Vec<Vec<usize>>,
    root: usize,
    parent: Vec<Option<usize>>,
}

impl KrModel {
    pub fn new(
        vertices: Vec<KrVertex>,
        children: Vec<Vec<usize>>,
        root: usize,
    ) -> Result<Self, ModelError> {
        let n = vertices.len();
        if n == 0 {
            return Err(ModelError::Invalid("empty model".into()));
        }
        if children.len() != n || root >= n {
            return Err(ModelError::Invalid("mismatched child table".into()));
        }
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut stack = vec![root];
        let mut visited = 1;
        while let Some(v) = stack.pop() {
            for &c in &children[v] {
                if c >= n || seen[c] {
                    return Err(ModelError::Invalid(format!(
                        "vertex {c} reached twice; not a tree"
                    )));
                }
                seen[c] = true;
                parent[c] = Some(v);
                visited += 1;
                stack.push(c);
            }
        }
        if visited != n {
            return Err(ModelError::Invalid("model is not connected".into()));
        }
        let model = KrModel {
            vertices,
            children,
            root,
            parent,
        };
        model.validate()?;
        Ok(model)
    }

    fn validate(&self) -> Result<(), ModelError> {
        if self.vertices[self.root].kind != VertexKind::Boundary {
            return Err(ModelError::Invalid("root must be a boundary vertex".into()));
        }
        let mut extra_boundary = 0;
        for v in 0..self.vertices.len() {
            let vert = &self.vertices[v];
            if let Some(p) = self.parent[v] {
                // Adjacent heights differ, except phantoms share their
                // parent's height by design.
                if vert.kind != VertexKind::Phantom
                    && self.vertices[p].height == vert.height
                {
                    return Err(ModelError::Invalid(format!(
                        "adjacent vertices {p} and {v} share height {}",
                        vert.height
                    )));
                }
            }
            match vert.kind {
                VertexKind::Boundary => {
                    if v != self.root {
                        extra_boundary += 1;
                        if !self.children[v].is_empty() {
                            return Err(ModelError::Invalid(format!(
                                "non-root boundary vertex {v} must be a leaf"
                            )));
                        }
                    }
                }
                VertexKind::DegenerateExtreme => {
                    let idx = vert.symmetry.unwrap_or(0);
                    if idx < 2 {
                        return Err(ModelError::Invalid(format!(
                            "degenerate extreme {v} needs a symmetry index >= 2"
                        )));
                    }
                    if self
                        .children[v]
                        .iter()
                        .any(|&c| self.vertices[c].kind != VertexKind::Phantom)
                    {
                        return Err(ModelError::Invalid(format!(
                            "degenerate extreme {v} may only own phantom children"
                        )));
                    }
                }
                VertexKind::Extreme => {
                    if !self.children[v].is_empty() {
                        return Err(ModelError::Invalid(format!(
                            "extreme {v} must be a leaf"
                        )));
                    }
                }
                VertexKind::Phantom => {
                    if !self.children[v].is_empty() {
                        return Err(ModelError::Invalid(format!(
                            "phantom {v} must be a leaf"
                        )));
                    }
                }
                VertexKind::Saddle | VertexKind::Regular => {}
            }
            if vert.symmetry.is_some() && vert.kind != VertexKind::DegenerateExtreme {
                return Err(ModelError::Invalid(format!(
                    "vertex {v} carries a symmetry index but is not a degenerate extreme"
                )));
            }
        }
        if extra_boundary > 1 {
            return Err(ModelError::Invalid(
                "at most two boundary vertices are allowed".into(),
            ));
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex(&self, v: usize) -> &KrVertex {
        &self.vertices[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn root(&self) -> usize {
        self.root
    }

    /// Boundary vertices in id order.
    pub fn boundary_vertices(&self) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&v| self.vertices[v].kind == VertexKind::Boundary)
            .collect()
    }

    /// Re-root a cylinder model at its other boundary vertex. Along the
    /// flipped path the old parent takes the cyclic slot of the old
    /// on-path child, so sibling rotations are preserved.
    pub fn reroot_at_other_boundary(&self) -> Result<KrModel, ModelError> {
        let boundaries = self.boundary_vertices();
        let &other = boundaries
            .iter()
            .find(|&&v| v != self.root)
            .ok_or_else(|| ModelError::Invalid("model has a single boundary vertex".into()))?;
        let mut path = vec![other];
        let mut cur = other;
        while let Some(p) = self.parent[cur] {
            path.push(p);
            cur = p;
        }
        let mut children = self.children.clone();
        children[other] = vec![path[1]];
        for i in 1..path.len() {
            let v = path[i];
            let pred = path[i - 1];
            let pos = children[v]
                .iter()
                .position(|&c| c == pred)
                .expect("path edge present");
            if i + 1 < path.len() {
                children[v][pos] = path[i + 1];
            } else {
                children[v].remove(pos);
            }
        }
        KrModel::new(self.vertices.clone(), children, other)
    }

    /// Expand every degenerate extreme of index `n` into `n` identical
    /// phantom leaf children at the same height. Idempotent.
    pub fn expand_degenerate(&self) -> Result<KrModel, ModelError> {
        let mut vertices = self.vertices.clone();
        let mut children = self.children.clone();
        for v in 0..self.vertices.len() {
            if self.vertices[v].kind == VertexKind::DegenerateExtreme
                && self.children[v].is_empty()
            {
                let n = self.vertices[v].symmetry.unwrap() as usize;
                for _ in 0..n {
                    let id = vertices.len();
                    vertices.push(KrVertex {
                        height: self.vertices[v].height.clone(),
                        kind: VertexKind::Phantom,
                        symmetry: None,
                    });
                    children.push(Vec::new());
                    children[v].push(id);
                }
            }
        }
        KrModel::new(vertices, children, self.root)
    }
}

#[cfg(test)]
mod tests;
