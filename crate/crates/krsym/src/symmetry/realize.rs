//! Realization of cyclic expressions as KR models on a disk or cylinder.
//!
//! Cyclic atoms become saddles with identical leaf branches; product
//! factors occupy pairwise disjoint integer height bands; a wreath by `Zn`
//! replaces the n symmetric leaves of the cyclic gadget with identically
//! height-shifted copies of the base realization.

use super::{assemble, brute_force_group, Height, KrModel, KrVertex, ModelError, VertexKind};
use crate::rexpr::{normal_form, Family, GroupExpr};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Surface {
    Disk,
    Cylinder,
}

impl std::str::FromStr for Surface {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "disk" => Ok(Surface::Disk),
            "cylinder" => Ok(Surface::Cylinder),
            other => Err(format!("unknown surface {other:?} (disk|cylinder)")),
        }
    }
}

struct Builder {
    vertices: Vec<KrVertex>,
    children: Vec<Vec<usize>>,
}

impl Builder {
    fn push(&mut self, height: i64, kind: VertexKind) -> usize {
        self.vertices.push(KrVertex {
            height: Height::from(height),
            kind,
            symmetry: None,
        });
        self.children.push(Vec::new());
        self.vertices.len() - 1
    }
}

/// Height extent of a branch realization: the number of integer levels it
/// occupies.
fn extent(e: &GroupExpr) -> u64 {
    match e {
        GroupExpr::Triv => 1,
        GroupExpr::Atom(_) => 2,
        GroupExpr::Prod(children) => 1 + children.iter().map(extent).sum::<u64>(),
        GroupExpr::Wr { base, .. } => 1 + extent(base),
    }
}

/// Build the branch realizing `e`, rooted at height `h`; returns its root.
fn branch(b: &mut Builder, e: &GroupExpr, h: i64) -> Result<usize, ModelError> {
    match e {
        GroupExpr::Triv => Ok(b.push(h, VertexKind::Extreme)),
        GroupExpr::Atom(a) if a.family == Family::Cyclic => {
            let saddle = b.push(h, VertexKind::Saddle);
            for _ in 0..a.n {
                let leaf = b.push(h + 1, VertexKind::Extreme);
                b.children[saddle].push(leaf);
            }
            Ok(saddle)
        }
        GroupExpr::Prod(children) => {
            let saddle = b.push(h, VertexKind::Saddle);
            let mut start = h + 1;
            for c in children {
                let sub = branch(b, c, start)?;
                b.children[saddle].push(sub);
                start += extent(c) as i64;
            }
            Ok(saddle)
        }
        GroupExpr::Wr { base, top, .. } => {
            let n = match &**top {
                GroupExpr::Atom(a) if a.family == Family::Cyclic => a.n,
                other => return Err(ModelError::NotCyclic(other.pretty())),
            };
            let saddle = b.push(h, VertexKind::Saddle);
            for _ in 0..n {
                let sub = branch(b, base, h + 1)?;
                b.children[saddle].push(sub);
            }
            Ok(saddle)
        }
        GroupExpr::Atom(a) => Err(ModelError::NotCyclic(GroupExpr::Atom(*a).pretty())),
    }
}

/// Realize a cyclic expression as a KR model whose assembled symmetry
/// group is `normal_form(e)`. The expression is normalized first.
pub fn realize(e: &GroupExpr, surface: Surface) -> Result<KrModel, ModelError> {
    if !e.is_r_expression(Family::Cyclic) {
        return Err(ModelError::NotCyclic(e.pretty()));
    }
    let e = normal_form(e);
    let mut b = Builder {
        vertices: Vec::new(),
        children: Vec::new(),
    };
    let root = b.push(0, VertexKind::Boundary);
    match surface {
        Surface::Disk => {
            let sub = branch(&mut b, &e, 1)?;
            b.children[root].push(sub);
        }
        Surface::Cylinder => {
            let factors: Vec<&GroupExpr> = match &e {
                GroupExpr::Triv => Vec::new(),
                GroupExpr::Prod(children) => children.iter().collect(),
                other => vec![other],
            };
            if factors.is_empty() {
                let top = b.push(1, VertexKind::Boundary);
                b.children[root].push(top);
            } else {
                let mut h = 1;
                let mut attach = root;
                for f in factors {
                    let spine = b.push(h, VertexKind::Saddle);
                    b.children[attach].push(spine);
                    let sub = branch(&mut b, f, h + 1)?;
                    b.children[spine].push(sub);
                    attach = spine;
                    h += 1 + extent(f) as i64;
                }
                let top = b.push(h, VertexKind::Boundary);
                b.children[attach].push(top);
            }
        }
    }
    KrModel::new(b.vertices, b.children, root)
}

/// Result of the realize/assemble round trip.
#[derive(Clone, Debug)]
pub struct RoundtripReport {
    pub expected: GroupExpr,
    pub assembled: GroupExpr,
    pub order: u64,
    /// Brute-force group order, when the model is small enough to
    /// enumerate.
    pub oracle_order: Option<usize>,
    pub ok: bool,
}

/// Realize on a disk, reassemble, and compare; the exhaustive oracle runs
/// when the model is within its vertex bound.
pub fn roundtrip(e: &GroupExpr) -> Result<RoundtripReport, ModelError> {
    let expected = normal_form(e);
    let model = realize(&expected, Surface::Disk)?;
    let assembled = assemble(&model)?;
    let order = expected.order()?;
    let oracle_order = match brute_force_group(&model) {
        Ok(g) => Some(g.order()?),
        Err(ModelError::TooLarge(_)) => None,
        Err(e) => return Err(e),
    };
    let ok = assembled == expected
        && oracle_order.map(|o| o as u64 == order).unwrap_or(true);
    Ok(RoundtripReport {
        expected,
        assembled,
        order,
        oracle_order,
        ok,
    })
}
