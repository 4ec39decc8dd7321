//! Canonical codes of plane subtrees. Two subtrees get equal codes iff an
//! order-and-height-preserving plane isomorphism matches them: heights
//! compare by exact token, child sequences by their minimal cyclic
//! rotation.

use super::{KrModel, VertexKind};
use crate::cyclic::canonical_rotation;

/// Deterministic canonical code of the subtree at `v` (children only; the
/// parent side is not encoded).
pub fn canonical_code(model: &KrModel, v: usize) -> String {
    let vert = model.vertex(v);
    let kind = match vert.kind {
        VertexKind::Boundary => "b",
        VertexKind::Extreme => "e",
        VertexKind::DegenerateExtreme => "x",
        VertexKind::Saddle => "s",
        VertexKind::Regular => "r",
        VertexKind::Phantom => "p",
    };
    let sym = vert
        .symmetry
        .map(|n| format!(";{n}"))
        .unwrap_or_default();
    let child_codes: Vec<String> = model
        .children(v)
        .iter()
        .map(|&c| canonical_code(model, c))
        .collect();
    let rotated = canonical_rotation(&child_codes);
    format!("({kind}{sym}@{}|{})", vert.height, rotated.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::{Height, KrVertex};

    fn leaf(h: i64) -> KrVertex {
        KrVertex {
            height: Height::from(h),
            kind: VertexKind::Extreme,
            symmetry: None,
        }
    }

    fn saddle(h: i64) -> KrVertex {
        KrVertex {
            height: Height::from(h),
            kind: VertexKind::Saddle,
            symmetry: None,
        }
    }

    fn boundary(h: i64) -> KrVertex {
        KrVertex {
            height: Height::from(h),
            kind: VertexKind::Boundary,
            symmetry: None,
        }
    }

    #[test]
    fn equal_height_leaves_share_codes() {
        let model = KrModel::new(
            vec![boundary(0), saddle(1), leaf(2), leaf(2)],
            vec![vec![1], vec![2, 3], vec![], vec![]],
            0,
        )
        .unwrap();
        assert_eq!(canonical_code(&model, 2), canonical_code(&model, 3));
    }

    #[test]
    fn different_height_leaves_differ() {
        let model = KrModel::new(
            vec![boundary(0), saddle(1), leaf(2), leaf(3)],
            vec![vec![1], vec![2, 3], vec![], vec![]],
            0,
        )
        .unwrap();
        assert_ne!(canonical_code(&model, 2), canonical_code(&model, 3));
    }

    #[test]
    fn cyclic_rotation_of_children_is_invisible() {
        // Two saddles whose child lists differ by a rotation; leaves at
        // pairwise distinct heights 2, 3, 4.
        let build = |order: Vec<usize>| {
            KrModel::new(
                vec![boundary(0), saddle(1), leaf(2), leaf(3), leaf(4)],
                vec![vec![1], order, vec![], vec![], vec![]],
                0,
            )
            .unwrap()
        };
        let a = build(vec![2, 3, 4]);
        let b = build(vec![3, 4, 2]);
        assert_eq!(canonical_code(&a, 1), canonical_code(&b, 1));
        // A reflection is not a rotation: (2,3,4) vs (2,4,3) differ.
        let c = build(vec![2, 4, 3]);
        assert_ne!(canonical_code(&a, 1), canonical_code(&c, 1));
    }
}
