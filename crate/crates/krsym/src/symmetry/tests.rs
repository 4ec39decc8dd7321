use super::*;
use crate::groups::isomorphism;
use crate::rexpr::{evaluate, parse, GroupExpr};

fn h(v: i64) -> Height {
    Height::from(v)
}

fn vert(height: i64, kind: VertexKind) -> KrVertex {
    KrVertex {
        height: h(height),
        kind,
        symmetry: None,
    }
}

/// Root, one saddle, n identical max leaves in cyclic order.
fn fan_model(n: usize) -> KrModel {
    let mut vertices = vec![vert(0, VertexKind::Boundary), vert(1, VertexKind::Saddle)];
    let mut children = vec![vec![1], Vec::new()];
    for _ in 0..n {
        vertices.push(vert(2, VertexKind::Extreme));
        children.push(Vec::new());
        let id = vertices.len() - 1;
        children[1].push(id);
    }
    KrModel::new(vertices, children, 0).unwrap()
}

#[test]
fn fan_assembles_to_cyclic() {
    assert_eq!(assemble(&fan_model(3)).unwrap(), parse("Z3").unwrap());
    assert_eq!(assemble(&fan_model(5)).unwrap(), parse("Z5").unwrap());
}

#[test]
fn single_extreme_child_assembles_trivially() {
    let model = KrModel::new(
        vec![vert(0, VertexKind::Boundary), vert(1, VertexKind::Extreme)],
        vec![vec![1], vec![]],
        0,
    )
    .unwrap();
    assert_eq!(assemble(&model).unwrap(), GroupExpr::Triv);
}

#[test]
fn stacked_gadgets_assemble_to_product() {
    // Two height-disjoint gadgets on a cylinder realize G0 x G1.
    let model = realize(&parse("Z2 x Z3").unwrap(), Surface::Cylinder).unwrap();
    assert_eq!(assemble(&model).unwrap(), parse("Z2 x Z3").unwrap());
    assert_eq!(model.boundary_vertices().len(), 2);
}

#[test]
fn brute_force_examples() {
    // Single path: trivial group.
    let model = KrModel::new(
        vec![
            vert(0, VertexKind::Boundary),
            vert(1, VertexKind::Regular),
            vert(2, VertexKind::Extreme),
        ],
        vec![vec![1], vec![2], vec![]],
        0,
    )
    .unwrap();
    assert_eq!(brute_force_group(&model).unwrap().order().unwrap(), 1);

    assert_eq!(brute_force_group(&fan_model(3)).unwrap().order().unwrap(), 3);

    let nested = realize(&parse("Z2 wr Z3").unwrap(), Surface::Disk).unwrap();
    assert_eq!(
        brute_force_group(&nested).unwrap().order().unwrap(),
        24
    );
}

#[test]
fn oracle_agrees_with_assembled_group() {
    for text in ["Z3", "Z2 x Z2", "Z2 wr Z2", "Z4", "Z2 x Z3", "Z3 wr Z2"] {
        let e = parse(text).unwrap();
        for surface in [Surface::Disk, Surface::Cylinder] {
            let model = realize(&e, surface).unwrap();
            let assembled = assemble(&model).unwrap();
            let evaluated = evaluate(&assembled).unwrap();
            let brute = brute_force_group(&model).unwrap();
            assert_eq!(
                evaluated.order().unwrap(),
                brute.order().unwrap(),
                "{text} on {surface:?}"
            );
            assert!(
                isomorphism(&evaluated, &brute).unwrap().is_some(),
                "{text} on {surface:?} not isomorphic"
            );
        }
    }
}

#[test]
fn realize_disk_shapes() {
    let model = realize(&parse("Z3").unwrap(), Surface::Disk).unwrap();
    assert_eq!(model.vertex_count(), 5);
    let report = roundtrip(&parse("Z3").unwrap()).unwrap();
    assert!(report.ok);
}

#[test]
fn roundtrip_examples() {
    for text in ["1", "Z4", "Z2 wr Z2", "(Z2 x Z3) wr Z2"] {
        let report = roundtrip(&parse(text).unwrap()).unwrap();
        assert!(report.ok, "roundtrip failed for {text}: {report:?}");
    }
    // The order-72 case is above the oracle bound: only formulas checked.
    let report = roundtrip(&parse("(Z2 x Z3) wr Z2").unwrap()).unwrap();
    assert!(report.oracle_order.is_none());
    assert_eq!(report.order, 72);
}

#[test]
fn degenerate_extreme_contributes_its_index() {
    let model = KrModel::new(
        vec![
            vert(0, VertexKind::Boundary),
            KrVertex {
                height: h(1),
                kind: VertexKind::DegenerateExtreme,
                symmetry: Some(4),
            },
        ],
        vec![vec![1], vec![]],
        0,
    )
    .unwrap();
    assert_eq!(assemble(&model).unwrap(), parse("Z4").unwrap());
    assert_eq!(brute_force_group(&model).unwrap().order().unwrap(), 4);

    let model2 = KrModel::new(
        vec![
            vert(0, VertexKind::Boundary),
            KrVertex {
                height: h(1),
                kind: VertexKind::DegenerateExtreme,
                symmetry: Some(2),
            },
        ],
        vec![vec![1], vec![]],
        0,
    )
    .unwrap();
    assert_eq!(assemble(&model2).unwrap(), parse("Z2").unwrap());
}

#[test]
fn expansion_is_idempotent_and_preserves_assembly() {
    let model = KrModel::new(
        vec![
            vert(0, VertexKind::Boundary),
            vert(1, VertexKind::Saddle),
            KrVertex {
                height: h(2),
                kind: VertexKind::DegenerateExtreme,
                symmetry: Some(3),
            },
            vert(2, VertexKind::Extreme),
        ],
        vec![vec![1], vec![2, 3], vec![], vec![]],
        0,
    )
    .unwrap();
    let once = model.expand_degenerate().unwrap();
    let twice = once.expand_degenerate().unwrap();
    assert_eq!(once.vertex_count(), twice.vertex_count());
    assert_eq!(assemble(&model).unwrap(), assemble(&once).unwrap());
}

#[test]
fn reroot_keeps_the_assembled_group() {
    for text in ["Z2 x Z3", "Z3", "1", "Z2 wr Z2"] {
        let e = parse(text).unwrap();
        let model = realize(&e, Surface::Cylinder).unwrap();
        let rerooted = model.reroot_at_other_boundary().unwrap();
        assert_eq!(
            assemble(&model).unwrap(),
            assemble(&rerooted).unwrap(),
            "reroot changed the group for {text}"
        );
    }
}

#[test]
fn rotation_freeness_at_rotating_vertices() {
    // Wherever the rotation order d exceeds 1, no child position is fixed
    // by the rotation subgroup: all orbits have size exactly d.
    for text in ["Z3", "Z2 wr Z2", "Z2 wr Z3", "Z5"] {
        let model = realize(&parse(text).unwrap(), Surface::Disk)
            .unwrap()
            .expand_degenerate()
            .unwrap();
        for v in 0..model.vertex_count() {
            let children = model.children(v);
            let m = children.len();
            if m == 0 {
                continue;
            }
            let word: Vec<String> = children
                .iter()
                .map(|&c| canonical_code(&model, c))
                .collect();
            let p = crate::cyclic::smallest_period(&word);
            let d = m / p;
            if d > 1 {
                // Orbit of position i under rotation by p has size m/p = d.
                for i in 0..m {
                    let mut orbit = std::collections::BTreeSet::new();
                    let mut x = i;
                    loop {
                        if !orbit.insert(x) {
                            break;
                        }
                        x = (x + p) % m;
                    }
                    assert_eq!(orbit.len(), d);
                }
            }
        }
    }
}

#[test]
fn krt_round_trip_is_stable() {
    let model = realize(&parse("Z2 wr Z2").unwrap(), Surface::Disk).unwrap();
    let text = write_krt(&model);
    let back = parse_krt(&text).unwrap();
    assert_eq!(write_krt(&back), text);
    assert_eq!(assemble(&back).unwrap(), assemble(&model).unwrap());
}

#[test]
fn krt_errors() {
    assert!(parse_krt("vertex 0 height=0 kind=boundary").is_err()); // no root
    assert!(parse_krt("root 0").is_err());
    assert!(parse_krt("vertex 0 height=zz kind=boundary\nroot 0").is_err());
    assert!(parse_krt("vertex 0 height=0 kind=nope\nroot 0").is_err());
    // Degenerate extreme without an index.
    assert!(parse_krt(
        "vertex 0 height=0 kind=boundary\nvertex 1 height=1 kind=degextreme\nchildren 0: 1\nroot 0"
    )
    .is_err());
}

#[test]
fn model_validation() {
    // Adjacent equal heights are rejected.
    assert!(KrModel::new(
        vec![vert(0, VertexKind::Boundary), vert(0, VertexKind::Extreme)],
        vec![vec![1], vec![]],
        0,
    )
    .is_err());
    // Root must be a boundary vertex.
    assert!(KrModel::new(
        vec![vert(0, VertexKind::Saddle), vert(1, VertexKind::Extreme)],
        vec![vec![1], vec![]],
        0,
    )
    .is_err());
    // Cycles are rejected.
    assert!(KrModel::new(
        vec![
            vert(0, VertexKind::Boundary),
            vert(1, VertexKind::Saddle),
            vert(2, VertexKind::Saddle),
        ],
        vec![vec![1], vec![2, 0], vec![]],
        0,
    )
    .is_err());
}
