use super::*;
use crate::groups::{PermGroup, Permutation};

/// Star with `leaves` leaves: center 0, leaves 1..=leaves.
fn star(leaves: usize) -> Tree {
    Tree::new(leaves + 1, &(1..=leaves).map(|v| (0, v)).collect::<Vec<_>>()).unwrap()
}

/// Path a - u - b with u = 1.
fn path3() -> Tree {
    Tree::new(3, &[(0, 1), (1, 2)]).unwrap()
}

fn star3_rotation() -> TreeAction {
    let tree = star(3);
    let rot = Permutation::new(vec![0, 2, 3, 1]).unwrap();
    TreeAction::new(tree, PermGroup::new(4, vec![rot]).unwrap()).unwrap()
}

/// Depth-2 tree: u = 0 with children a = 1, b = 2; a's children 3, 4; b's
/// children 5, 6.
fn depth2_tree() -> Tree {
    Tree::new(7, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)]).unwrap()
}

#[test]
fn tree_validation() {
    assert!(Tree::new(3, &[(0, 1)]).is_err());
    assert!(Tree::new(3, &[(0, 1), (0, 1)]).is_err());
    assert!(Tree::new(3, &[(0, 1), (2, 2)]).is_err());
    assert!(Tree::new(4, &[(0, 1), (2, 3), (0, 2)]).is_ok());
}

#[test]
fn fix_set_trivial_action_fixes_everything() {
    let act = TreeAction::new(path3(), PermGroup::trivial(3)).unwrap();
    let fix = fix_set(&act).unwrap();
    assert_eq!(fix.vertices, vec![0, 1, 2]);
    assert_eq!(fix.edges.len(), 2);
}

#[test]
fn fix_set_of_rotating_star() {
    let act = star3_rotation();
    let fix = fix_set(&act).unwrap();
    assert_eq!(fix.vertices, vec![0]);
    assert!(fix.edges.is_empty());
}

#[test]
fn fix_set_of_leaf_swap() {
    let swap = Permutation::new(vec![2, 1, 0]).unwrap();
    let act = TreeAction::new(path3(), PermGroup::new(3, vec![swap]).unwrap()).unwrap();
    let fix = fix_set(&act).unwrap();
    assert_eq!(fix.vertices, vec![1]);
    assert!(fix.edges.is_empty());
}

#[test]
fn stabilizers_on_rotating_star() {
    let act = star3_rotation();
    assert_eq!(stabilizer(&act, 0).unwrap().order().unwrap(), 3);
    assert_eq!(stabilizer(&act, 1).unwrap().order().unwrap(), 1);
    assert_eq!(stabilizer_edge(&act, 0, 1).unwrap().order().unwrap(), 1);
    assert!(stabilizer_edge(&act, 1, 2).is_err());
}

#[test]
fn branches_of_small_trees() {
    let t = path3();
    let b = branch(&t, 1, 2).unwrap();
    assert_eq!(b.vertices, vec![1, 2]);
    assert_eq!(b.edges, vec![(1, 2)]);

    let s = star(3);
    let b = branch(&s, 0, 1).unwrap();
    assert_eq!(b.vertices, vec![0, 1]);

    // Caterpillar u - v - w.
    let c = Tree::new(3, &[(0, 1), (1, 2)]).unwrap();
    let r = reduced_branch(&c, 0, 1).unwrap();
    assert_eq!(r.vertices, vec![1, 2]);
    assert_eq!(r.edges, vec![(1, 2)]);
}

#[test]
fn branch_restriction_examples() {
    let tree = depth2_tree();
    // g = (3 4)(5 6): swaps within both subtrees, fixes 0, 1, 2.
    let g = Permutation::new(vec![0, 1, 2, 4, 3, 6, 5]).unwrap();
    let group = PermGroup::new(7, vec![g.clone()]).unwrap();
    let act = TreeAction::new(tree, group).unwrap();

    let id = Permutation::identity(7);
    assert_eq!(r_uv(&act, 0, 1, &id).unwrap(), id);

    let restricted = r_uv(&act, 0, 1, &g).unwrap();
    assert_eq!(restricted, Permutation::new(vec![0, 1, 2, 4, 3, 5, 6]).unwrap());

    // Retraction law: restricting twice changes nothing, on the group
    // generated by the restriction.
    let richer = PermGroup::new(7, vec![g.clone(), restricted.clone()]).unwrap();
    let act2 = TreeAction::new(depth2_tree(), richer).unwrap();
    let again = r_uv(&act2, 0, 1, &restricted).unwrap();
    assert_eq!(again, restricted);

    // Support never grows.
    assert!(restricted
        .moved_points()
        .iter()
        .all(|p| g.moved_points().contains(p)));
}

#[test]
fn branch_factorization_law() {
    // r_uv(g) composed with r_vu(g) recovers g on every edge stabilizer.
    let tree = depth2_tree();
    let g = Permutation::new(vec![0, 1, 2, 4, 3, 6, 5]).unwrap();
    let group = PermGroup::new(7, vec![g]).unwrap();
    let act = TreeAction::new(tree, group).unwrap();
    for &(u, v) in act.tree().edges() {
        let stab = stabilizer_edge(&act, u, v).unwrap();
        for g in stab.elements().unwrap() {
            let a = r_uv(&act, u, v, g).unwrap();
            let b = r_uv(&act, v, u, g).unwrap();
            assert_eq!(a.compose(&b), *g);
            assert_eq!(b.compose(&a), *g);
        }
    }
}

#[test]
fn t_decomposability_examples() {
    // Rotating star: edge stabilizers trivial, so decomposable.
    assert!(is_t_decomposable(&star3_rotation()).unwrap().holds);

    // Four-leaf star with the double swap (1 2)(3 4): still decomposable.
    let s4 = star(4);
    let g = Permutation::new(vec![0, 2, 1, 4, 3]).unwrap();
    let act = TreeAction::new(s4, PermGroup::new(5, vec![g]).unwrap()).unwrap();
    assert!(is_t_decomposable(&act).unwrap().holds);

    // Depth-2 tree with only the simultaneous swap: restricting to one
    // branch leaves the group.
    let g = Permutation::new(vec![0, 1, 2, 4, 3, 6, 5]).unwrap();
    let act = TreeAction::new(depth2_tree(), PermGroup::new(7, vec![g]).unwrap()).unwrap();
    let td = is_t_decomposable(&act).unwrap();
    assert!(!td.holds);
    let (u, v, _) = td.witness.unwrap();
    assert!((u, v) == (0, 1) || (u, v) == (0, 2));
}

#[test]
fn semi_free_examples() {
    assert!(is_semi_free(&PermGroup::cyclic(5)).unwrap());
    assert!(is_semi_free(&PermGroup::trivial(4)).unwrap());
    // Z2 x Z2 on 4 points where each generator fixes a different pair.
    let a = Permutation::new(vec![1, 0, 2, 3]).unwrap();
    let b = Permutation::new(vec![0, 1, 3, 2]).unwrap();
    let g = PermGroup::new(4, vec![a, b]).unwrap();
    assert!(!is_semi_free(&g).unwrap());
}

#[test]
fn local_stabilizer_examples() {
    let act = star3_rotation();
    let local = local_stabilizer(&act, 0).unwrap();
    assert_eq!(local.group.order().unwrap(), 3);
    assert!(family_cyclic(&local.group).unwrap());

    let leaf_local = local_stabilizer(&act, 1).unwrap();
    assert_eq!(leaf_local.group.order().unwrap(), 1);

    let swap = Permutation::new(vec![2, 1, 0]).unwrap();
    let act = TreeAction::new(path3(), PermGroup::new(3, vec![swap]).unwrap()).unwrap();
    let local = local_stabilizer(&act, 1).unwrap();
    assert_eq!(local.group.order().unwrap(), 2);
}

#[test]
fn check_tt_examples() {
    let report = check_tt(&star3_rotation(), family_cyclic).unwrap();
    assert!(report.all());

    let swap = Permutation::new(vec![2, 1, 0]).unwrap();
    let act = TreeAction::new(path3(), PermGroup::new(3, vec![swap]).unwrap()).unwrap();
    assert!(check_tt(&act, family_cyclic).unwrap().all());

    // Full symmetric group on the 4-leaf star: local stabilizer at the
    // center is S4, neither cyclic nor semi-free.
    let s4_star = star(4);
    let gens = vec![
        Permutation::new(vec![0, 2, 1, 3, 4]).unwrap(),
        Permutation::new(vec![0, 2, 3, 4, 1]).unwrap(),
    ];
    let act = TreeAction::new(s4_star, PermGroup::new(5, gens).unwrap()).unwrap();
    let report = check_tt(&act, family_cyclic).unwrap();
    assert!(report.fix_nonempty);
    assert!(!report.local_ok);
    assert_eq!(report.failing_vertex, Some(0));
}

#[test]
fn partition_decomposability_examples() {
    // Block-diagonal: Z2 x Z2 acting on two 2-point blocks independently.
    let a = Permutation::new(vec![1, 0, 2, 3]).unwrap();
    let b = Permutation::new(vec![0, 1, 3, 2]).unwrap();
    let blocks = vec![vec![0, 1], vec![2, 3]];
    let pact = PartitionAction::new(
        4,
        blocks.clone(),
        PermGroup::new(4, vec![a.clone(), b]).unwrap(),
    )
    .unwrap();
    assert!(fully_partition_decomposable(&pact).unwrap());

    // Diagonal Z2: swap both blocks or none.
    let diag = Permutation::new(vec![1, 0, 3, 2]).unwrap();
    let pact = PartitionAction::new(4, blocks, PermGroup::new(4, vec![diag]).unwrap()).unwrap();
    assert!(!partition_decomposable(&pact, &[0]).unwrap());
    assert!(partition_decomposable(&pact, &[]).unwrap());
}

#[test]
fn branch_partition_matches_t_decomposability_on_samples() {
    // The equivalence between the edgewise predicate and per-vertex
    // partition decomposability, spot-checked here on handmade actions.
    let actions: Vec<TreeAction> = vec![
        star3_rotation(),
        TreeAction::new(
            depth2_tree(),
            PermGroup::new(7, vec![Permutation::new(vec![0, 1, 2, 4, 3, 6, 5]).unwrap()])
                .unwrap(),
        )
        .unwrap(),
        TreeAction::new(
            depth2_tree(),
            PermGroup::new(
                7,
                vec![
                    Permutation::new(vec![0, 1, 2, 4, 3, 5, 6]).unwrap(),
                    Permutation::new(vec![0, 1, 2, 3, 4, 6, 5]).unwrap(),
                ],
            )
            .unwrap(),
        )
        .unwrap(),
    ];
    for act in &actions {
        let edgewise = is_t_decomposable(act).unwrap().holds;
        let vertexwise = (0..act.tree().vertex_count()).all(|u| {
            let pact = branch_partition_action(act, u).unwrap();
            fully_partition_decomposable(&pact).unwrap()
        });
        assert_eq!(edgewise, vertexwise);
    }
}

#[test]
fn equivalence_on_two_generated_subgroups_of_small_trees() {
    // Stronger sweep: every 1- and 2-generated subgroup of Aut(T) of order
    // <= 24, for all trees with <= 6 vertices.
    let trees = crate::decompose::enumerate_trees(6);
    for tree in &trees {
        let aut = aut_group(tree).unwrap();
        let elements: Vec<Permutation> = aut.elements().unwrap().iter().cloned().collect();
        let mut seen = std::collections::BTreeSet::new();
        let mut subgroups = Vec::new();
        for (i, a) in elements.iter().enumerate() {
            for b in elements.iter().skip(i) {
                let gens = if a == b {
                    vec![a.clone()]
                } else {
                    vec![a.clone(), b.clone()]
                };
                let set = close(&gens, 1000).unwrap();
                if set.len() <= 24 && seen.insert(set.clone()) {
                    subgroups.push(PermGroup::from_elements(
                        tree.vertex_count(),
                        set,
                        1000,
                    ));
                }
            }
        }
        for group in subgroups {
            let act = TreeAction::new(tree.clone(), group).unwrap();
            let edgewise = is_t_decomposable(&act).unwrap().holds;
            let vertexwise = (0..tree.vertex_count()).all(|u| {
                let pact = branch_partition_action(&act, u).unwrap();
                fully_partition_decomposable(&pact).unwrap()
            });
            assert_eq!(edgewise, vertexwise, "tree {:?}", tree.edges());
        }
    }
}

#[test]
fn act_file_round_trip() {
    let act = star3_rotation();
    let text = write_act(&act);
    let back = parse_act(&text).unwrap();
    assert_eq!(back.tree(), act.tree());
    assert!(back
        .group()
        .same_permutation_set(act.group())
        .unwrap());
    assert_eq!(write_act(&back), text);
}

#[test]
fn act_file_errors() {
    assert!(parse_act("edge 0 1").is_err());
    assert!(parse_act("tree 2\nedge 0 1\ngen 0 0").is_err());
    assert!(parse_act("tree 3\nedge 0 1\nedge 1 2\nzap").is_err());
}

#[test]
fn aut_group_of_small_trees() {
    assert_eq!(aut_group(&path3()).unwrap().order().unwrap(), 2);
    assert_eq!(aut_group(&star(3)).unwrap().order().unwrap(), 6);
    assert_eq!(aut_group(&star(4)).unwrap().order().unwrap(), 24);
    let single = Tree::new(1, &[]).unwrap();
    assert_eq!(aut_group(&single).unwrap().order().unwrap(), 1);
}

#[test]
fn tree_centers() {
    assert_eq!(path3().center(), vec![1]);
    assert_eq!(star(4).center(), vec![0]);
    let p4 = Tree::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
    assert_eq!(p4.center(), vec![1, 2]);
}
