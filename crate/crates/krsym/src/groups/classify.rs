//! Structure recognition and small-group isomorphism search.

use std::collections::{BTreeMap, BTreeSet};

use super::{GroupError, PermGroup, Permutation};

/// Recognized abstract shape of a group. The classification is a
/// certificate by order and element-order structure, not a full
/// isomorphism test; `Other` means no match.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupKind {
    Trivial,
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Other,
}

/// Classify by order and element-order structure.
///
/// Checks run trivial -> cyclic -> dihedral -> symmetric, so the order-6
/// nonabelian group reports as dihedral(3) (which equals symmetric(3)).
/// The symmetric match compares element-order histograms against the
/// cycle-type counts of the symmetric group — a heuristic certificate.
pub fn recognize(g: &PermGroup) -> Result<GroupKind, GroupError> {
    let order = g.order()?;
    if order == 1 {
        return Ok(GroupKind::Trivial);
    }
    let elements = g.elements()?;
    if elements.iter().any(|p| p.element_order() == order) {
        return Ok(GroupKind::Cyclic(order));
    }
    if order % 2 == 0 && order >= 4 {
        let m = order / 2;
        if is_dihedral_of(elements, m) {
            return Ok(GroupKind::Dihedral(m));
        }
    }
    if let Some(n) = factorial_inverse(order) {
        if g.element_order_histogram()? == symmetric_order_histogram(n) {
            return Ok(GroupKind::Symmetric(n));
        }
    }
    Ok(GroupKind::Other)
}

fn is_dihedral_of(elements: &BTreeSet<Permutation>, m: usize) -> bool {
    let rotations: Vec<&Permutation> = elements
        .iter()
        .filter(|p| p.element_order() == m)
        .collect();
    for r in rotations {
        let cyc = cyclic_span(r);
        if cyc.len() != m {
            continue;
        }
        let rinv = r.inverse();
        for s in elements {
            if cyc.contains(s) || !s.compose(s).is_identity() {
                continue;
            }
            // s r s^{-1} = r^{-1}, and <r, s> covers the whole group.
            if s.compose(r).compose(&s.inverse()) == rinv {
                let covered: BTreeSet<Permutation> = cyc
                    .iter()
                    .cloned()
                    .chain(cyc.iter().map(|c| s.compose(c)))
                    .collect();
                if covered.len() == elements.len() {
                    return true;
                }
            }
        }
    }
    false
}

fn cyclic_span(p: &Permutation) -> BTreeSet<Permutation> {
    let mut set = BTreeSet::new();
    let mut q = Permutation::identity(p.degree());
    loop {
        if !set.insert(q.clone()) {
            return set;
        }
        q = p.compose(&q);
    }
}

fn factorial_inverse(order: usize) -> Option<usize> {
    let mut f: usize = 1;
    for n in 1..=20 {
        f = f.checked_mul(n)?;
        if f == order {
            return Some(n);
        }
        if f > order {
            return None;
        }
    }
    None
}

/// Element-order histogram of the symmetric group on `n` points, computed
/// from cycle types (no group materialization).
fn symmetric_order_histogram(n: usize) -> Vec<(usize, usize)> {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    let mut partition = Vec::new();
    enumerate_partitions(n, n, &mut partition, &mut counts);
    counts.into_iter().collect()
}

fn enumerate_partitions(
    remaining: usize,
    max_part: usize,
    partition: &mut Vec<usize>,
    counts: &mut BTreeMap<usize, usize>,
) {
    if remaining == 0 {
        let n: usize = partition.iter().sum();
        // Number of permutations with this cycle type: n! / prod(k^m_k m_k!).
        let mut denom: u128 = 1;
        let mut mult: BTreeMap<usize, usize> = BTreeMap::new();
        for &part in partition.iter() {
            *mult.entry(part).or_insert(0) += 1;
        }
        for (&k, &m) in &mult {
            denom *= (k as u128).pow(m as u32);
            denom *= factorial(m);
        }
        let count = (factorial(n) / denom) as usize;
        let order = partition.iter().fold(1usize, |acc, &k| lcm(acc, k));
        *counts.entry(order).or_insert(0) += count;
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        partition.push(part);
        enumerate_partitions(remaining - part, part, partition, counts);
        partition.pop();
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product::<u128>().max(1)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Search for an isomorphism between two materialized groups, returned as
/// an element-by-element map. Exact (complete backtracking over generator
/// images with order-profile pruning); intended for desk-scale groups.
pub fn isomorphism(
    g: &PermGroup,
    h: &PermGroup,
) -> Result<Option<BTreeMap<Permutation, Permutation>>, GroupError> {
    let g_elems: Vec<Permutation> = g.elements()?.iter().cloned().collect();
    let h_elems: Vec<Permutation> = h.elements()?.iter().cloned().collect();
    if g_elems.len() != h_elems.len() {
        return Ok(None);
    }
    if g.element_order_histogram()? != h.element_order_histogram()? {
        return Ok(None);
    }
    if g_elems.len() == 1 {
        let mut map = BTreeMap::new();
        map.insert(g_elems[0].clone(), h_elems[0].clone());
        return Ok(Some(map));
    }

    // Small generating set of g: greedily add elements that enlarge the
    // generated subgroup, trying high-order elements first.
    let mut candidates: Vec<&Permutation> = g_elems.iter().collect();
    candidates.sort_by_key(|p| std::cmp::Reverse(p.element_order()));
    let mut gens: Vec<Permutation> = Vec::new();
    let mut span: BTreeSet<Permutation> = BTreeSet::new();
    span.insert(Permutation::identity(g.domain_size()));
    for c in candidates {
        if span.contains(c) {
            continue;
        }
        gens.push(c.clone());
        let mut gen_list = gens.clone();
        gen_list.extend(span.iter().cloned());
        span = super::close(&gen_list, g_elems.len())?;
        if span.len() == g_elems.len() {
            break;
        }
    }

    // Candidate images per generator, filtered by element order.
    let images_by_order: BTreeMap<usize, Vec<&Permutation>> = {
        let mut m: BTreeMap<usize, Vec<&Permutation>> = BTreeMap::new();
        for p in &h_elems {
            m.entry(p.element_order()).or_default().push(p);
        }
        m
    };

    let mut assignment: Vec<Permutation> = Vec::new();
    let result = assign(
        &gens,
        0,
        &mut assignment,
        &images_by_order,
        g.domain_size(),
        h.domain_size(),
        g_elems.len(),
    );
    Ok(result)
}

fn assign(
    gens: &[Permutation],
    idx: usize,
    assignment: &mut Vec<Permutation>,
    images_by_order: &BTreeMap<usize, Vec<&Permutation>>,
    g_domain: usize,
    h_domain: usize,
    target_order: usize,
) -> Option<BTreeMap<Permutation, Permutation>> {
    if idx == gens.len() {
        return build_hom(gens, assignment, g_domain, h_domain, target_order);
    }
    let order = gens[idx].element_order();
    for candidate in images_by_order.get(&order).into_iter().flatten() {
        assignment.push((*candidate).clone());
        // Early consistency check on the partial assignment.
        if build_hom(
            &gens[..=idx],
            assignment,
            g_domain,
            h_domain,
            target_order,
        )
        .is_some()
        {
            if let Some(full) = assign(
                gens,
                idx + 1,
                assignment,
                images_by_order,
                g_domain,
                h_domain,
                target_order,
            ) {
                return Some(full);
            }
        }
        assignment.pop();
    }
    None
}

/// Extend a generator assignment to a full map by closing under products,
/// failing on any inconsistency. For a full assignment the result is a
/// bijective homomorphism (an isomorphism) or None.
fn build_hom(
    gens: &[Permutation],
    images: &[Permutation],
    g_domain: usize,
    h_domain: usize,
    target_order: usize,
) -> Option<BTreeMap<Permutation, Permutation>> {
    let mut map: BTreeMap<Permutation, Permutation> = BTreeMap::new();
    map.insert(
        Permutation::identity(g_domain),
        Permutation::identity(h_domain),
    );
    let mut frontier: Vec<Permutation> = vec![Permutation::identity(g_domain)];
    for (g, h) in gens.iter().zip(images) {
        match map.get(g) {
            Some(existing) if existing != h => return None,
            Some(_) => {}
            None => {
                map.insert(g.clone(), h.clone());
                frontier.push(g.clone());
            }
        }
    }
    while let Some(x) = frontier.pop() {
        let hx = map[&x].clone();
        for (g, h) in gens.iter().zip(images) {
            let gx = g.compose(&x);
            let hgx = h.compose(&hx);
            match map.get(&gx) {
                Some(existing) => {
                    if *existing != hgx {
                        return None;
                    }
                }
                None => {
                    map.insert(gx.clone(), hgx);
                    frontier.push(gx);
                }
            }
        }
        if map.len() > target_order {
            return None;
        }
    }
    // Injectivity: image values must be pairwise distinct.
    let image_set: BTreeSet<&Permutation> = map.values().collect();
    if image_set.len() != map.len() {
        return None;
    }
    let full = gens.len() == images.len() && map.len() == target_order;
    if gens.len() == images.len() && !full && map.len() < target_order && gens.len() > 0 {
        // Partial assignment generating a proper subgroup: fine as a
        // consistency check, caller decides.
    }
    Some(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{direct_product, wreath_product, BAction};

    #[test]
    fn recognize_cyclic_four() {
        let g = PermGroup::new(
            4,
            vec![Permutation::from_cycle(4, &[0, 1, 2, 3]).unwrap()],
        )
        .unwrap();
        assert_eq!(recognize(&g).unwrap(), GroupKind::Cyclic(4));
    }

    #[test]
    fn recognize_square_symmetries() {
        // Rotations of a square plus one reflection: order 8.
        let rot = Permutation::from_cycle(4, &[0, 1, 2, 3]).unwrap();
        let refl = Permutation::new(vec![0, 3, 2, 1]).unwrap();
        let g = PermGroup::new(4, vec![rot, refl]).unwrap();
        assert_eq!(g.order().unwrap(), 8);
        assert_eq!(recognize(&g).unwrap(), GroupKind::Dihedral(4));
    }

    #[test]
    fn recognize_symmetric_four() {
        let g = PermGroup::symmetric(4);
        assert_eq!(g.order().unwrap(), 24);
        assert_eq!(recognize(&g).unwrap(), GroupKind::Symmetric(4));
    }

    #[test]
    fn recognize_klein_four_as_dihedral_two() {
        let g = PermGroup::dihedral(2);
        assert_eq!(g.order().unwrap(), 4);
        assert_eq!(recognize(&g).unwrap(), GroupKind::Dihedral(2));
    }

    #[test]
    fn recognize_trivial() {
        assert_eq!(
            recognize(&PermGroup::trivial(3)).unwrap(),
            GroupKind::Trivial
        );
    }

    #[test]
    fn symmetric_histogram_matches_closure() {
        for n in 1..=5 {
            let g = PermGroup::symmetric(n);
            assert_eq!(
                g.element_order_histogram().unwrap(),
                symmetric_order_histogram(n)
            );
        }
    }

    #[test]
    fn isomorphism_z6_vs_z2xz3() {
        let z6 = PermGroup::cyclic(6);
        let p = direct_product(&PermGroup::cyclic(2), &PermGroup::cyclic(3)).unwrap();
        let iso = isomorphism(&z6, &p).unwrap().expect("Z6 = Z2 x Z3");
        assert_eq!(iso.len(), 6);
        // Spot-check the homomorphism law.
        for a in z6.elements().unwrap() {
            for b in z6.elements().unwrap() {
                assert_eq!(iso[&a.compose(b)], iso[a].compose(&iso[b]));
            }
        }
    }

    #[test]
    fn isomorphism_rejects_z4_vs_klein() {
        let z4 = PermGroup::cyclic(4);
        let klein = PermGroup::dihedral(2);
        assert!(isomorphism(&z4, &klein).unwrap().is_none());
    }

    #[test]
    fn isomorphism_wreath_vs_dihedral() {
        let z2 = PermGroup::cyclic(2);
        let act = BAction::right_regular(&z2).unwrap();
        let w = wreath_product(&z2, &z2, &act).unwrap();
        let d4 = PermGroup::dihedral(4);
        assert!(isomorphism(&w, &d4).unwrap().is_some());
    }
}
