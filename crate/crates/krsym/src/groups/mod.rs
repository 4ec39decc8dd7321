//! Exact finite permutation groups: generator closure, direct products,
//! wreath products, solvability, and structure recognition.
//!
//! Groups are always concrete permutation groups on `{0, .., n-1}`. Element
//! sets are materialized lazily and ordered lexicographically by image
//! arrays, so every iteration over a group is deterministic.

mod classify;
mod wreath;

pub use classify::{isomorphism, recognize, GroupKind};
pub use wreath::{
    block_projection, wreath_inverse, wreath_mul, wreath_product, BAction, WreathElement,
};

use std::cell::OnceCell;
use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Default safety bound on materialized element sets.
pub const DEFAULT_ELEMENT_CAP: usize = 100_000;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("closure exceeded the element cap of {cap}")]
    CapExceeded { cap: usize },
    #[error("invalid permutation images: {0}")]
    NotABijection(String),
    #[error("generators act on different domain sizes")]
    MismatchedDomains,
    #[error("x-action is not a faithful homomorphism: {0}")]
    InvalidAction(String),
    #[error("empty generator list requires an explicit domain size")]
    NoGenerators,
}

/// A bijection of `{0, .., n-1}`, stored as its image array.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(GroupError::NotABijection(format!("{images:?}")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Cycle through `points`: each maps to the next, the last to the first.
    pub fn from_cycle(n: usize, points: &[usize]) -> Result<Self, GroupError> {
        let mut images: Vec<usize> = (0..n).collect();
        if points.is_empty() {
            return Ok(Permutation { images });
        }
        for w in points.windows(2) {
            images[w[0]] = w[1];
        }
        images[points[points.len() - 1]] = points[0];
        Permutation::new(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Composition `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Order of the element in any group containing it.
    pub fn element_order(&self) -> usize {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = self.compose(&p);
            k += 1;
        }
        k
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &j)| *i == j)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn moved_points(&self) -> Vec<usize> {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &j)| *i != j)
            .map(|(i, _)| i)
            .collect()
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "perm{:?}", self.images)
    }
}

/// Closure of `generators` under composition and inverse, as an explicit set.
///
/// The returned set is ordered lexicographically by image arrays. Fails with
/// `CapExceeded` once the closure grows past `cap`.
pub fn close(
    generators: &[Permutation],
    cap: usize,
) -> Result<BTreeSet<Permutation>, GroupError> {
    let n = match generators.first() {
        Some(g) => g.degree(),
        None => return Err(GroupError::NoGenerators),
    };
    if generators.iter().any(|g| g.degree() != n) {
        return Err(GroupError::MismatchedDomains);
    }
    let mut elements = BTreeSet::new();
    elements.insert(Permutation::identity(n));
    let mut frontier: Vec<Permutation> = vec![Permutation::identity(n)];
    while let Some(p) = frontier.pop() {
        for g in generators {
            let q = g.compose(&p);
            if !elements.contains(&q) {
                if elements.len() >= cap {
                    return Err(GroupError::CapExceeded { cap });
                }
                elements.insert(q.clone());
                frontier.push(q);
            }
        }
    }
    Ok(elements)
}

/// A finite permutation group given by generators, with a lazily
/// materialized element set bounded by `element_cap`.
#[derive(Clone)]
pub struct PermGroup {
    domain_size: usize,
    generators: Vec<Permutation>,
    element_cap: usize,
    elements: OnceCell<Result<BTreeSet<Permutation>, GroupError>>,
}

impl PermGroup {
    pub fn new(domain_size: usize, generators: Vec<Permutation>) -> Result<Self, GroupError> {
        Self::with_cap(domain_size, generators, DEFAULT_ELEMENT_CAP)
    }

    pub fn with_cap(
        domain_size: usize,
        generators: Vec<Permutation>,
        element_cap: usize,
    ) -> Result<Self, GroupError> {
        if generators.iter().any(|g| g.degree() != domain_size) {
            return Err(GroupError::MismatchedDomains);
        }
        Ok(PermGroup {
            domain_size,
            generators,
            element_cap,
            elements: OnceCell::new(),
        })
    }

    pub fn trivial(domain_size: usize) -> Self {
        PermGroup {
            domain_size,
            generators: Vec::new(),
            element_cap: DEFAULT_ELEMENT_CAP,
            elements: OnceCell::new(),
        }
    }

    /// Wrap an already-closed element set; the set is trusted as-is.
    pub fn from_elements(
        domain_size: usize,
        elements: BTreeSet<Permutation>,
        element_cap: usize,
    ) -> Self {
        let generators = elements.iter().cloned().collect();
        let cell = OnceCell::new();
        let _ = cell.set(Ok(elements));
        PermGroup {
            domain_size,
            generators,
            element_cap,
            elements: cell,
        }
    }

    pub fn cyclic(n: usize) -> Self {
        let gen = Permutation::from_cycle(n.max(1), &(0..n).collect::<Vec<_>>()).unwrap();
        PermGroup {
            domain_size: n.max(1),
            generators: if n > 1 { vec![gen] } else { Vec::new() },
            element_cap: DEFAULT_ELEMENT_CAP,
            elements: OnceCell::new(),
        }
    }

    /// Dihedral group of order 2n. Acts on n points for n >= 3; the small
    /// cases act on 2 (n = 1) and 4 (n = 2) points to stay faithful.
    pub fn dihedral(n: usize) -> Self {
        match n {
            0 | 1 => PermGroup::new(2, vec![Permutation::from_cycle(2, &[0, 1]).unwrap()]).unwrap(),
            2 => PermGroup::new(
                4,
                vec![
                    Permutation::from_cycle(4, &[0, 1]).unwrap(),
                    Permutation::from_cycle(4, &[2, 3]).unwrap(),
                ],
            )
            .unwrap(),
            _ => {
                let rot = Permutation::from_cycle(n, &(0..n).collect::<Vec<_>>()).unwrap();
                let refl =
                    Permutation::new((0..n).map(|i| (n - i) % n).collect::<Vec<_>>()).unwrap();
                PermGroup::new(n, vec![rot, refl]).unwrap()
            }
        }
    }

    /// Symmetric group on n points, generated by adjacent transpositions.
    pub fn symmetric(n: usize) -> Self {
        let n = n.max(1);
        let gens = (0..n.saturating_sub(1))
            .map(|i| Permutation::from_cycle(n, &[i, i + 1]).unwrap())
            .collect();
        PermGroup::new(n, gens).unwrap()
    }

    pub fn alternating(n: usize) -> Self {
        let n = n.max(3);
        let gens = (0..n - 2)
            .map(|i| Permutation::from_cycle(n, &[i, i + 1, i + 2]).unwrap())
            .collect();
        PermGroup::new(n, gens).unwrap()
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn element_cap(&self) -> usize {
        self.element_cap
    }

    pub fn elements(&self) -> Result<&BTreeSet<Permutation>, GroupError> {
        let cell = self.elements.get_or_init(|| {
            if self.generators.is_empty() {
                let mut set = BTreeSet::new();
                set.insert(Permutation::identity(self.domain_size));
                Ok(set)
            } else {
                close(&self.generators, self.element_cap)
            }
        });
        match cell {
            Ok(set) => Ok(set),
            Err(e) => Err(e.clone()),
        }
    }

    pub fn order(&self) -> Result<usize, GroupError> {
        Ok(self.elements()?.len())
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool, GroupError> {
        Ok(self.elements()?.contains(p))
    }

    pub fn is_trivial(&self) -> Result<bool, GroupError> {
        Ok(self.order()? == 1)
    }

    /// Equality as permutation sets on the same domain.
    pub fn same_permutation_set(&self, other: &PermGroup) -> Result<bool, GroupError> {
        Ok(self.domain_size == other.domain_size && self.elements()? == other.elements()?)
    }

    /// Histogram of element orders, a cheap isomorphism certificate.
    pub fn element_order_histogram(&self) -> Result<Vec<(usize, usize)>, GroupError> {
        let mut counts = std::collections::BTreeMap::new();
        for p in self.elements()? {
            *counts.entry(p.element_order()).or_insert(0) += 1;
        }
        Ok(counts.into_iter().collect())
    }

    /// Subgroup generated by the commutators of all element pairs, computed
    /// as the closure of generator commutators together with their
    /// conjugates under the group generators.
    pub fn derived_subgroup(&self) -> Result<PermGroup, GroupError> {
        let elements = self.elements()?;
        let mut seed: BTreeSet<Permutation> = BTreeSet::new();
        let gens: Vec<&Permutation> = if self.generators.is_empty() {
            Vec::new()
        } else {
            self.generators.iter().collect()
        };
        for a in &gens {
            for b in &gens {
                let c = a.inverse().compose(&b.inverse()).compose(a).compose(b);
                seed.insert(c);
            }
        }
        // Normal closure: conjugate the seed by group generators until stable.
        let mut closed = close(
            &seed.iter().cloned().collect::<Vec<_>>(),
            self.element_cap,
        )
        .or_else(|e| match e {
            GroupError::NoGenerators => {
                let mut s = BTreeSet::new();
                s.insert(Permutation::identity(self.domain_size));
                Ok(s)
            }
            other => Err(other),
        })?;
        loop {
            let mut new = Vec::new();
            for g in &self.generators {
                let ginv = g.inverse();
                for h in &closed {
                    let conj = ginv.compose(h).compose(g);
                    if !closed.contains(&conj) {
                        new.push(conj);
                    }
                }
            }
            if new.is_empty() {
                break;
            }
            let mut gens: Vec<Permutation> = closed.iter().cloned().collect();
            gens.extend(new);
            closed = close(&gens, self.element_cap)?;
        }
        debug_assert!(closed.iter().all(|p| elements.contains(p)));
        Ok(PermGroup::from_elements(
            self.domain_size,
            closed,
            self.element_cap,
        ))
    }

    /// True iff the derived series reaches the trivial group.
    pub fn is_solvable(&self) -> Result<bool, GroupError> {
        let mut current = self.clone();
        let mut order = current.order()?;
        loop {
            if order == 1 {
                return Ok(true);
            }
            let next = current.derived_subgroup()?;
            let next_order = next.order()?;
            if next_order == order {
                return Ok(false);
            }
            current = next;
            order = next_order;
        }
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PermGroup(domain={}, gens={})",
            self.domain_size,
            self.generators.len()
        )
    }
}

/// Direct product acting on the disjoint union of the two domains
/// (`A`'s points first). The order is `|A| * |B|`.
pub fn direct_product(a: &PermGroup, b: &PermGroup) -> Result<PermGroup, GroupError> {
    let n = a.domain_size() + b.domain_size();
    let mut gens = Vec::new();
    for g in a.generators() {
        let mut images: Vec<usize> = g.images().to_vec();
        images.extend(a.domain_size()..n);
        gens.push(Permutation::new(images)?);
    }
    for g in b.generators() {
        let mut images: Vec<usize> = (0..a.domain_size()).collect();
        images.extend(g.images().iter().map(|&i| i + a.domain_size()));
        gens.push(Permutation::new(images)?);
    }
    PermGroup::with_cap(n, gens, a.element_cap().min(b.element_cap()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_identity_only() {
        let id = Permutation::identity(3);
        let set = close(&[id], 10).unwrap();
        assert_eq!(set.len(), 1);
    }

    #[test]
    fn closure_three_cycle() {
        let c = Permutation::from_cycle(3, &[0, 1, 2]).unwrap();
        let set = close(&[c], 10).unwrap();
        assert_eq!(set.len(), 3);
    }

    #[test]
    fn closure_symmetric_three() {
        let a = Permutation::from_cycle(3, &[0, 1]).unwrap();
        let b = Permutation::from_cycle(3, &[1, 2]).unwrap();
        let set = close(&[a, b], 10).unwrap();
        assert_eq!(set.len(), 6);
    }

    #[test]
    fn closure_cap_exceeded() {
        let a = Permutation::from_cycle(5, &[0, 1]).unwrap();
        let b = Permutation::from_cycle(5, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(
            close(&[a, b], 50),
            Err(GroupError::CapExceeded { cap: 50 })
        );
    }

    #[test]
    fn closure_deterministic_order() {
        let a = Permutation::from_cycle(3, &[0, 1]).unwrap();
        let b = Permutation::from_cycle(3, &[1, 2]).unwrap();
        let set = close(&[a, b], 10).unwrap();
        let listed: Vec<_> = set.iter().map(|p| p.images().to_vec()).collect();
        let mut sorted = listed.clone();
        sorted.sort();
        assert_eq!(listed, sorted);
    }

    #[test]
    fn direct_product_orders() {
        let z2 = PermGroup::cyclic(2);
        let z3 = PermGroup::cyclic(3);
        let p = direct_product(&z2, &z3).unwrap();
        assert_eq!(p.order().unwrap(), 6);

        let s3 = PermGroup::symmetric(3);
        let q = direct_product(&s3, &z2).unwrap();
        assert_eq!(q.order().unwrap(), 12);
    }

    #[test]
    fn direct_product_unit_law() {
        let a = PermGroup::symmetric(3);
        let one = PermGroup::trivial(1);
        let p = direct_product(&one, &a).unwrap();
        assert_eq!(p.order().unwrap(), 6);
        let hist_a = a.element_order_histogram().unwrap();
        let hist_p = p.element_order_histogram().unwrap();
        assert_eq!(hist_a, hist_p);
    }

    #[test]
    fn solvable_abelian_and_small() {
        assert!(PermGroup::cyclic(6).is_solvable().unwrap());
        assert!(PermGroup::symmetric(4).is_solvable().unwrap());
        assert!(!PermGroup::alternating(5).is_solvable().unwrap());
        assert!(!PermGroup::symmetric(5).is_solvable().unwrap());
    }

    #[test]
    fn derived_series_length_two_for_order_eight_wreath() {
        let z2 = PermGroup::cyclic(2);
        let act = BAction::right_regular(&z2).unwrap();
        let w = wreath_product(&z2, &z2, &act).unwrap();
        assert_eq!(w.order().unwrap(), 8);
        let d1 = w.derived_subgroup().unwrap();
        assert!(d1.order().unwrap() > 1);
        let d2 = d1.derived_subgroup().unwrap();
        assert_eq!(d2.order().unwrap(), 1);
    }

    #[test]
    fn alternating_five_derived_series_stabilizes() {
        let a5 = PermGroup::alternating(5);
        assert_eq!(a5.order().unwrap(), 60);
        let d = a5.derived_subgroup().unwrap();
        assert_eq!(d.order().unwrap(), 60);
    }

    #[test]
    fn element_order_and_inverse() {
        let c = Permutation::from_cycle(4, &[0, 1, 2, 3]).unwrap();
        assert_eq!(c.element_order(), 4);
        assert!(c.compose(&c.inverse()).is_identity());
    }
}
