//! Wreath products `A wr_X B` realized as imprimitive permutation groups.
//!
//! The underlying set is `Map(X, A) x B` with multiplication
//! `(a1, h1) * (a2, h2) = ((a1 ∘ h2) · a2, h1 h2)`, where `·` is the
//! pointwise product and `h2` acts on `X` through the supplied action.
//! The permutation realization acts on `dom(A) x X`, point `(p, x)` encoded
//! as `x * |dom(A)| + p`, so the blocks `dom(A) x {x}` are contiguous.

use std::collections::BTreeMap;

use super::{GroupError, PermGroup, Permutation};

/// A faithful left action of a group `B` on `{0, .., degree-1}`, tabulated
/// element by element.
#[derive(Clone, Debug)]
pub struct BAction {
    degree: usize,
    images: BTreeMap<Permutation, Permutation>,
}

impl BAction {
    /// Each element of `b` acts as itself on `b`'s own domain. For the
    /// cyclic group in its rotation realization this is the regular action;
    /// for the symmetric group it is the natural one.
    pub fn natural(b: &PermGroup) -> Result<BAction, GroupError> {
        let mut images = BTreeMap::new();
        for h in b.elements()? {
            images.insert(h.clone(), h.clone());
        }
        let action = BAction {
            degree: b.domain_size(),
            images,
        };
        action.verify()?;
        Ok(action)
    }

    /// Right translation on the element set of `b`: `h` sends the element at
    /// position `x` to the one at position `x ∘ h^{-1}`, which makes the
    /// tabulated map a genuine left action. Positions follow the canonical
    /// element order of `b`.
    pub fn right_regular(b: &PermGroup) -> Result<BAction, GroupError> {
        let elements: Vec<&Permutation> = b.elements()?.iter().collect();
        let index: BTreeMap<&Permutation, usize> =
            elements.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        let mut images = BTreeMap::new();
        for h in &elements {
            let hinv = h.inverse();
            let imgs: Vec<usize> = elements
                .iter()
                .map(|x| index[&x.compose(&hinv)])
                .collect();
            images.insert((*h).clone(), Permutation::new(imgs)?);
        }
        let action = BAction {
            degree: elements.len(),
            images,
        };
        action.verify()?;
        Ok(action)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn apply(&self, h: &Permutation) -> Result<&Permutation, GroupError> {
        self.images
            .get(h)
            .ok_or_else(|| GroupError::InvalidAction("element missing from action table".into()))
    }

    /// Check that the table is a faithful homomorphism into `Sym(X)`.
    pub fn verify(&self) -> Result<(), GroupError> {
        let mut seen = BTreeMap::new();
        for (h, img) in &self.images {
            if img.degree() != self.degree {
                return Err(GroupError::InvalidAction("wrong action degree".into()));
            }
            if let Some(prev) = seen.insert(img.clone(), h.clone()) {
                return Err(GroupError::InvalidAction(format!(
                    "not faithful: {prev:?} and {h:?} act identically"
                )));
            }
        }
        for (g, pg) in &self.images {
            for (h, ph) in &self.images {
                let gh = g.compose(h);
                let expected = pg.compose(ph);
                match self.images.get(&gh) {
                    Some(img) if *img == expected => {}
                    _ => {
                        return Err(GroupError::InvalidAction(format!(
                            "not a homomorphism at {g:?} * {h:?}"
                        )))
                    }
                }
            }
        }
        Ok(())
    }
}

/// An explicit element of `A wr_X B`: a base map `X -> A` and a top element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WreathElement {
    pub base: Vec<Permutation>,
    pub top: Permutation,
}

impl WreathElement {
    pub fn identity(a_degree: usize, b_degree: usize, x_size: usize) -> Self {
        WreathElement {
            base: vec![Permutation::identity(a_degree); x_size],
            top: Permutation::identity(b_degree),
        }
    }

    /// The permutation on `dom(A) x X` realizing this element:
    /// `(p, x) -> (base[x](p), h(x))`.
    pub fn to_permutation(&self, action: &BAction) -> Result<Permutation, GroupError> {
        let a_deg = self.base[0].degree();
        let x = self.base.len();
        let hx = action.apply(&self.top)?;
        let mut images = vec![0; a_deg * x];
        for xi in 0..x {
            for p in 0..a_deg {
                images[xi * a_deg + p] = hx.apply(xi) * a_deg + self.base[xi].apply(p);
            }
        }
        Permutation::new(images)
    }
}

/// Product `(a1, h1) * (a2, h2) = ((a1 ∘ h2) · a2, h1 h2)`.
pub fn wreath_mul(
    e1: &WreathElement,
    e2: &WreathElement,
    action: &BAction,
) -> Result<WreathElement, GroupError> {
    let h2x = action.apply(&e2.top)?;
    let base = (0..e1.base.len())
        .map(|x| e1.base[h2x.apply(x)].compose(&e2.base[x]))
        .collect();
    Ok(WreathElement {
        base,
        top: e1.top.compose(&e2.top),
    })
}

/// Inverse `(a, h)^{-1} = (ā ∘ h^{-1}, h^{-1})` with `ā` the pointwise inverse.
pub fn wreath_inverse(e: &WreathElement, action: &BAction) -> Result<WreathElement, GroupError> {
    let hinv = e.top.inverse();
    let hinvx = action.apply(&hinv)?;
    let base = (0..e.base.len())
        .map(|x| e.base[hinvx.apply(x)].inverse())
        .collect();
    Ok(WreathElement { base, top: hinv })
}

/// The wreath product of `a` and `b` over the set acted on by `action`,
/// realized on `dom(A) x X`. Its order is `|A|^|X| * |B|`.
///
/// The action must be a faithful homomorphism; `BAction::verify` runs on
/// every call so a hand-built table cannot slip through.
pub fn wreath_product(
    a: &PermGroup,
    b: &PermGroup,
    action: &BAction,
) -> Result<PermGroup, GroupError> {
    action.verify()?;
    for h in b.elements()? {
        action.apply(h)?;
    }
    let a_deg = a.domain_size();
    let x = action.degree();
    let n = a_deg * x;
    let mut gens = Vec::new();
    // Base generators: one copy of each generator of A in every block.
    for g in a.generators() {
        for xi in 0..x {
            let mut base = vec![Permutation::identity(a_deg); x];
            base[xi] = g.clone();
            let e = WreathElement {
                base,
                top: Permutation::identity(b.domain_size()),
            };
            gens.push(e.to_permutation(action)?);
        }
    }
    // Top generators through the section h -> (ε, h).
    for h in b.generators() {
        let e = WreathElement {
            base: vec![Permutation::identity(a_deg); x],
            top: h.clone(),
        };
        gens.push(e.to_permutation(action)?);
    }
    if gens.is_empty() {
        return Ok(PermGroup::trivial(n.max(1)));
    }
    PermGroup::with_cap(n, gens, a.element_cap().min(b.element_cap()))
}

/// Projection of a realized wreath permutation onto the block permutation
/// it induces on `X`; the homomorphism side of the exact sequence.
pub fn block_projection(p: &Permutation, a_degree: usize, x_size: usize) -> Option<Permutation> {
    let mut images = vec![usize::MAX; x_size];
    for xi in 0..x_size {
        let target = p.apply(xi * a_degree) / a_degree;
        // Every point of the block must land in the same block.
        for q in 0..a_degree {
            if p.apply(xi * a_degree + q) / a_degree != target {
                return None;
            }
        }
        images[xi] = target;
    }
    Permutation::new(images).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_formula_small() {
        let z2 = PermGroup::cyclic(2);
        let act = BAction::right_regular(&z2).unwrap();
        let w = wreath_product(&z2, &z2, &act).unwrap();
        assert_eq!(w.order().unwrap(), 8);
    }

    #[test]
    fn trivial_base_gives_top_regular_image() {
        let z5 = PermGroup::cyclic(5);
        let one = PermGroup::trivial(1);
        let act = BAction::right_regular(&z5).unwrap();
        let w = wreath_product(&one, &z5, &act).unwrap();
        assert_eq!(w.order().unwrap(), 5);
        // Acting on 1 x 5 points, this is exactly the regular image of Z5.
        assert_eq!(w.domain_size(), 5);
    }

    #[test]
    fn z3_wr_z2_has_order_eighteen() {
        let z3 = PermGroup::cyclic(3);
        let z2 = PermGroup::cyclic(2);
        let act = BAction::right_regular(&z2).unwrap();
        let w = wreath_product(&z3, &z2, &act).unwrap();
        assert_eq!(w.order().unwrap(), 18);
        // Same order as Z3 x S3, the direct decomposition it admits.
        let alt = super::super::direct_product(&PermGroup::cyclic(3), &PermGroup::symmetric(3))
            .unwrap();
        assert_eq!(alt.order().unwrap(), 18);
    }

    #[test]
    fn unit_and_inverse_laws() {
        let z2 = PermGroup::cyclic(2);
        let z3 = PermGroup::cyclic(3);
        let act = BAction::right_regular(&z3).unwrap();
        let e = WreathElement::identity(2, 3, 3);
        assert_eq!(wreath_mul(&e, &e, &act).unwrap(), e);

        let swap = Permutation::from_cycle(2, &[0, 1]).unwrap();
        let rot = Permutation::from_cycle(3, &[0, 1, 2]).unwrap();
        let g = WreathElement {
            base: vec![swap, Permutation::identity(2), Permutation::identity(2)],
            top: rot,
        };
        let ginv = wreath_inverse(&g, &act).unwrap();
        assert_eq!(wreath_mul(&g, &ginv, &act).unwrap(), e);
        assert_eq!(wreath_mul(&ginv, &g, &act).unwrap(), e);
        let _ = z2;
    }

    #[test]
    fn realization_is_homomorphism() {
        let z2 = PermGroup::cyclic(2);
        let z3 = PermGroup::cyclic(3);
        let act = BAction::right_regular(&z3).unwrap();
        let swap = Permutation::from_cycle(2, &[0, 1]).unwrap();
        let rot = Permutation::from_cycle(3, &[0, 1, 2]).unwrap();
        let g = WreathElement {
            base: vec![swap.clone(), Permutation::identity(2), swap.clone()],
            top: rot.clone(),
        };
        let h = WreathElement {
            base: vec![Permutation::identity(2), swap.clone(), swap],
            top: rot.compose(&rot),
        };
        let lhs = g
            .to_permutation(&act)
            .unwrap()
            .compose(&h.to_permutation(&act).unwrap());
        let rhs = wreath_mul(&g, &h, &act).unwrap().to_permutation(&act).unwrap();
        assert_eq!(lhs, rhs);
        let _ = z2;
    }

    #[test]
    fn exact_sequence_section() {
        let z2 = PermGroup::cyclic(2);
        let z3 = PermGroup::cyclic(3);
        let act = BAction::right_regular(&z3).unwrap();
        for h in z3.elements().unwrap() {
            let e = WreathElement {
                base: vec![Permutation::identity(2); 3],
                top: h.clone(),
            };
            let p = e.to_permutation(&act).unwrap();
            let projected = block_projection(&p, 2, 3).unwrap();
            assert_eq!(&projected, act.apply(h).unwrap());
        }
        let _ = z2;
    }

    #[test]
    fn invalid_action_rejected() {
        let z2 = PermGroup::cyclic(2);
        let z4 = PermGroup::cyclic(4);
        // Map every element of Z4 to the identity on 2 points: a
        // homomorphism but not faithful.
        let mut images = BTreeMap::new();
        for h in z4.elements().unwrap() {
            images.insert(h.clone(), Permutation::identity(2));
        }
        let action = BAction { degree: 2, images };
        assert!(matches!(
            wreath_product(&z2, &z4, &action),
            Err(GroupError::InvalidAction(_))
        ));
    }
}
