//! The expression language for groups built from atoms by direct products
//! and wreath products from the top.
//!
//! Grammar (whitespace insensitive):
//!
//! ```text
//! expr := term ("x" term)*
//! term := atom ("wr" atom)*          // left associative
//! atom := "Z"INT | "D"INT | "S"INT | "1" | "(" expr ")"
//! ```
//!
//! `Z2 x Z3` is a direct product, `Z2 wr Z3` a wreath product with the top
//! acting through its standard degree (regular for `Zn`, natural for `Sn`
//! and `Dn`, regular for parenthesized tops).

mod parse;

pub use parse::parse;

use std::fmt;

use thiserror::Error;

use crate::groups::{
    direct_product, recognize, wreath_product, BAction, GroupError, GroupKind, PermGroup,
    DEFAULT_ELEMENT_CAP,
};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ExprError {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("atom degree must be at least 1 at byte {position}")]
    Degree { position: usize },
    #[error("order overflow")]
    Overflow,
    #[error("base is not a product of cyclic atoms: {0}")]
    NotAbelian(String),
    #[error("expression is not over cyclic atoms: {0}")]
    NotCyclic(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Cyclic,
    Dihedral,
    Symmetric,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::Cyclic => 'Z',
            Family::Dihedral => 'D',
            Family::Symmetric => 'S',
        }
    }
}

/// An atom group: `Zn`, `Dn`, or `Sn`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomExpr {
    pub family: Family,
    pub n: u64,
}

impl AtomExpr {
    pub fn cyclic(n: u64) -> Self {
        AtomExpr {
            family: Family::Cyclic,
            n,
        }
    }

    pub fn symmetric(n: u64) -> Self {
        AtomExpr {
            family: Family::Symmetric,
            n,
        }
    }

    pub fn order(&self) -> Result<u64, ExprError> {
        match self.family {
            Family::Cyclic => Ok(self.n),
            Family::Dihedral => self.n.checked_mul(2).ok_or(ExprError::Overflow),
            Family::Symmetric => {
                let mut f: u64 = 1;
                for k in 2..=self.n {
                    f = f.checked_mul(k).ok_or(ExprError::Overflow)?;
                }
                Ok(f)
            }
        }
    }

    /// Standard action degree of the atom used as a wreath top: `n` points.
    pub fn degree(&self) -> u64 {
        self.n
    }
}

/// Expression tree over atom groups.
///
/// `Wr` stores the top's action degree explicitly: atoms act on `n` points
/// (regular for cyclic tops, natural for symmetric ones), while compound
/// tops act regularly on their own element set. Expressions in the class
/// generated by cyclic atoms always have atom tops; parsed input may carry
/// a parenthesized compound top, which the membership analyzer inspects.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupExpr {
    Triv,
    Atom(AtomExpr),
    Prod(Vec<GroupExpr>),
    Wr {
        base: Box<GroupExpr>,
        top: Box<GroupExpr>,
        degree: u64,
    },
}

impl GroupExpr {
    pub fn atom(family: Family, n: u64) -> Self {
        GroupExpr::Atom(AtomExpr { family, n })
    }

    pub fn cyclic(n: u64) -> Self {
        GroupExpr::atom(Family::Cyclic, n)
    }

    pub fn prod(children: Vec<GroupExpr>) -> Self {
        GroupExpr::Prod(children)
    }

    /// Wreath with the standard degree for the given top.
    pub fn wr(base: GroupExpr, top: GroupExpr) -> Result<Self, ExprError> {
        let degree = standard_degree(&top)?;
        Ok(GroupExpr::Wr {
            base: Box::new(base),
            top: Box::new(top),
            degree,
        })
    }

    pub fn order(&self) -> Result<u64, ExprError> {
        match self {
            GroupExpr::Triv => Ok(1),
            GroupExpr::Atom(a) => a.order(),
            GroupExpr::Prod(children) => {
                let mut acc: u64 = 1;
                for c in children {
                    acc = acc.checked_mul(c.order()?).ok_or(ExprError::Overflow)?;
                }
                Ok(acc)
            }
            GroupExpr::Wr { base, top, degree } => {
                let b = base.order()?;
                let t = top.order()?;
                let mut acc: u64 = 1;
                for _ in 0..*degree {
                    acc = acc.checked_mul(b).ok_or(ExprError::Overflow)?;
                }
                acc.checked_mul(t).ok_or(ExprError::Overflow)
            }
        }
    }

    /// True when every wreath top is an atom in `family` and every atom
    /// belongs to `family`: the syntactic class generated by that family.
    pub fn is_r_expression(&self, family: Family) -> bool {
        match self {
            GroupExpr::Triv => true,
            GroupExpr::Atom(a) => a.family == family,
            GroupExpr::Prod(children) => children.iter().all(|c| c.is_r_expression(family)),
            GroupExpr::Wr { base, top, .. } => {
                base.is_r_expression(family) && matches!(**top, GroupExpr::Atom(a) if a.family == family)
            }
        }
    }

    /// Collect cyclic component orders of a product of cyclic atoms.
    /// `D1`, `D2`, `S1`, `S2` count as abelian; anything else fails.
    pub fn abelian_cyclic_components(&self) -> Result<Vec<u64>, ExprError> {
        match self {
            GroupExpr::Triv => Ok(vec![]),
            GroupExpr::Atom(a) => match (a.family, a.n) {
                (Family::Cyclic, n) => Ok(if n > 1 { vec![n] } else { vec![] }),
                (Family::Dihedral, 1) => Ok(vec![2]),
                (Family::Dihedral, 2) => Ok(vec![2, 2]),
                (Family::Symmetric, 1) => Ok(vec![]),
                (Family::Symmetric, 2) => Ok(vec![2]),
                _ => Err(ExprError::NotAbelian(self.pretty())),
            },
            GroupExpr::Prod(children) => {
                let mut out = Vec::new();
                for c in children {
                    out.extend(c.abelian_cyclic_components()?);
                }
                Ok(out)
            }
            GroupExpr::Wr { .. } => Err(ExprError::NotAbelian(self.pretty())),
        }
    }

    /// Canonical sort key for product children: order first, then the
    /// serialized structure.
    fn sort_key(&self) -> (u64, String) {
        (self.order().unwrap_or(u64::MAX), self.pretty())
    }

    /// Minimal-parenthesis text form; `parse` inverts it exactly.
    pub fn pretty(&self) -> String {
        let mut s = String::new();
        self.write(&mut s);
        s
    }

    fn write(&self, out: &mut String) {
        match self {
            GroupExpr::Triv => out.push('1'),
            GroupExpr::Atom(a) => {
                out.push(a.family.letter());
                out.push_str(&a.n.to_string());
            }
            GroupExpr::Prod(children) => {
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        out.push_str(" x ");
                    }
                    // A product child that is itself a product needs parens
                    // to survive the flat n-ary grammar.
                    match c {
                        GroupExpr::Prod(_) => {
                            out.push('(');
                            c.write(out);
                            out.push(')');
                        }
                        _ => c.write(out),
                    }
                }
            }
            GroupExpr::Wr { base, top, .. } => {
                match **base {
                    GroupExpr::Prod(_) => {
                        out.push('(');
                        base.write(out);
                        out.push(')');
                    }
                    _ => base.write(out),
                }
                out.push_str(" wr ");
                match **top {
                    GroupExpr::Triv | GroupExpr::Atom(_) => top.write(out),
                    _ => {
                        out.push('(');
                        top.write(out);
                        out.push(')');
                    }
                }
            }
        }
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

fn standard_degree(top: &GroupExpr) -> Result<u64, ExprError> {
    match top {
        GroupExpr::Atom(a) => Ok(a.degree()),
        other => other.order(),
    }
}

/// Rewrite to the canonical normal form: flatten nested products, drop
/// trivial factors, sort product children by (order, structure), collapse
/// `1 wr G -> G`, `A wr (order-1 top) -> A`, and order-1 atoms to `1`.
/// Idempotent, order preserving.
pub fn normal_form(e: &GroupExpr) -> GroupExpr {
    match e {
        GroupExpr::Triv => GroupExpr::Triv,
        GroupExpr::Atom(a) => {
            if a.order().map(|o| o == 1).unwrap_or(false) {
                GroupExpr::Triv
            } else {
                GroupExpr::Atom(*a)
            }
        }
        GroupExpr::Prod(children) => {
            let mut flat = Vec::new();
            for c in children {
                match normal_form(c) {
                    GroupExpr::Triv => {}
                    GroupExpr::Prod(inner) => flat.extend(inner),
                    other => flat.push(other),
                }
            }
            match flat.len() {
                0 => GroupExpr::Triv,
                1 => flat.pop().unwrap(),
                _ => {
                    flat.sort_by_cached_key(|c| c.sort_key());
                    GroupExpr::Prod(flat)
                }
            }
        }
        GroupExpr::Wr { base, top, degree } => {
            let base = normal_form(base);
            let top = normal_form(top);
            let top_is_unit = matches!(top, GroupExpr::Triv)
                || top.order().map(|o| o == 1).unwrap_or(false);
            if top_is_unit {
                return base;
            }
            if matches!(base, GroupExpr::Triv) {
                return top;
            }
            // Degree stays consistent with the normalized top: atoms keep
            // their standard degree, compound tops act regularly.
            let degree = match &top {
                GroupExpr::Atom(a) => a.degree(),
                other => other.order().unwrap_or(*degree),
            };
            GroupExpr::Wr {
                base: Box::new(base),
                top: Box::new(top),
                degree,
            }
        }
    }
}

/// Realize the expression as a concrete permutation group.
///
/// Cyclic atoms act regularly, dihedral and symmetric atoms naturally;
/// products act on disjoint unions and wreaths imprimitively on
/// `dom(base) x X`. The result's order equals `order(e)`.
pub fn evaluate(e: &GroupExpr) -> Result<PermGroup, ExprError> {
    evaluate_with_cap(e, DEFAULT_ELEMENT_CAP)
}

pub fn evaluate_with_cap(e: &GroupExpr, cap: usize) -> Result<PermGroup, ExprError> {
    if e.order()? > cap as u64 {
        return Err(ExprError::Group(GroupError::CapExceeded { cap }));
    }
    eval_inner(e, cap)
}

fn eval_inner(e: &GroupExpr, cap: usize) -> Result<PermGroup, ExprError> {
    let recap = |g: PermGroup| {
        PermGroup::with_cap(g.domain_size(), g.generators().to_vec(), cap).map_err(ExprError::from)
    };
    match e {
        GroupExpr::Triv => Ok(PermGroup::trivial(1)),
        GroupExpr::Atom(a) => {
            let n = a.n as usize;
            let g = match a.family {
                Family::Cyclic => PermGroup::cyclic(n),
                Family::Dihedral => PermGroup::dihedral(n),
                Family::Symmetric => PermGroup::symmetric(n),
            };
            recap(g)
        }
        GroupExpr::Prod(children) => {
            let mut acc = PermGroup::trivial(0);
            let mut first = true;
            for c in children {
                let g = eval_inner(c, cap)?;
                acc = if first {
                    first = false;
                    g
                } else {
                    direct_product(&acc, &g)?
                };
            }
            if first {
                Ok(PermGroup::trivial(1))
            } else {
                recap(acc)
            }
        }
        GroupExpr::Wr { base, top, degree } => {
            let b = eval_inner(base, cap)?;
            let t = eval_inner(top, cap)?;
            let action = match &**top {
                GroupExpr::Atom(_) if *degree == t.domain_size() as u64 => BAction::natural(&t)?,
                _ if *degree == t.order()? as u64 => BAction::right_regular(&t)?,
                _ if *degree == t.domain_size() as u64 => BAction::natural(&t)?,
                _ => {
                    return Err(ExprError::Group(GroupError::InvalidAction(format!(
                        "no standard action of degree {degree} for top {}",
                        top.pretty()
                    ))))
                }
            };
            Ok(wreath_product(&b, &t, &action)?)
        }
    }
}

/// Unique-roots decomposability of `base wr (top of order n)`: true iff the
/// abelian base has a nontrivial direct factor of order coprime to `n`
/// (equivalently some prime divides the base's order but not `n`), which is
/// exactly when every element of that factor has a unique n-th root.
pub fn neumann_direct_decomposable(base: &GroupExpr, n: u64) -> Result<bool, ExprError> {
    let components = base.abelian_cyclic_components()?;
    for q in components {
        let mut q = q;
        let mut p = 2;
        while p * p <= q {
            if q % p == 0 {
                if n % p != 0 {
                    return Ok(true);
                }
                while q % p == 0 {
                    q /= p;
                }
            }
            p += 1;
        }
        if q > 1 && n % q != 0 {
            return Ok(true);
        }
    }
    Ok(false)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    InR,
    NotInR,
    Unknown,
}

#[derive(Clone, Debug)]
pub struct Membership {
    pub verdict: Verdict,
    pub trace: Vec<String>,
}

impl Membership {
    pub fn summary(&self) -> String {
        let v = match self.verdict {
            Verdict::InR => "InR",
            Verdict::NotInR => "NotInR",
            Verdict::Unknown => "Unknown",
        };
        format!("{}: {}", v, self.trace.join(" and "))
    }
}

/// Decide membership in the class generated by cyclic atoms for a wreath
/// `base wr top` with abelian top.
///
/// `NotInR` fires when the base has no unique `|top|`-th roots factor (so
/// the group is directly indecomposable) and the top is not cyclic (so the
/// wreath shape is ruled out by rigidity: a wreath decomposition forces the
/// top itself, which would have to be cyclic). `InR` fires for expressions
/// already written over cyclic atoms. Everything else is `Unknown`.
pub fn analyze_membership(w: &GroupExpr) -> Result<Membership, ExprError> {
    if w.is_r_expression(Family::Cyclic) {
        return Ok(Membership {
            verdict: Verdict::InR,
            trace: vec!["syntactically generated by cyclic atoms".into()],
        });
    }
    if let GroupExpr::Wr { base, top, .. } = w {
        let top_components = top.abelian_cyclic_components()?;
        let n = top.order()?;
        let decomposable = neumann_direct_decomposable(base, n)?;
        let top_cyclic = pairwise_coprime(&top_components);
        if !decomposable && !top_cyclic {
            let compact_top = top.pretty().replace(' ', "");
            return Ok(Membership {
                verdict: Verdict::NotInR,
                trace: vec![
                    format!("indecomposable (no unique {n}th roots)"),
                    format!("top {compact_top} not cyclic"),
                ],
            });
        }
        let mut trace = Vec::new();
        if decomposable {
            trace.push(format!("base has a factor with unique {n}th roots"));
        }
        if top_cyclic {
            trace.push("top is cyclic as an abstract group".into());
        }
        return Ok(Membership {
            verdict: Verdict::Unknown,
            trace,
        });
    }
    Ok(Membership {
        verdict: Verdict::Unknown,
        trace: vec!["no decision criterion applies to this shape".into()],
    })
}

fn pairwise_coprime(orders: &[u64]) -> bool {
    for (i, &a) in orders.iter().enumerate() {
        for &b in &orders[i + 1..] {
            if gcd(a, b) != 1 {
                return false;
            }
        }
    }
    true
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Is the evaluated expression cyclic / dihedral / symmetric / other?
/// Convenience wrapper over `groups::recognize`.
pub fn recognize_evaluated(e: &GroupExpr) -> Result<GroupKind, ExprError> {
    Ok(recognize(&evaluate(e)?)?)
}
