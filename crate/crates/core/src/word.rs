//! Group expressions: trees of elementary letters, symbol letters, products,
//! inverses, commutators and conjugations, evaluated exactly, plus the letter
//! disciplines that make a word a membership certificate.
//!
//! Conventions: `Commutator(g, h)` means `g^-1 h^-1 g h`; `Conjugation`
//! evaluates `c^-1 w c` where `c` is the conjugator. The empty product is the
//! identity word. Canonical builders drop exact-zero letters and collapse
//! identity subwords; the raw enum constructors build whatever they are given.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::{check_index, SqMatrix};
use crate::ring::{Ideal, RingSpec, RingValue};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GroupExpr {
    /// The elementary letter `e_ij(a)`, `i != j`, 1-based.
    Elem { i: usize, j: usize, a: RingValue },
    /// The symbol `S(x, y; z)` suspended at the ordered pair `(p, q)`.
    Symbol {
        x: RingValue,
        y: RingValue,
        z: RingValue,
        p: usize,
        q: usize,
    },
    Inverse(Box<GroupExpr>),
    Product(Vec<GroupExpr>),
    Commutator(Box<GroupExpr>, Box<GroupExpr>),
    Conjugation {
        conjugator: Box<GroupExpr>,
        inner: Box<GroupExpr>,
    },
}

impl GroupExpr {
    /// The identity word.
    pub fn identity() -> Self {
        GroupExpr::Product(Vec::new())
    }

    pub fn is_identity_word(&self) -> bool {
        matches!(self, GroupExpr::Product(v) if v.is_empty())
    }

    /// `e_ij(a)`, dropped to the identity word when `a = 0`.
    pub fn elem(i: usize, j: usize, a: RingValue) -> Self {
        if a.is_zero() {
            GroupExpr::identity()
        } else {
            GroupExpr::Elem { i, j, a }
        }
    }

    /// A suspended symbol letter, dropped to the identity word when `z = 0`.
    pub fn symbol(x: RingValue, y: RingValue, z: RingValue, p: usize, q: usize) -> Self {
        if z.is_zero() {
            GroupExpr::identity()
        } else {
            GroupExpr::Symbol { x, y, z, p, q }
        }
    }

    /// Product builder: skips identity factors and unwraps singletons.
    pub fn product(factors: Vec<GroupExpr>) -> Self {
        let mut kept: Vec<GroupExpr> = factors
            .into_iter()
            .filter(|f| !f.is_identity_word())
            .collect();
        if kept.len() == 1 {
            kept.pop().unwrap()
        } else {
            GroupExpr::Product(kept)
        }
    }

    pub fn inverse(w: GroupExpr) -> Self {
        if w.is_identity_word() {
            w
        } else {
            GroupExpr::Inverse(Box::new(w))
        }
    }

    /// Commutator builder: `[1, h] = [g, 1] = 1` collapses to the identity.
    pub fn commutator(g: GroupExpr, h: GroupExpr) -> Self {
        if g.is_identity_word() || h.is_identity_word() {
            GroupExpr::identity()
        } else {
            GroupExpr::Commutator(Box::new(g), Box::new(h))
        }
    }

    /// Conjugation builder: a trivial inner word collapses, a trivial
    /// conjugator unwraps.
    pub fn conjugation(conjugator: GroupExpr, inner: GroupExpr) -> Self {
        if inner.is_identity_word() {
            GroupExpr::identity()
        } else if conjugator.is_identity_word() {
            inner
        } else {
            GroupExpr::Conjugation {
                conjugator: Box::new(conjugator),
                inner: Box::new(inner),
            }
        }
    }

    /// Number of atomic letters in the tree.
    pub fn letter_count(&self) -> usize {
        match self {
            GroupExpr::Elem { .. } | GroupExpr::Symbol { .. } => 1,
            GroupExpr::Inverse(w) => w.letter_count(),
            GroupExpr::Product(ws) => ws.iter().map(|w| w.letter_count()).sum(),
            GroupExpr::Commutator(g, h) => g.letter_count() + h.letter_count(),
            GroupExpr::Conjugation { conjugator, inner } => {
                conjugator.letter_count() + inner.letter_count()
            }
        }
    }

    /// Exact evaluation in SL_n over the given ring.
    pub fn evaluate(&self, n: usize, spec: RingSpec) -> Result<SqMatrix> {
        match self {
            GroupExpr::Elem { i, j, a } => {
                spec.check_same(&a.spec())?;
                SqMatrix::elementary(spec, n, *i, *j, a.clone())
            }
            GroupExpr::Symbol { x, y, z, p, q } => {
                spec.check_same(&x.spec())?;
                check_index(*p, n)?;
                check_index(*q, n)?;
                if p == q {
                    return Err(Error::EqualIndices(*p));
                }
                let s = SqMatrix::symbol(x, y, z)?;
                SqMatrix::suspend(&s, *p, *q, n)
            }
            GroupExpr::Inverse(w) => w.evaluate(n, spec)?.inverse(),
            GroupExpr::Product(ws) => {
                let mut acc = SqMatrix::identity(spec, n);
                for w in ws {
                    acc = acc.mul(&w.evaluate(n, spec)?);
                }
                Ok(acc)
            }
            GroupExpr::Commutator(g, h) => {
                let g = g.evaluate(n, spec)?;
                let h = h.evaluate(n, spec)?;
                Ok(g.inverse()?.mul(&h.inverse()?).mul(&g).mul(&h))
            }
            GroupExpr::Conjugation { conjugator, inner } => {
                let c = conjugator.evaluate(n, spec)?;
                let w = inner.evaluate(n, spec)?;
                Ok(c.inverse()?.mul(&w).mul(&c))
            }
        }
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn needs_parens(w: &GroupExpr) -> bool {
            matches!(w, GroupExpr::Product(v) if !v.is_empty())
        }
        fn wrapped(w: &GroupExpr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            if needs_parens(w) {
                write!(f, "({w})")
            } else {
                write!(f, "{w}")
            }
        }
        match self {
            GroupExpr::Elem { i, j, a } => write!(f, "e[{i},{j}]({a})"),
            GroupExpr::Symbol { x, y, z, p, q } => write!(f, "S[{p},{q}]({x}, {y}; {z})"),
            GroupExpr::Inverse(w) => {
                wrapped(w, f)?;
                write!(f, "^-1")
            }
            GroupExpr::Product(ws) => {
                if ws.is_empty() {
                    return write!(f, "1");
                }
                for (k, w) in ws.iter().enumerate() {
                    if k > 0 {
                        write!(f, " * ")?;
                    }
                    wrapped(w, f)?;
                }
                Ok(())
            }
            GroupExpr::Commutator(g, h) => write!(f, "[{g}, {h}]"),
            GroupExpr::Conjugation { conjugator, inner } => {
                write!(f, "(")?;
                wrapped(inner, f)?;
                write!(f, " ^ ")?;
                wrapped(conjugator, f)?;
                write!(f, ")")
            }
        }
    }
}

/// Letter disciplines. Checking a word against a discipline certifies which
/// subgroup its value lies in:
///
/// * `F(pi)`: every atom is an elementary letter with coefficient in `pi`
///   (value lies in the subgroup generated by such letters).
/// * `E(pi)`: atoms as in `F(pi)`; `Conjugation` nodes may use an arbitrary
///   conjugator around an `E(pi)` inner word, and `Commutator` nodes need
///   only their left subtree disciplined (value lies in the normal closure).
/// * `CommF(pi)`: a product of commutators of two `F(pi)` words, and
///   inverses of such.
/// * `Unrestricted`: any well-formed word.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Discipline {
    F(Ideal),
    E(Ideal),
    CommF(Ideal),
    Unrestricted,
}

impl Discipline {
    pub fn ideal(&self) -> Option<&Ideal> {
        match self {
            Discipline::F(i) | Discipline::E(i) | Discipline::CommF(i) => Some(i),
            Discipline::Unrestricted => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Discipline::F(_) => "F",
            Discipline::E(_) => "E",
            Discipline::CommF(_) => "commF",
            Discipline::Unrestricted => "unrestricted",
        }
    }
}

impl fmt::Display for Discipline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.ideal() {
            Some(i) => write!(f, "{}{}", self.name(), i),
            None => write!(f, "{}", self.name()),
        }
    }
}

/// The first violation found when checking a word against a discipline.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Violation {
    /// Path from the root, e.g. `prod[2].comm.left`.
    pub path: String,
    pub reason: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let at = if self.path.is_empty() { "root" } else { &self.path };
        write!(f, "discipline violation at {}: {}", at, self.reason)
    }
}

pub fn check_discipline(w: &GroupExpr, d: &Discipline) -> std::result::Result<(), Violation> {
    let mut path = String::new();
    match d {
        Discipline::F(pi) => check_f(w, pi, &mut path),
        Discipline::E(pi) => check_e(w, pi, &mut path),
        Discipline::CommF(pi) => check_comm_f(w, pi, &mut path),
        Discipline::Unrestricted => Ok(()),
    }
}

fn at(path: &str, seg: &str) -> String {
    if path.is_empty() {
        seg.to_string()
    } else {
        format!("{path}.{seg}")
    }
}

fn violation(path: &str, reason: String) -> Violation {
    Violation {
        path: path.to_string(),
        reason,
    }
}

fn check_letter(i: usize, j: usize, a: &RingValue, pi: &Ideal, path: &str) -> std::result::Result<(), Violation> {
    match pi.contains(a) {
        Ok(true) => Ok(()),
        Ok(false) => Err(violation(
            path,
            format!("coefficient {a} of e_{i}{j} is not in {pi}"),
        )),
        Err(e) => Err(violation(path, e.to_string())),
    }
}

fn check_f(w: &GroupExpr, pi: &Ideal, path: &mut String) -> std::result::Result<(), Violation> {
    match w {
        GroupExpr::Elem { i, j, a } => check_letter(*i, *j, a, pi, path),
        GroupExpr::Symbol { .. } => Err(violation(path, "symbol letter is not allowed here".into())),
        GroupExpr::Inverse(u) => check_f(u, pi, &mut at(path, "inv")),
        GroupExpr::Product(us) => {
            for (k, u) in us.iter().enumerate() {
                check_f(u, pi, &mut at(path, &format!("prod[{k}]")))?;
            }
            Ok(())
        }
        GroupExpr::Commutator(g, h) => {
            check_f(g, pi, &mut at(path, "comm.left"))?;
            check_f(h, pi, &mut at(path, "comm.right"))
        }
        GroupExpr::Conjugation { conjugator, inner } => {
            check_f(conjugator, pi, &mut at(path, "conj.by"))?;
            check_f(inner, pi, &mut at(path, "conj.inner"))
        }
    }
}

fn check_e(w: &GroupExpr, pi: &Ideal, path: &mut String) -> std::result::Result<(), Violation> {
    match w {
        GroupExpr::Elem { i, j, a } => check_letter(*i, *j, a, pi, path),
        GroupExpr::Symbol { .. } => Err(violation(path, "symbol letter is not allowed here".into())),
        GroupExpr::Inverse(u) => check_e(u, pi, &mut at(path, "inv")),
        GroupExpr::Product(us) => {
            for (k, u) in us.iter().enumerate() {
                check_e(u, pi, &mut at(path, &format!("prod[{k}]")))?;
            }
            Ok(())
        }
        // [g, h] = g^-1 (h^-1 g h): disciplined left factor suffices.
        GroupExpr::Commutator(g, _) => check_e(g, pi, &mut at(path, "comm.left")),
        // Conjugation by anything stays in the normal closure.
        GroupExpr::Conjugation { inner, .. } => check_e(inner, pi, &mut at(path, "conj.inner")),
    }
}

fn check_comm_f(w: &GroupExpr, pi: &Ideal, path: &mut String) -> std::result::Result<(), Violation> {
    match w {
        GroupExpr::Commutator(g, h) => {
            check_f(g, pi, &mut at(path, "comm.left"))?;
            check_f(h, pi, &mut at(path, "comm.right"))
        }
        GroupExpr::Inverse(u) => check_comm_f(u, pi, &mut at(path, "inv")),
        GroupExpr::Product(us) => {
            for (k, u) in us.iter().enumerate() {
                check_comm_f(u, pi, &mut at(path, &format!("prod[{k}]")))?;
            }
            Ok(())
        }
        _ => Err(violation(
            path,
            "only products of commutators of disciplined words (and inverses of such) are allowed"
                .into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingSpec;

    fn z() -> RingSpec {
        RingSpec::Integers
    }

    fn rv(v: i64) -> RingValue {
        RingValue::from_i64(z(), v)
    }

    fn e(i: usize, j: usize, a: i64) -> GroupExpr {
        GroupExpr::elem(i, j, rv(a))
    }

    #[test]
    fn evaluates_letters_and_products() {
        let w = GroupExpr::product(vec![e(1, 2, 3), e(2, 1, -1)]);
        let m = w.evaluate(3, z()).unwrap();
        assert_eq!(
            m,
            SqMatrix::from_i64_rows(z(), &[&[-2, 3, 0], &[-1, 1, 0], &[0, 0, 1]]).unwrap()
        );
        assert!(GroupExpr::identity().evaluate(3, z()).unwrap().is_identity());
    }

    #[test]
    fn commutator_of_elementary_letters() {
        // [e_12(u), e_23(v)] = e_13(uv)
        let w = GroupExpr::commutator(e(1, 2, 3), e(2, 3, 5));
        assert_eq!(
            w.evaluate(3, z()).unwrap(),
            e(1, 3, 15).evaluate(3, z()).unwrap()
        );
    }

    #[test]
    fn commutator_convention_is_inverse_first() {
        // [g, h] = g^-1 h^-1 g h, checked on a non-commuting pair.
        let g = e(1, 2, 1);
        let h = e(2, 1, 1);
        let w = GroupExpr::commutator(g.clone(), h.clone());
        let gm = g.evaluate(2, z()).unwrap();
        let hm = h.evaluate(2, z()).unwrap();
        let expect = gm
            .inverse()
            .unwrap()
            .mul(&hm.inverse().unwrap())
            .mul(&gm)
            .mul(&hm);
        assert_eq!(w.evaluate(2, z()).unwrap(), expect);
    }

    #[test]
    fn conjugation_evaluates_c_inverse_w_c() {
        let c = e(1, 2, 1);
        let w = e(2, 1, 4);
        let expr = GroupExpr::conjugation(c.clone(), w.clone());
        let cm = c.evaluate(2, z()).unwrap();
        let wm = w.evaluate(2, z()).unwrap();
        assert_eq!(
            expr.evaluate(2, z()).unwrap(),
            cm.inverse().unwrap().mul(&wm).mul(&cm)
        );
    }

    #[test]
    fn suspended_commutator_instance() {
        let w = GroupExpr::commutator(
            GroupExpr::product(vec![e(1, 3, 1), e(2, 3, 1)]),
            GroupExpr::product(vec![e(3, 1, 1), e(3, 2, -1)]),
        );
        assert_eq!(
            w.evaluate(3, z()).unwrap(),
            SqMatrix::from_i64_rows(z(), &[&[2, -1, 0], &[1, 0, 0], &[0, 0, 1]]).unwrap()
        );
    }

    #[test]
    fn inverse_evaluates() {
        let w = GroupExpr::inverse(GroupExpr::product(vec![e(1, 2, 3), e(3, 1, 2)]));
        let m = GroupExpr::product(vec![e(1, 2, 3), e(3, 1, 2)])
            .evaluate(3, z())
            .unwrap();
        assert!(w.evaluate(3, z()).unwrap().mul(&m).is_identity());
    }

    #[test]
    fn evaluation_validates_indices_and_rings() {
        let bad = GroupExpr::Elem {
            i: 1,
            j: 4,
            a: rv(1),
        };
        assert!(matches!(
            bad.evaluate(3, z()),
            Err(Error::IndexOutOfRange { index: 4, n: 3 })
        ));
        let eq = GroupExpr::Symbol {
            x: rv(1),
            y: rv(1),
            z: rv(1),
            p: 2,
            q: 2,
        };
        assert!(matches!(eq.evaluate(3, z()), Err(Error::EqualIndices(2))));
        let wrong_ring = GroupExpr::Elem {
            i: 1,
            j: 2,
            a: RingValue::from_i64(RingSpec::Modular(4), 1),
        };
        assert!(matches!(
            wrong_ring.evaluate(3, z()),
            Err(Error::RingMismatch(_, _))
        ));
    }

    #[test]
    fn builders_drop_zero_letters() {
        assert!(e(1, 2, 0).is_identity_word());
        assert!(GroupExpr::symbol(rv(1), rv(2), rv(0), 1, 2).is_identity_word());
        assert!(GroupExpr::commutator(e(1, 2, 0), e(2, 1, 5)).is_identity_word());
        assert_eq!(GroupExpr::product(vec![e(1, 2, 0), e(2, 1, 5)]), e(2, 1, 5));
        assert!(GroupExpr::inverse(GroupExpr::identity()).is_identity_word());
        assert_eq!(GroupExpr::conjugation(GroupExpr::identity(), e(1, 2, 1)), e(1, 2, 1));
    }

    #[test]
    fn f_discipline_accepts_ideal_letters_only() {
        let pi = Ideal::from_i64(z(), 3);
        let ok = GroupExpr::product(vec![e(1, 2, 6), GroupExpr::inverse(e(2, 3, -3))]);
        assert!(check_discipline(&ok, &Discipline::F(pi.clone())).is_ok());

        let bad = GroupExpr::product(vec![e(1, 2, 6), e(2, 3, 2)]);
        let v = check_discipline(&bad, &Discipline::F(pi.clone())).unwrap_err();
        assert_eq!(v.path, "prod[1]");
        assert!(v.reason.contains("not in (3)"));

        let sym = GroupExpr::symbol(rv(1), rv(1), rv(3), 1, 2);
        assert!(check_discipline(&sym, &Discipline::F(pi)).is_err());
    }

    #[test]
    fn e_discipline_allows_unrestricted_conjugators() {
        let pi = Ideal::from_i64(z(), 3);
        let any = GroupExpr::product(vec![e(1, 2, 1), e(3, 1, -2)]);
        let w = GroupExpr::conjugation(any.clone(), e(1, 2, 3));
        assert!(check_discipline(&w, &Discipline::E(pi.clone())).is_ok());
        // ... but not unrestricted atoms.
        let w = GroupExpr::conjugation(e(1, 2, 3), e(1, 2, 1));
        assert!(check_discipline(&w, &Discipline::E(pi.clone())).is_err());
        // Commutator with disciplined left side and arbitrary right side.
        let w = GroupExpr::commutator(e(1, 2, 3), any);
        assert!(check_discipline(&w, &Discipline::E(pi)).is_ok());
    }

    #[test]
    fn f_disciplined_words_pass_e_discipline() {
        let pi = Ideal::from_i64(z(), 2);
        let w = GroupExpr::product(vec![
            GroupExpr::commutator(e(1, 2, 2), e(2, 3, 4)),
            GroupExpr::conjugation(e(3, 1, 2), e(1, 3, -2)),
            GroupExpr::inverse(e(2, 1, 6)),
        ]);
        assert!(check_discipline(&w, &Discipline::F(pi.clone())).is_ok());
        assert!(check_discipline(&w, &Discipline::E(pi)).is_ok());
    }

    #[test]
    fn comm_f_discipline_shape() {
        let pi = Ideal::from_i64(z(), 2);
        let c1 = GroupExpr::commutator(e(1, 3, 2), e(3, 2, 4));
        let c2 = GroupExpr::inverse(GroupExpr::commutator(e(2, 1, 2), e(1, 3, 2)));
        let w = GroupExpr::product(vec![c1.clone(), c2]);
        assert!(check_discipline(&w, &Discipline::CommF(pi.clone())).is_ok());

        // A bare letter is not a product of commutators.
        assert!(check_discipline(&e(1, 2, 2), &Discipline::CommF(pi.clone())).is_err());
        // Commutator whose right side is not disciplined.
        let bad = GroupExpr::commutator(e(1, 3, 2), e(3, 2, 1));
        let v = check_discipline(&bad, &Discipline::CommF(pi)).unwrap_err();
        assert_eq!(v.path, "comm.right");
    }

    #[test]
    fn unrestricted_accepts_everything() {
        let w = GroupExpr::symbol(rv(5), rv(7), rv(11), 2, 1);
        assert!(check_discipline(&w, &Discipline::Unrestricted).is_ok());
    }

    #[test]
    fn letter_count_counts_atoms() {
        let w = GroupExpr::product(vec![
            e(1, 2, 1),
            GroupExpr::commutator(e(1, 3, 2), GroupExpr::symbol(rv(1), rv(1), rv(1), 1, 2)),
        ]);
        assert_eq!(w.letter_count(), 3);
    }
}
