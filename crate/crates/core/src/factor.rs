//! Suslin-style factorization of conjugated elementary matrices and the
//! certificate emitters built on it.
//!
//! For `g` of determinant 1 and `i != j`, write `v` for the `i`-th column of
//! `g^-1`, `w` for the `j`-th row of `g`, `w'` for the `i`-th row of `g`, and
//! `c_kl = w_k w'_l - w_l w'_k`. Then `w . v = 0`, `w' . v = 1`,
//! `w = sum_{k<l} c_kl (v_l e_k - v_k e_l)`, and
//!
//! ```text
//! g^-1 e_ij(a) g = prod_{k<l} ( S(v_k, v_l; a c_kl)^{(k,l)}
//!                   prod_{s != k,l} e_sk(a c_kl v_s v_l) e_sl(-a c_kl v_s v_k) )
//! ```
//!
//! where `S(x, y; z)^{(k,l)}` is the symbol suspended at `(k, l)`. The factors
//! commute, so the product is taken over pairs in lexicographic order.
//!
//! Symbols with a coefficient in the right ideal are then rewritten into
//! disciplined words: a single commutator for `E(pi)`, a commutator of two
//! `F(pi)` words when `z` splits in `pi^2`, and a five-multiplier row/column
//! reduction for `F(pi)` when `z` and one of `x, y` lie in `pi`.

use crate::certificate::{Certificate, Claim};
use crate::error::{Error, Result};
use crate::matrix::{check_index, in_class, CongruenceClass, SqMatrix};
use crate::ring::{Ideal, RingValue};
use crate::word::{Discipline, GroupExpr};

/// The exact data entering the factorization, validated on construction.
#[derive(Clone, Debug)]
pub struct SuslinData {
    n: usize,
    v: Vec<RingValue>,
    w: Vec<RingValue>,
    w_prime: Vec<RingValue>,
    c: Vec<RingValue>,
}

fn dot(a: &[RingValue], b: &[RingValue]) -> RingValue {
    let mut acc = RingValue::zero(a[0].spec());
    for (x, y) in a.iter().zip(b) {
        acc = &acc + &(x * y);
    }
    acc
}

impl SuslinData {
    pub fn new(g: &SqMatrix, i: usize, j: usize) -> Result<Self> {
        let n = g.n();
        check_index(i, n)?;
        check_index(j, n)?;
        if i == j {
            return Err(Error::EqualIndices(i));
        }
        let det = g.det();
        if !det.is_one() {
            return Err(Error::NotSpecialLinear {
                det: det.to_string(),
            });
        }
        let v = g.inverse()?.column(i);
        let w = g.row(j);
        let w_prime = g.row(i);

        let mut c = Vec::with_capacity(n * (n - 1) / 2);
        for k in 0..n {
            for l in k + 1..n {
                c.push(&(&w[k] * &w_prime[l]) - &(&w[l] * &w_prime[k]));
            }
        }
        let data = SuslinData {
            n,
            v,
            w,
            w_prime,
            c,
        };

        if !dot(&data.w, &data.v).is_zero() {
            return Err(Error::InvariantViolation("w . v must vanish"));
        }
        if !dot(&data.w_prime, &data.v).is_one() {
            return Err(Error::InvariantViolation("w' . v must be 1"));
        }
        // w_t = sum_{l>t} c_tl v_l - sum_{k<t} c_kt v_k
        for t in 1..=n {
            let mut acc = RingValue::zero(g.spec());
            for l in t + 1..=n {
                acc = &acc + &(data.c_at(t, l) * &data.v[l - 1]);
            }
            for k in 1..t {
                acc = &acc - &(data.c_at(k, t) * &data.v[k - 1]);
            }
            if acc != data.w[t - 1] {
                return Err(Error::InvariantViolation("w must equal sum c_kl (v_l e_k - v_k e_l)"));
            }
        }
        Ok(data)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Column `i` of `g^-1` (1-based entries `v(1) ..= v(n)`).
    pub fn v(&self, s: usize) -> &RingValue {
        &self.v[s - 1]
    }

    pub fn w(&self, s: usize) -> &RingValue {
        &self.w[s - 1]
    }

    pub fn w_prime(&self, s: usize) -> &RingValue {
        &self.w_prime[s - 1]
    }

    /// `c_kl` for `1 <= k < l <= n`.
    pub fn c_at(&self, k: usize, l: usize) -> &RingValue {
        assert!(1 <= k && k < l && l <= self.n);
        let k0 = k - 1;
        let offset = k0 * self.n - k0 * (k0 + 1) / 2;
        &self.c[offset + (l - k - 1)]
    }

    /// Pairs `(k, l)`, `k < l`, in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        (1..=n).flat_map(move |k| (k + 1..=n).map(move |l| (k, l)))
    }
}

/// The target of every emitter below: `g^-1 e_ij(a) g`.
pub fn conjugated_target(g: &SqMatrix, i: usize, j: usize, a: &RingValue) -> Result<SqMatrix> {
    let e = SqMatrix::elementary(g.spec(), g.n(), i, j, a.clone())?;
    Ok(g.inverse()?.mul(&e).mul(g))
}

/// Factors `g^-1 e_ij(a) g` into suspended symbols and elementary letters.
/// Works over any of the supported rings for any determinant-1 `g`, n >= 2.
pub fn suslin_factorize(
    g: &SqMatrix,
    i: usize,
    j: usize,
    a: &RingValue,
) -> Result<GroupExpr> {
    g.spec().check_same(&a.spec())?;
    let data = SuslinData::new(g, i, j)?;
    let mut factors = Vec::new();
    for (k, l) in data.pairs() {
        let z = a * data.c_at(k, l);
        let mut parts = vec![GroupExpr::symbol(
            data.v(k).clone(),
            data.v(l).clone(),
            z.clone(),
            k,
            l,
        )];
        for s in 1..=data.n() {
            if s == k || s == l {
                continue;
            }
            let zs = &z * data.v(s);
            parts.push(GroupExpr::elem(s, k, &zs * data.v(l)));
            parts.push(GroupExpr::elem(s, l, -&(&zs * data.v(k))));
        }
        factors.push(GroupExpr::product(parts));
    }
    Ok(GroupExpr::product(factors))
}

/// Smallest index usable as a helper next to `k` and `l`; needs `n >= 3`.
pub fn helper_index(k: usize, l: usize, n: usize) -> Result<usize> {
    check_index(k, n)?;
    check_index(l, n)?;
    if k == l {
        return Err(Error::EqualIndices(k));
    }
    if n < 3 {
        return Err(Error::DimensionTooSmall {
            what: "symbol expansion",
            required: 3,
            found: n,
        });
    }
    Ok((1..=n).find(|s| *s != k && *s != l).unwrap())
}

/// The suspended symbol as a commutator of two two-letter words:
///
/// ```text
/// S(x, y; z1*z2)^{(k,l)} = [ e_km(x z1) e_lm(y z1), e_mk(y z2) e_ml(-x z2) ]
/// ```
///
/// with `m` the helper index. With `z1, z2` in `pi` this is a commutator of
/// two `F(pi)` words.
pub fn tits_symbol_expr(
    x: &RingValue,
    y: &RingValue,
    z1: &RingValue,
    z2: &RingValue,
    k: usize,
    l: usize,
    n: usize,
) -> Result<GroupExpr> {
    let spec = x.spec();
    spec.check_same(&y.spec())?;
    spec.check_same(&z1.spec())?;
    spec.check_same(&z2.spec())?;
    let m = helper_index(k, l, n)?;
    let left = GroupExpr::product(vec![
        GroupExpr::elem(k, m, x * z1),
        GroupExpr::elem(l, m, y * z1),
    ]);
    let right = GroupExpr::product(vec![
        GroupExpr::elem(m, k, y * z2),
        GroupExpr::elem(m, l, -&(x * z2)),
    ]);
    Ok(GroupExpr::commutator(left, right))
}

/// The suspended symbol as a single commutator,
/// `S(x, y; z)^{(k,l)} = [ e_km(xz) e_lm(yz), e_mk(y) e_ml(-x) ]`.
/// With `z` in `pi` the left word is `F(pi)`, so the whole is `E(pi)`.
pub fn symbol_commutator_expr(
    x: &RingValue,
    y: &RingValue,
    z: &RingValue,
    k: usize,
    l: usize,
    n: usize,
) -> Result<GroupExpr> {
    tits_symbol_expr(x, y, z, &RingValue::one(x.spec()), k, l, n)
}

/// A `CommF(pi)` word for `S(x, y; z)^{(k,l)}` when `z` lies in `pi^2`,
/// via the split `z = N*q` with `q` in `pi`.
pub fn symbol_expr_in_f(
    x: &RingValue,
    y: &RingValue,
    z: &RingValue,
    k: usize,
    l: usize,
    n: usize,
    pi: &Ideal,
) -> Result<GroupExpr> {
    pi.spec().check_same(&x.spec())?;
    let (z1, z2) = pi.split_square(z)?;
    tits_symbol_expr(x, y, &z1, &z2, k, l, n)
}

/// A single commutator of two `F(pi)` letters for `e_ij(z)` when `z` lies
/// in `pi^2`: `e_ij(N*q) = [ e_ik(N), e_kj(q) ]` with helper index `k`.
pub fn elem_expr_in_comm_f(
    i: usize,
    j: usize,
    z: &RingValue,
    n: usize,
    pi: &Ideal,
) -> Result<GroupExpr> {
    pi.spec().check_same(&z.spec())?;
    let k = helper_index(i, j, n)?;
    let (u, v) = pi.split_square(z)?;
    Ok(GroupExpr::commutator(
        GroupExpr::elem(i, k, u),
        GroupExpr::elem(k, j, v),
    ))
}

/// The row/column reduction of a suspended symbol with `z` in `pi` and one
/// of `y` (direct case) or `x` (mirrored case, via the swap identity
/// `S(x,y;z)^{(k,l)} = S(y,x;-z)^{(l,k)}`) in `pi`.
#[derive(Clone, Debug)]
pub struct SymbolReduction {
    /// Row multipliers applied on the left: `e_mk(y) e_km(xz) e_lm(yz)`.
    pub left: GroupExpr,
    /// Disciplined word for the reduced inner symbol.
    pub inner: GroupExpr,
    /// Column multipliers applied on the right: `e_mk(-y) e_kl(x^2 z) e_km(-xz)`.
    pub right: GroupExpr,
    /// Effective parameters after an optional swap to the direct case.
    pub x: RingValue,
    pub y: RingValue,
    pub z: RingValue,
    /// Effective ordered pair; `(l, k)` of the original call when mirrored.
    pub pair: (usize, usize),
    /// The helper index `m`.
    pub helper: usize,
    pub mirrored: bool,
}

impl SymbolReduction {
    /// The emitted word: `left^-1 * inner * right^-1`.
    pub fn expr(&self) -> GroupExpr {
        GroupExpr::product(vec![
            GroupExpr::inverse(self.left.clone()),
            self.inner.clone(),
            GroupExpr::inverse(self.right.clone()),
        ])
    }

    /// Where the reduced inner symbol `S(1, x; -y z)` sits.
    pub fn inner_pair(&self) -> (usize, usize) {
        (self.pair.1, self.helper)
    }

    /// The reduced inner stage, `suspend(S(1, x; -y z), l, m)`; equals
    /// `left * S(x,y;z)^{(k,l)} * right` as matrices.
    pub fn inner_value(&self, n: usize) -> Result<SqMatrix> {
        let one = RingValue::one(self.x.spec());
        let s = SqMatrix::symbol(&one, &self.x, &-&(&self.y * &self.z))?;
        SqMatrix::suspend(&s, self.pair.1, self.helper, n)
    }
}

/// Reduction data for `S(x, y; z)^{(k,l)}`; see [`reduce_symbol_expr`].
pub fn reduce_symbol_parts(
    x: &RingValue,
    y: &RingValue,
    z: &RingValue,
    k: usize,
    l: usize,
    n: usize,
    pi: &Ideal,
) -> Result<SymbolReduction> {
    let spec = pi.spec();
    spec.check_same(&x.spec())?;
    spec.check_same(&y.spec())?;
    spec.check_same(&z.spec())?;
    helper_index(k, l, n)?;
    if !pi.contains(z)? {
        return Err(Error::ParamNotInIdeal {
            param: "z",
            value: z.to_string(),
            ideal: pi.to_string(),
        });
    }
    if pi.contains(y)? {
        direct_reduction(x.clone(), y.clone(), z.clone(), k, l, n, false)
    } else if pi.contains(x)? {
        // S(x, y; z)^{(k,l)} = S(y, x; -z)^{(l,k)}
        direct_reduction(y.clone(), x.clone(), -z, l, k, n, true)
    } else {
        Err(Error::NeitherSymbolArgInIdeal {
            x: x.to_string(),
            y: y.to_string(),
            ideal: pi.to_string(),
        })
    }
}

fn direct_reduction(
    x: RingValue,
    y: RingValue,
    z: RingValue,
    k: usize,
    l: usize,
    n: usize,
    mirrored: bool,
) -> Result<SymbolReduction> {
    let m = helper_index(k, l, n)?;
    if z.is_zero() {
        // The suspended symbol is already the identity.
        return Ok(SymbolReduction {
            left: GroupExpr::identity(),
            inner: GroupExpr::identity(),
            right: GroupExpr::identity(),
            x,
            y,
            z,
            pair: (k, l),
            helper: m,
            mirrored,
        });
    }
    let xz = &x * &z;
    let yz = &y * &z;
    let left = GroupExpr::product(vec![
        GroupExpr::elem(m, k, y.clone()),
        GroupExpr::elem(k, m, xz.clone()),
        GroupExpr::elem(l, m, yz),
    ]);
    let right = GroupExpr::product(vec![
        GroupExpr::elem(m, k, -&y),
        GroupExpr::elem(k, l, &(&x * &x) * &z),
        GroupExpr::elem(k, m, -&xz),
    ]);
    // left * S(x,y;z)^{(k,l)} * right = S(1, x; (-y)*z)^{(l,m)}, expanded
    // with the known split (-y)*z of its coefficient.
    let inner = tits_symbol_expr(&RingValue::one(x.spec()), &x, &-&y, &z, l, m, n)?;
    Ok(SymbolReduction {
        left,
        inner,
        right,
        x,
        y,
        z,
        pair: (k, l),
        helper: m,
        mirrored,
    })
}

/// An `F(pi)` word evaluating to `S(x, y; z)^{(k,l)}`; requires `z` in `pi`
/// and one of `y`, `x` in `pi`.
pub fn reduce_symbol_expr(
    x: &RingValue,
    y: &RingValue,
    z: &RingValue,
    k: usize,
    l: usize,
    n: usize,
    pi: &Ideal,
) -> Result<GroupExpr> {
    Ok(reduce_symbol_parts(x, y, z, k, l, n, pi)?.expr())
}

/// How the symbols of a factorization were expanded.
#[derive(Clone, Copy, Default, Debug, PartialEq, Eq)]
pub struct ExpansionCounts {
    pub direct: usize,
    pub mirrored: usize,
    /// Symbols `S(x, 0; z)` or `S(0, y; z)`, emitted as one elementary letter.
    pub degenerate: usize,
}

enum SymbolTreatment {
    /// Degenerate symbol collapsed to `e_pq(coeff)`.
    Letter {
        p: usize,
        q: usize,
        coeff: RingValue,
    },
    Full,
}

fn classify_symbol(x: &RingValue, y: &RingValue, z: &RingValue, k: usize, l: usize) -> SymbolTreatment {
    if y.is_zero() {
        // S(x, 0; z) = [[1, -x^2 z], [0, 1]]
        SymbolTreatment::Letter {
            p: k,
            q: l,
            coeff: -&(&(x * x) * z),
        }
    } else if x.is_zero() {
        // S(0, y; z) = [[1, 0], [y^2 z, 1]]
        SymbolTreatment::Letter {
            p: l,
            q: k,
            coeff: &(y * y) * z,
        }
    } else {
        SymbolTreatment::Full
    }
}

fn emitter_preamble(
    g: &SqMatrix,
    i: usize,
    j: usize,
    a: &RingValue,
    pi: &Ideal,
    a_ideal: &Ideal,
    a_param: &'static str,
) -> Result<SuslinData> {
    g.spec().check_same(&a.spec())?;
    g.spec().check_same(&pi.spec())?;
    if g.n() < 3 {
        return Err(Error::DimensionTooSmall {
            what: "certificate emission",
            required: 3,
            found: g.n(),
        });
    }
    if !a_ideal.contains(a)? {
        return Err(Error::ParamNotInIdeal {
            param: a_param,
            value: a.to_string(),
            ideal: a_ideal.to_string(),
        });
    }
    SuslinData::new(g, i, j)
}

/// Certificate that `g^-1 e_ij(a) g` lies in the subgroup generated by
/// elementary letters over `pi`, for `g` in `Omega_n(pi)` and `a` in `pi`.
pub fn conjugate_in_f(
    g: &SqMatrix,
    i: usize,
    j: usize,
    a: &RingValue,
    pi: &Ideal,
) -> Result<Certificate> {
    Ok(conjugate_in_f_counted(g, i, j, a, pi)?.0)
}

/// Like [`conjugate_in_f`], also reporting which symbol cases were used.
pub fn conjugate_in_f_counted(
    g: &SqMatrix,
    i: usize,
    j: usize,
    a: &RingValue,
    pi: &Ideal,
) -> Result<(Certificate, ExpansionCounts)> {
    let data = emitter_preamble(g, i, j, a, pi, pi, "a")?;
    let omega = CongruenceClass::omega(pi.clone(), g.n())?;
    if !in_class(g, &omega)? {
        return Err(Error::NotInClass {
            class: omega.to_string(),
        });
    }
    let mut counts = ExpansionCounts::default();
    let n = g.n();
    let mut factors = Vec::new();
    for (k, l) in data.pairs() {
        let z = a * data.c_at(k, l);
        if z.is_zero() {
            continue;
        }
        let x = data.v(k);
        let y = data.v(l);
        let sym = match classify_symbol(x, y, &z, k, l) {
            SymbolTreatment::Letter { p, q, coeff } => {
                counts.degenerate += 1;
                GroupExpr::elem(p, q, coeff)
            }
            SymbolTreatment::Full => {
                let red = reduce_symbol_parts(x, y, &z, k, l, n, pi)?;
                if red.mirrored {
                    counts.mirrored += 1;
                } else {
                    counts.direct += 1;
                }
                red.expr()
            }
        };
        let mut parts = vec![sym];
        push_pair_letters(&mut parts, &data, k, l, &z);
        factors.push(GroupExpr::product(parts));
    }
    let witness = GroupExpr::product(factors);
    let target = conjugated_target(g, i, j, a)?;
    let cert = Certificate::new(
        Claim {
            ring: g.spec(),
            n,
            discipline: Discipline::F(pi.clone()),
            target,
        },
        witness,
    );
    Ok((cert, counts))
}

fn push_pair_letters(
    parts: &mut Vec<GroupExpr>,
    data: &SuslinData,
    k: usize,
    l: usize,
    z: &RingValue,
) {
    for s in 1..=data.n() {
        if s == k || s == l {
            continue;
        }
        let zs = z * data.v(s);
        parts.push(GroupExpr::elem(s, k, &zs * data.v(l)));
        parts.push(GroupExpr::elem(s, l, -&(&zs * data.v(k))));
    }
}

/// Certificate that `g^-1 e_ij(a) g` lies in the normal closure of the
/// `pi`-elementary letters, for any determinant-1 `g` and `a` in `pi`.
pub fn conjugate_in_e(
    g: &SqMatrix,
    i: usize,
    j: usize,
    a: &RingValue,
    pi: &Ideal,
) -> Result<Certificate> {
    let data = emitter_preamble(g, i, j, a, pi, pi, "a")?;
    let n = g.n();
    let mut factors = Vec::new();
    for (k, l) in data.pairs() {
        let z = a * data.c_at(k, l);
        if z.is_zero() {
            continue;
        }
        let x = data.v(k);
        let y = data.v(l);
        let sym = match classify_symbol(x, y, &z, k, l) {
            SymbolTreatment::Letter { p, q, coeff } => GroupExpr::elem(p, q, coeff),
            SymbolTreatment::Full => symbol_commutator_expr(x, y, &z, k, l, n)?,
        };
        let mut parts = vec![sym];
        push_pair_letters(&mut parts, &data, k, l, &z);
        factors.push(GroupExpr::product(parts));
    }
    let witness = GroupExpr::product(factors);
    let target = conjugated_target(g, i, j, a)?;
    Ok(Certificate::new(
        Claim {
            ring: g.spec(),
            n,
            discipline: Discipline::E(pi.clone()),
            target,
        },
        witness,
    ))
}

/// Certificate that `c^-1 e_ij(a) c` is a product of commutators of `F(pi)`
/// words, for any conjugator word `c` and `a` in `pi^2`.
pub fn normal_generator_in_f(
    c: &GroupExpr,
    i: usize,
    j: usize,
    a: &RingValue,
    pi: &Ideal,
    n: usize,
) -> Result<Certificate> {
    let g = c.evaluate(n, pi.spec())?;
    let pi2 = pi.square();
    let data = emitter_preamble(&g, i, j, a, pi, &pi2, "a")?;
    let mut factors = Vec::new();
    for (k, l) in data.pairs() {
        let z = a * data.c_at(k, l);
        if z.is_zero() {
            continue;
        }
        let x = data.v(k);
        let y = data.v(l);
        let sym = match classify_symbol(x, y, &z, k, l) {
            SymbolTreatment::Letter { p, q, coeff } => {
                elem_expr_in_comm_f(p, q, &coeff, n, pi)?
            }
            SymbolTreatment::Full => symbol_expr_in_f(x, y, &z, k, l, n, pi)?,
        };
        let mut parts = vec![sym];
        for s in 1..=data.n() {
            if s == k || s == l {
                continue;
            }
            let zs = &z * data.v(s);
            let ck = &zs * data.v(l);
            let cl = -&(&zs * data.v(k));
            if !ck.is_zero() {
                parts.push(elem_expr_in_comm_f(s, k, &ck, n, pi)?);
            }
            if !cl.is_zero() {
                parts.push(elem_expr_in_comm_f(s, l, &cl, n, pi)?);
            }
        }
        factors.push(GroupExpr::product(parts));
    }
    let witness = GroupExpr::product(factors);
    let target = conjugated_target(&g, i, j, a)?;
    Ok(Certificate::new(
        Claim {
            ring: g.spec(),
            n,
            discipline: Discipline::CommF(pi.clone()),
            target,
        },
        witness,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingSpec;
    use crate::word::check_discipline;

    fn z() -> RingSpec {
        RingSpec::Integers
    }

    fn zm(m: u64) -> RingSpec {
        RingSpec::Modular(m)
    }

    fn rv(spec: RingSpec, v: i64) -> RingValue {
        RingValue::from_i64(spec, v)
    }

    fn elem_word(spec: RingSpec, n: usize, letters: &[(usize, usize, i64)]) -> (GroupExpr, SqMatrix) {
        let w = GroupExpr::product(
            letters
                .iter()
                .map(|&(i, j, a)| GroupExpr::elem(i, j, rv(spec, a)))
                .collect(),
        );
        let m = w.evaluate(n, spec).unwrap();
        (w, m)
    }

    #[test]
    fn factorization_of_identity_is_one_symbol_letter() {
        let g = SqMatrix::identity(z(), 3);
        let expr = suslin_factorize(&g, 1, 2, &rv(z(), 5)).unwrap();
        assert_eq!(
            expr,
            GroupExpr::Symbol {
                x: rv(z(), 1),
                y: rv(z(), 0),
                z: rv(z(), -5),
                p: 1,
                q: 2,
            }
        );
        assert_eq!(
            expr.evaluate(3, z()).unwrap(),
            SqMatrix::elementary(z(), 3, 1, 2, rv(z(), 5)).unwrap()
        );
    }

    #[test]
    fn factorization_matches_worked_instance() {
        let g = SqMatrix::elementary(z(), 3, 2, 1, rv(z(), 1)).unwrap();
        let a = rv(z(), 2);
        let expr = suslin_factorize(&g, 1, 2, &a).unwrap();
        let target = conjugated_target(&g, 1, 2, &a).unwrap();
        assert_eq!(
            target,
            SqMatrix::from_i64_rows(z(), &[&[3, 2, 0], &[-2, -1, 0], &[0, 0, 1]]).unwrap()
        );
        assert_eq!(expr.evaluate(3, z()).unwrap(), target);
    }

    #[test]
    fn factorization_over_small_words() {
        let cases: &[&[(usize, usize, i64)]] = &[
            &[(1, 2, 3), (2, 3, -1)],
            &[(3, 1, 2), (1, 3, 1), (2, 1, -2)],
            &[(2, 1, 4), (1, 2, 1), (3, 2, -3), (2, 3, 2)],
        ];
        for spec in [z(), zm(12)] {
            for letters in cases {
                let (_, g) = elem_word(spec, 3, letters);
                for (i, j) in [(1, 2), (2, 1), (1, 3), (3, 2)] {
                    let a = rv(spec, 5);
                    let expr = suslin_factorize(&g, i, j, &a).unwrap();
                    assert_eq!(
                        expr.evaluate(3, spec).unwrap(),
                        conjugated_target(&g, i, j, &a).unwrap(),
                        "spec={spec} letters={letters:?} i={i} j={j}"
                    );
                }
            }
        }
    }

    #[test]
    fn factorization_works_at_n_2() {
        let (_, g) = elem_word(z(), 2, &[(1, 2, 2), (2, 1, 3)]);
        let a = rv(z(), 7);
        let expr = suslin_factorize(&g, 2, 1, &a).unwrap();
        assert_eq!(
            expr.evaluate(2, z()).unwrap(),
            conjugated_target(&g, 2, 1, &a).unwrap()
        );
    }

    #[test]
    fn suslin_data_reports_its_pieces() {
        let (_, g) = elem_word(z(), 3, &[(1, 2, 3), (2, 3, -1), (3, 1, 2)]);
        let data = SuslinData::new(&g, 1, 3).unwrap();
        let ginv = g.inverse().unwrap();
        for s in 1..=3 {
            assert_eq!(data.v(s), &ginv.column(1)[s - 1]);
            assert_eq!(data.w(s), &g.row(3)[s - 1]);
            assert_eq!(data.w_prime(s), &g.row(1)[s - 1]);
        }
        for (k, l) in data.pairs() {
            let expect = &(data.w(k) * data.w_prime(l)) - &(data.w(l) * data.w_prime(k));
            assert_eq!(data.c_at(k, l), &expect);
        }
    }

    #[test]
    fn rejects_non_special_linear_input() {
        let g = SqMatrix::from_i64_rows(z(), &[&[2, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        assert!(matches!(
            suslin_factorize(&g, 1, 2, &rv(z(), 1)),
            Err(Error::NotSpecialLinear { .. })
        ));
        let id = SqMatrix::identity(z(), 3);
        assert!(matches!(
            suslin_factorize(&id, 2, 2, &rv(z(), 1)),
            Err(Error::EqualIndices(2))
        ));
    }

    #[test]
    fn symbol_commutator_instances() {
        // x = y = z = 1 at (1, 2): the displayed 3x3 instance.
        let w = symbol_commutator_expr(&rv(z(), 1), &rv(z(), 1), &rv(z(), 1), 1, 2, 3).unwrap();
        assert_eq!(
            w.evaluate(3, z()).unwrap(),
            SqMatrix::from_i64_rows(z(), &[&[2, -1, 0], &[1, 0, 0], &[0, 0, 1]]).unwrap()
        );

        // Helper index avoids k and l.
        let w = symbol_commutator_expr(&rv(z(), 2), &rv(z(), 3), &rv(z(), 5), 2, 3, 4).unwrap();
        let s = SqMatrix::symbol(&rv(z(), 2), &rv(z(), 3), &rv(z(), 5)).unwrap();
        assert_eq!(
            w.evaluate(4, z()).unwrap(),
            SqMatrix::suspend(&s, 2, 3, 4).unwrap()
        );

        // z = 0 collapses to the identity word.
        assert!(symbol_commutator_expr(&rv(z(), 1), &rv(z(), 2), &rv(z(), 0), 1, 2, 3)
            .unwrap()
            .is_identity_word());

        assert!(matches!(
            symbol_commutator_expr(&rv(z(), 1), &rv(z(), 1), &rv(z(), 1), 1, 2, 2),
            Err(Error::DimensionTooSmall { .. })
        ));
    }

    #[test]
    fn symbol_commutator_is_e_disciplined_for_ideal_z() {
        let pi = Ideal::from_i64(z(), 5);
        let w = symbol_commutator_expr(&rv(z(), 2), &rv(z(), 3), &rv(z(), 5), 2, 3, 4).unwrap();
        assert!(check_discipline(&w, &Discipline::E(pi)).is_ok());
    }

    #[test]
    fn tits_symbol_instances() {
        let x = rv(z(), 1);
        let y = rv(z(), 1);
        let w = tits_symbol_expr(&x, &y, &rv(z(), 2), &rv(z(), 2), 1, 2, 3).unwrap();
        let s = SqMatrix::symbol(&x, &y, &rv(z(), 4)).unwrap();
        assert_eq!(
            w.evaluate(3, z()).unwrap(),
            SqMatrix::suspend(&s, 1, 2, 3).unwrap()
        );
        let pi = Ideal::from_i64(z(), 2);
        assert!(check_discipline(&w, &Discipline::CommF(pi.clone())).is_ok());
        assert!(check_discipline(&w, &Discipline::F(pi)).is_ok());
    }

    #[test]
    fn symbol_expr_in_f_instances() {
        let pi = Ideal::from_i64(z(), 3);
        let w = symbol_expr_in_f(&rv(z(), 1), &rv(z(), 2), &rv(z(), 9), 1, 2, 3, &pi).unwrap();
        let s = SqMatrix::symbol(&rv(z(), 1), &rv(z(), 2), &rv(z(), 9)).unwrap();
        assert_eq!(
            w.evaluate(3, z()).unwrap(),
            SqMatrix::suspend(&s, 1, 2, 3).unwrap()
        );
        assert!(check_discipline(&w, &Discipline::CommF(pi.clone())).is_ok());

        assert!(symbol_expr_in_f(&rv(z(), 1), &rv(z(), 2), &rv(z(), 0), 1, 2, 3, &pi)
            .unwrap()
            .is_identity_word());

        // z outside pi^2 is refused.
        assert!(matches!(
            symbol_expr_in_f(&rv(z(), 1), &rv(z(), 2), &rv(z(), 3), 1, 2, 3, &pi),
            Err(Error::NotInIdeal { .. })
        ));

        // Over Z/8 with pi = (2): z = 4 splits as 2 * 2.
        let spec = zm(8);
        let pi8 = Ideal::from_i64(spec, 2);
        let w = symbol_expr_in_f(&rv(spec, 3), &rv(spec, 5), &rv(spec, 4), 2, 1, 3, &pi8).unwrap();
        let s = SqMatrix::symbol(&rv(spec, 3), &rv(spec, 5), &rv(spec, 4)).unwrap();
        assert_eq!(
            w.evaluate(3, spec).unwrap(),
            SqMatrix::suspend(&s, 2, 1, 3).unwrap()
        );
        assert!(check_discipline(&w, &Discipline::CommF(pi8)).is_ok());
    }

    #[test]
    fn elem_expr_instances() {
        let pi = Ideal::from_i64(z(), 3);
        let w = elem_expr_in_comm_f(1, 3, &rv(z(), 9), 3, &pi).unwrap();
        // Helper is 2, split is 3 * 3.
        assert_eq!(
            w,
            GroupExpr::commutator(
                GroupExpr::elem(1, 2, rv(z(), 3)),
                GroupExpr::elem(2, 3, rv(z(), 3))
            )
        );
        assert_eq!(
            w.evaluate(3, z()).unwrap(),
            SqMatrix::elementary(z(), 3, 1, 3, rv(z(), 9)).unwrap()
        );

        let pi5 = Ideal::from_i64(z(), 5);
        let w = elem_expr_in_comm_f(3, 1, &rv(z(), 25), 4, &pi5).unwrap();
        assert_eq!(
            w.evaluate(4, z()).unwrap(),
            SqMatrix::elementary(z(), 4, 3, 1, rv(z(), 25)).unwrap()
        );
        assert!(check_discipline(&w, &Discipline::CommF(pi5)).is_ok());

        assert!(elem_expr_in_comm_f(1, 2, &rv(z(), 0), 3, &pi)
            .unwrap()
            .is_identity_word());
        assert!(elem_expr_in_comm_f(1, 2, &rv(z(), 3), 3, &pi).is_err());
    }

    #[test]
    fn reduce_symbol_direct_case() {
        let pi = Ideal::from_i64(z(), 3);
        let (x, y, zc) = (rv(z(), 1), rv(z(), 3), rv(z(), 3));
        let red = reduce_symbol_parts(&x, &y, &zc, 1, 2, 3, &pi).unwrap();
        assert!(!red.mirrored);
        assert_eq!(red.pair, (1, 2));
        assert_eq!(red.helper, 3);

        let target = SqMatrix::suspend(&SqMatrix::symbol(&x, &y, &zc).unwrap(), 1, 2, 3).unwrap();
        assert_eq!(
            target,
            SqMatrix::from_i64_rows(z(), &[&[10, -3, 0], &[27, -8, 0], &[0, 0, 1]]).unwrap()
        );
        let w = red.expr();
        assert_eq!(w.evaluate(3, z()).unwrap(), target);
        assert!(check_discipline(&w, &Discipline::F(pi)).is_ok());

        // The inner stage is the suspended S(1, x; -yz).
        let inner_value = red.inner_value(3).unwrap();
        assert_eq!(red.inner.evaluate(3, z()).unwrap(), inner_value);
        let lm = red.left.evaluate(3, z()).unwrap();
        let rm = red.right.evaluate(3, z()).unwrap();
        assert_eq!(lm.mul(&target).mul(&rm), inner_value);
    }

    #[test]
    fn reduce_symbol_mirrored_case() {
        let pi = Ideal::from_i64(z(), 3);
        let (x, y, zc) = (rv(z(), 3), rv(z(), 1), rv(z(), 3));
        let red = reduce_symbol_parts(&x, &y, &zc, 1, 2, 3, &pi).unwrap();
        assert!(red.mirrored);
        assert_eq!(red.pair, (2, 1));

        let target = SqMatrix::suspend(&SqMatrix::symbol(&x, &y, &zc).unwrap(), 1, 2, 3).unwrap();
        let w = red.expr();
        assert_eq!(w.evaluate(3, z()).unwrap(), target);
        assert!(check_discipline(&w, &Discipline::F(pi)).is_ok());
    }

    #[test]
    fn reduce_symbol_names_failing_parameter() {
        let pi = Ideal::from_i64(z(), 3);
        match reduce_symbol_parts(&rv(z(), 1), &rv(z(), 3), &rv(z(), 2), 1, 2, 3, &pi) {
            Err(Error::ParamNotInIdeal { param: "z", .. }) => {}
            other => panic!("expected z failure, got {other:?}"),
        }
        match reduce_symbol_parts(&rv(z(), 1), &rv(z(), 2), &rv(z(), 3), 1, 2, 3, &pi) {
            Err(Error::NeitherSymbolArgInIdeal { .. }) => {}
            other => panic!("expected x/y failure, got {other:?}"),
        }
    }

    #[test]
    fn reduce_symbol_zero_z_is_identity_word() {
        let pi = Ideal::from_i64(z(), 3);
        let w = reduce_symbol_expr(&rv(z(), 2), &rv(z(), 3), &rv(z(), 0), 1, 2, 3, &pi).unwrap();
        assert!(w.is_identity_word());
    }

    #[test]
    fn conjugate_in_f_identity_gives_single_letter() {
        let g = SqMatrix::identity(z(), 3);
        let pi = Ideal::from_i64(z(), 3);
        let (cert, counts) = conjugate_in_f_counted(&g, 1, 2, &rv(z(), 3), &pi).unwrap();
        assert_eq!(cert.witness, GroupExpr::elem(1, 2, rv(z(), 3)));
        assert_eq!(counts.degenerate, 1);
        cert.verify().unwrap();
    }

    #[test]
    fn conjugate_in_f_on_omega_member() {
        let g = SqMatrix::from_i64_rows(z(), &[&[2, 3, 0], &[3, 5, 0], &[0, 0, 1]]).unwrap();
        let pi = Ideal::from_i64(z(), 3);
        let (cert, counts) = conjugate_in_f_counted(&g, 1, 2, &rv(z(), 3), &pi).unwrap();
        cert.verify().unwrap();
        assert!(counts.direct + counts.mirrored + counts.degenerate > 0);
    }

    #[test]
    fn conjugate_in_f_preconditions() {
        let pi = Ideal::from_i64(z(), 3);
        let id = SqMatrix::identity(z(), 3);
        assert!(matches!(
            conjugate_in_f(&id, 1, 2, &rv(z(), 2), &pi),
            Err(Error::ParamNotInIdeal { param: "a", .. })
        ));
        let not_omega = SqMatrix::from_i64_rows(z(), &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        assert!(matches!(
            conjugate_in_f(&not_omega, 1, 2, &rv(z(), 3), &pi),
            Err(Error::NotInClass { .. })
        ));
        let id2 = SqMatrix::identity(z(), 2);
        assert!(matches!(
            conjugate_in_f(&id2, 1, 2, &rv(z(), 3), &pi),
            Err(Error::DimensionTooSmall { .. })
        ));
    }

    #[test]
    fn conjugate_in_e_on_general_sl() {
        let pi = Ideal::from_i64(z(), 2);
        let (_, g) = elem_word(z(), 3, &[(1, 2, 1), (2, 1, -1), (3, 1, 1)]);
        let cert = conjugate_in_e(&g, 1, 3, &rv(z(), 4), &pi).unwrap();
        cert.verify().unwrap();
        assert_eq!(cert.claim.discipline, Discipline::E(pi));
    }

    #[test]
    fn conjugate_in_e_identity_is_single_letter() {
        let g = SqMatrix::identity(z(), 4);
        let pi = Ideal::from_i64(z(), 2);
        let cert = conjugate_in_e(&g, 3, 2, &rv(z(), 6), &pi).unwrap();
        assert_eq!(cert.witness, GroupExpr::elem(3, 2, rv(z(), 6)));
        cert.verify().unwrap();
    }

    #[test]
    fn normal_generator_identity_conjugator() {
        let pi = Ideal::from_i64(z(), 4);
        let cert =
            normal_generator_in_f(&GroupExpr::identity(), 1, 2, &rv(z(), 16), &pi, 3).unwrap();
        cert.verify().unwrap();
        assert_eq!(
            cert.witness,
            elem_expr_in_comm_f(1, 2, &rv(z(), 16), 3, &pi).unwrap()
        );
    }

    #[test]
    fn normal_generator_with_general_conjugator() {
        let pi = Ideal::from_i64(z(), 2);
        let (c, _) = elem_word(z(), 3, &[(2, 1, 1), (1, 3, -2), (3, 2, 3)]);
        let cert = normal_generator_in_f(&c, 2, 3, &rv(z(), 4), &pi, 3).unwrap();
        cert.verify().unwrap();
        assert_eq!(cert.claim.discipline, Discipline::CommF(pi));
    }

    #[test]
    fn normal_generator_requires_square_ideal_coefficient() {
        let pi = Ideal::from_i64(z(), 2);
        assert!(matches!(
            normal_generator_in_f(&GroupExpr::identity(), 1, 2, &rv(z(), 2), &pi, 3),
            Err(Error::ParamNotInIdeal { param: "a", .. })
        ));
    }
}
