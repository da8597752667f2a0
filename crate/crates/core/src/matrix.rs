//! Exact square matrices over the supported rings, the generators used
//! throughout (elementary matrices, 2x2 symbols, suspensions), and the
//! congruence classes Gamma, Delta, Omega cut out by a principal ideal.
//!
//! Indices are 1-based in every public signature. Determinants are computed
//! on an integer lift (cofactor expansion up to 4x4, fraction-free Bareiss
//! elimination above) and reduced back, so zero divisors in `Z/m` never
//! force a division.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ring::{Ideal, RingSpec, RingValue};

/// A dense n-by-n matrix with entries in a single ring, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SqMatrix {
    spec: RingSpec,
    n: usize,
    entries: Vec<RingValue>,
}

impl SqMatrix {
    pub fn identity(spec: RingSpec, n: usize) -> Self {
        let mut entries = vec![RingValue::zero(spec); n * n];
        for i in 0..n {
            entries[i * n + i] = RingValue::one(spec);
        }
        SqMatrix { spec, n, entries }
    }

    pub fn from_rows(spec: RingSpec, rows: Vec<Vec<RingValue>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            for v in row {
                spec.check_same(&v.spec())?;
                entries.push(v);
            }
        }
        Ok(SqMatrix { spec, n, entries })
    }

    pub fn from_i64_rows(spec: RingSpec, rows: &[&[i64]]) -> Result<Self> {
        SqMatrix::from_rows(
            spec,
            rows.iter()
                .map(|r| r.iter().map(|&v| RingValue::from_i64(spec, v)).collect())
                .collect(),
        )
    }

    pub fn spec(&self) -> RingSpec {
        self.spec
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry at row `i`, column `j`, both 1-based.
    pub fn entry(&self, i: usize, j: usize) -> &RingValue {
        assert!(i >= 1 && i <= self.n && j >= 1 && j <= self.n);
        &self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, v: RingValue) {
        assert!(i >= 1 && i <= self.n && j >= 1 && j <= self.n);
        assert_eq!(self.spec, v.spec());
        self.entries[(i - 1) * self.n + (j - 1)] = v;
    }

    pub fn row(&self, i: usize) -> Vec<RingValue> {
        (1..=self.n).map(|j| self.entry(i, j).clone()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<RingValue> {
        (1..=self.n).map(|i| self.entry(i, j).clone()).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == SqMatrix::identity(self.spec, self.n)
    }

    pub fn mul(&self, rhs: &SqMatrix) -> SqMatrix {
        assert_eq!(self.spec, rhs.spec, "ring mismatch in matrix product");
        assert_eq!(self.n, rhs.n, "dimension mismatch in matrix product");
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = RingValue::zero(self.spec);
                for k in 0..n {
                    acc = &acc + &(&self.entries[i * n + k] * &rhs.entries[k * n + j]);
                }
                entries.push(acc);
            }
        }
        SqMatrix {
            spec: self.spec,
            n,
            entries,
        }
    }

    /// The elementary matrix `e_ij(a)`: identity plus `a` at `(i, j)`.
    pub fn elementary(spec: RingSpec, n: usize, i: usize, j: usize, a: RingValue) -> Result<Self> {
        check_index(i, n)?;
        check_index(j, n)?;
        if i == j {
            return Err(Error::EqualIndices(i));
        }
        spec.check_same(&a.spec())?;
        let mut m = SqMatrix::identity(spec, n);
        m.set_entry(i, j, a);
        Ok(m)
    }

    /// The 2x2 symbol `S(x, y; z) = [[1+xyz, -x^2 z], [y^2 z, 1-xyz]]`.
    pub fn symbol(x: &RingValue, y: &RingValue, z: &RingValue) -> Result<Self> {
        let spec = x.spec();
        spec.check_same(&y.spec())?;
        spec.check_same(&z.spec())?;
        let one = RingValue::one(spec);
        let xyz = &(x * y) * z;
        let rows = vec![
            vec![&one + &xyz, -&(&(x * x) * z)],
            vec![&(y * y) * z, &one - &xyz],
        ];
        SqMatrix::from_rows(spec, rows)
    }

    /// Grafts a 2x2 matrix of determinant 1 into the identity at the ordered
    /// pair of rows/columns `(p, q)`.
    pub fn suspend(m2: &SqMatrix, p: usize, q: usize, n: usize) -> Result<Self> {
        if m2.n != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: m2.n,
            });
        }
        check_index(p, n)?;
        check_index(q, n)?;
        if p == q {
            return Err(Error::EqualIndices(p));
        }
        let det = m2.det();
        if !det.is_one() {
            return Err(Error::NotSpecialLinear {
                det: det.to_string(),
            });
        }
        let mut m = SqMatrix::identity(m2.spec, n);
        m.set_entry(p, p, m2.entry(1, 1).clone());
        m.set_entry(p, q, m2.entry(1, 2).clone());
        m.set_entry(q, p, m2.entry(2, 1).clone());
        m.set_entry(q, q, m2.entry(2, 2).clone());
        Ok(m)
    }

    /// Exact determinant.
    pub fn det(&self) -> RingValue {
        let lift: Vec<BigInt> = self
            .entries
            .iter()
            .map(|v| v.representative().clone())
            .collect();
        RingValue::new(self.spec, int_det(lift, self.n))
    }

    /// Inverse by the adjugate; requires determinant 1.
    pub fn inverse(&self) -> Result<SqMatrix> {
        let det = self.det();
        if !det.is_one() {
            return Err(Error::NotSpecialLinear {
                det: det.to_string(),
            });
        }
        let n = self.n;
        if n == 1 {
            return Ok(self.clone());
        }
        let lift: Vec<BigInt> = self
            .entries
            .iter()
            .map(|v| v.representative().clone())
            .collect();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                // Adjugate entry (i, j) is the (j, i) cofactor.
                let minor = int_minor(&lift, n, j, i);
                let mut c = int_det(minor, n - 1);
                if (i + j) % 2 == 1 {
                    c = -c;
                }
                entries.push(RingValue::new(self.spec, c));
            }
        }
        Ok(SqMatrix {
            spec: self.spec,
            n,
            entries,
        })
    }
}

impl fmt::Display for SqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 1..=self.n {
            if i > 1 {
                write!(f, "; ")?;
            }
            for j in 1..=self.n {
                if j > 1 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.entry(i, j))?;
            }
        }
        write!(f, "]")
    }
}

pub(crate) fn check_index(i: usize, n: usize) -> Result<()> {
    if i >= 1 && i <= n {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { index: i, n })
    }
}

fn int_minor(entries: &[BigInt], n: usize, drop_row: usize, drop_col: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity((n - 1) * (n - 1));
    for r in 0..n {
        if r == drop_row {
            continue;
        }
        for c in 0..n {
            if c == drop_col {
                continue;
            }
            out.push(entries[r * n + c].clone());
        }
    }
    out
}

fn int_det(entries: Vec<BigInt>, n: usize) -> BigInt {
    match n {
        0 => BigInt::one(),
        1 => entries[0].clone(),
        2 => &entries[0] * &entries[3] - &entries[1] * &entries[2],
        3 | 4 => cofactor_det(&entries, n),
        _ => bareiss_det(entries, n),
    }
}

fn cofactor_det(entries: &[BigInt], n: usize) -> BigInt {
    if n == 2 {
        return &entries[0] * &entries[3] - &entries[1] * &entries[2];
    }
    let mut acc = BigInt::zero();
    for c in 0..n {
        if entries[c].is_zero() {
            continue;
        }
        let minor = int_minor(entries, n, 0, c);
        let term = &entries[c] * cofactor_det(&minor, n - 1);
        if c % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Fraction-free Gaussian elimination; every division is exact over `Z`.
fn bareiss_det(mut a: Vec<BigInt>, n: usize) -> BigInt {
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            match (k + 1..n).find(|&r| !a[r * n + k].is_zero()) {
                Some(r) => {
                    for c in 0..n {
                        a.swap(k * n + c, r * n + c);
                    }
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                a[i * n + j] = num / &prev;
            }
            a[i * n + k] = BigInt::zero();
        }
        prev = a[k * n + k].clone();
    }
    let d = a[(n - 1) * n + (n - 1)].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// The three congruence conditions modulo a principal ideal `pi`:
/// `Gamma` is `g = 1 (mod pi)`, `Delta` additionally demands diagonal
/// entries `= 1 (mod pi^2)`, and `Omega` demands `g` diagonal mod `pi`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ClassKind {
    Gamma,
    Delta,
    Omega,
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassKind::Gamma => write!(f, "Gamma"),
            ClassKind::Delta => write!(f, "Delta"),
            ClassKind::Omega => write!(f, "Omega"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CongruenceClass {
    kind: ClassKind,
    ideal: Ideal,
    n: usize,
}

impl CongruenceClass {
    pub fn new(kind: ClassKind, ideal: Ideal, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::DimensionTooSmall {
                what: "congruence classes",
                required: 2,
                found: n,
            });
        }
        Ok(CongruenceClass { kind, ideal, n })
    }

    pub fn gamma(ideal: Ideal, n: usize) -> Result<Self> {
        CongruenceClass::new(ClassKind::Gamma, ideal, n)
    }

    pub fn delta(ideal: Ideal, n: usize) -> Result<Self> {
        CongruenceClass::new(ClassKind::Delta, ideal, n)
    }

    pub fn omega(ideal: Ideal, n: usize) -> Result<Self> {
        CongruenceClass::new(ClassKind::Omega, ideal, n)
    }

    pub fn kind(&self) -> ClassKind {
        self.kind
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

impl fmt::Display for CongruenceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}({})", self.kind, self.n, self.ideal)
    }
}

/// Membership of a determinant-1 matrix in a congruence class. A matrix of
/// other determinant is an error, not a `false`: the classes are subgroups
/// of SL_n.
pub fn in_class(g: &SqMatrix, class: &CongruenceClass) -> Result<bool> {
    g.spec().check_same(&class.ideal.spec())?;
    if g.n() != class.n {
        return Err(Error::DimensionMismatch {
            expected: class.n,
            found: g.n(),
        });
    }
    let det = g.det();
    if !det.is_one() {
        return Err(Error::NotSpecialLinear {
            det: det.to_string(),
        });
    }
    let pi = &class.ideal;
    let one = RingValue::one(g.spec());
    for i in 1..=g.n() {
        for j in 1..=g.n() {
            let e = g.entry(i, j);
            let ok = match (class.kind, i == j) {
                (_, false) => pi.contains(e)?,
                (ClassKind::Gamma, true) => pi.congruent(e, &one)?,
                (ClassKind::Delta, true) => pi.square().congruent(e, &one)?,
                (ClassKind::Omega, true) => true,
            };
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> RingSpec {
        RingSpec::Integers
    }

    fn zm(m: u64) -> RingSpec {
        RingSpec::Modular(m)
    }

    fn rv(spec: RingSpec, v: i64) -> RingValue {
        RingValue::from_i64(spec, v)
    }

    #[test]
    fn elementary_examples() {
        let e = SqMatrix::elementary(z(), 3, 1, 2, rv(z(), 5)).unwrap();
        assert_eq!(
            e,
            SqMatrix::from_i64_rows(z(), &[&[1, 5, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap()
        );
        assert!(matches!(
            SqMatrix::elementary(z(), 3, 2, 2, rv(z(), 1)),
            Err(Error::EqualIndices(2))
        ));
        assert!(matches!(
            SqMatrix::elementary(z(), 3, 4, 1, rv(z(), 1)),
            Err(Error::IndexOutOfRange { index: 4, n: 3 })
        ));
        assert!(SqMatrix::elementary(z(), 3, 1, 2, rv(zm(4), 1)).is_err());
    }

    #[test]
    fn symbol_examples() {
        let s = SqMatrix::symbol(&rv(z(), 1), &rv(z(), 1), &rv(z(), 1)).unwrap();
        assert_eq!(
            s,
            SqMatrix::from_i64_rows(z(), &[&[2, -1], &[1, 0]]).unwrap()
        );
        let id = SqMatrix::symbol(&rv(z(), 3), &rv(z(), 5), &rv(z(), 0)).unwrap();
        assert!(id.is_identity());
    }

    #[test]
    fn symbol_det_is_one() {
        for x in -4..=4 {
            for y in -4..=4 {
                for zc in -4..=4 {
                    let s = SqMatrix::symbol(&rv(z(), x), &rv(z(), y), &rv(z(), zc)).unwrap();
                    assert!(s.det().is_one(), "x={x} y={y} z={zc}");
                }
            }
        }
    }

    #[test]
    fn symbol_additivity() {
        // S(x, y; z + z') = S(x, y; z) * S(x, y; z')
        for (x, y, za, zb) in [(1i64, 2i64, 3i64, 4i64), (-2, 5, 1, -7), (3, 0, 2, 2)] {
            let x = rv(z(), x);
            let y = rv(z(), y);
            let sum = SqMatrix::symbol(&x, &y, &rv(z(), za + zb)).unwrap();
            let prod = SqMatrix::symbol(&x, &y, &rv(z(), za))
                .unwrap()
                .mul(&SqMatrix::symbol(&x, &y, &rv(z(), zb)).unwrap());
            assert_eq!(sum, prod);
        }
    }

    #[test]
    fn suspend_examples() {
        let s = SqMatrix::symbol(&rv(z(), 1), &rv(z(), 1), &rv(z(), 1)).unwrap();
        let m = SqMatrix::suspend(&s, 1, 2, 3).unwrap();
        assert_eq!(
            m,
            SqMatrix::from_i64_rows(z(), &[&[2, -1, 0], &[1, 0, 0], &[0, 0, 1]]).unwrap()
        );

        let id2 = SqMatrix::identity(z(), 2);
        assert!(SqMatrix::suspend(&id2, 2, 4, 5).unwrap().is_identity());

        // Swap identity: suspending S(x, y; z) at (k, l) equals suspending
        // S(y, x; -z) at (l, k).
        let a = SqMatrix::symbol(&rv(z(), 2), &rv(z(), 3), &rv(z(), 1)).unwrap();
        let b = SqMatrix::symbol(&rv(z(), 3), &rv(z(), 2), &rv(z(), -1)).unwrap();
        assert_eq!(
            SqMatrix::suspend(&a, 1, 2, 3).unwrap(),
            SqMatrix::suspend(&b, 2, 1, 3).unwrap()
        );

        let shear = SqMatrix::from_i64_rows(z(), &[&[1, 1], &[1, 2]]).unwrap();
        assert_eq!(
            SqMatrix::suspend(&shear, 3, 1, 3).unwrap(),
            SqMatrix::from_i64_rows(z(), &[&[2, 0, 1], &[0, 1, 0], &[1, 0, 1]]).unwrap()
        );

        let not_sl = SqMatrix::from_i64_rows(z(), &[&[2, 0], &[0, 1]]).unwrap();
        assert!(SqMatrix::suspend(&not_sl, 1, 2, 3).is_err());
    }

    #[test]
    fn det_and_inverse_of_elementary_products() {
        let a = SqMatrix::elementary(z(), 3, 1, 2, rv(z(), 7)).unwrap();
        let b = SqMatrix::elementary(z(), 3, 3, 1, rv(z(), -2)).unwrap();
        let g = a.mul(&b);
        assert!(g.det().is_one());
        let inv = g.inverse().unwrap();
        assert!(g.mul(&inv).is_identity());
        assert!(inv.mul(&g).is_identity());
    }

    #[test]
    fn det_matches_between_cofactor_and_bareiss() {
        // A 5x5 goes through Bareiss; check against the product rule and a
        // known diagonal determinant.
        let mut g = SqMatrix::identity(z(), 5);
        for (i, j, a) in [(1, 2, 3i64), (2, 5, -4), (5, 1, 2), (3, 4, 9), (4, 3, -1)] {
            g = g.mul(&SqMatrix::elementary(z(), 5, i, j, rv(z(), a)).unwrap());
        }
        assert!(g.det().is_one());

        let mut d = SqMatrix::identity(z(), 5);
        d.set_entry(2, 2, rv(z(), -3));
        d.set_entry(4, 4, rv(z(), 2));
        assert_eq!(g.mul(&d).det(), rv(z(), -6));
    }

    #[test]
    fn modular_det_reduces_the_integer_lift() {
        let g = SqMatrix::from_i64_rows(zm(12), &[&[5, 2, 0], &[2, 5, 0], &[0, 0, 1]]).unwrap();
        // Integer det 21 reduces to 9 mod 12.
        assert_eq!(g.det(), rv(zm(12), 9));
    }

    #[test]
    fn modular_inverse_roundtrip() {
        let g = SqMatrix::from_i64_rows(zm(8), &[&[3, 2], &[4, 3]]).unwrap();
        assert!(g.det().is_one());
        let inv = g.inverse().unwrap();
        assert!(g.mul(&inv).is_identity());
    }

    #[test]
    fn inverse_requires_det_one() {
        let g = SqMatrix::from_i64_rows(z(), &[&[2, 0], &[0, 1]]).unwrap();
        assert!(matches!(g.inverse(), Err(Error::NotSpecialLinear { .. })));
    }

    #[test]
    fn class_membership_examples() {
        let id = SqMatrix::identity(z(), 3);
        for kind in [ClassKind::Gamma, ClassKind::Delta, ClassKind::Omega] {
            let class = CongruenceClass::new(kind, Ideal::from_i64(z(), 3), 3).unwrap();
            assert!(in_class(&id, &class).unwrap());
        }

        // omega = [[1+N^2, -N^2], [N^2, 1-N^2]] lies in Delta_2((N)).
        let n = 4i64;
        let omega = SqMatrix::from_i64_rows(
            z(),
            &[&[1 + n * n, -n * n], &[n * n, 1 - n * n]],
        )
        .unwrap();
        let delta = CongruenceClass::delta(Ideal::from_i64(z(), n), 2).unwrap();
        assert!(in_class(&omega, &delta).unwrap());

        // Diagonal mod 3 but not congruent to 1: in Omega, not in Gamma.
        let g = SqMatrix::from_i64_rows(z(), &[&[2, 3, 0], &[3, 5, 0], &[0, 0, 1]]).unwrap();
        let pi = Ideal::from_i64(z(), 3);
        assert!(in_class(&g, &CongruenceClass::omega(pi.clone(), 3).unwrap()).unwrap());
        assert!(!in_class(&g, &CongruenceClass::gamma(pi.clone(), 3).unwrap()).unwrap());

        let not_sl = SqMatrix::from_i64_rows(z(), &[&[2, 0], &[0, 1]]).unwrap();
        let class = CongruenceClass::gamma(Ideal::from_i64(z(), 2), 2).unwrap();
        assert!(matches!(
            in_class(&not_sl, &class),
            Err(Error::NotSpecialLinear { .. })
        ));
    }

    #[test]
    fn delta_requires_square_ideal_on_diagonal() {
        // Diagonal 1+N is in Gamma but not Delta for pi = (N).
        let g = SqMatrix::from_i64_rows(z(), &[&[4, 3], &[9, 7]]).unwrap();
        assert!(g.det().is_one());
        let pi = Ideal::from_i64(z(), 3);
        assert!(in_class(&g, &CongruenceClass::gamma(pi.clone(), 2).unwrap()).unwrap());
        assert!(!in_class(&g, &CongruenceClass::delta(pi, 2).unwrap()).unwrap());
    }

    #[test]
    fn class_requires_matching_ring_and_size() {
        let id = SqMatrix::identity(z(), 3);
        let wrong_ring = CongruenceClass::gamma(Ideal::from_i64(zm(4), 2), 3).unwrap();
        assert!(in_class(&id, &wrong_ring).is_err());
        let wrong_n = CongruenceClass::gamma(Ideal::from_i64(z(), 2), 4).unwrap();
        assert!(in_class(&id, &wrong_n).is_err());
        assert!(CongruenceClass::gamma(Ideal::from_i64(z(), 2), 1).is_err());
    }
}
