//! Exact arithmetic in the two supported coefficient rings, `Z` and `Z/m`,
//! together with principal ideals and their membership witnesses.
//!
//! Modular values are kept as canonical residues in `[0, m)`, so structural
//! equality of [`RingValue`]s coincides with ring equality. Ideal membership
//! over `Z/m` is decided by the extended gcd: `x` lies in `(N)` exactly when
//! `gcd(N, m)` divides `x`, and the returned witness `q` solves `N*q = x`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Which coefficient ring values live in.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum RingSpec {
    /// The ring of integers.
    Integers,
    /// The integers modulo `m`, with `m >= 2`.
    Modular(u64),
}

impl RingSpec {
    pub fn modular(m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidModulus(m));
        }
        Ok(RingSpec::Modular(m))
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            RingSpec::Integers => None,
            RingSpec::Modular(m) => Some(*m),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, RingSpec::Modular(_))
    }

    pub(crate) fn check_same(&self, other: &RingSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch(*self, *other))
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => write!(f, "Z"),
            RingSpec::Modular(m) => write!(f, "Z/{m}"),
        }
    }
}

impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Z" {
            return Ok(RingSpec::Integers);
        }
        if let Some(m) = s.strip_prefix("Z/") {
            let m: u64 = m
                .parse()
                .map_err(|_| Error::Parse(format!("invalid modulus in ring {s:?}")))?;
            return RingSpec::modular(m);
        }
        Err(Error::Parse(format!(
            "invalid ring {s:?}: expected \"Z\" or \"Z/<m>\""
        )))
    }
}

/// An element of one of the supported rings, stored canonically.
///
/// For `Z/m` the stored integer is the residue in `[0, m)`; for `Z` it is the
/// integer itself. Arithmetic between values of different rings panics, so
/// public entry points validate specs before computing.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RingValue {
    spec: RingSpec,
    value: BigInt,
}

impl RingValue {
    pub fn new(spec: RingSpec, value: BigInt) -> Self {
        let value = match spec {
            RingSpec::Integers => value,
            RingSpec::Modular(m) => value.mod_floor(&BigInt::from(m)),
        };
        RingValue { spec, value }
    }

    pub fn from_i64(spec: RingSpec, value: i64) -> Self {
        RingValue::new(spec, BigInt::from(value))
    }

    pub fn zero(spec: RingSpec) -> Self {
        RingValue::new(spec, BigInt::zero())
    }

    pub fn one(spec: RingSpec) -> Self {
        RingValue::new(spec, BigInt::one())
    }

    pub fn spec(&self) -> RingSpec {
        self.spec
    }

    /// The canonical representative (the value itself over `Z`).
    pub fn representative(&self) -> &BigInt {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.value.is_one()
    }

    pub fn parse(spec: RingSpec, s: &str) -> Result<Self> {
        let v = BigInt::from_str(s.trim())
            .map_err(|_| Error::Parse(format!("invalid integer {s:?}")))?;
        Ok(RingValue::new(spec, v))
    }

    fn binop(&self, rhs: &RingValue, f: impl FnOnce(&BigInt, &BigInt) -> BigInt) -> RingValue {
        assert_eq!(
            self.spec, rhs.spec,
            "ring mismatch in arithmetic: {} vs {}",
            self.spec, rhs.spec
        );
        RingValue::new(self.spec, f(&self.value, &rhs.value))
    }
}

impl fmt::Display for RingValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for &RingValue {
    type Output = RingValue;
    fn add(self, rhs: &RingValue) -> RingValue {
        self.binop(rhs, |a, b| a + b)
    }
}

impl Sub for &RingValue {
    type Output = RingValue;
    fn sub(self, rhs: &RingValue) -> RingValue {
        self.binop(rhs, |a, b| a - b)
    }
}

impl Mul for &RingValue {
    type Output = RingValue;
    fn mul(self, rhs: &RingValue) -> RingValue {
        self.binop(rhs, |a, b| a * b)
    }
}

impl Neg for &RingValue {
    type Output = RingValue;
    fn neg(self) -> RingValue {
        RingValue::new(self.spec, -&self.value)
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

/// A principal ideal `(N)` of the ambient ring, stored with a canonical
/// generator: `N >= 0` over `Z`, the canonical residue over `Z/m`. The zero
/// ideal is permitted.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Ideal {
    gen: RingValue,
}

impl Ideal {
    pub fn new(gen: RingValue) -> Self {
        let gen = match gen.spec {
            RingSpec::Integers => RingValue::new(gen.spec, gen.value.abs()),
            RingSpec::Modular(_) => gen,
        };
        Ideal { gen }
    }

    pub fn from_i64(spec: RingSpec, gen: i64) -> Self {
        Ideal::new(RingValue::from_i64(spec, gen))
    }

    pub fn spec(&self) -> RingSpec {
        self.gen.spec()
    }

    pub fn generator(&self) -> &RingValue {
        &self.gen
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gen.is_zero()
    }

    /// The ideal `(N^2)`, the square of this ideal.
    pub fn square(&self) -> Ideal {
        Ideal::new(&self.gen * &self.gen)
    }

    /// Parses `"(N)"` into an ideal of the given ring.
    pub fn parse(spec: RingSpec, s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("invalid ideal {s:?}: expected \"(N)\"")))?;
        Ok(Ideal::new(RingValue::parse(spec, inner)?))
    }

    /// Membership witness: `Some(q)` with `N*q = x` when `x` lies in the
    /// ideal, `None` otherwise. Over `Z/m` the witness is the smallest
    /// nonnegative solution of `N*q = x (mod m)`.
    pub fn witness(&self, x: &RingValue) -> Result<Option<RingValue>> {
        self.spec().check_same(&x.spec())?;
        let n = &self.gen.value;
        match self.spec() {
            RingSpec::Integers => {
                if n.is_zero() {
                    return Ok(x.value.is_zero().then(|| RingValue::zero(x.spec())));
                }
                if (&x.value % n).is_zero() {
                    Ok(Some(RingValue::new(x.spec(), &x.value / n)))
                } else {
                    Ok(None)
                }
            }
            RingSpec::Modular(m) => {
                let m = BigInt::from(m);
                let g = n.gcd(&m);
                if !(&x.value % &g).is_zero() {
                    return Ok(None);
                }
                let m1 = &m / &g;
                let n1 = (n / &g).mod_floor(&m1);
                let x1 = &x.value / &g;
                let inv = mod_inverse(&n1, &m1)
                    .ok_or(Error::InvariantViolation("gcd-reduced generator must be a unit"))?;
                let q = (x1 * inv).mod_floor(&m1);
                Ok(Some(RingValue::new(x.spec(), q)))
            }
        }
    }

    pub fn contains(&self, x: &RingValue) -> Result<bool> {
        Ok(self.witness(x)?.is_some())
    }

    /// The deterministic quotient of `z` by the generator; errors when `z`
    /// does not lie in the ideal.
    pub fn divide(&self, z: &RingValue) -> Result<RingValue> {
        self.witness(z)?.ok_or_else(|| Error::NotInIdeal {
            value: z.to_string(),
            ideal: self.to_string(),
            ring: self.spec().to_string(),
        })
    }

    pub fn congruent(&self, x: &RingValue, y: &RingValue) -> Result<bool> {
        x.spec().check_same(&y.spec())?;
        self.contains(&(x - y))
    }

    /// Splits `z` in the square of this ideal as `z = N*q` with `q` in the
    /// ideal. The smallest witness of `z` in `(N)` need not lie in `(N)`
    /// over `Z/m`, so the split divides by `(N^2)` first and multiplies back.
    pub fn split_square(&self, z: &RingValue) -> Result<(RingValue, RingValue)> {
        let t = self.square().divide(z)?;
        let q = &self.gen * &t;
        debug_assert!(matches!(self.contains(&q), Ok(true)));
        debug_assert_eq!(&(&self.gen * &q), z);
        Ok((self.gen.clone(), q))
    }

    /// The canonical representative of `x` modulo this ideal, usable as a
    /// hash key for congruence classes. Over `Z/m` congruence modulo `(N)`
    /// is congruence modulo `gcd(N, m)` of the representatives.
    pub fn canonical_residue(&self, x: &RingValue) -> BigInt {
        let n = &self.gen.value;
        match self.spec() {
            RingSpec::Integers => {
                if n.is_zero() {
                    x.value.clone()
                } else {
                    x.value.mod_floor(n)
                }
            }
            RingSpec::Modular(m) => {
                let g = n.gcd(&BigInt::from(m));
                x.value.mod_floor(&g)
            }
        }
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.gen)
    }
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
    fn parses_ring_specs() {
        assert_eq!("Z".parse::<RingSpec>().unwrap(), RingSpec::Integers);
        assert_eq!("Z/8".parse::<RingSpec>().unwrap(), RingSpec::Modular(8));
        assert!("Z/1".parse::<RingSpec>().is_err());
        assert!("Q".parse::<RingSpec>().is_err());
        assert!("Z/x".parse::<RingSpec>().is_err());
    }

    #[test]
    fn modular_values_are_canonical() {
        assert_eq!(rv(zm(4), -1), rv(zm(4), 3));
        assert_eq!(rv(zm(4), 6).representative(), &BigInt::from(2));
        assert_eq!(&rv(zm(4), 3) + &rv(zm(4), 3), rv(zm(4), 2));
        assert_eq!(&rv(zm(4), 2) * &rv(zm(4), 2), rv(zm(4), 0));
        assert_eq!(-&rv(zm(4), 1), rv(zm(4), 3));
    }

    #[test]
    fn integer_arithmetic_is_exact() {
        let big = RingValue::parse(z(), "123456789012345678901234567890").unwrap();
        let prod = &big * &big;
        assert_eq!(
            prod.to_string(),
            "15241578753238836750495351562536198787501905199875019052100"
        );
    }

    #[test]
    #[should_panic(expected = "ring mismatch")]
    fn cross_ring_arithmetic_panics() {
        let _ = &rv(z(), 1) + &rv(zm(4), 1);
    }

    #[test]
    fn ideal_generator_is_canonical() {
        assert_eq!(Ideal::from_i64(z(), -3), Ideal::from_i64(z(), 3));
        assert_eq!(Ideal::from_i64(zm(4), 6), Ideal::from_i64(zm(4), 2));
    }

    #[test]
    fn witness_over_z() {
        let i3 = Ideal::from_i64(z(), 3);
        assert_eq!(i3.witness(&rv(z(), 6)).unwrap(), Some(rv(z(), 2)));
        assert_eq!(i3.witness(&rv(z(), 0)).unwrap(), Some(rv(z(), 0)));
        assert_eq!(i3.witness(&rv(z(), 7)).unwrap(), None);
        assert_eq!(i3.witness(&rv(z(), -6)).unwrap(), Some(rv(z(), -2)));
    }

    #[test]
    fn witness_over_zero_ideal() {
        let i0 = Ideal::from_i64(z(), 0);
        assert_eq!(i0.witness(&rv(z(), 0)).unwrap(), Some(rv(z(), 0)));
        assert_eq!(i0.witness(&rv(z(), 5)).unwrap(), None);

        let j0 = Ideal::from_i64(zm(6), 0);
        assert_eq!(j0.witness(&rv(zm(6), 0)).unwrap(), Some(rv(zm(6), 0)));
        assert_eq!(j0.witness(&rv(zm(6), 3)).unwrap(), None);
    }

    // Oracle: exhaustive check of N*q mod m over all residues q.
    fn modular_witness_oracle(m: u64, n: i64, x: i64) -> Option<u64> {
        (0..m).find(|q| (n as i128 * *q as i128).rem_euclid(m as i128) == (x as i128).rem_euclid(m as i128))
    }

    #[test]
    fn modular_witness_matches_exhaustive_oracle() {
        for m in 2..=16u64 {
            let spec = zm(m);
            for n in 0..m as i64 {
                let ideal = Ideal::from_i64(spec, n);
                for x in 0..m as i64 {
                    let got = ideal.witness(&rv(spec, x)).unwrap();
                    let expect = modular_witness_oracle(m, n, x);
                    match (got, expect) {
                        (None, None) => {}
                        (Some(q), Some(q0)) => {
                            // Smallest nonnegative solution.
                            assert_eq!(q.representative(), &BigInt::from(q0), "m={m} n={n} x={x}");
                        }
                        (got, expect) => panic!("m={m} n={n} x={x}: {got:?} vs {expect:?}"),
                    }
                }
            }
        }
    }

    #[test]
    fn divide_examples() {
        assert_eq!(
            Ideal::from_i64(z(), 3).divide(&rv(z(), 18)).unwrap(),
            rv(z(), 6)
        );
        assert_eq!(
            Ideal::from_i64(zm(9), 3).divide(&rv(zm(9), 6)).unwrap(),
            rv(zm(9), 2)
        );
        assert_eq!(
            Ideal::from_i64(zm(4), 2).divide(&rv(zm(4), 2)).unwrap(),
            rv(zm(4), 1)
        );
        assert!(Ideal::from_i64(zm(4), 2).divide(&rv(zm(4), 1)).is_err());
    }

    #[test]
    fn congruence_examples() {
        let spec = z();
        assert!(Ideal::from_i64(spec, 2)
            .congruent(&rv(spec, 5), &rv(spec, 1))
            .unwrap());
        assert!(Ideal::from_i64(spec, 4)
            .congruent(&rv(spec, 5), &rv(spec, 1))
            .unwrap());
        assert!(!Ideal::from_i64(spec, 3)
            .congruent(&rv(spec, 5), &rv(spec, 1))
            .unwrap());
        assert!(Ideal::from_i64(zm(9), 3)
            .congruent(&rv(zm(9), 3), &rv(zm(9), 0))
            .unwrap());
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let e = Ideal::from_i64(z(), 2).contains(&rv(zm(4), 2));
        assert!(matches!(e, Err(Error::RingMismatch(_, _))));
    }

    #[test]
    fn square_ideal() {
        assert_eq!(Ideal::from_i64(z(), 3).square(), Ideal::from_i64(z(), 9));
        // (2)^2 over Z/4 is the zero ideal.
        assert_eq!(Ideal::from_i64(zm(4), 2).square(), Ideal::from_i64(zm(4), 0));
    }

    #[test]
    fn split_square_lands_in_ideal() {
        // Spec case: over Z/8 with pi = (2), z = 4 splits as 2 * 2.
        let pi = Ideal::from_i64(zm(8), 2);
        let (n, q) = pi.split_square(&rv(zm(8), 4)).unwrap();
        assert_eq!(n, rv(zm(8), 2));
        assert_eq!(q, rv(zm(8), 2));

        // The naive smallest witness fails here: 4*1 = 4 (mod 12) but 1 is
        // not in (4); the square-split witness 4 is.
        let pi = Ideal::from_i64(zm(12), 4);
        let z4 = rv(zm(12), 4);
        assert_eq!(pi.divide(&z4).unwrap(), rv(zm(12), 1));
        let (n, q) = pi.split_square(&z4).unwrap();
        assert!(pi.contains(&q).unwrap());
        assert_eq!(&(&n * &q), &z4);

        // Exhaustive: every element of pi^2 splits with q in pi.
        for m in 2..=16u64 {
            for ngen in 0..m as i64 {
                let pi = Ideal::from_i64(zm(m), ngen);
                let pi2 = pi.square();
                for x in 0..m as i64 {
                    let xv = rv(zm(m), x);
                    if pi2.contains(&xv).unwrap() {
                        let (n, q) = pi.split_square(&xv).unwrap();
                        assert!(pi.contains(&q).unwrap(), "m={m} N={ngen} x={x}");
                        assert_eq!(&n * &q, xv);
                    } else {
                        assert!(pi.split_square(&xv).is_err());
                    }
                }
            }
        }
    }

    #[test]
    fn canonical_residues_classify_congruence() {
        for m in [4u64, 9, 12] {
            let spec = zm(m);
            for ngen in 0..m as i64 {
                let ideal = Ideal::from_i64(spec, ngen);
                for x in 0..m as i64 {
                    for y in 0..m as i64 {
                        let same = ideal.congruent(&rv(spec, x), &rv(spec, y)).unwrap();
                        let keys_eq = ideal.canonical_residue(&rv(spec, x))
                            == ideal.canonical_residue(&rv(spec, y));
                        assert_eq!(same, keys_eq, "m={m} N={ngen} x={x} y={y}");
                    }
                }
            }
        }
    }

    #[test]
    fn ideal_parsing() {
        assert_eq!(
            Ideal::parse(z(), "(3)").unwrap(),
            Ideal::from_i64(z(), 3)
        );
        assert_eq!(
            Ideal::parse(zm(8), " (10) ").unwrap(),
            Ideal::from_i64(zm(8), 2)
        );
        assert!(Ideal::parse(z(), "3").is_err());
        assert!(Ideal::parse(z(), "()").is_err());
    }
}
