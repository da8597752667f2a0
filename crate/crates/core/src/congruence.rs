//! The reduction homomorphism on the principal congruence subgroup, its
//! section by elementary words, approximation of congruence elements by
//! elementary ones, and exhaustive order counts over finite rings.
//!
//! For `g` in `Gamma_n(pi)` the matrix `g - 1` has entries in `pi` and, since
//! `det g = 1`, trace in `pi^2`. Read mod `pi^2`, the assignment
//! `r(g) = g - 1` is a group homomorphism onto the additive group of
//! trace-zero matrices over `pi/pi^2`, with kernel `Gamma_n(pi^2)`.

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::matrix::{check_index, in_class, CongruenceClass, SqMatrix};
use crate::ring::{Ideal, RingSpec, RingValue};
use crate::word::GroupExpr;

/// A trace-zero matrix over `pi/pi^2`, stored through representatives with
/// entries in `pi`. Equality is congruence of entries modulo `pi^2`.
#[derive(Clone, Debug)]
pub struct SlResidueMatrix {
    ideal: Ideal,
    n: usize,
    entries: Vec<RingValue>,
}

impl SlResidueMatrix {
    pub fn new(ideal: Ideal, n: usize, entries: Vec<Vec<RingValue>>) -> Result<Self> {
        if n < 2 {
            return Err(Error::DimensionTooSmall {
                what: "residue matrix",
                required: 2,
                found: n,
            });
        }
        if entries.len() != n || entries.iter().any(|row| row.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: entries.iter().map(|r| r.len()).max().unwrap_or(entries.len()),
            });
        }
        let spec = ideal.spec();
        let mut flat = Vec::with_capacity(n * n);
        for row in entries {
            for e in row {
                spec.check_same(&e.spec())?;
                if !ideal.contains(&e)? {
                    return Err(Error::NotInIdeal {
                        value: e.to_string(),
                        ideal: ideal.to_string(),
                        ring: spec.to_string(),
                    });
                }
                flat.push(e);
            }
        }
        let mut trace = RingValue::zero(spec);
        for i in 0..n {
            trace = &trace + &flat[i * n + i];
        }
        if !ideal.square().contains(&trace)? {
            return Err(Error::NonzeroTrace {
                trace: trace.to_string(),
            });
        }
        Ok(SlResidueMatrix {
            ideal,
            n,
            entries: flat,
        })
    }

    pub fn zero(ideal: Ideal, n: usize) -> Result<Self> {
        let spec = ideal.spec();
        SlResidueMatrix::new(ideal, n, vec![vec![RingValue::zero(spec); n]; n])
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn spec(&self) -> RingSpec {
        self.ideal.spec()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The stored representative at 1-based `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> &RingValue {
        assert!(1 <= i && i <= self.n && 1 <= j && j <= self.n);
        &self.entries[(i - 1) * self.n + (j - 1)]
    }

    /// Canonical residues of all entries modulo `pi^2`, row by row.
    pub fn canonical_entries(&self) -> Vec<Vec<BigInt>> {
        let pi2 = self.ideal.square();
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| pi2.canonical_residue(&self.entries[i * self.n + j]))
                    .collect()
            })
            .collect()
    }

    /// Entrywise sum; `r` is additive on `Gamma_n(pi)`.
    pub fn add(&self, other: &SlResidueMatrix) -> Result<SlResidueMatrix> {
        self.spec().check_same(&other.spec())?;
        if self.ideal != other.ideal || self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let entries = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| self.entry(i + 1, j + 1) + other.entry(i + 1, j + 1))
                    .collect()
            })
            .collect();
        SlResidueMatrix::new(self.ideal.clone(), self.n, entries)
    }
}

impl PartialEq for SlResidueMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.ideal == other.ideal
            && self.n == other.n
            && self.canonical_entries() == other.canonical_entries()
    }
}

impl Eq for SlResidueMatrix {}

/// The reduction `r(g) = g - 1` of a member of `Gamma_n(pi)`.
pub fn reduce_r(g: &SqMatrix, pi: &Ideal) -> Result<SlResidueMatrix> {
    g.spec().check_same(&pi.spec())?;
    let gamma = CongruenceClass::gamma(pi.clone(), g.n())?;
    if !in_class(g, &gamma)? {
        return Err(Error::NotInClass {
            class: gamma.to_string(),
        });
    }
    let one = RingValue::one(g.spec());
    let entries = (1..=g.n())
        .map(|i| {
            (1..=g.n())
                .map(|j| {
                    if i == j {
                        g.entry(i, j) - &one
                    } else {
                        g.entry(i, j).clone()
                    }
                })
                .collect()
        })
        .collect();
    SlResidueMatrix::new(pi.clone(), g.n(), entries)
}

/// A word in `E(pi)` discipline whose value reduces to the given residue
/// matrix; returns the value and the word.
///
/// Diagonal entries are produced by conjugated elementary blocks
/// `e_{i,i+1}(-1)^-1 e_{i+1,i}(s_i) e_{i,i+1}(-1)` carrying partial sums
/// `s_i = d_1 + ... + d_i` of the target diagonal; the zero trace disposes of
/// the last diagonal position. Off-diagonal entries are then matched by
/// single elementary letters.
pub fn preimage_r(x: &SlResidueMatrix, pi: &Ideal, n: usize) -> Result<(SqMatrix, GroupExpr)> {
    pi.spec().check_same(&x.spec())?;
    if pi != x.ideal() {
        return Err(Error::IdealMismatch {
            expected: x.ideal().to_string(),
            found: pi.to_string(),
        });
    }
    if n != x.n() {
        return Err(Error::DimensionMismatch {
            expected: x.n(),
            found: n,
        });
    }
    let spec = x.spec();

    let mut parts = Vec::new();
    let mut partial = RingValue::zero(spec);
    for i in 1..n {
        partial = &partial + x.entry(i, i);
        parts.push(GroupExpr::conjugation(
            GroupExpr::elem(i, i + 1, RingValue::from_i64(spec, -1)),
            GroupExpr::elem(i + 1, i, partial.clone()),
        ));
    }
    let g0 = GroupExpr::product(parts.clone()).evaluate(n, spec)?;
    for p in 1..=n {
        for q in 1..=n {
            if p == q {
                continue;
            }
            let b = x.entry(p, q) - g0.entry(p, q);
            parts.push(GroupExpr::elem(p, q, b));
        }
    }
    let word = GroupExpr::product(parts);
    let g = word.evaluate(n, spec)?;
    if &reduce_r(&g, pi)? != x {
        return Err(Error::InvariantViolation(
            "preimage must reduce back to its input",
        ));
    }
    Ok((g, word))
}

/// Which congruence class an approximation starts from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ApproxClass {
    Gamma,
    Delta,
}

/// Approximates `g` by a disciplined elementary word: returns `(w, gamma)`
/// with `g = eval(w) * gamma` and `gamma` in `Gamma_n(pi^2)`.
///
/// From `Delta_n(pi)` the word uses one `F(pi)` letter per off-diagonal
/// entry; from `Gamma_n(pi)` it is the `E(pi)` word of [`preimage_r`].
pub fn approximate_by_elementary(
    g: &SqMatrix,
    class: ApproxClass,
    pi: &Ideal,
) -> Result<(GroupExpr, SqMatrix)> {
    g.spec().check_same(&pi.spec())?;
    let n = g.n();
    let word = match class {
        ApproxClass::Delta => {
            let delta = CongruenceClass::delta(pi.clone(), n)?;
            if !in_class(g, &delta)? {
                return Err(Error::NotInClass {
                    class: delta.to_string(),
                });
            }
            let mut letters = Vec::new();
            for p in 1..=n {
                for q in 1..=n {
                    if p != q {
                        letters.push(GroupExpr::elem(p, q, g.entry(p, q).clone()));
                    }
                }
            }
            GroupExpr::product(letters)
        }
        ApproxClass::Gamma => preimage_r(&reduce_r(g, pi)?, pi, n)?.1,
    };
    let value = word.evaluate(n, g.spec())?;
    let gamma = value.inverse()?.mul(g);
    let gamma_class = CongruenceClass::gamma(pi.square(), n)?;
    if !in_class(&gamma, &gamma_class)? {
        return Err(Error::InvariantViolation(
            "approximation residue must lie in Gamma(pi^2)",
        ));
    }
    Ok((word, gamma))
}

/// The squeeze `Delta_n(pi) = F_n(pi) * Gamma_n(pi^2)` made explicit for
/// `n >= 3`: returns `(w, gamma)` with `w` a product of `F(pi)` letters.
pub fn squeeze_witness(g: &SqMatrix, pi: &Ideal) -> Result<(GroupExpr, SqMatrix)> {
    if g.n() < 3 {
        return Err(Error::DimensionTooSmall {
            what: "squeeze witness",
            required: 3,
            found: g.n(),
        });
    }
    approximate_by_elementary(g, ApproxClass::Delta, pi)
}

/// A measured quotient order together with its closed-form prediction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RatioCheck {
    pub numerator: u128,
    pub denominator: u128,
    pub predicted: u128,
    pub matches: bool,
}

fn ratio_check(numerator: u128, denominator: u128, predicted: u128) -> RatioCheck {
    let matches = denominator != 0
        && predicted
            .checked_mul(denominator)
            .map(|p| p == numerator)
            .unwrap_or(false);
    RatioCheck {
        numerator,
        denominator,
        predicted,
        matches,
    }
}

/// Orders of the congruence classes inside `SL_n` of a finite ring, counted
/// by exhaustive enumeration, with the predicted quotient sizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrdersReport {
    pub ring: RingSpec,
    pub n: usize,
    pub ideal: Ideal,
    pub omega: u128,
    pub gamma: u128,
    pub delta: u128,
    pub gamma_square: u128,
    /// `|pi / pi^2|`.
    pub index_pi_mod_pi2: u128,
    /// Against `|pi/pi^2| ^ (n-1)`.
    pub gamma_over_delta: RatioCheck,
    /// Against `|pi/pi^2| ^ (n^2-n)`.
    pub delta_over_gamma_square: RatioCheck,
    /// Against `phi(gcd(N, m)) ^ (n-1)`.
    pub omega_over_gamma: RatioCheck,
}

fn euler_phi(mut k: u64) -> u64 {
    let mut result = k;
    let mut p = 2u64;
    while p * p <= k {
        if k % p == 0 {
            while k % p == 0 {
                k /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if k > 1 {
        result -= result / k;
    }
    result
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Determinant of an `n x n` residue matrix modulo `m`, staged so any
/// `u64` modulus is safe.
fn det_mod(entries: &[u64], n: usize, m: u64) -> u64 {
    fn mul(a: u64, b: u64, m: u64) -> u64 {
        ((a as u128 * b as u128) % m as u128) as u64
    }
    fn sub(a: u64, b: u64, m: u64) -> u64 {
        (a + m - b) % m
    }
    fn add(a: u64, b: u64, m: u64) -> u64 {
        let s = a as u128 + b as u128;
        (s % m as u128) as u64
    }
    let e = |i: usize, j: usize| entries[i * n + j];
    match n {
        1 => e(0, 0) % m,
        2 => sub(mul(e(0, 0), e(1, 1), m), mul(e(0, 1), e(1, 0), m), m),
        _ => {
            // Laplace expansion along the first row.
            let mut acc = 0u64;
            let cols: Vec<usize> = (0..n).collect();
            for (idx, &j) in cols.iter().enumerate() {
                let mut sub_entries = Vec::with_capacity((n - 1) * (n - 1));
                for r in 1..n {
                    for &c in cols.iter().filter(|&&c| c != j) {
                        sub_entries.push(e(r, c));
                    }
                }
                let minor = det_mod(&sub_entries, n - 1, m);
                let term = mul(e(0, j), minor, m);
                if idx % 2 == 0 {
                    acc = add(acc, term, m);
                } else {
                    acc = sub(acc, term, m);
                }
            }
            acc
        }
    }
}

/// Counts determinant-1 matrices whose diagonal entries run over
/// `{diag_base + t * diag_step}` and off-diagonal over `{t * offdiag_step}`.
fn count_det_one(
    m: u64,
    n: usize,
    diag_base: u64,
    diag_step: u64,
    offdiag_step: u64,
    limit: u64,
) -> Result<u128> {
    let diag_vals: Vec<u64> = (0..m / diag_step)
        .map(|t| (diag_base + t * diag_step) % m)
        .collect();
    let off_vals: Vec<u64> = (0..m / offdiag_step).map(|t| t * offdiag_step).collect();

    let mut candidates: u128 = 1;
    for i in 0..n * n {
        let size = if i % (n + 1) == 0 {
            diag_vals.len()
        } else {
            off_vals.len()
        } as u128;
        candidates = candidates
            .checked_mul(size)
            .ok_or(Error::EnumerationLimit {
                candidates: u128::MAX,
                limit,
            })?;
        if candidates > limit as u128 {
            return Err(Error::EnumerationLimit { candidates, limit });
        }
    }

    let slots: Vec<&[u64]> = (0..n * n)
        .map(|i| {
            if i % (n + 1) == 0 {
                diag_vals.as_slice()
            } else {
                off_vals.as_slice()
            }
        })
        .collect();
    let mut idx = vec![0usize; n * n];
    let mut entries: Vec<u64> = slots.iter().map(|s| s[0]).collect();
    let mut count: u128 = 0;
    loop {
        if det_mod(&entries, n, m) == 1 % m {
            count += 1;
        }
        // Odometer increment.
        let mut pos = n * n;
        loop {
            if pos == 0 {
                return Ok(count);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < slots[pos].len() {
                entries[pos] = slots[pos][idx[pos]];
                break;
            }
            idx[pos] = 0;
            entries[pos] = slots[pos][0];
        }
    }
}

/// Enumerates `Omega`, `Gamma`, `Delta` and `Gamma(pi^2)` inside `SL_n` of a
/// finite ring and checks the three predicted quotient orders. Refuses with
/// [`Error::EnumerationLimit`] when any class would scan more than `limit`
/// candidate matrices.
pub fn enumerate_orders(
    spec: RingSpec,
    n: usize,
    pi: &Ideal,
    limit: u64,
) -> Result<OrdersReport> {
    spec.check_same(&pi.spec())?;
    let m = match spec {
        RingSpec::Modular(m) => m,
        RingSpec::Integers => return Err(Error::NotFinite(spec)),
    };
    if n < 2 {
        return Err(Error::DimensionTooSmall {
            what: "order enumeration",
            required: 2,
            found: n,
        });
    }
    let gen_res = pi
        .generator()
        .representative()
        .try_into()
        .map(|g: u64| g % m)
        .unwrap_or(0);
    let d = gcd_u64(gen_res, m);
    let d_step = if d == 0 { m } else { d };
    let gen2 = ((gen_res as u128 * gen_res as u128) % m as u128) as u64;
    let d2 = gcd_u64(gen2, m);
    let d2_step = if d2 == 0 { m } else { d2 };

    let omega = count_det_one(m, n, 0, 1, d_step, limit)?;
    let gamma = count_det_one(m, n, 1, d_step, d_step, limit)?;
    let delta = count_det_one(m, n, 1, d2_step, d_step, limit)?;
    let gamma_square = count_det_one(m, n, 1, d2_step, d2_step, limit)?;

    let p = (d2_step / d_step) as u128;
    let pow = |base: u128, exp: u32| base.checked_pow(exp).unwrap_or(0);
    let n_u32 = n as u32;
    Ok(OrdersReport {
        ring: spec,
        n,
        ideal: pi.clone(),
        omega,
        gamma,
        delta,
        gamma_square,
        index_pi_mod_pi2: p,
        gamma_over_delta: ratio_check(gamma, delta, pow(p, n_u32 - 1)),
        delta_over_gamma_square: ratio_check(delta, gamma_square, pow(p, n_u32 * n_u32 - n_u32)),
        omega_over_gamma: ratio_check(omega, gamma, pow(euler_phi(d_step) as u128, n_u32 - 1)),
    })
}

/// 1-based entry check shared with the matrix module.
#[allow(dead_code)]
fn check_pair(i: usize, j: usize, n: usize) -> Result<()> {
    check_index(i, n)?;
    check_index(j, n)
}
