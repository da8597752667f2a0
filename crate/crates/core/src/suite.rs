//! Seeded self-check suite. Every property draws its own deterministic RNG
//! stream from the configured seed, so reports are byte-identical across
//! runs and machines for a fixed configuration.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::fmt::Write as _;

use crate::certificate::VerifyError;
use crate::congruence::{
    approximate_by_elementary, enumerate_orders, preimage_r, reduce_r, ApproxClass,
    SlResidueMatrix,
};
use crate::error::{Error, Result};
use crate::factor::{
    conjugate_in_e, conjugate_in_f_counted, conjugated_target, normal_generator_in_f,
    reduce_symbol_parts, suslin_factorize, symbol_commutator_expr, tits_symbol_expr, SuslinData,
};
use crate::freegroup::{
    matrix_of_word, reduced_words_up_to, stallings_member, FreeLetter, FreeWord,
    SubgroupAutomaton,
};
use crate::json::{word_from_doc, word_to_doc};
use crate::matrix::{in_class, CongruenceClass, SqMatrix};
use crate::ring::{Ideal, RingSpec, RingValue};
use crate::word::{check_discipline, Discipline, GroupExpr};

/// Deterministic generators for suite properties and stress tests.
pub mod sample {
    use super::*;
    use num_integer::Integer;

    /// Uniform element: `|v| <= bound` over the integers, any residue mod m.
    pub fn random_value<R: Rng>(rng: &mut R, spec: RingSpec, bound: i64) -> RingValue {
        match spec.modulus() {
            None => RingValue::from_i64(spec, rng.gen_range(-bound..=bound)),
            Some(m) => RingValue::new(spec, BigInt::from(rng.gen_range(0..m))),
        }
    }

    /// Random multiple of the ideal generator.
    pub fn random_in_ideal<R: Rng>(rng: &mut R, pi: &Ideal, bound: i64) -> RingValue {
        pi.generator() * &random_value(rng, pi.spec(), bound)
    }

    /// Uniform pair of distinct 1-based indices in `1..=n`.
    pub fn distinct_pair<R: Rng>(rng: &mut R, n: usize) -> (usize, usize) {
        let i = rng.gen_range(1..=n);
        let mut j = rng.gen_range(1..n);
        if j >= i {
            j += 1;
        }
        (i, j)
    }

    fn random_unit<R: Rng>(rng: &mut R, spec: RingSpec) -> RingValue {
        match spec.modulus() {
            None => RingValue::from_i64(spec, if rng.gen::<bool>() { 1 } else { -1 }),
            Some(m) => {
                for _ in 0..128 {
                    let u = rng.gen_range(1..m);
                    if BigInt::from(u).gcd(&BigInt::from(m)) == BigInt::from(1) {
                        return RingValue::new(spec, BigInt::from(u));
                    }
                }
                RingValue::one(spec)
            }
        }
    }

    fn unit_inverse(u: &RingValue) -> RingValue {
        match u.spec().modulus() {
            None => u.clone(),
            Some(m) => {
                let e = u.representative().extended_gcd(&BigInt::from(m));
                RingValue::new(u.spec(), e.x)
            }
        }
    }

    /// Product of `letters` random elementary matrices (determinant 1).
    pub fn random_sl<R: Rng>(rng: &mut R, spec: RingSpec, n: usize, letters: usize) -> SqMatrix {
        let mut g = SqMatrix::identity(spec, n);
        for _ in 0..letters {
            let (i, j) = distinct_pair(rng, n);
            let a = random_value(rng, spec, 3);
            g = g.mul(&SqMatrix::elementary(spec, n, i, j, a).expect("distinct indices"));
        }
        g
    }

    /// Product of `letters` random elementary letters with free coefficients.
    pub fn random_elem_word<R: Rng>(
        rng: &mut R,
        spec: RingSpec,
        n: usize,
        letters: usize,
    ) -> GroupExpr {
        let factors = (0..letters)
            .map(|_| {
                let (i, j) = distinct_pair(rng, n);
                GroupExpr::elem(i, j, random_value(rng, spec, 3))
            })
            .collect();
        GroupExpr::product(factors)
    }

    /// Word whose letters all carry coefficients in `pi`, closed under every
    /// combinator, so it satisfies the `F` discipline by construction.
    pub fn random_f_word<R: Rng>(rng: &mut R, n: usize, pi: &Ideal, size: usize) -> GroupExpr {
        if size <= 1 {
            let (i, j) = distinct_pair(rng, n);
            return GroupExpr::elem(i, j, random_in_ideal(rng, pi, 3));
        }
        match rng.gen_range(0..6u8) {
            0 => GroupExpr::inverse(random_f_word(rng, n, pi, size - 1)),
            1 => {
                let l = size / 2;
                GroupExpr::commutator(
                    random_f_word(rng, n, pi, l),
                    random_f_word(rng, n, pi, size - l),
                )
            }
            2 => {
                let l = size / 2;
                GroupExpr::conjugation(
                    random_f_word(rng, n, pi, l),
                    random_f_word(rng, n, pi, size - l),
                )
            }
            _ => {
                let l = size / 2;
                GroupExpr::product(vec![
                    random_f_word(rng, n, pi, l),
                    random_f_word(rng, n, pi, size - l),
                ])
            }
        }
    }

    /// Word satisfying the `E` discipline: `pi`-letters combined with
    /// commutators against—and conjugations by—arbitrary elementary words.
    pub fn random_e_word<R: Rng>(rng: &mut R, n: usize, pi: &Ideal, size: usize) -> GroupExpr {
        let spec = pi.spec();
        if size <= 1 {
            let (i, j) = distinct_pair(rng, n);
            return GroupExpr::elem(i, j, random_in_ideal(rng, pi, 3));
        }
        match rng.gen_range(0..6u8) {
            0 => GroupExpr::inverse(random_e_word(rng, n, pi, size - 1)),
            1 => GroupExpr::commutator(
                random_e_word(rng, n, pi, size - 1),
                random_elem_word(rng, spec, n, 2),
            ),
            2 => GroupExpr::conjugation(
                random_elem_word(rng, spec, n, 2),
                random_e_word(rng, n, pi, size - 1),
            ),
            _ => {
                let l = size / 2;
                GroupExpr::product(vec![
                    random_e_word(rng, n, pi, l),
                    random_e_word(rng, n, pi, size - l),
                ])
            }
        }
    }

    /// Unrestricted word: free coefficients and occasional symbol letters.
    pub fn random_word<R: Rng>(rng: &mut R, spec: RingSpec, n: usize, size: usize) -> GroupExpr {
        if size <= 1 {
            let (i, j) = distinct_pair(rng, n);
            if rng.gen_range(0..4u8) == 0 {
                return GroupExpr::symbol(
                    random_value(rng, spec, 2),
                    random_value(rng, spec, 2),
                    random_value(rng, spec, 2),
                    i,
                    j,
                );
            }
            return GroupExpr::elem(i, j, random_value(rng, spec, 3));
        }
        match rng.gen_range(0..6u8) {
            0 => GroupExpr::inverse(random_word(rng, spec, n, size - 1)),
            1 => {
                let l = size / 2;
                GroupExpr::commutator(
                    random_word(rng, spec, n, l),
                    random_word(rng, spec, n, size - l),
                )
            }
            2 => {
                let l = size / 2;
                GroupExpr::conjugation(
                    random_word(rng, spec, n, l),
                    random_word(rng, spec, n, size - l),
                )
            }
            _ => {
                let l = size / 2;
                GroupExpr::product(vec![
                    random_word(rng, spec, n, l),
                    random_word(rng, spec, n, size - l),
                ])
            }
        }
    }

    /// Member of `Omega(pi)`: a determinant-1 unit diagonal times the value
    /// of a `pi`-letter word.
    pub fn random_omega<R: Rng>(rng: &mut R, n: usize, pi: &Ideal, size: usize) -> SqMatrix {
        let spec = pi.spec();
        let mut units = Vec::with_capacity(n);
        let mut prod = RingValue::one(spec);
        for _ in 0..n - 1 {
            let u = random_unit(rng, spec);
            prod = &prod * &u;
            units.push(u);
        }
        units.push(unit_inverse(&prod));
        let mut diag = SqMatrix::identity(spec, n);
        for (k, u) in units.into_iter().enumerate() {
            diag.set_entry(k + 1, k + 1, u);
        }
        let w = random_f_word(rng, n, pi, size);
        diag.mul(&w.evaluate(n, spec).expect("disciplined word evaluates"))
    }

    /// Member of `Delta(pi)`: an `F(pi)` value times a `Gamma(pi^2)` value.
    pub fn random_delta<R: Rng>(rng: &mut R, n: usize, pi: &Ideal, size: usize) -> SqMatrix {
        let spec = pi.spec();
        let f = random_f_word(rng, n, pi, size)
            .evaluate(n, spec)
            .expect("disciplined word evaluates");
        let deep = random_e_word(rng, n, &pi.square(), 2)
            .evaluate(n, spec)
            .expect("disciplined word evaluates");
        f.mul(&deep)
    }

    /// Matrix of `pi`-entries whose trace lies in `pi^2`.
    pub fn random_residue<R: Rng>(
        rng: &mut R,
        n: usize,
        pi: &Ideal,
        bound: i64,
    ) -> SlResidueMatrix {
        let spec = pi.spec();
        let mut rows: Vec<Vec<RingValue>> = (0..n)
            .map(|_| (0..n).map(|_| random_in_ideal(rng, pi, bound)).collect())
            .collect();
        let mut head = RingValue::zero(spec);
        for (i, row) in rows.iter().enumerate().take(n - 1) {
            head = &head + &row[i];
        }
        rows[n - 1][n - 1] = &(-&head) + &random_in_ideal(rng, &pi.square(), bound);
        SlResidueMatrix::new(pi.clone(), n, rows).expect("trace fixed by construction")
    }

    /// Freely reduced word with at most `syllables` syllables.
    pub fn random_free_word<R: Rng>(rng: &mut R, syllables: usize, max_exp: i64) -> FreeWord {
        let mut w = FreeWord::identity();
        for _ in 0..syllables {
            let letter = if rng.gen::<bool>() {
                FreeLetter::A
            } else {
                FreeLetter::B
            };
            let mut e = rng.gen_range(-max_exp..max_exp);
            if e >= 0 {
                e += 1;
            }
            w = w.concat(&FreeWord::generator(letter, e));
        }
        w
    }
}

/// Configuration for [`run_suite`]. `dims` lists the matrix sizes exercised
/// by the emitter properties; every entry must be at least 3.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub cases: usize,
    pub dims: Vec<usize>,
    pub enum_limit: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            cases: 100,
            dims: vec![3, 4],
            enum_limit: 10_000_000,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.cases == 0 {
            return Err(Error::Parse("suite requires at least one case".into()));
        }
        if self.dims.is_empty() {
            return Err(Error::Parse("suite requires at least one dimension".into()));
        }
        for &d in &self.dims {
            if d < 3 {
                return Err(Error::DimensionTooSmall {
                    what: "suite emitter properties",
                    required: 3,
                    found: d,
                });
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub name: String,
    pub cases: usize,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub cases: usize,
    pub dims: Vec<usize>,
    pub enum_limit: u64,
    pub all_passed: bool,
    pub properties: Vec<PropertyReport>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.all_passed
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "suite seed={} cases={} dims={:?} enum-limit={}",
            self.seed, self.cases, self.dims, self.enum_limit
        );
        for p in &self.properties {
            let _ = writeln!(
                out,
                "  {} {} ({} cases): {}",
                if p.passed { "pass" } else { "FAIL" },
                p.name,
                p.cases,
                p.detail
            );
        }
        let _ = writeln!(
            out,
            "result: {} ({} properties)",
            if self.all_passed { "PASS" } else { "FAIL" },
            self.properties.len()
        );
        out
    }
}

struct PropRun {
    cases: usize,
    passed: bool,
    detail: String,
}

fn pass(cases: usize, detail: impl Into<String>) -> PropRun {
    PropRun {
        cases,
        passed: true,
        detail: detail.into(),
    }
}

fn fail(cases: usize, detail: impl Into<String>) -> PropRun {
    PropRun {
        cases,
        passed: false,
        detail: detail.into(),
    }
}

type PropFn = fn(&SuiteConfig, &mut ChaCha8Rng) -> Result<PropRun>;

fn fnv64(s: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in s.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

const PROPERTIES: &[(&str, PropFn)] = &[
    ("ring-axioms", prop_ring_axioms),
    ("ideal-absorption", prop_ideal_absorption),
    ("ideal-divide-round-trip", prop_ideal_divide_round_trip),
    ("det-multiplicative", prop_det_multiplicative),
    ("omega-diagonal-multiplicativity", prop_omega_multiplicativity),
    ("delta-normal-in-omega", prop_delta_normal_in_omega),
    ("symbol-det-one", prop_symbol_det_one),
    ("symbol-additivity", prop_symbol_additivity),
    ("word-evaluation-homomorphism", prop_word_evaluation_homomorphism),
    ("word-inverse-evaluation", prop_word_inverse_evaluation),
    ("f-words-evaluate-into-delta", prop_f_words_into_delta),
    ("word-json-round-trip", prop_word_json_round_trip),
    ("suslin-data-identities", prop_suslin_data_identities),
    ("suslin-factor-commutation", prop_suslin_factor_commutation),
    ("suslin-factorization-identity", prop_suslin_factorization_identity),
    ("certificates-e-verify", prop_certificates_e_verify),
    ("certificates-f-verify", prop_certificates_f_verify),
    ("certificates-comm-f-verify", prop_certificates_comm_f_verify),
    ("subgroup-conjugation-in-f", prop_subgroup_conjugation),
    ("symbol-commutator-identity", prop_symbol_commutator_identity),
    ("tits-split-identity", prop_tits_split_identity),
    ("symbol-reduction-identity", prop_symbol_reduction_identity),
    ("reduction-additivity", prop_reduction_additivity),
    ("reduction-kernel", prop_reduction_kernel),
    ("delta-is-zero-diagonal-preimage", prop_delta_zero_diagonal),
    ("preimage-round-trip", prop_preimage_round_trip),
    ("approximant-split", prop_approximant_split),
    ("congruence-orders", prop_congruence_orders),
    ("folding-confluence", prop_folding_confluence),
    ("stallings-brute-force-agreement", prop_stallings_brute_force),
    ("free-word-matrix-homomorphism", prop_free_word_matrix_homomorphism),
    ("freeness-smoke", prop_freeness_smoke),
    ("zero-ideal-degenerates", prop_zero_ideal_degenerates),
    ("corrupted-certificates-fail", prop_corrupted_certificates_fail),
];

pub fn property_names() -> Vec<&'static str> {
    PROPERTIES.iter().map(|(n, _)| *n).collect()
}

pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    config.validate()?;
    let mut properties = Vec::with_capacity(PROPERTIES.len());
    for (name, f) in PROPERTIES {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ fnv64(name));
        let report = match f(config, &mut rng) {
            Ok(run) => PropertyReport {
                name: (*name).to_string(),
                cases: run.cases,
                passed: run.passed,
                detail: run.detail,
            },
            Err(e) => PropertyReport {
                name: (*name).to_string(),
                cases: 0,
                passed: false,
                detail: format!("unexpected error: {e}"),
            },
        };
        properties.push(report);
    }
    let all_passed = properties.iter().all(|p| p.passed);
    Ok(SuiteReport {
        seed: config.seed,
        cases: config.cases,
        dims: config.dims.clone(),
        enum_limit: config.enum_limit,
        all_passed,
        properties,
    })
}

fn specs() -> [RingSpec; 3] {
    [
        RingSpec::Integers,
        RingSpec::Modular(8),
        RingSpec::Modular(12),
    ]
}

/// (ring, ideal generator) pairs that every ideal-sensitive property cycles
/// through; the generators are zero divisors in the modular rings.
fn ring_ideals() -> Vec<(RingSpec, i64)> {
    vec![
        (RingSpec::Integers, 2),
        (RingSpec::Integers, 3),
        (RingSpec::Modular(8), 2),
        (RingSpec::Modular(12), 3),
    ]
}

fn per_scenario(total: usize, scenarios: usize) -> usize {
    (total + scenarios - 1) / scenarios.max(1)
}

fn prop_ring_axioms(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<PropRun> {
    let mut cases = 0;
    for spec in specs() {
        for _ in 0..per_scenario(cfg.cases, 3) {
            cases += 1;
            let x = sample::random_value(rng, spec, 50);
            let y = sample::random_value(rng, spec, 50);
            let z = sample::random_value(rng, spec, 50);
            let zero = RingValue::zero(spec);
            let one = RingValue::one(spec);
            let checks = [
                (&(&x + &y) + &z == &x + &(&y + &z), "additive associativity"),
                (&x + &y == &y + &x, "additive commutativity"),
                (&(&x * &y) * &z == &x * &(&y * &z), "multiplicative associativity"),
                (&x * &y == &y * &x, "multiplicative commutativity"),
                (&x * &(&y + &z) == &(&x * &y) + &(&x * &z), "distributivity"),
                (&x + &(-&x) == zero, "additive inverse"),
                (&x * &one == x, "multiplicative identity"),
                (&x + &zero == x, "additive identity"),
            ];
            for (ok, what) in checks {
                if !ok {
                    return Ok(fail(cases, format!("{what} failed over {spec} at x={x}, y={y}, z={z}")));
                }
            }
        }
    }
    Ok(pass(cases, "eight ring axioms hold over Z, Z/8, Z/12"))
}

fn prop_ideal_absorption(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<PropRun> {
    let mut pairs = ring_ideals();
    pairs.push((RingSpec::Integers, 0));
    let mut cases = 0;
    for (spec, g) in pairs {
        let pi = Ideal::from_i64(spec, g);
        for _ in 0..per_scenario(cfg.cases, 5) {
            cases += 1;
            let x = sample::random_in_ideal(rng, &pi, 20);
            let r = sample::random_value(rng, spec, 20);
            if !pi.contains(&x)? {
                return Ok(fail(cases, format!("{x} built as a multiple escaped {pi} over {spec}")));
            }
            if !pi.contains(&(&x * &r))? {
                return Ok(fail(cases, format!("{pi} over {spec} not absorbing: {x} * {r}")));
            }
            if !pi.contains(pi.generator())? || !pi.contains(&RingValue::zero(spec))? {
                return Ok(fail(cases, format!("{pi} over {spec} misses its generator or zero")));
            }
        }
    }
    Ok(pass(cases, "multiples stay in the ideal under ring multiplication"))
}

fn prop_ideal_divide_round_trip(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<PropRun> {
    let mut cases = 0;
    for (spec, g) in ring_ideals() {
        let pi = Ideal::from_i64(spec, g);
        for _ in 0..per_scenario(cfg.cases, 4) {
            cases += 1;
            let z = sample::random_in_ideal(rng, &pi, 30);
            let q = pi.divide(&z)?;
            if &(pi.generator() * &q) != &z {
                return Ok(fail(cases, format!("divide({z}) = {q} does not recover {z} in {pi} over {spec}")));
            }
            if pi.witness(&z)?.is_none() {
                return Ok(fail(cases, format!("witness missing for {z} in {pi} over {spec}")));
            }
            let z2 = sample::random_in_ideal(rng, &pi.square(), 30);
            let (q1, q2) = pi.split_square(&z2)?;
            if &(&q1 * &q2) != &z2 || !pi.contains(&q1)? || !pi.contains(&q2)? {
                return Ok(fail(
                    cases,
                    format!("split_square({z2}) = ({q1}, {q2}) invalid in {pi} over {spec}"),
                ));
            }
        }
    }
    Ok(pass(cases, "divide and split_square recover their inputs with factors in the ideal"))
}

fn prop_det_multiplicative(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<PropRun> {
    let mut cases = 0;
    for spec in [RingSpec::Integers, RingSpec::Modular(12)] {
        for &n in &cfg.dims {
            for _ in 0..per_scenario(cfg.cases, 2 * cfg.dims.len()) {
                cases += 1;
                let a = random_dense(rng, spec, n);
                let b = random_dense(rng, spec, n);
                if a.mul(&b).det() != &a.det() * &b.det() {
                    return Ok(fail(cases, format!("det not multiplicative over {spec}, n={n}")));
                }
            }
        }
    }
    Ok(pass(cases, "det(AB) = det(A) det(B) for dense random matrices"))
}

fn random_dense(rng: &mut ChaCha8Rng, spec: RingSpec, n: usize) -> SqMatrix {
    let rows = (0..n)
        .map(|_| (0..n).map(|_| sample::random_value(rng, spec, 5)).collect())
        .collect();
    SqMatrix::from_rows(spec, rows).expect("square grid")
}

fn prop_omega_multiplicativity(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<PropRun> {
    let mut cases = 0;
    for (spec, gen) in ring_ideals() {
        let pi = Ideal::from_i64(spec, gen);
        for &n in &cfg.dims {
            let omega = CongruenceClass::omega(pi.clone(), n)?;
            for _ in 0..per_scenario(cfg.cases, 4 * cfg.dims.len()) {
                cases += 1;
                let g = sample::random_omega(rng, n, &pi, 3);
                let h = sample::random_omega(rng, n, &pi, 3);
                if !in_class(&g, &omega)? || !in_class(&h, &omega)? {
                    return Ok(fail(cases, format!("sampler left {omega} over {spec}")));
                }
                if !in_class(&g.mul(&h), &omega)? || !in_class(&g.inverse()?, &omega)? {
                    return Ok(fail(cases, format!("{omega} over {spec} not closed under product/inverse")));
                }
            }
        }
    }
    Ok(pass(cases, "Omega is closed under products and inverses"))
}

fn prop_delta_normal_in_omega(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<PropRun> {
    let mut cases = 0;
    for (spec, gen) in ring_ideals() {
        let pi = Ideal::from_i64(spec, gen);
        for &n in &cfg.dims {
            let delta = CongruenceClass::delta(pi.clone(), n)?;
            for _ in 0..per_scenario(cfg.cases, 4 * cfg.dims.len()) {
                cases += 1;
                let d = sample::random_delta(rng, n, &pi, 3);
                let w = sample::random_omega(rng, n, &pi, 2);
                if !in_class(&d, &delta)? {
                    return Ok(fail(cases, format!("sampler left {delta} over {spec}")));
                }
                let conj = w.inverse()?.mul(&d).mul(&w);
                if !in_class(&conj, &delta)? {
                    return Ok(fail(cases, format!("conjugate escaped {delta} over {spec}")));
                }
            }
        }
    }
    Ok(pass(cases, "Omega-conjugation preserves Delta"))
}

fn prop_symbol_det_one(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<PropRun> {
    let mut cases = 0;
    for spec in specs() {
        for _ in 0..per_scenario(cfg.cases, 3) {
            cases += 1;
            let x = sample::random_value(rng, spec, 10);
            let y = sample::random_value(rng, spec, 10);
            let z = sample::random_value(rng, spec, 10);
            let s = SqMatrix::symbol(&x, &y, &z)?;
            if !s.det().is_one() {
                return Ok(fail(cases, format!("S({x}, {y}; {z}) has det {} over {spec}", s.det())));
            }
            let xyz = &(&x * &y) * &z;
            let one = RingValue::one(spec);
            if s.entry(1, 1) != &(&one + &xyz)
                || s.entry(1, 2) != &(-&(&(&x * &x) * &z))
                || s.entry(2, 1) != &(&(&y * &y) * &z)
                || s.entry(2, 2) != &(&one - &xyz)
            {
                return Ok(fail(cases, format!("S({x}, {y}; {z}) entries wrong over {spec}")));
            }
            let n = 4;
            let (k, l) = sample::distinct_pair(rng, n);
            let direct = SqMatrix::suspend(&s, k, l, n)?;
            let swapped = SqMatrix::suspend(&SqMatrix::symbol(&y, &x, &(-&z))?, l, k, n)?;
            if direct != swapped {
                return Ok(fail(cases, format!("suspension swap identity failed at ({k}, {l}) over {spec}")));
            }
        }
    }
    Ok(pass(cases, "symbols are unimodular and obey the suspension swap identity"))
}

fn prop_symbol_additivity(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<PropRun> {
    let mut cases = 0;
    for spec in specs() {
        for _ in 0..per_scenario(cfg.cases, 3) {
            cases += 1;
            let x = sample::random_value(rng, spec, 10);
            let y = sample::random_value(rng, spec, 10);
            let z1 = sample::random_value(rng, spec, 10);
            let z2 = sample::random_value(rng, spec, 10);
            let lhs = SqMatrix::symbol(&x, &y, &z1)?.mul(&SqMatrix::symbol(&x, &y, &z2)?);
            let rhs = SqMatrix::symbol(&x, &y, &(&z1 + &z2))?;
            if lhs != rhs {
                return Ok(fail(
                    cases,
                    format!("S({x}, {y}; {z1}) S({x}, {y}; {z2}) != S({x}, {y}; {z1}+{z2}) over {spec}"),
                ));
            }
        }
    }
    Ok(pass(cases, "symbols are additive in the z argument"))
}

fn prop_word_evaluation_homomorphism(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<PropRun> {
    let mut cases = 0;
    for spec in specs() {
        for &n in &cfg.dims {
            for _ in 0..per_scenario(cfg.cases, 3 * cfg.dims.len()) {
                cases += 1;
                let u = sample::random_word(rng, spec, n, 3);
                let v = sample::random_word(rng, spec, n, 3);
                let um = u.evaluate(n, spec)?;
                let vm = v.evaluate(n, spec)?;
                let prod = GroupExpr::Product(vec![u.clone(), v.clone()]).evaluate(n, spec)?;
                if prod != um.mul(&vm) {
                    return Ok(fail(cases, format!("product evaluation broke over {spec}, n={n}")));
                }
                let comm = GroupExpr::Commutator(Box::new(u.clone()), Box::new(v.clone()))
                    .evaluate(n, spec)?;
                let expect = um.inverse()?.mul(&vm.inverse()?).mul(&um).mul(&vm);
                if comm != expect {
                    return Ok(fail(cases, format!("commutator evaluation broke over {spec}, n={n}")));
                }
                let conj = GroupExpr::Conjugation {
                    conjugator: Box::new(v.clone()),
                    inner: Box::new(u.clone()),
                }
                .evaluate(n, spec)?;
                if conj != vm.inverse()?.mul(&um).mul(&vm) {
                    return Ok(fail(cases, format!("conjugation evaluation broke over {spec}, n={n}")));
                }
            }
        }
    }
    Ok(pass(cases, "evaluation respects products, commutators and conjugations"))
}

fn prop_word_inverse_evaluation(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<PropRun> {
    let mut cases = 0;
    for spec in specs() {
        for &n in &cfg.dims {
            for _ in 0..per_scenario(cfg.cases, 3 * cfg.dims.len()) {
                cases += 1;
                let u = sample::random_word(rng, spec, n, 4);
                let um = u.evaluate(n, spec)?;
                let inv = GroupExpr::Inverse(Box::new(u.clone())).evaluate(n, spec)?;
                if inv != um.inverse()? || !inv.mul(&um).is_identity() {
                    return Ok(fail(cases, format!("inverse evaluation broke over {spec}, n={n}")));
                }
            }
        }
    }
    Ok(pass(cases, "inverse nodes evaluate to matrix inverses"))
}

fn prop_f_words_into_delta(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<PropRun> {
    let mut cases = 0;
    for (spec, gen) in ring_ideals() {
        let pi = Ideal::from_i64(spec, gen);
        for &n in &cfg.dims {
            let delta = CongruenceClass::delta(pi.clone(), n)?;
            for _ in 0..per_scenario(cfg.cases, 4 * cfg.dims.len()) {
                cases += 1;
                let w = sample::random_f_word(rng, n, &pi, 4);
                if let Err(v) = check_discipline(&w, &Discipline::F(pi.clone())) {
                    return Ok(fail(cases, format!("sampler broke the F discipline: {v}")));
                }
                if !in_class(&w.evaluate(n, spec)?, &delta)? {
                    return Ok(fail(cases, format!("an F({pi}) word left {delta} over {spec}")));
                }
            }
        }
    }
    Ok(pass(cases, "F-disciplined words evaluate into Delta"))
}

fn prop_word_json_round_trip(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<PropRun> {
    let mut cases = 0;
    for spec in specs() {
        for _ in 0..per_scenario(cfg.cases, 3) {
            cases += 1;
            let w = sample::random_word(rng, spec, 4, 5);
            let doc = word_to_doc(&w);
            if word_from_doc(&doc, spec)? != w {
                return Ok(fail(cases, format!("document round trip changed a word over {spec}")));
            }
            let text = serde_json::to_string(&doc).map_err(|e| Error::Parse(e.to_string()))?;
            let back = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
            if word_from_doc(&back, spec)? != w {
                return Ok(fail(cases, format!("serde round trip changed a word over {spec}")));
            }
        }
    }
    Ok(pass(cases, "words survive document and JSON-string round trips"))
}

fn dot(a: &[RingValue], b: &[RingValue]) -> RingValue {
    let mut acc = RingValue::zero(a[0].spec());
    for (x, y) in a.iter().zip(b) {
        acc = &acc + &(x * y);
    }
    acc
}

fn prop_suslin_data_identities(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<PropRun> {
    let mut cases = 0;
    for spec in [RingSpec::Integers, RingSpec::Modular(12)] {
        for &n in &cfg.dims {
            for _ in 0..per_scenario(cfg.cases, 2 * cfg.dims.len()) {
                cases += 1;
                let g = sample::random_sl(rng, spec, n, 4);
                let (i, j) = sample::distinct_pair(rng, n);
                let data = SuslinData::new(&g, i, j)?;
                let ginv = g.inverse()?;
                let v: Vec<_> = (1..=n).map(|s| ginv.entry(s, i).clone()).collect();
                let w: Vec<_> = (1..=n).map(|s| g.entry(j, s).clone()).collect();
                let wp: Vec<_> = (1..=n).map(|s| g.entry(i, s).clone()).collect();
                for s in 1..=n {
                    if data.v(s) != &v[s - 1] || data.w(s) != &w[s - 1] || data.w_prime(s) != &wp[s - 1]
                    {
                        return Ok(fail(cases, format!("column/row data wrong over {spec}, n={n}")));
                    }
                }
                if !dot(&w, &v).is_zero() || !dot(&wp, &v).is_one() {
                    return Ok(fail(cases, format!("orthogonality failed over {spec}, n={n}")));
                }
                for (k, l) in data.pairs() {
                    let expect = &(&w[k - 1] * &wp[l - 1]) - &(&w[l - 1] * &wp[k - 1]);
                    if data.c_at(k, l) != &expect {
                        return Ok(fail(cases, format!("c[{k},{l}] wrong over {spec}, n={n}")));
                    }
                }
                for t in 1..=n {
                    let mut acc = RingValue::zero(spec);
                    for l in t + 1..=n {
                        acc = &acc + &(data.c_at(t, l) * &v[l - 1]);
                    }
                    for k in 1..t {
                        acc = &acc - &(data.c_at(k, t) * &v[k - 1]);
                    }
                    if acc != w[t - 1] {
                        return Ok(fail(cases, format!("row reconstruction failed at t={t} over {spec}")));
                    }
                }
            }
        }
    }
    Ok(pass(cases, "factorization data satisfies its defining identities"))
}

fn prop_suslin_factor_commutation(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<PropRun> {
    let mut cases = 0;
    for spec in [RingSpec::Integers, RingSpec::Modular(12)] {
        for &n in &cfg.dims {
            for _ in 0..per_scenario(cfg.cases, 2 * cfg.dims.len()) {
                cases += 1;
                let g = sample::random_sl(rng, spec, n, 3);
                let (i, j) = sample::distinct_pair(rng, n);
                let a = sample::random_value(rng, spec, 4);
                let data = SuslinData::new(&g, i, j)?;
                for (k, l) in data.pairs() {
                    let c = &a * data.c_at(k, l);
                    let mut letters = Vec::new();
                    for s in 1..=n {
                        if s == k || s == l {
                            continue;
                        }
                        letters.push(SqMatrix::elementary(spec, n, s, k, &(&c * data.v(s)) * data.v(l))?);
                        letters.push(SqMatrix::elementary(spec, n, s, l, -&(&(&c * data.v(s)) * data.v(k)))?);
                    }
                    let forward = letters.iter().fold(SqMatrix::identity(spec, n), |m, e| m.mul(e));
                    let backward = letters.iter().rev().fold(SqMatrix::identity(spec, n), |m, e| m.mul(e));
                    if forward != backward {
                        return Ok(fail(cases, format!("correction letters failed to commute over {spec}, n={n}")));
                    }
                    let factor = SqMatrix::suspend(&SqMatrix::symbol(data.v(k), data.v(l), &c)?, k, l, n)?
                        .mul(&forward);
                    let coeff_ideal = Ideal::new(a.clone());
                    let gamma = CongruenceClass::gamma(coeff_ideal, n)?;
                    if !in_class(&factor, &gamma)? {
                        return Ok(fail(cases, format!("a pair factor left Gamma((a)) over {spec}, n={n}")));
                    }
                }
            }
        }
    }
    Ok(pass(cases, "correction letters commute and pair factors stay congruent to 1 mod (a)"))
}

fn prop_suslin_factorization_identity(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<PropRun> {
    let mut cases = 0;
    for spec in [RingSpec::Integers, RingSpec::Modular(12)] {
        for &n in &cfg.dims {
            for _ in 0..per_scenario(cfg.cases, 2 * cfg.dims.len()) {
                cases += 1;
                let g = sample::random_sl(rng, spec, n, 4);
                let (i, j) = sample::distinct_pair(rng, n);
                let a = sample::random_value(rng, spec, 4);
                let word = suslin_factorize(&g, i, j, &a)?;
                if word.evaluate(n, spec)? != conjugated_target(&g, i, j, &a)? {
                    return Ok(fail(
                        cases,
                        format!("factorization missed g^-1 e_{i}{j}({a}) g over {spec}, n={n}"),
                    ));
                }
            }
        }
    }
    Ok(pass(cases, "factorizations evaluate to the conjugated elementary matrix"))
}

fn prop_certificates_e_verify(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<PropRun> {
    let mut cases = 0;
    for (spec, gen) in ring_ideals() {
        let pi = Ideal::from_i64(spec, gen);
        for &n in &cfg.dims {
            for _ in 0..per_scenario(cfg.cases, 4 * cfg.dims.len()) {
                cases += 1;
                let g = sample::random_sl(rng, spec, n, 3);
                let (i, j) = sample::distinct_pair(rng, n);
                let a = sample::random_in_ideal(rng, &pi, 3);
                let cert = conjugate_in_e(&g, i, j, &a, &pi)?;
                if cert.claim.target != conjugated_target(&g, i, j, &a)? {
                    return Ok(fail(cases, format!("E certificate targets the wrong matrix over {spec}")));
                }
                if let Err(e) = cert.verify() {
                    return Ok(fail(cases, format!("E certificate failed verification over {spec}: {e}")));
                }
            }
        }
    }
    Ok(pass(cases, "emitted E-certificates verify against independent evaluation"))
}

fn prop_certificates_f_verify(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<PropRun> {
    let mut cases = 0;
    let mut direct = 0usize;
    let mut mirrored = 0usize;
    for (spec, gen) in ring_ideals() {
        let pi = Ideal::from_i64(spec, gen);
        for &n in &cfg.dims {
            for _ in 0..per_scenario(cfg.cases, 4 * cfg.dims.len()) {
                cases += 1;
                let g = sample::random_omega(rng, n, &pi, 3);
                let (i, j) = sample::distinct_pair(rng, n);
                let a = sample::random_in_ideal(rng, &pi, 3);
                let (cert, counts) = conjugate_in_f_counted(&g, i, j, &a, &pi)?;
                direct += counts.direct;
                mirrored += counts.mirrored;
                if cert.claim.target != conjugated_target(&g, i, j, &a)? {
                    return Ok(fail(cases, format!("F certificate targets the wrong matrix over {spec}")));
                }
                if let Err(e) = cert.verify() {
                    return Ok(fail(cases, format!("F certificate failed verification over {spec}: {e}")));
                }
            }
        }
    }
    Ok(pass(
        cases,
        format!("emitted F-certificates verify; {direct} direct and {mirrored} mirrored symbol expansions"),
    ))
}

fn prop_certificates_comm_f_verify(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<PropRun> {
    let mut cases = 0;
    for (spec, gen) in ring_ideals() {
        let pi = Ideal::from_i64(spec, gen);
        for &n in &cfg.dims {
            for _ in 0..per_scenario(cfg.cases, 4 * cfg.dims.len()) {
                cases += 1;
                let c = sample::random_elem_word(rng, spec, n, 3);
                let (i, j) = sample::distinct_pair(rng, n);
                let a = sample::random_in_ideal(rng, &pi.square(), 3);
                let cert = normal_generator_in_f(&c, i, j, &a, &pi, n)?;
                if let Err(e) = cert.verify() {
                    return Ok(fail(cases, format!("commutator certificate failed over {spec}: {e}")));
                }
            }
        }
    }
    Ok(pass(cases, "emitted commutator-subgroup certificates verify"))
}

fn prop_subgroup_conjugation(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<PropRun> {
    let mut cases = 0;
    for (spec, gen) in ring_ideals() {
        let pi = Ideal::from_i64(spec, gen);
        for &n in &cfg.dims {
            let delta = CongruenceClass::delta(pi.clone(), n)?;
            for _ in 0..per_scenario(cfg.cases, 4 * cfg.dims.len()) {
                cases += 1;
                let h = sample::random_f_word(rng, n, &pi, 4).evaluate(n, spec)?;
                let g = sample::random_omega(rng, n, &pi, 2);
                let conj = g.inverse()?.mul(&h).mul(&g);
                if !in_class(&conj, &delta)? {
                    return Ok(fail(cases, format!("Omega-conjugate of an F value left {delta} over {spec}")));
                }
            }
        }
    }
    Ok(pass(cases, "Omega-conjugates of F values stay in Delta"))
}

fn prop_symbol_commutator_identity(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<PropRun> {
    let mut cases = 0;
    for spec in specs() {
        for &n in &cfg.dims {
            for _ in 0..per_scenario(cfg.cases, 3 * cfg.dims.len()) {
                cases += 1;
                let x = sample::random_value(rng, spec, 6);
                let y = sample::random_value(rng, spec, 6);
                let z = sample::random_value(rng, spec, 6);
                let (k, l) = sample::distinct_pair(rng, n);
                let expr = symbol_commutator_expr(&x, &y, &z, k, l, n)?;
                let expect = SqMatrix::suspend(&SqMatrix::symbol(&x, &y, &z)?, k, l, n)?;
                if expr.evaluate(n, spec)? != expect {
                    return Ok(fail(
                        cases,
                        format!("commutator expansion of S({x}, {y}; {z}) at ({k}, {l}) failed over {spec}"),
                    ));
                }
            }
        }
    }
    Ok(pass(cases, "the commutator expansion reproduces every suspended symbol"))
}

fn prop_tits_split_identity(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<PropRun> {
    let mut cases = 0;
    for spec in specs() {
        for &n in &cfg.dims {
            for _ in 0..per_scenario(cfg.cases, 3 * cfg.dims.len()) {
                cases += 1;
                let x = sample::random_value(rng, spec, 6);
                let y = sample::random_value(rng, spec, 6);
                let z1 = sample::random_value(rng, spec, 6);
                let z2 = sample::random_value(rng, spec, 6);
                let (k, l) = sample::distinct_pair(rng, n);
                let expr = tits_symbol_expr(&x, &y, &z1, &z2, k, l, n)?;
                let expect =
                    SqMatrix::suspend(&SqMatrix::symbol(&x, &y, &(&z1 * &z2))?, k, l, n)?;
                if expr.evaluate(n, spec)? != expect {
                    return Ok(fail(
                        cases,
                        format!("split expansion of S({x}, {y}; {z1}*{z2}) at ({k}, {l}) failed over {spec}"),
                    ));
                }
            }
        }
    }
    Ok(pass(cases, "the split commutator expansion matches the z1*z2 symbol"))
}

fn prop_symbol_reduction_identity(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<PropRun> {
    let mut cases = 0;
    for (spec, gen) in ring_ideals() {
        let pi = Ideal::from_i64(spec, gen);
        for &n in &cfg.dims {
            for _ in 0..per_scenario(cfg.cases, 4 * cfg.dims.len()) {
                cases += 1;
                let z = sample::random_in_ideal(rng, &pi, 4);
                let (k, l) = sample::distinct_pair(rng, n);
                let mirror_case = rng.gen::<bool>();
                let (x, y) = if mirror_case {
                    (sample::random_in_ideal(rng, &pi, 4), sample::random_value(rng, spec, 4))
                } else {
                    (sample::random_value(rng, spec, 4), sample::random_in_ideal(rng, &pi, 4))
                };
                let parts = reduce_symbol_parts(&x, &y, &z, k, l, n, &pi)?;
                let expr = parts.expr();
                let expect = SqMatrix::suspend(&SqMatrix::symbol(&x, &y, &z)?, k, l, n)?;
                if expr.evaluate(n, spec)? != expect {
                    return Ok(fail(cases, format!("reduction changed the symbol value over {spec}, n={n}")));
                }
                if let Err(v) = check_discipline(&expr, &Discipline::E(pi.clone())) {
                    return Ok(fail(cases, format!("reduction output broke the E discipline: {v}")));
                }
                if !z.is_zero() {
                    let staged = parts
                        .left
                        .evaluate(n, spec)?
                        .mul(&expect)
                        .mul(&parts.right.evaluate(n, spec)?);
                    if staged != parts.inner_value(n)? {
                        return Ok(fail(cases, format!("inner stage mismatch over {spec}, n={n}")));
                    }
                }
            }
        }
    }
    Ok(pass(cases, "symbol reduction preserves values, discipline and its inner stage"))
}

fn prop_reduction_additivity(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<PropRun> {
    let mut cases = 0;
    for (spec, gen) in ring_ideals() {
        let pi = Ideal::from_i64(spec, gen);
        for &n in &cfg.dims {
            for _ in 0..per_scenario(cfg.cases, 4 * cfg.dims.len()) {
                cases += 1;
                let g = sample::random_e_word(rng, n, &pi, 3).evaluate(n, spec)?;
                let h = sample::random_e_word(rng, n, &pi, 3).evaluate(n, spec)?;
                let lhs = reduce_r(&g.mul(&h), &pi)?;
                let rhs = reduce_r(&g, &pi)?.add(&reduce_r(&h, &pi)?)?;
                if lhs != rhs {
                    return Ok(fail(cases, format!("r(gh) != r(g) + r(h) over {spec}, n={n}")));
                }
            }
        }
    }
    Ok(pass(cases, "the reduction map is additive on products"))
}

fn prop_reduction_kernel(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<PropRun> {
    let mut cases = 0;
    for (spec, gen) in ring_ideals() {
        let pi = Ideal::from_i64(spec, gen);
        for &n in &cfg.dims {
            let gamma_sq = CongruenceClass::gamma(pi.square(), n)?;
            for _ in 0..per_scenario(cfg.cases, 4 * cfg.dims.len()) {
                cases += 1;
                let g = sample::random_e_word(rng, n, &pi.square(), 3).evaluate(n, spec)?;
                if !in_class(&g, &gamma_sq)? {
                    return Ok(fail(cases, format!("sampler left {gamma_sq} over {spec}")));
                }
                if reduce_r(&g, &pi)? != SlResidueMatrix::zero(pi.clone(), n)? {
                    return Ok(fail(cases, format!("Gamma(pi^2) element had nonzero reduction over {spec}")));
                }
            }
        }
    }
    Ok(pass(cases, "Gamma(pi^2) reduces to the zero residue matrix"))
}

fn prop_delta_zero_diagonal(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<PropRun> {
    let mut cases = 0;
    for (spec, gen) in ring_ideals() {
        let pi = Ideal::from_i64(spec, gen);
        for &n in &cfg.dims {
            let delta = CongruenceClass::delta(pi.clone(), n)?;
            for _ in 0..per_scenario(cfg.cases, 4 * cfg.dims.len()) {
                cases += 1;
                let g = if rng.gen::<bool>() {
                    sample::random_delta(rng, n, &pi, 3)
                } else {
                    sample::random_e_word(rng, n, &pi, 3).evaluate(n, spec)?
                };
                let in_delta = in_class(&g, &delta)?;
                let res = reduce_r(&g, &pi)?;
                let diag_zero = res
                    .canonical_entries()
                    .iter()
                    .enumerate()
                    .all(|(i, row)| row[i].is_zero());
                if in_delta != diag_zero {
                    return Ok(fail(
                        cases,
                        format!("Delta membership and zero reduced diagonal disagree over {spec}, n={n}"),
                    ));
                }
            }
        }
    }
    Ok(pass(cases, "Delta is exactly the zero-diagonal preimage under reduction"))
}

fn prop_preimage_round_trip(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<PropRun> {
    let mut cases = 0;
    for (spec, gen) in ring_ideals() {
        let pi = Ideal::from_i64(spec, gen);
        for &n in &cfg.dims {
            let gamma = CongruenceClass::gamma(pi.clone(), n)?;
            for _ in 0..per_scenario(cfg.cases, 4 * cfg.dims.len()) {
                cases += 1;
                let x = sample::random_residue(rng, n, &pi, 4);
                let (g, w) = preimage_r(&x, &pi, n)?;
                if reduce_r(&g, &pi)? != x {
                    return Ok(fail(cases, format!("preimage does not reduce back over {spec}, n={n}")));
                }
                if w.evaluate(n, spec)? != g {
                    return Ok(fail(cases, format!("preimage word evaluates elsewhere over {spec}, n={n}")));
                }
                if let Err(v) = check_discipline(&w, &Discipline::E(pi.clone())) {
                    return Ok(fail(cases, format!("preimage word broke the E discipline: {v}")));
                }
                if !in_class(&g, &gamma)? {
                    return Ok(fail(cases, format!("preimage left {gamma} over {spec}")));
                }
            }
        }
    }
    Ok(pass(cases, "residue matrices lift to disciplined words that reduce back"))
}

fn prop_approximant_split(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<PropRun> {
    let mut cases = 0;
    for (spec, gen) in ring_ideals() {
        let pi = Ideal::from_i64(spec, gen);
        for &n in &cfg.dims {
            let gamma_sq = CongruenceClass::gamma(pi.square(), n)?;
            for _ in 0..per_scenario(cfg.cases, 4 * cfg.dims.len()) {
                cases += 1;
                let (g, class, disc) = if rng.gen::<bool>() {
                    (
                        sample::random_delta(rng, n, &pi, 3),
                        ApproxClass::Delta,
                        Discipline::F(pi.clone()),
                    )
                } else {
                    (
                        sample::random_e_word(rng, n, &pi, 3).evaluate(n, spec)?,
                        ApproxClass::Gamma,
                        Discipline::E(pi.clone()),
                    )
                };
                let (w, tail) = approximate_by_elementary(&g, class, &pi)?;
                if w.evaluate(n, spec)?.mul(&tail) != g {
                    return Ok(fail(cases, format!("approximant product mismatch over {spec}, n={n}")));
                }
                if !in_class(&tail, &gamma_sq)? {
                    return Ok(fail(cases, format!("approximant tail left {gamma_sq} over {spec}")));
                }
                if let Err(v) = check_discipline(&w, &disc) {
                    return Ok(fail(cases, format!("approximant word broke its discipline: {v}")));
                }
            }
        }
    }
    Ok(pass(cases, "group elements split as disciplined words times Gamma(pi^2) tails"))
}

fn prop_congruence_orders(cfg: &SuiteConfig, _rng: &mut ChaCha8Rng) -> Result<PropRun> {
    let spec4 = RingSpec::Modular(4);
    let r4 = enumerate_orders(spec4, 3, &Ideal::from_i64(spec4, 2), cfg.enum_limit)?;
    if (r4.omega, r4.gamma, r4.delta, r4.gamma_square) != (256, 256, 64, 1) {
        return Ok(fail(
            1,
            format!(
                "Z/4 orders (omega, gamma, delta, gamma^2) = ({}, {}, {}, {})",
                r4.omega, r4.gamma, r4.delta, r4.gamma_square
            ),
        ));
    }
    if !(r4.gamma_over_delta.matches
        && r4.delta_over_gamma_square.matches
        && r4.omega_over_gamma.matches)
    {
        return Ok(fail(1, "a Z/4 quotient-order prediction missed".to_string()));
    }
    let spec9 = RingSpec::Modular(9);
    let r9 = enumerate_orders(spec9, 2, &Ideal::from_i64(spec9, 3), cfg.enum_limit)?;
    if (r9.omega, r9.gamma, r9.delta, r9.gamma_square) != (54, 27, 9, 1) {
        return Ok(fail(
            2,
            format!(
                "Z/9 orders (omega, gamma, delta, gamma^2) = ({}, {}, {}, {})",
                r9.omega, r9.gamma, r9.delta, r9.gamma_square
            ),
        ));
    }
    if !(r9.gamma_over_delta.matches
        && r9.delta_over_gamma_square.matches
        && r9.omega_over_gamma.matches)
    {
        return Ok(fail(2, "a Z/9 quotient-order prediction missed".to_string()));
    }
    Ok(pass(2, "enumerated class orders match every closed-form prediction"))
}

fn prop_folding_confluence(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<PropRun> {
    let mut cases = 0;
    for _ in 0..cfg.cases.min(60) {
        cases += 1;
        let count = rng.gen_range(2..=4usize);
        let gens: Vec<FreeWord> = (0..count)
            .map(|_| {
                let syllables = rng.gen_range(1..=3usize);
                sample::random_free_word(rng, syllables, 3)
            })
            .collect();
        let auto = SubgroupAutomaton::new(&gens)?;
        let mut shuffled = gens.clone();
        shuffled.shuffle(rng);
        let auto2 = SubgroupAutomaton::new(&shuffled)?;
        if auto.canonical_form() != auto2.canonical_form() {
            return Ok(fail(cases, format!("folding depends on generator order for {gens:?}")));
        }
        if !auto.accepts(&FreeWord::identity()) {
            return Ok(fail(cases, "identity rejected".to_string()));
        }
        for g in &gens {
            if !auto.accepts(g) || !auto.accepts(&g.inverse()) {
                return Ok(fail(cases, format!("generator {g} rejected by its own automaton")));
            }
        }
    }
    Ok(pass(cases, "folded automata are order-independent and accept their generators"))
}

fn prop_stallings_brute_force(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<PropRun> {
    let mut cases = 0;
    for _ in 0..cfg.cases.min(25) {
        cases += 1;
        let n_param = rng.gen_range(4..=6i64);
        let gens = [
            FreeWord::generator(FreeLetter::A, n_param),
            FreeWord::generator(FreeLetter::B, 1),
        ];
        let depth = 4usize;
        let mut closure: HashSet<FreeWord> = HashSet::new();
        closure.insert(FreeWord::identity());
        let mut frontier: Vec<FreeWord> = vec![FreeWord::identity()];
        for _ in 0..depth {
            let mut next = Vec::new();
            for w in &frontier {
                for g in &gens {
                    for step in [g.clone(), g.inverse()] {
                        let u = w.concat(&step);
                        if closure.insert(u.clone()) {
                            next.push(u);
                        }
                    }
                }
            }
            frontier = next;
        }
        // Within the free basis {a^N, b}, a product of k basis letters has
        // at least k letter steps, so depth-limited closure decides all
        // membership questions for words of at most `depth` steps.
        for w in reduced_words_up_to(depth) {
            let folded = stallings_member(&gens, &w)?;
            let brute = closure.contains(&w);
            if folded != brute {
                return Ok(fail(
                    cases,
                    format!("folding and brute force disagree on {w} for <a^{n_param}, b>"),
                ));
            }
        }
        let random_gens: Vec<FreeWord> = (0..rng.gen_range(2..=3usize))
            .map(|_| sample::random_free_word(rng, 2, 2))
            .collect();
        let auto = SubgroupAutomaton::new(&random_gens)?;
        let mut product = FreeWord::identity();
        for _ in 0..4 {
            let g = &random_gens[rng.gen_range(0..random_gens.len())];
            product = if rng.gen::<bool>() {
                product.concat(g)
            } else {
                product.concat(&g.inverse())
            };
            if !auto.accepts(&product) {
                return Ok(fail(cases, format!("product of generators rejected: {product}")));
            }
        }
    }
    Ok(pass(cases, "folding agrees with brute-force membership on basis subgroups"))
}

fn prop_free_word_matrix_homomorphism(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<PropRun> {
    let mut cases = 0;
    for _ in 0..cfg.cases {
        cases += 1;
        let n_param = rng.gen_range(2..=6i64);
        let u = sample::random_free_word(rng, 3, 3);
        let v = sample::random_free_word(rng, 3, 3);
        let um = matrix_of_word(&u, n_param);
        let vm = matrix_of_word(&v, n_param);
        if matrix_of_word(&u.concat(&v), n_param) != um.mul(&vm) {
            return Ok(fail(cases, format!("concat broke the matrix homomorphism at N={n_param}")));
        }
        if matrix_of_word(&u.inverse(), n_param) != um.inverse()? {
            return Ok(fail(cases, format!("inverse broke the matrix homomorphism at N={n_param}")));
        }
    }
    Ok(pass(cases, "the free-word matrix assignment is a group homomorphism"))
}

fn prop_freeness_smoke(_cfg: &SuiteConfig, _rng: &mut ChaCha8Rng) -> Result<PropRun> {
    let mut cases = 0;
    for n_param in [4i64, 5] {
        for w in reduced_words_up_to(8) {
            if w.is_identity() {
                continue;
            }
            cases += 1;
            if matrix_of_word(&w, n_param).is_identity() {
                return Ok(fail(cases, format!("nontrivial word {w} maps to the identity at N={n_param}")));
            }
        }
    }
    Ok(pass(cases, "no nontrivial short word collapses for N=4, 5"))
}

fn prop_zero_ideal_degenerates(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<PropRun> {
    let spec = RingSpec::Integers;
    let pi = Ideal::from_i64(spec, 0);
    let mut cases = 0;
    for _ in 0..cfg.cases {
        cases += 1;
        let x = sample::random_value(rng, spec, 20);
        if pi.contains(&x)? != x.is_zero() {
            return Ok(fail(cases, format!("(0) membership wrong for {x}")));
        }
        if pi.canonical_residue(&x) != x.representative().clone() {
            return Ok(fail(cases, format!("(0) canonical residue changed {x}")));
        }
        let zero = RingValue::zero(spec);
        let (q1, q2) = pi.split_square(&zero)?;
        if !q1.is_zero() || !q2.is_zero() {
            return Ok(fail(cases, "split_square(0) over (0) is not (0, 0)".to_string()));
        }
        let g = sample::random_sl(rng, spec, 3, 3);
        let w = suslin_factorize(&g, 1, 2, &zero)?;
        if !w.evaluate(3, spec)?.is_identity() {
            return Ok(fail(cases, "factorizing a zero letter is not the identity".to_string()));
        }
        let coeff = sample::random_value(rng, spec, 5);
        let letter = GroupExpr::Elem {
            i: 1,
            j: 2,
            a: coeff.clone(),
        };
        if check_discipline(&letter, &Discipline::E(pi.clone())).is_ok() != coeff.is_zero() {
            return Ok(fail(cases, "E((0)) should admit exactly the zero letters".to_string()));
        }
    }
    Ok(pass(cases, "the zero ideal degenerates membership, residues and factorization"))
}

fn prop_corrupted_certificates_fail(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<PropRun> {
    let mut cases = 0;
    for (spec, gen) in ring_ideals() {
        let pi = Ideal::from_i64(spec, gen);
        for &n in &cfg.dims {
            for _ in 0..per_scenario(cfg.cases, 4 * cfg.dims.len()) {
                cases += 1;
                let g = sample::random_omega(rng, n, &pi, 2);
                let (i, j) = sample::distinct_pair(rng, n);
                let a = sample::random_in_ideal(rng, &pi, 3);
                let cert = conjugate_in_f_counted(&g, i, j, &a, &pi)?.0;

                let mut bad = cert.clone();
                bad.witness = GroupExpr::product(vec![
                    bad.witness,
                    GroupExpr::elem(i, j, RingValue::one(spec)),
                ]);
                match bad.verify() {
                    Err(VerifyError::Discipline(_)) => {}
                    other => {
                        return Ok(fail(
                            cases,
                            format!("appending a unit letter was not a discipline violation: {other:?}"),
                        ));
                    }
                }

                let mut bad = cert.clone();
                let old = bad.claim.target.entry(i, j).clone();
                bad.claim
                    .target
                    .set_entry(i, j, &old + &RingValue::one(spec));
                match bad.verify() {
                    Err(VerifyError::TargetMismatch { .. }) | Err(VerifyError::MalformedClaim(_)) => {}
                    other => {
                        return Ok(fail(
                            cases,
                            format!("altering the target was not caught: {other:?}"),
                        ));
                    }
                }

                let mut bad = cert.clone();
                bad.witness = GroupExpr::product(vec![
                    bad.witness,
                    GroupExpr::elem(i, j, pi.generator().clone()),
                ]);
                // The padding letter keeps the discipline, so the only way
                // out is a target mismatch; skip the rare coincidence where
                // the padded product evaluates back to the target.
                if bad.witness.evaluate(n, spec)? != cert.claim.target && bad.verify().is_ok() {
                    return Ok(fail(cases, "a padded witness with an in-ideal letter verified".to_string()));
                }
            }
        }
    }
    Ok(pass(cases, "corrupted certificates fail verification with typed errors"))
}
