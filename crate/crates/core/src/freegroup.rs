//! The rank-2 free group, subgroup membership through Stallings foldings,
//! and the 2 x 2 counterexample showing why dimension 3 is needed.
//!
//! Words in the letters `a`, `b` map to `SL_2(Z)` by `a -> e_12(1)`,
//! `b -> e_21(N)`. For `N >= 4` this representation is faithful (a standard
//! ping-pong hypothesis, recorded — not proved — by this module), so
//! free-group membership certifies matrix-group non-membership: the word
//! `a b^N a^-1` maps into `Gamma_2((N^2))` and `Delta_2((N))` yet lies
//! outside the subgroup generated by `a^N` and `b`.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::matrix::{in_class, CongruenceClass, SqMatrix};
use crate::ring::{Ideal, RingSpec, RingValue};

/// A generator of the rank-2 free group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FreeLetter {
    A,
    B,
}

impl FreeLetter {
    fn index(self) -> usize {
        match self {
            FreeLetter::A => 0,
            FreeLetter::B => 1,
        }
    }

    fn symbol(self) -> char {
        match self {
            FreeLetter::A => 'a',
            FreeLetter::B => 'b',
        }
    }
}

/// A freely reduced word: syllables with nonzero exponents, adjacent
/// syllables on distinct letters.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FreeWord {
    syllables: Vec<(FreeLetter, i64)>,
}

impl FreeWord {
    /// Reduces an arbitrary syllable list.
    pub fn new(syllables: Vec<(FreeLetter, i64)>) -> FreeWord {
        let mut reduced: Vec<(FreeLetter, i64)> = Vec::new();
        for (letter, exp) in syllables {
            if exp == 0 {
                continue;
            }
            match reduced.last_mut() {
                Some((last, e)) if *last == letter => {
                    *e += exp;
                    if *e == 0 {
                        reduced.pop();
                    }
                }
                _ => reduced.push((letter, exp)),
            }
        }
        FreeWord { syllables: reduced }
    }

    pub fn identity() -> FreeWord {
        FreeWord::default()
    }

    pub fn generator(letter: FreeLetter, exp: i64) -> FreeWord {
        FreeWord::new(vec![(letter, exp)])
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn syllables(&self) -> &[(FreeLetter, i64)] {
        &self.syllables
    }

    /// Reduced length, the sum of absolute exponents.
    pub fn len(&self) -> u64 {
        self.syllables.iter().map(|(_, e)| e.unsigned_abs()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.is_identity()
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|&(l, e)| (l, -e))
                .collect(),
        }
    }

    pub fn concat(&self, other: &FreeWord) -> FreeWord {
        let mut syl = self.syllables.clone();
        syl.extend_from_slice(&other.syllables);
        FreeWord::new(syl)
    }

    /// Unit steps `(letter, inverse?)` spelling the word left to right.
    pub fn steps(&self) -> impl Iterator<Item = (FreeLetter, bool)> + '_ {
        self.syllables.iter().flat_map(|&(l, e)| {
            std::iter::repeat((l, e < 0)).take(e.unsigned_abs() as usize)
        })
    }

    /// Parses words like `a b^4 a^-1`; `1` or an empty string is the
    /// identity.
    pub fn parse(text: &str) -> Result<FreeWord> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.is_empty() || tokens == ["1"] {
            return Ok(FreeWord::identity());
        }
        let mut syllables = Vec::new();
        for tok in tokens {
            let mut chars = tok.chars();
            let letter = match chars.next() {
                Some('a') => FreeLetter::A,
                Some('b') => FreeLetter::B,
                other => {
                    return Err(Error::Parse(format!(
                        "expected generator a or b in token {tok:?}, found {other:?}"
                    )))
                }
            };
            let rest = chars.as_str();
            let exp = if rest.is_empty() {
                1
            } else if let Some(num) = rest.strip_prefix('^') {
                num.parse::<i64>().map_err(|e| {
                    Error::Parse(format!("bad exponent in token {tok:?}: {e}"))
                })?
            } else {
                return Err(Error::Parse(format!(
                    "expected ^exponent after generator in token {tok:?}"
                )));
            };
            syllables.push((letter, exp));
        }
        Ok(FreeWord::new(syllables))
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for &(l, e) in &self.syllables {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", l.symbol())?;
            } else {
                write!(f, "{}^{}", l.symbol(), e)?;
            }
        }
        Ok(())
    }
}

/// The folded Stallings graph of a finitely generated subgroup of the
/// rank-2 free group, in canonical (breadth-first) numbering with
/// basepoint `0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupAutomaton {
    forward: Vec<[Option<usize>; 2]>,
    backward: Vec<[Option<usize>; 2]>,
}

struct Folder {
    parent: Vec<usize>,
    edges: Vec<(usize, usize, usize)>, // (source, letter, target)
}

impl Folder {
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            false
        } else {
            self.parent[rb] = ra;
            true
        }
    }

    fn fresh(&mut self) -> usize {
        let v = self.parent.len();
        self.parent.push(v);
        v
    }

    /// Merges vertices until every vertex has at most one in- and one
    /// out-edge per letter.
    fn fold(&mut self) {
        loop {
            let mut merged = false;
            let mut out: Vec<(usize, usize, usize)> = Vec::with_capacity(self.edges.len());
            let mut inn: Vec<(usize, usize, usize)> = Vec::with_capacity(self.edges.len());
            for k in 0..self.edges.len() {
                let (u, l, v) = self.edges[k];
                let (u, v) = (self.find(u), self.find(v));
                if let Some(&(_, _, v2)) = out.iter().find(|&&(u2, l2, _)| u2 == u && l2 == l) {
                    if v != v2 {
                        self.union(v, v2);
                        merged = true;
                        break;
                    }
                } else {
                    out.push((u, l, v));
                }
                if let Some(&(u2, _, _)) = inn.iter().find(|&&(_, l2, v2)| v2 == v && l2 == l) {
                    if u != u2 {
                        self.union(u, u2);
                        merged = true;
                        break;
                    }
                } else {
                    inn.push((u, l, v));
                }
            }
            if !merged {
                return;
            }
        }
    }
}

impl SubgroupAutomaton {
    /// Folds the flower of the generator words.
    pub fn new(generators: &[FreeWord]) -> Result<SubgroupAutomaton> {
        if generators.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        let mut folder = Folder {
            parent: vec![0],
            edges: Vec::new(),
        };
        let base = 0;
        for word in generators {
            let steps: Vec<(FreeLetter, bool)> = word.steps().collect();
            let mut cur = base;
            for (k, &(letter, inv)) in steps.iter().enumerate() {
                let next = if k + 1 == steps.len() {
                    base
                } else {
                    folder.fresh()
                };
                if inv {
                    folder.edges.push((next, letter.index(), cur));
                } else {
                    folder.edges.push((cur, letter.index(), next));
                }
                cur = next;
            }
        }
        folder.fold();

        // Deterministic transition tables on representatives.
        let size = folder.parent.len();
        let mut forward = vec![[None; 2]; size];
        let mut backward = vec![[None; 2]; size];
        for k in 0..folder.edges.len() {
            let (u, l, v) = folder.edges[k];
            let (u, v) = (folder.find(u), folder.find(v));
            forward[u][l] = Some(v);
            backward[v][l] = Some(u);
        }

        // Canonical breadth-first renumbering from the basepoint.
        let root = folder.find(base);
        let mut order = vec![usize::MAX; size];
        let mut queue = VecDeque::from([root]);
        order[root] = 0;
        let mut next_id = 1;
        let mut bfs = vec![root];
        while let Some(v) = queue.pop_front() {
            for nb in [forward[v][0], backward[v][0], forward[v][1], backward[v][1]]
                .into_iter()
                .flatten()
            {
                if order[nb] == usize::MAX {
                    order[nb] = next_id;
                    next_id += 1;
                    queue.push_back(nb);
                    bfs.push(nb);
                }
            }
        }
        let mut fw = vec![[None; 2]; next_id];
        let mut bw = vec![[None; 2]; next_id];
        for &v in &bfs {
            for l in 0..2 {
                fw[order[v]][l] = forward[v][l].map(|t| order[t]);
                bw[order[v]][l] = backward[v][l].map(|t| order[t]);
            }
        }
        Ok(SubgroupAutomaton {
            forward: fw,
            backward: bw,
        })
    }

    pub fn states(&self) -> usize {
        self.forward.len()
    }

    /// Rows `[a-out, a-in, b-out, b-in]` per state in canonical order;
    /// equal subgroup graphs give equal tables regardless of generator
    /// order.
    pub fn canonical_form(&self) -> Vec<[Option<usize>; 4]> {
        (0..self.states())
            .map(|v| {
                [
                    self.forward[v][0],
                    self.backward[v][0],
                    self.forward[v][1],
                    self.backward[v][1],
                ]
            })
            .collect()
    }

    /// Whether the word traces a closed path at the basepoint.
    pub fn accepts(&self, word: &FreeWord) -> bool {
        let mut state = 0usize;
        for (letter, inv) in word.steps() {
            let next = if inv {
                self.backward[state][letter.index()]
            } else {
                self.forward[state][letter.index()]
            };
            match next {
                Some(v) => state = v,
                None => return false,
            }
        }
        state == 0
    }
}

/// Membership of `word` in the subgroup generated by `generators`.
pub fn stallings_member(generators: &[FreeWord], word: &FreeWord) -> Result<bool> {
    Ok(SubgroupAutomaton::new(generators)?.accepts(word))
}

/// The representation `a -> e_12(1)`, `b -> e_21(N)` into `SL_2(Z)`.
pub fn matrix_of_word(word: &FreeWord, n_param: i64) -> SqMatrix {
    let spec = RingSpec::Integers;
    let mut acc = SqMatrix::identity(spec, 2);
    for &(letter, exp) in word.syllables() {
        let m = match letter {
            FreeLetter::A => SqMatrix::elementary(
                spec,
                2,
                1,
                2,
                RingValue::new(spec, BigInt::from(exp)),
            ),
            FreeLetter::B => SqMatrix::elementary(
                spec,
                2,
                2,
                1,
                RingValue::new(spec, BigInt::from(exp) * n_param),
            ),
        }
        .expect("2x2 elementary");
        acc = acc.mul(&m);
    }
    acc
}

/// All freely reduced words of reduced length at most `max_len`, the
/// identity included.
pub fn reduced_words_up_to(max_len: usize) -> Vec<FreeWord> {
    let mut out = vec![FreeWord::identity()];
    let mut frontier: Vec<Vec<(FreeLetter, i64)>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for steps in &frontier {
            for (letter, sign) in [
                (FreeLetter::A, 1i64),
                (FreeLetter::A, -1),
                (FreeLetter::B, 1),
                (FreeLetter::B, -1),
            ] {
                if let Some(&(last, s)) = steps.last() {
                    if last == letter && s == -sign {
                        continue;
                    }
                }
                let mut ext = steps.clone();
                ext.push((letter, sign));
                next.push(ext);
            }
        }
        for steps in &next {
            out.push(FreeWord::new(steps.clone()));
        }
        frontier = next;
    }
    out
}

/// The dimension-2 counterexample: `omega = a b^N a^-1` maps deep into the
/// congruence lattice while folding places it, and its conjugate of `a^N`,
/// outside the subgroup generated by `a^N` and `b`.
#[derive(Clone, Debug)]
pub struct CounterexampleReport {
    pub n_param: u64,
    pub generators: Vec<FreeWord>,
    pub omega_word: FreeWord,
    pub omega: SqMatrix,
    /// `omega` lies in `Gamma_2((N^2))`.
    pub omega_in_gamma_n_square: bool,
    /// `omega` lies in `Delta_2((N))`.
    pub omega_in_delta_n: bool,
    /// Folding rejects `omega` from the subgroup.
    pub omega_outside_subgroup: bool,
    pub conjugate_word: FreeWord,
    /// Folding rejects `omega^-1 a^N omega` from the subgroup.
    pub conjugate_outside_subgroup: bool,
    /// The unproved input this report relies on.
    pub freeness_hypothesis: &'static str,
}

pub const FREENESS_HYPOTHESIS: &str = "for N >= 4 the matrices e_12(1) and e_21(N) \
generate a free group, so word arithmetic decides matrix membership";

pub fn counterexample_report(n_param: u64) -> Result<CounterexampleReport> {
    if n_param < 4 {
        return Err(Error::CounterexampleRange(n_param));
    }
    let n_i64 = i64::try_from(n_param)
        .map_err(|_| Error::Parse(format!("N = {n_param} does not fit a signed exponent")))?;
    let spec = RingSpec::Integers;

    let a_pow = FreeWord::generator(FreeLetter::A, n_i64);
    let b = FreeWord::generator(FreeLetter::B, 1);
    let generators = vec![a_pow.clone(), b];

    let omega_word = FreeWord::new(vec![
        (FreeLetter::A, 1),
        (FreeLetter::B, n_i64),
        (FreeLetter::A, -1),
    ]);
    let omega = matrix_of_word(&omega_word, n_i64);

    let big_n = BigInt::from(n_param);
    let ideal_n = Ideal::new(RingValue::new(spec, big_n.clone()));
    let ideal_n2 = Ideal::new(RingValue::new(spec, &big_n * &big_n));
    let omega_in_gamma_n_square =
        in_class(&omega, &CongruenceClass::gamma(ideal_n2, 2)?)?;
    let omega_in_delta_n = in_class(&omega, &CongruenceClass::delta(ideal_n, 2)?)?;

    let automaton = SubgroupAutomaton::new(&generators)?;
    let omega_outside_subgroup = !automaton.accepts(&omega_word);
    let conjugate_word = omega_word
        .inverse()
        .concat(&a_pow)
        .concat(&omega_word);
    let conjugate_outside_subgroup = !automaton.accepts(&conjugate_word);

    Ok(CounterexampleReport {
        n_param,
        generators,
        omega_word,
        omega,
        omega_in_gamma_n_square,
        omega_in_delta_n,
        omega_outside_subgroup,
        conjugate_word,
        conjugate_outside_subgroup,
        freeness_hypothesis: FREENESS_HYPOTHESIS,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> FreeWord {
        FreeWord::parse(text).unwrap()
    }

    #[test]
    fn parse_reduce_display_round_trip() {
        let word = w("a b^4 a^-1");
        assert_eq!(word.len(), 6);
        assert_eq!(word.to_string(), "a b^4 a^-1");
        assert_eq!(FreeWord::parse(&word.to_string()).unwrap(), word);

        assert!(w("").is_identity());
        assert!(w("1").is_identity());
        assert!(w("a a^-1").is_identity());
        assert_eq!(w("a a b b^-1 a").to_string(), "a^3");
        assert_eq!(w("b^0 a^2").to_string(), "a^2");

        assert!(FreeWord::parse("c").is_err());
        assert!(FreeWord::parse("a^x").is_err());
        assert!(FreeWord::parse("ab").is_err());
    }

    #[test]
    fn inverse_and_concat() {
        let word = w("a b^4 a^-1");
        assert_eq!(word.inverse().to_string(), "a b^-4 a^-1");
        assert!(word.concat(&word.inverse()).is_identity());
        assert_eq!(w("a b").concat(&w("b^-1 a")).to_string(), "a^2");
    }

    #[test]
    fn single_petal_automaton() {
        let auto = SubgroupAutomaton::new(&[w("a")]).unwrap();
        assert_eq!(auto.states(), 1);
        assert!(auto.accepts(&w("a")));
        assert!(auto.accepts(&w("a^-5")));
        assert!(auto.accepts(&w("1")));
        assert!(!auto.accepts(&w("b")));
        assert!(!auto.accepts(&w("a b")));
    }

    #[test]
    fn index_two_subgroup() {
        let auto = SubgroupAutomaton::new(&[w("a^2"), w("b")]).unwrap();
        assert_eq!(auto.states(), 2);
        assert!(auto.accepts(&w("a^2")));
        assert!(auto.accepts(&w("b^7")));
        assert!(auto.accepts(&w("a^2 b a^-2")));
        assert!(auto.accepts(&w("a^4 b^-1")));
        assert!(!auto.accepts(&w("a")));
        assert!(!auto.accepts(&w("a b a^-1")));
    }

    #[test]
    fn folding_discovers_hidden_generators() {
        // <a b, a b^2> contains b = (a b)^-1 (a b^2), hence also a, so it
        // is the whole group: the folded automaton is the one-state rose.
        let auto = SubgroupAutomaton::new(&[w("a b"), w("a b^2")]).unwrap();
        assert!(auto.accepts(&w("b")));
        assert!(auto.accepts(&w("a")));
        assert_eq!(auto.states(), 1);

        // <a b a^-1, a b^2 a^-1> contains a b a^-1 conjugates only: a stays out.
        let auto = SubgroupAutomaton::new(&[w("a b a^-1"), w("a b^2 a^-1")]).unwrap();
        assert!(auto.accepts(&w("a b a^-1")));
        assert!(auto.accepts(&w("a b^5 a^-1")));
        assert!(!auto.accepts(&w("a")));
        assert!(!auto.accepts(&w("b")));
    }

    #[test]
    fn folding_is_confluent() {
        let gens1 = [w("a b a^-1"), w("a^2"), w("b a b")];
        let gens2 = [w("b a b"), w("a b a^-1"), w("a^2")];
        let auto1 = SubgroupAutomaton::new(&gens1).unwrap();
        let auto2 = SubgroupAutomaton::new(&gens2).unwrap();
        assert_eq!(auto1.canonical_form(), auto2.canonical_form());
        assert_eq!(auto1, auto2);
    }

    #[test]
    fn empty_generator_list_is_refused() {
        assert!(matches!(
            SubgroupAutomaton::new(&[]),
            Err(Error::EmptyGenerators)
        ));
    }

    #[test]
    fn matrix_image_of_words() {
        let omega = matrix_of_word(&w("a b^4 a^-1"), 4);
        assert_eq!(
            omega,
            SqMatrix::from_i64_rows(
                RingSpec::Integers,
                &[&[17, -16], &[16, -15]]
            )
            .unwrap()
        );
        assert!(matrix_of_word(&w("a a^-1"), 5).is_identity());
    }

    #[test]
    fn counterexample_at_four() {
        let report = counterexample_report(4).unwrap();
        assert!(report.omega_in_gamma_n_square);
        assert!(report.omega_in_delta_n);
        assert!(report.omega_outside_subgroup);
        assert!(report.conjugate_outside_subgroup);
        assert_eq!(report.conjugate_word, w("a b^-4 a^4 b^4 a^-1"));
        assert!(matches!(
            counterexample_report(3),
            Err(Error::CounterexampleRange(3))
        ));
    }

    #[test]
    fn folding_matches_brute_force_products() {
        // Subgroup <a^4, b>: compare folding against explicit products of at
        // most 4 basis letters, restricted to reduced length at most 4.
        let gens = [w("a^4"), w("b")];
        let auto = SubgroupAutomaton::new(&gens).unwrap();
        let basis = [
            w("a^4"),
            w("a^-4"),
            w("b"),
            w("b^-1"),
        ];
        let mut members = std::collections::HashSet::new();
        members.insert(FreeWord::identity());
        let mut layer = vec![FreeWord::identity()];
        for _ in 0..4 {
            let mut next = Vec::new();
            for word in &layer {
                for g in &basis {
                    let prod = word.concat(g);
                    if members.insert(prod.clone()) {
                        next.push(prod);
                    }
                }
            }
            layer = next;
        }
        for word in reduced_words_up_to(4) {
            let by_products = members.contains(&word) && word.len() <= 4;
            assert_eq!(
                auto.accepts(&word),
                by_products,
                "membership disagreement on {word}"
            );
        }
    }
}
