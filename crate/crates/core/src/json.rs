//! JSON wire formats. Entries are decimal strings so arbitrary-precision
//! values survive; rings are `"Z"` or `"Z/<m>"`, ideals `"(<N>)"`, indices
//! 1-based. Parsing a document needs the ring context carried inside it.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::certificate::{Certificate, Claim};
use crate::congruence::{OrdersReport, RatioCheck, SlResidueMatrix};
use crate::error::{Error, Result};
use crate::factor::SymbolReduction;
use crate::freegroup::CounterexampleReport;
use crate::matrix::SqMatrix;
use crate::ring::{Ideal, RingSpec, RingValue};
use crate::word::{Discipline, GroupExpr};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub ring: String,
    pub n: usize,
    pub entries: Vec<Vec<String>>,
}

pub fn matrix_to_doc(m: &SqMatrix) -> MatrixDoc {
    MatrixDoc {
        ring: m.spec().to_string(),
        n: m.n(),
        entries: (1..=m.n())
            .map(|i| (1..=m.n()).map(|j| m.entry(i, j).to_string()).collect())
            .collect(),
    }
}

pub fn matrix_from_doc(doc: &MatrixDoc) -> Result<SqMatrix> {
    let spec = RingSpec::from_str(&doc.ring)?;
    if doc.entries.len() != doc.n || doc.entries.iter().any(|r| r.len() != doc.n) {
        return Err(Error::Parse(format!(
            "matrix document says n = {} but the entry grid is ragged or mis-sized",
            doc.n
        )));
    }
    let rows = doc
        .entries
        .iter()
        .map(|row| {
            row.iter()
                .map(|s| RingValue::parse(spec, s))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    SqMatrix::from_rows(spec, rows)
}

/// Word nodes, tagged by `kind` with deterministic child ordering.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum WordDoc {
    Elem {
        i: usize,
        j: usize,
        a: String,
    },
    Symbol {
        x: String,
        y: String,
        z: String,
        p: usize,
        q: usize,
    },
    Inv {
        inner: Box<WordDoc>,
    },
    Prod {
        factors: Vec<WordDoc>,
    },
    Comm {
        left: Box<WordDoc>,
        right: Box<WordDoc>,
    },
    Conj {
        conjugator: Box<WordDoc>,
        inner: Box<WordDoc>,
    },
}

pub fn word_to_doc(w: &GroupExpr) -> WordDoc {
    match w {
        GroupExpr::Elem { i, j, a } => WordDoc::Elem {
            i: *i,
            j: *j,
            a: a.to_string(),
        },
        GroupExpr::Symbol { x, y, z, p, q } => WordDoc::Symbol {
            x: x.to_string(),
            y: y.to_string(),
            z: z.to_string(),
            p: *p,
            q: *q,
        },
        GroupExpr::Inverse(u) => WordDoc::Inv {
            inner: Box::new(word_to_doc(u)),
        },
        GroupExpr::Product(us) => WordDoc::Prod {
            factors: us.iter().map(word_to_doc).collect(),
        },
        GroupExpr::Commutator(g, h) => WordDoc::Comm {
            left: Box::new(word_to_doc(g)),
            right: Box::new(word_to_doc(h)),
        },
        GroupExpr::Conjugation { conjugator, inner } => WordDoc::Conj {
            conjugator: Box::new(word_to_doc(conjugator)),
            inner: Box::new(word_to_doc(inner)),
        },
    }
}

/// Rebuilds the exact tree (no canonicalization) in the given ring.
pub fn word_from_doc(doc: &WordDoc, spec: RingSpec) -> Result<GroupExpr> {
    Ok(match doc {
        WordDoc::Elem { i, j, a } => GroupExpr::Elem {
            i: *i,
            j: *j,
            a: RingValue::parse(spec, a)?,
        },
        WordDoc::Symbol { x, y, z, p, q } => GroupExpr::Symbol {
            x: RingValue::parse(spec, x)?,
            y: RingValue::parse(spec, y)?,
            z: RingValue::parse(spec, z)?,
            p: *p,
            q: *q,
        },
        WordDoc::Inv { inner } => GroupExpr::Inverse(Box::new(word_from_doc(inner, spec)?)),
        WordDoc::Prod { factors } => GroupExpr::Product(
            factors
                .iter()
                .map(|f| word_from_doc(f, spec))
                .collect::<Result<Vec<_>>>()?,
        ),
        WordDoc::Comm { left, right } => GroupExpr::Commutator(
            Box::new(word_from_doc(left, spec)?),
            Box::new(word_from_doc(right, spec)?),
        ),
        WordDoc::Conj { conjugator, inner } => GroupExpr::Conjugation {
            conjugator: Box::new(word_from_doc(conjugator, spec)?),
            inner: Box::new(word_from_doc(inner, spec)?),
        },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimDoc {
    pub ring: String,
    pub n: usize,
    pub discipline: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal: Option<String>,
    pub target: MatrixDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub claim: ClaimDoc,
    pub witness: WordDoc,
}

fn discipline_from_parts(
    name: &str,
    ideal: Option<&str>,
    spec: RingSpec,
) -> Result<Discipline> {
    if name == "unrestricted" {
        return Ok(Discipline::Unrestricted);
    }
    let ideal_text = ideal.ok_or_else(|| {
        Error::Parse(format!("discipline {name:?} requires an \"ideal\" field"))
    })?;
    let pi = Ideal::parse(spec, ideal_text)?;
    match name {
        "F" => Ok(Discipline::F(pi)),
        "E" => Ok(Discipline::E(pi)),
        "commF" => Ok(Discipline::CommF(pi)),
        other => Err(Error::Parse(format!(
            "unknown discipline {other:?}: expected F, E, commF or unrestricted"
        ))),
    }
}

pub fn certificate_to_doc(cert: &Certificate) -> CertificateDoc {
    CertificateDoc {
        claim: ClaimDoc {
            ring: cert.claim.ring.to_string(),
            n: cert.claim.n,
            discipline: cert.claim.discipline.name().to_string(),
            ideal: cert.claim.discipline.ideal().map(|i| i.to_string()),
            target: matrix_to_doc(&cert.claim.target),
        },
        witness: word_to_doc(&cert.witness),
    }
}

pub fn certificate_from_doc(doc: &CertificateDoc) -> Result<Certificate> {
    let ring = RingSpec::from_str(&doc.claim.ring)?;
    if doc.claim.target.ring != doc.claim.ring {
        return Err(Error::Parse(format!(
            "claim ring {} differs from target ring {}",
            doc.claim.ring, doc.claim.target.ring
        )));
    }
    let discipline = discipline_from_parts(&doc.claim.discipline, doc.claim.ideal.as_deref(), ring)?;
    let target = matrix_from_doc(&doc.claim.target)?;
    let witness = word_from_doc(&doc.witness, ring)?;
    Ok(Certificate::new(
        Claim {
            ring,
            n: doc.claim.n,
            discipline,
            target,
        },
        witness,
    ))
}

/// A trace-zero residue matrix; entries are canonical modulo `pi^2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueDoc {
    pub ring: String,
    pub ideal: String,
    pub n: usize,
    pub entries: Vec<Vec<String>>,
}

pub fn residue_to_doc(x: &SlResidueMatrix) -> ResidueDoc {
    ResidueDoc {
        ring: x.spec().to_string(),
        ideal: x.ideal().to_string(),
        n: x.n(),
        entries: x
            .canonical_entries()
            .iter()
            .map(|row| row.iter().map(|e| e.to_string()).collect())
            .collect(),
    }
}

pub fn residue_from_doc(doc: &ResidueDoc) -> Result<SlResidueMatrix> {
    let spec = RingSpec::from_str(&doc.ring)?;
    let ideal = Ideal::parse(spec, &doc.ideal)?;
    if doc.entries.len() != doc.n || doc.entries.iter().any(|r| r.len() != doc.n) {
        return Err(Error::Parse(format!(
            "residue document says n = {} but the entry grid is ragged or mis-sized",
            doc.n
        )));
    }
    let entries = doc
        .entries
        .iter()
        .map(|row| {
            row.iter()
                .map(|s| RingValue::parse(spec, s))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    SlResidueMatrix::new(ideal, doc.n, entries)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioDoc {
    pub numerator: String,
    pub denominator: String,
    pub predicted: String,
    pub matches: bool,
}

fn ratio_to_doc(r: &RatioCheck) -> RatioDoc {
    RatioDoc {
        numerator: r.numerator.to_string(),
        denominator: r.denominator.to_string(),
        predicted: r.predicted.to_string(),
        matches: r.matches,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrdersDoc {
    pub ring: String,
    pub n: usize,
    pub ideal: String,
    pub omega: String,
    pub gamma: String,
    pub delta: String,
    pub gamma_square: String,
    pub index_pi_mod_pi2: String,
    pub gamma_over_delta: RatioDoc,
    pub delta_over_gamma_square: RatioDoc,
    pub omega_over_gamma: RatioDoc,
}

pub fn orders_to_doc(r: &OrdersReport) -> OrdersDoc {
    OrdersDoc {
        ring: r.ring.to_string(),
        n: r.n,
        ideal: r.ideal.to_string(),
        omega: r.omega.to_string(),
        gamma: r.gamma.to_string(),
        delta: r.delta.to_string(),
        gamma_square: r.gamma_square.to_string(),
        index_pi_mod_pi2: r.index_pi_mod_pi2.to_string(),
        gamma_over_delta: ratio_to_doc(&r.gamma_over_delta),
        delta_over_gamma_square: ratio_to_doc(&r.delta_over_gamma_square),
        omega_over_gamma: ratio_to_doc(&r.omega_over_gamma),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleDoc {
    pub n_param: u64,
    pub generators: Vec<String>,
    pub omega_word: String,
    pub omega: MatrixDoc,
    pub omega_in_gamma_n_square: bool,
    pub omega_in_delta_n: bool,
    pub omega_outside_subgroup: bool,
    pub conjugate_word: String,
    pub conjugate_outside_subgroup: bool,
    pub freeness_hypothesis: String,
}

pub fn counterexample_to_doc(r: &CounterexampleReport) -> CounterexampleDoc {
    CounterexampleDoc {
        n_param: r.n_param,
        generators: r.generators.iter().map(|g| g.to_string()).collect(),
        omega_word: r.omega_word.to_string(),
        omega: matrix_to_doc(&r.omega),
        omega_in_gamma_n_square: r.omega_in_gamma_n_square,
        omega_in_delta_n: r.omega_in_delta_n,
        omega_outside_subgroup: r.omega_outside_subgroup,
        conjugate_word: r.conjugate_word.to_string(),
        conjugate_outside_subgroup: r.conjugate_outside_subgroup,
        freeness_hypothesis: r.freeness_hypothesis.to_string(),
    }
}

/// Output of the factorization and word-emitting commands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationDoc {
    pub word: WordDoc,
    pub value: MatrixDoc,
}

/// Output of approximation and squeeze commands: `g = eval(word) * gamma`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApproximationDoc {
    pub word: WordDoc,
    pub gamma: MatrixDoc,
}

/// Output of the residue preimage command.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreimageDoc {
    pub matrix: MatrixDoc,
    pub word: WordDoc,
}

/// Output of the symbol-reduction command, staging data included.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionDoc {
    pub word: WordDoc,
    pub value: MatrixDoc,
    pub mirrored: bool,
    pub pair: [usize; 2],
    pub helper: usize,
    pub x: String,
    pub y: String,
    pub z: String,
    pub left: WordDoc,
    pub inner: WordDoc,
    pub right: WordDoc,
    pub inner_value: MatrixDoc,
}

pub fn reduction_to_doc(r: &SymbolReduction, n: usize) -> Result<ReductionDoc> {
    let spec = r.x.spec();
    let word = r.expr();
    Ok(ReductionDoc {
        value: matrix_to_doc(&word.evaluate(n, spec)?),
        word: word_to_doc(&word),
        mirrored: r.mirrored,
        pair: [r.pair.0, r.pair.1],
        helper: r.helper,
        x: r.x.to_string(),
        y: r.y.to_string(),
        z: r.z.to_string(),
        left: word_to_doc(&r.left),
        inner: word_to_doc(&r.inner),
        right: word_to_doc(&r.right),
        inner_value: matrix_to_doc(&r.inner_value(n)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::conjugate_in_f;
    use crate::ring::RingSpec;

    fn z() -> RingSpec {
        RingSpec::Integers
    }

    fn rv(spec: RingSpec, v: i64) -> RingValue {
        RingValue::from_i64(spec, v)
    }

    #[test]
    fn matrix_doc_round_trip() {
        for spec in [z(), RingSpec::Modular(12)] {
            let m = SqMatrix::from_i64_rows(spec, &[&[1, -5, 0], &[0, 1, 7], &[0, 0, 1]]).unwrap();
            let doc = matrix_to_doc(&m);
            assert_eq!(matrix_from_doc(&doc).unwrap(), m);
            let text = serde_json::to_string(&doc).unwrap();
            let back: MatrixDoc = serde_json::from_str(&text).unwrap();
            assert_eq!(back, doc);
        }
    }

    #[test]
    fn matrix_doc_shape_is_validated() {
        let doc = MatrixDoc {
            ring: "Z".into(),
            n: 2,
            entries: vec![vec!["1".into()], vec!["0".into(), "1".into()]],
        };
        assert!(matrix_from_doc(&doc).is_err());
        let doc = MatrixDoc {
            ring: "Q".into(),
            n: 1,
            entries: vec![vec!["1".into()]],
        };
        assert!(matches!(matrix_from_doc(&doc), Err(Error::Parse(_))));
    }

    #[test]
    fn word_doc_round_trip() {
        let w = GroupExpr::product(vec![
            GroupExpr::commutator(
                GroupExpr::elem(1, 2, rv(z(), 2)),
                GroupExpr::elem(2, 3, rv(z(), -4)),
            ),
            GroupExpr::conjugation(
                GroupExpr::elem(3, 1, rv(z(), 1)),
                GroupExpr::inverse(GroupExpr::symbol(
                    rv(z(), 1),
                    rv(z(), 2),
                    rv(z(), 3),
                    2,
                    1,
                )),
            ),
        ]);
        let doc = word_to_doc(&w);
        assert_eq!(word_from_doc(&doc, z()).unwrap(), w);
        let text = serde_json::to_string(&doc).unwrap();
        let back: WordDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(word_from_doc(&back, z()).unwrap(), w);
    }

    #[test]
    fn word_doc_kind_tags_are_stable() {
        let doc = word_to_doc(&GroupExpr::elem(1, 2, rv(z(), 6)));
        let text = serde_json::to_string(&doc).unwrap();
        assert_eq!(text, r#"{"kind":"elem","i":1,"j":2,"a":"6"}"#);
    }

    #[test]
    fn certificate_doc_round_trip() {
        let pi = Ideal::from_i64(z(), 3);
        let g = SqMatrix::from_i64_rows(z(), &[&[2, 3, 0], &[3, 5, 0], &[0, 0, 1]]).unwrap();
        let cert = conjugate_in_f(&g, 1, 2, &rv(z(), 3), &pi).unwrap();
        let doc = certificate_to_doc(&cert);
        let back = certificate_from_doc(&doc).unwrap();
        assert_eq!(back, cert);
        back.verify().unwrap();

        let text = serde_json::to_string(&doc).unwrap();
        let reparsed: CertificateDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(certificate_from_doc(&reparsed).unwrap(), cert);
    }

    #[test]
    fn certificate_doc_requires_consistent_rings_and_ideal() {
        let pi = Ideal::from_i64(z(), 3);
        let cert = conjugate_in_f(
            &SqMatrix::identity(z(), 3),
            1,
            2,
            &rv(z(), 3),
            &pi,
        )
        .unwrap();
        let mut doc = certificate_to_doc(&cert);
        doc.claim.target.ring = "Z/4".into();
        assert!(certificate_from_doc(&doc).is_err());

        let mut doc = certificate_to_doc(&cert);
        doc.claim.ideal = None;
        assert!(certificate_from_doc(&doc).is_err());

        let mut doc = certificate_to_doc(&cert);
        doc.claim.discipline = "G".into();
        assert!(certificate_from_doc(&doc).is_err());
    }

    #[test]
    fn residue_doc_round_trip() {
        let spec = RingSpec::Modular(8);
        let pi = Ideal::from_i64(spec, 2);
        let x = SlResidueMatrix::new(
            pi,
            2,
            vec![
                vec![rv(spec, 2), rv(spec, 4)],
                vec![rv(spec, 6), rv(spec, 2)],
            ],
        )
        .unwrap();
        let doc = residue_to_doc(&x);
        assert_eq!(residue_from_doc(&doc).unwrap(), x);
    }

    #[test]
    fn orders_doc_serializes() {
        let spec = RingSpec::Modular(4);
        let pi = Ideal::from_i64(spec, 2);
        let report = crate::congruence::enumerate_orders(spec, 2, &pi, 1_000_000).unwrap();
        let doc = orders_to_doc(&report);
        let text = serde_json::to_string(&doc).unwrap();
        assert!(text.contains("\"gamma_over_delta\""));
    }

    #[test]
    fn counterexample_doc_serializes() {
        let report = crate::freegroup::counterexample_report(4).unwrap();
        let doc = counterexample_to_doc(&report);
        assert_eq!(doc.omega_word, "a b^4 a^-1");
        assert!(doc.omega_outside_subgroup);
        let text = serde_json::to_string(&doc).unwrap();
        let back: CounterexampleDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(back, doc);
    }
}
