//! `suslin` — certificates and counterexamples for elementary and
//! congruence subgroups of `SL_n`, with JSON input and output.
//!
//! Exit codes: 0 on success, 1 when an operation or verification fails on
//! well-formed input, 2 on malformed input or arguments.

use std::fmt;
use std::fmt::Write as _;
use std::io::Read;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use suslin::congruence::{
    approximate_by_elementary, enumerate_orders, preimage_r, reduce_r, squeeze_witness,
    ApproxClass,
};
use suslin::factor::{conjugate_in_e, conjugate_in_f, normal_generator_in_f, reduce_symbol_parts, suslin_factorize};
use suslin::freegroup::{counterexample_report, stallings_member, FreeWord};
use suslin::json::{
    certificate_from_doc, certificate_to_doc, counterexample_to_doc, matrix_from_doc,
    matrix_to_doc, orders_to_doc, reduction_to_doc, residue_from_doc, residue_to_doc,
    word_from_doc, word_to_doc, ApproximationDoc, CertificateDoc, FactorizationDoc, MatrixDoc,
    PreimageDoc, ResidueDoc, WordDoc,
};
use suslin::suite::{run_suite, SuiteConfig};
use suslin::{Error, GroupExpr, Ideal, RingSpec, RingValue, SqMatrix};

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum ClassArg {
    Gamma,
    Delta,
}

#[derive(Parser)]
#[command(
    name = "suslin",
    version,
    about = "Exact certificates for elementary and congruence subgroups of SL_n"
)]
struct Cli {
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Factor g^-1 e_ij(a) g into symbols and elementary letters.
    ///
    /// Reads the matrix g as JSON from --input (default stdin).
    Factorize {
        /// Row index of the elementary letter (1-based).
        #[arg(long)]
        i: usize,
        /// Column index of the elementary letter (1-based).
        #[arg(long)]
        j: usize,
        /// Coefficient of the elementary letter, as a decimal string.
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        /// File with the matrix JSON for g; "-" reads stdin.
        #[arg(long, default_value = "-")]
        input: String,
        /// Cross-check: ring the input matrix must live in.
        #[arg(long)]
        ring: Option<String>,
        /// Cross-check: dimension the input matrix must have.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Emit an F(pi) certificate for g^-1 e_ij(a) g with g in Omega(pi).
    #[command(name = "conjugate-in-f")]
    ConjugateInF {
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
        /// Coefficient in pi, as a decimal string.
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        /// The ideal pi, written "(N)".
        #[arg(long)]
        ideal: String,
        #[arg(long, default_value = "-")]
        input: String,
        #[arg(long)]
        ring: Option<String>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Emit an E(pi) certificate for g^-1 e_ij(a) g with g in SL_n.
    #[command(name = "conjugate-in-e")]
    ConjugateInE {
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
        /// Coefficient in pi, as a decimal string.
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        /// The ideal pi, written "(N)".
        #[arg(long)]
        ideal: String,
        #[arg(long, default_value = "-")]
        input: String,
        #[arg(long)]
        ring: Option<String>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Emit a [F(pi), F(pi)] certificate for c^-1 e_ij(a) c, a in pi^2.
    ///
    /// The conjugator c is a word JSON document from --input; omitting
    /// --input uses the identity word.
    Tits {
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
        /// Coefficient in pi^2, as a decimal string.
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        /// The ideal pi, written "(N)".
        #[arg(long)]
        ideal: String,
        /// Ring spec, "Z" or "Z/<m>".
        #[arg(long)]
        ring: String,
        /// Matrix dimension (at least 3).
        #[arg(long)]
        n: usize,
        /// File with the conjugator word JSON; "-" reads stdin.
        #[arg(long)]
        input: Option<String>,
    },
    /// Rewrite a suspended symbol S(x, y; z) over two multiplier stages.
    #[command(name = "reduce-symbol")]
    ReduceSymbol {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        /// Must lie in the ideal pi.
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        /// Row position of the suspended symbol (1-based).
        #[arg(long)]
        k: usize,
        /// Column position of the suspended symbol (1-based).
        #[arg(long)]
        l: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ring: String,
        #[arg(long)]
        ideal: String,
    },
    /// Apply the reduction homomorphism r(g) = g - 1 to g in Gamma(pi).
    #[command(name = "r-reduce")]
    RReduce {
        /// The ideal pi, written "(N)".
        #[arg(long)]
        ideal: String,
        #[arg(long, default_value = "-")]
        input: String,
        #[arg(long)]
        ring: Option<String>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Lift a residue matrix to an elementary word through r.
    #[command(name = "r-preimage")]
    RPreimage {
        /// Residue-matrix JSON; "-" reads stdin.
        #[arg(long, default_value = "-")]
        input: String,
        /// Cross-check: ideal the residue document must carry.
        #[arg(long)]
        ideal: Option<String>,
        #[arg(long)]
        ring: Option<String>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Split g as (elementary word) * gamma with gamma in Gamma(pi^2).
    Approximate {
        /// Which class the input is claimed in: gamma uses E(pi) letters,
        /// delta uses F(pi) letters.
        #[arg(long, value_enum)]
        class: ClassArg,
        #[arg(long)]
        ideal: String,
        #[arg(long, default_value = "-")]
        input: String,
        #[arg(long)]
        ring: Option<String>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Enumerate congruence-class orders over a finite ring.
    #[command(name = "congruence-orders")]
    CongruenceOrders {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ideal: String,
        /// Abort if more than this many candidate matrices would be scanned.
        #[arg(long, default_value_t = 10_000_000)]
        limit: u64,
    },
    /// Squeeze g in Delta(pi), n >= 3, into an F(pi) word times Gamma(pi^2).
    Squeeze {
        #[arg(long)]
        ideal: String,
        #[arg(long, default_value = "-")]
        input: String,
        #[arg(long)]
        ring: Option<String>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Decide free-group subgroup membership by Stallings folding.
    Stallings {
        /// Comma-separated generator words, e.g. "a^4,b".
        #[arg(long)]
        gens: String,
        /// The word to test, e.g. "a b^4 a^-1".
        #[arg(long)]
        word: String,
    },
    /// Report the SL_2 counterexample data for a given N >= 4.
    Counterexample {
        #[arg(long = "N")]
        n_param: u64,
    },
    /// Re-check a certificate independently of its emitter.
    ///
    /// Reads certificate JSON from PATH (default stdin). Exits 0 when the
    /// discipline and the evaluation both check out, 1 otherwise.
    Verify {
        /// Certificate file; "-" reads stdin.
        #[arg(default_value = "-")]
        path: String,
    },
    /// Run the seeded property suite.
    Suite {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: usize,
        /// Matrix dimensions to exercise; every entry must be at least 3.
        #[arg(long, value_delimiter = ',', default_values_t = vec![3usize, 4])]
        dims: Vec<usize>,
        #[arg(long, default_value_t = 10_000_000)]
        enum_limit: u64,
    },
}

#[derive(Debug)]
enum AppError {
    Core(Error),
    Io(std::io::Error),
    Json(serde_json::Error),
}

impl fmt::Display for AppError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AppError::Core(e) => write!(f, "{e}"),
            AppError::Io(e) => write!(f, "{e}"),
            AppError::Json(e) => write!(f, "invalid JSON: {e}"),
        }
    }
}

impl From<Error> for AppError {
    fn from(e: Error) -> Self {
        AppError::Core(e)
    }
}

impl From<std::io::Error> for AppError {
    fn from(e: std::io::Error) -> Self {
        AppError::Io(e)
    }
}

impl From<serde_json::Error> for AppError {
    fn from(e: serde_json::Error) -> Self {
        AppError::Json(e)
    }
}

impl AppError {
    /// 2 for malformed input or arguments, 1 for failed operations.
    fn code(&self) -> i32 {
        match self {
            AppError::Core(Error::Parse(_)) | AppError::Io(_) | AppError::Json(_) => 2,
            AppError::Core(_) => 1,
        }
    }
}

fn read_input(path: &str) -> Result<String, AppError> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

fn cross_check(
    matrix: &SqMatrix,
    ring: &Option<String>,
    n: &Option<usize>,
) -> Result<(), AppError> {
    if let Some(r) = ring {
        let want = RingSpec::from_str(r)?;
        if matrix.spec() != want {
            return Err(AppError::Core(Error::Parse(format!(
                "input matrix lives in {} but --ring asked for {want}",
                matrix.spec()
            ))));
        }
    }
    if let Some(want) = n {
        if matrix.n() != *want {
            return Err(AppError::Core(Error::Parse(format!(
                "input matrix has n = {} but --n asked for {want}",
                matrix.n()
            ))));
        }
    }
    Ok(())
}

fn read_matrix(
    input: &str,
    ring: &Option<String>,
    n: &Option<usize>,
) -> Result<SqMatrix, AppError> {
    let doc: MatrixDoc = serde_json::from_str(&read_input(input)?)?;
    let m = matrix_from_doc(&doc)?;
    cross_check(&m, ring, n)?;
    Ok(m)
}

fn emit<T: Serialize>(
    format: Format,
    doc: &T,
    text: impl FnOnce() -> String,
) -> Result<(), AppError> {
    match format {
        Format::Json => println!("{}", serde_json::to_string(doc)?),
        Format::Text => print!("{}", text()),
    }
    Ok(())
}

fn certificate_text(doc: &CertificateDoc, cert: &suslin::Certificate) -> String {
    let mut out = String::new();
    let discipline = match doc.claim.ideal.as_deref() {
        Some(i) => format!("{}{}", doc.claim.discipline, i),
        None => doc.claim.discipline.clone(),
    };
    let _ = writeln!(
        out,
        "certificate: {discipline} membership over {}, n = {}",
        doc.claim.ring, doc.claim.n
    );
    let _ = writeln!(out, "target:  {}", cert.claim.target);
    let _ = writeln!(out, "witness: {}", cert.witness);
    out
}

fn run(cli: Cli) -> Result<i32, AppError> {
    let format = cli.format;
    match cli.command {
        Command::Factorize {
            i,
            j,
            a,
            input,
            ring,
            n,
        } => {
            let g = read_matrix(&input, &ring, &n)?;
            let a = RingValue::parse(g.spec(), &a)?;
            let word = suslin_factorize(&g, i, j, &a)?;
            let value = word.evaluate(g.n(), g.spec())?;
            let doc = FactorizationDoc {
                word: word_to_doc(&word),
                value: matrix_to_doc(&value),
            };
            emit(format, &doc, || format!("word:  {word}\nvalue: {value}\n"))?;
        }
        Command::ConjugateInF {
            i,
            j,
            a,
            ideal,
            input,
            ring,
            n,
        } => {
            let g = read_matrix(&input, &ring, &n)?;
            let pi = Ideal::parse(g.spec(), &ideal)?;
            let a = RingValue::parse(g.spec(), &a)?;
            let cert = conjugate_in_f(&g, i, j, &a, &pi)?;
            let doc = certificate_to_doc(&cert);
            emit(format, &doc, || certificate_text(&doc, &cert))?;
        }
        Command::ConjugateInE {
            i,
            j,
            a,
            ideal,
            input,
            ring,
            n,
        } => {
            let g = read_matrix(&input, &ring, &n)?;
            let pi = Ideal::parse(g.spec(), &ideal)?;
            let a = RingValue::parse(g.spec(), &a)?;
            let cert = conjugate_in_e(&g, i, j, &a, &pi)?;
            let doc = certificate_to_doc(&cert);
            emit(format, &doc, || certificate_text(&doc, &cert))?;
        }
        Command::Tits {
            i,
            j,
            a,
            ideal,
            ring,
            n,
            input,
        } => {
            let spec = RingSpec::from_str(&ring)?;
            let pi = Ideal::parse(spec, &ideal)?;
            let a = RingValue::parse(spec, &a)?;
            let conjugator = match input {
                None => GroupExpr::identity(),
                Some(path) => {
                    let doc: WordDoc = serde_json::from_str(&read_input(&path)?)?;
                    word_from_doc(&doc, spec)?
                }
            };
            let cert = normal_generator_in_f(&conjugator, i, j, &a, &pi, n)?;
            let doc = certificate_to_doc(&cert);
            emit(format, &doc, || certificate_text(&doc, &cert))?;
        }
        Command::ReduceSymbol {
            x,
            y,
            z,
            k,
            l,
            n,
            ring,
            ideal,
        } => {
            let spec = RingSpec::from_str(&ring)?;
            let pi = Ideal::parse(spec, &ideal)?;
            let x = RingValue::parse(spec, &x)?;
            let y = RingValue::parse(spec, &y)?;
            let z = RingValue::parse(spec, &z)?;
            let parts = reduce_symbol_parts(&x, &y, &z, k, l, n, &pi)?;
            let doc = reduction_to_doc(&parts, n)?;
            emit(format, &doc, || {
                let expr = parts.expr();
                format!(
                    "word:   {expr}\npair:   ({}, {}) helper {} {}\ninner:  {}\n",
                    parts.pair.0,
                    parts.pair.1,
                    parts.helper,
                    if parts.mirrored { "(mirrored)" } else { "(direct)" },
                    parts.inner
                )
            })?;
        }
        Command::RReduce {
            ideal,
            input,
            ring,
            n,
        } => {
            let g = read_matrix(&input, &ring, &n)?;
            let pi = Ideal::parse(g.spec(), &ideal)?;
            let x = reduce_r(&g, &pi)?;
            let doc = residue_to_doc(&x);
            emit(format, &doc, || {
                let rows: Vec<String> = doc
                    .entries
                    .iter()
                    .map(|row| row.join(", "))
                    .collect();
                format!("residue mod {}^2: [{}]\n", doc.ideal, rows.join("; "))
            })?;
        }
        Command::RPreimage {
            input,
            ideal,
            ring,
            n,
        } => {
            let doc: ResidueDoc = serde_json::from_str(&read_input(&input)?)?;
            if let Some(want) = &ring {
                if &doc.ring != want {
                    return Err(AppError::Core(Error::Parse(format!(
                        "residue document lives in {} but --ring asked for {want}",
                        doc.ring
                    ))));
                }
            }
            if let Some(want) = &ideal {
                if &doc.ideal != want {
                    return Err(AppError::Core(Error::Parse(format!(
                        "residue document carries ideal {} but --ideal asked for {want}",
                        doc.ideal
                    ))));
                }
            }
            if let Some(want) = n {
                if doc.n != want {
                    return Err(AppError::Core(Error::Parse(format!(
                        "residue document has n = {} but --n asked for {want}",
                        doc.n
                    ))));
                }
            }
            let x = residue_from_doc(&doc)?;
            let (g, w) = preimage_r(&x, x.ideal(), x.n())?;
            let out = PreimageDoc {
                matrix: matrix_to_doc(&g),
                word: word_to_doc(&w),
            };
            emit(format, &out, || format!("matrix: {g}\nword:   {w}\n"))?;
        }
        Command::Approximate {
            class,
            ideal,
            input,
            ring,
            n,
        } => {
            let g = read_matrix(&input, &ring, &n)?;
            let pi = Ideal::parse(g.spec(), &ideal)?;
            let class = match class {
                ClassArg::Gamma => ApproxClass::Gamma,
                ClassArg::Delta => ApproxClass::Delta,
            };
            let (w, gamma) = approximate_by_elementary(&g, class, &pi)?;
            let out = ApproximationDoc {
                word: word_to_doc(&w),
                gamma: matrix_to_doc(&gamma),
            };
            emit(format, &out, || format!("word:  {w}\ngamma: {gamma}\n"))?;
        }
        Command::CongruenceOrders {
            ring,
            n,
            ideal,
            limit,
        } => {
            let spec = RingSpec::from_str(&ring)?;
            let pi = Ideal::parse(spec, &ideal)?;
            let report = enumerate_orders(spec, n, &pi, limit)?;
            let doc = orders_to_doc(&report);
            emit(format, &doc, || {
                let mut out = String::new();
                let _ = writeln!(
                    out,
                    "orders over {} with pi = {}, n = {}:",
                    doc.ring, doc.ideal, doc.n
                );
                let _ = writeln!(
                    out,
                    "  |Omega| = {}  |Gamma| = {}  |Delta| = {}  |Gamma(pi^2)| = {}",
                    doc.omega, doc.gamma, doc.delta, doc.gamma_square
                );
                for (name, r) in [
                    ("Gamma/Delta", &doc.gamma_over_delta),
                    ("Delta/Gamma(pi^2)", &doc.delta_over_gamma_square),
                    ("Omega/Gamma", &doc.omega_over_gamma),
                ] {
                    let _ = writeln!(
                        out,
                        "  {name}: {}/{} predicted {} -> {}",
                        r.numerator,
                        r.denominator,
                        r.predicted,
                        if r.matches { "match" } else { "MISMATCH" }
                    );
                }
                out
            })?;
        }
        Command::Squeeze { ideal, input, ring, n } => {
            let g = read_matrix(&input, &ring, &n)?;
            let pi = Ideal::parse(g.spec(), &ideal)?;
            let (w, gamma) = squeeze_witness(&g, &pi)?;
            let out = ApproximationDoc {
                word: word_to_doc(&w),
                gamma: matrix_to_doc(&gamma),
            };
            emit(format, &out, || format!("word:  {w}\ngamma: {gamma}\n"))?;
        }
        Command::Stallings { gens, word } => {
            let generators = gens
                .split(',')
                .map(|s| FreeWord::parse(s.trim()))
                .collect::<Result<Vec<_>, _>>()?;
            let w = FreeWord::parse(&word)?;
            let member = stallings_member(&generators, &w)?;
            #[derive(Serialize)]
            struct StallingsDoc {
                generators: Vec<String>,
                word: String,
                member: bool,
            }
            let doc = StallingsDoc {
                generators: generators.iter().map(|g| g.to_string()).collect(),
                word: w.to_string(),
                member,
            };
            emit(format, &doc, || format!("{member}\n"))?;
        }
        Command::Counterexample { n_param } => {
            let report = counterexample_report(n_param)?;
            let doc = counterexample_to_doc(&report);
            emit(format, &doc, || {
                let mut out = String::new();
                let _ = writeln!(out, "N = {}", doc.n_param);
                let _ = writeln!(out, "omega = {} = {}", doc.omega_word, report.omega);
                let _ = writeln!(
                    out,
                    "omega in Gamma_2((N^2)): {}; in Delta_2((N)): {}",
                    doc.omega_in_gamma_n_square, doc.omega_in_delta_n
                );
                let _ = writeln!(
                    out,
                    "omega outside <a^N, b>: {}; conjugate {} outside: {}",
                    doc.omega_outside_subgroup, doc.conjugate_word, doc.conjugate_outside_subgroup
                );
                let _ = writeln!(out, "hypothesis: {}", doc.freeness_hypothesis);
                out
            })?;
        }
        Command::Verify { path } => {
            let doc: CertificateDoc = serde_json::from_str(&read_input(&path)?)?;
            let cert = certificate_from_doc(&doc)?;
            #[derive(Serialize)]
            struct VerifyDoc {
                valid: bool,
                #[serde(skip_serializing_if = "Option::is_none")]
                error: Option<String>,
            }
            return match cert.verify() {
                Ok(()) => {
                    emit(
                        format,
                        &VerifyDoc {
                            valid: true,
                            error: None,
                        },
                        || "valid\n".to_string(),
                    )?;
                    Ok(0)
                }
                Err(e) => {
                    emit(
                        format,
                        &VerifyDoc {
                            valid: false,
                            error: Some(e.to_string()),
                        },
                        || format!("invalid: {e}\n"),
                    )?;
                    Ok(1)
                }
            };
        }
        Command::Suite {
            seed,
            cases,
            dims,
            enum_limit,
        } => {
            let config = SuiteConfig {
                seed,
                cases,
                dims,
                enum_limit,
            };
            if let Err(e) = config.validate() {
                return Err(AppError::Core(Error::Parse(e.to_string())));
            }
            let report = run_suite(&config)?;
            emit(format, &report, || report.render_text())?;
            return Ok(if report.all_passed() { 0 } else { 1 });
        }
    }
    Ok(0)
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.code()
        }
    };
    std::process::exit(code);
}
