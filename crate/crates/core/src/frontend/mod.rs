//! Presentation/expression parsing, deterministic printing, and the CLI.
//!
//! [`run_command`] is the whole command-line interface as a pure-ish function
//! from argv to (exit code, stdout, stderr): identical inputs produce
//! byte-identical outputs. Exit codes: 0 success, 1 domain error, 2 usage
//! error. `--format json` emits one structured record per invocation.

pub mod parse;
pub mod print;

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value as Json};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::coeffs::{
    genericity_check, CoeffError, FieldMode, Fp, GenericityCertificate, Integer, RatFunc,
    Rational, Scalar,
};
use crate::completion::{Completion, ConjectureVerdict, SeriesError};
use crate::elements::ElementError;
use crate::exponents::{ExponentVector, MonomialOrder, OrderError};
use crate::presentation::{extend_scalars, Presentation, PresentationError};
use crate::valuation::{
    classify, compare_valuations, maximal_rank, power_value_bound, val, ComparisonConfig,
    ComparisonCounterexample, PowerBoundReport, ValuationError,
};

use parse::{
    build_presentation, order_from_doc, parse_element, parse_exponent_vector,
    parse_integer_matrix, parse_order_spec, PresentationDoc,
};
use print::{presentation_to_doc, print_element, print_series};

#[derive(Error, Debug)]
pub enum FrontendError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("{message}")]
    Document { message: String },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Element(#[from] ElementError),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Valuation(#[from] ValuationError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// A typed presentation of any supported coefficient mode.
#[derive(Clone)]
pub enum AnyPresentation {
    Q(Arc<Presentation<Rational>>),
    F(Arc<Presentation<Fp>>),
    T(Arc<Presentation<RatFunc>>),
    Z(Arc<Presentation<Integer>>),
}

macro_rules! dispatch {
    ($any:expr, $p:ident => $body:expr) => {
        match $any {
            AnyPresentation::Q($p) => $body,
            AnyPresentation::F($p) => $body,
            AnyPresentation::T($p) => $body,
            AnyPresentation::Z($p) => $body,
        }
    };
}

impl AnyPresentation {
    pub fn from_doc(doc: &PresentationDoc) -> Result<Self, FrontendError> {
        Ok(match doc.field_mode()? {
            FieldMode::Rational => {
                AnyPresentation::Q(build_presentation::<Rational>(doc)?.into_arc())
            }
            FieldMode::PrimeField { .. } => {
                AnyPresentation::F(build_presentation::<Fp>(doc)?.into_arc())
            }
            FieldMode::RationalFunctions { .. } => {
                AnyPresentation::T(build_presentation::<RatFunc>(doc)?.into_arc())
            }
            FieldMode::Integer => {
                AnyPresentation::Z(build_presentation::<Integer>(doc)?.into_arc())
            }
        })
    }

    pub fn n(&self) -> usize {
        dispatch!(self, p => p.n())
    }

    /// Canonical document of the validated presentation (no order field).
    pub fn canonical_doc(&self) -> PresentationDoc {
        dispatch!(self, p => presentation_to_doc(p.as_ref(), None))
    }
}

/// sha256 (truncated) of the canonical presentation document.
pub fn presentation_hash(p: &AnyPresentation) -> String {
    let doc = p.canonical_doc();
    let text = serde_json::to_string(&doc).expect("document serializes");
    let digest = Sha256::digest(text.as_bytes());
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    hex[..16].to_string()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(
    name = "skewpbw",
    version,
    about = "Exact computations in skew quantum polynomial rings and skew PBW extensions"
)]
struct Cli {
    /// Output format: human-readable text or one JSON record
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Validate a presentation file and report its computed flags
    Validate {
        #[arg(short, long)]
        presentation: PathBuf,
    },
    /// Parse an expression and print its normal form
    Normalize {
        #[arg(short, long)]
        presentation: PathBuf,
        #[arg(short, long)]
        expr: String,
        /// Order used for printing: lex, lexN, or an inline JSON matrix
        #[arg(long)]
        order: Option<String>,
    },
    /// Multiply two elements and print the normal form of the product
    Mul {
        #[arg(short, long)]
        presentation: PathBuf,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
        #[arg(long)]
        order: Option<String>,
    },
    /// Leading-exponent valuation of an element
    Val {
        #[arg(short, long)]
        presentation: PathBuf,
        #[arg(short, long)]
        expr: String,
        #[arg(long)]
        order: Option<String>,
    },
    /// Valuation-ring class of an element
    Classify {
        #[arg(short, long)]
        presentation: PathBuf,
        #[arg(short, long)]
        expr: String,
        #[arg(long)]
        order: Option<String>,
    },
    /// Associated graded presentation (derivations and lower terms dropped)
    Graded {
        #[arg(short, long)]
        presentation: PathBuf,
    },
    /// Stages of the iterated skew polynomial form
    Iterated {
        #[arg(short, long)]
        presentation: PathBuf,
    },
    /// Genericity of the multiparameter system, with certificate
    Generic {
        #[arg(short, long)]
        presentation: PathBuf,
    },
    /// Invert a series in the completion, exact below the given bound
    Invert {
        #[arg(short, long)]
        presentation: PathBuf,
        #[arg(short, long)]
        expr: String,
        #[arg(long)]
        order: Option<String>,
        /// Exactness target, e.g. "(3,0)"
        #[arg(long)]
        bound: String,
    },
    /// Membership of an element in the i-th power of the maximal ideal
    Mpow {
        #[arg(short, long)]
        presentation: PathBuf,
        #[arg(short, long)]
        expr: String,
        /// The power i
        #[arg(short = 'i', long)]
        power: u64,
        #[arg(long)]
        order: Option<String>,
    },
    /// Probe the intersection of the powers of the maximal ideal
    Conjecture {
        /// Order: lexN or inline JSON matrix (default lex2)
        #[arg(long)]
        order: Option<String>,
        #[arg(long, default_value_t = 100)]
        depth: u64,
        /// Optional torus presentation (default: torus over Q with q = 2)
        #[arg(short, long)]
        presentation: Option<PathBuf>,
    },
    /// Compare two valuations through an integer matrix tau
    CompareVal {
        #[arg(long)]
        order1: String,
        #[arg(long)]
        order2: String,
        /// Integer matrix as JSON, e.g. "[[1,0]]"
        #[arg(long)]
        tau: String,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Maximal rank of a square comparison matrix (det = ±1)
    Rank {
        #[arg(long)]
        tau: String,
    },
    /// Archimedean power bound report for the rank-1 projection of an order
    PowerBound {
        #[arg(long)]
        order: String,
        #[arg(long, default_value_t = 10)]
        imax: u64,
    },
    /// Extend a presentation over Z to the same presentation over Q
    ExtendScalars {
        #[arg(short, long)]
        presentation: PathBuf,
    },
}

/// Everything a CLI invocation produces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct CommandResult {
    text: String,
    result: Json,
    hash: Option<String>,
    input: Json,
}

/// Run one CLI invocation. `argv` includes the program name.
pub fn run_command<I, S>(argv: I) -> CommandOutput
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            let code = e.exit_code();
            return if e.use_stderr() {
                CommandOutput {
                    code,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                CommandOutput {
                    code,
                    stdout: rendered,
                    stderr: String::new(),
                }
            };
        }
    };
    let command_name = command_name(&cli.command);
    match execute(&cli.command) {
        Ok(res) => {
            let stdout = match cli.format {
                Format::Text => {
                    let mut t = res.text;
                    if !t.ends_with('\n') {
                        t.push('\n');
                    }
                    t
                }
                Format::Json => {
                    let record = json!({
                        "command": command_name,
                        "presentation_hash": res.hash,
                        "input": res.input,
                        "result": res.result,
                        "diagnostics": [],
                    });
                    format!("{record}\n")
                }
            };
            CommandOutput {
                code: 0,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => {
            let stderr = match cli.format {
                Format::Text => format!("error: {e}\n"),
                Format::Json => {
                    let record = json!({
                        "command": command_name,
                        "presentation_hash": Json::Null,
                        "input": Json::Null,
                        "result": Json::Null,
                        "diagnostics": [e.to_string()],
                    });
                    format!("{record}\n")
                }
            };
            CommandOutput {
                code: 1,
                stdout: String::new(),
                stderr,
            }
        }
    }
}

fn command_name(cmd: &Cmd) -> &'static str {
    match cmd {
        Cmd::Validate { .. } => "validate",
        Cmd::Normalize { .. } => "normalize",
        Cmd::Mul { .. } => "mul",
        Cmd::Val { .. } => "val",
        Cmd::Classify { .. } => "classify",
        Cmd::Graded { .. } => "graded",
        Cmd::Iterated { .. } => "iterated",
        Cmd::Generic { .. } => "generic",
        Cmd::Invert { .. } => "invert",
        Cmd::Mpow { .. } => "mpow",
        Cmd::Conjecture { .. } => "conjecture",
        Cmd::CompareVal { .. } => "compare-val",
        Cmd::Rank { .. } => "rank",
        Cmd::PowerBound { .. } => "power-bound",
        Cmd::ExtendScalars { .. } => "extend-scalars",
    }
}

fn load_doc(path: &Path) -> Result<PresentationDoc, FrontendError> {
    let text = std::fs::read_to_string(path).map_err(|e| FrontendError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    PresentationDoc::from_json(&text)
}

fn load_presentation(path: &Path) -> Result<(AnyPresentation, PresentationDoc), FrontendError> {
    let doc = load_doc(path)?;
    let any = AnyPresentation::from_doc(&doc)?;
    Ok((any, doc))
}

/// Order priority: explicit flag, then SKEWPBW_ORDER, then the presentation
/// document, then plain lex.
fn resolve_order(
    flag: &Option<String>,
    doc: Option<&PresentationDoc>,
    n: usize,
) -> Result<MonomialOrder, FrontendError> {
    if let Some(spec) = flag {
        return parse_order_spec(spec, Some(n));
    }
    if let Ok(spec) = std::env::var("SKEWPBW_ORDER") {
        if !spec.is_empty() {
            return parse_order_spec(&spec, Some(n));
        }
    }
    if let Some(d) = doc.and_then(|d| d.order.as_ref()) {
        return order_from_doc(d, Some(n));
    }
    Ok(MonomialOrder::lex(n))
}

fn execute(cmd: &Cmd) -> Result<CommandResult, FrontendError> {
    match cmd {
        Cmd::Validate { presentation } => {
            let (any, _doc) = load_presentation(presentation)?;
            let hash = presentation_hash(&any);
            let (text, result) = dispatch!(&any, p => {
                let text = format!(
                    "presentation valid\nmode: {}\nn: {}\nr: {}\nquasi_commutative: {}\nbijective: {}",
                    p.mode(), p.n(), p.laurent_count(), p.is_quasi_commutative(), p.is_bijective()
                );
                let result = json!({
                    "valid": true,
                    "mode": p.mode().to_string(),
                    "n": p.n(),
                    "r": p.laurent_count(),
                    "quasi_commutative": p.is_quasi_commutative(),
                    "bijective": p.is_bijective(),
                });
                (text, result)
            });
            Ok(CommandResult {
                text,
                result,
                hash: Some(hash),
                input: json!({ "presentation": presentation.display().to_string() }),
            })
        }
        Cmd::Normalize {
            presentation,
            expr,
            order,
        } => {
            let (any, doc) = load_presentation(presentation)?;
            let ord = resolve_order(order, Some(&doc), any.n())?;
            let hash = presentation_hash(&any);
            let printed = dispatch!(&any, p => {
                let f = parse_element(expr, p)?;
                print_element(&f, &ord)?
            });
            Ok(CommandResult {
                text: printed.clone(),
                result: json!({ "normal_form": printed }),
                hash: Some(hash),
                input: json!({ "expr": expr }),
            })
        }
        Cmd::Mul {
            presentation,
            lhs,
            rhs,
            order,
        } => {
            let (any, doc) = load_presentation(presentation)?;
            let ord = resolve_order(order, Some(&doc), any.n())?;
            let hash = presentation_hash(&any);
            let printed = dispatch!(&any, p => {
                let f = parse_element(lhs, p)?;
                let g = parse_element(rhs, p)?;
                print_element(&f.checked_mul(&g)?, &ord)?
            });
            Ok(CommandResult {
                text: printed.clone(),
                result: json!({ "product": printed }),
                hash: Some(hash),
                input: json!({ "lhs": lhs, "rhs": rhs }),
            })
        }
        Cmd::Val {
            presentation,
            expr,
            order,
        } => {
            let (any, doc) = load_presentation(presentation)?;
            let ord = resolve_order(order, Some(&doc), any.n())?;
            let hash = presentation_hash(&any);
            let value = dispatch!(&any, p => {
                let f = parse_element(expr, p)?;
                val(&ord, &f)?
            });
            Ok(CommandResult {
                text: format!("nu = {value}"),
                result: json!({ "nu": value.to_string() }),
                hash: Some(hash),
                input: json!({ "expr": expr }),
            })
        }
        Cmd::Classify {
            presentation,
            expr,
            order,
        } => {
            let (any, doc) = load_presentation(presentation)?;
            let ord = resolve_order(order, Some(&doc), any.n())?;
            let hash = presentation_hash(&any);
            let class = dispatch!(&any, p => {
                let f = parse_element(expr, p)?;
                classify(&ord, &f)?
            });
            Ok(CommandResult {
                text: format!("class: {class}"),
                result: json!({ "class": class.to_string() }),
                hash: Some(hash),
                input: json!({ "expr": expr }),
            })
        }
        Cmd::Graded { presentation } => {
            let (any, _doc) = load_presentation(presentation)?;
            let hash = presentation_hash(&any);
            let doc_out = dispatch!(&any, p => presentation_to_doc(&p.associated_graded(), None));
            let text = serde_json::to_string_pretty(&doc_out).expect("document serializes");
            let result = serde_json::to_value(&doc_out).expect("document serializes");
            Ok(CommandResult {
                text,
                result,
                hash: Some(hash),
                input: json!({ "presentation": presentation.display().to_string() }),
            })
        }
        Cmd::Iterated { presentation } => {
            let (any, _doc) = load_presentation(presentation)?;
            let hash = presentation_hash(&any);
            let (text, result) = dispatch!(&any, p => {
                let iform = p.iterated_form()?;
                let mut lines = Vec::new();
                let mut stages_json = Vec::new();
                for (j, stage) in iform.stages.iter().enumerate() {
                    let sigma_desc = match &stage.sigma {
                        crate::coeffs::Automorphism::Identity => "identity".to_string(),
                        crate::coeffs::Automorphism::Frobenius => "frobenius".to_string(),
                        crate::coeffs::Automorphism::ParamScaling(cs) => format!(
                            "scaling({})",
                            cs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")
                        ),
                    };
                    let mut line = format!("stage {}: coefficients via {}", j + 1, sigma_desc);
                    let mut zs = Vec::new();
                    for (i, c) in stage.z_action.iter().enumerate() {
                        line.push_str(&format!("; z{} -> {}*z{}", i + 1, c.render(), i + 1));
                        zs.push(json!({ "z": i + 1, "scalar": c.render() }));
                    }
                    lines.push(line);
                    stages_json.push(json!({ "stage": j + 1, "sigma": sigma_desc, "z_action": zs }));
                }
                (lines.join("\n"), json!({ "stages": stages_json }))
            });
            Ok(CommandResult {
                text,
                result,
                hash: Some(hash),
                input: json!({ "presentation": presentation.display().to_string() }),
            })
        }
        Cmd::Generic { presentation } => {
            let (any, _doc) = load_presentation(presentation)?;
            let hash = presentation_hash(&any);
            let (text, result) = dispatch!(&any, p => {
                let report = genericity_check(p.q_matrix(), p.sigmas())?;
                let mut lines = vec![format!("generic: {}", report.generic)];
                let exps: Vec<String> = report
                    .monomials
                    .iter()
                    .map(|(i, j, e)| {
                        format!(
                            "q{}{} -> ({})",
                            i,
                            j,
                            e.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
                        )
                    })
                    .collect();
                if !exps.is_empty() {
                    lines.push(format!("parameter exponents: {}", exps.join("; ")));
                }
                let cert_json = match &report.certificate {
                    GenericityCertificate::Independent { rank } => {
                        lines.push(format!("rank: {rank} (exponent vectors independent)"));
                        json!({ "independent": true, "rank": rank })
                    }
                    GenericityCertificate::Dependency { combination } => {
                        let combo: Vec<String> =
                            combination.iter().map(|v| v.to_string()).collect();
                        lines.push(format!("dependency: ({})", combo.join(", ")));
                        // substitution check: the product of q_ij^a is 1
                        let mut prod = p.one_coeff();
                        for ((i, j, _), a) in report.monomials.iter().zip(combination) {
                            prod = prod.mul(&p.q(i - 1, j - 1).pow_int(a)?);
                        }
                        let confirmed = prod.is_one();
                        lines.push(format!(
                            "substitution check (product of q_ij^a = 1): {}",
                            if confirmed { "confirmed" } else { "FAILED" }
                        ));
                        json!({ "independent": false, "dependency": combo, "substitution_check": confirmed })
                    }
                };
                (lines.join("\n"), json!({ "generic": report.generic, "certificate": cert_json }))
            });
            Ok(CommandResult {
                text,
                result,
                hash: Some(hash),
                input: json!({ "presentation": presentation.display().to_string() }),
            })
        }
        Cmd::Invert {
            presentation,
            expr,
            order,
            bound,
        } => {
            let (any, doc) = load_presentation(presentation)?;
            let ord = resolve_order(order, Some(&doc), any.n())?;
            let target = parse_exponent_vector(bound)?;
            let hash = presentation_hash(&any);
            let printed = dispatch!(&any, p => {
                let completion = Completion::new(Arc::clone(p), ord.clone())?;
                let f = parse_element(expr, p)?;
                let series = completion.from_element(&f);
                let inv = completion.invert(&series, &target)?;
                print_series(&inv, &ord)?
            });
            Ok(CommandResult {
                text: printed.clone(),
                result: json!({ "inverse": printed }),
                hash: Some(hash),
                input: json!({ "expr": expr, "bound": bound }),
            })
        }
        Cmd::Mpow {
            presentation,
            expr,
            power,
            order,
        } => {
            let (any, doc) = load_presentation(presentation)?;
            let ord = resolve_order(order, Some(&doc), any.n())?;
            let hash = presentation_hash(&any);
            let (text, result) = dispatch!(&any, p => {
                let completion = Completion::new(Arc::clone(p), ord.clone())?;
                let f = parse_element(expr, p)?;
                let series = completion.from_element(&f);
                let member = completion.m_power_membership(&series, *power)?;
                if member {
                    let witness = completion.m_power_witness(&series, *power)?;
                    let nu = completion.val(&series)?.expect("member has a valuation");
                    let unit = completion.verify_witness_product(&witness, &nu)?;
                    let factors: Vec<String> =
                        witness.iter().map(|e| format!("x^{e}")).collect();
                    let text = format!(
                        "member of m^{}: true\nfactorization: {}\nwitness product: {} * x^{nu} (unit coefficient, exact)",
                        power,
                        factors.join(" * "),
                        unit.render(),
                    );
                    let result = json!({
                        "member": true,
                        "power": power,
                        "factors": witness.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
                        "unit": unit.render(),
                    });
                    (text, result)
                } else {
                    (
                        format!("member of m^{power}: false"),
                        json!({ "member": false, "power": power }),
                    )
                }
            });
            Ok(CommandResult {
                text,
                result,
                hash: Some(hash),
                input: json!({ "expr": expr, "power": power }),
            })
        }
        Cmd::Conjecture {
            order,
            depth,
            presentation,
        } => {
            let loaded = match presentation {
                Some(path) => Some(load_presentation(path)?),
                None => None,
            };
            let ord = match (&loaded, order) {
                (Some((any, doc)), flag) => resolve_order(flag, Some(doc), any.n())?,
                (None, Some(spec)) => parse_order_spec(spec, None)?,
                (None, None) => MonomialOrder::lex(2),
            };
            let any = match loaded {
                Some((any, _)) => any,
                None => AnyPresentation::Q(
                    crate::presentation::default_torus(ord.n()).into_arc(),
                ),
            };
            let hash = presentation_hash(&any);
            let (text, result) = dispatch!(&any, p => {
                let completion = Completion::new(Arc::clone(p), ord.clone())?;
                let verdict = completion.conjecture_check(*depth)?;
                render_conjecture(&ord, *depth, &verdict)?
            });
            Ok(CommandResult {
                text,
                result,
                hash: Some(hash),
                input: json!({ "depth": depth, "order_kind": ord.kind().to_string() }),
            })
        }
        Cmd::CompareVal {
            order1,
            order2,
            tau,
            samples,
            seed,
        } => {
            let ord1 = parse_order_spec(order1, None)?;
            let ord2 = parse_order_spec(order2, None)?;
            let tau = parse_integer_matrix(tau)?;
            let mut cfg = ComparisonConfig::default();
            if let Some(s) = samples {
                cfg.samples = *s;
            }
            if let Some(s) = seed {
                cfg.seed = *s;
            }
            let report = compare_valuations(&ord1, &ord2, &tau, &cfg)?;
            let mut lines = vec![
                format!("holds: {}", report.holds),
                format!("surjective: {}", report.surjective),
                format!(
                    "samples: {} value checks + {} order-preservation pairs (seed {})",
                    report.corpus_supports.len(),
                    report.corpus_pairs.len(),
                    cfg.seed
                ),
            ];
            let ce_json = match &report.counterexample {
                None => Json::Null,
                Some(ComparisonCounterexample::ValueMismatch {
                    support,
                    nu1,
                    tau_nu1,
                    nu2,
                }) => {
                    let supp: Vec<String> = support.iter().map(|e| e.to_string()).collect();
                    lines.push(format!(
                        "counterexample (value): support {{{}}}; nu1 = {nu1}; tau(nu1) = {tau_nu1}; nu2 = {nu2}",
                        supp.join(", ")
                    ));
                    json!({
                        "kind": "value_mismatch",
                        "support": supp,
                        "nu1": nu1.to_string(),
                        "tau_nu1": tau_nu1.to_string(),
                        "nu2": nu2.to_string(),
                    })
                }
                Some(ComparisonCounterexample::OrderFlip { g, h }) => {
                    lines.push(format!(
                        "counterexample (order): {g} < {h} under order1 but tau flips them under order2"
                    ));
                    json!({ "kind": "order_flip", "g": g.to_string(), "h": h.to_string() })
                }
            };
            let corpus = json!({
                "supports": report
                    .corpus_supports
                    .iter()
                    .map(|s| s.iter().map(|e| e.to_string()).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
                "pairs": report
                    .corpus_pairs
                    .iter()
                    .map(|(g, h)| vec![g.to_string(), h.to_string()])
                    .collect::<Vec<_>>(),
            });
            Ok(CommandResult {
                text: lines.join("\n"),
                result: json!({
                    "holds": report.holds,
                    "surjective": report.surjective,
                    "seed": cfg.seed,
                    "counterexample": ce_json,
                    "corpus": corpus,
                }),
                hash: None,
                input: json!({ "tau": tau.iter().map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>() }),
            })
        }
        Cmd::Rank { tau } => {
            let tau = parse_integer_matrix(tau)?;
            let maximal = maximal_rank(&tau)?;
            Ok(CommandResult {
                text: format!("maximal rank: {maximal}"),
                result: json!({ "maximal_rank": maximal }),
                hash: None,
                input: json!({ "tau": tau.iter().map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>() }),
            })
        }
        Cmd::PowerBound { order, imax } => {
            let ord = parse_order_spec(order, None)?;
            let report = power_value_bound(&ord, *imax)?;
            let (text, result) = match report {
                PowerBoundReport::Archimedean {
                    lambda1,
                    lambda,
                    exclusions,
                    consistent,
                } => {
                    let seq: Vec<String> = lambda.iter().map(|v| v.to_string()).collect();
                    let text = format!(
                        "archimedean projection: yes\nlambda_1 = {lambda1}\nlambda_i = i*lambda_1 for i <= {imax}: ({})\nexclusion table consistent (member of W^i iff k >= i): {consistent}",
                        seq.join(", ")
                    );
                    let result = json!({
                        "archimedean": true,
                        "lambda1": lambda1.to_string(),
                        "lambda": seq,
                        "consistent": consistent,
                        "exclusions": exclusions
                            .iter()
                            .map(|(k, i, m)| json!({ "k": k, "i": i, "member": m }))
                            .collect::<Vec<_>>(),
                    });
                    (text, result)
                }
                PowerBoundReport::HypothesisViolated { witness } => {
                    let text = format!(
                        "archimedean projection: no\ninf of the projected values over W is 0 (witness {witness}); hypothesis not satisfied"
                    );
                    (
                        text,
                        json!({ "archimedean": false, "witness": witness.to_string() }),
                    )
                }
            };
            Ok(CommandResult {
                text,
                result,
                hash: None,
                input: json!({ "imax": imax }),
            })
        }
        Cmd::ExtendScalars { presentation } => {
            let (any, _doc) = load_presentation(presentation)?;
            let hash = presentation_hash(&any);
            let p = match &any {
                AnyPresentation::Z(p) => p,
                _ => {
                    return Err(FrontendError::Presentation(
                        PresentationError::NotIntegerMode,
                    ))
                }
            };
            let extended = extend_scalars(p.as_ref())?;
            let doc_out = presentation_to_doc(&extended, None);
            let text = serde_json::to_string_pretty(&doc_out).expect("document serializes");
            let result = serde_json::to_value(&doc_out).expect("document serializes");
            Ok(CommandResult {
                text,
                result,
                hash: Some(hash),
                input: json!({ "presentation": presentation.display().to_string() }),
            })
        }
    }
}

/// Render a conjecture verdict deterministically.
fn render_conjecture(
    ord: &MonomialOrder,
    depth: u64,
    verdict: &ConjectureVerdict,
) -> Result<(String, Json), FrontendError> {
    match verdict {
        ConjectureVerdict::Witness {
            exponent,
            min_positive,
            factorizations,
            products_verified,
        } => {
            let witness_name = witness_display(exponent);
            let mut lines = vec![
                format!(
                    "order: kind {} on Z^{} with minimal positive element {}",
                    ord.kind(),
                    ord.n(),
                    min_positive
                ),
                format!("witness: {witness_name} (exponent {exponent})"),
                format!(
                    "memberships m^i for i = 1..{depth}: all hold; factor products {}",
                    if *products_verified {
                        "multiplied back exactly (unit * x^witness)"
                    } else {
                        "not recomputed"
                    }
                ),
                format!(
                    "minimal element of the i-fold cone power: i * {min_positive}; at i = {depth}: {}",
                    min_positive.scaled(&BigInt::from(depth))
                ),
            ];
            if let Some(sample) = factorizations.get(2) {
                let parts: Vec<String> = sample.iter().map(|e| format!("x^{e}")).collect();
                lines.push(format!(
                    "sample factorization (i = 3): {witness_name} = unit * {}",
                    parts.join(" * ")
                ));
            }
            lines.push(format!(
                "verdict: witness found; the intersection of m^i over 1 <= i <= {depth} (and over 1 < i <= {depth}) contains {witness_name}"
            ));
            let result = json!({
                "verdict": "witness",
                "witness": exponent.to_string(),
                "min_positive": min_positive.to_string(),
                "depth": depth,
                "products_verified": products_verified,
                "factorizations": factorizations
                    .iter()
                    .map(|fs| fs.iter().map(|e| e.to_string()).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
            });
            Ok((lines.join("\n"), result))
        }
        ConjectureVerdict::IntersectionTrivial {
            depth,
            min_positive,
        } => {
            let text = format!(
                "order: kind {} on Z^1 with minimal positive element {}\nverdict: intersection trivial up to depth {depth}; the valuation of m^i is at least i * {min_positive}, so no fixed nonzero element survives every power",
                ord.kind(),
                min_positive
            );
            Ok((
                text,
                json!({
                    "verdict": "intersection_trivial",
                    "depth": depth,
                    "min_positive": min_positive.to_string(),
                }),
            ))
        }
        ConjectureVerdict::DenseOrder => Ok((
            "verdict: order has no minimal positive element (dense regime); no witness construction applies".to_string(),
            json!({ "verdict": "dense_order" }),
        )),
    }
}

/// Witness exponents that are a single generator print as that generator.
fn witness_display(e: &ExponentVector) -> String {
    let one = BigInt::from(1);
    let nonzero: Vec<(usize, &BigInt)> = e
        .entries()
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .collect();
    if nonzero.len() == 1 && nonzero[0].1 == &one {
        format!("x{}", nonzero[0].0 + 1)
    } else {
        format!("x^{e}")
    }
}
