//! Deterministic printing of elements, series, presentations and orders.
//!
//! Element terms are sorted descending by the active monomial order; series
//! terms ascending with an explicit tail marker for the unknown region. All
//! exact values print as integer/fraction strings. The output parses back
//! bit-exactly through the frontend grammar.

use num_traits::{One, Zero};

use crate::coeffs::{Automorphism, FieldMode, Scalar};
use crate::completion::{HahnSeries, SeriesBound};
use crate::elements::Element;
use crate::exponents::{ExponentVector, MonomialOrder, OrderKind};
use crate::presentation::{LowerTerm, Presentation};

use super::parse::{DeltaDoc, FieldDoc, OrderDoc, PresentationDoc, SigmaDoc};
use super::FrontendError;

/// "x1^2*x3^-1" for the nonzero slots of an exponent.
fn generators_string(u: &ExponentVector) -> String {
    let mut parts = Vec::new();
    for (i, e) in u.entries().iter().enumerate() {
        if e.is_zero() {
            continue;
        }
        if e.is_one() {
            parts.push(format!("x{}", i + 1));
        } else {
            parts.push(format!("x{}^{}", i + 1, e));
        }
    }
    parts.join("*")
}

fn term_string<K: Scalar>(coef: &K, u: &ExponentVector, multi_term: bool) -> (bool, String) {
    let negative = coef.display_negative();
    let abs = if negative { coef.neg() } else { coef.clone() };
    let gens = generators_string(u);
    let body = if gens.is_empty() {
        if abs.needs_parens() && multi_term {
            format!("({})", abs.render())
        } else {
            abs.render()
        }
    } else if abs.is_one() {
        gens
    } else if abs.needs_parens() {
        format!("({})*{}", abs.render(), gens)
    } else {
        format!("{}*{}", abs.render(), gens)
    };
    (negative, body)
}

fn join_terms(terms: Vec<(bool, String)>) -> String {
    let mut out = String::new();
    for (idx, (negative, body)) in terms.into_iter().enumerate() {
        if idx == 0 {
            if negative {
                out.push('-');
            }
        } else if negative {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(&body);
    }
    out
}

/// Print an element with terms descending under the given order.
pub fn print_element<K: Scalar>(
    f: &Element<K>,
    ord: &MonomialOrder,
) -> Result<String, FrontendError> {
    if f.is_zero() {
        return Ok("0".to_string());
    }
    let mut exps: Vec<&ExponentVector> = f.support().keys().collect();
    // descending
    let mut err = None;
    exps.sort_by(|a, b| match ord.compare(b, a) {
        Ok(o) => o,
        Err(e) => {
            err = Some(e);
            std::cmp::Ordering::Equal
        }
    });
    if let Some(e) = err {
        return Err(e.into());
    }
    let multi = exps.len() > 1;
    let terms = exps
        .into_iter()
        .map(|e| term_string(f.support().get(e).expect("key"), e, multi))
        .collect();
    Ok(join_terms(terms))
}

/// Print a series ascending, with a tail marker for the unknown region.
pub fn print_series<K: Scalar>(
    f: &HahnSeries<K>,
    ord: &MonomialOrder,
) -> Result<String, FrontendError> {
    let mut exps: Vec<&ExponentVector> = f.support().keys().collect();
    let mut err = None;
    exps.sort_by(|a, b| match ord.compare(a, b) {
        Ok(o) => o,
        Err(e) => {
            err = Some(e);
            std::cmp::Ordering::Equal
        }
    });
    if let Some(e) = err {
        return Err(e.into());
    }
    let multi = exps.len() > 1;
    let mut body = if exps.is_empty() {
        String::new()
    } else {
        join_terms(
            exps.into_iter()
                .map(|e| term_string(f.support().get(e).expect("key"), e, multi))
                .collect(),
        )
    };
    match f.bound() {
        SeriesBound::Exact => {
            if body.is_empty() {
                body.push('0');
            }
        }
        SeriesBound::Below(b) => {
            if body.is_empty() {
                body.push_str(&format!("O(>= {b})"));
            } else {
                body.push_str(&format!(" + O(>= {b})"));
            }
        }
    }
    Ok(body)
}

/// Render a lower term back to its document expression.
fn lower_term_string<K: Scalar>(lt: &LowerTerm<K>) -> String {
    let mut terms: Vec<(bool, String)> = Vec::new();
    if !lt.constant.is_zero() {
        let negative = lt.constant.display_negative();
        let abs = if negative {
            lt.constant.neg()
        } else {
            lt.constant.clone()
        };
        let body = if abs.needs_parens() {
            format!("({})", abs.render())
        } else {
            abs.render()
        };
        terms.push((negative, body));
    }
    for (k, c) in lt.linear.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let negative = c.display_negative();
        let abs = if negative { c.neg() } else { c.clone() };
        let body = if abs.is_one() {
            format!("x{}", k + 1)
        } else if abs.needs_parens() {
            format!("({})*x{}", abs.render(), k + 1)
        } else {
            format!("{}*x{}", abs.render(), k + 1)
        };
        terms.push((negative, body));
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        join_terms(terms)
    }
}

/// Canonical document form of a presentation (used for output and hashing).
pub fn presentation_to_doc<K: Scalar>(
    p: &Presentation<K>,
    order: Option<&MonomialOrder>,
) -> PresentationDoc {
    let field = match p.mode() {
        FieldMode::Rational => FieldDoc::Q,
        FieldMode::Integer => FieldDoc::Z,
        FieldMode::PrimeField { p } => FieldDoc::Fp { p: *p },
        FieldMode::RationalFunctions { params } => FieldDoc::Qt {
            params: (1..=*params).map(|k| format!("t{k}")).collect(),
        },
    };
    let q = p
        .q_matrix()
        .iter()
        .map(|row| row.iter().map(Scalar::render).collect())
        .collect();
    let sigma = p
        .sigmas()
        .iter()
        .map(|s| match s {
            Automorphism::Identity => SigmaDoc::Named("identity".to_string()),
            Automorphism::Frobenius => SigmaDoc::Named("frobenius".to_string()),
            Automorphism::ParamScaling(cs) => SigmaDoc::Scaling {
                scaling: cs
                    .iter()
                    .map(|c| {
                        if c.denom().is_one() {
                            c.numer().to_string()
                        } else {
                            format!("{}/{}", c.numer(), c.denom())
                        }
                    })
                    .collect(),
            },
        })
        .collect();
    let delta = (0..p.n())
        .map(|i| {
            let d = p.delta(i);
            if d.is_zero() {
                DeltaDoc::Named("zero".to_string())
            } else {
                DeltaDoc::Partials {
                    partials: d.coeffs().iter().map(Scalar::render).collect(),
                }
            }
        })
        .collect();
    let lower_terms: std::collections::BTreeMap<String, String> = p
        .lower_terms()
        .iter()
        .map(|(&(j, i), lt)| (format!("{},{}", j + 1, i + 1), lower_term_string(lt)))
        .collect();
    PresentationDoc {
        n: p.n(),
        r: p.laurent_count(),
        field,
        q,
        sigma: Some(sigma),
        delta: Some(delta),
        lower_terms: if lower_terms.is_empty() {
            None
        } else {
            Some(lower_terms)
        },
        order: order.map(order_to_doc),
    }
}

pub fn order_to_doc(ord: &MonomialOrder) -> OrderDoc {
    if ord.kind() == OrderKind::Lex {
        OrderDoc {
            kind: Some("lex".to_string()),
            matrix: None,
        }
    } else {
        OrderDoc {
            kind: None,
            matrix: Some(
                ord.matrix()
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|v| {
                                if v.denom().is_one() {
                                    v.numer().to_string()
                                } else {
                                    format!("{}/{}", v.numer(), v.denom())
                                }
                            })
                            .collect()
                    })
                    .collect(),
            ),
        }
    }
}
