//! Versioned JSON documents and LaTeX rendering.
//!
//! Scalars are canonical rational strings (`"3"`, `"-2/5"`); polynomials are
//! ascending coefficient lists; operators are ascending lists of `{num, den}`.

use std::fmt::Write as _;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::airy::AiryParam;
use crate::bessel::BesselParam;
use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::field::{RatFun, Scalar, UniPoly};
use crate::kernel::{Condition, ConditionSet, PointCondition, PointForm, ZeroTerm};
use crate::pipeline::{BispectralPair, DarbouxPlane, OnePointLaw, SpectralElement};

pub const CONDITIONS_SCHEMA: &str = "darboux/conditions/v1";
pub const PLANE_SCHEMA: &str = "darboux/plane/v1";
pub const PAIR_SCHEMA: &str = "darboux/pair/v1";
pub const JOB_SCHEMA: &str = "darboux/job/v1";
pub const REPORT_SCHEMA: &str = "darboux/report/v1";
pub const SPECTRAL_SCHEMA: &str = "darboux/spectral/v1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum FamilyJson {
    Bessel { beta: Vec<String> },
    Airy { n: u32, alpha0: String, alpha: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZeroTermJson {
    /// 0-based index into β.
    pub i: usize,
    pub k: usize,
    #[serde(default)]
    pub j: usize,
    pub b: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormJson {
    Partial,
    Euler,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum ConditionJson {
    Zero {
        terms: Vec<ZeroTermJson>,
    },
    Point {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        lambda: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        lambda_n: Option<String>,
        coeffs: Vec<String>,
        #[serde(default = "default_form")]
        form: FormJson,
    },
}

fn default_form() -> FormJson {
    FormJson::Partial
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConditionsDoc {
    pub schema: String,
    pub family: FamilyJson,
    pub conditions: Vec<ConditionJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RatFunJson {
    pub num: Vec<String>,
    pub den: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlaneDoc {
    pub schema: String,
    pub family: FamilyJson,
    pub p: Vec<RatFunJson>,
    pub g: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub law: Option<LawJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LawJson {
    pub n: u32,
    pub a: String,
    pub lambda_n: String,
    pub mu_n: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relation: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual_b: Option<String>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectralJson {
    pub order: usize,
    /// u(t) with P·u(L_V)·P^{-1} a differential operator.
    pub u: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MinimalJson {
    pub u: Vec<String>,
    pub l_min: Vec<RatFunJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChecksJson {
    #[serde(default = "yes")]
    pub symbolic: bool,
    #[serde(default = "yes")]
    pub series: bool,
    #[serde(default = "yes")]
    pub rank: bool,
}

fn yes() -> bool {
    true
}

impl Default for ChecksJson {
    fn default() -> Self {
        ChecksJson {
            symbolic: true,
            series: true,
            rank: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectralDoc {
    pub schema: String,
    pub family: FamilyJson,
    pub max_order: usize,
    pub elements: Vec<SpectralJson>,
    pub rank: usize,
    pub max_deg: usize,
    /// `None` when no invariant of degree <= max_deg exists.
    pub minimal: Option<MinimalJson>,
}

/// A job: an input (inline or by path) plus run settings. Command-line flags win.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobDoc {
    pub schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spec: Option<ConditionsDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub example: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_order: Option<usize>,
    #[serde(default)]
    pub checks: ChecksJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckJson {
    pub name: String,
    /// "pass", "fail" or "skipped".
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDoc {
    pub schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub example: Option<String>,
    pub family: FamilyJson,
    pub checks: Vec<CheckJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orders: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b_orders: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b_rank: Option<usize>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDoc {
    pub schema: String,
    pub family: FamilyJson,
    /// Variable of the z-side operators P_b, Q_b, Λ (`u = z^N/alpha0` for Airy).
    pub spectral_variable: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conditions: Option<Vec<ConditionJson>>,
    pub p: Vec<RatFunJson>,
    pub q: Vec<RatFunJson>,
    pub g: Vec<String>,
    pub f: Vec<String>,
    pub h: Vec<String>,
    pub p_b: Vec<RatFunJson>,
    pub q_b: Vec<RatFunJson>,
    pub g_b: Vec<String>,
    pub f_b: Vec<String>,
    pub l: Vec<RatFunJson>,
    pub lambda: Vec<RatFunJson>,
    /// Θ(z) = f_b g_b.
    pub theta: Vec<String>,
    /// θ(t) with Θ(z) = θ(z^N).
    pub theta_t: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectral: Option<Vec<SpectralJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minimal: Option<MinimalJson>,
}

/// Any loadable document.
#[derive(Clone, Debug)]
pub enum Document {
    Conditions(ConditionSet),
    Plane(DarbouxPlane),
    Pair(BispectralPair),
    Job(JobDoc),
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Input(msg.into())
}

pub fn scalar_str(s: &Scalar) -> Result<String> {
    if s.is_rational() {
        Ok(s.to_string())
    } else {
        Err(bad(format!("non-rational value {s} cannot be serialized")))
    }
}

pub fn parse_scalar(s: &str) -> Result<Scalar> {
    s.parse().map_err(|e: crate::field::ParseScalarError| bad(e.to_string()))
}

fn scalars(v: &[String]) -> Result<Vec<Scalar>> {
    v.iter().map(|s| parse_scalar(s)).collect()
}

fn poly_json(p: &UniPoly) -> Result<Vec<String>> {
    p.coeffs().iter().map(scalar_str).collect()
}

fn poly_from(v: &[String]) -> Result<UniPoly> {
    Ok(UniPoly::new(scalars(v)?))
}

fn op_json(op: &DiffOp) -> Result<Vec<RatFunJson>> {
    op.coeffs()
        .iter()
        .map(|c| {
            Ok(RatFunJson {
                num: poly_json(c.num())?,
                den: poly_json(c.den())?,
            })
        })
        .collect()
}

fn op_from(v: &[RatFunJson]) -> Result<DiffOp> {
    let c = v
        .iter()
        .map(|r| {
            RatFun::normalize(poly_from(&r.num)?, poly_from(&r.den)?).map_err(|e| bad(e.to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DiffOp::new(c))
}

pub fn family_json(f: &Family) -> Result<FamilyJson> {
    Ok(match f {
        Family::Bessel(bp) => FamilyJson::Bessel {
            beta: bp.beta().iter().map(scalar_str).collect::<Result<_>>()?,
        },
        Family::Airy(ap) => FamilyJson::Airy {
            n: ap.n(),
            alpha0: scalar_str(ap.alpha0())?,
            alpha: ap.alpha().iter().map(scalar_str).collect::<Result<_>>()?,
        },
    })
}

pub fn family_from(f: &FamilyJson) -> Result<Family> {
    Ok(match f {
        FamilyJson::Bessel { beta } => Family::Bessel(BesselParam::new(scalars(beta)?)?),
        FamilyJson::Airy { n, alpha0, alpha } => {
            Family::Airy(AiryParam::new(*n, parse_scalar(alpha0)?, scalars(alpha)?)?)
        }
    })
}

fn conditions_json(cs: &ConditionSet) -> Result<Vec<ConditionJson>> {
    cs.conditions()
        .iter()
        .map(|c| {
            Ok(match c {
                Condition::Zero(terms) => ConditionJson::Zero {
                    terms: terms
                        .iter()
                        .map(|t| {
                            Ok(ZeroTermJson {
                                i: t.i,
                                k: t.k,
                                j: t.j,
                                b: scalar_str(&t.b)?,
                            })
                        })
                        .collect::<Result<_>>()?,
                },
                Condition::Point(p) => ConditionJson::Point {
                    lambda: p.lambda.as_ref().map(scalar_str).transpose()?,
                    lambda_n: match &p.lambda {
                        Some(_) => None,
                        None => Some(scalar_str(p.lambda_n())?),
                    },
                    coeffs: p.coeffs.iter().map(scalar_str).collect::<Result<_>>()?,
                    form: match p.form {
                        PointForm::Partial => FormJson::Partial,
                        PointForm::Euler => FormJson::Euler,
                    },
                },
            })
        })
        .collect()
}

fn conditions_from(family: Family, conds: &[ConditionJson]) -> Result<ConditionSet> {
    let conds = conds
        .iter()
        .map(|c| {
            Ok(match c {
                ConditionJson::Zero { terms } => Condition::Zero(
                    terms
                        .iter()
                        .map(|t| {
                            Ok(ZeroTerm {
                                i: t.i,
                                k: t.k,
                                j: t.j,
                                b: parse_scalar(&t.b)?,
                            })
                        })
                        .collect::<Result<_>>()?,
                ),
                ConditionJson::Point {
                    lambda,
                    lambda_n,
                    coeffs,
                    form,
                } => Condition::Point(PointCondition {
                    lambda: lambda.as_deref().map(parse_scalar).transpose()?,
                    lambda_n: lambda_n.as_deref().map(parse_scalar).transpose()?,
                    coeffs: scalars(coeffs)?,
                    form: match form {
                        FormJson::Partial => PointForm::Partial,
                        FormJson::Euler => PointForm::Euler,
                    },
                }),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    ConditionSet::new(family, conds)
}

pub fn conditions_doc(cs: &ConditionSet) -> Result<ConditionsDoc> {
    Ok(ConditionsDoc {
        schema: CONDITIONS_SCHEMA.into(),
        family: family_json(cs.family())?,
        conditions: conditions_json(cs)?,
    })
}

pub fn plane_doc(plane: &DarbouxPlane) -> Result<PlaneDoc> {
    Ok(PlaneDoc {
        schema: PLANE_SCHEMA.into(),
        family: family_json(&plane.family)?,
        p: op_json(&plane.p)?,
        g: poly_json(&plane.g)?,
        law: None,
    })
}

pub fn pair_doc(pair: &BispectralPair, conditions: Option<&ConditionSet>) -> Result<PairDoc> {
    Ok(PairDoc {
        schema: PAIR_SCHEMA.into(),
        family: family_json(&pair.family)?,
        spectral_variable: spectral_variable(&pair.family).into(),
        conditions: conditions.map(conditions_json).transpose()?,
        p: op_json(&pair.p)?,
        q: op_json(&pair.q)?,
        g: poly_json(&pair.g)?,
        f: poly_json(&pair.f)?,
        h: poly_json(&pair.h)?,
        p_b: op_json(&pair.p_b)?,
        q_b: op_json(&pair.q_b)?,
        g_b: poly_json(&pair.g_b)?,
        f_b: poly_json(&pair.f_b)?,
        l: op_json(&pair.l)?,
        lambda: op_json(&pair.big_lambda)?,
        theta: poly_json(&pair.theta)?,
        theta_t: poly_json(&pair.theta_t())?,
        spectral: None,
        minimal: None,
    })
}

fn spectral_variable(f: &Family) -> &'static str {
    if f.is_bessel() {
        "z"
    } else {
        "u"
    }
}

fn check_schema(found: &str, want: &str) -> Result<()> {
    if found != want {
        return Err(bad(format!("schema `{found}` where `{want}` was expected")));
    }
    Ok(())
}

fn typed<T: serde::de::DeserializeOwned>(v: serde_json::Value) -> Result<T> {
    serde_json::from_value(v).map_err(|e| bad(e.to_string()))
}

/// Loads a conditions, plane or pair document, dispatching on `schema`.
pub fn parse_document(text: &str) -> Result<Document> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    let schema = v
        .get("schema")
        .and_then(|s| s.as_str())
        .ok_or_else(|| bad("document has no string `schema` field"))?
        .to_string();
    match schema.as_str() {
        CONDITIONS_SCHEMA => {
            let d: ConditionsDoc = typed(v)?;
            Ok(Document::Conditions(conditions_from(family_from(&d.family)?, &d.conditions)?))
        }
        PLANE_SCHEMA => {
            let d: PlaneDoc = typed(v)?;
            check_schema(&d.schema, PLANE_SCHEMA)?;
            Ok(Document::Plane(DarbouxPlane {
                family: family_from(&d.family)?,
                conditions: None,
                p: op_from(&d.p)?,
                g: poly_from(&d.g)?,
            }))
        }
        PAIR_SCHEMA => {
            let d: PairDoc = typed(v)?;
            let family = family_from(&d.family)?;
            if d.spectral_variable != spectral_variable(&family) {
                return Err(bad(format!("spectral variable `{}` does not match the family", d.spectral_variable)));
            }
            Ok(Document::Pair(BispectralPair {
                p: op_from(&d.p)?,
                q: op_from(&d.q)?,
                g: poly_from(&d.g)?,
                f: poly_from(&d.f)?,
                h: poly_from(&d.h)?,
                p_b: op_from(&d.p_b)?,
                q_b: op_from(&d.q_b)?,
                g_b: poly_from(&d.g_b)?,
                f_b: poly_from(&d.f_b)?,
                l: op_from(&d.l)?,
                big_lambda: op_from(&d.lambda)?,
                theta: poly_from(&d.theta)?,
                family,
            }))
        }
        JOB_SCHEMA => Ok(Document::Job(typed(v)?)),
        other => Err(bad(format!("unknown schema `{other}`"))),
    }
}

/// Conditions stored alongside a pair, if any.
pub fn pair_conditions(text: &str) -> Result<Option<ConditionSet>> {
    let d: PairDoc = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    d.conditions
        .map(|c| conditions_from(family_from(&d.family)?, &c))
        .transpose()
}

pub fn law_json(law: &OnePointLaw) -> Result<LawJson> {
    Ok(LawJson {
        n: law.n,
        a: scalar_str(&law.a)?,
        lambda_n: scalar_str(&law.lambda_n)?,
        mu_n: scalar_str(&law.mu_n)?,
        relation: law.relation.as_ref().map(|r| r.text.to_string()),
        lhs: law.relation.as_ref().map(|r| scalar_str(&r.lhs)).transpose()?,
        rhs: law.relation.as_ref().map(|r| scalar_str(&r.rhs)).transpose()?,
        dual_b: law.dual_b.as_ref().map(|d| scalar_str(&d.0)).transpose()?,
        holds: law.holds(),
    })
}

pub fn spectral_json(els: &[SpectralElement]) -> Result<Vec<SpectralJson>> {
    els.iter()
        .map(|e| {
            Ok(SpectralJson {
                order: e.order,
                u: poly_json(&e.u)?,
            })
        })
        .collect()
}

pub fn minimal_json(u: &UniPoly, l_min: &DiffOp) -> Result<MinimalJson> {
    Ok(MinimalJson {
        u: poly_json(u)?,
        l_min: op_json(l_min)?,
    })
}

pub fn to_json<T: Serialize>(doc: &T) -> String {
    serde_json::to_string_pretty(doc).expect("documents serialize")
}

// ---- LaTeX ----

fn latex_scalar(s: &Scalar) -> String {
    match s.as_rational() {
        Some(r) if !r.is_integer() => {
            let sign = if r.is_negative() { "-" } else { "" };
            let n = r.numer().magnitude();
            format!("{sign}\\frac{{{n}}}{{{}}}", r.denom())
        }
        _ => s.to_string(),
    }
}

pub fn latex_poly(p: &UniPoly, var: &str) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.as_rational().is_some_and(Signed::is_negative);
        let mag = if neg { -c } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let coef = if mag.is_one() && k > 0 { String::new() } else { latex_scalar(&mag) };
        out.push_str(&coef);
        match k {
            0 => {}
            1 => out.push_str(var),
            _ => {
                let _ = write!(out, "{var}^{{{k}}}");
            }
        }
    }
    out
}

pub fn latex_ratfun(r: &RatFun, var: &str) -> String {
    if r.den().is_one() {
        latex_poly(r.num(), var)
    } else {
        format!("\\frac{{{}}}{{{}}}", latex_poly(r.num(), var), latex_poly(r.den(), var))
    }
}

/// Powers of ∂ in descending order.
pub fn latex_op(op: &DiffOp, var: &str) -> String {
    if op.is_zero() {
        return "0".into();
    }
    let mut terms = Vec::new();
    for (k, c) in op.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let d = match k {
            0 => String::new(),
            1 => format!("\\partial_{var}"),
            _ => format!("\\partial_{var}^{{{k}}}"),
        };
        let coef = if c.is_one() && k > 0 {
            String::new()
        } else if c.is_poly() && c.num().coeffs().iter().filter(|v| !v.is_zero()).count() == 1 || k == 0 {
            latex_ratfun(c, var)
        } else {
            format!("\\left({}\\right)", latex_ratfun(c, var))
        };
        terms.push(format!("{coef}{d}"));
    }
    terms.join(" + ").replace("+ -", "- ")
}

pub fn latex_pair(pair: &BispectralPair) -> String {
    let v = spectral_variable(&pair.family);
    let mut s = String::new();
    let _ = writeln!(s, "L &= {} \\\\", latex_op(&pair.l, "x"));
    let _ = writeln!(s, "\\Lambda &= {} \\\\", latex_op(&pair.big_lambda, v));
    let _ = writeln!(s, "\\Theta(z) &= {}", latex_poly(&pair.theta, "z"));
    format!("\\begin{{aligned}}\n{s}\\end{{aligned}}\n")
}

// ---- text ----

fn op_text(op: &DiffOp, var: &str) -> String {
    let mut s = String::new();
    let _ = op.write_in(&mut s, var);
    s
}

fn poly_text(p: &UniPoly, var: &str) -> String {
    let mut s = String::new();
    let _ = crate::field::write_poly(&mut s, p, var);
    s
}

pub fn family_text(f: &Family) -> String {
    let list = |v: &[Scalar]| v.iter().map(Scalar::to_string).collect::<Vec<_>>().join(", ");
    match f {
        Family::Bessel(bp) => format!("bessel N={} beta=[{}]", bp.n(), list(bp.beta())),
        Family::Airy(ap) => format!("airy N={} alpha0={} alpha=[{}]", ap.n(), ap.alpha0(), list(ap.alpha())),
    }
}

pub fn text_plane(plane: &DarbouxPlane) -> String {
    format!(
        "family: {}\nP = {}\ng = {}\n",
        family_text(&plane.family),
        op_text(&plane.p, "x"),
        poly_text(&plane.g, "z")
    )
}

pub fn text_pair(pair: &BispectralPair) -> String {
    let v = spectral_variable(&pair.family);
    let mut s = format!("family: {}\n", family_text(&pair.family));
    let ops = [
        ("P", &pair.p, "x"),
        ("Q", &pair.q, "x"),
        ("P_b", &pair.p_b, v),
        ("Q_b", &pair.q_b, v),
        ("L", &pair.l, "x"),
        ("Lambda", &pair.big_lambda, v),
    ];
    for (name, op, var) in ops {
        let _ = writeln!(s, "{name} = {}", op_text(op, var));
    }
    let polys = [
        ("g", &pair.g, "z"),
        ("f", &pair.f, "z"),
        ("h", &pair.h, "t"),
        ("g_b", &pair.g_b, "z"),
        ("f_b", &pair.f_b, "z"),
        ("Theta", &pair.theta, "z"),
    ];
    for (name, p, var) in polys {
        let _ = writeln!(s, "{name} = {}", poly_text(p, var));
    }
    s
}
