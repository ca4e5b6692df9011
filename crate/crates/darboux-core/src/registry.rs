//! Built-in example condition sets with small rational defaults.

use crate::airy::AiryParam;
use crate::bessel::BesselParam;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::field::Scalar;
use crate::kernel::{Condition, ConditionSet, PointCondition, PointForm, ZeroTerm};
use crate::pipeline::monomial_conditions;

pub const EXAMPLE_IDS: &[&str] = &["9.2", "9.2-n3", "9.3", "9.4", "9.5", "9.7", "9.8", "9.9", "9.10", "log"];

/// Optional overrides; unset fields take the example's default.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExampleParams {
    pub a: Option<Scalar>,
    pub b: Option<Scalar>,
    pub t: Option<Scalar>,
    pub lambda: Option<Scalar>,
    pub nu: Option<Scalar>,
    pub alpha0: Option<Scalar>,
    pub alpha2: Option<Scalar>,
}

fn pick(v: &Option<Scalar>, default: Scalar) -> Scalar {
    v.clone().unwrap_or(default)
}

/// Multipliers μ_{kj} of the basis Φ_{(k−1)d+j} = μ_{kj} x^{β_k+(j−1)N}.
pub fn phi_multipliers(bp: &BesselParam, d: usize) -> Result<Vec<Scalar>> {
    let n = Scalar::int(bp.n() as i64);
    let mut out = Vec::with_capacity(d * bp.beta().len());
    for bk in bp.beta() {
        let mut mu = Scalar::one();
        out.push(mu.clone());
        for j in 2..=d {
            let shift = &n * &Scalar::int(j as i64 - 1);
            for bi in bp.beta() {
                let f = &(bi - bk) - &shift;
                if f.is_zero() {
                    return Err(Error::DegenerateGamma(format!(
                        "Phi basis is undefined for beta = {:?} at depth {d}",
                        bp.beta()
                    )));
                }
                mu = &mu / &f;
            }
            out.push(mu.clone());
        }
    }
    Ok(out)
}

/// Rows of A in the Φ basis rewritten over plain powers x^{γ_i}.
pub fn phi_to_powers(bp: &BesselParam, d: usize, a: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>> {
    let mu = phi_multipliers(bp, d)?;
    Ok(a.iter()
        .map(|row| row.iter().zip(&mu).map(|(x, m)| x * m).collect())
        .collect())
}

/// Monomial example data: (β, d, A over plain powers).
pub fn monomial_data(id: &str, p: &ExampleParams) -> Result<Option<(BesselParam, usize, Vec<Vec<Scalar>>)>> {
    let s = Scalar::int;
    let z = Scalar::zero;
    Ok(match id {
        "9.2" => {
            let bp = BesselParam::from_ratios(&[(5, 2), (-3, 2)])?;
            let t = pick(&p.t, s(2));
            let a = vec![vec![s(1), z(), s(3), z()], vec![t, s(1), s(-1), s(3)]];
            Some((bp.clone(), 2, phi_to_powers(&bp, 2, &a)?))
        }
        "9.2-n3" => {
            let bp = BesselParam::from_ratios(&[(-5, 1), (1, 1), (7, 1)])?;
            let t = pick(&p.t, s(2));
            let a = vec![
                vec![s(1), z(), s(2), z(), s(-1), z()],
                vec![t, s(1), s(1), s(2), s(5), s(-1)],
            ];
            Some((bp.clone(), 2, phi_to_powers(&bp, 2, &a)?))
        }
        "9.3" => {
            let bp = BesselParam::from_ratios(&[(1, 3), (2, 3)])?;
            let a = vec![
                vec![s(1), pick(&p.a, s(1)), z(), z()],
                vec![z(), z(), s(1), pick(&p.b, s(2))],
            ];
            Some((bp.clone(), 2, phi_to_powers(&bp, 2, &a)?))
        }
        "9.4" => {
            let bp = BesselParam::from_ratios(&[(9, 2), (-7, 2)])?;
            let (l, a, b) = (pick(&p.lambda, s(1)), pick(&p.a, s(1)), pick(&p.b, s(1)));
            let a = vec![
                vec![l.clone(), z(), z(), z(), &(&l * &a) + &b, &l * &b, z(), z()],
                vec![z(), z(), s(1), z(), z(), z(), a, b],
            ];
            Some((bp.clone(), 4, phi_to_powers(&bp, 4, &a)?))
        }
        "9.5" => {
            let bp = BesselParam::from_ratios(&[(-3, 2), (5, 2)])?;
            Some((bp, 1, vec![vec![pick(&p.t, s(2)), s(1)]]))
        }
        _ => None,
    })
}

pub fn example(id: &str, p: &ExampleParams) -> Result<ConditionSet> {
    if let Some((bp, d, a)) = monomial_data(id, p)? {
        return monomial_conditions(&bp, &a, d);
    }
    let s = Scalar::int;
    match id {
        "9.7" => {
            let fam = Family::Bessel(BesselParam::from_ratios(&[(0, 1)])?);
            let jet = PointCondition::new(pick(&p.lambda, s(1)), vec![s(1), pick(&p.a, s(1))]);
            ConditionSet::new(fam, vec![Condition::Point(jet)])
        }
        "9.8" => {
            let nu = pick(&p.nu, Scalar::frac(1, 3));
            let bp = BesselParam::new(vec![&Scalar::one() - &nu, nu])?;
            let jet = PointCondition::new(pick(&p.lambda, s(1)), vec![s(1), pick(&p.a, s(2))])
                .with_form(PointForm::Euler);
            ConditionSet::new(Family::Bessel(bp), vec![Condition::Point(jet)])
        }
        "9.9" => {
            let fam = Family::Airy(AiryParam::new(2, pick(&p.alpha0, s(1)), vec![])?);
            let jet = PointCondition::new(pick(&p.lambda, s(0)), vec![s(1), pick(&p.a, s(1))]);
            ConditionSet::new(fam, vec![Condition::Point(jet)])
        }
        "9.10" => {
            let fam = Family::Airy(AiryParam::new(
                3,
                pick(&p.alpha0, s(2)),
                vec![pick(&p.alpha2, Scalar::frac(1, 2))],
            )?);
            let jet = PointCondition::new(pick(&p.lambda, Scalar::frac(1, 2)), vec![s(1), pick(&p.a, s(3))]);
            ConditionSet::new(fam, vec![Condition::Point(jet)])
        }
        "log" => {
            let fam = Family::Bessel(BesselParam::from_ratios(&[(1, 1), (1, 1), (1, 1)])?);
            let term = |k, j, b| ZeroTerm { i: 0, k, j, b };
            ConditionSet::new(
                fam,
                vec![Condition::Zero(vec![
                    term(0, 0, pick(&p.t, s(2))),
                    term(0, 1, pick(&p.a, s(-1))),
                    term(1, 2, pick(&p.b, s(3))),
                ])],
            )
        }
        _ => Err(Error::Input(format!(
            "unknown example `{id}`; known: {}",
            EXAMPLE_IDS.join(", ")
        ))),
    }
}
