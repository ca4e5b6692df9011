//! Parameter laws for planes cut out by one first-order condition at a point.

use super::{build_plane, involution_a, involution_b, DarbouxPlane};
use crate::error::{Error, Result};
use crate::family::Family;
use crate::field::{Scalar, UniPoly};
use crate::kernel::{Condition, ConditionSet, PointCondition, PointForm};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OnePointLaw {
    pub n: u32,
    /// Jet coefficient, conditions ∝ [1, a].
    pub a: Scalar,
    pub lambda_n: Scalar,
    /// Read off the b-image: g = z^{kN}(z^N − μ^N).
    pub mu_n: Scalar,
    /// Closed form the pair (λ^N, μ^N) must satisfy, if the family has one.
    pub relation: Option<Relation>,
    /// Bessel/Euler only: the a-image is the one-point plane at (−1)^N λ^N with
    /// coefficient b, 1/a + 1/b + N − 1 = 0.
    pub dual_b: Option<(Scalar, bool)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub text: &'static str,
    pub lhs: Scalar,
    pub rhs: Scalar,
}

impl Relation {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

impl OnePointLaw {
    pub fn holds(&self) -> bool {
        self.relation.as_ref().is_none_or(Relation::holds) && self.dual_b.as_ref().is_none_or(|d| d.1)
    }
}

fn single_jet(cs: &ConditionSet) -> Option<&PointCondition> {
    match cs.conditions() {
        [Condition::Point(p)] if p.coeffs.len() == 2 && !p.coeffs[0].is_zero() && !p.coeffs[1].is_zero() => Some(p),
        _ => None,
    }
}

/// μ^N from g_b = z^{kN}(z^N − μ^N).
pub fn mu_n_of(g_b: &UniPoly, n: usize) -> Option<Scalar> {
    let t = g_b.deflate(n)?;
    let t = t.unshift(t.valuation()?);
    (t.deg() == 1).then(|| -&t.monic().coeff(0))
}

/// The law for a one-point plane; `None` when the plane is not of that shape.
pub fn one_point_law(plane: &DarbouxPlane) -> Result<Option<OnePointLaw>> {
    let Some(cs) = &plane.conditions else {
        return Ok(None);
    };
    let Some(jet) = single_jet(cs) else {
        return Ok(None);
    };
    let n = plane.n();
    let a = &jet.coeffs[1] / &jet.coeffs[0];
    let lambda_n = jet.lambda_n().clone();
    let gb = involution_b(plane)?.g;
    let mu_n = mu_n_of(&gb, n as usize)
        .ok_or_else(|| Error::IdentityFailed {
            identity: "g_b = z^(kN) (z^N - mu^N)".into(),
            detail: format!("g_b = {gb}"),
        })?;
    let minus_inv = -&a.inv();
    let (relation, dual_b) = match (&plane.family, jet.form) {
        (Family::Airy(ap), _) => (
            Some(Relation {
                text: "lambda^N + mu^N = P_alpha'(-1/a)",
                lhs: &lambda_n + &mu_n,
                rhs: ap.p_alpha_prime().eval(&minus_inv),
            }),
            None,
        ),
        (Family::Bessel(bp), PointForm::Euler) => {
            let nn = Scalar::int(n as i64);
            let b = -&(&a / &(&Scalar::one() + &(&a * &(&nn - &Scalar::one()))));
            let sign = Scalar::int(if n % 2 == 0 { 1 } else { -1 });
            let afam = plane.family.a_involution();
            let expect = build_plane(&ConditionSet::new(
                afam,
                vec![Condition::Point(
                    PointCondition::from_power(&sign * &lambda_n, vec![Scalar::one(), b.clone()])
                        .with_form(PointForm::Euler),
                )],
            )?)?;
            let ia = involution_a(plane)?;
            let ok = ia.p == expect.p && ia.g == expect.g;
            (
                Some(Relation {
                    text: "lambda^N mu^N = P_beta(-1/a)",
                    lhs: &lambda_n * &mu_n,
                    rhs: bp.p_beta().eval(&minus_inv),
                }),
                Some((b, ok)),
            )
        }
        _ => (None, None),
    };
    Ok(Some(OnePointLaw {
        n,
        a,
        lambda_n,
        mu_n,
        relation,
        dual_b,
    }))
}
