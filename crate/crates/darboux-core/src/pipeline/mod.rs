//! From conditions to bispectral pairs.

mod bconstruct;
mod canon;
mod involution;
mod laws;
mod monomial;
mod spectral;

pub use bconstruct::{construct_b, poly_of_l};
pub use canon::{canonicalize, find_h, strip_factors};
pub use involution::{check_ab_bas, involution_a, involution_b, involution_s};
pub use laws::{mu_n_of, one_point_law, OnePointLaw, Relation};
pub use monomial::{monomial_closed_forms, monomial_conditions, MonomialForms};
pub use spectral::{minimal_l, rank_search, spectral_algebra, SpectralElement};

use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::field::UniPoly;
use crate::kernel::{self, Certificate, ConditionSet};

/// W = g(z)^{-1}·P·V over the base operator of `family`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DarbouxPlane {
    pub family: Family,
    /// User conditions; `None` for planes produced by an involution.
    pub conditions: Option<ConditionSet>,
    pub p: DiffOp,
    pub g: UniPoly,
}

impl DarbouxPlane {
    pub fn identity(family: Family) -> DarbouxPlane {
        DarbouxPlane {
            conditions: Some(ConditionSet::empty(family.clone())),
            family,
            p: DiffOp::one(),
            g: UniPoly::one(),
        }
    }

    pub fn n(&self) -> u32 {
        self.family.n()
    }

    /// Same plane data without the condition record.
    pub fn derived(&self) -> DarbouxPlane {
        DarbouxPlane {
            conditions: None,
            ..self.clone()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BispectralPair {
    pub family: Family,
    pub p: DiffOp,
    pub q: DiffOp,
    pub g: UniPoly,
    pub f: UniPoly,
    /// Q·P = h(L_V); f·g = h(z^N).
    pub h: UniPoly,
    pub p_b: DiffOp,
    pub q_b: DiffOp,
    pub g_b: UniPoly,
    pub f_b: UniPoly,
    /// L = P·Q.
    pub l: DiffOp,
    /// Λ = P_b·Q_b.
    pub big_lambda: DiffOp,
    /// Θ(z) = f_b(z)·g_b(z), a polynomial in z^N.
    pub theta: UniPoly,
}

impl BispectralPair {
    /// Θ as a polynomial in t = z^N; Q_b·P_b = θ(L_V).
    pub fn theta_t(&self) -> UniPoly {
        self.theta.deflate(self.family.n() as usize).expect("theta is a polynomial in z^N")
    }

    pub fn plane(&self) -> DarbouxPlane {
        DarbouxPlane {
            family: self.family.clone(),
            conditions: None,
            p: self.p.clone(),
            g: self.g.clone(),
        }
    }

    pub fn b_plane(&self) -> DarbouxPlane {
        DarbouxPlane {
            family: self.family.clone(),
            conditions: None,
            p: self.p_b.clone(),
            g: self.g_b.clone(),
        }
    }
}

pub fn build_plane(cs: &ConditionSet) -> Result<DarbouxPlane> {
    Ok(build_plane_with_certificate(cs)?.0)
}

pub fn build_plane_with_certificate(cs: &ConditionSet) -> Result<(DarbouxPlane, Certificate)> {
    if !kernel::zn_check(cs) {
        return Err(Error::NotZNHomogeneous {
            n: cs.family().n(),
            detail: "kernel is not closed under the rotation".into(),
        });
    }
    let basis = kernel::materialize_kernel(cs)?;
    let (p, cert) = kernel::wronskian_op(&basis, cs.family())?;
    let g = kernel::g_from_conditions(cs);
    Ok((
        DarbouxPlane {
            family: cs.family().clone(),
            conditions: Some(cs.clone()),
            p,
            g,
        },
        cert,
    ))
}

/// Q with Q·P = h(L), or `NonzeroRemainder`.
pub fn cofactor(p: &DiffOp, h: &UniPoly, l: &DiffOp) -> Result<DiffOp> {
    let (q, r) = DiffOp::of_poly(h, l).right_divide(p);
    if !r.is_zero() {
        return Err(Error::NonzeroRemainder { order: r.ord() });
    }
    Ok(q)
}

fn exact_div(a: &UniPoly, b: &UniPoly, what: &str) -> Result<UniPoly> {
    let (q, r) = a.div_rem(b);
    if !r.is_zero() {
        return Err(Error::IdentityFailed {
            identity: what.into(),
            detail: format!("{b} does not divide {a}"),
        });
    }
    Ok(q)
}

/// h(t) from the conditions when known, otherwise by search; h = t for P = 1.
pub fn plane_h(plane: &DarbouxPlane) -> Result<UniPoly> {
    let h = match &plane.conditions {
        Some(cs) => kernel::min_h_exponents(cs).h(),
        None => find_h(plane)?,
    };
    Ok(if h.is_constant() { UniPoly::x() } else { h })
}

/// (Q, f) with Q·P = h(L) and f·g = h(z^N).
pub fn darboux_cofactors(plane: &DarbouxPlane, h: &UniPoly) -> Result<(DiffOp, UniPoly)> {
    let q = cofactor(&plane.p, h, &plane.family.op())?;
    let f = exact_div(&h.inflate(plane.n() as usize), &plane.g, "f g = h(z^N)")?;
    Ok((q, f))
}

pub fn complete_pair(plane: &DarbouxPlane) -> Result<BispectralPair> {
    complete_pair_with_h(plane, &plane_h(plane)?)
}

/// As [`complete_pair`] but with h(t) prescribed.
pub fn complete_pair_with_h(plane: &DarbouxPlane, h: &UniPoly) -> Result<BispectralPair> {
    let fam = &plane.family;
    let n = fam.n() as usize;
    let lv = fam.op();
    let (q, f) = darboux_cofactors(plane, h)?;
    let (p_b, g_b) = construct_b(fam, &plane.p, &plane.g)?;
    let (p_b, g_b) = normalize_monic(p_b, g_b)?;
    // Q_b from the b-image of the adjoint plane
    let (q_b, _) = match fam {
        Family::Bessel(_) => {
            construct_b(&fam.a_involution(), &q.adjoint().flip(), &f)?
        }
        Family::Airy(_) => {
            let fc = f.scale_arg(&crate::field::Scalar::int(-1));
            construct_b(&fam.a_involution(), &q.adjoint(), &fc)?
        }
    };
    let q_b = q_b.adjoint();
    let q_b = q_b.scale(&q_b.lc().as_constant().ok_or_else(|| Error::IdentityFailed {
        identity: "Q_b".into(),
        detail: "leading coefficient is not constant".into(),
    })?.inv());
    let theta_t = poly_of_l(&q_b.op_mul(&p_b), &lv).ok_or_else(|| Error::IdentityFailed {
        identity: "Q_b P_b = Theta(L)".into(),
        detail: "product is not a polynomial in L".into(),
    })?;
    let theta = theta_t.inflate(n);
    let f_b = exact_div(&theta, &g_b, "f_b g_b = Theta")?;
    let l = plane.p.op_mul(&q);
    let big_lambda = p_b.op_mul(&q_b);
    Ok(BispectralPair {
        family: fam.clone(),
        p: plane.p.clone(),
        q,
        g: plane.g.clone(),
        f,
        h: h.clone(),
        p_b,
        q_b,
        g_b,
        f_b,
        l,
        big_lambda,
        theta,
    })
}

/// Divides P and g by the (constant) leading coefficient of P, then makes g monic via P's scale.
pub(crate) fn normalize_monic(p: DiffOp, g: UniPoly) -> Result<(DiffOp, UniPoly)> {
    let lc = p.lc().as_constant().ok_or_else(|| Error::IdentityFailed {
        identity: "monic normalization".into(),
        detail: format!("leading coefficient {} is not constant", p.lc()),
    })?;
    let p = p.scale(&lc.inv());
    let g = g.scale(&lc.inv());
    if g.lc() != crate::field::Scalar::one() {
        return Err(Error::IdentityFailed {
            identity: "wave normalization".into(),
            detail: format!("g = {g} is not monic after normalizing P"),
        });
    }
    Ok((p, g))
}
