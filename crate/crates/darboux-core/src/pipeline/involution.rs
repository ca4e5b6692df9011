use super::{canonicalize, construct_b, darboux_cofactors, normalize_monic, plane_h, strip_factors, DarbouxPlane};
use crate::error::{Error, Result};
use crate::field::Scalar;

/// aW = (Q*, f(−z)) over a(β) or a(α).
pub fn involution_a(plane: &DarbouxPlane) -> Result<DarbouxPlane> {
    let (q, f) = darboux_cofactors(plane, &plane_h(plane)?)?;
    canonicalize(&DarbouxPlane {
        family: plane.family.a_involution(),
        conditions: None,
        p: q.adjoint(),
        g: f.scale_arg(&Scalar::int(-1)),
    })
}

/// sW = (P(−x, −∂), g(−z)).
pub fn involution_s(plane: &DarbouxPlane) -> Result<DarbouxPlane> {
    canonicalize(&DarbouxPlane {
        family: plane.family.s_involution(),
        conditions: None,
        p: plane.p.flip(),
        g: plane.g.scale_arg(&Scalar::int(-1)),
    })
}

/// bW = (P_b, g_b) over the same base operator.
pub fn involution_b(plane: &DarbouxPlane) -> Result<DarbouxPlane> {
    let (pb, gb) = construct_b(&plane.family, &plane.p, &plane.g)?;
    let (pb, gb) = normalize_monic(pb, gb)?;
    let (p, g) = strip_factors(&plane.family, &pb, &gb)?;
    Ok(DarbouxPlane {
        family: plane.family.clone(),
        conditions: None,
        p,
        g,
    })
}

/// a∘b = b∘a∘s as an equality of canonical (P, g).
pub fn check_ab_bas(plane: &DarbouxPlane) -> Result<bool> {
    if !plane.family.is_bessel() {
        return Err(Error::FamilyMismatch("ab = bas is checked on Bessel planes".into()));
    }
    let lhs = involution_a(&involution_b(plane)?)?;
    let rhs = involution_b(&involution_a(&involution_s(plane)?)?)?;
    Ok(lhs.family == rhs.family && lhs.p == rhs.p && lhs.g == rhs.g)
}
