use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::field::{RatFun, Scalar, UniPoly};

/// Raw (P_b, g_b) with Ψ_W(x, z) = g_b(x)^{-1}·P_b(z, ∂_z)Ψ_V.
///
/// Bessel: P = x^{-s}·den(x^N)^{-1}·Σ p_k(x^N)D^k gives
/// P_b = g(x)^{-1}·Σ D^k p_k(L_β) and g_b = z^s·den(z^N).
/// Airy: P = den^{-1}·Σ p_k ∂^k with g = g₁(z^N) gives
/// P_b = g₁(α₀x)^{-1}·Σ ∂^k p_k(α₀^{-1}L_α) and g_b = den(α₀^{-1}z^N).
pub fn construct_b(family: &Family, p: &DiffOp, g: &UniPoly) -> Result<(DiffOp, UniPoly)> {
    let n = family.n() as usize;
    let l = family.op();
    match family {
        Family::Bessel(_) => {
            let df = p.to_dform(n as u32)?;
            let euler = DiffOp::euler();
            let mut acc = DiffOp::zero();
            let mut dk = DiffOp::one();
            for (k, pk) in df.p.iter().enumerate() {
                if k > 0 {
                    dk = dk.op_mul(&euler);
                }
                if pk.is_zero() {
                    continue;
                }
                acc = &acc + &dk.op_mul(&DiffOp::of_poly(pk, &l));
            }
            let pb = acc.mul_left_fn(&RatFun::poly(g.clone()).inv());
            let shift = usize::try_from(df.shift)
                .map_err(|_| Error::InvalidParam("negative D-form shift".into()))?;
            let gb = df.den.inflate(n).shift(shift);
            Ok((pb, gb))
        }
        Family::Airy(ap) => {
            let g1 = g.deflate(n).ok_or_else(|| Error::NotZNHomogeneous {
                n: n as u32,
                detail: format!("g = {g} is not a polynomial in z^{n}"),
            })?;
            let mut den = UniPoly::one();
            for c in p.coeffs() {
                den = UniPoly::lcm(&den, c.den());
            }
            let inv_a0 = ap.alpha0().inv();
            let mut acc = DiffOp::zero();
            for (k, c) in p.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let pk = c.num() * &den.div_exact(c.den());
                let t = DiffOp::of_poly(&pk.scale_arg(&inv_a0), &l);
                acc = &acc + &DiffOp::d_pow(k).op_mul(&t);
            }
            let g1x = g1.scale_arg(ap.alpha0());
            let pb = acc.mul_left_fn(&RatFun::poly(g1x).inv());
            let gb = den.scale_arg(&inv_a0).inflate(n);
            Ok((pb, gb))
        }
    }
}

/// θ with A = θ(L), if A is a polynomial in L.
pub fn poly_of_l(a: &DiffOp, l: &DiffOp) -> Option<UniPoly> {
    let mut coeffs = Vec::new();
    let mut cur = a.clone();
    while !cur.is_zero() {
        let (q, r) = cur.right_divide(l);
        let c = if r.is_zero() {
            Scalar::zero()
        } else if r.ord() == 0 {
            r.coeff(0).as_constant()?
        } else {
            return None;
        };
        coeffs.push(c);
        cur = q;
    }
    Some(UniPoly::new(coeffs))
}
