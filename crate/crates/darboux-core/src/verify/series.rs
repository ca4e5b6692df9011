//! Truncated wave series e^{-xz}Ψ_W = Σ_k a_k(x) z^{-k} for Bessel planes.

use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::field::{RatFun, Scalar, UniPoly};
use crate::pipeline::{BispectralPair, DarbouxPlane};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WaveSeries {
    pub k: usize,
    /// a_0..=a_margin are exact.
    pub margin: usize,
    pub coeffs: Vec<RatFun>,
}

/// Σ_i c[i] z^{top−i}, every listed term exact.
#[derive(Clone, Debug)]
struct ZSeries {
    top: i64,
    c: Vec<RatFun>,
}

impl ZSeries {
    /// e^{-xz}·op·(e^{xz}·self), keeping the same number of exact terms.
    fn apply(&self, op: &DiffOp) -> ZSeries {
        let m = op.ord();
        let len = self.c.len();
        let mut out = vec![RatFun::zero(); len];
        let mut cur = self.c.clone();
        for (j, pj) in op.coeffs().iter().enumerate() {
            if j > 0 {
                // (z + ∂_x): G[i] = c[i] + ∂c[i−1]
                let prev = cur.clone();
                for i in 1..len {
                    cur[i] = &prev[i] + &prev[i - 1].derivative();
                }
            }
            if pj.is_zero() {
                continue;
            }
            let off = m - j;
            for i in off..len {
                out[i] = &out[i] + &(pj * &cur[i - off]);
            }
        }
        ZSeries {
            top: self.top + m as i64,
            c: out,
        }
    }

    /// Product with a polynomial in z (no loss of exact terms).
    fn mul_poly(&self, p: &UniPoly) -> ZSeries {
        let d = p.deg();
        let len = self.c.len();
        let mut out = vec![RatFun::zero(); len];
        for (i, o) in out.iter_mut().enumerate() {
            for l in 0..=i.min(d) {
                let gl = p.coeff(d - l);
                if !gl.is_zero() {
                    *o = &*o + &self.c[i - l].scale(&gl);
                }
            }
        }
        ZSeries {
            top: self.top + d as i64,
            c: out,
        }
    }

    /// Quotient by a polynomial in z, expanded in z^{-1}.
    fn div_poly(&self, g: &UniPoly) -> ZSeries {
        let d = g.deg();
        let len = self.c.len();
        let inv = g.lc().inv();
        let mut r = vec![Scalar::zero(); len];
        for i in 0..len {
            let mut s = if i == 0 { Scalar::one() } else { Scalar::zero() };
            for l in 1..=i.min(d) {
                s = &s - &(&g.coeff(d - l) * &r[i - l]);
            }
            r[i] = &s * &inv;
        }
        let c = (0..len)
            .map(|i| (0..=i).fold(RatFun::zero(), |acc, l| &acc + &self.c[l].scale(&r[i - l])))
            .collect();
        ZSeries {
            top: self.top - d as i64,
            c,
        }
    }
}

fn master_series(plane: &DarbouxPlane, k: usize) -> Result<ZSeries> {
    let Family::Bessel(bp) = &plane.family else {
        return Err(Error::FamilyMismatch("wave series are computed for Bessel planes only".into()));
    };
    let a = bp.wave_coeffs(k)?.a;
    Ok(ZSeries {
        top: 0,
        c: a.iter().enumerate().map(|(i, v)| RatFun::monomial(v.clone(), -(i as i64))).collect(),
    })
}

fn psi_w(plane: &DarbouxPlane, k: usize) -> Result<ZSeries> {
    Ok(master_series(plane, k)?.apply(&plane.p).div_poly(&plane.g))
}

/// Normalized coefficients of Ψ_W up to z^{-K}; rejects a wrong shape or missing decay.
pub fn wave_series(plane: &DarbouxPlane, k: usize) -> Result<WaveSeries> {
    let s = psi_w(plane, k)?;
    if s.top != 0 || !s.c[0].is_one() {
        return Err(Error::IdentityFailed {
            identity: "wave shape a_0 = 1".into(),
            detail: format!("e^(-xz) Psi_W starts with ({}) z^{}", s.c[0], s.top),
        });
    }
    if let Some((i, a)) = s.c.iter().enumerate().skip(1).find(|(_, a)| !a.vanishes_at_infinity()) {
        return Err(Error::IdentityFailed {
            identity: "decay of a_k".into(),
            detail: format!("a_{i} = {a} does not vanish at infinity"),
        });
    }
    Ok(WaveSeries {
        k,
        margin: k,
        coeffs: s.c,
    })
}

/// As [`wave_series`], requiring at least `depth` exact orders.
pub fn check_wave(plane: &DarbouxPlane, k: usize, depth: usize) -> Result<WaveSeries> {
    if k < depth {
        return Err(Error::MarginExhausted { k, required: depth });
    }
    wave_series(plane, k)
}

/// L Ψ_W = h(z^N) Ψ_W on every exact order of the truncated series.
pub fn check_series_eigen(pair: &BispectralPair, k: usize) -> Result<()> {
    let plane = pair.plane();
    let s = psi_w(&plane, k)?;
    let lhs = s.apply(&pair.l);
    let rhs = s.mul_poly(&pair.h.inflate(pair.family.n() as usize));
    let fail = |detail: String| Error::IdentityFailed {
        identity: "series L Psi_W = h(z^N) Psi_W".into(),
        detail,
    };
    if lhs.top != rhs.top {
        return Err(fail(format!("leading powers z^{} and z^{} differ", lhs.top, rhs.top)));
    }
    match lhs.c.iter().zip(&rhs.c).position(|(a, b)| a != b) {
        Some(i) => Err(fail(format!("orders differ at z^{}", lhs.top - i as i64))),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bessel::BesselParam;

    #[test]
    fn identity_plane_trivial_beta() {
        let fam = Family::Bessel(BesselParam::from_ratios(&[(0, 1)]).unwrap());
        let ws = wave_series(&DarbouxPlane::identity(fam), 6).unwrap();
        assert!(ws.coeffs[0].is_one());
        assert!(ws.coeffs[1..].iter().all(RatFun::is_zero));
    }

    #[test]
    fn single_power_kernel() {
        // N = 1, β = 0, ker P = {x}: P = ∂ − 1/x, g = z, Ψ_W = e^{xz}(1 − 1/(xz))
        let fam = Family::Bessel(BesselParam::from_ratios(&[(0, 1)]).unwrap());
        let plane = DarbouxPlane {
            family: fam,
            conditions: None,
            p: DiffOp::new(vec![RatFun::monomial(Scalar::int(-1), -1), RatFun::one()]),
            g: UniPoly::x(),
        };
        let ws = wave_series(&plane, 5).unwrap();
        assert_eq!(ws.coeffs[1], RatFun::monomial(Scalar::int(-1), -1));
        assert!(ws.coeffs[2..].iter().all(RatFun::is_zero));
        assert!(check_wave(&plane, 3, 8).is_err());
    }
}
