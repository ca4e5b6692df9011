//! Independent checks of generated pairs.

mod series;
mod symbolic;

pub use crate::pipeline::check_ab_bas;

use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::pipeline::BispectralPair;
pub use series::{check_series_eigen, check_wave, wave_series, WaveSeries};
pub use symbolic::{check_bispectral_symbolic, SymbolExpr, SymbolRing};

/// Q·P = h(L_V), f·g = h(z^N), Q_b·P_b = θ(L_V), f_b·g_b = Θ, L = P·Q, Λ = P_b·Q_b.
pub fn check_factorizations(pair: &BispectralPair) -> Result<()> {
    let n = pair.family.n() as usize;
    let lv = pair.family.op();
    let fail = |identity: &str, detail: String| {
        Err(Error::IdentityFailed {
            identity: identity.into(),
            detail,
        })
    };
    let r = pair.q.op_mul(&pair.p) - DiffOp::of_poly(&pair.h, &lv);
    if !r.is_zero() {
        return fail("Q P = h(L)", format!("remainder of order {}", r.ord()));
    }
    if &pair.f * &pair.g != pair.h.inflate(n) {
        return fail("f g = h(z^N)", format!("f g = {}", &pair.f * &pair.g));
    }
    let Some(theta_t) = pair.theta.deflate(n) else {
        return fail("Theta in z^N", format!("Theta = {}", pair.theta));
    };
    let r = pair.q_b.op_mul(&pair.p_b) - DiffOp::of_poly(&theta_t, &lv);
    if !r.is_zero() {
        return fail("Q_b P_b = theta(L)", format!("remainder of order {}", r.ord()));
    }
    if &pair.f_b * &pair.g_b != pair.theta {
        return fail("f_b g_b = Theta", format!("f_b g_b = {}", &pair.f_b * &pair.g_b));
    }
    if pair.p.op_mul(&pair.q) != pair.l {
        return fail("L = P Q", String::new());
    }
    if pair.p_b.op_mul(&pair.q_b) != pair.big_lambda {
        return fail("Lambda = P_b Q_b", String::new());
    }
    Ok(())
}

/// Rank of a commutative algebra from the orders of its elements.
pub fn rank_of(orders: &[usize]) -> usize {
    orders.iter().fold(0, |g, &o| num_integer::gcd(g, o))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffop::DiffOp;
    use crate::error::Error;
    use crate::field::{RatFun, Scalar, UniPoly};
    use crate::pipeline::{build_plane, complete_pair, BispectralPair, DarbouxPlane};
    use crate::registry::{example, ExampleParams};

    fn pair_of(id: &str, params: &ExampleParams) -> BispectralPair {
        complete_pair(&build_plane(&example(id, params).unwrap()).unwrap()).unwrap()
    }

    fn bump(op: &DiffOp, k: usize) -> DiffOp {
        let mut c = op.coeffs().to_vec();
        c[k] = &c[k] + &RatFun::one();
        DiffOp::new(c)
    }

    #[test]
    fn symbolic_check_passes_and_rejects_perturbations() {
        for id in ["9.5", "9.8", "9.9", "9.10"] {
            let pair = pair_of(id, &ExampleParams::default());
            check_bispectral_symbolic(&pair).unwrap();
            for k in 0..=pair.l.ord() {
                let bad = BispectralPair {
                    l: bump(&pair.l, k),
                    ..pair.clone()
                };
                assert!(matches!(check_bispectral_symbolic(&bad), Err(Error::IdentityFailed { .. })));
            }
            let bad = BispectralPair {
                big_lambda: bump(&pair.big_lambda, 0),
                ..pair.clone()
            };
            assert!(check_bispectral_symbolic(&bad).is_err());
        }
    }

    #[test]
    fn airy_pairs_for_several_parameters() {
        let q = Scalar::frac;
        for (a, lam, a0) in [(q(1, 1), q(0, 1), q(1, 1)), (q(2, 3), q(1, 2), q(-3, 1)), (q(-5, 2), q(3, 1), q(1, 7))] {
            let params = ExampleParams {
                a: Some(a),
                lambda: Some(lam),
                alpha0: Some(a0),
                ..Default::default()
            };
            check_bispectral_symbolic(&pair_of("9.9", &params)).unwrap();
        }
    }

    #[test]
    fn series_rejects_dropped_g_factor() {
        let pair = pair_of("9.8", &ExampleParams::default());
        let plane = pair.plane();
        check_wave(&plane, 10, 8).unwrap();
        check_series_eigen(&pair, 10).unwrap();
        let dropped = DarbouxPlane {
            g: UniPoly::from_ints(&[1, 1]),
            ..plane.clone()
        };
        let err = wave_series(&dropped, 10).unwrap_err();
        assert!(matches!(err, Error::IdentityFailed { ref identity, .. } if identity.contains("shape")));
        let bad = BispectralPair {
            l: bump(&pair.l, 0),
            ..pair
        };
        assert!(check_series_eigen(&bad, 10).is_err());
        assert!(matches!(check_wave(&plane, 4, 8), Err(Error::MarginExhausted { k: 4, required: 8 })));
    }

    #[test]
    fn rank_is_gcd() {
        assert_eq!(rank_of(&[4, 6, 8, 10]), 2);
        assert_eq!(rank_of(&[3]), 3);
        assert_eq!(rank_of(&[6, 9, 12]), 3);
    }
}
