//! Exact checks of L Ψ_W = h Ψ_W and Λ Ψ_W = Θ Ψ_W in a symbol ring.
//!
//! Bessel: symbols D_w^m Ψ_β(w), w = xz, reduced by P_β(D_w)Ψ = w^N Ψ.
//! Airy: symbols ∂_y^m Ψ_α(y), y = x + u with u = z^N/α₀; z-side operators
//! act in u, where L_α(u, ∂_u)Ψ = α₀xΨ.

use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::field::{BiRatFun, RatFun, Scalar, UniPoly};
use crate::pipeline::BispectralPair;

/// Σ_m c_m(x, z) Ψ^{(m)}, m < N.
pub type SymbolExpr = Vec<BiRatFun>;

pub struct SymbolRing {
    n: usize,
    /// Ψ^{(N)} rewritten over Ψ^{(0..N)}.
    top: SymbolExpr,
    /// ∂_x Ψ^{(m)} = sx Ψ^{(m+1)}, ∂_z Ψ^{(m)} = sz Ψ^{(m+1)}.
    sx: BiRatFun,
    sz: BiRatFun,
}

impl SymbolRing {
    pub fn new(family: &Family) -> SymbolRing {
        let n = family.n() as usize;
        match family {
            Family::Bessel(bp) => {
                let pb = bp.p_beta();
                let mut top: SymbolExpr = (0..n).map(|m| BiRatFun::constant(-&pb.coeff(m))).collect();
                top[0] = &top[0] + &BiRatFun::monomial(Scalar::one(), n as i64, n as i64);
                SymbolRing {
                    n,
                    top,
                    sx: BiRatFun::monomial(Scalar::one(), -1, 0),
                    sz: BiRatFun::monomial(Scalar::one(), 0, -1),
                }
            }
            Family::Airy(ap) => {
                let rule = ap.reduce_rule();
                let mut top: SymbolExpr = rule.lower.iter().map(|a| BiRatFun::constant(-a)).collect();
                let y = &BiRatFun::monomial(ap.alpha0().clone(), 1, 0) + &BiRatFun::monomial(ap.alpha0().clone(), 0, 1);
                top[0] = &top[0] + &y;
                SymbolRing {
                    n,
                    top,
                    sx: BiRatFun::one(),
                    sz: BiRatFun::one(),
                }
            }
        }
    }

    /// Ψ^{(0)}.
    pub fn psi(&self) -> SymbolExpr {
        let mut e = vec![BiRatFun::zero(); self.n];
        e[0] = BiRatFun::one();
        e
    }

    fn add(a: &SymbolExpr, b: &SymbolExpr) -> SymbolExpr {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn shift(&self, e: &SymbolExpr, s: &BiRatFun) -> SymbolExpr {
        let mut out = vec![BiRatFun::zero(); self.n];
        for (m, c) in e.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = c.mul(s);
            if m + 1 < self.n {
                out[m + 1] = &out[m + 1] + &c;
            } else {
                for (k, t) in self.top.iter().enumerate() {
                    if !t.is_zero() {
                        out[k] = &out[k] + &c.mul(t);
                    }
                }
            }
        }
        out
    }

    pub fn dx(&self, e: &SymbolExpr) -> SymbolExpr {
        let d: SymbolExpr = e.iter().map(BiRatFun::deriv_x).collect();
        SymbolRing::add(&d, &self.shift(e, &self.sx))
    }

    pub fn dz(&self, e: &SymbolExpr) -> SymbolExpr {
        let d: SymbolExpr = e.iter().map(BiRatFun::deriv_z).collect();
        SymbolRing::add(&d, &self.shift(e, &self.sz))
    }

    pub fn scale(e: &SymbolExpr, f: &BiRatFun) -> SymbolExpr {
        e.iter().map(|c| c.mul(f)).collect()
    }

    /// An operator in x applied to e.
    pub fn apply_x(&self, op: &DiffOp, e: &SymbolExpr) -> SymbolExpr {
        self.apply(op, e, |c| BiRatFun::from_x(c), |e| self.dx(e))
    }

    /// An operator in z (u for Airy) applied to e.
    pub fn apply_z(&self, op: &DiffOp, e: &SymbolExpr) -> SymbolExpr {
        self.apply(op, e, |c| BiRatFun::from_z(c.clone()), |e| self.dz(e))
    }

    fn apply(
        &self,
        op: &DiffOp,
        e: &SymbolExpr,
        lift: impl Fn(&RatFun) -> BiRatFun,
        d: impl Fn(&SymbolExpr) -> SymbolExpr,
    ) -> SymbolExpr {
        let mut acc = vec![BiRatFun::zero(); self.n];
        let mut cur = e.clone();
        for (k, c) in op.coeffs().iter().enumerate() {
            if k > 0 {
                cur = d(&cur);
            }
            if !c.is_zero() {
                acc = SymbolRing::add(&acc, &SymbolRing::scale(&cur, &lift(c)));
            }
        }
        acc
    }
}

fn first_nonzero(e: &SymbolExpr) -> Option<String> {
    e.iter().enumerate().find(|(_, c)| !c.is_zero()).map(|(m, c)| {
        let lead = c.numerator().iter().rev().find(|v| !v.is_zero()).unwrap();
        let mut s = format!("coefficient of Psi^({m}) has leading x-term {lead}");
        if s.len() > 240 {
            s.truncate(240);
            s.push_str("...");
        }
        s
    })
}

/// (g(z), h(z^N), Θ) as multipliers in the ring's variables.
fn multipliers(pair: &BispectralPair) -> (RatFun, RatFun, RatFun) {
    let n = pair.family.n() as usize;
    match &pair.family {
        Family::Bessel(_) => (
            RatFun::poly(pair.g.clone()),
            RatFun::poly(pair.h.inflate(n)),
            RatFun::poly(pair.theta.clone()),
        ),
        Family::Airy(ap) => {
            let a0 = ap.alpha0();
            let g1 = pair.g.deflate(n).unwrap_or_else(UniPoly::zero);
            (
                RatFun::poly(g1.scale_arg(a0)),
                RatFun::poly(pair.h.scale_arg(a0)),
                RatFun::poly(pair.theta_t().scale_arg(a0)),
            )
        }
    }
}

/// Checks L Ψ_W = h(z^N) Ψ_W and Λ Ψ_W = Θ Ψ_W with Ψ_W = g(z)^{-1} P Ψ_V.
pub fn check_bispectral_symbolic(pair: &BispectralPair) -> Result<()> {
    let ring = SymbolRing::new(&pair.family);
    let (g, h, theta) = multipliers(pair);
    if g.is_zero() {
        return Err(Error::NotZNHomogeneous {
            n: pair.family.n(),
            detail: format!("g = {} is not a polynomial in z^N", pair.g),
        });
    }
    let psi_w = SymbolRing::scale(&ring.apply_x(&pair.p, &ring.psi()), &BiRatFun::from_z(g.inv()));

    let lhs = ring.apply_x(&pair.l, &psi_w);
    let rhs = SymbolRing::scale(&psi_w, &BiRatFun::from_z(h));
    if let Some(detail) = first_nonzero(&SymbolRing::add(&lhs, &SymbolRing::scale(&rhs, &BiRatFun::constant(Scalar::int(-1))))) {
        return Err(Error::IdentityFailed {
            identity: "L Psi_W = h(z^N) Psi_W".into(),
            detail,
        });
    }

    let lhs = ring.apply_z(&pair.big_lambda, &psi_w);
    let rhs = SymbolRing::scale(&psi_w, &BiRatFun::from_x(&theta));
    if let Some(detail) = first_nonzero(&SymbolRing::add(&lhs, &SymbolRing::scale(&rhs, &BiRatFun::constant(Scalar::int(-1))))) {
        return Err(Error::IdentityFailed {
            identity: "Lambda Psi_W = Theta Psi_W".into(),
            detail,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::airy::AiryParam;
    use crate::bessel::BesselParam;

    #[test]
    fn base_operator_has_eigenvalue() {
        let fams = [
            Family::Bessel(BesselParam::from_ratios(&[(1, 3), (2, 3)]).unwrap()),
            Family::Bessel(BesselParam::from_ratios(&[(0, 1)]).unwrap()),
            Family::Airy(AiryParam::new(3, Scalar::int(2), vec![Scalar::frac(1, 2)]).unwrap()),
        ];
        for fam in fams {
            let ring = SymbolRing::new(&fam);
            let n = fam.n() as i64;
            let lpsi = ring.apply_x(&fam.op(), &ring.psi());
            let eig = match &fam {
                Family::Bessel(_) => BiRatFun::monomial(Scalar::one(), 0, n),
                Family::Airy(ap) => BiRatFun::monomial(ap.alpha0().clone(), 0, 1),
            };
            let diff = SymbolRing::add(&lpsi, &SymbolRing::scale(&ring.psi(), &eig.scale(&Scalar::int(-1))));
            assert!(diff.iter().all(BiRatFun::is_zero), "{}", fam.name());
            // and symmetrically in z
            let lz = ring.apply_z(&fam.op(), &ring.psi());
            let eig = match &fam {
                Family::Bessel(_) => BiRatFun::monomial(Scalar::one(), n, 0),
                Family::Airy(ap) => BiRatFun::monomial(ap.alpha0().clone(), 1, 0),
            };
            let diff = SymbolRing::add(&lz, &SymbolRing::scale(&ring.psi(), &eig.scale(&Scalar::int(-1))));
            assert!(diff.iter().all(BiRatFun::is_zero));
        }
    }
}
