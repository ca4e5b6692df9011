//! Generalized Airy operators L_α = ∂^N − α₀x + Σ_{i≥2} α_i ∂^{N−i}.

use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::field::{RatFun, Scalar, UniPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AiryParam {
    n: u32,
    alpha0: Scalar,
    /// α_2, …, α_{N−1}
    alpha: Vec<Scalar>,
}

impl AiryParam {
    pub fn new(n: u32, alpha0: Scalar, alpha: Vec<Scalar>) -> Result<AiryParam> {
        if n < 2 {
            return Err(Error::InvalidParam("Airy operators need N >= 2".into()));
        }
        if alpha0.is_zero() {
            return Err(Error::InvalidParam("alpha0 must be nonzero".into()));
        }
        if alpha.len() != n as usize - 2 {
            return Err(Error::InvalidParam(format!(
                "expected {} coefficients alpha_2..alpha_{}, got {}",
                n - 2,
                n - 1,
                alpha.len()
            )));
        }
        if !alpha0.is_rational() || !alpha.iter().all(Scalar::is_rational) {
            return Err(Error::InvalidParam("alpha must be rational".into()));
        }
        Ok(AiryParam { n, alpha0, alpha })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn alpha0(&self) -> &Scalar {
        &self.alpha0
    }

    pub fn alpha(&self) -> &[Scalar] {
        &self.alpha
    }

    /// α_i for i ≥ 2 (zero outside the stored range).
    pub fn alpha_i(&self, i: usize) -> Scalar {
        if i < 2 {
            return Scalar::zero();
        }
        self.alpha.get(i - 2).cloned().unwrap_or_else(Scalar::zero)
    }

    /// P_{α'}(s) = s^N + Σ α_i s^{N−i}.
    pub fn p_alpha_prime(&self) -> UniPoly {
        let nn = self.n as usize;
        let mut c = vec![Scalar::zero(); nn + 1];
        c[nn] = Scalar::one();
        for i in 2..nn {
            c[nn - i] = self.alpha_i(i);
        }
        UniPoly::new(c)
    }

    pub fn op(&self) -> DiffOp {
        let nn = self.n as usize;
        let mut c = vec![RatFun::zero(); nn + 1];
        c[nn] = RatFun::one();
        for i in 2..nn {
            c[nn - i] = RatFun::constant(self.alpha_i(i));
        }
        c[0] = &c[0] - &RatFun::monomial(self.alpha0.clone(), 1);
        DiffOp::new(c)
    }

    fn twist(&self, top: Scalar) -> AiryParam {
        let alpha = self
            .alpha
            .iter()
            .enumerate()
            .map(|(k, a)| if (k + 2) % 2 == 1 { -a } else { a.clone() })
            .collect();
        AiryParam {
            n: self.n,
            alpha0: top,
            alpha,
        }
    }

    /// s(α) = ((−1)^{N+1}α₀, α₂, −α₃, …).
    pub fn s_involution(&self) -> AiryParam {
        let sign = if self.n % 2 == 0 { -1 } else { 1 };
        self.twist(&self.alpha0 * &Scalar::int(sign))
    }

    /// a(α) = ((−1)^N α₀, α₂, −α₃, …).
    pub fn a_involution(&self) -> AiryParam {
        let sign = if self.n % 2 == 0 { 1 } else { -1 };
        self.twist(&self.alpha0 * &Scalar::int(sign))
    }

    pub fn reduce_rule(&self) -> ReduceRule {
        ReduceRule {
            n: self.n as usize,
            alpha0: self.alpha0.clone(),
            lower: (0..self.n as usize).map(|m| self.alpha_i(self.n as usize - m)).collect(),
        }
    }
}

/// ∂_y^N Ψ ↦ α₀ y Ψ − Σ_i α_i ∂_y^{N−i} Ψ; `lower[m]` is α_{N−m}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReduceRule {
    pub n: usize,
    pub alpha0: Scalar,
    pub lower: Vec<Scalar>,
}

impl ReduceRule {
    /// Normal form of ∂_y of Σ_m c_m(y) ∂^m Ψ.
    pub fn derive(&self, e: &[UniPoly]) -> Vec<UniPoly> {
        let n = self.n;
        let mut out: Vec<UniPoly> = e.iter().map(UniPoly::derivative).collect();
        out.resize(n, UniPoly::zero());
        for m in 0..n {
            if e[m].is_zero() {
                continue;
            }
            if m + 1 < n {
                out[m + 1] = &out[m + 1] + &e[m];
            } else {
                let y = UniPoly::monomial(self.alpha0.clone(), 1);
                out[0] = &out[0] + &(&y * &e[m]);
                for (k, a) in self.lower.iter().enumerate() {
                    if !a.is_zero() {
                        out[k] = &out[k] - &e[m].scale(a);
                    }
                }
            }
        }
        out
    }

    /// Normal form of ∂_y^k Ψ.
    pub fn normal_form(&self, k: usize) -> Vec<UniPoly> {
        let mut e = vec![UniPoly::zero(); self.n];
        if k < self.n {
            e[k] = UniPoly::one();
            return e;
        }
        e[self.n - 1] = UniPoly::one();
        for _ in self.n - 1..k {
            e = self.derive(&e);
        }
        e
    }
}

/// Q^{*₁} = Σ_k (−1)^{(N−1)k} (∂ + ((1−N)/N) x^{−1})^k ∘ q_k((−1)^N x).
pub fn star1(q: &DiffOp, n: u32) -> DiffOp {
    let c = Scalar::frac(1 - n as i64, n as i64);
    let t = DiffOp::new(vec![RatFun::monomial(c, -1), RatFun::one()]);
    let sign = if (n - 1) % 2 == 0 { Scalar::one() } else { Scalar::int(-1) };
    let arg = if n % 2 == 0 { Scalar::one() } else { Scalar::int(-1) };
    let mut acc = DiffOp::zero();
    let mut tk = DiffOp::one();
    let mut sk = Scalar::one();
    for (k, qk) in q.coeffs().iter().enumerate() {
        if k > 0 {
            tk = tk.op_mul(&t);
            sk = &sk * &sign;
        }
        if qk.is_zero() {
            continue;
        }
        let f = qk.scale_arg(&arg).scale(&sk);
        acc = &acc + &tk.op_mul(&DiffOp::func(f));
    }
    acc
}
