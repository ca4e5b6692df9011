//! Bessel operators L_β = x^{−N}(D − β_1)···(D − β_N), D = x∂.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::field::{RatFun, Scalar, UniPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BesselParam {
    n: u32,
    beta: Vec<Scalar>,
}

impl BesselParam {
    pub fn new(beta: Vec<Scalar>) -> Result<BesselParam> {
        let n = beta.len() as u32;
        if n == 0 {
            return Err(Error::InvalidParam("beta must be nonempty".into()));
        }
        if !beta.iter().all(Scalar::is_rational) {
            return Err(Error::InvalidParam("beta must be rational".into()));
        }
        let sum = beta.iter().fold(Scalar::zero(), |a, b| &a + b);
        let want = Scalar::int((n * (n - 1) / 2) as i64);
        if sum != want {
            return Err(Error::InvalidParam(format!(
                "sum of beta is {sum}, must be N(N-1)/2 = {want}"
            )));
        }
        Ok(BesselParam { n, beta })
    }

    pub fn from_ratios(beta: &[(i64, i64)]) -> Result<BesselParam> {
        BesselParam::new(beta.iter().map(|&(p, q)| Scalar::frac(p, q)).collect())
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn beta(&self) -> &[Scalar] {
        &self.beta
    }

    /// P_β(s) = Π (s − β_i).
    pub fn p_beta(&self) -> UniPoly {
        self.beta
            .iter()
            .fold(UniPoly::one(), |acc, b| &acc * &UniPoly::linear_root(b))
    }

    pub fn op(&self) -> DiffOp {
        euler_product_op(&self.beta, self.n as i64)
    }

    /// a(β) = (N−1)δ − β.
    pub fn a_involution(&self) -> BesselParam {
        let c = Scalar::int(self.n as i64 - 1);
        BesselParam {
            n: self.n,
            beta: self.beta.iter().map(|b| &c - b).collect(),
        }
    }

    /// β^d grouped as β_1, β_1+N, …, β_1+(d−1)N, β_2, ….
    pub fn beta_power(&self, d: usize) -> Vec<Scalar> {
        let n = Scalar::int(self.n as i64);
        let mut out = Vec::with_capacity(d * self.beta.len());
        for b in &self.beta {
            for j in 0..d {
                out.push(b + &(&n * &Scalar::int(j as i64)));
            }
        }
        out
    }

    /// Sorted list of p with α = β_i + pN, p ≥ 0, over all i with α − β_i ∈ Nℤ≥0.
    pub fn exponent_levels(&self, alpha: &Scalar) -> Vec<i64> {
        let n = Scalar::int(self.n as i64);
        let mut out: Vec<i64> = self
            .beta
            .iter()
            .filter_map(|b| {
                let q = &(alpha - b) / &n;
                match q.to_i64() {
                    Some(p) if p >= 0 => Some(p),
                    _ => None,
                }
            })
            .collect();
        out.sort();
        out
    }

    /// Number of times α occurs in β^∞.
    pub fn mult(&self, alpha: &Scalar) -> usize {
        self.exponent_levels(alpha).len()
    }

    /// L_β(x^α ln^j x) = Σ_m c_m x^{α−N} ln^m x; returns (c_0, …, c_j).
    pub fn action_zero(&self, alpha: &Scalar, j: usize) -> Vec<Scalar> {
        // D acts on span{x^α ℓ^m} as α + d/dℓ
        let mut v = vec![Scalar::zero(); j + 1];
        v[j] = Scalar::one();
        for b in &self.beta {
            let mut next = vec![Scalar::zero(); j + 1];
            for m in 0..=j {
                next[m] = &next[m] + &(&(alpha - b) * &v[m]);
                if m > 0 {
                    next[m - 1] = &next[m - 1] + &(&Scalar::int(m as i64) * &v[m]);
                }
            }
            v = next;
        }
        v
    }

    /// L_β D_λ^k Ψ = λ^N (D_λ + N)^k Ψ; returns the coefficients of D_λ^m Ψ, m ≤ k.
    pub fn action_lambda(&self, lambda: &Scalar, k: usize) -> Vec<Scalar> {
        let ln = lambda.pow(self.n);
        let n = Scalar::int(self.n as i64);
        (0..=k)
            .map(|m| &(&ln * &binomial(k, m)) * &n.pow((k - m) as u32))
            .collect()
    }

    pub fn wave_coeffs(&self, k: usize) -> Result<WaveCoeffs> {
        let nn = self.n as usize;
        // c[kk][r]: T(z^{-kk}) = Σ_r c[kk][r] z^{N−r−kk}, T = Π (z + D − β_i)
        let mut c: Vec<Vec<Scalar>> = Vec::with_capacity(k + 2);
        for kk in 0..=k + 1 {
            let mut lp: BTreeMap<i64, Scalar> = BTreeMap::new();
            lp.insert(-(kk as i64), Scalar::one());
            for b in &self.beta {
                let mut next: BTreeMap<i64, Scalar> = BTreeMap::new();
                for (e, v) in &lp {
                    let up = next.entry(e + 1).or_insert_with(Scalar::zero);
                    *up = &*up + v;
                    let same = next.entry(*e).or_insert_with(Scalar::zero);
                    *same = &*same + &(&(&Scalar::int(*e) - b) * v);
                }
                lp = next;
            }
            let row = (0..=nn)
                .map(|r| {
                    lp.get(&(nn as i64 - r as i64 - kk as i64))
                        .cloned()
                        .unwrap_or_else(Scalar::zero)
                })
                .collect();
            c.push(row);
        }
        if nn >= 1 && !c[0][1].is_zero() {
            return Err(Error::RecursionSingular { k: 0 });
        }
        let mut a = vec![Scalar::one()];
        for kk in 1..=k {
            let m = kk + 1;
            let mut s = Scalar::zero();
            for r in 2..=nn {
                if r <= m {
                    s = &s + &(&a[m - r] * &c[m - r][r]);
                }
            }
            let piv = &c[kk][1];
            if piv.is_zero() {
                return Err(Error::RecursionSingular { k: kk });
            }
            a.push(&(-s) / piv);
        }
        Ok(WaveCoeffs { k, a })
    }

    pub fn genericity_check(&self) -> GenericityReport {
        let n = Scalar::int(self.n as i64);
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for i in 0..self.beta.len() {
            let found = classes.iter_mut().find(|cl| {
                let q = &(&self.beta[cl[0]] - &self.beta[i]) / &n;
                q.is_integer()
            });
            match found {
                Some(cl) => cl.push(i),
                None => classes.push(vec![i]),
            }
        }
        let verdict = if classes.iter().all(|c| c.len() == 1) {
            Genericity::Generic
        } else {
            Genericity::Unknown
        };
        GenericityReport { classes, verdict }
    }
}

/// x^{−shift} Π (D − γ_i) expanded in ∂.
pub fn euler_product_op(gamma: &[Scalar], shift: i64) -> DiffOp {
    let e = DiffOp::euler();
    let mut acc = DiffOp::one();
    for g in gamma {
        acc = acc.op_mul(&(&e - &DiffOp::constant(g.clone())));
    }
    acc.mul_left_fn(&RatFun::monomial(Scalar::one(), -shift))
}

pub fn binomial(n: usize, k: usize) -> Scalar {
    if k > n {
        return Scalar::zero();
    }
    let mut r = Scalar::one();
    for i in 0..k {
        r = &(&r * &Scalar::int((n - i) as i64)) / &Scalar::int((i + 1) as i64);
    }
    r
}

/// Ψ_β(z) = e^z (1 + Σ a_k z^{−k}); `a[0] = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WaveCoeffs {
    pub k: usize,
    pub a: Vec<Scalar>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Genericity {
    Generic,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericityReport {
    /// Indices of β grouped by congruence mod Nℤ.
    pub classes: Vec<Vec<usize>>,
    pub verdict: Genericity,
}
