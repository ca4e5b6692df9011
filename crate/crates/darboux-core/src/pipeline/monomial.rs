//! Closed forms for monomial transformations (kernel spanned by Σ_i a_{ki} x^{γ_i}).

use crate::bessel::{euler_product_op, BesselParam};
use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::field::{RatFun, Scalar, UniPoly};
use crate::kernel::{Condition, ConditionSet, ZeroTerm};
use crate::linalg;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialForms {
    pub p: DiffOp,
    pub q: DiffOp,
    pub p_b: DiffOp,
    pub q_b: DiffOp,
    pub g: UniPoly,
    pub f: UniPoly,
    pub g_b: UniPoly,
    pub f_b: UniPoly,
}

fn subsets(m: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..=m - left {
            cur.push(i);
            go(i + 1, m, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, m, n, &mut Vec::new(), &mut out);
    out
}

fn check_gamma(gamma: &[Scalar], a: &[Vec<Scalar>], n: u32) -> Result<()> {
    let nn = Scalar::int(n as i64);
    for i in 0..gamma.len() {
        for j in i + 1..gamma.len() {
            if gamma[i] == gamma[j] {
                return Err(Error::DegenerateGamma(format!(
                    "gamma_{} = gamma_{} = {}",
                    i + 1,
                    j + 1,
                    gamma[i]
                )));
            }
        }
    }
    for (k, row) in a.iter().enumerate() {
        if row.len() != gamma.len() {
            return Err(Error::InvalidParam(format!(
                "row {} of A has {} entries, expected {}",
                k + 1,
                row.len(),
                gamma.len()
            )));
        }
        let support: Vec<usize> = (0..row.len()).filter(|&i| !row[i].is_zero()).collect();
        for &i in &support {
            for &j in &support {
                if i < j && !(&(&gamma[i] - &gamma[j]) / &nn).is_integer() {
                    return Err(Error::DegenerateGamma(format!(
                        "row {} mixes exponents {} and {} from different classes mod N",
                        k + 1,
                        gamma[i],
                        gamma[j]
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Zero-supported conditions with kernel rows f_k = Σ_i a_{ki} x^{γ_i}, γ = β^d.
pub fn monomial_conditions(bp: &BesselParam, a: &[Vec<Scalar>], d: usize) -> Result<ConditionSet> {
    let gamma = bp.beta_power(d);
    check_gamma(&gamma, a, bp.n())?;
    let conds = a
        .iter()
        .map(|row| {
            Condition::Zero(
                row.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(idx, v)| ZeroTerm {
                        i: idx / d,
                        k: idx % d,
                        j: 0,
                        b: v.clone(),
                    })
                    .collect(),
            )
        })
        .collect();
    ConditionSet::new(Family::Bessel(bp.clone()), conds)
}

/// P, Q, P_b, Q_b, g, f, g_b, f_b straight from A and γ = β^d, with h = z^{dN}.
pub fn monomial_closed_forms(bp: &BesselParam, a: &[Vec<Scalar>], d: usize) -> Result<MonomialForms> {
    let gamma = bp.beta_power(d);
    let n_rot = bp.n() as usize;
    let m = gamma.len();
    let n = a.len();
    if n == 0 || n > m {
        return Err(Error::InvalidParam(format!("A must have between 1 and {m} rows")));
    }
    check_gamma(&gamma, a, bp.n())?;
    // (I, det A^I · Δ_I)
    let mut terms: Vec<(Vec<usize>, Scalar)> = Vec::new();
    for idx in subsets(m, n) {
        let minor: Vec<Vec<Scalar>> = a.iter().map(|row| idx.iter().map(|&i| row[i].clone()).collect()).collect();
        let det = linalg::det(&minor);
        if det.is_zero() {
            continue;
        }
        let mut vdm = Scalar::one();
        for r in 0..n {
            for s in r + 1..n {
                vdm = &vdm * &(&gamma[idx[s]] - &gamma[idx[r]]);
            }
        }
        terms.push((idx, &det * &vdm));
    }
    if terms.is_empty() {
        return Err(Error::DependentKernel);
    }
    let sum_of = |idx: &[usize]| idx.iter().fold(Scalar::zero(), |acc, &i| &acc + &gamma[i]);
    let sums: Vec<Scalar> = terms.iter().map(|(i, _)| sum_of(i)).collect();
    let mut min_at = 0;
    for (k, s) in sums.iter().enumerate() {
        if s.to_rational() < sums[min_at].to_rational() {
            min_at = k;
        }
    }
    let mut p_exp = Vec::with_capacity(terms.len());
    for s in &sums {
        let p = (s - &sums[min_at]).to_i64().filter(|p| p % n_rot as i64 == 0).ok_or_else(|| {
            Error::DegenerateGamma(format!("exponent gap {} is not a multiple of N", s - &sums[min_at]))
        })?;
        p_exp.push(p as usize);
    }
    let l = bp.op();
    let nn = n as i64;
    let s_poly = terms
        .iter()
        .zip(&p_exp)
        .fold(UniPoly::zero(), |acc, ((_, c), &p)| &acc + &UniPoly::monomial(c.clone(), p));
    let s_inv = RatFun::poly(s_poly.clone()).inv();
    let mut p_num = DiffOp::zero();
    let mut q_num = DiffOp::zero();
    let mut p_b = DiffOp::zero();
    let mut q_b = DiffOp::zero();
    for ((idx, c), &p) in terms.iter().zip(&p_exp) {
        let gi: Vec<Scalar> = idx.iter().map(|&i| gamma[i].clone()).collect();
        let g0: Vec<Scalar> = (0..m)
            .filter(|i| !idx.contains(i))
            .map(|i| &gamma[i] - &Scalar::int(nn))
            .collect();
        let l_i = euler_product_op(&gi, nn);
        let l_0 = euler_product_op(&g0, (m - n) as i64);
        let xp = RatFun::monomial(c.clone(), p as i64);
        let lp = l.pow((p / n_rot) as u32);
        p_num = &p_num + &l_i.mul_left_fn(&xp);
        q_num = &q_num + &l_0.op_mul(&DiffOp::func(xp));
        p_b = &p_b + &l_i.op_mul(&lp).scale(c);
        q_b = &q_b + &lp.op_mul(&l_0).scale(c);
    }
    let z_n = UniPoly::monomial(Scalar::one(), n);
    let z_f = UniPoly::monomial(Scalar::one(), m - n);
    Ok(MonomialForms {
        p: p_num.mul_left_fn(&s_inv),
        q: q_num.op_mul(&DiffOp::func(s_inv)),
        p_b,
        q_b,
        g_b: &z_n * &s_poly,
        f_b: &z_f * &s_poly,
        g: z_n,
        f: z_f,
    })
}
