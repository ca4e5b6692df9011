//! Gaussian elimination over exact fields (scalars and rational functions).

use crate::field::{RatFun, Scalar};

pub trait FieldElem: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    /// Rough size used for pivot choice (smaller is cheaper).
    fn weight(&self) -> usize;
}

impl FieldElem for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn weight(&self) -> usize {
        match self {
            Scalar::Rat(r) => (r.numer().bits() + r.denom().bits()) as usize,
            Scalar::Cyc(_, c) => c.len() * 64,
        }
    }
}

impl FieldElem for RatFun {
    fn zero() -> Self {
        RatFun::zero()
    }
    fn one() -> Self {
        RatFun::one()
    }
    fn is_zero(&self) -> bool {
        RatFun::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn weight(&self) -> usize {
        self.num().coeffs().len() + self.den().coeffs().len()
    }
}

/// Row echelon form in place; returns pivot columns.
pub fn row_reduce<F: FieldElem>(m: &mut [Vec<F>]) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let best = (r..rows)
            .filter(|&i| !m[i][c].is_zero())
            .min_by_key(|&i| m[i][c].weight());
        let Some(p) = best else { continue };
        m.swap(r, p);
        let inv_piv = m[r][c].clone();
        for k in c..cols {
            m[r][k] = m[r][k].div(&inv_piv);
        }
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for k in c..cols {
                if !m[r][k].is_zero() {
                    let t = m[i][k].sub(&f.mul(&m[r][k]));
                    m[i][k] = t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: FieldElem>(m: &[Vec<F>]) -> usize {
    let mut w = m.to_vec();
    row_reduce(&mut w).len()
}

/// Solves A x = b for square nonsingular A; `None` when singular.
pub fn solve<F: FieldElem>(a: &[Vec<F>], b: &[F]) -> Option<Vec<F>> {
    let n = a.len();
    let mut m: Vec<Vec<F>> = a
        .iter()
        .zip(b)
        .map(|(row, v)| {
            let mut r = row.clone();
            r.push(v.clone());
            r
        })
        .collect();
    let piv = row_reduce(&mut m);
    if piv.len() < n || piv.iter().enumerate().any(|(i, &c)| c != i) {
        return None;
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

/// Any solution of A x = b (free variables set to zero); `None` if inconsistent.
pub fn solve_any<F: FieldElem>(a: &[Vec<F>], b: &[F], ncols: usize) -> Option<Vec<F>> {
    let mut m: Vec<Vec<F>> = a
        .iter()
        .zip(b)
        .map(|(row, v)| {
            let mut r = row.clone();
            r.push(v.clone());
            r
        })
        .collect();
    let piv = row_reduce(&mut m);
    if piv.contains(&ncols) {
        return None;
    }
    let mut x = vec![F::zero(); ncols];
    for (i, &c) in piv.iter().enumerate() {
        x[c] = m[i][ncols].clone();
    }
    Some(x)
}

/// Basis of the null space {x : A x = 0}.
pub fn nullspace<F: FieldElem>(a: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let mut m = a.to_vec();
    let piv = row_reduce(&mut m);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !piv.contains(c)) {
        let mut v = vec![F::zero(); ncols];
        v[free] = F::one();
        for (i, &c) in piv.iter().enumerate() {
            v[c] = F::zero().sub(&m[i][free]);
        }
        out.push(v);
    }
    out
}

pub fn det<F: FieldElem>(a: &[Vec<F>]) -> F {
    let n = a.len();
    let mut m = a.to_vec();
    let mut d = F::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return F::zero();
        };
        if p != c {
            m.swap(p, c);
            d = F::zero().sub(&d);
        }
        let piv = m[c][c].clone();
        d = d.mul(&piv);
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].div(&piv);
            for k in c..n {
                let t = m[i][k].sub(&f.mul(&m[c][k]));
                m[i][k] = t;
            }
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::UniPoly;

    fn s(v: i64) -> Scalar {
        Scalar::int(v)
    }

    #[test]
    fn scalar_solve_and_det() {
        let a = vec![vec![s(2), s(1)], vec![s(1), s(3)]];
        assert_eq!(det(&a), s(5));
        let x = solve(&a, &[s(3), s(5)]).unwrap();
        assert_eq!(x, vec![Scalar::frac(4, 5), Scalar::frac(7, 5)]);
        let sing = vec![vec![s(1), s(2)], vec![s(2), s(4)]];
        assert!(solve(&sing, &[s(1), s(1)]).is_none());
        assert_eq!(rank(&sing), 1);
        let ns = nullspace(&sing, 2);
        assert_eq!(ns, vec![vec![s(-2), s(1)]]);
    }

    #[test]
    fn ratfun_solve() {
        let x = RatFun::x();
        // [[x, 1], [1, x]] v = [1, 0]
        let a = vec![vec![x.clone(), RatFun::one()], vec![RatFun::one(), x.clone()]];
        let v = solve(&a, &[RatFun::one(), RatFun::zero()]).unwrap();
        let den = UniPoly::from_ints(&[-1, 0, 1]);
        assert_eq!(v[0], RatFun::new(UniPoly::from_ints(&[0, 1]), den.clone()));
        assert_eq!(v[1], RatFun::new(UniPoly::from_ints(&[-1]), den));
        assert_eq!(det(&a), RatFun::poly(UniPoly::from_ints(&[-1, 0, 1])));
    }
}
