use super::DarbouxPlane;
use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::field::{Scalar, UniPoly};
use crate::linalg;

/// u(t) with u(L_V)·ker P ⊆ ker P and the order N·deg u of P·u(L_V)·P^{-1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralElement {
    pub u: UniPoly,
    pub order: usize,
}

/// Remainders of P·L^i modulo P on the right, i = 0..=e.
struct Remainders {
    p: DiffOp,
    l: DiffOp,
    pl: DiffOp,
    rems: Vec<DiffOp>,
}

impl Remainders {
    fn new(plane: &DarbouxPlane) -> Remainders {
        Remainders {
            p: plane.p.clone(),
            l: plane.family.op(),
            pl: plane.p.clone(),
            rems: vec![DiffOp::zero()],
        }
    }

    fn upto(&mut self, e: usize) -> &[DiffOp] {
        while self.rems.len() <= e {
            self.pl = self.pl.op_mul(&self.l);
            let (_, r) = self.pl.right_divide(&self.p);
            self.rems.push(r);
        }
        &self.rems[..=e]
    }
}

/// Coordinates of operators over a common denominator, as scalar vectors.
pub(crate) fn flatten(ops: &[DiffOp]) -> Vec<Vec<Scalar>> {
    let mut den = UniPoly::one();
    let ord = ops.iter().filter_map(DiffOp::order).max().unwrap_or(0);
    for op in ops {
        for c in op.coeffs() {
            den = UniPoly::lcm(&den, c.den());
        }
    }
    let nums: Vec<Vec<UniPoly>> = ops
        .iter()
        .map(|op| {
            (0..=ord)
                .map(|k| {
                    let c = op.coeff(k);
                    c.num() * &den.div_exact(c.den())
                })
                .collect()
        })
        .collect();
    let width = 1 + nums.iter().flatten().filter_map(UniPoly::degree).max().unwrap_or(0);
    nums.iter()
        .map(|v| v.iter().flat_map(|p| (0..width).map(|i| p.coeff(i))).collect())
        .collect()
}

/// Monic u of degree e with u(0) = 0 and P·u(L) ≡ 0 mod P, if any.
fn invariant_of_degree(rem: &mut Remainders, e: usize) -> Option<UniPoly> {
    let rs = rem.upto(e);
    let vecs = flatten(&rs[1..=e]);
    let rows = vecs.first().map(Vec::len).unwrap_or(0);
    let unknowns = e - 1;
    let a: Vec<Vec<Scalar>> = (0..rows)
        .map(|r| (0..unknowns).map(|i| vecs[i][r].clone()).collect())
        .collect();
    let b: Vec<Scalar> = (0..rows).map(|r| -&vecs[unknowns][r]).collect();
    let sol = if rows == 0 {
        Some(vec![Scalar::zero(); unknowns])
    } else {
        linalg::solve_any(&a, &b, unknowns)
    }?;
    let mut c = vec![Scalar::zero()];
    c.extend(sol);
    c.push(Scalar::one());
    Some(UniPoly::new(c))
}

/// Degrees present in A_W up to `max_order`, with one u per degree.
pub fn spectral_algebra(plane: &DarbouxPlane, max_order: usize) -> Vec<SpectralElement> {
    let n = plane.n() as usize;
    let mut rem = Remainders::new(plane);
    (1..=max_order / n)
        .filter_map(|e| {
            invariant_of_degree(&mut rem, e).map(|u| SpectralElement { u, order: n * e })
        })
        .collect()
}

/// Climbs degrees until the orders found have gcd N (the rank can go no lower)
/// or `max_order` is passed; returns the elements and their gcd.
pub fn rank_search(plane: &DarbouxPlane, max_order: usize) -> (Vec<SpectralElement>, usize) {
    let n = plane.n() as usize;
    let mut rem = Remainders::new(plane);
    let mut found = Vec::new();
    let mut gcd = 0;
    for e in 1..=max_order / n {
        if let Some(u) = invariant_of_degree(&mut rem, e) {
            gcd = num_integer::gcd(gcd, n * e);
            found.push(SpectralElement { u, order: n * e });
            if gcd == n {
                break;
            }
        }
    }
    (found, gcd)
}

/// Least-degree u and L_min = P·u(L)·P^{-1}.
pub fn minimal_l(plane: &DarbouxPlane, max_deg: usize) -> Result<(UniPoly, DiffOp)> {
    let mut rem = Remainders::new(plane);
    for e in 1..=max_deg {
        if let Some(u) = invariant_of_degree(&mut rem, e) {
            let l = plane.family.op();
            let (lmin, r) = plane.p.op_mul(&DiffOp::of_poly(&u, &l)).right_divide(&plane.p);
            debug_assert!(r.is_zero());
            return Ok((u, lmin));
        }
    }
    Err(Error::NotFound { max_deg })
}
