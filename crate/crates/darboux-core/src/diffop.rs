//! Ordinary differential operators Σ c_k(x) ∂^k with rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{RatFun, Scalar, UniPoly};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DiffOp {
    c: Vec<RatFun>,
}

impl DiffOp {
    pub fn new(mut c: Vec<RatFun>) -> DiffOp {
        while c.last().is_some_and(|v| v.is_zero()) {
            c.pop();
        }
        DiffOp { c }
    }

    pub fn zero() -> DiffOp {
        DiffOp { c: vec![] }
    }

    pub fn one() -> DiffOp {
        DiffOp::func(RatFun::one())
    }

    pub fn func(f: RatFun) -> DiffOp {
        DiffOp::new(vec![f])
    }

    pub fn constant(s: Scalar) -> DiffOp {
        DiffOp::func(RatFun::constant(s))
    }

    /// ∂^k
    pub fn d_pow(k: usize) -> DiffOp {
        let mut c = vec![RatFun::zero(); k];
        c.push(RatFun::one());
        DiffOp { c }
    }

    pub fn d() -> DiffOp {
        DiffOp::d_pow(1)
    }

    /// Euler operator x∂.
    pub fn euler() -> DiffOp {
        DiffOp::new(vec![RatFun::zero(), RatFun::x()])
    }

    pub fn coeffs(&self) -> &[RatFun] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> RatFun {
        self.c.get(k).cloned().unwrap_or_else(RatFun::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Order; `None` stands for the zero operator (order −∞).
    pub fn order(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn ord(&self) -> usize {
        self.order().expect("order of zero operator")
    }

    pub fn lc(&self) -> RatFun {
        self.c.last().cloned().unwrap_or_else(RatFun::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.c.iter().all(RatFun::is_rational)
    }

    pub fn monic(&self) -> DiffOp {
        let l = self.lc().inv();
        self.mul_left_fn(&l)
    }

    pub fn scale(&self, s: &Scalar) -> DiffOp {
        DiffOp::new(self.c.iter().map(|v| v.scale(s)).collect())
    }

    /// f·A
    pub fn mul_left_fn(&self, f: &RatFun) -> DiffOp {
        DiffOp::new(self.c.iter().map(|v| f * v).collect())
    }

    /// ∂·A = Σ (c_k' ∂^k + c_k ∂^{k+1}).
    pub fn d_left(&self) -> DiffOp {
        if self.is_zero() {
            return DiffOp::zero();
        }
        let mut out: Vec<RatFun> = self.c.iter().map(RatFun::derivative).collect();
        out.push(RatFun::zero());
        for (k, v) in self.c.iter().enumerate() {
            out[k + 1] = &out[k + 1] + v;
        }
        DiffOp::new(out)
    }

    pub fn op_mul(&self, b: &DiffOp) -> DiffOp {
        if self.is_zero() || b.is_zero() {
            return DiffOp::zero();
        }
        let mut acc = DiffOp::zero();
        let mut t = b.clone();
        for (k, a) in self.c.iter().enumerate() {
            if k > 0 {
                t = t.d_left();
            }
            if !a.is_zero() {
                acc = &acc + &t.mul_left_fn(a);
            }
        }
        acc
    }

    /// Formal adjoint Σ (−∂)^k ∘ c_k.
    pub fn adjoint(&self) -> DiffOp {
        let mut acc = DiffOp::zero();
        for v in self.c.iter().rev() {
            acc = &(-acc.d_left()) + &DiffOp::func(v.clone());
        }
        acc
    }

    /// A = Q·B + R with ord R < ord B.
    pub fn right_divide(&self, b: &DiffOp) -> (DiffOp, DiffOp) {
        let m = b.order().expect("right division by zero operator");
        let lb = b.lc().inv();
        let mut r = self.clone();
        let mut q = vec![RatFun::zero(); self.c.len().saturating_sub(m)];
        while let Some(o) = r.order() {
            if o < m {
                break;
            }
            let t = &r.lc() * &lb;
            let mut term = vec![RatFun::zero(); o - m];
            term.push(t.clone());
            let tb = DiffOp { c: term }.op_mul(b);
            let mut nc = r.c.clone();
            for (k, v) in tb.c.iter().enumerate() {
                nc[k] = &nc[k] - v;
            }
            nc[o] = RatFun::zero();
            r = DiffOp::new(nc);
            q[o - m] = t;
        }
        (DiffOp::new(q), r)
    }

    /// h(L) by Horner's rule.
    pub fn of_poly(h: &UniPoly, l: &DiffOp) -> DiffOp {
        let mut acc = DiffOp::zero();
        for v in h.coeffs().iter().rev() {
            acc = &acc.op_mul(l) + &DiffOp::constant(v.clone());
        }
        acc
    }

    pub fn pow(&self, e: u32) -> DiffOp {
        let mut acc = DiffOp::one();
        for _ in 0..e {
            acc = acc.op_mul(self);
        }
        acc
    }

    pub fn apply(&self, f: &RatFun) -> RatFun {
        let mut acc = RatFun::zero();
        let mut d = f.clone();
        for (k, c) in self.c.iter().enumerate() {
            if k > 0 {
                d = d.derivative();
            }
            if !c.is_zero() {
                acc = &acc + &(c * &d);
            }
        }
        acc
    }

    /// A(s·x, s^{-1}∂): coefficients c_k(s x) s^{-k}.
    pub fn rescale(&self, s: &Scalar) -> DiffOp {
        let inv = s.inv();
        let mut p = Scalar::one();
        let mut out = Vec::with_capacity(self.c.len());
        for v in &self.c {
            out.push(v.scale_arg(s).scale(&p));
            p = &p * &inv;
        }
        DiffOp::new(out)
    }

    /// A(−x, −∂).
    pub fn flip(&self) -> DiffOp {
        self.rescale(&Scalar::int(-1))
    }

    /// Substitutes x ↦ x + s in the coefficients (translation).
    pub fn translate(&self, s: &Scalar) -> DiffOp {
        let q = UniPoly::new(vec![s.clone(), Scalar::one()]);
        DiffOp::new(self.c.iter().map(|v| v.compose_poly(&q)).collect())
    }

    pub fn to_dform(&self, n: u32) -> Result<DForm> {
        DForm::from_op(self, n)
    }
}

impl<'a> Add<&'a DiffOp> for &'a DiffOp {
    type Output = DiffOp;
    fn add(self, o: &DiffOp) -> DiffOp {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) | (None, Some(a)) => a.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        DiffOp::new(c)
    }
}

impl<'a> Sub<&'a DiffOp> for &'a DiffOp {
    type Output = DiffOp;
    fn sub(self, o: &DiffOp) -> DiffOp {
        self + &(-o)
    }
}

impl Neg for &DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        DiffOp {
            c: self.c.iter().map(|v| -v).collect(),
        }
    }
}

impl Neg for DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        -&self
    }
}

impl<'a> Mul<&'a DiffOp> for &'a DiffOp {
    type Output = DiffOp;
    fn mul(self, o: &DiffOp) -> DiffOp {
        self.op_mul(o)
    }
}

impl Add for DiffOp {
    type Output = DiffOp;
    fn add(self, o: DiffOp) -> DiffOp {
        &self + &o
    }
}

impl Sub for DiffOp {
    type Output = DiffOp;
    fn sub(self, o: DiffOp) -> DiffOp {
        &self - &o
    }
}

impl Mul for DiffOp {
    type Output = DiffOp;
    fn mul(self, o: DiffOp) -> DiffOp {
        self.op_mul(&o)
    }
}

impl DiffOp {
    pub fn write_in(&self, f: &mut impl fmt::Write, var: &str) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.c.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut s = String::new();
            c.write_in(&mut s, var)?;
            match k {
                0 => write!(f, "{s}")?,
                _ => {
                    if !c.is_one() {
                        write!(f, "({s})*")?;
                    }
                    if k == 1 {
                        write!(f, "d{var}")?;
                    } else {
                        write!(f, "d{var}^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_in(f, "x")
    }
}

/// Signed Stirling numbers of the first kind: [D]_k = Σ_j s(k, j) D^j.
pub fn stirling1(k: usize) -> Vec<Scalar> {
    let mut row = vec![Scalar::one()];
    for m in 0..k {
        // multiply by (D − m)
        let mut next = vec![Scalar::zero(); row.len() + 1];
        for (j, v) in row.iter().enumerate() {
            next[j + 1] = &next[j + 1] + v;
            next[j] = &next[j] - &(v * &Scalar::int(m as i64));
        }
        row = next;
    }
    row
}

/// Stirling numbers of the second kind: D^j = Σ_k S(j, k) x^k ∂^k.
pub fn stirling2(j: usize) -> Vec<Scalar> {
    let mut row = vec![Scalar::one()];
    for _ in 0..j {
        let mut next = vec![Scalar::zero(); row.len() + 1];
        for (k, v) in row.iter().enumerate() {
            next[k + 1] = &next[k + 1] + v;
            next[k] = &next[k] + &(v * &Scalar::int(k as i64));
        }
        row = next;
    }
    row
}

/// D-form x^{−n} den(x^N)^{−1} Σ_k p_k(x^N) D^k with D = x∂.
///
/// `den` is the monic lcm of the denominators; for a monic operator the
/// top numerator p_ord equals `den`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DForm {
    pub n_rot: u32,
    pub shift: i64,
    pub p: Vec<UniPoly>,
    pub den: UniPoly,
}

impl DForm {
    fn from_op(a: &DiffOp, n_rot: u32) -> Result<DForm> {
        let ord = a.order().ok_or_else(|| Error::InvalidParam("D-form of zero operator".into()))?;
        // e_j = Σ_k c_k x^{-k} s(k, j)
        let mut e = vec![RatFun::zero(); ord + 1];
        for (k, c) in a.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let ck = c * &RatFun::monomial(Scalar::one(), -(k as i64));
            for (j, s) in stirling1(k).iter().enumerate() {
                if !s.is_zero() {
                    e[j] = &e[j] + &ck.scale(s);
                }
            }
        }
        let nn = n_rot as usize;
        'shift: for r in 0..n_rot as i64 {
            let shift = ord as i64 + r;
            let mut rs = Vec::with_capacity(e.len());
            for ej in &e {
                let t = ej * &RatFun::monomial(Scalar::one(), shift);
                if t.is_zero() {
                    rs.push((UniPoly::zero(), UniPoly::one()));
                    continue;
                }
                match (t.num().deflate(nn), t.den().deflate(nn)) {
                    (Some(p), Some(q)) => rs.push((p, q)),
                    _ => continue 'shift,
                }
            }
            let mut den = UniPoly::one();
            for (_, q) in &rs {
                den = UniPoly::lcm(&den, q);
            }
            let p = rs.iter().map(|(p, q)| p * &den.div_exact(q)).collect();
            return Ok(DForm { n_rot, shift, p, den });
        }
        Err(Error::NotZNHomogeneous {
            n: n_rot,
            detail: format!("no shift makes the Euler coefficients of {a} functions of x^{n_rot}"),
        })
    }

    pub fn to_op(&self) -> DiffOp {
        let nn = self.n_rot as usize;
        let den = RatFun::poly(self.den.inflate(nn)) * RatFun::monomial(Scalar::one(), self.shift);
        let mut out = DiffOp::zero();
        for (j, p) in self.p.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let coef = RatFun::poly(p.inflate(nn)) / den.clone();
            let mut dj = vec![RatFun::zero(); j + 1];
            for (k, s) in stirling2(j).iter().enumerate() {
                dj[k] = RatFun::monomial(s.clone(), k as i64);
            }
            out = &out + &DiffOp::new(dj).mul_left_fn(&coef);
        }
        out
    }

    pub fn order(&self) -> usize {
        self.p.len() - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x() -> RatFun {
        RatFun::x()
    }

    fn xp(k: i64) -> RatFun {
        RatFun::monomial(Scalar::one(), k)
    }

    #[test]
    fn leibniz_base() {
        let a = DiffOp::d().op_mul(&DiffOp::func(x()));
        assert_eq!(a, DiffOp::new(vec![RatFun::one(), x()]));
        let e = DiffOp::euler();
        assert_eq!(e.op_mul(&e), DiffOp::new(vec![RatFun::zero(), x(), xp(2)]));
    }

    #[test]
    fn bessel_minus_one_two() {
        let dp1 = &DiffOp::euler() + &DiffOp::constant(Scalar::one());
        let dm2 = &DiffOp::euler() - &DiffOp::constant(Scalar::int(2));
        let l = dp1.op_mul(&dm2).mul_left_fn(&xp(-2));
        let expect = DiffOp::new(vec![xp(-2).scale(&Scalar::int(-2)), RatFun::zero(), RatFun::one()]);
        assert_eq!(l, expect);
        assert_eq!(l.adjoint(), l);
    }

    #[test]
    fn adjoint_examples() {
        assert_eq!(DiffOp::d().adjoint(), -DiffOp::d());
        let e = DiffOp::euler();
        let expect = DiffOp::new(vec![RatFun::int(-1), -x()]);
        assert_eq!(e.adjoint(), expect);
        assert_eq!(e.adjoint().adjoint(), e);
    }

    #[test]
    fn division_examples() {
        let b = DiffOp::d();
        let (q, r) = DiffOp::d_pow(2).right_divide(&b);
        assert_eq!(q, DiffOp::d());
        assert!(r.is_zero());
        let (q, r) = b.right_divide(&b);
        assert_eq!(q, DiffOp::one());
        assert!(r.is_zero());
    }

    #[test]
    fn of_poly_applied() {
        let l = DiffOp::new(vec![xp(-2).scale(&Scalar::int(-2)), RatFun::zero(), RatFun::one()]);
        let h = UniPoly::from_ints(&[-1, 0, 1]);
        let a = DiffOp::of_poly(&h, &l);
        assert_eq!(a.ord(), 4);
        assert_eq!(a.apply(&xp(-1)), -xp(-1));
        assert_eq!(DiffOp::of_poly(&UniPoly::from_ints(&[0, 0, 1]), &DiffOp::d()), DiffOp::d_pow(2));
    }

    #[test]
    fn dform_examples() {
        let l = DiffOp::new(vec![xp(-2).scale(&Scalar::int(-2)), RatFun::zero(), RatFun::one()]);
        let f = l.to_dform(2).unwrap();
        assert_eq!(f.shift, 2);
        assert_eq!(f.p, vec![UniPoly::from_ints(&[-2]), UniPoly::from_ints(&[-1]), UniPoly::from_ints(&[1])]);
        assert_eq!(f.to_op(), l);

        let f = DiffOp::d().to_dform(1).unwrap();
        assert_eq!(f.shift, 1);
        assert_eq!(f.p, vec![UniPoly::zero(), UniPoly::one()]);

        let a = DiffOp::new(vec![RatFun::zero(), xp(-1), RatFun::one()]);
        let f = a.to_dform(2).unwrap();
        assert_eq!(f.p, vec![UniPoly::zero(), UniPoly::zero(), UniPoly::one()]);
        let bad = DiffOp::new(vec![RatFun::zero(), RatFun::one(), RatFun::one()]);
        assert!(matches!(bad.to_dform(2), Err(Error::NotZNHomogeneous { .. })));
    }

    fn arb_coef() -> impl Strategy<Value = RatFun> {
        (prop::collection::vec(-3i64..4, 0..3), prop::collection::vec(-2i64..3, 1..3))
            .prop_filter_map("den", |(n, d)| {
                RatFun::normalize(UniPoly::from_ints(&n), UniPoly::from_ints(&d)).ok()
            })
    }

    fn arb_op() -> impl Strategy<Value = DiffOp> {
        prop::collection::vec(arb_coef(), 0..4).prop_map(DiffOp::new)
    }

    /// Random Z_N-homogeneous operator x^{-m} Σ r_k(x^N) D^k.
    fn arb_homog() -> impl Strategy<Value = (u32, DiffOp)> {
        (1u32..4, prop::collection::vec(prop::collection::vec(-3i64..4, 1..3), 1..4), prop::collection::vec(-2i64..3, 1..3))
            .prop_filter_map("zero", |(n, ps, den)| {
                let den = UniPoly::from_ints(&den);
                if den.is_zero() {
                    return None;
                }
                let mut p: Vec<UniPoly> = ps.iter().map(|v| UniPoly::from_ints(v)).collect();
                if p.last().unwrap().is_zero() {
                    return None;
                }
                let ord = p.len() - 1;
                while p.len() > 1 && p.last().unwrap().is_zero() {
                    p.pop();
                }
                let f = DForm { n_rot: n, shift: ord as i64, p, den: den.monic() };
                Some((n, f.to_op()))
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn associativity(a in arb_op(), b in arb_op(), c in arb_op()) {
            prop_assert_eq!(a.op_mul(&b).op_mul(&c), a.op_mul(&b.op_mul(&c)));
        }

        #[test]
        fn adjoint_antiautomorphism(a in arb_op(), b in arb_op()) {
            prop_assert_eq!(a.op_mul(&b).adjoint(), b.adjoint().op_mul(&a.adjoint()));
            prop_assert_eq!(a.adjoint().adjoint(), a);
        }

        #[test]
        fn order_additive(a in arb_op(), b in arb_op()) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            prop_assert_eq!(a.op_mul(&b).ord(), a.ord() + b.ord());
        }

        #[test]
        fn division_reconstructs(a in arb_op(), b in arb_op()) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.right_divide(&b);
            prop_assert_eq!(&q.op_mul(&b) + &r, a);
            prop_assert!(r.order().map_or(true, |o| o < b.ord()));
        }

        #[test]
        fn dform_round_trip((n, a) in arb_homog()) {
            prop_assume!(!a.is_zero());
            let f = a.to_dform(n).unwrap();
            prop_assert_eq!(f.to_op(), a);
        }
    }
}
