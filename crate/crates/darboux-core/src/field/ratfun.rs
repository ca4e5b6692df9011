use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::{Scalar, UniPoly};

/// Reduced fraction num/den with den monic and gcd(num, den) = 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFun {
    num: UniPoly,
    den: UniPoly,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("rational function with zero denominator")]
pub struct ZeroDenominator;

impl RatFun {
    pub fn normalize(num: UniPoly, den: UniPoly) -> Result<RatFun, ZeroDenominator> {
        if den.is_zero() {
            return Err(ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RatFun::zero());
        }
        let g = UniPoly::gcd(&num, &den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        let l = den.lc();
        if !l.is_one() {
            let inv = l.inv();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(RatFun { num, den })
    }

    pub fn new(num: UniPoly, den: UniPoly) -> RatFun {
        RatFun::normalize(num, den).expect("zero denominator")
    }

    /// Trusted constructor; caller guarantees the canonical form.
    fn raw(num: UniPoly, den: UniPoly) -> RatFun {
        RatFun { num, den }
    }

    pub fn zero() -> RatFun {
        RatFun::raw(UniPoly::zero(), UniPoly::one())
    }

    pub fn one() -> RatFun {
        RatFun::constant(Scalar::one())
    }

    pub fn constant(v: Scalar) -> RatFun {
        RatFun::raw(UniPoly::constant(v), UniPoly::one())
    }

    pub fn int(v: i64) -> RatFun {
        RatFun::constant(Scalar::int(v))
    }

    pub fn poly(p: UniPoly) -> RatFun {
        RatFun::raw(p, UniPoly::one())
    }

    /// c·t^k for any integer k.
    pub fn monomial(c: Scalar, k: i64) -> RatFun {
        if c.is_zero() {
            return RatFun::zero();
        }
        if k >= 0 {
            RatFun::raw(UniPoly::monomial(c, k as usize), UniPoly::one())
        } else {
            RatFun::raw(UniPoly::constant(c), UniPoly::monomial(Scalar::one(), (-k) as usize))
        }
    }

    pub fn x() -> RatFun {
        RatFun::monomial(Scalar::one(), 1)
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.is_constant()
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    pub fn is_rational(&self) -> bool {
        self.num.is_rational() && self.den.is_rational()
    }

    /// deg num − deg den; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        self.num.degree().map(|d| d as i64 - self.den.deg() as i64)
    }

    pub fn scale(&self, s: &Scalar) -> RatFun {
        if s.is_zero() {
            return RatFun::zero();
        }
        RatFun::raw(self.num.scale(s), self.den.clone())
    }

    pub fn mul_poly(&self, p: &UniPoly) -> RatFun {
        RatFun::new(&self.num * p, self.den.clone())
    }

    pub fn div_poly(&self, p: &UniPoly) -> RatFun {
        RatFun::new(self.num.clone(), &self.den * p)
    }

    pub fn inv(&self) -> RatFun {
        assert!(!self.is_zero(), "inverse of zero rational function");
        RatFun::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i64) -> RatFun {
        if e < 0 {
            return self.inv().pow(-e);
        }
        RatFun::raw(self.num.pow(e as u32), self.den.pow(e as u32))
    }

    pub fn derivative(&self) -> RatFun {
        if self.den.is_one() {
            return RatFun::poly(self.num.derivative());
        }
        // (n'(d/g) − n(d'/g)) / (d·(d/g)), g = gcd(d, d')
        let dp = self.den.derivative();
        let g = UniPoly::gcd(&self.den, &dp);
        let dg = self.den.div_exact(&g);
        let dpg = dp.div_exact(&g);
        let num = &(&self.num.derivative() * &dg) - &(&self.num * &dpg);
        RatFun::new(num, &self.den * &dg)
    }

    pub fn eval(&self, t: &Scalar) -> Option<Scalar> {
        let d = self.den.eval(t);
        if d.is_zero() {
            return None;
        }
        Some(&self.num.eval(t) / &d)
    }

    /// f(s·t).
    pub fn scale_arg(&self, s: &Scalar) -> RatFun {
        RatFun::new(self.num.scale_arg(s), self.den.scale_arg(s))
    }

    /// f(t^n).
    pub fn inflate(&self, n: usize) -> RatFun {
        RatFun::new(self.num.inflate(n), self.den.inflate(n))
    }

    /// f(q(t)) for a polynomial q.
    pub fn compose_poly(&self, q: &UniPoly) -> RatFun {
        RatFun::new(self.num.compose(q), self.den.compose(q))
    }

    /// Numerator-degree minus denominator-degree is negative (f → 0 at infinity).
    pub fn vanishes_at_infinity(&self) -> bool {
        self.is_zero() || self.num.deg() < self.den.deg()
    }
}

impl<'a> Add<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn add(self, o: &RatFun) -> RatFun {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFun::new(&self.num + &o.num, self.den.clone());
        }
        let g = UniPoly::gcd(&self.den, &o.den);
        if g.is_one() {
            let num = &(&self.num * &o.den) + &(&o.num * &self.den);
            let den = &self.den * &o.den;
            return RatFun::new(num, den);
        }
        let a = self.den.div_exact(&g);
        let b = o.den.div_exact(&g);
        let num = &(&self.num * &b) + &(&o.num * &a);
        RatFun::new(num, &(&a * &b) * &g)
    }
}

impl<'a> Sub<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn sub(self, o: &RatFun) -> RatFun {
        self + &(-o)
    }
}

impl<'a> Mul<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn mul(self, o: &RatFun) -> RatFun {
        if self.is_zero() || o.is_zero() {
            return RatFun::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFun::poly(&self.num * &o.num);
        }
        if let Some(c) = self.as_constant() {
            return o.scale(&c);
        }
        if let Some(c) = o.as_constant() {
            return self.scale(&c);
        }
        let g1 = UniPoly::gcd(&self.num, &o.den);
        let g2 = UniPoly::gcd(&o.num, &self.den);
        let n1 = self.num.div_exact(&g1);
        let d2 = o.den.div_exact(&g1);
        let n2 = o.num.div_exact(&g2);
        let d1 = self.den.div_exact(&g2);
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let l = den.lc();
        if l.is_one() {
            RatFun::raw(num, den)
        } else {
            let inv = l.inv();
            RatFun::raw(num.scale(&inv), den.scale(&inv))
        }
    }
}

impl<'a> Div<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn div(self, o: &RatFun) -> RatFun {
        self * &o.inv()
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun::raw(-&self.num, self.den.clone())
    }
}

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        -&self
    }
}

macro_rules! forward_rf {
    ($tr:ident, $m:ident) => {
        impl $tr<RatFun> for RatFun {
            type Output = RatFun;
            fn $m(self, o: RatFun) -> RatFun {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a RatFun> for RatFun {
            type Output = RatFun;
            fn $m(self, o: &RatFun) -> RatFun {
                (&self).$m(o)
            }
        }
    };
}
forward_rf!(Add, add);
forward_rf!(Sub, sub);
forward_rf!(Mul, mul);
forward_rf!(Div, div);

impl From<UniPoly> for RatFun {
    fn from(p: UniPoly) -> Self {
        RatFun::poly(p)
    }
}

impl From<Scalar> for RatFun {
    fn from(s: Scalar) -> Self {
        RatFun::constant(s)
    }
}

impl RatFun {
    pub fn write_in(&self, f: &mut impl fmt::Write, var: &str) -> fmt::Result {
        if self.den.is_one() {
            return super::poly::write_poly(f, &self.num, var);
        }
        let simple = |p: &UniPoly| p.coeffs().iter().filter(|c| !c.is_zero()).count() <= 1;
        let wrap = |f: &mut dyn fmt::Write, p: &UniPoly, force: bool| -> fmt::Result {
            let mut s = String::new();
            super::poly::write_poly(&mut s, p, var)?;
            if force && !simple(p) {
                write!(f, "({s})")
            } else {
                write!(f, "{s}")
            }
        };
        wrap(f, &self.num, true)?;
        write!(f, "/")?;
        wrap(f, &self.den, true)
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_in(f, "x")
    }
}
