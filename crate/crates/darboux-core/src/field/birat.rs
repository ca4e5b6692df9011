use std::ops::{Add, Neg, Sub};

use super::{RatFun, Scalar, UniPoly};

/// Rational function of (x, z) with a separable denominator:
/// (Σ_i c_i(z) x^i) / den(x) where c_i ∈ Q(z) and den is monic.
///
/// No bivariate gcd is attempted; only powers of x are cancelled. Zero
/// testing is exact because the numerator is a polynomial in x over Q(z).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiRatFun {
    num: Vec<RatFun>,
    den: UniPoly,
}

impl BiRatFun {
    pub fn zero() -> BiRatFun {
        BiRatFun {
            num: vec![],
            den: UniPoly::one(),
        }
    }

    pub fn one() -> BiRatFun {
        BiRatFun::from_z(RatFun::one())
    }

    fn make(mut num: Vec<RatFun>, den: UniPoly) -> BiRatFun {
        while num.last().is_some_and(|c| c.is_zero()) {
            num.pop();
        }
        if num.is_empty() {
            return BiRatFun::zero();
        }
        let l = den.lc();
        let (mut num, mut den) = if l.is_one() {
            (num, den)
        } else {
            let inv = l.inv();
            (num.iter().map(|c| c.scale(&inv)).collect(), den.scale(&inv))
        };
        // cancel common powers of x
        let vd = den.valuation().unwrap();
        let vn = num.iter().position(|c| !c.is_zero()).unwrap();
        let k = vd.min(vn);
        if k > 0 {
            num.drain(..k);
            den = den.unshift(k);
        }
        BiRatFun { num, den }
    }

    pub fn from_z(c: RatFun) -> BiRatFun {
        BiRatFun::make(vec![c], UniPoly::one())
    }

    pub fn from_x(f: &RatFun) -> BiRatFun {
        let num = f.num().coeffs().iter().map(|c| RatFun::constant(c.clone())).collect();
        BiRatFun::make(num, f.den().clone())
    }

    pub fn constant(s: Scalar) -> BiRatFun {
        BiRatFun::from_z(RatFun::constant(s))
    }

    /// c · x^a · z^b.
    pub fn monomial(c: Scalar, a: i64, b: i64) -> BiRatFun {
        let zpart = RatFun::monomial(c, b);
        if a >= 0 {
            let mut num = vec![RatFun::zero(); a as usize];
            num.push(zpart);
            BiRatFun::make(num, UniPoly::one())
        } else {
            BiRatFun::make(vec![zpart], UniPoly::monomial(Scalar::one(), (-a) as usize))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn numerator(&self) -> &[RatFun] {
        &self.num
    }

    pub fn denominator(&self) -> &UniPoly {
        &self.den
    }

    pub fn mul_z(&self, c: &RatFun) -> BiRatFun {
        if c.is_zero() || self.is_zero() {
            return BiRatFun::zero();
        }
        BiRatFun {
            num: self.num.iter().map(|v| v * c).collect(),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> BiRatFun {
        if s.is_zero() {
            return BiRatFun::zero();
        }
        BiRatFun {
            num: self.num.iter().map(|v| v.scale(s)).collect(),
            den: self.den.clone(),
        }
    }

    fn mul_num_poly(num: &[RatFun], p: &UniPoly) -> Vec<RatFun> {
        if num.is_empty() || p.is_zero() {
            return vec![];
        }
        let mut out = vec![RatFun::zero(); num.len() + p.coeffs().len() - 1];
        for (i, c) in num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, s) in p.coeffs().iter().enumerate() {
                if !s.is_zero() {
                    out[i + j] = &out[i + j] + &c.scale(s);
                }
            }
        }
        out
    }

    pub fn mul_x(&self, f: &RatFun) -> BiRatFun {
        if f.is_zero() || self.is_zero() {
            return BiRatFun::zero();
        }
        let g1 = UniPoly::gcd(f.num(), &self.den);
        let fnum = f.num().div_exact(&g1);
        let den = &self.den.div_exact(&g1) * f.den();
        BiRatFun::make(BiRatFun::mul_num_poly(&self.num, &fnum), den)
    }

    /// Multiplies by x^k for any integer k.
    pub fn mul_xpow(&self, k: i64) -> BiRatFun {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        if k > 0 {
            let mut num = vec![RatFun::zero(); k as usize];
            num.extend(self.num.iter().cloned());
            BiRatFun::make(num, self.den.clone())
        } else {
            BiRatFun::make(self.num.clone(), self.den.shift((-k) as usize))
        }
    }

    pub fn mul(&self, o: &BiRatFun) -> BiRatFun {
        if self.is_zero() || o.is_zero() {
            return BiRatFun::zero();
        }
        let mut out = vec![RatFun::zero(); self.num.len() + o.num.len() - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.num.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        BiRatFun::make(out, &self.den * &o.den)
    }

    pub fn deriv_z(&self) -> BiRatFun {
        BiRatFun::make(self.num.iter().map(RatFun::derivative).collect(), self.den.clone())
    }

    pub fn deriv_x(&self) -> BiRatFun {
        if self.is_zero() {
            return BiRatFun::zero();
        }
        let dn: Vec<RatFun> = self
            .num
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale(&Scalar::int(i as i64)))
            .collect();
        if self.den.is_one() {
            return BiRatFun::make(dn, UniPoly::one());
        }
        let dp = self.den.derivative();
        let g = UniPoly::gcd(&self.den, &dp);
        let dg = self.den.div_exact(&g);
        let dpg = dp.div_exact(&g);
        let a = BiRatFun::mul_num_poly(&dn, &dg);
        let b = BiRatFun::mul_num_poly(&self.num, &dpg);
        BiRatFun::make(sub_vec(&a, &b), &self.den * &dg)
    }

    /// Evaluates at x = x0 (must not be a pole), returning a function of z.
    pub fn eval_x(&self, x0: &Scalar) -> Option<RatFun> {
        let d = self.den.eval(x0);
        if d.is_zero() {
            return None;
        }
        let mut acc = RatFun::zero();
        for c in self.num.iter().rev() {
            acc = &acc.scale(x0) + c;
        }
        Some(acc.scale(&d.inv()))
    }

    pub fn is_rational(&self) -> bool {
        self.den.is_rational() && self.num.iter().all(RatFun::is_rational)
    }
}

fn sub_vec(a: &[RatFun], b: &[RatFun]) -> Vec<RatFun> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x - y,
            (Some(x), None) => x.clone(),
            (None, Some(y)) => -y,
            (None, None) => unreachable!(),
        })
        .collect()
}

impl<'a> Add<&'a BiRatFun> for &'a BiRatFun {
    type Output = BiRatFun;
    fn add(self, o: &BiRatFun) -> BiRatFun {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let n = self.num.len().max(o.num.len());
            let num = (0..n)
                .map(|i| match (self.num.get(i), o.num.get(i)) {
                    (Some(x), Some(y)) => x + y,
                    (Some(x), None) | (None, Some(x)) => x.clone(),
                    (None, None) => unreachable!(),
                })
                .collect();
            return BiRatFun::make(num, self.den.clone());
        }
        let g = UniPoly::gcd(&self.den, &o.den);
        let a = self.den.div_exact(&g);
        let b = o.den.div_exact(&g);
        let n1 = BiRatFun::mul_num_poly(&self.num, &b);
        let n2 = BiRatFun::mul_num_poly(&o.num, &a);
        let n = n1.len().max(n2.len());
        let num = (0..n)
            .map(|i| match (n1.get(i), n2.get(i)) {
                (Some(x), Some(y)) => x + y,
                (Some(x), None) | (None, Some(x)) => x.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        BiRatFun::make(num, &(&a * &b) * &g)
    }
}

impl Neg for &BiRatFun {
    type Output = BiRatFun;
    fn neg(self) -> BiRatFun {
        BiRatFun {
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl<'a> Sub<&'a BiRatFun> for &'a BiRatFun {
    type Output = BiRatFun;
    fn sub(self, o: &BiRatFun) -> BiRatFun {
        self + &(-o)
    }
}
