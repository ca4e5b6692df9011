use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The cyclotomic field Q(zeta_n), carried around by every non-rational scalar.
#[derive(Debug, PartialEq, Eq)]
pub struct CycloField {
    n: u32,
    /// Monic Phi_n, ascending coefficients.
    phi: Vec<BigInt>,
}

impl CycloField {
    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn phi(&self) -> &[BigInt] {
        &self.phi
    }

    /// The generator zeta as a scalar of this field.
    pub fn zeta(self: &Arc<Self>) -> Scalar {
        let mut c = vec![BigRational::zero(); self.degree()];
        if self.degree() == 1 {
            // Phi_1 = t - 1, Phi_2 = t + 1
            return Scalar::Rat(BigRational::from_integer(-self.phi[0].clone()));
        }
        c[1] = BigRational::one();
        Scalar::from_cyclo(self.clone(), c)
    }

    /// zeta^k for any integer k.
    pub fn zeta_pow(self: &Arc<Self>, k: i64) -> Scalar {
        let n = self.n as i64;
        let e = k.rem_euclid(n) as u32;
        self.zeta().pow(e)
    }

    fn reduce(&self, mut c: Vec<BigRational>) -> Vec<BigRational> {
        let d = self.degree();
        while c.len() > d {
            let top = c.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let base = c.len() - d;
            for (i, p) in self.phi[..d].iter().enumerate() {
                let t = &c[base + i] - &top * BigRational::from_integer(p.clone());
                c[base + i] = t;
            }
        }
        c.resize(d, BigRational::zero());
        c
    }
}

fn int_poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn int_poly_div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db].clone();
        q[k] = c.clone();
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
    }
    debug_assert!(r.iter().all(|v| v.is_zero()));
    q
}

pub fn cyclotomic_poly(n: u32) -> Vec<BigInt> {
    assert!(n >= 1);
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    let mut den = vec![BigInt::one()];
    for d in 1..n {
        if n % d == 0 {
            den = int_poly_mul(&den, &cyclotomic_poly(d));
        }
    }
    int_poly_div_exact(&num, &den)
}

/// Builds Q(zeta_n).
pub fn cyclo_field(n: u32) -> Arc<CycloField> {
    assert!(n >= 1, "cyclotomic order must be positive");
    Arc::new(CycloField {
        n,
        phi: cyclotomic_poly(n),
    })
}

/// Element of Q(zeta_n). Rational values are always stored as `Rat`.
#[derive(Clone, Debug)]
pub enum Scalar {
    Rat(BigRational),
    Cyc(Arc<CycloField>, Vec<BigRational>),
}

impl Scalar {
    pub fn from_cyclo(field: Arc<CycloField>, c: Vec<BigRational>) -> Scalar {
        let c = field.reduce(c);
        if c.iter().skip(1).all(|v| v.is_zero()) {
            Scalar::Rat(c.into_iter().next().unwrap_or_else(BigRational::zero))
        } else {
            Scalar::Cyc(field, c)
        }
    }

    pub fn int(v: i64) -> Scalar {
        Scalar::Rat(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn frac(p: i64, q: i64) -> Scalar {
        Scalar::Rat(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn rat(r: BigRational) -> Scalar {
        Scalar::Rat(r)
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Scalar::Rat(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Cyc(..) => None,
        }
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.as_rational().cloned()
    }

    pub fn is_integer(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_integer())
    }

    pub fn to_i64(&self) -> Option<i64> {
        use num_traits::ToPrimitive;
        match self {
            Scalar::Rat(r) if r.is_integer() => r.to_integer().to_i64(),
            _ => None,
        }
    }

    pub fn field_order(&self) -> u32 {
        match self {
            Scalar::Rat(_) => 1,
            Scalar::Cyc(f, _) => f.n,
        }
    }

    fn coeffs_in(&self, field: &Arc<CycloField>) -> Vec<BigRational> {
        match self {
            Scalar::Rat(r) => {
                let mut c = vec![BigRational::zero(); field.degree()];
                c[0] = r.clone();
                c
            }
            Scalar::Cyc(f, c) if f.n == field.n => c.clone(),
            Scalar::Cyc(f, c) => {
                // zeta_m = zeta_n^(n/m)
                let step = (field.n / f.n) as usize;
                let mut out = vec![BigRational::zero(); step * c.len()];
                for (i, v) in c.iter().enumerate() {
                    out[i * step] = v.clone();
                }
                field.reduce(out)
            }
        }
    }

    fn common_field(a: &Scalar, b: &Scalar) -> Arc<CycloField> {
        match (a, b) {
            (Scalar::Cyc(f, _), Scalar::Rat(_)) | (Scalar::Rat(_), Scalar::Cyc(f, _)) => f.clone(),
            (Scalar::Cyc(f, _), Scalar::Cyc(g, _)) => {
                if f.n == g.n {
                    f.clone()
                } else if f.n % g.n == 0 {
                    f.clone()
                } else if g.n % f.n == 0 {
                    g.clone()
                } else {
                    cyclo_field(f.n.lcm(&g.n))
                }
            }
            _ => unreachable!(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Cyc(..) => false,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_one())
    }

    pub fn zero() -> Scalar {
        Scalar::Rat(BigRational::zero())
    }

    pub fn one() -> Scalar {
        Scalar::Rat(BigRational::one())
    }

    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Rat(r) => {
                assert!(!r.is_zero(), "division by zero scalar");
                Scalar::Rat(r.recip())
            }
            Scalar::Cyc(f, c) => {
                let inv = rat_poly_inverse_mod(c, &f.phi);
                Scalar::from_cyclo(f.clone(), inv)
            }
        }
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn powi(&self, e: i64) -> Scalar {
        if e >= 0 {
            self.pow(e as u32)
        } else {
            self.inv().pow((-e) as u32)
        }
    }
}

/// Inverse of a(t) modulo m(t) over Q by the extended Euclidean algorithm.
fn rat_poly_inverse_mod(a: &[BigRational], m: &[BigInt]) -> Vec<BigRational> {
    fn trim(v: &mut Vec<BigRational>) {
        while v.len() > 1 && v.last().is_some_and(|x| x.is_zero()) {
            v.pop();
        }
    }
    fn divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut r = a.to_vec();
        let db = b.len() - 1;
        if r.len() < b.len() {
            return (vec![BigRational::zero()], r);
        }
        let mut q = vec![BigRational::zero(); r.len() - db];
        let lb = b[db].clone();
        for k in (0..q.len()).rev() {
            let c = &r[k + db] / &lb;
            for (j, bj) in b.iter().enumerate() {
                r[k + j] = &r[k + j] - &c * bj;
            }
            q[k] = c;
        }
        r.truncate(db.max(1));
        trim(&mut r);
        (q, r)
    }
    fn mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = &out[i + j] + x * y;
            }
        }
        out
    }
    fn sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let n = a.len().max(b.len());
        let mut out = vec![BigRational::zero(); n];
        for (i, v) in a.iter().enumerate() {
            out[i] = v.clone();
        }
        for (i, v) in b.iter().enumerate() {
            out[i] = &out[i] - v;
        }
        trim(&mut out);
        out
    }
    let mut r0: Vec<BigRational> = m.iter().map(|v| BigRational::from_integer(v.clone())).collect();
    let mut r1 = a.to_vec();
    trim(&mut r1);
    let mut s0 = vec![BigRational::zero()];
    let mut s1 = vec![BigRational::one()];
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = divrem(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    assert!(r0.len() == 1 && !r0[0].is_zero(), "element not invertible");
    let c = r0[0].recip();
    s0.iter().map(|v| v * &c).collect()
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => a == b,
            (Scalar::Rat(_), Scalar::Cyc(..)) | (Scalar::Cyc(..), Scalar::Rat(_)) => false,
            _ => (self - other).is_zero(),
        }
    }
}

impl Eq for Scalar {}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            _ => {
                let f = Scalar::common_field(self, o);
                let a = self.coeffs_in(&f);
                let b = o.coeffs_in(&f);
                Scalar::from_cyclo(f, a.iter().zip(&b).map(|(x, y)| x + y).collect())
            }
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            _ => self + &(-o),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Rat(a), Scalar::Cyc(f, c)) | (Scalar::Cyc(f, c), Scalar::Rat(a)) => {
                if a.is_zero() {
                    return Scalar::zero();
                }
                Scalar::Cyc(f.clone(), c.iter().map(|v| v * a).collect())
            }
            _ => {
                let f = Scalar::common_field(self, o);
                let a = self.coeffs_in(&f);
                let b = o.coeffs_in(&f);
                let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
                for (i, x) in a.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in b.iter().enumerate() {
                        out[i + j] = &out[i + j] + x * y;
                    }
                }
                Scalar::from_cyclo(f, out)
            }
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => {
                assert!(!b.is_zero(), "division by zero scalar");
                Scalar::Rat(a / b)
            }
            _ => self * &o.inv(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Cyc(f, c) => Scalar::Cyc(f.clone(), c.iter().map(|v| -v).collect()),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::int(v)
    }
}

impl From<BigRational> for Scalar {
    fn from(v: BigRational) -> Self {
        Scalar::Rat(v)
    }
}

fn fmt_rat(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => fmt_rat(r, f),
            Scalar::Cyc(field, c) => {
                let mut first = true;
                write!(f, "(")?;
                for (i, v) in c.iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    if !first {
                        write!(f, " + ")?;
                    }
                    first = false;
                    fmt_rat(v, f)?;
                    if i > 0 {
                        write!(f, "*z{}^{}", field.n, i)?;
                    }
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Debug, thiserror::Error)]
#[error("cannot parse rational `{0}`")]
pub struct ParseScalarError(pub String);

impl FromStr for Scalar {
    type Err = ParseScalarError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let err = || ParseScalarError(s.to_string());
        let r = if let Some((p, q)) = t.split_once('/') {
            let p: BigInt = p.trim().parse().map_err(|_| err())?;
            let q: BigInt = q.trim().parse().map_err(|_| err())?;
            if q.is_zero() {
                return Err(err());
            }
            BigRational::new(p, q)
        } else {
            BigRational::from_integer(t.parse().map_err(|_| err())?)
        };
        Ok(Scalar::Rat(r))
    }
}

impl Scalar {
    /// Canonical rational string (`p` or `p/q`); panics on non-rational input.
    pub fn to_rat_string(&self) -> String {
        match self {
            Scalar::Rat(_) => self.to_string(),
            Scalar::Cyc(..) => panic!("non-rational scalar {self}"),
        }
    }

    pub fn abs_rational(&self) -> Option<BigRational> {
        self.as_rational().map(|r| r.abs())
    }
}
