use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::Scalar;

/// Dense univariate polynomial, ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UniPoly {
    c: Vec<Scalar>,
}

impl UniPoly {
    pub fn new(mut c: Vec<Scalar>) -> UniPoly {
        while c.last().is_some_and(|v| v.is_zero()) {
            c.pop();
        }
        UniPoly { c }
    }

    pub fn from_ints(c: &[i64]) -> UniPoly {
        UniPoly::new(c.iter().map(|&v| Scalar::int(v)).collect())
    }

    pub fn zero() -> UniPoly {
        UniPoly { c: vec![] }
    }

    pub fn one() -> UniPoly {
        UniPoly::constant(Scalar::one())
    }

    pub fn constant(v: Scalar) -> UniPoly {
        UniPoly::new(vec![v])
    }

    /// c·t^k
    pub fn monomial(v: Scalar, k: usize) -> UniPoly {
        if v.is_zero() {
            return UniPoly::zero();
        }
        let mut c = vec![Scalar::zero(); k + 1];
        c[k] = v;
        UniPoly { c }
    }

    pub fn x() -> UniPoly {
        UniPoly::monomial(Scalar::one(), 1)
    }

    /// t - r
    pub fn linear_root(r: &Scalar) -> UniPoly {
        UniPoly::new(vec![-r, Scalar::one()])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<Scalar> {
        self.c
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.c.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    pub fn lc(&self) -> Scalar {
        self.c.last().cloned().unwrap_or_else(Scalar::zero)
    }

    /// Lowest power with nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|v| !v.is_zero())
    }

    pub fn is_monomial(&self) -> bool {
        match self.valuation() {
            Some(v) => v + 1 == self.c.len(),
            None => false,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.c.iter().all(Scalar::is_rational)
    }

    pub fn scale(&self, s: &Scalar) -> UniPoly {
        if s.is_zero() {
            return UniPoly::zero();
        }
        UniPoly {
            c: self.c.iter().map(|v| v * s).collect(),
        }
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let l = self.lc();
        if l.is_one() {
            return self.clone();
        }
        self.scale(&l.inv())
    }

    /// Multiplies by t^k.
    pub fn shift(&self, k: usize) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut c = vec![Scalar::zero(); k];
        c.extend(self.c.iter().cloned());
        UniPoly { c }
    }

    /// Divides by t^k, dropping lower terms.
    pub fn unshift(&self, k: usize) -> UniPoly {
        UniPoly::new(self.c.iter().skip(k).cloned().collect())
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, v)| v * &Scalar::int(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, t: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for v in self.c.iter().rev() {
            acc = &(&acc * t) + v;
        }
        acc
    }

    /// p(q(t)).
    pub fn compose(&self, q: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero();
        for v in self.c.iter().rev() {
            acc = &(&acc * q) + &UniPoly::constant(v.clone());
        }
        acc
    }

    /// p(s·t).
    pub fn scale_arg(&self, s: &Scalar) -> UniPoly {
        let mut p = Scalar::one();
        let mut c = Vec::with_capacity(self.c.len());
        for v in &self.c {
            c.push(v * &p);
            p = &p * s;
        }
        UniPoly::new(c)
    }

    /// p(t^n).
    pub fn inflate(&self, n: usize) -> UniPoly {
        if self.is_zero() || n == 1 {
            return self.clone();
        }
        let mut c = vec![Scalar::zero(); (self.c.len() - 1) * n + 1];
        for (i, v) in self.c.iter().enumerate() {
            c[i * n] = v.clone();
        }
        UniPoly { c }
    }

    /// q with p(t) = q(t^n), if it exists.
    pub fn deflate(&self, n: usize) -> Option<UniPoly> {
        if n == 1 {
            return Some(self.clone());
        }
        for (i, v) in self.c.iter().enumerate() {
            if i % n != 0 && !v.is_zero() {
                return None;
            }
        }
        Some(UniPoly::new(self.c.iter().step_by(n).cloned().collect()))
    }

    pub fn pow(&self, mut e: u32) -> UniPoly {
        let mut base = self.clone();
        let mut acc = UniPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn div_rem(&self, b: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!b.is_zero(), "polynomial division by zero");
        if self.c.len() < b.c.len() {
            return (UniPoly::zero(), self.clone());
        }
        let db = b.c.len() - 1;
        let inv = b.lc().inv();
        let mut r = self.c.clone();
        let mut q = vec![Scalar::zero(); r.len() - db];
        for k in (0..q.len()).rev() {
            let c = &r[k + db] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, bj) in b.c.iter().enumerate() {
                if !bj.is_zero() {
                    r[k + j] = &r[k + j] - &(&c * bj);
                }
            }
            q[k] = c;
        }
        r.truncate(db);
        (UniPoly::new(q), UniPoly::new(r))
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn div_exact(&self, b: &UniPoly) -> UniPoly {
        let (q, r) = self.div_rem(b);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, a: &UniPoly) -> bool {
        a.div_rem(self).1.is_zero()
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_monomial() || b.is_monomial() {
            let v = a.valuation().unwrap().min(b.valuation().unwrap());
            return UniPoly::monomial(Scalar::one(), v);
        }
        if let Some(g) = super::modgcd::gcd_rational(a, b) {
            return g;
        }
        let (mut r0, mut r1) = if a.c.len() >= b.c.len() {
            (a.monic(), b.monic())
        } else {
            (b.monic(), a.monic())
        };
        while !r1.is_zero() {
            let r = r0.div_rem(&r1).1.monic();
            r0 = std::mem::replace(&mut r1, r);
        }
        r0
    }

    pub fn lcm(a: &UniPoly, b: &UniPoly) -> UniPoly {
        let g = UniPoly::gcd(a, b);
        (a * &b.div_exact(&g)).monic()
    }

    /// Square-free decomposition: returns (c, [s_1, s_2, ...]) with
    /// self = c · Π s_i^i and the s_i monic, square-free and pairwise coprime.
    pub fn squarefree_decomposition(&self) -> (Scalar, Vec<UniPoly>) {
        assert!(!self.is_zero());
        let c = self.lc();
        let f = self.monic();
        let mut out = Vec::new();
        if f.is_constant() {
            return (c, out);
        }
        // Yun's algorithm (characteristic zero)
        let fp = f.derivative();
        let a0 = UniPoly::gcd(&f, &fp);
        let mut b = f.div_exact(&a0);
        let mut cc = fp.div_exact(&a0);
        let mut d = &cc - &b.derivative();
        loop {
            let a = UniPoly::gcd(&b, &d);
            out.push(a.clone());
            b = b.div_exact(&a);
            if b.is_constant() {
                break;
            }
            cc = d.div_exact(&a);
            d = &cc - &b.derivative();
        }
        while out.last().is_some_and(|p| p.is_one()) {
            out.pop();
        }
        (c, out)
    }
}

impl<'a> Add<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn add(self, o: &UniPoly) -> UniPoly {
        let (long, short) = if self.c.len() >= o.c.len() { (self, o) } else { (o, self) };
        let mut c = long.c.clone();
        for (i, v) in short.c.iter().enumerate() {
            c[i] = &c[i] + v;
        }
        UniPoly::new(c)
    }
}

impl<'a> Sub<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn sub(self, o: &UniPoly) -> UniPoly {
        let n = self.c.len().max(o.c.len());
        let mut c = self.c.clone();
        c.resize(n, Scalar::zero());
        for (i, v) in o.c.iter().enumerate() {
            c[i] = &c[i] - v;
        }
        UniPoly::new(c)
    }
}

impl<'a> Mul<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn mul(self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut c = vec![Scalar::zero(); self.c.len() + o.c.len() - 1];
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.c.iter().enumerate() {
                if !y.is_zero() {
                    c[i + j] = &c[i + j] + &(x * y);
                }
            }
        }
        UniPoly::new(c)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            c: self.c.iter().map(|v| -v).collect(),
        }
    }
}

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

macro_rules! forward_poly {
    ($tr:ident, $m:ident) => {
        impl $tr<UniPoly> for UniPoly {
            type Output = UniPoly;
            fn $m(self, o: UniPoly) -> UniPoly {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a UniPoly> for UniPoly {
            type Output = UniPoly;
            fn $m(self, o: &UniPoly) -> UniPoly {
                (&self).$m(o)
            }
        }
    };
}
forward_poly!(Add, add);
forward_poly!(Sub, sub);
forward_poly!(Mul, mul);

/// Writes a polynomial in the variable `var`, highest power first.
pub fn write_poly(f: &mut impl fmt::Write, p: &UniPoly, var: &str) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    let mut first = true;
    for (k, v) in p.c.iter().enumerate().rev() {
        if v.is_zero() {
            continue;
        }
        let s = v.to_string();
        let neg = s.starts_with('-') && v.is_rational();
        let mag = if neg { &s[1..] } else { &s[..] };
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { "-" } else { "+" })?;
        }
        first = false;
        let unit = mag == "1";
        match k {
            0 => write!(f, "{mag}")?,
            _ => {
                if !unit {
                    write!(f, "{mag}*")?;
                }
                if k == 1 {
                    write!(f, "{var}")?;
                } else {
                    write!(f, "{var}^{k}")?;
                }
            }
        }
    }
    Ok(())
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self, "t")
    }
}
