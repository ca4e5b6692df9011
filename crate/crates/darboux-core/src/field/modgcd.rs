//! Modular gcd for polynomials with rational coefficients.
//!
//! Images mod word-size primes give the degree and, via CRT, a candidate;
//! trial division over Q certifies it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::{Scalar, UniPoly};

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primitive integer multiple of a rational polynomial, or `None` for cyclotomic input.
fn primitive_int(p: &UniPoly) -> Option<Vec<BigInt>> {
    let rats: Vec<&BigRational> = p.coeffs().iter().map(Scalar::as_rational).collect::<Option<_>>()?;
    let den = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = rats.iter().map(|r| r.numer() * (&den / r.denom())).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    Some(ints.into_iter().map(|v| v / &content).collect())
}

fn reduce(a: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut v: Vec<u64> = a.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Monic gcd over F_p.
fn gcd_mod(a: Vec<u64>, b: Vec<u64>, p: u64) -> Vec<u64> {
    let (mut r0, mut r1) = (a, b);
    while !r1.is_empty() {
        let inv = pow_mod(*r1.last().unwrap(), p - 2, p);
        let db = r1.len() - 1;
        while r0.len() > db {
            let k = r0.len() - 1 - db;
            let c = mul_mod(*r0.last().unwrap(), inv, p);
            for (j, bj) in r1.iter().enumerate() {
                r0[k + j] = (r0[k + j] + p - mul_mod(c, *bj, p)) % p;
            }
            while r0.last() == Some(&0) {
                r0.pop();
            }
        }
        std::mem::swap(&mut r0, &mut r1);
    }
    let inv = pow_mod(*r0.last().unwrap(), p - 2, p);
    r0.iter().map(|&c| mul_mod(c, inv, p)).collect()
}

/// Monic gcd of two nonzero rational polynomials; `None` if either is not over Q.
pub(super) fn gcd_rational(a: &UniPoly, b: &UniPoly) -> Option<UniPoly> {
    let ai = primitive_int(a)?;
    let bi = primitive_int(b)?;
    let lc_gcd = ai.last().unwrap().gcd(bi.last().unwrap());
    let mut p = (1u64 << 62) - 1;
    let mut modulus = BigInt::one();
    let mut acc: Vec<BigInt> = Vec::new();
    let mut deg = usize::MAX;
    let mut last_candidate: Option<UniPoly> = None;
    loop {
        p -= 2;
        while !is_prime(p) {
            p -= 2;
        }
        let pb = BigInt::from(p);
        if (ai.last().unwrap() % &pb).is_zero() || (bi.last().unwrap() % &pb).is_zero() {
            continue;
        }
        let g = gcd_mod(reduce(&ai, p), reduce(&bi, p), p);
        let d = g.len() - 1;
        if d == 0 {
            return Some(UniPoly::one());
        }
        if d > deg {
            continue;
        }
        let scale = lc_gcd.mod_floor(&pb).to_u64().unwrap();
        let g: Vec<u64> = g.iter().map(|&c| mul_mod(c, scale, p)).collect();
        if d < deg {
            deg = d;
            modulus = pb;
            acc = g.into_iter().map(BigInt::from).collect();
            last_candidate = None;
            continue;
        }
        // CRT: x ≡ acc (mod modulus), x ≡ g (mod p)
        let m_mod_p = modulus.mod_floor(&pb).to_u64().unwrap();
        let inv = pow_mod(m_mod_p, p - 2, p);
        for (x, &r) in acc.iter_mut().zip(&g) {
            let x_mod_p = x.mod_floor(&pb).to_u64().unwrap();
            let t = mul_mod((r + p - x_mod_p) % p, inv, p);
            *x += &modulus * BigInt::from(t);
        }
        modulus *= &pb;
        let half = &modulus >> 1;
        let lifted: Vec<BigInt> = acc
            .iter()
            .map(|x| if x > &half { x - &modulus } else { x.clone() })
            .collect();
        let content = lifted.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        let cand = UniPoly::new(
            lifted
                .iter()
                .map(|v| Scalar::rat(BigRational::from_integer(v / &content)))
                .collect(),
        );
        if last_candidate.as_ref() == Some(&cand) {
            let m = cand.monic();
            if a.div_rem(&m).1.is_zero() && b.div_rem(&m).1.is_zero() {
                return Some(m);
            }
        }
        last_candidate = Some(cand);
    }
}
