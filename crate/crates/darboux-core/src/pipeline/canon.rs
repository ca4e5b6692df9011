use super::spectral::flatten;
use super::{cofactor, normalize_monic, DarbouxPlane};
use crate::linalg;
use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::field::{Scalar, UniPoly};

/// Square-free factors F(t) of g = z^v·G(z^N), each with the least e such that g | F(z^N)^e·(rest).
fn support_factors(g: &UniPoly, n: usize) -> Result<Vec<(UniPoly, usize)>> {
    let v = g.valuation().unwrap_or(0);
    let rest = g.unshift(v);
    let big_g = rest.deflate(n).ok_or_else(|| Error::NotZNHomogeneous {
        n: n as u32,
        detail: format!("g = {g} is not z^v times a polynomial in z^{n}"),
    })?;
    let mut out = Vec::new();
    if v > 0 {
        out.push((UniPoly::x(), v.div_ceil(n)));
    }
    if !big_g.is_constant() {
        let (_, parts) = big_g.squarefree_decomposition();
        for (i, s) in parts.into_iter().enumerate() {
            if !s.is_constant() {
                out.push((s, i + 1));
            }
        }
    }
    Ok(out)
}

fn right_divides(p: &DiffOp, s: &DiffOp) -> Option<DiffOp> {
    if s.ord() > p.ord() {
        return None;
    }
    let (q, r) = p.right_divide(s);
    r.is_zero().then_some(q)
}

/// Largest F | s (s square-free) with F(L) a right factor of P.
///
/// The u mod s with P·u(L) ≡ 0 mod s(L) form an ideal (G) of Q[t]/(s), and F = s/G.
fn right_factor_of(p: &DiffOp, s: &UniPoly, l: &DiffOp) -> UniPoly {
    let sl = DiffOp::of_poly(s, l);
    if right_divides(p, &sl).is_some() {
        return s.clone();
    }
    if s.deg() == 1 {
        return UniPoly::one();
    }
    let mut rems = Vec::with_capacity(s.deg());
    let mut pl = p.clone();
    for i in 0..s.deg() {
        if i > 0 {
            pl = pl.op_mul(l);
        }
        rems.push(pl.right_divide(&sl).1);
    }
    let vecs = flatten(&rems);
    let rows = vecs.first().map(Vec::len).unwrap_or(0);
    let m: Vec<Vec<Scalar>> = (0..rows).map(|r| vecs.iter().map(|v| v[r].clone()).collect()).collect();
    let ideal = linalg::nullspace(&m, s.deg())
        .into_iter()
        .fold(s.clone(), |acc, u| UniPoly::gcd(&acc, &UniPoly::new(u)));
    s.div_exact(&ideal)
}

/// Removes right factors F(L) of P together with F(z^N) from g (same plane).
pub fn strip_factors(family: &Family, p: &DiffOp, g: &UniPoly) -> Result<(DiffOp, UniPoly)> {
    let n = family.n() as usize;
    let l = family.op();
    let (mut p, mut g) = (p.clone(), g.clone());
    'outer: loop {
        for (s, _) in support_factors(&g, n)? {
            let f = right_factor_of(&p, &s, &l);
            if f.is_constant() {
                continue;
            }
            let (gq, gr) = g.div_rem(&f.inflate(n));
            if !gr.is_zero() {
                continue;
            }
            p = right_divides(&p, &DiffOp::of_poly(&f, &l)).expect("F(L) is a right factor");
            g = gq;
            continue 'outer;
        }
        return Ok((p, g));
    }
}

/// Canonical record: P monic, g monic, common right factors F(L) ↔ F(z^N) removed.
pub fn canonicalize(plane: &DarbouxPlane) -> Result<DarbouxPlane> {
    let (p, g) = normalize_monic(plane.p.clone(), plane.g.clone())?;
    let (p, g) = strip_factors(&plane.family, &p, &g)?;
    Ok(DarbouxPlane {
        family: plane.family.clone(),
        conditions: if p == plane.p && g == plane.g {
            plane.conditions.clone()
        } else {
            None
        },
        p,
        g,
    })
}

/// Least h(t) over the support of g such that h(L) is right-divisible by P.
pub fn find_h(plane: &DarbouxPlane) -> Result<UniPoly> {
    let n = plane.n() as usize;
    let l = plane.family.op();
    let factors = support_factors(&plane.g, n)?;
    let build = |e: &[usize]| {
        factors
            .iter()
            .zip(e)
            .fold(UniPoly::one(), |acc, ((f, _), &k)| &acc * &f.pow(k as u32))
    };
    let ok = |e: &[usize]| cofactor(&plane.p, &build(e), &l).is_ok();
    let lower: Vec<usize> = factors.iter().map(|f| f.1).collect();
    let mut e = lower.clone();
    let mut found = false;
    for _ in 0..=plane.p.ord() + 1 {
        if ok(&e) {
            found = true;
            break;
        }
        e.iter_mut().for_each(|k| *k += 1);
    }
    if !found {
        let (_, r) = DiffOp::of_poly(&build(&e), &l).right_divide(&plane.p);
        return Err(Error::NonzeroRemainder { order: r.ord() });
    }
    for i in 0..e.len() {
        while e[i] > lower[i] {
            e[i] -= 1;
            if !ok(&e) {
                e[i] += 1;
                break;
            }
        }
    }
    let h = build(&e);
    debug_assert!(h.lc() == Scalar::one());
    Ok(h)
}
