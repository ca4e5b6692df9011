#![allow(dead_code)]

use darboux::bessel::BesselParam;
use darboux::pipeline::{build_plane, complete_pair_with_h, monomial_closed_forms, monomial_conditions, DarbouxPlane};
use darboux::{Scalar, UniPoly};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// β, d and A (rows over x^{γ_i}, γ = β^d), each row on a single β class.
#[derive(Clone, Debug)]
pub struct MonomialCase {
    pub bp: BesselParam,
    pub d: usize,
    pub a: Vec<Vec<Scalar>>,
}

impl MonomialCase {
    pub fn plane(&self) -> DarbouxPlane {
        build_plane(&monomial_conditions(&self.bp, &self.a, self.d).unwrap()).unwrap()
    }
}

fn random_beta(rng: &mut StdRng, n: u32) -> BesselParam {
    let nn = Scalar::int(n as i64);
    loop {
        let mut beta: Vec<Scalar> = (1..n)
            .map(|_| Scalar::frac(rng.gen_range(-6..=6), rng.gen_range(1..=4)))
            .collect();
        let sum = beta.iter().fold(Scalar::zero(), |s, b| &s + b);
        beta.push(&Scalar::int((n * (n - 1) / 2) as i64) - &sum);
        let distinct = (0..beta.len())
            .all(|i| (i + 1..beta.len()).all(|j| !(&(&beta[i] - &beta[j]) / &nn).is_integer()));
        if distinct {
            return BesselParam::new(beta).unwrap();
        }
    }
}

/// Seeded corpus with N ≤ 3, d ≤ 3 and at most 3 rows; rank-deficient draws are redrawn.
pub fn monomial_corpus(seed: u64, count: usize) -> Vec<MonomialCase> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(1..=3u32);
        let bp = random_beta(&mut rng, n);
        let d = rng.gen_range(1..=3usize);
        let rows = rng.gen_range(1..=3.min(n as usize * d));
        let a: Vec<Vec<Scalar>> = (0..rows)
            .map(|_| {
                let class = rng.gen_range(0..n as usize);
                let mut row = vec![Scalar::zero(); n as usize * d];
                while row.iter().all(Scalar::is_zero) {
                    for k in 0..d {
                        row[class * d + k] = Scalar::int(rng.gen_range(-3..=3));
                    }
                }
                row
            })
            .collect();
        if monomial_closed_forms(&bp, &a, d).is_ok() {
            out.push(MonomialCase { bp, d, a });
        }
    }
    out
}

/// Closed forms against the generic pipeline with h = t^d; `Err` names the first mismatch.
pub fn compare_closed_forms(case: &MonomialCase) -> Result<(), String> {
    let cf = monomial_closed_forms(&case.bp, &case.a, case.d).map_err(|e| e.to_string())?;
    let h = UniPoly::monomial(Scalar::one(), case.d);
    let pair = complete_pair_with_h(&case.plane(), &h).map_err(|e| e.to_string())?;
    let lb = cf.p_b.lc().as_constant().ok_or("closed P_b has a non-constant leading coefficient")?;
    let lq = cf.q_b.lc().as_constant().ok_or("closed Q_b has a non-constant leading coefficient")?;
    let (ib, iq) = (lb.inv(), lq.inv());
    let checks = [
        ("P", cf.p == pair.p),
        ("Q", cf.q == pair.q),
        ("g", cf.g == pair.g),
        ("f", cf.f == pair.f),
        ("P_b", cf.p_b.scale(&ib) == pair.p_b),
        ("g_b", cf.g_b.scale(&ib) == pair.g_b),
        ("Q_b", cf.q_b.scale(&iq) == pair.q_b),
        ("f_b", cf.f_b.scale(&iq) == pair.f_b),
    ];
    match checks.iter().find(|c| !c.1) {
        Some((name, _)) => Err(format!("{name} differs for {case:?}")),
        None => Ok(()),
    }
}
