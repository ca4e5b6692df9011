//! Kernel conditions, their bases, and the monic operator with a prescribed kernel.

use std::collections::BTreeMap;

use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::field::{cyclo_field, RatFun, Scalar, UniPoly};
use crate::linalg;

/// One term b·x^{β_i + kN}·(ln x)^j of a zero-supported condition (`i` is 0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroTerm {
    pub i: usize,
    pub k: usize,
    pub j: usize,
    pub b: Scalar,
}

/// How the jet at a point is written.
///
/// `Partial`: Σ a_k ∂_z^k Ψ (Bessel: with the ε^{ki} sheet twist), `Euler`: Σ a_k (z∂_z)^k Ψ.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PointForm {
    #[default]
    Partial,
    Euler,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointCondition {
    pub lambda: Option<Scalar>,
    /// λ^N; filled in by [`ConditionSet::new`] when only λ is given.
    pub lambda_n: Option<Scalar>,
    pub coeffs: Vec<Scalar>,
    pub form: PointForm,
}

impl PointCondition {
    pub fn new(lambda: Scalar, coeffs: Vec<Scalar>) -> PointCondition {
        PointCondition {
            lambda: Some(lambda),
            lambda_n: None,
            coeffs,
            form: PointForm::Partial,
        }
    }

    /// A jet given through λ^N alone (enough for Airy jets and Bessel Euler jets).
    pub fn from_power(lambda_n: Scalar, coeffs: Vec<Scalar>) -> PointCondition {
        PointCondition {
            lambda: None,
            lambda_n: Some(lambda_n),
            coeffs,
            form: PointForm::Partial,
        }
    }

    pub fn with_form(mut self, form: PointForm) -> PointCondition {
        self.form = form;
        self
    }

    pub fn lambda_n(&self) -> &Scalar {
        self.lambda_n.as_ref().expect("validated condition")
    }

    /// k₀ (index of the last nonzero coefficient).
    pub fn depth(&self) -> usize {
        self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Condition {
    Zero(Vec<ZeroTerm>),
    Point(PointCondition),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionSet {
    family: Family,
    conditions: Vec<Condition>,
}

impl ConditionSet {
    pub fn new(family: Family, conditions: Vec<Condition>) -> Result<ConditionSet> {
        let n = family.n();
        let mut out = Vec::with_capacity(conditions.len());
        for c in conditions {
            out.push(match c {
                Condition::Zero(terms) => Condition::Zero(validate_zero(&family, terms)?),
                Condition::Point(p) => Condition::Point(validate_point(&family, n, p)?),
            });
        }
        Ok(ConditionSet {
            family,
            conditions: out,
        })
    }

    pub fn empty(family: Family) -> ConditionSet {
        ConditionSet {
            family,
            conditions: vec![],
        }
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn conditions(&self) -> &[Condition] {
        &self.conditions
    }

    /// Number of zero-supported kernel functions.
    pub fn n0(&self) -> usize {
        self.conditions
            .iter()
            .map(|c| match c {
                Condition::Zero(t) => 1 + t.iter().map(|t| t.j).max().unwrap_or(0),
                Condition::Point(_) => 0,
            })
            .sum()
    }

    /// Distinct λ^N with their condition counts, in order of appearance.
    pub fn point_counts(&self) -> Vec<(Scalar, usize)> {
        let mut out: Vec<(Scalar, usize)> = Vec::new();
        for c in &self.conditions {
            if let Condition::Point(p) = c {
                match out.iter_mut().find(|(l, _)| l == p.lambda_n()) {
                    Some(e) => e.1 += 1,
                    None => out.push((p.lambda_n().clone(), 1)),
                }
            }
        }
        out
    }

    pub fn kernel_dim(&self) -> usize {
        self.n0() + self.family.n() as usize * self.point_counts().iter().map(|p| p.1).sum::<usize>()
    }
}

fn validate_zero(family: &Family, terms: Vec<ZeroTerm>) -> Result<Vec<ZeroTerm>> {
    let Family::Bessel(bp) = family else {
        return Err(Error::FamilyMismatch(
            "zero-supported conditions need a Bessel base".into(),
        ));
    };
    let terms: Vec<ZeroTerm> = terms.into_iter().filter(|t| !t.b.is_zero()).collect();
    if terms.is_empty() {
        return Err(Error::InvalidParam("zero condition with no nonzero term".into()));
    }
    let n = Scalar::int(bp.n() as i64);
    for t in &terms {
        if t.i >= bp.beta().len() {
            return Err(Error::InvalidParam(format!("beta index {} out of range", t.i + 1)));
        }
        let alpha = &bp.beta()[t.i] + &(&n * &Scalar::int(t.k as i64));
        let m = bp.mult(&alpha);
        if t.j >= m {
            return Err(Error::InvalidParam(format!(
                "log power {} exceeds multiplicity {} of exponent {}",
                t.j, m, alpha
            )));
        }
    }
    Ok(terms)
}

fn validate_point(family: &Family, n: u32, mut p: PointCondition) -> Result<PointCondition> {
    let k0 = p.depth();
    if p.coeffs.iter().all(Scalar::is_zero) {
        return Err(Error::InvalidParam("point condition with all coefficients zero".into()));
    }
    p.coeffs.truncate(k0 + 1);
    if !p.coeffs.iter().all(Scalar::is_rational) {
        return Err(Error::InvalidParam("condition coefficients must be rational".into()));
    }
    let ln = match (&p.lambda, &p.lambda_n) {
        (Some(l), given) => {
            if !l.is_rational() {
                return Err(Error::InvalidParam("lambda must be rational".into()));
            }
            let ln = l.pow(n);
            if let Some(g) = given {
                if *g != ln {
                    return Err(Error::InvalidParam(format!("lambda^N = {ln}, but {g} was given")));
                }
            }
            ln
        }
        (None, Some(g)) => g.clone(),
        (None, None) => return Err(Error::InvalidParam("point condition needs lambda".into())),
    };
    if !ln.is_rational() {
        return Err(Error::InvalidParam("lambda^N must be rational".into()));
    }
    match family {
        Family::Bessel(_) => {
            if ln.is_zero() {
                return Err(Error::InvalidParam("Bessel point conditions need lambda != 0".into()));
            }
            if p.form == PointForm::Partial && k0 > 0 && p.lambda.is_none() {
                return Err(Error::InvalidParam(
                    "partial-form jets need lambda itself, not only lambda^N".into(),
                ));
            }
        }
        Family::Airy(_) => {
            if p.form == PointForm::Euler {
                return Err(Error::InvalidParam("Airy jets use the partial form".into()));
            }
        }
    }
    p.lambda_n = Some(ln);
    Ok(p)
}

/// b·x^α·(ln x)^j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerLogTerm {
    pub alpha: Scalar,
    pub j: usize,
    pub b: Scalar,
}

/// A kernel element.
///
/// `Sheet` stands for Σ_m psi[m]·∂^m ψ_s where ψ_s (s = `sheet`) runs over a basis of
/// ker(L − λ^N): Ψ(x, ε^s λ) for Bessel, the N independent solutions for Airy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KernelFn {
    PowerLog(Vec<PowerLogTerm>),
    Sheet {
        lambda_n: Scalar,
        sheet: u32,
        psi: Vec<RatFun>,
    },
}

/// The jet operator R with condition function R·ψ.
pub fn jet_operator(family: &Family, p: &PointCondition) -> DiffOp {
    let mut acc = DiffOp::zero();
    let euler = DiffOp::euler();
    let mut dk = DiffOp::one();
    for (k, a) in p.coeffs.iter().enumerate() {
        if k > 0 {
            dk = match (family, p.form) {
                (Family::Bessel(_), PointForm::Euler) => dk.op_mul(&euler),
                _ => dk.d_left(),
            };
        }
        if a.is_zero() {
            continue;
        }
        let term = match (family, p.form) {
            (Family::Bessel(_), PointForm::Partial) => {
                let lam = p.lambda.as_ref().expect("validated");
                let c = a * &lam.powi(-(k as i64));
                DiffOp::func(RatFun::monomial(c, k as i64)).op_mul(&dk)
            }
            _ => dk.scale(a),
        };
        acc = &acc + &term;
    }
    acc
}

fn eigen_op(family: &Family, lambda_n: &Scalar) -> DiffOp {
    &family.op() - &DiffOp::constant(lambda_n.clone())
}

fn psi_vector(op: &DiffOp, n: usize) -> Vec<RatFun> {
    (0..n).map(|m| op.coeff(m)).collect()
}

pub fn materialize_kernel(cs: &ConditionSet) -> Result<Vec<KernelFn>> {
    let n = cs.family.n();
    let mut out = Vec::new();
    for c in &cs.conditions {
        match c {
            Condition::Zero(terms) => {
                let Family::Bessel(bp) = &cs.family else { unreachable!() };
                let nn = Scalar::int(n as i64);
                let j0 = terms.iter().map(|t| t.j).max().unwrap_or(0);
                for l in (0..=j0).rev() {
                    let fun: Vec<PowerLogTerm> = terms
                        .iter()
                        .filter(|t| t.j >= l)
                        .map(|t| PowerLogTerm {
                            alpha: &bp.beta()[t.i] + &(&nn * &Scalar::int(t.k as i64)),
                            j: t.j - l,
                            b: &t.b * &falling(t.j, l),
                        })
                        .collect();
                    out.push(KernelFn::PowerLog(fun));
                }
            }
            Condition::Point(p) => {
                let r = jet_operator(&cs.family, p);
                let (_, rem) = r.right_divide(&eigen_op(&cs.family, p.lambda_n()));
                let psi = psi_vector(&rem, n as usize);
                for s in 0..n {
                    out.push(KernelFn::Sheet {
                        lambda_n: p.lambda_n().clone(),
                        sheet: s,
                        psi: psi.clone(),
                    });
                }
            }
        }
    }
    check_power_log_independent(&out)?;
    Ok(out)
}

fn falling(j: usize, l: usize) -> Scalar {
    (0..l).fold(Scalar::one(), |acc, i| &acc * &Scalar::int((j - i) as i64))
}

fn check_power_log_independent(fns: &[KernelFn]) -> Result<()> {
    let mut keys: Vec<(Scalar, usize)> = Vec::new();
    let mut rows = Vec::new();
    for f in fns {
        if let KernelFn::PowerLog(terms) = f {
            let mut row: BTreeMap<usize, Scalar> = BTreeMap::new();
            for t in terms {
                let idx = match keys.iter().position(|k| k.0 == t.alpha && k.1 == t.j) {
                    Some(i) => i,
                    None => {
                        keys.push((t.alpha.clone(), t.j));
                        keys.len() - 1
                    }
                };
                let e = row.entry(idx).or_insert_with(Scalar::zero);
                *e = &*e + &t.b;
            }
            rows.push(row);
        }
    }
    let m: Vec<Vec<Scalar>> = rows
        .iter()
        .map(|r| (0..keys.len()).map(|i| r.get(&i).cloned().unwrap_or_else(Scalar::zero)).collect())
        .collect();
    if !m.is_empty() && linalg::rank(&m) < m.len() {
        return Err(Error::DependentKernel);
    }
    Ok(())
}

/// How the operator of a kernel was obtained.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Certificate {
    pub order: usize,
    pub power_log_columns: usize,
    /// (λ^N, number of jet blocks) whose Ψ-block was cancelled.
    pub point_blocks: Vec<(Scalar, usize)>,
    /// Values of ln x at which the system was solved; all solutions agreed.
    pub log_evaluations: Vec<i64>,
    /// P f = 0 was verified exactly for every basis element.
    pub annihilates: bool,
}

/// x^{α₀}·Σ coef·x^e·ℓ^j with ℓ = ln x, keyed by (e, j).
type LogRow = BTreeMap<(i64, usize), Scalar>;

struct LogColumn {
    base: Scalar,
    rows: Vec<LogRow>,
}

fn log_column(terms: &[PowerLogTerm], count: usize) -> Result<LogColumn> {
    let base = terms[0].alpha.clone();
    let mut cur: LogRow = BTreeMap::new();
    for t in terms {
        let e = (&t.alpha - &base).to_i64().ok_or_else(|| {
            Error::RationalizationFailure("power-log function mixes exponent classes".into())
        })?;
        let v = cur.entry((e, t.j)).or_insert_with(Scalar::zero);
        *v = &*v + &t.b;
    }
    let mut rows = Vec::with_capacity(count);
    for _ in 0..count {
        let mut next: LogRow = BTreeMap::new();
        for ((e, j), c) in &cur {
            let a = &base + &Scalar::int(*e);
            let v = next.entry((e - 1, *j)).or_insert_with(Scalar::zero);
            *v = &*v + &(&a * c);
            if *j > 0 {
                let v = next.entry((e - 1, j - 1)).or_insert_with(Scalar::zero);
                *v = &*v + &(&Scalar::int(*j as i64) * c);
            }
        }
        next.retain(|_, v| !v.is_zero());
        rows.push(std::mem::replace(&mut cur, next));
    }
    Ok(LogColumn { base, rows })
}

fn eval_log_row(row: &LogRow, ell: i64) -> RatFun {
    let l = Scalar::int(ell);
    row.iter().fold(RatFun::zero(), |acc, ((e, j), c)| {
        &acc + &RatFun::monomial(c * &l.pow(*j as u32), *e)
    })
}

fn psi_rows(psi: &[RatFun], lm: &DiffOp, count: usize) -> Vec<Vec<RatFun>> {
    let n = psi.len();
    let mut cur = DiffOp::new(psi.to_vec());
    let mut rows = Vec::with_capacity(count);
    for _ in 0..count {
        rows.push(psi_vector(&cur, n));
        let (_, r) = cur.d_left().right_divide(lm);
        cur = r;
    }
    rows
}

/// The monic operator whose kernel is spanned by `basis`.
pub fn wronskian_op(basis: &[KernelFn], family: &Family) -> Result<(DiffOp, Certificate)> {
    let n = basis.len();
    let nn = family.n();
    let mut cert = Certificate {
        order: n,
        ..Default::default()
    };
    if n == 0 {
        cert.annihilates = true;
        return Ok((DiffOp::one(), cert));
    }
    let mut logs = Vec::new();
    // (λ^N, psi) -> sheets seen
    let mut groups: Vec<(Scalar, Vec<RatFun>, Vec<u32>)> = Vec::new();
    for f in basis {
        match f {
            KernelFn::PowerLog(t) => {
                if t.is_empty() {
                    return Err(Error::DependentKernel);
                }
                logs.push(log_column(t, n + 1)?);
            }
            KernelFn::Sheet {
                lambda_n,
                sheet,
                psi,
            } => match groups.iter_mut().find(|g| &g.0 == lambda_n && &g.1 == psi) {
                Some(g) => g.2.push(*sheet),
                None => groups.push((lambda_n.clone(), psi.clone(), vec![*sheet])),
            },
        }
    }
    let mut psi_cols: Vec<Vec<Vec<RatFun>>> = Vec::new();
    for (ln, psi, sheets) in &mut groups {
        sheets.sort();
        if *sheets != (0..nn).collect::<Vec<_>>() {
            return Err(Error::RationalizationFailure(format!(
                "kernel contains sheets {sheets:?} at lambda^N = {ln}, not a full set of {nn}"
            )));
        }
        if psi.len() != nn as usize {
            return Err(Error::Input("sheet function has wrong number of components".into()));
        }
        psi_cols.push(psi_rows(psi, &eigen_op(family, ln), n + 1));
        match cert.point_blocks.iter_mut().find(|b| &b.0 == ln) {
            Some(b) => b.1 += 1,
            None => cert.point_blocks.push((ln.clone(), 1)),
        }
    }
    cert.power_log_columns = logs.len();
    let max_log = logs
        .iter()
        .flat_map(|c| c.rows[0].keys().map(|k| k.1))
        .max()
        .unwrap_or(0);
    let evals: Vec<i64> = (0..=max_log as i64).collect();
    // one equation per column: Σ_{s<n} c_s M[s][col] = −M[n][col]
    let mut fixed_rows: Vec<Vec<RatFun>> = Vec::new();
    for rows in &psi_cols {
        for m in 0..nn as usize {
            fixed_rows.push(rows.iter().map(|r| r[m].clone()).collect());
        }
    }
    let mut solution: Option<Vec<RatFun>> = None;
    let mut singular = 0;
    for &ell in &evals {
        let mut eqs = fixed_rows.clone();
        for col in &logs {
            eqs.push(col.rows.iter().map(|r| eval_log_row(r, ell)).collect());
        }
        if eqs.len() != n {
            return Err(Error::Input("kernel size mismatch".into()));
        }
        let a: Vec<Vec<RatFun>> = eqs.iter().map(|e| e[..n].to_vec()).collect();
        let b: Vec<RatFun> = eqs.iter().map(|e| -&e[n]).collect();
        match linalg::solve(&a, &b) {
            None => singular += 1,
            Some(c) => match &solution {
                None => solution = Some(c),
                Some(prev) if *prev == c => {}
                Some(_) => {
                    return Err(Error::RationalizationFailure(
                        "operator depends on ln x; kernel is not closed under the log shift".into(),
                    ))
                }
            },
        }
    }
    let Some(mut c) = solution else {
        return Err(Error::DependentKernel);
    };
    if singular > 0 {
        return Err(Error::RationalizationFailure(
            "Wronskian vanishes for some values of ln x".into(),
        ));
    }
    cert.log_evaluations = evals;
    c.push(RatFun::one());
    let p = DiffOp::new(c);
    if !p.is_rational() {
        return Err(Error::RationalizationFailure(
            "coefficients retain roots of unity".into(),
        ));
    }
    for rows in &psi_cols {
        for m in 0..nn as usize {
            let v = (0..=n).fold(RatFun::zero(), |acc, s| &acc + &(&p.coeff(s) * &rows[s][m]));
            if !v.is_zero() {
                return Err(Error::RationalizationFailure("P does not annihilate a jet".into()));
            }
        }
    }
    for col in &logs {
        if !annihilates_log(&p, col) {
            return Err(Error::RationalizationFailure(
                "P does not annihilate a power-log function".into(),
            ));
        }
    }
    cert.annihilates = true;
    Ok((p, cert))
}

fn annihilates_log(p: &DiffOp, col: &LogColumn) -> bool {
    let _ = &col.base;
    let mut by_j: BTreeMap<usize, RatFun> = BTreeMap::new();
    for (s, row) in col.rows.iter().enumerate() {
        let ps = p.coeff(s);
        if ps.is_zero() {
            continue;
        }
        for ((e, j), c) in row {
            let v = by_j.entry(*j).or_insert_with(RatFun::zero);
            *v = &*v + &(&ps * &RatFun::monomial(c.clone(), *e));
        }
    }
    by_j.values().all(RatFun::is_zero)
}

/// g(z) = z^{n₀}·Π(z^N − λ_j^N)^{n_j}.
pub fn g_from_conditions(cs: &ConditionSet) -> UniPoly {
    let n = cs.family.n() as usize;
    let mut g = UniPoly::monomial(Scalar::one(), cs.n0());
    for (ln, cnt) in cs.point_counts() {
        let f = &UniPoly::monomial(Scalar::one(), n) - &UniPoly::constant(ln);
        g = &g * &f.pow(cnt as u32);
    }
    g
}

/// Exponents of h(t) = t^{d₀}·Π(t − λ_j^N)^{d_j} with ker P ⊆ ker h(L).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HExponents {
    pub d0: usize,
    pub points: Vec<(Scalar, usize)>,
}

impl HExponents {
    /// h as a polynomial in t = z^N.
    pub fn h(&self) -> UniPoly {
        let mut h = UniPoly::monomial(Scalar::one(), self.d0);
        for (ln, d) in &self.points {
            h = &h * &UniPoly::linear_root(ln).pow(*d as u32);
        }
        h
    }
}

pub fn min_h_exponents(cs: &ConditionSet) -> HExponents {
    let mut d0 = 0;
    let mut points: Vec<(Scalar, usize)> = Vec::new();
    for c in &cs.conditions {
        match c {
            Condition::Zero(terms) => {
                let Family::Bessel(bp) = &cs.family else { unreachable!() };
                let nn = Scalar::int(bp.n() as i64);
                for t in terms {
                    let alpha = &bp.beta()[t.i] + &(&nn * &Scalar::int(t.k as i64));
                    let levels = bp.exponent_levels(&alpha);
                    d0 = d0.max(1 + levels[t.j] as usize);
                }
            }
            Condition::Point(p) => {
                let d = 1 + p.depth();
                match points.iter_mut().find(|e| &e.0 == p.lambda_n()) {
                    Some(e) => e.1 = e.1.max(d),
                    None => points.push((p.lambda_n().clone(), d)),
                }
            }
        }
    }
    HExponents { d0, points }
}

/// True iff the kernel of the condition set is closed under the ℤ_N action.
pub fn zn_check(cs: &ConditionSet) -> bool {
    match materialize_kernel(cs) {
        Ok(fns) => zn_check_fns(&fns, &cs.family),
        Err(_) => false,
    }
}

/// Closure of an explicit basis under x ↦ εx (Bessel) or under the change of solution basis (Airy).
pub fn zn_check_fns(fns: &[KernelFn], family: &Family) -> bool {
    let n = family.n();
    let nn = Scalar::int(n as i64);
    for f in fns {
        if let KernelFn::PowerLog(terms) = f {
            let a0 = &terms[0].alpha;
            if !terms.iter().all(|t| (&(&t.alpha - a0) / &nn).is_integer()) {
                return false;
            }
        }
    }
    if n == 1 {
        return true;
    }
    let eps = cyclo_field(n).zeta();
    let bessel = family.is_bessel();
    let sheets: Vec<(&Scalar, u32, &Vec<RatFun>)> = fns
        .iter()
        .filter_map(|f| match f {
            KernelFn::Sheet {
                lambda_n,
                sheet,
                psi,
            } => Some((lambda_n, *sheet % n, psi)),
            _ => None,
        })
        .collect();
    for &(ln, s, psi) in &sheets {
        let target = (s + 1) % n;
        let rotated: Vec<RatFun> = if bessel {
            psi.iter()
                .enumerate()
                .map(|(m, r)| r.scale_arg(&eps).scale(&eps.powi(-(m as i64))))
                .collect()
        } else {
            psi.clone()
        };
        let span: Vec<&Vec<RatFun>> = sheets
            .iter()
            .filter(|(l, t, _)| *l == ln && *t == target)
            .map(|(_, _, p)| *p)
            .collect();
        if !in_constant_span(&rotated, &span) {
            return false;
        }
    }
    true
}

/// Whether v = Σ c_i w_i with constant c_i.
fn in_constant_span(v: &[RatFun], ws: &[&Vec<RatFun>]) -> bool {
    if ws.is_empty() {
        return v.iter().all(RatFun::is_zero);
    }
    let all: Vec<&[RatFun]> = ws.iter().map(|w| w.as_slice()).chain([v]).collect();
    let mut den = UniPoly::one();
    for w in &all {
        for r in w.iter() {
            den = UniPoly::lcm(&den, r.den());
        }
    }
    let polys: Vec<Vec<UniPoly>> = all
        .iter()
        .map(|w| w.iter().map(|r| r.num() * &den.div_exact(r.den())).collect())
        .collect();
    let width = 1 + polys.iter().flatten().filter_map(UniPoly::degree).max().unwrap_or(0);
    let flat: Vec<Vec<Scalar>> = polys
        .iter()
        .map(|w| w.iter().flat_map(|p| (0..width).map(|i| p.coeff(i))).collect())
        .collect();
    let k = ws.len();
    linalg::rank(&flat[..k]) == linalg::rank(&flat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::airy::AiryParam;
    use crate::bessel::BesselParam;

    fn bessel(beta: &[(i64, i64)]) -> Family {
        Family::Bessel(BesselParam::from_ratios(beta).unwrap())
    }

    fn zt(i: usize, k: usize, j: usize, b: Scalar) -> ZeroTerm {
        ZeroTerm { i, k, j, b }
    }

    fn q(p: i64, d: i64) -> Scalar {
        Scalar::frac(p, d)
    }

    /// Cofactor expansion of Wr(f_0, …, f_{n−1}, φ) along φ, for pure powers x^{γ}.
    fn cofactor_oracle(gamma: &[Scalar]) -> DiffOp {
        let n = gamma.len();
        let base = gamma[0].clone();
        let entry = |g: &Scalar, s: usize| {
            let c = (0..s).fold(Scalar::one(), |a, i| &a * &(g - &Scalar::int(i as i64)));
            RatFun::monomial(c, (g - &base).to_i64().unwrap() - s as i64)
        };
        let w: Vec<Vec<RatFun>> = (0..n).map(|s| gamma.iter().map(|g| entry(g, s)).collect()).collect();
        let den = linalg::det(&w);
        let mut c = Vec::new();
        for s in 0..=n {
            let minor: Vec<Vec<RatFun>> = (0..=n)
                .filter(|&r| r != s)
                .map(|r| gamma.iter().map(|g| entry(g, r)).collect())
                .collect();
            let sign = if (n + s) % 2 == 0 { 1 } else { -1 };
            c.push(&linalg::det(&minor).scale(&Scalar::int(sign)) / &den);
        }
        DiffOp::new(c)
    }

    #[test]
    fn single_power() {
        let fam = bessel(&[(-1, 1), (2, 1)]);
        let cs = ConditionSet::new(fam.clone(), vec![Condition::Zero(vec![zt(1, 0, 0, Scalar::one())])]).unwrap();
        let k = materialize_kernel(&cs).unwrap();
        assert_eq!(
            k,
            vec![KernelFn::PowerLog(vec![PowerLogTerm { alpha: Scalar::int(2), j: 0, b: Scalar::one() }])]
        );
        let (p, cert) = wronskian_op(&k, &fam).unwrap();
        assert_eq!(p, DiffOp::new(vec![RatFun::monomial(Scalar::int(-2), -1), RatFun::one()]));
        assert!(cert.annihilates);
        assert_eq!(g_from_conditions(&cs), UniPoly::x());
        let h = min_h_exponents(&cs);
        assert_eq!(h.d0, 1);
        assert_eq!(h.h(), UniPoly::x());
    }

    #[test]
    fn basis_x_gives_d_minus_inverse_x() {
        let fam = bessel(&[(1, 1), (0, 1)]);
        let basis = vec![KernelFn::PowerLog(vec![PowerLogTerm { alpha: Scalar::one(), j: 0, b: Scalar::one() }])];
        let (p, _) = wronskian_op(&basis, &fam).unwrap();
        assert_eq!(p, DiffOp::new(vec![RatFun::monomial(Scalar::int(-1), -1), RatFun::one()]));
    }

    #[test]
    fn wronskian_x_x4() {
        let gamma = [Scalar::int(1), Scalar::int(4)];
        let w: Vec<Vec<RatFun>> = vec![
            vec![RatFun::monomial(Scalar::one(), 1), RatFun::monomial(Scalar::one(), 4)],
            vec![RatFun::one(), RatFun::monomial(Scalar::int(4), 3)],
        ];
        assert_eq!(linalg::det(&w), RatFun::monomial(Scalar::int(3), 4));
        let fam = bessel(&[(1, 1), (0, 1)]);
        let basis: Vec<KernelFn> = gamma
            .iter()
            .map(|g| KernelFn::PowerLog(vec![PowerLogTerm { alpha: g.clone(), j: 0, b: Scalar::one() }]))
            .collect();
        let (p, _) = wronskian_op(&basis, &fam).unwrap();
        assert_eq!(p, cofactor_oracle(&gamma));
    }

    #[test]
    fn matches_cofactor_oracle() {
        let sets: Vec<Vec<Scalar>> = vec![
            vec![q(5, 2), q(1, 2), q(-3, 2)],
            vec![q(1, 3), q(7, 3)],
            vec![Scalar::int(-1), Scalar::int(2), Scalar::int(3), Scalar::int(7)],
        ];
        let fam = bessel(&[(1, 1), (0, 1)]);
        for gamma in sets {
            let basis: Vec<KernelFn> = gamma
                .iter()
                .map(|g| KernelFn::PowerLog(vec![PowerLogTerm { alpha: g.clone(), j: 0, b: Scalar::one() }]))
                .collect();
            let (p, _) = wronskian_op(&basis, &fam).unwrap();
            assert_eq!(p, cofactor_oracle(&gamma));
        }
    }

    #[test]
    fn log_family() {
        let fam = bessel(&[(1, 1), (1, 1), (1, 1)]);
        let (a0, a1, a2) = (Scalar::int(2), Scalar::int(-1), Scalar::int(3));
        let cs = ConditionSet::new(
            fam.clone(),
            vec![Condition::Zero(vec![zt(0, 0, 0, a0.clone()), zt(0, 0, 1, a1.clone()), zt(0, 1, 2, a2.clone())])],
        )
        .unwrap();
        let k = materialize_kernel(&cs).unwrap();
        assert_eq!(k.len(), 3);
        let t = |alpha: i64, j: usize, b: Scalar| PowerLogTerm { alpha: Scalar::int(alpha), j, b };
        assert_eq!(k[0], KernelFn::PowerLog(vec![t(4, 0, &a2 * &Scalar::int(2))]));
        assert_eq!(k[1], KernelFn::PowerLog(vec![t(1, 0, a1.clone()), t(4, 1, &a2 * &Scalar::int(2))]));
        assert_eq!(k[2], KernelFn::PowerLog(vec![t(1, 0, a0), t(1, 1, a1), t(4, 2, a2)]));
        let (p, cert) = wronskian_op(&k, &fam).unwrap();
        assert_eq!(p.ord(), 3);
        assert_eq!(cert.log_evaluations, vec![0, 1, 2]);
        assert!(cert.annihilates);
        assert!(p.to_dform(3).is_ok());
        assert_eq!(g_from_conditions(&cs), UniPoly::monomial(Scalar::one(), 3));
        // x⁴ ln² x sits at level 1 of the triple exponent 1: L² kills it
        assert_eq!(min_h_exponents(&cs).d0, 2);
    }

    #[test]
    fn log_without_family_fails() {
        let fam = bessel(&[(1, 1), (1, 1), (1, 1)]);
        let basis = vec![KernelFn::PowerLog(vec![PowerLogTerm { alpha: Scalar::one(), j: 1, b: Scalar::one() }])];
        assert!(matches!(wronskian_op(&basis, &fam), Err(Error::RationalizationFailure(_))));
    }

    #[test]
    fn dependent_kernel() {
        let fam = bessel(&[(-1, 1), (2, 1)]);
        let c = Condition::Zero(vec![zt(1, 0, 0, Scalar::one())]);
        let cs = ConditionSet::new(fam, vec![c.clone(), c]).unwrap();
        assert_eq!(materialize_kernel(&cs), Err(Error::DependentKernel));
    }

    #[test]
    fn invalid_log_power() {
        let fam = bessel(&[(-1, 1), (2, 1)]);
        let r = ConditionSet::new(fam, vec![Condition::Zero(vec![zt(1, 0, 1, Scalar::one())])]);
        assert!(matches!(r, Err(Error::InvalidParam(_))));
    }

    fn airy2(a0: Scalar) -> Family {
        Family::Airy(AiryParam::new(2, a0, vec![]).unwrap())
    }

    fn eq101(a: &Scalar, lam: &Scalar, a0: &Scalar) -> DiffOp {
        let s = RatFun::poly(UniPoly::new(vec![lam * lam, a0.clone()]));
        let a2 = a * a;
        let den = &RatFun::one() - &s.scale(&a2);
        let c1 = &RatFun::constant(&a2 * a0) / &den;
        let c0 = &(&(&(&s * &s).scale(&a2) - &s) - &RatFun::constant(a * a0)) / &den;
        DiffOp::new(vec![c0, c1, RatFun::one()])
    }

    #[test]
    fn airy_one_point_matches_closed_form() {
        for (a, lam, a0) in [(q(1, 1), q(0, 1), q(1, 1)), (q(2, 1), q(1, 3), q(3, 1)), (q(-3, 4), q(5, 2), q(-2, 7))] {
            let fam = airy2(a0.clone());
            let cs = ConditionSet::new(
                fam.clone(),
                vec![Condition::Point(PointCondition::new(lam.clone(), vec![Scalar::one(), a.clone()]))],
            )
            .unwrap();
            let k = materialize_kernel(&cs).unwrap();
            let (p, _) = wronskian_op(&k, &fam).unwrap();
            assert_eq!(p, eq101(&a, &lam, &a0));
            let g = g_from_conditions(&cs);
            assert_eq!(g, UniPoly::new(vec![-(&lam * &lam), Scalar::zero(), Scalar::one()]));
            let h = min_h_exponents(&cs);
            assert_eq!(h.points, vec![(&lam * &lam, 2)]);
        }
    }

    #[test]
    fn bessel_point_sheets() {
        // β = (1−ν, ν), λ = 1, jet Ψ + a∂_zΨ; at λ = 1 partial and Euler forms coincide
        let nu = q(1, 3);
        let fam = Family::Bessel(BesselParam::new(vec![&Scalar::one() - &nu, nu.clone()]).unwrap());
        let a = Scalar::int(2);
        let mk = |form| {
            ConditionSet::new(
                fam.clone(),
                vec![Condition::Point(PointCondition::new(Scalar::one(), vec![Scalar::one(), a.clone()]).with_form(form))],
            )
            .unwrap()
        };
        let k1 = materialize_kernel(&mk(PointForm::Partial)).unwrap();
        let k2 = materialize_kernel(&mk(PointForm::Euler)).unwrap();
        assert_eq!(k1, k2);
        assert_eq!(k1.len(), 2);
        // Ψ + a x ∂Ψ, already reduced
        let KernelFn::Sheet { psi, .. } = &k1[0] else { panic!() };
        assert_eq!(psi, &vec![RatFun::one(), RatFun::monomial(a.clone(), 1)]);
        let (p, _) = wronskian_op(&k1, &fam).unwrap();
        assert_eq!(p.ord(), 2);
        assert!(p.to_dform(2).is_ok());
        assert!(zn_check(&mk(PointForm::Partial)));
    }

    #[test]
    fn partial_vs_euler_at_general_lambda() {
        let fam = bessel(&[(5, 2), (-3, 2)]);
        let lam = Scalar::int(3);
        let a = q(2, 5);
        let part = ConditionSet::new(
            fam.clone(),
            vec![Condition::Point(PointCondition::new(lam.clone(), vec![Scalar::one(), a.clone()]))],
        )
        .unwrap();
        let eul = ConditionSet::new(
            fam.clone(),
            vec![Condition::Point(
                PointCondition::new(lam.clone(), vec![Scalar::one(), &a / &lam]).with_form(PointForm::Euler),
            )],
        )
        .unwrap();
        let p1 = wronskian_op(&materialize_kernel(&part).unwrap(), &fam).unwrap().0;
        let p2 = wronskian_op(&materialize_kernel(&eul).unwrap(), &fam).unwrap().0;
        assert_eq!(p1, p2);
    }

    #[test]
    fn missing_sheet_is_not_closed() {
        let fam = bessel(&[(1, 3), (2, 3)]);
        let one = KernelFn::Sheet {
            lambda_n: Scalar::one(),
            sheet: 0,
            psi: vec![RatFun::one(), RatFun::zero()],
        };
        assert!(!zn_check_fns(&[one.clone()], &fam));
        assert!(matches!(wronskian_op(&[one.clone()], &fam), Err(Error::RationalizationFailure(_))));
        let KernelFn::Sheet { lambda_n, psi, .. } = one.clone() else { unreachable!() };
        let other = KernelFn::Sheet { lambda_n, sheet: 1, psi };
        assert!(zn_check_fns(&[one, other], &fam));
    }

    #[test]
    fn rotation_and_n1() {
        let fam1 = bessel(&[(0, 1)]);
        let cs = ConditionSet::new(fam1, vec![Condition::Point(PointCondition::new(Scalar::int(2), vec![Scalar::one()]))]).unwrap();
        assert!(zn_check(&cs));
        let fam = bessel(&[(1, 3), (2, 3)]);
        let mixed = vec![KernelFn::PowerLog(vec![
            PowerLogTerm { alpha: q(1, 3), j: 0, b: Scalar::one() },
            PowerLogTerm { alpha: q(2, 3), j: 0, b: Scalar::one() },
        ])];
        assert!(!zn_check_fns(&mixed, &fam));
    }

    #[test]
    fn empty_set() {
        let fam = bessel(&[(0, 1), (1, 1)]);
        let cs = ConditionSet::empty(fam.clone());
        let (p, _) = wronskian_op(&materialize_kernel(&cs).unwrap(), &fam).unwrap();
        assert_eq!(p, DiffOp::one());
        assert_eq!(g_from_conditions(&cs), UniPoly::one());
        assert_eq!(min_h_exponents(&cs).h(), UniPoly::one());
    }
}
