//! Raising-operator expansions against Pfaffians and determinants, the
//! inflation identities, and the collapse properties of theta/eta.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use super::{partitions_padded, rho_sequences, strict_partitions, CheckReport};
use crate::error::{Error, Result};
use crate::formulas::{check_rho_strict, eta, schur_delta, schur_pfaffian, theta, theta_z, DeltaMethod, PfVariant};
use crate::operators::{
    apply_product_nonnegative, evaluate, in_cone, EvalStyle, OpExpression, OperatorFactor, SignVector,
};
use crate::pfaffian::pfaffian;
use crate::symbolic::{Monomial, SymPoly, Symbol, SymbolKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PfCheckVariant {
    C,
    D,
}

/// `∏ (1 - R_ij)/(1 + R_ij)` (variant C) or the δ-twisted ratio (variant D)
/// applied to `c_λ`, against the Pfaffian of the closed-form entries.
pub fn check_raising_vs_pfaffian(
    variant: PfCheckVariant,
    lambda: &[i64],
    s: Option<&SignVector>,
) -> Result<CheckReport> {
    if !in_cone(lambda) {
        return Err(Error::Hypothesis(format!("{lambda:?} is outside the cone")));
    }
    let n = lambda.len();
    let pairs = (1..=n).flat_map(|j| (1..j).map(move |i| (i, j)));
    let (lhs, rhs, params) = match variant {
        PfCheckVariant::C => {
            let ops: Vec<_> = pairs
                .flat_map(|(i, j)| [OperatorFactor::one_minus(i, j), OperatorFactor::one_plus_inverse(i, j)])
                .collect();
            let e = apply_product_nonnegative(&ops, &OpExpression::monomial(lambda.to_vec()))?;
            let lhs = evaluate(&e, EvalStyle::PlainC)?;
            (lhs, schur_pfaffian(PfVariant::C, lambda, None)?, json!({ "variant": "C", "lambda": lambda }))
        }
        PfCheckVariant::D => {
            let s = s.ok_or_else(|| Error::Hypothesis("variant D needs a sign vector".into()))?;
            let ops: Vec<_> = pairs.map(|(i, j)| OperatorFactor::DeltaRatio { i, j }).collect();
            let e = apply_product_nonnegative(&ops, &OpExpression::signed_monomial(lambda.to_vec(), s.clone())?)?;
            let lhs = evaluate(&e, EvalStyle::DPlusSE)?;
            let params = json!({ "variant": "D", "lambda": lambda, "s": s.entries() });
            (lhs, schur_pfaffian(PfVariant::D, lambda, Some(s))?, params)
        }
    };
    Ok(CheckReport::compare("raising_vs_pfaffian", params, &lhs, &rhs))
}

/// Strict partitions, and the same with a zero part appended, up to `max_len`
/// entries.
fn strict_with_zero(max_len: usize, max_size: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for len in 1..=max_len {
        for p in strict_partitions(len, max_size) {
            if len < max_len {
                let mut z = p.clone();
                z.push(0);
                out.push(z);
            }
            out.push(p);
        }
    }
    out
}

/// Every strict `λ` (optionally with a trailing zero) of at most `max_len`
/// entries and size at most `max_size`.
pub fn pf_c_family(max_len: usize, max_size: i64) -> Result<CheckReport> {
    let reports = strict_with_zero(max_len, max_size)
        .iter()
        .map(|l| check_raising_vs_pfaffian(PfCheckVariant::C, l, None))
        .collect::<Result<Vec<_>>>()?;
    Ok(CheckReport::all("raising_vs_pfaffian_c", json!({ "max_len": max_len, "max_size": max_size }), reports))
}

/// All sign vectors of length `len`.
fn all_signs(len: usize) -> Vec<SignVector> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i8>| {
                (-1..=1).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out.into_iter().map(|v| SignVector::new(v).expect("entries in -1..=1")).collect()
}

/// As [`pf_c_family`], for every sign vector.
pub fn pf_d_family(max_len: usize, max_size: i64) -> Result<CheckReport> {
    let mut reports = Vec::new();
    for l in strict_with_zero(max_len, max_size) {
        for s in all_signs(l.len()) {
            reports.push(check_raising_vs_pfaffian(PfCheckVariant::D, &l, Some(&s))?);
        }
    }
    Ok(CheckReport::all("raising_vs_pfaffian_d", json!({ "max_len": max_len, "max_size": max_size }), reports))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum InflationVariant {
    Theta,
    Eta,
}

/// One instance of the inflation identity: `c(m)` is multiplied by
/// `1 + a_1 + ... + a_p`, where positions `m..=n` carry one bundle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InflationCase {
    pub rho: Vec<i64>,
    pub lambda: Vec<i64>,
    /// Only read by the eta variant.
    pub r: usize,
    pub m: usize,
    pub n: usize,
    pub p: usize,
}

impl InflationCase {
    fn check_hypotheses(&self, variant: InflationVariant) -> Result<()> {
        check_rho_strict(&self.rho, &self.lambda)?;
        let ell = self.lambda.len();
        let bad = |msg: String| Err(Error::Hypothesis(msg));
        if !(1 <= self.m && self.m < self.n && self.n <= ell && self.rho.len() == ell) {
            return bad(format!("need 1 <= m < n <= {ell}"));
        }
        if self.p > self.n - self.m {
            return bad(format!("p = {} exceeds n - m = {}", self.p, self.n - self.m));
        }
        let mu = |i: usize| self.lambda[i - 1] + self.rho[i - 1];
        if (self.m..self.n).any(|i| mu(i) != mu(i + 1)) {
            return bad("lambda_i + rho_i is not constant on m..=n".into());
        }
        if variant == InflationVariant::Eta {
            if self.r > ell || (1..=self.r).any(|j| self.rho[j - 1] != j as i64 - 1) {
                return Err(Error::RhoRankMismatch(self.r));
            }
            if !(self.n <= self.r || self.r <= self.m) {
                return bad(format!("m..=n = {}..={} straddles r = {}", self.m, self.n, self.r));
            }
        }
        self.check_determinant_block(variant)
    }

    /// The repeated-row argument needs rows `m..=n` to be interchangeable:
    /// equal `ρ` on the block, no `ρ_j` ending inside it, and (for eta) the
    /// block strictly after `r`.
    fn check_determinant_block(&self, variant: InflationVariant) -> Result<()> {
        let bad = |msg: String| Err(Error::Hypothesis(msg));
        if (self.m..self.n).any(|i| self.rho[i - 1] != self.rho[i]) {
            return bad(format!("rho is not constant on {}..={}", self.m, self.n));
        }
        let splits = |&r: &i64| (self.m as i64..self.n as i64).contains(&r);
        if self.rho.iter().any(splits) {
            return bad(format!("some rho_j lies in {}..{}", self.m, self.n));
        }
        if variant == InflationVariant::Eta && self.r >= self.m {
            return bad(format!("r = {} is not below m = {}", self.r, self.m));
        }
        Ok(())
    }
}

/// Signs `(-1)^k` up to `r`, then 0.
fn alternating_signs(len: usize, r: usize) -> SignVector {
    SignVector::new(
        (1..=len)
            .map(|k| {
                if k > r {
                    0
                } else if k % 2 == 0 {
                    1
                } else {
                    -1
                }
            })
            .collect(),
    )
    .expect("entries in -1..=1")
}

/// Label given to the shared bundle of positions `m..=n`.
const SHARED: u32 = 0;

/// Checks `Θ(c') = Θ(c)` (or `H(c') = H(c)`) for one case. Positions
/// `m..=n` are first given one common bundle; on the left, position `m`
/// alone gets `c'(m)_k = c(m)_k + Σ_t a_t c(m)_{k-t}`.
///
/// Besides constant `λ_i + ρ_i` on the block, the rows must be
/// interchangeable (see `check_determinant_block`); with free symbols the
/// identity fails without that, e.g. `ρ = (0, 1)`, `λ = (1, 0)`.
pub fn check_inflation(variant: InflationVariant, case: &InflationCase) -> Result<CheckReport> {
    case.check_hypotheses(variant)?;
    let (lhs, rhs) = inflation_sides(variant, case)?;
    let params = json!({ "variant": variant, "case": case });
    Ok(CheckReport::compare("inflation", params, &lhs, &rhs))
}

fn inflation_sides(variant: InflationVariant, case: &InflationCase) -> Result<(SymPoly, SymPoly)> {
    let ell = case.lambda.len();
    let poly = match variant {
        InflationVariant::Theta => theta(&case.rho, &case.lambda)?,
        InflationVariant::Eta => eta(&case.rho, case.r, &case.lambda, &alternating_signs(ell, case.r))?,
    };
    let shared = |s: &Symbol, degree: i64| -> SymPoly {
        if degree < 0 {
            return SymPoly::zero();
        }
        SymPoly::var(Symbol { kind: s.kind, label: SHARED, degree: degree as u32 })
    };
    let in_block = |s: &Symbol| {
        matches!(s.kind, SymbolKind::C | SymbolKind::D | SymbolKind::E)
            && (case.m as u32..=case.n as u32).contains(&s.label)
    };
    let rhs = poly.substitute(|s| in_block(s).then(|| shared(s, s.degree as i64)));
    let lhs = poly.substitute(|s| {
        if !in_block(s) {
            return None;
        }
        let mut v = shared(s, s.degree as i64);
        if s.label == case.m as u32 {
            for t in 1..=case.p {
                let a = Monomial::var(Symbol::root('a', t as u32));
                v += shared(s, s.degree as i64 - t as i64).mul_monomial(&a, &1.into());
            }
        }
        Some(v)
    });
    Ok((lhs, rhs))
}

/// A random case satisfying the hypotheses, with `ℓ <= 4` and small parts.
pub fn random_inflation_case(variant: InflationVariant, rng: &mut impl Rng) -> InflationCase {
    loop {
        let ell = rng.gen_range(2..=4usize);
        let r = match variant {
            InflationVariant::Theta => 0,
            InflationVariant::Eta => rng.gen_range(0..=ell - 2),
        };
        let m = rng.gen_range(r.max(1)..ell);
        let n = rng.gen_range(m + 1..=ell);
        let mut rho = Vec::with_capacity(ell);
        for j in 1..=ell {
            let v = if j <= r {
                j as i64 - 1
            } else if (m + 1..=n).contains(&j) {
                rho[m - 1]
            } else {
                rng.gen_range(0..j as i64)
            };
            rho.push(v);
        }
        // build μ = λ + ρ from the bottom, constant on m..=n
        let mut lambda = vec![0i64; ell];
        lambda[ell - 1] = rng.gen_range(0..=2);
        let mut ok = true;
        for i in (1..ell).rev() {
            let below = lambda[i] + rho[i];
            let mu = if (m..n).contains(&i) { below } else { below.max(lambda[i] + rho[i - 1]) + rng.gen_range(0..=2) };
            lambda[i - 1] = mu - rho[i - 1];
            if lambda[i - 1] < lambda[i] {
                ok = false;
                break;
            }
        }
        let p = rng.gen_range(1..=n - m);
        let case = InflationCase { rho, lambda, r, m, n, p };
        if ok && case.check_hypotheses(variant).is_ok() {
            return case;
        }
    }
}

/// `count` random instances from a seeded ChaCha8 stream.
pub fn inflation_family(variant: InflationVariant, count: usize, seed: u64) -> Result<CheckReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let reports = (0..count)
        .map(|_| check_inflation(variant, &random_inflation_case(variant, &mut rng)))
        .collect::<Result<Vec<_>>>()?;
    let name = match variant {
        InflationVariant::Theta => "inflation_theta",
        InflationVariant::Eta => "inflation_eta",
    };
    Ok(CheckReport::all(name, json!({ "instances": count, "seed": seed }), reports))
}

/// Special values where theta and eta reduce to something simpler.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Collapse {
    /// `ρ = 0`: `Θ = Δ`.
    RhoZero,
    /// `ρ_j = j - 1`: `Θ = Pf(m)`.
    FullRho,
    /// `Θ_z` at `z = 0` is `Θ`.
    ZZero,
    /// `H` with every `e` set to 0 and `d` read as `c` is `Θ`.
    EZero,
}

fn full_rho(len: usize) -> Vec<i64> {
    (0..len as i64).collect()
}

/// One collapse instance. `r` is only read by [`Collapse::EZero`].
pub fn check_collapse(kind: Collapse, rho: &[i64], lambda: &[i64], r: usize) -> Result<CheckReport> {
    let params = json!({ "kind": kind, "rho": rho, "lambda": lambda, "r": r });
    let (lhs, rhs) = match kind {
        Collapse::RhoZero => {
            if rho.iter().any(|&x| x != 0) {
                return Err(Error::Hypothesis("rho must be zero".into()));
            }
            (theta(rho, lambda)?, schur_delta(lambda, DeltaMethod::Determinant)?)
        }
        Collapse::FullRho => {
            if rho != full_rho(rho.len()) {
                return Err(Error::Hypothesis("rho must be (0, 1, ..., l-1)".into()));
            }
            (theta(rho, lambda)?, schur_pfaffian(PfVariant::C, lambda, None)?)
        }
        Collapse::ZZero => {
            let at_zero = theta_z(rho, lambda)?.substitute(|s| (s.kind == SymbolKind::Z).then(SymPoly::zero));
            (at_zero, theta(rho, lambda)?)
        }
        Collapse::EZero => {
            let h = eta(rho, r, lambda, &alternating_signs(lambda.len(), r))?;
            let as_c = h.substitute(|s| match s.kind {
                SymbolKind::E => Some(SymPoly::zero()),
                SymbolKind::D => Some(SymPoly::var(Symbol::c(s.label, s.degree))),
                _ => None,
            });
            (as_c, theta(rho, lambda)?)
        }
    };
    Ok(CheckReport::compare("collapse", params, &lhs, &rhs))
}

fn rho_strict(rho: &[i64], lambda: &[i64]) -> bool {
    check_rho_strict(rho, lambda).is_ok()
}

/// Exhaustive over `ℓ <= max_len`, `|λ| <= max_size` and, where `ρ` is free,
/// every `ρ` with the strictness condition.
pub fn collapse_family(kind: Collapse, max_len: usize, max_size: i64) -> Result<CheckReport> {
    let mut reports = Vec::new();
    for len in 1..=max_len {
        let rhos = match kind {
            Collapse::RhoZero => vec![vec![0; len]],
            Collapse::FullRho => vec![full_rho(len)],
            Collapse::ZZero | Collapse::EZero => rho_sequences(len),
        };
        for rho in &rhos {
            for lambda in partitions_padded(len, max_size) {
                if !rho_strict(rho, &lambda) {
                    continue;
                }
                if kind == Collapse::EZero {
                    let max_r = (0..len).take_while(|&j| rho[j] == j as i64).count();
                    for r in 0..=max_r {
                        reports.push(check_collapse(kind, rho, &lambda, r)?);
                    }
                } else {
                    reports.push(check_collapse(kind, rho, &lambda, 0)?);
                }
            }
        }
    }
    let name = match kind {
        Collapse::RhoZero => "collapse_rho_zero",
        Collapse::FullRho => "collapse_full_rho",
        Collapse::ZZero => "collapse_z_zero",
        Collapse::EZero => "collapse_e_zero",
    };
    Ok(CheckReport::all(name, json!({ "max_len": max_len, "max_size": max_size }), reports))
}

/// The determinant and the raising-operator construction of `Δ_λ` agree.
pub fn check_delta_methods(lambda: &[i64]) -> Result<CheckReport> {
    let det = schur_delta(lambda, DeltaMethod::Determinant)?;
    let raising = schur_delta(lambda, DeltaMethod::Raising)?;
    Ok(CheckReport::compare("delta_methods", json!({ "lambda": lambda }), &raising, &det))
}

pub fn delta_family(max_len: usize, max_size: i64) -> Result<CheckReport> {
    let reports = (1..=max_len)
        .flat_map(|len| partitions_padded(len, max_size))
        .map(|l| check_delta_methods(&l))
        .collect::<Result<Vec<_>>>()?;
    Ok(CheckReport::all("delta_methods", json!({ "max_len": max_len, "max_size": max_size }), reports))
}

/// For two rows, the Pfaffian of the deformed entries is the deformed theta
/// polynomial with full `ρ`.
pub fn check_cz_pfaffian(lambda: &[i64]) -> Result<CheckReport> {
    let rho = full_rho(lambda.len());
    let lhs = pfaffian(&crate::formulas::build_pf_matrix(PfVariant::Cz, lambda, None)?)?;
    let rhs = theta_z(&rho, lambda)?;
    Ok(CheckReport::compare("cz_pfaffian", json!({ "lambda": lambda }), &lhs, &rhs))
}
