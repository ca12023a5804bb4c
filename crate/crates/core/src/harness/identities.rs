//! Chern-root identities: the elementary identities for `c(E - L)` and
//! `c(E - F/F')`, and the dominant-case products against the operator
//! formulas.

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::CheckReport;
use crate::error::{Error, Result};
use crate::formulas::{schur_delta, theta, DeltaMethod};
use crate::specialize::{chern_series, specialize_labels, ChernAssignment, EntryClasses, VirtualBundle};
use crate::symbolic::{Series, SymPoly, Symbol};

fn root(family: char, i: usize) -> SymPoly {
    SymPoly::var(Symbol::root(family, i as u32))
}

fn roots(family: char, range: impl IntoIterator<Item = usize>) -> Vec<SymPoly> {
    range.into_iter().map(|i| root(family, i)).collect()
}

fn coeff(s: &Series, d: usize) -> SymPoly {
    s.coeff(d).cloned().unwrap_or_else(SymPoly::zero)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum IntroIdentity {
    /// `c_e(E - L) = c_e(E ⊗ L*)`.
    TopClassTwist,
    /// `c_1(L*)^a c_b(E - L) = c_{a+b}(E - L)` for `b >= e`.
    ShiftAboveRank,
    /// `c(E - F/F') = c(E - F) c(F')`.
    Quotient,
}

/// One of the identities for every rank up to `max_rank` and every degree up
/// to `order`. `E` has roots `u_i`, `L` has root `l`, `F` has roots `w_i`
/// with `F'` spanned by the first ones.
pub fn check_intro_identity(which: IntroIdentity, max_rank: usize, order: usize) -> Result<CheckReport> {
    let l = root('l', 1);
    let mut reports = Vec::new();
    for e in 1..=max_rank {
        let u = roots('u', 1..=e);
        match which {
            IntroIdentity::TopClassTwist => {
                let lhs = coeff(&chern_series(&VirtualBundle::new(u.clone(), vec![l.clone()]), e)?, e);
                let rhs = u.iter().fold(SymPoly::one(), |acc, ui| &acc * &(ui - &l));
                reports.push(CheckReport::compare("intro_a", json!({ "e": e }), &lhs, &rhs));
            }
            IntroIdentity::ShiftAboveRank => {
                let c = chern_series(&VirtualBundle::new(u.clone(), vec![l.clone()]), order)?;
                for b in e..=order {
                    for a in 0..=order - b {
                        let lhs = &(-&l).pow(a as u32) * &coeff(&c, b);
                        let rhs = coeff(&c, a + b);
                        reports.push(CheckReport::compare("intro_b", json!({ "e": e, "a": a, "b": b }), &lhs, &rhs));
                    }
                }
            }
            IntroIdentity::Quotient => {
                for f in 1..=max_rank {
                    for sub in 0..=f {
                        let w = roots('w', 1..=f);
                        let quotient = VirtualBundle::new(u.clone(), w[sub..].to_vec());
                        let lhs = chern_series(&quotient, order)?;
                        let diff = chern_series(&VirtualBundle::new(u.clone(), w.clone()), order)?;
                        let rhs = diff.product(&chern_series(&VirtualBundle::new(w[..sub].to_vec(), vec![]), order)?);
                        let params = json!({ "e": e, "f": f, "sub": sub });
                        reports.push(CheckReport::all(
                            "intro_c",
                            params,
                            (0..=order).map(|d| {
                                CheckReport::compare(
                                    "intro_c",
                                    json!({ "degree": d }),
                                    &coeff(&lhs, d),
                                    &coeff(&rhs, d),
                                )
                            }),
                        ));
                    }
                }
            }
        }
    }
    let name = match which {
        IntroIdentity::TopClassTwist => "intro_a",
        IntroIdentity::ShiftAboveRank => "intro_b",
        IntroIdentity::Quotient => "intro_c",
    };
    Ok(CheckReport::all(name, json!({ "max_rank": max_rank, "order": order }), reports))
}

/// All three identities in one report.
pub fn check_intro_identities(max_rank: usize, order: usize) -> Result<CheckReport> {
    let reports = intro_family(max_rank, order)?;
    Ok(CheckReport::all("intro_identities", json!({ "max_rank": max_rank, "order": order }), reports))
}

pub fn intro_family(max_rank: usize, order: usize) -> Result<Vec<CheckReport>> {
    [IntroIdentity::TopClassTwist, IntroIdentity::ShiftAboveRank, IntroIdentity::Quotient]
        .into_iter()
        .map(|w| check_intro_identity(w, max_rank, order))
        .collect()
}

/// A dominant configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum DominantParams {
    /// `E_1 ⊂ ... ⊂ E_s` with `E_j/E_{j-1}` of root `x_j`, and quotients
    /// `F_q` with roots `y_1..y_q`. `q` is nonincreasing and positive.
    A { q: Vec<i64> },
    /// Symplectic `V` with roots `±v_1..±v_n` and isotropic flag
    /// `D_j/D_{j-1}` of root `v_j`. `q` is strictly decreasing with no pair
    /// `q_i = -q_j`. For `q > 0`, `F_q` has roots `v_1..v_{n+1-q}`. For
    /// `q < 0` it is the perpendicular of the span of `v_1..v_{n+q}`, with
    /// roots `v_1..v_n, -v_{n+q+1}..-v_n`.
    C { n: usize, q: Vec<i64> },
}

/// Degree-`d` part of `c · ∏ num / ∏ den`, with `num`, `den` lists of roots.
fn bracket(c: &VirtualBundle, num: Vec<SymPoly>, den: Vec<SymPoly>, d: usize) -> Result<SymPoly> {
    let mut plus = c.plus.clone();
    plus.extend(num);
    let mut minus = c.minus.clone();
    minus.extend(den);
    Ok(coeff(&chern_series(&VirtualBundle::new(plus, minus), d)?, d))
}

/// The product of single-step classes against the raising-operator formula,
/// both expressed in the roots of the model.
pub fn check_dominant_product(params: &DominantParams) -> Result<CheckReport> {
    match params {
        DominantParams::A { q } => dominant_a(q),
        DominantParams::C { n, q } => dominant_c(*n, q),
    }
}

fn dominant_a(q: &[i64]) -> Result<CheckReport> {
    if q.is_empty() || q.iter().any(|&x| x <= 0) || q.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::Hypothesis(format!("q = {q:?} must be positive and nonincreasing")));
    }
    let s = q.len();
    let x = |j: usize| root('x', j);
    let f = |qj: i64| roots('y', 1..=qj as usize);
    let mut lhs = SymPoly::one();
    for (j, &qj) in q.iter().enumerate() {
        // c_q(F_q - E_j/E_{j-1})
        lhs = &lhs * &bracket(&VirtualBundle::new(f(qj), vec![x(j + 1)]), vec![], vec![], qj as usize)?;
    }
    let order = q.iter().sum::<i64>() as usize;
    let mut assign = ChernAssignment::new();
    for (j, &qj) in q.iter().enumerate() {
        let vb = VirtualBundle::new(f(qj), (1..=j + 1).map(x).collect());
        assign.insert(j + 1, EntryClasses::Chern(chern_series(&vb, order)?))?;
    }
    let labels: Vec<usize> = (1..=s).collect();
    let rhs = specialize_labels(&schur_delta(q, DeltaMethod::Determinant)?, &labels, &assign)?;
    Ok(CheckReport::compare("dominant_a", json!({ "q": q }), &lhs, &rhs))
}

/// `ρ` and `λ` of the dominant type-C configuration.
fn dominant_c_data(n: usize, q: &[i64]) -> Result<(Vec<i64>, Vec<i64>)> {
    let bad = || Error::Hypothesis(format!("q = {q:?} is not a dominant configuration for n = {n}"));
    let n_i = n as i64;
    if q.is_empty()
        || q.windows(2).any(|w| w[0] <= w[1])
        || q.iter().any(|&x| x == 0 || x.abs() > n_i)
        || q.iter().any(|&x| x > 0 && q.contains(&-x))
    {
        return Err(bad());
    }
    let mut rho = Vec::new();
    let mut lambda = Vec::new();
    for (idx, &qj) in q.iter().enumerate() {
        let j = idx as i64 + 1;
        if qj > 0 {
            rho.push(j - 1);
            lambda.push(qj + n_i - j);
        } else {
            let r = q.iter().take_while(|&&qi| qi > -qj).count() as i64;
            rho.push(r);
            lambda.push(n_i + qj - r);
        }
    }
    // D_j must fit inside F_{q_j}
    for (idx, &qj) in q.iter().enumerate() {
        let rank = if qj > 0 { n_i + 1 - qj } else { n_i - qj };
        if rank < idx as i64 + 1 {
            return Err(Error::InfeasibleRootModel(format!("D_{} does not fit in F_{qj}", idx + 1)));
        }
    }
    if lambda.iter().any(|&l| l < 0) {
        return Err(Error::InfeasibleRootModel(format!("negative degree in {lambda:?}")));
    }
    Ok((rho, lambda))
}

fn dominant_c(n: usize, q: &[i64]) -> Result<CheckReport> {
    let (rho, lambda) = dominant_c_data(n, q)?;
    let v = |i: usize| root('v', i);
    let t = |i: usize| -v(i);
    let bundle = |j: usize, qj: i64| {
        let mut plus: Vec<SymPoly> = (1..=n).map(v).collect();
        plus.extend((1..=n).map(t));
        let mut minus: Vec<SymPoly> = (1..=j).map(v).collect();
        if qj > 0 {
            minus.extend((1..=n + 1 - qj as usize).map(v));
        } else {
            // the complement of (F^⊥)* where F^⊥ has roots v_1..v_{n+q}
            minus.extend((1..=n).map(v));
            minus.extend(((n as i64 + qj + 1) as usize..=n).map(t));
        }
        VirtualBundle::new(plus, minus)
    };
    let mut lhs = SymPoly::one();
    for (idx, &qj) in q.iter().enumerate() {
        let j = idx + 1;
        let num = (1..j).map(|i| -t(i)).collect();
        let den = (1..=rho[idx] as usize).map(t).collect();
        lhs = &lhs * &bracket(&bundle(j, qj), num, den, lambda[idx] as usize)?;
    }
    let order = lambda.iter().sum::<i64>() as usize;
    let mut assign = ChernAssignment::new();
    for (idx, &qj) in q.iter().enumerate() {
        assign.insert(idx + 1, EntryClasses::Chern(chern_series(&bundle(idx + 1, qj), order)?))?;
    }
    let labels: Vec<usize> = (1..=q.len()).collect();
    let rhs = specialize_labels(&theta(&rho, &lambda)?, &labels, &assign)?;
    let params = json!({ "n": n, "q": q, "rho": rho, "lambda": lambda });
    Ok(CheckReport::compare("dominant_c", params, &lhs, &rhs))
}

/// Nonincreasing positive `q` with at most `max_s` entries, each at most 4.
pub fn dominant_family_a(max_s: usize) -> Result<CheckReport> {
    let mut seqs: Vec<Vec<i64>> = vec![vec![]];
    let mut reports = Vec::new();
    for _ in 0..max_s {
        seqs = seqs
            .into_iter()
            .flat_map(|v| {
                let cap = v.last().copied().unwrap_or(4);
                (1..=cap).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
        for q in &seqs {
            reports.push(dominant_a(q)?);
        }
    }
    Ok(CheckReport::all("dominant_a", json!({ "max_s": max_s, "max_q": 4 }), reports))
}

/// Every feasible dominant configuration with `s <= max_s` and
/// `n <= max_n`.
pub fn dominant_family_c(max_s: usize, max_n: usize) -> Result<CheckReport> {
    let mut reports = Vec::new();
    for n in 1..=max_n {
        let n_i = n as i64;
        let values: Vec<i64> = (-n_i..=n_i).rev().filter(|&x| x != 0).collect();
        let mut seqs: Vec<Vec<i64>> = vec![vec![]];
        for _ in 0..max_s {
            seqs = seqs
                .into_iter()
                .flat_map(|v| {
                    let last = v.last().copied();
                    values
                        .iter()
                        .filter(move |&&x| last.is_none_or(|l| x < l))
                        .map(move |&x| {
                            let mut w = v.clone();
                            w.push(x);
                            w
                        })
                        .collect::<Vec<_>>()
                })
                .collect();
            for q in &seqs {
                match dominant_c(n, q) {
                    Ok(r) => reports.push(r),
                    Err(Error::InfeasibleRootModel(_) | Error::Hypothesis(_)) => {}
                    Err(e) => return Err(e),
                }
            }
        }
    }
    Ok(CheckReport::all("dominant_c", json!({ "max_s": max_s, "max_n": max_n }), reports))
}
