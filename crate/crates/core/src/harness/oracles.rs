//! Specializations of the abstract formulas checked against polynomials
//! computed by unrelated means.

use serde_json::json;

use super::{partitions_padded, strict_partitions, CheckReport};
use crate::error::Result;
use crate::formulas::{schur_delta, theta, DeltaMethod};
use crate::specialize::{
    h_series, q_series, qfunction_oracle, schur_oracle, specialize_labels, ChernAssignment, EntryClasses,
};

fn labels(len: usize) -> Vec<usize> {
    (1..=len).collect()
}

/// `Δ_λ` with every `c(k)` replaced by `∏ 1/(1 - x_i)` equals the tableau
/// sum for `s_λ(x_1..x_m)`.
pub fn check_jacobi_trudi(lambda: &[i64], m: u32) -> Result<CheckReport> {
    let order = (lambda.first().copied().unwrap_or(0).max(0) as usize) + lambda.len();
    let assign = ChernAssignment::uniform(lambda.len(), EntryClasses::Chern(h_series(m, order)?))?;
    let lhs = specialize_labels(&schur_delta(lambda, DeltaMethod::Determinant)?, &labels(lambda.len()), &assign)?;
    let rhs = schur_oracle(lambda, m);
    Ok(CheckReport::compare("jacobi_trudi", json!({ "lambda": lambda, "m": m }), &lhs, &rhs))
}

/// `Θ_λ` with `ρ_j = j - 1` and every `c(k)` replaced by
/// `∏ (1 + x_i)/(1 - x_i)` equals `Q_λ(x_1..x_m)`.
pub fn check_q_collapse(lambda: &[i64], m: u32) -> Result<CheckReport> {
    let rho: Vec<i64> = (0..lambda.len() as i64).collect();
    let order = lambda.iter().map(|&p| p.max(0) as usize).sum::<usize>() + 1;
    let assign = ChernAssignment::uniform(lambda.len(), EntryClasses::Chern(q_series(m, order)?))?;
    let lhs = specialize_labels(&theta(&rho, lambda)?, &labels(lambda.len()), &assign)?;
    let rhs = qfunction_oracle(lambda, m)?;
    Ok(CheckReport::compare("q_collapse", json!({ "lambda": lambda, "m": m }), &lhs, &rhs))
}

pub fn jacobi_trudi_family(max_len: usize, max_size: i64, max_vars: u32) -> Result<CheckReport> {
    let mut reports = Vec::new();
    for lambda in partitions_padded(max_len, max_size) {
        for m in 1..=max_vars {
            reports.push(check_jacobi_trudi(&lambda, m)?);
        }
    }
    let params = json!({ "max_len": max_len, "max_size": max_size, "max_vars": max_vars });
    Ok(CheckReport::all("jacobi_trudi", params, reports))
}

pub fn q_family(max_size: i64, max_vars: u32) -> Result<CheckReport> {
    let mut reports = Vec::new();
    for len in 1.. {
        let parts = strict_partitions(len, max_size);
        if parts.is_empty() {
            break;
        }
        for lambda in parts {
            for m in 1..=max_vars {
                reports.push(check_q_collapse(&lambda, m)?);
            }
        }
    }
    Ok(CheckReport::all("q_collapse", json!({ "max_size": max_size, "max_vars": max_vars }), reports))
}
