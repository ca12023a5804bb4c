//! Machine checks of the identities the formulas rest on.
//!
//! Every check returns a [`CheckReport`]; a failing report carries both
//! sides of the identity. Hypothesis violations in the inputs are errors,
//! never failed checks.

mod identities;
mod oracles;
mod pfaffians;
mod raising;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::Result;
use crate::symbolic::SymPoly;

pub use identities::{
    check_dominant_product, check_intro_identities, check_intro_identity, dominant_family_a, dominant_family_c,
    intro_family, DominantParams, IntroIdentity,
};
pub use oracles::{check_jacobi_trudi, check_q_collapse, jacobi_trudi_family, q_family};
pub use pfaffians::{check_cubic_core, check_idempotent_pfaffian, check_schur_pfaffian, check_tanner};
pub use raising::{
    check_collapse, check_cz_pfaffian, check_delta_methods, check_inflation, check_raising_vs_pfaffian,
    collapse_family, delta_family, inflation_family, pf_c_family, pf_d_family, random_inflation_case, Collapse,
    InflationCase, InflationVariant, PfCheckVariant,
};

/// Both sides of a failed identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub parameters: Value,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl CheckReport {
    pub fn pass(name: &str, parameters: Value) -> Self {
        CheckReport { name: name.into(), parameters, passed: true, witness: None }
    }

    pub fn fail(name: &str, parameters: Value, lhs: String, rhs: String) -> Self {
        CheckReport { name: name.into(), parameters, passed: false, witness: Some(Witness { lhs, rhs }) }
    }

    /// Passes iff the two polynomials are equal.
    pub fn compare(name: &str, parameters: Value, lhs: &SymPoly, rhs: &SymPoly) -> Self {
        if lhs == rhs {
            Self::pass(name, parameters)
        } else {
            Self::fail(name, parameters, lhs.to_string(), rhs.to_string())
        }
    }

    /// Folds a family of reports into one; the first failure is kept.
    pub fn all(name: &str, parameters: Value, reports: impl IntoIterator<Item = CheckReport>) -> Self {
        let mut count = 0;
        for r in reports {
            count += 1;
            if !r.passed {
                let mut params = parameters;
                params["failed_instance"] = r.parameters;
                return CheckReport { name: name.into(), parameters: params, passed: false, witness: r.witness };
            }
        }
        let mut params = parameters;
        params["instances"] = json!(count);
        Self::pass(name, params)
    }
}

/// Partitions with at most `len` parts and size at most `max_size`, padded
/// with zeros to exactly `len` parts.
pub fn partitions_padded(len: usize, max_size: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn go(len: usize, left: i64, cap: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for part in (0..=cap.min(left)).rev() {
            cur.push(part);
            go(len, left - part, part, cur, out);
            cur.pop();
        }
    }
    go(len, max_size, max_size, &mut cur, &mut out);
    out
}

/// Strict partitions with exactly `len` positive parts and size at most
/// `max_size`.
pub fn strict_partitions(len: usize, max_size: i64) -> Vec<Vec<i64>> {
    partitions_padded(len, max_size)
        .into_iter()
        .filter(|p| p.iter().all(|&x| x > 0) && p.windows(2).all(|w| w[0] > w[1]))
        .collect()
}

/// Sequences `ρ` of length `len` with `0 <= ρ_j < j`.
pub fn rho_sequences(len: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for j in 0..len {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (0..=j as i64).map(move |r| {
                    let mut w = v.clone();
                    w.push(r);
                    w
                })
            })
            .collect();
    }
    out
}

/// Limits for the suites. Missing fields take the defaults.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Bounds {
    pub schur_pfaffian_max_n: usize,
    pub idempotent_max_n: usize,
    pub tanner_alphabet: usize,
    pub pf_c_max_len: usize,
    pub pf_c_max_size: i64,
    pub pf_d_max_len: usize,
    pub pf_d_max_size: i64,
    pub inflation_instances: usize,
    pub inflation_seed: u64,
    pub collapse_max_len: usize,
    pub collapse_max_size: i64,
    pub delta_max_len: usize,
    pub delta_max_size: i64,
    pub cz_max_size: i64,
    pub jacobi_trudi_max_size: i64,
    pub jacobi_trudi_max_len: usize,
    pub q_max_size: i64,
    pub max_vars: u32,
    pub intro_max_rank: usize,
    pub intro_order: usize,
    pub dominant_max_s: usize,
    pub dominant_max_n: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            schur_pfaffian_max_n: 6,
            idempotent_max_n: 4,
            tanner_alphabet: 6,
            pf_c_max_len: 5,
            pf_c_max_size: 12,
            pf_d_max_len: 3,
            pf_d_max_size: 8,
            inflation_instances: 100,
            inflation_seed: 7,
            collapse_max_len: 4,
            collapse_max_size: 10,
            delta_max_len: 4,
            delta_max_size: 10,
            cz_max_size: 6,
            jacobi_trudi_max_size: 8,
            jacobi_trudi_max_len: 3,
            q_max_size: 6,
            max_vars: 3,
            intro_max_rank: 4,
            intro_order: 10,
            dominant_max_s: 3,
            dominant_max_n: 4,
        }
    }
}

/// A named group of checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Suite {
    /// Pfaffian identities, raising operators against Pfaffians, inflation.
    /// Named `appendixA` on the wire.
    #[serde(rename = "appendixA")]
    Pfaffian,
    /// Oracle cross-checks, collapse properties, Chern-root identities.
    Oracles,
    All,
}

impl std::str::FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "appendixA" => Ok(Suite::Pfaffian),
            "oracles" => Ok(Suite::Oracles),
            "all" => Ok(Suite::All),
            _ => Err(format!("unknown suite {s:?}; expected appendixA, oracles or all")),
        }
    }
}

/// Runs a suite. Each entry aggregates one family of instances.
pub fn run_suite(suite: Suite, b: &Bounds) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    if matches!(suite, Suite::Pfaffian | Suite::All) {
        out.extend(pfaffian_checks(b)?);
    }
    if matches!(suite, Suite::Oracles | Suite::All) {
        out.extend(oracle_checks(b)?);
    }
    Ok(out)
}

fn pfaffian_checks(b: &Bounds) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    out.push(CheckReport::all(
        "schur_pfaffian",
        json!({ "n": format!("2..={}", b.schur_pfaffian_max_n) }),
        (2..=b.schur_pfaffian_max_n).map(check_schur_pfaffian),
    ));
    out.push(CheckReport::all(
        "idempotent_pfaffian",
        json!({ "n": format!("2..={}", b.idempotent_max_n) }),
        (2..=b.idempotent_max_n).map(check_idempotent_pfaffian),
    ));
    out.push(check_cubic_core());
    out.push(check_tanner(b.tanner_alphabet));
    out.push(raising::pf_c_family(b.pf_c_max_len, b.pf_c_max_size)?);
    out.push(raising::pf_d_family(b.pf_d_max_len, b.pf_d_max_size)?);
    for variant in [InflationVariant::Theta, InflationVariant::Eta] {
        out.push(raising::inflation_family(variant, b.inflation_instances, b.inflation_seed)?);
    }
    out.push(CheckReport::all(
        "cz_pfaffian",
        json!({ "len": 2, "max_size": b.cz_max_size }),
        strict_or_zero_pairs(b.cz_max_size).iter().map(|l| check_cz_pfaffian(l)).collect::<Result<Vec<_>>>()?,
    ));
    Ok(out)
}

/// `(a, b)` with `a > b >= 0` and `a + b <= max_size`.
fn strict_or_zero_pairs(max_size: i64) -> Vec<Vec<i64>> {
    partitions_padded(2, max_size).into_iter().filter(|p| p[0] > p[1]).collect()
}

fn oracle_checks(b: &Bounds) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    out.push(raising::delta_family(b.delta_max_len, b.delta_max_size)?);
    for c in [Collapse::RhoZero, Collapse::FullRho, Collapse::ZZero, Collapse::EZero] {
        out.push(raising::collapse_family(c, b.collapse_max_len, b.collapse_max_size)?);
    }
    out.push(oracles::jacobi_trudi_family(b.jacobi_trudi_max_len, b.jacobi_trudi_max_size, b.max_vars)?);
    out.push(oracles::q_family(b.q_max_size, b.max_vars)?);
    out.extend(identities::intro_family(b.intro_max_rank, b.intro_order)?);
    out.push(identities::dominant_family_a(b.dominant_max_s)?);
    out.push(identities::dominant_family_c(b.dominant_max_s, b.dominant_max_n)?);
    Ok(out)
}
