//! Triples `(k, p, q)` (or `(r, p, q)` in type A) and the data derived from
//! them: the rank `r`, the sequences `ρ`, `μ`, `λ = μ - ρ`, and the map from
//! positions `1..=ℓ` to the entry that owns them.

mod perm;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use perm::{signed_perm_length, signed_permutation_c, SignedPermutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
        };
        f.write_str(s)
    }
}

/// Raw triple data. `first` is the rank tuple `r` for type A and `k` otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleInput {
    pub family: Family,
    pub first: Vec<i64>,
    pub p: Vec<i64>,
    pub q: Vec<i64>,
    pub d_parity: Option<u8>,
}

impl TripleInput {
    pub fn new(family: Family, first: Vec<i64>, p: Vec<i64>, q: Vec<i64>) -> Self {
        TripleInput { family, first, p, q, d_parity: None }
    }

    pub fn a(r: &[i64], p: &[i64], q: &[i64]) -> Self {
        TripleInput::new(Family::A, r.to_vec(), p.to_vec(), q.to_vec())
    }

    pub fn c(k: &[i64], p: &[i64], q: &[i64]) -> Self {
        TripleInput::new(Family::C, k.to_vec(), p.to_vec(), q.to_vec())
    }

    pub fn d(k: &[i64], p: &[i64], q: &[i64]) -> Self {
        TripleInput::new(Family::D, k.to_vec(), p.to_vec(), q.to_vec())
    }
}

/// Where a `±q` style exclusion was detected.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    Input,
    AfterInsertion,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stage::Input => f.write_str("in the input"),
            Stage::AfterInsertion => f.write_str("after insertion"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TripleError {
    #[error("empty triple")]
    Empty,
    #[error("tuples have different lengths ({0}, {1}, {2})")]
    Shape(usize, usize, usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("q = 0 is not allowed (entry {0})")]
    ZeroQ(usize),
    #[error("q = -1 is not allowed (entry {0})")]
    MinusOneQ(usize),
    #[error("both {q} and {neg} occur {stage}")]
    Clash { q: i64, neg: i64, stage: Stage },
    #[error("insertion of ({k}, {p}, {q}) before entry {before} impossible: needs q_(a-1) {rel} {bound}")]
    InsertionImpossible { k: i64, p: i64, q: i64, before: usize, rel: &'static str, bound: i64 },
    #[error("condition (3) fails at entry {j}: rho_{k} = {rho} < {bound}")]
    Condition3 { j: usize, k: i64, rho: i64, bound: i64 },
    #[error("condition (4) fails at position {position}: mu = {mu:?}")]
    Condition4 { position: usize, mu: Vec<i64> },
    #[error("condition (5) fails at position {position}: lambda = {lambda:?}")]
    Condition5 { position: usize, lambda: Vec<i64> },
    #[error("signed permutations are only defined for type C triples")]
    NotTypeC,
}

/// A validated triple together with its derived data.
///
/// `k`, `p`, `q` are the tuples after any insertion. Positions are 1-based in
/// the mathematical sense; the vectors are 0-based, so `rho[k - 1]` is `ρ_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalizedTriple {
    pub family: Family,
    pub k: Vec<i64>,
    pub p: Vec<i64>,
    pub q: Vec<i64>,
    /// Type A ranks; `None` for the other families.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ranks: Option<Vec<i64>>,
    /// 1-based entry index `a`; `None` in type A.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<usize>,
    pub r: usize,
    pub rho: Vec<i64>,
    pub mu: Vec<i64>,
    pub lambda: Vec<i64>,
    pub ell: usize,
    /// `clabel[k - 1]` is the minimal 1-based `i` with `k_i >= k`.
    pub clabel: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inserted: Option<[i64; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_parity: Option<u8>,
}

impl NormalizedTriple {
    pub fn size(&self) -> i64 {
        self.lambda.iter().sum()
    }

    /// Entries `(k_i, p_i, q_i)`, usable to rebuild the same triple.
    pub fn to_input(&self) -> TripleInput {
        let first = self.ranks.clone().unwrap_or_else(|| self.k.clone());
        TripleInput { family: self.family, first, p: self.p.clone(), q: self.q.clone(), d_parity: self.d_parity }
    }
}

/// Integers extended by `±∞`, for the boundary conventions `q_0 = +∞` and
/// `q_{s+1} = -∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ExtInt {
    NegInf,
    Fin(i64),
    PosInf,
}

impl ExtInt {
    fn plus(self, x: i64) -> ExtInt {
        match self {
            ExtInt::Fin(v) => ExtInt::Fin(v + x),
            other => other,
        }
    }
}

/// `q_i` for `0 <= i <= s + 1` (1-based), with the infinite sentinels.
fn q_ext(q: &[i64], i: usize) -> ExtInt {
    if i == 0 {
        ExtInt::PosInf
    } else if i > q.len() {
        ExtInt::NegInf
    } else {
        ExtInt::Fin(q[i - 1])
    }
}

/// `k_i` with `k_0 = 0`.
fn k_ext(k: &[i64], i: usize) -> i64 {
    if i == 0 {
        0
    } else {
        k[i - 1]
    }
}

fn precondition(msg: impl Into<String>) -> TripleError {
    TripleError::Precondition(msg.into())
}

fn check_shape(input: &TripleInput) -> Result<usize, TripleError> {
    let s = input.first.len();
    if input.p.len() != s || input.q.len() != s {
        return Err(TripleError::Shape(s, input.p.len(), input.q.len()));
    }
    if s == 0 {
        return Err(TripleError::Empty);
    }
    Ok(s)
}

fn strictly_increasing_positive(v: &[i64]) -> bool {
    v[0] > 0 && v.windows(2).all(|w| w[0] < w[1])
}

fn nonincreasing(v: &[i64]) -> bool {
    v.windows(2).all(|w| w[0] >= w[1])
}

fn clabel_for(k: &[i64]) -> Vec<usize> {
    let ell = *k.last().unwrap() as usize;
    let mut out = Vec::with_capacity(ell);
    let mut i = 0;
    for pos in 1..=ell as i64 {
        while k[i] < pos {
            i += 1;
        }
        out.push(i + 1);
    }
    out
}

/// Spreads per-entry values `v_i` over positions `k_{i-1} < k <= k_i`.
fn fill_by_entry(k: &[i64], values: &[i64]) -> Vec<i64> {
    clabel_for(k).into_iter().map(|i| values[i - 1]).collect()
}

/// Type A: `k_i = p_i - r_i`, `l_i = q_i - r_i`, and `λ` is the smallest
/// partition with `λ_{k_i} = l_i`.
pub fn build_type_a(input: &TripleInput) -> Result<NormalizedTriple, TripleError> {
    check_shape(input)?;
    let (r, p, q) = (&input.first, &input.p, &input.q);
    if r.iter().any(|&x| x < 0) {
        return Err(precondition("ranks r must be nonnegative"));
    }
    if p[0] <= 0 || p.windows(2).any(|w| w[0] > w[1]) {
        return Err(precondition("p must satisfy 0 < p_1 <= ... <= p_s"));
    }
    if *q.last().unwrap() <= 0 || !nonincreasing(q) {
        return Err(precondition("q must satisfy q_1 >= ... >= q_s > 0"));
    }
    let k: Vec<i64> = p.iter().zip(r).map(|(a, b)| a - b).collect();
    let l: Vec<i64> = q.iter().zip(r).map(|(a, b)| a - b).collect();
    if !strictly_increasing_positive(&k) {
        return Err(precondition("k = p - r must satisfy 0 < k_1 < ... < k_s"));
    }
    if *l.last().unwrap() < 0 || !nonincreasing(&l) {
        return Err(precondition("l = q - r must satisfy l_1 >= ... >= l_s >= 0"));
    }
    let lambda = fill_by_entry(&k, &l);
    let ell = lambda.len();
    Ok(NormalizedTriple {
        family: Family::A,
        clabel: clabel_for(&k),
        k,
        p: p.clone(),
        q: q.clone(),
        ranks: Some(r.clone()),
        a: None,
        r: 0,
        rho: vec![0; ell],
        mu: lambda.clone(),
        lambda,
        ell,
        inserted: None,
        d_parity: None,
    })
}

/// The rules in which types C (and B) and D differ.
#[derive(Clone, Copy)]
struct Rules {
    /// Type D shifts everything by one: `q = -1` plays the role of `q = 0`.
    d: bool,
}

impl Rules {
    /// The value separating the positive block `i < a` from the rest.
    fn threshold(self) -> i64 {
        if self.d {
            -1
        } else {
            0
        }
    }

    /// The forbidden partner of `q` (`-q` in type C, `-q - 1` in type D),
    /// for `q` in the positive block.
    fn partner(self, q: i64) -> i64 {
        if self.d {
            -q - 1
        } else {
            -q
        }
    }

    fn inserted_q(self, qa: i64) -> i64 {
        if self.d {
            -qa
        } else {
            -qa + 1
        }
    }

    fn mu_offset(self, positive_block: bool) -> i64 {
        match (self.d, positive_block) {
            (false, true) => -2,
            (false, false) => -1,
            (true, true) => -1,
            (true, false) => 0,
        }
    }
}

fn check_clash(q: &[i64], rules: Rules, stage: Stage) -> Result<(), TripleError> {
    let t = rules.threshold();
    for &x in q.iter().filter(|&&x| x > t) {
        let neg = rules.partner(x);
        if q.contains(&neg) {
            return Err(TripleError::Clash { q: x, neg, stage });
        }
    }
    Ok(())
}

/// 1-based `a` with `q_{a-1} > threshold > q_a`.
fn find_a(q: &[i64], rules: Rules) -> usize {
    q.iter().take_while(|&&x| x > rules.threshold()).count() + 1
}

/// Types B and C.
pub fn build_type_c(input: &TripleInput) -> Result<NormalizedTriple, TripleError> {
    build_cd(input, Rules { d: false })
}

/// Type D. `d_parity` is carried along untouched.
pub fn build_type_d(input: &TripleInput) -> Result<NormalizedTriple, TripleError> {
    build_cd(input, Rules { d: true })
}

/// Dispatches on the family.
pub fn build(input: &TripleInput) -> Result<NormalizedTriple, TripleError> {
    match input.family {
        Family::A => build_type_a(input),
        Family::B | Family::C => build_type_c(input),
        Family::D => build_type_d(input),
    }
}

fn build_cd(input: &TripleInput, rules: Rules) -> Result<NormalizedTriple, TripleError> {
    let s = check_shape(input)?;
    let (mut k, mut p, mut q) = (input.first.clone(), input.p.clone(), input.q.clone());
    if !strictly_increasing_positive(&k) {
        return Err(precondition("k must satisfy 0 < k_1 < ... < k_s"));
    }
    if !nonincreasing(&p) {
        return Err(precondition("p must be nonincreasing"));
    }
    if !nonincreasing(&q) {
        return Err(precondition("q must be nonincreasing"));
    }
    let (ps, qs) = (p[s - 1], q[s - 1]);
    if rules.d {
        if ps < 0 {
            return Err(precondition("p_s must be nonnegative"));
        }
        if let Some(i) = q.iter().position(|&x| x == -1) {
            return Err(TripleError::MinusOneQ(i + 1));
        }
        if qs < 0 && ps <= 0 {
            return Err(precondition("q_s < 0 requires p_s > 0"));
        }
    } else {
        if ps <= 0 {
            return Err(precondition("p_s must be positive"));
        }
        if let Some(i) = q.iter().position(|&x| x == 0) {
            return Err(TripleError::ZeroQ(i + 1));
        }
        if qs < 0 && ps <= 1 {
            return Err(precondition("q_s < 0 requires p_s > 1"));
        }
    }
    check_clash(&q, rules, Stage::Input)?;

    let mut a = find_a(&q, rules);
    let r_ext = std::cmp::max(ExtInt::Fin(k_ext(&k, a - 1)), q_ext(&q, a).plus(if a <= s { k[a - 1] } else { 0 }));
    let mut inserted = None;
    if let ExtInt::Fin(r) = r_ext {
        if r > k_ext(&k, a - 1) {
            let qa = q[a - 1];
            let new_q = rules.inserted_q(qa);
            let ok = if rules.d { q_ext(&q, a - 1) >= ExtInt::Fin(new_q) } else { q_ext(&q, a - 1) > ExtInt::Fin(-qa) };
            if !ok {
                return Err(TripleError::InsertionImpossible {
                    k: r,
                    p: p[a - 1],
                    q: new_q,
                    before: a,
                    rel: if rules.d { ">=" } else { ">" },
                    bound: -qa,
                });
            }
            let entry = [r, p[a - 1], new_q];
            k.insert(a - 1, entry[0]);
            p.insert(a - 1, entry[1]);
            q.insert(a - 1, entry[2]);
            inserted = Some(entry);
            check_clash(&q, rules, Stage::AfterInsertion)?;
            a += 1;
        }
    }
    let s = k.len();
    let r = k_ext(&k, a - 1) as usize;

    // ρ_{k_j} for j >= a is k_i with q_i > -q_j > q_{i+1} (type C) or
    // q_i >= -q_j > q_{i+1} + 1 (type D).
    let mut rho_entry = vec![0i64; s];
    for j in a..=s {
        let target = -q[j - 1];
        let i = (0..=s)
            .find(|&i| {
                let upper =
                    if rules.d { q_ext(&q, i) >= ExtInt::Fin(target) } else { q_ext(&q, i) > ExtInt::Fin(target) };
                let shift = if rules.d { 1 } else { 0 };
                upper && ExtInt::Fin(target) > q_ext(&q, i + 1).plus(shift)
            })
            .ok_or_else(|| precondition(format!("no separating index for q_{j} = {}", q[j - 1])))?;
        rho_entry[j - 1] = k_ext(&k, i);
    }
    let ell = k[s - 1] as usize;
    let clabel = clabel_for(&k);
    let rho: Vec<i64> =
        (1..=ell).map(|pos| if pos <= r { pos as i64 - 1 } else { rho_entry[clabel[pos - 1] - 1] }).collect();
    let mu_entry: Vec<i64> = (0..s).map(|i| p[i] + q[i] + k[i] + rules.mu_offset(i + 1 < a)).collect();
    let mu = fill_by_entry(&k, &mu_entry);
    let lambda: Vec<i64> = mu.iter().zip(&rho).map(|(m, r)| m - r).collect();

    for j in a..=s {
        let kj = k[j - 1];
        let rho_kj = rho[kj as usize - 1];
        if rho_kj < kj + q[j - 1] {
            return Err(TripleError::Condition3 { j, k: kj, rho: rho_kj, bound: kj + q[j - 1] });
        }
    }
    if let Some(pos) = (1..ell).find(|&i| mu[i - 1] < mu[i]) {
        return Err(TripleError::Condition4 { position: pos, mu });
    }
    if mu[ell - 1] < 0 {
        return Err(TripleError::Condition4 { position: ell, mu });
    }
    for i in 1..ell {
        let (x, y) = (lambda[i - 1], lambda[i]);
        let bad = if i < r || (i == r && !rules.d) { x <= y } else { x < y };
        if bad {
            return Err(TripleError::Condition5 { position: i, lambda });
        }
    }
    if lambda[ell - 1] < 0 {
        return Err(TripleError::Condition5 { position: ell, lambda });
    }

    Ok(NormalizedTriple {
        family: input.family,
        k,
        p,
        q,
        ranks: None,
        a: Some(a),
        r,
        rho,
        mu,
        lambda,
        ell,
        clabel,
        inserted,
        d_parity: input.d_parity,
    })
}

/// All inputs of the given family with `s <= max_s`, `k_s <= max_k` (or
/// `p_s <= max_k` for type A), entries of `p` in `lo_p..=bound` and entries
/// of `q` in `-bound..=bound`, respecting only the monotonicity of each tuple.
pub fn enumerate_inputs(family: Family, max_s: usize, max_k: i64, bound: i64) -> Vec<TripleInput> {
    let mut out = Vec::new();
    for s in 1..=max_s {
        let firsts = match family {
            Family::A => monotone_tuples(s, 0, bound, false),
            _ => strict_tuples(s, 1, max_k),
        };
        let ps = match family {
            Family::A => monotone_tuples(s, 1, max_k, false),
            Family::D => monotone_tuples(s, 0, bound, true),
            _ => monotone_tuples(s, 1, bound, true),
        };
        let qs = match family {
            Family::A => monotone_tuples(s, 1, bound, true),
            _ => monotone_tuples(s, -bound, bound, true),
        };
        for f in &firsts {
            for p in &ps {
                for q in &qs {
                    out.push(TripleInput::new(family, f.clone(), p.clone(), q.clone()));
                }
            }
        }
    }
    out
}

fn strict_tuples(s: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    if s == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in lo..=hi {
        for mut rest in strict_tuples(s - 1, first + 1, hi) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn monotone_tuples(s: usize, lo: i64, hi: i64, decreasing: bool) -> Vec<Vec<i64>> {
    if s == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in lo..=hi {
        let tails =
            if decreasing { monotone_tuples(s - 1, lo, first, true) } else { monotone_tuples(s - 1, first, hi, false) };
        for mut rest in tails {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}
