//! Pfaffian identities over the fraction field in the variables `T_i`,
//! including the idempotent deformation by `δ_i ∈ {0, 1}`.

use num_traits::One;
use serde_json::json;

use super::CheckReport;
use crate::pfaffian::{pfaffian, PfMatrix};
use crate::symbolic::{Frac, SymPoly, Symbol};

fn t(i: usize) -> SymPoly {
    SymPoly::var(Symbol::root('T', i as u32))
}

fn frac_string(f: &Frac) -> String {
    let den: Vec<String> = f.den_factors().iter().map(|d| format!("({d})")).collect();
    if den.is_empty() {
        f.num().to_string()
    } else {
        format!("({}) / {}", f.num(), den.join(""))
    }
}

fn compare(name: &str, params: serde_json::Value, lhs: &Frac, rhs: &Frac) -> CheckReport {
    if lhs.equals(rhs) {
        CheckReport::pass(name, params)
    } else {
        CheckReport::fail(name, params, frac_string(lhs), frac_string(rhs))
    }
}

/// Numerator and denominator of `H_xy = (T_y - δ_xδ_y T_x)/(T_y + δ_xδ_y T_x)`.
/// When `δ_xδ_y = 0` both are `T_y`.
fn h_parts(x: usize, y: usize, delta: &dyn Fn(usize) -> bool) -> (SymPoly, SymPoly) {
    if delta(x) && delta(y) {
        (&t(y) - &t(x), &t(y) + &t(x))
    } else {
        (t(y), t(y))
    }
}

fn h(x: usize, y: usize, delta: &dyn Fn(usize) -> bool) -> Frac {
    if !(delta(x) && delta(y)) {
        return Frac::one();
    }
    let (n, d) = h_parts(x, y, delta);
    Frac::new(n, vec![d]).expect("T_y + T_x is nonzero")
}

fn eps(delta: &dyn Fn(usize) -> bool, i: usize) -> i64 {
    if delta(i) {
        1
    } else {
        -1
    }
}

fn eps_pow(delta: &dyn Fn(usize) -> bool, i: usize, m: usize) -> i64 {
    eps(delta, i).pow(m as u32)
}

/// `∏_{i<j} (T_j - T_i)/(T_j + T_i) = Pf((T_j - T_i)/(T_j + T_i))`, with a
/// zeroth row of ones for odd `n`.
pub fn check_schur_pfaffian(n: usize) -> CheckReport {
    let all = |_: usize| true;
    let mut lhs = Frac::one();
    for j in 1..=n {
        for i in 1..j {
            lhs = &lhs * &h(i, j, &all);
        }
    }
    let m = PfMatrix::from_fn(n, |i, j| if i == 0 { Frac::one() } else { h(i, j, &all) });
    let rhs = pfaffian(&m).expect("every entry is set");
    compare("schur_pfaffian", json!({ "n": n }), &lhs, &rhs)
}

/// `∏ H_ij = Pf(a_ij)` with `a_ij = ε_i^{n-i+1} ε_j^{n-j} H_ij` and
/// `a_0j = ε_j^{n-j}`, for every `δ ∈ {0,1}^n`.
pub fn check_idempotent_pfaffian(n: usize) -> CheckReport {
    let reports = (0..1u32 << n).map(|bits| {
        let delta = move |i: usize| bits >> (i - 1) & 1 == 1;
        let mut lhs = Frac::one();
        for j in 1..=n {
            for i in 1..j {
                lhs = &lhs * &h(i, j, &delta);
            }
        }
        let m = PfMatrix::from_fn(n, |i, j| {
            if i == 0 {
                Frac::one().scale(eps_pow(&delta, j, n - j))
            } else {
                h(i, j, &delta).scale(eps_pow(&delta, i, n - i + 1) * eps_pow(&delta, j, n - j))
            }
        });
        let rhs = pfaffian(&m).expect("every entry is set");
        let d: Vec<u32> = (1..=n).map(|i| delta(i) as u32).collect();
        compare("idempotent_pfaffian", json!({ "n": n, "delta": d }), &lhs, &rhs)
    });
    CheckReport::all("idempotent_pfaffian", json!({ "n": n }), reports)
}

/// The three-variable case with denominators cleared:
/// `H_xy H_xz H_yz = H_yz - ε_xε_y H_xz + ε_xε_y H_xy` becomes an identity
/// between cubic polynomials in `T_x, T_y, T_z`.
pub fn check_cubic_core() -> CheckReport {
    let reports = (0..8u32).map(|bits| {
        let delta = move |i: usize| bits >> (i - 1) & 1 == 1;
        let (nxy, dxy) = h_parts(1, 2, &delta);
        let (nxz, dxz) = h_parts(1, 3, &delta);
        let (nyz, dyz) = h_parts(2, 3, &delta);
        let ee = SymPoly::constant(eps(&delta, 1) * eps(&delta, 2));
        let lhs = &(&nxy * &nxz) * &nyz;
        let rhs = &(&(&(&nyz * &dxy) * &dxz) - &(&(&(&ee * &nxz) * &dxy) * &dyz)) + &(&(&(&ee * &nxy) * &dxz) * &dyz);
        let d: Vec<u32> = (1..=3).map(|i| delta(i) as u32).collect();
        CheckReport::compare("cubic_core", json!({ "delta": d }), &lhs, &rhs)
    });
    CheckReport::all("cubic_core", json!({}), reports)
}

/// `f[xy] = ε_x H_xy` for `x < y`, `f[0y] = 1`, antisymmetric, zero on the
/// diagonal.
fn f_pair(x: usize, y: usize, delta: &dyn Fn(usize) -> bool) -> Frac {
    use std::cmp::Ordering;
    match x.cmp(&y) {
        Ordering::Equal => Frac::from_poly(SymPoly::zero()),
        Ordering::Greater => -f_pair(y, x, delta),
        Ordering::Less if x == 0 => Frac::one(),
        Ordering::Less => h(x, y, delta).scale(eps(delta, x)),
    }
}

/// `f[α]`: the Pfaffian of `(f[x_i x_j])`, with a leading `0` for odd length.
fn f_word(word: &[usize], delta: &dyn Fn(usize) -> bool) -> Frac {
    let mut w = word.to_vec();
    if w.len() % 2 == 1 {
        w.insert(0, 0);
    }
    let m = PfMatrix::from_fn(w.len(), |i, j| f_pair(w[i - 1], w[j - 1], delta));
    pfaffian(&m).expect("every entry is set")
}

/// `f[α] f[αwxyz] = f[αwx] f[αyz] - f[αwy] f[αxz] + f[αwz] f[αxy]` for `α`
/// of length 0 and 2, over increasing letters from `1..=alphabet_size`.
pub fn check_tanner(alphabet_size: usize) -> CheckReport {
    let mut reports = Vec::new();
    for size in [4, 6] {
        for letters in subsets(alphabet_size, size) {
            let (alpha, rest) = letters.split_at(size - 4);
            let cat = |tail: &[usize]| -> Vec<usize> { alpha.iter().chain(tail).copied().collect() };
            let (w, x, y, z) = (rest[0], rest[1], rest[2], rest[3]);
            for bits in 0..1u32 << size {
                let delta = |i: usize| {
                    let pos = letters.iter().position(|&l| l == i).expect("letter in the word");
                    bits >> pos & 1 == 1
                };
                let f = |tail: &[usize]| f_word(&cat(tail), &delta);
                let lhs = &f(&[]) * &f(&[w, x, y, z]);
                let rhs = &(&(&f(&[w, x]) * &f(&[y, z])) - &(&f(&[w, y]) * &f(&[x, z]))) + &(&f(&[w, z]) * &f(&[x, y]));
                let d: Vec<u32> = (0..size).map(|p| bits >> p & 1).collect();
                reports.push(compare("tanner", json!({ "alpha": alpha, "wxyz": rest, "delta": d }), &lhs, &rhs));
            }
        }
    }
    CheckReport::all("tanner", json!({ "alphabet_size": alphabet_size }), reports)
}

/// Increasing `k`-subsets of `1..=n`.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n);
        out.push(s);
    }
    out
}
