//! Schur determinants, theta- and eta-polynomials, the Pfaffian entry
//! matrices, and the class of the locus attached to a triple.
//!
//! Polynomials are written in the symbols `c(k)_m` (or `d(k)_m`, `e(k)_m`)
//! where `k` is a position `1..=ℓ`. A triple's `clabel` says which bundle
//! each position stands for.

use std::cmp::Reverse;
use std::collections::HashMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::operators::{
    apply_product_nonnegative as apply_product, evaluate, evaluate_labeled, in_cone, EvalStyle, OpExpression,
    OperatorFactor, SignVector,
};
use crate::pfaffian::{pfaffian, PfMatrix};
use crate::symbolic::{SymPoly, Symbol, SymbolKind};
use crate::triples::{Family, NormalizedTriple};

/// How to build `Δ_λ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaMethod {
    /// `det(c(i)_{λ_i + j - i})`
    Determinant,
    /// `∏_{i<j} (1 - R_ij)` applied to `c_λ`
    Raising,
}

fn check_partition(lambda: &[i64]) -> Result<()> {
    if lambda.iter().any(|&x| x < 0) || lambda.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::Hypothesis(format!("{lambda:?} is not a partition")));
    }
    Ok(())
}

fn c(label: usize, degree: i64) -> SymPoly {
    if degree < 0 {
        SymPoly::zero()
    } else {
        SymPoly::var(Symbol::c(label as u32, degree as u32))
    }
}

fn d(label: usize, degree: i64) -> SymPoly {
    if degree < 0 {
        SymPoly::zero()
    } else {
        SymPoly::var(Symbol::d(label as u32, degree as u32))
    }
}

fn e(label: usize, degree: i64) -> SymPoly {
    if degree < 0 {
        SymPoly::zero()
    } else {
        SymPoly::var(Symbol::e(label as u32, degree as u32))
    }
}

/// The Schur determinant `Δ_λ(c(1), ..., c(ℓ))`.
pub fn schur_delta(lambda: &[i64], method: DeltaMethod) -> Result<SymPoly> {
    check_partition(lambda)?;
    match method {
        DeltaMethod::Determinant => {
            let ell = lambda.len();
            let entry = |i: usize, j: usize| c(i + 1, lambda[i] + j as i64 - i as i64);
            Ok(determinant(ell, &entry))
        }
        DeltaMethod::Raising => {
            let ops = pairs(lambda.len()).map(|(i, j)| OperatorFactor::one_minus(i, j)).collect::<Vec<_>>();
            evaluate(&apply_product(&ops, &OpExpression::monomial(lambda.to_vec()))?, EvalStyle::PlainC)
        }
    }
}

/// Laplace expansion along rows, memoized on the set of used columns.
fn determinant(n: usize, entry: &dyn Fn(usize, usize) -> SymPoly) -> SymPoly {
    fn go(
        row: usize,
        n: usize,
        used: u64,
        entry: &dyn Fn(usize, usize) -> SymPoly,
        memo: &mut HashMap<u64, SymPoly>,
    ) -> SymPoly {
        if row == n {
            return SymPoly::one();
        }
        if let Some(v) = memo.get(&used) {
            return v.clone();
        }
        let mut total = SymPoly::zero();
        let mut free_before = 0;
        for col in 0..n {
            if used >> col & 1 == 1 {
                continue;
            }
            let a = entry(row, col);
            if !a.is_zero() {
                let minor = go(row + 1, n, used | 1 << col, entry, memo);
                let term = &a * &minor;
                if free_before % 2 == 0 {
                    total += term;
                } else {
                    total -= term;
                }
            }
            free_before += 1;
        }
        memo.insert(used, total.clone());
        total
    }
    go(0, n, 0, entry, &mut HashMap::new())
}

fn pairs(ell: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=ell).flat_map(move |j| (1..j).map(move |i| (i, j)))
}

/// Checks `0 <= ρ_j < j` and that `λ` is a `ρ`-strict partition.
pub fn check_rho_strict(rho: &[i64], lambda: &[i64]) -> Result<()> {
    if rho.len() != lambda.len() {
        return Err(Error::LengthMismatch { expected: lambda.len(), got: rho.len() });
    }
    if let Some(j) = (0..rho.len()).find(|&j| rho[j] < 0 || rho[j] > j as i64) {
        return Err(Error::InvalidRho(format!("rho_{} = {} must lie in 0..{}", j + 1, rho[j], j + 1)));
    }
    check_partition(lambda).map_err(|_| Error::NotRhoStrict(format!("{lambda:?} is not a partition")))?;
    let mu: Vec<i64> = lambda.iter().zip(rho).map(|(l, r)| l + r).collect();
    if mu.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::NotRhoStrict(format!("lambda + rho = {mu:?} increases")));
    }
    Ok(())
}

/// `R^(ρ,ℓ)` (or `R^(ρ,ℓ)_z` when `deformed`) as a list of factors.
pub fn theta_operator(rho: &[i64], deformed: bool) -> Vec<OperatorFactor> {
    let ell = rho.len();
    let mut ops: Vec<OperatorFactor> = pairs(ell).map(|(i, j)| OperatorFactor::one_minus(i, j)).collect();
    for (i, j) in pairs(ell) {
        if i as i64 <= rho[j - 1] {
            ops.push(if deformed { OperatorFactor::ZInverse { i, j } } else { OperatorFactor::one_plus_inverse(i, j) });
        }
    }
    ops
}

/// The theta-polynomial `Θ^(ρ)_λ`.
pub fn theta(rho: &[i64], lambda: &[i64]) -> Result<SymPoly> {
    check_rho_strict(rho, lambda)?;
    let e = apply_product(&theta_operator(rho, false), &OpExpression::monomial(lambda.to_vec()))?;
    evaluate(&e, EvalStyle::PlainC)
}

/// The deformed theta-polynomial `Θ^(ρ)_λ(c; z)`.
pub fn theta_z(rho: &[i64], lambda: &[i64]) -> Result<SymPoly> {
    check_rho_strict(rho, lambda)?;
    let e = apply_product(&theta_operator(rho, true), &OpExpression::monomial(lambda.to_vec()))?;
    evaluate(&e, EvalStyle::PlainC)
}

/// `R̃^(ρ,r,ℓ)`. Pairs `i < j <= r` get the δ-twisted ratio; every other
/// pair gets `1 - R_ij`, and `(1 + R_ij)^{-1}` for `i <= ρ_j`, `j > r`.
pub fn eta_operator(rho: &[i64], r: usize) -> Vec<OperatorFactor> {
    let mut ops = Vec::new();
    for (i, j) in pairs(rho.len()) {
        if j <= r {
            ops.push(OperatorFactor::DeltaRatio { i, j });
        } else {
            ops.push(OperatorFactor::one_minus(i, j));
            if i as i64 <= rho[j - 1] {
                ops.push(OperatorFactor::one_plus_inverse(i, j));
            }
        }
    }
    ops
}

/// The eta-polynomial `H^(ρ)_λ` evaluated at `c(i) = d(i) + s(i) e(i)`.
pub fn eta(rho: &[i64], r: usize, lambda: &[i64], s: &SignVector) -> Result<SymPoly> {
    check_rho_strict(rho, lambda)?;
    if r > rho.len() || (0..r).any(|j| rho[j] != j as i64) {
        return Err(Error::RhoRankMismatch(r));
    }
    let e = OpExpression::signed_monomial(lambda.to_vec(), s.clone())?;
    evaluate(&apply_product(&eta_operator(rho, r), &e)?, EvalStyle::DPlusSE)
}

/// Which Pfaffian entry matrix to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PfVariant {
    /// `c(i)_{λi} c(j)_{λj} + 2 Σ_{k>0} (-1)^k c(i)_{λi+k} c(j)_{λj-k}`
    C,
    /// `(1 - R_ij)(1 + R_ij + z S_j)^{-1}` applied to `c(i)_{λi} c(j)_{λj}`
    Cz,
    /// The signed `d`/`e` version; needs a sign vector.
    D,
}

/// Entry matrix whose Pfaffian is the full-`ρ` theta- or eta-polynomial.
/// `λ` may be any vector in the cone; negative subscripts give 0.
///
/// For odd `ℓ` the zeroth row is `c(j)_{λj}` (variant D:
/// `d(j)_{λj} + (-1)^{ℓ-j} s(j) e(j)_{λj}`).
pub fn build_pf_matrix(variant: PfVariant, lambda: &[i64], s: Option<&SignVector>) -> Result<PfMatrix<SymPoly>> {
    if !in_cone(lambda) {
        return Err(Error::Hypothesis(format!("{lambda:?} is outside the cone")));
    }
    let n = lambda.len();
    // 2 Σ_{k>0} (-1)^k x(i)_{λi+k} x(j)_{λj-k}, with x = c or d
    let sum_part = |i: usize, j: usize, sym: fn(usize, i64) -> SymPoly| -> SymPoly {
        let mut acc = SymPoly::zero();
        for k in 1..=lambda[j - 1] {
            let term = &sym(i, lambda[i - 1] + k) * &sym(j, lambda[j - 1] - k);
            let coeff = if k % 2 == 0 { 2 } else { -2 };
            acc += term.scale(&BigInt::from(coeff));
        }
        acc
    };
    match variant {
        PfVariant::C => Ok(PfMatrix::from_fn(n, |i, j| {
            if i == 0 {
                c(j, lambda[j - 1])
            } else {
                &(&c(i, lambda[i - 1]) * &c(j, lambda[j - 1])) + &sum_part(i, j, c)
            }
        })),
        PfVariant::Cz => {
            let ops = [OperatorFactor::one_minus(1, 2), OperatorFactor::ZInverse { i: 1, j: 2 }];
            let mut m = PfMatrix::new(n);
            for j in 1..=n {
                if n % 2 == 1 {
                    m.set(0, j, c(j, lambda[j - 1]))?;
                }
                for i in 1..j {
                    let e = apply_product(&ops, &OpExpression::monomial(vec![lambda[i - 1], lambda[j - 1]]))?;
                    m.set(i, j, evaluate_labeled(&e, EvalStyle::PlainC, &[i as u32, j as u32])?)?;
                }
            }
            Ok(m)
        }
        PfVariant::D => {
            let s = s.ok_or_else(|| Error::Hypothesis("variant D needs a sign vector".into()))?;
            if s.entries().len() != n {
                return Err(Error::LengthMismatch { expected: n, got: s.entries().len() });
            }
            let sign = |i: usize, power: usize| -> i64 {
                let base = s.entries()[i - 1] as i64;
                if power.is_multiple_of(2) {
                    base
                } else {
                    -base
                }
            };
            // c(i) carries the sign (-1)^{n-i+1} s(i) on the left, (-1)^{n-j} s(j) on the right
            let left = |i: usize| &d(i, lambda[i - 1]) + &e(i, lambda[i - 1]).scale(&sign(i, n - i + 1).into());
            let right = |j: usize| &d(j, lambda[j - 1]) + &e(j, lambda[j - 1]).scale(&sign(j, n - j).into());
            Ok(PfMatrix::from_fn(
                n,
                |i, j| {
                    if i == 0 {
                        right(j)
                    } else {
                        &(&left(i) * &right(j)) + &sum_part(i, j, d)
                    }
                },
            ))
        }
    }
}

/// The Pfaffian of [`build_pf_matrix`].
pub fn schur_pfaffian(variant: PfVariant, lambda: &[i64], s: Option<&SignVector>) -> Result<SymPoly> {
    pfaffian(&build_pf_matrix(variant, lambda, s)?)
}

/// A locus class `poly / 2^two_power`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaResult {
    pub family: Family,
    pub poly: SymPoly,
    pub two_power: u32,
    /// `clabel[k - 1]` is the triple entry whose bundle position `k` uses.
    pub clabel: Vec<usize>,
    pub lambda: Vec<i64>,
    pub rho: Vec<i64>,
    pub deformed: bool,
}

/// The sign vector used for a type D triple: `(-1)^k` at positions whose
/// entry has `q >= 0` and `0` elsewhere.
pub fn type_d_signs(t: &NormalizedTriple) -> Result<SignVector> {
    let a = t.a.unwrap_or(t.k.len() + 1);
    SignVector::new(
        (1..=t.ell)
            .map(|k| {
                if t.clabel[k - 1] < a {
                    if k % 2 == 0 {
                        1
                    } else {
                        -1
                    }
                } else {
                    0
                }
            })
            .collect(),
    )
}

/// The class of the locus of a normalized triple.
pub fn locus_class(t: &NormalizedTriple) -> Result<FormulaResult> {
    let (poly, two_power) = match t.family {
        Family::A => (schur_delta(&t.lambda, DeltaMethod::Determinant)?, 0),
        Family::C => (theta(&t.rho, &t.lambda)?, 0),
        Family::B => (theta(&t.rho, &t.lambda)?, t.r as u32),
        Family::D => (eta(&t.rho, t.r, &t.lambda, &type_d_signs(t)?)?, t.r as u32),
    };
    Ok(FormulaResult {
        family: t.family,
        poly,
        two_power,
        clabel: t.clabel.clone(),
        lambda: t.lambda.clone(),
        rho: t.rho.clone(),
        deformed: false,
    })
}

/// The type C class when the form takes values in a line bundle with first
/// Chern class `z`.
pub fn locus_class_deformed(t: &NormalizedTriple) -> Result<FormulaResult> {
    if t.family != Family::C {
        return Err(Error::Unsupported(format!("deformed class for type {}", t.family)));
    }
    Ok(FormulaResult {
        family: t.family,
        poly: theta_z(&t.rho, &t.lambda)?,
        two_power: 0,
        clabel: t.clabel.clone(),
        lambda: t.lambda.clone(),
        rho: t.rho.clone(),
        deformed: true,
    })
}

/// Terms in output order: degree vector over positions descending, `d`
/// before `e` at equal degrees, then higher powers of `z` first.
pub fn canonical_terms(poly: &SymPoly) -> Vec<(BigInt, Vec<(Symbol, u32)>)> {
    let mut terms: Vec<_> = poly.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    let key = |m: &crate::symbolic::Monomial| {
        let max_label = m.factors().iter().map(|(s, _)| s.label).max().unwrap_or(0);
        let mut degrees = vec![0u32; max_label as usize + 1];
        let mut e_count = vec![0u32; max_label as usize + 1];
        let mut z = 0;
        for (s, exp) in m.factors() {
            match s.kind {
                SymbolKind::Z => z += exp,
                SymbolKind::E => {
                    degrees[s.label as usize] += s.degree * exp;
                    e_count[s.label as usize] += exp;
                }
                _ => degrees[s.label as usize] += s.degree * exp,
            }
        }
        (Reverse(degrees), e_count, Reverse(z))
    };
    terms.sort_by(|a, b| key(&a.0).cmp(&key(&b.0)).then_with(|| a.0.cmp(&b.0)));
    terms.into_iter().map(|(m, c)| (c, m.factors().to_vec())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triples::{build, TripleInput};

    fn cc(i: usize, d: i64) -> SymPoly {
        c(i, d)
    }

    #[test]
    fn small_determinants() {
        let expected = &(&cc(1, 2) * &cc(2, 1)) - &(&cc(1, 3) * &cc(2, 0));
        for m in [DeltaMethod::Determinant, DeltaMethod::Raising] {
            assert_eq!(schur_delta(&[2, 1], m).unwrap(), expected);
            assert_eq!(schur_delta(&[4], m).unwrap(), cc(1, 4));
            assert_eq!(schur_delta(&[0, 0], m).unwrap(), &cc(1, 0) * &cc(2, 0));
        }
        assert!(schur_delta(&[1, 2], DeltaMethod::Determinant).is_err());
    }

    #[test]
    fn theta_two_rows() {
        for a in 1..=3 {
            for b in 0..a {
                let mut expected = &cc(1, a) * &cc(2, b);
                for k in 1..=b {
                    let sign = if k % 2 == 0 { 2 } else { -2 };
                    expected += (&cc(1, a + k) * &cc(2, b - k)).scale(&sign.into());
                }
                assert_eq!(theta(&[0, 1], &[a, b]).unwrap(), expected);
            }
        }
        assert_eq!(theta(&[0], &[5]).unwrap(), cc(1, 5));
        assert_eq!(theta(&[0, 0], &[2, 1]).unwrap(), schur_delta(&[2, 1], DeltaMethod::Determinant).unwrap());
    }

    #[test]
    fn theta_refuses_non_rho_strict() {
        assert!(matches!(theta(&[0, 1], &[1, 1]), Err(Error::NotRhoStrict(_))));
        assert!(matches!(theta(&[0, 2], &[2, 1]), Err(Error::InvalidRho(_))));
    }

    #[test]
    fn theta_z_two_rows() {
        let z = SymPoly::var(Symbol::z());
        // c21 - 2 c30 - z c20
        let expected =
            &(&(&cc(1, 2) * &cc(2, 1)) - &(&cc(1, 3) * &cc(2, 0)).scale(&2.into())) - &(&(&z * &cc(1, 2)) * &cc(2, 0));
        assert_eq!(theta_z(&[0, 1], &[2, 1]).unwrap(), expected);
        assert_eq!(theta_z(&[0], &[3]).unwrap(), cc(1, 3));
    }

    #[test]
    fn eta_small_cases() {
        let s = SignVector::new(vec![-1]).unwrap();
        assert_eq!(eta(&[0], 1, &[3], &s).unwrap(), &d(1, 3) - &e(1, 3));
        let s = SignVector::new(vec![-1, 1]).unwrap();
        for a in 1..=3 {
            for b in 0..a {
                let mut expected = &(&d(1, a) - &e(1, a)) * &(&d(2, b) + &e(2, b));
                for k in 1..=b {
                    let sign = if k % 2 == 0 { 2 } else { -2 };
                    expected += (&d(1, a + k) * &d(2, b - k)).scale(&sign.into());
                }
                assert_eq!(eta(&[0, 1], 2, &[a, b], &s).unwrap(), expected);
            }
        }
        assert!(matches!(eta(&[0, 0], 2, &[2, 1], &s), Err(Error::RhoRankMismatch(2))));
    }

    #[test]
    fn pf_matrix_c_entry() {
        let m = build_pf_matrix(PfVariant::C, &[2, 1], None).unwrap();
        let expected = &(&cc(1, 2) * &cc(2, 1)) - &(&cc(1, 3) * &cc(2, 0)).scale(&2.into());
        assert_eq!(m.get(1, 2).unwrap(), &expected);
        let m = build_pf_matrix(PfVariant::C, &[3, 1, 0], None).unwrap();
        assert_eq!(m.get(0, 2).unwrap(), &cc(2, 1));
    }

    #[test]
    fn pf_matrix_cz_at_zero_is_c() {
        let lambda = [4, 2, 1];
        let cz = build_pf_matrix(PfVariant::Cz, &lambda, None).unwrap();
        let plain = build_pf_matrix(PfVariant::C, &lambda, None).unwrap();
        let drop_z = cz.map(|_, _, v| v.substitute(|s| (s.kind == SymbolKind::Z).then(SymPoly::zero)));
        assert_eq!(drop_z, plain);
    }

    #[test]
    fn pf_matrix_d_two_rows() {
        let s = SignVector::new(vec![-1, 1]).unwrap();
        let m = build_pf_matrix(PfVariant::D, &[3, 1], Some(&s)).unwrap();
        let expected = &(&(&d(1, 3) - &e(1, 3)) * &(&d(2, 1) + &e(2, 1))) - &(&d(1, 4) * &d(2, 0)).scale(&2.into());
        assert_eq!(m.get(1, 2).unwrap(), &expected);
    }

    #[test]
    fn worked_example_class() {
        let t = build(&TripleInput::c(&[1, 3, 5, 6, 7, 9], &[9, 7, 6, 5, 2, 2], &[6, 3, -2, -5, -7, -9])).unwrap();
        let f = locus_class(&t).unwrap();
        assert_eq!(f.two_power, 0);
        assert!(f.poly.is_homogeneous_of(t.size() as u32));
        assert_eq!(f.poly.len(), 80149);
    }

    #[test]
    fn type_b_is_type_c_over_a_power_of_two() {
        let t = build(&TripleInput::c(&[2, 3], &[3, 3], &[3, -2])).unwrap();
        let mut tb = t.clone();
        tb.family = Family::B;
        let (fc, fb) = (locus_class(&t).unwrap(), locus_class(&tb).unwrap());
        assert_eq!((&fb.poly, fb.two_power), (&fc.poly, t.r as u32));
        let deformed = locus_class_deformed(&t).unwrap();
        let at_zero = deformed.poly.substitute(|s| (s.kind == SymbolKind::Z).then(SymPoly::zero));
        assert_eq!(at_zero, fc.poly);
        assert!(locus_class_deformed(&tb).is_err());
    }

    #[test]
    fn type_a_basic_class() {
        let t = build(&TripleInput::a(&[0], &[1], &[3])).unwrap();
        assert_eq!(locus_class(&t).unwrap().poly, cc(1, 3));
    }

    #[test]
    fn type_d_class_uses_alternating_signs() {
        let t = build(&TripleInput::d(&[1], &[2], &[0])).unwrap();
        let f = locus_class(&t).unwrap();
        assert_eq!(f.poly, &d(1, 2) - &e(1, 2));
        assert_eq!(f.two_power, 1);
    }

    #[test]
    fn canonical_order() {
        let p = schur_delta(&[2, 1], DeltaMethod::Determinant).unwrap();
        let terms = canonical_terms(&p);
        assert_eq!(terms[0].0, BigInt::from(-1));
        assert_eq!(terms[0].1[0].0, Symbol::c(1, 3));
        let s = SignVector::new(vec![-1]).unwrap();
        let terms = canonical_terms(&eta(&[0], 1, &[2], &s).unwrap());
        assert_eq!(terms[0].1[0].0.kind, SymbolKind::D);
    }
}
