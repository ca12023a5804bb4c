//! Raising-operator calculus on formal expressions `Σ a_{p,s} c_{p,s}`.
//!
//! Index vectors live in the cone `P` of integer vectors whose suffix sums
//! are all nonnegative. An operator moves the index of each term and drops
//! the term when the new index leaves `P`. Since no raising or lowering
//! operator can bring a vector back into `P`, the power series
//! `(1 + R_ij)^{-1}` and friends act through finite sums: for each term we
//! walk `R^k(p)` until the first exit from the cone.
//!
//! Coefficients are polynomials in a single extra variable `z` (the twist of
//! a line-bundle valued form). Computations that never mention `z` only see
//! constant coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::symbolic::{Monomial, SymPoly, Symbol};

/// An index vector `p = (p_1, ..., p_l)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexVector(pub Vec<i64>);

/// A sign vector with entries in `{-1, 0, 1}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignVector(Vec<i8>);

impl SignVector {
    pub fn new(entries: Vec<i8>) -> Result<Self> {
        if entries.iter().any(|s| !(-1..=1).contains(s)) {
            return Err(Error::InvalidSign);
        }
        Ok(SignVector(entries))
    }

    pub fn zeros(len: usize) -> Self {
        SignVector(vec![0; len])
    }

    pub fn entries(&self) -> &[i8] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&s| s == 0)
    }

    fn erase(&self, i: usize) -> SignVector {
        let mut v = self.0.clone();
        v[i] = 0;
        SignVector(v)
    }
}

/// True iff every suffix sum `p_k + ... + p_l` is nonnegative.
pub fn in_cone(p: &[i64]) -> bool {
    let mut sum = 0i64;
    for &x in p.iter().rev() {
        sum += x;
        if sum < 0 {
            return false;
        }
    }
    true
}

fn check_pair(i: usize, j: usize, len: usize) -> Result<()> {
    if i == 0 || i >= j || j > len {
        return Err(Error::IndexOutOfRange { i, j, len });
    }
    Ok(())
}

/// `R_ij(p)`: raise the `i`-th entry and lower the `j`-th (1-based, `i < j`).
pub fn raise(p: &IndexVector, i: usize, j: usize) -> Result<IndexVector> {
    check_pair(i, j, p.0.len())?;
    Ok(raise_by(p, i, j, 1))
}

fn raise_by(p: &IndexVector, i: usize, j: usize, k: i64) -> IndexVector {
    let mut v = p.0.clone();
    v[i - 1] += k;
    v[j - 1] -= k;
    IndexVector(v)
}

fn lower_by(p: &IndexVector, j: usize, k: i64) -> IndexVector {
    let mut v = p.0.clone();
    v[j - 1] -= k;
    IndexVector(v)
}

/// Polynomial coefficient in `z`, stored densely by power.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ZPoly(Vec<BigInt>);

impl ZPoly {
    pub fn constant(c: impl Into<BigInt>) -> Self {
        let mut p = ZPoly(vec![c.into()]);
        p.normalize();
        p
    }

    /// `c * z^k`
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c.into();
        let mut p = ZPoly(v);
        p.normalize();
        p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn normalize(&mut self) {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
    }

    fn add_scaled(&mut self, other: &ZPoly, c: &BigInt, shift: usize) {
        if self.0.len() < other.0.len() + shift {
            self.0.resize(other.0.len() + shift, BigInt::zero());
        }
        for (k, x) in other.0.iter().enumerate() {
            self.0[k + shift] += x * c;
        }
        self.normalize();
    }

    pub fn to_sympoly(&self) -> SymPoly {
        SymPoly::from_terms(
            self.0.iter().enumerate().map(|(k, c)| (Monomial::from_factors([(Symbol::z(), k as u32)]), c.clone())),
        )
    }
}

/// A finite formal sum of `c_{p,s}` with `p` in the cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpExpression {
    len: usize,
    terms: BTreeMap<(IndexVector, SignVector), ZPoly>,
}

impl OpExpression {
    pub fn zero(len: usize) -> Self {
        OpExpression { len, terms: BTreeMap::new() }
    }

    /// The single term `c_p` with all signs zero. Empty if `p` is outside
    /// the cone.
    pub fn monomial(p: Vec<i64>) -> Self {
        let len = p.len();
        let mut e = OpExpression::zero(len);
        e.add(IndexVector(p), SignVector::zeros(len), ZPoly::constant(1));
        e
    }

    pub fn signed_monomial(p: Vec<i64>, s: SignVector) -> Result<Self> {
        if p.len() != s.0.len() {
            return Err(Error::LengthMismatch { expected: p.len(), got: s.0.len() });
        }
        let mut e = OpExpression::zero(p.len());
        e.add(IndexVector(p), s, ZPoly::constant(1));
        Ok(e)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IndexVector, &SignVector, &ZPoly)> {
        self.terms.iter().map(|((p, s), c)| (p, s, c))
    }

    /// Integer coefficient of `c_{p,s}` (constant part in `z`).
    pub fn coeff(&self, p: &[i64], s: &SignVector) -> BigInt {
        self.terms.get(&(IndexVector(p.to_vec()), s.clone())).and_then(|c| c.0.first().cloned()).unwrap_or_default()
    }

    fn add(&mut self, p: IndexVector, s: SignVector, c: ZPoly) {
        self.add_scaled(p, s, &c, &BigInt::one(), 0);
    }

    fn add_scaled(&mut self, p: IndexVector, s: SignVector, c: &ZPoly, k: &BigInt, zshift: usize) {
        if !in_cone(&p.0) || k.is_zero() || c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((p, s)) {
            Entry::Vacant(v) => {
                let mut z = ZPoly::default();
                z.add_scaled(c, k, zshift);
                v.insert(z);
            }
            Entry::Occupied(mut o) => {
                o.get_mut().add_scaled(c, k, zshift);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }
}

/// One factor of a raising-operator product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorFactor {
    /// `(1 + sign * R_ij)^exponent` with `sign`, `exponent` in `{+1, -1}`.
    RaiseBinomial { i: usize, j: usize, sign: i8, exponent: i8 },
    /// `(1 - δ_iδ_j R_ij) / (1 + δ_iδ_j R_ij)`.
    DeltaRatio { i: usize, j: usize },
    /// `(1 + R_ij + z S_j)^{-1}`.
    ZInverse { i: usize, j: usize },
    /// `δ_i`: erase the sign at position `i`.
    Delta(usize),
}

impl OperatorFactor {
    /// `1 - R_ij`
    pub fn one_minus(i: usize, j: usize) -> Self {
        OperatorFactor::RaiseBinomial { i, j, sign: -1, exponent: 1 }
    }

    /// `(1 + R_ij)^{-1}`
    pub fn one_plus_inverse(i: usize, j: usize) -> Self {
        OperatorFactor::RaiseBinomial { i, j, sign: 1, exponent: -1 }
    }

    fn check(&self, len: usize) -> Result<()> {
        match *self {
            OperatorFactor::RaiseBinomial { i, j, sign, exponent } => {
                check_pair(i, j, len)?;
                if sign.abs() != 1 || exponent.abs() != 1 {
                    return Err(Error::InvalidSign);
                }
                Ok(())
            }
            OperatorFactor::DeltaRatio { i, j } | OperatorFactor::ZInverse { i, j } => check_pair(i, j, len),
            OperatorFactor::Delta(i) => {
                if i == 0 || i > len {
                    return Err(Error::IndexOutOfRange { i, j: i, len });
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for OperatorFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            OperatorFactor::RaiseBinomial { i, j, sign, exponent } => {
                let s = if sign > 0 { '+' } else { '-' };
                if exponent > 0 {
                    write!(f, "(1{s}R{i}{j})")
                } else {
                    write!(f, "(1{s}R{i}{j})^-1")
                }
            }
            OperatorFactor::DeltaRatio { i, j } => write!(f, "(1-d{i}d{j}R{i}{j})/(1+d{i}d{j}R{i}{j})"),
            OperatorFactor::ZInverse { i, j } => write!(f, "(1+R{i}{j}+zS{j})^-1"),
            OperatorFactor::Delta(i) => write!(f, "d{i}"),
        }
    }
}

/// Applies one factor to every term, expanding series factors until the
/// index leaves the cone.
pub fn apply_factor(f: &OperatorFactor, e: &OpExpression) -> Result<OpExpression> {
    apply_factor_closed(f, e, e.len)
}

/// [`apply_factor`] where series also stop once a 0-based position
/// `>= closed` turns negative.
fn apply_factor_closed(f: &OperatorFactor, e: &OpExpression, closed: usize) -> Result<OpExpression> {
    f.check(e.len)?;
    let alive = |q: &IndexVector| in_cone(&q.0) && q.0.iter().skip(closed).all(|&x| x >= 0);
    let mut out = OpExpression::zero(e.len);
    let one = BigInt::one();
    for ((p, s), c) in &e.terms {
        match *f {
            OperatorFactor::RaiseBinomial { i, j, sign, exponent } => {
                if exponent > 0 {
                    out.add_scaled(p.clone(), s.clone(), c, &one, 0);
                    out.add_scaled(raise_by(p, i, j, 1), s.clone(), c, &BigInt::from(sign), 0);
                } else {
                    // (1 + σR)^{-1} = Σ (-σ)^k R^k
                    let step = BigInt::from(-sign);
                    let mut k_coeff = one.clone();
                    let mut k = 0;
                    loop {
                        let q = raise_by(p, i, j, k);
                        if !alive(&q) {
                            break;
                        }
                        out.add_scaled(q, s.clone(), c, &k_coeff, 0);
                        k_coeff = &k_coeff * &step;
                        k += 1;
                    }
                }
            }
            OperatorFactor::DeltaRatio { i, j } => {
                // 1 + 2 Σ_{k>0} (-1)^k δ_iδ_j R^k
                out.add_scaled(p.clone(), s.clone(), c, &one, 0);
                let erased = s.erase(i - 1).erase(j - 1);
                let mut k = 1;
                loop {
                    let q = raise_by(p, i, j, k);
                    if !alive(&q) {
                        break;
                    }
                    let coeff = if k % 2 == 0 { BigInt::from(2) } else { BigInt::from(-2) };
                    out.add_scaled(q, erased.clone(), c, &coeff, 0);
                    k += 1;
                }
            }
            OperatorFactor::ZInverse { i, j } => {
                // Σ_{a,b} (-1)^{a+b} C(a+b, a) z^b R^a S_j^b
                let mut a = 0;
                loop {
                    let ra = raise_by(p, i, j, a);
                    if !alive(&ra) {
                        break;
                    }
                    let mut b = 0;
                    let mut binom = one.clone(); // C(a+b, a)
                    loop {
                        let q = lower_by(&ra, j, b);
                        if !alive(&q) {
                            break;
                        }
                        let sign = if (a + b) % 2 == 0 { one.clone() } else { -one.clone() };
                        out.add_scaled(q, s.clone(), c, &(&binom * sign), b as usize);
                        b += 1;
                        binom = binom * BigInt::from(a + b) / BigInt::from(b);
                    }
                    a += 1;
                }
            }
            OperatorFactor::Delta(i) => {
                out.add_scaled(p.clone(), s.erase(i - 1), c, &one, 0);
            }
        }
    }
    Ok(out)
}

/// Applies the factors left to right. The factors commute, so the order only
/// affects intermediate sizes.
pub fn apply_product(fs: &[OperatorFactor], e: &OpExpression) -> Result<OpExpression> {
    let mut cur = e.clone();
    for f in fs {
        cur = apply_factor(f, &cur)?;
    }
    Ok(cur)
}

/// The terms of `apply_product(fs, e)` with all entries nonnegative, which
/// are the only ones that survive evaluation.
///
/// Factors are applied grouped by the raised index, rightmost first. Once no
/// remaining factor raises position `m`, a negative `p_m` stays negative, so
/// such terms are dropped on the spot. This keeps the inverse series short.
pub fn apply_product_nonnegative(fs: &[OperatorFactor], e: &OpExpression) -> Result<OpExpression> {
    let raised = |f: &OperatorFactor| match *f {
        OperatorFactor::RaiseBinomial { i, .. }
        | OperatorFactor::DeltaRatio { i, .. }
        | OperatorFactor::ZInverse { i, .. } => i,
        OperatorFactor::Delta(_) => 0,
    };
    let mut order: Vec<OperatorFactor> = fs.to_vec();
    order.sort_by_key(|f| std::cmp::Reverse(raised(f)));
    // 1-based positions past the largest index still to be raised are closed
    let open = |rest: &[OperatorFactor]| rest.iter().map(raised).max().unwrap_or(0);
    let mut cur = e.clone();
    cur.terms.retain(|(p, _), _| p.0.iter().skip(open(&order)).all(|&x| x >= 0));
    for (n, f) in order.iter().enumerate() {
        cur = apply_factor_closed(f, &cur, open(&order[n..]))?;
        let m = open(&order[n + 1..]);
        cur.terms.retain(|(p, _), _| p.0.iter().skip(m).all(|&x| x >= 0));
    }
    Ok(cur)
}

/// How a term `c_{p,s}` evaluates to a polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvalStyle {
    /// `∏ c(i)_{p_i}`; signs must be zero.
    PlainC,
    /// `∏ (d(i)_{p_i} + s_i e(i)_{p_i})`.
    DPlusSE,
}

/// Evaluation of an expression. Any factor with a negative subscript is 0.
pub fn evaluate(e: &OpExpression, style: EvalStyle) -> Result<SymPoly> {
    let labels: Vec<u32> = (1..=e.len as u32).collect();
    evaluate_labeled(e, style, &labels)
}

/// Like [`evaluate`], with position `i` reading the symbols of `labels[i]`.
pub fn evaluate_labeled(e: &OpExpression, style: EvalStyle, labels: &[u32]) -> Result<SymPoly> {
    if labels.len() != e.len {
        return Err(Error::LengthMismatch { expected: e.len, got: labels.len() });
    }
    let mut out = SymPoly::zero();
    for ((p, s), c) in &e.terms {
        if style == EvalStyle::PlainC && !s.is_zero() {
            return Err(Error::SignedPlainEvaluation);
        }
        if p.0.iter().any(|&x| x < 0) {
            continue;
        }
        let coeff = c.to_sympoly();
        let value = match style {
            EvalStyle::PlainC => {
                let m =
                    Monomial::from_factors(p.0.iter().zip(labels).map(|(&r, &label)| (Symbol::c(label, r as u32), 1)));
                coeff.mul_monomial(&m, &BigInt::one())
            }
            EvalStyle::DPlusSE => {
                let mut acc = coeff;
                for ((&r, &si), &label) in p.0.iter().zip(s.0.iter()).zip(labels) {
                    let mut factor = SymPoly::var(Symbol::d(label, r as u32));
                    if si != 0 {
                        factor += SymPoly::var(Symbol::e(label, r as u32)).scale(&BigInt::from(si));
                    }
                    acc = &acc * &factor;
                }
                acc
            }
        };
        out += value;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn iv(v: &[i64]) -> IndexVector {
        IndexVector(v.to_vec())
    }

    #[test]
    fn cone_membership() {
        assert!(in_cone(&[1, 0, 1]));
        assert!(in_cone(&[2, -1, 1]));
        assert!(!in_cone(&[1, 1, -1]));
    }

    #[test]
    fn raising_examples() {
        assert_eq!(raise(&iv(&[1, 0, 1]), 1, 2).unwrap(), iv(&[2, -1, 1]));
        let a = raise(&raise(&iv(&[1, 0, 1]), 2, 3).unwrap(), 1, 2).unwrap();
        let b = raise(&raise(&iv(&[1, 0, 1]), 1, 2).unwrap(), 2, 3).unwrap();
        assert_eq!(a, iv(&[2, 0, 0]));
        assert_eq!(a, b);
        assert_eq!(raise(&iv(&[0, 0, 0]), 1, 3).unwrap(), iv(&[1, 0, -1]));
        assert!(raise(&iv(&[0, 0]), 2, 1).is_err());
        assert!(raise(&iv(&[0, 0]), 1, 3).is_err());
    }

    #[test]
    fn one_minus_r() {
        let e = apply_factor(&OperatorFactor::one_minus(1, 2), &OpExpression::monomial(vec![1, 1])).unwrap();
        let mut expected = OpExpression::monomial(vec![1, 1]);
        expected.add(iv(&[2, 0]), SignVector::zeros(2), ZPoly::constant(-1));
        assert_eq!(e, expected);
    }

    #[test]
    fn inverse_truncates_at_cone_boundary() {
        // (3,-1) is outside the cone, so only k = 0, 1 survive
        let e = apply_factor(&OperatorFactor::one_plus_inverse(1, 2), &OpExpression::monomial(vec![1, 1])).unwrap();
        assert_eq!(e.num_terms(), 2);
        assert_eq!(e.coeff(&[1, 1], &SignVector::zeros(2)), BigInt::from(1));
        assert_eq!(e.coeff(&[2, 0], &SignVector::zeros(2)), BigInt::from(-1));
    }

    #[test]
    fn delta_erases_sign() {
        let s = SignVector::new(vec![-1, 1]).unwrap();
        let e = OpExpression::signed_monomial(vec![2, 1], s).unwrap();
        let d = apply_factor(&OperatorFactor::Delta(1), &e).unwrap();
        let (p, s, _) = d.terms().next().unwrap();
        assert_eq!(p, &iv(&[2, 1]));
        assert_eq!(s.entries(), &[0, 1]);
        assert_eq!(apply_factor(&OperatorFactor::Delta(1), &d).unwrap(), d);
    }

    #[test]
    fn empty_product_is_identity() {
        let e = OpExpression::monomial(vec![3, 1, 0]);
        assert_eq!(apply_product(&[], &e).unwrap(), e);
    }

    #[test]
    fn evaluation_styles() {
        let e = OpExpression::monomial(vec![2, 1]);
        assert_eq!(
            evaluate(&e, EvalStyle::PlainC).unwrap(),
            &SymPoly::var(Symbol::c(1, 2)) * &SymPoly::var(Symbol::c(2, 1))
        );
        let s = SignVector::new(vec![-1, 1]).unwrap();
        let e = OpExpression::signed_monomial(vec![1, 1], s).unwrap();
        let d1 = SymPoly::var(Symbol::d(1, 1));
        let e1 = SymPoly::var(Symbol::e(1, 1));
        let d2 = SymPoly::var(Symbol::d(2, 1));
        let e2 = SymPoly::var(Symbol::e(2, 1));
        assert_eq!(evaluate(&e, EvalStyle::DPlusSE).unwrap(), &(&d1 - &e1) * &(&d2 + &e2));
        assert!(matches!(evaluate(&e, EvalStyle::PlainC), Err(Error::SignedPlainEvaluation)));
    }

    #[test]
    fn negative_entries_evaluate_to_zero() {
        let e = OpExpression::monomial(vec![2, -1, 1]);
        assert_eq!(e.num_terms(), 1);
        assert!(evaluate(&e, EvalStyle::PlainC).unwrap().is_zero());
    }

    fn pairs(len: usize) -> Vec<(usize, usize)> {
        (1..=len).flat_map(|j| (1..j).map(move |i| (i, j))).collect()
    }

    fn apply_monomial(p: &[i64], pairs: &[(usize, usize)], exps: &[i64]) -> Vec<i64> {
        let mut q = p.to_vec();
        for (&(i, j), &m) in pairs.iter().zip(exps) {
            q[i - 1] += m;
            q[j - 1] -= m;
        }
        q
    }

    fn all_vectors(len: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
        let mut out = vec![vec![]];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (lo..=hi).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        out
    }

    #[test]
    fn cone_closure_exhaustive() {
        for len in 1..=4 {
            let ps = pairs(len);
            let exps = all_vectors(ps.len(), 0, 2);
            for p in all_vectors(len, -3, 3) {
                if in_cone(&p) {
                    continue;
                }
                for m in &exps {
                    assert!(!in_cone(&apply_monomial(&p, &ps, m)), "{p:?} {m:?}");
                }
            }
        }
    }

    #[test]
    fn finitely_many_raisings_land_in_cone() {
        // suffix sums bound every exponent by the total |p|, so raising the
        // exponent cap beyond that adds nothing
        let ps = pairs(3);
        let small = all_vectors(3, 0, 16);
        let large = all_vectors(3, 0, 20);
        for p in all_vectors(3, -5, 5).into_iter().step_by(7) {
            let count = |ms: &Vec<Vec<i64>>| ms.iter().filter(|m| in_cone(&apply_monomial(&p, &ps, m))).count();
            assert_eq!(count(&small), count(&large), "{p:?}");
        }
    }

    #[test]
    fn composition_law() {
        for p in all_vectors(3, -2, 2) {
            let p = IndexVector(p);
            let lhs = raise(&raise(&p, 2, 3).unwrap(), 1, 2).unwrap();
            assert_eq!(lhs, raise(&p, 1, 3).unwrap());
        }
    }

    fn factor_strategy(len: usize) -> impl Strategy<Value = OperatorFactor> {
        let pair = (1..len).prop_flat_map(move |i| (Just(i), (i + 1)..=len));
        prop_oneof![
            pair.clone().prop_map(|(i, j)| OperatorFactor::one_minus(i, j)),
            pair.clone().prop_map(|(i, j)| OperatorFactor::one_plus_inverse(i, j)),
            pair.clone().prop_map(|(i, j)| OperatorFactor::RaiseBinomial { i, j, sign: 1, exponent: 1 }),
            pair.clone().prop_map(|(i, j)| OperatorFactor::DeltaRatio { i, j }),
            pair.prop_map(|(i, j)| OperatorFactor::ZInverse { i, j }),
            (1..=len).prop_map(OperatorFactor::Delta),
        ]
    }

    fn case_strategy() -> impl Strategy<Value = (Vec<i64>, Vec<i8>, Vec<OperatorFactor>)> {
        (2usize..=4).prop_flat_map(|len| {
            (
                proptest::collection::vec(0i64..=3, len),
                proptest::collection::vec(-1i8..=1, len),
                proptest::collection::vec(factor_strategy(len), 1..=4),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn factor_order_is_irrelevant((p, s, fs) in case_strategy()) {
            let e = OpExpression::signed_monomial(p, SignVector::new(s).unwrap()).unwrap();
            let forward = apply_product(&fs, &e).unwrap();
            let mut rev = fs.clone();
            rev.reverse();
            prop_assert_eq!(&forward, &apply_product(&rev, &e).unwrap());
            rev.rotate_left(1);
            prop_assert_eq!(&forward, &apply_product(&rev, &e).unwrap());
        }

        #[test]
        fn pruned_product_keeps_the_nonnegative_terms((p, s, fs) in case_strategy()) {
            let e = OpExpression::signed_monomial(p, SignVector::new(s).unwrap()).unwrap();
            let mut full = apply_product(&fs, &e).unwrap();
            full.terms.retain(|(q, _), _| q.0.iter().all(|&x| x >= 0));
            prop_assert_eq!(apply_product_nonnegative(&fs, &e).unwrap(), full);
        }
    }
}
