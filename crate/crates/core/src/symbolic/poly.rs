use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::symbol::{Symbol, SymbolKind};
use crate::error::{Error, Result};

/// A monomial: a sorted list of distinct symbols with positive exponents.
///
/// The derived ordering compares the graded degree first and then the factor
/// list lexicographically, which gives a degree-lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    degree: u32,
    factors: Vec<(Symbol, u32)>,
}

/// Graded degree of a symbol: the subscript for Chern-type symbols, one for
/// variables.
pub fn symbol_degree(s: &Symbol) -> u32 {
    match s.kind {
        SymbolKind::C | SymbolKind::D | SymbolKind::E => s.degree,
        SymbolKind::Root(_) | SymbolKind::Z => 1,
    }
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(s: Symbol) -> Self {
        Monomial { degree: symbol_degree(&s), factors: vec![(s, 1)] }
    }

    /// Builds a monomial from arbitrary (possibly repeated, unsorted)
    /// factors. Zero exponents are dropped.
    pub fn from_factors(factors: impl IntoIterator<Item = (Symbol, u32)>) -> Self {
        let mut map: BTreeMap<Symbol, u32> = BTreeMap::new();
        for (s, e) in factors {
            if e > 0 {
                *map.entry(s).or_insert(0) += e;
            }
        }
        let degree = map.iter().map(|(s, e)| symbol_degree(s) * e).sum();
        Monomial { degree, factors: map.into_iter().collect() }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn factors(&self) -> &[(Symbol, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponent_of(&self, s: &Symbol) -> u32 {
        self.factors.binary_search_by(|(t, _)| t.cmp(s)).map(|i| self.factors[i].1).unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.factors, &other.factors);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { degree: self.degree + other.degree, factors: out }
    }

    /// Removes `s` entirely, returning its exponent and the remaining monomial.
    pub fn split_off(&self, s: &Symbol) -> (u32, Monomial) {
        let e = self.exponent_of(s);
        if e == 0 {
            return (0, self.clone());
        }
        let factors: Vec<_> = self.factors.iter().copied().filter(|(t, _)| t != s).collect();
        (e, Monomial { degree: self.degree - symbol_degree(s) * e, factors })
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (k, (s, e)) in self.factors.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial with arbitrary-precision integer coefficients over
/// abstract [`Symbol`]s.
///
/// Zero coefficients are never stored, so two polynomials are equal exactly
/// when their term maps are equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SymPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl SymPoly {
    pub fn zero() -> Self {
        SymPoly::default()
    }

    pub fn one() -> Self {
        SymPoly::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        SymPoly::term(c, Monomial::one())
    }

    pub fn var(s: Symbol) -> Self {
        SymPoly::term(1, Monomial::var(s))
    }

    pub fn term(c: impl Into<BigInt>, m: Monomial) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        SymPoly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut p = SymPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, BigInt> {
        self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The constant term.
    pub fn constant_term(&self) -> BigInt {
        self.coeff(&Monomial::one())
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> SymPoly {
        if c.is_zero() {
            return SymPoly::zero();
        }
        SymPoly { terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigInt) -> SymPoly {
        if c.is_zero() {
            return SymPoly::zero();
        }
        SymPoly { terms: self.terms.iter().map(|(n, k)| (n.mul(m), k * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> SymPoly {
        let mut acc = SymPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `Some(d)` when every term has graded degree `d`; the zero polynomial
    /// is homogeneous of every degree and reports `None`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    /// Every symbol occurring in the polynomial.
    pub fn symbols(&self) -> Vec<Symbol> {
        let mut v: Vec<Symbol> = self.terms.keys().flat_map(|m| m.factors().iter().map(|(s, _)| *s)).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Replaces symbols by polynomials. Symbols for which `f` returns `None`
    /// are kept.
    pub fn substitute(&self, mut f: impl FnMut(&Symbol) -> Option<SymPoly>) -> SymPoly {
        match self.try_substitute(|s| Ok(f(s))) {
            Ok(p) => p,
            Err(_) => unreachable!("infallible substitution"),
        }
    }

    /// [`SymPoly::substitute`] with a fallible image map.
    pub fn try_substitute(&self, mut f: impl FnMut(&Symbol) -> Result<Option<SymPoly>>) -> Result<SymPoly> {
        let mut images: BTreeMap<Symbol, Option<SymPoly>> = BTreeMap::new();
        let mut powers: BTreeMap<(Symbol, u32), SymPoly> = BTreeMap::new();
        let mut out = SymPoly::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut acc = SymPoly::constant(c.clone());
            for &(s, e) in m.factors() {
                let img = match images.entry(s) {
                    std::collections::btree_map::Entry::Occupied(o) => o.into_mut(),
                    std::collections::btree_map::Entry::Vacant(v) => v.insert(f(&s)?),
                };
                match img {
                    None => kept.push((s, e)),
                    Some(p) => {
                        let pw = powers.entry((s, e)).or_insert_with(|| p.pow(e));
                        acc = &acc * &*pw;
                    }
                }
                if acc.is_zero() {
                    break;
                }
            }
            if acc.is_zero() {
                continue;
            }
            let km = Monomial::from_factors(kept);
            for (n, k) in acc.terms {
                out.add_term(n.mul(&km), k);
            }
        }
        Ok(out)
    }

    /// Exact division by the binomial `a - b` of two distinct variables.
    ///
    /// Treats `self` as a polynomial in `a` and runs synthetic division; a
    /// nonzero remainder is an error.
    pub fn div_exact_binomial(&self, a: Symbol, b: Symbol) -> Result<SymPoly> {
        // coefficient polynomials of a^k
        let mut by_power: BTreeMap<u32, SymPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(&a);
            by_power.entry(e).or_default().add_term(rest, c.clone());
        }
        let top = match by_power.keys().next_back() {
            Some(&t) => t,
            None => return Ok(SymPoly::zero()),
        };
        let bvar = SymPoly::var(b);
        // P = (a - b) Q with Q_{k-1} = P_k + b Q_k, from the top down.
        let mut q_next = SymPoly::zero();
        let mut quotient = SymPoly::zero();
        for k in (1..=top).rev() {
            let pk = by_power.remove(&k).unwrap_or_default();
            let qk1 = &pk + &(&bvar * &q_next);
            let am = Monomial::from_factors([(a, k - 1)]);
            quotient += qk1.mul_monomial(&am, &BigInt::one());
            q_next = qk1;
        }
        let p0 = by_power.remove(&0).unwrap_or_default();
        let remainder = &p0 + &(&bvar * &q_next);
        if !remainder.is_zero() {
            return Err(Error::InexactDivision(format!("({a} - {b})")));
        }
        Ok(quotient)
    }
}

impl From<Symbol> for SymPoly {
    fn from(s: Symbol) -> Self {
        SymPoly::var(s)
    }
}

impl From<i64> for SymPoly {
    fn from(c: i64) -> Self {
        SymPoly::constant(c)
    }
}

impl<'a> Add<&'a SymPoly> for &'a SymPoly {
    type Output = SymPoly;
    fn add(self, rhs: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for SymPoly {
    type Output = SymPoly;
    fn add(mut self, rhs: SymPoly) -> SymPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&SymPoly> for SymPoly {
    fn add_assign(&mut self, rhs: &SymPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl AddAssign for SymPoly {
    fn add_assign(&mut self, rhs: SymPoly) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl<'a> Sub<&'a SymPoly> for &'a SymPoly {
    type Output = SymPoly;
    fn sub(self, rhs: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for SymPoly {
    type Output = SymPoly;
    fn sub(mut self, rhs: SymPoly) -> SymPoly {
        self -= &rhs;
        self
    }
}

impl SubAssign<&SymPoly> for SymPoly {
    fn sub_assign(&mut self, rhs: &SymPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl SubAssign for SymPoly {
    fn sub_assign(&mut self, rhs: SymPoly) {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
    }
}

impl Neg for SymPoly {
    type Output = SymPoly;
    fn neg(self) -> SymPoly {
        SymPoly { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl Neg for &SymPoly {
    type Output = SymPoly;
    fn neg(self) -> SymPoly {
        self.clone().neg()
    }
}

impl<'a> Mul<&'a SymPoly> for &'a SymPoly {
    type Output = SymPoly;
    fn mul(self, rhs: &SymPoly) -> SymPoly {
        let (small, large) = if self.len() <= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = SymPoly::zero();
        for (m, c) in &small.terms {
            for (n, d) in &large.terms {
                out.add_term(m.mul(n), c * d);
            }
        }
        out
    }
}

impl Mul for SymPoly {
    type Output = SymPoly;
    fn mul(self, rhs: SymPoly) -> SymPoly {
        &self * &rhs
    }
}

impl Zero for SymPoly {
    fn zero() -> Self {
        SymPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for SymPoly {
    fn one() -> Self {
        SymPoly::one()
    }
}

impl fmt::Display for SymPoly {
    /// Highest-degree terms first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x(i: u32) -> SymPoly {
        SymPoly::var(Symbol::root('x', i))
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let p = &x(1) - &x(1);
        assert!(p.is_zero());
        assert_eq!(p, SymPoly::zero());
    }

    #[test]
    fn binomial_square() {
        let p = (&x(1) + &x(2)).pow(2);
        let q = &(&(&x(1) * &x(1)) + &(&x(2) * &x(2))) + &(&x(1) * &x(2)).scale(&BigInt::from(2));
        assert_eq!(p, q);
        assert_eq!(p.homogeneous_degree(), Some(2));
    }

    #[test]
    fn chern_symbols_graded_by_subscript() {
        let p = &SymPoly::var(Symbol::c(1, 2)) * &SymPoly::var(Symbol::c(2, 1));
        assert_eq!(p.homogeneous_degree(), Some(3));
        let q = SymPoly::var(Symbol::c(1, 0));
        assert_eq!(q.homogeneous_degree(), Some(0));
        assert_ne!(q, SymPoly::one());
    }

    #[test]
    fn display_is_readable() {
        let p = &(&SymPoly::var(Symbol::c(1, 2)) * &SymPoly::var(Symbol::c(2, 1)))
            - &(&SymPoly::var(Symbol::c(1, 3)) * &SymPoly::var(Symbol::c(2, 0)));
        assert_eq!(p.to_string(), "-c(1)_3*c(2)_0 + c(1)_2*c(2)_1");
    }

    #[test]
    fn exact_binomial_division() {
        let a = Symbol::root('x', 1);
        let b = Symbol::root('x', 2);
        let f = &(&x(1) - &x(2)) * &(&(&x(1) * &x(3)) + &x(2).pow(3));
        let q = f.div_exact_binomial(a, b).unwrap();
        assert_eq!(q, &(&x(1) * &x(3)) + &x(2).pow(3));
        assert!((&x(1) + &x(2)).div_exact_binomial(a, b).is_err());
    }

    #[test]
    fn substitution() {
        let p = &x(1).pow(2) + &x(2);
        let q = p.substitute(|s| (s.label == 1).then(|| &x(3) + &SymPoly::one()));
        assert_eq!(q, &(&x(3) + &SymPoly::one()).pow(2) + &x(2));
    }

    fn small_poly() -> impl Strategy<Value = SymPoly> {
        proptest::collection::vec((-3i64..=3, 0u32..3, 0u32..3, 0u32..3), 0..30).prop_map(|ts| {
            SymPoly::from_terms(ts.into_iter().map(|(c, a, b, d)| {
                let m = Monomial::from_factors([
                    (Symbol::root('x', 1), a),
                    (Symbol::root('x', 2), b),
                    (Symbol::c(1, 2), d),
                ]);
                (m, BigInt::from(c))
            }))
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(x in small_poly(), y in small_poly(), z in small_poly()) {
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert!((&(&x + &y) - &y) == x);
        }
    }
}
