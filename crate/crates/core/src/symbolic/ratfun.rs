use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::SymPoly;
use crate::error::{Error, Result};

/// A quotient of two polynomials. No gcd reduction is ever performed;
/// equality is decided by cross-multiplication.
#[derive(Clone, Debug)]
pub struct RatFun {
    num: SymPoly,
    den: SymPoly,
}

impl RatFun {
    pub fn new(num: SymPoly, den: SymPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(RatFun { num, den })
    }

    pub fn from_poly(num: SymPoly) -> Self {
        RatFun { num, den: SymPoly::one() }
    }

    pub fn num(&self) -> &SymPoly {
        &self.num
    }

    pub fn den(&self) -> &SymPoly {
        &self.den
    }
}

/// `a == b` iff `a.num * b.den == b.num * a.den`.
pub fn ratfun_equal(a: &RatFun, b: &RatFun) -> Result<bool> {
    if a.den.is_zero() || b.den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(&a.num * &b.den == &b.num * &a.den)
}

impl PartialEq for RatFun {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        if self.den == rhs.den {
            return RatFun { num: &self.num + &rhs.num, den: self.den.clone() };
        }
        RatFun { num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den), den: &self.den * &rhs.den }
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self + &(-rhs)
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        RatFun { num: &self.num * &rhs.num, den: &self.den * &rhs.den }
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun { num: -&self.num, den: self.den.clone() }
    }
}

/// A fraction whose denominator is kept as a multiset of polynomial factors.
///
/// Sums are taken over the least common multiple of the factor multisets, so
/// expressions built from a fixed pool of denominators (the `T_j + T_i` of a
/// Pfaffian identity, say) never pick up redundant factors. Factors are
/// compared structurally; no factorization is attempted.
#[derive(Clone, Debug)]
pub struct Frac {
    num: SymPoly,
    den: Vec<SymPoly>,
}

impl Frac {
    pub fn new(num: SymPoly, den_factors: Vec<SymPoly>) -> Result<Self> {
        if den_factors.iter().any(SymPoly::is_zero) {
            return Err(Error::ZeroDenominator);
        }
        let mut den = den_factors;
        den.retain(|f| *f != SymPoly::one());
        den.sort();
        Ok(Frac { num, den })
    }

    pub fn from_poly(num: SymPoly) -> Self {
        Frac { num, den: Vec::new() }
    }

    pub fn num(&self) -> &SymPoly {
        &self.num
    }

    pub fn den_factors(&self) -> &[SymPoly] {
        &self.den
    }

    pub fn to_ratfun(&self) -> RatFun {
        let den = self.den.iter().fold(SymPoly::one(), |acc, f| &acc * f);
        RatFun { num: self.num.clone(), den }
    }

    /// Rewrites the numerator over the given denominator multiset, which must
    /// contain `self.den`.
    fn numerator_over(&self, lcm: &[SymPoly]) -> SymPoly {
        let missing = multiset_difference(lcm, &self.den);
        missing.iter().fold(self.num.clone(), |acc, f| &acc * f)
    }

    /// Exact equality, cross-multiplying over the common denominator.
    pub fn equals(&self, other: &Frac) -> bool {
        let lcm = multiset_lcm(&self.den, &other.den);
        self.numerator_over(&lcm) == other.numerator_over(&lcm)
    }
}

fn multiset_lcm(a: &[SymPoly], b: &[SymPoly]) -> Vec<SymPoly> {
    let mut out = a.to_vec();
    out.extend(multiset_difference(b, a));
    out.sort();
    out
}

/// `a \ b` as multisets; both inputs sorted.
fn multiset_difference(a: &[SymPoly], b: &[SymPoly]) -> Vec<SymPoly> {
    let mut out = Vec::new();
    let mut j = 0;
    for f in a {
        while j < b.len() && b[j] < *f {
            j += 1;
        }
        if j < b.len() && b[j] == *f {
            j += 1;
        } else {
            out.push(f.clone());
        }
    }
    out
}

impl PartialEq for Frac {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl Add for &Frac {
    type Output = Frac;
    fn add(self, rhs: &Frac) -> Frac {
        let lcm = multiset_lcm(&self.den, &rhs.den);
        let num = &self.numerator_over(&lcm) + &rhs.numerator_over(&lcm);
        Frac { num, den: lcm }
    }
}

impl Add for Frac {
    type Output = Frac;
    fn add(self, rhs: Frac) -> Frac {
        &self + &rhs
    }
}

impl Sub for &Frac {
    type Output = Frac;
    fn sub(self, rhs: &Frac) -> Frac {
        self + &(-rhs)
    }
}

impl Mul for &Frac {
    type Output = Frac;
    fn mul(self, rhs: &Frac) -> Frac {
        let mut den = self.den.clone();
        den.extend(rhs.den.iter().cloned());
        den.sort();
        Frac { num: &self.num * &rhs.num, den }
    }
}

impl Mul for Frac {
    type Output = Frac;
    fn mul(self, rhs: Frac) -> Frac {
        &self * &rhs
    }
}

impl Neg for &Frac {
    type Output = Frac;
    fn neg(self) -> Frac {
        Frac { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for Frac {
    type Output = Frac;
    fn neg(self) -> Frac {
        -&self
    }
}

impl Zero for Frac {
    fn zero() -> Self {
        Frac::from_poly(SymPoly::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for Frac {
    fn one() -> Self {
        Frac::from_poly(SymPoly::one())
    }
}

impl Frac {
    pub fn scale(&self, c: i64) -> Frac {
        Frac { num: self.num.scale(&BigInt::from(c)), den: self.den.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::Symbol;
    use proptest::prelude::*;

    fn t(i: u32) -> SymPoly {
        SymPoly::var(Symbol::root('T', i))
    }

    #[test]
    fn common_factor_cancels() {
        let a = RatFun::new(t(1), t(2)).unwrap();
        let b = RatFun::new(&t(1) * &t(3), &t(2) * &t(3)).unwrap();
        assert!(ratfun_equal(&a, &b).unwrap());
    }

    #[test]
    fn geometric_series_is_not_a_polynomial() {
        let one = SymPoly::one();
        let a = RatFun::new(&one + &t(1), one.clone()).unwrap();
        let b = RatFun::new(one.clone(), &one - &t(1)).unwrap();
        assert!(!ratfun_equal(&a, &b).unwrap());
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(RatFun::new(t(1), SymPoly::zero()).is_err());
        assert!(Frac::new(t(1), vec![SymPoly::zero()]).is_err());
    }

    #[test]
    fn frac_sum_uses_lcm() {
        let d = &t(1) + &t(2);
        let a = Frac::new(t(1), vec![d.clone()]).unwrap();
        let b = Frac::new(t(2), vec![d.clone()]).unwrap();
        let s = &a + &b;
        assert_eq!(s.den_factors().len(), 1);
        assert!(s.equals(&Frac::from_poly(SymPoly::one())));
    }

    proptest! {
        /// Rational functions sharing one denominator: cross-multiplication
        /// equality is reflexive, symmetric and transitive.
        #[test]
        fn equality_is_an_equivalence(ks in proptest::collection::vec((-2i64..=2, -2i64..=2, 1i64..=3), 3)) {
            let den = &t(1) + &t(2);
            let fs: Vec<RatFun> = ks.iter().map(|&(a, b, m)| {
                let num = &t(1).scale(&BigInt::from(a)) + &SymPoly::constant(b);
                RatFun::new(num.scale(&BigInt::from(m)), den.scale(&BigInt::from(m))).unwrap()
            }).collect();
            for f in &fs {
                prop_assert!(ratfun_equal(f, f).unwrap());
            }
            for f in &fs {
                for g in &fs {
                    prop_assert_eq!(ratfun_equal(f, g).unwrap(), ratfun_equal(g, f).unwrap());
                    for h in &fs {
                        if ratfun_equal(f, g).unwrap() && ratfun_equal(g, h).unwrap() {
                            prop_assert!(ratfun_equal(f, h).unwrap());
                        }
                    }
                }
            }
        }
    }
}
