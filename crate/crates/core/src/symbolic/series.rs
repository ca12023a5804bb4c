use num_bigint::BigInt;
use num_traits::One;

use super::poly::SymPoly;
use crate::error::{Error, Result};

/// A graded series `s_0 + s_1 + s_2 + ...` truncated after degree `order`.
///
/// `coeffs[d]` is the degree-`d` part. Arithmetic is exact for every degree
/// up to and including `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<SymPoly>,
}

impl Series {
    /// Pads or truncates `coeffs` to exactly `order + 1` entries.
    pub fn new(mut coeffs: Vec<SymPoly>, order: usize) -> Self {
        coeffs.resize(order + 1, SymPoly::zero());
        Series { coeffs }
    }

    pub fn one(order: usize) -> Self {
        Series::new(vec![SymPoly::one()], order)
    }

    /// `1 + root`, the total Chern class of a line bundle.
    pub fn linear(root: SymPoly, order: usize) -> Self {
        Series::new(vec![SymPoly::one(), root], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Degree-`d` part; zero above the order is reported as `None`.
    pub fn coeff(&self, d: usize) -> Option<&SymPoly> {
        self.coeffs.get(d)
    }

    pub fn coeffs(&self) -> &[SymPoly] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Series {
        Series::new(self.coeffs[..=order.min(self.order())].to_vec(), order.min(self.order()))
    }

    /// Multiplicative inverse of a series with constant term 1.
    pub fn inverse(&self) -> Result<Series> {
        series_inverse(self)
    }

    pub fn product(&self, other: &Series) -> Series {
        series_product(self, other)
    }
}

/// Graded convolution; the result is valid up to the smaller order.
pub fn series_product(a: &Series, b: &Series) -> Series {
    let order = a.order().min(b.order());
    let mut out = vec![SymPoly::zero(); order + 1];
    for (i, ai) in a.coeffs.iter().enumerate().take(order + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.coeffs.iter().enumerate().take(order + 1 - i) {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    Series { coeffs: out }
}

/// Inverse of a series whose constant term is exactly 1.
pub fn series_inverse(s: &Series) -> Result<Series> {
    if s.coeffs[0] != SymPoly::one() {
        return Err(Error::NonUnitConstant);
    }
    let order = s.order();
    let mut inv: Vec<SymPoly> = Vec::with_capacity(order + 1);
    inv.push(SymPoly::one());
    let minus_one = -BigInt::one();
    for d in 1..=order {
        let mut acc = SymPoly::zero();
        for k in 1..=d {
            if !s.coeffs[k].is_zero() {
                acc += &s.coeffs[k] * &inv[d - k];
            }
        }
        inv.push(acc.scale(&minus_one));
    }
    Ok(Series { coeffs: inv })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::Symbol;

    fn v(f: char, i: u32) -> SymPoly {
        SymPoly::var(Symbol::root(f, i))
    }

    #[test]
    fn inverse_of_one_plus_t() {
        let t = v('t', 1);
        let inv = series_inverse(&Series::linear(t.clone(), 3)).unwrap();
        let expected = vec![SymPoly::one(), -&t, t.pow(2), -&t.pow(3)];
        assert_eq!(inv.coeffs(), expected.as_slice());
    }

    #[test]
    fn inverse_of_one() {
        assert_eq!(series_inverse(&Series::one(4)).unwrap(), Series::one(4));
    }

    #[test]
    fn inverse_of_rank_two_bundle_multiplies_back() {
        let c = Series::linear(v('u', 1), 6).product(&Series::linear(v('u', 2), 6));
        let inv = c.inverse().unwrap();
        assert_eq!(c.product(&inv), Series::one(6));
        assert_eq!(series_inverse(&inv).unwrap(), c);
    }

    #[test]
    fn non_unit_constant_rejected() {
        let s = Series::new(vec![SymPoly::constant(2)], 2);
        assert!(matches!(series_inverse(&s), Err(Error::NonUnitConstant)));
    }

    #[test]
    fn product_of_linear_factors() {
        let (u, t) = (v('u', 1), v('t', 1));
        let p = Series::linear(u.clone(), 2).product(&Series::linear(t.clone(), 2));
        assert_eq!(p.coeffs(), &[SymPoly::one(), &u + &t, &u * &t]);
        let s = Series::linear(u, 3);
        assert_eq!(s.product(&Series::one(3)), s);
    }

    #[test]
    fn product_order_is_minimum() {
        let p = Series::one(5).product(&Series::one(2));
        assert_eq!(p.order(), 2);
    }
}
