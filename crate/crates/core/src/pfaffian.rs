//! Pfaffians of skew-symmetric matrices given by their upper triangle.
//!
//! Odd sizes use an extra zeroth row: for `n` odd,
//! `Pf(a) = Σ_k (-1)^{k-1} a_{0k} Pf(a without row/column k)`.

use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg};

use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Upper-triangular entries `a_{ij}`, `0 <= i < j <= n`. Row 0 is only read
/// when `n` is odd.
#[derive(Clone, Debug, PartialEq)]
pub struct PfMatrix<T> {
    n: usize,
    entries: BTreeMap<(usize, usize), T>,
}

impl<T: Clone> PfMatrix<T> {
    pub fn new(n: usize) -> Self {
        PfMatrix { n, entries: BTreeMap::new() }
    }

    /// Builds the matrix from `f(i, j)` for every needed pair.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut m = PfMatrix::new(n);
        let first = if n % 2 == 1 { 0 } else { 1 };
        for i in first..=n {
            for j in (i + 1).max(1)..=n {
                m.entries.insert((i, j), f(i, j));
            }
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Sets `a_{ij}`; requires `i < j <= n`.
    pub fn set(&mut self, i: usize, j: usize, value: T) -> Result<()> {
        if i >= j || j > self.n {
            return Err(Error::IndexOutOfRange { i, j, len: self.n });
        }
        self.entries.insert((i, j), value);
        Ok(())
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&T> {
        self.entries.get(&(i, j))
    }

    /// Applies `f` to every stored entry.
    pub fn map<U: Clone>(&self, mut f: impl FnMut(usize, usize, &T) -> U) -> PfMatrix<U> {
        PfMatrix { n: self.n, entries: self.entries.iter().map(|(&(i, j), v)| ((i, j), f(i, j, v))).collect() }
    }
}

/// The Pfaffian; the empty matrix has Pfaffian 1.
pub fn pfaffian<T>(m: &PfMatrix<T>) -> Result<T>
where
    T: Clone + Zero + One + Add<Output = T> + Mul<Output = T> + Neg<Output = T>,
{
    if m.n > 63 {
        return Err(Error::Unsupported(format!("Pfaffian of size {}", m.n)));
    }
    let all: u64 = if m.n == 0 { 0 } else { (1u64 << m.n) - 1 } << 1;
    let mut memo = HashMap::new();
    if m.n.is_multiple_of(2) {
        return pf_even(m, all, &mut memo);
    }
    let mut total = T::zero();
    for k in 1..=m.n {
        let a0k = m.get(0, k).ok_or(Error::MissingEntry(k))?.clone();
        let rest = pf_even(m, all & !(1 << k), &mut memo)?;
        let term = a0k * rest;
        total = if k % 2 == 1 { total + term } else { total + (-term) };
    }
    Ok(total)
}

/// Pfaffian of the principal submatrix on the 1-based indices in `mask`
/// (bit `i` set for index `i`), expanding along the smallest index.
fn pf_even<T>(m: &PfMatrix<T>, mask: u64, memo: &mut HashMap<u64, T>) -> Result<T>
where
    T: Clone + Zero + One + Add<Output = T> + Mul<Output = T> + Neg<Output = T>,
{
    if mask == 0 {
        return Ok(T::one());
    }
    if let Some(v) = memo.get(&mask) {
        return Ok(v.clone());
    }
    let first = mask.trailing_zeros() as usize;
    let rest = mask & !(1 << first);
    let mut total = T::zero();
    let mut sign_positive = true;
    let mut bits = rest;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let a = m.get(first, j).ok_or(Error::MissingEntry(j))?.clone();
        let sub = pf_even(m, rest & !(1 << j), memo)?;
        let term = a * sub;
        total = if sign_positive { total + term } else { total + (-term) };
        sign_positive = !sign_positive;
    }
    memo.insert(mask, total.clone());
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::{Frac, SymPoly, Symbol};

    fn a(i: usize, j: usize) -> SymPoly {
        SymPoly::var(Symbol::root('a', (10 * i + j) as u32))
    }

    fn sym(n: usize) -> PfMatrix<SymPoly> {
        PfMatrix::from_fn(n, a)
    }

    #[test]
    fn small_sizes() {
        assert_eq!(pfaffian(&sym(0)).unwrap(), SymPoly::one());
        assert_eq!(pfaffian(&sym(2)).unwrap(), a(1, 2));
        let four = &(&(&a(1, 2) * &a(3, 4)) - &(&a(1, 3) * &a(2, 4))) + &(&a(1, 4) * &a(2, 3));
        assert_eq!(pfaffian(&sym(4)).unwrap(), four);
        let three = &(&(&a(0, 1) * &a(2, 3)) - &(&a(0, 2) * &a(1, 3))) + &(&a(0, 3) * &a(1, 2));
        assert_eq!(pfaffian(&sym(3)).unwrap(), three);
        assert_eq!(pfaffian(&sym(1)).unwrap(), a(0, 1));
    }

    /// Signed perfect-matching sum, straight from the definition.
    fn matching_sum(idx: &[usize]) -> SymPoly {
        if idx.is_empty() {
            return SymPoly::one();
        }
        let mut total = SymPoly::zero();
        for t in 1..idx.len() {
            let rest: Vec<usize> = idx.iter().enumerate().filter(|&(u, _)| u != 0 && u != t).map(|(_, &v)| v).collect();
            let term = &a(idx[0], idx[t]) * &matching_sum(&rest);
            if t % 2 == 1 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    #[test]
    fn matches_definition_up_to_six() {
        for n in [2, 4, 6] {
            let idx: Vec<usize> = (1..=n).collect();
            assert_eq!(pfaffian(&sym(n)).unwrap(), matching_sum(&idx));
        }
        // odd sizes: the zeroth row is an extra index
        for n in [3, 5] {
            let idx: Vec<usize> = (0..=n).collect();
            assert_eq!(pfaffian(&sym(n)).unwrap(), matching_sum(&idx));
        }
    }

    #[test]
    fn missing_entry_is_an_error() {
        let mut m = PfMatrix::<SymPoly>::new(2);
        assert!(pfaffian(&m).is_err());
        m.set(1, 2, a(1, 2)).unwrap();
        assert!(pfaffian(&m).is_ok());
        assert!(m.set(2, 1, a(1, 2)).is_err());
    }

    #[test]
    fn sign_scaling() {
        // Pf(ε_i^{m_i} ε_j^{m_j} a_ij) = ∏ ε_i^{m_i} Pf(a)
        for n in 1..=4usize {
            let ms: Vec<u32> = (0..=n as u32).map(|i| i + 1).collect();
            for bits in 0..(1u32 << (n + 1)) {
                let eps = |i: usize| if bits >> i & 1 == 1 { -1i64 } else { 1 };
                let pow = |i: usize| eps(i).pow(ms[i]);
                let scaled = sym(n).map(|i, j, v| v.scale(&(pow(i) * pow(j)).into()));
                let mut factor: i64 = (1..=n).map(pow).product();
                if n % 2 == 1 {
                    factor *= pow(0);
                }
                assert_eq!(pfaffian(&scaled).unwrap(), pfaffian(&sym(n)).unwrap().scale(&factor.into()));
            }
        }
    }

    #[test]
    fn works_over_fractions() {
        let m = PfMatrix::from_fn(2, |i, j| Frac::new(a(i, j), vec![a(j, i)]).unwrap());
        let pf = pfaffian(&m).unwrap();
        assert!(pf.equals(&Frac::new(a(1, 2), vec![a(2, 1)]).unwrap()));
    }
}
