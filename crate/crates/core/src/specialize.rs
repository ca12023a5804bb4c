//! Concrete values for the abstract Chern symbols, and two independent
//! oracles (tableau Schur polynomials and symmetrized Q-polynomials) to
//! compare them against.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::symbolic::{Monomial, Series, SymPoly, Symbol, SymbolKind};
use crate::triples::NormalizedTriple;

/// A formal difference of sums of line bundles, given by their roots.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VirtualBundle {
    pub plus: Vec<SymPoly>,
    pub minus: Vec<SymPoly>,
}

impl VirtualBundle {
    pub fn new(plus: Vec<SymPoly>, minus: Vec<SymPoly>) -> Self {
        VirtualBundle { plus, minus }
    }

    pub fn rank(&self) -> i64 {
        self.plus.len() as i64 - self.minus.len() as i64
    }
}

/// `∏_plus (1 + u) / ∏_minus (1 + t)` through degree `order`.
pub fn chern_series(vb: &VirtualBundle, order: usize) -> Result<Series> {
    let mut num = Series::one(order);
    for u in &vb.plus {
        num = num.product(&Series::linear(u.clone(), order));
    }
    let mut den = Series::one(order);
    for t in &vb.minus {
        den = den.product(&Series::linear(t.clone(), order));
    }
    Ok(num.product(&den.inverse()?))
}

/// The variable `x_i`.
pub fn x(i: u32) -> Symbol {
    Symbol::root('x', i)
}

/// `∏_{i<=m} 1/(1 - x_i)`, whose coefficients are the complete symmetric
/// polynomials.
pub fn h_series(m: u32, order: usize) -> Result<Series> {
    let minus = (1..=m).map(|i| -SymPoly::var(x(i))).collect();
    chern_series(&VirtualBundle::new(vec![], minus), order)
}

/// `∏_{i<=m} (1 + x_i)/(1 - x_i)`, the generating series of the `q_k`.
pub fn q_series(m: u32, order: usize) -> Result<Series> {
    let plus = (1..=m).map(|i| SymPoly::var(x(i))).collect();
    let minus = (1..=m).map(|i| -SymPoly::var(x(i))).collect();
    chern_series(&VirtualBundle::new(plus, minus), order)
}

/// What one triple entry supplies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EntryClasses {
    /// Values for `c(k)_r`.
    Chern(Series),
    /// Values for `d(k)_r`; the `e(k)_r` stay abstract, relabeled to the
    /// entry index.
    Split(Series),
}

/// Total Chern classes by triple entry (1-based).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChernAssignment {
    entries: BTreeMap<usize, EntryClasses>,
}

impl ChernAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Every entry in `1..=count` gets the same series.
    pub fn uniform(count: usize, classes: EntryClasses) -> Result<Self> {
        let mut a = Self::new();
        for i in 1..=count {
            a.insert(i, classes.clone())?;
        }
        Ok(a)
    }

    /// Rejects series whose constant term is not 1.
    pub fn insert(&mut self, entry: usize, classes: EntryClasses) -> Result<()> {
        let s = match &classes {
            EntryClasses::Chern(s) | EntryClasses::Split(s) => s,
        };
        if s.coeff(0) != Some(&SymPoly::one()) {
            return Err(Error::NonUnitConstant);
        }
        self.entries.insert(entry, classes);
        Ok(())
    }

    pub fn get(&self, entry: usize) -> Option<&EntryClasses> {
        self.entries.get(&entry)
    }
}

/// Substitutes into a formula from [`crate::formulas`] for the triple `t`.
pub fn specialize(poly: &SymPoly, t: &NormalizedTriple, assign: &ChernAssignment) -> Result<SymPoly> {
    specialize_labels(poly, &t.clabel, assign)
}

/// Position `k` reads the classes of entry `clabel[k - 1]`.
pub fn specialize_labels(poly: &SymPoly, clabel: &[usize], assign: &ChernAssignment) -> Result<SymPoly> {
    poly.try_substitute(|s| {
        if !matches!(s.kind, SymbolKind::C | SymbolKind::D | SymbolKind::E) {
            return Ok(None);
        }
        let entry = *clabel.get(s.label as usize - 1).ok_or(Error::MissingEntry(s.label as usize))?;
        let series = match (s.kind, assign.get(entry).ok_or(Error::MissingEntry(entry))?) {
            (SymbolKind::C, EntryClasses::Chern(series)) | (SymbolKind::D, EntryClasses::Split(series)) => series,
            (SymbolKind::E, EntryClasses::Split(_)) => {
                return Ok(Some(SymPoly::var(Symbol::e(entry as u32, s.degree))))
            }
            _ => return Err(Error::KindMismatch(format!("{s} against entry {entry}"))),
        };
        match series.coeff(s.degree as usize) {
            Some(v) => Ok(Some(v.clone())),
            None => Err(Error::TruncationTooLow { order: series.order(), needed: s.degree as usize }),
        }
    })
}

/// Schur polynomial `s_λ(x_1..x_m)` as a sum over semistandard tableaux.
pub fn schur_oracle(lambda: &[i64], m: u32) -> SymPoly {
    let shape: Vec<usize> = lambda.iter().filter(|&&p| p > 0).map(|&p| p as usize).collect();
    let cells: Vec<(usize, usize)> =
        shape.iter().enumerate().flat_map(|(r, &len)| (0..len).map(move |c| (r, c))).collect();
    let mut filling: Vec<Vec<u32>> = shape.iter().map(|&len| vec![0; len]).collect();
    let mut out = SymPoly::zero();
    fill(&cells, 0, m, &mut filling, &mut out);
    out
}

fn fill(cells: &[(usize, usize)], n: usize, m: u32, t: &mut Vec<Vec<u32>>, out: &mut SymPoly) {
    if n == cells.len() {
        let mono = Monomial::from_factors(t.iter().flatten().map(|&v| (x(v), 1)));
        out.add_term(mono, BigInt::one());
        return;
    }
    let (r, c) = cells[n];
    let lo = if c > 0 { t[r][c - 1] } else { 1 };
    let lo = if r > 0 { lo.max(t[r - 1][c] + 1) } else { lo };
    for v in lo..=m {
        t[r][c] = v;
        fill(cells, n + 1, m, t, out);
    }
}

/// Schur Q-polynomial `Q_λ(x_1..x_m)`, from the Hall-Littlewood
/// symmetrization at `t = -1`:
///
/// `Q_λ = 2^ℓ / (m-ℓ)! · Σ_{w ∈ S_m} w(x^λ ∏_{i<=ℓ, i<j} (x_i + x_j)/(x_i - x_j))`.
///
/// The sum is put over the Vandermonde denominator and divided out exactly.
pub fn qfunction_oracle(lambda: &[i64], m: u32) -> Result<SymPoly> {
    let parts: Vec<i64> = lambda.iter().copied().filter(|&p| p != 0).collect();
    if parts.iter().any(|&p| p < 0) || parts.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::NotStrict);
    }
    let ell = parts.len();
    let m = m as usize;
    if ell > m {
        return Ok(SymPoly::zero());
    }
    let xs: Vec<SymPoly> = (1..=m as u32).map(|i| SymPoly::var(x(i))).collect();
    // numerator before symmetrization, in positions 0..m
    let base = |w: &[usize]| -> SymPoly {
        let mut acc = SymPoly::one();
        for (i, &p) in parts.iter().enumerate() {
            acc = &acc * &xs[w[i]].pow(p as u32);
        }
        for i in 0..m {
            for j in i + 1..m {
                let f = if i < ell { &xs[w[i]] + &xs[w[j]] } else { &xs[w[i]] - &xs[w[j]] };
                acc = &acc * &f;
            }
        }
        acc
    };
    let mut numerator = SymPoly::zero();
    for (w, sign) in permutations(m) {
        let term = base(&w);
        if sign {
            numerator += term;
        } else {
            numerator -= term;
        }
    }
    let mut quotient = numerator;
    for i in 1..=m as u32 {
        for j in i + 1..=m as u32 {
            quotient = quotient.div_exact_binomial(x(i), x(j))?;
        }
    }
    let stab: u64 = (1..=(m - ell) as u64).product();
    let scale = BigInt::from(1u64 << ell);
    let stab = BigInt::from(stab);
    let mut out = SymPoly::zero();
    for (mono, c) in quotient.terms() {
        let scaled = c * &scale;
        if &scaled % &stab != BigInt::from(0) {
            return Err(Error::InexactDivision(format!("by {}!", m - ell)));
        }
        out.add_term(mono.clone(), scaled / &stab);
    }
    Ok(out)
}

/// All permutations of `0..n` with their sign (`true` for even).
fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    let mut out = vec![(vec![], true)];
    for k in 0..n {
        let mut next = Vec::with_capacity(out.len() * (k + 1));
        for (w, sign) in &out {
            // insert k at position pos: it passes k - pos larger entries
            for pos in 0..=k {
                let mut v = w.clone();
                v.insert(pos, k);
                next.push((v, *sign == ((k - pos) % 2 == 0)));
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::{schur_delta, theta, DeltaMethod};

    fn xp(i: u32) -> SymPoly {
        SymPoly::var(x(i))
    }

    #[test]
    fn series_examples() {
        let t = xp(1);
        let s = chern_series(&VirtualBundle::new(vec![], vec![t.clone()]), 3).unwrap();
        let expected = [SymPoly::one(), -t.clone(), t.pow(2), -t.pow(3)];
        assert_eq!(s.coeffs(), &expected);
        let u = xp(2);
        let s = chern_series(&VirtualBundle::new(vec![u.clone()], vec![t.clone()]), 2).unwrap();
        assert_eq!(s.coeff(1).unwrap(), &(&u - &t));
        let (u1, u2) = (xp(3), xp(4));
        let vb = VirtualBundle::new(vec![u1.clone(), u2.clone()], vec![t.clone()]);
        assert_eq!(vb.rank(), 1);
        let s = chern_series(&vb, 2).unwrap();
        let expected = &(&(&u1 * &u2) - &(&(&u1 + &u2) * &t)) + &t.pow(2);
        assert_eq!(s.coeff(2).unwrap(), &expected);
    }

    #[test]
    fn permutation_signs() {
        let perms = permutations(3);
        assert_eq!(perms.len(), 6);
        for (w, sign) in perms {
            let inversions = (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).filter(|&(i, j)| w[i] > w[j]).count();
            assert_eq!(sign, inversions % 2 == 0, "{w:?}");
        }
    }

    #[test]
    fn schur_oracle_examples() {
        assert_eq!(schur_oracle(&[1], 2), &xp(1) + &xp(2));
        let expected = &(&xp(1).pow(2) * &xp(2)) + &(&xp(1) * &xp(2).pow(2));
        assert_eq!(schur_oracle(&[2, 1], 2), expected);
        assert!(schur_oracle(&[1, 1, 1], 2).is_zero());
    }

    #[test]
    fn q_oracle_examples() {
        assert_eq!(qfunction_oracle(&[1], 1).unwrap(), xp(1).scale(&2.into()));
        assert_eq!(qfunction_oracle(&[1], 2).unwrap(), (&xp(1) + &xp(2)).scale(&2.into()));
        let expected = (&(&xp(1) * &xp(2)) * &(&xp(1) + &xp(2))).scale(&4.into());
        assert_eq!(qfunction_oracle(&[2, 1], 2).unwrap(), expected);
        assert!(matches!(qfunction_oracle(&[1, 1], 2), Err(Error::NotStrict)));
    }

    #[test]
    fn jacobi_trudi_small() {
        let lambda = [2, 1];
        let delta = schur_delta(&lambda, DeltaMethod::Determinant).unwrap();
        let assign = ChernAssignment::uniform(2, EntryClasses::Chern(h_series(2, 4).unwrap())).unwrap();
        let value = specialize_labels(&delta, &[1, 2], &assign).unwrap();
        assert_eq!(value, schur_oracle(&lambda, 2));
    }

    #[test]
    fn full_rho_single_row_is_q() {
        let poly = theta(&[0], &[1]).unwrap();
        let assign = ChernAssignment::uniform(1, EntryClasses::Chern(q_series(1, 2).unwrap())).unwrap();
        assert_eq!(specialize_labels(&poly, &[1], &assign).unwrap(), xp(1).scale(&2.into()));
    }

    #[test]
    fn identity_assignment() {
        let poly = schur_delta(&[2, 1], DeltaMethod::Determinant).unwrap();
        let poly = poly.substitute(|s| (s.degree == 0).then(SymPoly::one));
        let mut assign = ChernAssignment::new();
        for i in 1..=2u32 {
            let coeffs = (0..=4).map(|r| if r == 0 { SymPoly::one() } else { SymPoly::var(Symbol::c(i, r)) }).collect();
            assign.insert(i as usize, EntryClasses::Chern(Series::new(coeffs, 4))).unwrap();
        }
        assert_eq!(specialize_labels(&poly, &[1, 2], &assign).unwrap(), poly);
    }

    #[test]
    fn specialization_errors() {
        let poly = SymPoly::var(Symbol::c(1, 3));
        let short = ChernAssignment::uniform(1, EntryClasses::Chern(h_series(1, 2).unwrap())).unwrap();
        assert!(matches!(specialize_labels(&poly, &[1], &short), Err(Error::TruncationTooLow { .. })));
        assert!(matches!(specialize_labels(&poly, &[2], &short), Err(Error::MissingEntry(2))));
        let split = ChernAssignment::uniform(1, EntryClasses::Split(h_series(1, 4).unwrap())).unwrap();
        assert!(matches!(specialize_labels(&poly, &[1], &split), Err(Error::KindMismatch(_))));
        let mut bad = ChernAssignment::new();
        assert!(bad.insert(1, EntryClasses::Chern(Series::new(vec![SymPoly::constant(2)], 2))).is_err());
    }

    #[test]
    fn split_keeps_e_abstract() {
        let poly = &SymPoly::var(Symbol::d(2, 1)) + &SymPoly::var(Symbol::e(2, 1));
        let assign = ChernAssignment::uniform(3, EntryClasses::Split(h_series(1, 2).unwrap())).unwrap();
        let value = specialize_labels(&poly, &[1, 3], &assign).unwrap();
        assert_eq!(value, &xp(1) + &SymPoly::var(Symbol::e(3, 1)));
    }
}
