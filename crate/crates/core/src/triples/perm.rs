use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{Family, NormalizedTriple, TripleError};
use crate::error::{Error, Result};

/// A signed permutation in one-line notation; negative entries are barred.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignedPermutation {
    pub word: Vec<i64>,
}

impl SignedPermutation {
    /// Checks that the absolute values are exactly `1..=n`.
    pub fn new(word: Vec<i64>) -> Result<Self> {
        let abs: BTreeSet<u64> = word.iter().map(|x| x.unsigned_abs()).collect();
        if abs.len() != word.len() || abs.iter().copied().ne(1..=word.len() as u64) {
            return Err(Error::RecipeConflict(format!("{word:?} is not a signed permutation")));
        }
        Ok(SignedPermutation { word })
    }
}

/// Length in the hyperoctahedral group: inversions plus the absolute values
/// of the negative entries.
pub fn signed_perm_length(w: &SignedPermutation) -> u64 {
    let word = &w.word;
    let mut inversions = 0;
    for i in 0..word.len() {
        for j in i + 1..word.len() {
            if word[i] > word[j] {
                inversions += 1;
            }
        }
    }
    let negatives: u64 = word.iter().filter(|&&x| x < 0).map(|x| x.unsigned_abs()).sum();
    inversions + negatives
}

/// Builds `w(τ)` for a type C triple: entry `i` places `k_i - k_{i-1}`
/// increasing values, consecutive among unused absolute values and ending at
/// the largest one `<= -q_i`, into the free positions from `p_i` rightwards.
/// Remaining positions get the smallest unused positive integers.
///
/// The word is as long as needed for its absolute values to fill `1..=n`.
pub fn signed_permutation_c(t: &NormalizedTriple) -> Result<SignedPermutation> {
    if t.family != Family::C {
        return Err(TripleError::NotTypeC.into());
    }
    let mut placed: BTreeMap<i64, i64> = BTreeMap::new();
    let mut used: BTreeSet<u64> = BTreeSet::new();
    let mut prev_k = 0;
    for i in 0..t.k.len() {
        let count = (t.k[i] - prev_k) as usize;
        prev_k = t.k[i];
        let mut block = Vec::with_capacity(count);
        let mut v = -t.q[i];
        while block.len() < count {
            let a = v.unsigned_abs();
            if v != 0 && !used.contains(&a) {
                block.push(v);
                used.insert(a);
            }
            v -= 1;
        }
        block.reverse();
        let mut pos = t.p[i];
        if pos < 1 {
            return Err(Error::RecipeConflict(format!("start position {pos}")));
        }
        for value in block {
            while placed.contains_key(&pos) {
                pos += 1;
            }
            placed.insert(pos, value);
        }
    }
    // positions past the last placed value are gaps too, up to the largest
    // absolute value used
    let last = placed.keys().next_back().copied().unwrap_or(0);
    let n = last.max(used.iter().next_back().copied().unwrap_or(0) as i64);
    let mut fill = (1..).filter(|x: &u64| !used.contains(x));
    let word = (1..=n).map(|pos| placed.get(&pos).copied().unwrap_or_else(|| fill.next().unwrap() as i64)).collect();
    SignedPermutation::new(word)
}
