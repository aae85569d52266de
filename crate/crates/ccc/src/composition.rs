//! The space of words with a fixed symbol composition: exact counting,
//! streaming lexicographic enumeration, ranking, and Hamming distance.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompositionError {
    #[error("a composition needs at least two symbol weights (q >= 2)")]
    TooFewSymbols,
    #[error("words must have equal length")]
    LengthMismatch,
    #[error("rank {0} is outside the composition space")]
    RankOutOfRange(BigUint),
    #[error("word does not have the declared composition")]
    WrongComposition,
}

/// A word over Z_q, one symbol per coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Symbol multiplicities [w_0, ..., w_{q-1}]; the word length is their sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Composition {
    weights: Vec<usize>,
}

impl Composition {
    pub fn new(weights: Vec<usize>) -> Result<Self, CompositionError> {
        if weights.len() < 2 {
            return Err(CompositionError::TooFewSymbols);
        }
        Ok(Composition { weights })
    }

    /// Alphabet size.
    pub fn q(&self) -> usize {
        self.weights.len()
    }

    /// Word length n = sum of the weights.
    pub fn n(&self) -> usize {
        self.weights.iter().sum()
    }

    pub fn weights(&self) -> &[usize] {
        &self.weights
    }

    /// Exact size of the word space: n! / (w_0! ... w_{q-1}!).
    pub fn multinomial(&self) -> BigUint {
        multinomial_of(&self.weights)
    }

    /// True iff the word's symbol counts equal the weights exactly.
    pub fn contains(&self, word: &Word) -> bool {
        let mut counts = vec![0usize; self.q()];
        for &s in &word.0 {
            let s = s as usize;
            if s >= counts.len() {
                return false;
            }
            counts[s] += 1;
        }
        counts == self.weights
    }

    /// The lexicographically smallest word: symbols in ascending runs.
    pub fn first_word(&self) -> Word {
        let mut symbols = Vec::with_capacity(self.n());
        for (s, &w) in self.weights.iter().enumerate() {
            symbols.extend(std::iter::repeat(s as u8).take(w));
        }
        Word(symbols)
    }

    /// Stream every word of this composition exactly once, in strictly
    /// increasing lexicographic order. Memory stays constant beyond the
    /// current word.
    pub fn words(&self) -> Words {
        Words {
            next: Some(self.first_word().0),
        }
    }

    /// Stream starting from a given word (inclusive); used to split the
    /// enumeration into rank ranges.
    pub fn words_from(&self, start: Word) -> Words {
        Words {
            next: Some(start.0),
        }
    }

    /// Position of a word in the lexicographic enumeration.
    pub fn rank(&self, word: &Word) -> Result<BigUint, CompositionError> {
        if !self.contains(word) {
            return Err(CompositionError::WrongComposition);
        }
        let mut remaining = self.weights.clone();
        let mut mult = self.multinomial();
        let mut total = self.n();
        let mut rank = BigUint::zero();
        for &sym in &word.0 {
            for s in 0..sym as usize {
                if remaining[s] == 0 {
                    continue;
                }
                rank += &mult * remaining[s] / total;
            }
            mult = &mult * remaining[sym as usize] / total;
            remaining[sym as usize] -= 1;
            total -= 1;
        }
        Ok(rank)
    }

    /// Inverse of [`rank`](Self::rank): the word at a given position.
    pub fn unrank(&self, rank: &BigUint) -> Result<Word, CompositionError> {
        let mut mult = self.multinomial();
        if rank >= &mult {
            return Err(CompositionError::RankOutOfRange(rank.clone()));
        }
        let mut rank = rank.clone();
        let mut remaining = self.weights.clone();
        let mut total = self.n();
        let mut symbols = Vec::with_capacity(total);
        for _ in 0..self.n() {
            for s in 0..self.q() {
                if remaining[s] == 0 {
                    continue;
                }
                let with_s = &mult * remaining[s] / total;
                if rank < with_s {
                    symbols.push(s as u8);
                    mult = with_s;
                    remaining[s] -= 1;
                    total -= 1;
                    break;
                }
                rank -= with_s;
            }
        }
        Ok(Word(symbols))
    }
}

/// n! / (parts[0]! * ... * parts[m-1]!) where n is the sum of the parts.
pub fn multinomial_of(parts: &[usize]) -> BigUint {
    let n: usize = parts.iter().sum();
    let mut num = factorial(n);
    for &w in parts {
        num /= factorial(w);
    }
    num
}

fn factorial(n: usize) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=n {
        acc *= BigUint::from(i);
    }
    acc
}

/// Streaming lexicographic enumeration of a composition's word space.
pub struct Words {
    next: Option<Vec<u8>>,
}

impl Iterator for Words {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_permutation(&mut succ) {
            self.next = Some(succ);
        }
        Some(Word(current))
    }
}

/// Advance to the next permutation in lexicographic order; false at the last.
pub(crate) fn next_permutation(a: &mut [u8]) -> bool {
    let n = a.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Number of coordinates where two equal-length words differ.
pub fn hamming(u: &Word, v: &Word) -> Result<usize, CompositionError> {
    if u.len() != v.len() {
        return Err(CompositionError::LengthMismatch);
    }
    Ok(u.0.iter().zip(&v.0).filter(|(a, b)| a != b).count())
}
