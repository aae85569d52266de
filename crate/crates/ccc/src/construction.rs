//! Code construction by fiber selection.
//!
//! Every length-r word of a fixed composition is mapped to a class of the
//! quotient group (F_r[x]/(x^d0))^* / F_r^*: coordinate i (for i = 1..r-1)
//! contributes the factor (x - alpha_i) raised to the word's i-th symbol,
//! where alpha_i is the i-th element of the canonical field order; the last
//! coordinate pairs with alpha_0 = 0 and contributes no factor. The quotient
//! group has r^(d0-1) classes, so the largest fiber holds at least
//! multinomial / r^(d0-1) words, and that fiber is the code.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::composition::{Composition, Word};
use crate::field::{Field, FieldError};
use crate::ring::{CosetRep, ResidueRing, RingError};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("composition must sum to the field size r = {r} (got n = {n})")]
    LengthMismatch { n: usize, r: u64 },
    #[error("d0 must satisfy 1 <= d0 <= r - 2 (r = {r}, got d0 = {d0})")]
    TruncationOutOfRange { d0: u32, r: u64 },
    #[error("alphabet size q = {q} must not exceed the field size r = {r}")]
    AlphabetTooLarge { q: usize, r: u64 },
    #[error("word must have exactly r = {r} coordinates (got {len})")]
    InvalidLength { len: usize, r: u64 },
    #[error("word symbol {symbol} is outside the alphabet of size {q}")]
    SymbolOutOfRange { symbol: u8, q: usize },
    #[error("composition space of {0} words is too large to enumerate")]
    SpaceTooLarge(BigUint),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// `e` when the characteristic `p` divides it, `e - 1` otherwise. This is the
/// term that enters the guaranteed minimum distance.
pub fn char_adjusted(p: u64, e: u64) -> u64 {
    if e % p == 0 {
        e
    } else {
        e - 1
    }
}

/// The minimum distance the construction claims, if any.
///
/// For p >= q the value is char_adjusted(p, d0) + 2; the test suite confirms
/// it on every desk-scale instance. The extra case p = 2, q = 3, d0 = 2
/// reports 3 as part of this tool's stated contract, but measurement refutes
/// that value: swapping symbols 0 and 2 between two coordinates multiplies
/// the factor product by (x - a)^(+-2), and squares of linear factors are
/// scalars mod x^2 in characteristic 2, so every fiber at composition
/// [3,3,2] over the 8-element field holds pairs at distance 2 (see the
/// counterexample tests). Trust the verify module over this value there.
/// For all other parameters the construction runs with no claim at all.
pub fn guaranteed_distance(p: u64, q: usize, d0: u32) -> Option<usize> {
    if p >= q as u64 {
        Some(char_adjusted(p, d0 as u64) as usize + 2)
    } else if p == 2 && q == 3 && d0 == 2 {
        Some(3)
    } else {
        None
    }
}

/// Parameters of one construction instance.
#[derive(Debug, Clone)]
pub struct ConstructionParams {
    field: Field,
    d0: u32,
    comp: Composition,
}

impl ConstructionParams {
    pub fn new(field: Field, d0: u32, comp: Composition) -> Result<Self, ConstructionError> {
        let r = field.r();
        if comp.n() as u64 != r {
            return Err(ConstructionError::LengthMismatch { n: comp.n(), r });
        }
        if d0 < 1 || d0 as u64 > r - 2 {
            return Err(ConstructionError::TruncationOutOfRange { d0, r });
        }
        if comp.q() as u64 > r {
            return Err(ConstructionError::AlphabetTooLarge { q: comp.q(), r });
        }
        Ok(ConstructionParams { field, d0, comp })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn d0(&self) -> u32 {
        self.d0
    }

    pub fn comp(&self) -> &Composition {
        &self.comp
    }

    pub fn q(&self) -> usize {
        self.comp.q()
    }

    pub fn r(&self) -> u64 {
        self.field.r()
    }

    /// Smallest size the largest fiber can have:
    /// ceil(multinomial / r^(d0-1)).
    pub fn pigeonhole_bound(&self) -> BigUint {
        let classes = BigUint::from(self.r()).pow(self.d0 - 1);
        (self.comp.multinomial() + &classes - 1u32) / classes
    }

    pub fn guaranteed_distance(&self) -> Option<usize> {
        guaranteed_distance(self.field.p(), self.q(), self.d0)
    }
}

/// Precomputed word-to-class evaluator: the ring, and the powers
/// (x - alpha_i)^e for every i = 1..r-1 and exponent e < q.
pub struct CosetMap {
    ring: ResidueRing,
    q: usize,
    r: u64,
    powers: Vec<Vec<crate::ring::ResiduePoly>>,
}

impl CosetMap {
    pub fn new(params: &ConstructionParams) -> Result<Self, ConstructionError> {
        Self::over(params.field().clone(), params.d0(), params.q())
    }

    /// The map for an arbitrary truncation order d0 >= 1. The theorem's range
    /// d0 <= r - 2 matters for the distance guarantee, not for the map.
    pub fn over(field: Field, d0: u32, q: usize) -> Result<Self, ConstructionError> {
        assert!(d0 >= 1, "truncation order must be at least 1");
        let r = field.r();
        let elems = field.enumerate();
        let ring = ResidueRing::new(field, d0 as usize);
        let mut powers = Vec::with_capacity(elems.len() - 1);
        for alpha in &elems[1..] {
            let base = ring.x_minus(alpha)?;
            let mut row = Vec::with_capacity(q);
            row.push(ring.one());
            for e in 1..q {
                let prev = &row[e - 1];
                row.push(ring.mul(prev, &base)?);
            }
            powers.push(row);
        }
        Ok(CosetMap { ring, q, r, powers })
    }

    /// The class of a word in the unit quotient group.
    pub fn image(&self, word: &Word) -> Result<CosetRep, ConstructionError> {
        if word.len() as u64 != self.r {
            return Err(ConstructionError::InvalidLength {
                len: word.len(),
                r: self.r,
            });
        }
        let mut acc = self.ring.one();
        // The last coordinate pairs with the zero element and is skipped.
        for (j, &sym) in word.symbols()[..word.len() - 1].iter().enumerate() {
            if sym as usize >= self.q {
                return Err(ConstructionError::SymbolOutOfRange {
                    symbol: sym,
                    q: self.q,
                });
            }
            if sym > 0 {
                acc = self.ring.mul(&acc, &self.powers[j][sym as usize])?;
            }
        }
        Ok(self.ring.canonical_rep(&acc)?)
    }

    pub fn ring(&self) -> &ResidueRing {
        &self.ring
    }
}

/// Convenience wrapper: the class of one word under the given parameters.
pub fn coset_image(params: &ConstructionParams, word: &Word) -> Result<CosetRep, ConstructionError> {
    CosetMap::new(params)?.image(word)
}

/// The constructed code: one full fiber of the word-to-class map.
#[derive(Debug, Clone)]
pub struct ConstructedCode {
    pub params: ConstructionParams,
    /// Class label of the selected fiber.
    pub coset: CosetRep,
    /// Fiber contents in lexicographic word order.
    pub words: Vec<Word>,
    pub guaranteed_d: Option<usize>,
    /// Exact minimum distance, once someone has computed it.
    pub verified_d: Option<usize>,
}

impl ConstructedCode {
    pub fn size(&self) -> usize {
        self.words.len()
    }

    pub fn pigeonhole_bound(&self) -> BigUint {
        self.params.pigeonhole_bound()
    }
}

/// Per-class word counts over the whole composition space, sorted by class
/// label. The counts sum to the multinomial.
pub fn fiber_census(
    params: &ConstructionParams,
    threads: usize,
) -> Result<Vec<(Vec<u64>, u64)>, ConstructionError> {
    let map = CosetMap::new(params)?;
    let counts = count_fibers(params, &map, threads)?;
    let mut pairs: Vec<(Vec<u64>, u64)> = counts.into_iter().collect();
    pairs.sort();
    Ok(pairs)
}

/// Build the code: count words per class, pick the largest fiber (ties go to
/// the lexicographically smallest class label), then collect exactly that
/// fiber in a second enumeration pass.
pub fn build_code(
    params: &ConstructionParams,
    threads: usize,
) -> Result<ConstructedCode, ConstructionError> {
    let map = CosetMap::new(params)?;
    let counts = count_fibers(params, &map, threads)?;

    let (winner, _count) = counts
        .into_iter()
        .max_by(|(ka, ca), (kb, cb)| ca.cmp(cb).then_with(|| kb.cmp(ka)))
        .expect("composition space is never empty");

    let total = space_size(params)?;
    let chunks = chunk_ranges(total, threads);
    let collected: Vec<Vec<Word>> = run_chunks(&chunks, |start, len| {
        let mut fiber = Vec::new();
        for word in iter_range(params, start, len)? {
            if map.image(&word)?.coeff_indices() == winner {
                fiber.push(word);
            }
        }
        Ok(fiber)
    })?;
    let words: Vec<Word> = collected.into_iter().flatten().collect();

    let coset = map
        .ring()
        .canonical_rep(&map.ring().poly_from_indices(&winner)?)?;
    Ok(ConstructedCode {
        params: params.clone(),
        coset,
        words,
        guaranteed_d: params.guaranteed_distance(),
        verified_d: None,
    })
}

fn space_size(params: &ConstructionParams) -> Result<u64, ConstructionError> {
    let total = params.comp().multinomial();
    total
        .to_u64()
        .ok_or(ConstructionError::SpaceTooLarge(total))
}

fn iter_range(
    params: &ConstructionParams,
    start: u64,
    len: u64,
) -> Result<impl Iterator<Item = Word> + '_, ConstructionError> {
    let first = params
        .comp()
        .unrank(&BigUint::from(start))
        .expect("chunk start below the space size");
    Ok(params.comp().words_from(first).take(len as usize))
}

fn chunk_ranges(total: u64, threads: usize) -> Vec<(u64, u64)> {
    let threads = threads.max(1).min(total.max(1) as usize) as u64;
    (0..threads)
        .map(|t| {
            let start = total * t / threads;
            let end = total * (t + 1) / threads;
            (start, end - start)
        })
        .collect()
}

/// Run one closure per rank range, in parallel when there is more than one
/// range, and return the results in range order.
fn run_chunks<T, F>(chunks: &[(u64, u64)], f: F) -> Result<Vec<T>, ConstructionError>
where
    T: Send,
    F: Fn(u64, u64) -> Result<T, ConstructionError> + Sync,
{
    if chunks.len() == 1 {
        return Ok(vec![f(chunks[0].0, chunks[0].1)?]);
    }
    let f = &f;
    std::thread::scope(|scope| {
        let handles: Vec<_> = chunks
            .iter()
            .map(|&(start, len)| scope.spawn(move || f(start, len)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}

fn count_fibers(
    params: &ConstructionParams,
    map: &CosetMap,
    threads: usize,
) -> Result<HashMap<Vec<u64>, u64>, ConstructionError> {
    let total = space_size(params)?;
    let chunks = chunk_ranges(total, threads);
    let partials: Vec<HashMap<Vec<u64>, u64>> = run_chunks(&chunks, |start, len| {
        let mut counts: HashMap<Vec<u64>, u64> = HashMap::new();
        for word in iter_range(params, start, len)? {
            *counts.entry(map.image(&word)?.coeff_indices()).or_insert(0) += 1;
        }
        Ok(counts)
    })?;

    let mut merged: HashMap<Vec<u64>, u64> = HashMap::new();
    for partial in partials {
        for (key, count) in partial {
            *merged.entry(key).or_insert(0) += count;
        }
    }
    Ok(merged)
}
