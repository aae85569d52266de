//! Ground truth: exact minimum distance by full pairwise scan, and the exact
//! maximum code size on small instances by branch-and-bound clique search.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::composition::{hamming, Composition, Word};
use thiserror::Error;

/// Default vertex cap for the exhaustive maximum-code search.
pub const DEFAULT_ORACLE_CAP: usize = 5000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("need at least two words to compute a minimum distance")]
    TooFewWords,
    #[error("words must all have the same length")]
    LengthMismatch,
    #[error("instance has {vertices} words, exceeding the cap of {cap}")]
    InstanceTooLarge { vertices: BigUint, cap: usize },
    #[error("word does not match the declared composition")]
    CompositionMismatch,
    #[error("duplicate word in code")]
    DuplicateWord,
}

/// A code together with its exactly measured parameters.
#[derive(Debug, Clone)]
pub struct VerifiedCode {
    pub words: Vec<Word>,
    pub comp: Composition,
    pub size: usize,
    /// None when the code has fewer than two words.
    pub min_distance: Option<usize>,
}

/// Exact minimum Hamming distance over all unordered pairs.
pub fn exact_min_distance(words: &[Word]) -> Result<usize, VerifyError> {
    if words.len() < 2 {
        return Err(VerifyError::TooFewWords);
    }
    let mut best = usize::MAX;
    for (i, u) in words.iter().enumerate() {
        for v in &words[i + 1..] {
            let d = hamming(u, v).map_err(|_| VerifyError::LengthMismatch)?;
            best = best.min(d);
        }
    }
    Ok(best)
}

/// True iff every word has exactly the declared composition.
pub fn check_composition(words: &[Word], comp: &Composition) -> bool {
    words.iter().all(|w| comp.contains(w))
}

/// Validate a word list against a composition and measure it.
pub fn verified(words: Vec<Word>, comp: &Composition) -> Result<VerifiedCode, VerifyError> {
    if !check_composition(&words, comp) {
        return Err(VerifyError::CompositionMismatch);
    }
    let mut seen = std::collections::HashSet::new();
    for w in &words {
        if !seen.insert(w.clone()) {
            return Err(VerifyError::DuplicateWord);
        }
    }
    let min_distance = if words.len() >= 2 {
        Some(exact_min_distance(&words)?)
    } else {
        None
    };
    Ok(VerifiedCode {
        size: words.len(),
        comp: comp.clone(),
        min_distance,
        words,
    })
}

/// Exact maximum size of a code of the given composition with minimum
/// distance >= d, plus one witness attaining it.
///
/// The search is a maximum clique over the graph whose vertices are the
/// composition's words (lexicographic order) and whose edges join pairs at
/// distance >= d. Greedy-coloring bounds prune the branch and bound. The
/// whole procedure is deterministic.
pub fn exact_max_code(
    comp: &Composition,
    d: usize,
    cap: usize,
) -> Result<(usize, Vec<Word>), VerifyError> {
    let total = comp.multinomial();
    let vertices = match total.to_usize() {
        Some(v) if v <= cap => v,
        _ => {
            return Err(VerifyError::InstanceTooLarge {
                vertices: total,
                cap,
            })
        }
    };

    let words: Vec<Word> = comp.words().collect();
    debug_assert_eq!(words.len(), vertices);

    // Two distinct words of one composition always differ in at least two
    // coordinates, so for d <= 2 the whole space qualifies.
    if d <= 2 {
        return Ok((words.len(), words));
    }

    let blocks = vertices.div_ceil(64);
    let mut adj = vec![vec![0u64; blocks]; vertices];
    for i in 0..vertices {
        for j in i + 1..vertices {
            if hamming(&words[i], &words[j]).expect("equal lengths") >= d {
                adj[i][j / 64] |= 1 << (j % 64);
                adj[j][i / 64] |= 1 << (i % 64);
            }
        }
    }

    let mut best: Vec<usize> = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    let all: Vec<usize> = (0..vertices).collect();
    expand(&adj, &mut current, &all, &mut best);

    let witness = best.iter().map(|&i| words[i].clone()).collect();
    Ok((best.len(), witness))
}

fn has_edge(adj: &[Vec<u64>], u: usize, v: usize) -> bool {
    adj[u][v / 64] & (1 << (v % 64)) != 0
}

/// Branch and bound with greedy coloring: candidates are grouped into color
/// classes (mutually non-adjacent within a class), so a clique can take at
/// most one vertex per class. Candidates are expanded from the highest color
/// down, cutting off as soon as color count plus clique size cannot beat the
/// incumbent.
fn expand(adj: &[Vec<u64>], current: &mut Vec<usize>, candidates: &[usize], best: &mut Vec<usize>) {
    if candidates.is_empty() {
        if current.len() > best.len() {
            *best = current.clone();
        }
        return;
    }

    // Greedy coloring in vertex order; classes keep vertex order too.
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in candidates {
        match classes
            .iter_mut()
            .find(|class| class.iter().all(|&u| !has_edge(adj, u, v)))
        {
            Some(class) => class.push(v),
            None => classes.push(vec![v]),
        }
    }
    let mut ordered: Vec<(usize, usize)> = Vec::with_capacity(candidates.len());
    for (color, class) in classes.iter().enumerate() {
        for &v in class {
            ordered.push((v, color + 1));
        }
    }

    for i in (0..ordered.len()).rev() {
        let (v, color) = ordered[i];
        if current.len() + color <= best.len() {
            return; // every earlier candidate has an equal or lower color
        }
        let pruned: Vec<usize> = ordered[..i]
            .iter()
            .map(|&(u, _)| u)
            .filter(|&u| has_edge(adj, u, v))
            .collect();
        current.push(v);
        expand(adj, current, &pruned, best);
        current.pop();
    }
}
