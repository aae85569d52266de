//! Exact size bounds for constant-composition codes.
//!
//! Lower bounds at distance 3 come in three flavors (a general form driven by
//! a coprimality gap, a coprime-length special case, and a ternary special
//! case), the packing upper bound works at any distance, and the construction
//! bound turns the quotient-group pigeonhole into a lower bound whenever its
//! distance guarantee covers the requested distance. All values are exact
//! integer arithmetic; each bound is reported as the underlying rational plus
//! its integer rounding.

use num_bigint::BigUint;
use num_integer::Integer;

use crate::composition::{multinomial_of, Composition};
use crate::construction::guaranteed_distance;
use crate::field::is_prime;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("q must be at least 3 to define the prime product")]
    QTooSmall,
    #[error("s = {s} must lie in [0, {q_prod} - 1]")]
    SOutOfRange { s: u64, q_prod: u64 },
    #[error("this bound applies only to q = 3 (got q = {0})")]
    WrongQ(usize),
    #[error("no admissible delta vector exists for distance {d} on this composition")]
    NoAdmissibleDelta { d: usize },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

/// Product of all primes p <= q - 1, for q >= 3.
pub fn primorial(q: usize) -> Result<u64, BoundsError> {
    if q < 3 {
        return Err(BoundsError::QTooSmall);
    }
    let mut acc: u64 = 1;
    for p in 2..=(q as u64 - 1) {
        if is_prime(p) {
            acc = acc
                .checked_mul(p)
                .ok_or_else(|| BoundsError::InvalidParams("prime product overflows".into()))?;
        }
    }
    Ok(acc)
}

/// Smallest l >= s that is coprime to the prime product of q.
/// Defined for 0 <= s <= Q - 1.
pub fn next_coprime(s: u64, q: usize) -> Result<u64, BoundsError> {
    let q_prod = primorial(q)?;
    if s > q_prod - 1 {
        return Err(BoundsError::SOutOfRange { s, q_prod });
    }
    let mut l = s;
    while l.gcd(&q_prod) != 1 {
        l += 1;
    }
    Ok(l)
}

/// The coprimality gap at n: next_coprime(n mod Q) - (n mod Q).
fn coprime_gap(n: usize, q: usize) -> Result<u64, BoundsError> {
    let q_prod = primorial(q)?;
    let t = n as u64 % q_prod;
    Ok(next_coprime(t, q)? - t)
}

/// General distance-3 lower bound: floor(multinomial / (n + gap)).
pub fn d3_lower_general(comp: &Composition) -> Result<BigUint, BoundsError> {
    let n = comp.n();
    let gap = coprime_gap(n, comp.q())?;
    Ok(comp.multinomial() / (n as u64 + gap))
}

/// Distance-3 lower bound for lengths coprime to the prime product:
/// floor(multinomial / n). None when gcd(n, Q) != 1.
pub fn d3_lower_coprime(comp: &Composition) -> Result<Option<BigUint>, BoundsError> {
    let q_prod = primorial(comp.q())?;
    let n = comp.n() as u64;
    if n.gcd(&q_prod) != 1 {
        return Ok(None);
    }
    Ok(Some(comp.multinomial() / n))
}

/// Ternary distance-3 lower bound: floor(multinomial / n) for odd length,
/// floor(multinomial / (n + 1)) for even length.
pub fn d3_lower_ternary(comp: &Composition) -> Result<BigUint, BoundsError> {
    if comp.q() != 3 {
        return Err(BoundsError::WrongQ(comp.q()));
    }
    let n = comp.n() as u64;
    let den = if n % 2 == 1 { n } else { n + 1 };
    Ok(comp.multinomial() / den)
}

/// Packing upper bound at distance d.
///
/// With delta = floor((d-1)/2), fix a symbol i and split delta across the
/// other symbols without exceeding any weight; each split gives the bound
/// floor(multinomial / multinomial(w_i + delta; w_i, deltas)). The search
/// takes the minimum over every i and every admissible split, i.e. it
/// maximizes the denominator exhaustively. A symbol i is eligible only when
/// delta < sum of the other weights.
pub fn packing_upper(comp: &Composition, d: usize) -> Result<BigUint, BoundsError> {
    if d < 1 {
        return Err(BoundsError::InvalidParams("distance must be at least 1".into()));
    }
    let delta = (d - 1) / 2;
    match best_packing_denominator(comp, delta) {
        Some(den) => Ok(comp.multinomial() / den),
        None => Err(BoundsError::NoAdmissibleDelta { d }),
    }
}

/// Enumerate the splits of `remaining` over symbols `pos..q` (skipping i,
/// respecting the weights) and keep the largest denominator seen.
fn max_denominator(
    weights: &[usize],
    i: usize,
    remaining: usize,
    pos: usize,
    split: &mut Vec<usize>,
    best: &mut Option<BigUint>,
) {
    if pos == weights.len() {
        if remaining == 0 {
            let mut parts = Vec::with_capacity(weights.len() + 1);
            parts.push(weights[i]);
            parts.extend_from_slice(split);
            let den = multinomial_of(&parts);
            if best.as_ref().map_or(true, |b| den > *b) {
                *best = Some(den);
            }
        }
        return;
    }
    if pos == i {
        split[pos] = 0;
        max_denominator(weights, i, remaining, pos + 1, split, best);
        return;
    }
    let cap = remaining.min(weights[pos]);
    for take in 0..=cap {
        split[pos] = take;
        max_denominator(weights, i, remaining - take, pos + 1, split, best);
    }
    split[pos] = 0;
}

/// The construction's pigeonhole bound as a code size lower bound:
/// ceil(multinomial / r^(d0-1)) words, at the guaranteed distance (if any).
pub fn construction_lower(
    p: u64,
    k: u32,
    d0: u32,
    comp: &Composition,
) -> Result<(Option<usize>, BigUint), BoundsError> {
    if !is_prime(p) {
        return Err(BoundsError::InvalidParams(format!("{p} is not prime")));
    }
    if k < 1 {
        return Err(BoundsError::InvalidParams("k must be at least 1".into()));
    }
    let r = p
        .checked_pow(k)
        .ok_or_else(|| BoundsError::InvalidParams("field size overflows".into()))?;
    if comp.n() as u64 != r {
        return Err(BoundsError::InvalidParams(format!(
            "composition must sum to the field size r = {r} (got n = {})",
            comp.n()
        )));
    }
    if d0 < 1 || d0 as u64 > r - 2 {
        return Err(BoundsError::InvalidParams(format!(
            "d0 must satisfy 1 <= d0 <= r - 2 (r = {r}, got d0 = {d0})"
        )));
    }
    if comp.q() as u64 > r {
        return Err(BoundsError::InvalidParams(format!(
            "alphabet size q = {} must not exceed the field size r = {r}",
            comp.q()
        )));
    }
    let classes = BigUint::from(r).pow(d0 - 1);
    let size = (comp.multinomial() + &classes - 1u32) / classes;
    Ok((guaranteed_distance(p, comp.q(), d0), size))
}

/// An unreduced exact quotient, kept in the shape the formula produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ratio {
    pub num: BigUint,
    pub den: BigUint,
}

impl std::fmt::Display for Ratio {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Lower,
    Upper,
}

impl BoundKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundKind::Lower => "lower",
            BoundKind::Upper => "upper",
        }
    }
}

/// One bound evaluation: either an applicable value with its exact rational,
/// or a note saying why it does not apply here.
#[derive(Debug, Clone)]
pub struct BoundEntry {
    pub name: &'static str,
    pub kind: BoundKind,
    pub applicable: bool,
    pub note: Option<String>,
    pub exact: Option<Ratio>,
    pub value: Option<BigUint>,
}

impl BoundEntry {
    fn applies(name: &'static str, kind: BoundKind, exact: Ratio, value: BigUint) -> Self {
        BoundEntry {
            name,
            kind,
            applicable: true,
            note: None,
            exact: Some(exact),
            value: Some(value),
        }
    }

    fn skipped(name: &'static str, kind: BoundKind, note: String) -> Self {
        BoundEntry {
            name,
            kind,
            applicable: false,
            note: Some(note),
            exact: None,
            value: None,
        }
    }
}

/// Every bound this crate knows, evaluated on one parameter set.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub comp: Composition,
    pub d: usize,
    /// Construction parameters, when the caller supplied them: (p, k, d0).
    pub construction: Option<(u64, u32, u32)>,
    pub entries: Vec<BoundEntry>,
    pub best_lower: Option<BigUint>,
    pub best_upper: Option<BigUint>,
}

/// Evaluate all bounds for A_q(n, d, composition). `construction` optionally
/// names a field p^k and truncation order d0 to include the construction
/// bound.
pub fn report(
    comp: &Composition,
    d: usize,
    construction: Option<(u64, u32, u32)>,
) -> Result<BoundReport, BoundsError> {
    if d < 1 {
        return Err(BoundsError::InvalidParams("distance must be at least 1".into()));
    }
    let q = comp.q();
    let n = comp.n() as u64;
    let mult = comp.multinomial();
    let mut entries = Vec::new();

    if d != 3 {
        let note = "applies only at distance 3".to_string();
        entries.push(BoundEntry::skipped("d3-general", BoundKind::Lower, note.clone()));
        entries.push(BoundEntry::skipped("d3-coprime", BoundKind::Lower, note.clone()));
        entries.push(BoundEntry::skipped("d3-ternary", BoundKind::Lower, note));
    } else if q < 3 {
        let note = "requires q >= 3".to_string();
        entries.push(BoundEntry::skipped("d3-general", BoundKind::Lower, note.clone()));
        entries.push(BoundEntry::skipped("d3-coprime", BoundKind::Lower, note.clone()));
        entries.push(BoundEntry::skipped("d3-ternary", BoundKind::Lower, note));
    } else {
        let gap = coprime_gap(comp.n(), q)?;
        entries.push(BoundEntry::applies(
            "d3-general",
            BoundKind::Lower,
            Ratio {
                num: mult.clone(),
                den: BigUint::from(n + gap),
            },
            d3_lower_general(comp)?,
        ));

        match d3_lower_coprime(comp)? {
            Some(v) => entries.push(BoundEntry::applies(
                "d3-coprime",
                BoundKind::Lower,
                Ratio {
                    num: mult.clone(),
                    den: BigUint::from(n),
                },
                v,
            )),
            None => entries.push(BoundEntry::skipped(
                "d3-coprime",
                BoundKind::Lower,
                "length shares a factor with the prime product".to_string(),
            )),
        }

        if q == 3 {
            let den = if n % 2 == 1 { n } else { n + 1 };
            entries.push(BoundEntry::applies(
                "d3-ternary",
                BoundKind::Lower,
                Ratio {
                    num: mult.clone(),
                    den: BigUint::from(den),
                },
                d3_lower_ternary(comp)?,
            ));
        } else {
            entries.push(BoundEntry::skipped(
                "d3-ternary",
                BoundKind::Lower,
                "requires q = 3".to_string(),
            ));
        }
    }

    match construction {
        Some((p, k, d0)) => {
            let (guarantee, size) = construction_lower(p, k, d0, comp)?;
            let r = BigUint::from(p.pow(k));
            let exact = Ratio {
                num: mult.clone(),
                den: r.pow(d0 - 1),
            };
            match guarantee {
                Some(g) if g >= d => entries.push(BoundEntry::applies(
                    "construction",
                    BoundKind::Lower,
                    exact,
                    size,
                )),
                Some(g) => entries.push(BoundEntry::skipped(
                    "construction",
                    BoundKind::Lower,
                    format!("guaranteed distance {g} is below the requested {d}"),
                )),
                None => entries.push(BoundEntry::skipped(
                    "construction",
                    BoundKind::Lower,
                    "no proved distance guarantee for these parameters".to_string(),
                )),
            }
        }
        None => entries.push(BoundEntry::skipped(
            "construction",
            BoundKind::Lower,
            "needs a field p^k and a truncation order d0".to_string(),
        )),
    }

    match best_packing_denominator(comp, (d - 1) / 2) {
        Some(den) => {
            let value = &mult / &den;
            entries.push(BoundEntry::applies(
                "packing",
                BoundKind::Upper,
                Ratio {
                    num: mult.clone(),
                    den,
                },
                value,
            ));
        }
        None => entries.push(BoundEntry::skipped(
            "packing",
            BoundKind::Upper,
            format!("no admissible delta vector at distance {d}"),
        )),
    }

    let best_lower = entries
        .iter()
        .filter(|e| e.kind == BoundKind::Lower)
        .filter_map(|e| e.value.clone())
        .max();
    let best_upper = entries
        .iter()
        .filter(|e| e.kind == BoundKind::Upper)
        .filter_map(|e| e.value.clone())
        .min();

    Ok(BoundReport {
        comp: comp.clone(),
        d,
        construction,
        entries,
        best_lower,
        best_upper,
    })
}

fn best_packing_denominator(comp: &Composition, delta: usize) -> Option<BigUint> {
    let weights = comp.weights();
    let mut best: Option<BigUint> = None;
    for i in 0..comp.q() {
        let others: usize = weights
            .iter()
            .enumerate()
            .filter(|(l, _)| *l != i)
            .map(|(_, &w)| w)
            .sum();
        if delta >= others {
            continue;
        }
        let mut split = vec![0usize; comp.q()];
        max_denominator(weights, i, delta, 0, &mut split, &mut best);
    }
    best
}

impl BoundReport {
    /// Key-value text, one bound per line.
    pub fn to_text(&self) -> String {
        let weights: Vec<String> = self.comp.weights().iter().map(|w| w.to_string()).collect();
        let mut out = format!(
            "params q={} n={} d={} composition={}\n",
            self.comp.q(),
            self.comp.n(),
            self.d,
            weights.join(",")
        );
        if let Some((p, k, d0)) = self.construction {
            out.push_str(&format!("params field={p}^{k} d0={d0}\n"));
        }
        for e in &self.entries {
            let mut line = format!(
                "bound name={} kind={} applicable={}",
                e.name,
                e.kind.as_str(),
                if e.applicable { "yes" } else { "no" }
            );
            if let Some(exact) = &e.exact {
                line.push_str(&format!(" exact={exact}"));
            }
            if let Some(value) = &e.value {
                line.push_str(&format!(" value={value}"));
            }
            if let Some(note) = &e.note {
                line.push_str(&format!(" note=\"{note}\""));
            }
            out.push_str(&line);
            out.push('\n');
        }
        match &self.best_lower {
            Some(v) => out.push_str(&format!("best_lower={v}\n")),
            None => out.push_str("best_lower=none\n"),
        }
        match &self.best_upper {
            Some(v) => out.push_str(&format!("best_upper={v}\n")),
            None => out.push_str("best_upper=none\n"),
        }
        out
    }
}
