//! Constant-composition codes over Z_q: a quotient-group construction, exact
//! size bounds, and brute-force verification.
//!
//! The pipeline: fix a finite field of size r and a composition summing to r,
//! map every word of that composition into the unit quotient group of the
//! truncated polynomial ring F_r[x]/(x^d0), and keep the largest fiber. The
//! fiber has at least multinomial / r^(d0-1) words by pigeonhole, and its
//! minimum distance can be both guaranteed analytically (for p >= q, plus one
//! characteristic-2 special case) and measured exactly.
//!
//! Modules:
//! - [`field`]: GF(p^k) arithmetic with a canonical element order.
//! - [`ring`]: F_r[x]/(x^m), its units, canonical scalar-class labels.
//! - [`composition`]: word spaces, streaming enumeration, Hamming distance.
//! - [`construction`]: the word-to-class map and fiber selection.
//! - [`bounds`]: exact lower/upper bound formulas and reporting.
//! - [`verify`]: exact minimum distance and an exact maximum-code oracle.
//! - [`codefile`]: the on-disk code format.

pub mod bounds;
pub mod codefile;
pub mod composition;
pub mod construction;
pub mod field;
pub mod ring;
pub mod verify;

pub use bounds::{BoundEntry, BoundKind, BoundReport, BoundsError, Ratio};
pub use codefile::{CodeFile, CodeFileError};
pub use composition::{hamming, multinomial_of, Composition, CompositionError, Word};
pub use construction::{
    build_code, char_adjusted, coset_image, fiber_census, guaranteed_distance, ConstructedCode,
    ConstructionError, ConstructionParams, CosetMap,
};
pub use field::{Field, FieldElement, FieldError};
pub use ring::{CosetRep, ResiduePoly, ResidueRing, RingError};
pub use verify::{
    check_composition, exact_max_code, exact_min_distance, verified, VerifiedCode, VerifyError,
    DEFAULT_ORACLE_CAP,
};
