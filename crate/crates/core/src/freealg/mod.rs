//! Free associative Z2-graded algebras over a coefficient field, finite
//! presentations as oriented rewrite systems, and overlap (diamond-lemma)
//! checking.

mod derive;
mod localize;
mod order;
mod overlap;
mod poly;
mod presentation;
pub mod presets;
mod specialize;
mod word;

use thiserror::Error;

use crate::coeff::CoeffError;

pub use derive::{derive_endomorphism_relations, derive_relations, Convention, EntryMatrix, EntryParity};
pub use localize::Localization;
pub use order::MonomialOrder;
pub use overlap::Overlap;
pub use poly::{Poly, PolyDisplay};
pub use presentation::{Generator, Limits, Parity, Presentation, ReductionStrategy, RewriteRule};
pub use specialize::Assignment;
pub use word::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("polynomial uses generator index {index} outside the {available}-letter alphabet of `{presentation}`")]
    GeneratorMismatch { presentation: String, index: usize, available: usize },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("relation cannot be oriented: {0}")]
    NonOrientable(String),
    #[error("zero relation")]
    ZeroRelation,
    #[error("relations are inconsistent: they force 1 = 0")]
    InconsistentRelations,
    #[error("intermediate word of length {len} exceeds the cap of {cap} in `{presentation}`; the rewrite system may not terminate")]
    DegreeBound { presentation: String, len: usize, cap: usize },
    #[error("completion of `{presentation}` exceeded the cap of {cap} rules")]
    CompletionLimit { presentation: String, cap: usize },
    #[error("specialization makes the leading coefficient of `{0}` vanish")]
    SingularSpecialization(String),
    #[error("commutation convention is inconsistent: derived relations force 1 = 0")]
    InconsistentConvention,
    #[error("relations must be homogeneous of degree {expected}; found `{found}`")]
    NotHomogeneous { expected: usize, found: String },
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error("{0}")]
    Source(String),
}
