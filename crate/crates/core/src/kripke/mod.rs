//! Kripke-style semantics: semiframes, legality with respect to a system,
//! the canonical countermodel and bounded countermodel search.

mod canonical;
mod frame;
mod json;
mod legality;
mod search;

pub use canonical::{build_canonical_countermodel, CanonicalError};
pub use frame::{check_semiframe, is_model, locally_true, true_in, FrameDiagnostic, OutsideDomain, Semiframe};
pub use json::{frame_from_json, frame_to_json, FrameJsonError};
pub use legality::{is_legal, respects, LegalityReport, Violation};
pub use search::{
    countermodel_search, default_max_worlds, enumerate_legal_extensions, extend_semiframe, legal_frames,
    poset_shapes, ExtendError, Poset, SearchError, MAX_WORLDS,
};
