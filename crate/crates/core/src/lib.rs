//! Boolean semiring matrices, the gossip monoid they generate, exact solvers
//! for transformation, membership and J-order questions, and the hardness
//! reductions between them.
//!
//! Call indices are 1-based throughout the public API (`CallPair::new(1, 2)`
//! is the call between the first two agents). Raw matrix accessors such as
//! [`BoolMatrix::get`] are 0-based.

pub mod error;
pub mod exec;
pub mod generators;
pub mod graph;
pub mod io;
pub mod matrix;
pub mod monoid;
pub mod reduce;
pub mod search;
pub mod solve;

pub use error::{
    EnumerationError, ExtractionClaim, GraphError, MalformedInstance, MatrixError, ParseError,
    ReductionError, SolveError,
};
pub use exec::Execution;
pub use generators::{
    adjacent_calls, all_calls, call_matrix, conference_matrix, is_equivalence_matrix, word,
    CallPair, CallSequence, ConferenceSet,
};
pub use graph::{solve_dominating_set, Graph};
pub use matrix::BoolMatrix;
pub use monoid::{
    enumerate, enumerate_with, factor_conference, gossip_number, idempotent_census,
    shortest_word_to, EnumerationConfig, GeneratorMode, MonoidEnumeration, Side,
};
pub use search::{SearchOutcome, Status, DEFAULT_BUDGET, MAX_STORED_STATES};
pub use solve::{
    check_maximal_column_condition, solve_gjp, solve_gjp_certified, solve_gmp, solve_gtp,
    solve_mgtp, verify_gjp_witness, verify_gtp_witness, GjpWitness,
};
