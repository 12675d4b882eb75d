//! Hypothesis checks and the explicit generator constructions.

mod construct;
mod exptower;
mod hypotheses;

pub use construct::{
    build_dgen, build_scheme, build_special, build_theorem_b, build_threegen, find_special_pairs,
    negative_controls, power_identities, verify_generation, GeneratorSet, PowerIdentities, Relabeling,
    Scheme, SchemeOutput, SpecialData, VerificationReport, Verdict,
};
pub use hypotheses::{
    all_stabilizers_distinct, check_non_regular, find_square_moving_pair, find_special_pair, CoprimeConstraints,
    HypothesisReport, LevelHypotheses, NonRegularity, SquareMovingPair, SpecialPair, StabilizerDistinctness,
    StabilizerWitness, StructuredWitness, SEARCH_ORDER_LIMIT,
};
