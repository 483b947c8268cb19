//! Sigma-ideals of `Q{y}`, the degree-2 slice of the witness ideals, quadratic
//! factorization, the mixed-closure shuffle and strict-chain certificates.

pub mod chain;
pub mod ffield;
pub mod membership;
pub mod presentation;
pub mod quadratic;
pub mod shuffle;
pub mod slice;

pub use chain::{acc_chain_experiment, ChainCertificate, MAX_CHAIN_LENGTH};
pub use ffield::{factor_quadratic_mod_p, finite_field_factor_oracle, Fp, ModPFactorization};
pub use membership::{
    bounded_ideal_membership, colon_membership, Combination, CombinationEntry, MembershipBounds,
    MembershipOutcome,
};
pub use presentation::SigmaIdealPresentation;
pub use quadratic::{
    factor_quadratic, gram_matrix, irreducibility_scan, random_slice_element, GramMatrix,
    QuadraticFactorization,
};
pub use shuffle::{
    audit_stages, lemma34_verify, run_shuffle, shuffle_step, ProductCertificate, ProductWitness,
    RejectedWitness, ShuffleBounds, ShuffleState,
};
pub use slice::{
    degree2_slice_membership, Degree2Slice, Refutation, SliceCertificate, SliceVerdict,
};
