//! Shannon entropies and subsystem mutual information of quasiparticle
//! excited states in free bosonic, free fermionic and spin-1/2 XXX chains.
//!
//! Every quantity is in nats. Reports carry the total-system entropy
//! `H(L)`, the block entropies `H(ℓ)` and `H(L-ℓ)`, and the mutual
//! information `M(ℓ) = H(ℓ) + H(L-ℓ) - H(L)`.

pub mod classical;
pub mod entropy;
pub mod error;
pub mod free;
pub mod number_dist;
pub mod quadrature;
pub mod sigma_x;
pub mod tables;
pub mod xxx;

mod special;

pub use entropy::{
    binary_entropy, mutual_information, shannon_entropy, x_log_x, ChainGeometry, CompensatedSum,
    EntropyReport, EvaluationMode, GroupedDistribution, ProbabilityDistribution,
};
pub use error::{Error, Result};
pub use free::{ExceptionalMomentum, MomentumPair, Statistics};
pub use quadrature::{integrate, IntegrationOptions};
pub use tables::{LocalProbabilities, MagnonProbabilities, SeparationWeight};
