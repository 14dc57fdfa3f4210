//! Simulation and verification of the three-box experiment.
//!
//! The quantum side ([`hilbert`], [`twostate`], [`scenarios`]) computes
//! post-selected statistics of a particle in three boxes and of a spin in two
//! boxes. The classical side ([`classical`]) implements card and ball games
//! that reach the same "certain to be found" statistics by disturbing the
//! system on observation. [`harness`] runs any of them exactly or by seeded
//! Monte Carlo and tabulates the post-selection rate with no intermediate
//! observation, which separates the two kinds.

pub mod classical;
pub mod error;
pub mod harness;
pub mod hilbert;
pub mod probability;
pub mod random;
pub mod scenarios;
pub mod stats;
pub mod twostate;

pub use error::{Error, Result};
pub use harness::{
    discriminator_table, enumerate_exact, monte_carlo, monte_carlo_with, DiscriminatorRow, ExactDistribution,
    Execution, GameModel, QuantumGame, RunStatistics, System,
};
pub use probability::Probability;
