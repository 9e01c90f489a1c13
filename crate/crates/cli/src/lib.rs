//! Command implementations behind the `secfilter` binary. Each command is
//! a plain function returning structured results, so the experiment logic
//! can be driven from tests as well as from the command line.

pub mod attack;
pub mod error;
pub mod estimate;
pub mod generate;
pub mod lemma1;
pub mod output;
pub mod primestats;
pub mod sampling;

pub use attack::{cmd_attack, AttackChoice, AttackOptions, AttackOutcome};
pub use error::{exit, CliError, CliResult};
pub use estimate::{cmd_estimate, EstimateReport, EstimateTarget};
pub use generate::{cmd_generate, PrimeSpec};
pub use lemma1::{cmd_lemma1, Lemma1Mode};
pub use output::{ExperimentRow, Format};
pub use primestats::{cmd_primestats, PrimeStatsConfig};
