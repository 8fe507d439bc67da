//! Polar multiplicities of graded modules over κ[u]_(u), with verdict engines
//! for integrality, birationality and reductions.

pub mod criteria;
pub mod error;
pub mod exactlin;
pub mod graded;
pub mod hilbert;
pub mod oracle;
pub mod polar;
pub mod svlength;

pub mod cli;

use serde::{Deserialize, Serialize};

pub use error::{Error, Result};

use exactlin::DEFAULT_BUDGET;
use hilbert::WindowPolicy;

/// Tunable limits shared by every computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Options {
    pub vmax: i64,
    pub nmax: i64,
    pub margin: usize,
    pub seed: u64,
    pub t_cap: usize,
    pub n_power_cap: usize,
    pub budget: u64,
    pub max_resample: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            vmax: 12,
            nmax: 12,
            margin: 3,
            seed: 0,
            t_cap: 10,
            n_power_cap: 8,
            budget: DEFAULT_BUDGET,
            max_resample: 5,
        }
    }
}

impl Options {
    pub fn policy(&self) -> WindowPolicy {
        WindowPolicy { start: 4, width: 8, margin: self.margin, vmax: self.vmax, nmax: self.nmax }
    }
}
