// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Support computation, pruning, and the K-truss fixpoint.

mod driver;
mod kernel;
mod prune;
mod support;
mod workers;

pub use driver::{kmax_search, ktruss, TrussEdge, TrussResult, TrussRun};
pub use kernel::{compute_supports, intersect_tails};
pub use prune::prune_edges;
pub use support::{reset_supports, SupportArray, SupportCounter, SupportWidth};
pub use workers::Workers;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TrussError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("support counter at slot {slot} overflowed its {bits}-bit width")]
    SupportOverflow { slot: usize, bits: u32 },
    #[error("failed to start worker pool: {0}")]
    WorkerPool(String),
}

/// How the support phase is split into parallel tasks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Strategy {
    /// One worker walks every row in order.
    Serial,
    /// One task per adjacency row.
    Coarse,
    /// One task per CSR slot.
    #[default]
    Fine,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [Strategy::Serial, Strategy::Coarse, Strategy::Fine];

    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Serial => "serial",
            Strategy::Coarse => "coarse",
            Strategy::Fine => "fine",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "serial" => Ok(Strategy::Serial),
            "coarse" => Ok(Strategy::Coarse),
            "fine" => Ok(Strategy::Fine),
            other => Err(format!("unknown strategy {other:?} (serial|coarse|fine)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TrussOptions {
    pub strategy: Strategy,
    pub width: SupportWidth,
}

impl TrussOptions {
    pub fn new(strategy: Strategy) -> Self {
        TrussOptions {
            strategy,
            width: SupportWidth::default(),
        }
    }

    pub fn with_width(mut self, width: SupportWidth) -> Self {
        self.width = width;
        self
    }
}

impl From<Strategy> for TrussOptions {
    fn from(strategy: Strategy) -> Self {
        TrussOptions::new(strategy)
    }
}

pub(crate) fn check_k(k: u32) -> Result<(), TrussError> {
    if k < 2 {
        return Err(TrussError::InvalidParameter(format!(
            "k must be >= 2, got {k}"
        )));
    }
    Ok(())
}
