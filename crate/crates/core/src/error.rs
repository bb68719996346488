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

use thiserror::Error;

/// Errors raised by the token swapping library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Swap number `index` (0-based) names a pair that is not an edge.
    #[error("swap #{index} ({u}, {v}) is not an edge of the graph")]
    NonEdgeSwap { index: usize, u: usize, v: usize },

    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("graph is not connected")]
    DisconnectedGraph,

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("token colors and vertex colors do not form the same multiset")]
    ColorMultisetMismatch,

    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },

    #[error("graph is not the canonical path 1-2-...-n")]
    NotAPath,

    #[error("graph is not complete")]
    NotComplete,

    #[error("unknown graph family {0:?}")]
    UnknownFamily(String),

    #[error("unknown permutation kind {0:?}")]
    UnknownPermutationKind(String),

    #[error("no sorting sequence of at most {k} swaps")]
    NoSolutionWithin { k: usize },

    #[error("search budget exceeded after {nodes} configurations")]
    BudgetExceeded { nodes: usize },

    /// The step search found neither a happy chain nor an unhappy swap.
    /// Cannot happen on a valid instance; signals a bug.
    #[error("no happy swap chain or unhappy swap found on a non-sorted placement")]
    NoStepFound,

    #[error("approximation stalled after {swaps} swaps")]
    ProgressStall { swaps: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
