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

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    /// Clause number `clause` (0-based) mentions a variable twice.
    #[error("clause #{clause} repeats a variable")]
    RepeatedVariableInClause { clause: usize },

    #[error("clause #{clause} has {arity} literals; exactly 3 are required")]
    UnsupportedClauseArity { clause: usize, arity: usize },

    #[error("invalid layered dag: {0}")]
    InvalidDag(String),

    #[error("disjoint-path search gave up after {nodes} nodes")]
    OracleBudgetExceeded { nodes: usize },

    #[error("odd permutations cannot be routed through an even permutation network")]
    OddPermutation,

    #[error("layer {layer} would need a network with {inputs} inputs (at most 20 supported)")]
    LayerTooLarge { layer: usize, inputs: usize },

    #[error(transparent)]
    Core(#[from] tsw_core::Error),
}

pub type Result<T> = std::result::Result<T, ReductionError>;
