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

//! Uniform entry point over every uncolored solver.

use std::fmt;
use std::str::FromStr;

use crate::approx;
use crate::bounds;
use crate::error::{Error, Result};
use crate::exact::{self, DEFAULT_NODE_BUDGET};
use crate::graph::Graph;
use crate::placement::{SolveResult, TokenPlacement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Exact,
    ExactId,
    ExactPruned,
    Happy,
    Cycles,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Exact,
        Algorithm::ExactId,
        Algorithm::ExactPruned,
        Algorithm::Happy,
        Algorithm::Cycles,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Exact => "exact",
            Algorithm::ExactId => "exact-id",
            Algorithm::ExactPruned => "exact-pruned",
            Algorithm::Happy => "happy",
            Algorithm::Cycles => "cycles",
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Algorithm::Exact | Algorithm::ExactId | Algorithm::ExactPruned)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    pub node_budget: usize,
    /// Swap cap for the depth-bounded solvers. When absent the length of
    /// the happy-swap solution is used, which is always feasible.
    pub max_swaps: Option<usize>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            node_budget: DEFAULT_NODE_BUDGET,
            max_swaps: None,
        }
    }
}

pub fn solve(algo: Algorithm, graph: &Graph, placement: &TokenPlacement, opts: &SolveOptions) -> Result<SolveResult> {
    match algo {
        Algorithm::Exact => exact::solve_bfs(graph, placement, opts.node_budget),
        Algorithm::Happy => approx::solve_happy(graph, placement),
        Algorithm::Cycles => {
            graph.require_connected()?;
            let dist = bounds::all_pairs_distances(graph);
            approx::solve_cycle_decomposition(graph, placement, &dist)
        }
        Algorithm::ExactId | Algorithm::ExactPruned => {
            let k = match opts.max_swaps {
                Some(k) => k,
                None => approx::solve_happy(graph, placement)?.length,
            };
            let found = if algo == Algorithm::ExactId {
                exact::solve_depth_bounded(graph, placement, k, opts.node_budget)?
            } else {
                exact::solve_misplaced_pruned(graph, placement, k, opts.node_budget)?
            };
            found.ok_or(Error::NoSolutionWithin { k })
        }
    }
}
