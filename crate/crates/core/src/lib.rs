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

//! Token swapping on graphs: data model, verification, exact search,
//! approximation algorithms and the colored variant.
//!
//! Vertices and tokens are 0-indexed in memory. Token `t` belongs on
//! vertex `t`; a placement records which token sits on each vertex.
//!
//! ```
//! use tsw_core::{approx, Graph, TokenPlacement, verify_solution};
//!
//! let g = Graph::path(3);
//! let start = TokenPlacement::new(vec![2, 1, 0]).unwrap();
//! let result = approx::solve_happy(&g, &start).unwrap();
//! assert_eq!(result.length, 3);
//! assert!(verify_solution(&g, &start, &result.sequence).unwrap());
//! ```

pub mod approx;
pub mod bounds;
pub mod colored;
pub mod error;
pub mod exact;
pub mod generate;
pub mod graph;
pub mod io;
pub mod perm;
pub mod placement;
pub mod solver;

pub use error::{Error, Result};
pub use graph::Graph;
pub use placement::{
    apply_swaps, verify_colored_solution, verify_solution, ColoredInstance, SolveResult, SwapLabel, SwapSequence,
    TokenPlacement,
};
pub use solver::{solve, Algorithm, SolveOptions};
