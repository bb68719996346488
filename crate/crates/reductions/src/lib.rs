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

//! Reductions that show token swapping is NP-hard on graphs of bounded
//! degree: 3SAT to layered disjoint paths, to colored token swapping and
//! finally to plain token swapping, plus exhaustive oracles for small
//! instances of each problem.

pub mod cnf;
pub mod dag;
pub mod dp_colored;
pub mod error;
pub mod lift;
pub mod network;
pub mod pipeline;
pub mod sat_dp;

pub use error::{ReductionError, Result};
