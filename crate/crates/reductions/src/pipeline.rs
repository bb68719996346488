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

//! The full chain 3SAT -> layered disjoint paths -> colored token
//! swapping -> token swapping, with forward witnesses at every stage.

use tsw_core::SwapSequence;

use crate::cnf::CnfFormula;
use crate::dag::PathCover;
use crate::dp_colored::{colored_solution_from_cover, dp_to_colored, StructuredColoredInstance};
use crate::error::Result;
use crate::lift::{structured_to_uncolored, LiftedInstance};
use crate::sat_dp::{sat_to_dp, SatDag};

#[derive(Debug, Clone)]
pub struct Reduction {
    pub sat: SatDag,
    pub colored: StructuredColoredInstance,
    pub lifted: LiftedInstance,
}

/// Runs all three reductions. The formula must already have exactly three
/// literals over distinct variables in every clause.
pub fn reduce_sat(f: &CnfFormula) -> Result<Reduction> {
    let sat = sat_to_dp(f)?;
    let colored = dp_to_colored(&sat.dag)?;
    let lifted = structured_to_uncolored(&colored)?;
    Ok(Reduction { sat, colored, lifted })
}

/// Witnesses for each stage derived from one satisfying assignment.
#[derive(Debug, Clone)]
pub struct Witness {
    pub cover: PathCover,
    pub colored: SwapSequence,
    pub uncolored: SwapSequence,
}

impl Reduction {
    /// `Ok(None)` if the assignment does not satisfy the formula.
    pub fn witness(&self, assignment: &[bool]) -> Result<Option<Witness>> {
        let Some(cover) = self.sat.cover_from_assignment(assignment) else {
            return Ok(None);
        };
        let colored = colored_solution_from_cover(&cover);
        let uncolored = self.lifted.lift_solution(&colored)?;
        Ok(Some(Witness { cover, colored, uncolored }))
    }
}
