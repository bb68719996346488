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

use std::path::Path;

use anyhow::{bail, Context};
use tsw_core::io::{emit_instance, emit_swaps, Instance};
use tsw_core::{verify_colored_solution, verify_solution};
use tsw_reductions::cnf::parse_dimacs;
use tsw_reductions::dag::{dp_solve, is_path_cover, DEFAULT_DP_BUDGET};
use tsw_reductions::dp_colored::{check_structured, colored_solution_from_cover, dp_to_colored};
use tsw_reductions::lift::structured_to_uncolored;
use tsw_reductions::sat_dp::sat_to_dp;

use crate::{read_input, write_output, Target, VerificationFailed};

/// Largest formula the truth-table check accepts.
const MAX_CHECK_VARS: usize = 24;

pub(crate) fn run(
    to: Target,
    input: &Path,
    check: bool,
    pad: bool,
    witness: Option<&Path>,
    output: Option<&Path>,
) -> anyhow::Result<()> {
    let mut f = parse_dimacs(&read_input(input)?).with_context(|| format!("parsing {}", input.display()))?;
    if pad {
        f = f.padded();
    }
    let sd = sat_to_dp(&f)?;
    let dag = &sd.dag;
    if let Some(v) = dag.validate().first() {
        bail!(VerificationFailed(format!("reduced dag: {v}")));
    }
    eprintln!("dag: {} vertices, {} layers, {} paths", dag.n(), dag.layer_count(), dag.phi().len());

    let model = if check || witness.is_some() {
        if f.num_vars > MAX_CHECK_VARS {
            bail!("the truth-table check handles at most {MAX_CHECK_VARS} variables");
        }
        Some(f.brute_force_model())
    } else {
        None
    };
    let cover = match &model {
        Some(Some(a)) => sd.cover_from_assignment(a),
        _ => None,
    };
    if let Some(c) = &cover {
        if !is_path_cover(dag, c) {
            bail!(VerificationFailed("assignment does not yield a path cover".into()));
        }
    }
    if check {
        let found = dp_solve(dag, DEFAULT_DP_BUDGET)?;
        let sat = matches!(model, Some(Some(_)));
        eprintln!("satisfiable: {}", if sat { "yes" } else { "no" });
        eprintln!("path cover search: {}", if found.is_some() { "found" } else { "none" });
        if sat != found.is_some() {
            bail!(VerificationFailed("satisfiability and path cover search disagree".into()));
        }
    }

    let mut witness_text = cover.as_ref().map(|c| {
        c.iter()
            .map(|p| {
                let vs: Vec<String> = p.iter().map(|v| (v + 1).to_string()).collect();
                format!("path {}\n", vs.join(" "))
            })
            .collect::<String>()
    });
    let text = match to {
        Target::Dp => dag.to_text(),
        Target::Cts | Target::Tsw => {
            let colored = dp_to_colored(dag)?;
            if let Some(v) = check_structured(&colored).first() {
                bail!(VerificationFailed(format!("colored instance: {v}")));
            }
            let colored_seq = cover.as_ref().map(colored_solution_from_cover);
            if let Some(s) = &colored_seq {
                if s.len() != colored.threshold || !verify_colored_solution(&colored.colored, s)? {
                    bail!(VerificationFailed("constructed colored solution".into()));
                }
            }
            if to == Target::Cts {
                eprintln!("colored: {} vertices, threshold {}", colored.colored.n(), colored.threshold);
                witness_text = colored_seq.as_ref().map(emit_swaps);
                let mut inst = Instance::from_colored(&colored.colored);
                inst.threshold = Some(colored.threshold);
                emit_instance(&inst)
            } else {
                let lifted = structured_to_uncolored(&colored)?;
                eprintln!(
                    "uncolored: {} vertices, {} networks, threshold {}",
                    lifted.graph.n(),
                    lifted.networks.len(),
                    lifted.threshold
                );
                witness_text = match &colored_seq {
                    Some(s) => {
                        let seq = lifted.lift_solution(s)?;
                        if seq.len() != lifted.threshold || !verify_solution(&lifted.graph, &lifted.placement, &seq)? {
                            bail!(VerificationFailed("lifted solution".into()));
                        }
                        Some(emit_swaps(&seq))
                    }
                    None => None,
                };
                let mut inst = Instance::new(lifted.graph, lifted.placement);
                inst.threshold = Some(lifted.threshold);
                emit_instance(&inst)
            }
        }
    };
    if check {
        match &witness_text {
            Some(_) => eprintln!("witness: constructed and verified"),
            None => eprintln!("witness: none (formula unsatisfiable)"),
        }
    }
    if let Some(path) = witness {
        match &witness_text {
            Some(w) => std::fs::write(path, w).with_context(|| format!("writing {}", path.display()))?,
            None => bail!("no witness: the formula is unsatisfiable"),
        }
    }
    write_output(output, &text)
}
