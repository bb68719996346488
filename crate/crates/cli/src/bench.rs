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

use std::fs;
use std::path::Path;
use std::time::Instant;

use anyhow::Context;
use rayon::prelude::*;
use tsw_core::bounds;
use tsw_core::colored::assignment_floor;
use tsw_core::exact::{solve_bfs, solve_colored_bfs};
use tsw_core::io::{parse_instance, Instance};
use tsw_core::{Algorithm, SolveOptions};

use crate::solve_instance;

struct Row {
    instance: String,
    algo: Algorithm,
    swaps: Option<usize>,
    lower_bound: Option<usize>,
    optimum: Option<usize>,
    wall_ms: u128,
    status: String,
}

fn ratio(swaps: usize, optimum: usize) -> f64 {
    if optimum == 0 {
        if swaps == 0 {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        swaps as f64 / optimum as f64
    }
}

fn lower_bound(inst: &Instance) -> anyhow::Result<usize> {
    Ok(match inst.colored() {
        None => {
            let dist = bounds::all_pairs_distances(&inst.graph);
            bounds::lower_bound(&dist, &inst.placement)
        }
        Some(c) => assignment_floor(&c?)?,
    })
}

fn optimum(inst: &Instance, budget: usize) -> anyhow::Result<usize> {
    Ok(match inst.colored() {
        None => solve_bfs(&inst.graph, &inst.placement, budget)?.length,
        Some(c) => solve_colored_bfs(&c?, usize::MAX, budget)?
            .context("colored instance has no solution")?
            .len(),
    })
}

/// CSV over every `*.tsw` file in `dir` and every algorithm. Failures
/// become rows with a status message; rows are sorted by instance and
/// algorithm.
pub(crate) fn run(dir: &Path, algos: &[Algorithm], optimum_max_n: usize, budget: usize) -> anyhow::Result<String> {
    let mut files: Vec<_> = fs::read_dir(dir)
        .with_context(|| format!("reading {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "tsw"))
        .collect();
    files.sort();
    let opts = SolveOptions {
        node_budget: budget,
        max_swaps: None,
    };
    let mut rows: Vec<Row> = files
        .par_iter()
        .flat_map(|path| {
            let name = path.file_name().unwrap().to_string_lossy().into_owned();
            let parsed = fs::read_to_string(path)
                .map_err(anyhow::Error::from)
                .and_then(|t| Ok(parse_instance(&t)?));
            let inst = match parsed {
                Ok(i) => i,
                Err(e) => {
                    return algos
                        .iter()
                        .map(|&algo| Row {
                            instance: name.clone(),
                            algo,
                            swaps: None,
                            lower_bound: None,
                            optimum: None,
                            wall_ms: 0,
                            status: format!("{e:#}"),
                        })
                        .collect::<Vec<_>>();
                }
            };
            let lb = lower_bound(&inst).ok();
            let opt = if inst.graph.n() <= optimum_max_n {
                optimum(&inst, budget).ok()
            } else {
                None
            };
            algos
                .par_iter()
                .map(|&algo| {
                    let start = Instant::now();
                    let r = solve_instance(&inst, algo, &opts);
                    let wall_ms = start.elapsed().as_millis();
                    let (swaps, status) = match r {
                        Ok(r) => (Some(r.length), "ok".to_string()),
                        Err(e) => (None, format!("{e:#}")),
                    };
                    Row {
                        instance: name.clone(),
                        algo,
                        swaps,
                        lower_bound: lb,
                        optimum: opt,
                        wall_ms,
                        status,
                    }
                })
                .collect()
        })
        .collect();
    rows.sort_by(|a, b| (&a.instance, a.algo.name()).cmp(&(&b.instance, b.algo.name())));

    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["instance", "algo", "swaps", "lower_bound", "optimum", "ratio", "wall_ms", "status"])?;
    let opt_str = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_default();
    for r in &rows {
        let ratio = match (r.swaps, r.optimum) {
            (Some(s), Some(o)) => format!("{:.4}", ratio(s, o)),
            _ => String::new(),
        };
        w.write_record([
            r.instance.clone(),
            r.algo.name().to_string(),
            opt_str(r.swaps),
            opt_str(r.lower_bound),
            opt_str(r.optimum),
            ratio,
            r.wall_ms.to_string(),
            r.status.clone(),
        ])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}
