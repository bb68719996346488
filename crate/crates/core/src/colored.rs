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

//! Colored token swapping: a distance-minimal color-respecting target
//! assignment followed by any uncolored solver.

use std::collections::BTreeMap;

use crate::bounds::{self, DistanceTable};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::placement::{ColoredInstance, SolveResult, TokenPlacement};

/// `target[t]` is the vertex token `t` is sent to; `cost` is the summed
/// distance from each token's current vertex to its target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetAssignment {
    pub target: Vec<usize>,
    pub cost: usize,
}

/// Minimum-cost perfect matching on a square matrix. Returns the column
/// matched to each row together with optimal dual potentials `(u, v)`, so
/// that `cost[i][j] - u[i] - v[j] >= 0` with equality on every optimal
/// matching's edges.
fn hungarian(cost: &[Vec<i64>]) -> (Vec<usize>, Vec<i64>, Vec<i64>) {
    let n = cost.len();
    const INF: i64 = i64::MAX / 4;
    // 1-based with a virtual column 0, following the classic formulation
    let mut u = vec![0i64; n + 1];
    let mut v = vec![0i64; n + 1];
    let mut row_of = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        row_of[0] = i;
        let mut j0 = 0;
        let mut minv = vec![INF; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = row_of[j0];
            let mut delta = INF;
            let mut j1 = 0;
            for j in 1..=n {
                if !used[j] {
                    let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[row_of[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if row_of[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            row_of[j0] = row_of[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut col_of = vec![0; n];
    for j in 1..=n {
        col_of[row_of[j] - 1] = j - 1;
    }
    (col_of, u[1..].to_vec(), v[1..].to_vec())
}

/// Among all perfect matchings of the bipartite graph `tight` (row ->
/// admissible columns), the one whose column sequence is lexicographically
/// smallest. `matching` must be a perfect matching of `tight`.
fn lexicographic_min(tight: &[Vec<usize>], mut matching: Vec<usize>) -> Vec<usize> {
    let n = tight.len();
    let mut row_of = vec![0; n];
    for (r, &c) in matching.iter().enumerate() {
        row_of[c] = r;
    }
    for i in 0..n {
        for &j in &tight[i] {
            if j == matching[i] {
                break;
            }
            if j < matching[i] {
                // rows before i are fixed; try to rehome the holder of j
                // onto i's column through an alternating path
                let holder = row_of[j];
                if holder < i {
                    continue;
                }
                if let Some(path) = alternating_path(tight, &matching, &row_of, i, holder, j, matching[i]) {
                    for (r, c) in path {
                        matching[r] = c;
                        row_of[c] = r;
                    }
                    matching[i] = j;
                    row_of[j] = i;
                    break;
                }
            }
        }
    }
    matching
}

/// Breadth-first search for an alternating path that moves `start` (which
/// is losing column `banned`) onto some chain of columns ending at `goal`.
/// Rows `<= fixed` and column `banned` are off limits. Returns the new
/// (row, column) pairs along the path.
fn alternating_path(
    tight: &[Vec<usize>],
    matching: &[usize],
    row_of: &[usize],
    fixed: usize,
    start: usize,
    banned: usize,
    goal: usize,
) -> Option<Vec<(usize, usize)>> {
    let n = tight.len();
    // came_from[c] = row that would take column c
    let mut came_from = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::from([start]);
    let mut visited_row = vec![false; n];
    visited_row[start] = true;
    while let Some(r) = queue.pop_front() {
        for &c in &tight[r] {
            if c == banned || came_from[c] != usize::MAX || c == matching[r] {
                continue;
            }
            came_from[c] = r;
            if c == goal {
                let mut path = Vec::new();
                let mut col = c;
                loop {
                    let row = came_from[col];
                    path.push((row, col));
                    if row == start {
                        return Some(path);
                    }
                    col = matching[row];
                }
            }
            let next = row_of[c];
            if next > fixed && !visited_row[next] {
                visited_row[next] = true;
                queue.push_back(next);
            }
        }
    }
    None
}

/// Per color class, a minimum-distance matching between tokens and
/// vertices of that color. Ties are broken toward the lexicographically
/// smallest target array.
pub fn optimal_assignment(inst: &ColoredInstance, dist: &DistanceTable) -> Result<TargetAssignment> {
    let n = inst.n();
    let pos = inst.placement.positions();
    let mut classes: BTreeMap<u32, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for t in 0..n {
        classes.entry(inst.token_colors[t]).or_default().0.push(t);
    }
    for v in 0..n {
        classes.entry(inst.vertex_colors[v]).or_default().1.push(v);
    }
    let mut target = vec![usize::MAX; n];
    let mut cost = 0;
    for (tokens, vertices) in classes.values() {
        if tokens.len() != vertices.len() {
            return Err(Error::ColorMultisetMismatch);
        }
        let m: Vec<Vec<i64>> = tokens
            .iter()
            .map(|&t| vertices.iter().map(|&v| dist.get(pos[t], v) as i64).collect())
            .collect();
        let (matching, u, v) = hungarian(&m);
        let tight: Vec<Vec<usize>> = (0..m.len())
            .map(|i| (0..m.len()).filter(|&j| m[i][j] - u[i] - v[j] == 0).collect())
            .collect();
        let best = lexicographic_min(&tight, matching);
        for (i, &j) in best.iter().enumerate() {
            target[tokens[i]] = vertices[j];
            cost += m[i][j] as usize;
        }
    }
    Ok(TargetAssignment { target, cost })
}

/// Relabels each token by its assigned target and hands the resulting
/// uncolored instance to `solver`.
pub fn solve_colored<F>(inst: &ColoredInstance, solver: F) -> Result<SolveResult>
where
    F: FnOnce(&Graph, &TokenPlacement) -> Result<SolveResult>,
{
    inst.graph.require_connected()?;
    let dist = bounds::all_pairs_distances(&inst.graph);
    let assignment = optimal_assignment(inst, &dist)?;
    let relabeled = relabel(inst, &assignment)?;
    solver(&inst.graph, &relabeled)
}

/// The uncolored placement in which each token is named after its target.
pub fn relabel(inst: &ColoredInstance, assignment: &TargetAssignment) -> Result<TokenPlacement> {
    TokenPlacement::new(
        inst.placement
            .as_slice()
            .iter()
            .map(|&t| assignment.target[t])
            .collect(),
    )
}

/// `ceil(L* / 2)`, a lower bound on the colored optimum.
pub fn assignment_floor(inst: &ColoredInstance) -> Result<usize> {
    inst.graph.require_connected()?;
    let dist = bounds::all_pairs_distances(&inst.graph);
    Ok(optimal_assignment(inst, &dist)?.cost.div_ceil(2))
}
