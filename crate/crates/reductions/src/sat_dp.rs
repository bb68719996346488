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

//! 3SAT to layered disjoint paths.
//!
//! Every variable gets a `true` track and a `false` track running through
//! the clauses it occurs in, in formula order. A crossing block at the top
//! lets the variable path pick one track while the first supplementary
//! path takes the other; a mirrored block at the bottom merges them again.
//! Supplementary paths hop from one occurrence to the next on the track
//! the variable path did not take.
//!
//! A clause block spans three layers. Each of its three slots holds one
//! vertex per track and layer plus a three-vertex supplementary lane.
//! The clause path `C1 -> v -> C3` can only pass through the middle vertex
//! `v` of the track opposite to a literal's own track, and that vertex is
//! free only if the supplementary path of the slot detours through the
//! shared middle vertex `Z`. That detour starts on the first vertex `w` of
//! the opposite track, which the supplementary path occupies exactly when
//! the literal is true.

use crate::cnf::CnfFormula;
use crate::dag::{DagBuilder, LayeredDag, PathCover};
use crate::error::Result;

/// Per-track vertices of one slot: index 0, 1, 2 for the three layers.
#[derive(Debug, Clone, Copy)]
struct Slot {
    track: [[usize; 3]; 2],
    lane: [usize; 3],
}

#[derive(Debug, Clone)]
struct ClauseBlock {
    c1: usize,
    z: usize,
    c3: usize,
    slots: [Slot; 3],
}

#[derive(Debug, Clone, Copy)]
struct VariableBlock {
    x: usize,
    s1: usize,
    p: usize,
    q: usize,
    /// Top of the `false` / `true` tracks.
    top: [usize; 2],
    /// Bottom of the `false` / `true` tracks.
    bottom: [usize; 2],
    p_out: usize,
    q_out: usize,
    x_sink: usize,
    s_sink: usize,
}

/// A reduced instance together with the bookkeeping needed to turn a
/// satisfying assignment into a path cover.
#[derive(Debug, Clone)]
pub struct SatDag {
    pub dag: LayeredDag,
    formula: CnfFormula,
    vars: Vec<VariableBlock>,
    clauses: Vec<ClauseBlock>,
}

const FALSE: usize = 0;
const TRUE: usize = 1;

/// Builds the layered dag. Every clause must have exactly three literals
/// over distinct variables.
pub fn sat_to_dp(f: &CnfFormula) -> Result<SatDag> {
    f.require_three_literals()?;
    let n = f.num_vars;
    let m = f.clauses.len();
    let mut b = DagBuilder::new();

    let mut vars = Vec::with_capacity(n);
    for i in 0..n {
        let top = 3 * i;
        let bot = 3 * n + 3 * m + 3 * i;
        let x = b.vertex(top);
        let s1 = b.vertex(top);
        let p = b.vertex(top + 1);
        let q = b.vertex(top + 1);
        let tf = b.vertex(top + 2);
        let tt = b.vertex(top + 2);
        let yf = b.vertex(bot);
        let yt = b.vertex(bot);
        let p_out = b.vertex(bot + 1);
        let q_out = b.vertex(bot + 1);
        let x_sink = b.vertex(bot + 2);
        let s_sink = b.vertex(bot + 2);
        b.arc(x, p);
        b.arc(s1, q);
        for a in [p, q] {
            b.arc(a, tf);
            b.arc(a, tt);
        }
        for y in [yf, yt] {
            b.arc(y, p_out);
            b.arc(y, q_out);
        }
        b.arc(p_out, x_sink);
        b.arc(q_out, s_sink);
        b.pair(x, x_sink);
        vars.push(VariableBlock {
            x,
            s1,
            p,
            q,
            top: [tf, tt],
            bottom: [yf, yt],
            p_out,
            q_out,
            x_sink,
            s_sink,
        });
    }

    let mut clauses = Vec::with_capacity(m);
    for (z, clause) in f.clauses.iter().enumerate() {
        let base = 3 * n + 3 * z;
        let c1 = b.vertex(base);
        let mut slots = [Slot {
            track: [[0; 3]; 2],
            lane: [0; 3],
        }; 3];
        for layer in 0..3 {
            for slot in slots.iter_mut() {
                slot.track[TRUE][layer] = b.vertex(base + layer);
                slot.track[FALSE][layer] = b.vertex(base + layer);
                slot.lane[layer] = b.vertex(base + layer);
            }
        }
        let zmid = b.vertex(base + 1);
        let c3 = b.vertex(base + 2);
        for (slot, lit) in slots.iter().zip(clause) {
            let own = usize::from(lit.positive);
            let opp = &slot.track[1 - own];
            for t in &slot.track {
                b.arc(t[0], t[1]);
                b.arc(t[1], t[2]);
                b.arc(t[1], slot.lane[2]);
                b.arc(slot.lane[1], t[2]);
            }
            b.arc(slot.lane[0], slot.lane[1]);
            b.arc(opp[0], zmid);
            b.arc(zmid, slot.lane[2]);
            b.arc(c1, opp[1]);
            b.arc(opp[1], c3);
        }
        b.pair(c1, c3);
        clauses.push(ClauseBlock {
            c1,
            z: zmid,
            c3,
            slots,
        });
    }

    // chain the tracks and supplementary paths through the occurrences
    for (i, occ) in f.occurrences().iter().enumerate() {
        let v = vars[i];
        let mut prev_tail = v.top;
        let mut lane_source = v.s1;
        for &(z, s) in occ {
            let slot = clauses[z].slots[s];
            for t in [FALSE, TRUE] {
                b.arc(prev_tail[t], slot.track[t][0]);
                prev_tail[t] = slot.track[t][2];
            }
            b.pair(lane_source, slot.lane[2]);
            lane_source = slot.lane[0];
        }
        for t in [FALSE, TRUE] {
            b.arc(prev_tail[t], v.bottom[t]);
        }
        b.pair(lane_source, v.s_sink);
    }

    Ok(SatDag {
        dag: b.build()?,
        formula: f.clone(),
        vars,
        clauses,
    })
}

impl SatDag {
    /// The path cover induced by a satisfying assignment, or `None` if the
    /// assignment does not satisfy the formula. In each clause the first
    /// true literal's slot takes the detour.
    pub fn cover_from_assignment(&self, assignment: &[bool]) -> Option<PathCover> {
        let f = &self.formula;
        if assignment.len() != f.num_vars || !f.evaluate(assignment) {
            return None;
        }
        let detour: Vec<usize> = f
            .clauses
            .iter()
            .map(|c| c.iter().position(|l| l.holds(assignment)).unwrap())
            .collect();
        let mut paths: Vec<Vec<usize>> = Vec::new();
        for (i, occ) in f.occurrences().iter().enumerate() {
            let v = &self.vars[i];
            let own = usize::from(assignment[i]);
            let opp = 1 - own;
            let mut x_path = vec![v.x, v.p, v.top[own]];
            let mut lane = vec![v.s1, v.q, v.top[opp]];
            for &(z, s) in occ {
                let block = &self.clauses[z];
                let slot = &block.slots[s];
                x_path.extend_from_slice(&slot.track[own]);
                lane.push(slot.track[opp][0]);
                lane.push(if detour[z] == s { block.z } else { slot.track[opp][1] });
                lane.push(slot.lane[2]);
                paths.push(std::mem::take(&mut lane));
                lane = vec![slot.lane[0], slot.lane[1], slot.track[opp][2]];
            }
            x_path.extend([v.bottom[own], v.p_out, v.x_sink]);
            lane.extend([v.bottom[opp], v.q_out, v.s_sink]);
            paths.push(x_path);
            paths.push(lane);
        }
        for (z, block) in self.clauses.iter().enumerate() {
            let s = detour[z];
            let lit = f.clauses[z][s];
            let opp = 1 - usize::from(lit.positive);
            paths.push(vec![block.c1, block.slots[s].track[opp][1], block.c3]);
        }
        // order as the dag lists its pairs
        let mut by_source: Vec<Option<Vec<usize>>> = vec![None; self.dag.n()];
        for p in paths {
            let s = p[0];
            by_source[s] = Some(p);
        }
        Some(
            self.dag
                .phi()
                .iter()
                .map(|&(s, _)| by_source[s].take().expect("every pair gets a path"))
                .collect(),
        )
    }

    /// Shortest-path vertex count of the variable path of variable `i`.
    pub fn variable_path_len(&self, i: usize) -> usize {
        self.dag.path_vertex_count(self.vars[i].x).unwrap()
    }

    pub fn clause_path_len(&self, z: usize) -> usize {
        self.dag.path_vertex_count(self.clauses[z].c1).unwrap()
    }

    /// Sources of all supplementary paths of variable `i`, in track order.
    pub fn lane_sources(&self, i: usize) -> Vec<usize> {
        let mut out = vec![self.vars[i].s1];
        for (z, s) in self.formula.occurrences()[i].iter() {
            out.push(self.clauses[*z].slots[*s].lane[0]);
        }
        out
    }

    pub fn formula(&self) -> &CnfFormula {
        &self.formula
    }
}
