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

//! Approximation algorithms: happy swap chains with unhappy swaps, and
//! cycle decomposition with distance-preserving exchanges.

use std::collections::BTreeSet;

use crate::bounds::{self, DistanceTable};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::perm;
use crate::placement::{SolveResult, SwapLabel, SwapSequence, TokenPlacement};

/// Arcs `(v, w)` along which the token on `v` gets one step closer to its
/// target. Out-neighbor lists are sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesireDigraph {
    out: Vec<Vec<usize>>,
}

impl DesireDigraph {
    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    /// All arcs in lexicographic order.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(v, ws)| ws.iter().map(move |&w| (v, w)))
            .collect()
    }
}

#[inline]
fn wants(dist: &DistanceTable, token: usize, v: usize, w: usize) -> bool {
    let row = dist.row(token);
    row[w] + 1 == row[v]
}

pub fn build_desire_digraph(graph: &Graph, placement: &TokenPlacement, dist: &DistanceTable) -> DesireDigraph {
    let out = (0..graph.n())
        .map(|v| {
            let t = placement.token_at(v);
            graph
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&w| wants(dist, t, v, w))
                .collect()
        })
        .collect();
    DesireDigraph { out }
}

/// One move of the happy-swap algorithm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    /// Vertices `v_1, ..., v_{l+1}`; the chain swaps `(v_1, v_2)`, then
    /// `(v_2, v_3)`, and so on. The token on `v_1` ends on `v_{l+1}`, every
    /// other token moves from `v_j` to `v_{j-1}`.
    HappyChain(Vec<usize>),
    /// Swap `(u, s)` where the token on `s` is home and the token on `u`
    /// moves closer to its target.
    UnhappySwap(usize, usize),
}

impl Step {
    pub fn swaps(&self) -> Vec<(usize, usize)> {
        match self {
            Step::HappyChain(vs) => vs.windows(2).map(|w| (w[0], w[1])).collect(),
            Step::UnhappySwap(u, s) => vec![(*u, *s)],
        }
    }
}

/// Turns a directed cycle `c_0 -> c_1 -> ... -> c_l -> c_0` into chain
/// order `c_0, c_l, c_{l-1}, ..., c_1`.
fn chain_from_cycle(cycle: &[usize]) -> Vec<usize> {
    let mut chain = Vec::with_capacity(cycle.len());
    chain.push(cycle[0]);
    chain.extend(cycle[1..].iter().rev());
    chain
}

/// Walks `F` from the lowest misplaced vertex along lowest out-neighbors
/// until it closes a cycle or reaches a vertex whose token is home.
pub fn find_step(graph: &Graph, placement: &TokenPlacement, f: &DesireDigraph) -> Result<Step> {
    let n = graph.n();
    let start = (0..n).find(|&v| placement.token_at(v) != v).ok_or(Error::NoStepFound)?;
    let mut seen = vec![usize::MAX; n];
    let mut walk = vec![start];
    seen[start] = 0;
    loop {
        let v = *walk.last().unwrap();
        let Some(&w) = f.out_neighbors(v).first() else {
            return Err(Error::NoStepFound);
        };
        if seen[w] != usize::MAX {
            return Ok(Step::HappyChain(chain_from_cycle(&walk[seen[w]..])));
        }
        if f.out_degree(w) == 0 {
            return Ok(Step::UnhappySwap(v, w));
        }
        seen[w] = walk.len();
        walk.push(w);
    }
}

/// The walk of [`find_step`], kept across steps.
///
/// Arcs out of a vertex depend only on the token sitting there, so after
/// a step the walk prefix up to the first touched vertex is exactly what a
/// fresh walk would retrace, provided the start vertex is still the lowest
/// misplaced one.
struct Walker<'a> {
    graph: &'a Graph,
    dist: &'a DistanceTable,
    cur: Vec<usize>,
    misplaced: BTreeSet<usize>,
    walk: Vec<usize>,
    seen: Vec<u32>,
}

const UNSEEN: u32 = u32::MAX;

impl Walker<'_> {
    fn first_out(&self, v: usize) -> Option<usize> {
        let t = self.cur[v];
        self.graph
            .neighbors(v)
            .iter()
            .copied()
            .find(|&w| wants(self.dist, t, v, w))
    }

    fn truncate(&mut self, len: usize) {
        for &v in &self.walk[len..] {
            self.seen[v] = UNSEEN;
        }
        self.walk.truncate(len);
    }

    fn next_step(&mut self) -> Result<Step> {
        let start = *self.misplaced.first().ok_or(Error::NoStepFound)?;
        if self.walk.first() != Some(&start) {
            self.truncate(0);
        }
        if self.walk.is_empty() {
            self.walk.push(start);
            self.seen[start] = 0;
        }
        loop {
            let v = *self.walk.last().unwrap();
            let w = self.first_out(v).ok_or(Error::NoStepFound)?;
            let at = self.seen[w];
            if at != UNSEEN {
                return Ok(Step::HappyChain(chain_from_cycle(&self.walk[at as usize..])));
            }
            if self.cur[w] == w {
                return Ok(Step::UnhappySwap(v, w));
            }
            self.seen[w] = self.walk.len() as u32;
            self.walk.push(w);
        }
    }

    fn swap(&mut self, u: usize, v: usize) {
        self.cur.swap(u, v);
        for x in [u, v] {
            if self.cur[x] == x {
                self.misplaced.remove(&x);
            } else {
                self.misplaced.insert(x);
            }
        }
    }

    /// Drops the walk from its first vertex touched by `step`.
    fn invalidate(&mut self, step: &Step) {
        let touched: &[usize] = match step {
            Step::HappyChain(vs) => vs,
            Step::UnhappySwap(u, _) => std::slice::from_ref(u),
        };
        let cut = touched
            .iter()
            .map(|&x| self.seen[x])
            .filter(|&i| i != UNSEEN)
            .min()
            .map_or(self.walk.len(), |i| i as usize);
        self.truncate(cut);
    }
}

/// Applies happy swap chains and unhappy swaps until every token is home.
/// The result carries a per-swap trace.
pub fn solve_happy(graph: &Graph, placement: &TokenPlacement) -> Result<SolveResult> {
    if graph.n() != placement.n() {
        return Err(Error::SizeMismatch {
            expected: graph.n(),
            got: placement.n(),
        });
    }
    graph.require_connected()?;
    let dist = bounds::all_pairs_distances(graph);
    solve_happy_with(graph, placement, &dist)
}

/// [`solve_happy`] with a precomputed distance table.
pub fn solve_happy_with(graph: &Graph, placement: &TokenPlacement, dist: &DistanceTable) -> Result<SolveResult> {
    let n = graph.n();
    let cur = placement.as_slice().to_vec();
    let misplaced = (0..n).filter(|&v| cur[v] != v).collect();
    let mut w = Walker {
        graph,
        dist,
        cur,
        misplaced,
        walk: Vec::new(),
        seen: vec![UNSEEN; n],
    };
    let l0 = bounds::total_displacement(dist, placement);
    let mut l = l0;
    let mut seq = SwapSequence::default();
    let mut trace = Vec::new();
    let mut chains = 0;

    while !w.misplaced.is_empty() {
        if seq.len() >= 2 * l0 {
            return Err(Error::ProgressStall { swaps: seq.len() });
        }
        let step = w.next_step()?;
        w.invalidate(&step);
        let swaps = step.swaps();
        for &(a, b) in &swaps {
            w.swap(a, b);
            seq.push(a, b);
        }
        match step {
            Step::HappyChain(_) => {
                let drop = swaps.len() + 1;
                assert!(l >= drop, "happy chain overshoots the displacement");
                l -= drop;
                trace.extend(std::iter::repeat_n(SwapLabel::Happy { chain: chains }, swaps.len()));
                chains += 1;
            }
            Step::UnhappySwap(..) => trace.push(SwapLabel::Unhappy),
        }
    }
    assert_eq!(l, 0, "displacement bookkeeping drifted");
    Ok(SolveResult::with_trace(seq, trace))
}

/// Vertices of a shortest path from `a` to `b`, always stepping to the
/// lowest-indexed neighbor that is closer to `b`.
fn shortest_path(graph: &Graph, dist: &DistanceTable, a: usize, b: usize) -> Vec<usize> {
    let row = dist.row(b);
    let mut path = vec![a];
    let mut c = a;
    while c != b {
        c = *graph
            .neighbors(c)
            .iter()
            .find(|&&x| row[x] + 1 == row[c])
            .expect("distance table matches the graph");
        path.push(c);
    }
    path
}

/// Exchanges the tokens at the ends of `path` with `2d - 1` swaps; every
/// other token on the path ends where it started.
fn exchange(path: &[usize], seq: &mut SwapSequence, cur: &mut [usize]) {
    let d = path.len() - 1;
    let mut emit = |i: usize, j: usize, cur: &mut [usize]| {
        cur.swap(path[i], path[j]);
        seq.push(path[i], path[j]);
    };
    for i in 0..d {
        emit(i, i + 1, cur);
    }
    for i in (0..d.saturating_sub(1)).rev() {
        emit(i, i + 1, cur);
    }
}

/// Resolves each permutation cycle by walking its smallest token around
/// the cycle, exchanging it with the token that belongs where it stands.
pub fn solve_cycle_decomposition(graph: &Graph, placement: &TokenPlacement, dist: &DistanceTable) -> Result<SolveResult> {
    if graph.n() != placement.n() {
        return Err(Error::SizeMismatch {
            expected: graph.n(),
            got: placement.n(),
        });
    }
    graph.require_connected()?;
    let mut cur = placement.as_slice().to_vec();
    let mut pos = placement.positions();
    let mut seq = SwapSequence::default();
    // perm::cycles lists cycles by smallest member
    for cycle in perm::cycles(placement.as_slice()) {
        if cycle.len() < 2 {
            continue;
        }
        let walker = *cycle.iter().min().unwrap();
        while pos[walker] != walker {
            let here = pos[walker];
            // token `here` is the one that belongs on the walker's vertex
            let path = shortest_path(graph, dist, here, pos[here]);
            let before = seq.len();
            exchange(&path, &mut seq, &mut cur);
            for &(a, b) in &seq.swaps()[before..] {
                pos[cur[a]] = a;
                pos[cur[b]] = b;
            }
        }
    }
    debug_assert!(cur.iter().enumerate().all(|(v, &t)| v == t));
    Ok(SolveResult::new(seq))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::placement::verify_solution;

    fn p(v: &[usize]) -> TokenPlacement {
        TokenPlacement::new(v.iter().map(|x| x - 1).collect()).unwrap()
    }

    fn f_of(g: &Graph, pl: &TokenPlacement) -> DesireDigraph {
        build_desire_digraph(g, pl, &bounds::all_pairs_distances(g))
    }

    #[test]
    fn desire_digraph_examples() {
        let g = Graph::path(3);
        assert!(f_of(&g, &TokenPlacement::identity(3)).arcs().is_empty());
        assert_eq!(f_of(&g, &p(&[2, 1, 3])).arcs(), vec![(0, 1), (1, 0)]);
        let f = f_of(&g, &p(&[3, 2, 1]));
        assert_eq!(f.arcs(), vec![(0, 1), (2, 1)]);
        assert_eq!(f.out_degree(1), 0);
    }

    #[test]
    fn find_step_examples() {
        let g = Graph::path(3);
        let a = p(&[2, 1, 3]);
        assert_eq!(find_step(&g, &a, &f_of(&g, &a)).unwrap(), Step::HappyChain(vec![0, 1]));
        let b = p(&[3, 2, 1]);
        assert_eq!(find_step(&g, &b, &f_of(&g, &b)).unwrap(), Step::UnhappySwap(0, 1));
        let c7 = Graph::cycle(7);
        let rot = TokenPlacement::new((0..7).map(|v| (v + 1) % 7).collect()).unwrap();
        match find_step(&c7, &rot, &f_of(&c7, &rot)).unwrap() {
            Step::HappyChain(vs) => assert_eq!(vs.len(), 7),
            other => panic!("expected a chain, got {other:?}"),
        }
    }

    #[test]
    fn happy_on_c7_rotation() {
        let c7 = Graph::cycle(7);
        let rot = TokenPlacement::new((0..7).map(|v| (v + 1) % 7).collect()).unwrap();
        let r = solve_happy(&c7, &rot).unwrap();
        assert_eq!(r.length, 6);
        assert!(r.trace.unwrap().iter().all(|l| l.is_happy()));
        assert!(verify_solution(&c7, &rot, &r.sequence).unwrap());
    }

    #[test]
    fn happy_on_p3_reversal() {
        let g = Graph::path(3);
        let r = solve_happy(&g, &p(&[3, 2, 1])).unwrap();
        assert_eq!(r.length, 3);
        let t = r.trace.unwrap();
        assert_eq!(t[0], SwapLabel::Unhappy);
        assert!(t[1].is_happy() && t[2].is_happy());
        assert_eq!(solve_happy(&g, &TokenPlacement::identity(3)).unwrap().length, 0);
    }

    #[test]
    fn cycle_decomposition_examples() {
        let g = Graph::path(5);
        let dist = bounds::all_pairs_distances(&g);
        // transposition at distance 3
        let t = p(&[4, 2, 3, 1, 5]);
        let r = solve_cycle_decomposition(&g, &t, &dist).unwrap();
        assert_eq!(r.length, 5);
        assert!(verify_solution(&g, &t, &r.sequence).unwrap());
        assert_eq!(solve_cycle_decomposition(&g, &TokenPlacement::identity(5), &dist).unwrap().length, 0);

        let g4 = Graph::path(4);
        let two = p(&[2, 1, 4, 3]);
        let r = solve_cycle_decomposition(&g4, &two, &bounds::all_pairs_distances(&g4)).unwrap();
        assert_eq!(r.length, 2);
    }
}
