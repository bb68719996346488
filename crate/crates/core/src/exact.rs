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

//! Optimal solvers by search over the configuration graph.
//!
//! All three solvers expand swaps in lexicographic edge order, so their
//! output is deterministic.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};

use crate::bounds::{self, DistanceTable};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::placement::{ColoredInstance, SolveResult, SwapSequence, TokenPlacement};

/// Default cap on the number of configurations a search may touch.
pub const DEFAULT_NODE_BUDGET: usize = 50_000_000;

/// Injective encoding of a vertex-indexed vector of small integers.
///
/// Vectors of at most 16 entries with every entry below 16 pack into one
/// `u64`; anything else is stored as a boxed `u16` slice.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ConfigKey {
    Packed(u64),
    Wide(Box<[u16]>),
}

impl ConfigKey {
    pub fn encode(values: &[usize]) -> Self {
        if values.len() <= 16 && values.iter().all(|&x| x < 16) {
            let mut key = 0u64;
            for (i, &x) in values.iter().enumerate() {
                key |= (x as u64) << (4 * i);
            }
            ConfigKey::Packed(key)
        } else {
            ConfigKey::Wide(
                values
                    .iter()
                    .map(|&x| u16::try_from(x).expect("configuration entries must fit in u16"))
                    .collect(),
            )
        }
    }

    pub fn decode(&self, n: usize) -> Vec<usize> {
        match self {
            ConfigKey::Packed(key) => (0..n).map(|i| ((key >> (4 * i)) & 0xf) as usize).collect(),
            ConfigKey::Wide(v) => v.iter().map(|&x| x as usize).collect(),
        }
    }
}

fn check_size(graph: &Graph, n: usize) -> Result<()> {
    if graph.n() != n {
        return Err(Error::SizeMismatch {
            expected: graph.n(),
            got: n,
        });
    }
    graph.require_connected()
}

/// Breadth-first search from `start` until a configuration accepted by
/// `done` is reached. Returns the swap path, or `None` when every
/// configuration within `max_depth` has been seen.
fn bfs<F>(
    graph: &Graph,
    start: Vec<usize>,
    done: F,
    max_depth: usize,
    budget: usize,
) -> Result<Option<SwapSequence>>
where
    F: Fn(&[usize]) -> bool,
{
    let n = start.len();
    if done(&start) {
        return Ok(Some(SwapSequence::default()));
    }
    let edges = graph.edges();
    let root = ConfigKey::encode(&start);
    // parent key and the index of the edge that led here
    let mut parent: HashMap<ConfigKey, Option<(ConfigKey, u32)>> = HashMap::new();
    parent.insert(root.clone(), None);
    let mut queue = VecDeque::from([(root, 0usize)]);
    let mut cur = vec![0; n];

    while let Some((key, depth)) = queue.pop_front() {
        if depth == max_depth {
            continue;
        }
        cur.clear();
        cur.extend(key.decode(n));
        for (ei, &(u, v)) in edges.iter().enumerate() {
            cur.swap(u, v);
            let next = ConfigKey::encode(&cur);
            let finished = done(&cur);
            cur.swap(u, v);
            if let Entry::Vacant(slot) = parent.entry(next.clone()) {
                slot.insert(Some((key.clone(), ei as u32)));
                if finished {
                    return Ok(Some(unwind(&parent, next, edges)));
                }
                if parent.len() > budget {
                    return Err(Error::BudgetExceeded { nodes: parent.len() });
                }
                queue.push_back((next, depth + 1));
            }
        }
    }
    Ok(None)
}

fn unwind(
    parent: &HashMap<ConfigKey, Option<(ConfigKey, u32)>>,
    mut key: ConfigKey,
    edges: &[(usize, usize)],
) -> SwapSequence {
    let mut swaps = Vec::new();
    while let Some((prev, ei)) = &parent[&key] {
        swaps.push(edges[*ei as usize]);
        key = prev.clone();
    }
    swaps.reverse();
    SwapSequence::new(swaps)
}

/// Shortest sorting sequence by breadth-first search.
pub fn solve_bfs(graph: &Graph, placement: &TokenPlacement, budget: usize) -> Result<SolveResult> {
    check_size(graph, placement.n())?;
    let is_identity = |p: &[usize]| p.iter().enumerate().all(|(v, &t)| v == t);
    let seq = bfs(graph, placement.as_slice().to_vec(), is_identity, usize::MAX, budget)?
        .expect("a connected graph can sort every placement");
    Ok(SolveResult::new(seq))
}

struct Deepening<'a> {
    graph: &'a Graph,
    dist: DistanceTable,
    cur: Vec<usize>,
    path: Vec<usize>,
    misplaced_only: bool,
    expanded: usize,
    budget: usize,
}

impl Deepening<'_> {
    #[inline]
    fn delta(&self, u: usize, v: usize) -> isize {
        let (a, b) = (self.cur[u], self.cur[v]);
        let before = self.dist.get(u, a) + self.dist.get(v, b);
        let after = self.dist.get(v, a) + self.dist.get(u, b);
        after as isize - before as isize
    }

    /// Depth-first search for a sorting continuation of at most `left`
    /// swaps, given the current displacement `l`.
    fn search(&mut self, l: usize, left: usize) -> Result<bool> {
        if l == 0 {
            return Ok(true);
        }
        if l.div_ceil(2) > left {
            return Ok(false);
        }
        self.expanded += 1;
        if self.expanded > self.budget {
            return Err(Error::BudgetExceeded { nodes: self.expanded });
        }
        let edges = self.graph.edges();
        let last = self.path.last().copied();
        for (ei, &(u, v)) in edges.iter().enumerate() {
            if let Some(prev) = last {
                if prev == ei {
                    continue;
                }
                if !self.misplaced_only {
                    // adjacent commuting swaps are only tried in increasing order
                    let (pu, pv) = edges[prev];
                    let disjoint = pu != u && pu != v && pv != u && pv != v;
                    if disjoint && prev > ei {
                        continue;
                    }
                }
            }
            if self.misplaced_only && self.cur[u] == u && self.cur[v] == v {
                continue;
            }
            let next_l = (l as isize + self.delta(u, v)) as usize;
            self.cur.swap(u, v);
            self.path.push(ei);
            if self.search(next_l, left - 1)? {
                return Ok(true);
            }
            self.path.pop();
            self.cur.swap(u, v);
        }
        Ok(false)
    }
}

fn deepen(
    graph: &Graph,
    placement: &TokenPlacement,
    k: usize,
    budget: usize,
    misplaced_only: bool,
) -> Result<Option<SolveResult>> {
    check_size(graph, placement.n())?;
    let dist = bounds::all_pairs_distances(graph);
    let l = bounds::total_displacement(&dist, placement);
    let mut limit = bounds::lower_bound(&dist, placement);
    let mut state = Deepening {
        graph,
        dist,
        cur: placement.as_slice().to_vec(),
        path: Vec::new(),
        misplaced_only,
        expanded: 0,
        budget,
    };
    while limit <= k {
        if state.search(l, limit)? {
            let edges = graph.edges();
            let seq = state.path.iter().map(|&ei| edges[ei]).collect();
            return Ok(Some(SolveResult::new(seq)));
        }
        limit += 2;
    }
    Ok(None)
}

/// Iterative deepening from the lower bound in steps of two, up to `k`.
/// The first sequence found is optimal; `None` means no sorting sequence
/// of length at most `k` exists.
pub fn solve_depth_bounded(
    graph: &Graph,
    placement: &TokenPlacement,
    k: usize,
    budget: usize,
) -> Result<Option<SolveResult>> {
    deepen(graph, placement, k, budget, false)
}

/// Like [`solve_depth_bounded`], but only branches on swaps that move at
/// least one misplaced token.
pub fn solve_misplaced_pruned(
    graph: &Graph,
    placement: &TokenPlacement,
    k: usize,
    budget: usize,
) -> Result<Option<SolveResult>> {
    deepen(graph, placement, k, budget, true)
}

/// Shortest sequence, of length at most `k`, after which every vertex holds
/// a token of its own color. Breadth-first over color vectors.
pub fn solve_colored_bfs(inst: &ColoredInstance, k: usize, budget: usize) -> Result<Option<SwapSequence>> {
    check_size(&inst.graph, inst.n())?;
    // dense relabeling keeps small instances on the packed key
    let mut palette: Vec<u32> = inst.vertex_colors.clone();
    palette.sort_unstable();
    palette.dedup();
    let dense = |c: u32| palette.binary_search(&c).expect("color multisets match");
    let start: Vec<usize> = inst.colors_on_vertices().into_iter().map(dense).collect();
    let want: Vec<usize> = inst.vertex_colors.iter().map(|&c| dense(c)).collect();
    bfs(&inst.graph, start, |c| c == want.as_slice(), k, budget)
}
