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

//! Shortest-path distances, the displacement lower bound and closed-form
//! optima for paths and complete graphs.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::perm;
use crate::placement::TokenPlacement;

const UNREACHABLE: u16 = u16::MAX;

/// All-pairs hop distances, stored row-major as `u16`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceTable {
    n: usize,
    dist: Vec<u16>,
}

impl DistanceTable {
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Hop count between `u` and `v`.
    ///
    /// # Panics
    ///
    /// If `v` is unreachable from `u`.
    #[inline]
    pub fn get(&self, u: usize, v: usize) -> usize {
        let d = self.dist[u * self.n + v];
        assert!(d != UNREACHABLE, "vertices {} and {} are not connected", u + 1, v + 1);
        d as usize
    }

    /// Distances from `u` to every vertex.
    #[inline]
    pub fn row(&self, u: usize) -> &[u16] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }
}

/// BFS from every vertex.
///
/// # Panics
///
/// If the graph has 65535 or more vertices.
pub fn all_pairs_distances(graph: &Graph) -> DistanceTable {
    let n = graph.n();
    assert!(n < UNREACHABLE as usize, "distance table supports fewer than 65535 vertices");
    let mut dist = vec![UNREACHABLE; n * n];
    let mut queue = VecDeque::with_capacity(n);
    for s in 0..n {
        let row = &mut dist[s * n..(s + 1) * n];
        row[s] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            let du = row[u];
            for &w in graph.neighbors(u) {
                if row[w] == UNREACHABLE {
                    row[w] = du + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    DistanceTable { n, dist }
}

/// Sum over all tokens of the distance from their vertex to their target.
pub fn total_displacement(dist: &DistanceTable, placement: &TokenPlacement) -> usize {
    placement
        .as_slice()
        .iter()
        .enumerate()
        .map(|(v, &t)| dist.get(v, t))
        .sum()
}

/// `ceil(L / 2)`, raised by one when its parity disagrees with the sign of
/// the placement: every swap is a transposition, so any solution length
/// has the placement's parity.
pub fn lower_bound(dist: &DistanceTable, placement: &TokenPlacement) -> usize {
    let half = total_displacement(dist, placement).div_ceil(2);
    if (half % 2 == 1) != placement.is_odd() {
        half + 1
    } else {
        half
    }
}

/// Optimum on the path `1-2-...-n`: the inversion count.
pub fn path_optimal(graph: &Graph, placement: &TokenPlacement) -> Result<u64> {
    if !graph.is_canonical_path() || graph.n() != placement.n() {
        return Err(Error::NotAPath);
    }
    Ok(perm::inversions(placement.as_slice()))
}

/// Optimum on `K_n`: `n` minus the number of cycles.
pub fn complete_optimal(graph: &Graph, placement: &TokenPlacement) -> Result<usize> {
    if !graph.is_complete() || graph.n() != placement.n() {
        return Err(Error::NotComplete);
    }
    Ok(placement.n() - perm::cycle_count(placement.as_slice()))
}
