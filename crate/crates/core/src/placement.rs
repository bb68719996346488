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

//! Token placements, swap sequences and their semantics.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::perm;

/// Which token sits on each vertex: `token_at(v)` is the token on `v`.
/// Token `t` has vertex `t` as its target.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TokenPlacement(Vec<usize>);

impl TokenPlacement {
    pub fn new(assignment: Vec<usize>) -> Result<Self> {
        if !perm::is_permutation(&assignment) {
            return Err(Error::InvalidPermutation(format!(
                "{:?} is not a permutation of 1..{}",
                assignment.iter().map(|t| t + 1).collect::<Vec<_>>(),
                assignment.len()
            )));
        }
        Ok(TokenPlacement(assignment))
    }

    pub fn identity(n: usize) -> Self {
        TokenPlacement((0..n).collect())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn token_at(&self, v: usize) -> usize {
        self.0[v]
    }

    #[inline]
    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    /// Vertex currently holding each token.
    pub fn positions(&self) -> Vec<usize> {
        perm::inverse(&self.0)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(v, &t)| v == t)
    }

    pub fn misplaced(&self) -> usize {
        self.0.iter().enumerate().filter(|&(v, &t)| v != t).count()
    }

    /// Sign parity of the vertex-to-token permutation (`true` = odd).
    pub fn is_odd(&self) -> bool {
        perm::is_odd(&self.0)
    }

    #[inline]
    pub(crate) fn swap(&mut self, u: usize, v: usize) {
        self.0.swap(u, v);
    }
}

/// An ordered list of swaps, each an unordered vertex pair.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct SwapSequence(Vec<(usize, usize)>);

impl SwapSequence {
    pub fn new(swaps: Vec<(usize, usize)>) -> Self {
        SwapSequence(swaps)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn swaps(&self) -> &[(usize, usize)] {
        &self.0
    }

    pub fn push(&mut self, u: usize, v: usize) {
        self.0.push((u, v));
    }

    pub fn extend_from(&mut self, other: &SwapSequence) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn into_vec(self) -> Vec<(usize, usize)> {
        self.0
    }

    /// Relabels every vertex through `map`.
    pub fn mapped(&self, map: impl Fn(usize) -> usize) -> SwapSequence {
        SwapSequence(self.0.iter().map(|&(u, v)| (map(u), map(v))).collect())
    }
}

impl FromIterator<(usize, usize)> for SwapSequence {
    fn from_iter<I: IntoIterator<Item = (usize, usize)>>(iter: I) -> Self {
        SwapSequence(iter.into_iter().collect())
    }
}

/// Per-swap annotation emitted by the approximation algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwapLabel {
    /// Part of the happy swap chain with the given running index.
    Happy { chain: usize },
    Unhappy,
}

impl SwapLabel {
    pub fn is_happy(self) -> bool {
        matches!(self, SwapLabel::Happy { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub sequence: SwapSequence,
    pub length: usize,
    pub trace: Option<Vec<SwapLabel>>,
}

impl SolveResult {
    pub fn new(sequence: SwapSequence) -> Self {
        SolveResult {
            length: sequence.len(),
            sequence,
            trace: None,
        }
    }

    pub fn with_trace(sequence: SwapSequence, trace: Vec<SwapLabel>) -> Self {
        debug_assert_eq!(sequence.len(), trace.len());
        SolveResult {
            length: sequence.len(),
            sequence,
            trace: Some(trace),
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
    Ok(())
}

/// Exchanges tokens along each listed edge in order. `start` is untouched.
pub fn apply_swaps(graph: &Graph, start: &TokenPlacement, seq: &SwapSequence) -> Result<TokenPlacement> {
    check_size(graph, start.n())?;
    let mut cur = start.clone();
    for (index, &(u, v)) in seq.swaps().iter().enumerate() {
        if !graph.has_edge(u, v) {
            return Err(Error::NonEdgeSwap { index, u, v });
        }
        cur.swap(u, v);
    }
    Ok(cur)
}

/// `true` iff `seq` sorts `start` into the identity placement.
pub fn verify_solution(graph: &Graph, start: &TokenPlacement, seq: &SwapSequence) -> Result<bool> {
    Ok(apply_swaps(graph, start, seq)?.is_identity())
}

/// A colored token swapping instance: token `t` has color
/// `token_colors[t]`, vertex `v` has color `vertex_colors[v]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredInstance {
    pub graph: Graph,
    pub token_colors: Vec<u32>,
    pub vertex_colors: Vec<u32>,
    pub placement: TokenPlacement,
}

impl ColoredInstance {
    pub fn new(
        graph: Graph,
        token_colors: Vec<u32>,
        vertex_colors: Vec<u32>,
        placement: TokenPlacement,
    ) -> Result<Self> {
        check_size(&graph, placement.n())?;
        check_size(&graph, token_colors.len())?;
        check_size(&graph, vertex_colors.len())?;
        let mut balance: HashMap<u32, i64> = HashMap::new();
        for &c in &token_colors {
            *balance.entry(c).or_default() += 1;
        }
        for &c in &vertex_colors {
            *balance.entry(c).or_default() -= 1;
        }
        if balance.values().any(|&b| b != 0) {
            return Err(Error::ColorMultisetMismatch);
        }
        Ok(ColoredInstance {
            graph,
            token_colors,
            vertex_colors,
            placement,
        })
    }

    /// Builds an instance from the colors of the tokens as they sit on the
    /// vertices; the placement is the identity.
    pub fn from_position_colors(graph: Graph, colors_on_vertices: Vec<u32>, vertex_colors: Vec<u32>) -> Result<Self> {
        let n = graph.n();
        Self::new(graph, colors_on_vertices, vertex_colors, TokenPlacement::identity(n))
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Color of the token currently on each vertex.
    pub fn colors_on_vertices(&self) -> Vec<u32> {
        self.placement
            .as_slice()
            .iter()
            .map(|&t| self.token_colors[t])
            .collect()
    }

    pub fn is_solved_by(&self, placement: &TokenPlacement) -> bool {
        placement
            .as_slice()
            .iter()
            .enumerate()
            .all(|(v, &t)| self.token_colors[t] == self.vertex_colors[v])
    }
}

/// `true` iff after `seq` every vertex holds a token of its own color.
pub fn verify_colored_solution(inst: &ColoredInstance, seq: &SwapSequence) -> Result<bool> {
    let end = apply_swaps(&inst.graph, &inst.placement, seq)?;
    Ok(inst.is_solved_by(&end))
}
