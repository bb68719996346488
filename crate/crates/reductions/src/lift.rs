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

//! Colored to uncolored token swapping.
//!
//! The structured colored instance is copied twice. For every layer with
//! non-sink vertices a permutation network is attached whose inputs are
//! those vertices in both copies; each filler token of that layer's color
//! gets a distinct network output as its target. Source tokens keep their
//! sinks. Any colored solution of length `k` then lifts to an uncolored
//! one of length `2k` plus the fixed cost of all networks.

use tsw_core::{Graph, SwapSequence, TokenPlacement};

use crate::dp_colored::StructuredColoredInstance;
use crate::error::{ReductionError, Result};
use crate::network::{build_permutation_network, PermutationNetwork};

/// Largest network the lift will build.
pub const MAX_NETWORK_INPUTS: usize = 20;

#[derive(Debug, Clone)]
pub struct AttachedNetwork {
    pub layer: usize,
    pub network: PermutationNetwork,
    /// Lifted vertex of every network vertex.
    pub vertex_map: Vec<usize>,
    /// Filler start vertices (host numbering) in canonical order; filler
    /// `i` of copy `c` targets output `c * r + i`.
    pub fillers: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct LiftedInstance {
    pub graph: Graph,
    pub placement: TokenPlacement,
    pub threshold: usize,
    /// Vertex count of the colored host graph.
    pub host_n: usize,
    pub networks: Vec<AttachedNetwork>,
}

pub fn structured_to_uncolored(inst: &StructuredColoredInstance) -> Result<LiftedInstance> {
    let host = &inst.colored;
    let n = host.n();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for &(u, v) in host.graph.edges() {
        edges.push((u, v));
        edges.push((n + u, n + v));
    }
    // placement[x] = target vertex of the token starting on x
    let mut target = vec![usize::MAX; 2 * n];
    for &(s, t) in &inst.phi {
        target[s] = t;
        target[n + s] = n + t;
    }
    let mut next = 2 * n;
    let mut networks = Vec::new();
    for (layer, members) in inst.layers().into_iter().enumerate() {
        let inputs: Vec<usize> = members.into_iter().filter(|&v| !inst.is_sink(v)).collect();
        if inputs.is_empty() {
            continue;
        }
        let r = inputs.len();
        if 2 * r > MAX_NETWORK_INPUTS {
            return Err(ReductionError::LayerTooLarge { layer, inputs: 2 * r });
        }
        let color = host.vertex_colors[inputs[0]];
        let fillers: Vec<usize> = (0..n)
            .filter(|&v| !inst.is_source(v) && host.token_colors[host.placement.token_at(v)] == color)
            .collect();
        if fillers.len() != r {
            return Err(tsw_core::Error::ColorMultisetMismatch.into());
        }
        let network = build_permutation_network(2 * r);
        let mut vertex_map = vec![usize::MAX; network.graph.n()];
        for (i, &x) in network.inputs.iter().enumerate() {
            vertex_map[x] = if i < r { inputs[i] } else { n + inputs[i - r] };
        }
        for m in vertex_map.iter_mut().filter(|m| **m == usize::MAX) {
            *m = next;
            next += 1;
        }
        target.resize(next, usize::MAX);
        for &(u, v) in network.graph.edges() {
            edges.push((vertex_map[u], vertex_map[v]));
        }
        for (x, t) in network.fixed_targets.iter().enumerate() {
            if let Some(t) = *t {
                target[vertex_map[x]] = vertex_map[t];
            }
        }
        for (i, &f) in fillers.iter().enumerate() {
            target[f] = vertex_map[network.outputs[i]];
            target[n + f] = vertex_map[network.outputs[r + i]];
        }
        networks.push(AttachedNetwork { layer, network, vertex_map, fillers });
    }
    let graph = Graph::new(next, edges)?;
    if !graph.is_connected() {
        return Err(tsw_core::Error::DisconnectedGraph.into());
    }
    let placement = TokenPlacement::new(target)?;
    let threshold = 2 * inst.threshold + networks.iter().map(|a| a.network.cost).sum::<usize>();
    Ok(LiftedInstance { graph, placement, threshold, host_n: n, networks })
}

impl LiftedInstance {
    /// Lifts a colored solution: run it on both copies, then route every
    /// network according to where the fillers ended up.
    pub fn lift_solution(&self, colored: &SwapSequence) -> Result<SwapSequence> {
        let n = self.host_n;
        let mut seq = colored.clone();
        seq.extend_from(&colored.mapped(|v| n + v));
        // at[f] = host vertex holding the token that started on f
        let mut on: Vec<usize> = (0..n).collect();
        for &(u, v) in colored.swaps() {
            on.swap(u, v);
        }
        let mut at = vec![0; n];
        for (v, &start) in on.iter().enumerate() {
            at[start] = v;
        }
        for a in &self.networks {
            let r = a.fillers.len();
            let inputs: Vec<usize> = (0..r).map(|i| a.vertex_map[a.network.inputs[i]]).collect();
            let mut perm = vec![usize::MAX; 2 * r];
            for (i, &f) in a.fillers.iter().enumerate() {
                let pos = inputs.iter().position(|&x| x == at[f]).ok_or_else(|| {
                    ReductionError::Core(tsw_core::Error::InvalidPermutation(format!(
                        "filler from vertex {} does not end on layer {}",
                        f + 1,
                        a.layer + 1
                    )))
                })?;
                perm[pos] = i;
                perm[r + pos] = r + i;
            }
            let routed = a.network.route(&perm)?;
            seq.extend_from(&routed.mapped(|v| a.vertex_map[v]));
        }
        Ok(seq)
    }
}
