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

//! Layered disjoint paths to structured colored token swapping.
//!
//! The graph is the dag with arc directions dropped. Every source holds a
//! uniquely colored token whose only matching vertex is its sink. Every
//! other vertex holds a filler token colored after the layer its in-arcs
//! come from, and every non-sink vertex of layer `j` has color `j`. A
//! path cover then translates into pushing each source token down its
//! path, which moves every filler exactly once.

use std::collections::BTreeMap;
use std::fmt;

use tsw_core::{ColoredInstance, Graph, SwapSequence, TokenPlacement};

use crate::dag::{LayeredDag, PathCover, MAX_LAYER_WIDTH};
use crate::error::{ReductionError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuredColoredInstance {
    pub colored: ColoredInstance,
    pub layer_of: Vec<usize>,
    /// `(source, sink)` vertex pairs.
    pub phi: Vec<(usize, usize)>,
    pub threshold: usize,
}

impl StructuredColoredInstance {
    pub fn layer_count(&self) -> usize {
        self.layer_of.iter().max().map_or(0, |&l| l + 1)
    }

    pub fn layers(&self) -> Vec<Vec<usize>> {
        let mut layers = vec![Vec::new(); self.layer_count()];
        for (v, &l) in self.layer_of.iter().enumerate() {
            layers[l].push(v);
        }
        layers
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.phi.iter().any(|&(_, t)| t == v)
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.phi.iter().any(|&(s, _)| s == v)
    }
}

/// A violated property of a structured colored instance. `property()`
/// gives its number in the order the checks are listed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructureViolation {
    /// 1: more than ten vertices in a layer.
    LayerTooWide { layer: usize, size: usize },
    /// 2: an edge joins two vertices of one layer.
    EdgeWithinLayer { u: usize, v: usize },
    /// 3: the token on a source is not uniquely matched to its sink.
    SourceNotMatchedToSink { source: usize },
    /// 4: non-sink vertices of one layer carry different colors.
    MixedLayerColors { layer: usize },
    /// 5: a non-source vertex has lower neighbors in several layers.
    MixedInLayers { vertex: usize },
}

impl StructureViolation {
    pub fn property(&self) -> u8 {
        match self {
            StructureViolation::LayerTooWide { .. } => 1,
            StructureViolation::EdgeWithinLayer { .. } => 2,
            StructureViolation::SourceNotMatchedToSink { .. } => 3,
            StructureViolation::MixedLayerColors { .. } => 4,
            StructureViolation::MixedInLayers { .. } => 5,
        }
    }
}

impl fmt::Display for StructureViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "property {}: ", self.property())?;
        match self {
            StructureViolation::LayerTooWide { layer, size } => write!(f, "layer {} has {size} vertices", layer + 1),
            StructureViolation::EdgeWithinLayer { u, v } => {
                write!(f, "edge ({}, {}) stays inside a layer", u + 1, v + 1)
            }
            StructureViolation::SourceNotMatchedToSink { source } => {
                write!(f, "token on source {} is not matched to its sink alone", source + 1)
            }
            StructureViolation::MixedLayerColors { layer } => {
                write!(f, "non-sink vertices of layer {} have different colors", layer + 1)
            }
            StructureViolation::MixedInLayers { vertex } => {
                write!(f, "vertex {} has lower neighbors in several layers", vertex + 1)
            }
        }
    }
}

pub fn dp_to_colored(dag: &LayeredDag) -> Result<StructuredColoredInstance> {
    let n = dag.n();
    let t = dag.layer_count() as u32;
    let graph = Graph::new(n, dag.arcs().iter().copied())?;
    let mut vertex_colors: Vec<u32> = (0..n).map(|v| dag.layer_of(v) as u32).collect();
    let mut token_colors = vec![0u32; n];
    for (i, &(s, sink)) in dag.phi().iter().enumerate() {
        token_colors[s] = t + i as u32;
        vertex_colors[sink] = t + i as u32;
    }
    for v in (0..n).filter(|&v| !dag.is_source(v)) {
        let layer = dag.in_layer(v).ok_or_else(|| {
            ReductionError::InvalidDag(format!("vertex {} has no single in-layer", v + 1))
        })?;
        token_colors[v] = layer as u32;
    }
    // token `v` starts on vertex `v`
    let colored = ColoredInstance::new(graph, token_colors, vertex_colors, TokenPlacement::identity(n))?;
    Ok(StructuredColoredInstance {
        colored,
        layer_of: (0..n).map(|v| dag.layer_of(v)).collect(),
        phi: dag.phi().to_vec(),
        threshold: n - dag.phi().len(),
    })
}

pub fn check_structured(inst: &StructuredColoredInstance) -> Vec<StructureViolation> {
    let g = &inst.colored.graph;
    let layer = &inst.layer_of;
    let mut bad = Vec::new();
    let layers = inst.layers();
    for (l, vs) in layers.iter().enumerate() {
        if vs.len() > MAX_LAYER_WIDTH {
            bad.push(StructureViolation::LayerTooWide { layer: l, size: vs.len() });
        }
    }
    for &(u, v) in g.edges() {
        if layer[u] == layer[v] {
            bad.push(StructureViolation::EdgeWithinLayer { u, v });
        }
    }
    let mut token_count: BTreeMap<u32, usize> = BTreeMap::new();
    for &c in &inst.colored.token_colors {
        *token_count.entry(c).or_default() += 1;
    }
    for &(s, t) in &inst.phi {
        let c = inst.colored.token_colors[inst.colored.placement.token_at(s)];
        let vertices: Vec<usize> = (0..g.n()).filter(|&v| inst.colored.vertex_colors[v] == c).collect();
        if token_count[&c] != 1 || vertices != [t] {
            bad.push(StructureViolation::SourceNotMatchedToSink { source: s });
        }
    }
    for (l, vs) in layers.iter().enumerate() {
        let mut colors = vs
            .iter()
            .filter(|&&v| !inst.is_sink(v))
            .map(|&v| inst.colored.vertex_colors[v]);
        if let Some(first) = colors.next() {
            if colors.any(|c| c != first) {
                bad.push(StructureViolation::MixedLayerColors { layer: l });
            }
        }
    }
    for v in (0..g.n()).filter(|&v| !inst.is_source(v)) {
        let mut lower = g.neighbors(v).iter().map(|&w| layer[w]).filter(|&l| l < layer[v]);
        if let Some(first) = lower.next() {
            if lower.any(|l| l != first) {
                bad.push(StructureViolation::MixedInLayers { vertex: v });
            }
        }
    }
    bad
}

/// Pushes each source token down its path. Uses `|V| - k` swaps and moves
/// every filler token exactly once.
pub fn colored_solution_from_cover(cover: &PathCover) -> SwapSequence {
    cover
        .iter()
        .flat_map(|p| p.windows(2).map(|w| (w[0], w[1])))
        .collect()
}
