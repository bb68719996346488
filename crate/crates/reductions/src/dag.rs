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

//! Layered directed acyclic graphs with source/sink pairs, and a
//! backtracking search for vertex-disjoint path covers.
//!
//! Text format (1-indexed):
//!
//! ```text
//! layer 1: 1 2
//! layer 2: 3 4
//! arc 1 3
//! arc 2 4
//! phi 1 3
//! phi 2 4
//! ```

use std::collections::VecDeque;
use std::fmt::{self, Write as _};

use crate::error::{ReductionError, Result};

/// Maximum number of vertices per layer.
pub const MAX_LAYER_WIDTH: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayeredDag {
    layer_of: Vec<usize>,
    layers: Vec<Vec<usize>>,
    arcs: Vec<(usize, usize)>,
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
    /// `(source, sink)` pairs sorted by source.
    phi: Vec<(usize, usize)>,
    sink_of: Vec<Option<usize>>,
    source_of: Vec<Option<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DagViolation {
    LayerTooWide { layer: usize, size: usize },
    /// In-arcs of this vertex come from more than one layer.
    MixedInLayers { vertex: usize },
    SourceHasInArcs { vertex: usize },
    SinkHasOutArcs { vertex: usize },
    UnreachableSink { source: usize },
    /// Sum of shortest path vertex counts differs from the vertex count.
    VertexCountMismatch { vertices: usize, path_total: usize },
}

impl fmt::Display for DagViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DagViolation::LayerTooWide { layer, size } => write!(f, "layer {} has {size} vertices", layer + 1),
            DagViolation::MixedInLayers { vertex } => {
                write!(f, "vertex {} has in-arcs from several layers", vertex + 1)
            }
            DagViolation::SourceHasInArcs { vertex } => write!(f, "source {} has in-arcs", vertex + 1),
            DagViolation::SinkHasOutArcs { vertex } => write!(f, "sink {} has out-arcs", vertex + 1),
            DagViolation::UnreachableSink { source } => {
                write!(f, "source {} cannot reach its sink", source + 1)
            }
            DagViolation::VertexCountMismatch { vertices, path_total } => {
                write!(f, "{vertices} vertices but shortest paths total {path_total}")
            }
        }
    }
}

fn invalid(msg: String) -> ReductionError {
    ReductionError::InvalidDag(msg)
}

impl LayeredDag {
    /// Checks shape only: arcs go to strictly later layers, no duplicate
    /// arcs, and `phi` is a partial bijection. The structural properties
    /// are reported by [`LayeredDag::validate`].
    pub fn new(layer_of: Vec<usize>, arcs: Vec<(usize, usize)>, phi: Vec<(usize, usize)>) -> Result<Self> {
        let n = layer_of.len();
        let t = layer_of.iter().max().map_or(0, |&l| l + 1);
        let mut layers = vec![Vec::new(); t];
        for (v, &l) in layer_of.iter().enumerate() {
            layers[l].push(v);
        }
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for &(u, v) in &arcs {
            if u >= n || v >= n {
                return Err(invalid(format!("arc ({}, {}) out of range", u + 1, v + 1)));
            }
            if layer_of[u] >= layer_of[v] {
                return Err(invalid(format!("arc ({}, {}) does not go to a later layer", u + 1, v + 1)));
            }
            out[u].push(v);
            inn[v].push(u);
        }
        for list in out.iter_mut().chain(inn.iter_mut()) {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(invalid("duplicate arc".into()));
            }
        }
        let mut phi = phi;
        phi.sort_unstable();
        let mut sink_of = vec![None; n];
        let mut source_of = vec![None; n];
        for &(s, t) in &phi {
            if s >= n || t >= n {
                return Err(invalid(format!("pair ({}, {}) out of range", s + 1, t + 1)));
            }
            if sink_of[s].is_some() || source_of[t].is_some() || source_of[s].is_some() || sink_of[t].is_some() {
                return Err(invalid(format!("pair ({}, {}) reuses a vertex", s + 1, t + 1)));
            }
            sink_of[s] = Some(t);
            source_of[t] = Some(s);
        }
        let mut arcs = arcs;
        arcs.sort_unstable();
        Ok(LayeredDag {
            layer_of,
            layers,
            arcs,
            out,
            inn,
            phi,
            sink_of,
            source_of,
        })
    }

    pub fn n(&self) -> usize {
        self.layer_of.len()
    }

    pub fn layer_count(&self) -> usize {
        self.layers.len()
    }

    pub fn layers(&self) -> &[Vec<usize>] {
        &self.layers
    }

    pub fn layer_of(&self, v: usize) -> usize {
        self.layer_of[v]
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn out(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn inn(&self, v: usize) -> &[usize] {
        &self.inn[v]
    }

    pub fn phi(&self) -> &[(usize, usize)] {
        &self.phi
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.sink_of[v].is_some()
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.source_of[v].is_some()
    }

    pub fn sink_of(&self, s: usize) -> Option<usize> {
        self.sink_of[s]
    }

    /// Layer all in-arcs of `v` come from, if they agree.
    pub fn in_layer(&self, v: usize) -> Option<usize> {
        let first = self.layer_of[*self.inn[v].first()?];
        self.inn[v]
            .iter()
            .all(|&u| self.layer_of[u] == first)
            .then_some(first)
    }

    /// Vertex count of a shortest directed path from `s` to its sink.
    pub fn path_vertex_count(&self, s: usize) -> Option<usize> {
        let target = self.sink_of[s]?;
        let mut dist = vec![usize::MAX; self.n()];
        dist[s] = 1;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            if u == target {
                return Some(dist[u]);
            }
            for &w in &self.out[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    q.push_back(w);
                }
            }
        }
        None
    }

    pub fn validate(&self) -> Vec<DagViolation> {
        let mut bad = Vec::new();
        for (layer, vs) in self.layers.iter().enumerate() {
            if vs.len() > MAX_LAYER_WIDTH {
                bad.push(DagViolation::LayerTooWide { layer, size: vs.len() });
            }
        }
        for v in 0..self.n() {
            if !self.inn[v].is_empty() && self.in_layer(v).is_none() {
                bad.push(DagViolation::MixedInLayers { vertex: v });
            }
            if self.is_source(v) && !self.inn[v].is_empty() {
                bad.push(DagViolation::SourceHasInArcs { vertex: v });
            }
            if self.is_sink(v) && !self.out[v].is_empty() {
                bad.push(DagViolation::SinkHasOutArcs { vertex: v });
            }
        }
        let mut total = 0;
        for &(s, _) in &self.phi {
            match self.path_vertex_count(s) {
                Some(c) => total += c,
                None => bad.push(DagViolation::UnreachableSink { source: s }),
            }
        }
        if total != self.n() {
            bad.push(DagViolation::VertexCountMismatch {
                vertices: self.n(),
                path_total: total,
            });
        }
        bad
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, vs) in self.layers.iter().enumerate() {
            let names: Vec<String> = vs.iter().map(|v| (v + 1).to_string()).collect();
            writeln!(out, "layer {}: {}", i + 1, names.join(" ")).unwrap();
        }
        for &(u, v) in &self.arcs {
            writeln!(out, "arc {} {}", u + 1, v + 1).unwrap();
        }
        for &(s, t) in &self.phi {
            writeln!(out, "phi {} {}", s + 1, t + 1).unwrap();
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let perr = |line: usize, reason: &str| ReductionError::Parse {
            line,
            reason: reason.to_string(),
        };
        let mut layer_of: Vec<Option<usize>> = Vec::new();
        let mut arcs = Vec::new();
        let mut phi = Vec::new();
        let num = |line: usize, s: &str| -> Result<usize> {
            match s.parse::<usize>() {
                Ok(x) if x > 0 => Ok(x - 1),
                _ => Err(perr(line, "expected a positive integer")),
            }
        };
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            if let Some(rest) = body.strip_prefix("layer") {
                let (idx, verts) = rest.split_once(':').ok_or_else(|| perr(line, "expected `layer i: v...`"))?;
                let layer = num(line, idx.trim())?;
                for v in verts.split_whitespace() {
                    let v = num(line, v)?;
                    if layer_of.len() <= v {
                        layer_of.resize(v + 1, None);
                    }
                    if layer_of[v].replace(layer).is_some() {
                        return Err(perr(line, "vertex listed in two layers"));
                    }
                }
                continue;
            }
            let f: Vec<&str> = body.split_whitespace().collect();
            if f.len() != 3 {
                return Err(perr(line, "expected `arc u v` or `phi s t`"));
            }
            let pair = (num(line, f[1])?, num(line, f[2])?);
            match f[0] {
                "arc" => arcs.push(pair),
                "phi" => phi.push(pair),
                _ => return Err(perr(line, "unknown record")),
            }
        }
        let layer_of = layer_of
            .into_iter()
            .enumerate()
            .map(|(v, l)| l.ok_or_else(|| invalid(format!("vertex {} has no layer", v + 1))))
            .collect::<Result<Vec<_>>>()?;
        LayeredDag::new(layer_of, arcs, phi)
    }
}

/// Incremental construction with fresh vertex ids.
#[derive(Debug, Default, Clone)]
pub struct DagBuilder {
    layer_of: Vec<usize>,
    arcs: Vec<(usize, usize)>,
    phi: Vec<(usize, usize)>,
}

impl DagBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(&mut self, layer: usize) -> usize {
        self.layer_of.push(layer);
        self.layer_of.len() - 1
    }

    pub fn arc(&mut self, u: usize, v: usize) {
        self.arcs.push((u, v));
    }

    pub fn pair(&mut self, source: usize, sink: usize) {
        self.phi.push((source, sink));
    }

    pub fn build(self) -> Result<LayeredDag> {
        LayeredDag::new(self.layer_of, self.arcs, self.phi)
    }
}

/// Disjoint paths, one per `(source, sink)` pair in [`LayeredDag::phi`]
/// order, each listed from source to sink.
pub type PathCover = Vec<Vec<usize>>;

struct CoverSearch<'a> {
    dag: &'a LayeredDag,
    paths: Vec<Vec<usize>>,
    targets: Vec<usize>,
    used: Vec<bool>,
    unused_in_layer: Vec<usize>,
    /// Path index owning each sink.
    owner: Vec<usize>,
    stamp: Vec<u32>,
    epoch: u32,
    queue: Vec<usize>,
    nodes: usize,
    budget: usize,
    limit: usize,
    found: Vec<PathCover>,
}

impl CoverSearch<'_> {
    fn reachable(&mut self, from: usize, to: usize, path: usize) -> bool {
        self.epoch += 1;
        self.queue.clear();
        self.queue.push(from);
        self.stamp[from] = self.epoch;
        while let Some(u) = self.queue.pop() {
            for &w in self.dag.out(u) {
                if w == to {
                    return true;
                }
                let blocked = self.used[w] || (self.owner[w] != usize::MAX && self.owner[w] != path);
                if !blocked && self.stamp[w] != self.epoch {
                    self.stamp[w] = self.epoch;
                    self.queue.push(w);
                }
            }
        }
        false
    }

    fn occupy(&mut self, v: usize) {
        self.used[v] = true;
        self.unused_in_layer[self.dag.layer_of(v)] -= 1;
    }

    fn release(&mut self, v: usize) {
        self.used[v] = false;
        self.unused_in_layer[self.dag.layer_of(v)] += 1;
    }

    /// Returns `true` once enough covers have been found.
    fn run(&mut self) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(ReductionError::OracleBudgetExceeded { nodes: self.nodes });
        }
        // the open path whose head sits on the earliest layer moves next
        let mut pick: Option<(usize, usize)> = None;
        for (i, p) in self.paths.iter().enumerate() {
            let head = *p.last().unwrap();
            if head != self.targets[i] {
                let l = self.dag.layer_of(head);
                if pick.is_none_or(|(bl, _)| l < bl) {
                    pick = Some((l, i));
                }
            }
        }
        let Some((min_layer, i)) = pick else {
            if self.unused_in_layer.iter().all(|&c| c == 0) {
                self.found.push(self.paths.clone());
                return Ok(self.found.len() >= self.limit);
            }
            return Ok(false);
        };
        // heads only move to later layers, so nothing at or before the
        // lowest head can still be covered
        if self.unused_in_layer[..=min_layer].iter().any(|&c| c > 0) {
            return Ok(false);
        }
        for j in 0..self.paths.len() {
            let head = *self.paths[j].last().unwrap();
            if head != self.targets[j] && !self.reachable(head, self.targets[j], j) {
                return Ok(false);
            }
        }
        let head = *self.paths[i].last().unwrap();
        for k in 0..self.dag.out(head).len() {
            let w = self.dag.out(head)[k];
            if self.used[w] || (self.owner[w] != usize::MAX && self.owner[w] != i) {
                continue;
            }
            self.occupy(w);
            self.paths[i].push(w);
            let stop = self.run()?;
            self.paths[i].pop();
            self.release(w);
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Up to `limit` path covers, in search order.
pub fn dp_solve_all(dag: &LayeredDag, limit: usize, budget: usize) -> Result<Vec<PathCover>> {
    let n = dag.n();
    let mut owner = vec![usize::MAX; n];
    let mut s = CoverSearch {
        dag,
        paths: dag.phi().iter().map(|&(s, _)| vec![s]).collect(),
        targets: dag.phi().iter().map(|&(_, t)| t).collect(),
        used: vec![false; n],
        unused_in_layer: dag.layers().iter().map(Vec::len).collect(),
        owner: Vec::new(),
        stamp: vec![0; n],
        epoch: 0,
        queue: Vec::new(),
        nodes: 0,
        budget,
        limit,
        found: Vec::new(),
    };
    for (i, &(src, t)) in dag.phi().iter().enumerate() {
        owner[t] = i;
        s.occupy(src);
    }
    s.owner = owner;
    if limit > 0 {
        s.run()?;
    }
    Ok(s.found)
}

/// A cover of all vertices by disjoint source-to-sink paths, if any.
pub fn dp_solve(dag: &LayeredDag, budget: usize) -> Result<Option<PathCover>> {
    Ok(dp_solve_all(dag, 1, budget)?.pop())
}

/// Default node budget for [`dp_solve`].
pub const DEFAULT_DP_BUDGET: usize = 20_000_000;

/// `true` iff `cover` is a vertex-disjoint cover by directed
/// source-to-sink paths matching the dag's pairs.
pub fn is_path_cover(dag: &LayeredDag, cover: &PathCover) -> bool {
    if cover.len() != dag.phi().len() {
        return false;
    }
    let mut seen = vec![false; dag.n()];
    for (path, &(s, t)) in cover.iter().zip(dag.phi()) {
        if path.first() != Some(&s) || path.last() != Some(&t) {
            return false;
        }
        for w in path.windows(2) {
            if dag.out(w[0]).binary_search(&w[1]).is_err() {
                return false;
            }
        }
        for &v in path {
            if std::mem::replace(&mut seen[v], true) {
                return false;
            }
        }
    }
    seen.into_iter().all(|x| x)
}
