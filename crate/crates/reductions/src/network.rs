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

//! Even permutation networks built from swapping and shift gadgets.
//!
//! A network is a bundle of vertical tracks, one vertex per layer, joined
//! by downward edges. Gadgets add horizontal edges inside a layer and
//! start or end auxiliary tracks. In the intended routings every
//! downward edge is used once: the routed tokens sink one layer per step
//! while every filler token moves one layer up, so the cost of a routing
//! is the number of downward edges plus the horizontal swaps it uses.
//!
//! Swapping gadget on tracks `(p1, p2, p3)`, four layers, auxiliary track
//! `q` whose token must end at the bottom of `p3`:
//!
//! ```text
//! layer 1: p1-p2          (edge C')
//! layer 2: q-p2           (edge A)
//! layer 3: p1-p2          (edge C)
//! layer 4: p2-p3, p1-p3   (edges B, D)
//! ```
//!
//! It outputs on `(p1, q, p2)`: the identity via `A, B` (2 horizontal
//! swaps), `(1 2)` via `C', A, B` and `(1 3)` via `A, C, D` (3 each).
//! A shift gadget chains two swapping gadgets around an auxiliary token
//! `b` and offers the identity or a right cyclic shift, both at 6.

use std::collections::BTreeMap;

use tsw_core::{Graph, SwapSequence, TokenPlacement};

use crate::error::{ReductionError, Result};

type TrackId = usize;

/// The five horizontal edges of a swapping gadget, as vertex pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SwapGadget {
    pub c_prime: (usize, usize),
    pub a: (usize, usize),
    pub c: (usize, usize),
    pub b: (usize, usize),
    pub d: (usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwapChoice {
    Identity,
    /// Exchange the first and second input.
    First2,
    /// Exchange the first and third input.
    First3,
}

impl SwapGadget {
    /// Horizontal swaps for a choice, in execution order.
    pub fn swaps(&self, choice: SwapChoice) -> Vec<(usize, usize)> {
        match choice {
            SwapChoice::Identity => vec![self.a, self.b],
            SwapChoice::First2 => vec![self.c_prime, self.a, self.b],
            SwapChoice::First3 => vec![self.a, self.c, self.d],
        }
    }

    pub fn edges(&self) -> [(usize, usize); 5] {
        [self.c_prime, self.a, self.c, self.b, self.d]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShiftGadget {
    /// Index of the first of the three consecutive positions it acts on.
    pub window: usize,
    pub first: SwapGadget,
    pub second: SwapGadget,
}

impl ShiftGadget {
    pub fn swaps(&self, shift: bool) -> Vec<(usize, usize)> {
        let c = if shift { SwapChoice::First3 } else { SwapChoice::First2 };
        let mut s = self.first.swaps(c);
        s.extend(self.second.swaps(c));
        s
    }
}

/// Horizontal cost of either choice of a shift gadget.
pub const SHIFT_GADGET_COST: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationNetwork {
    pub graph: Graph,
    pub layer_of: Vec<usize>,
    pub inputs: Vec<usize>,
    pub outputs: Vec<usize>,
    /// Target of the token starting on each vertex; `None` on inputs.
    pub fixed_targets: Vec<Option<usize>>,
    /// Downward edges `(upper, lower)`, sorted by layer.
    pub downward: Vec<(usize, usize)>,
    pub shift_gadgets: Vec<ShiftGadget>,
    /// Per cascade (fixing positions `n`, `n-1`, ..., `3` in that order),
    /// the indices of its shift gadgets in execution order.
    pub cascades: Vec<Vec<usize>>,
    /// Optimal routing cost: downward edges plus six per shift gadget.
    pub cost: usize,
}

#[derive(Default)]
struct Builder {
    layer_of: Vec<usize>,
    edges: Vec<(usize, usize)>,
    downward: Vec<(usize, usize)>,
    fixed: Vec<Option<usize>>,
    /// Bottom vertex of each live track.
    bottom: Vec<Option<usize>>,
    layer: usize,
}

impl Builder {
    fn with_inputs(n: usize) -> Self {
        let mut b = Builder::default();
        for _ in 0..n {
            let v = b.vertex(0, None);
            b.bottom.push(Some(v));
        }
        b
    }

    fn vertex(&mut self, layer: usize, target: Option<usize>) -> usize {
        self.layer_of.push(layer);
        self.fixed.push(target);
        self.layer_of.len() - 1
    }

    fn bottom(&self, t: TrackId) -> usize {
        self.bottom[t].expect("track is live")
    }

    /// Extends every live track by one layer.
    fn next_layer(&mut self) {
        self.layer += 1;
        for t in 0..self.bottom.len() {
            if let Some(up) = self.bottom[t] {
                let v = self.vertex(self.layer, Some(up));
                self.edges.push((up, v));
                self.downward.push((up, v));
                self.bottom[t] = Some(v);
            }
        }
    }

    /// A new track whose first vertex is on the current layer. The
    /// auxiliary token there gets its target later.
    fn start_track(&mut self) -> TrackId {
        let v = self.vertex(self.layer, None);
        self.bottom.push(Some(v));
        self.bottom.len() - 1
    }

    fn end_track(&mut self, t: TrackId) -> usize {
        let v = self.bottom(t);
        self.bottom[t] = None;
        v
    }

    fn horizontal(&mut self, x: TrackId, y: TrackId) -> (usize, usize) {
        let e = (self.bottom(x), self.bottom(y));
        self.edges.push(e);
        e
    }

    /// Swapping gadget on `(p1, p2, p3)`; with `p1 = None` a fresh track is
    /// started for it on the first gadget layer. Returns the gadget, its
    /// output tracks `(p1, q, p2)` and the start vertex of `p1` if fresh.
    fn swap_gadget(&mut self, p1: Option<TrackId>, p2: TrackId, p3: TrackId) -> (SwapGadget, [TrackId; 3], Option<usize>) {
        self.next_layer();
        let (p1, fresh) = match p1 {
            Some(t) => (t, None),
            None => {
                let t = self.start_track();
                (t, Some(self.bottom(t)))
            }
        };
        let q = self.start_track();
        let a_start = self.bottom(q);
        let c_prime = self.horizontal(p1, p2);
        self.next_layer();
        let a = self.horizontal(q, p2);
        self.next_layer();
        let c = self.horizontal(p1, p2);
        self.next_layer();
        let b = self.horizontal(p2, p3);
        let d = self.horizontal(p1, p3);
        let a_target = self.end_track(p3);
        self.fixed[a_start] = Some(a_target);
        (SwapGadget { c_prime, a, c, b, d }, [p1, q, p2], fresh)
    }

    /// Shift gadget on tracks `(t1, t2, t3)`; returns its output tracks.
    fn shift_gadget(&mut self, t: [TrackId; 3], window: usize) -> (ShiftGadget, [TrackId; 3]) {
        let (first, [tb, q1, t2], b_start) = self.swap_gadget(None, t[1], t[0]);
        let (second, [t3, q2, q1b], _) = self.swap_gadget(Some(t[2]), q1, t2);
        debug_assert_eq!(q1, q1b);
        let b_target = self.end_track(t3);
        self.fixed[b_start.expect("fresh track")] = Some(b_target);
        (ShiftGadget { window, first, second }, [q1, tb, q2])
    }

    fn finish(
        mut self,
        positions: Vec<TrackId>,
        shift_gadgets: Vec<ShiftGadget>,
        cascades: Vec<Vec<usize>>,
    ) -> PermutationNetwork {
        let n_in = positions.len();
        self.next_layer();
        let outputs: Vec<usize> = positions.iter().map(|&t| self.bottom(t)).collect();
        let graph = Graph::new(self.layer_of.len(), self.edges).expect("network edges are simple");
        let cost = self.downward.len() + SHIFT_GADGET_COST * shift_gadgets.len();
        PermutationNetwork {
            graph,
            layer_of: self.layer_of,
            inputs: (0..n_in).collect(),
            outputs,
            fixed_targets: self.fixed,
            downward: self.downward,
            shift_gadgets,
            cascades,
            cost,
        }
    }
}

/// Builds the network on `n` inputs: cascades of `n-1, n-2, ..., 2`
/// shift gadgets that bring a chosen token to positions `n, ..., 3`.
/// Below three inputs the network is a bundle of plain tracks.
pub fn build_permutation_network(n: usize) -> PermutationNetwork {
    let mut b = Builder::with_inputs(n);
    let mut positions: Vec<TrackId> = (0..n).collect();
    let mut gadgets = Vec::new();
    let mut cascades = Vec::new();
    for m in (3..=n).rev() {
        let mut cascade = Vec::new();
        // gadget k (1-based) works on window max(k - 1, 1)
        for k in 1..m {
            let w = k.saturating_sub(1).max(1) - 1;
            let tracks = [positions[w], positions[w + 1], positions[w + 2]];
            let (g, out) = b.shift_gadget(tracks, w);
            positions[w..w + 3].copy_from_slice(&out);
            cascade.push(gadgets.len());
            gadgets.push(g);
        }
        cascades.push(cascade);
    }
    b.finish(positions, gadgets, cascades)
}

fn is_even(perm: &[usize]) -> bool {
    !tsw_core::perm::is_odd(perm)
}

impl PermutationNetwork {
    pub fn n(&self) -> usize {
        self.inputs.len()
    }

    /// Vertices that are neither inputs nor outputs.
    pub fn inner_vertex_count(&self) -> usize {
        self.graph.n() - self.inputs.len() - self.outputs.len()
    }

    /// Engagement of every shift gadget that sends input `i` to output
    /// `perm[i]`.
    pub fn shift_choices(&self, perm: &[usize]) -> Result<Vec<bool>> {
        let n = self.n();
        if perm.len() != n || !tsw_core::perm::is_permutation(perm) {
            return Err(tsw_core::Error::InvalidPermutation(format!("{perm:?} on {n} inputs")).into());
        }
        if !is_even(perm) {
            return Err(ReductionError::OddPermutation);
        }
        // at[pos] = input index currently at position pos
        let mut at: Vec<usize> = (0..n).collect();
        let mut engaged = vec![false; self.shift_gadgets.len()];
        for cascade in &self.cascades {
            let m = cascade.len() + 1;
            let want = (0..n).find(|&i| perm[i] == m - 1).unwrap();
            let p = at.iter().position(|&i| i == want).unwrap() + 1;
            for (k0, &gi) in cascade.iter().enumerate() {
                if k0 + 1 >= p {
                    engaged[gi] = true;
                    let w = self.shift_gadgets[gi].window;
                    at[w..w + 3].rotate_right(1);
                }
            }
            debug_assert_eq!(at[m - 1], want);
        }
        debug_assert!((0..n).all(|pos| perm[at[pos]] == pos));
        Ok(engaged)
    }

    /// A swap sequence of length exactly `cost` that moves input `i` to
    /// output `perm[i]` and every other token to its fixed target.
    pub fn route(&self, perm: &[usize]) -> Result<SwapSequence> {
        let engaged = self.shift_choices(perm)?;
        let mut by_layer: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        for (g, &shift) in self.shift_gadgets.iter().zip(&engaged) {
            for (u, v) in g.swaps(shift) {
                by_layer.entry(self.layer_of[u]).or_default().push((u, v));
            }
        }
        let mut seq = SwapSequence::default();
        let mut down = self.downward.iter().peekable();
        let last = self.layer_of.iter().copied().max().unwrap_or(0);
        for layer in 0..=last {
            for &(u, v) in by_layer.get(&layer).map(Vec::as_slice).unwrap_or(&[]) {
                seq.push(u, v);
            }
            while let Some(&&(u, v)) = down.peek() {
                if self.layer_of[u] != layer {
                    break;
                }
                seq.push(u, v);
                down.next();
            }
        }
        debug_assert_eq!(seq.len(), self.cost);
        Ok(seq)
    }

    /// The network as a stand-alone instance with input `i` destined for
    /// output `perm[i]`; each token is named after its target.
    pub fn instance(&self, perm: &[usize]) -> Result<(Graph, TokenPlacement)> {
        let mut p: Vec<usize> = self.fixed_targets.iter().map(|t| t.unwrap_or(usize::MAX)).collect();
        for (i, &v) in self.inputs.iter().enumerate() {
            p[v] = self.outputs[perm[i]];
        }
        Ok((self.graph.clone(), TokenPlacement::new(p)?))
    }

    /// Checks the layering rules: downward edges join consecutive layers,
    /// every other edge stays inside a layer, each vertex has at most one
    /// neighbor in each adjacent layer, interior layers share one width
    /// and the outer layers hold exactly the inputs and outputs.
    pub fn layering_violations(&self) -> Vec<String> {
        let mut bad = Vec::new();
        let g = &self.graph;
        for &(u, v) in g.edges() {
            let (lu, lv) = (self.layer_of[u], self.layer_of[v]);
            if lu.abs_diff(lv) > 1 {
                bad.push(format!("edge ({u}, {v}) skips a layer"));
            }
        }
        for v in 0..g.n() {
            let lv = self.layer_of[v];
            let up = g.neighbors(v).iter().filter(|&&w| self.layer_of[w] + 1 == lv).count();
            let down = g.neighbors(v).iter().filter(|&&w| self.layer_of[w] == lv + 1).count();
            if up > 1 || down > 1 {
                bad.push(format!("vertex {v} has several neighbors in an adjacent layer"));
            }
        }
        let last = self.layer_of.iter().copied().max().unwrap_or(0);
        let mut width = vec![0; last + 1];
        for &l in &self.layer_of {
            width[l] += 1;
        }
        if self.inputs.iter().any(|&v| self.layer_of[v] != 0) || width[0] != self.n() {
            bad.push("first layer is not exactly the inputs".into());
        }
        if self.outputs.iter().any(|&v| self.layer_of[v] != last) || width[last] != self.n() {
            bad.push("last layer is not exactly the outputs".into());
        }
        if last > 1 && width[1..last].iter().any(|&w| w != width[1]) {
            bad.push("interior layers differ in width".into());
        }
        bad
    }
}

/// Routes a tiny stand-alone gadget network with an explicit list of
/// horizontal swaps. Returns, for each output position, the input index
/// that arrives there, or `None` if some auxiliary token misses its
/// target.
pub fn simulate(net: &PermutationNetwork, horizontal: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut by_layer: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for &(u, v) in horizontal {
        by_layer.entry(net.layer_of[u]).or_default().push((u, v));
    }
    // cur[v] = vertex the token now on v started from
    let mut cur: Vec<usize> = (0..net.graph.n()).collect();
    let mut down = net.downward.iter().peekable();
    let last = net.layer_of.iter().copied().max().unwrap_or(0);
    for layer in 0..=last {
        for &(u, v) in by_layer.get(&layer).map(Vec::as_slice).unwrap_or(&[]) {
            cur.swap(u, v);
        }
        while let Some(&&(u, v)) = down.peek() {
            if net.layer_of[u] != layer {
                break;
            }
            cur.swap(u, v);
            down.next();
        }
    }
    for (start, t) in net.fixed_targets.iter().enumerate() {
        if let Some(t) = *t {
            if cur[t] != start {
                return None;
            }
        }
    }
    net.outputs
        .iter()
        .map(|&o| net.inputs.iter().position(|&i| i == cur[o]))
        .collect()
}

/// A single swapping gadget on three input tracks, as a network whose
/// outputs are `(p1, q, p2)`.
pub fn standalone_swap_gadget() -> (PermutationNetwork, SwapGadget) {
    let mut b = Builder::with_inputs(3);
    let (g, out, _) = b.swap_gadget(Some(0), 1, 2);
    (b.finish(out.to_vec(), vec![], vec![]), g)
}

/// A single shift gadget on three input tracks.
pub fn standalone_shift_gadget() -> (PermutationNetwork, ShiftGadget) {
    let mut b = Builder::with_inputs(3);
    let (g, out) = b.shift_gadget([0, 1, 2], 0);
    (b.finish(out.to_vec(), vec![], vec![]), g)
}

/// Minimal number of horizontal swaps for every output arrangement a
/// gadget network can produce, over all routings that use each horizontal
/// edge at most once (in any order within a layer) and every downward
/// edge once.
pub fn behaviour_table(net: &PermutationNetwork, horizontal: &[(usize, usize)]) -> BTreeMap<Vec<usize>, usize> {
    let mut layers: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for &e in horizontal {
        layers.entry(net.layer_of[e.0]).or_default().push(e);
    }
    // every ordered selection of each layer's edges
    let options: Vec<Vec<Vec<(usize, usize)>>> = layers.values().map(|es| ordered_subsets(es)).collect();
    let mut best: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut pick = vec![0usize; options.len()];
    loop {
        let chosen: Vec<(usize, usize)> = pick
            .iter()
            .zip(&options)
            .flat_map(|(&i, o)| o[i].iter().copied())
            .collect();
        if let Some(out) = simulate(net, &chosen) {
            let e = best.entry(out).or_insert(usize::MAX);
            *e = (*e).min(chosen.len());
        }
        // odometer over the per-layer options
        let mut i = 0;
        while i < pick.len() {
            pick[i] += 1;
            if pick[i] < options[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
        if i == pick.len() {
            return best;
        }
    }
}

fn ordered_subsets(items: &[(usize, usize)]) -> Vec<Vec<(usize, usize)>> {
    let mut out = vec![vec![]];
    for (i, &x) in items.iter().enumerate() {
        let rest: Vec<_> = items.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &y)| y).collect();
        for mut tail in ordered_subsets(&rest) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}
