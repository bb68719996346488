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

//! Seeded instance generators.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::placement::TokenPlacement;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Path,
    Cycle,
    Star,
    Complete,
    /// Random recursive tree: vertex `v` attaches to a uniform earlier vertex.
    Tree,
    /// Random tree plus each remaining pair with probability `min(1, 3/n)`.
    Random,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "path" => Family::Path,
            "cycle" => Family::Cycle,
            "star" => Family::Star,
            "complete" => Family::Complete,
            "tree" => Family::Tree,
            "random" => Family::Random,
            other => return Err(Error::UnknownFamily(other.to_string())),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Star => "star",
            Family::Complete => "complete",
            Family::Tree => "tree",
            Family::Random => "random",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PermKind {
    Random,
    /// Vertex `v` holds token `n - 1 - v`.
    Reversal,
    /// Vertex `v` holds token `v + 1 mod n`.
    Rotation,
    /// A single cycle over the first `k` vertices, the rest fixed.
    Cycle(usize),
}

impl FromStr for PermKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(PermKind::Random),
            "reversal" => Ok(PermKind::Reversal),
            "rotation" => Ok(PermKind::Rotation),
            other => other
                .strip_prefix("cycle-")
                .and_then(|k| k.parse().ok())
                .map(PermKind::Cycle)
                .ok_or_else(|| Error::UnknownPermutationKind(other.to_string())),
        }
    }
}

pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Graph {
    let edges: Vec<_> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    Graph::new(n, edges).expect("tree edges are simple")
}

pub fn random_connected<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let tree = random_tree(n, rng);
    let mut edges = tree.edges().to_vec();
    for u in 0..n {
        for v in u + 1..n {
            if !tree.has_edge(u, v) && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("no duplicates by construction")
}

pub fn random_placement<R: Rng>(n: usize, rng: &mut R) -> TokenPlacement {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    TokenPlacement::new(v).expect("shuffle keeps a permutation")
}

pub fn graph_of<R: Rng>(family: Family, n: usize, rng: &mut R) -> Result<Graph> {
    let min = if family == Family::Cycle { 3 } else { 2 };
    if n < min {
        return Err(Error::InvalidGraph(format!("{family} needs at least {min} vertices")));
    }
    Ok(match family {
        Family::Path => Graph::path(n),
        Family::Cycle => Graph::cycle(n),
        Family::Star => Graph::star(n),
        Family::Complete => Graph::complete(n),
        Family::Tree => random_tree(n, rng),
        Family::Random => random_connected(n, (3.0 / n as f64).min(1.0), rng),
    })
}

pub fn placement_of<R: Rng>(kind: PermKind, n: usize, rng: &mut R) -> Result<TokenPlacement> {
    let v: Vec<usize> = match kind {
        PermKind::Random => return Ok(random_placement(n, rng)),
        PermKind::Reversal => (0..n).rev().collect(),
        PermKind::Rotation => (0..n).map(|v| (v + 1) % n).collect(),
        PermKind::Cycle(k) => {
            if k == 0 || k > n {
                return Err(Error::UnknownPermutationKind(format!("cycle-{k} on {n} vertices")));
            }
            (0..n).map(|v| if v < k { (v + 1) % k } else { v }).collect()
        }
    };
    TokenPlacement::new(v)
}

/// Deterministic in `(family, n, seed, kind)`; the graph is drawn first,
/// then the placement, from one ChaCha stream.
pub fn generate(family: Family, n: usize, seed: u64, kind: PermKind) -> Result<(Graph, TokenPlacement)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = graph_of(family, n, &mut rng)?;
    let p = placement_of(kind, n, &mut rng)?;
    Ok((g, p))
}
