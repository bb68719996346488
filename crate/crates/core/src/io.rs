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

//! Text formats for instances and swap sequences.
//!
//! Everything in a file is 1-indexed; the parser shifts to 0-indexed.
//!
//! ```text
//! p tsw 3 2
//! e 1 2
//! e 2 3
//! t 3 2 1
//! ```
//!
//! Colored instances add `cv <d_1> ... <d_n>` (vertex colors) and
//! `ct <c_1> ... <c_n>` (token colors). Instances produced by reductions
//! may carry a `k <threshold>` line.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::placement::{ColoredInstance, SwapLabel, SwapSequence, TokenPlacement};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Colors {
    pub vertex: Vec<u32>,
    pub token: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    pub placement: TokenPlacement,
    pub colors: Option<Colors>,
    pub threshold: Option<usize>,
}

impl Instance {
    pub fn new(graph: Graph, placement: TokenPlacement) -> Self {
        Instance {
            graph,
            placement,
            colors: None,
            threshold: None,
        }
    }

    pub fn colored(&self) -> Option<Result<ColoredInstance>> {
        self.colors.as_ref().map(|c| {
            ColoredInstance::new(
                self.graph.clone(),
                c.token.clone(),
                c.vertex.clone(),
                self.placement.clone(),
            )
        })
    }

    pub fn from_colored(inst: &ColoredInstance) -> Self {
        Instance {
            graph: inst.graph.clone(),
            placement: inst.placement.clone(),
            colors: Some(Colors {
                vertex: inst.vertex_colors.clone(),
                token: inst.token_colors.clone(),
            }),
            threshold: None,
        }
    }
}

fn perr(line: usize, reason: impl Into<String>) -> Error {
    Error::Parse {
        line,
        reason: reason.into(),
    }
}

fn numbers<T: std::str::FromStr>(line: usize, fields: &[&str]) -> Result<Vec<T>> {
    fields
        .iter()
        .map(|f| f.parse::<T>().map_err(|_| perr(line, format!("expected an integer, found {f:?}"))))
        .collect()
}

fn one_based(line: usize, x: usize, n: usize, what: &str) -> Result<usize> {
    if x == 0 || x > n {
        return Err(perr(line, format!("{what} {x} out of range 1..{n}")));
    }
    Ok(x - 1)
}

/// Strips comments and blank lines, yielding `(line number, fields)`.
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = body.split_whitespace().collect();
        (!fields.is_empty()).then_some((i + 1, fields))
    })
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut tokens: Option<Vec<usize>> = None;
    let mut cv: Option<Vec<u32>> = None;
    let mut ct: Option<Vec<u32>> = None;
    let mut threshold = None;
    let mut last_line = 0;

    for (line, f) in records(text) {
        last_line = line;
        if header.is_none() {
            if f.len() != 4 || f[0] != "p" || f[1] != "tsw" {
                return Err(perr(line, "expected header `p tsw <n> <m>`"));
            }
            let nm: Vec<usize> = numbers(line, &f[2..])?;
            if nm[0] == 0 {
                return Err(perr(line, "graph needs at least one vertex"));
            }
            header = Some((nm[0], nm[1]));
            continue;
        }
        let (n, _) = header.unwrap();
        match f[0] {
            "e" => {
                if f.len() != 3 {
                    return Err(perr(line, "edge line needs two endpoints"));
                }
                let uv: Vec<usize> = numbers(line, &f[1..])?;
                edges.push((
                    one_based(line, uv[0], n, "vertex")?,
                    one_based(line, uv[1], n, "vertex")?,
                ));
            }
            "t" | "cv" | "ct" => {
                let slot_is_set = match f[0] {
                    "t" => tokens.is_some(),
                    "cv" => cv.is_some(),
                    _ => ct.is_some(),
                };
                if slot_is_set {
                    return Err(perr(line, format!("duplicate `{}` line", f[0])));
                }
                if f.len() - 1 != n {
                    return Err(perr(line, format!("expected {n} entries, found {}", f.len() - 1)));
                }
                match f[0] {
                    "t" => {
                        let raw: Vec<usize> = numbers(line, &f[1..])?;
                        let t = raw
                            .into_iter()
                            .map(|x| one_based(line, x, n, "token"))
                            .collect::<Result<Vec<_>>>()?;
                        tokens = Some(t);
                    }
                    "cv" => cv = Some(numbers(line, &f[1..])?),
                    _ => ct = Some(numbers(line, &f[1..])?),
                }
            }
            "k" => {
                if f.len() != 2 || threshold.is_some() {
                    return Err(perr(line, "expected a single `k <threshold>` line"));
                }
                threshold = Some(numbers::<usize>(line, &f[1..])?[0]);
            }
            other => return Err(perr(line, format!("unknown record type {other:?}"))),
        }
    }

    let (n, m) = header.ok_or_else(|| perr(last_line.max(1), "missing header"))?;
    if edges.len() != m {
        return Err(perr(last_line, format!("header declares {m} edges, found {}", edges.len())));
    }
    let tokens = tokens.ok_or_else(|| perr(last_line, "missing token line `t ...`"))?;
    let graph = Graph::new(n, edges)?;
    graph.require_connected()?;
    let placement = TokenPlacement::new(tokens)?;
    let colors = match (cv, ct) {
        (None, None) => None,
        (Some(vertex), Some(token)) => {
            // validates the multisets
            ColoredInstance::new(graph.clone(), token.clone(), vertex.clone(), placement.clone())?;
            Some(Colors { vertex, token })
        }
        _ => return Err(perr(last_line, "`cv` and `ct` must appear together")),
    };
    Ok(Instance {
        graph,
        placement,
        colors,
        threshold,
    })
}

fn join<T: ToString>(items: impl Iterator<Item = T>) -> String {
    items.map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn emit_instance(inst: &Instance) -> String {
    let g = &inst.graph;
    let mut out = String::new();
    writeln!(out, "p tsw {} {}", g.n(), g.edge_count()).unwrap();
    for &(u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    writeln!(out, "t {}", join(inst.placement.as_slice().iter().map(|t| t + 1))).unwrap();
    if let Some(c) = &inst.colors {
        writeln!(out, "cv {}", join(c.vertex.iter())).unwrap();
        writeln!(out, "ct {}", join(c.token.iter())).unwrap();
    }
    if let Some(k) = inst.threshold {
        writeln!(out, "k {k}").unwrap();
    }
    out
}

/// Parses `s <u> <v>` lines; a trailing `k <count>` line must agree with
/// the number of swaps when present.
pub fn parse_swaps(text: &str) -> Result<SwapSequence> {
    let mut seq = SwapSequence::default();
    let mut count = None;
    for (line, f) in records(text) {
        if count.is_some() {
            return Err(perr(line, "content after the `k` line"));
        }
        match (f[0], f.len()) {
            ("s", 3) => {
                let uv: Vec<usize> = numbers(line, &f[1..])?;
                if uv[0] == 0 || uv[1] == 0 {
                    return Err(perr(line, "vertices are 1-indexed"));
                }
                seq.push(uv[0] - 1, uv[1] - 1);
            }
            ("k", 2) => {
                let k = numbers::<usize>(line, &f[1..])?[0];
                if k != seq.len() {
                    return Err(perr(line, format!("count {k} does not match {} swaps", seq.len())));
                }
                count = Some(k);
            }
            _ => return Err(perr(line, "expected `s <u> <v>` or `k <count>`")),
        }
    }
    Ok(seq)
}

pub fn emit_swaps(seq: &SwapSequence) -> String {
    let mut out = String::new();
    for &(u, v) in seq.swaps() {
        writeln!(out, "s {} {}", u + 1, v + 1).unwrap();
    }
    writeln!(out, "k {}", seq.len()).unwrap();
    out
}

/// One `h <u> <v>` or `u <u> <v>` line per swap.
pub fn emit_trace(seq: &SwapSequence, trace: &[SwapLabel]) -> String {
    let mut out = String::new();
    for (&(u, v), label) in seq.swaps().iter().zip(trace) {
        let tag = if label.is_happy() { 'h' } else { 'u' };
        writeln!(out, "{tag} {} {}", u + 1, v + 1).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p3_reversal_instance() {
        let inst = parse_instance("p tsw 3 2\ne 1 2\ne 2 3\nt 3 2 1\n").unwrap();
        assert_eq!(inst.graph, Graph::path(3));
        assert_eq!(inst.placement.as_slice(), &[2, 1, 0]);
        assert!(inst.colors.is_none());
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# hello\n\np tsw 2 1 # header\ne 1 2\n  \nt 2 1\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.placement.as_slice(), &[1, 0]);
    }

    #[test]
    fn duplicate_token_is_rejected() {
        let err = parse_instance("p tsw 3 2\ne 1 2\ne 2 3\nt 1 1 2\n").unwrap_err();
        assert!(matches!(err, Error::InvalidPermutation(_)));
    }

    #[test]
    fn disconnected_graph_is_rejected() {
        let err = parse_instance("p tsw 3 1\ne 1 2\nt 1 2 3\n").unwrap_err();
        assert_eq!(err, Error::DisconnectedGraph);
    }

    #[test]
    fn bad_lines_report_position() {
        let err = parse_instance("p tsw 3 2\ne 1 2\ne 2 9\nt 1 2 3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = parse_instance("p tsw 3 2\ne 1 2\ne 2 3\nt 1 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }));
        let err = parse_instance("p tsw 3 2\ne 1 2\ne 2 3\nt 1 2 3\ncv 1 1 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
    }

    #[test]
    fn color_mismatch_is_rejected() {
        let text = "p tsw 2 1\ne 1 2\nt 1 2\ncv 1 1\nct 1 2\n";
        assert_eq!(parse_instance(text).unwrap_err(), Error::ColorMultisetMismatch);
    }

    #[test]
    fn round_trip_with_colors_and_threshold() {
        let inst = Instance {
            graph: Graph::cycle(4),
            placement: TokenPlacement::new(vec![1, 0, 3, 2]).unwrap(),
            colors: Some(Colors {
                vertex: vec![0, 1, 1, 2],
                token: vec![1, 2, 0, 1],
            }),
            threshold: Some(7),
        };
        assert_eq!(parse_instance(&emit_instance(&inst)).unwrap(), inst);
    }

    #[test]
    fn swap_file_round_trip() {
        let seq = SwapSequence::new(vec![(0, 1), (2, 1)]);
        let text = emit_swaps(&seq);
        assert_eq!(text, "s 1 2\ns 3 2\nk 2\n");
        assert_eq!(parse_swaps(&text).unwrap(), seq);
        assert!(parse_swaps("s 1 2\nk 3\n").is_err());
    }
}
