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

mod common;

use common::*;
use tsw_core::approx::{self, Step};
use tsw_core::bounds;
use tsw_core::exact::{self, DEFAULT_NODE_BUDGET as B};
use tsw_core::{apply_swaps, verify_solution, Graph, SwapLabel, TokenPlacement};

#[test]
fn bfs_matches_inversions_on_paths() {
    for n in 1..=6 {
        let g = Graph::path(n);
        for p in permutations(n) {
            let want = inversions_naive(&p);
            let pl = placement(p);
            let r = exact::solve_bfs(&g, &pl, B).unwrap();
            assert_eq!(r.length, want, "{:?}", pl);
            assert!(verify_solution(&g, &pl, &r.sequence).unwrap());
            assert_eq!(bounds::path_optimal(&g, &pl).unwrap() as usize, want);
        }
    }
}

#[test]
fn bfs_matches_cycle_formula_on_complete_graphs() {
    for n in 1..=6 {
        let g = Graph::complete(n);
        for p in permutations(n) {
            let want = n - cycles_naive(&p);
            let pl = placement(p);
            assert_eq!(exact::solve_bfs(&g, &pl, B).unwrap().length, want);
            assert_eq!(bounds::complete_optimal(&g, &pl).unwrap(), want);
        }
    }
}

#[test]
fn exact_variants_agree() {
    let mut rng = Xorshift(0x5eed);
    for _ in 0..120 {
        let n = 2 + rng.below(6);
        let g = rng.connected_graph(n, 25);
        let pl = rng.placement(n);
        let opt = exact::solve_bfs(&g, &pl, B).unwrap().length;
        let id = exact::solve_depth_bounded(&g, &pl, opt, B).unwrap().unwrap();
        let pr = exact::solve_misplaced_pruned(&g, &pl, opt, B).unwrap().unwrap();
        assert_eq!(id.length, opt);
        assert_eq!(pr.length, opt);
        assert!(verify_solution(&g, &pl, &id.sequence).unwrap());
        assert!(verify_solution(&g, &pl, &pr.sequence).unwrap());
        if opt > 0 {
            assert!(exact::solve_depth_bounded(&g, &pl, opt - 1, B).unwrap().is_none());
        }
        let dist = bounds::all_pairs_distances(&g);
        let lb = bounds::lower_bound(&dist, &pl);
        assert!(lb <= opt);
        assert_eq!(lb % 2, opt % 2);
    }
}

/// The step sequence of the reference loop: rebuild F, find a step, apply.
fn reference_happy(g: &Graph, start: &TokenPlacement) -> Vec<(usize, usize)> {
    let dist = bounds::all_pairs_distances(g);
    let mut cur = start.clone();
    let mut out = Vec::new();
    while !cur.is_identity() {
        let f = approx::build_desire_digraph(g, &cur, &dist);
        let step = approx::find_step(g, &cur, &f).unwrap();
        if let Step::HappyChain(vs) = &step {
            // the closing arc runs from v_1 to v_{l+1}
            assert!(f.out_neighbors(vs[0]).contains(vs.last().unwrap()));
        }
        let swaps = step.swaps();
        let seq = tsw_core::SwapSequence::new(swaps.clone());
        cur = apply_swaps(g, &cur, &seq).unwrap();
        out.extend(swaps);
    }
    out
}

#[test]
fn incremental_happy_matches_reference_loop() {
    let mut rng = Xorshift(99);
    for i in 0..150 {
        let n = 2 + rng.below(14);
        let g = if i % 2 == 0 { rng.tree(n) } else { rng.connected_graph(n, 20) };
        let pl = rng.placement(n);
        let r = approx::solve_happy(&g, &pl).unwrap();
        assert_eq!(r.sequence.swaps(), reference_happy(&g, &pl).as_slice());
    }
}

/// Checks every chain lowers L by its length plus one, every unhappy
/// swap keeps L, and an unhappy swap that sends a token off its target is
/// followed (for that token) by a happy swap.
fn audit_trace(g: &Graph, start: &TokenPlacement, swaps: &[(usize, usize)], trace: &[SwapLabel]) {
    let n = g.n();
    let mut cur = start.as_slice().to_vec();
    let mut l = displacement(g, &cur);
    let mut i = 0;
    // per token: was its last swap an unhappy swap that displaced it?
    let mut displaced = vec![false; n];
    while i < swaps.len() {
        let mut j = i + 1;
        if let SwapLabel::Happy { chain } = trace[i] {
            while j < swaps.len() && trace[j] == (SwapLabel::Happy { chain }) {
                j += 1;
            }
        }
        for &(u, v) in &swaps[i..j] {
            let (a, b) = (cur[u], cur[v]);
            if trace[i].is_happy() {
                displaced[a] = false;
                displaced[b] = false;
            } else {
                assert!(!displaced[a] && !displaced[b], "unhappy swap right after displacement");
                // exactly one of the two was home
                if a == u {
                    displaced[a] = true;
                } else {
                    assert_eq!(b, v);
                    displaced[b] = true;
                }
            }
            cur.swap(u, v);
        }
        let after = displacement(g, &cur);
        if trace[i].is_happy() {
            assert_eq!(l - after, j - i + 1);
        } else {
            assert_eq!(after, l);
        }
        l = after;
        i = j;
    }
    assert_eq!(l, 0);
}

#[test]
fn happy_trace_invariants_and_bounds() {
    let mut rng = Xorshift(2024);
    for i in 0..200 {
        let n = 2 + rng.below(18);
        let tree = i % 3 == 0;
        let g = if tree { rng.tree(n) } else { rng.connected_graph(n, 15) };
        let pl = rng.placement(n);
        let l = displacement(&g, pl.as_slice());
        let r = approx::solve_happy(&g, &pl).unwrap();
        let trace = r.trace.clone().unwrap();
        assert!(verify_solution(&g, &pl, &r.sequence).unwrap());
        audit_trace(&g, &pl, r.sequence.swaps(), &trace);
        let happy = trace.iter().filter(|t| t.is_happy()).count();
        let unhappy = trace.len() - happy;
        if l > 0 {
            assert!(r.length < 2 * l);
            assert!(happy < l);
        }
        assert!(unhappy <= happy);
        if tree {
            assert_eq!(2 * happy, l);
        }
    }
}

#[test]
fn cycle_decomposition_stays_below_twice_displacement() {
    let mut rng = Xorshift(7);
    for _ in 0..200 {
        let n = 2 + rng.below(20);
        let g = rng.connected_graph(n, 10);
        let pl = rng.placement(n);
        let dist = bounds::all_pairs_distances(&g);
        let r = approx::solve_cycle_decomposition(&g, &pl, &dist).unwrap();
        assert!(verify_solution(&g, &pl, &r.sequence).unwrap());
        let l = displacement(&g, pl.as_slice());
        assert!(r.length < 2 * l || l == 0);
    }
}

#[test]
fn single_transposition_costs_2d_minus_1() {
    for n in 2..9 {
        let g = Graph::path(n);
        let dist = bounds::all_pairs_distances(&g);
        let mut v: Vec<usize> = (0..n).collect();
        v.swap(0, n - 1);
        let r = approx::solve_cycle_decomposition(&g, &placement(v), &dist).unwrap();
        assert_eq!(r.length, 2 * (n - 1) - 1);
    }
}

#[test]
fn approximations_within_factor_of_optimum() {
    let mut rng = Xorshift(31337);
    for i in 0..150 {
        let n = 2 + rng.below(6);
        let tree = i % 2 == 0;
        let g = if tree { rng.tree(n) } else { rng.connected_graph(n, 30) };
        let pl = rng.placement(n);
        let opt = exact::solve_bfs(&g, &pl, B).unwrap().length;
        let h = approx::solve_happy(&g, &pl).unwrap().length;
        let dist = bounds::all_pairs_distances(&g);
        let c = approx::solve_cycle_decomposition(&g, &pl, &dist).unwrap().length;
        assert!(h <= 4 * opt && c <= 4 * opt);
        if tree {
            assert!(h <= 2 * opt);
        }
    }
}

#[test]
fn consecutive_unhappy_swaps_by_the_approaching_token() {
    // token 4 walks left past homes 2 and 3 with two unhappy swaps in a row
    let g = Graph::path(4);
    let pl = placement(vec![3, 1, 2, 0]);
    let r = approx::solve_happy(&g, &pl).unwrap();
    let t = r.trace.unwrap();
    assert_eq!(&t[..2], &[SwapLabel::Unhappy, SwapLabel::Unhappy]);
    audit_trace(&g, &pl, r.sequence.swaps(), &t);
}
