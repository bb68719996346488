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
use tsw_core::colored::{assignment_floor, optimal_assignment, solve_colored};
use tsw_core::exact::{solve_colored_bfs, DEFAULT_NODE_BUDGET as B};
use tsw_core::{approx, bounds, verify_colored_solution, ColoredInstance, Graph};

/// Minimum displacement over every color-respecting bijection.
fn brute_force_lstar(g: &Graph, inst: &ColoredInstance) -> usize {
    let n = g.n();
    let pos = inst.placement.positions();
    let rows: Vec<Vec<usize>> = (0..n).map(|v| bfs_row(g, v)).collect();
    permutations(n)
        .into_iter()
        .filter(|sigma| (0..n).all(|t| inst.token_colors[t] == inst.vertex_colors[sigma[t]]))
        .map(|sigma| (0..n).map(|t| rows[pos[t]][sigma[t]]).sum())
        .min()
        .unwrap()
}

fn color_vectors(n: usize, k: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..k).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

#[test]
fn matching_is_minimal_and_solutions_verify() {
    let mut rng = Xorshift(4242);
    for n in 2..=6 {
        for _ in 0..4 {
            let g = rng.connected_graph(n, 20);
            let dist = bounds::all_pairs_distances(&g);
            for vc in color_vectors(n, 3) {
                // tokens on vertices take a shuffled copy of the vertex colors
                let mut on_vertices = vc.clone();
                let mut order: Vec<usize> = (0..n).collect();
                rng.shuffle(&mut order);
                for (i, &o) in order.iter().enumerate() {
                    on_vertices[i] = vc[o];
                }
                let inst = ColoredInstance::from_position_colors(g.clone(), on_vertices, vc).unwrap();
                let a = optimal_assignment(&inst, &dist).unwrap();
                assert_eq!(a.cost, brute_force_lstar(&g, &inst));
                for t in 0..n {
                    assert_eq!(inst.token_colors[t], inst.vertex_colors[a.target[t]]);
                }
                let r = solve_colored(&inst, approx::solve_happy).unwrap();
                assert!(verify_colored_solution(&inst, &r.sequence).unwrap());
                assert!(r.length <= 2 * a.cost);
                let opt = solve_colored_bfs(&inst, usize::MAX, B).unwrap().unwrap().len();
                assert!(r.length <= 4 * opt);
                assert!(assignment_floor(&inst).unwrap() <= opt);
            }
        }
    }
}

#[test]
fn relabeling_colors_keeps_lstar() {
    let mut rng = Xorshift(17);
    for _ in 0..50 {
        let n = 3 + rng.below(5);
        let g = rng.connected_graph(n, 25);
        let dist = bounds::all_pairs_distances(&g);
        let vc: Vec<u32> = (0..n).map(|_| rng.below(3) as u32).collect();
        let mut on = vc.clone();
        rng.shuffle_u32(&mut on);
        let inst = ColoredInstance::from_position_colors(g.clone(), on.clone(), vc.clone()).unwrap();
        let renamed = |c: &u32| 10 - c;
        let other = ColoredInstance::from_position_colors(
            g.clone(),
            on.iter().map(renamed).collect(),
            vc.iter().map(renamed).collect(),
        )
        .unwrap();
        assert_eq!(
            optimal_assignment(&inst, &dist).unwrap().cost,
            optimal_assignment(&other, &dist).unwrap().cost
        );
    }
}

#[test]
fn tie_break_is_lexicographically_smallest() {
    let mut rng = Xorshift(5);
    for _ in 0..60 {
        let n = 2 + rng.below(6);
        let g = rng.connected_graph(n, 30);
        let dist = bounds::all_pairs_distances(&g);
        let vc: Vec<u32> = (0..n).map(|_| rng.below(2) as u32).collect();
        let mut on = vc.clone();
        rng.shuffle_u32(&mut on);
        let inst = ColoredInstance::from_position_colors(g.clone(), on, vc).unwrap();
        let a = optimal_assignment(&inst, &dist).unwrap();
        let pos = inst.placement.positions();
        let best = permutations(n)
            .into_iter()
            .filter(|s| (0..n).all(|t| inst.token_colors[t] == inst.vertex_colors[s[t]]))
            .filter(|s| (0..n).map(|t| dist.get(pos[t], s[t])).sum::<usize>() == a.cost)
            .min()
            .unwrap();
        assert_eq!(a.target, best);
    }
}
