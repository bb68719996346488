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

use tsw_core::exact::solve_colored_bfs;
use tsw_core::verify_solution;
use tsw_reductions::cnf::CnfFormula;
use tsw_reductions::dag::DagBuilder;
use tsw_reductions::dp_colored::dp_to_colored;
use tsw_reductions::lift::structured_to_uncolored;
use tsw_reductions::pipeline::reduce_sat;

fn network_total(r: &tsw_reductions::lift::LiftedInstance) -> usize {
    r.networks.iter().map(|a| a.network.cost).sum()
}

#[test]
fn satisfiable_formula_end_to_end() {
    let f = CnfFormula::from_dimacs_clauses(3, &[&[1, -2, 3]]).unwrap();
    let red = reduce_sat(&f).unwrap();
    let k = red.sat.dag.phi().len();
    let host = red.sat.dag.n();
    assert_eq!(red.colored.threshold, host - k);
    assert_eq!(red.lifted.threshold, 2 * (host - k) + network_total(&red.lifted));
    let model = [true, true, false];
    let w = red.witness(&model).unwrap().unwrap();
    assert_eq!(w.colored.len(), red.colored.threshold);
    assert_eq!(w.uncolored.len(), red.lifted.threshold);
    assert!(verify_solution(&red.lifted.graph, &red.lifted.placement, &w.uncolored).unwrap());
    assert!(red.witness(&[false, true, false]).unwrap().is_none());
}

#[test]
fn unsatisfiable_formula_still_reduces() {
    let clauses: Vec<Vec<i64>> = (0..8)
        .map(|s: i64| (1..=3).map(|v| if s >> (v - 1) & 1 == 1 { v } else { -v }).collect())
        .collect();
    let refs: Vec<&[i64]> = clauses.iter().map(Vec::as_slice).collect();
    let f = CnfFormula::from_dimacs_clauses(3, &refs).unwrap();
    let red = reduce_sat(&f).unwrap();
    let k = red.sat.dag.phi().len();
    assert_eq!(red.lifted.threshold, 2 * (red.sat.dag.n() - k) + network_total(&red.lifted));
    assert!(red.lifted.graph.is_connected());
    assert!(red.lifted.placement.n() > 2 * red.sat.dag.n());
}

#[test]
fn lifting_any_colored_solution_adds_the_network_cost() {
    // two chains with a cross arc; the colored optimum uses every filler once
    let mut b = DagBuilder::new();
    let a: Vec<usize> = (0..3).map(|l| b.vertex(l)).collect();
    let c: Vec<usize> = (0..3).map(|l| b.vertex(l)).collect();
    for w in [&a, &c] {
        b.arc(w[0], w[1]);
        b.arc(w[1], w[2]);
    }
    b.arc(a[0], c[1]);
    b.pair(a[0], a[2]);
    b.pair(c[0], c[2]);
    let dag = b.build().unwrap();
    let inst = dp_to_colored(&dag).unwrap();
    let lifted = structured_to_uncolored(&inst).unwrap();
    let s = solve_colored_bfs(&inst.colored, inst.threshold, 1_000_000).unwrap().unwrap();
    let seq = lifted.lift_solution(&s).unwrap();
    assert_eq!(seq.len(), 2 * s.len() + network_total(&lifted));
    assert_eq!(seq.len(), lifted.threshold);
    assert!(verify_solution(&lifted.graph, &lifted.placement, &seq).unwrap());
}
