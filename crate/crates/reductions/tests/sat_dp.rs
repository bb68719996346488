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

use tsw_reductions::cnf::{CnfFormula, Literal};
use tsw_reductions::dag::{dp_solve, dp_solve_all, is_path_cover, DEFAULT_DP_BUDGET};
use tsw_reductions::sat_dp::sat_to_dp;

/// All clauses over variables 0, 1, 2 with every sign pattern.
fn clauses_on_three() -> Vec<Vec<Literal>> {
    (0u32..8)
        .map(|signs| (0..3).map(|v| Literal::new(v, signs >> v & 1 == 1)).collect())
        .collect()
}

fn all_formulas(m: usize) -> Vec<CnfFormula> {
    let cs = clauses_on_three();
    let mut out = vec![vec![]];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|f: Vec<Vec<Literal>>| {
                cs.iter().map(move |c| {
                    let mut g = f.clone();
                    g.push(c.clone());
                    g
                })
            })
            .collect();
    }
    out.into_iter().map(|cl| CnfFormula::new(3, cl).unwrap()).collect()
}

fn satisfying(f: &CnfFormula) -> Vec<Vec<bool>> {
    let n = f.num_vars;
    (0u32..1 << n)
        .map(|bits| (0..n).map(|i| bits & (1 << i) != 0).collect::<Vec<bool>>())
        .filter(|a| f.clauses.iter().all(|c| c.iter().any(|l| a[l.var] == l.positive)))
        .collect()
}

#[test]
fn every_small_formula_reduces_faithfully() {
    for m in 1..=2 {
        for f in all_formulas(m) {
            let sd = sat_to_dp(&f).unwrap();
            let dag = &sd.dag;
            assert_eq!(dag.n(), 30 * m + 12 * 3);
            assert!(dag.validate().is_empty(), "{:?}", dag.validate());
            let models = satisfying(&f);
            let found = dp_solve(dag, DEFAULT_DP_BUDGET).unwrap();
            assert_eq!(found.is_some(), !models.is_empty());
            if let Some(c) = found {
                assert!(is_path_cover(dag, &c));
            }
            for a in &models {
                let c = sd.cover_from_assignment(a).unwrap();
                assert!(is_path_cover(dag, &c));
            }
        }
    }
}

#[test]
fn path_vertex_counts() {
    let f = CnfFormula::from_dimacs_clauses(4, &[&[1, -2, 3], &[-1, 2, 4], &[1, 3, -4]]).unwrap();
    let sd = sat_to_dp(&f).unwrap();
    let occ = f.occurrences();
    for (i, o) in occ.iter().enumerate() {
        assert_eq!(sd.variable_path_len(i), 3 * (o.len() + 2));
        for s in sd.lane_sources(i) {
            assert_eq!(sd.dag.path_vertex_count(s), Some(6));
        }
    }
    for z in 0..f.clauses.len() {
        assert_eq!(sd.clause_path_len(z), 3);
    }
    assert_eq!(sd.dag.n(), 30 * 3 + 12 * 4);
}

#[test]
fn clause_gadget_admits_one_cover_per_true_literal() {
    let f = CnfFormula::from_dimacs_clauses(3, &[&[1, 2, 3]]).unwrap();
    let sd = sat_to_dp(&f).unwrap();
    let covers = dp_solve_all(&sd.dag, usize::MAX, DEFAULT_DP_BUDGET).unwrap();
    let expected: usize = satisfying(&f)
        .iter()
        .map(|a| a.iter().filter(|&&b| b).count())
        .sum();
    assert_eq!(expected, 12);
    assert_eq!(covers.len(), expected);
    assert!(covers.iter().all(|c| is_path_cover(&sd.dag, c)));
}

#[test]
fn unsatisfiable_formula_has_no_cover() {
    let cl: Vec<Vec<Literal>> = clauses_on_three();
    let f = CnfFormula::new(3, cl).unwrap();
    assert!(satisfying(&f).is_empty());
    let sd = sat_to_dp(&f).unwrap();
    assert!(sd.dag.validate().is_empty());
    assert_eq!(dp_solve(&sd.dag, DEFAULT_DP_BUDGET).unwrap(), None);
}

#[test]
fn rejects_non_three_clauses() {
    let f = CnfFormula::from_dimacs_clauses(2, &[&[1, 2]]).unwrap();
    assert!(sat_to_dp(&f).is_err());
    assert!(sat_to_dp(&f.padded()).is_ok());
}
