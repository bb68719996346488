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

use proptest::prelude::*;
use tsw_core::verify_solution;
use tsw_reductions::cnf::{parse_dimacs, CnfFormula, Literal};
use tsw_reductions::dag::is_path_cover;
use tsw_reductions::network::build_permutation_network;
use tsw_reductions::sat_dp::sat_to_dp;

fn even_permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle().prop_map(|mut p| {
        let inv = (0..p.len())
            .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count();
        if inv % 2 == 1 {
            p.swap(0, 1);
        }
        p
    })
}

/// Three distinct variables out of `vars`, with random signs.
fn clause(vars: usize) -> impl Strategy<Value = Vec<Literal>> {
    (proptest::sample::subsequence((0..vars).collect::<Vec<_>>(), 3), any::<[bool; 3]>())
        .prop_map(|(vs, signs)| vs.into_iter().zip(signs).map(|(v, s)| Literal::new(v, s)).collect())
}

fn formula() -> impl Strategy<Value = CnfFormula> {
    (3usize..6)
        .prop_flat_map(|n| (Just(n), proptest::collection::vec(clause(n), 1..5)))
        .prop_map(|(n, cl)| CnfFormula::new(n, cl).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn networks_route_even_permutations(perm in (3usize..8).prop_flat_map(even_permutation)) {
        let net = build_permutation_network(perm.len());
        let seq = net.route(&perm).unwrap();
        let (g, p) = net.instance(&perm).unwrap();
        prop_assert_eq!(seq.len(), net.cost);
        prop_assert!(verify_solution(&g, &p, &seq).unwrap());
    }

    #[test]
    fn dimacs_round_trip(f in formula()) {
        prop_assert_eq!(parse_dimacs(&f.to_dimacs()).unwrap(), f);
    }

    #[test]
    fn models_give_path_covers(f in formula()) {
        let sd = sat_to_dp(&f).unwrap();
        prop_assert!(sd.dag.validate().is_empty());
        prop_assert_eq!(sd.dag.n(), 30 * f.clauses.len() + 12 * f.num_vars);
        for bits in 0u32..1 << f.num_vars {
            let a: Vec<bool> = (0..f.num_vars).map(|i| bits >> i & 1 == 1).collect();
            match sd.cover_from_assignment(&a) {
                Some(c) => prop_assert!(f.evaluate(&a) && is_path_cover(&sd.dag, &c)),
                None => prop_assert!(!f.evaluate(&a)),
            }
        }
    }
}
