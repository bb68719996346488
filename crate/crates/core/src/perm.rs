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

//! Permutation utilities over `0..n`.

/// Cycles of `perm`, each starting at its smallest element, ordered by that
/// element. Fixed points are returned as singleton cycles.
pub fn cycles(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cycle.push(i);
            i = perm[i];
        }
        out.push(cycle);
    }
    out
}

pub fn cycle_count(perm: &[usize]) -> usize {
    let mut seen = vec![false; perm.len()];
    let mut count = 0;
    for start in 0..perm.len() {
        if !seen[start] {
            count += 1;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = perm[i];
            }
        }
    }
    count
}

/// `true` for odd permutations.
pub fn is_odd(perm: &[usize]) -> bool {
    (perm.len() - cycle_count(perm)) % 2 == 1
}

/// Number of pairs `i < j` with `perm[i] > perm[j]`, by a Fenwick tree.
pub fn inversions(perm: &[usize]) -> u64 {
    let n = perm.len();
    let mut tree = vec![0u64; n + 1];
    let mut total = 0u64;
    for (seen, &x) in perm.iter().enumerate() {
        // count already-seen values greater than x
        let mut le = 0;
        let mut i = x + 1;
        while i > 0 {
            le += tree[i];
            i &= i - 1;
        }
        total += seen as u64 - le;
        let mut i = x + 1;
        while i <= n {
            tree[i] += 1;
            i += i & i.wrapping_neg();
        }
    }
    total
}

pub fn inverse(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

/// Checks that `perm` is a permutation of `0..perm.len()`.
pub fn is_permutation(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    perm.iter().all(|&p| p < seen.len() && !std::mem::replace(&mut seen[p], true))
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_inversions(p: &[usize]) -> u64 {
        let mut c = 0;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] > p[j] {
                    c += 1;
                }
            }
        }
        c
    }

    #[test]
    fn inversions_match_pair_count() {
        for n in 0..=6 {
            for p in all_permutations(n) {
                assert_eq!(inversions(&p), brute_inversions(&p), "{p:?}");
                assert_eq!(is_odd(&p), brute_inversions(&p) % 2 == 1);
            }
        }
    }

    #[test]
    fn enumerates_factorial_many() {
        assert_eq!(all_permutations(5).len(), 120);
        assert_eq!(all_permutations(0).len(), 1);
    }

    #[test]
    fn cycles_of_small_perm() {
        assert_eq!(cycles(&[1, 0, 3, 2]), vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(cycle_count(&[0, 1, 2]), 3);
        assert!(!is_permutation(&[0, 0, 1]));
    }
}
