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

//! CNF formulas, DIMACS parsing and clause padding.

use std::fmt::Write as _;

use crate::error::{ReductionError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    /// 0-based variable index.
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn new(var: usize, positive: bool) -> Self {
        Literal { var, positive }
    }

    /// From a DIMACS literal such as `-3`.
    pub fn from_dimacs(x: i64) -> Self {
        Literal {
            var: x.unsigned_abs() as usize - 1,
            positive: x > 0,
        }
    }

    pub fn to_dimacs(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.positive {
            v
        } else {
            -v
        }
    }

    pub fn holds(self, assignment: &[bool]) -> bool {
        assignment[self.var] == self.positive
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    pub num_vars: usize,
    pub clauses: Vec<Vec<Literal>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<Literal>>) -> Result<Self> {
        for (i, c) in clauses.iter().enumerate() {
            if c.is_empty() {
                return Err(ReductionError::Parse {
                    line: 0,
                    reason: format!("clause #{i} is empty"),
                });
            }
            if let Some(l) = c.iter().find(|l| l.var >= num_vars) {
                return Err(ReductionError::Parse {
                    line: 0,
                    reason: format!("variable {} out of range 1..{num_vars}", l.var + 1),
                });
            }
            let mut vars: Vec<usize> = c.iter().map(|l| l.var).collect();
            vars.sort_unstable();
            if vars.windows(2).any(|w| w[0] == w[1]) {
                return Err(ReductionError::RepeatedVariableInClause { clause: i });
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    /// Builds a formula from DIMACS-style signed literals.
    pub fn from_dimacs_clauses(num_vars: usize, clauses: &[&[i64]]) -> Result<Self> {
        Self::new(
            num_vars,
            clauses
                .iter()
                .map(|c| c.iter().map(|&x| Literal::from_dimacs(x)).collect())
                .collect(),
        )
    }

    pub fn evaluate(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|l| l.holds(assignment)))
    }

    /// A satisfying assignment found by enumerating all `2^n` candidates.
    ///
    /// # Panics
    ///
    /// If the formula has more than 24 variables.
    pub fn brute_force_model(&self) -> Option<Vec<bool>> {
        assert!(self.num_vars <= 24, "truth-table search is limited to 24 variables");
        (0u32..1 << self.num_vars)
            .map(|bits| (0..self.num_vars).map(|i| bits >> i & 1 == 1).collect::<Vec<_>>())
            .find(|a| self.evaluate(a))
    }

    /// Occurrences of each variable as `(clause, slot)`, in clause order.
    pub fn occurrences(&self) -> Vec<Vec<(usize, usize)>> {
        let mut occ = vec![Vec::new(); self.num_vars];
        for (z, c) in self.clauses.iter().enumerate() {
            for (s, l) in c.iter().enumerate() {
                occ[l.var].push((z, s));
            }
        }
        occ
    }

    /// Pads clauses of one or two literals to three literals with fresh
    /// variables, preserving satisfiability: `(a v b)` becomes
    /// `(a v b v y)(a v b v -y)` and `(a)` becomes the four clauses
    /// `(a v +-y v +-z)`.
    pub fn padded(&self) -> CnfFormula {
        let mut num_vars = self.num_vars;
        let mut clauses = Vec::new();
        for c in &self.clauses {
            match c.len() {
                1 | 2 => {
                    let fresh: Vec<usize> = (0..3 - c.len()).map(|i| num_vars + i).collect();
                    num_vars += fresh.len();
                    for signs in 0u32..1 << fresh.len() {
                        let mut padded = c.clone();
                        padded.extend(fresh.iter().enumerate().map(|(i, &v)| Literal::new(v, signs >> i & 1 == 0)));
                        clauses.push(padded);
                    }
                }
                _ => clauses.push(c.clone()),
            }
        }
        CnfFormula { num_vars, clauses }
    }

    /// Errors unless every clause has exactly three literals.
    pub fn require_three_literals(&self) -> Result<()> {
        match self.clauses.iter().position(|c| c.len() != 3) {
            Some(i) => Err(ReductionError::UnsupportedClauseArity {
                clause: i,
                arity: self.clauses[i].len(),
            }),
            None => Ok(()),
        }
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                write!(out, "{} ", l.to_dimacs()).unwrap();
            }
            out.push_str("0\n");
        }
        out
    }
}

/// Parses DIMACS CNF. Clauses may span lines and end with `0`; lines
/// starting with `c` are comments and a `%` line ends the input.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let perr = |line: usize, reason: String| ReductionError::Parse { line, reason };
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<(usize, Vec<Literal>)> = Vec::new();
    let mut open: Vec<Literal> = Vec::new();
    let mut open_line = 0;
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('c') {
            continue;
        }
        if s.starts_with('%') {
            break;
        }
        last = line;
        if s.starts_with('p') {
            let f: Vec<&str> = s.split_whitespace().collect();
            if header.is_some() || f.len() != 4 || f[1] != "cnf" {
                return Err(perr(line, "expected a single header `p cnf <vars> <clauses>`".into()));
            }
            let parse = |x: &str| x.parse::<usize>().map_err(|_| perr(line, format!("bad count {x:?}")));
            header = Some((parse(f[2])?, parse(f[3])?));
            continue;
        }
        let (n, _) = header.ok_or_else(|| perr(line, "clause before header".into()))?;
        for tok in s.split_whitespace() {
            let x: i64 = tok.parse().map_err(|_| perr(line, format!("bad literal {tok:?}")))?;
            if x == 0 {
                if open.is_empty() {
                    return Err(perr(line, "empty clause".into()));
                }
                clauses.push((open_line, std::mem::take(&mut open)));
                continue;
            }
            if x.unsigned_abs() as usize > n {
                return Err(perr(line, format!("variable {} out of range 1..{n}", x.abs())));
            }
            if open.is_empty() {
                open_line = line;
            }
            open.push(Literal::from_dimacs(x));
        }
    }
    let (n, m) = header.ok_or_else(|| perr(last.max(1), "missing header".into()))?;
    if !open.is_empty() {
        return Err(perr(open_line, "clause not terminated by 0".into()));
    }
    if clauses.len() != m {
        return Err(perr(last, format!("header declares {m} clauses, found {}", clauses.len())));
    }
    for (i, (_, c)) in clauses.iter().enumerate() {
        let mut vars: Vec<usize> = c.iter().map(|l| l.var).collect();
        vars.sort_unstable();
        if vars.windows(2).any(|w| w[0] == w[1]) {
            return Err(ReductionError::RepeatedVariableInClause { clause: i });
        }
    }
    Ok(CnfFormula {
        num_vars: n,
        clauses: clauses.into_iter().map(|(_, c)| c).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_one_clause() {
        let f = parse_dimacs("c hi\np cnf 3 1\n1 -2 3 0\n").unwrap();
        assert_eq!(f.num_vars, 3);
        assert_eq!(f.clauses.len(), 1);
        assert_eq!(f.clauses[0][1], Literal::new(1, false));
    }

    #[test]
    fn clause_spanning_lines() {
        let f = parse_dimacs("p cnf 3 2\n1 -2\n3 0 -1 2 0\n").unwrap();
        assert_eq!(f.clauses.len(), 2);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_dimacs("p cnf 3 1\n0\n"), Err(ReductionError::Parse { line: 2, .. })));
        assert_eq!(
            parse_dimacs("p cnf 3 1\n1 1 2 0\n"),
            Err(ReductionError::RepeatedVariableInClause { clause: 0 })
        );
        assert!(parse_dimacs("p cnf 2 1\n1 3 0\n").is_err());
        assert!(parse_dimacs("p cnf 2 2\n1 2 0\n").is_err());
        assert!(parse_dimacs("p cnf 2 1\n1 2\n").is_err());
    }

    #[test]
    fn padding_preserves_satisfiability() {
        let sat = CnfFormula::from_dimacs_clauses(2, &[&[1], &[-1, 2]]).unwrap();
        let unsat = CnfFormula::from_dimacs_clauses(1, &[&[1], &[-1]]).unwrap();
        for f in [sat, unsat] {
            let p = f.padded();
            p.require_three_literals().unwrap();
            assert_eq!(p.brute_force_model().is_some(), f.brute_force_model().is_some());
        }
        let one = CnfFormula::from_dimacs_clauses(1, &[&[1]]).unwrap().padded();
        assert_eq!((one.num_vars, one.clauses.len()), (3, 4));
    }

    #[test]
    fn dimacs_round_trip() {
        let f = CnfFormula::from_dimacs_clauses(4, &[&[1, -2, 3], &[-4, 2, 1]]).unwrap();
        assert_eq!(parse_dimacs(&f.to_dimacs()).unwrap(), f);
    }
}
