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

//! `tsw`: generate, solve, bound, reduce, verify and benchmark token
//! swapping instances.
//!
//! Exit codes: 0 success, 2 invalid input, 3 search budget exceeded,
//! 4 a produced or supplied sequence failed verification.

mod bench;
mod reduce;

use std::fmt;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use tsw_core::bounds::{self, DistanceTable};
use tsw_core::colored::{optimal_assignment, solve_colored};
use tsw_core::exact::DEFAULT_NODE_BUDGET;
use tsw_core::generate::{generate, Family, PermKind};
use tsw_core::io::{emit_instance, emit_swaps, emit_trace, parse_instance, parse_swaps, Instance};
use tsw_core::{
    apply_swaps, verify_colored_solution, verify_solution, Algorithm, Graph, SolveOptions, SolveResult, SwapLabel,
    SwapSequence, TokenPlacement,
};

#[derive(Parser)]
#[command(name = "tsw", version, about = "Token swapping toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance from a graph family and a permutation kind.
    Gen {
        /// path, cycle, star, complete, tree or random
        family: String,
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// random, reversal, rotation or cycle-K
        #[arg(long = "perm", default_value = "random")]
        perm: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Solve an instance; colored instances are detected from `cv`/`ct`.
    Solve {
        /// Instance file, `-` for stdin.
        instance: PathBuf,
        #[arg(long, default_value = "happy")]
        algo: Algorithm,
        /// Swap cap for exact-id and exact-pruned.
        #[arg(long)]
        max_swaps: Option<usize>,
        /// Search node budget; defaults to TSW_NODE_BUDGET or 50000000.
        #[arg(long)]
        node_budget: Option<usize>,
        /// Write one `h u v` or `u u v` line per swap.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Colored instances only: write the token-to-target matching.
        #[arg(long)]
        assignment_out: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print lower bounds and any closed-form optimum.
    Bound {
        instance: PathBuf,
    },
    /// Reduce a DIMACS CNF formula to layered disjoint paths, colored or
    /// plain token swapping.
    Reduce {
        #[arg(long, value_enum)]
        from: Source,
        #[arg(long, value_enum)]
        to: Target,
        /// DIMACS file, `-` for stdin.
        input: PathBuf,
        /// Run the exhaustive oracles of every stage and print a verdict.
        #[arg(long)]
        check: bool,
        /// Pad one- and two-literal clauses with fresh variables.
        #[arg(long)]
        pad: bool,
        /// For satisfiable formulas, write the constructed swap sequence.
        #[arg(long)]
        witness: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check that a swap sequence solves an instance.
    Verify {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        seq: PathBuf,
    },
    /// Run algorithms over a directory of instances and print CSV.
    Bench {
        #[arg(long)]
        dir: PathBuf,
        /// Comma-separated algorithm names.
        #[arg(long, value_delimiter = ',', default_value = "exact,happy,cycles")]
        algos: Vec<Algorithm>,
        /// Compute the optimum by breadth-first search up to this many vertices.
        #[arg(long, default_value_t = 8)]
        optimum_max_n: usize,
        #[arg(long)]
        node_budget: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Source {
    Sat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub(crate) enum Target {
    Dp,
    Cts,
    Tsw,
}

/// A sequence that should solve an instance does not.
#[derive(Debug)]
pub(crate) struct VerificationFailed(pub String);

impl fmt::Display for VerificationFailed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "verification failed: {}", self.0)
    }
}

impl std::error::Error for VerificationFailed {}

fn exit_code(err: &anyhow::Error) -> u8 {
    use tsw_core::Error as E;
    use tsw_reductions::ReductionError as R;
    for cause in err.chain() {
        if cause.is::<VerificationFailed>() {
            return 4;
        }
        match cause.downcast_ref::<E>() {
            Some(E::BudgetExceeded { .. } | E::NoSolutionWithin { .. }) => return 3,
            Some(E::NoStepFound | E::ProgressStall { .. }) => return 4,
            _ => {}
        }
        if let Some(R::OracleBudgetExceeded { .. } | R::Core(E::BudgetExceeded { .. })) = cause.downcast_ref::<R>() {
            return 3;
        }
    }
    2
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

pub(crate) fn read_input(path: &Path) -> anyhow::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub(crate) fn write_output(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            io::stdout().lock().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

pub(crate) fn read_instance(path: &Path) -> anyhow::Result<Instance> {
    parse_instance(&read_input(path)?).with_context(|| format!("parsing {}", path.display()))
}

pub(crate) fn node_budget(flag: Option<usize>) -> anyhow::Result<usize> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var("TSW_NODE_BUDGET") {
        Ok(s) => s.trim().parse().with_context(|| format!("TSW_NODE_BUDGET={s:?} is not a count")),
        Err(_) => Ok(DEFAULT_NODE_BUDGET),
    }
}

/// Runs `algo` on an uncolored or colored instance and re-verifies the
/// result.
pub(crate) fn solve_instance(inst: &Instance, algo: Algorithm, opts: &SolveOptions) -> anyhow::Result<SolveResult> {
    let result = match inst.colored() {
        None => {
            let r = tsw_core::solve(algo, &inst.graph, &inst.placement, opts)?;
            if !verify_solution(&inst.graph, &inst.placement, &r.sequence)? {
                bail!(VerificationFailed(format!("{algo} output does not sort the tokens")));
            }
            r
        }
        Some(colored) => {
            let colored = colored?;
            let r = solve_colored(&colored, |g, p| tsw_core::solve(algo, g, p, opts))?;
            if !verify_colored_solution(&colored, &r.sequence)? {
                bail!(VerificationFailed(format!("{algo} output leaves a color mismatch")));
            }
            r
        }
    };
    Ok(result)
}

/// Labels each swap happy when both tokens move closer to their targets.
fn label_swaps(graph: &Graph, start: &TokenPlacement, dist: &DistanceTable, seq: &SwapSequence) -> Vec<SwapLabel> {
    let mut p = start.as_slice().to_vec();
    let mut chain = 0;
    seq.swaps()
        .iter()
        .map(|&(u, v)| {
            debug_assert!(graph.has_edge(u, v));
            let closer = |t: usize, from: usize, to: usize| dist.get(to, t) < dist.get(from, t);
            let happy = closer(p[u], u, v) && closer(p[v], v, u);
            p.swap(u, v);
            if happy {
                chain += 1;
                SwapLabel::Happy { chain }
            } else {
                SwapLabel::Unhappy
            }
        })
        .collect()
}

fn run(command: Command) -> anyhow::Result<()> {
    match command {
        Command::Gen {
            family,
            n,
            seed,
            perm,
            output,
        } => {
            let family: Family = family.parse()?;
            let kind: PermKind = perm.parse()?;
            if n < 2 {
                bail!("n must be at least 2");
            }
            let (graph, placement) = generate(family, n, seed, kind)?;
            let mut text = format!("# {family} n={n} seed={seed} perm={perm}\n");
            text.push_str(&emit_instance(&Instance::new(graph, placement)));
            write_output(output.as_deref(), &text)
        }
        Command::Solve {
            instance,
            algo,
            max_swaps,
            node_budget: budget,
            trace,
            assignment_out,
            output,
        } => {
            let inst = read_instance(&instance)?;
            let opts = SolveOptions {
                node_budget: node_budget(budget)?,
                max_swaps,
            };
            let result = solve_instance(&inst, algo, &opts)?;
            let colored = inst.colored().transpose()?;
            let graph = &inst.graph;
            let dist = bounds::all_pairs_distances(graph);
            if let Some(path) = assignment_out {
                let Some(c) = &colored else {
                    bail!("--assignment-out needs a colored instance");
                };
                let a = optimal_assignment(c, &dist)?;
                let targets: Vec<String> = a.target.iter().map(|t| (t + 1).to_string()).collect();
                fs::write(&path, format!("cost {}\ntarget {}\n", a.cost, targets.join(" ")))?;
            }
            if let Some(path) = trace {
                let labels = match (&result.trace, &colored) {
                    (Some(t), None) => t.clone(),
                    _ => label_swaps(graph, &inst.placement, &dist, &result.sequence),
                };
                fs::write(&path, emit_trace(&result.sequence, &labels))?;
            }
            let lb = match &colored {
                None => bounds::lower_bound(&dist, &inst.placement),
                Some(c) => optimal_assignment(c, &dist)?.cost.div_ceil(2),
            };
            eprintln!("{algo}: {} swaps (lower bound {lb})", result.length);
            if let Some(k) = inst.threshold {
                eprintln!("threshold {k}: {}", if result.length <= k { "met" } else { "exceeded" });
            }
            write_output(output.as_deref(), &emit_swaps(&result.sequence))
        }
        Command::Bound { instance } => {
            let inst = read_instance(&instance)?;
            let g = &inst.graph;
            let dist = bounds::all_pairs_distances(g);
            let mut out = format!("vertices {}\nedges {}\n", g.n(), g.edge_count());
            match inst.colored().transpose()? {
                None => {
                    let l = bounds::total_displacement(&dist, &inst.placement);
                    out.push_str(&format!("displacement {l}\nlower_bound {}\n", bounds::lower_bound(&dist, &inst.placement)));
                    if g.is_canonical_path() {
                        out.push_str(&format!("optimum {}\n", bounds::path_optimal(g, &inst.placement)?));
                    } else if g.is_complete() {
                        out.push_str(&format!("optimum {}\n", bounds::complete_optimal(g, &inst.placement)?));
                    }
                }
                Some(c) => {
                    let a = optimal_assignment(&c, &dist)?;
                    out.push_str(&format!("assignment_cost {}\nlower_bound {}\n", a.cost, a.cost.div_ceil(2)));
                }
            }
            write_output(None, &out)
        }
        Command::Reduce {
            from: Source::Sat,
            to,
            input,
            check,
            pad,
            witness,
            output,
        } => reduce::run(to, &input, check, pad, witness.as_deref(), output.as_deref()),
        Command::Verify { instance, seq } => {
            let inst = read_instance(&instance)?;
            let seq = parse_swaps(&read_input(&seq)?).with_context(|| format!("parsing {}", seq.display()))?;
            let end = apply_swaps(&inst.graph, &inst.placement, &seq).map_err(|e| VerificationFailed(e.to_string()))?;
            let solved = match inst.colored().transpose()? {
                None => end.is_identity(),
                Some(c) => c.is_solved_by(&end),
            };
            if !solved {
                bail!(VerificationFailed(format!("{} swaps leave tokens misplaced", seq.len())));
            }
            if let Some(k) = inst.threshold {
                if seq.len() > k {
                    bail!(VerificationFailed(format!("{} swaps exceed the threshold {k}", seq.len())));
                }
            }
            println!("ok {}", seq.len());
            Ok(())
        }
        Command::Bench {
            dir,
            algos,
            optimum_max_n,
            node_budget: budget,
            output,
        } => {
            let csv = bench::run(&dir, &algos, optimum_max_n, node_budget(budget)?)?;
            write_output(output.as_deref(), &csv)
        }
    }
}
