use clap::{Parser, Subcommand};
use delga_cli::commands::{self, DynamicsArgs, GenArgs, SolveArgs};
use std::path::PathBuf;

/// Equilibria of transitive delegation games: stability checking,
/// class-aware solvers, iterative dynamics, instance generators, and
/// exhaustive kernel enumeration.
#[derive(Parser)]
#[command(name = "delga", version, about, after_long_help = FORMAT_NOTES)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

const FORMAT_NOTES: &str = "\
Profile files: `profile n=<n> [class=sp|sym|db] [axis=identity]`, then one
line per voter, either a full ranking `1: 2 > 1 > 3 > 4 > 0` (0 = abstain)
or the partial form `1: voter acc: 2 > 4` / `3: abstainer acc: 1` listing
only the acceptable gurus in preference order. Partial profiles are
completed on load: the listed gurus first, then self and abstention (swapped
for abstainers), then every remaining voter ascending -- or ordered by axis
distance for single-peaked profiles, so completion preserves the class.
Acceptance sets and abstainer flags never change under completion; only the
invented low ranks do, which is why `solve --problem mindis` refuses partial
input without --assume-completion.";

#[derive(Subcommand)]
enum Command {
    /// Check whether a delegation file is Nash-stable for a profile
    /// (exit 0 stable, 1 unstable, 2 input error).
    Check {
        /// Profile file (full or partial form).
        profile: PathBuf,
        /// Delegation file (`v -> target` lines, target 0 = abstain).
        delegation: PathBuf,
    },
    /// Solve an equilibrium problem on a profile.
    Solve {
        profile: PathBuf,
        /// Profile class: auto, sp, sym or db (db needs --model).
        #[arg(long, default_value = "auto")]
        class: String,
        /// One of: eq, memb:N, mindis, minmaxvp, minabst.
        #[arg(long)]
        problem: String,
        /// Distance-model sidecar file for class db.
        #[arg(long)]
        model: Option<PathBuf>,
        /// Allow rank-dependent objectives on partial profiles by using the
        /// documented completion rule.
        #[arg(long)]
        assume_completion: bool,
        /// Vertex cap for exhaustive fallbacks on NP-hard class/problem
        /// pairs (exit 3 above the cap).
        #[arg(long, default_value_t = delga_core::digraph::ENUMERATION_CAP)]
        cap: usize,
    },
    /// Run an iterative delegation dynamics and emit its trace
    /// (exit 0 converged, 1 cycle, 4 budget exhausted).
    Dynamics {
        profile: PathBuf,
        /// brd, ird-script or move-script.
        #[arg(long)]
        rule: String,
        /// Script file for the scripted rules (`step mover move` lines; an
        /// exported trace is a valid script).
        #[arg(long)]
        script: Option<PathBuf>,
        /// Token schedule for brd: roundrobin, random, or perm:1,2,...
        #[arg(long, default_value = "roundrobin")]
        token: String,
        /// Start state: vote, abstain, or a delegation file path.
        #[arg(long)]
        start: Option<String>,
        /// Maximum number of steps.
        #[arg(long)]
        budget: Option<usize>,
        /// Seed for random token schedules.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the trace to a file instead of stdout.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Generate random instances or hardness gadgets.
    Gen {
        /// sp-random, sym-random, db-points, or
        /// gadget:<guc|minabst|mindis|minmaxvp|memb>.
        #[arg(long)]
        kind: String,
        /// Voter count for the random generators.
        #[arg(long)]
        n: Option<usize>,
        /// Point dimension for db-points.
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Pairwise acceptance probability for sym-random.
        #[arg(long, default_value_t = 0.4)]
        accept_prob: f64,
        /// Abstainer probability for sym-random and db-points.
        #[arg(long, default_value_t = 0.1)]
        abstain_prob: f64,
        /// DIMACS CNF input for the gadget generators.
        #[arg(long)]
        cnf: Option<PathBuf>,
        /// Clique-size override for gadget:mindis.
        #[arg(long)]
        clique: Option<usize>,
        /// Build db-points from an explicit points model instead of random
        /// coordinates.
        #[arg(long)]
        points_file: Option<PathBuf>,
        /// Output profile path; a `.model` sidecar is written next to it
        /// when the instance has a distance model. Stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate every kernel of a profile's acceptability digraph
    /// (exit 3 above the vertex cap).
    Enumerate {
        profile: PathBuf,
        /// Truncate the kernel list after this many entries.
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long, default_value_t = delga_core::digraph::ENUMERATION_CAP)]
        cap: usize,
    },
}

fn main() {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout();
    let code = match cli.command {
        Command::Check {
            profile,
            delegation,
        } => commands::check(&profile, &delegation, &mut stdout),
        Command::Solve {
            profile,
            class,
            problem,
            model,
            assume_completion,
            cap,
        } => commands::solve(
            &SolveArgs {
                profile,
                class,
                problem,
                model,
                assume_completion,
                cap,
            },
            &mut stdout,
        ),
        Command::Dynamics {
            profile,
            rule,
            script,
            token,
            start,
            budget,
            seed,
            trace,
        } => commands::dynamics_cmd(
            &DynamicsArgs {
                profile,
                rule,
                script,
                token,
                start,
                budget,
                seed,
                trace_out: trace,
            },
            &mut stdout,
        ),
        Command::Gen {
            kind,
            n,
            dim,
            seed,
            accept_prob,
            abstain_prob,
            cnf,
            clique,
            points_file,
            out,
        } => commands::gen(
            &GenArgs {
                kind,
                n,
                dim,
                seed,
                accept_prob,
                abstain_prob,
                cnf,
                clique,
                points_file,
                out,
            },
            &mut stdout,
        ),
        Command::Enumerate {
            profile,
            limit,
            cap,
        } => commands::enumerate(&profile, limit, cap, &mut stdout),
    };
    std::process::exit(code);
}
