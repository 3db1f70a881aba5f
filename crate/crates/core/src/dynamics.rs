//! Iterative delegation dynamics: a token schedule hands one voter per step
//! the right to change her delegation, under best-response or scripted
//! improved-response rules. Traces record every state, round boundaries,
//! and a convergence / cycle / budget verdict.
//!
//! A round is the minimal window of steps in which every voter holds the
//! token at least once; for a repeated permutation, round `k` ends at step
//! `k * n`.

use crate::error::Error;
use crate::profile::{
    is_nash_stable, measures, DelegationFunction, PreferenceProfile, VoterId, ABSTAIN,
};
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::HashMap;
use thiserror::Error as ThisError;

/// Who holds the token at each step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenFunction {
    /// `sigma` repeated forever; every voter appears exactly once per block.
    Permutation(Vec<VoterId>),
    /// Identity permutation repeated forever.
    RoundRobin,
    /// A finite explicit schedule; the run ends with the schedule.
    Script(Vec<VoterId>),
}

impl TokenFunction {
    pub fn validate(&self, n: usize) -> Result<(), Error> {
        let check = |ids: &[VoterId]| {
            ids.iter()
                .find(|&&v| v == 0 || v > n)
                .map_or(Ok(()), |&v| Err(Error::VoterOutOfRange(v, n)))
        };
        match self {
            TokenFunction::Permutation(sigma) => {
                check(sigma)?;
                let mut seen = vec![false; n + 1];
                for &v in sigma {
                    seen[v] = true;
                }
                if sigma.len() != n || !seen[1..].iter().all(|&b| b) {
                    return Err(Error::Internal(
                        "token permutation must cover every voter once",
                    ));
                }
                Ok(())
            }
            TokenFunction::RoundRobin => Ok(()),
            TokenFunction::Script(ids) => check(ids),
        }
    }

    /// Token holder of step `t` (1-based), `None` past a finite schedule.
    pub fn holder(&self, t: usize, n: usize) -> Option<VoterId> {
        match self {
            TokenFunction::Permutation(sigma) => Some(sigma[(t - 1) % sigma.len()]),
            TokenFunction::RoundRobin => Some((t - 1) % n + 1),
            TokenFunction::Script(ids) => ids.get(t - 1).copied(),
        }
    }

    /// Period of a repeating schedule, `None` for finite scripts.
    pub fn period(&self, n: usize) -> Option<usize> {
        match self {
            TokenFunction::Permutation(sigma) => Some(sigma.len()),
            TokenFunction::RoundRobin => Some(n),
            TokenFunction::Script(_) => None,
        }
    }
}

/// How the token holder picks her move.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MoveRule {
    /// Maximize the resulting guru under her preferences.
    BestResponse,
    /// Scripted moves that must strictly improve the mover's outcome or keep
    /// her delegation unchanged.
    ImprovedScript(Vec<usize>),
    /// Scripted moves replayed verbatim (any legal target).
    MoveScript(Vec<usize>),
}

/// A scripted move that is illegal at its step.
#[derive(Debug, Clone, PartialEq, Eq, ThisError)]
pub enum ScriptError {
    #[error("step {step}: move target {target} is out of range 0..={n}")]
    BadTarget {
        step: usize,
        target: usize,
        n: usize,
    },
    #[error("step {step}: script ended before the token schedule")]
    MissingMove { step: usize },
    #[error(
        "step {step}: voter {mover} moving to {target} does not improve her outcome ({from} -> {to})"
    )]
    NotImproving {
        step: usize,
        mover: VoterId,
        target: usize,
        from: usize,
        to: usize,
    },
}

/// Best response of voter `v` given everyone else's delegation: the
/// achievable outcomes are voting, abstaining, and every current guru other
/// than `v`; delegating towards anything else ends at abstention. The move
/// keeps the current delegation when it already achieves the best outcome,
/// otherwise it delegates directly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BestResponse {
    pub target: usize,
    pub outcome: usize,
}

pub fn best_response(
    profile: &PreferenceProfile,
    d: &DelegationFunction,
    v: VoterId,
) -> BestResponse {
    let ga = d.resolve();
    let mut best = v;
    let mut best_rank = profile.rank(v, v);
    if profile.rank(v, ABSTAIN) < best_rank {
        best = ABSTAIN;
        best_rank = profile.rank(v, ABSTAIN);
    }
    for &g in ga.gurus() {
        if g != v && profile.rank(v, g) < best_rank {
            best = g;
            best_rank = profile.rank(v, g);
        }
    }
    let current_outcome = ga.guru_of(v);
    if current_outcome == best {
        BestResponse {
            target: d.target(v),
            outcome: best,
        }
    } else {
        BestResponse {
            target: best,
            outcome: best,
        }
    }
}

/// Outcome voter `v` reaches if she redirects her delegation to `target`,
/// everyone else fixed.
fn outcome_of_move(d: &DelegationFunction, v: VoterId, target: usize) -> usize {
    let mut alt = d.clone();
    alt.set(v, target);
    alt.resolve().guru_of(v)
}

/// Verdict of a dynamics run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Stable from `at_step` on; `round` is the round containing the last
    /// state change (0 when the start state was never left).
    Converged {
        at_step: usize,
        round: usize,
    },
    /// Exact recurrence: the state at `entry + period` equals the state at
    /// `entry` (with equal token phase for repeating schedules).
    Cycle {
        entry: usize,
        period: usize,
    },
    BudgetExhausted,
}

/// One executed step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub mover: VoterId,
    pub target: usize,
}

/// Full record of a dynamics run: `states[t]` is the delegation after step
/// `t` (`states[0]` is the start), `rounds[k]` the last step of round `k+1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynamicsTrace {
    pub states: Vec<DelegationFunction>,
    pub steps: Vec<Step>,
    pub rounds: Vec<usize>,
    pub verdict: Verdict,
}

impl DynamicsTrace {
    /// Round containing step `t` (1-based rounds; 0 for step 0).
    pub fn round_of(&self, t: usize) -> usize {
        round_of(&self.rounds, t)
    }

    pub fn final_state(&self) -> &DelegationFunction {
        self.states.last().unwrap()
    }
}

/// Runs a dynamics for at most `budget` steps.
///
/// Repeating token schedules detect convergence as a full round without a
/// state change and cycles as a recurrence of (state, token phase). A finite
/// script runs to its end and reports convergence only when the final state
/// is Nash-stable, otherwise a cycle when the final state appeared before.
pub fn run_dynamics(
    profile: &PreferenceProfile,
    d0: DelegationFunction,
    token: &TokenFunction,
    rule: &MoveRule,
    budget: usize,
) -> Result<DynamicsTrace, ScriptError> {
    let n = profile.n();
    if n == 0 {
        return Ok(DynamicsTrace {
            states: vec![d0],
            steps: Vec::new(),
            rounds: Vec::new(),
            verdict: Verdict::Converged {
                at_step: 0,
                round: 0,
            },
        });
    }
    let mut states = vec![d0.clone()];
    let mut steps = Vec::new();
    let mut rounds = Vec::new();
    let mut d = d0;

    // (state, token-phase) recurrence is conclusive only for the stationary
    // best-response rule: the continuation is then determined, so a repeat
    // with changes inside is a true cycle and a repeat without changes is a
    // fixed point. Scripted rules get a state-recurrence check at the end.
    let period = match rule {
        MoveRule::BestResponse => token.period(n),
        _ => None,
    };
    let mut seen: HashMap<(Vec<usize>, usize), usize> = HashMap::new();
    if period.is_some() {
        seen.insert((d.targets().to_vec(), 0), 0);
    }

    let mut last_change = 0usize;
    let mut round_start_change = 0usize; // last_change at the start of the current round
    let mut tokened = vec![false; n + 1];
    let mut tokened_count = 0usize;
    let mut verdict = None;

    let mut t = 0usize;
    while verdict.is_none() {
        let next = t + 1;
        // schedule exhaustion ends the run before the budget is charged
        let Some(mover) = token.holder(next, n) else {
            break;
        };
        if let MoveRule::ImprovedScript(moves) | MoveRule::MoveScript(moves) = rule {
            if next > moves.len() {
                if token.period(n).is_some() {
                    // a finite move script under a repeating token ends the run
                    break;
                }
                return Err(ScriptError::MissingMove { step: next });
            }
        }
        if next > budget {
            verdict = Some(Verdict::BudgetExhausted);
            break;
        }
        t = next;
        let target = match rule {
            MoveRule::BestResponse => {
                let br = best_response(profile, &d, mover);
                debug_assert!({
                    // a best response never worsens the mover's outcome
                    let before = d.resolve().guru_of(mover);
                    profile.rank(mover, br.outcome) <= profile.rank(mover, before)
                });
                br.target
            }
            MoveRule::ImprovedScript(moves) | MoveRule::MoveScript(moves) => {
                let target = moves[t - 1];
                if target > n {
                    return Err(ScriptError::BadTarget { step: t, target, n });
                }
                if matches!(rule, MoveRule::ImprovedScript(_)) && target != d.target(mover) {
                    let from = d.resolve().guru_of(mover);
                    let to = outcome_of_move(&d, mover, target);
                    if profile.rank(mover, to) >= profile.rank(mover, from) {
                        return Err(ScriptError::NotImproving {
                            step: t,
                            mover,
                            target,
                            from,
                            to,
                        });
                    }
                }
                target
            }
        };

        let changed = d.target(mover) != target;
        d.set(mover, target);
        if changed {
            last_change = t;
        }
        states.push(d.clone());
        steps.push(Step { mover, target });

        if !tokened[mover] {
            tokened[mover] = true;
            tokened_count += 1;
        }
        let mut round_ended = false;
        if tokened_count == n {
            rounds.push(t);
            tokened.iter_mut().for_each(|b| *b = false);
            tokened_count = 0;
            round_ended = true;
        }

        if let Some(p) = period {
            let key = (d.targets().to_vec(), t % p);
            if let Some(&t0) = seen.get(&key) {
                verdict = if last_change <= t0 {
                    Some(Verdict::Converged {
                        at_step: last_change,
                        round: round_of(&rounds, last_change),
                    })
                } else {
                    Some(Verdict::Cycle {
                        entry: t0,
                        period: t - t0,
                    })
                };
                break;
            }
            seen.insert(key, t);
            if round_ended {
                if last_change == round_start_change {
                    let at_step = last_change;
                    let round = round_of(&rounds, at_step);
                    verdict = Some(Verdict::Converged { at_step, round });
                    break;
                }
                round_start_change = last_change;
            }
        }
    }

    let verdict = verdict.unwrap_or_else(|| {
        // a finite script ran to completion
        if budget == 0 {
            Verdict::BudgetExhausted
        } else if is_nash_stable(profile, &d).is_stable() {
            Verdict::Converged {
                at_step: last_change,
                round: round_of(&rounds, last_change),
            }
        } else if let Some(entry) = (0..t).find(|&e| states[e] == states[t]) {
            Verdict::Cycle {
                entry,
                period: t - entry,
            }
        } else {
            Verdict::BudgetExhausted
        }
    });

    Ok(DynamicsTrace {
        states,
        steps,
        rounds,
        verdict,
    })
}

fn round_of(rounds: &[usize], t: usize) -> usize {
    if t == 0 {
        return 0;
    }
    match rounds.iter().position(|&end| t <= end) {
        Some(idx) => idx + 1,
        None => rounds.len() + 1,
    }
}

/// Renders a trace as one line per step:
/// `step mover move gurus dis maxvp abst`, with a leading line for the start
/// state. Guru sets are semicolon-joined; `-` stands for an empty field.
pub fn format_trace(profile: &PreferenceProfile, trace: &DynamicsTrace) -> String {
    let mut out = String::from("# step mover move gurus dis maxvp abst\n");
    for (t, state) in trace.states.iter().enumerate() {
        let (mover, target) = if t == 0 {
            ("-".to_string(), "-".to_string())
        } else {
            let s = &trace.steps[t - 1];
            (s.mover.to_string(), s.target.to_string())
        };
        let ga = state.resolve();
        let gurus = if ga.gurus().is_empty() {
            "-".to_string()
        } else {
            ga.gurus()
                .iter()
                .map(|g| g.to_string())
                .collect::<Vec<_>>()
                .join(";")
        };
        let m = measures(profile, state);
        let maxvp = m
            .max_voting_power
            .map_or("-".to_string(), |v| v.to_string());
        out.push_str(&format!(
            "{t} {mover} {target} {gurus} {} {maxvp} {}\n",
            m.dissatisfaction, m.abstentions
        ));
    }
    out
}

/// Parses a move script: one `step mover move` triple per non-comment line
/// (trailing fields ignored, so an exported trace is a valid script; the
/// start-state line with `-` fields is skipped).
pub fn parse_script(text: &str) -> Result<Vec<(VoterId, usize)>, String> {
    let mut moves = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() < 3 {
            return Err(format!("line {}: expected `step mover move`", lineno + 1));
        }
        if fields[1] == "-" {
            continue;
        }
        let mover: usize = fields[1]
            .parse()
            .map_err(|_| format!("line {}: bad mover `{}`", lineno + 1, fields[1]))?;
        let target: usize = fields[2]
            .parse()
            .map_err(|_| format!("line {}: bad move `{}`", lineno + 1, fields[2]))?;
        moves.push((mover, target));
    }
    Ok(moves)
}

/// Summary of repeated best-response runs from random starts and random
/// permutation schedules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergenceReport {
    pub trials: usize,
    pub converged: usize,
    pub budget_exhausted: usize,
    pub cycles: usize,
    /// Largest round index containing a state change, over converged runs.
    pub max_rounds: usize,
}

impl ConvergenceReport {
    pub fn all_converged(&self) -> bool {
        self.converged == self.trials
    }
}

/// Runs `trials` best-response dynamics with random permutation schedules
/// and random start states, each for at most `budget_steps` steps.
pub fn brd_convergence_sweep<R: Rng>(
    profile: &PreferenceProfile,
    trials: usize,
    budget_steps: usize,
    rng: &mut R,
) -> ConvergenceReport {
    let n = profile.n();
    let mut report = ConvergenceReport {
        trials,
        converged: 0,
        budget_exhausted: 0,
        cycles: 0,
        max_rounds: 0,
    };
    for _ in 0..trials {
        let mut sigma: Vec<usize> = (1..=n).collect();
        sigma.shuffle(rng);
        let targets: Vec<usize> = (0..n).map(|_| rng.random_range(0..=n)).collect();
        let d0 = DelegationFunction::from_targets(targets).unwrap();
        let trace = run_dynamics(
            profile,
            d0,
            &TokenFunction::Permutation(sigma),
            &MoveRule::BestResponse,
            budget_steps,
        )
        .expect("best response never raises script errors");
        match trace.verdict {
            Verdict::Converged { round, .. } => {
                report.converged += 1;
                report.max_rounds = report.max_rounds.max(round);
            }
            Verdict::Cycle { .. } => report.cycles += 1,
            Verdict::BudgetExhausted => report.budget_exhausted += 1,
        }
    }
    report
}

/// Default step budget for best-response sweeps: `n * (n + 2)` rounds of a
/// permutation schedule.
pub fn default_brd_budget(n: usize) -> usize {
    n * (n + 2) * n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn best_response_in_triangle_prefers_successor() {
        let p = samples::no_equilibrium_triangle();
        let d = DelegationFunction::all_voting(3);
        assert_eq!(
            best_response(&p, &d, 1),
            BestResponse {
                target: 2,
                outcome: 2
            }
        );
    }

    #[test]
    fn best_response_votes_when_nobody_is_acceptable() {
        // voter 1 accepts nobody
        let p = PreferenceProfile::from_orders(vec![
            vec![1, 2, 0, 3],
            vec![1, 2, 3, 0],
            vec![3, 1, 2, 0],
        ])
        .unwrap();
        let mut d = DelegationFunction::all_voting(3);
        d.set(1, 3);
        let br = best_response(&p, &d, 1);
        assert_eq!(
            br,
            BestResponse {
                target: 1,
                outcome: 1
            }
        );
    }

    #[test]
    fn best_response_keeps_a_best_delegation() {
        let p = samples::mutual_pairs_four();
        let mut d = DelegationFunction::all_voting(4);
        d.set(1, 2);
        let br = best_response(&p, &d, 1);
        assert_eq!(
            br,
            BestResponse {
                target: 2,
                outcome: 2
            }
        );
    }

    #[test]
    fn keeping_preserves_indirect_chains() {
        // 1 delegates to 2 who delegates to 3; 3 is 1's favourite, so 1 keeps
        // the indirect chain instead of rewriting it
        let p = PreferenceProfile::from_orders(vec![
            vec![3, 2, 1, 0],
            vec![3, 2, 1, 0],
            vec![3, 1, 2, 0],
        ])
        .unwrap();
        let d = DelegationFunction::from_targets(vec![2, 3, 3]).unwrap();
        let br = best_response(&p, &d, 1);
        assert_eq!(
            br,
            BestResponse {
                target: 2,
                outcome: 3
            }
        );
    }

    #[test]
    fn scripted_cycle_on_mutual_pairs() {
        let p = samples::mutual_pairs_four();
        let script = samples::mutual_pairs_cycle_script();
        let token = TokenFunction::Script(script.iter().map(|&(m, _)| m).collect());
        let rule = MoveRule::ImprovedScript(script.iter().map(|&(_, mv)| mv).collect());
        let trace =
            run_dynamics(&p, DelegationFunction::all_voting(4), &token, &rule, 100).unwrap();
        assert_eq!(
            trace.verdict,
            Verdict::Cycle {
                entry: 1,
                period: 8
            }
        );
        assert_eq!(trace.states[9], trace.states[1]);
    }

    #[test]
    fn improved_script_rejects_worsening_moves() {
        let p = samples::mutual_pairs_four();
        // voter 1 delegating to 3 is worse than voting
        let token = TokenFunction::Script(vec![1]);
        let rule = MoveRule::ImprovedScript(vec![3]);
        let err =
            run_dynamics(&p, DelegationFunction::all_voting(4), &token, &rule, 10).unwrap_err();
        assert!(matches!(
            err,
            ScriptError::NotImproving {
                step: 1,
                mover: 1,
                ..
            }
        ));
    }

    #[test]
    fn brd_worst_case_needs_three_rounds() {
        let (p, token) = samples::brd_three_round_worst_case();
        let trace = run_dynamics(
            &p,
            DelegationFunction::all_voting(3),
            &TokenFunction::Script(token),
            &MoveRule::BestResponse,
            100,
        )
        .unwrap();
        assert!(matches!(
            trace.verdict,
            Verdict::Converged {
                at_step: 9,
                round: 3
            }
        ));
        assert_eq!(trace.final_state().targets(), [1, 1, 3]);
        assert_eq!(trace.final_state().resolve().gurus(), [1, 3]);
        assert_eq!(trace.rounds, vec![3, 6, 9]);
    }

    #[test]
    fn brd_converges_on_permutation_schedule() {
        let p = samples::mutual_pairs_four();
        let trace = run_dynamics(
            &p,
            DelegationFunction::all_voting(4),
            &TokenFunction::RoundRobin,
            &MoveRule::BestResponse,
            1000,
        )
        .unwrap();
        match trace.verdict {
            Verdict::Converged { round, .. } => assert!(round <= 3),
            v => panic!("expected convergence, got {v:?}"),
        }
        assert!(is_nash_stable(&p, trace.final_state()).is_stable());
    }

    #[test]
    fn zero_budget_exhausts() {
        let p = samples::mutual_pairs_four();
        let trace = run_dynamics(
            &p,
            DelegationFunction::all_voting(4),
            &TokenFunction::RoundRobin,
            &MoveRule::BestResponse,
            0,
        )
        .unwrap();
        assert_eq!(trace.verdict, Verdict::BudgetExhausted);
    }

    #[test]
    fn trace_round_trips_as_script() {
        let p = samples::mutual_pairs_four();
        let script = samples::mutual_pairs_cycle_script();
        let token = TokenFunction::Script(script.iter().map(|&(m, _)| m).collect());
        let rule = MoveRule::MoveScript(script.iter().map(|&(_, mv)| mv).collect());
        let trace =
            run_dynamics(&p, DelegationFunction::all_voting(4), &token, &rule, 100).unwrap();
        let text = format_trace(&p, &trace);
        let parsed = parse_script(&text).unwrap();
        assert_eq!(parsed, script);
    }
}
