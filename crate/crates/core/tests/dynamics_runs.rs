//! Dynamics behaviour over the structured profile classes: best response is
//! an improving response, converged states are stable, symmetric runs settle
//! within three rounds with voters never un-voting, and distance-based runs
//! always converge.

use delga_core::dynamics::{
    best_response, brd_convergence_sweep, default_brd_budget, run_dynamics, MoveRule,
    TokenFunction, Verdict,
};
use delga_core::generate;
use delga_core::profile::{is_nash_stable, DelegationFunction};
use delga_core::symmetric::check_symmetric;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

#[test]
fn best_response_moves_never_worsen_and_traces_converge_stable() {
    let mut rng = ChaCha8Rng::seed_from_u64(301);
    for _ in 0..80 {
        let n = rng.random_range(1..=9);
        let p = match rng.random_range(0..3) {
            0 => generate::random_symmetric(n, 0.4, 0.1, &mut rng),
            1 => generate::random_db_points(n, 2, 0.1, &mut rng).profile,
            _ => generate::random_single_peaked(n, &mut rng),
        };
        let d0 =
            DelegationFunction::from_targets((0..n).map(|_| rng.random_range(0..=n)).collect())
                .unwrap();
        let mut sigma: Vec<usize> = (1..=n).collect();
        sigma.shuffle(&mut rng);
        let trace = run_dynamics(
            &p,
            d0,
            &TokenFunction::Permutation(sigma),
            &MoveRule::BestResponse,
            default_brd_budget(n),
        )
        .unwrap();
        // every step is an improving response
        for (t, step) in trace.steps.iter().enumerate() {
            let before = &trace.states[t];
            let after = &trace.states[t + 1];
            let v = step.mover;
            let from = before.resolve().guru_of(v);
            let to = after.resolve().guru_of(v);
            assert!(
                p.rank(v, to) <= p.rank(v, from),
                "step {}: mover {v} worsened {from} -> {to}",
                t + 1
            );
            if step.target != before.target(v) {
                assert!(p.rank(v, to) < p.rank(v, from));
            }
        }
        if let Verdict::Converged { .. } = trace.verdict {
            assert!(is_nash_stable(&p, trace.final_state()).is_stable());
        }
    }
}

#[test]
fn symmetric_brd_settles_within_three_rounds() {
    let mut rng = ChaCha8Rng::seed_from_u64(302);
    for _ in 0..60 {
        let n = rng.random_range(1..=10);
        let p = generate::random_symmetric(n, 0.5, 0.1, &mut rng);
        assert!(check_symmetric(&p).is_symmetric());
        let report = brd_convergence_sweep(&p, 10, default_brd_budget(n), &mut rng);
        assert!(report.all_converged(), "{report:?}");
        assert!(report.max_rounds <= 3, "{report:?}");
    }
}

#[test]
fn symmetric_brd_voters_never_unvote() {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    for _ in 0..60 {
        let n = rng.random_range(2..=9);
        let p = generate::random_symmetric(n, 0.5, 0.1, &mut rng);
        let d0 =
            DelegationFunction::from_targets((0..n).map(|_| rng.random_range(0..=n)).collect())
                .unwrap();
        let mut sigma: Vec<usize> = (1..=n).collect();
        sigma.shuffle(&mut rng);
        let trace = run_dynamics(
            &p,
            d0,
            &TokenFunction::Permutation(sigma),
            &MoveRule::BestResponse,
            default_brd_budget(n),
        )
        .unwrap();
        // once a mover chooses to vote, she votes in every later state
        let mut committed: Vec<usize> = Vec::new();
        for (t, step) in trace.steps.iter().enumerate() {
            for &v in &committed {
                assert_eq!(trace.states[t + 1].target(v), v, "voter {v} un-voted");
            }
            if step.target == step.mover {
                committed.push(step.mover);
            }
        }
    }
}

#[test]
fn distance_based_brd_always_converges() {
    let mut rng = ChaCha8Rng::seed_from_u64(304);
    for _ in 0..50 {
        let n = rng.random_range(1..=10);
        let db = if rng.random_bool(0.5) {
            generate::random_db_points(n, 2, 0.1, &mut rng)
        } else {
            generate::random_db_matrix(n, 0.1, &mut rng)
        };
        let report = brd_convergence_sweep(&db.profile, 10, default_brd_budget(n), &mut rng);
        assert!(report.all_converged(), "{report:?}");
    }
}

#[test]
fn single_voter_converges_in_round_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(305);
    let p = generate::random_db_points(1, 2, 0.0, &mut rng).profile;
    let trace = run_dynamics(
        &p,
        DelegationFunction::all_abstaining(1),
        &TokenFunction::RoundRobin,
        &MoveRule::BestResponse,
        100,
    )
    .unwrap();
    match trace.verdict {
        Verdict::Converged { round, .. } => assert!(round <= 1),
        v => panic!("expected convergence, got {v:?}"),
    }
}

#[test]
fn single_peaked_best_response_can_cycle() {
    // found by sweeping all permutation schedules and start states of the
    // four-voter single-peaked profile; the recurrence is
    // state [1,3,3,3] at steps 7 and 19 with equal token phase
    let p = delga_core::samples::sp_four();
    let trace = run_dynamics(
        &p,
        DelegationFunction::all_voting(4),
        &TokenFunction::Permutation(vec![1, 2, 4, 3]),
        &MoveRule::BestResponse,
        4000,
    )
    .unwrap();
    assert_eq!(
        trace.verdict,
        Verdict::Cycle {
            entry: 7,
            period: 12
        }
    );
    assert_eq!(trace.states[7].targets(), [1, 3, 3, 3]);
    assert_eq!(trace.states[19], trace.states[7]);
}

#[test]
fn best_response_is_reachable_outcome_maximum() {
    // cross-check the achievable-outcome shortcut against trying every move
    let mut rng = ChaCha8Rng::seed_from_u64(306);
    for _ in 0..200 {
        let n = rng.random_range(1..=7);
        let p = generate::random_unrestricted(n, &mut rng);
        let d = DelegationFunction::from_targets((0..n).map(|_| rng.random_range(0..=n)).collect())
            .unwrap();
        for v in 1..=n {
            let br = best_response(&p, &d, v);
            let mut best_by_trying = None;
            for target in 0..=n {
                let mut alt = d.clone();
                alt.set(v, target);
                let outcome = alt.resolve().guru_of(v);
                best_by_trying = Some(match best_by_trying {
                    None => outcome,
                    Some(prev) if p.rank(v, outcome) < p.rank(v, prev) => outcome,
                    Some(prev) => prev,
                });
            }
            assert_eq!(br.outcome, best_by_trying.unwrap(), "voter {v}");
        }
    }
}
