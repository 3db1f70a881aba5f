//! Brute-force reference implementations, kept deliberately independent of
//! the solver code paths: guru resolution by plain path walking, stability
//! straight from the definition, and stable-guru-set enumeration by sweeping
//! candidate states. Tests check the fast paths against these.

use crate::profile::{DelegationFunction, PreferenceProfile, VoterId, ABSTAIN};
use std::collections::BTreeSet;

/// Guru of `v` by naive path following over raw targets (`targets[i]` is the
/// move of voter `i + 1`).
fn guru_by_walking(targets: &[usize], v: VoterId) -> usize {
    let mut seen = vec![false; targets.len() + 1];
    let mut cur = v;
    loop {
        if cur == ABSTAIN {
            return ABSTAIN;
        }
        if targets[cur - 1] == cur {
            return cur;
        }
        if seen[cur] {
            return ABSTAIN; // circuit
        }
        seen[cur] = true;
        cur = targets[cur - 1];
    }
}

/// Stability straight from the definition: every voter must rank her guru
/// above voting, abstaining and every other current guru.
pub fn stable_by_definition(profile: &PreferenceProfile, targets: &[usize]) -> bool {
    let n = profile.n();
    let gurus: Vec<VoterId> = (1..=n).filter(|&v| targets[v - 1] == v).collect();
    for v in 1..=n {
        let mine = guru_by_walking(targets, v);
        let my_rank = profile.rank(v, mine);
        if profile.rank(v, v) < my_rank || profile.rank(v, ABSTAIN) < my_rank {
            return false;
        }
        if gurus.iter().any(|&g| profile.rank(v, g) < my_rank) {
            return false;
        }
    }
    true
}

/// Every guru set of a Nash-stable state, by sweeping all `(n + 1)^n`
/// delegation functions. Exponential; intended for n up to about 7.
pub fn stable_guru_sets_exhaustive(profile: &PreferenceProfile) -> BTreeSet<Vec<VoterId>> {
    let n = profile.n();
    let mut found = BTreeSet::new();
    let mut targets = vec![0usize; n];
    loop {
        if stable_by_definition(profile, &targets) {
            found.insert((1..=n).filter(|&v| targets[v - 1] == v).collect());
        }
        // odometer over 0..=n per position
        let mut pos = 0;
        loop {
            if pos == n {
                return found;
            }
            if targets[pos] < n {
                targets[pos] += 1;
                break;
            }
            targets[pos] = 0;
            pos += 1;
        }
    }
}

/// Every guru set of a Nash-stable state, by checking one candidate state
/// per voter subset: members vote, everyone else takes her favourite among
/// the members and abstention. Any stable state with guru set `K` forces the
/// same guru for every voter as this candidate, so the sweep is exact while
/// only costing `2^n` stability checks.
pub fn stable_guru_sets_by_candidates(profile: &PreferenceProfile) -> BTreeSet<Vec<VoterId>> {
    let n = profile.n();
    let mut found = BTreeSet::new();
    for mask in 0u64..(1u64 << n) {
        let members: Vec<VoterId> = (1..=n).filter(|&v| mask & (1 << (v - 1)) != 0).collect();
        let targets = candidate_state(profile, &members);
        if stable_by_definition(profile, &targets) {
            found.insert(members);
        }
    }
    found
}

/// Direct-delegation candidate for a guru set, built from rank lookups only.
pub fn candidate_state(profile: &PreferenceProfile, members: &[VoterId]) -> Vec<usize> {
    let n = profile.n();
    let mut member = vec![false; n + 1];
    for &v in members {
        member[v] = true;
    }
    (1..=n)
        .map(|v| {
            if member[v] {
                return v;
            }
            let mut best = ABSTAIN;
            for k in 1..=n {
                if member[k] && profile.rank(v, k) < profile.rank(v, best) {
                    best = k;
                }
            }
            best
        })
        .collect()
}

/// Minimum of each objective over all stable states (`None` when no stable
/// state exists). Max voting power is skipped for guru-less stable states.
pub fn min_measures_over_stable(
    profile: &PreferenceProfile,
) -> Option<(usize, Option<usize>, usize)> {
    let n = profile.n();
    let sets = stable_guru_sets_by_candidates(profile);
    if sets.is_empty() {
        return None;
    }
    let mut best_dis = usize::MAX;
    let mut best_vp: Option<usize> = None;
    let mut best_abst = usize::MAX;
    for members in &sets {
        let targets = candidate_state(profile, members);
        let mut dis = 0;
        let mut abst = 0;
        let mut vp = vec![0usize; n + 1];
        for v in 1..=n {
            let g = guru_by_walking(&targets, v);
            dis += profile.rank(v, g) - 1;
            if g == ABSTAIN {
                abst += 1;
            } else {
                vp[g] += 1;
            }
        }
        best_dis = best_dis.min(dis);
        best_abst = best_abst.min(abst);
        if let Some(max_vp) = members.iter().map(|&g| vp[g]).max() {
            best_vp = Some(best_vp.map_or(max_vp, |b: usize| b.min(max_vp)));
        }
    }
    Some((best_dis, best_vp, best_abst))
}

/// Convenience wrapper turning a raw target vector into the public type.
pub fn as_delegation(targets: &[usize]) -> DelegationFunction {
    DelegationFunction::from_targets(targets.to_vec()).unwrap()
}
