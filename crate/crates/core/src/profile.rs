//! Core data model: voters, strict preference orders, delegation functions,
//! transitive guru resolution, stability checking and the objective measures.
//!
//! Voters are identified by `1..=n`; outcome `0` stands for abstention. Each
//! voter carries a strict total order over all `n + 1` outcomes, so every
//! comparison a solver needs is a rank lookup.

use crate::error::Error;

/// Identifier of a voter, in `1..=n`. `0` is reserved for the abstention
/// outcome and never names a voter.
pub type VoterId = usize;

/// The abstention outcome.
pub const ABSTAIN: usize = 0;

/// A strict preference profile: one total order over `{0, 1, ..., n}` per voter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreferenceProfile {
    n: usize,
    /// `orders[v-1]` is voter `v`'s ranking, best outcome first.
    orders: Vec<Vec<usize>>,
    /// `ranks[v-1][o]` is the 1-based rank of outcome `o` for voter `v`.
    ranks: Vec<Vec<usize>>,
    abstainer: Vec<bool>,
}

impl PreferenceProfile {
    /// Builds a profile from one ranking per voter (voter `v` = entry `v-1`).
    /// Every ranking must be a permutation of `0..=n`.
    pub fn from_orders(orders: Vec<Vec<usize>>) -> Result<Self, Error> {
        let n = orders.len();
        let mut ranks = Vec::with_capacity(n);
        for (idx, order) in orders.iter().enumerate() {
            let voter = idx + 1;
            if order.len() != n + 1 {
                return Err(Error::NotAPermutation { voter, n });
            }
            let mut rank = vec![0usize; n + 1];
            for (pos, &o) in order.iter().enumerate() {
                if o > n || rank[o] != 0 {
                    return Err(Error::NotAPermutation { voter, n });
                }
                rank[o] = pos + 1;
            }
            ranks.push(rank);
        }
        let abstainer = (1..=n)
            .map(|v| ranks[v - 1][ABSTAIN] < ranks[v - 1][v])
            .collect();
        Ok(Self {
            n,
            orders,
            ranks,
            abstainer,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Voter `v`'s full ranking, best first.
    pub fn order(&self, v: VoterId) -> &[usize] {
        &self.orders[v - 1]
    }

    /// 1-based rank of outcome `o` for voter `v` (1 = most preferred).
    pub fn rank(&self, v: VoterId, o: usize) -> usize {
        self.ranks[v - 1][o]
    }

    /// `true` iff voter `v` strictly prefers outcome `a` to outcome `b`.
    pub fn prefers(&self, v: VoterId, a: usize, b: usize) -> bool {
        self.ranks[v - 1][a] < self.ranks[v - 1][b]
    }

    /// A voter is an abstainer when she ranks abstention above voting herself.
    pub fn is_abstainer(&self, v: VoterId) -> bool {
        self.abstainer[v - 1]
    }

    pub fn abstainers(&self) -> Vec<VoterId> {
        (1..=self.n).filter(|&v| self.abstainer[v - 1]).collect()
    }

    pub fn non_abstainers(&self) -> Vec<VoterId> {
        (1..=self.n).filter(|&v| !self.abstainer[v - 1]).collect()
    }

    /// `true` iff `j` is an acceptable guru for `i`: `i` prefers delegating to
    /// `j` over both voting herself and abstaining.
    pub fn accepts(&self, i: VoterId, j: VoterId) -> bool {
        i != j
            && j != ABSTAIN
            && self.ranks[i - 1][j] < self.ranks[i - 1][i]
            && self.ranks[i - 1][j] < self.ranks[i - 1][ABSTAIN]
    }

    /// Acceptable gurus of `i` in `i`'s preference order.
    pub fn acceptable(&self, i: VoterId) -> Vec<VoterId> {
        self.orders[i - 1]
            .iter()
            .copied()
            .filter(|&j| j != ABSTAIN && j != i && self.accepts(i, j))
            .collect()
    }
}

/// A delegation function: each voter votes (`d(v) = v`), abstains
/// (`d(v) = 0`) or delegates to another voter.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DelegationFunction {
    targets: Vec<usize>,
}

impl DelegationFunction {
    pub fn from_targets(targets: Vec<usize>) -> Result<Self, Error> {
        let n = targets.len();
        for (idx, &t) in targets.iter().enumerate() {
            if t > n {
                return Err(Error::BadDelegationTarget {
                    voter: idx + 1,
                    target: t,
                    n,
                });
            }
        }
        Ok(Self { targets })
    }

    /// Everyone declares intention to vote.
    pub fn all_voting(n: usize) -> Self {
        Self {
            targets: (1..=n).collect(),
        }
    }

    /// Everyone abstains.
    pub fn all_abstaining(n: usize) -> Self {
        Self {
            targets: vec![ABSTAIN; n],
        }
    }

    pub fn n(&self) -> usize {
        self.targets.len()
    }

    pub fn target(&self, v: VoterId) -> usize {
        self.targets[v - 1]
    }

    pub fn set(&mut self, v: VoterId, target: usize) {
        self.targets[v - 1] = target;
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    /// Follows all delegation chains once and returns every voter's guru.
    ///
    /// Chains ending in a voting voter resolve to that voter; chains reaching
    /// abstention or entering a circuit resolve to `0` for every voter along
    /// the way. Runs in O(n) via memoization.
    pub fn resolve(&self) -> GuruAssignment {
        let n = self.targets.len();
        // 0 = unresolved, 1 = on the current path, 2 = resolved
        let mut state = vec![0u8; n + 1];
        let mut gu = vec![0usize; n + 1];
        let mut path = Vec::new();
        for start in 1..=n {
            if state[start] == 2 {
                continue;
            }
            path.clear();
            let mut cur = start;
            let outcome = loop {
                if cur == ABSTAIN {
                    break ABSTAIN;
                }
                match state[cur] {
                    2 => break gu[cur],
                    1 => break ABSTAIN, // circuit: everyone on the path abstains
                    _ => {
                        if self.targets[cur - 1] == cur {
                            state[cur] = 2;
                            gu[cur] = cur;
                            break cur;
                        }
                        state[cur] = 1;
                        path.push(cur);
                        cur = self.targets[cur - 1];
                    }
                }
            };
            for &v in &path {
                state[v] = 2;
                gu[v] = outcome;
            }
        }
        let gurus = (1..=n).filter(|&v| self.targets[v - 1] == v).collect();
        GuruAssignment { gu, gurus }
    }
}

/// Result of resolving a delegation function: the guru of every voter and the
/// set of voters who actually vote.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GuruAssignment {
    /// `gu[v]` for `v` in `1..=n`; entry 0 is unused.
    gu: Vec<usize>,
    /// Ascending list of voting voters.
    gurus: Vec<VoterId>,
}

impl GuruAssignment {
    /// Guru of voter `v`, or `0` if `v` ends up abstaining.
    pub fn guru_of(&self, v: VoterId) -> usize {
        self.gu[v]
    }

    pub fn gurus(&self) -> &[VoterId] {
        &self.gurus
    }

    pub fn is_guru(&self, v: VoterId) -> bool {
        self.gu[v] == v
    }
}

/// Verdict of the stability check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stability {
    Stable,
    /// The least-index voter who can strictly improve, together with her best
    /// available alternative outcome.
    Unstable {
        voter: VoterId,
        better: usize,
    },
}

impl Stability {
    pub fn is_stable(&self) -> bool {
        matches!(self, Stability::Stable)
    }
}

/// A delegation function is Nash-stable when no voter strictly prefers
/// voting, abstaining, or any current guru over her present guru.
pub fn is_nash_stable(profile: &PreferenceProfile, d: &DelegationFunction) -> Stability {
    debug_assert_eq!(profile.n(), d.n());
    let ga = d.resolve();
    for v in 1..=profile.n() {
        let cur = ga.guru_of(v);
        let mut best = cur;
        let mut best_rank = profile.rank(v, cur);
        for cand in [v, ABSTAIN].into_iter().chain(ga.gurus().iter().copied()) {
            let r = profile.rank(v, cand);
            if r < best_rank {
                best = cand;
                best_rank = r;
            }
        }
        if best != cur {
            return Stability::Unstable {
                voter: v,
                better: best,
            };
        }
    }
    Stability::Stable
}

/// Direct-delegation realization of a guru set: members vote, everyone else
/// delegates to her most preferred member (or abstains when abstention beats
/// them all). Stable whenever the set is a kernel of the acceptability
/// digraph.
pub fn kernel_to_delegation(
    profile: &PreferenceProfile,
    kernel: &[VoterId],
) -> Result<DelegationFunction, Error> {
    let n = profile.n();
    let mut member = vec![false; n + 1];
    for &k in kernel {
        if k == 0 || k > n {
            return Err(Error::VoterOutOfRange(k, n));
        }
        if profile.is_abstainer(k) {
            return Err(Error::AbstainerGuru(k));
        }
        member[k] = true;
    }
    let mut targets = vec![0usize; n];
    for v in 1..=n {
        if member[v] {
            targets[v - 1] = v;
        } else {
            let mut best = ABSTAIN;
            let mut best_rank = profile.rank(v, ABSTAIN);
            for k in 1..=n {
                if member[k] && profile.rank(v, k) < best_rank {
                    best = k;
                    best_rank = profile.rank(v, k);
                }
            }
            targets[v - 1] = best;
        }
    }
    Ok(DelegationFunction { targets })
}

/// A solved game state: a delegation function together with its guru set.
///
/// `degenerate` marks the everyone-abstains outcome returned when a profile
/// has no non-abstainer at all (the guru set is empty and no kernel exists to
/// realize).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equilibrium {
    pub delegation: DelegationFunction,
    pub gurus: Vec<VoterId>,
    pub degenerate: bool,
}

impl Equilibrium {
    pub(crate) fn from_kernel(
        profile: &PreferenceProfile,
        kernel: &[VoterId],
    ) -> Result<Self, Error> {
        let delegation = kernel_to_delegation(profile, kernel)?;
        let mut gurus = kernel.to_vec();
        gurus.sort_unstable();
        gurus.dedup();
        Ok(Self {
            delegation,
            gurus,
            degenerate: false,
        })
    }

    /// The everyone-abstains fallback for profiles without non-abstainers.
    pub(crate) fn degenerate(n: usize) -> Self {
        Self {
            delegation: DelegationFunction::all_abstaining(n),
            gurus: Vec::new(),
            degenerate: true,
        }
    }
}

/// Total dissatisfaction: sum over voters of (rank of her guru) - 1.
pub fn measure_dissatisfaction(profile: &PreferenceProfile, d: &DelegationFunction) -> usize {
    let ga = d.resolve();
    (1..=profile.n())
        .map(|v| profile.rank(v, ga.guru_of(v)) - 1)
        .sum()
}

/// Largest voting power among gurus, counting each guru herself.
/// Returns `None` when nobody votes.
pub fn measure_max_voting_power(
    profile: &PreferenceProfile,
    d: &DelegationFunction,
) -> Option<usize> {
    let ga = d.resolve();
    if ga.gurus().is_empty() {
        return None;
    }
    let mut vp = vec![0usize; profile.n() + 1];
    for v in 1..=profile.n() {
        vp[ga.guru_of(v)] += 1;
    }
    ga.gurus().iter().map(|&g| vp[g]).max()
}

/// Number of voters whose chain ends in abstention, circuit members included.
pub fn measure_abstentions(profile: &PreferenceProfile, d: &DelegationFunction) -> usize {
    let ga = d.resolve();
    (1..=profile.n())
        .filter(|&v| ga.guru_of(v) == ABSTAIN)
        .count()
}

/// All three objective measures from a single resolution pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Measures {
    pub dissatisfaction: usize,
    pub max_voting_power: Option<usize>,
    pub abstentions: usize,
}

pub fn measures(profile: &PreferenceProfile, d: &DelegationFunction) -> Measures {
    let ga = d.resolve();
    let n = profile.n();
    let mut vp = vec![0usize; n + 1];
    let mut dis = 0usize;
    let mut abst = 0usize;
    for v in 1..=n {
        let g = ga.guru_of(v);
        dis += profile.rank(v, g) - 1;
        if g == ABSTAIN {
            abst += 1;
        } else {
            vp[g] += 1;
        }
    }
    let max_vp = ga.gurus().iter().map(|&g| vp[g]).max();
    Measures {
        dissatisfaction: dis,
        max_voting_power: max_vp,
        abstentions: abst,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    fn d(targets: &[usize]) -> DelegationFunction {
        DelegationFunction::from_targets(targets.to_vec()).unwrap()
    }

    #[test]
    fn resolve_single_chain() {
        let ga = d(&[2, 3, 3]).resolve();
        assert_eq!(
            (1..=3).map(|v| ga.guru_of(v)).collect::<Vec<_>>(),
            [3, 3, 3]
        );
        assert_eq!(ga.gurus(), [3]);
    }

    #[test]
    fn resolve_circuit_abstains_everyone() {
        let ga = d(&[2, 3, 1]).resolve();
        assert_eq!(
            (1..=3).map(|v| ga.guru_of(v)).collect::<Vec<_>>(),
            [0, 0, 0]
        );
        assert!(ga.gurus().is_empty());
    }

    #[test]
    fn resolve_two_chains() {
        let ga = d(&[1, 4, 1, 4]).resolve();
        assert_eq!(
            (1..=4).map(|v| ga.guru_of(v)).collect::<Vec<_>>(),
            [1, 4, 1, 4]
        );
        assert_eq!(ga.gurus(), [1, 4]);
    }

    #[test]
    fn tail_into_circuit_abstains() {
        // 1 -> 2 -> 3 -> 2 circuit; 4 delegates into the circuit via 1.
        let ga = d(&[2, 3, 2, 1]).resolve();
        for v in 1..=4 {
            assert_eq!(ga.guru_of(v), 0);
        }
    }

    #[test]
    fn all_vote_unstable_in_triangle() {
        let p = samples::no_equilibrium_triangle();
        let verdict = is_nash_stable(&p, &DelegationFunction::all_voting(3));
        assert_eq!(
            verdict,
            Stability::Unstable {
                voter: 1,
                better: 2
            }
        );
    }

    #[test]
    fn unique_kernel_state_is_stable() {
        let p = samples::sp_four();
        let eq = d(&[1, 4, 1, 4]);
        assert!(is_nash_stable(&p, &eq).is_stable());
    }

    #[test]
    fn single_voter_voting_is_stable() {
        let p = PreferenceProfile::from_orders(vec![vec![1, 0]]).unwrap();
        assert!(is_nash_stable(&p, &d(&[1])).is_stable());
    }

    #[test]
    fn kernel_to_delegation_matches_preferences() {
        let p = samples::sp_four();
        let eq = kernel_to_delegation(&p, &[1, 4]).unwrap();
        assert_eq!(eq.targets(), [1, 4, 1, 4]);
    }

    #[test]
    fn kernel_to_delegation_rejects_abstainer() {
        let p = PreferenceProfile::from_orders(vec![vec![0, 1, 2], vec![2, 1, 0]]).unwrap();
        assert_eq!(kernel_to_delegation(&p, &[1]), Err(Error::AbstainerGuru(1)));
    }

    #[test]
    fn empty_kernel_forces_abstention() {
        let p = PreferenceProfile::from_orders(vec![vec![0, 1, 2], vec![0, 2, 1]]).unwrap();
        let eq = kernel_to_delegation(&p, &[]).unwrap();
        assert_eq!(eq.targets(), [0, 0]);
    }

    #[test]
    fn measures_on_unique_kernel() {
        let p = samples::sp_four();
        let eq = d(&[1, 4, 1, 4]);
        assert_eq!(measure_dissatisfaction(&p, &eq), 4);
        assert_eq!(measure_max_voting_power(&p, &eq), Some(2));
        assert_eq!(measure_abstentions(&p, &eq), 0);
    }

    #[test]
    fn dissatisfaction_is_zero_when_everyone_gets_her_top_choice() {
        let p = PreferenceProfile::from_orders(vec![
            vec![1, 2, 3, 0],
            vec![1, 2, 3, 0],
            vec![1, 3, 2, 0],
        ])
        .unwrap();
        assert_eq!(measure_dissatisfaction(&p, &d(&[1, 1, 1])), 0);
    }

    #[test]
    fn measures_on_circuit() {
        let p = samples::no_equilibrium_triangle();
        let circ = d(&[2, 3, 1]);
        assert_eq!(measure_abstentions(&p, &circ), 3);
        assert_eq!(measure_max_voting_power(&p, &circ), None);
    }

    #[test]
    fn all_vote_dissatisfaction_in_triangle() {
        let p = samples::no_equilibrium_triangle();
        assert_eq!(
            measure_dissatisfaction(&p, &DelegationFunction::all_voting(3)),
            3
        );
    }

    #[test]
    fn all_abstain_counts_everyone() {
        let p = samples::sp_four();
        assert_eq!(
            measure_abstentions(&p, &DelegationFunction::all_abstaining(4)),
            4
        );
    }

    #[test]
    fn rejects_malformed_orders() {
        assert!(PreferenceProfile::from_orders(vec![vec![1, 1]]).is_err());
        assert!(PreferenceProfile::from_orders(vec![vec![1, 2]]).is_err());
        assert!(PreferenceProfile::from_orders(vec![vec![0, 1], vec![0, 1]]).is_err());
    }
}
