//! Single-peaked profiles on the identity axis and their polynomial solvers.
//!
//! For a single-peaked profile the acceptability digraph restricted to
//! non-abstainers is an interval catch digraph: each voter accepts exactly a
//! contiguous window of the axis around herself. Kernels of such digraphs
//! decompose along the axis, which lets a small auxiliary DAG enumerate all
//! equilibrium guru sets as source-sink paths:
//!
//! * arc `(i, j)` exists iff `{i, j}` is a kernel of the subgraph induced by
//!   the window `i..=j`;
//! * arc `(s, j)` / `(i, t)` exist iff the corresponding singleton is a
//!   kernel of the prefix `1..=j` / suffix `i..=n` window.
//!
//! Equilibrium existence is then a reachability question, membership is two
//! graph searches, and the minimum-dissatisfaction / minimum-abstention /
//! minimum-max-voting-power equilibria are shortest-path or small
//! dynamic-programming problems over per-arc segment weights.

use crate::digraph::AcceptabilityDigraph;
use crate::error::Error;
use crate::profile::{
    measure_abstentions, measure_dissatisfaction, measure_max_voting_power, Equilibrium,
    PreferenceProfile, VoterId, ABSTAIN,
};

/// Verdict of the single-peakedness check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpCheck {
    Ok,
    /// Lexicographically least witness `(voter, mid, far)`: `mid` lies
    /// strictly between `voter` and `far` on the axis, yet `voter` ranks
    /// `far` above `mid`.
    Violation {
        voter: VoterId,
        mid: VoterId,
        far: VoterId,
    },
}

impl SpCheck {
    pub fn is_ok(&self) -> bool {
        matches!(self, SpCheck::Ok)
    }
}

/// Checks the single-peaked condition for every voter under the identity
/// axis. Voting and abstention may sit anywhere in a ranking; only the
/// relative order of other voters is constrained.
pub fn check_single_peaked(profile: &PreferenceProfile) -> SpCheck {
    let n = profile.n();
    for v in 1..=n {
        // away from v, ranks must increase monotonically on each side
        let right_ok = (v + 1..n).all(|j| profile.rank(v, j) < profile.rank(v, j + 1));
        let left_ok = (2..v)
            .rev()
            .all(|j| profile.rank(v, j) < profile.rank(v, j - 1));
        if right_ok && left_ok {
            continue;
        }
        // lexicographically least (mid, far) witness for this voter
        for mid in 1..=n {
            if mid == v {
                continue;
            }
            if mid > v {
                for far in mid + 1..=n {
                    if profile.rank(v, far) < profile.rank(v, mid) {
                        return SpCheck::Violation { voter: v, mid, far };
                    }
                }
            } else {
                for far in 1..mid {
                    if profile.rank(v, far) < profile.rank(v, mid) {
                        return SpCheck::Violation { voter: v, mid, far };
                    }
                }
            }
        }
        unreachable!("monotonicity failure implies a witness");
    }
    SpCheck::Ok
}

/// A profile validated to be single-peaked under the identity axis.
#[derive(Debug, Clone)]
pub struct AxisProfile {
    profile: PreferenceProfile,
}

impl AxisProfile {
    pub fn new(profile: PreferenceProfile) -> Result<Self, Error> {
        match check_single_peaked(&profile) {
            SpCheck::Ok => Ok(Self { profile }),
            SpCheck::Violation { voter, mid, far } => {
                Err(Error::NotSinglePeaked { voter, mid, far })
            }
        }
    }

    pub fn profile(&self) -> &PreferenceProfile {
        &self.profile
    }

    pub fn into_profile(self) -> PreferenceProfile {
        self.profile
    }
}

/// Interval form of the acceptability digraph after removing abstainers and
/// compacting the axis: slot `p` accepts exactly `l(p)..=r(p)` minus itself.
#[derive(Debug, Clone)]
pub struct IntervalCatchForm {
    originals: Vec<VoterId>,   // original id per slot (1-based slots)
    slots: Vec<Option<usize>>, // slot per original id
    l: Vec<usize>,
    r: Vec<usize>,
}

impl IntervalCatchForm {
    /// Number of non-abstainers.
    pub fn m(&self) -> usize {
        self.originals.len()
    }

    /// Original voter id occupying slot `p`.
    pub fn original(&self, p: usize) -> VoterId {
        self.originals[p - 1]
    }

    /// Slot of an original voter, `None` for abstainers.
    pub fn slot_of(&self, v: VoterId) -> Option<usize> {
        self.slots[v]
    }

    pub fn l(&self, p: usize) -> usize {
        self.l[p - 1]
    }

    pub fn r(&self, p: usize) -> usize {
        self.r[p - 1]
    }

    /// Whether the voter at slot `p` accepts the voter at slot `q`.
    pub fn accepts_slot(&self, p: usize, q: usize) -> bool {
        p != q && self.l[p - 1] <= q && q <= self.r[p - 1]
    }
}

/// Computes `l`/`r` bounds for every non-abstainer and verifies that each
/// out-neighbourhood really is the full window (a failure means the input
/// was not single-peaked after all).
pub fn interval_catch_form(axis: &AxisProfile) -> Result<IntervalCatchForm, Error> {
    let profile = axis.profile();
    let n = profile.n();
    let originals = profile.non_abstainers();
    let mut slots = vec![None; n + 1];
    for (idx, &v) in originals.iter().enumerate() {
        slots[v] = Some(idx + 1);
    }
    let m = originals.len();
    let mut l = vec![0usize; m];
    let mut r = vec![0usize; m];
    for p in 1..=m {
        let v = originals[p - 1];
        let mut lo = p;
        let mut hi = p;
        let mut count = 0usize;
        for q in 1..=m {
            if q != p && profile.accepts(v, originals[q - 1]) {
                lo = lo.min(q);
                hi = hi.max(q);
                count += 1;
            }
        }
        if count != hi - lo + 1 - 1 && !(count == 0 && lo == p && hi == p) {
            return Err(Error::NotIntervalCatch { voter: v });
        }
        l[p - 1] = lo;
        r[p - 1] = hi;
    }
    Ok(IntervalCatchForm {
        originals,
        slots,
        l,
        r,
    })
}

/// Node of the auxiliary digraph, reported with original voter ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum AuxNode {
    Source,
    Voter(VoterId),
    Sink,
}

impl std::fmt::Display for AuxNode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AuxNode::Source => write!(f, "s"),
            AuxNode::Voter(v) => write!(f, "{v}"),
            AuxNode::Sink => write!(f, "t"),
        }
    }
}

/// The auxiliary DAG whose source-sink paths are exactly the kernels of the
/// acceptability digraph. Nodes are slots `1..=m` plus source `0` and sink
/// `m + 1`; every arc goes strictly left to right.
#[derive(Debug, Clone)]
pub struct AuxiliaryDigraph {
    icf: IntervalCatchForm,
    tails: Vec<usize>,
    heads: Vec<usize>,
    /// Outgoing arc indices per node, sink-first then heads ascending.
    out: Vec<Vec<usize>>,
}

/// Per-arc segment weights. For an arc `(k, k')`, the voters strictly
/// between the endpoints on the original axis (abstainers included) each take
/// their favourite among abstention and the two endpoint gurus; the tail
/// additionally pays her own self-rank in `dis`.
#[derive(Debug, Clone)]
pub struct AuxWeights {
    pub dis: Vec<usize>,
    pub abst: Vec<usize>,
    /// Voters of the segment delegating to the tail endpoint.
    pub vp_tail: Vec<usize>,
    /// Voters of the segment delegating to the head endpoint.
    pub vp_head: Vec<usize>,
}

impl AuxiliaryDigraph {
    pub fn m(&self) -> usize {
        self.icf.m()
    }

    pub fn arc_count(&self) -> usize {
        self.tails.len()
    }

    fn node(&self, internal: usize) -> AuxNode {
        if internal == 0 {
            AuxNode::Source
        } else if internal == self.m() + 1 {
            AuxNode::Sink
        } else {
            AuxNode::Voter(self.icf.original(internal))
        }
    }

    /// Endpoints of the arc at an internal index (the order used by
    /// [`AuxWeights`]), over original voter ids.
    pub fn arc_endpoints(&self, idx: usize) -> (AuxNode, AuxNode) {
        (self.node(self.tails[idx]), self.node(self.heads[idx]))
    }

    /// All arcs as `(tail, head)` pairs over original voter ids, sorted.
    pub fn arc_pairs(&self) -> Vec<(AuxNode, AuxNode)> {
        let mut pairs: Vec<(AuxNode, AuxNode)> = (0..self.tails.len())
            .map(|a| (self.node(self.tails[a]), self.node(self.heads[a])))
            .collect();
        pairs.sort_by_key(|&(t, h)| {
            let key = |x: AuxNode| match x {
                AuxNode::Source => 0,
                AuxNode::Voter(v) => v,
                AuxNode::Sink => usize::MAX,
            };
            (key(t), key(h))
        });
        pairs
    }

    /// Segment weights for all four families, in one pass over each arc's
    /// original-axis window.
    pub fn weights(&self, axis: &AxisProfile) -> AuxWeights {
        let profile = axis.profile();
        let n = profile.n();
        let m = self.m();
        let count = self.tails.len();
        let mut w = AuxWeights {
            dis: vec![0; count],
            abst: vec![0; count],
            vp_tail: vec![0; count],
            vp_head: vec![0; count],
        };
        for a in 0..count {
            let tail = self.tails[a];
            let head = self.heads[a];
            let lo = if tail == 0 {
                0
            } else {
                self.icf.original(tail)
            };
            let hi = if head == m + 1 {
                n + 1
            } else {
                self.icf.original(head)
            };
            if tail != 0 {
                w.dis[a] += profile.rank(lo, lo) - 1;
            }
            for v in lo + 1..hi {
                let mut best = ABSTAIN;
                let mut best_rank = profile.rank(v, ABSTAIN);
                if tail != 0 && profile.rank(v, lo) < best_rank {
                    best = lo;
                    best_rank = profile.rank(v, lo);
                }
                if head != m + 1 && profile.rank(v, hi) < best_rank {
                    best = hi;
                    best_rank = profile.rank(v, hi);
                }
                w.dis[a] += best_rank - 1;
                if best == ABSTAIN {
                    w.abst[a] += 1;
                } else if best == lo {
                    w.vp_tail[a] += 1;
                } else {
                    w.vp_head[a] += 1;
                }
            }
        }
        w
    }

    /// GraphViz rendering with optional weight annotations.
    pub fn to_dot(&self, weights: Option<&AuxWeights>) -> String {
        let mut s = String::from("digraph auxiliary {\n  rankdir=LR;\n");
        s.push_str("  s [shape=diamond];\n  t [shape=diamond];\n");
        for a in 0..self.tails.len() {
            let tail = self.node(self.tails[a]);
            let head = self.node(self.heads[a]);
            match weights {
                Some(w) => s.push_str(&format!(
                    "  {tail} -> {head} [label=\"dis={} abst={} vp={}|{}\"];\n",
                    w.dis[a], w.abst[a], w.vp_tail[a], w.vp_head[a]
                )),
                None => s.push_str(&format!("  {tail} -> {head};\n")),
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Builds the auxiliary digraph in O(n^2).
///
/// Source and sink arcs fall out of prefix/suffix window bounds; voter-voter
/// arcs use a rightward sweep per tail: while scanning heads `j`, `reach`
/// tracks the smallest right bound among interior voters that do not accept
/// the tail, and the pair arc exists iff the head stays within `reach` and
/// the endpoints ignore each other.
pub fn build_auxiliary(axis: &AxisProfile) -> AuxiliaryDigraph {
    let icf = interval_catch_form(axis).expect("validated profile has interval form");
    let m = icf.m();
    let mut tails = Vec::new();
    let mut heads = Vec::new();

    // source arcs: {j} must absorb every slot before it
    let mut prefix_min_r = usize::MAX;
    for j in 1..=m {
        if j <= prefix_min_r {
            tails.push(0);
            heads.push(j);
        }
        prefix_min_r = prefix_min_r.min(icf.r(j));
    }
    // voter-voter arcs
    for i in 1..=m {
        let mut reach = usize::MAX;
        for j in i + 1..=m {
            let head_accepts_tail = icf.accepts_slot(j, i);
            if !head_accepts_tail && !icf.accepts_slot(i, j) && j <= reach {
                tails.push(i);
                heads.push(j);
            }
            if !head_accepts_tail {
                reach = reach.min(icf.r(j));
            }
        }
    }
    // sink arcs: {i} must absorb every slot after it
    let mut suffix_max_l = 0usize;
    for i in (1..=m).rev() {
        if suffix_max_l <= i {
            tails.push(i);
            heads.push(m + 1);
        }
        suffix_max_l = suffix_max_l.max(icf.l(i));
    }

    let mut out = vec![Vec::new(); m + 2];
    let mut order: Vec<usize> = (0..tails.len()).collect();
    // sink arcs first within a tail, then heads ascending: a path that can
    // stop earlier yields the lexicographically smaller guru set
    order.sort_by_key(|&a| (tails[a], if heads[a] == m + 1 { 0 } else { heads[a] }));
    for a in order {
        out[tails[a]].push(a);
    }
    AuxiliaryDigraph {
        icf,
        tails,
        heads,
        out,
    }
}

/// Shortest source-sink path under per-arc weights, returning interior slots
/// and total weight; among equal-weight paths the lexicographically smallest
/// guru set wins.
fn shortest_lex_path(aux: &AuxiliaryDigraph, w: &[usize]) -> Option<(Vec<usize>, usize)> {
    let m = aux.m();
    let t = m + 1;
    let mut dist = vec![usize::MAX; m + 2];
    dist[t] = 0;
    for u in (0..=m).rev() {
        for &a in &aux.out[u] {
            let h = aux.heads[a];
            if dist[h] != usize::MAX {
                dist[u] = dist[u].min(w[a] + dist[h]);
            }
        }
    }
    if dist[0] == usize::MAX {
        return None;
    }
    let total = dist[0];
    let mut interior = Vec::new();
    let mut cur = 0usize;
    while cur != t {
        let a = *aux.out[cur]
            .iter()
            .find(|&&a| dist[aux.heads[a]] != usize::MAX && w[a] + dist[aux.heads[a]] == dist[cur])
            .expect("finite distance implies an optimal continuation");
        cur = aux.heads[a];
        if cur != t {
            interior.push(cur);
        }
    }
    Some((interior, total))
}

fn kernel_from_slots(aux: &AuxiliaryDigraph, slots: &[usize]) -> Vec<VoterId> {
    slots.iter().map(|&p| aux.icf.original(p)).collect()
}

/// Any equilibrium of a single-peaked profile, via the first available
/// source-sink path (the lexicographically smallest guru set).
pub fn solve_equilibrium_sp(axis: &AxisProfile) -> Equilibrium {
    let aux = build_auxiliary(axis);
    equilibrium_from_auxiliary(axis, &aux)
}

/// As [`solve_equilibrium_sp`] but reusing an already-built auxiliary digraph.
pub fn equilibrium_from_auxiliary(axis: &AxisProfile, aux: &AuxiliaryDigraph) -> Equilibrium {
    if aux.m() == 0 {
        return Equilibrium::degenerate(axis.profile().n());
    }
    let zeros = vec![0usize; aux.arc_count()];
    let (slots, _) = shortest_lex_path(aux, &zeros)
        .expect("a single-peaked profile with a non-abstainer always has an equilibrium");
    Equilibrium::from_kernel(axis.profile(), &kernel_from_slots(aux, &slots))
        .expect("kernel voters are non-abstainers")
}

/// Outcome of a guru-membership query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    /// A witness equilibrium in which the queried voter is a guru.
    Guru(Equilibrium),
    NotGuru,
    /// Abstainers are never gurus; the answer is trivially negative.
    Abstainer,
}

/// Decides whether some equilibrium makes `v` a guru: `v`'s slot must be
/// reachable from the source and co-reachable from the sink.
pub fn memb_sp(axis: &AxisProfile, v: VoterId) -> Result<Membership, Error> {
    let profile = axis.profile();
    if v == 0 || v > profile.n() {
        return Err(Error::VoterOutOfRange(v, profile.n()));
    }
    if profile.is_abstainer(v) {
        return Ok(Membership::Abstainer);
    }
    let aux = build_auxiliary(axis);
    let m = aux.m();
    let t = m + 1;
    let p = aux.icf.slot_of(v).expect("non-abstainer has a slot");

    let mut from_source = vec![false; m + 2];
    from_source[0] = true;
    for u in 0..=m {
        if from_source[u] {
            for &a in &aux.out[u] {
                from_source[aux.heads[a]] = true;
            }
        }
    }
    let mut to_sink = vec![false; m + 2];
    to_sink[t] = true;
    for u in (0..=m).rev() {
        for &a in &aux.out[u] {
            if to_sink[aux.heads[a]] {
                to_sink[u] = true;
            }
        }
    }
    if !(from_source[p] && to_sink[p]) {
        return Ok(Membership::NotGuru);
    }

    // prefix: lexicographically first source path reaching p
    let mut reaches_p = vec![false; m + 2];
    reaches_p[p] = true;
    for u in (0..p).rev() {
        for &a in &aux.out[u] {
            let h = aux.heads[a];
            if h <= p && reaches_p[h] {
                reaches_p[u] = true;
            }
        }
    }
    let mut slots = Vec::new();
    let mut cur = 0usize;
    while cur != p {
        let a = *aux.out[cur]
            .iter()
            .find(|&&a| aux.heads[a] <= p && reaches_p[aux.heads[a]])
            .expect("p is reachable from the source");
        cur = aux.heads[a];
        slots.push(cur);
    }
    // suffix: lexicographically smallest continuation from p to the sink
    let mut cur = p;
    while cur != t {
        let a = *aux.out[cur]
            .iter()
            .find(|&&a| to_sink[aux.heads[a]])
            .expect("p reaches the sink");
        cur = aux.heads[a];
        if cur != t {
            slots.push(cur);
        }
    }
    let kernel = kernel_from_slots(&aux, &slots);
    Ok(Membership::Guru(Equilibrium::from_kernel(
        profile, &kernel,
    )?))
}

/// Minimum-dissatisfaction equilibrium: shortest source-sink path under the
/// `dis` weights; the value equals the dissatisfaction measure of the
/// returned state.
pub fn mindis_sp(axis: &AxisProfile) -> (Equilibrium, usize) {
    let aux = build_auxiliary(axis);
    if aux.m() == 0 {
        let eq = Equilibrium::degenerate(axis.profile().n());
        let value = measure_dissatisfaction(axis.profile(), &eq.delegation);
        return (eq, value);
    }
    let w = aux.weights(axis);
    let (slots, value) = shortest_lex_path(&aux, &w.dis).expect("equilibrium exists");
    let eq = Equilibrium::from_kernel(axis.profile(), &kernel_from_slots(&aux, &slots))
        .expect("kernel voters are non-abstainers");
    debug_assert_eq!(
        value,
        measure_dissatisfaction(axis.profile(), &eq.delegation)
    );
    (eq, value)
}

/// Minimum-abstention equilibrium: shortest source-sink path under the
/// `abst` weights.
pub fn minabst_sp(axis: &AxisProfile) -> (Equilibrium, usize) {
    let aux = build_auxiliary(axis);
    if aux.m() == 0 {
        let eq = Equilibrium::degenerate(axis.profile().n());
        let value = axis.profile().n();
        return (eq, value);
    }
    let w = aux.weights(axis);
    let (slots, value) = shortest_lex_path(&aux, &w.abst).expect("equilibrium exists");
    let eq = Equilibrium::from_kernel(axis.profile(), &kernel_from_slots(&aux, &slots))
        .expect("kernel voters are non-abstainers");
    debug_assert_eq!(value, measure_abstentions(axis.profile(), &eq.delegation));
    (eq, value)
}

/// Minimum of the maximum voting power over all equilibria.
///
/// Dynamic program over states `(slot, load)`: `load` is the number of
/// segment voters a guru has already collected from her left arc, and the
/// table value is the best achievable bound on earlier gurus. A guru's final
/// power is `load + outgoing segment share + 1` (herself). Returns the
/// everyone-abstains state with value 0 on degenerate profiles.
pub fn minmaxvp_sp(axis: &AxisProfile) -> (Equilibrium, usize) {
    let profile = axis.profile();
    let n = profile.n();
    let aux = build_auxiliary(axis);
    let m = aux.m();
    if m == 0 {
        return (Equilibrium::degenerate(n), 0);
    }
    let w = aux.weights(axis);
    let t = m + 1;
    const INF: usize = usize::MAX;

    let mut table = vec![vec![INF; n + 1]; m + 1];
    for &a in &aux.out[0] {
        let h = aux.heads[a];
        debug_assert!(h != t);
        table[h][w.vp_head[a]] = 0;
    }
    let mut best = INF;
    for j in 1..=m {
        for load in 0..=n {
            let upto = table[j][load];
            if upto == INF {
                continue;
            }
            for &a in &aux.out[j] {
                let power = load + w.vp_tail[a] + 1;
                let cand = upto.max(power);
                let h = aux.heads[a];
                if h == t {
                    best = best.min(cand);
                } else if cand < table[h][w.vp_head[a]] {
                    table[h][w.vp_head[a]] = cand;
                }
            }
        }
    }
    let target = best;
    debug_assert!(target != INF, "equilibrium exists");

    // Recover the lexicographically smallest kernel among optimal paths by
    // walking arcs whose induced guru powers never exceed the optimum.
    let arc_count = aux.arc_count();
    let mut viable = vec![false; arc_count];
    for u in (0..=m).rev() {
        for &a in &aux.out[u] {
            let h = aux.heads[a];
            if h == t {
                viable[a] = true;
            } else {
                viable[a] = aux.out[h].iter().any(|&b| {
                    let power = w.vp_head[a] + w.vp_tail[b] + 1;
                    power <= target && viable[b]
                });
            }
        }
    }
    let start = *aux.out[0]
        .iter()
        .find(|&&a| viable[a])
        .expect("optimal value is witnessed by some path");
    let mut slots = vec![aux.heads[start]];
    let mut cur_arc = start;
    loop {
        let h = aux.heads[cur_arc];
        let next = *aux.out[h]
            .iter()
            .find(|&&b| {
                let power = w.vp_head[cur_arc] + w.vp_tail[b] + 1;
                power <= target && viable[b]
            })
            .expect("viable arcs always extend to the sink");
        if aux.heads[next] == t {
            break;
        }
        slots.push(aux.heads[next]);
        cur_arc = next;
    }
    let eq = Equilibrium::from_kernel(profile, &kernel_from_slots(&aux, &slots))
        .expect("kernel voters are non-abstainers");
    debug_assert_eq!(
        measure_max_voting_power(profile, &eq.delegation),
        Some(target)
    );
    (eq, target)
}

/// Convenience: the acceptability digraph restricted interval windows used by
/// tests to validate the arc criterion directly.
pub fn window_pair_is_kernel(
    g: &AcceptabilityDigraph,
    lo: VoterId,
    hi: VoterId,
    pair: &[VoterId],
) -> bool {
    let sub = g.induced_window(lo, hi);
    crate::digraph::is_kernel(&sub, pair)
        .map(|v| v.is_kernel())
        .unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::DelegationFunction;
    use crate::samples;

    fn axis(p: PreferenceProfile) -> AxisProfile {
        AxisProfile::new(p).unwrap()
    }

    #[test]
    fn sp_check_accepts_the_four_voter_profile() {
        assert!(check_single_peaked(&samples::sp_four()).is_ok());
    }

    #[test]
    fn sp_check_rejects_the_triangle() {
        assert_eq!(
            check_single_peaked(&samples::no_equilibrium_triangle()),
            SpCheck::Violation {
                voter: 3,
                mid: 2,
                far: 1
            }
        );
    }

    #[test]
    fn sp_check_trivial_on_single_voter() {
        let p = PreferenceProfile::from_orders(vec![vec![1, 0]]).unwrap();
        assert!(check_single_peaked(&p).is_ok());
    }

    #[test]
    fn interval_form_of_four_voter_profile() {
        let icf = interval_catch_form(&axis(samples::sp_four())).unwrap();
        assert_eq!((1..=4).map(|p| icf.l(p)).collect::<Vec<_>>(), [1, 2, 1, 3]);
        assert_eq!((1..=4).map(|p| icf.r(p)).collect::<Vec<_>>(), [2, 4, 3, 4]);
    }

    #[test]
    fn interval_form_with_empty_acceptance() {
        let p = PreferenceProfile::from_orders(vec![
            vec![1, 2, 3, 0],
            vec![2, 1, 3, 0],
            vec![3, 2, 1, 0],
        ])
        .unwrap();
        let icf = interval_catch_form(&axis(p)).unwrap();
        for q in 1..=3 {
            assert_eq!((icf.l(q), icf.r(q)), (q, q));
        }
    }

    #[test]
    fn auxiliary_arcs_of_four_voter_profile() {
        let aux = build_auxiliary(&axis(samples::sp_four()));
        let arcs = aux.arc_pairs();
        use AuxNode::*;
        assert_eq!(
            arcs,
            vec![
                (Source, Voter(1)),
                (Source, Voter(2)),
                (Voter(1), Voter(4)),
                (Voter(3), Sink),
                (Voter(4), Sink),
            ]
        );
    }

    #[test]
    fn auxiliary_weights_on_middle_arc() {
        let ax = axis(samples::sp_four());
        let aux = build_auxiliary(&ax);
        let w = aux.weights(&ax);
        let idx = (0..aux.arc_count())
            .find(|&a| aux.tails[a] == 1 && aux.heads[a] == 4)
            .unwrap();
        assert_eq!(w.dis[idx], 3);
        assert_eq!(w.abst[idx], 0);
        assert_eq!(w.vp_tail[idx], 1);
        assert_eq!(w.vp_head[idx], 1);
    }

    #[test]
    fn auxiliary_of_single_voter() {
        let p = PreferenceProfile::from_orders(vec![vec![1, 0]]).unwrap();
        let aux = build_auxiliary(&axis(p));
        use AuxNode::*;
        assert_eq!(aux.arc_pairs(), vec![(Source, Voter(1)), (Voter(1), Sink)]);
    }

    #[test]
    fn auxiliary_dot_carries_weight_annotations() {
        let ax = axis(samples::sp_four());
        let aux = build_auxiliary(&ax);
        let w = aux.weights(&ax);
        let dot = aux.to_dot(Some(&w));
        assert!(dot.contains("s -> 1"));
        assert!(dot.contains("1 -> 4 [label=\"dis=3 abst=0 vp=1|1\"]"));
        assert!(dot.contains("4 -> t"));
    }

    #[test]
    fn equilibrium_of_four_voter_profile() {
        let eq = solve_equilibrium_sp(&axis(samples::sp_four()));
        assert_eq!(eq.delegation.targets(), [1, 4, 1, 4]);
        assert_eq!(eq.gurus, [1, 4]);
        assert!(!eq.degenerate);
    }

    #[test]
    fn equilibrium_of_all_abstainers_is_degenerate() {
        let p = PreferenceProfile::from_orders(vec![vec![0, 1, 2], vec![0, 2, 1]]).unwrap();
        let eq = solve_equilibrium_sp(&axis(p));
        assert!(eq.degenerate);
        assert_eq!(eq.delegation, DelegationFunction::all_abstaining(2));
        assert!(eq.gurus.is_empty());
    }

    #[test]
    fn membership_on_four_voter_profile() {
        let ax = axis(samples::sp_four());
        for (v, expect) in [(1, true), (2, false), (3, false), (4, true)] {
            let got = memb_sp(&ax, v).unwrap();
            match (expect, got) {
                (true, Membership::Guru(eq)) => assert!(eq.gurus.contains(&v)),
                (false, Membership::NotGuru) => {}
                (e, g) => panic!("voter {v}: expected member={e}, got {g:?}"),
            }
        }
    }

    #[test]
    fn membership_flags_abstainers() {
        let p = PreferenceProfile::from_orders(vec![vec![0, 1, 2], vec![1, 2, 0]]).unwrap();
        let ax = axis(p);
        assert_eq!(memb_sp(&ax, 1).unwrap(), Membership::Abstainer);
        assert!(memb_sp(&ax, 5).is_err());
    }

    #[test]
    fn membership_single_voter() {
        let p = PreferenceProfile::from_orders(vec![vec![1, 0]]).unwrap();
        assert!(matches!(memb_sp(&axis(p), 1).unwrap(), Membership::Guru(_)));
    }

    #[test]
    fn mindis_on_four_voter_profile() {
        let (eq, value) = mindis_sp(&axis(samples::sp_four()));
        assert_eq!(value, 4);
        assert_eq!(eq.delegation.targets(), [1, 4, 1, 4]);
    }

    #[test]
    fn mindis_single_voter_who_loves_voting() {
        let p = PreferenceProfile::from_orders(vec![vec![1, 0]]).unwrap();
        let (_, value) = mindis_sp(&axis(p));
        assert_eq!(value, 0);
    }

    #[test]
    fn minabst_on_four_voter_profile() {
        let (_, value) = minabst_sp(&axis(samples::sp_four()));
        assert_eq!(value, 0);
    }

    #[test]
    fn minabst_when_everyone_votes_top() {
        let p = PreferenceProfile::from_orders(vec![
            vec![1, 2, 3, 0],
            vec![2, 1, 3, 0],
            vec![3, 2, 1, 0],
        ])
        .unwrap();
        let (eq, value) = minabst_sp(&axis(p));
        assert_eq!(value, 0);
        assert_eq!(eq.gurus, [1, 2, 3]);
    }

    #[test]
    fn minmaxvp_on_four_voter_profile() {
        let (_, value) = minmaxvp_sp(&axis(samples::sp_four()));
        assert_eq!(value, 2);
    }

    #[test]
    fn minmaxvp_single_voter() {
        let p = PreferenceProfile::from_orders(vec![vec![1, 0]]).unwrap();
        assert_eq!(minmaxvp_sp(&axis(p)).1, 1);
    }

    #[test]
    fn minmaxvp_on_nested_funnel() {
        // everyone accepts the walk towards the centre, the centre accepts
        // nobody: the centre is the only kernel and collects all votes
        let (p, centre) = samples::funnel_profile(5);
        let (eq, value) = minmaxvp_sp(&axis(p));
        assert_eq!(value, 5);
        assert_eq!(eq.gurus, [centre]);
    }
}
