//! Symmetric profiles: mutual acceptability among non-abstainers.
//!
//! When acceptance is mutual the acceptability digraph is an undirected
//! graph, kernels coincide with maximal independent sets, and a greedy scan
//! both finds an equilibrium and realizes any given non-abstainer as a guru.

use crate::digraph::AcceptabilityDigraph;
use crate::error::Error;
use crate::profile::{Equilibrium, PreferenceProfile, VoterId};

/// Result of the symmetry check. The witness is an ordered pair `(i, j)`
/// where `i` accepts `j` but `j` does not accept `i`, first such pair in
/// lexicographic order of `{i, j}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryReport {
    pub witness: Option<(VoterId, VoterId)>,
}

impl SymmetryReport {
    pub fn is_symmetric(&self) -> bool {
        self.witness.is_none()
    }
}

pub fn check_symmetric(profile: &PreferenceProfile) -> SymmetryReport {
    let verts = profile.non_abstainers();
    for (idx, &i) in verts.iter().enumerate() {
        for &j in &verts[idx + 1..] {
            let ij = profile.accepts(i, j);
            let ji = profile.accepts(j, i);
            if ij != ji {
                let witness = if ij { (i, j) } else { (j, i) };
                return SymmetryReport {
                    witness: Some(witness),
                };
            }
        }
    }
    SymmetryReport { witness: None }
}

/// Greedy maximal independent set over the digraph's vertices in ascending
/// order, optionally seeded with one vertex that is taken first.
pub fn greedy_independent_set(g: &AcceptabilityDigraph, seed: Option<VoterId>) -> Vec<VoterId> {
    let mut chosen: Vec<VoterId> = Vec::new();
    if let Some(s) = seed {
        chosen.push(s);
    }
    for v in g.vertices() {
        if Some(v) == seed {
            continue;
        }
        if chosen.iter().all(|&c| !g.adjacent(c, v)) {
            chosen.push(v);
        }
    }
    chosen.sort_unstable();
    chosen
}

/// Equilibrium of a symmetric profile via a greedy maximal independent set.
pub fn solve_equilibrium_sym(profile: &PreferenceProfile) -> Result<Equilibrium, Error> {
    let report = check_symmetric(profile);
    if let Some((i, j)) = report.witness {
        return Err(Error::NotSymmetric(i, j));
    }
    if profile.non_abstainers().is_empty() {
        return Ok(Equilibrium::degenerate(profile.n()));
    }
    let g = AcceptabilityDigraph::from_profile(profile);
    let kernel = greedy_independent_set(&g, None);
    Equilibrium::from_kernel(profile, &kernel)
}

/// Equilibrium of a symmetric profile in which `v` is a guru, via a greedy
/// maximal independent set seeded with `v`. Always succeeds for
/// non-abstainers.
pub fn memb_sym(profile: &PreferenceProfile, v: VoterId) -> Result<Equilibrium, Error> {
    if v == 0 || v > profile.n() {
        return Err(Error::VoterOutOfRange(v, profile.n()));
    }
    if profile.is_abstainer(v) {
        return Err(Error::AbstainerGuru(v));
    }
    let report = check_symmetric(profile);
    if let Some((i, j)) = report.witness {
        return Err(Error::NotSymmetric(i, j));
    }
    let g = AcceptabilityDigraph::from_profile(profile);
    let kernel = greedy_independent_set(&g, Some(v));
    let eq = Equilibrium::from_kernel(profile, &kernel)?;
    debug_assert!(eq.gurus.contains(&v));
    Ok(eq)
}
