//! Delegation-acceptability digraph, kernel predicates, and the exhaustive
//! kernel enumerator that serves as the ground-truth oracle for every
//! polynomial solver in this crate.
//!
//! Vertices are the non-abstainers; an arc `(i, j)` means `i` accepts `j` as
//! a guru. A kernel (independent + absorbing vertex set) is exactly a guru
//! set of some Nash-stable delegation function.

use crate::error::Error;
use crate::profile::{PreferenceProfile, VoterId};

/// Default cap on the vertex count for exhaustive kernel enumeration.
pub const ENUMERATION_CAP: usize = 22;

/// Dense digraph over a subset of `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AcceptabilityDigraph {
    n: usize,
    vertex: Vec<bool>,
    adj: Vec<Vec<bool>>,
}

impl AcceptabilityDigraph {
    /// Digraph of a profile: vertices are the non-abstainers, arcs follow
    /// acceptability. O(n^2).
    pub fn from_profile(profile: &PreferenceProfile) -> Self {
        let n = profile.n();
        let mut vertex = vec![false; n + 1];
        for v in profile.non_abstainers() {
            vertex[v] = true;
        }
        let mut adj = vec![vec![false; n + 1]; n + 1];
        for i in 1..=n {
            if !vertex[i] {
                continue;
            }
            for j in 1..=n {
                if vertex[j] && profile.accepts(i, j) {
                    adj[i][j] = true;
                }
            }
        }
        Self { n, vertex, adj }
    }

    /// Builds a digraph directly from a vertex set and arc list (used by the
    /// hardness gadgets, which are defined graph-first).
    pub fn from_arcs(
        n: usize,
        vertices: &[VoterId],
        arcs: &[(VoterId, VoterId)],
    ) -> Result<Self, Error> {
        let mut vertex = vec![false; n + 1];
        for &v in vertices {
            if v == 0 || v > n {
                return Err(Error::VoterOutOfRange(v, n));
            }
            vertex[v] = true;
        }
        let mut adj = vec![vec![false; n + 1]; n + 1];
        for &(u, v) in arcs {
            if u == 0 || u > n || !vertex[u] {
                return Err(Error::NotAVertex(u));
            }
            if v == 0 || v > n || !vertex[v] {
                return Err(Error::NotAVertex(v));
            }
            if u != v {
                adj[u][v] = true;
            }
        }
        Ok(Self { n, vertex, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_vertex(&self, v: VoterId) -> bool {
        v >= 1 && v <= self.n && self.vertex[v]
    }

    pub fn vertices(&self) -> Vec<VoterId> {
        (1..=self.n).filter(|&v| self.vertex[v]).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex.iter().filter(|&&b| b).count()
    }

    pub fn has_arc(&self, i: VoterId, j: VoterId) -> bool {
        self.adj[i][j]
    }

    /// `true` iff there is an arc between `i` and `j` in either direction.
    pub fn adjacent(&self, i: VoterId, j: VoterId) -> bool {
        self.adj[i][j] || self.adj[j][i]
    }

    pub fn arcs(&self) -> Vec<(VoterId, VoterId)> {
        let mut out = Vec::new();
        for i in 1..=self.n {
            for j in 1..=self.n {
                if self.adj[i][j] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Subgraph induced by the vertices of `self` inside `lo..=hi`.
    pub fn induced_window(&self, lo: VoterId, hi: VoterId) -> Self {
        let keep: Vec<VoterId> = (lo..=hi.min(self.n)).filter(|&v| self.vertex[v]).collect();
        self.induced(&keep)
    }

    /// Subgraph induced by an explicit vertex subset.
    pub fn induced(&self, keep: &[VoterId]) -> Self {
        let mut vertex = vec![false; self.n + 1];
        for &v in keep {
            if self.is_vertex(v) {
                vertex[v] = true;
            }
        }
        let mut adj = vec![vec![false; self.n + 1]; self.n + 1];
        for i in 1..=self.n {
            if !vertex[i] {
                continue;
            }
            for j in 1..=self.n {
                adj[i][j] = vertex[j] && self.adj[i][j];
            }
        }
        Self {
            n: self.n,
            vertex,
            adj,
        }
    }

    /// GraphViz rendering, vertices in ascending order.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph acceptability {\n");
        for v in self.vertices() {
            s.push_str(&format!("  {v};\n"));
        }
        for (i, j) in self.arcs() {
            s.push_str(&format!("  {i} -> {j};\n"));
        }
        s.push_str("}\n");
        s
    }
}

/// Why a candidate set fails to be a kernel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KernelViolation {
    /// Two members joined by an arc (reported with the smaller id first).
    DependentPair(VoterId, VoterId),
    /// A non-member with no arc into the set.
    Unabsorbed(VoterId),
}

/// Verdict of the kernel predicate, with the first violation in index order
/// when the set is not a kernel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelVerdict {
    pub violation: Option<KernelViolation>,
}

impl KernelVerdict {
    pub fn is_kernel(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks independence and absorption of `candidate` inside `g`.
///
/// Scan order is fixed for reproducibility: member pairs in lexicographic
/// order first, then non-members ascending.
pub fn is_kernel(g: &AcceptabilityDigraph, candidate: &[VoterId]) -> Result<KernelVerdict, Error> {
    let mut members: Vec<VoterId> = candidate.to_vec();
    members.sort_unstable();
    members.dedup();
    for &v in &members {
        if !g.is_vertex(v) {
            return Err(Error::NotAVertex(v));
        }
    }
    for (a_idx, &a) in members.iter().enumerate() {
        for &b in &members[a_idx + 1..] {
            if g.adjacent(a, b) {
                return Ok(KernelVerdict {
                    violation: Some(KernelViolation::DependentPair(a, b)),
                });
            }
        }
    }
    let mut in_set = vec![false; g.n() + 1];
    for &v in &members {
        in_set[v] = true;
    }
    for u in g.vertices() {
        if in_set[u] {
            continue;
        }
        let absorbed = members.iter().any(|&k| g.has_arc(u, k));
        if !absorbed {
            return Ok(KernelVerdict {
                violation: Some(KernelViolation::Unabsorbed(u)),
            });
        }
    }
    Ok(KernelVerdict { violation: None })
}

/// Result of exhaustive kernel enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelList {
    /// Kernels in lexicographic order of their sorted member lists.
    pub kernels: Vec<Vec<VoterId>>,
    /// Set when a `limit` cut the list short.
    pub truncated: bool,
}

/// Enumerates every kernel of `g`, in lexicographic order, refusing digraphs
/// above [`ENUMERATION_CAP`] vertices.
pub fn enumerate_kernels(
    g: &AcceptabilityDigraph,
    limit: Option<usize>,
) -> Result<KernelList, Error> {
    enumerate_kernels_capped(g, limit, ENUMERATION_CAP)
}

/// As [`enumerate_kernels`] with an explicit vertex cap.
pub fn enumerate_kernels_capped(
    g: &AcceptabilityDigraph,
    limit: Option<usize>,
    cap: usize,
) -> Result<KernelList, Error> {
    let verts = g.vertices();
    let m = verts.len();
    if m > cap {
        return Err(Error::TooManyVertices { got: m, cap });
    }

    // Depth-first include/exclude over vertices in ascending order, pruning a
    // branch as soon as some excluded vertex can no longer be absorbed. For
    // each vertex, `last_out[p]` is the largest position among its
    // out-neighbours; once the scan passes it, an unabsorbed excluded vertex
    // is dead.
    let mut last_out = vec![0usize; m]; // position + 1 of last potential absorber; 0 = none
    for (p, &u) in verts.iter().enumerate() {
        for (q, &w) in verts.iter().enumerate() {
            if g.has_arc(u, w) {
                last_out[p] = last_out[p].max(q + 1);
            }
        }
    }
    // due_at[q] lists vertices whose last potential absorber sits at position q.
    let mut due_at: Vec<Vec<usize>> = vec![Vec::new(); m + 1];
    for (p, &lo) in last_out.iter().enumerate() {
        if lo > 0 {
            due_at[lo - 1].push(p);
        }
    }

    struct Dfs<'a> {
        g: &'a AcceptabilityDigraph,
        verts: &'a [VoterId],
        due_at: &'a [Vec<usize>],
        last_out: &'a [usize],
        chosen: Vec<usize>,
        in_set: Vec<bool>,
        absorbed: Vec<bool>,
        decided: Vec<bool>,
        out: Vec<Vec<VoterId>>,
    }

    impl Dfs<'_> {
        fn run(&mut self, p: usize) {
            if p == self.verts.len() {
                self.out
                    .push(self.chosen.iter().map(|&q| self.verts[q]).collect());
                return;
            }
            let v = self.verts[p];
            // include v, provided it keeps the set independent
            let independent = self
                .chosen
                .iter()
                .all(|&q| !self.g.adjacent(self.verts[q], v));
            if independent {
                let newly: Vec<usize> = (0..self.verts.len())
                    .filter(|&q| !self.absorbed[q] && q != p && self.g.has_arc(self.verts[q], v))
                    .collect();
                for &q in &newly {
                    self.absorbed[q] = true;
                }
                self.chosen.push(p);
                self.in_set[p] = true;
                self.decided[p] = true;
                self.run(p + 1);
                self.decided[p] = false;
                self.in_set[p] = false;
                self.chosen.pop();
                for &q in &newly {
                    self.absorbed[q] = false;
                }
            }
            // exclude v, provided every vertex whose absorbers are exhausted
            // at this position is already covered
            self.decided[p] = true;
            let dead = self.due_at[p]
                .iter()
                .any(|&q| self.decided[q] && !self.in_set[q] && !self.absorbed[q])
                || (self.last_out[p] <= p && !self.absorbed[p]);
            if !dead {
                self.run(p + 1);
            }
            self.decided[p] = false;
        }
    }

    let mut dfs = Dfs {
        g,
        verts: &verts,
        due_at: &due_at,
        last_out: &last_out,
        chosen: Vec::new(),
        in_set: vec![false; m],
        absorbed: vec![false; m],
        decided: vec![false; m],
        out: Vec::new(),
    };
    dfs.run(0);
    let mut kernels = dfs.out;
    kernels.sort();
    debug_assert!(kernels.iter().all(|k| is_kernel(g, k).unwrap().is_kernel()));

    let mut truncated = false;
    if let Some(l) = limit {
        if kernels.len() > l {
            kernels.truncate(l);
            truncated = true;
        }
    }
    Ok(KernelList { kernels, truncated })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn digraph_of_unique_kernel_profile() {
        let g = AcceptabilityDigraph::from_profile(&samples::sp_four());
        let mut arcs = g.arcs();
        arcs.sort();
        assert_eq!(arcs, vec![(1, 2), (2, 3), (2, 4), (3, 1), (3, 2), (4, 3)]);
    }

    #[test]
    fn digraph_of_triangle_profile() {
        let g = AcceptabilityDigraph::from_profile(&samples::no_equilibrium_triangle());
        assert_eq!(g.arcs(), vec![(1, 2), (2, 3), (3, 1)]);
    }

    #[test]
    fn self_lovers_have_empty_arcs() {
        let p = crate::profile::PreferenceProfile::from_orders(vec![
            vec![1, 2, 3, 0],
            vec![2, 1, 3, 0],
            vec![3, 1, 2, 0],
        ])
        .unwrap();
        let g = AcceptabilityDigraph::from_profile(&p);
        assert!(g.arcs().is_empty());
    }

    #[test]
    fn kernel_predicate_on_unique_kernel() {
        let g = AcceptabilityDigraph::from_profile(&samples::sp_four());
        assert!(is_kernel(&g, &[1, 4]).unwrap().is_kernel());
        assert_eq!(
            is_kernel(&g, &[1, 2]).unwrap().violation,
            Some(KernelViolation::DependentPair(1, 2))
        );
        assert_eq!(
            is_kernel(&g, &[4]).unwrap().violation,
            Some(KernelViolation::Unabsorbed(1))
        );
    }

    #[test]
    fn arcless_digraph_full_vertex_set_is_kernel() {
        let g = AcceptabilityDigraph::from_arcs(3, &[1, 2, 3], &[]).unwrap();
        assert!(is_kernel(&g, &[1, 2, 3]).unwrap().is_kernel());
        let ks = enumerate_kernels(&g, None).unwrap();
        assert_eq!(ks.kernels, vec![vec![1, 2, 3]]);
    }

    #[test]
    fn kernel_rejects_foreign_vertices() {
        let g = AcceptabilityDigraph::from_arcs(3, &[1, 2], &[(1, 2)]).unwrap();
        assert!(is_kernel(&g, &[3]).is_err());
    }

    #[test]
    fn triangle_has_no_kernel() {
        let g = AcceptabilityDigraph::from_profile(&samples::no_equilibrium_triangle());
        assert!(enumerate_kernels(&g, None).unwrap().kernels.is_empty());
    }

    #[test]
    fn unique_kernel_enumerated() {
        let g = AcceptabilityDigraph::from_profile(&samples::sp_four());
        assert_eq!(
            enumerate_kernels(&g, None).unwrap().kernels,
            vec![vec![1, 4]]
        );
    }

    #[test]
    fn two_clique_has_both_singletons() {
        let g = AcceptabilityDigraph::from_arcs(2, &[1, 2], &[(1, 2), (2, 1)]).unwrap();
        assert_eq!(
            enumerate_kernels(&g, None).unwrap().kernels,
            vec![vec![1], vec![2]]
        );
    }

    #[test]
    fn empty_digraph_has_empty_kernel() {
        let g = AcceptabilityDigraph::from_arcs(3, &[], &[]).unwrap();
        assert_eq!(
            enumerate_kernels(&g, None).unwrap().kernels,
            vec![Vec::<usize>::new()]
        );
    }

    #[test]
    fn limit_truncates() {
        let g = AcceptabilityDigraph::from_arcs(2, &[1, 2], &[(1, 2), (2, 1)]).unwrap();
        let ks = enumerate_kernels(&g, Some(1)).unwrap();
        assert_eq!(ks.kernels, vec![vec![1]]);
        assert!(ks.truncated);
    }

    #[test]
    fn cap_refuses_large_digraphs() {
        let verts: Vec<usize> = (1..=23).collect();
        let g = AcceptabilityDigraph::from_arcs(23, &verts, &[]).unwrap();
        assert!(matches!(
            enumerate_kernels(&g, None),
            Err(Error::TooManyVertices { got: 23, cap: 22 })
        ));
    }

    #[test]
    fn dot_rendering_lists_vertices_and_arcs() {
        let g = AcceptabilityDigraph::from_profile(&samples::no_equilibrium_triangle());
        let dot = g.to_dot();
        assert!(dot.starts_with("digraph acceptability {"));
        assert!(dot.contains("  1 -> 2;"));
        assert!(dot.contains("  3 -> 1;"));
    }

    #[test]
    fn enumeration_matches_naive_on_small_digraphs() {
        // cross-check the pruned DFS against plain subset iteration
        use rand::prelude::*;
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.random_range(1..=6usize);
            let mut arcs = Vec::new();
            for i in 1..=n {
                for j in 1..=n {
                    if i != j && rng.random_bool(0.35) {
                        arcs.push((i, j));
                    }
                }
            }
            let verts: Vec<usize> = (1..=n).collect();
            let g = AcceptabilityDigraph::from_arcs(n, &verts, &arcs).unwrap();
            let fast = enumerate_kernels(&g, None).unwrap().kernels;
            let mut slow = Vec::new();
            for mask in 0..(1u32 << n) {
                let set: Vec<usize> = (1..=n).filter(|&v| mask & (1 << (v - 1)) != 0).collect();
                if is_kernel(&g, &set).unwrap().is_kernel() {
                    slow.push(set);
                }
            }
            slow.sort();
            assert_eq!(fast, slow);
        }
    }
}
