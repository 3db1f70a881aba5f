//! Hardness constructions as executable generators, paired with exhaustive
//! verifiers that confirm each reduction's equivalence on desk-scale
//! instances.
//!
//! Every construction starts from a 3-literal CNF instance. The shared
//! skeleton is a symmetric digraph with one adjacent vertex pair per
//! variable and one vertex per clause, tied to its three literal vertices; a
//! kernel avoiding all clause vertices picks one literal per variable and
//! satisfies every clause. The per-problem gadgets extend this skeleton:
//!
//! * zero-abstention: clause voters abstain unless a clause literal votes;
//! * dissatisfaction: a preference clique of size `k = 3*nc + nv + nv*nc`
//!   makes any equilibrium other than the intended one pay more than `2k`;
//! * voting power: a clique of `nc + 2` voters with private pendants forces
//!   power at least `nc + 3` whenever a clique or clause voter is a guru;
//! * membership (distance-based): a query voter with radius 2 can only be a
//!   guru when the clause voters are all absorbed by literal gurus.

use crate::digraph::{enumerate_kernels, AcceptabilityDigraph, ENUMERATION_CAP};
use crate::distance::{build_db_profile, DistanceModel, ThresholdVector};
use crate::error::Error;
use crate::profile::{
    kernel_to_delegation, measure_abstentions, measure_dissatisfaction, measure_max_voting_power,
    PreferenceProfile, VoterId,
};
use thiserror::Error as ThisError;

/// Cap on variable counts for exhaustive satisfiability checking.
pub const SAT_CAP: usize = 24;

/// A CNF formula with exactly three (possibly repeated) literals per clause.
/// Literals are signed variable indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfInstance {
    num_vars: usize,
    clauses: Vec<[i64; 3]>,
}

impl CnfInstance {
    pub fn new(num_vars: usize, clauses: Vec<[i64; 3]>) -> Result<Self, Error> {
        for clause in &clauses {
            for &lit in clause {
                let var = lit.unsigned_abs() as usize;
                if lit == 0 || var > num_vars {
                    return Err(Error::VoterOutOfRange(var, num_vars));
                }
            }
        }
        Ok(Self { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[[i64; 3]] {
        &self.clauses
    }

    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|clause| {
            clause.iter().any(|&lit| {
                let v = assignment[lit.unsigned_abs() as usize - 1];
                if lit > 0 {
                    v
                } else {
                    !v
                }
            })
        })
    }
}

/// DIMACS parse failure with its source line.
#[derive(Debug, Clone, PartialEq, Eq, ThisError)]
#[error("line {line}: {message}")]
pub struct CnfParseError {
    pub line: usize,
    pub message: String,
}

/// Parses DIMACS CNF text: `c` comment lines, a `p cnf <vars> <clauses>`
/// header, then whitespace-separated signed literals with a mandatory `0`
/// terminating each clause. Clauses must have exactly three literals
/// (repetition allowed).
pub fn parse_cnf(text: &str) -> Result<CnfInstance, CnfParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<[i64; 3]> = Vec::new();
    let mut current: Vec<i64> = Vec::new();
    let mut last_line = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if header.is_none() {
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 4 || fields[0] != "p" || fields[1] != "cnf" {
                return Err(CnfParseError {
                    line: lineno,
                    message: "expected header `p cnf <vars> <clauses>`".into(),
                });
            }
            let vars = fields[2].parse::<usize>().map_err(|_| CnfParseError {
                line: lineno,
                message: format!("bad variable count `{}`", fields[2]),
            })?;
            let count = fields[3].parse::<usize>().map_err(|_| CnfParseError {
                line: lineno,
                message: format!("bad clause count `{}`", fields[3]),
            })?;
            header = Some((vars, count));
            continue;
        }
        let (vars, _) = header.unwrap();
        for tok in line.split_whitespace() {
            let lit = tok.parse::<i64>().map_err(|_| CnfParseError {
                line: lineno,
                message: format!("bad literal `{tok}`"),
            })?;
            if lit == 0 {
                if current.len() != 3 {
                    return Err(CnfParseError {
                        line: lineno,
                        message: format!("clause has {} literals, expected 3", current.len()),
                    });
                }
                clauses.push([current[0], current[1], current[2]]);
                current.clear();
            } else {
                if lit.unsigned_abs() as usize > vars {
                    return Err(CnfParseError {
                        line: lineno,
                        message: format!("variable {} out of range 1..={vars}", lit.unsigned_abs()),
                    });
                }
                current.push(lit);
                if current.len() > 3 {
                    return Err(CnfParseError {
                        line: lineno,
                        message: "clause has more than 3 literals before its terminator".into(),
                    });
                }
            }
        }
    }
    let (vars, declared) = header.ok_or(CnfParseError {
        line: last_line.max(1),
        message: "missing `p cnf` header".into(),
    })?;
    if !current.is_empty() {
        return Err(CnfParseError {
            line: last_line,
            message: "last clause is missing its `0` terminator".into(),
        });
    }
    if clauses.len() != declared {
        return Err(CnfParseError {
            line: last_line,
            message: format!(
                "header declares {declared} clauses, found {}",
                clauses.len()
            ),
        });
    }
    CnfInstance::new(vars, clauses).map_err(|e| CnfParseError {
        line: last_line,
        message: e.to_string(),
    })
}

/// Exhaustive satisfiability check, returning a witness assignment.
pub fn brute_force_sat(inst: &CnfInstance) -> Result<Option<Vec<bool>>, Error> {
    let nv = inst.num_vars;
    if nv > SAT_CAP {
        return Err(Error::TooManyVariables(nv, SAT_CAP));
    }
    for mask in 0u64..(1u64 << nv) {
        let assignment: Vec<bool> = (0..nv).map(|b| mask & (1 << b) != 0).collect();
        if inst.satisfied_by(&assignment) {
            return Ok(Some(assignment));
        }
    }
    Ok(None)
}

/// What a gadget voter stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Literal {
        var: usize,
        positive: bool,
    },
    Clause(usize),
    /// Favourite member of the preference clique in the dissatisfaction gadget.
    CliqueHub,
    CliqueSpoke(usize),
    /// Member of the blocking clique in the voting-power gadget.
    CliqueMember(usize),
    Pendant(usize),
    /// Vertex joining the query voter to the clause vertices.
    Bridge,
    /// Distinguished voter of the membership gadget.
    Query,
}

/// A generated hardness instance: the profile, what each voter encodes, and
/// construction parameters used by the verifier.
#[derive(Debug, Clone)]
pub struct GadgetProfile {
    pub profile: PreferenceProfile,
    pub roles: Vec<Role>,
    /// Distance model behind the profile (membership gadget only).
    pub model: Option<(DistanceModel, ThresholdVector)>,
    /// Distinguished voter (membership gadget only).
    pub query: Option<VoterId>,
    /// Clique size `k` (dissatisfaction gadget only).
    pub clique_size: Option<usize>,
    /// Decision bound of the construction (`2k`, or `nc + 3`).
    pub bound: Option<usize>,
}

fn lit_voter(lit: i64) -> VoterId {
    let var = lit.unsigned_abs() as usize;
    if lit > 0 {
        2 * var - 1
    } else {
        2 * var
    }
}

fn clause_voters(inst: &CnfInstance, j: usize) -> Vec<VoterId> {
    let mut out = Vec::new();
    for &lit in &inst.clauses[j] {
        let v = lit_voter(lit);
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

fn literal_roles(inst: &CnfInstance) -> Vec<Role> {
    (1..=inst.num_vars)
        .flat_map(|i| {
            [
                Role::Literal {
                    var: i,
                    positive: true,
                },
                Role::Literal {
                    var: i,
                    positive: false,
                },
            ]
        })
        .collect()
}

/// Clauses in which a literal voter's own literal occurs, ascending.
fn clauses_of_literal(inst: &CnfInstance, voter: VoterId) -> Vec<VoterId> {
    let base = 2 * inst.num_vars;
    (0..inst.clauses.len())
        .filter(|&j| inst.clauses[j].iter().any(|&lit| lit_voter(lit) == voter))
        .map(|j| base + j + 1)
        .collect()
}

/// Builds a full strict order from acceptance tiers: tier voters in listed
/// order, then the voter herself and abstention (swapped for abstainers),
/// then every remaining voter ascending, with abstention last for
/// non-abstainers.
fn order_from_tiers(n: usize, v: VoterId, abstainer: bool, tiers: &[&[VoterId]]) -> Vec<usize> {
    let mut used = vec![false; n + 1];
    used[v] = true;
    let mut order = Vec::with_capacity(n + 1);
    for tier in tiers {
        for &w in *tier {
            if w != v && !used[w] {
                used[w] = true;
                order.push(w);
            }
        }
    }
    if abstainer {
        order.push(0);
        order.push(v);
        order.extend((1..=n).filter(|&w| !used[w]));
    } else {
        order.push(v);
        order.extend((1..=n).filter(|&w| !used[w]));
        order.push(0);
    }
    order
}

/// The symmetric skeleton digraph of an instance: one adjacent vertex pair
/// per variable, one vertex per clause tied to its literal vertices.
pub fn build_guc(inst: &CnfInstance) -> Result<(AcceptabilityDigraph, Vec<Role>), Error> {
    if inst.num_vars == 0 {
        return Err(Error::Internal("gadgets require at least one variable"));
    }
    let nv = inst.num_vars;
    let nc = inst.clauses.len();
    let n = 2 * nv + nc;
    let vertices: Vec<VoterId> = (1..=n).collect();
    let mut arcs = Vec::new();
    for i in 1..=nv {
        arcs.push((2 * i - 1, 2 * i));
        arcs.push((2 * i, 2 * i - 1));
    }
    for j in 0..nc {
        let cv = 2 * nv + j + 1;
        for lv in clause_voters(inst, j) {
            arcs.push((cv, lv));
            arcs.push((lv, cv));
        }
    }
    let mut roles = literal_roles(inst);
    roles.extend((1..=nc).map(Role::Clause));
    Ok((AcceptabilityDigraph::from_arcs(n, &vertices, &arcs)?, roles))
}

/// Zero-abstention gadget: clause voters abstain unless one of their clause
/// literals votes. Some equilibrium has zero abstentions iff the instance is
/// satisfiable.
pub fn build_minabst_gadget(inst: &CnfInstance) -> Result<GadgetProfile, Error> {
    if inst.num_vars == 0 {
        return Err(Error::Internal("gadgets require at least one variable"));
    }
    let nv = inst.num_vars;
    let nc = inst.clauses.len();
    let n = 2 * nv + nc;
    let mut orders = Vec::with_capacity(n);
    for i in 1..=nv {
        for v in [2 * i - 1, 2 * i] {
            let opposite = if v % 2 == 1 { v + 1 } else { v - 1 };
            let clauses = clauses_of_literal(inst, v);
            orders.push(order_from_tiers(n, v, false, &[&[opposite], &clauses]));
        }
    }
    for j in 0..nc {
        let v = 2 * nv + j + 1;
        let lits = clause_voters(inst, j);
        orders.push(order_from_tiers(n, v, true, &[&lits]));
    }
    let mut roles = literal_roles(inst);
    roles.extend((1..=nc).map(Role::Clause));
    Ok(GadgetProfile {
        profile: PreferenceProfile::from_orders(orders)?,
        roles,
        model: None,
        query: None,
        clique_size: None,
        bound: Some(0),
    })
}

/// Clique size used by the dissatisfaction gadget.
pub fn mindis_clique_size(inst: &CnfInstance) -> usize {
    let nv = inst.num_vars;
    let nc = inst.clauses.len();
    3 * nc + nv + nv * nc
}

/// Dissatisfaction gadget: a `k`-clique of mutually accepting voters whose
/// spokes all favour the hub. Some equilibrium has dissatisfaction at most
/// `2k - 1` iff the instance is satisfiable, and every equilibrium of an
/// unsatisfiable instance exceeds `2k`. `k` may be overridden to reproduce
/// small worked instances; the equivalence is only claimed for the default.
pub fn build_mindis_gadget(
    inst: &CnfInstance,
    k_override: Option<usize>,
) -> Result<GadgetProfile, Error> {
    if inst.num_vars == 0 {
        return Err(Error::Internal("gadgets require at least one variable"));
    }
    let nv = inst.num_vars;
    let nc = inst.clauses.len();
    let k = k_override.unwrap_or_else(|| mindis_clique_size(inst));
    if k == 0 {
        return Err(Error::Internal(
            "dissatisfaction gadget needs a non-empty clique",
        ));
    }
    let n = 2 * nv + nc + k;
    let hub = 2 * nv + nc + 1;
    let spoke = |s: usize| hub + s; // s in 1..=k-1
    let all_spokes: Vec<VoterId> = (1..k).map(spoke).collect();
    let all_clauses: Vec<VoterId> = (1..=nc).map(|j| 2 * nv + j).collect();

    let mut orders = Vec::with_capacity(n);
    for i in 1..=nv {
        for v in [2 * i - 1, 2 * i] {
            let opposite = if v % 2 == 1 { v + 1 } else { v - 1 };
            let clauses = clauses_of_literal(inst, v);
            orders.push(order_from_tiers(n, v, false, &[&[opposite], &clauses]));
        }
    }
    for j in 0..nc {
        let v = 2 * nv + j + 1;
        let lits = clause_voters(inst, j);
        orders.push(order_from_tiers(n, v, false, &[&lits, &all_spokes, &[hub]]));
    }
    orders.push(order_from_tiers(
        n,
        hub,
        false,
        &[&all_spokes, &all_clauses],
    ));
    for s in 1..k {
        // cyclic Latin square over the spokes, hub always first
        let peers: Vec<VoterId> = (2..k).map(|m| spoke((s + m - 2) % (k - 1) + 1)).collect();
        orders.push(order_from_tiers(
            n,
            spoke(s),
            false,
            &[&[hub], &peers, &all_clauses],
        ));
    }

    let mut roles = literal_roles(inst);
    roles.extend((1..=nc).map(Role::Clause));
    roles.push(Role::CliqueHub);
    roles.extend((1..k).map(Role::CliqueSpoke));
    Ok(GadgetProfile {
        profile: PreferenceProfile::from_orders(orders)?,
        roles,
        model: None,
        query: None,
        clique_size: Some(k),
        bound: Some(2 * k),
    })
}

/// Voting-power gadget: a blocking clique of `nc + 2` voters, each with a
/// private pendant supporter, all accepting every clause voter. Some
/// equilibrium keeps every guru's power below `nc + 3` iff the instance is
/// satisfiable.
pub fn build_minmaxvp_gadget(inst: &CnfInstance) -> Result<GadgetProfile, Error> {
    if inst.num_vars == 0 {
        return Err(Error::Internal("gadgets require at least one variable"));
    }
    let nv = inst.num_vars;
    let nc = inst.clauses.len();
    let cs = nc + 2;
    let n = 2 * nv + nc + 2 * cs;
    let member = |i: usize| 2 * nv + nc + i; // i in 1..=cs
    let pendant = |i: usize| 2 * nv + nc + cs + i;
    let all_members: Vec<VoterId> = (1..=cs).map(member).collect();
    let all_clauses: Vec<VoterId> = (1..=nc).map(|j| 2 * nv + j).collect();

    let mut orders = Vec::with_capacity(n);
    for i in 1..=nv {
        for v in [2 * i - 1, 2 * i] {
            let opposite = if v % 2 == 1 { v + 1 } else { v - 1 };
            let clauses = clauses_of_literal(inst, v);
            orders.push(order_from_tiers(n, v, false, &[&[opposite], &clauses]));
        }
    }
    for j in 0..nc {
        let v = 2 * nv + j + 1;
        let lits = clause_voters(inst, j);
        orders.push(order_from_tiers(n, v, false, &[&lits, &all_members]));
    }
    for i in 1..=cs {
        let peers: Vec<VoterId> = (1..=cs).filter(|&x| x != i).map(member).collect();
        orders.push(order_from_tiers(
            n,
            member(i),
            false,
            &[&all_clauses, &peers, &[pendant(i)]],
        ));
    }
    for i in 1..=cs {
        orders.push(order_from_tiers(n, pendant(i), false, &[&[member(i)]]));
    }

    let mut roles = literal_roles(inst);
    roles.extend((1..=nc).map(Role::Clause));
    roles.extend((1..=cs).map(Role::CliqueMember));
    roles.extend((1..=cs).map(Role::Pendant));
    Ok(GadgetProfile {
        profile: PreferenceProfile::from_orders(orders)?,
        roles,
        model: None,
        query: None,
        clique_size: None,
        bound: Some(nc + 3),
    })
}

/// Membership gadget (distance-based): hop distances in the skeleton graph
/// plus a bridge vertex adjacent to the query voter and to every clause
/// vertex; radius 1 everywhere except radius 2 at the query voter. The query
/// voter can be a guru in some equilibrium iff the instance is satisfiable.
pub fn build_memb_gadget(inst: &CnfInstance) -> Result<GadgetProfile, Error> {
    if inst.num_vars == 0 {
        return Err(Error::Internal("gadgets require at least one variable"));
    }
    let nv = inst.num_vars;
    let nc = inst.clauses.len();
    let n = 2 * nv + nc + 2;
    let bridge = 2 * nv + nc + 1;
    let query = 2 * nv + nc + 2;
    let mut edges = Vec::new();
    for i in 1..=nv {
        edges.push((2 * i - 1, 2 * i));
    }
    for j in 0..nc {
        let cv = 2 * nv + j + 1;
        for lv in clause_voters(inst, j) {
            edges.push((cv, lv));
        }
        edges.push((bridge, cv));
    }
    edges.push((bridge, query));
    let model = DistanceModel::from_graph(n, &edges)?;
    let mut at = vec![1.0; n];
    at[query - 1] = 2.0;
    let thresholds = ThresholdVector::new(at)?;
    let profile = build_db_profile(&model, &thresholds, &[])?;
    let mut roles = literal_roles(inst);
    roles.extend((1..=nc).map(Role::Clause));
    roles.push(Role::Bridge);
    roles.push(Role::Query);
    Ok(GadgetProfile {
        profile,
        roles,
        model: Some((model, thresholds)),
        query: Some(query),
        clique_size: None,
        bound: None,
    })
}

/// Which construction to verify.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionKind {
    Guc,
    MinAbst,
    MinDis,
    MinMaxVp,
    Memb,
}

/// Outcome of checking a reduction's equivalence exhaustively.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionReport {
    pub kind: ReductionKind,
    pub satisfiable: bool,
    /// The gadget-side property (kernel avoiding clause vertices, measure
    /// under / at its bound, query membership).
    pub gadget_holds: bool,
    pub agree: bool,
    /// Dissatisfaction only: the same property at the loose bound `2k`.
    pub gadget_holds_loose: Option<bool>,
    pub agree_loose: Option<bool>,
    pub kernels_checked: usize,
}

/// Computes both sides of a reduction: exhaustive satisfiability against the
/// gadget-side kernel property. Refuses gadgets above the enumeration cap.
pub fn verify_reduction(inst: &CnfInstance, kind: ReductionKind) -> Result<ReductionReport, Error> {
    let satisfiable = brute_force_sat(inst)?.is_some();
    let min_over_kernels = |profile: &PreferenceProfile,
                            f: &dyn Fn(&PreferenceProfile, &[VoterId]) -> usize|
     -> Result<(Option<usize>, usize), Error> {
        let g = AcceptabilityDigraph::from_profile(profile);
        let kernels = enumerate_kernels(&g, None)?.kernels;
        let count = kernels.len();
        let min = kernels.iter().map(|k| f(profile, k)).min();
        Ok((min, count))
    };

    let (gadget_holds, gadget_holds_loose, kernels_checked) = match kind {
        ReductionKind::Guc => {
            let (g, roles) = build_guc(inst)?;
            let kernels = enumerate_kernels(&g, None)?.kernels;
            let count = kernels.len();
            let holds = kernels
                .iter()
                .any(|k| k.iter().all(|&v| !matches!(roles[v - 1], Role::Clause(_))));
            (holds, None, count)
        }
        ReductionKind::MinAbst => {
            let gadget = build_minabst_gadget(inst)?;
            let (min, count) = min_over_kernels(&gadget.profile, &|p, k| {
                measure_abstentions(p, &kernel_to_delegation(p, k).unwrap())
            })?;
            (min == Some(0), None, count)
        }
        ReductionKind::MinDis => {
            let gadget = build_mindis_gadget(inst, None)?;
            let bound = gadget.bound.unwrap();
            let (min, count) = min_over_kernels(&gadget.profile, &|p, k| {
                measure_dissatisfaction(p, &kernel_to_delegation(p, k).unwrap())
            })?;
            let tight = min.is_some_and(|m| m < bound);
            let loose = min.is_some_and(|m| m <= bound);
            (tight, Some(loose), count)
        }
        ReductionKind::MinMaxVp => {
            let gadget = build_minmaxvp_gadget(inst)?;
            let bound = gadget.bound.unwrap();
            let (min, count) = min_over_kernels(&gadget.profile, &|p, k| {
                measure_max_voting_power(p, &kernel_to_delegation(p, k).unwrap())
                    .expect("gadget kernels are non-empty")
            })?;
            (min.is_some_and(|m| m < bound), None, count)
        }
        ReductionKind::Memb => {
            let gadget = build_memb_gadget(inst)?;
            let query = gadget.query.unwrap();
            let g = AcceptabilityDigraph::from_profile(&gadget.profile);
            let kernels = enumerate_kernels(&g, None)?.kernels;
            let count = kernels.len();
            (kernels.iter().any(|k| k.contains(&query)), None, count)
        }
    };
    Ok(ReductionReport {
        kind,
        satisfiable,
        gadget_holds,
        agree: satisfiable == gadget_holds,
        gadget_holds_loose,
        agree_loose: gadget_holds_loose.map(|l| satisfiable == l),
        kernels_checked,
    })
}

/// Number of voters a gadget of the given kind would have.
pub fn gadget_size(inst: &CnfInstance, kind: ReductionKind) -> usize {
    let nv = inst.num_vars;
    let nc = inst.clauses.len();
    match kind {
        ReductionKind::Guc | ReductionKind::MinAbst => 2 * nv + nc,
        ReductionKind::MinDis => 2 * nv + nc + mindis_clique_size(inst),
        ReductionKind::MinMaxVp => 2 * nv + 3 * nc + 4,
        ReductionKind::Memb => 2 * nv + nc + 2,
    }
}

/// Guard used by callers before verifying: gadget must fit the enumeration
/// cap.
pub fn reduction_fits(inst: &CnfInstance, kind: ReductionKind) -> bool {
    gadget_size(inst, kind) <= ENUMERATION_CAP
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;
    use crate::symmetric::check_symmetric;

    #[test]
    fn parse_demo_instance() {
        let text = "c demo\np cnf 5 3\n1 2 -3 0\n-2 -4 1 0\n-1 3 5 0\n";
        let inst = parse_cnf(text).unwrap();
        assert_eq!(inst, samples::demo_cnf());
    }

    #[test]
    fn parse_accepts_repeated_literals() {
        let inst = parse_cnf("p cnf 1 1\n1 1 1 0\n").unwrap();
        assert_eq!(inst.clauses(), [[1, 1, 1]]);
    }

    #[test]
    fn parse_handles_free_clause_layout() {
        // clauses may span lines or share one
        let inst = parse_cnf("p cnf 3 2\n1 2\n-3 0 -1 2 3 0\n").unwrap();
        assert_eq!(inst.clauses(), [[1, 2, -3], [-1, 2, 3]]);
    }

    #[test]
    fn parse_rejects_wrong_arity() {
        let err = parse_cnf("p cnf 2 1\n1 2 0\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.message.contains("expected 3"));
    }

    #[test]
    fn parse_rejects_out_of_range_vars() {
        let err = parse_cnf("p cnf 2 1\n1 2 3 0\n").unwrap_err();
        assert_eq!(err.line, 2);
    }

    #[test]
    fn parse_rejects_missing_terminator() {
        assert!(parse_cnf("p cnf 2 1\n1 2 2\n").is_err());
    }

    #[test]
    fn parse_rejects_clause_count_mismatch() {
        assert!(parse_cnf("p cnf 2 2\n1 2 2 0\n").is_err());
    }

    #[test]
    fn demo_instance_is_satisfiable() {
        let witness = brute_force_sat(&samples::demo_cnf()).unwrap().unwrap();
        assert!(samples::demo_cnf().satisfied_by(&witness));
    }

    #[test]
    fn contradiction_is_unsatisfiable() {
        let inst = CnfInstance::new(1, vec![[1, 1, 1], [-1, -1, -1]]).unwrap();
        assert!(brute_force_sat(&inst).unwrap().is_none());
    }

    #[test]
    fn empty_clause_set_is_satisfiable() {
        let inst = CnfInstance::new(1, vec![]).unwrap();
        assert!(brute_force_sat(&inst).unwrap().is_some());
    }

    #[test]
    fn skeleton_digraph_of_demo_instance() {
        let (g, roles) = build_guc(&samples::demo_cnf()).unwrap();
        assert_eq!(g.vertex_count(), 13);
        assert_eq!(roles.len(), 13);
        // variable pairs
        for i in 1..=5usize {
            assert!(g.adjacent(2 * i - 1, 2 * i));
        }
        // clause 1 = (x1 or x2 or !x3) -> voters 1, 3, 6
        for lv in [1, 3, 6] {
            assert!(g.adjacent(11, lv));
        }
        for lv in [4, 8, 1] {
            assert!(g.adjacent(12, lv));
        }
        for lv in [2, 5, 9] {
            assert!(g.adjacent(13, lv));
        }
        assert_eq!(g.arcs().len(), 2 * (5 + 9));
    }

    #[test]
    fn one_variable_no_clause_is_a_single_pair() {
        let inst = CnfInstance::new(1, vec![]).unwrap();
        let (g, _) = build_guc(&inst).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert!(g.adjacent(1, 2));
    }

    #[test]
    fn symmetric_gadgets_pass_the_class_check() {
        let inst = CnfInstance::new(2, vec![[1, -2, 2]]).unwrap();
        for gadget in [
            build_minabst_gadget(&inst).unwrap(),
            build_mindis_gadget(&inst, None).unwrap(),
            build_minmaxvp_gadget(&inst).unwrap(),
        ] {
            assert!(check_symmetric(&gadget.profile).is_symmetric());
        }
    }

    #[test]
    fn gadget_sizes_match_the_constructions() {
        let inst = samples::demo_cnf();
        assert_eq!(gadget_size(&inst, ReductionKind::Guc), 13);
        assert_eq!(gadget_size(&inst, ReductionKind::MinAbst), 13);
        assert_eq!(mindis_clique_size(&inst), 29);
        assert_eq!(gadget_size(&inst, ReductionKind::MinDis), 13 + 29);
        assert_eq!(gadget_size(&inst, ReductionKind::MinMaxVp), 10 + 9 + 4);
        assert_eq!(gadget_size(&inst, ReductionKind::Memb), 15);
    }

    #[test]
    fn mindis_worked_instance_with_small_clique() {
        // k forced to 4 to reproduce the worked preference lists
        let gadget = build_mindis_gadget(&samples::demo_cnf(), Some(4)).unwrap();
        let p = &gadget.profile;
        // hub and spokes: voters 14..=17
        assert_eq!(&p.order(14)[..7], [15, 16, 17, 11, 12, 13, 14]);
        assert_eq!(&p.order(15)[..7], [14, 16, 17, 11, 12, 13, 15]);
        assert_eq!(&p.order(16)[..7], [14, 17, 15, 11, 12, 13, 16]);
        assert_eq!(&p.order(17)[..7], [14, 15, 16, 11, 12, 13, 17]);
        // clause voters keep their literals in written order
        assert_eq!(&p.order(11)[..8], [1, 3, 6, 15, 16, 17, 14, 11]);
        assert_eq!(&p.order(12)[..8], [4, 8, 1, 15, 16, 17, 14, 12]);
        assert_eq!(&p.order(13)[..8], [2, 5, 9, 15, 16, 17, 14, 13]);
        // literal voters: opposite literal, then their clauses, then voting
        assert_eq!(&p.order(1)[..4], [2, 11, 12, 1]);
        assert_eq!(&p.order(7)[..2], [8, 7]);
        assert_eq!(&p.order(10)[..2], [9, 10]);
    }

    #[test]
    fn minabst_gadget_clause_voters_abstain() {
        let gadget = build_minabst_gadget(&samples::demo_cnf()).unwrap();
        for j in 11..=13 {
            assert!(gadget.profile.is_abstainer(j));
        }
        for v in 1..=10 {
            assert!(!gadget.profile.is_abstainer(v));
        }
    }

    #[test]
    fn memb_gadget_query_reaches_bridge_and_clauses() {
        let gadget = build_memb_gadget(&samples::demo_cnf()).unwrap();
        let p = &gadget.profile;
        let mut acc = p.acceptable(15);
        acc.sort_unstable();
        assert_eq!(acc, [11, 12, 13, 14]);
        assert_eq!(gadget.query, Some(15));
    }

    #[test]
    fn verify_guc_on_demo_instance() {
        let report = verify_reduction(&samples::demo_cnf(), ReductionKind::Guc).unwrap();
        assert!(report.satisfiable);
        assert!(report.gadget_holds);
        assert!(report.agree);
    }

    #[test]
    fn verify_minabst_and_memb_on_demo_instance() {
        let inst = samples::demo_cnf();
        let r = verify_reduction(&inst, ReductionKind::MinAbst).unwrap();
        assert!(r.satisfiable && r.gadget_holds && r.agree);
        let r = verify_reduction(&inst, ReductionKind::Memb).unwrap();
        assert!(r.satisfiable && r.gadget_holds && r.agree);
    }

    #[test]
    fn verify_refuses_oversize_gadgets() {
        // the demo voting-power gadget has 23 voters, one above the cap
        let inst = samples::demo_cnf();
        assert!(!reduction_fits(&inst, ReductionKind::MinMaxVp));
        assert!(matches!(
            verify_reduction(&inst, ReductionKind::MinMaxVp),
            Err(Error::TooManyVertices { .. })
        ));
    }

    #[test]
    fn verify_minabst_on_tiny_instances() {
        let sat = CnfInstance::new(1, vec![[1, 1, 1]]).unwrap();
        let unsat = CnfInstance::new(1, vec![[1, 1, 1], [-1, -1, -1]]).unwrap();
        let r = verify_reduction(&sat, ReductionKind::MinAbst).unwrap();
        assert!(r.agree && r.satisfiable);
        let r = verify_reduction(&unsat, ReductionKind::MinAbst).unwrap();
        assert!(r.agree && !r.satisfiable);
    }

    #[test]
    fn verify_mindis_on_tiny_instances() {
        let sat = CnfInstance::new(1, vec![[1, 1, 1]]).unwrap();
        let r = verify_reduction(&sat, ReductionKind::MinDis).unwrap();
        assert!(r.agree && r.agree_loose.unwrap());
        let unsat = CnfInstance::new(1, vec![[1, 1, 1], [-1, -1, -1]]).unwrap();
        let r = verify_reduction(&unsat, ReductionKind::MinDis).unwrap();
        assert!(r.agree && r.agree_loose.unwrap());
    }

    #[test]
    fn verify_minmaxvp_on_tiny_instances() {
        let sat = CnfInstance::new(1, vec![[1, 1, 1]]).unwrap();
        let unsat = CnfInstance::new(1, vec![[1, 1, 1], [-1, -1, -1]]).unwrap();
        assert!(
            verify_reduction(&sat, ReductionKind::MinMaxVp)
                .unwrap()
                .agree
        );
        assert!(
            verify_reduction(&unsat, ReductionKind::MinMaxVp)
                .unwrap()
                .agree
        );
    }

    #[test]
    fn verify_memb_on_tiny_instances() {
        let sat = CnfInstance::new(1, vec![[1, 1, 1]]).unwrap();
        let unsat = CnfInstance::new(1, vec![[1, 1, 1], [-1, -1, -1]]).unwrap();
        assert!(verify_reduction(&sat, ReductionKind::Memb).unwrap().agree);
        assert!(verify_reduction(&unsat, ReductionKind::Memb).unwrap().agree);
    }
}
