//! Command implementations behind the `delga` binary. Each command returns
//! its process exit code and writes machine-readable output to the given
//! writer.
//!
//! Exit code contract: 0 success / positive answer, 1 negative answer
//! (unstable, no equilibrium, not a member, cycle), 2 input or class error,
//! 3 size-guard refusal of an exhaustive search, 4 budget exhausted
//! (dynamics only).

use crate::format::{
    parse_delegation, parse_model, print_graph_model, print_points_model, profile_digest, ClassTag,
    ModelDocument, ProfileDocument,
};
use delga_core::digraph::{enumerate_kernels_capped, AcceptabilityDigraph};
use delga_core::distance::{solve_equilibrium_db, DistanceSource};
use delga_core::dynamics::{
    self, default_brd_budget, run_dynamics, MoveRule, TokenFunction, Verdict,
};
use delga_core::gadgets::{
    self, build_guc, build_memb_gadget, build_minabst_gadget, build_mindis_gadget,
    build_minmaxvp_gadget, GadgetProfile, Role,
};
use delga_core::generate;
use delga_core::profile::{
    is_nash_stable, kernel_to_delegation, measure_abstentions, measure_dissatisfaction,
    measure_max_voting_power, DelegationFunction, Equilibrium, PreferenceProfile, Stability,
};
use delga_core::single_peaked::{
    memb_sp, minabst_sp, mindis_sp, minmaxvp_sp, solve_equilibrium_sp, AxisProfile, Membership,
};
use delga_core::symmetric::{check_symmetric, memb_sym, solve_equilibrium_sym};
use delga_core::{check_single_peaked, is_kernel};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::io::Write;
use std::path::{Path, PathBuf};

/// status, optional witness state, optional optimization value -- or an
/// exit code with a message.
type SolveOutcome = Result<(String, Option<Equilibrium>, Option<usize>), (i32, String)>;

pub mod exit {
    pub const OK: i32 = 0;
    pub const NEGATIVE: i32 = 1;
    pub const INPUT: i32 = 2;
    pub const REFUSED: i32 = 3;
    pub const BUDGET: i32 = 4;
}

/// Machine-readable result emitted by `check`, `solve` and `enumerate`.
#[derive(Debug, Serialize)]
pub struct ResultDocument {
    pub problem: String,
    pub class: String,
    pub profile_digest: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delegation: Option<Vec<[usize; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gurus: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub diagnostics: Vec<String>,
}

impl ResultDocument {
    fn new(problem: &str, class: &str, digest: &str, status: &str) -> Self {
        Self {
            problem: problem.into(),
            class: class.into(),
            profile_digest: digest.into(),
            status: status.into(),
            value: None,
            delegation: None,
            gurus: None,
            diagnostics: Vec::new(),
        }
    }

    fn with_equilibrium(mut self, eq: &Equilibrium) -> Self {
        self.delegation = Some(
            (1..=eq.delegation.n())
                .map(|v| [v, eq.delegation.target(v)])
                .collect(),
        );
        self.gurus = Some(eq.gurus.clone());
        self
    }

    fn emit(&self, out: &mut dyn Write) {
        let json = serde_json::to_string_pretty(self).expect("result serializes");
        let _ = writeln!(out, "{json}");
    }
}

fn fail(out: &mut dyn Write, code: i32, problem: &str, message: String) -> i32 {
    let mut doc = ResultDocument::new(problem, "-", "-", "error");
    doc.diagnostics.push(message);
    doc.emit(out);
    code
}

fn read_file(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

/// Loads a profile document and completes it. The single-peaked tail rule is
/// used when the file is tagged `sp` or the caller asks for an sp reading.
fn load_profile(
    path: &Path,
    force_sp_tail: bool,
) -> Result<(ProfileDocument, PreferenceProfile), String> {
    let text = read_file(path)?;
    let doc = ProfileDocument::parse(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let sp_tail = force_sp_tail || doc.classes.contains(&ClassTag::Sp);
    let profile = doc
        .complete(sp_tail)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    Ok((doc, profile))
}

/// `check`: stability verdict for a delegation file against a profile.
pub fn check(profile_path: &Path, delegation_path: &Path, out: &mut dyn Write) -> i32 {
    let (_, profile) = match load_profile(profile_path, false) {
        Ok(v) => v,
        Err(e) => return fail(out, exit::INPUT, "check", e),
    };
    let delegation = match read_file(delegation_path).and_then(|text| {
        parse_delegation(&text).map_err(|e| format!("{}: {e}", delegation_path.display()))
    }) {
        Ok(d) => d,
        Err(e) => return fail(out, exit::INPUT, "check", e),
    };
    if delegation.n() != profile.n() {
        return fail(
            out,
            exit::INPUT,
            "check",
            format!(
                "delegation has {} voters, profile has {}",
                delegation.n(),
                profile.n()
            ),
        );
    }
    let digest = profile_digest(&profile);
    match is_nash_stable(&profile, &delegation) {
        Stability::Stable => {
            let mut doc = ResultDocument::new("check", "-", &digest, "stable");
            doc.delegation = Some(
                (1..=profile.n())
                    .map(|v| [v, delegation.target(v)])
                    .collect(),
            );
            doc.gurus = Some(delegation.resolve().gurus().to_vec());
            doc.emit(out);
            exit::OK
        }
        Stability::Unstable { voter, better } => {
            let mut doc = ResultDocument::new("check", "-", &digest, "unstable");
            doc.diagnostics.push(format!(
                "voter {voter} strictly prefers outcome {better} over her current guru"
            ));
            doc.emit(out);
            exit::NEGATIVE
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveArgs {
    pub profile: PathBuf,
    pub class: String,
    pub problem: String,
    pub model: Option<PathBuf>,
    pub assume_completion: bool,
    pub cap: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Problem {
    Eq,
    Memb(usize),
    MinDis,
    MinMaxVp,
    MinAbst,
}

impl Problem {
    fn parse(s: &str) -> Result<Self, String> {
        match s {
            "eq" => Ok(Problem::Eq),
            "mindis" => Ok(Problem::MinDis),
            "minmaxvp" => Ok(Problem::MinMaxVp),
            "minabst" => Ok(Problem::MinAbst),
            other => match other.strip_prefix("memb:") {
                Some(id) => id
                    .parse::<usize>()
                    .map(Problem::Memb)
                    .map_err(|_| format!("bad voter id in `{other}`")),
                None => Err(format!(
                    "unknown problem `{other}` (expected eq, memb:<i>, mindis, minmaxvp, minabst)"
                )),
            },
        }
    }

    fn name(&self) -> String {
        match self {
            Problem::Eq => "eq".into(),
            Problem::Memb(i) => format!("memb:{i}"),
            Problem::MinDis => "mindis".into(),
            Problem::MinMaxVp => "minmaxvp".into(),
            Problem::MinAbst => "minabst".into(),
        }
    }
}

enum ResolvedClass {
    Sp(AxisProfile),
    Sym(PreferenceProfile),
    Db(PreferenceProfile, ModelDocument),
    Generic(PreferenceProfile),
}

impl ResolvedClass {
    fn name(&self) -> &'static str {
        match self {
            ResolvedClass::Sp(_) => "sp",
            ResolvedClass::Sym(_) => "sym",
            ResolvedClass::Db(_, _) => "db",
            ResolvedClass::Generic(_) => "generic",
        }
    }

    fn profile(&self) -> &PreferenceProfile {
        match self {
            ResolvedClass::Sp(a) => a.profile(),
            ResolvedClass::Sym(p) | ResolvedClass::Generic(p) => p,
            ResolvedClass::Db(p, _) => p,
        }
    }
}

/// Checks that a profile's acceptance matches the distance rule of a model.
fn db_matches(profile: &PreferenceProfile, doc: &ModelDocument) -> Result<(), String> {
    if doc.model.n() != profile.n() {
        return Err(format!(
            "model has {} voters, profile has {}",
            doc.model.n(),
            profile.n()
        ));
    }
    for i in 1..=profile.n() {
        for j in 1..=profile.n() {
            if i != j {
                let within = doc.model.dist(i, j) <= doc.thresholds.get(i);
                if profile.accepts(i, j) != within {
                    return Err(format!(
                        "profile and model disagree on whether {i} accepts {j}"
                    ));
                }
            }
        }
    }
    Ok(())
}

fn resolve_class(
    doc: &ProfileDocument,
    class: &str,
    model: Option<&ModelDocument>,
) -> Result<ResolvedClass, String> {
    let attempt_sp = |strict: bool| -> Result<Option<ResolvedClass>, String> {
        let p = doc.complete(true).map_err(|e| e.to_string())?;
        match AxisProfile::new(p) {
            Ok(axis) => Ok(Some(ResolvedClass::Sp(axis))),
            Err(e) if strict => Err(format!("profile is not single-peaked: {e}")),
            Err(_) => Ok(None),
        }
    };
    let attempt_sym = |strict: bool| -> Result<Option<ResolvedClass>, String> {
        let p = doc.complete(false).map_err(|e| e.to_string())?;
        let report = check_symmetric(&p);
        if report.is_symmetric() {
            Ok(Some(ResolvedClass::Sym(p)))
        } else if strict {
            let (i, j) = report.witness.unwrap();
            Err(format!(
                "profile is not symmetric: {i} accepts {j} but not conversely"
            ))
        } else {
            Ok(None)
        }
    };
    let attempt_db = |strict: bool| -> Result<Option<ResolvedClass>, String> {
        let Some(doc_model) = model else {
            return if strict {
                Err("class db needs a sidecar model file (--model)".into())
            } else {
                Ok(None)
            };
        };
        let p = doc.complete(false).map_err(|e| e.to_string())?;
        match db_matches(&p, doc_model) {
            Ok(()) => Ok(Some(ResolvedClass::Db(p, doc_model.clone()))),
            Err(e) if strict => Err(e),
            Err(_) => Ok(None),
        }
    };
    match class {
        "sp" => Ok(attempt_sp(true)?.unwrap()),
        "sym" => Ok(attempt_sym(true)?.unwrap()),
        "db" => Ok(attempt_db(true)?.unwrap()),
        "auto" => {
            if let Some(r) = attempt_sp(false)? {
                return Ok(r);
            }
            if let Some(r) = attempt_sym(false)? {
                return Ok(r);
            }
            if let Some(r) = attempt_db(false)? {
                return Ok(r);
            }
            Ok(ResolvedClass::Generic(
                doc.complete(false).map_err(|e| e.to_string())?,
            ))
        }
        other => Err(format!(
            "unknown class `{other}` (expected auto, sp, sym, db)"
        )),
    }
}

/// Exhaustive fallback for problems that are hard on the resolved class.
fn solve_exhaustively(profile: &PreferenceProfile, problem: Problem, cap: usize) -> SolveOutcome {
    let g = AcceptabilityDigraph::from_profile(profile);
    let kernels = enumerate_kernels_capped(&g, None, cap).map_err(|e| {
        (
            exit::REFUSED,
            format!(
                "{e}; no polynomial algorithm applies to this class/problem pair, \
                 raise --cap to force the exhaustive search"
            ),
        )
    })?;
    let kernels = kernels.kernels;
    let usable: Vec<&Vec<usize>> = kernels.iter().filter(|k| !k.is_empty()).collect();
    let degenerate_only = !kernels.is_empty() && usable.is_empty();
    match problem {
        Problem::Eq => match kernels.first() {
            Some(k) if !k.is_empty() || profile.non_abstainers().is_empty() => {
                let eq = Equilibrium {
                    delegation: kernel_to_delegation(profile, k).unwrap(),
                    gurus: k.clone(),
                    degenerate: k.is_empty(),
                };
                let status = if eq.degenerate {
                    "degenerate"
                } else {
                    "equilibrium"
                };
                Ok((status.into(), Some(eq), None))
            }
            _ => Ok(("no-equilibrium".into(), None, None)),
        },
        Problem::Memb(i) => {
            if i == 0 || i > profile.n() {
                return Err((exit::INPUT, format!("voter {i} out of range")));
            }
            match kernels.iter().find(|k| k.contains(&i)) {
                Some(k) => {
                    let eq = Equilibrium {
                        delegation: kernel_to_delegation(profile, k).unwrap(),
                        gurus: k.clone(),
                        degenerate: false,
                    };
                    Ok(("member".into(), Some(eq), None))
                }
                None => Ok(("not-member".into(), None, None)),
            }
        }
        Problem::MinDis | Problem::MinMaxVp | Problem::MinAbst => {
            if kernels.is_empty() {
                return Ok(("no-equilibrium".into(), None, None));
            }
            if degenerate_only {
                let eq = Equilibrium {
                    delegation: kernel_to_delegation(profile, &[]).unwrap(),
                    gurus: vec![],
                    degenerate: true,
                };
                let value = match problem {
                    Problem::MinDis => measure_dissatisfaction(profile, &eq.delegation),
                    Problem::MinAbst => profile.n(),
                    _ => 0,
                };
                return Ok(("degenerate".into(), Some(eq), Some(value)));
            }
            let evaluate = |k: &Vec<usize>| -> usize {
                let d = kernel_to_delegation(profile, k).unwrap();
                match problem {
                    Problem::MinDis => measure_dissatisfaction(profile, &d),
                    Problem::MinMaxVp => measure_max_voting_power(profile, &d).unwrap_or(0),
                    Problem::MinAbst => measure_abstentions(profile, &d),
                    _ => unreachable!(),
                }
            };
            let (best_kernel, best) = kernels
                .iter()
                .map(|k| (k, evaluate(k)))
                .min_by_key(|&(k, v)| (v, k.clone()))
                .unwrap();
            let eq = Equilibrium {
                delegation: kernel_to_delegation(profile, best_kernel).unwrap(),
                gurus: best_kernel.clone(),
                degenerate: false,
            };
            Ok(("optimal".into(), Some(eq), Some(best)))
        }
    }
}

/// `solve`: dispatches a problem to the polynomial solver of the resolved
/// class, falling back to capped exhaustive search on hard cells.
pub fn solve(args: &SolveArgs, out: &mut dyn Write) -> i32 {
    let problem = match Problem::parse(&args.problem) {
        Ok(p) => p,
        Err(e) => return fail(out, exit::INPUT, &args.problem, e),
    };
    let problem_name = problem.name();
    let text = match read_file(&args.profile) {
        Ok(t) => t,
        Err(e) => return fail(out, exit::INPUT, &problem_name, e),
    };
    let doc = match ProfileDocument::parse(&text) {
        Ok(d) => d,
        Err(e) => {
            return fail(
                out,
                exit::INPUT,
                &problem_name,
                format!("{}: {e}", args.profile.display()),
            )
        }
    };
    let model = match &args.model {
        Some(path) => match read_file(path)
            .and_then(|t| parse_model(&t).map_err(|e| format!("{}: {e}", path.display())))
        {
            Ok(m) => Some(m),
            Err(e) => return fail(out, exit::INPUT, &problem_name, e),
        },
        None => None,
    };
    if doc.is_partial() && problem == Problem::MinDis && !args.assume_completion {
        return fail(
            out,
            exit::INPUT,
            &problem_name,
            "dissatisfaction ranks are undefined on partial profiles; \
             pass --assume-completion to use the documented completion rule"
                .into(),
        );
    }
    let resolved = match resolve_class(&doc, &args.class, model.as_ref()) {
        Ok(r) => r,
        Err(e) => return fail(out, exit::INPUT, &problem_name, e),
    };
    let digest = profile_digest(resolved.profile());
    let class_name = resolved.name();

    let outcome: SolveOutcome = match &resolved {
        ResolvedClass::Sp(axis) => match problem {
            Problem::Eq => {
                let eq = solve_equilibrium_sp(axis);
                let status = if eq.degenerate {
                    "degenerate"
                } else {
                    "equilibrium"
                };
                Ok((status.into(), Some(eq), None))
            }
            Problem::Memb(i) => {
                if i == 0 || i > axis.profile().n() {
                    Err((exit::INPUT, format!("voter {i} out of range")))
                } else {
                    match memb_sp(axis, i).unwrap() {
                        Membership::Guru(eq) => Ok(("member".into(), Some(eq), None)),
                        Membership::NotGuru => Ok(("not-member".into(), None, None)),
                        Membership::Abstainer => Ok(("not-member-abstainer".into(), None, None)),
                    }
                }
            }
            Problem::MinDis => {
                let (eq, value) = mindis_sp(axis);
                let status = if eq.degenerate {
                    "degenerate"
                } else {
                    "optimal"
                };
                Ok((status.into(), Some(eq), Some(value)))
            }
            Problem::MinMaxVp => {
                let (eq, value) = minmaxvp_sp(axis);
                let status = if eq.degenerate {
                    "degenerate"
                } else {
                    "optimal"
                };
                Ok((status.into(), Some(eq), Some(value)))
            }
            Problem::MinAbst => {
                let (eq, value) = minabst_sp(axis);
                let status = if eq.degenerate {
                    "degenerate"
                } else {
                    "optimal"
                };
                Ok((status.into(), Some(eq), Some(value)))
            }
        },
        ResolvedClass::Sym(p) => match problem {
            Problem::Eq => match solve_equilibrium_sym(p) {
                Ok(eq) => {
                    let status = if eq.degenerate {
                        "degenerate"
                    } else {
                        "equilibrium"
                    };
                    Ok((status.into(), Some(eq), None))
                }
                Err(e) => Err((exit::INPUT, e.to_string())),
            },
            Problem::Memb(i) => match memb_sym(p, i) {
                Ok(eq) => Ok(("member".into(), Some(eq), None)),
                Err(delga_core::Error::AbstainerGuru(_)) => {
                    Ok(("not-member-abstainer".into(), None, None))
                }
                Err(e) => Err((exit::INPUT, e.to_string())),
            },
            _ => solve_exhaustively(p, problem, args.cap),
        },
        ResolvedClass::Db(p, doc_model) => match problem {
            Problem::Eq => match solve_equilibrium_db(p, &doc_model.thresholds) {
                Ok(eq) => {
                    let status = if eq.degenerate {
                        "degenerate"
                    } else {
                        "equilibrium"
                    };
                    Ok((status.into(), Some(eq), None))
                }
                Err(e) => Err((exit::INPUT, e.to_string())),
            },
            _ => solve_exhaustively(p, problem, args.cap),
        },
        ResolvedClass::Generic(p) => solve_exhaustively(p, problem, args.cap),
    };

    match outcome {
        Ok((status, eq, value)) => {
            let mut doc_out = ResultDocument::new(&problem_name, class_name, &digest, &status);
            if let Some(eq) = &eq {
                doc_out = doc_out.with_equilibrium(eq);
            }
            doc_out.value = value;
            if let Some(eq) = &eq {
                debug_assert!(
                    eq.degenerate || is_nash_stable(resolved.profile(), &eq.delegation).is_stable()
                );
            }
            let code = if status.starts_with("not-member") || status == "no-equilibrium" {
                exit::NEGATIVE
            } else {
                exit::OK
            };
            doc_out.emit(out);
            code
        }
        Err((code, message)) => fail(out, code, &problem_name, message),
    }
}

#[derive(Debug, Clone)]
pub struct DynamicsArgs {
    pub profile: PathBuf,
    pub rule: String,
    pub script: Option<PathBuf>,
    pub token: String,
    pub start: Option<String>,
    pub budget: Option<usize>,
    pub seed: u64,
    pub trace_out: Option<PathBuf>,
}

/// `dynamics`: runs a token-scheduled dynamics and emits the trace.
pub fn dynamics_cmd(args: &DynamicsArgs, out: &mut dyn Write) -> i32 {
    let (_, profile) = match load_profile(&args.profile, false) {
        Ok(v) => v,
        Err(e) => return fail(out, exit::INPUT, "dynamics", e),
    };
    let n = profile.n();

    let d0 = match args.start.as_deref() {
        None | Some("vote") => DelegationFunction::all_voting(n),
        Some("abstain") => DelegationFunction::all_abstaining(n),
        Some(path) => {
            match read_file(Path::new(path))
                .and_then(|t| parse_delegation(&t).map_err(|e| format!("{path}: {e}")))
            {
                Ok(d) if d.n() == n => d,
                Ok(d) => {
                    return fail(
                        out,
                        exit::INPUT,
                        "dynamics",
                        format!("start state has {} voters, profile has {n}", d.n()),
                    )
                }
                Err(e) => return fail(out, exit::INPUT, "dynamics", e),
            }
        }
    };

    let (token, rule, default_budget) = match args.rule.as_str() {
        "brd" => {
            let token = match args.token.as_str() {
                "roundrobin" => TokenFunction::RoundRobin,
                "random" => {
                    use rand::seq::SliceRandom;
                    let mut sigma: Vec<usize> = (1..=n).collect();
                    sigma.shuffle(&mut ChaCha8Rng::seed_from_u64(args.seed));
                    TokenFunction::Permutation(sigma)
                }
                other => match other.strip_prefix("perm:") {
                    Some(list) => {
                        let ids: Result<Vec<usize>, _> =
                            list.split(',').map(|f| f.trim().parse::<usize>()).collect();
                        match ids {
                            Ok(ids) => TokenFunction::Permutation(ids),
                            Err(_) => {
                                return fail(
                                    out,
                                    exit::INPUT,
                                    "dynamics",
                                    format!("bad token spec `{other}`"),
                                )
                            }
                        }
                    }
                    None => {
                        return fail(
                            out,
                            exit::INPUT,
                            "dynamics",
                            format!("bad token spec `{other}` (roundrobin, random, perm:...)"),
                        )
                    }
                },
            };
            if let Err(e) = token.validate(n) {
                return fail(out, exit::INPUT, "dynamics", e.to_string());
            }
            (token, MoveRule::BestResponse, default_brd_budget(n))
        }
        rule @ ("ird-script" | "move-script") => {
            let Some(script_path) = &args.script else {
                return fail(
                    out,
                    exit::INPUT,
                    "dynamics",
                    "scripted rules need --script".into(),
                );
            };
            let text = match read_file(script_path) {
                Ok(t) => t,
                Err(e) => return fail(out, exit::INPUT, "dynamics", e),
            };
            let moves = match dynamics::parse_script(&text) {
                Ok(m) => m,
                Err(e) => {
                    return fail(
                        out,
                        exit::INPUT,
                        "dynamics",
                        format!("{}: {e}", script_path.display()),
                    )
                }
            };
            let token = TokenFunction::Script(moves.iter().map(|&(m, _)| m).collect());
            if let Err(e) = token.validate(n) {
                return fail(out, exit::INPUT, "dynamics", e.to_string());
            }
            let targets: Vec<usize> = moves.iter().map(|&(_, t)| t).collect();
            let len = targets.len();
            let rule = if rule == "ird-script" {
                MoveRule::ImprovedScript(targets)
            } else {
                MoveRule::MoveScript(targets)
            };
            (token, rule, len)
        }
        other => {
            return fail(
                out,
                exit::INPUT,
                "dynamics",
                format!("unknown rule `{other}` (brd, ird-script, move-script)"),
            )
        }
    };

    let budget = args.budget.unwrap_or(default_budget);
    let trace = match run_dynamics(&profile, d0, &token, &rule, budget) {
        Ok(t) => t,
        Err(e) => return fail(out, exit::INPUT, "dynamics", e.to_string()),
    };
    let text = dynamics::format_trace(&profile, &trace);
    if let Some(path) = &args.trace_out {
        if let Err(e) = std::fs::write(path, &text) {
            return fail(
                out,
                exit::INPUT,
                "dynamics",
                format!("cannot write trace: {e}"),
            );
        }
    } else {
        let _ = out.write_all(text.as_bytes());
    }
    let (verdict_line, code) = match trace.verdict {
        Verdict::Converged { at_step, round } => (
            format!("verdict: converged step={at_step} round={round}"),
            exit::OK,
        ),
        Verdict::Cycle { entry, period } => (
            format!("verdict: cycle entry={entry} period={period}"),
            exit::NEGATIVE,
        ),
        Verdict::BudgetExhausted => ("verdict: budget-exhausted".to_string(), exit::BUDGET),
    };
    let _ = writeln!(out, "{verdict_line}");
    code
}

#[derive(Debug, Clone)]
pub struct GenArgs {
    pub kind: String,
    pub n: Option<usize>,
    pub dim: usize,
    pub seed: u64,
    pub accept_prob: f64,
    pub abstain_prob: f64,
    pub cnf: Option<PathBuf>,
    pub clique: Option<usize>,
    pub points_file: Option<PathBuf>,
    pub out: Option<PathBuf>,
}

fn role_comment_block(roles: &[Role]) -> String {
    let mut s = String::new();
    for (idx, role) in roles.iter().enumerate() {
        let v = idx + 1;
        let desc = match role {
            Role::Literal { var, positive } => {
                format!(
                    "literal x{var} ({})",
                    if *positive { "positive" } else { "negated" }
                )
            }
            Role::Clause(j) => format!("clause {j}"),
            Role::CliqueHub => "clique hub".into(),
            Role::CliqueSpoke(i) => format!("clique spoke {i}"),
            Role::CliqueMember(i) => format!("clique member {i}"),
            Role::Pendant(i) => format!("pendant {i}"),
            Role::Bridge => "bridge".into(),
            Role::Query => "query".into(),
        };
        s.push_str(&format!("# role {v}: {desc}\n"));
    }
    s
}

fn write_output(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<(), String> {
    match path {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| format!("cannot write {}: {e}", p.display()))
        }
        None => {
            let _ = out.write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn model_sidecar_path(out: &Path) -> PathBuf {
    let mut os = out.as_os_str().to_owned();
    os.push(".model");
    PathBuf::from(os)
}

/// `gen`: random instances and hardness gadgets, deterministic under a seed.
pub fn gen(args: &GenArgs, out: &mut dyn Write) -> i32 {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let need_n = || -> Result<usize, String> {
        args.n.ok_or_else(|| "this generator needs --n".to_string())
    };
    let load_cnf = || -> Result<gadgets::CnfInstance, String> {
        let path = args.cnf.as_ref().ok_or("gadget generators need --cnf")?;
        let text = read_file(path)?;
        gadgets::parse_cnf(&text).map_err(|e| format!("{}: {e}", path.display()))
    };
    let emit_gadget = |gadget: &GadgetProfile,
                       class: ClassTag,
                       out: &mut dyn Write|
     -> Result<(), String> {
        let doc = ProfileDocument::from_profile(&gadget.profile, vec![class]);
        let text = format!("{}{}", role_comment_block(&gadget.roles), doc.print());
        write_output(args.out.as_deref(), &text, out)?;
        if let Some((model, thresholds)) = &gadget.model {
            let model_text = match model.source() {
                DistanceSource::Graph { edges } => {
                    print_graph_model(model.n(), edges, thresholds, &[])
                }
                DistanceSource::Points { coords } => print_points_model(coords, thresholds, &[]),
                DistanceSource::Matrix => unreachable!("gadget models are graphs"),
            };
            match args.out.as_deref() {
                Some(p) => {
                    write_output(Some(&model_sidecar_path(p)), &model_text, out)?;
                }
                None => {
                    let _ = writeln!(out, "# --- model ---");
                    let _ = out.write_all(model_text.as_bytes());
                }
            }
        }
        Ok(())
    };

    let result: Result<(), String> = match args.kind.as_str() {
        "sp-random" => need_n().and_then(|n| {
            let p = generate::random_single_peaked(n, &mut rng);
            debug_assert!(check_single_peaked(&p).is_ok());
            let doc =
                ProfileDocument::from_profile(&p, vec![ClassTag::Sp]);
            write_output(args.out.as_deref(), &doc.print(), out)
        }),
        "sym-random" => need_n().and_then(|n| {
            let p = generate::random_symmetric(n, args.accept_prob, args.abstain_prob, &mut rng);
            debug_assert!(check_symmetric(&p).is_symmetric());
            let doc = ProfileDocument::from_profile(&p, vec![ClassTag::Sym]);
            write_output(args.out.as_deref(), &doc.print(), out)
        }),
        "db-points" => {
            type PointParts =
                (Vec<Vec<f64>>, delga_core::distance::ThresholdVector, Vec<usize>, PreferenceProfile);
            let mut build = || -> Result<PointParts, String> {
                if let Some(path) = &args.points_file {
                    let text = read_file(path)?;
                    let doc = parse_model(&text).map_err(|e| format!("{}: {e}", path.display()))?;
                    let coords = match doc.model.source() {
                        DistanceSource::Points { coords } => coords.clone(),
                        _ => return Err("points generator needs a points model".into()),
                    };
                    let profile = delga_core::distance::build_db_profile(
                        &doc.model,
                        &doc.thresholds,
                        &doc.abstainers,
                    )
                    .map_err(|e| e.to_string())?;
                    Ok((coords, doc.thresholds, doc.abstainers, profile))
                } else {
                    let n = need_n()?;
                    let db = generate::random_db_points(n, args.dim, args.abstain_prob, &mut rng);
                    let coords = match db.model.source() {
                        DistanceSource::Points { coords } => coords.clone(),
                        _ => unreachable!(),
                    };
                    Ok((coords, db.thresholds, db.abstainers, db.profile))
                }
            };
            build().and_then(|(coords, thresholds, abstainers, profile)| {
                let doc = ProfileDocument::from_profile(&profile, vec![ClassTag::Db]);
                write_output(args.out.as_deref(), &doc.print(), out)?;
                let model_text = print_points_model(&coords, &thresholds, &abstainers);
                match args.out.as_deref() {
                    Some(p) => write_output(Some(&model_sidecar_path(p)), &model_text, out),
                    None => {
                        let _ = writeln!(out, "# --- model ---");
                        let _ = out.write_all(model_text.as_bytes());
                        Ok(())
                    }
                }
            })
        }
        "gadget:guc" => load_cnf().and_then(|inst| {
            build_guc(&inst).map_err(|e| e.to_string()).and_then(|(g, roles)| {
                let text = format!("{}{}", role_comment_block(&roles), g.to_dot());
                write_output(args.out.as_deref(), &text, out)
            })
        }),
        "gadget:minabst" => load_cnf().and_then(|inst| {
            let gadget = build_minabst_gadget(&inst).map_err(|e| e.to_string())?;
            emit_gadget(&gadget, ClassTag::Sym, out)
        }),
        "gadget:mindis" => load_cnf().and_then(|inst| {
            let gadget = build_mindis_gadget(&inst, args.clique).map_err(|e| e.to_string())?;
            emit_gadget(&gadget, ClassTag::Sym, out)
        }),
        "gadget:minmaxvp" => load_cnf().and_then(|inst| {
            let gadget = build_minmaxvp_gadget(&inst).map_err(|e| e.to_string())?;
            emit_gadget(&gadget, ClassTag::Sym, out)
        }),
        "gadget:memb" => load_cnf().and_then(|inst| {
            let gadget = build_memb_gadget(&inst).map_err(|e| e.to_string())?;
            emit_gadget(&gadget, ClassTag::Db, out)
        }),
        other => Err(format!(
            "unknown kind `{other}` (sp-random, sym-random, db-points, gadget:<guc|minabst|mindis|minmaxvp|memb>)"
        )),
    };
    match result {
        Ok(()) => exit::OK,
        Err(e) => fail(out, exit::INPUT, "gen", e),
    }
}

/// `enumerate`: all kernels of a profile's acceptability digraph.
pub fn enumerate(
    profile_path: &Path,
    limit: Option<usize>,
    cap: usize,
    out: &mut dyn Write,
) -> i32 {
    let (_, profile) = match load_profile(profile_path, false) {
        Ok(v) => v,
        Err(e) => return fail(out, exit::INPUT, "enumerate", e),
    };
    let g = AcceptabilityDigraph::from_profile(&profile);
    match enumerate_kernels_capped(&g, limit, cap) {
        Ok(list) => {
            debug_assert!(list
                .kernels
                .iter()
                .all(|k| is_kernel(&g, k).unwrap().is_kernel()));
            #[derive(Serialize)]
            struct KernelsOut {
                profile_digest: String,
                kernels: Vec<Vec<usize>>,
                truncated: bool,
            }
            let doc = KernelsOut {
                profile_digest: profile_digest(&profile),
                kernels: list.kernels,
                truncated: list.truncated,
            };
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).unwrap());
            exit::OK
        }
        Err(e) => fail(out, exit::REFUSED, "enumerate", e.to_string()),
    }
}
