//! Text formats: preference profiles (full rankings or acceptance-only
//! partial form), delegation assignments, and distance-model sidecars.
//!
//! Profile files start with `profile n=<n>` plus optional `class=` tags and
//! an `axis=` note; `#` starts a comment. Body lines are either full
//! rankings
//!
//! ```text
//! 1: 2 > 1 > 3 > 4 > 0
//! ```
//!
//! or partial form, which lists only the acceptable gurus in preference
//! order together with the abstainer flag:
//!
//! ```text
//! 1: voter acc: 2 > 4
//! 3: abstainer acc: 1
//! ```
//!
//! Completion appends the voter and abstention (ordered by the flag) and the
//! remaining voters, ascending; under a single-peaked reading the remainder
//! is ordered by axis distance instead so that completion preserves the
//! class. Either way the acceptance sets and abstainer flags never change.

use delga_core::distance::{DistanceModel, ThresholdVector};
use delga_core::profile::PreferenceProfile;
use sha2::{Digest, Sha256};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassTag {
    Sp,
    Sym,
    Db,
}

impl ClassTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            ClassTag::Sp => "sp",
            ClassTag::Sym => "sym",
            ClassTag::Db => "db",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProfileEntry {
    Full(Vec<usize>),
    Partial { abstainer: bool, acc: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileDocument {
    pub n: usize,
    pub classes: Vec<ClassTag>,
    pub axis_note: Option<String>,
    pub entries: Vec<ProfileEntry>,
}

impl ProfileDocument {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut header: Option<(usize, Vec<ClassTag>, Option<String>)> = None;
        let mut entries: Vec<Option<ProfileEntry>> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            if header.is_none() {
                let mut n = None;
                let mut classes = Vec::new();
                let mut axis = None;
                let mut fields = line.split_whitespace();
                if fields.next() != Some("profile") {
                    return err(
                        lineno,
                        "expected header `profile n=<n> [class=...] [axis=...]`",
                    );
                }
                for field in fields {
                    if let Some(v) = field.strip_prefix("n=") {
                        n = Some(v.parse::<usize>().map_err(|_| ParseError {
                            line: lineno,
                            message: format!("bad voter count `{v}`"),
                        })?);
                    } else if let Some(v) = field.strip_prefix("class=") {
                        for tag in v.split(',') {
                            classes.push(match tag {
                                "sp" => ClassTag::Sp,
                                "sym" => ClassTag::Sym,
                                "db" => ClassTag::Db,
                                other => {
                                    return err(lineno, format!("unknown class tag `{other}`"))
                                }
                            });
                        }
                    } else if let Some(v) = field.strip_prefix("axis=") {
                        axis = Some(v.to_string());
                    } else {
                        return err(lineno, format!("unknown header field `{field}`"));
                    }
                }
                let Some(n) = n else {
                    return err(lineno, "header is missing `n=<n>`");
                };
                header = Some((n, classes, axis));
                entries = vec![None; n];
                continue;
            }
            let (n, _, _) = header.as_ref().unwrap();
            let n = *n;
            let Some((id_part, rest)) = line.split_once(':') else {
                return err(lineno, "expected `<voter>: ...`");
            };
            let voter: usize = id_part.trim().parse().map_err(|_| ParseError {
                line: lineno,
                message: format!("bad voter id `{}`", id_part.trim()),
            })?;
            if voter == 0 || voter > n {
                return err(lineno, format!("voter id {voter} out of range 1..={n}"));
            }
            if entries[voter - 1].is_some() {
                return err(lineno, format!("duplicate line for voter {voter}"));
            }
            let rest = rest.trim();
            let entry = if let Some(tail) = rest.strip_prefix("voter") {
                Self::parse_partial(lineno, n, voter, false, tail)?
            } else if let Some(tail) = rest.strip_prefix("abstainer") {
                Self::parse_partial(lineno, n, voter, true, tail)?
            } else {
                let mut seen = vec![false; n + 1];
                let mut order = Vec::with_capacity(n + 1);
                for tok in rest.split('>') {
                    let tok = tok.trim();
                    let o: usize = tok.parse().map_err(|_| ParseError {
                        line: lineno,
                        message: format!("bad outcome `{tok}`"),
                    })?;
                    if o > n {
                        return err(lineno, format!("outcome {o} out of range 0..={n}"));
                    }
                    if seen[o] {
                        return err(lineno, format!("outcome {o} repeated"));
                    }
                    seen[o] = true;
                    order.push(o);
                }
                if order.len() != n + 1 {
                    return err(
                        lineno,
                        format!("ranking has {} outcomes, expected {}", order.len(), n + 1),
                    );
                }
                ProfileEntry::Full(order)
            };
            entries[voter - 1] = Some(entry);
        }
        let Some((n, classes, axis_note)) = header else {
            return err(1, "missing `profile` header");
        };
        let mut out = Vec::with_capacity(n);
        for (idx, e) in entries.into_iter().enumerate() {
            match e {
                Some(entry) => out.push(entry),
                None => return err(0, format!("no line for voter {}", idx + 1)),
            }
        }
        Ok(Self {
            n,
            classes,
            axis_note,
            entries: out,
        })
    }

    fn parse_partial(
        lineno: usize,
        n: usize,
        voter: usize,
        abstainer: bool,
        tail: &str,
    ) -> Result<ProfileEntry, ParseError> {
        let tail = tail.trim();
        let Some(list) = tail.strip_prefix("acc:") else {
            return err(lineno, "expected `acc:` after the abstainer flag");
        };
        let list = list.trim();
        let mut acc = Vec::new();
        if !list.is_empty() {
            for tok in list.split('>') {
                let tok = tok.trim();
                let j: usize = tok.parse().map_err(|_| ParseError {
                    line: lineno,
                    message: format!("bad voter id `{tok}`"),
                })?;
                if j == 0 || j > n {
                    return err(lineno, format!("voter id {j} out of range 1..={n}"));
                }
                if j == voter {
                    return err(lineno, "a voter cannot accept herself");
                }
                if acc.contains(&j) {
                    return err(lineno, format!("voter {j} repeated in acceptance list"));
                }
                acc.push(j);
            }
        }
        Ok(ProfileEntry::Partial { abstainer, acc })
    }

    pub fn print(&self) -> String {
        let mut s = String::new();
        write!(s, "profile n={}", self.n).unwrap();
        if !self.classes.is_empty() {
            let tags: Vec<&str> = self.classes.iter().map(|c| c.as_str()).collect();
            write!(s, " class={}", tags.join(",")).unwrap();
        }
        if let Some(axis) = &self.axis_note {
            write!(s, " axis={axis}").unwrap();
        }
        s.push('\n');
        for (idx, entry) in self.entries.iter().enumerate() {
            let voter = idx + 1;
            match entry {
                ProfileEntry::Full(order) => {
                    let parts: Vec<String> = order.iter().map(|o| o.to_string()).collect();
                    writeln!(s, "{voter}: {}", parts.join(" > ")).unwrap();
                }
                ProfileEntry::Partial { abstainer, acc } => {
                    let flag = if *abstainer { "abstainer" } else { "voter" };
                    let parts: Vec<String> = acc.iter().map(|o| o.to_string()).collect();
                    writeln!(s, "{voter}: {flag} acc: {}", parts.join(" > ")).unwrap();
                }
            }
        }
        s
    }

    pub fn from_profile(p: &PreferenceProfile, classes: Vec<ClassTag>) -> Self {
        Self {
            n: p.n(),
            classes,
            axis_note: None,
            entries: (1..=p.n())
                .map(|v| ProfileEntry::Full(p.order(v).to_vec()))
                .collect(),
        }
    }

    pub fn is_partial(&self) -> bool {
        self.entries
            .iter()
            .any(|e| matches!(e, ProfileEntry::Partial { .. }))
    }

    /// Expands partial entries to full rankings. `sp_tail` orders the
    /// below-the-line remainder by axis distance (then index) instead of
    /// plain ascending index, which keeps single-peaked inputs single-peaked.
    pub fn complete(&self, sp_tail: bool) -> Result<PreferenceProfile, ParseError> {
        let n = self.n;
        let mut orders = Vec::with_capacity(n);
        for (idx, entry) in self.entries.iter().enumerate() {
            let voter = idx + 1;
            match entry {
                ProfileEntry::Full(order) => orders.push(order.clone()),
                ProfileEntry::Partial { abstainer, acc } => {
                    let mut order = acc.clone();
                    if *abstainer {
                        order.push(0);
                        order.push(voter);
                    } else {
                        order.push(voter);
                        order.push(0);
                    }
                    let mut rest: Vec<usize> = (1..=n)
                        .filter(|j| *j != voter && !acc.contains(j))
                        .collect();
                    if sp_tail {
                        rest.sort_by_key(|&j| (j.abs_diff(voter), j));
                    }
                    order.extend(rest);
                    orders.push(order);
                }
            }
        }
        PreferenceProfile::from_orders(orders).map_err(|e| ParseError {
            line: 0,
            message: e.to_string(),
        })
    }
}

/// Canonical digest of a game instance: hash of the completed full-form
/// rankings (one `v: o1 > o2 > ...` line per voter).
pub fn profile_digest(p: &PreferenceProfile) -> String {
    let mut hasher = Sha256::new();
    for v in 1..=p.n() {
        let parts: Vec<String> = p.order(v).iter().map(|o| o.to_string()).collect();
        hasher.update(format!("{v}: {}\n", parts.join(" > ")));
    }
    let digest = hasher.finalize();
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}

/// Parses a delegation file: `delegation n=<n>` header then one
/// `<voter> -> <target>` line per voter (target 0 = abstain).
pub fn parse_delegation(text: &str) -> Result<delga_core::profile::DelegationFunction, ParseError> {
    let mut n: Option<usize> = None;
    let mut targets: Vec<Option<usize>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        if n.is_none() {
            let mut fields = line.split_whitespace();
            if fields.next() != Some("delegation") {
                return err(lineno, "expected header `delegation n=<n>`");
            }
            match fields.next().and_then(|f| f.strip_prefix("n=")) {
                Some(v) => {
                    let parsed = v.parse::<usize>().map_err(|_| ParseError {
                        line: lineno,
                        message: format!("bad voter count `{v}`"),
                    })?;
                    n = Some(parsed);
                    targets = vec![None; parsed];
                }
                None => return err(lineno, "header is missing `n=<n>`"),
            }
            continue;
        }
        let n = n.unwrap();
        let Some((from, to)) = line.split_once("->") else {
            return err(lineno, "expected `<voter> -> <target>`");
        };
        let voter: usize = from.trim().parse().map_err(|_| ParseError {
            line: lineno,
            message: format!("bad voter id `{}`", from.trim()),
        })?;
        let target: usize = to.trim().parse().map_err(|_| ParseError {
            line: lineno,
            message: format!("bad target `{}`", to.trim()),
        })?;
        if voter == 0 || voter > n {
            return err(lineno, format!("voter id {voter} out of range 1..={n}"));
        }
        if target > n {
            return err(lineno, format!("target {target} out of range 0..={n}"));
        }
        if targets[voter - 1].is_some() {
            return err(lineno, format!("duplicate line for voter {voter}"));
        }
        targets[voter - 1] = Some(target);
    }
    if n.is_none() {
        return err(1, "missing `delegation` header");
    }
    let mut out = Vec::with_capacity(targets.len());
    for (idx, t) in targets.iter().enumerate() {
        match t {
            Some(t) => out.push(*t),
            None => return err(0, format!("no line for voter {}", idx + 1)),
        }
    }
    delga_core::profile::DelegationFunction::from_targets(out).map_err(|e| ParseError {
        line: 0,
        message: e.to_string(),
    })
}

pub fn print_delegation(d: &delga_core::profile::DelegationFunction) -> String {
    let mut s = format!("delegation n={}\n", d.n());
    for v in 1..=d.n() {
        writeln!(s, "{v} -> {}", d.target(v)).unwrap();
    }
    s
}

/// A distance model plus thresholds and abstainer flags, as read from a
/// sidecar file.
#[derive(Debug, Clone)]
pub struct ModelDocument {
    pub model: DistanceModel,
    pub thresholds: ThresholdVector,
    pub abstainers: Vec<usize>,
}

/// Parses a model sidecar. Point form:
///
/// ```text
/// points n=5 dim=2
/// 1 0 1 2 0        # id, coordinates, threshold, abstainer flag
/// ```
///
/// Graph form (hop distances, one `u v` edge per line):
///
/// ```text
/// graph n=15
/// 1 2
/// thresholds 1 1 ... 2
/// abstainers 3 7
/// ```
pub fn parse_model(text: &str) -> Result<ModelDocument, ParseError> {
    enum Kind {
        Points { dim: usize },
        Graph,
    }
    let mut kind: Option<(Kind, usize)> = None;
    let mut coords: Vec<Option<(Vec<f64>, f64, bool)>> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut thresholds: Option<Vec<f64>> = None;
    let mut abstainers: Vec<usize> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        if kind.is_none() {
            let mut fields = line.split_whitespace();
            let head = fields.next().unwrap_or("");
            let mut n = None;
            let mut dim = None;
            for field in fields {
                if let Some(v) = field.strip_prefix("n=") {
                    n = v.parse::<usize>().ok();
                } else if let Some(v) = field.strip_prefix("dim=") {
                    dim = v.parse::<usize>().ok();
                }
            }
            let Some(n) = n else {
                return err(lineno, "model header is missing `n=<n>`");
            };
            match head {
                "points" => {
                    let Some(dim) = dim else {
                        return err(lineno, "points header is missing `dim=<d>`");
                    };
                    kind = Some((Kind::Points { dim }, n));
                    coords = vec![None; n];
                }
                "graph" => kind = Some((Kind::Graph, n)),
                other => return err(lineno, format!("unknown model kind `{other}`")),
            }
            continue;
        }
        let (k, n) = kind.as_ref().unwrap();
        let n = *n;
        match k {
            Kind::Points { dim } => {
                let fields: Vec<&str> = line.split_whitespace().collect();
                if fields.len() != dim + 3 {
                    return err(
                        lineno,
                        format!("expected `id {dim} coordinate(s) threshold flag`"),
                    );
                }
                let id: usize = fields[0].parse().map_err(|_| ParseError {
                    line: lineno,
                    message: format!("bad voter id `{}`", fields[0]),
                })?;
                if id == 0 || id > n {
                    return err(lineno, format!("voter id {id} out of range 1..={n}"));
                }
                let mut parsed = Vec::with_capacity(dim + 2);
                for f in &fields[1..] {
                    match f.parse::<f64>() {
                        Ok(v) if v.is_finite() => parsed.push(v),
                        _ => return err(lineno, format!("bad number `{f}`")),
                    }
                }
                let flag = parsed.pop().unwrap();
                let threshold = parsed.pop().unwrap();
                if coords[id - 1].is_some() {
                    return err(lineno, format!("duplicate line for voter {id}"));
                }
                coords[id - 1] = Some((parsed, threshold, flag != 0.0));
            }
            Kind::Graph => {
                let fields: Vec<&str> = line.split_whitespace().collect();
                match fields[0] {
                    "thresholds" => {
                        if fields.len() != n + 1 {
                            return err(lineno, format!("expected {n} thresholds"));
                        }
                        let mut at = Vec::with_capacity(n);
                        for f in &fields[1..] {
                            match f.parse::<f64>() {
                                Ok(v) if !v.is_nan() => at.push(v),
                                _ => return err(lineno, format!("bad number `{f}`")),
                            }
                        }
                        thresholds = Some(at);
                    }
                    "abstainers" => {
                        for f in &fields[1..] {
                            let id: usize = f.parse().map_err(|_| ParseError {
                                line: lineno,
                                message: format!("bad voter id `{f}`"),
                            })?;
                            abstainers.push(id);
                        }
                    }
                    _ => {
                        if fields.len() != 2 {
                            return err(lineno, "expected `u v` edge");
                        }
                        let u: usize = fields[0].parse().map_err(|_| ParseError {
                            line: lineno,
                            message: format!("bad vertex `{}`", fields[0]),
                        })?;
                        let v: usize = fields[1].parse().map_err(|_| ParseError {
                            line: lineno,
                            message: format!("bad vertex `{}`", fields[1]),
                        })?;
                        edges.push((u, v));
                    }
                }
            }
        }
    }
    let Some((k, n)) = kind else {
        return err(1, "missing model header");
    };
    match k {
        Kind::Points { .. } => {
            let mut pts = Vec::with_capacity(n);
            let mut at = Vec::with_capacity(n);
            for (idx, c) in coords.into_iter().enumerate() {
                match c {
                    Some((point, threshold, abst)) => {
                        pts.push(point);
                        at.push(threshold);
                        if abst {
                            abstainers.push(idx + 1);
                        }
                    }
                    None => return err(0, format!("no line for voter {}", idx + 1)),
                }
            }
            let model = DistanceModel::from_points(pts);
            let thresholds = ThresholdVector::new(at).map_err(|e| ParseError {
                line: 0,
                message: e.to_string(),
            })?;
            Ok(ModelDocument {
                model,
                thresholds,
                abstainers,
            })
        }
        Kind::Graph => {
            let model = DistanceModel::from_graph(n, &edges).map_err(|e| ParseError {
                line: 0,
                message: e.to_string(),
            })?;
            let at = thresholds.ok_or_else(|| ParseError {
                line: 0,
                message: "missing `thresholds` line".into(),
            })?;
            if at.len() != n {
                return err(0, format!("expected {n} thresholds"));
            }
            let thresholds = ThresholdVector::new(at).map_err(|e| ParseError {
                line: 0,
                message: e.to_string(),
            })?;
            Ok(ModelDocument {
                model,
                thresholds,
                abstainers,
            })
        }
    }
}

/// Renders a points model document.
pub fn print_points_model(
    coords: &[Vec<f64>],
    thresholds: &ThresholdVector,
    abstainers: &[usize],
) -> String {
    let dim = coords.first().map_or(0, |c| c.len());
    let mut s = format!("points n={} dim={dim}\n", coords.len());
    for (idx, point) in coords.iter().enumerate() {
        let v = idx + 1;
        let nums: Vec<String> = point.iter().map(|x| format_float(*x)).collect();
        let flag = usize::from(abstainers.contains(&v));
        writeln!(
            s,
            "{v} {} {} {flag}",
            nums.join(" "),
            format_float(thresholds.get(v))
        )
        .unwrap();
    }
    s
}

/// Renders a graph model document.
pub fn print_graph_model(
    n: usize,
    edges: &[(usize, usize)],
    thresholds: &ThresholdVector,
    abstainers: &[usize],
) -> String {
    let mut s = format!("graph n={n}\n");
    for &(u, v) in edges {
        writeln!(s, "{u} {v}").unwrap();
    }
    let at: Vec<String> = (1..=n).map(|v| format_float(thresholds.get(v))).collect();
    writeln!(s, "thresholds {}", at.join(" ")).unwrap();
    if !abstainers.is_empty() {
        let ids: Vec<String> = abstainers.iter().map(|a| a.to_string()).collect();
        writeln!(s, "abstainers {}", ids.join(" ")).unwrap();
    }
    s
}

fn format_float(x: f64) -> String {
    if x == x.trunc() && x.abs() < 1e15 {
        format!("{}", x as i64)
    } else {
        format!("{x}")
    }
}
