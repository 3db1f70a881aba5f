//! Distance-based profiles: a symmetric dissimilarity between voters plus a
//! per-voter acceptability threshold determines who accepts whom. Covers
//! explicit matrices, Euclidean point clouds and hop distances in an
//! unweighted graph. The greedy smallest-threshold scan always produces an
//! equilibrium; symmetry of the dissimilarity is all it needs (the triangle
//! inequality may fail).

use crate::error::Error;
use crate::profile::{Equilibrium, PreferenceProfile, VoterId};

/// How a distance matrix was obtained.
#[derive(Debug, Clone, PartialEq)]
pub enum DistanceSource {
    Matrix,
    Points { coords: Vec<Vec<f64>> },
    Graph { edges: Vec<(VoterId, VoterId)> },
}

/// Symmetric nonnegative dissimilarity over `1..=n`, zero on the diagonal.
/// Pairs in different components of a graph source sit at infinity.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceModel {
    n: usize,
    dist: Vec<Vec<f64>>,
    source: DistanceSource,
}

impl DistanceModel {
    pub fn from_matrix(dist: Vec<Vec<f64>>) -> Result<Self, Error> {
        let n = dist.len();
        for (i, row) in dist.iter().enumerate() {
            if row.len() != n {
                return Err(Error::BadDistanceValue(i + 1));
            }
            for &v in row {
                if v.is_nan() || v < 0.0 {
                    return Err(Error::BadDistanceValue(i + 1));
                }
            }
            if row[i] != 0.0 {
                return Err(Error::BadDistanceValue(i + 1));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if dist[i][j] != dist[j][i] {
                    return Err(Error::AsymmetricDistance(i + 1, j + 1));
                }
            }
        }
        Ok(Self {
            n,
            dist,
            source: DistanceSource::Matrix,
        })
    }

    /// Euclidean distances between points; all points must share a dimension.
    pub fn from_points(coords: Vec<Vec<f64>>) -> Self {
        let n = coords.len();
        let mut dist = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let d = coords[i]
                    .iter()
                    .zip(&coords[j])
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt();
                dist[i][j] = d;
                dist[j][i] = d;
            }
        }
        Self {
            n,
            dist,
            source: DistanceSource::Points { coords },
        }
    }

    /// Hop-count distances in an undirected unweighted graph; vertices in
    /// different components end up at infinity.
    pub fn from_graph(n: usize, edges: &[(VoterId, VoterId)]) -> Result<Self, Error> {
        let mut adj = vec![Vec::new(); n + 1];
        for &(u, v) in edges {
            if u == 0 || u > n {
                return Err(Error::VoterOutOfRange(u, n));
            }
            if v == 0 || v > n {
                return Err(Error::VoterOutOfRange(v, n));
            }
            if u != v {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        let mut dist = vec![vec![f64::INFINITY; n]; n];
        for start in 1..=n {
            dist[start - 1][start - 1] = 0.0;
            let mut queue = std::collections::VecDeque::from([start]);
            let mut seen = vec![false; n + 1];
            seen[start] = true;
            while let Some(u) = queue.pop_front() {
                for &w in &adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        dist[start - 1][w - 1] = dist[start - 1][u - 1] + 1.0;
                        queue.push_back(w);
                    }
                }
            }
        }
        Ok(Self {
            n,
            dist,
            source: DistanceSource::Graph {
                edges: edges.to_vec(),
            },
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dist(&self, i: VoterId, j: VoterId) -> f64 {
        self.dist[i - 1][j - 1]
    }

    pub fn source(&self) -> &DistanceSource {
        &self.source
    }
}

/// Per-voter acceptance radii.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdVector {
    at: Vec<f64>,
}

impl ThresholdVector {
    pub fn new(at: Vec<f64>) -> Result<Self, Error> {
        for (i, &v) in at.iter().enumerate() {
            if v.is_nan() || v < 0.0 {
                return Err(Error::BadDistanceValue(i + 1));
            }
        }
        Ok(Self { at })
    }

    pub fn len(&self) -> usize {
        self.at.len()
    }

    pub fn is_empty(&self) -> bool {
        self.at.is_empty()
    }

    pub fn get(&self, v: VoterId) -> f64 {
        self.at[v - 1]
    }

    pub fn values(&self) -> &[f64] {
        &self.at
    }
}

/// Builds the full preference profile induced by a distance model:
/// voters within reach ranked by ascending distance (ties by index), then
/// self and abstention in the order dictated by the abstainer flag, then
/// everyone out of reach by ascending distance and index.
pub fn build_db_profile(
    model: &DistanceModel,
    thresholds: &ThresholdVector,
    abstainers: &[VoterId],
) -> Result<PreferenceProfile, Error> {
    let n = model.n();
    if thresholds.len() != n {
        return Err(Error::ThresholdSizeMismatch {
            got: thresholds.len(),
            expected: n,
        });
    }
    let mut is_abst = vec![false; n + 1];
    for &a in abstainers {
        if a == 0 || a > n {
            return Err(Error::VoterOutOfRange(a, n));
        }
        is_abst[a] = true;
    }
    let mut orders = Vec::with_capacity(n);
    for i in 1..=n {
        let by_distance = |list: &mut Vec<VoterId>| {
            list.sort_by(|&a, &b| {
                model
                    .dist(i, a)
                    .partial_cmp(&model.dist(i, b))
                    .unwrap()
                    .then(a.cmp(&b))
            });
        };
        let mut close: Vec<VoterId> = (1..=n)
            .filter(|&j| j != i && model.dist(i, j) <= thresholds.get(i))
            .collect();
        let mut far: Vec<VoterId> = (1..=n)
            .filter(|&j| j != i && model.dist(i, j) > thresholds.get(i))
            .collect();
        by_distance(&mut close);
        by_distance(&mut far);
        let mut order = close;
        if is_abst[i] {
            order.push(0);
            order.push(i);
        } else {
            order.push(i);
            order.push(0);
        }
        order.extend(far);
        orders.push(order);
    }
    PreferenceProfile::from_orders(orders)
}

/// Checks that acceptance could have come from symmetric distances under the
/// given thresholds: whenever `i` accepts `j` and `i`'s threshold does not
/// exceed `j`'s, `j` must accept `i` back. Abstainers are outside the game
/// and are not constrained.
pub fn check_db_consistency(
    profile: &PreferenceProfile,
    thresholds: &ThresholdVector,
) -> Result<(), Error> {
    if thresholds.len() != profile.n() {
        return Err(Error::ThresholdSizeMismatch {
            got: thresholds.len(),
            expected: profile.n(),
        });
    }
    let verts = profile.non_abstainers();
    for &i in &verts {
        for &j in &verts {
            if i != j
                && profile.accepts(i, j)
                && thresholds.get(i) <= thresholds.get(j)
                && !profile.accepts(j, i)
            {
                return Err(Error::ThresholdMismatch(i, j));
            }
        }
    }
    Ok(())
}

/// Greedy equilibrium for distance-based profiles: repeatedly promote the
/// remaining non-abstainer with the smallest threshold (ties by index) to
/// guru and drop everyone who accepts her. O(n^2).
pub fn solve_equilibrium_db(
    profile: &PreferenceProfile,
    thresholds: &ThresholdVector,
) -> Result<Equilibrium, Error> {
    check_db_consistency(profile, thresholds)?;
    let mut pool = profile.non_abstainers();
    if pool.is_empty() {
        return Ok(Equilibrium::degenerate(profile.n()));
    }
    let mut kernel = Vec::new();
    while !pool.is_empty() {
        let &pick = pool
            .iter()
            .min_by(|&&a, &&b| {
                thresholds
                    .get(a)
                    .partial_cmp(&thresholds.get(b))
                    .unwrap()
                    .then(a.cmp(&b))
            })
            .unwrap();
        kernel.push(pick);
        pool.retain(|&v| v != pick && !profile.accepts(v, pick));
    }
    kernel.sort_unstable();
    Equilibrium::from_kernel(profile, &kernel)
}
