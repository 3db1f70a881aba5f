//! Seedable random instance generators for every profile class. Each
//! generator guarantees its class invariant by construction, so generated
//! instances always pass the matching checker.

use crate::distance::{build_db_profile, DistanceModel, ThresholdVector};
use crate::profile::{PreferenceProfile, VoterId};
use rand::seq::SliceRandom;
use rand::Rng;

/// Uniformly random strict orders, no structure guaranteed.
pub fn random_unrestricted<R: Rng>(n: usize, rng: &mut R) -> PreferenceProfile {
    let orders = (0..n)
        .map(|_| {
            let mut order: Vec<usize> = (0..=n).collect();
            order.shuffle(rng);
            order
        })
        .collect();
    PreferenceProfile::from_orders(orders).unwrap()
}

/// Random single-peaked profile: each voter's ranking interleaves the two
/// outward walks along the axis, with voting and abstention inserted at
/// random positions.
pub fn random_single_peaked<R: Rng>(n: usize, rng: &mut R) -> PreferenceProfile {
    let mut orders = Vec::with_capacity(n);
    for v in 1..=n {
        let mut order = Vec::with_capacity(n + 1);
        let mut left = v - 1; // next candidate on the left
        let mut right = v + 1;
        let mut self_left = true;
        let mut abstain_left = true;
        while order.len() < n + 1 {
            let mut options = Vec::with_capacity(4);
            if left >= 1 {
                options.push(0);
            }
            if right <= n {
                options.push(1);
            }
            if self_left {
                options.push(2);
            }
            if abstain_left {
                options.push(3);
            }
            match options[rng.random_range(0..options.len())] {
                0 => {
                    order.push(left);
                    left -= 1;
                }
                1 => {
                    order.push(right);
                    right += 1;
                }
                2 => {
                    order.push(v);
                    self_left = false;
                }
                _ => {
                    order.push(0);
                    abstain_left = false;
                }
            }
        }
        orders.push(order);
    }
    PreferenceProfile::from_orders(orders).unwrap()
}

/// Random symmetric profile: mutual acceptance decided per pair of
/// non-abstainers; acceptance rankings and the tail order are shuffled.
pub fn random_symmetric<R: Rng>(
    n: usize,
    accept_prob: f64,
    abstain_prob: f64,
    rng: &mut R,
) -> PreferenceProfile {
    let abstainer: Vec<bool> = (0..=n)
        .map(|v| v != 0 && rng.random_bool(abstain_prob))
        .collect();
    let mut accepted: Vec<Vec<VoterId>> = vec![Vec::new(); n + 1];
    for i in 1..=n {
        for j in i + 1..=n {
            if !abstainer[i] && !abstainer[j] && rng.random_bool(accept_prob) {
                accepted[i].push(j);
                accepted[j].push(i);
            }
        }
    }
    // abstainers may accept anyone without breaking symmetry
    for i in 1..=n {
        if abstainer[i] {
            for j in 1..=n {
                if j != i && rng.random_bool(accept_prob) {
                    accepted[i].push(j);
                }
            }
        }
    }
    let mut orders = Vec::with_capacity(n);
    for i in 1..=n {
        let mut acc = accepted[i].clone();
        acc.shuffle(rng);
        let mut rest: Vec<usize> = (1..=n)
            .filter(|&j| j != i && !accepted[i].contains(&j))
            .collect();
        rest.shuffle(rng);
        let mut order = acc;
        if abstainer[i] {
            order.push(0);
            order.push(i);
        } else {
            order.push(i);
            order.push(0);
        }
        order.extend(rest);
        orders.push(order);
    }
    PreferenceProfile::from_orders(orders).unwrap()
}

/// A distance-based instance bundled with the profile it induces.
#[derive(Debug, Clone)]
pub struct DbInstance {
    pub model: DistanceModel,
    pub thresholds: ThresholdVector,
    pub abstainers: Vec<VoterId>,
    pub profile: PreferenceProfile,
}

/// Random points in the unit cube; each voter's radius is her distance to a
/// random other voter (occasionally zero), so acceptance sets stay varied.
pub fn random_db_points<R: Rng>(
    n: usize,
    dim: usize,
    abstain_prob: f64,
    rng: &mut R,
) -> DbInstance {
    let coords: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..dim).map(|_| rng.random::<f64>()).collect())
        .collect();
    let model = DistanceModel::from_points(coords);
    let at = (1..=n)
        .map(|i| {
            if n == 1 || rng.random_bool(0.15) {
                0.0
            } else {
                let mut j = rng.random_range(1..=n);
                while j == i {
                    j = rng.random_range(1..=n);
                }
                model.dist(i, j)
            }
        })
        .collect();
    let thresholds = ThresholdVector::new(at).unwrap();
    let abstainers: Vec<VoterId> = (1..=n).filter(|_| rng.random_bool(abstain_prob)).collect();
    let profile = build_db_profile(&model, &thresholds, &abstainers).unwrap();
    DbInstance {
        model,
        thresholds,
        abstainers,
        profile,
    }
}

/// Random symmetric dissimilarity matrix with no triangle-inequality
/// guarantee, plus random radii.
pub fn random_db_matrix<R: Rng>(n: usize, abstain_prob: f64, rng: &mut R) -> DbInstance {
    let mut dist = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let d = rng.random_range(0.0..10.0);
            dist[i][j] = d;
            dist[j][i] = d;
        }
    }
    let model = DistanceModel::from_matrix(dist).unwrap();
    let at = (0..n).map(|_| rng.random_range(0.0..10.0)).collect();
    let thresholds = ThresholdVector::new(at).unwrap();
    let abstainers: Vec<VoterId> = (1..=n).filter(|_| rng.random_bool(abstain_prob)).collect();
    let profile = build_db_profile(&model, &thresholds, &abstainers).unwrap();
    DbInstance {
        model,
        thresholds,
        abstainers,
        profile,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::check_db_consistency;
    use crate::single_peaked::check_single_peaked;
    use crate::symmetric::check_symmetric;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_profiles_pass_their_class_checks() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for trial in 0..50 {
            let n = trial % 12 + 1;
            assert!(check_single_peaked(&random_single_peaked(n, &mut rng)).is_ok());
            assert!(check_symmetric(&random_symmetric(n, 0.4, 0.1, &mut rng)).is_symmetric());
            let db = random_db_points(n, 2, 0.1, &mut rng);
            assert!(check_db_consistency(&db.profile, &db.thresholds).is_ok());
            let db = random_db_matrix(n, 0.1, &mut rng);
            assert!(check_db_consistency(&db.profile, &db.thresholds).is_ok());
        }
    }

    #[test]
    fn generation_is_deterministic_under_seed() {
        let a = random_single_peaked(9, &mut ChaCha8Rng::seed_from_u64(3));
        let b = random_single_peaked(9, &mut ChaCha8Rng::seed_from_u64(3));
        assert_eq!(a, b);
    }
}
