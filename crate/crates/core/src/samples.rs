//! Small worked instances shared by documentation, tests and the benchmark
//! suite.

use crate::distance::{DistanceModel, ThresholdVector};
use crate::gadgets::CnfInstance;
use crate::profile::PreferenceProfile;

/// Three voters in a cyclic standoff: each prefers delegating to the next
/// voter over voting, and voting over everything else. No equilibrium exists.
pub fn no_equilibrium_triangle() -> PreferenceProfile {
    PreferenceProfile::from_orders(vec![vec![2, 1, 3, 0], vec![3, 2, 1, 0], vec![1, 3, 2, 0]])
        .unwrap()
}

/// Four voters on a line, single-peaked, with the unique equilibrium guru
/// set `{1, 4}`.
pub fn sp_four() -> PreferenceProfile {
    PreferenceProfile::from_orders(vec![
        vec![2, 1, 3, 4, 0],
        vec![3, 4, 2, 1, 0],
        vec![2, 1, 3, 4, 0],
        vec![3, 4, 2, 1, 0],
    ])
    .unwrap()
}

/// Four voters with mutual acceptance across the diagonals:
/// `Acc(1) = Acc(3) = {2, 4}` and `Acc(2) = Acc(4) = {1, 3}`, everyone
/// preferring to vote over abstaining. Symmetric; improved-response
/// dynamics can cycle on it.
pub fn mutual_pairs_four() -> PreferenceProfile {
    PreferenceProfile::from_orders(vec![
        vec![2, 4, 1, 0, 3],
        vec![1, 3, 2, 0, 4],
        vec![2, 4, 3, 0, 1],
        vec![1, 3, 4, 0, 2],
    ])
    .unwrap()
}

/// The improved-response schedule that cycles on [`mutual_pairs_four`],
/// starting from everyone voting: token holders paired with their moves.
pub fn mutual_pairs_cycle_script() -> Vec<(usize, usize)> {
    vec![
        (1, 2),
        (2, 3),
        (1, 1),
        (3, 4),
        (2, 2),
        (4, 1),
        (3, 3),
        (1, 2),
        (4, 4),
    ]
}

/// Three-voter symmetric profile on which best-response dynamics needs the
/// full three rounds under the returned 9-step token schedule.
pub fn brd_three_round_worst_case() -> (PreferenceProfile, Vec<usize>) {
    let profile =
        PreferenceProfile::from_orders(vec![vec![2, 1, 0, 3], vec![1, 3, 2, 0], vec![2, 3, 0, 1]])
            .unwrap();
    (profile, vec![1, 2, 3, 2, 3, 1, 1, 3, 2])
}

/// Five voters as points of a unit grid with per-voter acceptance radii:
/// voter 1 accepts 2, 3 and 5 but not 4; voter 4 accepts only 3; voter 5
/// accepts 1 and 3.
pub fn grid_five() -> (DistanceModel, ThresholdVector) {
    let coords = vec![
        vec![0.0, 1.0],
        vec![0.0, 0.0],
        vec![1.0, 0.0],
        vec![2.0, 0.0],
        vec![1.0, 1.0],
    ];
    let model = DistanceModel::from_points(coords);
    let thresholds = ThresholdVector::new(vec![2.0, 1.5, 2.0, 1.0, 1.0]).unwrap();
    (model, thresholds)
}

/// Five-variable, three-clause satisfiable formula used to exercise the
/// hardness gadgets at desk scale.
pub fn demo_cnf() -> CnfInstance {
    CnfInstance::new(5, vec![[1, 2, -3], [-2, -4, 1], [-1, 3, 5]]).unwrap()
}

/// Single-peaked profile where every voter accepts the whole walk from
/// herself towards the centre voter and the centre accepts nobody; the only
/// kernel is the centre alone. Returns the profile and the centre id.
pub fn funnel_profile(n: usize) -> (PreferenceProfile, usize) {
    assert!(n >= 1);
    let centre = n.div_ceil(2);
    let mut orders = Vec::with_capacity(n);
    for v in 1..=n {
        let mut order = Vec::with_capacity(n + 1);
        if v < centre {
            order.extend(v + 1..=centre);
            order.push(v);
            order.push(0);
            order.extend(centre + 1..=n);
            order.extend((1..v).rev());
        } else if v > centre {
            order.extend((centre..v).rev());
            order.push(v);
            order.push(0);
            order.extend((1..centre).rev());
            order.extend(v + 1..=n);
        } else {
            order.push(v);
            order.push(0);
            order.extend(v + 1..=n);
            order.extend((1..v).rev());
        }
        orders.push(order);
    }
    (PreferenceProfile::from_orders(orders).unwrap(), centre)
}
