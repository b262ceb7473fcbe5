use rand::Rng;

use crate::error::{Error, Result};
use crate::model::{InGroupRanking, RankedItem, Ranking};

/// Fair ε-greedy baseline built from lower bounds only.
///
/// At rank `k'`, with probability `ε` a uniformly random group is chosen.
/// Otherwise, with two groups, group 0 is chosen while its count in the top
/// `k' - 1` is below `L_0 k'/k`, and group 1 after that. With more groups the
/// group with the largest deficit `L_j k'/k - count_j` wins, lowest index on
/// ties (a heuristic extension). Exhausted groups are skipped.
pub fn fair_epsilon_greedy<R: Rng + ?Sized>(
    k: usize,
    lower: &[usize],
    epsilon: f64,
    in_group: &[InGroupRanking],
    rng: &mut R,
) -> Result<Ranking> {
    let ell = lower.len();
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(Error::InvalidArgument(format!(
            "epsilon {epsilon} outside [0, 1]"
        )));
    }
    if ell == 0 || in_group.len() != ell {
        return Err(Error::InvalidArgument(
            "need one in-group ranking per lower bound".into(),
        ));
    }
    let available: usize = in_group.iter().map(|g| g.items.len()).sum();
    if available < k {
        return Err(Error::InsufficientItems {
            group: 0,
            needed: k,
            available,
        });
    }

    let mut count = vec![0usize; ell];
    let mut entries = Vec::with_capacity(k);
    for rank in 1..=k {
        let target = |j: usize| lower[j] as f64 * rank as f64 / k as f64;
        let preferred = if rng.gen::<f64>() < epsilon {
            rng.gen_range(0..ell)
        } else if ell == 2 {
            if (count[0] as f64) < target(0) {
                0
            } else {
                1
            }
        } else {
            (0..ell)
                .map(|j| (j, target(j) - count[j] as f64))
                .fold((0, f64::NEG_INFINITY), |best, cur| {
                    if cur.1 > best.1 {
                        cur
                    } else {
                        best
                    }
                })
                .0
        };
        let group = (0..ell)
            .map(|off| (preferred + off) % ell)
            .find(|&j| count[j] < in_group[j].items.len())
            .expect("enough items in total");
        entries.push(RankedItem {
            item: in_group[group].items[count[group]].clone(),
            group,
        });
        count[group] += 1;
    }
    Ok(Ranking { entries })
}
