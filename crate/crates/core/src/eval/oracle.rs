//! Brute-force lattice enumeration used as the independent reference for the
//! samplers. It walks the whole box `Π [L_j, U_j]` and keeps points summing
//! to `k`; it shares nothing with the counting table.

use crate::error::{Error, Result};
use crate::model::GroupRepresentation;

/// Largest box (in cells) the enumerator will walk.
pub const MAX_BOX_CELLS: u128 = 10_000_000;

/// All integer `x` with `Σ x_j = k` and `L_j <= x_j <= U_j`, in
/// lexicographic order. Takes raw bounds so infeasible instances can be
/// enumerated (yielding an empty list).
pub fn brute_force_enumerate(
    k: usize,
    lower: &[usize],
    upper: &[usize],
) -> Result<Vec<GroupRepresentation>> {
    if lower.len() != upper.len() {
        return Err(Error::InvalidArgument(
            "bound vectors differ in length".into(),
        ));
    }
    if lower.is_empty() || lower.iter().zip(upper).any(|(l, u)| l > u) {
        return Ok(Vec::new());
    }
    let cells = lower
        .iter()
        .zip(upper)
        .map(|(&l, &u)| (u - l + 1) as u128)
        .try_fold(1u128, |acc, w| acc.checked_mul(w))
        .unwrap_or(u128::MAX);
    if cells > MAX_BOX_CELLS {
        return Err(Error::InstanceTooLarge { cells });
    }

    let ell = lower.len();
    let mut x = lower.to_vec();
    let mut points = Vec::new();
    loop {
        if x.iter().sum::<usize>() == k {
            points.push(GroupRepresentation(x.clone()));
        }
        // Odometer step, last coordinate fastest, which keeps output sorted.
        let mut pos = ell;
        loop {
            if pos == 0 {
                return Ok(points);
            }
            pos -= 1;
            if x[pos] < upper[pos] {
                x[pos] += 1;
                break;
            }
            x[pos] = lower[pos];
        }
    }
}
