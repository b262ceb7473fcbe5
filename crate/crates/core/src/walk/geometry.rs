use crate::error::{Error, Result};
use crate::model::FairnessConstraints;

/// Radius `Δ` of the ball that fits inside the bound box around an integral
/// center on the hyperplane `Σ x_j = k`.
pub fn compute_delta(constraints: &FairnessConstraints) -> usize {
    let ell = constraints.ell();
    let k = constraints.k();
    let lower_sum: usize = constraints.lower().iter().sum();
    let upper_sum: usize = constraints.upper().iter().sum();
    let slack_low = (k - lower_sum) / ell;
    let slack_high = (upper_sum - k) / ell;
    let half_width = constraints
        .lower()
        .iter()
        .zip(constraints.upper())
        .map(|(&l, &u)| (u - l) / 2)
        .min()
        .unwrap_or(0);
    slack_low.min(slack_high).min(half_width)
}

/// Integral `x*` with `Σ x*_j = k` and `L_j + Δ <= x*_j <= U_j - Δ`.
///
/// Starts every coordinate at `L_j + Δ` and raises them in group order,
/// each as far as `U_j - Δ` allows, until the sum reaches `k`.
pub fn find_center(constraints: &FairnessConstraints, delta: usize) -> Result<Vec<usize>> {
    if delta < 1 {
        return Err(Error::DeltaTooSmall { delta });
    }
    let k = constraints.k();
    let mut center: Vec<usize> = constraints.lower().iter().map(|&l| l + delta).collect();
    for j in 0..center.len() {
        let sum: usize = center.iter().sum();
        if sum < k {
            let others = sum - center[j];
            center[j] = (k - others).min(constraints.upper()[j] - delta);
        }
    }
    debug_assert_eq!(center.iter().sum::<usize>(), k);
    Ok(center)
}

/// Row-major `ℓ × ℓ` orthogonal matrix `R` with `R (1,…,1)ᵀ/√ℓ = e_ℓ`.
///
/// Built as the Householder reflection swapping the normalized all-ones
/// vector with the last basis vector, so `R` is symmetric and `R⁻¹ = Rᵀ = R`.
pub fn build_rotation(ell: usize) -> Vec<f64> {
    let mut r = vec![0.0; ell * ell];
    for i in 0..ell {
        r[i * ell + i] = 1.0;
    }
    if ell < 2 {
        return r;
    }
    let inv_sqrt = 1.0 / (ell as f64).sqrt();
    let mut v = vec![inv_sqrt; ell];
    v[ell - 1] -= 1.0;
    let norm_sq: f64 = v.iter().map(|a| a * a).sum();
    for i in 0..ell {
        for j in 0..ell {
            r[i * ell + j] -= 2.0 * v[i] * v[j] / norm_sq;
        }
    }
    r
}

/// `R v` for a row-major square matrix.
pub fn apply(r: &[f64], v: &[f64]) -> Vec<f64> {
    let n = v.len();
    (0..n)
        .map(|i| (0..n).map(|j| r[i * n + j] * v[j]).sum())
        .collect()
}

/// `Rᵀ v` for a row-major square matrix.
pub fn apply_transpose(r: &[f64], v: &[f64]) -> Vec<f64> {
    let n = v.len();
    (0..n)
        .map(|j| (0..n).map(|i| r[i * n + j] * v[i]).sum())
        .collect()
}

/// Everything the walk needs about one constraint set.
#[derive(Debug, Clone)]
pub struct PolytopeGeometry {
    constraints: FairnessConstraints,
    delta: usize,
    center: Vec<usize>,
    rotation: Vec<f64>,
    expansion: f64,
    /// Bounds of the expanded polytope `K'' = (1 + √ℓ/Δ)(K - x*)` per coordinate.
    z_lower: Vec<f64>,
    z_upper: Vec<f64>,
}

impl PolytopeGeometry {
    pub fn new(constraints: &FairnessConstraints) -> Result<Self> {
        let delta = compute_delta(constraints);
        let ell = constraints.ell();
        // A single group leaves one feasible point and nothing to expand.
        let (center, expansion) = if ell == 1 {
            (vec![constraints.k()], 1.0)
        } else {
            (
                find_center(constraints, delta)?,
                1.0 + (ell as f64).sqrt() / delta as f64,
            )
        };
        let z_lower = constraints
            .lower()
            .iter()
            .zip(&center)
            .map(|(&l, &c)| expansion * (l as f64 - c as f64))
            .collect();
        let z_upper = constraints
            .upper()
            .iter()
            .zip(&center)
            .map(|(&u, &c)| expansion * (u as f64 - c as f64))
            .collect();
        Ok(Self {
            constraints: constraints.clone(),
            delta,
            center,
            rotation: build_rotation(ell),
            expansion,
            z_lower,
            z_upper,
        })
    }

    pub fn constraints(&self) -> &FairnessConstraints {
        &self.constraints
    }

    pub fn ell(&self) -> usize {
        self.constraints.ell()
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn center(&self) -> &[usize] {
        &self.center
    }

    pub fn rotation(&self) -> &[f64] {
        &self.rotation
    }

    /// The factor `1 + √ℓ/Δ`.
    pub fn expansion(&self) -> f64 {
        self.expansion
    }

    pub fn z_lower(&self) -> &[f64] {
        &self.z_lower
    }

    pub fn z_upper(&self) -> &[f64] {
        &self.z_upper
    }

    /// Membership in `K''` up to `tol` per bound (the hyperplane condition is
    /// checked to the same tolerance).
    pub fn in_expanded(&self, z: &[f64], tol: f64) -> bool {
        z.len() == self.ell()
            && z.iter().sum::<f64>().abs() <= tol * self.ell() as f64
            && z.iter()
                .zip(self.z_lower.iter().zip(&self.z_upper))
                .all(|(&v, (&lo, &hi))| v >= lo - tol && v <= hi + tol)
    }

    /// Exact membership of an integer offset in `K' = K - x*`.
    pub fn in_translated(&self, x: &[i64]) -> bool {
        x.len() == self.ell()
            && x.iter().sum::<i64>() == 0
            && x.iter().enumerate().all(|(j, &v)| {
                let c = self.center[j] as i64;
                let lo = self.constraints.lower()[j] as i64 - c;
                let hi = self.constraints.upper()[j] as i64 - c;
                lo <= v && v <= hi
            })
    }

    /// `e^{-2ℓ√ℓ/Δ}`, the volume-ratio lower bound on acceptance before the
    /// oracle's TV error is subtracted.
    pub fn acceptance_volume_bound(&self) -> f64 {
        let ell = self.ell() as f64;
        (-2.0 * ell * ell.sqrt() / self.delta as f64).exp()
    }

    /// Lower bound on the per-attempt acceptance probability for a walk
    /// whose output is within `tv_delta` of uniform.
    pub fn acceptance_lower_bound(&self, tv_delta: f64) -> f64 {
        self.acceptance_volume_bound() - tv_delta
    }

    /// Whether `tv_delta < e^{-2ℓ√ℓ/Δ}`, the regime in which acceptance is
    /// bounded away from zero.
    pub fn guarantee_holds(&self, tv_delta: f64) -> bool {
        tv_delta < self.acceptance_volume_bound()
    }
}
