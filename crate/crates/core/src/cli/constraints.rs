use crate::error::Result;
use crate::model::FairnessConstraints;

/// Guards the ceil/floor against float noise such as `(0.85 - 0.1) * 100`
/// evaluating to `75.00000000000001`.
const ROUNDING_TOL: f64 = 1e-9;

/// `⌈(p_j - slack) i⌉` and `⌊(p_j + slack) i⌋`, clamped to `[0, i]`.
pub fn proportional_bounds(proportions: &[f64], i: usize, slack: f64) -> (Vec<usize>, Vec<usize>) {
    let clamp = |v: f64| v.max(0.0).min(i as f64) as usize;
    let n = i as f64;
    proportions
        .iter()
        .map(|&p| {
            (
                clamp(((p - slack) * n - ROUNDING_TOL).ceil()),
                clamp(((p + slack) * n + ROUNDING_TOL).floor()),
            )
        })
        .unzip()
}

/// `L_j = ⌈(p_j - η) k⌉`, `U_j = ⌊(p_j + η) k⌋`, clamped to `[0, k]`.
pub fn build_constraints(proportions: &[f64], k: usize, eta: f64) -> Result<FairnessConstraints> {
    let (lower, upper) = proportional_bounds(proportions, k, eta);
    FairnessConstraints::new(k, lower, upper)
}
