use rand::Rng;
use rand_distr::StandardNormal;

use super::geometry::{apply_transpose, PolytopeGeometry};
use crate::error::{Error, Result};

/// Tolerance for the membership check on emitted points.
const MEMBERSHIP_TOL: f64 = 1e-9;

/// Hit-and-run chain on the expanded polytope `K''`.
///
/// The state lives in the rotated space, where `K''` is full-dimensional in
/// the first `ℓ - 1` coordinates and the last coordinate is fixed at zero.
/// Points are mapped back with `Rᵀ`.
#[derive(Debug, Clone)]
pub struct HitAndRun {
    /// Rotated coordinates, length `ℓ` with the last entry always zero.
    w: Vec<f64>,
    steps_taken: u64,
}

impl HitAndRun {
    /// Starts at the origin (the image of the integral center) and runs
    /// `burn_in` steps.
    pub fn start<R: Rng + ?Sized>(
        geometry: &PolytopeGeometry,
        burn_in: usize,
        rng: &mut R,
    ) -> Self {
        let mut chain = Self {
            w: vec![0.0; geometry.ell()],
            steps_taken: 0,
        };
        chain.advance(geometry, burn_in, rng);
        chain
    }

    pub fn steps_taken(&self) -> u64 {
        self.steps_taken
    }

    pub fn advance<R: Rng + ?Sized>(
        &mut self,
        geometry: &PolytopeGeometry,
        steps: usize,
        rng: &mut R,
    ) {
        let ell = geometry.ell();
        if ell < 2 {
            return;
        }
        let r = geometry.rotation();
        let (lower, upper) = (geometry.z_lower(), geometry.z_upper());
        let mut dir = vec![0.0; ell - 1];
        let mut dz = vec![0.0; ell];
        let mut z = apply_transpose(r, &self.w);
        for _ in 0..steps {
            for d in dir.iter_mut() {
                *d = rng.sample(StandardNormal);
            }
            // dz = Rᵀ (dir, 0)
            for (j, out) in dz.iter_mut().enumerate() {
                *out = dir
                    .iter()
                    .enumerate()
                    .map(|(i, d)| r[i * ell + j] * d)
                    .sum();
            }

            let mut t_min = f64::NEG_INFINITY;
            let mut t_max = f64::INFINITY;
            for j in 0..ell {
                let slope = dz[j];
                if slope.abs() < 1e-300 {
                    continue;
                }
                let a = (lower[j] - z[j]) / slope;
                let b = (upper[j] - z[j]) / slope;
                let (lo, hi) = if slope > 0.0 { (a, b) } else { (b, a) };
                t_min = t_min.max(lo);
                t_max = t_max.min(hi);
            }
            self.steps_taken += 1;
            // Rounding at a vertex can leave an empty chord; stay put.
            if t_min >= t_max || !t_min.is_finite() || !t_max.is_finite() {
                continue;
            }
            let t = rng.gen_range(t_min..t_max);
            for (w, d) in self.w.iter_mut().zip(&dir) {
                *w += t * d;
            }
            for (zj, d) in z.iter_mut().zip(&dz) {
                *zj += t * d;
            }
        }
    }

    /// Current point in `K''`, projected onto `Σ z_j = 0`.
    pub fn point(&self, geometry: &PolytopeGeometry) -> Result<Vec<f64>> {
        let mut z = apply_transpose(geometry.rotation(), &self.w);
        let mean = z.iter().sum::<f64>() / z.len() as f64;
        for v in &mut z {
            *v -= mean;
        }
        for (j, &v) in z.iter().enumerate() {
            if v < geometry.z_lower()[j] - MEMBERSHIP_TOL
                || v > geometry.z_upper()[j] + MEMBERSHIP_TOL
            {
                return Err(Error::WalkNotMixed {
                    coordinate: j,
                    value: v,
                });
            }
        }
        Ok(z)
    }
}
