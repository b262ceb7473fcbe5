//! Approximately uniform sampling of group-fair representations with a
//! random walk on an expanded copy of the representation polytope.
//!
//! The polytope `K` is translated to an integral center `x*`, scaled by
//! `1 + √ℓ/Δ`, and sampled with a hit-and-run chain. Each continuous point is
//! rounded to the lattice and accepted if it lands back inside `K - x*`.
//! Every rounding fiber of an interior lattice point is a translate of every
//! other and lies wholly inside the expanded polytope, so accepted points are
//! as close to uniform as the chain is.
//!
//! Instances with `Δ < 1` are refused with [`Error::DeltaTooSmall`]; use
//! [`crate::dp`] for them.

mod geometry;
mod hit_and_run;
mod rounding;

pub use geometry::{
    apply, apply_transpose, build_rotation, compute_delta, find_center, PolytopeGeometry,
};
pub use hit_and_run::HitAndRun;
pub use rounding::round_to_lattice;

use rand::Rng;

use crate::error::{Error, Result};
use crate::model::{FairnessConstraints, GroupRepresentation};

/// `e^{-2}`; the target TV distance must stay below it.
pub const TV_DELTA_LIMIT: f64 = 0.135_335_283_236_612_7;

#[derive(Debug, Clone, PartialEq)]
pub struct WalkConfig {
    /// Target total-variation distance `δ` of the continuous sampler.
    pub tv_delta: f64,
    /// Steps before the first emitted point; default `1000 (ℓ - 1)`.
    pub burn_in: Option<usize>,
    /// Steps between emitted points; default `100 (ℓ - 1)²`.
    pub step_count: Option<usize>,
    /// Consecutive rejections tolerated; default
    /// `10 ⌈e^{2ℓ^{1.5}/Δ}⌉` clamped to `[100, 10⁶]`.
    pub max_rejections: Option<usize>,
}

impl Default for WalkConfig {
    fn default() -> Self {
        Self {
            tv_delta: 0.05,
            burn_in: None,
            step_count: None,
            max_rejections: None,
        }
    }
}

impl WalkConfig {
    pub fn with_tv_delta(tv_delta: f64) -> Self {
        Self {
            tv_delta,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tv_delta > 0.0 && self.tv_delta < TV_DELTA_LIMIT) {
            return Err(Error::InvalidWalkConfig(format!(
                "tv_delta must lie in (0, e^-2), got {}",
                self.tv_delta
            )));
        }
        for (name, v) in [
            ("burn_in", self.burn_in),
            ("step_count", self.step_count),
            ("max_rejections", self.max_rejections),
        ] {
            if v == Some(0) {
                return Err(Error::InvalidWalkConfig(format!("{name} must be positive")));
            }
        }
        Ok(())
    }

    pub fn burn_in_for(&self, ell: usize) -> usize {
        self.burn_in.unwrap_or(1000 * ell.saturating_sub(1)).max(1)
    }

    pub fn step_count_for(&self, ell: usize) -> usize {
        let d = ell.saturating_sub(1);
        self.step_count.unwrap_or(100 * d * d).max(1)
    }

    pub fn max_rejections_for(&self, geometry: &PolytopeGeometry) -> usize {
        self.max_rejections.unwrap_or_else(|| {
            let ell = geometry.ell() as f64;
            let expected = (2.0 * ell.powf(1.5) / geometry.delta() as f64).exp().ceil();
            (10.0 * expected).clamp(100.0, 1e6) as usize
        })
    }
}

/// One continuous draw from the expanded polytope, starting a fresh chain.
pub fn continuous_uniform_sample<R: Rng + ?Sized>(
    geometry: &PolytopeGeometry,
    config: &WalkConfig,
    rng: &mut R,
) -> Result<Vec<f64>> {
    config.validate()?;
    let ell = geometry.ell();
    let mut chain = HitAndRun::start(geometry, config.burn_in_for(ell), rng);
    chain.advance(geometry, config.step_count_for(ell), rng);
    chain.point(geometry)
}

/// A running walk that emits accepted lattice points on demand.
#[derive(Debug, Clone)]
pub struct WalkSampler {
    geometry: PolytopeGeometry,
    chain: HitAndRun,
    step_count: usize,
    max_rejections: usize,
    attempts: u64,
    accepted: u64,
}

impl WalkSampler {
    pub fn new<R: Rng + ?Sized>(
        constraints: &FairnessConstraints,
        config: &WalkConfig,
        rng: &mut R,
    ) -> Result<Self> {
        config.validate()?;
        let geometry = PolytopeGeometry::new(constraints)?;
        Ok(Self::from_geometry(geometry, config, rng))
    }

    pub fn from_geometry<R: Rng + ?Sized>(
        geometry: PolytopeGeometry,
        config: &WalkConfig,
        rng: &mut R,
    ) -> Self {
        let ell = geometry.ell();
        let chain = HitAndRun::start(&geometry, config.burn_in_for(ell), rng);
        Self {
            step_count: config.step_count_for(ell),
            max_rejections: config.max_rejections_for(&geometry),
            geometry,
            chain,
            attempts: 0,
            accepted: 0,
        }
    }

    pub fn geometry(&self) -> &PolytopeGeometry {
        &self.geometry
    }

    /// Rounded points tried so far (accepted plus rejected).
    pub fn attempts(&self) -> u64 {
        self.attempts
    }

    pub fn accepted(&self) -> u64 {
        self.accepted
    }

    pub fn acceptance_rate(&self) -> f64 {
        if self.attempts == 0 {
            return 0.0;
        }
        self.accepted as f64 / self.attempts as f64
    }

    pub fn sample<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<GroupRepresentation> {
        let center = self.geometry.center().to_vec();
        if self.geometry.ell() == 1 {
            self.attempts += 1;
            self.accepted += 1;
            return Ok(GroupRepresentation(center));
        }
        let mut rejections = 0;
        loop {
            self.chain.advance(&self.geometry, self.step_count, rng);
            let z = self.chain.point(&self.geometry)?;
            self.attempts += 1;
            if let Some(x) = round_to_lattice(&z).filter(|x| self.geometry.in_translated(x)) {
                self.accepted += 1;
                let point = x
                    .iter()
                    .zip(&center)
                    .map(|(&off, &c)| (c as i64 + off) as usize)
                    .collect();
                return Ok(GroupRepresentation(point));
            }
            rejections += 1;
            if rejections >= self.max_rejections {
                return Err(Error::RejectionBudgetExceeded { rejections });
            }
        }
    }
}

/// One approximately uniform representation from a fresh chain.
pub fn sample_representation<R: Rng + ?Sized>(
    constraints: &FairnessConstraints,
    config: &WalkConfig,
    rng: &mut R,
) -> Result<GroupRepresentation> {
    WalkSampler::new(constraints, config, rng)?.sample(rng)
}

#[cfg(test)]
mod tests {
    use std::collections::HashMap;

    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::eval::oracle::brute_force_enumerate;

    fn fc(k: usize, l: &[usize], u: &[usize]) -> FairnessConstraints {
        FairnessConstraints::new(k, l.to_vec(), u.to_vec()).unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(WalkConfig::default().validate().is_ok());
        assert!(WalkConfig::with_tv_delta(0.2).validate().is_err());
        assert!(WalkConfig::with_tv_delta(0.0).validate().is_err());
        let zero_steps = WalkConfig {
            step_count: Some(0),
            ..WalkConfig::default()
        };
        assert!(zero_steps.validate().is_err());
    }

    #[test]
    fn default_budgets() {
        let g = PolytopeGeometry::new(&fc(6, &[0, 0, 0], &[4, 4, 4])).unwrap();
        let cfg = WalkConfig::default();
        assert_eq!(cfg.burn_in_for(3), 2000);
        assert_eq!(cfg.step_count_for(3), 400);
        // 10 * ceil(e^{2 * 3^1.5 / 2}) = 10 * ceil(180.6)
        assert_eq!(cfg.max_rejections_for(&g), 1810);
    }

    #[test]
    fn zero_delta_is_refused() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let err = sample_representation(&fc(2, &[1, 1], &[1, 1]), &WalkConfig::default(), &mut rng);
        assert!(matches!(err, Err(Error::DeltaTooSmall { delta: 0 })));
    }

    #[test]
    fn continuous_points_stay_in_expanded_polytope() {
        let c = fc(6, &[0, 0, 0], &[4, 4, 4]);
        let g = PolytopeGeometry::new(&c).unwrap();
        let cfg = WalkConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut chain = HitAndRun::start(&g, cfg.burn_in_for(3), &mut rng);
        let mut mean = [0.0; 3];
        let n = 10_000;
        for _ in 0..n {
            chain.advance(&g, 20, &mut rng);
            let z = chain.point(&g).unwrap();
            assert!(g.in_expanded(&z, 1e-9));
            for j in 0..3 {
                mean[j] += z[j] / n as f64;
            }
        }
        // K'' is symmetric about 0 here; its diameter is 2 * 2 * (1 + √3/2) * √2 ≈ 10.5.
        let diameter = 4.0 * g.expansion() * 2f64.sqrt();
        for m in mean {
            assert!(m.abs() <= 0.05 * diameter, "mean {m}");
        }
    }

    #[test]
    fn segment_walk_is_uniform() {
        // ℓ = 2: K'' is a segment, and z_1 should be uniform on it.
        let c = fc(10, &[0, 0], &[10, 10]);
        let g = PolytopeGeometry::new(&c).unwrap();
        let (lo, hi) = (g.z_lower()[0], g.z_upper()[0]);
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let mut chain = HitAndRun::start(&g, 1000, &mut rng);
        let n = 100_000;
        let mut xs: Vec<f64> = (0..n)
            .map(|_| {
                chain.advance(&g, 1, &mut rng);
                chain.point(&g).unwrap()[0]
            })
            .collect();
        xs.sort_by(f64::total_cmp);
        let ks = xs
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let cdf = (x - lo) / (hi - lo);
                (cdf - i as f64 / n as f64)
                    .abs()
                    .max((cdf - (i + 1) as f64 / n as f64).abs())
            })
            .fold(0.0, f64::max);
        assert!(ks <= 0.02, "KS distance {ks}");
    }

    #[test]
    fn contracted_polytope_always_accepts() {
        // Points of K'/(1 + √ℓ/Δ) round into K'. Sample them by scaling
        // walk points of K'' by 1/s².
        let c = fc(30, &[2, 0, 5], &[14, 12, 20]);
        let g = PolytopeGeometry::new(&c).unwrap();
        let s2 = g.expansion() * g.expansion();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut chain = HitAndRun::start(&g, 2000, &mut rng);
        for _ in 0..5000 {
            chain.advance(&g, 10, &mut rng);
            let z: Vec<f64> = chain.point(&g).unwrap().iter().map(|v| v / s2).collect();
            let mean = z.iter().sum::<f64>() / 3.0;
            let z: Vec<f64> = z.iter().map(|v| v - mean).collect();
            if let Some(x) = round_to_lattice(&z) {
                assert!(g.in_translated(&x), "{z:?} -> {x:?}");
            }
        }
    }

    #[test]
    fn four_point_segment_is_near_uniform() {
        let c = fc(3, &[0, 0], &[3, 3]);
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let mut sampler = WalkSampler::new(&c, &WalkConfig::default(), &mut rng).unwrap();
        assert_eq!(sampler.geometry().delta(), 1);
        let points = brute_force_enumerate(3, &[0, 0], &[3, 3]).unwrap();
        let n = 100_000;
        let mut hist: HashMap<Vec<usize>, usize> = HashMap::new();
        for _ in 0..n {
            let x = sampler.sample(&mut rng).unwrap();
            assert!(x.is_group_fair(&c));
            *hist.entry(x.0).or_default() += 1;
        }
        let tv: f64 = points
            .iter()
            .map(|p| (hist.get(&p.0).copied().unwrap_or(0) as f64 / n as f64 - 0.25).abs())
            .sum::<f64>()
            / 2.0;
        assert!(tv <= 0.05, "tv {tv}");
    }

    #[test]
    fn acceptance_meets_volume_bound() {
        let c = fc(6, &[0, 0, 0], &[4, 4, 4]);
        let cfg = WalkConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut sampler = WalkSampler::new(&c, &cfg, &mut rng).unwrap();
        while sampler.attempts() < 10_000 {
            sampler.sample(&mut rng).unwrap();
        }
        let bound = sampler.geometry().acceptance_lower_bound(cfg.tv_delta);
        assert!(
            sampler.acceptance_rate() >= bound,
            "{} < {bound}",
            sampler.acceptance_rate()
        );
    }

    #[test]
    fn single_group_returns_center() {
        let c = fc(5, &[3], &[5]);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let x = sample_representation(&c, &WalkConfig::default(), &mut rng).unwrap();
        assert_eq!(x.0, vec![5]);
    }
}
