//! Exact uniform sampling of group-fair representations by counting.
//!
//! `D[k'][i]` is the number of integer vectors `(x_1, ..., x_i)` with
//! `L_h <= x_h <= U_h` and `x_1 + ... + x_i = k'`. Sampling walks the groups
//! from last to first, drawing `x_i` with probability
//! `D[k' - x_i][i - 1] / D[k'][i]`; the product telescopes to `1 / D[k][ℓ]`.

use num_bigint::{BigUint, RandBigInt};
use num_traits::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::model::{FairnessConstraints, GroupRepresentation};

/// The `(k + 1) × (ℓ + 1)` table of exact lattice-point counts.
#[derive(Debug, Clone)]
pub struct CountTable {
    constraints: FairnessConstraints,
    /// Group-major: `counts[i * (k + 1) + k']`.
    counts: Vec<BigUint>,
}

impl CountTable {
    /// Builds the table with the direct recurrence
    /// `D[k'][i] = Σ_{L_i <= x <= U_i} D[k' - x][i - 1]`, which costs
    /// `O(k²ℓ)` big-integer additions.
    pub fn build(constraints: &FairnessConstraints) -> Result<Self> {
        let k = constraints.k();
        let mut counts = Self::initial(constraints);
        for i in 1..=constraints.ell() {
            let (lo, hi) = (constraints.lower()[i - 1], constraints.upper()[i - 1]);
            let (prev, cur) = counts.split_at_mut(i * (k + 1));
            let prev = &prev[(i - 1) * (k + 1)..];
            for (kp, cell) in cur[..=k].iter_mut().enumerate() {
                if kp < lo {
                    continue;
                }
                let mut sum = BigUint::zero();
                for x in lo..=hi.min(kp) {
                    sum += &prev[kp - x];
                }
                *cell = sum;
            }
        }
        Self::finish(constraints, counts)
    }

    /// Same table via a sliding window over `D[·][i - 1]`, `O(kℓ)` additions.
    /// Used for very large instances and as a second route to the counts.
    pub fn build_windowed(constraints: &FairnessConstraints) -> Result<Self> {
        let k = constraints.k();
        let mut counts = Self::initial(constraints);
        for i in 1..=constraints.ell() {
            let (lo, hi) = (constraints.lower()[i - 1], constraints.upper()[i - 1]);
            let (prev, cur) = counts.split_at_mut(i * (k + 1));
            let prev = &prev[(i - 1) * (k + 1)..];
            // window = Σ prev[t] for t in [kp - hi, kp - lo] ∩ [0, k]
            let mut window = BigUint::zero();
            for kp in 0..=k {
                if kp >= lo {
                    window += &prev[kp - lo];
                }
                if kp > hi {
                    window -= &prev[kp - hi - 1];
                }
                cur[kp] = window.clone();
            }
        }
        Self::finish(constraints, counts)
    }

    fn initial(constraints: &FairnessConstraints) -> Vec<BigUint> {
        let width = constraints.k() + 1;
        let mut counts = vec![BigUint::zero(); width * (constraints.ell() + 1)];
        counts[0] = BigUint::from(1u32);
        counts
    }

    fn finish(constraints: &FairnessConstraints, counts: Vec<BigUint>) -> Result<Self> {
        let table = Self {
            constraints: constraints.clone(),
            counts,
        };
        if table.total().is_zero() {
            return Err(Error::NoFeasiblePoint);
        }
        Ok(table)
    }

    pub fn constraints(&self) -> &FairnessConstraints {
        &self.constraints
    }

    /// `D[k'][i]`.
    pub fn get(&self, k_prime: usize, i: usize) -> &BigUint {
        &self.counts[i * (self.constraints.k() + 1) + k_prime]
    }

    /// `D[k][ℓ]`, the number of group-fair representations.
    pub fn total(&self) -> &BigUint {
        self.get(self.constraints.k(), self.constraints.ell())
    }

    /// Draws one representation, each lattice point of `K` with probability
    /// exactly `1 / D[k][ℓ]`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> GroupRepresentation {
        let c = &self.constraints;
        let mut x = vec![0usize; c.ell()];
        let mut remaining = c.k();
        for i in (1..=c.ell()).rev() {
            let lo = c.lower()[i - 1];
            let hi = c.upper()[i - 1].min(remaining);
            let mut r = rng.gen_biguint_below(self.get(remaining, i));
            let mut chosen = hi;
            for v in lo..=hi {
                let weight = self.get(remaining - v, i - 1);
                if r < *weight {
                    chosen = v;
                    break;
                }
                r -= weight;
            }
            x[i - 1] = chosen;
            remaining -= chosen;
        }
        debug_assert_eq!(remaining, 0);
        GroupRepresentation(x)
    }
}

/// `D[k][ℓ]` for the given constraints, via the linear-time build.
pub fn count_fair_representations(constraints: &FairnessConstraints) -> BigUint {
    CountTable::build_windowed(constraints)
        .map(|t| t.total().clone())
        .unwrap_or_default()
}

/// One uniform draw from a prebuilt table.
pub fn sample_representation<R: Rng + ?Sized>(
    table: &CountTable,
    rng: &mut R,
) -> Result<GroupRepresentation> {
    if table.total().is_zero() {
        return Err(Error::NoFeasiblePoint);
    }
    Ok(table.sample(rng))
}
