//! Seeded Brownian increments on a dyadic multi-resolution lattice.
//!
//! A lattice is generated once at its finest level. Every coarser level is
//! obtained by summing consecutive blocks of fine increments, so simulations
//! at different step sizes are driven by the same Brownian path.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Upper bound on the number of dyadic levels above the base grid.
const MAX_LEVELS: u32 = 40;

#[derive(Debug, Clone, PartialEq)]
pub struct WienerLattice {
    seed: u64,
    horizon: f64,
    base_steps: usize,
    finest_level: u32,
    /// One row of finest-level increments per independent driving motion.
    increments: Vec<Vec<f64>>,
}

impl WienerLattice {
    /// Draws `base_steps * 2^levels` i.i.d. `N(0, T / (base_steps * 2^levels))`
    /// increments for each of `drivers` independent motions.
    pub fn generate(
        seed: u64,
        horizon: f64,
        base_steps: usize,
        levels: u32,
        drivers: usize,
    ) -> Result<Self> {
        if !(horizon.is_finite() && horizon > 0.0) {
            return Err(Error::config(format!("horizon must be positive, got {horizon}")));
        }
        if base_steps == 0 {
            return Err(Error::config("base_steps must be at least 1"));
        }
        if levels > MAX_LEVELS {
            return Err(Error::config(format!("at most {MAX_LEVELS} levels supported, got {levels}")));
        }
        if !(1..=2).contains(&drivers) {
            return Err(Error::config(format!("1 or 2 drivers supported, got {drivers}")));
        }
        let n = base_steps
            .checked_mul(1usize << levels)
            .ok_or_else(|| Error::config("lattice size overflows"))?;
        let sd = (horizon / n as f64).sqrt();

        let increments = (0..drivers)
            .map(|d| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(d as u64);
                (0..n)
                    .map(|_| sd * rng.sample::<f64, _>(StandardNormal))
                    .collect()
            })
            .collect();

        Ok(Self {
            seed,
            horizon,
            base_steps,
            finest_level: levels,
            increments,
        })
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn base_steps(&self) -> usize {
        self.base_steps
    }

    pub fn finest_level(&self) -> u32 {
        self.finest_level
    }

    pub fn drivers(&self) -> usize {
        self.increments.len()
    }

    /// Number of increments at `level`.
    pub fn steps_at(&self, level: u32) -> usize {
        self.base_steps << level
    }

    /// Step size at `level`.
    pub fn dt_at(&self, level: u32) -> f64 {
        self.horizon / self.steps_at(level) as f64
    }

    /// Finest-level increments of one driver.
    pub fn finest(&self, driver: usize) -> &[f64] {
        &self.increments[driver]
    }

    /// Increments of the first driver at `level`.
    pub fn coarsen(&self, level: u32) -> Result<Vec<f64>> {
        self.coarsen_driver(0, level)
    }

    /// Increments of `driver` at `level`; entry `k` is the left-to-right sum
    /// of fine increments `2^(L-level) * k .. 2^(L-level) * (k+1)`.
    pub fn coarsen_driver(&self, driver: usize, level: u32) -> Result<Vec<f64>> {
        if level > self.finest_level {
            return Err(Error::config(format!(
                "level {level} exceeds finest level {}",
                self.finest_level
            )));
        }
        let fine = self
            .increments
            .get(driver)
            .ok_or_else(|| Error::config(format!("driver {driver} not present")))?;
        let block = 1usize << (self.finest_level - level);
        Ok(fine
            .chunks_exact(block)
            .map(|c| c.iter().fold(0.0, |acc, v| acc + v))
            .collect())
    }
}

/// Seed of the lattice for one Monte-Carlo path, independent of scheduling.
pub fn path_seed(master: u64, path: u64) -> u64 {
    splitmix64(splitmix64(master) ^ path.wrapping_mul(0xD1B5_4A32_D192_ED03))
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// One-dimensional driving increment reconstructed from the two motions of
/// the squared-OU representation of CIR:
/// `(x1 dW1 + x2 dW2) / sqrt(x1^2 + x2^2)`.
pub fn cir_effective_increment(x1: f64, x2: f64, dw1: f64, dw2: f64) -> Result<f64> {
    let norm = x1.hypot(x2);
    if norm == 0.0 || !norm.is_finite() {
        return Err(Error::DegenerateState(format!(
            "effective increment undefined at (x1, x2) = ({x1}, {x2})"
        )));
    }
    Ok((x1 * dw1 + x2 * dw2) / norm)
}
