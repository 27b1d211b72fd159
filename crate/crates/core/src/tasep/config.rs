use crate::error::{invalid, Result};

/// Particle positions `x_1 > x_2 > … > x_N` together with the initial data
/// they evolved from.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ParticleConfig {
    pub positions: Vec<i64>,
    pub initial: Vec<i64>,
    pub time: f64,
}

fn strictly_decreasing(v: &[i64]) -> bool {
    v.windows(2).all(|w| w[0] > w[1])
}

impl ParticleConfig {
    /// Configuration at time zero.
    pub fn new(initial: Vec<i64>) -> Result<Self> {
        if initial.is_empty() {
            return Err(invalid("at least one particle required"));
        }
        if !strictly_decreasing(&initial) {
            return Err(invalid("positions must be strictly decreasing in the particle index"));
        }
        Ok(Self { positions: initial.clone(), initial, time: 0.0 })
    }

    /// Step initial condition `y_k = -k`, `k = 1..=n`.
    pub fn step(n: usize) -> Result<Self> {
        Self::new((1..=n as i64).map(|k| -k).collect())
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Exclusion and right-monotonicity.
    pub fn is_valid(&self) -> bool {
        strictly_decreasing(&self.positions)
            && self.positions.len() == self.initial.len()
            && self.positions.iter().zip(&self.initial).all(|(x, y)| x >= y)
    }

    pub fn is_step(&self) -> bool {
        self.initial.iter().enumerate().all(|(i, &y)| y == -(i as i64) - 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub enum Update {
    Continuous,
    Sequential(f64),
    Parallel(f64),
}

impl Update {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Update::Continuous => Ok(()),
            Update::Sequential(p) | Update::Parallel(p) => {
                if p > 0.0 && p < 1.0 {
                    Ok(())
                } else {
                    Err(invalid(format!("jump probability must lie in (0, 1), got {p}")))
                }
            }
        }
    }

    pub fn is_discrete(&self) -> bool {
        !matches!(self, Update::Continuous)
    }
}

/// `P(x_{σ(k)}(t) ≥ s_k for all k)`.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct JointQuery {
    /// Particle indices, 1-based and strictly increasing.
    pub sigma: Vec<usize>,
    pub thresholds: Vec<i64>,
    pub time: f64,
    pub update: Update,
    /// Initial positions `y_1 > y_2 > …`.
    pub initial: Vec<i64>,
}

impl JointQuery {
    pub fn step(n: usize, sigma: Vec<usize>, thresholds: Vec<i64>, time: f64, update: Update) -> Self {
        Self { sigma, thresholds, time, update, initial: (1..=n as i64).map(|k| -k).collect() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.sigma.is_empty() {
            return Err(invalid("at least one particle index required"));
        }
        if self.sigma.len() != self.thresholds.len() {
            return Err(invalid("one threshold per particle index"));
        }
        if self.sigma[0] == 0 || !self.sigma.windows(2).all(|w| w[0] < w[1]) {
            return Err(invalid("indices must be 1-based and strictly increasing"));
        }
        if *self.sigma.last().unwrap() > self.initial.len() {
            return Err(invalid("index beyond the particle count"));
        }
        if !strictly_decreasing(&self.initial) {
            return Err(invalid("initial positions must be strictly decreasing"));
        }
        if !(self.time >= 0.0) {
            return Err(invalid("time must be non-negative"));
        }
        self.update.validate()?;
        if self.update.is_discrete() && self.time.fract() != 0.0 {
            return Err(invalid("discrete-time rules need an integer time"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_and_validation() {
        let c = ParticleConfig::step(3).unwrap();
        assert_eq!(c.positions, vec![-1, -2, -3]);
        assert!(c.is_valid() && c.is_step());
        assert!(ParticleConfig::new(vec![0, 0]).is_err());
        assert!(ParticleConfig::new(vec![]).is_err());
        assert!(Update::Parallel(1.0).validate().is_err());
        assert!(Update::Sequential(0.3).validate().is_ok());
        let q = JointQuery::step(5, vec![2, 4], vec![0, -1], 2.0, Update::Continuous);
        assert!(q.validate().is_ok());
        let bad = JointQuery { sigma: vec![4, 2], ..q.clone() };
        assert!(bad.validate().is_err());
        let frac = JointQuery { update: Update::Parallel(0.5), time: 1.5, ..q };
        assert!(frac.validate().is_err());
    }
}
