use rand::Rng;
use rand_distr::{Distribution, Exp};

use super::config::{ParticleConfig, Update};
use crate::error::{invalid, Result};

/// Moves particle `k` (0-based) one site right if the target is empty.
pub fn try_jump(x: &mut [i64], k: usize) -> bool {
    if k == 0 || x[k - 1] > x[k] + 1 {
        x[k] += 1;
        true
    } else {
        false
    }
}

/// One discrete-time step, or one uniformized event of the continuous
/// dynamics (uniform particle choice; the caller advances the clock).
pub fn step_once<R: Rng + ?Sized>(x: &mut [i64], update: Update, rng: &mut R) {
    let n = x.len();
    match update {
        Update::Continuous => {
            let k = rng.gen_range(0..n);
            try_jump(x, k);
        }
        Update::Sequential(p) => {
            for k in 0..n {
                let free = k == 0 || x[k - 1] > x[k] + 1;
                if free && rng.gen::<f64>() < p {
                    x[k] += 1;
                }
            }
        }
        Update::Parallel(p) => {
            // right-to-left order lets each particle see its neighbour's old position
            let mut right_old = i64::MAX;
            for k in 0..n {
                let old = x[k];
                let free = k == 0 || right_old > old + 1;
                if free && rng.gen::<f64>() < p {
                    x[k] += 1;
                }
                right_old = old;
            }
        }
    }
}

/// Evolves `ic` for time `t` (a whole number of steps for discrete rules).
pub fn simulate<R: Rng + ?Sized>(ic: &ParticleConfig, t: f64, update: Update, rng: &mut R) -> Result<ParticleConfig> {
    update.validate()?;
    if !(t >= 0.0) {
        return Err(invalid("time must be non-negative"));
    }
    let mut out = ic.clone();
    let n = out.positions.len();
    if n == 0 {
        return Ok(out);
    }
    match update {
        Update::Continuous => {
            let clock = Exp::new(n as f64).expect("positive rate");
            let mut now = 0.0;
            loop {
                now += clock.sample(rng);
                if now > t {
                    break;
                }
                step_once(&mut out.positions, update, rng);
            }
        }
        _ => {
            if t.fract() != 0.0 {
                return Err(invalid("discrete-time rules need an integer time"));
            }
            for _ in 0..t as u64 {
                step_once(&mut out.positions, update, rng);
            }
        }
    }
    out.time = ic.time + t;
    Ok(out)
}
