//! Totally asymmetric simple exclusion: exact transition probabilities,
//! correlation kernels for step initial data, joint distributions, and
//! simulators for continuous and discrete time.

mod config;
mod contour;
mod joint;
mod kernel;
mod simulate;

pub use config::{JointQuery, ParticleConfig, Update};
pub use contour::{eval_f, transition_prob, ContourSpec, MAX_NODES, MIN_NODES};
pub use joint::{joint_distribution, ExtendedKernel};
pub use kernel::{kernel_discrete, kernel_step, kernel_step_contour, step_phi, step_psi, step_shift, StepKernel};
pub use simulate::{simulate, step_once, try_jump};
