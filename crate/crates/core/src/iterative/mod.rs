//! Iterative and enumerative optimizers for binary configurations.

mod evolution;
mod exhaustive;
mod gradient;
mod hill_climb;

pub(crate) use evolution::grid_side as evolution_grid_side;
pub use evolution::{es_optimize, kernel_rollout, EsParams, Kernel};
pub use exhaustive::{exhaustive, DEFAULT_EXHAUSTIVE_LIMIT};
pub use gradient::{gradient, gradient_ascent, gradient_ascent_from, GradientParams};
pub use hill_climb::hill_climb;
