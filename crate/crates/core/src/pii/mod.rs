//! Purely imaginary Ablowitz–Segur solutions of Painlevé II, computed in the
//! real form `u = ip`, `p'' = xp − 2p³ + μ/2`.

pub mod fit;
pub mod series;
pub mod shoot;
pub mod taylor;

pub use fit::{fit_envelope, EnvelopeFit};
pub use series::{asym_osc_minus, asym_series_plus, RightSeries};
pub use shoot::{shoot_solution, solution_with_param, PiiSolution, ShootConfig, SolutionRecord};
pub use taylor::{integrate_pii, Trajectory};
