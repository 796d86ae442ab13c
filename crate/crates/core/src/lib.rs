//! Plug-in Shannon entropy estimation from count histograms, with the exact
//! first-order uncertainty of the estimate under a multinomial null.
//!
//! * [`population`]: exact functionals of a known distribution.
//! * [`estimators`]: plug-in, Miller-Madow and error-bar estimates from counts.
//! * [`maxvar`]: the distribution that maximizes the variance parameter.
//! * [`montecarlo`]: seeded multinomial sampling and convergence experiments.
//!
//! ```
//! use entvar_core::{estimators, CountHistogram};
//!
//! let hist = CountHistogram::new(vec![1, 2, 3, 4, 5]).unwrap();
//! let sigma = estimators::entropy_error_bar(&hist);
//! assert!((sigma - 0.1146).abs() < 1e-4);
//! ```

pub mod error;
pub mod estimators;
pub mod io;
pub mod maxvar;
pub mod montecarlo;
pub mod population;
pub mod simplex;
mod sum;
pub mod types;

pub use error::{Error, Result};
pub use estimators::{EntropyEstimate, SupportSize, WorstCaseBound};
pub use maxvar::MaxVarSolution;
pub use montecarlo::{ExperimentConfig, ExperimentResult, ExperimentRow, SampleMoments};
pub use population::PopulationStats;
pub use types::{CountHistogram, ProbabilityDistribution};
