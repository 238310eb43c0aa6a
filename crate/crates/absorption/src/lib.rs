//! Subthreshold absorption: particle model with loss, entangled cross
//! sections from conventional ones, bright-squeezed-vacuum limit, and
//! linear/quadratic crossovers.

pub mod error;
pub mod model;
pub mod spec;

pub use error::{AbsorptionError, Result};
pub use model::{
    auto_alpha, bsv_tpa_rate, crossover_flux, entanglement_time_from_crossover, equivalent_absorber, particle_rates,
    photoemission_equivalent, sigma_e_from_sigma2, AbsorptionBreakdown, Crossovers, Regime, SigmaEstimate,
    BROAD_ABOVE, NARROW_BELOW,
};
pub use spec::{AbsorberRecord, AbsorberRegistry, AbsorberSpec, BUILTIN_ABSORBERS, SIGMA2_CONSISTENCY_TOL};
