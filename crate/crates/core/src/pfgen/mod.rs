//! Random Pólya frequency sequences and exact membership checks.

mod checks;
mod generators;
mod precision;
mod transforms;

pub use checks::{check_log_concave, check_pf_inf, check_pf_r, MinorCheckResult, MinorWitness};
pub use generators::{
    default_delta_min, default_denominator_bound, gen_pf2, gen_pf_inf, gen_pf_r_cosbound, gen_pf_r_sector,
    gen_q3, log_uniform_rational, recover_deltas, uniform_rational, GeneratorClass, GeneratorParams,
    GeneratorSpec, Sample, SectorPair,
};
pub use precision::{cos_bracket, kv_delta_bound, pi_lower, sqrt_lower};
pub use transforms::{branden_operator, grabarek_transform, BrandenVariant};
