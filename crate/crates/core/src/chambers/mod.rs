//! The resonance arrangement `|μ_I| = |ν_J|`, polynomiality inside its
//! chambers, and the wall-crossing formula between adjacent chambers.

mod interpolate;
mod polynomial;
mod sampling;
mod wall;
mod wallcross;

pub use interpolate::{
    interpolate_in_chamber, interpolate_polynomial, monomials_up_to, solve_exact,
};
pub use polynomial::{
    bernoulli_factor, check_bernoulli_relation, symbolic_polynomial, verify_spp, BernoulliCheck,
    ChamberPolynomial, CheckResult, SppReport,
};
pub use sampling::{chamber_representatives, sample_in_chamber, sample_with_signature};
pub use wall::{chamber_signature, signature_of, wall_list, ChamberSignature, Wall};
pub use wallcross::{
    sample_across, wall_crossing_lhs, wall_crossing_prefactor, wall_crossing_rhs, WallCrossingSpec,
};
