//! Exact algorithms for pairs of Mahler equations
//!
//! ```text
//! f(x^{p^m}) + b_{m-1}(x) f(x^{p^{m-1}}) + … + b_0(x) f(x) = 0
//! ```
//!
//! in two multiplicatively independent radices `p` and `q`: series
//! solutions, the consistent first-order system they induce, certified
//! rational reconstruction of a common solution, and floating-point growth
//! diagnostics.

pub mod exactnum;
pub mod mahler;
pub mod probe;
pub mod rationality;
pub mod sysbuild;

pub use exactnum::{
    laurent_expand, nullspace, rat, ratio, section_ratfunc, ExactError, LaurentTrunc, Poly,
    RatFunc, RatMatrix, Rational,
};
pub use mahler::{
    apply_operator, normalize_equation, solve_bound, solve_series, MahlerEquation, MahlerError,
    Seed,
};
pub use probe::{
    auto_r0, continue_outward, growth_check, radius_estimate, GrowthReport, ProbeError,
    RadiusEstimate,
};
pub use rationality::{
    certify_rational, induced_equation, pade_reconstruct, verify_certificate, CertifyError,
    CertifyFailure, FailureReason, PadeError, RationalityCertificate,
};
pub use sysbuild::{
    build_system, check_consistency, lift_dependence_check, lin_dep_test, mult_independent, Caps,
    DependenceResult, MahlerSystem, SysError, Verdict,
};
