//! Hodge-metric polynomials of nilpotent orbits, their Chern forms, the
//! stratum factorization, the restriction-limit check and the `M_π`
//! monomials.

pub mod chern;
pub mod factor;
pub mod limit;
pub mod metric;
pub mod mpi;

pub use chern::{chern_form_at, ChernForm, ChernSample};
pub use factor::{split_product, stratum_factorization, stratum_metric_polynomial, StratumFactorization};
pub use limit::{
    decade_scales, default_rays, default_tolerance, restriction_limit_check, restriction_limit_check_with, LimitReport,
    RayReport,
};
pub use metric::{
    hodge_metric_matrix, hodge_metric_matrix_with, hodge_metric_polynomial, hodge_metric_polynomial_with, FrameRule,
    HodgeMetricMatrix, MetricPolynomial,
};
pub use mpi::{in_convex_hull, m_pi_monomial_check, m_pi_summary, permutations, MPiReport, MPiSummary};
