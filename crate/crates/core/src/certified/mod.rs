//! Certified verification of the real-valued bounds: enclosures of the
//! q-series constants and margin-checked comparisons with precision
//! escalation.

mod checks;
mod report;
mod tail;

pub use checks::{
    alpha, apostol_bound_check, asymptotic_ratio, asymptotic_ratio_value, lemma13_check, product_bound_check,
    product_bound_row, product_bound_value, prop1_check, prop1_value, prop2_check, prop2_value, stirling_binom_check,
    theorem3_check, theorem3_row, PRODUCT_DEPTH_CAP,
};
pub use report::{
    certify_less, Certified, Claim, MarginScale, Outcome, Point, PrecisionPolicy, VerificationReport,
    PRECISION_CAP_ENV,
};
pub use tail::{
    euler_partial_product, euler_product_enclosure, euler_product_to_width, euler_product_upper, weighted_sum_enclosure, weighted_sum_upper,
    EulerProductScan, PartialProduct, TailParams, WeightedSumScan,
};
