//! Canonical instance encoding and the bit-budget formula family.

mod bits;
mod instance;
mod lambert;
mod metrics;

pub use bits::{BitReader, BitString, BitStringError};
pub use instance::{
    decode_clause, decode_instance, encode_clause, encode_instance, CodecError, Decoded,
    EncodedInstance,
};
pub use lambert::{lambert_w, n_lower_bound, LambertError, ENCODING_SLOPE_D};
pub use metrics::{
    accessible_info, bound15, bound15_holds, content_exceeds, crossover, info_production,
    logarithmic_length, paper_bit_length, permutation_info, sat_content,
    smallest_stable_bound15_n, stirling_permutation_bracket, uniform_length, CostModel,
    PermutationInfo,
};
