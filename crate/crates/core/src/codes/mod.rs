//! Coding-theoretic building blocks: BCH parity checks, balanced and simplex
//! codes, product codes, and exhaustive distance, density and bias oracles.

mod balanced;
mod bch;
mod bias;
mod gf2m;
mod linear;
mod product;

pub use balanced::{balanced_code, max_balanced_length, BalancedConfig};
pub use bch::{bch_blocks, bch_parity_check, bch_syndrome_blocks};
pub use bias::{distribution_bias, BiasReport, BIAS_ENUM_CAP};
pub use gf2m::{Gf2m, PRIMITIVE_POLYS};
pub use linear::{
    min_distance, simplex_generator, weights_balanced, BiasCert, CertMethod, DistanceCert,
    LinearCode, DEFAULT_SEARCH_CAP, EXHAUSTIVE_DIM_CAP,
};
pub use product::{
    density_bound, flatten, product_density_check, tensor_membership, tensor_parity_check,
    unflatten, DensityReport, ProductCode, DENSITY_ENUM_CAP,
};
