//! Shared fixtures for the benchmarks.

use starclean_core::{make_zmod, BuildConfig, StarRing};

pub fn zmod_identity(n: usize) -> StarRing {
    StarRing::with_identity(make_zmod(n).expect("valid modulus"))
        .expect("identity is an involution")
}

/// `M_n(Z_k)` with the transpose.
pub fn matrix_over_zmod(k: usize, n: usize) -> StarRing {
    StarRing::matrix(&zmod_identity(k), n, &BuildConfig::default()).expect("within the size cap")
}

pub fn swap_square(k: usize) -> StarRing {
    let factor = make_zmod(k).expect("valid modulus");
    StarRing::swap_product(&factor, &BuildConfig::default()).expect("within the size cap")
}
