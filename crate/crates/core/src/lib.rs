//! Finite commutative rings, their multiplicative monoids, homomorphism and
//! automorphism enumeration, the matrix description of endomorphisms of a
//! product monoid, and a checker for factor-wise automorphism
//! decomposition of products of finite local rings.

pub mod catalog;
pub mod config;
pub mod error;
pub mod exec;
pub mod hom;
pub mod matrix;
pub mod monoid;
pub mod parse;
pub mod report;
pub mod rigidity;
pub mod ring;

pub use config::Config;
pub use error::{Error, Result};
pub use exec::Execution;
pub use hom::{
    canonical_homs, classify_ring_hom, compose, enumerate_automorphisms, enumerate_homs, MonoidHom,
    ZeroDivisorVerdict,
};
pub use matrix::{
    identity_matrix, inverse_pair_check, make_matrix, matrix_inverse, odot, odot_reversed, psi, psi_inv,
    unit_factor_check, HomMatrix, ProductContext,
};
pub use monoid::{commuting_images, mul_monoid_of, product_monoid, units_center_absorbing, FiniteMonoid, SubsetHandle};
pub use parse::{parse_spec, parse_spec_with_cap};
pub use rigidity::{
    find_nondiagonal_automorphisms, locate_zero_indices, offdiagonal_report, verify_decomposition,
    IndexAssignment, RigidityReport,
};
pub use ring::{construct_ring, ElementProfile, FiniteRing, RingProfile, RingSpec};
