//! Exact arithmetic over Galois rings and skew polynomial rings for building
//! and verifying quasi-recursive MDS matrices.

pub mod algebra;
pub mod arith;
pub mod construct;
pub mod error;
pub mod json;
pub mod matrix;
pub mod oracle;
pub mod report;
pub mod ring;
pub mod skew;
pub mod vandermonde;

pub use error::{Error, Result};
pub use ring::{
    extend_ring, in_base_subring, make_ring, same_ring, ArithOp, Embedding, Extension,
    ResidueElement, ResidueField, Ring, RingConfig, RingContext, RingElement,
};
pub use matrix::{
    check_quasi_involutory, companion, determinant, is_mds, is_mds_ring_side, twisted_chain,
    GRMatrix,
};
pub use report::{VerificationReport, Witness};
pub use skew::{
    build_w_poly, is_central, is_right_root, right_divides, right_divmod, right_eval,
    right_eval_by_division, splitting_degree, MAX_ROOT_SET,
    right_roots_of_unity, sigma_norm, smul, RightRoots, SigmaNormTable, SkewPoly,
};
pub use vandermonde::{
    classical_vdm_det, gen_vandermonde, indexed_vdm_det, linearized_det, linearized_matrix,
    mds_via_vandermonde, ExponentSet, GenVandermonde,
};
pub use construct::{
    guard_constant_term, perturb_coefficients, working_degree, ConstructionResult,
    ConstructionSpec, Constructor, Family,
};
pub use oracle::{
    min_distance, min_distance_in, support_basis, weight_criterion_full,
    weight_criterion_full_in, weight_criterion_support, weight_criterion_support_in, CodeInstance,
    Symbols, ENUMERATION_BUDGET,
};
pub use json::{literal_list, parse_element, parse_element_list, MatrixDoc, PolyDoc, ResultDoc};
