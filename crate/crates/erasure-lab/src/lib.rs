//! A laboratory for erasure list decoding of linear codes.
//!
//! Everything here is exact and deterministic: finite-field arithmetic is
//! table driven, linear algebra is integer-indexed Gaussian elimination, and
//! the combinatorial searches (generalized Hamming weights, erasure patterns,
//! subspace enumeration) are exhaustive within explicit budgets. Randomized
//! experiments draw from a seeded, splittable generator so every run is
//! reproducible bit for bit.
//!
//! Module overview:
//!
//! * [`gf`] - small finite fields GF(q), q <= 2^16, with exp/log tables.
//! * [`matgf`] - dense matrices over those fields: RREF, rank, kernels,
//!   affine solving, and a text serialization.
//! * [`code`] - linear codes given by generator matrices: generalized
//!   Hamming weights, erasure list decodability, erasure radii.
//! * [`erasure`] - erasure patterns and the list decoder itself.
//! * [`randcode`] - random parity-check ensembles: full-rank probabilities
//!   and seeded decodability trials.
//! * [`agcode`] - Reed-Solomon and Hermitian-curve codes plus the bounds
//!   specific to codes from curves.
//! * [`bounds`] - rate bounds: q-ary entropy, list-size rate lower bounds,
//!   and the erasure Johnson bound.
//! * [`cli`] - the `erasure-lab` command-line front end over all of the
//!   above.

pub mod agcode;
pub mod bounds;
pub mod cli;
pub mod code;
pub mod erasure;
pub mod gf;
pub mod matgf;
pub mod randcode;
