//! Exact classification of real pencils of quadrics.
//!
//! A smooth complete intersection of two quadrics `X = {F1 = F2 = 0}` in
//! `P^(2n+2)` over the reals is described by the pencil `s F1 + t F2`. This
//! crate computes, with exact rational arithmetic throughout:
//!
//! * the determinant binary form, smoothness and the real degeneracy points
//!   ([`pencilalg`]),
//! * the signature walk, Krasnov invariant, discriminant signs and the Weyl
//!   involution of complex conjugation ([`krasnov`]),
//! * plane and quadric classes in the weight lattice of `D_(2n+3)`
//!   ([`dlattice`], [`cycles`]),
//! * a rationality verdict over the reals ([`verdict`]).

pub mod cycles;
pub mod dlattice;
pub mod error;
pub mod krasnov;
pub mod matrix;
pub mod pencilalg;
pub mod poly;
pub mod qform;
pub mod rational;
pub mod report;
pub mod verdict;

pub use error::{Error, Result};
pub use krasnov::{KrasnovInvariant, WeylInvolution};
pub use matrix::Matrix;
pub use pencilalg::{Pencil, SignatureProfile};
pub use qform::{congruence, signature, QuadraticForm, Signature};
pub use rational::Rational;
pub use report::{classify_document, classify_json, classify_pencil, ClassificationReport, PencilDocument};
