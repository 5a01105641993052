//! Exact engine for metaplectic Demazure-Lusztig operators, the
//! Chinta-Gunnells Weyl group action and metaplectic Whittaker functions.
//!
//! Everything here is pure computation over `alloc`; the `mwf` crate carries
//! the command line, JSON formats and parallel sweeps.
//!
//! Layout:
//! * [`rootsys`]: finite root systems, enumerated Weyl groups, reduced words.
//! * [`metaplectic`]: the forms `Q`, `B`, the integers `n(a)`, the sublattice
//!   `Λ₀` and the rank-two structure used by the braid arguments.
//! * [`coeff`]: the coefficient ring generated by `v^{±1}` and Gauss symbols.
//! * [`algebra`], [`rational`], [`series`]: the group algebra of the coweight
//!   lattice, its fraction field and one-direction series expansion.
//! * [`cg`], [`dl`], [`twisted`], [`spherical`], [`scattering`]: the
//!   operators and identities built on top.
//! * [`oracle`]: residue-field Gauss sums and brute-force rank-one integrals.

#![cfg_attr(not(any(test, feature = "std")), no_std)]

extern crate alloc;

pub mod algebra;
pub mod cg;
pub mod coeff;
pub mod dl;
mod error;
mod hermite;
pub mod metaplectic;
pub mod oracle;
pub mod rational;
pub mod rootsys;
pub mod scalar;
pub mod scattering;
pub mod series;
pub mod spherical;
pub mod twisted;

pub use algebra::AlgebraElement;
pub use coeff::{CoeffElement, GaussMonomial};
pub use error::{Error, Result};
pub use metaplectic::MetaplecticData;
pub use rational::RationalElement;
pub use rootsys::{CartanSpec, CartanType, Coweight, RootSystem, WeylElement};
pub use scalar::Scalar;
pub use num_complex;
